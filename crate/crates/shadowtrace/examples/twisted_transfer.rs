//! Transfer twisted by inversion on Z/2 in Z/4.

use shadowtrace::algebra::group::cyclic;
use shadowtrace::algebra::GroupHom;
use shadowtrace::morita::{twisted_transfer, twisted_transfer_oracle, RingHom};

fn main() -> shadowtrace::Result<()> {
    let (z2, z4) = (cyclic(2), cyclic(4));
    let f = GroupHom::all_homs(&z2, &z4).into_iter().find(|f| f.is_injective()).expect("Z/2 embeds in Z/4");
    let j = GroupHom::power_map(&z2, -1)?;
    let k = GroupHom::power_map(&z4, -1)?;
    let f = RingHom::from_group_hom(&f);
    let t = twisted_transfer(&f, &j, &k)?;
    for l in t.dom().generators().unwrap_or_default() {
        println!("[{}] -> {:?}", t.dom().label_name(&l), t.on_generator(&l).named_terms());
    }
    println!("element-level oracle agrees: {}", t.agrees_with(&twisted_transfer_oracle(&f, &j, &k)?, 0));
    Ok(())
}

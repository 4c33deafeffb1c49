//! Euler characteristic of the induced module for a subgroup inclusion.

use shadowtrace::algebra::group::named;
use shadowtrace::algebra::GroupHom;
use shadowtrace::morita::{base_change_pair, RingHom};
use shadowtrace::trace::euler_characteristic;

fn main() -> shadowtrace::Result<()> {
    let g = named("S3")?;
    let h = named("A3")?;
    let f = GroupHom::all_homs(&h, &g).into_iter().find(|f| f.is_injective()).expect("A3 embeds in S3");
    let bc = base_change_pair(&RingHom::from_group_hom(&f))?;
    let chi = euler_characteristic(bc.right_pair())?;
    println!("C_f has rank {} over Z[A3]", bc.right().rank());
    for l in chi.dom().generators().unwrap_or_default() {
        println!("  chi [{}] = {:?}", chi.dom().label_name(&l), chi.on_generator(&l).named_terms());
    }
    Ok(())
}

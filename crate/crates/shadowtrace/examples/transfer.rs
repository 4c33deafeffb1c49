//! Restriction, transfer and both composites for A3 in S3.

use shadowtrace::algebra::group::named;
use shadowtrace::algebra::GroupHom;
use shadowtrace::bicat::ShadowMap;
use shadowtrace::morita::{restriction, restriction_transfer_composite, transfer, CompositeOrder, RingHom};

fn show(name: &str, m: &ShadowMap) {
    println!("{name}:");
    for l in m.dom().generators().unwrap_or_default() {
        println!("  [{}] -> {:?}", m.dom().label_name(&l), m.on_generator(&l).named_terms());
    }
}

fn main() -> shadowtrace::Result<()> {
    let (g, h) = (named("S3")?, named("A3")?);
    let f = GroupHom::all_homs(&h, &g).into_iter().find(|f| f.is_injective()).expect("A3 embeds in S3");
    let f = RingHom::from_group_hom(&f);
    show("res", &restriction(&f)?);
    show("trf", &transfer(&f)?);
    for order in [CompositeOrder::ResTrf, CompositeOrder::TrfRes] {
        let rep = restriction_transfer_composite(&f, order)?;
        show(&format!("{order:?}"), &rep.composite);
        println!("  equals the Euler characteristic: {}", rep.agrees);
    }
    Ok(())
}

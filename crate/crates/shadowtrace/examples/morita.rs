//! Morita equivalences between a group ring and its matrix rings.

use shadowtrace::algebra::group::named;
use shadowtrace::algebra::GroupHom;
use shadowtrace::bicat::{Bimodule, RingObject, ShadowMap};
use shadowtrace::morita::{matrix_morita, twisted_unit_morita};

fn main() -> shadowtrace::Result<()> {
    for name in ["1", "Z/2", "S3"] {
        let g = named(name)?;
        for n in 1..=3 {
            let w = matrix_morita(&RingObject::new(&g), n)?;
            let (a, b) = w.euler_composites()?;
            let ok = a.agrees_with(&ShadowMap::identity(a.dom()), 0) && b.agrees_with(&ShadowMap::identity(b.dom()), 0);
            println!("Z[{name}] ~ M_{n}: identities {:?}, Euler composites are identities: {ok}", w.identities());
        }
    }
    let z5 = named("Z/5")?;
    let w = twisted_unit_morita(&GroupHom::power_map(&z5, 2)?)?;
    let q = Bimodule::left_twisted(&GroupHom::power_map(&z5, 3)?);
    let (a, b) = w.conjugation_maps(&q)?;
    println!("twisted unit over Z/5: round trip is the identity: {}", b.after(&a)?.agrees_with(&ShadowMap::identity(a.dom()), 0));
    Ok(())
}

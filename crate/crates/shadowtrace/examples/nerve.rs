//! Components of the twisted cyclic nerve against twisted conjugacy classes.

use shadowtrace::algebra::group::named;
use shadowtrace::algebra::GroupHom;
use shadowtrace::nerve::{pi0, TwistedCyclicNerve};

fn main() -> shadowtrace::Result<()> {
    for name in ["Z/3", "S3", "Q8"] {
        let g = named(name)?;
        for phi in GroupHom::automorphisms(&g).iter().take(3) {
            let p = pi0(&g, phi)?;
            let rep = TwistedCyclicNerve::new(phi)?.check_identities(2);
            println!("{name}: {} components, bijection {}, simplicial identities ok {}", p.count(), p.is_bijection(), rep.ok());
        }
    }
    Ok(())
}

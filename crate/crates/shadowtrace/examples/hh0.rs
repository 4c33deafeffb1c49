//! HH0 of a group ring and of its matrix rings.

use shadowtrace::algebra::group::named;
use shadowtrace::algebra::TwistedClassSet;
use shadowtrace::bicat::{shadow, Bimodule, RingObject};
use shadowtrace::morita::MatrixUnitModel;

fn main() -> shadowtrace::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "S3".into());
    let g = named(&name)?;
    let sh = shadow(&Bimodule::unit(&RingObject::new(&g)))?;
    println!("HH0(Z[{name}]) = {}", sh.describe());
    let classes = TwistedClassSet::untwisted(&g)?;
    for l in classes.labels().unwrap_or_default() {
        println!("  class {} with {} elements", classes.label_name(&l), classes.members(&l).len());
    }
    for n in 1..=3 {
        println!("HH0(M_{n}(Z[{name}])) = {}", MatrixUnitModel::new(&g, n)?.hh0().describe());
    }
    Ok(())
}

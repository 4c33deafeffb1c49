//! Traces of 2-cells: an integer matrix and a diagonal Laurent matrix.

use shadowtrace::algebra::group::trivial;
use shadowtrace::algebra::{Elem, Group, GroupHom, RingElement, RingMatrix};
use shadowtrace::bicat::{hcompose, shadow, Bimodule, RingObject, TwoCell};
use shadowtrace::trace::{canonical_dual, hattori_stallings, trace};

fn main() -> shadowtrace::Result<()> {
    let z = trivial();
    let u = Bimodule::unit(&RingObject::new(&z));
    let m = Bimodule::diagonal(&z, &z, &[GroupHom::identity(&z), GroupHom::identity(&z)])?;
    let w = canonical_dual(&m)?;
    let f = TwoCell::new(&hcompose(&u, &m)?, &hcompose(&m, &u)?, RingMatrix::from_ints(&z, &[vec![1, 2], vec![3, 4]]))?;
    let t = trace(&f, &w, &u, &u)?;
    println!("tr([[1,2],[3,4]]) on <Z> = Z: {:?}", t.matrix().unwrap());

    let zz = Group::free_abelian(1);
    let u = Bimodule::unit(&RingObject::new(&zz));
    let id = GroupHom::identity(&zz);
    let m = Bimodule::diagonal(&zz, &zz, &[id.clone(), id])?;
    let w = canonical_dual(&m)?;
    let d = RingMatrix::diagonal_matrix(
        &zz,
        vec![RingElement::from_elem(&zz, Elem::Lat(vec![1])), RingElement::from_elem(&zz, Elem::Lat(vec![2]))],
    );
    let f = TwoCell::new(&hcompose(&u, &m)?, &hcompose(&m, &u)?, d)?;
    let sh = shadow(&u)?;
    let one = sh.normalize_vector(&[RingElement::one(&zz)]);
    let t = trace(&f, &w, &u, &u)?.apply(&one);
    let fast = hattori_stallings(&f, &m, &u, &u)?.apply(&one);
    println!("tr(diag(t, t^2)) [e] = {:?}", t.named_terms());
    println!("diagonal classes agree: {}", t == fast);
    Ok(())
}

//! Classes of endomorphisms in the shadow of a free-module skeleton.

use shadowtrace::algebra::group::{symmetric, trivial};
use shadowtrace::algebra::{RingElement, RingMatrix};
use shadowtrace::bicat::RingObject;
use shadowtrace::ringoid::{class_of_endomorphism, free_module_skeleton, ringoid_shadow, RingoidBimodule};

fn main() -> shadowtrace::Result<()> {
    let z = trivial();
    let r = free_module_skeleton(&RingObject::new(&z), 3)?;
    let rs = ringoid_shadow(&r, &RingoidBimodule::untwisted(&r))?;
    println!("objects {:?}, shadow {}", r.objects(), rs.group().describe());
    let swap = RingMatrix::from_ints(&z, &[vec![0, 1], vec![1, 0]]);
    let c = class_of_endomorphism(&rs, 2, &swap)?;
    println!("swap: {:?}, all routes agree: {}", c.five_step.named_terms(), c.agrees());

    let s3 = symmetric(3);
    let r = free_module_skeleton(&RingObject::new(&s3), 2)?;
    let rs = ringoid_shadow(&r, &RingoidBimodule::untwisted(&r))?;
    let a = RingElement::from_elem(&s3, s3.parse_elem("(123)")?);
    let b = RingElement::from_elem(&s3, s3.parse_elem("(12)")?);
    let f = RingMatrix::from_rows(&s3, vec![vec![a.clone(), b.clone()], vec![b, &a + &RingElement::one(&s3)]]);
    let c = class_of_endomorphism(&rs, 2, &f)?;
    println!("over Z[S3]: {:?}, all routes agree: {}", c.five_step.named_terms(), c.agrees());
    Ok(())
}

//! Reidemeister traces of the degree-d maps of the circle. The identity
//! (d = 1) has no isolated fixed points and is left out.

use shadowtrace::fixed::{circle_fixed_points, circle_self_map, fixed_point_class_sum, lefschetz_via_homology, reidemeister_trace};

fn main() -> shadowtrace::Result<()> {
    for d in (-2..=5).filter(|d| *d != 1) {
        let (c, m) = circle_self_map(d)?;
        let r = reidemeister_trace(&c, &m)?;
        let (classes, pts) = circle_fixed_points(d)?;
        println!(
            "d = {d:2}: L = {:2}, N = {}, R = {:?}, homology L = {}, fixed points match: {}",
            r.lefschetz,
            r.nielsen,
            r.named_terms(),
            lefschetz_via_homology(&c, &m)?,
            r.trace == fixed_point_class_sum(&classes, &pts)
        );
    }
    Ok(())
}

//! Reidemeister traces of linear maps of the 2-torus.

use shadowtrace::fixed::{coker_order, reidemeister_trace, torus2_self_map};

fn main() -> shadowtrace::Result<()> {
    for f in [[[1, 0], [0, 1]], [[2, 1], [1, 1]], [[2, 0], [0, 2]], [[0, -1], [1, 0]], [[3, 1], [1, 2]]] {
        let f: Vec<Vec<i64>> = f.iter().map(|r| r.to_vec()).collect();
        let (c, m) = torus2_self_map(&f)?;
        let r = reidemeister_trace(&c, &m)?;
        println!("F = {f:?}: L = {}, N = {}, classes = {:?}", r.lefschetz, r.nielsen, coker_order(&f));
    }
    Ok(())
}

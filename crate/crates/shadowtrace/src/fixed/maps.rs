use std::collections::BTreeMap;

use crate::algebra::{Elem, Group, GroupHom, RingElement, RingMatrix, Word};
use crate::error::{Error, Result};

use super::complex::{presentation_complex, EquivariantChainComplex, TwistedChainMap};
use super::fox::fox_derivative_images;

/// `p / (t_j - 1)` in `Z[Z^n]`, when exact.
pub fn divide_by_generator_minus_one(p: &RingElement, j: usize) -> Option<RingElement> {
    let g = p.group();
    // group terms by the line through each exponent in direction j
    let mut lines: BTreeMap<Vec<i64>, BTreeMap<i64, i64>> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut key = e.coords().to_vec();
        let k = key[j];
        key[j] = 0;
        lines.entry(key).or_default().insert(k, *c);
    }
    let mut terms = Vec::new();
    for (key, line) in lines {
        let (lo, hi) = (*line.keys().next().unwrap(), *line.keys().last().unwrap());
        let mut partial = 0i64;
        for k in lo..hi {
            partial += line.get(&k).copied().unwrap_or(0);
            if partial != 0 {
                let mut e = key.clone();
                e[j] = k;
                terms.push((Elem::Lat(e), -partial));
            }
        }
        if partial + line[&hi] != 0 {
            return None;
        }
    }
    Some(RingElement::from_terms(g, terms))
}

fn circle_group() -> Group {
    Group::presented("S1", vec!["a".into()], vec![]).expect("free group on one letter")
}

/// `z ↦ z^d` on the circle, lifted to `Z[t, t^-1]`-chains.
///
/// `f_1 = 1 + t + ... + t^(d-1)` for `d > 0`, `0` for `d = 0`, and
/// `-t^-1 - ... - t^d` for `d < 0`. There are no 2-cells.
pub fn circle_self_map(d: i64) -> Result<(EquivariantChainComplex, TwistedChainMap)> {
    let z = Group::free_abelian(1);
    let proj = GroupHom::from_presentation(&circle_group(), &z, z.generators().to_vec())?;
    let c = presentation_complex(&proj)?;
    let phi = GroupHom::power_map(&z, d)?;
    let t = |k: i64| Elem::Lat(vec![k]);
    let f1 = if d >= 0 {
        RingElement::from_terms(&z, (0..d).map(|k| (t(k), 1)))
    } else {
        RingElement::from_terms(&z, (d..0).map(|k| (t(k), -1)))
    };
    let maps = vec![RingMatrix::identity(&z, 1), RingMatrix::from_rows(&z, vec![vec![f1]]), RingMatrix::zero(&z, 0, 0)];
    let m = TwistedChainMap::new(&c, &phi, maps)?;
    Ok((c, m))
}

/// The torus `<a, b | a b a^-1 b^-1>`.
pub fn torus_group() -> Group {
    Group::presented("T2", vec!["a".into(), "b".into()], vec![Word::from_letters([(0, 1), (1, 1), (0, -1), (1, -1)])])
        .expect("torus presentation")
}

/// The linear torus map `F`, lifted with `a ↦ a^F11 b^F21`, `b ↦ a^F12 b^F22`.
///
/// `f_2` is found by exact division from the chain condition.
pub fn torus2_self_map(f: &[Vec<i64>]) -> Result<(EquivariantChainComplex, TwistedChainMap)> {
    if f.len() != 2 || f.iter().any(|r| r.len() != 2) {
        return Err(Error::ShapeMismatch("a torus map is a 2x2 integer matrix".into()));
    }
    let z2 = Group::free_abelian(2);
    let proj = GroupHom::from_presentation(&torus_group(), &z2, z2.generators().to_vec())?;
    let c = presentation_complex(&proj)?;
    let phi = GroupHom::from_matrix(&z2, &z2, &f.to_vec())?;
    let gens = z2.generators().to_vec();
    let words: Vec<Word> = (0..2).map(|x| Word::power_of(0, f[0][x]).mul(&Word::power_of(1, f[1][x]))).collect();
    let f1 = RingMatrix::from_fn(&z2, 2, 2, |y, x| fox_derivative_images(&words[x], y, &z2, &gens));
    let rhs = &f1 * &c.boundary(2).map_hom(&phi);
    // ∂_2 = (1 - b, a - 1)^t, so the second row determines f_2
    let f2 =
        divide_by_generator_minus_one(&rhs.get(1, 0), 0).ok_or_else(|| Error::LiftNotFound("no exact quotient for the 2-cell".into()))?;
    let maps = vec![RingMatrix::identity(&z2, 1), f1, RingMatrix::from_rows(&z2, vec![vec![f2]])];
    let m = TwistedChainMap::new(&c, &phi, maps).map_err(|e| match e {
        Error::InvalidChainMap(s) => Error::LiftNotFound(s),
        e => e,
    })?;
    Ok((c, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_division() {
        let z2 = Group::free_abelian(2);
        let a = |i: i64, j: i64| Elem::Lat(vec![i, j]);
        // a^2 b - b = (a - 1)(b + a b)
        let p = RingElement::from_terms(&z2, [(a(2, 1), 1), (a(0, 1), -1)]);
        let q = divide_by_generator_minus_one(&p, 0).unwrap();
        assert_eq!(q, RingElement::from_terms(&z2, [(a(0, 1), 1), (a(1, 1), 1)]));
        let p = RingElement::from_terms(&z2, [(a(2, 1), 1)]);
        assert!(divide_by_generator_minus_one(&p, 0).is_none());
        let p = RingElement::from_terms(&z2, [(a(-1, 0), 1), (a(0, 0), -1)]);
        assert_eq!(divide_by_generator_minus_one(&p, 0).unwrap(), RingElement::from_terms(&z2, [(a(-1, 0), -1)]));
    }

    #[test]
    fn circle_maps() {
        for d in -3..=5 {
            let (c, m) = circle_self_map(d).unwrap();
            assert_eq!(c.ranks(), &[1, 1, 0]);
            assert_eq!(m.degree(1).get(0, 0).augmentation(), d);
        }
        let (_, m) = circle_self_map(1).unwrap();
        assert!(m.degree(1).is_identity());
    }

    #[test]
    fn torus_maps() {
        for f in [[[1, 0], [0, 1]], [[2, 1], [1, 1]], [[0, -1], [1, 0]], [[2, 0], [0, 3]], [[-3, 2], [5, 0]]] {
            let f: Vec<Vec<i64>> = f.iter().map(|r| r.to_vec()).collect();
            let (_, m) = torus2_self_map(&f).unwrap();
            let det = f[0][0] * f[1][1] - f[0][1] * f[1][0];
            assert_eq!(m.degree(2).get(0, 0).augmentation(), det);
        }
        let (_, m) = torus2_self_map(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(m.degree(1).is_identity() && m.degree(2).is_identity());
    }
}

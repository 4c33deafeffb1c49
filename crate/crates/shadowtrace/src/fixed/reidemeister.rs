use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::snf::{determinant, smith_normal_form};
use crate::algebra::{twisted_conjugacy_classes, ClassLabel, Elem, Group, GroupHom, RingElement, TwistedClassSet};
use crate::bicat::{Label, ShadowElement, ShadowGroup};
use crate::error::{Error, Result};

use super::complex::{EquivariantChainComplex, TwistedChainMap};

/// `R(f)` with its Lefschetz and Nielsen numbers.
#[derive(Clone, Debug)]
pub struct ReidemeisterResult {
    pub classes: TwistedClassSet,
    pub trace: ShadowElement,
    pub lefschetz: i64,
    pub nielsen: usize,
}

impl ReidemeisterResult {
    /// `(class, coefficient)` in label order.
    pub fn terms(&self) -> Vec<(ClassLabel, i64)> {
        self.trace
            .terms()
            .iter()
            .map(|(l, c)| match l {
                Label::Class(_, x) => (x.clone(), *c),
                Label::Gen(_) => unreachable!("class shadows have class labels"),
            })
            .collect()
    }

    pub fn named_terms(&self) -> Vec<(String, i64)> {
        self.terms().into_iter().map(|(l, c)| (self.classes.label_name(&l), c)).collect()
    }
}

/// `Σ_i (-1)^i [tr f_i]` in `Z[twisted classes of φ]`.
pub fn reidemeister_trace(c: &EquivariantChainComplex, m: &TwistedChainMap) -> Result<ReidemeisterResult> {
    m.validate(c)?;
    let g = c.base();
    let classes = twisted_conjugacy_classes(g, m.twist())?;
    let shadow = ShadowGroup::of_classes(classes.clone());
    let mut diag = RingElement::zero(g);
    for (i, f) in m.maps().iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for j in 0..f.rows() {
            if let Some(x) = f.get_ref(j, j) {
                diag = &diag + &x.scale(sign);
            }
        }
    }
    let trace = shadow.normalize_vector(&[diag.clone()]);
    let nielsen = trace.terms().len();
    Ok(ReidemeisterResult { classes, trace, lefschetz: diag.augmentation(), nielsen })
}

type QMatrix = Vec<Vec<BigRational>>;

fn augmented(m: &crate::algebra::RingMatrix) -> QMatrix {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| BigRational::from_integer(m.get(i, j).augmentation().into())).collect()).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(a: &mut QMatrix, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let k = a[r][col].clone();
                for j in 0..a[r].len() {
                    let t = &a[row][j] * &k;
                    a[r][j] = &a[r][j] - t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of the kernel of an `rows x cols` matrix.
fn kernel(a: &QMatrix, cols: usize) -> Vec<Vec<BigRational>> {
    let mut m = a.clone();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Independent columns spanning the image.
fn image(a: &QMatrix, rows: usize, cols: usize) -> Vec<Vec<BigRational>> {
    let mut m = a.clone();
    let pivots = rref(&mut m, cols);
    pivots.iter().map(|&c| (0..rows).map(|r| a[r][c].clone()).collect()).collect()
}

fn apply(a: &QMatrix, v: &[BigRational]) -> Vec<BigRational> {
    a.iter().map(|row| row.iter().zip(v).fold(BigRational::zero(), |s, (x, y)| s + x * y)).collect()
}

/// Trace of `f` restricted to the invariant subspace spanned by `basis`.
fn trace_on(f: &QMatrix, basis: &[Vec<BigRational>], n: usize) -> Result<BigRational> {
    let k = basis.len();
    if k == 0 {
        return Ok(BigRational::zero());
    }
    // solve basis * X = f * basis
    let mut aug: QMatrix = (0..n).map(|r| basis.iter().map(|b| b[r].clone()).collect()).collect();
    let images: Vec<Vec<BigRational>> = basis.iter().map(|b| apply(f, b)).collect();
    for (r, row) in aug.iter_mut().enumerate() {
        row.extend(images.iter().map(|v| v[r].clone()));
    }
    let pivots = rref(&mut aug, k);
    if pivots.len() != k {
        return Err(Error::InvalidChainMap("dependent subspace basis".into()));
    }
    if aug[k..].iter().any(|row| row[k..].iter().any(|x| !x.is_zero())) {
        return Err(Error::InvalidChainMap("subspace is not invariant".into()));
    }
    Ok((0..k).fold(BigRational::zero(), |s, i| s + &aug[i][k + i]))
}

/// `Σ (-1)^i tr(f_* | H_i(C ⊗ Q))` after augmenting `π -> 1`.
pub fn lefschetz_via_homology(c: &EquivariantChainComplex, m: &TwistedChainMap) -> Result<i64> {
    m.validate(c)?;
    let ranks = c.ranks();
    let mut total = BigRational::zero();
    for (i, &r) in ranks.iter().enumerate() {
        let f = augmented(m.degree(i));
        let z = if i == 0 {
            (0..r).map(|k| (0..r).map(|j| if j == k { BigRational::one() } else { BigRational::zero() }).collect()).collect()
        } else {
            kernel(&augmented(c.boundary(i)), r)
        };
        let b = if i + 1 < ranks.len() { image(&augmented(c.boundary(i + 1)), r, ranks[i + 1]) } else { Vec::new() };
        let t = trace_on(&f, &z, r)? - trace_on(&f, &b, r)?;
        total = if i % 2 == 0 { total + t } else { total - t };
    }
    if !total.is_integer() {
        return Err(Error::InvalidChainMap("non-integral homology trace".into()));
    }
    Ok(total.to_integer().to_i64().expect("Lefschetz number fits"))
}

/// A fixed point of a model self-map with its index and Reidemeister class.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPoint {
    /// coordinates of a lift in the universal cover
    pub lift: Vec<BigRational>,
    pub index: i64,
    pub class: ClassLabel,
}

/// Fixed points of `z ↦ z^d`: `x = k / (d - 1)`, each of index `sign(1 - d)`,
/// in the class of `t^k` since the lift `x ↦ d x` moves it by `k`.
pub fn circle_fixed_points(d: i64) -> Result<(TwistedClassSet, Vec<FixedPoint>)> {
    if d == 1 {
        return Err(Error::IndexOutOfRange("the identity of the circle has no isolated fixed points".into()));
    }
    let z = Group::free_abelian(1);
    let classes = twisted_conjugacy_classes(&z, &GroupHom::power_map(&z, d)?)?;
    let n = (d - 1).abs();
    let index = (1 - d).signum();
    let pts = (0..n)
        .map(|k| FixedPoint { lift: vec![BigRational::new(k.into(), (d - 1).into())], index, class: classes.class_of(&Elem::Lat(vec![k])) })
        .collect();
    Ok((classes, pts))
}

/// Fixed points of the linear torus map `F` when `det(I - F) ≠ 0`: the lifts
/// `x = (F - I)^-1 m` for `m` over the cokernel, each of index `sign det(I - F)`.
pub fn torus_fixed_points(f: &[Vec<i64>]) -> Result<(TwistedClassSet, Vec<FixedPoint>)> {
    let z2 = Group::free_abelian(2);
    let phi = GroupHom::from_matrix(&z2, &z2, &f.to_vec())?;
    let classes = twisted_conjugacy_classes(&z2, &phi)?;
    let a = vec![vec![1 - f[0][0], -f[0][1]], vec![-f[1][0], 1 - f[1][1]]];
    let det = determinant(&a).to_i64().expect("small determinant");
    if det == 0 {
        return Err(Error::IndexOutOfRange("fixed points are not isolated".into()));
    }
    // F - I = -a, inverse = -adj(a) / det
    let adj = [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]];
    let mut pts = Vec::new();
    for label in classes.labels().expect("finite cokernel") {
        let Elem::Lat(m) = classes.representative(&label) else { unreachable!() };
        let lift = (0..2).map(|i| BigRational::new((-(adj[i][0] * m[0] + adj[i][1] * m[1])).into(), det.into())).collect();
        pts.push(FixedPoint { lift, index: det.signum(), class: label });
    }
    Ok((classes, pts))
}

/// `|coker(I - F)|`, or `None` when infinite.
pub fn coker_order(f: &[Vec<i64>]) -> Option<u64> {
    let n = f.len();
    let a: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j) - f[i][j]).collect()).collect();
    let d = smith_normal_form(&a).diagonal_i64();
    if d.len() < n || d.contains(&0) {
        return None;
    }
    Some(d.iter().map(|x| x.unsigned_abs()).product())
}

/// `Σ index · [class]` over a list of fixed points.
pub fn fixed_point_class_sum(classes: &TwistedClassSet, pts: &[FixedPoint]) -> ShadowElement {
    let s: Arc<ShadowGroup> = ShadowGroup::of_classes(classes.clone());
    let g = classes.group();
    let v = RingElement::from_terms(g, pts.iter().map(|p| (classes.representative(&p.class), p.index)));
    s.normalize_vector(&[v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed::{circle_self_map, torus2_self_map};

    #[test]
    fn circle_examples() {
        let (c, m) = circle_self_map(2).unwrap();
        let r = reidemeister_trace(&c, &m).unwrap();
        assert_eq!((r.lefschetz, r.nielsen), (-1, 1));
        assert_eq!(r.named_terms(), vec![("c0".to_string(), -1)]);
        let (c, m) = circle_self_map(3).unwrap();
        let r = reidemeister_trace(&c, &m).unwrap();
        assert_eq!(r.named_terms(), vec![("c0".to_string(), -1), ("c1".to_string(), -1)]);
        assert_eq!(lefschetz_via_homology(&c, &m).unwrap(), -2);
        for d in [-2, 0, 4] {
            let (c, m) = circle_self_map(d).unwrap();
            let r = reidemeister_trace(&c, &m).unwrap();
            let (cl, pts) = circle_fixed_points(d).unwrap();
            assert_eq!(r.trace, fixed_point_class_sum(&cl, &pts));
        }
    }

    #[test]
    fn torus_examples() {
        let (c, m) = torus2_self_map(&[vec![2, 1], vec![1, 1]]).unwrap();
        let r = reidemeister_trace(&c, &m).unwrap();
        assert_eq!((r.lefschetz, r.nielsen), (-1, 1));
        assert_eq!(r.terms().iter().map(|t| t.1).collect::<Vec<_>>(), vec![-1]);
        let (c, m) = torus2_self_map(&[vec![2, 0], vec![0, 2]]).unwrap();
        let r = reidemeister_trace(&c, &m).unwrap();
        assert_eq!((r.lefschetz, r.nielsen), (1, 1));
        let (c, m) = torus2_self_map(&[vec![1, 0], vec![0, 1]]).unwrap();
        let r = reidemeister_trace(&c, &m).unwrap();
        assert!(r.trace.is_zero());
        assert_eq!(lefschetz_via_homology(&c, &m).unwrap(), 0);
        assert_eq!(coker_order(&[vec![2, 0], vec![0, 3]]), Some(2));
        assert_eq!(coker_order(&[vec![1, 0], vec![0, 3]]), None);
    }

    #[test]
    fn zero_complex() {
        let g = Group::free_abelian(1);
        let c = EquivariantChainComplex::zero(&g);
        let m = TwistedChainMap::new(&c, &GroupHom::identity(&g), vec![crate::algebra::RingMatrix::zero(&g, 0, 0)]).unwrap();
        let r = reidemeister_trace(&c, &m).unwrap();
        assert!(r.trace.is_zero());
        assert_eq!((r.lefschetz, r.nielsen), (0, 0));
        assert_eq!(lefschetz_via_homology(&c, &m).unwrap(), 0);
    }
}

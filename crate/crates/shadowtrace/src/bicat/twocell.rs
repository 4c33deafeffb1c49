use crate::algebra::{RingElement, RingMatrix};
use crate::error::{Error, Result};

use super::bimodule::{hcompose, hcompose_all, Bimodule};

/// A 2-cell `M => N`: a bimodule map, stored as its matrix on the right bases
/// (shape `rank N x rank M`, acting on column vectors).
#[derive(Clone, Debug, PartialEq)]
pub struct TwoCell {
    dom: Bimodule,
    cod: Bimodule,
    matrix: RingMatrix,
}

impl TwoCell {
    /// Checks that `T ρ_M(g) = ρ_N(g) T` on generators.
    pub fn new(dom: &Bimodule, cod: &Bimodule, matrix: RingMatrix) -> Result<TwoCell> {
        if dom.source() != cod.source() || dom.target() != cod.target() {
            return Err(Error::ObjectMismatch("2-cell between 1-cells with different ends".into()));
        }
        if matrix.rows() != cod.rank() || matrix.cols() != dom.rank() || matrix.group() != dom.target_group() {
            return Err(Error::ShapeMismatch(format!(
                "2-cell matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                cod.rank(),
                dom.rank()
            )));
        }
        for (a, b) in dom.generator_images().iter().zip(cod.generator_images()) {
            if &matrix * a != b * &matrix {
                return Err(Error::NotEquivariant("matrix does not commute with the left action".into()));
            }
        }
        Ok(TwoCell { dom: dom.clone(), cod: cod.clone(), matrix })
    }

    pub(crate) fn new_unchecked(dom: &Bimodule, cod: &Bimodule, matrix: RingMatrix) -> TwoCell {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (cod.rank(), dom.rank()));
        TwoCell { dom: dom.clone(), cod: cod.clone(), matrix }
    }

    pub fn identity(m: &Bimodule) -> TwoCell {
        TwoCell::new_unchecked(m, m, RingMatrix::identity(m.target_group(), m.rank()))
    }

    pub fn zero(dom: &Bimodule, cod: &Bimodule) -> TwoCell {
        TwoCell::new_unchecked(dom, cod, RingMatrix::zero(dom.target_group(), cod.rank(), dom.rank()))
    }

    pub fn dom(&self) -> &Bimodule {
        &self.dom
    }

    pub fn cod(&self) -> &Bimodule {
        &self.cod
    }

    pub fn matrix(&self) -> &RingMatrix {
        &self.matrix
    }

    /// Vertical composite `self ∘ first`.
    pub fn after(&self, first: &TwoCell) -> Result<TwoCell> {
        if first.cod != self.dom {
            return Err(Error::ObjectMismatch("vertical composite through different 1-cells".into()));
        }
        Ok(TwoCell::new_unchecked(&first.dom, &self.cod, &self.matrix * &first.matrix))
    }

    pub fn add(&self, other: &TwoCell) -> Result<TwoCell> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::ObjectMismatch("adding 2-cells between different 1-cells".into()));
        }
        Ok(TwoCell::new_unchecked(&self.dom, &self.cod, &self.matrix + &other.matrix))
    }

    pub fn scale(&self, k: i64) -> TwoCell {
        TwoCell::new_unchecked(&self.dom, &self.cod, self.matrix.scale(k))
    }

    /// Pre- and post-compose with identities on retagged 1-cells of the same shape.
    pub fn retag(&self, dom: &Bimodule, cod: &Bimodule) -> Result<TwoCell> {
        TwoCell::new(dom, cod, self.matrix.clone())
    }

    /// `α ⊙ id_N`: block `(i, j)` is `ρ_N(α_ij)`.
    pub fn whisker_right(&self, n: &Bimodule) -> Result<TwoCell> {
        let dom = hcompose(&self.dom, n)?;
        let cod = hcompose(&self.cod, n)?;
        Ok(TwoCell::new_unchecked(&dom, &cod, n.substitute(&self.matrix)))
    }

    /// `id_M ⊙ β`: block diagonal with `rank M` copies of `β`.
    pub fn whisker_left(&self, m: &Bimodule) -> Result<TwoCell> {
        let dom = hcompose(m, &self.dom)?;
        let cod = hcompose(m, &self.cod)?;
        let blocks = vec![self.matrix.clone(); m.rank()];
        let mat = if blocks.is_empty() { RingMatrix::zero(self.dom.target_group(), 0, 0) } else { RingMatrix::block_diag(&blocks) };
        Ok(TwoCell::new_unchecked(&dom, &cod, mat))
    }

    /// `α ⊙ β = (α ⊙ id_N') ∘ (id_M ⊙ β)`.
    pub fn hcompose(&self, beta: &TwoCell) -> Result<TwoCell> {
        let right = beta.whisker_left(&self.dom)?;
        let left = self.whisker_right(&beta.cod)?;
        left.after(&right)
    }

    /// `λ: U ⊙ M => M`.
    pub fn left_unitor(m: &Bimodule) -> TwoCell {
        let u = hcompose(&Bimodule::unit(m.source()), m).expect("unit composes");
        TwoCell::new_unchecked(&u, m, RingMatrix::identity(m.target_group(), m.rank()))
    }

    /// `ρ: M ⊙ U => M`.
    pub fn right_unitor(m: &Bimodule) -> TwoCell {
        let u = hcompose(m, &Bimodule::unit(m.target())).expect("unit composes");
        TwoCell::new_unchecked(&u, m, RingMatrix::identity(m.target_group(), m.rank()))
    }

    /// `a: (M ⊙ N) ⊙ P => M ⊙ (N ⊙ P)`.
    pub fn associator(m: &Bimodule, n: &Bimodule, p: &Bimodule) -> Result<TwoCell> {
        let l = hcompose_all(&[m, n, p])?;
        let r = hcompose(m, &hcompose(n, p)?)?;
        Ok(TwoCell::new_unchecked(&l, &r, RingMatrix::identity(p.target_group(), l.rank())))
    }

    /// Inverse, when the matrix is monomial.
    pub fn monomial_inverse(&self) -> Option<TwoCell> {
        Some(TwoCell::new_unchecked(&self.cod, &self.dom, self.matrix.monomial_inverse()?))
    }

    /// `v ↦ T v` on a right-basis vector.
    pub fn apply(&self, v: &[RingElement]) -> Vec<RingElement> {
        self.matrix.mul_vec(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::cyclic;
    use crate::algebra::GroupHom;

    #[test]
    fn equivariance_is_checked() {
        let z3 = cyclic(3);
        let id = GroupHom::identity(&z3);
        let inv = GroupHom::power_map(&z3, -1).unwrap();
        let m = Bimodule::diagonal(&z3, &z3, &[id.clone(), inv]).unwrap();
        let swap = RingMatrix::from_ints(&z3, &[vec![0, 1], vec![1, 0]]);
        assert!(TwoCell::new(&m, &m, swap).is_err());
        let a = z3.parse_elem("a").unwrap();
        let diag = RingMatrix::diagonal_matrix(&z3, vec![RingElement::from_elem(&z3, a.clone()), RingElement::scalar(&z3, 2)]);
        assert!(TwoCell::new(&m, &m, diag).is_ok());
    }

    #[test]
    fn interchange_law() {
        let z3 = cyclic(3);
        let a = z3.parse_elem("a").unwrap();
        let u = Bimodule::unit(&crate::bicat::RingObject::new(&z3));
        let x = TwoCell::new(&u, &u, RingMatrix::from_rows(&z3, vec![vec![RingElement::from_elem(&z3, a.clone())]])).unwrap();
        let y = TwoCell::new(&u, &u, RingMatrix::from_ints(&z3, &[vec![3]])).unwrap();
        let lhs = x.after(&y).unwrap().hcompose(&y.after(&x).unwrap()).unwrap();
        let rhs = x.hcompose(&y).unwrap().after(&y.hcompose(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

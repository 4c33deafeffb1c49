use crate::algebra::{Elem, Group, GroupHom, RingElement, RingMatrix, Word};
use crate::error::{Error, Result};

use super::fox::fox_derivative_images;

/// A bounded complex of free right `Z[π]`-modules.
///
/// `boundaries[i - 1]` is `∂_i: C_i -> C_{i-1}`, an `r_{i-1} x r_i` matrix
/// acting on coordinate columns.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantChainComplex {
    base: Group,
    ranks: Vec<usize>,
    boundaries: Vec<RingMatrix>,
}

impl EquivariantChainComplex {
    pub fn new(base: &Group, ranks: Vec<usize>, boundaries: Vec<RingMatrix>) -> Result<EquivariantChainComplex> {
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(Error::DimensionMismatch("one boundary per positive degree".into()));
        }
        for (i, d) in boundaries.iter().enumerate() {
            if d.rows() != ranks[i] || d.cols() != ranks[i + 1] {
                return Err(Error::ShapeMismatch(format!("∂_{} must be {}x{}", i + 1, ranks[i], ranks[i + 1])));
            }
            if d.group() != base {
                return Err(Error::BaseMismatch(format!("∂_{} has coefficients in another group", i + 1)));
            }
        }
        for i in 1..boundaries.len() {
            if !(&boundaries[i - 1] * &boundaries[i]).is_zero() {
                return Err(Error::BoundaryNotZero(format!("∂_{} ∂_{} is not zero", i, i + 1)));
            }
        }
        Ok(EquivariantChainComplex { base: base.clone(), ranks, boundaries })
    }

    /// The complex with no cells.
    pub fn zero(base: &Group) -> EquivariantChainComplex {
        EquivariantChainComplex { base: base.clone(), ranks: vec![0], boundaries: Vec::new() }
    }

    pub fn base(&self) -> &Group {
        &self.base
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    /// `∂_i`, for `1 ≤ i ≤ top degree`.
    pub fn boundary(&self, i: usize) -> &RingMatrix {
        &self.boundaries[i - 1]
    }

    pub fn boundaries(&self) -> &[RingMatrix] {
        &self.boundaries
    }

    /// Change of free basis by invertible `p_i` (given with inverses): `∂'_i = p_{i-1}^-1 ∂_i p_i`.
    pub fn rebased(&self, p: &[(RingMatrix, RingMatrix)]) -> Result<EquivariantChainComplex> {
        check_basis_change(&self.ranks, p)?;
        let b = (1..self.ranks.len()).map(|i| &(&p[i - 1].1 * &self.boundaries[i - 1]) * &p[i].0).collect();
        EquivariantChainComplex::new(&self.base, self.ranks.clone(), b)
    }
}

fn check_basis_change(ranks: &[usize], p: &[(RingMatrix, RingMatrix)]) -> Result<()> {
    if p.len() != ranks.len() {
        return Err(Error::DimensionMismatch("one change of basis per degree".into()));
    }
    for (r, (a, b)) in ranks.iter().zip(p) {
        if a.rows() != *r || a.cols() != *r || b.rows() != *r || b.cols() != *r {
            return Err(Error::ShapeMismatch("basis change of the wrong size".into()));
        }
        if !(a * b).is_identity() || !(b * a).is_identity() {
            return Err(Error::NotInvertible("basis change is not invertible".into()));
        }
    }
    Ok(())
}

/// A `φ`-twisted chain endomorphism: `f_i(x g) = f_i(x) φ(g)`.
///
/// With coordinate columns this reads `f(x) = F φ(x)`, so the chain condition
/// is `∂_i F_i = F_{i-1} φ(∂_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedChainMap {
    twist: GroupHom,
    maps: Vec<RingMatrix>,
}

impl TwistedChainMap {
    pub fn new(c: &EquivariantChainComplex, twist: &GroupHom, maps: Vec<RingMatrix>) -> Result<TwistedChainMap> {
        let m = TwistedChainMap { twist: twist.clone(), maps };
        m.validate(c)?;
        Ok(m)
    }

    pub fn twist(&self) -> &GroupHom {
        &self.twist
    }

    pub fn maps(&self) -> &[RingMatrix] {
        &self.maps
    }

    pub fn degree(&self, i: usize) -> &RingMatrix {
        &self.maps[i]
    }

    pub fn validate(&self, c: &EquivariantChainComplex) -> Result<()> {
        if self.twist.dom() != c.base() || self.twist.cod() != c.base() {
            return Err(Error::InvalidChainMap("the twist is not an endomorphism of the base".into()));
        }
        if self.maps.len() != c.ranks().len() {
            return Err(Error::InvalidChainMap("one matrix per degree".into()));
        }
        for (i, (f, r)) in self.maps.iter().zip(c.ranks()).enumerate() {
            if f.rows() != *r || f.cols() != *r {
                return Err(Error::InvalidChainMap(format!("f_{i} must be {r}x{r}")));
            }
        }
        for i in 1..self.maps.len() {
            let d = c.boundary(i);
            let lhs = d * &self.maps[i];
            let rhs = &self.maps[i - 1] * &d.map_hom(&self.twist);
            if lhs != rhs {
                return Err(Error::InvalidChainMap(format!("chain condition fails in degree {i}")));
            }
        }
        Ok(())
    }

    /// `F'_i = p_i^-1 F_i φ(p_i)`, matching [`EquivariantChainComplex::rebased`].
    pub fn rebased(
        &self,
        c: &EquivariantChainComplex,
        p: &[(RingMatrix, RingMatrix)],
    ) -> Result<(EquivariantChainComplex, TwistedChainMap)> {
        let c2 = c.rebased(p)?;
        let maps = self.maps.iter().zip(p).map(|(f, (a, b))| &(b * f) * &a.map_hom(&self.twist)).collect();
        let m = TwistedChainMap::new(&c2, &self.twist, maps)?;
        Ok((c2, m))
    }
}

/// The cellular chains of the cover of a presentation 2-complex.
///
/// `proj` sends the presented group to a computable quotient `π`. The
/// coefficients live in `π` when it is abelian and in `π^op` otherwise, so
/// that `∂_1 ∂_2 = Σ (x - 1) ∂r/∂x` is the fundamental formula.
pub fn presentation_complex(proj: &GroupHom) -> Result<EquivariantChainComplex> {
    let (gens, rels) =
        proj.dom().presentation().ok_or_else(|| Error::UnsupportedGroup("presentation complexes need a presented group".into()))?;
    let q = proj.cod();
    let base = q.opposite();
    let images: Vec<Elem> = (0..gens.len()).map(|i| proj.apply_word(&Word::generator(i))).collect();
    for r in rels {
        if !q.is_identity(&proj.apply_word(r)) {
            return Err(Error::BoundaryNotZero(format!("relator {} survives in {}", r.display_with(gens), q.name())));
        }
    }
    let n = gens.len();
    let one = RingElement::one(&base);
    let d1 = RingMatrix::from_fn(&base, 1, n, |_, i| &RingElement::from_elem(&base, images[i].clone()) - &one);
    let d2 = RingMatrix::from_fn(&base, n, rels.len(), |i, r| fox_derivative_images(&rels[r], i, q, &images).rebase_unchecked(&base));
    EquivariantChainComplex::new(&base, vec![1, n, rels.len()], vec![d1, d2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::{cyclic, symmetric};

    #[test]
    fn torus_complex() {
        let t = Group::presented("T", vec!["a".into(), "b".into()], vec![Word::from_letters([(0, 1), (1, 1), (0, -1), (1, -1)])]).unwrap();
        let z2 = Group::free_abelian(2);
        let proj = GroupHom::from_presentation(&t, &z2, z2.generators().to_vec()).unwrap();
        let c = presentation_complex(&proj).unwrap();
        assert_eq!(c.ranks(), &[1, 2, 1]);
        let (a, b) = (RingElement::from_elem(&z2, z2.generators()[0].clone()), RingElement::from_elem(&z2, z2.generators()[1].clone()));
        let one = RingElement::one(&z2);
        assert_eq!(c.boundary(2).get(0, 0), &one - &b);
        assert_eq!(c.boundary(2).get(1, 0), &a - &one);
        assert_eq!(c.boundary(1).get(0, 1), &b - &one);
    }

    #[test]
    fn projective_plane_and_nonabelian() {
        let p = Group::presented("P", vec!["a".into()], vec![Word::power_of(0, 2)]).unwrap();
        let z2 = cyclic(2);
        let proj = GroupHom::from_presentation(&p, &z2, vec![z2.generators()[0].clone()]).unwrap();
        let c = presentation_complex(&proj).unwrap();
        let a = RingElement::from_elem(&z2, z2.generators()[0].clone());
        assert_eq!(c.boundary(2).get(0, 0), &RingElement::one(&z2) + &a);

        // S3 = <s, t | s^2, t^3, (st)^2>
        let s3 = symmetric(3);
        let rels = vec![Word::power_of(0, 2), Word::power_of(1, 3), Word::from_letters([(0, 1), (1, 1), (0, 1), (1, 1)])];
        let g = Group::presented("S", vec!["s".into(), "t".into()], rels).unwrap();
        let imgs = vec![s3.parse_elem("(12)").unwrap(), s3.parse_elem("(123)").unwrap()];
        let proj = GroupHom::from_presentation(&g, &s3, imgs.clone()).unwrap();
        assert!(presentation_complex(&proj).is_ok());
        // killing only part of the relators fails
        let bad = Group::presented("B", vec!["s".into()], vec![Word::power_of(0, 3)]).unwrap();
        assert!(GroupHom::from_presentation(&bad, &s3, vec![imgs[0].clone()]).is_err());
    }
}

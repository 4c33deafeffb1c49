use crate::algebra::{GroupHom, RingMatrix};
use crate::bicat::{Bimodule, RingObject, ShadowMap};
use crate::error::{Error, Result};
use crate::trace::{canonical_dual, euler_characteristic, trace_eps, trace_eta, DualPair};

use super::base_change::base_change_pair;
use super::ringhom::RingHom;

/// A Morita equivalence: dual pairs `(M, N)` and `(N, M)` whose coevaluations
/// and evaluations are mutually inverse.
#[derive(Clone, Debug)]
pub struct MoritaWitness {
    pair1: DualPair,
    pair2: DualPair,
}

impl MoritaWitness {
    pub fn new(pair1: DualPair, pair2: DualPair) -> Result<MoritaWitness> {
        if pair1.m() != pair2.n() || pair1.n() != pair2.m() {
            return Err(Error::ObjectMismatch("the second pair must be (N, M)".into()));
        }
        if !pair1.verify() || !pair2.verify() {
            return Err(Error::NotDualizable("triangle identities fail".into()));
        }
        let w = MoritaWitness { pair1, pair2 };
        if w.identities().iter().any(|ok| !ok) {
            return Err(Error::NotInvertible("coevaluation and evaluation are not inverse".into()));
        }
        Ok(w)
    }

    pub fn pair1(&self) -> &DualPair {
        &self.pair1
    }

    pub fn pair2(&self) -> &DualPair {
        &self.pair2
    }

    pub fn m(&self) -> &Bimodule {
        self.pair1.m()
    }

    pub fn n(&self) -> &Bimodule {
        self.pair1.n()
    }

    /// In order: `η_NM ε_MN = id_{N⊙M}`, `ε_NM η_MN = id_{U_C}`,
    /// `η_MN ε_NM = id_{M⊙N}`, `ε_MN η_NM = id_{U_D}`.
    pub fn identities(&self) -> [bool; 4] {
        let (e1, e2) = (self.pair1.eval().matrix(), self.pair2.eval().matrix());
        let (h1, h2) = (self.pair1.coev().matrix(), self.pair2.coev().matrix());
        let id = |a: &RingMatrix, b: &RingMatrix| a.cols() == b.rows() && (a * b).is_identity();
        [id(h2, e1), id(e2, h1), id(h1, e2), id(e1, h2)]
    }

    /// `χ(M): <U_C> -> <U_D>` and `χ(N): <U_D> -> <U_C>`.
    pub fn euler_maps(&self) -> Result<(ShadowMap, ShadowMap)> {
        Ok((euler_characteristic(&self.pair1)?, euler_characteristic(&self.pair2)?))
    }

    /// Both composites of the two Euler characteristics.
    pub fn euler_composites(&self) -> Result<(ShadowMap, ShadowMap)> {
        let (m, n) = self.euler_maps()?;
        Ok((m.after(&n)?, n.after(&m)?))
    }

    /// `tr(η_Q): <Q> -> <N⊙Q⊙M>` and `tr(ε_Q): <N⊙Q⊙M> -> <Q>` for an endo-1-cell `Q` of `C`.
    pub fn conjugation_maps(&self, q: &Bimodule) -> Result<(ShadowMap, ShadowMap)> {
        Ok((trace_eta(&self.pair1, q)?, trace_eps(&self.pair2, q)?))
    }

    /// The witness read the other way round.
    pub fn reversed(&self) -> MoritaWitness {
        MoritaWitness { pair1: self.pair2.clone(), pair2: self.pair1.clone() }
    }
}

/// `A` and `M_n(A)` through the row and column bimodules.
///
/// Matrix rings are stored in corner form, so both bimodules are the unit
/// of `A` relabelled between `A` and `M_n(A)`, and every structure map is the
/// identity. [`MatrixUnitModel`](super::MatrixUnitModel) checks the same
/// statements on explicit matrix units.
pub fn matrix_morita(a: &RingObject, n: usize) -> Result<MoritaWitness> {
    if n == 0 {
        return Err(Error::DimensionMismatch("matrix size must be positive".into()));
    }
    let big = RingObject::amplified(&a.group, a.degree * n);
    let u = Bimodule::unit(a);
    let row = u.with_objects(a.clone(), big.clone())?;
    let col = u.with_objects(big, a.clone())?;
    let one = RingMatrix::identity(&a.group, 1);
    let p1 = DualPair::new(&row, &col, one.clone(), one.clone())?;
    let p2 = DualPair::new(&col, &row, one.clone(), one)?;
    MoritaWitness::new(p1, p2)
}

/// `_ψD` and `_{ψ^-1}C` for an isomorphism `ψ: C -> D`.
pub fn twisted_unit_morita(psi: &GroupHom) -> Result<MoritaWitness> {
    if !psi.is_bijective() {
        return Err(Error::NotInvertible("the twist is not an isomorphism".into()));
    }
    let p1 = canonical_dual(&Bimodule::left_twisted(psi))?;
    let p2 = canonical_dual(p1.n())?;
    if p2.n() != p1.m() {
        return Err(Error::NotInvertible("double dual differs".into()));
    }
    MoritaWitness::new(p1, p2)
}

/// `(_fC, C_f)` for a ring isomorphism `f`.
pub fn base_change_morita(f: &RingHom) -> Result<MoritaWitness> {
    let bc = base_change_pair(f)?;
    if bc.index() != 1 {
        return Err(Error::NotInvertible("base change along a proper inclusion".into()));
    }
    MoritaWitness::new(bc.pair().clone(), bc.right_pair().clone())
}

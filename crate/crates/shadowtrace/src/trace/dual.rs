use std::collections::BTreeMap;

use crate::algebra::{Elem, GroupHom, RingElement, RingMatrix};
use crate::bicat::{hcompose, Bimodule, RingObject, TwoCell};
use crate::error::{Error, Result};

/// `k` copies of `a` down the diagonal.
pub(crate) fn block_repeat(a: &RingMatrix, k: usize) -> RingMatrix {
    if k == 0 {
        return RingMatrix::zero(a.group(), 0, 0);
    }
    RingMatrix::block_diag(&vec![a.clone(); k])
}

/// A dual pair `(M, N)` with coevaluation `η: U_C => M ⊙ N` and
/// evaluation `ε: N ⊙ M => U_D`.
#[derive(Clone, Debug)]
pub struct DualPair {
    m: Bimodule,
    n: Bimodule,
    coev: TwoCell,
    eval: TwoCell,
}

impl DualPair {
    /// Checks shapes and equivariance, not the triangle identities.
    pub fn new(m: &Bimodule, n: &Bimodule, coev: RingMatrix, eval: RingMatrix) -> Result<DualPair> {
        if m.source() != n.target() || m.target() != n.source() {
            return Err(Error::ObjectMismatch("dual pair with mismatched rings".into()));
        }
        let uc = Bimodule::unit(m.source());
        let ud = Bimodule::unit(m.target());
        let coev = TwoCell::new(&uc, &hcompose(m, n)?, coev)?;
        let eval = TwoCell::new(&hcompose(n, m)?, &ud, eval)?;
        Ok(DualPair { m: m.clone(), n: n.clone(), coev, eval })
    }

    pub fn m(&self) -> &Bimodule {
        &self.m
    }

    pub fn n(&self) -> &Bimodule {
        &self.n
    }

    pub fn coev(&self) -> &TwoCell {
        &self.coev
    }

    pub fn eval(&self) -> &TwoCell {
        &self.eval
    }

    /// `(id_M ⊙ ε)(η ⊙ id_M)`, as a matrix on `M`.
    pub fn triangle_m(&self) -> RingMatrix {
        let a = self.m.substitute(self.coev.matrix());
        let b = block_repeat(self.eval.matrix(), self.m.rank());
        &b * &a
    }

    /// `(ε ⊙ id_N)(id_N ⊙ η)`, as a matrix on `N`.
    pub fn triangle_n(&self) -> RingMatrix {
        let a = block_repeat(self.coev.matrix(), self.n.rank());
        let b = self.n.substitute(self.eval.matrix());
        &b * &a
    }

    /// Both triangle identities, exactly.
    pub fn verify(&self) -> bool {
        self.triangle_m().is_identity() && self.triangle_n().is_identity()
    }

    /// Same pair with the evaluation scaled; used to exercise the verifier.
    pub fn with_scaled_eval(&self, k: i64) -> DualPair {
        DualPair { eval: self.eval.scale(k), ..self.clone() }
    }

    /// The dual pair of `M1 ⊙ M2` with dual `N2 ⊙ N1`.
    pub fn compose(&self, second: &DualPair) -> Result<DualPair> {
        let (m1, n1, m2, n2) = (&self.m, &self.n, &second.m, &second.n);
        let m = hcompose(m1, m2)?;
        let n = hcompose(n2, n1)?;
        let inner = block_repeat(&n1.substitute(second.coev.matrix()), m1.rank());
        let coev = &inner * self.coev.matrix();
        let inner = block_repeat(&m2.substitute(self.eval.matrix()), n2.rank());
        let eval = second.eval.matrix() * &inner;
        DualPair::new(&m, &n, coev, eval)
    }
}

/// The canonical right dual `Hom_D(M, D)` with `η(1) = Σ e_i ⊗ e_i*` and
/// `ε` the contraction, when that dual is again right-free of finite rank.
pub fn canonical_dual(m: &Bimodule) -> Result<DualPair> {
    let cg = m.source_group().clone();
    let dg = m.target_group().clone();
    let r = m.rank();
    let so = RingObject { group: dg.clone(), degree: m.target().degree };
    let to = RingObject { group: cg.clone(), degree: m.source().degree };
    if r == 0 {
        let n = Bimodule::zero(&so, &to);
        return finish(m, &n, RingMatrix::zero(&cg, 0, 1), RingMatrix::zero(&dg, 1, 0));
    }
    if cg.is_finite() && dg.is_finite() {
        let rows: Vec<Vec<(usize, i64, Elem)>> = cg
            .elements()
            .iter()
            .map(|c| row_monomial(&m.act(c)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::NotDualizable("the left action is not monomial".into()))?;
        let nd = dg.order().unwrap();
        let nc = cg.order().unwrap();
        // functionals d e_j^* as tokens j * |D| + d; (j, d) . c = σ (k, d g)
        let tok = |j: usize, d: usize| j * nd + d;
        let act = |t: usize, c: usize| -> (usize, i64) {
            let (j, d) = (t / nd, t % nd);
            let (k, s, g) = &rows[c][j];
            (tok(*k, dg.mul(&Elem::Fin(d), g).index()), *s)
        };
        let ntok = r * nd;
        // orbit index, element and sign with t = σ b_orbit . c
        let mut place: Vec<Option<(usize, usize, i64)>> = vec![None; ntok];
        let mut reps: Vec<usize> = Vec::new();
        for t in 0..ntok {
            if place[t].is_some() {
                continue;
            }
            let k = reps.len();
            reps.push(t);
            for c in 0..nc {
                let (u, s) = act(t, c);
                if place[u].is_some() {
                    return Err(Error::NotDualizable("the dual is not right-free over the source".into()));
                }
                place[u] = Some((k, c, s));
            }
        }
        let s = reps.len();
        let mut table = Vec::with_capacity(nd);
        for dp in 0..nd {
            let mut mat = RingMatrix::zero(&cg, s, s);
            for (k, &b) in reps.iter().enumerate() {
                let (j, d) = (b / nd, b % nd);
                let u = tok(j, dg.mul(&Elem::Fin(dp), &Elem::Fin(d)).index());
                let (l, c, sg) = place[u].unwrap();
                mat.set(l, k, RingElement::term(&cg, Elem::Fin(c), sg));
            }
            table.push(mat);
        }
        let imgs: Vec<(Elem, RingMatrix)> = dg.generators().iter().map(|g| (g.clone(), table[g.index()].clone())).collect();
        let n = Bimodule::new(so, to, s, &imgs)?;
        let mut coev = RingMatrix::zero(&cg, r * s, 1);
        for i in 0..r {
            let (l, c, sg) = place[tok(i, 0)].unwrap();
            coev.add_to(i * s + l, 0, &RingElement::term(&cg, Elem::Fin(c), sg));
        }
        let mut eval = RingMatrix::zero(&dg, 1, s * r);
        for (k, &b) in reps.iter().enumerate() {
            let (j, d) = (b / nd, b % nd);
            eval.set(0, k * r + j, RingElement::from_elem(&dg, Elem::Fin(d)));
        }
        return finish(m, &n, coev, eval);
    }
    if cg.is_free_abelian() && dg.is_free_abelian() {
        let psis = m.diagonal_twists().ok_or_else(|| Error::NotDualizable("lattice duals need a positive diagonal action".into()))?;
        let mut invs = Vec::new();
        for p in &psis {
            if !p.is_bijective() {
                return Err(Error::NotDualizable("a diagonal twist is not invertible".into()));
            }
            invs.push(p.inverse()?);
        }
        let n = Bimodule::diagonal(&dg, &cg, &invs)?.with_objects(so, to)?;
        let mut coev = RingMatrix::zero(&cg, r * r, 1);
        let mut eval = RingMatrix::zero(&dg, 1, r * r);
        for i in 0..r {
            coev.set(i * r + i, 0, RingElement::one(&cg));
            eval.set(0, i * r + i, RingElement::one(&dg));
        }
        return finish(m, &n, coev, eval);
    }
    Err(Error::NotDualizable(format!("the dual of a bimodule from {} to {} is not right-free of finite rank", cg.name(), dg.name())))
}

fn finish(m: &Bimodule, n: &Bimodule, coev: RingMatrix, eval: RingMatrix) -> Result<DualPair> {
    let w = DualPair::new(m, n, coev, eval)?;
    if !w.verify() {
        return Err(Error::NotDualizable("triangle identities fail".into()));
    }
    Ok(w)
}

/// Per row: `(column, sign, element)` of the single nonzero entry.
fn row_monomial(a: &RingMatrix) -> Option<Vec<(usize, i64, Elem)>> {
    let data = a.monomial_data()?;
    let mut rows: BTreeMap<usize, (usize, i64, Elem)> = BTreeMap::new();
    for (j, (i, s, g)) in data.into_iter().enumerate() {
        rows.insert(i, (j, s, g));
    }
    Some(rows.into_values().collect())
}

/// Dual pair for a direct sum of left-twisted units `⊕ _{ψ_j} D` with each `ψ_j`
/// an injection of a finite group, or each bijective.
pub fn twisted_units_dual(psis: &[GroupHom]) -> Result<DualPair> {
    let c = psis.first().ok_or_else(|| Error::DimensionMismatch("no twists".into()))?.dom().clone();
    let d = psis[0].cod().clone();
    canonical_dual(&Bimodule::diagonal(&c, &d, psis)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::{alternating, cyclic, symmetric};

    #[test]
    fn unit_is_self_dual() {
        let s3 = symmetric(3);
        let u = Bimodule::unit(&RingObject::new(&s3));
        let w = canonical_dual(&u).unwrap();
        assert_eq!(w.n(), &u);
        assert!(w.coev().matrix().is_identity());
        assert!(!w.with_scaled_eval(2).verify());
    }

    #[test]
    fn induced_from_a3() {
        let s3 = symmetric(3);
        let a3 = alternating(3);
        let inc = GroupHom::all_homs(&a3, &s3).into_iter().find(|h| h.is_injective()).unwrap();
        let m = Bimodule::left_twisted(&inc);
        let w = canonical_dual(&m).unwrap();
        assert_eq!(w.n().rank(), 2);
    }

    #[test]
    fn zero_rank() {
        let z2 = cyclic(2);
        let m = Bimodule::zero(&RingObject::new(&z2), &RingObject::new(&z2));
        assert!(canonical_dual(&m).unwrap().verify());
    }

    #[test]
    fn lattice_doubling_is_not_dualizable() {
        let z = crate::algebra::Group::free_abelian(1);
        let m = Bimodule::left_twisted(&GroupHom::power_map(&z, 2).unwrap());
        assert!(matches!(canonical_dual(&m), Err(Error::NotDualizable(_))));
        let m = Bimodule::left_twisted(&GroupHom::power_map(&z, -1).unwrap());
        assert!(canonical_dual(&m).unwrap().verify());
    }
}

use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::{Elem, Group, GroupHom, RingElement, RingMatrix};
use crate::error::{Error, Result};

use super::shadow::ShadowGroup;

/// A 0-cell: the ring `M_n(Z[G])`, stored as its group and the degree `n`.
///
/// A 1-cell between `(A, p)` and `(B, q)` is stored through its Morita corner,
/// a right-free `(Z[A], Z[B])`-bimodule `X`, standing for `X^{p x q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingObject {
    pub group: Group,
    pub degree: usize,
}

impl RingObject {
    pub fn new(group: &Group) -> RingObject {
        RingObject { group: group.clone(), degree: 1 }
    }

    pub fn amplified(group: &Group, degree: usize) -> RingObject {
        assert!(degree >= 1, "matrix degree is at least 1");
        RingObject { group: group.clone(), degree }
    }
}

impl fmt::Display for RingObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "Z[{}]", self.group.name())
        } else {
            write!(f, "M{}(Z[{}])", self.degree, self.group.name())
        }
    }
}

pub(crate) struct ActionData {
    source: Group,
    rank: usize,
    /// images of the canonical generators of the source
    gens: Vec<RingMatrix>,
    /// full table of images for finite sources
    table: Option<Vec<RingMatrix>>,
    /// inverses of generator images for lattice sources
    gen_inv: Vec<RingMatrix>,
    pub(crate) shadow: OnceLock<Arc<ShadowGroup>>,
}

/// A 1-cell: an `(A, B)`-bimodule free of finite rank as a right module,
/// given by its left action `A -> M_r(Z[B])` on column vectors.
#[derive(Clone)]
pub struct Bimodule {
    source: RingObject,
    target: RingObject,
    pub(crate) data: Arc<ActionData>,
}

impl PartialEq for Bimodule {
    fn eq(&self, other: &Bimodule) -> bool {
        self.source == other.source
            && self.target == other.target
            && (Arc::ptr_eq(&self.data, &other.data) || (self.data.rank == other.data.rank && self.data.gens == other.data.gens))
    }
}

impl Eq for Bimodule {}

impl fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bimodule[{} -> {}, rank {}", self.source, self.target, self.rank())?;
        for (g, m) in self.data.source.generators().iter().zip(&self.data.gens) {
            write!(f, ", {} -> {:?}", self.data.source.label(g), m)?;
        }
        write!(f, "]")
    }
}

fn check_square(m: &RingMatrix, rank: usize, target: &Group) -> Result<()> {
    if m.rows() != rank || m.cols() != rank {
        return Err(Error::DimensionMismatch(format!("action matrix must be {rank}x{rank}")));
    }
    if m.group() != target {
        return Err(Error::BaseMismatch("action matrix over the wrong ring".into()));
    }
    Ok(())
}

impl Bimodule {
    /// Builds a bimodule from images of elements generating the source group.
    ///
    /// For finite sources the action is extended along words and checked on all
    /// pairs of elements. For lattice sources the images must be monomial and commute.
    pub fn new(source: RingObject, target: RingObject, rank: usize, images: &[(Elem, RingMatrix)]) -> Result<Bimodule> {
        let (sg, tg) = (source.group.clone(), target.group.clone());
        for (g, m) in images {
            if !sg.contains(g) {
                return Err(Error::UnknownElement("action generator outside the source".into()));
            }
            check_square(m, rank, &tg)?;
        }
        if sg.is_finite() {
            let n = sg.order().unwrap();
            let mut table: Vec<Option<RingMatrix>> = vec![None; n];
            table[0] = Some(RingMatrix::identity(&tg, rank));
            let mut queue = VecDeque::from([0usize]);
            while let Some(x) = queue.pop_front() {
                let mx = table[x].clone().unwrap();
                for (g, mg) in images {
                    let y = sg.mul(&Elem::Fin(x), g).index();
                    let my = &mx * mg;
                    match &table[y] {
                        Some(old) if *old != my => {
                            return Err(Error::InvalidAction(format!("action is inconsistent at {}", sg.label(&Elem::Fin(y)))))
                        }
                        Some(_) => {}
                        None => {
                            table[y] = Some(my);
                            queue.push_back(y);
                        }
                    }
                }
            }
            if table.iter().any(|t| t.is_none()) {
                return Err(Error::InvalidAction("action images do not cover a generating set".into()));
            }
            let table: Vec<RingMatrix> = table.into_iter().map(|t| t.unwrap()).collect();
            for a in 0..n {
                for b in 0..n {
                    let ab = sg.mul(&Elem::Fin(a), &Elem::Fin(b)).index();
                    if table[ab] != &table[a] * &table[b] {
                        return Err(Error::InvalidAction(format!(
                            "rho({}{}) differs from rho({})rho({})",
                            sg.label(&Elem::Fin(a)),
                            sg.label(&Elem::Fin(b)),
                            sg.label(&Elem::Fin(a)),
                            sg.label(&Elem::Fin(b))
                        )));
                    }
                }
            }
            Ok(Bimodule::from_table(source, target, rank, table))
        } else if sg.is_free_abelian() {
            let k = sg.rank();
            let mut basis: Vec<Option<RingMatrix>> = vec![None; k];
            for (g, m) in images {
                let v = g.coords();
                let nz: Vec<usize> = (0..k).filter(|&i| v[i] != 0).collect();
                if nz.len() != 1 || v[nz[0]] != 1 {
                    return Err(Error::InvalidAction("lattice actions are given on the standard basis".into()));
                }
                basis[nz[0]] = Some(m.clone());
            }
            if basis.iter().any(|b| b.is_none()) {
                return Err(Error::InvalidAction("missing basis image".into()));
            }
            let gens: Vec<RingMatrix> = basis.into_iter().map(|b| b.unwrap()).collect();
            Bimodule::from_lattice_gens(source, target, rank, gens)
        } else {
            Err(Error::UnsupportedGroup("bimodules over presented groups".into()))
        }
    }

    pub(crate) fn from_table(source: RingObject, target: RingObject, rank: usize, table: Vec<RingMatrix>) -> Bimodule {
        let gens = source.group.generators().iter().map(|g| table[g.index()].clone()).collect();
        Bimodule {
            data: Arc::new(ActionData {
                source: source.group.clone(),
                rank,
                gens,
                table: Some(table),
                gen_inv: Vec::new(),
                shadow: OnceLock::new(),
            }),
            source,
            target,
        }
    }

    pub(crate) fn from_lattice_gens(source: RingObject, target: RingObject, rank: usize, gens: Vec<RingMatrix>) -> Result<Bimodule> {
        let mut gen_inv = Vec::new();
        for m in &gens {
            check_square(m, rank, &target.group)?;
            gen_inv
                .push(m.monomial_inverse().ok_or_else(|| Error::InvalidAction("lattice actions need monomial generator images".into()))?);
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if &gens[i] * &gens[j] != &gens[j] * &gens[i] {
                    return Err(Error::InvalidAction("generator images do not commute".into()));
                }
            }
        }
        Ok(Bimodule {
            data: Arc::new(ActionData { source: source.group.clone(), rank, gens, table: None, gen_inv, shadow: OnceLock::new() }),
            source,
            target,
        })
    }

    /// Same action, different tags on the two sides (used for matrix amplification).
    pub fn with_objects(&self, source: RingObject, target: RingObject) -> Result<Bimodule> {
        if source.group != self.source.group || target.group != self.target.group {
            return Err(Error::ObjectMismatch("retagging must keep the groups".into()));
        }
        Ok(Bimodule { source, target, data: self.data.clone() })
    }

    /// The unit 1-cell: the ring as a bimodule over itself.
    pub fn unit(obj: &RingObject) -> Bimodule {
        Bimodule::left_twisted(&GroupHom::identity(&obj.group)).with_objects(obj.clone(), obj.clone()).expect("same groups")
    }

    /// `_ψB`: rank one with `a` acting by `ψ(a)`.
    pub fn left_twisted(psi: &GroupHom) -> Bimodule {
        Bimodule::diagonal(psi.dom(), psi.cod(), std::slice::from_ref(psi)).expect("homomorphism gives an action")
    }

    /// Direct sum of left-twisted units.
    pub fn diagonal(source: &Group, target: &Group, psis: &[GroupHom]) -> Result<Bimodule> {
        for p in psis {
            if p.dom() != source || p.cod() != target {
                return Err(Error::ObjectMismatch("twists must share source and target".into()));
            }
        }
        let r = psis.len();
        let rho = |a: &Elem| RingMatrix::diagonal_matrix(target, psis.iter().map(|p| RingElement::from_elem(target, p.apply(a))).collect());
        let (so, to) = (RingObject::new(source), RingObject::new(target));
        if source.is_finite() {
            let table = source.elements().iter().map(rho).collect();
            Ok(Bimodule::from_table(so, to, r, table))
        } else {
            Bimodule::from_lattice_gens(so, to, r, source.generators().iter().map(rho).collect())
        }
    }

    pub fn zero(source: &RingObject, target: &RingObject) -> Bimodule {
        let sg = &source.group;
        if sg.is_finite() {
            let table = vec![RingMatrix::zero(&target.group, 0, 0); sg.order().unwrap()];
            Bimodule::from_table(source.clone(), target.clone(), 0, table)
        } else {
            let gens = vec![RingMatrix::zero(&target.group, 0, 0); sg.rank()];
            Bimodule::from_lattice_gens(source.clone(), target.clone(), 0, gens).unwrap()
        }
    }

    pub fn source(&self) -> &RingObject {
        &self.source
    }

    pub fn target(&self) -> &RingObject {
        &self.target
    }

    pub fn source_group(&self) -> &Group {
        &self.source.group
    }

    pub fn target_group(&self) -> &Group {
        &self.target.group
    }

    pub fn rank(&self) -> usize {
        self.data.rank
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    /// Images of the canonical generators of the source group.
    pub fn generator_images(&self) -> &[RingMatrix] {
        &self.data.gens
    }

    /// `ρ(a)` for a group element.
    pub fn act(&self, a: &Elem) -> RingMatrix {
        if let Some(t) = &self.data.table {
            return t[a.index()].clone();
        }
        let tg = &self.target.group;
        let mut out = RingMatrix::identity(tg, self.rank());
        for (i, &k) in a.coords().iter().enumerate() {
            let m = if k >= 0 { &self.data.gens[i] } else { &self.data.gen_inv[i] };
            for _ in 0..k.unsigned_abs() {
                out = &out * m;
            }
        }
        out
    }

    pub(crate) fn act_ref(&self, a: &Elem) -> std::borrow::Cow<'_, RingMatrix> {
        match &self.data.table {
            Some(t) => std::borrow::Cow::Borrowed(&t[a.index()]),
            None => std::borrow::Cow::Owned(self.act(a)),
        }
    }

    /// `ρ(x)` for a ring element.
    pub fn act_ring(&self, x: &RingElement) -> RingMatrix {
        let mut out = RingMatrix::zero(self.target_group(), self.rank(), self.rank());
        for (g, c) in x.terms() {
            out = &out + &self.act_ref(g).scale(*c);
        }
        out
    }

    /// `ρ(x) v` without forming `ρ(x)`.
    pub fn act_ring_vec(&self, x: &RingElement, v: &[RingElement]) -> Vec<RingElement> {
        let mut out = vec![RingElement::zero(self.target_group()); self.rank()];
        for (g, c) in x.terms() {
            let w = self.act_ref(g).mul_vec(v);
            for (o, y) in out.iter_mut().zip(w) {
                *o = &*o + &y.scale(*c);
            }
        }
        out
    }

    /// Replaces every entry `x_ij` of a matrix over the source ring by the block `ρ(x_ij)`.
    pub fn substitute(&self, a: &RingMatrix) -> RingMatrix {
        assert_eq!(a.group(), self.source_group(), "substitution into the wrong ring");
        let s = self.rank();
        let mut out = RingMatrix::zero(self.target_group(), a.rows() * s, a.cols() * s);
        for ((i, j), x) in a.entries() {
            out.put_block(i * s, j * s, &self.act_ring(x));
        }
        out
    }

    /// All monomial with `+1`-free structure checks pass.
    pub fn is_monomial(&self) -> bool {
        self.data.gens.iter().all(|m| m.is_monomial())
    }

    /// `ψ_j` with `ρ(a) = diag(ψ_j(a))`, when the action is positive-diagonal.
    pub fn diagonal_twists(&self) -> Option<Vec<GroupHom>> {
        let sg = self.source_group();
        let tg = self.target_group();
        let diags: Vec<Vec<Elem>> = self.data.gens.iter().map(|m| m.positive_diagonal()).collect::<Option<Vec<_>>>()?;
        let r = self.rank();
        let mut out = Vec::new();
        for j in 0..r {
            let imgs: Vec<(Elem, Elem)> = sg.generators().iter().zip(&diags).map(|(g, d)| (g.clone(), d[j].clone())).collect();
            let h = if sg.is_finite() {
                if imgs.is_empty() {
                    GroupHom::trivial(sg, tg)
                } else {
                    GroupHom::from_generator_images(sg, tg, &imgs).ok()?
                }
            } else {
                GroupHom::from_basis_images(sg, tg, imgs.into_iter().map(|p| p.1).collect()).ok()?
            };
            out.push(h);
        }
        Some(out)
    }

    /// `P ρ P^-1` for an invertible matrix `P` with known inverse.
    pub fn conjugate(&self, p: &RingMatrix, p_inv: &RingMatrix) -> Result<Bimodule> {
        let r = self.rank();
        check_square(p, r, self.target_group())?;
        check_square(p_inv, r, self.target_group())?;
        if !(p * p_inv).is_identity() {
            return Err(Error::NotInvertible("conjugating matrix".into()));
        }
        let conj = |m: &RingMatrix| &(p * m) * p_inv;
        match &self.data.table {
            Some(t) => Ok(Bimodule::from_table(self.source.clone(), self.target.clone(), r, t.iter().map(conj).collect())),
            None => Bimodule::from_lattice_gens(self.source.clone(), self.target.clone(), r, self.data.gens.iter().map(conj).collect()),
        }
    }

    pub fn direct_sum(&self, other: &Bimodule) -> Result<Bimodule> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ObjectMismatch("direct sum".into()));
        }
        let r = self.rank() + other.rank();
        let tg = self.target_group();
        let sum = |a: &RingMatrix, b: &RingMatrix| {
            let mut m = RingMatrix::zero(tg, r, r);
            m.put_block(0, 0, a);
            m.put_block(a.rows(), a.cols(), b);
            m
        };
        match (&self.data.table, &other.data.table) {
            (Some(s), Some(o)) => {
                Ok(Bimodule::from_table(self.source.clone(), self.target.clone(), r, s.iter().zip(o).map(|(a, b)| sum(a, b)).collect()))
            }
            _ => Bimodule::from_lattice_gens(
                self.source.clone(),
                self.target.clone(),
                r,
                self.data.gens.iter().zip(&other.data.gens).map(|(a, b)| sum(a, b)).collect(),
            ),
        }
    }
}

/// Horizontal composition `M ⊙ N = M ⊗_B N`.
///
/// The basis of `M ⊙ N` is `e_i ⊗ f_j` at index `i * rank(N) + j`, and
/// `ρ(a)` has block `(i, j)` equal to `ρ_N(ρ_M(a)_ij)`.
pub fn hcompose(m: &Bimodule, n: &Bimodule) -> Result<Bimodule> {
    if m.target != n.source {
        return Err(Error::ObjectMismatch(format!("cannot compose {} -> {} with {} -> {}", m.source, m.target, n.source, n.target)));
    }
    let r = m.rank() * n.rank();
    match &m.data.table {
        Some(t) => {
            let table = t.iter().map(|a| n.substitute(a)).collect();
            Ok(Bimodule::from_table(m.source.clone(), n.target.clone(), r, table))
        }
        None => {
            let gens = m.data.gens.iter().map(|a| n.substitute(a)).collect();
            Bimodule::from_lattice_gens(m.source.clone(), n.target.clone(), r, gens)
        }
    }
}

/// Left-to-right composite of a chain of 1-cells.
pub fn hcompose_all(cells: &[&Bimodule]) -> Result<Bimodule> {
    let mut out = cells[0].clone();
    for c in &cells[1..] {
        out = hcompose(&out, c)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::{cyclic, symmetric};

    #[test]
    fn unit_is_regular_representation() {
        let s3 = symmetric(3);
        let u = Bimodule::unit(&RingObject::new(&s3));
        assert_eq!(u.rank(), 1);
        let g = s3.parse_elem("(123)").unwrap();
        assert_eq!(u.act(&g).get(0, 0), RingElement::from_elem(&s3, g));
        assert_eq!(hcompose(&u, &u).unwrap(), u);
    }

    #[test]
    fn rejects_non_action() {
        let z2 = cyclic(2);
        let a = z2.parse_elem("a").unwrap();
        let obj = RingObject::new(&z2);
        let m = RingMatrix::from_ints(&z2, &[vec![2]]);
        assert!(Bimodule::new(obj.clone(), obj, 1, &[(a, m)]).is_err());
    }

    #[test]
    fn rank_multiplies() {
        let z4 = cyclic(4);
        let obj = RingObject::new(&z4);
        let id = GroupHom::identity(&z4);
        let inv = GroupHom::power_map(&z4, -1).unwrap();
        let m2 = Bimodule::diagonal(&z4, &z4, &[id.clone(), inv.clone()]).unwrap();
        let m3 = Bimodule::diagonal(&z4, &z4, &[id.clone(), inv, id]).unwrap();
        let c = hcompose(&m2, &m3).unwrap();
        assert_eq!(c.rank(), 6);
        assert_eq!(c.source(), &obj);
    }

    #[test]
    fn lattice_action_powers() {
        let z = Group::free_abelian(1);
        let dbl = GroupHom::power_map(&z, 2).unwrap();
        let m = Bimodule::left_twisted(&dbl);
        assert_eq!(m.act(&Elem::Lat(vec![-3])).get(0, 0), RingElement::from_elem(&z, Elem::Lat(vec![-6])));
    }
}

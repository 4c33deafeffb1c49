//! Twisted conjugacy classes: orbits of `x -> l(h) x r(h)^-1`.
//!
//! The usual Reidemeister classes of an endomorphism `φ` are the case
//! `l = id`, `r = φ`.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::group::{Elem, Group};
use super::hom::GroupHom;
use super::snf::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// Canonical label of a twisted class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassLabel {
    /// index of the class in a finite group; classes are numbered by their least element
    Fin(usize),
    /// Smith coordinates, reduced mod the invariant factors
    Lat(Vec<i64>),
}

#[derive(Clone, Debug)]
enum Kind {
    Finite { class_of: Vec<usize>, reps: Vec<usize> },
    Lattice { u: IntMatrix, u_inv: IntMatrix, d: Vec<i64> },
}

#[derive(Clone)]
pub struct TwistedClassSet {
    group: Group,
    left: GroupHom,
    right: GroupHom,
    kind: Kind,
}

impl fmt::Debug for TwistedClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Classes[{}; {:?}; {:?}]", self.group.name(), self.left, self.right)
    }
}

impl PartialEq for TwistedClassSet {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.left == other.left && self.right == other.right
    }
}

impl Eq for TwistedClassSet {}

/// Reidemeister classes of `φ`: `x ~ h x φ(h)^-1`.
pub fn twisted_conjugacy_classes(g: &Group, phi: &GroupHom) -> Result<TwistedClassSet> {
    TwistedClassSet::new(g, &GroupHom::identity_checked(g)?, phi)
}

impl GroupHom {
    pub(crate) fn identity_checked(g: &Group) -> Result<GroupHom> {
        if g.is_presented() {
            return Err(Error::UnsupportedGroup("class enumeration on a presented group".into()));
        }
        Ok(GroupHom::identity(g))
    }
}

impl TwistedClassSet {
    /// Orbits of `x -> l(h) x r(h)^-1` for two endomorphisms `l`, `r`.
    pub fn new(g: &Group, left: &GroupHom, right: &GroupHom) -> Result<TwistedClassSet> {
        if g.is_presented() {
            return Err(Error::UnsupportedGroup("class enumeration on a presented group".into()));
        }
        if *left.dom() != *g || *left.cod() != *g || *right.dom() != *g || *right.cod() != *g {
            return Err(Error::ObjectMismatch("twists must be endomorphisms of the group".into()));
        }
        let kind = if g.is_finite() {
            let n = g.order().unwrap();
            let gens = g.generators();
            let acts: Vec<(Elem, Elem)> = gens.iter().map(|h| (left.apply(h), g.inv(&right.apply(h)))).collect();
            let mut class_of = vec![usize::MAX; n];
            let mut reps = Vec::new();
            for start in 0..n {
                if class_of[start] != usize::MAX {
                    continue;
                }
                let c = reps.len();
                reps.push(start);
                class_of[start] = c;
                let mut queue = VecDeque::from([start]);
                while let Some(x) = queue.pop_front() {
                    for (l, r) in &acts {
                        let y = g.mul(&g.mul(l, &Elem::Fin(x)), r).index();
                        if class_of[y] == usize::MAX {
                            class_of[y] = c;
                            queue.push_back(y);
                        }
                    }
                }
            }
            Kind::Finite { class_of, reps }
        } else {
            let n = g.rank();
            let l = left.matrix().unwrap();
            let r = right.matrix().unwrap();
            let diff: IntMatrix = (0..n).map(|i| (0..n).map(|j| l[i][j] - r[i][j]).collect()).collect();
            let snf = smith_normal_form(&diff);
            Kind::Lattice { u: snf.u_i64(), u_inv: snf.u_inv_i64(), d: snf.diagonal_i64() }
        };
        Ok(TwistedClassSet { group: g.clone(), left: left.clone(), right: right.clone(), kind })
    }

    pub fn untwisted(g: &Group) -> Result<TwistedClassSet> {
        let id = GroupHom::identity_checked(g)?;
        TwistedClassSet::new(g, &id, &id)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn left(&self) -> &GroupHom {
        &self.left
    }

    pub fn right(&self) -> &GroupHom {
        &self.right
    }

    pub fn is_finite(&self) -> bool {
        match &self.kind {
            Kind::Finite { .. } => true,
            Kind::Lattice { d, .. } => d.iter().all(|x| *x != 0),
        }
    }

    /// Number of classes, when finite.
    pub fn count(&self) -> Option<usize> {
        match &self.kind {
            Kind::Finite { reps, .. } => Some(reps.len()),
            Kind::Lattice { d, .. } => {
                if d.contains(&0) {
                    None
                } else {
                    let p = d.iter().fold(BigInt::from(1), |s, x| s * BigInt::from(*x));
                    p.to_usize()
                }
            }
        }
    }

    /// Invariant factors of `l - r` for lattices.
    pub fn invariant_factors(&self) -> Option<&[i64]> {
        match &self.kind {
            Kind::Lattice { d, .. } => Some(d),
            _ => None,
        }
    }

    pub fn class_of(&self, x: &Elem) -> ClassLabel {
        match &self.kind {
            Kind::Finite { class_of, .. } => ClassLabel::Fin(class_of[x.index()]),
            Kind::Lattice { u, d, .. } => {
                let v = x.coords();
                let y: Vec<i64> = u
                    .iter()
                    .zip(d)
                    .map(|(row, &di)| {
                        let s: i128 = row.iter().zip(v).map(|(a, b)| *a as i128 * *b as i128).sum();
                        let s = if di == 0 { s } else { s.rem_euclid(di as i128) };
                        i64::try_from(s).expect("class coordinate overflow")
                    })
                    .collect();
                ClassLabel::Lat(y)
            }
        }
    }

    pub fn representative(&self, c: &ClassLabel) -> Elem {
        match (&self.kind, c) {
            (Kind::Finite { reps, .. }, ClassLabel::Fin(i)) => Elem::Fin(reps[*i]),
            (Kind::Lattice { u_inv, .. }, ClassLabel::Lat(y)) => Elem::Lat(
                u_inv
                    .iter()
                    .map(|row| {
                        let s: i128 = row.iter().zip(y).map(|(a, b)| *a as i128 * *b as i128).sum();
                        i64::try_from(s).expect("representative overflow")
                    })
                    .collect(),
            ),
            _ => panic!("class label of the wrong kind"),
        }
    }

    /// All class labels, when finite, in canonical order.
    pub fn labels(&self) -> Option<Vec<ClassLabel>> {
        match &self.kind {
            Kind::Finite { reps, .. } => Some((0..reps.len()).map(ClassLabel::Fin).collect()),
            Kind::Lattice { d, .. } => {
                if d.contains(&0) {
                    return None;
                }
                let mut out = vec![vec![]];
                for &di in d {
                    let mut next = Vec::new();
                    for p in &out {
                        for k in 0..di {
                            let mut q: Vec<i64> = p.clone();
                            q.push(k);
                            next.push(q);
                        }
                    }
                    out = next;
                }
                Some(out.into_iter().map(ClassLabel::Lat).collect())
            }
        }
    }

    /// Labels on a window of Smith coordinates `-w..=w` on the free part,
    /// all residues on the torsion part. Used to test maps out of infinite class sets.
    pub fn window_labels(&self, w: i64) -> Vec<ClassLabel> {
        match &self.kind {
            Kind::Finite { .. } => self.labels().unwrap(),
            Kind::Lattice { d, .. } => {
                let mut out = vec![vec![]];
                for &di in d {
                    let range: Vec<i64> = if di == 0 { (-w..=w).collect() } else { (0..di).collect() };
                    let mut next = Vec::new();
                    for p in &out {
                        for k in &range {
                            let mut q: Vec<i64> = p.clone();
                            q.push(*k);
                            next.push(q);
                        }
                    }
                    out = next;
                }
                out.into_iter().map(ClassLabel::Lat).collect()
            }
        }
    }

    pub fn members(&self, c: &ClassLabel) -> Vec<Elem> {
        match (&self.kind, c) {
            (Kind::Finite { class_of, .. }, ClassLabel::Fin(i)) => {
                (0..class_of.len()).filter(|&x| class_of[x] == *i).map(Elem::Fin).collect()
            }
            _ => panic!("members of an infinite class"),
        }
    }

    /// `c0`, `c1`, `c(0,1)` for lattices (only non-unit invariant factors carry a
    /// coordinate); the representative's label for finite groups.
    pub fn label_name(&self, c: &ClassLabel) -> String {
        match (&self.kind, c) {
            (Kind::Finite { .. }, _) => self.group.label(&self.representative(c)),
            (Kind::Lattice { d, .. }, ClassLabel::Lat(y)) => {
                let coords: Vec<String> = y.iter().zip(d).filter(|(_, di)| **di != 1).map(|(v, _)| v.to_string()).collect();
                match coords.len() {
                    0 => "c0".to_string(),
                    1 => format!("c{}", coords[0]),
                    _ => format!("c({})", coords.join(",")),
                }
            }
            _ => panic!("class label of the wrong kind"),
        }
    }

    /// Determinant-based count of lattice classes, `|det(l - r)|`, or `None` when zero.
    pub fn lattice_det_count(&self) -> Option<BigInt> {
        match &self.kind {
            Kind::Lattice { .. } => {
                let l = self.left.matrix().unwrap();
                let r = self.right.matrix().unwrap();
                let n = l.len();
                let diff: IntMatrix = (0..n).map(|i| (0..n).map(|j| l[i][j] - r[i][j]).collect()).collect();
                let det = super::snf::determinant(&diff);
                if det.is_zero() {
                    None
                } else {
                    Some(if det < BigInt::zero() { -det } else { det })
                }
            }
            _ => None,
        }
    }
}

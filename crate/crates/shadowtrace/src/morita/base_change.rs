use crate::algebra::snf::IntMatrix;
use crate::algebra::{smith_normal_form, Elem, Group, GroupHom, RingElement, RingMatrix};
use crate::bicat::{Bimodule, RingObject};
use crate::error::{Error, Result};
use crate::trace::DualPair;

use super::ringhom::RingHom;

/// Largest index for which a transversal is enumerated.
pub const MAX_INDEX: usize = 4096;

#[derive(Clone, Debug)]
enum Lookup {
    /// `(coset, h)` with `c = t_coset f(h)`, by element index of `C`
    Table(Vec<(usize, Elem)>),
    /// `U F V = D`; representatives are `U^-1 r` for `r` in the box of `D`
    Box { u: IntMatrix, v: IntMatrix, d: Vec<i64> },
}

/// A left transversal `C = ⊔ t_i f(A)` of an injective homomorphism of finite index.
///
/// Finite groups use lex-least representatives. For lattices the
/// representatives are the Smith box `U^-1 r`, `0 ≤ r_k < d_k`.
#[derive(Clone, Debug)]
pub struct Transversal {
    f: GroupHom,
    reps: Vec<Elem>,
    lookup: Lookup,
}

fn mat_vec(m: &IntMatrix, v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

impl Transversal {
    pub fn compute(f: &GroupHom) -> Result<Transversal> {
        let (a, c) = (f.dom(), f.cod());
        if !f.is_injective() {
            return Err(Error::NoFreeBasis("the ring map is not induced by an injective homomorphism".into()));
        }
        if let (Some(na), Some(nc)) = (a.order(), c.order()) {
            let k = nc / na;
            if k > MAX_INDEX {
                return Err(Error::NoFreeBasis(format!("index {k} is too large")));
            }
            let fa: Vec<Elem> = a.elements().iter().map(|h| f.apply(h)).collect();
            let mut table: Vec<Option<(usize, Elem)>> = vec![None; nc];
            let mut reps = Vec::with_capacity(k);
            for x in 0..nc {
                if table[x].is_some() {
                    continue;
                }
                let t = Elem::Fin(x);
                for (h, y) in fa.iter().enumerate() {
                    table[c.mul(&t, y).index()] = Some((reps.len(), Elem::Fin(h)));
                }
                reps.push(t);
            }
            let table = table.into_iter().map(|e| e.unwrap()).collect();
            return Ok(Transversal { f: f.clone(), reps, lookup: Lookup::Table(table) });
        }
        if a.is_free_abelian() && c.is_free_abelian() {
            if a.rank() != c.rank() {
                return Err(Error::NoFreeBasis("a lattice map of infinite index".into()));
            }
            let fm = f.matrix().expect("lattice map");
            let snf = smith_normal_form(&fm);
            let d = snf.diagonal_i64();
            let mut k: usize = 1;
            for &x in &d {
                k = k.saturating_mul(x as usize);
            }
            if k > MAX_INDEX {
                return Err(Error::NoFreeBasis(format!("index {k} is too large")));
            }
            let u_inv = snf.u_inv_i64();
            let mut reps = Vec::with_capacity(k);
            for l in 0..k {
                let mut r = vec![0i64; d.len()];
                let mut rest = l;
                for i in (0..d.len()).rev() {
                    r[i] = (rest % d[i] as usize) as i64;
                    rest /= d[i] as usize;
                }
                reps.push(Elem::Lat(mat_vec(&u_inv, &r)));
            }
            let lookup = Lookup::Box { u: snf.u_i64(), v: snf.v_i64(), d };
            return Ok(Transversal { f: f.clone(), reps, lookup });
        }
        Err(Error::NoFreeBasis(format!("no coset enumeration for {} in {}", a.name(), c.name())))
    }

    pub fn hom(&self) -> &GroupHom {
        &self.f
    }

    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// `(l, h)` with `c = t_l f(h)`.
    pub fn decompose(&self, c: &Elem) -> (usize, Elem) {
        match &self.lookup {
            Lookup::Table(t) => t[c.index()].clone(),
            Lookup::Box { u, v, d, .. } => {
                let y = mat_vec(u, c.coords());
                let mut l = 0usize;
                let mut q = Vec::with_capacity(d.len());
                for (yk, dk) in y.iter().zip(d) {
                    let r = yk.rem_euclid(*dk);
                    l = l * *dk as usize + r as usize;
                    q.push((yk - r) / dk);
                }
                (l, Elem::Lat(mat_vec(v, &q)))
            }
        }
    }

    /// `f^-1(c)`, if `c` lies in the image.
    pub fn preimage(&self, c: &Elem) -> Option<Elem> {
        let (l, h) = self.decompose(c);
        let g = self.f.cod();
        if g.is_identity(&self.reps[l]) {
            Some(h)
        } else {
            None
        }
    }

    /// The coset of the identity, and `h` with `1 = t_l f(h)`.
    fn unit_coset(&self) -> (usize, Elem) {
        self.decompose(&self.f.cod().identity())
    }
}

/// The base change 1-cells of a ring map `f: A -> C`, with the explicit dual
/// pairs `(_fC, C_f)` and `(C_f, _fC)` built from a transversal.
#[derive(Clone, Debug)]
pub struct BaseChange {
    f: RingHom,
    transversal: Transversal,
    left: Bimodule,
    right: Bimodule,
    pair: DualPair,
    right_pair: DualPair,
}

/// `_fC`: `C` as an `(A, C)`-bimodule, always right-free of rank one.
pub fn left_base_change(f: &RingHom) -> Bimodule {
    Bimodule::left_twisted(f.group_hom()).with_objects(f.dom().clone(), f.cod().clone()).expect("same groups")
}

/// `C_f` when `C` is right-free over `A`; its `i`-th basis vector is `t_i`.
fn right_base_change(f: &RingHom, tv: &Transversal) -> Result<Bimodule> {
    let (a, c) = (&f.dom().group, &f.cod().group);
    let k = tv.index();
    let imgs: Vec<(Elem, RingMatrix)> = c
        .generators()
        .iter()
        .map(|g| {
            let mut m = RingMatrix::zero(a, k, k);
            for (i, t) in tv.reps().iter().enumerate() {
                let (l, h) = tv.decompose(&c.mul(g, t));
                m.set(l, i, RingElement::from_elem(a, h));
            }
            (g.clone(), m)
        })
        .collect();
    Bimodule::new(f.cod().clone(), f.dom().clone(), k, &imgs)
}

/// The base change 1-cells `_fC` and `C_f` of `f` and the dual pair `(_fC, C_f)`.
///
/// Needs `C` to be right-free over `A` through `f`, with the transversal as basis.
pub fn base_change_pair(f: &RingHom) -> Result<BaseChange> {
    let tv = Transversal::compute(f.group_hom())?;
    let (a, c) = (&f.dom().group, &f.cod().group);
    let left = left_base_change(f);
    let right = right_base_change(f, &tv)?;
    let k = tv.index();

    let (l0, h0) = tv.unit_coset();
    let mut coev = RingMatrix::zero(a, k, 1);
    coev.set(l0, 0, RingElement::from_elem(a, h0));
    let mut eval = RingMatrix::zero(c, 1, k);
    for (i, t) in tv.reps().iter().enumerate() {
        eval.set(0, i, RingElement::from_elem(c, t.clone()));
    }
    let pair = DualPair::new(&left, &right, coev, eval)?;

    let mut coev = RingMatrix::zero(c, k, 1);
    let mut eval = RingMatrix::zero(a, 1, k);
    for (i, t) in tv.reps().iter().enumerate() {
        coev.set(i, 0, RingElement::from_elem(c, c.inv(t)));
        if let Some(h) = tv.preimage(t) {
            eval.set(0, i, RingElement::from_elem(a, h));
        }
    }
    let right_pair = DualPair::new(&right, &left, coev, eval)?;
    if !pair.verify() || !right_pair.verify() {
        return Err(Error::NotDualizable("base change triangle identities fail".into()));
    }
    Ok(BaseChange { f: f.clone(), transversal: tv, left, right, pair, right_pair })
}

impl BaseChange {
    pub fn ring_hom(&self) -> &RingHom {
        &self.f
    }

    pub fn transversal(&self) -> &Transversal {
        &self.transversal
    }

    /// `_fC`
    pub fn left(&self) -> &Bimodule {
        &self.left
    }

    /// `C_f`
    pub fn right(&self) -> &Bimodule {
        &self.right
    }

    /// `(_fC, C_f)`
    pub fn pair(&self) -> &DualPair {
        &self.pair
    }

    /// `(C_f, _fC)`
    pub fn right_pair(&self) -> &DualPair {
        &self.right_pair
    }

    pub fn index(&self) -> usize {
        self.transversal.index()
    }

    pub fn source_group(&self) -> &Group {
        &self.f.dom().group
    }

    pub fn target_group(&self) -> &Group {
        &self.f.cod().group
    }

    pub fn source(&self) -> &RingObject {
        self.f.dom()
    }

    pub fn target(&self) -> &RingObject {
        self.f.cod()
    }
}

use std::sync::Arc;

use crate::algebra::{twisted_conjugacy_classes, Elem, GroupHom, RingElement, RingMatrix};
use crate::bicat::{hcompose, shadow, Bimodule, Label, ShadowElement, ShadowGroup, ShadowMap, TwoCell};
use crate::error::{Error, Result};
use crate::trace::{euler_characteristic, hattori_stallings, trace, trace_eps};

use super::base_change::{base_change_pair, BaseChange};
use super::ringhom::RingHom;

/// Window used when comparing maps out of infinite shadows.
const WINDOW: i64 = 2;

fn unit_shadow(obj: &crate::bicat::RingObject) -> Result<Arc<ShadowGroup>> {
    shadow(&Bimodule::unit(obj))
}

/// `<f>: <U_A> -> <U_C>`, pushing classes forward along `f`.
pub fn restriction(f: &RingHom) -> Result<ShadowMap> {
    let dom = unit_shadow(f.dom())?;
    let cod = unit_shadow(f.cod())?;
    let (d, c, f) = (dom.clone(), cod.clone(), f.clone());
    Ok(ShadowMap::new(dom, cod, move |l| {
        let v: Vec<RingElement> = d.representative_vector(l).iter().map(|x| f.apply(x)).collect();
        c.normalize_vector(&v)
    }))
}

/// `χ(C_f): <U_C> -> <U_A>` as the Hattori-Stallings trace of the induced
/// representation on the transversal.
pub fn transfer(f: &RingHom) -> Result<ShadowMap> {
    let bc = base_change_pair(f)?;
    transfer_of(&bc)
}

pub fn transfer_of(bc: &BaseChange) -> Result<ShadowMap> {
    let m = bc.right();
    let uc = Bimodule::unit(m.source());
    let ua = Bimodule::unit(m.target());
    let id = TwoCell::new(&hcompose(&uc, m)?, &hcompose(m, &ua)?, RingMatrix::identity(m.target_group(), m.rank()))?;
    hattori_stallings(&id, m, &uc, &ua)
}

/// `trf[y] = Σ [f^-1(t_i^-1 y t_i)]` over the cosets fixed by `y`.
pub fn transfer_oracle(bc: &BaseChange) -> Result<ShadowMap> {
    twisted_oracle(bc, &GroupHom::identity(bc.target_group()), &GroupHom::identity(bc.source_group()))
}

/// Which composite of restriction and transfer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompositeOrder {
    /// restrict, then transfer: `<U_A> -> <U_A>`, compared with `χ(_fC ⊙ C_f)`
    ResTrf,
    /// transfer, then restrict: `<U_C> -> <U_C>`, compared with `χ(C_f ⊙ _fC)`
    TrfRes,
}

/// A composite computed three ways.
#[derive(Clone, Debug)]
pub struct CompositeReport {
    pub order: CompositeOrder,
    /// the two shadow maps composed
    pub composite: ShadowMap,
    /// the Euler characteristic of the composite 1-cell
    pub euler: ShadowMap,
    /// element-level formula
    pub oracle: ShadowMap,
    pub agrees: bool,
}

pub fn restriction_transfer_composite(f: &RingHom, order: CompositeOrder) -> Result<CompositeReport> {
    let bc = base_change_pair(f)?;
    composite_of(&bc, order)
}

pub fn composite_of(bc: &BaseChange, order: CompositeOrder) -> Result<CompositeReport> {
    let res = restriction(bc.ring_hom())?;
    let trf = transfer_of(bc)?;
    let tv = bc.transversal().clone();
    let (composite, euler, oracle) = match order {
        CompositeOrder::ResTrf => {
            let w = bc.pair().compose(bc.right_pair())?;
            let dom = res.dom().clone();
            let (d, c, f) = (dom.clone(), dom.clone(), bc.ring_hom().clone());
            let cg = bc.target_group().clone();
            let ag = bc.source_group().clone();
            let oracle = ShadowMap::new(dom.clone(), dom, move |l| {
                let y = f.group_hom().apply(&d.representative_vector(l)[0].as_monomial().unwrap().1);
                let mut acc = Vec::new();
                for t in tv.reps() {
                    let (k, h) = tv.decompose(&cg.mul(&y, t));
                    if tv.reps()[k] == *t {
                        acc.push((h, 1));
                    }
                }
                c.normalize_vector(&[RingElement::from_terms(&ag, acc)])
            });
            (trf.after(&res)?, euler_characteristic(&w)?, oracle)
        }
        CompositeOrder::TrfRes => {
            let w = bc.right_pair().compose(bc.pair())?;
            let dom = trf.dom().clone();
            let (d, c) = (dom.clone(), dom.clone());
            let cg = bc.target_group().clone();
            let oracle = ShadowMap::new(dom.clone(), dom, move |l| {
                let y = d.representative_vector(l)[0].as_monomial().unwrap().1;
                let mut acc = Vec::new();
                for t in tv.reps() {
                    let (k, _) = tv.decompose(&cg.mul(&y, t));
                    if tv.reps()[k] == *t {
                        acc.push((cg.mul(&cg.inv(t), &cg.mul(&y, t)), 1));
                    }
                }
                c.normalize_vector(&[RingElement::from_terms(&cg, acc)])
            });
            (res.after(&trf)?, euler_characteristic(&w)?, oracle)
        }
    };
    let agrees = composite.agrees_with(&euler, WINDOW) && composite.agrees_with(&oracle, WINDOW);
    Ok(CompositeReport { order, composite, euler, oracle, agrees })
}

fn d_group(s: &Arc<ShadowGroup>) -> &crate::algebra::Group {
    s.class_blocks().map(|b| b[0].group()).expect("unit shadow")
}

/// `<A_j>` classes `x ~ h x j(h)^-1` as a shadow group.
fn twisted_unit_classes(j: &GroupHom) -> Result<Arc<ShadowGroup>> {
    Ok(ShadowGroup::of_classes(twisted_conjugacy_classes(j.dom(), j)?))
}

fn check_square(f: &GroupHom, j: &GroupHom, k: &GroupHom) -> Result<()> {
    if j.dom() != f.dom() || j.cod() != f.dom() || k.dom() != f.cod() || k.cod() != f.cod() {
        return Err(Error::ObjectMismatch("twisting maps must be endomorphisms of A and C".into()));
    }
    let a = f.dom();
    let gens: Vec<Elem> = a.generators().to_vec();
    for g in &gens {
        if k.apply(&f.apply(g)) != f.apply(&j.apply(g)) {
            return Err(Error::SquareNotCommuting(format!("k f and f j differ at {}", a.label(g))));
        }
    }
    Ok(())
}

/// The transfer `<C_k> -> <A_j>` of a commuting square `k f = f j`: the trace
/// of `C_k ⊙ C_f => C_f ⊙ A_j` with respect to the dual pair `(C_f, _fC)`.
///
/// Twisted bimodules are modelled as `_{k^-1}C ≅ C_k`, so `j` and `k`
/// must be automorphisms.
pub fn twisted_transfer(f: &RingHom, j: &GroupHom, k: &GroupHom) -> Result<ShadowMap> {
    check_square(f.group_hom(), j, k)?;
    let bc = base_change_pair(f)?;
    twisted_transfer_of(&bc, j, k)
}

/// The canonical 2-cell `_{k^-1}C ⊙ C_f => C_f ⊙ _{j^-1}A`, `t_i ↦ t_l ⊗ j^-1(h)`
/// where `k(t_i) = t_l f(h)`.
pub fn twisted_transfer_cell(bc: &BaseChange, j: &GroupHom, k: &GroupHom) -> Result<(TwoCell, Bimodule, Bimodule)> {
    if !j.is_bijective() || !k.is_bijective() {
        return Err(Error::NotInvertible("twisted transfer needs automorphisms j and k".into()));
    }
    check_square(bc.ring_hom().group_hom(), j, k)?;
    let (ji, ki) = (j.inverse()?, k.inverse()?);
    let q = Bimodule::left_twisted(&ki).with_objects(bc.target().clone(), bc.target().clone())?;
    let p = Bimodule::left_twisted(&ji).with_objects(bc.source().clone(), bc.source().clone())?;
    let m = bc.right();
    let tv = bc.transversal();
    let a = bc.source_group();
    let r = tv.index();
    let mut phi = RingMatrix::zero(a, r, r);
    for (i, t) in tv.reps().iter().enumerate() {
        let (l, h) = tv.decompose(&k.apply(t));
        phi.set(l, i, RingElement::from_elem(a, ji.apply(&h)));
    }
    let cell = TwoCell::new(&hcompose(&q, m)?, &hcompose(m, &p)?, phi)?;
    Ok((cell, q, p))
}

pub fn twisted_transfer_of(bc: &BaseChange, j: &GroupHom, k: &GroupHom) -> Result<ShadowMap> {
    let (cell, q, p) = twisted_transfer_cell(bc, j, k)?;
    let tr = trace(&cell, bc.right_pair(), &q, &p)?;
    let dom = twisted_unit_classes(k)?;
    let cod = twisted_unit_classes(j)?;
    let sq = shadow(&q)?;
    let sp = shadow(&p)?;
    let (d, c, k, j) = (dom.clone(), cod.clone(), k.clone(), j.clone());
    let ki = k.inverse()?;
    Ok(ShadowMap::new(dom, cod, move |l| {
        let y = rep_elem(&d, l);
        let x = sq.normalize_vector(&[RingElement::from_elem(d_group(&d), ki.apply(&y))]);
        let out = tr.apply(&x);
        let mut acc = ShadowElement::zero(&c);
        for (lab, coef) in out.terms() {
            let xr = rep_elem(&sp, lab);
            acc = acc.add(&c.normalize_vector(&[RingElement::from_elem(d_group(&c), j.apply(&xr))]).scale(*coef));
        }
        acc
    }))
}

fn rep_elem(s: &ShadowGroup, l: &Label) -> Elem {
    s.representative_vector(l)[0].as_monomial().expect("class representative").1
}

/// `y ↦ Σ [f^-1(t_i^-1 y k(t_i))]_j` over the `i` with `y k(t_i) ∈ t_i f(A)`.
pub fn twisted_transfer_oracle(f: &RingHom, j: &GroupHom, k: &GroupHom) -> Result<ShadowMap> {
    check_square(f.group_hom(), j, k)?;
    let bc = base_change_pair(f)?;
    twisted_oracle(&bc, k, j)
}

fn twisted_oracle(bc: &BaseChange, k: &GroupHom, j: &GroupHom) -> Result<ShadowMap> {
    let dom = twisted_unit_classes(k)?;
    let cod = twisted_unit_classes(j)?;
    let tv = bc.transversal().clone();
    let cg = bc.target_group().clone();
    let ag = bc.source_group().clone();
    let (d, c, k) = (dom.clone(), cod.clone(), k.clone());
    Ok(ShadowMap::new(dom, cod, move |l| {
        let y = rep_elem(&d, l);
        let mut acc = Vec::new();
        for (i, t) in tv.reps().iter().enumerate() {
            let (m, h) = tv.decompose(&cg.mul(&y, &k.apply(t)));
            if m == i {
                acc.push((h, 1));
            }
        }
        c.normalize_vector(&[RingElement::from_terms(&ag, acc)])
    }))
}

/// The hom-set map `<_fC ⊙ Q ⊙ C_f> -> <Q>`: `e ⊗ e_a ⊗ t_i w ↦ e_a t_i f(w)`.
pub fn forget_restriction(bc: &BaseChange, q: &Bimodule) -> Result<ShadowMap> {
    let fqf = crate::bicat::hcompose_all(&[bc.left(), q, bc.right()])?;
    let dom = shadow(&fqf)?;
    let cod = shadow(q)?;
    let (d, c) = (dom.clone(), cod.clone());
    let tv = bc.transversal().clone();
    let f = bc.ring_hom().clone();
    let cg = bc.target_group().clone();
    let (qr, r) = (q.rank(), tv.index());
    Ok(ShadowMap::new(dom, cod, move |l| {
        let w = d.representative_vector(l);
        let mut v = vec![RingElement::zero(&cg); qr];
        for a in 0..qr {
            for (i, t) in tv.reps().iter().enumerate() {
                let x = f.apply(&w[a * r + i]).left_mul_elem(t);
                v[a] = &v[a] + &x;
            }
        }
        c.normalize_vector(&v)
    }))
}

/// `tr(ε_Q)` for the pair `(_fC, C_f)`, the other side of the square.
pub fn restricted_shadow_trace(bc: &BaseChange, q: &Bimodule) -> Result<ShadowMap> {
    trace_eps(bc.pair(), q)
}

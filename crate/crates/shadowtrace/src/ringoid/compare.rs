use crate::algebra::{group, RingElement, RingMatrix};
use crate::bicat::{hcompose, hcompose_all, shadow, shadow_map, Bimodule, RingObject, ShadowElement, ShadowMap, TwoCell};
use crate::error::{Error, Result};
use crate::trace::{block_repeat, canonical_dual, hattori_stallings, mate, trace, trace_eps, trace_left, DualPair};

use super::shadow::{ringoid_shadow, RingoidShadow, RingoidShadowElement};
use super::skeleton::{free_module_skeleton, RingoidBimodule};

/// `Z`, the ground ring, as an object.
pub fn ground() -> RingObject {
    RingObject::new(&group::trivial())
}

/// `A^p` as a `(Z, A)`-bimodule.
pub fn free_module(a: &RingObject, p: usize) -> Result<Bimodule> {
    Bimodule::new(ground(), a.clone(), p, &[])
}

/// `[e]`, the generator of `<U_Z> = Z`.
fn ground_class() -> Result<ShadowElement> {
    let s = shadow(&Bimodule::unit(&ground()))?;
    let l = s.generators().unwrap().remove(0);
    Ok(ShadowElement::generator(&s, l, 1))
}

/// The class of an endomorphism `f: A^p -> A^p ⊗ Q` computed four ways.
#[derive(Clone, Debug)]
pub struct EndomorphismClass {
    /// inclusion of objects into the ringoid shadow, with its diagonal image in `<Q>`
    pub element: RingoidShadowElement,
    /// the Morita inverse applied to the ringoid class
    pub inverse_image: ShadowElement,
    pub hattori_stallings: ShadowElement,
    pub five_step: ShadowElement,
    /// trace of `ψ ↦ ψ ∘ f` on the dual
    pub dual: ShadowElement,
}

impl EndomorphismClass {
    pub fn agrees(&self) -> bool {
        let t = &self.five_step;
        self.element.image == *t && self.inverse_image == *t && self.hattori_stallings == *t && self.dual == *t
    }
}

/// Class of `f` in the ringoid shadow and its image in `<Q>`, compared with
/// the bicategorical trace of `f` as a 2-cell `U_Z ⊙ A^p => A^p ⊙ Q`.
pub fn class_of_endomorphism(rs: &RingoidShadow, p: usize, f: &RingMatrix) -> Result<EndomorphismClass> {
    let element = rs.element(p, f)?;
    let inverse_image = rs.morita_inverse()?.apply(&element.class);
    let q = rs.bimodule().twist();
    let m = free_module(q.source(), p)?;
    let uz = Bimodule::unit(&ground());
    let cell = TwoCell::new(&hcompose(&uz, &m)?, &hcompose(&m, q)?, f.clone())?;
    let w = canonical_dual(&m)?;
    let e = ground_class()?;
    let five_step = trace(&cell, &w, &uz, q)?.apply(&e);
    let hattori_stallings = crate::trace::hattori_stallings(&cell, &m, &uz, q)?.apply(&e);
    let g = mate(&cell, &w, &uz, q)?;
    let dual = trace_left(&g, &w, &uz, q)?.apply(&e);
    Ok(EndomorphismClass { element, inverse_image, hattori_stallings, five_step, dual })
}

/// The squares relating `tr(f)` for `f: Q ⊙ M => M ⊙ P` to the map of ringoid
/// shadows induced by `- ⊗ M` on skeleta.
#[derive(Clone, Debug)]
pub struct TransportReport {
    /// `section_P ∘ tr(f) = bottom ∘ section_Q` on `<Q>`
    pub one_object: bool,
    /// `inverse_P ∘ bottom = tr(f) ∘ inverse_Q` on `<T_Q>`
    pub ringoid_square: bool,
    /// `tr(f) = tr(f_*)`
    pub dual_square: bool,
    /// `tr(ε_P) ∘ <ψ> = tr(f)` with `ψ: Q => M ⊙ P ⊙ N`
    pub tightened: bool,
}

impl TransportReport {
    pub fn all(&self) -> bool {
        self.one_object && self.ringoid_square && self.dual_square && self.tightened
    }
}

/// `<T_Q> -> <T_P>`: `[x] ↦ [(1_r ⊗ f)(x ⊗ M)]` on each object `r`.
pub fn transport_map(f: &TwoCell, m: &Bimodule, tq: &RingoidShadow, tp: &RingoidShadow) -> Result<ShadowMap> {
    let (f, m, tq2, tp2) = (f.matrix().clone(), m.clone(), tq.clone(), tp.clone());
    let mr = m.rank();
    if !tq.bimodule().over().objects().iter().all(|r| tp.bimodule().over().contains(r * mr)) {
        return Err(Error::IndexOutOfRange("the target skeleton is too small".into()));
    }
    Ok(ShadowMap::new(tq.group().clone(), tp.group().clone(), move |l| {
        let mut acc = ShadowElement::zero(tp2.group());
        for (r, x) in tq2.representative(l) {
            let y = &block_repeat(&f, r) * &m.substitute(&x);
            acc = acc.add(&tp2.normalize(r * mr, &y).expect("shape"));
        }
        acc
    }))
}

/// Checks every square for `f` with skeleta of ranks up to `k` on the source side.
pub fn transport_square(f: &TwoCell, w: &DualPair, q: &Bimodule, p: &Bimodule, k: usize) -> Result<TransportReport> {
    let m = w.m();
    let tr = trace(f, w, q, p)?;
    let rc = free_module_skeleton(m.source(), k)?;
    let rd = free_module_skeleton(m.target(), (k * m.rank()).max(1))?;
    let tq = ringoid_shadow(&rc, &RingoidBimodule::twisted(&rc, q)?)?;
    let tp = ringoid_shadow(&rd, &RingoidBimodule::twisted(&rd, p)?)?;
    let bottom = transport_map(f, m, &tq, &tp)?;

    let one_object = bottom.after(&tq.section()?)?.agrees_with(&tp.section()?.after(&tr)?, 2);
    let ringoid_square = tp.morita_inverse()?.after(&bottom)?.agrees_with(&tr.after(&tq.morita_inverse()?)?, 2);
    let g = mate(f, w, q, p)?;
    let dual_square = trace_left(&g, w, q, p)?.agrees_with(&tr, 2);

    let coev = block_repeat(w.coev().matrix(), q.rank());
    let psi = &w.n().substitute(f.matrix()) * &coev;
    let mpn = hcompose_all(&[m, p, w.n()])?;
    let psi = TwoCell::new(q, &mpn, psi)?;
    let tightened = trace_eps(w, p)?.after(&shadow_map(&psi)?)?.agrees_with(&tr, 2);
    Ok(TransportReport { one_object, ringoid_square, dual_square, tightened })
}

/// The trace of `m ↦ c m` on `M` as a `(Z, D)`-bimodule, and `χ(M)[c]`.
pub fn action_trace(m: &Bimodule, c: &RingElement) -> Result<(ShadowElement, ShadowElement)> {
    let im = Bimodule::new(ground(), m.target().clone(), m.rank(), &[])?;
    let uz = Bimodule::unit(&ground());
    let ud = Bimodule::unit(m.target());
    let cell = TwoCell::new(&hcompose(&uz, &im)?, &hcompose(&im, &ud)?, m.act_ring(c))?;
    let w = canonical_dual(&im)?;
    let lhs = trace(&cell, &w, &uz, &ud)?.apply(&ground_class()?);
    let uc = Bimodule::unit(m.source());
    let id = TwoCell::new(&hcompose(&uc, m)?, &hcompose(m, &ud)?, RingMatrix::identity(m.target_group(), m.rank()))?;
    let chi = hattori_stallings(&id, m, &uc, &ud)?;
    let rhs = chi.apply(&shadow(&uc)?.normalize_vector(std::slice::from_ref(c)));
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::{cyclic, symmetric, trivial};
    use crate::algebra::GroupHom;

    #[test]
    fn integer_examples() {
        let z = RingObject::new(&trivial());
        let r = free_module_skeleton(&z, 3).unwrap();
        let rs = ringoid_shadow(&r, &RingoidBimodule::untwisted(&r)).unwrap();
        assert_eq!(rs.group().describe(), "Z");
        let g = trivial();
        let swap = RingMatrix::from_ints(&g, &[vec![0, 1], vec![1, 0]]);
        assert!(rs.normalize(2, &swap).unwrap().is_zero());
        let c = class_of_endomorphism(&rs, 2, &swap).unwrap();
        assert!(c.agrees());
        assert!(c.five_step.is_zero());
        let id3 = RingMatrix::identity(&g, 3);
        let c = class_of_endomorphism(&rs, 3, &id3).unwrap();
        assert!(c.agrees());
        assert_eq!(c.five_step.named_terms(), vec![("e".to_string(), 3)]);
    }

    #[test]
    fn s3_skeleton_is_morita_equivalent() {
        let s3 = symmetric(3);
        let r = free_module_skeleton(&RingObject::new(&s3), 2).unwrap();
        let rs = ringoid_shadow(&r, &RingoidBimodule::untwisted(&r)).unwrap();
        assert_eq!(rs.group().describe(), "Z^3");
        let a = rs.section().unwrap();
        let b = rs.morita_inverse().unwrap();
        assert!(b.after(&a).unwrap().agrees_with(&ShadowMap::identity(a.dom()), 0));
        assert!(a.after(&b).unwrap().agrees_with(&ShadowMap::identity(b.dom()), 0));
    }

    #[test]
    fn twisted_by_inversion() {
        let z3 = cyclic(3);
        let inv = GroupHom::power_map(&z3, -1).unwrap();
        let q = Bimodule::left_twisted(&inv);
        let r = free_module_skeleton(&RingObject::new(&z3), 2).unwrap();
        let rs = ringoid_shadow(&r, &RingoidBimodule::twisted(&r, &q).unwrap()).unwrap();
        assert_eq!(rs.group().describe(), "Z");
        let a = rs.section().unwrap();
        let b = rs.morita_inverse().unwrap();
        assert!(a.after(&b).unwrap().agrees_with(&ShadowMap::identity(b.dom()), 0));
    }

    #[test]
    fn missing_base_object() {
        let z2 = cyclic(2);
        let r = crate::ringoid::Ringoid::new(&RingObject::new(&z2), vec![0, 2]).unwrap();
        let rs = ringoid_shadow(&r, &RingoidBimodule::untwisted(&r)).unwrap();
        assert!(matches!(rs.morita_inverse(), Err(Error::MissingBaseObject)));
    }

    #[test]
    fn induced_module_square() {
        let s3 = symmetric(3);
        let a3 = crate::algebra::group::alternating(3);
        let inc = GroupHom::all_homs(&a3, &s3).into_iter().find(|h| h.is_injective()).unwrap();
        let m = Bimodule::left_twisted(&inc);
        let w = canonical_dual(&m).unwrap();
        let q = Bimodule::unit(m.source());
        let p = Bimodule::unit(m.target());
        let f = TwoCell::new(&hcompose(&q, &m).unwrap(), &hcompose(&m, &p).unwrap(), RingMatrix::identity(&s3, 1)).unwrap();
        let rep = transport_square(&f, &w, &q, &p, 2).unwrap();
        assert!(rep.all(), "{rep:?}");
    }

    #[test]
    fn action_trace_is_euler_characteristic() {
        let z3 = cyclic(3);
        let s3 = symmetric(3);
        let f = GroupHom::all_homs(&z3, &s3).into_iter().find(|h| h.is_injective()).unwrap();
        let bc = crate::morita::base_change_pair(&crate::morita::RingHom::from_group_hom(&f)).unwrap();
        let a = z3.generators()[0].clone();
        let c = &RingElement::term(&z3, a, 2) + &RingElement::scalar(&z3, -1);
        let t =
            &RingElement::from_elem(&s3, s3.parse_elem("(123)").unwrap()) + &RingElement::from_elem(&s3, s3.parse_elem("(12)").unwrap());
        let (l, r) = action_trace(bc.right(), &t).unwrap();
        assert_eq!(l, r);
        let (l, r) = action_trace(bc.left(), &c).unwrap();
        assert_eq!(l, r);
    }
}

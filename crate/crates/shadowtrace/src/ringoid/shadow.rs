use std::sync::Arc;

use crate::algebra::{Elem, RingElement, RingMatrix};
use crate::bicat::{shadow, Label, ShadowElement, ShadowGroup, ShadowMap};
use crate::error::{Error, Result};

use super::skeleton::{Ringoid, RingoidBimodule};

#[derive(Clone, Debug)]
enum Presentation {
    /// coequalizer of `hom(r, s) ⊗ T(s, r) ⇉ ⊕ T(r, r)` on explicit tokens
    Explicit { offsets: Vec<usize>, order: usize },
    /// twisted-unit twist over an infinite group: presented by `<Q>` itself
    Transported,
}

/// The shadow of a ringoid bimodule with its normal form.
#[derive(Clone, Debug)]
pub struct RingoidShadow {
    bimodule: RingoidBimodule,
    group: Arc<ShadowGroup>,
    base: Arc<ShadowGroup>,
    presentation: Presentation,
}

/// An element of a ringoid shadow, with its image in the base shadow.
#[derive(Clone, Debug, PartialEq)]
pub struct RingoidShadowElement {
    pub rank: usize,
    pub class: ShadowElement,
    pub image: ShadowElement,
}

/// Presents `<T>` for `T = hom(-, - ⊗ Q)` over the objects of `r`.
///
/// Finite base groups get the explicit coequalizer; infinite ones need a
/// twisted-unit twist and are presented by `<Q>`.
pub fn ringoid_shadow(r: &Ringoid, m: &RingoidBimodule) -> Result<RingoidShadow> {
    if m.over() != r {
        return Err(Error::ObjectMismatch("bimodule over a different ringoid".into()));
    }
    let q = m.twist();
    let base = shadow(q)?;
    let g = r.group().clone();
    let Some(order) = g.order() else {
        if q.diagonal_twists().is_some() && q.rank() == 1 {
            return Ok(RingoidShadow { bimodule: m.clone(), group: base.clone(), base, presentation: Presentation::Transported });
        }
        return Err(Error::UnsupportedShadow("ringoid shadows over infinite groups need a twisted unit".into()));
    };
    let qr = q.rank();
    let objs = r.objects();
    let mut offsets = Vec::with_capacity(objs.len());
    let mut ntok = 0;
    for &s in objs {
        offsets.push(ntok);
        ntok += s * qr * s * order;
    }
    let index = |oi: usize, a: usize, b: usize, x: usize| offsets[oi] + (a * objs[oi] + b) * order + x;
    let mut rels = Vec::new();
    for (ri, &rr) in objs.iter().enumerate() {
        for (si, &ss) in objs.iter().enumerate() {
            // α = E_ij g in hom(r, s), X = E_ab h in T(s, r) = (r q) x s
            for i in 0..ss {
                for j in 0..rr {
                    for ge in 0..order {
                        let rho = q.act(&Elem::Fin(ge));
                        for a in 0..rr * qr {
                            for b in 0..ss {
                                for h in 0..order {
                                    let mut rel = Vec::new();
                                    // X α = δ_bi E_aj (h g) in T(r, r)
                                    if b == i {
                                        let hg = g.mul(&Elem::Fin(h), &Elem::Fin(ge)).index();
                                        rel.push((index(ri, a, j, hg), 1));
                                    }
                                    // (α ⊗ Q) X: block (i, j) is ρ_Q(g), hitting row a = j q + w
                                    if a / qr == j {
                                        let w = a % qr;
                                        for u in 0..qr {
                                            if let Some(c) = rho.get_ref(u, w) {
                                                for (y, k) in c.terms() {
                                                    let yh = g.mul(y, &Elem::Fin(h)).index();
                                                    rel.push((index(si, i * qr + u, b, yh), -k));
                                                }
                                            }
                                        }
                                    }
                                    if !rel.is_empty() {
                                        rels.push(rel);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut names = Vec::with_capacity(ntok);
    for (oi, &s) in objs.iter().enumerate() {
        for a in 0..s * qr {
            for b in 0..s {
                for x in 0..order {
                    debug_assert_eq!(names.len(), index(oi, a, b, x));
                    names.push(format!("{s}:{a}{b}:{}", g.label(&Elem::Fin(x))));
                }
            }
        }
    }
    let group = ShadowGroup::from_relations(ntok, &rels, names);
    Ok(RingoidShadow { bimodule: m.clone(), group, base, presentation: Presentation::Explicit { offsets, order } })
}

impl RingoidShadow {
    pub fn group(&self) -> &Arc<ShadowGroup> {
        &self.group
    }

    /// `<Q>`, the shadow of the base ring with the same twist.
    pub fn base(&self) -> &Arc<ShadowGroup> {
        &self.base
    }

    pub fn bimodule(&self) -> &RingoidBimodule {
        &self.bimodule
    }

    fn object_index(&self, r: usize) -> Result<usize> {
        self.bimodule.over().objects().binary_search(&r).map_err(|_| Error::IndexOutOfRange(format!("rank {r} is not an object")))
    }

    fn check_shape(&self, r: usize, x: &RingMatrix) -> Result<()> {
        let (rows, cols) = self.bimodule.shape(r, r)?;
        if x.rows() != rows || x.cols() != cols {
            return Err(Error::ShapeMismatch(format!("expected a {rows}x{cols} matrix, got {}x{}", x.rows(), x.cols())));
        }
        Ok(())
    }

    /// `Σ_i [x_ii]` in `<Q>`, where `x_ii` is the `i`-th diagonal block.
    pub fn diagonal_class(&self, r: usize, x: &RingMatrix) -> Result<ShadowElement> {
        self.check_shape(r, x)?;
        let q = self.bimodule.twist();
        let qr = q.rank();
        let mut v = vec![RingElement::zero(q.target_group()); qr];
        for i in 0..r {
            for (u, vu) in v.iter_mut().enumerate() {
                if let Some(c) = x.get_ref(i * qr + u, i) {
                    *vu = &*vu + c;
                }
            }
        }
        Ok(self.base.normalize_vector(&v))
    }

    /// Class of an element of `T(r, r)`.
    pub fn normalize(&self, r: usize, x: &RingMatrix) -> Result<ShadowElement> {
        self.check_shape(r, x)?;
        match &self.presentation {
            Presentation::Transported => self.diagonal_class(r, x),
            Presentation::Explicit { offsets, order } => {
                let oi = self.object_index(r)?;
                let mut toks = Vec::new();
                for ((a, b), c) in x.entries() {
                    for (g, k) in c.terms() {
                        toks.push((offsets[oi] + (a * r + b) * order + g.index(), *k));
                    }
                }
                Ok(self.group.normalize_tokens(&toks))
            }
        }
    }

    pub fn element(&self, r: usize, x: &RingMatrix) -> Result<RingoidShadowElement> {
        Ok(RingoidShadowElement { rank: r, class: self.normalize(r, x)?, image: self.diagonal_class(r, x)? })
    }

    /// `(rank, matrix)` pieces whose classes sum to a generator.
    pub fn representative(&self, l: &Label) -> Vec<(usize, RingMatrix)> {
        let q = self.bimodule.twist();
        let g = q.target_group().clone();
        match &self.presentation {
            Presentation::Transported => {
                let v = self.group.representative_vector(l);
                vec![(1, RingMatrix::from_rows(&g, v.into_iter().map(|x| vec![x]).collect()))]
            }
            Presentation::Explicit { offsets, order } => {
                let objs = self.bimodule.over().objects();
                let mut pieces: Vec<Option<RingMatrix>> = vec![None; objs.len()];
                for (t, c) in self.group.representative_tokens(l) {
                    // last object starting at or before t; empty rank-0 blocks come first
                    let oi = offsets.partition_point(|o| *o <= t) - 1;
                    let r = objs[oi];
                    let (ab, e) = ((t - offsets[oi]) / order, (t - offsets[oi]) % order);
                    let x = pieces[oi].get_or_insert_with(|| {
                        let (rows, cols) = self.bimodule.shape(r, r).unwrap();
                        RingMatrix::zero(&g, rows, cols)
                    });
                    x.add_to(ab / r, ab % r, &RingElement::term(&g, Elem::Fin(e), c));
                }
                pieces.into_iter().enumerate().filter_map(|(k, x)| x.map(|x| (objs[k], x))).collect()
            }
        }
    }

    /// The inverse of the Morita equivalence: `<T> -> <Q>`, `[x] ↦ Σ_i [x_ii]`.
    pub fn morita_inverse(&self) -> Result<ShadowMap> {
        self.require_base()?;
        let me = self.clone();
        Ok(ShadowMap::new(self.group.clone(), self.base.clone(), move |l| {
            let mut acc = ShadowElement::zero(&me.base);
            for (r, x) in me.representative(l) {
                acc = acc.add(&me.diagonal_class(r, &x).expect("shape"));
            }
            acc
        }))
    }

    /// The map induced by the inclusion of the rank-one object: `<Q> -> <T>`.
    pub fn section(&self) -> Result<ShadowMap> {
        self.require_base()?;
        let me = self.clone();
        let g = self.bimodule.twist().target_group().clone();
        Ok(ShadowMap::new(self.base.clone(), self.group.clone(), move |l| {
            let v = me.base.representative_vector(l);
            let x = RingMatrix::from_rows(&g, v.into_iter().map(|x| vec![x]).collect());
            me.normalize(1, &x).expect("rank one")
        }))
    }

    fn require_base(&self) -> Result<()> {
        if self.bimodule.over().has_base_object() {
            Ok(())
        } else {
            Err(Error::MissingBaseObject)
        }
    }
}

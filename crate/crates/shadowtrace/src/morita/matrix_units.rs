use std::sync::Arc;

use num_traits::Signed;

use crate::algebra::snf::determinant;
use crate::algebra::{Elem, Group, RingElement};
use crate::bicat::{shadow, Bimodule, Label, RingObject, ShadowGroup, ShadowMap};
use crate::error::{Error, Result};

/// `M_n(Z[G])` on the explicit basis `E_ij g`, for finite `G`.
#[derive(Clone, Debug)]
pub struct MatrixUnitModel {
    group: Group,
    n: usize,
    order: usize,
}

impl MatrixUnitModel {
    pub fn new(group: &Group, n: usize) -> Result<MatrixUnitModel> {
        let order = group.order().ok_or_else(|| Error::UnsupportedGroup("matrix units need a finite group".into()))?;
        if n == 0 {
            return Err(Error::DimensionMismatch("matrix size must be positive".into()));
        }
        Ok(MatrixUnitModel { group: group.clone(), n, order })
    }

    fn tok(&self, i: usize, j: usize, g: usize) -> usize {
        (i * self.n + j) * self.order + g
    }

    /// `HH_0(M_n(Z[G]))` from the relations `xy - yx` over all pairs of basis elements.
    pub fn hh0(&self) -> Arc<ShadowGroup> {
        let (n, o, g) = (self.n, self.order, &self.group);
        let mut rels = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        for a in 0..o {
                            for b in 0..o {
                                // E_ij a . E_kl b - E_kl b . E_ij a
                                let mut rel = Vec::new();
                                if j == k {
                                    rel.push((self.tok(i, l, g.mul(&Elem::Fin(a), &Elem::Fin(b)).index()), 1));
                                }
                                if l == i {
                                    rel.push((self.tok(k, j, g.mul(&Elem::Fin(b), &Elem::Fin(a)).index()), -1));
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
        let names = (0..n * n * o)
            .map(|t| {
                let (ij, x) = (t / o, t % o);
                format!("E{}{}:{}", ij / n + 1, ij % n + 1, g.label(&Elem::Fin(x)))
            })
            .collect();
        ShadowGroup::from_relations(n * n * o, &rels, names)
    }

    fn unit_shadow(&self) -> Result<Arc<ShadowGroup>> {
        shadow(&Bimodule::unit(&RingObject::new(&self.group)))
    }

    /// `[E_ij g] ↦ δ_ij [g]`.
    pub fn trace_map(&self, hh: &Arc<ShadowGroup>) -> Result<ShadowMap> {
        let cod = self.unit_shadow()?;
        let (d, c, me) = (hh.clone(), cod.clone(), self.clone());
        Ok(ShadowMap::new(hh.clone(), cod, move |l| {
            let mut x = RingElement::zero(&me.group);
            for (t, k) in d.representative_tokens(l) {
                let (ij, g) = (t / me.order, t % me.order);
                if ij / me.n == ij % me.n {
                    x = &x + &RingElement::term(&me.group, Elem::Fin(g), k);
                }
            }
            c.normalize_vector(&[x])
        }))
    }

    /// `[g] ↦ [E_11 g]`.
    pub fn corner_map(&self, hh: &Arc<ShadowGroup>) -> Result<ShadowMap> {
        let dom = self.unit_shadow()?;
        let (d, c) = (dom.clone(), hh.clone());
        Ok(ShadowMap::new(dom, hh.clone(), move |l: &Label| {
            let v = d.representative_vector(l);
            let toks: Vec<(usize, i64)> = v[0].terms().iter().map(|(g, k)| (g.index(), *k)).collect();
            c.normalize_tokens(&toks)
        }))
    }

    /// Checks that `row ⊗_{M_n} column ≅ Z[G]` through `g e_i ⊗ h e_j ↦ δ_ij gh`,
    /// with both sides computed as abelian groups.
    pub fn row_column_tensor_is_unit(&self) -> bool {
        let (n, o, g) = (self.n, self.order, &self.group);
        let tok = |i: usize, a: usize, j: usize, b: usize| ((i * o + a) * n + j) * o + b;
        let mut rels = Vec::new();
        for i in 0..n {
            for x in 0..o {
                for k in 0..n {
                    for l in 0..n {
                        for a in 0..o {
                            for j in 0..n {
                                for y in 0..o {
                                    // (x e_i) E_kl a ⊗ y e_j - x e_i ⊗ E_kl a (y e_j)
                                    let mut rel = Vec::new();
                                    if i == k {
                                        rel.push((tok(l, g.mul(&Elem::Fin(x), &Elem::Fin(a)).index(), j, y), 1));
                                    }
                                    if l == j {
                                        rel.push((tok(i, x, k, g.mul(&Elem::Fin(a), &Elem::Fin(y)).index()), -1));
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
        let ntok = n * o * n * o;
        let names = (0..ntok).map(|t| t.to_string()).collect();
        let tensor = ShadowGroup::from_relations(ntok, &rels, names);
        let (free, tors) = tensor.structure();
        if free != Some(o) || !tors.is_empty() {
            return false;
        }
        let image = |t: usize| -> Option<usize> {
            let (b, rest) = (t % o, t / o);
            let (j, rest) = (rest % n, rest / n);
            let (a, i) = (rest % o, rest / o);
            (i == j).then(|| g.mul(&Elem::Fin(a), &Elem::Fin(b)).index())
        };
        // the map kills every relation
        for rel in &rels {
            let mut v = vec![0i64; o];
            for &(t, c) in rel {
                if let Some(x) = image(t) {
                    v[x] += c;
                }
            }
            if v.iter().any(|c| *c != 0) {
                return false;
            }
        }
        let gens = tensor.generators().unwrap();
        let mut m = vec![vec![0i64; gens.len()]; o];
        for (col, l) in gens.iter().enumerate() {
            for (t, c) in tensor.representative_tokens(l) {
                if let Some(x) = image(t) {
                    m[x][col] += c;
                }
            }
        }
        determinant(&m).abs() == num_bigint::BigInt::from(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::{cyclic, symmetric, trivial};

    #[test]
    fn s3_rank_three() {
        let s3 = symmetric(3);
        for n in 1..=3 {
            let m = MatrixUnitModel::new(&s3, n).unwrap();
            let hh = m.hh0();
            assert_eq!(hh.describe(), "Z^3");
            let tr = m.trace_map(&hh).unwrap();
            let inc = m.corner_map(&hh).unwrap();
            assert!(tr.after(&inc).unwrap().agrees_with(&ShadowMap::identity(inc.dom()), 0));
            assert!(inc.after(&tr).unwrap().agrees_with(&ShadowMap::identity(&hh), 0));
        }
    }

    #[test]
    fn integers_and_tensor() {
        let m = MatrixUnitModel::new(&trivial(), 2).unwrap();
        assert_eq!(m.hh0().describe(), "Z");
        assert!(m.row_column_tensor_is_unit());
        assert!(MatrixUnitModel::new(&cyclic(2), 3).unwrap().row_column_tensor_is_unit());
    }
}

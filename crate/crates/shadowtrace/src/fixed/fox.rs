use std::collections::BTreeMap;

use crate::algebra::{Elem, Group, GroupHom, RingElement, Word};

/// `∂w/∂x` in the integral group ring of the free group, as word coefficients.
///
/// Left derivative: `∂(uv)/∂x = ∂u/∂x + u ∂v/∂x`.
pub fn fox_free(w: &Word, x: usize) -> BTreeMap<Word, i64> {
    let mut out = BTreeMap::new();
    let mut prefix = Word::empty();
    for &(g, e) in w.letters() {
        let next = prefix.mul(&Word::from_letters([(g, e)]));
        if g == x {
            let (term, c) = if e == 1 { (prefix.clone(), 1) } else { (next.clone(), -1) };
            let v = out.entry(term).or_insert(0);
            *v += c;
        }
        prefix = next;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `∂w/∂x` pushed into `Z[G]` along `proj`, which sends generator `i` to `proj[i]`.
pub fn fox_derivative_images(w: &Word, x: usize, g: &Group, images: &[Elem]) -> RingElement {
    let mut terms = Vec::new();
    let mut prefix = g.identity();
    for &(y, e) in w.letters() {
        let img = if e == 1 { images[y].clone() } else { g.inv(&images[y]) };
        let next = g.mul(&prefix, &img);
        if y == x {
            if e == 1 {
                terms.push((prefix.clone(), 1));
            } else {
                terms.push((next.clone(), -1));
            }
        }
        prefix = next;
    }
    RingElement::from_terms(g, terms)
}

/// `∂w/∂x` pushed forward along a homomorphism out of a presented group.
pub fn fox_derivative(w: &Word, x: usize, proj: &GroupHom) -> RingElement {
    let n = proj.dom().presentation().map(|(g, _)| g.len()).unwrap_or(0);
    let images: Vec<Elem> = (0..n).map(|i| proj.apply_word(&Word::generator(i))).collect();
    fox_derivative_images(w, x, proj.cod(), &images)
}

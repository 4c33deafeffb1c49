use std::fmt;

use crate::algebra::{group, Elem, Group, GroupHom, RingElement, RingMatrix};
use crate::bicat::RingObject;
use crate::error::{Error, Result};

/// A ring map `Z[A] -> Z[C]` induced by a group homomorphism, applied
/// entrywise when the objects are matrix rings.
#[derive(Clone, PartialEq, Eq)]
pub struct RingHom {
    dom: RingObject,
    cod: RingObject,
    hom: GroupHom,
}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingHom[{} -> {}: {:?}]", self.dom, self.cod, self.hom)
    }
}

impl RingHom {
    /// From the images of the generators of `dom`'s group. Each image must be
    /// group-like, i.e. a single group element with coefficient one.
    pub fn new(dom: &RingObject, cod: &RingObject, images: &[(Elem, RingElement)]) -> Result<RingHom> {
        if dom.degree != cod.degree {
            return Err(Error::ObjectMismatch("ring maps between matrix rings of different sizes".into()));
        }
        let mut imgs = Vec::with_capacity(images.len());
        for (g, x) in images {
            match x.as_monomial() {
                Some((1, h)) if x.group() == &cod.group => imgs.push((g.clone(), h)),
                _ => return Err(Error::NotAHomomorphism(format!("the image of {} is not a group element", dom.group.label(g)))),
            }
        }
        let hom = GroupHom::from_generator_images(&dom.group, &cod.group, &imgs)?;
        Ok(RingHom { dom: dom.clone(), cod: cod.clone(), hom })
    }

    pub fn from_group_hom(f: &GroupHom) -> RingHom {
        RingHom { dom: RingObject::new(f.dom()), cod: RingObject::new(f.cod()), hom: f.clone() }
    }

    pub fn identity(obj: &RingObject) -> RingHom {
        RingHom { dom: obj.clone(), cod: obj.clone(), hom: GroupHom::identity(&obj.group) }
    }

    /// `Z[G] -> Z`.
    pub fn augmentation(g: &Group) -> RingHom {
        RingHom::from_group_hom(&GroupHom::trivial(g, &group::trivial()))
    }

    pub fn dom(&self) -> &RingObject {
        &self.dom
    }

    pub fn cod(&self) -> &RingObject {
        &self.cod
    }

    pub fn group_hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn apply(&self, x: &RingElement) -> RingElement {
        x.map_hom(&self.hom)
    }

    pub fn apply_matrix(&self, x: &RingMatrix) -> RingMatrix {
        x.map_hom(&self.hom)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RingHom) -> Result<RingHom> {
        if other.cod != self.dom {
            return Err(Error::ObjectMismatch("composing ring maps through different rings".into()));
        }
        Ok(RingHom { dom: other.dom.clone(), cod: self.cod.clone(), hom: self.hom.compose(&other.hom)? })
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.hom.is_identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::cyclic;

    #[test]
    fn images_must_be_group_like() {
        let z4 = cyclic(4);
        let z2 = cyclic(2);
        let (a, b) = (RingObject::new(&z4), RingObject::new(&z2));
        let g = z4.generators()[0].clone();
        let x = z2.generators()[0].clone();
        assert!(RingHom::new(&a, &b, &[(g.clone(), RingElement::from_elem(&z2, x.clone()))]).is_ok());
        let two = RingElement::term(&z2, x, 2);
        assert!(matches!(RingHom::new(&a, &b, &[(g, two)]), Err(Error::NotAHomomorphism(_))));
    }

    #[test]
    fn augmentation_kills_the_group() {
        let z3 = cyclic(3);
        let f = RingHom::augmentation(&z3);
        let x = RingElement::from_terms(&z3, z3.elements().into_iter().map(|g| (g, 2)));
        assert_eq!(f.apply(&x), RingElement::scalar(&f.cod().group, 6));
    }
}

use std::collections::VecDeque;
use std::fmt;

use super::group::{Elem, Group, GroupModel};
use super::snf::{smith_normal_form, IntMatrix};
use super::word::Word;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
enum HomData {
    /// image of every element, by index (finite domain)
    Table(Vec<Elem>),
    /// images of the standard basis (free abelian domain)
    Basis(Vec<Elem>),
    /// images of the presentation generators
    Words(Vec<Elem>),
}

/// A group homomorphism between computable groups.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    dom: Group,
    cod: Group,
    data: HomData,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> =
            self.generator_images().iter().map(|(g, h)| format!("{}->{}", self.dom.label(g), self.cod.label(h))).collect();
        write!(f, "Hom[{} -> {}: {}]", self.dom.name(), self.cod.name(), imgs.join(", "))
    }
}

impl GroupHom {
    pub fn dom(&self) -> &Group {
        &self.dom
    }

    pub fn cod(&self) -> &Group {
        &self.cod
    }

    pub fn identity(g: &Group) -> GroupHom {
        match g.model() {
            GroupModel::FiniteTable { .. } => GroupHom { dom: g.clone(), cod: g.clone(), data: HomData::Table(g.elements()) },
            GroupModel::FreeAbelian { .. } => GroupHom { dom: g.clone(), cod: g.clone(), data: HomData::Basis(g.generators().to_vec()) },
            GroupModel::Presented { .. } => panic!("identity on a presented group has no model"),
        }
    }

    /// The homomorphism sending everything to the identity.
    pub fn trivial(dom: &Group, cod: &Group) -> GroupHom {
        let e = cod.identity();
        let data = match dom.model() {
            GroupModel::FiniteTable { labels, .. } => HomData::Table(vec![e; labels.len()]),
            GroupModel::FreeAbelian { rank } => HomData::Basis(vec![e; *rank]),
            GroupModel::Presented { generators, .. } => HomData::Words(vec![e; generators.len()]),
        };
        GroupHom { dom: dom.clone(), cod: cod.clone(), data }
    }

    /// Extends images of a generating set of `dom` to a homomorphism, checking the
    /// homomorphism property exhaustively for finite domains.
    pub fn from_generator_images(dom: &Group, cod: &Group, images: &[(Elem, Elem)]) -> Result<GroupHom> {
        for (g, h) in images {
            if !dom.contains(g) || !cod.contains(h) {
                return Err(Error::UnknownElement("generator image outside its group".into()));
            }
        }
        match dom.model() {
            GroupModel::FiniteTable { labels, .. } => {
                let n = labels.len();
                let mut map: Vec<Option<Elem>> = vec![None; n];
                map[0] = Some(cod.identity());
                let mut queue = VecDeque::from([0usize]);
                while let Some(x) = queue.pop_front() {
                    let fx = map[x].clone().unwrap();
                    for (g, h) in images {
                        let y = dom.mul(&Elem::Fin(x), g).index();
                        let fy = cod.mul(&fx, h);
                        match &map[y] {
                            Some(old) if *old != fy => {
                                return Err(Error::NotAHomomorphism(format!("images are inconsistent at {}", dom.label(&Elem::Fin(y)))))
                            }
                            Some(_) => {}
                            None => {
                                map[y] = Some(fy);
                                queue.push_back(y);
                            }
                        }
                    }
                }
                if map.iter().any(|m| m.is_none()) {
                    return Err(Error::NotAHomomorphism("given elements do not generate the domain".into()));
                }
                let table: Vec<Elem> = map.into_iter().map(|m| m.unwrap()).collect();
                let hom = GroupHom { dom: dom.clone(), cod: cod.clone(), data: HomData::Table(table) };
                hom.check_exhaustive()?;
                Ok(hom)
            }
            GroupModel::FreeAbelian { rank } => {
                let mut basis: Vec<Option<Elem>> = vec![None; *rank];
                for (g, h) in images {
                    let v = g.coords();
                    let nz: Vec<usize> = (0..*rank).filter(|&i| v[i] != 0).collect();
                    if nz.len() != 1 || v[nz[0]] != 1 {
                        return Err(Error::NotAHomomorphism("lattice homomorphisms are given on the standard basis".into()));
                    }
                    basis[nz[0]] = Some(h.clone());
                }
                if basis.iter().any(|b| b.is_none()) {
                    return Err(Error::NotAHomomorphism("missing basis image".into()));
                }
                GroupHom::from_basis_images(dom, cod, basis.into_iter().map(|b| b.unwrap()).collect())
            }
            GroupModel::Presented { .. } => Err(Error::UnsupportedGroup("use from_presentation for presented domains".into())),
        }
    }

    /// Lattice domain: images of the standard basis, which must commute.
    pub fn from_basis_images(dom: &Group, cod: &Group, images: Vec<Elem>) -> Result<GroupHom> {
        if !dom.is_free_abelian() || images.len() != dom.rank() {
            return Err(Error::NotAHomomorphism("basis images need a lattice domain of matching rank".into()));
        }
        for (i, a) in images.iter().enumerate() {
            if !cod.contains(a) {
                return Err(Error::UnknownElement("basis image outside the codomain".into()));
            }
            for b in &images[i + 1..] {
                if cod.mul(a, b) != cod.mul(b, a) {
                    return Err(Error::NotAHomomorphism("basis images do not commute".into()));
                }
            }
        }
        Ok(GroupHom { dom: dom.clone(), cod: cod.clone(), data: HomData::Basis(images) })
    }

    /// `Z^n -> Z^m` given by an `m x n` integer matrix acting on columns.
    pub fn from_matrix(dom: &Group, cod: &Group, f: &IntMatrix) -> Result<GroupHom> {
        if !dom.is_free_abelian() || !cod.is_free_abelian() {
            return Err(Error::UnsupportedGroup("matrix homomorphisms need lattices".into()));
        }
        let (n, m) = (dom.rank(), cod.rank());
        if f.len() != m || f.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("expected a {m}x{n} matrix")));
        }
        let images = (0..n).map(|j| Elem::Lat((0..m).map(|i| f[i][j]).collect())).collect();
        GroupHom::from_basis_images(dom, cod, images)
    }

    /// Presented domain: images of the generators; relators must map to the identity.
    pub fn from_presentation(dom: &Group, cod: &Group, images: Vec<Elem>) -> Result<GroupHom> {
        let (gens, rels) = dom.presentation().ok_or_else(|| Error::UnsupportedGroup("domain is not presented".into()))?;
        if images.len() != gens.len() {
            return Err(Error::DimensionMismatch("one image per generator".into()));
        }
        let hom = GroupHom { dom: dom.clone(), cod: cod.clone(), data: HomData::Words(images) };
        for r in rels {
            if !cod.is_identity(&hom.apply_word(r)) {
                return Err(Error::BoundaryNotZero(format!("relator {} does not die in {}", r.display_with(gens), cod.name())));
            }
        }
        Ok(hom)
    }

    /// `x -> x^k` on an abelian group.
    pub fn power_map(g: &Group, k: i64) -> Result<GroupHom> {
        if !g.is_abelian() {
            return Err(Error::NotAHomomorphism("power maps need an abelian group".into()));
        }
        let imgs: Vec<(Elem, Elem)> = g.generators().iter().map(|x| (x.clone(), g.pow(x, k))).collect();
        if g.order() == Some(1) {
            return Ok(GroupHom::identity(g));
        }
        GroupHom::from_generator_images(g, g, &imgs)
    }

    fn check_exhaustive(&self) -> Result<()> {
        if let HomData::Table(t) = &self.data {
            let n = t.len();
            for a in 0..n {
                for b in 0..n {
                    let ab = self.dom.mul(&Elem::Fin(a), &Elem::Fin(b)).index();
                    if t[ab] != self.cod.mul(&t[a], &t[b]) {
                        return Err(Error::NotAHomomorphism(format!(
                            "f({}*{}) differs from f({})f({})",
                            self.dom.label(&Elem::Fin(a)),
                            self.dom.label(&Elem::Fin(b)),
                            self.dom.label(&Elem::Fin(a)),
                            self.dom.label(&Elem::Fin(b))
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        match &self.data {
            HomData::Table(t) => t[x.index()].clone(),
            HomData::Basis(b) => {
                let mut out = self.cod.identity();
                for (img, &k) in b.iter().zip(x.coords()) {
                    if k != 0 {
                        out = self.cod.mul(&out, &self.cod.pow(img, k));
                    }
                }
                out
            }
            HomData::Words(_) => panic!("apply a presented-domain homomorphism to words"),
        }
    }

    pub fn apply_word(&self, w: &Word) -> Elem {
        let imgs = match &self.data {
            HomData::Words(i) => i,
            _ => panic!("word images need a presented domain"),
        };
        let mut out = self.cod.identity();
        for &(g, e) in w.letters() {
            let x = if e > 0 { imgs[g].clone() } else { self.cod.inv(&imgs[g]) };
            out = self.cod.mul(&out, &x);
        }
        out
    }

    /// Pairs (generator, image) over the canonical generating set of the domain.
    pub fn generator_images(&self) -> Vec<(Elem, Elem)> {
        match &self.data {
            HomData::Words(imgs) => imgs.iter().enumerate().map(|(i, x)| (Elem::Fin(i), x.clone())).collect(),
            _ => self.dom.generators().iter().map(|g| (g.clone(), self.apply(g))).collect(),
        }
    }

    /// Integer matrix of a lattice homomorphism, columns are basis images.
    pub fn matrix(&self) -> Option<IntMatrix> {
        match &self.data {
            HomData::Basis(b) if self.cod.is_free_abelian() => {
                let m = self.cod.rank();
                Some((0..m).map(|i| b.iter().map(|v| v.coords()[i]).collect()).collect())
            }
            _ => None,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupHom) -> Result<GroupHom> {
        if other.cod != self.dom {
            return Err(Error::ObjectMismatch("composition of homomorphisms".into()));
        }
        let data = match &other.data {
            HomData::Table(t) => HomData::Table(t.iter().map(|x| self.apply(x)).collect()),
            HomData::Basis(b) => HomData::Basis(b.iter().map(|x| self.apply(x)).collect()),
            HomData::Words(w) => HomData::Words(w.iter().map(|x| self.apply(x)).collect()),
        };
        Ok(GroupHom { dom: other.dom.clone(), cod: self.cod.clone(), data })
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.generator_images().iter().all(|(g, h)| g == h)
    }

    pub fn is_injective(&self) -> bool {
        match &self.data {
            HomData::Table(t) => {
                let mut seen: Vec<&Elem> = t.iter().collect();
                seen.sort();
                seen.dedup();
                seen.len() == t.len()
            }
            HomData::Basis(_) => match self.matrix() {
                Some(f) => {
                    let snf = smith_normal_form(&f);
                    snf.diagonal_i64().iter().filter(|d| **d != 0).count() == self.dom.rank()
                }
                None => false,
            },
            HomData::Words(_) => false,
        }
    }

    pub fn is_bijective(&self) -> bool {
        match &self.data {
            HomData::Table(_) => self.is_injective() && self.dom.order() == self.cod.order(),
            HomData::Basis(_) => match self.matrix() {
                Some(f) => {
                    self.dom.rank() == self.cod.rank() && {
                        let snf = smith_normal_form(&f);
                        snf.diagonal_i64().iter().all(|d| *d == 1)
                    }
                }
                None => false,
            },
            HomData::Words(_) => false,
        }
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Result<GroupHom> {
        if !self.is_bijective() {
            return Err(Error::NotInvertible(format!("{self:?}")));
        }
        match &self.data {
            HomData::Table(t) => {
                let mut inv = vec![Elem::Fin(0); t.len()];
                for (i, x) in t.iter().enumerate() {
                    inv[x.index()] = Elem::Fin(i);
                }
                Ok(GroupHom { dom: self.cod.clone(), cod: self.dom.clone(), data: HomData::Table(inv) })
            }
            HomData::Basis(_) => {
                let f = self.matrix().unwrap();
                let snf = smith_normal_form(&f);
                // U F V = I, so F^-1 = V U
                let v = snf.v_i64();
                let u = snf.u_i64();
                let inv = super::snf::int_mul(&v, &u);
                GroupHom::from_matrix(&self.cod, &self.dom, &inv)
            }
            HomData::Words(_) => Err(Error::NotInvertible("presented domain".into())),
        }
    }

    /// Every homomorphism between two finite groups, in lexicographic order of
    /// generator images.
    pub fn all_homs(dom: &Group, cod: &Group) -> Vec<GroupHom> {
        let gens = dom.generators().to_vec();
        let targets = cod.elements();
        let mut out = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        if gens.is_empty() {
            return vec![GroupHom::trivial(dom, cod)];
        }
        loop {
            let imgs: Vec<(Elem, Elem)> = gens.iter().zip(&choice).map(|(g, &c)| (g.clone(), targets[c].clone())).collect();
            if let Ok(h) = GroupHom::from_generator_images(dom, cod, &imgs) {
                out.push(h);
            }
            let mut k = gens.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < targets.len() {
                    break;
                }
                choice[k] = 0;
            }
        }
    }

    pub fn endomorphisms(g: &Group) -> Vec<GroupHom> {
        GroupHom::all_homs(g, g)
    }

    pub fn automorphisms(g: &Group) -> Vec<GroupHom> {
        GroupHom::endomorphisms(g).into_iter().filter(|h| h.is_bijective()).collect()
    }

    /// Conjugation `x -> a x a^-1`.
    pub fn inner(g: &Group, a: &Elem) -> GroupHom {
        let imgs: Vec<(Elem, Elem)> = g.generators().iter().map(|x| (x.clone(), g.conj(a, x))).collect();
        if imgs.is_empty() {
            return GroupHom::identity(g);
        }
        GroupHom::from_generator_images(g, g, &imgs).expect("conjugation is a homomorphism")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::{alternating, cyclic, symmetric};

    #[test]
    fn inclusion_a3_s3() {
        let (a3, s3) = (alternating(3), symmetric(3));
        let c = s3.parse_elem("(123)").unwrap();
        let f = GroupHom::from_generator_images(&a3, &s3, &[(a3.parse_elem("(123)").unwrap(), c.clone())]).unwrap();
        assert!(f.is_injective());
        assert!(!f.is_bijective());
        assert_eq!(f.apply(&a3.parse_elem("(132)").unwrap()), s3.parse_elem("(132)").unwrap());
    }

    #[test]
    fn rejects_non_hom() {
        let z4 = cyclic(4);
        let z2 = cyclic(2);
        let a = z4.parse_elem("a").unwrap();
        // a -> a in Z/2 is fine, Z/2 -> Z/4 sending a to a is not
        assert!(GroupHom::from_generator_images(&z4, &z2, &[(a.clone(), z2.parse_elem("a").unwrap())]).is_ok());
        assert!(GroupHom::from_generator_images(&z2, &z4, &[(z2.parse_elem("a").unwrap(), a)]).is_err());
    }

    #[test]
    fn endomorphism_counts() {
        assert_eq!(GroupHom::endomorphisms(&cyclic(6)).len(), 6);
        // S3: trivial, 3 onto order-2 subgroups, 6 automorphisms
        assert_eq!(GroupHom::endomorphisms(&symmetric(3)).len(), 10);
        assert_eq!(GroupHom::automorphisms(&symmetric(3)).len(), 6);
    }

    #[test]
    fn lattice_inverse() {
        let z2 = Group::free_abelian(2);
        let f = GroupHom::from_matrix(&z2, &z2, &vec![vec![2, 1], vec![1, 1]]).unwrap();
        let g = f.inverse().unwrap();
        assert!(g.compose(&f).unwrap().is_identity());
        assert!(f.compose(&g).unwrap().is_identity());
    }
}

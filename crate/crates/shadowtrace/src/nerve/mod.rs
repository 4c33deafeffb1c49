//! The twisted cyclic nerve of a finite group.
//!
//! Level `n` is `G^(n+1)`, written `(ω_0, ..., ω_{n-1}, ω)`. Faces are
//! numbered so that `d_n` rotates `ω_0` through the twist and `d_0`
//! multiplies `ω_{n-1}` into `ω`; the middle faces multiply neighbours.

use crate::algebra::{twisted_conjugacy_classes, ClassLabel, Elem, Group, GroupHom, TwistedClassSet};
use crate::error::{Error, Result};

/// A point of `N^cy_n(G, G_f)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NerveTuple {
    entries: Vec<Elem>,
}

impl NerveTuple {
    /// `(ω_0, ..., ω_{n-1}, ω)`; needs at least one entry.
    pub fn new(entries: Vec<Elem>) -> Result<NerveTuple> {
        if entries.is_empty() {
            return Err(Error::DimensionMismatch("a nerve tuple has the loop entry at least".into()));
        }
        Ok(NerveTuple { entries })
    }

    pub fn level(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    /// `ω`
    pub fn loop_entry(&self) -> &Elem {
        self.entries.last().unwrap()
    }
}

/// `N^cy(G, G_f)` with an optional second endomorphism `g` entering `d_0`.
#[derive(Clone, Debug)]
pub struct TwistedCyclicNerve {
    group: Group,
    f: GroupHom,
    g: GroupHom,
}

impl TwistedCyclicNerve {
    pub fn new(f: &GroupHom) -> Result<TwistedCyclicNerve> {
        TwistedCyclicNerve::with_two_maps(f, &GroupHom::identity(f.dom()))
    }

    pub fn with_two_maps(f: &GroupHom, g: &GroupHom) -> Result<TwistedCyclicNerve> {
        let group = f.dom().clone();
        if group.order().is_none() {
            return Err(Error::UnsupportedGroup("the cyclic nerve is enumerated for finite groups".into()));
        }
        for h in [f, g] {
            if *h.dom() != group || *h.cod() != group {
                return Err(Error::NotAHomomorphism("twists must be endomorphisms".into()));
            }
        }
        Ok(TwistedCyclicNerve { group, f: f.clone(), g: g.clone() })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn twist(&self) -> &GroupHom {
        &self.f
    }

    fn check(&self, t: &NerveTuple) -> Result<()> {
        let n = self.group.order().unwrap();
        if t.entries.iter().any(|e| !matches!(e, Elem::Fin(i) if *i < n)) {
            return Err(Error::UnknownElement("nerve entry outside the group".into()));
        }
        Ok(())
    }

    /// `d_i`, `0 ≤ i ≤ n`.
    pub fn face(&self, i: usize, t: &NerveTuple) -> Result<NerveTuple> {
        self.check(t)?;
        let n = t.level();
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange(format!("face d_{i} at level {n}")));
        }
        let g = &self.group;
        let w = &t.entries;
        let mut out = Vec::with_capacity(n);
        if i == n {
            out.extend_from_slice(&w[1..n]);
            out.push(g.mul(&w[n], &self.f.apply(&w[0])));
        } else if i == 0 {
            out.extend_from_slice(&w[..n - 1]);
            out.push(g.mul(&self.g.apply(&w[n - 1]), &w[n]));
        } else {
            let k = n - 1 - i;
            out.extend_from_slice(&w[..k]);
            out.push(g.mul(&w[k], &w[k + 1]));
            out.extend_from_slice(&w[k + 2..]);
        }
        Ok(NerveTuple { entries: out })
    }

    /// The faces with the long numbering `0..=n+1`: `i < n` multiplies
    /// `ω_i ω_{i+1}` (with `ω_n = ω`), `i = n` multiplies `ω_{n-1}` into `ω`,
    /// `i = n + 1` rotates.
    pub fn long_face(&self, i: usize, t: &NerveTuple) -> Result<NerveTuple> {
        let n = t.level();
        if n == 0 || i > n + 1 {
            return Err(Error::IndexOutOfRange(format!("long face {i} at level {n}")));
        }
        match i {
            _ if i == n + 1 => self.face(n, t),
            _ if i >= n - 1 => self.face(0, t),
            _ => self.face(n - 1 - i, t),
        }
    }

    /// `s_j`, `0 ≤ j ≤ n`: a trivial path inserted at position `n - j`.
    pub fn degeneracy(&self, j: usize, t: &NerveTuple) -> Result<NerveTuple> {
        self.check(t)?;
        let n = t.level();
        if j > n {
            return Err(Error::IndexOutOfRange(format!("degeneracy s_{j} at level {n}")));
        }
        let mut out = t.entries.clone();
        out.insert(n - j, self.group.identity());
        Ok(NerveTuple { entries: out })
    }

    /// All of `G^(n+1)` in lexicographic order of indices.
    pub fn level(&self, n: usize) -> Vec<NerveTuple> {
        let order = self.group.order().unwrap();
        let total = order.pow(n as u32 + 1);
        (0..total)
            .map(|mut k| {
                let mut e = vec![Elem::Fin(0); n + 1];
                for slot in e.iter_mut().rev() {
                    *slot = Elem::Fin(k % order);
                    k /= order;
                }
                NerveTuple { entries: e }
            })
            .collect()
    }

    /// Checks every simplicial identity on every tuple of levels `0..=max_level`.
    pub fn check_identities(&self, max_level: usize) -> IdentityReport {
        let mut rep = IdentityReport::default();
        let note = |ok: bool, what: &str, rep: &mut IdentityReport| {
            rep.checked += 1;
            if !ok && rep.failures.len() < 10 {
                rep.failures.push(what.to_string());
            }
        };
        for n in 0..=max_level {
            for t in self.level(n) {
                if n >= 2 {
                    for j in 1..=n {
                        for i in 0..j {
                            let a = self.face(i, &self.face(j, &t).unwrap()).unwrap();
                            let b = self.face(j - 1, &self.face(i, &t).unwrap()).unwrap();
                            note(a == b, &format!("d{i} d{j} at level {n}"), &mut rep);
                        }
                    }
                }
                for j in 0..=n {
                    let s = self.degeneracy(j, &t).unwrap();
                    for i in 0..=n + 1 {
                        let a = self.face(i, &s).unwrap();
                        let b = if i < j {
                            self.degeneracy(j - 1, &self.face(i, &t).unwrap()).unwrap()
                        } else if i == j || i == j + 1 {
                            t.clone()
                        } else {
                            self.degeneracy(j, &self.face(i - 1, &t).unwrap()).unwrap()
                        };
                        note(a == b, &format!("d{i} s{j} at level {n}"), &mut rep);
                    }
                    for i in 0..=j {
                        let a = self.degeneracy(i, &self.degeneracy(j, &t).unwrap()).unwrap();
                        let b = self.degeneracy(j + 1, &self.degeneracy(i, &t).unwrap()).unwrap();
                        note(a == b, &format!("s{i} s{j} at level {n}"), &mut rep);
                    }
                }
            }
        }
        rep
    }

    /// Components of `d_0, d_1: G^2 ⇉ G`.
    pub fn pi0(&self) -> Pi0 {
        let order = self.group.order().unwrap();
        let mut parent: Vec<usize> = (0..order).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for t in self.level(1) {
            let a = find(&mut parent, self.face(0, &t).unwrap().entries[0].index());
            let b = find(&mut parent, self.face(1, &t).unwrap().entries[0].index());
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
            }
        }
        let mut roots: Vec<usize> = Vec::new();
        let mut component_of = vec![0; order];
        for x in 0..order {
            let r = find(&mut parent, x);
            let k = match roots.iter().position(|y| *y == r) {
                Some(k) => k,
                None => {
                    roots.push(r);
                    roots.len() - 1
                }
            };
            component_of[x] = k;
        }
        let mut components = vec![Vec::new(); roots.len()];
        for (x, k) in component_of.iter().enumerate() {
            components[*k].push(Elem::Fin(x));
        }
        let classes = TwistedClassSet::new(&self.group, &self.g, &self.f).expect("finite group");
        let to_class = components.iter().map(|c| classes.class_of(&c[0])).collect();
        Pi0 { components, classes, to_class }
    }
}

#[derive(Clone, Debug, Default)]
pub struct IdentityReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `π_0` of the twisted cyclic nerve, with its map to twisted classes.
#[derive(Clone, Debug)]
pub struct Pi0 {
    /// components, in order of least element
    pub components: Vec<Vec<Elem>>,
    pub classes: TwistedClassSet,
    /// class of each component's least element
    pub to_class: Vec<ClassLabel>,
}

impl Pi0 {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    /// The map to classes is a bijection and each component is exactly one class.
    pub fn is_bijection(&self) -> bool {
        if self.classes.count() != Some(self.components.len()) {
            return false;
        }
        let mut seen = std::collections::BTreeSet::new();
        for (comp, label) in self.components.iter().zip(&self.to_class) {
            if !seen.insert(label.clone()) {
                return false;
            }
            let mut members = self.classes.members(label);
            members.sort();
            if members != *comp {
                return false;
            }
        }
        true
    }
}

/// `π_0(N^cy(G, G_φ))` for a finite group.
pub fn pi0(g: &Group, phi: &GroupHom) -> Result<Pi0> {
    if phi.dom() != g {
        return Err(Error::NotAHomomorphism("twist on another group".into()));
    }
    Ok(TwistedCyclicNerve::new(phi)?.pi0())
}

/// `π_0` against [`twisted_conjugacy_classes`] directly.
pub fn pi0_matches_classes(g: &Group, phi: &GroupHom) -> Result<bool> {
    let p = pi0(g, phi)?;
    let direct = twisted_conjugacy_classes(g, phi)?;
    Ok(p.is_bijection() && direct.count() == Some(p.count()))
}

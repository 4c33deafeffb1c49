//! Shadows `<M> = M / [A, M]` of endo-1-cells and the maps between them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::bimodule::{hcompose, Bimodule};
use super::twocell::TwoCell;
use crate::algebra::snf::smith_normal_form_big;
use crate::algebra::{ClassLabel, Elem, Group, RingElement, TwistedClassSet};
use crate::error::{Error, Result};

/// A generator of a shadow group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// a twisted class inside the given diagonal block
    Class(usize, ClassLabel),
    /// a generator of a finitely presented cokernel
    Gen(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokerGen {
    /// additive order, 0 for infinite
    pub order: u64,
    /// representative as a signed sum of tokens
    pub rep: Vec<(usize, i64)>,
    pub name: String,
}

#[derive(Clone, Debug)]
enum RootMap {
    Free(usize),
    Block(usize),
}

/// `Z^tokens / relations`, reduced to canonical generators.
#[derive(Clone, Debug)]
pub struct Coker {
    ntok: usize,
    resolve: Vec<Option<(usize, i64)>>,
    root_map: HashMap<usize, RootMap>,
    u: Vec<Vec<BigInt>>,
    d: Vec<BigInt>,
    block_gen: Vec<Option<usize>>,
    gens: Vec<CokerGen>,
}

struct SignedUnionFind {
    parent: Vec<usize>,
    sign: Vec<i64>,
    zero: Vec<bool>,
    torsion: Vec<bool>,
}

impl SignedUnionFind {
    fn new(n: usize) -> Self {
        SignedUnionFind { parent: (0..n).collect(), sign: vec![1; n], zero: vec![false; n], torsion: vec![false; n] }
    }

    /// `(root, s)` with `t = s * root`.
    fn find(&mut self, t: usize) -> (usize, i64) {
        let mut path = Vec::new();
        let mut x = t;
        while self.parent[x] != x {
            path.push(x);
            x = self.parent[x];
        }
        let root = x;
        // compress from the top of the path downwards
        for &y in path.iter().rev() {
            let p = self.parent[y];
            if p != root {
                self.sign[y] *= self.sign[p];
            }
            self.parent[y] = root;
        }
        (root, if t == root { 1 } else { self.sign[t] })
    }

    /// Imposes `x = s * y`.
    fn union(&mut self, x: usize, y: usize, s: i64) {
        let (rx, sx) = self.find(x);
        let (ry, sy) = self.find(y);
        let rel = sx * s * sy;
        if rx == ry {
            if rel == -1 {
                self.torsion[rx] = true;
            }
            return;
        }
        let (keep, drop) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[drop] = keep;
        self.sign[drop] = rel;
        self.zero[keep] |= self.zero[drop];
        self.torsion[keep] |= self.torsion[drop];
    }

    fn kill(&mut self, x: usize) {
        let (r, _) = self.find(x);
        self.zero[r] = true;
    }
}

fn combine(rel: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut m: BTreeMap<usize, i64> = BTreeMap::new();
    for &(t, c) in rel {
        *m.entry(t).or_insert(0) += c;
    }
    m.into_iter().filter(|(_, c)| *c != 0).collect()
}

fn linear_name(rep: &[(usize, i64)], names: &dyn Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (k, &(t, c)) in rep.iter().enumerate() {
        let n = names(t);
        let (neg, a) = (c < 0, c.unsigned_abs());
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if a != 1 {
            out.push_str(&format!("{a}*"));
        }
        out.push_str(&n);
    }
    if rep.len() > 1 {
        format!("[{out}]")
    } else {
        out
    }
}

impl Coker {
    pub fn new(ntok: usize, relations: &[Vec<(usize, i64)>], names: &dyn Fn(usize) -> String) -> Coker {
        let mut uf = SignedUnionFind::new(ntok);
        let mut deferred: Vec<Vec<(usize, i64)>> = Vec::new();
        for rel in relations {
            let rel = combine(rel);
            match rel.as_slice() {
                [] => {}
                [(t, c)] if c.abs() == 1 => uf.kill(*t),
                [(x, a), (y, b)] if a.abs() == 1 && b.abs() == 1 => uf.union(*x, *y, -a * b),
                _ => deferred.push(rel),
            }
        }
        let mut resolve: Vec<Option<(usize, i64)>> = Vec::with_capacity(ntok);
        for t in 0..ntok {
            let (r, s) = uf.find(t);
            resolve.push(if uf.zero[r] { None } else { Some((r, s)) });
        }
        // deferred relations in root coordinates, dropping killed roots
        let mut block_rels: Vec<BTreeMap<usize, i64>> = Vec::new();
        let mut in_block: BTreeSet<usize> = BTreeSet::new();
        for rel in &deferred {
            let mut m: BTreeMap<usize, i64> = BTreeMap::new();
            for &(t, c) in rel {
                if let Some((r, s)) = resolve[t] {
                    *m.entry(r).or_insert(0) += s * c;
                }
            }
            m.retain(|_, c| *c != 0);
            if !m.is_empty() {
                in_block.extend(m.keys().copied());
                block_rels.push(m);
            }
        }
        for &r in &in_block {
            if uf.torsion[r] {
                block_rels.push(BTreeMap::from([(r, 2)]));
            }
        }
        let roots: BTreeSet<usize> = resolve.iter().flatten().map(|(r, _)| *r).collect();
        let mut gens = Vec::new();
        let mut root_map = HashMap::new();
        for &r in &roots {
            if !in_block.contains(&r) {
                root_map.insert(r, RootMap::Free(gens.len()));
                gens.push(CokerGen { order: if uf.torsion[r] { 2 } else { 0 }, rep: vec![(r, 1)], name: names(r) });
            }
        }
        let block: Vec<usize> = in_block.iter().copied().collect();
        let pos: HashMap<usize, usize> = block.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        for (i, r) in block.iter().enumerate() {
            root_map.insert(*r, RootMap::Block(i));
        }
        let nb = block.len();
        let mut u = Vec::new();
        let mut d = Vec::new();
        let mut block_gen = Vec::new();
        if nb > 0 {
            let mut mat: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); block_rels.len()]; nb];
            for (j, rel) in block_rels.iter().enumerate() {
                for (r, c) in rel {
                    mat[pos[r]][j] = BigInt::from(*c);
                }
            }
            let cols = block_rels.len();
            let snf = smith_normal_form_big(mat, nb, cols);
            d = snf.diagonal.clone();
            d.resize(nb, BigInt::zero());
            for i in 0..nb {
                if d[i].is_one() {
                    block_gen.push(None);
                    continue;
                }
                let rep: Vec<(usize, i64)> = (0..nb)
                    .filter(|&p| !snf.u_inv[p][i].is_zero())
                    .map(|p| (block[p], snf.u_inv[p][i].to_i64().expect("representative coefficient")))
                    .collect();
                let order = d[i].to_u64().expect("torsion order");
                block_gen.push(Some(gens.len()));
                gens.push(CokerGen { order, name: linear_name(&rep, names), rep });
            }
            u = snf.u;
        }
        Coker { ntok, resolve, root_map, u, d, block_gen, gens }
    }

    pub fn generators(&self) -> &[CokerGen] {
        &self.gens
    }

    pub fn token_count(&self) -> usize {
        self.ntok
    }

    /// Coordinates of a token combination on the canonical generators.
    pub fn reduce(&self, toks: &[(usize, i64)]) -> BTreeMap<usize, i64> {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        let mut x: Vec<BigInt> = vec![BigInt::zero(); self.d.len()];
        let mut touched = false;
        for &(t, c) in toks {
            let Some((r, s)) = self.resolve[t] else { continue };
            match self.root_map[&r] {
                RootMap::Free(k) => *acc.entry(k).or_insert(0) += s * c,
                RootMap::Block(p) => {
                    x[p] += BigInt::from(s * c);
                    touched = true;
                }
            }
        }
        if touched {
            for (i, g) in self.block_gen.iter().enumerate() {
                let Some(k) = g else { continue };
                let mut y = BigInt::zero();
                for (p, xp) in x.iter().enumerate() {
                    if !xp.is_zero() {
                        y += &self.u[i][p] * xp;
                    }
                }
                if !self.d[i].is_zero() {
                    y = ((y % &self.d[i]) + &self.d[i]) % &self.d[i];
                }
                *acc.entry(*k).or_insert(0) += y.to_i64().expect("coefficient overflow");
            }
        }
        let mut out = BTreeMap::new();
        for (k, mut c) in acc {
            let o = self.gens[k].order;
            if o > 0 {
                c = c.rem_euclid(o as i64);
            }
            if c != 0 {
                out.insert(k, c);
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
enum Kind {
    Classes(Vec<TwistedClassSet>),
    Coker(Coker),
}

/// Layout of a bimodule shadow: vectors of length `rank` over `Z[group]`.
#[derive(Clone, Debug)]
struct Layout {
    rank: usize,
    group: Group,
}

/// A shadow group together with a canonical normal form for its elements.
#[derive(Clone, Debug)]
pub struct ShadowGroup {
    kind: Kind,
    layout: Option<Layout>,
    token_names: Option<Arc<Vec<String>>>,
}

impl PartialEq for ShadowGroup {
    fn eq(&self, other: &ShadowGroup) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        match (&self.kind, &other.kind) {
            (Kind::Classes(a), Kind::Classes(b)) => a == b,
            (Kind::Coker(a), Kind::Coker(b)) => a.ntok == b.ntok && a.gens == b.gens,
            _ => false,
        }
    }
}

impl Eq for ShadowGroup {}

impl ShadowGroup {
    /// `<Q>` for an endo-1-cell, using twisted classes when `Q` is positive-diagonal.
    pub fn of_bimodule(q: &Bimodule) -> Result<Arc<ShadowGroup>> {
        if let Some(s) = q.data.shadow.get() {
            return Ok(s.clone());
        }
        let s = Arc::new(Self::compute(q)?);
        Ok(q.data.shadow.get_or_init(|| s).clone())
    }

    fn compute(q: &Bimodule) -> Result<ShadowGroup> {
        if q.source_group() != q.target_group() {
            return Err(Error::ObjectMismatch("shadows need an endo-1-cell".into()));
        }
        let g = q.source_group();
        if let Some(psis) = q.diagonal_twists() {
            let id = crate::algebra::GroupHom::identity(g);
            let blocks = psis.iter().map(|p| TwistedClassSet::new(g, p, &id)).collect::<Result<Vec<_>>>()?;
            return Ok(ShadowGroup {
                kind: Kind::Classes(blocks),
                layout: Some(Layout { rank: q.rank(), group: g.clone() }),
                token_names: None,
            });
        }
        Self::coker_of_bimodule(q)
    }

    /// The cokernel presentation of `<Q>`, available for finite groups.
    pub fn coker_of_bimodule(q: &Bimodule) -> Result<ShadowGroup> {
        let g = q.source_group();
        let Some(n) = g.order() else {
            return Err(Error::UnsupportedShadow("shadow of a non-diagonal bimodule over an infinite group".into()));
        };
        if q.source_group() != q.target_group() {
            return Err(Error::ObjectMismatch("shadows need an endo-1-cell".into()));
        }
        let r = q.rank();
        let mut rels = Vec::new();
        // h.m - m.h for m = e_j x
        for h in g.generators() {
            let rho = q.act(h);
            for j in 0..r {
                for x in 0..n {
                    let mut rel = Vec::new();
                    for i in 0..r {
                        if let Some(c) = rho.get_ref(i, j) {
                            for (y, k) in c.terms() {
                                let z = g.mul(y, &Elem::Fin(x)).index();
                                rel.push((i * n + z, *k));
                            }
                        }
                    }
                    let z = g.mul(&Elem::Fin(x), h).index();
                    rel.push((j * n + z, -1));
                    rels.push(rel);
                }
            }
        }
        let names: Vec<String> = (0..r * n)
            .map(|t| {
                let l = g.label(&Elem::Fin(t % n));
                if r == 1 {
                    l
                } else {
                    format!("{}:{}", t / n, l)
                }
            })
            .collect();
        let coker = Coker::new(r * n, &rels, &|t| names[t].clone());
        Ok(ShadowGroup { kind: Kind::Coker(coker), layout: Some(Layout { rank: r, group: g.clone() }), token_names: Some(Arc::new(names)) })
    }

    /// The shadow `Z[classes]` of a single twisted class set, laid out on `Z[G]`.
    pub fn of_classes(set: TwistedClassSet) -> Arc<ShadowGroup> {
        let group = set.group().clone();
        Arc::new(ShadowGroup { kind: Kind::Classes(vec![set]), layout: Some(Layout { rank: 1, group }), token_names: None })
    }

    /// An abstract cokernel `Z^ntok / relations`.
    pub fn from_relations(ntok: usize, relations: &[Vec<(usize, i64)>], names: Vec<String>) -> Arc<ShadowGroup> {
        let coker = Coker::new(ntok, relations, &|t| names[t].clone());
        Arc::new(ShadowGroup { kind: Kind::Coker(coker), layout: None, token_names: Some(Arc::new(names)) })
    }

    pub fn is_classes(&self) -> bool {
        matches!(self.kind, Kind::Classes(_))
    }

    pub fn class_blocks(&self) -> Option<&[TwistedClassSet]> {
        match &self.kind {
            Kind::Classes(b) => Some(b),
            _ => None,
        }
    }

    pub fn coker(&self) -> Option<&Coker> {
        match &self.kind {
            Kind::Coker(c) => Some(c),
            _ => None,
        }
    }

    /// All generators, when there are finitely many.
    pub fn generators(&self) -> Option<Vec<Label>> {
        match &self.kind {
            Kind::Classes(blocks) => {
                let mut out = Vec::new();
                for (j, b) in blocks.iter().enumerate() {
                    out.extend(b.labels()?.into_iter().map(|c| Label::Class(j, c)));
                }
                Some(out)
            }
            Kind::Coker(c) => Some((0..c.gens.len()).map(Label::Gen).collect()),
        }
    }

    /// Generators, taking a window of classes on each infinite block.
    pub fn window_generators(&self, w: i64) -> Vec<Label> {
        match &self.kind {
            Kind::Classes(blocks) => {
                blocks.iter().enumerate().flat_map(|(j, b)| b.window_labels(w).into_iter().map(move |c| Label::Class(j, c))).collect()
            }
            Kind::Coker(_) => self.generators().unwrap(),
        }
    }

    /// Additive order of a generator, 0 for infinite.
    pub fn order(&self, l: &Label) -> u64 {
        match (&self.kind, l) {
            (Kind::Coker(c), Label::Gen(k)) => c.gens[*k].order,
            _ => 0,
        }
    }

    /// Free rank and torsion orders, `None` for the rank when it is infinite.
    pub fn structure(&self) -> (Option<usize>, Vec<u64>) {
        match &self.kind {
            Kind::Classes(blocks) => {
                let mut n = Some(0usize);
                for b in blocks {
                    n = match (n, b.count()) {
                        (Some(a), Some(c)) => Some(a + c),
                        _ => None,
                    };
                }
                (n, Vec::new())
            }
            Kind::Coker(c) => {
                let free = c.gens.iter().filter(|g| g.order == 0).count();
                let mut tors: Vec<u64> = c.gens.iter().map(|g| g.order).filter(|o| *o > 0).collect();
                tors.sort_unstable();
                (Some(free), tors)
            }
        }
    }

    /// `Z^3`, `Z^2 + Z/2`, `0`, or `Z^inf` style summary.
    pub fn describe(&self) -> String {
        let (free, tors) = self.structure();
        let mut parts = Vec::new();
        match free {
            None => parts.push("Z^inf".to_string()),
            Some(0) => {}
            Some(1) => parts.push("Z".to_string()),
            Some(k) => parts.push(format!("Z^{k}")),
        }
        for t in tors {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    pub fn label_name(&self, l: &Label) -> String {
        match (&self.kind, l) {
            (Kind::Classes(blocks), Label::Class(j, c)) => {
                let n = blocks[*j].label_name(c);
                if blocks.len() == 1 {
                    n
                } else {
                    format!("{j}:{n}")
                }
            }
            (Kind::Coker(c), Label::Gen(k)) => c.gens[*k].name.clone(),
            _ => panic!("label of the wrong kind"),
        }
    }

    pub fn token_name(&self, t: usize) -> Option<&str> {
        self.token_names.as_ref().map(|n| n[t].as_str())
    }

    fn layout(&self) -> &Layout {
        self.layout.as_ref().expect("shadow of a bimodule")
    }

    /// Normal form of the class of a vector in the underlying bimodule.
    pub fn normalize_vector(self: &Arc<Self>, v: &[RingElement]) -> ShadowElement {
        let lay = self.layout();
        assert_eq!(v.len(), lay.rank, "vector length");
        match &self.kind {
            Kind::Classes(blocks) => {
                let mut terms = BTreeMap::new();
                for (j, x) in v.iter().enumerate() {
                    for (g, c) in x.terms() {
                        *terms.entry(Label::Class(j, blocks[j].class_of(g))).or_insert(0) += c;
                    }
                }
                ShadowElement::from_map(self, terms)
            }
            Kind::Coker(_) => {
                let n = lay.group.order().unwrap();
                let toks: Vec<(usize, i64)> =
                    v.iter().enumerate().flat_map(|(j, x)| x.terms().iter().map(move |(g, c)| (j * n + g.index(), *c))).collect();
                self.normalize_tokens(&toks)
            }
        }
    }

    pub fn normalize_tokens(self: &Arc<Self>, toks: &[(usize, i64)]) -> ShadowElement {
        match &self.kind {
            Kind::Coker(c) => {
                let terms = c.reduce(toks).into_iter().map(|(k, v)| (Label::Gen(k), v)).collect();
                ShadowElement::from_map(self, terms)
            }
            Kind::Classes(_) => panic!("token normalization needs a cokernel presentation"),
        }
    }

    /// A vector whose class is the given generator.
    pub fn representative_vector(&self, l: &Label) -> Vec<RingElement> {
        let lay = self.layout();
        let g = &lay.group;
        let mut v = vec![RingElement::zero(g); lay.rank];
        match (&self.kind, l) {
            (Kind::Classes(blocks), Label::Class(j, c)) => {
                v[*j] = RingElement::from_elem(g, blocks[*j].representative(c));
            }
            (Kind::Coker(ck), Label::Gen(k)) => {
                let n = g.order().unwrap();
                for &(t, c) in &ck.gens[*k].rep {
                    v[t / n] = &v[t / n] + &RingElement::term(g, Elem::Fin(t % n), c);
                }
            }
            _ => panic!("label of the wrong kind"),
        }
        v
    }

    pub fn representative_tokens(&self, l: &Label) -> Vec<(usize, i64)> {
        match (&self.kind, l) {
            (Kind::Coker(c), Label::Gen(k)) => c.gens[*k].rep.clone(),
            _ => panic!("tokens of a class label"),
        }
    }
}

/// An element of a shadow group in normal form.
#[derive(Clone)]
pub struct ShadowElement {
    group: Arc<ShadowGroup>,
    terms: BTreeMap<Label, i64>,
}

impl PartialEq for ShadowElement {
    fn eq(&self, other: &ShadowElement) -> bool {
        self.terms == other.terms && *self.group == *other.group
    }
}

impl Eq for ShadowElement {}

impl ShadowElement {
    fn from_map(group: &Arc<ShadowGroup>, raw: BTreeMap<Label, i64>) -> ShadowElement {
        let mut terms = BTreeMap::new();
        for (l, mut c) in raw {
            let o = group.order(&l);
            if o > 0 {
                c = c.rem_euclid(o as i64);
            }
            if c != 0 {
                terms.insert(l, c);
            }
        }
        ShadowElement { group: group.clone(), terms }
    }

    pub fn zero(group: &Arc<ShadowGroup>) -> ShadowElement {
        ShadowElement { group: group.clone(), terms: BTreeMap::new() }
    }

    pub fn generator(group: &Arc<ShadowGroup>, l: Label, c: i64) -> ShadowElement {
        ShadowElement::from_map(group, BTreeMap::from([(l, c)]))
    }

    pub fn group(&self) -> &Arc<ShadowGroup> {
        &self.group
    }

    pub fn terms(&self) -> &BTreeMap<Label, i64> {
        &self.terms
    }

    pub fn coeff(&self, l: &Label) -> i64 {
        self.terms.get(l).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ShadowElement) -> ShadowElement {
        assert!(*self.group == *other.group, "adding elements of different shadows");
        let mut t = self.terms.clone();
        for (l, c) in &other.terms {
            *t.entry(l.clone()).or_insert(0) += c;
        }
        ShadowElement::from_map(&self.group, t)
    }

    pub fn scale(&self, k: i64) -> ShadowElement {
        ShadowElement::from_map(&self.group, self.terms.iter().map(|(l, c)| (l.clone(), c * k)).collect())
    }

    pub fn sub(&self, other: &ShadowElement) -> ShadowElement {
        self.add(&other.scale(-1))
    }

    /// Named coefficients, in canonical order.
    pub fn named_terms(&self) -> Vec<(String, i64)> {
        self.terms.iter().map(|(l, c)| (self.group.label_name(l), *c)).collect()
    }

    /// A vector representing this element.
    pub fn representative_vector(&self) -> Vec<RingElement> {
        let lay = self.group.layout();
        let mut v = vec![RingElement::zero(&lay.group); lay.rank];
        for (l, c) in &self.terms {
            let w = self.group.representative_vector(l);
            for (a, b) in v.iter_mut().zip(w) {
                *a = &*a + &b.scale(*c);
            }
        }
        v
    }
}

impl fmt::Display for ShadowElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (name, c)) in self.named_terms().into_iter().enumerate() {
            let (neg, a) = (c < 0, c.unsigned_abs());
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if a != 1 {
                write!(f, "{a}*")?;
            }
            write!(f, "{name}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ShadowElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

type GenMap = dyn Fn(&Label) -> ShadowElement + Send + Sync;

/// A homomorphism of shadow groups, determined by its values on generators.
#[derive(Clone)]
pub struct ShadowMap {
    dom: Arc<ShadowGroup>,
    cod: Arc<ShadowGroup>,
    f: Arc<GenMap>,
}

impl fmt::Debug for ShadowMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ShadowMap[{} -> {}]", self.dom.describe(), self.cod.describe())
    }
}

impl ShadowMap {
    pub fn new(dom: Arc<ShadowGroup>, cod: Arc<ShadowGroup>, f: impl Fn(&Label) -> ShadowElement + Send + Sync + 'static) -> ShadowMap {
        ShadowMap { dom, cod, f: Arc::new(f) }
    }

    pub fn identity(g: &Arc<ShadowGroup>) -> ShadowMap {
        let h = g.clone();
        ShadowMap::new(g.clone(), g.clone(), move |l| ShadowElement::generator(&h, l.clone(), 1))
    }

    pub fn dom(&self) -> &Arc<ShadowGroup> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<ShadowGroup> {
        &self.cod
    }

    pub fn on_generator(&self, l: &Label) -> ShadowElement {
        (self.f)(l)
    }

    pub fn apply(&self, x: &ShadowElement) -> ShadowElement {
        let mut out = ShadowElement::zero(&self.cod);
        for (l, c) in &x.terms {
            out = out.add(&(self.f)(l).scale(*c));
        }
        out
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ShadowMap) -> Result<ShadowMap> {
        if *first.cod != *self.dom {
            return Err(Error::ObjectMismatch("composing shadow maps through different groups".into()));
        }
        let (a, b) = (first.clone(), self.clone());
        Ok(ShadowMap::new(first.dom.clone(), self.cod.clone(), move |l| b.apply(&a.on_generator(l))))
    }

    pub fn add(&self, other: &ShadowMap) -> Result<ShadowMap> {
        if *self.dom != *other.dom || *self.cod != *other.cod {
            return Err(Error::ObjectMismatch("adding shadow maps between different groups".into()));
        }
        let (a, b) = (self.clone(), other.clone());
        Ok(ShadowMap::new(self.dom.clone(), self.cod.clone(), move |l| a.on_generator(l).add(&b.on_generator(l))))
    }

    /// Agreement on the given generators.
    pub fn agrees_on(&self, other: &ShadowMap, labels: &[Label]) -> bool {
        *self.dom == *other.dom && *self.cod == *other.cod && labels.iter().all(|l| self.on_generator(l) == other.on_generator(l))
    }

    /// Agreement on all generators, or a window of them for infinite shadows.
    pub fn agrees_with(&self, other: &ShadowMap, window: i64) -> bool {
        self.agrees_on(other, &self.dom.window_generators(window))
    }

    /// Integer matrix on generators, columns indexed by the domain.
    pub fn matrix(&self) -> Option<Vec<Vec<i64>>> {
        let dg = self.dom.generators()?;
        let cg = self.cod.generators()?;
        let idx: HashMap<&Label, usize> = cg.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut m = vec![vec![0i64; dg.len()]; cg.len()];
        for (j, l) in dg.iter().enumerate() {
            for (k, c) in self.on_generator(l).terms {
                m[idx[&k]][j] = c;
            }
        }
        Some(m)
    }

    /// Sum of diagonal entries on an endomorphism of a finite-rank shadow,
    /// computed on free generators.
    pub fn trace(&self) -> Option<i64> {
        if *self.dom != *self.cod {
            return None;
        }
        let g = self.dom.generators()?;
        Some(g.iter().filter(|l| self.dom.order(l) == 0).map(|l| self.on_generator(l).coeff(l)).sum())
    }
}

/// `<Q>` as a shared handle.
pub fn shadow(q: &Bimodule) -> Result<Arc<ShadowGroup>> {
    ShadowGroup::of_bimodule(q)
}

/// `<α>: <Q> -> <Q'>` for a 2-cell between endo-1-cells.
pub fn shadow_map(alpha: &TwoCell) -> Result<ShadowMap> {
    let dom = shadow(alpha.dom())?;
    let cod = shadow(alpha.cod())?;
    let (d, c, m) = (dom.clone(), cod.clone(), alpha.matrix().clone());
    Ok(ShadowMap::new(dom, cod, move |l| c.normalize_vector(&m.mul_vec(&d.representative_vector(l)))))
}

/// The raw symmetry isomorphism on vectors: `(e_i ⊗ f_j) c ↦ Σ_k (f_j ⊗ e_k) ρ_M(c)_{ki}`.
pub fn theta_vector(m: &Bimodule, n: &Bimodule, v: &[RingElement]) -> Vec<RingElement> {
    let (r, s) = (m.rank(), n.rank());
    assert_eq!(v.len(), r * s, "vector length");
    let b = m.target_group();
    let mut out: Vec<BTreeMap<Elem, i64>> = vec![BTreeMap::new(); s * r];
    for i in 0..r {
        for j in 0..s {
            for (a, c) in v[i * s + j].terms() {
                let rho = m.act_ref(a);
                for k in 0..r {
                    if let Some(x) = rho.get_ref(k, i) {
                        for (y, d) in x.terms() {
                            *out[j * r + k].entry(y.clone()).or_insert(0) += c * d;
                        }
                    }
                }
            }
        }
    }
    out.into_iter().map(|t| RingElement::from_terms(b, t)).collect()
}

/// `θ: <M ⊙ N> -> <N ⊙ M>`.
pub fn theta(m: &Bimodule, n: &Bimodule) -> Result<ShadowMap> {
    let dom = shadow(&hcompose(m, n)?)?;
    let cod = shadow(&hcompose(n, m)?)?;
    let (d, c, m, n) = (dom.clone(), cod.clone(), m.clone(), n.clone());
    Ok(ShadowMap::new(dom, cod, move |l| c.normalize_vector(&theta_vector(&m, &n, &d.representative_vector(l)))))
}

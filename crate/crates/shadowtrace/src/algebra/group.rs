use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::word::Word;
use crate::error::{Error, Result};

/// An element of a computable group.
///
/// `Fin` indexes into a multiplication table, `Lat` is an exponent vector
/// of a free abelian group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Fin(usize),
    Lat(Vec<i64>),
}

impl Elem {
    pub fn index(&self) -> usize {
        match self {
            Elem::Fin(i) => *i,
            Elem::Lat(_) => panic!("lattice element has no table index"),
        }
    }

    pub fn coords(&self) -> &[i64] {
        match self {
            Elem::Lat(v) => v,
            Elem::Fin(_) => panic!("table element has no coordinates"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupModel {
    FiniteTable { labels: Vec<String>, table: Vec<Vec<usize>> },
    FreeAbelian { rank: usize },
    Presented { generators: Vec<String>, relators: Vec<Word> },
}

struct Inner {
    name: String,
    model: GroupModel,
    inverses: Vec<usize>,
    generators: Vec<Elem>,
}

/// A group, shared by reference. Equality compares the underlying model.
#[derive(Clone)]
pub struct Group {
    inner: Arc<Inner>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.model == other.inner.model
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({})", self.inner.name)
    }
}

impl Group {
    /// A finite group from its multiplication table. Index 0 must be the identity.
    pub fn finite(name: &str, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Group> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup("table is not square".into()));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidGroup("labels are not distinct".into()));
        }
        for row in &table {
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || seen[x] {
                    return Err(Error::InvalidGroup("table is not a Latin square".into()));
                }
                seen[x] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if seen[row[j]] {
                    return Err(Error::InvalidGroup("table is not a Latin square".into()));
                }
                seen[row[j]] = true;
            }
        }
        for x in 0..n {
            if table[0][x] != x || table[x][0] != x {
                return Err(Error::InvalidGroup("index 0 is not a two-sided identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails on ({}, {}, {})", labels[a], labels[b], labels[c])));
                    }
                }
            }
        }
        let inverses: Vec<usize> = (0..n).map(|a| (0..n).find(|&b| table[a][b] == 0).expect("latin square has inverses")).collect();
        let generators = greedy_generators(&table);
        Ok(Group {
            inner: Arc::new(Inner { name: name.to_string(), model: GroupModel::FiniteTable { labels, table }, inverses, generators }),
        })
    }

    pub fn free_abelian(rank: usize) -> Group {
        let generators = (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                Elem::Lat(v)
            })
            .collect();
        let name = match rank {
            0 => "1".to_string(),
            1 => "Z".to_string(),
            r => format!("Z^{r}"),
        };
        Group { inner: Arc::new(Inner { name, model: GroupModel::FreeAbelian { rank }, inverses: Vec::new(), generators }) }
    }

    /// A finitely presented group. Relators are reduced on construction.
    pub fn presented(name: &str, generators: Vec<String>, relators: Vec<Word>) -> Result<Group> {
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g >= generators.len() {
                    return Err(Error::InvalidGroup("relator uses unknown generator".into()));
                }
            }
        }
        let relators = relators.into_iter().map(|w| Word::from_letters(w.letters().to_vec())).collect();
        Ok(Group {
            inner: Arc::new(Inner {
                name: name.to_string(),
                model: GroupModel::Presented { generators, relators },
                inverses: Vec::new(),
                generators: Vec::new(),
            }),
        })
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn model(&self) -> &GroupModel {
        &self.inner.model
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.inner.model, GroupModel::FiniteTable { .. })
    }

    pub fn is_free_abelian(&self) -> bool {
        matches!(self.inner.model, GroupModel::FreeAbelian { .. })
    }

    pub fn is_presented(&self) -> bool {
        matches!(self.inner.model, GroupModel::Presented { .. })
    }

    /// Order of a finite table group.
    pub fn order(&self) -> Option<usize> {
        match &self.inner.model {
            GroupModel::FiniteTable { labels, .. } => Some(labels.len()),
            GroupModel::FreeAbelian { rank: 0 } => Some(1),
            _ => None,
        }
    }

    /// Rank of a free abelian group.
    pub fn rank(&self) -> usize {
        match &self.inner.model {
            GroupModel::FreeAbelian { rank } => *rank,
            _ => panic!("rank of a non-lattice group"),
        }
    }

    pub fn presentation(&self) -> Option<(&[String], &[Word])> {
        match &self.inner.model {
            GroupModel::Presented { generators, relators } => Some((generators, relators)),
            _ => None,
        }
    }

    fn table(&self) -> &Vec<Vec<usize>> {
        match &self.inner.model {
            GroupModel::FiniteTable { table, .. } => table,
            _ => panic!("{} has no multiplication table", self.inner.name),
        }
    }

    pub fn identity(&self) -> Elem {
        match &self.inner.model {
            GroupModel::FiniteTable { .. } => Elem::Fin(0),
            GroupModel::FreeAbelian { rank } => Elem::Lat(vec![0; *rank]),
            GroupModel::Presented { .. } => panic!("presented groups have no element model"),
        }
    }

    pub fn is_identity(&self, x: &Elem) -> bool {
        *x == self.identity()
    }

    pub fn contains(&self, x: &Elem) -> bool {
        match (&self.inner.model, x) {
            (GroupModel::FiniteTable { labels, .. }, Elem::Fin(i)) => *i < labels.len(),
            (GroupModel::FreeAbelian { rank }, Elem::Lat(v)) => v.len() == *rank,
            _ => false,
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fin(i), Elem::Fin(j)) => Elem::Fin(self.table()[*i][*j]),
            (Elem::Lat(u), Elem::Lat(v)) => {
                Elem::Lat(u.iter().zip(v).map(|(x, y)| x.checked_add(*y).expect("lattice exponent overflow")).collect())
            }
            _ => panic!("mixed element kinds"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Elem {
        match a {
            Elem::Fin(i) => Elem::Fin(self.inner.inverses[*i]),
            Elem::Lat(v) => Elem::Lat(v.iter().map(|x| -x).collect()),
        }
    }

    pub fn pow(&self, a: &Elem, k: i64) -> Elem {
        match a {
            Elem::Lat(v) => Elem::Lat(v.iter().map(|x| x.checked_mul(k).expect("lattice exponent overflow")).collect()),
            Elem::Fin(_) => {
                let base = if k >= 0 { a.clone() } else { self.inv(a) };
                let mut out = self.identity();
                for _ in 0..k.unsigned_abs() {
                    out = self.mul(&out, &base);
                }
                out
            }
        }
    }

    /// `a b a^-1`
    pub fn conj(&self, a: &Elem, b: &Elem) -> Elem {
        self.mul(&self.mul(a, b), &self.inv(a))
    }

    /// All elements in index order (finite groups only).
    pub fn elements(&self) -> Vec<Elem> {
        match &self.inner.model {
            GroupModel::FiniteTable { labels, .. } => (0..labels.len()).map(Elem::Fin).collect(),
            GroupModel::FreeAbelian { rank: 0 } => vec![Elem::Lat(vec![])],
            _ => panic!("{} is infinite or has no element model", self.inner.name),
        }
    }

    /// A canonical generating set: greedy over element order for tables,
    /// the standard basis for lattices.
    pub fn generators(&self) -> &[Elem] {
        &self.inner.generators
    }

    pub fn is_abelian(&self) -> bool {
        match &self.inner.model {
            GroupModel::FiniteTable { table, .. } => {
                let n = table.len();
                (0..n).all(|a| (0..n).all(|b| table[a][b] == table[b][a]))
            }
            GroupModel::FreeAbelian { .. } => true,
            GroupModel::Presented { .. } => false,
        }
    }

    /// The opposite group, with `a * b = b a`. Equal to `self` for abelian groups.
    pub fn opposite(&self) -> Group {
        if self.is_abelian() {
            return self.clone();
        }
        match &self.inner.model {
            GroupModel::FiniteTable { labels, table } => {
                let n = labels.len();
                let t: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| table[b][a]).collect()).collect();
                Group::finite(&format!("{}^op", self.inner.name), labels.clone(), t).expect("opposite of a group is a group")
            }
            _ => self.clone(),
        }
    }

    pub fn label(&self, x: &Elem) -> String {
        match (&self.inner.model, x) {
            (GroupModel::FiniteTable { labels, .. }, Elem::Fin(i)) => labels[*i].clone(),
            (GroupModel::FreeAbelian { rank }, Elem::Lat(v)) => lattice_label(*rank, v),
            _ => format!("{x:?}"),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        match &self.inner.model {
            GroupModel::FiniteTable { labels, .. } => Some(labels),
            _ => None,
        }
    }

    /// Inverse of [`Group::label`].
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        match &self.inner.model {
            GroupModel::FiniteTable { labels, .. } => labels
                .iter()
                .position(|l| l == s)
                .map(Elem::Fin)
                .ok_or_else(|| Error::UnknownElement(format!("`{s}` in {}", self.inner.name))),
            GroupModel::FreeAbelian { rank } => {
                let names = lattice_names(*rank);
                let mut v = vec![0i64; *rank];
                for tok in s.split_whitespace() {
                    if tok == "1" {
                        continue;
                    }
                    let (name, e) = match tok.split_once('^') {
                        Some((n, e)) => (n, e.parse::<i64>().map_err(|_| Error::UnknownElement(format!("`{s}`")))?),
                        None => (tok, 1),
                    };
                    let i = names.iter().position(|x| x == name).ok_or_else(|| Error::UnknownElement(format!("`{s}`")))?;
                    v[i] += e;
                }
                Ok(Elem::Lat(v))
            }
            GroupModel::Presented { .. } => Err(Error::UnsupportedGroup("presented groups have no element model".into())),
        }
    }

    /// Subgroup generated by a set of elements (finite groups), in index order.
    pub fn subgroup_generated(&self, gens: &[Elem]) -> Vec<Elem> {
        let n = self.order().expect("finite group");
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.mul(&Elem::Fin(x), g).index();
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..n).filter(|&i| seen[i]).map(Elem::Fin).collect()
    }
}

fn greedy_generators(table: &[Vec<usize>]) -> Vec<Elem> {
    let n = table.len();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut gens: Vec<usize> = Vec::new();
    for x in 0..n {
        if inside[x] {
            continue;
        }
        gens.push(x);
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| inside[i]).collect();
        while let Some(a) = queue.pop_front() {
            for &g in &gens {
                let b = table[a][g];
                if !inside[b] {
                    inside[b] = true;
                    queue.push_back(b);
                }
            }
        }
    }
    gens.into_iter().map(Elem::Fin).collect()
}

pub(crate) fn lattice_names(rank: usize) -> Vec<String> {
    match rank {
        1 => vec!["t".to_string()],
        2 => vec!["a".to_string(), "b".to_string()],
        r => (1..=r).map(|i| format!("x{i}")).collect(),
    }
}

fn lattice_label(rank: usize, v: &[i64]) -> String {
    let names = lattice_names(rank);
    let parts: Vec<String> =
        v.iter().zip(&names).filter(|(e, _)| **e != 0).map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") }).collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

// ---------------------------------------------------------------------------
// Standard groups

pub fn trivial() -> Group {
    Group::finite("1", vec!["e".into()], vec![vec![0]]).unwrap()
}

/// `Z/n` with labels `e, a, a^2, ...`.
pub fn cyclic(n: usize) -> Group {
    assert!(n >= 1);
    let labels = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "a".to_string(),
            i => format!("a^{i}"),
        })
        .collect();
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    Group::finite(&format!("Z/{n}"), labels, table).unwrap()
}

fn perm_label(p: &[usize]) -> (usize, String) {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    let mut s = String::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut c = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            c.push(x);
            x = p[x];
        }
        if c.len() > 1 {
            s.push('(');
            for y in c {
                s.push_str(&(y + 1).to_string());
            }
            s.push(')');
        }
    }
    if s.is_empty() {
        s.push('e');
    }
    (n - cycles, s)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q: Vec<usize> = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn perm_group(name: &str, mut perms: Vec<Vec<usize>>) -> Group {
    perms.sort_by_key(|p| perm_label(p));
    let labels: Vec<String> = perms.iter().map(|p| perm_label(p).1).collect();
    let index = |q: &Vec<usize>| perms.iter().position(|p| p == q).unwrap();
    // (p q)(x) = p(q(x))
    let table = perms.iter().map(|p| perms.iter().map(|q| index(&q.iter().map(|&x| p[x]).collect())).collect()).collect();
    Group::finite(name, labels, table).unwrap()
}

fn is_even(p: &[usize]) -> bool {
    perm_label(p).0.is_multiple_of(2)
}

/// The symmetric group on `n` letters, elements written in cycle notation.
pub fn symmetric(n: usize) -> Group {
    perm_group(&format!("S{n}"), permutations(n))
}

pub fn alternating(n: usize) -> Group {
    perm_group(&format!("A{n}"), permutations(n).into_iter().filter(|p| is_even(p)).collect())
}

/// The dihedral group of order `2k`: elements `r^i` then `r^i s`.
pub fn dihedral(k: usize) -> Group {
    assert!(k >= 1);
    let name_of = |i: usize, j: usize| -> String {
        let r = match i {
            0 => String::new(),
            1 => "r".to_string(),
            i => format!("r^{i}"),
        };
        match (r.is_empty(), j) {
            (true, 0) => "e".to_string(),
            (false, 0) => r,
            (_, _) => format!("{r}s"),
        }
    };
    let elems: Vec<(usize, usize)> = (0..2).flat_map(|j| (0..k).map(move |i| (i, j))).collect();
    let labels = elems.iter().map(|&(i, j)| name_of(i, j)).collect();
    let index = |x: (usize, usize)| elems.iter().position(|&y| y == x).unwrap();
    // (r^i s^a)(r^m s^b) = r^(i + (-1)^a m) s^(a+b)
    let table = elems
        .iter()
        .map(|&(i, a)| {
            elems
                .iter()
                .map(|&(m, b)| {
                    let ri = if a == 0 { (i + m) % k } else { (i + k - m % k) % k };
                    index((ri, (a + b) % 2))
                })
                .collect()
        })
        .collect();
    Group::finite(&format!("D{k}"), labels, table).unwrap()
}

/// The quaternion group `{1, -1, i, -i, j, -j, k, -k}`.
pub fn quaternion() -> Group {
    let labels: Vec<String> = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
    // unit u in {0:1,1:i,2:j,3:k}, sign s; index = 2u + s
    let unit_mul = |a: usize, b: usize| -> (usize, bool) {
        match (a, b) {
            (0, x) | (x, 0) => (x, false),
            (x, y) if x == y => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    };
    let table = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (u, neg) = unit_mul(x / 2, y / 2);
                    let sign = (x % 2) ^ (y % 2) ^ (neg as usize);
                    2 * u + sign
                })
                .collect()
        })
        .collect();
    Group::finite("Q8", labels, table).unwrap()
}

/// Direct product with labels `(g,h)` in lexicographic order.
pub fn product(g: &Group, h: &Group) -> Group {
    let (m, n) = (g.order().expect("finite"), h.order().expect("finite"));
    let labels = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| format!("({},{})", g.label(&Elem::Fin(i)), h.label(&Elem::Fin(j))))
        .collect();
    let table = (0..m * n)
        .map(|x| {
            (0..m * n)
                .map(|y| {
                    let a = g.mul(&Elem::Fin(x / n), &Elem::Fin(y / n)).index();
                    let b = h.mul(&Elem::Fin(x % n), &Elem::Fin(y % n)).index();
                    a * n + b
                })
                .collect()
        })
        .collect();
    Group::finite(&format!("{}x{}", g.name(), h.name()), labels, table).unwrap()
}

pub fn klein() -> Group {
    let z2 = cyclic(2);
    product(&z2, &z2)
}

/// Looks up a group by a short name: `1`, `Z/n`, `Sn`, `An`, `Dn`, `Q8`, `V4`, `Z`, `Z^n`.
pub fn named(name: &str) -> Result<Group> {
    let bad = || Error::Parse(format!("unknown group name `{name}`"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match name {
        "1" | "trivial" => Ok(trivial()),
        "Q8" => Ok(quaternion()),
        "V4" | "Z/2xZ/2" => Ok(klein()),
        "Z" => Ok(Group::free_abelian(1)),
        _ => {
            if let Some(n) = name.strip_prefix("Z/") {
                let n = num(n)?;
                if n == 0 || n > 64 {
                    return Err(bad());
                }
                Ok(cyclic(n))
            } else if let Some(n) = name.strip_prefix("Z^") {
                Ok(Group::free_abelian(num(n)?))
            } else if let Some(n) = name.strip_prefix('S') {
                let n = num(n)?;
                if !(1..=5).contains(&n) {
                    return Err(bad());
                }
                Ok(symmetric(n))
            } else if let Some(n) = name.strip_prefix('A') {
                let n = num(n)?;
                if !(1..=5).contains(&n) {
                    return Err(bad());
                }
                Ok(alternating(n))
            } else if let Some(n) = name.strip_prefix('D') {
                let n = num(n)?;
                if !(1..=12).contains(&n) {
                    return Err(bad());
                }
                Ok(dihedral(n))
            } else {
                Err(bad())
            }
        }
    }
}

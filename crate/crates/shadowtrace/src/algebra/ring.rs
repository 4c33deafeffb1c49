use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::group::{Elem, Group};
use super::hom::GroupHom;
use crate::error::{Error, Result};

/// An element of the integral group ring `Z[G]`.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    group: Group,
    terms: BTreeMap<Elem, i64>,
}

fn add_term(terms: &mut BTreeMap<Elem, i64>, e: Elem, c: i64) {
    if c == 0 {
        return;
    }
    match terms.get_mut(&e) {
        Some(v) => {
            *v = v.checked_add(c).expect("coefficient overflow");
            if *v == 0 {
                terms.remove(&e);
            }
        }
        None => {
            terms.insert(e, c);
        }
    }
}

impl RingElement {
    pub fn zero(g: &Group) -> RingElement {
        RingElement { group: g.clone(), terms: BTreeMap::new() }
    }

    pub fn one(g: &Group) -> RingElement {
        RingElement::from_elem(g, g.identity())
    }

    pub fn from_elem(g: &Group, e: Elem) -> RingElement {
        RingElement::term(g, e, 1)
    }

    pub fn term(g: &Group, e: Elem, c: i64) -> RingElement {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        RingElement { group: g.clone(), terms }
    }

    pub fn scalar(g: &Group, c: i64) -> RingElement {
        RingElement::term(g, g.identity(), c)
    }

    pub fn from_terms<I: IntoIterator<Item = (Elem, i64)>>(g: &Group, it: I) -> RingElement {
        let mut terms = BTreeMap::new();
        for (e, c) in it {
            add_term(&mut terms, e, c);
        }
        RingElement { group: g.clone(), terms }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn terms(&self) -> &BTreeMap<Elem, i64> {
        &self.terms
    }

    pub fn coeff(&self, e: &Elem) -> i64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&self.group.identity()) == 1
    }

    /// `Some((sign, g))` when the element is `±g`.
    pub fn as_monomial(&self) -> Option<(i64, Elem)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, &c) = self.terms.iter().next().unwrap();
        (c == 1 || c == -1).then(|| (c, e.clone()))
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().fold(0i64, |s, c| s.checked_add(*c).expect("coefficient overflow"))
    }

    fn check_base(&self, other: &RingElement) -> Result<()> {
        if self.group != other.group {
            return Err(Error::BaseMismatch(format!("{} vs {}", self.group.name(), other.group.name())));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_base(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            add_term(&mut terms, e.clone(), *c);
        }
        Ok(RingElement { group: self.group.clone(), terms })
    }

    pub fn try_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.try_add(&other.scale(-1))
    }

    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check_base(other)?;
        let mut terms = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                add_term(&mut terms, self.group.mul(a, b), x.checked_mul(*y).expect("coefficient overflow"));
            }
        }
        Ok(RingElement { group: self.group.clone(), terms })
    }

    pub fn scale(&self, k: i64) -> RingElement {
        if k == 0 {
            return RingElement::zero(&self.group);
        }
        RingElement {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.checked_mul(k).expect("coefficient overflow"))).collect(),
        }
    }

    /// Left multiplication by a group element.
    pub fn left_mul_elem(&self, g: &Elem) -> RingElement {
        RingElement::from_terms(&self.group, self.terms.iter().map(|(e, c)| (self.group.mul(g, e), *c)))
    }

    pub fn right_mul_elem(&self, g: &Elem) -> RingElement {
        RingElement::from_terms(&self.group, self.terms.iter().map(|(e, c)| (self.group.mul(e, g), *c)))
    }

    /// Pushforward along a group homomorphism.
    pub fn map_hom(&self, f: &GroupHom) -> RingElement {
        assert!(*f.dom() == self.group, "homomorphism domain differs from the ring's group");
        RingElement::from_terms(f.cod(), self.terms.iter().map(|(e, c)| (f.apply(e), *c)))
    }

    /// The anti-involution `g -> g^-1`.
    pub fn involution(&self) -> RingElement {
        RingElement::from_terms(&self.group, self.terms.iter().map(|(e, c)| (self.group.inv(e), *c)))
    }

    /// Reinterpret over an equal group value.
    pub fn rebase(&self, g: &Group) -> RingElement {
        assert!(*g == self.group);
        RingElement { group: g.clone(), terms: self.terms.clone() }
    }

    /// Same coefficients over a group with the same elements, e.g. the opposite group.
    pub(crate) fn rebase_unchecked(&self, g: &Group) -> RingElement {
        RingElement { group: g.clone(), terms: self.terms.clone() }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in &self.terms {
            let label = self.group.label(e);
            let (neg, m) = (c < 0, c.unsigned_abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m == 1 {
                write!(f, "{label}")?;
            } else {
                write!(f, "{m}*{label}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, o: &RingElement) -> RingElement {
        self.try_add(o).expect("ring elements over one group")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, o: &RingElement) -> RingElement {
        self.try_sub(o).expect("ring elements over one group")
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, o: &RingElement) -> RingElement {
        self.try_mul(o).expect("ring elements over one group")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(-1)
    }
}

pub type Vector = Vec<RingElement>;

/// A sparse matrix over `Z[G]`.
#[derive(Clone, PartialEq, Eq)]
pub struct RingMatrix {
    rows: usize,
    cols: usize,
    group: Group,
    entries: BTreeMap<(usize, usize), RingElement>,
}

impl fmt::Debug for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RingMatrix {
    pub fn zero(g: &Group, rows: usize, cols: usize) -> RingMatrix {
        RingMatrix { rows, cols, group: g.clone(), entries: BTreeMap::new() }
    }

    pub fn identity(g: &Group, n: usize) -> RingMatrix {
        let mut m = RingMatrix::zero(g, n, n);
        for i in 0..n {
            m.set(i, i, RingElement::one(g));
        }
        m
    }

    pub fn from_fn(g: &Group, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RingElement) -> RingMatrix {
        let mut m = RingMatrix::zero(g, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(g: &Group, rows: Vec<Vec<RingElement>>) -> RingMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = RingMatrix::zero(g, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Integer matrix viewed over `Z[G]`.
    pub fn from_ints(g: &Group, m: &[Vec<i64>]) -> RingMatrix {
        let rows: Vec<Vec<RingElement>> = m.iter().map(|r| r.iter().map(|&x| RingElement::scalar(g, x)).collect()).collect();
        if rows.is_empty() {
            return RingMatrix::zero(g, 0, 0);
        }
        RingMatrix::from_rows(g, rows)
    }

    pub fn diagonal_matrix(g: &Group, d: Vec<RingElement>) -> RingMatrix {
        let n = d.len();
        let mut m = RingMatrix::zero(g, n, n);
        for (i, x) in d.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn column(g: &Group, v: Vector) -> RingMatrix {
        let mut m = RingMatrix::zero(g, v.len(), 1);
        for (i, x) in v.into_iter().enumerate() {
            m.set(i, 0, x);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), RingElement> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> RingElement {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        self.entries.get(&(i, j)).cloned().unwrap_or_else(|| RingElement::zero(&self.group))
    }

    pub fn get_ref(&self, i: usize, j: usize) -> Option<&RingElement> {
        self.entries.get(&(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, x: RingElement) {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        assert!(*x.group() == self.group, "entry over a different group");
        if x.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), x);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &RingElement) {
        let cur = self.get(i, j);
        self.set(i, j, &cur + x);
    }

    pub fn row_entries(&self, i: usize) -> impl Iterator<Item = (usize, &RingElement)> {
        self.entries.range((i, 0)..(i, usize::MAX)).map(|((_, j), x)| (*j, x))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && self.entries.len() == self.rows && self.entries.iter().all(|((i, j), x)| i == j && x.is_one())
    }

    pub fn try_mul(&self, other: &RingMatrix) -> Result<RingMatrix> {
        if self.group != other.group {
            return Err(Error::BaseMismatch("matrix product".into()));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &RingElement)>> = BTreeMap::new();
        for ((k, j), y) in &other.entries {
            by_row.entry(*k).or_default().push((*j, y));
        }
        let mut acc: BTreeMap<(usize, usize), RingElement> = BTreeMap::new();
        for ((i, k), x) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (j, y) in row {
                    let p = x * y;
                    match acc.get_mut(&(*i, *j)) {
                        Some(cur) => *cur = &*cur + &p,
                        None => {
                            acc.insert((*i, *j), p);
                        }
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(RingMatrix { rows: self.rows, cols: other.cols, group: self.group.clone(), entries: acc })
    }

    pub fn try_add(&self, other: &RingMatrix) -> Result<RingMatrix> {
        if self.group != other.group {
            return Err(Error::BaseMismatch("matrix sum".into()));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let mut out = self.clone();
        for ((i, j), y) in &other.entries {
            out.add_to(*i, *j, y);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.try_add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> RingMatrix {
        let mut out = RingMatrix::zero(&self.group, self.rows, self.cols);
        for ((i, j), x) in &self.entries {
            out.set(*i, *j, x.scale(k));
        }
        out
    }

    pub fn mul_vec(&self, v: &[RingElement]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length");
        let mut out = vec![RingElement::zero(&self.group); self.rows];
        for ((i, j), x) in &self.entries {
            if !v[*j].is_zero() {
                out[*i] = &out[*i] + &(x * &v[*j]);
            }
        }
        out
    }

    pub fn transpose(&self) -> RingMatrix {
        let mut out = RingMatrix::zero(&self.group, self.cols, self.rows);
        for ((i, j), x) in &self.entries {
            out.set(*j, *i, x.clone());
        }
        out
    }

    /// Entrywise pushforward along a group homomorphism.
    pub fn map_hom(&self, f: &GroupHom) -> RingMatrix {
        let mut out = RingMatrix::zero(f.cod(), self.rows, self.cols);
        for ((i, j), x) in &self.entries {
            out.set(*i, *j, x.map_hom(f));
        }
        out
    }

    pub fn map_entries(&self, g: &Group, f: impl Fn(&RingElement) -> RingElement) -> RingMatrix {
        let mut out = RingMatrix::zero(g, self.rows, self.cols);
        for ((i, j), x) in &self.entries {
            out.set(*i, *j, f(x));
        }
        out
    }

    pub fn block_diag(blocks: &[RingMatrix]) -> RingMatrix {
        let g = blocks[0].group.clone();
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = RingMatrix::zero(&g, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for ((i, j), x) in &b.entries {
                out.set(r0 + i, c0 + j, x.clone());
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Copies `b` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, b: &RingMatrix) {
        for ((i, j), x) in &b.entries {
            self.set(r0 + i, c0 + j, x.clone());
        }
    }

    /// `Some` of (permutation column->row, signed elements) when every column
    /// and row has exactly one entry `±g`.
    pub fn monomial_data(&self) -> Option<Vec<(usize, i64, Elem)>> {
        if self.rows != self.cols {
            return None;
        }
        let mut col: Vec<Option<(usize, i64, Elem)>> = vec![None; self.cols];
        let mut row_used = vec![false; self.rows];
        for ((i, j), x) in &self.entries {
            let (s, g) = x.as_monomial()?;
            if col[*j].is_some() || row_used[*i] {
                return None;
            }
            col[*j] = Some((*i, s, g));
            row_used[*i] = true;
        }
        col.into_iter().collect()
    }

    pub fn is_monomial(&self) -> bool {
        self.monomial_data().is_some()
    }

    /// Diagonal with `+g` entries.
    pub fn positive_diagonal(&self) -> Option<Vec<Elem>> {
        let data = self.monomial_data()?;
        data.into_iter().enumerate().map(|(j, (i, s, g))| (i == j && s == 1).then_some(g)).collect()
    }

    /// Inverse of a monomial matrix.
    pub fn monomial_inverse(&self) -> Option<RingMatrix> {
        let data = self.monomial_data()?;
        let mut out = RingMatrix::zero(&self.group, self.rows, self.cols);
        for (j, (i, s, g)) in data.into_iter().enumerate() {
            out.set(j, i, RingElement::term(&self.group, self.group.inv(&g), s));
        }
        Some(out)
    }

    pub fn diagonal(&self) -> Vec<RingElement> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }
}

impl Mul for &RingMatrix {
    type Output = RingMatrix;
    fn mul(self, o: &RingMatrix) -> RingMatrix {
        self.try_mul(o).expect("compatible matrices")
    }
}

impl Add for &RingMatrix {
    type Output = RingMatrix;
    fn add(self, o: &RingMatrix) -> RingMatrix {
        self.try_add(o).expect("compatible matrices")
    }
}

impl Sub for &RingMatrix {
    type Output = RingMatrix;
    fn sub(self, o: &RingMatrix) -> RingMatrix {
        self.try_sub(o).expect("compatible matrices")
    }
}

pub fn zero_vector(g: &Group, n: usize) -> Vector {
    vec![RingElement::zero(g); n]
}

pub fn vec_add(a: &[RingElement], b: &[RingElement]) -> Vector {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shadowtrace::algebra::group::{alternating, cyclic, dihedral, klein, product, quaternion, symmetric, trivial};
use shadowtrace::algebra::{Elem, Group, GroupHom, RingElement, RingMatrix};
use shadowtrace::bicat::{Bimodule, RingObject, TwoCell};
use shadowtrace::morita::{base_change_pair, RingHom};
use shadowtrace::trace::{canonical_dual, DualPair};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every group of order at most 8 that the library names, up to isomorphism.
pub fn small_groups() -> Vec<Group> {
    let mut gs = vec![trivial()];
    for n in 2..=8 {
        gs.push(cyclic(n));
    }
    gs.extend([klein(), symmetric(3), dihedral(4), quaternion(), product(&cyclic(2), &cyclic(4))]);
    gs
}

pub fn pick_group(r: &mut Rng8) -> Group {
    small_groups().choose(r).unwrap().clone()
}

pub fn pick_hom(r: &mut Rng8, a: &Group, c: &Group) -> GroupHom {
    GroupHom::all_homs(a, c).choose(r).unwrap().clone()
}

pub fn rand_elem(r: &mut Rng8, g: &Group) -> RingElement {
    let els = g.elements();
    let k = r.gen_range(0..=2);
    RingElement::from_terms(g, (0..k).map(|_| (els.choose(r).unwrap().clone(), r.gen_range(-2..=2))))
}

pub fn rand_matrix(r: &mut Rng8, g: &Group, rows: usize, cols: usize) -> RingMatrix {
    RingMatrix::from_fn(g, rows, cols, |_, _| rand_elem(r, g))
}

fn elementary(g: &Group, n: usize, i: usize, j: usize, x: &RingElement) -> RingMatrix {
    let mut m = RingMatrix::identity(g, n);
    m.set(i, j, x.clone());
    m
}

/// A random invertible `n x n` matrix over `Z[G]` with its inverse.
pub fn rand_invertible(r: &mut Rng8, g: &Group, n: usize) -> (RingMatrix, RingMatrix) {
    let mut p = RingMatrix::identity(g, n);
    let mut q = RingMatrix::identity(g, n);
    if n < 2 {
        return (p, q);
    }
    for _ in 0..2 {
        let i = r.gen_range(0..n);
        let mut j = r.gen_range(0..n);
        while j == i {
            j = r.gen_range(0..n);
        }
        let x = rand_elem(r, g);
        p = &p * &elementary(g, n, i, j, &x);
        q = &elementary(g, n, i, j, &x.scale(-1)) * &q;
    }
    (p, q)
}

/// A random monomial invertible matrix: a signed permutation with group entries.
pub fn rand_monomial(r: &mut Rng8, g: &Group, n: usize) -> (RingMatrix, RingMatrix) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(r);
    let els = g.elements();
    let mut p = RingMatrix::zero(g, n, n);
    for (j, &i) in perm.iter().enumerate() {
        let s = if r.gen_bool(0.5) { 1 } else { -1 };
        p.set(i, j, RingElement::term(g, els.choose(r).unwrap().clone(), s));
    }
    let q = p.monomial_inverse().unwrap();
    (p, q)
}

/// `C_f` for an injective `f: D -> C`, if there is one.
fn induced_piece(r: &mut Rng8, c: &Group, d: &Group) -> Option<Bimodule> {
    let homs: Vec<GroupHom> = GroupHom::all_homs(d, c).into_iter().filter(|h| h.is_injective()).collect();
    let f = homs.choose(r)?;
    Some(base_change_pair(&RingHom::from_group_hom(f)).ok()?.right().clone())
}

/// A random `(C, D)`-bimodule of rank `1..=max_rank` whose left action is
/// monomial, so that it has a canonical dual.
pub fn rand_monomial_bimodule(r: &mut Rng8, c: &Group, d: &Group, max_rank: usize) -> Bimodule {
    let rank = r.gen_range(1..=max_rank);
    if r.gen_bool(0.2) {
        if let Some(m) = induced_piece(r, c, d) {
            if m.rank() <= max_rank {
                return m;
            }
        }
    }
    let psis: Vec<GroupHom> = (0..rank).map(|_| pick_hom(r, c, d)).collect();
    let m = Bimodule::diagonal(c, d, &psis).unwrap();
    let (p, q) = rand_monomial(r, d, rank);
    m.conjugate(&p, &q).unwrap()
}

/// A random `(C, D)`-bimodule; the action need not be monomial.
pub fn rand_bimodule(r: &mut Rng8, c: &Group, d: &Group, max_rank: usize) -> Bimodule {
    let m = rand_monomial_bimodule(r, c, d, max_rank);
    if r.gen_bool(0.5) {
        let (p, q) = rand_invertible(r, d, m.rank());
        m.conjugate(&p, &q).unwrap()
    } else {
        m
    }
}

/// A random 2-cell `dom => cod`: the average `Σ_c ρ_cod(c) A ρ_dom(c^-1)`
/// of a random right-linear `A`.
pub fn rand_twocell(r: &mut Rng8, dom: &Bimodule, cod: &Bimodule) -> TwoCell {
    let g = dom.source_group().clone();
    let tg = dom.target_group().clone();
    let a = rand_matrix(r, &tg, cod.rank(), dom.rank());
    let mut t = RingMatrix::zero(&tg, cod.rank(), dom.rank());
    for c in g.elements() {
        let x = &(&cod.act(&c) * &a) * &dom.act(&g.inv(&c));
        t = &t + &x;
    }
    TwoCell::new(dom, cod, t).expect("averaged matrices are equivariant")
}

/// A random monomial `(C, D)`-bimodule with its canonical dual, keeping both ranks small.
pub fn rand_pair(r: &mut Rng8, c: &Group, d: &Group) -> Option<DualPair> {
    for _ in 0..20 {
        let m = rand_monomial_bimodule(r, c, d, 2);
        if let Ok(w) = canonical_dual(&m) {
            if w.n().rank() <= 3 {
                return Some(w);
            }
        }
    }
    None
}

pub fn obj(g: &Group) -> RingObject {
    RingObject::new(g)
}

/// Injective homomorphisms of interest for base change, with the two named pairs first.
pub fn inclusions() -> Vec<GroupHom> {
    let pairs = [
        (alternating(3), symmetric(3)),
        (cyclic(2), cyclic(4)),
        (cyclic(2), symmetric(3)),
        (cyclic(3), cyclic(6)),
        (cyclic(2), dihedral(4)),
        (cyclic(4), dihedral(4)),
        (cyclic(4), quaternion()),
        (klein(), dihedral(4)),
        (trivial(), cyclic(3)),
    ];
    pairs.iter().map(|(a, c)| GroupHom::all_homs(a, c).into_iter().find(|h| h.is_injective()).unwrap()).collect()
}

pub fn elem(g: &Group, s: &str) -> Elem {
    g.parse_elem(s).unwrap()
}

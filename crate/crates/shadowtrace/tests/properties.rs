mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::Rng;

use common::{obj, pick_hom, rand_bimodule, rand_matrix, rand_pair, rand_twocell, rng, small_groups};
use shadowtrace::algebra::group::{alternating, cyclic, dihedral, klein, product, quaternion, symmetric};
use shadowtrace::algebra::snf::{determinant, int_mul};
use shadowtrace::algebra::{smith_normal_form, twisted_conjugacy_classes, Elem, Group, GroupHom, RingElement, RingMatrix};
use shadowtrace::bicat::{hcompose, shadow_map, theta, ShadowMap, TwoCell};
use shadowtrace::fixed::{circle_self_map, coker_order, lefschetz_via_homology, reidemeister_trace, torus2_self_map};
use shadowtrace::morita::matrix_morita;
use shadowtrace::nerve::{pi0, NerveTuple, TwistedCyclicNerve};
use shadowtrace::ringoid::{class_of_endomorphism, free_module_skeleton, ringoid_shadow, RingoidBimodule};
use shadowtrace::trace::{hattori_stallings, mate, trace, trace_left};

/// Groups of order at most 12.
fn groups_to_12() -> Vec<Group> {
    let mut gs: Vec<Group> = (1..=12).map(cyclic).collect();
    gs.extend([
        klein(),
        symmetric(3),
        dihedral(4),
        quaternion(),
        product(&cyclic(2), &cyclic(4)),
        alternating(4),
        dihedral(5),
        dihedral(6),
    ]);
    gs
}

fn conj_orbits(g: &Group) -> usize {
    let mut seen = BTreeSet::new();
    let mut n = 0;
    for x in g.elements() {
        if seen.insert(x.clone()) {
            n += 1;
            for h in g.elements() {
                seen.insert(g.conj(&h, &x));
            }
        }
    }
    n
}

fn lat(v: &[i64]) -> Elem {
    Elem::Lat(v.to_vec())
}

/// A random invertible matrix over `Z[Z^2]` from elementary and monomial factors.
fn lattice_invertible(r: &mut common::Rng8, g: &Group, n: usize) -> (RingMatrix, RingMatrix) {
    let mut p = RingMatrix::identity(g, n);
    let mut q = RingMatrix::identity(g, n);
    for i in 0..n {
        let e = lat(&[r.gen_range(-1..=1), r.gen_range(-1..=1)]);
        let s = if r.gen_bool(0.5) { 1 } else { -1 };
        let mut d = RingMatrix::identity(g, n);
        d.set(i, i, RingElement::term(g, e.clone(), s));
        let mut di = RingMatrix::identity(g, n);
        di.set(i, i, RingElement::term(g, g.inv(&e), s));
        p = &p * &d;
        q = &di * &q;
    }
    if n >= 2 {
        let (i, j) = if r.gen_bool(0.5) { (0, 1) } else { (1, 0) };
        let x = RingElement::from_terms(g, [(lat(&[r.gen_range(-1..=1), 0]), r.gen_range(-2..=2)), (lat(&[0, 1]), r.gen_range(-1..=1))]);
        let mut e = RingMatrix::identity(g, n);
        e.set(i, j, x.clone());
        let mut ei = RingMatrix::identity(g, n);
        ei.set(i, j, x.scale(-1));
        p = &p * &e;
        q = &ei * &q;
    }
    (p, q)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(m in prop::collection::vec(prop::collection::vec(-20i64..=20, 3), 1..=3)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(int_mul(&int_mul(&s.u_i64(), &m), &s.v_i64()), s.d_matrix());
        prop_assert_eq!(determinant(&s.u_i64()).magnitude().clone(), 1u32.into());
        prop_assert_eq!(determinant(&s.v_i64()).magnitude().clone(), 1u32.into());
        let d = s.diagonal_i64();
        prop_assert!(d.iter().all(|x| *x >= 0));
        for w in d.windows(2) {
            prop_assert!(w[0] == 0 && w[1] == 0 || w[0] != 0 && w[1] % w[0] == 0);
        }
    }

    #[test]
    fn class_labels_are_twisted_conjugation_invariant(gi in 0usize..19, fi: prop::sample::Index, xi: prop::sample::Index) {
        let g = groups_to_12()[gi].clone();
        let endos = GroupHom::endomorphisms(&g);
        let phi = fi.get(&endos);
        let c = twisted_conjugacy_classes(&g, phi).unwrap();
        let els = g.elements();
        let x = xi.get(&els);
        for h in &els {
            let y = g.mul(&g.mul(h, x), &g.inv(&phi.apply(h)));
            prop_assert_eq!(c.class_of(x), c.class_of(&y));
        }
        if phi.is_identity() {
            prop_assert_eq!(c.count(), Some(conj_orbits(&g)));
        }
    }

    #[test]
    fn lattice_classes_count_det(f in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 2)) {
        let z2 = Group::free_abelian(2);
        let phi = GroupHom::from_matrix(&z2, &z2, &f).unwrap();
        let c = twisted_conjugacy_classes(&z2, &phi).unwrap();
        let det = (1 - f[0][0]) * (1 - f[1][1]) - f[0][1] * f[1][0];
        prop_assert_eq!(c.count(), if det == 0 { None } else { Some(det.unsigned_abs() as usize) });
        prop_assert_eq!(coker_order(&f), if det == 0 { None } else { Some(det.unsigned_abs()) });
    }

    #[test]
    fn theta_is_an_involution(seed: u64) {
        let mut r = rng(seed);
        let gs = small_groups();
        let (a, b) = (gs[r.gen_range(0..gs.len())].clone(), gs[r.gen_range(0..gs.len())].clone());
        let m = rand_bimodule(&mut r, &a, &b, 2);
        let n = rand_bimodule(&mut r, &b, &a, 2);
        let t = theta(&m, &n).unwrap();
        let back = theta(&n, &m).unwrap().after(&t).unwrap();
        prop_assert!(back.agrees_with(&ShadowMap::identity(t.dom()), 0));
    }

    #[test]
    fn shadow_is_functorial(seed: u64) {
        let mut r = rng(seed);
        let gs = small_groups();
        let g = gs[r.gen_range(0..gs.len())].clone();
        let q0 = rand_bimodule(&mut r, &g, &g, 2);
        let q1 = rand_bimodule(&mut r, &g, &g, 2);
        let q2 = rand_bimodule(&mut r, &g, &g, 2);
        let a = rand_twocell(&mut r, &q0, &q1);
        let b = rand_twocell(&mut r, &q1, &q2);
        let ba = shadow_map(&b.after(&a).unwrap()).unwrap();
        let sep = shadow_map(&b).unwrap().after(&shadow_map(&a).unwrap()).unwrap();
        prop_assert!(ba.agrees_with(&sep, 0));
        let id = shadow_map(&TwoCell::identity(&q0)).unwrap();
        prop_assert!(id.agrees_with(&ShadowMap::identity(id.dom()), 0));
    }

    #[test]
    fn five_step_trace_matches_fast_path_and_mate(seed: u64) {
        let mut r = rng(seed);
        let gs = small_groups();
        let (c, d) = (gs[r.gen_range(0..gs.len())].clone(), gs[r.gen_range(0..gs.len())].clone());
        let Some(w) = rand_pair(&mut r, &c, &d) else { return Ok(()) };
        let m = w.m().clone();
        let q = rand_bimodule(&mut r, &c, &c, 1);
        let p = rand_bimodule(&mut r, &d, &d, 2);
        let f = rand_twocell(&mut r, &hcompose(&q, &m).unwrap(), &hcompose(&m, &p).unwrap());
        let tr = trace(&f, &w, &q, &p).unwrap();
        prop_assert!(tr.agrees_with(&hattori_stallings(&f, &m, &q, &p).unwrap(), 0));
        let g = mate(&f, &w, &q, &p).unwrap();
        prop_assert!(trace_left(&g, &w, &q, &p).unwrap().agrees_with(&tr, 0));
    }

    #[test]
    fn circle_family(d in -6i64..=6) {
        let (c, m) = circle_self_map(d).unwrap();
        m.validate(&c).unwrap();
        let r = reidemeister_trace(&c, &m).unwrap();
        prop_assert_eq!(r.lefschetz, 1 - d);
        prop_assert_eq!(lefschetz_via_homology(&c, &m).unwrap(), 1 - d);
        prop_assert_eq!(r.nielsen as i64, (1 - d).abs());
    }

    #[test]
    fn torus_family(f in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 2), seed: u64) {
        let (c, m) = torus2_self_map(&f).unwrap();
        prop_assert!((c.boundary(1) * c.boundary(2)).is_zero());
        let det = (1 - f[0][0]) * (1 - f[1][1]) - f[0][1] * f[1][0];
        let r = reidemeister_trace(&c, &m).unwrap();
        prop_assert_eq!(r.lefschetz, det);
        prop_assert_eq!(lefschetz_via_homology(&c, &m).unwrap(), det);
        if det != 0 {
            prop_assert_eq!(r.nielsen, det.unsigned_abs() as usize);
            prop_assert_eq!(r.classes.count(), Some(det.unsigned_abs() as usize));
        }
        // a change of free basis leaves the trace alone
        let mut rr = rng(seed);
        let z2 = c.base().clone();
        let p: Vec<_> = c.ranks().iter().map(|n| lattice_invertible(&mut rr, &z2, *n)).collect();
        let (c2, m2) = m.rebased(&c, &p).unwrap();
        prop_assert!((c2.boundary(1) * c2.boundary(2)).is_zero());
        prop_assert_eq!(reidemeister_trace(&c2, &m2).unwrap().trace, r.trace);
    }

    #[test]
    fn nerve_simplicial_identities(gi in 0usize..19, fi: prop::sample::Index, n in 1usize..=4, seed: u64) {
        let g = groups_to_12()[gi].clone();
        let endos = GroupHom::endomorphisms(&g);
        let nv = TwistedCyclicNerve::new(fi.get(&endos)).unwrap();
        let els = g.elements();
        let mut r = rng(seed);
        let t = NerveTuple::new((0..=n).map(|_| els[r.gen_range(0..els.len())].clone()).collect()).unwrap();
        let d = |i: usize, x: &NerveTuple| nv.face(i, x).unwrap();
        let s = |j: usize, x: &NerveTuple| nv.degeneracy(j, x).unwrap();
        for j in 0..=n {
            for i in 0..j {
                if n >= 2 {
                    prop_assert_eq!(d(i, &d(j, &t)), d(j - 1, &d(i, &t)));
                }
            }
        }
        for j in 0..=n {
            let sj = s(j, &t);
            for i in 0..=n + 1 {
                let lhs = d(i, &sj);
                if i < j {
                    prop_assert_eq!(lhs, s(j - 1, &d(i, &t)));
                } else if i == j || i == j + 1 {
                    prop_assert_eq!(&lhs, &t);
                } else {
                    prop_assert_eq!(lhs, s(j, &d(i - 1, &t)));
                }
            }
            for i in 0..=j {
                prop_assert_eq!(s(i, &s(j, &t)), s(j + 1, &s(i, &t)));
            }
        }
    }

    #[test]
    fn components_match_twisted_classes(gi in 0usize..19, fi: prop::sample::Index) {
        let g = groups_to_12()[gi].clone();
        let endos = GroupHom::endomorphisms(&g);
        let phi = fi.get(&endos);
        let p = pi0(&g, phi).unwrap();
        prop_assert!(p.is_bijection());
        prop_assert_eq!(Some(p.count()), twisted_conjugacy_classes(&g, phi).unwrap().count());
    }

    #[test]
    fn ringoid_class_is_the_trace(seed: u64, rank in 1usize..=3) {
        let mut r = rng(seed);
        let gs = [cyclic(1), cyclic(2), cyclic(3), symmetric(3)];
        let g = gs[r.gen_range(0..gs.len())].clone();
        let sk = free_module_skeleton(&obj(&g), 3).unwrap();
        let rs = if r.gen_bool(0.5) {
            ringoid_shadow(&sk, &RingoidBimodule::untwisted(&sk)).unwrap()
        } else {
            let phi = pick_hom(&mut r, &g, &g);
            let q = shadowtrace::bicat::Bimodule::left_twisted(&phi);
            ringoid_shadow(&sk, &RingoidBimodule::twisted(&sk, &q).unwrap()).unwrap()
        };
        let f = rand_matrix(&mut r, &g, rank, rank);
        let c = class_of_endomorphism(&rs, rank, &f).unwrap();
        prop_assert!(c.agrees(), "{:?}", c);
    }

    #[test]
    fn matrix_morita_witnesses(gi in 0usize..6, n in 1usize..=3) {
        let g = small_groups()[gi].clone();
        let w = matrix_morita(&obj(&g), n).unwrap();
        prop_assert_eq!(w.identities(), [true; 4]);
        let (a, b) = w.euler_composites().unwrap();
        prop_assert!(a.agrees_with(&ShadowMap::identity(a.dom()), 0));
        prop_assert!(b.agrees_with(&ShadowMap::identity(b.dom()), 0));
    }
}

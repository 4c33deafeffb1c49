//! One line per acceptance criterion. Exits non-zero if any line fails.

mod common;

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;

use common::*;
use shadowtrace::algebra::group::{cyclic, dihedral, quaternion, symmetric, trivial};
use shadowtrace::algebra::{twisted_conjugacy_classes, ClassLabel, Group, GroupHom, RingElement};
use shadowtrace::bicat::{hcompose, shadow, shadow_map, theta, Bimodule, ShadowMap, TwoCell};
use shadowtrace::fixed::{
    circle_fixed_points, circle_self_map, coker_order, fixed_point_class_sum, lefschetz_via_homology, reidemeister_trace, torus2_self_map,
    torus_fixed_points,
};
use shadowtrace::morita::{
    base_change_pair, composite_of, forget_restriction, matrix_morita, restricted_shadow_trace, restriction, transfer_oracle,
    twisted_unit_morita, CompositeOrder, MatrixUnitModel, RingHom,
};
use shadowtrace::nerve::{pi0, TwistedCyclicNerve};
use shadowtrace::ringoid::{class_of_endomorphism, free_module_skeleton, ringoid_shadow, transport_square, RingoidBimodule};
use shadowtrace::trace::{dual_twocell, euler_characteristic, trace, trace_eps, trace_eps_raw, trace_eta, trace_eta_raw, trace_left};

type Outcome = std::result::Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn ok<T, E: std::fmt::Debug>(r: std::result::Result<T, E>, what: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e:?}"))
}

fn id_on(m: &ShadowMap) -> ShadowMap {
    ShadowMap::identity(m.dom())
}

fn nonzero(m: &ShadowMap) -> bool {
    m.dom().window_generators(0).iter().any(|l| !m.on_generator(l).is_zero())
}

// 1

fn shadow_axioms() -> Outcome {
    let mut r = rng(1);
    let (mut assoc, mut unit, mut invol) = (0, 0, 0);
    while assoc.min(unit).min(invol) < 200 {
        let (c, d, e) = (pick_group(&mut r), pick_group(&mut r), pick_group(&mut r));
        let m = rand_bimodule(&mut r, &c, &d, 3);
        let n = rand_bimodule(&mut r, &d, &e, 3);
        let p = rand_bimodule(&mut r, &e, &c, 3);
        if m.rank() * n.rank() * p.rank() > 12 {
            continue;
        }
        // θ_{M⊙N,P} = θ_{N,P⊙M} ∘ θ_{M,N⊙P} with identity associators
        let lhs = ok(theta(&ok(hcompose(&m, &n), "compose")?, &p), "theta")?;
        let np = ok(hcompose(&n, &p), "compose")?;
        let pm = ok(hcompose(&p, &m), "compose")?;
        let rhs = ok(ok(theta(&n, &pm), "theta")?.after(&ok(theta(&m, &np), "theta")?), "after")?;
        ensure(lhs.agrees_with(&rhs, 0), || format!("associativity diagram fails for {m:?} {n:?} {p:?}"))?;
        assoc += 1;

        let q = rand_bimodule(&mut r, &c, &c, 3);
        let u = Bimodule::unit(&obj(&c));
        let l = ok(shadow_map(&TwoCell::left_unitor(&q)), "unitor")?;
        let rr = ok(shadow_map(&TwoCell::right_unitor(&q)), "unitor")?;
        let t1 = ok(theta(&q, &u), "theta")?;
        let t2 = ok(theta(&u, &q), "theta")?;
        ensure(ok(l.after(&t1), "after")?.agrees_with(&rr, 0), || format!("l θ = r fails for {q:?}"))?;
        ensure(ok(rr.after(&t2), "after")?.agrees_with(&l, 0), || format!("r θ = l fails for {q:?}"))?;
        unit += 1;

        let nn = rand_bimodule(&mut r, &d, &c, 3);
        let a = ok(theta(&m, &nn), "theta")?;
        let b = ok(theta(&nn, &m), "theta")?;
        ensure(ok(b.after(&a), "after")?.agrees_with(&id_on(&a), 0), || format!("θθ ≠ id for {m:?} {nn:?}"))?;
        invol += 1;
    }
    Ok(format!("{assoc} associativity, {unit} unit and {invol} involution instances"))
}

// 2

fn trace_structure() -> Outcome {
    let mut r = rng(2);
    let mut counts = [0usize; 4];
    let mut nontrivial = 0;
    let mut guard = 0;
    while counts.iter().any(|&k| k < 100) {
        guard += 1;
        if guard > 5000 {
            return Err(format!("could not generate enough instances: {counts:?}"));
        }
        let (c, d, e) = (pick_group(&mut r), pick_group(&mut r), pick_group(&mut r));
        let Some(w) = rand_pair(&mut r, &c, &d) else { continue };
        let (m, n) = (w.m().clone(), w.n().clone());
        let q = rand_bimodule(&mut r, &c, &c, 2);
        let p = rand_bimodule(&mut r, &d, &d, 2);

        let g = rand_twocell(&mut r, &ok(hcompose(&n, &q), "compose")?, &ok(hcompose(&p, &n), "compose")?);
        let lhs = ok(trace_left(&g, &w, &q, &p), "trace_left")?;
        let rhs = ok(trace(&ok(dual_twocell(&g, &w, &q, &p), "dual")?, &w, &q, &p), "trace")?;
        ensure(lhs.agrees_with(&rhs, 0), || format!("tr(g) ≠ tr(g*) over {} -> {}", c.name(), d.name()))?;
        counts[0] += 1;
        nontrivial += nonzero(&lhs) as usize;

        if let Some(w2) = rand_pair(&mut r, &d, &e) {
            let m2 = w2.m().clone();
            let q3 = rand_bimodule(&mut r, &e, &e, 2);
            let f1 = rand_twocell(&mut r, &ok(hcompose(&q, &m), "compose")?, &ok(hcompose(&m, &p), "compose")?);
            let f2 = rand_twocell(&mut r, &ok(hcompose(&p, &m2), "compose")?, &ok(hcompose(&m2, &q3), "compose")?);
            let f = ok(ok(f2.whisker_left(&m), "whisker")?.after(&ok(f1.whisker_right(&m2), "whisker")?), "vertical composite")?;
            let w12 = ok(w.compose(&w2), "compose pairs")?;
            let lhs = ok(trace(&f, &w12, &q, &q3), "trace")?;
            let rhs = ok(ok(trace(&f2, &w2, &p, &q3), "trace")?.after(&ok(trace(&f1, &w, &q, &p), "trace")?), "after")?;
            ensure(lhs.agrees_with(&rhs, 0), || "composite trace differs".into())?;
            counts[1] += 1;
            nontrivial += nonzero(&lhs) as usize;
        }

        let f = rand_twocell(&mut r, &ok(hcompose(&q, &m), "compose")?, &ok(hcompose(&m, &p), "compose")?);
        let q0 = rand_bimodule(&mut r, &c, &c, 2);
        let p1 = rand_bimodule(&mut r, &d, &d, 2);
        let gq = rand_twocell(&mut r, &q0, &q);
        let hp = rand_twocell(&mut r, &p, &p1);
        let tight = ok(ok(hp.whisker_left(&m), "whisker")?.after(&ok(f.after(&ok(gq.whisker_right(&m), "whisker")?), "after")?), "after")?;
        let lhs = ok(
            ok(ok(shadow_map(&hp), "shadow")?.after(&ok(trace(&f, &w, &q, &p), "trace")?), "after")?.after(&ok(shadow_map(&gq), "shadow")?),
            "after",
        )?;
        let rhs = ok(trace(&tight, &w, &q0, &p1), "trace")?;
        ensure(lhs.agrees_with(&rhs, 0), || "tightening fails".into())?;
        counts[2] += 1;
        nontrivial += nonzero(&lhs) as usize;

        let a = ok(trace_eta(&w, &q), "eta")?;
        let b = ok(trace_eta_raw(&w, &q), "eta raw")?;
        let x = ok(trace_eps(&w, &p), "eps")?;
        let y = ok(trace_eps_raw(&w, &p), "eps raw")?;
        ensure(a.agrees_with(&b, 0) && x.agrees_with(&y, 0), || "shortcut differs from the definition".into())?;
        counts[3] += 1;
    }
    Ok(format!(
        "{} dual-trace, {} composite, {} tightening, {} shortcut instances, {nontrivial} nonzero traces",
        counts[0], counts[1], counts[2], counts[3]
    ))
}

// 3

fn morita() -> Outcome {
    let mut r = rng(3);
    let mut checked = 0;
    for g in [trivial(), cyclic(2), symmetric(3)] {
        let a = obj(&g);
        for n in 1..=3 {
            let w = ok(matrix_morita(&a, n), "matrix_morita")?;
            ensure(w.identities() == [true; 4], || format!("identities fail for M_{n}({})", g.name()))?;
            let (x, y) = ok(w.euler_composites(), "euler")?;
            ensure(x.agrees_with(&id_on(&x), 0) && y.agrees_with(&id_on(&y), 0), || "χ composites".into())?;
            let mut qs = vec![Bimodule::unit(&a)];
            for phi in GroupHom::automorphisms(&g) {
                qs.push(Bimodule::left_twisted(&phi));
            }
            qs.push(rand_bimodule(&mut r, &g, &g, 2));
            for q in &qs {
                let (eta, eps) = ok(w.conjugation_maps(q), "conjugation")?;
                let ee = ok(eps.after(&eta), "after")?;
                let ff = ok(eta.after(&eps), "after")?;
                ensure(ee.agrees_with(&id_on(&ee), 0) && ff.agrees_with(&id_on(&ff), 0), || {
                    format!("tr(η), tr(ε) not inverse for M_{n}({})", g.name())
                })?;
                checked += 1;
            }
        }
    }
    let s3 = symmetric(3);
    for psi in GroupHom::automorphisms(&s3) {
        let w = ok(twisted_unit_morita(&psi), "twisted unit")?;
        ensure(w.identities() == [true; 4], || "twisted unit identities".into())?;
    }
    let mut ranks = Vec::new();
    for n in 1..=3 {
        let model = ok(MatrixUnitModel::new(&s3, n), "matrix units")?;
        let hh = model.hh0();
        let corner = ok(shadow(&Bimodule::unit(&shadowtrace::bicat::RingObject::amplified(&s3, n))), "shadow")?;
        ensure(hh.structure() == (Some(3), vec![]) && corner.structure() == (Some(3), vec![]), || {
            format!("HH0(M_{n}(Z[S3])) is {}", hh.describe())
        })?;
        ranks.push(hh.describe());
    }
    Ok(format!("9 witnesses, {checked} conjugation pairs; HH0(M_n(Z[S3])) = {}", ranks.join(", ")))
}

// 4

fn base_change() -> Outcome {
    let mut r = rng(4);
    let incs = inclusions();
    let mut squares = 0;
    for (i, f) in incs.iter().enumerate() {
        let rh = RingHom::from_group_hom(f);
        let bc = ok(base_change_pair(&rh), "base change")?;
        let (a, c) = (f.dom().clone(), f.cod().clone());
        let chi = ok(euler_characteristic(bc.pair()), "χ")?;
        ensure(chi.agrees_with(&ok(restriction(&rh), "restriction")?, 0), || format!("χ(_fC) ≠ <f> for {}", c.name()))?;
        let mut qs = vec![Bimodule::unit(&obj(&c))];
        qs.push(rand_bimodule(&mut r, &c, &c, 2));
        for k in GroupHom::automorphisms(&c).into_iter().take(3) {
            qs.push(Bimodule::left_twisted(&k));
        }
        for q in &qs {
            let lhs = ok(forget_restriction(&bc, q), "forget")?;
            let rhs = ok(restricted_shadow_trace(&bc, q), "tr(ε)")?;
            ensure(lhs.agrees_with(&rhs, 0), || format!("hom-set square fails for {} in {}", a.name(), c.name()))?;
            squares += 1;
        }
        // transport squares, for the pair (_fC, C_f) and the pair (C_f, _fC)
        let reps = if i < 2 { 3 } else { 1 };
        for _ in 0..reps {
            let q = Bimodule::left_twisted(&pick_hom(&mut r, &a, &a));
            let p = Bimodule::left_twisted(&pick_hom(&mut r, &c, &c));
            let m = bc.pair().m().clone();
            let cell = rand_twocell(&mut r, &ok(hcompose(&q, &m), "compose")?, &ok(hcompose(&m, &p), "compose")?);
            let rep = ok(transport_square(&cell, bc.pair(), &q, &p, 2), "transport")?;
            ensure(rep.all(), || format!("{rep:?} for {} in {}", a.name(), c.name()))?;
            squares += 1;
            if i < 2 {
                let q = Bimodule::left_twisted(&pick_hom(&mut r, &c, &c));
                let p = Bimodule::left_twisted(&pick_hom(&mut r, &a, &a));
                let m = bc.right_pair().m().clone();
                let cell = rand_twocell(&mut r, &ok(hcompose(&q, &m), "compose")?, &ok(hcompose(&m, &p), "compose")?);
                let rep = ok(transport_square(&cell, bc.right_pair(), &q, &p, 2), "transport")?;
                ensure(rep.all(), || format!("{rep:?} for {} over {}", c.name(), a.name()))?;
                squares += 1;
            }
        }
    }
    Ok(format!("{} inclusions including A3<S3 and Z/2<Z/4, {squares} diagrams", incs.len()))
}

// 5

fn restriction_transfer() -> Outcome {
    let mut reported = Vec::new();
    for f in inclusions() {
        let bc = ok(base_change_pair(&RingHom::from_group_hom(&f)), "base change")?;
        let idx = bc.index() as i64;
        let rep = ok(composite_of(&bc, CompositeOrder::ResTrf), "composite")?;
        ensure(rep.composite.agrees_with(&rep.euler, 0), || "composite ≠ χ(_fC_f)".into())?;
        ensure(rep.composite.agrees_with(&rep.oracle, 0), || "composite ≠ oracle".into())?;
        let trf = ok(shadowtrace::morita::transfer_of(&bc), "transfer")?;
        ensure(trf.agrees_with(&ok(transfer_oracle(&bc), "oracle")?, 0), || "transfer ≠ oracle".into())?;
        let other = ok(composite_of(&bc, CompositeOrder::TrfRes), "composite")?;
        ensure(other.agrees, || "the other composite disagrees".into())?;
        let dom = rep.composite.dom().clone();
        let a = f.dom();
        let e = dom.normalize_vector(&[RingElement::one(a)]);
        ensure(rep.composite.apply(&e) == e.scale(idx), || format!("identity class not scaled by {idx}"))?;
        let scalar = dom.generators().unwrap().iter().all(|l| {
            let x = shadowtrace::bicat::ShadowElement::generator(&dom, l.clone(), 1);
            rep.composite.apply(&x) == x.scale(idx)
        });
        reported.push(format!("{}<{}:{}", a.name(), f.cod().name(), if scalar { "scalar" } else { "not scalar" }));
    }
    Ok(format!("reported: {}", reported.join(" ")))
}

// 6

fn ringoid_route() -> Outcome {
    let mut r = rng(6);
    let groups = [trivial(), cyclic(2), symmetric(3)];
    let mut shadows = Vec::new();
    for g in &groups {
        let sk = ok(free_module_skeleton(&obj(g), 3), "skeleton")?;
        shadows.push(ok(ringoid_shadow(&sk, &RingoidBimodule::untwisted(&sk)), "ringoid shadow")?);
    }
    for k in 0..60 {
        let which = k % 3;
        let g = &groups[which];
        let p = r.gen_range(1..=3);
        let f = rand_matrix(&mut r, g, p, p);
        let c = ok(class_of_endomorphism(&shadows[which], p, &f), "class")?;
        ensure(c.element.image == c.hattori_stallings && c.inverse_image == c.hattori_stallings, || {
            format!("ringoid route differs from Hattori-Stallings over {} at rank {p}", g.name())
        })?;
        ensure(c.agrees(), || "the trace and dual trace disagree".into())?;
    }
    Ok("60 endomorphisms over Z, Z[Z/2], Z[S3]".into())
}

// 7

fn circle() -> Outcome {
    for d in (-2..=5).filter(|d| *d != 1) {
        let (c, m) = ok(circle_self_map(d), "circle map")?;
        let res = ok(reidemeister_trace(&c, &m), "trace")?;
        let hl = ok(lefschetz_via_homology(&c, &m), "homology")?;
        ensure(res.lefschetz == 1 - d && hl == 1 - d, || format!("L = {} for d = {d}", res.lefschetz))?;
        ensure(res.nielsen as i64 == (1 - d).abs(), || format!("N = {} for d = {d}", res.nielsen))?;
        let (classes, pts) = ok(circle_fixed_points(d), "oracle")?;
        let mut want: BTreeMap<ClassLabel, i64> = BTreeMap::new();
        for pt in &pts {
            *want.entry(pt.class.clone()).or_default() += pt.index;
        }
        want.retain(|_, v| *v != 0);
        let got: BTreeMap<ClassLabel, i64> = res.terms().into_iter().collect();
        ensure(got == want, || format!("class multiset differs for d = {d}"))?;
        ensure(res.trace == fixed_point_class_sum(&classes, &pts), || "class sum".into())?;
    }
    Ok("d in -2..5 without 1".into())
}

// 8

fn det(f: &[Vec<i64>]) -> i64 {
    let (a, b, c, d) = (1 - f[0][0], -f[0][1], -f[1][0], 1 - f[1][1]);
    a * d - b * c
}

fn torus() -> Outcome {
    let maps = [vec![vec![2, 1], vec![1, 1]], vec![vec![0, -1], vec![1, 0]], vec![vec![2, 0], vec![0, 2]], vec![vec![2, 0], vec![0, 3]]];
    let mut summary = Vec::new();
    for f in &maps {
        let (c, m) = ok(torus2_self_map(f), "torus map")?;
        ensure((c.boundary(1) * c.boundary(2)).is_zero(), || "∂1 ∂2 ≠ 0".into())?;
        for i in 1..=2 {
            let lhs = c.boundary(i) * m.degree(i);
            let rhs = m.degree(i - 1) * &c.boundary(i).map_hom(m.twist());
            ensure(lhs == rhs, || format!("chain condition fails in degree {i} for {f:?}"))?;
        }
        let res = ok(reidemeister_trace(&c, &m), "trace")?;
        let l = det(f);
        ensure(res.lefschetz == l && ok(lefschetz_via_homology(&c, &m), "homology")? == l, || {
            format!("L = {} but det(I-F) = {l}", res.lefschetz)
        })?;
        if l != 0 {
            ensure(res.nielsen as i64 == l.abs(), || format!("N = {} for {f:?}", res.nielsen))?;
            let count = res.classes.count().map(|k| k as u64);
            ensure(count == coker_order(f) && count == Some(l.unsigned_abs()), || format!("class count {count:?}"))?;
            let (classes, pts) = ok(torus_fixed_points(f), "oracle")?;
            ensure(res.trace == fixed_point_class_sum(&classes, &pts), || "fixed point classes".into())?;
        }
        summary.push(format!("L={l}"));
    }
    Ok(summary.join(" "))
}

// 9

fn nerve() -> Outcome {
    let mut checked = 0;
    for g in small_groups() {
        for f in GroupHom::endomorphisms(&g) {
            let rep = TwistedCyclicNerve::new(&f).unwrap().check_identities(3);
            ensure(rep.ok(), || format!("{} : {:?}", g.name(), rep.failures))?;
            checked += rep.checked;
        }
    }
    let mut pairs: Vec<(Group, GroupHom)> = Vec::new();
    for n in 1..=12 {
        let g = cyclic(n);
        for f in GroupHom::endomorphisms(&g) {
            pairs.push((g.clone(), f));
        }
    }
    for g in [symmetric(3), dihedral(4), quaternion(), dihedral(6)] {
        for f in GroupHom::automorphisms(&g) {
            pairs.push((g.clone(), f));
        }
    }
    for (g, f) in &pairs {
        let p = ok(pi0(g, f), "pi0")?;
        let classes = ok(twisted_conjugacy_classes(g, f), "classes")?;
        ensure(p.is_bijection() && Some(p.count()) == classes.count(), || format!("π0 differs for {}", g.name()))?;
    }
    Ok(format!("{checked} identities, {} (G, φ) pairs", pairs.len()))
}

// 10

fn cli() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_compute");
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut n = 0;
    for cmd in shadowtrace::cli::Command::ALL {
        let input = dir.join(format!("{}.json", cmd.name()));
        let expected = ok(std::fs::read(dir.join(format!("{}.expected.json", cmd.name()))), "expected file")?;
        let mut outs = Vec::new();
        for _ in 0..2 {
            let o = ok(Command::new(exe).arg(cmd.name()).arg("--in").arg(&input).arg("--oracle").output(), "spawn")?;
            ensure(o.status.code() == Some(0), || format!("{} exited with {:?}", cmd.name(), o.status.code()))?;
            outs.push(o.stdout);
        }
        ensure(outs[0] == outs[1], || format!("{} is not deterministic", cmd.name()))?;
        ensure(outs[0] == expected, || format!("{} differs from its golden file", cmd.name()))?;
        let v: serde_json::Value = ok(serde_json::from_slice(&outs[0]), "json")?;
        ensure(v["oracle"]["agrees"] == serde_json::Value::Bool(true), || format!("{} oracle disagrees", cmd.name()))?;
        n += 1;
    }
    Ok(format!("{n} commands"))
}

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("shadow axioms", 30, shadow_axioms),
        ("trace structure", 60, trace_structure),
        ("Morita equivalence", 60, morita),
        ("base change squares", 60, base_change),
        ("restriction-transfer", 60, restriction_transfer),
        ("ringoid trace route", 60, ringoid_route),
        ("circle fixed points", 5, circle),
        ("torus fixed points", 10, torus),
        ("twisted cyclic nerve", 120, nerve),
        ("CLI golden files", 60, cli),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        let out = match out {
            Ok(d) if t > Duration::from_secs(*limit) => Err(format!("{d}; over the {limit}s limit")),
            o => o,
        };
        match out {
            Ok(d) => println!("PASS {:>2} {name}: {d} ({:.2}s, limit {limit}s)", i + 1, t.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e} ({:.2}s, limit {limit}s)", i + 1, t.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::algebra::{group, twisted_conjugacy_classes, Elem, Group, GroupHom, TwistedClassSet};
use crate::bicat::{hcompose, shadow, Bimodule, RingObject, ShadowElement, ShadowGroup, ShadowMap, TwoCell};
use crate::error::Error;
use crate::fixed::{
    circle_fixed_points, circle_self_map, coker_order, fixed_point_class_sum, lefschetz_via_homology, reidemeister_trace, torus2_self_map,
    torus_fixed_points, EquivariantChainComplex, TwistedChainMap,
};
use crate::morita::{
    base_change_morita, base_change_pair, composite_of, matrix_morita, transfer_of, transfer_oracle, twisted_transfer_of,
    twisted_transfer_oracle, twisted_unit_morita, CompositeOrder, MatrixUnitModel, MoritaWitness, RingHom,
};
use crate::nerve::TwistedCyclicNerve;
use crate::trace::{canonical_dual, euler_characteristic, hattori_stallings, mate, trace, trace_left};

use super::input::*;
use super::Command;

/// Exit status and output document of one job.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit: i32,
    pub document: Value,
}

/// Failures before or during a job.
#[derive(Debug)]
pub enum JobError {
    Schema(String),
    Math(Error),
}

impl From<Error> for JobError {
    fn from(e: Error) -> JobError {
        match e {
            Error::Parse(s) => JobError::Schema(s),
            Error::UnknownElement(s) => JobError::Schema(format!("unknown element: {s}")),
            e => JobError::Math(e),
        }
    }
}

type JobResult<T> = std::result::Result<T, JobError>;

/// Verdicts of independent recomputations.
#[derive(Default)]
struct Oracle {
    checks: BTreeMap<String, bool>,
    notes: BTreeMap<String, Value>,
}

impl Oracle {
    fn check(&mut self, name: &str, ok: bool) {
        self.checks.insert(name.to_string(), ok);
    }

    fn agrees(&self) -> bool {
        self.checks.values().all(|v| *v)
    }

    fn to_json(&self) -> Value {
        let mut v = json!({ "agrees": self.agrees(), "checks": self.checks });
        if !self.notes.is_empty() {
            v["reported"] = json!(self.notes);
        }
        v
    }
}

fn parse<T: DeserializeOwned>(text: &str) -> JobResult<T> {
    serde_json::from_str(text).map_err(|e| JobError::Schema(e.to_string()))
}

fn element_json(e: &ShadowElement) -> Value {
    Value::Array(e.named_terms().into_iter().map(|(c, k)| json!({ "class": c, "coeff": k })).collect())
}

fn domain_labels(s: &Arc<ShadowGroup>, window: i64) -> Vec<crate::bicat::Label> {
    s.generators().unwrap_or_else(|| s.window_generators(window))
}

fn map_json(m: &ShadowMap, window: i64) -> Value {
    let d = m.dom();
    Value::Array(
        domain_labels(d, window)
            .iter()
            .map(|l| json!({ "generator": d.label_name(l), "image": element_json(&m.on_generator(l)) }))
            .collect(),
    )
}

fn shadow_json(s: &Arc<ShadowGroup>) -> Value {
    json!({ "structure": s.describe(), "rank": s.structure().0 })
}

/// Runs one job. Errors become an `{"error": ...}` document.
pub fn run(cmd: Command, text: &str, oracle: bool) -> Outcome {
    let mut o = Oracle::default();
    let result = match cmd {
        Command::Hh0 => parse(text).and_then(|j| hh0(&j, &mut o)),
        Command::Trace => parse(text).and_then(|j| trace_job(&j, &mut o)),
        Command::Euler => parse(text).and_then(|j| euler(&j, &mut o)),
        Command::Transfer => parse(text).and_then(|j| transfer(&j, &mut o)),
        Command::TwistedTransfer => parse(text).and_then(|j| twisted_transfer(&j, &mut o)),
        Command::Reidemeister => parse(text).and_then(|j| reidemeister(&j, &mut o)),
        Command::NervePi0 => parse(text).and_then(|j| nerve(&j, &mut o, oracle)),
        Command::MoritaCheck => parse(text).and_then(|j| morita(&j, &mut o)),
    };
    finish(cmd, result, &o, oracle)
}

fn finish(cmd: Command, result: JobResult<Value>, o: &Oracle, oracle: bool) -> Outcome {
    match result {
        Ok(r) => {
            let mut doc = json!({ "command": cmd.name(), "result": r });
            let mut exit = 0;
            if oracle {
                doc["oracle"] = o.to_json();
                if !o.agrees() {
                    exit = 4;
                }
            }
            Outcome { exit, document: doc }
        }
        Err(JobError::Schema(m)) => Outcome { exit: 2, document: json!({ "error": { "code": "SchemaError", "message": m } }) },
        Err(JobError::Math(e)) => Outcome { exit: 3, document: json!({ "error": { "code": e.code(), "message": e.to_string() } }) },
    }
}

/// Orbits of `x ↦ h x φ(h)^-1` by direct search.
fn orbit_partition(g: &Group, phi: &GroupHom) -> Vec<Vec<Elem>> {
    let els = g.elements();
    let mut seen = vec![false; els.len()];
    let mut out = Vec::new();
    for x in &els {
        if seen[x.index()] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut stack = vec![x.clone()];
        seen[x.index()] = true;
        while let Some(y) = stack.pop() {
            for h in &els {
                let z = g.mul(&g.mul(h, &y), &g.inv(&phi.apply(h)));
                if !seen[z.index()] {
                    seen[z.index()] = true;
                    stack.push(z);
                }
            }
            orbit.push(y);
        }
        orbit.sort();
        out.push(orbit);
    }
    out
}

fn class_list(set: &TwistedClassSet) -> Value {
    match set.labels() {
        Some(ls) if set.group().is_finite() => Value::Array(
            ls.iter()
                .map(|l| {
                    json!({
                        "label": set.label_name(l),
                        "representative": set.group().label(&set.representative(l)),
                        "size": set.members(l).len(),
                    })
                })
                .collect(),
        ),
        Some(ls) => Value::Array(
            ls.iter().map(|l| json!({ "label": set.label_name(l), "representative": set.group().label(&set.representative(l)) })).collect(),
        ),
        None => Value::Null,
    }
}

fn hh0(j: &Hh0Job, o: &mut Oracle) -> JobResult<Value> {
    let g = build_group(&j.group)?;
    let phi = match &j.twist {
        Some(h) => build_hom(h, &g, &g)?,
        None => GroupHom::identity(&g),
    };
    let set = twisted_conjugacy_classes(&g, &phi)?;
    let s = ShadowGroup::of_classes(set.clone());
    let mut r = json!({ "group": g.name(), "shadow": shadow_json(&s), "classes": class_list(&set) });
    if let Some(d) = set.invariant_factors() {
        r["invariant_factors"] = json!(d);
    }
    if g.is_finite() {
        let mut brute = orbit_partition(&g, &phi);
        brute.sort();
        let mut ours: Vec<Vec<Elem>> = set.labels().unwrap().iter().map(|l| set.members(l)).collect();
        ours.sort();
        o.check("orbit_partition", brute == ours);
    } else {
        let det = set.lattice_det_count().map(|d| d.to_string());
        o.check("determinant_count", det == set.count().map(|c| c.to_string()));
    }
    if let Some(n) = j.matrix_size {
        if !phi.is_identity() {
            return Err(Error::UnsupportedShadow("matrix rings are computed untwisted".into()).into());
        }
        let w = matrix_morita(&RingObject::new(&g), n)?;
        let corner = shadow(w.n())?;
        r["matrix_ring"] = json!({ "n": n, "shadow": shadow_json(&corner) });
        if g.is_finite() {
            let model = MatrixUnitModel::new(&g, n)?;
            let hh = model.hh0();
            let (t, c) = (model.trace_map(&hh)?, model.corner_map(&hh)?);
            r["matrix_units"] = shadow_json(&hh);
            o.check("matrix_units_structure", hh.describe() == s.describe());
            o.check("matrix_units_inverse", t.after(&c)?.agrees_with(&ShadowMap::identity(c.dom()), 0));
            o.check("matrix_units_inverse_other_way", c.after(&t)?.agrees_with(&ShadowMap::identity(t.dom()), 0));
        }
    }
    Ok(r)
}

fn unit_or(spec: &Option<BimoduleSpec>, g: &Group) -> JobResult<Bimodule> {
    Ok(match spec {
        Some(s) => build_bimodule(s, g, g)?,
        None => Bimodule::unit(&RingObject::new(g)),
    })
}

fn source_or_trivial(spec: &Option<GroupSpec>) -> JobResult<Group> {
    Ok(match spec {
        Some(s) => build_group(s)?,
        None => group::trivial(),
    })
}

fn trace_job(j: &TraceJob, o: &mut Oracle) -> JobResult<Value> {
    let (c, d) = (source_or_trivial(&j.source)?, build_group(&j.target)?);
    let win = j.window.unwrap_or(1);
    let m = build_bimodule(&j.m, &c, &d)?;
    let (q, p) = (unit_or(&j.q, &c)?, unit_or(&j.p, &d)?);
    let f = TwoCell::new(&hcompose(&q, &m)?, &hcompose(&m, &p)?, build_matrix(&j.f, &d)?)?;
    let w = canonical_dual(&m)?;
    let tr = trace(&f, &w, &q, &p)?;
    o.check("hattori_stallings", tr.agrees_with(&hattori_stallings(&f, &m, &q, &p)?, win));
    o.check("dual_trace", tr.agrees_with(&trace_left(&mate(&f, &w, &q, &p)?, &w, &q, &p)?, win));
    Ok(json!({ "dom": shadow_json(tr.dom()), "cod": shadow_json(tr.cod()), "values": map_json(&tr, win) }))
}

fn euler(j: &EulerJob, o: &mut Oracle) -> JobResult<Value> {
    let (c, d) = (source_or_trivial(&j.source)?, build_group(&j.target)?);
    let win = j.window.unwrap_or(1);
    let m = build_bimodule(&j.m, &c, &d)?;
    let chi = euler_characteristic(&canonical_dual(&m)?)?;
    let (uc, ud) = (Bimodule::unit(m.source()), Bimodule::unit(m.target()));
    let id = TwoCell::identity(&m).retag(&hcompose(&uc, &m)?, &hcompose(&m, &ud)?)?;
    o.check("hattori_stallings", chi.agrees_with(&hattori_stallings(&id, &m, &uc, &ud)?, win));
    Ok(json!({ "rank": m.rank(), "dom": shadow_json(chi.dom()), "cod": shadow_json(chi.cod()), "values": map_json(&chi, win) }))
}

fn ring_hom(group: &GroupSpec, subgroup: &GroupSpec, hom: &HomSpec) -> JobResult<RingHom> {
    let (c, a) = (build_group(group)?, build_group(subgroup)?);
    Ok(RingHom::from_group_hom(&build_hom(hom, &a, &c)?))
}

fn transfer(j: &TransferJob, o: &mut Oracle) -> JobResult<Value> {
    let f = ring_hom(&j.group, &j.subgroup, &j.hom)?;
    let win = j.window.unwrap_or(1);
    let bc = base_change_pair(&f)?;
    let trf = transfer_of(&bc)?;
    let rep = composite_of(&bc, CompositeOrder::ResTrf)?;
    let res = crate::morita::restriction(&f)?;
    let k = bc.index() as i64;
    let a = bc.source_group();
    let dom = rep.composite.dom().clone();
    let e = dom.normalize_vector(&[crate::algebra::RingElement::one(a)]);
    let on_identity = rep.composite.apply(&e) == e.scale(k);
    let scalar_everywhere =
        domain_labels(&dom, win).iter().all(|l| rep.composite.on_generator(l) == ShadowElement::generator(&dom, l.clone(), k));
    let tg = bc.target_group();
    o.check("transfer_oracle", trf.agrees_with(&transfer_oracle(&bc)?, win));
    o.check("composite_euler", rep.composite.agrees_with(&rep.euler, win));
    o.check("composite_oracle", rep.composite.agrees_with(&rep.oracle, win));
    o.check("identity_class_index", on_identity);
    o.notes.insert("scalar_on_every_class".into(), json!(scalar_everywhere));
    Ok(json!({
        "index": k,
        "transversal": bc.transversal().reps().iter().map(|t| tg.label(t)).collect::<Vec<_>>(),
        "restriction": map_json(&res, win),
        "transfer": map_json(&trf, win),
        "res_trf": map_json(&rep.composite, win),
        "identity_class_times_index": on_identity,
    }))
}

fn twisted_transfer(j: &TwistedTransferJob, o: &mut Oracle) -> JobResult<Value> {
    let f = ring_hom(&j.group, &j.subgroup, &j.hom)?;
    let win = j.window.unwrap_or(1);
    let (a, c) = (f.dom().group.clone(), f.cod().group.clone());
    let (jj, kk) = (build_hom(&j.j, &a, &a)?, build_hom(&j.k, &c, &c)?);
    let bc = base_change_pair(&f)?;
    let t = twisted_transfer_of(&bc, &jj, &kk)?;
    o.check("twisted_oracle", t.agrees_with(&twisted_transfer_oracle(&f, &jj, &kk)?, win));
    Ok(json!({ "index": bc.index(), "dom": shadow_json(t.dom()), "cod": shadow_json(t.cod()), "values": map_json(&t, win) }))
}

fn reidemeister(j: &ReidemeisterJob, o: &mut Oracle) -> JobResult<Value> {
    let (c, m): (EquivariantChainComplex, TwistedChainMap) = match j {
        ReidemeisterJob::Circle { d } => circle_self_map(*d)?,
        ReidemeisterJob::Torus { matrix } => torus2_self_map(matrix)?,
        ReidemeisterJob::Complex { group, ranks, boundaries, twist, maps } => {
            let g = build_group(group)?;
            let b = boundaries.iter().map(|x| build_matrix(x, &g)).collect::<Result<Vec<_>, _>>()?;
            let c = EquivariantChainComplex::new(&g, ranks.clone(), b)?;
            let phi = build_hom(twist, &g, &g)?;
            let f = maps.iter().map(|x| build_matrix(x, &g)).collect::<Result<Vec<_>, _>>()?;
            let m = TwistedChainMap::new(&c, &phi, f)?;
            (c, m)
        }
    };
    let r = reidemeister_trace(&c, &m)?;
    o.check("homology_lefschetz", lefschetz_via_homology(&c, &m)? == r.lefschetz);
    match j {
        ReidemeisterJob::Circle { d } if *d != 1 => {
            let (cl, pts) = circle_fixed_points(*d)?;
            o.check("fixed_point_classes", fixed_point_class_sum(&cl, &pts) == r.trace);
        }
        ReidemeisterJob::Torus { matrix } => {
            if let Some(n) = coker_order(matrix) {
                let (cl, pts) = torus_fixed_points(matrix)?;
                o.check("fixed_point_classes", fixed_point_class_sum(&cl, &pts) == r.trace);
                o.check("nielsen_is_coker_order", r.nielsen as u64 == n && r.classes.count() == Some(n as usize));
            }
        }
        _ => {}
    }
    let terms: Vec<Value> = r.named_terms().into_iter().map(|(c, k)| json!({ "class": c, "coeff": k })).collect();
    Ok(json!({
        "L": r.lefschetz,
        "N": r.nielsen,
        "R": terms,
        "classes": r.classes.count(),
        "ranks": c.ranks(),
    }))
}

fn nerve(j: &NerveJob, o: &mut Oracle, oracle: bool) -> JobResult<Value> {
    let g = build_group(&j.group)?;
    let f = build_hom(&j.twist, &g, &g)?;
    let h = match &j.second_twist {
        Some(s) => build_hom(s, &g, &g)?,
        None => GroupHom::identity(&g),
    };
    let nv = TwistedCyclicNerve::with_two_maps(&f, &h)?;
    let p = nv.pi0();
    o.check("bijection_with_classes", p.is_bijection());
    if oracle {
        let rep = nv.check_identities(j.check_level.unwrap_or(2));
        o.check("simplicial_identities", rep.ok());
        o.notes.insert("identities_checked".into(), json!(rep.checked));
    }
    let comps: Vec<Value> = p
        .components
        .iter()
        .zip(&p.to_class)
        .map(|(c, l)| json!({ "class": p.classes.label_name(l), "members": c.iter().map(|x| g.label(x)).collect::<Vec<_>>() }))
        .collect();
    Ok(json!({ "count": p.count(), "components": comps }))
}

fn witness_json(w: &MoritaWitness, o: &mut Oracle) -> JobResult<Value> {
    let ids = w.identities();
    let (a, b) = w.euler_composites()?;
    let euler_ok = a.agrees_with(&ShadowMap::identity(a.dom()), 1) && b.agrees_with(&ShadowMap::identity(b.dom()), 1);
    let q = Bimodule::unit(w.m().source());
    let (eta, eps) = w.conjugation_maps(&q)?;
    let conj_ok = eps.after(&eta)?.agrees_with(&ShadowMap::identity(eta.dom()), 1)
        && eta.after(&eps)?.agrees_with(&ShadowMap::identity(eps.dom()), 1);
    o.check("four_identities", ids.iter().all(|x| *x));
    o.check("euler_composites_identity", euler_ok);
    o.check("conjugation_inverse", conj_ok);
    Ok(json!({
        "identities": ids,
        "euler_composites_identity": euler_ok,
        "conjugation_inverse": conj_ok,
        "shadow": shadow_json(&shadow(&q)?),
    }))
}

fn morita(j: &MoritaJob, o: &mut Oracle) -> JobResult<Value> {
    match j {
        MoritaJob::Matrix { group, n } => {
            let g = build_group(group)?;
            let w = matrix_morita(&RingObject::new(&g), *n)?;
            let mut r = witness_json(&w, o)?;
            if g.is_finite() {
                let model = MatrixUnitModel::new(&g, *n)?;
                let hh = model.hh0();
                r["matrix_units"] = shadow_json(&hh);
                let base = shadow(&Bimodule::unit(&RingObject::new(&g)))?;
                o.check("matrix_units_structure", hh.describe() == base.describe());
                o.check("row_column_tensor", model.row_column_tensor_is_unit());
            }
            Ok(r)
        }
        MoritaJob::TwistedUnit { group, hom } => {
            let g = build_group(group)?;
            let w = twisted_unit_morita(&build_hom(hom, &g, &g)?)?;
            witness_json(&w, o)
        }
        MoritaJob::BaseChange { group, subgroup, hom } => {
            let w = base_change_morita(&ring_hom(group, subgroup, hom)?)?;
            witness_json(&w, o)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disagreement_exits_with_four() {
        let mut o = Oracle::default();
        o.check("first", true);
        o.check("second", false);
        let out = finish(Command::Hh0, Ok(json!({})), &o, true);
        assert_eq!(out.exit, 4);
        assert_eq!(out.document["oracle"]["agrees"], json!(false));
        assert_eq!(finish(Command::Hh0, Ok(json!({})), &o, false).exit, 0);
    }

    #[test]
    fn error_codes() {
        let out = run(Command::Hh0, "{\"group\": {\"named\": \"S9\"}}", false);
        assert_eq!(out.exit, 2);
        let job = r#"{"base_change": {"group": {"named": "S3"}, "subgroup": {"named": "A3"}, "hom": {"images": ["(123)"]}}}"#;
        let out = run(Command::MoritaCheck, job, true);
        assert_eq!(out.exit, 3);
        assert_eq!(out.document["error"]["code"], json!("NotInvertible"));
    }
}

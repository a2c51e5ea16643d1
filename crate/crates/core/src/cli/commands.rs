//! One function per command. Each returns the `results` section of the report
//! together with the status that decides the exit code.

use std::sync::Arc;

use serde_json::{json, Value};

use super::document::{corner_of, select, Loaded, NamedModule, Over};
use super::report::{dim, dim_status, matrix, Status};
use crate::error::{Error, Result};
use crate::fdalg::FDAlgebra;
use crate::fdmod::{gldim, minimal_resolution, selfinjective_pairs, InfiniteWitness, SELFINJECTIVE_SEARCH, pd_from_resolution, projective, simple_classes, DimResult, FDModule, ModuleMap, Resolution, ResolutionStatus, Side};
use crate::gorenstein::{
    delta_gorenstein_check, delta_gproj_check, gorenstein_premise_check, gorenstein_test, gproj_restriction_check, gproj_test, sample_modules, t_h_iso_check, Certificate,
    GorensteinReport, GorensteinVerdict, GprojReport,
};
use crate::homdim::{
    bound_sum_plus_one, bound_tensor_power, lower_bound_corners, nilpotency_bound, pd_identity_checks, tightness, tightness_direct, trivext_bounds, BoundReport, Outcome,
    Tightness,
};
use crate::morita::{
    classify_injectives, classify_projectives, classify_simples, delta_context, equivalence_premise, selfinjective_check, validate_context, Classified, Corner, MoritaContext,
    PremiseSide, TupleModule,
};
use crate::subcat::{bireflective_approx, factors_through, hom_vanishing_check, torsion_decompose, Target, TorsionPair};

/// Command-line settings that reach the commands.
#[derive(Clone, Debug, Default)]
pub struct Settings {
    pub cutoff: usize,
    pub depth: Option<usize>,
    pub window: Option<usize>,
    pub module: Option<String>,
    pub side: Option<String>,
    pub pair: Option<String>,
    pub target: Option<String>,
    pub bound: Option<String>,
}

pub type Outcomes = (Value, Status);

fn corner_sides(s: &Settings) -> Result<Vec<Corner>> {
    match s.side.as_deref() {
        None => Ok(vec![Corner::A, Corner::B]),
        Some("A" | "a") => Ok(vec![Corner::A]),
        Some("B" | "b") => Ok(vec![Corner::B]),
        Some(o) => Err(Error::Precondition(format!("side must be A or B, not {o}"))),
    }
}

fn approx_sides(s: &Settings) -> Result<Vec<Side>> {
    match s.side.as_deref() {
        None => Ok(vec![Side::Left, Side::Right]),
        Some("left") => Ok(vec![Side::Left]),
        Some("right") => Ok(vec![Side::Right]),
        Some(o) => Err(Error::Precondition(format!("side must be left or right, not {o}"))),
    }
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Left => "left",
        Side::Right => "right",
    }
}

fn outcome_status(o: Outcome) -> Status {
    match o {
        Outcome::Satisfied | Outcome::Vacuous => Status::Ok,
        Outcome::Undecided => Status::Undecided,
        Outcome::Violated => Status::Violated,
    }
}

fn tuple_shape(t: &TupleModule) -> Value {
    json!({"x": t.x.dim(), "y": t.y.dim(), "f_rank": t.f.rank(), "g_rank": t.g.rank()})
}

/// Simples and projectives of an algebra, named `S{i}` and `P{i}`.
fn default_modules(a: &Arc<FDAlgebra>) -> Result<Vec<(String, FDModule)>> {
    let mut out: Vec<(String, FDModule)> = simple_classes(a).into_iter().map(|(i, s)| (format!("S{i}"), s)).collect();
    for (i, _) in simple_classes(a) {
        out.push((format!("P{i}"), projective(a, i)?));
    }
    Ok(out)
}

/// Declared modules over the main algebra, or its simples and projectives.
fn main_modules(l: &Loaded, s: &Settings) -> Result<Vec<(String, FDModule)>> {
    let over = if l.context.is_some() { Over::Ring } else { Over::Algebra };
    let picked = select(l, s.module.as_deref(), |m| m.over() == over)?;
    if picked.is_empty() && s.module.is_none() {
        return default_modules(&l.main_algebra()?);
    }
    picked.into_iter().map(|m| Ok((m.name.clone(), m.flat()?))).collect()
}

fn classified_tuples(c: &Arc<MoritaContext>) -> Result<Vec<(String, TupleModule)>> {
    let mut out: Vec<(String, TupleModule)> = classify_simples(c)?.into_iter().map(|k| (k.origin, k.tuple)).collect();
    out.extend(classify_projectives(c)?.into_iter().map(|k| (k.origin, k.tuple)));
    Ok(out)
}

/// Declared modules over the ring as tuples, or the classified simples and projectives.
fn ring_tuples(l: &Loaded, s: &Settings) -> Result<Vec<(String, TupleModule)>> {
    let c = l.require_context()?;
    let picked = select(l, s.module.as_deref(), |m| m.over() == Over::Ring)?;
    if picked.is_empty() && s.module.is_none() {
        return classified_tuples(c);
    }
    picked.into_iter().map(|m: &NamedModule| Ok((m.name.clone(), m.tuple(c)?.expect("ring module")))).collect()
}

fn corner_modules(l: &Loaded, s: &Settings, side: Corner) -> Result<Vec<(String, FDModule)>> {
    let c = l.require_context()?;
    let picked = select(l, s.module.as_deref(), |m| corner_of(m.over()).is_some())?;
    let mine: Vec<_> = picked.iter().filter(|m| corner_of(m.over()) == Some(side)).collect();
    if picked.is_empty() && s.module.is_none() {
        return default_modules(c.alg(side));
    }
    mine.into_iter().map(|m| Ok((m.name.clone(), m.flat()?))).collect()
}

// ---------------------------------------------------------------------------

pub fn check(l: &Loaded) -> Result<Outcomes> {
    let mut out = json!({});
    let mut status = Status::Ok;
    if let Some(a) = &l.algebra {
        out["algebra"] = json!({
            "dim": a.dim(),
            "idempotents": a.num_idempotents(),
            "radical_dim": a.radical().dim(),
            "loewy_length": a.loewy_length(),
        });
    }
    if let Some(c) = &l.context {
        let violations: Vec<String> = validate_context(c).iter().map(|v| v.to_string()).collect();
        status = Status::from_bool(violations.is_empty());
        let ring = c.algebra()?;
        out["context"] = json!({
            "kind": l.context_kind(),
            "dims": {"A": c.alg_a().dim(), "B": c.alg_b().dim(), "M": c.bimod_m().dim(), "N": c.bimod_n().dim()},
            "maps_vanish": c.maps_vanish(),
            "violations": violations,
            "ring": {"dim": ring.dim(), "idempotents": ring.num_idempotents(), "radical_dim": ring.radical().dim()},
        });
    }
    let modules: Vec<Value> = l
        .modules
        .iter()
        .map(|m| {
            let f = m.flat()?;
            Ok(json!({"name": m.name, "over": format!("{:?}", m.over()), "dim": f.dim(), "dim_vector": f.dim_vector()}))
        })
        .collect::<Result<_>>()?;
    out["modules"] = json!(modules);
    Ok((out, status))
}

/// Whether a periodicity certificate is an isomorphism of the recorded syzygies.
pub fn verify_periodicity(r: &Resolution) -> Option<bool> {
    let ResolutionStatus::Periodic(p) = &r.status else { return None };
    let (a, b) = (&r.syzygies[p.start], &r.syzygies[p.start + p.period]);
    let hom = ModuleMap::new(a.clone(), b.clone(), p.iso.clone()).is_ok();
    Some(hom && p.iso.inverse().is_some())
}

fn resolution_status(r: &Resolution) -> Value {
    match &r.status {
        ResolutionStatus::Terminated => json!({"kind": "terminated"}),
        ResolutionStatus::Truncated(d) => json!({"kind": "truncated", "depth": d}),
        ResolutionStatus::Periodic(p) => json!({
            "kind": "periodic",
            "start": p.start,
            "period": p.period,
            "iso": matrix(&p.iso),
            "verified": verify_periodicity(r),
        }),
    }
}

fn gldim_with_witness(a: &Arc<FDAlgebra>, cutoff: usize) -> Result<Outcomes> {
    let mut per = Vec::new();
    let mut dims = Vec::new();
    let mut status = Status::Ok;
    // over a selfinjective algebra a non-projective module has infinite pd, so
    // a short search for periodicity suffices there
    let selfinj = selfinjective_pairs(a)?;
    let depth = if selfinj.is_some() { cutoff.min(SELFINJECTIVE_SEARCH) } else { cutoff };
    for (i, s) in simple_classes(a) {
        let r = minimal_resolution(&s, depth, true)?;
        let mut d = pd_from_resolution(&r);
        let mut res = resolution_status(&r);
        if let (DimResult::AtLeast(_), Some(_)) = (&d, &selfinj) {
            d = DimResult::Infinite(InfiniteWitness::Selfinjective);
            res = json!({"kind": "selfinjective"});
        }
        status = status.join(dim_status(&d));
        if verify_periodicity(&r) == Some(false) {
            status = status.join(Status::Violated);
        }
        per.push(json!({"simple": i, "pd": dim(&d), "resolution": res}));
        dims.push(d);
    }
    let g = DimResult::max_of(dims);
    let mut out = json!({"gldim": dim(&g), "simples": per});
    if let Some(pairs) = selfinj {
        out["selfinjective"] = json!(pairs.iter().map(|(i, j)| json!({"projective": i, "injective": j})).collect::<Vec<_>>());
    }
    Ok((out, status))
}

pub fn gldim_cmd(l: &Loaded, s: &Settings) -> Result<Outcomes> {
    let (mut out, mut status) = gldim_with_witness(&l.main_algebra()?, s.cutoff)?;
    if let Some(c) = &l.context {
        let ga = gldim(c.alg_a(), s.cutoff)?;
        let gb = gldim(c.alg_b(), s.cutoff)?;
        status = status.join(dim_status(&ga)).join(dim_status(&gb));
        out["corners"] = json!({"A": dim(&ga), "B": dim(&gb)});
    }
    Ok((out, status))
}

pub fn resolve(l: &Loaded, s: &Settings) -> Result<Outcomes> {
    let depth = s.depth.unwrap_or(s.cutoff);
    let mut items = Vec::new();
    let mut status = Status::Ok;
    for (name, x) in main_modules(l, s)? {
        let r = minimal_resolution(&x, depth, true)?;
        let d = pd_from_resolution(&r);
        status = status.join(dim_status(&d));
        let terms: Vec<Value> = r.terms.iter().enumerate().map(|(n, t)| json!({"degree": n, "dim": t.module.dim(), "summands": t.summands})).collect();
        items.push(json!({"module": name, "dim": x.dim(), "pd": dim(&d), "terms": terms, "status": resolution_status(&r)}));
    }
    Ok((json!({"modules": items}), status))
}

fn classified(list: Vec<Classified>) -> Outcomes {
    let mut status = Status::Ok;
    let items: Vec<Value> = list
        .iter()
        .map(|k| {
            status = status.join(match k.flat_agrees {
                Some(true) => Status::Ok,
                Some(false) => Status::Violated,
                None => Status::Undecided,
            });
            json!({"origin": k.origin, "flat_index": k.flat_index, "tuple": tuple_shape(&k.tuple), "flat_agrees": k.flat_agrees})
        })
        .collect();
    (json!({"modules": items}), status)
}

pub fn simples_cmd(l: &Loaded) -> Result<Outcomes> {
    Ok(classified(classify_simples(l.require_context()?)?))
}

pub fn projectives_cmd(l: &Loaded) -> Result<Outcomes> {
    Ok(classified(classify_projectives(l.require_context()?)?))
}

pub fn injectives_cmd(l: &Loaded) -> Result<Outcomes> {
    Ok(classified(classify_injectives(l.require_context()?)?))
}

fn premise_side(p: &PremiseSide) -> Value {
    let entries: Vec<Value> = p
        .entries
        .iter()
        .map(|e| json!({"projective": e.projective, "injective_match": e.injective_match, "unit_invertible": e.unit_invertible}))
        .collect();
    json!({"holds": p.holds(), "entries": entries, "missed_injectives": p.missed_injectives})
}

pub fn selfinjective(l: &Loaded) -> Result<Outcomes> {
    let c = l.require_context()?;
    let v = selfinjective_check(c)?;
    let p = equivalence_premise(c)?;
    let out = json!({
        "selfinjective": v.selfinjective,
        "non_injective": v.non_injective,
        "equivalence_premise": {"holds": p.holds(), "a_side": premise_side(&p.a_side), "b_side": premise_side(&p.b_side)},
    });
    Ok((out, Status::Ok))
}

pub fn torsion(l: &Loaded, s: &Settings) -> Result<Outcomes> {
    let c = l.require_context()?;
    let pairs = match &s.pair {
        Some(p) => vec![p.parse::<TorsionPair>()?],
        None => TorsionPair::ALL.to_vec(),
    };
    let modules = ring_tuples(l, s)?;
    let samples: Vec<TupleModule> = classified_tuples(c)?.into_iter().map(|(_, t)| t).chain(modules.iter().map(|(_, t)| t.clone())).collect();
    let mut status = Status::Ok;
    let mut out = Vec::new();
    for pair in pairs {
        let mut items = Vec::new();
        for (name, t) in &modules {
            let d = torsion_decompose(t, pair)?;
            let (tm, fm) = d.memberships()?;
            let exact = d.is_short_exact();
            status = status.join(Status::from_bool(tm && fm && exact));
            items.push(json!({
                "module": name,
                "torsion": tuple_shape(d.sub()),
                "torsion_free": tuple_shape(d.quot()),
                "short_exact": exact,
                "torsion_member": tm,
                "torsion_free_member": fm,
            }));
        }
        let hv = hom_vanishing_check(pair, &samples)?;
        status = status.join(Status::from_bool(hv.counterexamples.is_empty()));
        out.push(json!({
            "pair": pair.to_string(),
            "modules": items,
            "hom_vanishing": {"pairs_checked": hv.pairs_checked, "counterexamples": hv.counterexamples.len()},
        }));
    }
    Ok((json!({"pairs": out}), status))
}

pub fn approx(l: &Loaded, s: &Settings) -> Result<Outcomes> {
    let c = l.require_context()?;
    let targets = match &s.target {
        Some(t) => vec![t.parse::<Target>()?],
        None => Target::ALL.to_vec(),
    };
    let modules = ring_tuples(l, s)?;
    let samples: Vec<TupleModule> = classified_tuples(c)?.into_iter().map(|(_, t)| t).collect();
    let mut status = Status::Ok;
    let mut out = Vec::new();
    for target in targets {
        for side in approx_sides(s)? {
            let mut items = Vec::new();
            for (name, t) in &modules {
                let a = bireflective_approx(t, target, side)?;
                let obj = match side {
                    Side::Left => &a.target,
                    Side::Right => &a.source,
                };
                let mut tests: Vec<TupleModule> = samples.iter().filter(|w| target.contains(w)).cloned().collect();
                tests.push(obj.clone());
                let member = target.contains(obj);
                let universal = factors_through(&a, &tests, side)?;
                status = status.join(Status::from_bool(member && universal));
                items.push(json!({"module": name, "approximation": tuple_shape(obj), "in_target": member, "universal": universal, "tests": tests.len()}));
            }
            out.push(json!({"target": target.to_string(), "side": side_name(side), "modules": items}));
        }
    }
    Ok((json!({"approximations": out}), status))
}

fn tightness_value(t: &Tightness) -> Value {
    match t {
        Tightness::Tight => json!({"kind": "tight"}),
        Tightness::Untight { degree } => json!({"kind": "untight", "degree": degree}),
        Tightness::Undecided { depth } => json!({"kind": "undecided", "depth": depth}),
    }
}

pub fn tight(l: &Loaded, s: &Settings) -> Result<Outcomes> {
    let c = l.require_context()?;
    let mut status = Status::Ok;
    let mut items = Vec::new();
    for side in corner_sides(s)? {
        for (name, x) in corner_modules(l, s, side)? {
            let crit = tightness(c, side, &x, s.cutoff)?;
            let direct = tightness_direct(c, side, &x, s.cutoff)?;
            let agree = crit.tightness == direct;
            status = status.join(Status::from_bool(agree));
            if matches!(crit.tightness, Tightness::Undecided { .. }) {
                status = status.join(Status::Undecided);
            }
            let checks: Vec<Value> = pd_identity_checks(c, side, &x, s.cutoff)?
                .iter()
                .map(|chk| {
                    status = status.join(outcome_status(chk.outcome));
                    json!({"name": chk.name, "lhs": dim(&chk.lhs), "relation": chk.relation.to_string(), "rhs": chk.rhs.as_ref().map(dim), "outcome": chk.outcome.to_string()})
                })
                .collect();
            items.push(json!({
                "module": name,
                "side": side.to_string(),
                "criterion": tightness_value(&crit.tightness),
                "direct": tightness_value(&direct),
                "agree": agree,
                "corner_pd": dim(&crit.corner_pd),
                "witness_dim_vector": crit.witness.as_ref().map(|w| w.dim_vector()),
                "identities": checks,
            }));
        }
    }
    Ok((json!({"modules": items}), status))
}

pub fn bound_value(r: &BoundReport) -> Value {
    let hyps: Vec<Value> = r.hypotheses.iter().map(|h| json!({"name": h.name, "verdict": h.verdict.to_string(), "witness": h.witness})).collect();
    let notes: serde_json::Map<String, Value> = r.notes.iter().map(|(k, v)| (k.clone(), dim(v))).collect();
    json!({
        "tag": r.tag,
        "hypotheses": hyps,
        "lhs": dim(&r.lhs),
        "relation": r.relation.to_string(),
        "rhs": r.rhs.as_ref().map(dim),
        "outcome": r.outcome.to_string(),
        "notes": notes,
    })
}

/// Parses `sum-plus-one`, `tensor-power:V:S`, `corner-lower`, `nilpotency`, `trivext`.
pub fn bounds(l: &Loaded, s: &Settings) -> Result<Outcomes> {
    let name = s.bound.as_deref().unwrap_or("sum-plus-one");
    let bad = || Error::Precondition(format!("unknown bound {name}"));
    if name == "trivext" {
        let (a, n) = l.trivext.as_ref().ok_or_else(|| Error::Precondition("trivext needs a trivial_extension algebra".into()))?;
        let r = trivext_bounds(a, n, s.cutoff)?;
        let steps: Vec<Value> = r.per_simple.iter().map(|st| json!({"simple": st.simple, "lhs": dim(&st.lhs), "rhs": dim(&st.rhs), "outcome": st.outcome.to_string()})).collect();
        let status = [r.pd_bound.outcome, r.double_bound.outcome].into_iter().chain(r.per_simple.iter().map(|st| st.outcome)).fold(Status::Ok, |acc, o| acc.join(outcome_status(o)));
        let out = json!({
            "gldim_base": dim(&r.gldim_base),
            "gldim_extension": dim(&r.gldim_extension),
            "pd_zero_n": dim(&r.pd_zero_n),
            "pd_base_n": dim(&r.pd_base_n),
            "pd_bound": bound_value(&r.pd_bound),
            "double_bound": bound_value(&r.double_bound),
            "per_simple": steps,
        });
        return Ok((out, status));
    }
    let c = l.require_context()?;
    let r = match name {
        "sum-plus-one" => bound_sum_plus_one(c, s.cutoff)?,
        "corner-lower" => lower_bound_corners(c, s.cutoff)?,
        "nilpotency" => nilpotency_bound(c, s.cutoff)?,
        _ => {
            let rest = name.strip_prefix("tensor-power:").ok_or_else(bad)?;
            let (v, k) = rest.split_once(':').ok_or_else(bad)?;
            bound_tensor_power(c, v.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?, s.cutoff)?
        }
    };
    Ok((bound_value(&r), outcome_status(r.outcome)))
}

fn gorenstein_value(r: &GorensteinReport) -> Value {
    json!({"id_left": dim(&r.id_left), "id_right": dim(&r.id_right), "verdict": r.verdict.to_string(), "injective_dimension": r.injective_dimension()})
}

fn verdict_status(v: GorensteinVerdict) -> Status {
    if v == GorensteinVerdict::Undecided {
        Status::Undecided
    } else {
        Status::Ok
    }
}

pub fn gorenstein(l: &Loaded, s: &Settings) -> Result<Outcomes> {
    let main = gorenstein_test(&l.main_algebra()?, s.cutoff)?;
    let mut status = verdict_status(main.verdict);
    let mut out = json!({"algebra": gorenstein_value(&main)});
    if let Some(c) = &l.context {
        let a = gorenstein_test(c.alg_a(), s.cutoff)?;
        let b = gorenstein_test(c.alg_b(), s.cutoff)?;
        let p = gorenstein_premise_check(c, s.cutoff)?;
        status = status.join(Status::from_bool(p.consistent()));
        out["corners"] = json!({"A": gorenstein_value(&a), "B": gorenstein_value(&b)});
        out["premise"] = json!({"holds": p.premise, "consistent": p.consistent()});
    }
    Ok((out, status))
}

pub fn gproj_value(r: &GprojReport) -> Value {
    let cert = match &r.certificate {
        Certificate::Terminated { length } => json!({"kind": "terminated", "length": length}),
        Certificate::Periodic { start, period } => json!({"kind": "periodic", "start": start, "period": period}),
        Certificate::WindowOnly => json!({"kind": "window_only"}),
    };
    json!({"window": r.window, "ext": r.ext, "member": r.member, "certificate": cert, "certified": r.certified(), "window_covers_id": r.window_covers_id})
}

/// A membership claim that rests on neither a certificate nor the injective dimension.
fn gproj_status(r: &GprojReport) -> Status {
    if r.member && !r.certified() && !r.window_covers_id {
        Status::Undecided
    } else {
        Status::Ok
    }
}

pub fn gproj(l: &Loaded, s: &Settings) -> Result<Outcomes> {
    let mut status = Status::Ok;
    let mut items = Vec::new();
    for (name, x) in main_modules(l, s)? {
        let r = gproj_test(&x, s.window, s.cutoff)?;
        status = status.join(gproj_status(&r));
        let mut v = gproj_value(&r);
        v["module"] = json!(name);
        items.push(v);
    }
    Ok((json!({"modules": items}), status))
}

pub fn tor_check(l: &Loaded, s: &Settings) -> Result<Outcomes> {
    let c = l.require_context()?;
    let n_max = s.depth.unwrap_or(4);
    let mut status = Status::Ok;
    let mut items = Vec::new();
    for (name, x) in corner_modules(l, s, Corner::A)? {
        let r = crate::gorenstein::tor_identity_check(c, &x, n_max, s.cutoff)?;
        status = status.join(Status::from_bool(r.consistent()));
        let tor: Vec<Value> = r
            .entries
            .iter()
            .map(|e| json!({"n": e.n, "tor": e.tor, "tor_balanced": e.tor_balanced, "derived_a": e.derived_a, "derived_b": e.derived_b, "consistent": e.consistent()}))
            .collect();
        let ext: Vec<Value> = r.ext.iter().map(|e| json!({"target": e.target, "degree": e.degree, "over_ring": e.over_ring, "over_corner": e.over_corner})).collect();
        items.push(json!({"module": name, "tor": tor, "tor_vanishes_to": r.tor_vanishes_to, "ext": ext, "consistent": r.consistent()}));
    }
    Ok((json!({"modules": items}), status))
}

pub fn delta_gorenstein(l: &Loaded, s: &Settings) -> Result<Outcomes> {
    let base = l.require_algebra()?;
    let r = delta_gorenstein_check(base, s.cutoff)?;
    let mut status = match r.agrees() {
        Some(true) => Status::Ok,
        Some(false) => Status::Violated,
        None => Status::Undecided,
    };
    let isos: Vec<Value> = t_h_iso_check(base, &sample_modules(base)?)?
        .iter()
        .map(|k| {
            status = status.join(Status::from_bool(k.holds()));
            json!({"module": k.module, "side": k.side.to_string(), "dims": [k.dims.0, k.dims.1], "invertible": k.invertible, "squares": k.squares, "commuting": k.commuting})
        })
        .collect();
    let out = json!({"base": gorenstein_value(&r.base), "delta": gorenstein_value(&r.delta), "agree": r.agrees(), "t_h_isos": isos});
    Ok((out, status))
}

pub fn delta_gproj(l: &Loaded, s: &Settings) -> Result<Outcomes> {
    let base = l.require_algebra()?;
    let c = Arc::new(delta_context(base));
    let mut status = Status::Ok;
    let mut items = Vec::new();
    for (name, t) in classified_tuples(&c)? {
        let r = delta_gproj_check(&t, s.window, s.cutoff)?;
        status = status.join(Status::from_bool(r.agrees()));
        for g in [&r.flat, &r.x, &r.y] {
            status = status.join(gproj_status(g));
        }
        items.push(json!({
            "module": name,
            "flat": gproj_value(&r.flat),
            "x": gproj_value(&r.x),
            "y": gproj_value(&r.y),
            "agree": r.agrees(),
            "certified": r.certified(),
        }));
    }
    let rr = gproj_restriction_check(base, &sample_modules(base)?, s.window, s.cutoff)?;
    status = status.join(Status::from_bool(rr.holds()));
    let entries: Vec<Value> = rr
        .entries
        .iter()
        .map(|e| json!({"module": e.module, "base_member": e.base_member, "t_member": e.t_member, "t_prime_member": e.t_prime_member, "restricted_member": e.restricted_member}))
        .collect();
    let out = json!({"tuples": items, "restriction": {"entries": entries, "excluded": rr.excluded, "holds": rr.holds()}});
    Ok((out, status))
}

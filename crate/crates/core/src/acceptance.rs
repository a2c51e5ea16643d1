//! The acceptance matrix run by `moritakit examples`. Each criterion loads the
//! bundled documents through the same parser as the CLI, so a tampered fixture
//! shows up as a failing criterion.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::cli::commands::{verify_periodicity, Settings};
use crate::cli::document::{load, Loaded, LoadedModule};
use crate::cli::report::{render_json, Status};
use crate::cli::{fixtures, Command};
use crate::corpus::a2_path_algebra;
use crate::error::{Error, Result};
use crate::fdalg::{AlgebraIso, FDAlgebra};
use crate::fdmod::{minimal_resolution, InfiniteWitness, pd, pd_from_resolution, projective, simple_classes, simples, tensor, Bimodule, DimResult, FDModule};
use crate::gorenstein::{delta_gorenstein_check, delta_gproj_check, gproj_restriction_check, sample_modules, tor_identity_check};
use crate::homdim::{bound_sum_plus_one, bound_tensor_power, tightness, tightness_direct, Outcome, Tightness, Verdict};
use crate::morita::{
    build_morita_algebra, classify_projectives, classify_simples, delta_context, equivalence_premise, flat_to_tuple, functor_u, pierce_embedding, pierce_module,
    selfinjective_check, Corner, MoritaContext,
};
use crate::randomized::{run_suite, Shape};

pub const RANDOM_SEED: u64 = 20_261_015;
pub const RANDOM_CASES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CriterionStatus {
    Pass,
    Undecided,
    Fail,
}

impl fmt::Display for CriterionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CriterionStatus::Pass => "pass",
            CriterionStatus::Undecided => "undecided",
            CriterionStatus::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Criterion {
    pub number: u8,
    pub title: &'static str,
    pub status: CriterionStatus,
    pub facts: Vec<(String, String)>,
}

/// Fixture documents by name; tests swap single entries to tamper with them.
#[derive(Clone, Debug)]
pub struct Corpus {
    docs: BTreeMap<String, String>,
}

impl Corpus {
    pub fn bundled() -> Corpus {
        Corpus { docs: fixtures::FIXTURES.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect() }
    }

    pub fn with_document(mut self, name: &str, text: impl Into<String>) -> Corpus {
        self.docs.insert(name.to_string(), text.into());
        self
    }

    pub fn load(&self, name: &str) -> Result<Loaded> {
        load(self.docs.get(name).ok_or_else(|| Error::Io(format!("no fixture {name}")))?)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.docs.keys().map(String::as_str)
    }
}

/// Accumulates named facts and the verdict they imply.
#[derive(Default)]
struct Sheet {
    facts: Vec<(String, String)>,
    failed: bool,
    undecided: bool,
}

impl Sheet {
    fn fact(&mut self, k: impl Into<String>, v: impl fmt::Display) {
        self.facts.push((k.into(), v.to_string()));
    }

    fn require(&mut self, k: impl Into<String>, ok: bool) {
        self.fact(k, ok);
        self.failed |= !ok;
    }

    fn expect<T: PartialEq + fmt::Debug>(&mut self, k: impl Into<String>, got: T, want: T) {
        let k = k.into();
        if got != want {
            self.failed = true;
            self.fact(k, format!("{got:?} (expected {want:?})"));
        } else {
            self.fact(k, format!("{got:?}"));
        }
    }

    fn expect_dim(&mut self, k: impl Into<String>, got: &DimResult, want: usize) {
        let k = k.into();
        match got {
            DimResult::AtLeast(n) if *n <= want => self.undecided = true,
            DimResult::Finite(v) if *v == want => {}
            _ => self.failed = true,
        }
        self.fact(k, got);
    }

    fn expect_finite(&mut self, k: impl Into<String>, got: &DimResult) {
        match got {
            DimResult::AtLeast(_) => self.undecided = true,
            DimResult::Infinite(_) => self.failed = true,
            DimResult::Finite(_) => {}
        }
        self.fact(k, got);
    }

    fn outcome(&mut self, k: impl Into<String>, got: Outcome, want: Outcome) {
        if got == Outcome::Undecided {
            self.undecided = true;
        } else if got != want {
            self.failed = true;
        }
        self.fact(k, got);
    }

    fn finish(self, number: u8, title: &'static str) -> Criterion {
        let status = if self.failed {
            CriterionStatus::Fail
        } else if self.undecided {
            CriterionStatus::Undecided
        } else {
            CriterionStatus::Pass
        };
        Criterion { number, title, status, facts: self.facts }
    }
}

fn context(l: &Loaded) -> Result<Arc<MoritaContext>> {
    l.require_context().cloned()
}

/// Every simple of `a` has an infinite resolution with a verified periodicity.
fn certified_infinite(sheet: &mut Sheet, key: &str, x: &FDModule, cutoff: usize) -> Result<()> {
    let r = minimal_resolution(x, cutoff, true)?;
    let d = pd_from_resolution(&r);
    match (&d, verify_periodicity(&r)) {
        (DimResult::Infinite(InfiniteWitness::Periodic(p)), Some(true)) => sheet.fact(format!("{key} periodicity"), format!("start {} period {} verified", p.start, p.period)),
        (DimResult::AtLeast(_), _) => {
            sheet.undecided = true;
            sheet.fact(format!("{key} periodicity"), "not found within the cutoff");
        }
        _ => sheet.require(format!("{key} periodicity verified"), false),
    }
    Ok(())
}

fn sharp_sum_bound(corpus: &Corpus, cutoff: usize) -> Result<Sheet> {
    let mut s = Sheet::default();
    let c = context(&corpus.load("ex5_10")?)?;
    let r = bound_sum_plus_one(&c, cutoff)?;
    s.expect_dim("gldim ring", &r.lhs, 4);
    s.expect_dim("gldim A", &crate::fdmod::gldim(c.alg_a(), cutoff)?, 2);
    s.expect_dim("gldim B", &crate::fdmod::gldim(c.alg_b(), cutoff)?, 1);
    s.fact("hypotheses", r.hypotheses.iter().map(|h| format!("{}: {}", h.name, h.verdict)).collect::<Vec<_>>().join("; "));
    if r.hypotheses.iter().any(|h| h.verdict == Verdict::Undecided) {
        s.undecided = true;
    } else {
        s.require("hypotheses hold", r.hypotheses_hold());
    }
    if let Some(rhs) = &r.rhs {
        s.expect_dim("sum plus one", rhs, 4);
    }
    s.outcome("bound", r.outcome, Outcome::Satisfied);
    Ok(s)
}

fn strict_sum_bound(corpus: &Corpus, cutoff: usize) -> Result<Sheet> {
    let mut s = Sheet::default();
    let c = context(&corpus.load("ex5_11")?)?;
    let r = bound_sum_plus_one(&c, cutoff)?;
    s.expect_dim("gldim ring", &r.lhs, 2);
    s.expect_dim("gldim A", &crate::fdmod::gldim(c.alg_a(), cutoff)?, 2);
    s.expect_dim("gldim B", &crate::fdmod::gldim(c.alg_b(), cutoff)?, 1);
    if r.hypotheses.iter().any(|h| h.verdict == Verdict::Undecided) {
        s.undecided = true;
    } else {
        s.require("hypotheses hold", r.hypotheses_hold());
    }
    s.outcome("bound", r.outcome, Outcome::Satisfied);
    match (&r.lhs, &r.rhs) {
        (DimResult::Finite(a), Some(DimResult::Finite(b))) => s.require(format!("strict: {a} < {b}"), a < b),
        _ => s.undecided = true,
    }
    Ok(s)
}

fn tensor_power_sharp(corpus: &Corpus, cutoff: usize) -> Result<Sheet> {
    let mut s = Sheet::default();
    let c = context(&corpus.load("ex5_15")?)?;
    s.expect_dim("gldim A", &crate::fdmod::gldim(c.alg_a(), cutoff)?, 0);
    s.expect_dim("gldim B", &crate::fdmod::gldim(c.alg_b(), cutoff)?, 0);
    let mn = tensor(c.bimod_m(), &c.bimod_n().left_module())?.module;
    let word = tensor(c.bimod_n(), &mn)?.module;
    s.expect("dim N⊗M⊗N", word.dim(), 1);
    let r = bound_tensor_power(&c, 3, 1, cutoff)?;
    let h = r.hypotheses.iter().find(|h| h.name.contains("-tight projective"));
    s.require("N⊗M⊗N is A-tight projective", h.is_some_and(|h| h.verdict == Verdict::Holds));
    if let Some(rhs) = &r.rhs {
        s.expect_dim("variant 3, s = 1 bound", rhs, 4);
    }
    s.expect_dim("gldim ring", &r.lhs, 4);
    s.outcome("bound", r.outcome, Outcome::Satisfied);
    Ok(s)
}

fn untight_infinite(corpus: &Corpus, cutoff: usize) -> Result<Sheet> {
    let mut s = Sheet::default();
    let c = context(&corpus.load("ex5_1")?)?;
    let lam = c.algebra()?;
    for (i, x) in simple_classes(&lam) {
        certified_infinite(&mut s, &format!("simple {i}"), &x, cutoff)?;
    }
    let r = bound_sum_plus_one(&c, cutoff)?;
    s.require("some hypothesis fails", r.hypotheses.iter().any(|h| h.verdict == Verdict::Fails));
    let t = tightness(&c, Corner::B, &c.bimod_m().left_module(), cutoff)?;
    s.expect("tightness of M over B", t.tightness, Tightness::Untight { degree: 0 });
    s.outcome("bound", r.outcome, Outcome::Vacuous);
    Ok(s)
}

fn selfinjective_premise(corpus: &Corpus) -> Result<Sheet> {
    let mut s = Sheet::default();
    let c = context(&corpus.load("ex3_9")?)?;
    s.expect("selfinjective", selfinjective_check(&c)?.selfinjective, true);
    s.expect("equivalence premise", equivalence_premise(&c)?.holds(), false);
    Ok(s)
}

fn string_module(corpus: &Corpus, cutoff: usize) -> Result<Sheet> {
    let mut s = Sheet::default();
    let l = corpus.load("ex4_13")?;
    let c = context(&l)?;
    let base = l.require_algebra()?;
    let d = match l.module("D").map(|m| &m.module) {
        Some(LoadedModule::Flat { module, .. }) => module.clone(),
        _ => return Err(Error::Precondition("fixture ex4_13 declares no module D".into())),
    };
    let part = l.part.clone().ok_or_else(|| Error::Precondition("ex4_13 is not a Peirce split".into()))?;
    let flat = pierce_module(&c, &pierce_embedding(base, &part)?, &d)?;
    let t = flat_to_tuple(&c, &flat)?;
    s.expect("dims (X, Y)", (t.x.dim(), t.y.dim()), (2, 2));
    s.require("g = 0", t.g.is_zero());
    s.expect_finite("pd X over A", &pd(&functor_u(&t, Corner::A), cutoff)?);
    s.expect_finite("pd Y over B", &pd(&functor_u(&t, Corner::B), cutoff)?);
    certified_infinite(&mut s, "D over the ring", &flat, cutoff)?;

    let k = corpus.load("delta_kx2")?;
    let dual = k.require_algebra()?;
    let reg = Bimodule::regular(dual);
    let zero = MoritaContext::with_zero_maps(dual.clone(), dual.clone(), reg.clone(), reg)?;
    let delta = Arc::new(build_morita_algebra(&zero)?);
    let iso = AlgebraIso::search(&delta, &c.algebra()?, 1 << 14);
    s.require("isomorphism with the zero-map diagonal ring found", iso.as_ref().is_some_and(AlgebraIso::verify));
    Ok(s)
}

/// The context itself, or its zero-map counterpart when the pairings do not vanish.
fn zero_map_variant(c: &Arc<MoritaContext>) -> Result<Arc<MoritaContext>> {
    if c.maps_vanish() {
        return Ok(c.clone());
    }
    Ok(Arc::new(MoritaContext::with_zero_maps(c.alg_a().clone(), c.alg_b().clone(), c.bimod_m().clone(), c.bimod_n().clone())?))
}

fn corner_samples(a: &Arc<FDAlgebra>) -> Result<Vec<FDModule>> {
    let mut xs = simples(a);
    xs.extend((0..a.num_idempotents()).map(|i| projective(a, i)).collect::<Result<Vec<_>>>()?);
    Ok(xs)
}

fn tightness_paths(corpus: &Corpus, cutoff: usize) -> Result<Sheet> {
    let mut s = Sheet::default();
    let (mut agree, mut total) = (0, 0);
    for name in corpus.names() {
        let c = zero_map_variant(&context(&corpus.load(name)?)?)?;
        for side in [Corner::A, Corner::B] {
            for x in corner_samples(c.alg(side))? {
                let a = tightness(&c, side, &x, cutoff)?.tightness;
                let b = tightness_direct(&c, side, &x, cutoff)?;
                total += 1;
                if matches!(a, Tightness::Undecided { .. }) || matches!(b, Tightness::Undecided { .. }) {
                    s.undecided = true;
                } else if a == b {
                    agree += 1;
                } else {
                    s.require(format!("{name} {side}: {a} vs {b}"), false);
                }
            }
        }
    }
    s.fact("agreement", format!("{agree}/{total}"));
    Ok(s)
}

fn tor_paths(corpus: &Corpus, cutoff: usize) -> Result<Sheet> {
    let mut s = Sheet::default();
    let (mut ok, mut total, mut ext) = (0, 0, 0);
    for name in corpus.names() {
        let c = context(&corpus.load(name)?)?;
        for x in corner_samples(c.alg_a())? {
            let r = tor_identity_check(&c, &x, 4, cutoff)?;
            total += 1;
            ext += r.ext.len();
            if r.consistent() {
                ok += 1;
            } else {
                s.require(format!("{name}: module of dimension {}", x.dim()), false);
            }
        }
    }
    s.fact("consistent modules", format!("{ok}/{total}"));
    s.fact("ext comparisons", ext);
    Ok(s)
}

fn delta_levels(corpus: &Corpus, cutoff: usize) -> Result<Sheet> {
    let mut s = Sheet::default();
    let dual = corpus.load("delta_kx2")?.require_algebra()?.clone();
    let a2 = a2_path_algebra(dual.field());
    for (name, l, selfinjective) in [("K[x]/(x^2)", dual, true), ("A2", a2, false)] {
        let g = delta_gorenstein_check(&l, cutoff)?;
        match g.agrees() {
            Some(v) => s.require(format!("{name}: Gorenstein verdicts agree ({})", g.delta.verdict), v),
            None => s.undecided = true,
        }
        let c = Arc::new(delta_context(&l));
        let mut tuples: Vec<_> = classify_simples(&c)?.into_iter().map(|k| k.tuple).collect();
        tuples.extend(classify_projectives(&c)?.into_iter().map(|k| k.tuple));
        let (mut agree, mut certified) = (0, 0);
        for t in &tuples {
            let r = delta_gproj_check(t, None, cutoff)?;
            agree += usize::from(r.agrees());
            certified += usize::from(r.certified());
        }
        s.require(format!("{name}: membership matches componentwise ({agree}/{})", tuples.len()), agree == tuples.len());
        if selfinjective {
            s.require(format!("{name}: certified ({certified}/{})", tuples.len()), certified == tuples.len());
        } else {
            s.fact(format!("{name}: certified"), format!("{certified}/{}", tuples.len()));
        }
        let rr = gproj_restriction_check(&l, &sample_modules(&l)?, None, cutoff)?;
        s.require(format!("{name}: functors preserve Gorenstein-projectives ({} modules)", rr.entries.len()), rr.holds());
    }
    Ok(s)
}

fn randomized(_: &Corpus) -> Result<Sheet> {
    let mut s = Sheet::default();
    let r = run_suite(RANDOM_SEED, RANDOM_CASES)?;
    s.expect("cases", r.cases, RANDOM_CASES);
    s.fact("shapes", r.by_shape.iter().map(|(k, n)| format!("{k:?} {n}")).collect::<Vec<_>>().join(", "));
    s.require("zero-map and diagonal shapes present", r.by_shape.iter().all(|(k, n)| *n > 0 || *k == Shape::Peirce));
    s.require(format!("passed {}/{}", r.passed, r.cases), r.passed == r.cases);
    if let Some((case, msg)) = r.witness {
        s.fact("minimized witness", format!("{case}: {msg}"));
    }
    Ok(s)
}

fn determinism(corpus: &Corpus, cutoff: usize) -> Result<Sheet> {
    let mut s = Sheet::default();
    let settings = Settings { cutoff, ..Settings::default() };
    let mut compared = 0;
    for name in corpus.names() {
        let l = corpus.load(name)?;
        for cmd in [Command::Check, Command::Gldim, Command::Simples] {
            let a = render_json(&crate::cli::report(cmd, Some(&l), &settings).0);
            let b = render_json(&crate::cli::report(cmd, Some(&corpus.load(name)?), &settings).0);
            compared += 1;
            if a != b {
                s.require(format!("{name} {}", cmd.name()), false);
            }
        }
    }
    s.fact("reports compared", compared);
    Ok(s)
}

pub const TITLES: [&str; 11] = [
    "sum-plus-one bound attained (ex5_10)",
    "sum-plus-one bound strict (ex5_11)",
    "tensor-power bound sharp (ex5_15)",
    "infinite global dimension with periodicity witness (ex5_1)",
    "selfinjective with failing premise (ex3_9)",
    "string module and diagonal ring (ex4_13)",
    "tightness criterion matches direct resolutions",
    "Tor and Ext computed two ways agree",
    "Gorenstein levels over diagonal rings",
    "randomized structural suite over F_7",
    "deterministic reports",
];

pub fn run_criterion(n: u8, corpus: &Corpus, cutoff: usize) -> Criterion {
    let sheet = match n {
        1 => sharp_sum_bound(corpus, cutoff),
        2 => strict_sum_bound(corpus, cutoff),
        3 => tensor_power_sharp(corpus, cutoff),
        4 => untight_infinite(corpus, cutoff),
        5 => selfinjective_premise(corpus),
        6 => string_module(corpus, cutoff),
        7 => tightness_paths(corpus, cutoff),
        8 => tor_paths(corpus, cutoff),
        9 => delta_levels(corpus, cutoff),
        10 => randomized(corpus),
        11 => determinism(corpus, cutoff),
        _ => Err(Error::IndexOutOfRange { index: n as usize, len: 11 }),
    };
    let title = TITLES.get((n as usize).wrapping_sub(1)).copied().unwrap_or("unknown");
    match sheet {
        Ok(s) => s.finish(n, title),
        Err(e) => {
            let mut s = Sheet::default();
            match e {
                Error::Undecided(_) => s.undecided = true,
                _ => s.failed = true,
            }
            s.fact("error", e);
            s.finish(n, title)
        }
    }
}

pub fn run_all(corpus: &Corpus, cutoff: usize) -> Vec<Criterion> {
    (1..=11).map(|n| run_criterion(n, corpus, cutoff)).collect()
}

pub fn summarize(criteria: &[Criterion]) -> (Value, Status) {
    let items: Vec<Value> = criteria
        .iter()
        .map(|c| {
            let facts: serde_json::Map<String, Value> = c.facts.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
            json!({"number": c.number, "title": c.title, "status": c.status.to_string(), "facts": facts})
        })
        .collect();
    let worst = criteria.iter().map(|c| c.status).max().unwrap_or(CriterionStatus::Pass);
    let status = match worst {
        CriterionStatus::Pass => Status::Ok,
        CriterionStatus::Undecided => Status::Undecided,
        CriterionStatus::Fail => Status::Violated,
    };
    let passed = criteria.iter().filter(|c| c.status == CriterionStatus::Pass).count();
    let failing: Vec<u8> = criteria.iter().filter(|c| c.status == CriterionStatus::Fail).map(|c| c.number).collect();
    (json!({"criteria": items, "passed": passed, "total": criteria.len(), "failing": failing}), status)
}

pub fn examples_report(cutoff: usize) -> (Value, Status) {
    summarize(&run_all(&Corpus::bundled(), cutoff))
}

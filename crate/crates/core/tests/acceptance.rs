//! Acceptance matrix. Every criterion is checked twice: once through the
//! library's own `examples` route (which parses the bundled JSON documents) and
//! once here, directly on the algebras built from quiver data in `corpus`.
//! All quantities are exact, so every comparison is an equality.

use std::process::Command;
use std::sync::Arc;

use moritakit::acceptance::{run_criterion, Corpus, CriterionStatus, RANDOM_CASES, RANDOM_SEED, TITLES};
use moritakit::corpus::{self, sample, Sample};
use moritakit::exactla::Field;
use moritakit::fdalg::{AlgebraIso, FDAlgebra};
use moritakit::fdmod::{gldim, injective, is_iso, minimal_resolution, pd, pd_from_resolution, projective, simple_classes, simples, tensor, Bimodule, DimResult, InfiniteWitness};
use moritakit::gorenstein::{delta_gorenstein_check, tor_identity_check};
use moritakit::homdim::{bound_sum_plus_one, bound_tensor_power, gldim_via_tuple_simples, tightness, tightness_direct, Outcome, Tightness, Verdict};
use moritakit::morita::{
    build_morita_algebra, equivalence_premise, flat_to_tuple, functor_u, pierce_embedding, pierce_module, selfinjective_check, Corner, MoritaContext,
};
use moritakit::randomized::run_suite;

/// Resolution length used throughout; every decided quantity here is far below it.
const CUTOFF: usize = 64;
/// Degrees compared by the Tor and Ext check.
const TOR_DEGREES: usize = 4;
/// The randomized suite must pass every one of its cases.
const RANDOM_REQUIRED: usize = RANDOM_CASES;

fn ctx(name: &str) -> Arc<MoritaContext> {
    sample(name).unwrap_or_else(|| panic!("no sample {name}")).context
}

fn ring(c: &MoritaContext) -> Arc<FDAlgebra> {
    c.algebra().unwrap()
}

fn finite(d: &DimResult) -> Option<usize> {
    d.value()
}

/// Infinite pd with a periodicity that is re-checked by an independent isomorphism test.
fn periodic_certified(x: &moritakit::fdmod::FDModule) -> bool {
    let r = minimal_resolution(x, CUTOFF, true).unwrap();
    match pd_from_resolution(&r) {
        DimResult::Infinite(InfiniteWitness::Periodic(p)) => is_iso(&r.syzygies[p.start], &r.syzygies[p.start + p.period]).unwrap(),
        _ => false,
    }
}

fn corner_samples(a: &Arc<FDAlgebra>) -> Vec<moritakit::fdmod::FDModule> {
    let mut xs = simples(a);
    xs.extend((0..a.num_idempotents()).map(|i| projective(a, i).unwrap()));
    xs
}

fn zero_maps(c: &Arc<MoritaContext>) -> Arc<MoritaContext> {
    if c.maps_vanish() {
        return c.clone();
    }
    Arc::new(MoritaContext::with_zero_maps(c.alg_a().clone(), c.alg_b().clone(), c.bimod_m().clone(), c.bimod_n().clone()).unwrap())
}

fn direct(n: u8) -> Result<(), String> {
    let fail = |m: String| Err(m);
    match n {
        1 => {
            let c = ctx("ex5_10");
            let lam = ring(&c);
            let dims = (finite(&gldim(&lam, CUTOFF).unwrap()), finite(&gldim(c.alg_a(), CUTOFF).unwrap()), finite(&gldim(c.alg_b(), CUTOFF).unwrap()));
            if dims != (Some(4), Some(2), Some(1)) {
                return fail(format!("global dimensions {dims:?}"));
            }
            // the same number from the simple tuples instead of the flat simples
            if gldim_via_tuple_simples(&c, CUTOFF).unwrap() != DimResult::Finite(4) {
                return fail("gldim via tuple simples".into());
            }
            let r = bound_sum_plus_one(&c, CUTOFF).unwrap();
            if !r.hypotheses_hold() || r.outcome != Outcome::Satisfied || r.rhs != Some(DimResult::Finite(4)) {
                return fail(format!("bound {:?} rhs {:?}", r.outcome, r.rhs));
            }
            Ok(())
        }
        2 => {
            let c = ctx("ex5_11");
            let lam = ring(&c);
            let dims = (finite(&gldim(&lam, CUTOFF).unwrap()), finite(&gldim(c.alg_a(), CUTOFF).unwrap()), finite(&gldim(c.alg_b(), CUTOFF).unwrap()));
            if dims != (Some(2), Some(2), Some(1)) {
                return fail(format!("global dimensions {dims:?}"));
            }
            let r = bound_sum_plus_one(&c, CUTOFF).unwrap();
            if !r.hypotheses_hold() || r.rhs != Some(DimResult::Finite(4)) || r.outcome != Outcome::Satisfied {
                return fail(format!("bound {:?} rhs {:?}", r.outcome, r.rhs));
            }
            Ok(())
        }
        3 => {
            let c = ctx("ex5_15");
            if gldim(c.alg_a(), CUTOFF).unwrap() != DimResult::Finite(0) || gldim(c.alg_b(), CUTOFF).unwrap() != DimResult::Finite(0) {
                return fail("corners are not semisimple".into());
            }
            let mn = tensor(c.bimod_m(), &c.bimod_n().left_module()).unwrap().module;
            let nmn = tensor(c.bimod_n(), &mn).unwrap().module;
            if nmn.dim() != 1 {
                return fail(format!("dim N⊗M⊗N = {}", nmn.dim()));
            }
            let r = bound_tensor_power(&c, 3, 1, CUTOFF).unwrap();
            if r.lhs != DimResult::Finite(4) || r.rhs != Some(DimResult::Finite(4)) || r.outcome != Outcome::Satisfied {
                return fail(format!("{} {:?} {:?}", r.outcome, r.lhs, r.rhs));
            }
            Ok(())
        }
        4 => {
            let c = ctx("ex5_1");
            let lam = ring(&c);
            for (i, s) in simple_classes(&lam) {
                if !periodic_certified(&s) {
                    return fail(format!("simple {i} has no certified periodic resolution"));
                }
            }
            let r = bound_sum_plus_one(&c, CUTOFF).unwrap();
            if !r.hypotheses.iter().any(|h| h.verdict == Verdict::Fails) || r.outcome != Outcome::Vacuous {
                return fail(format!("bound {}", r.outcome));
            }
            if tightness(&c, Corner::B, &c.bimod_m().left_module(), CUTOFF).unwrap().tightness != (Tightness::Untight { degree: 0 }) {
                return fail("M should be untight over B at degree 0".into());
            }
            Ok(())
        }
        5 => {
            let c = ctx("ex3_9");
            let lam = ring(&c);
            // independent oracle: every projective is isomorphic to some injective
            let n = lam.num_idempotents();
            let flat_selfinjective = (0..n).all(|i| (0..n).any(|j| is_iso(&projective(&lam, i).unwrap(), &injective(&lam, j).unwrap()).unwrap()));
            if !flat_selfinjective || !selfinjective_check(&c).unwrap().selfinjective {
                return fail("not selfinjective".into());
            }
            if equivalence_premise(&c).unwrap().holds() {
                return fail("premise unexpectedly holds".into());
            }
            Ok(())
        }
        6 => {
            let l = corpus::two_loop_biserial(Field::Rational);
            let c = Arc::new(moritakit::morita::from_pierce(&l, &[0]).unwrap());
            let d = corpus::string_module(&l).unwrap();
            let flat = pierce_module(&c, &pierce_embedding(&l, &[0]).unwrap(), &d).unwrap();
            let t = flat_to_tuple(&c, &flat).unwrap();
            if (t.x.dim(), t.y.dim()) != (2, 2) || !t.g.is_zero() {
                return fail(format!("tuple dims ({}, {})", t.x.dim(), t.y.dim()));
            }
            if !pd(&functor_u(&t, Corner::A), CUTOFF).unwrap().is_finite() || !pd(&functor_u(&t, Corner::B), CUTOFF).unwrap().is_finite() {
                return fail("components should have finite pd".into());
            }
            if !periodic_certified(&flat) || !periodic_certified(&d) {
                return fail("D should have infinite pd with a periodicity".into());
            }
            let k = corpus::dual_numbers(Field::Rational);
            let reg = Bimodule::regular(&k);
            let zero = MoritaContext::with_zero_maps(k.clone(), k.clone(), reg.clone(), reg).unwrap();
            let delta = Arc::new(build_morita_algebra(&zero).unwrap());
            if !AlgebraIso::search(&delta, &ring(&c), 1 << 14).is_some_and(|i| i.verify()) {
                return fail("no isomorphism with the diagonal ring".into());
            }
            Ok(())
        }
        7 => {
            for Sample { name, context, .. } in corpus::samples() {
                let c = zero_maps(&context);
                for side in [Corner::A, Corner::B] {
                    for x in corner_samples(c.alg(side)) {
                        let a = tightness(&c, side, &x, CUTOFF).unwrap().tightness;
                        let b = tightness_direct(&c, side, &x, CUTOFF).unwrap();
                        if a != b || matches!(a, Tightness::Undecided { .. }) {
                            return fail(format!("{name} {side}: {a} vs {b}"));
                        }
                    }
                }
            }
            Ok(())
        }
        8 => {
            for Sample { name, context, .. } in corpus::samples() {
                for x in corner_samples(context.alg_a()) {
                    let r = tor_identity_check(&context, &x, TOR_DEGREES, CUTOFF).unwrap();
                    if !r.consistent() || r.entries.len() != TOR_DEGREES + 1 {
                        return fail(format!("{name}: module of dimension {}", x.dim()));
                    }
                }
            }
            Ok(())
        }
        9 => {
            let q = Field::Rational;
            for l in [corpus::dual_numbers(q), corpus::a2_path_algebra(q)] {
                if delta_gorenstein_check(&l, CUTOFF).unwrap().agrees() != Some(true) {
                    return fail(format!("Gorenstein verdicts differ for an algebra of dimension {}", l.dim()));
                }
            }
            Ok(())
        }
        10 => {
            let r = run_suite(RANDOM_SEED, RANDOM_CASES).unwrap();
            if r.cases != RANDOM_CASES || r.passed < RANDOM_REQUIRED {
                return fail(format!("{}/{} passed; witness {:?}", r.passed, r.cases, r.witness.map(|(c, m)| format!("{c}: {m}"))));
            }
            Ok(())
        }
        11 => {
            let bin = env!("CARGO_BIN_EXE_moritakit");
            let names = ["ex3_9", "ex4_13", "ex5_1", "ex5_10", "ex5_11", "ex5_15", "delta_kx2"];
            for name in names {
                for cmd in ["check", "gldim", "simples", "bounds"] {
                    let run = || Command::new(bin).args([cmd, &format!("fixture:{name}")]).output().unwrap().stdout;
                    if run() != run() {
                        return fail(format!("{cmd} {name} differs between runs"));
                    }
                }
            }
            Ok(())
        }
        _ => unreachable!(),
    }
}

#[test]
fn all_criteria() {
    let corpus = Corpus::bundled();
    let mut failures = Vec::new();
    for n in 1..=11u8 {
        let via_library = run_criterion(n, &corpus, CUTOFF);
        let via_direct = direct(n);
        let ok = via_library.status == CriterionStatus::Pass && via_direct.is_ok();
        println!(
            "criterion {n:>2} {}: {} (library {}, direct {})",
            TITLES[n as usize - 1],
            if ok { "PASS" } else { "FAIL" },
            via_library.status,
            via_direct.as_ref().map_or_else(|e| e.as_str(), |_| "ok"),
        );
        if !ok {
            failures.push(n);
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}

#[test]
fn examples_command_is_byte_identical_across_runs() {
    let bin = env!("CARGO_BIN_EXE_moritakit");
    let run = || Command::new(bin).arg("examples").output().unwrap();
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["results"]["passed"], 11);
}

#[test]
fn tampered_fixture_fails_its_criterion() {
    // dropping the arrow w4 -> v2 shortens the longest chain of the quiver
    let text = moritakit::cli::fixtures::get("ex5_10").unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(text).unwrap();
    doc["algebra"]["arrows"].as_array_mut().unwrap().retain(|a| a[0] != "g");
    let corpus = Corpus::bundled().with_document("ex5_10", doc.to_string());
    assert_eq!(run_criterion(1, &corpus, CUTOFF).status, CriterionStatus::Fail);
    // the untouched criteria are unaffected
    assert_eq!(run_criterion(2, &corpus, CUTOFF).status, CriterionStatus::Pass);
}

#[test]
fn criteria_outside_the_range_fail() {
    assert_eq!(run_criterion(12, &Corpus::bundled(), CUTOFF).status, CriterionStatus::Fail);
}

//! Projective dimensions over Morita rings with vanishing pairings: tight
//! resolutions, dimension identities and upper and lower bounds on the global
//! dimension in terms of the corners.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fdalg::FDAlgebra;
use crate::fdmod::{
    gldim, minimal_resolution, minimal_resolution_until, pd, pd_from_resolution, projective_cover, simple_classes, tensor, Bimodule, DimResult,
    FDModule, ResolutionStatus,
};
use crate::morita::{embed_zero, tuple_to_flat, Corner, MoritaContext};

/// Three-valued answer to a yes/no question computed up to a cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Undecided,
}

impl Verdict {
    fn of(b: bool) -> Verdict {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    fn and(self, o: Verdict) -> Verdict {
        match (self, o) {
            (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
            (Verdict::Undecided, _) | (_, Verdict::Undecided) => Verdict::Undecided,
            _ => Verdict::Holds,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Undecided => "undecided",
        })
    }
}

/// Bimodule that moves a module away from `side`: `M` for `A`, `N` for `B`.
pub fn outgoing(c: &MoritaContext, side: Corner) -> &Bimodule {
    match side {
        Corner::A => c.bimod_m(),
        Corner::B => c.bimod_n(),
    }
}

fn require_zero_maps(c: &MoritaContext) -> Result<()> {
    if c.maps_vanish() {
        Ok(())
    } else {
        Err(Error::Precondition("this check needs phi = psi = 0".into()))
    }
}

fn first_syzygy(x: &FDModule) -> Result<FDModule> {
    let r = minimal_resolution(x, 1, false)?;
    Ok(r.syzygies.get(1).cloned().unwrap_or_else(|| FDModule::zero(x.algebra())))
}

/// Projective dimension over the Morita ring of `(X,0,0,0)` or `(0,Y,0,0)`.
pub fn embedded_pd(c: &Arc<MoritaContext>, side: Corner, x: &FDModule, cutoff: usize) -> Result<DimResult> {
    pd(&tuple_to_flat(&embed_zero(c, side, x)?)?, cutoff)
}

// ---------------------------------------------------------------------------
// Tightness

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tightness {
    Tight,
    /// First degree whose term does not stay in its corner.
    Untight { degree: usize },
    /// Resolution neither ended nor repeated before this depth.
    Undecided { depth: usize },
}

impl Tightness {
    pub fn verdict(&self) -> Verdict {
        match self {
            Tightness::Tight => Verdict::Holds,
            Tightness::Untight { .. } => Verdict::Fails,
            Tightness::Undecided { .. } => Verdict::Undecided,
        }
    }
}

impl fmt::Display for Tightness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tightness::Tight => f.write_str("tight"),
            Tightness::Untight { degree } => write!(f, "untight at degree {degree}"),
            Tightness::Undecided { depth } => write!(f, "undecided at depth {depth}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TightnessReport {
    pub side: Corner,
    pub tightness: Tightness,
    /// The first resolution term `P` with `M ⊗ P ≠ 0` (resp. `N ⊗ P ≠ 0`).
    pub witness: Option<FDModule>,
    /// Projective dimension over the corner, read off the same resolution.
    pub corner_pd: DimResult,
}

/// Whether `(X,0,0,0)` (side `A`) or `(0,Y,0,0)` (side `B`) has a tight
/// projective resolution, decided on a minimal resolution over the corner:
/// every term must be killed by the outgoing bimodule.
pub fn tightness(c: &Arc<MoritaContext>, side: Corner, x: &FDModule, cutoff: usize) -> Result<TightnessReport> {
    require_zero_maps(c)?;
    let bm = outgoing(c, side);
    let r = minimal_resolution(x, cutoff, true)?;
    for (n, t) in r.terms.iter().enumerate() {
        if tensor(bm, &t.module)?.dim() != 0 {
            return Ok(TightnessReport {
                side,
                tightness: Tightness::Untight { degree: n },
                witness: Some(t.module.clone()),
                corner_pd: pd_from_resolution(&r),
            });
        }
    }
    // a periodic resolution has computed exactly one period past its start
    let tightness = match r.status {
        ResolutionStatus::Terminated | ResolutionStatus::Periodic(_) => Tightness::Tight,
        ResolutionStatus::Truncated(d) => Tightness::Undecided { depth: d },
    };
    Ok(TightnessReport { side, tightness, witness: None, corner_pd: pd_from_resolution(&r) })
}

/// The same question answered over the Morita ring itself: resolve the embedded
/// module minimally and look for a projective summand from the other corner.
/// Such a summand first shows up one step after the corner term that the
/// outgoing bimodule fails to kill, so the reported degree is shifted back.
pub fn tightness_direct(c: &Arc<MoritaContext>, side: Corner, x: &FDModule, cutoff: usize) -> Result<Tightness> {
    require_zero_maps(c)?;
    let w = tuple_to_flat(&embed_zero(c, side, x)?)?;
    let na = c.alg_a().num_idempotents();
    let foreign = |i: usize| match side {
        Corner::A => i >= na,
        Corner::B => i < na,
    };
    let r = minimal_resolution_until(&w, cutoff, true, |t| t.summands.iter().any(|&i| foreign(i)))?;
    for (n, t) in r.terms.iter().enumerate() {
        if t.summands.iter().any(|&i| foreign(i)) {
            return Ok(Tightness::Untight { degree: n.saturating_sub(1) });
        }
    }
    Ok(match r.status {
        ResolutionStatus::Terminated | ResolutionStatus::Periodic(_) => Tightness::Tight,
        ResolutionStatus::Truncated(d) => Tightness::Undecided { depth: d },
    })
}

/// `p` is projective over its corner and the outgoing bimodule kills it.
pub fn is_tight_projective(c: &MoritaContext, side: Corner, p: &FDModule) -> Result<bool> {
    let projective = projective_cover(p)?.module.dim() == p.dim();
    Ok(projective && tensor(outgoing(c, side), p)?.dim() == 0)
}

// ---------------------------------------------------------------------------
// Comparisons of dimensions

/// `d + k`.
pub fn shift(d: &DimResult, k: usize) -> DimResult {
    match d {
        DimResult::Finite(v) => DimResult::Finite(v + k),
        DimResult::AtLeast(v) => DimResult::AtLeast(v + k),
        DimResult::Infinite(p) => DimResult::Infinite(p.clone()),
    }
}

/// `a + b`.
pub fn add(a: &DimResult, b: &DimResult) -> DimResult {
    match (a, b) {
        (DimResult::Infinite(p), _) | (_, DimResult::Infinite(p)) => DimResult::Infinite(p.clone()),
        (DimResult::Finite(x), DimResult::Finite(y)) => DimResult::Finite(x + y),
        (DimResult::Finite(x) | DimResult::AtLeast(x), DimResult::Finite(y) | DimResult::AtLeast(y)) => DimResult::AtLeast(x + y),
    }
}

pub fn max2(a: &DimResult, b: &DimResult) -> DimResult {
    DimResult::max_of([a.clone(), b.clone()])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    AtMost,
    AtLeast,
    Equal,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::Equal => "=",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Satisfied,
    Violated,
    /// Hypotheses fail, or the right-hand side is infinite.
    Vacuous,
    Undecided,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Satisfied => "satisfied",
            Outcome::Violated => "violated",
            Outcome::Vacuous => "vacuous",
            Outcome::Undecided => "undecided",
        })
    }
}

/// Decides `lhs rel rhs`. An infinite upper bound is vacuous; two infinite
/// sides of an equality agree.
pub fn compare(lhs: &DimResult, rel: Relation, rhs: &DimResult) -> Outcome {
    use DimResult::{AtLeast as Ge, Finite as Fin, Infinite as Inf};
    let sat = |b: bool| if b { Outcome::Satisfied } else { Outcome::Violated };
    match rel {
        Relation::AtMost => match (lhs, rhs) {
            (_, Inf(_)) => Outcome::Vacuous,
            (Fin(x), Fin(y)) => sat(x <= y),
            (Inf(_), Fin(_)) => Outcome::Violated,
            (Ge(x), Fin(y)) if x > y => Outcome::Violated,
            _ => Outcome::Undecided,
        },
        Relation::AtLeast => match (lhs, rhs) {
            (Inf(_), _) => Outcome::Satisfied,
            (Fin(x), Fin(y)) => sat(x >= y),
            (Fin(_), Inf(_)) => Outcome::Violated,
            (Fin(x), Ge(y)) if y > x => Outcome::Violated,
            _ => Outcome::Undecided,
        },
        Relation::Equal => match (lhs, rhs) {
            (Inf(_), Inf(_)) => Outcome::Satisfied,
            (Fin(x), Fin(y)) => sat(x == y),
            (Fin(_), Inf(_)) | (Inf(_), Fin(_)) => Outcome::Violated,
            (Ge(x), Fin(y)) | (Fin(y), Ge(x)) if x > y => Outcome::Violated,
            _ => Outcome::Undecided,
        },
    }
}

// ---------------------------------------------------------------------------
// Dimension identities for a single module

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: DimResult,
    pub relation: Relation,
    pub rhs: Option<DimResult>,
    pub outcome: Outcome,
}

impl IdentityCheck {
    fn new(name: &'static str, lhs: DimResult, relation: Relation, rhs: DimResult) -> IdentityCheck {
        let outcome = compare(&lhs, relation, &rhs);
        IdentityCheck { name, lhs, relation, rhs: Some(rhs), outcome }
    }

    fn inapplicable(name: &'static str, lhs: DimResult, relation: Relation) -> IdentityCheck {
        IdentityCheck { name, lhs, relation, rhs: None, outcome: Outcome::Vacuous }
    }
}

/// Projective dimension identities for an embedded corner module `x`.
///
/// For side `A` (side `B` swaps the roles of `M` and `N`), with `P` the
/// projective cover of `x` and `Ω¹x` its kernel:
/// - `pd (P,0,0,0) = 1 + pd (0, M⊗P, 0, 0)` when `M ⊗ P ≠ 0`;
/// - `pd (X,0,0,0) <= 1 + max(pd (Ω¹X,0,0,0), pd (0,M,0,0))`;
/// - `pd (X,0,0,0) <= pd_A X + 1 + pd (0,M,0,0)`;
/// - `pd (X,0,0,0) <= pd_A X + 1 + pd_B M` when `M` has a tight resolution;
/// - `pd (X,0,0,0) = pd_A X` when `X` has a tight resolution.
pub fn pd_identity_checks(c: &Arc<MoritaContext>, side: Corner, x: &FDModule, cutoff: usize) -> Result<Vec<IdentityCheck>> {
    require_zero_maps(c)?;
    let other = side.other();
    let bm = outgoing(c, side);
    let mut out = Vec::new();

    let cover = projective_cover(x)?;
    let p = &cover.module;
    let pd_p = embedded_pd(c, side, p, cutoff)?;
    let mp = tensor(bm, p)?;
    if mp.dim() == 0 {
        out.push(IdentityCheck::inapplicable("cover shifts into the other corner", pd_p, Relation::Equal));
    } else {
        let rhs = shift(&embedded_pd(c, other, &mp.module, cutoff)?, 1);
        out.push(IdentityCheck::new("cover shifts into the other corner", pd_p, Relation::Equal, rhs));
    }

    let lhs = embedded_pd(c, side, x, cutoff)?;
    let omega = first_syzygy(x)?;
    let pd_omega = embedded_pd(c, side, &omega, cutoff)?;
    let m_mod = bm.left_module();
    let pd_m = embedded_pd(c, other, &m_mod, cutoff)?;
    out.push(IdentityCheck::new("one syzygy step", lhs.clone(), Relation::AtMost, shift(&max2(&pd_omega, &pd_m), 1)));

    let pd_x = pd(x, cutoff)?;
    out.push(IdentityCheck::new("corner dimension plus bimodule", lhs.clone(), Relation::AtMost, shift(&add(&pd_x, &pd_m), 1)));

    let mt = tightness(c, other, &m_mod, cutoff)?;
    match mt.tightness {
        Tightness::Tight => {
            let rhs = shift(&add(&pd_x, &mt.corner_pd), 1);
            out.push(IdentityCheck::new("tight bimodule bound", lhs.clone(), Relation::AtMost, rhs));
        }
        _ => out.push(IdentityCheck::inapplicable("tight bimodule bound", lhs.clone(), Relation::AtMost)),
    }

    let xt = tightness(c, side, x, cutoff)?;
    if xt.tightness == Tightness::Tight {
        out.push(IdentityCheck::new("tight resolution keeps pd", lhs, Relation::Equal, pd_x));
    } else {
        out.push(IdentityCheck::inapplicable("tight resolution keeps pd", lhs, Relation::Equal));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Bounds on the global dimension

#[derive(Clone, Debug)]
pub struct Hypothesis {
    pub name: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

impl Hypothesis {
    fn new(name: impl Into<String>, verdict: Verdict, witness: Option<String>) -> Hypothesis {
        Hypothesis { name: name.into(), verdict, witness }
    }
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub tag: String,
    pub hypotheses: Vec<Hypothesis>,
    pub lhs: DimResult,
    pub relation: Relation,
    pub rhs: Option<DimResult>,
    pub outcome: Outcome,
    /// Further named quantities shown for comparison.
    pub notes: Vec<(String, DimResult)>,
}

impl BoundReport {
    fn assemble(tag: impl Into<String>, hypotheses: Vec<Hypothesis>, lhs: DimResult, relation: Relation, rhs: Option<DimResult>) -> BoundReport {
        let hyp = hypotheses.iter().fold(Verdict::Holds, |acc, h| acc.and(h.verdict));
        let outcome = match (hyp, &rhs) {
            (Verdict::Fails, _) => Outcome::Vacuous,
            (Verdict::Undecided, _) | (_, None) => Outcome::Undecided,
            (Verdict::Holds, Some(r)) => compare(&lhs, relation, r),
        };
        BoundReport { tag: tag.into(), hypotheses, lhs, relation, rhs, outcome, notes: Vec::new() }
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.verdict == Verdict::Holds)
    }
}

fn tight_hypothesis(c: &Arc<MoritaContext>, side: Corner, cutoff: usize) -> Result<Hypothesis> {
    // M is a B-module, N an A-module
    let (bm, name) = match side {
        Corner::B => (c.bimod_m(), "M has a B-tight resolution"),
        Corner::A => (c.bimod_n(), "N has an A-tight resolution"),
    };
    let r = tightness(c, side, &bm.left_module(), cutoff)?;
    let witness = match &r.tightness {
        Tightness::Untight { degree } => Some(format!("term of degree {degree} with dimension vector {:?}", r.witness.as_ref().map(|w| w.dim_vector()).unwrap_or_default())),
        Tightness::Undecided { depth } => Some(format!("no decision within depth {depth}")),
        Tightness::Tight => None,
    };
    Ok(Hypothesis::new(name, r.tightness.verdict(), witness))
}

struct Dims {
    lam: DimResult,
    a: DimResult,
    b: DimResult,
}

fn dims(c: &MoritaContext, cutoff: usize) -> Result<Dims> {
    Ok(Dims { lam: gldim(&c.algebra()?, cutoff)?, a: gldim(c.alg_a(), cutoff)?, b: gldim(c.alg_b(), cutoff)? })
}

/// `gld Λ ≤ gld A + gld B + 1` when `M` and `N` have tight resolutions.
pub fn bound_sum_plus_one(c: &Arc<MoritaContext>, cutoff: usize) -> Result<BoundReport> {
    require_zero_maps(c)?;
    let hyps = vec![tight_hypothesis(c, Corner::B, cutoff)?, tight_hypothesis(c, Corner::A, cutoff)?];
    let d = dims(c, cutoff)?;
    let rhs = shift(&add(&d.a, &d.b), 1);
    let mut r = BoundReport::assemble("sum-plus-one", hyps, d.lam, Relation::AtMost, Some(rhs));
    r.notes = vec![("gldim A".into(), d.a), ("gldim B".into(), d.b)];
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    M,
    N,
}

/// Left module of a tensor word, evaluated from the right:
/// `F1 ⊗ (F2 ⊗ (… ⊗ Fk))`.
fn word_module(c: &MoritaContext, word: &[Letter]) -> Result<FDModule> {
    let bim = |l: Letter| match l {
        Letter::M => c.bimod_m(),
        Letter::N => c.bimod_n(),
    };
    let (last, rest) = word.split_last().expect("nonempty word");
    let mut acc = bim(*last).left_module();
    for l in rest.iter().rev() {
        acc = tensor(bim(*l), &acc)?.module;
    }
    Ok(acc)
}

fn alternating(start: Letter, len: usize) -> Vec<Letter> {
    let mut w = Vec::with_capacity(len);
    let mut l = start;
    for _ in 0..len {
        w.push(l);
        l = if l == Letter::M { Letter::N } else { Letter::M };
    }
    w
}

fn word_name(w: &[Letter]) -> String {
    w.iter().map(|l| if *l == Letter::M { "M" } else { "N" }).collect::<Vec<_>>().join("⊗")
}

/// Smallest `s` admitted by a tensor-power variant.
pub fn tensor_power_min_s(variant: u8) -> usize {
    match variant {
        1 | 4 | 5 => 1,
        _ => 0,
    }
}

/// The six tensor-power bounds. With `gld A`, `gld B` finite, `M` projective
/// over `B` and `N` projective over `A`:
/// 1. `(N⊗M)^s` `A`-tight projective, `s ≥ 1`: `max(gA + 2s, gB + 2s + 1)`;
/// 2. `M⊗(N⊗M)^s` `B`-tight projective, `s ≥ 0`: `max(gA + 2s + 1, gB + 2s + 2)`;
/// 3. `N⊗(M⊗N)^s` `A`-tight projective, `s ≥ 0`: `max(gA + 2s + 2, gB + 2s + 1)`;
/// 4. `(M⊗N)^s` `B`-tight projective, `s ≥ 1`: `max(gA + 2s + 1, gB + 2s)`;
/// 5. both of 1 and 4, `s ≥ 1`: `max(gA + 2s, gB + 2s)`;
/// 6. both of 3 and 2, `s ≥ 0`: `max(gA + 2s + 1, gB + 2s + 1)`.
pub fn bound_tensor_power(c: &Arc<MoritaContext>, variant: u8, s: usize, cutoff: usize) -> Result<BoundReport> {
    require_zero_maps(c)?;
    if !(1..=6).contains(&variant) {
        return Err(Error::Precondition(format!("variant {variant} is not in 1..6")));
    }
    if s < tensor_power_min_s(variant) {
        return Err(Error::Precondition(format!("variant {variant} needs s >= {}", tensor_power_min_s(variant))));
    }
    let d = dims(c, cutoff)?;
    let mut hyps = vec![
        Hypothesis::new("gldim A finite", finite_verdict(&d.a), Some(d.a.to_string())),
        Hypothesis::new("gldim B finite", finite_verdict(&d.b), Some(d.b.to_string())),
    ];
    let m_proj = projective_cover(&c.bimod_m().left_module())?.module.dim() == c.bimod_m().dim();
    let n_proj = projective_cover(&c.bimod_n().left_module())?.module.dim() == c.bimod_n().dim();
    hyps.push(Hypothesis::new("M projective as a left B-module", Verdict::of(m_proj), None));
    hyps.push(Hypothesis::new("N projective as a left A-module", Verdict::of(n_proj), None));

    // (word, corner it lives over)
    let nm = |k: usize| alternating(Letter::N, 2 * k);
    let mn = |k: usize| alternating(Letter::M, 2 * k);
    let m_nm = |k: usize| alternating(Letter::M, 2 * k + 1);
    let n_mn = |k: usize| alternating(Letter::N, 2 * k + 1);
    let words: Vec<(Vec<Letter>, Corner)> = match variant {
        1 => vec![(nm(s), Corner::A)],
        2 => vec![(m_nm(s), Corner::B)],
        3 => vec![(n_mn(s), Corner::A)],
        4 => vec![(mn(s), Corner::B)],
        5 => vec![(nm(s), Corner::A), (mn(s), Corner::B)],
        _ => vec![(n_mn(s), Corner::A), (m_nm(s), Corner::B)],
    };
    for (w, side) in &words {
        let module = word_module(c, w)?;
        let ok = is_tight_projective(c, *side, &module)?;
        let name = format!("{} is {side}-tight projective", word_name(w));
        hyps.push(Hypothesis::new(name, Verdict::of(ok), Some(format!("dimension {}", module.dim()))));
    }
    let (ka, kb) = match variant {
        1 => (2 * s, 2 * s + 1),
        2 => (2 * s + 1, 2 * s + 2),
        3 => (2 * s + 2, 2 * s + 1),
        4 => (2 * s + 1, 2 * s),
        5 => (2 * s, 2 * s),
        _ => (2 * s + 1, 2 * s + 1),
    };
    let rhs = max2(&shift(&d.a, ka), &shift(&d.b, kb));
    let mut r = BoundReport::assemble(format!("tensor-power:{variant}:{s}"), hyps, d.lam, Relation::AtMost, Some(rhs));
    r.notes = vec![("gldim A".into(), d.a), ("gldim B".into(), d.b)];
    Ok(r)
}

fn finite_verdict(d: &DimResult) -> Verdict {
    match d {
        DimResult::Finite(_) => Verdict::Holds,
        DimResult::Infinite(_) => Verdict::Fails,
        DimResult::AtLeast(_) => Verdict::Undecided,
    }
}

/// `gld Λ ≥ max(gld A, gld B)` when `M` is projective over `A` and `N` over `B`
/// from the right. Any pairings are allowed.
pub fn lower_bound_corners(c: &Arc<MoritaContext>, cutoff: usize) -> Result<BoundReport> {
    let m_right = c.bimod_m().right_module();
    let n_right = c.bimod_n().right_module();
    let m_ok = projective_cover(&m_right)?.module.dim() == m_right.dim();
    let n_ok = projective_cover(&n_right)?.module.dim() == n_right.dim();
    let hyps = vec![
        Hypothesis::new("M projective as a right A-module", Verdict::of(m_ok), None),
        Hypothesis::new("N projective as a right B-module", Verdict::of(n_ok), None),
    ];
    let d = dims(c, cutoff)?;
    let rhs = max2(&d.a, &d.b);
    let mut r = BoundReport::assemble("corner-lower", hyps, d.lam, Relation::AtLeast, Some(rhs));
    r.notes = vec![("gldim A".into(), d.a), ("gldim B".into(), d.b)];
    Ok(r)
}

/// Nilpotency class of `H(X, Y) = (N ⊗ Y, M ⊗ X)`: the least `k` with `H^(k+1) = 0`,
/// or `None` if no power up to `cutoff` vanishes.
pub fn nilpotency_class(c: &MoritaContext, cutoff: usize) -> Result<Option<usize>> {
    // words of length k starting with N and with M, grown from the right
    let mut start_n: Option<FDModule> = None;
    let mut start_m: Option<FDModule> = None;
    for k in 1..=cutoff.max(1) {
        let (nn, mm) = match (&start_n, &start_m) {
            (None, None) => (c.bimod_n().left_module(), c.bimod_m().left_module()),
            (Some(n_prev), Some(m_prev)) => (tensor(c.bimod_n(), m_prev)?.module, tensor(c.bimod_m(), n_prev)?.module),
            _ => unreachable!(),
        };
        if nn.dim() == 0 && mm.dim() == 0 {
            return Ok(Some(k - 1));
        }
        start_n = Some(nn);
        start_m = Some(mm);
    }
    Ok(None)
}

/// `gld Λ ≤ c(H) + 2·max(gld A, gld B)`, with tight resolutions of `M` and `N`
/// as the (sufficient) hypothesis. The sum-plus-one right side is reported too.
pub fn nilpotency_bound(c: &Arc<MoritaContext>, cutoff: usize) -> Result<BoundReport> {
    require_zero_maps(c)?;
    let hyps = vec![tight_hypothesis(c, Corner::B, cutoff)?, tight_hypothesis(c, Corner::A, cutoff)?];
    let d = dims(c, cutoff)?;
    let ch = nilpotency_class(c, cutoff)?;
    let rhs = ch.map(|k| shift(&add(&max2(&d.a, &d.b), &max2(&d.a, &d.b)), k));
    let sum = shift(&add(&d.a, &d.b), 1);
    let mut r = BoundReport::assemble("nilpotency", hyps, d.lam, Relation::AtMost, rhs);
    r.notes = vec![
        ("nilpotency class".into(), ch.map_or(DimResult::AtLeast(cutoff), DimResult::Finite)),
        ("sum-plus-one bound".into(), sum),
        ("gldim A".into(), d.a),
        ("gldim B".into(), d.b),
    ];
    Ok(r)
}

// ---------------------------------------------------------------------------
// Trivial extensions

/// `Z(X)`: the `A`-module `X` over `A ⋉ N` with `N` acting by zero.
pub fn zero_extension_module(lam: &Arc<FDAlgebra>, x: &FDModule) -> Result<FDModule> {
    let f = x.field();
    let da = x.algebra().dim();
    let mut action = x.actions().to_vec();
    action.extend((da..lam.dim()).map(|_| crate::exactla::Matrix::zeros(f, x.dim(), x.dim())));
    FDModule::new(lam.clone(), x.dim(), action)
}

#[derive(Clone, Debug)]
pub struct SimpleStep {
    pub simple: usize,
    pub lhs: DimResult,
    pub rhs: DimResult,
    pub outcome: Outcome,
}

#[derive(Clone, Debug)]
pub struct TrivextReport {
    pub gldim_base: DimResult,
    pub gldim_extension: DimResult,
    pub pd_zero_n: DimResult,
    pub pd_base_n: DimResult,
    /// `gld Λ ≤ gld A + pd Z(N) + 1`.
    pub pd_bound: BoundReport,
    /// `gld Λ ≤ 2 gld A + 1` when `pd_A N = pd Z(N)`.
    pub double_bound: BoundReport,
    /// `pd Z(S) ≤ 1 + max(pd Z(Ω¹S), pd Z(N))` for each simple `S`.
    pub per_simple: Vec<SimpleStep>,
}

pub fn trivext_bounds(a: &Arc<FDAlgebra>, n: &Bimodule, cutoff: usize) -> Result<TrivextReport> {
    let lam = Arc::new(FDAlgebra::trivial_extension(a, n)?);
    let ga = gldim(a, cutoff)?;
    let gl = gldim(&lam, cutoff)?;
    let n_mod = n.left_module();
    let pd_zn = pd(&zero_extension_module(&lam, &n_mod)?, cutoff)?;
    let pd_an = pd(&n_mod, cutoff)?;
    let pd_bound = BoundReport::assemble("trivext-pd", Vec::new(), gl.clone(), Relation::AtMost, Some(shift(&add(&ga, &pd_zn), 1)));
    let same = compare(&pd_an, Relation::Equal, &pd_zn);
    let hyp = Hypothesis::new(
        "pd_A N equals pd Z(N)",
        match same {
            Outcome::Satisfied => Verdict::Holds,
            Outcome::Violated => Verdict::Fails,
            _ => Verdict::Undecided,
        },
        Some(format!("{pd_an} vs {pd_zn}")),
    );
    let double_bound = BoundReport::assemble("trivext-double", vec![hyp], gl.clone(), Relation::AtMost, Some(shift(&add(&ga, &ga), 1)));
    let mut per_simple = Vec::new();
    for (i, s) in simple_classes(a) {
        let lhs = pd(&zero_extension_module(&lam, &s)?, cutoff)?;
        let omega = first_syzygy(&s)?;
        let pd_omega = pd(&zero_extension_module(&lam, &omega)?, cutoff)?;
        let rhs = shift(&max2(&pd_omega, &pd_zn), 1);
        let outcome = compare(&lhs, Relation::AtMost, &rhs);
        per_simple.push(SimpleStep { simple: i, lhs, rhs, outcome });
    }
    Ok(TrivextReport { gldim_base: ga, gldim_extension: gl, pd_zero_n: pd_zn, pd_base_n: pd_an, pd_bound, double_bound, per_simple })
}

/// Global dimension of the Morita ring recomputed from its tuple simples, as a
/// cross-check of the flat computation.
pub fn gldim_via_tuple_simples(c: &Arc<MoritaContext>, cutoff: usize) -> Result<DimResult> {
    let mut out = Vec::new();
    for k in crate::morita::classify_simples(c)? {
        out.push(pd(&tuple_to_flat(&k.tuple)?, cutoff)?);
    }
    Ok(DimResult::max_of(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactla::Field;
    use crate::fdmod::{projective, simples};
    use crate::morita::MoritaContext;

    const Q: Field = Field::Rational;

    fn ctx(name: &str) -> Arc<MoritaContext> {
        corpus::sample(name).unwrap().context
    }

    #[test]
    fn sharp_sum_bound() {
        let c = ctx("ex5_10");
        let r = bound_sum_plus_one(&c, 32).unwrap();
        assert!(r.hypotheses_hold());
        assert_eq!(r.lhs, DimResult::Finite(4));
        assert_eq!(r.rhs, Some(DimResult::Finite(4)));
        assert_eq!(r.outcome, Outcome::Satisfied);
        let n = nilpotency_bound(&c, 32).unwrap();
        assert_eq!(n.outcome, Outcome::Satisfied);
        assert_eq!(n.rhs, Some(DimResult::Finite(5)));
    }

    #[test]
    fn strict_sum_bound() {
        let r = bound_sum_plus_one(&ctx("ex5_11"), 32).unwrap();
        assert!(r.hypotheses_hold());
        assert_eq!(r.lhs, DimResult::Finite(2));
        assert_eq!(r.rhs, Some(DimResult::Finite(4)));
    }

    #[test]
    fn two_cycle_is_untight() {
        let c = ctx("ex5_1");
        let r = bound_sum_plus_one(&c, 32).unwrap();
        assert_eq!(r.outcome, Outcome::Vacuous);
        assert!(r.lhs.is_infinite());
        let t = tightness(&c, Corner::B, &c.bimod_m().left_module(), 32).unwrap();
        assert_eq!(t.tightness, Tightness::Untight { degree: 0 });
        for v in 1..=6u8 {
            for s in tensor_power_min_s(v)..4 {
                let b = bound_tensor_power(&c, v, s, 32).unwrap();
                assert_eq!(b.outcome, Outcome::Vacuous);
            }
        }
        assert_eq!(nilpotency_class(&c, 8).unwrap(), None);
    }

    #[test]
    fn tensor_power_variant_three_is_sharp() {
        let c = ctx("ex5_15");
        let r = bound_tensor_power(&c, 3, 1, 32).unwrap();
        assert!(r.hypotheses_hold(), "{:?}", r.hypotheses);
        assert_eq!(r.lhs, DimResult::Finite(4));
        assert_eq!(r.rhs, Some(DimResult::Finite(4)));
        let w = word_module(&c, &alternating(Letter::N, 3)).unwrap();
        assert_eq!(w.dim(), 1);
    }

    #[test]
    fn criterion_matches_direct_resolution() {
        for s in corpus::samples().into_iter().filter(|s| s.context.maps_vanish()) {
            let c = s.context;
            for side in [Corner::A, Corner::B] {
                let a = c.alg(side);
                let mut xs = simples(a);
                xs.extend((0..a.num_idempotents()).map(|i| projective(a, i).unwrap()));
                for x in xs {
                    let a = tightness(&c, side, &x, 24).unwrap().tightness;
                    let b = tightness_direct(&c, side, &x, 24).unwrap();
                    assert_eq!(a, b, "{} {side}", s.name);
                }
            }
        }
    }

    #[test]
    fn identities_hold_on_examples() {
        for name in ["ex5_1", "ex5_10", "ex5_11", "ex5_15"] {
            let c = ctx(name);
            for side in [Corner::A, Corner::B] {
                for x in simples(c.alg(side)) {
                    for chk in pd_identity_checks(&c, side, &x, 24).unwrap() {
                        assert!(matches!(chk.outcome, Outcome::Satisfied | Outcome::Vacuous), "{name} {side} {} {:?}", chk.name, chk);
                    }
                }
            }
        }
        let c = ctx("ex5_1");
        let p = projective(c.alg_a(), 0).unwrap();
        let chk = &pd_identity_checks(&c, Corner::A, &p, 24).unwrap()[0];
        assert!(chk.lhs.is_infinite());
        assert_eq!(chk.outcome, Outcome::Satisfied);
    }

    #[test]
    fn lower_bound_and_tuple_gldim() {
        let c = ctx("ex5_10");
        // M is a simple right A-module that is not projective
        assert_eq!(lower_bound_corners(&c, 32).unwrap().outcome, Outcome::Vacuous);
        assert_eq!(gldim_via_tuple_simples(&c, 32).unwrap(), DimResult::Finite(4));
        let r = lower_bound_corners(&ctx("delta_kx2"), 32).unwrap();
        assert!(r.hypotheses_hold());
        assert_eq!(r.outcome, Outcome::Satisfied);
        let r = lower_bound_corners(&ctx("ex5_15"), 32).unwrap();
        assert!(matches!(r.outcome, Outcome::Satisfied | Outcome::Vacuous));
    }

    #[test]
    fn trivial_extension_bounds() {
        let k = corpus::ground_field(Q);
        let r = trivext_bounds(&k, &Bimodule::regular(&k), 16).unwrap();
        assert!(r.gldim_extension.is_infinite());
        assert!(r.pd_zero_n.is_infinite());
        assert_eq!(r.pd_bound.outcome, Outcome::Vacuous);
        let zero = trivext_bounds(&k, &Bimodule::zero(&k, &k), 16).unwrap();
        assert_eq!(zero.gldim_extension, DimResult::Finite(0));
        assert_eq!(zero.pd_bound.outcome, Outcome::Satisfied);
    }
}

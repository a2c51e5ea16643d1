//! Subcategories of tuples over a Morita ring with `φ = ψ = 0`: the six classes
//! of the two TTF triples, their torsion decompositions, the bireflective
//! approximations and left approximations for add-presented pairs.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};
use crate::fdmod::{add_approximation, hom_space, tensor, tensor_map, FDModule, Side};
use crate::morita::{flat_to_tuple_with_basis, tuple_to_flat, MoritaContext, TupleMap, TupleModule};

fn require_zero_maps(c: &MoritaContext) -> Result<()> {
    if c.maps_vanish() {
        Ok(())
    } else {
        Err(Error::Precondition("subcategory classes need phi = psi = 0".into()))
    }
}

/// `ρ(g): Y → Hom_A(N, X)`, `y ↦ (n ↦ g(n ⊗ y))`, with rows indexed by `y` and
/// columns by `(n_i, x)` pairs.
pub fn rho(t: &TupleModule) -> Matrix {
    adjoint(t.tensor_ny(), &t.g, t.context().bimod_n().dim(), t.y.dim(), t.x.dim())
}

/// `π(f): X → Hom_B(M, Y)`, `x ↦ (m ↦ f(m ⊗ x))`.
pub fn pi(t: &TupleModule) -> Matrix {
    adjoint(t.tensor_mx(), &t.f, t.context().bimod_m().dim(), t.x.dim(), t.y.dim())
}

fn adjoint(tens: &crate::fdmod::Tensor, map: &Matrix, dw: usize, dsrc: usize, dtgt: usize) -> Matrix {
    let fl = map.field();
    let unit = |n: usize, i: usize| (0..n).map(|k| if k == i { fl.one() } else { fl.zero() }).collect::<Vec<_>>();
    Matrix::from_fn(fl, dsrc, dw * dtgt, |k, col| {
        let (i, r) = (col / dtgt.max(1), col % dtgt.max(1));
        let cls = tens.class_of(&unit(dw, i), &unit(dsrc, k));
        cls.iter().zip(0..).fold(fl.zero(), |acc, (v, row)| acc.add(&v.mul(map.get(row, r))))
    })
}

/// Membership in the six classes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassFlags {
    /// `f` epi (and then `g = 0`).
    pub in_x: bool,
    /// `X = 0`.
    pub in_y: bool,
    /// `ρ(g)` mono (and then `f = 0`).
    pub in_z: bool,
    /// `g` epi.
    pub in_xp: bool,
    /// `Y = 0`.
    pub in_yp: bool,
    /// `π(f)` mono.
    pub in_zp: bool,
}

impl ClassFlags {
    pub fn get(&self, c: Class) -> bool {
        match c {
            Class::X => self.in_x,
            Class::Y => self.in_y,
            Class::Z => self.in_z,
            Class::Xp => self.in_xp,
            Class::Yp => self.in_yp,
            Class::Zp => self.in_zp,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    X,
    Y,
    Z,
    Xp,
    Yp,
    Zp,
}

pub fn class_flags(t: &TupleModule) -> Result<ClassFlags> {
    require_zero_maps(t.context())?;
    let (dx, dy) = (t.x.dim(), t.y.dim());
    let f_epi = t.f.rank() == dy;
    let g_epi = t.g.rank() == dx;
    let rho_mono = rho(t).rank() == dy;
    let pi_mono = pi(t).rank() == dx;
    // an epi or mono adjoint forces the other structure map to vanish
    let forced = [(f_epi, &t.g, "f epi with g nonzero"), (rho_mono, &t.f, "rho(g) mono with f nonzero"), (g_epi, &t.f, "g epi with f nonzero"), (pi_mono, &t.g, "pi(f) mono with g nonzero")];
    for (cond, other, msg) in forced {
        if cond && !other.is_zero() {
            return Err(Error::InvalidTuple(msg.into()));
        }
    }
    Ok(ClassFlags { in_x: f_epi, in_y: dx == 0, in_z: rho_mono, in_xp: g_epi, in_yp: dy == 0, in_zp: pi_mono })
}

// ---------------------------------------------------------------------------
// Maps between tuples through flat modules

/// Basis of `Hom(s, t)` as tuple maps.
pub fn tuple_hom(s: &TupleModule, t: &TupleModule) -> Result<Vec<TupleMap>> {
    let hs = hom_space(&tuple_to_flat(s)?, &tuple_to_flat(t)?)?;
    hs.basis.iter().map(|h| split_flat(s, t, h)).collect()
}

/// A flat matrix in `X ⊕ Y` coordinates, cut into its two diagonal blocks.
fn split_flat(s: &TupleModule, t: &TupleModule, h: &Matrix) -> Result<TupleMap> {
    let (sx, sd, tx, td) = (s.x.dim(), s.dim(), t.x.dim(), t.dim());
    if !h.block(0, sx, tx, td).is_zero() || !h.block(sx, sd, 0, tx).is_zero() {
        return Err(Error::InvalidTuple("flat map mixes the corners".into()));
    }
    TupleMap::new(s.clone(), t.clone(), h.block(0, sx, 0, tx), h.block(sx, sd, tx, td))
}

/// `S_X ⊕ S_Y` inside the flat module of `t`.
fn stacked(t: &TupleModule, sx: &Subspace, sy: &Subspace) -> Subspace {
    let fl = t.x.field();
    let (dx, dy) = (t.x.dim(), t.y.dim());
    let mut rows = Vec::new();
    for r in 0..sx.dim() {
        let mut v = sx.basis().row(r).to_vec();
        v.extend(std::iter::repeat_n(fl.zero(), dy));
        rows.push(v);
    }
    for r in 0..sy.dim() {
        let mut v = vec![fl.zero(); dx];
        v.extend_from_slice(sy.basis().row(r));
        rows.push(v);
    }
    Subspace::span_rows(fl, dx + dy, rows)
}

/// The subtuple on `s` with its inclusion.
pub fn subtuple(t: &TupleModule, s: &Subspace) -> Result<TupleMap> {
    let w = tuple_to_flat(t)?;
    let (sub, incl) = w.submodule(s)?;
    let (st, basis) = flat_to_tuple_with_basis(t.context(), &sub)?;
    split_flat(&st, t, &basis.mul(&incl))
}

/// The quotient tuple by `s` with its projection.
pub fn quotient_tuple(t: &TupleModule, s: &Subspace) -> Result<TupleMap> {
    let w = tuple_to_flat(t)?;
    let (q, proj) = w.quotient(s)?;
    let (qt, basis) = flat_to_tuple_with_basis(t.context(), &q)?;
    let back = basis.inverse().ok_or_else(|| Error::InvalidTuple("corner bases do not span".into()))?;
    split_flat(t, &qt, &proj.mul(&back))
}

// ---------------------------------------------------------------------------
// Torsion pairs

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionPair {
    /// `(X, Y)`: torsion part `(X, Im f, κ, 0)`.
    XY,
    /// `(Y, Z)`: torsion part `(0, Ker ρ(g), 0, 0)`.
    YZ,
    /// `(X', Y')`: torsion part `(Im g, Y, 0, κ)`.
    XpYp,
    /// `(Y', Z')`: torsion part `(Ker π(f), 0, 0, 0)`.
    YpZp,
}

impl TorsionPair {
    pub const ALL: [TorsionPair; 4] = [TorsionPair::XY, TorsionPair::YZ, TorsionPair::XpYp, TorsionPair::YpZp];

    pub fn classes(self) -> (Class, Class) {
        match self {
            TorsionPair::XY => (Class::X, Class::Y),
            TorsionPair::YZ => (Class::Y, Class::Z),
            TorsionPair::XpYp => (Class::Xp, Class::Yp),
            TorsionPair::YpZp => (Class::Yp, Class::Zp),
        }
    }
}

impl fmt::Display for TorsionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TorsionPair::XY => "XY",
            TorsionPair::YZ => "YZ",
            TorsionPair::XpYp => "XpYp",
            TorsionPair::YpZp => "YpZp",
        })
    }
}

impl FromStr for TorsionPair {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TorsionPair::ALL.into_iter().find(|p| p.to_string().eq_ignore_ascii_case(s)).ok_or_else(|| Error::Precondition(format!("unknown torsion pair {s}")))
    }
}

#[derive(Clone, Debug)]
pub struct TorsionDecomposition {
    pub pair: TorsionPair,
    pub inclusion: TupleMap,
    pub projection: TupleMap,
}

impl TorsionDecomposition {
    pub fn sub(&self) -> &TupleModule {
        &self.inclusion.source
    }
    pub fn quot(&self) -> &TupleModule {
        &self.projection.target
    }

    /// Injective, surjective, composing to zero, with dimensions adding up.
    pub fn is_short_exact(&self) -> bool {
        let i = self.inclusion.flat_matrix();
        let p = self.projection.flat_matrix();
        i.rank() == i.rows() && p.rank() == p.cols() && i.mul(&p).is_zero() && i.rows() + p.cols() == i.cols()
    }

    /// The torsion part lies in the torsion class and the quotient in the torsion-free class.
    pub fn memberships(&self) -> Result<(bool, bool)> {
        let (tc, fc) = self.pair.classes();
        Ok((class_flags(self.sub())?.get(tc), class_flags(self.quot())?.get(fc)))
    }
}

fn torsion_subspace(t: &TupleModule, pair: TorsionPair) -> Subspace {
    let fl = t.x.field();
    let (dx, dy) = (t.x.dim(), t.y.dim());
    match pair {
        TorsionPair::XY => stacked(t, &Subspace::full(fl, dx), &t.f.row_space()),
        TorsionPair::YZ => stacked(t, &Subspace::zero(fl, dx), &rho(t).kernel()),
        TorsionPair::XpYp => stacked(t, &t.g.row_space(), &Subspace::full(fl, dy)),
        TorsionPair::YpZp => stacked(t, &pi(t).kernel(), &Subspace::zero(fl, dy)),
    }
}

pub fn torsion_decompose(t: &TupleModule, pair: TorsionPair) -> Result<TorsionDecomposition> {
    require_zero_maps(t.context())?;
    let s = torsion_subspace(t, pair);
    Ok(TorsionDecomposition { pair, inclusion: subtuple(t, &s)?, projection: quotient_tuple(t, &s)? })
}

#[derive(Clone, Debug, Default)]
pub struct HomVanishing {
    pub pairs_checked: usize,
    /// `(torsion sample, torsion-free sample, dim Hom)` for every nonzero Hom.
    pub counterexamples: Vec<(usize, usize, usize)>,
}

/// `Hom(u, v) = 0` for every sample `u` in the torsion class and `v` in the
/// torsion-free class of `pair`.
pub fn hom_vanishing_check(pair: TorsionPair, samples: &[TupleModule]) -> Result<HomVanishing> {
    let (tc, fc) = pair.classes();
    let flags = samples.iter().map(class_flags).collect::<Result<Vec<_>>>()?;
    let mut rep = HomVanishing::default();
    for (i, u) in samples.iter().enumerate().filter(|(i, _)| flags[*i].get(tc)) {
        for (j, v) in samples.iter().enumerate().filter(|(j, _)| flags[*j].get(fc)) {
            rep.pairs_checked += 1;
            let d = hom_space(&tuple_to_flat(u)?, &tuple_to_flat(v)?)?.dim();
            if d != 0 {
                rep.counterexamples.push((i, j, d));
            }
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Bireflective subcategories

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// `(X, 0, 0, 0)`.
    ModA,
    /// `(0, Y, 0, 0)`.
    ModB,
    /// `g = 0`: modules over the lower triangular ring.
    LowerTri,
    /// `f = 0`: modules over the upper triangular ring.
    UpperTri,
}

impl Target {
    pub const ALL: [Target; 4] = [Target::ModA, Target::ModB, Target::LowerTri, Target::UpperTri];

    pub fn contains(self, t: &TupleModule) -> bool {
        match self {
            Target::ModA => t.y.dim() == 0,
            Target::ModB => t.x.dim() == 0,
            Target::LowerTri => t.g.is_zero(),
            Target::UpperTri => t.f.is_zero(),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::ModA => "modA",
            Target::ModB => "modB",
            Target::LowerTri => "lowerTri",
            Target::UpperTri => "upperTri",
        })
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Target::ALL.into_iter().find(|p| p.to_string().eq_ignore_ascii_case(s)).ok_or_else(|| Error::Precondition(format!("unknown target {s}")))
    }
}

/// Left approximation (`Side::Left`, a quotient such as `t → (Coker g, Y, h, 0)`)
/// or right approximation (`Side::Right`, a subobject such as
/// `(X, Ker ρ(g), f, 0) → t`) of `t` by the target subcategory.
pub fn bireflective_approx(t: &TupleModule, target: Target, side: Side) -> Result<TupleMap> {
    require_zero_maps(t.context())?;
    let fl = t.x.field();
    let (dx, dy) = (t.x.dim(), t.y.dim());
    let (zx, zy, fx, fy) = (Subspace::zero(fl, dx), Subspace::zero(fl, dy), Subspace::full(fl, dx), Subspace::full(fl, dy));
    match side {
        Side::Left => {
            let s = match target {
                Target::ModA => stacked(t, &t.g.row_space(), &fy),
                Target::ModB => stacked(t, &fx, &t.f.row_space()),
                Target::LowerTri => stacked(t, &t.g.row_space(), &zy),
                Target::UpperTri => stacked(t, &zx, &t.f.row_space()),
            };
            quotient_tuple(t, &s)
        }
        Side::Right => {
            let s = match target {
                Target::ModA => stacked(t, &pi(t).kernel(), &zy),
                Target::ModB => stacked(t, &zx, &rho(t).kernel()),
                Target::LowerTri => stacked(t, &fx, &rho(t).kernel()),
                Target::UpperTri => stacked(t, &pi(t).kernel(), &fy),
            };
            subtuple(t, &s)
        }
    }
}

/// Every map from `approx.source` into a test object factors through `approx`
/// (left), or every map from a test object into `approx.target` factors
/// through it (right). Checked on full Hom bases.
pub fn factors_through(approx: &TupleMap, tests: &[TupleModule], side: Side) -> Result<bool> {
    let fl = approx.a.field();
    let q = approx.flat_matrix();
    for w in tests {
        let (maps, through) = match side {
            Side::Left => (tuple_hom(&approx.source, w)?, tuple_hom(&approx.target, w)?.iter().map(|u| q.mul(&u.flat_matrix())).collect::<Vec<_>>()),
            Side::Right => (tuple_hom(w, &approx.target)?, tuple_hom(w, &approx.source)?.iter().map(|u| u.flat_matrix().mul(&q)).collect()),
        };
        let Some(first) = maps.first() else { continue };
        let n = first.flat_matrix().rows() * first.flat_matrix().cols();
        let span = Subspace::span_rows(fl, n, through.iter().map(|m| m.flatten()).collect());
        if !maps.iter().all(|h| span.contains(&h.flat_matrix().flatten())) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Left approximations by add-presented pairs

/// Left approximation of `t` by the tuples whose components lie in `add u_gens`
/// and `add v_gens`: approximate `X`, push out along `f`, approximate the pushout.
/// Needs `Hom_A(N, u) = 0` for every `u` and `N ⊗ v = 0` for every `v`.
pub fn w_left_approximation(u_gens: &[FDModule], v_gens: &[FDModule], t: &TupleModule) -> Result<TupleMap> {
    let c = t.context();
    require_zero_maps(c)?;
    let fl = c.field();
    for (i, u) in u_gens.iter().enumerate() {
        let d = hom_space(&c.bimod_n().left_module(), u)?.dim();
        if d != 0 {
            return Err(Error::Precondition(format!("Hom_A(N, u_{i}) has dimension {d}")));
        }
    }
    for (i, v) in v_gens.iter().enumerate() {
        let d = tensor(c.bimod_n(), v)?.dim();
        if d != 0 {
            return Err(Error::Precondition(format!("N (x) v_{i} has dimension {d}")));
        }
    }
    let m = add_approximation(u_gens, &t.x, Side::Left)?;
    let x1 = m.target.clone();
    let t_a1 = t.tensor_mx();
    let t_x1 = tensor(c.bimod_m(), &x1)?;
    let mm = tensor_map(t_a1, &t_x1.clone(), &m.matrix);
    // pushout of M ⊗ m and f: (M ⊗ X1 ⊕ B1) modulo the pairs (z (M⊗m), -z f)
    let b1 = &t.y;
    let sum = FDModule::direct_sum(c.alg_b(), &[&t_x1.module, b1]);
    let rel = Matrix::hstack(fl, t_a1.dim(), &[&mm, &t.f.neg()]);
    let (pushout, proj) = sum.quotient(&rel.row_space())?;
    let dq = t_x1.dim();
    let rho_map = proj.block(0, dq, 0, pushout.dim());
    let theta = proj.block(dq, dq + b1.dim(), 0, pushout.dim());
    let n = add_approximation(v_gens, &pushout, Side::Left)?;
    let y1 = n.target.clone();
    let g0 = Matrix::zeros(fl, tensor(c.bimod_n(), &y1)?.dim(), x1.dim());
    let target = TupleModule::new(c, x1, y1, rho_map.mul(&n.matrix), g0)?;
    TupleMap::new(t.clone(), target, m.matrix, theta.mul(&n.matrix))
}

/// The tuples `(u, 0, 0, 0)`, `(0, v, 0, 0)` and `T_A(u)` when it lands in the
/// subcategory, as test objects for [`w_left_approximation`].
pub fn w_test_objects(c: &Arc<MoritaContext>, u_gens: &[FDModule], v_gens: &[FDModule]) -> Result<Vec<TupleModule>> {
    let mut out = Vec::new();
    for u in u_gens {
        out.push(crate::morita::embed_zero(c, crate::morita::Corner::A, u)?);
    }
    for v in v_gens {
        out.push(crate::morita::embed_zero(c, crate::morita::Corner::B, v)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::fdmod::{injective, projective, simple, simples};
    use crate::morita::{classify_injectives, classify_projectives, classify_simples, functor_c, functor_h, functor_t, Corner};

    fn ctx(name: &str) -> Arc<MoritaContext> {
        corpus::sample(name).unwrap().context
    }

    fn corpus_tuples(c: &Arc<MoritaContext>) -> Vec<TupleModule> {
        let mut out = Vec::new();
        for k in classify_projectives(c).unwrap().into_iter().chain(classify_injectives(c).unwrap()).chain(classify_simples(c).unwrap()) {
            out.push(k.tuple);
        }
        for side in [Corner::A, Corner::B] {
            for x in simples(c.alg(side)) {
                out.push(functor_t(c, side, &x).unwrap());
                out.push(functor_h(c, side, &x).unwrap());
            }
        }
        out
    }

    #[test]
    fn functor_images_land_in_their_classes() {
        let c = ctx("ex5_1");
        for x in simples(c.alg_a()) {
            assert!(class_flags(&functor_t(&c, Corner::A, &x).unwrap()).unwrap().in_x);
            assert!(class_flags(&functor_h(&c, Corner::A, &x).unwrap()).unwrap().in_z);
        }
        for y in simples(c.alg_b()) {
            assert!(class_flags(&functor_t(&c, Corner::B, &y).unwrap()).unwrap().in_xp);
            assert!(class_flags(&functor_h(&c, Corner::B, &y).unwrap()).unwrap().in_zp);
            assert!(class_flags(&crate::morita::embed_zero(&c, Corner::B, &y).unwrap()).unwrap().in_y);
        }
    }

    #[test]
    fn decompositions_are_exact_with_right_memberships() {
        for name in ["ex5_1", "ex5_10", "ex5_15", "ex4_13"] {
            let c = ctx(name);
            if !c.maps_vanish() {
                continue;
            }
            for t in corpus_tuples(&c) {
                for pair in TorsionPair::ALL {
                    let d = torsion_decompose(&t, pair).unwrap();
                    assert!(d.is_short_exact(), "{name} {pair}");
                    assert_eq!(d.memberships().unwrap(), (true, true), "{name} {pair}");
                }
            }
        }
    }

    #[test]
    fn torsion_classes_have_no_maps_to_torsion_free() {
        let c = ctx("ex5_1");
        let mut samples = corpus_tuples(&c);
        samples.push(crate::morita::embed_zero(&c, Corner::A, &FDModule::zero(c.alg_a())).unwrap());
        for pair in TorsionPair::ALL {
            let r = hom_vanishing_check(pair, &samples).unwrap();
            assert!(r.pairs_checked > 0, "{pair}");
            assert!(r.counterexamples.is_empty(), "{pair} {:?}", r.counterexamples);
        }
    }

    #[test]
    fn intersections_are_the_corner_embeddings() {
        let c = ctx("ex5_10");
        for t in corpus_tuples(&c) {
            let fl = class_flags(&t).unwrap();
            assert_eq!(fl.in_x && fl.in_z, fl.in_yp);
            assert_eq!(fl.in_xp && fl.in_zp, fl.in_y);
        }
        for x in simples(c.alg_a()) {
            let fl = class_flags(&functor_c(&c, Corner::A, &x).unwrap()).unwrap();
            assert!(fl.in_x && fl.in_z);
        }
    }

    #[test]
    fn string_module_decomposition() {
        let s = corpus::sample("ex4_13").unwrap();
        let c = s.context;
        let d = corpus::string_module(s.source.as_ref().unwrap()).unwrap();
        let emb = crate::morita::pierce_embedding(s.source.as_ref().unwrap(), &[0]).unwrap();
        let w = crate::morita::pierce_module(&c, &emb, &d).unwrap();
        let t = crate::morita::flat_to_tuple(&c, &w).unwrap();
        assert_eq!((t.x.dim(), t.y.dim()), (2, 2));
        assert!(t.g.is_zero());
        let dec = torsion_decompose(&t, TorsionPair::XY).unwrap();
        assert_eq!(dec.sub().y.dim(), t.f.rank());
        assert_eq!(t.f.rank(), 1);
        let lower = bireflective_approx(&t, Target::LowerTri, Side::Left).unwrap();
        assert!(lower.a.inverse().is_some() && lower.b.inverse().is_some());
    }

    #[test]
    fn approximations_land_and_factor() {
        let c = ctx("ex5_1");
        let samples = corpus_tuples(&c);
        for t in &samples {
            for target in Target::ALL {
                for side in [Side::Left, Side::Right] {
                    let ap = bireflective_approx(t, target, side).unwrap();
                    let obj = if side == Side::Left { &ap.target } else { &ap.source };
                    assert!(target.contains(obj), "{target}");
                    let tests: Vec<TupleModule> = samples.iter().filter(|s| target.contains(s)).cloned().collect();
                    assert!(factors_through(&ap, &tests, side).unwrap(), "{target} {side:?}");
                    if target.contains(t) {
                        assert!(ap.a.inverse().is_some() && ap.b.inverse().is_some());
                    }
                }
            }
        }
        // a projective from the B corner has g an isomorphism, so its A-reflection vanishes
        let q = functor_t(&c, Corner::B, &projective(c.alg_b(), 0).unwrap()).unwrap();
        let ap = bireflective_approx(&q, Target::ModA, Side::Left).unwrap();
        assert!(ap.target.is_zero());
    }

    #[test]
    fn reflection_is_idempotent() {
        let c = ctx("ex5_10");
        for t in corpus_tuples(&c) {
            let r = bireflective_approx(&t, Target::ModA, Side::Left).unwrap();
            let rr = bireflective_approx(&r.target, Target::ModA, Side::Left).unwrap();
            assert!(rr.a.inverse().is_some() && rr.b.inverse().is_some());
        }
    }

    #[test]
    fn add_presented_approximation() {
        let c = ctx("ex5_1");
        // every bimodule tensor is one-dimensional here, so pick generators meeting the hypotheses
        let n_mod = c.bimod_n().left_module();
        let u_gens: Vec<FDModule> = simples(c.alg_a()).into_iter().chain([injective(c.alg_a(), 0).unwrap()]).filter(|u| hom_space(&n_mod, u).unwrap().dim() == 0).collect();
        let v_gens: Vec<FDModule> = simples(c.alg_b()).into_iter().chain([projective(c.alg_b(), 0).unwrap()]).filter(|v| tensor(c.bimod_n(), v).unwrap().dim() == 0).collect();
        let zero_a = FDModule::zero(c.alg_a());
        let zero_b = FDModule::zero(c.alg_b());
        let t = functor_t(&c, Corner::A, &simple(c.alg_a(), 0).unwrap()).unwrap();
        let ap = w_left_approximation(&[zero_a.clone()], &[zero_b.clone()], &t).unwrap();
        assert!(ap.target.is_zero());
        if u_gens.is_empty() && v_gens.is_empty() {
            return;
        }
        let u = if u_gens.is_empty() { vec![zero_a] } else { u_gens };
        let v = if v_gens.is_empty() { vec![zero_b] } else { v_gens };
        for t in corpus_tuples(&c) {
            let ap = w_left_approximation(&u, &v, &t).unwrap();
            let tests = w_test_objects(&c, &u, &v).unwrap();
            assert!(factors_through(&ap, &tests, Side::Left).unwrap());
        }
    }

    #[test]
    fn w_approximation_rejects_bad_generators() {
        let c = ctx("ex5_1");
        let t = functor_t(&c, Corner::A, &simple(c.alg_a(), 0).unwrap()).unwrap();
        let p = projective(c.alg_a(), 0).unwrap();
        if hom_space(&c.bimod_n().left_module(), &p).unwrap().dim() != 0 {
            assert!(w_left_approximation(&[p], &[FDModule::zero(c.alg_b())], &t).is_err());
        }
    }
}

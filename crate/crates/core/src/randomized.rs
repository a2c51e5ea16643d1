//! Seeded random contexts over small prime fields and the structural checks run
//! on each: flat round trips, the adjunctions of `T`, `U`, `H`, exactness of `U`
//! and the count of simples. Failing cases are shrunk by deleting arrows.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{path_algebra, radical_square_zero};
use crate::error::Result;
use crate::exactla::Field;
use crate::fdalg::FDAlgebra;
use crate::fdmod::{hom_space, is_iso, minimal_resolution, projective, simples, FDModule};
use crate::morita::{
    classify_projectives, classify_simples, delta_context, flat_to_tuple, from_pierce, functor_h, functor_t, functor_u,
    tuple_to_flat, validate_context, Corner, MoritaContext,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Peirce split with both pairings replaced by zero.
    ZeroMaps,
    /// Peirce split keeping the multiplication of the algebra.
    Peirce,
    /// `Δ` on the algebra, pairings given by multiplication.
    Delta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    RadicalSquareZero,
    /// Acyclic quiver with no relations.
    Hereditary,
}

/// A reproducible description of a random context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomCase {
    pub prime: u64,
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
    pub family: Family,
    pub shape: Shape,
    pub part: Vec<usize>,
}

impl fmt::Display for RandomCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self.arrows.iter().map(|(s, t)| format!("{s}->{t}")).collect();
        write!(f, "F_{} {:?} {:?} on {} vertices, arrows [{}], part {:?}", self.prime, self.family, self.shape, self.vertices, arrows.join(", "), self.part)
    }
}

impl RandomCase {
    pub fn algebra(&self) -> Result<Arc<FDAlgebra>> {
        let field = Field::prime(self.prime)?;
        let names: Vec<String> = (0..self.vertices).map(|i| format!("v{i}")).collect();
        let labels: Vec<String> = (0..self.arrows.len()).map(|i| format!("a{i}")).collect();
        let vs: Vec<&str> = names.iter().map(String::as_str).collect();
        let arrows: Vec<(&str, &str, &str)> = self.arrows.iter().zip(&labels).map(|((s, t), l)| (l.as_str(), vs[*s], vs[*t])).collect();
        match self.family {
            Family::RadicalSquareZero => radical_square_zero(field, &vs, &arrows),
            Family::Hereditary => path_algebra(field, &vs, &arrows, &[], self.vertices.max(2)),
        }
    }

    pub fn context(&self) -> Result<Arc<MoritaContext>> {
        let l = self.algebra()?;
        let c = match self.shape {
            Shape::Delta => delta_context(&l),
            Shape::Peirce => from_pierce(&l, &self.part)?,
            Shape::ZeroMaps => {
                let p = from_pierce(&l, &self.part)?;
                MoritaContext::with_zero_maps(p.alg_a().clone(), p.alg_b().clone(), p.bimod_m().clone(), p.bimod_n().clone())?
            }
        };
        Ok(Arc::new(c))
    }

    fn corner_dims(&self) -> Result<(usize, usize)> {
        let c = self.context()?;
        Ok((c.alg_a().dim(), c.alg_b().dim()))
    }
}

fn random_case(rng: &mut ChaCha8Rng, prime: u64, max_corner: usize) -> RandomCase {
    loop {
        let shape = [Shape::ZeroMaps, Shape::ZeroMaps, Shape::Peirce, Shape::Delta][rng.gen_range(0..4)];
        let family = if rng.gen_bool(0.6) { Family::RadicalSquareZero } else { Family::Hereditary };
        let vertices = if shape == Shape::Delta { rng.gen_range(1..=3) } else { rng.gen_range(2..=4) };
        let n_arrows = rng.gen_range(0..=vertices + 1);
        let mut arrows = Vec::new();
        for _ in 0..n_arrows {
            let (s, t) = (rng.gen_range(0..vertices), rng.gen_range(0..vertices));
            match family {
                Family::Hereditary if s < t => arrows.push((s, t)),
                Family::Hereditary => {}
                Family::RadicalSquareZero => arrows.push((s, t)),
            }
        }
        let mut idx: Vec<usize> = (0..vertices).collect();
        idx.shuffle(rng);
        let cut = if vertices > 1 { rng.gen_range(1..vertices) } else { 1 };
        let mut part = idx[..cut].to_vec();
        part.sort_unstable();
        let case = RandomCase { prime, vertices, arrows, family, shape, part };
        match case.corner_dims() {
            Ok((a, b)) if a <= max_corner && b <= max_corner => return case,
            _ => continue,
        }
    }
}

/// `count` cases from a fixed seed, cycling through the three shapes' mix.
pub fn generate(seed: u64, count: usize, prime: u64, max_corner: usize) -> Vec<RandomCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_case(&mut rng, prime, max_corner)).collect()
}

fn fail(msg: impl Into<String>) -> Result<std::result::Result<(), String>> {
    Ok(Err(msg.into()))
}

/// All structural checks on one case; `Ok(Err(_))` names the first failure.
pub fn check_case(case: &RandomCase) -> Result<std::result::Result<(), String>> {
    let c = case.context()?;
    let v = validate_context(&c);
    if !v.is_empty() {
        return fail(format!("context identities fail: {}", v.len()));
    }
    let lam = c.algebra()?;
    if lam.validate().is_err() {
        return fail("Morita ring is not associative");
    }
    // flat round trips
    let reg = FDModule::regular(&lam);
    let t = flat_to_tuple(&c, &reg)?;
    if !is_iso(&tuple_to_flat(&t)?, &reg)? {
        return fail("regular module does not survive the round trip");
    }
    let classified = classify_projectives(&c)?;
    for k in &classified {
        let back = flat_to_tuple(&c, &tuple_to_flat(&k.tuple)?)?;
        if back.x != k.tuple.x || back.y != k.tuple.y || back.f != k.tuple.f || back.g != k.tuple.g {
            return fail(format!("tuple {} changes under the round trip", k.origin));
        }
    }
    let targets: Vec<_> = classified.iter().map(|k| k.tuple.clone()).chain(classify_simples(&c)?.into_iter().map(|k| k.tuple)).collect();
    // adjunctions T ⊣ U ⊣ H on both sides
    for side in [Corner::A, Corner::B] {
        let alg = c.alg(side);
        let mut xs = simples(alg);
        xs.extend((0..alg.num_idempotents()).map(|i| projective(alg, i)).collect::<Result<Vec<_>>>()?);
        for x in &xs {
            let tx = tuple_to_flat(&functor_t(&c, side, x)?)?;
            let hx = tuple_to_flat(&functor_h(&c, side, x)?)?;
            for t in &targets {
                let u = functor_u(t, side);
                let w = tuple_to_flat(t)?;
                if hom_space(&tx, &w)?.dim() != hom_space(x, &u)?.dim() {
                    return fail(format!("Hom(T X, t) differs from Hom(X, U t) on side {side}"));
                }
                if hom_space(&w, &hx)?.dim() != hom_space(&u, x)?.dim() {
                    return fail(format!("Hom(t, H X) differs from Hom(U t, X) on side {side}"));
                }
            }
        }
    }
    // U is exact on 0 -> Ω S -> P -> S -> 0
    for k in classify_simples(&c)? {
        let s = tuple_to_flat(&k.tuple)?;
        let r = minimal_resolution(&s, 1, false)?;
        let p = flat_to_tuple(&c, &r.terms[0].module)?;
        let omega = r.syzygies.get(1).cloned().unwrap_or_else(|| FDModule::zero(&lam));
        let o = flat_to_tuple(&c, &omega)?;
        if o.x.dim() + k.tuple.x.dim() != p.x.dim() || o.y.dim() + k.tuple.y.dim() != p.y.dim() {
            return fail(format!("components of the cover of {} are not exact", k.origin));
        }
    }
    // one simple tuple per simple of the Morita ring, pairwise non-isomorphic
    let sims = classify_simples(&c)?;
    if sims.len() != crate::fdmod::simple_classes(&lam).len() {
        return fail("wrong number of simple tuples");
    }
    for (i, a) in sims.iter().enumerate() {
        for b in &sims[i + 1..] {
            if is_iso(&tuple_to_flat(&a.tuple)?, &tuple_to_flat(&b.tuple)?)? {
                return fail("two simple tuples are isomorphic");
            }
        }
    }
    Ok(Ok(()))
}

/// Deletes arrows one at a time while the failure persists.
pub fn minimize(case: &RandomCase) -> RandomCase {
    let fails = |c: &RandomCase| !matches!(check_case(c), Ok(Ok(())));
    let mut cur = case.clone();
    let mut progress = true;
    while progress {
        progress = false;
        for i in 0..cur.arrows.len() {
            let mut next = cur.clone();
            next.arrows.remove(i);
            if fails(&next) {
                cur = next;
                progress = true;
                break;
            }
        }
    }
    cur
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub cases: usize,
    pub passed: usize,
    /// The first failure, shrunk, with its message.
    pub witness: Option<(RandomCase, String)>,
    pub by_shape: Vec<(Shape, usize)>,
}

pub fn run_suite(seed: u64, count: usize) -> Result<SuiteReport> {
    let cases = generate(seed, count, 7, 6);
    let mut passed = 0;
    let mut witness = None;
    for case in &cases {
        match check_case(case) {
            Ok(Ok(())) => passed += 1,
            Ok(Err(msg)) => {
                if witness.is_none() {
                    let small = minimize(case);
                    let msg = check_case(&small).ok().and_then(|r| r.err()).unwrap_or(msg);
                    witness = Some((small, msg));
                }
            }
            Err(e) => {
                if witness.is_none() {
                    witness = Some((minimize(case), e.to_string()));
                }
            }
        }
    }
    let by_shape = [Shape::ZeroMaps, Shape::Peirce, Shape::Delta].into_iter().map(|s| (s, cases.iter().filter(|c| c.shape == s).count())).collect();
    Ok(SuiteReport { cases: cases.len(), passed, witness, by_shape })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_reproducible() {
        assert_eq!(generate(3, 10, 7, 6), generate(3, 10, 7, 6));
    }

    #[test]
    fn small_suite_passes() {
        let r = run_suite(11, 12).unwrap();
        assert_eq!(r.passed, r.cases, "{:?}", r.witness.map(|(c, m)| format!("{c}: {m}")));
    }
}

//! Property tests. Random contexts come from the same seeded generator as the
//! structural suite (corners of dimension at most 5 over F_7); proptest picks
//! the seeds.

use std::sync::Arc;

use proptest::prelude::*;

use moritakit::exactla::{q, quotient, Field, Matrix, Scalar, Subspace};
use moritakit::fdalg::FDAlgebra;
use moritakit::fdmod::{dual, gldim, is_iso, minimal_resolution, pd, projective, simple_classes, DimResult, FDModule, ResolutionStatus};
use moritakit::gorenstein::{gorenstein_test, GorensteinVerdict};
use moritakit::homdim::{bound_sum_plus_one, embedded_pd, tightness, Outcome, Tightness};
use moritakit::morita::{classify_injectives, classify_projectives, classify_simples, validate_context, Corner, MoritaContext};
use moritakit::randomized::{check_case, generate, Family, RandomCase};
use moritakit::subcat::{class_flags, torsion_decompose, TorsionPair};

const MAX_CORNER: usize = 5;
// syzygies over wild radical-square-zero quivers grow exponentially, so the
// random properties keep resolutions short
const CUTOFF: usize = 6;

fn case(seed: u64) -> RandomCase {
    generate(seed, 1, 7, MAX_CORNER).pop().expect("one case")
}

fn zero_maps(c: &Arc<MoritaContext>) -> Arc<MoritaContext> {
    Arc::new(MoritaContext::with_zero_maps(c.alg_a().clone(), c.alg_b().clone(), c.bimod_m().clone(), c.bimod_n().clone()).unwrap())
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::prime(7).unwrap())]
}

fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (field_strategy(), 1usize..6, 1usize..6).prop_flat_map(|(f, r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| Matrix::from_fn(f, r, c, |i, j| f.from_i64(v[i * c + j])))
    })
}

fn same_space(a: &Subspace, b: &Subspace) -> bool {
    a.contains_space(b) && b.contains_space(a)
}

/// Number of paths in an acyclic quiver, trivial paths included.
fn path_count(vertices: usize, arrows: &[(usize, usize)]) -> usize {
    // paths ending at v, processed in index order since every arrow increases it
    let mut ending = vec![1usize; vertices];
    for v in 0..vertices {
        for &(s, t) in arrows {
            if t == v {
                ending[v] += ending[s];
            }
        }
    }
    ending.iter().sum()
}

/// Product of the flat Morita ring written out from the four blocks.
fn block_product(c: &MoritaContext, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let o = c.offsets();
    let d = o[3] + c.alg_b().dim();
    let split = |v: &[Scalar]| (v[..o[1]].to_vec(), v[o[1]..o[2]].to_vec(), v[o[2]..o[3]].to_vec(), v[o[3]..d].to_vec());
    let (a1, n1, m1, b1) = split(x);
    let (a2, n2, m2, b2) = split(y);
    let (alg_a, alg_b, bm, bn) = (c.alg_a(), c.alg_b(), c.bimod_m(), c.bimod_n());
    let act = |v: &[Scalar], coeffs: &[Scalar], action: &dyn Fn(usize) -> Matrix| -> Vec<Scalar> {
        let f = c.field();
        let mut out = vec![f.zero(); v.len()];
        for (k, a) in coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            let w = action(k).apply(v);
            for (o, x) in out.iter_mut().zip(w) {
                *o = o.add(&a.mul(&x));
            }
        }
        out
    };
    let plus = |u: Vec<Scalar>, v: Vec<Scalar>| -> Vec<Scalar> { u.iter().zip(&v).map(|(p, q)| p.add(q)).collect() };
    let a = plus(alg_a.mul(&a1, &a2), c.psi_of(&n1, &m2));
    let n = plus(act(&n2, &a1, &|k| bn.left_action(k).clone()), act(&n1, &b2, &|k| bn.right_action(k).clone()));
    let m = plus(act(&m1, &a2, &|k| bm.right_action(k).clone()), act(&m2, &b1, &|k| bm.left_action(k).clone()));
    let b = plus(c.phi_of(&m1, &n2), alg_b.mul(&b1, &b2));
    [a, n, m, b].concat()
}

fn block_associative(c: &MoritaContext) -> bool {
    let f = c.field();
    let d = c.offsets()[3] + c.alg_b().dim();
    let e = |i: usize| {
        let mut v = vec![f.zero(); d];
        v[i] = f.one();
        v
    };
    (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| block_product(c, &block_product(c, &e(i), &e(j)), &e(k)) == block_product(c, &e(i), &block_product(c, &e(j), &e(k))))))
}

fn corner_modules(a: &Arc<FDAlgebra>) -> Vec<FDModule> {
    let mut xs: Vec<FDModule> = simple_classes(a).into_iter().map(|(_, s)| s).collect();
    xs.extend((0..a.num_idempotents()).map(|i| projective(a, i).unwrap()));
    xs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(m in matrix_strategy()) {
        let (r, piv, rank) = m.rref();
        let (r2, piv2, rank2) = r.rref();
        prop_assert_eq!(r2, r);
        prop_assert_eq!(piv2, piv);
        prop_assert_eq!(rank2, rank);
    }

    #[test]
    fn rank_plus_nullity(m in matrix_strategy()) {
        prop_assert_eq!(m.kernel().dim() + m.rank(), m.rows());
        // every kernel vector really is killed
        let k = m.kernel();
        prop_assert!(k.basis().mul(&m).is_zero());
    }

    #[test]
    fn quotient_maps_split(m in matrix_strategy()) {
        let s = m.row_space();
        let qt = quotient(m.cols(), &s).unwrap();
        prop_assert!(qt.section.mul(&qt.projection).is_identity());
        prop_assert!(same_space(&qt.projection.kernel(), &s));
        prop_assert_eq!(qt.dim() + s.dim(), m.cols());
    }

    #[test]
    fn rationals_render_in_lowest_terms(a in -50i64..50, b in 1i64..50, k in 1i64..9) {
        let parsed = Field::Rational.parse(&format!("{}/{}", a * k, b * k)).unwrap();
        prop_assert_eq!(parsed.to_string(), q(a, b).to_string());
        let g = num_integer::gcd(a, b);
        let expected = if b / g == 1 { format!("{}", a / g) } else { format!("{}/{}", a / g, b / g) };
        prop_assert_eq!(parsed.to_string(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn path_algebras_have_the_expected_dimension(seed in any::<u64>()) {
        let c = case(seed);
        let a = c.algebra().unwrap();
        prop_assert!(a.validate().is_ok());
        let expected = match c.family {
            Family::RadicalSquareZero => c.vertices + c.arrows.len(),
            Family::Hereditary => path_count(c.vertices, &c.arrows),
        };
        prop_assert_eq!(a.dim(), expected, "{}", c);
        let l = a.loewy_length();
        prop_assert_eq!(a.radical_power(l).dim(), 0);
        if l > 0 {
            prop_assert!(a.radical_power(l - 1).dim() > 0);
        }
    }

    #[test]
    fn peirce_decomposition_is_complete(seed in any::<u64>()) {
        let c = case(seed);
        let a = c.algebra().unwrap();
        let rest: Vec<usize> = (0..c.vertices).filter(|v| !c.part.contains(v)).collect();
        let (e1, e2) = (a.idempotent_sum(&c.part), a.idempotent_sum(&rest));
        let total = a.pierce_corner(&e1).map_or(0, |x| x.dim())
            + a.pierce_corner(&e2).map_or(0, |x| x.dim())
            + a.sandwich(&e1, &e2).dim()
            + a.sandwich(&e2, &e1).dim();
        prop_assert_eq!(total, a.dim());
    }

    #[test]
    fn resolutions_are_exact_and_minimal(seed in any::<u64>()) {
        let c = case(seed);
        let lam = c.context().unwrap().algebra().unwrap();
        for (_, s) in simple_classes(&lam) {
            let r = minimal_resolution(&s, 6, false).unwrap();
            let ranks: Vec<usize> = r.terms.iter().map(|t| t.differential.rank()).collect();
            if let Some(&r0) = ranks.first() {
                prop_assert_eq!(r0, s.dim());
            }
            for n in 0..r.terms.len() {
                let next = ranks.get(n + 1).copied();
                let last_exact = matches!(r.status, ResolutionStatus::Terminated);
                if next.is_some() || last_exact {
                    prop_assert_eq!(ranks[n] + next.unwrap_or(0), r.terms[n].module.dim());
                }
                if n > 0 {
                    let rad = r.terms[n - 1].module.radical();
                    let d = &r.terms[n].differential;
                    prop_assert!((0..d.rows()).all(|i| rad.contains(d.row(i))));
                }
            }
        }
    }

    #[test]
    fn duality_is_an_involution(seed in any::<u64>()) {
        let a = case(seed).algebra().unwrap();
        for x in corner_modules(&a) {
            let dd = dual(&dual(&x)).rebind(&a).unwrap();
            prop_assert_eq!(dd.dim(), x.dim());
            prop_assert!(is_iso(&dd, &x).unwrap());
        }
    }

    #[test]
    fn structural_checks_hold(seed in any::<u64>()) {
        let c = case(seed);
        prop_assert_eq!(check_case(&c).unwrap(), Ok(()), "{}", c);
    }

    #[test]
    fn context_identities_match_associativity(seed in any::<u64>(), row in any::<prop::sample::Index>(), col in any::<prop::sample::Index>(), v in 1i64..7) {
        let c = case(seed).context().unwrap();
        prop_assert!(validate_context(&c).is_empty());
        prop_assert!(block_associative(&c));
        let mut psi = c.psi().clone();
        if psi.rows() > 0 && psi.cols() > 0 {
            let (i, j) = (row.index(psi.rows()), col.index(psi.cols()));
            psi.set(i, j, psi.get(i, j).add(&c.field().from_i64(v)));
            let bent = c.with_maps(c.phi().clone(), psi).unwrap();
            prop_assert_eq!(validate_context(&bent).is_empty(), block_associative(&bent));
        }
    }

    #[test]
    fn torsion_decompositions_are_short_exact(seed in any::<u64>()) {
        // the six classes are defined for vanishing pairings only
        let c = zero_maps(&case(seed).context().unwrap());
        let mut tuples: Vec<_> = classify_simples(&c).unwrap().into_iter().map(|k| k.tuple).collect();
        tuples.extend(classify_projectives(&c).unwrap().into_iter().map(|k| k.tuple));
        tuples.extend(classify_injectives(&c).unwrap().into_iter().map(|k| k.tuple));
        for t in &tuples {
            prop_assert!(class_flags(t).is_ok());
            for pair in TorsionPair::ALL {
                let d = torsion_decompose(t, pair).unwrap();
                prop_assert!(d.is_short_exact());
                prop_assert_eq!(d.memberships().unwrap(), (true, true), "{:?}", pair);
            }
        }
    }

    #[test]
    fn tight_modules_keep_their_dimension(seed in any::<u64>()) {
        let c = zero_maps(&case(seed).context().unwrap());
        for side in [Corner::A, Corner::B] {
            for x in corner_modules(c.alg(side)) {
                let t = tightness(&c, side, &x, CUTOFF).unwrap();
                if t.tightness == Tightness::Tight {
                    let over_ring = embedded_pd(&c, side, &x, CUTOFF).unwrap();
                    if t.corner_pd.is_finite() && over_ring.is_finite() {
                        prop_assert_eq!(&t.corner_pd, &over_ring);
                    }
                }
            }
        }
    }

    #[test]
    fn longer_cutoffs_never_flip_a_decision(seed in any::<u64>()) {
        let lam = case(seed).context().unwrap().algebra().unwrap();
        for (_, s) in simple_classes(&lam) {
            let short = pd(&s, 3).unwrap();
            let long = pd(&s, CUTOFF).unwrap();
            match short {
                DimResult::Finite(_) => prop_assert_eq!(short, long),
                DimResult::Infinite(_) => prop_assert!(long.is_infinite()),
                DimResult::AtLeast(n) => prop_assert!(!matches!(long, DimResult::Finite(v) if v < n)),
            }
        }
    }

    #[test]
    fn satisfied_bounds_recheck_on_the_flat_ring(seed in any::<u64>()) {
        let c = zero_maps(&case(seed).context().unwrap());
        let r = bound_sum_plus_one(&c, CUTOFF).unwrap();
        if r.outcome == Outcome::Satisfied {
            let lam = gldim(&c.algebra().unwrap(), CUTOFF).unwrap().value();
            let a = gldim(c.alg_a(), CUTOFF).unwrap().value();
            let b = gldim(c.alg_b(), CUTOFF).unwrap().value();
            match (lam, a, b) {
                (Some(l), Some(a), Some(b)) => prop_assert!(l <= a + b + 1),
                other => prop_assert!(false, "satisfied with undecided sides {:?}", other),
            }
        }
    }

    #[test]
    fn finite_global_dimension_is_gorenstein(seed in any::<u64>()) {
        let lam = case(seed).context().unwrap().algebra().unwrap();
        if gldim(&lam, CUTOFF).unwrap().is_finite() {
            prop_assert_eq!(gorenstein_test(&lam, CUTOFF).unwrap().verdict, GorensteinVerdict::Gorenstein);
        }
    }
}

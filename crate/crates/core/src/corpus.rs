//! Bundled example algebras and contexts, built directly from quiver data.
//!
//! The JSON fixtures under `fixtures/` describe the same objects; the CLI reads
//! those, and the tests check that both routes agree.

use std::sync::Arc;

use crate::error::Result;
use crate::exactla::{Field, Matrix, Subspace};
use crate::fdalg::{build_path_algebra, FDAlgebra, Presentation, Quiver, Relation};
use crate::fdmod::FDModule;
use crate::morita::{delta_context, from_pierce, MoritaContext};

/// Path algebra with relations given as integer combinations of words.
pub fn path_algebra(
    field: Field,
    vertices: &[&str],
    arrows: &[(&str, &str, &str)],
    relations: &[&[(i64, &str)]],
    truncation: usize,
) -> Result<Arc<FDAlgebra>> {
    let quiver = Quiver::new(vertices, arrows);
    let mut rels = Vec::new();
    for (index, r) in relations.iter().enumerate() {
        let mut terms = Vec::new();
        for (c, w) in r.iter() {
            let word = quiver.parse_word(w).ok_or_else(|| crate::Error::Composition { index, detail: format!("unknown word {w}") })?;
            terms.push((field.from_i64(*c), word));
        }
        rels.push(Relation { terms });
    }
    Ok(Arc::new(build_path_algebra(field, &Presentation { quiver, relations: rels, truncation })?))
}

/// Path algebra modulo all paths of length two.
pub fn radical_square_zero(field: Field, vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Arc<FDAlgebra>> {
    let quiver = Quiver::new(vertices, arrows);
    let mut rels = Vec::new();
    for x in &quiver.arrows {
        for y in &quiver.arrows {
            if x.target == y.source {
                let w = [x.label.as_str(), y.label.as_str()].concat();
                rels.push(Relation { terms: vec![(field.one(), quiver.parse_word(&w).expect("two arrows"))] });
            }
        }
    }
    Ok(Arc::new(build_path_algebra(field, &Presentation { quiver, relations: rels, truncation: 2 })?))
}

/// The field itself as a one-dimensional algebra.
pub fn ground_field(field: Field) -> Arc<FDAlgebra> {
    let one = field.one();
    Arc::new(
        FDAlgebra::from_table(field, vec!["1".into()], vec![vec![vec![one.clone()]]], vec![one.clone()], vec![vec![one]], Subspace::zero(field, 1))
            .expect("the field is an algebra"),
    )
}

/// `K[x]/(x²)`.
pub fn dual_numbers(field: Field) -> Arc<FDAlgebra> {
    path_algebra(field, &["v"], &[("x", "v", "v")], &[&[(1, "xx")]], 2).expect("valid presentation")
}

/// Path algebra of `1 → 2`.
pub fn a2_path_algebra(field: Field) -> Arc<FDAlgebra> {
    path_algebra(field, &["1", "2"], &[("a", "1", "2")], &[], 2).expect("valid presentation")
}

/// Two vertices joined by arrows both ways, radical square zero.
pub fn two_cycle(field: Field) -> Arc<FDAlgebra> {
    radical_square_zero(field, &["v1", "v2"], &[("a", "v1", "v2"), ("b", "v2", "v1")]).expect("valid presentation")
}

/// Oriented three-cycle with radical square zero.
pub fn three_cycle(field: Field) -> Arc<FDAlgebra> {
    radical_square_zero(field, &["v1", "v2", "v3"], &[("a", "v1", "v2"), ("b", "v2", "v3"), ("c", "v3", "v1")])
        .expect("valid presentation")
}

pub fn two_loop_quiver() -> Quiver {
    Quiver::new(&["v1", "v2"], &[("a", "v1", "v1"), ("b", "v1", "v2"), ("c", "v2", "v1"), ("d", "v2", "v2")])
}

/// Two vertices with a loop at each and arrows both ways; selfinjective and
/// special biserial, with `ab = bd` and `dc = ca`.
pub fn two_loop_biserial(field: Field) -> Arc<FDAlgebra> {
    path_algebra(
        field,
        &["v1", "v2"],
        &[("a", "v1", "v1"), ("b", "v1", "v2"), ("c", "v2", "v1"), ("d", "v2", "v2")],
        &[&[(1, "aa")], &[(1, "bc")], &[(1, "cb")], &[(1, "dd")], &[(1, "ab"), (-1, "bd")], &[(1, "dc"), (-1, "ca")]],
        3,
    )
    .expect("valid presentation")
}

/// The string module over [`two_loop_biserial`] with top `v1 ⊕ v2`, where the
/// `v1` top maps by `a` and `b` and the `v2` top maps by `d` onto the same socle.
pub fn string_module(l: &Arc<FDAlgebra>) -> Result<FDModule> {
    let f = l.field();
    let one = |r: usize, c: usize, i: usize, j: usize| {
        let mut m = Matrix::zeros(f, r, c);
        m.set(i, j, f.one());
        m
    };
    // v1 space: (top, a·top); v2 space: (top, socle)
    let a = one(2, 2, 0, 1);
    let b = one(2, 2, 0, 1);
    let c = Matrix::zeros(f, 2, 2);
    let d = one(2, 2, 0, 1);
    FDModule::from_representation(l, &two_loop_quiver(), &[2, 2], &[a, b, c, d])
}

/// Eight vertices `v1..v4`, `w1..w4`, radical square zero; the split along the
/// `v` vertices attains the sum-plus-one bound.
pub fn eight_vertex_sharp(field: Field) -> Arc<FDAlgebra> {
    radical_square_zero(
        field,
        &["v1", "v2", "v3", "v4", "w1", "w2", "w3", "w4"],
        &[
            ("a", "v1", "w1"),
            ("b", "v2", "v3"),
            ("c", "v3", "v4"),
            ("d", "w1", "w2"),
            ("e", "w3", "w2"),
            ("f", "w3", "w4"),
            ("g", "w4", "v2"),
        ],
    )
    .expect("valid presentation")
}

/// Five vertices, radical square zero; the sum-plus-one bound is strict.
pub fn five_vertex_strict(field: Field) -> Arc<FDAlgebra> {
    radical_square_zero(
        field,
        &["v1", "v2", "v3", "w1", "w2"],
        &[("a", "v1", "v2"), ("b", "v2", "v3"), ("c", "v1", "w2"), ("d", "w1", "v2"), ("e", "w1", "w2")],
    )
    .expect("valid presentation")
}

/// Linear `A5` with radical square zero.
pub fn linear_a5(field: Field) -> Arc<FDAlgebra> {
    radical_square_zero(
        field,
        &["v1", "v2", "v3", "v4", "v5"],
        &[("a", "v1", "v2"), ("b", "v2", "v3"), ("c", "v3", "v4"), ("d", "v4", "v5")],
    )
    .expect("valid presentation")
}

/// A named context together with the algebra it was cut from, if any.
#[derive(Clone, Debug)]
pub struct Sample {
    pub name: &'static str,
    pub source: Option<Arc<FDAlgebra>>,
    pub context: Arc<MoritaContext>,
}

fn pierce(name: &'static str, l: Arc<FDAlgebra>, part: &[usize]) -> Sample {
    let context = Arc::new(from_pierce(&l, part).expect("valid split"));
    Sample { name, source: Some(l), context }
}

/// All bundled contexts, keyed by fixture name.
pub fn samples() -> Vec<Sample> {
    let q = Field::Rational;
    vec![
        pierce("ex3_9", three_cycle(q), &[0]),
        pierce("ex4_13", two_loop_biserial(q), &[0]),
        pierce("ex5_1", two_cycle(q), &[0]),
        pierce("ex5_10", eight_vertex_sharp(q), &[0, 1, 2, 3]),
        pierce("ex5_11", five_vertex_strict(q), &[0, 1, 2]),
        pierce("ex5_15", linear_a5(q), &[0, 2, 4]),
        Sample { name: "delta_kx2", source: None, context: Arc::new(delta_context(&dual_numbers(q))) },
    ]
}

pub fn sample(name: &str) -> Option<Sample> {
    samples().into_iter().find(|s| s.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdmod::{gldim, pd, DimResult};

    #[test]
    fn global_dimensions_of_bundled_algebras() {
        let q = Field::Rational;
        assert_eq!(gldim(&eight_vertex_sharp(q), 16).unwrap(), DimResult::Finite(4));
        assert_eq!(gldim(&five_vertex_strict(q), 16).unwrap(), DimResult::Finite(2));
        assert_eq!(gldim(&linear_a5(q), 16).unwrap(), DimResult::Finite(4));
        assert!(gldim(&two_cycle(q), 16).unwrap().is_infinite());
        assert_eq!(two_loop_biserial(q).dim(), 8);
    }

    #[test]
    fn string_module_has_infinite_pd() {
        let l = two_loop_biserial(Field::Rational);
        let d = string_module(&l).unwrap();
        assert_eq!(d.dim_vector(), vec![2, 2]);
        assert!(pd(&d, 16).unwrap().is_infinite());
    }

    #[test]
    fn samples_build() {
        for s in samples() {
            assert!(s.context.algebra().is_ok(), "{}", s.name);
        }
    }
}

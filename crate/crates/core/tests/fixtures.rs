//! The bundled JSON documents describe exactly the algebras and contexts that
//! `corpus` builds from quiver data.

use std::sync::Arc;

use moritakit::cli::document::{load, LoadedModule};
use moritakit::cli::fixtures::FIXTURES;
use moritakit::corpus::{samples, string_module};
use moritakit::fdalg::FDAlgebra;
use moritakit::fdmod::is_iso;

fn same_table(a: &FDAlgebra, b: &FDAlgebra) -> bool {
    a.dim() == b.dim() && (0..a.dim()).all(|i| (0..a.dim()).all(|j| a.basis_product(i, j) == b.basis_product(i, j)))
}

#[test]
fn every_sample_has_a_document() {
    let names: Vec<&str> = FIXTURES.iter().map(|(n, _)| *n).collect();
    for s in samples() {
        assert!(names.contains(&s.name), "{}", s.name);
    }
    assert_eq!(names.len(), samples().len());
}

#[test]
fn documents_match_the_builders() {
    for s in samples() {
        let text = FIXTURES.iter().find(|(n, _)| *n == s.name).unwrap().1;
        let l = load(text).unwrap_or_else(|e| panic!("{}: {e}", s.name));
        if let Some(src) = &s.source {
            assert!(same_table(src, l.require_algebra().unwrap()), "{}: algebra", s.name);
        }
        let (want, got) = (&s.context, l.require_context().unwrap());
        assert!(same_table(want.alg_a(), got.alg_a()), "{}: corner A", s.name);
        assert!(same_table(want.alg_b(), got.alg_b()), "{}: corner B", s.name);
        assert_eq!((want.bimod_m().dim(), want.bimod_n().dim()), (got.bimod_m().dim(), got.bimod_n().dim()), "{}", s.name);
        assert_eq!(want.phi(), got.phi(), "{}: phi", s.name);
        assert_eq!(want.psi(), got.psi(), "{}: psi", s.name);
        assert!(same_table(&want.algebra().unwrap(), &got.algebra().unwrap()), "{}: ring", s.name);
    }
}

#[test]
fn string_module_document_matches_the_builder() {
    let text = FIXTURES.iter().find(|(n, _)| *n == "ex4_13").unwrap().1;
    let l = load(text).unwrap();
    let base: &Arc<FDAlgebra> = l.require_algebra().unwrap();
    let Some(LoadedModule::Flat { module, .. }) = l.module("D").map(|m| &m.module) else {
        panic!("no module D");
    };
    let built = string_module(base).unwrap();
    assert_eq!(module.dim_vector(), vec![2, 2]);
    assert!(is_iso(module, &built).unwrap());
}

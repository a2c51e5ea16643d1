//! Finite-dimensional algebras given by structure constants.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactla::{quotient, Field, Matrix, Scalar, Subspace};
use crate::fdmod::Bimodule;

/// Sparse coefficient vector `(basis index, coefficient)`.
pub type Sparse = Vec<(usize, Scalar)>;

/// A Peirce-homogeneous algebra generator `g = e_left g e_right`.
#[derive(Clone, Debug)]
pub struct Generator {
    pub elem: Vec<Scalar>,
    pub left: usize,
    pub right: usize,
}

/// Associative unital algebra with a basis, structure constants, a complete
/// set of primitive orthogonal idempotents and its radical.
#[derive(Debug)]
pub struct FDAlgebra {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    mult: Vec<Vec<Sparse>>,
    unit: Vec<Scalar>,
    idempotents: Vec<Vec<Scalar>>,
    radical: Subspace,
    gens: OnceLock<Vec<Generator>>,
    pub(crate) classes: OnceLock<Vec<usize>>,
}

impl PartialEq for FDAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field
            && self.dim == o.dim
            && self.mult == o.mult
            && self.unit == o.unit
            && self.idempotents == o.idempotents
    }
}

/// True when two algebra handles denote the same structure constants.
pub fn same_algebra(a: &Arc<FDAlgebra>, b: &Arc<FDAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn sparse_of(v: &[Scalar]) -> Sparse {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

impl FDAlgebra {
    /// Assembles an algebra from dense structure constants `table[i][j] = b_i b_j`
    /// and checks every axiom.
    pub fn from_table(
        field: Field,
        labels: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        idempotents: Vec<Vec<Scalar>>,
        radical: Subspace,
    ) -> Result<FDAlgebra> {
        let mult = table.iter().map(|row| row.iter().map(|v| sparse_of(v)).collect()).collect();
        let a = FDAlgebra::raw(field, labels, mult, unit, idempotents, radical);
        a.validate()?;
        Ok(a)
    }

    fn raw(
        field: Field,
        labels: Vec<String>,
        mult: Vec<Vec<Sparse>>,
        unit: Vec<Scalar>,
        idempotents: Vec<Vec<Scalar>>,
        radical: Subspace,
    ) -> FDAlgebra {
        FDAlgebra {
            field,
            dim: labels.len(),
            labels,
            mult,
            unit,
            idempotents,
            radical,
            gens: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    /// Builds an algebra whose radical is computed or propagated afterwards.
    pub(crate) fn with_radical_candidate(
        field: Field,
        labels: Vec<String>,
        table: Vec<Vec<Sparse>>,
        unit: Vec<Scalar>,
        idempotents: Vec<Vec<Scalar>>,
        candidate: Option<Subspace>,
    ) -> Result<FDAlgebra> {
        let n = labels.len();
        let mut a = FDAlgebra::raw(field, labels, table, unit, idempotents, Subspace::zero(field, n));
        a.check_structure()?;
        let rad = match candidate {
            Some(c) if a.is_radical(&c) => c,
            _ => {
                if field != Field::Rational {
                    return Err(Error::Unsupported(
                        "radical cannot be propagated and no trace form is used over a prime field".into(),
                    ));
                }
                let t = a.trace_radical();
                if !a.is_radical(&t) {
                    return Err(Error::InvalidAlgebra(
                        "idempotents do not split the semisimple quotient".into(),
                    ));
                }
                t
            }
        };
        a.radical = rad;
        Ok(a)
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }
    pub fn idempotents(&self) -> &[Vec<Scalar>] {
        &self.idempotents
    }
    pub fn num_idempotents(&self) -> usize {
        self.idempotents.len()
    }
    pub fn radical(&self) -> &Subspace {
        &self.radical
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Sparse {
        &self.mult[i][j]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vec();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul(b);
                for (k, c) in &self.mult[i][j] {
                    out[*k] = out[*k].add(&ab.mul(c));
                }
            }
        }
        out
    }

    /// Matrix of `y -> x y` in the row convention: row `k` holds `x b_k`.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let rows = (0..self.dim).map(|k| self.mul(x, &self.basis_vec(k))).collect();
        Matrix::from_rows(self.field, self.dim, rows).expect("shape")
    }

    /// Matrix of `y -> y x`: row `k` holds `b_k x`.
    pub fn right_mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let rows = (0..self.dim).map(|k| self.mul(&self.basis_vec(k), x)).collect();
        Matrix::from_rows(self.field, self.dim, rows).expect("shape")
    }

    /// Span of `x A y` for fixed elements `x`, `y`.
    pub fn sandwich(&self, x: &[Scalar], y: &[Scalar]) -> Subspace {
        let rows = (0..self.dim).map(|k| self.mul(&self.mul(x, &self.basis_vec(k)), y)).collect();
        Subspace::span_rows(self.field, self.dim, rows)
    }

    pub fn peirce(&self, i: usize, j: usize) -> Subspace {
        self.sandwich(&self.idempotents[i], &self.idempotents[j])
    }

    /// Product of two subspaces `U V`.
    pub fn subspace_product(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut rows = Vec::new();
        for i in 0..u.dim() {
            for j in 0..v.dim() {
                rows.push(self.mul(u.basis().row(i), v.basis().row(j)));
            }
        }
        Subspace::span_rows(self.field, self.dim, rows)
    }

    pub fn radical_power(&self, k: usize) -> Subspace {
        let mut p = Subspace::full(self.field, self.dim);
        for _ in 0..k {
            p = self.subspace_product(&p, &self.radical);
        }
        p
    }

    /// Smallest `n` with `rad^n = 0`.
    pub fn loewy_length(&self) -> usize {
        if self.dim == 0 {
            return 0;
        }
        let mut n = 1;
        let mut p = self.radical.clone();
        while p.dim() > 0 {
            p = self.subspace_product(&p, &self.radical);
            n += 1;
        }
        n
    }

    fn check_structure(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    // (b_i b_j) b_k = b_i (b_j b_k)
                    let mut l = self.zero_vec();
                    for (m, c) in &self.mult[i][j] {
                        for (n, e) in &self.mult[*m][k] {
                            l[*n] = l[*n].add(&c.mul(e));
                        }
                    }
                    let mut r = self.zero_vec();
                    for (m, c) in &self.mult[j][k] {
                        for (n, e) in &self.mult[i][*m] {
                            r[*n] = r[*n].add(&c.mul(e));
                        }
                    }
                    if l != r {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        for k in 0..d {
            let b = self.basis_vec(k);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::InvalidAlgebra(format!("unit fails on {}", self.labels[k])));
            }
        }
        let mut sum = self.zero_vec();
        for (i, e) in self.idempotents.iter().enumerate() {
            for (j, f) in self.idempotents.iter().enumerate() {
                let p = self.mul(e, f);
                let expect = if i == j { e.clone() } else { self.zero_vec() };
                if p != expect {
                    return Err(Error::InvalidAlgebra(format!("idempotents {i}, {j} not orthogonal")));
                }
            }
            for (s, x) in sum.iter_mut().zip(e) {
                *s = s.add(x);
            }
        }
        if d > 0 && sum != self.unit {
            return Err(Error::InvalidAlgebra("idempotents do not sum to the unit".into()));
        }
        Ok(())
    }

    /// Checks that `j` is a nilpotent two-sided ideal with split semisimple
    /// quotient relative to the primitive idempotents.
    pub fn is_radical(&self, j: &Subspace) -> bool {
        let full = Subspace::full(self.field, self.dim);
        let lj = self.subspace_product(&full, j);
        let jr = self.subspace_product(j, &full);
        if !j.contains_space(&lj) || !j.contains_space(&jr) {
            return false;
        }
        let mut p = j.clone();
        let mut steps = 0;
        while p.dim() > 0 {
            p = self.subspace_product(&p, j);
            steps += 1;
            if steps > self.dim + 1 {
                return false;
            }
        }
        // corners of the quotient are the ground field and off-diagonal
        // parts pair nondegenerately
        let n = self.idempotents.len();
        let pieces: Vec<Vec<Subspace>> = (0..n)
            .map(|a| (0..n).map(|b| self.peirce(a, b)).collect())
            .collect();
        let qdim = |a: usize, b: usize| pieces[a][b].dim() - pieces[a][b].intersection(j).dim();
        for a in 0..n {
            if qdim(a, a) != 1 {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let d = qdim(a, b);
                if d > 1 {
                    return false;
                }
                if d == 1 {
                    if qdim(b, a) != 1 {
                        return false;
                    }
                    let x = (0..pieces[a][b].dim())
                        .map(|k| pieces[a][b].basis().row(k).to_vec())
                        .find(|v| !j.contains(v))
                        .expect("nonzero class");
                    let y = (0..pieces[b][a].dim())
                        .map(|k| pieces[b][a].basis().row(k).to_vec())
                        .find(|v| !j.contains(v))
                        .expect("nonzero class");
                    if j.contains(&self.mul(&x, &y)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Radical via the trace form `tr(L_x L_y)`, valid in characteristic zero.
    pub fn trace_radical(&self) -> Subspace {
        let lm: Vec<Matrix> = (0..self.dim).map(|k| self.left_mul_matrix(&self.basis_vec(k))).collect();
        let gram = Matrix::from_fn(self.field, self.dim, self.dim, |i, j| {
            let p = lm[j].mul(&lm[i]);
            let mut t = self.field.zero();
            for k in 0..self.dim {
                t = t.add(p.get(k, k));
            }
            t
        });
        gram.kernel()
    }

    /// For each primitive idempotent, the smallest index whose projective is
    /// isomorphic to it (`A e_i ~ A e_j` iff `e_i A e_j` is not inside the radical).
    pub fn idempotent_classes(&self) -> &[usize] {
        self.classes.get_or_init(|| {
            let n = self.idempotents.len();
            (0..n)
                .map(|i| {
                    (0..=i)
                        .find(|&j| j == i || !self.radical.contains_space(&self.peirce(i, j)))
                        .unwrap()
                })
                .collect()
        })
    }

    /// Representatives of the isomorphism classes of indecomposable projectives.
    pub fn class_representatives(&self) -> Vec<usize> {
        let c = self.idempotent_classes();
        (0..c.len()).filter(|&i| c[i] == i).collect()
    }

    /// Full validation of the algebra axioms and the stored radical.
    pub fn validate(&self) -> Result<()> {
        self.check_structure()?;
        if !self.is_radical(&self.radical) {
            return Err(Error::InvalidAlgebra("stored radical fails the radical checks".into()));
        }
        Ok(())
    }

    /// Generators of the algebra, each homogeneous for the idempotent
    /// decomposition. Primitive idempotents always come first.
    pub fn generators(&self) -> &[Generator] {
        self.gens.get_or_init(|| self.compute_generators())
    }

    fn compute_generators(&self) -> Vec<Generator> {
        let n = self.idempotents.len();
        let mut gens: Vec<Generator> = (0..n)
            .map(|i| Generator { elem: self.idempotents[i].clone(), left: i, right: i })
            .collect();
        let mut span = self.closure(&gens);
        for k in 0..self.dim {
            if span.dim() == self.dim {
                break;
            }
            let b = self.basis_vec(k);
            for i in 0..n {
                for j in 0..n {
                    let c = self.mul(&self.mul(&self.idempotents[i], &b), &self.idempotents[j]);
                    if c.iter().all(Scalar::is_zero) || span.contains(&c) {
                        continue;
                    }
                    gens.push(Generator { elem: c, left: i, right: j });
                    span = self.closure(&gens);
                }
            }
        }
        gens
    }

    fn closure(&self, gens: &[Generator]) -> Subspace {
        let mut rows: Vec<Vec<Scalar>> = gens.iter().map(|g| g.elem.clone()).collect();
        rows.push(self.unit.clone());
        let mut span = Subspace::span_rows(self.field, self.dim, rows);
        loop {
            let mut rows = span.basis().to_rows();
            for g in gens {
                for k in 0..span.dim() {
                    rows.push(self.mul(&g.elem, span.basis().row(k)));
                }
            }
            let next = Subspace::span_rows(self.field, self.dim, rows);
            if next.dim() == span.dim() {
                return span;
            }
            span = next;
        }
    }

    /// Opposite algebra on the same basis.
    pub fn opposite(&self) -> FDAlgebra {
        let d = self.dim;
        let mult = (0..d).map(|i| (0..d).map(|j| self.mult[j][i].clone()).collect()).collect();
        FDAlgebra::raw(
            self.field,
            self.labels.clone(),
            mult,
            self.unit.clone(),
            self.idempotents.clone(),
            self.radical.clone(),
        )
    }

    /// The corner algebra `e A e` with unit `e`.
    pub fn pierce_corner(&self, e: &[Scalar]) -> Result<FDAlgebra> {
        Ok(self.pierce_corner_with_basis(e)?.0)
    }

    /// Corner algebra together with its embedding `eAe` as a subspace of this algebra.
    pub fn pierce_corner_with_basis(&self, e: &[Scalar]) -> Result<(FDAlgebra, Subspace)> {
        if self.mul(e, e) != e {
            return Err(Error::NotIdempotent);
        }
        let sub = self.sandwich(e, e);
        let basis = sub.basis();
        let d = sub.dim();
        let coords = |v: &[Scalar]| sub.coords(v).expect("corner is closed under products");
        let labels = (0..d)
            .map(|i| {
                let row = basis.row(i);
                let nz: Vec<usize> = (0..self.dim).filter(|&k| !row[k].is_zero()).collect();
                if nz.len() == 1 && row[nz[0]].is_one() {
                    self.labels[nz[0]].clone()
                } else {
                    format!("c{i}")
                }
            })
            .collect();
        let mult = (0..d)
            .map(|i| (0..d).map(|j| sparse_of(&coords(&self.mul(basis.row(i), basis.row(j))))).collect())
            .collect();
        let idem: Vec<Vec<Scalar>> = self
            .idempotents
            .iter()
            .filter(|f| self.mul(e, f) == **f && self.mul(f, e) == **f)
            .map(|f| coords(f))
            .collect();
        let rad_rows = (0..self.radical.dim())
            .map(|k| self.mul(&self.mul(e, self.radical.basis().row(k)), e))
            .map(|v| coords(&v))
            .collect();
        let rad = Subspace::span_rows(self.field, d, rad_rows);
        let a = FDAlgebra::raw(self.field, labels, mult, coords(e), idem, rad);
        a.validate()?;
        Ok((a, sub))
    }

    /// Sum of the primitive idempotents with the given indices.
    pub fn idempotent_sum(&self, idx: &[usize]) -> Vec<Scalar> {
        let mut s = self.zero_vec();
        for &i in idx {
            for (a, b) in s.iter_mut().zip(&self.idempotents[i]) {
                *a = a.add(b);
            }
        }
        s
    }

    /// Block-diagonal product `A x B`.
    pub fn product_algebra(a: &FDAlgebra, b: &FDAlgebra) -> Result<FDAlgebra> {
        if a.field != b.field {
            return Err(crate::exactla::LaError::FieldMismatch(a.field, b.field).into());
        }
        let (da, db) = (a.dim, b.dim);
        let d = da + db;
        let shift = |s: &Sparse, o: usize| -> Sparse { s.iter().map(|(k, c)| (k + o, c.clone())).collect() };
        let mut mult = vec![vec![Vec::new(); d]; d];
        for i in 0..da {
            for j in 0..da {
                mult[i][j] = a.mult[i][j].clone();
            }
        }
        for i in 0..db {
            for j in 0..db {
                mult[da + i][da + j] = shift(&b.mult[i][j], da);
            }
        }
        let embed = |v: &[Scalar], o: usize| -> Vec<Scalar> {
            let mut w = vec![a.field.zero(); d];
            for (k, x) in v.iter().enumerate() {
                w[k + o] = x.clone();
            }
            w
        };
        let mut unit = embed(&a.unit, 0);
        for (k, x) in b.unit.iter().enumerate() {
            unit[da + k] = x.clone();
        }
        let idem = a.idempotents.iter().map(|e| embed(e, 0)).chain(b.idempotents.iter().map(|e| embed(e, da))).collect();
        let mut rad_rows: Vec<Vec<Scalar>> = (0..a.radical.dim()).map(|k| embed(a.radical.basis().row(k), 0)).collect();
        rad_rows.extend((0..b.radical.dim()).map(|k| embed(b.radical.basis().row(k), da)));
        let labels = a.labels.iter().map(|l| format!("{l}'1")).chain(b.labels.iter().map(|l| format!("{l}'2"))).collect();
        let alg = FDAlgebra::raw(a.field, labels, mult, unit, idem, Subspace::span_rows(a.field, d, rad_rows));
        alg.validate()?;
        Ok(alg)
    }

    /// Trivial extension `A ⋉ N` on `A ⊕ N`.
    pub fn trivial_extension(a: &Arc<FDAlgebra>, n: &Bimodule) -> Result<FDAlgebra> {
        if !same_algebra(n.left_algebra(), a) || !same_algebra(n.right_algebra(), a) {
            return Err(Error::AlgebraMismatch("bimodule is not over the base algebra on both sides".into()));
        }
        let (da, dn) = (a.dim, n.dim());
        let d = da + dn;
        let mut mult = vec![vec![Vec::new(); d]; d];
        for i in 0..da {
            for j in 0..da {
                mult[i][j] = a.mult[i][j].clone();
            }
        }
        for i in 0..da {
            let l = n.left_action(i);
            for j in 0..dn {
                // b_i . n_j
                mult[i][da + j] = sparse_of(l.row(j)).into_iter().map(|(k, c)| (k + da, c)).collect();
            }
        }
        for j in 0..da {
            let r = n.right_action(j);
            for i in 0..dn {
                mult[da + i][j] = sparse_of(r.row(i)).into_iter().map(|(k, c)| (k + da, c)).collect();
            }
        }
        let pad = |v: &[Scalar]| -> Vec<Scalar> {
            let mut w = v.to_vec();
            w.resize(d, a.field.zero());
            w
        };
        let idem = a.idempotents.iter().map(|e| pad(e)).collect();
        let mut rad_rows: Vec<Vec<Scalar>> = (0..a.radical.dim()).map(|k| pad(a.radical.basis().row(k))).collect();
        for k in 0..dn {
            let mut v = vec![a.field.zero(); d];
            v[da + k] = a.field.one();
            rad_rows.push(v);
        }
        let labels = a.labels.iter().cloned().chain((0..dn).map(|k| format!("n{k}"))).collect();
        let alg = FDAlgebra::raw(a.field, labels, mult, pad(&a.unit), idem, Subspace::span_rows(a.field, d, rad_rows));
        alg.validate()?;
        Ok(alg)
    }
}

// ---------------------------------------------------------------------------
// Quiver presentations

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

/// A linear combination of paths; each path is a sequence of arrow indices
/// read left to right (first arrow first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub truncation: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Path {
    len: usize,
    source: usize,
    arrows: Vec<usize>,
    target: usize,
}

impl Quiver {
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
        let vertices: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let idx = |v: &str| vertices.iter().position(|x| x == v).expect("declared vertex");
        let arrows = arrows
            .iter()
            .map(|(l, s, t)| Arrow { label: l.to_string(), source: idx(s), target: idx(t) })
            .collect();
        Quiver { vertices, arrows }
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// Splits a word such as `"ab"` or `"a*b"` into arrow indices by longest match.
    pub fn parse_word(&self, word: &str) -> Option<Vec<usize>> {
        let w: String = word.chars().filter(|c| !c.is_whitespace() && *c != '*' && *c != '.').collect();
        let mut out = Vec::new();
        let mut rest = w.as_str();
        while !rest.is_empty() {
            let best = self
                .arrows
                .iter()
                .enumerate()
                .filter(|(_, a)| rest.starts_with(a.label.as_str()))
                .max_by_key(|(_, a)| a.label.len())?;
            out.push(best.0);
            rest = &rest[best.1.label.len()..];
        }
        Some(out)
    }

    fn validate(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for v in &self.vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::InvalidAlgebra(format!("duplicate label {v}")));
            }
        }
        for a in &self.arrows {
            if !seen.insert(a.label.clone()) {
                return Err(Error::InvalidAlgebra(format!("duplicate label {}", a.label)));
            }
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(Error::InvalidAlgebra(format!("arrow {} has an undeclared endpoint", a.label)));
            }
        }
        Ok(())
    }

    fn path_label(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return self.vertices[p.source].clone();
        }
        let single = self.arrows.iter().all(|a| a.label.chars().count() == 1);
        let parts: Vec<&str> = p.arrows.iter().map(|&a| self.arrows[a].label.as_str()).collect();
        if single {
            parts.concat()
        } else {
            parts.join("*")
        }
    }

    /// All paths of length at most `max_len`, sorted by (length, source, arrows).
    fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut all: Vec<Path> = (0..self.vertices.len())
            .map(|v| Path { len: 0, source: v, arrows: vec![], target: v })
            .collect();
        let mut layer: Vec<Path> = all.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &layer {
                for (k, a) in self.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(k);
                        next.push(Path { len: p.len + 1, source: p.source, arrows, target: a.target });
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort();
        all
    }

    fn word_path(&self, word: &[usize]) -> Option<Path> {
        let first = word.first()?;
        let mut t = self.arrows[*first].source;
        let source = t;
        for &a in word {
            if self.arrows[a].source != t {
                return None;
            }
            t = self.arrows[a].target;
        }
        Some(Path { len: word.len(), source, arrows: word.to_vec(), target: t })
    }
}

fn concat(first: &Path, second: &Path) -> Option<Path> {
    if first.target != second.source {
        return None;
    }
    let mut arrows = first.arrows.clone();
    arrows.extend(&second.arrows);
    Some(Path { len: first.len + second.len, source: first.source, arrows, target: second.target })
}

/// Span of `x r y` truncated to paths of length `<= max_len`, in the coordinates of `paths`.
fn ideal_rows(field: Field, q: &Quiver, rels: &[(usize, Vec<(Scalar, Path)>)], paths: &[Path], max_len: usize) -> Vec<Vec<Scalar>> {
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut rows = Vec::new();
    let _ = q;
    for (_, terms) in rels {
        let min_len = terms.iter().map(|(_, p)| p.len).min().unwrap_or(0);
        for x in paths.iter().filter(|x| x.len + min_len <= max_len) {
            for y in paths.iter().filter(|y| x.len + y.len + min_len <= max_len) {
                let mut row = vec![field.zero(); paths.len()];
                let mut nonzero = false;
                for (c, t) in terms {
                    let Some(xt) = concat(x, t) else { continue };
                    let Some(xty) = concat(&xt, y) else { continue };
                    if let Some(&i) = index.get(&xty) {
                        row[i] = row[i].add(c);
                        nonzero = true;
                    }
                }
                if nonzero && row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Path algebra of a quiver modulo relations and all paths of length `L`.
///
/// The product of basis paths is `p . q = (q then p)`, so a path from `i` to
/// `j` satisfies `e_j p e_i = p` and left modules are quiver representations.
pub fn build_path_algebra(field: Field, pres: &Presentation) -> Result<FDAlgebra> {
    let q = &pres.quiver;
    q.validate()?;
    let l = pres.truncation;
    if l < 2 {
        return Err(Error::InvalidAlgebra("truncation length must be at least 2".into()));
    }
    let mut rels = Vec::new();
    for (ri, r) in pres.relations.iter().enumerate() {
        let mut terms = Vec::new();
        for (c, w) in &r.terms {
            if c.field() != field {
                return Err(crate::exactla::LaError::FieldMismatch(field, c.field()).into());
            }
            if w.iter().any(|&a| a >= q.arrows.len()) {
                return Err(Error::Composition { index: ri, detail: "unknown arrow".into() });
            }
            let p = q.word_path(w).ok_or_else(|| Error::Composition {
                index: ri,
                detail: format!("word {} is not a path", w.iter().map(|&a| q.arrows[a].label.clone()).collect::<Vec<_>>().join("")),
            })?;
            if p.len < 2 || p.len > l {
                return Err(Error::Composition {
                    index: ri,
                    detail: format!("path {} has length {} outside [2, {}]", q.path_label(&p), p.len, l),
                });
            }
            terms.push((c.clone(), p));
        }
        rels.push((ri, terms));
    }

    // admissibility: every path of length L lies in the ideal modulo longer paths
    let upto_l = q.paths_up_to(l);
    let rows = ideal_rows(field, q, &rels, &upto_l, l);
    let span = Subspace::span_rows(field, upto_l.len(), rows);
    for (i, p) in upto_l.iter().enumerate().filter(|(_, p)| p.len == l) {
        let mut e = vec![field.zero(); upto_l.len()];
        e[i] = field.one();
        if !span.contains(&e) {
            return Err(Error::Admissibility(q.path_label(p)));
        }
    }

    // short paths and the ideal inside them, columns in descending order so
    // that leading terms are the largest paths
    let short: Vec<Path> = upto_l.into_iter().filter(|p| p.len < l).collect();
    let ns = short.len();
    let rows = ideal_rows(field, q, &rels, &short, l - 1);
    let rev = |v: Vec<Scalar>| -> Vec<Scalar> { v.into_iter().rev().collect() };
    let ideal = Subspace::span_rows(field, ns, rows.into_iter().map(rev).collect());
    let quo = quotient(ns, &ideal)?;
    // quotient coordinate c belongs to reversed column j, i.e. path ns-1-j
    let qd = quo.dim();
    let mut survivors: Vec<usize> = (0..qd)
        .map(|c| {
            let j = (0..ns).find(|&j| quo.section.get(c, j).is_one()).expect("unit section");
            ns - 1 - j
        })
        .collect();
    // basis ordered ascending; remember the permutation of quotient coordinates
    let mut order: Vec<usize> = (0..qd).collect();
    order.sort_by_key(|&c| survivors[c]);
    survivors.sort();
    let coord_pos: Vec<usize> = {
        let mut pos = vec![0; qd];
        for (new, &c) in order.iter().enumerate() {
            pos[c] = new;
        }
        pos
    };
    let normal_form = |path_idx: usize| -> Sparse {
        let row = quo.projection.row(ns - 1 - path_idx);
        let mut v: Sparse = row
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(c, x)| (coord_pos[c], x.clone()))
            .collect();
        v.sort_by_key(|(k, _)| *k);
        v
    };
    let index: HashMap<&Path, usize> = short.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let basis: Vec<&Path> = survivors.iter().map(|&i| &short[i]).collect();
    let d = basis.len();
    let mut mult = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            // b_i b_j = b_j then b_i
            if let Some(p) = concat(basis[j], basis[i]) {
                if p.len < l {
                    mult[i][j] = normal_form(index[&p]);
                }
            }
        }
    }
    let vertex_vec = |v: usize| -> Vec<Scalar> {
        let mut e = vec![field.zero(); d];
        for (k, x) in normal_form(index[&Path { len: 0, source: v, arrows: vec![], target: v }]) {
            e[k] = x;
        }
        e
    };
    let idem: Vec<Vec<Scalar>> = (0..q.vertices.len()).map(vertex_vec).collect();
    let mut unit = vec![field.zero(); d];
    for e in &idem {
        for (u, x) in unit.iter_mut().zip(e) {
            *u = u.add(x);
        }
    }
    let rad_rows = (0..d)
        .filter(|&k| basis[k].len > 0)
        .map(|k| {
            let mut v = vec![field.zero(); d];
            v[k] = field.one();
            v
        })
        .collect();
    let labels = basis.iter().map(|p| q.path_label(p)).collect();
    let alg = FDAlgebra::raw(field, labels, mult, unit, idem, Subspace::span_rows(field, d, rad_rows));
    alg.validate()?;
    Ok(alg)
}

// ---------------------------------------------------------------------------
// Isomorphisms

/// A verified algebra isomorphism; row `i` of `matrix` is the image of basis element `i`.
#[derive(Clone, Debug)]
pub struct AlgebraIso {
    pub source: Arc<FDAlgebra>,
    pub target: Arc<FDAlgebra>,
    pub matrix: Matrix,
}

impl AlgebraIso {
    pub fn new(source: Arc<FDAlgebra>, target: Arc<FDAlgebra>, matrix: Matrix) -> Result<AlgebraIso> {
        let iso = AlgebraIso { source, target, matrix };
        if !iso.verify() {
            return Err(Error::InvalidAlgebra("matrix is not an algebra isomorphism".into()));
        }
        Ok(iso)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    /// Invertible, unital and multiplicative on all basis pairs.
    pub fn verify(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        if s.dim != t.dim || self.matrix.rows() != s.dim || self.matrix.cols() != t.dim {
            return false;
        }
        if self.matrix.inverse().is_none() {
            return false;
        }
        if self.apply(&s.unit) != t.unit {
            return false;
        }
        let img: Vec<Vec<Scalar>> = (0..s.dim).map(|i| self.matrix.row(i).to_vec()).collect();
        for i in 0..s.dim {
            for j in 0..s.dim {
                let mut prod = s.zero_vec();
                for (k, c) in &s.mult[i][j] {
                    prod[*k] = c.clone();
                }
                if self.apply(&prod) != t.mul(&img[i], &img[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Extends prescribed images of a generating set multiplicatively.
    pub fn from_generator_images(
        source: Arc<FDAlgebra>,
        target: Arc<FDAlgebra>,
        images: &[(Vec<Scalar>, Vec<Scalar>)],
    ) -> Option<AlgebraIso> {
        let f = source.field;
        let (ds, dt) = (source.dim, target.dim);
        let mut pairs: Vec<(Vec<Scalar>, Vec<Scalar>)> = vec![(source.unit.clone(), target.unit.clone())];
        let mut span = Subspace::span_rows(f, ds, vec![source.unit.clone()]);
        let mut frontier = pairs.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (s, t) in &frontier {
                for (gs, gt) in images {
                    let ns = source.mul(gs, s);
                    let nt = target.mul(gt, t);
                    if !span.contains(&ns) {
                        span = span.sum(&Subspace::span_rows(f, ds, vec![ns.clone()]));
                        pairs.push((ns.clone(), nt.clone()));
                        next.push((ns, nt));
                    }
                }
            }
            frontier = next;
        }
        if span.dim() != ds {
            return None;
        }
        let sm = Matrix::from_rows(f, ds, pairs.iter().map(|p| p.0.clone()).collect()).ok()?;
        let tm = Matrix::from_rows(f, dt, pairs.iter().map(|p| p.1.clone()).collect()).ok()?;
        // basis images: solve x * sm = I then matrix = x * tm
        let x = sm.inverse()?;
        AlgebraIso::new(source, target, x.mul(&tm)).ok()
    }

    /// Searches for an isomorphism sending primitive idempotents to primitive
    /// idempotents and each non-idempotent generator to a radical element of
    /// the matching Peirce component. Every candidate is verified exactly.
    pub fn search(source: &Arc<FDAlgebra>, target: &Arc<FDAlgebra>, budget: usize) -> Option<AlgebraIso> {
        if source.dim != target.dim || source.num_idempotents() != target.num_idempotents() || source.field != target.field {
            return None;
        }
        let n = source.num_idempotents();
        let gens: Vec<Generator> = source.generators().iter().skip(n).cloned().collect();
        let mut tried = 0usize;
        for perm in permutations(n) {
            let mut cands: Vec<Vec<Vec<Scalar>>> = Vec::new();
            for g in &gens {
                let comp = target.peirce(perm[g.left], perm[g.right]);
                let inrad = comp.intersection(target.radical());
                let mut c: Vec<Vec<Scalar>> = (0..inrad.dim()).map(|k| inrad.basis().row(k).to_vec()).collect();
                if c.is_empty() {
                    c = (0..comp.dim()).map(|k| comp.basis().row(k).to_vec()).collect();
                }
                if c.len() > 1 {
                    let mut s = target.zero_vec();
                    for v in &c {
                        for (a, b) in s.iter_mut().zip(v) {
                            *a = a.add(b);
                        }
                    }
                    c.push(s);
                }
                cands.push(c);
            }
            if cands.iter().any(|c| c.is_empty()) {
                continue;
            }
            let mut choice = vec![0usize; gens.len()];
            loop {
                tried += 1;
                if tried > budget {
                    return None;
                }
                let mut images: Vec<(Vec<Scalar>, Vec<Scalar>)> = (0..n)
                    .map(|i| (source.idempotents[i].clone(), target.idempotents[perm[i]].clone()))
                    .collect();
                for (k, g) in gens.iter().enumerate() {
                    images.push((g.elem.clone(), cands[k][choice[k]].clone()));
                }
                if let Some(iso) = AlgebraIso::from_generator_images(source.clone(), target.clone(), &images) {
                    return Some(iso);
                }
                // next choice
                let mut k = 0;
                loop {
                    if k == choice.len() {
                        break;
                    }
                    choice[k] += 1;
                    if choice[k] < cands[k].len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == choice.len() {
                    break;
                }
            }
        }
        None
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    pub(crate) fn rel(q: &Quiver, terms: &[(i64, &str)]) -> Relation {
        Relation { terms: terms.iter().map(|(c, w)| (Q.from_i64(*c), q.parse_word(w).unwrap())).collect() }
    }

    fn two_cycle_rsz() -> FDAlgebra {
        let q = Quiver::new(&["v1", "v2"], &[("a", "v1", "v2"), ("b", "v2", "v1")]);
        let relations = vec![rel(&q, &[(1, "ab")]), rel(&q, &[(1, "ba")])];
        build_path_algebra(Q, &Presentation { quiver: q, relations, truncation: 2 }).unwrap()
    }

    fn dual_numbers() -> FDAlgebra {
        let q = Quiver::new(&["v"], &[("x", "v", "v")]);
        let relations = vec![rel(&q, &[(1, "xx")])];
        build_path_algebra(Q, &Presentation { quiver: q, relations, truncation: 2 }).unwrap()
    }

    #[test]
    fn path_algebra_examples() {
        let k = build_path_algebra(Q, &Presentation { quiver: Quiver::new(&["v"], &[]), relations: vec![], truncation: 2 }).unwrap();
        assert_eq!(k.dim(), 1);
        let a = two_cycle_rsz();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.labels(), &["v1", "v2", "a", "b"]);
        let r = dual_numbers();
        assert_eq!(r.dim(), 2);
        let x = r.basis_vec(1);
        assert!(r.mul(&x, &x).iter().all(Scalar::is_zero));
    }

    #[test]
    fn path_product_is_reverse_concatenation() {
        let a = two_cycle_rsz();
        // a: v1 -> v2, so e_v2 a e_v1 = a
        let av = a.basis_vec(2);
        let e1 = a.idempotents()[0].clone();
        let e2 = a.idempotents()[1].clone();
        assert_eq!(a.mul(&a.mul(&e2, &av), &e1), av);
        assert!(a.mul(&e1, &av).iter().all(Scalar::is_zero));
    }

    #[test]
    fn admissibility_and_composition_errors() {
        let q = Quiver::new(&["v"], &[("x", "v", "v")]);
        let err = build_path_algebra(Q, &Presentation { quiver: q.clone(), relations: vec![], truncation: 2 });
        assert_eq!(err.unwrap_err(), Error::Admissibility("xx".into()));
        let q2 = Quiver::new(&["v1", "v2"], &[("a", "v1", "v2"), ("b", "v1", "v2")]);
        let bad = Relation { terms: vec![(Q.one(), vec![0, 1])] };
        let err = build_path_algebra(Q, &Presentation { quiver: q2, relations: vec![bad], truncation: 2 });
        assert!(matches!(err, Err(Error::Composition { index: 0, .. })));
    }

    #[test]
    fn binomial_relations_dimension() {
        // loop a at v1, b: v1->v2, c: v2->v1, loop d at v2
        let q = Quiver::new(&["v1", "v2"], &[("a", "v1", "v1"), ("b", "v1", "v2"), ("c", "v2", "v1"), ("d", "v2", "v2")]);
        let relations = vec![
            rel(&q, &[(1, "aa")]),
            rel(&q, &[(1, "bc")]),
            rel(&q, &[(1, "cb")]),
            rel(&q, &[(1, "dd")]),
            rel(&q, &[(1, "ab"), (-1, "bd")]),
            rel(&q, &[(1, "dc"), (-1, "ca")]),
        ];
        let a = build_path_algebra(Q, &Presentation { quiver: q, relations, truncation: 3 }).unwrap();
        assert_eq!(a.dim(), 8);
        assert_eq!(a.loewy_length(), 3);
    }

    #[test]
    fn opposite_is_involution() {
        let a = two_cycle_rsz();
        let op = a.opposite();
        assert!(op.validate().is_ok());
        assert_eq!(op.opposite(), a);
        let r = dual_numbers();
        assert_eq!(r.opposite(), r);
        // a then b is nonzero in neither; check reversal on the product table
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(op.basis_product(i, j), a.basis_product(j, i));
            }
        }
    }

    #[test]
    fn loewy_lengths() {
        let k = build_path_algebra(Q, &Presentation { quiver: Quiver::new(&["v", "w"], &[]), relations: vec![], truncation: 2 }).unwrap();
        assert_eq!(k.loewy_length(), 1);
        assert_eq!(dual_numbers().loewy_length(), 2);
    }

    #[test]
    fn corner_of_unit_is_whole_algebra() {
        let a = two_cycle_rsz();
        let c = a.pierce_corner(a.unit()).unwrap();
        assert_eq!(c, a);
        let mut not_idem = a.zero_vec();
        not_idem[2] = Q.one();
        assert_eq!(a.pierce_corner(&not_idem).unwrap_err(), Error::NotIdempotent);
    }

    #[test]
    fn product_and_trace_radical() {
        let r = dual_numbers();
        let p = FDAlgebra::product_algebra(&r, &r).unwrap();
        assert_eq!(p.dim(), 4);
        assert_eq!(p.num_idempotents(), 2);
        assert_eq!(p.trace_radical(), p.radical().clone());
        let a = two_cycle_rsz();
        assert_eq!(a.trace_radical(), a.radical().clone());
    }

    #[test]
    fn generators_of_path_algebra_are_vertices_and_arrows() {
        let a = two_cycle_rsz();
        let g = a.generators();
        assert_eq!(g.len(), 4);
        assert_eq!((g[2].left, g[2].right), (1, 0));
    }

    #[test]
    fn iso_search_finds_identity_up_to_relabelling() {
        let a = Arc::new(two_cycle_rsz());
        let b = Arc::new(two_cycle_rsz());
        let iso = AlgebraIso::search(&a, &b, 100).unwrap();
        assert!(iso.verify());
    }
}

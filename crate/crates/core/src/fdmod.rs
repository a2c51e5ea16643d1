//! Finite-dimensional left modules and bimodules given by action matrices.
//!
//! An algebra element `a` acts on a module vector `x` by `a.x = x A_a`,
//! so `A_{ab} = A_b A_a`. Module maps are matrices `H` with `x -> x H`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactla::{quotient, Field, Matrix, Quotient, Scalar, Subspace};
use crate::fdalg::{same_algebra, FDAlgebra, Quiver};

/// Idempotent-adapted basis: rows of `p` are a basis of `e_0 X`, then `e_1 X`, ...
#[derive(Clone, Debug)]
struct Decomp {
    p: Matrix,
    pinv: Matrix,
    offsets: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct FDModule {
    algebra: Arc<FDAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
    decomp: OnceLock<Decomp>,
}

impl PartialEq for FDModule {
    fn eq(&self, o: &Self) -> bool {
        same_algebra(&self.algebra, &o.algebra) && self.action == o.action
    }
}

fn check_alg(a: &Arc<FDAlgebra>, b: &Arc<FDAlgebra>) -> Result<()> {
    if same_algebra(a, b) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch("modules live over different algebras".into()))
    }
}

impl FDModule {
    /// Validated module from one action matrix per algebra basis element.
    pub fn new(algebra: Arc<FDAlgebra>, dim: usize, action: Vec<Matrix>) -> Result<FDModule> {
        let m = FDModule::new_unchecked(algebra, dim, action);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(algebra: Arc<FDAlgebra>, dim: usize, action: Vec<Matrix>) -> FDModule {
        FDModule { algebra, dim, action, decomp: OnceLock::new() }
    }

    pub fn zero(algebra: &Arc<FDAlgebra>) -> FDModule {
        let f = algebra.field();
        let action = (0..algebra.dim()).map(|_| Matrix::zeros(f, 0, 0)).collect();
        FDModule::new_unchecked(algebra.clone(), 0, action)
    }

    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let f = a.field();
        if self.action.len() != a.dim() {
            return Err(Error::InvalidModule(format!("{} action matrices for an algebra of dim {}", self.action.len(), a.dim())));
        }
        for m in &self.action {
            if m.rows() != self.dim || m.cols() != self.dim || m.field() != f {
                return Err(Error::InvalidModule("action matrix has the wrong shape or field".into()));
            }
        }
        if !self.act(a.unit()).is_identity() {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let mut lhs = Matrix::zeros(f, self.dim, self.dim);
                for (k, c) in a.basis_product(i, j) {
                    lhs = lhs.add(&self.action[*k].scale(c));
                }
                if lhs != self.action[j].mul(&self.action[i]) {
                    return Err(Error::InvalidModule(format!(
                        "action fails on the product ({}, {})",
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<FDAlgebra> {
        &self.algebra
    }
    pub fn field(&self) -> Field {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }
    pub fn action(&self, k: usize) -> &Matrix {
        &self.action[k]
    }
    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of an arbitrary algebra element.
    pub fn act(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (k, c) in a.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.action[k].scale(c));
            }
        }
        m
    }

    /// Same module over a structurally equal algebra handle.
    pub fn rebind(&self, algebra: &Arc<FDAlgebra>) -> Result<FDModule> {
        check_alg(&self.algebra, algebra)?;
        Ok(FDModule::new_unchecked(algebra.clone(), self.dim, self.action.clone()))
    }

    /// Module of a quiver representation over a path algebra built from `quiver`.
    /// `maps[k]` is the `dims[source] x dims[target]` matrix of arrow `k`.
    pub fn from_representation(algebra: &Arc<FDAlgebra>, quiver: &Quiver, dims: &[usize], maps: &[Matrix]) -> Result<FDModule> {
        let f = algebra.field();
        if dims.len() != quiver.vertices.len() || maps.len() != quiver.arrows.len() {
            return Err(Error::InvalidModule("representation does not match the quiver".into()));
        }
        for (k, (a, m)) in quiver.arrows.iter().zip(maps).enumerate() {
            if m.rows() != dims[a.source] || m.cols() != dims[a.target] {
                return Err(Error::InvalidModule(format!("arrow {k} has a map of the wrong shape")));
            }
        }
        let mut off = vec![0; dims.len()];
        for v in 1..dims.len() {
            off[v] = off[v - 1] + dims[v - 1];
        }
        let d: usize = dims.iter().sum();
        let mut action = Vec::with_capacity(algebra.dim());
        for label in algebra.labels() {
            let mut m = Matrix::zeros(f, d, d);
            if let Some(v) = quiver.vertices.iter().position(|x| x == label) {
                m.set_block(off[v], off[v], &Matrix::identity(f, dims[v]));
            } else {
                let word = quiver
                    .parse_word(label)
                    .ok_or_else(|| Error::InvalidModule(format!("basis element {label} is not a path of the quiver")))?;
                let first = &quiver.arrows[word[0]];
                let mut block = maps[word[0]].clone();
                for &k in &word[1..] {
                    block = block.mul(&maps[k]);
                }
                let last = &quiver.arrows[*word.last().expect("nonempty word")];
                m.set_block(off[first.source], off[last.target], &block);
            }
            action.push(m);
        }
        FDModule::new(algebra.clone(), d, action)
    }

    /// Left regular module `A`.
    pub fn regular(algebra: &Arc<FDAlgebra>) -> FDModule {
        let action = (0..algebra.dim()).map(|k| algebra.left_mul_matrix(&algebra.basis_vec(k))).collect();
        FDModule::new_unchecked(algebra.clone(), algebra.dim(), action)
    }

    pub fn direct_sum(algebra: &Arc<FDAlgebra>, parts: &[&FDModule]) -> FDModule {
        let f = algebra.field();
        let dim = parts.iter().map(|p| p.dim).sum();
        let action = (0..algebra.dim())
            .map(|k| {
                let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.action[k]).collect();
                Matrix::direct_sum(f, &blocks)
            })
            .collect();
        FDModule::new_unchecked(algebra.clone(), dim, action)
    }

    /// `e_i X` for each primitive idempotent.
    pub fn idempotent_part(&self, i: usize) -> Subspace {
        let e = &self.algebra.idempotents()[i];
        Subspace::span(self.field(), self.dim, &self.act(e))
    }

    /// Dimension vector `(dim e_i X)_i`.
    pub fn dim_vector(&self) -> Vec<usize> {
        let d = self.decomp();
        d.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    fn decomp(&self) -> &Decomp {
        self.decomp.get_or_init(|| {
            let n = self.algebra.num_idempotents();
            let mut rows = Vec::new();
            let mut offsets = vec![0];
            for i in 0..n {
                let part = self.idempotent_part(i);
                rows.extend(part.basis().to_rows());
                offsets.push(rows.len());
            }
            let p = Matrix::from_rows(self.field(), self.dim, rows).expect("shape");
            let pinv = p.inverse().expect("idempotents decompose the module");
            Decomp { p, pinv, offsets }
        })
    }

    /// The subspace `rad(A) X`.
    pub fn radical(&self) -> Subspace {
        let rad = self.algebra.radical();
        let mut rows = Vec::new();
        for r in 0..rad.dim() {
            rows.extend(self.act(rad.basis().row(r)).to_rows());
        }
        Subspace::span_rows(self.field(), self.dim, rows)
    }

    /// Whether a subspace is closed under the action.
    pub fn is_submodule(&self, s: &Subspace) -> bool {
        self.algebra.generators().iter().all(|g| {
            let m = self.act(&g.elem);
            (0..s.dim()).all(|r| s.contains(&m.apply(s.basis().row(r))))
        })
    }

    /// Submodule on the echelon basis of `s`, with its inclusion matrix.
    pub fn submodule(&self, s: &Subspace) -> Result<(FDModule, Matrix)> {
        if !self.is_submodule(s) {
            return Err(Error::InvalidModule("subspace is not a submodule".into()));
        }
        let b = s.basis();
        let action = self
            .action
            .iter()
            .map(|a| {
                let rows = (0..s.dim()).map(|r| s.coords(&a.apply(b.row(r))).expect("closed")).collect();
                Matrix::from_rows(self.field(), s.dim(), rows).expect("shape")
            })
            .collect();
        Ok((FDModule::new_unchecked(self.algebra.clone(), s.dim(), action), b.clone()))
    }

    /// Quotient module `X / s` with the projection matrix.
    pub fn quotient(&self, s: &Subspace) -> Result<(FDModule, Matrix)> {
        if !self.is_submodule(s) {
            return Err(Error::InvalidModule("subspace is not a submodule".into()));
        }
        let q = quotient(self.dim, s)?;
        let action = self.action.iter().map(|a| q.section.mul(a).mul(&q.projection)).collect();
        Ok((FDModule::new_unchecked(self.algebra.clone(), q.dim(), action), q.projection))
    }

    /// Smallest submodule containing the given vectors.
    pub fn generated_submodule(&self, vectors: Vec<Vec<Scalar>>) -> Subspace {
        let mut s = Subspace::span_rows(self.field(), self.dim, vectors);
        let gens: Vec<Matrix> = self.algebra.generators().iter().map(|g| self.act(&g.elem)).collect();
        loop {
            let mut rows = s.basis().to_rows();
            for g in &gens {
                rows.extend(s.basis().mul(g).to_rows());
            }
            let next = Subspace::span_rows(self.field(), self.dim, rows);
            if next.dim() == s.dim() {
                return s;
            }
            s = next;
        }
    }

    /// `X / rad X`.
    pub fn top(&self) -> FDModule {
        self.quotient(&self.radical()).expect("radical is a submodule").0
    }

    /// The socle `{x : rad(A) x = 0}`.
    pub fn socle(&self) -> Subspace {
        let rad = self.algebra.radical();
        let mats: Vec<Matrix> = (0..rad.dim()).map(|r| self.act(rad.basis().row(r))).collect();
        let refs: Vec<&Matrix> = mats.iter().collect();
        Matrix::hstack(self.field(), self.dim, &refs).kernel()
    }
}

impl fmt::Display for FDModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "module of dim {} with dimension vector {:?}", self.dim, self.dim_vector())
    }
}

// ---------------------------------------------------------------------------
// Maps

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap {
    pub source: FDModule,
    pub target: FDModule,
    pub matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: FDModule, target: FDModule, matrix: Matrix) -> Result<ModuleMap> {
        let m = ModuleMap { source, target, matrix };
        if !m.is_homomorphism() {
            return Err(Error::InvalidModule("matrix does not intertwine the actions".into()));
        }
        Ok(m)
    }

    pub fn is_homomorphism(&self) -> bool {
        let (x, y, h) = (&self.source, &self.target, &self.matrix);
        same_algebra(x.algebra(), y.algebra())
            && h.rows() == x.dim()
            && h.cols() == y.dim()
            && (0..x.algebra().dim()).all(|k| x.action(k).mul(h) == h.mul(y.action(k)))
    }

    pub fn identity(x: &FDModule) -> ModuleMap {
        ModuleMap { source: x.clone(), target: x.clone(), matrix: Matrix::identity(x.field(), x.dim()) }
    }

    pub fn compose(&self, then: &ModuleMap) -> ModuleMap {
        ModuleMap { source: self.source.clone(), target: then.target.clone(), matrix: self.matrix.mul(&then.matrix) }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
    pub fn kernel(&self) -> Subspace {
        self.matrix.kernel()
    }
    pub fn image(&self) -> Subspace {
        self.matrix.row_space()
    }
}

/// Basis of `Hom_A(X, Y)` as matrices.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<Matrix>,
    rows: usize,
    cols: usize,
    field: Field,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The space as a subspace of flattened matrices.
    pub fn span(&self) -> Subspace {
        Subspace::span_rows(self.field, self.rows * self.cols, self.basis.iter().map(|m| m.flatten()).collect())
    }

    pub fn combination(&self, c: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        for (h, a) in self.basis.iter().zip(c) {
            if !a.is_zero() {
                m = m.add(&h.scale(a));
            }
        }
        m
    }
}

/// All module maps `X -> Y`, solved blockwise in idempotent-adapted bases.
pub fn hom_space(x: &FDModule, y: &FDModule) -> Result<HomSpace> {
    check_alg(x.algebra(), y.algebra())?;
    let f = x.field();
    let alg = x.algebra();
    let (dx, dy) = (x.decomp(), y.decomp());
    let n = alg.num_idempotents();
    let sx: Vec<usize> = (0..n).map(|i| dx.offsets[i + 1] - dx.offsets[i]).collect();
    let sy: Vec<usize> = (0..n).map(|i| dy.offsets[i + 1] - dy.offsets[i]).collect();
    // unknown offsets per block
    let mut uoff = vec![0];
    for i in 0..n {
        uoff.push(uoff[i] + sx[i] * sy[i]);
    }
    let nu = uoff[n];
    let unk = |i: usize, r: usize, c: usize| uoff[i] + r * sy[i] + c;
    let mut cols: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for g in alg.generators() {
        if g.left == g.right && g.elem == alg.idempotents()[g.left] {
            continue;
        }
        let (i, j) = (g.left, g.right);
        // g maps e_j X into e_i X
        let gx = dx.p.mul(&x.act(&g.elem)).mul(&dx.pinv);
        let gy = dy.p.mul(&y.act(&g.elem)).mul(&dy.pinv);
        let bx = gx.block(dx.offsets[j], dx.offsets[j + 1], dx.offsets[i], dx.offsets[i + 1]);
        let by = gy.block(dy.offsets[j], dy.offsets[j + 1], dy.offsets[i], dy.offsets[i + 1]);
        // bx H_i - H_j by = 0, an sx[j] x sy[i] system
        for r in 0..sx[j] {
            for c in 0..sy[i] {
                let mut col = Vec::new();
                for k in 0..sx[i] {
                    let v = bx.get(r, k);
                    if !v.is_zero() {
                        col.push((unk(i, k, c), v.clone()));
                    }
                }
                for k in 0..sy[j] {
                    let v = by.get(k, c);
                    if !v.is_zero() {
                        col.push((unk(j, r, k), v.neg()));
                    }
                }
                if !col.is_empty() {
                    cols.push(col);
                }
            }
        }
    }
    let mut eq = Matrix::zeros(f, nu, cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (u, v) in col {
            let cur = eq.get(*u, c).add(v);
            eq.set(*u, c, cur);
        }
    }
    let sol = eq.kernel();
    let basis = (0..sol.dim())
        .map(|s| {
            let v = sol.basis().row(s);
            let mut h = Matrix::zeros(f, x.dim(), y.dim());
            for i in 0..n {
                for r in 0..sx[i] {
                    for c in 0..sy[i] {
                        h.set(dx.offsets[i] + r, dy.offsets[i] + c, v[unk(i, r, c)].clone());
                    }
                }
            }
            dx.pinv.mul(&h).mul(&dy.p)
        })
        .collect();
    Ok(HomSpace { basis, rows: x.dim(), cols: y.dim(), field: f })
}

/// Maps `A e_i -> Y` are determined by the image of `e_i`, an element of `e_i Y`.
/// Returns the map matrix for `A e_i` with the basis of [`projective`].
pub fn map_from_projective(p_basis: &Matrix, y: &FDModule, elem: &[Scalar]) -> Matrix {
    let f = y.field();
    let imgs: Vec<Vec<Scalar>> = y.actions().iter().map(|a| a.apply(elem)).collect();
    let rows = (0..p_basis.rows())
        .map(|r| {
            let mut v = vec![f.zero(); y.dim()];
            for (k, c) in p_basis.row(r).iter().enumerate() {
                if !c.is_zero() {
                    for (o, w) in v.iter_mut().zip(&imgs[k]) {
                        *o = o.add(&c.mul(w));
                    }
                }
            }
            v
        })
        .collect();
    Matrix::from_rows(f, y.dim(), rows).expect("shape")
}

// ---------------------------------------------------------------------------
// Standard modules

/// The indecomposable projective `A e_i` and the basis of `A e_i` inside `A`.
pub fn projective_with_basis(a: &Arc<FDAlgebra>, i: usize) -> Result<(FDModule, Matrix)> {
    if i >= a.num_idempotents() {
        return Err(Error::IndexOutOfRange { index: i, len: a.num_idempotents() });
    }
    let s = a.sandwich(a.unit(), &a.idempotents()[i]);
    FDModule::regular(a).submodule(&s)
}

pub fn projective(a: &Arc<FDAlgebra>, i: usize) -> Result<FDModule> {
    Ok(projective_with_basis(a, i)?.0)
}

/// `D(e_i A)` computed as the dual of the projective over the opposite algebra.
pub fn injective(a: &Arc<FDAlgebra>, i: usize) -> Result<FDModule> {
    let op = Arc::new(a.opposite());
    let p = projective(&op, i)?;
    dual_over(&p, a)
}

/// Tops of the indecomposable projectives, one per primitive idempotent.
pub fn simples(a: &Arc<FDAlgebra>) -> Vec<FDModule> {
    (0..a.num_idempotents()).map(|i| simple(a, i).expect("index in range")).collect()
}

pub fn simple(a: &Arc<FDAlgebra>, i: usize) -> Result<FDModule> {
    Ok(projective(a, i)?.top())
}

/// One simple per isomorphism class.
pub fn simple_classes(a: &Arc<FDAlgebra>) -> Vec<(usize, FDModule)> {
    a.class_representatives().into_iter().map(|i| (i, simple(a, i).expect("in range"))).collect()
}

/// Vector-space dual as a module over the opposite algebra.
pub fn dual(x: &FDModule) -> FDModule {
    let op = Arc::new(x.algebra().opposite());
    FDModule::new_unchecked(op, x.dim(), x.actions().iter().map(Matrix::transpose).collect())
}

/// Dual placed over a given handle of the opposite algebra.
pub fn dual_over(x: &FDModule, op: &Arc<FDAlgebra>) -> Result<FDModule> {
    dual(x).rebind(op)
}

// ---------------------------------------------------------------------------
// Bimodules and tensor products

/// A `B`-`A`-bimodule: `b.m = m L_b`, `m.a = m R_a`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule {
    left_alg: Arc<FDAlgebra>,
    right_alg: Arc<FDAlgebra>,
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(left_alg: Arc<FDAlgebra>, right_alg: Arc<FDAlgebra>, dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Bimodule> {
        let b = Bimodule { left_alg, right_alg, dim, left, right };
        b.validate()?;
        Ok(b)
    }

    pub(crate) fn new_unchecked(left_alg: Arc<FDAlgebra>, right_alg: Arc<FDAlgebra>, dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Bimodule {
        Bimodule { left_alg, right_alg, dim, left, right }
    }

    pub fn zero(left_alg: &Arc<FDAlgebra>, right_alg: &Arc<FDAlgebra>) -> Bimodule {
        let f = left_alg.field();
        Bimodule {
            left_alg: left_alg.clone(),
            right_alg: right_alg.clone(),
            dim: 0,
            left: (0..left_alg.dim()).map(|_| Matrix::zeros(f, 0, 0)).collect(),
            right: (0..right_alg.dim()).map(|_| Matrix::zeros(f, 0, 0)).collect(),
        }
    }

    /// `A` as an `A`-`A`-bimodule.
    pub fn regular(a: &Arc<FDAlgebra>) -> Bimodule {
        let left = (0..a.dim()).map(|k| a.left_mul_matrix(&a.basis_vec(k))).collect();
        let right = (0..a.dim()).map(|k| a.right_mul_matrix(&a.basis_vec(k))).collect();
        Bimodule { left_alg: a.clone(), right_alg: a.clone(), dim: a.dim(), left, right }
    }

    pub fn validate(&self) -> Result<()> {
        self.left_module().validate()?;
        self.right_module().validate()?;
        for (i, l) in self.left.iter().enumerate() {
            for (j, r) in self.right.iter().enumerate() {
                if l.mul(r) != r.mul(l) {
                    return Err(Error::InvalidModule(format!(
                        "left action of {} and right action of {} do not commute",
                        self.left_alg.labels()[i],
                        self.right_alg.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn left_algebra(&self) -> &Arc<FDAlgebra> {
        &self.left_alg
    }
    pub fn right_algebra(&self) -> &Arc<FDAlgebra> {
        &self.right_alg
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn field(&self) -> Field {
        self.left_alg.field()
    }
    pub fn left_action(&self, k: usize) -> &Matrix {
        &self.left[k]
    }
    pub fn right_action(&self, k: usize) -> &Matrix {
        &self.right[k]
    }
    pub fn left_actions(&self) -> &[Matrix] {
        &self.left
    }
    pub fn right_actions(&self) -> &[Matrix] {
        &self.right
    }

    pub fn right_act(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (k, c) in a.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.right[k].scale(c));
            }
        }
        m
    }

    pub fn left_act(&self, b: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (k, c) in b.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.left[k].scale(c));
            }
        }
        m
    }

    /// Restriction to the left algebra.
    pub fn left_module(&self) -> FDModule {
        FDModule::new_unchecked(self.left_alg.clone(), self.dim, self.left.clone())
    }

    /// Restriction to the right algebra, viewed as a left module over its opposite.
    pub fn right_module(&self) -> FDModule {
        let op = Arc::new(self.right_alg.opposite());
        FDModule::new_unchecked(op, self.dim, self.right.clone())
    }

    pub fn right_module_over(&self, op: &Arc<FDAlgebra>) -> Result<FDModule> {
        self.right_module().rebind(op)
    }

    /// Same bimodule over structurally equal algebra handles.
    pub fn rebind(&self, left: &Arc<FDAlgebra>, right: &Arc<FDAlgebra>) -> Result<Bimodule> {
        check_alg(&self.left_alg, left)?;
        check_alg(&self.right_alg, right)?;
        Ok(Bimodule { left_alg: left.clone(), right_alg: right.clone(), ..self.clone() })
    }

    /// Swaps sides: an `A^op`-`B^op`-bimodule.
    pub fn opposite(&self, left_op: &Arc<FDAlgebra>, right_op: &Arc<FDAlgebra>) -> Bimodule {
        Bimodule {
            left_alg: left_op.clone(),
            right_alg: right_op.clone(),
            dim: self.dim,
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    pub fn direct_sum(&self, o: &Bimodule) -> Result<Bimodule> {
        check_alg(&self.left_alg, &o.left_alg)?;
        check_alg(&self.right_alg, &o.right_alg)?;
        let f = self.field();
        let left = self.left.iter().zip(&o.left).map(|(a, b)| Matrix::direct_sum(f, &[a, b])).collect();
        let right = self.right.iter().zip(&o.right).map(|(a, b)| Matrix::direct_sum(f, &[a, b])).collect();
        Ok(Bimodule { left_alg: self.left_alg.clone(), right_alg: self.right_alg.clone(), dim: self.dim + o.dim, left, right })
    }
}

/// `M (x)_A X` with its presentation as a quotient of the plain tensor space.
/// Plain coordinates: `m_i (x) x_j` sits at index `i * dim X + j`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub module: FDModule,
    pub quotient: Quotient,
    pub left_dim: usize,
    pub right_dim: usize,
}

impl Tensor {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Class of `m (x) x`.
    pub fn class_of(&self, m: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        let f = self.module.field();
        let mut plain = vec![f.zero(); self.left_dim * self.right_dim];
        for (i, a) in m.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in x.iter().enumerate() {
                plain[i * self.right_dim + j] = a.mul(b);
            }
        }
        self.quotient.projection.apply(&plain)
    }
}

/// Relation span of a balanced tensor product for given right actions on the
/// left factor and left actions on the right factor (over the same generators).
fn balanced_quotient(f: Field, alg: &FDAlgebra, right_of_left: &dyn Fn(&[Scalar]) -> Matrix, dl: usize, left_of_right: &dyn Fn(&[Scalar]) -> Matrix, dr: usize) -> Quotient {
    let n = dl * dr;
    let il = Matrix::identity(f, dl);
    let ir = Matrix::identity(f, dr);
    let mut rows = Vec::new();
    for g in alg.generators() {
        let rel = right_of_left(&g.elem).kron(&ir).sub(&il.kron(&left_of_right(&g.elem)));
        rows.extend(rel.to_rows().into_iter().filter(|r| r.iter().any(|v| !v.is_zero())));
    }
    let s = Subspace::span_rows(f, n, rows);
    quotient(n, &s).expect("same ambient")
}

/// `M (x)_A X` for a `B`-`A`-bimodule `M` and a left `A`-module `X`.
pub fn tensor(m: &Bimodule, x: &FDModule) -> Result<Tensor> {
    check_alg(m.right_algebra(), x.algebra())?;
    let f = x.field();
    let (dm, dx) = (m.dim(), x.dim());
    let q = balanced_quotient(f, x.algebra(), &|a| m.right_act(a), dm, &|a| x.act(a), dx);
    let ix = Matrix::identity(f, dx);
    let action = m.left_actions().iter().map(|l| q.section.mul(&l.kron(&ix)).mul(&q.projection)).collect();
    let module = FDModule::new_unchecked(m.left_algebra().clone(), q.dim(), action);
    Ok(Tensor { module, quotient: q, left_dim: dm, right_dim: dx })
}

/// `M (x)_A N` as a bimodule, for `M` a `C`-`A`-bimodule and `N` an `A`-`B`-bimodule.
pub fn tensor_bimodules(m: &Bimodule, n: &Bimodule) -> Result<(Bimodule, Tensor)> {
    let t = tensor(m, &n.left_module())?;
    let f = m.field();
    let im = Matrix::identity(f, m.dim());
    let right = n.right_actions().iter().map(|r| t.quotient.section.mul(&im.kron(r)).mul(&t.quotient.projection)).collect();
    let b = Bimodule::new_unchecked(m.left_algebra().clone(), n.right_algebra().clone(), t.dim(), t.module.actions().to_vec(), right);
    Ok((b, t))
}

/// Matrix of `M (x) h : M (x) X -> M (x) Y`.
pub fn tensor_map(tx: &Tensor, ty: &Tensor, h: &Matrix) -> Matrix {
    let f = h.field();
    let im = Matrix::identity(f, tx.left_dim);
    tx.quotient.section.mul(&im.kron(h)).mul(&ty.quotient.projection)
}

/// Matrix of `g (x) X : M (x) X -> M' (x) X` for a bimodule map `g` given as a matrix.
pub fn tensor_map_left(tx: &Tensor, ty: &Tensor, g: &Matrix) -> Matrix {
    let f = g.field();
    let ix = Matrix::identity(f, tx.right_dim);
    tx.quotient.section.mul(&g.kron(&ix)).mul(&ty.quotient.projection)
}

/// `Hom_B(M, Y)` as a left `A`-module with `(a.h)(m) = h(m a)`, plus the hom basis.
pub fn hom_module(m: &Bimodule, y: &FDModule) -> Result<(FDModule, HomSpace)> {
    check_alg(m.left_algebra(), y.algebra())?;
    let hs = hom_space(&m.left_module(), y)?;
    let span = hs.span();
    // coordinates relative to hs.basis via the echelon basis of the span
    let f = y.field();
    let r = hs.dim();
    let to_basis = if r == 0 {
        Matrix::zeros(f, 0, 0)
    } else {
        let mut ech = Vec::new();
        for h in &hs.basis {
            ech.push(span.coords(&h.flatten()).expect("in span"));
        }
        Matrix::from_rows(f, r, ech).expect("shape").inverse().expect("basis")
    };
    let action = (0..m.right_algebra().dim())
        .map(|k| {
            let rows = hs
                .basis
                .iter()
                .map(|h| {
                    let img = m.right_action(k).mul(h).flatten();
                    to_basis.apply(&span.coords(&img).expect("closed"))
                })
                .collect();
            Matrix::from_rows(f, r, rows).expect("shape")
        })
        .collect();
    Ok((FDModule::new_unchecked(m.right_algebra().clone(), r, action), hs))
}

// ---------------------------------------------------------------------------
// Covers and resolutions

/// Projective cover `P -> X` with `P` a direct sum of `A e_i` over the listed idempotents.
#[derive(Clone, Debug)]
pub struct Cover {
    pub module: FDModule,
    pub summands: Vec<usize>,
    pub epi: Matrix,
}

pub fn projective_cover(x: &FDModule) -> Result<Cover> {
    let a = x.algebra();
    let f = x.field();
    let rad = x.radical();
    let mut parts = Vec::new();
    let mut summands = Vec::new();
    let mut rows: Vec<Matrix> = Vec::new();
    let mut span = rad.clone();
    for i in a.class_representatives() {
        let part = x.idempotent_part(i);
        let (p, pb) = projective_with_basis(a, i)?;
        for r in 0..part.dim() {
            let v = part.basis().row(r);
            if span.contains(v) {
                continue;
            }
            // isomorphic idempotents share a class, so grow by the whole cyclic submodule
            span = span.sum(&x.generated_submodule(vec![v.to_vec()]));
            rows.push(map_from_projective(&pb, x, v));
            parts.push(p.clone());
            summands.push(i);
        }
    }
    if span.dim() != x.dim() {
        return Err(Error::Unsupported("top is not split by the primitive idempotents".into()));
    }
    let refs: Vec<&FDModule> = parts.iter().collect();
    let module = FDModule::direct_sum(a, &refs);
    let mrefs: Vec<&Matrix> = rows.iter().collect();
    let epi = Matrix::vstack(f, x.dim(), &mrefs);
    Ok(Cover { module, summands, epi })
}

/// Certified periodicity `Omega^start ~ Omega^(start+period)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Periodicity {
    pub start: usize,
    pub period: usize,
    pub iso: Matrix,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ResolutionStatus {
    Terminated,
    Truncated(usize),
    Periodic(Periodicity),
}

#[derive(Clone, Debug)]
pub struct ResolutionTerm {
    pub module: FDModule,
    pub summands: Vec<usize>,
    /// `P_n -> P_(n-1)`; for `n = 0` the augmentation `P_0 -> X`.
    pub differential: Matrix,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: FDModule,
    pub terms: Vec<ResolutionTerm>,
    /// `syzygies[n] = Omega^n`, with `Omega^0 = X`.
    pub syzygies: Vec<FDModule>,
    pub status: ResolutionStatus,
}

impl Resolution {
    /// Term `P_n`, zero past termination.
    pub fn term(&self, n: usize) -> Option<&ResolutionTerm> {
        self.terms.get(n)
    }

    pub fn length(&self) -> usize {
        self.terms.len()
    }

    /// Whether term `n` is known (computed or zero after termination).
    pub fn reaches(&self, n: usize) -> bool {
        n < self.terms.len() || self.status == ResolutionStatus::Terminated
    }

    /// Matrix of `d_n : P_n -> P_(n-1)` for `n >= 1`, zero-sized past termination.
    pub fn differential(&self, n: usize) -> Matrix {
        let f = self.module.field();
        let rows = self.terms.get(n).map_or(0, |t| t.module.dim());
        let cols = if n == 0 { self.module.dim() } else { self.terms.get(n - 1).map_or(0, |t| t.module.dim()) };
        match self.terms.get(n) {
            Some(t) => t.differential.clone(),
            None => Matrix::zeros(f, rows, cols),
        }
    }

    pub fn term_dim(&self, n: usize) -> usize {
        self.terms.get(n).map_or(0, |t| t.module.dim())
    }
}

/// Minimal projective resolution. With `detect_period` set, every new syzygy is
/// compared with the earlier ones and the computation stops at the first repeat.
pub fn minimal_resolution(x: &FDModule, depth: usize, detect_period: bool) -> Result<Resolution> {
    minimal_resolution_until(x, depth, detect_period, |_| false)
}

/// [`minimal_resolution`] that stops right after the first term satisfying
/// `stop`; the result is then reported truncated at that length.
pub fn minimal_resolution_until(
    x: &FDModule,
    depth: usize,
    detect_period: bool,
    stop: impl Fn(&ResolutionTerm) -> bool,
) -> Result<Resolution> {
    let mut terms: Vec<ResolutionTerm> = Vec::new();
    let mut syz = vec![x.clone()];
    let mut incl: Option<Matrix> = None;
    loop {
        let n = terms.len();
        let cur = syz[n].clone();
        if cur.is_zero() {
            return Ok(Resolution { module: x.clone(), terms, syzygies: syz, status: ResolutionStatus::Terminated });
        }
        if detect_period && n > 0 {
            for k in 0..n {
                if let IsoOutcome::Iso(h) = iso_test(&syz[k], &cur)? {
                    let status = ResolutionStatus::Periodic(Periodicity { start: k, period: n - k, iso: h });
                    return Ok(Resolution { module: x.clone(), terms, syzygies: syz, status });
                }
            }
        }
        if n >= depth {
            return Ok(Resolution { module: x.clone(), terms, syzygies: syz, status: ResolutionStatus::Truncated(depth) });
        }
        let c = projective_cover(&cur)?;
        let differential = match &incl {
            None => c.epi.clone(),
            Some(i) => c.epi.mul(i),
        };
        let ker = c.epi.kernel();
        let (k, kin) = c.module.submodule(&ker)?;
        let term = ResolutionTerm { module: c.module, summands: c.summands, differential };
        let done = stop(&term);
        terms.push(term);
        syz.push(k);
        incl = Some(kin);
        if done {
            let len = terms.len();
            return Ok(Resolution { module: x.clone(), terms, syzygies: syz, status: ResolutionStatus::Truncated(len) });
        }
    }
}

/// Why a dimension is known to be infinite.
#[derive(Clone, Debug, PartialEq)]
pub enum InfiniteWitness {
    Periodic(Periodicity),
    /// A non-projective module over a selfinjective algebra.
    Selfinjective,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DimResult {
    Finite(usize),
    Infinite(InfiniteWitness),
    AtLeast(usize),
}

impl DimResult {
    pub fn is_finite(&self) -> bool {
        matches!(self, DimResult::Finite(_))
    }
    pub fn value(&self) -> Option<usize> {
        match self {
            DimResult::Finite(v) => Some(*v),
            _ => None,
        }
    }
    pub fn is_infinite(&self) -> bool {
        matches!(self, DimResult::Infinite(_))
    }

    /// Supremum of a family of dimensions.
    pub fn max_of(items: impl IntoIterator<Item = DimResult>) -> DimResult {
        let mut best = 0;
        let mut lower: Option<usize> = None;
        for d in items {
            match d {
                DimResult::Infinite(_) => return d,
                DimResult::AtLeast(v) => lower = Some(lower.map_or(v, |l| l.max(v))),
                DimResult::Finite(v) => best = best.max(v),
            }
        }
        match lower {
            Some(l) => DimResult::AtLeast(l.max(best)),
            None => DimResult::Finite(best),
        }
    }
}

impl fmt::Display for DimResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimResult::Finite(v) => write!(f, "{v}"),
            DimResult::Infinite(InfiniteWitness::Periodic(p)) => write!(f, "infinite (syzygy {} repeats with period {})", p.start, p.period),
            DimResult::Infinite(InfiniteWitness::Selfinjective) => f.write_str("infinite (non-projective over a selfinjective algebra)"),
            DimResult::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

pub fn pd_from_resolution(r: &Resolution) -> DimResult {
    match &r.status {
        ResolutionStatus::Terminated => DimResult::Finite(r.terms.len().saturating_sub(1)),
        ResolutionStatus::Periodic(p) => DimResult::Infinite(InfiniteWitness::Periodic(p.clone())),
        ResolutionStatus::Truncated(d) => DimResult::AtLeast(*d),
    }
}

pub fn pd(x: &FDModule, cutoff: usize) -> Result<DimResult> {
    Ok(pd_from_resolution(&minimal_resolution(x, cutoff, true)?))
}

/// Injective dimension through `id X = pd D(X)`.
pub fn injdim(x: &FDModule, cutoff: usize) -> Result<DimResult> {
    pd(&dual(x), cutoff)
}

pub fn gldim(a: &Arc<FDAlgebra>, cutoff: usize) -> Result<DimResult> {
    let selfinjective = selfinjective_pairs(a)?.is_some();
    let mut out = Vec::new();
    for (_, s) in simple_classes(a) {
        out.push(pd_knowing_selfinjective(&s, selfinjective, cutoff)?);
    }
    Ok(DimResult::max_of(out))
}

/// Over a selfinjective algebra projectives are injective, so a finite
/// resolution of a non-projective module would split; a short search for a
/// periodicity witness is all that is tried there.
pub fn pd_knowing_selfinjective(x: &FDModule, selfinjective: bool, cutoff: usize) -> Result<DimResult> {
    if !selfinjective {
        return pd(x, cutoff);
    }
    Ok(match pd(x, cutoff.min(SELFINJECTIVE_SEARCH))? {
        DimResult::AtLeast(_) => DimResult::Infinite(InfiniteWitness::Selfinjective),
        d => d,
    })
}

pub const SELFINJECTIVE_SEARCH: usize = 8;

/// `(i, j)` with `P_i ≅ I_j` for every projective class, if the algebra is selfinjective.
pub fn selfinjective_pairs(a: &Arc<FDAlgebra>) -> Result<Option<Vec<(usize, usize)>>> {
    let inj = (0..a.num_idempotents()).map(|j| injective(a, j)).collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    for (i, _) in simple_classes(a) {
        let p = projective(a, i)?;
        let mut hit = None;
        for (j, q) in inj.iter().enumerate() {
            if is_iso(&p, q)? {
                hit = Some(j);
                break;
            }
        }
        match hit {
            Some(j) => pairs.push((i, j)),
            None => return Ok(None),
        }
    }
    Ok(Some(pairs))
}

/// `dim Ext^n(X, Y)` from the cochain complex `Hom(P_*, Y)`; `None` if the
/// resolution cannot reach degree `n + 1` within `cutoff`.
pub fn ext_dim(x: &FDModule, y: &FDModule, n: usize, cutoff: usize) -> Result<Option<usize>> {
    check_alg(x.algebra(), y.algebra())?;
    if n + 1 > cutoff {
        return Ok(None);
    }
    let r = minimal_resolution(x, n + 2, false)?;
    Ok(Some(ext_from_resolution(&r, y, n)?))
}

fn hom_from_term(t: &ResolutionTerm, y: &FDModule) -> Result<Vec<Matrix>> {
    // Hom(A e_i, Y) = e_i Y, assembled summand by summand
    let a = y.algebra();
    let f = y.field();
    let mut blocks = Vec::new();
    let mut sizes = Vec::new();
    for &i in &t.summands {
        let (_, pb) = projective_with_basis(a, i)?;
        let part = y.idempotent_part(i);
        sizes.push(pb.rows());
        blocks.push((pb, part));
    }
    let total: usize = sizes.iter().sum();
    let mut out = Vec::new();
    let mut off = 0;
    for (pb, part) in &blocks {
        for r in 0..part.dim() {
            let m = map_from_projective(pb, y, part.basis().row(r));
            let mut h = Matrix::zeros(f, total, y.dim());
            h.set_block(off, 0, &m);
            out.push(h);
        }
        off += pb.rows();
    }
    Ok(out)
}

pub fn ext_from_resolution(r: &Resolution, y: &FDModule, n: usize) -> Result<usize> {
    let f = y.field();
    let hom_n = match r.term(n) {
        Some(t) => hom_from_term(t, y)?,
        None => return Ok(0),
    };
    // rank of h -> d_(n+1) h
    let rank_out = match r.term(n + 1) {
        Some(t) => {
            let rows = hom_n.iter().map(|h| t.differential.mul(h).flatten()).collect();
            Subspace::span_rows(f, r.term_dim(n + 1) * y.dim(), rows).dim()
        }
        None => 0,
    };
    let rank_in = if n == 0 {
        0
    } else {
        let prev = hom_from_term(r.term(n - 1).expect("earlier term"), y)?;
        let d = &r.terms[n].differential;
        let rows = prev.iter().map(|h| d.mul(h).flatten()).collect();
        Subspace::span_rows(f, r.term_dim(n) * y.dim(), rows).dim()
    };
    Ok(hom_n.len() - rank_out - rank_in)
}

/// `dim Tor_n^A(M, X)` as homology of `M (x) P_*`.
pub fn tor_dim(m: &Bimodule, x: &FDModule, n: usize, cutoff: usize) -> Result<Option<usize>> {
    check_alg(m.right_algebra(), x.algebra())?;
    if n + 1 > cutoff {
        return Ok(None);
    }
    let r = minimal_resolution(x, n + 2, false)?;
    tor_from_resolution(m, &r, n).map(Some)
}

pub fn tor_from_resolution(m: &Bimodule, r: &Resolution, n: usize) -> Result<usize> {
    let Some(tn) = r.term(n) else { return Ok(0) };
    let t_n = tensor(m, &tn.module)?;
    let rank_out = if n == 0 {
        0
    } else {
        let t_prev = tensor(m, &r.terms[n - 1].module)?;
        tensor_map(&t_n, &t_prev, &tn.differential).rank()
    };
    let rank_in = match r.term(n + 1) {
        Some(t1) => {
            let t_next = tensor(m, &t1.module)?;
            tensor_map(&t_next, &t_n, &t1.differential).rank()
        }
        None => 0,
    };
    Ok(t_n.dim() - rank_out - rank_in)
}

// ---------------------------------------------------------------------------
// Isomorphism testing

#[derive(Clone, Debug, PartialEq)]
pub enum IsoOutcome {
    Iso(Matrix),
    NotIso,
    Undecided,
}

/// Number of grid points tried before giving up on an exact decision.
const GRID_BUDGET: usize = 1 << 14;

/// Exact isomorphism test. Non-isomorphism is certified by invariants or by
/// exhausting a grid on which a nonzero determinant polynomial cannot vanish.
pub fn iso_test(x: &FDModule, y: &FDModule) -> Result<IsoOutcome> {
    check_alg(x.algebra(), y.algebra())?;
    let f = x.field();
    if x.dim() != y.dim() || x.dim_vector() != y.dim_vector() {
        return Ok(IsoOutcome::NotIso);
    }
    let n = x.dim();
    if n == 0 {
        return Ok(IsoOutcome::Iso(Matrix::zeros(f, 0, 0)));
    }
    if x == y {
        return Ok(IsoOutcome::Iso(Matrix::identity(f, n)));
    }
    let hs = hom_space(x, y)?;
    let k = hs.dim();
    if k == 0 {
        return Ok(IsoOutcome::NotIso);
    }
    // invariants: a common kernel vector or a proper sum of images rule out invertibility
    let refs: Vec<&Matrix> = hs.basis.iter().collect();
    if Matrix::hstack(f, n, &refs).kernel().dim() > 0 || Matrix::vstack(f, n, &refs).rank() < n {
        return Ok(IsoOutcome::NotIso);
    }
    if hom_space(y, x)?.dim() != k || hom_space(x, x)?.dim() != k {
        return Ok(IsoOutcome::NotIso);
    }
    let try_point = |c: &[Scalar]| -> Option<Matrix> {
        let h = hs.combination(c);
        h.inverse().map(|_| h)
    };
    for i in 0..k {
        let mut c = vec![f.zero(); k];
        c[i] = f.one();
        if let Some(h) = try_point(&c) {
            return Ok(IsoOutcome::Iso(h));
        }
    }
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    for _ in 0..16 {
        let c: Vec<Scalar> = (0..k)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                f.from_i64(((state >> 33) % 2001) as i64 - 1000)
            })
            .collect();
        if let Some(h) = try_point(&c) {
            return Ok(IsoOutcome::Iso(h));
        }
    }
    // exhaustive grid: det is a polynomial of degree <= n in k variables, so a
    // nonzero one cannot vanish on S^k with |S| > n, nor on all of F_p^k when S = F_p
    let s = match f {
        Field::Rational => n as u64 + 1,
        Field::Prime(p) => p.min(n as u64 + 1),
    };
    let exact = match f {
        Field::Rational => true,
        Field::Prime(p) => s == p || s > n as u64,
    };
    let total = (s as f64).powi(k as i32);
    if !exact || total > GRID_BUDGET as f64 {
        return Ok(IsoOutcome::Undecided);
    }
    let mut idx = vec![0u64; k];
    loop {
        let c: Vec<Scalar> = idx.iter().map(|&v| f.from_i64(v as i64)).collect();
        if let Some(h) = try_point(&c) {
            return Ok(IsoOutcome::Iso(h));
        }
        let mut p = 0;
        while p < k {
            idx[p] += 1;
            if idx[p] < s {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
        if p == k {
            return Ok(IsoOutcome::NotIso);
        }
    }
}

/// Convenience wrapper: `Ok(Some(map))`, `Ok(None)` when not isomorphic, error when undecided.
pub fn find_iso(x: &FDModule, y: &FDModule) -> Result<Option<ModuleMap>> {
    match iso_test(x, y)? {
        IsoOutcome::Iso(h) => Ok(Some(ModuleMap { source: x.clone(), target: y.clone(), matrix: h })),
        IsoOutcome::NotIso => Ok(None),
        IsoOutcome::Undecided => Err(Error::Undecided("isomorphism search budget exhausted".into())),
    }
}

pub fn is_iso(x: &FDModule, y: &FDModule) -> Result<bool> {
    Ok(find_iso(x, y)?.is_some())
}

// ---------------------------------------------------------------------------
// add-approximations

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Evaluation map `G^Hom(G,X) -> X` (right) or coevaluation `X -> G^Hom(X,G)` (left),
/// `G` the direct sum of the generators.
pub fn add_approximation(gens: &[FDModule], x: &FDModule, side: Side) -> Result<ModuleMap> {
    if gens.is_empty() {
        return Err(Error::Precondition("empty generator list".into()));
    }
    let a = x.algebra();
    for g in gens {
        check_alg(g.algebra(), a)?;
    }
    let f = x.field();
    let refs: Vec<&FDModule> = gens.iter().collect();
    let g = FDModule::direct_sum(a, &refs);
    match side {
        Side::Right => {
            let hs = hom_space(&g, x)?;
            let copies: Vec<&FDModule> = (0..hs.dim()).map(|_| &g).collect();
            let src = FDModule::direct_sum(a, &copies);
            let mrefs: Vec<&Matrix> = hs.basis.iter().collect();
            let m = Matrix::vstack(f, x.dim(), &mrefs);
            Ok(ModuleMap { source: src, target: x.clone(), matrix: m })
        }
        Side::Left => {
            let hs = hom_space(x, &g)?;
            let copies: Vec<&FDModule> = (0..hs.dim()).map(|_| &g).collect();
            let tgt = FDModule::direct_sum(a, &copies);
            let mrefs: Vec<&Matrix> = hs.basis.iter().collect();
            let m = Matrix::hstack(f, x.dim(), &mrefs);
            Ok(ModuleMap { source: x.clone(), target: tgt, matrix: m })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdalg::{build_path_algebra, Presentation, Quiver, Relation};

    const Q: Field = Field::Rational;

    fn alg(vertices: &[&str], arrows: &[(&str, &str, &str)], rels: &[&str], l: usize) -> Arc<FDAlgebra> {
        let q = Quiver::new(vertices, arrows);
        let relations = rels.iter().map(|w| Relation { terms: vec![(Q.one(), q.parse_word(w).unwrap())] }).collect();
        Arc::new(build_path_algebra(Q, &Presentation { quiver: q, relations, truncation: l }).unwrap())
    }

    fn dual_numbers() -> Arc<FDAlgebra> {
        alg(&["v"], &[("x", "v", "v")], &["xx"], 2)
    }

    fn two_cycle_rsz() -> Arc<FDAlgebra> {
        alg(&["v1", "v2"], &[("a", "v1", "v2"), ("b", "v2", "v1")], &["ab", "ba"], 2)
    }

    fn a2() -> Arc<FDAlgebra> {
        alg(&["1", "2"], &[("a", "1", "2")], &[], 2)
    }

    #[test]
    fn simples_and_projectives() {
        let r = dual_numbers();
        let s = simples(&r);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].dim(), 1);
        assert!(s[0].action(1).is_zero());
        let p = projective(&r, 0).unwrap();
        let i = injective(&r, 0).unwrap();
        assert_eq!(p.dim(), 2);
        assert!(is_iso(&p, &i).unwrap());
        let a = two_cycle_rsz();
        let s = simples(&a);
        assert_eq!(s.iter().map(|m| m.dim()).collect::<Vec<_>>(), vec![1, 1]);
        assert!(!is_iso(&s[0], &s[1]).unwrap());
        assert_eq!(hom_space(&s[0], &s[1]).unwrap().dim(), 0);
    }

    #[test]
    fn hom_dimensions() {
        let r = dual_numbers();
        let reg = FDModule::regular(&r);
        assert_eq!(hom_space(&reg, &reg).unwrap().dim(), 2);
        let a = two_cycle_rsz();
        let reg = FDModule::regular(&a);
        for x in simples(&a).iter().chain([projective(&a, 0).unwrap(), injective(&a, 1).unwrap()].iter()) {
            assert_eq!(hom_space(&reg, x).unwrap().dim(), x.dim());
        }
    }

    #[test]
    fn tensor_with_regular_is_identity() {
        let a = two_cycle_rsz();
        let b = Bimodule::regular(&a);
        for x in simples(&a).into_iter().chain([FDModule::regular(&a)]) {
            let t = tensor(&b, &x).unwrap();
            assert!(is_iso(&t.module, &x).unwrap());
            let (h, _) = hom_module(&b, &x).unwrap();
            assert!(is_iso(&h, &x).unwrap());
        }
    }

    #[test]
    fn resolutions() {
        let r = dual_numbers();
        let s = &simples(&r)[0];
        let res = minimal_resolution(s, 10, true).unwrap();
        assert!(matches!(&res.status, ResolutionStatus::Periodic(p) if p.start == 0 && p.period == 1));
        assert!(pd(s, 64).unwrap().is_infinite());
        assert_eq!(pd(&FDModule::regular(&r), 64).unwrap(), DimResult::Finite(0));
        assert_eq!(injdim(&injective(&r, 0).unwrap(), 64).unwrap(), DimResult::Finite(0));
        for n in 0..4 {
            assert_eq!(ext_dim(s, s, n, 64).unwrap(), Some(1));
        }
        let a = two_cycle_rsz();
        let s = simples(&a);
        let res = minimal_resolution(&s[0], 10, true).unwrap();
        assert!(is_iso(&res.syzygies[1], &s[1]).unwrap());
        assert!(matches!(res.status, ResolutionStatus::Periodic(_)));
        assert!(gldim(&a, 64).unwrap().is_infinite());
        assert_eq!(ext_dim(&s[0], &s[1], 1, 64).unwrap(), Some(1));
        assert_eq!(ext_dim(&s[0], &s[0], 1, 64).unwrap(), Some(0));
        assert_eq!(gldim(&a2(), 64).unwrap(), DimResult::Finite(1));
    }

    #[test]
    fn resolution_is_exact_and_minimal() {
        let a = two_cycle_rsz();
        let x = simples(&a)[0].clone();
        let r = minimal_resolution(&x, 5, false).unwrap();
        for n in 1..r.terms.len() {
            let d = &r.terms[n].differential;
            let prev = &r.terms[n - 1].differential;
            assert!(d.mul(prev).is_zero());
            assert_eq!(d.rank() + prev.rank(), r.terms[n - 1].module.dim());
            assert!(r.terms[n - 1].module.radical().contains_space(&d.row_space()));
        }
    }

    #[test]
    fn dual_is_involution() {
        let a = two_cycle_rsz();
        for x in simples(&a).into_iter().chain([FDModule::regular(&a)]) {
            let dd = dual(&dual(&x)).rebind(&a).unwrap();
            assert!(is_iso(&dd, &x).unwrap());
        }
    }

    #[test]
    fn approximations() {
        let a = two_cycle_rsz();
        let s = simples(&a);
        let m = add_approximation(&[s[1].clone()], &s[0], Side::Left).unwrap();
        assert_eq!(m.target.dim(), 0);
        let reg = FDModule::regular(&a);
        let m = add_approximation(&[reg], &s[0], Side::Right).unwrap();
        assert_eq!(m.rank(), 1);
        assert!(m.is_homomorphism());
    }

    #[test]
    fn tor_over_semisimple_vanishes() {
        let k = alg(&["v", "w"], &[], &[], 2);
        let b = Bimodule::regular(&k);
        for s in simples(&k) {
            assert_eq!(tor_dim(&b, &s, 0, 64).unwrap(), Some(1));
            assert_eq!(tor_dim(&b, &s, 1, 64).unwrap(), Some(0));
        }
    }
}

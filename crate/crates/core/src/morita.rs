//! Morita contexts, the Morita ring and its module category as tuples `(X, Y, f, g)`.
//!
//! Basis of the Morita ring: `A`, then `N`, then `M`, then `B`. Elements act on
//! row vectors, so a flat module `W = X ⊕ Y` stores `X` coordinates first.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactla::{solve, Field, Matrix, Scalar, Subspace};
use crate::fdalg::{same_algebra, AlgebraIso, FDAlgebra, Sparse};
use crate::fdmod::{
    dual, dual_over, hom_module, hom_space, injective, iso_test, projective, simple, tensor, tensor_map, Bimodule,
    FDModule, HomSpace, IsoOutcome, Tensor,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Corner {
    A,
    B,
}

impl Corner {
    pub fn other(self) -> Corner {
        match self {
            Corner::A => Corner::B,
            Corner::B => Corner::A,
        }
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Corner::A => "A",
            Corner::B => "B",
        })
    }
}

/// Data `(A, B, M, N, φ, ψ)` with `M` a `B`-`A`-bimodule and `N` an `A`-`B`-bimodule.
///
/// `phi` has a row per plain tensor `m_i ⊗ n_j` (index `i * dim N + j`) holding
/// `φ(m_i ⊗ n_j)` in `B`; `psi` likewise has row `j * dim M + i` holding `ψ(n_j ⊗ m_i)`.
#[derive(Debug)]
pub struct MoritaContext {
    a: Arc<FDAlgebra>,
    b: Arc<FDAlgebra>,
    m: Bimodule,
    n: Bimodule,
    phi: Matrix,
    psi: Matrix,
    lambda: OnceLock<Arc<FDAlgebra>>,
    opposite: OnceLock<Arc<MoritaContext>>,
}

/// Which defining identity failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    PhiBalanced,
    PsiBalanced,
    PhiLeftLinear,
    PhiRightLinear,
    PsiLeftLinear,
    PsiRightLinear,
    /// `φ(m⊗n)m' = mψ(n⊗m')`
    AssociativeM,
    /// `nφ(m⊗n') = ψ(n⊗m)n'`
    AssociativeN,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::PhiBalanced => "phi(m.a (x) n) = phi(m (x) a.n)",
            Identity::PsiBalanced => "psi(n.b (x) m) = psi(n (x) b.m)",
            Identity::PhiLeftLinear => "phi(b.m (x) n) = b phi(m (x) n)",
            Identity::PhiRightLinear => "phi(m (x) n.b) = phi(m (x) n) b",
            Identity::PsiLeftLinear => "psi(a.n (x) m) = a psi(n (x) m)",
            Identity::PsiRightLinear => "psi(n (x) m.a) = psi(n (x) m) a",
            Identity::AssociativeM => "phi(m (x) n) m' = m psi(n (x) m')",
            Identity::AssociativeN => "n phi(m (x) n') = psi(n (x) m) n'",
        })
    }
}

/// A violated identity with the basis indices that witness it, in the order the
/// elements appear in the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: Identity,
    pub witness: [usize; 3],
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at basis triple {:?}", self.identity, self.witness)
    }
}

fn combo(f: Field, rows: &Matrix, coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![f.zero(); rows.cols()];
    for (r, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (o, v) in out.iter_mut().zip(rows.row(r)) {
            *o = o.add(&c.mul(v));
        }
    }
    out
}

fn add_into(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a = a.add(b);
    }
}

fn sparse_of(v: &[Scalar]) -> Sparse {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

/// Coordinates of matrices relative to a fixed list of linearly independent matrices.
struct MatBasis {
    stacked: Matrix,
}

impl MatBasis {
    fn new(f: Field, basis: &[Matrix], rows: usize, cols: usize) -> MatBasis {
        let flat = basis.iter().map(|m| m.flatten()).collect();
        MatBasis { stacked: Matrix::from_rows(f, rows * cols, flat).expect("shape") }
    }

    fn coords(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        let b = Matrix::row_vector(m.field(), m.flatten());
        solve(&self.stacked, &b).ok().flatten().map(|x| x.row(0).to_vec())
    }
}

impl MoritaContext {
    /// Checks only that the pieces fit together; see [`validate_context`] for the identities.
    pub fn new(a: Arc<FDAlgebra>, b: Arc<FDAlgebra>, m: Bimodule, n: Bimodule, phi: Matrix, psi: Matrix) -> Result<MoritaContext> {
        if a.field() != b.field() {
            return Err(Error::InvalidContext("corner algebras over different fields".into()));
        }
        if !same_algebra(m.left_algebra(), &b) || !same_algebra(m.right_algebra(), &a) {
            return Err(Error::InvalidContext("M must be a B-A-bimodule".into()));
        }
        if !same_algebra(n.left_algebra(), &a) || !same_algebra(n.right_algebra(), &b) {
            return Err(Error::InvalidContext("N must be an A-B-bimodule".into()));
        }
        let (dm, dn) = (m.dim(), n.dim());
        if phi.rows() != dm * dn || phi.cols() != b.dim() {
            return Err(Error::InvalidContext(format!("phi must be {}x{}", dm * dn, b.dim())));
        }
        if psi.rows() != dn * dm || psi.cols() != a.dim() {
            return Err(Error::InvalidContext(format!("psi must be {}x{}", dn * dm, a.dim())));
        }
        Ok(MoritaContext { a, b, m, n, phi, psi, lambda: OnceLock::new(), opposite: OnceLock::new() })
    }

    /// Context with `φ = ψ = 0`.
    pub fn with_zero_maps(a: Arc<FDAlgebra>, b: Arc<FDAlgebra>, m: Bimodule, n: Bimodule) -> Result<MoritaContext> {
        let f = a.field();
        let phi = Matrix::zeros(f, m.dim() * n.dim(), b.dim());
        let psi = Matrix::zeros(f, n.dim() * m.dim(), a.dim());
        MoritaContext::new(a, b, m, n, phi, psi)
    }

    /// Same bimodules with other pairings.
    pub fn with_maps(&self, phi: Matrix, psi: Matrix) -> Result<MoritaContext> {
        MoritaContext::new(self.a.clone(), self.b.clone(), self.m.clone(), self.n.clone(), phi, psi)
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }
    pub fn alg_a(&self) -> &Arc<FDAlgebra> {
        &self.a
    }
    pub fn alg_b(&self) -> &Arc<FDAlgebra> {
        &self.b
    }
    pub fn alg(&self, side: Corner) -> &Arc<FDAlgebra> {
        match side {
            Corner::A => &self.a,
            Corner::B => &self.b,
        }
    }
    pub fn bimod_m(&self) -> &Bimodule {
        &self.m
    }
    pub fn bimod_n(&self) -> &Bimodule {
        &self.n
    }
    pub fn phi(&self) -> &Matrix {
        &self.phi
    }
    pub fn psi(&self) -> &Matrix {
        &self.psi
    }
    pub fn maps_vanish(&self) -> bool {
        self.phi.is_zero() && self.psi.is_zero()
    }

    /// `φ(m ⊗ n)` for arbitrary vectors.
    pub fn phi_of(&self, m: &[Scalar], n: &[Scalar]) -> Vec<Scalar> {
        let dn = self.n.dim();
        let f = self.field();
        let mut out = vec![f.zero(); self.b.dim()];
        for (i, a) in m.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, c) in n.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let s = a.mul(c);
                for (o, v) in out.iter_mut().zip(self.phi.row(i * dn + j)) {
                    *o = o.add(&s.mul(v));
                }
            }
        }
        out
    }

    /// `ψ(n ⊗ m)` for arbitrary vectors.
    pub fn psi_of(&self, n: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
        let dm = self.m.dim();
        let f = self.field();
        let mut out = vec![f.zero(); self.a.dim()];
        for (j, c) in n.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (i, a) in m.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                let s = a.mul(c);
                for (o, v) in out.iter_mut().zip(self.psi.row(j * dm + i)) {
                    *o = o.add(&s.mul(v));
                }
            }
        }
        out
    }

    fn unit_vec(&self, d: usize, i: usize) -> Vec<Scalar> {
        let f = self.field();
        let mut v = vec![f.zero(); d];
        v[i] = f.one();
        v
    }

    /// Block offsets of `A, N, M, B` in the Morita ring basis.
    pub fn offsets(&self) -> [usize; 4] {
        let (da, dn, dm) = (self.a.dim(), self.n.dim(), self.m.dim());
        [0, da, da + dn, da + dn + dm]
    }

    /// The Morita ring, built once and cached. Fails on an invalid context.
    pub fn algebra(&self) -> Result<Arc<FDAlgebra>> {
        if let Some(l) = self.lambda.get() {
            return Ok(l.clone());
        }
        let l = Arc::new(build_morita_algebra(self)?);
        Ok(self.lambda.get_or_init(|| l).clone())
    }

    /// Embedding of an `A`- or `B`-element into the Morita ring.
    pub fn embed(&self, side: Corner, v: &[Scalar]) -> Vec<Scalar> {
        let o = self.offsets();
        let d = o[3] + self.b.dim();
        let mut w = vec![self.field().zero(); d];
        let start = if side == Corner::A { 0 } else { o[3] };
        w[start..start + v.len()].clone_from_slice(v);
        w
    }

    /// `1_A` or `1_B` inside the Morita ring.
    pub fn corner_unit(&self, side: Corner) -> Vec<Scalar> {
        self.embed(side, self.alg(side).unit())
    }

    /// Opposite context `(B^op, A^op, M, N, φ', ψ')` with `φ'(m⊗n) = ψ(n⊗m)`, `ψ'(n⊗m) = φ(m⊗n)`.
    pub fn opposite(&self) -> Arc<MoritaContext> {
        self.opposite
            .get_or_init(|| {
                let aop = Arc::new(self.a.opposite());
                let bop = Arc::new(self.b.opposite());
                let (dm, dn) = (self.m.dim(), self.n.dim());
                let f = self.field();
                // new M is the old M seen as an A^op-B^op-bimodule, new N likewise
                let m2 = self.m.opposite(&aop, &bop);
                let n2 = self.n.opposite(&bop, &aop);
                let mut phi2 = Matrix::zeros(f, dm * dn, aop.dim());
                let mut psi2 = Matrix::zeros(f, dn * dm, bop.dim());
                for i in 0..dm {
                    for j in 0..dn {
                        phi2.set_block(i * dn + j, 0, &self.psi.row_matrix(j * dm + i));
                        psi2.set_block(j * dm + i, 0, &self.phi.row_matrix(i * dn + j));
                    }
                }
                Arc::new(MoritaContext::new(bop, aop, m2, n2, phi2, psi2).expect("opposite data fits"))
            })
            .clone()
    }

    /// Permutation of basis indices realizing `Λ^op ≅ Λ(opposite context)`:
    /// `(a, n, m, b) ↦ (b, n, m, a)`.
    pub fn opposite_basis_map(&self) -> Vec<usize> {
        let (da, dn, dm, db) = (self.a.dim(), self.n.dim(), self.m.dim(), self.b.dim());
        let mut p = Vec::with_capacity(da + dn + dm + db);
        p.extend((0..da).map(|k| db + dn + dm + k));
        p.extend((0..dn).map(|j| db + j));
        p.extend((0..dm).map(|i| db + dn + i));
        p.extend(0..db);
        p
    }
}

// ---------------------------------------------------------------------------
// Validation and the ring

/// Every violated defining identity; an empty report means the context is valid.
pub fn validate_context(c: &MoritaContext) -> Vec<Violation> {
    let (a, b, m, n) = (&c.a, &c.b, &c.m, &c.n);
    let (da, db, dm, dn) = (a.dim(), b.dim(), m.dim(), n.dim());
    let mut out = Vec::new();
    let mv = |i: usize| c.unit_vec(dm, i);
    let nv = |j: usize| c.unit_vec(dn, j);
    for i in 0..dm {
        for j in 0..dn {
            let pmn = c.phi.row(i * dn + j).to_vec();
            for k in 0..da {
                // φ(m a ⊗ n) = φ(m ⊗ a n)
                let lhs = c.phi_of(m.right_action(k).row(i), &nv(j));
                let rhs = c.phi_of(&mv(i), n.left_action(k).row(j));
                if lhs != rhs {
                    out.push(Violation { identity: Identity::PhiBalanced, witness: [i, k, j] });
                }
            }
            for k in 0..db {
                let bk = b.basis_vec(k);
                if c.phi_of(m.left_action(k).row(i), &nv(j)) != b.mul(&bk, &pmn) {
                    out.push(Violation { identity: Identity::PhiLeftLinear, witness: [k, i, j] });
                }
                if c.phi_of(&mv(i), n.right_action(k).row(j)) != b.mul(&pmn, &bk) {
                    out.push(Violation { identity: Identity::PhiRightLinear, witness: [i, j, k] });
                }
            }
        }
    }
    for j in 0..dn {
        for i in 0..dm {
            let pnm = c.psi.row(j * dm + i).to_vec();
            for k in 0..db {
                let lhs = c.psi_of(n.right_action(k).row(j), &mv(i));
                let rhs = c.psi_of(&nv(j), m.left_action(k).row(i));
                if lhs != rhs {
                    out.push(Violation { identity: Identity::PsiBalanced, witness: [j, k, i] });
                }
            }
            for k in 0..da {
                let ak = a.basis_vec(k);
                if c.psi_of(n.left_action(k).row(j), &mv(i)) != a.mul(&ak, &pnm) {
                    out.push(Violation { identity: Identity::PsiLeftLinear, witness: [k, j, i] });
                }
                if c.psi_of(&nv(j), m.right_action(k).row(i)) != a.mul(&pnm, &ak) {
                    out.push(Violation { identity: Identity::PsiRightLinear, witness: [j, i, k] });
                }
            }
        }
    }
    for i in 0..dm {
        for j in 0..dn {
            for i2 in 0..dm {
                // φ(m_i ⊗ n_j) m_i2 = m_i ψ(n_j ⊗ m_i2)
                let lhs = m.left_act(c.phi.row(i * dn + j)).row(i2).to_vec();
                let rhs = m.right_act(c.psi.row(j * dm + i2)).row(i).to_vec();
                if lhs != rhs {
                    out.push(Violation { identity: Identity::AssociativeM, witness: [i, j, i2] });
                }
            }
        }
    }
    for j in 0..dn {
        for i in 0..dm {
            for j2 in 0..dn {
                // n_j φ(m_i ⊗ n_j2) = ψ(n_j ⊗ m_i) n_j2
                let lhs = n.right_act(c.phi.row(i * dn + j2)).row(j).to_vec();
                let rhs = n.left_act(c.psi.row(j * dm + i)).row(j2).to_vec();
                if lhs != rhs {
                    out.push(Violation { identity: Identity::AssociativeN, witness: [j, i, j2] });
                }
            }
        }
    }
    out
}

/// Radical candidate `J(A) ⊕ N₀ ⊕ M₀ ⊕ J(B)` where `N₀`, `M₀` are the parts
/// paired into the radicals. When `Im ψ ⊆ J(A)` and `Im φ ⊆ J(B)` this is all of `N ⊕ M`.
fn radical_candidate(c: &MoritaContext) -> Subspace {
    let f = c.field();
    let (da, dn, dm, db) = (c.a.dim(), c.n.dim(), c.m.dim(), c.b.dim());
    let o = c.offsets();
    let d = o[3] + db;
    let mod_rad = |alg: &FDAlgebra| crate::exactla::quotient(alg.dim(), alg.radical()).expect("ambient").projection;
    let qa = mod_rad(&c.a);
    let qb = mod_rad(&c.b);
    // n ↦ (ψ(n ⊗ m_i) mod J(A))_i
    let n_blocks: Vec<Matrix> = (0..dm)
        .map(|i| Matrix::from_fn(f, dn, da, |j, k| c.psi.get(j * dm + i, k).clone()).mul(&qa))
        .collect();
    let m_blocks: Vec<Matrix> = (0..dn)
        .map(|j| Matrix::from_fn(f, dm, db, |i, k| c.phi.get(i * dn + j, k).clone()).mul(&qb))
        .collect();
    let n0 = Matrix::hstack(f, dn, &n_blocks.iter().collect::<Vec<_>>()).kernel();
    let m0 = Matrix::hstack(f, dm, &m_blocks.iter().collect::<Vec<_>>()).kernel();
    let mut rows = Vec::new();
    let mut put = |v: &[Scalar], off: usize| {
        let mut w = vec![f.zero(); d];
        w[off..off + v.len()].clone_from_slice(v);
        rows.push(w);
    };
    for r in 0..c.a.radical().dim() {
        put(c.a.radical().basis().row(r), 0);
    }
    for r in 0..n0.dim() {
        put(n0.basis().row(r), o[1]);
    }
    for r in 0..m0.dim() {
        put(m0.basis().row(r), o[2]);
    }
    for r in 0..c.b.radical().dim() {
        put(c.b.radical().basis().row(r), o[3]);
    }
    Subspace::span_rows(f, d, rows)
}

/// The Morita ring `Λ(φ, ψ)` on `A ⊕ N ⊕ M ⊕ B`.
pub fn build_morita_algebra(c: &MoritaContext) -> Result<FDAlgebra> {
    if let Some(v) = validate_context(c).first() {
        return Err(Error::InvalidContext(v.to_string()));
    }
    let f = c.field();
    let (da, dn, dm, db) = (c.a.dim(), c.n.dim(), c.m.dim(), c.b.dim());
    let o = c.offsets();
    let d = o[3] + db;
    let shift = |s: Sparse, off: usize| -> Sparse { s.into_iter().map(|(k, v)| (k + off, v)).collect() };
    let mut t = vec![vec![Vec::new(); d]; d];
    for i in 0..da {
        for j in 0..da {
            t[i][j] = c.a.basis_product(i, j).clone();
        }
        for j in 0..dn {
            t[i][o[1] + j] = shift(sparse_of(c.n.left_action(i).row(j)), o[1]);
        }
    }
    for j in 0..dn {
        for i in 0..dm {
            t[o[1] + j][o[2] + i] = sparse_of(c.psi.row(j * dm + i));
        }
        for k in 0..db {
            t[o[1] + j][o[3] + k] = shift(sparse_of(c.n.right_action(k).row(j)), o[1]);
        }
    }
    for i in 0..dm {
        for k in 0..da {
            t[o[2] + i][k] = shift(sparse_of(c.m.right_action(k).row(i)), o[2]);
        }
        for j in 0..dn {
            t[o[2] + i][o[1] + j] = shift(sparse_of(c.phi.row(i * dn + j)), o[3]);
        }
    }
    for k in 0..db {
        for i in 0..dm {
            t[o[3] + k][o[2] + i] = shift(sparse_of(c.m.left_action(k).row(i)), o[2]);
        }
        for l in 0..db {
            t[o[3] + k][o[3] + l] = shift(c.b.basis_product(k, l).clone(), o[3]);
        }
    }
    let labels = c
        .a
        .labels()
        .iter()
        .map(|l| format!("A.{l}"))
        .chain((0..dn).map(|j| format!("N.{j}")))
        .chain((0..dm).map(|i| format!("M.{i}")))
        .chain(c.b.labels().iter().map(|l| format!("B.{l}")))
        .collect();
    let mut unit = c.corner_unit(Corner::A);
    add_into(&mut unit, &c.corner_unit(Corner::B));
    let idem = c
        .a
        .idempotents()
        .iter()
        .map(|e| c.embed(Corner::A, e))
        .chain(c.b.idempotents().iter().map(|e| c.embed(Corner::B, e)))
        .collect();
    FDAlgebra::with_radical_candidate(f, labels, t, unit, idem, Some(radical_candidate(c)))
}

// ---------------------------------------------------------------------------
// Constructions of contexts

/// Context of the corners of `a` cut out by `e₁ = Σ_{i∈part} e_i` and `e₂ = 1 - e₁`.
pub fn from_pierce(a: &Arc<FDAlgebra>, part: &[usize]) -> Result<MoritaContext> {
    let k = a.num_idempotents();
    let mut inside = vec![false; k];
    for &i in part {
        if i >= k {
            return Err(Error::IndexOutOfRange { index: i, len: k });
        }
        if inside[i] {
            return Err(Error::Precondition(format!("idempotent {i} listed twice")));
        }
        inside[i] = true;
    }
    let rest: Vec<usize> = (0..k).filter(|&i| !inside[i]).collect();
    if part.is_empty() || rest.is_empty() {
        return Err(Error::Precondition("both parts of the split must be nonempty".into()));
    }
    let mut p1 = part.to_vec();
    p1.sort_unstable();
    let e1 = a.idempotent_sum(&p1);
    let e2 = a.idempotent_sum(&rest);
    let (ca, sa) = a.pierce_corner_with_basis(&e1)?;
    let (cb, sb) = a.pierce_corner_with_basis(&e2)?;
    let (ca, cb) = (Arc::new(ca), Arc::new(cb));
    let sn = a.sandwich(&e1, &e2);
    let sm = a.sandwich(&e2, &e1);
    let f = a.field();
    let row = |s: &Subspace, r: usize| s.basis().row(r).to_vec();
    let coords = |s: &Subspace, v: Vec<Scalar>| s.coords(&v).expect("Peirce component is closed");
    let act = |s: &Subspace, by: &Subspace, left: bool| -> Vec<Matrix> {
        (0..by.dim())
            .map(|k| {
                let e = row(by, k);
                let rows = (0..s.dim())
                    .map(|j| {
                        let v = row(s, j);
                        coords(s, if left { a.mul(&e, &v) } else { a.mul(&v, &e) })
                    })
                    .collect();
                Matrix::from_rows(f, s.dim(), rows).expect("shape")
            })
            .collect()
    };
    let n = Bimodule::new(ca.clone(), cb.clone(), sn.dim(), act(&sn, &sa, true), act(&sn, &sb, false))?;
    let m = Bimodule::new(cb.clone(), ca.clone(), sm.dim(), act(&sm, &sb, true), act(&sm, &sa, false))?;
    let (dm, dn) = (sm.dim(), sn.dim());
    let phi_rows = (0..dm * dn).map(|r| coords(&sb, a.mul(&row(&sm, r / dn), &row(&sn, r % dn)))).collect();
    let psi_rows = (0..dn * dm).map(|r| coords(&sa, a.mul(&row(&sn, r / dm), &row(&sm, r % dm)))).collect();
    let phi = Matrix::from_rows(f, cb.dim(), phi_rows)?;
    let psi = Matrix::from_rows(f, ca.dim(), psi_rows)?;
    MoritaContext::new(ca, cb, m, n, phi, psi)
}

/// Rows are the basis of the Morita ring of [`from_pierce`]`(a, part)` written as
/// elements of `a`, in the order `A`, `N`, `M`, `B`.
pub fn pierce_embedding(a: &Arc<FDAlgebra>, part: &[usize]) -> Result<Matrix> {
    let mut p1 = part.to_vec();
    p1.sort_unstable();
    let rest: Vec<usize> = (0..a.num_idempotents()).filter(|i| !p1.contains(i)).collect();
    let e1 = a.idempotent_sum(&p1);
    let e2 = a.idempotent_sum(&rest);
    let (_, sa) = a.pierce_corner_with_basis(&e1)?;
    let (_, sb) = a.pierce_corner_with_basis(&e2)?;
    let (sn, sm) = (a.sandwich(&e1, &e2), a.sandwich(&e2, &e1));
    Ok(Matrix::vstack(a.field(), a.dim(), &[sa.basis(), sn.basis(), sm.basis(), sb.basis()]))
}

/// An `a`-module as a module over the Morita ring of a Peirce split of `a`.
pub fn pierce_module(c: &MoritaContext, embedding: &Matrix, x: &FDModule) -> Result<FDModule> {
    let lam = c.algebra()?;
    if embedding.rows() != lam.dim() || embedding.cols() != x.algebra().dim() {
        return Err(Error::AlgebraMismatch("embedding does not match the algebras".into()));
    }
    let action = (0..lam.dim()).map(|k| x.act(embedding.row(k))).collect();
    FDModule::new(lam, x.dim(), action)
}

/// `A = B = M = N = l` with both pairings the multiplication of `l`.
pub fn delta_context(l: &Arc<FDAlgebra>) -> MoritaContext {
    let f = l.field();
    let d = l.dim();
    let reg = Bimodule::regular(l);
    let rows: Vec<Vec<Scalar>> = (0..d * d).map(|r| l.mul(&l.basis_vec(r / d), &l.basis_vec(r % d))).collect();
    let mult = Matrix::from_rows(f, d, rows).expect("shape");
    MoritaContext::new(l.clone(), l.clone(), reg.clone(), reg, mult.clone(), mult).expect("regular data fits")
}

fn end_algebra(f: Field, parts: &[FDModule], basis: &[Matrix], coords: &MatBasis, prefix: &str) -> Result<FDAlgebra> {
    let d = basis.len();
    let du: usize = parts.iter().map(|p| p.dim()).sum();
    let co = |m: &Matrix| coords.coords(m).expect("closed under composition");
    let table = (0..d).map(|i| (0..d).map(|j| sparse_of(&co(&basis[i].mul(&basis[j])))).collect()).collect();
    let unit = co(&Matrix::identity(f, du));
    let mut idem = Vec::new();
    let mut off = 0;
    for p in parts {
        let mut e = Matrix::zeros(f, du, du);
        e.set_block(off, off, &Matrix::identity(f, p.dim()));
        off += p.dim();
        idem.push(co(&e));
    }
    let labels = (0..d).map(|i| format!("{prefix}{i}")).collect();
    FDAlgebra::with_radical_candidate(f, labels, table, unit, idem, None)
}

/// Context of `End(U ⊕ V)` for `U`, `V` given as lists of indecomposable summands.
/// Products compose left to right, so `ψ(n ⊗ m) = n` then `m` in `End(U)`.
pub fn end_context(l: &Arc<FDAlgebra>, u: &[FDModule], v: &[FDModule]) -> Result<MoritaContext> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::Precondition("both summand lists must be nonempty".into()));
    }
    for p in u.iter().chain(v) {
        if !same_algebra(p.algebra(), l) {
            return Err(Error::AlgebraMismatch("summands must be modules over the given algebra".into()));
        }
        if p.dim() == 0 {
            return Err(Error::Precondition("summands must be nonzero".into()));
        }
    }
    let f = l.field();
    let uu = FDModule::direct_sum(l, &u.iter().collect::<Vec<_>>());
    let vv = FDModule::direct_sum(l, &v.iter().collect::<Vec<_>>());
    let (du, dv) = (uu.dim(), vv.dim());
    let hu = hom_space(&uu, &uu)?;
    let hv = hom_space(&vv, &vv)?;
    let hn = hom_space(&uu, &vv)?;
    let hm = hom_space(&vv, &uu)?;
    let cu = MatBasis::new(f, &hu.basis, du, du);
    let cv = MatBasis::new(f, &hv.basis, dv, dv);
    let cn = MatBasis::new(f, &hn.basis, du, dv);
    let cm = MatBasis::new(f, &hm.basis, dv, du);
    let a = Arc::new(end_algebra(f, u, &hu.basis, &cu, "u")?);
    let b = Arc::new(end_algebra(f, v, &hv.basis, &cv, "v")?);
    let co = |c: &MatBasis, m: Matrix| c.coords(&m).expect("closed under composition");
    let acts = |hs: &HomSpace, c: &MatBasis, by: &HomSpace, before: bool| -> Vec<Matrix> {
        by.basis
            .iter()
            .map(|e| {
                let rows = hs.basis.iter().map(|h| co(c, if before { e.mul(h) } else { h.mul(e) })).collect();
                Matrix::from_rows(f, hs.dim(), rows).expect("shape")
            })
            .collect()
    };
    let n = Bimodule::new(a.clone(), b.clone(), hn.dim(), acts(&hn, &cn, &hu, true), acts(&hn, &cn, &hv, false))?;
    let m = Bimodule::new(b.clone(), a.clone(), hm.dim(), acts(&hm, &cm, &hv, true), acts(&hm, &cm, &hu, false))?;
    let (dm, dn) = (hm.dim(), hn.dim());
    let phi_rows = (0..dm * dn).map(|r| co(&cv, hm.basis[r / dn].mul(&hn.basis[r % dn]))).collect();
    let psi_rows = (0..dn * dm).map(|r| co(&cu, hn.basis[r / dm].mul(&hm.basis[r % dm]))).collect();
    let phi = Matrix::from_rows(f, b.dim(), phi_rows)?;
    let psi = Matrix::from_rows(f, a.dim(), psi_rows)?;
    MoritaContext::new(a, b, m, n, phi, psi)
}

/// With `φ = ψ = 0` the Morita ring is the trivial extension of `A × B` by `N ⊕ M`,
/// where `A` acts on `N` from the left and on `M` from the right, and `B` the other way.
pub fn trivial_extension_iso(c: &MoritaContext) -> Result<AlgebraIso> {
    if !c.maps_vanish() {
        return Err(Error::Precondition("trivial extension form needs phi = psi = 0".into()));
    }
    let f = c.field();
    let (da, dn, dm, db) = (c.a.dim(), c.n.dim(), c.m.dim(), c.b.dim());
    let r = Arc::new(FDAlgebra::product_algebra(&c.a, &c.b)?);
    let z = |k: usize| Matrix::zeros(f, k, k);
    let mut left = Vec::with_capacity(da + db);
    let mut right = Vec::with_capacity(da + db);
    for k in 0..da {
        left.push(Matrix::direct_sum(f, &[c.n.left_action(k), &z(dm)]));
        right.push(Matrix::direct_sum(f, &[&z(dn), c.m.right_action(k)]));
    }
    for k in 0..db {
        left.push(Matrix::direct_sum(f, &[&z(dn), c.m.left_action(k)]));
        right.push(Matrix::direct_sum(f, &[c.n.right_action(k), &z(dm)]));
    }
    let nm = Bimodule::new(r.clone(), r.clone(), dn + dm, left, right)?;
    let te = Arc::new(FDAlgebra::trivial_extension(&r, &nm)?);
    let lam = c.algebra()?;
    let o = c.offsets();
    let d = lam.dim();
    let mut p = Matrix::zeros(f, d, d);
    for k in 0..da {
        p.set(k, k, f.one());
    }
    for j in 0..dn {
        p.set(o[1] + j, da + db + j, f.one());
    }
    for i in 0..dm {
        p.set(o[2] + i, da + db + dn + i, f.one());
    }
    for k in 0..db {
        p.set(o[3] + k, da + k, f.one());
    }
    AlgebraIso::new(lam, te, p)
}

// ---------------------------------------------------------------------------
// Tuples

/// An object `(X, Y, f, g)`: `f : M ⊗_A X → Y`, `g : N ⊗_B Y → X`, both as
/// matrices on the quotient bases of the tensor products.
#[derive(Clone, Debug)]
pub struct TupleModule {
    ctx: Arc<MoritaContext>,
    pub x: FDModule,
    pub y: FDModule,
    pub f: Matrix,
    pub g: Matrix,
    tmx: Tensor,
    tny: Tensor,
}

/// Plain matrix of `Ψ_X` on `N ⊗ (M ⊗ X)`, rows indexed by `n_i ⊗ u_c`.
fn psi_plain(c: &MoritaContext, x: &FDModule, tmx: &Tensor) -> Matrix {
    pairing_plain(c.field(), c.n.dim(), c.m.dim(), x, tmx, |i, j| c.psi.row(i * c.m.dim() + j).to_vec())
}

/// Plain matrix of `Φ_Y` on `M ⊗ (N ⊗ Y)`.
fn phi_plain(c: &MoritaContext, y: &FDModule, tny: &Tensor) -> Matrix {
    pairing_plain(c.field(), c.m.dim(), c.n.dim(), y, tny, |j, i| c.phi.row(j * c.n.dim() + i).to_vec())
}

/// Rows `(i, c)`: `Σ_{j,k} s_c[j,k] · x_k · pair(i, j)` with `s_c` the section of the
/// `c`-th basis vector of the inner tensor product.
fn pairing_plain(
    f: Field,
    outer: usize,
    inner: usize,
    x: &FDModule,
    t: &Tensor,
    pair: impl Fn(usize, usize) -> Vec<Scalar>,
) -> Matrix {
    let dx = x.dim();
    let dt = t.dim();
    let acts: Vec<Vec<Matrix>> = (0..outer).map(|i| (0..inner).map(|j| x.act(&pair(i, j))).collect()).collect();
    let sec = &t.quotient.section;
    let mut out = Matrix::zeros(f, outer * dt, dx);
    for i in 0..outer {
        for cix in 0..dt {
            let mut v = vec![f.zero(); dx];
            for j in 0..inner {
                for k in 0..dx {
                    let s = sec.get(cix, j * dx + k);
                    if s.is_zero() {
                        continue;
                    }
                    for (o, w) in v.iter_mut().zip(acts[i][j].row(k)) {
                        *o = o.add(&s.mul(w));
                    }
                }
            }
            out.set_block(i * dt + cix, 0, &Matrix::row_vector(f, v));
        }
    }
    out
}

fn is_linear(src: &FDModule, tgt: &FDModule, h: &Matrix) -> bool {
    src.algebra().generators().iter().all(|g| src.act(&g.elem).mul(h) == h.mul(&tgt.act(&g.elem)))
}

fn first_diff(a: &Matrix, b: &Matrix) -> Option<(usize, usize)> {
    (0..a.rows()).find_map(|r| (a.row(r) != b.row(r)).then(|| (r, (0..a.cols()).find(|&k| a.get(r, k) != b.get(r, k)).unwrap_or(0))))
}

impl TupleModule {
    /// Validates both maps and both squares.
    pub fn new(ctx: &Arc<MoritaContext>, x: FDModule, y: FDModule, f: Matrix, g: Matrix) -> Result<TupleModule> {
        if !same_algebra(x.algebra(), &ctx.a) || !same_algebra(y.algebra(), &ctx.b) {
            return Err(Error::InvalidTuple("components must be over the corner algebras".into()));
        }
        let tmx = tensor(&ctx.m, &x)?;
        let tny = tensor(&ctx.n, &y)?;
        if f.rows() != tmx.dim() || f.cols() != y.dim() || g.rows() != tny.dim() || g.cols() != x.dim() {
            return Err(Error::InvalidTuple("map shapes do not match the tensor products".into()));
        }
        let t = TupleModule { ctx: ctx.clone(), x, y, f, g, tmx, tny };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<()> {
        if !is_linear(&self.tmx.module, &self.y, &self.f) {
            return Err(Error::InvalidTuple("f is not B-linear".into()));
        }
        if !is_linear(&self.tny.module, &self.x, &self.g) {
            return Err(Error::InvalidTuple("g is not A-linear".into()));
        }
        let c = &*self.ctx;
        let fl = c.field();
        // plain forms of (N ⊗ f) g and (M ⊗ g) f
        let n_f = Matrix::identity(fl, c.n.dim()).kron(&self.f).mul(&self.tny.quotient.projection).mul(&self.g);
        let psi = psi_plain(c, &self.x, &self.tmx);
        if let Some((r, k)) = first_diff(&n_f, &psi) {
            let dt = self.tmx.dim();
            return Err(Error::InvalidTuple(format!(
                "(N (x) f) g differs from Psi_X at n_{} (x) (M(x)X)_{} in coordinate {k}",
                r / dt.max(1),
                r % dt.max(1)
            )));
        }
        let m_g = Matrix::identity(fl, c.m.dim()).kron(&self.g).mul(&self.tmx.quotient.projection).mul(&self.f);
        let phi = phi_plain(c, &self.y, &self.tny);
        if let Some((r, k)) = first_diff(&m_g, &phi) {
            let dt = self.tny.dim();
            return Err(Error::InvalidTuple(format!(
                "(M (x) g) f differs from Phi_Y at m_{} (x) (N(x)Y)_{} in coordinate {k}",
                r / dt.max(1),
                r % dt.max(1)
            )));
        }
        Ok(())
    }

    pub fn context(&self) -> &Arc<MoritaContext> {
        &self.ctx
    }
    pub fn dim(&self) -> usize {
        self.x.dim() + self.y.dim()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn tensor_mx(&self) -> &Tensor {
        &self.tmx
    }
    pub fn tensor_ny(&self) -> &Tensor {
        &self.tny
    }

    /// `Ψ_X : N ⊗ M ⊗ X → X` on quotient coordinates.
    pub fn big_psi(&self) -> Result<Matrix> {
        let tnmx = tensor(&self.ctx.n, &self.tmx.module)?;
        Ok(tnmx.quotient.section.mul(&psi_plain(&self.ctx, &self.x, &self.tmx)))
    }

    /// `Φ_Y : M ⊗ N ⊗ Y → Y` on quotient coordinates.
    pub fn big_phi(&self) -> Result<Matrix> {
        let tmny = tensor(&self.ctx.m, &self.tny.module)?;
        Ok(tmny.quotient.section.mul(&phi_plain(&self.ctx, &self.y, &self.tny)))
    }

    pub fn direct_sum(&self, o: &TupleModule) -> Result<TupleModule> {
        if !Arc::ptr_eq(&self.ctx, &o.ctx) {
            return Err(Error::InvalidTuple("tuples over different contexts".into()));
        }
        let flat = FDModule::direct_sum(&self.ctx.algebra()?, &[&tuple_to_flat(self)?, &tuple_to_flat(o)?]);
        flat_to_tuple(&self.ctx, &flat)
    }
}

impl fmt::Display for TupleModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tuple with X of dim vector {:?} and Y of dim vector {:?}", self.x.dim_vector(), self.y.dim_vector())
    }
}

/// The flat module over the Morita ring: `(a,n,m,b)·(x,y) = (ax + g(n⊗y), by + f(m⊗x))`.
pub fn tuple_to_flat(t: &TupleModule) -> Result<FDModule> {
    let c = &*t.ctx;
    let lam = c.algebra()?;
    let fl = c.field();
    let (dx, dy) = (t.x.dim(), t.y.dim());
    let d = dx + dy;
    let (da, dn, dm, db) = (c.a.dim(), c.n.dim(), c.m.dim(), c.b.dim());
    let mut action = Vec::with_capacity(lam.dim());
    for k in 0..da {
        action.push(Matrix::direct_sum(fl, &[t.x.action(k), &Matrix::zeros(fl, dy, dy)]));
    }
    for j in 0..dn {
        let mut w = Matrix::zeros(fl, d, d);
        let nj = c.unit_vec(dn, j);
        let rows: Vec<Vec<Scalar>> = (0..dy).map(|l| combo(fl, &t.g, &t.tny.class_of(&nj, &c.unit_vec(dy, l)))).collect();
        if dy > 0 && dx > 0 {
            w.set_block(dx, 0, &Matrix::from_rows(fl, dx, rows)?);
        }
        action.push(w);
    }
    for i in 0..dm {
        let mut w = Matrix::zeros(fl, d, d);
        let mi = c.unit_vec(dm, i);
        let rows: Vec<Vec<Scalar>> = (0..dx).map(|r| combo(fl, &t.f, &t.tmx.class_of(&mi, &c.unit_vec(dx, r)))).collect();
        if dy > 0 && dx > 0 {
            w.set_block(0, dx, &Matrix::from_rows(fl, dy, rows)?);
        }
        action.push(w);
    }
    for k in 0..db {
        action.push(Matrix::direct_sum(fl, &[&Matrix::zeros(fl, dx, dx), t.y.action(k)]));
    }
    Ok(FDModule::new_unchecked(lam, d, action))
}

/// Restriction along `1_A`, `1_B`. Returns the tuple and the change of basis whose
/// rows are the chosen bases of `1_A W` then `1_B W`.
pub fn flat_to_tuple_with_basis(c: &Arc<MoritaContext>, w: &FDModule) -> Result<(TupleModule, Matrix)> {
    let lam = c.algebra()?;
    if !same_algebra(w.algebra(), &lam) {
        return Err(Error::AlgebraMismatch("module is not over the Morita ring".into()));
    }
    let fl = c.field();
    let sx = Subspace::span(fl, w.dim(), &w.act(&c.corner_unit(Corner::A)));
    let sy = Subspace::span(fl, w.dim(), &w.act(&c.corner_unit(Corner::B)));
    let (dx, dy) = (sx.dim(), sy.dim());
    let o = c.offsets();
    let restrict = |s: &Subspace, tgt: &Subspace, elem: &[Scalar]| -> Matrix {
        let a = w.act(elem);
        let rows = (0..s.dim()).map(|r| tgt.coords(&a.apply(s.basis().row(r))).expect("corner invariant")).collect();
        Matrix::from_rows(fl, tgt.dim(), rows).expect("shape")
    };
    let lam_vec = |k: usize| c.unit_vec(lam.dim(), k);
    let xa = (0..c.a.dim()).map(|k| restrict(&sx, &sx, &lam_vec(k))).collect();
    let yb = (0..c.b.dim()).map(|k| restrict(&sy, &sy, &lam_vec(o[3] + k))).collect();
    let x = FDModule::new(c.a.clone(), dx, xa)?;
    let y = FDModule::new(c.b.clone(), dy, yb)?;
    let tmx = tensor(&c.m, &x)?;
    let tny = tensor(&c.n, &y)?;
    // plain f: row (i, r) = m_i · x_r
    let f_rows: Vec<Matrix> = (0..c.m.dim()).map(|i| restrict(&sx, &sy, &lam_vec(o[2] + i))).collect();
    let g_rows: Vec<Matrix> = (0..c.n.dim()).map(|j| restrict(&sy, &sx, &lam_vec(o[1] + j))).collect();
    let f_plain = Matrix::vstack(fl, dy, &f_rows.iter().collect::<Vec<_>>());
    let g_plain = Matrix::vstack(fl, dx, &g_rows.iter().collect::<Vec<_>>());
    let f = tmx.quotient.section.mul(&f_plain);
    let g = tny.quotient.section.mul(&g_plain);
    let basis = Matrix::vstack(fl, w.dim(), &[sx.basis(), sy.basis()]);
    Ok((TupleModule::new(c, x, y, f, g)?, basis))
}

pub fn flat_to_tuple(c: &Arc<MoritaContext>, w: &FDModule) -> Result<TupleModule> {
    Ok(flat_to_tuple_with_basis(c, w)?.0)
}

/// A morphism `(a, b)` of tuples.
#[derive(Clone, Debug)]
pub struct TupleMap {
    pub source: TupleModule,
    pub target: TupleModule,
    pub a: Matrix,
    pub b: Matrix,
}

impl TupleMap {
    pub fn new(source: TupleModule, target: TupleModule, a: Matrix, b: Matrix) -> Result<TupleMap> {
        if !Arc::ptr_eq(&source.ctx, &target.ctx) {
            return Err(Error::InvalidTuple("maps between tuples over different contexts".into()));
        }
        let t = TupleMap { source, target, a, b };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.a.rows() != s.x.dim() || self.a.cols() != t.x.dim() || self.b.rows() != s.y.dim() || self.b.cols() != t.y.dim() {
            return Err(Error::InvalidTuple("component shapes do not match".into()));
        }
        if !is_linear(&s.x, &t.x, &self.a) || !is_linear(&s.y, &t.y, &self.b) {
            return Err(Error::InvalidTuple("components are not module maps".into()));
        }
        if s.f.mul(&self.b) != tensor_map(&s.tmx, &t.tmx, &self.a).mul(&t.f) {
            return Err(Error::InvalidTuple("square f b = (M (x) a) f' fails".into()));
        }
        if s.g.mul(&self.a) != tensor_map(&s.tny, &t.tny, &self.b).mul(&t.g) {
            return Err(Error::InvalidTuple("square g a = (N (x) b) g' fails".into()));
        }
        Ok(())
    }

    /// Block-diagonal matrix on the flat modules.
    pub fn flat_matrix(&self) -> Matrix {
        Matrix::direct_sum(self.a.field(), &[&self.a, &self.b])
    }
}

// ---------------------------------------------------------------------------
// Functors

/// `T_A(X) = (X, M⊗X, Id, Ψ_X)`, `T_B(Y) = (N⊗Y, Y, Φ_Y, Id)`.
pub fn functor_t(c: &Arc<MoritaContext>, side: Corner, x: &FDModule) -> Result<TupleModule> {
    let fl = c.field();
    match side {
        Corner::A => {
            let tmx = tensor(&c.m, x)?;
            let y = tmx.module.clone();
            let tny = tensor(&c.n, &y)?;
            let g = tny.quotient.section.mul(&psi_plain(c, x, &tmx));
            TupleModule::new(c, x.clone(), y.clone(), Matrix::identity(fl, y.dim()), g)
        }
        Corner::B => {
            let tny = tensor(&c.n, x)?;
            let xx = tny.module.clone();
            let tmx = tensor(&c.m, &xx)?;
            let f = tmx.quotient.section.mul(&phi_plain(c, x, &tny));
            TupleModule::new(c, xx.clone(), x.clone(), f, Matrix::identity(fl, xx.dim()))
        }
    }
}

/// The restriction `U_A(t) = X`, `U_B(t) = Y`.
pub fn functor_u(t: &TupleModule, side: Corner) -> FDModule {
    match side {
        Corner::A => t.x.clone(),
        Corner::B => t.y.clone(),
    }
}

/// Coordinates of `(m ↦ row_fn(m))`-style matrices in the basis of a Hom module.
fn hom_coords(hs: &HomSpace, rows: usize, cols: usize, mats: &[Matrix]) -> Matrix {
    let f = mats.first().map(|m| m.field()).unwrap_or(Field::Rational);
    let cb = MatBasis::new(f, &hs.basis, rows, cols);
    let out = mats.iter().map(|m| cb.coords(m).expect("in the Hom space")).collect();
    Matrix::from_rows(f, hs.dim(), out).expect("shape")
}

/// `H_A(X) = (X, Hom_A(N,X), f, ε')` with `f(m⊗x) = (n ↦ ψ(n⊗m)x)` and `ε'(n⊗h) = h(n)`;
/// `H_B(Y) = (Hom_B(M,Y), Y, ε, g)` with `g(n⊗y) = (m ↦ φ(m⊗n)y)`.
pub fn functor_h(c: &Arc<MoritaContext>, side: Corner, x: &FDModule) -> Result<TupleModule> {
    let fl = c.field();
    let (dm, dn) = (c.m.dim(), c.n.dim());
    match side {
        Corner::A => {
            let (y, hs) = hom_module(&c.n, x)?;
            let dx = x.dim();
            let tmx = tensor(&c.m, x)?;
            let tny = tensor(&c.n, &y)?;
            // plain f, row (j, r): n_i ↦ x_r ψ(n_i ⊗ m_j)
            let mats: Vec<Matrix> = (0..dm * dx)
                .map(|r| {
                    let (j, k) = (r / dx, r % dx);
                    let rows = (0..dn).map(|i| x.act(c.psi.row(i * dm + j)).row(k).to_vec()).collect();
                    Matrix::from_rows(fl, dx, rows).expect("shape")
                })
                .collect();
            let f_plain = if mats.is_empty() { Matrix::zeros(fl, 0, y.dim()) } else { hom_coords(&hs, dn, dx, &mats) };
            let f = tmx.quotient.section.mul(&f_plain);
            let g_rows: Vec<Matrix> = (0..dn)
                .map(|i| {
                    let rows = hs.basis.iter().map(|h| h.row(i).to_vec()).collect();
                    Matrix::from_rows(fl, dx, rows).expect("shape")
                })
                .collect();
            let g_plain = Matrix::vstack(fl, dx, &g_rows.iter().collect::<Vec<_>>());
            let g = tny.quotient.section.mul(&g_plain);
            TupleModule::new(c, x.clone(), y, f, g)
        }
        Corner::B => {
            let (xx, hs) = hom_module(&c.m, x)?;
            let dy = x.dim();
            let tmx = tensor(&c.m, &xx)?;
            let tny = tensor(&c.n, x)?;
            let f_rows: Vec<Matrix> = (0..dm)
                .map(|j| {
                    let rows = hs.basis.iter().map(|h| h.row(j).to_vec()).collect();
                    Matrix::from_rows(fl, dy, rows).expect("shape")
                })
                .collect();
            let f_plain = Matrix::vstack(fl, dy, &f_rows.iter().collect::<Vec<_>>());
            let f = tmx.quotient.section.mul(&f_plain);
            let mats: Vec<Matrix> = (0..dn * dy)
                .map(|r| {
                    let (i, k) = (r / dy, r % dy);
                    let rows = (0..dm).map(|j| x.act(c.phi.row(j * dn + i)).row(k).to_vec()).collect();
                    Matrix::from_rows(fl, dy, rows).expect("shape")
                })
                .collect();
            let g_plain = if mats.is_empty() { Matrix::zeros(fl, 0, xx.dim()) } else { hom_coords(&hs, dm, dy, &mats) };
            let g = tny.quotient.section.mul(&g_plain);
            TupleModule::new(c, xx, x.clone(), f, g)
        }
    }
}

/// `T(h)` for a module map `h: X → X'`.
pub fn functor_t_map(c: &Arc<MoritaContext>, side: Corner, x: &FDModule, x2: &FDModule, h: &Matrix) -> Result<TupleMap> {
    let s = functor_t(c, side, x)?;
    let t = functor_t(c, side, x2)?;
    match side {
        Corner::A => {
            let b = tensor_map(&s.tmx, &t.tmx, h);
            TupleMap::new(s, t, h.clone(), b)
        }
        Corner::B => {
            let a = tensor_map(&s.tny, &t.tny, h);
            TupleMap::new(s, t, a, h.clone())
        }
    }
}

/// Postcomposition `Hom(W, X) → Hom(W, X')` in the bases of the two Hom modules.
fn hom_post(w: &Bimodule, x: &FDModule, x2: &FDModule, h: &Matrix) -> Result<Matrix> {
    let (_, hs) = hom_module(w, x)?;
    let (_, hs2) = hom_module(w, x2)?;
    let imgs: Vec<Matrix> = hs.basis.iter().map(|b| b.mul(h)).collect();
    if imgs.is_empty() {
        return Ok(Matrix::zeros(x.field(), 0, hs2.dim()));
    }
    Ok(hom_coords(&hs2, w.dim(), x2.dim(), &imgs))
}

/// `H(h)` for a module map `h: X → X'`.
pub fn functor_h_map(c: &Arc<MoritaContext>, side: Corner, x: &FDModule, x2: &FDModule, h: &Matrix) -> Result<TupleMap> {
    let s = functor_h(c, side, x)?;
    let t = functor_h(c, side, x2)?;
    match side {
        Corner::A => {
            let b = hom_post(&c.n, x, x2, h)?;
            TupleMap::new(s, t, h.clone(), b)
        }
        Corner::B => {
            let a = hom_post(&c.m, x, x2, h)?;
            TupleMap::new(s, t, a, h.clone())
        }
    }
}

/// Multiplication `W ⊗ X → X` for `W` the regular bimodule, in tensor coordinates.
fn regular_action(w: &Bimodule, t: &Tensor, x: &FDModule) -> Matrix {
    let dx = x.dim();
    let alg = x.algebra();
    let rows = (0..w.dim() * dx).map(|r| x.act(&alg.basis_vec(r / dx)).row(r % dx).to_vec()).collect();
    t.quotient.section.mul(&Matrix::from_rows(x.field(), dx, rows).expect("shape"))
}

/// `x ↦ (w ↦ w x)`, the map `X → Hom(W, X)` for `W` the regular bimodule.
fn regular_coaction(w: &Bimodule, x: &FDModule) -> Result<Matrix> {
    let (_, hs) = hom_module(w, x)?;
    let dx = x.dim();
    let alg = x.algebra();
    let mats: Vec<Matrix> = (0..dx)
        .map(|k| {
            let rows = (0..w.dim()).map(|j| x.act(&alg.basis_vec(j)).row(k).to_vec()).collect();
            Matrix::from_rows(x.field(), dx, rows).expect("shape")
        })
        .collect();
    if mats.is_empty() {
        return Ok(Matrix::zeros(x.field(), 0, hs.dim()));
    }
    Ok(hom_coords(&hs, w.dim(), dx, &mats))
}

/// Over a context with both corners equal to one algebra and both bimodules
/// regular: the isomorphism `T_A(X) → H_B(X)` (side `A`) or `T_B(X) → H_A(X)`
/// (side `B`), built from multiplication `W ⊗ X → X` and `X → Hom(W, X)`.
pub fn regular_t_h_iso(c: &Arc<MoritaContext>, side: Corner, x: &FDModule) -> Result<TupleMap> {
    if !Arc::ptr_eq(&c.a, &c.b) || c.m.dim() != c.a.dim() || c.n.dim() != c.a.dim() {
        return Err(Error::Precondition("needs equal corners and regular bimodules".into()));
    }
    let t = functor_t(c, side, x)?;
    let h = functor_h(c, side.other(), x)?;
    match side {
        Corner::A => {
            let a = regular_coaction(&c.m, x)?;
            let b = regular_action(&c.m, &t.tmx, x);
            TupleMap::new(t, h, a, b)
        }
        Corner::B => {
            let a = regular_action(&c.n, &t.tny, x);
            let b = regular_coaction(&c.n, x)?;
            TupleMap::new(t, h, a, b)
        }
    }
}

/// `Z_A(X) = (X, 0, 0, 0)` and `Z_B(Y) = (0, Y, 0, 0)`; only for `φ = ψ = 0`.
pub fn functor_z(c: &Arc<MoritaContext>, side: Corner, x: &FDModule) -> Result<TupleModule> {
    if !c.maps_vanish() {
        return Err(Error::Precondition("Z is defined only when phi = psi = 0".into()));
    }
    embed_zero(c, side, x)
}

/// `(X, 0, 0, 0)` or `(0, Y, 0, 0)`; valid exactly when `Ψ_X = 0` resp. `Φ_Y = 0`.
pub fn embed_zero(c: &Arc<MoritaContext>, side: Corner, x: &FDModule) -> Result<TupleModule> {
    let fl = c.field();
    match side {
        Corner::A => {
            let y = FDModule::zero(&c.b);
            let dmx = tensor(&c.m, x)?.dim();
            TupleModule::new(c, x.clone(), y, Matrix::zeros(fl, dmx, 0), Matrix::zeros(fl, 0, x.dim()))
        }
        Corner::B => {
            let xx = FDModule::zero(&c.a);
            let dny = tensor(&c.n, x)?.dim();
            TupleModule::new(c, xx, x.clone(), Matrix::zeros(fl, 0, x.dim()), Matrix::zeros(fl, dny, 0))
        }
    }
}

/// The canonical map `T(X) → H(X)`: `(Id, f_H)` on the `A` side, `(g_H, Id)` on the `B` side.
pub fn canonical_map(c: &Arc<MoritaContext>, side: Corner, x: &FDModule) -> Result<TupleMap> {
    let t = functor_t(c, side, x)?;
    let h = functor_h(c, side, x)?;
    let id = Matrix::identity(c.field(), x.dim());
    match side {
        Corner::A => {
            let b = h.f.clone();
            TupleMap::new(t, h, id, b)
        }
        Corner::B => {
            let a = h.g.clone();
            TupleMap::new(t, h, a, id)
        }
    }
}

/// `C(X)`, the image of the canonical map `T(X) → H(X)`.
pub fn functor_c(c: &Arc<MoritaContext>, side: Corner, x: &FDModule) -> Result<TupleModule> {
    let map = canonical_map(c, side, x)?;
    let target = tuple_to_flat(&map.target)?;
    let img = Subspace::span(c.field(), target.dim(), &map.flat_matrix());
    let (sub, _) = target.submodule(&img)?;
    flat_to_tuple(c, &sub)
}

// ---------------------------------------------------------------------------
// Classification

/// A classified module with where it came from and whether the generic flat
/// computation agrees (`Some(true)`), disagrees, or could not decide (`None`).
#[derive(Clone, Debug)]
pub struct Classified {
    pub origin: String,
    pub flat_index: usize,
    pub tuple: TupleModule,
    pub flat_agrees: Option<bool>,
}

fn agree(x: &FDModule, y: &FDModule) -> Result<Option<bool>> {
    Ok(match iso_test(x, y)? {
        IsoOutcome::Iso(_) => Some(true),
        IsoOutcome::NotIso => Some(false),
        IsoOutcome::Undecided => None,
    })
}

fn classify(
    c: &Arc<MoritaContext>,
    name: &str,
    corner_module: impl Fn(&Arc<FDAlgebra>, usize) -> Result<FDModule>,
    flat_module: impl Fn(&Arc<FDAlgebra>, usize) -> Result<FDModule>,
    build: impl Fn(Corner, &FDModule) -> Result<Option<TupleModule>>,
) -> Result<Vec<Classified>> {
    let lam = c.algebra()?;
    let na = c.a.num_idempotents();
    let mut out = Vec::new();
    for side in [Corner::A, Corner::B] {
        let alg = c.alg(side);
        for i in alg.class_representatives() {
            let base = corner_module(alg, i)?;
            let Some(tuple) = build(side, &base)? else { continue };
            let flat_index = if side == Corner::A { i } else { na + i };
            let flat_agrees = agree(&tuple_to_flat(&tuple)?, &flat_module(&lam, flat_index)?)?;
            out.push(Classified { origin: format!("{name}_{side}({})", i + 1), flat_index, tuple, flat_agrees });
        }
    }
    Ok(out)
}

/// `T_A(P_i)` and `T_B(Q_j)`, one per isomorphism class of corner projectives.
pub fn classify_projectives(c: &Arc<MoritaContext>) -> Result<Vec<Classified>> {
    classify(c, "T", projective, projective, |s, p| functor_t(c, s, p).map(Some))
}

/// `H_A(I_i)` and `H_B(J_j)`.
pub fn classify_injectives(c: &Arc<MoritaContext>) -> Result<Vec<Classified>> {
    classify(c, "H", injective, injective, |s, p| functor_h(c, s, p).map(Some))
}

/// `C_A(S_i)` for every simple of `A` and `(0, S', 0, 0)` for the simples of `B` with `Φ_{S'} = 0`.
pub fn classify_simples(c: &Arc<MoritaContext>) -> Result<Vec<Classified>> {
    classify(c, "C", simple, simple, |s, x| match s {
        Corner::A => functor_c(c, s, x).map(Some),
        Corner::B => match embed_zero(c, s, x) {
            Ok(t) => Ok(Some(t)),
            Err(Error::InvalidTuple(_)) => Ok(None),
            Err(e) => Err(e),
        },
    })
    .map(|v| {
        v.into_iter()
            .map(|mut k| {
                if k.origin.starts_with("C_B") {
                    k.origin = k.origin.replacen("C_B", "Z_B", 1);
                }
                k
            })
            .collect()
    })
}

// ---------------------------------------------------------------------------
// Duality

/// `D(X, Y, f, g) = (DY, DX, f_D, g_D)` over the opposite context, with
/// `f_D(m⊗ξ)(x) = ξ(f(m⊗x))` and `g_D(n⊗η)(y) = η(g(n⊗y))`.
pub fn dual_tuple(t: &TupleModule) -> Result<TupleModule> {
    let c = &t.ctx;
    let op = c.opposite();
    let fl = c.field();
    let dx_mod = dual_over(&t.y, &op.a)?;
    let dy_mod = dual_over(&t.x, &op.b)?;
    let (dx, dy) = (t.x.dim(), t.y.dim());
    let (dm, dn) = (c.m.dim(), c.n.dim());
    // new f: M ⊗ D(Y) → D(X); plain row (j, l) has entry r = (class(m_j, x_r) f)[l]
    let t_new_mx = tensor(&op.m, &dx_mod)?;
    let t_new_ny = tensor(&op.n, &dy_mod)?;
    let mut f_plain = Matrix::zeros(fl, dm * dy, dx);
    for j in 0..dm {
        for r in 0..dx {
            let img = combo(fl, &t.f, &t.tmx.class_of(&c.unit_vec(dm, j), &c.unit_vec(dx, r)));
            for (l, v) in img.into_iter().enumerate() {
                f_plain.set(j * dy + l, r, v);
            }
        }
    }
    let mut g_plain = Matrix::zeros(fl, dn * dx, dy);
    for i in 0..dn {
        for l in 0..dy {
            let img = combo(fl, &t.g, &t.tny.class_of(&c.unit_vec(dn, i), &c.unit_vec(dy, l)));
            for (r, v) in img.into_iter().enumerate() {
                g_plain.set(i * dx + r, l, v);
            }
        }
    }
    let f = t_new_mx.quotient.section.mul(&f_plain);
    let g = t_new_ny.quotient.section.mul(&g_plain);
    TupleModule::new(&op, dx_mod, dy_mod, f, g)
}

/// Independent route to the dual: dualize the flat module and transport it along
/// `Λ^op ≅ Λ(opposite context)`.
pub fn dual_flat(t: &TupleModule) -> Result<FDModule> {
    let c = &t.ctx;
    let op = c.opposite();
    let w = dual(&tuple_to_flat(t)?);
    let perm = c.opposite_basis_map();
    let lam_op = op.algebra()?;
    let mut action = vec![Matrix::zeros(c.field(), 0, 0); perm.len()];
    for (k, &p) in perm.iter().enumerate() {
        action[p] = w.action(k).clone();
    }
    FDModule::new(lam_op, w.dim(), action)
}

// ---------------------------------------------------------------------------
// Selfinjectivity

#[derive(Clone, Debug)]
pub struct SelfinjectiveVerdict {
    pub selfinjective: bool,
    /// Origins of projectives not isomorphic to any classified injective.
    pub non_injective: Vec<String>,
}

/// Whether every classified projective is isomorphic to a classified injective.
pub fn selfinjective_check(c: &Arc<MoritaContext>) -> Result<SelfinjectiveVerdict> {
    let proj = classify_projectives(c)?;
    let inj = classify_injectives(c)?;
    let inj_flat: Vec<FDModule> = inj.iter().map(|k| tuple_to_flat(&k.tuple)).collect::<Result<_>>()?;
    let mut non_injective = Vec::new();
    for p in &proj {
        let pf = tuple_to_flat(&p.tuple)?;
        let mut found = false;
        for q in &inj_flat {
            match iso_test(&pf, q)? {
                IsoOutcome::Iso(_) => {
                    found = true;
                    break;
                }
                IsoOutcome::NotIso => {}
                IsoOutcome::Undecided => {
                    return Err(Error::Undecided(format!("comparing {} with the injectives", p.origin)))
                }
            }
        }
        if !found {
            non_injective.push(p.origin.clone());
        }
    }
    Ok(SelfinjectiveVerdict { selfinjective: non_injective.is_empty(), non_injective })
}

/// Per-projective findings for one side of the premise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PremiseEntry {
    pub projective: usize,
    /// Index of the injective `M ⊗ P` is isomorphic to, if any.
    pub injective_match: Option<usize>,
    pub unit_invertible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PremiseSide {
    pub entries: Vec<PremiseEntry>,
    /// Injective classes hit by no projective.
    pub missed_injectives: Vec<usize>,
}

impl PremiseSide {
    pub fn holds(&self) -> bool {
        self.missed_injectives.is_empty() && self.entries.iter().all(|e| e.injective_match.is_some() && e.unit_invertible)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PremiseReport {
    /// `M ⊗_A -` on projective `A`-modules against injective `B`-modules.
    pub a_side: PremiseSide,
    /// `N ⊗_B -` on projective `B`-modules against injective `A`-modules.
    pub b_side: PremiseSide,
}

impl PremiseReport {
    pub fn holds(&self) -> bool {
        self.a_side.holds() && self.b_side.holds()
    }
}

fn premise_side(bm: &Bimodule) -> Result<PremiseSide> {
    let src = bm.right_algebra();
    let tgt = bm.left_algebra();
    let fl = bm.field();
    let reps = tgt.class_representatives();
    let injs: Vec<(usize, FDModule)> = reps.iter().map(|&j| injective(tgt, j).map(|m| (j, m))).collect::<Result<_>>()?;
    let mut hit = vec![false; injs.len()];
    let mut entries = Vec::new();
    for i in src.class_representatives() {
        let p = projective(src, i)?;
        let t = tensor(bm, &p)?;
        let mut injective_match = None;
        for (k, (j, inj)) in injs.iter().enumerate() {
            match iso_test(&t.module, inj)? {
                IsoOutcome::Iso(_) => {
                    injective_match = Some(*j);
                    hit[k] = true;
                    break;
                }
                IsoOutcome::NotIso => {}
                IsoOutcome::Undecided => return Err(Error::Undecided("injectivity of a tensor product".into())),
            }
        }
        // unit P → Hom(M, M ⊗ P), x ↦ (m ↦ m ⊗ x)
        let (hm, hs) = hom_module(bm, &t.module)?;
        let unit_invertible = if hm.dim() != p.dim() {
            false
        } else if p.dim() == 0 {
            true
        } else {
            let mats: Vec<Matrix> = (0..p.dim())
                .map(|k| {
                    let xk = unit(fl, p.dim(), k);
                    let rows = (0..bm.dim()).map(|j| t.class_of(&unit(fl, bm.dim(), j), &xk)).collect();
                    Matrix::from_rows(fl, t.dim(), rows).expect("shape")
                })
                .collect();
            hom_coords(&hs, bm.dim(), t.dim(), &mats).inverse().is_some()
        };
        entries.push(PremiseEntry { projective: i, injective_match, unit_invertible });
    }
    let missed_injectives = injs.iter().zip(&hit).filter(|(_, h)| !**h).map(|((j, _), _)| *j).collect();
    Ok(PremiseSide { entries, missed_injectives })
}

fn unit(f: Field, d: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![f.zero(); d];
    v[i] = f.one();
    v
}

/// Finite check that `M ⊗_A -` (with `Hom_B(M, -)`) matches `proj A` with `inj B`,
/// and `N ⊗_B -` matches `proj B` with `inj A`.
pub fn equivalence_premise(c: &MoritaContext) -> Result<PremiseReport> {
    Ok(PremiseReport { a_side: premise_side(&c.m)?, b_side: premise_side(&c.n)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::q;
    use crate::fdalg::tests::rel;
    use crate::fdalg::{build_path_algebra, Presentation, Quiver};
    use crate::fdmod::{is_iso, simples};

    fn rad2(verts: &[&str], arrows: &[(&str, &str, &str)]) -> Arc<FDAlgebra> {
        let qv = Quiver::new(verts, arrows);
        let mut rels = Vec::new();
        for x in arrows {
            for y in arrows {
                if x.2 == y.1 {
                    rels.push(rel(&qv, &[(1, &format!("{}{}", x.0, y.0))]));
                }
            }
        }
        Arc::new(build_path_algebra(Field::Rational, &Presentation { quiver: qv, relations: rels, truncation: 2 }).unwrap())
    }

    fn two_cycle_rsz() -> Arc<FDAlgebra> {
        rad2(&["v1", "v2"], &[("a", "v1", "v2"), ("b", "v2", "v1")])
    }

    fn dual_numbers() -> Arc<FDAlgebra> {
        let qv = Quiver::new(&["v"], &[("x", "v", "v")]);
        let rels = vec![rel(&qv, &[(1, "xx")])];
        Arc::new(build_path_algebra(Field::Rational, &Presentation { quiver: qv, relations: rels, truncation: 2 }).unwrap())
    }

    fn field_k(f: Field) -> Arc<FDAlgebra> {
        Arc::new(FDAlgebra::from_table(f, vec!["1".into()], vec![vec![vec![f.one()]]], vec![f.one()], vec![vec![f.one()]], Subspace::zero(f, 1)).unwrap())
    }

    #[test]
    fn zero_maps_on_k_give_example_ring() {
        let k = field_k(Field::Rational);
        let reg = Bimodule::regular(&k);
        let c = MoritaContext::with_zero_maps(k.clone(), k.clone(), reg.clone(), reg).unwrap();
        assert!(validate_context(&c).is_empty());
        let lam = c.algebra().unwrap();
        assert_eq!(lam.dim(), 4);
        assert!(AlgebraIso::search(&lam, &two_cycle_rsz(), 1 << 12).is_some());
        assert!(trivial_extension_iso(&c).is_ok());
    }

    #[test]
    fn pierce_round_trip() {
        let l = two_cycle_rsz();
        let c = from_pierce(&l, &[0]).unwrap();
        assert!(validate_context(&c).is_empty());
        assert!(c.maps_vanish());
        let lam = c.algebra().unwrap();
        assert!(AlgebraIso::search(&lam, &l, 1 << 12).is_some());
        assert!(from_pierce(&dual_numbers(), &[0]).is_err());
    }

    #[test]
    fn delta_checks() {
        let r = dual_numbers();
        let c = delta_context(&r);
        assert!(validate_context(&c).is_empty());
        assert_eq!(c.algebra().unwrap().dim(), 8);
        let bad = c.with_maps(c.phi().clone(), c.psi().scale(&q(2, 1))).unwrap();
        let v = validate_context(&bad);
        assert!(v.iter().any(|x| x.identity == Identity::AssociativeM && x.witness == [0, 0, 0]));
        assert!(build_morita_algebra(&bad).is_err());
    }

    #[test]
    fn delta_over_field_is_matrix_ring() {
        let k = field_k(Field::Rational);
        let c = Arc::new(delta_context(&k));
        let lam = c.algebra().unwrap();
        assert_eq!(lam.radical().dim(), 0);
        assert_eq!(lam.class_representatives().len(), 1);
        assert_eq!(classify_projectives(&c).unwrap().len(), 2);
        assert_eq!(classify_simples(&c).unwrap().len(), 1);
        assert!(selfinjective_check(&c).unwrap().selfinjective);
        assert!(equivalence_premise(&c).unwrap().holds());
    }

    #[test]
    fn flat_round_trip_and_adjunction() {
        let l = two_cycle_rsz();
        let c = Arc::new(from_pierce(&l, &[0]).unwrap());
        let lam = c.algebra().unwrap();
        let reg = FDModule::regular(&lam);
        let t = flat_to_tuple(&c, &reg).unwrap();
        assert_eq!(t.dim(), 4);
        let back = tuple_to_flat(&t).unwrap();
        assert!(is_iso(&back, &reg).unwrap());
        for x in simples(c.alg_a()) {
            let tx = functor_t(&c, Corner::A, &x).unwrap();
            assert_eq!(functor_u(&tx, Corner::A), x);
            let t2 = flat_to_tuple(&c, &tuple_to_flat(&tx).unwrap()).unwrap();
            assert_eq!(t2.x, tx.x);
            assert_eq!(t2.f, tx.f);
            for w in [&reg, &back] {
                let lhs = hom_space(&tuple_to_flat(&tx).unwrap(), w).unwrap().dim();
                let wt = flat_to_tuple(&c, w).unwrap();
                let rhs = hom_space(&x, &wt.x).unwrap().dim();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn classification_agrees_with_flat() {
        for c in [Arc::new(from_pierce(&two_cycle_rsz(), &[0]).unwrap()), Arc::new(delta_context(&dual_numbers()))] {
            for list in [classify_projectives(&c).unwrap(), classify_injectives(&c).unwrap(), classify_simples(&c).unwrap()] {
                assert!(list.iter().all(|k| k.flat_agrees == Some(true)), "{:?}", list.iter().map(|k| &k.origin).collect::<Vec<_>>());
            }
        }
        let c = Arc::new(from_pierce(&two_cycle_rsz(), &[0]).unwrap());
        let s = classify_simples(&c).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!((s[0].tuple.x.dim(), s[0].tuple.y.dim()), (1, 0));
        assert_eq!((s[1].tuple.x.dim(), s[1].tuple.y.dim()), (0, 1));
    }

    #[test]
    fn dual_matches_flat_dual() {
        let c = Arc::new(from_pierce(&two_cycle_rsz(), &[0]).unwrap());
        let d = Arc::new(delta_context(&dual_numbers()));
        for ctx in [c, d] {
            for k in classify_projectives(&ctx).unwrap().iter().chain(classify_simples(&ctx).unwrap().iter()) {
                let dt = dual_tuple(&k.tuple).unwrap();
                assert!(is_iso(&tuple_to_flat(&dt).unwrap(), &dual_flat(&k.tuple).unwrap()).unwrap());
                let ddt = dual_tuple(&dt).unwrap();
                assert_eq!(ddt.dim(), k.tuple.dim());
            }
        }
    }

    #[test]
    fn end_context_recovers_ring() {
        let l = two_cycle_rsz();
        let p = projective(&l, 0).unwrap();
        let qm = projective(&l, 1).unwrap();
        let c = end_context(&l, &[p.clone()], &[qm.clone()]).unwrap();
        assert!(validate_context(&c).is_empty());
        let lam = c.algebra().unwrap();
        assert_eq!(lam.dim(), 4);
        assert!(AlgebraIso::search(&lam, &l, 1 << 12).is_some());
        let both = end_context(&l, &[p.clone(), qm.clone()], &[p, qm]).unwrap();
        assert_eq!(both.algebra().unwrap().dim(), 4 * l.dim());
    }
}

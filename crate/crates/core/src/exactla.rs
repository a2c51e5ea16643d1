//! Exact linear algebra over the rationals and prime fields.
//!
//! Everything uses the row-vector convention: a vector is a row and a
//! matrix acts on it by right multiplication, so `v -> v * m`. Composing
//! `m` then `n` is the product `m * n`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaError {
    #[error("field mismatch: {0:?} vs {1:?}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// The base field: rationals or integers modulo a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, LaError> {
        // keep products inside u128 comfortably
        if !is_prime(p) || p >= (1u64 << 62) {
            return Err(LaError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Fp(v.rem_euclid(p as i64) as u64, p),
        }
    }

    fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = ((v % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                Scalar::Fp(r.to_u64().unwrap(), p)
            }
        }
    }

    /// Parses `"p/q"` or an integer.
    pub fn parse(self, s: &str) -> Result<Scalar, LaError> {
        let s = s.trim();
        let bad = || LaError::Parse(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let d: BigInt = den.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(LaError::DivisionByZero);
        }
        let den = self.from_bigint(&d);
        if den.is_zero() {
            return Err(LaError::DivisionByZero);
        }
        Ok(self.from_bigint(&n).div(&den))
    }

    pub fn name(self) -> String {
        match self {
            Field::Rational => "rational".to_string(),
            Field::Prime(p) => format!("prime({p})"),
        }
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    /// residue and modulus
    Fp(u64, u64),
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u128;
    let mut bb = b as u128 % p as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % p as u128;
        }
        bb = bb * bb % p as u128;
        e >>= 1;
    }
    b = r as u64;
    b
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp(v, _) => *v == 1,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => {
                Scalar::Fp(((*a as u128 + *b as u128) % *p as u128) as u64, *p)
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp(a, p) => Scalar::Fp(if *a == 0 { 0 } else { p - a }, *p),
        }
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => {
                Scalar::Fp(((*a as u128 * *b as u128) % *p as u128) as u64, *p)
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Fp(a, p) => Scalar::Fp(mod_pow(*a, p - 2, *p), *p),
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }

    /// Integer value when the scalar is a rational integer.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(q) if q.is_integer() => q.to_integer().to_i64(),
            Scalar::Q(_) => None,
            Scalar::Fp(v, _) => Some(*v as i64),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Q(q) if q.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{q}"),
            Scalar::Fp(v, _) => write!(f, "{v}"),
        }
    }
}

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; every entry must lie in `field`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Matrix, LaError> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LaError::DimensionMismatch(format!(
                    "row of length {} in a matrix with {} columns",
                    row.len(),
                    cols
                )));
            }
            for x in row {
                if x.field() != field {
                    return Err(LaError::FieldMismatch(field, x.field()));
                }
                data.push(x);
            }
        }
        Ok(Matrix { field, rows: r, cols, data })
    }

    pub fn from_ints(field: Field, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Matrix::from_rows(field, cols, rows).expect("consistent integer rows")
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// A 1 x n matrix.
    pub fn row_vector(field: Field, v: Vec<Scalar>) -> Matrix {
        let n = v.len();
        Matrix { field, rows: 1, cols: n, data: v }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_matrix(&self, i: usize) -> Matrix {
        Matrix::row_vector(self.field, self.row(i).to_vec())
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| {
                let x = self.get(i, j);
                if i == j { x.is_one() } else { x.is_zero() }
            }))
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product shape {}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols);
        assert_eq!(self.field, o.field);
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(Scalar::neg).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn hstack(field: Field, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows);
            out.set_block(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            assert_eq!(m.cols, cols);
            data.extend(m.data.iter().cloned());
        }
        Matrix { field, rows, cols, data }
    }

    /// Block diagonal sum.
    pub fn direct_sum(field: Field, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.set_block(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Matrix) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = m.get(i, j).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        Matrix::from_fn(self.field, r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Kronecker product, compatible with `kron(u, v) * kron(a, b) = kron(u a, v b)`.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * o.rows + k) * out.cols + j * o.cols + l] = a.mul(b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Flattens row-major into a 1 x (rows*cols) vector.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_flat(field: Field, rows: usize, cols: usize, v: &[Scalar]) -> Matrix {
        assert_eq!(v.len(), rows * cols);
        Matrix { field, rows, cols, data: v.to_vec() }
    }

    /// Vector times matrix.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![self.field.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(k, j);
                if !b.is_zero() {
                    *o = o.add(&a.mul(b));
                }
            }
        }
        out
    }

    /// Reduced row-echelon form, pivot columns and rank.
    pub fn rref(&self) -> (Matrix, Vec<usize>, usize) {
        let mut rows = self.to_rows();
        let piv = rref_rows(&mut rows, self.cols);
        let rank = piv.len();
        let m = Matrix::from_rows(self.field, self.cols, rows).expect("same shape");
        (m, piv, rank)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        rref_rows(&mut rows, self.cols).len()
    }

    /// Left kernel `{v : v * self = 0}`.
    pub fn kernel(&self) -> Subspace {
        let basis = right_null_basis(&self.transpose());
        Subspace::span_rows(self.field, self.rows, basis)
    }

    /// The row space as a subspace of the ambient row space.
    pub fn row_space(&self) -> Subspace {
        Subspace::span(self.field, self.cols, self)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Matrix::hstack(self.field, n, &[self, &Matrix::identity(self.field, n)]);
        let (r, piv, _) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, 2 * n))
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square());
        let n = self.rows;
        let mut rows = self.to_rows();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                rows.swap(p, c);
                det = det.neg();
            }
            let pv = rows[c][c].clone();
            det = det.mul(&pv);
            let inv = pv.inv();
            for i in c + 1..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let f = rows[i][c].mul(&inv);
                for j in c..n {
                    if !rows[c][j].is_zero() {
                        let t = f.mul(&rows[c][j]);
                        rows[i][j] = rows[i][j].sub(&t);
                    }
                }
            }
        }
        det
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// In-place Gauss-Jordan elimination; returns pivot columns.
fn rref_rows(rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
        }
        let nz: Vec<usize> = (c..ncols).filter(|&j| !rows[r][j].is_zero()).collect();
        let prow: Vec<(usize, Scalar)> = nz.iter().map(|&j| (j, rows[r][j].clone())).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (j, v) in &prow {
                let t = f.mul(v);
                row[*j] = row[*j].sub(&t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : m x^T = 0}` written as rows, i.e. the right null space of `m`.
fn right_null_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let field = m.field;
    let (r, piv, rank) = m.rref();
    let n = m.cols;
    let mut is_piv = vec![false; n];
    for &p in &piv {
        is_piv[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..n).filter(|&j| !is_piv[j]) {
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (i, &p) in piv.iter().enumerate().take(rank) {
            v[p] = r.get(i, free).neg();
        }
        out.push(v);
    }
    out
}

/// A subspace of a row space, stored by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: vec![] }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the rows of `m`.
    pub fn span(field: Field, ambient: usize, m: &Matrix) -> Subspace {
        assert_eq!(m.cols, ambient);
        Subspace::span_rows(field, ambient, m.to_rows())
    }

    pub fn span_rows(field: Field, ambient: usize, mut rows: Vec<Vec<Scalar>>) -> Subspace {
        let pivots = rref_rows(&mut rows, ambient);
        rows.truncate(pivots.len());
        let basis = Matrix::from_rows(field, ambient, rows).expect("consistent rows");
        Subspace { ambient, basis, pivots }
    }

    pub fn field(&self) -> Field {
        self.basis.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.rows
    }
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient);
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.apply(&c);
        if back.iter().zip(v).all(|(a, b)| a == b) {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_space(&self, o: &Subspace) -> bool {
        (0..o.dim()).all(|i| self.contains(o.basis.row(i)))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut rows = self.basis.to_rows();
        rows.extend(o.basis.to_rows());
        Subspace::span_rows(self.field(), self.ambient, rows)
    }

    pub fn intersection(&self, o: &Subspace) -> Subspace {
        // u A = w B  <=>  (u, -w) [A; B] = 0
        let stacked = Matrix::vstack(self.field(), self.ambient, &[&self.basis, &o.basis]);
        let k = stacked.kernel();
        let d = self.dim();
        let rows: Vec<Vec<Scalar>> = (0..k.dim())
            .map(|i| self.basis.apply(&k.basis.row(i)[..d]))
            .collect();
        Subspace::span_rows(self.field(), self.ambient, rows)
    }

    /// Image of the subspace under `m`.
    pub fn image(&self, m: &Matrix) -> Subspace {
        Subspace::span(self.field(), m.cols, &self.basis.mul(m))
    }
}

/// Quotient data: `projection` maps the ambient space onto the quotient
/// coordinates and `section` is a right inverse of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub projection: Matrix,
    pub section: Matrix,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.projection.cols
    }
}

/// Quotient of `field^ambient` by `s`, using the non-pivot coordinates as complement.
pub fn quotient(ambient_dim: usize, s: &Subspace) -> Result<Quotient, LaError> {
    if s.ambient != ambient_dim {
        return Err(LaError::DimensionMismatch(format!(
            "subspace of {} in ambient {}",
            s.ambient, ambient_dim
        )));
    }
    let field = s.field();
    let mut is_piv = vec![usize::MAX; ambient_dim];
    for (k, &p) in s.pivots.iter().enumerate() {
        is_piv[p] = k;
    }
    let free: Vec<usize> = (0..ambient_dim).filter(|&j| is_piv[j] == usize::MAX).collect();
    let q = free.len();
    let mut projection = Matrix::zeros(field, ambient_dim, q);
    for (c, &j) in free.iter().enumerate() {
        projection.set(j, c, field.one());
    }
    for (k, &p) in s.pivots.iter().enumerate() {
        for (c, &j) in free.iter().enumerate() {
            let v = s.basis.get(k, j);
            if !v.is_zero() {
                projection.set(p, c, v.neg());
            }
        }
    }
    let mut section = Matrix::zeros(field, q, ambient_dim);
    for (c, &j) in free.iter().enumerate() {
        section.set(c, j, field.one());
    }
    Ok(Quotient { projection, section })
}

/// Solves `x * a = b`; `None` when no solution exists.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>, LaError> {
    if a.cols != b.cols {
        return Err(LaError::DimensionMismatch(format!(
            "x*a=b with a {}x{} and b {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    if a.field != b.field {
        return Err(LaError::FieldMismatch(a.field, b.field));
    }
    let field = a.field;
    let k = a.rows;
    // a^T x^T = b^T
    let aug = Matrix::hstack(field, a.cols, &[&a.transpose(), &b.transpose()]);
    let (r, piv, _) = aug.rref();
    if piv.iter().any(|&p| p >= k) {
        return Ok(None);
    }
    let mut xt = Matrix::zeros(field, k, b.rows);
    for (i, &p) in piv.iter().enumerate() {
        for j in 0..b.rows {
            xt.set(p, j, r.get(i, k + j).clone());
        }
    }
    Ok(Some(xt.transpose()))
}

/// Integer-valued rational, convenience for tests and fixtures.
pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn rref_examples() {
        let (m, p, r) = Matrix::zeros(Q, 0, 0).rref();
        assert_eq!((m.rows(), p, r), (0, vec![], 0));
        let id = Matrix::identity(Q, 3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2], 3));
        let m = Matrix::from_ints(Q, &[vec![2, 4], vec![1, 2]]);
        assert_eq!(m.rref(), (Matrix::from_ints(Q, &[vec![1, 2], vec![0, 0]]), vec![0], 1));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(Q, 3).kernel().dim(), 0);
        assert_eq!(Matrix::zeros(Q, 2, 3).kernel().dim(), 2);
        let k = Matrix::from_ints(Q, &[vec![1, 1], vec![1, 1]]).kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis(), &Matrix::from_ints(Q, &[vec![1, -1]]));
    }

    #[test]
    fn quotient_examples() {
        let q0 = quotient(3, &Subspace::zero(Q, 3)).unwrap();
        assert!(q0.projection.is_identity());
        let qf = quotient(3, &Subspace::full(Q, 3)).unwrap();
        assert_eq!(qf.dim(), 0);
        let s = Subspace::span(Q, 2, &Matrix::from_ints(Q, &[vec![1, 0]]));
        let qs = quotient(2, &s).unwrap();
        assert_eq!(qs.dim(), 1);
        assert!(Matrix::from_ints(Q, &[vec![1, 0]]).mul(&qs.projection).is_zero());
        assert!(qs.section.mul(&qs.projection).is_identity());
        assert!(quotient(3, &s).is_err());
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_ints(Q, &[vec![3, 4]]);
        assert_eq!(solve(&Matrix::identity(Q, 2), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&Matrix::zeros(Q, 2, 2), &b).unwrap(), None);
        let x = solve(&Matrix::from_ints(Q, &[vec![1, 2]]), &Matrix::from_ints(Q, &[vec![2, 4]])).unwrap();
        assert_eq!(x, Some(Matrix::from_ints(Q, &[vec![2]])));
        assert!(solve(&Matrix::identity(Q, 2), &Matrix::identity(Q, 3)).is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let f7 = Field::prime(7).unwrap();
        let r = Matrix::from_rows(Q, 2, vec![vec![Q.one(), f7.one()]]);
        assert!(matches!(r, Err(LaError::FieldMismatch(_, _))));
        assert!(Field::prime(8).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        assert_eq!(a.mul(&a.inv()), f.one());
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(4));
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert_eq!(Q.parse("-6/4").unwrap(), q(-3, 2));
        assert_eq!(q(-3, 2).to_string(), "-3/2");
    }

    #[test]
    fn det_and_inverse() {
        let m = Matrix::from_ints(Q, &[vec![2, 1], vec![7, 4]]);
        assert_eq!(m.det(), Q.one());
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(Matrix::from_ints(Q, &[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::span(Q, 3, &Matrix::from_ints(Q, &[vec![1, 0, 0], vec![0, 1, 0]]));
        let b = Subspace::span(Q, 3, &Matrix::from_ints(Q, &[vec![0, 1, 0], vec![0, 0, 1]]));
        assert_eq!(a.intersection(&b).dim(), 1);
        assert_eq!(a.sum(&b).dim(), 3);
        assert!(a.intersection(&b).contains(&[Q.zero(), Q.one(), Q.zero()]));
    }
}

//! Exact linear algebra over `Q` and prime fields.
//!
//! Fields are values implementing [`Field`]; elements are plain data and all
//! arithmetic goes through the field object, so `F_p` can carry its modulus
//! at runtime. Vectors and matrices are sparse: a [`SparseVec`] is a list of
//! `(index, value)` pairs sorted by index with no stored zeros.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("denominator of {0} is not invertible modulo {1}")]
    NonInvertible(String, u64),
    #[error("unknown field `{0}` (expected Q, Fp or F<prime>)")]
    UnknownField(String),
}

/// A field whose elements are manipulated through the field value.
pub trait Field: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, LinAlgError>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational, LinAlgError> {
        Ok(q.clone())
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn render(&self, a: &BigRational) -> String {
        format_rational(a)
    }
}

/// The prime field `F_p` for a prime `p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinAlgError> {
        if p >= (1 << 32) || !is_prime(p) {
            return Err(LinAlgError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    fn reduce_int(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64, LinAlgError> {
        let den = self.reduce_int(q.denom());
        if den == 0 {
            return Err(LinAlgError::NonInvertible(format_rational(q), self.p));
        }
        Ok(self.mul(&self.reduce_int(q.numer()), &self.inv(&den)))
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_int(&BigInt::from(v))
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `p/q` for non-integers, plain `p` otherwise.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p"` or `"p/q"` into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
    }
}

/// Runtime choice of coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FieldKind {
    #[default]
    Rational,
    Prime(u64),
}

/// Modulus used when a document asks for `Fp` without naming the prime.
pub const DEFAULT_PRIME: u64 = 1_000_003;

impl FromStr for FieldKind {
    type Err = LinAlgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Q" | "q" => Ok(FieldKind::Rational),
            "Fp" | "fp" => Ok(FieldKind::Prime(DEFAULT_PRIME)),
            _ => {
                let p = s
                    .strip_prefix('F')
                    .and_then(|rest| rest.parse::<u64>().ok())
                    .ok_or_else(|| LinAlgError::UnknownField(s.to_string()))?;
                PrimeField::new(p)?;
                Ok(FieldKind::Prime(p))
            }
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Runs `$body` with `$f` bound to the concrete field selected by a [`FieldKind`].
#[macro_export]
macro_rules! with_field {
    ($kind:expr, |$f:ident| $body:expr) => {
        match $kind {
            $crate::exactlin::FieldKind::Rational => {
                let $f = $crate::exactlin::Rationals;
                $body
            }
            $crate::exactlin::FieldKind::Prime(p) => {
                let $f = $crate::exactlin::PrimeField::new(p)
                    .expect("field kinds are validated on construction");
                $body
            }
        }
    };
}

pub type SparseVec<E> = Vec<(usize, E)>;

/// `y += a * x` on sorted sparse vectors.
pub fn axpy<F: Field>(field: &F, y: &SparseVec<F::Elem>, a: &F::Elem, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        if j == x.len() || (i < y.len() && y[i].0 < x[j].0) {
            out.push(y[i].clone());
            i += 1;
        } else if i == y.len() || x[j].0 < y[i].0 {
            let v = field.mul(a, &x[j].1);
            if !field.is_zero(&v) {
                out.push((x[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(&y[i].1, &field.mul(a, &x[j].1));
            if !field.is_zero(&v) {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sorts, merges duplicate indices and drops zeros.
pub fn normalize<F: Field>(field: &F, mut v: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = field.add(acc, &x),
            _ => {
                if let Some((_, acc)) = out.last() {
                    if field.is_zero(acc) {
                        out.pop();
                    }
                }
                out.push((i, x));
            }
        }
    }
    if let Some((_, acc)) = out.last() {
        if field.is_zero(acc) {
            out.pop();
        }
    }
    out
}

pub fn scale<F: Field>(field: &F, a: &F::Elem, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    if field.is_zero(a) {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, field.mul(a, v))).collect()
}

/// Sparse matrix stored row by row.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<E>>,
}

impl<E: Clone + PartialEq + fmt::Debug> Matrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn from_rows<F: Field<Elem = E>>(field: &F, cols: usize, rows: Vec<Vec<(usize, E)>>) -> Self {
        let data: Vec<_> = rows.into_iter().map(|r| normalize(field, r)).collect();
        assert!(data.iter().flatten().all(|(j, _)| *j < cols), "column index out of bounds");
        Self { rows: data.len(), cols, data }
    }

    pub fn from_triples<F, I>(field: &F, rows: usize, cols: usize, triples: I) -> Self
    where
        F: Field<Elem = E>,
        I: IntoIterator<Item = (usize, usize, E)>,
    {
        let mut data = vec![Vec::new(); rows];
        for (i, j, x) in triples {
            assert!(i < rows && j < cols, "entry ({i}, {j}) out of bounds for {rows}x{cols}");
            data[i].push((j, x));
        }
        Self { rows, cols, data: data.into_iter().map(|r| normalize(field, r)).collect() }
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, dense: &[Vec<i64>]) -> Self {
        let cols = dense.first().map_or(0, Vec::len);
        let rows = dense
            .iter()
            .map(|r| r.iter().enumerate().map(|(j, &x)| (j, field.from_i64(x))).collect())
            .collect();
        Self::from_rows(field, cols, rows)
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        Self { rows: n, cols: n, data: (0..n).map(|i| vec![(i, field.one())]).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec<E> {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&E> {
        let row = &self.data[i];
        row.binary_search_by_key(&j, |(c, _)| *c).ok().map(|k| &row[k].1)
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        self.data.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, x)| (i, *j, x)))
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (i, j, x) in self.triples() {
            data[j].push((i, x.clone()));
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    /// Columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseVec<E>> {
        self.transpose().data
    }

    pub fn apply<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> SparseVec<E> {
        let mut out = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = field.zero();
            let (mut a, mut b) = (0, 0);
            while a < row.len() && b < v.len() {
                match row[a].0.cmp(&v[b].0) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        acc = field.add(&acc, &field.mul(&row[a].1, &v[b].1));
                        a += 1;
                        b += 1;
                    }
                }
            }
            if !field.is_zero(&acc) {
                out.push((i, acc));
            }
        }
        out
    }

    /// `self * rhs`.
    pub fn mul<F: Field<Elem = E>>(&self, field: &F, rhs: &Matrix<E>) -> Result<Matrix<E>, LinAlgError> {
        if self.cols != rhs.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: SparseVec<E> = Vec::new();
                for (k, a) in row {
                    acc = axpy(field, &acc, a, &rhs.data[*k]);
                }
                acc
            })
            .collect();
        Ok(Matrix { rows: self.rows, cols: rhs.cols, data })
    }

    /// Keeps the given rows and columns (in the given order), renumbering both.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut col_map = vec![usize::MAX; self.cols];
        for (new, &old) in cols.iter().enumerate() {
            col_map[old] = new;
        }
        let data = rows
            .iter()
            .map(|&r| {
                let mut row: SparseVec<E> = self.data[r]
                    .iter()
                    .filter(|(j, _)| col_map[*j] != usize::MAX)
                    .map(|(j, x)| (col_map[*j], x.clone()))
                    .collect();
                row.sort_by_key(|(j, _)| *j);
                row
            })
            .collect();
        Self { rows: rows.len(), cols: cols.len(), data }
    }
}

/// Incrementally built row-echelon basis. Every stored row has leading coefficient one.
#[derive(Debug, Clone)]
pub struct EchelonBasis<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<SparseVec<F::Elem>>,
    // pivot column -> index into `rows`
    pivot_of: std::collections::HashMap<usize, usize>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: &F, ambient: usize) -> Self {
        Self { field: field.clone(), ambient, rows: Vec::new(), pivot_of: Default::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut v = v.clone();
        let mut pos = 0;
        while pos < v.len() {
            let (col, coef) = (v[pos].0, v[pos].1.clone());
            match self.pivot_of.get(&col) {
                Some(&r) => {
                    v = axpy(&self.field, &v, &self.field.neg(&coef), &self.rows[r]);
                    // entries before `col` are untouched and `col` itself vanished
                    pos = v.partition_point(|(c, _)| *c <= col);
                }
                None => pos += 1,
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> bool {
        let r = self.reduce(v);
        match r.first() {
            None => false,
            Some((col, lead)) => {
                let col = *col;
                let row = scale(&self.field, &self.field.inv(lead), &r);
                self.pivot_of.insert(col, self.rows.len());
                self.rows.push(row);
                true
            }
        }
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_of.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Fully reduced rows sorted by pivot column.
    pub fn reduced_rows(&self) -> Vec<SparseVec<F::Elem>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r][0].0);
        let mut rows: Vec<SparseVec<F::Elem>> = order.iter().map(|&r| self.rows[r].clone()).collect();
        // back substitution from the bottom pivot upwards
        for k in (0..rows.len()).rev() {
            let pivot = rows[k][0].0;
            let pivot_row = rows[k].clone();
            for other in rows.iter_mut().take(k) {
                if let Ok(idx) = other.binary_search_by_key(&pivot, |(c, _)| *c) {
                    let coef = self.field.neg(&other[idx].1);
                    *other = axpy(&self.field, other, &coef, &pivot_row);
                }
            }
        }
        rows
    }
}

/// Reduced row-echelon form of a matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Rref<E> {
    pub matrix: Matrix<E>,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Rref<F::Elem> {
    let mut ech = EchelonBasis::new(field, m.cols());
    for i in 0..m.rows() {
        ech.insert(m.row(i));
    }
    let mut rows = ech.reduced_rows();
    let rank = rows.len();
    let pivot_cols = rows.iter().map(|r| r[0].0).collect();
    rows.resize(m.rows(), Vec::new());
    Rref { matrix: Matrix { rows: m.rows(), cols: m.cols(), data: rows }, rank, pivot_cols }
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut ech = EchelonBasis::new(field, m.cols());
    for i in 0..m.rows() {
        ech.insert(m.row(i));
    }
    ech.rank()
}

/// A linear subspace of `k^ambient`, kept as a reduced echelon basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Vec<SparseVec<E>>,
}

impl<E: Clone + PartialEq + fmt::Debug + Send + Sync> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new() }
    }

    pub fn full<F: Field<Elem = E>>(field: &F, ambient: usize) -> Self {
        Self { ambient, basis: (0..ambient).map(|i| vec![(i, field.one())]).collect() }
    }

    /// Span of arbitrary vectors; dependent ones are dropped.
    pub fn span<F: Field<Elem = E>>(field: &F, ambient: usize, vectors: impl IntoIterator<Item = SparseVec<E>>) -> Self {
        let mut ech = EchelonBasis::new(field, ambient);
        for v in vectors {
            debug_assert!(v.iter().all(|(i, _)| *i < ambient));
            ech.insert(&v);
        }
        Self { ambient, basis: ech.reduced_rows() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<E>] {
        &self.basis
    }

    fn echelon<F: Field<Elem = E>>(&self, field: &F) -> EchelonBasis<F> {
        let mut ech = EchelonBasis::new(field, self.ambient);
        for v in &self.basis {
            ech.insert(v);
        }
        ech
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> bool {
        self.echelon(field).contains(v)
    }

    pub fn contains_subspace<F: Field<Elem = E>>(&self, field: &F, other: &Subspace<E>) -> bool {
        let ech = self.echelon(field);
        other.ambient == self.ambient && other.basis.iter().all(|v| ech.contains(v))
    }

    pub fn sum<F: Field<Elem = E>>(&self, field: &F, other: &Subspace<E>) -> Self {
        assert_eq!(self.ambient, other.ambient, "ambient dimensions differ");
        Self::span(field, self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Image under `m` (a `rows x ambient` matrix).
    pub fn image<F: Field<Elem = E>>(&self, field: &F, m: &Matrix<E>) -> Self {
        assert_eq!(m.cols(), self.ambient, "matrix does not act on this space");
        Self::span(field, m.rows(), self.basis.iter().map(|v| m.apply(field, v)))
    }

    /// Basis vectors of a complement of `sub` inside `self`.
    pub fn complement_basis<F: Field<Elem = E>>(&self, field: &F, sub: &Subspace<E>) -> Vec<SparseVec<E>> {
        let mut ech = sub.echelon(field);
        self.basis.iter().filter(|v| ech.insert(v)).cloned().collect()
    }
}

pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Subspace<F::Elem> {
    let r = rref(field, m);
    let mut is_pivot = vec![false; m.cols()];
    for &c in &r.pivot_cols {
        is_pivot[c] = true;
    }
    let vectors = (0..m.cols()).filter(|&c| !is_pivot[c]).map(|free| {
        let mut v = vec![(free, field.one())];
        for (k, &pc) in r.pivot_cols.iter().enumerate() {
            if let Some(x) = r.matrix.get(k, free) {
                v.push((pc, field.neg(x)));
            }
        }
        v.sort_by_key(|(i, _)| *i);
        v
    });
    Subspace::span(field, m.cols(), vectors)
}

/// `dim Z - dim B`, after checking `B ⊆ Z`.
pub fn subquotient_dim<F: Field>(field: &F, z: &Subspace<F::Elem>, b: &Subspace<F::Elem>) -> Result<usize, LinAlgError> {
    if z.ambient_dim() != b.ambient_dim() {
        return Err(LinAlgError::DimensionMismatch { expected: z.ambient_dim(), found: b.ambient_dim() });
    }
    if !z.contains_subspace(field, b) {
        return Err(LinAlgError::NotContained);
    }
    Ok(z.dim() - b.dim())
}

/// Integer value of a rational, if it is one.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    q.is_integer().then(|| q.numer().to_i64()).flatten()
}

pub fn rational_abs(q: &BigRational) -> BigRational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        Rationals.from_i64(n)
    }

    #[test]
    fn rref_identity() {
        let m = Matrix::identity(&Rationals, 2);
        let r = rref(&Rationals, &m);
        assert_eq!(r.matrix, m);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 1]);
    }

    #[test]
    fn rref_zero_matrix() {
        let m = Matrix::<BigRational>::zeros(3, 4);
        let r = rref(&Rationals, &m);
        assert!(r.matrix.is_zero());
        assert_eq!((r.matrix.rows(), r.matrix.cols()), (3, 4));
        assert_eq!(r.rank, 0);
        assert!(r.pivot_cols.is_empty());
    }

    #[test]
    fn rref_rank_one() {
        let m = Matrix::from_dense(&Rationals, &[vec![1, 2], vec![2, 4]]);
        let r = rref(&Rationals, &m);
        assert_eq!(r.matrix, Matrix::from_dense(&Rationals, &[vec![1, 2], vec![0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
    }

    #[test]
    fn rref_fully_reduces() {
        let m = Matrix::from_dense(&Rationals, &[vec![2, 4, 1], vec![1, 3, 0], vec![0, 1, 5]]);
        let r = rref(&Rationals, &m);
        assert_eq!(r.matrix, Matrix::identity(&Rationals, 3));
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let k = kernel_basis(&Rationals, &Matrix::identity(&Rationals, 3));
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let k = kernel_basis(&Rationals, &Matrix::<BigRational>::zeros(2, 3));
        assert_eq!(k.dim(), 3);
    }

    #[test]
    fn kernel_of_sum_functional() {
        let m = Matrix::from_dense(&Rationals, &[vec![1, 1]]);
        let k = kernel_basis(&Rationals, &m);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&Rationals, &vec![(0, q(1)), (1, q(-1))]));
    }

    #[test]
    fn subquotient_dims() {
        let f = Rationals;
        let full = Subspace::full(&f, 2);
        let zero = Subspace::zero(2);
        assert_eq!(subquotient_dim(&f, &full, &zero), Ok(2));
        assert_eq!(subquotient_dim(&f, &full, &full), Ok(0));
        let diag = Subspace::span(&f, 2, [vec![(0, q(1)), (1, q(1))]]);
        assert_eq!(subquotient_dim(&f, &full, &diag), Ok(1));
        let axis = Subspace::span(&f, 2, [vec![(0, q(1))]]);
        assert_eq!(subquotient_dim(&f, &axis, &diag), Err(LinAlgError::NotContained));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), 5);
        assert_eq!(f.from_rational(&BigRational::new(1.into(), 2.into())).unwrap(), 4);
        assert!(f.from_rational(&BigRational::new(1.into(), 7.into())).is_err());
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn rank_differs_mod_p_only_on_divisors() {
        let m = Matrix::from_dense(&Rationals, &[vec![1, 1], vec![1, -1]]);
        assert_eq!(rank(&Rationals, &m), 2);
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(rank(&f2, &Matrix::from_dense(&f2, &[vec![1, 1], vec![1, -1]])), 1);
    }

    #[test]
    fn field_kind_parsing() {
        assert_eq!("Q".parse::<FieldKind>(), Ok(FieldKind::Rational));
        assert_eq!("F101".parse::<FieldKind>(), Ok(FieldKind::Prime(101)));
        assert_eq!("Fp".parse::<FieldKind>(), Ok(FieldKind::Prime(DEFAULT_PRIME)));
        assert!("F100".parse::<FieldKind>().is_err());
        assert!("R".parse::<FieldKind>().is_err());
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(parse_rational("-6/4").map(|x| format_rational(&x)), Some("-3/2".into()));
        assert_eq!(parse_rational("5").map(|x| format_rational(&x)), Some("5".into()));
        assert_eq!(parse_rational("1/0"), None);
    }
}

//! Sparse coordinate vectors over the eigenbasis `e_1, e_2, ...`, the
//! weighted norms `|x|_p = sqrt(sum lambda_n^{2p} x_n^2)`, the bilinear
//! pairing, and subspaces described by a finite projector block plus a
//! uniform tail flag.
//!
//! Every element that appears in a formula here has finite support, so all
//! norms and pairings are exact finite sums. The truncation dimension is a
//! per-operation parameter elsewhere in the crate, never a global.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::format::{format_f64, parse_complex, parse_f64};

/// Symmetry tolerance for projector blocks.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Idempotence tolerance for projector blocks.
pub const IDEMPOTENCE_TOL: f64 = 1e-10;
/// How far `|v|` may drift from 1 for a hyperplane normal.
pub const UNIT_TOL: f64 = 1e-12;

/// Scalar type stored in a [`SparseVec`]: `f64` or `Complex64`.
pub trait Entry:
    Copy
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
{
    const ZERO: Self;

    fn modulus_sq(self) -> f64;

    fn to_complex(self) -> Complex64;

    fn parse_text(s: &str) -> Result<Self>;

    fn format_text(self) -> String;
}

impl Entry for f64 {
    const ZERO: Self = 0.0;

    fn modulus_sq(self) -> f64 {
        self * self
    }

    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }

    fn parse_text(s: &str) -> Result<Self> {
        parse_f64(s)
    }

    fn format_text(self) -> String {
        format_f64(self)
    }
}

impl Entry for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);

    fn modulus_sq(self) -> f64 {
        self.norm_sqr()
    }

    fn to_complex(self) -> Complex64 {
        self
    }

    fn parse_text(s: &str) -> Result<Self> {
        parse_complex(s)
    }

    fn format_text(self) -> String {
        crate::format::format_complex(self)
    }
}

/// Finite-support sequence `(index, value)` with strictly increasing
/// indices, all `>= 1`, and no stored zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVec<T: Entry> {
    entries: Vec<(usize, T)>,
}

/// Real coordinate vector; an element of the nuclear space or a truncation
/// of a dual element.
pub type CoordVec = SparseVec<f64>;

/// Complexified coordinate vector.
pub type ComplexCoordVec = SparseVec<Complex64>;

impl<T: Entry> Default for SparseVec<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Entry> SparseVec<T> {
    pub fn zero() -> Self {
        Self { entries: Vec::new() }
    }

    /// Builds a vector from `(index, value)` pairs in any order. Exact zeros
    /// are dropped.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, T)>,
    {
        let mut entries: Vec<(usize, T)> = pairs.into_iter().collect();
        entries.sort_by_key(|&(i, _)| i);
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DuplicateIndex(pair[0].0));
            }
        }
        if entries.first().is_some_and(|&(i, _)| i == 0) {
            return Err(Error::ZeroIndex);
        }
        entries.retain(|&(_, v)| v != T::ZERO);
        Ok(Self { entries })
    }

    /// Builds a vector from dense values, `values[k]` landing at index `k + 1`.
    pub fn from_dense(values: &[T]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != T::ZERO)
            .map(|(k, &v)| (k + 1, v))
            .collect();
        Self { entries }
    }

    /// Sorted, already-normalized entries; the caller guarantees the invariants.
    fn from_sorted(mut entries: Vec<(usize, T)>) -> Self {
        entries.retain(|&(_, v)| v != T::ZERO);
        Self { entries }
    }

    /// Unit-scaled basis vector `value * e_index`.
    pub fn basis(index: usize, value: T) -> Result<Self> {
        Self::from_pairs([(index, value)])
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, T)> + '_ {
        self.entries.iter().copied()
    }

    pub fn get(&self, index: usize) -> T {
        self.entries
            .binary_search_by_key(&index, |&(i, _)| i)
            .map(|k| self.entries[k].1)
            .unwrap_or(T::ZERO)
    }

    /// Largest stored index, 0 for the zero vector.
    pub fn max_index(&self) -> usize {
        self.entries.last().map_or(0, |&(i, _)| i)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::from_sorted(self.entries.iter().map(|&(i, v)| (i, v * factor)).collect())
    }

    fn merge_with(&self, other: &Self, op: impl Fn(T, T) -> T) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, x)), Some(&&(j, y))) => {
                    if i == j {
                        out.push((i, op(x, y)));
                        a.next();
                        b.next();
                    } else if i < j {
                        out.push((i, op(x, T::ZERO)));
                        a.next();
                    } else {
                        out.push((j, op(T::ZERO, y)));
                        b.next();
                    }
                }
                (Some(&&(i, x)), None) => {
                    out.push((i, op(x, T::ZERO)));
                    a.next();
                }
                (None, Some(&&(j, y))) => {
                    out.push((j, op(T::ZERO, y)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self::from_sorted(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge_with(other, |x, y| x - y)
    }

    /// Projection onto `span{e_1..e_n}`.
    pub fn truncate(&self, n: usize) -> Self {
        Self { entries: self.entries.iter().copied().filter(|&(i, _)| i <= n).collect() }
    }

    /// Projection onto `span{e_{n+1}, e_{n+2}, ...}`.
    pub fn tail(&self, n: usize) -> Self {
        Self { entries: self.entries.iter().copied().filter(|&(i, _)| i > n).collect() }
    }

    /// First `dim` coordinates as a dense vector.
    pub fn to_dense(&self, dim: usize) -> Vec<T> {
        let mut out = vec![T::ZERO; dim];
        for &(i, v) in self.entries.iter().take_while(|&&(i, _)| i <= dim) {
            out[i - 1] = v;
        }
        out
    }

    pub fn to_complex(&self) -> ComplexCoordVec {
        SparseVec { entries: self.entries.iter().map(|&(i, v)| (i, v.to_complex())).collect() }
    }

    /// Euclidean squared modulus `sum |x_n|^2`.
    pub fn norm0_sq(&self) -> f64 {
        self.entries.iter().map(|&(_, v)| v.modulus_sq()).sum()
    }

    /// Parses `index:value` pairs separated by `;`. The empty string (or `0`)
    /// is the zero vector.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "0" {
            return Ok(Self::zero());
        }
        let pairs = text
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|item| {
                let (idx, val) = item
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("expected index:value, got `{item}`")))?;
                let idx: usize = idx
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coordinate index `{idx}`")))?;
                Ok((idx, T::parse_text(val)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(pairs)
    }
}

impl CoordVec {
    /// The unit vector `e_n`.
    pub fn unit(n: usize) -> Result<Self> {
        Self::basis(n, 1.0)
    }

    pub fn dot(&self, other: &Self) -> f64 {
        let mut acc = 0.0;
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some(&&(i, x)), Some(&&(j, y))) = (a.peek(), b.peek()) {
            match i.cmp(&j) {
                std::cmp::Ordering::Equal => {
                    acc += x * y;
                    a.next();
                    b.next();
                }
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
            }
        }
        acc
    }

    /// Dot product against a dense vector whose entry `k` is coordinate `k + 1`.
    /// Coordinates beyond `dense.len()` contribute nothing.
    pub fn dot_dense(&self, dense: &[f64]) -> f64 {
        self.entries
            .iter()
            .take_while(|&&(i, _)| i <= dense.len())
            .map(|&(i, v)| v * dense[i - 1])
            .sum()
    }
}

impl ComplexCoordVec {
    pub fn real_part(&self) -> CoordVec {
        CoordVec::from_sorted(self.entries.iter().map(|&(i, v)| (i, v.re)).collect())
    }

    pub fn imag_part(&self) -> CoordVec {
        CoordVec::from_sorted(self.entries.iter().map(|&(i, v)| (i, v.im)).collect())
    }

    pub fn scale_complex(&self, factor: Complex64) -> Self {
        Self::from_sorted(self.entries.iter().map(|&(i, v)| (i, v * factor)).collect())
    }

    /// Dense real vector paired bilinearly with `self`.
    pub fn pair_dense(&self, dense: &[f64]) -> Complex64 {
        self.entries
            .iter()
            .take_while(|&&(i, _)| i <= dense.len())
            .map(|&(i, v)| v * dense[i - 1])
            .sum()
    }
}

impl<T: Entry> fmt::Display for SparseVec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(i, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{i}:{}", v.format_text())?;
        }
        Ok(())
    }
}

/// Complex bilinear pairing `sum_n x_n y_n`. Never conjugates: `(i e_1)(i e_1) = -1`.
pub fn pairing<A: Entry, B: Entry>(x: &SparseVec<A>, y: &SparseVec<B>) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let (mut a, mut b) = (x.entries.iter().peekable(), y.entries.iter().peekable());
    while let (Some(&&(i, u)), Some(&&(j, v))) = (a.peek(), b.peek()) {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => {
                acc += u.to_complex() * v.to_complex();
                a.next();
                b.next();
            }
            std::cmp::Ordering::Less => {
                a.next();
            }
            std::cmp::Ordering::Greater => {
                b.next();
            }
        }
    }
    acc
}

/// Spectrum `lambda_n` of the operator that generates the norm tower.
///
/// Every rule must give `lambda_1 > 1` and a strictly increasing sequence.
/// Summability of `lambda_n^{-2}` is assumed, not checked.
#[derive(Clone, Default)]
pub enum EigenSchedule {
    /// `lambda_n = n + 1`.
    #[default]
    Shifted,
    /// `lambda_n = slope * n + intercept`.
    Affine { slope: f64, intercept: f64 },
    /// `lambda_n = scale * (n + 1)^exponent`.
    Power { scale: f64, exponent: f64 },
    Custom(Arc<dyn Fn(usize) -> f64 + Send + Sync>),
}

impl fmt::Debug for EigenSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Shifted => f.write_str("Shifted"),
            Self::Affine { slope, intercept } => {
                f.debug_struct("Affine").field("slope", slope).field("intercept", intercept).finish()
            }
            Self::Power { scale, exponent } => {
                f.debug_struct("Power").field("scale", scale).field("exponent", exponent).finish()
            }
            Self::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl EigenSchedule {
    /// Number of leading eigenvalues checked by [`EigenSchedule::validate`].
    pub const CHECKED_PREFIX: usize = 1024;

    pub fn lambda(&self, n: usize) -> f64 {
        let x = n as f64;
        match self {
            Self::Shifted => x + 1.0,
            Self::Affine { slope, intercept } => slope * x + intercept,
            Self::Power { scale, exponent } => scale * (x + 1.0).powf(*exponent),
            Self::Custom(rule) => rule(n),
        }
    }

    /// Checks `lambda_1 > 1` and strict growth on the first `CHECKED_PREFIX`
    /// indices.
    pub fn validate(&self) -> Result<()> {
        let first = self.lambda(1);
        if !(first > 1.0) {
            return Err(Error::InvalidSchedule(format!("lambda_1 = {first} must exceed 1")));
        }
        let mut prev = first;
        for n in 2..=Self::CHECKED_PREFIX {
            let next = self.lambda(n);
            if !(next > prev) {
                return Err(Error::InvalidSchedule(format!(
                    "not strictly increasing at n = {n} ({prev} -> {next})"
                )));
            }
            prev = next;
        }
        Ok(())
    }

    /// Parses `shifted`, `affine:<slope>,<intercept>` or `power:<scale>,<exponent>`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (name, args) = text.split_once(':').unwrap_or((text, ""));
        let params = || -> Result<(f64, f64)> {
            let (a, b) = args
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("schedule `{name}` needs two parameters")))?;
            Ok((parse_f64(a)?, parse_f64(b)?))
        };
        let schedule = match name {
            "shifted" if args.is_empty() => Self::Shifted,
            "affine" => {
                let (slope, intercept) = params()?;
                Self::Affine { slope, intercept }
            }
            "power" => {
                let (scale, exponent) = params()?;
                Self::Power { scale, exponent }
            }
            _ => return Err(Error::Parse(format!("unknown eigenvalue schedule `{text}`"))),
        };
        schedule.validate()?;
        Ok(schedule)
    }

    /// `sum_n lambda_n^{2p} |x_n|^2` over the stored entries.
    pub fn weighted_sq<T: Entry>(&self, x: &SparseVec<T>, p: i32) -> f64 {
        x.iter().map(|(n, v)| self.lambda(n).powi(2 * p) * v.modulus_sq()).sum()
    }

    /// `sum_{n <= limit} lambda_n^{2p} |x_n|^2`.
    pub fn partial_weighted_sq<T: Entry>(&self, x: &SparseVec<T>, p: i32, limit: usize) -> f64 {
        x.iter()
            .take_while(|&(n, _)| n <= limit)
            .map(|(n, v)| self.lambda(n).powi(2 * p) * v.modulus_sq())
            .sum()
    }

    /// The norm `|x|_p = |A^p x|_0`. Negative `p` gives the dual norms.
    pub fn norm<T: Entry>(&self, x: &SparseVec<T>, p: i32) -> f64 {
        self.weighted_sq(x, p).sqrt()
    }
}

/// `|x|_p` under the default schedule `lambda_n = n + 1`.
pub fn norm_p<T: Entry>(x: &SparseVec<T>, p: i32) -> f64 {
    EigenSchedule::Shifted.norm(x, p)
}

/// Closed subspace `V` of `H_0`: an `m x m` orthogonal projector acting on
/// `e_1..e_m`, and a flag saying whether every `e_n` with `n > m` lies in `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    projector: DMatrix<f64>,
    tail_in: bool,
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

impl Subspace {
    pub fn new(projector: DMatrix<f64>, tail_in: bool) -> Result<Self> {
        let (rows, cols) = projector.shape();
        if rows != cols || rows == 0 {
            return Err(Error::NotSquare { rows, cols });
        }
        let asym = max_abs(&(&projector - projector.transpose()));
        if asym > SYMMETRY_TOL {
            return Err(Error::NotSymmetric(asym));
        }
        let drift = max_abs(&(&projector * &projector - &projector));
        if drift > IDEMPOTENCE_TOL {
            return Err(Error::NotIdempotent(drift));
        }
        Ok(Self { projector, tail_in })
    }

    /// All of `H_0`.
    pub fn whole() -> Self {
        Self { projector: DMatrix::identity(1, 1), tail_in: true }
    }

    /// The zero subspace.
    pub fn trivial() -> Self {
        Self { projector: DMatrix::zeros(1, 1), tail_in: false }
    }

    /// `V_n = span{e_1..e_n}`.
    pub fn coordinate_span(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("coordinate span needs n >= 1".into()));
        }
        Ok(Self { projector: DMatrix::identity(n, n), tail_in: false })
    }

    /// `V_n^perp = span{e_{n+1}, e_{n+2}, ...}`.
    pub fn coordinate_tail(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("coordinate tail needs n >= 1".into()));
        }
        Ok(Self { projector: DMatrix::zeros(n, n), tail_in: true })
    }

    /// Span of finitely many (not necessarily orthonormal) real vectors.
    pub fn span(vectors: &[CoordVec]) -> Result<Self> {
        let m = vectors.iter().map(CoordVec::max_index).max().unwrap_or(0).max(1);
        let mut basis: Vec<nalgebra::DVector<f64>> = Vec::new();
        for v in vectors {
            let mut u = nalgebra::DVector::from_vec(v.to_dense(m));
            // two Gram-Schmidt passes
            for _ in 0..2 {
                for b in &basis {
                    let c = b.dot(&u);
                    u -= b * c;
                }
            }
            let len = u.norm();
            if len > 1e-12 {
                basis.push(u / len);
            }
        }
        let mut projector = DMatrix::zeros(m, m);
        for b in &basis {
            projector += b * b.transpose();
        }
        Self::new(symmetrize(projector), false)
    }

    /// `v^perp` for a unit `v`: block projector `I - v v^T`, tail included.
    pub fn orthogonal_to_unit(v: &CoordVec) -> Result<Self> {
        let len = v.norm0_sq().sqrt();
        if (len - 1.0).abs() > UNIT_TOL {
            return Err(Error::NonUnitVector(len));
        }
        let m = v.max_index();
        let dense = nalgebra::DVector::from_vec(v.to_dense(m));
        let projector = DMatrix::identity(m, m) - &dense * dense.transpose();
        Self::new(symmetrize(projector), true)
    }

    pub fn block_dim(&self) -> usize {
        self.projector.nrows()
    }

    pub fn projector(&self) -> &DMatrix<f64> {
        &self.projector
    }

    pub fn tail_in(&self) -> bool {
        self.tail_in
    }

    /// Orthogonal complement in `H_0`.
    pub fn complement(&self) -> Self {
        let m = self.block_dim();
        Self { projector: DMatrix::identity(m, m) - &self.projector, tail_in: !self.tail_in }
    }

    /// The projector on `e_1..e_dim` for `dim >= block_dim`.
    pub fn projector_at(&self, dim: usize) -> DMatrix<f64> {
        let m = self.block_dim();
        assert!(dim >= m, "projector_at({dim}) below block dimension {m}");
        let mut out = DMatrix::zeros(dim, dim);
        out.view_mut((0, 0), (m, m)).copy_from(&self.projector);
        if self.tail_in {
            for k in m..dim {
                out[(k, k)] = 1.0;
            }
        }
        out
    }

    /// The same subspace described with a larger block.
    pub fn embed(&self, dim: usize) -> Self {
        if dim <= self.block_dim() {
            return self.clone();
        }
        Self { projector: self.projector_at(dim), tail_in: self.tail_in }
    }

    /// Largest violation of `P_sub P_self = P_sub` (0 when `sub` is a
    /// subspace of `self`), with `f64::INFINITY` for a tail mismatch.
    pub fn containment_defect(&self, sub: &Subspace) -> f64 {
        if sub.tail_in && !self.tail_in {
            return f64::INFINITY;
        }
        let dim = self.block_dim().max(sub.block_dim());
        let outer = self.projector_at(dim);
        let inner = sub.projector_at(dim);
        max_abs(&(&inner * &outer - &inner))
    }

    /// The orthogonal complement of `sub` inside `self`, i.e. `self ⊖ sub`.
    pub fn complement_within(&self, sub: &Subspace) -> Result<Self> {
        let defect = self.containment_defect(sub);
        if defect > IDEMPOTENCE_TOL {
            return Err(Error::NotContained(defect));
        }
        let dim = self.block_dim().max(sub.block_dim());
        let projector = self.projector_at(dim) - sub.projector_at(dim);
        Self::new(symmetrize(projector), self.tail_in && !sub.tail_in)
    }

    /// Splits `y` into its components in `V` and `V^perp`.
    pub fn split<T: Entry>(&self, y: &SparseVec<T>) -> (SparseVec<T>, SparseVec<T>) {
        let m = self.block_dim();
        let block = y.to_dense(m);
        let mut inside = Vec::with_capacity(m);
        let mut outside = Vec::with_capacity(m);
        for r in 0..m {
            let mut acc = T::ZERO;
            for (c, &v) in block.iter().enumerate() {
                let p = self.projector[(r, c)];
                if p != 0.0 {
                    acc = acc + v * p;
                }
            }
            inside.push((r + 1, acc));
            outside.push((r + 1, block[r] - acc));
        }
        let tail = y.tail(m);
        let (inside_tail, outside_tail) = if self.tail_in { (tail, SparseVec::zero()) } else { (SparseVec::zero(), tail) };
        inside.extend(inside_tail.iter());
        outside.extend(outside_tail.iter());
        (SparseVec::from_sorted(inside), SparseVec::from_sorted(outside))
    }
}

fn symmetrize(m: DMatrix<f64>) -> DMatrix<f64> {
    (&m + m.transpose()) * 0.5
}

/// Affine subspace `a + V`, the carrier of the Gaussian measure `mu_{a+V}`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSubspace {
    anchor: CoordVec,
    subspace: Subspace,
}

impl AffineSubspace {
    /// Requires the anchor support to lie inside the projector block.
    pub fn new(anchor: CoordVec, subspace: Subspace) -> Result<Self> {
        let idx = anchor.max_index();
        if idx > subspace.block_dim() {
            return Err(Error::AnchorOutsideBlock { index: idx, block_dim: subspace.block_dim() });
        }
        Ok(Self { anchor, subspace })
    }

    /// Like [`AffineSubspace::new`], enlarging the block to cover the anchor.
    pub fn with_anchor(anchor: CoordVec, subspace: &Subspace) -> Self {
        let dim = anchor.max_index().max(subspace.block_dim());
        Self { anchor, subspace: subspace.embed(dim) }
    }

    /// The linear subspace `V` itself (anchor 0).
    pub fn linear(subspace: Subspace) -> Self {
        Self { anchor: CoordVec::zero(), subspace }
    }

    pub fn anchor(&self) -> &CoordVec {
        &self.anchor
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn block_dim(&self) -> usize {
        self.subspace.block_dim()
    }

    pub fn tail_in(&self) -> bool {
        self.subspace.tail_in()
    }
}

/// `(y_V, y_{V^perp})` for the direction space of `a + V`.
pub fn project_affine<T: Entry>(y: &SparseVec<T>, space: &AffineSubspace) -> (SparseVec<T>, SparseVec<T>) {
    space.subspace.split(y)
}

/// Hyperplane `alpha v + v^perp` with a finitely supported unit normal.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    alpha: f64,
    normal: CoordVec,
}

impl Hyperplane {
    pub fn new(alpha: f64, normal: CoordVec) -> Result<Self> {
        let len = normal.norm0_sq().sqrt();
        if (len - 1.0).abs() > UNIT_TOL {
            return Err(Error::NonUnitVector(len));
        }
        Ok(Self { alpha, normal })
    }

    /// Rescales `direction` to unit length first.
    pub fn normalized(alpha: f64, direction: &CoordVec) -> Result<Self> {
        let len = direction.norm0_sq().sqrt();
        if len == 0.0 || !len.is_finite() {
            return Err(Error::NonUnitVector(len));
        }
        Self::new(alpha, direction.scale(1.0 / len))
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn normal(&self) -> &CoordVec {
        &self.normal
    }

    pub fn to_affine(&self) -> AffineSubspace {
        let subspace = Subspace::orthogonal_to_unit(&self.normal).expect("normal checked at construction");
        AffineSubspace { anchor: self.normal.scale(self.alpha), subspace }
    }
}

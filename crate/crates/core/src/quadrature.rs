//! Gauss rules for the standard normal weight and for Lebesgue measure on
//! `[-1, 1]`, plus a deterministic product rule over several dimensions.
//!
//! Nodes come from the Jacobi matrix eigenvalues (Golub-Welsch) and are
//! polished by Newton steps on the three-term recurrence. Weights use the
//! Christoffel form `1 / sum_k p_k(x)^2` with orthonormal `p_k`, evaluated
//! through normalized Hermite *functions* so nothing overflows for large
//! node counts.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
const NEWTON_STEPS: usize = 3;

/// `psi_0..psi_{n-1}` at `x`, where `psi_k = He_k(x) e^{-x^2/4} / sqrt(k! sqrt(2 pi))`
/// are orthonormal in `L^2(R, dx)`.
pub(crate) fn hermite_functions(n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let psi0 = INV_SQRT_2PI.sqrt() * (-0.25 * x * x).exp();
    out.push(psi0);
    if n == 1 {
        return out;
    }
    out.push(x * psi0);
    for k in 1..n - 1 {
        let next = (x * out[k] - (k as f64).sqrt() * out[k - 1]) / ((k + 1) as f64).sqrt();
        out.push(next);
    }
    out
}

fn jacobi_nodes(off_diagonal: impl Fn(usize) -> f64, n: usize) -> Vec<f64> {
    let mut jacobi = DMatrix::zeros(n, n);
    for k in 1..n {
        let b = off_diagonal(k);
        jacobi[(k - 1, k)] = b;
        jacobi[(k, k - 1)] = b;
    }
    let mut nodes: Vec<f64> = SymmetricEigen::new(jacobi).eigenvalues.iter().copied().collect();
    nodes.sort_by(f64::total_cmp);
    nodes
}

/// Gauss-Hermite rule for `E[f(Z)]`, `Z ~ N(0, 1)` (weight `e^{-t^2/2}/sqrt(2 pi)`).
#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermite {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    lebesgue_weights: Vec<f64>,
}

impl GaussHermite {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("quadrature needs at least one node".into()));
        }
        let mut nodes = jacobi_nodes(|k| (k as f64).sqrt(), n);
        for x in nodes.iter_mut() {
            for _ in 0..NEWTON_STEPS {
                let psi = hermite_functions(n + 1, *x);
                let value = psi[n];
                let slope = (n as f64).sqrt() * psi[n - 1] - 0.5 * *x * value;
                if slope != 0.0 {
                    *x -= value / slope;
                }
            }
        }
        // symmetry of the rule is exact in theory; enforce it
        for k in 0..n / 2 {
            let m = 0.5 * (nodes[n - 1 - k] - nodes[k]);
            nodes[k] = -m;
            nodes[n - 1 - k] = m;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        let lebesgue_weights: Vec<f64> = nodes
            .iter()
            .map(|&x| 1.0 / hermite_functions(n, x).iter().map(|p| p * p).sum::<f64>())
            .collect();
        let weights = nodes
            .iter()
            .zip(&lebesgue_weights)
            .map(|(&x, &l)| l * INV_SQRT_2PI * (-0.5 * x * x).exp())
            .collect();
        Ok(Self { nodes, weights, lebesgue_weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Weights against the standard normal density.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weights for `∫ g(t) dt` when `g(t) e^{t^2/2}` is polynomial-like.
    pub fn lebesgue_weights(&self) -> &[f64] {
        &self.lebesgue_weights
    }

    /// `E[f(Z)]` for a standard normal `Z`.
    pub fn expect(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// `∫ g(t) dt` using the Lebesgue-form weights.
    pub fn integrate_lebesgue(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.lebesgue_weights).map(|(&x, &w)| w * g(x)).sum()
    }
}

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Orthonormal Legendre polynomials `sqrt(k + 1/2) P_k(x)` for `k < n`.
fn legendre_orthonormal(n: usize, x: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(n);
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        p.push(cur * (k as f64 + 0.5).sqrt());
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    p
}

impl GaussLegendre {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("quadrature needs at least one node".into()));
        }
        let mut nodes = jacobi_nodes(|k| k as f64 / ((4 * k * k - 1) as f64).sqrt(), n);
        for x in nodes.iter_mut() {
            for _ in 0..NEWTON_STEPS {
                let (mut prev, mut cur) = (1.0, *x);
                for k in 1..n {
                    let kf = k as f64;
                    let next = ((2.0 * kf + 1.0) * *x * cur - kf * prev) / (kf + 1.0);
                    prev = cur;
                    cur = next;
                }
                // cur = P_n, prev = P_{n-1}
                let denom = *x * *x - 1.0;
                if denom != 0.0 {
                    let slope = n as f64 * (*x * cur - prev) / denom;
                    if slope != 0.0 {
                        *x -= cur / slope;
                    }
                }
            }
        }
        for k in 0..n / 2 {
            let m = 0.5 * (nodes[n - 1 - k] - nodes[k]);
            nodes[k] = -m;
            nodes[n - 1 - k] = m;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        let weights =
            nodes.iter().map(|&x| 1.0 / legendre_orthonormal(n, x).iter().map(|p| p * p).sum::<f64>()).collect();
        Ok(Self { nodes, weights })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫_a^b f(t) dt`.
    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(mid + half * x)).sum::<f64>()
    }
}

/// Number of Gauss-Hermite nodes per dimension for product rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    pub nodes_per_dim: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { nodes_per_dim: 40 }
    }
}

impl QuadratureSpec {
    /// Largest number of dimensions a product rule may span.
    pub const MAX_DIMS: usize = 6;

    pub fn new(nodes_per_dim: usize) -> Result<Self> {
        if nodes_per_dim == 0 {
            return Err(Error::InvalidArgument("nodes_per_dim must be >= 1".into()));
        }
        Ok(Self { nodes_per_dim })
    }

    pub fn rule(&self) -> Result<GaussHermite> {
        GaussHermite::new(self.nodes_per_dim)
    }

    /// `E[f(Z)]` for `Z ~ N(0, I_dims)` by the tensor-product rule. The sum
    /// runs over fixed-size chunks of node tuples and the chunk totals are
    /// added in order, so the result does not depend on the thread count.
    pub fn expect_nd<F>(&self, dims: usize, f: F) -> Result<(Complex64, u64)>
    where
        F: Fn(&[f64]) -> Complex64 + Sync,
    {
        if dims > Self::MAX_DIMS {
            return Err(Error::TooManyQuadratureDims { dims, max: Self::MAX_DIMS });
        }
        if dims == 0 {
            return Ok((f(&[]), 1));
        }
        let rule = self.rule()?;
        let n = rule.len();
        let total = n.pow(dims as u32);
        const CHUNK: usize = 4096;
        let chunks = total.div_ceil(CHUNK);
        let partial: Vec<Complex64> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut point = vec![0.0; dims];
                let mut acc = Complex64::new(0.0, 0.0);
                for flat in c * CHUNK..((c + 1) * CHUNK).min(total) {
                    let mut rest = flat;
                    let mut weight = 1.0;
                    for slot in point.iter_mut() {
                        let k = rest % n;
                        rest /= n;
                        *slot = rule.nodes[k];
                        weight *= rule.weights[k];
                    }
                    acc += f(&point) * weight;
                }
                acc
            })
            .collect();
        Ok((partial.into_iter().sum(), total as u64))
    }
}

#![allow(dead_code)]

use gaussradon::{ComplexCoordVec, CoordVec};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn e(n: usize) -> CoordVec {
    CoordVec::unit(n).unwrap()
}

pub fn ce(n: usize, re: f64, im: f64) -> ComplexCoordVec {
    ComplexCoordVec::basis(n, Complex64::new(re, im)).unwrap()
}

/// Dense random vector on `{1..dim}` with entries in `[-scale, scale]`.
pub fn random_dense(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> Vec<f64> {
    (0..dim).map(|_| rng.random_range(-scale..scale)).collect()
}

pub fn random_vec(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> CoordVec {
    CoordVec::from_dense(&random_dense(rng, dim, scale))
}

pub fn random_complex_vec(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> ComplexCoordVec {
    let v: Vec<Complex64> =
        (0..dim).map(|_| Complex64::new(rng.random_range(-scale..scale), rng.random_range(-scale..scale))).collect();
    ComplexCoordVec::from_dense(&v)
}

/// Unit vector on `{1..dim}`.
pub fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v = random_dense(rng, dim, 1.0);
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 {
            return v.iter().map(|x| x / n).collect();
        }
    }
}

pub fn dense_dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `sum a_k b_k` with complex `b`, the bilinear pairing on dense arrays.
pub fn dense_pair(a: &[f64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| y * *x).sum()
}

/// Hyperplane transform of `c_w` written out directly:
/// `exp(alpha <v,w> - <w,v>^2 / 2)`.
pub fn hyperplane_oracle(w: &[Complex64], alpha: f64, v: &[f64]) -> Complex64 {
    let vw = dense_pair(v, w);
    (alpha * vw - 0.5 * vw * vw).exp()
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

/// Composite Simpson rule with `2 * half_panels` panels on `[a, b]`.
pub fn simpson(a: f64, b: f64, half_panels: usize, f: impl Fn(f64) -> f64) -> f64 {
    let n = 2 * half_panels;
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + k as f64 * h);
    }
    sum * h / 3.0
}

/// Adaptive Simpson on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(a: f64, b: f64, tol: f64, f: &impl Fn(f64) -> f64) -> f64 {
    fn step(f: &impl Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    step(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50)
}

//! The Gauss-Radon transform `G_phi(a + V) = ∫ phi dmu_{a+V}` by three
//! independent routes, the disintegration across `V = S ⊕ S'`, and the
//! tower integrals `f_n(x) = ∫ phi(x_n + y) dmu_{V_n^perp}(y)`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::coord::{pairing, AffineSubspace, CoordVec, Hyperplane, Subspace, UNIT_TOL};
use crate::error::{Error, Result};
use crate::functional::ExponentialFunctional;
use crate::gaussian::{s_transform_delta, GaussianSampler};
use crate::quadrature::QuadratureSpec;
use crate::sampling::{monte_carlo_mean, ROUNDING_SLACK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Closed,
    MonteCarlo,
    Quadrature,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::MonteCarlo => "mc",
            Method::Quadrature => "quad",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "closed" => Ok(Method::Closed),
            "mc" => Ok(Method::MonteCarlo),
            "quad" => Ok(Method::Quadrature),
            other => Err(Error::Parse(format!("unknown method `{other}` (closed|mc|quad)"))),
        }
    }
}

/// Transform value with its uncertainty. `stderr` is 0 for the closed form
/// and for quadrature; for Monte Carlo it is the standard error of the
/// complex mean, `hypot(se_re, se_im)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformResult {
    pub value: Complex64,
    pub stderr: f64,
    pub method: Method,
    pub samples_or_nodes: u64,
}

impl TransformResult {
    fn closed(value: Complex64) -> Self {
        Self { value, stderr: 0.0, method: Method::Closed, samples_or_nodes: 0 }
    }

    /// Whether `target` is within `sigmas` standard errors of this estimate,
    /// plus [`ROUNDING_SLACK`] relative to `|target|`.
    pub fn agrees_with(&self, target: Complex64, sigmas: f64) -> bool {
        (self.value - target).norm() <= sigmas * self.stderr + ROUNDING_SLACK * target.norm()
    }
}

/// Closed form on the exponential span:
/// `G_{c_w}(a + V) = exp(<a,w> - <w_{V^perp}, w_{V^perp}>/2)`,
/// which for `alpha v + v^perp` is `exp(alpha <v,w> - <w,v>^2/2)`.
pub fn radon_closed(phi: &ExponentialFunctional, space: &AffineSubspace) -> TransformResult {
    let value = phi.terms().iter().map(|t| t.coeff * s_transform_delta(space, &t.w)).sum();
    TransformResult::closed(value)
}

fn require_cover(needed: usize, truncation_dim: usize) -> Result<()> {
    if needed > truncation_dim {
        return Err(Error::TruncationTooSmall { needed, got: truncation_dim });
    }
    Ok(())
}

/// Sample mean of `phi` under `mu_{a+V}` restricted to the first
/// `truncation_dim` coordinates.
pub fn radon_mc(
    phi: &ExponentialFunctional,
    space: &AffineSubspace,
    truncation_dim: usize,
    count: u64,
    seed: u64,
) -> Result<TransformResult> {
    require_cover(phi.max_index(), truncation_dim)?;
    if count == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    let sampler = GaussianSampler::new(space.clone(), truncation_dim, seed)?;
    let est = monte_carlo_mean(count, |i| {
        let x = sampler.draw(i);
        phi.evaluate_dense(&x)
    });
    Ok(TransformResult { value: est.mean, stderr: est.stderr(), method: Method::MonteCarlo, samples_or_nodes: count })
}

/// Orthonormal completion of a unit `v` in `R^n`: the columns of the
/// Householder reflection that maps `e_1` to `v`. Column 0 is `v`.
pub fn householder_frame(v: &[f64]) -> DMatrix<f64> {
    let n = v.len();
    let mut u = DVector::from_column_slice(v);
    u[0] -= 1.0;
    let uu = u.dot(&u);
    if uu < 1e-30 {
        return DMatrix::identity(n, n);
    }
    DMatrix::identity(n, n) - (&u * u.transpose()) * (2.0 / uu)
}

/// `∫ F dmu_{alpha v + v^perp}` on `R^n` by the `(n-1)`-dimensional product
/// Gauss-Hermite rule along an orthonormal frame of `v^perp`.
pub fn radon_rn_quadrature<F>(f: F, alpha: f64, v: &[f64], spec: &QuadratureSpec) -> Result<TransformResult>
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    let n = v.len();
    if n == 0 {
        return Err(Error::InvalidArgument("direction must have at least one coordinate".into()));
    }
    let len = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (len - 1.0).abs() > UNIT_TOL {
        return Err(Error::NonUnitVector(len));
    }
    let frame = householder_frame(v);
    let (value, nodes) = spec.expect_nd(n - 1, |t| {
        let mut x: Vec<f64> = v.iter().map(|vi| alpha * vi).collect();
        for (j, &tj) in t.iter().enumerate() {
            for (i, xi) in x.iter_mut().enumerate() {
                *xi += tj * frame[(i, j + 1)];
            }
        }
        f(&x)
    })?;
    Ok(TransformResult { value, stderr: 0.0, method: Method::Quadrature, samples_or_nodes: nodes })
}

/// The quadrature route for a test function: `phi` depends only on the
/// first `n` coordinates (`n` covering `phi` and the normal), so the
/// transform reduces to `R^n`.
pub fn radon_quadrature(
    phi: &ExponentialFunctional,
    plane: &Hyperplane,
    spec: &QuadratureSpec,
) -> Result<TransformResult> {
    let n = phi.max_index().max(plane.normal().max_index()).max(1);
    let v = plane.normal().to_dense(n);
    radon_rn_quadrature(|x| phi.evaluate_dense(x), plane.alpha(), &v, spec)
}

/// `∫∫ phi(x + y) dmu_{a+S}(x) dmu_{S'}(y)` with `S' = V ⊖ S`.
///
/// The inner integral is taken in closed form: `T_y phi` integrated
/// against `mu_{a+S}` leaves `sum_k coeff_k e^{<a,w_k> - |(w_k)_{S^perp}|^2/2} e^{<y,w_k>}`.
/// The outer integral over `y` is a Monte Carlo mean.
pub fn disintegrate_eval(
    phi: &ExponentialFunctional,
    space: &AffineSubspace,
    inner: &Subspace,
    truncation_dim: usize,
    count: u64,
    seed: u64,
) -> Result<TransformResult> {
    let outer = space.subspace().complement_within(inner)?;
    let inner_space = AffineSubspace::with_anchor(space.anchor().clone(), inner);
    require_cover(phi.max_index().max(outer.block_dim()), truncation_dim)?;
    if count == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    let weights: Vec<(Complex64, _)> = phi
        .terms()
        .iter()
        .map(|t| (t.coeff * s_transform_delta(&inner_space, &t.w), &t.w))
        .collect();
    let sampler = GaussianSampler::new(AffineSubspace::linear(outer), truncation_dim, seed)?;
    let est = monte_carlo_mean(count, |i| {
        let y = sampler.draw(i);
        weights.iter().map(|(c, w)| c * w.pair_dense(&y).exp()).sum()
    });
    Ok(TransformResult { value: est.mean, stderr: est.stderr(), method: Method::MonteCarlo, samples_or_nodes: count })
}

/// `f_n(x_n) = ∫ phi(x_n + y) dmu_{V_n^perp}(y)` where `x_n` keeps the first
/// `n` coordinates of `x`:
/// `sum_k coeff_k exp(<x_n, w_k> - <w_k,w_k>/2 + <(w_k)_{>n}, (w_k)_{>n}>/2)`.
pub fn f_n_eval(phi: &ExponentialFunctional, x: &CoordVec, n: usize) -> Complex64 {
    let x_n = x.truncate(n);
    phi.terms()
        .iter()
        .map(|t| {
            let tail = t.w.tail(n);
            t.coeff * (pairing(&x_n, &t.w) - 0.5 * pairing(&t.w, &t.w) + 0.5 * pairing(&tail, &tail)).exp()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize) -> CoordVec {
        CoordVec::unit(n).unwrap()
    }

    fn c(w: &CoordVec) -> ExponentialFunctional {
        ExponentialFunctional::real_exponential(w)
    }

    fn one() -> ExponentialFunctional {
        ExponentialFunctional::constant(Complex64::new(1.0, 0.0))
    }

    fn near(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn closed_examples() {
        let plane = Hyperplane::new(1.0, e(1)).unwrap().to_affine();
        let r = radon_closed(&c(&e(1)), &plane);
        assert!(near(r.value, Complex64::new(0.5f64.exp(), 0.0), 1e-15));
        assert_eq!(r.stderr, 0.0);
        assert_eq!(r.method, Method::Closed);
        assert!(near(radon_closed(&c(&e(2)), &plane).value, Complex64::new(1.0, 0.0), 1e-15));
        let weird = AffineSubspace::new(e(2).scale(-3.0), Subspace::coordinate_span(2).unwrap()).unwrap();
        assert_eq!(radon_closed(&one(), &weird).value, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn mc_constant_is_exact() {
        let plane = Hyperplane::new(0.3, e(2)).unwrap().to_affine();
        let r = radon_mc(&one(), &plane, 4, 1000, 5).unwrap();
        assert_eq!(r.value, Complex64::new(1.0, 0.0));
        assert_eq!(r.stderr, 0.0);
        assert_eq!(r.samples_or_nodes, 1000);
    }

    #[test]
    fn mc_requires_cover() {
        let plane = Hyperplane::new(0.3, e(1)).unwrap().to_affine();
        assert!(matches!(
            radon_mc(&c(&e(5)), &plane, 3, 10, 0),
            Err(Error::TruncationTooSmall { needed: 5, got: 3 })
        ));
    }

    #[test]
    fn quadrature_examples() {
        let spec = QuadratureSpec::default();
        let v = [0.6, 0.0, 0.8];
        let r = radon_rn_quadrature(|_| Complex64::new(1.0, 0.0), 0.7, &v, &spec).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-12);
        assert_eq!(r.samples_or_nodes, 1600);
        let r = radon_rn_quadrature(|x| Complex64::new(x[0] * v[0] + x[2] * v[2], 0.0), 0.7, &v, &spec).unwrap();
        assert!((r.value.re - 0.7).abs() < 1e-12);
        assert!(matches!(
            radon_rn_quadrature(|_| Complex64::new(1.0, 0.0), 0.0, &[1.0, 1.0], &spec),
            Err(Error::NonUnitVector(_))
        ));
    }

    #[test]
    fn householder_is_orthonormal() {
        let v = [0.48, -0.6, 0.64];
        let h = householder_frame(&v);
        let err = (&h * h.transpose() - DMatrix::<f64>::identity(3, 3)).abs().max();
        assert!(err < 1e-15);
        for i in 0..3 {
            assert!((h[(i, 0)] - v[i]).abs() < 1e-15);
        }
        assert_eq!(householder_frame(&[1.0, 0.0]), DMatrix::identity(2, 2));
    }

    #[test]
    fn disintegration_constant_and_containment() {
        let plane = Hyperplane::new(1.0, e(1)).unwrap().to_affine();
        let s = Subspace::span(&[e(2)]).unwrap();
        let r = disintegrate_eval(&one(), &plane, &s, 6, 500, 1).unwrap();
        assert_eq!(r.value, Complex64::new(1.0, 0.0));
        let bad = Subspace::span(&[e(1)]).unwrap();
        assert!(matches!(disintegrate_eval(&one(), &plane, &bad, 6, 500, 1), Err(Error::NotContained(_))));
    }

    #[test]
    fn tower_examples() {
        let phi = c(&e(2));
        let x = e(2).scale(3.0);
        assert!(near(f_n_eval(&phi, &x, 1), Complex64::new(1.0, 0.0), 1e-15));
        assert!(near(f_n_eval(&phi, &x, 2), Complex64::new(2.5f64.exp(), 0.0), 1e-15));
        assert!(near(f_n_eval(&phi, &x, 2), phi.evaluate(&x), 1e-15));
    }

    #[test]
    fn method_text() {
        for m in [Method::Closed, Method::MonteCarlo, Method::Quadrature] {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("other".parse::<Method>().is_err());
    }
}

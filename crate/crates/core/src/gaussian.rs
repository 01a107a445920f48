//! Gaussian measures `mu_{a+V}` on affine subspaces: characteristic
//! functionals, exact sampling of a finite coordinate window, the
//! translation density of the white-noise measure, the S-transform of the
//! delta function `delta_{a+V}`, and Monte Carlo mass of dual-norm balls.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::coord::{pairing, project_affine, AffineSubspace, CoordVec, ComplexCoordVec, EigenSchedule, Subspace};
use crate::error::{Error, Result};
use crate::sampling::{count_hits, fill_standard_normal};

/// Eigenvalues of the projector below this are treated as zero.
pub const RANK_CLAMP: f64 = 1e-12;

/// `∫ e^{i<x,y>} dmu_{a+V}(x) = exp(i<a,y> - <y_V, y_V>/2)`.
pub fn char_fn(space: &AffineSubspace, y: &CoordVec) -> Complex64 {
    let (y_v, _) = project_affine(y, space);
    let phase = space.anchor().dot(y);
    Complex64::new(-0.5 * y_v.norm0_sq(), phase).exp()
}

/// `S(delta_{a+V})(z) = exp(<a,z> - <z_{V^perp}, z_{V^perp}>/2)`, bilinear in `z`.
pub fn s_transform_delta(space: &AffineSubspace, z: &ComplexCoordVec) -> Complex64 {
    let (_, z_perp) = project_affine(z, space);
    (pairing(space.anchor(), z) - 0.5 * pairing(&z_perp, &z_perp)).exp()
}

/// Radon-Nikodym derivative `dmu(. - xi)/dmu` at `x`: `exp(<x,xi> - <xi,xi>/2)`.
pub fn translate_density(x: &CoordVec, xi: &CoordVec) -> f64 {
    (x.dot(xi) - 0.5 * xi.dot(xi)).exp()
}

/// Same as [`translate_density`] with `x` given as dense leading coordinates.
pub fn translate_density_dense(x: &[f64], xi: &CoordVec) -> f64 {
    (xi.dot_dense(x) - 0.5 * xi.dot(xi)).exp()
}

/// Draws the first `truncation_dim` coordinates of `mu_{a+V}`.
///
/// The block part is `a + F g` with `F F^T = P` and `g` a standard normal
/// vector of length `rank P`; coordinates past the block are independent
/// standard normals when the tail lies in `V`, zero otherwise.
#[derive(Debug, Clone)]
pub struct GaussianSampler {
    space: AffineSubspace,
    truncation_dim: usize,
    seed: u64,
    factor: DMatrix<f64>,
    anchor: Vec<f64>,
}

impl GaussianSampler {
    pub fn new(space: AffineSubspace, truncation_dim: usize, seed: u64) -> Result<Self> {
        let m = space.block_dim();
        if truncation_dim < m {
            return Err(Error::TruncationTooSmall { needed: m, got: truncation_dim });
        }
        let factor = projector_factor(space.subspace());
        let anchor = space.anchor().to_dense(m);
        Ok(Self { space, truncation_dim, seed, factor, anchor })
    }

    pub fn space(&self) -> &AffineSubspace {
        &self.space
    }

    pub fn truncation_dim(&self) -> usize {
        self.truncation_dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `m x r` factor of the block projector.
    pub fn factor(&self) -> &DMatrix<f64> {
        &self.factor
    }

    fn gaussian_count(&self) -> usize {
        let tail = if self.space.tail_in() { self.truncation_dim - self.space.block_dim() } else { 0 };
        self.factor.ncols() + tail
    }

    /// Sample number `index`, written into `out` (length `truncation_dim`).
    pub fn draw_into(&self, index: u64, normals: &mut Vec<f64>, out: &mut [f64]) {
        debug_assert_eq!(out.len(), self.truncation_dim);
        normals.resize(self.gaussian_count(), 0.0);
        fill_standard_normal(self.seed, index, normals);
        let m = self.space.block_dim();
        let r = self.factor.ncols();
        for (row, slot) in out[..m].iter_mut().enumerate() {
            let mut acc = self.anchor[row];
            for (col, g) in normals[..r].iter().enumerate() {
                acc += self.factor[(row, col)] * g;
            }
            *slot = acc;
        }
        if self.space.tail_in() {
            out[m..].copy_from_slice(&normals[r..]);
        } else {
            out[m..].fill(0.0);
        }
    }

    pub fn draw(&self, index: u64) -> Vec<f64> {
        let mut out = vec![0.0; self.truncation_dim];
        let mut normals = Vec::new();
        self.draw_into(index, &mut normals, &mut out);
        out
    }

    /// Draws samples `0..count`, row-major.
    pub fn sample_block(&self, count: usize) -> SampleBlock {
        let dim = self.truncation_dim;
        let mut data = vec![0.0; count * dim];
        if dim > 0 {
            data.par_chunks_mut(dim).enumerate().for_each_init(Vec::new, |normals, (i, row)| {
                self.draw_into(i as u64, normals, row);
            });
        }
        SampleBlock { dim, data }
    }
}

/// Rank-revealing symmetric square root of the block projector.
pub fn projector_factor(subspace: &Subspace) -> DMatrix<f64> {
    let eig = SymmetricEigen::new(subspace.projector().clone());
    let keep: Vec<usize> = (0..eig.eigenvalues.len()).filter(|&k| eig.eigenvalues[k] > RANK_CLAMP).collect();
    let m = subspace.block_dim();
    let mut factor = DMatrix::zeros(m, keep.len());
    for (col, &k) in keep.iter().enumerate() {
        let scaled: DVector<f64> = eig.eigenvectors.column(k) * eig.eigenvalues[k].sqrt();
        factor.set_column(col, &scaled);
    }
    factor
}

/// `count x dim` sample matrix stored row by row.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBlock {
    dim: usize,
    data: Vec<f64>,
}

impl SampleBlock {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self) -> usize {
        if self.dim == 0 {
            0
        } else {
            self.data.len() / self.dim
        }
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.dim.max(1))
    }
}

/// Closed ball `{x : |x - y|_{-p} <= r}` in the dual space `H_p'`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualBall {
    p: u32,
    center: CoordVec,
    radius: f64,
}

impl DualBall {
    pub fn new(p: u32, center: CoordVec, radius: f64) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidArgument("dual ball needs p >= 1".into()));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidArgument(format!("ball radius must be positive, got {radius}")));
        }
        Ok(Self { p, center, radius })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn center(&self) -> &CoordVec {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    fn weight(&self, schedule: &EigenSchedule, k: usize) -> f64 {
        schedule.lambda(k).powi(-2 * self.p as i32)
    }

    /// `|x - y|_{-p} <= r` for finitely supported `x`.
    pub fn contains(&self, schedule: &EigenSchedule, x: &CoordVec) -> bool {
        schedule.weighted_sq(&x.sub(&self.center), -(self.p as i32)) <= self.radius * self.radius
    }

    /// Membership of the first `n` coordinates in the ellipsoid
    /// `C_n = {sum_{k<=n} lambda_k^{-2p} (x_k - y_k)^2 <= r^2}`.
    pub fn contains_projection(&self, schedule: &EigenSchedule, x: &CoordVec, n: usize) -> bool {
        schedule.partial_weighted_sq(&x.sub(&self.center), -(self.p as i32), n) <= self.radius * self.radius
    }

    /// The same test on dense leading coordinates `x[k] = x_{k+1}`.
    pub fn contains_dense(&self, schedule: &EigenSchedule, x: &[f64]) -> bool {
        let r2 = self.radius * self.radius;
        let mut acc = 0.0;
        for (k, &xk) in x.iter().enumerate() {
            let d = xk - self.center.get(k + 1);
            acc += self.weight(schedule, k + 1) * d * d;
            if acc > r2 {
                return false;
            }
        }
        true
    }
}

/// Monte Carlo mass estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub count: u64,
}

/// `mu{x : sum_{k <= truncation_dim} lambda_k^{-2p} (x_k - y_k)^2 <= r^2}`.
///
/// The set contains the ball, so this over-estimates `mu(B_r^{-p}(y))`; the
/// bias shrinks as `truncation_dim` grows. Sample `i` uses the same stream
/// for every truncation, so estimates are monotone in `truncation_dim` and
/// in the radius for a fixed seed.
pub fn ball_mass_estimate(
    ball: &DualBall,
    schedule: &EigenSchedule,
    truncation_dim: usize,
    count: u64,
    seed: u64,
) -> Result<MassEstimate> {
    if truncation_dim < ball.center.max_index() {
        return Err(Error::TruncationTooSmall { needed: ball.center.max_index(), got: truncation_dim });
    }
    if count == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    let weights: Vec<f64> = (1..=truncation_dim).map(|k| ball.weight(schedule, k)).collect();
    let center = ball.center.to_dense(truncation_dim);
    let r2 = ball.radius * ball.radius;
    let hits = count_hits(count, |i| {
        let mut x = vec![0.0; truncation_dim];
        fill_standard_normal(seed, i, &mut x);
        let mut acc = 0.0;
        for k in 0..truncation_dim {
            let d = x[k] - center[k];
            acc += weights[k] * d * d;
        }
        acc <= r2
    });
    let n = count as f64;
    let estimate = hits as f64 / n;
    let stderr = (estimate * (1.0 - estimate) / n).sqrt();
    Ok(MassEstimate { estimate, stderr, count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coord::Hyperplane;

    fn e(n: usize) -> CoordVec {
        CoordVec::unit(n).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn char_fn_examples() {
        let plane = Hyperplane::new(0.0, e(1)).unwrap().to_affine();
        assert!(close(char_fn(&plane, &e(1)), Complex64::new(1.0, 0.0), 1e-15));
        assert!(close(char_fn(&plane, &e(2)), Complex64::new((-0.5f64).exp(), 0.0), 1e-15));
        let shifted = AffineSubspace::new(e(1).scale(2.0), Subspace::coordinate_tail(1).unwrap()).unwrap();
        assert!(close(char_fn(&shifted, &e(1)), Complex64::new(0.0, 2.0).exp(), 1e-15));
        assert_eq!(char_fn(&plane, &CoordVec::zero()), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn s_transform_delta_examples() {
        // delta on the hyperplane e_1 + e_1^perp; the normal component of z
        // is what survives in the quadratic term
        let plane = Hyperplane::new(1.0, e(1)).unwrap().to_affine();
        let i = Complex64::new(0.0, 1.0);
        let z = e(1).to_complex();
        assert!(close(s_transform_delta(&plane, &z), Complex64::new(0.5f64.exp(), 0.0), 1e-15));
        let iz = ComplexCoordVec::basis(1, i).unwrap();
        assert!(close(s_transform_delta(&plane, &iz), (Complex64::new(0.5, 1.0)).exp(), 1e-15));
        assert!(close(s_transform_delta(&plane, &e(2).to_complex()), Complex64::new(1.0, 0.0), 1e-15));
        let whole = AffineSubspace::linear(Subspace::whole());
        // mu itself: S(1)(z) = 1
        assert!(close(s_transform_delta(&whole, &e(3).to_complex()), Complex64::new(1.0, 0.0), 1e-15));
    }

    #[test]
    fn translate_density_examples() {
        assert!((translate_density(&CoordVec::zero(), &e(1)) - (-0.5f64).exp()).abs() < 1e-15);
        assert!((translate_density(&e(1), &e(1)) - 0.5f64.exp()).abs() < 1e-15);
    }

    #[test]
    fn point_mass_sampling() {
        let anchor = CoordVec::from_pairs([(1, 0.5), (2, -1.5)]).unwrap();
        let zero = Subspace::new(DMatrix::zeros(2, 2), false).unwrap();
        let space = AffineSubspace::new(anchor, zero).unwrap();
        let sampler = GaussianSampler::new(space, 4, 9).unwrap();
        assert_eq!(sampler.factor().ncols(), 0);
        let block = sampler.sample_block(100);
        for row in block.rows() {
            assert_eq!(row, &[0.5, -1.5, 0.0, 0.0]);
        }
    }

    #[test]
    fn factor_reproduces_projector() {
        let v = CoordVec::from_pairs([(1, 0.6), (2, 0.0), (3, 0.8)]).unwrap();
        let sub = Subspace::orthogonal_to_unit(&v).unwrap();
        let f = projector_factor(&sub);
        assert_eq!(f.ncols(), 2);
        let err = (&f * f.transpose() - sub.projector()).abs().max();
        assert!(err < 1e-10);
    }

    #[test]
    fn truncation_must_cover_block() {
        let plane = Hyperplane::new(0.0, e(3)).unwrap().to_affine();
        assert!(matches!(GaussianSampler::new(plane, 2, 0), Err(Error::TruncationTooSmall { needed: 3, got: 2 })));
    }

    #[test]
    fn sample_block_matches_draw() {
        let plane = Hyperplane::new(0.7, e(2)).unwrap().to_affine();
        let sampler = GaussianSampler::new(plane, 5, 3).unwrap();
        let block = sampler.sample_block(50);
        assert_eq!(block.count(), 50);
        for i in [0usize, 17, 49] {
            assert_eq!(block.row(i), sampler.draw(i as u64).as_slice());
            assert!((block.row(i)[1] - 0.7).abs() < 1e-14);
        }
    }

    #[test]
    fn ball_membership() {
        let s = EigenSchedule::Shifted;
        let ball = DualBall::new(1, CoordVec::zero(), 1.0).unwrap();
        assert!(!ball.contains(&s, &e(1).scale(3.0)));
        assert!(ball.contains(&s, &e(1)));
        assert!(ball.contains_dense(&s, &[1.0, 0.0]));
        assert!(!ball.contains_dense(&s, &[3.0]));
        assert!(DualBall::new(1, CoordVec::zero(), 0.0).is_err());
        assert!(DualBall::new(0, CoordVec::zero(), 1.0).is_err());
    }

    #[test]
    fn huge_ball_has_full_mass() {
        let ball = DualBall::new(1, CoordVec::zero(), 1e6).unwrap();
        let m = ball_mass_estimate(&ball, &EigenSchedule::Shifted, 20, 20_000, 1).unwrap();
        assert_eq!(m.estimate, 1.0);
        assert_eq!(m.stderr, 0.0);
    }
}

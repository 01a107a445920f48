//! Support-theorem tooling: projectively compact dual balls, sinograms of
//! the transform over `(direction, offset)` grids, slab recovery from a
//! sinogram, convergence checks for `delta_{x_k + S_k}`, and the classical
//! Gaussian-weighted line transform of a bump in the plane.

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::coord::{AffineSubspace, ComplexCoordVec, CoordVec, EigenSchedule, Hyperplane, Subspace};
use crate::error::{Error, Result};
use crate::format::{format_f64, parse_f64};
use crate::functional::ExponentialFunctional;
use crate::gaussian::{s_transform_delta, DualBall};
use crate::quadrature::{GaussLegendre, QuadratureSpec};
use crate::transform::{radon_closed, radon_mc, radon_quadrature, Method, TransformResult};

/// Default nonzero threshold for closed-form and quadrature sinograms.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Monte Carlo rows count as nonzero only beyond this many standard errors.
pub const MC_SIGMAS: f64 = 5.0;
/// Gauss-Legendre nodes per chord for the classical sinogram.
pub const DEFAULT_CHORD_NODES: usize = 80;

/// Convex set in the dual space whose coordinate projections `C_n` are
/// compact.
#[derive(Debug, Clone, PartialEq)]
pub enum ProjectiveCompactSet {
    DualBall(DualBall),
}

impl ProjectiveCompactSet {
    pub fn contains(&self, schedule: &EigenSchedule, x: &CoordVec) -> bool {
        match self {
            Self::DualBall(b) => b.contains(schedule, x),
        }
    }

    /// Whether `(x_1..x_n)` lies in `C_n`.
    pub fn contains_projection(&self, schedule: &EigenSchedule, x: &CoordVec, n: usize) -> bool {
        match self {
            Self::DualBall(b) => b.contains_projection(schedule, x, n),
        }
    }

    /// Smallest `N` with `x_n ∉ C_n` for every `n >= N`, or `None` when `x`
    /// is in the set. The partial sums only grow with `n`, so the first exit
    /// is permanent, and for finitely supported `x` it happens no later than
    /// the largest index of `x - y`.
    pub fn exit_index(&self, schedule: &EigenSchedule, x: &CoordVec) -> Option<usize> {
        let Self::DualBall(b) = self;
        let last = x.sub(b.center()).max_index().max(1);
        (1..=last).find(|&n| !self.contains_projection(schedule, x, n))
    }

    /// `alpha v ∉ C`, the hypothesis under which the transform must vanish.
    pub fn offside(&self, schedule: &EigenSchedule, alpha: f64, v: &CoordVec) -> bool {
        !self.contains(schedule, &v.scale(alpha))
    }
}

/// One sinogram sample `G_phi(alpha v + v^perp)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SinogramRow {
    pub direction: CoordVec,
    pub alpha: f64,
    pub value: Complex64,
    pub stderr: f64,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Sinogram {
    pub rows: Vec<SinogramRow>,
}

pub const SINOGRAM_HEADER: [&str; 6] = ["v", "alpha", "re", "im", "stderr", "method"];

impl Sinogram {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// CSV with the columns of [`SINOGRAM_HEADER`], or whitespace-separated
    /// columns under a `#` header when `gnuplot` is set.
    pub fn to_text(&self, gnuplot: bool) -> String {
        let sep = if gnuplot { " " } else { "," };
        let mut out = String::new();
        if gnuplot {
            out.push_str("# ");
        }
        out.push_str(&SINOGRAM_HEADER.join(sep));
        out.push('\n');
        for r in &self.rows {
            let fields = [
                r.direction.to_string(),
                format_f64(r.alpha),
                format_f64(r.value.re),
                format_f64(r.value.im),
                format_f64(r.stderr),
                r.method.to_string(),
            ];
            let _ = writeln!(out, "{}", fields.join(sep));
        }
        out
    }

    /// Reads the CSV (or gnuplot) form written by [`Sinogram::to_text`].
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut header_seen = false;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = if line.contains(',') {
                line.split(',').map(str::trim).collect()
            } else {
                line.trim_start_matches('#').split_whitespace().collect()
            };
            if !header_seen {
                if fields != SINOGRAM_HEADER {
                    return Err(Error::Parse(format!("line {}: expected header {:?}", lineno + 1, SINOGRAM_HEADER)));
                }
                header_seen = true;
                continue;
            }
            if fields.len() != SINOGRAM_HEADER.len() {
                return Err(Error::Parse(format!("line {}: expected 6 fields, got {}", lineno + 1, fields.len())));
            }
            let direction = CoordVec::parse(fields[0])?;
            let len = direction.norm0_sq().sqrt();
            if (len - 1.0).abs() > 1e-12 {
                return Err(Error::NonUnitVector(len));
            }
            rows.push(SinogramRow {
                direction,
                alpha: parse_f64(fields[1])?,
                value: Complex64::new(parse_f64(fields[2])?, parse_f64(fields[3])?),
                stderr: parse_f64(fields[4])?,
                method: fields[5].parse()?,
            });
        }
        if !header_seen {
            return Err(Error::Parse("missing sinogram header".into()));
        }
        Ok(Self { rows })
    }
}

/// Route and parameters for each sinogram row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SinogramMethod {
    Closed,
    MonteCarlo { truncation_dim: usize, count: u64, seed: u64 },
    Quadrature(QuadratureSpec),
}

fn row_seed(seed: u64, row: usize) -> u64 {
    seed ^ (row as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// `G_phi(alpha v + v^perp)` for every direction (outer loop) and offset
/// (inner loop). Row order follows the inputs whatever the thread count.
pub fn sinogram_gen(
    phi: &ExponentialFunctional,
    directions: &[CoordVec],
    offsets: &[f64],
    method: SinogramMethod,
) -> Result<Sinogram> {
    let planes = directions
        .iter()
        .flat_map(|v| offsets.iter().map(move |&a| Hyperplane::new(a, v.clone())))
        .collect::<Result<Vec<_>>>()?;
    let rows = planes
        .par_iter()
        .enumerate()
        .map(|(k, plane)| {
            let result: TransformResult = match method {
                SinogramMethod::Closed => radon_closed(phi, &plane.to_affine()),
                SinogramMethod::MonteCarlo { truncation_dim, count, seed } => {
                    radon_mc(phi, &plane.to_affine(), truncation_dim, count, row_seed(seed, k))?
                }
                SinogramMethod::Quadrature(spec) => radon_quadrature(phi, plane, &spec)?,
            };
            Ok(SinogramRow {
                direction: plane.normal().clone(),
                alpha: plane.alpha(),
                value: result.value,
                stderr: result.stderr,
                method: result.method,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Sinogram { rows })
}

/// Per-direction slab `alpha_lo <= <x, v> <= alpha_hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlabConstraint {
    pub direction: CoordVec,
    pub alpha_lo: f64,
    pub alpha_hi: f64,
    /// No offset in this direction had a nonzero value; the slab is empty.
    pub degenerate: bool,
}

/// Intersection of slabs, a convex superset of the support.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RecoveredSet {
    pub constraints: Vec<SlabConstraint>,
}

impl RecoveredSet {
    pub fn is_empty(&self) -> bool {
        self.constraints.iter().any(|c| c.degenerate)
    }

    pub fn contains(&self, x: &CoordVec) -> bool {
        self.constraints.iter().all(|c| {
            let s = c.direction.dot(x);
            !c.degenerate && c.alpha_lo <= s && s <= c.alpha_hi
        })
    }

    pub fn to_text(&self, gnuplot: bool) -> String {
        let sep = if gnuplot { " " } else { "," };
        let mut out = String::new();
        if gnuplot {
            out.push_str("# ");
        }
        out.push_str(&["v", "alpha_lo", "alpha_hi", "degenerate"].join(sep));
        out.push('\n');
        for c in &self.constraints {
            let (lo, hi) = if c.degenerate { (f64::NAN, f64::NAN) } else { (c.alpha_lo, c.alpha_hi) };
            let fields = [c.direction.to_string(), format_f64(lo), format_f64(hi), c.degenerate.to_string()];
            let _ = writeln!(out, "{}", fields.join(sep));
        }
        out
    }
}

/// Outermost offsets per direction where `|value|` exceeds the threshold
/// `max(tol, MC_SIGMAS * stderr)`.
pub fn support_recover(sinogram: &Sinogram, tol: f64) -> RecoveredSet {
    let mut groups: Vec<(CoordVec, Vec<&SinogramRow>)> = Vec::new();
    for row in &sinogram.rows {
        match groups.iter_mut().find(|(v, _)| *v == row.direction) {
            Some((_, rows)) => rows.push(row),
            None => groups.push((row.direction.clone(), vec![row])),
        }
    }
    let constraints = groups
        .into_iter()
        .map(|(direction, rows)| {
            let live: Vec<f64> = rows
                .iter()
                .filter(|r| r.value.norm() > tol.max(MC_SIGMAS * r.stderr))
                .map(|r| r.alpha)
                .collect();
            match (live.iter().copied().reduce(f64::min), live.iter().copied().reduce(f64::max)) {
                (Some(alpha_lo), Some(alpha_hi)) => SlabConstraint { direction, alpha_lo, alpha_hi, degenerate: false },
                _ => SlabConstraint { direction, alpha_lo: f64::INFINITY, alpha_hi: f64::NEG_INFINITY, degenerate: true },
            }
        })
        .collect();
    RecoveredSet { constraints }
}

/// Outcome of [`delta_conv_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaConvergence {
    /// `sup_z |S delta_{x_k+S_k}(z) - S delta_{x+S}(z)|` for each `k`.
    pub deviations: Vec<f64>,
    /// `C = exp(sup_k |x_k|_{-p}^2 / 2)`, the constant of the uniform bound
    /// `|S delta_{x_k+S_k}(z)| <= C exp(3 |z|_p^2 / 2)`.
    pub bound_constant: f64,
    /// Largest `|S delta(z)| / (C exp(3 |z|_p^2 / 2))` seen; `<= 1` certifies the bound.
    pub max_bound_ratio: f64,
}

impl DeltaConvergence {
    pub fn bound_holds(&self) -> bool {
        self.max_bound_ratio <= 1.0
    }
}

/// Tracks strong convergence of `delta_{x_k + S_k}` to `delta_{x + S}`
/// through their S-transforms on a grid of `z`.
pub fn delta_conv_check(
    x_seq: &[CoordVec],
    x_lim: &CoordVec,
    s_seq: &[Subspace],
    s_lim: &Subspace,
    z_grid: &[ComplexCoordVec],
    p: u32,
    schedule: &EigenSchedule,
) -> Result<DeltaConvergence> {
    if x_seq.len() != s_seq.len() {
        return Err(Error::InvalidArgument(format!(
            "point and subspace sequences differ in length ({} vs {})",
            x_seq.len(),
            s_seq.len()
        )));
    }
    let limit = AffineSubspace::with_anchor(x_lim.clone(), s_lim);
    let limit_values: Vec<Complex64> = z_grid.iter().map(|z| s_transform_delta(&limit, z)).collect();
    let sup_x = x_seq
        .iter()
        .chain(std::iter::once(x_lim))
        .map(|x| schedule.weighted_sq(x, -(p as i32)))
        .fold(0.0f64, f64::max);
    let log_c = 0.5 * sup_x;
    let mut max_bound_ratio = 0.0f64;
    let mut deviations = Vec::with_capacity(x_seq.len());
    for (x, s) in x_seq.iter().zip(s_seq) {
        let space = AffineSubspace::with_anchor(x.clone(), s);
        let mut worst = 0.0f64;
        for (z, lim) in z_grid.iter().zip(&limit_values) {
            let value = s_transform_delta(&space, z);
            worst = worst.max((value - lim).norm());
            let log_bound = log_c + 1.5 * schedule.weighted_sq(z, p as i32);
            max_bound_ratio = max_bound_ratio.max((value.norm().ln() - log_bound).exp());
        }
        deviations.push(worst);
    }
    Ok(DeltaConvergence { deviations, bound_constant: log_c.exp(), max_bound_ratio })
}

/// `b(x) = exp(-1 / (1 - |x - c|^2 / r^2))` inside the ball, 0 outside.
#[derive(Debug, Clone, PartialEq)]
pub struct BumpFunction {
    center: Vec<f64>,
    radius: f64,
}

impl BumpFunction {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidArgument(format!("bump radius must be positive, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let d2: f64 = x.iter().zip(&self.center).map(|(a, b)| (a - b) * (a - b)).sum();
        let s = d2 / (self.radius * self.radius);
        if s >= 1.0 {
            0.0
        } else {
            (-1.0 / (1.0 - s)).exp()
        }
    }
}

/// Unit directions `(cos θ_j, sin θ_j)` with `θ_j = 2πj / count`.
pub fn plane_directions(count: usize) -> Vec<CoordVec> {
    (0..count)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / count as f64;
            CoordVec::from_dense(&[theta.cos(), theta.sin()])
        })
        .collect()
}

/// Gaussian-weighted line transform of a planar bump:
/// `∫ b(alpha v + t u) e^{-t^2/2} / sqrt(2 pi) dt` with `u ⟂ v`.
///
/// The integrand vanishes off the chord where the line meets the bump's
/// ball, so the integral is a Gauss-Legendre sum over that chord and is
/// exactly 0 when the line misses the ball.
pub fn classical_sinogram(
    bump: &BumpFunction,
    directions: &[CoordVec],
    offsets: &[f64],
    chord_nodes: usize,
) -> Result<Sinogram> {
    if bump.center.len() != 2 {
        return Err(Error::InvalidArgument("classical sinogram needs a planar bump".into()));
    }
    let rule = GaussLegendre::new(chord_nodes)?;
    let norm = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let mut rows = Vec::with_capacity(directions.len() * offsets.len());
    for v in directions {
        if v.max_index() > 2 {
            return Err(Error::InvalidArgument("classical sinogram directions must lie in the plane".into()));
        }
        let (v1, v2) = (v.get(1), v.get(2));
        let len = v1.hypot(v2);
        if (len - 1.0).abs() > 1e-12 {
            return Err(Error::NonUnitVector(len));
        }
        let (u1, u2) = (-v2, v1);
        let c_v = bump.center[0] * v1 + bump.center[1] * v2;
        let c_u = bump.center[0] * u1 + bump.center[1] * u2;
        for &alpha in offsets {
            let gap = alpha - c_v;
            let half_sq = bump.radius * bump.radius - gap * gap;
            let value = if half_sq <= 0.0 {
                0.0
            } else {
                let half = half_sq.sqrt();
                rule.integrate(c_u - half, c_u + half, |t| {
                    let x = [alpha * v1 + t * u1, alpha * v2 + t * u2];
                    bump.eval(&x) * (-0.5 * t * t).exp() * norm
                })
            };
            rows.push(SinogramRow {
                direction: v.clone(),
                alpha,
                value: Complex64::new(value, 0.0),
                stderr: 0.0,
                method: Method::Quadrature,
            });
        }
    }
    Ok(Sinogram { rows })
}

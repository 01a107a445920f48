//! Counter-based random streams and order-independent Monte Carlo
//! reductions.
//!
//! Sample `i` under seed `s` always reads ChaCha8 stream `i` keyed by `s`,
//! so a draw never depends on which thread produced it or how the index
//! range was chunked. Reductions run over fixed-size index blocks whose
//! partial results are merged in block order.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

const BLOCK: u64 = 4096;

/// Independent generator for sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Fills `out` with iid standard normals from the stream of sample `index`.
pub fn fill_standard_normal(seed: u64, index: u64, out: &mut [f64]) {
    let mut rng = sample_rng(seed, index);
    for slot in out {
        *slot = StandardNormal.sample(&mut rng);
    }
}

/// Componentwise running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: u64,
    mean: Complex64,
    m2_re: f64,
    m2_im: f64,
}

impl Moments {
    fn push(&mut self, x: Complex64) {
        self.count += 1;
        let n = self.count as f64;
        let delta = x - self.mean;
        self.mean += delta / n;
        let delta2 = x - self.mean;
        self.m2_re += delta.re * delta2.re;
        self.m2_im += delta.im * delta2.im;
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let (na, nb, n) = (self.count as f64, other.count as f64, count as f64);
        let delta = other.mean - self.mean;
        Moments {
            count,
            mean: self.mean + delta * (nb / n),
            m2_re: self.m2_re + other.m2_re + delta.re * delta.re * na * nb / n,
            m2_im: self.m2_im + other.m2_im + delta.im * delta.im * na * nb / n,
        }
    }
}

/// Relative allowance for summation rounding in [`MeanEstimate::agrees_with`].
/// An integrand that is constant on the support has zero sample variance,
/// yet its mean still carries rounding error of a few ulps.
pub const ROUNDING_SLACK: f64 = 1e-13;

/// Sample mean of a complex integrand with componentwise standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanEstimate {
    pub mean: Complex64,
    pub stderr_re: f64,
    pub stderr_im: f64,
    pub count: u64,
}

impl MeanEstimate {
    /// `sqrt(se_re^2 + se_im^2)`, the standard error of the complex mean.
    pub fn stderr(&self) -> f64 {
        self.stderr_re.hypot(self.stderr_im)
    }

    /// Whether `target` lies within `sigmas` standard errors of the mean,
    /// plus [`ROUNDING_SLACK`] relative to `|target|`.
    pub fn agrees_with(&self, target: Complex64, sigmas: f64) -> bool {
        (self.mean - target).norm() <= sigmas * self.stderr() + ROUNDING_SLACK * target.norm()
    }
}

/// Mean of `f(i)` over `i in 0..count`, evaluated in parallel with a
/// schedule-independent result.
pub fn monte_carlo_mean<F>(count: u64, f: F) -> MeanEstimate
where
    F: Fn(u64) -> Complex64 + Sync,
{
    let blocks = count.div_ceil(BLOCK);
    let total = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut m = Moments::default();
            for i in b * BLOCK..((b + 1) * BLOCK).min(count) {
                m.push(f(i));
            }
            m
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Moments::default(), Moments::merge);
    let (se_re, se_im) = if total.count > 1 {
        let n = total.count as f64;
        ((total.m2_re / (n - 1.0) / n).sqrt(), (total.m2_im / (n - 1.0) / n).sqrt())
    } else {
        (0.0, 0.0)
    };
    MeanEstimate { mean: total.mean, stderr_re: se_re, stderr_im: se_im, count: total.count }
}

/// Number of indices in `0..count` where `hit(i)` holds.
pub fn count_hits<F>(count: u64, hit: F) -> u64
where
    F: Fn(u64) -> bool + Sync,
{
    (0..count).into_par_iter().filter(|&i| hit(i)).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let mut a = [0.0; 4];
        let mut b = [0.0; 4];
        fill_standard_normal(7, 3, &mut a);
        fill_standard_normal(7, 3, &mut b);
        assert_eq!(a, b);
        fill_standard_normal(7, 4, &mut b);
        assert_ne!(a, b);
        // prefixes agree when more coordinates are requested
        let mut long = [0.0; 8];
        fill_standard_normal(7, 3, &mut long);
        assert_eq!(&long[..4], &a);
    }

    #[test]
    fn mean_of_constant_is_exact() {
        let est = monte_carlo_mean(10_000, |_| Complex64::new(1.0, 0.0));
        assert_eq!(est.mean, Complex64::new(1.0, 0.0));
        assert_eq!(est.stderr(), 0.0);
    }

    #[test]
    fn mean_and_stderr_match_direct_formulas() {
        let values: Vec<f64> = (0..9000).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
        let est = monte_carlo_mean(values.len() as u64, |i| Complex64::new(values[i as usize], 0.0));
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        assert!((est.mean.re - mean).abs() < 1e-12);
        assert!((est.stderr_re - (var / n).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let f = |i: u64| {
            let mut z = [0.0; 2];
            fill_standard_normal(11, i, &mut z);
            Complex64::new(z[0], z[1])
        };
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let many = rayon::ThreadPoolBuilder::new().num_threads(8).build().unwrap();
        let a = one.install(|| monte_carlo_mean(50_000, f));
        let b = many.install(|| monte_carlo_mean(50_000, f));
        assert_eq!(a, b);
    }
}

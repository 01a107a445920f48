//! Concrete tower for `H_0 = L^2(R)` with `A = -d^2/dt^2 + t^2/4 + 1/2`.
//!
//! `A` is the harmonic oscillator whose eigenfunctions are the Hermite
//! functions `psi_k(t) ∝ He_k(t) e^{-t^2/4}` with `A psi_k = (k + 1) psi_k`.
//! The ground state `psi_0` (eigenvalue 1) is left out so that `lambda_1 > 1`:
//! basis vector `e_n` maps to `psi_n`, giving `lambda_n = n + 1` exactly as in
//! the default [`EigenSchedule`](crate::EigenSchedule).

use crate::coord::CoordVec;
use crate::error::{Error, Result};
use crate::quadrature::{hermite_functions, GaussHermite};

/// Basis functions `phi_1..phi_max_index`, normalized by quadrature.
#[derive(Debug, Clone)]
pub struct HermiteBasis {
    max_index: usize,
    /// `norms[n - 1]` rescales the recurrence output for `phi_n`.
    norms: Vec<f64>,
}

impl HermiteBasis {
    pub fn new(max_index: usize) -> Result<Self> {
        if max_index == 0 {
            return Err(Error::InvalidArgument("basis needs max_index >= 1".into()));
        }
        let rule = GaussHermite::new(Self::quadrature_nodes(max_index))?;
        let mut sums = vec![0.0; max_index];
        for (&t, &w) in rule.nodes().iter().zip(rule.lebesgue_weights()) {
            let psi = hermite_functions(max_index + 1, t);
            for (sum, p) in sums.iter_mut().zip(&psi[1..]) {
                *sum += w * p * p;
            }
        }
        let norms = sums.iter().map(|s| 1.0 / s.sqrt()).collect();
        Ok(Self { max_index, norms })
    }

    /// Gauss-Hermite size used to normalize a basis of this size.
    pub fn quadrature_nodes(max_index: usize) -> usize {
        (4 * max_index).max(16)
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    pub fn eigenvalue(&self, n: usize) -> f64 {
        (n + 1) as f64
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        if n > self.max_index {
            return Err(Error::IndexOutOfRange { index: n, max: self.max_index });
        }
        Ok(())
    }

    /// `phi_n(t)`.
    pub fn eval(&self, n: usize, t: f64) -> Result<f64> {
        self.check(n)?;
        Ok(hermite_functions(n + 1, t)[n] * self.norms[n - 1])
    }

    /// `phi_1(t)..phi_max_index(t)` in one recurrence pass.
    pub fn eval_all(&self, t: f64) -> Vec<f64> {
        let psi = hermite_functions(self.max_index + 1, t);
        psi[1..].iter().zip(&self.norms).map(|(p, c)| p * c).collect()
    }

    /// `sum_n x_n phi_n(t)` at each grid point.
    pub fn synth(&self, x: &CoordVec, grid: &[f64]) -> Result<Vec<f64>> {
        if x.max_index() > self.max_index {
            return Err(Error::IndexOutOfRange { index: x.max_index(), max: self.max_index });
        }
        let top = x.max_index();
        Ok(grid
            .iter()
            .map(|&t| {
                if top == 0 {
                    return 0.0;
                }
                let psi = hermite_functions(top + 1, t);
                x.iter().map(|(n, v)| v * psi[n] * self.norms[n - 1]).sum()
            })
            .collect())
    }
}

/// `phi_n(t)` for a one-off evaluation.
pub fn hermite_eval(basis: &HermiteBasis, n: usize, t: f64) -> Result<f64> {
    basis.eval(n, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn out_of_range() {
        let basis = HermiteBasis::new(3).unwrap();
        assert!(matches!(basis.eval(4, 0.0), Err(Error::IndexOutOfRange { index: 4, max: 3 })));
        assert!(matches!(basis.eval(0, 0.0), Err(Error::ZeroIndex)));
        let x = CoordVec::unit(5).unwrap();
        assert!(basis.synth(&x, &[0.0]).is_err());
    }

    #[test]
    fn synth_basics() {
        let basis = HermiteBasis::new(4).unwrap();
        assert_eq!(basis.synth(&CoordVec::zero(), &[-1.0, 0.0, 2.0]).unwrap(), vec![0.0; 3]);
        let t = 0.37;
        let one = basis.synth(&CoordVec::unit(1).unwrap(), &[t]).unwrap();
        assert_eq!(one[0], basis.eval(1, t).unwrap());
        assert_eq!(basis.eval_all(t)[1], basis.eval(2, t).unwrap());
    }

    #[test]
    fn norms_are_close_to_one() {
        // the recurrence is already orthonormal; quadrature only confirms it
        let basis = HermiteBasis::new(30).unwrap();
        for c in &basis.norms {
            assert!((c - 1.0).abs() < 1e-12);
        }
    }
}

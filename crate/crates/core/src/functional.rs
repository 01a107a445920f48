//! Test functions from the span of renormalized exponentials
//! `c_w(x) = exp(<x,w> - <w,w>/2)`.
//!
//! Every operation used by the transform has a closed form on this span:
//! products (`c_w c_u = e^{<w,u>} c_{w+u}`), translations
//! (`T_y c_w = e^{<y,w>} c_w`) and the S-transform (`S c_w (z) = e^{<w,z>}`).

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::coord::{pairing, ComplexCoordVec, CoordVec, EigenSchedule};
use crate::error::{Error, Result};
use crate::format::{format_complex, parse_complex};

/// One term `coeff * c_w`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Complex64,
    pub w: ComplexCoordVec,
}

type TermKey = Vec<(usize, u64, u64)>;

fn bits(x: f64) -> u64 {
    // -0.0 and 0.0 are the same exponent
    if x == 0.0 {
        0
    } else {
        x.to_bits()
    }
}

fn term_key(w: &ComplexCoordVec) -> TermKey {
    w.iter().map(|(i, v)| (i, bits(v.re), bits(v.im))).collect()
}

/// Finite linear combination `sum_k coeff_k c_{w_k}`. Terms with equal `w`
/// are merged and zero coefficients are dropped, so two functionals built
/// from the same terms compare equal.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExponentialFunctional {
    terms: Vec<Term>,
}

impl ExponentialFunctional {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut merged: BTreeMap<TermKey, Term> = BTreeMap::new();
        for term in terms {
            merged
                .entry(term_key(&term.w))
                .and_modify(|t| t.coeff += term.coeff)
                .or_insert(term);
        }
        let terms = merged.into_values().filter(|t| t.coeff != Complex64::new(0.0, 0.0)).collect();
        Self { terms }
    }

    /// `c_w` with coefficient 1.
    pub fn exponential(w: ComplexCoordVec) -> Self {
        Self::from_terms([Term { coeff: Complex64::new(1.0, 0.0), w }])
    }

    /// `c_w` for a real `w`.
    pub fn real_exponential(w: &CoordVec) -> Self {
        Self::exponential(w.to_complex())
    }

    /// The constant function `c` (that is, `c * c_0`).
    pub fn constant(c: Complex64) -> Self {
        Self::from_terms([Term { coeff: c, w: ComplexCoordVec::zero() }])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coordinate index used by any exponent.
    pub fn max_index(&self) -> usize {
        self.terms.iter().map(|t| t.w.max_index()).max().unwrap_or(0)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_terms(self.terms.iter().map(|t| Term { coeff: t.coeff * factor, w: t.w.clone() }))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    /// `phi(x)` at a finitely supported real point.
    pub fn evaluate(&self, x: &CoordVec) -> Complex64 {
        self.terms
            .iter()
            .map(|t| t.coeff * (pairing(x, &t.w) - 0.5 * pairing(&t.w, &t.w)).exp())
            .sum()
    }

    /// `phi(x)` with `x[k]` holding coordinate `k + 1`; later coordinates are 0.
    pub fn evaluate_dense(&self, x: &[f64]) -> Complex64 {
        self.terms.iter().map(|t| t.coeff * (t.w.pair_dense(x) - 0.5 * pairing(&t.w, &t.w)).exp()).sum()
    }

    /// Pointwise product.
    pub fn multiply(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().flat_map(|a| {
            other.terms.iter().map(move |b| Term {
                coeff: a.coeff * b.coeff * pairing(&a.w, &b.w).exp(),
                w: a.w.add(&b.w),
            })
        }))
    }

    /// `T_y phi = phi(. + y)`.
    pub fn translate(&self, y: &CoordVec) -> Self {
        Self::from_terms(
            self.terms.iter().map(|t| Term { coeff: t.coeff * pairing(y, &t.w).exp(), w: t.w.clone() }),
        )
    }

    /// `(S phi)(z) = sum_k coeff_k e^{<w_k, z>}`.
    pub fn s_transform(&self, z: &ComplexCoordVec) -> Complex64 {
        self.terms.iter().map(|t| t.coeff * pairing(&t.w, z).exp()).sum()
    }

    /// A constant `K_p` with `|phi(x)| <= K_p exp(|x|_{-p}^2 / 2)` for every `x`.
    ///
    /// Each term obeys `|c_w(x)| = exp(<x, Re w> - Re<w,w>/2)` and
    /// `<x, Re w> <= |x|_{-p}^2/2 + |Re w|_p^2/2`; the terms are summed with
    /// the triangle inequality, so the constant is valid but not sharp.
    pub fn growth_constant(&self, p: u32, schedule: &EigenSchedule) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let re = t.w.real_part();
                let exponent = 0.5 * (schedule.weighted_sq(&re, p as i32) - pairing(&t.w, &t.w).re);
                t.coeff.norm() * exponent.exp()
            })
            .sum::<f64>()
            .max(f64::MIN_POSITIVE)
    }

    /// Parses `coeff@coordvec|coeff@coordvec`, e.g. `1+0j@1:1.0|0.5@2:1`.
    /// A bare coefficient (no `@`) is a constant term.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty functional".into()));
        }
        let terms = text
            .split('|')
            .map(|item| {
                let (coeff, w) = item.split_once('@').unwrap_or((item, ""));
                Ok(Term { coeff: parse_complex(coeff)?, w: ComplexCoordVec::parse(w)? })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_terms(terms))
    }
}

impl fmt::Display for ExponentialFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            write!(f, "{}@{}", format_complex(t.coeff), t.w)?;
        }
        Ok(())
    }
}

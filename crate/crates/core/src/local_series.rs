//! Generalized power series `Σ c · r^e · (ln r)^k` valid near the origin.
//!
//! Integrands with a known local expansion can be evaluated close to `0`
//! directly from their series. Subtracting singular terms then becomes a
//! coefficient operation, which avoids the catastrophic cancellation of
//! `f(r) − Σ f_k r^k` computed from values.

use num_complex::Complex64;
use num_traits::Zero;

/// Exponents closer than this are merged into one term.
const MERGE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalTerm {
    pub exponent: Complex64,
    pub log_power: u32,
    pub coeff: Complex64,
}

/// A finite generalized power series together with the radius below which it
/// is trusted to full precision.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalSeries {
    terms: Vec<LocalTerm>,
    pub radius: f64,
}

impl LocalSeries {
    pub fn new(radius: f64) -> Self {
        LocalSeries {
            terms: Vec::new(),
            radius,
        }
    }

    /// Power series `Σ coeffs[j] r^{shift + j}`.
    pub fn from_powers(shift: Complex64, coeffs: &[Complex64], radius: f64) -> Self {
        let mut s = Self::new(radius);
        for (j, c) in coeffs.iter().enumerate() {
            s.push(shift + j as f64, 0, *c);
        }
        s
    }

    pub fn terms(&self) -> &[LocalTerm] {
        &self.terms
    }

    /// Adds `coeff · r^exponent · (ln r)^log_power`, merging with an existing
    /// term of the same shape.
    pub fn push(&mut self, exponent: Complex64, log_power: u32, coeff: Complex64) {
        if coeff == Complex64::zero() {
            return;
        }
        match self
            .terms
            .iter_mut()
            .find(|t| t.log_power == log_power && (t.exponent - exponent).norm() < MERGE_TOL)
        {
            Some(t) => t.coeff += coeff,
            None => self.terms.push(LocalTerm {
                exponent,
                log_power,
                coeff,
            }),
        }
    }

    pub fn eval(&self, r: f64) -> Complex64 {
        let lr = r.ln();
        self.terms
            .iter()
            .map(|t| {
                let p = (t.exponent * lr).exp();
                t.coeff * p * lr.powi(t.log_power as i32)
            })
            .sum()
    }

    /// Coefficient of the pure power `r^exponent`.
    pub fn coefficient(&self, exponent: Complex64) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| t.log_power == 0 && (t.exponent - exponent).norm() < MERGE_TOL)
            .map(|t| t.coeff)
            .sum()
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let mut s = self.clone();
        s.terms.iter_mut().for_each(|t| t.coeff *= k);
        s
    }

    /// Multiplies by `r^shift`.
    pub fn shift(&self, shift: Complex64) -> Self {
        let mut s = self.clone();
        s.terms.iter_mut().for_each(|t| t.exponent += shift);
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.radius = self.radius.min(other.radius);
        for t in &other.terms {
            s.push(t.exponent, t.log_power, t.coeff);
        }
        s
    }

    /// Product, dropping terms whose exponent real part exceeds `max_re`.
    pub fn mul(&self, other: &Self, max_re: f64) -> Self {
        let mut s = Self::new(self.radius.min(other.radius));
        for a in &self.terms {
            for b in &other.terms {
                let e = a.exponent + b.exponent;
                if e.re <= max_re {
                    s.push(e, a.log_power + b.log_power, a.coeff * b.coeff);
                }
            }
        }
        s
    }

    /// Removes the given pure-power terms, i.e. returns `self − Σ c r^e`.
    pub fn subtract_powers(&self, powers: &[(Complex64, Complex64)]) -> Self {
        let mut s = self.clone();
        for (e, c) in powers {
            s.push(*e, 0, -*c);
        }
        s.terms.retain(|t| t.coeff.norm() > 0.0);
        s
    }

    /// Removes the pure-power terms with the given exponents.
    pub fn without_powers(&self, exponents: &[Complex64]) -> Self {
        let mut s = self.clone();
        s.terms.retain(|t| {
            t.log_power > 0 || !exponents.iter().any(|e| (t.exponent - e).norm() < MERGE_TOL)
        });
        s
    }

    /// Term-wise derivative with respect to `r`.
    pub fn derivative(&self) -> Self {
        let mut s = Self::new(self.radius);
        for t in &self.terms {
            let e = t.exponent - 1.0;
            s.push(e, t.log_power, t.coeff * t.exponent);
            if t.log_power > 0 {
                s.push(e, t.log_power - 1, t.coeff * t.log_power as f64);
            }
        }
        s
    }

    /// Largest real part among exponents, or `−∞` for the empty series.
    pub fn max_exponent(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.exponent.re)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Drops the terms whose coefficient is negligible relative to the largest.
    pub fn prune(&mut self, rel: f64) {
        let big = self.terms.iter().map(|t| t.coeff.norm()).fold(0.0, f64::max);
        self.terms.retain(|t| t.coeff.norm() > rel * big);
    }
}

//! Truncated Laurent series in a small parameter `ε`.
//!
//! Several closed forms are products of `1/Γ`, `ψ` and `ψ′` whose arguments
//! may sit exactly on a pole; the value of the expression is then the finite
//! limit obtained by moving the arguments off the pole with `ε → 0`. Carrying
//! every factor as a Laurent series in `ε` and reading off the `ε⁰`
//! coefficient takes that limit exactly, using the reflection formulas
//!
//! ```text
//! ψ(−k+δ)   = ψ(1+k−δ) − π cot(πδ)
//! 1/Γ(−k+δ) = (−1)^k sin(πδ)/π · Γ(1+k−δ)
//! ```
//!
//! which reproduce the limit values `ψ(z)/Γ(z) → (−1)^{k+1} k!` and the
//! digamma-ratio limits of [`crate::scalar::lemma_b2_values`].

use std::f64::consts::PI;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{digamma, factorial, gamma, nonpositive_integer, polygamma};

/// Highest retained power of `ε` (and of `1/ε`).
pub const ORDER: i32 = 6;
const LEN: usize = (2 * ORDER + 1) as usize;

/// Arguments within this distance of an integer are snapped onto it.
const SNAP: f64 = 1e-10;

/// A Laurent series `Σ_{j=−ORDER}^{ORDER} c_j ε^j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Laurent {
    c: [Complex64; LEN],
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent {
            c: [Complex64::zero(); LEN],
        }
    }

    pub fn constant(v: Complex64) -> Self {
        let mut s = Self::zero();
        s.c[ORDER as usize] = v;
        s
    }

    pub fn real(v: f64) -> Self {
        Self::constant(Complex64::new(v, 0.0))
    }

    /// `x0 + slope·ε`, with `x0` snapped onto a nearby integer.
    pub fn arg(x0: Complex64, slope: f64) -> Self {
        let mut s = Self::constant(snap(x0));
        s.c[ORDER as usize + 1] = Complex64::new(slope, 0.0);
        s
    }

    pub fn coeff(&self, order: i32) -> Complex64 {
        if order.abs() > ORDER {
            Complex64::zero()
        } else {
            self.c[(order + ORDER) as usize]
        }
    }

    fn set(&mut self, order: i32, v: Complex64) {
        if order.abs() <= ORDER {
            self.c[(order + ORDER) as usize] = v;
        }
    }

    /// The `ε⁰` coefficient, i.e. the finite limit when the pole part vanishes.
    pub fn value(&self) -> Complex64 {
        self.coeff(0)
    }

    /// Largest magnitude among the negative-order coefficients.
    pub fn pole_magnitude(&self) -> f64 {
        (1..=ORDER).map(|j| self.coeff(-j).norm()).fold(0.0, f64::max)
    }

    fn leading_order(&self) -> Option<i32> {
        (-ORDER..=ORDER).find(|&j| self.coeff(j) != Complex64::zero())
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let mut s = *self;
        s.c.iter_mut().for_each(|v| *v *= k);
        s
    }

    /// Multiplicative inverse; fails on the zero series.
    pub fn recip(&self) -> Result<Self> {
        let v = self.leading_order().ok_or_else(|| {
            Error::Degenerate("reciprocal of a vanishing Laurent series".into())
        })?;
        let a0 = self.coeff(v);
        // b = 1/(a_v + a_{v+1} ε + …), then shift by ε^{−v}.
        let n = (2 * ORDER + 1) as usize;
        let mut b = vec![Complex64::zero(); n];
        b[0] = a0.inv();
        for k in 1..n {
            let mut s = Complex64::zero();
            for j in 1..=k {
                s += self.coeff(v + j as i32) * b[k - j];
            }
            b[k] = -s / a0;
        }
        let mut out = Self::zero();
        for (k, bk) in b.iter().enumerate() {
            out.set(k as i32 - v, *bk);
        }
        Ok(out)
    }

    /// The same series with its constant term snapped onto a nearby integer.
    pub fn snapped(&self) -> Self {
        let mut s = *self;
        s.set(0, snap(self.value()));
        s
    }

    /// Derivative with respect to `ε`.
    pub fn deriv(&self) -> Self {
        let mut out = Self::zero();
        for j in -ORDER..=ORDER {
            out.set(j - 1, self.coeff(j) * j as f64);
        }
        out
    }

    pub fn powi(&self, n: u32) -> Self {
        (0..n).fold(Self::real(1.0), |acc, _| acc * *self)
    }

    /// Splits into the constant term and the remainder `δ = self − x0`.
    fn split(&self) -> (Complex64, Self) {
        let x0 = snap(self.value());
        let mut d = *self;
        d.set(0, Complex64::zero());
        (x0, d)
    }
}

fn snap(x: Complex64) -> Complex64 {
    let r = x.re.round();
    if (x.re - r).abs() < SNAP && x.im.abs() < SNAP {
        Complex64::new(r, 0.0)
    } else {
        x
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(mut self, o: Laurent) -> Laurent {
        for (a, b) in self.c.iter_mut().zip(o.c.iter()) {
            *a += b;
        }
        self
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, o: Laurent) -> Laurent {
        self + (-o)
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(mut self) -> Laurent {
        self.c.iter_mut().for_each(|v| *v = -*v);
        self
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, o: Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for i in -ORDER..=ORDER {
            let a = self.coeff(i);
            if a == Complex64::zero() {
                continue;
            }
            for j in -ORDER..=ORDER {
                let k = i + j;
                if k.abs() <= ORDER {
                    let v = out.coeff(k) + a * o.coeff(j);
                    out.set(k, v);
                }
            }
        }
        out
    }
}

impl Add<f64> for Laurent {
    type Output = Laurent;
    fn add(self, o: f64) -> Laurent {
        self + Laurent::real(o)
    }
}

impl Mul<f64> for Laurent {
    type Output = Laurent;
    fn mul(self, o: f64) -> Laurent {
        self.scale(Complex64::new(o, 0.0))
    }
}

impl Div<f64> for Laurent {
    type Output = Laurent;
    fn div(self, o: f64) -> Laurent {
        self.scale(Complex64::new(1.0 / o, 0.0))
    }
}

/// Σ_j coeffs[j] δ^{j+lo} for a series `δ` without constant term.
fn compose(lo: i32, coeffs: &[Complex64], delta: &Laurent) -> Result<Laurent> {
    let mut out = Laurent::zero();
    let is_zero = delta.leading_order().is_none();
    let mut pos = Laurent::real(1.0);
    let mut neg: Option<Laurent> = None;
    for (j, c) in coeffs.iter().enumerate() {
        let p = lo + j as i32;
        if *c == Complex64::zero() {
            continue;
        }
        match p.cmp(&0) {
            std::cmp::Ordering::Equal => out = out + Laurent::constant(*c),
            std::cmp::Ordering::Greater => {
                if is_zero {
                    continue;
                }
                while pos.leading_order().unwrap_or(ORDER + 1) < p {
                    pos = pos * *delta;
                }
                let mut term = Laurent::real(1.0);
                for _ in 0..p {
                    term = term * *delta;
                }
                out = out + term.scale(*c);
            }
            std::cmp::Ordering::Less => {
                let inv = match neg {
                    Some(v) => v,
                    None => {
                        let v = delta.recip()?;
                        neg = Some(v);
                        v
                    }
                };
                out = out + inv.powi((-p) as u32).scale(*c);
            }
        }
    }
    Ok(out)
}

/// Coefficients of ψ(x0+δ) in powers of δ, starting at δ^{-1}, up to δ^{n}.
fn psi_coefficients(x0: Complex64, n: usize) -> Result<Vec<Complex64>> {
    let mut out = vec![Complex64::zero(); n + 2];
    match nonpositive_integer(x0) {
        Some(k) => {
            // ψ(1+k−δ) − π cot(πδ), π cot(πδ) = 1/δ − 2 Σ ζ(2j) δ^{2j−1}
            let base = Complex64::new(1.0 + k as f64, 0.0);
            out[0] = Complex64::new(-1.0, 0.0);
            for j in 0..=n {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                out[j + 1] += polygamma(j as u32, base)? * (sign / factorial(j as u64));
            }
            for (j, z) in ZETA_EVEN.iter().enumerate() {
                let p = 2 * (j + 1) - 1;
                if p <= n {
                    out[p + 1] += Complex64::new(2.0 * z, 0.0);
                }
            }
        }
        None => {
            for j in 0..=n {
                out[j + 1] = polygamma(j as u32, x0)? / factorial(j as u64);
            }
        }
    }
    Ok(out)
}

/// ζ(2), ζ(4), ζ(6), ζ(8), ζ(10).
const ZETA_EVEN: [f64; 5] = [
    1.644_934_066_848_226_4,
    1.082_323_233_711_138_2,
    1.017_343_061_984_449_1,
    1.004_077_356_197_944_4,
    1.000_994_575_127_818_1,
];

fn series_exp(s: &[Complex64]) -> Vec<Complex64> {
    // s[0] must be zero; e_n = (1/n) Σ_{k=1}^{n} k s_k e_{n−k}
    let n = s.len();
    let mut e = vec![Complex64::zero(); n];
    e[0] = Complex64::one();
    for m in 1..n {
        let mut acc = Complex64::zero();
        for k in 1..=m {
            acc += s[k] * e[m - k] * k as f64;
        }
        e[m] = acc / m as f64;
    }
    e
}

/// ψ of a Laurent argument.
pub fn psi(x: &Laurent) -> Result<Laurent> {
    let (x0, d) = x.split();
    let coeffs = psi_coefficients(x0, ORDER as usize + 1)?;
    compose(-1, &coeffs, &d)
}

/// ψ′ of a Laurent argument.
pub fn trigamma(x: &Laurent) -> Result<Laurent> {
    let (x0, d) = x.split();
    let c = psi_coefficients(x0, ORDER as usize + 2)?;
    // d/dδ of Σ c_j δ^{j−1}
    let deriv: Vec<Complex64> = c
        .iter()
        .enumerate()
        .map(|(j, v)| *v * (j as f64 - 1.0))
        .collect();
    compose(-2, &deriv, &d)
}

/// 1/Γ of a Laurent argument.
pub fn rgamma(x: &Laurent) -> Result<Laurent> {
    let (x0, d) = x.split();
    let n = ORDER as usize + 1;
    let coeffs = match nonpositive_integer(x0) {
        Some(k) => {
            // (−1)^k sin(πδ)/π · Γ(1+k−δ)
            let base = Complex64::new(1.0 + k as f64, 0.0);
            let mut s = vec![Complex64::zero(); n + 1];
            for j in 1..=n {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                s[j] = polygamma(j as u32 - 1, base)? * (sign / factorial(j as u64));
            }
            let g = series_exp(&s);
            let mut sine = vec![Complex64::zero(); n + 1];
            for j in (1..=n).step_by(2) {
                let sign = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
                sine[j] = Complex64::new(sign * PI.powi(j as i32 - 1) / factorial(j as u64), 0.0);
            }
            let pref = factorial(k) * if k % 2 == 0 { 1.0 } else { -1.0 };
            let mut out = vec![Complex64::zero(); n + 1];
            for i in 0..=n {
                for j in 0..=n - i {
                    out[i + j] += sine[i] * g[j] * pref;
                }
            }
            out
        }
        None => {
            let mut s = vec![Complex64::zero(); n + 1];
            for j in 1..=n {
                s[j] = -polygamma(j as u32 - 1, x0)? / factorial(j as u64);
            }
            let g0 = gamma(x0)?.inv();
            series_exp(&s).into_iter().map(|v| v * g0).collect()
        }
    };
    compose(0, &coeffs, &d)
}

/// Γ of a Laurent argument.
pub fn gamma_l(x: &Laurent) -> Result<Laurent> {
    rgamma(x)?.recip()
}

/// Rising factorial of a Laurent argument.
pub fn pochhammer(x: &Laurent, n: u32) -> Laurent {
    (0..n).fold(Laurent::real(1.0), |acc, j| acc * (*x + j as f64).snapped())
}

/// H_k(x) = Σ_{j<k} 1/(x+j).
pub fn harmonic(x: &Laurent, k: u32) -> Result<Laurent> {
    let mut s = Laurent::zero();
    for j in 0..k {
        s = s + (*x + j as f64).snapped().recip()?;
    }
    Ok(s)
}

/// Plain ψ at a regular point, as a constant series.
pub fn psi_const(x: f64) -> Result<Laurent> {
    Ok(Laurent::constant(digamma(Complex64::new(x, 0.0))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{self, lemma_b2_values, psi_over_gamma_at_nonpositive};

    fn c(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    #[test]
    fn recip_roundtrip() {
        let mut a = Laurent::arg(c(0.0), 1.0);
        a = a * (Laurent::real(2.0) + Laurent::arg(c(0.0), 3.0));
        let b = a.recip().unwrap();
        let p = a * b;
        assert!((p.value() - 1.0).norm() < 1e-14);
        for j in 1..ORDER {
            assert!(p.coeff(j).norm() < 1e-12);
        }
    }

    #[test]
    fn regular_point_matches_plain_values() {
        let x = Laurent::arg(Complex64::new(0.7, 0.2), -1.0);
        let z = Complex64::new(0.7, 0.2);
        assert!((psi(&x).unwrap().value() - scalar::digamma(z).unwrap()).norm() < 1e-14);
        assert!((trigamma(&x).unwrap().value() - scalar::trigamma(z).unwrap()).norm() < 1e-13);
        assert!((rgamma(&x).unwrap().value() - scalar::rgamma(z)).norm() < 1e-14);
        // first-order coefficient is −ψ′
        let d = psi(&x).unwrap().coeff(1);
        assert!((d + scalar::trigamma(z).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn laurent_of_rgamma_matches_taylor_numerically() {
        // 1/Γ(−2 − ε) sampled at small ε against the truncated series
        let x = Laurent::arg(c(-2.0), -1.0);
        let s = rgamma(&x).unwrap();
        for eps in [1e-2, 3e-3] {
            let direct = scalar::rgamma(c(-2.0 - eps));
            let series: Complex64 = (-ORDER..=ORDER).map(|j| s.coeff(j) * eps.powi(j)).sum();
            assert!((direct - series).norm() < 1e-12, "{direct} vs {series}");
        }
        let p = psi(&x).unwrap();
        for eps in [1e-2, 3e-3] {
            let direct = scalar::digamma(c(-2.0 - eps)).unwrap();
            let series: Complex64 = (-ORDER..=ORDER).map(|j| p.coeff(j) * eps.powi(j)).sum();
            assert!((direct - series).norm() < 1e-10 * direct.norm(), "{direct} vs {series}");
        }
    }

    #[test]
    fn reproduces_limit_identities() {
        for k in 0..6u32 {
            let x = Laurent::arg(c(-(k as f64)), -1.0);
            let p = psi(&x).unwrap();
            let r = rgamma(&x).unwrap();
            let t = trigamma(&x).unwrap();
            let v = p * r;
            assert!(v.pole_magnitude() < 1e-12);
            assert!((v.value().re - psi_over_gamma_at_nonpositive(k)).abs() < 1e-10);
            let (l1, l2) = lemma_b2_values(k);
            let a = t * r * r;
            let b = (t - p * p) * r;
            assert!((a.value() - l1).norm() < 1e-9 * l1.norm());
            assert!((b.value() - l2).norm() < 1e-9 * l2.norm().max(1.0));
        }
    }
}

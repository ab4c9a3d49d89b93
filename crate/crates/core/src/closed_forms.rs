//! Closed forms for the bilinear integrals of Tricomi functions and the
//! generalized Gram matrix of Laguerre polynomials.
//!
//! Expressions that contain `ψ` or `1/Γ` are evaluated as Laurent jets in a
//! common shift `θᵢ → θᵢ + ε`, keeping `θ₁ − θ₂` fixed. At parameters where
//! a factor sits on a pole (the Laguerre points `θ = −1−α−2n` among them) the
//! `ε⁰` coefficient is the finite limit.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::confluent::near_integer;
use crate::error::{Error, Result};
use crate::laurent::{self as jet, Laurent};
use crate::scalar::{digamma_at_positive_integer, factorial, gamma, rgamma};

/// `θ₁` and `θ₂` closer than this use the equal-`θ` formulas.
pub const THETA_EPS: f64 = 1e-6;
/// `α` closer than this to an integer uses the integer-`α` formulas.
pub const ALPHA_EPS: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// `α ∉ −ℕ`: `Γ(1+n+α)/n! δ_{mn}`.
    Classical,
    /// `α ∈ −ℕ`, both degrees at least `|α|`: `(n−|α|)!/n! δ_{mn}`.
    ReducedClassical,
    /// `α ∈ −ℕ`, some degree below `|α|`.
    Anomalous,
}

impl Regime {
    pub fn label(&self) -> &'static str {
        match self {
            Regime::Classical => "classical",
            Regime::ReducedClassical => "reduced-classical",
            Regime::Anomalous => "anomalous",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    pub alpha: Complex64,
    pub dim: usize,
    pub entries: Vec<Vec<Complex64>>,
    pub regime: Vec<Vec<Regime>>,
}

fn sign(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `(c + t)/2` for a jet `t`.
fn half(t: &Laurent, c: Complex64) -> Laurent {
    (*t + Laurent::constant(c)) * 0.5
}

fn jet_theta(theta: Complex64) -> Laurent {
    Laurent::arg(theta, 1.0)
}

/// `∫ U_{θ₁,α} U_{θ₂,α} e^{−z} z^α dz`, continued to the generalized integral
/// for every `α`: the convergent formulas for `α ∉ ℤ` and the anomalous ones
/// for `α ∈ ℤ`, with `θ₁ = θ₂` handled by the l'Hôpital forms.
pub fn tricomi_bilinear(theta1: Complex64, theta2: Complex64, alpha: Complex64) -> Result<Complex64> {
    let equal = (theta1 - theta2).norm() < THETA_EPS;
    match near_integer(alpha, ALPHA_EPS) {
        Some(m) => {
            if equal {
                anomalous_equal(0.5 * (theta1 + theta2), m.unsigned_abs())
            } else {
                anomalous_distinct(theta1, theta2, m.unsigned_abs())
            }
        }
        None => {
            if equal {
                generic_equal(0.5 * (theta1 + theta2), alpha)
            } else {
                Ok(generic_distinct(theta1, theta2, alpha))
            }
        }
    }
}

fn generic_distinct(t1: Complex64, t2: Complex64, a: Complex64) -> Complex64 {
    let r = |t: Complex64, s: f64| rgamma((1.0 + t + a * s) * 0.5);
    let bracket = r(t1, -1.0) * r(t2, 1.0) - r(t2, -1.0) * r(t1, 1.0);
    bracket * (2.0 * PI) / ((t1 - t2) * (a * PI).sin())
}

fn generic_equal(theta: Complex64, a: Complex64) -> Result<Complex64> {
    let t = jet_theta(theta);
    let (xp, xm) = (half(&t, 1.0 + a), half(&t, 1.0 - a));
    let v = (jet::psi(&xp)? - jet::psi(&xm)?) * jet::rgamma(&xp)? * jet::rgamma(&xm)?;
    Ok(v.value() * PI / (a * PI).sin())
}

/// The anomalous formula for `θ₁ ≠ θ₂`, `|α| = n`, exactly as stated.
fn anomalous_distinct(theta1: Complex64, theta2: Complex64, n: u64) -> Result<Complex64> {
    let (t1, t2) = (jet_theta(theta1), jet_theta(theta2));
    let nf = n as f64;
    let s = sign(n as i64);
    let c = |x: f64| Complex64::new(x, 0.0);
    let bracket = |ta: &Laurent, tb: &Laurent| -> Result<Laurent> {
        Ok((jet::psi(&half(ta, c(1.0 + nf)))? + jet::psi(&half(ta, c(1.0 - nf)))?)
            * jet::rgamma(&half(ta, c(1.0 - nf)))?
            * jet::rgamma(&half(tb, c(1.0 + nf)))?)
    };
    let first = (bracket(&t1, &t2)? - bracket(&t2, &t1)?) * s;
    let first = first.value() / (theta1 - theta2);

    let pre = jet::rgamma(&half(&t1, c(1.0 + nf)))? * jet::rgamma(&half(&t2, c(1.0 + nf)))? * s;
    let x1 = half(&t1, c(1.0 - nf));
    let y2 = half(&t2, c(3.0 - nf));
    let mut sum = Laurent::zero();
    for k in 0..n {
        let rest = (n - 1 - k) as u32;
        let yk = y2 + k as f64;
        let psis = -digamma_at_positive_integer(n - k) - digamma_at_positive_integer(k + 1);
        let bracket = Laurent::real(psis) + jet::harmonic(&x1, k as u32)? * 0.5
            - jet::harmonic(&yk, rest)? * 0.5;
        sum = sum + jet::pochhammer(&x1, k as u32) * jet::pochhammer(&yk, rest) * bracket;
    }
    Ok(first + (pre * sum).value())
}

/// The anomalous formula for `θ₁ = θ₂`.
fn anomalous_equal(theta: Complex64, n: u64) -> Result<Complex64> {
    let t = jet_theta(theta);
    let nf = n as f64;
    let c = |x: f64| Complex64::new(x, 0.0);
    // α taken as −n; the formula is even in α
    let (xp, xm) = (half(&t, c(1.0 - nf)), half(&t, c(1.0 + nf)));
    let (hp, hm) = (half(&t, c(1.0 + nf)), half(&t, c(1.0 - nf)));
    let psi_hp = jet::psi(&hp)?;
    let psi_hm = jet::psi(&hm)?;
    let mut inner = psi_hp * psi_hp - psi_hm * psi_hm + jet::trigamma(&xp)? + jet::trigamma(&xm)?;
    for k in 0..n {
        let num = digamma_at_positive_integer(n - k) + digamma_at_positive_integer(k + 1);
        inner = inner - (hm + k as f64).snapped().recip()? * (2.0 * num);
    }
    let v = jet::rgamma(&xp)? * jet::rgamma(&xm)? * inner * (0.5 * sign(n as i64));
    Ok(v.value())
}

/// Finite part at `α = −m` of `∫ Γ(b₁)Γ(b₂) U_{θ₁,α} U_{θ₂,α} e^{−z} z^α`,
/// `bᵢ = (1+θᵢ−α)/2`.
pub fn tricomi_bilinear_finite_part(theta1: Complex64, theta2: Complex64, m: u32) -> Result<Complex64> {
    if (theta1 - theta2).norm() < THETA_EPS {
        return Err(Error::InvalidArgument(
            "finite part needs distinct θ₁, θ₂".into(),
        ));
    }
    let mf = m as f64;
    let c = |x: f64| Complex64::new(x, 0.0);
    let term = |theta: Complex64| -> Result<Complex64> {
        let t = jet_theta(theta);
        let v = jet::pochhammer(&half(&t, c(1.0 - mf)), m)
            * (jet::psi(&half(&t, c(1.0 + mf)))? + jet::psi(&half(&t, c(1.0 - mf)))?);
        Ok(v.value())
    };
    Ok((term(theta1)? - term(theta2)?) * sign(m as i64) / (theta1 - theta2))
}

/// Generalized `∫ L_m^α L_n^α e^{−z} z^α dz` and the regime it falls in.
pub fn laguerre_gram_entry(m: usize, n: usize, alpha: Complex64) -> (Complex64, Regime) {
    let neg = near_integer(alpha, ALPHA_EPS).filter(|k| *k < 0);
    let Some(k) = neg else {
        if m != n {
            return (Complex64::new(0.0, 0.0), Regime::Classical);
        }
        let v = gamma(alpha + 1.0 + n as f64).unwrap_or(Complex64::new(f64::NAN, 0.0));
        return (v / factorial(n as u64), Regime::Classical);
    };
    let na = k.unsigned_abs() as usize;
    let (hi, lo) = if m >= n { (m, n) } else { (n, m) };
    if lo >= na {
        let v = if m == n {
            factorial((n - na) as u64) / factorial(n as u64)
        } else {
            0.0
        };
        return (Complex64::new(v, 0.0), Regime::ReducedClassical);
    }
    let den = factorial(lo as u64) * factorial((na - lo - 1) as u64);
    let v = if hi > lo {
        sign(lo as i64 - na as i64) / (den * (hi - lo) as f64)
    } else {
        sign(lo as i64 - na as i64 + 1) * digamma_at_positive_integer((na - lo) as u64) / den
    };
    (Complex64::new(v, 0.0), Regime::Anomalous)
}

/// The `dim × dim` generalized Gram matrix of `L_0^α … L_{dim−1}^α`.
pub fn gram_matrix(alpha: Complex64, dim: usize) -> Result<GramMatrix> {
    if dim == 0 {
        return Err(Error::InvalidArgument("Gram matrix dimension must be ≥ 1".into()));
    }
    let rows: Vec<Vec<(Complex64, Regime)>> = (0..dim)
        .into_par_iter()
        .map(|m| (0..dim).map(|n| laguerre_gram_entry(m, n, alpha)).collect())
        .collect();
    Ok(GramMatrix {
        alpha,
        dim,
        entries: rows.iter().map(|r| r.iter().map(|e| e.0).collect()).collect(),
        regime: rows.iter().map(|r| r.iter().map(|e| e.1).collect()).collect(),
    })
}

#[cfg(test)]
mod tests;

//! Anomalous generalized integrals by continuation in the exponent `α`.
//!
//! If `α ↦ gen∫ f(r, α) dr` is analytic near `−m` except for the simple pole
//! contributed by the term `f_{m−1}(α) r^{α+m−1}`, then
//!
//! ```text
//! gen∫ f(r, −m) dr = fp_{α=−m} gen∫ f(r, α) dr − ∂_α f_{m−1}(α)|_{α=−m}.
//! ```

use num_complex::Complex64;

use crate::closed_forms::tricomi_bilinear;
use crate::error::{Error, Result};
use crate::expansions::tricomi_pair_coefficient;
use crate::scalar::{factorial, gamma, rgamma};

/// Default offsets from the pole used by [`finite_part`].
pub const EPS_LADDER: f64 = 1e-3;
/// Step of the central difference for `∂_α f_{m−1}`.
pub const DERIVATIVE_STEP: f64 = 1e-4;

type ValueFn = dyn Fn(Complex64) -> Result<Complex64> + Send + Sync;
type CoeffFn = dyn Fn(Complex64, u32) -> Result<Complex64> + Send + Sync;

/// A family of integrals analytic in `α`: its values and the coefficients
/// `f_n(α)` of `r^{α+n}` in the integrand.
pub struct AlphaFamily {
    pub value_at: Box<ValueFn>,
    pub coeff_at: Box<CoeffFn>,
}

impl AlphaFamily {
    pub fn new(
        value_at: impl Fn(Complex64) -> Result<Complex64> + Send + Sync + 'static,
        coeff_at: impl Fn(Complex64, u32) -> Result<Complex64> + Send + Sync + 'static,
    ) -> Self {
        AlphaFamily {
            value_at: Box::new(value_at),
            coeff_at: Box::new(coeff_at),
        }
    }

    /// `gen∫ e^{−z} z^α dz = Γ(1+α)`, with `f_n(α) = (−1)^n/n!`.
    pub fn gamma() -> Self {
        Self::new(
            |a| gamma(a + 1.0),
            |_, n| {
                let s = if n % 2 == 0 { 1.0 } else { -1.0 };
                Ok(Complex64::new(s / factorial(n as u64), 0.0))
            },
        )
    }

    /// `gen∫ U_{θ₁,α} U_{θ₂,α} e^{−z} z^α dz` on the side `Re α < 0`.
    pub fn tricomi_pair(theta1: Complex64, theta2: Complex64) -> Self {
        Self::new(
            move |a| tricomi_bilinear(theta1, theta2, a),
            move |a, n| tricomi_pair_coefficient(theta1, theta2, a, n),
        )
    }

    /// The Tricomi pair multiplied by `Γ((1+θ₁−α)/2) Γ((1+θ₂−α)/2)`.
    pub fn tricomi_pair_prefactored(theta1: Complex64, theta2: Complex64) -> Self {
        let pre = move |a: Complex64| {
            let r = rgamma((1.0 + theta1 - a) * 0.5) * rgamma((1.0 + theta2 - a) * 0.5);
            if r == Complex64::new(0.0, 0.0) {
                Err(Error::Pole {
                    function: "Γ prefactor",
                    at: a,
                })
            } else {
                Ok(r.inv())
            }
        };
        Self::new(
            move |a| Ok(tricomi_bilinear(theta1, theta2, a)? * pre(a)?),
            move |a, n| Ok(tricomi_pair_coefficient(theta1, theta2, a, n)? * pre(a)?),
        )
    }
}

fn pole(m: u32) -> Complex64 {
    Complex64::new(-(m as f64), 0.0)
}

/// Symmetric average and residue estimate at offset `eps`.
fn sweep(fam: &AlphaFamily, m: u32, eps: f64) -> Result<(Complex64, Complex64)> {
    let up = (fam.value_at)(pole(m) + eps)?;
    let dn = (fam.value_at)(pole(m) - eps)?;
    Ok(((up + dn) * 0.5, (up - dn) * (eps * 0.5)))
}

/// Finite part at `α = −m` from values at `−m ± eps` and `−m ± eps/2`,
/// combined by one Richardson step.
pub fn finite_part(fam: &AlphaFamily, m: u32, eps: f64) -> Result<Complex64> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let (a, _) = sweep(fam, m, eps)?;
    let (b, _) = sweep(fam, m, eps * 0.5)?;
    let v = (b * 4.0 - a) / 3.0;
    let change = (v - b).norm();
    if !(v.re.is_finite() && v.im.is_finite()) || change > 1e-2 * v.norm().max(1.0) {
        return Err(Error::Convergence(format!(
            "finite-part extrapolation unstable (change {change:e})"
        )));
    }
    Ok(v)
}

/// Residue at `α = −m` from the same sweep.
pub fn residue(fam: &AlphaFamily, m: u32, eps: f64) -> Result<Complex64> {
    let (_, a) = sweep(fam, m, eps)?;
    let (_, b) = sweep(fam, m, eps * 0.5)?;
    Ok((b * 4.0 - a) / 3.0)
}

/// `∂_α f_n(α)` by a central difference with one Richardson refinement.
pub fn coefficient_derivative(fam: &AlphaFamily, alpha: Complex64, n: u32) -> Result<Complex64> {
    let d = |h: f64| -> Result<Complex64> {
        Ok(((fam.coeff_at)(alpha + h, n)? - (fam.coeff_at)(alpha - h, n)?) / (2.0 * h))
    };
    let (a, b) = (d(DERIVATIVE_STEP)?, d(DERIVATIVE_STEP * 0.5)?);
    Ok((b * 4.0 - a) / 3.0)
}

/// `gen∫ f(r, −m) dr` as the finite part minus `∂_α f_{m−1}(−m)`.
pub fn anomalous_value(fam: &AlphaFamily, m: u32) -> Result<Complex64> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    Ok(finite_part(fam, m, EPS_LADDER)? - coefficient_derivative(fam, pole(m), m - 1)?)
}

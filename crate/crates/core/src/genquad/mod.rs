//! Generalized integrals on `(0, ∞)`.
//!
//! For an integrand with the small-`r` behaviour `f ~ Σ_{k∈Ω} f_k r^k`,
//!
//! ```text
//! gen∫₀^∞ f = Σ_{k≠−1} f_k/(k+1) + ∫₀¹ (f − Σ f_k r^k) dr + ∫₁^∞ f dr.
//! ```
//!
//! The split point may be moved to any `s > 0`; the exactly equivalent form
//!
//! ```text
//! Σ_{k≠−1} f_k s^{k+1}/(k+1) + f_{−1} ln s + ∫₀^s (f − Σ) + ∫_s^∞ f
//! ```
//!
//! is what is computed, so the value always follows the unit-split
//! convention. The core integral uses tanh-sinh quadrature and the tail an
//! adaptive Gauss–Kronrod rule up to a cutoff where the integrand is
//! negligible.

pub mod kronrod;
pub mod tanh_sinh;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::local_series::LocalSeries;

const EXPONENT_TOL: f64 = 1e-9;

/// Behaviour of an integrand at the origin: `Σ f_k r^k (+ c ln r)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SingularExpansion {
    /// `(k, f_k)` pairs with pairwise distinct exponents.
    pub terms: Vec<(Complex64, Complex64)>,
    /// Coefficient of `ln r`, used only by [`regular_value`].
    pub log_coefficient: Complex64,
}

impl SingularExpansion {
    pub fn new(terms: Vec<(Complex64, Complex64)>) -> Result<Self> {
        for (i, (a, _)) in terms.iter().enumerate() {
            if terms[..i].iter().any(|(b, _)| (a - b).norm() < EXPONENT_TOL) {
                return Err(Error::InvalidArgument(format!(
                    "repeated exponent {a} in singular expansion"
                )));
            }
        }
        Ok(SingularExpansion {
            terms,
            log_coefficient: Complex64::zero(),
        })
    }

    /// Real exponents and coefficients.
    pub fn real(terms: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            terms
                .iter()
                .map(|(k, c)| (Complex64::new(*k, 0.0), Complex64::new(*c, 0.0)))
                .collect(),
        )
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn with_log(mut self, c: Complex64) -> Self {
        self.log_coefficient = c;
        self
    }

    /// `Σ f_k r^k`, without the logarithm.
    pub fn eval(&self, r: f64) -> Complex64 {
        let lr = r.ln();
        self.terms.iter().map(|(k, c)| c * (k * lr).exp()).sum()
    }

    pub fn coefficient(&self, k: Complex64) -> Complex64 {
        self.terms
            .iter()
            .filter(|(e, _)| (e - k).norm() < EXPONENT_TOL)
            .map(|(_, c)| *c)
            .sum()
    }

    fn significant(&self, c: Complex64) -> bool {
        let big = self.terms.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max);
        c.norm() > 1e-13 * big
    }

    /// Negative integers `−n` whose coefficient is non-zero, ascending.
    pub fn anomalous_exponents(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .terms
            .iter()
            .filter(|(k, c)| {
                let n = k.re.round();
                n <= -1.0 && (k - n).norm() < EXPONENT_TOL && self.significant(*c)
            })
            .map(|(k, _)| k.re.round() as i64)
            .collect();
        out.sort_unstable();
        out
    }

    fn is_minus_one(k: Complex64) -> bool {
        (k + 1.0).norm() < EXPONENT_TOL
    }

    /// `Σ_{k≠−1} f_k s^{k+1}/(k+1) + f_{−1} ln s`.
    fn split_terms(&self, s: f64) -> Complex64 {
        let ls = s.ln();
        self.terms
            .iter()
            .map(|(k, c)| {
                if Self::is_minus_one(*k) {
                    c * ls
                } else {
                    c * ((*k + 1.0) * ls).exp() / (*k + 1.0)
                }
            })
            .sum()
    }
}

/// Tolerances and geometry of the numerical generalized integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Split between the subtracted core and the tail.
    pub split: f64,
    /// Upper end of the tail integral; chosen automatically when `None`.
    pub tail_cutoff: Option<f64>,
    /// Maximum number of tanh-sinh step halvings.
    pub max_levels: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-14,
            rel_tol: 1e-13,
            split: 1.0,
            tail_cutoff: None,
            max_levels: 12,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument("tolerances must be positive".into()));
        }
        if !(self.split > 0.0 && self.split.is_finite()) {
            return Err(Error::InvalidArgument(format!("bad split {}", self.split)));
        }
        if let Some(r) = self.tail_cutoff {
            if !(r > self.split) {
                return Err(Error::InvalidArgument(format!(
                    "tail cutoff {r} must exceed the split {}",
                    self.split
                )));
            }
        }
        if self.max_levels < 3 {
            return Err(Error::InvalidArgument("max_levels must be at least 3".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenIntegralResult {
    pub value: Complex64,
    /// True when some exponent `−n`, `n ≥ 1`, carries a non-zero coefficient.
    pub anomalous: bool,
    pub anomalous_exponents: Vec<i64>,
    /// `Σ_{k≠−1} f_k/(k+1)`.
    pub finite_part_terms: Complex64,
    pub quadrature_error_estimate: f64,
    /// A non-zero `r^{−1}` coefficient makes the value depend on the length
    /// scale; it is reported for the unit split convention.
    pub scale_dependent: bool,
}

/// Picks where to stop evaluating `f − Σ f_k r^k` from values, balancing
/// the rounding noise of the subtraction against the error of modelling the
/// remainder below the cutoff as `g(r_min)(r/r_min)^β`.
fn noise_cutoff(exp0: &SingularExpansion, s: f64, g_at_s: f64, beta: f64) -> f64 {
    let noisy: Vec<(f64, f64)> = exp0
        .terms
        .iter()
        .filter(|(k, _)| k.re < -1.0)
        .map(|(k, c)| (k.re, c.norm()))
        .collect();
    if noisy.is_empty() {
        return 0.0;
    }
    let eps = 8.0 * f64::EPSILON;
    let amp = g_at_s.max(1e-300) / s.powf(beta);
    let mut best = (f64::INFINITY, 0.0);
    let mut r = s * 0.5;
    while r > 1e-250 {
        let model = amp * r.powf(beta + 2.0) / s;
        let noise: f64 = noisy
            .iter()
            .map(|(k, c)| eps * c * r.powf(k + 1.0) / (k + 1.0).abs())
            .sum();
        let total = model + noise;
        if total < best.0 {
            best = (total, r);
        }
        r *= 0.5;
    }
    best.1
}

/// Apparent power of `g` near `r`, from its values at `r` and `2r`.
fn local_exponent<G: Fn(f64) -> Complex64>(g: &G, r: f64) -> f64 {
    let (a, b) = (g(r).norm(), g(2.0 * r).norm());
    if a == 0.0 || b == 0.0 {
        return f64::NAN;
    }
    (b / a).log2()
}

const TAIL_PROBES: [f64; 6] = [1.0, 1.0913, 1.2371, 1.3819, 1.5277, 1.7093];

fn tail<F: Fn(f64) -> Complex64 + ?Sized>(
    f: &F,
    cfg: &QuadratureConfig,
    scale: f64,
) -> Result<(Complex64, f64)> {
    let s = cfg.split;
    let r_end = match cfg.tail_cutoff {
        Some(r) => r,
        None => {
            let bound = cfg.abs_tol * (-5f64).exp();
            let mut r = s.max(1.0) * 2.0;
            loop {
                // sampled at irregular points so that zeros of f cannot fake decay
                if TAIL_PROBES
                    .iter()
                    .all(|t| f(t * r).norm() * (t * r).max(1.0) < bound)
                {
                    break r;
                }
                r *= 1.5;
                if r > 1e5 {
                    return Err(Error::Convergence(format!(
                        "integrand does not decay below {bound:e} before r = 1e5"
                    )));
                }
            }
        }
    };
    let tol = cfg.abs_tol.max(cfg.rel_tol * scale);
    kronrod::integrate(f, s, r_end, tol)
}

fn assemble(
    exp0: &SingularExpansion,
    cfg: &QuadratureConfig,
    core: (Complex64, f64),
    tail: (Complex64, f64),
) -> GenIntegralResult {
    let finite_part_terms = exp0
        .terms
        .iter()
        .filter(|(k, _)| !SingularExpansion::is_minus_one(*k))
        .map(|(k, c)| c / (*k + 1.0))
        .sum();
    let anomalous_exponents = exp0.anomalous_exponents();
    GenIntegralResult {
        value: core.0 + tail.0 + exp0.split_terms(cfg.split),
        anomalous: !anomalous_exponents.is_empty(),
        scale_dependent: anomalous_exponents.contains(&-1),
        anomalous_exponents,
        finite_part_terms,
        quadrature_error_estimate: core.1 + tail.1,
    }
}

fn check_core(core: (Complex64, f64), cfg: &QuadratureConfig) -> Result<()> {
    let tol = cfg.abs_tol.max(cfg.rel_tol * core.0.norm());
    if core.1 > 1e4 * tol.max(1e-10) {
        return Err(Error::Convergence(format!(
            "subtracted integrand did not converge (error {:e}); singular expansion incomplete?",
            core.1
        )));
    }
    Ok(())
}

/// Generalized integral of a plain callable.
///
/// Near the origin `f − Σ f_k r^k` is formed from values, so strongly
/// singular expansions cost accuracy; padding `exp0` with the next regular
/// terms, or supplying a [`LocalSeries`] through [`gen_integrate_local`],
/// recovers it.
pub fn gen_integrate<F: Fn(f64) -> Complex64 + ?Sized>(
    f: &F,
    exp0: &SingularExpansion,
    cfg: &QuadratureConfig,
) -> Result<GenIntegralResult> {
    cfg.validate()?;
    let s = cfg.split;
    let g = |r: f64| f(r) - exp0.eval(r);
    let beta = exp0
        .terms
        .iter()
        .map(|(k, _)| k.re)
        .fold(f64::NEG_INFINITY, f64::max)
        + 1.0;
    let gs = g(s).norm();
    let mut beta = beta;
    let mut r_min = noise_cutoff(exp0, s, gs, beta);
    for _ in 0..2 {
        let probe = if r_min > 0.0 { 8.0 * r_min } else { 1e-6 * s };
        let p = local_exponent(&g, probe.min(0.25 * s));
        if p <= -0.98 {
            return Err(Error::Convergence(format!(
                "subtracted integrand behaves like r^{p:.2} at the origin; singular expansion incomplete"
            )));
        }
        if r_min == 0.0 || !p.is_finite() {
            break;
        }
        // keep the guess unless the values clearly disagree with it
        if (p - beta).abs() < 0.25 {
            break;
        }
        let half = (2.0 * p).round() / 2.0;
        beta = if (p - half).abs() < 0.1 { half } else { p.min(20.0) };
        r_min = noise_cutoff(exp0, s, gs, beta);
    }
    let (mut v, mut e) =
        tanh_sinh::integrate(&g, r_min, s, cfg.abs_tol, cfg.rel_tol, cfg.max_levels)?;
    if r_min > 0.0 {
        let model = g(r_min) * r_min / (beta + 1.0);
        v += model;
        e += model.norm() * r_min / s;
    }
    check_core((v, e), cfg)?;
    let t = tail(f, cfg, v.norm())?;
    Ok(assemble(exp0, cfg, (v, e), t))
}

/// Generalized integral of `f` whose generalized power series at the origin
/// is `local`. Below `local.radius` the subtracted integrand is evaluated
/// from the series with the terms of `exp0` removed exactly.
pub fn gen_integrate_local<F: Fn(f64) -> Complex64 + ?Sized>(
    f: &F,
    local: &LocalSeries,
    exp0: &SingularExpansion,
    cfg: &QuadratureConfig,
) -> Result<GenIntegralResult> {
    cfg.validate()?;
    for (k, c) in &exp0.terms {
        let have = local.coefficient(*k);
        if (have - c).norm() > 1e-6 * c.norm().max(have.norm()) {
            return Err(Error::InvalidArgument(format!(
                "singular expansion gives {c} at r^{k}, local series {have}"
            )));
        }
    }
    // drop the matched powers outright so rounding residue of strongly
    // singular terms cannot overflow near the origin
    let exponents: Vec<Complex64> = exp0.terms.iter().map(|(k, _)| *k).collect();
    let rem = local.without_powers(&exponents);
    let scale = local.terms().iter().map(|t| t.coeff.norm()).fold(0.0, f64::max);
    if let Some(t) = rem
        .terms()
        .iter()
        .find(|t| t.exponent.re <= -1.0 && t.coeff.norm() > 1e-10 * scale.max(1.0))
    {
        return Err(Error::Convergence(format!(
            "singular expansion misses the term r^{} (ln r)^{} with coefficient {}",
            t.exponent, t.log_power, t.coeff
        )));
    }
    let s = cfg.split;
    let radius = local.radius;
    let g = |r: f64| {
        if r <= radius {
            rem.eval(r)
        } else {
            f(r) - exp0.eval(r)
        }
    };
    let core = if s <= radius {
        tanh_sinh::integrate(&g, 0.0, s, cfg.abs_tol, cfg.rel_tol, cfg.max_levels)?
    } else {
        let (a, ea) =
            tanh_sinh::integrate(&g, 0.0, radius, cfg.abs_tol, cfg.rel_tol, cfg.max_levels)?;
        let (b, eb) = kronrod::integrate(&g, radius, s, cfg.abs_tol.max(cfg.rel_tol * a.norm()))?;
        (a + b, ea + eb)
    };
    check_core(core, cfg)?;
    let t = tail(f, cfg, core.0.norm())?;
    Ok(assemble(exp0, cfg, core, t))
}

/// Regular value at the origin,
/// `rv₀F = lim_{r→0} (F(r) − Σ_{k≠0} F_k r^k − c ln r)`,
/// by Richardson extrapolation over `r = 2^{−j}/4`, `j = 0…8`.
///
/// The remainder is assumed to consist of powers `r^{k+n}` with `k` an
/// exponent of `exp0` (or 0) and `n ≥ 1`; the eight smallest positive ones
/// are eliminated. If that does not settle, the half-integer ladder
/// `0.5, 1, …, 4` is tried instead.
pub fn regular_value<F: Fn(f64) -> Complex64 + ?Sized>(
    f: &F,
    exp0: &SingularExpansion,
) -> Result<Complex64> {
    regular_value_with(f, exp0, &remainder_exponents(exp0, 8), 0.25, 8)
        .or_else(|_| regular_value_with(f, exp0, &HALF_INTEGER_EXPONENTS, 0.25, 8))
}

const HALF_INTEGER_EXPONENTS: [f64; 8] = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0];

fn remainder_exponents(exp0: &SingularExpansion, count: usize) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    let bases = std::iter::once(0.0).chain(exp0.terms.iter().map(|(k, _)| k.re));
    for b in bases {
        for n in 1..=count {
            let e = b + n as f64;
            if e > EXPONENT_TOL && !out.iter().any(|x| (x - e).abs() < EXPONENT_TOL) {
                out.push(e);
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out.truncate(count);
    out
}

/// [`regular_value`] with explicit remainder exponents, start radius and
/// number of halvings.
pub fn regular_value_with<F: Fn(f64) -> Complex64 + ?Sized>(
    f: &F,
    exp0: &SingularExpansion,
    exponents: &[f64],
    r0: f64,
    levels: usize,
) -> Result<Complex64> {
    let h = |r: f64| {
        let mut v = f(r) - exp0.log_coefficient * r.ln();
        for (k, c) in &exp0.terms {
            if k.norm() >= EXPONENT_TOL {
                v -= c * (k * r.ln()).exp();
            }
        }
        v
    };
    let rs: Vec<f64> = (0..=levels).map(|j| r0 * 0.5f64.powi(j as i32)).collect();
    let mut table: Vec<Complex64> = rs.iter().map(|r| h(*r)).collect();
    let depth = exponents.len().min(levels);
    let mut last_change = f64::INFINITY;
    for p in exponents.iter().take(depth) {
        let q = 2f64.powf(*p);
        let next: Vec<Complex64> = table
            .windows(2)
            .map(|w| (w[1] * q - w[0]) / (q - 1.0))
            .collect();
        if next.len() >= 2 {
            last_change = (next[next.len() - 1] - next[next.len() - 2]).norm();
        }
        table = next;
    }
    let v = *table.last().expect("non-empty table");
    if !(v.re.is_finite() && v.im.is_finite()) || last_change > 1e-4 * v.norm().max(1.0) {
        return Err(Error::Convergence(format!(
            "regular value does not settle (last change {last_change:e}); expansion wrong?"
        )));
    }
    Ok(v)
}

/// Both sides of the integration-by-parts rule
/// `gen∫ f g′ = −gen∫ f′ g − rv₀(f g)` for `f g → 0` at infinity.
pub struct PartsProblem<'a> {
    pub f: &'a dyn Fn(f64) -> Complex64,
    pub df: &'a dyn Fn(f64) -> Complex64,
    pub g: &'a dyn Fn(f64) -> Complex64,
    pub dg: &'a dyn Fn(f64) -> Complex64,
    /// Expansion of `f g′` at the origin.
    pub f_dg: SingularExpansion,
    /// Expansion of `f′ g`.
    pub df_g: SingularExpansion,
    /// Expansion of `f g`.
    pub fg: SingularExpansion,
}

pub fn integrate_by_parts_check(
    p: &PartsProblem,
    cfg: &QuadratureConfig,
) -> Result<(Complex64, Complex64)> {
    let lhs = gen_integrate(&|r: f64| (p.f)(r) * (p.dg)(r), &p.f_dg, cfg)?.value;
    let dfg = gen_integrate(&|r: f64| (p.df)(r) * (p.g)(r), &p.df_g, cfg)?.value;
    let rv = regular_value(&|r: f64| (p.f)(r) * (p.g)(r), &p.fg)?;
    Ok((lhs, -dfg - rv))
}

#[cfg(test)]
mod tests;

//! Kummer, Olver and Tricomi confluent hypergeometric functions in the
//! Lie-algebraic parametrisation
//!
//! ```text
//! a = (1+α+θ)/2,   b = 1+a−c = (1−α+θ)/2,   c = 1+α
//! ```
//!
//! for real `z`. `U` is computed by the first applicable of
//!
//! 1. the terminating `₂F₀` sum when `a` or `b` is a non-positive integer,
//! 2. the optimally truncated asymptotic series for large `z`,
//! 3. for `z ≥ 2`, continuation of the asymptotic value towards the origin
//!    along the differential equation,
//! 4. the logarithmic series when `α` is (numerically) an integer,
//! 5. the connection formula
//!    `U = π/sin πα · (−bF_{θ,α}/Γ(b) + z^{−α} bF_{θ,−α}/Γ(a))`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::local_series::LocalSeries;
use crate::scalar::{digamma, factorial, nonpositive_integer, rgamma, EULER_GAMMA};

/// Distance from an integer below which `α` is treated as that integer.
pub const ALPHA_SWITCH_EPS: f64 = 1e-8;
/// Beyond this `z` the asymptotic series is always used.
pub const Z_ASYM: f64 = 40.0;
/// Between this and [`Z_ASYM`] the asymptotic series is used when accurate.
const Z_ASYM_TRY: f64 = 10.0;
/// From here up to the asymptotic region `U` is integrated in from infinity.
const Z_ODE: f64 = 2.0;
const SERIES_TOL: f64 = 1e-16;
const SERIES_CAP: usize = 10_000;
const INT_SNAP: f64 = 1e-10;

/// The parameter pair `(θ, α)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LieParams {
    pub theta: Complex64,
    pub alpha: Complex64,
}

impl LieParams {
    pub fn new(theta: Complex64, alpha: Complex64) -> Self {
        LieParams { theta, alpha }
    }

    pub fn real(theta: f64, alpha: f64) -> Self {
        Self::new(Complex64::new(theta, 0.0), Complex64::new(alpha, 0.0))
    }

    /// From the classical `₁F₁(a; c; z)` parameters.
    pub fn from_classical(a: Complex64, c: Complex64) -> Self {
        LieParams {
            theta: a * 2.0 - c,
            alpha: c - 1.0,
        }
    }

    pub fn a(&self) -> Complex64 {
        (self.theta + self.alpha + 1.0) * 0.5
    }

    /// `1 + a − c`.
    pub fn b(&self) -> Complex64 {
        (self.theta - self.alpha + 1.0) * 0.5
    }

    pub fn c(&self) -> Complex64 {
        self.alpha + 1.0
    }

    pub fn classical(&self) -> (Complex64, Complex64) {
        (self.a(), self.c())
    }

    /// `(θ, −α)`.
    pub fn reflected(&self) -> Self {
        LieParams {
            theta: self.theta,
            alpha: -self.alpha,
        }
    }
}

/// Returns the integer `m` when `|x − m| < eps`.
pub(crate) fn near_integer(x: Complex64, eps: f64) -> Option<i64> {
    let m = x.re.round();
    if (x - m).norm() < eps && m.abs() < 1e9 {
        Some(m as i64)
    } else {
        None
    }
}

/// `Some(n)` when `x` is within snapping distance of `−n`, `n ≥ 0`.
fn snapped_nonpositive(x: Complex64) -> Option<u64> {
    match near_integer(x, INT_SNAP) {
        Some(m) if m <= 0 => Some((-m) as u64),
        _ => None,
    }
}

/// Coefficients `(a)_n / (n! · (c)_n)` or, normalised, `(a)_n / (n! · Γ(c+n))`.
struct Coefficients {
    a: Complex64,
    c: Complex64,
    n: usize,
    pa: Complex64,
    rg: Complex64,
}

impl Coefficients {
    fn new(a: Complex64, c: Complex64, normalized: bool) -> Self {
        let rg = if normalized {
            rgamma(c)
        } else {
            Complex64::one()
        };
        Coefficients {
            a,
            c,
            n: 0,
            pa: Complex64::one(),
            rg,
        }
    }
}

impl Iterator for Coefficients {
    type Item = Complex64;
    fn next(&mut self) -> Option<Complex64> {
        let out = self.pa * self.rg;
        let nf = self.n as f64;
        self.pa *= (self.a + nf) / (nf + 1.0);
        let cn = self.c + nf;
        self.rg = if self.rg == Complex64::zero() {
            rgamma(cn + 1.0)
        } else {
            self.rg / cn
        };
        self.n += 1;
        Some(out)
    }
}

struct SeriesValue {
    /// Value, first and second derivative.
    v: [Complex64; 3],
    max_term: f64,
}

fn series_1f1(a: Complex64, c: Complex64, z: f64, normalized: bool) -> Result<SeriesValue> {
    if !normalized && nonpositive_integer(c).is_some() {
        return Err(Error::Pole {
            function: "kummer_f",
            at: c,
        });
    }
    let n_min = (-a.re).max(-c.re).max(0.0).ceil() as usize + 2;
    let mut v = [Complex64::zero(); 3];
    let mut max_term: f64 = 0.0;
    let mut small = 0;
    for (n, coef) in Coefficients::new(a, c, normalized).enumerate() {
        if n >= SERIES_CAP {
            return Err(Error::Convergence(format!(
                "1F1 series at a={a}, c={c}, z={z} exceeds {SERIES_CAP} terms"
            )));
        }
        let nf = n as f64;
        let term = coef * z.powi(n as i32);
        v[0] += term;
        if n >= 1 {
            v[1] += coef * (nf * z.powi(n as i32 - 1));
        }
        if n >= 2 {
            v[2] += coef * (nf * (nf - 1.0) * z.powi(n as i32 - 2));
        }
        max_term = max_term.max(term.norm());
        if n >= n_min {
            if coef == Complex64::zero() && (a + nf).norm() > 0.0 {
                // a is a non-positive integer: the series has terminated
                if nonpositive_integer(a).is_some() {
                    break;
                }
            }
            if term.norm() <= SERIES_TOL * v[0].norm() {
                small += 1;
                if small >= 3 {
                    break;
                }
            } else {
                small = 0;
            }
        }
    }
    Ok(SeriesValue { v, max_term })
}

/// `F_{θ,α}(z) = ₁F₁(a; 1+α; z)`.
///
/// When the direct series cancels badly the first Kummer identity
/// `₁F₁(a;c;z) = e^z ₁F₁(c−a;c;−z)` is tried and the better conditioned sum
/// is returned.
pub fn kummer_f(p: LieParams, z: f64) -> Result<Complex64> {
    let (a, c) = p.classical();
    let direct = series_1f1(a, c, z, false)?;
    let cond = direct.max_term / direct.v[0].norm();
    if cond > 1e3 {
        let other = series_1f1(c - a, c, -z, false)?;
        if other.max_term / other.v[0].norm() < cond {
            return Ok(other.v[0] * z.exp());
        }
    }
    Ok(direct.v[0])
}

/// `F_{θ,α}` together with its first two derivatives, by term-wise
/// differentiation of the power series.
pub fn kummer_f_derivs(p: LieParams, z: f64) -> Result<[Complex64; 3]> {
    let (a, c) = p.classical();
    Ok(series_1f1(a, c, z, false)?.v)
}

/// Olver's normalised function `Σ (a)_n zⁿ / (Γ(c+n) n!)`, entire in `α`.
pub fn olver_bf(p: LieParams, z: f64) -> Result<Complex64> {
    let (a, c) = p.classical();
    Ok(series_1f1(a, c, z, true)?.v[0])
}

/// `bF_{θ,α}` and its first two derivatives.
pub fn olver_bf_derivs(p: LieParams, z: f64) -> Result<[Complex64; 3]> {
    let (a, c) = p.classical();
    Ok(series_1f1(a, c, z, true)?.v)
}

/// Optimally truncated `Σ (a)_n (b)_n wⁿ / n!` for `w < 0`.
///
/// Summation stops before the smallest term, whose magnitude is returned as
/// the error estimate (zero when the series terminates).
pub fn asymptotic_2f0(
    a: Complex64,
    b: Complex64,
    w: f64,
    max_terms: usize,
) -> Result<(Complex64, f64)> {
    if !(w < 0.0) {
        return Err(Error::InvalidArgument(format!(
            "asymptotic 2F0 needs w < 0, got {w}"
        )));
    }
    let mut sum = Complex64::zero();
    let mut t = Complex64::one();
    for n in 0..max_terms {
        if t == Complex64::zero() {
            return Ok((sum, 0.0));
        }
        let nf = n as f64;
        let next = t * (a + nf) * (b + nf) * (w / (nf + 1.0));
        if next.norm() >= t.norm() {
            if n == 0 {
                return Err(Error::Divergent(format!(
                    "2F0({a}, {b}; w={w}) grows from the first term"
                )));
            }
            return Ok((sum, t.norm()));
        }
        sum += t;
        t = next;
    }
    Ok((sum, t.norm()))
}

/// Exact finite sum when `a` or `1+a−c` is a non-positive integer.
fn terminating(p: LieParams, z: f64) -> Option<Complex64> {
    let (a, b) = (p.a(), p.b());
    let order = match (snapped_nonpositive(a), snapped_nonpositive(b)) {
        (Some(n), Some(m)) => n.min(m),
        (Some(n), None) | (None, Some(n)) => n,
        (None, None) => return None,
    };
    let snap = |x: Complex64| match snapped_nonpositive(x) {
        Some(n) => Complex64::new(-(n as f64), 0.0),
        None => x,
    };
    let (sa, sb) = (snap(a), snap(b));
    let w = -1.0 / z;
    let mut t = Complex64::one();
    let mut sum = Complex64::one();
    for k in 0..order {
        let kf = k as f64;
        t *= (sa + kf) * (sb + kf) * (w / (kf + 1.0));
        sum += t;
    }
    Some((-sa * z.ln()).exp() * sum)
}

fn connection(p: LieParams, z: f64) -> Result<Complex64> {
    let s = (p.alpha * PI).sin();
    let f1 = olver_bf(p, z)?;
    let f2 = olver_bf(p.reflected(), z)?;
    let zpow = (-p.alpha * z.ln()).exp();
    Ok((-f1 * rgamma(p.b()) + zpow * f2 * rgamma(p.a())) * PI / s)
}

/// Tricomi's `U_{θ,α}(z)` for `z > 0`.
pub fn tricomi_u(p: LieParams, z: f64) -> Result<Complex64> {
    if !(z > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tricomi_u needs z > 0, got {z}"
        )));
    }
    if let Some(v) = terminating(p, z) {
        return Ok(v);
    }
    if z > Z_ASYM_TRY {
        let a = p.a();
        if let Ok((s, err)) = asymptotic_2f0(a, p.b(), -1.0 / z, 1000) {
            if err <= 1e-14 * s.norm() {
                return Ok((-a * z.ln()).exp() * s);
            }
        }
    }
    if z >= Z_ODE {
        return from_infinity(p, z);
    }
    if let Some(m) = near_integer(p.alpha, ALPHA_SWITCH_EPS) {
        return Ok(degenerate(p.theta, m, z, None)?.0);
    }
    connection(p, z)
}

/// `z^{−a} ₂F₀(a, b; −1/z)` with its relative error estimate.
fn asymptotic_u(a: Complex64, b: Complex64, z: f64) -> Option<(Complex64, f64)> {
    let (s, err) = asymptotic_2f0(a, b, -1.0 / z, 5000).ok()?;
    Some(((-a * z.ln()).exp() * s, err / s.norm()))
}

/// Carries `U` in from the asymptotic region along
/// `z U″ + (c − z) U′ − a U = 0`.
///
/// Integrating towards the origin is stable because the competing solution,
/// growing like `e^z`, shrinks in that direction.
fn from_infinity(p: LieParams, z: f64) -> Result<Complex64> {
    let (a, b, c) = (p.a(), p.b(), p.c());
    let mut zs = Z_ASYM.max(z);
    let (u, du) = loop {
        // U′(a, c, z) = −a U(a+1, c+1, z)
        if let (Some((u, e0)), Some((v, e1))) =
            (asymptotic_u(a, b, zs), asymptotic_u(a + 1.0, b, zs))
        {
            if e0 <= 1e-15 && e1 <= 1e-15 {
                break (u, -a * v);
            }
        }
        zs *= 2.0;
        if zs > 1e6 {
            return Err(Error::Convergence(format!(
                "no accurate asymptotic start for U at a={a}, c={c}"
            )));
        }
    };
    let (mut z0, mut u, mut du) = (zs, u, du);
    while z0 - z > 1e-14 * z {
        let h = (z0 / 3.0).min(z0 - z);
        (u, du) = taylor_step(a, c, z0, u, du, -h)?;
        z0 -= h;
    }
    Ok(u)
}

/// Value and derivative at `z0 + t` from the Taylor series at `z0`.
fn taylor_step(
    a: Complex64,
    c: Complex64,
    z0: f64,
    u: Complex64,
    du: Complex64,
    t: f64,
) -> Result<(Complex64, Complex64)> {
    let (mut uk, mut uk1) = (u, du);
    let mut sum = u + du * t;
    let mut dsum = du;
    let mut tk1 = t; // t^{k+1}
    let mut small = 0;
    for k in 0..2000 {
        let kf = k as f64;
        let uk2 = ((-c + z0 - kf) * (kf + 1.0) * uk1 + (a + kf) * uk)
            / (z0 * (kf + 2.0) * (kf + 1.0));
        let dterm = uk2 * ((kf + 2.0) * tk1);
        tk1 *= t;
        let term = uk2 * tk1;
        sum += term;
        dsum += dterm;
        if term.norm() <= 1e-17 * sum.norm() && dterm.norm() <= 1e-17 * dsum.norm() {
            small += 1;
            if small >= 3 {
                return Ok((sum, dsum));
            }
        } else {
            small = 0;
        }
        uk = uk1;
        uk1 = uk2;
    }
    Err(Error::Convergence(format!("Taylor step for U at z0={z0}")))
}

/// `U_{θ,m}(z)` at integer `α = m` from the logarithmic series, truncated
/// after `terms` terms of the power series part. Returns the value and a
/// bound on the truncation error.
pub fn tricomi_u_degenerate(
    theta: Complex64,
    m: i64,
    z: f64,
    terms: usize,
) -> Result<(Complex64, f64)> {
    if !(z > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tricomi_u_degenerate needs z > 0, got {z}"
        )));
    }
    degenerate(theta, m, z, Some(terms))
}

fn degenerate(theta: Complex64, m: i64, z: f64, terms: Option<usize>) -> Result<(Complex64, f64)> {
    if m < 0 {
        // U_{θ,m} = z^{−m} U_{θ,−m}
        let (v, e) = degenerate(theta, -m, z, terms)?;
        let s = z.powi(-m as i32);
        return Ok((v * s, e * s));
    }
    let p = LieParams::new(theta, Complex64::new(m as f64, 0.0));
    if let Some(v) = terminating(p, z) {
        return Ok((v, 0.0));
    }
    let series = DegenerateSeries::new(theta, m as u64)?;
    let lz = z.ln();
    let mut value = Complex64::zero();
    for (k, c) in series.finite.iter().enumerate() {
        value += *c * z.powi(-(k as i32 + 1));
    }
    let limit = terms.unwrap_or(SERIES_CAP);
    let mut small = 0;
    let mut log_sum = Complex64::zero();
    let mut it = series.log_terms();
    let mut last = 0.0;
    for j in 0..limit {
        let (c_log, c_pow) = it.next().unwrap_or_default();
        let zj = z.powi(j as i32);
        let term = (c_log * lz + c_pow) * zj;
        log_sum += term;
        last = term.norm();
        if terms.is_none() {
            if last <= SERIES_TOL * log_sum.norm() {
                small += 1;
                if small >= 3 {
                    return Ok((value + log_sum, last));
                }
            } else {
                small = 0;
            }
        }
    }
    if terms.is_none() {
        return Err(Error::Convergence(format!(
            "degenerate U series at θ={theta}, m={m}, z={z}"
        )));
    }
    let (c_log, c_pow) = it.next().unwrap_or_default();
    let next = ((c_log * lz + c_pow) * z.powi(limit as i32)).norm();
    let ratio = z / (limit as f64 + 1.0);
    let bound = if ratio < 0.5 {
        2.0 * next
    } else {
        next.max(last) / (1.0 - ratio.min(0.99))
    };
    Ok((value + log_sum, bound))
}

/// Coefficients of the logarithmic series at `α = m ≥ 0` for a
/// non-terminating `U`:
///
/// ```text
/// U = Σ_{k=1}^{m} finite[k−1] z^{−k} + Σ_j (L_j ln z + P_j) z^j
/// ```
struct DegenerateSeries {
    a: Complex64,
    m: u64,
    finite: Vec<Complex64>,
    prefactor: Complex64,
}

impl DegenerateSeries {
    fn new(theta: Complex64, m: u64) -> Result<Self> {
        let a = (theta + 1.0 + m as f64) * 0.5;
        let ra = rgamma(a);
        let mut finite = Vec::with_capacity(m as usize);
        for k in 1..=m {
            // (k−1)! (1−a+k)_{m−k} / (m−k)!
            let mut poch = Complex64::one();
            for j in 0..(m - k) {
                poch *= -a + 1.0 + k as f64 + j as f64;
            }
            finite.push(ra * poch * (factorial(k - 1) / factorial(m - k)));
        }
        let sign = if m % 2 == 0 { -1.0 } else { 1.0 };
        let prefactor = rgamma(a - m as f64) * sign;
        Ok(DegenerateSeries {
            a,
            m,
            finite,
            prefactor,
        })
    }

    fn log_terms(&self) -> DegenerateTerms {
        let harmonic_m: f64 = (1..=self.m).map(|j| 1.0 / j as f64).sum();
        DegenerateTerms {
            a: self.a,
            m: self.m,
            j: 0,
            coef: self.prefactor / factorial(self.m),
            psi_a: digamma(self.a).unwrap_or_default(),
            h_j: 0.0,
            h_jm: harmonic_m,
        }
    }
}

struct DegenerateTerms {
    a: Complex64,
    m: u64,
    j: u64,
    /// C · (a)_j / ((m+j)! j!)
    coef: Complex64,
    psi_a: Complex64,
    h_j: f64,
    h_jm: f64,
}

impl Iterator for DegenerateTerms {
    /// `(L_j, P_j)`.
    type Item = (Complex64, Complex64);
    fn next(&mut self) -> Option<Self::Item> {
        // ψ(a+j) − ψ(j+1) − ψ(j+m+1) with ψ(n+1) = −γ + H_n
        let bracket = self.psi_a - (-EULER_GAMMA + self.h_j) - (-EULER_GAMMA + self.h_jm);
        let out = (self.coef, self.coef * bracket);
        let jf = self.j as f64;
        self.coef *= (self.a + jf) / ((jf + 1.0) * (self.m as f64 + jf + 1.0));
        self.psi_a += (self.a + jf).inv();
        self.h_j += 1.0 / (jf + 1.0);
        self.h_jm += 1.0 / (self.m as f64 + jf + 1.0);
        self.j += 1;
        Some(out)
    }
}

/// Generalized power series of `U_{θ,α}` at the origin with `n_terms`
/// power-series terms in each part.
pub fn tricomi_local_series(p: LieParams, n_terms: usize, radius: f64) -> Result<LocalSeries> {
    let mut s = LocalSeries::new(radius);
    let (a, b) = (p.a(), p.b());
    if snapped_nonpositive(a).is_some() || snapped_nonpositive(b).is_some() {
        let order = snapped_nonpositive(a)
            .into_iter()
            .chain(snapped_nonpositive(b))
            .min()
            .unwrap_or(0);
        let snap = |x: Complex64| match snapped_nonpositive(x) {
            Some(n) => Complex64::new(-(n as f64), 0.0),
            None => x,
        };
        let (sa, sb) = (snap(a), snap(b));
        let mut t = Complex64::one();
        for k in 0..=order {
            let kf = k as f64;
            s.push(-sa - kf, 0, t);
            t *= (sa + kf) * (sb + kf) * (-1.0 / (kf + 1.0));
        }
        return Ok(s);
    }
    if let Some(m) = near_integer(p.alpha, ALPHA_SWITCH_EPS) {
        let shift = if m < 0 { -m as f64 } else { 0.0 };
        let ser = DegenerateSeries::new(p.theta, m.unsigned_abs())?;
        for (k, c) in ser.finite.iter().enumerate() {
            s.push(Complex64::new(shift - (k as f64 + 1.0), 0.0), 0, *c);
        }
        for (j, (l, pw)) in ser.log_terms().take(n_terms).enumerate() {
            let e = Complex64::new(j as f64 + shift, 0.0);
            s.push(e, 1, l);
            s.push(e, 0, pw);
        }
        return Ok(s);
    }
    let k = Complex64::new(PI, 0.0) / (p.alpha * PI).sin();
    let c1 = -k * rgamma(b);
    for (n, c) in Coefficients::new(a, p.c(), true).take(n_terms).enumerate() {
        s.push(Complex64::new(n as f64, 0.0), 0, c * c1);
    }
    let c2 = k * rgamma(a);
    let q = p.reflected();
    for (n, c) in Coefficients::new(q.a(), q.c(), true).take(n_terms).enumerate() {
        s.push(-p.alpha + n as f64, 0, c * c2);
    }
    Ok(s)
}

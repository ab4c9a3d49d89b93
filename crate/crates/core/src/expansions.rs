//! Small-`z` expansions of the bilinear integrands
//! `U_{θ₁,α} U_{θ₂,α} e^{−z} z^α` and `L_m^α L_n^α e^{−z} z^α`.
//!
//! The Tricomi pair is symmetric under `α ↔ −α`, so its singular exponents are
//! `−|Re α| + p`. Only the product of the two regular Kummer parts reaches
//! them, which gives, for `α` on the negative side,
//!
//! ```text
//! f_p = Σ_k (−1)^k (a₁)_k (c−a₂)_{p−k} Γ(−α−k) Γ(−α−p+k) / (k!(p−k)! Γ(b₁) Γ(b₂))
//! ```
//!
//! as the coefficient of `z^{α+p}`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::confluent::{tricomi_local_series, tricomi_u, LieParams};
use crate::error::{Error, Result};
use crate::genquad::{gen_integrate_local, GenIntegralResult, QuadratureConfig, SingularExpansion};
use crate::laguerre::{laguerre_build, laguerre_build_rational, LaguerrePoly};
use crate::local_series::LocalSeries;
use crate::scalar::{factorial, factorial_exact, gamma, pochhammer, rational_to_f64, rgamma};

/// Radius below which pair integrands are evaluated from their local series.
const LOCAL_RADIUS: f64 = 0.5;
/// Power-series terms kept per factor of a local series.
const LOCAL_TERMS: usize = 48;
const COLLISION_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BilinearKind {
    TricomiPair,
    LaguerrePair,
}

/// One bilinear integrand together with the length of its singular
/// expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearIntegrandSpec {
    pub kind: BilinearKind,
    /// `(θ₁, θ₂, α)` or `(m, n, α)`.
    pub params: [Complex64; 3],
    /// Number of expansion terms beyond the leading exponent; `−1` for none.
    pub order: i64,
}

fn c64(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `α` moved to the side `Re α ≤ 0`, where the pair expansion is stated.
fn negative_side(alpha: Complex64) -> Complex64 {
    if alpha.re > 0.0 {
        -alpha
    } else {
        alpha
    }
}

/// True when `α+p` coincides with an exponent of the regular families
/// `j` or `−α+j`, where the product of Kummer parts is not the whole
/// coefficient.
fn collides(alpha: Complex64, p: u32) -> bool {
    let e = alpha + p as f64;
    let hits = |x: Complex64| {
        let j = x.re.round();
        j >= 0.0 && (x - j).norm() < COLLISION_TOL
    };
    hits(e) || hits(e + alpha)
}

/// Coefficient of `z^{α+p}` in `U_{θ₁,α} U_{θ₂,α} e^{−z} z^α` near the
/// origin, for `Re α ≤ 0`.
pub fn tricomi_pair_coefficient(
    theta1: Complex64,
    theta2: Complex64,
    alpha: Complex64,
    p: u32,
) -> Result<Complex64> {
    if alpha.re > 0.0 {
        return Err(Error::InvalidArgument(format!(
            "pair coefficients are stated for Re α ≤ 0, got α = {alpha}; use −α"
        )));
    }
    if collides(alpha, p) {
        return Err(Error::InvalidArgument(format!(
            "p = {p} is out of range at α = {alpha}: z^(α+p) also receives regular contributions"
        )));
    }
    let (p1, p2) = (LieParams::new(theta1, alpha), LieParams::new(theta2, alpha));
    let pre = rgamma(p1.b()) * rgamma(p2.b());
    if pre == Complex64::zero() {
        return Ok(Complex64::zero());
    }
    let (a1, ca2) = (p1.a(), p2.c() - p2.a());
    let mut s = Complex64::zero();
    for k in 0..=p {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let g = gamma(-alpha - k as f64)? * gamma(-alpha - (p - k) as f64)?;
        s += pochhammer(a1, k) * pochhammer(ca2, p - k) * g * sign
            / (factorial(k as u64) * factorial((p - k) as u64));
    }
    Ok(s * pre)
}

/// Exact coefficients of `z^{α+j}`, `j = 0…len−1`, in `P(z) Q(z) e^{−z}`.
fn exact_pair_series(p: &[BigRational], q: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut pq = vec![BigRational::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (k, b) in q.iter().enumerate() {
            pq[i + k] += a * b;
        }
    }
    (0..len)
        .map(|j| {
            let mut s = BigRational::zero();
            for (i, a) in pq.iter().enumerate().take(j + 1) {
                let l = (j - i) as u64;
                let t = a / BigRational::from_integer(factorial_exact(l));
                if l % 2 == 0 {
                    s += t;
                } else {
                    s -= t;
                }
            }
            s
        })
        .collect()
}

fn float_pair_series(p: &[Complex64], q: &[Complex64], len: usize) -> Vec<Complex64> {
    let mut pq = vec![Complex64::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (k, b) in q.iter().enumerate() {
            pq[i + k] += a * b;
        }
    }
    (0..len)
        .map(|j| {
            pq.iter()
                .enumerate()
                .take(j + 1)
                .map(|(i, a)| {
                    let l = j - i;
                    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                    a * (sign / factorial(l as u64))
                })
                .sum()
        })
        .collect()
}

fn pair_polys(m: usize, n: usize, alpha: Complex64) -> (LaguerrePoly, LaguerrePoly) {
    (laguerre_build(m, alpha), laguerre_build(n, alpha))
}

/// Index of the first non-zero coefficient.
fn leading<T: PartialEq + Zero>(c: &[T]) -> Option<usize> {
    c.iter().position(|x| !x.is_zero())
}

/// Exact expansion of `L_m^α L_n^α e^{−z} z^α` for rational `α`:
/// `(j, coefficient of z^{α+j})` from the first non-zero coefficient through
/// `order` further powers, zero coefficients omitted.
pub fn laguerre_pair_expansion_exact(
    m: usize,
    n: usize,
    alpha: &BigRational,
    order: usize,
) -> Vec<(usize, BigRational)> {
    let (p, q) = (laguerre_build_rational(m, alpha), laguerre_build_rational(n, alpha));
    let (p, q) = (p.exact.expect("exact"), q.exact.expect("exact"));
    let mut len = m + n + order + 1;
    loop {
        let s = exact_pair_series(&p, &q, len);
        match leading(&s) {
            Some(j0) if j0 + order < len => {
                return (j0..=j0 + order)
                    .filter(|j| !s[*j].is_zero())
                    .map(|j| (j, s[j].clone()))
                    .collect()
            }
            _ => len *= 2,
        }
    }
}

/// Expansion of `L_m^α L_n^α e^{−z} z^α` at the origin: terms `z^{α+j}` from
/// the first non-zero one through `order` further powers. Exact arithmetic
/// is used when `α` is real.
pub fn laguerre_pair_expansion(
    m: usize,
    n: usize,
    alpha: Complex64,
    order: usize,
) -> SingularExpansion {
    let terms: Vec<(Complex64, Complex64)> = match real_rational(alpha) {
        Some(q) => laguerre_pair_expansion_exact(m, n, &q, order)
            .into_iter()
            .map(|(j, c)| (alpha + j as f64, c64(rational_to_f64(&c))))
            .collect(),
        None => {
            let (p, q) = pair_polys(m, n, alpha);
            let s = float_pair_series(&p.coeffs, &q.coeffs, m + n + order + 1);
            // the product of two non-zero polynomials has a non-zero constant
            // or low coefficient well inside this length
            let j0 = leading(&s).unwrap_or(0);
            (j0..=(j0 + order).min(s.len() - 1))
                .filter(|j| !s[*j].is_zero())
                .map(|j| (alpha + j as f64, s[j]))
                .collect()
        }
    };
    SingularExpansion::new(terms).expect("exponents α+j are distinct")
}

/// Coefficient of `z^{α+j}` in `L_m^α L_n^α e^{−z} z^α`, for any complex `α`.
pub fn laguerre_pair_coefficient(m: usize, n: usize, alpha: Complex64, j: usize) -> Complex64 {
    let (p, q) = pair_polys(m, n, alpha);
    float_pair_series(&p.coeffs, &q.coeffs, j + 1)[j]
}

fn real_rational(alpha: Complex64) -> Option<BigRational> {
    if alpha.im == 0.0 {
        BigRational::from_float(alpha.re)
    } else {
        None
    }
}

/// `e^{−z}` as a local series.
fn exp_minus(radius: f64) -> LocalSeries {
    let coeffs: Vec<Complex64> = (0..LOCAL_TERMS)
        .map(|k| c64(if k % 2 == 0 { 1.0 } else { -1.0 } / factorial(k as u64)))
        .collect();
    LocalSeries::from_powers(Complex64::zero(), &coeffs, radius)
}

impl BilinearIntegrandSpec {
    /// Tricomi pair with the shortest complete singular expansion.
    pub fn tricomi(theta1: Complex64, theta2: Complex64, alpha: Complex64) -> Self {
        let mut s = BilinearIntegrandSpec {
            kind: BilinearKind::TricomiPair,
            params: [theta1, theta2, alpha],
            order: -1,
        };
        s.order = s.min_order();
        s
    }

    pub fn laguerre(m: usize, n: usize, alpha: Complex64) -> Self {
        let mut s = BilinearIntegrandSpec {
            kind: BilinearKind::LaguerrePair,
            params: [c64(m as f64), c64(n as f64), alpha],
            order: -1,
        };
        s.order = s.min_order();
        s
    }

    pub fn with_order(mut self, order: i64) -> Self {
        self.order = order;
        self
    }

    pub fn alpha(&self) -> Complex64 {
        self.params[2]
    }

    fn degrees(&self) -> (usize, usize) {
        (self.params[0].re as usize, self.params[1].re as usize)
    }

    fn leading_index(&self) -> usize {
        match self.kind {
            BilinearKind::TricomiPair => 0,
            BilinearKind::LaguerrePair => {
                let (m, n) = self.degrees();
                let e = laguerre_pair_expansion(m, n, self.alpha(), 0);
                e.terms
                    .first()
                    .map(|(k, _)| (k - self.alpha()).re.round() as usize)
                    .unwrap_or(0)
            }
        }
    }

    /// Smallest order whose expansion contains every exponent with
    /// `Re ≤ −1`.
    pub fn min_order(&self) -> i64 {
        let lead = match self.kind {
            BilinearKind::TricomiPair => negative_side(self.alpha()).re,
            BilinearKind::LaguerrePair => self.alpha().re,
        };
        let last = (-1.0 - lead + 1e-9).floor() as i64;
        (last - self.leading_index() as i64).max(-1)
    }

    /// Singular data handed to the generalized integral.
    pub fn expansion(&self) -> Result<SingularExpansion> {
        if self.order < 0 {
            return Ok(SingularExpansion::empty());
        }
        match self.kind {
            BilinearKind::TricomiPair => {
                let [t1, t2, alpha] = self.params;
                let a = negative_side(alpha);
                let terms = (0..=self.order as u32)
                    .map(|p| Ok((a + p as f64, tricomi_pair_coefficient(t1, t2, a, p)?)))
                    .collect::<Result<Vec<_>>>()?;
                SingularExpansion::new(terms)
            }
            BilinearKind::LaguerrePair => {
                let (m, n) = self.degrees();
                Ok(laguerre_pair_expansion(m, n, self.alpha(), self.order as usize))
            }
        }
    }

    /// The integrand as a function of `z > 0`.
    pub fn integrand(&self) -> Box<dyn Fn(f64) -> Complex64 + Send + Sync> {
        let [t1, t2, alpha] = self.params;
        match self.kind {
            BilinearKind::TricomiPair => {
                let (p1, p2) = (LieParams::new(t1, alpha), LieParams::new(t2, alpha));
                Box::new(move |z: f64| {
                    let u1 = tricomi_u(p1, z).unwrap_or(c64(f64::NAN));
                    let u2 = tricomi_u(p2, z).unwrap_or(c64(f64::NAN));
                    u1 * u2 * (alpha * z.ln() - z).exp()
                })
            }
            BilinearKind::LaguerrePair => {
                let (m, n) = self.degrees();
                let (p, q) = pair_polys(m, n, alpha);
                Box::new(move |z: f64| p.eval(z) * q.eval(z) * (alpha * z.ln() - z).exp())
            }
        }
    }

    /// Generalized power series of the integrand at the origin.
    pub fn local_series(&self) -> Result<LocalSeries> {
        let [t1, t2, alpha] = self.params;
        let radius = LOCAL_RADIUS;
        let factors = match self.kind {
            BilinearKind::TricomiPair => {
                let u1 = tricomi_local_series(LieParams::new(t1, alpha), LOCAL_TERMS, radius)?;
                let u2 = tricomi_local_series(LieParams::new(t2, alpha), LOCAL_TERMS, radius)?;
                (u1, u2)
            }
            BilinearKind::LaguerrePair => {
                let (m, n) = self.degrees();
                let (p, q) = pair_polys(m, n, alpha);
                (
                    LocalSeries::from_powers(Complex64::zero(), &p.coeffs, radius),
                    LocalSeries::from_powers(Complex64::zero(), &q.coeffs, radius),
                )
            }
        };
        let lo = |s: &LocalSeries| {
            s.terms()
                .iter()
                .map(|t| t.exponent.re)
                .fold(f64::INFINITY, f64::min)
        };
        let cap = lo(&factors.0) + lo(&factors.1) + LOCAL_TERMS as f64 - 1.0;
        let prod = factors.0.mul(&factors.1, cap).mul(&exp_minus(radius), cap);
        let mut out = prod.shift(alpha);
        out.prune(1e-18);
        Ok(out)
    }

    /// Generalized integral over `(0, ∞)` with the singular part subtracted
    /// through the local series.
    pub fn gen_integral(&self, cfg: &QuadratureConfig) -> Result<GenIntegralResult> {
        let f = self.integrand();
        let local = self.local_series()?;
        gen_integrate_local(&*f, &local, &self.expansion()?, cfg)
    }
}

/// `n₁! n₂! (−1)^{n₁+n₂}`, the factor relating a Tricomi pair at
/// `θᵢ = −1−α−2nᵢ` to the Laguerre pair.
pub fn laguerre_tricomi_factor(n1: usize, n2: usize) -> f64 {
    let sign = if (n1 + n2) % 2 == 0 { 1.0 } else { -1.0 };
    sign * factorial(n1 as u64) * factorial(n2 as u64)
}

//! Laguerre polynomials `L_n^α` for arbitrary complex `α`,
//!
//! ```text
//! L_n^α(z) = (−1)ⁿ Σ_{k=0}^{n} (−α−n)_{n−k} z^k / (k! (n−k)!),
//! ```
//!
//! with exact rational coefficients whenever `α` is real (every finite float
//! is a dyadic rational) or given as a rational.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{factorial, factorial_exact, rational_to_f64};

#[derive(Clone, Debug, PartialEq)]
pub struct LaguerrePoly {
    pub degree: usize,
    pub alpha: Complex64,
    /// Coefficient of `z^k` at index `k`.
    pub coeffs: Vec<Complex64>,
    /// Exact coefficients, present when `α` is rational.
    pub exact: Option<Vec<BigRational>>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact coefficients `(−1)ⁿ (−α−n)_{n−k} / (k! (n−k)!)`.
pub fn laguerre_coefficients_exact(n: usize, alpha: &BigRational) -> Vec<BigRational> {
    let base = -alpha - rat(n as i64);
    let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
    (0..=n)
        .map(|k| {
            let mut poch = rat(1);
            for j in 0..(n - k) {
                poch *= &base + rat(j as i64);
            }
            let den = factorial_exact(k as u64) * factorial_exact((n - k) as u64);
            &sign * poch / BigRational::from_integer(den)
        })
        .collect()
}

/// `L_n^α` for complex `α`; exact coefficients are attached when `α` is real.
pub fn laguerre_build(n: usize, alpha: Complex64) -> LaguerrePoly {
    if alpha.im == 0.0 {
        if let Some(q) = BigRational::from_float(alpha.re) {
            let mut p = laguerre_build_rational(n, &q);
            p.alpha = alpha;
            return p;
        }
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let base = -alpha - n as f64;
    let coeffs = (0..=n)
        .map(|k| {
            let mut poch = Complex64::one();
            for j in 0..(n - k) {
                poch *= base + j as f64;
            }
            poch * (sign / (factorial(k as u64) * factorial((n - k) as u64)))
        })
        .collect();
    LaguerrePoly {
        degree: n,
        alpha,
        coeffs,
        exact: None,
    }
}

/// `L_n^α` for rational `α`, exact.
pub fn laguerre_build_rational(n: usize, alpha: &BigRational) -> LaguerrePoly {
    let exact = laguerre_coefficients_exact(n, alpha);
    LaguerrePoly {
        degree: n,
        alpha: Complex64::new(rational_to_f64(alpha), 0.0),
        coeffs: exact
            .iter()
            .map(|q| Complex64::new(rational_to_f64(q), 0.0))
            .collect(),
        exact: Some(exact),
    }
}

/// Horner evaluation.
pub fn laguerre_eval(p: &LaguerrePoly, z: f64) -> Complex64 {
    p.coeffs
        .iter()
        .rev()
        .fold(Complex64::zero(), |acc, c| acc * z + c)
}

impl LaguerrePoly {
    pub fn eval(&self, z: f64) -> Complex64 {
        laguerre_eval(self, z)
    }

    /// Exact value at a rational point, when exact coefficients exist.
    pub fn eval_exact(&self, z: &BigRational) -> Option<BigRational> {
        self.exact
            .as_ref()
            .map(|c| c.iter().rev().fold(rat(0), |acc, q| acc * z + q))
    }
}

/// Applies the Rodrigues formula `e^z z^{−α} ∂_zⁿ (e^{−z} z^{n+α}) / n!`
/// symbolically through the Leibniz rule and compares the result with
/// [`laguerre_build_rational`], coefficient-wise and at `z`, in exact
/// arithmetic.
pub fn rodrigues_check(n: usize, alpha: &BigRational, z: &BigRational) -> bool {
    // ∂ⁿ(e^{−z} z^{n+α}) = e^{−z} Σ_j C(n,j) (−1)^{n−j} (n+α)^{(j)} z^{n+α−j},
    // (x)^{(j)} the falling factorial. The z^{n−j} coefficient is collected.
    let top = alpha + rat(n as i64);
    let nf = BigRational::from_integer(factorial_exact(n as u64));
    let mut rod = vec![rat(0); n + 1];
    let mut falling = rat(1);
    for j in 0..=n {
        if j > 0 {
            falling *= &top - rat(j as i64 - 1);
        }
        let binom = BigRational::from_integer(
            factorial_exact(n as u64)
                / (factorial_exact(j as u64) * factorial_exact((n - j) as u64)),
        );
        let sign = if (n - j) % 2 == 0 { rat(1) } else { rat(-1) };
        rod[n - j] = binom * sign * &falling / &nf;
    }
    let p = laguerre_build_rational(n, alpha);
    let exact = p.exact.as_ref().expect("rational build is exact");
    let value = rod.iter().rev().fold(rat(0), |acc, q| acc * z + q);
    exact == &rod && p.eval_exact(z) == Some(value)
}

/// Both sides of `L_n^{−α}(z) = (n−α)!/n! (−z)^α L_{n−α}^α(z)` for a positive
/// integer `α ≤ n`.
pub fn special_alpha_identity(n: usize, alpha_pos: usize, z: f64) -> Result<(Complex64, Complex64)> {
    if alpha_pos == 0 || alpha_pos > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 ≤ α ≤ n, got α={alpha_pos}, n={n}"
        )));
    }
    let lhs = laguerre_build(n, Complex64::new(-(alpha_pos as f64), 0.0)).eval(z);
    let inner = laguerre_build(n - alpha_pos, Complex64::new(alpha_pos as f64, 0.0)).eval(z);
    let pref = factorial((n - alpha_pos) as u64) / factorial(n as u64) * (-z).powi(alpha_pos as i32);
    Ok((lhs, inner * pref))
}

fn falling_binomials(alpha: &BigRational, order: usize) -> Vec<BigRational> {
    // C(α, j) = α(α−1)…(α−j+1)/j!
    let mut out = Vec::with_capacity(order + 1);
    let mut c = rat(1);
    for j in 0..=order {
        if j > 0 {
            c = c * (alpha - rat(j as i64 - 1)) / rat(j as i64);
        }
        out.push(c.clone());
    }
    out
}

fn cauchy(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|k| (0..=k).fold(rat(0), |acc, j| acc + &a[j] * &b[k - j]))
        .collect()
}

/// `exp(s)` of a power series with `s[0] = 0`.
fn series_exp(s: &[BigRational]) -> Vec<BigRational> {
    let n = s.len();
    let mut e = vec![rat(0); n];
    e[0] = rat(1);
    for m in 1..n {
        let mut acc = rat(0);
        for k in 1..=m {
            acc += rat(k as i64) * &s[k] * &e[m - k];
        }
        e[m] = acc / rat(m as i64);
    }
    e
}

/// Taylor coefficients in `t` of `e^{−tz}(1+t)^α` and the values
/// `L_n^{α−n}(z)`, `n = 0…order`, both exact.
pub fn generating_function_shifted(
    alpha: &BigRational,
    z: &BigRational,
    order: usize,
) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut ez = Vec::with_capacity(order + 1);
    let mut c = rat(1);
    for j in 0..=order {
        if j > 0 {
            c = c * (-z) / rat(j as i64);
        }
        ez.push(c.clone());
    }
    let lhs = cauchy(&ez, &falling_binomials(alpha, order));
    let rhs = (0..=order)
        .map(|n| {
            let a = alpha - rat(n as i64);
            laguerre_build_rational(n, &a)
                .eval_exact(z)
                .expect("exact")
        })
        .collect();
    (lhs, rhs)
}

/// Taylor coefficients in `t` of `(1−t)^{−α−1} exp(tz/(t−1))` and the values
/// `L_n^α(z)`, `n = 0…order`, both exact.
pub fn generating_function_standard(
    alpha: &BigRational,
    z: &BigRational,
    order: usize,
) -> (Vec<BigRational>, Vec<BigRational>) {
    // (1−t)^{−α−1} = Σ (α+1)_j t^j / j!
    let mut pw = Vec::with_capacity(order + 1);
    let mut c = rat(1);
    for j in 0..=order {
        if j > 0 {
            c = c * (alpha + rat(j as i64)) / rat(j as i64);
        }
        pw.push(c.clone());
    }
    // tz/(t−1) = −z (t + t² + …)
    let mut s = vec![-z.clone(); order + 1];
    s[0] = rat(0);
    let lhs = cauchy(&pw, &series_exp(&s));
    let p = (0..=order)
        .map(|n| laguerre_build_rational(n, alpha).eval_exact(z).expect("exact"))
        .collect();
    (lhs, p)
}

/// Parses a decimal or fraction string such as `"-2"`, `"0.7"` or `"3/2"`
/// into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let q = BigRational::new(num, den);
    Some(if neg { -q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::confluent::{tricomi_u, LieParams};
    use crate::scalar::pochhammer_exact;
    use proptest::prelude::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn build_examples() {
        assert_eq!(laguerre_build_rational(0, &q("7/3")).exact.unwrap(), vec![q("1")]);
        assert_eq!(laguerre_build_rational(1, &q("0")).exact.unwrap(), vec![q("1"), q("-1")]);
        assert_eq!(
            laguerre_build_rational(2, &q("-1")).exact.unwrap(),
            vec![q("0"), q("-1"), q("1/2")]
        );
        let p = laguerre_build(2, Complex64::new(-1.0, 0.0));
        assert_eq!(p.coeffs[0], Complex64::zero());
    }

    #[test]
    fn eval_examples() {
        let p = laguerre_build(1, Complex64::zero());
        assert_eq!(p.eval(1.0), Complex64::zero());
        // brute-force monomial sum for L₂^{0.4}(1.5)
        let a: f64 = 0.4;
        let z: f64 = 1.5;
        let brute = (a + 1.0) * (a + 2.0) / 2.0 - (a + 2.0) * z + z * z / 2.0;
        let v = laguerre_build(2, Complex64::new(a, 0.0)).eval(z);
        assert!((v.re - brute).abs() < 1e-14);
        let v = laguerre_build(3, Complex64::new(2.0, 0.0)).eval(0.0);
        assert_eq!(v, Complex64::new(10.0, 0.0));
    }

    #[test]
    fn complex_alpha_matches_real_path() {
        let exact = laguerre_build(4, Complex64::new(0.75, 0.0));
        assert!(exact.exact.is_some());
        let direct = laguerre_build(4, Complex64::new(0.75, 1e-300));
        assert!(direct.exact.is_none());
        for z in [0.3, 2.0, 7.5] {
            assert!((exact.eval(z) - direct.eval(z)).norm() < 1e-13);
        }
        let c = laguerre_build(3, Complex64::new(0.5, 1.0));
        assert!((c.coeffs[3] + Complex64::new(1.0 / 6.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rodrigues_examples() {
        assert!(rodrigues_check(1, &q("0"), &q("5/7")));
        assert!(rodrigues_check(3, &q("1/2"), &q("2")));
        assert!(rodrigues_check(4, &q("-2"), &q("-3/4")));
        for n in 0..8 {
            for a in ["-5", "-1/3", "0", "7/2"] {
                assert!(rodrigues_check(n, &q(a), &q("13/10")), "n={n} α={a}");
            }
        }
    }

    #[test]
    fn special_alpha_examples() {
        let (l, r) = special_alpha_identity(1, 1, 2.0).unwrap();
        assert!((l - r).norm() < 1e-15 && (l.re + 2.0).abs() < 1e-15);
        let (l, r) = special_alpha_identity(3, 2, 1.3).unwrap();
        assert!((l - r).norm() < 1e-12);
        let (l, r) = special_alpha_identity(2, 2, 0.0).unwrap();
        assert_eq!((l, r), (Complex64::zero(), Complex64::zero()));
        assert!(special_alpha_identity(2, 3, 1.0).is_err());
    }

    #[test]
    fn tricomi_relation() {
        for n in 0..=4usize {
            for alpha in [0.4, -0.7, 2.0] {
                for z in [0.5, 2.0, 10.0] {
                    let l = laguerre_build(n, Complex64::new(alpha, 0.0)).eval(z);
                    let theta = -1.0 - alpha - 2.0 * n as f64;
                    let u = tricomi_u(LieParams::real(theta, alpha), z).unwrap();
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    let rhs = u * (sign / factorial(n as u64));
                    assert!((l - rhs).norm() < 1e-9 * l.norm().max(1.0), "n={n} α={alpha} z={z}");
                }
            }
        }
    }

    #[test]
    fn generating_functions() {
        for a in ["1.5", "-2"] {
            for z in ["0.7", "3"] {
                let (lhs, rhs) = generating_function_shifted(&q(a), &q(z), 12);
                assert_eq!(lhs, rhs, "shifted α={a} z={z}");
                let (lhs, rhs) = generating_function_standard(&q(a), &q(z), 12);
                assert_eq!(lhs, rhs, "standard α={a} z={z}");
            }
        }
    }

    #[test]
    fn leading_and_constant_coefficients_exact() {
        for n in 0..=30usize {
            for a in ["-7", "-1/2", "0", "5/3"] {
                let alpha = q(a);
                let c = laguerre_coefficients_exact(n, &alpha);
                let nf = BigRational::from_integer(factorial_exact(n as u64));
                let sign = if n % 2 == 0 { q("1") } else { q("-1") };
                assert_eq!(c[n], sign / &nf);
                assert_eq!(c[0], pochhammer_exact(&(alpha + q("1")), n as u64) / nf);
            }
        }
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("0.7"), Some(q("7/10")));
        assert_eq!(parse_rational("-2"), Some(q("-2")));
        assert_eq!(parse_rational("-.25"), Some(q("-1/4")));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    proptest! {
        #[test]
        fn float_and_exact_paths_agree(n in 0usize..12, num in -40i64..40, z in 0.0f64..8.0) {
            let alpha = num as f64 / 8.0;
            let exact = laguerre_build(n, Complex64::new(alpha, 0.0));
            let float = laguerre_build(n, Complex64::new(alpha, f64::MIN_POSITIVE));
            let (a, b) = (exact.eval(z), float.eval(z));
            let scale = exact.coeffs.iter().map(|c| c.norm() * z.max(1.0).powi(n as i32)).sum::<f64>();
            prop_assert!((a - b).norm() <= 1e-13 * scale.max(1.0));
        }

        #[test]
        fn rodrigues_holds(n in 0usize..7, num in -20i64..20, den in 1i64..6) {
            let alpha = BigRational::new(BigInt::from(num), BigInt::from(den));
            prop_assert!(rodrigues_check(n, &alpha, &q("3/2")));
        }
    }
}

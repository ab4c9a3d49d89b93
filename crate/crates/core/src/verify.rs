//! Verification suites: closed forms and identities checked against
//! independent numerical oracles, reported in a deterministic form.
//!
//! Every case yields a closed-form value and one or more oracle values. The
//! error is the largest distance to an oracle, scaled by `max(|closed|, 1)`,
//! and a case passes when that scaled error is within its tolerance. Cases
//! run on a rayon pool whose size can be capped with `GENINT_THREADS`; the
//! reports come back sorted by id.

use std::f64::consts::PI;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_forms::{laguerre_gram_entry, tricomi_bilinear, tricomi_bilinear_finite_part};
use crate::confluent::{
    asymptotic_2f0, kummer_f, olver_bf, tricomi_u, tricomi_u_degenerate, LieParams,
};
use crate::dimreg::{anomalous_value, finite_part, residue, AlphaFamily, EPS_LADDER};
use crate::error::{Error, Result};
use crate::expansions::{laguerre_pair_coefficient, tricomi_pair_coefficient, BilinearIntegrandSpec};
use crate::genquad::{
    gen_integrate, integrate_by_parts_check, PartsProblem, QuadratureConfig, SingularExpansion,
};
use crate::laguerre::{
    generating_function_shifted, generating_function_standard, laguerre_build, rodrigues_check,
    special_alpha_identity,
};
use crate::laurent::{self as jet, Laurent};
use crate::scalar::{
    digamma, digamma_at_positive_integer, factorial, factorial_exact, gamma, harmonic,
    harmonic_derivative, lemma_b2_values, pochhammer_exact, rational_to_f64, EULER_GAMMA,
};

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "GENINT_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Identities,
    Confluent,
    TricomiBilinear,
    LaguerreGram,
    Dimreg,
    Genquad,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Identities,
        Suite::Confluent,
        Suite::TricomiBilinear,
        Suite::LaguerreGram,
        Suite::Dimreg,
        Suite::Genquad,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Confluent => "confluent",
            Suite::TricomiBilinear => "tricomi-bilinear",
            Suite::LaguerreGram => "laguerre-gram",
            Suite::Dimreg => "dimreg",
            Suite::Genquad => "genquad",
        }
    }

    /// A suite name, or `all` for every suite.
    pub fn parse(name: &str) -> Option<Vec<Suite>> {
        if name == "all" {
            return Some(Self::ALL.to_vec());
        }
        Self::ALL.iter().find(|s| s.name() == name).map(|s| vec![*s])
    }

    fn cases(&self, cfg: &QuadratureConfig) -> Vec<Case> {
        match self {
            Suite::Identities => identities(),
            Suite::Confluent => confluent(),
            Suite::TricomiBilinear => tricomi_bilinear_cases(cfg),
            Suite::LaguerreGram => laguerre_gram(cfg),
            Suite::Dimreg => dimreg(cfg),
            Suite::Genquad => genquad(cfg),
        }
    }
}

/// A complex number as serialized in reports.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JsonComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for JsonComplex {
    fn from(z: Complex64) -> Self {
        JsonComplex {
            re: round15(z.re),
            im: round15(z.im),
        }
    }
}

/// `x` rounded to 15 significant digits; non-finite values pass through.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub regime: String,
    pub closed_form: JsonComplex,
    pub oracle: Vec<JsonComplex>,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
    pub seconds: f64,
    /// Failed against the closed form while the oracles agree with each
    /// other; reported but not counted as a failure.
    #[serde(skip)]
    pub flagged: bool,
    /// Error message when the case could not be evaluated.
    #[serde(skip)]
    pub note: Option<String>,
}

impl VerificationReport {
    /// Whether this report should fail a verification run.
    pub fn is_failure(&self) -> bool {
        !self.pass && !self.flagged
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Multiplies every tolerance.
    pub tol_scale: f64,
    /// Record wall-clock seconds per case; zero otherwise so that reports
    /// are reproducible byte for byte.
    pub timings: bool,
    pub config: QuadratureConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tol_scale: 1.0,
            timings: false,
            config: QuadratureConfig::default(),
        }
    }
}

struct Outcome {
    closed_form: Complex64,
    oracle: Vec<Complex64>,
    /// Replaces the computed distance for exact comparisons.
    exact_err: Option<f64>,
}

impl Outcome {
    fn compare(closed_form: Complex64, oracle: Vec<Complex64>) -> Result<Self> {
        Ok(Outcome {
            closed_form,
            oracle,
            exact_err: None,
        })
    }

    /// An exact check: `mismatches` counts failed rational comparisons.
    fn exact(closed_form: Complex64, oracle: Complex64, mismatches: usize) -> Result<Self> {
        Ok(Outcome {
            closed_form,
            oracle: vec![oracle],
            exact_err: Some(mismatches as f64),
        })
    }
}

type Runner = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

struct Case {
    id: String,
    regime: String,
    tol: f64,
    /// A closed-form mismatch is only flagged when the oracles agree.
    flag_only: bool,
    run: Runner,
}

fn case(
    id: impl Into<String>,
    regime: &str,
    tol: f64,
    run: impl Fn() -> Result<Outcome> + Send + Sync + 'static,
) -> Case {
    Case {
        id: id.into(),
        regime: regime.to_string(),
        tol,
        flag_only: false,
        run: Box::new(run),
    }
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn evaluate(case: &Case, opts: &VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let outcome = (case.run)();
    let seconds = if opts.timings {
        (start.elapsed().as_secs_f64() * 1e6).round() / 1e6
    } else {
        0.0
    };
    let tol = case.tol * opts.tol_scale;
    let mut report = VerificationReport {
        id: case.id.clone(),
        regime: case.regime.clone(),
        closed_form: c(f64::NAN).into(),
        oracle: Vec::new(),
        abs_err: f64::NAN,
        rel_err: f64::NAN,
        tol: round15(tol),
        pass: false,
        seconds,
        flagged: false,
        note: None,
    };
    let out = match outcome {
        Ok(o) => o,
        Err(e) => {
            report.note = Some(e.to_string());
            return report;
        }
    };
    let abs_err = out.exact_err.unwrap_or_else(|| {
        out.oracle
            .iter()
            .map(|o| (out.closed_form - o).norm())
            .fold(if out.oracle.is_empty() { f64::NAN } else { 0.0 }, f64::max)
    });
    let rel_err = abs_err / out.closed_form.norm().max(1.0);
    report.closed_form = out.closed_form.into();
    report.oracle = out.oracle.iter().map(|&o| o.into()).collect();
    report.abs_err = round15(abs_err);
    report.rel_err = round15(rel_err);
    report.pass = rel_err.is_finite() && rel_err <= tol;
    if !report.pass && case.flag_only && out.oracle.len() == 2 {
        let (a, b) = (out.oracle[0], out.oracle[1]);
        if (a - b).norm() <= tol * a.norm().max(1.0) {
            report.flagged = true;
            report.regime.push_str("-flagged");
        }
    }
    report
}

fn worker_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|n| *n > 0)
    {
        b = b.num_threads(n);
    }
    b.build()
        .map_err(|e| Error::InvalidArgument(format!("worker pool: {e}")))
}

/// Runs the given suites and returns the reports sorted by id.
pub fn run_suites(suites: &[Suite], opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    if !(opts.tol_scale > 0.0 && opts.tol_scale.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "tolerance scale must be positive, got {}",
            opts.tol_scale
        )));
    }
    opts.config.validate()?;
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    let cases: Vec<(Suite, Case)> = suites
        .iter()
        .flat_map(|s| s.cases(&opts.config).into_iter().map(move |k| (*s, k)))
        .collect();
    let pool = worker_pool()?;
    let mut reports: Vec<VerificationReport> = pool.install(|| {
        cases
            .par_iter()
            .map(|(s, k)| {
                let mut r = evaluate(k, opts);
                r.id = format!("{}/{}", s.name(), r.id);
                r
            })
            .collect()
    });
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(reports)
}

/// Deterministic JSON array of reports.
pub fn reports_to_json(reports: &[VerificationReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn identities() -> Vec<Case> {
    let mut out = Vec::new();

    for (label, a) in [("1/2", rat(1, 2)), ("1", rat(1, 1)), ("5/3", rat(5, 3)), ("7", rat(7, 1))] {
        out.push(case(format!("telescoping/a={label}"), "exact", 0.0, move || {
            let a1 = &a + BigRational::one();
            let mut sum = BigRational::zero();
            let mut bad = 0;
            let mut last = (BigRational::zero(), BigRational::zero());
            for n in 0..=30u64 {
                sum += pochhammer_exact(&a, n) / BigRational::from_integer(factorial_exact(n));
                let rhs = pochhammer_exact(&a1, n) / BigRational::from_integer(factorial_exact(n));
                if sum != rhs {
                    bad += 1;
                }
                last = (sum.clone(), rhs);
            }
            Outcome::exact(c(rational_to_f64(&last.1)), c(rational_to_f64(&last.0)), bad)
        }));
    }

    out.push(case("telescoping/factorial-ratios", "exact", 0.0, || {
        let f = |k: u64| BigRational::from_integer(factorial_exact(k));
        let mut bad = 0;
        let mut last = (BigRational::zero(), BigRational::zero());
        for m in 1..=25u64 {
            for n in 0..m {
                let lhs: BigRational = (1..=n + 1).map(|k| f(m - k) / f(n + 1 - k)).sum();
                let rhs = f(m) / (f(n) * BigRational::from_integer(BigInt::from(m - n)));
                if lhs != rhs {
                    bad += 1;
                }
                last = (lhs, rhs);
            }
        }
        Outcome::exact(c(rational_to_f64(&last.1)), c(rational_to_f64(&last.0)), bad)
    }));

    for n in 0..=5u32 {
        for part in [0usize, 1] {
            out.push(case(format!("digamma-ratio-limit/n={n}/{part}"), "limit", 1e-10, move || {
                let x = Laurent::arg(c(-(n as f64)), 1.0);
                let rg = jet::rgamma(&x)?;
                let t = jet::trigamma(&x)?;
                let oracle = if part == 0 {
                    (t * rg * rg).value()
                } else {
                    let p = jet::psi(&x)?;
                    ((t - p * p) * rg).value()
                };
                let v = lemma_b2_values(n);
                Outcome::compare(if part == 0 { v.0 } else { v.1 }, vec![oracle])
            }));
        }
    }
    out.push(case("digamma-ratio-limit/zero-is-2psi1", "limit", 1e-10, || {
        Outcome::compare(lemma_b2_values(0).1, vec![digamma(c(1.0))? * 2.0])
    }));

    let zs = [c(0.3), c(1.7), Complex64::new(-2.5, 0.5)];
    for (zi, z) in zs.into_iter().enumerate() {
        for m in 0..=12u32 {
            out.push(case(format!("harmonic-induction/z{zi}/m={m:02}"), "identity", 1e-10, move || {
                let mut lhs = Complex64::zero();
                for k in 0..m {
                    lhs += harmonic(z, k)? / (z + k as f64);
                }
                let h = harmonic(z, m)?;
                let rhs = (harmonic_derivative(z, m)? + h * h) * 0.5;
                Outcome::compare(rhs, vec![lhs])
            }));
        }
    }

    let grid = [
        c(0.3),
        c(0.5),
        c(1.7),
        c(-0.9),
        c(3.3),
        Complex64::new(-2.5, 0.5),
        Complex64::new(0.5, 2.0),
    ];
    for (i, z) in grid.into_iter().enumerate() {
        out.push(case(format!("gamma-reflection/{i}"), "identity", 1e-12, move || {
            let v = gamma(z + 1.0)? * gamma(-z + 1.0)? * (z * PI).sin() / (z * PI);
            Outcome::compare(c(1.0), vec![v])
        }));
    }

    for alpha in [0.3, -0.3, 1.6, -1.6] {
        for theta in [0.0, 1.2, -2.5] {
            for z in [0.5, 1.0, 4.0] {
                let tag = format!("theta={theta}/alpha={alpha}/z={z}");
                out.push(case(format!("kummer-identity/{tag}"), "identity", 1e-10, move || {
                    let lhs = kummer_f(LieParams::real(theta, alpha), z)?;
                    let q = LieParams::real(-theta, alpha);
                    let rhs = plain_1f1(q.a(), q.c(), -z)?;
                    // compared on the e^{−z} scale
                    Outcome::compare(lhs * (-z).exp(), vec![rhs])
                }));
                out.push(case(format!("tricomi-reflection/{tag}"), "identity", 1e-10, move || {
                    let u = tricomi_u(LieParams::real(theta, alpha), z)?;
                    let r = tricomi_u(LieParams::real(theta, -alpha), z)? * z.powf(-alpha);
                    let s = u.norm().max(1e-300);
                    Outcome::compare(u / s, vec![r / s])
                }));
            }
        }
    }

    for r in [0.5, 1.0, 3.0] {
        out.push(case(format!("bessel-half/r={r}"), "identity", 1e-10, move || {
            let u = tricomi_u(LieParams::real(0.0, 1.0), 2.0 * r)?;
            let lhs = u * (PI.sqrt() * (2.0 * r).sqrt() * (-r).exp());
            Outcome::compare(lhs, vec![c((PI / (2.0 * r)).sqrt() * (-r).exp())])
        }));
    }

    for (n, a, z) in [(1usize, 1usize, 2.0), (3, 2, 1.3), (2, 2, 0.0), (4, 3, 0.7), (5, 2, 2.5)] {
        out.push(case(
            format!("laguerre-negative-alpha/n={n}/alpha=-{a}/z={z}"),
            "identity",
            1e-10,
            move || {
                let (lhs, rhs) = special_alpha_identity(n, a, z)?;
                Outcome::compare(rhs, vec![lhs])
            },
        ));
    }
    out
}

/// Plain power series of ₁F₁(a; c; x), used as an oracle for moderate |x|.
fn plain_1f1(a: Complex64, cc: Complex64, x: f64) -> Result<Complex64> {
    let mut term = Complex64::one();
    let mut sum = term;
    for n in 0..2000 {
        let nf = n as f64;
        term *= (a + nf) / ((cc + nf) * (nf + 1.0)) * x;
        sum += term;
        if term.norm() < 1e-17 * sum.norm() && nf > x.abs() {
            return Ok(sum);
        }
    }
    Err(Error::Convergence("₁F₁ series".into()))
}

/// `x e^x E₁(x)` from the continued fraction, for `x` well above 1.
fn scaled_e1(x: f64) -> f64 {
    let mut t = 0.0;
    for k in (1..=400).rev() {
        let k = k as f64;
        t = k / (1.0 + k / (x + t));
    }
    x / (x + t)
}

fn confluent() -> Vec<Case> {
    let mut out = Vec::new();
    let e2 = 2f64.exp();
    out.push(case("kummer/a-equals-c", "series", 1e-13, move || {
        Outcome::compare(kummer_f(LieParams::real(1.3, 0.3), 2.0)?, vec![c(e2)])
    }));
    out.push(case("kummer/one-two", "series", 1e-13, || {
        Outcome::compare(kummer_f(LieParams::real(0.0, 1.0), 1.0)?, vec![c(1f64.exp() - 1.0)])
    }));
    out.push(case("kummer/large-argument", "series", 1e-10, || {
        // a, c > 0: the plain series has positive terms only
        let p = LieParams::real(0.4, 0.5);
        let z: f64 = 30.0;
        let v = kummer_f(p, z)? * (-z).exp();
        Outcome::compare(v, vec![plain_1f1(p.a(), p.c(), z)? * (-z).exp()])
    }));
    out.push(case("olver/a-zero", "series", 1e-14, || {
        Outcome::compare(olver_bf(LieParams::real(-1.0, 0.0), 3.7)?, vec![c(1.0)])
    }));
    out.push(case("olver/normalization", "series", 1e-13, || {
        let p = LieParams::real(0.0, 0.3);
        Outcome::compare(olver_bf(p, 1.0)?, vec![kummer_f(p, 1.0)? / gamma(c(1.3))?])
    }));
    out.push(case("olver/c-zero", "series", 1e-13, || {
        let half = rat(1, 2);
        let mut sum = BigRational::zero();
        for n in 1..60u64 {
            sum += pochhammer_exact(&half, n)
                / BigRational::from_integer(factorial_exact(n - 1) * factorial_exact(n));
        }
        Outcome::compare(olver_bf(LieParams::real(1.0, -1.0), 1.0)?, vec![c(rational_to_f64(&sum))])
    }));
    out.push(case("tricomi/a-zero", "connection", 1e-14, || {
        Outcome::compare(tricomi_u(LieParams::real(-1.7, 0.7), 3.0)?, vec![c(1.0)])
    }));
    out.push(case("tricomi/bessel-point", "degenerate", 1e-13, || {
        Outcome::compare(tricomi_u(LieParams::real(0.0, 1.0), 2.0)?, vec![c(0.5)])
    }));
    for n in 0..=4usize {
        for alpha in [0.4, -0.7, 2.0] {
            for z in [0.5, 2.0, 10.0] {
                out.push(case(
                    format!("tricomi-laguerre/n={n}/alpha={alpha}/z={z}"),
                    "polynomial",
                    1e-9,
                    move || {
                        let nf = n as f64;
                        let p = LieParams::real(-1.0 - alpha - 2.0 * nf, alpha);
                        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                        let u = tricomi_u(p, z)? * (sign / factorial(n as u64));
                        Outcome::compare(laguerre_build(n, c(alpha)).eval(z), vec![u])
                    },
                ));
            }
        }
    }
    for m in 0..=2i64 {
        for theta in [0.3, 1.9, -0.6] {
            for z in [0.4, 1.0, 2.0] {
                out.push(case(
                    format!("degenerate-limit/m={m}/theta={theta}/z={z}"),
                    "degenerate",
                    1e-6,
                    move || {
                        let h = 1e-5;
                        let mf = m as f64;
                        let up = tricomi_u(LieParams::real(theta, mf + h), z)?;
                        let dn = tricomi_u(LieParams::real(theta, mf - h), z)?;
                        let (v, _) = tricomi_u_degenerate(c(theta), m, z, 200)?;
                        Outcome::compare(v, vec![(up + dn) * 0.5])
                    },
                ));
            }
        }
    }
    for (theta, m) in [(0.7, 2i64), (-1.3, 1), (2.2, 3)] {
        out.push(case(format!("degenerate-reflection/theta={theta}/m={m}"), "degenerate", 1e-12, move || {
            let z: f64 = 1.7;
            let (lo, _) = tricomi_u_degenerate(c(theta), -m, z, 60)?;
            let (hi, _) = tricomi_u_degenerate(c(theta), m, z, 60)?;
            Outcome::compare(hi, vec![lo * z.powi(-m as i32)])
        }));
    }
    out.push(case("asymptotic-2f0/exponential-integral", "asymptotic", 1e-7, || {
        let (v, _) = asymptotic_2f0(c(1.0), c(1.0), -0.01, 500)?;
        Outcome::compare(v, vec![c(scaled_e1(100.0))])
    }));
    for (n, a) in [(1usize, (0i64, 1i64)), (3, (1, 2)), (4, (-2, 1)), (5, (7, 3))] {
        out.push(case(format!("rodrigues/n={n}/alpha={}/{}", a.0, a.1), "exact", 0.0, move || {
            let ok = rodrigues_check(n, &rat(a.0, a.1), &rat(3, 7));
            Outcome::exact(c(1.0), c(if ok { 1.0 } else { 0.0 }), usize::from(!ok))
        }));
    }
    for (a, z) in [((3i64, 2i64), (7i64, 10i64)), ((3, 2), (3, 1)), ((-2, 1), (7, 10)), ((-2, 1), (3, 1))] {
        let tag = format!("alpha={}/{}/z={}/{}", a.0, a.1, z.0, z.1);
        out.push(case(format!("generating-shifted/{tag}"), "exact", 0.0, move || {
            let (lhs, rhs) = generating_function_shifted(&rat(a.0, a.1), &rat(z.0, z.1), 12);
            let bad = lhs.iter().zip(&rhs).filter(|(x, y)| x != y).count();
            Outcome::exact(c(rational_to_f64(&rhs[12])), c(rational_to_f64(&lhs[12])), bad)
        }));
        out.push(case(format!("generating-standard/{tag}"), "exact", 0.0, move || {
            let (lhs, rhs) = generating_function_standard(&rat(a.0, a.1), &rat(z.0, z.1), 12);
            let bad = lhs.iter().zip(&rhs).filter(|(x, y)| x != y).count();
            Outcome::exact(c(rational_to_f64(&rhs[12])), c(rational_to_f64(&lhs[12])), bad)
        }));
    }
    out.push(case("laguerre/value-at-origin", "polynomial", 1e-14, || {
        Outcome::compare(laguerre_build(3, c(2.0)).eval(0.0), vec![c(10.0)])
    }));
    out
}

fn tricomi_oracle(t1: f64, t2: f64, alpha: f64, order: Option<i64>, cfg: &QuadratureConfig) -> Result<Complex64> {
    let mut spec = BilinearIntegrandSpec::tricomi(c(t1), c(t2), c(alpha));
    if let Some(o) = order {
        spec = spec.with_order(o);
    }
    Ok(spec.gen_integral(cfg)?.value)
}

fn tricomi_bilinear_cases(cfg: &QuadratureConfig) -> Vec<Case> {
    let mut out = Vec::new();
    let convergent = [
        (2.0, 0.0, 0.0),
        (0.0, 0.0, 0.0),
        (0.9, -2.2, 0.0),
        (1.0, 1.0, 0.0),
        (0.5, 1.3, 0.3),
        (-0.7, 0.4, -0.6),
        (1.1, 2.5, 0.8),
        (0.2, -1.5, -0.3),
        (3.0, 1.0, 0.5),
        (1.5, 1.5, 0.45),
        (-0.4, -0.4, -0.7),
        (2.2, 0.6, -0.9),
    ];
    for (t1, t2, a) in convergent {
        let cfg = *cfg;
        out.push(case(
            format!("convergent/theta={t1},{t2}/alpha={a}"),
            "convergent",
            1e-7,
            move || {
                let cf = tricomi_bilinear(c(t1), c(t2), c(a))?;
                Outcome::compare(cf, vec![tricomi_oracle(t1, t2, a, Some(-1), &cfg)?])
            },
        ));
    }
    for (t1, t2) in [(0.3, 1.7), (-0.6, 0.9), (1.2, 2.5), (0.8, 0.8)] {
        for a in [-2.0, -1.0, 1.0, 2.0] {
            let cfg = *cfg;
            let mut k = case(
                format!("anomalous/theta={t1},{t2}/alpha={a}"),
                "anomalous",
                1e-6,
                move || {
                    let cf = tricomi_bilinear(c(t1), c(t2), c(a))?;
                    let gq = tricomi_oracle(t1, t2, a, None, &cfg)?;
                    // the integrand is even in α
                    let fam = AlphaFamily::tricomi_pair(c(t1), c(t2));
                    let dr = anomalous_value(&fam, a.abs() as u32)?;
                    Outcome::compare(cf, vec![gq, dr])
                },
            );
            k.flag_only = true;
            out.push(k);
        }
    }
    out
}

fn laguerre_family(m: usize, n: usize) -> AlphaFamily {
    AlphaFamily::new(
        move |a| Ok(laguerre_gram_entry(m, n, a).0),
        move |a, j| Ok(laguerre_pair_coefficient(m, n, a, j as usize)),
    )
}

fn laguerre_gram(cfg: &QuadratureConfig) -> Vec<Case> {
    let mut out = Vec::new();
    let quad = |m: usize, n: usize, a: f64, cfg: &QuadratureConfig| -> Result<Complex64> {
        Ok(BilinearIntegrandSpec::laguerre(m, n, c(a)).gen_integral(cfg)?.value)
    };
    let mut plain = |alphas: &[f64], range: std::ops::RangeInclusive<usize>, tol: f64| {
        for &a in alphas {
            for m in range.clone() {
                for n in range.clone() {
                    let cfg = *cfg;
                    let (v, regime) = laguerre_gram_entry(m, n, c(a));
                    out.push(case(format!("alpha={a}/m={m}/n={n}"), regime.label(), tol, move || {
                        Outcome::compare(v, vec![quad(m, n, a, &cfg)?])
                    }));
                }
            }
        }
    };
    plain(&[0.0, 0.5, 2.0, -0.3], 0..=5, 1e-8);
    plain(&[-1.5, -2.7], 0..=4, 1e-7);
    for a in [-1.0f64, -2.0] {
        let na = a.abs() as usize;
        for m in na..=5 {
            for n in na..=5 {
                let cfg = *cfg;
                let (v, regime) = laguerre_gram_entry(m, n, c(a));
                out.push(case(format!("alpha={a}/m={m}/n={n}"), regime.label(), 1e-8, move || {
                    Outcome::compare(v, vec![quad(m, n, a, &cfg)?])
                }));
            }
        }
    }
    for a in [-1.0f64, -2.0, -3.0] {
        let na = a.abs() as usize;
        for m in 0..=5usize {
            for n in 0..=5usize {
                if m.min(n) >= na {
                    continue;
                }
                let cfg = *cfg;
                let (v, regime) = laguerre_gram_entry(m, n, c(a));
                out.push(case(format!("alpha={a}/m={m}/n={n}"), regime.label(), 1e-6, move || {
                    let gq = quad(m, n, a, &cfg)?;
                    let dr = anomalous_value(&laguerre_family(m, n), na as u32)?;
                    Outcome::compare(v, vec![gq, dr])
                }));
            }
        }
    }
    for (m, n, want) in [(0usize, 0usize, -EULER_GAMMA), (1, 0, -1.0)] {
        out.push(case(format!("spot/alpha=-1/m={m}/n={n}"), "anomalous", 1e-12, move || {
            Outcome::compare(laguerre_gram_entry(m, n, c(-1.0)).0, vec![c(want)])
        }));
    }
    out
}

fn gamma_expansion(m: u32) -> SingularExpansion {
    let terms: Vec<(f64, f64)> = (0..m)
        .map(|k| {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            (k as f64 - m as f64, s / factorial(k as u64))
        })
        .collect();
    SingularExpansion::real(&terms).expect("distinct exponents")
}

fn dimreg(cfg: &QuadratureConfig) -> Vec<Case> {
    let mut out = Vec::new();
    for m in 1..=3u32 {
        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
        let fp = sign * digamma_at_positive_integer(m as u64) / factorial(m as u64 - 1);
        let res = sign / factorial(m as u64 - 1);
        out.push(case(format!("gamma/m={m}/finite-part"), "pole", 1e-8, move || {
            Outcome::compare(c(fp), vec![finite_part(&AlphaFamily::gamma(), m, EPS_LADDER)?])
        }));
        out.push(case(format!("gamma/m={m}/residue"), "pole", 1e-6, move || {
            Outcome::compare(c(res), vec![residue(&AlphaFamily::gamma(), m, EPS_LADDER)?])
        }));
        let cfg = *cfg;
        out.push(case(format!("gamma/m={m}/anomalous"), "anomalous", 1e-6, move || {
            let mf = m as f64;
            let gq = gen_integrate(&|r: f64| c(r.powf(-mf) * (-r).exp()), &gamma_expansion(m), &cfg)?;
            let dr = anomalous_value(&AlphaFamily::gamma(), m)?;
            Outcome::compare(c(fp), vec![gq.value, dr])
        }));
    }
    for (t1, t2) in [(0.3, 1.7), (-0.6, 0.9), (1.2, 2.5)] {
        for m in 1..=2u32 {
            let tag = format!("theta={t1},{t2}/m={m}");
            out.push(case(format!("tricomi/{tag}/prefactored-finite-part"), "pole", 1e-6, move || {
                let fam = AlphaFamily::tricomi_pair_prefactored(c(t1), c(t2));
                let cf = tricomi_bilinear_finite_part(c(t1), c(t2), m)?;
                Outcome::compare(cf, vec![finite_part(&fam, m, EPS_LADDER)?])
            }));
            out.push(case(format!("tricomi/{tag}/residue"), "pole", 1e-6, move || {
                let fam = AlphaFamily::tricomi_pair(c(t1), c(t2));
                let cf = tricomi_pair_coefficient(c(t1), c(t2), c(-(m as f64)), m - 1)?;
                Outcome::compare(cf, vec![residue(&fam, m, EPS_LADDER)?])
            }));
        }
    }
    out
}

fn genquad(cfg: &QuadratureConfig) -> Vec<Case> {
    let mut out = Vec::new();
    let e = |r: f64| c((-r).exp());
    let cfg1 = *cfg;
    out.push(case("inverse-power-one", "anomalous", 1e-9, move || {
        let exp0 = SingularExpansion::real(&[(-1.0, 1.0)])?;
        let v = gen_integrate(&|r: f64| c((-r).exp() / r), &exp0, &cfg1)?;
        Outcome::compare(v.value, vec![c(-EULER_GAMMA)])
    }));
    let cfg2 = *cfg;
    out.push(case("inverse-square-root", "convergent", 1e-9, move || {
        let v = gen_integrate(&|r: f64| c((-r).exp() / r.sqrt()), &SingularExpansion::empty(), &cfg2)?;
        Outcome::compare(v.value, vec![c(PI.sqrt())])
    }));
    type Pair = (Box<dyn Fn(f64) -> Complex64 + Send + Sync>, Box<dyn Fn(f64) -> Complex64 + Send + Sync>);
    let parts = |name: &'static str,
                 f: Pair,
                 g: Pair,
                 exps: [&'static [(f64, f64)]; 3],
                 cfg: QuadratureConfig| {
        case(format!("integration-by-parts/{name}"), "parts", 1e-8, move || {
            let p = PartsProblem {
                f: &*f.0,
                df: &*f.1,
                g: &*g.0,
                dg: &*g.1,
                f_dg: SingularExpansion::real(exps[0])?,
                df_g: SingularExpansion::real(exps[1])?,
                fg: SingularExpansion::real(exps[2])?,
            };
            let (l, r) = integrate_by_parts_check(&p, &cfg)?;
            Outcome::compare(l, vec![r])
        })
    };
    out.push(parts(
        "classical",
        (Box::new(e), Box::new(move |r| -e(r))),
        (Box::new(|r| c(r)), Box::new(|_| c(1.0))),
        [&[], &[], &[]],
        *cfg,
    ));
    out.push(parts(
        "inverse-power",
        (Box::new(|r| c(1.0 / r)), Box::new(|r| c(-1.0 / (r * r)))),
        (Box::new(e), Box::new(move |r| -e(r))),
        [&[(-1.0, -1.0)], &[(-2.0, -1.0), (-1.0, 1.0)], &[(-1.0, 1.0)]],
        *cfg,
    ));
    out.push(parts(
        "fractional-power",
        (Box::new(|r: f64| c(r.powf(0.3))), Box::new(|r: f64| c(0.3 * r.powf(-0.7)))),
        (Box::new(e), Box::new(move |r| -e(r))),
        [&[], &[], &FRACTIONAL_FG],
        *cfg,
    ));
    out
}

/// Leading terms of `z^{0.3} e^{−z}`, removed before taking the regular value.
const FRACTIONAL_FG: [(f64, f64); 6] = [
    (0.3, 1.0),
    (1.3, -1.0),
    (2.3, 0.5),
    (3.3, -1.0 / 6.0),
    (4.3, 1.0 / 24.0),
    (5.3, -1.0 / 120.0),
];

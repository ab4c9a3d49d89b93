use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use genint::verify::{reports_to_json, round15, run_suites, Suite, VerificationReport, VerifyOptions};
use genint::{gram_matrix, kummer_f, laguerre_build, tricomi_u, Complex64, LieParams, QuadratureConfig};
use serde_json::json;

#[derive(Parser)]
#[command(name = "genint", version, about = "Generalized integrals of confluent functions and Laguerre polynomials")]
struct Cli {
    /// File of `key=value` lines overriding the quadrature defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    abs_tol: Option<f64>,
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    #[arg(long, global = true)]
    split: Option<f64>,
    #[arg(long, global = true)]
    tail_cutoff: Option<f64>,
    #[arg(long, global = true)]
    max_levels: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Function {
    Kummer,
    Tricomi,
    Laguerre,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Kummer's F, Tricomi's U or a Laguerre polynomial.
    Eval {
        #[arg(long = "fn", value_enum)]
        function: Function,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        theta: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Degree, for `laguerre`.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
        /// Print a JSON object instead of the bare value.
        #[arg(long)]
        json: bool,
    },
    /// Print the generalized Gram matrix of L_0^α … L_{dim−1}^α.
    Gram {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Also print the regime of every entry.
        #[arg(long)]
        verbose: bool,
    },
    /// Run verification suites; exits 1 if any case fails.
    Verify {
        /// identities, confluent, tricomi-bilinear, laguerre-gram, dimreg, genquad or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1.0)]
        tol_scale: f64,
        /// Write the JSON report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Record per-case wall-clock time in the report.
        #[arg(long)]
        timings: bool,
    },
}

/// Failure carrying its exit code.
struct Failure(u8, String);

fn bad_args(msg: impl Into<String>) -> Failure {
    Failure(2, msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("genint: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let cfg = quadrature_config(&cli)?;
    match cli.command {
        Command::Eval {
            function,
            theta,
            alpha,
            n,
            z,
            json,
        } => eval(function, &theta, &alpha, n, z, json),
        Command::Gram {
            alpha,
            dim,
            format,
            verbose,
        } => gram(&alpha, dim, format, verbose),
        Command::Verify {
            suite,
            tol_scale,
            json,
            timings,
        } => verify(&suite, tol_scale, json, timings, cfg),
    }
}

fn quadrature_config(cli: &Cli) -> Result<QuadratureConfig, Failure> {
    let mut cfg = QuadratureConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| bad_args(format!("cannot read {}: {e}", path.display())))?;
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad_args(format!("{}:{}: expected key=value", path.display(), no + 1)))?;
            set_key(&mut cfg, key.trim(), value.trim())
                .map_err(|m| bad_args(format!("{}:{}: {m}", path.display(), no + 1)))?;
        }
    }
    if let Some(v) = cli.abs_tol {
        cfg.abs_tol = v;
    }
    if let Some(v) = cli.rel_tol {
        cfg.rel_tol = v;
    }
    if let Some(v) = cli.split {
        cfg.split = v;
    }
    if let Some(v) = cli.tail_cutoff {
        cfg.tail_cutoff = Some(v);
    }
    if let Some(v) = cli.max_levels {
        cfg.max_levels = v;
    }
    cfg.validate().map_err(|e| bad_args(e.to_string()))?;
    Ok(cfg)
}

fn set_key(cfg: &mut QuadratureConfig, key: &str, value: &str) -> Result<(), String> {
    let num = || value.parse::<f64>().map_err(|_| format!("bad number {value:?} for {key}"));
    match key {
        "abs_tol" => cfg.abs_tol = num()?,
        "rel_tol" => cfg.rel_tol = num()?,
        "split" => cfg.split = num()?,
        "tail_cutoff" => cfg.tail_cutoff = Some(num()?),
        "max_levels" => {
            cfg.max_levels = value
                .parse()
                .map_err(|_| format!("bad integer {value:?} for max_levels"))?
        }
        _ => return Err(format!("unknown key {key:?}")),
    }
    Ok(())
}

/// Parses `a`, `bi` or `a±bi`.
fn parse_complex(s: &str) -> Option<Complex64> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (body[..k].parse::<f64>().ok()?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse::<f64>().ok()?,
    };
    Some(Complex64::new(re, im))
}

fn complex_arg(name: &str, s: &str) -> Result<Complex64, Failure> {
    parse_complex(s).ok_or_else(|| bad_args(format!("--{name}: cannot parse {s:?} as a complex number")))
}

fn fmt_real(x: f64) -> String {
    let x = round15(x);
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x}")
    }
}

/// `a+bi` with 15 significant digits.
fn fmt_complex(z: Complex64) -> String {
    let im = round15(z.im);
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{}{}{}i", fmt_real(z.re), sign, fmt_real(im.abs()))
}

fn json_complex(z: Complex64) -> serde_json::Value {
    json!({"re": round15(z.re), "im": round15(z.im)})
}

fn eval(f: Function, theta: &str, alpha: &str, n: Option<usize>, z: f64, as_json: bool) -> Result<u8, Failure> {
    let theta = complex_arg("theta", theta)?;
    let alpha = complex_arg("alpha", alpha)?;
    if !z.is_finite() {
        return Err(bad_args("--z must be finite"));
    }
    let (name, params, value) = match f {
        Function::Kummer | Function::Tricomi => {
            if !(z > 0.0) {
                return Err(bad_args(format!("--z must be positive, got {z}")));
            }
            let p = LieParams::new(theta, alpha);
            let (name, v) = match f {
                Function::Kummer => ("kummer", kummer_f(p, z)),
                _ => ("tricomi", tricomi_u(p, z)),
            };
            let v = v.map_err(|e| bad_args(e.to_string()))?;
            let params = json!({"theta": json_complex(theta), "alpha": json_complex(alpha), "z": z});
            (name, params, v)
        }
        Function::Laguerre => {
            let n = n.ok_or_else(|| bad_args("--fn laguerre needs --n"))?;
            let v = laguerre_build(n, alpha).eval(z);
            let params = json!({"n": n, "alpha": json_complex(alpha), "z": z});
            ("laguerre", params, v)
        }
    };
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Failure(1, format!("{name}: value is not finite")));
    }
    if as_json {
        let out = json!({"fn": name, "params": params, "value": json_complex(value)});
        println!("{out}");
    } else {
        println!("{}", fmt_complex(value));
    }
    Ok(0)
}

fn gram(alpha: &str, dim: usize, format: Format, verbose: bool) -> Result<u8, Failure> {
    let alpha = complex_arg("alpha", alpha)?;
    let g = gram_matrix(alpha, dim).map_err(|e| bad_args(e.to_string()))?;
    match format {
        Format::Csv => {
            for row in &g.entries {
                let cells: Vec<String> = row.iter().map(|&z| fmt_complex(z)).collect();
                println!("{}", cells.join(","));
            }
            if verbose {
                println!();
                for row in &g.regime {
                    let cells: Vec<&str> = row.iter().map(|r| r.label()).collect();
                    println!("{}", cells.join(","));
                }
            }
        }
        Format::Json => {
            let entries: Vec<Vec<serde_json::Value>> = g
                .entries
                .iter()
                .map(|row| row.iter().map(|&z| json_complex(z)).collect())
                .collect();
            let mut out = json!({"alpha": json_complex(alpha), "dim": dim, "entries": entries});
            if verbose {
                let regime: Vec<Vec<&str>> = g
                    .regime
                    .iter()
                    .map(|row| row.iter().map(|r| r.label()).collect())
                    .collect();
                out["regime"] = json!(regime);
            }
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
    }
    Ok(0)
}

fn suite_of(id: &str) -> &str {
    id.split('/').next().unwrap_or(id)
}

fn verify(
    suite: &str,
    tol_scale: f64,
    json_out: Option<PathBuf>,
    timings: bool,
    cfg: QuadratureConfig,
) -> Result<u8, Failure> {
    let suites = Suite::parse(suite).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        bad_args(format!("unknown suite {suite:?}; expected one of {} or all", names.join(", ")))
    })?;
    if !(tol_scale > 0.0 && tol_scale.is_finite()) {
        return Err(bad_args(format!("--tol-scale must be positive, got {tol_scale}")));
    }
    let opts = VerifyOptions {
        tol_scale,
        timings,
        config: cfg,
    };
    let reports = run_suites(&suites, &opts).map_err(|e| bad_args(e.to_string()))?;
    if let Some(path) = json_out {
        let mut text = reports_to_json(&reports);
        text.push('\n');
        std::fs::write(&path, text)
            .map_err(|e| Failure(1, format!("cannot write {}: {e}", path.display())))?;
    }
    print_summary(&reports);
    Ok(if reports.iter().any(|r| r.is_failure()) { 1 } else { 0 })
}

fn print_summary(reports: &[VerificationReport]) {
    let mut tally: BTreeMap<&str, [usize; 3]> = BTreeMap::new();
    for r in reports {
        let t = tally.entry(suite_of(&r.id)).or_default();
        if r.pass {
            t[0] += 1;
        } else if r.flagged {
            t[2] += 1;
            println!("FLAG {} rel_err={:e} tol={:e}", r.id, r.rel_err, r.tol);
        } else {
            t[1] += 1;
            match &r.note {
                Some(note) => println!("FAIL {} error: {note}", r.id),
                None => println!("FAIL {} rel_err={:e} tol={:e}", r.id, r.rel_err, r.tol),
            }
        }
    }
    for (suite, [pass, fail, flag]) in &tally {
        println!("{suite}: {pass} passed, {fail} failed, {flag} flagged");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        let c = Complex64::new;
        assert_eq!(parse_complex("1.5"), Some(c(1.5, 0.0)));
        assert_eq!(parse_complex("-2"), Some(c(-2.0, 0.0)));
        assert_eq!(parse_complex("1+2i"), Some(c(1.0, 2.0)));
        assert_eq!(parse_complex("-1.5-0.5i"), Some(c(-1.5, -0.5)));
        assert_eq!(parse_complex("2i"), Some(c(0.0, 2.0)));
        assert_eq!(parse_complex("-i"), Some(c(0.0, -1.0)));
        assert_eq!(parse_complex("1e-3+2e+1i"), Some(c(1e-3, 20.0)));
        assert_eq!(parse_complex("x"), None);
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(fmt_complex(Complex64::new(-0.5772156649015329, 0.0)), "-0.577215664901533+0i");
        assert_eq!(fmt_complex(Complex64::new(1.0, -2.0)), "1-2i");
        assert_eq!(fmt_complex(Complex64::new(-0.0, -0.0)), "0+0i");
    }
}

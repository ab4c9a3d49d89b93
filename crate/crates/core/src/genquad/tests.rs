use super::*;
use crate::scalar::EULER_GAMMA;
use std::f64::consts::PI;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn exp_m(r: f64) -> Complex64 {
    c((-r).exp())
}

fn cases() -> Vec<(Box<dyn Fn(f64) -> Complex64>, SingularExpansion, f64)> {
    vec![
        (Box::new(exp_m), SingularExpansion::empty(), 1.0),
        (
            Box::new(|r: f64| exp_m(r) / r),
            SingularExpansion::real(&[(-1.0, 1.0)]).unwrap(),
            -EULER_GAMMA,
        ),
        (
            Box::new(|r: f64| exp_m(r) / r.sqrt()),
            SingularExpansion::real(&[(-0.5, 1.0)]).unwrap(),
            PI.sqrt(),
        ),
        (
            Box::new(|r: f64| exp_m(r) / (r * r)),
            SingularExpansion::real(&[(-2.0, 1.0), (-1.0, -1.0)]).unwrap(),
            EULER_GAMMA - 1.0,
        ),
    ]
}

#[test]
fn reference_values() {
    let cfg = QuadratureConfig::default();
    for (f, e, want) in cases() {
        let r = gen_integrate(&*f, &e, &cfg).unwrap();
        assert!((r.value - want).norm() < 1e-10, "{} vs {want}", r.value);
    }
}

#[test]
fn anomaly_flags() {
    let cfg = QuadratureConfig::default();
    let e = SingularExpansion::real(&[(-2.0, 1.0), (-1.0, -1.0)]).unwrap();
    let r = gen_integrate(&|r: f64| exp_m(r) / (r * r), &e, &cfg).unwrap();
    assert!(r.anomalous && r.scale_dependent);
    assert_eq!(r.anomalous_exponents, vec![-2, -1]);
    assert!((r.finite_part_terms - c(-1.0)).norm() < 1e-15);

    let e = SingularExpansion::real(&[(-0.5, 1.0)]).unwrap();
    let r = gen_integrate(&|r: f64| exp_m(r) / r.sqrt(), &e, &cfg).unwrap();
    assert!(!r.anomalous && !r.scale_dependent);
    assert!((r.finite_part_terms - c(2.0)).norm() < 1e-15);
}

#[test]
fn repeated_exponent_rejected() {
    assert!(SingularExpansion::real(&[(-1.0, 1.0), (-1.0, 2.0)]).is_err());
}

#[test]
fn bad_config_rejected() {
    let cfg = QuadratureConfig {
        split: -1.0,
        ..Default::default()
    };
    assert!(gen_integrate(&exp_m, &SingularExpansion::empty(), &cfg).is_err());
}

#[test]
fn missing_singular_term_is_an_error() {
    let cfg = QuadratureConfig::default();
    let e = SingularExpansion::real(&[(-2.0, 1.0)]).unwrap();
    assert!(gen_integrate(&|r: f64| exp_m(r) / (r * r), &e, &cfg).is_err());
}

#[test]
fn agrees_with_plain_integral() {
    let cfg = QuadratureConfig::default();
    let f = |r: f64| c(r.powf(-0.3) * (-r * r).exp());
    let g = gen_integrate(&f, &SingularExpansion::empty(), &cfg).unwrap();
    let plain = tanh_sinh::integrate(&f, 0.0, 1.0, 1e-15, 1e-15, 12).unwrap().0
        + kronrod::integrate(&f, 1.0, 40.0, 1e-15).unwrap().0;
    assert!((g.value - plain).norm() < 1e-10);
}

#[test]
fn padding_with_regular_terms() {
    let cfg = QuadratureConfig::default();
    let f = |r: f64| exp_m(r) / (r * r);
    let base = SingularExpansion::real(&[(-2.0, 1.0), (-1.0, -1.0)]).unwrap();
    let padded =
        SingularExpansion::real(&[(-2.0, 1.0), (-1.0, -1.0), (0.0, 0.5), (1.0, -1.0 / 6.0)])
            .unwrap();
    let zero = SingularExpansion::real(&[(-2.0, 1.0), (-1.0, -1.0), (0.5, 0.0)]).unwrap();
    let a = gen_integrate(&f, &base, &cfg).unwrap().value;
    for e in [padded, zero] {
        let b = gen_integrate(&f, &e, &cfg).unwrap().value;
        assert!((a - b).norm() < 1e-10, "{a} {b}");
    }
}

#[test]
fn split_invariance() {
    for (f, e, want) in cases() {
        for s in [0.5, 0.75, 1.5, 2.0] {
            let cfg = QuadratureConfig {
                split: s,
                ..Default::default()
            };
            let v = gen_integrate(&*f, &e, &cfg).unwrap().value;
            assert!((v - want).norm() < 1e-10, "split {s}: {v} vs {want}");
        }
    }
}

#[test]
fn local_series_subtraction() {
    // e^{-r}/r² with its full power series near the origin
    let coeffs: Vec<Complex64> = (0..30)
        .map(|k| c((-1f64).powi(k) / crate::scalar::factorial(k as u64)))
        .collect();
    let local = LocalSeries::from_powers(c(-2.0), &coeffs, 2.0);
    let e = SingularExpansion::real(&[(-2.0, 1.0), (-1.0, -1.0)]).unwrap();
    let cfg = QuadratureConfig::default();
    let r = gen_integrate_local(&|r: f64| exp_m(r) / (r * r), &local, &e, &cfg).unwrap();
    assert!((r.value - (EULER_GAMMA - 1.0)).norm() < 1e-13, "{}", r.value);
    let short = SingularExpansion::real(&[(-2.0, 1.0)]).unwrap();
    assert!(gen_integrate_local(&|r: f64| exp_m(r) / (r * r), &local, &short, &cfg).is_err());
}

/// `−∫_r^∞ f`, computed independently on a fixed grid of intervals.
fn antiderivative(f: &dyn Fn(f64) -> Complex64, r: f64) -> Complex64 {
    let mut s = Complex64::zero();
    let mut a = r;
    while a < 60.0 {
        let b = (2.0 * a).min(60.0);
        s += kronrod::integrate(f, a, b, 1e-17).unwrap().0;
        a = b;
    }
    -s
}

#[test]
fn duality_with_regular_value() {
    // expansions of −∫_r^∞ f for the reference cases
    let exps = [
        SingularExpansion::empty(),
        SingularExpansion::empty().with_log(c(1.0)),
        SingularExpansion::real(&[(0.5, 2.0)]).unwrap(),
        SingularExpansion::real(&[(-1.0, -1.0)])
            .unwrap()
            .with_log(c(-1.0)),
    ];
    let cfg = QuadratureConfig::default();
    for ((f, e, _), fe) in cases().into_iter().zip(exps) {
        let g = gen_integrate(&*f, &e, &cfg).unwrap().value;
        let rv = regular_value(&|r: f64| antiderivative(&*f, r), &fe).unwrap();
        assert!((g + rv).norm() < 1e-7, "{g} vs {}", -rv);
    }
}

#[test]
fn regular_value_examples() {
    let e = SingularExpansion::real(&[(-1.0, 1.0)]).unwrap();
    let rv = regular_value(&|r: f64| exp_m(r) / r, &e).unwrap();
    assert!((rv + 1.0).norm() < 1e-9, "{rv}");
    let rv = regular_value(&|r: f64| c(r.cos() + r.sqrt()), &SingularExpansion::empty()).unwrap();
    assert!((rv - 1.0).norm() < 1e-9, "{rv}");
}

fn parts(
    f: &dyn Fn(f64) -> Complex64,
    df: &dyn Fn(f64) -> Complex64,
    g: &dyn Fn(f64) -> Complex64,
    dg: &dyn Fn(f64) -> Complex64,
    f_dg: &[(f64, f64)],
    df_g: &[(f64, f64)],
    fg: &[(f64, f64)],
) -> (Complex64, Complex64) {
    let p = PartsProblem {
        f,
        df,
        g,
        dg,
        f_dg: SingularExpansion::real(f_dg).unwrap(),
        df_g: SingularExpansion::real(df_g).unwrap(),
        fg: SingularExpansion::real(fg).unwrap(),
    };
    integrate_by_parts_check(&p, &QuadratureConfig::default()).unwrap()
}

#[test]
fn integration_by_parts() {
    let (l, r) = parts(
        &|z| c(1.0 / z),
        &|z| c(-1.0 / (z * z)),
        &exp_m,
        &|z| -exp_m(z),
        &[(-1.0, -1.0)],
        &[(-2.0, -1.0), (-1.0, 1.0)],
        &[(-1.0, 1.0)],
    );
    assert!((l - r).norm() < 1e-8 && (l - EULER_GAMMA).norm() < 1e-9, "{l} {r}");

    let (l, r) = parts(
        &|z| c(z.sqrt()),
        &|z| c(0.5 / z.sqrt()),
        &exp_m,
        &|z| -exp_m(z),
        &[],
        &[(-0.5, 0.5)],
        &[],
    );
    assert!((l - r).norm() < 1e-8 && (l + PI.sqrt() / 2.0).norm() < 1e-9, "{l} {r}");

    let (l, r) = parts(
        &|z| c(1.0 / z),
        &|z| c(-1.0 / (z * z)),
        &|z| c((-2.0 * z).exp()),
        &|z| c(-2.0 * (-2.0 * z).exp()),
        &[(-1.0, -2.0)],
        &[(-2.0, -1.0), (-1.0, 2.0)],
        &[(-1.0, 1.0)],
    );
    let want = 2.0 * (EULER_GAMMA + 2f64.ln());
    assert!((l - r).norm() < 1e-8 && (l - want).norm() < 1e-9, "{l} {r}");

    // classical cases
    let (l, r) = parts(&exp_m, &|z| -exp_m(z), &|z| c(z), &|_| c(1.0), &[], &[], &[]);
    assert!((l - r).norm() < 1e-10 && (l - 1.0).norm() < 1e-10, "{l} {r}");
    let (l, r) = parts(
        &|z| c(z.powf(0.3)),
        &|z| c(0.3 * z.powf(-0.7)),
        &exp_m,
        &|z| -exp_m(z),
        &[],
        &[],
        &[
            (0.3, 1.0),
            (1.3, -1.0),
            (2.3, 0.5),
            (3.3, -1.0 / 6.0),
            (4.3, 1.0 / 24.0),
            (5.3, -1.0 / 120.0),
        ],
    );
    // Γ(1.3)
    assert!((l - r).norm() < 1e-10 && (l + 0.897_470_696_306_277_2).norm() < 1e-10, "{l} {r}");
}

#[test]
fn tail_cutoff_not_fooled_by_zeros() {
    // L₁²(z) L₂²(z) z² e^{−z} vanishes at z = 2 and z = 3
    let f = |z: f64| c((3.0 - z) * (6.0 - 4.0 * z + 0.5 * z * z) * z * z * (-z).exp());
    let v = gen_integrate(&f, &SingularExpansion::empty(), &QuadratureConfig::default()).unwrap();
    assert!(v.value.norm() < 1e-12, "{}", v.value);
}

use super::*;
use crate::expansions::{laguerre_tricomi_factor, BilinearIntegrandSpec};
use crate::genquad::QuadratureConfig;
use crate::scalar::EULER_GAMMA;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

fn oracle(t1: f64, t2: f64, a: f64) -> Complex64 {
    BilinearIntegrandSpec::tricomi(c(t1), c(t2), c(a))
        .gen_integral(&QuadratureConfig::default())
        .unwrap()
        .value
}

#[test]
fn alpha_zero_examples() {
    let v = tricomi_bilinear(c(2.0), c(0.0), c(0.0)).unwrap();
    assert!(close(v, c(4.0 / PI), 1e-13), "{v}");
    let v = tricomi_bilinear(c(0.0), c(0.0), c(0.0)).unwrap();
    assert!(close(v, c(PI / 2.0), 1e-13), "{v}");
}

#[test]
fn laguerre_point_example() {
    // (m, n, α) = (1, 0, −1): θ₁ = −2, θ₂ = 0
    let v = tricomi_bilinear(c(-2.0), c(0.0), c(-1.0)).unwrap();
    assert!(close(v * (-1.0), c(-1.0), 1e-13), "{v}");
}

#[test]
fn convergent_and_continued_values_match_quadrature() {
    let thetas = [0.0, 1.2, 2.8];
    for a in [-0.6, 0.3, -1.4, -2.3] {
        for &t1 in &thetas {
            for &t2 in &thetas {
                if t1 == t2 {
                    continue;
                }
                let v = tricomi_bilinear(c(t1), c(t2), c(a)).unwrap();
                let o = oracle(t1, t2, a);
                assert!(close(v, o, 1e-7), "α={a} θ=({t1},{t2}): {v} vs {o}");
            }
        }
    }
}

#[test]
fn equal_theta_values_match_quadrature() {
    for (t, a) in [(0.7, -0.6), (1.9, 0.45), (0.4, -1.7)] {
        let v = tricomi_bilinear(c(t), c(t), c(a)).unwrap();
        let o = oracle(t, t, a);
        assert!(close(v, o, 1e-7), "θ={t} α={a}: {v} vs {o}");
    }
}

#[test]
fn anomalous_values_match_quadrature() {
    for a in [-1.0, -2.0, 1.0, 2.0] {
        for (t1, t2) in [(0.3, 1.7), (1.1, 2.6), (0.8, 0.8)] {
            let v = tricomi_bilinear(c(t1), c(t2), c(a)).unwrap();
            let o = oracle(t1, t2, a);
            assert!(close(v, o, 1e-6), "α={a} θ=({t1},{t2}): {v} vs {o}");
        }
    }
}

#[test]
fn equal_theta_is_the_limit() {
    for (t, a) in [(0.6, 0.35), (1.3, -1.6), (0.9, -2.0), (2.1, 1.0)] {
        let h = 1e-5;
        let side = |d: f64| tricomi_bilinear(c(t), c(t + d), c(a)).unwrap();
        // symmetric average removes the O(h) term
        let lim = (side(h) + side(-h)) * 0.5;
        let v = tricomi_bilinear(c(t), c(t), c(a)).unwrap();
        assert!((lim - v).norm() < 1e-6 * v.norm().max(1e-3), "θ={t} α={a}: {lim} {v}");
    }
}

#[test]
fn finite_part_is_symmetric() {
    for m in 1..=3 {
        let a = tricomi_bilinear_finite_part(c(2.4), c(0.6), m).unwrap();
        let b = tricomi_bilinear_finite_part(c(0.6), c(2.4), m).unwrap();
        assert!((a - b).norm() < 1e-13 * a.norm().max(1.0));
    }
    assert!(tricomi_bilinear_finite_part(c(1.0), c(1.0), 1).is_err());
}

#[test]
fn gram_entry_examples() {
    let (v, r) = laguerre_gram_entry(1, 1, c(0.0));
    assert!(close(v, c(1.0), 1e-15) && r == Regime::Classical);
    let (v, r) = laguerre_gram_entry(0, 0, c(-1.0));
    assert!(close(v, c(-EULER_GAMMA), 1e-15) && r == Regime::Anomalous);
    let (v, r) = laguerre_gram_entry(1, 1, c(-1.0));
    assert!(close(v, c(1.0), 1e-15) && r == Regime::ReducedClassical);
    let (v, _) = laguerre_gram_entry(1, 0, c(-2.0));
    assert!(close(v, c(1.0), 1e-15));
    let (v, _) = laguerre_gram_entry(0, 1, c(-2.0));
    assert!(close(v, c(1.0), 1e-15));
}

#[test]
fn gram_matrix_examples() {
    let g = gram_matrix(c(0.5), 3).unwrap();
    let sq = PI.sqrt();
    let diag = [sq / 2.0, 0.75 * sq, 15.0 / 8.0 * sq / 2.0];
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j { c(diag[i]) } else { c(0.0) };
            assert!(close(g.entries[i][j], want, 1e-14));
        }
    }
    let g = gram_matrix(c(-1.0), 2).unwrap();
    let want = [[-EULER_GAMMA, -1.0], [-1.0, 1.0]];
    for i in 0..2 {
        for j in 0..2 {
            assert!(close(g.entries[i][j], c(want[i][j]), 1e-15));
        }
    }
    let g = gram_matrix(c(0.0), 3).unwrap();
    for i in 0..3 {
        assert!(close(g.entries[i][i], c(1.0), 1e-15));
    }
    assert!(gram_matrix(c(1.0), 0).is_err());
}

#[test]
fn gram_structure_for_negative_integers() {
    for na in 1..=3i64 {
        let g = gram_matrix(c(-(na as f64)), 6).unwrap();
        for m in 0..6 {
            for n in 0..6 {
                assert_eq!(g.entries[m][n], g.entries[n][m]);
                let lo = m.min(n) as i64;
                let want = if lo >= na {
                    Regime::ReducedClassical
                } else {
                    Regime::Anomalous
                };
                assert_eq!(g.regime[m][n], want);
                if m != n && lo < na {
                    let s = if (na + lo) % 2 == 0 { 1.0 } else { -1.0 };
                    assert!(g.entries[m][n].re * s > 0.0, "α=−{na} ({m},{n})");
                }
                if lo >= na && m != n {
                    assert_eq!(g.entries[m][n], c(0.0));
                }
            }
        }
    }
}

#[test]
fn gram_entries_match_quadrature() {
    let cfg = QuadratureConfig::default();
    for a in [-2.0, -1.5, 0.5] {
        for m in 0..3 {
            for n in 0..3 {
                let (v, _) = laguerre_gram_entry(m, n, c(a));
                let o = BilinearIntegrandSpec::laguerre(m, n, c(a))
                    .gen_integral(&cfg)
                    .unwrap()
                    .value;
                assert!((v - o).norm() < 1e-7 * v.norm().max(1.0), "α={a} ({m},{n}): {v} {o}");
            }
        }
    }
}

#[test]
fn laguerre_points_of_the_tricomi_formulas() {
    for a in [0.5, -1.5, 0.0, -1.0, -2.0, -3.0] {
        for m in 0..4usize {
            for n in 0..4usize {
                let t = |k: usize| c(-1.0 - a - 2.0 * k as f64);
                let tri = tricomi_bilinear(t(m), t(n), c(a)).unwrap();
                let (lag, _) = laguerre_gram_entry(m, n, c(a));
                let scaled = lag * laguerre_tricomi_factor(m, n);
                assert!(
                    (tri - scaled).norm() < 1e-6 * scaled.norm().max(1.0),
                    "α={a} ({m},{n}): {tri} vs {scaled}"
                );
            }
        }
    }
}

use std::f64::consts::PI;

use apoly_core::mahler::{mahler_measure, roots_on_slice};
use apoly_core::{builtin, KnotId, LaurentPoly2};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

/// Midpoint rule for the torus average of `log|p|` on an `n x n` grid.
fn brute_force(p: &LaurentPoly2, n: usize) -> f64 {
    let h = 1.0 / n as f64;
    let rows: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let x = Complex64::from_polar(1.0, 2.0 * PI * (i as f64 + 0.5) * h);
            (0..n)
                .map(|j| {
                    let y = Complex64::from_polar(1.0, 2.0 * PI * (j as f64 + 0.5) * h);
                    p.eval(x, y).unwrap().norm().ln()
                })
                .sum::<f64>()
        })
        .collect();
    rows.iter().sum::<f64>() * h * h
}

/// `Lambda(theta) = 1/2 sum sin(2 n theta) / n^2`.
fn lobachevsky(theta: f64) -> f64 {
    0.5 * (1..=2_000_000)
        .rev()
        .map(|n| (2.0 * n as f64 * theta).sin() / (n as f64 * n as f64))
        .sum::<f64>()
}

fn random_poly(rng: &mut StdRng) -> LaurentPoly2 {
    loop {
        let terms: Vec<((i32, i32), num_bigint::BigInt)> = (0..rng.gen_range(2..5))
            .map(|_| {
                (
                    (rng.gen_range(0..3), rng.gen_range(0..3)),
                    rng.gen_range(-3i64..=3).into(),
                )
            })
            .collect();
        let p = LaurentPoly2::from_terms(terms);
        if p.len() >= 2 {
            return p;
        }
    }
}

#[test]
fn one_plus_x_plus_y_against_riemann_sum() {
    let p: LaurentPoly2 = "1 + x + y".parse().unwrap();
    let oracle = brute_force(&p, 4096);
    let m = mahler_measure(&p, 1e-8).unwrap();
    assert!(
        (m.value - oracle).abs() < 1e-4,
        "{} vs oracle {oracle}",
        m.value
    );
    assert!((m.value - 0.323_065_947_2).abs() < 1e-8, "{}", m.value);
}

#[test]
fn fig8_measure_against_lobachevsky_volume() {
    let volume = 6.0 * lobachevsky(PI / 3.0);
    assert!((volume - 2.029_883_212_8).abs() < 1e-9);
    let m = mahler_measure(&builtin(KnotId::Fig8), 1e-8).unwrap();
    assert!(
        (PI * m.value - volume).abs() < 5e-3,
        "pi m = {}",
        PI * m.value
    );
}

#[test]
fn jensen_matches_brute_force_on_random_polynomials() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..5 {
        let p = random_poly(&mut rng);
        let coarse = brute_force(&p, 512);
        let fine = brute_force(&p, 1024);
        let m = mahler_measure(&p, 1e-6).unwrap().value;
        let bound = (4.0 * (coarse - fine).abs()).max(1e-6);
        assert!(
            (m - fine).abs() < bound,
            "{p}: jensen {m}, grid {fine} (coarse {coarse})"
        );
    }
}

#[test]
fn multiplicativity_and_monomial_invariance() {
    let tol = 1e-6;
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..5 {
        let p = random_poly(&mut rng);
        let q = random_poly(&mut rng);
        let mp = mahler_measure(&p, tol).unwrap().value;
        let mq = mahler_measure(&q, tol).unwrap().value;
        let mpq = mahler_measure(&(&p * &q), tol).unwrap().value;
        assert!(
            (mpq - mp - mq).abs() < 2.0 * tol,
            "{p} * {q}: {mpq} vs {mp} + {mq}"
        );
        let shifted = mahler_measure(&p.shifted(3, -2), tol).unwrap().value;
        assert!((shifted - mp).abs() < tol, "{p}");
    }
}

#[test]
fn slice_roots_reconstruct_the_slice() {
    let mut rng = StdRng::seed_from_u64(8);
    let a = builtin(KnotId::K52);
    let (cleared, _) = a.cleared();
    for _ in 0..20 {
        let x0 = Complex64::from_polar(1.0, rng.gen_range(-PI..PI));
        let roots = roots_on_slice(&a, x0).unwrap();
        assert_eq!(roots.len(), 3);
        let lead: Complex64 = cleared
            .terms()
            .filter(|((_, j), _)| *j == 3)
            .map(|((i, _), c)| x0.powi(i) * num_traits::ToPrimitive::to_f64(c).unwrap())
            .sum();
        let y = Complex64::new(0.3, -0.7);
        let rebuilt = roots.iter().fold(lead, |acc, r| acc * (y - r));
        let direct = cleared.eval(x0, y).unwrap();
        assert!((rebuilt - direct).norm() < 1e-8 * (1.0 + direct.norm()));
        for r in &roots {
            let scale = 1.0
                + cleared
                    .terms()
                    .map(|(_, c)| num_traits::ToPrimitive::to_f64(c).unwrap().abs())
                    .sum::<f64>()
                    * r.norm().max(1.0).powi(3);
            assert!(cleared.eval(x0, *r).unwrap().norm() < 1e-9 * scale);
        }
    }
}

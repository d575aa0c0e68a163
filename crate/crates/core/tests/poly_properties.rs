use apoly_core::{builtin, KnotId, LaurentPoly2};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn small_poly() -> impl Strategy<Value = LaurentPoly2> {
    prop::collection::vec((-3i32..=3, -3i32..=3, -5i64..=5), 0..6).prop_map(|terms| {
        LaurentPoly2::from_terms(terms.into_iter().map(|(i, j, c)| ((i, j), c.into())))
    })
}

fn nonzero_point() -> impl Strategy<Value = (Complex64, Complex64)> {
    let c = (0.3f64..2.0, -3.2f64..3.2).prop_map(|(r, t)| Complex64::from_polar(r, t));
    (c.clone(), c)
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-12 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #[test]
    fn eval_is_additive(p in small_poly(), q in small_poly(), (x, y) in nonzero_point()) {
        let lhs = (&p + &q).eval(x, y).unwrap();
        let rhs = p.eval(x, y).unwrap() + q.eval(x, y).unwrap();
        prop_assert!(close(lhs, rhs), "{lhs} vs {rhs}");
    }

    #[test]
    fn eval_is_multiplicative(p in small_poly(), q in small_poly(), (x, y) in nonzero_point()) {
        let lhs = (&p * &q).eval(x, y).unwrap();
        let rhs = p.eval(x, y).unwrap() * q.eval(x, y).unwrap();
        // relative to the sizes of the factors, since the product may cancel
        let scale = 1.0 + p.eval(x, y).unwrap().norm() * q.eval(x, y).unwrap().norm();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * scale * 8.0, "{lhs} vs {rhs}");
    }

    #[test]
    fn print_parse_round_trip(p in small_poly()) {
        let back: LaurentPoly2 = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn registry_round_trip_and_structure() {
    for id in KnotId::ALL {
        let a = builtin(id);
        assert_eq!(a.to_string().parse::<LaurentPoly2>().unwrap(), a);
        assert!(a.check_even_x());
        assert!(a.check_reciprocal());
    }
}

#[test]
fn partials_match_central_differences() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let h = 1e-6;
    for id in KnotId::ALL {
        let a = builtin(id);
        let (ax, ay) = a.partials();
        for _ in 0..100 {
            let sign = |r: &mut rand::rngs::StdRng| if r.gen_bool(0.5) { 1.0 } else { -1.0 };
            let x = sign(&mut rng) * rng.gen_range(0.5..1.5);
            let y = sign(&mut rng) * rng.gen_range(0.5..1.5);
            let fd_x = (a.eval_real(x + h, y) - a.eval_real(x - h, y)) / (2.0 * h);
            let fd_y = (a.eval_real(x, y + h) - a.eval_real(x, y - h)) / (2.0 * h);
            let scale = 1.0 + a.magnitude_real(x, y);
            assert!(
                (ax.eval_real(x, y) - fd_x).abs() < 1e-5 * scale,
                "{id} d/dx at ({x}, {y})"
            );
            assert!(
                (ay.eval_real(x, y) - fd_y).abs() < 1e-5 * scale,
                "{id} d/dy at ({x}, {y})"
            );
        }
    }
}

#[test]
fn fig8_partial_example() {
    let (ax, _) = builtin(KnotId::Fig8).partials();
    let a = builtin(KnotId::Fig8);
    let h = 1e-6;
    let fd = (a.eval_real(1.3 + h, 1.7) - a.eval_real(1.3 - h, 1.7)) / (2.0 * h);
    assert!((ax.eval_real(1.3, 1.7) - fd).abs() < 1e-6);
}

//! All complex roots of a univariate polynomial by Aberth-Ehrlich iteration.

use std::f64::consts::PI;

use num_complex::Complex64;

const MAX_ITER: usize = 500;

/// Horner evaluation of `p` and `p'`; `coeffs[k]` multiplies `z^k`.
fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

pub fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Roots of `sum coeffs[k] z^k`, with multiplicity. Exact leading zeros are
/// dropped; a constant (or zero) polynomial has no roots.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let degree = match coeffs.iter().rposition(|c| *c != Complex64::new(0.0, 0.0)) {
        Some(d) => d,
        None => return Vec::new(),
    };
    let coeffs = &coeffs[..=degree];
    let zeros_at_origin = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = &coeffs[zeros_at_origin..];
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros_at_origin];
    let n = reduced.len() - 1;
    match n {
        0 => {}
        1 => roots.push(-reduced[0] / reduced[1]),
        _ => roots.extend(aberth(reduced)),
    }
    roots
}

fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    // geometric mean of root moduli as the starting radius
    let radius = (coeffs[0] / lead).norm().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ITER {
        let mut converged = true;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        1.0 / d
                    }
                })
                .sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() > 1e-15 * (1.0 + z[i].norm()) {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sorted_re(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn quadratic() {
        let r = sorted_re(polynomial_roots(&[c(-1.0), c(0.0), c(1.0)]));
        assert!((r[0] - c(-1.0)).norm() < 1e-14);
        assert!((r[1] - c(1.0)).norm() < 1e-14);
    }

    #[test]
    fn cubic_with_complex_roots() {
        // (z - 2)(z^2 + 1)
        let r = polynomial_roots(&[c(-2.0), c(1.0), c(-2.0), c(1.0)]);
        assert_eq!(r.len(), 3);
        for z in &r {
            assert!(eval(&[c(-2.0), c(1.0), c(-2.0), c(1.0)], *z).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_roots_and_constants() {
        assert!(polynomial_roots(&[c(3.0)]).is_empty());
        assert!(polynomial_roots(&[c(0.0), c(0.0)]).is_empty());
        let r = polynomial_roots(&[c(0.0), c(0.0), c(2.0), c(0.0)]);
        assert_eq!(r, vec![c(0.0), c(0.0)]);
    }

    #[test]
    fn reconstruction_degree_eight() {
        let coeffs: Vec<Complex64> = (0..9)
            .map(|k| Complex64::new((k as f64 * 0.7).sin() + 0.1, (k as f64 * 1.3).cos()))
            .collect();
        let roots = polynomial_roots(&coeffs);
        // lead * prod (z - r_i) at a test point
        let z0 = Complex64::new(0.3, -0.8);
        let prod = roots.iter().fold(coeffs[8], |acc, r| acc * (z0 - r));
        assert!((prod - eval(&coeffs, z0)).norm() < 1e-10);
    }
}

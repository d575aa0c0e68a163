//! Logarithmic Mahler measure of two-variable Laurent polynomials.
//!
//! For each `x = e^{2 pi i theta}` the inner average over `|y| = 1` is
//! given in closed form by Jensen's formula,
//!
//! ```text
//! m_y(P(x, .)) = log |lead_y(x)| + sum_k log+ |y_k(x)|,
//! ```
//!
//! so only the outer integral over `theta` is done numerically. The slice
//! function is continuous with isolated kinks where a root crosses the unit
//! circle, which the adaptive rule resolves by bisection.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::poly::{LaurentPoly2, PolyError};
use crate::quadrature::{integrate_panels, QuadError, QuadOptions};
use crate::roots::polynomial_roots;

/// Fixed theta panels, integrated in parallel.
pub const THETA_PANELS: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MahlerError {
    #[error("the Mahler measure of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("tolerance {0} must be finite and at least 1e-8")]
    InvalidTolerance(f64),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MahlerResult {
    pub value: f64,
    pub error_estimate: f64,
    pub theta_panels: usize,
}

/// Coefficients of `y^0 .. y^d` for a polynomial with nonnegative exponents.
struct Slicer {
    rows: Vec<Vec<(i32, f64)>>,
}

impl Slicer {
    fn new(cleared: &LaurentPoly2) -> Self {
        let d = cleared.exponent_bounds().map_or(0, |b| b.3) as usize;
        let mut rows = vec![Vec::new(); d + 1];
        for ((i, j), c) in cleared.terms() {
            rows[j as usize].push((i, c.to_f64().unwrap_or(f64::NAN)));
        }
        Self { rows }
    }

    fn coefficients(&self, x: Complex64) -> Vec<Complex64> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(i, c)| x.powi(i) * c).sum())
            .collect()
    }

    /// Jensen slice `log|lead| + sum log+ |y_k|` at `x`.
    fn jensen(&self, x: Complex64) -> f64 {
        let coeffs = self.coefficients(x);
        let Some(lead) = coeffs.iter().rev().find(|c| c.norm() != 0.0) else {
            return f64::NEG_INFINITY;
        };
        let roots_part: f64 = polynomial_roots(&coeffs)
            .iter()
            .map(|r| r.norm().ln().max(0.0))
            .sum();
        lead.norm().ln() + roots_part
    }
}

/// Roots in `y` of `p(x0, y)` with multiplicity, after clearing negative
/// powers of `y`. A slice that is constant in `y` has no roots.
pub fn roots_on_slice(p: &LaurentPoly2, x0: Complex64) -> Result<Vec<Complex64>, MahlerError> {
    if x0 == Complex64::new(0.0, 0.0) && p.terms().any(|((i, _), _)| i < 0) {
        return Err(PolyError::ZeroBase.into());
    }
    let (cleared, _) = p.cleared();
    Ok(polynomial_roots(&Slicer::new(&cleared).coefficients(x0)))
}

/// `m(p)` to absolute tolerance `tol`.
pub fn mahler_measure(p: &LaurentPoly2, tol: f64) -> Result<MahlerResult, MahlerError> {
    if p.is_zero() {
        return Err(MahlerError::ZeroPolynomial);
    }
    if !(tol.is_finite() && tol >= 1e-8) {
        return Err(MahlerError::InvalidTolerance(tol));
    }
    let (mut cleared, _) = p.cleared();
    let (_, dx, _, dy) = cleared.exponent_bounds().expect("nonzero");
    if dy == 0 {
        if dx == 0 {
            let (_, c) = cleared.terms().next().expect("nonzero");
            return Ok(MahlerResult {
                value: c.to_f64().unwrap_or(f64::NAN).abs().ln(),
                error_estimate: 0.0,
                theta_panels: 0,
            });
        }
        // no y dependence: slice in x instead
        cleared = cleared.swap_variables();
    }
    let slicer = Slicer::new(&cleared);
    let f = |theta: f64| slicer.jensen(Complex64::from_polar(1.0, 2.0 * PI * theta));
    let opts = QuadOptions {
        rel_tol: 0.0,
        abs_tol: tol,
        max_intervals: 4000,
        compensated: true,
    };
    let r = integrate_panels(&f, 0.0, 1.0, THETA_PANELS, &opts)?;
    Ok(MahlerResult {
        value: r.value,
        error_estimate: r.error,
        theta_panels: THETA_PANELS,
    })
}

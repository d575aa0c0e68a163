//! Points on the positive real locus of an A-polynomial curve.
//!
//! Three ways to produce them: the closed-form branch parametrizations
//! ([`branch`]), Newton projection of a nearby guess ([`project`]), and
//! predictor-corrector tracing ([`trace`]). Surgery points, where
//! `x^p y^q = 1`, are located on the parametrized branches ([`surgery`]).

pub mod branch;
pub mod surgery;
pub mod trace;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::config::CurveTolerances;
use crate::poly::LaurentPoly2;

pub use branch::{branch_point, fig8_point, k52_point, BranchId, BranchSample};
pub use surgery::{
    scan_roots, solve_surgery, solve_surgery_default, solve_surgery_with, surgery_roots,
    SurgerySolution, SurgerySpec,
};
pub use trace::{trace, trace_with, Orientation, TracedPath};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("parameter s = {s} outside the domain of branch {branch}")]
    OutOfDomain { branch: BranchId, s: f64 },
    #[error("cosh argument {value} < 1 at s = {s}")]
    CoshDomain { s: f64, value: f64 },
    #[error("p a(s) + q b(s) has no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("multiple surgery roots in bracket: {roots:?}")]
    MultipleRoots { roots: Vec<f64> },
    #[error("root refinement did not reach |p a + q b| < tol (got {residual:e})")]
    RootNotConverged { residual: f64 },
    #[error("gradient vanishes at ({x}, {y})")]
    Singular { x: f64, y: f64 },
    #[error("Newton iteration diverged from ({x}, {y})")]
    Divergence { x: f64, y: f64 },
    #[error("point ({x}, {y}) has residual {residual:e} above tolerance")]
    OffCurve { x: f64, y: f64, residual: f64 },
    #[error("step size fell below {min_step:e} at arclength {arclength}")]
    StepTooSmall { min_step: f64, arclength: f64 },
    #[error("stop condition not met within arclength {budget}")]
    StopNotReached { budget: f64 },
    #[error("surgery slope (0, 0) is not allowed")]
    DegenerateSlope,
}

/// A point on the positive quadrant with its log coordinates `a = ln x`,
/// `b = ln y` and the residual `|A(x, y)|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub x: f64,
    pub y: f64,
    pub a: f64,
    pub b: f64,
    pub residual: f64,
}

impl CurvePoint {
    /// From log coordinates, with the residual measured against `poly`.
    pub fn from_log(poly: &LaurentPoly2, a: f64, b: f64) -> Self {
        let (x, y) = (a.exp(), b.exp());
        Self {
            x,
            y,
            a,
            b,
            residual: poly.eval_real(x, y).abs(),
        }
    }

    pub fn from_xy(poly: &LaurentPoly2, x: f64, y: f64) -> Self {
        Self {
            x,
            y,
            a: x.ln(),
            b: y.ln(),
            residual: poly.eval_real(x, y).abs(),
        }
    }

    pub fn distance(&self, other: &CurvePoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.12}, {:.12})", self.x, self.y)
    }
}

/// A polynomial together with its partial derivatives.
#[derive(Debug, Clone)]
pub struct CurveEquation {
    pub poly: LaurentPoly2,
    pub dx: LaurentPoly2,
    pub dy: LaurentPoly2,
}

impl CurveEquation {
    pub fn new(poly: &LaurentPoly2) -> Self {
        let (dx, dy) = poly.partials();
        Self {
            poly: poly.clone(),
            dx,
            dy,
        }
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        self.poly.eval_real(x, y)
    }

    pub fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
        (self.dx.eval_real(x, y), self.dy.eval_real(x, y))
    }

    pub fn point(&self, x: f64, y: f64) -> CurvePoint {
        CurvePoint::from_xy(&self.poly, x, y)
    }

    /// Minimum-norm Newton steps `-A grad / |grad|^2` until `|A| <= target`.
    /// Returns the final point and the number of iterations, or `None` when
    /// `max_iter` is exhausted or the iterate leaves the positive quadrant.
    pub(crate) fn newton_project(
        &self,
        mut x: f64,
        mut y: f64,
        target: f64,
        max_iter: usize,
        singular: f64,
    ) -> Result<Option<(f64, f64, usize)>, CurveError> {
        for it in 0..=max_iter {
            let v = self.value(x, y);
            if v.abs() <= target {
                return Ok(Some((x, y, it)));
            }
            if it == max_iter {
                break;
            }
            let (gx, gy) = self.gradient(x, y);
            let g2 = gx * gx + gy * gy;
            if g2.sqrt() < singular {
                return Err(CurveError::Singular { x, y });
            }
            x -= v * gx / g2;
            y -= v * gy / g2;
            if !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite()) {
                return Ok(None);
            }
        }
        Ok(None)
    }

    /// Attainable residual target near `(x, y)`: the requested tolerance or a
    /// few ulps of the term magnitudes, whichever is larger.
    pub(crate) fn residual_floor(&self, x: f64, y: f64, tol: f64) -> f64 {
        tol.max(8.0 * f64::EPSILON * self.poly.magnitude_real(x, y))
    }
}

/// Newton projection of `guess` onto `A = 0`, moving along the gradient.
pub fn project(poly: &LaurentPoly2, guess: (f64, f64)) -> Result<CurvePoint, CurveError> {
    project_with(
        &CurveEquation::new(poly),
        guess,
        &CurveTolerances::default(),
    )
}

pub fn project_with(
    eq: &CurveEquation,
    guess: (f64, f64),
    tol: &CurveTolerances,
) -> Result<CurvePoint, CurveError> {
    let (x0, y0) = guess;
    let target = eq.residual_floor(x0, y0, tol.projection_residual);
    match eq.newton_project(x0, y0, target, tol.newton_max_iter, tol.singular_gradient)? {
        Some((x, y, _)) => Ok(eq.point(x, y)),
        None => Err(CurveError::Divergence { x: x0, y: y0 }),
    }
}

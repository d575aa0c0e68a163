//! Numerical tolerances shared by the curve, integration and verification code.

use serde::Serialize;

/// Tolerances for points on the curve and the root finders that produce them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveTolerances {
    /// Maximum `|A(x, y)|` for an accepted curve point.
    pub curve_residual: f64,
    /// Target `|A(x, y)|` for Newton projection.
    pub projection_residual: f64,
    /// Target `|p a + q b|` for surgery points.
    pub surgery_residual: f64,
    /// Below this gradient norm a point is treated as singular.
    pub singular_gradient: f64,
    pub newton_max_iter: usize,
    /// Uniform subdivisions used to scan a bracket for sign changes.
    pub scan_subdivisions: usize,
    /// Upper end of the default surgery bracket in the branch parameter.
    pub bracket_hi: f64,
}

impl Default for CurveTolerances {
    fn default() -> Self {
        Self {
            curve_residual: 1e-10,
            projection_residual: 1e-12,
            surgery_residual: 1e-12,
            singular_gradient: 1e-12,
            newton_max_iter: 50,
            scan_subdivisions: 1000,
            bracket_hi: 20.0,
        }
    }
}

/// Step control for predictor-corrector tracing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceOptions {
    /// Initial (and maximal) arclength step.
    pub step: f64,
    pub min_step: f64,
    pub max_arclength: f64,
    /// Accepted steps before returning an unfinished path.
    pub max_steps: usize,
    /// Newton iterations allowed in one corrector call.
    pub corrector_max_iter: usize,
    /// Consecutive accepted steps before the step is doubled.
    pub grow_after: usize,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self {
            step: 1e-3,
            min_step: 1e-9,
            max_arclength: 50.0,
            max_steps: usize::MAX,
            corrector_max_iter: 8,
            grow_after: 4,
        }
    }
}

impl TraceOptions {
    pub fn with_step(step: f64) -> Self {
        Self {
            step,
            ..Self::default()
        }
    }
}

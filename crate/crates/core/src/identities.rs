//! Registry of the named surgery points, the manifolds their surgeries
//! produce, and the exact integral identities linking them.
//!
//! The Godbillon-Vey value of the representation at a surgery point is
//! `-{M}` for the resulting Seifert manifold `M`, and `0` at `P0`, so an
//! integral from `u` to `v` is expected to equal `({M_v} - {M_u}) / 4`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use crate::config::{CurveTolerances, TraceOptions};
use crate::curve::{
    solve_surgery_default, trace_with, BranchId, CurveEquation, CurveError, CurvePoint,
    SurgerySolution, SurgerySpec,
};
use crate::integrate::{
    integrate_param_with, integrate_traced_with, IntegralResult, IntegrateError, Method,
    TracedQuadOptions,
};
use crate::knots::KnotId;
use crate::poly::LaurentPoly2;
use crate::quadrature::QuadOptions;
use crate::seifert::{NamedManifold, PiSquaredRational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SurgeryPointId {
    P0,
    P1,
    P2,
    Q1,
    Q2,
}

impl SurgeryPointId {
    pub const ALL: [SurgeryPointId; 5] = [
        SurgeryPointId::P0,
        SurgeryPointId::P1,
        SurgeryPointId::P2,
        SurgeryPointId::Q1,
        SurgeryPointId::Q2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SurgeryPointId::P0 => "P0",
            SurgeryPointId::P1 => "P1",
            SurgeryPointId::P2 => "P2",
            SurgeryPointId::Q1 => "Q1",
            SurgeryPointId::Q2 => "Q2",
        }
    }

    pub fn branch(self) -> BranchId {
        match self {
            SurgeryPointId::P0 | SurgeryPointId::P1 | SurgeryPointId::P2 => BranchId::Fig8C,
            SurgeryPointId::Q1 | SurgeryPointId::Q2 => BranchId::K52C,
        }
    }

    pub fn spec(self) -> SurgerySpec {
        let (p, q) = match self {
            SurgeryPointId::P0 => (0, 1),
            SurgeryPointId::P1 => (-1, 1),
            SurgeryPointId::P2 => (-2, 1),
            SurgeryPointId::Q1 => (1, 1),
            SurgeryPointId::Q2 => (2, 1),
        };
        SurgerySpec { p, q }
    }

    /// Published x-coordinate. `P0` is exactly the golden ratio.
    pub fn reported_x(self) -> f64 {
        match self {
            SurgeryPointId::P0 => (1.0 + 5f64.sqrt()) / 2.0,
            SurgeryPointId::P1 => 1.635_573_130,
            SurgeryPointId::P2 => 1.700_015_776,
            SurgeryPointId::Q1 => 0.447_407_327_2,
            SurgeryPointId::Q2 => 0.484_548_688_2,
        }
    }

    /// Agreement required with [`Self::reported_x`]: the printed digits, or
    /// near machine precision for the closed form.
    pub fn x_tolerance(self) -> f64 {
        match self {
            SurgeryPointId::P0 => 1e-12,
            _ => 5e-9,
        }
    }

    /// Manifold obtained by the surgery; `P0` (0-surgery) is not one of them.
    pub fn manifold(self) -> Option<NamedManifold> {
        match self {
            SurgeryPointId::P0 => None,
            SurgeryPointId::P1 => Some(NamedManifold::Sigma237),
            SurgeryPointId::P2 => Some(NamedManifold::Sfs245),
            SurgeryPointId::Q1 => Some(NamedManifold::Sigma2311),
            SurgeryPointId::Q2 => Some(NamedManifold::Sfs247),
        }
    }

    /// Godbillon-Vey value of the representation at this point.
    pub fn gv(self) -> PiSquaredRational {
        self.manifold()
            .map_or_else(PiSquaredRational::zero, |m| -&m.volume())
    }

    pub fn lookup(knot: KnotId, spec: SurgerySpec) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.branch().knot() == knot && id.spec() == spec)
    }

    pub fn solve(self) -> Result<SurgerySolution, CurveError> {
        solve_surgery_default(self.branch(), self.spec())
    }
}

impl fmt::Display for SurgeryPointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SurgeryPointId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown surgery point '{s}'"))
    }
}

/// A published integral identity between two surgery points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Identity {
    pub from: SurgeryPointId,
    pub to: SurgeryPointId,
}

impl Identity {
    pub const ALL: [Identity; 3] = [
        Identity {
            from: SurgeryPointId::P0,
            to: SurgeryPointId::P1,
        },
        Identity {
            from: SurgeryPointId::P0,
            to: SurgeryPointId::P2,
        },
        Identity {
            from: SurgeryPointId::Q1,
            to: SurgeryPointId::Q2,
        },
    ];

    pub fn name(&self) -> String {
        format!("{}->{}", self.from, self.to)
    }

    pub fn branch(&self) -> BranchId {
        self.from.branch()
    }

    /// Expected integral of `omega`, from the Seifert volumes.
    pub fn expected(&self) -> PiSquaredRational {
        expected_integral(self.from, self.to)
    }

    /// Expected `GV(to) - GV(from)`.
    pub fn expected_gv(&self) -> PiSquaredRational {
        &self.to.gv() - &self.from.gv()
    }
}

/// `(GV(from) - GV(to)) / 4`.
pub fn expected_integral(from: SurgeryPointId, to: SurgeryPointId) -> PiSquaredRational {
    let diff = &from.gv() - &to.gv();
    PiSquaredRational(diff.0 / BigRational::from_integer(4.into()))
}

/// Expected integral between two slopes on `knot`, if both are registry
/// points. Either order is accepted; the reversed identity is negated.
pub fn find_identity(
    knot: KnotId,
    from: SurgerySpec,
    to: SurgerySpec,
) -> Option<PiSquaredRational> {
    let from = SurgeryPointId::lookup(knot, from)?;
    let to = SurgeryPointId::lookup(knot, to)?;
    let known = |u, v| Identity::ALL.iter().any(|i| i.from == u && i.to == v);
    (known(from, to) || known(to, from)).then(|| expected_integral(from, to))
}

/// Numerical settings for integrating between surgery points.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct SegmentOptions {
    pub quad: QuadOptions,
    pub traced: TracedQuadOptions,
    pub trace: TraceOptions,
    pub tolerances: CurveTolerances,
}

impl SegmentOptions {
    /// Tighter quadrature with compensated sums.
    pub fn extended() -> Self {
        Self {
            quad: QuadOptions::extended(),
            traced: TracedQuadOptions {
                compensated: true,
                ..TracedQuadOptions::default()
            },
            ..Self::default()
        }
    }
}

/// Integral of `omega` along the branch from the `from` surgery point to the
/// `to` surgery point.
///
/// The parametrized route uses the branch formulas; the traced route traces
/// the zero set of `poly` starting at the `from` point, so a `poly` that does
/// not contain the branch fails with an off-curve error.
pub fn integrate_segment(
    poly: &LaurentPoly2,
    branch: BranchId,
    from: SurgerySpec,
    to: SurgerySpec,
    method: Method,
    opts: &SegmentOptions,
) -> Result<IntegralResult, IntegrateError> {
    let start = solve_surgery_default(branch, from)?;
    match method {
        Method::Parametrized => {
            let end = solve_surgery_default(branch, to)?;
            integrate_param_with(branch, start.s, end.s, &opts.quad)
        }
        Method::Traced => {
            let eq = CurveEquation::new(poly);
            let first = CurvePoint::from_xy(poly, start.point.x, start.point.y);
            let path = trace_with(&eq, &first, to, &opts.trace, None, &opts.tolerances)?;
            if !path.completed {
                return Err(CurveError::StopNotReached {
                    budget: opts.trace.max_arclength,
                }
                .into());
            }
            integrate_traced_with(&eq, &path, &opts.traced)
        }
    }
}

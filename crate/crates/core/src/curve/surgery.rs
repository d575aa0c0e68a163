//! Surgery points: where the branch meets `x^p y^q = 1`, i.e. `p a + q b = 0`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{BranchId, CurveError, CurvePoint};
use crate::config::CurveTolerances;
use crate::knots::builtin_ref;

/// Surgery slope `p/q`; characters extend over the filling iff `x^p y^q = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SurgerySpec {
    pub p: i64,
    pub q: i64,
}

impl SurgerySpec {
    pub fn new(p: i64, q: i64) -> Result<Self, CurveError> {
        if p == 0 && q == 0 {
            return Err(CurveError::DegenerateSlope);
        }
        Ok(Self { p, q })
    }

    /// `p a + q b`.
    pub fn log_defect(&self, a: f64, b: f64) -> f64 {
        self.p as f64 * a + self.q as f64 * b
    }

    /// `|x^p y^q - 1|`.
    pub fn monomial_defect(&self, point: &CurvePoint) -> f64 {
        (self.log_defect(point.a, point.b).exp() - 1.0).abs()
    }
}

impl fmt::Display for SurgerySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.p, self.q)
    }
}

impl FromStr for SurgerySpec {
    type Err = String;

    /// Parses `"p,q"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (p, q) = s
            .split_once(',')
            .ok_or_else(|| format!("expected 'p,q', got '{s}'"))?;
        let p = p
            .trim()
            .parse()
            .map_err(|e| format!("bad p in '{s}': {e}"))?;
        let q = q
            .trim()
            .parse()
            .map_err(|e| format!("bad q in '{s}': {e}"))?;
        SurgerySpec::new(p, q).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurgerySolution {
    pub s: f64,
    pub point: CurvePoint,
}

fn defect(branch: BranchId, spec: &SurgerySpec, s: f64) -> Result<f64, CurveError> {
    let (a, b) = branch.log_coords(s)?;
    Ok(spec.log_defect(a, b))
}

/// Bisection to machine resolution followed by a Newton polish that is kept
/// only while it reduces `|g|`.
fn refine<G, D>(g: &G, dg: &D, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64, CurveError>
where
    G: Fn(f64) -> Result<f64, CurveError>,
    D: Fn(f64) -> Result<f64, CurveError>,
{
    let (lo0, hi0) = (lo, hi);
    let mut g_lo = g(lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g_mid = g(mid)?;
        if g_mid == 0.0 {
            return Ok(mid);
        }
        if (g_mid < 0.0) == (g_lo < 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    let mut s = 0.5 * (lo + hi);
    let mut gs = g(s)?;
    for _ in 0..4 {
        let slope = dg(s)?;
        if slope == 0.0 || !slope.is_finite() {
            break;
        }
        let next = s - gs / slope;
        if !(lo0..=hi0).contains(&next) {
            break;
        }
        let g_next = g(next)?;
        if g_next.abs() >= gs.abs() {
            break;
        }
        s = next;
        gs = g_next;
    }
    if gs.abs() >= tol {
        return Err(CurveError::RootNotConverged { residual: gs.abs() });
    }
    Ok(s)
}

/// Roots of `g` on `[lo, hi]`: exact zeros on a uniform grid of `n`
/// subdivisions plus one refined root per sign change between grid values.
pub fn scan_roots<G, D>(
    g: &G,
    dg: &D,
    bracket: (f64, f64),
    n: usize,
    tol: f64,
) -> Result<Vec<f64>, CurveError>
where
    G: Fn(f64) -> Result<f64, CurveError>,
    D: Fn(f64) -> Result<f64, CurveError>,
{
    let (lo, hi) = bracket;
    let n = n.max(1);
    let grid: Vec<f64> = (0..=n)
        .map(|k| {
            if k == n {
                hi
            } else {
                lo + (hi - lo) * k as f64 / n as f64
            }
        })
        .collect();
    let values = grid.iter().map(|&s| g(s)).collect::<Result<Vec<_>, _>>()?;
    let mut roots = Vec::new();
    for k in 0..=n {
        if values[k] == 0.0 {
            roots.push(grid[k]);
        } else if k < n && values[k + 1] != 0.0 && (values[k] < 0.0) != (values[k + 1] < 0.0) {
            roots.push(refine(g, dg, grid[k], grid[k + 1], tol)?);
        }
    }
    Ok(roots)
}

/// All roots of `p a(s) + q b(s)` in `bracket`.
pub fn surgery_roots(
    branch: BranchId,
    spec: &SurgerySpec,
    bracket: (f64, f64),
    tol: &CurveTolerances,
) -> Result<Vec<f64>, CurveError> {
    let g = |s: f64| defect(branch, spec, s);
    let dg = |s: f64| {
        let (da, db) = branch.log_derivs(s)?;
        Ok(spec.log_defect(da, db))
    };
    scan_roots(
        &g,
        &dg,
        bracket,
        tol.scan_subdivisions,
        tol.surgery_residual,
    )
}

/// The unique surgery point of `branch` in `bracket`.
pub fn solve_surgery(
    branch: BranchId,
    spec: SurgerySpec,
    bracket: (f64, f64),
) -> Result<SurgerySolution, CurveError> {
    solve_surgery_with(branch, spec, bracket, &CurveTolerances::default())
}

pub fn solve_surgery_with(
    branch: BranchId,
    spec: SurgerySpec,
    bracket: (f64, f64),
    tol: &CurveTolerances,
) -> Result<SurgerySolution, CurveError> {
    let roots = surgery_roots(branch, &spec, bracket, tol)?;
    let s = match roots.as_slice() {
        [] => {
            return Err(CurveError::NoSignChange {
                lo: bracket.0,
                hi: bracket.1,
            })
        }
        [s] => *s,
        _ => return Err(CurveError::MultipleRoots { roots }),
    };
    let (a, b) = branch.log_coords(s)?;
    let point = CurvePoint::from_log(builtin_ref(branch.knot()), a, b);
    if point.residual > tol.curve_residual || spec.monomial_defect(&point) > tol.curve_residual {
        return Err(CurveError::OffCurve {
            x: point.x,
            y: point.y,
            residual: point.residual,
        });
    }
    Ok(SurgerySolution { s, point })
}

/// [`solve_surgery`] over the default bracket of the branch.
pub fn solve_surgery_default(
    branch: BranchId,
    spec: SurgerySpec,
) -> Result<SurgerySolution, CurveError> {
    let tol = CurveTolerances::default();
    solve_surgery_with(branch, spec, (branch.scan_lo(), tol.bracket_hi), &tol)
}

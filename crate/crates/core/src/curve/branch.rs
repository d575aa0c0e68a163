//! Closed-form parametrizations of the real branches `C`.
//!
//! Figure-eight, `s >= 0`:
//!
//! ```text
//! cosh 2a = (s^2 + 3s + 3) / (2(s + 1))
//! cosh b  = (s^4 + 5s^3 + 7s^2 + 4s + 2) / (2(s + 1)^2),      a, b >= 0
//! ```
//!
//! 5_2, `s > 0`, with `r = sqrt(s^2 + 4)`:
//!
//! ```text
//! cosh 2a = (4s^2 + 6s + 4 + 2r) / (8s),                        a < 0
//! cosh b  = 1 - (s^5/4 + s^4 + 3s^3/2 + 3s^2/2) + (s^4/4 + s^3 + s^2) r,   b > 0
//! ```
//!
//! The 5_2 `cosh b` is the reading whose points lie on the A-polynomial
//! curve; see the crate README. Both `cosh b - 1` expressions are evaluated
//! in cancellation-free form:
//!
//! ```text
//! figure-eight: cosh b - 1 = s^2 (s^2 + 5s + 5) / (2 (s + 1)^2)
//! 5_2:          cosh b - 1 = s^4 (s^3 + 7s^2 + 14s + 7) / (4 (Q r + P))
//! ```
//!
//! where `P`, `Q` are the two polynomial groups in the 5_2 formula.

use std::fmt;

use serde::Serialize;

use super::{CurveError, CurvePoint};
use crate::knots::{builtin_ref, KnotId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BranchId {
    Fig8C,
    K52C,
}

impl BranchId {
    pub fn knot(self) -> KnotId {
        match self {
            BranchId::Fig8C => KnotId::Fig8,
            BranchId::K52C => KnotId::K52,
        }
    }

    pub fn for_knot(knot: KnotId) -> Self {
        match knot {
            KnotId::Fig8 => BranchId::Fig8C,
            KnotId::K52 => BranchId::K52C,
        }
    }

    /// Whether `s` lies in the branch domain.
    pub fn contains(self, s: f64) -> bool {
        match self {
            BranchId::Fig8C => s >= 0.0 && s.is_finite(),
            BranchId::K52C => s > 0.0 && s.is_finite(),
        }
    }

    /// Smallest parameter used when scanning a default bracket.
    pub fn scan_lo(self) -> f64 {
        match self {
            BranchId::Fig8C => 0.0,
            BranchId::K52C => 1e-6,
        }
    }

    /// Log coordinates `(a(s), b(s))`.
    pub fn log_coords(self, s: f64) -> Result<(f64, f64), CurveError> {
        if !self.contains(s) {
            return Err(CurveError::OutOfDomain { branch: self, s });
        }
        let pieces = match self {
            BranchId::Fig8C => fig8_pieces(s),
            BranchId::K52C => k52_pieces(s),
        };
        if pieces.cosh2a < 1.0 {
            return Err(CurveError::CoshDomain {
                s,
                value: pieces.cosh2a,
            });
        }
        if pieces.cosh_b_minus_1 < 0.0 {
            return Err(CurveError::CoshDomain {
                s,
                value: 1.0 + pieces.cosh_b_minus_1,
            });
        }
        let a = 0.5 * pieces.cosh2a.acosh();
        // b = acosh(1 + e) = 2 asinh(sqrt(e / 2))
        let b = 2.0 * (0.5 * pieces.cosh_b_minus_1).sqrt().asinh();
        Ok(match self {
            BranchId::Fig8C => (a, b),
            BranchId::K52C => (-a, b),
        })
    }

    /// Derivatives `(a'(s), b'(s))` from differentiating the cosh relations.
    pub fn log_derivs(self, s: f64) -> Result<(f64, f64), CurveError> {
        if !self.contains(s) {
            return Err(CurveError::OutOfDomain { branch: self, s });
        }
        Ok(match self {
            BranchId::Fig8C => fig8_derivs(s),
            BranchId::K52C => k52_derivs(s),
        })
    }
}

impl fmt::Display for BranchId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BranchId::Fig8C => "Fig8C",
            BranchId::K52C => "K52C",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchSample {
    pub s: f64,
    pub point: CurvePoint,
    pub branch: BranchId,
}

struct Pieces {
    cosh2a: f64,
    cosh_b_minus_1: f64,
}

fn fig8_pieces(s: f64) -> Pieces {
    let s1 = s + 1.0;
    Pieces {
        cosh2a: (s * s + 3.0 * s + 3.0) / (2.0 * s1),
        cosh_b_minus_1: s * s * (s * s + 5.0 * s + 5.0) / (2.0 * s1 * s1),
    }
}

fn fig8_derivs(s: f64) -> (f64, f64) {
    let s1 = s + 1.0;
    let f = (s * s + 3.0 * s + 3.0) / (2.0 * s1);
    let df = (s * s + 2.0 * s) / (2.0 * s1 * s1);
    let f_minus_1 = (s * s + s + 1.0) / (2.0 * s1);
    let sinh2a = (f_minus_1 * (f + 1.0)).sqrt();
    let da = df / (2.0 * sinh2a);
    // b = 2 asinh(h), h = s sqrt(R) / (2 (s + 1)), R = s^2 + 5s + 5
    let r = s * s + 5.0 * s + 5.0;
    let h = s * r.sqrt() / (2.0 * s1);
    let dh = (r + 0.5 * s * s1 * (2.0 * s + 5.0)) / (2.0 * s1 * s1 * r.sqrt());
    let db = 2.0 * dh / (1.0 + h * h).sqrt();
    (da, db)
}

struct K52Parts {
    r: f64,
    p: f64,
    q: f64,
    n: f64,
}

impl K52Parts {
    fn new(s: f64) -> Self {
        let s2 = s * s;
        Self {
            r: (s2 + 4.0).sqrt(),
            p: s2 * (s2 * s / 4.0 + s2 + 1.5 * s + 1.5),
            q: s2 * (s2 / 4.0 + s + 1.0),
            n: s2 * s + 7.0 * s2 + 14.0 * s + 7.0,
        }
    }

    fn denominator(&self) -> f64 {
        self.q * self.r + self.p
    }
}

fn k52_pieces(s: f64) -> Pieces {
    let k = K52Parts::new(s);
    let s4 = s.powi(4);
    Pieces {
        cosh2a: (4.0 * s * s + 6.0 * s + 4.0 + 2.0 * k.r) / (8.0 * s),
        cosh_b_minus_1: s4 * k.n / (4.0 * k.denominator()),
    }
}

fn k52_derivs(s: f64) -> (f64, f64) {
    let k = K52Parts::new(s);
    let s2 = s * s;
    let f = (4.0 * s2 + 6.0 * s + 4.0 + 2.0 * k.r) / (8.0 * s);
    let df = (s2 - 1.0 - 2.0 / k.r) / (2.0 * s2);
    let sinh2a = ((f - 1.0) * (f + 1.0)).sqrt();
    let da = -df / (2.0 * sinh2a);

    let s3 = s2 * s;
    let s4 = s2 * s2;
    let d = k.denominator();
    let dp = 1.25 * s4 + 4.0 * s3 + 4.5 * s2 + 3.0 * s;
    let dq = s3 + 3.0 * s2 + 2.0 * s;
    let dd = dq * k.r + k.q * s / k.r + dp;
    let dn = 3.0 * s2 + 14.0 * s + 14.0;
    let e = s4 * k.n / (4.0 * d);
    let de = ((4.0 * s3 * k.n + s4 * dn) * d - s4 * k.n * dd) / (4.0 * d * d);
    let sinh_b = (e * (e + 2.0)).sqrt();
    (da, de / sinh_b)
}

/// Point of the branch at parameter `s`, with residual against the registry
/// polynomial of the branch's knot.
pub fn branch_point(branch: BranchId, s: f64) -> Result<BranchSample, CurveError> {
    let (a, b) = branch.log_coords(s)?;
    Ok(BranchSample {
        s,
        point: CurvePoint::from_log(builtin_ref(branch.knot()), a, b),
        branch,
    })
}

pub fn fig8_point(s: f64) -> Result<BranchSample, CurveError> {
    branch_point(BranchId::Fig8C, s)
}

pub fn k52_point(s: f64) -> Result<BranchSample, CurveError> {
    branch_point(BranchId::K52C, s)
}

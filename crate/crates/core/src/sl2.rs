//! The universal covering group of PSL(2, R) in `(gamma, omega)` coordinates.
//!
//! An element is a pair with `|gamma| < 1` and real `omega`; `omega` is kept
//! unreduced because it carries the lift through the infinite cyclic cover.
//! The covering map goes through SU(1,1): `(gamma, omega)` corresponds to
//!
//! ```text
//! c * [[e^{-i omega},       gamma e^{i omega}],
//!      [conj(gamma) e^{-i omega},  e^{i omega}]],   c = (1 - |gamma|^2)^{-1/2}
//! ```
//!
//! followed by the Cayley conjugation into SL(2, R). With this choice
//! `(tanh a, k pi)` covers `(-1)^k diag(e^a, e^-a)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

/// Band around `|trace| = 2` classified as parabolic.
pub const PARABOLIC_TOL: f64 = 1e-9;

const CENTRAL_TOL: f64 = 1e-12;

pub type Mat2 = [[f64; 2]; 2];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Sl2Error {
    #[error("|gamma| = {0} is not < 1")]
    OutsideDisk(f64),
    #[error("non-finite coordinate")]
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlTildeElt {
    gamma: Complex64,
    omega: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EltClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
    Central,
}

impl SlTildeElt {
    pub fn new(gamma: Complex64, omega: f64) -> Result<Self, Sl2Error> {
        if !(gamma.re.is_finite() && gamma.im.is_finite() && omega.is_finite()) {
            return Err(Sl2Error::NonFinite);
        }
        let r = gamma.norm();
        if r >= 1.0 {
            return Err(Sl2Error::OutsideDisk(r));
        }
        Ok(Self { gamma, omega })
    }

    pub fn identity() -> Self {
        Self {
            gamma: Complex64::new(0.0, 0.0),
            omega: 0.0,
        }
    }

    /// The boundary holonomy `(tanh a, k pi)`.
    pub fn hyperbolic(a: f64, k: i64) -> Self {
        Self {
            gamma: Complex64::new(a.tanh(), 0.0),
            omega: k as f64 * PI,
        }
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Group product.
    pub fn compose(&self, other: &Self) -> Self {
        let rot = Complex64::from_polar(1.0, -2.0 * self.omega);
        let g2 = other.gamma * rot;
        let z = 1.0 + self.gamma.conj() * g2;
        let w = 1.0 + self.gamma * other.gamma.conj() * rot.conj();
        let gamma = (self.gamma + g2) / z;
        // principal log; z / w lies on the unit circle
        let twist = ((z / w).ln() / Complex64::new(0.0, 2.0)).re;
        Self {
            gamma,
            omega: self.omega + other.omega + twist,
        }
    }

    fn su11(&self) -> (Complex64, Complex64) {
        let c = 1.0 / (1.0 - self.gamma.norm_sqr()).sqrt();
        let alpha = Complex64::from_polar(c, -self.omega);
        let beta = self.gamma * Complex64::from_polar(c, self.omega);
        (alpha, beta)
    }

    /// Image in SL(2, R), determined up to sign.
    pub fn cover(&self) -> Mat2 {
        let (alpha, beta) = self.su11();
        [
            [alpha.re + beta.re, alpha.im - beta.im],
            [-alpha.im - beta.im, alpha.re - beta.re],
        ]
    }

    pub fn trace(&self) -> f64 {
        2.0 * self.su11().0.re
    }

    pub fn classify(&self) -> EltClass {
        let turns = self.omega / PI;
        if self.gamma.norm() <= f64::EPSILON && (turns - turns.round()).abs() <= CENTRAL_TOL {
            return EltClass::Central;
        }
        let t = self.trace().abs();
        if (t - 2.0).abs() <= PARABOLIC_TOL {
            EltClass::Parabolic
        } else if t < 2.0 {
            EltClass::Elliptic
        } else {
            EltClass::Hyperbolic
        }
    }
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Max-entry distance between `a` and `±b`, whichever sign is closer.
pub fn distance_up_to_sign(a: &Mat2, b: &Mat2) -> f64 {
    let dist = |s: f64| {
        (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| (a[i][j] - s * b[i][j]).abs())
            .fold(0.0, f64::max)
    };
    dist(1.0).min(dist(-1.0))
}

//! Euler number, Euler characteristic and Seifert volume of a closed
//! Seifert fibered manifold, in exact rational arithmetic.
//!
//! Volumes are rational multiples of `pi^2`, so they are carried as the
//! rational coefficient ([`PiSquaredRational`]).

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error("fiber ({p},{q}): index p must be >= 1")]
    NonPositiveIndex { p: i64, q: i64 },
    #[error("fiber ({p},{q}): p and q must be coprime")]
    NotCoprime { p: i64, q: i64 },
}

/// Singular fiber invariants `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub p: i64,
    pub q: i64,
}

impl Fiber {
    pub fn new(p: i64, q: i64) -> Result<Self, SeifertError> {
        if p < 1 {
            return Err(SeifertError::NonPositiveIndex { p, q });
        }
        if p >= 2 && p.gcd(&q) != 1 {
            return Err(SeifertError::NotCoprime { p, q });
        }
        Ok(Self { p, q })
    }

    fn ratio(&self) -> BigRational {
        BigRational::new(self.q.into(), self.p.into())
    }
}

/// `(g; (p_1, q_1), ..., (p_r, q_r))` over an orientable base of genus `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeifertData {
    pub genus: u32,
    pub fibers: Vec<Fiber>,
}

impl SeifertData {
    pub fn new(genus: u32, fibers: &[(i64, i64)]) -> Result<Self, SeifertError> {
        let fibers = fibers
            .iter()
            .map(|&(p, q)| Fiber::new(p, q))
            .collect::<Result<_, _>>()?;
        Ok(Self { genus, fibers })
    }

    pub fn euler_number(&self) -> BigRational {
        -self
            .fibers
            .iter()
            .fold(BigRational::zero(), |acc, f| acc + f.ratio())
    }

    pub fn euler_characteristic(&self) -> BigRational {
        let base = BigRational::from_integer(BigInt::from(2) - BigInt::from(2 * self.genus as i64));
        self.fibers.iter().fold(base, |acc, f| {
            acc - BigRational::new((f.p - 1).into(), f.p.into())
        })
    }

    /// `4 chi^2 / |e|` times `pi^2` when the manifold carries the universal
    /// cover geometry (`chi < 0`, `e != 0`), zero otherwise.
    pub fn seifert_volume(&self) -> PiSquaredRational {
        let e = self.euler_number();
        let chi = self.euler_characteristic();
        if e.is_zero() || !chi.is_negative() {
            return PiSquaredRational::zero();
        }
        PiSquaredRational(BigRational::from_integer(4.into()) * &chi * &chi / e.abs())
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.genus)?;
        let mut sep = ";";
        for fib in &self.fibers {
            write!(f, "{sep} ({},{})", fib.p, fib.q)?;
            sep = ",";
        }
        f.write_str(")")
    }
}

/// The real number `c * pi^2` with exact rational `c`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PiSquaredRational(pub BigRational);

impl PiSquaredRational {
    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn new(num: i64, den: i64) -> Self {
        Self(BigRational::new(num.into(), den.into()))
    }

    pub fn coefficient(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN) * PI * PI
    }

    /// Coefficient as `"n/d"` (or `"n"`).
    pub fn coefficient_string(&self) -> String {
        self.0.to_string()
    }
}

impl fmt::Display for PiSquaredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            f.write_str("0")
        } else {
            write!(f, "({})*pi^2", self.0)
        }
    }
}

impl Serialize for PiSquaredRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl std::ops::Sub for &PiSquaredRational {
    type Output = PiSquaredRational;

    fn sub(self, rhs: &PiSquaredRational) -> PiSquaredRational {
        PiSquaredRational(&self.0 - &rhs.0)
    }
}

impl std::ops::Neg for &PiSquaredRational {
    type Output = PiSquaredRational;

    fn neg(self) -> PiSquaredRational {
        PiSquaredRational(-&self.0)
    }
}

/// Seifert manifolds arising from the surgeries in the registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NamedManifold {
    /// Brieskorn sphere, -1 surgery on the figure-eight knot.
    Sigma237,
    /// Base S^2 with exceptional fibers of indices 2, 4, 5.
    Sfs245,
    /// Brieskorn sphere, 1 surgery on 5_2.
    Sigma2311,
    /// Base S^2 with exceptional fibers of indices 2, 4, 7.
    Sfs247,
}

impl NamedManifold {
    pub const ALL: [NamedManifold; 4] = [
        NamedManifold::Sigma237,
        NamedManifold::Sfs245,
        NamedManifold::Sigma2311,
        NamedManifold::Sfs247,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedManifold::Sigma237 => "Sigma(2,3,7)",
            NamedManifold::Sfs245 => "SFS(2,4,5)",
            NamedManifold::Sigma2311 => "Sigma(2,3,11)",
            NamedManifold::Sfs247 => "SFS(2,4,7)",
        }
    }

    /// Fiber data with `|e| = 1/lcm(p_i)`; the signs of `q_i` are one valid
    /// choice, only `|e|` enters the volume.
    pub fn data(self) -> SeifertData {
        let fibers: &[(i64, i64)] = match self {
            NamedManifold::Sigma237 => &[(2, 1), (3, 1), (7, -6)],
            NamedManifold::Sfs245 => &[(2, 1), (4, 1), (5, -4)],
            NamedManifold::Sigma2311 => &[(2, 1), (3, 1), (11, -9)],
            NamedManifold::Sfs247 => &[(2, 1), (4, 1), (7, -5)],
        };
        SeifertData::new(0, fibers).expect("registry fibers are valid")
    }

    pub fn volume(self) -> PiSquaredRational {
        self.data().seifert_volume()
    }
}

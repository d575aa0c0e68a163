//! Integer bivariate Laurent polynomials.
//!
//! Exponents may be negative, so the A-polynomials can be stored in the
//! symmetric form in which they are usually written. Coefficients are
//! arbitrary-precision integers; a floating copy of the term list is kept
//! alongside for evaluation in hot loops.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use parse::parse_poly;

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
pub type Exponents = (i32, i32);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("non-integer coefficient at position {position}")]
    NonIntegerCoefficient { position: usize },
    #[error("exponent out of range at position {position}")]
    ExponentOverflow { position: usize },
    #[error("negative power of a non-monomial expression at position {position}")]
    NegativePowerOfPolynomial { position: usize },
    #[error("evaluation at a zero base with a negative exponent")]
    ZeroBase,
}

#[derive(Clone)]
pub struct LaurentPoly2 {
    terms: BTreeMap<Exponents, BigInt>,
    float_terms: Vec<(i32, i32, f64)>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::from_map(BTreeMap::new())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, i: i32, j: i32) -> Self {
        Self::from_terms([((i, j), c.into())])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated exponents and dropping zero coefficients.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, BigInt)>,
    {
        let mut map: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        Self::from_map(map)
    }

    fn from_map(mut terms: BTreeMap<Exponents, BigInt>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let float_terms = terms
            .iter()
            .map(|(&(i, j), c)| (i, j, c.to_f64().unwrap_or(f64::NAN)))
            .collect();
        Self { terms, float_terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponents, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, i: i32, j: i32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// `(min_i, max_i, min_j, max_j)` over the support, `None` for zero.
    pub fn exponent_bounds(&self) -> Option<(i32, i32, i32, i32)> {
        let mut it = self.terms.keys();
        let &(i0, j0) = it.next()?;
        Some(it.fold((i0, i0, j0, j0), |(a, b, c, d), &(i, j)| {
            (a.min(i), b.max(i), c.min(j), d.max(j))
        }))
    }

    /// Evaluates at complex `(x, y)`.
    pub fn eval(&self, x: Complex64, y: Complex64) -> Result<Complex64, PolyError> {
        let needs_nonzero = |z: Complex64, neg: bool| neg && z == Complex64::zero();
        let mut acc = Complex64::zero();
        for &(i, j, c) in &self.float_terms {
            if needs_nonzero(x, i < 0) || needs_nonzero(y, j < 0) {
                return Err(PolyError::ZeroBase);
            }
            acc += x.powi(i) * y.powi(j) * c;
        }
        Ok(acc)
    }

    /// Real evaluation. Intended for the positive quadrant; zero bases with
    /// negative exponents yield non-finite values instead of an error.
    pub fn eval_real(&self, x: f64, y: f64) -> f64 {
        self.float_terms
            .iter()
            .map(|&(i, j, c)| c * x.powi(i) * y.powi(j))
            .sum()
    }

    /// `sum |c| |x|^i |y|^j`, the natural scale for relative residuals.
    pub fn magnitude_real(&self, x: f64, y: f64) -> f64 {
        self.float_terms
            .iter()
            .map(|&(i, j, c)| c.abs() * x.abs().powi(i) * y.abs().powi(j))
            .sum()
    }

    /// Formal partial derivatives `(d/dx, d/dy)`.
    pub fn partials(&self) -> (LaurentPoly2, LaurentPoly2) {
        let dx = Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(i, _), _)| i != 0)
                .map(|(&(i, j), c)| ((i - 1, j), c * BigInt::from(i))),
        );
        let dy = Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(_, j), _)| j != 0)
                .map(|(&(i, j), c)| ((i, j - 1), c * BigInt::from(j))),
        );
        (dx, dy)
    }

    /// True iff every monomial has an even power of `x`.
    pub fn check_even_x(&self) -> bool {
        self.terms.keys().all(|&(i, _)| i % 2 == 0)
    }

    /// True iff `p(1/x, 1/y) = ±x^m y^n p(x, y)` for some integers `m, n`.
    ///
    /// The zero polynomial is reported as not reciprocal.
    pub fn check_reciprocal(&self) -> bool {
        let Some((i0, i1, j0, j1)) = self.exponent_bounds() else {
            return false;
        };
        let (m, n) = (i0 + i1, j0 + j1);
        [1, -1].iter().any(|&sign| {
            self.terms.iter().all(|(&(i, j), c)| {
                self.terms
                    .get(&(m - i, n - j))
                    .is_some_and(|d| *d == c * BigInt::from(sign))
            })
        })
    }

    /// Multiplies by the monomial that makes every exponent nonnegative with
    /// minimal degrees. Returns the polynomial and the applied shift.
    pub fn cleared(&self) -> (LaurentPoly2, Exponents) {
        let Some((i0, _, j0, _)) = self.exponent_bounds() else {
            return (self.clone(), (0, 0));
        };
        let shift = (-i0, -j0);
        (self.shifted(shift.0, shift.1), shift)
    }

    /// Multiplies by `x^di y^dj`.
    pub fn shifted(&self, di: i32, dj: i32) -> LaurentPoly2 {
        Self::from_map(
            self.terms
                .iter()
                .map(|(&(i, j), c)| ((i + di, j + dj), c.clone()))
                .collect(),
        )
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_variables(&self) -> LaurentPoly2 {
        Self::from_map(
            self.terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> LaurentPoly2 {
        (0..n).fold(LaurentPoly2::constant(1), |acc, _| &acc * self)
    }

    /// Coefficient and exponents when the polynomial is a single term.
    pub(crate) fn as_monomial(&self) -> Option<(Exponents, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(&e, c)| (e, c))
        } else {
            None
        }
    }
}

impl PartialEq for LaurentPoly2 {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for LaurentPoly2 {}

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly2({self})")
    }
}

fn write_power(out: &mut Vec<String>, var: char, e: i32) {
    match e {
        0 => {}
        1 => out.push(var.to_string()),
        _ => out.push(format!("{var}^{e}")),
    }
}

/// Canonical form: terms sorted by `(j, i)` descending, explicit `*`.
impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((j, i)));
        for (k, e) in keys.iter().enumerate() {
            let c = &self.terms[e];
            let sign = if c.is_negative() { "-" } else { "+" };
            match (k, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let mut parts = Vec::new();
            let mag = c.abs();
            let is_unit = mag == BigInt::from(1);
            write_power(&mut parts, 'x', e.0);
            write_power(&mut parts, 'y', e.1);
            if parts.is_empty() || !is_unit {
                parts.insert(0, mag.to_string());
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for LaurentPoly2 {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;

    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        LaurentPoly2::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(&e, c)| (e, c.clone())),
        )
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;

    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2::from_map(self.terms.iter().map(|(&e, c)| (e, -c)).collect())
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;

    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;

    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut map: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            for (&(k, l), d) in &rhs.terms {
                *map.entry((i + k, j + l)).or_insert_with(BigInt::zero) += c * d;
            }
        }
        LaurentPoly2::from_map(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::{builtin, KnotId};

    fn p(s: &str) -> LaurentPoly2 {
        s.parse().unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn fig8_evaluations() {
        let a = builtin(KnotId::Fig8);
        assert!((a.eval(c(1.0), c(1.0)).unwrap() - c(4.0)).norm() < 1e-15);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(a.eval(c(phi), c(1.0)).unwrap().norm() < 1e-13);
        assert!(a.eval(c(1.0), c(-1.0)).unwrap().norm() < 1e-15);
    }

    #[test]
    fn eval_rejects_zero_base_with_negative_exponent() {
        let a = builtin(KnotId::Fig8);
        assert_eq!(a.eval(c(0.0), c(1.0)), Err(PolyError::ZeroBase));
        assert_eq!(a.eval(c(1.0), c(0.0)), Err(PolyError::ZeroBase));
        assert_eq!(p("x^2 + 1").eval(c(0.0), c(0.0)), Ok(c(1.0)));
    }

    #[test]
    fn real_eval_is_real() {
        let a = builtin(KnotId::K52);
        let z = a.eval(c(0.7), c(1.3)).unwrap();
        assert_eq!(z.im, 0.0);
        assert!((z.re - a.eval_real(0.7, 1.3)).abs() < 1e-13);
    }

    #[test]
    fn partials_of_simple_polys() {
        assert_eq!(p("x^2").partials(), (p("2*x"), p("0")));
        assert_eq!(p("y + y^-1").partials(), (p("0"), p("1 - y^-2")));
        assert_eq!(
            p("3*x^-2*y^3").partials(),
            (p("-6*x^-3*y^3"), p("9*x^-2*y^2"))
        );
    }

    #[test]
    fn partials_match_central_difference() {
        let a = builtin(KnotId::Fig8);
        let (ax, ay) = a.partials();
        let h = 1e-6;
        let fd_x = (a.eval_real(1.3 + h, 1.7) - a.eval_real(1.3 - h, 1.7)) / (2.0 * h);
        let fd_y = (a.eval_real(1.3, 1.7 + h) - a.eval_real(1.3, 1.7 - h)) / (2.0 * h);
        assert!((ax.eval_real(1.3, 1.7) - fd_x).abs() < 1e-6);
        assert!((ay.eval_real(1.3, 1.7) - fd_y).abs() < 1e-6);
    }

    #[test]
    fn even_x_checks() {
        assert!(builtin(KnotId::Fig8).check_even_x());
        assert!(builtin(KnotId::K52).check_even_x());
        assert!(!p("x*y + 1").check_even_x());
    }

    #[test]
    fn reciprocal_checks() {
        assert!(builtin(KnotId::Fig8).check_reciprocal());
        assert!(builtin(KnotId::K52).check_reciprocal());
        assert!(!p("x^2 + x*y + 2*y").check_reciprocal());
        // antisymmetric reciprocity is accepted
        assert!(p("x - x^-1").check_reciprocal());
        assert!(!LaurentPoly2::zero().check_reciprocal());
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(
            builtin(KnotId::Fig8).to_string(),
            "y - x^4 + x^2 + 2 + x^-2 - x^-4 + y^-1"
        );
        assert_eq!(p("-3*x*y^2 + 1").to_string(), "-3*x*y^2 + 1");
        assert_eq!(LaurentPoly2::zero().to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
    }

    #[test]
    fn cleared_has_nonnegative_exponents() {
        let (q, shift) = builtin(KnotId::Fig8).cleared();
        assert_eq!(shift, (4, 1));
        assert_eq!(q.exponent_bounds(), Some((0, 8, 0, 2)));
    }

    #[test]
    fn arithmetic() {
        let a = p("x + y");
        let b = p("x - y");
        assert_eq!(&a * &b, p("x^2 - y^2"));
        assert_eq!(&a + &b, p("2*x"));
        assert_eq!(&a - &a, LaurentPoly2::zero());
        assert_eq!(a.pow(2), p("x^2 + 2*x*y + y^2"));
    }
}

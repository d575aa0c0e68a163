//! Registry of the knots whose A-polynomials ship with the crate.

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use serde::Serialize;

use crate::poly::{parse_poly, LaurentPoly2};

/// Figure-eight knot, symmetric Laurent form.
pub const FIG8_TEXT: &str = "y + y^-1 - x^4 - x^-4 + x^2 + x^-2 + 2";

/// The 5_2 knot (the (7,3) two-bridge knot).
pub const K52_TEXT: &str =
    "1 + y*(-1+2*x^2+2*x^4-x^8+x^10) + y^2*(x^4-x^6+2*x^10+2*x^12-x^14) + y^3*x^14";

static FIG8: LazyLock<LaurentPoly2> =
    LazyLock::new(|| parse_poly(FIG8_TEXT).expect("builtin figure-eight polynomial parses"));
static K52: LazyLock<LaurentPoly2> =
    LazyLock::new(|| parse_poly(K52_TEXT).expect("builtin 5_2 polynomial parses"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum KnotId {
    #[serde(rename = "fig8")]
    Fig8,
    #[serde(rename = "5_2")]
    K52,
}

impl KnotId {
    pub const ALL: [KnotId; 2] = [KnotId::Fig8, KnotId::K52];

    pub fn name(self) -> &'static str {
        match self {
            KnotId::Fig8 => "fig8",
            KnotId::K52 => "5_2",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            KnotId::Fig8 => "figure-eight knot 4_1",
            KnotId::K52 => "two-bridge knot 5_2",
        }
    }
}

impl fmt::Display for KnotId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KnotId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fig8" | "4_1" | "figure-eight" | "figure8" => Ok(KnotId::Fig8),
            "5_2" | "k52" | "52" => Ok(KnotId::K52),
            other => Err(format!("unknown knot '{other}' (expected fig8 or 5_2)")),
        }
    }
}

/// The registry A-polynomial of `id`, exactly as displayed (not rescaled).
pub fn builtin(id: KnotId) -> LaurentPoly2 {
    builtin_ref(id).clone()
}

pub(crate) fn builtin_ref(id: KnotId) -> &'static LaurentPoly2 {
    match id {
        KnotId::Fig8 => &FIG8,
        KnotId::K52 => &K52,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_shapes() {
        assert_eq!(builtin(KnotId::Fig8).len(), 7);
        // 1 + 5 + 5 + 1 distinct monomials
        assert_eq!(builtin(KnotId::K52).len(), 12);
    }

    #[test]
    fn registry_polys_are_even_and_reciprocal() {
        for id in KnotId::ALL {
            let p = builtin(id);
            assert!(p.check_even_x(), "{id}");
            assert!(p.check_reciprocal(), "{id}");
        }
    }

    #[test]
    fn knot_names_round_trip() {
        for id in KnotId::ALL {
            assert_eq!(id.name().parse::<KnotId>(), Ok(id));
        }
        assert!("trefoil".parse::<KnotId>().is_err());
    }
}

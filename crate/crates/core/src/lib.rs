//! Numerical verification of logarithmic-form integrals along real
//! branches of knot A-polynomial curves, with the matching Seifert volumes.

pub mod config;
pub mod curve;
pub mod identities;
pub mod integrate;
pub mod knots;
pub mod mahler;
pub mod plot;
pub mod poly;
pub mod quadrature;
pub mod roots;
pub mod seifert;
pub mod sl2;
pub mod verify;

pub use curve::{BranchId, CurvePoint, SurgerySpec, TracedPath};
pub use integrate::{GvResult, IntegralResult, Method};
pub use knots::{builtin, KnotId};
pub use poly::LaurentPoly2;
pub use seifert::{NamedManifold, PiSquaredRational, SeifertData};
pub use sl2::SlTildeElt;
pub use verify::{verify_paper, verify_paper_with, VerificationReport, VerifyConfig};

//! Exact power series over the Gaussian rationals, a small language for
//! product-form generating functions, and an identity prover that clears
//! denominators.

pub mod expr;
pub mod gauss;
pub mod genfun;
pub mod identities;
pub mod parser;
pub mod poly;
pub mod rational;
pub mod series;

pub use expr::{GenExpr, Lin};
pub use gauss::GaussRational;
pub use genfun::{builtin_cases, builtin_genfun, genfun_text, GenTarget};
pub use identities::{
    proof_instances, prove_identity, prove_identity_with, random_params, Identity, Method, Params,
    ProofReport, Verdict,
};
pub use parser::parse_genexpr;
pub use poly::PolyGauss;
pub use series::GaussSeries;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 64;
/// Order used when an identity is checked on series instead of polynomials.
pub const FALLBACK_ORDER: usize = 200;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by a series with zero constant term: {0}")]
    NotInvertible(String),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("not a sum of product forms: {0}")]
    NotProductForm(String),
    #[error("side condition violated: {0}")]
    SideCondition(String),
    #[error("coefficient q^{k} is beyond the maximum order {max}")]
    OrderTooLarge { k: usize, max: usize },
    #[error("{0}")]
    Unlisted(String),
}

/// Truncation order, overridable through DUALCOUNT_MAX_ORDER.
pub fn max_order() -> usize {
    std::env::var("DUALCOUNT_MAX_ORDER")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ORDER)
}

//! Exact symbolic computation of iterated socles `I : m^s` for ideals of
//! `Q[x_1..x_d]` primary to the origin.
//!
//! Three independent routes to the same answer are implemented and
//! cross-checked: Groebner-based colon ideals ([`socle::socle_oracle`]),
//! a decomposition into monomial complete intersections solved by a
//! Koszul contracting homotopy ([`socle::socle_via_decomposition`],
//! [`socle::socle_generators_formula`]), and determinant formulas for
//! Hilbert-Burch presentations in two variables ([`matrix`]).

pub mod cli;
pub mod groebner;
pub mod ideal;
pub mod input;
pub mod koszul;
mod linalg;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod resolution;
pub mod socle;

use thiserror::Error;

/// Everything that can go wrong below the command-line layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("colon by zero ideal")]
    ColonByZeroIdeal,
    #[error("quotient is not Artinian: no power of x{0} appears among the lead terms")]
    NotArtinian(usize),
    #[error("input ideal not primary to the origin")]
    NotOriginPrimary,
    #[error("s = {s} exceeds the bound s <= o(I_1(phi_d)) = {bound}")]
    SocleBound { s: u32, bound: u32 },
    #[error("differential undefined in homological degree 0")]
    HomDegreeZero,
    #[error("element not in K_{{>0}}")]
    NotPositiveDegree,
    #[error("matrix entry at row {row}, column {col} has order {found} but entries in m^{s} are required")]
    EntryOrderTooLow { row: usize, col: usize, s: u32, found: String },
    #[error("not a complete intersection at the origin: {0}")]
    NotCompleteIntersection(String),
    #[error("{0}")]
    BadInput(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

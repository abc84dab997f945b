//! Finsler-geometric analysis of homogeneous elliptic symbols and
//! numerical verification of the associated Rellich-type inequalities.
//!
//! The library parses an even, homogeneous, elliptic polynomial symbol
//! H(ξ) of degree 2m with exact rational coefficients, computes its
//! Finsler norm F = H^{1/2m}, the dual norm F*, and the biconjugate F**,
//! evaluates the sharp constants A(m) = ∏(2j−1)²/4^m and the geometric
//! ratios μ_H/M_H and λ/Λ, and checks the half-space and convex-polytope
//! inequalities against exact polynomial test functions.
//!
//! Heavy loops (norm tables, angular moments, parameter sweeps, adaptive
//! quadrature) run data-parallel under the default `parallel` feature and
//! fall back to identical sequential code without it; reductions use a
//! fixed summation order either way, so results are bit-identical.

pub mod constants;
pub mod error;
pub mod finsler;
pub mod geometry;
pub mod optimize;
pub mod parallel;
pub mod polynomial;
pub mod quadrature;
pub mod rellich1d;
pub mod verify;

pub use constants::{
    comparison_constant, constants_report, mu_m, rellich_constant, rellich_constant_f64,
    sweep_family, sweep_to_csv, theorem2_constant, ConstantsReport, Family, SweepPoint, SweepRow,
};
pub use error::{Error, Result};
pub use finsler::{
    biconjugate, build_norm_table, dual_norm, finsler_f, DirectionGrid, NormTable,
};
pub use geometry::{
    directional_distance, euclidean_distance, finsler_distance, ConvexPolytope, Domain, Face,
    HalfSpace,
};
pub use polynomial::{parse_polynomial, parse_symbol, Polynomial, SymbolPolynomial};
pub use rellich1d::{quotient_closed_form, quotient_numeric, sharp_ratio_halfspace};
pub use verify::{
    energy, remark_bounds_check, symbol_duality_check, verify_convex, verify_halfspace,
    weighted_mass, DualityReport, QuotientReport, RemarkReport, TestFunction,
};

//! Exact algebra for blowing up generic symmetric and skew-symmetric
//! determinantal singularities chart by chart.
//!
//! The crate is `no_std` with `alloc`. IO, JSON and the command line live in
//! the `detsing` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod blowup;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod subst;
pub mod verify;

pub use blowup::{make_chart, strict_transform_ideal, strict_transform_poly, total_transform, Center, ChartMap};
pub use error::{Error, Result};
pub use field::{CoefficientField, Scalar};
pub use groebner::{groebner, GroebnerBasis, GroebnerConfig};
pub use ideal::Ideal;
pub use matrix::{generic_skew, generic_sym, GenericMatrix, MatrixKind};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{format_polynomial, parse_polynomial};
pub use poly::{Polynomial, Valuation};
pub use resolution::{resolve_skew, resolve_sym, ChartNode, ResolutionInput, ResolutionReport, SingularityKind};
pub use ring::{Ring, VarId};
pub use subst::{FractionalSubstitution, Substitution};

//! Metrics of convex polytopes and their inner ε-neighbourhoods, and
//! hole-series dimension estimates for self-projective sets.
//!
//! The geometric side works on H-polytopes: [`polytope::validate_body`] turns
//! a [`HalfspaceSystem`] into a [`Body`], after which [`metrics`] gives
//! volume, surface area and inradius, and [`neighbourhood`] gives exact
//! `vol(L_ε)` together with the `g(ε)` envelope. [`oracle`] provides Monte
//! Carlo estimates to cross-check the exact routines.
//!
//! The [`projective`] module handles iterated families of non-negative
//! matrices acting on the simplex: hole generation, the hole series and
//! word-norm series exponents, and a box-counting check.

// Negated float comparisons are how NaN inputs get rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod metrics;
pub mod neighbourhood;
pub mod oracle;
pub mod polytope;
pub mod projective;
pub mod shapes;
pub mod tol;

pub use error::{Error, Result};
pub use polytope::{validate_body, Body, Facet, Halfspace, HalfspaceSystem, Vector, VertexSet};

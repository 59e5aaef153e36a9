//! Numerical tolerances shared across the crate.
//!
//! `POINT` and `FACET` are relative to a body's scale (half-diagonal of its
//! bounding box); `REPORT` is relative to the magnitude of the compared values.

/// Point deduplication and interior threshold.
pub const POINT: f64 = 1e-9;

/// On-facet residual.
pub const FACET: f64 = 1e-7;

/// Tolerance used when checking reported inequalities.
pub const REPORT: f64 = 1e-6;

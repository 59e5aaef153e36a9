//! Self-projective sets on the simplex of non-negative directions.
//!
//! Points of `Δ = {x ∈ R^{n+1} : x_i ≥ 0, Σ x_i = 1}` are handled in the
//! affine chart that keeps the last `n` coordinates, so for `n = 1` the chart
//! coordinate is `t = x_1 / (x_0 + x_1)`.

mod boxcount;
mod holes;
mod ifs;
mod series;

pub use boxcount::{box_counting_dimension, box_counting_from_holes, dyadic_resolutions};
pub use holes::{generate_holes, hole_series, HoleRecord, SeriesTable};
pub use ifs::{
    apply_projective, complement_intervals, image_polytope, normalize_unimodular, simplex_chart,
    validate_ifs, ChartPoint, IfsReport, ProjectiveIFS,
};
pub use series::{
    critical_exponent, exponent_from_depth_sums, exponent_from_holes, norm_series,
    norm_series_exponent, DimensionEstimate, MatrixNorm,
};

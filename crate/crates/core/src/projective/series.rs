//! Critical exponents of the hole series and the word-norm series.
//!
//! Both series are summed depth by depth. Convergence is judged with a ratio
//! test on the deepest three levels: `ρ(s)` is the mean of `T_m/T_{m−1}` over
//! those levels, and the exponent is the `s` where `ρ` crosses 1, located by
//! bisection on `[n−1, n]`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::holes::{generate_holes, hole_series, HoleRecord, SeriesTable};
use super::ifs::{normalize_unimodular, ProjectiveIFS};
use crate::error::{Error, Result};
use crate::polytope::VertexSet;

const TOP_LEVELS: usize = 3;
const STABILITY: f64 = 0.10;
const TABLE_POINTS: usize = 11;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionEstimate {
    pub s_star: f64,
    pub max_depth: usize,
    pub bracket_width: f64,
    /// Per-depth sums on a uniform s-grid over the search interval.
    pub partial_sums: Vec<SeriesTable>,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixNorm {
    #[default]
    Spectral,
    Frobenius,
    #[serde(rename = "maxentry")]
    MaxEntry,
}

impl MatrixNorm {
    pub fn apply(self, m: &DMatrix<f64>) -> f64 {
        match self {
            MatrixNorm::Spectral => m.singular_values().iter().copied().fold(0.0, f64::max),
            MatrixNorm::Frobenius => m.norm(),
            MatrixNorm::MaxEntry => m.amax(),
        }
    }
}

impl std::str::FromStr for MatrixNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectral" => Ok(MatrixNorm::Spectral),
            "frobenius" => Ok(MatrixNorm::Frobenius),
            "maxentry" => Ok(MatrixNorm::MaxEntry),
            other => Err(Error::BadParameter(format!("unknown norm {other:?}"))),
        }
    }
}

fn level_ratios(sums: &[f64]) -> Vec<f64> {
    let m = sums.len();
    (m - TOP_LEVELS..m).map(|k| sums[k] / sums[k - 1]).collect()
}

fn mean_ratio(sums: &[f64]) -> f64 {
    level_ratios(sums).iter().sum::<f64>() / TOP_LEVELS as f64
}

/// Locates the critical exponent of a depth-indexed series on `[lo, hi]`.
///
/// `sums(s)` returns the per-depth sums; it must return at least four levels
/// so the top three ratios exist.
pub fn exponent_from_depth_sums<F>(
    sums: F,
    lo: f64,
    hi: f64,
    tol: f64,
    max_depth: usize,
) -> Result<DimensionEstimate>
where
    F: Fn(f64) -> Vec<f64>,
{
    if !(tol > 0.0) {
        return Err(Error::BadParameter(format!("tol {tol} must be positive")));
    }
    let probe = sums(lo);
    if probe.len() < TOP_LEVELS + 1 {
        return Err(Error::BadParameter(format!(
            "need at least {} series levels, got {}",
            TOP_LEVELS + 1,
            probe.len()
        )));
    }
    if probe.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::Unstable(
            "series has empty or non-finite levels".into(),
        ));
    }
    let rho = |s: f64| mean_ratio(&sums(s));
    let (rho_lo, rho_hi) = (rho(lo), rho(hi));
    if (rho_lo - 1.0).abs() < 1e-12 && (rho_hi - 1.0).abs() < 1e-12 {
        return Err(Error::Unstable(
            "depth ratios equal 1 across the interval: no decay signal".into(),
        ));
    }
    let mut flags = Vec::new();
    let (mut a, mut b) = (lo, hi);
    let s_star = if rho_lo <= 1.0 {
        flags.push("clamped_low".to_string());
        b = lo;
        lo
    } else if rho_hi >= 1.0 {
        flags.push("clamped_high".to_string());
        a = hi;
        hi
    } else {
        while b - a > tol {
            let mid = 0.5 * (a + b);
            if rho(mid) > 1.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    };

    let ratios = level_ratios(&sums(s_star));
    let (rmin, rmax) = ratios
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(x, y), &r| {
            (x.min(r), y.max(r))
        });
    if rmax - rmin > STABILITY * rmin {
        return Err(Error::Unstable(format!(
            "top-depth ratios at s = {s_star:.4} range over [{rmin:.4}, {rmax:.4}]"
        )));
    }

    let partial_sums = (0..TABLE_POINTS)
        .map(|k| {
            let s = lo + (hi - lo) * k as f64 / (TABLE_POINTS - 1) as f64;
            SeriesTable::from_per_depth(s, sums(s))
        })
        .collect();
    Ok(DimensionEstimate {
        s_star,
        max_depth,
        bracket_width: b - a,
        partial_sums,
        flags,
    })
}

/// Critical exponent of `Σ vol(∇)·In(∇)^{s−n}` over precomputed holes.
pub fn exponent_from_holes(
    holes: &[HoleRecord],
    n: usize,
    max_depth: usize,
    tol: f64,
) -> Result<DimensionEstimate> {
    let nf = n as f64;
    exponent_from_depth_sums(
        |s| hole_series(holes, s, n).per_depth,
        nf - 1.0,
        nf,
        tol,
        max_depth,
    )
}

/// Upper box-counting dimension estimate via the hole series.
pub fn critical_exponent(
    ifs: &ProjectiveIFS,
    seed_holes: &[VertexSet],
    max_depth: usize,
    tol: f64,
) -> Result<DimensionEstimate> {
    let holes = generate_holes(ifs, seed_holes, max_depth)?;
    exponent_from_holes(&holes, ifs.n, max_depth, tol)
}

/// Norms `‖N_{w_1}⋯N_{w_m}‖` for every word, grouped by length `m = 1..=max_depth`.
fn word_norms(ifs: &ProjectiveIFS, max_depth: usize, norm: MatrixNorm) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(max_depth);
    let mut level: Vec<DMatrix<f64>> = ifs.matrices.clone();
    for depth in 1..=max_depth {
        out.push(level.iter().map(|m| norm.apply(m)).collect());
        if depth < max_depth {
            level = ifs
                .matrices
                .iter()
                .flat_map(|head| level.iter().map(move |tail| head * tail))
                .collect();
        }
    }
    out
}

fn norm_sums(norms: &[Vec<f64>], s: f64, n: usize) -> Vec<f64> {
    let power = -((n + 1) as f64) * s / n as f64;
    norms
        .iter()
        .map(|level| level.iter().map(|v| v.powf(power)).sum())
        .collect()
}

/// `U_m(s) = Σ_{|w| = m} ‖N_w‖^{−(n+1)s/n}` for `m = 1..=max_depth`.
pub fn norm_series(ifs: &ProjectiveIFS, s: f64, max_depth: usize, norm: MatrixNorm) -> SeriesTable {
    let norms = word_norms(ifs, max_depth, norm);
    SeriesTable::from_per_depth(s, norm_sums(&norms, s, ifs.n))
}

/// Critical exponent of the word-norm series (after unimodular
/// normalization).
pub fn norm_series_exponent(
    ifs: &ProjectiveIFS,
    max_depth: usize,
    tol: f64,
    norm: MatrixNorm,
) -> Result<DimensionEstimate> {
    let unimodular = normalize_unimodular(ifs)?;
    let norms = word_norms(&unimodular, max_depth, norm);
    let n = ifs.n;
    let nf = n as f64;
    exponent_from_depth_sums(|s| norm_sums(&norms, s, n), nf - 1.0, nf, tol, max_depth)
}

//! Inner ε-neighbourhoods `L_ε(Ω) = {x ∈ Ω : d(x, ∂Ω) ≤ ε}` of polytopes.
//!
//! For an H-polytope the complement `{x : d(x, ∂Ω) ≥ ε}` is the system with
//! every offset moved inward by `ε‖a_i‖`, so `vol(L_ε)` is a difference of
//! two exact volumes.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics;
use crate::polytope::{contains_point, Body};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub eps: f64,
    /// `vol(L_ε(Ω))`
    pub l: f64,
    pub g: f64,
    pub g_over_n: f64,
    /// `ε·vol/In`
    pub chord: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeighbourhoodProfile {
    pub dim: usize,
    pub volume: f64,
    pub inradius: f64,
    pub eps_grid: Vec<f64>,
    pub l_vol: Vec<f64>,
    pub g_vals: Vec<f64>,
    pub g_over_n: Vec<f64>,
    pub chord: Vec<f64>,
    /// Forward differences; the last entry repeats the final cell's slope.
    pub deriv: Vec<f64>,
}

/// `{x ∈ Ω : d(x, ∂Ω) ≥ eps}`, or `None` once its interior vanishes.
pub fn inner_parallel_body(body: &Body, eps: f64) -> Result<Option<Body>> {
    if !(eps >= 0.0) {
        return Err(Error::BadParameter(format!("eps {eps} must be ≥ 0")));
    }
    if eps == 0.0 {
        return Ok(Some(body.clone()));
    }
    let radius = body.chebyshev_radius() - eps;
    if radius <= tol::FACET * body.scale() {
        return Ok(None);
    }
    // The Chebyshev centre of the eroded system is the original incentre.
    let eroded = body.system().offset_inward(eps);
    Body::assemble(
        &eroded,
        body.scale(),
        body.chebyshev_center().to_vec(),
        radius,
    )
    .map(Some)
}

fn eroded_volume(body: &Body, eps: f64) -> Result<f64> {
    Ok(inner_parallel_body(body, eps)?
        .map(|b| metrics::volume(&b))
        .unwrap_or(0.0))
}

/// `vol(L_ε(Ω)) = vol(Ω) − vol(inner parallel body)`.
pub fn vol_inner_neighbourhood(body: &Body, eps: f64) -> Result<f64> {
    if eps == 0.0 {
        return Ok(0.0);
    }
    Ok(metrics::volume(body) - eroded_volume(body, eps)?)
}

/// `vol·(1 − max(0, 1 − eps/In)^n)`.
pub fn g_formula(vol: f64, inradius: f64, eps: f64, n: usize) -> Result<f64> {
    if !(vol > 0.0) || !(inradius > 0.0) || !(eps >= 0.0) || n == 0 {
        return Err(Error::BadParameter(format!(
            "g needs vol > 0, In > 0, eps ≥ 0, n ≥ 1 (got {vol}, {inradius}, {eps}, {n})"
        )));
    }
    let t = (1.0 - eps / inradius).max(0.0);
    Ok(vol * (1.0 - t.powi(n as i32)))
}

fn check_eps(body: &Body, eps: f64) -> Result<f64> {
    let r = metrics::inradius(body);
    if !(eps >= 0.0) || eps > r * (1.0 + tol::REPORT) {
        return Err(Error::EpsOutOfRange { eps, inradius: r });
    }
    Ok(r)
}

/// Checks `g/n ≤ ε·vol/In ≤ vol(L_ε) ≤ g` at a single ε, with slack
/// `REPORT·vol`.
pub fn bounds_report(body: &Body, eps: f64) -> Result<BoundsReport> {
    let r = check_eps(body, eps)?;
    let vol = metrics::volume(body);
    let n = body.dim();
    let l = if eps == 0.0 {
        0.0
    } else {
        vol - eroded_volume(body, eps)?
    };
    Ok(sandwich(vol, r, n, eps, l))
}

fn sandwich(vol: f64, r: f64, n: usize, eps: f64, l: f64) -> BoundsReport {
    let t = (1.0 - eps / r).max(0.0);
    let g = vol * (1.0 - t.powi(n as i32));
    let g_over_n = g / n as f64;
    let chord = eps * vol / r;
    let slack = tol::REPORT * vol;
    BoundsReport {
        eps,
        l,
        g,
        g_over_n,
        chord,
        ok: g_over_n <= chord + slack && chord <= l + slack && l <= g + slack,
    }
}

/// Every vertex of `(1 − ε/In)·Ω`, scaled about the incentre, lies in the
/// inner parallel body at ε.
pub fn scale_copy_containment_check(body: &Body, eps: f64) -> Result<bool> {
    let r = check_eps(body, eps)?;
    let lambda = (1.0 - eps / r).max(0.0);
    let copy = body
        .vertex_set()
        .scale_about(body.chebyshev_center(), lambda)?;
    let eroded = body.system().offset_inward(eps);
    let slack = tol::FACET * body.scale();
    for v in &copy.vertices {
        if !contains_point(&eroded, v, slack)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Samples `ε ↦ vol(L_ε)` on a uniform grid over `[0, In]` together with
/// the `g`, `g/n` and chord envelopes.
pub fn neighbourhood_profile(body: &Body, grid_size: usize) -> Result<NeighbourhoodProfile> {
    if grid_size < 3 {
        return Err(Error::BadParameter(format!(
            "grid size {grid_size} must be at least 3"
        )));
    }
    let n = body.dim();
    let vol = metrics::volume(body);
    let r = metrics::inradius(body);
    let step = r / (grid_size - 1) as f64;
    let eps_grid: Vec<f64> = (0..grid_size)
        .map(|k| {
            if k + 1 == grid_size {
                r
            } else {
                k as f64 * step
            }
        })
        .collect();
    let l_vol: Vec<f64> = eps_grid
        .par_iter()
        .enumerate()
        .map(|(k, &eps)| match k {
            0 => Ok(0.0),
            _ if k + 1 == grid_size => Ok(vol),
            _ => Ok(vol - eroded_volume(body, eps)?),
        })
        .collect::<Result<_>>()?;
    let rows: Vec<BoundsReport> = eps_grid
        .iter()
        .zip(&l_vol)
        .map(|(&eps, &l)| sandwich(vol, r, n, eps, l))
        .collect();
    let mut deriv: Vec<f64> = l_vol.windows(2).map(|w| (w[1] - w[0]) / step).collect();
    deriv.push(*deriv.last().unwrap());
    Ok(NeighbourhoodProfile {
        dim: n,
        volume: vol,
        inradius: r,
        g_vals: rows.iter().map(|b| b.g).collect(),
        g_over_n: rows.iter().map(|b| b.g_over_n).collect(),
        chord: rows.iter().map(|b| b.chord).collect(),
        eps_grid,
        l_vol,
        deriv,
    })
}

impl NeighbourhoodProfile {
    /// `l[k+1] − 2 l[k] + l[k−1]` for interior grid points.
    pub fn second_differences(&self) -> Vec<f64> {
        self.l_vol
            .windows(3)
            .map(|w| w[2] - 2.0 * w[1] + w[0])
            .collect()
    }

    /// Largest violation of the monotonicity, concavity and envelope
    /// invariants (0 when all hold exactly).
    pub fn worst_violation(&self) -> f64 {
        let mut worst = 0.0f64;
        for w in self.l_vol.windows(2) {
            worst = worst.max(w[0] - w[1]);
        }
        for d2 in self.second_differences() {
            worst = worst.max(d2);
        }
        for w in self.deriv.windows(2) {
            worst = worst.max((w[1] - w[0]) * (self.eps_grid[1] - self.eps_grid[0]));
        }
        for k in 0..self.l_vol.len() {
            worst = worst
                .max(self.g_over_n[k] - self.l_vol[k])
                .max(self.l_vol[k] - self.g_vals[k])
                .max(self.chord[k] - self.l_vol[k]);
        }
        worst
    }

    /// CSV with header `eps,l_vol,g,g_over_n,chord,deriv`, 12 significant
    /// digits, `.` decimal separator.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("eps,l_vol,g,g_over_n,chord,deriv\n");
        for k in 0..self.eps_grid.len() {
            let row = [
                self.eps_grid[k],
                self.l_vol[k],
                self.g_vals[k],
                self.g_over_n[k],
                self.chord[k],
                self.deriv[k],
            ];
            let cells: Vec<String> = row.iter().map(|v| format_sig12(*v)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// 12 significant digits in scientific notation.
pub fn format_sig12(v: f64) -> String {
    format!("{v:.11e}")
}

//! Seeded Monte Carlo estimators used as an independent check on the exact
//! volume routines.
//!
//! Samples are split into a fixed number of shards, each with its own
//! ChaCha stream derived from `(seed, shard)`, so results do not depend on how
//! many worker threads run them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::boundary_distance_unchecked;
use crate::polytope::{lp_bounding_box, Body, Vector};

const SHARDS: usize = 16;
pub const MIN_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisBox {
    pub lo: Vector,
    pub hi: Vector,
}

impl AxisBox {
    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(l, h)| h - l).product()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stddev: f64,
    pub samples: usize,
    pub seed: u64,
}

impl McEstimate {
    /// `|mean − exact| ≤ k·σ`, with a rounding floor for the σ = 0 case.
    pub fn agrees_with(&self, exact: f64, k_sigma: f64) -> bool {
        (self.mean - exact).abs() <= k_sigma * self.stddev + 1e-12 * exact.abs().max(1.0)
    }

    /// Distance from the exact value in units of σ.
    pub fn z_score(&self, exact: f64) -> f64 {
        if self.stddev == 0.0 {
            if (self.mean - exact).abs() <= 1e-12 * exact.abs().max(1.0) {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.mean - exact).abs() / self.stddev
        }
    }
}

/// Per-coordinate extent of the body, from 2n linear programs.
pub fn bounding_box(body: &Body) -> Result<AxisBox> {
    let (lo, hi) = lp_bounding_box(body.system())?;
    Ok(AxisBox { lo, hi })
}

fn shard_rng(seed: u64, shard: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard as u64);
    rng
}

fn estimate<F>(body: &Body, samples: usize, seed: u64, hit: F) -> Result<McEstimate>
where
    F: Fn(&[f64]) -> bool + Sync,
{
    if samples < MIN_SAMPLES {
        return Err(Error::BadParameter(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let bbox = bounding_box(body)?;
    let n = body.dim();
    let hits: usize = (0..SHARDS)
        .into_par_iter()
        .map(|shard| {
            let count = samples / SHARDS + usize::from(shard < samples % SHARDS);
            let mut rng = shard_rng(seed, shard);
            let mut x = vec![0.0; n];
            let mut hits = 0usize;
            for _ in 0..count {
                for (k, xk) in x.iter_mut().enumerate() {
                    let u: f64 = rng.random();
                    *xk = bbox.lo[k] + u * (bbox.hi[k] - bbox.lo[k]);
                }
                if hit(&x) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let p = hits as f64 / samples as f64;
    let box_vol = bbox.volume();
    Ok(McEstimate {
        mean: p * box_vol,
        stddev: (p * (1.0 - p) / samples as f64).sqrt() * box_vol,
        samples,
        seed,
    })
}

/// Hit-or-miss estimate of `vol(Ω)`.
pub fn mc_volume(body: &Body, samples: usize, seed: u64) -> Result<McEstimate> {
    let h = body.system();
    estimate(body, samples, seed, |x| {
        h.halfspaces.iter().all(|hs| hs.slack(x) >= 0.0)
    })
}

/// Hit-or-miss estimate of `vol{x ∈ Ω : d(x, ∂Ω) ≤ eps}` using the facet
/// distance formula directly.
pub fn mc_inner_volume(body: &Body, eps: f64, samples: usize, seed: u64) -> Result<McEstimate> {
    if !(eps >= 0.0) {
        return Err(Error::BadParameter(format!("eps {eps} must be ≥ 0")));
    }
    let h = body.system();
    estimate(body, samples, seed, |x| {
        let d = boundary_distance_unchecked(h, x);
        d >= 0.0 && d <= eps
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::pancake_family;
    use crate::polytope::validate_body;
    use crate::shapes;

    #[test]
    fn boxes() {
        let sq = validate_body(&shapes::unit_cube(2)).unwrap();
        let b = bounding_box(&sq).unwrap();
        assert_eq!(
            (b.lo.clone(), b.hi.clone()),
            (vec![0.0, 0.0], vec![1.0, 1.0])
        );
        let p = validate_body(&pancake_family(2, 4.0).unwrap()).unwrap();
        let b = bounding_box(&p).unwrap();
        assert_eq!(
            (b.lo.clone(), b.hi.clone()),
            (vec![0.0, 0.0], vec![1.0, 4.0])
        );
        let tri = validate_body(&shapes::standard_simplex(2)).unwrap();
        let b = bounding_box(&tri).unwrap();
        assert_eq!(
            (b.lo.clone(), b.hi.clone()),
            (vec![0.0, 0.0], vec![1.0, 1.0])
        );
    }

    #[test]
    fn cube_is_all_hits() {
        let cube = validate_body(&shapes::unit_cube(3)).unwrap();
        let est = mc_volume(&cube, MIN_SAMPLES, 1).unwrap();
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.stddev, 0.0);
        assert!(est.agrees_with(1.0, 4.0));
    }

    #[test]
    fn simplex_and_pancake() {
        let tri = validate_body(&shapes::standard_simplex(2)).unwrap();
        let est = mc_volume(&tri, 1_000_000, 11).unwrap();
        assert!(est.agrees_with(0.5, 4.0), "{est:?}");
        let p = validate_body(&pancake_family(2, 4.0).unwrap()).unwrap();
        let est = mc_volume(&p, 1_000_000, 12).unwrap();
        assert!(est.agrees_with(4.0, 4.0), "{est:?}");
    }

    #[test]
    fn inner_estimates() {
        let sq = validate_body(&shapes::unit_cube(2)).unwrap();
        let est = mc_inner_volume(&sq, 0.1, 1_000_000, 5).unwrap();
        assert!(est.agrees_with(0.36, 4.0), "{est:?}");
        let zero = mc_inner_volume(&sq, 0.0, 100_000, 5).unwrap();
        assert!(zero.mean < 1e-4);
        let all = mc_inner_volume(&sq, 0.6, 100_000, 5).unwrap();
        assert_eq!(all.mean, 1.0);
    }

    #[test]
    fn deterministic_and_validated() {
        let tri = validate_body(&shapes::standard_simplex(2)).unwrap();
        let a = mc_volume(&tri, 20_000, 99).unwrap();
        let b = mc_volume(&tri, 20_000, 99).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert!(mc_volume(&tri, 10, 1).is_err());
    }
}

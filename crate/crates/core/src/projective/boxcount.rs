//! Grid box-counting of `Δ` minus a finite set of holes.

use super::holes::{generate_holes, HoleRecord};
use super::ifs::ProjectiveIFS;
use crate::error::{Error, Result};
use crate::polytope::{convex_hull, HalfspaceSystem, VertexSet};

/// Slope of `log N(δ)` against `log(1/δ)` for the approximation of the
/// attractor by the simplex minus all holes up to `depth`.
pub fn box_counting_dimension(
    ifs: &ProjectiveIFS,
    seed_holes: &[VertexSet],
    depth: usize,
    resolutions: &[f64],
) -> Result<f64> {
    check_resolutions(resolutions)?;
    let holes = generate_holes(ifs, seed_holes, depth)?;
    if !holes.is_empty() {
        let finest = *resolutions.last().unwrap();
        let smallest = holes
            .iter()
            .map(|h| 2.0 * h.inradius)
            .fold(f64::INFINITY, f64::min);
        if smallest > finest {
            return Err(Error::InsufficientDepth(format!(
                "smallest hole at depth {depth} has width {smallest:e}, coarser than δ = {finest:e}"
            )));
        }
    }
    box_counting_from_holes(ifs.n, &holes, resolutions)
}

/// `δ = 2^{-k}` for `k ≥ 2`, stopping at `smallest_width` or when the
/// grid would exceed about 2^20 cells.
pub fn dyadic_resolutions(n: usize, smallest_width: f64) -> Vec<f64> {
    let max_k = 20 / n.max(1) as i32;
    (2..=max_k)
        .map(|k| 2f64.powi(-k))
        .take_while(|&d| d >= smallest_width)
        .collect()
}

fn check_resolutions(resolutions: &[f64]) -> Result<()> {
    if resolutions.len() < 3 {
        return Err(Error::BadParameter("need at least 3 resolutions".into()));
    }
    if resolutions.iter().any(|&d| !(d > 0.0 && d < 1.0))
        || resolutions.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(Error::BadParameter(
            "resolutions must be strictly decreasing in (0, 1)".into(),
        ));
    }
    Ok(())
}

/// Box-counting slope for `Δ \ ⋃ holes` in the n-dimensional chart.
pub fn box_counting_from_holes(n: usize, holes: &[HoleRecord], resolutions: &[f64]) -> Result<f64> {
    check_resolutions(resolutions)?;
    let hulls: Vec<HalfspaceSystem> = holes
        .iter()
        .map(|h| convex_hull(&h.body))
        .collect::<Result<_>>()?;
    let bodies: Vec<&VertexSet> = holes.iter().map(|h| &h.body).collect();
    let points: Vec<(f64, f64)> = resolutions
        .iter()
        .map(|&delta| {
            let count = count_boxes(n, &bodies, &hulls, delta);
            ((1.0 / delta).ln(), (count as f64).ln())
        })
        .collect();
    Ok(least_squares_slope(&points))
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Cells `∏[k_i δ, (k_i+1) δ]` that meet the simplex but are not contained
/// in a single open hole. Holes are disjoint open convex sets and a cell
/// meets `Δ` in a connected set, so "covered by the union" reduces to
/// "inside one hole".
fn count_boxes(n: usize, bodies: &[&VertexSet], hulls: &[HalfspaceSystem], delta: f64) -> u64 {
    let cells_per_axis = (1.0 / delta).ceil() as i64;
    let meets_simplex = |k: &[i64]| (k.iter().sum::<i64>() as f64) * delta < 1.0 - 1e-12;
    let mut total = 0u64;
    for_each_cell(n, &vec![0; n], &vec![cells_per_axis; n], |k| {
        if meets_simplex(k) {
            total += 1;
        }
    });

    let margin = 1e-9 * delta;
    let mut covered = 0u64;
    for (body, hull) in bodies.iter().zip(hulls) {
        let lo: Vec<i64> = (0..n)
            .map(|i| {
                let m = body
                    .vertices
                    .iter()
                    .map(|v| v[i])
                    .fold(f64::INFINITY, f64::min);
                (m / delta).floor() as i64
            })
            .collect();
        let hi: Vec<i64> = (0..n)
            .map(|i| {
                let m = body
                    .vertices
                    .iter()
                    .map(|v| v[i])
                    .fold(f64::NEG_INFINITY, f64::max);
                ((m / delta).ceil() as i64).min(cells_per_axis)
            })
            .collect();
        let mut corner = vec![0.0; n];
        for_each_cell(n, &lo, &hi, |k| {
            let inside = (0..1usize << n).all(|mask| {
                for i in 0..n {
                    let bump = (mask >> i) & 1;
                    corner[i] = (k[i] + bump as i64) as f64 * delta;
                }
                hull.halfspaces
                    .iter()
                    .all(|hs| hs.slack(&corner) > margin * hs.norm())
            });
            if inside {
                covered += 1;
            }
        });
    }
    total - covered
}

fn for_each_cell<F: FnMut(&[i64])>(n: usize, lo: &[i64], hi: &[i64], mut f: F) {
    if lo.iter().zip(hi).any(|(a, b)| a >= b) {
        return;
    }
    let mut k = lo.to_vec();
    loop {
        f(&k);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            k[i] += 1;
            if k[i] < hi[i] {
                break;
            }
            k[i] = lo[i];
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::complement_intervals;

    #[test]
    fn cantor_slope() {
        let ifs = ProjectiveIFS::from_rows(
            1,
            &[
                vec![vec![3.0, 2.0], vec![0.0, 1.0]],
                vec![vec![1.0, 0.0], vec![2.0, 3.0]],
            ],
        )
        .unwrap();
        let seeds = complement_intervals(&ifs).unwrap();
        let res: Vec<f64> = (2..=9).map(|k| 3f64.powi(-k)).collect();
        let d = box_counting_dimension(&ifs, &seeds, 10, &res).unwrap();
        assert!((d - 2f64.ln() / 3f64.ln()).abs() < 0.05, "{d}");

        assert!(matches!(
            box_counting_dimension(&ifs, &seeds, 2, &res),
            Err(Error::InsufficientDepth(_))
        ));
    }

    #[test]
    fn full_simplex_has_full_dimension() {
        // Two halves of the interval: no holes at all.
        let ifs = ProjectiveIFS::from_rows(
            1,
            &[
                vec![vec![2.0, 1.0], vec![0.0, 1.0]],
                vec![vec![1.0, 0.0], vec![1.0, 2.0]],
            ],
        )
        .unwrap();
        let seeds = complement_intervals(&ifs).unwrap();
        assert!(seeds.is_empty());
        let res = [0.1, 0.01, 0.001];
        let d = box_counting_dimension(&ifs, &seeds, 3, &res).unwrap();
        assert!((d - 1.0).abs() < 0.01, "{d}");

        let res2: Vec<f64> = (3..=7).map(|k| 2f64.powi(-k)).collect();
        let d2 = box_counting_from_holes(2, &[], &res2).unwrap();
        assert!((d2 - 2.0).abs() < 0.1, "{d2}");
    }

    #[test]
    fn single_hole_keeps_full_dimension() {
        let hole = HoleRecord {
            word: vec![],
            seed: 0,
            body: VertexSet::new(2, vec![vec![0.2, 0.2], vec![0.4, 0.2], vec![0.2, 0.4]]),
            volume: 0.02,
            inradius: 0.0,
        };
        let res: Vec<f64> = (3..=7).map(|k| 2f64.powi(-k)).collect();
        let d = box_counting_from_holes(2, &[hole], &res).unwrap();
        assert!((d - 2.0).abs() < 0.15, "{d}");
    }

    #[test]
    fn resolution_checks() {
        assert!(box_counting_from_holes(1, &[], &[0.1, 0.01]).is_err());
        assert!(box_counting_from_holes(1, &[], &[0.01, 0.1, 0.001]).is_err());
    }
}

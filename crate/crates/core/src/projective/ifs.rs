use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics;
use crate::polytope::{self, convex_hull, HalfspaceSystem, Vector, VertexSet};
use crate::tol;

/// A family of `(n+1)×(n+1)` matrices acting projectively on `Δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveIFS {
    pub n: usize,
    pub alphabet: Vec<String>,
    pub matrices: Vec<DMatrix<f64>>,
    /// User assertion that the attractor has zero (n−1)-measure; recorded,
    /// not checked.
    pub assume_measure_zero: bool,
}

impl ProjectiveIFS {
    pub fn new(n: usize, alphabet: Vec<String>, matrices: Vec<DMatrix<f64>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParameter(
                "projective dimension must be ≥ 1".into(),
            ));
        }
        if alphabet.len() != matrices.len() {
            return Err(Error::BadParameter(format!(
                "{} labels for {} matrices",
                alphabet.len(),
                matrices.len()
            )));
        }
        for m in &matrices {
            if m.nrows() != n + 1 || m.ncols() != n + 1 {
                return Err(Error::DimensionMismatch {
                    expected: n + 1,
                    got: m.nrows().max(m.ncols()),
                });
            }
        }
        Ok(ProjectiveIFS {
            n,
            alphabet,
            matrices,
            assume_measure_zero: true,
        })
    }

    /// Builds from row-major nested vectors with labels `0, 1, …`.
    pub fn from_rows(n: usize, rows: &[Vec<Vec<f64>>]) -> Result<Self> {
        let mut matrices = Vec::with_capacity(rows.len());
        for m in rows {
            let flat: Vec<f64> = m.iter().flatten().copied().collect();
            if m.len() != n + 1 || flat.len() != (n + 1) * (n + 1) {
                return Err(Error::DimensionMismatch {
                    expected: n + 1,
                    got: m.len(),
                });
            }
            matrices.push(DMatrix::from_row_slice(n + 1, n + 1, &flat));
        }
        let alphabet = (0..rows.len()).map(|j| j.to_string()).collect();
        ProjectiveIFS::new(n, alphabet, matrices)
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }
}

/// A point of the simplex chart (last n barycentric coordinates).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub coords: Vector,
}

impl ChartPoint {
    pub fn new(coords: Vector) -> Self {
        ChartPoint { coords }
    }

    /// `(1 − Σ coords, coords…)`.
    pub fn lift(&self) -> DVector<f64> {
        let s: f64 = self.coords.iter().sum();
        DVector::from_iterator(
            self.coords.len() + 1,
            std::iter::once(1.0 - s).chain(self.coords.iter().copied()),
        )
    }

    /// Normalizes a non-negative direction to coordinate sum 1 and drops the
    /// first coordinate.
    pub fn from_lift(x: &DVector<f64>) -> Result<Self> {
        let s = x.sum();
        if !(s > tol::POINT) {
            return Err(Error::DegenerateImage { sum: s });
        }
        Ok(ChartPoint::new(x.iter().skip(1).map(|v| v / s).collect()))
    }
}

pub fn apply_projective(m: &DMatrix<f64>, p: &ChartPoint) -> Result<ChartPoint> {
    if m.nrows() != p.coords.len() + 1 {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            got: p.coords.len() + 1,
        });
    }
    ChartPoint::from_lift(&(m * p.lift()))
}

/// Vertex-wise image; a projective map with positive denominators sends a
/// convex polytope onto the hull of its vertex images.
pub fn image_polytope(m: &DMatrix<f64>, body: &VertexSet) -> Result<VertexSet> {
    let vertices = body
        .vertices
        .iter()
        .map(|v| Ok(apply_projective(m, &ChartPoint::new(v.clone()))?.coords))
        .collect::<Result<_>>()?;
    Ok(VertexSet::new(body.dim, vertices))
}

/// Vertices `0, e_1, …, e_n` of the chart simplex.
pub fn simplex_chart(n: usize) -> VertexSet {
    let mut vertices = vec![vec![0.0; n]];
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        vertices.push(e);
    }
    VertexSet::new(n, vertices)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Divides each matrix by `|det|^{1/(n+1)}`; the projective action is
/// unchanged.
pub fn normalize_unimodular(ifs: &ProjectiveIFS) -> Result<ProjectiveIFS> {
    let mut out = ifs.clone();
    for m in out.matrices.iter_mut() {
        let det = m.determinant();
        if !(det.abs() > tol::POINT) {
            return Err(Error::SingularMatrix { det });
        }
        let scale = det.abs().powf(1.0 / (ifs.n + 1) as f64);
        *m /= scale;
    }
    Ok(out)
}

/// For `n = 1`: the open gaps of `[0,1]` not covered by the images `N_j·Δ`.
pub fn complement_intervals(ifs: &ProjectiveIFS) -> Result<Vec<VertexSet>> {
    if ifs.n != 1 {
        return Err(Error::BadParameter(
            "automatic seed holes are only defined for n = 1".into(),
        ));
    }
    let delta = simplex_chart(1);
    let mut intervals: Vec<(f64, f64)> = ifs
        .matrices
        .iter()
        .map(|m| {
            let img = image_polytope(m, &delta)?;
            let (a, b) = (img.vertices[0][0], img.vertices[1][0]);
            Ok((a.min(b), a.max(b)))
        })
        .collect::<Result<_>>()?;
    intervals.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut gaps = Vec::new();
    let mut cursor = 0.0;
    for (a, b) in intervals {
        if a - cursor > tol::POINT {
            gaps.push(VertexSet::new(1, vec![vec![cursor], vec![a]]));
        }
        cursor = f64::max(cursor, b);
    }
    if 1.0 - cursor > tol::POINT {
        gaps.push(VertexSet::new(1, vec![vec![cursor], vec![1.0]]));
    }
    Ok(gaps)
}

/// Outcome of checking the hypotheses on an IFS and its declared holes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IfsReport {
    pub invertible: bool,
    pub nonnegative: bool,
    pub images_disjoint: bool,
    pub holes_avoid_boundary: bool,
    pub covers_simplex: bool,
    pub assume_measure_zero: bool,
    pub violations: Vec<String>,
}

impl IfsReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Interiors of two polytopes are disjoint iff the Chebyshev radius of the
/// intersection is (numerically) zero.
fn interiors_disjoint(a: &HalfspaceSystem, b: &HalfspaceSystem, scale: f64) -> Result<bool> {
    let mut joint = a.clone();
    joint.halfspaces.extend(b.halfspaces.iter().cloned());
    match polytope::chebyshev(&joint) {
        Ok((_, r)) => Ok(r <= tol::POINT * scale),
        Err(Error::Infeasible) => Ok(true),
        Err(e) => Err(e),
    }
}

fn hull_measure(v: &VertexSet) -> Result<(HalfspaceSystem, f64)> {
    let h = convex_hull(v)?;
    let vol = metrics::hull_volume(v)?;
    Ok((h, vol))
}

/// Distance from a chart point to the boundary of the chart simplex.
pub(crate) fn simplex_boundary_distance(p: &[f64]) -> f64 {
    let n = p.len() as f64;
    let s: f64 = p.iter().sum();
    p.iter().copied().fold((1.0 - s) / n.sqrt(), f64::min)
}

pub fn validate_ifs(ifs: &ProjectiveIFS, seed_holes: &[VertexSet]) -> Result<IfsReport> {
    let n = ifs.n;
    let mut violations = Vec::new();
    let label = |j: usize| ifs.alphabet[j].as_str();

    let mut invertible = true;
    let mut nonnegative = true;
    for (j, m) in ifs.matrices.iter().enumerate() {
        let det = m.determinant();
        if !(det.abs() > tol::POINT) {
            invertible = false;
            violations.push(format!("matrix {} is singular (det {det:e})", label(j)));
        }
        if m.iter().any(|&v| v < 0.0) {
            nonnegative = false;
            violations.push(format!("matrix {} has a negative entry", label(j)));
        }
    }

    let mut images_disjoint = true;
    let mut holes_avoid_boundary = true;
    let mut covers_simplex = true;
    if invertible && nonnegative {
        let delta = simplex_chart(n);
        let mut pieces: Vec<(String, HalfspaceSystem, f64)> = Vec::new();
        for (j, m) in ifs.matrices.iter().enumerate() {
            let img = image_polytope(m, &delta)?;
            let (h, vol) = hull_measure(&img)?;
            pieces.push((format!("image {}", label(j)), h, vol));
        }
        for (k, hole) in seed_holes.iter().enumerate() {
            if hole.dim != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: hole.dim,
                });
            }
            let margin = hole
                .vertices
                .iter()
                .map(|v| simplex_boundary_distance(v))
                .fold(f64::INFINITY, f64::min);
            if !(margin > tol::POINT) {
                holes_avoid_boundary = false;
                violations.push(format!(
                    "seed hole {k} meets the simplex boundary (margin {margin:e})"
                ));
            }
            match hull_measure(hole) {
                Ok((h, vol)) => pieces.push((format!("seed hole {k}"), h, vol)),
                Err(e) => {
                    covers_simplex = false;
                    violations.push(format!("seed hole {k} is not a body: {e}"));
                }
            }
        }
        let images = ifs.len();
        for a in 0..pieces.len() {
            for b in a + 1..pieces.len() {
                if !interiors_disjoint(&pieces[a].1, &pieces[b].1, 1.0)? {
                    if b < images {
                        images_disjoint = false;
                    } else {
                        covers_simplex = false;
                    }
                    violations.push(format!("{} and {} overlap", pieces[a].0, pieces[b].0));
                }
            }
        }
        let total: f64 = pieces.iter().map(|p| p.2).sum();
        let target = 1.0 / factorial(n);
        if (total - target).abs() > tol::REPORT * target {
            covers_simplex = false;
            violations.push(format!(
                "images and seed holes have total volume {total} but the simplex has {target}"
            ));
        }
    }

    Ok(IfsReport {
        invertible,
        nonnegative,
        images_disjoint,
        holes_avoid_boundary,
        covers_simplex,
        assume_measure_zero: ifs.assume_measure_zero,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cantor() -> ProjectiveIFS {
        ProjectiveIFS::from_rows(
            1,
            &[
                vec![vec![3.0, 2.0], vec![0.0, 1.0]],
                vec![vec![1.0, 0.0], vec![2.0, 3.0]],
            ],
        )
        .unwrap()
    }

    fn t(v: f64) -> ChartPoint {
        ChartPoint::new(vec![v])
    }

    #[test]
    fn cantor_maps() {
        let ifs = cantor();
        let id = DMatrix::<f64>::identity(2, 2);
        assert_eq!(apply_projective(&id, &t(0.3)).unwrap(), t(0.3));
        let p = apply_projective(&ifs.matrices[0], &t(1.0)).unwrap();
        assert!((p.coords[0] - 1.0 / 3.0).abs() < 1e-15);
        let q = apply_projective(&ifs.matrices[1], &t(0.0)).unwrap();
        assert!((q.coords[0] - 2.0 / 3.0).abs() < 1e-15);
        // t ↦ t/3 and t ↦ (t+2)/3 everywhere
        for k in 0..=10 {
            let x = k as f64 / 10.0;
            let a = apply_projective(&ifs.matrices[0], &t(x)).unwrap().coords[0];
            let b = apply_projective(&ifs.matrices[1], &t(x)).unwrap().coords[0];
            assert!((a - x / 3.0).abs() < 1e-15);
            assert!((b - (x + 2.0) / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn degenerate_image() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(
            apply_projective(&m, &t(1.0)),
            Err(Error::DegenerateImage { .. })
        ));
    }

    #[test]
    fn interval_images() {
        let ifs = cantor();
        let unit = simplex_chart(1);
        let img = image_polytope(&ifs.matrices[0], &unit).unwrap();
        let mut ends: Vec<f64> = img.vertices.iter().map(|v| v[0]).collect();
        ends.sort_by(f64::total_cmp);
        assert!(ends[0].abs() < 1e-15 && (ends[1] - 1.0 / 3.0).abs() < 1e-15);
        let hull = convex_hull(&img).unwrap();
        assert_eq!(hull.halfspaces.len(), 2);

        let hole = VertexSet::new(1, vec![vec![1.0 / 3.0], vec![2.0 / 3.0]]);
        let img = image_polytope(&ifs.matrices[1], &hole).unwrap();
        assert!((img.vertices[0][0] - 7.0 / 9.0).abs() < 1e-15);
        assert!((img.vertices[1][0] - 8.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn cantor_validates() {
        let ifs = cantor();
        let seeds = complement_intervals(&ifs).unwrap();
        assert_eq!(seeds.len(), 1);
        assert!((seeds[0].vertices[0][0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((seeds[0].vertices[1][0] - 2.0 / 3.0).abs() < 1e-15);
        let report = validate_ifs(&ifs, &seeds).unwrap();
        assert!(report.is_valid(), "{report:?}");
    }

    #[test]
    fn identical_maps_overlap() {
        let m = vec![vec![3.0, 2.0], vec![0.0, 1.0]];
        let ifs = ProjectiveIFS::from_rows(1, &[m.clone(), m]).unwrap();
        let hole = VertexSet::new(1, vec![vec![0.4], vec![0.6]]);
        let report = validate_ifs(&ifs, &[hole]).unwrap();
        assert!(!report.images_disjoint);
        assert!(!report.is_valid());
    }

    #[test]
    fn boundary_hole_rejected() {
        let ifs = cantor();
        let hole = VertexSet::new(1, vec![vec![0.0], vec![0.1]]);
        let report = validate_ifs(&ifs, &[hole]).unwrap();
        assert!(!report.holes_avoid_boundary);
    }

    #[test]
    fn negative_and_singular() {
        let ifs = ProjectiveIFS::from_rows(
            1,
            &[
                vec![vec![1.0, -1.0], vec![0.0, 1.0]],
                vec![vec![1.0, 1.0], vec![1.0, 1.0]],
            ],
        )
        .unwrap();
        let report = validate_ifs(&ifs, &[]).unwrap();
        assert!(!report.nonnegative && !report.invertible);
        assert!(matches!(
            normalize_unimodular(&ifs),
            Err(Error::SingularMatrix { .. })
        ));
    }

    #[test]
    fn unimodular_scaling() {
        let ifs = cantor();
        let u = normalize_unimodular(&ifs).unwrap();
        let expected = ifs.matrices[0].clone() / 3f64.sqrt();
        assert!((&u.matrices[0] - expected).norm() < 1e-15);
        for m in &u.matrices {
            assert!((m.determinant().abs() - 1.0).abs() < 1e-12);
        }
        let again = normalize_unimodular(&u).unwrap();
        for (a, b) in again.matrices.iter().zip(&u.matrices) {
            assert!((a - b).norm() < 1e-12);
        }
        for k in 0..100 {
            let p = t(k as f64 / 99.0);
            for (a, b) in ifs.matrices.iter().zip(&u.matrices) {
                let x = apply_projective(a, &p).unwrap().coords[0];
                let y = apply_projective(b, &p).unwrap().coords[0];
                assert!((x - y).abs() < tol::POINT);
            }
        }
    }
}

//! Volume, surface area, inradius and the Heron-type bound
//! `vol/per ≤ In ≤ n·vol/per`.
//!
//! Volumes use the cone decomposition over facets: from an interior apex,
//! `vol = Σ_S (1/n)·vol_{n−1}(S)·dist(apex, S)`. Facet measures recurse the
//! same way inside each facet's hyperplane, inheriting vertex incidence so no
//! hull is ever recomputed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::polytope::{self, contains_point, Body, Facet, HalfspaceSystem, Vector, VertexSet};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncentreResult {
    pub incentre: Vector,
    pub inradius: f64,
    /// Indices into the body's minimal halfspace list.
    pub touching_facets: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeronReport {
    pub volume: f64,
    pub perimeter: f64,
    pub inradius: f64,
    pub lower: f64,
    pub upper: f64,
    pub satisfied: bool,
}

/// `min_i (b_i − a_i·x)/‖a_i‖` for a point of the body.
pub fn distance_to_boundary(body: &Body, x: &[f64]) -> Result<f64> {
    let h = body.system();
    if !contains_point(h, x, tol::FACET * body.scale())? {
        let violation = h
            .halfspaces
            .iter()
            .map(|hs| -hs.distance(x))
            .fold(f64::NEG_INFINITY, f64::max);
        return Err(Error::OutsideBody { violation });
    }
    Ok(boundary_distance_unchecked(h, x))
}

pub(crate) fn boundary_distance_unchecked(h: &HalfspaceSystem, x: &[f64]) -> f64 {
    h.halfspaces
        .iter()
        .map(|hs| hs.distance(x))
        .fold(f64::INFINITY, f64::min)
}

/// Chebyshev centre of the body. When the incentre is not unique, whichever
/// optimizer the simplex lands on is returned.
pub fn incentre(body: &Body) -> IncentreResult {
    let x = body.chebyshev_center().to_vec();
    let r = body.chebyshev_radius();
    let touch_tol = tol::FACET * body.scale();
    let touching_facets = body
        .system()
        .halfspaces
        .iter()
        .enumerate()
        .filter(|(_, hs)| hs.distance(&x) - r <= touch_tol)
        .map(|(i, _)| i)
        .collect();
    IncentreResult {
        incentre: x,
        inradius: r,
        touching_facets,
    }
}

pub fn inradius(body: &Body) -> f64 {
    body.chebyshev_radius()
}

struct Face {
    normal: Vector,
    offset: f64,
    members: Vec<usize>,
}

/// Volume of the polytope spanned by `points` with facet structure `faces`,
/// in dimension `d`, coned from `apex`. Also returns the per-face measures.
fn cone_volume(
    points: &[Vector],
    faces: &[Face],
    d: usize,
    apex: Option<&[f64]>,
    tol: f64,
) -> (f64, Vec<f64>) {
    if d == 1 {
        let (lo, hi) = points
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(p[0]), hi.max(p[0]))
            });
        return ((hi - lo).max(0.0), vec![1.0; faces.len()]);
    }
    let owned;
    let apex = match apex {
        Some(a) => a,
        None => {
            owned = linalg::centroid(points.iter().map(|p| p.as_slice()), d);
            &owned
        }
    };
    let mut total = 0.0;
    let mut per_face = Vec::with_capacity(faces.len());
    for (i, face) in faces.iter().enumerate() {
        let measure = face_measure(points, faces, i, d, tol);
        let height = (face.offset - linalg::dot(&face.normal, apex)) / linalg::norm(&face.normal);
        total += measure * height / d as f64;
        per_face.push(measure);
    }
    (total, per_face)
}

/// (d−1)-measure of face `i`, computed in an orthonormal chart of its
/// hyperplane.
fn face_measure(points: &[Vector], faces: &[Face], i: usize, d: usize, tol: f64) -> f64 {
    let face = &faces[i];
    if d == 1 {
        return 1.0;
    }
    let basis = linalg::orthonormal_complement(&face.normal);
    let origin = &points[face.members[0]];
    let local: Vec<Vector> = face
        .members
        .iter()
        .map(|&k| {
            let diff = linalg::sub(&points[k], origin);
            basis.iter().map(|b| linalg::dot(b, &diff)).collect()
        })
        .collect();
    if d == 2 {
        let (lo, hi) = local
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(p[0]), hi.max(p[0]))
            });
        return (hi - lo).max(0.0);
    }
    let mut ridges: Vec<Face> = Vec::new();
    for (j, other) in faces.iter().enumerate() {
        if j == i {
            continue;
        }
        let common: Vec<usize> = face
            .members
            .iter()
            .enumerate()
            .filter(|(_, k)| other.members.binary_search(k).is_ok())
            .map(|(pos, _)| pos)
            .collect();
        if common.len() < d - 1 || ridges.iter().any(|r| r.members == common) {
            continue;
        }
        let pts: Vec<&[f64]> = common.iter().map(|&p| local[p].as_slice()).collect();
        if linalg::affine_dim(&pts, tol) != Some(d - 2) {
            continue;
        }
        let normal: Vector = basis
            .iter()
            .map(|b| linalg::dot(b, &other.normal))
            .collect();
        if linalg::norm(&normal) <= 1e-12 * linalg::norm(&other.normal) {
            continue;
        }
        let offset = other.offset - linalg::dot(&other.normal, origin);
        ridges.push(Face {
            normal,
            offset,
            members: common,
        });
    }
    cone_volume(&local, &ridges, d - 1, None, tol).0
}

fn body_faces(body: &Body) -> Vec<Face> {
    body.system()
        .halfspaces
        .iter()
        .zip(body.incidence())
        .map(|(h, inc)| Face {
            normal: h.normal.clone(),
            offset: h.offset,
            members: inc.clone(),
        })
        .collect()
}

/// Volume and surface area in one pass.
pub fn measures(body: &Body) -> (f64, f64) {
    let faces = body_faces(body);
    let (vol, per_face) = cone_volume(
        body.vertices(),
        &faces,
        body.dim(),
        Some(body.chebyshev_center()),
        tol::FACET * body.scale(),
    );
    (vol, per_face.iter().sum())
}

pub fn volume(body: &Body) -> f64 {
    measures(body).0
}

pub fn surface_area(body: &Body) -> f64 {
    measures(body).1
}

/// n-volume of the convex hull of a point set.
pub fn hull_volume(v: &VertexSet) -> Result<f64> {
    match v.dim {
        0 => Ok(1.0),
        1 => {
            let (lo, hi) = v
                .vertices
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                    (lo.min(p[0]), hi.max(p[0]))
                });
            Ok((hi - lo).max(0.0))
        }
        _ => Ok(volume(&polytope::validate_body(&polytope::convex_hull(
            v,
        )?)?)),
    }
}

/// (n−1)-volume of a facet, by isometric embedding of its hyperplane into
/// R^{n−1}.
pub fn facet_volume(f: &Facet) -> Result<f64> {
    let n = f.vertices.dim;
    if n == 1 {
        return Ok(1.0);
    }
    let pts: Vec<&[f64]> = f.vertices.vertices.iter().map(|v| v.as_slice()).collect();
    let Some(origin) = pts.first() else {
        return Err(Error::DegenerateFacet("facet has no vertices".into()));
    };
    let spread = pts
        .iter()
        .map(|p| linalg::dist(p, origin))
        .fold(0.0f64, f64::max);
    if linalg::affine_dim(&pts, tol::FACET * spread.max(f64::MIN_POSITIVE)) != Some(n - 1) {
        return Err(Error::DegenerateFacet(format!(
            "facet vertices do not span dimension {}",
            n - 1
        )));
    }
    let basis = linalg::orthonormal_complement(&f.support.normal);
    let local: Vec<Vector> = pts
        .iter()
        .map(|p| {
            let diff = linalg::sub(p, origin);
            basis.iter().map(|b| linalg::dot(b, &diff)).collect()
        })
        .collect();
    hull_volume(&VertexSet::new(n - 1, local))
}

/// Evaluates `vol/per ≤ In ≤ n·vol/per`.
pub fn heron_bounds(body: &Body) -> HeronReport {
    let (volume, perimeter) = measures(body);
    let inradius = inradius(body);
    let n = body.dim() as f64;
    let lower = volume / perimeter;
    let upper = n * volume / perimeter;
    let slack = tol::REPORT * inradius.max(1.0);
    HeronReport {
        volume,
        perimeter,
        inradius,
        lower,
        upper,
        satisfied: lower - slack <= inradius && inradius <= upper + slack,
    }
}

/// Whether the inscribed ball at the incentre touches every facet (within
/// `tol`, an absolute distance). A positive answer is cross-checked against
/// `In = n·vol/per`.
pub fn is_circumscribed(body: &Body, tol: f64) -> Result<bool> {
    let r = inradius(body);
    let x = body.chebyshev_center();
    let all_touch = body
        .system()
        .halfspaces
        .iter()
        .all(|hs| hs.distance(x) - r <= tol);
    if all_touch {
        let report = heron_bounds(body);
        let gap = (report.upper - r).abs();
        if gap > tol::REPORT * r.max(1.0) {
            return Err(Error::DegenerateNumerics(format!(
                "ball touches every facet but |In − n·vol/per| = {gap:e}"
            )));
        }
    }
    Ok(all_touch)
}

/// H-representation of `[0,1] × [0,K]^{n−1}`.
pub fn pancake_family(n: usize, k: f64) -> Result<HalfspaceSystem> {
    if n < 2 || !(k >= 1.0) || !k.is_finite() {
        return Err(Error::BadParameter(format!(
            "pancake needs n ≥ 2 and finite K ≥ 1 (got n = {n}, K = {k})"
        )));
    }
    let lo = vec![0.0; n];
    let mut hi = vec![k; n];
    hi[0] = 1.0;
    Ok(HalfspaceSystem::axis_box(&lo, &hi))
}

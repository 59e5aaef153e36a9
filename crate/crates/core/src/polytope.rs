//! H- and V-representations of convex polytopes and the conversions between
//! them.
//!
//! A [`HalfspaceSystem`] is the raw user-facing form. [`validate_body`] checks
//! it is a bounded region with interior and produces a [`Body`], which caches
//! the vertex set, the minimal (facet-defining) halfspaces and the
//! vertex/facet incidence that every metric downstream relies on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Combinations};
use crate::lp::{self, LpOutcome};
use crate::tol;

/// A point or direction in R^n.
pub type Vector = Vec<f64>;

/// The closed halfspace `{x : normal · x ≤ offset}`. Normals are kept
/// unnormalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    #[serde(rename = "a")]
    pub normal: Vector,
    #[serde(rename = "b")]
    pub offset: f64,
}

impl Halfspace {
    pub fn new(normal: Vector, offset: f64) -> Self {
        Halfspace { normal, offset }
    }

    pub fn norm(&self) -> f64 {
        linalg::norm(&self.normal)
    }

    /// `offset − normal · x`; non-negative inside.
    pub fn slack(&self, x: &[f64]) -> f64 {
        self.offset - linalg::dot(&self.normal, x)
    }

    /// Signed Euclidean distance from `x` to the bounding hyperplane,
    /// positive inside.
    pub fn distance(&self, x: &[f64]) -> f64 {
        self.slack(x) / self.norm()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfspaceSystem {
    pub dim: usize,
    pub halfspaces: Vec<Halfspace>,
}

impl HalfspaceSystem {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>) -> Self {
        HalfspaceSystem { dim, halfspaces }
    }

    /// The axis-aligned box `∏ [lo_i, hi_i]`.
    pub fn axis_box(lo: &[f64], hi: &[f64]) -> Self {
        let dim = lo.len();
        let mut hs = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut a = vec![0.0; dim];
            a[i] = -1.0;
            hs.push(Halfspace::new(a.clone(), -lo[i]));
            a[i] = 1.0;
            hs.push(Halfspace::new(a, hi[i]));
        }
        HalfspaceSystem::new(dim, hs)
    }

    /// Same normals, offsets moved inward by `eps` in Euclidean distance.
    pub fn offset_inward(&self, eps: f64) -> Self {
        let halfspaces = self
            .halfspaces
            .iter()
            .map(|h| Halfspace::new(h.normal.clone(), h.offset - eps * h.norm()))
            .collect();
        HalfspaceSystem::new(self.dim, halfspaces)
    }

    /// Image under `x ↦ center + lambda (x − center)`.
    pub fn scale_about(&self, center: &[f64], lambda: f64) -> Result<Self> {
        check_dim(self.dim, center.len())?;
        if !(lambda >= 0.0) {
            return Err(Error::BadParameter(format!("scale factor {lambda} < 0")));
        }
        let halfspaces = self
            .halfspaces
            .iter()
            .map(|h| {
                let ac = linalg::dot(&h.normal, center);
                Halfspace::new(h.normal.clone(), lambda * h.offset + (1.0 - lambda) * ac)
            })
            .collect();
        Ok(HalfspaceSystem::new(self.dim, halfspaces))
    }

    fn lp_rows(&self) -> (Vec<Vec<f64>>, Vec<f64>) {
        let rows = self.halfspaces.iter().map(|h| h.normal.clone()).collect();
        let rhs = self.halfspaces.iter().map(|h| h.offset).collect();
        (rows, rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexSet {
    pub dim: usize,
    pub vertices: Vec<Vector>,
}

impl VertexSet {
    pub fn new(dim: usize, vertices: Vec<Vector>) -> Self {
        VertexSet { dim, vertices }
    }

    pub fn scale_about(&self, center: &[f64], lambda: f64) -> Result<Self> {
        check_dim(self.dim, center.len())?;
        if !(lambda >= 0.0) {
            return Err(Error::BadParameter(format!("scale factor {lambda} < 0")));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .zip(center)
                    .map(|(x, c)| c + lambda * (x - c))
                    .collect()
            })
            .collect();
        Ok(VertexSet::new(self.dim, vertices))
    }

    fn refs(&self) -> Vec<&[f64]> {
        self.vertices.iter().map(|v| v.as_slice()).collect()
    }
}

/// An (n−1)-face of a polytope: its supporting halfspace and its vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    pub support: Halfspace,
    pub vertices: VertexSet,
}

/// A validated convex polytope with non-empty interior.
#[derive(Debug, Clone)]
pub struct Body {
    system: HalfspaceSystem,
    vertices: Vec<Vector>,
    incidence: Vec<Vec<usize>>,
    scale: f64,
    center: Vector,
    radius: f64,
}

impl Body {
    pub fn dim(&self) -> usize {
        self.system.dim
    }

    /// Minimal H-representation: one halfspace per facet.
    pub fn system(&self) -> &HalfspaceSystem {
        &self.system
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    /// Vertex indices lying on each facet, parallel to `system().halfspaces`.
    pub fn incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    /// Half-diagonal of the bounding box; all point/facet tolerances are
    /// multiplied by this.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Chebyshev centre found during validation.
    pub fn chebyshev_center(&self) -> &[f64] {
        &self.center
    }

    pub fn chebyshev_radius(&self) -> f64 {
        self.radius
    }

    pub fn facets(&self) -> Vec<Facet> {
        self.system
            .halfspaces
            .iter()
            .zip(&self.incidence)
            .map(|(h, inc)| Facet {
                support: h.clone(),
                vertices: VertexSet::new(
                    self.dim(),
                    inc.iter().map(|&k| self.vertices[k].clone()).collect(),
                ),
            })
            .collect()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::new(self.dim(), self.vertices.clone())
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        Err(Error::DimensionMismatch { expected, got })
    } else {
        Ok(())
    }
}

fn check_system(h: &HalfspaceSystem) -> Result<()> {
    if h.dim == 0 {
        return Err(Error::DegenerateInput(
            "dimension must be at least 1".into(),
        ));
    }
    for hs in &h.halfspaces {
        check_dim(h.dim, hs.normal.len())?;
        if hs.normal.iter().chain([&hs.offset]).any(|v| !v.is_finite()) {
            return Err(Error::DegenerateInput("non-finite coefficient".into()));
        }
        if hs.normal.iter().all(|&v| v == 0.0) {
            return Err(Error::DegenerateInput("zero normal vector".into()));
        }
    }
    Ok(())
}

/// Axis-aligned bounding box of the region via 2n linear programs.
pub(crate) fn lp_bounding_box(h: &HalfspaceSystem) -> Result<(Vector, Vector)> {
    let (rows, rhs) = h.lp_rows();
    let n = h.dim;
    let mut lo = vec![0.0; n];
    let mut hi = vec![0.0; n];
    for k in 0..n {
        for (sign, slot) in [(1.0, &mut hi[k]), (-1.0, &mut lo[k])] {
            let mut c = vec![0.0; n];
            c[k] = sign;
            match lp::maximize(&c, &rows, &rhs)? {
                LpOutcome::Optimal { value, .. } => *slot = sign * value,
                LpOutcome::Unbounded => return Err(Error::Unbounded),
                LpOutcome::Infeasible => return Err(Error::Infeasible),
            }
        }
    }
    Ok((lo, hi))
}

/// Chebyshev centre and radius: maximize r s.t. a_i·x + r‖a_i‖ ≤ b_i, r ≥ 0.
pub(crate) fn chebyshev(h: &HalfspaceSystem) -> Result<(Vector, f64)> {
    let n = h.dim;
    let mut rows: Vec<Vec<f64>> = h
        .halfspaces
        .iter()
        .map(|hs| {
            let mut row = hs.normal.clone();
            row.push(hs.norm());
            row
        })
        .collect();
    let mut rhs: Vec<f64> = h.halfspaces.iter().map(|hs| hs.offset).collect();
    let mut r_nonneg = vec![0.0; n + 1];
    r_nonneg[n] = -1.0;
    rows.push(r_nonneg);
    rhs.push(0.0);
    let mut c = vec![0.0; n + 1];
    c[n] = 1.0;
    match lp::maximize(&c, &rows, &rhs)? {
        LpOutcome::Optimal { mut point, value } => {
            point.truncate(n);
            Ok((point, value))
        }
        LpOutcome::Unbounded => Err(Error::Unbounded),
        LpOutcome::Infeasible => Err(Error::Infeasible),
    }
}

/// Checks the system describes a bounded region with non-empty interior and
/// builds its cached vertex/facet structure.
pub fn validate_body(h: &HalfspaceSystem) -> Result<Body> {
    check_system(h)?;
    let (lo, hi) = lp_bounding_box(h)?;
    let scale = 0.5 * linalg::dist(&lo, &hi);
    let (center, radius) = chebyshev(h)?;
    if !(radius > tol::POINT * scale) || scale == 0.0 {
        return Err(Error::EmptyInterior { radius });
    }
    Body::assemble(h, scale, center, radius)
}

impl Body {
    /// Builds the vertex/facet structure for a system already known to be a
    /// bounded region with the given Chebyshev centre and radius.
    pub(crate) fn assemble(
        h: &HalfspaceSystem,
        scale: f64,
        center: Vector,
        radius: f64,
    ) -> Result<Body> {
        let vertices = enumerate_vertices(h, scale)?;
        let (system, incidence) = minimal_system(h, &vertices, scale);
        if system.halfspaces.len() < h.dim + 1 {
            return Err(Error::DegenerateNumerics(format!(
                "only {} facets found",
                system.halfspaces.len()
            )));
        }
        Ok(Body {
            system,
            vertices,
            incidence,
            scale,
            center,
            radius,
        })
    }
}

/// The vertices of a validated body.
pub fn vertex_enumeration(body: &Body) -> VertexSet {
    body.vertex_set()
}

/// Exhaustive n-subset vertex enumeration.
pub(crate) fn enumerate_vertices(h: &HalfspaceSystem, scale: f64) -> Result<Vec<Vector>> {
    let n = h.dim;
    let facet_tol = tol::FACET * scale;
    let point_tol = tol::POINT * scale;
    let norms: Vec<f64> = h.halfspaces.iter().map(|hs| hs.norm()).collect();
    let mut out: Vec<Vector> = Vec::new();
    for subset in Combinations::new(h.halfspaces.len(), n) {
        let rows: Vec<&[f64]> = subset
            .iter()
            .map(|&i| h.halfspaces[i].normal.as_slice())
            .collect();
        let rhs: Vec<f64> = subset.iter().map(|&i| h.halfspaces[i].offset).collect();
        let Some(mut x) = linalg::solve(&rows, &rhs, 1e-10) else {
            continue;
        };
        let feasible = h
            .halfspaces
            .iter()
            .zip(&norms)
            .all(|(hs, &nn)| -hs.slack(&x) <= facet_tol * nn);
        if !feasible {
            continue;
        }
        // One step of iterative refinement on the defining equations.
        let resid: Vec<f64> = subset.iter().map(|&i| h.halfspaces[i].slack(&x)).collect();
        if let Some(dx) = linalg::solve(&rows, &resid, 1e-10) {
            x.iter_mut().zip(&dx).for_each(|(xi, di)| *xi += di);
        }
        let worst = subset
            .iter()
            .map(|&i| h.halfspaces[i].slack(&x).abs() / norms[i])
            .fold(0.0f64, f64::max);
        if worst > facet_tol {
            return Err(Error::DegenerateNumerics(format!(
                "vertex residual {worst:e} exceeds {facet_tol:e}"
            )));
        }
        if !out.iter().any(|v| linalg::dist(v, &x) <= point_tol) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Facet-defining halfspaces (incident vertices of affine dimension n−1),
/// deduplicated by incident vertex set, with their incidence lists.
fn minimal_system(
    h: &HalfspaceSystem,
    vertices: &[Vector],
    scale: f64,
) -> (HalfspaceSystem, Vec<Vec<usize>>) {
    let n = h.dim;
    let facet_tol = tol::FACET * scale;
    let mut kept = Vec::new();
    let mut incidence: Vec<Vec<usize>> = Vec::new();
    for hs in &h.halfspaces {
        let nn = hs.norm();
        let inc: Vec<usize> = vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| hs.slack(v).abs() <= facet_tol * nn)
            .map(|(k, _)| k)
            .collect();
        if inc.len() < n || incidence.contains(&inc) {
            continue;
        }
        let pts: Vec<&[f64]> = inc.iter().map(|&k| vertices[k].as_slice()).collect();
        if linalg::affine_dim(&pts, facet_tol) != Some(n - 1) {
            continue;
        }
        kept.push(hs.clone());
        incidence.push(inc);
    }
    (HalfspaceSystem::new(n, kept), incidence)
}

/// Drops every halfspace that does not support a facet.
pub fn remove_redundant_halfspaces(h: &HalfspaceSystem) -> Result<HalfspaceSystem> {
    Ok(validate_body(h)?.system)
}

/// `a·x ≤ b + slack‖a‖` for every halfspace.
pub fn contains_point(h: &HalfspaceSystem, x: &[f64], slack: f64) -> Result<bool> {
    check_dim(h.dim, x.len())?;
    Ok(h.halfspaces
        .iter()
        .all(|hs| -hs.slack(x) <= slack * hs.norm()))
}

/// Minimal H-representation of the convex hull of `v`, by brute force over
/// n-subsets of points.
pub fn convex_hull(v: &VertexSet) -> Result<HalfspaceSystem> {
    let d = v.dim;
    if d == 0 {
        return Err(Error::DegenerateInput(
            "dimension must be at least 1".into(),
        ));
    }
    for p in &v.vertices {
        check_dim(d, p.len())?;
    }
    let pts = v.refs();
    let c = linalg::centroid(pts.iter().copied(), d);
    let radius = pts
        .iter()
        .map(|p| linalg::dist(p, &c))
        .fold(0.0f64, f64::max);
    if pts.len() < d + 1 || radius == 0.0 {
        return Err(Error::DegenerateInput("too few distinct points".into()));
    }
    if linalg::affine_dim(&pts, tol::POINT * radius) != Some(d) {
        return Err(Error::DegenerateInput(
            "points are affinely dependent".into(),
        ));
    }
    let tol = tol::FACET * radius;
    let mut faces: Vec<(Halfspace, Vec<usize>)> = Vec::new();
    for subset in Combinations::new(pts.len(), d) {
        let sub: Vec<&[f64]> = subset.iter().map(|&i| pts[i]).collect();
        let mut normal = linalg::hyperplane_normal(&sub);
        let nn = linalg::norm(&normal);
        if nn <= 1e-12 * radius.powi(d as i32 - 1) {
            continue;
        }
        normal.iter_mut().for_each(|x| *x /= nn);
        let mut offset = linalg::dot(&normal, sub[0]);
        if linalg::dot(&normal, &c) > offset {
            normal.iter_mut().for_each(|x| *x = -*x);
            offset = -offset;
        }
        let hs = Halfspace::new(normal, offset);
        if pts.iter().any(|p| hs.slack(p) < -tol) {
            continue;
        }
        let inc: Vec<usize> = (0..pts.len())
            .filter(|&k| hs.slack(pts[k]).abs() <= tol)
            .collect();
        if faces.iter().any(|(_, other)| *other == inc) {
            continue;
        }
        let inc_pts: Vec<&[f64]> = inc.iter().map(|&k| pts[k]).collect();
        if linalg::affine_dim(&inc_pts, tol) != Some(d - 1) {
            continue;
        }
        faces.push((hs, inc));
    }
    Ok(HalfspaceSystem::new(
        d,
        faces.into_iter().map(|(h, _)| h).collect(),
    ))
}

//! Named test bodies and the seeded random polytope generator.

use rand::Rng;

use crate::linalg;
use crate::polytope::{convex_hull, Halfspace, HalfspaceSystem, VertexSet};

/// `[0,1]^n`.
pub fn unit_cube(n: usize) -> HalfspaceSystem {
    HalfspaceSystem::axis_box(&vec![0.0; n], &vec![1.0; n])
}

/// `{x_i ≥ 0, Σ x_i ≤ 1}`; in n = 2 the right triangle (0,0),(1,0),(0,1).
pub fn standard_simplex(n: usize) -> HalfspaceSystem {
    let mut hs: Vec<Halfspace> = (0..n)
        .map(|i| {
            let mut a = vec![0.0; n];
            a[i] = -1.0;
            Halfspace::new(a, 0.0)
        })
        .collect();
    hs.push(Halfspace::new(vec![1.0; n], 1.0));
    HalfspaceSystem::new(n, hs)
}

/// Regular simplex with unit edge length, built as the hull of the standard
/// basis of R^{n+1} projected to an orthonormal frame of `Σ x = 1`.
pub fn regular_simplex(n: usize) -> HalfspaceSystem {
    let ones = vec![1.0; n + 1];
    let frame = linalg::orthonormal_complement(&ones);
    let vertices = (0..=n)
        .map(|i| {
            frame
                .iter()
                .map(|b| b[i] / std::f64::consts::SQRT_2)
                .collect()
        })
        .collect();
    convex_hull(&VertexSet::new(n, vertices)).expect("regular simplex is full-dimensional")
}

/// A random bounded body: the box `[-1,1]^n` cut by `k ∈ [n+1, 3n]`
/// halfspaces tangent to a random ellipsoid. Each halfspace is rescaled by a
/// random positive factor so that normals are not unit length.
pub fn random_polytope<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HalfspaceSystem {
    let mut system = HalfspaceSystem::axis_box(&vec![-1.0; n], &vec![1.0; n]);
    // Ellipsoid {A y : |y| ≤ 1} with A = random rotation-ish matrix times axes.
    let axes: Vec<f64> = (0..n).map(|_| rng.random_range(0.3..1.0)).collect();
    let mixing: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let base = if i == j { 1.0 } else { 0.0 };
                    base + rng.random_range(-0.3..0.3)
                })
                .collect()
        })
        .collect();
    let a_mat: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| mixing[i][j] * axes[j]).collect())
        .collect();
    let center: Vec<f64> = (0..n).map(|_| rng.random_range(-0.1..0.1)).collect();
    let k = rng.random_range(n + 1..=3 * n);
    for _ in 0..k {
        let mut u: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
        let nu = linalg::norm(&u);
        u.iter_mut().for_each(|v| *v /= nu);
        // support function h(u) = |Aᵀu| + u·c
        let atu: Vec<f64> = (0..n)
            .map(|j| (0..n).map(|i| a_mat[i][j] * u[i]).sum())
            .collect();
        let support = linalg::norm(&atu) + linalg::dot(&u, &center);
        let s = rng.random_range(0.5..2.0);
        system.halfspaces.push(Halfspace::new(
            u.iter().map(|v| v * s).collect(),
            support * s,
        ));
    }
    system
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box–Muller
    let u1: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

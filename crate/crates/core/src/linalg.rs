//! Small dense helpers on `Vec<f64>` / `&[f64]` for desk-scale dimensions.

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn centroid<'a, I>(points: I, dim: usize) -> Vec<f64>
where
    I: IntoIterator<Item = &'a [f64]>,
{
    let mut c = vec![0.0; dim];
    let mut count = 0usize;
    for p in points {
        for (ci, pi) in c.iter_mut().zip(p) {
            *ci += pi;
        }
        count += 1;
    }
    if count > 0 {
        c.iter_mut().for_each(|v| *v /= count as f64);
    }
    c
}

/// Solves the square system `rows · x = rhs` by Gaussian elimination with
/// partial pivoting. Returns `None` when a pivot falls below `rel_tol` times
/// the largest entry of its column block.
pub fn solve(rows: &[&[f64]], rhs: &[f64], rel_tol: f64) -> Option<Vec<f64>> {
    let n = rows.len();
    let mut m: Vec<Vec<f64>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut row = r.to_vec();
            row.push(b);
            row
        })
        .collect();
    let scale = m
        .iter()
        .flat_map(|r| r[..n].iter())
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    if scale == 0.0 {
        return None;
    }
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() <= rel_tol * scale {
            return None;
        }
        m.swap(col, pivot);
        for i in col + 1..n {
            let f = m[i][col] / m[col][col];
            if f != 0.0 {
                for k in col..=n {
                    m[i][k] -= f * m[col][k];
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| m[i][k] * x[k]).sum();
        x[i] = (m[i][n] - s) / m[i][i];
    }
    Some(x)
}

/// Determinant by elimination.
pub fn det(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    if n == 0 {
        return 1.0;
    }
    let mut m = rows.to_vec();
    let mut d = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(col, pivot);
            d = -d;
        }
        d *= m[col][col];
        for i in col + 1..n {
            let f = m[i][col] / m[col][col];
            for k in col..n {
                m[i][k] -= f * m[col][k];
            }
        }
    }
    d
}

/// Rank of a set of row vectors, treating entries below `tol` (absolute,
/// after elimination) as zero.
pub fn rank(mut rows: Vec<Vec<f64>>, tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        let pivot = (r..rows.len())
            .max_by(|&i, &j| rows[i][col].abs().total_cmp(&rows[j][col].abs()))
            .unwrap();
        if rows[pivot][col].abs() <= tol {
            continue;
        }
        rows.swap(r, pivot);
        for i in r + 1..rows.len() {
            let f = rows[i][col] / rows[r][col];
            for k in col..cols {
                rows[i][k] -= f * rows[r][k];
            }
        }
        r += 1;
    }
    r
}

/// Affine dimension of a point set (`-1` encoded as `None` for the empty set).
pub fn affine_dim(points: &[&[f64]], tol: f64) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Vec<f64>> = rest.iter().map(|p| sub(p, first)).collect();
    Some(rank(diffs, tol))
}

/// Normal of the hyperplane through `points` (exactly `d` points in R^d),
/// via signed cofactors of the difference matrix. Unnormalized; the zero
/// vector signals affinely dependent points.
pub fn hyperplane_normal(points: &[&[f64]]) -> Vec<f64> {
    let d = points[0].len();
    let diffs: Vec<Vec<f64>> = points[1..].iter().map(|p| sub(p, points[0])).collect();
    (0..d)
        .map(|k| {
            let minor: Vec<Vec<f64>> = diffs
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != k)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * det(&minor)
        })
        .collect()
}

/// Orthonormal basis (d − 1 vectors) of the complement of `normal` in R^d.
pub fn orthonormal_complement(normal: &[f64]) -> Vec<Vec<f64>> {
    let d = normal.len();
    let nn = norm(normal);
    let mut basis: Vec<Vec<f64>> = vec![normal.iter().map(|v| v / nn).collect()];
    // Seed with coordinate axes ordered by how orthogonal they are to the normal.
    let mut axes: Vec<usize> = (0..d).collect();
    axes.sort_by(|&i, &j| normal[i].abs().total_cmp(&normal[j].abs()));
    for k in axes {
        if basis.len() == d {
            break;
        }
        let mut v = vec![0.0; d];
        v[k] = 1.0;
        for _ in 0..2 {
            for b in &basis {
                let p = dot(&v, b);
                v.iter_mut().zip(b).for_each(|(vi, bi)| *vi -= p * bi);
            }
        }
        let nv = norm(&v);
        if nv > 1e-8 {
            v.iter_mut().for_each(|x| *x /= nv);
            basis.push(v);
        }
    }
    basis.remove(0);
    basis
}

/// Iterator over all `k`-subsets of `0..n` in lexicographic order.
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

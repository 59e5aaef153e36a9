//! Dense two-phase tableau simplex with Bland's anti-cycling rule.
//!
//! Solves `maximize c·x subject to A x ≤ b` over free variables `x`. Sizes
//! here are a few dozen rows at most, so the tableau is rebuilt per call and
//! reduced costs are recomputed on every pivot.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-11;
const COST_EPS: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { point: Vec<f64>, value: f64 },
    Unbounded,
    Infeasible,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<(Vec<f64>, f64)> {
        match self {
            LpOutcome::Optimal { point, value } => Some((point, value)),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cols: usize,
    pivots: usize,
    cap: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        self.rows[r].iter_mut().for_each(|v| *v /= p);
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                row.iter_mut()
                    .zip(&pivot_row)
                    .for_each(|(v, pv)| *v -= f * pv);
                row[c] = 0.0;
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Runs simplex iterations for `cost` restricted to columns `< allowed`.
    /// Returns `false` if the objective is unbounded.
    fn optimize(&mut self, cost: &[f64], allowed: usize) -> Result<bool> {
        loop {
            if self.pivots > self.cap {
                return Err(Error::SolverFailure {
                    iterations: self.cap,
                });
            }
            // Bland: lowest-index improving column.
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let z: f64 = self
                    .rows
                    .iter()
                    .zip(&self.basis)
                    .map(|(row, &b)| cost[b] * row[j])
                    .sum();
                cost[j] - z > COST_EPS
            });
            let Some(col) = entering else {
                return Ok(true);
            };
            let mut best: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][col];
                if a <= PIVOT_EPS {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br - 1e-13
                            || (ratio <= br + 1e-13 && self.basis[i] < self.basis[bi])
                        {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            match best {
                None => return Ok(false),
                Some((r, _)) => self.pivot(r, col),
            }
        }
    }
}

/// Maximizes `objective · x` subject to `rows[i] · x ≤ rhs[i]`.
pub fn maximize(objective: &[f64], rows: &[Vec<f64>], rhs: &[f64]) -> Result<LpOutcome> {
    let d = objective.len();
    let mut a: Vec<Vec<f64>> = Vec::with_capacity(rows.len());
    let mut b: Vec<f64> = Vec::with_capacity(rows.len());
    for (row, &bi) in rows.iter().zip(rhs) {
        if row.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: row.len(),
            });
        }
        let s = row.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if s == 0.0 {
            if bi < -PIVOT_EPS {
                return Ok(LpOutcome::Infeasible);
            }
            continue;
        }
        a.push(row.iter().map(|v| v / s).collect());
        b.push(bi / s);
    }
    let m = a.len();
    let n_real = 2 * d + m;
    let n_art = b.iter().filter(|&&v| v < 0.0).count();
    let cols = n_real + n_art;

    let mut tab_rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art = n_real;
    for i in 0..m {
        let mut row = vec![0.0; cols + 1];
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..d {
            row[j] = sign * a[i][j];
            row[d + j] = -sign * a[i][j];
        }
        row[2 * d + i] = sign;
        row[cols] = sign * b[i];
        if b[i] < 0.0 {
            row[art] = 1.0;
            basis.push(art);
            art += 1;
        } else {
            basis.push(2 * d + i);
        }
        tab_rows.push(row);
    }
    let mut tab = Tableau {
        rows: tab_rows,
        basis,
        cols,
        pivots: 0,
        cap: 10 * (m + n_real).max(1),
    };

    if n_art > 0 {
        let mut cost = vec![0.0; cols];
        cost[n_real..].iter_mut().for_each(|c| *c = -1.0);
        tab.optimize(&cost, cols)?;
        let infeas: f64 = (0..m)
            .filter(|&i| tab.basis[i] >= n_real)
            .map(|i| tab.rhs(i))
            .sum();
        let bscale = 1.0 + b.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if infeas > 1e-9 * bscale {
            return Ok(LpOutcome::Infeasible);
        }
        // Drive remaining (zero-valued) artificials out of the basis.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= n_real {
                match (0..n_real).find(|&j| tab.rows[i][j].abs() > 1e-9) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut cost = vec![0.0; cols];
    for j in 0..d {
        cost[j] = objective[j];
        cost[d + j] = -objective[j];
    }
    if !tab.optimize(&cost, n_real)? {
        return Ok(LpOutcome::Unbounded);
    }
    let mut x = vec![0.0; d];
    for (i, &bcol) in tab.basis.iter().enumerate() {
        if bcol < d {
            x[bcol] += tab.rhs(i);
        } else if bcol < 2 * d {
            x[bcol - d] -= tab.rhs(i);
        }
    }
    let value = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpOutcome::Optimal { point: x, value })
}

use serde::{Deserialize, Serialize};

use super::ifs::{image_polytope, validate_ifs, ProjectiveIFS};
use crate::error::{Error, Result};
use crate::metrics;
use crate::polytope::{convex_hull, validate_body, VertexSet};

/// One complementary component `N_{w_1}⋯N_{w_m}·∇` of the attractor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoleRecord {
    /// Letter indices; the matrix for `word[0]` is applied last.
    pub word: Vec<usize>,
    pub seed: usize,
    pub body: VertexSet,
    pub volume: f64,
    pub inradius: f64,
}

impl HoleRecord {
    pub fn depth(&self) -> usize {
        self.word.len()
    }

    fn from_body(word: Vec<usize>, seed: usize, body: VertexSet) -> Result<Self> {
        let b = validate_body(&convex_hull(&body)?)?;
        let (volume, _) = metrics::measures(&b);
        let inradius = metrics::inradius(&b);
        Ok(HoleRecord {
            word,
            seed,
            body,
            volume,
            inradius,
        })
    }
}

/// Per-depth sums and their running totals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesTable {
    pub s: f64,
    pub per_depth: Vec<f64>,
    pub cumulative: Vec<f64>,
}

impl SeriesTable {
    pub(crate) fn from_per_depth(s: f64, per_depth: Vec<f64>) -> Self {
        let cumulative = per_depth
            .iter()
            .scan(0.0, |acc, v| {
                *acc += v;
                Some(*acc)
            })
            .collect();
        SeriesTable {
            s,
            per_depth,
            cumulative,
        }
    }
}

/// All holes `N_w·∇` for words of length ≤ `max_depth`, ordered by depth,
/// then lexicographically by word, then by seed index.
pub fn generate_holes(
    ifs: &ProjectiveIFS,
    seed_holes: &[VertexSet],
    max_depth: usize,
) -> Result<Vec<HoleRecord>> {
    let report = validate_ifs(ifs, seed_holes)?;
    if !report.is_valid() {
        return Err(Error::InvalidIfs(Box::new(report)));
    }
    let mut all: Vec<HoleRecord> = seed_holes
        .iter()
        .enumerate()
        .map(|(k, h)| HoleRecord::from_body(Vec::new(), k, h.clone()))
        .collect::<Result<_>>()?;
    let mut level_start = 0;
    for _ in 0..max_depth {
        let level_end = all.len();
        let mut next = Vec::with_capacity((level_end - level_start) * ifs.len());
        for (j, m) in ifs.matrices.iter().enumerate() {
            for parent in &all[level_start..level_end] {
                let body = image_polytope(m, &parent.body)?;
                let mut word = Vec::with_capacity(parent.word.len() + 1);
                word.push(j);
                word.extend_from_slice(&parent.word);
                next.push(HoleRecord::from_body(word, parent.seed, body)?);
            }
        }
        level_start = level_end;
        all.extend(next);
    }
    Ok(all)
}

/// `T_m(s) = Σ_{depth m} vol·In^{s−n}` for `m = 0..=max depth present`.
pub fn hole_series(holes: &[HoleRecord], s: f64, n: usize) -> SeriesTable {
    let depth = holes.iter().map(|h| h.depth()).max().map_or(0, |d| d + 1);
    let mut per_depth = vec![0.0; depth];
    for h in holes {
        per_depth[h.depth()] += h.volume * h.inradius.powf(s - n as f64);
    }
    SeriesTable::from_per_depth(s, per_depth)
}

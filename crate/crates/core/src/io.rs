//! JSON input schemas for polytopes and projective families.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::{convex_hull, HalfspaceSystem, VertexSet};
use crate::projective::{complement_intervals, ProjectiveIFS};

/// `{"dim", "halfspaces": [{"a", "b"}]}` or `{"dim", "vertices": [[…]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolytopeInput {
    Halfspaces(HalfspaceSystem),
    Vertices(VertexSet),
}

impl PolytopeInput {
    /// H-representation, taking the hull of a vertex list if necessary.
    pub fn into_system(self) -> Result<HalfspaceSystem> {
        match self {
            PolytopeInput::Halfspaces(h) => Ok(h),
            PolytopeInput::Vertices(v) => convex_hull(&v),
        }
    }
}

/// A hole vertex: a coordinate list, or a bare number when n = 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexInput {
    Scalar(f64),
    Coords(Vec<f64>),
}

impl VertexInput {
    fn into_coords(self) -> Vec<f64> {
        match self {
            VertexInput::Scalar(v) => vec![v],
            VertexInput::Coords(c) => c,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IfsInput {
    pub n: usize,
    pub alphabet: Vec<String>,
    pub matrices: BTreeMap<String, Vec<Vec<f64>>>,
    #[serde(default)]
    pub seed_holes: Vec<Vec<VertexInput>>,
    #[serde(default = "default_true")]
    pub assume_measure_zero: bool,
}

fn default_true() -> bool {
    true
}

impl IfsInput {
    /// The family in alphabet order and its seed holes. For n = 1 with no
    /// holes listed, the gaps between the images of `[0,1]` are used.
    pub fn into_parts(self) -> Result<(ProjectiveIFS, Vec<VertexSet>)> {
        let mut rows = Vec::with_capacity(self.alphabet.len());
        for label in &self.alphabet {
            let m = self
                .matrices
                .get(label)
                .ok_or_else(|| Error::BadParameter(format!("no matrix for letter {label:?}")))?;
            rows.push(m.clone());
        }
        let mut ifs = ProjectiveIFS::from_rows(self.n, &rows)?;
        ifs.alphabet = self.alphabet;
        ifs.assume_measure_zero = self.assume_measure_zero;
        let holes = if self.seed_holes.is_empty() && self.n == 1 {
            complement_intervals(&ifs)?
        } else {
            self.seed_holes
                .into_iter()
                .map(|h| {
                    VertexSet::new(
                        self.n,
                        h.into_iter().map(VertexInput::into_coords).collect(),
                    )
                })
                .collect()
        };
        Ok((ifs, holes))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_both_polytope_forms() {
        let h: PolytopeInput = serde_json::from_str(
            r#"{"dim": 1, "halfspaces": [{"a": [1.0], "b": 1.0}, {"a": [-1.0], "b": 0.0}]}"#,
        )
        .unwrap();
        assert!(matches!(h, PolytopeInput::Halfspaces(_)));
        let v: PolytopeInput =
            serde_json::from_str(r#"{"dim": 2, "vertices": [[0,0],[1,0],[0,1]]}"#).unwrap();
        assert_eq!(v.into_system().unwrap().halfspaces.len(), 3);
    }

    #[test]
    fn parse_ifs() {
        let text = r#"{
            "n": 1, "alphabet": ["a", "b"],
            "matrices": {"a": [[3, 2], [0, 1]], "b": [[1, 0], [2, 3]]},
            "assume_measure_zero": true
        }"#;
        let input: IfsInput = serde_json::from_str(text).unwrap();
        let (ifs, holes) = input.into_parts().unwrap();
        assert_eq!(ifs.alphabet, vec!["a", "b"]);
        assert_eq!(holes.len(), 1);

        let text = r#"{"n": 1, "alphabet": ["a"], "matrices": {"a": [[2, 1], [0, 1]]},
                       "seed_holes": [[0.6, 0.7]]}"#;
        let (_, holes) = serde_json::from_str::<IfsInput>(text)
            .unwrap()
            .into_parts()
            .unwrap();
        assert_eq!(holes[0].vertices, vec![vec![0.6], vec![0.7]]);

        let missing = r#"{"n": 1, "alphabet": ["a"], "matrices": {}}"#;
        assert!(serde_json::from_str::<IfsInput>(missing)
            .unwrap()
            .into_parts()
            .is_err());
    }
}

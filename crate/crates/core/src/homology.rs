//! The abelianized map induced on first homology by a checkerboard state
//! surface, and the determinant bound for dominant integer matrices.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::state::BandStep;
use crate::stategraph::{InnerCycle, ReducedGraph, StateGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedVertexLabeling {
    pub signs: Vec<Sign>,
}

/// Proper 2-colouring with the lowest vertex `+`.
pub fn vertex_signs(graph: &StateGraph) -> Result<SignedVertexLabeling> {
    graph.require_connected()?;
    let n = graph.vertex_count;
    let mut adj = vec![Vec::new(); n];
    for e in &graph.edges {
        adj[e.endpoints.0].push(e.endpoints.1);
        adj[e.endpoints.1].push(e.endpoints.0);
    }
    let mut sign: Vec<Option<Sign>> = vec![None; n];
    sign[0] = Some(Sign::Plus);
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        let sv = sign[v].expect("visited");
        let flipped = if sv == Sign::Plus { Sign::Minus } else { Sign::Plus };
        for &w in &adj[v] {
            match sign[w] {
                None => {
                    sign[w] = Some(flipped);
                    queue.push_back(w);
                }
                Some(sw) if sw == sv => return Err(Error::NotBipartite { vertex: v.min(w) }),
                Some(_) => {}
            }
        }
    }
    Ok(SignedVertexLabeling { signs: sign.into_iter().map(|s| s.expect("connected")).collect() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyMatrix {
    /// Column `i` is the image of the `i`-th generator.
    pub entries: IntMatrix,
    /// Inner cycle behind each index, oriented counterclockwise.
    pub cycle_index: Vec<InnerCycle>,
    /// Diagram face standing for the unbounded region, if the graph has one.
    pub outer_face: Option<usize>,
}

impl HomologyMatrix {
    pub fn size(&self) -> usize {
        self.cycle_index.len()
    }

    pub fn determinant(&self) -> BigInt {
        self.entries.determinant().expect("square by construction")
    }

    /// Violated properties, as readable messages; empty when all hold.
    pub fn check_invariants(&self) -> Vec<String> {
        let a = &self.entries;
        let n = self.size();
        let mut bad = Vec::new();
        for i in 0..n {
            let d = a[(i, i)];
            if d < 2 {
                bad.push(format!("a[{i}][{i}] = {d} < 2"));
            }
            if 2 * d != self.cycle_index[i].len() as i64 {
                bad.push(format!("a[{i}][{i}] = {d} but the cycle has length {}", self.cycle_index[i].len()));
            }
            let row: i64 = (0..n).filter(|&j| j != i).map(|j| a[(i, j)].abs()).sum();
            let col: i64 = (0..n).filter(|&j| j != i).map(|j| a[(j, i)].abs()).sum();
            if row > d {
                bad.push(format!("row {i}: off-diagonal sum {row} exceeds {d}"));
            }
            if col > d {
                bad.push(format!("column {i}: off-diagonal sum {col} exceeds {d}"));
            }
            if let Some(j) = (0..n).find(|&j| j != i && a[(i, j)] > 0) {
                bad.push(format!("a[{i}][{j}] = {} is positive", a[(i, j)]));
            }
        }
        if n > 0 && self.determinant().abs() == BigInt::from(1) {
            bad.push("matrix is unimodular".into());
        }
        bad
    }
}

/// Build the matrix for an all-A or all-B, 2-connected, bipartite reduced graph.
pub fn homology_matrix(graph: &ReducedGraph) -> Result<HomologyMatrix> {
    graph.require_connected()?;
    if graph.is_tree()? {
        return Ok(HomologyMatrix { entries: IntMatrix::zeros(0, 0), cycle_index: Vec::new(), outer_face: None });
    }
    if !graph.is_uniform() {
        return Err(Error::MixedLabels);
    }
    if let Some(&vertex) = graph.cut_vertices().first() {
        return Err(Error::CutVertex { vertex });
    }
    let signs = vertex_signs(graph)?.signs;
    let outer = graph.outer_walk();
    let faces: Vec<usize> = (0..graph.face_walks.len())
        .filter(|&f| Some(f) != outer && !graph.face_walks[f].steps.is_empty())
        .collect();
    let n = faces.len();
    // counterclockwise = reverse of the traced order
    let ccw: Vec<Vec<BandStep>> = faces
        .iter()
        .map(|&f| {
            graph.face_walks[f].steps.iter().rev().map(|s| BandStep { band: s.band, from: s.to, to: s.from }).collect()
        })
        .collect();
    let index_of_face = |f: usize| faces.iter().position(|&g| g == f);
    let across = |f: usize, band: usize| -> Option<usize> {
        (0..graph.face_walks.len()).find(|&g| g != f && graph.face_walks[g].steps.iter().any(|s| s.band == band))
    };
    let mut entries = IntMatrix::zeros(n, n);
    for (i, steps) in ccw.iter().enumerate() {
        for s in steps {
            if signs[s.from] == Sign::Plus {
                entries[(i, i)] += 1;
            } else if let Some(j) = across(faces[i], s.band).and_then(index_of_face) {
                entries[(j, i)] -= 1;
            }
        }
    }
    let cycle_index = ccw
        .iter()
        .zip(&faces)
        .map(|(steps, &f)| {
            let walk = &graph.face_walks[f];
            InnerCycle {
                edges: steps.iter().map(|s| s.band).collect(),
                vertices: steps.iter().map(|s| s.from).collect(),
                region: walk.region,
                face: walk.face,
                label_sequence: steps.iter().map(|s| graph.edge(s.band).expect("kept edge").label).collect(),
            }
        })
        .collect();
    Ok(HomologyMatrix { entries, cycle_index, outer_face: outer.map(|f| graph.face_walks[f].face) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominanceReport {
    pub hypotheses_hold: bool,
    #[serde(serialize_with = "crate::linalg::serialize_bigint")]
    pub determinant: BigInt,
    pub conclusion_verified: bool,
}

/// `a_ii >= max(2, sum_{j != i} |a_ij|)` for every row of a nonempty square matrix.
pub fn dominance_hypothesis(m: &IntMatrix) -> bool {
    m.is_square()
        && m.rows() > 0
        && (0..m.rows()).all(|i| {
            let off: i64 = (0..m.cols()).filter(|&j| j != i).map(|j| m[(i, j)].abs()).sum();
            m[(i, i)] >= off.max(2)
        })
}

pub fn check_dominant_det(m: &IntMatrix) -> Result<DominanceReport> {
    let determinant = m.determinant()?;
    let hypotheses_hold = dominance_hypothesis(m);
    let conclusion_verified = !hypotheses_hold || determinant.is_zero() || determinant >= BigInt::from(2);
    Ok(DominanceReport { hypotheses_hold, determinant, conclusion_verified })
}

/// The family showing the bound `det >= 2` is attained for every size.
pub fn sharp_family(n: usize) -> Result<IntMatrix> {
    if n < 1 {
        return Err(Error::InvalidSize(n));
    }
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = 2;
    }
    if n >= 2 {
        m[(0, 1)] = 2;
        m[(1, 0)] = 1;
    }
    if n >= 3 {
        m[(1, 2)] = -1;
        m[(2, 0)] = 1;
    }
    for i in 2..n {
        if i + 1 < n {
            m[(i, i + 1)] = 1;
        }
        if i >= 3 {
            m[(i, i - 1)] = 1;
        }
    }
    Ok(m)
}

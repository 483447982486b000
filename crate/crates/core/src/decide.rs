//! Fiberedness verdicts with certificates, and whole-diagram censuses.

use std::fmt;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::classify;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::state::{smooth, surface_invariants, KauffmanState, SmoothedMap};
use crate::stategraph::{build_graph, reduce, InnerCycle, ReducedGraph, StateGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Fibered,
    NotFibered,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Fibered => "FIBERED",
            Verdict::NotFibered => "NOT_FIBERED",
            Verdict::Unknown => "UNKNOWN",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StateClass {
    pub alternating: bool,
    pub homogeneous: bool,
}

impl StateClass {
    pub fn is_empty(&self) -> bool {
        !self.alternating && !self.homogeneous
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.alternating {
            out.push("alternating");
        }
        if self.homogeneous {
            out.push("homogeneous");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Certificate {
    /// Edges of the reduced graph, which form a spanning tree.
    SpanningTree { edges: Vec<usize> },
    /// A cycle in the reduced graph; `vertices[k]` starts `edges[k]`.
    NotATree { edges: Vec<usize>, vertices: Vec<usize>, class: StateClass },
    MixedParallel { first: usize, second: usize },
    AlternatingInnerCycle { cycle: InnerCycle },
    None,
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::SpanningTree { .. } => "SPANNING_TREE",
            Certificate::NotATree { .. } => "NOT_A_TREE",
            Certificate::MixedParallel { .. } => "MIXED_PARALLEL",
            Certificate::AlternatingInnerCycle { .. } => "ALTERNATING_INNER_CYCLE",
            Certificate::None => "NONE",
        }
    }
}

/// Which step of the procedure produced the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DecisionPath {
    ReducedTree,
    AlternatingTheorem,
    HomogeneousTheorem,
    MixedParallel,
    AlternatingInnerCycle,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberVerdict {
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub state_class: StateClass,
    pub path: DecisionPath,
    /// Tree criterion that applies to the state as an equivalence, if any.
    pub theorem: Option<DecisionPath>,
}

/// Everything computed on the way to a verdict.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub smoothed: SmoothedMap,
    pub graph: StateGraph,
    pub reduced: ReducedGraph,
    pub verdict: FiberVerdict,
}

pub fn decide_fiber(diagram: &Diagram, state: &KauffmanState) -> Result<FiberVerdict> {
    Ok(analyse(diagram, state)?.verdict)
}

/// Tree test first; among non-trees, the duplicated-edge and inner-cycle
/// certificates are preferred to the classification-based one.
pub fn analyse(diagram: &Diagram, state: &KauffmanState) -> Result<Analysis> {
    if !diagram.is_connected() {
        return Err(Error::Disconnected);
    }
    let smoothed = smooth(diagram, state)?;
    let graph = build_graph(&smoothed);
    let reduced = reduce(&graph);
    let report = classify(&smoothed);
    let class = StateClass { alternating: report.alternating, homogeneous: report.homogeneous };
    let theorem = if class.alternating {
        Some(DecisionPath::AlternatingTheorem)
    } else if class.homogeneous {
        Some(DecisionPath::HomogeneousTheorem)
    } else {
        None
    };
    let verdict = if reduced.is_tree()? {
        let edges = reduced.edges.iter().map(|e| e.id).collect();
        FiberVerdict {
            verdict: Verdict::Fibered,
            certificate: Certificate::SpanningTree { edges },
            state_class: class,
            path: DecisionPath::ReducedTree,
            theorem,
        }
    } else if let Some(&(first, second)) = graph.mixed_parallel_pairs().first() {
        FiberVerdict {
            verdict: Verdict::NotFibered,
            certificate: Certificate::MixedParallel { first, second },
            state_class: class,
            path: DecisionPath::MixedParallel,
            theorem,
        }
    } else if let Some(cycle) = graph.find_alternating_inner_cycle() {
        FiberVerdict {
            verdict: Verdict::NotFibered,
            certificate: Certificate::AlternatingInnerCycle { cycle },
            state_class: class,
            path: DecisionPath::AlternatingInnerCycle,
            theorem,
        }
    } else if let Some(path) = theorem {
        let (edges, vertices) = reduced.find_cycle().expect("a connected non-tree has a cycle");
        FiberVerdict {
            verdict: Verdict::NotFibered,
            certificate: Certificate::NotATree { edges, vertices, class },
            state_class: class,
            path,
            theorem,
        }
    } else {
        FiberVerdict {
            verdict: Verdict::Unknown,
            certificate: Certificate::None,
            state_class: class,
            path: DecisionPath::Undecided,
            theorem,
        }
    };
    log::debug!("state {state}: {} via {:?}", verdict.verdict, verdict.path);
    Ok(Analysis { smoothed, graph, reduced, verdict })
}

impl FiberVerdict {
    /// Recompute the certificate against the inputs from scratch.
    pub fn verify(&self, diagram: &Diagram, state: &KauffmanState) -> std::result::Result<(), String> {
        let smoothed = smooth(diagram, state).map_err(|e| e.to_string())?;
        let graph = build_graph(&smoothed);
        let reduced = reduce(&graph);
        let report = classify(&smoothed);
        let class = StateClass { alternating: report.alternating, homogeneous: report.homogeneous };
        if class != self.state_class {
            return Err(format!("state class {:?} does not match {:?}", self.state_class, class));
        }
        match (&self.verdict, &self.certificate) {
            (Verdict::Fibered, Certificate::SpanningTree { edges }) => {
                let mut ids: Vec<usize> = reduced.edges.iter().map(|e| e.id).collect();
                ids.sort_unstable();
                let mut claimed = edges.clone();
                claimed.sort_unstable();
                if ids != claimed {
                    return Err("edge set differs from the reduced graph".into());
                }
                if !reduced.is_connected() || edges.len() + 1 != reduced.vertex_count {
                    return Err("reduced graph is not a spanning tree".into());
                }
                Ok(())
            }
            (Verdict::NotFibered, Certificate::NotATree { edges, vertices, class: c }) => {
                if c.is_empty() || *c != class {
                    return Err("tree criterion does not apply to this state".into());
                }
                let start = *vertices.first().ok_or("empty cycle")?;
                if reduced.closed_walk(start, edges).as_ref() != Some(vertices) {
                    return Err("cycle is not a closed walk in the reduced graph".into());
                }
                let mut e = edges.clone();
                e.sort_unstable();
                e.dedup();
                let mut v = vertices.clone();
                v.sort_unstable();
                v.dedup();
                if e.len() != edges.len() || v.len() != vertices.len() {
                    return Err("cycle is not simple".into());
                }
                Ok(())
            }
            (Verdict::NotFibered, Certificate::MixedParallel { first, second }) => {
                let (Some(a), Some(b)) = (graph.edge(*first), graph.edge(*second)) else {
                    return Err("unknown edge".into());
                };
                let same_ends = {
                    let (p, q) = (a.endpoints, b.endpoints);
                    (p.0.min(p.1), p.0.max(p.1)) == (q.0.min(q.1), q.0.max(q.1))
                };
                if !same_ends || a.is_self_loop() || a.label == b.label {
                    return Err("edges are not a mixed parallel pair".into());
                }
                Ok(())
            }
            (Verdict::NotFibered, Certificate::AlternatingInnerCycle { cycle }) => {
                if !cycle.is_alternating() {
                    return Err("cycle labels do not alternate".into());
                }
                if !graph.inner_cycles().contains(cycle) {
                    return Err("not an inner cycle of the state graph".into());
                }
                Ok(())
            }
            (Verdict::Unknown, Certificate::None) => {
                if !class.is_empty() {
                    return Err("state is classified; a verdict was available".into());
                }
                Ok(())
            }
            (v, c) => Err(format!("verdict {v} cannot carry a {} certificate", c.kind())),
        }
    }
}

pub const DEFAULT_CENSUS_BOUND: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub state: String,
    pub circles: usize,
    pub euler_characteristic: i64,
    pub alternating: bool,
    pub homogeneous: bool,
    pub verdict: Verdict,
    pub certificate: &'static str,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusCounts {
    pub total: usize,
    pub fibered: usize,
    pub not_fibered: usize,
    pub unknown: usize,
}

impl CensusCounts {
    fn add(mut self, other: CensusCounts) -> CensusCounts {
        self.total += other.total;
        self.fibered += other.fibered;
        self.not_fibered += other.not_fibered;
        self.unknown += other.unknown;
        self
    }

    fn of(v: Verdict) -> CensusCounts {
        CensusCounts {
            total: 1,
            fibered: usize::from(v == Verdict::Fibered),
            not_fibered: usize::from(v == Verdict::NotFibered),
            unknown: usize::from(v == Verdict::Unknown),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub rows: Vec<CensusRow>,
    pub counts: CensusCounts,
}

pub const CENSUS_COLUMNS: [&str; 7] =
    ["state", "circles", "euler_characteristic", "alternating", "homogeneous", "verdict", "certificate"];

impl Census {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CENSUS_COLUMNS).expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.state.clone(),
                r.circles.to_string(),
                r.euler_characteristic.to_string(),
                r.alternating.to_string(),
                r.homogeneous.to_string(),
                r.verdict.to_string(),
                r.certificate.to_string(),
            ])
            .expect("in-memory write");
        }
        let mut out = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii");
        let c = &self.counts;
        out.push_str(&format!(
            "# total={} fibered={} not_fibered={} unknown={}\n",
            c.total, c.fibered, c.not_fibered, c.unknown
        ));
        out
    }
}

pub fn census(diagram: &Diagram) -> Result<Census> {
    census_with_bound(diagram, DEFAULT_CENSUS_BOUND)
}

/// Run every state in lexicographic `A < B` order.
pub fn census_with_bound(diagram: &Diagram, bound: usize) -> Result<Census> {
    let n = diagram.crossing_count();
    if n > bound || n >= 64 {
        return Err(Error::BoundExceeded { crossings: n, bound });
    }
    if !diagram.is_connected() {
        return Err(Error::Disconnected);
    }
    #[cfg(feature = "parallel")]
    let rows: Vec<CensusRow> = (0..1u64 << n)
        .into_par_iter()
        .map(|i| census_row(diagram, &KauffmanState::from_index(n, i)))
        .collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<CensusRow> =
        (0..1u64 << n).map(|i| census_row(diagram, &KauffmanState::from_index(n, i))).collect::<Result<_>>()?;
    let counts = rows.iter().map(|r| CensusCounts::of(r.verdict)).fold(CensusCounts::default(), CensusCounts::add);
    Ok(Census { rows, counts })
}

fn census_row(diagram: &Diagram, state: &KauffmanState) -> Result<CensusRow> {
    let a = analyse(diagram, state)?;
    let inv = surface_invariants(&a.smoothed);
    Ok(CensusRow {
        state: state.to_string(),
        circles: a.smoothed.circle_count(),
        euler_characteristic: inv.euler_characteristic,
        alternating: a.verdict.state_class.alternating,
        homogeneous: a.verdict.state_class.homogeneous,
        verdict: a.verdict.verdict,
        certificate: a.verdict.certificate.kind(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::state::{make_state, seifert_state, StateSpec};

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    fn decide(pd: &str, s: &str) -> FiberVerdict {
        let d = parse_pd(pd).unwrap();
        decide_fiber(&d, &make_state(&d, StateSpec::Explicit(s)).unwrap()).unwrap()
    }

    #[test]
    fn hopf_band_and_annulus() {
        let v = decide("X[1,3,2,4] X[3,1,4,2]", "AA");
        assert_eq!(v.verdict, Verdict::Fibered);
        let v = decide("X[4,1,3,2] X[3,1,4,2]", "AB");
        assert_eq!(v.verdict, Verdict::NotFibered);
        assert!(matches!(v.certificate, Certificate::MixedParallel { .. } | Certificate::AlternatingInnerCycle { .. }));
    }

    #[test]
    fn trefoil_seifert_fibered() {
        let d = parse_pd(TREFOIL).unwrap();
        let s = seifert_state(&d);
        let v = decide_fiber(&d, &s).unwrap();
        assert_eq!(v.verdict, Verdict::Fibered);
        assert_eq!(v.certificate, Certificate::SpanningTree { edges: vec![0] });
        v.verify(&d, &s).unwrap();
    }

    #[test]
    fn kink_census() {
        let d = parse_pd("X[1,1,2,2]").unwrap();
        let c = census(&d).unwrap();
        let got: Vec<(&str, Verdict)> = c.rows.iter().map(|r| (r.state.as_str(), r.verdict)).collect();
        assert_eq!(got, vec![("A", Verdict::Fibered), ("B", Verdict::NotFibered)]);
        assert_eq!(c.counts, CensusCounts { total: 2, fibered: 1, not_fibered: 1, unknown: 0 });
    }

    #[test]
    fn census_order_and_csv() {
        let d = parse_pd(TREFOIL).unwrap();
        let c = census(&d).unwrap();
        let states: Vec<&str> = c.rows.iter().map(|r| r.state.as_str()).collect();
        assert_eq!(states, ["AAA", "AAB", "ABA", "ABB", "BAA", "BAB", "BBA", "BBB"]);
        assert_eq!(c.rows[7].verdict, Verdict::Fibered);
        let csv = c.to_csv();
        assert!(csv.starts_with("state,circles,euler_characteristic,alternating,homogeneous,verdict,certificate\n"));
        assert!(csv.trim_end().ends_with(&format!("unknown={}", c.counts.unknown)));
    }

    #[test]
    fn census_bound() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(census_with_bound(&d, 2), Err(Error::BoundExceeded { crossings: 3, bound: 2 }));
    }

    #[test]
    fn every_trefoil_certificate_replays() {
        let d = parse_pd(TREFOIL).unwrap();
        for i in 0..8 {
            let s = KauffmanState::from_index(3, i);
            let v = decide_fiber(&d, &s).unwrap();
            v.verify(&d, &s).unwrap_or_else(|e| panic!("{s}: {e}"));
        }
    }

    #[test]
    fn forged_certificate_is_rejected() {
        let d = parse_pd(TREFOIL).unwrap();
        let s = seifert_state(&d);
        let mut v = decide_fiber(&d, &s).unwrap();
        v.certificate = Certificate::SpanningTree { edges: vec![1] };
        assert!(v.verify(&d, &s).is_err());
        v.verdict = Verdict::NotFibered;
        assert!(v.verify(&d, &s).is_err());
    }
}

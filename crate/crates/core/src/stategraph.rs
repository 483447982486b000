//! The state graph of a smoothed diagram, its reduction, and the structural
//! operations used by the fiberedness decision.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::diagram::UnionFind;
use crate::error::{Error, Result};
use crate::state::{BandStep, FaceWalk, ResolutionLabel, SmoothedMap};

/// A band, seen as an edge between two circles. `id` is the crossing index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub id: usize,
    pub endpoints: (usize, usize),
    pub label: ResolutionLabel,
    pub region: usize,
}

impl GraphEdge {
    pub fn is_self_loop(&self) -> bool {
        self.endpoints.0 == self.endpoints.1
    }

    pub fn other(&self, v: usize) -> usize {
        if self.endpoints.0 == v {
            self.endpoints.1
        } else {
            self.endpoints.0
        }
    }

    fn key(&self) -> (usize, usize) {
        let (a, b) = self.endpoints;
        (a.min(b), a.max(b))
    }
}

/// One end of an edge at a vertex, as met along the circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeEnd {
    pub edge: usize,
    pub other: usize,
    pub region: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateGraph {
    pub vertex_count: usize,
    /// Sorted by id.
    pub edges: Vec<GraphEdge>,
    /// Cyclic order of edge ends around each vertex.
    pub rotation: Vec<Vec<EdgeEnd>>,
    /// Faces of the circles-plus-band-cores map, circle arcs contracted.
    pub face_walks: Vec<FaceWalk>,
}

/// Parallel same-label edges folded into `kept`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionEntry {
    pub kept: usize,
    pub represents: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedGraph {
    pub graph: StateGraph,
    /// One entry per kept edge, in edge order.
    pub reduction_log: Vec<ReductionEntry>,
}

impl std::ops::Deref for ReducedGraph {
    type Target = StateGraph;
    fn deref(&self) -> &StateGraph {
        &self.graph
    }
}

impl ReducedGraph {
    pub fn multiplicity(&self, edge: usize) -> usize {
        self.reduction_log.iter().find(|e| e.kept == edge).map_or(0, |e| e.represents.len())
    }

    /// True when no collapse happened.
    pub fn is_trivial(&self) -> bool {
        self.reduction_log.iter().all(|e| e.represents.len() == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InnerCycle {
    pub edges: Vec<usize>,
    /// `vertices[k]` is where `edges[k]` starts.
    pub vertices: Vec<usize>,
    pub region: usize,
    /// Diagram face the cycle bounds.
    pub face: usize,
    pub label_sequence: Vec<ResolutionLabel>,
}

impl InnerCycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Labels strictly alternate around the cycle.
    pub fn is_alternating(&self) -> bool {
        let n = self.label_sequence.len();
        n.is_multiple_of(2) && n > 0 && (0..n).all(|k| self.label_sequence[k] != self.label_sequence[(k + 1) % n])
    }
}

/// A Murasugi decomposition of a graph at an edge `pivot` joining `v` and `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub pivot: usize,
    pub v: usize,
    pub w: usize,
    /// Edge sets of `X ∪ H_i`, each sorted, starting with `{X}` itself.
    pub summands: Vec<Vec<usize>>,
}

impl Decomposition {
    /// The `H_i` parts, without the pivot.
    pub fn parts(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.summands[1..].iter().map(move |s| s.iter().copied().filter(|&e| e != self.pivot).collect())
    }
}

pub fn build_graph(smoothed: &SmoothedMap) -> StateGraph {
    let edges = smoothed
        .bands
        .iter()
        .map(|b| GraphEdge { id: b.crossing, endpoints: b.circles, label: b.label, region: b.region })
        .collect();
    let rotation = smoothed
        .attachment_sequences
        .iter()
        .map(|seq| seq.iter().map(|ev| EdgeEnd { edge: ev.crossing, other: ev.other_circle, region: ev.region }).collect())
        .collect();
    StateGraph { vertex_count: smoothed.circle_count(), edges, rotation, face_walks: smoothed.face_walks.clone() }
}

impl StateGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: usize) -> Option<&GraphEdge> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok().map(|i| &self.edges[i])
    }

    pub fn has_edge(&self, id: usize) -> bool {
        self.edge(id).is_some()
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            uf.union(e.endpoints.0, e.endpoints.1);
        }
        (0..self.vertex_count).all(|v| uf.find(v) == uf.find(0))
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.vertex_count == 0 || !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    /// Edges minus vertices plus connected components.
    pub fn first_betti(&self) -> i64 {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            uf.union(e.endpoints.0, e.endpoints.1);
        }
        let comps = (0..self.vertex_count).filter(|&v| uf.find(v) == v).count();
        self.edges.len() as i64 - self.vertex_count as i64 + comps as i64
    }

    pub fn is_uniform(&self) -> bool {
        self.edges.windows(2).all(|w| w[0].label == w[1].label)
    }

    /// Face walks that pass along at least one band.
    pub fn stepped_faces(&self) -> impl Iterator<Item = &FaceWalk> {
        self.face_walks.iter().filter(|w| !w.steps.is_empty())
    }

    /// The cycle `edges` in G, closed at `start`, as an edge-to-vertex walk.
    pub(crate) fn closed_walk(&self, start: usize, edges: &[usize]) -> Option<Vec<usize>> {
        let mut at = start;
        let mut verts = Vec::with_capacity(edges.len());
        for &id in edges {
            let e = self.edge(id)?;
            if e.endpoints.0 != at && e.endpoints.1 != at {
                return None;
            }
            verts.push(at);
            at = e.other(at);
        }
        (at == start).then_some(verts)
    }

    /// Restrict to a set of edges, keeping all vertices and rotation data.
    pub fn subgraph(&self, keep: &[usize]) -> StateGraph {
        let mut g = self.clone();
        let mut removed: Vec<usize> = self.edges.iter().map(|e| e.id).filter(|id| !keep.contains(id)).collect();
        removed.sort_unstable();
        for id in removed {
            g.remove_edge(id);
        }
        g
    }

    /// Delete an edge, merging the two faces on its sides.
    fn remove_edge(&mut self, id: usize) {
        let Ok(pos) = self.edges.binary_search_by_key(&id, |e| e.id) else {
            return;
        };
        self.edges.remove(pos);
        for rot in &mut self.rotation {
            rot.retain(|end| end.edge != id);
        }
        let holders: Vec<(usize, usize)> = self
            .face_walks
            .iter()
            .enumerate()
            .flat_map(|(f, w)| w.steps.iter().enumerate().filter(|(_, s)| s.band == id).map(move |(k, _)| (f, k)))
            .collect();
        match holders[..] {
            [(f1, k1), (f2, k2)] if f1 != f2 => {
                let w1 = &self.face_walks[f1];
                let w2 = &self.face_walks[f2];
                let rotated = |w: &FaceWalk, k: usize| -> Vec<BandStep> {
                    w.steps[k + 1..].iter().chain(&w.steps[..k]).copied().collect()
                };
                let mut steps = rotated(w1, k1);
                steps.extend(rotated(w2, k2));
                let merged = FaceWalk {
                    face: w1.face.min(w2.face),
                    region: w1.region,
                    outer: w1.outer || w2.outer,
                    steps,
                };
                let (lo, hi) = (f1.min(f2), f1.max(f2));
                self.face_walks.remove(hi);
                self.face_walks[lo] = merged;
            }
            [(f, k1), (_, k2)] => {
                // a bridge: both sides lie in one face; drop the excursion's two ends
                let (a, b) = (k1.min(k2), k1.max(k2));
                let w = &mut self.face_walks[f];
                let inner: Vec<BandStep> = w.steps[a + 1..b].to_vec();
                let outer: Vec<BandStep> = w.steps[b + 1..].iter().chain(&w.steps[..a]).copied().collect();
                w.steps = outer;
                if !inner.is_empty() {
                    let face = w.face;
                    let region = w.region;
                    self.face_walks.push(FaceWalk { face, region, outer: false, steps: inner });
                }
            }
            _ => {}
        }
    }

    /// Tree test; the graph must be connected.
    pub fn is_tree(&self) -> Result<bool> {
        self.require_connected()?;
        Ok(self.edges.len() + 1 == self.vertex_count)
    }

    /// Unordered pairs of parallel non-loop edges carrying different labels.
    pub fn mixed_parallel_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            for f in &self.edges[i + 1..] {
                if !e.is_self_loop() && e.key() == f.key() && e.label != f.label {
                    out.push((e.id, f.id));
                }
            }
        }
        out
    }

    /// Index into `face_walks` of the face treated as unbounded.
    ///
    /// This is the face holding the diagram's outer face when that face meets
    /// a band; otherwise the outer face is enclosed by a single circle and the
    /// longest stepped face (lowest face id on ties) stands in for it.
    pub fn outer_walk(&self) -> Option<usize> {
        if let Some(i) = self.face_walks.iter().position(|w| w.outer && !w.steps.is_empty()) {
            return Some(i);
        }
        let mut best: Option<usize> = None;
        for (i, w) in self.face_walks.iter().enumerate() {
            if w.steps.is_empty() {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => {
                    let cur = &self.face_walks[b];
                    (w.steps.len(), std::cmp::Reverse(w.face)) > (cur.steps.len(), std::cmp::Reverse(cur.face))
                }
            };
            if better {
                best = Some(i);
            }
        }
        best
    }

    /// Bounded faces whose contracted boundary is a simple cycle of length at least 2.
    pub fn inner_cycles(&self) -> Vec<InnerCycle> {
        let outer = self.outer_walk();
        let mut out: Vec<InnerCycle> = self
            .face_walks
            .iter()
            .enumerate()
            .filter(|&(i, w)| !w.outer && Some(i) != outer)
            .filter_map(|(_, w)| self.cycle_of_walk(w))
            .collect();
        out.sort_by_key(|c| c.face);
        out
    }

    fn cycle_of_walk(&self, walk: &FaceWalk) -> Option<InnerCycle> {
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for s in &walk.steps {
            *count.entry(s.band).or_default() += 1;
        }
        let steps: Vec<BandStep> = walk.steps.iter().copied().filter(|s| count[&s.band] == 1).collect();
        let m = steps.len();
        if m < 2 {
            return None;
        }
        let consecutive = (0..m).all(|k| steps[k].to == steps[(k + 1) % m].from);
        let mut verts: Vec<usize> = steps.iter().map(|s| s.from).collect();
        let vertices = verts.clone();
        verts.sort_unstable();
        verts.dedup();
        if !consecutive || verts.len() != m {
            return None;
        }
        let edges: Vec<usize> = steps.iter().map(|s| s.band).collect();
        let label_sequence = edges.iter().map(|&id| self.edge(id).map(|e| e.label)).collect::<Option<Vec<_>>>()?;
        Some(InnerCycle { edges, vertices, region: walk.region, face: walk.face, label_sequence })
    }

    pub fn find_alternating_inner_cycle(&self) -> Option<InnerCycle> {
        self.inner_cycles().into_iter().find(InnerCycle::is_alternating)
    }

    /// Some simple cycle, as `(edges, vertices)`, if the graph has one.
    pub fn find_cycle(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.vertex_count;
        let mut uf = UnionFind::new(n);
        let mut tree: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for e in &self.edges {
            let (a, b) = e.endpoints;
            if a == b {
                return Some((vec![e.id], vec![a]));
            }
            if uf.find(a) == uf.find(b) {
                // path from b to a through the forest, then back along e
                let path = tree_path(&tree, b, a)?;
                let mut edges: Vec<usize> = path.iter().map(|&(id, _)| id).collect();
                let mut verts: Vec<usize> = std::iter::once(b).chain(path.iter().map(|&(_, v)| v)).collect();
                verts.pop();
                edges.push(e.id);
                verts.push(a);
                return Some((edges, verts));
            }
            uf.union(a, b);
            tree[a].push((e.id, b));
            tree[b].push((e.id, a));
        }
        None
    }

    /// Cut vertices, ascending.
    pub fn cut_vertices(&self) -> Vec<usize> {
        let (_, cuts) = self.biconnected();
        cuts
    }

    /// Edge sets of the 2-connected blocks; self-loops form their own blocks.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let (blocks, _) = self.biconnected();
        blocks
    }

    fn biconnected(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let n = self.vertex_count;
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for e in &self.edges {
            let (a, b) = e.endpoints;
            if a == b {
                blocks.push(vec![e.id]);
            } else {
                adj[a].push((b, e.id));
                adj[b].push((a, e.id));
            }
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        let mut edge_stack: Vec<usize> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            // frames: (vertex, parent edge, next adjacency index)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(&mut (v, pe, ref mut idx)) = stack.last_mut() {
                if *idx < adj[v].len() {
                    let (w, eid) = adj[v][*idx];
                    *idx += 1;
                    if eid == pe {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        edge_stack.push(eid);
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, eid, 0));
                    } else if disc[w] < disc[v] {
                        edge_stack.push(eid);
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(u, _, _)) = stack.last() {
                        low[u] = low[u].min(low[v]);
                        if low[v] >= disc[u] {
                            if u != root {
                                is_cut[u] = true;
                            }
                            let mut block = Vec::new();
                            while let Some(id) = edge_stack.pop() {
                                block.push(id);
                                if id == pe {
                                    break;
                                }
                            }
                            block.sort_unstable();
                            blocks.push(block);
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        // a self-loop at a vertex with other edges also makes it a cut vertex
        for e in &self.edges {
            let v = e.endpoints.0;
            if e.is_self_loop() && (!adj[v].is_empty() || self.edges.iter().filter(|f| f.endpoints == (v, v)).count() > 1) {
                is_cut[v] = true;
            }
        }
        blocks.sort();
        (blocks, (0..n).filter(|&v| is_cut[v]).collect())
    }

    /// Split along the pivot edge `x` joining `v` and `w`.
    pub fn decompose_at_pair(&self, v: usize, w: usize, x: usize) -> Result<Decomposition> {
        let not_adjacent = Error::NotAdjacent { edge: x, v, w };
        let pivot = self.edge(x).ok_or(not_adjacent.clone())?;
        if pivot.key() != (v.min(w), v.max(w)) || v == w {
            return Err(not_adjacent);
        }
        let rest: Vec<&GraphEdge> = self.edges.iter().filter(|e| e.id != x).collect();
        // edges are glued through shared vertices other than v and w
        let mut uf = UnionFind::new(rest.len());
        let mut first_at: Vec<Option<usize>> = vec![None; self.vertex_count];
        for (i, e) in rest.iter().enumerate() {
            for u in [e.endpoints.0, e.endpoints.1] {
                if u == v || u == w {
                    continue;
                }
                match first_at[u] {
                    Some(j) => uf.union(i, j),
                    None => first_at[u] = Some(i),
                }
            }
        }
        let mut parts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, e) in rest.iter().enumerate() {
            parts.entry(uf.find(i)).or_default().push(e.id);
        }
        let parts: Vec<Vec<usize>> = parts.into_values().collect();
        let touches = |part: &[usize], u: usize| {
            part.iter().any(|&id| self.edge(id).is_some_and(|e| e.endpoints.0 == u || e.endpoints.1 == u))
        };
        let trivial = match &parts[..] {
            [] => true,
            [only] => !(touches(only, v) && touches(only, w)),
            _ => false,
        };
        if trivial {
            return Err(Error::NotDecomposing { edge: x, v, w });
        }
        // order by cyclic distance from the pivot around v (or w)
        let distance = |part: &[usize]| -> usize {
            for u in [v, w] {
                let rot = &self.rotation[u];
                if let Some(start) = rot.iter().position(|end| end.edge == x) {
                    let m = rot.len();
                    if let Some(d) = (1..m).find(|&k| part.contains(&rot[(start + k) % m].edge)) {
                        return if u == v { d } else { m + d };
                    }
                }
            }
            usize::MAX
        };
        let mut keyed: Vec<(usize, Vec<usize>)> = parts.into_iter().map(|p| (distance(&p), p)).collect();
        keyed.sort();
        let mut summands = vec![vec![x]];
        for (_, mut p) in keyed {
            p.push(x);
            p.sort_unstable();
            summands.push(p);
        }
        Ok(Decomposition { pivot: x, v, w, summands })
    }

    pub fn to_dot(&self, name: &str) -> String {
        self.dot_with(name, |_| 1)
    }

    fn dot_with(&self, name: &str, mult: impl Fn(usize) -> usize) -> String {
        let mut s = format!("graph {name} {{\n");
        for v in 0..self.vertex_count {
            let _ = writeln!(s, "  c{v};");
        }
        for e in &self.edges {
            let m = mult(e.id);
            let label = if m > 1 { format!("{} x{m}", e.label) } else { e.label.to_string() };
            let _ = writeln!(s, "  c{} -- c{} [label=\"{label}\", id=\"x{}\"];", e.endpoints.0, e.endpoints.1, e.id);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

impl ReducedGraph {
    pub fn to_dot(&self, name: &str) -> String {
        self.graph.dot_with(name, |id| self.multiplicity(id))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

fn tree_path(tree: &[Vec<(usize, usize)>], from: usize, to: usize) -> Option<Vec<(usize, usize)>> {
    // depth-first search returning (edge, vertex reached) pairs
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; tree.len()];
    let mut seen = vec![false; tree.len()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(u) = stack.pop() {
        if u == to {
            break;
        }
        for &(id, w) in &tree[u] {
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((id, u));
                stack.push(w);
            }
        }
    }
    if !seen[to] {
        return None;
    }
    let mut path = Vec::new();
    let mut at = to;
    while at != from {
        let (id, u) = prev[at]?;
        path.push((id, at));
        at = u;
    }
    path.reverse();
    Some(path)
}

/// Collapse parallel same-label edges onto their lowest-id representative.
pub fn reduce(graph: &StateGraph) -> ReducedGraph {
    let mut groups: BTreeMap<((usize, usize), ResolutionLabel), Vec<usize>> = BTreeMap::new();
    for e in &graph.edges {
        groups.entry((e.key(), e.label)).or_default().push(e.id);
    }
    let mut g = graph.clone();
    let mut log: Vec<ReductionEntry> = Vec::new();
    for ids in groups.into_values() {
        for &id in &ids[1..] {
            g.remove_edge(id);
        }
        log.push(ReductionEntry { kept: ids[0], represents: ids });
    }
    log.sort_by_key(|e| e.kept);
    ReducedGraph { graph: g, reduction_log: log }
}

/// Reduce an already reduced graph, folding the logs together.
pub fn reduce_again(reduced: &ReducedGraph) -> ReducedGraph {
    let mut again = reduce(&reduced.graph);
    for entry in &mut again.reduction_log {
        let mut all: Vec<usize> = entry
            .represents
            .iter()
            .flat_map(|&id| reduced.reduction_log.iter().find(|e| e.kept == id).map_or(vec![id], |e| e.represents.clone()))
            .collect();
        all.sort_unstable();
        entry.represents = all;
    }
    again
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::state::{make_state, seifert_state, smooth, StateSpec};

    fn graph(pd: &str, state: Option<&str>) -> StateGraph {
        let d = parse_pd(pd).unwrap();
        let s = match state {
            Some(t) => make_state(&d, StateSpec::Explicit(t)).unwrap(),
            None => seifert_state(&d),
        };
        build_graph(&smooth(&d, &s).unwrap())
    }

    const HOPF: &str = "X[1,3,2,4] X[3,1,4,2]";
    const UNLINK_R2: &str = "X[4,1,3,2] X[3,1,4,2]";
    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn hopf_all_a_is_a_bigon() {
        let g = graph(HOPF, Some("AA"));
        assert_eq!(g.vertex_count, 2);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edges[0].key(), g.edges[1].key());
        assert!(g.mixed_parallel_pairs().is_empty());
        let cycles = g.inner_cycles();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 2);
        assert!(g.find_alternating_inner_cycle().is_none());
        let r = reduce(&g);
        assert_eq!(r.edge_count(), 1);
        assert!(r.is_tree().unwrap());
    }

    #[test]
    fn hopf_mixed_is_an_annulus() {
        let g = graph(UNLINK_R2, Some("AB"));
        assert_eq!(g.vertex_count, 2);
        assert_eq!(g.mixed_parallel_pairs(), vec![(0, 1)]);
        let c = g.find_alternating_inner_cycle().expect("alternating bigon");
        assert_eq!(c.label_sequence.len(), 2);
        let r = reduce(&g);
        assert_eq!(r.edge_count(), 2);
        assert!(!r.is_tree().unwrap());
    }

    #[test]
    fn hopf_mixed_has_self_loops() {
        let g = graph(HOPF, Some("AB"));
        assert_eq!(g.vertex_count, 1);
        assert!(g.edges.iter().all(GraphEdge::is_self_loop));
        assert!(g.mixed_parallel_pairs().is_empty());
        assert!(g.inner_cycles().is_empty());
        assert!(!g.is_tree().unwrap());
    }

    #[test]
    fn trefoil_theta() {
        let g = graph(TREFOIL, None);
        assert_eq!(g.vertex_count, 2);
        assert_eq!(g.edge_count(), 3);
        assert!(g.mixed_parallel_pairs().is_empty());
        assert_eq!(g.inner_cycles().len(), 2);
        assert!(g.inner_cycles().iter().all(|c| c.len() == 2));
        let r = reduce(&g);
        assert_eq!(r.edge_count(), 1);
        assert_eq!(r.reduction_log, vec![ReductionEntry { kept: 0, represents: vec![0, 1, 2] }]);
        assert!(r.is_tree().unwrap());
        assert!(r.inner_cycles().is_empty());
    }

    #[test]
    fn kink_is_a_tree() {
        let d = parse_pd("X[1,1,2,2]").unwrap();
        for (s, tree) in [("A", true), ("B", false)] {
            let g = build_graph(&smooth(&d, &make_state(&d, StateSpec::Explicit(s)).unwrap()).unwrap());
            assert_eq!(g.is_tree().unwrap(), tree, "state {s}");
            assert!(g.inner_cycles().is_empty());
        }
    }

    #[test]
    fn face_walk_steps_chain() {
        let g = graph(TREFOIL, Some("ABA"));
        for w in g.stepped_faces() {
            let m = w.steps.len();
            for k in 0..m {
                assert_eq!(w.steps[k].to, w.steps[(k + 1) % m].from, "{w:?}");
            }
        }
    }

    #[test]
    fn reduce_is_idempotent() {
        let g = graph(TREFOIL, None);
        let r = reduce(&g);
        let rr = reduce_again(&r);
        assert_eq!(r, rr);
    }

    #[test]
    fn decompose_parallel_pair() {
        let g = graph(HOPF, Some("AA"));
        let dec = g.decompose_at_pair(0, 1, 0).unwrap();
        assert_eq!(dec.summands, vec![vec![0], vec![0, 1]]);
    }

    #[test]
    fn decompose_theta() {
        let g = graph(TREFOIL, None);
        let (v, w) = g.edges[0].endpoints;
        let dec = g.decompose_at_pair(v, w, 0).unwrap();
        assert_eq!(dec.summands.len(), 3);
        assert_eq!(dec.summands[0], vec![0]);
        let mut rest: Vec<Vec<usize>> = dec.summands[1..].to_vec();
        rest.sort();
        assert_eq!(rest, vec![vec![0, 1], vec![0, 2]]);
        let total: usize = dec.parts().map(|p| p.len()).sum();
        assert_eq!(total + 1, g.edge_count());
    }

    #[test]
    fn decompose_errors() {
        let g = graph(TREFOIL, None);
        assert_eq!(g.decompose_at_pair(0, 0, 0), Err(Error::NotAdjacent { edge: 0, v: 0, w: 0 }));
        assert!(matches!(g.decompose_at_pair(0, 1, 7), Err(Error::NotAdjacent { .. })));
        let d = parse_pd("X[1,1,2,2]").unwrap();
        let tree = build_graph(&smooth(&d, &make_state(&d, StateSpec::AllA).unwrap()).unwrap());
        assert_eq!(tree.decompose_at_pair(0, 1, 0), Err(Error::NotDecomposing { edge: 0, v: 0, w: 1 }));
    }

    #[test]
    fn blocks_and_cuts() {
        let g = graph(TREFOIL, None);
        assert_eq!(g.blocks(), vec![vec![0, 1, 2]]);
        assert!(g.cut_vertices().is_empty());
    }

    #[test]
    fn cycle_search() {
        let g = graph(TREFOIL, None);
        let (edges, verts) = g.find_cycle().unwrap();
        assert_eq!(edges.len(), 2);
        assert_eq!(g.closed_walk(verts[0], &edges), Some(verts));
        assert!(reduce(&g).find_cycle().is_none());
    }

    #[test]
    fn dot_output() {
        let r = reduce(&graph(TREFOIL, None));
        let dot = r.to_dot("reduced");
        assert!(dot.contains("c0 -- c1 [label=\"B x3\", id=\"x0\"];"), "{dot}");
    }
}

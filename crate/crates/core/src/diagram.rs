//! Link diagrams in planar-diagram (PD) notation.
//!
//! A crossing `X[a,b,c,d]` lists its four incident edges counterclockwise,
//! starting from the incoming under-strand. Internally each occurrence of an
//! edge at a crossing is a [`Dart`]; the diagram is the combinatorial map
//! given by the crossing rotation `(c, s) -> (c, s + 1)` and the edge
//! involution pairing the two darts of each edge.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A half-edge: slot `slot` of crossing `crossing`, encoded as `4 * crossing + slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart(pub usize);

impl Dart {
    pub fn new(crossing: usize, slot: usize) -> Self {
        debug_assert!(slot < 4);
        Dart(4 * crossing + slot)
    }

    pub fn crossing(self) -> usize {
        self.0 / 4
    }

    pub fn slot(self) -> usize {
        self.0 % 4
    }

    /// The dart `k` steps counterclockwise around the same crossing.
    pub fn rotate(self, k: usize) -> Self {
        Dart::new(self.crossing(), (self.slot() + k) % 4)
    }
}

/// A face of the diagram's combinatorial map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub id: usize,
    /// Orbit of the face permutation, in traversal order.
    pub boundary: Vec<Dart>,
}

/// Parsing switches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Accept split diagrams (several connected pieces).
    pub allow_disconnected: bool,
}

#[derive(Serialize, Deserialize)]
struct PdJson {
    crossings: Vec<[u64; 4]>,
}

/// A validated, oriented link diagram.
#[derive(Clone, Debug)]
pub struct Diagram {
    crossings: Vec<[usize; 4]>,
    labels: Vec<u64>,
    darts_of_edge: Vec<[Dart; 2]>,
    head: Vec<Dart>,
    components: Vec<Vec<usize>>,
    faces: Vec<Face>,
    face_of_dart: Vec<usize>,
    pieces: usize,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings && self.labels == other.labels
    }
}

impl Eq for Diagram {}

/// Parse a PD string, requiring a connected diagram.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    parse_pd_with(text, ParseOptions::default())
}

pub fn parse_pd_with(text: &str, opts: ParseOptions) -> Result<Diagram> {
    let raw = lex_pd(text)?;
    Diagram::from_crossings(&raw, opts)
}

fn lex_pd(text: &str) -> Result<Vec<[u64; 4]>> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut out = Vec::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let expect = |pos: &mut usize, lit: &[u8]| -> Result<()> {
        if bytes[*pos..].starts_with(lit) {
            *pos += lit.len();
            Ok(())
        } else {
            Err(Error::Syntax {
                pos: *pos,
                msg: format!("expected {:?}", String::from_utf8_lossy(lit)),
            })
        }
    };
    let int = |pos: &mut usize| -> Result<u64> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if start == *pos {
            return Err(Error::Syntax { pos: start, msg: "expected an unsigned integer".into() });
        }
        let v: u64 = text[start..*pos]
            .parse()
            .map_err(|_| Error::Syntax { pos: start, msg: "integer out of range".into() })?;
        if v == 0 {
            return Err(Error::Syntax { pos: start, msg: "labels must be positive".into() });
        }
        Ok(v)
    };

    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(Error::EmptyDiagram);
    }
    while pos < bytes.len() {
        if !out.is_empty() {
            let before = pos;
            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            if before == pos {
                return Err(Error::Syntax { pos, msg: "terms must be separated by whitespace".into() });
            }
        }
        expect(&mut pos, b"X[")?;
        let mut term = [0u64; 4];
        for (k, slot) in term.iter_mut().enumerate() {
            if k > 0 {
                expect(&mut pos, b",")?;
            }
            *slot = int(&mut pos)?;
        }
        expect(&mut pos, b"]")?;
        out.push(term);
    }
    Ok(out)
}

pub(crate) struct UnionFind(Vec<usize>);

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

impl Diagram {
    /// Build a diagram from raw PD tuples (original labels).
    pub fn from_crossings(raw: &[[u64; 4]], opts: ParseOptions) -> Result<Diagram> {
        if raw.is_empty() {
            return Err(Error::EmptyDiagram);
        }
        let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
        for x in raw {
            for &l in x {
                *counts.entry(l).or_default() += 1;
            }
        }
        if let Some((&label, &count)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(Error::BadLabels { label, count });
        }
        let labels: Vec<u64> = counts.keys().copied().collect();
        let dense = |l: u64| labels.binary_search(&l).expect("label present");
        let crossings: Vec<[usize; 4]> = raw.iter().map(|x| x.map(dense)).collect();

        let n = crossings.len();
        let e = labels.len();
        let mut darts_of_edge: Vec<Vec<Dart>> = vec![Vec::with_capacity(2); e];
        for (c, x) in crossings.iter().enumerate() {
            for (s, &edge) in x.iter().enumerate() {
                darts_of_edge[edge].push(Dart::new(c, s));
            }
        }
        let darts_of_edge: Vec<[Dart; 2]> = darts_of_edge.into_iter().map(|v| [v[0], v[1]]).collect();

        let mut d = Diagram {
            crossings,
            labels,
            darts_of_edge,
            head: Vec::new(),
            components: Vec::new(),
            faces: Vec::new(),
            face_of_dart: Vec::new(),
            pieces: 0,
        };

        // connected pieces of the 4-valent graph
        let mut uf = UnionFind::new(n);
        for pair in &d.darts_of_edge {
            uf.union(pair[0].crossing(), pair[1].crossing());
        }
        let mut piece_of = vec![0; n];
        let mut roots = BTreeMap::new();
        for (c, slot) in piece_of.iter_mut().enumerate() {
            let r = uf.find(c);
            let next = roots.len();
            *slot = *roots.entry(r).or_insert(next);
        }
        d.pieces = roots.len();
        if d.pieces > 1 && !opts.allow_disconnected {
            return Err(Error::Disconnected);
        }

        d.trace_faces();
        let mut euler = vec![0i64; d.pieces];
        for c in 0..n {
            // each crossing contributes one vertex and two edges
            euler[piece_of[c]] += 1 - 2;
        }
        for f in &d.faces {
            euler[piece_of[f.boundary[0].crossing()]] += 1;
        }
        if let Some(&bad) = euler.iter().find(|&&x| x != 2) {
            return Err(Error::NonPlanar { euler: bad });
        }

        d.orient()?;
        Ok(d)
    }

    fn trace_faces(&mut self) {
        let total = 4 * self.crossings.len();
        let mut face_of = vec![usize::MAX; total];
        let mut faces = Vec::new();
        for start in 0..total {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut boundary = Vec::new();
            let mut dart = Dart(start);
            while face_of[dart.0] == usize::MAX {
                face_of[dart.0] = id;
                boundary.push(dart);
                dart = self.face_step(dart);
            }
            faces.push(Face { id, boundary });
        }
        self.faces = faces;
        self.face_of_dart = face_of;
    }

    fn orient(&mut self) -> Result<()> {
        let total = 4 * self.crossings.len();
        let mut is_head: Vec<Option<bool>> = vec![None; total];
        let mut queue = VecDeque::new();
        // constraint neighbours: the partner dart of the edge, and the opposite over-slot
        let neighbours = |d: Dart, this: &Diagram| -> [Option<Dart>; 2] {
            let across = if d.slot() % 2 == 1 { Some(d.rotate(2)) } else { None };
            [Some(this.alpha(d)), across]
        };
        let conflict = |d: Dart, this: &Diagram| Error::OrientationConflict { label: this.labels[this.edge_at(d)] };

        let mut seeds: Vec<(Dart, bool)> = Vec::new();
        for c in 0..self.crossings.len() {
            seeds.push((Dart::new(c, 0), true));
            seeds.push((Dart::new(c, 2), false));
        }
        let mut propagate = |seed: Dart, value: bool, is_head: &mut Vec<Option<bool>>| -> Result<()> {
            match is_head[seed.0] {
                Some(v) if v != value => return Err(conflict(seed, self)),
                Some(_) => return Ok(()),
                None => is_head[seed.0] = Some(value),
            }
            queue.push_back(seed);
            while let Some(d) = queue.pop_front() {
                let v = is_head[d.0].expect("assigned");
                for nb in neighbours(d, self).into_iter().flatten() {
                    match is_head[nb.0] {
                        None => {
                            is_head[nb.0] = Some(!v);
                            // slot 0 and slot 2 are pinned
                            if (nb.slot() == 0 && v) || (nb.slot() == 2 && !v) {
                                return Err(conflict(nb, self));
                            }
                            queue.push_back(nb);
                        }
                        Some(w) if w == v => return Err(conflict(nb, self)),
                        Some(_) => {}
                    }
                }
            }
            Ok(())
        };
        for (dart, value) in seeds {
            propagate(dart, value, &mut is_head)?;
        }
        // components that pass over at every crossing: orient so the lowest dart is a head
        for start in 0..total {
            if is_head[start].is_none() {
                propagate(Dart(start), true, &mut is_head)?;
            }
        }

        self.head = self
            .darts_of_edge
            .iter()
            .map(|pair| if is_head[pair[0].0] == Some(true) { pair[0] } else { pair[1] })
            .collect();

        let mut seen = vec![false; self.labels.len()];
        let mut components = Vec::new();
        for start in 0..self.labels.len() {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                comp.push(e);
                e = self.edge_at(self.head[e].rotate(2));
            }
            if e != start {
                return Err(Error::OrientationConflict { label: self.labels[e] });
            }
            components.push(comp);
        }
        self.components = components;
        Ok(())
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    pub fn dart_count(&self) -> usize {
        4 * self.crossings.len()
    }

    /// Number of connected pieces of the underlying 4-valent graph.
    pub fn pieces(&self) -> usize {
        self.pieces
    }

    pub fn is_connected(&self) -> bool {
        self.pieces == 1
    }

    /// Dense edge indices of crossing `c`, counterclockwise from the incoming under-strand.
    pub fn crossing(&self, c: usize) -> [usize; 4] {
        self.crossings[c]
    }

    /// Original PD label of dense edge `e`.
    pub fn label(&self, e: usize) -> u64 {
        self.labels[e]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn edge_at(&self, d: Dart) -> usize {
        self.crossings[d.crossing()][d.slot()]
    }

    /// The other dart of the same edge.
    pub fn alpha(&self, d: Dart) -> Dart {
        let [a, b] = self.darts_of_edge[self.edge_at(d)];
        if a == d {
            b
        } else {
            a
        }
    }

    pub fn darts_of_edge(&self, e: usize) -> [Dart; 2] {
        self.darts_of_edge[e]
    }

    /// Dart at which edge `e` enters its crossing.
    pub fn head(&self, e: usize) -> Dart {
        self.head[e]
    }

    /// Dart at which edge `e` leaves its crossing.
    pub fn tail(&self, e: usize) -> Dart {
        self.alpha(self.head[e])
    }

    pub fn is_head(&self, d: Dart) -> bool {
        self.head[self.edge_at(d)] == d
    }

    /// True when the over-strand of crossing `c` enters at slot 3 and leaves at slot 1.
    pub fn over_enters_at_slot3(&self, c: usize) -> bool {
        self.is_head(Dart::new(c, 3))
    }

    /// Crossing sign: +1 for a right-handed crossing.
    pub fn crossing_sign(&self, c: usize) -> i32 {
        if self.over_enters_at_slot3(c) {
            1
        } else {
            -1
        }
    }

    /// Oriented link components, each as its edges in traversal order.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Face permutation: follow the edge, then turn counterclockwise.
    pub fn face_step(&self, d: Dart) -> Dart {
        self.alpha(d).rotate(1)
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_of_dart(&self, d: Dart) -> usize {
        self.face_of_dart[d.0]
    }

    /// Face containing corner `k` of crossing `c` (the corner between slots `k` and `k + 1`).
    pub fn face_at_corner(&self, c: usize, k: usize) -> usize {
        self.face_of_dart[Dart::new(c, (k + 1) % 4).0]
    }

    /// The designated outer face: the face of the head dart of the highest label.
    pub fn outer_face(&self) -> usize {
        let top = self.labels.len() - 1;
        self.face_of_dart(self.head[top])
    }

    /// True when every edge runs from an over-crossing to an under-crossing.
    pub fn is_alternating(&self) -> bool {
        self.darts_of_edge.iter().all(|[a, b]| (a.slot() % 2) != (b.slot() % 2))
    }

    /// First crossing with a face touching it at two distinct corners.
    pub fn nugatory_crossing(&self) -> Option<usize> {
        (0..self.crossing_count()).find(|&c| {
            let f: Vec<usize> = (0..4).map(|k| self.face_at_corner(c, k)).collect();
            (0..4).any(|i| (i + 1..4).any(|j| f[i] == f[j]))
        })
    }

    /// Writhe-free reflection: swaps over- and under-strands at every crossing.
    pub fn mirror(&self) -> Diagram {
        let raw: Vec<[u64; 4]> = (0..self.crossing_count())
            .map(|c| {
                let x = self.raw_crossing(c);
                if self.over_enters_at_slot3(c) {
                    [x[3], x[0], x[1], x[2]]
                } else {
                    [x[1], x[2], x[3], x[0]]
                }
            })
            .collect();
        Diagram::from_crossings(&raw, ParseOptions { allow_disconnected: !self.is_connected() })
            .expect("mirror of a valid diagram is valid")
    }

    /// Rename PD labels through `f`, which must be injective.
    pub fn relabel(&self, f: impl Fn(u64) -> u64) -> Result<Diagram> {
        let raw: Vec<[u64; 4]> = (0..self.crossing_count()).map(|c| self.raw_crossing(c).map(&f)).collect();
        Diagram::from_crossings(&raw, ParseOptions { allow_disconnected: !self.is_connected() })
    }

    /// Crossing `c` with its original labels.
    pub fn raw_crossing(&self, c: usize) -> [u64; 4] {
        self.crossings[c].map(|e| self.labels[e])
    }

    pub fn to_pd_string(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let raw = PdJson { crossings: (0..self.crossing_count()).map(|c| self.raw_crossing(c)).collect() };
        serde_json::to_value(raw).expect("plain data serializes")
    }

    pub fn from_json(value: &serde_json::Value, opts: ParseOptions) -> Result<Diagram> {
        let raw: PdJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Syntax { pos: 0, msg: e.to_string() })?;
        if raw.crossings.iter().flatten().any(|&l| l == 0) {
            return Err(Error::Syntax { pos: 0, msg: "labels must be positive".into() });
        }
        Diagram::from_crossings(&raw.crossings, opts)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in 0..self.crossing_count() {
            if c > 0 {
                f.write_str(" ")?;
            }
            let [a, b, x, y] = self.raw_crossing(c);
            write!(f, "X[{a},{b},{x},{y}]")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pd(s)
    }
}

//! Kauffman states and the smoothed diagrams they produce.
//!
//! Slot convention for the two resolutions of `X[a,b,c,d]` (slot 0 = `a`):
//! the A-resolution joins slots `(0,1)` and `(2,3)`, the B-resolution joins
//! `(0,3)` and `(1,2)`. The band of a crossing sits in the channel between
//! its two smoothing arcs, which opens corners 1 and 3 for A and corners 0
//! and 2 for B.

use std::fmt;

use serde::Serialize;

use crate::diagram::{Dart, Diagram, UnionFind};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ResolutionLabel {
    A,
    B,
}

impl ResolutionLabel {
    pub fn swapped(self) -> Self {
        match self {
            ResolutionLabel::A => ResolutionLabel::B,
            ResolutionLabel::B => ResolutionLabel::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            ResolutionLabel::A => 'A',
            ResolutionLabel::B => 'B',
        }
    }

    /// The slot joined to `slot` by this resolution's smoothing arc.
    pub fn partner(self, slot: usize) -> usize {
        match self {
            ResolutionLabel::A => slot ^ 1,
            ResolutionLabel::B => 3 - slot,
        }
    }

    /// The two corners merged through the band channel.
    pub fn open_corners(self) -> [usize; 2] {
        match self {
            ResolutionLabel::A => [1, 3],
            ResolutionLabel::B => [0, 2],
        }
    }

    pub fn is_open_corner(self, corner: usize) -> bool {
        self.open_corners().contains(&corner)
    }
}

impl fmt::Display for ResolutionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// One resolution label per crossing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KauffmanState {
    labels: Vec<ResolutionLabel>,
}

/// How to pick a state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateSpec<'a> {
    Explicit(&'a str),
    AllA,
    AllB,
}

impl KauffmanState {
    pub fn new(labels: Vec<ResolutionLabel>) -> Self {
        KauffmanState { labels }
    }

    pub fn uniform(n: usize, label: ResolutionLabel) -> Self {
        KauffmanState { labels: vec![label; n] }
    }

    /// Parse an `A`/`B` string.
    pub fn parse(text: &str) -> Result<Self> {
        let labels = text
            .chars()
            .enumerate()
            .map(|(pos, ch)| match ch {
                'A' => Ok(ResolutionLabel::A),
                'B' => Ok(ResolutionLabel::B),
                _ => Err(Error::BadCharacter { ch, pos }),
            })
            .collect::<Result<_>>()?;
        Ok(KauffmanState { labels })
    }

    /// The `index`-th of the `2^n` states in lexicographic order with `A < B`.
    pub fn from_index(n: usize, index: u64) -> Self {
        let labels = (0..n)
            .map(|i| if index >> (n - 1 - i) & 1 == 1 { ResolutionLabel::B } else { ResolutionLabel::A })
            .collect();
        KauffmanState { labels }
    }

    pub fn labels(&self) -> &[ResolutionLabel] {
        &self.labels
    }

    pub fn label(&self, crossing: usize) -> ResolutionLabel {
        self.labels[crossing]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Swap A and B at every crossing.
    pub fn swapped(&self) -> Self {
        KauffmanState { labels: self.labels.iter().map(|l| l.swapped()).collect() }
    }

    pub fn is_uniform(&self) -> bool {
        self.labels.windows(2).all(|w| w[0] == w[1])
    }

    fn check_len(&self, diagram: &Diagram) -> Result<()> {
        if self.len() != diagram.crossing_count() {
            return Err(Error::LengthMismatch { expected: diagram.crossing_count(), got: self.len() });
        }
        Ok(())
    }
}

impl fmt::Display for KauffmanState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.labels {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

pub fn make_state(diagram: &Diagram, spec: StateSpec<'_>) -> Result<KauffmanState> {
    let n = diagram.crossing_count();
    let state = match spec {
        StateSpec::Explicit(text) => KauffmanState::parse(text)?,
        StateSpec::AllA => KauffmanState::uniform(n, ResolutionLabel::A),
        StateSpec::AllB => KauffmanState::uniform(n, ResolutionLabel::B),
    };
    state.check_len(diagram)?;
    Ok(state)
}

/// The state whose smoothing joins every incoming strand to an outgoing one.
///
/// A with slots `(0,1)` respects orientation exactly when the over-strand
/// leaves through slot 1, i.e. at positive crossings.
pub fn seifert_state(diagram: &Diagram) -> KauffmanState {
    let labels = (0..diagram.crossing_count())
        .map(|c| if diagram.over_enters_at_slot3(c) { ResolutionLabel::A } else { ResolutionLabel::B })
        .collect();
    KauffmanState { labels }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Circle {
    pub id: usize,
    /// Darts through which the circle leaves each crossing, in traversal order.
    pub darts: Vec<Dart>,
}

/// A connected component of the plane minus the state circles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    pub id: usize,
    /// Diagram faces merged into this region.
    pub faces: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Band {
    pub crossing: usize,
    pub label: ResolutionLabel,
    /// Circle of the smoothing arc through slot 0, then circle of the other arc.
    pub circles: (usize, usize),
    pub region: usize,
    /// One dart on each smoothing arc (slot 0 and its opposite arc).
    pub attachment_darts: [Dart; 2],
}

impl Band {
    pub fn is_self_loop(&self) -> bool {
        self.circles.0 == self.circles.1
    }

    /// Endpoints as an unordered pair.
    pub fn endpoints(&self) -> (usize, usize) {
        let (a, b) = self.circles;
        (a.min(b), a.max(b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AttachmentEvent {
    pub crossing: usize,
    pub label: ResolutionLabel,
    pub other_circle: usize,
    pub region: usize,
    /// Side of the band relative to the circle's traversal direction.
    pub band_on_left: bool,
}

/// One passage of a face boundary along a band core, from one circle to another.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BandStep {
    pub band: usize,
    pub from: usize,
    pub to: usize,
}

/// Boundary of a face of the circles-plus-band-cores plane map (these faces
/// coincide with the diagram's faces), with circle arcs contracted.
///
/// Walks keep the face on the right, so bounded faces run clockwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceWalk {
    pub face: usize,
    pub region: usize,
    pub outer: bool,
    pub steps: Vec<BandStep>,
}

/// The result of smoothing every crossing of a diagram.
#[derive(Clone, Debug, Serialize)]
pub struct SmoothedMap {
    pub crossing_count: usize,
    pub circles: Vec<Circle>,
    pub regions: Vec<Region>,
    pub outer_region: usize,
    pub bands: Vec<Band>,
    pub attachment_sequences: Vec<Vec<AttachmentEvent>>,
    pub face_walks: Vec<FaceWalk>,
    /// Link components, i.e. boundary components of the state surface.
    pub link_components: usize,
    #[serde(skip)]
    dart_circle: Vec<usize>,
    #[serde(skip)]
    boundary_components: usize,
}

impl SmoothedMap {
    /// Circle containing the edge of dart `d`.
    pub fn circle_of_dart(&self, d: Dart) -> usize {
        self.dart_circle[d.0]
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

pub fn smooth(diagram: &Diagram, state: &KauffmanState) -> Result<SmoothedMap> {
    state.check_len(diagram)?;
    let n = diagram.crossing_count();
    let total = diagram.dart_count();
    let partner = |d: Dart| Dart::new(d.crossing(), state.label(d.crossing()).partner(d.slot()));
    let next = |d: Dart| partner(diagram.alpha(d));

    // orbits of `next`; each circle yields two, one per direction
    let mut orbit_of = vec![usize::MAX; total];
    let mut orbits: Vec<Vec<Dart>> = Vec::new();
    for s in 0..total {
        if orbit_of[s] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = Vec::new();
        let mut d = Dart(s);
        while orbit_of[d.0] == usize::MAX {
            orbit_of[d.0] = id;
            orbit.push(d);
            d = next(d);
        }
        orbits.push(orbit);
    }
    let mut circle_orbits: Vec<usize> = Vec::new();
    let mut orbit_taken = vec![false; orbits.len()];
    // scanning darts upward means each circle is met first through its lowest dart
    for s in 0..total {
        let o = orbit_of[s];
        if orbit_taken[o] {
            continue;
        }
        let reverse = orbit_of[diagram.alpha(Dart(s)).0];
        orbit_taken[o] = true;
        orbit_taken[reverse] = true;
        circle_orbits.push(o);
    }
    let mut dart_circle = vec![0; total];
    let circles: Vec<Circle> = circle_orbits
        .iter()
        .enumerate()
        .map(|(id, &o)| {
            for &d in &orbits[o] {
                dart_circle[d.0] = id;
                dart_circle[diagram.alpha(d).0] = id;
            }
            Circle { id, darts: orbits[o].clone() }
        })
        .collect();

    // regions: diagram faces glued through each band channel
    let nf = diagram.faces().len();
    let mut uf = UnionFind::new(nf);
    for c in 0..n {
        let [p, q] = state.label(c).open_corners();
        uf.union(diagram.face_at_corner(c, p), diagram.face_at_corner(c, q));
    }
    let mut regions: Vec<Region> = Vec::new();
    let mut root_region = vec![usize::MAX; nf];
    let region_of_face: Vec<usize> = (0..nf)
        .map(|f| {
            let r = uf.find(f);
            if root_region[r] == usize::MAX {
                root_region[r] = regions.len();
                regions.push(Region { id: regions.len(), faces: Vec::new() });
            }
            regions[root_region[r]].faces.push(f);
            root_region[r]
        })
        .collect();
    let outer_region = region_of_face[diagram.outer_face()];

    let bands: Vec<Band> = (0..n)
        .map(|c| {
            let label = state.label(c);
            let d0 = Dart::new(c, 0);
            let d1 = Dart::new(c, if label == ResolutionLabel::A { 2 } else { 1 });
            let [p, _] = label.open_corners();
            Band {
                crossing: c,
                label,
                circles: (dart_circle[d0.0], dart_circle[d1.0]),
                region: region_of_face[diagram.face_at_corner(c, p)],
                attachment_darts: [d0, d1],
            }
        })
        .collect();

    let attachment_sequences = circles
        .iter()
        .map(|circle| {
            let m = circle.darts.len();
            (0..m)
                .map(|k| {
                    let leave = circle.darts[k];
                    let arrive = diagram.alpha(circle.darts[(k + m - 1) % m]);
                    debug_assert_eq!(partner(arrive), leave);
                    let c = leave.crossing();
                    let band = &bands[c];
                    let label = band.label;
                    let on_first_arc = arrive.slot() == 0 || arrive.slot() == label.partner(0);
                    let other_circle = if on_first_arc { band.circles.1 } else { band.circles.0 };
                    AttachmentEvent {
                        crossing: c,
                        label,
                        other_circle,
                        region: band.region,
                        band_on_left: leave.slot() == (arrive.slot() + 1) % 4,
                    }
                })
                .collect()
        })
        .collect();

    let face_walks = diagram
        .faces()
        .iter()
        .map(|face| {
            let steps = face
                .boundary
                .iter()
                .filter_map(|&d| {
                    let arrive = diagram.alpha(d);
                    let c = arrive.crossing();
                    state.label(c).is_open_corner(arrive.slot()).then(|| BandStep {
                        band: c,
                        from: dart_circle[arrive.0],
                        to: dart_circle[arrive.rotate(1).0],
                    })
                })
                .collect();
            FaceWalk { face: face.id, region: region_of_face[face.id], outer: face.id == diagram.outer_face(), steps }
        })
        .collect();

    // the surface boundary follows each edge and crosses each band along a
    // twisted side, which exits through the opposite slot
    let mut seen = vec![false; total];
    let mut boundary_orbits = 0;
    for s in 0..total {
        if seen[s] {
            continue;
        }
        boundary_orbits += 1;
        let mut d = Dart(s);
        while !seen[d.0] {
            seen[d.0] = true;
            d = diagram.alpha(d).rotate(2);
        }
    }

    Ok(SmoothedMap {
        crossing_count: n,
        circles,
        regions,
        outer_region,
        bands,
        attachment_sequences,
        face_walks,
        link_components: diagram.components().len(),
        dart_circle,
        boundary_components: boundary_orbits / 2,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub euler_characteristic: i64,
    pub first_betti: i64,
    pub boundary_components: usize,
    pub orientable: bool,
}

pub fn surface_invariants(smoothed: &SmoothedMap) -> SurfaceInvariants {
    let c = smoothed.circle_count();
    let n = smoothed.crossing_count;
    let mut uf = UnionFind::new(c);
    for b in &smoothed.bands {
        uf.union(b.circles.0, b.circles.1);
    }
    let components = (0..c).filter(|&v| uf.find(v) == v).count();
    SurfaceInvariants {
        euler_characteristic: c as i64 - n as i64,
        first_betti: n as i64 - c as i64 + components as i64,
        boundary_components: smoothed.boundary_components,
        orientable: two_colour(c, smoothed.bands.iter().map(|b| b.circles)).is_some(),
    }
}

/// Proper 2-colouring of a multigraph given by its edges, if one exists.
pub(crate) fn two_colour(vertices: usize, edges: impl Iterator<Item = (usize, usize)>) -> Option<Vec<bool>> {
    let mut adj = vec![Vec::new(); vertices];
    for (a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut colour: Vec<Option<bool>> = vec![None; vertices];
    for s in 0..vertices {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(true);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let cv = colour[v].expect("coloured");
            for &w in &adj[v] {
                match colour[w] {
                    None => {
                        colour[w] = Some(!cv);
                        stack.push(w);
                    }
                    Some(cw) if cw == cv => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(colour.into_iter().map(|c| c.expect("coloured")).collect())
}

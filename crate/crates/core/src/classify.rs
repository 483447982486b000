//! Alternating and homogeneous states, with checkable witnesses.

use serde::Serialize;

use crate::error::Result;
use crate::state::SmoothedMap;
use crate::stategraph::StateGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WitnessKind {
    AlternatingViolation,
    HomogeneityViolation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationWitness {
    pub kind: WitnessKind,
    /// Circle along which the two events are consecutive (alternating only).
    pub circle: Option<usize>,
    pub region: usize,
    /// The two offending bands, by crossing id.
    pub events: Vec<usize>,
}

/// Which pairs of attachment events count as consecutive.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Consecutive {
    /// Consecutive within the circle's events lying in one region.
    #[default]
    WithinRegion,
    /// Adjacent on the circle with no other event in between.
    Strict,
}

impl ClassificationWitness {
    /// Re-check the violation against `smoothed`.
    pub fn replay(&self, smoothed: &SmoothedMap) -> bool {
        let [a, b] = self.events[..] else {
            return false;
        };
        let (Some(ba), Some(bb)) = (smoothed.bands.get(a), smoothed.bands.get(b)) else {
            return false;
        };
        if ba.region != self.region || bb.region != self.region {
            return false;
        }
        match self.kind {
            WitnessKind::HomogeneityViolation => ba.label != bb.label,
            WitnessKind::AlternatingViolation => {
                let Some(c) = self.circle else {
                    return false;
                };
                let touches = |band: &crate::state::Band| band.circles.0 == c || band.circles.1 == c;
                let in_region: Vec<usize> = smoothed.attachment_sequences[c]
                    .iter()
                    .filter(|ev| ev.region == self.region)
                    .map(|ev| ev.crossing)
                    .collect();
                let m = in_region.len();
                let adjacent = (0..m).any(|k| {
                    let (x, y) = (in_region[k], in_region[(k + 1) % m]);
                    (x == a && y == b) || (x == b && y == a)
                });
                touches(ba) && touches(bb) && adjacent && ba.label == bb.label && ba.endpoints() != bb.endpoints()
            }
        }
    }
}

/// Pairs of cyclically consecutive positions in a sequence of length `m`.
fn cyclic_pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    let count = match m {
        0 | 1 => 0,
        2 => 1,
        _ => m,
    };
    (0..count).map(move |k| (k, (k + 1) % m))
}

pub fn is_alternating_state(smoothed: &SmoothedMap) -> (bool, Option<ClassificationWitness>) {
    is_alternating_state_with(smoothed, Consecutive::WithinRegion)
}

pub fn is_alternating_state_with(smoothed: &SmoothedMap, mode: Consecutive) -> (bool, Option<ClassificationWitness>) {
    for (c, seq) in smoothed.attachment_sequences.iter().enumerate() {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        match mode {
            Consecutive::WithinRegion => {
                for region in 0..smoothed.regions.len() {
                    let idx: Vec<usize> = (0..seq.len()).filter(|&k| seq[k].region == region).collect();
                    pairs.extend(cyclic_pairs(idx.len()).map(|(i, j)| (idx[i], idx[j])));
                }
                pairs.sort_unstable();
            }
            Consecutive::Strict => {
                pairs.extend(cyclic_pairs(seq.len()).filter(|&(i, j)| seq[i].region == seq[j].region));
            }
        }
        for (i, j) in pairs {
            let (x, y) = (&seq[i], &seq[j]);
            let (bx, by) = (&smoothed.bands[x.crossing], &smoothed.bands[y.crossing]);
            if x.label == y.label && bx.endpoints() != by.endpoints() {
                let witness = ClassificationWitness {
                    kind: WitnessKind::AlternatingViolation,
                    circle: Some(c),
                    region: x.region,
                    events: vec![x.crossing, y.crossing],
                };
                return (false, Some(witness));
            }
        }
    }
    (true, None)
}

pub fn is_homogeneous_state(smoothed: &SmoothedMap) -> (bool, Option<ClassificationWitness>) {
    let mut first: Vec<Option<usize>> = vec![None; smoothed.regions.len()];
    for band in &smoothed.bands {
        match first[band.region] {
            None => first[band.region] = Some(band.crossing),
            Some(f) if smoothed.bands[f].label != band.label => {
                let witness = ClassificationWitness {
                    kind: WitnessKind::HomogeneityViolation,
                    circle: None,
                    region: band.region,
                    events: vec![f, band.crossing],
                };
                return (false, Some(witness));
            }
            Some(_) => {}
        }
    }
    (true, None)
}

/// Every 2-connected block of the graph carries a single label.
pub fn homogeneous_by_blocks(graph: &StateGraph) -> Result<bool> {
    graph.require_connected()?;
    Ok(graph.blocks().iter().all(|block| {
        let label = |id: &usize| graph.edge(*id).map(|e| e.label);
        block.windows(2).all(|w| label(&w[0]) == label(&w[1]))
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub alternating: bool,
    pub homogeneous: bool,
    pub witnesses: Vec<ClassificationWitness>,
}

pub fn classify(smoothed: &SmoothedMap) -> ClassificationReport {
    let (alternating, wa) = is_alternating_state(smoothed);
    let (homogeneous, wh) = is_homogeneous_state(smoothed);
    ClassificationReport { alternating, homogeneous, witnesses: wa.into_iter().chain(wh).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::state::{make_state, seifert_state, smooth, KauffmanState, StateSpec};
    use crate::stategraph::build_graph;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn uniform_states_are_homogeneous() {
        let d = parse_pd(TREFOIL).unwrap();
        for spec in [StateSpec::AllA, StateSpec::AllB] {
            let s = smooth(&d, &make_state(&d, spec).unwrap()).unwrap();
            assert_eq!(is_homogeneous_state(&s), (true, None));
        }
    }

    #[test]
    fn trefoil_seifert_is_both() {
        let d = parse_pd(TREFOIL).unwrap();
        let s = smooth(&d, &seifert_state(&d)).unwrap();
        let r = classify(&s);
        assert!(r.alternating && r.homogeneous, "{r:?}");
        assert!(homogeneous_by_blocks(&build_graph(&s)).unwrap());
    }

    #[test]
    fn witnesses_replay() {
        let d = parse_pd(TREFOIL).unwrap();
        for i in 0..8 {
            let s = smooth(&d, &KauffmanState::from_index(3, i)).unwrap();
            for w in classify(&s).witnesses {
                assert!(w.replay(&s), "{w:?}");
            }
        }
    }

    #[test]
    fn cyclic_pair_counts() {
        assert_eq!(cyclic_pairs(1).count(), 0);
        assert_eq!(cyclic_pairs(2).collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(cyclic_pairs(3).count(), 3);
    }
}

//! Boundary-curve tracing on the banded surface of a chord diagram.
//!
//! Attach a band to a disk for each chord, with a half twist when the chord
//! is marked, and count the boundary circles of the result. This is the
//! independent oracle behind the adjacency-rank identities: no linear
//! algebra is involved, only the combinatorial walk along arcs and bands.

use crate::diagram::MarkedChordDiagram;

/// One step of a boundary walk: which circle arc was traversed, and whether
/// against the circle's own orientation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ArcStep {
    pub arc: usize,
    pub reversed: bool,
}

/// All boundary circles of the banded surface, each as its arc itinerary.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SurgeryTrace {
    cycles: Vec<Vec<ArcStep>>,
}

impl SurgeryTrace {
    pub fn components(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycles(&self) -> &[Vec<ArcStep>] {
        &self.cycles
    }
}

/// Walk every boundary circle. Arcs between consecutive endpoints are
/// numbered `0..2k`, arc `i` running from endpoint `i` to endpoint `i+1`
/// counterclockwise; each arc lies on exactly one boundary circle.
pub fn surgery_trace(d: &MarkedChordDiagram) -> SurgeryTrace {
    let m = 2 * d.degree();
    if m == 0 {
        // A bare disk: one boundary circle visiting no arcs.
        return SurgeryTrace {
            cycles: vec![Vec::new()],
        };
    }
    let partners = d.endpoint_partners();
    let word = d.word();

    let mut used = vec![false; m];
    let mut cycles = Vec::new();
    for start in 0..m {
        if used[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let (mut arc, mut reversed) = (start, false);
        loop {
            assert!(!used[arc], "arc {arc} visited twice while tracing boundary");
            used[arc] = true;
            cycle.push(ArcStep { arc, reversed });

            // The endpoint this step runs into, then its partner across the
            // chord (the far end of the band).
            let endpoint = if reversed { arc } else { (arc + 1) % m };
            let partner = partners[endpoint];
            // A plain band preserves the travel sense along the circle; a
            // half-twisted band reverses it.
            let flip = d.is_marked(word[endpoint]);
            let outgoing = reversed == flip;
            let next = if outgoing {
                (partner, false)
            } else {
                ((partner + m - 1) % m, true)
            };
            if next == (start, false) {
                break;
            }
            (arc, reversed) = next;
        }
        cycles.push(cycle);
    }
    assert!(used.iter().all(|&u| u));
    SurgeryTrace { cycles }
}

/// Number of boundary circles of the banded surface.
pub fn boundary_components(d: &MarkedChordDiagram) -> usize {
    surgery_trace(d).components()
}

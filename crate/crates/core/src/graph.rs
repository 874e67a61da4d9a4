//! Marked graphs and the intersection-graph functor on chord diagrams.
//!
//! Adjacency is stored as one bitmask per vertex; vertex marks mirror chord
//! marks. Canonical forms (minimum over all vertex relabelings) make formal
//! combinations of graphs mergeable.

use rand::Rng;

use crate::combination::Combination;
use crate::diagram::MarkedChordDiagram;
use crate::error::{Error, Result};

/// Simple undirected graph with a mark bit per vertex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MarkedGraph {
    order: usize,
    adj: Vec<u64>,
    marks: u64,
}

/// Largest order for which canonicalization (minimum over all `n!`
/// relabelings) is still reasonable.
const MAX_CANONICAL_ORDER: usize = 10;

impl MarkedGraph {
    /// Edgeless unmarked graph on `order` vertices.
    pub fn new(order: usize) -> Self {
        assert!(order <= 63, "graph order exceeds bitmask width");
        MarkedGraph {
            order,
            adj: vec![0; order],
            marks: 0,
        }
    }

    pub fn with_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(order);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::IdenticalIndices {
                    operation: "edge insertion",
                    index: u,
                });
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order {
            Err(Error::VertexOutOfRange {
                index: v,
                order: self.order,
            })
        } else {
            Ok(())
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        debug_assert!(u != v && u < self.order && v < self.order);
        if present {
            self.adj[u] |= 1 << v;
            self.adj[v] |= 1 << u;
        } else {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        self.set_edge(u, v, !self.has_edge(u, v));
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn is_marked(&self, v: usize) -> bool {
        self.marks >> v & 1 == 1
    }

    pub fn marks_mask(&self) -> u64 {
        self.marks
    }

    pub fn is_unmarked(&self) -> bool {
        self.marks == 0
    }

    pub fn with_marks(&self, marks: u64) -> Self {
        assert!(
            self.order == 64 || marks >> self.order == 0,
            "mark mask references absent vertices"
        );
        MarkedGraph {
            order: self.order,
            adj: self.adj.clone(),
            marks,
        }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order {
            for v in u + 1..self.order {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.contains(&0) && self.order > 0
    }

    /// Induced subgraph on the vertex set `mask`, relabeled in ascending
    /// order of the original indices.
    pub fn induced_subgraph(&self, mask: u64) -> Result<Self> {
        if self.order < 64 && mask >> self.order != 0 {
            return Err(Error::VertexOutOfRange {
                index: (64 - mask.leading_zeros() - 1) as usize,
                order: self.order,
            });
        }
        Ok(self.induced(mask))
    }

    pub(crate) fn induced(&self, mask: u64) -> Self {
        let verts: Vec<usize> = (0..self.order).filter(|&v| mask >> v & 1 == 1).collect();
        let mut g = Self::new(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j, true);
                }
            }
            if self.is_marked(u) {
                g.marks |= 1 << i;
            }
        }
        g
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let n = self.order;
        let mut g = Self::new(n + other.order);
        g.adj[..n].copy_from_slice(&self.adj);
        for (i, &row) in other.adj.iter().enumerate() {
            g.adj[n + i] = row << n;
        }
        g.marks = self.marks | other.marks << n;
        g
    }

    /// Graph comultiplication: sum over vertex subsets `J` of
    /// `(G minus J) ⊗ (G restricted to J)`, coefficients +1.
    pub fn coproduct(&self) -> Combination<(Self, Self)> {
        let full = if self.order == 0 {
            0
        } else {
            (1u64 << self.order) - 1
        };
        let mut out = Combination::new();
        for subset in 0..=full {
            let left = self.induced(full & !subset).canonical();
            let right = self.induced(subset).canonical();
            out.add_term((left, right), 1);
            if full == 0 {
                break;
            }
        }
        out
    }

    /// The marking map on graphs: alternating sum over vertex-mark subsets
    /// of an unmarked graph.
    pub fn marking_expansion(&self) -> Result<Combination<Self>> {
        if !self.is_unmarked() {
            return Err(Error::MarkedInput {
                operation: "graph marking_expansion",
            });
        }
        let full = if self.order == 0 {
            0
        } else {
            (1u64 << self.order) - 1
        };
        let mut out = Combination::new();
        for subset in 0..=full {
            let sign = if subset.count_ones() % 2 == 0 { 1 } else { -1 };
            out.add_term(self.with_marks(subset).canonical(), sign);
            if full == 0 {
                break;
            }
        }
        Ok(out)
    }

    /// The neighborhood-toggle move underlying the graph four-term relation:
    /// complements the edge `a–c` for every `c` adjacent to `b` (other than
    /// `a` itself), leaving the `a–b` edge as it was.
    pub fn neighborhood_toggle(&self, a: usize, b: usize) -> Result<Self> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(Error::IdenticalIndices {
                operation: "neighborhood_toggle",
                index: a,
            });
        }
        let mut g = self.clone();
        let mut targets = self.neighbors(b) & !(1 << a) & !(1 << b);
        while targets != 0 {
            let c = targets.trailing_zeros() as usize;
            targets &= targets - 1;
            g.toggle_edge(a, c);
        }
        Ok(g)
    }

    /// Lando's four-term combination at an ordered vertex pair:
    /// `G - G' - G~ + G~'`, where `G'` toggles the edge `a–b`, `G~` toggles
    /// `a` against the neighborhood of `b`, and `G~'` does both.
    pub fn lando_four_term(&self, a: usize, b: usize) -> Result<Combination<Self>> {
        let tilde = self.neighborhood_toggle(a, b)?;
        let mut prime = self.clone();
        prime.toggle_edge(a, b);
        let mut tilde_prime = tilde.clone();
        tilde_prime.toggle_edge(a, b);
        let mut out = Combination::new();
        out.add_term(self.canonical(), 1);
        out.add_term(prime.canonical(), -1);
        out.add_term(tilde.canonical(), -1);
        out.add_term(tilde_prime.canonical(), 1);
        Ok(out)
    }

    fn key_under(&self, perm: &[usize]) -> u64 {
        let n = self.order;
        let mut key = 0u64;
        let mut bit = 0;
        for &v in perm {
            if self.is_marked(v) {
                key |= 1 << bit;
            }
            bit += 1;
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.has_edge(perm[i], perm[j]) {
                    key |= 1 << bit;
                }
                bit += 1;
            }
        }
        key
    }

    fn apply_relabeling(&self, perm: &[usize]) -> Self {
        let mut g = Self::new(self.order);
        for i in 0..self.order {
            for j in i + 1..self.order {
                if self.has_edge(perm[i], perm[j]) {
                    g.set_edge(i, j, true);
                }
            }
            if self.is_marked(perm[i]) {
                g.marks |= 1 << i;
            }
        }
        g
    }

    /// Canonical form: the relabeling with the smallest packed
    /// (marks, upper-triangle) bit key. Exponential in the order, which is
    /// fine for the small graphs formal combinations are built from.
    pub fn canonical(&self) -> Self {
        let n = self.order;
        assert!(
            n <= MAX_CANONICAL_ORDER,
            "canonical form needs n! relabelings"
        );
        if n <= 1 {
            return self.clone();
        }
        let mut best_key = u64::MAX;
        let mut best_perm = vec![0; n];
        let mut perm: Vec<usize> = (0..n).collect();
        heap_permutations(&mut perm, n, &mut |p| {
            let key = self.key_under(p);
            if key < best_key {
                best_key = key;
                best_perm.copy_from_slice(p);
            }
        });
        self.apply_relabeling(&best_perm)
    }

    /// Erdos–Renyi style random graph with edge probability 1/2 and
    /// unmarked vertices.
    pub fn random(rng: &mut impl Rng, order: usize) -> Self {
        let mut g = Self::new(order);
        for u in 0..order {
            for v in u + 1..order {
                if rng.random_bool(0.5) {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }

    /// Every isomorphism class of unmarked graph on `order` vertices.
    pub fn enumerate(order: usize) -> Vec<Self> {
        assert!(order <= 6, "graph enumeration is doubly exponential");
        let pairs: Vec<(usize, usize)> = (0..order)
            .flat_map(|u| (u + 1..order).map(move |v| (u, v)))
            .collect();
        let mut seen = std::collections::BTreeSet::new();
        for mask in 0u64..1 << pairs.len() {
            let mut g = Self::new(order);
            for (bit, &(u, v)) in pairs.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    g.set_edge(u, v, true);
                }
            }
            seen.insert(g.canonical());
        }
        seen.into_iter().collect()
    }
}

fn heap_permutations(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        f(perm);
        return;
    }
    for i in 0..k {
        heap_permutations(perm, k - 1, f);
        if k.is_multiple_of(2) {
            perm.swap(i, k - 1);
        } else {
            perm.swap(0, k - 1);
        }
    }
}

/// The intersection graph: one vertex per chord, an edge whenever the
/// chords' endpoints alternate around the circle, marks carried over.
pub fn intersection_graph(d: &MarkedChordDiagram) -> MarkedGraph {
    let k = d.degree();
    let mut g = MarkedGraph::new(k);
    let endpoints: Vec<(usize, usize)> = (1..=k as u8).map(|l| d.chord_endpoints(l)).collect();
    for u in 0..k {
        let (a1, a2) = endpoints[u];
        for (v, &(b1, b2)) in endpoints.iter().enumerate().skip(u + 1) {
            let inside1 = a1 < b1 && b1 < a2;
            let inside2 = a1 < b2 && b2 < a2;
            if inside1 != inside2 {
                g.set_edge(u, v, true);
            }
        }
        if d.is_marked(u as u8 + 1) {
            g.marks |= 1 << u;
        }
    }
    g
}

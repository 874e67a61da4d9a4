//! Relations between diagrams — endpoint slides, four-term combinations,
//! and the one-term family — together with generators that enumerate every
//! instance at a fixed degree, vanishing checks for the weight systems, the
//! caravan normal form, and an exact rational span engine for membership
//! and quotient-dimension questions.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigRational, Zero};

use crate::combination::Combination;
use crate::diagram::MarkedChordDiagram;
use crate::error::{Error, Result};
use crate::exec;
use crate::gf2::{CaravanClass, Gf2SymmetricMatrix};
use crate::graph::intersection_graph;
use crate::poly::BivariatePolynomial;
use crate::weights::Functional;

// ---------------------------------------------------------------------------
// Slides and four-term combinations
// ---------------------------------------------------------------------------

fn slide_site(d: &MarkedChordDiagram, a: usize, b: usize, forward: bool) -> Result<(u8, u8)> {
    let m = d.word().len();
    if m == 0 {
        return Err(Error::InvalidSlide("diagram has no chords".into()));
    }
    if a >= m || b >= m {
        return Err(Error::InvalidSlide(format!(
            "positions {a}, {b} out of range for {m} endpoints"
        )));
    }
    let adjacent = if forward {
        (a + 1) % m == b
    } else {
        (b + 1) % m == a
    };
    if !adjacent {
        return Err(Error::InvalidSlide(format!(
            "positions {a} and {b} are not cyclically adjacent in that order"
        )));
    }
    let chord_a = d.chord_at(a);
    let chord_b = d.chord_at(b);
    if chord_a == chord_b {
        return Err(Error::InvalidSlide(format!(
            "endpoints at {a} and {b} belong to the same chord"
        )));
    }
    Ok((chord_a, chord_b))
}

fn slide_words(
    d: &MarkedChordDiagram,
    a: usize,
    b: usize,
    after_far_end: bool,
) -> MarkedChordDiagram {
    let chord_a = d.chord_at(a);
    let chord_b = d.chord_at(b);
    let (b1, b2) = d.chord_endpoints(chord_b);
    let far = if b1 == b { b2 } else { b1 };
    let mut word: Vec<u8> = d.word().to_vec();
    word.remove(a);
    let target = if a < far { far - 1 } else { far };
    let insert_at = if after_far_end { target + 1 } else { target };
    word.insert(insert_at, chord_a);
    let marks = if d.is_marked(chord_b) {
        d.marks_mask() ^ 1 << (chord_a - 1)
    } else {
        d.marks_mask()
    };
    MarkedChordDiagram::from_raw(&word, marks)
}

/// Slides the endpoint at position `a` across the chord whose endpoint sits
/// immediately after it at position `b`: the endpoint is removed and
/// reinserted just past that chord's far end. When the crossed chord is
/// marked, the endpoint lands just before the far end instead and the
/// sliding chord's own mark is toggled.
pub fn slide(d: &MarkedChordDiagram, a: usize, b: usize) -> Result<MarkedChordDiagram> {
    let (_, chord_b) = slide_site(d, a, b, true)?;
    Ok(slide_words(d, a, b, !d.is_marked(chord_b)))
}

/// The reverse move: slides the endpoint at position `a` across the chord
/// whose endpoint sits immediately before it at position `b`, landing just
/// before that chord's far end (just after it, with a mark toggle, when the
/// crossed chord is marked).
pub fn slide_back(d: &MarkedChordDiagram, a: usize, b: usize) -> Result<MarkedChordDiagram> {
    let (_, chord_b) = slide_site(d, a, b, false)?;
    Ok(slide_words(d, a, b, d.is_marked(chord_b)))
}

/// Every position pair `(a, b)` at which [`slide`] is defined.
pub fn slide_sites(d: &MarkedChordDiagram) -> Vec<(usize, usize)> {
    let m = d.word().len();
    (0..m)
        .filter_map(|a| {
            let b = (a + 1) % m;
            (d.chord_at(a) != d.chord_at(b)).then_some((a, b))
        })
        .collect()
}

/// The alternating four-diagram combination obtained by placing the
/// endpoint at position `a` on either side of both endpoints of the
/// adjacent chord at position `b`: `+` just before the near end, `-` just
/// after it, `-` just after the far end, `+` just before the far end.
/// Every term is canonicalized; the input term reappears with sign `+`.
pub fn four_term_combination(
    d: &MarkedChordDiagram,
    a: usize,
    b: usize,
) -> Result<Combination<MarkedChordDiagram>> {
    if !d.is_unmarked() {
        return Err(Error::MarkedInput {
            operation: "four_term_combination",
        });
    }
    let m = d.word().len();
    if m == 0 || (a + 1) % m != b || a >= m {
        return Err(Error::InvalidFourTerm(format!(
            "positions {a} and {b} are not cyclically adjacent in that order"
        )));
    }
    let chord_a = d.chord_at(a);
    let chord_b = d.chord_at(b);
    if chord_a == chord_b {
        return Err(Error::InvalidFourTerm(format!(
            "endpoints at {a} and {b} belong to the same chord"
        )));
    }
    let (b1, b2) = d.chord_endpoints(chord_b);
    let far = if b1 == b { b2 } else { b1 };
    let mut base: Vec<u8> = d.word().to_vec();
    base.remove(a);
    let near = if a < b { b - 1 } else { b };
    let far = if a < far { far - 1 } else { far };
    let mut out = Combination::new();
    for (insert_at, coeff) in [(near, 1), (near + 1, -1), (far + 1, -1), (far, 1)] {
        let mut word = base.clone();
        word.insert(insert_at, chord_a);
        out.add_term(MarkedChordDiagram::from_raw(&word, 0).canonical(), coeff);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Relation families
// ---------------------------------------------------------------------------

/// The families of linear relations imposed on diagram spans.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum RelationKind {
    /// A single diagram containing a chord that crosses nothing.
    OneTerm,
    /// The alternating four-diagram combination.
    FourTerm,
    /// Difference of a diagram and an endpoint slide of it.
    TwoTerm,
    /// The same differences taken over marked diagrams.
    ExtendedTwoTerm,
}

impl RelationKind {
    pub const ALL: [RelationKind; 4] = [
        RelationKind::OneTerm,
        RelationKind::FourTerm,
        RelationKind::TwoTerm,
        RelationKind::ExtendedTwoTerm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::OneTerm => "1t",
            RelationKind::FourTerm => "4t",
            RelationKind::TwoTerm => "2t",
            RelationKind::ExtendedTwoTerm => "ext2t",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        RelationKind::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::UnknownRelationKind(name.to_string()))
    }

    /// Whether the relation family ranges over marked diagrams.
    pub fn marked(self) -> bool {
        matches!(self, RelationKind::ExtendedTwoTerm)
    }

    fn degree_cap(self) -> usize {
        if self.marked() {
            4
        } else {
            6
        }
    }
}

impl std::str::FromStr for RelationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RelationKind::parse(s)
    }
}

impl std::fmt::Display for RelationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Every instance of the given relation family at degree `n`, over the
/// canonical (marked, for the extended family) diagrams of that degree.
/// Instances that cancel to the zero combination are kept, so the count is
/// the number of generation sites rather than of distinct relations.
pub fn generate_relations(
    n: usize,
    kind: RelationKind,
) -> Result<Vec<Combination<MarkedChordDiagram>>> {
    if n > kind.degree_cap() {
        return Err(Error::DegreeCap {
            requested: n,
            cap: kind.degree_cap(),
            context: "relation generation",
        });
    }
    let mut out = Vec::new();
    match kind {
        RelationKind::OneTerm => {
            for d in MarkedChordDiagram::enumerate(n) {
                if intersection_graph(&d).has_isolated_vertex() {
                    out.push(Combination::singleton(d));
                }
            }
        }
        RelationKind::FourTerm => {
            for d in MarkedChordDiagram::enumerate(n) {
                for (a, b) in slide_sites(&d) {
                    out.push(four_term_combination(&d, a, b)?);
                }
            }
        }
        RelationKind::TwoTerm | RelationKind::ExtendedTwoTerm => {
            let diagrams = if kind.marked() {
                MarkedChordDiagram::enumerate_marked(n)
            } else {
                MarkedChordDiagram::enumerate(n)
            };
            for d in diagrams {
                for (a, b) in slide_sites(&d) {
                    let slid = slide(&d, a, b)?.canonical();
                    let mut relation = Combination::new();
                    relation.add_term(d.clone(), 1);
                    relation.add_term(slid, -1);
                    out.push(relation);
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Vanishing checks
// ---------------------------------------------------------------------------

/// A relation instance on which a functional failed to vanish.
#[derive(Clone, Debug)]
pub struct VanishFailure {
    pub relation: Combination<MarkedChordDiagram>,
    pub value: BivariatePolynomial,
}

/// Outcome of evaluating one functional on every relation instance of one
/// family at one degree.
#[derive(Clone, Debug)]
pub struct VanishReport {
    pub functional: Functional,
    pub kind: RelationKind,
    pub degree: usize,
    pub total: usize,
    pub failures: Vec<VanishFailure>,
}

impl VanishReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates `functional` on every degree-`n` instance of `kind` and
/// collects the instances where the value is nonzero.
pub fn check_vanishing(
    functional: Functional,
    n: usize,
    kind: RelationKind,
) -> Result<VanishReport> {
    let relations = generate_relations(n, kind)?;
    let total = relations.len();
    let outcomes = exec::map(relations, |relation| {
        functional.evaluate_combination(relation).map(|value| {
            if value.is_zero() {
                None
            } else {
                Some(VanishFailure {
                    relation: relation.clone(),
                    value,
                })
            }
        })
    });
    let mut failures = Vec::new();
    for outcome in outcomes {
        if let Some(failure) = outcome? {
            failures.push(failure);
        }
    }
    Ok(VanishReport {
        functional,
        kind,
        degree: n,
        total,
        failures,
    })
}

// ---------------------------------------------------------------------------
// Caravans
// ---------------------------------------------------------------------------

/// The congruence class of the marked adjacency form of the diagram's
/// intersection graph.
pub fn caravan_normal_form(d: &MarkedChordDiagram) -> CaravanClass {
    Gf2SymmetricMatrix::from_graph(&intersection_graph(d)).congruence_class()
}

/// The canonical form of a diagram realizing a caravan class: a connect sum
/// of marked plain bands, plain bands, and crossing pairs.
pub fn caravan_realization(class: &CaravanClass) -> MarkedChordDiagram {
    let mut word = Vec::new();
    let mut marks = 0u64;
    let mut next = 1u8;
    for _ in 0..class.ones {
        word.extend([next, next]);
        marks |= 1 << (next - 1);
        next += 1;
    }
    for _ in 0..class.zeros {
        word.extend([next, next]);
        next += 1;
    }
    for _ in 0..class.hyperbolics {
        word.extend([next, next + 1, next, next + 1]);
        next += 2;
    }
    MarkedChordDiagram::from_raw(&word, marks).canonical()
}

/// All caravan classes of a given degree, in normal form (a class with
/// marked bands carries no crossing pairs), sorted.
pub fn caravan_classes(degree: usize) -> Vec<CaravanClass> {
    let mut out = Vec::new();
    for hyperbolics in 0..=degree / 2 {
        let rest = degree - 2 * hyperbolics;
        for zeros in 0..=rest {
            let ones = rest - zeros;
            if ones > 0 && hyperbolics > 0 {
                continue;
            }
            out.push(CaravanClass {
                ones,
                zeros,
                hyperbolics,
            });
        }
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Span engine
// ---------------------------------------------------------------------------

/// The diagram spans the relation families act on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Space {
    /// Unmarked diagrams modulo one-term and four-term relations.
    A,
    /// Unmarked diagrams modulo slide differences.
    B,
    /// Marked diagrams modulo extended slide differences.
    BMarked,
}

impl Space {
    pub const ALL: [Space; 3] = [Space::A, Space::B, Space::BMarked];

    pub fn name(self) -> &'static str {
        match self {
            Space::A => "a",
            Space::B => "b",
            Space::BMarked => "bm",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Space::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::UnknownSpace(name.to_string()))
    }

    pub fn marked(self) -> bool {
        matches!(self, Space::BMarked)
    }

    /// The relation families that cut out the space's quotient.
    pub fn kinds(self) -> &'static [RelationKind] {
        match self {
            Space::A => &[RelationKind::OneTerm, RelationKind::FourTerm],
            Space::B => &[RelationKind::TwoTerm],
            Space::BMarked => &[RelationKind::ExtendedTwoTerm],
        }
    }

    fn degree_cap(self) -> usize {
        if self.marked() {
            4
        } else {
            5
        }
    }

    fn basis(self, n: usize) -> Vec<MarkedChordDiagram> {
        if self.marked() {
            MarkedChordDiagram::enumerate_marked(n)
        } else {
            MarkedChordDiagram::enumerate(n)
        }
    }
}

impl std::str::FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Space::parse(s)
    }
}

impl std::fmt::Display for Space {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Row-reduced span of relation vectors inside the rational vector space
/// freely generated by the canonical degree-`n` diagrams. Supports exact
/// membership tests and quotient coordinates.
#[derive(Clone, Debug)]
pub struct RelationSpan {
    space: Space,
    degree: usize,
    basis: Vec<MarkedChordDiagram>,
    index: BTreeMap<MarkedChordDiagram, usize>,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
    relation_instances: usize,
}

impl RelationSpan {
    /// Span of every relation family belonging to the space.
    pub fn build(n: usize, space: Space) -> Result<Self> {
        Self::assemble(n, space, space.kinds())
    }

    /// Span of a single family, which must belong to the space.
    pub fn build_kind(n: usize, kind: RelationKind, space: Space) -> Result<Self> {
        if !space.kinds().contains(&kind) {
            return Err(Error::KindSpaceMismatch {
                kind: kind.name(),
                space: space.name(),
            });
        }
        Self::assemble(n, space, &[kind])
    }

    fn assemble(n: usize, space: Space, kinds: &[RelationKind]) -> Result<Self> {
        if n > space.degree_cap() {
            return Err(Error::DegreeCap {
                requested: n,
                cap: space.degree_cap(),
                context: "span analysis",
            });
        }
        let basis = space.basis(n);
        let index: BTreeMap<MarkedChordDiagram, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, d)| (d, i))
            .collect();
        let mut span = RelationSpan {
            space,
            degree: n,
            basis,
            index,
            rows: Vec::new(),
            pivots: Vec::new(),
            relation_instances: 0,
        };
        let mut seen: BTreeSet<Vec<(usize, i64)>> = BTreeSet::new();
        for &kind in kinds {
            for relation in generate_relations(n, kind)? {
                span.relation_instances += 1;
                let mut sparse: Vec<(usize, i64)> = Vec::with_capacity(relation.term_count());
                for (d, c) in relation.iter() {
                    sparse.push((span.index[d], c));
                }
                if sparse.is_empty() {
                    continue;
                }
                if sparse[0].1 < 0 {
                    for entry in &mut sparse {
                        entry.1 = -entry.1;
                    }
                }
                if !seen.insert(sparse.clone()) {
                    continue;
                }
                let mut dense = vec![BigRational::zero(); span.basis.len()];
                for (i, c) in sparse {
                    dense[i] = BigRational::from_integer(c.into());
                }
                span.insert_row(dense);
            }
        }
        Ok(span)
    }

    /// Reduces a coordinate vector by the row-reduced rows; the result is
    /// supported on non-pivot columns only.
    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &factor * r;
                    }
                }
            }
        }
        v
    }

    fn insert_row(&mut self, v: Vec<BigRational>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = v[p].clone();
        for x in &mut v {
            if !x.is_zero() {
                *x = &*x / &lead;
            }
        }
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let factor = row[p].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    if !r.is_zero() {
                        *x -= &factor * r;
                    }
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    fn vector(&self, combination: &Combination<MarkedChordDiagram>) -> Result<Vec<BigRational>> {
        let canonical = combination.map_terms(|d| d.canonical());
        let mut v = vec![BigRational::zero(); self.basis.len()];
        for (d, c) in canonical.iter() {
            let &i = self
                .index
                .get(d)
                .ok_or_else(|| Error::TermOutsideBasis(d.to_string()))?;
            v[i] = BigRational::from_integer(c.into());
        }
        Ok(v)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &[MarkedChordDiagram] {
        &self.basis
    }

    /// Number of generation sites fed into the span, including duplicates
    /// and cancelling instances.
    pub fn relation_instances(&self) -> usize {
        self.relation_instances
    }

    /// Rank of the relation span.
    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Dimension of the quotient of the diagram span by the relations.
    pub fn quotient_dimension(&self) -> usize {
        self.basis.len() - self.rows.len()
    }

    /// Exact membership of a combination in the relation span.
    pub fn contains(&self, combination: &Combination<MarkedChordDiagram>) -> Result<bool> {
        Ok(self
            .reduce(self.vector(combination)?)
            .iter()
            .all(Zero::is_zero))
    }

    /// Coordinates of the combination's class in the quotient, expressed on
    /// the non-pivot basis diagrams. Two combinations are congruent modulo
    /// the relations exactly when their coordinates agree.
    pub fn class_coordinates(
        &self,
        combination: &Combination<MarkedChordDiagram>,
    ) -> Result<Vec<(MarkedChordDiagram, BigRational)>> {
        let reduced = self.reduce(self.vector(combination)?);
        Ok(reduced
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.basis[i].clone(), c))
            .collect())
    }
}

/// Size summary of a relation span, as reported by the command-line tool.
#[derive(Clone, Debug)]
pub struct SpanAnalysis {
    pub space: Space,
    pub degree: usize,
    pub basis_size: usize,
    pub relation_instances: usize,
    pub span_dimension: usize,
    pub quotient_dimension: usize,
}

/// Builds the full relation span of a space and reads off its dimensions.
pub fn span_analysis(n: usize, space: Space) -> Result<SpanAnalysis> {
    let span = RelationSpan::build(n, space)?;
    Ok(SpanAnalysis {
        space,
        degree: n,
        basis_size: span.basis().len(),
        relation_instances: span.relation_instances(),
        span_dimension: span.dimension(),
        quotient_dimension: span.quotient_dimension(),
    })
}

/// Linear extension of the mark-expansion map to combinations of unmarked
/// diagrams.
pub fn marking_image(
    combination: &Combination<MarkedChordDiagram>,
) -> Result<Combination<MarkedChordDiagram>> {
    let mut out = Combination::new();
    for (d, c) in combination.iter() {
        for (m, mc) in d.marking_expansion()?.iter() {
            out.add_term(m.clone(), c * mc);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MarkedGraph;
    use crate::weights::km_value;

    fn d(s: &str) -> MarkedChordDiagram {
        MarkedChordDiagram::parse(s).unwrap()
    }

    #[test]
    fn slide_moves_an_endpoint_across_a_chord() {
        let hexagon = d("1 2 3 1 2 3");
        let slid = slide(&hexagon, 3, 4).unwrap();
        assert_eq!(slid.word(), &[1, 2, 1, 3, 2, 3]);
        assert!(slid.is_unmarked());
        // crossing pair slides back onto itself
        let x = d("1 2 1 2");
        assert!(slide(&x, 0, 1).unwrap().equivalent(&x));
    }

    #[test]
    fn slide_across_a_marked_chord_toggles_the_moving_mark() {
        let start = d("1 2# 1 2");
        let slid = slide(&start, 0, 1).unwrap();
        assert!(slid.equivalent(&d("1# 1 2# 2")));
        // sliding forward again at the landing site undoes the move
        let again = slide(&slid, 2, 3).unwrap();
        assert!(again.equivalent(&start));
    }

    #[test]
    fn slide_rejects_bad_sites() {
        let x = d("1 2 1 2");
        assert!(slide(&x, 0, 2).is_err());
        assert!(slide(&d("1 1 2 2"), 0, 1).is_err());
        assert!(slide(&MarkedChordDiagram::empty(), 0, 0).is_err());
        assert!(slide(&x, 4, 5).is_err());
    }

    #[test]
    fn every_slide_is_reversible() {
        for degree in 2..=3 {
            for diagram in MarkedChordDiagram::enumerate_marked(degree) {
                for (a, b) in slide_sites(&diagram) {
                    let chord_b = diagram.chord_at(b);
                    let (b1, b2) = diagram.chord_endpoints(chord_b);
                    let far = if b1 == b { b2 } else { b1 };
                    let target = if a < far { far - 1 } else { far };
                    let slid = slide(&diagram, a, b).unwrap();
                    let recovered = if diagram.is_marked(chord_b) {
                        slide(&slid, target, target + 1).unwrap()
                    } else {
                        slide_back(&slid, target + 1, target).unwrap()
                    };
                    assert!(
                        recovered.equivalent(&diagram),
                        "slide at ({a}, {b}) of {diagram} not undone"
                    );
                }
            }
        }
    }

    #[test]
    fn slide_acts_on_the_intersection_graph_by_neighborhood_toggle() {
        for degree in 2..=3 {
            for diagram in MarkedChordDiagram::enumerate_marked(degree) {
                for (a, b) in slide_sites(&diagram) {
                    let va = diagram.chord_at(a) as usize - 1;
                    let vb = diagram.chord_at(b) as usize - 1;
                    let graph = intersection_graph(&diagram);
                    let mut predicted = graph.neighborhood_toggle(va, vb).unwrap();
                    if graph.is_marked(vb) {
                        predicted.toggle_edge(va, vb);
                        predicted = predicted.with_marks(predicted.marks_mask() ^ 1 << va);
                    }
                    let actual = intersection_graph(&slide(&diagram, a, b).unwrap());
                    assert_eq!(
                        actual.canonical(),
                        predicted.canonical(),
                        "graph image of slide at ({a}, {b}) of {diagram}"
                    );
                }
            }
        }
    }

    #[test]
    fn four_term_combination_of_the_hexagon() {
        let combo = four_term_combination(&d("1 2 3 1 2 3"), 3, 4).unwrap();
        // the two middle placements are rotations of one another, so their
        // canonical forms merge
        assert!(d("1 2 3 2 1 3").equivalent(&d("1 2 1 3 2 3")));
        let expected: Vec<(&str, i64)> =
            vec![("1 2 3 1 2 3", 1), ("1 2 1 3 2 3", -2), ("1 1 2 3 2 3", 1)];
        assert_eq!(combo.term_count(), 3);
        for (word, coeff) in expected {
            assert_eq!(combo.coefficient(&d(word).canonical()), coeff, "{word}");
        }
        assert_eq!(combo.coefficient_sum(), 0);
        assert!(four_term_combination(&d("1# 2 1 2"), 0, 1).is_err());
        assert!(four_term_combination(&d("1 1 2 2"), 0, 1).is_err());
    }

    #[test]
    fn four_term_projects_to_the_graph_four_term() {
        for diagram in MarkedChordDiagram::enumerate(3) {
            for (a, b) in slide_sites(&diagram) {
                let combo = four_term_combination(&diagram, a, b).unwrap();
                let projected: Combination<MarkedGraph> = combo
                    .iter()
                    .map(|(term, c)| (intersection_graph(term).canonical(), c))
                    .collect();
                let va = diagram.chord_at(a) as usize - 1;
                let vb = diagram.chord_at(b) as usize - 1;
                let graph_side: Combination<MarkedGraph> = intersection_graph(&diagram)
                    .lando_four_term(va, vb)
                    .unwrap()
                    .iter()
                    .map(|(g, c)| (g.canonical(), c))
                    .collect();
                assert_eq!(projected, graph_side, "site ({a}, {b}) of {diagram}");
            }
        }
    }

    #[test]
    fn relation_generation_counts_at_low_degree() {
        assert_eq!(
            generate_relations(1, RelationKind::OneTerm).unwrap().len(),
            1
        );
        assert_eq!(
            generate_relations(2, RelationKind::OneTerm).unwrap().len(),
            1
        );
        assert_eq!(
            generate_relations(2, RelationKind::FourTerm).unwrap().len(),
            6
        );
        let two_term = generate_relations(2, RelationKind::TwoTerm).unwrap();
        assert_eq!(two_term.len(), 6);
        // every degree-2 slide lands back on the same diagram class
        assert!(two_term.iter().all(Combination::is_zero));
        assert!(generate_relations(1, RelationKind::ExtendedTwoTerm)
            .unwrap()
            .is_empty());
        assert!(matches!(
            generate_relations(7, RelationKind::FourTerm),
            Err(Error::DegreeCap { .. })
        ));
        assert!(matches!(
            generate_relations(5, RelationKind::ExtendedTwoTerm),
            Err(Error::DegreeCap { .. })
        ));
    }

    #[test]
    fn vanishing_checks_behave_as_expected() {
        assert!(
            check_vanishing(Functional::Conway, 3, RelationKind::OneTerm)
                .unwrap()
                .passed()
        );
        assert!(
            check_vanishing(Functional::Conway, 3, RelationKind::FourTerm)
                .unwrap()
                .passed()
        );
        let rank_fails = check_vanishing(Functional::Rank, 1, RelationKind::OneTerm).unwrap();
        assert_eq!(rank_fails.total, 1);
        assert_eq!(rank_fails.failures.len(), 1);
        // the surgery value is slide-invariant even across marked chords
        assert!(
            check_vanishing(Functional::Km, 3, RelationKind::ExtendedTwoTerm)
                .unwrap()
                .passed()
        );
        // the full Kauffman polynomial is not slide-invariant
        assert!(
            !check_vanishing(Functional::Kauffman, 3, RelationKind::TwoTerm)
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn caravan_normal_forms_round_trip() {
        let x = caravan_normal_form(&d("1 2 1 2"));
        assert_eq!((x.ones, x.zeros, x.hyperbolics), (0, 0, 1));
        assert!(caravan_realization(&x).equivalent(&d("1 2 1 2")));
        let pair = caravan_normal_form(&d("1# 2# 1 2"));
        assert_eq!((pair.ones, pair.zeros, pair.hyperbolics), (1, 1, 0));
        assert!(caravan_realization(&pair).equivalent(&d("1# 1 2 2")));
        for degree in 0..=3 {
            for diagram in MarkedChordDiagram::enumerate_marked(degree) {
                let class = caravan_normal_form(&diagram);
                let realization = caravan_realization(&class);
                assert_eq!(realization.degree(), degree);
                assert_eq!(caravan_normal_form(&realization), class, "{diagram}");
            }
        }
    }

    #[test]
    fn caravan_class_enumeration() {
        assert_eq!(caravan_classes(0).len(), 1);
        assert_eq!(caravan_classes(2).len(), 4);
        assert_eq!(caravan_classes(3).len(), 5);
        assert_eq!(caravan_classes(4).len(), 7);
        for degree in 0..=4 {
            for class in caravan_classes(degree) {
                assert_eq!(class.degree(), degree);
                assert!(!(class.ones > 0 && class.hyperbolics > 0));
            }
        }
    }

    #[test]
    fn unmarked_quotient_dimensions_are_the_classical_ones() {
        let dims: Vec<usize> = (0..=4)
            .map(|n| span_analysis(n, Space::A).unwrap().quotient_dimension)
            .collect();
        assert_eq!(dims, vec![1, 0, 1, 1, 3]);
    }

    #[test]
    fn slide_quotients_match_caravan_counts() {
        assert_eq!(span_analysis(2, Space::B).unwrap().quotient_dimension, 2);
        for degree in 0..=3 {
            let analysis = span_analysis(degree, Space::BMarked).unwrap();
            assert_eq!(
                analysis.quotient_dimension,
                caravan_classes(degree).len(),
                "degree {degree}"
            );
        }
    }

    #[test]
    fn span_membership_identifies_diagrams_with_their_caravans() {
        let span = RelationSpan::build(3, Space::BMarked).unwrap();
        for diagram in MarkedChordDiagram::enumerate_marked(3) {
            let realization = caravan_realization(&caravan_normal_form(&diagram));
            let mut difference = Combination::new();
            difference.add_term(diagram.clone(), 1);
            difference.add_term(realization.clone(), -1);
            assert!(span.contains(&difference).unwrap(), "{diagram}");
            assert_eq!(
                span.class_coordinates(&Combination::singleton(diagram.clone()))
                    .unwrap(),
                span.class_coordinates(&Combination::singleton(realization))
                    .unwrap(),
                "{diagram}"
            );
        }
        let foreign = Combination::singleton(d("1 1"));
        assert!(matches!(
            span.contains(&foreign),
            Err(Error::TermOutsideBasis(_))
        ));
    }

    #[test]
    fn marked_span_absorbs_marking_images_of_four_term_combinations() {
        let span = RelationSpan::build(3, Space::BMarked).unwrap();
        for relation in generate_relations(3, RelationKind::FourTerm).unwrap() {
            let image = marking_image(&relation).unwrap();
            assert!(span.contains(&image).unwrap());
        }
    }

    #[test]
    fn build_kind_rejects_foreign_families() {
        assert!(matches!(
            RelationSpan::build_kind(2, RelationKind::TwoTerm, Space::A),
            Err(Error::KindSpaceMismatch { .. })
        ));
        assert!(RelationSpan::build_kind(2, RelationKind::FourTerm, Space::A).is_ok());
        assert!(matches!(
            RelationSpan::build(5, Space::BMarked),
            Err(Error::DegreeCap { .. })
        ));
    }

    #[test]
    fn all_eight_slide_configurations_occur_at_degree_two() {
        // slides are classified by the marks of the moving and crossed
        // chords and by whether the chords interlace; every combination is
        // already exercised with two chords
        let mut seen = BTreeSet::new();
        for diagram in MarkedChordDiagram::enumerate_marked(2) {
            for (a, b) in slide_sites(&diagram) {
                let ca = diagram.chord_at(a);
                let cb = diagram.chord_at(b);
                let g = intersection_graph(&diagram);
                seen.insert((
                    diagram.is_marked(ca),
                    diagram.is_marked(cb),
                    g.has_edge(ca as usize - 1, cb as usize - 1),
                ));
            }
        }
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn products_with_a_common_factor_stay_congruent() {
        // gluing the same diagram onto two slide-equivalent diagrams lands
        // in the same class of the larger-degree slide span
        let span = RelationSpan::build(4, Space::B).unwrap();
        let theta = d("1 1");
        for diagram in MarkedChordDiagram::enumerate(3) {
            for (a, b) in slide_sites(&diagram) {
                let slid = slide(&diagram, a, b).unwrap();
                let mut difference = Combination::new();
                difference.add_term(diagram.connect_sum(&theta).canonical(), 1);
                difference.add_term(slid.connect_sum(&theta).canonical(), -1);
                assert!(
                    span.contains(&difference).unwrap(),
                    "{diagram} at ({a}, {b})"
                );
            }
        }
    }

    #[test]
    fn slides_preserve_the_surgery_value() {
        for diagram in MarkedChordDiagram::enumerate_marked(3) {
            let value = km_value(&diagram);
            for (a, b) in slide_sites(&diagram) {
                assert_eq!(km_value(&slide(&diagram, a, b).unwrap()), value);
            }
        }
    }
}

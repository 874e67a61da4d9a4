//! Marked chord diagrams as cyclic double-occurrence words.
//!
//! A diagram of degree `k` is a word of length `2k` on an oriented circle in
//! which every chord label appears exactly twice. Chords may carry a mark
//! (written `#`), modeling a half-twisted band. Two diagrams are the same
//! object when some rotation of one, relabeled by first occurrence, equals
//! the other — reflections are *not* quotiented out.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::combination::Combination;
use crate::error::{Error, Result};

/// Hard cap on chords per diagram (marks live in a `u64` bitmask).
pub const MAX_DEGREE: usize = 63;

/// A chord diagram with an optional mark on each chord.
///
/// Invariants: labels are `1..=k` in order of first occurrence, each exactly
/// twice; bit `label - 1` of `marks` is set iff that chord is marked.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MarkedChordDiagram {
    word: Vec<u8>,
    marks: u64,
}

impl MarkedChordDiagram {
    /// The degree-0 diagram: a bare circle.
    pub fn empty() -> Self {
        MarkedChordDiagram {
            word: Vec::new(),
            marks: 0,
        }
    }

    /// One unmarked chord.
    pub fn theta() -> Self {
        MarkedChordDiagram {
            word: vec![1, 1],
            marks: 0,
        }
    }

    /// One marked chord.
    pub fn theta_marked() -> Self {
        MarkedChordDiagram {
            word: vec![1, 1],
            marks: 1,
        }
    }

    /// Two interleaved unmarked chords.
    pub fn crossing_pair() -> Self {
        MarkedChordDiagram {
            word: vec![1, 2, 1, 2],
            marks: 0,
        }
    }

    /// Builds a diagram from an arbitrary double-occurrence word, relabeling
    /// by first occurrence. `raw_marks` is indexed by the *raw* labels.
    pub(crate) fn from_raw(raw_word: &[u8], raw_marks: u64) -> Self {
        let mut rename: BTreeMap<u8, u8> = BTreeMap::new();
        let mut next = 1u8;
        let mut word = Vec::with_capacity(raw_word.len());
        let mut marks = 0u64;
        for &raw in raw_word {
            let label = *rename.entry(raw).or_insert_with(|| {
                let l = next;
                next += 1;
                l
            });
            word.push(label);
            if raw_marks >> (raw - 1) & 1 == 1 {
                marks |= 1 << (label - 1);
            }
        }
        debug_assert!(Self::is_double_occurrence(&word));
        MarkedChordDiagram { word, marks }
    }

    fn is_double_occurrence(word: &[u8]) -> bool {
        let mut counts = BTreeMap::new();
        for &l in word {
            *counts.entry(l).or_insert(0usize) += 1;
        }
        counts.values().all(|&c| c == 2) && counts.len() * 2 == word.len()
    }

    /// Parses a whitespace-separated word. Each token is a label, optionally
    /// suffixed with `#` to mark the chord; marking either occurrence (or
    /// both) is accepted. Labels are arbitrary `#`-free strings and are
    /// normalized to `1..=k` by first occurrence.
    pub fn parse(text: &str) -> Result<Self> {
        let mut ids: BTreeMap<&str, u8> = BTreeMap::new();
        let mut counts: Vec<usize> = Vec::new();
        let mut word: Vec<u8> = Vec::new();
        let mut marks = 0u64;
        for token in text.split_whitespace() {
            let (label, marked) = match token.strip_suffix('#') {
                Some(rest) => (rest, true),
                None => (token, false),
            };
            if label.is_empty() || label.contains('#') {
                return Err(Error::MalformedWord(format!("bad token {token:?}")));
            }
            let next_id = ids.len() as u8 + 1;
            let id = *ids.entry(label).or_insert(next_id);
            if id as usize > counts.len() {
                if counts.len() == MAX_DEGREE {
                    return Err(Error::MalformedWord(format!(
                        "more than {MAX_DEGREE} chords"
                    )));
                }
                counts.push(0);
            }
            counts[id as usize - 1] += 1;
            word.push(id);
            if marked {
                marks |= 1 << (id - 1);
            }
        }
        for (label, &id) in &ids {
            let c = counts[id as usize - 1];
            if c != 2 {
                return Err(Error::MalformedWord(format!(
                    "label {label:?} occurs {c} times (expected 2)"
                )));
            }
        }
        Ok(MarkedChordDiagram { word, marks })
    }

    pub fn degree(&self) -> usize {
        self.word.len() / 2
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn marks_mask(&self) -> u64 {
        self.marks
    }

    pub fn is_marked(&self, label: u8) -> bool {
        self.marks >> (label - 1) & 1 == 1
    }

    pub fn is_unmarked(&self) -> bool {
        self.marks == 0
    }

    /// Chord label at an endpoint position.
    pub fn chord_at(&self, pos: usize) -> u8 {
        self.word[pos]
    }

    /// The two endpoint positions of a chord, in increasing order.
    pub fn chord_endpoints(&self, label: u8) -> (usize, usize) {
        let mut it = self
            .word
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == label)
            .map(|(i, _)| i);
        let a = it.next().expect("label present");
        let b = it.next().expect("label occurs twice");
        (a, b)
    }

    /// For every endpoint position, the position of the same chord's other
    /// endpoint.
    pub fn endpoint_partners(&self) -> Vec<usize> {
        let mut first: BTreeMap<u8, usize> = BTreeMap::new();
        let mut partner = vec![usize::MAX; self.word.len()];
        for (i, &l) in self.word.iter().enumerate() {
            if let Some(&j) = first.get(&l) {
                partner[i] = j;
                partner[j] = i;
            } else {
                first.insert(l, i);
            }
        }
        partner
    }

    /// Replaces the mark set wholesale. Bits beyond the degree are rejected.
    pub fn with_marks(&self, marks: u64) -> Self {
        let k = self.degree();
        assert!(
            k == 64 || marks >> k == 0,
            "mark mask references absent chords"
        );
        MarkedChordDiagram {
            word: self.word.clone(),
            marks,
        }
    }

    fn tokens_from(&self, rotation: usize) -> Vec<(u8, bool)> {
        let n = self.word.len();
        let mut rename = [0u8; 256];
        let mut next = 1u8;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let raw = self.word[(rotation + i) % n];
            if rename[raw as usize] == 0 {
                rename[raw as usize] = next;
                next += 1;
            }
            out.push((rename[raw as usize], self.is_marked(raw)));
        }
        out
    }

    /// The diagram read from a different starting point on the circle.
    pub fn rotation(&self, r: usize) -> Self {
        let tokens = self.tokens_from(r % self.word.len().max(1));
        Self::from_tokens(&tokens)
    }

    fn from_tokens(tokens: &[(u8, bool)]) -> Self {
        let mut word = Vec::with_capacity(tokens.len());
        let mut marks = 0u64;
        for &(l, m) in tokens {
            word.push(l);
            if m {
                marks |= 1 << (l - 1);
            }
        }
        MarkedChordDiagram { word, marks }
    }

    /// Canonical form: the lexicographically smallest relabeled rotation,
    /// comparing `(label, mark)` tokens.
    pub fn canonical(&self) -> Self {
        if self.word.is_empty() {
            return self.clone();
        }
        let mut best: Option<Vec<(u8, bool)>> = None;
        for r in 0..self.word.len() {
            let cand = self.tokens_from(r);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        Self::from_tokens(&best.unwrap())
    }

    /// Equality as diagrams on the circle (equality of canonical forms).
    pub fn equivalent(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    /// Connected sum: cut both circles and splice, i.e. concatenate the
    /// words with `other`'s labels shifted above `self`'s.
    pub fn connect_sum(&self, other: &Self) -> Self {
        let k1 = self.degree();
        assert!(
            k1 + other.degree() <= MAX_DEGREE,
            "connected sum exceeds {MAX_DEGREE} chords"
        );
        let mut word = self.word.clone();
        word.extend(other.word.iter().map(|&l| l + k1 as u8));
        MarkedChordDiagram {
            word,
            marks: self.marks | other.marks << k1,
        }
    }

    /// Connected sum of `m` unmarked single chords.
    pub fn theta_power(m: usize) -> Self {
        let mut word = Vec::with_capacity(2 * m);
        for l in 1..=m as u8 {
            word.push(l);
            word.push(l);
        }
        MarkedChordDiagram { word, marks: 0 }
    }

    /// Keeps exactly the chords in `chords` (a bitmask by label), preserving
    /// the cyclic order of the surviving endpoints.
    pub fn restrict(&self, chords: u64) -> Self {
        let kept: Vec<u8> = self
            .word
            .iter()
            .copied()
            .filter(|&l| chords >> (l - 1) & 1 == 1)
            .collect();
        Self::from_raw(&kept, self.marks)
    }

    /// Comultiplication: sum over chord subsets `J` of
    /// `(D with J removed) ⊗ (D restricted to J)`, all coefficients +1.
    /// Terms are canonicalized, so coinciding subsets merge.
    pub fn coproduct(&self) -> Combination<(Self, Self)> {
        let k = self.degree();
        let full = if k == 0 { 0 } else { (1u64 << k) - 1 };
        let mut out = Combination::new();
        for subset in 0..=full {
            let left = self.restrict(full & !subset).canonical();
            let right = self.restrict(subset).canonical();
            out.add_term((left, right), 1);
            if full == 0 {
                break;
            }
        }
        out
    }

    /// The marking map `M`: alternating sum over mark subsets of an unmarked
    /// diagram. Canonically equal terms merge, so coefficients may exceed
    /// ±1; the coefficient sum is `0` whenever the degree is positive.
    pub fn marking_expansion(&self) -> Result<Combination<Self>> {
        if !self.is_unmarked() {
            return Err(Error::MarkedInput {
                operation: "marking_expansion",
            });
        }
        let k = self.degree();
        let full = if k == 0 { 0 } else { (1u64 << k) - 1 };
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

    /// Calls `f` with every perfect matching of `2n` points, encoded as a
    /// double-occurrence word labeled by first occurrence.
    fn for_each_matching(n: usize, f: &mut impl FnMut(&[u8])) {
        let mut word = vec![0u8; 2 * n];
        fn rec(word: &mut Vec<u8>, next: u8, f: &mut impl FnMut(&[u8])) {
            let Some(start) = word.iter().position(|&l| l == 0) else {
                f(word);
                return;
            };
            word[start] = next;
            let free: Vec<usize> = (start + 1..word.len()).filter(|&i| word[i] == 0).collect();
            for i in free {
                word[i] = next;
                rec(word, next + 1, f);
                word[i] = 0;
            }
            word[start] = 0;
        }
        if n == 0 {
            f(&word);
            return;
        }
        rec(&mut word, 1, f);
    }

    /// All canonical unmarked diagrams of degree `n`, sorted.
    pub fn enumerate(n: usize) -> Vec<Self> {
        assert!(n <= 10, "exhaustive enumeration is factorial in n");
        let mut seen: BTreeSet<MarkedChordDiagram> = BTreeSet::new();
        Self::for_each_matching(n, &mut |word| {
            seen.insert(MarkedChordDiagram::from_raw(word, 0).canonical());
        });
        seen.into_iter().collect()
    }

    /// All canonical marked diagrams of degree `n`: every mark subset of
    /// every unmarked diagram, deduplicated up to rotation.
    pub fn enumerate_marked(n: usize) -> Vec<Self> {
        let mut seen: BTreeSet<MarkedChordDiagram> = BTreeSet::new();
        for d in Self::enumerate(n) {
            let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
            for subset in 0..=full {
                seen.insert(d.with_marks(subset).canonical());
                if full == 0 {
                    break;
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Uniformly random matching of `2n` points (marks cleared).
    pub fn random(rng: &mut impl Rng, n: usize) -> Self {
        assert!(n <= MAX_DEGREE);
        let mut positions: Vec<usize> = (0..2 * n).collect();
        // Fisher-Yates; pairing shuffled consecutive entries gives a uniform
        // perfect matching.
        for i in (1..positions.len()).rev() {
            let j = rng.random_range(0..=i);
            positions.swap(i, j);
        }
        let mut word = vec![0u8; 2 * n];
        for (chord, pair) in positions.chunks(2).enumerate() {
            word[pair[0]] = chord as u8 + 1;
            word[pair[1]] = chord as u8 + 1;
        }
        Self::from_raw(&word, 0)
    }

    /// Random matching with an independent fair coin for each mark.
    pub fn random_marked(rng: &mut impl Rng, n: usize) -> Self {
        let d = Self::random(rng, n);
        let mask = if n == 0 {
            0
        } else {
            rng.random_range(0..(1u64 << n))
        };
        d.with_marks(mask)
    }
}

impl fmt::Display for MarkedChordDiagram {
    /// Writes the word with `#` after the first occurrence of each marked
    /// chord; `parse` accepts the result unchanged.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = 0u64;
        for (i, &l) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
            if self.is_marked(l) && seen >> (l - 1) & 1 == 0 {
                write!(f, "#")?;
            }
            seen |= 1 << (l - 1);
        }
        Ok(())
    }
}

impl FromStr for MarkedChordDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn d(s: &str) -> MarkedChordDiagram {
        MarkedChordDiagram::parse(s).unwrap()
    }

    #[test]
    fn parse_normalizes_labels_by_first_occurrence() {
        assert_eq!(d("1 2 1 2").word(), &[1, 2, 1, 2]);
        assert_eq!(d("2 1 2 1").word(), &[1, 2, 1, 2]);
        assert_eq!(d("b a b a").word(), &[1, 2, 1, 2]);
        assert_eq!(d("").degree(), 0);
    }

    #[test]
    fn parse_reads_marks_from_either_occurrence() {
        let theta_m = d("1# 1");
        assert!(theta_m.is_marked(1));
        assert_eq!(theta_m, d("1 1#"));
        assert_eq!(theta_m, d("1# 1#"));
        assert_eq!(theta_m, MarkedChordDiagram::theta_marked());
    }

    #[test]
    fn parse_rejects_non_double_occurrence() {
        assert!(MarkedChordDiagram::parse("1 2 1").is_err());
        assert!(MarkedChordDiagram::parse("1 1 1 1").is_err());
        assert!(MarkedChordDiagram::parse("#").is_err());
        assert!(MarkedChordDiagram::parse("1#2 1 2 2?").is_err());
    }

    #[test]
    fn canonical_minimizes_over_rotations() {
        assert_eq!(d("2 1 2 1").canonical(), d("1 2 1 2"));
        // [1,2,2,1] is a rotation of the nested form [1,1,2,2].
        assert_eq!(d("1 2 2 1").canonical(), d("1 1 2 2"));
        assert_eq!(d("1 1 2 2").canonical(), d("1 1 2 2"));
        assert!(d("1 1 2 2").equivalent(&d("2 1 1 2")));
    }

    #[test]
    fn canonical_orders_marks_after_labels() {
        // Unmarked tokens sort before marked ones with the same label.
        let one_mark = d("1 2# 1 2");
        let c = one_mark.canonical();
        assert_eq!(c.word(), &[1, 2, 1, 2]);
        assert!(!c.is_marked(1) && c.is_marked(2));
        // Both single-marked variants of the crossing pair coincide.
        assert!(d("1# 2 1 2").equivalent(&d("1 2# 1 2")));
    }

    #[test]
    fn connect_sum_concatenates_with_shifted_labels() {
        let theta_x = MarkedChordDiagram::theta().connect_sum(&MarkedChordDiagram::crossing_pair());
        assert_eq!(theta_x, d("1 1 2 3 2 3"));
        assert_eq!(
            d("1 2 1 2").connect_sum(&MarkedChordDiagram::empty()),
            d("1 2 1 2")
        );
        let mm =
            MarkedChordDiagram::theta_marked().connect_sum(&MarkedChordDiagram::theta_marked());
        assert_eq!(mm, d("1# 1 2# 2"));
    }

    #[test]
    fn coproduct_counts_and_boundary_terms() {
        let theta = MarkedChordDiagram::theta();
        let cp = theta.coproduct();
        assert_eq!(cp.coefficient_sum(), 2);
        assert_eq!(
            cp.coefficient(&(MarkedChordDiagram::empty(), theta.clone())),
            1
        );
        assert_eq!(
            cp.coefficient(&(theta.clone(), MarkedChordDiagram::empty())),
            1
        );

        let empty = MarkedChordDiagram::empty();
        let cp0 = empty.coproduct();
        assert_eq!(cp0.coefficient_sum(), 1);
        assert_eq!(cp0.coefficient(&(empty.clone(), empty.clone())), 1);

        let x = MarkedChordDiagram::crossing_pair();
        let cpx = x.coproduct();
        assert_eq!(cpx.coefficient_sum(), 4);
        // both singleton subsets give the same tensor term
        assert_eq!(
            cpx.coefficient(&(MarkedChordDiagram::theta(), MarkedChordDiagram::theta())),
            2
        );
    }

    #[test]
    fn coproduct_is_multiplicative() {
        let pairs = [
            (d("1 1"), d("1 2 1 2")),
            (d("1 2 1 2"), d("1 1")),
            (d("1 2 2 1"), d("1 1")),
        ];
        for (a, b) in pairs {
            let lhs = a.connect_sum(&b).coproduct();
            // The product of the two coproducts, expanded with the same word
            // representatives on both sides: restriction and removal commute
            // with concatenation, so each chord subset of the product splits
            // as a pair of factor subsets.
            let (full_a, full_b) = ((1u64 << a.degree()) - 1, (1u64 << b.degree()) - 1);
            let mut rhs = Combination::new();
            for ja in 0..=full_a {
                for jb in 0..=full_b {
                    let removed = a
                        .restrict(full_a & !ja)
                        .connect_sum(&b.restrict(full_b & !jb));
                    let kept = a.restrict(ja).connect_sum(&b.restrict(jb));
                    rhs.add_term((removed.canonical(), kept.canonical()), 1);
                }
            }
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn marking_expansion_small_cases() {
        let theta = MarkedChordDiagram::theta();
        let m = theta.marking_expansion().unwrap();
        assert_eq!(m.coefficient(&theta), 1);
        assert_eq!(m.coefficient(&MarkedChordDiagram::theta_marked()), -1);
        assert_eq!(m.term_count(), 2);
        assert_eq!(m.coefficient_sum(), 0);

        let empty = MarkedChordDiagram::empty();
        let m0 = empty.marking_expansion().unwrap();
        assert_eq!(m0.coefficient(&empty), 1);
        assert_eq!(m0.term_count(), 1);

        // X: the two single-mark subsets are the same diagram, so they merge.
        let x = MarkedChordDiagram::crossing_pair();
        let mx = x.marking_expansion().unwrap();
        assert_eq!(mx.term_count(), 3);
        assert_eq!(mx.coefficient(&x), 1);
        assert_eq!(mx.coefficient(&d("1 2# 1 2").canonical()), -2);
        assert_eq!(mx.coefficient(&d("1# 2# 1 2").canonical()), 1);
        assert_eq!(mx.coefficient_sum(), 0);

        assert!(MarkedChordDiagram::theta_marked()
            .marking_expansion()
            .is_err());
    }

    #[test]
    fn enumeration_counts_match_known_sequence() {
        let expected = [1usize, 1, 2, 5, 18, 105, 902];
        for (n, &count) in expected.iter().enumerate() {
            assert_eq!(MarkedChordDiagram::enumerate(n).len(), count, "degree {n}");
        }
        let deg2: Vec<String> = MarkedChordDiagram::enumerate(2)
            .iter()
            .map(|d| d.to_string())
            .collect();
        assert_eq!(deg2, vec!["1 1 2 2".to_string(), "1 2 1 2".to_string()]);
    }

    #[test]
    fn matchings_before_dedup_are_double_factorial() {
        for (n, expected) in [(1usize, 1u64), (2, 3), (3, 15), (4, 105), (5, 945)] {
            let mut count = 0u64;
            MarkedChordDiagram::for_each_matching(n, &mut |_| count += 1);
            assert_eq!(count, expected);
        }
    }

    #[test]
    fn marked_enumeration_small_counts() {
        let deg1 = MarkedChordDiagram::enumerate_marked(1);
        assert_eq!(deg1.len(), 2);
        assert!(deg1.contains(&MarkedChordDiagram::theta()));
        assert!(deg1.contains(&MarkedChordDiagram::theta_marked()));
        // By the rotation symmetry of both degree-2 diagrams, each of the 4
        // mark subsets collapses the two singletons together: 3 + 3 classes.
        assert_eq!(MarkedChordDiagram::enumerate_marked(2).len(), 6);
    }

    #[test]
    fn enumerated_diagrams_are_canonical_and_distinct() {
        for n in 0..=4 {
            let all = MarkedChordDiagram::enumerate_marked(n);
            for d in &all {
                assert_eq!(d, &d.canonical());
            }
            let set: BTreeSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len(), all.len());
        }
    }

    #[test]
    fn restrict_keeps_cyclic_order() {
        let x = d("1 2 3 1 2 3");
        assert_eq!(x.restrict(0b101), d("1 2 1 2"));
        assert_eq!(x.restrict(0), MarkedChordDiagram::empty());
        assert_eq!(x.restrict(0b111), x);
        let marked = d("1# 2 1 2");
        assert_eq!(marked.restrict(0b01), d("1# 1"));
        assert_eq!(marked.restrict(0b10), d("1 1"));
    }

    proptest! {
        #[test]
        fn canonical_is_idempotent_and_rotation_invariant(
            k in 1usize..=5, seed in any::<u64>(), mask in any::<u64>(), r in 0usize..10
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let base = MarkedChordDiagram::random(&mut rng, k);
            let d = base.with_marks(mask & ((1 << k) - 1));
            let c = d.canonical();
            prop_assert_eq!(c.canonical(), c.clone());
            prop_assert_eq!(d.rotation(r).canonical(), c);
        }

        #[test]
        fn coproduct_mass_is_two_to_degree(
            k in 0usize..=5, seed in any::<u64>()
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = MarkedChordDiagram::random(&mut rng, k);
            prop_assert_eq!(d.coproduct().coefficient_sum(), 1i64 << k);
        }

        #[test]
        fn marking_expansion_coefficients_alternate_to_zero(
            k in 1usize..=5, seed in any::<u64>()
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = MarkedChordDiagram::random(&mut rng, k);
            prop_assert_eq!(d.marking_expansion().unwrap().coefficient_sum(), 0);
        }
    }
}

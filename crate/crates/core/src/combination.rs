//! Formal Z-linear combinations with automatic merging of equal terms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A finite Z-linear combination of terms of type `T`.
///
/// Terms compare by `Ord`; callers are expected to insert canonical
/// representatives so that equal objects actually merge. Zero coefficients
/// are dropped eagerly, hence `terms.is_empty()` iff the combination is zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Combination<T: Ord + Clone> {
    terms: BTreeMap<T, i64>,
}

impl<T: Ord + Clone> Default for Combination<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Ord + Clone> Combination<T> {
    pub fn new() -> Self {
        Combination {
            terms: BTreeMap::new(),
        }
    }

    pub fn singleton(term: T) -> Self {
        let mut c = Self::new();
        c.add_term(term, 1);
        c
    }

    /// Adds `coeff * term`, merging with an existing entry for the same term.
    pub fn add_term(&mut self, term: T, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(term).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            // remove to keep the zero-combination representation unique
            let key = self
                .terms
                .iter()
                .find(|(_, &c)| c == 0)
                .map(|(k, _)| k.clone())
                .expect("zero entry present");
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct terms after merging.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, term: &T) -> i64 {
        self.terms.get(term).copied().unwrap_or(0)
    }

    /// Sum of all coefficients (the image under the augmentation map).
    pub fn coefficient_sum(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, i64)> {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    pub fn scaled(&self, factor: i64) -> Self {
        let mut out = Self::new();
        for (t, c) in self.iter() {
            out.add_term(t.clone(), c * factor);
        }
        out
    }

    /// Applies `f` to every term, merging images that collide.
    pub fn map_terms<U: Ord + Clone>(&self, mut f: impl FnMut(&T) -> U) -> Combination<U> {
        let mut out = Combination::new();
        for (t, c) in self.iter() {
            out.add_term(f(t), c);
        }
        out
    }

    /// Bilinear extension of a product on terms: sums `f(s, t)` weighted by
    /// the product of the coefficients.
    pub fn combine<U: Ord + Clone, V: Ord + Clone>(
        &self,
        other: &Combination<U>,
        mut f: impl FnMut(&T, &U) -> V,
    ) -> Combination<V> {
        let mut out = Combination::new();
        for (s, cs) in self.iter() {
            for (t, ct) in other.iter() {
                out.add_term(f(s, t), cs * ct);
            }
        }
        out
    }
}

impl<T: Ord + Clone> FromIterator<(T, i64)> for Combination<T> {
    fn from_iter<I: IntoIterator<Item = (T, i64)>>(iter: I) -> Self {
        let mut c = Self::new();
        for (t, coeff) in iter {
            c.add_term(t, coeff);
        }
        c
    }
}

impl<T: Ord + Clone> Add for Combination<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (t, c) in rhs.iter() {
            self.add_term(t.clone(), c);
        }
        self
    }
}

impl<T: Ord + Clone> Sub for Combination<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (t, c) in rhs.iter() {
            self.add_term(t.clone(), -c);
        }
        self
    }
}

impl<T: Ord + Clone> Neg for Combination<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scaled(-1)
    }
}

impl<T: Ord + Clone + fmt::Display> fmt::Display for Combination<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag != 1 {
                write!(f, "{mag}*")?;
            }
            write!(f, "[{t}]")?;
        }
        Ok(())
    }
}

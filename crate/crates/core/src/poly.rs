//! Exact integer polynomials: univariate in `x` for the graph invariants,
//! bivariate in `a`, `b` for the diagram weight systems. Substituting
//! `x -> b` or `x -> b^{-1}` (with an `(ab)^k` prefactor) bridges the two.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in one variable `x` with integer coefficients; exponents may
/// be negative, though the invariants computed here never produce any.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct XPolynomial {
    terms: BTreeMap<i32, i64>,
}

/// Polynomial in `a` and `b`; `b` exponents may be negative (Laurent), `a`
/// exponents never are.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, i32), i64>,
}

impl XPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, c)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(exp: i32, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        XPolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn scaled(&self, factor: i64) -> Self {
        let mut out = Self::zero();
        for (&e, &c) in &self.terms {
            out.add_term(e, c * factor);
        }
        out
    }

    /// `a^k * P(b)`: each `x^e` becomes `a^k b^e`.
    pub fn times_a_pow_as_b(&self, k: u32) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&e, &c) in &self.terms {
            out.add_term(k, e, c);
        }
        out
    }

    /// `(ab)^k * P(b^{-1})`: each `x^e` becomes `a^k b^{k-e}`.
    pub fn framed_substitution(&self, k: u32) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&e, &c) in &self.terms {
            out.add_term(k, k as i32 - e, c);
        }
        out
    }
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(exp_a: u32, exp_b: i32, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert((exp_a, exp_b), coeff);
        }
        BivariatePolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp_a: u32, exp_b: i32) -> i64 {
        self.terms.get(&(exp_a, exp_b)).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exp_a: u32, exp_b: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry((exp_a, exp_b)).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&(exp_a, exp_b));
        }
    }

    pub fn scaled(&self, factor: i64) -> Self {
        let mut out = Self::zero();
        for (&(ea, eb), &c) in &self.terms {
            out.add_term(ea, eb, c * factor);
        }
        out
    }

    /// True when no `b` exponent is negative — weight-system outputs are
    /// expected to be honest polynomials even though Laurent terms are legal
    /// in intermediate arithmetic.
    pub fn has_nonnegative_b_exponents(&self) -> bool {
        self.terms.keys().all(|&(_, eb)| eb >= 0)
    }
}

macro_rules! impl_ring_ops {
    ($ty:ty, $key:ty) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                for (&k, &c) in &rhs.terms {
                    add_into(&mut out.terms, k, c);
                }
                out
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                for (&k, &c) in &rhs.terms {
                    add_into(&mut out.terms, k, -c);
                }
                out
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                let mut out = <$ty>::zero();
                for (&k, &c) in &self.terms {
                    out.terms.insert(k, -c);
                }
                out
            }
        }
    };
}

fn add_into<K: Ord + Copy>(terms: &mut BTreeMap<K, i64>, key: K, coeff: i64) {
    if coeff == 0 {
        return;
    }
    let entry = terms.entry(key).or_insert(0);
    *entry += coeff;
    if *entry == 0 {
        terms.remove(&key);
    }
}

impl_ring_ops!(XPolynomial, i32);
impl_ring_ops!(BivariatePolynomial, (u32, i32));

impl Mul for &XPolynomial {
    type Output = XPolynomial;
    fn mul(self, rhs: &XPolynomial) -> XPolynomial {
        let mut out = XPolynomial::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                add_into(&mut out.terms, e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(a1, b1), &c1) in &self.terms {
            for (&(a2, b2), &c2) in &rhs.terms {
                add_into(&mut out.terms, (a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

/// Append one rendered monomial to `out`: sign separator, coefficient
/// (magnitude 1 elided unless there are no variables), then variable parts.
fn push_term(out: &mut String, coeff: i64, vars: &[(&str, i64)]) {
    if out.is_empty() {
        if coeff < 0 {
            out.push('-');
        }
    } else if coeff < 0 {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    let magnitude = coeff.unsigned_abs();
    let var_parts: Vec<String> = vars
        .iter()
        .filter(|&&(_, exp)| exp != 0)
        .map(|&(name, exp)| {
            if exp == 1 {
                name.to_string()
            } else {
                format!("{name}^{exp}")
            }
        })
        .collect();
    if var_parts.is_empty() {
        out.push_str(&magnitude.to_string());
        return;
    }
    if magnitude != 1 {
        out.push_str(&magnitude.to_string());
        out.push('*');
    }
    out.push_str(&var_parts.join("*"));
}

impl fmt::Display for XPolynomial {
    /// Terms in descending exponent order, e.g. `-x^2 + x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (&e, &c) in self.terms.iter().rev() {
            push_term(&mut out, c, &[("x", e as i64)]);
        }
        f.write_str(&out)
    }
}

impl fmt::Display for BivariatePolynomial {
    /// Terms sorted by `a` exponent descending, then `b` exponent
    /// descending, e.g. `a^2*b - a^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (&(ea, eb), &c) in self.terms.iter().rev() {
            push_term(&mut out, c, &[("a", ea as i64), ("b", eb as i64)]);
        }
        f.write_str(&out)
    }
}

//! Sparse multivariate polynomials over an exact integer scalar.
//!
//! Everything downstream (symmetric-function expansions, the
//! G-homomorphism, coefficient extraction) works with these. Terms live in
//! a `BTreeMap` keyed by exponent vector, so iteration order and equality
//! are canonical: no zero coefficients are ever stored, and two polynomials
//! are equal iff their maps are.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};

use crate::error::Error;

/// Exact integer scalar for coefficient arithmetic.
///
/// Satisfied by `i64` (fast, overflow-checked) and `num_bigint::BigInt`
/// (never overflows). All arithmetic goes through the checked helpers
/// below, so an `i64` run that would wrap panics instead of corrupting a
/// result.
pub trait Coeff:
    Clone
    + Ord
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Signed
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + From<i64>
    + Send
    + Sync
    + 'static
{
}

impl<T> Coeff for T where
    T: Clone
        + Ord
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + Signed
        + Integer
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + From<i64>
        + Send
        + Sync
        + 'static
{
}

pub fn cadd<C: Coeff>(a: &C, b: &C) -> C {
    a.checked_add(b).expect("coefficient overflow")
}

pub fn csub<C: Coeff>(a: &C, b: &C) -> C {
    a.checked_sub(b).expect("coefficient overflow")
}

pub fn cmul<C: Coeff>(a: &C, b: &C) -> C {
    a.checked_mul(b).expect("coefficient overflow")
}

/// Sparse polynomial in a fixed number of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly<C> {
    n_vars: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(n_vars: usize) -> Self {
        MultiPoly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: C) -> Self {
        let mut p = Self::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; n_vars], c);
        }
        p
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, C::one())
    }

    /// The variable `x_i`, 0-based.
    pub fn var(n_vars: usize, i: usize) -> Self {
        assert!(i < n_vars, "variable index out of range");
        let mut exps = vec![0; n_vars];
        exps[i] = 1;
        Self::monomial(n_vars, exps, C::one())
    }

    pub fn monomial(n_vars: usize, exps: Vec<u32>, coeff: C) -> Self {
        assert_eq!(exps.len(), n_vars, "exponent vector length mismatch");
        let mut p = Self::zero(n_vars);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    /// Accumulates arbitrary (exponents, coefficient) pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(n_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
    {
        let mut p = Self::zero(n_vars);
        for (exps, c) in terms {
            p.add_term(exps, c);
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: C) {
        assert_eq!(exps.len(), self.n_vars, "exponent vector length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                let s = cadd(o.get(), &c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &C)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Coefficient of the given monomial, zero if absent.
    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.n_vars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (e.clone(), cmul(v, c)))
            .collect();
        MultiPoly {
            n_vars: self.n_vars,
            terms,
        }
    }

    fn add_impl(&self, rhs: &Self, negate_rhs: bool) -> Self {
        assert_eq!(self.n_vars, rhs.n_vars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            let c = if negate_rhs { -c.clone() } else { c.clone() };
            out.add_term(e.clone(), c);
        }
        out
    }

    fn mul_impl(&self, rhs: &Self, cap: Option<&[u32]>) -> Self {
        assert_eq!(self.n_vars, rhs.n_vars, "variable count mismatch");
        if let Some(cap) = cap {
            assert_eq!(cap.len(), self.n_vars, "cap length mismatch");
        }
        let mut out = Self::zero(self.n_vars);
        for (ea, ca) in &self.terms {
            'rhs: for (eb, cb) in &rhs.terms {
                let mut exps = Vec::with_capacity(self.n_vars);
                for i in 0..self.n_vars {
                    let e = ea[i].checked_add(eb[i]).expect("exponent overflow");
                    if let Some(cap) = cap {
                        if e > cap[i] {
                            continue 'rhs;
                        }
                    }
                    exps.push(e);
                }
                out.add_term(exps, cmul(ca, cb));
            }
        }
        out
    }

    /// Product with every monomial exceeding `cap` in some variable
    /// discarded. Used for coefficient extraction, where exponents above
    /// the target pattern can never contribute.
    pub fn mul_truncated(&self, rhs: &Self, cap: &[u32]) -> Self {
        self.mul_impl(rhs, Some(cap))
    }

    /// Divides every coefficient by `d`, failing if any division leaves a
    /// remainder.
    pub fn exact_div_scalar(&self, d: &C) -> Result<Self, Error> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::Internal("inexact scalar division"));
            }
            terms.insert(e.clone(), q);
        }
        Ok(MultiPoly {
            n_vars: self.n_vars,
            terms,
        })
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.n_vars, "point length mismatch");
        let mut acc = C::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    term = cmul(&term, x);
                }
            }
            acc = cadd(&acc, &term);
        }
        acc
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        assert!(i < self.n_vars && j < self.n_vars, "variable index out of range");
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.swap(i, j);
                (e, c.clone())
            })
            .collect();
        MultiPoly {
            n_vars: self.n_vars,
            terms,
        }
    }

    /// True iff invariant under every adjacent transposition of variables.
    pub fn is_symmetric(&self) -> bool {
        (1..self.n_vars).all(|i| self.swap_vars(i - 1, i) == *self)
    }

    /// Maximum total degree over all terms; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|d2| d2 == d),
        }
    }

    /// Reinterprets the polynomial in a larger variable set, sending
    /// variable `i` to variable `offset + i`.
    pub fn embed(&self, new_n_vars: usize, offset: usize) -> Self {
        assert!(
            offset + self.n_vars <= new_n_vars,
            "embedding does not fit in target variable set"
        );
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut exps = vec![0; new_n_vars];
                exps[offset..offset + self.n_vars].copy_from_slice(e);
                (exps, c.clone())
            })
            .collect();
        MultiPoly {
            n_vars: new_n_vars,
            terms,
        }
    }

    /// Renders with 1-based variables named `var1, var2, ...`, leading
    /// term (lex-greatest) first.
    pub fn format_vars(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (exps, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|&(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("{var}{}", i + 1)
                    } else {
                        format!("{var}{}^{e}", i + 1)
                    }
                })
                .collect();
            if vars.is_empty() {
                s.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    s.push_str(&mag.to_string());
                    s.push('*');
                }
                s.push_str(&vars.join("*"));
            }
        }
        s
    }
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_vars("x"))
    }
}

impl<C: Coeff> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        self.add_impl(rhs, false)
    }
}

impl<C: Coeff> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        self.add_impl(rhs, true)
    }
}

impl<C: Coeff> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        self.mul_impl(rhs, None)
    }
}

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        MultiPoly::zero(self.n_vars).add_impl(self, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use std::panic::{catch_unwind, AssertUnwindSafe};

    fn arb_poly() -> impl Strategy<Value = MultiPoly<i64>> {
        prop::collection::vec(
            (prop::collection::vec(0u32..4, 3), -5i64..=5),
            0..5,
        )
        .prop_map(|ts| MultiPoly::from_terms(3, ts))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &MultiPoly::zero(3), a.clone());
            prop_assert_eq!(&a * &MultiPoly::one(3), a.clone());
            prop_assert_eq!(&a - &a, MultiPoly::zero(3));
            prop_assert_eq!(&a - &b, &a + &-&b);
        }

        #[test]
        fn truncated_mul_agrees_with_filtered_full_mul(
            a in arb_poly(),
            b in arb_poly(),
            cap in prop::collection::vec(0u32..6, 3),
        ) {
            let full = &a * &b;
            let filtered = MultiPoly::from_terms(
                3,
                full.terms()
                    .filter(|(e, _)| e.iter().zip(&cap).all(|(x, c)| x <= c))
                    .map(|(e, c)| (e.to_vec(), *c)),
            );
            prop_assert_eq!(a.mul_truncated(&b, &cap), filtered);
        }

        #[test]
        fn eval_is_a_ring_homomorphism(
            a in arb_poly(),
            b in arb_poly(),
            point in prop::collection::vec(-3i64..=3, 3),
        ) {
            prop_assert_eq!((&a + &b).eval(&point), a.eval(&point) + b.eval(&point));
            prop_assert_eq!((&a * &b).eval(&point), a.eval(&point) * b.eval(&point));
        }

        #[test]
        fn double_swap_is_identity(a in arb_poly()) {
            prop_assert_eq!(a.swap_vars(0, 2).swap_vars(0, 2), a.clone());
            let sym = &a + &a.swap_vars(0, 1);
            prop_assert_eq!(sym.swap_vars(0, 1), sym.clone());
        }

        #[test]
        fn scalar_division_inverts_scaling(a in arb_poly()) {
            prop_assert_eq!(a.scale(&3).exact_div_scalar(&3).unwrap(), a.clone());
        }
    }

    #[test]
    fn no_zero_terms_survive() {
        let x = MultiPoly::<i64>::var(2, 0);
        let d = &x - &x;
        assert!(d.is_zero());
        assert_eq!(d.n_terms(), 0);
        let p = MultiPoly::from_terms(2, vec![(vec![1, 0], 2i64), (vec![1, 0], -2)]);
        assert!(p.is_zero());
    }

    #[test]
    fn inexact_division_is_rejected() {
        let p = MultiPoly::<i64>::constant(1, 3);
        assert_eq!(
            p.exact_div_scalar(&2),
            Err(Error::Internal("inexact scalar division"))
        );
    }

    #[test]
    fn symmetry_and_homogeneity_checks() {
        let x1 = MultiPoly::<i64>::var(3, 0);
        let x2 = MultiPoly::<i64>::var(3, 1);
        let x3 = MultiPoly::<i64>::var(3, 2);
        let e1 = &(&x1 + &x2) + &x3;
        assert!(e1.is_symmetric());
        assert!(e1.is_homogeneous());
        assert_eq!(e1.total_degree(), 1);
        let skew = &x1 + &x2.scale(&2);
        assert!(!skew.is_symmetric());
        let mixed = &x1 + &(&x2 * &x3);
        assert!(!mixed.is_homogeneous());
        assert!(MultiPoly::<i64>::zero(3).is_homogeneous());
    }

    #[test]
    fn embedding_shifts_variables() {
        let x1 = MultiPoly::<i64>::var(2, 0);
        let x2 = MultiPoly::<i64>::var(2, 1);
        let p = (&x1 * &x2).embed(5, 2);
        assert_eq!(p.n_vars(), 5);
        assert_eq!(p.coeff(&[0, 0, 1, 1, 0]), 1);
    }

    #[test]
    fn display_forms() {
        assert_eq!(MultiPoly::<i64>::zero(2).to_string(), "0");
        assert_eq!(MultiPoly::<i64>::constant(2, -1).to_string(), "-1");
        let x1 = MultiPoly::<i64>::var(3, 0);
        let x2 = MultiPoly::<i64>::var(3, 1);
        let x3 = MultiPoly::<i64>::var(3, 2);
        let p = &(&(&x1 * &x1) * &x2) - &x3.scale(&2);
        assert_eq!(p.to_string(), "x1^2*x2 - 2*x3");
        assert_eq!((&-&x1).to_string(), "-x1");
        assert_eq!(p.format_vars("v"), "v1^2*v2 - 2*v3");
    }

    #[test]
    fn i64_overflow_panics_bigint_does_not() {
        let big = MultiPoly::<i64>::constant(1, i64::MAX);
        let r = catch_unwind(AssertUnwindSafe(|| big.scale(&2)));
        assert!(r.is_err(), "i64 coefficient overflow must panic");

        let big = MultiPoly::<BigInt>::constant(1, BigInt::from(i64::MAX));
        let doubled = big.scale(&BigInt::from(2));
        assert_eq!(
            doubled.coeff(&[0]),
            BigInt::from(i64::MAX) * BigInt::from(2)
        );
    }

    #[test]
    fn coeff_lookup() {
        let p = MultiPoly::<i64>::from_terms(2, vec![(vec![2, 1], 7)]);
        assert_eq!(p.coeff(&[2, 1]), 7);
        assert_eq!(p.coeff(&[1, 2]), 0);
    }
}

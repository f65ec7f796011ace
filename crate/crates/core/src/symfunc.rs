//! Classical symmetric polynomial bases in finitely many variables, and
//! expansion of symmetric polynomials into the elementary basis.
//!
//! All four bases (e, p, m, s) are materialized as concrete `MultiPoly`
//! values in `N` variables. Expansions back out of monomial form use greedy
//! peeling against the lex-greatest exponent pattern: `e_lambda` equals
//! `m_{lambda*}` plus dominance-lower orbits, so subtracting the matched
//! basis element strictly lowers the leading term and the loop terminates.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::Error;
use crate::partition::Partition;
use crate::poly::{cadd, Coeff, MultiPoly};

/// Integer combination of elementary basis elements `e_lambda`, keyed by
/// partition.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EBasisExpr<C> {
    coeffs: BTreeMap<Partition, C>,
}

impl<C: Coeff> EBasisExpr<C> {
    pub fn new() -> Self {
        EBasisExpr {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coeffs<I>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = (Partition, C)>,
    {
        let mut out = Self::new();
        for (l, c) in coeffs {
            out.add_coeff(l, c);
        }
        out
    }

    fn add_coeff(&mut self, lambda: Partition, c: C) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(lambda) {
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

    pub fn coeff(&self, lambda: &Partition) -> C {
        self.coeffs.get(lambda).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &C)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub fn negative_terms(&self) -> Vec<(Partition, C)> {
        self.coeffs
            .iter()
            .filter(|(_, c)| c.is_negative())
            .map(|(l, c)| (l.clone(), c.clone()))
            .collect()
    }

    /// Reconstructs the expression as a polynomial in `n_vars` variables.
    /// Faithful when `n_vars` is at least the weight of every key.
    pub fn to_poly(&self, n_vars: usize) -> MultiPoly<C> {
        let mut acc = MultiPoly::zero(n_vars);
        for (lambda, c) in &self.coeffs {
            acc = &acc + &e_prod(lambda, n_vars).scale(c);
        }
        acc
    }
}

impl<C: Coeff> fmt::Display for EBasisExpr<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (lambda, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if lambda.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "e[{lambda}]")?;
            } else {
                write!(f, "{mag}*e[{lambda}]")?;
            }
        }
        Ok(())
    }
}

/// Elementary symmetric polynomial `e_m` in `n_vars` variables. Zero for
/// `m < 0` or `m > n_vars`; one for `m = 0`.
pub fn e_poly<C: Coeff>(m: i64, n_vars: usize) -> MultiPoly<C> {
    assert!(n_vars >= 1, "need at least one variable");
    if m < 0 || m as usize > n_vars {
        return MultiPoly::zero(n_vars);
    }
    let m = m as usize;
    let mut terms = Vec::new();
    let mut subset: Vec<usize> = (0..m).collect();
    loop {
        let mut exps = vec![0u32; n_vars];
        for &i in &subset {
            exps[i] = 1;
        }
        terms.push((exps, C::one()));
        // next m-subset in lex order
        let mut i = m;
        loop {
            if i == 0 {
                return MultiPoly::from_terms(n_vars, terms);
            }
            i -= 1;
            if subset[i] != i + n_vars - m {
                break;
            }
        }
        subset[i] += 1;
        for j in i + 1..m {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Power sum `p_m = sum x_i^m`, `m >= 1`.
pub fn p_poly<C: Coeff>(m: u32, n_vars: usize) -> MultiPoly<C> {
    assert!(m >= 1, "power sum needs m >= 1");
    assert!(n_vars >= 1, "need at least one variable");
    MultiPoly::from_terms(
        n_vars,
        (0..n_vars).map(|i| {
            let mut exps = vec![0u32; n_vars];
            exps[i] = m;
            (exps, C::one())
        }),
    )
}

/// Monomial symmetric polynomial: each distinct permutation of the
/// exponent pattern of `lambda` appears once.
pub fn m_poly<C: Coeff>(lambda: &Partition, n_vars: usize) -> Result<MultiPoly<C>, Error> {
    if lambda.len() > n_vars {
        return Err(Error::TooFewVariables {
            needed: lambda.len(),
            have: n_vars,
        });
    }
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    *counts.entry(0).or_insert(0) += n_vars - lambda.len();
    for &p in lambda.parts() {
        *counts.entry(p).or_insert(0) += 1;
    }
    counts.retain(|_, c| *c > 0);
    let mut terms = Vec::new();
    let mut cur = Vec::with_capacity(n_vars);
    distinct_arrangements(&mut counts, &mut cur, n_vars, &mut terms);
    Ok(MultiPoly::from_terms(
        n_vars,
        terms.into_iter().map(|e| (e, C::one())),
    ))
}

fn distinct_arrangements(
    counts: &mut BTreeMap<u32, usize>,
    cur: &mut Vec<u32>,
    n_vars: usize,
    out: &mut Vec<Vec<u32>>,
) {
    if cur.len() == n_vars {
        out.push(cur.clone());
        return;
    }
    let keys: Vec<u32> = counts.keys().copied().collect();
    for k in keys {
        let c = counts[&k];
        if c == 0 {
            continue;
        }
        counts.insert(k, c - 1);
        cur.push(k);
        distinct_arrangements(counts, cur, n_vars, out);
        cur.pop();
        counts.insert(k, c);
    }
}

/// Schur polynomial by the dual Jacobi-Trudi determinant
/// `det(e_{lambda*_i + j - i})` of size `lambda_1 x lambda_1`.
pub fn s_poly<C: Coeff>(lambda: &Partition, n_vars: usize) -> MultiPoly<C> {
    assert!(
        lambda.weight() as usize <= n_vars,
        "need n_vars >= weight for a faithful Schur polynomial"
    );
    let conj = lambda.conjugate();
    let t = conj.len();
    if t == 0 {
        return MultiPoly::one(n_vars);
    }
    let entries: Vec<Vec<MultiPoly<C>>> = (0..t)
        .map(|i| {
            (0..t)
                .map(|j| e_poly(conj.parts()[i] as i64 + j as i64 - i as i64, n_vars))
                .collect()
        })
        .collect();
    let mut memo = HashMap::new();
    det_by_rows(&entries, 0, n_vars, &mut memo)
}

/// Laplace expansion along successive rows, memoized on the set of used
/// columns. Sign tracking: the parity of a column's position among the
/// still-unused columns.
fn det_by_rows<C: Coeff>(
    entries: &[Vec<MultiPoly<C>>],
    used: u32,
    n_vars: usize,
    memo: &mut HashMap<u32, MultiPoly<C>>,
) -> MultiPoly<C> {
    let t = entries.len();
    let row = used.count_ones() as usize;
    if row == t {
        return MultiPoly::one(n_vars);
    }
    if let Some(p) = memo.get(&used) {
        return p.clone();
    }
    let mut acc = MultiPoly::zero(n_vars);
    let mut negate = false;
    for j in 0..t {
        if used & (1 << j) != 0 {
            continue;
        }
        if !entries[row][j].is_zero() {
            let sub = det_by_rows(entries, used | (1 << j), n_vars, memo);
            let term = &entries[row][j] * &sub;
            acc = if negate { &acc - &term } else { &acc + &term };
        }
        negate = !negate;
    }
    memo.insert(used, acc.clone());
    acc
}

fn e_prod<C: Coeff>(lambda: &Partition, n_vars: usize) -> MultiPoly<C> {
    let mut acc = MultiPoly::one(n_vars);
    for &part in lambda.parts() {
        acc = &acc * &e_poly(part as i64, n_vars);
    }
    acc
}

fn check_expandable<C: Coeff>(f: &MultiPoly<C>) -> Result<u32, Error> {
    if !f.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let deg = f.total_degree();
    if (f.n_vars() as u32) < deg {
        return Err(Error::TooFewVariables {
            needed: deg as usize,
            have: f.n_vars(),
        });
    }
    Ok(deg)
}

fn leading_pattern<C: Coeff>(g: &MultiPoly<C>) -> (Vec<u32>, Partition, C) {
    let (exps, c) = g.terms().last().expect("nonzero polynomial");
    let mut sorted = exps.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    while sorted.last() == Some(&0) {
        sorted.pop();
    }
    let mu = Partition::new(sorted).expect("sorted exponents form a partition");
    (exps.to_vec(), mu, c.clone())
}

/// Expands a symmetric homogeneous polynomial in the elementary basis.
///
/// At each step the lex-greatest surviving exponent vector is sorted into a
/// pattern `mu`; the matching basis element is `e_{mu*}` (whose top orbit
/// is `m_mu` with coefficient 1), so subtracting `c * e_{mu*}` removes it.
pub fn expand_in_e<C: Coeff>(f: &MultiPoly<C>) -> Result<EBasisExpr<C>, Error> {
    check_expandable(f)?;
    let n_vars = f.n_vars();
    let mut expr = EBasisExpr::new();
    let mut g = f.clone();
    let mut prev_lead: Option<Vec<u32>> = None;
    while !g.is_zero() {
        let (lead, mu, c) = leading_pattern(&g);
        if let Some(prev) = &prev_lead {
            if lead >= *prev {
                return Err(Error::Internal("e-expansion failed to reduce leading term"));
            }
        }
        let lambda = mu.conjugate();
        g = &g - &e_prod(&lambda, n_vars).scale(&c);
        expr.add_coeff(lambda, c);
        prev_lead = Some(lead);
    }
    Ok(expr)
}

/// Expands a symmetric homogeneous polynomial in the Schur basis. Same
/// peeling as `expand_in_e`; here the top orbit of `s_mu` is `m_mu` itself
/// (Kostka unitriangularity), so the key is `mu` directly.
pub fn expand_in_s<C: Coeff>(f: &MultiPoly<C>) -> Result<BTreeMap<Partition, C>, Error> {
    check_expandable(f)?;
    let n_vars = f.n_vars();
    let mut coeffs = BTreeMap::new();
    let mut g = f.clone();
    let mut prev_lead: Option<Vec<u32>> = None;
    while !g.is_zero() {
        let (lead, mu, c) = leading_pattern(&g);
        if let Some(prev) = &prev_lead {
            if lead >= *prev {
                return Err(Error::Internal("s-expansion failed to reduce leading term"));
            }
        }
        g = &g - &s_poly(&mu, n_vars).scale(&c);
        coeffs.insert(mu, c);
        prev_lead = Some(lead);
    }
    coeffs.retain(|_, c| !c.is_zero());
    Ok(coeffs)
}

/// The two-row monomial symmetric polynomial through power sums:
/// `p_n p_k - p_{n+k}` for `n > k`, and `(p_n^2 - p_{2n}) / 2` for `n = k`.
pub fn mnk_powersum_form<C: Coeff>(n: u32, k: u32, n_vars: usize) -> Result<MultiPoly<C>, Error> {
    assert!(n >= k && k >= 1, "need n >= k >= 1");
    assert!(n_vars >= 2, "need at least two variables");
    let pn = p_poly::<C>(n, n_vars);
    if n > k {
        let pk = p_poly::<C>(k, n_vars);
        let pnk = p_poly::<C>(n + k, n_vars);
        Ok(&(&pn * &pk) - &pnk)
    } else {
        let p2n = p_poly::<C>(2 * n, n_vars);
        (&(&pn * &pn) - &p2n).exact_div_scalar(&C::from(2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;
    use proptest::prelude::*;

    type P = MultiPoly<i64>;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn elementary_examples() {
        let e23: P = e_poly(2, 3);
        assert_eq!(e23.n_terms(), 3);
        assert_eq!(e23.coeff(&[1, 1, 0]), 1);
        assert_eq!(e23.coeff(&[1, 0, 1]), 1);
        assert_eq!(e23.coeff(&[0, 1, 1]), 1);
        assert_eq!(e_poly::<i64>(0, 5), MultiPoly::one(5));
        assert!(e_poly::<i64>(4, 3).is_zero());
        assert!(e_poly::<i64>(-1, 3).is_zero());
        let e33: P = e_poly(3, 3);
        assert_eq!(e33.coeff(&[1, 1, 1]), 1);
        assert_eq!(e33.n_terms(), 1);
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(p_poly::<i64>(1, 3), e_poly(1, 3));
        let p22: P = p_poly(2, 2);
        let e1: P = e_poly(1, 2);
        let e2: P = e_poly(2, 2);
        assert_eq!(p22, &(&e1 * &e1) - &e2.scale(&2));
    }

    #[test]
    fn monomial_examples() {
        for n in 1..=4 {
            assert_eq!(m_poly::<i64>(&part(&[n]), 4).unwrap(), p_poly(n, 4));
        }
        let m21 = m_poly::<i64>(&part(&[2, 1]), 3).unwrap();
        assert_eq!(m21.n_terms(), 6);
        assert!(m21.terms().all(|(_, &c)| c == 1));
        assert_eq!(m21.coeff(&[2, 1, 0]), 1);
        assert_eq!(m21.coeff(&[0, 1, 2]), 1);
        assert_eq!(m_poly::<i64>(&part(&[1, 1]), 2).unwrap(), e_poly(2, 2));
        assert_eq!(
            m_poly::<i64>(&part(&[1, 1, 1]), 2),
            Err(Error::TooFewVariables { needed: 3, have: 2 })
        );
    }

    /// Independent Schur oracle: sum over semistandard tableaux of shape
    /// lambda with entries in 1..=N (rows weakly increase, columns strictly
    /// increase), each contributing its content monomial.
    fn ssyt_schur(lambda: &Partition, n_vars: usize) -> P {
        fn fill(
            shape: &[u32],
            rows: &mut Vec<Vec<u32>>,
            r: usize,
            c: usize,
            n_vars: usize,
            terms: &mut Vec<(Vec<u32>, i64)>,
        ) {
            if r == shape.len() {
                let mut exps = vec![0u32; n_vars];
                for row in rows.iter() {
                    for &v in row {
                        exps[(v - 1) as usize] += 1;
                    }
                }
                terms.push((exps, 1));
                return;
            }
            if c == shape[r] as usize {
                fill(shape, rows, r + 1, 0, n_vars, terms);
                return;
            }
            let min_left = if c > 0 { rows[r][c - 1] } else { 1 };
            let min_above = if r > 0 && (rows[r - 1].len() > c) {
                rows[r - 1][c] + 1
            } else {
                1
            };
            for v in min_left.max(min_above)..=(n_vars as u32) {
                rows[r].push(v);
                fill(shape, rows, r, c + 1, n_vars, terms);
                rows[r].pop();
            }
        }
        let shape: Vec<u32> = lambda.parts().to_vec();
        let mut rows: Vec<Vec<u32>> = vec![Vec::new(); shape.len()];
        let mut terms = Vec::new();
        fill(&shape, &mut rows, 0, 0, n_vars, &mut terms);
        MultiPoly::from_terms(n_vars, terms)
    }

    #[test]
    fn schur_examples() {
        assert_eq!(s_poly::<i64>(&part(&[1, 1, 1]), 3), e_poly(3, 3));
        assert_eq!(s_poly::<i64>(&part(&[1, 1, 1]), 4), e_poly(3, 4));
        let s21: P = s_poly(&part(&[2, 1]), 3);
        let e1: P = e_poly(1, 3);
        let e2: P = e_poly(2, 3);
        let e3: P = e_poly(3, 3);
        assert_eq!(s21, &(&e1 * &e2) - &e3);
        let s2: P = s_poly(&part(&[2]), 2);
        assert_eq!(
            s2,
            MultiPoly::from_terms(2, vec![(vec![2, 0], 1), (vec![1, 1], 1), (vec![0, 2], 1)])
        );
    }

    #[test]
    fn schur_matches_tableau_oracle() {
        for n in 1..=5u32 {
            for lambda in partitions_of(n) {
                let n_vars = n as usize;
                assert_eq!(
                    s_poly::<i64>(&lambda, n_vars),
                    ssyt_schur(&lambda, n_vars),
                    "shape {lambda}"
                );
            }
        }
    }

    #[test]
    fn schur_is_monomial_positive() {
        for n in 1..=6u32 {
            for lambda in partitions_of(n) {
                let s: P = s_poly(&lambda, 6);
                assert!(s.terms().all(|(_, &c)| c > 0), "shape {lambda}");
            }
        }
    }

    /// Newton-identity oracle working purely on e-basis coefficient maps:
    /// p_m = e_1 p_{m-1} - e_2 p_{m-2} + ... + (-1)^{m-1} m e_m, where
    /// multiplying by e_i appends a part i to every key.
    fn newton_p_in_e(m: u32) -> EBasisExpr<i64> {
        let mut table: Vec<BTreeMap<Partition, i64>> = vec![BTreeMap::new()];
        for cur in 1..=m {
            let mut acc: BTreeMap<Partition, i64> = BTreeMap::new();
            for i in 1..cur {
                let sign = if i % 2 == 1 { 1 } else { -1 };
                for (lambda, c) in &table[(cur - i) as usize] {
                    let mut parts = lambda.parts().to_vec();
                    parts.push(i);
                    let key = Partition::from_unsorted(parts).unwrap();
                    *acc.entry(key).or_insert(0) += sign * c;
                }
            }
            let sign = if cur % 2 == 1 { 1 } else { -1 };
            *acc.entry(part(&[cur])).or_insert(0) += sign * cur as i64;
            acc.retain(|_, c| *c != 0);
            table.push(acc);
        }
        EBasisExpr::from_coeffs(table.pop().unwrap())
    }

    #[test]
    fn power_sum_expansion_matches_newton_recurrence() {
        for m in 1..=7u32 {
            let p: P = p_poly(m, m as usize);
            assert_eq!(expand_in_e(&p).unwrap(), newton_p_in_e(m), "p_{m}");
        }
    }

    #[test]
    fn expansion_examples() {
        let got = expand_in_e(&p_poly::<i64>(2, 3)).unwrap();
        assert_eq!(
            got,
            EBasisExpr::from_coeffs(vec![(part(&[1, 1]), 1), (part(&[2]), -2)])
        );
        let got = expand_in_e(&e_poly::<i64>(3, 4)).unwrap();
        assert_eq!(got, EBasisExpr::from_coeffs(vec![(part(&[3]), 1)]));
        let p3 = expand_in_e(&p_poly::<i64>(3, 3)).unwrap();
        assert_eq!(
            p3,
            EBasisExpr::from_coeffs(vec![
                (part(&[3]), 3),
                (part(&[2, 1]), -3),
                (part(&[1, 1, 1]), 1)
            ])
        );
        assert_eq!(p3.to_string(), "3*e[3] - 3*e[2,1] + e[1,1,1]");
    }

    #[test]
    fn expansion_rejects_bad_input() {
        let x1 = P::var(2, 0);
        assert_eq!(expand_in_e(&x1.scale(&2)), Err(Error::NotSymmetric));
        let e1: P = e_poly(1, 2);
        let e2: P = e_poly(2, 2);
        assert_eq!(expand_in_e(&(&e1 + &e2)), Err(Error::NotHomogeneous));
        assert_eq!(
            expand_in_e(&p_poly::<i64>(3, 2)),
            Err(Error::TooFewVariables { needed: 3, have: 2 })
        );
    }

    #[test]
    fn schur_expansion_examples() {
        let coeffs = expand_in_s(&s_poly::<i64>(&part(&[2, 1]), 3)).unwrap();
        assert_eq!(coeffs, BTreeMap::from([(part(&[2, 1]), 1)]));
        let coeffs = expand_in_s(&p_poly::<i64>(2, 2)).unwrap();
        assert_eq!(
            coeffs,
            BTreeMap::from([(part(&[2]), 1), (part(&[1, 1]), -1)])
        );
    }

    #[test]
    fn two_row_power_sum_form() {
        assert_eq!(
            mnk_powersum_form::<i64>(2, 1, 3).unwrap(),
            m_poly(&part(&[2, 1]), 3).unwrap()
        );
        assert_eq!(
            mnk_powersum_form::<i64>(1, 1, 2).unwrap(),
            e_poly(2, 2)
        );
        assert_eq!(
            mnk_powersum_form::<i64>(3, 2, 5).unwrap(),
            m_poly(&part(&[3, 2]), 5).unwrap()
        );
        assert_eq!(
            mnk_powersum_form::<i64>(2, 2, 4).unwrap(),
            m_poly(&part(&[2, 2]), 4).unwrap()
        );
    }

    fn arb_ebasis() -> impl Strategy<Value = EBasisExpr<i64>> {
        (1u32..=6).prop_flat_map(|n| {
            let lambdas = partitions_of(n);
            let len = lambdas.len();
            prop::collection::vec(-4i64..=4, len).prop_map(move |cs| {
                EBasisExpr::from_coeffs(lambdas.iter().cloned().zip(cs))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn expansion_inverts_reconstruction(expr in arb_ebasis()) {
            let deg = expr.iter().map(|(l, _)| l.weight()).max().unwrap_or(0);
            let n_vars = (deg as usize).max(1);
            let f = expr.to_poly(n_vars);
            prop_assert_eq!(expand_in_e(&f).unwrap(), expr);
        }
    }

    #[test]
    fn display_empty() {
        assert_eq!(EBasisExpr::<i64>::new().to_string(), "0");
    }
}

//! The graph homomorphism rho_G from symmetric functions into the
//! vertex-variable ring: e_i maps to the independent-set generating
//! polynomial e^G_i, and everything else follows through the elementary
//! basis.
//!
//! Coefficient extraction only ever looks at exponents up to a target
//! alpha, so products can run truncated: a `GPoly` carries an optional
//! per-variable cap and discards higher monomials eagerly. Truncated and
//! exact arithmetic agree on every monomial within cap.

use std::collections::HashMap;
use std::fmt;

use crate::chromatic::{chromatic_sym, clique_expand, AlphaMap};
use crate::error::Error;
use crate::graph::Graph;
use crate::partition::{partitions_of, Partition};
use crate::poly::{cmul, Coeff, MultiPoly};
use crate::symfunc::{e_poly, expand_in_e, m_poly, p_poly, s_poly, EBasisExpr};
use crate::uio::Uio;

/// Polynomial in the vertex variables v_1..v_N, optionally truncated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GPoly<C> {
    poly: MultiPoly<C>,
    cap: Option<Vec<u32>>,
}

impl<C: Coeff> GPoly<C> {
    fn from_poly(poly: MultiPoly<C>, cap: Option<&[u32]>) -> Self {
        let poly = match cap {
            Some(cap) => {
                assert_eq!(cap.len(), poly.n_vars(), "cap length mismatch");
                MultiPoly::from_terms(
                    poly.n_vars(),
                    poly.terms()
                        .filter(|(e, _)| e.iter().zip(cap).all(|(x, c)| x <= c))
                        .map(|(e, c)| (e.to_vec(), c.clone())),
                )
            }
            None => poly,
        };
        GPoly {
            poly,
            cap: cap.map(<[u32]>::to_vec),
        }
    }

    pub fn zero(n_vars: usize, cap: Option<&[u32]>) -> Self {
        Self::from_poly(MultiPoly::zero(n_vars), cap)
    }

    pub fn one(n_vars: usize, cap: Option<&[u32]>) -> Self {
        Self::from_poly(MultiPoly::one(n_vars), cap)
    }

    pub fn poly(&self) -> &MultiPoly<C> {
        &self.poly
    }

    pub fn cap(&self) -> Option<&[u32]> {
        self.cap.as_deref()
    }

    pub fn n_vars(&self) -> usize {
        self.poly.n_vars()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn compatible(&self, rhs: &Self) {
        assert_eq!(self.cap, rhs.cap, "mixed truncation caps");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.compatible(rhs);
        GPoly {
            poly: &self.poly + &rhs.poly,
            cap: self.cap.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.compatible(rhs);
        let poly = match &self.cap {
            Some(cap) => self.poly.mul_truncated(&rhs.poly, cap),
            None => &self.poly * &rhs.poly,
        };
        GPoly {
            poly,
            cap: self.cap.clone(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        GPoly {
            poly: self.poly.scale(c),
            cap: self.cap.clone(),
        }
    }

    /// Reinterprets under a cap, dropping monomials above it.
    pub fn with_cap(&self, cap: Option<&[u32]>) -> Self {
        Self::from_poly(self.poly.clone(), cap)
    }
}

impl<C: Coeff> fmt::Display for GPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.format_vars("v"))
    }
}

/// e^G_i: the sum over independent i-subsets of the product of their
/// vertex variables. One for i = 0, zero for i < 0 or i > |V|.
pub fn e_g<C: Coeff>(g: &Graph, i: i64) -> GPoly<C> {
    let n = g.n_vertices();
    if i < 0 || i as usize > n {
        return GPoly::zero(n, None);
    }
    let size = i as usize;
    let mut terms = Vec::new();
    let mut chosen = Vec::with_capacity(size);
    fn rec(
        g: &Graph,
        next: usize,
        remaining: usize,
        chosen_mask: u64,
        chosen: &mut Vec<usize>,
        terms: &mut Vec<Vec<u32>>,
    ) {
        if remaining == 0 {
            let mut exps = vec![0u32; g.n_vertices()];
            for &v in chosen.iter() {
                exps[v] = 1;
            }
            terms.push(exps);
            return;
        }
        for v in next..g.n_vertices() {
            if g.n_vertices() - v < remaining {
                break;
            }
            if g.neighbors_mask(v) & chosen_mask != 0 {
                continue;
            }
            chosen.push(v);
            rec(g, v + 1, remaining - 1, chosen_mask | (1 << v), chosen, terms);
            chosen.pop();
        }
    }
    rec(g, 0, size, 0, &mut chosen, &mut terms);
    GPoly {
        poly: MultiPoly::from_terms(n, terms.into_iter().map(|e| (e, C::one()))),
        cap: None,
    }
}

/// rho_G of an elementary-basis expression: sum of c_lambda times the
/// product of the e^G over the parts, with optional truncation.
pub fn apply_rho<C: Coeff>(g: &Graph, expr: &EBasisExpr<C>, cap: Option<&[u32]>) -> GPoly<C> {
    let n = g.n_vertices();
    let mut generators: HashMap<u32, GPoly<C>> = HashMap::new();
    let mut acc = GPoly::zero(n, cap);
    for (lambda, c) in expr.iter() {
        let mut prod = GPoly::one(n, cap);
        for &part in lambda.parts() {
            let gen = generators
                .entry(part)
                .or_insert_with(|| e_g::<C>(g, part as i64).with_cap(cap));
            prod = prod.mul(gen);
            if prod.is_zero() {
                break;
            }
        }
        acc = acc.add(&prod.scale(c));
    }
    acc
}

pub fn p_g<C: Coeff>(g: &Graph, m: u32, cap: Option<&[u32]>) -> Result<GPoly<C>, Error> {
    assert!(m >= 1, "power sum needs m >= 1");
    let expr = expand_in_e(&p_poly::<C>(m, m as usize))?;
    Ok(apply_rho(g, &expr, cap))
}

pub fn m_g<C: Coeff>(g: &Graph, lambda: &Partition, cap: Option<&[u32]>) -> Result<GPoly<C>, Error> {
    let w = lambda.weight() as usize;
    if w == 0 {
        return Ok(GPoly::one(g.n_vertices(), cap));
    }
    let expr = expand_in_e(&m_poly::<C>(lambda, w)?)?;
    Ok(apply_rho(g, &expr, cap))
}

pub fn s_g<C: Coeff>(g: &Graph, lambda: &Partition, cap: Option<&[u32]>) -> Result<GPoly<C>, Error> {
    let w = lambda.weight() as usize;
    if w == 0 {
        return Ok(GPoly::one(g.n_vertices(), cap));
    }
    let expr = expand_in_e(&s_poly::<C>(lambda, w))?;
    Ok(apply_rho(g, &expr, cap))
}

/// Coefficient of the squarefree monomial v_1 v_2 ... v_N.
pub fn squarefree_coeff<C: Coeff>(f: &GPoly<C>, n: usize) -> C {
    assert_eq!(f.n_vars(), n, "variable count mismatch");
    f.poly.coeff(&vec![1u32; n])
}

/// Coefficient of the monomial with exponents alpha.
pub fn coeff_alpha<C: Coeff>(f: &GPoly<C>, alpha: &AlphaMap) -> C {
    assert_eq!(f.n_vars(), alpha.len(), "variable count mismatch");
    f.poly.coeff(alpha.values())
}

/// The number m_lambda^U: squarefree coefficient of m^G_lambda over the
/// incomparability graph. Equals the e-basis coefficient c_lambda of the
/// graph's chromatic symmetric function.
pub fn m_coeff_u<C: Coeff>(u: &Uio, lambda: &Partition) -> Result<C, Error> {
    let n = u.n();
    if lambda.weight() as usize != n {
        return Err(Error::WeightMismatch {
            weight: lambda.weight() as usize,
            n,
        });
    }
    let g = u.incomparability_graph();
    let cap = vec![1u32; n];
    let f = m_g::<C>(&g, lambda, Some(&cap))?;
    Ok(squarefree_coeff(&f, n))
}

fn factorial_product<C: Coeff>(alpha: &AlphaMap) -> C {
    let mut acc = C::one();
    for &a in alpha.values() {
        for t in 2..=a as i64 {
            acc = cmul(&acc, &C::from(t));
        }
    }
    acc
}

/// Checks the clique-expansion bridge: the degree-n slice of the pairing
/// sum_{lambda of n} m_lambda(x) e^G_lambda(v), evaluated at [v^alpha] and
/// scaled by prod alpha(v)!, must equal X of the clique expansion
/// G^alpha in n = sum alpha colors.
pub fn verify_gnechrom<C: Coeff>(g: &Graph, alpha: &AlphaMap) -> Result<bool, Error> {
    if alpha.len() != g.n_vertices() {
        return Err(Error::InvalidArgument(format!(
            "alpha has {} entries for {} vertices",
            alpha.len(),
            g.n_vertices()
        )));
    }
    let n = alpha.total() as usize;
    if n > 7 {
        return Err(Error::SizeLimit(format!(
            "clique-expansion check supports total weight at most 7, got {n}"
        )));
    }
    let cap: Vec<u32> = alpha.values().to_vec();
    let mut lhs = MultiPoly::<C>::zero(n);
    for lambda in partitions_of(n as u32) {
        let e_lam = apply_rho(
            g,
            &EBasisExpr::from_coeffs(vec![(lambda.clone(), C::one())]),
            Some(&cap),
        );
        let ca = coeff_alpha(&e_lam, alpha);
        if !ca.is_zero() {
            lhs = &lhs + &m_poly::<C>(&lambda, n)?.scale(&ca);
        }
    }
    let lhs = lhs.scale(&factorial_product(alpha));
    let rhs = chromatic_sym::<C>(&clique_expand(g, alpha)?, n)?;
    Ok(lhs == rhs)
}

/// Bivariate consistency of the pairing at one degree:
/// sum_lambda m_lambda(x) e^G_lambda(v) = sum_lambda e_lambda(x)
/// m^G_lambda(v), with x running over n variables and v over the
/// vertices.
pub fn gcauchy_holds<C: Coeff>(g: &Graph, n: usize) -> Result<bool, Error> {
    let nv = g.n_vertices();
    let total = n + nv;
    let mut lhs = MultiPoly::<C>::zero(total);
    let mut rhs = MultiPoly::<C>::zero(total);
    for lambda in partitions_of(n as u32) {
        let mx = m_poly::<C>(&lambda, n)?.embed(total, 0);
        let ev = apply_rho(
            g,
            &EBasisExpr::from_coeffs(vec![(lambda.clone(), C::one())]),
            None,
        )
        .poly()
        .embed(total, n);
        lhs = &lhs + &(&mx * &ev);

        let mut ex = MultiPoly::<C>::one(n);
        for &part in lambda.parts() {
            ex = &ex * &e_poly(part as i64, n);
        }
        let ex = ex.embed(total, 0);
        let mv = m_g::<C>(g, &lambda, None)?.poly().embed(total, n);
        rhs = &rhs + &(&ex * &mv);
    }
    Ok(lhs == rhs)
}

//! Chromatic symmetric functions, their elementary-basis coefficients,
//! clique expansions, and acyclic-orientation sink counts.
//!
//! Two independent algorithms compute X_G: direct enumeration of proper
//! colorings, and inclusion-exclusion over edge subsets into power sums.
//! They must agree exactly; the sweep keeps them as mutual oracles.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::Error;
use crate::graph::Graph;
use crate::partition::Partition;
use crate::poly::{Coeff, MultiPoly};
use crate::symfunc::{expand_in_e, p_poly, EBasisExpr};

/// Per-vertex clique sizes for the expansion G^alpha.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaMap {
    mult: Vec<u32>,
}

impl AlphaMap {
    pub fn new(mult: Vec<u32>) -> Result<Self, Error> {
        if mult.iter().any(|&a| a == 0) {
            return Err(Error::InvalidArgument(
                "clique multiplicities must be positive".into(),
            ));
        }
        Ok(AlphaMap { mult })
    }

    pub fn uniform(n: usize) -> Self {
        AlphaMap { mult: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.mult.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn get(&self, v: usize) -> u32 {
        self.mult[v]
    }

    pub fn values(&self) -> &[u32] {
        &self.mult
    }

    pub fn total(&self) -> u32 {
        self.mult.iter().sum()
    }
}

fn check_colors(g: &Graph, r: usize) -> Result<(), Error> {
    if r < g.n_vertices() {
        return Err(Error::InsufficientColors {
            vertices: g.n_vertices(),
            colors: r,
        });
    }
    Ok(())
}

/// X_G in r variables by enumerating proper colorings. Vertices are
/// colored in descending-degree order so conflicts prune early.
pub fn chromatic_sym<C: Coeff>(g: &Graph, r: usize) -> Result<MultiPoly<C>, Error> {
    check_colors(g, r)?;
    let n = g.n_vertices();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    // for each position, the earlier positions holding neighbors
    let earlier: Vec<Vec<usize>> = (0..n)
        .map(|d| {
            (0..d)
                .filter(|&e| g.has_edge(order[d], order[e]))
                .collect()
        })
        .collect();
    let mut terms: Vec<(Vec<u32>, C)> = Vec::new();
    let mut colors = vec![usize::MAX; n];
    let mut exps = vec![0u32; r];
    fn rec<C: Coeff>(
        d: usize,
        r: usize,
        earlier: &[Vec<usize>],
        colors: &mut Vec<usize>,
        exps: &mut Vec<u32>,
        terms: &mut Vec<(Vec<u32>, C)>,
    ) {
        if d == earlier.len() {
            terms.push((exps.clone(), C::one()));
            return;
        }
        'colors: for c in 0..r {
            for &e in &earlier[d] {
                if colors[e] == c {
                    continue 'colors;
                }
            }
            colors[d] = c;
            exps[c] += 1;
            rec(d + 1, r, earlier, colors, exps, terms);
            exps[c] -= 1;
            colors[d] = usize::MAX;
        }
    }
    rec(0, r, &earlier, &mut colors, &mut exps, &mut terms);
    Ok(MultiPoly::from_terms(r, terms))
}

/// X_G by inclusion-exclusion: sum over edge subsets S of
/// (-1)^|S| p_{lambda(S)}, where lambda(S) lists the component sizes of
/// (V, S). Independent of `chromatic_sym` by construction.
pub fn chromatic_sym_edges<C: Coeff>(g: &Graph, r: usize) -> Result<MultiPoly<C>, Error> {
    check_colors(g, r)?;
    let n = g.n_vertices();
    let edges = g.edges();
    assert!(edges.len() <= 24, "edge-subset expansion is exponential");
    let mut signed: BTreeMap<Partition, i64> = BTreeMap::new();
    for mask in 0u32..(1 << edges.len()) {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (e, &(u, v)) in edges.iter().enumerate() {
            if mask & (1 << e) != 0 {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru] = rv;
                }
            }
        }
        let mut sizes: HashMap<usize, u32> = HashMap::new();
        for v in 0..n {
            *sizes.entry(find(&mut parent, v)).or_insert(0) += 1;
        }
        let lambda = Partition::from_unsorted(sizes.into_values().collect())
            .expect("component sizes are positive");
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        *signed.entry(lambda).or_insert(0) += sign;
    }
    let mut acc = MultiPoly::zero(r);
    for (lambda, count) in signed {
        if count == 0 {
            continue;
        }
        let mut prod = MultiPoly::one(r);
        for &part in lambda.parts() {
            prod = &prod * &p_poly(part, r);
        }
        acc = &acc + &prod.scale(&C::from(count));
    }
    Ok(acc)
}

/// Coefficients c_lambda of X_G in the elementary basis, with r = |V|
/// colors (the faithful minimum).
pub fn e_coefficients<C: Coeff>(g: &Graph) -> Result<EBasisExpr<C>, Error> {
    expand_in_e(&chromatic_sym(g, g.n_vertices())?)
}

/// Replaces vertex v by a clique of size alpha(v); cliques are joined
/// completely exactly when the base vertices are adjacent. New vertices
/// are grouped by base vertex in base order.
pub fn clique_expand(g: &Graph, alpha: &AlphaMap) -> Result<Graph, Error> {
    if alpha.len() != g.n_vertices() {
        return Err(Error::InvalidArgument(format!(
            "alpha has {} entries for {} vertices",
            alpha.len(),
            g.n_vertices()
        )));
    }
    let mut offset = Vec::with_capacity(g.n_vertices());
    let mut total = 0usize;
    for v in 0..g.n_vertices() {
        offset.push(total);
        total += alpha.get(v) as usize;
    }
    let block = |v: usize| offset[v]..offset[v] + alpha.get(v) as usize;
    let mut edges = Vec::new();
    for v in 0..g.n_vertices() {
        let ids: Vec<usize> = block(v).collect();
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                edges.push((ids[i], ids[j]));
            }
        }
        for w in v + 1..g.n_vertices() {
            if g.has_edge(v, w) {
                for a in block(v) {
                    for b in block(w) {
                        edges.push((a, b));
                    }
                }
            }
        }
    }
    Graph::new(total, edges)
}

/// Number of acyclic orientations by sink count. Each orientation is
/// reached through its topological orders and deduplicated by its
/// edge-direction bitmask.
pub fn sink_histogram(g: &Graph) -> Result<BTreeMap<usize, u64>, Error> {
    let n = g.n_vertices();
    if n > 8 {
        return Err(Error::SizeLimit(format!(
            "sink histograms support at most 8 vertices, got {n}"
        )));
    }
    let edges = g.edges();
    let mut orientations: HashSet<u32> = HashSet::new();
    let mut pos = vec![usize::MAX; n];
    fn rec(
        depth: usize,
        n: usize,
        used: u32,
        pos: &mut Vec<usize>,
        edges: &[(usize, usize)],
        out: &mut HashSet<u32>,
    ) {
        if depth == n {
            let mut mask = 0u32;
            for (e, &(u, v)) in edges.iter().enumerate() {
                if pos[u] < pos[v] {
                    mask |= 1 << e;
                }
            }
            out.insert(mask);
            return;
        }
        for v in 0..n {
            if used & (1 << v) == 0 {
                pos[v] = depth;
                rec(depth + 1, n, used | (1 << v), pos, edges, out);
                pos[v] = usize::MAX;
            }
        }
    }
    rec(0, n, 0, &mut pos, &edges, &mut orientations);
    let mut hist = BTreeMap::new();
    for mask in orientations {
        let mut outdeg = vec![0u32; n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if mask & (1 << e) != 0 {
                outdeg[u] += 1;
            } else {
                outdeg[v] += 1;
            }
        }
        let sinks = outdeg.iter().filter(|&&d| d == 0).count();
        *hist.entry(sinks).or_insert(0) += 1;
    }
    Ok(hist)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityReport<C> {
    pub is_e_positive: bool,
    pub negative_terms: Vec<(Partition, C)>,
}

pub fn positivity_report<C: Coeff>(expr: &EBasisExpr<C>) -> PositivityReport<C> {
    let negative_terms = expr.negative_terms();
    PositivityReport {
        is_e_positive: negative_terms.is_empty(),
        negative_terms,
    }
}

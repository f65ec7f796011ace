//! Unit interval orders, canonically encoded by their Hessenberg vector.
//!
//! Elements are 1-based ids ordered by interval left endpoint. The vector
//! h determines everything: element i precedes j iff j > h(i), and the
//! arrow i -> j (i not strictly above j) holds iff i <= h(j). Both
//! formulas are uniform in i, j, including i = j, where the arrow always
//! holds because an interval intersects itself.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::error::Error;
use crate::graph::Graph;

/// Relative position of two distinct elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// First entirely left of second.
    Prec,
    /// First entirely right of second.
    Succ,
    /// Intervals overlap.
    Intersect,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Uio {
    h: Vec<u8>,
}

impl Uio {
    pub fn from_hessenberg(h: &[u8]) -> Result<Self, Error> {
        let n = h.len();
        if n == 0 {
            return Err(Error::InvalidHessenberg("empty vector".into()));
        }
        if n > 64 {
            return Err(Error::InvalidHessenberg(format!(
                "length {n} exceeds the supported maximum of 64"
            )));
        }
        for (idx, &v) in h.iter().enumerate() {
            let i = idx as u8 + 1;
            if v < i || v as usize > n {
                return Err(Error::InvalidHessenberg(format!(
                    "h({i}) = {v} outside [{i}, {n}]"
                )));
            }
        }
        if h.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidHessenberg(
                "values must be weakly increasing".into(),
            ));
        }
        Ok(Uio { h: h.to_vec() })
    }

    /// Builds the UIO of the unit intervals [x_i, x_i + 1). Endpoints are
    /// sorted ascending (stably, so ties keep input order) and relabeled
    /// 1..N; then h(i) is the largest j with x_j < x_i + 1.
    pub fn from_left_endpoints(xs: &[Rational64]) -> Self {
        assert!(!xs.is_empty(), "need at least one interval");
        let mut sorted = xs.to_vec();
        sorted.sort();
        let one = Rational64::from_integer(1);
        let h: Vec<u8> = sorted
            .iter()
            .map(|&xi| sorted.iter().filter(|&&xj| xj < xi + one).count() as u8)
            .collect();
        Uio::from_hessenberg(&h).expect("interval systems induce valid Hessenberg vectors")
    }

    pub fn n(&self) -> usize {
        self.h.len()
    }

    pub fn hessenberg(&self) -> &[u8] {
        &self.h
    }

    /// h(i), 1-based.
    pub fn h_of(&self, i: u8) -> u8 {
        assert!(i >= 1 && i as usize <= self.h.len(), "element id out of range");
        self.h[i as usize - 1]
    }

    fn check_element(&self, i: u8) -> Result<(), Error> {
        if i < 1 || i as usize > self.h.len() {
            return Err(Error::ElementOutOfRange(i));
        }
        Ok(())
    }

    /// i -> j, i.e. interval i is not entirely right of interval j.
    pub fn arrow(&self, i: u8, j: u8) -> bool {
        assert!(i >= 1 && i as usize <= self.h.len(), "element id out of range");
        i <= self.h_of(j)
    }

    /// i entirely left of j.
    pub fn prec(&self, i: u8, j: u8) -> bool {
        assert!(j >= 1 && j as usize <= self.h.len(), "element id out of range");
        j > self.h_of(i)
    }

    pub fn relation(&self, i: u8, j: u8) -> Result<Relation, Error> {
        self.check_element(i)?;
        self.check_element(j)?;
        if i == j {
            return Err(Error::SelfRelation);
        }
        if self.prec(i, j) {
            Ok(Relation::Prec)
        } else if self.prec(j, i) {
            Ok(Relation::Succ)
        } else {
            Ok(Relation::Intersect)
        }
    }

    /// Restriction to a subset, relabeled 1..|S| in ascending id order.
    /// All pairwise relations are preserved.
    pub fn induced(&self, subset: &[u8]) -> Result<Uio, Error> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        for &s in subset {
            self.check_element(s)?;
        }
        let mut s = subset.to_vec();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedElements);
        }
        let h: Vec<u8> = s
            .iter()
            .map(|&a| s.iter().filter(|&&b| b <= self.h_of(a)).count() as u8)
            .collect();
        Uio::from_hessenberg(&h)
    }

    /// Graph on 0-based vertices i-1 with an edge iff elements i, j
    /// intersect.
    pub fn incomparability_graph(&self) -> Graph {
        let n = self.n();
        let mut edges = Vec::new();
        for i in 1..=n as u8 {
            for j in i + 1..=n as u8 {
                if !self.prec(i, j) {
                    edges.push((i as usize - 1, j as usize - 1));
                }
            }
        }
        Graph::new(n, edges).expect("incomparability graph is simple")
    }

    /// The strict order: i < j iff i entirely left of j.
    pub fn poset(&self) -> Poset {
        let n = self.n();
        let mut pairs = Vec::new();
        for i in 1..=n as u8 {
            for j in 1..=n as u8 {
                if i != j && self.prec(i, j) {
                    pairs.push((i, j));
                }
            }
        }
        Poset::new(n, &pairs).expect("interval order is irreflexive and transitive")
    }

    /// An integer-scaled interval realization: left endpoints x_i = c_i/M
    /// with M = N+1, satisfying every relation of the order. Solved as a
    /// longest-path problem over the difference constraints
    ///   c_j >= c_{j-1}            (sorted by left endpoint)
    ///   c_{h(i)+1} >= c_i + M     (first successor lies a full unit right)
    ///   c_i >= c_{h(i)} - (M-1)   (last intersecting element stays close)
    /// and verified by rebuilding the UIO from the result.
    pub fn canonical_left_endpoints(&self) -> Result<Vec<Rational64>, Error> {
        let n = self.n();
        let m = n as i64 + 1;
        let mut edges: Vec<(usize, usize, i64)> = Vec::new();
        for j in 1..n {
            edges.push((j - 1, j, 0));
        }
        for i in 0..n {
            let hi = self.h[i] as usize;
            if hi < n {
                edges.push((i, hi, m));
            }
            edges.push((hi - 1, i, -(m - 1)));
        }
        let mut c = vec![0i64; n];
        for round in 0..=n {
            let mut changed = false;
            for &(u, v, w) in &edges {
                if c[u] + w > c[v] {
                    c[v] = c[u] + w;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
            if round == n {
                return Err(Error::Internal("unsatisfiable interval constraints"));
            }
        }
        let base = c[0];
        let xs: Vec<Rational64> = c
            .iter()
            .map(|&ci| Rational64::new(ci - base, m))
            .collect();
        if Uio::from_left_endpoints(&xs) != *self {
            return Err(Error::Internal("interval realization round-trip mismatch"));
        }
        Ok(xs)
    }
}

impl fmt::Display for Uio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.h {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Uio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let h = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad Hessenberg value {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Uio::from_hessenberg(&h).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Every UIO on n elements, in lexicographic order of h.
pub fn generate_all(n: usize) -> Result<Vec<Uio>, Error> {
    if n < 1 || n > 12 {
        return Err(Error::InvalidArgument(format!(
            "UIO generation supports sizes 1..=12, got {n}"
        )));
    }
    let mut out = Vec::new();
    let mut h = Vec::with_capacity(n);
    extend_hessenberg(n, &mut h, &mut out);
    Ok(out)
}

fn extend_hessenberg(n: usize, h: &mut Vec<u8>, out: &mut Vec<Uio>) {
    if h.len() == n {
        out.push(Uio { h: h.clone() });
        return;
    }
    let i = h.len() as u8 + 1;
    let lo = h.last().copied().unwrap_or(1).max(i);
    for v in lo..=n as u8 {
        h.push(v);
        extend_hessenberg(n, h, out);
        h.pop();
    }
}

/// Finite poset given by its strict order relation, ids 1..N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    below: Vec<u64>,
}

impl Poset {
    pub fn new(n: usize, pairs: &[(u8, u8)]) -> Result<Self, Error> {
        if n > 64 {
            return Err(Error::SizeLimit(format!(
                "posets support at most 64 elements, got {n}"
            )));
        }
        let mut below = vec![0u64; n];
        for &(a, b) in pairs {
            if a < 1 || a as usize > n {
                return Err(Error::ElementOutOfRange(a));
            }
            if b < 1 || b as usize > n {
                return Err(Error::ElementOutOfRange(b));
            }
            if a == b {
                return Err(Error::InvalidArgument(format!(
                    "strict order cannot relate {a} to itself"
                )));
            }
            below[a as usize - 1] |= 1 << (b as usize - 1);
        }
        for a in 0..n {
            if below[a] & (1 << a) != 0 {
                return Err(Error::InvalidArgument("relation is not irreflexive".into()));
            }
            let mut bs = below[a];
            while bs != 0 {
                let b = bs.trailing_zeros() as usize;
                bs &= bs - 1;
                if below[b] & !below[a] != 0 {
                    return Err(Error::InvalidArgument("relation is not transitive".into()));
                }
            }
        }
        Ok(Poset { n, below })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn less(&self, a: u8, b: u8) -> bool {
        self.below[a as usize - 1] & (1 << (b as usize - 1)) != 0
    }

    pub fn comparable(&self, a: u8, b: u8) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    fn is_chain(&self, mask: u64) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut others = rest;
            while others != 0 {
                let b = others.trailing_zeros() as usize;
                others &= others - 1;
                if !self.comparable(a as u8 + 1, b as u8 + 1) {
                    return false;
                }
            }
        }
        true
    }

    fn chains_of_size(&self, size: usize) -> Vec<u64> {
        let full: u64 = (1 << self.n) - 1;
        (0..=full)
            .filter(|&m| m.count_ones() as usize == size && self.is_chain(m))
            .collect()
    }

    /// True iff the poset contains no pair of chains of sizes a and b
    /// whose elements are pairwise incomparable across the two chains.
    /// Brute force over subsets; verification scale only.
    pub fn is_ab_free(&self, a: usize, b: usize) -> bool {
        assert!(a >= 1 && b >= 1, "pattern sizes must be positive");
        assert!(self.n <= 16, "pattern search is exponential in the element count");
        let comp_masks: Vec<u64> = (0..self.n)
            .map(|i| {
                let mut m = 0u64;
                for j in 0..self.n {
                    if i != j && self.comparable(i as u8 + 1, j as u8 + 1) {
                        m |= 1 << j;
                    }
                }
                m
            })
            .collect();
        let chains_a = self.chains_of_size(a);
        let chains_b = if a == b {
            chains_a.clone()
        } else {
            self.chains_of_size(b)
        };
        for &ca in &chains_a {
            'next: for &cb in &chains_b {
                if ca & cb != 0 {
                    continue;
                }
                let mut elems = ca;
                while elems != 0 {
                    let x = elems.trailing_zeros() as usize;
                    elems &= elems - 1;
                    if comp_masks[x] & cb != 0 {
                        continue 'next;
                    }
                }
                return false;
            }
        }
        true
    }
}

/// A single relational claim in a cyclic chain of claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicalSym {
    /// Strictly left of.
    Prec,
    /// Arrow (not strictly right of).
    Arrow,
}

/// Evaluates the conjunction sym_0(z_0, z_1) and sym_1(z_1, z_2) and ...
/// and sym_{t-1}(z_{t-1}, z_0) around the closed loop. Repeated elements
/// are allowed.
///
/// Unsatisfiable whenever the Prec symbols outnumber-or-tie the Arrow
/// symbols: in any interval realization each Prec claim forces a gap of at
/// least one unit rightward while each Arrow claim allows strictly less
/// than one unit leftward, and the displacements around a closed loop sum
/// to zero.
pub fn closed_statement(u: &Uio, elems: &[u8], pattern: &[LogicalSym]) -> bool {
    assert_eq!(
        elems.len(),
        pattern.len(),
        "one symbol per consecutive pair around the loop"
    );
    assert!(!elems.is_empty(), "empty loop has no statement");
    elems.iter().zip(pattern).enumerate().all(|(i, (&z, sym))| {
        let next = elems[(i + 1) % elems.len()];
        match sym {
            LogicalSym::Prec => u.prec(z, next),
            LogicalSym::Arrow => u.arrow(z, next),
        }
    })
}

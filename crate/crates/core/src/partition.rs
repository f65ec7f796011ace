//! Integer partitions.
//!
//! Partitions are stored with weakly decreasing positive parts. The text
//! form used by the CLI and report files is the bare comma list, e.g.
//! `"2,1"`; the empty partition prints as `""`.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A partition of a non-negative integer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, rejecting zero parts and wrong orderings.
    pub fn new(parts: Vec<u32>) -> Result<Self, Error> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(
                "parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from parts in any order.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self, Error> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Conjugate partition: column lengths of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0) as usize;
        let mut parts = Vec::with_capacity(cols);
        for j in 1..=cols {
            let count = self.parts.iter().filter(|&&p| p as usize >= j).count() as u32;
            parts.push(count);
        }
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition part {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// All partitions of `n` in reverse-lexicographic order, so `(n)` comes
/// first and `(1,...,1)` last.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    descend(n, n, &mut stack, &mut out);
    out
}

fn descend(rem: u32, max: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rem == 0 {
        out.push(Partition {
            parts: stack.clone(),
        });
        return;
    }
    let top = rem.min(max);
    for part in (1..=top).rev() {
        stack.push(part);
        descend(rem - part, part, stack, out);
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Independent oracle: every composition of n, sorted and deduplicated.
    fn oracle_partitions(n: u32) -> BTreeSet<Vec<u32>> {
        fn compositions(rem: u32, cur: &mut Vec<u32>, out: &mut BTreeSet<Vec<u32>>) {
            if rem == 0 {
                let mut sorted = cur.clone();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                out.insert(sorted);
                return;
            }
            for first in 1..=rem {
                cur.push(first);
                compositions(rem - first, cur, out);
                cur.pop();
            }
        }
        let mut out = BTreeSet::new();
        compositions(n, &mut Vec::new(), &mut out);
        out
    }

    fn parts(p: &Partition) -> Vec<u32> {
        p.parts().to_vec()
    }

    #[test]
    fn matches_oracle_up_to_ten() {
        for n in 1..=10 {
            let got: BTreeSet<Vec<u32>> =
                partitions_of(n).iter().map(|p| parts(p)).collect();
            assert_eq!(got, oracle_partitions(n), "partitions of {n}");
            assert_eq!(got.len(), partitions_of(n).len(), "no duplicates for {n}");
        }
    }

    #[test]
    fn counts_and_order() {
        assert_eq!(partitions_of(0).len(), 1);
        assert!(partitions_of(0)[0].is_empty());
        assert_eq!(partitions_of(7).len(), 15);
        let four: Vec<Vec<u32>> = partitions_of(4).iter().map(parts).collect();
        assert_eq!(
            four,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
    }

    #[test]
    fn conjugate_examples() {
        let p = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(parts(&p.conjugate()), vec![2, 1, 1]);
        assert_eq!(p.conjugate().conjugate(), p);
        assert_eq!(parts(&Partition::new(vec![2, 2]).unwrap().conjugate()), vec![2, 2]);
        assert!(Partition::empty().conjugate().is_empty());
    }

    #[test]
    fn conjugate_is_involution() {
        for n in 0..=9 {
            for p in partitions_of(n) {
                assert_eq!(p.conjugate().conjugate(), p);
                assert_eq!(p.conjugate().weight(), p.weight());
            }
        }
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::from_unsorted(vec![1, 3, 2]).is_ok());
    }

    #[test]
    fn text_round_trip() {
        for n in 0..=8 {
            for p in partitions_of(n) {
                let s = p.to_string();
                assert_eq!(s.parse::<Partition>().unwrap(), p);
            }
        }
        assert!("2,3".parse::<Partition>().is_err());
        assert!("x".parse::<Partition>().is_err());
    }
}

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Composition;
use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers (a Ferrers diagram by rows).
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if let Some(&p) = parts.iter().find(|&&p| p == 0) {
            return Err(Error::NonPositivePart(p));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros.
    pub fn from_multiset(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Row `i` (0-based), zero beyond the last row.
    pub fn row(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn to_composition(&self) -> Composition {
        Composition::from_parts_unchecked(self.0.clone())
    }

    /// All partitions fitting in a box of `rows` rows and `cols` columns.
    pub fn in_box(rows: usize, cols: u32) -> Vec<Partition> {
        fn go(rows: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition(cur.clone()));
            if cur.len() == rows {
                return;
            }
            for p in 1..=cap {
                cur.push(p);
                go(rows, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(rows, cols, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl TryFrom<&Composition> for Partition {
    type Error = Error;
    fn try_from(c: &Composition) -> Result<Self> {
        Partition::new(c.parts().to_vec())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_composition())
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let c: Composition = s.parse()?;
        Partition::try_from(&c)
    }
}

/// Containment of Ferrers diagrams.
pub fn partition_le(lambda: &Partition, mu: &Partition) -> bool {
    lambda.len() <= mu.len() && lambda.0.iter().zip(&mu.0).all(|(a, b)| a <= b)
}

/// Transposed diagram.
pub fn conjugate(lambda: &Partition) -> Partition {
    let cols = lambda.row(0);
    Partition((1..=cols).map(|c| lambda.0.iter().filter(|&&p| p >= c).count() as u32).collect())
}

/// Least upper bound in Young's lattice: rowwise maximum.
pub fn young_join(lambda: &Partition, mu: &Partition) -> Partition {
    let n = lambda.len().max(mu.len());
    Partition((0..n).map(|i| lambda.row(i).max(mu.row(i))).collect())
}

/// Join of a nonempty or empty family (ε for the empty family).
pub fn young_join_all<'a>(items: impl IntoIterator<Item = &'a Partition>) -> Partition {
    items.into_iter().fold(Partition::empty(), |acc, p| young_join(&acc, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn le_examples() {
        assert!(partition_le(&p(&[2, 1]), &p(&[3, 1])));
        assert!(!partition_le(&p(&[3]), &p(&[2, 2, 2])));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate(&p(&[3, 1])), p(&[2, 1, 1]));
        assert_eq!(conjugate(&Partition::empty()), Partition::empty());
        assert_eq!(conjugate(&p(&[4, 4])), p(&[2, 2, 2, 2]));
    }

    #[test]
    fn join_examples() {
        assert_eq!(young_join(&p(&[3, 1]), &p(&[2, 2])), p(&[3, 2]));
        assert_eq!(young_join(&p(&[3, 1]), &Partition::empty()), p(&[3, 1]));
        assert_eq!(young_join(&p(&[3]), &p(&[1, 1, 1])), p(&[3, 1, 1]));
    }

    #[test]
    fn join_is_least_upper_bound_in_box() {
        // independent check: minimal common upper bound by enumeration in a 4x4 box
        let all = Partition::in_box(4, 4);
        let (a, b) = (p(&[3]), p(&[1, 1, 1]));
        let uppers: Vec<&Partition> =
            all.iter().filter(|m| partition_le(&a, m) && partition_le(&b, m)).collect();
        let least: Vec<&&Partition> =
            uppers.iter().filter(|m| uppers.iter().all(|o| partition_le(m, o))).collect();
        assert_eq!(least.len(), 1);
        assert_eq!(**least[0], young_join(&a, &b));
    }

    #[test]
    fn rejects_increasing() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }
}

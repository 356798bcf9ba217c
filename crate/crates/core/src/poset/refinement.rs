use serde::{Deserialize, Serialize};

use super::{FinitePoset, Label};
use crate::bits::{BitMatrix, BitSet};
use crate::error::{Error, Result};

/// A strict partial order on a subset of a host poset that contains the host's relations there.
///
/// Indices refer to the host. The relation is stored transitively closed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refinement {
    pub name: String,
    domain: BitSet,
    lt: BitMatrix,
}

impl Refinement {
    /// The host order restricted to `domain`.
    pub fn host_restriction<L: Label>(host: &FinitePoset<L>, domain: &BitSet) -> Self {
        let n = host.len();
        let mut lt = BitMatrix::new(n);
        for i in domain.iter() {
            let mut row = host.up(i).clone();
            row.intersect_with(domain);
            *lt.row_mut(i) = row;
        }
        Refinement { name: String::new(), domain: domain.clone(), lt }
    }

    pub fn empty<L: Label>(host: &FinitePoset<L>) -> Self {
        Refinement { name: String::new(), domain: BitSet::new(host.len()), lt: BitMatrix::new(host.len()) }
    }

    /// The refinement generated by the host order on `domain` plus the extra relations `pairs`.
    pub fn from_pairs<L: Label>(
        host: &FinitePoset<L>,
        domain: &BitSet,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let mut r = Self::host_restriction(host, domain);
        for &(i, j) in pairs {
            if !domain.contains(i) || !domain.contains(j) {
                return Err(Error::InvalidRefinement(format!("pair {i} < {j} leaves the domain")));
            }
            r.lt.set(i, j);
        }
        r.lt.close_on(domain);
        if let Some(i) = domain.iter().find(|&i| r.lt.get(i, i)) {
            return Err(Error::Cycle(i));
        }
        Ok(r)
    }

    /// `x < y` iff `rank[x] < rank[y]`, or equal ranks and `x <_P y`; `None` leaves `x` out.
    ///
    /// Fails when the ranks decrease along a host relation.
    pub fn ranked<L: Label>(host: &FinitePoset<L>, ranks: &[Option<u64>]) -> Result<Self> {
        let n = host.len();
        assert_eq!(ranks.len(), n, "one rank slot per host element");
        let domain = BitSet::from_indices(n, (0..n).filter(|&i| ranks[i].is_some()));
        for x in domain.iter() {
            let rx = ranks[x].unwrap();
            for y in host.up(x).iter() {
                if let Some(ry) = ranks[y] {
                    if ry < rx {
                        return Err(Error::NotMonotone { lower: x, upper: y });
                    }
                }
            }
        }
        let mut levels: Vec<u64> = domain.iter().map(|i| ranks[i].unwrap()).collect();
        levels.sort_unstable();
        levels.dedup();
        let mut at: Vec<BitSet> = vec![BitSet::new(n); levels.len()];
        for i in domain.iter() {
            let k = levels.binary_search(&ranks[i].unwrap()).unwrap();
            at[k].insert(i);
        }
        // above[k] = elements with rank level > k
        let mut above: Vec<BitSet> = vec![BitSet::new(n); levels.len()];
        for k in (0..levels.len().saturating_sub(1)).rev() {
            let mut s = above[k + 1].clone();
            s.union_with(&at[k + 1]);
            above[k] = s;
        }
        let mut lt = BitMatrix::new(n);
        for i in domain.iter() {
            let k = levels.binary_search(&ranks[i].unwrap()).unwrap();
            let mut row = above[k].clone();
            let mut same = host.up(i).clone();
            same.intersect_with(&at[k]);
            row.union_with(&same);
            *lt.row_mut(i) = row;
        }
        Ok(Refinement { name: String::new(), domain, lt })
    }

    /// The chain `order[0] < order[1] < …`, which must be consistent with the host.
    pub fn linear<L: Label>(host: &FinitePoset<L>, order: &[usize]) -> Result<Self> {
        let mut ranks = vec![None; host.len()];
        for (pos, &i) in order.iter().enumerate() {
            if ranks[i].is_some() {
                return Err(Error::Overlap(i));
            }
            ranks[i] = Some(pos as u64);
        }
        Self::ranked(host, &ranks)
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn domain(&self) -> &BitSet {
        &self.domain
    }

    pub fn host_size(&self) -> usize {
        self.domain.len()
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.lt.get(i, j)
    }

    pub fn relation(&self) -> &BitMatrix {
        &self.lt
    }

    /// Elements placed above `i`.
    pub fn above(&self, i: usize) -> &BitSet {
        self.lt.row(i)
    }

    /// Wraps a relation the caller guarantees to be closed and contained in `domain`.
    pub(crate) fn from_closed(name: String, domain: BitSet, lt: BitMatrix) -> Self {
        Refinement { name, domain, lt }
    }

    /// Builds from raw parts, closing the relation; see [`Refinement::check`] for validity.
    pub fn from_raw(name: String, domain: BitSet, mut lt: BitMatrix) -> Self {
        lt.close_transitively();
        Refinement { name, domain, lt }
    }

    /// Problems that make this an invalid refinement of `host`; empty when valid.
    ///
    /// Relations are closed by every constructor, so a closed irreflexive relation containing
    /// the host order on its domain is a strict order and stays acyclic together with the host.
    pub fn check<L: Label>(&self, host: &FinitePoset<L>) -> Vec<String> {
        let mut out = Vec::new();
        let n = host.len();
        if self.domain.len() != n || self.lt.size() != n {
            out.push(format!("sized for {} elements, host has {n}", self.lt.size()));
            return out;
        }
        for i in 0..n {
            let row = self.lt.row(i);
            if !self.domain.contains(i) {
                if !row.is_empty() {
                    out.push(format!("element {i} outside the domain has relations"));
                }
                continue;
            }
            if !row.is_subset(&self.domain) {
                out.push(format!("element {i} is related to elements outside the domain"));
            }
            if row.contains(i) {
                out.push(format!("element {i} lies below itself"));
            }
            let mut want = host.up(i).clone();
            want.intersect_with(&self.domain);
            let missing = want.iter().find(|&j| !row.contains(j));
            if let Some(j) = missing {
                out.push(format!("host relation {i} < {j} is missing"));
            }
        }
        out
    }

    /// Restriction to `subset`, still indexed by the host.
    pub fn restrict(&self, subset: &BitSet) -> Self {
        let mut domain = self.domain.clone();
        domain.intersect_with(subset);
        let n = domain.len();
        let mut lt = BitMatrix::new(n);
        for i in domain.iter() {
            let mut row = self.lt.row(i).clone();
            row.intersect_with(&domain);
            *lt.row_mut(i) = row;
        }
        Refinement { name: self.name.clone(), domain, lt }
    }

    /// Moves to another host through an index map `old -> new`; unmapped elements are dropped.
    pub fn transport(&self, map: &[Option<usize>], new_n: usize) -> Self {
        let mut domain = BitSet::new(new_n);
        let mut lt = BitMatrix::new(new_n);
        for i in self.domain.iter() {
            let Some(a) = map[i] else { continue };
            domain.insert(a);
            for j in self.lt.row(i).iter() {
                if let Some(b) = map[j] {
                    lt.set(a, b);
                }
            }
        }
        Refinement { name: self.name.clone(), domain, lt }
    }

    /// Union of two refinements followed by closure; fails if the result has a cycle.
    pub fn merge(&self, other: &Refinement) -> Result<Self> {
        let mut domain = self.domain.clone();
        domain.union_with(&other.domain);
        let mut lt = self.lt.clone();
        for i in other.domain.iter() {
            lt.row_mut(i).union_with(other.lt.row(i));
        }
        lt.close_on(&domain);
        if let Some(i) = domain.iter().find(|&i| lt.get(i, i)) {
            return Err(Error::Cycle(i));
        }
        Ok(Refinement { name: self.name.clone(), domain, lt })
    }

    pub fn relation_count(&self) -> usize {
        self.lt.count()
    }
}

/// Sorts `domain` by `key`: `x < y` iff `key(x) < key(y)`, ties keep only host relations.
pub fn sort_by<L: Label, K: Ord>(
    host: &FinitePoset<L>,
    domain: &BitSet,
    key: impl Fn(usize) -> K,
) -> Result<Refinement> {
    let mut keyed: Vec<(K, usize)> = domain.iter().map(|i| (key(i), i)).collect();
    keyed.sort();
    let mut ranks = vec![None; host.len()];
    let mut level = 0u64;
    for k in 0..keyed.len() {
        if k > 0 && keyed[k].0 != keyed[k - 1].0 {
            level += 1;
        }
        ranks[keyed[k].1] = Some(level);
    }
    Refinement::ranked(host, &ranks)
}

/// `lower ⊕ upper`: lower's relations, host relations within `upper`, and all of lower below upper.
pub fn ordinal_sum<L: Label>(
    host: &FinitePoset<L>,
    lower: &Refinement,
    upper: &BitSet,
) -> Result<Refinement> {
    if let Some(i) = lower.domain.iter().find(|&i| upper.contains(i)) {
        return Err(Error::Overlap(i));
    }
    for a in lower.domain.iter() {
        if let Some(b) = host.down(a).iter().find(|&b| upper.contains(b)) {
            return Err(Error::InvalidRefinement(format!(
                "element {b} of the upper part lies below element {a} of the lower part"
            )));
        }
    }
    let n = host.len();
    let mut domain = lower.domain.clone();
    domain.union_with(upper);
    let mut lt = BitMatrix::new(n);
    for a in lower.domain.iter() {
        let mut row = lower.lt.row(a).clone();
        row.union_with(upper);
        *lt.row_mut(a) = row;
    }
    for b in upper.iter() {
        let mut row = host.up(b).clone();
        row.intersect_with(upper);
        *lt.row_mut(b) = row;
    }
    Ok(Refinement { name: String::new(), domain, lt })
}

/// Replaces the elements of a linear order by the given chains, in order: the result is the
/// chain `chains[0][0] < chains[0][1] < … < chains[1][0] < …`.
pub fn substitute_intervals<L: Label>(
    host: &FinitePoset<L>,
    chains: &[Vec<usize>],
) -> Result<Refinement> {
    let mut ranks = vec![None; host.len()];
    let mut pos = 0u64;
    for c in chains {
        for &i in c {
            if ranks[i].is_some() {
                return Err(Error::Overlap(i));
            }
            ranks[i] = Some(pos);
            pos += 1;
        }
    }
    Refinement::ranked(host, &ranks)
}

/// Like [`substitute_intervals`], but each block keeps only the host order internally.
pub fn substitute_blocks<L: Label>(
    host: &FinitePoset<L>,
    blocks: &[Vec<usize>],
) -> Result<Refinement> {
    let mut ranks = vec![None; host.len()];
    for (pos, b) in blocks.iter().enumerate() {
        for &i in b {
            if ranks[i].is_some() {
                return Err(Error::Overlap(i));
            }
            ranks[i] = Some(pos as u64);
        }
    }
    Refinement::ranked(host, &ranks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn antichain(n: usize) -> FinitePoset<usize> {
        FinitePoset::from_relations((0..n).collect(), &[]).unwrap()
    }

    #[test]
    fn ordinal_sum_of_singletons() {
        let p = antichain(2);
        let lower = Refinement::host_restriction(&p, &BitSet::from_indices(2, [0]));
        let r = ordinal_sum(&p, &lower, &BitSet::from_indices(2, [1])).unwrap();
        assert!(r.lt(0, 1) && !r.lt(1, 0));
        assert!(r.check(&p).is_empty());
        let same = ordinal_sum(&p, &lower, &BitSet::new(2)).unwrap();
        assert_eq!(same, lower);
        assert!(matches!(
            ordinal_sum(&p, &lower, &BitSet::from_indices(2, [0])),
            Err(Error::Overlap(0))
        ));
    }

    #[test]
    fn ordinal_sum_rejects_inverted_parts() {
        let p = FinitePoset::from_relations(vec![0, 1], &[(0, 1)]).unwrap();
        let lower = Refinement::host_restriction(&p, &BitSet::from_indices(2, [1]));
        assert!(ordinal_sum(&p, &lower, &BitSet::from_indices(2, [0])).is_err());
    }

    #[test]
    fn substitution_of_chains() {
        let p = antichain(3);
        let r = substitute_intervals(&p, &[vec![0, 1], vec![2]]).unwrap();
        assert!(r.lt(0, 1) && r.lt(1, 2) && r.lt(0, 2));
        assert!(substitute_intervals(&p, &[vec![0, 1], vec![1]]).is_err());
        let b = substitute_blocks(&p, &[vec![0, 1], vec![2]]).unwrap();
        assert!(!b.lt(0, 1) && b.lt(0, 2) && b.lt(1, 2));
    }

    #[test]
    fn sort_by_ties_and_monotonicity() {
        let p = antichain(3);
        let all = BitSet::full(3);
        let r = sort_by(&p, &all, |_| 0).unwrap();
        assert_eq!(r.relation_count(), 0);
        let chain = FinitePoset::from_relations(vec![0, 1], &[(0, 1)]).unwrap();
        let bad = sort_by(&chain, &BitSet::full(2), std::cmp::Reverse);
        assert!(matches!(bad, Err(Error::NotMonotone { lower: 0, upper: 1 })));
    }

    #[test]
    fn merge_detects_conflict() {
        let p = antichain(2);
        let a = Refinement::linear(&p, &[0, 1]).unwrap();
        let b = Refinement::linear(&p, &[1, 0]).unwrap();
        assert!(a.merge(&b).is_err());
        assert!(a.merge(&a).is_ok());
    }
}

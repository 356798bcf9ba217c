use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::{FinitePoset, Label, Refinement};
use crate::error::{Error, Result};

/// A total order on every element of a host poset, listed bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearExtension {
    pub order: Vec<usize>,
}

impl LinearExtension {
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (k, &i) in self.order.iter().enumerate() {
            pos[i] = k;
        }
        pos
    }

    pub fn to_refinement<L: Label>(&self, host: &FinitePoset<L>) -> Result<Refinement> {
        Refinement::linear(host, &self.order)
    }

    /// Does this order contain every relation of `host`?
    pub fn extends<L: Label>(&self, host: &FinitePoset<L>) -> bool {
        if self.order.len() != host.len() {
            return false;
        }
        let pos = self.positions();
        (0..host.len()).all(|i| host.up(i).iter().all(|j| pos[i] < pos[j]))
    }
}

/// Topological sort of `host ∪ r`, always taking the lowest-indexed available element.
pub fn extend_to_linear<L: Label>(host: &FinitePoset<L>, r: &Refinement) -> Result<LinearExtension> {
    let n = host.len();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut s = host.up(i).clone();
            if r.domain().contains(i) {
                s.union_with(r.above(i));
            }
            s.iter().collect()
        })
        .collect();
    let mut indeg = vec![0usize; n];
    for s in &succ {
        for &j in s {
            indeg[j] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> = (0..n).filter(|&i| indeg[i] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(i)) = ready.pop() {
        order.push(i);
        for &j in &succ[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                ready.push(Reverse(j));
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).find(|&i| indeg[i] > 0).unwrap();
        return Err(Error::Cycle(stuck));
    }
    Ok(LinearExtension { order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitSet;

    #[test]
    fn empty_refinement_gives_topological_sort() {
        let p = FinitePoset::from_relations(vec!['a', 'b', 'c'], &[(2, 0)]).unwrap();
        let l = extend_to_linear(&p, &Refinement::empty(&p)).unwrap();
        assert_eq!(l.order, vec![1, 2, 0]);
        assert!(l.extends(&p));
    }

    #[test]
    fn refinement_is_respected() {
        let p = FinitePoset::from_relations(vec!['x', 'y'], &[]).unwrap();
        let r = Refinement::from_pairs(&p, &BitSet::full(2), &[(1, 0)]).unwrap();
        assert_eq!(extend_to_linear(&p, &r).unwrap().order, vec![1, 0]);
    }

    #[test]
    fn corrupted_refinement_reports_cycle() {
        let p = FinitePoset::from_relations(vec!['x', 'y'], &[(0, 1)]).unwrap();
        let mut m = crate::bits::BitMatrix::new(2);
        m.set(1, 0);
        let r = Refinement::from_raw("bad".into(), BitSet::full(2), m);
        assert!(matches!(extend_to_linear(&p, &r), Err(Error::Cycle(_))));
    }
}

//! Finite posets, refinements, linear extensions and realizer verification.

mod linear;
mod realizer;
mod refinement;
pub mod text;

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::bits::{BitMatrix, BitSet};
use crate::error::{Error, Result};
use crate::order::{subword_le, Composition};
use crate::par::Exec;

pub use linear::{extend_to_linear, LinearExtension};
pub use realizer::{
    linearize_family, restrict_realizer, verify_realizer, verify_realizer_with, RealizerReport,
    Violation,
};
pub use refinement::{ordinal_sum, sort_by, substitute_blocks, substitute_intervals, Refinement};

/// Labels carried by poset elements.
pub trait Label: Clone + Eq + Hash + Debug + Send + Sync {}
impl<T: Clone + Eq + Hash + Debug + Send + Sync> Label for T {}

/// A finite poset on indices `0..n`, with the strict order stored densely and closed.
#[derive(Clone, Debug)]
pub struct FinitePoset<L: Label> {
    labels: Vec<L>,
    index: HashMap<L, usize>,
    lt: BitMatrix,
    gt: BitMatrix,
}

impl<L: Label> PartialEq for FinitePoset<L> {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.lt == other.lt
    }
}

impl<L: Label> FinitePoset<L> {
    /// Materializes `le` on `elements` and checks that it is a partial order.
    pub fn from_le<F>(elements: Vec<L>, le: F) -> Result<Self>
    where
        F: Fn(&L, &L) -> bool + Sync + Send,
    {
        Self::from_le_with(elements, le, Exec::default_policy())
    }

    pub fn from_le_with<F>(elements: Vec<L>, le: F, exec: Exec) -> Result<Self>
    where
        F: Fn(&L, &L) -> bool + Sync + Send,
    {
        let n = elements.len();
        let index = build_index(&elements)?;
        let rows: Vec<(BitSet, Option<String>)> = exec.map_range(n, |i| {
            let mut row = BitSet::new(n);
            if !le(&elements[i], &elements[i]) {
                return (row, Some(format!("{:?} is not ≤ itself", elements[i])));
            }
            for j in 0..n {
                if j != i && le(&elements[i], &elements[j]) {
                    row.insert(j);
                }
            }
            (row, None)
        });
        let mut lt = BitMatrix::new(n);
        for (i, (row, err)) in rows.into_iter().enumerate() {
            if let Some(e) = err {
                return Err(Error::NotPartialOrder(e));
            }
            *lt.row_mut(i) = row;
        }
        for i in 0..n {
            for j in lt.row(i).iter() {
                if lt.get(j, i) {
                    return Err(Error::NotPartialOrder(format!(
                        "antisymmetry fails for {:?} and {:?}",
                        elements[i], elements[j]
                    )));
                }
            }
        }
        let bad: Vec<Option<(usize, usize, usize)>> = exec.map_range(n, |i| {
            for j in lt.row(i).iter() {
                if !lt.row(j).is_subset(lt.row(i)) {
                    let k = lt.row(j).iter().find(|&k| !lt.get(i, k)).unwrap();
                    return Some((i, j, k));
                }
            }
            None
        });
        if let Some((i, j, k)) = bad.into_iter().flatten().next() {
            return Err(Error::NotPartialOrder(format!(
                "transitivity fails: {:?} ≤ {:?} ≤ {:?}",
                elements[i], elements[j], elements[k]
            )));
        }
        let gt = lt.transpose();
        Ok(FinitePoset { labels: elements, index, lt, gt })
    }

    /// Builds the poset generated by strict relations `(i, j)` meaning `i < j`.
    pub fn from_relations(elements: Vec<L>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let index = build_index(&elements)?;
        let mut lt = BitMatrix::new(n);
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::NotPartialOrder(format!("index out of range in {i} < {j}")));
            }
            lt.set(i, j);
        }
        lt.close_transitively();
        if let Some(i) = lt.diagonal_hit() {
            return Err(Error::NotPartialOrder(format!("cycle through {:?}", elements[i])));
        }
        let gt = lt.transpose();
        Ok(FinitePoset { labels: elements, index, lt, gt })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &L {
        &self.labels[i]
    }

    pub fn index_of(&self, l: &L) -> Option<usize> {
        self.index.get(l).copied()
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.lt.get(i, j)
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.lt.get(i, j)
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le(i, j) || self.lt.get(j, i)
    }

    /// Elements strictly above `i`.
    pub fn up(&self, i: usize) -> &BitSet {
        self.lt.row(i)
    }

    /// Elements strictly below `i`.
    pub fn down(&self, i: usize) -> &BitSet {
        self.gt.row(i)
    }

    pub fn relation(&self) -> &BitMatrix {
        &self.lt
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|i| (i + 1..self.len()).all(|j| self.comparable(i, j)))
    }

    /// Elements incomparable to `i` (excluding `i`).
    pub fn incomparable_to(&self, i: usize) -> BitSet {
        let mut s = BitSet::full(self.len());
        s.remove(i);
        s.difference_with(self.lt.row(i));
        s.difference_with(self.gt.row(i));
        s
    }

    /// Unordered incomparable pairs `(i, j)` with `i < j`.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            out.extend(self.incomparable_to(i).iter().filter(|&j| j > i).map(|j| (i, j)));
        }
        out
    }

    /// Induced subposet on `subset` (kept in the given order) and the old→new index map.
    pub fn induced(&self, subset: &[usize]) -> (FinitePoset<L>, Vec<Option<usize>>) {
        let mut map = vec![None; self.len()];
        for (k, &i) in subset.iter().enumerate() {
            map[i] = Some(k);
        }
        let m = subset.len();
        let mut lt = BitMatrix::new(m);
        for (a, &i) in subset.iter().enumerate() {
            for j in self.lt.row(i).iter() {
                if let Some(b) = map[j] {
                    lt.set(a, b);
                }
            }
        }
        let labels: Vec<L> = subset.iter().map(|&i| self.labels[i].clone()).collect();
        let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let gt = lt.transpose();
        (FinitePoset { labels, index, lt, gt }, map)
    }

    /// Cover pairs of the order (its Hasse diagram).
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in self.lt.row(i).iter() {
                let mut between = self.lt.row(i).clone();
                between.intersect_with(self.gt.row(j));
                if between.is_empty() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn map_labels<M: Label>(&self, f: impl Fn(&L) -> M) -> Result<FinitePoset<M>> {
        let labels: Vec<M> = self.labels.iter().map(f).collect();
        let index = build_index(&labels)?;
        Ok(FinitePoset { labels, index, lt: self.lt.clone(), gt: self.gt.clone() })
    }
}

fn build_index<L: Label>(elements: &[L]) -> Result<HashMap<L, usize>> {
    let mut index = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if index.insert(e.clone(), i).is_some() {
            return Err(Error::NotPartialOrder(format!("duplicate element {e:?}")));
        }
    }
    Ok(index)
}

pub type CompositionPoset = FinitePoset<Composition>;

/// Poset of compositions under the generalized subword order.
pub fn composition_poset(elements: Vec<Composition>) -> CompositionPoset {
    FinitePoset::from_le(elements, subword_le).expect("subword order is a partial order")
}

pub fn composition_poset_with(elements: Vec<Composition>, exec: Exec) -> CompositionPoset {
    FinitePoset::from_le_with(elements, subword_le, exec).expect("subword order is a partial order")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::digits;

    fn comps(xs: &[&str]) -> Vec<Composition> {
        xs.iter().map(|s| digits(s)).collect()
    }

    #[test]
    fn small_composition_posets() {
        let p = composition_poset(comps(&["e", "1", "2", "11"]));
        assert_eq!(p.incomparable_pairs(), vec![(2, 3)]);
        let chain = composition_poset(comps(&["1", "11", "111"]));
        assert!(chain.is_chain());
        let anti = composition_poset(comps(&["12", "21"]));
        assert_eq!(anti.incomparable_pairs(), vec![(0, 1)]);
    }

    #[test]
    fn rejects_non_orders() {
        let r = FinitePoset::from_le(vec![0u32, 1], |a, b| a != b || a == b);
        assert!(matches!(r, Err(Error::NotPartialOrder(_))));
        let r = FinitePoset::from_le(vec![0u32, 1, 2], |a, b| a == b || (*a + 1 == *b));
        assert!(matches!(r, Err(Error::NotPartialOrder(_))));
        let r = FinitePoset::from_relations(vec![0u32, 1], &[(0, 1), (1, 0)]);
        assert!(r.is_err());
    }

    #[test]
    fn antichain_pair_count() {
        let p = FinitePoset::from_relations((0..5u32).collect(), &[]).unwrap();
        assert_eq!(p.incomparable_pairs().len(), 10);
    }

    #[test]
    fn covers_of_chain() {
        let p = FinitePoset::from_relations(vec!['a', 'b', 'c'], &[(0, 1), (1, 2)]).unwrap();
        assert!(p.lt(0, 2));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
    }
}

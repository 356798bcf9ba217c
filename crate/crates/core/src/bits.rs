//! Fixed-width bitsets and square bit matrices.
//!
//! Every relation in the crate (host posets, refinements, solver buckets) is
//! stored as a dense `n x n` matrix of 64-bit words; rows are bitsets.

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet { len, words: vec![0; word_count(len)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(len: usize, it: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(len);
        for i in it {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }
}

/// Square boolean matrix; `get(i, j)` reads row `i`, column `j`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BitMatrix {
    n: usize,
    rows: Vec<BitSet>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        BitMatrix { n, rows: vec![BitSet::new(n); n] }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.rows[i].insert(j);
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitSet {
        &self.rows[i]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut BitSet {
        &mut self.rows[i]
    }

    pub fn count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for i in 0..self.n {
            for j in self.rows[i].iter() {
                t.set(j, i);
            }
        }
        t
    }

    /// Warshall closure in place: afterwards `get(i, j)` iff a nonempty path leads from `i` to `j`.
    pub fn close_transitively(&mut self) {
        let all = BitSet::full(self.n);
        self.close_on(&all);
    }

    /// Warshall closure for a relation whose pairs all lie inside `support`.
    pub fn close_on(&mut self, support: &BitSet) {
        let members: Vec<usize> = support.iter().filter(|&i| !self.rows[i].is_empty()).collect();
        for k in support.iter() {
            if self.rows[k].is_empty() {
                continue;
            }
            let rk = self.rows[k].clone();
            for &i in &members {
                if self.rows[i].contains(k) {
                    self.rows[i].union_with(&rk);
                }
            }
        }
    }

    /// First `i` with `get(i, i)`; after closure this witnesses a cycle.
    pub fn diagonal_hit(&self) -> Option<usize> {
        (0..self.n).find(|&i| self.get(i, i))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.rows[i].iter().map(move |j| (i, j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iter_and_count_agree() {
        let s = BitSet::from_indices(200, [0, 63, 64, 130, 199]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 130, 199]);
        assert_eq!(s.count(), 5);
    }

    #[test]
    fn closure_of_path_and_cycle() {
        let mut m = BitMatrix::new(4);
        m.set(0, 1);
        m.set(1, 2);
        m.set(2, 3);
        m.close_transitively();
        assert!(m.get(0, 3));
        assert!(m.diagonal_hit().is_none());
        m.set(3, 0);
        m.close_transitively();
        assert_eq!(m.diagonal_hit(), Some(0));
    }
}

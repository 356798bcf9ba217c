use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::order::{conjugate, partition_le, GeneralizedWord, Partition, WordSymbol};
use crate::poset::{sort_by, verify_realizer, FinitePoset, RealizerReport, Refinement};

/// The partition age `Age(w^k lambda l^w)`: `k` unbounded rows, then rows bounded by `lambda`,
/// then any number of rows of length at most `ell`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionShape {
    pub k: usize,
    pub lambda: Partition,
    pub ell: u32,
}

impl PartitionShape {
    pub fn new(k: usize, lambda: Partition, ell: u32) -> Result<Self> {
        if lambda.parts().last().is_some_and(|&p| p <= ell) {
            return Err(Error::Precondition(format!("parts of {lambda} must exceed {ell}")));
        }
        Ok(PartitionShape { k, lambda, ell })
    }

    /// `k + |lambda| + ell`, the number of coordinates of the grid embedding.
    pub fn bound(&self) -> usize {
        self.k + self.lambda.len() + self.ell as usize
    }

    /// `w^k lambda ell^w` as a generalized word.
    pub fn word(&self) -> GeneralizedWord {
        let mut s = vec![WordSymbol::Omega; self.k];
        s.extend(self.lambda.parts().iter().map(|&p| WordSymbol::Fin(p)));
        if self.ell > 0 {
            s.push(WordSymbol::RepOmega(self.ell));
        }
        GeneralizedWord(s)
    }

    pub fn contains(&self, mu: &Partition) -> bool {
        let head = self.k + self.lambda.len();
        (0..self.lambda.len()).all(|i| mu.row(self.k + i) <= self.lambda.row(i))
            && mu.parts().iter().skip(head).all(|&p| p <= self.ell)
    }
}

/// Coordinates of `mu`: its first `k + |lambda|` rows, then the conjugate of the remaining rows.
pub fn partition_grid_embed(mu: &Partition, s: &PartitionShape) -> Result<Vec<u32>> {
    if !s.contains(mu) {
        return Err(Error::NotMember(format!("{mu} is not in the age of {s:?}")));
    }
    let head = s.k + s.lambda.len();
    let mut v: Vec<u32> = (0..head).map(|i| mu.row(i)).collect();
    let rest = Partition::new(mu.parts().iter().skip(head).copied().collect())?;
    let conj = conjugate(&rest);
    v.extend((0..s.ell as usize).map(|j| conj.row(j)));
    Ok(v)
}

/// Members of the age of `s` with at most `rows` rows and `cols` columns.
pub fn partition_age_members(s: &PartitionShape, rows: usize, cols: u32) -> Vec<Partition> {
    Partition::in_box(rows, cols).into_iter().filter(|mu| s.contains(mu)).collect()
}

#[derive(Clone, Debug)]
pub struct PartitionRealizer {
    pub shape: PartitionShape,
    pub host: FinitePoset<Partition>,
    pub family: Vec<Refinement>,
}

impl PartitionRealizer {
    pub fn verify(&self) -> RealizerReport {
        verify_realizer(&self.host, &self.family)
    }
}

/// One coordinate sort per entry of [`partition_grid_embed`], on the members in a box.
pub fn partition_age_realizer(s: &PartitionShape, rows: usize, cols: u32) -> Result<PartitionRealizer> {
    let host = FinitePoset::from_le(partition_age_members(s, rows, cols), partition_le)?;
    let coords: Vec<Vec<u32>> =
        host.labels().iter().map(|mu| partition_grid_embed(mu, s)).collect::<Result<_>>()?;
    let all = BitSet::full(host.len());
    let family = (0..s.bound())
        .map(|c| Ok(sort_by(&host, &all, |x| coords[x][c])?.named(format!("coordinate[{c}]"))))
        .collect::<Result<_>>()?;
    Ok(PartitionRealizer { shape: s.clone(), host, family })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn embed_example() {
        let s = PartitionShape::new(1, p(&[3, 2]), 1).unwrap();
        assert_eq!(partition_grid_embed(&p(&[5, 3, 1, 1, 1]), &s).unwrap(), vec![5, 3, 1, 2]);
        assert_eq!(partition_grid_embed(&p(&[]), &s).unwrap(), vec![0; 4]);
        assert!(partition_grid_embed(&p(&[5, 4]), &s).is_err());
    }

    #[test]
    fn embedding_preserves_and_reflects_order() {
        let s = PartitionShape::new(1, p(&[3, 2]), 1).unwrap();
        let members = partition_age_members(&s, 6, 6);
        let v: Vec<Vec<u32>> = members.iter().map(|m| partition_grid_embed(m, &s).unwrap()).collect();
        for (a, va) in members.iter().zip(&v) {
            for (b, vb) in members.iter().zip(&v) {
                let coord = va.iter().zip(vb).all(|(x, y)| x <= y);
                assert_eq!(partition_le(a, b), coord, "{a} {b}");
            }
        }
    }

    #[test]
    fn small_shapes_verify() {
        for (k, lambda, ell) in [(0, vec![], 1), (2, vec![], 0), (1, vec![3, 2], 1)] {
            let s = PartitionShape::new(k, p(&lambda), ell).unwrap();
            let r = partition_age_realizer(&s, 6, 6).unwrap();
            assert_eq!(r.family.len(), s.bound());
            assert!(r.verify().verified);
        }
    }

    #[test]
    fn shape_invariant() {
        assert!(PartitionShape::new(0, p(&[2]), 2).is_err());
    }
}

use serde::{Deserialize, Serialize};

use super::{extend_to_linear, FinitePoset, Label, LinearExtension, Refinement};
use crate::bits::BitSet;
use crate::error::Result;
use crate::par::Exec;

/// A family member that is not a valid refinement of the host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub member: usize,
    pub name: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizerReport {
    pub verified: bool,
    /// Ordered incomparable pairs `(x, y)` such that no member places `y` below `x`.
    pub unbroken_pairs: Vec<(usize, usize)>,
    pub violations: Vec<Violation>,
}

impl RealizerReport {
    /// Unbroken pairs rendered with element labels.
    pub fn describe_pairs<L: Label>(&self, host: &FinitePoset<L>, limit: usize) -> Vec<String> {
        self.unbroken_pairs
            .iter()
            .take(limit)
            .map(|&(x, y)| format!("{:?} never above {:?}", host.label(x), host.label(y)))
            .collect()
    }
}

pub fn verify_realizer<L: Label>(host: &FinitePoset<L>, family: &[Refinement]) -> RealizerReport {
    verify_realizer_with(host, family, Exec::default_policy())
}

/// Checks that each member refines the host and every incomparable pair is broken both ways.
pub fn verify_realizer_with<L: Label>(
    host: &FinitePoset<L>,
    family: &[Refinement],
    exec: Exec,
) -> RealizerReport {
    let violations: Vec<Violation> = exec
        .map_slice(family, |r| r.check(host))
        .into_iter()
        .enumerate()
        .flat_map(|(k, msgs)| {
            msgs.into_iter().map(move |message| Violation {
                member: k,
                name: family[k].name.clone(),
                message,
            })
        })
        .collect();
    let n = host.len();
    let sized: Vec<&Refinement> = family.iter().filter(|r| r.host_size() == n).collect();
    let per_y: Vec<Vec<(usize, usize)>> = exec.map_range(n, |y| {
        let mut below_somewhere = BitSet::new(n);
        for r in &sized {
            if r.domain().contains(y) {
                below_somewhere.union_with(r.above(y));
            }
        }
        let mut open = host.incomparable_to(y);
        open.difference_with(&below_somewhere);
        open.iter().map(|x| (x, y)).collect()
    });
    let mut unbroken_pairs: Vec<(usize, usize)> = per_y.into_iter().flatten().collect();
    unbroken_pairs.sort_unstable();
    RealizerReport { verified: unbroken_pairs.is_empty() && violations.is_empty(), unbroken_pairs, violations }
}

/// Extends every member to a linear extension of the host.
pub fn linearize_family<L: Label>(
    host: &FinitePoset<L>,
    family: &[Refinement],
) -> Result<Vec<LinearExtension>> {
    family.iter().map(|r| extend_to_linear(host, r)).collect()
}

/// Restricts a family to the subposet induced by `subset`, re-indexed to that subposet.
pub fn restrict_realizer<L: Label>(
    host: &FinitePoset<L>,
    family: &[Refinement],
    subset: &[usize],
) -> (FinitePoset<L>, Vec<Refinement>) {
    let (sub, map) = host.induced(subset);
    let fam = family.iter().map(|r| r.transport(&map, sub.len())).collect();
    (sub, fam)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_needs_nothing() {
        let p = FinitePoset::from_relations(vec![1, 2, 3], &[(0, 1), (1, 2)]).unwrap();
        assert!(verify_realizer(&p, &[]).verified);
    }

    #[test]
    fn single_order_on_antichain_fails_once() {
        let p = FinitePoset::from_relations(vec![1, 2], &[]).unwrap();
        let r = Refinement::linear(&p, &[0, 1]).unwrap();
        let rep = verify_realizer(&p, std::slice::from_ref(&r));
        assert!(!rep.verified);
        assert_eq!(rep.unbroken_pairs, vec![(0, 1)]);
        let s = Refinement::linear(&p, &[1, 0]).unwrap();
        assert!(verify_realizer(&p, &[r, s]).verified);
    }

    #[test]
    fn invalid_member_is_reported() {
        let p = FinitePoset::from_relations(vec![1, 2], &[(0, 1)]).unwrap();
        let r = Refinement::from_raw("empty-but-claims".into(), BitSet::full(2), crate::bits::BitMatrix::new(2));
        let rep = verify_realizer(&p, &[r]);
        assert!(!rep.verified);
        assert_eq!(rep.violations.len(), 1);
    }
}

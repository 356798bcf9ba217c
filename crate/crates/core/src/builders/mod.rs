//! Explicit refinement families realizing finite windows of finite dimensional ages.
//!
//! Every builder works on a host poset: the truncation of an age, with elements in shortlex
//! order. Families are lists of [`Refinement`]s named after the construction step that
//! produced them; [`AgeRealizer::verify`] replays the realizer criterion on the host.

mod band;
mod caps;
mod partition;
mod prefix;
mod union;
mod ww;

use serde::{Deserialize, Serialize};

use crate::bits::{BitMatrix, BitSet};
use crate::error::{Error, Result};
use crate::order::{age_truncation, Composition, GeneralizedWord, TruncationSpec};
use crate::poset::{
    composition_poset, verify_realizer, CompositionPoset, RealizerReport, Refinement,
};

pub use band::{band_realizer, compact_embeddings, tile_members, CompactEmbedding, Tile};
pub use caps::{
    cap_inner_realizer, cap_left_realizer, double_cap_realizer, double_cap_sets, BuilderConfig,
    DoubleCapSets, Side,
};
pub use partition::{
    partition_age_members, partition_age_realizer, partition_grid_embed, PartitionRealizer,
    PartitionShape,
};
pub use prefix::{prefix_realizer, realize_word, reverse_realizer, suffix_realizer};
pub use union::union_realizer;
pub use ww::{realizer_age_ww, shortcolex_refinement, shortlex_refinement, two_max_refinement};

/// A refinement family on the truncation of `Age(word)`.
#[derive(Clone, Debug)]
pub struct AgeRealizer {
    pub word: GeneralizedWord,
    pub truncation: TruncationSpec,
    pub host: CompositionPoset,
    pub family: Vec<Refinement>,
}

impl AgeRealizer {
    pub fn verify(&self) -> RealizerReport {
        verify_realizer(&self.host, &self.family)
    }

    pub fn size(&self) -> usize {
        self.family.len()
    }

    /// Appends [`completion_members`] for whatever the family leaves unbroken and returns how
    /// many were added. They show up as `completion` in [`AgeRealizer::provenance`].
    pub fn complete(&mut self) -> usize {
        let extra = completion_members(&self.host, &self.family);
        let k = extra.len();
        self.family.extend(extra);
        k
    }

    /// Count of members per construction step (the name up to its first `[`).
    pub fn provenance(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = Vec::new();
        for r in &self.family {
            let step = r.name.split('[').next().unwrap_or("").to_string();
            match out.iter_mut().find(|(s, _)| *s == step) {
                Some((_, c)) => *c += 1,
                None => out.push((step, 1)),
            }
        }
        out
    }
}

/// Serializable summary of a builder run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildSummary {
    pub word: GeneralizedWord,
    pub truncation: TruncationSpec,
    pub elements: usize,
    pub family_size: usize,
    pub provenance: Vec<(String, usize)>,
    pub report: RealizerReport,
}

impl AgeRealizer {
    pub fn summary(&self) -> BuildSummary {
        BuildSummary {
            word: self.word.clone(),
            truncation: self.truncation,
            elements: self.host.len(),
            family_size: self.size(),
            provenance: self.provenance(),
            report: self.verify(),
        }
    }
}

/// The truncated age of `w` as a poset.
pub fn truncated_host(w: &GeneralizedWord, t: TruncationSpec) -> CompositionPoset {
    composition_poset(age_truncation(w, t))
}

/// Elements of `host` satisfying `pred`.
pub fn select(host: &CompositionPoset, pred: impl Fn(&Composition) -> bool) -> BitSet {
    BitSet::from_indices(host.len(), (0..host.len()).filter(|&i| pred(host.label(i))))
}

/// Index map sending each element of `host` to `f(label)` in `sub`, when present there.
pub fn map_into(
    host: &CompositionPoset,
    sub: &CompositionPoset,
    f: impl Fn(&Composition) -> Option<Composition>,
) -> Vec<Option<usize>> {
    host.labels().iter().map(|c| f(c).and_then(|d| sub.index_of(&d))).collect()
}

/// First-fit completion: extra full-domain refinements placing `y` below `x` for every pair
/// `(x, y)` the family leaves unbroken. Builders never call this; see [`AgeRealizer::complete`].
pub fn completion_members(host: &CompositionPoset, family: &[Refinement]) -> Vec<Refinement> {
    let report = verify_realizer(host, family);
    let n = host.len();
    let mut classes: Vec<BitMatrix> = Vec::new();
    for &(x, y) in &report.unbroken_pairs {
        let k = match classes.iter().position(|c| !c.get(x, y)) {
            Some(k) => k,
            None => {
                classes.push(host.relation().clone());
                classes.len() - 1
            }
        };
        let c = &mut classes[k];
        let mut up = c.row(x).clone();
        up.insert(x);
        let below: Vec<usize> = (0..n).filter(|&z| z == y || c.get(z, y)).collect();
        for z in below {
            c.row_mut(z).union_with(&up);
        }
    }
    classes
        .into_iter()
        .enumerate()
        .map(|(k, lt)| Refinement::from_closed(format!("completion[{k}]"), BitSet::full(n), lt))
        .collect()
}

/// Re-indexes a family from one composition poset to another by label.
pub fn transport_family(from: &CompositionPoset, family: &[Refinement], to: &CompositionPoset) -> Vec<Refinement> {
    let map = map_into(from, to, |c| Some(c.clone()));
    family.iter().map(|r| r.transport(&map, to.len())).collect()
}

/// The shortlex order on the whole host, which extends the subword order.
pub fn shortlex_catch_all(host: &CompositionPoset) -> Refinement {
    shortlex_refinement(host).named("shortlex")
}

/// Pulls a refinement `l` of `sub` back along a monotone map `phi: host → sub`.
///
/// Each element `a` of `l`'s domain is replaced by the block `phi⁻¹(a)`, ordered inside by the
/// host: `x < y` iff `phi(x) <_l phi(y)`, or `phi(x) = phi(y)` and `x <_host y`. When the blocks
/// are chains this is interval substitution.
pub fn lift(
    host: &CompositionPoset,
    sub: &CompositionPoset,
    phi: &[Option<usize>],
    l: &Refinement,
) -> Result<Refinement> {
    let n = host.len();
    let m = sub.len();
    assert_eq!(phi.len(), n);
    let mut pre = vec![BitSet::new(n); m];
    let mut domain = BitSet::new(n);
    for (x, a) in phi.iter().enumerate() {
        if let Some(a) = *a {
            if l.domain().contains(a) {
                pre[a].insert(x);
                domain.insert(x);
            }
        }
    }
    for x in domain.iter() {
        let a = phi[x].unwrap();
        for y in host.up(x).iter() {
            if !domain.contains(y) {
                continue;
            }
            let b = phi[y].unwrap();
            if a != b && !l.lt(a, b) {
                return Err(Error::NotMonotone { lower: x, upper: y });
            }
        }
    }
    let mut above: Vec<Option<BitSet>> = vec![None; m];
    for a in 0..m {
        if pre[a].is_empty() {
            continue;
        }
        let mut s = BitSet::new(n);
        for b in l.above(a).iter() {
            s.union_with(&pre[b]);
        }
        above[a] = Some(s);
    }
    let mut lt = BitMatrix::new(n);
    for x in domain.iter() {
        let a = phi[x].unwrap();
        let mut row = above[a].clone().unwrap();
        let mut same = host.up(x).clone();
        same.intersect_with(&pre[a]);
        row.union_with(&same);
        *lt.row_mut(x) = row;
    }
    Ok(Refinement::from_closed(l.name.clone(), domain, lt))
}

/// Lifts every member of a family; names get `prefix` prepended.
pub fn lift_family(
    host: &CompositionPoset,
    sub: &CompositionPoset,
    phi: &[Option<usize>],
    family: &[Refinement],
    prefix: &str,
) -> Result<Vec<Refinement>> {
    family
        .iter()
        .map(|l| Ok(lift(host, sub, phi, l)?.named(format!("{prefix}/{}", l.name))))
        .collect()
}

/// Sorts the elements of `domain` by a key; the key must be monotone there.
pub fn sort_members<K: Ord>(
    host: &CompositionPoset,
    domain: &BitSet,
    name: impl Into<String>,
    key: impl Fn(&Composition) -> K,
) -> Result<Refinement> {
    Ok(crate::poset::sort_by(host, domain, |i| key(host.label(i)))?.named(name))
}

fn comp_from(parts: Vec<u32>) -> Composition {
    Composition::new(parts).expect("parts are positive")
}

/// Compact label for names: parts joined by `.`, `e` for the empty composition.
pub(crate) fn tag(c: &Composition) -> String {
    if c.is_empty() {
        return "e".into();
    }
    c.parts().iter().map(u32::to_string).collect::<Vec<_>>().join(".")
}

/// Caps every part at `cap`.
pub fn cap_parts(c: &Composition, cap: u32) -> Composition {
    comp_from(c.parts().iter().map(|&p| p.min(cap)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::digits;

    #[test]
    fn lift_along_identity_is_identity() {
        let host = truncated_host(&"w w".parse().unwrap(), TruncationSpec::new(2, 0).unwrap());
        let sl = shortlex_catch_all(&host);
        let phi: Vec<Option<usize>> = (0..host.len()).map(Some).collect();
        let l = lift(&host, &host, &phi, &sl).unwrap();
        assert_eq!(l.relation(), sl.relation());
    }

    #[test]
    fn lift_replaces_elements_by_chains() {
        // cap parts at 2: the block of 2 is the chain 2 < 3
        let host = truncated_host(&"w".parse().unwrap(), TruncationSpec::new(3, 0).unwrap());
        let sub = truncated_host(&"w".parse().unwrap(), TruncationSpec::new(2, 0).unwrap());
        let phi = map_into(&host, &sub, |c| Some(cap_parts(c, 2)));
        let l = lift(&host, &sub, &phi, &shortlex_catch_all(&sub)).unwrap();
        let i2 = host.index_of(&digits("2")).unwrap();
        let i3 = host.index_of(&digits("3")).unwrap();
        let i1 = host.index_of(&digits("1")).unwrap();
        assert!(l.lt(i2, i3) && l.lt(i1, i3));
    }
}

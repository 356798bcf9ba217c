use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::order::{strip_core, subword_le, Composition, GeneralizedWord, TruncationSpec, WordSymbol};
use crate::poset::{ordinal_sum, CompositionPoset, Refinement};

use super::{shortlex_catch_all, sort_members, tag, truncated_host, AgeRealizer};

/// A window `b(alpha..=beta)` (1-based) containing `a` that cannot be shrunk on either side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompactEmbedding {
    pub alpha: usize,
    pub beta: usize,
}

fn greedy_end(a: &[u32], b: &[u32], from: usize) -> Option<usize> {
    let mut col = from;
    let mut last = None;
    for &p in a {
        while col < b.len() && b[col] < p {
            col += 1;
        }
        if col == b.len() {
            return None;
        }
        last = Some(col);
        col += 1;
    }
    last
}

fn check_core(c: &Composition, what: &str) -> Result<()> {
    let p = c.parts();
    if p.is_empty() || p[0] < 2 || p[p.len() - 1] < 2 {
        return Err(Error::Precondition(format!(
            "{what} = {c} must be nonempty with first and last parts at least 2"
        )));
    }
    Ok(())
}

/// Compact embeddings of `a` into `b`, left to right.
///
/// The greedy end from each start is the least right end; a start is compact exactly when
/// moving it one column right pushes the greedy end further (or loses the embedding).
pub fn compact_embeddings(a: &Composition, b: &Composition) -> Result<Vec<CompactEmbedding>> {
    check_core(a, "a")?;
    check_core(b, "b")?;
    if !subword_le(a, b) {
        return Err(Error::Precondition(format!("{a} does not embed into {b}")));
    }
    let (ap, bp) = (a.parts(), b.parts());
    let ends: Vec<Option<usize>> = (0..=bp.len()).map(|s| greedy_end(ap, bp, s)).collect();
    let mut out = Vec::new();
    for s in 0..bp.len() {
        let Some(e) = ends[s] else { break };
        if ends[s + 1].is_none_or(|e2| e2 > e) {
            out.push(CompactEmbedding { alpha: s + 1, beta: e + 1 });
        }
    }
    Ok(out)
}

/// The points `(i, j)` standing for `1^i a 1^j` that survive the two coordinate sorts against
/// `1^k b 1^l` and still have to be placed above it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tile {
    pub k: usize,
    pub l: usize,
    pub members: Vec<(usize, usize)>,
}

/// Tile at `(k, l)` for embeddings `emb` of `a` into `b`, where `n = |b|`.
pub fn tile_members(k: usize, l: usize, n: usize, emb: &[CompactEmbedding]) -> Tile {
    let q = emb.len();
    let imax = k + emb[q - 1].alpha - 1;
    let jmax = l + n - emb[0].beta;
    let mut members = Vec::new();
    for i in k..=imax {
        for j in l..=jmax {
            let covered = emb.iter().any(|e| i < k + e.alpha && j <= l + n - e.beta);
            if !covered {
                members.push((i, j));
            }
        }
    }
    Tile { k, l, members }
}

fn ones_around(i: usize, a: &Composition, j: usize) -> Composition {
    Composition::ones(i).concat(a).concat(&Composition::ones(j))
}

/// A family realizing the truncation of `Age(1^w c 1^w)`.
///
/// Elements are grouped by core (`d = 1^i a 1^j`); each fiber is a grid in `(i, j)`. Fibers with
/// incomparable cores are separated by ordinal sums, and for cores `a < b` the pairs
/// `1^i a 1^j ≰ 1^k b 1^l` are broken by two coordinate sorts and the tile classes.
pub fn band_realizer(c: &Composition, t: TruncationSpec) -> Result<AgeRealizer> {
    let word = band_word(c);
    let host = truncated_host(&word, t);
    let family = band_family(&host)?;
    Ok(AgeRealizer { word, truncation: t, host, family })
}

pub(crate) fn band_word(c: &Composition) -> GeneralizedWord {
    let mut s = vec![WordSymbol::RepOmega(1)];
    s.extend(c.parts().iter().map(|&p| WordSymbol::Fin(p)));
    s.push(WordSymbol::RepOmega(1));
    GeneralizedWord(s)
}

struct Fibers {
    cores: Vec<Composition>,
    of: Vec<(usize, usize, usize)>,
    sets: Vec<BitSet>,
}

fn fibers(host: &CompositionPoset) -> Fibers {
    let n = host.len();
    let mut index: BTreeMap<Composition, usize> = BTreeMap::new();
    let mut raw = Vec::with_capacity(n);
    for d in host.labels() {
        let (i, a, j) = strip_core(d);
        raw.push((i, a, j));
    }
    for (_, a, _) in &raw {
        let len = index.len();
        index.entry(a.clone()).or_insert(len);
    }
    // number cores in shortlex order for stable naming
    let cores: Vec<Composition> = index.keys().cloned().collect();
    let pos: BTreeMap<&Composition, usize> = cores.iter().enumerate().map(|(k, a)| (a, k)).collect();
    let mut sets = vec![BitSet::new(n); cores.len()];
    let mut of = Vec::with_capacity(n);
    for (x, (i, a, j)) in raw.iter().enumerate() {
        let f = pos[a];
        sets[f].insert(x);
        of.push((*i, f, *j));
    }
    Fibers { cores, of, sets }
}

/// Band family on any host that is the truncation of an `Age(1^w c 1^w)`; every element is
/// `1^i a 1^j` with `a` a core.
pub(crate) fn band_family(host: &CompositionPoset) -> Result<Vec<Refinement>> {
    let fb = fibers(host);
    let nf = fb.cores.len();
    let mut family = Vec::new();
    for f in 0..nf {
        let a = tag(&fb.cores[f]);
        let of = &fb.of;
        family.push(
            crate::poset::sort_by(host, &fb.sets[f], |x| (of[x].0, of[x].2))?.named(format!("grid[a={a};ij]")),
        );
        family.push(
            crate::poset::sort_by(host, &fb.sets[f], |x| (of[x].2, of[x].0))?.named(format!("grid[a={a};ji]")),
        );
    }
    for fa in 0..nf {
        for fbi in 0..nf {
            if fa == fbi || subword_le(&fb.cores[fa], &fb.cores[fbi]) {
                continue;
            }
            // nothing of fiber a lies below fiber b, so b may sit entirely below a
            let lower = Refinement::host_restriction(host, &fb.sets[fbi]);
            family.push(ordinal_sum(host, &lower, &fb.sets[fa])?.named(format!(
                "sum[lower={};upper={}]",
                tag(&fb.cores[fbi]),
                tag(&fb.cores[fa])
            )));
        }
    }
    if fb.cores.first().is_some_and(|a| a.is_empty()) {
        family.push(sort_members(host, &BitSet::full(host.len()), "length", |d| d.len())?);
    }
    for fa in 0..nf {
        for fbi in 0..nf {
            let (a, b) = (&fb.cores[fa], &fb.cores[fbi]);
            if fa == fbi || a.is_empty() || !subword_le(a, b) {
                continue;
            }
            family.extend(comparable_cores(host, &fb, fa, fbi)?);
        }
    }
    family.push(shortlex_catch_all(host));
    Ok(family)
}

fn comparable_cores(host: &CompositionPoset, fb: &Fibers, fa: usize, fbi: usize) -> Result<Vec<Refinement>> {
    let (a, b) = (&fb.cores[fa], &fb.cores[fbi]);
    let emb = compact_embeddings(a, b)?;
    let n = b.len();
    let q = emb.len();
    let r_off = emb[q - 1].alpha - 1;
    let s_off = n - emb[0].beta;
    let mut dom = fb.sets[fa].clone();
    dom.union_with(&fb.sets[fbi]);
    let of = &fb.of;
    let name = format!("a={};b={}", tag(a), tag(b));
    let mut out = Vec::new();
    // largest r with 1^r a ≤ d, and largest s with a 1^s ≤ d
    let r_key = |x: usize| if of[x].1 == fa { of[x].0 } else { of[x].0 + r_off };
    let s_key = |x: usize| if of[x].1 == fa { of[x].2 } else { of[x].2 + s_off };
    out.push(crate::poset::sort_by(host, &dom, r_key)?.named(format!("r-sort[{name}]")));
    out.push(crate::poset::sort_by(host, &dom, s_key)?.named(format!("s-sort[{name}]")));

    let mk = emb[q - 1].alpha;
    let ml = n - emb[0].beta + 1;
    let mut classes: Vec<(BitSet, Vec<(usize, usize)>)> = vec![(BitSet::new(host.len()), Vec::new()); mk * ml];
    for y in fb.sets[fbi].iter() {
        let (k, _, l) = of[y];
        let tile = tile_members(k, l, n, &emb);
        let cls = &mut classes[(k % mk) * ml + l % ml];
        for (i, j) in tile.members {
            if let Some(x) = host.index_of(&ones_around(i, a, j)) {
                cls.0.insert(x);
                cls.0.insert(y);
                cls.1.push((y, x));
            }
        }
    }
    for (c, (dom, pairs)) in classes.into_iter().enumerate() {
        let r = Refinement::from_pairs(host, &dom, &pairs)?;
        out.push(r.named(format!("tile[{name};class=({},{})]", c / ml, c % ml)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::digits;

    fn brute(a: &Composition, b: &Composition) -> Vec<CompactEmbedding> {
        let bp = b.parts();
        let sub = |s: usize, e: usize| Composition::new(bp[s..=e].to_vec()).unwrap();
        let mut out = Vec::new();
        for s in 0..bp.len() {
            for e in s..bp.len() {
                if !subword_le(a, &sub(s, e)) {
                    continue;
                }
                let left = s < e && subword_le(a, &sub(s + 1, e));
                let right = s < e && subword_le(a, &sub(s, e - 1));
                if !left && !right {
                    out.push(CompactEmbedding { alpha: s + 1, beta: e + 1 });
                }
            }
        }
        out
    }

    #[test]
    fn compact_embedding_examples() {
        let e = |s: &str, t: &str| compact_embeddings(&digits(s), &digits(t)).unwrap();
        assert_eq!(e("2", "2"), vec![CompactEmbedding { alpha: 1, beta: 1 }]);
        assert_eq!(e("22", "232"), vec![CompactEmbedding { alpha: 1, beta: 2 }, CompactEmbedding { alpha: 2, beta: 3 }]);
        assert_eq!(e("2", "212"), vec![CompactEmbedding { alpha: 1, beta: 1 }, CompactEmbedding { alpha: 3, beta: 3 }]);
        assert!(compact_embeddings(&digits("2"), &digits("121")).is_err());
        assert!(compact_embeddings(&digits("3"), &digits("2")).is_err());
    }

    #[test]
    fn compact_embeddings_match_brute_force() {
        let all = Composition::all_up_to_sum(8);
        let cores: Vec<&Composition> = all.iter().filter(|c| check_core(c, "c").is_ok()).collect();
        for a in &cores {
            for b in &cores {
                if subword_le(a, b) {
                    assert_eq!(compact_embeddings(a, b).unwrap(), brute(a, b), "{a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn tiles_hold_exactly_the_uncovered_points() {
        let (a, b) = (digits("2"), digits("212"));
        let emb = compact_embeddings(&a, &b).unwrap();
        let t = tile_members(1, 1, 3, &emb);
        for &(i, j) in &t.members {
            assert!(!subword_le(&ones_around(i, &a, j), &ones_around(1, &b, 1)));
        }
    }

    #[test]
    fn small_bands_verify() {
        for c in ["2", "22", "212"] {
            let r = band_realizer(&digits(c), TruncationSpec::new(3, 5).unwrap()).unwrap();
            let rep = r.verify();
            assert!(rep.verified, "{c}: {:?}", rep.describe_pairs(&r.host, 5));
        }
    }
}

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::order::{age_member, subword_le, Composition, GeneralizedWord, TruncationSpec, WordSymbol};
use crate::poset::{ordinal_sum, CompositionPoset, Refinement};

use super::{
    cap_parts, lift_family, map_into, prefix::append_letters, realize_word, reverse_realizer,
    shortlex_catch_all, sort_members, transport_family, truncated_host, union_realizer, AgeRealizer,
};

/// Thresholds shared by the cap constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuilderConfig {
    /// Largest entry of the parameter compositions, at least 1.
    pub m: u32,
    pub m_bar: u32,
    pub m_bar_bar: u32,
    pub truncation: TruncationSpec,
}

impl BuilderConfig {
    pub fn new(params: &[&Composition], truncation: TruncationSpec) -> Self {
        let m = params.iter().map(|c| c.max_part()).max().unwrap_or(0).max(1);
        BuilderConfig { m, m_bar: m + 1, m_bar_bar: m + 2, truncation }
    }
}

/// Which pair of symbols carries the unbounded parts in a double cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// `Age(w a 1^w b 1^w c w)`.
    Outer,
    /// `Age(1^w a w b w c 1^w)`.
    Inner,
}

fn fin(c: &Composition) -> Vec<WordSymbol> {
    c.parts().iter().map(|&p| WordSymbol::Fin(p)).collect()
}

fn word(pieces: &[Vec<WordSymbol>]) -> GeneralizedWord {
    GeneralizedWord(pieces.concat())
}

const W: WordSymbol = WordSymbol::Omega;
const ONES: WordSymbol = WordSymbol::RepOmega(1);

/// Lifts of `g` along capping at `cap`, then the largest-entry sort and shortlex.
fn cap_family(host: &CompositionPoset, g: &AgeRealizer, cap: u32, step: &str) -> Result<Vec<Refinement>> {
    let phi = map_into(host, &g.host, |c| Some(cap_parts(c, cap)));
    if let Some(x) = phi.iter().position(Option::is_none) {
        return Err(Error::Precondition(format!(
            "capped image of {} is missing from {}",
            host.label(x),
            g.word
        )));
    }
    let mut family = lift_family(host, &g.host, &phi, &g.family, step)?;
    family.push(sort_members(host, &BitSet::full(host.len()), "largest-entry", |c| c.max_part())?);
    family.push(shortlex_catch_all(host));
    Ok(family)
}

/// A family on the truncation of `Age(w a 1^w b 1^w)`: a family of `Age(m̄ a 1^w b 1^w)` with
/// each `m̄ x` blown up to the chain `m̄ x < (m̄+1) x < …`, plus a sort by largest entry.
pub fn cap_left_realizer(a: &Composition, b: &Composition, t: TruncationSpec) -> Result<AgeRealizer> {
    let cfg = BuilderConfig::new(&[a, b], t);
    let w = word(&[vec![W], fin(a), vec![ONES], fin(b), vec![ONES]]);
    let host = truncated_host(&w, t);
    let g = realize_word(&word(&[vec![WordSymbol::Fin(cfg.m_bar)], fin(a), vec![ONES], fin(b), vec![ONES]]), t)?;
    let family = cap_family(&host, &g, cfg.m_bar, &format!("cap[m={}]", cfg.m_bar))?;
    Ok(AgeRealizer { word: w, truncation: t, host, family })
}

/// A family on the truncation of `Age(1^w a w b 1^w)`, from `Age(1^w a m̄ b 1^w)` as in
/// [`cap_left_realizer`].
pub fn cap_inner_realizer(a: &Composition, b: &Composition, t: TruncationSpec) -> Result<AgeRealizer> {
    let cfg = BuilderConfig::new(&[a, b], t);
    let w = word(&[vec![ONES], fin(a), vec![W], fin(b), vec![ONES]]);
    let host = truncated_host(&w, t);
    let g = realize_word(&word(&[vec![ONES], fin(a), vec![WordSymbol::Fin(cfg.m_bar)], fin(b), vec![ONES]]), t)?;
    let family = cap_family(&host, &g, cfg.m_bar, &format!("cap[m={}]", cfg.m_bar))?;
    Ok(AgeRealizer { word: w, truncation: t, host, family })
}

/// The pieces of a double-cap age inside its truncation.
///
/// `a`..`d` follow the six intervals of the construction read literally (with the second `B`
/// set taken as `[m̄, m̄ a … c m)`); `n1`, `n2` are the two sub-ages whose union is the
/// complement of `d`, and `e` holds the elements with two parts at least `m̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCapSets {
    pub a: BitSet,
    pub b1: BitSet,
    pub b2: BitSet,
    pub c1: BitSet,
    pub c2: BitSet,
    pub d: BitSet,
    pub n1: BitSet,
    pub n2: BitSet,
    pub e: BitSet,
}

impl DoubleCapSets {
    /// Elements in none of the six intervals.
    pub fn outside_six(&self) -> BitSet {
        let mut s = BitSet::full(self.a.len());
        for part in [&self.a, &self.b1, &self.b2, &self.c1, &self.c2, &self.d] {
            s.difference_with(part);
        }
        s
    }
}

struct Shape {
    cfg: BuilderConfig,
    side: Side,
    a: Composition,
    b: Composition,
    c: Composition,
}

impl Shape {
    /// The word with the two unbounded slots replaced by `s1`, `s2`.
    fn word(&self, s1: WordSymbol, s2: WordSymbol) -> GeneralizedWord {
        let (a, b, c) = (fin(&self.a), fin(&self.b), fin(&self.c));
        match self.side {
            Side::Outer => word(&[vec![s1], a, vec![ONES], b, vec![ONES], c, vec![s2]]),
            Side::Inner => word(&[vec![ONES], a, vec![s1], b, vec![s2], c, vec![ONES]]),
        }
    }

    fn big(&self, c: &Composition) -> Vec<usize> {
        (0..c.len()).filter(|&i| c.parts()[i] >= self.cfg.m_bar).collect()
    }

    /// Least value of the first (`slot = 0`) or second slot admitting `c`, other slot at `B`.
    fn slot_key(&self, c: &Composition, slot: usize) -> u32 {
        let bmax = self.cfg.truncation.omega_cap.max(self.cfg.m_bar);
        let mk = |t: u32| {
            let s = if t == 0 { None } else { Some(WordSymbol::Fin(t)) };
            let sym = |x: Option<WordSymbol>| x.map(|s| vec![s]).unwrap_or_default();
            let (a, b, cc) = (fin(&self.a), fin(&self.b), fin(&self.c));
            let other = vec![WordSymbol::Fin(bmax)];
            let w = match (self.side, slot) {
                (Side::Outer, 0) => word(&[sym(s), a, vec![ONES], b, vec![ONES], cc, other]),
                (Side::Outer, _) => word(&[other, a, vec![ONES], b, vec![ONES], cc, sym(s)]),
                (Side::Inner, 0) => word(&[vec![ONES], a, sym(s), b, other, cc, vec![ONES]]),
                (Side::Inner, _) => word(&[vec![ONES], a, other, b, sym(s), cc, vec![ONES]]),
            };
            w.truncate(self.cfg.truncation)
        };
        (0..=bmax).find(|&t| subword_le(c, &mk(t))).unwrap_or(bmax + 1)
    }

    fn sets(&self, host: &CompositionPoset) -> DoubleCapSets {
        let (m, mb, mbb) = (self.cfg.m, self.cfg.m_bar, self.cfg.m_bar_bar);
        let f = WordSymbol::Fin;
        let interval = |lo: &[u32], w: GeneralizedWord| {
            let lo = Composition::new(lo.to_vec()).unwrap();
            super::select(host, |d| subword_le(&lo, d) && age_member(d, &w))
        };
        let n1 = super::select(host, |d| age_member(d, &self.word(W, f(mb))));
        let n2 = super::select(host, |d| age_member(d, &self.word(f(mb), W)));
        DoubleCapSets {
            a: interval(&[], self.word(f(m), f(m))),
            b1: interval(&[mb], self.word(f(m), f(mb))),
            b2: interval(&[mb], self.word(f(mb), f(m))),
            c1: interval(&[mb, mb], self.word(W, f(mb))),
            c2: interval(&[mb, mb], self.word(f(mb), W)),
            d: interval(&[mbb, mbb], self.word(W, W)),
            n1,
            n2,
            e: super::select(host, |d| self.big(d).len() == 2),
        }
    }
}

/// The sets of [`double_cap_realizer`] for inspection.
pub fn double_cap_sets(a: &Composition, b: &Composition, c: &Composition, t: TruncationSpec, side: Side) -> DoubleCapSets {
    let shape = Shape { cfg: BuilderConfig::new(&[a, b, c], t), side, a: a.clone(), b: b.clone(), c: c.clone() };
    let host = truncated_host(&shape.word(W, W), t);
    shape.sets(&host)
}

/// The two sub-ages whose union is everything but the doubly large elements.
fn halves(shape: &Shape) -> Result<(AgeRealizer, AgeRealizer)> {
    let (a, b, c, t) = (&shape.a, &shape.b, &shape.c, shape.cfg.truncation);
    let mb = shape.cfg.m_bar;
    match shape.side {
        Side::Outer => {
            // Age(w a 1^w b 1^w c m̄): cap on the left, then the trailing letters
            let tail: Vec<u32> = c.parts().iter().copied().chain([mb]).collect();
            let n1 = append_letters(cap_left_realizer(a, b, t)?, &tail)?;
            let head: Vec<u32> = a.parts().iter().rev().copied().chain([mb]).collect();
            let n2 = append_letters(cap_left_realizer(&c.reversed(), &b.reversed(), t)?, &head)?;
            Ok((n1, reverse_realizer(&n2)))
        }
        Side::Inner => {
            let amb = a.concat(&Composition::new(vec![mb])?).concat(b);
            let mbc = b.concat(&Composition::new(vec![mb])?).concat(c);
            let n1 = cap_inner_realizer(a, &mbc, t)?;
            let n2 = cap_inner_realizer(&amb, c, t)?;
            Ok((n1, n2))
        }
    }
}

/// A family on the truncation of `Age(w a 1^w b 1^w c w)` (outer) or `Age(1^w a w b w c 1^w)`
/// (inner).
///
/// Members: the union combinator over the two halves, the halves below the doubly large
/// elements, sorts by the least admissible value of each unbounded slot, lifts of the factor
/// realizers on the elements with two large parts, lifts of the `m̄ … m̄` realizer along
/// capping, the largest-entry sort and shortlex.
pub fn double_cap_realizer(
    a: &Composition,
    b: &Composition,
    c: &Composition,
    t: TruncationSpec,
    side: Side,
) -> Result<AgeRealizer> {
    let cfg = BuilderConfig::new(&[a, b, c], t);
    let shape = Shape { cfg, side, a: a.clone(), b: b.clone(), c: c.clone() };
    let w = shape.word(W, W);
    let host = truncated_host(&w, t);
    let sets = shape.sets(&host);
    let mut family = Vec::new();

    let (h1, h2) = halves(&shape)?;
    let f1 = transport_family(&h1.host, &h1.family, &host);
    let f2 = transport_family(&h2.host, &h2.family, &host);
    family.extend(union_realizer(&host, &sets.n1, &f1, &sets.n2, &f2)?);

    let mut low = sets.n1.clone();
    low.union_with(&sets.n2);
    let lower = Refinement::host_restriction(&host, &low);
    family.push(ordinal_sum(&host, &lower, &sets.d)?.named("halves-below-double"));

    let full = BitSet::full(host.len());
    family.push(sort_members(&host, &full, "slot[1]", |d| shape.slot_key(d, 0))?);
    family.push(sort_members(&host, &full, "slot[2]", |d| shape.slot_key(d, 1))?);

    // elements k1 v k2 (outer) or x k1 y k2 z (inner) with both k ≥ m̄ embed in a product
    let pieces = |d: &Composition| {
        let big = shape.big(d);
        let (i, j) = (big[0], big[1]);
        (d.window(0, i), d.window(i + 1, j), d.window(j + 1, d.len()))
    };
    let factors: Vec<(GeneralizedWord, usize)> = match side {
        Side::Outer => vec![(word(&[fin(a), vec![ONES], fin(b), vec![ONES], fin(c)]), 1)],
        Side::Inner => vec![
            (word(&[vec![ONES], fin(a)]), 0),
            (word(&[fin(b)]), 1),
            (word(&[fin(c), vec![ONES]]), 2),
        ],
    };
    for (fw, which) in factors {
        let fr = realize_word(&fw, t)?;
        let mut phi = vec![None; host.len()];
        for x in sets.e.iter() {
            let p = pieces(host.label(x));
            let piece = [p.0, p.1, p.2][which].clone();
            phi[x] = Some(fr.host.index_of(&piece).ok_or_else(|| {
                Error::Precondition(format!("factor {piece} of {} is outside {fw}", host.label(x)))
            })?);
        }
        family.extend(lift_family(&host, &fr.host, &phi, &fr.family, &format!("factor[{which}]"))?);
    }

    let g0 = realize_word(&shape.word(WordSymbol::Fin(cfg.m_bar), WordSymbol::Fin(cfg.m_bar)), t)?;
    family.extend(cap_family(&host, &g0, cfg.m_bar, &format!("cap[m={}]", cfg.m_bar))?);
    Ok(AgeRealizer { word: w, truncation: t, host, family })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::digits;

    fn t(b: u32, r: usize) -> TruncationSpec {
        TruncationSpec::new(b, r).unwrap()
    }

    fn check(r: &AgeRealizer) {
        let rep = r.verify();
        assert!(rep.verified, "{}: {:?}", r.word, rep.describe_pairs(&r.host, 6));
    }

    #[test]
    fn cap_left_small() {
        check(&cap_left_realizer(&digits("e"), &digits("e"), t(5, 4)).unwrap());
        check(&cap_left_realizer(&digits("2"), &digits("e"), t(4, 5)).unwrap());
    }

    #[test]
    fn cap_inner_small() {
        check(&cap_inner_realizer(&digits("e"), &digits("e"), t(5, 4)).unwrap());
        check(&cap_inner_realizer(&digits("2"), &digits("e"), t(4, 4)).unwrap());
    }

    #[test]
    fn outer_double_caps_small() {
        let e = digits("e");
        check(&double_cap_realizer(&e, &e, &e, t(4, 3), Side::Outer).unwrap());
        check(&double_cap_realizer(&digits("2"), &e, &e, t(5, 3), Side::Outer).unwrap());
    }

    #[test]
    fn inner_double_cap_residue_is_single_big_part_below_two() {
        let e = digits("e");
        for (a, b) in [(&e, &e), (&digits("2"), &e)] {
            let mut r = double_cap_realizer(a, b, &e, t(5, 3), Side::Inner).unwrap();
            let cfg = BuilderConfig::new(&[a, b, &e], r.truncation);
            let big = |c: &Composition| c.parts().iter().filter(|&&p| p > cfg.m_bar).count();
            let rep = r.verify();
            for &(x, y) in &rep.unbroken_pairs {
                let (u, d) = (r.host.label(x), r.host.label(y));
                assert!(big(u) == 1 && big(d) == 2, "{u} never above {d}");
            }
            r.complete();
            check(&r);
        }
        // the smallest instance
        let r = double_cap_realizer(&e, &e, &e, t(4, 2), Side::Inner).unwrap();
        let ix = |s: &str| r.host.index_of(&digits(s)).unwrap();
        assert!(r.verify().unbroken_pairs.contains(&(ix("14"), ix("43"))));
    }

    #[test]
    fn halves_and_doubles_cover() {
        let e = digits("e");
        for side in [Side::Outer, Side::Inner] {
            let s = double_cap_sets(&digits("2"), &e, &e, t(5, 3), side);
            let mut all = s.n1.clone();
            all.union_with(&s.n2);
            all.union_with(&s.d);
            assert_eq!(all.count(), s.a.len());
            let mut halves = s.n1.clone();
            halves.union_with(&s.n2);
            assert!(!halves.intersects(&s.d));
            for part in [&s.a, &s.b1, &s.b2] {
                assert!(!part.intersects(&s.d));
            }
            assert!(s.d.is_subset(&s.e));
        }
    }
}

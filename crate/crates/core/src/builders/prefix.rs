use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::order::{GeneralizedWord, TruncationSpec, WordSymbol};
use crate::poset::{ordinal_sum, CompositionPoset, Refinement};

use super::{
    band::{band_family, band_word},
    lift_family, map_into, shortlex_catch_all, sort_members, transport_family, truncated_host,
    AgeRealizer,
};

fn with_prefix(k: u32, u: &GeneralizedWord) -> GeneralizedWord {
    let mut s = vec![WordSymbol::Fin(k)];
    s.extend_from_slice(u.symbols());
    GeneralizedWord(s)
}

fn tail(c: &crate::order::Composition) -> crate::order::Composition {
    c.window(1, c.len())
}

/// One step of the induction: a family on `Age(j u)` from one on `Age((j-1) u)` and the base.
fn prefix_step(
    j: u32,
    u: &GeneralizedWord,
    base: &AgeRealizer,
    prev_host: &CompositionPoset,
    prev: &[Refinement],
) -> Result<(CompositionPoset, Vec<Refinement>)> {
    let host = truncated_host(&with_prefix(j, u), base.truncation);
    let a_set = super::select(&host, |d| base.host.index_of(d).is_some());
    let mut b_set = BitSet::full(host.len());
    b_set.difference_with(&a_set);
    let first = |x: usize| host.label(x).parts()[0];
    let rest_in_base = |x: usize| -> Result<usize> {
        base.host.index_of(&tail(host.label(x))).ok_or_else(|| {
            Error::Precondition(format!("{} is missing from the base host", tail(host.label(x))))
        })
    };

    let mut family = transport_family(prev_host, prev, &host);

    // B sits inside N × A through ℓa ↦ (ℓ, a)
    family.push(sort_members(&host, &b_set, format!("first-part[k={j}]"), |d| d.parts()[0])?);

    // One expansion per base member: ia ↦ a on A_i (i ≤ j) and on B, identity on A_{>j}.
    // On A_i ∪ B_j this replaces a by the chain ia < ja, on A_{>j} ∪ B_j it replaces a by ja;
    // on B it is the second coordinate of the product. The pieces agree where they overlap.
    let phi = (0..host.len())
        .map(|x| {
            let d = host.label(x);
            if d.is_empty() || (a_set.contains(x) && first(x) > j) {
                Ok(base.host.index_of(d))
            } else {
                rest_in_base(x).map(Some)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    family.extend(lift_family(&host, &base.host, &phi, &base.family, &format!("expand[k={j}]"))?);

    // nothing of B lies below A
    let lower = Refinement::host_restriction(&host, &a_set);
    family.push(ordinal_sum(&host, &lower, &b_set)?.named(format!("a-below-b[k={j}]")));
    Ok((host, family))
}

/// A family on the truncation of `Age(k u)` built from a verified family on `Age(u)`.
///
/// The base family must contain a member defined on all of its host (every family built here
/// ends with shortlex), since lifts only order blocks that the member orders.
pub fn prefix_realizer(k: u32, u: &GeneralizedWord, base: &AgeRealizer) -> Result<AgeRealizer> {
    let rep = base.verify();
    if !rep.verified {
        return Err(Error::BaseNotVerified(format!("{} unbroken pairs", rep.unbroken_pairs.len())));
    }
    if k == 0 {
        return Ok(base.clone());
    }
    prefix_unchecked(k, u, base)
}

fn prefix_unchecked(k: u32, u: &GeneralizedWord, base: &AgeRealizer) -> Result<AgeRealizer> {
    let mut host = base.host.clone();
    let mut family = base.family.clone();
    for j in 1..=k {
        let (h, f) = prefix_step(j, u, base, &host, &family)?;
        host = h;
        family = f;
    }
    family.push(shortlex_catch_all(&host));
    Ok(AgeRealizer { word: with_prefix(k, u), truncation: base.truncation, host, family })
}

/// The same realizer on the reversed word; composition reversal is an isomorphism of ages.
pub fn reverse_realizer(r: &AgeRealizer) -> AgeRealizer {
    let word = r.word.reversed();
    let host = truncated_host(&word, r.truncation);
    let map = map_into(&r.host, &host, |c| Some(c.reversed()));
    let family = r.family.iter().map(|m| m.transport(&map, host.len())).collect();
    AgeRealizer { word, truncation: r.truncation, host, family }
}

/// A family on `Age(u k)` from a verified family on `Age(u)`, through reversal.
pub fn suffix_realizer(k: u32, u: &GeneralizedWord, base: &AgeRealizer) -> Result<AgeRealizer> {
    let rep = base.verify();
    if !rep.verified {
        return Err(Error::BaseNotVerified(format!("{} unbroken pairs", rep.unbroken_pairs.len())));
    }
    let rev = reverse_realizer(base);
    let r = prefix_unchecked(k, &u.reversed(), &rev)?;
    Ok(reverse_realizer(&r))
}

/// Appends finite letters on the right, one suffix step per letter.
pub(crate) fn append_letters(mut r: AgeRealizer, letters: &[u32]) -> Result<AgeRealizer> {
    for &k in letters {
        let rev = reverse_realizer(&r);
        let u = rev.word.clone();
        r = reverse_realizer(&prefix_unchecked(k, &u, &rev)?);
    }
    Ok(r)
}

/// Realizes `Age(w)` for words of the form `p · core · s` with `p`, `s` finite and the core one
/// of: empty, `w`, `1^w`, or `1^w c 1^w` with `c` finite.
///
/// Leading and trailing letters go through [`prefix_realizer`] and [`suffix_realizer`]; the
/// core through [`super::band_realizer`] or a single chain.
pub fn realize_word(w: &GeneralizedWord, t: TruncationSpec) -> Result<AgeRealizer> {
    let s = w.symbols();
    if let Some(WordSymbol::Fin(k)) = s.first() {
        let u = GeneralizedWord(s[1..].to_vec());
        let base = realize_word(&u, t)?;
        return prefix_unchecked(*k, &u, &base);
    }
    if let Some(WordSymbol::Fin(k)) = s.last() {
        let u = GeneralizedWord(s[..s.len() - 1].to_vec());
        let base = realize_word(&u, t)?;
        return Ok(reverse_realizer(&prefix_unchecked(*k, &u.reversed(), &reverse_realizer(&base))?));
    }
    realize_core(w, t)
}

fn realize_core(w: &GeneralizedWord, t: TruncationSpec) -> Result<AgeRealizer> {
    use WordSymbol::*;
    let s = w.symbols();
    let host = truncated_host(w, t);
    let chain = |host: CompositionPoset| {
        let family = vec![shortlex_catch_all(&host)];
        Ok(AgeRealizer { word: w.clone(), truncation: t, host, family })
    };
    match s {
        [] | [Omega] | [RepOmega(1)] => chain(host),
        [RepOmega(1), mid @ .., RepOmega(1)] if mid.iter().all(|x| x.is_bounded()) => {
            let c: Vec<u32> = mid.iter().map(|x| if let Fin(n) = x { *n } else { 0 }).collect();
            let c = crate::order::Composition::new(c)?;
            let big = truncated_host(&band_word(&c), t);
            let family = band_family(&big)?;
            // the band host may be larger when `mid` is empty (1^w 1^w truncates longer)
            let family = transport_family(&big, &family, &host);
            Ok(AgeRealizer { word: w.clone(), truncation: t, host, family })
        }
        _ => Err(Error::Precondition(format!(
            "no construction for the core of {w}: expected p 1^w c 1^w s, p w s or p 1^w s"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(b: u32, r: usize) -> TruncationSpec {
        TruncationSpec::new(b, r).unwrap()
    }

    #[test]
    fn prefix_zero_is_base() {
        let u: GeneralizedWord = "w".parse().unwrap();
        let base = realize_word(&u, t(4, 0)).unwrap();
        let r = prefix_realizer(0, &u, &base).unwrap();
        assert_eq!(r.family, base.family);
    }

    #[test]
    fn prefix_over_omega() {
        let u: GeneralizedWord = "w".parse().unwrap();
        let base = realize_word(&u, t(4, 0)).unwrap();
        let r = prefix_realizer(2, &u, &base).unwrap();
        assert_eq!(r.host.len(), truncated_host(&"2 w".parse().unwrap(), t(4, 0)).len());
        assert!(r.verify().verified);
    }

    #[test]
    fn finite_cores_with_letters_around() {
        for w in ["2 1^w 3", "2 w 3", "3 1 2", "1^w 2 1^w 2", "2 1^w 1 3 1^w 1"] {
            let w: GeneralizedWord = w.parse().unwrap();
            let r = realize_word(&w, t(4, 4)).unwrap();
            let rep = r.verify();
            assert!(rep.verified, "{w}: {:?}", rep.describe_pairs(&r.host, 4));
        }
    }

    #[test]
    fn rejects_unverified_base() {
        let u: GeneralizedWord = "w w".parse().unwrap();
        let host = truncated_host(&u, t(3, 0));
        let base = AgeRealizer { word: u.clone(), truncation: t(3, 0), family: vec![shortlex_catch_all(&host)], host };
        assert!(matches!(prefix_realizer(1, &u, &base), Err(Error::BaseNotVerified(_))));
    }
}

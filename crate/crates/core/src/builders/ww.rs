use crate::bits::BitSet;
use crate::error::Result;
use crate::order::{TruncationSpec, WordSymbol};
use crate::poset::{sort_by, CompositionPoset, Refinement};

use super::{truncated_host, AgeRealizer};

fn linear_by(
    host: &CompositionPoset,
    cmp: impl Fn(&crate::order::Composition, &crate::order::Composition) -> std::cmp::Ordering,
) -> Refinement {
    let mut order: Vec<usize> = (0..host.len()).collect();
    order.sort_by(|&x, &y| cmp(host.label(x), host.label(y)));
    Refinement::linear(host, &order).expect("extends subword order")
}

/// Shortlex on the whole host.
pub fn shortlex_refinement(host: &CompositionPoset) -> Refinement {
    linear_by(host, |u, w| u.shortlex_cmp(w)).named("shortlex")
}

/// Shortcolex on the whole host.
pub fn shortcolex_refinement(host: &CompositionPoset) -> Refinement {
    linear_by(host, |u, w| u.shortcolex_cmp(w)).named("shortcolex")
}

/// Sort by largest part, then second largest part. Ties keep the host order only.
pub fn two_max_refinement(host: &CompositionPoset) -> Refinement {
    sort_by(host, &BitSet::full(host.len()), |i| host.label(i).two_largest())
        .expect("two largest parts are monotone")
        .named("two-max")
}

/// Shortlex, shortcolex and the two-max sort on a truncation of `Age(w w)`.
pub fn realizer_age_ww(t: TruncationSpec) -> Result<AgeRealizer> {
    let word = crate::order::GeneralizedWord::new(vec![WordSymbol::Omega, WordSymbol::Omega])?;
    let host = truncated_host(&word, t);
    let family = vec![shortlex_refinement(&host), shortcolex_refinement(&host), two_max_refinement(&host)];
    Ok(AgeRealizer { word, truncation: t, host, family })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{digits, subword_le, Composition};

    #[test]
    fn shortlex_and_shortcolex_extend_subword_order() {
        let all = Composition::all_up_to_sum(8);
        for u in &all {
            for w in &all {
                if subword_le(u, w) {
                    assert!(u.shortlex_cmp(w).is_le(), "{u:?} {w:?}");
                    assert!(u.shortcolex_cmp(w).is_le(), "{u:?} {w:?}");
                }
            }
        }
    }

    #[test]
    fn opposite_directions_on_13_31() {
        assert!(digits("13").shortlex_cmp(&digits("31")).is_lt());
        assert!(digits("31").shortcolex_cmp(&digits("13")).is_lt());
    }

    #[test]
    fn two_max_keys() {
        let host = crate::poset::composition_poset(
            ["e", "3", "22", "13", "31"].iter().map(|s| digits(s)).collect(),
        );
        let r = two_max_refinement(&host);
        let ix = |s: &str| host.index_of(&digits(s)).unwrap();
        assert!(r.lt(ix("22"), ix("3")));
        assert!(r.lt(ix("e"), ix("22")));
        assert!(!r.lt(ix("13"), ix("31")) && !r.lt(ix("31"), ix("13")));
    }

    #[test]
    fn ww_realizer_verifies() {
        let r = realizer_age_ww(TruncationSpec::new(3, 0).unwrap()).unwrap();
        assert_eq!(r.host.len(), 13);
        assert!(r.verify().verified);
        let r = realizer_age_ww(TruncationSpec::new(1, 0).unwrap()).unwrap();
        assert!(r.verify().verified);
    }
}

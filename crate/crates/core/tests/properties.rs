use proptest::prelude::*;

use compdim::bits::BitSet;
use compdim::builders::{realize_word, PartitionShape};
use compdim::dimension::{exact_dimension, exact_dimension_with, SolverConfig};
use compdim::order::*;
use compdim::par::Exec;
use compdim::poset::{composition_poset, sort_by, text, verify_realizer_with};

fn comp() -> impl Strategy<Value = Composition> {
    prop::collection::vec(1u32..=4, 0..6).prop_map(|v| Composition::new(v).unwrap())
}

fn symbol() -> impl Strategy<Value = WordSymbol> {
    prop_oneof![
        (1u32..=4).prop_map(WordSymbol::Fin),
        (1u32..=3).prop_map(WordSymbol::RepOmega),
        Just(WordSymbol::Omega),
        Just(WordSymbol::OmegaOmega),
    ]
}

fn word() -> impl Strategy<Value = GeneralizedWord> {
    prop::collection::vec(symbol(), 0..5).prop_map(GeneralizedWord)
}

proptest! {
    #[test]
    fn subword_order_is_a_partial_order(a in comp(), b in comp(), c in comp()) {
        prop_assert!(subword_le(&a, &a));
        if subword_le(&a, &b) && subword_le(&b, &a) {
            prop_assert_eq!(&a, &b);
        }
        if subword_le(&a, &b) && subword_le(&b, &c) {
            prop_assert!(subword_le(&a, &c));
        }
    }

    #[test]
    fn finite_words_have_the_down_closure_as_age(c in comp(), w in comp()) {
        prop_assert_eq!(age_member(&c, &GeneralizedWord::from_composition(&w)), subword_le(&c, &w));
    }

    #[test]
    fn reversal_is_an_automorphism(c in comp(), w in word()) {
        prop_assert_eq!(age_member(&c, &w), age_member(&c.reversed(), &w.reversed()));
    }

    #[test]
    fn truncations_grow_inside_the_age(w in word(), b in 1u32..4, r in 0usize..3) {
        let small = age_truncation(&w, TruncationSpec::new(b, r).unwrap());
        let big = age_truncation(&w, TruncationSpec::new(b + 1, r + 1).unwrap());
        for c in &small {
            prop_assert!(age_member(c, &w));
            prop_assert!(big.contains(c));
        }
    }

    #[test]
    fn display_and_parse_round_trip(c in comp(), w in word()) {
        prop_assert_eq!(c.to_string().parse::<Composition>().unwrap(), c.clone());
        prop_assert_eq!(w.to_string().parse::<GeneralizedWord>().unwrap(), w.clone());
        let json = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<GeneralizedWord>(&json).unwrap(), w);
    }

    #[test]
    fn sorting_accepts_exactly_monotone_keys(keys in prop::collection::vec(0u8..4, 16)) {
        let host = composition_poset(Composition::all_up_to_sum(4));
        let all = BitSet::full(host.len());
        let key = |x: usize| keys[x % keys.len()];
        let monotone = (0..host.len()).all(|i| (0..host.len()).all(|j| !host.lt(i, j) || key(i) <= key(j)));
        match sort_by(&host, &all, key) {
            Ok(r) => prop_assert!(monotone && r.check(&host).is_empty()),
            Err(_) => prop_assert!(!monotone),
        }
        // sum of parts is always monotone
        let by_sum = sort_by(&host, &all, |x| host.label(x).sum()).unwrap();
        prop_assert!(by_sum.check(&host).is_empty());
    }
}

#[test]
fn execution_policy_does_not_change_results() {
    let r = realize_word(&"2 1^w 3".parse().unwrap(), TruncationSpec::new(4, 3).unwrap()).unwrap();
    let seq = verify_realizer_with(&r.host, &r.family, Exec::Sequential);
    let par = verify_realizer_with(&r.host, &r.family, Exec::Parallel);
    assert_eq!(seq.unbroken_pairs, par.unbroken_pairs);
    let half = &r.family[..r.family.len() / 2];
    assert_eq!(
        verify_realizer_with(&r.host, half, Exec::Sequential).unbroken_pairs,
        verify_realizer_with(&r.host, half, Exec::Parallel).unbroken_pairs
    );
    let cfg = |exec| SolverConfig { exec, ..SolverConfig::default() };
    let a = exact_dimension_with(&r.host, 4, &cfg(Exec::Sequential));
    let b = exact_dimension_with(&r.host, 4, &cfg(Exec::Parallel));
    assert_eq!(a.value, b.value);
    assert_eq!(a.witness, b.witness);
}

#[test]
fn poset_text_round_trip() {
    let r = realize_word(&"1^w 2 1^w".parse().unwrap(), TruncationSpec::new(3, 3).unwrap()).unwrap();
    let src = text::write_poset(&r.host) + &text::write_family(&r.family);
    let (host, family) = text::parse::<Composition>(&src).unwrap();
    assert_eq!(host.labels(), r.host.labels());
    assert_eq!(family.len(), r.family.len());
    for (a, b) in family.iter().zip(&r.family) {
        assert_eq!(a.name, b.name);
        assert_eq!(a.domain(), b.domain());
        assert!((0..host.len()).all(|i| a.above(i) == b.above(i)));
    }
}

#[test]
fn reports_round_trip_through_json() {
    let host = composition_poset(age_truncation(&"w w".parse().unwrap(), TruncationSpec::new(3, 0).unwrap()));
    let d = exact_dimension(&host, 4);
    let back: compdim::dimension::DimensionResult =
        serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
    assert_eq!(back, d);
    let s = PartitionShape::new(1, Partition::new(vec![3, 2]).unwrap(), 1).unwrap();
    let back: PartitionShape = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
    assert_eq!(back, s);
    let words = ["1^w 2 1^w w w".parse().unwrap(), "w w w".parse().unwrap()];
    let rep = compdim::classifier::classify_composition_downset(&words);
    let back: compdim::classifier::ClassificationReport =
        serde_json::from_str(&serde_json::to_string(&rep).unwrap()).unwrap();
    assert_eq!(back, rep);
}

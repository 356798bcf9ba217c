use compdim::builders::partition_age_realizer;
use compdim::classifier::*;
use compdim::crowns::{composition_family, crown_2w};
use compdim::order::{age_member, GeneralizedWord, Partition, WordSymbol};

use WordSymbol::*;

fn all_words(max_len: usize) -> Vec<GeneralizedWord> {
    let alphabet = [Fin(1), Fin(2), Fin(3), RepOmega(1), Omega];
    let mut out = vec![GeneralizedWord(vec![])];
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &s in &alphabet {
                let mut v = w.0.clone();
                v.push(s);
                next.push(GeneralizedWord(v));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[test]
fn rules_and_templates_are_complementary() {
    let mut gaps = 0;
    for w in all_words(6) {
        let forbidden = has_forbidden_age(&w).is_some();
        let matched = maximal_shape_match(&w).unwrap().is_some();
        assert!(!(forbidden && matched), "{w}");
        if !forbidden && !matched {
            // the only words in neither class carry two separated 1^w before or after two w
            let p = unbounded_pattern(&w);
            let (o, i) = (Omega, RepOmega(1));
            assert!(p == [i, i, o, o] || p == [o, o, i, i], "{w}");
            assert!(classify_composition_downset(std::slice::from_ref(&w)).words[0].witness
                == Witness::Unmatched { pattern: GeneralizedWord(p) });
            gaps += 1;
        }
    }
    assert!(gaps > 0);
}

#[test]
fn witness_positions_follow_the_pattern() {
    for w in all_words(6) {
        if let Some(f) = has_forbidden_age(&w) {
            assert!(f.positions.windows(2).all(|p| p[0] < p[1]), "{w}");
            let got: Vec<WordSymbol> = f.positions.iter().map(|&p| w.0[p - 1]).collect();
            let want = f.age.word();
            assert_eq!(got.len(), want.len(), "{w}");
            for (g, t) in got.iter().zip(want.symbols()) {
                let ok = match t {
                    Fin(2) => matches!(g, Fin(n) if *n >= 2) || *g == Omega,
                    _ => g == t,
                };
                assert!(ok, "{w}: {g} in the role of {t}");
            }
        }
    }
}

#[test]
fn witness_crowns_live_in_the_age() {
    let words = [
        "w w w",
        "1^w 2 1^w 2 1^w",
        "1^w w 1^w 3 1^w",
        "w 1^w w 1^w",
        "1 3 1^w 5 w 2 1^w 4 w 1",
        "2 w 1^w 1 w 1^w",
    ];
    for s in words {
        let w: GeneralizedWord = s.parse().unwrap();
        let f = has_forbidden_age(&w).unwrap();
        for n in 5..=8 {
            let crown = composition_family(&f.crown_family, n).unwrap();
            for c in crown.lower.iter().chain(&crown.upper) {
                assert!(age_member(c, &w), "{c} not in {w} ({})", f.crown_family);
            }
        }
    }
    for s in ["2^w", "1 3^w", "w^w 2"] {
        let w: GeneralizedWord = s.parse().unwrap();
        assert_eq!(has_forbidden_age(&w).unwrap().crown_family, "2w");
        for n in 3..=8 {
            let crown = crown_2w(n).unwrap();
            assert!(crown.lower.iter().chain(&crown.upper).all(|c| age_member(c, &w)), "{w}");
        }
    }
}

#[test]
fn template_ages_contain_the_word() {
    let t = compdim::order::TruncationSpec::new(3, 2).unwrap();
    for w in all_words(4) {
        if let Some(m) = maximal_shape_match(&w).unwrap() {
            let big = m.word();
            for c in compdim::order::age_truncation(&w, t) {
                assert!(age_member(&c, &big), "{c} in {w} but not in {big}");
            }
        }
    }
}

fn partition_words() -> Vec<GeneralizedWord> {
    let alphabet = [Fin(1), Fin(2), Fin(3), RepOmega(1), RepOmega(2), Omega];
    let mut out = vec![GeneralizedWord(vec![])];
    let mut frontier = out.clone();
    for _ in 0..3 {
        let mut next = Vec::new();
        for w in &frontier {
            for &s in &alphabet {
                let mut v = w.0.clone();
                v.push(s);
                next.push(GeneralizedWord(v));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[test]
fn partition_shapes_contain_the_word_and_verify() {
    let boxed = Partition::in_box(6, 6);
    for w in partition_words() {
        let shape = normalize_partition_word(&w).unwrap();
        for mu in &boxed {
            if age_member(&mu.to_composition(), &w) {
                assert!(shape.contains(mu), "{mu} in {w} but not in {shape:?}");
            }
        }
        let r = partition_age_realizer(&shape, 6, 6).unwrap();
        assert!(r.verify().verified, "{w}");
    }
}

#[test]
fn partition_normalization_is_monotone() {
    let boxed = Partition::in_box(5, 5);
    let extra = [Fin(1), Fin(3), RepOmega(1), RepOmega(2), Omega];
    for w in partition_words() {
        let s = normalize_partition_word(&w).unwrap();
        for &x in &extra {
            let mut v = w.0.clone();
            v.push(x);
            let t = normalize_partition_word(&GeneralizedWord(v)).unwrap();
            assert!(t.k >= s.k && t.ell >= s.ell, "{w} + {x}");
            assert!(boxed.iter().filter(|mu| s.contains(mu)).all(|mu| t.contains(mu)), "{w} + {x}");
        }
    }
}

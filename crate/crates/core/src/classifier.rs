//! Deciding whether a downset of compositions or partitions, given as a finite union of ages,
//! has finite dimension.

use serde::{Deserialize, Serialize};

use crate::builders::PartitionShape;
use crate::error::{Error, Result};
use crate::order::{Composition, GeneralizedWord, Partition, WordSymbol};

use WordSymbol::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Finite,
    Infinite,
}

/// The four minimal infinite dimensional ages of compositions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ForbiddenAge {
    /// `Age(w w w)`
    ThreeOmegas,
    /// `Age(1^w 2 1^w 2 1^w)`
    OnesTwoOnesTwoOnes,
    /// `Age(w 1^w w 1^w)`
    OmegaOnesOmegaOnes,
    /// `Age(1^w w 1^w w)`
    OnesOmegaOnesOmega,
}

impl ForbiddenAge {
    pub const ALL: [ForbiddenAge; 4] = [
        ForbiddenAge::ThreeOmegas,
        ForbiddenAge::OnesTwoOnesTwoOnes,
        ForbiddenAge::OmegaOnesOmegaOnes,
        ForbiddenAge::OnesOmegaOnesOmega,
    ];

    pub fn word(self) -> GeneralizedWord {
        let s = match self {
            ForbiddenAge::ThreeOmegas => vec![Omega, Omega, Omega],
            ForbiddenAge::OnesTwoOnesTwoOnes => vec![RepOmega(1), Fin(2), RepOmega(1), Fin(2), RepOmega(1)],
            ForbiddenAge::OmegaOnesOmegaOnes => vec![Omega, RepOmega(1), Omega, RepOmega(1)],
            ForbiddenAge::OnesOmegaOnesOmega => vec![RepOmega(1), Omega, RepOmega(1), Omega],
        };
        GeneralizedWord(s)
    }

    /// Name of the crown generator in [`crate::crowns::composition_family`] living in this age.
    pub fn crown_family(self) -> &'static str {
        match self {
            ForbiddenAge::ThreeOmegas => "omega3",
            ForbiddenAge::OnesTwoOnesTwoOnes => "ones2",
            ForbiddenAge::OmegaOnesOmegaOnes => "w1w",
            ForbiddenAge::OnesOmegaOnesOmega => "1w1w",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// A symbol `w^w` or `n^w` with `n ≥ 2`.
    HeavySymbol,
    /// Three `w` symbols.
    ThreeOmegas,
    /// `1^w, big, 1^w, big, 1^w` where big is `w` or a letter at least 2.
    OnesBigOnesBigOnes,
    /// `w, 1^w, w, 1^w`.
    OmegaOnesOmegaOnes,
    /// `1^w, w, 1^w, w`.
    OnesOmegaOnesOmega,
}

/// Why a word's age is infinite dimensional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenWitness {
    pub rule: Rule,
    pub age: ForbiddenAge,
    /// 1-based positions of the matched symbols, strictly increasing.
    pub positions: Vec<usize>,
    /// Crown generator whose members all lie in the age of the word.
    pub crown_family: String,
}

fn is_ones(s: WordSymbol) -> bool {
    s == RepOmega(1)
}

fn is_big(s: WordSymbol) -> bool {
    matches!(s, Omega) || matches!(s, Fin(n) if n >= 2)
}

/// Leftmost positions (1-based) matching `pattern` as a subsequence.
fn find_pattern(s: &[WordSymbol], pattern: &[fn(WordSymbol) -> bool]) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(pattern.len());
    let mut from = 0;
    for test in pattern {
        let p = from + s[from..].iter().position(|&x| test(x))?;
        out.push(p + 1);
        from = p + 1;
    }
    Some(out)
}

/// The first applicable rule, if any. Absent exactly when the age is finite dimensional.
pub fn has_forbidden_age(w: &GeneralizedWord) -> Option<ForbiddenWitness> {
    let s = w.symbols();
    let omega: fn(WordSymbol) -> bool = |x| x == Omega;
    let witness = |rule, age: ForbiddenAge, positions, crown: &str| ForbiddenWitness {
        rule,
        age,
        positions,
        crown_family: crown.to_string(),
    };
    if let Some(p) = s.iter().position(|&x| matches!(x, OmegaOmega) || matches!(x, RepOmega(n) if n >= 2)) {
        // n^w with n ≥ 2 already contains 1^w 2 1^w 2 1^w
        return Some(witness(Rule::HeavySymbol, ForbiddenAge::OnesTwoOnesTwoOnes, vec![p + 1], "2w"));
    }
    type Pattern = Vec<fn(WordSymbol) -> bool>;
    let rules: [(Rule, ForbiddenAge, Pattern); 4] = [
        (Rule::ThreeOmegas, ForbiddenAge::ThreeOmegas, vec![omega, omega, omega]),
        (Rule::OnesBigOnesBigOnes, ForbiddenAge::OnesTwoOnesTwoOnes, vec![is_ones, is_big, is_ones, is_big, is_ones]),
        (Rule::OmegaOnesOmegaOnes, ForbiddenAge::OmegaOnesOmegaOnes, vec![omega, is_ones, omega, is_ones]),
        (Rule::OnesOmegaOnesOmega, ForbiddenAge::OnesOmegaOnesOmega, vec![is_ones, omega, is_ones, omega]),
    ];
    rules.into_iter().find_map(|(rule, age, pattern)| {
        find_pattern(s, &pattern).map(|pos| witness(rule, age, pos, age.crown_family()))
    })
}

/// The two kinds of maximal finite dimensional ages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Template {
    /// `a w b 1^w c 1^w d w e`
    OmegaOutside,
    /// `a 1^w b w c w d 1^w e`
    OmegaInside,
}

impl Template {
    fn slots(self) -> [WordSymbol; 4] {
        match self {
            Template::OmegaOutside => [Omega, RepOmega(1), RepOmega(1), Omega],
            Template::OmegaInside => [RepOmega(1), Omega, Omega, RepOmega(1)],
        }
    }
}

/// A maximal age containing the age of a word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateMatch {
    pub template: Template,
    /// The finite blocks `a, b, c, d, e`.
    pub blocks: [Composition; 5],
    /// Which of the four unbounded slots the word actually uses.
    pub used: [bool; 4],
}

impl TemplateMatch {
    /// The full template word with the blocks filled in.
    pub fn word(&self) -> GeneralizedWord {
        let slots = self.template.slots();
        let mut s = Vec::new();
        for (i, block) in self.blocks.iter().enumerate() {
            s.extend(block.parts().iter().map(|&p| Fin(p)));
            if let Some(&slot) = slots.get(i) {
                s.push(slot);
            }
        }
        GeneralizedWord(s)
    }
}

/// Merges runs `1^w 1 … 1 1^w` into a single `1^w`; they have the same age.
fn merge_ones(s: &[WordSymbol]) -> Vec<WordSymbol> {
    let mut out: Vec<WordSymbol> = Vec::with_capacity(s.len());
    for &x in s {
        if is_ones(x) {
            let ones_tail = out.iter().rev().take_while(|&&y| y == Fin(1)).count();
            if out.len() > ones_tail && is_ones(out[out.len() - ones_tail - 1]) {
                out.truncate(out.len() - ones_tail);
                continue;
            }
        }
        out.push(x);
    }
    out
}

/// The unbounded symbols of `w` in order, after merging `1^w` runs joined by ones.
pub fn unbounded_pattern(w: &GeneralizedWord) -> Vec<WordSymbol> {
    merge_ones(w.symbols()).into_iter().filter(|x| !x.is_bounded()).collect()
}

/// Matches the unbounded symbols of `w` against one of the two maximal templates.
pub fn maximal_shape_match(w: &GeneralizedWord) -> Result<Option<TemplateMatch>> {
    if let Some(x) = w.symbols().iter().find(|&&x| matches!(x, OmegaOmega) || matches!(x, RepOmega(n) if n >= 2)) {
        return Err(Error::DisallowedSymbol(format!("{x} in {w}")));
    }
    let s = merge_ones(w.symbols());
    for template in [Template::OmegaOutside, Template::OmegaInside] {
        let slots = template.slots();
        let mut blocks: [Vec<u32>; 5] = Default::default();
        let mut used = [false; 4];
        let mut next = 0;
        let mut block = 0;
        let mut ok = true;
        for &x in &s {
            match x {
                Fin(n) => blocks[block].push(n),
                _ => match (next..4).find(|&i| slots[i] == x) {
                    Some(i) => {
                        used[i] = true;
                        next = i + 1;
                        block = i + 1;
                    }
                    None => {
                        ok = false;
                        break;
                    }
                },
            }
        }
        if ok {
            let blocks = blocks.map(|b| Composition::new(b).expect("letters are positive"));
            return Ok(Some(TemplateMatch { template, blocks, used }));
        }
    }
    Ok(None)
}

/// Classification of a single word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordClassification {
    pub word: GeneralizedWord,
    pub verdict: Verdict,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    Forbidden(ForbiddenWitness),
    Template(TemplateMatch),
    PartitionBound { shape: PartitionShape, bound: usize },
    PartitionCrown { position: usize, crown_family: String },
    /// No forbidden age and no template: the unbounded symbols (merged) are listed. This
    /// happens for `1^w b 1^w w w` with `b` containing a letter at least 2, and its reverse.
    Unmatched { pattern: GeneralizedWord },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub words: Vec<WordClassification>,
    /// For partition downsets with a finite verdict: the largest `k + ell + |lambda|`.
    pub bound: Option<usize>,
    pub reasoning: String,
}

const UNION_REASONING: &str = "An age is not the union of two proper subdownsets, so a forbidden \
age inside a finite union of ages lies inside one of them; and a finite union of finite \
dimensional downsets has dimension at most the sum of their dimensions. The union is infinite \
dimensional exactly when some word is.";

fn classify_word(w: &GeneralizedWord) -> WordClassification {
    let (verdict, witness) = match has_forbidden_age(w) {
        Some(f) => (Verdict::Infinite, Witness::Forbidden(f)),
        None => match maximal_shape_match(w) {
            Ok(Some(m)) => (Verdict::Finite, Witness::Template(m)),
            _ => (Verdict::Finite, Witness::Unmatched { pattern: GeneralizedWord(unbounded_pattern(w)) }),
        },
    };
    WordClassification { word: w.clone(), verdict, witness }
}

fn combine(words: Vec<WordClassification>, bound: Option<usize>, reasoning: &str) -> ClassificationReport {
    let verdict = if words.iter().any(|c| c.verdict == Verdict::Infinite) {
        Verdict::Infinite
    } else {
        Verdict::Finite
    };
    let bound = if verdict == Verdict::Finite { bound } else { None };
    ClassificationReport { verdict, words, bound, reasoning: reasoning.to_string() }
}

/// Classifies the downset of compositions `Age(w_1) ∪ … ∪ Age(w_n)`.
pub fn classify_composition_downset(words: &[GeneralizedWord]) -> ClassificationReport {
    let words = crate::par::Exec::default_policy().map_slice(words, classify_word);
    combine(words, None, UNION_REASONING)
}

/// `Age(w^k lambda l^w)` containing the partitions of `Age(w)`.
///
/// Partitions are sorted, so only the multiset of symbols matters: `k` counts `w`, `ell` is
/// the largest `n` over `n^w`, and letters at most `ell` are absorbed into `ell^w`.
pub fn normalize_partition_word(w: &GeneralizedWord) -> Result<PartitionShape> {
    let s = w.symbols();
    if let Some(p) = s.iter().position(|&x| x == OmegaOmega) {
        return Err(Error::DisallowedSymbol(format!("w^w at position {} of {w}", p + 1)));
    }
    let k = s.iter().filter(|&&x| x == Omega).count();
    let ell = s.iter().filter_map(|&x| if let RepOmega(n) = x { Some(n) } else { None }).max().unwrap_or(0);
    let lambda = s.iter().filter_map(|&x| match x {
        Fin(n) if n > ell => Some(n),
        _ => None,
    });
    PartitionShape::new(k, Partition::from_multiset(lambda.collect()), ell)
}

/// Classifies the downset of partitions `Age(w_1) ∪ … ∪ Age(w_n)`.
pub fn classify_partition_downset(words: &[GeneralizedWord]) -> ClassificationReport {
    let mut bound = 0;
    let out = words
        .iter()
        .map(|w| match normalize_partition_word(w) {
            Ok(shape) => {
                bound = bound.max(shape.bound());
                let b = shape.bound();
                WordClassification {
                    word: w.clone(),
                    verdict: Verdict::Finite,
                    witness: Witness::PartitionBound { shape, bound: b },
                }
            }
            Err(_) => {
                let position = w.symbols().iter().position(|&x| x == OmegaOmega).unwrap_or(0) + 1;
                WordClassification {
                    word: w.clone(),
                    verdict: Verdict::Infinite,
                    witness: Witness::PartitionCrown { position, crown_family: "partition".into() },
                }
            }
        })
        .collect();
    combine(
        out,
        Some(bound),
        "Only w^w contains every partition. Any other word is contained in some \
         Age(w^k lambda l^w), which embeds into a product of k + |lambda| + l chains.",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{age_member, digits};

    fn w(s: &str) -> GeneralizedWord {
        s.parse().unwrap()
    }

    #[test]
    fn forbidden_examples() {
        assert_eq!(has_forbidden_age(&w("w w w")).unwrap().age, ForbiddenAge::ThreeOmegas);
        assert_eq!(has_forbidden_age(&w("2^w")).unwrap().rule, Rule::HeavySymbol);
        let f = has_forbidden_age(&w("1 3 1^w 5 w 2 1^w 4 w 1")).unwrap();
        assert_eq!(f.age, ForbiddenAge::OnesOmegaOnesOmega);
        assert_eq!(f.positions, vec![3, 5, 7, 9]);
        assert!(has_forbidden_age(&w("w w 1^w")).is_none());
    }

    #[test]
    fn forbidden_ages_detect_themselves() {
        for age in ForbiddenAge::ALL {
            assert_eq!(has_forbidden_age(&age.word()).map(|f| f.age), Some(age));
        }
    }

    #[test]
    fn template_examples() {
        let m = maximal_shape_match(&w("2 w 3 1^w 1^w w")).unwrap().unwrap();
        assert_eq!(m.template, Template::OmegaOutside);
        assert_eq!(m.blocks[0], digits("2"));
        assert_eq!(m.blocks[1], digits("3"));
        assert!(m.blocks[2..].iter().all(|b| b.is_empty()));
        let m = maximal_shape_match(&w("1^w 2 1^w")).unwrap().unwrap();
        assert_eq!(m.template, Template::OmegaOutside);
        assert_eq!(m.used, [false, true, true, false]);
        assert!(maximal_shape_match(&w("w 1^w w 1^w")).unwrap().is_none());
        assert!(maximal_shape_match(&w("w^w")).is_err());
    }

    #[test]
    fn ones_merge_across_single_ones() {
        assert_eq!(merge_ones(w("1^w 1 1 1^w 2").symbols()), w("1^w 2").0);
        assert_eq!(merge_ones(w("1 1^w 2 1^w").symbols()), w("1 1^w 2 1^w").0);
    }

    #[test]
    fn composition_unions() {
        let r = classify_composition_downset(&[w("w w"), w("2 1^w")]);
        assert_eq!(r.verdict, Verdict::Finite);
        let r = classify_composition_downset(&[w("w w 1^w"), w("1^w w 1^w w")]);
        assert_eq!(r.verdict, Verdict::Infinite);
        assert!(matches!(r.words[1].witness, Witness::Forbidden(_)));
        assert_eq!(classify_composition_downset(&[]).verdict, Verdict::Finite);
    }

    #[test]
    fn partition_examples() {
        let p = |v: &[u32]| Partition::new(v.to_vec()).unwrap();
        assert_eq!(normalize_partition_word(&w("w 3 1^w 2")).unwrap(), PartitionShape::new(1, p(&[3, 2]), 1).unwrap());
        assert_eq!(normalize_partition_word(&w("5")).unwrap(), PartitionShape::new(0, p(&[5]), 0).unwrap());
        assert_eq!(normalize_partition_word(&w("2^w 3")).unwrap(), PartitionShape::new(0, p(&[3]), 2).unwrap());
        assert!(normalize_partition_word(&w("w^w")).is_err());
        let r = classify_partition_downset(&[w("w w 3 2 1^w")]);
        assert_eq!((r.verdict, r.bound), (Verdict::Finite, Some(5)));
        assert_eq!(classify_partition_downset(&[w("w^w")]).verdict, Verdict::Infinite);
        assert_eq!(classify_partition_downset(&[]).bound, Some(0));
    }

    #[test]
    fn template_word_contains_the_word() {
        let t = crate::order::TruncationSpec::new(3, 2).unwrap();
        for s in ["2 w 3 1^w 1^w w", "1^w 2 1^w", "1 w 1^w 1 1^w 2 w", "1^w w 2 w 1^w 1"] {
            let word = w(s);
            let m = maximal_shape_match(&word).unwrap().unwrap();
            let big = m.word();
            for c in crate::order::age_truncation(&word, t) {
                assert!(age_member(&c, &big), "{c} not in {big}");
            }
        }
    }
}

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Composition;
use crate::error::{Error, Result};

/// One letter of a generalized word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum WordSymbol {
    /// A single part of size at most `n`.
    Fin(u32),
    /// Infinitely many parts each at most `n`, written `n^w`.
    RepOmega(u32),
    /// One part of unbounded size, written `w`.
    Omega,
    /// Infinitely many unbounded parts, written `w^w`.
    OmegaOmega,
}

impl WordSymbol {
    pub fn is_bounded(self) -> bool {
        matches!(self, WordSymbol::Fin(_))
    }

    /// Can this symbol host a part equal to 2?
    pub fn hosts_two(self) -> bool {
        match self {
            WordSymbol::Fin(n) | WordSymbol::RepOmega(n) => n >= 2,
            WordSymbol::Omega | WordSymbol::OmegaOmega => true,
        }
    }
}

impl fmt::Display for WordSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordSymbol::Fin(n) => write!(f, "{n}"),
            WordSymbol::RepOmega(n) => write!(f, "{n}^w"),
            WordSymbol::Omega => f.write_str("w"),
            WordSymbol::OmegaOmega => f.write_str("w^w"),
        }
    }
}

/// A word over `P ∪ {n^w} ∪ {w, w^w}`, standing for its age.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct GeneralizedWord(pub Vec<WordSymbol>);

impl GeneralizedWord {
    pub fn new(symbols: Vec<WordSymbol>) -> Result<Self> {
        for s in &symbols {
            if let WordSymbol::Fin(0) | WordSymbol::RepOmega(0) = s {
                return Err(Error::NonPositivePart(0));
            }
        }
        Ok(GeneralizedWord(symbols))
    }

    pub fn symbols(&self) -> &[WordSymbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn from_composition(c: &Composition) -> Self {
        GeneralizedWord(c.parts().iter().map(|&p| WordSymbol::Fin(p)).collect())
    }

    pub fn reversed(&self) -> Self {
        GeneralizedWord(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &GeneralizedWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GeneralizedWord(v)
    }

    /// Largest finite entry appearing in `Fin` or `RepOmega` symbols (0 if none).
    pub fn max_finite_entry(&self) -> u32 {
        self.0
            .iter()
            .map(|s| match s {
                WordSymbol::Fin(n) | WordSymbol::RepOmega(n) => *n,
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// Replaces `w` by `B`, `n^w` by `n` repeated `R` times and `w^w` by `B` repeated `R` times.
    pub fn truncate(&self, t: TruncationSpec) -> Composition {
        let mut parts = Vec::new();
        for s in &self.0 {
            match *s {
                WordSymbol::Fin(n) => parts.push(n),
                WordSymbol::Omega => parts.push(t.omega_cap),
                WordSymbol::RepOmega(n) => parts.extend(std::iter::repeat_n(n, t.repeat_cap)),
                WordSymbol::OmegaOmega => {
                    parts.extend(std::iter::repeat_n(t.omega_cap, t.repeat_cap))
                }
            }
        }
        Composition::from_parts_unchecked(parts)
    }
}

impl fmt::Display for GeneralizedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(WordSymbol::to_string).collect();
        f.write_str(&s.join(" "))
    }
}

impl From<GeneralizedWord> for String {
    fn from(w: GeneralizedWord) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for GeneralizedWord {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for GeneralizedWord {
    type Err = Error;

    /// Tokens `INT`, `INT^w`, `w`, `w^w` separated by whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let err = |i: usize, m: String| Error::Parse { input: s.to_string(), position: i, message: m };
        let t = s.trim();
        if t == "e" || t == "ε" {
            return Ok(GeneralizedWord::default());
        }
        let mut out = Vec::new();
        for (i, tok) in t.split_whitespace().enumerate() {
            let sym = match tok {
                "w" | "ω" => WordSymbol::Omega,
                "w^w" | "ω^ω" => WordSymbol::OmegaOmega,
                _ => {
                    let (num, rep) = match tok.strip_suffix("^w").or_else(|| tok.strip_suffix("^ω")) {
                        Some(n) => (n, true),
                        None => (tok, false),
                    };
                    let n: u32 = num
                        .parse()
                        .map_err(|_| err(i, format!("unrecognized symbol {tok:?}")))?;
                    if n == 0 {
                        return Err(err(i, "entries must be positive".into()));
                    }
                    if rep {
                        WordSymbol::RepOmega(n)
                    } else {
                        WordSymbol::Fin(n)
                    }
                }
            };
            out.push(sym);
        }
        Ok(GeneralizedWord(out))
    }
}

/// Finite window into an infinite age.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct TruncationSpec {
    /// `B`: value substituted for `w` and for each part of `w^w`.
    pub omega_cap: u32,
    /// `R`: number of columns substituted for each `n^w` and for `w^w`.
    pub repeat_cap: usize,
}

impl TruncationSpec {
    pub fn new(omega_cap: u32, repeat_cap: usize) -> Result<Self> {
        if omega_cap == 0 {
            return Err(Error::Precondition("omega cap B must be at least 1".into()));
        }
        Ok(TruncationSpec { omega_cap, repeat_cap })
    }
}

/// Greedy earliest-match embedding of `u` into `w`, returning the 0-based column of each part.
pub fn subword_embedding(u: &Composition, w: &Composition) -> Option<Vec<usize>> {
    let mut idx = Vec::with_capacity(u.len());
    let mut col = 0;
    let wp = w.parts();
    for &p in u.parts() {
        while col < wp.len() && wp[col] < p {
            col += 1;
        }
        if col == wp.len() {
            return None;
        }
        idx.push(col);
        col += 1;
    }
    Some(idx)
}

/// Generalized subword order: `u ≤ w`.
pub fn subword_le(u: &Composition, w: &Composition) -> bool {
    let wp = w.parts();
    let mut col = 0;
    for &p in u.parts() {
        while col < wp.len() && wp[col] < p {
            col += 1;
        }
        if col == wp.len() {
            return false;
        }
        col += 1;
    }
    true
}

/// Does `c` lie in `Age(w)`? Each symbol greedily absorbs as many parts as it allows.
pub fn age_member(c: &Composition, w: &GeneralizedWord) -> bool {
    let parts = c.parts();
    let mut j = 0;
    for sym in w.symbols() {
        if j == parts.len() {
            break;
        }
        match *sym {
            WordSymbol::Fin(n) => {
                if parts[j] <= n {
                    j += 1;
                }
            }
            WordSymbol::Omega => j += 1,
            WordSymbol::RepOmega(n) => {
                while j < parts.len() && parts[j] <= n {
                    j += 1;
                }
            }
            WordSymbol::OmegaOmega => j = parts.len(),
        }
    }
    j == parts.len()
}

/// All members of the age of the truncated word, in shortlex order.
pub fn age_truncation(w: &GeneralizedWord, t: TruncationSpec) -> Vec<Composition> {
    finite_age(&w.truncate(t))
}

/// Every composition embedding into the finite word `host`, in shortlex order.
///
/// Membership is prefix closed, so a depth-first extension search visits each member once.
pub fn finite_age(host: &Composition) -> Vec<Composition> {
    let top = host.max_part();
    let mut out = BTreeSet::new();
    let mut stack = vec![Vec::<u32>::new()];
    while let Some(c) = stack.pop() {
        for p in 1..=top {
            let mut d = c.clone();
            d.push(p);
            let dc = Composition::from_parts_unchecked(d.clone());
            if subword_le(&dc, host) {
                stack.push(d);
            }
        }
        out.insert(Composition::from_parts_unchecked(c));
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::digits;

    fn word(s: &str) -> GeneralizedWord {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example_3413() {
        let u = digits("3413");
        let w = digits("141421143");
        assert!(subword_le(&u, &w));
        let idx = subword_embedding(&u, &w).unwrap();
        assert_eq!(idx, vec![1, 3, 4, 7]);
        for (k, &i) in idx.iter().enumerate() {
            assert!(u.parts()[k] <= w.parts()[i]);
        }
    }

    #[test]
    fn subword_basic() {
        assert!(subword_le(&Composition::empty(), &digits("5")));
        assert!(!subword_le(&digits("12"), &digits("21")));
        assert!(!subword_le(&digits("21"), &digits("12")));
    }

    #[test]
    fn skyline_membership() {
        let w = word("1^w w 2 1 3 1^w");
        assert!(age_member(&digits("2131"), &w));
        assert!(!age_member(&digits("3413"), &w));
        assert!(age_member(&Composition::empty(), &w));
        assert!(age_member(&Composition::empty(), &GeneralizedWord::default()));
        assert!(!age_member(&digits("1"), &GeneralizedWord::default()));
    }

    #[test]
    fn truncation_examples() {
        let t = TruncationSpec::new(2, 0).unwrap();
        let got = age_truncation(&word("w w"), t);
        let want: Vec<Composition> =
            ["e", "1", "2", "11", "12", "21", "22"].iter().map(|s| digits(s)).collect();
        assert_eq!(got, want);
        let t = TruncationSpec::new(1, 3).unwrap();
        assert_eq!(age_truncation(&word("1^w"), t).len(), 4);
        for b in 1..6u32 {
            let t = TruncationSpec::new(b, 0).unwrap();
            assert_eq!(age_truncation(&word("w w"), t).len() as u32, 1 + b + b * b);
        }
    }

    #[test]
    fn parse_word_tokens() {
        let w = word("1^w w 2 w^w");
        assert_eq!(
            w.symbols(),
            &[WordSymbol::RepOmega(1), WordSymbol::Omega, WordSymbol::Fin(2), WordSymbol::OmegaOmega]
        );
        assert_eq!(w.to_string(), "1^w w 2 w^w");
        assert!("1 x".parse::<GeneralizedWord>().is_err());
        assert!("0^w".parse::<GeneralizedWord>().is_err());
    }
}

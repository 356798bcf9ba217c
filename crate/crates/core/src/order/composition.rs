use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite sequence of positive integers. The empty composition is ε.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if let Some(&p) = parts.iter().find(|&&p| p == 0) {
            return Err(Error::NonPositivePart(p));
        }
        Ok(Composition(parts))
    }

    /// Caller guarantees every part is positive.
    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        Composition(parts)
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn ones(n: usize) -> Self {
        Composition(vec![1; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_part(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn reversed(&self) -> Self {
        Composition(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Composition) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Composition(v)
    }

    pub fn prepend(&self, part: u32) -> Self {
        assert!(part > 0);
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(part);
        v.extend_from_slice(&self.0);
        Composition(v)
    }

    /// Parts `from..to` (0-based, half open).
    pub fn window(&self, from: usize, to: usize) -> Self {
        Composition(self.0[from..to].to_vec())
    }

    /// Largest and second-largest part, zero when missing.
    pub fn two_largest(&self) -> (u32, u32) {
        let mut best = (0, 0);
        for &p in &self.0 {
            if p > best.0 {
                best = (p, best.0);
            } else if p > best.1 {
                best.1 = p;
            }
        }
        best
    }

    /// Shortlex: by length, then lexicographically.
    pub fn shortlex_cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }

    /// Shortcolex: by length, then lexicographically reading right to left.
    pub fn shortcolex_cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }

    /// Every composition with parts at most `max_part` and part-sum at most `max_sum`, shortlex order.
    pub fn all_up_to_sum(max_sum: u32) -> Vec<Composition> {
        let mut out = vec![Composition::empty()];
        let mut frontier = vec![(Composition::empty(), 0u32)];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (c, s) in &frontier {
                for p in 1..=(max_sum - s) {
                    let mut v = c.0.clone();
                    v.push(p);
                    next.push((Composition(v), s + p));
                }
            }
            out.extend(next.iter().map(|(c, _)| c.clone()));
            frontier = next;
        }
        out.sort_by(Composition::shortlex_cmp);
        out
    }
}

impl From<Composition> for Vec<u32> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

impl TryFrom<Vec<u32>> for Composition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Composition::new(v)
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The total order on compositions is shortlex.
impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shortlex_cmp(other)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&s.join(" "))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        // Compact form when every part is a single digit, as in "3413".
        if self.0.iter().all(|&p| p < 10) {
            for p in &self.0 {
                write!(f, "{p}")?;
            }
            Ok(())
        } else {
            write!(f, "[{self}]")
        }
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Whitespace-separated positive integers; empty input, `e` or `ε` is the empty composition.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "e" || t == "ε" {
            return Ok(Composition::empty());
        }
        let mut parts = Vec::new();
        for (i, tok) in t.split_whitespace().enumerate() {
            let v: u32 = tok.parse().map_err(|_| Error::Parse {
                input: s.to_string(),
                position: i,
                message: format!("expected a positive integer, found {tok:?}"),
            })?;
            if v == 0 {
                return Err(Error::Parse {
                    input: s.to_string(),
                    position: i,
                    message: "parts must be positive".into(),
                });
            }
            parts.push(v);
        }
        Ok(Composition(parts))
    }
}

/// Builds a composition from digits, e.g. `comp!(3, 4, 1, 3)`.
#[macro_export]
macro_rules! comp {
    () => { $crate::order::Composition::empty() };
    ($($p:expr),+ $(,)?) => { $crate::order::Composition::new(vec![$($p),+]).unwrap() };
}

/// Parses a digit string such as `"3413"` (parts 1..=9 only). Test and doc helper.
pub fn digits(s: &str) -> Composition {
    if s == "e" || s.is_empty() {
        return Composition::empty();
    }
    Composition::new(s.chars().map(|c| c.to_digit(10).expect("digit")).collect()).unwrap()
}

/// Splits `d = 1^i · core · 1^j` with `core` empty or starting and ending with a part at least 2.
/// A composition of ones alone yields `(len, ε, 0)`.
pub fn strip_core(d: &Composition) -> (usize, Composition, usize) {
    let p = d.parts();
    match p.iter().position(|&x| x >= 2) {
        None => (p.len(), Composition::empty(), 0),
        Some(first) => {
            let last = p.iter().rposition(|&x| x >= 2).unwrap();
            (first, Composition(p[first..=last].to_vec()), p.len() - last - 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let c: Composition = "3 4 1 3".parse().unwrap();
        assert_eq!(c, digits("3413"));
        assert_eq!(c.to_string(), "3 4 1 3");
        assert_eq!("".parse::<Composition>().unwrap(), Composition::empty());
        assert!("3 0".parse::<Composition>().is_err());
        assert!("3 x".parse::<Composition>().is_err());
    }

    #[test]
    fn strip_core_examples() {
        assert_eq!(strip_core(&digits("112131")), (2, digits("213"), 1));
        assert_eq!(strip_core(&digits("1111")), (4, Composition::empty(), 0));
        assert_eq!(strip_core(&digits("2")), (0, digits("2"), 0));
        assert_eq!(strip_core(&Composition::empty()), (0, Composition::empty(), 0));
    }

    #[test]
    fn shortlex_vs_shortcolex() {
        assert_eq!(digits("3").shortlex_cmp(&digits("13")), Ordering::Less);
        assert_eq!(digits("13").shortlex_cmp(&digits("31")), Ordering::Less);
        assert_eq!(digits("13").shortcolex_cmp(&digits("31")), Ordering::Greater);
    }

    #[test]
    fn two_largest_key() {
        assert_eq!(digits("22").two_largest(), (2, 2));
        assert_eq!(digits("3").two_largest(), (3, 0));
        assert_eq!(Composition::empty().two_largest(), (0, 0));
    }

    #[test]
    fn enumeration_counts() {
        // compositions of n number 2^(n-1); sum over n <= 4 plus ε is 16
        assert_eq!(Composition::all_up_to_sum(4).len(), 16);
    }
}

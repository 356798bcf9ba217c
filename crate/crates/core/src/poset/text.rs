//! Line-oriented text format for posets and refinement families.
//!
//! ```text
//! poset 3
//! 1
//! 2
//! 1 1
//! 0 < 2
//! 1 < 2
//! end
//! refinement shortlex
//! domain 0 1 2
//! 0 < 1
//! 1 < 2
//! end
//! ```
//!
//! Labels come one per line (an empty label is written `e`); relations are cover pairs by
//! index and are closed on reading. Blank lines and lines starting with `#` are ignored.

use std::fmt::{Display, Write};
use std::str::FromStr;

use super::{FinitePoset, Label, Refinement};
use crate::bits::{BitMatrix, BitSet};
use crate::error::{Error, Result};

fn cover_pairs(m: &BitMatrix) -> Vec<(usize, usize)> {
    let t = m.transpose();
    let mut out = Vec::new();
    for i in 0..m.size() {
        for j in m.row(i).iter() {
            if !m.row(i).intersects(t.row(j)) {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn write_poset<L: Label + Display>(p: &FinitePoset<L>) -> String {
    let mut s = format!("poset {}\n", p.len());
    for l in p.labels() {
        let t = l.to_string();
        s.push_str(if t.is_empty() { "e" } else { &t });
        s.push('\n');
    }
    for (i, j) in p.covers() {
        let _ = writeln!(s, "{i} < {j}");
    }
    s.push_str("end\n");
    s
}

pub fn write_family(family: &[Refinement]) -> String {
    let mut s = String::new();
    for r in family {
        let name = if r.name.is_empty() { "unnamed" } else { r.name.as_str() };
        let _ = writeln!(s, "refinement {name}");
        let dom: Vec<String> = r.domain().iter().map(|i| i.to_string()).collect();
        let _ = writeln!(s, "domain {}", dom.join(" "));
        for (i, j) in cover_pairs(r.relation()) {
            let _ = writeln!(s, "{i} < {j}");
        }
        s.push_str("end\n");
    }
    s
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    src: &'a str,
}

impl<'a> Lines<'a> {
    fn new(src: &'a str) -> Self {
        Lines { inner: src.lines().enumerate(), src }
    }

    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        for (k, l) in self.inner.by_ref() {
            let t = l.trim();
            if !t.is_empty() && !t.starts_with('#') {
                return Some((k, t));
            }
        }
        None
    }

    fn err(&self, line: usize, message: impl Into<String>) -> Error {
        Error::Parse { input: self.src.lines().nth(line).unwrap_or("").to_string(), position: line, message: message.into() }
    }
}

fn parse_pair(lines: &Lines<'_>, k: usize, t: &str, n: usize) -> Result<(usize, usize)> {
    let (a, b) = t.split_once('<').ok_or_else(|| lines.err(k, "expected `i < j`"))?;
    let i: usize = a.trim().parse().map_err(|_| lines.err(k, "bad index"))?;
    let j: usize = b.trim().parse().map_err(|_| lines.err(k, "bad index"))?;
    if i >= n || j >= n {
        return Err(lines.err(k, format!("index out of range for {n} elements")));
    }
    Ok((i, j))
}

/// Parses a poset optionally followed by a refinement family.
pub fn parse<L>(src: &str) -> Result<(FinitePoset<L>, Vec<Refinement>)>
where
    L: Label + FromStr,
    <L as FromStr>::Err: Display,
{
    let mut lines = Lines::new(src);
    let (k, head) = lines.next_line().ok_or_else(|| lines.err(0, "empty input"))?;
    let n: usize = head
        .strip_prefix("poset")
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| lines.err(k, "expected `poset N`"))?;
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let (k, t) = lines.next_line().ok_or_else(|| lines.err(k, "missing element labels"))?;
        labels.push(t.parse::<L>().map_err(|e| lines.err(k, e.to_string()))?);
    }
    let mut pairs = Vec::new();
    loop {
        let (k, t) = lines.next_line().ok_or_else(|| lines.err(k, "missing `end`"))?;
        if t == "end" {
            break;
        }
        pairs.push(parse_pair(&lines, k, t, n)?);
    }
    let poset = FinitePoset::from_relations(labels, &pairs)?;
    let family = parse_family_lines(&mut lines, &poset)?;
    Ok((poset, family))
}

/// Parses a refinement family against a known host.
pub fn parse_family<L: Label>(src: &str, host: &FinitePoset<L>) -> Result<Vec<Refinement>> {
    parse_family_lines(&mut Lines::new(src), host)
}

fn parse_family_lines<L: Label>(lines: &mut Lines<'_>, host: &FinitePoset<L>) -> Result<Vec<Refinement>> {
    let n = host.len();
    let mut out = Vec::new();
    while let Some((k, t)) = lines.next_line() {
        let name = t.strip_prefix("refinement").ok_or_else(|| lines.err(k, "expected `refinement NAME`"))?;
        let (k2, d) = lines.next_line().ok_or_else(|| lines.err(k, "missing domain line"))?;
        let d = d.strip_prefix("domain").ok_or_else(|| lines.err(k2, "expected `domain …`"))?;
        let mut domain = BitSet::new(n);
        for tok in d.split_whitespace() {
            let i: usize = tok.parse().map_err(|_| lines.err(k2, "bad index"))?;
            if i >= n {
                return Err(lines.err(k2, "index out of range"));
            }
            domain.insert(i);
        }
        let mut pairs = Vec::new();
        loop {
            let (k3, t) = lines.next_line().ok_or_else(|| lines.err(k2, "missing `end`"))?;
            if t == "end" {
                break;
            }
            pairs.push(parse_pair(lines, k3, t, n)?);
        }
        let mut m = BitMatrix::new(n);
        for (i, j) in pairs {
            m.set(i, j);
        }
        out.push(Refinement::from_raw(name.trim().to_string(), domain, m));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{digits, Composition};
    use crate::poset::composition_poset;

    #[test]
    fn round_trip() {
        let p = composition_poset(["e", "1", "2", "11"].iter().map(|s| digits(s)).collect());
        let r = Refinement::linear(&p, &[0, 1, 2, 3]).unwrap().named("shortlex");
        let text = write_poset(&p) + &write_family(std::slice::from_ref(&r));
        let (q, fam) = parse::<Composition>(&text).unwrap();
        assert_eq!(q, p);
        assert_eq!(fam, vec![r]);
    }

    #[test]
    fn reports_line_of_error() {
        let err = parse::<Composition>("poset 1\n1\n0 < 5\nend\n").unwrap_err();
        assert!(matches!(err, Error::Parse { position: 2, .. }));
    }
}

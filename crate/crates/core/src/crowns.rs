//! Crowns: the posets `a_1..a_n, b_1..b_n` with `a_i < b_j` exactly when `i ≠ j`, and the
//! explicit crown families found inside infinite dimensional ages.

use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::{
    age_member, partition_le, subword_le, young_join_all, Composition, GeneralizedWord, Partition,
    WordSymbol,
};
use crate::poset::{FinitePoset, Label};

/// Elements that can be compared and tested against a host word.
pub trait AgeElement: Label {
    fn le(&self, other: &Self) -> bool;
    fn in_age(&self, host: &GeneralizedWord) -> bool;
}

impl AgeElement for Composition {
    fn le(&self, other: &Self) -> bool {
        subword_le(self, other)
    }
    fn in_age(&self, host: &GeneralizedWord) -> bool {
        age_member(self, host)
    }
}

impl AgeElement for Partition {
    fn le(&self, other: &Self) -> bool {
        partition_le(self, other)
    }
    fn in_age(&self, host: &GeneralizedWord) -> bool {
        age_member(&self.to_composition(), host)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrownFamily<T> {
    pub family: String,
    pub n: usize,
    pub lower: Vec<T>,
    pub upper: Vec<T>,
    pub host: GeneralizedWord,
    pub claimed_dimension: usize,
}

impl<T: AgeElement> CrownFamily<T> {
    /// The crown as a poset: lower elements first, then upper.
    pub fn to_poset(&self) -> Result<FinitePoset<T>> {
        let elems: Vec<T> = self.lower.iter().chain(&self.upper).cloned().collect();
        FinitePoset::from_le(elems, |a, b| a.le(b))
    }
}

impl CrownFamily<Composition> {
    /// The family obtained by reversing every composition and the host word.
    pub fn mirrored(&self) -> Self {
        CrownFamily {
            family: format!("{}-mirror", self.family),
            n: self.n,
            lower: self.lower.iter().map(Composition::reversed).collect(),
            upper: self.upper.iter().map(Composition::reversed).collect(),
            host: self.host.reversed(),
            claimed_dimension: self.claimed_dimension,
        }
    }
}

/// Outcome of [`verify_crown`], with the first defect found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrownCheck {
    pub holds: bool,
    pub defect: Option<String>,
}

pub fn verify_crown<T: AgeElement>(f: &CrownFamily<T>) -> CrownCheck {
    let fail = |m: String| CrownCheck { holds: false, defect: Some(m) };
    let (a, b) = (&f.lower, &f.upper);
    if a.len() != b.len() || a.len() != f.claimed_dimension {
        return fail(format!(
            "sizes {} and {} do not match claimed dimension {}",
            a.len(),
            b.len(),
            f.claimed_dimension
        ));
    }
    for x in a.iter().chain(b) {
        if !x.in_age(&f.host) {
            return fail(format!("{x:?} is not in the age of {}", f.host));
        }
    }
    let m = a.len();
    for i in 0..m {
        for j in 0..m {
            if (i != j) != a[i].le(&b[j]) {
                let rel = if i != j { "should lie below" } else { "should not lie below" };
                return fail(format!("a{} = {:?} {rel} b{} = {:?}", i + 1, a[i], j + 1, b[j]));
            }
            if b[j].le(&a[i]) {
                return fail(format!("b{} = {:?} lies below a{} = {:?}", j + 1, b[j], i + 1, a[i]));
            }
            if i != j && a[i].le(&a[j]) {
                return fail(format!("a{} and a{} are comparable", i + 1, j + 1));
            }
            if i != j && b[i].le(&b[j]) {
                return fail(format!("b{} and b{} are comparable", i + 1, j + 1));
            }
        }
    }
    CrownCheck { holds: true, defect: None }
}

/// The crown on `2n` abstract elements `a1..an, b1..bn`.
pub fn abstract_crown(n: usize) -> Result<FinitePoset<String>> {
    if n < 3 {
        return Err(Error::Precondition(format!("crown needs n ≥ 3, got {n}")));
    }
    let labels: Vec<String> =
        (1..=n).map(|i| format!("a{i}")).chain((1..=n).map(|i| format!("b{i}"))).collect();
    let rel: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, n + j))).collect();
    FinitePoset::from_relations(labels, &rel)
}

fn need(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::Precondition(format!("{what} needs n ≥ {min}, got {n}")));
    }
    Ok(())
}

fn word(s: &str) -> GeneralizedWord {
    s.parse().expect("static host word parses")
}

fn comp(parts: Vec<u32>) -> Composition {
    Composition::new(parts).expect("crown parts are positive")
}

fn ones(k: usize) -> Vec<u32> {
    vec![1; k]
}

/// `a_i` has `i` parts equal to `n − i` (`i = 1..n−1`); `b_i` joins every `a_j` with `j ≠ i`.
pub fn partition_crown(n: usize) -> Result<CrownFamily<Partition>> {
    need(n, 4, "partition crown")?;
    let lower: Vec<Partition> =
        (1..n).map(|i| Partition::new(vec![(n - i) as u32; i]).expect("constant rows")).collect();
    let upper: Vec<Partition> = (0..lower.len())
        .map(|i| young_join_all(lower.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p)))
        .collect();
    Ok(CrownFamily {
        family: "partition".into(),
        n,
        lower,
        upper,
        host: GeneralizedWord(vec![WordSymbol::OmegaOmega]),
        claimed_dimension: n - 1,
    })
}

/// Inside `Age(w w w)`: `a_i = (i+1)(n−i−1)`, `b_i = i n (n−2−i)` for `i = 1..n−3`.
pub fn crown_omega3(n: usize) -> Result<CrownFamily<Composition>> {
    need(n, 5, "omega3 crown")?;
    let n32 = n as u32;
    let idx = 1..=(n32 - 3);
    Ok(CrownFamily {
        family: "omega3".into(),
        n,
        lower: idx.clone().map(|i| comp(vec![i + 1, n32 - i - 1])).collect(),
        upper: idx.map(|i| comp(vec![i, n32, n32 - 2 - i])).collect(),
        host: word("w w w"),
        claimed_dimension: n - 3,
    })
}

/// Inside `Age(1^w 2 1^w 2 1^w)`: `a_i = 1^{i+1} 2 1^{n−i−1}`, `b_i = 1^i 2 1^n 2 1^{n−2−i}`.
pub fn crown_ones2(n: usize) -> Result<CrownFamily<Composition>> {
    need(n, 5, "ones2 crown")?;
    let lower = (1..=n - 3).map(|i| comp([ones(i + 1), vec![2], ones(n - i - 1)].concat())).collect();
    let upper = (1..=n - 3)
        .map(|i| comp([ones(i), vec![2], ones(n), vec![2], ones(n - 2 - i)].concat()))
        .collect();
    Ok(CrownFamily {
        family: "ones2".into(),
        n,
        lower,
        upper,
        host: word("1^w 2 1^w 2 1^w"),
        claimed_dimension: n - 3,
    })
}

/// Inside `Age(w 1^w w 1^w)`: `a_i = (i+1) 1^{n−i+1}`, `b_i = i 1^{i−1} n 1^{n−i}`, `i = 1..n−1`.
pub fn crown_w1w(n: usize) -> Result<CrownFamily<Composition>> {
    need(n, 3, "w1w crown")?;
    let n32 = n as u32;
    let lower = (1..n).map(|i| comp([vec![i as u32 + 1], ones(n - i + 1)].concat())).collect();
    let upper =
        (1..n).map(|i| comp([vec![i as u32], ones(i - 1), vec![n32], ones(n - i)].concat())).collect();
    Ok(CrownFamily {
        family: "w1w".into(),
        n,
        lower,
        upper,
        host: word("w 1^w w 1^w"),
        claimed_dimension: n - 1,
    })
}

/// Inside `Age(2^w)`: `a_i = 1^{i−1} 2 1^{n−i}`, `b_i = 2^{i−1} 1 2^{n−i}`, `i = 1..n`.
pub fn crown_2w(n: usize) -> Result<CrownFamily<Composition>> {
    need(n, 3, "2w crown")?;
    let lower = (1..=n).map(|i| comp([ones(i - 1), vec![2], ones(n - i)].concat())).collect();
    let upper = (1..=n).map(|i| comp([vec![2; i - 1], vec![1], vec![2; n - i]].concat())).collect();
    Ok(CrownFamily { family: "2w".into(), n, lower, upper, host: word("2^w"), claimed_dimension: n })
}

/// Composition crown families by name: `omega3`, `ones2`, `w1w`, `1w1w` (mirror of `w1w`), `2w`.
pub fn composition_family(name: &str, n: usize) -> Result<CrownFamily<Composition>> {
    match name {
        "omega3" => crown_omega3(n),
        "ones2" => crown_ones2(n),
        "w1w" => crown_w1w(n),
        "1w1w" => Ok(crown_w1w(n)?.mirrored()),
        "2w" => crown_2w(n),
        _ => Err(Error::UnknownLabel(name.to_string())),
    }
}

/// Smallest `n` accepted by a named family (`partition` included).
pub fn min_parameter(name: &str) -> Option<usize> {
    match name {
        "partition" => Some(4),
        "omega3" | "ones2" => Some(5),
        "w1w" | "1w1w" | "2w" => Some(3),
        _ => None,
    }
}

/// Parameter giving a crown of dimension `d` in the named family.
pub fn parameter_for_dimension(name: &str, d: usize) -> Option<usize> {
    match name {
        "partition" | "w1w" | "1w1w" => Some(d + 1),
        "omega3" | "ones2" => Some(d + 3),
        "2w" => Some(d),
        _ => None,
    }
}

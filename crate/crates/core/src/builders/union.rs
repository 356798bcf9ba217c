use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::poset::{ordinal_sum, FinitePoset, Label, Refinement};

/// Combines realizers of two downsets `c` and `d` of `host` into one of `c ∪ d`.
///
/// Each member of the first family gets `d \ c` stacked on top, each member of the second gets
/// `c \ d`: `m + n` members in all. Nothing of `d \ c` lies below `c` because `c` is a downset.
pub fn union_realizer<L: Label>(
    host: &FinitePoset<L>,
    c: &BitSet,
    fam_c: &[Refinement],
    d: &BitSet,
    fam_d: &[Refinement],
) -> Result<Vec<Refinement>> {
    for (set, what) in [(c, "first"), (d, "second")] {
        for x in set.iter() {
            if let Some(y) = host.down(x).iter().find(|&y| !set.contains(y)) {
                return Err(Error::Precondition(format!(
                    "{what} set is not a downset: element {y} lies below {x}"
                )));
            }
        }
    }
    let mut d_only = d.clone();
    d_only.difference_with(c);
    let mut c_only = c.clone();
    c_only.difference_with(d);
    let mut out = Vec::with_capacity(fam_c.len() + fam_d.len());
    for (fam, set, top, side) in [(fam_c, c, &d_only, "left"), (fam_d, d, &c_only, "right")] {
        for r in fam {
            let lower = r.restrict(set);
            out.push(ordinal_sum(host, &lower, top)?.named(format!("union-{side}/{}", r.name)));
        }
    }
    Ok(out)
}

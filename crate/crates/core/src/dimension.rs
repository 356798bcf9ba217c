//! Exact Dushnik–Miller dimension by coloring critical pairs.
//!
//! A family of `d` linear extensions realizes `P` iff every critical pair `(a, b)` is reversed
//! (`b` placed below `a`) by one of them, and a set of pairs can be reversed by a single
//! extension iff `P` plus the reversed pairs stays acyclic. The solver searches for a
//! `d`-coloring of the critical pairs with acyclic color classes.

use serde::{Deserialize, Serialize};

use crate::bits::{BitMatrix, BitSet};
use crate::par::Exec;
use crate::poset::{
    extend_to_linear, verify_realizer_with, FinitePoset, Label, LinearExtension, Refinement,
};

/// Ordered incomparable pairs `(a, b)` with `D(a) ⊆ D(b)` and `U(b) ⊆ U(a)`.
pub fn critical_pairs<L: Label>(p: &FinitePoset<L>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..p.len() {
        for b in p.incomparable_to(a).iter() {
            if p.down(a).is_subset(p.down(b)) && p.up(b).is_subset(p.up(a)) {
                out.push((a, b));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DimensionValue {
    Exact { d: usize },
    /// No realizer of size at most `d_max` exists.
    Exceeds { d_max: usize },
    /// The node budget ran out while deciding whether `lower` extensions suffice.
    Inconclusive { lower: usize, upper: Option<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionResult {
    pub value: DimensionValue,
    /// A verified realizer of size `d` when the value is exact (or of the best upper bound).
    pub witness: Option<Vec<LinearExtension>>,
    /// Set when every size below the reported one was refuted by exhaustive search.
    pub exhausted_below: bool,
    pub critical_pairs: usize,
}

impl DimensionResult {
    pub fn exact(&self) -> Option<usize> {
        match self.value {
            DimensionValue::Exact { d } => Some(d),
            _ => None,
        }
    }

    /// Best proven lower bound.
    pub fn lower_bound(&self) -> usize {
        match self.value {
            DimensionValue::Exact { d } => d,
            DimensionValue::Exceeds { d_max } => d_max + 1,
            DimensionValue::Inconclusive { lower, .. } => lower,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolverConfig {
    /// Search nodes allowed per branch before giving up with an inconclusive answer.
    pub node_limit: u64,
    pub exec: Exec,
    /// Number of subtrees to cut the search into for parallel exploration.
    pub split_target: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { node_limit: 2_000_000, exec: Exec::default_policy(), split_target: 64 }
    }
}

/// Answer to "is the dimension at most d?".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes(Vec<LinearExtension>),
    No,
    Unknown,
}

pub fn exact_dimension<L: Label>(p: &FinitePoset<L>, d_max: usize) -> DimensionResult {
    exact_dimension_with(p, d_max, &SolverConfig::default())
}

/// Least `d ≤ d_max` admitting a realizer of size `d`.
pub fn exact_dimension_with<L: Label>(
    p: &FinitePoset<L>,
    d_max: usize,
    cfg: &SolverConfig,
) -> DimensionResult {
    assert!(d_max >= 1, "d_max must be positive");
    let inst = Instance::new(p);
    let cp = inst.pairs.len();
    if cp == 0 {
        let w = vec![extend_to_linear(p, &Refinement::empty(p)).expect("poset is acyclic")];
        return DimensionResult {
            value: DimensionValue::Exact { d: 1 },
            witness: Some(w),
            exhausted_below: true,
            critical_pairs: 0,
        };
    }
    let greedy = inst.greedy();
    let upper = greedy.iter().max().map_or(1, |&c| c + 1);
    let mut d = 2;
    while d < upper && d <= d_max {
        match inst.search(d, cfg) {
            Outcome::Found(colors) => {
                return DimensionResult {
                    value: DimensionValue::Exact { d },
                    witness: Some(inst.witness(p, &colors, d)),
                    exhausted_below: true,
                    critical_pairs: cp,
                };
            }
            Outcome::Exhausted => d += 1,
            Outcome::Budget => {
                let witness = (upper <= d_max).then(|| inst.witness(p, &greedy, upper));
                return DimensionResult {
                    value: DimensionValue::Inconclusive { lower: d, upper: Some(upper) },
                    witness,
                    exhausted_below: false,
                    critical_pairs: cp,
                };
            }
        }
    }
    if upper <= d_max {
        DimensionResult {
            value: DimensionValue::Exact { d: upper },
            witness: Some(inst.witness(p, &greedy, upper)),
            exhausted_below: true,
            critical_pairs: cp,
        }
    } else {
        DimensionResult {
            value: DimensionValue::Exceeds { d_max },
            witness: None,
            exhausted_below: true,
            critical_pairs: cp,
        }
    }
}

/// A verified `d`-element realizer if one exists; `None` if none exists or the budget ran out.
pub fn dimension_at_most<L: Label>(p: &FinitePoset<L>, d: usize) -> Option<Vec<LinearExtension>> {
    match decide(p, d, &SolverConfig::default()) {
        Decision::Yes(w) => Some(w),
        _ => None,
    }
}

pub fn decide<L: Label>(p: &FinitePoset<L>, d: usize, cfg: &SolverConfig) -> Decision {
    assert!(d >= 1, "d must be positive");
    let inst = Instance::new(p);
    if inst.pairs.is_empty() {
        let l = extend_to_linear(p, &Refinement::empty(p)).expect("poset is acyclic");
        return Decision::Yes(vec![l; d]);
    }
    if d == 1 {
        return Decision::No;
    }
    let greedy = inst.greedy();
    let upper = greedy.iter().max().unwrap() + 1;
    if upper <= d {
        let mut w = inst.witness(p, &greedy, upper);
        while w.len() < d {
            w.push(w[0].clone());
        }
        return Decision::Yes(w);
    }
    match inst.search(d, cfg) {
        Outcome::Found(colors) => Decision::Yes(inst.witness(p, &colors, d)),
        Outcome::Exhausted => Decision::No,
        Outcome::Budget => Decision::Unknown,
    }
}

/// Realizer from the greedy first-fit coloring of the critical pairs.
pub fn greedy_realizer<L: Label>(p: &FinitePoset<L>) -> Vec<LinearExtension> {
    let inst = Instance::new(p);
    if inst.pairs.is_empty() {
        return vec![extend_to_linear(p, &Refinement::empty(p)).expect("poset is acyclic")];
    }
    let g = inst.greedy();
    let k = g.iter().max().unwrap() + 1;
    inst.witness(p, &g, k)
}

enum Outcome {
    Found(Vec<usize>),
    Exhausted,
    Budget,
}

struct Instance {
    n: usize,
    pairs: Vec<(usize, usize)>,
    /// Reflexive-free strict order of `P`.
    base: BitMatrix,
    /// Number of other pairs each pair conflicts with directly.
    degree: Vec<usize>,
}

#[derive(Clone)]
struct State {
    /// Closed relation of `P` plus the pairs reversed so far, per color.
    closure: Vec<BitMatrix>,
    color: Vec<Option<usize>>,
    used: usize,
    assigned: usize,
}

impl Instance {
    fn new<L: Label>(p: &FinitePoset<L>) -> Self {
        let pairs = critical_pairs(p);
        let m = pairs.len();
        let mut degree = vec![0; m];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, d)) in pairs.iter().enumerate() {
                if i != j && p.le(a, d) && p.le(c, b) {
                    degree[i] += 1;
                }
            }
        }
        Instance { n: p.len(), pairs, base: p.relation().clone(), degree }
    }

    /// Can `(a, b)` be reversed in a class with closed relation `c`?
    fn fits(c: &BitMatrix, (a, b): (usize, usize)) -> bool {
        a != b && !c.get(a, b)
    }

    /// Adds `b < a` to a closed relation and re-closes it.
    fn add(&self, c: &mut BitMatrix, (a, b): (usize, usize)) {
        let mut up = c.row(a).clone();
        up.insert(a);
        let below: Vec<usize> = (0..self.n).filter(|&x| x == b || c.get(x, b)).collect();
        for x in below {
            c.row_mut(x).union_with(&up);
        }
    }

    fn greedy(&self) -> Vec<usize> {
        let mut classes: Vec<BitMatrix> = Vec::new();
        let mut order: Vec<usize> = (0..self.pairs.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.degree[i]));
        let mut color = vec![0; self.pairs.len()];
        for i in order {
            let pr = self.pairs[i];
            let k = match classes.iter().position(|c| Self::fits(c, pr)) {
                Some(k) => k,
                None => {
                    classes.push(self.base.clone());
                    classes.len() - 1
                }
            };
            self.add(&mut classes[k], pr);
            color[i] = k;
        }
        color
    }

    fn root(&self, d: usize) -> State {
        State {
            closure: vec![self.base.clone(); d],
            color: vec![None; self.pairs.len()],
            used: 0,
            assigned: 0,
        }
    }

    /// The unassigned pair with fewest feasible colors (ties: most conflicts, lowest index),
    /// and those colors; `None` when everything is assigned.
    fn choose(&self, s: &State, d: usize) -> Option<(usize, Vec<usize>)> {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for i in 0..self.pairs.len() {
            if s.color[i].is_some() {
                continue;
            }
            // only one fresh color is worth trying: fresh colors are interchangeable
            let limit = (s.used + 1).min(d);
            let opts: Vec<usize> =
                (0..limit).filter(|&k| Self::fits(&s.closure[k], self.pairs[i])).collect();
            let better = match &best {
                None => true,
                Some((j, o)) => {
                    opts.len() < o.len() || (opts.len() == o.len() && self.degree[i] > self.degree[*j])
                }
            };
            if better {
                let empty = opts.is_empty();
                best = Some((i, opts));
                if empty {
                    break;
                }
            }
        }
        best
    }

    fn apply(&self, s: &State, i: usize, k: usize) -> State {
        let mut t = s.clone();
        self.add(&mut t.closure[k], self.pairs[i]);
        t.color[i] = Some(k);
        t.used = t.used.max(k + 1);
        t.assigned += 1;
        t
    }

    fn children(&self, s: &State, d: usize) -> Option<Vec<State>> {
        let (i, opts) = self.choose(s, d)?;
        Some(opts.into_iter().map(|k| self.apply(s, i, k)).collect())
    }

    fn dfs(&self, s: &State, d: usize, nodes: &mut u64, limit: u64) -> Outcome {
        *nodes += 1;
        if *nodes > limit {
            return Outcome::Budget;
        }
        let Some((i, opts)) = self.choose(s, d) else {
            return Outcome::Found(s.color.iter().map(|c| c.unwrap()).collect());
        };
        let mut budget_hit = false;
        for k in opts {
            let t = self.apply(s, i, k);
            match self.dfs(&t, d, nodes, limit) {
                Outcome::Found(c) => return Outcome::Found(c),
                Outcome::Budget => {
                    budget_hit = true;
                    break;
                }
                Outcome::Exhausted => {}
            }
        }
        if budget_hit {
            Outcome::Budget
        } else {
            Outcome::Exhausted
        }
    }

    fn search(&self, d: usize, cfg: &SolverConfig) -> Outcome {
        // Cut the tree into subtrees in depth-first order so that taking the first
        // non-exhausted subtree gives the same answer under any schedule.
        let mut frontier = vec![self.root(d)];
        let mut depth = 0;
        while frontier.len() < cfg.split_target && depth < 12 {
            let mut next = Vec::new();
            let mut grew = false;
            for s in &frontier {
                match self.children(s, d) {
                    Some(ch) => {
                        grew = true;
                        next.extend(ch);
                    }
                    None => next.push(s.clone()),
                }
            }
            if !grew {
                break;
            }
            frontier = next;
            depth += 1;
        }
        if frontier.is_empty() {
            return Outcome::Exhausted;
        }
        let limit = cfg.node_limit;
        let hit = cfg.exec.find_first(frontier.len(), |b| {
            let mut nodes = 0;
            match self.dfs(&frontier[b], d, &mut nodes, limit) {
                Outcome::Exhausted => None,
                other => Some(other),
            }
        });
        hit.unwrap_or(Outcome::Exhausted)
    }

    fn witness<L: Label>(&self, p: &FinitePoset<L>, colors: &[usize], d: usize) -> Vec<LinearExtension> {
        let all = BitSet::full(p.len());
        let w: Vec<LinearExtension> = (0..d)
            .map(|k| {
                let rev: Vec<(usize, usize)> = self
                    .pairs
                    .iter()
                    .zip(colors)
                    .filter(|(_, &c)| c == k)
                    .map(|(&(a, b), _)| (b, a))
                    .collect();
                let r = Refinement::from_pairs(p, &all, &rev).expect("color class is reversible");
                extend_to_linear(p, &r).expect("valid refinement extends")
            })
            .collect();
        debug_assert!({
            let fam: Vec<Refinement> = w.iter().map(|l| l.to_refinement(p).unwrap()).collect();
            verify_realizer_with(p, &fam, Exec::Sequential).verified
        });
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn crown(n: usize) -> FinitePoset<usize> {
        let mut rel = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    rel.push((i, n + j));
                }
            }
        }
        FinitePoset::from_relations((0..2 * n).collect(), &rel).unwrap()
    }

    #[test]
    fn small_cases() {
        let chain = FinitePoset::from_relations(vec![0, 1, 2], &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(exact_dimension(&chain, 4).exact(), Some(1));
        let anti = FinitePoset::from_relations(vec![0, 1], &[]).unwrap();
        assert_eq!(exact_dimension(&anti, 4).exact(), Some(2));
        assert_eq!(exact_dimension(&crown(3), 4).exact(), Some(3));
        assert_eq!(exact_dimension(&crown(4), 3).value, DimensionValue::Exceeds { d_max: 3 });
    }

    #[test]
    fn crown_critical_pairs() {
        assert_eq!(critical_pairs(&crown(3)), vec![(0, 3), (1, 4), (2, 5)]);
    }

    #[test]
    fn decision_form() {
        assert!(dimension_at_most(&crown(4), 3).is_none());
        assert_eq!(dimension_at_most(&crown(3), 3).map(|w| w.len()), Some(3));
    }
}

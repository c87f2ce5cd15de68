//! Exact branch-and-bound for `tau` and `tau'`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{star_decomposition, Biclique, BicliquePartition};
use crate::error::{Error, Result};
use crate::graph::{independence_number_exact, Graph, VertexSet};
use crate::spectral::graham_pollak_lower_bound;

/// Largest graph the exact solvers accept (adjacency rows are single words).
pub const EXACT_SOLVER_MAX_N: usize = 64;

/// A partition count, or infinity when no admissible partition exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Objective {
    Finite(usize),
    Infinite,
}

impl Objective {
    pub fn finite(self) -> Option<usize> {
        match self {
            Objective::Finite(k) => Some(k),
            Objective::Infinite => None,
        }
    }
}

impl std::fmt::Display for Objective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Objective::Finite(k) => write!(f, "{k}"),
            Objective::Infinite => f.write_str("infinity"),
        }
    }
}

/// Serialised as an integer, or the string `"infinity"`.
impl Serialize for Objective {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Objective::Finite(k) => s.serialize_u64(*k as u64),
            Objective::Infinite => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for Objective {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Count(usize),
            Word(String),
        }
        match Repr::deserialize(d)? {
            Repr::Count(k) => Ok(Objective::Finite(k)),
            Repr::Word(w) if w == "infinity" => Ok(Objective::Infinite),
            Repr::Word(w) => Err(serde::de::Error::custom(format!("unexpected value {w:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    /// The search finished; `value` is optimal (or proven infinite).
    Exact,
    /// The node budget ran out; only `lower_bound` is certified and `value`
    /// is the best partition found.
    LowerBoundOnly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub value: Objective,
    pub lower_bound: usize,
    pub status: SolveStatus,
    pub witness: Option<BicliquePartition>,
    /// Search nodes expanded.
    pub nodes: u64,
}

/// `tau(G)`: the fewest edge-disjoint bicliques covering `E(G)`.
///
/// Branches on the lexicographically smallest uncovered edge over every
/// biclique of the uncovered graph that contains it, largest first. A branch
/// is cut when the parts used plus the eigenvalue bound of the uncovered
/// graph reach the incumbent, or when the same uncovered edge set was
/// already reached with no more parts. The incumbent starts as the star
/// decomposition around a maximum independent set.
pub fn tau_exact(g: &Graph, budget: u64) -> Result<SolveResult> {
    let rows = small_rows(g)?;
    let alpha = independence_number_exact(g, budget.max(1));
    let initial = star_decomposition(g, &alpha.witness)?;
    let incumbent: Vec<(u64, u64)> = initial.parts.iter().map(to_masks).collect();
    let mut search = Search::new(g.n(), rows, false, budget, Some(incumbent));
    search.run()
}

/// `tau'(G)`: like [`tau_exact`] but every part must have both sides of size
/// at least two. Zero when `n <= 2`; [`Objective::Infinite`] when the search
/// completes without finding a partition.
pub fn tau_prime_exact(g: &Graph, budget: u64) -> Result<SolveResult> {
    let rows = small_rows(g)?;
    if g.n() <= 2 {
        return Ok(SolveResult {
            value: Objective::Finite(0),
            lower_bound: 0,
            status: SolveStatus::Exact,
            witness: None,
            nodes: 0,
        });
    }
    let mut search = Search::new(g.n(), rows, true, budget, None);
    search.run()
}

fn small_rows(g: &Graph) -> Result<Vec<u64>> {
    g.small_rows().ok_or_else(|| {
        Error::TooLarge(format!(
            "exact partition search supports at most {EXACT_SOLVER_MAX_N} vertices, got {}",
            g.n()
        ))
    })
}

fn to_masks(b: &Biclique) -> (u64, u64) {
    let mask = |s: &VertexSet| s.iter().fold(0u64, |m, v| m | 1 << v);
    (mask(b.a()), mask(b.b()))
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

struct Search {
    n: usize,
    rows: Vec<u64>,
    strong: bool,
    budget: u64,
    nodes: u64,
    aborted: bool,
    best: Option<Vec<(u64, u64)>>,
    seen: HashMap<Vec<u64>, usize>,
}

impl Search {
    fn new(n: usize, rows: Vec<u64>, strong: bool, budget: u64, best: Option<Vec<(u64, u64)>>) -> Self {
        Search {
            n,
            rows,
            strong,
            budget,
            nodes: 0,
            aborted: false,
            best,
            seen: HashMap::new(),
        }
    }

    fn best_len(&self) -> usize {
        self.best.as_ref().map_or(usize::MAX, Vec::len)
    }

    fn remaining_graph(&self) -> Graph {
        let active: Vec<usize> = (0..self.n).filter(|&v| self.rows[v] != 0).collect();
        let mut index = [usize::MAX; 64];
        for (i, &v) in active.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(active.len());
        for &u in &active {
            for v in bits(self.rows[u]).filter(|&v| v > u) {
                g.add_edge_unchecked(index[u], index[v]);
            }
        }
        g
    }

    fn lower_bound(&self) -> Result<usize> {
        if self.rows.iter().all(|&r| r == 0) {
            return Ok(0);
        }
        Ok(graham_pollak_lower_bound(&self.remaining_graph())?.max(1))
    }

    fn run(&mut self) -> Result<SolveResult> {
        let root_bound = self.lower_bound()?;
        let mut parts = Vec::new();
        if self.best_len() > root_bound {
            self.expand(&mut parts)?;
        }
        let witness = self.best.as_ref().map(|parts| {
            BicliquePartition::new(
                self.n,
                parts
                    .iter()
                    .map(|&(a, b)| {
                        let set = |m: u64| VertexSet::from_vertices(self.n, bits(m)).unwrap();
                        Biclique::new(set(a), set(b)).unwrap().canonical()
                    })
                    .collect(),
            )
        });
        let value = match &witness {
            Some(w) => Objective::Finite(w.len()),
            None => Objective::Infinite,
        };
        let (status, lower_bound) = if self.aborted {
            (SolveStatus::LowerBoundOnly, root_bound)
        } else {
            (SolveStatus::Exact, value.finite().unwrap_or(root_bound))
        };
        Ok(SolveResult {
            value,
            lower_bound,
            status,
            witness,
            nodes: self.nodes,
        })
    }

    /// Bicliques `(x, y)` of the uncovered graph with `u in x`, `v in y`.
    fn candidates(&self, u: usize, v: usize) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        let pool = self.rows[v] & !(1 << u);
        let mut stack = vec![(1u64 << u, self.rows[u], pool)];
        while let Some((x, common, free)) = stack.pop() {
            for w in bits(free) {
                let higher = free & !((2u64 << w) - 1);
                stack.push((x | 1 << w, common & self.rows[w], higher & self.rows[v]));
            }
            if self.strong && x.count_ones() < 2 {
                continue;
            }
            let extra = common & !(1 << v);
            let mut sub = extra;
            loop {
                let y = sub | 1 << v;
                if !self.strong || y.count_ones() >= 2 {
                    out.push((x, y));
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & extra;
            }
        }
        out.sort_by_key(|&(x, y)| std::cmp::Reverse(x.count_ones() * y.count_ones()));
        out
    }

    fn toggle(&mut self, x: u64, y: u64) {
        for a in bits(x) {
            self.rows[a] ^= y;
        }
        for b in bits(y) {
            self.rows[b] ^= x;
        }
    }

    fn expand(&mut self, parts: &mut Vec<(u64, u64)>) -> Result<()> {
        if self.nodes >= self.budget {
            self.aborted = true;
            return Ok(());
        }
        self.nodes += 1;
        let Some(u) = (0..self.n).find(|&v| self.rows[v] != 0) else {
            if parts.len() < self.best_len() {
                self.best = Some(parts.clone());
            }
            return Ok(());
        };
        let used = parts.len();
        if used + 1 >= self.best_len() || used + self.lower_bound()? >= self.best_len() {
            return Ok(());
        }
        match self.seen.get(&self.rows) {
            Some(&k) if k <= used => return Ok(()),
            _ => {
                self.seen.insert(self.rows.clone(), used);
            }
        }
        let v = self.rows[u].trailing_zeros() as usize;
        for (x, y) in self.candidates(u, v) {
            if used + 1 >= self.best_len() {
                break;
            }
            self.toggle(x, y);
            parts.push((x, y));
            self.expand(parts)?;
            parts.pop();
            self.toggle(x, y);
            if self.aborted {
                break;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, star};
    use crate::partition::validate_partition;

    fn tau(g: &Graph) -> SolveResult {
        let r = tau_exact(g, 1_000_000).unwrap();
        assert_eq!(r.status, SolveStatus::Exact);
        if let Some(w) = &r.witness {
            assert_eq!(validate_partition(g, w), Ok(()));
            assert_eq!(Objective::Finite(w.len()), r.value);
        }
        r
    }

    fn tau_prime(g: &Graph) -> SolveResult {
        let r = tau_prime_exact(g, 1_000_000).unwrap();
        assert_eq!(r.status, SolveStatus::Exact);
        if let Some(w) = &r.witness {
            assert_eq!(validate_partition(g, w), Ok(()));
            assert!(w.parts.iter().all(|p| !p.is_star()));
        }
        r
    }

    #[test]
    fn complete_graphs() {
        for n in 2..=8 {
            assert_eq!(tau(&complete(n)).value, Objective::Finite(n - 1), "K_{n}");
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(tau(&complete_bipartite(3, 3)).value, Objective::Finite(1));
        assert_eq!(tau(&cycle(5)).value, Objective::Finite(3));
        assert_eq!(tau(&Graph::empty(4)).value, Objective::Finite(0));
        assert_eq!(tau(&Graph::empty(0)).value, Objective::Finite(0));
    }

    #[test]
    fn strong_examples() {
        assert_eq!(tau_prime(&complete(2)).value, Objective::Finite(0));
        assert_eq!(tau_prime(&complete_bipartite(2, 2)).value, Objective::Finite(1));
        assert_eq!(tau_prime(&complete(4)).value, Objective::Infinite);
        assert_eq!(tau_prime(&star(3)).value, Objective::Infinite);
        assert_eq!(tau_prime(&Graph::empty(5)).value, Objective::Finite(0));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let g = crate::graph::sample_gnp(&crate::GnpSpec::new(11, 0.5, 3).unwrap()).unwrap();
        let r = tau_exact(&g, 1).unwrap();
        if r.status == SolveStatus::LowerBoundOnly {
            assert!(r.lower_bound <= r.value.finite().unwrap());
            assert_eq!(validate_partition(&g, r.witness.as_ref().unwrap()), Ok(()));
        }
        let r = tau_prime_exact(&complete(7), 2).unwrap();
        assert_eq!(r.status, SolveStatus::LowerBoundOnly);
    }

    #[test]
    fn refuses_large_graphs() {
        assert!(tau_exact(&Graph::empty(65), 10).is_err());
    }

    #[test]
    fn objective_json() {
        assert_eq!(serde_json::to_string(&Objective::Finite(3)).unwrap(), "3");
        assert_eq!(serde_json::to_string(&Objective::Infinite).unwrap(), "\"infinity\"");
        let back: Objective = serde_json::from_str("\"infinity\"").unwrap();
        assert_eq!(back, Objective::Infinite);
        assert!(serde_json::from_str::<Objective>("\"many\"").is_err());
    }
}

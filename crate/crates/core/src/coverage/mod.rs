//! Edge coverage by families of left sides.
//!
//! A family of vertex sets `A_1..A_k` is processed in some order; each set
//! takes a right side from its common neighbourhood in the graph that
//! remains after the earlier sets' edges were removed. [`f_exact`] maximises
//! the number of edges covered this way, and the certificate functions bound
//! from below the edges that no completion can cover.

mod certificates;
mod peeling;

use std::collections::HashMap;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

pub use certificates::{
    derive_s_t, g_certificate, g_value, h_certificate, h_value, uncovered_certificates, uncovered_lower_bound, CertificateKind,
    LabelMap, UncoveredBound,
};
pub use peeling::{
    classify_family, extract_witness, peeling_degree_bound, FamilySplit, PeelSteps, WitnessPair,
};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::seeding::rng_from_seed;

pub type Edge = (usize, usize);

/// Largest family [`f_exact`] accepts.
pub const F_EXACT_MAX_SETS: usize = 8;
/// Largest universe [`f_exact`] accepts.
pub const F_EXACT_MAX_UNIVERSE: usize = 12;

/// A multiset of left sides inside a universe `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageFamily {
    pub sets: Vec<VertexSet>,
    pub universe: VertexSet,
}

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    universe: Vec<usize>,
    sets: Vec<Vec<usize>>,
}

impl CoverageFamily {
    /// Checks that every set is nonempty, lies in the universe, and shares its
    /// vertex range.
    pub fn new(sets: Vec<VertexSet>, universe: VertexSet) -> Result<Self> {
        for (i, s) in sets.iter().enumerate() {
            if s.universe() != universe.universe() {
                return Err(Error::param(format!("set {i} has a different vertex range")));
            }
            if s.is_empty() {
                return Err(Error::param(format!("set {i} is empty")));
            }
            if !s.is_subset(&universe) {
                return Err(Error::param(format!("set {i} is not inside the universe")));
            }
        }
        Ok(CoverageFamily { sets, universe })
    }

    pub fn from_lists(n: usize, universe: &[usize], sets: &[Vec<usize>]) -> Result<Self> {
        let universe = VertexSet::from_vertices(n, universe.iter().copied())?;
        let sets = sets
            .iter()
            .map(|s| VertexSet::from_vertices(n, s.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(sets, universe)
    }

    /// The whole vertex range as universe.
    pub fn over_all(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        Self::from_lists(n, &(0..n).collect::<Vec<_>>(), sets)
    }

    pub fn empty(universe: VertexSet) -> Self {
        CoverageFamily {
            sets: Vec::new(),
            universe,
        }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// The sets at `indices`, same universe.
    pub fn subfamily(&self, indices: &[usize]) -> CoverageFamily {
        CoverageFamily {
            sets: indices.iter().map(|&i| self.sets[i].clone()).collect(),
            universe: self.universe.clone(),
        }
    }

    /// `{"universe":[..],"sets":[[..],..]}`
    pub fn to_json(&self) -> String {
        serde_json::to_string(&FamilyJson {
            universe: self.universe.to_vec(),
            sets: self.sets.iter().map(VertexSet::to_vec).collect(),
        })
        .expect("family serialises")
    }

    pub fn from_json(text: &str, n: usize) -> Result<Self> {
        let raw: FamilyJson = serde_json::from_str(text)?;
        Self::from_lists(n, &raw.universe, &raw.sets)
    }

    fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.universe.universe() != g.n() {
            return Err(Error::param(format!(
                "family is over {} vertices but the graph has {}",
                self.universe.universe(),
                g.n()
            )));
        }
        Ok(())
    }
}

/// One run of the sequential covering process.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageTrace {
    /// Set indices in processing order.
    pub order: Vec<usize>,
    /// Right side chosen at each step.
    pub choices: Vec<Vec<usize>>,
    /// Edges removed at each step, as `(min, max)` pairs in ascending order.
    pub covered: Vec<Vec<Edge>>,
    pub total: usize,
}

/// Edges with one endpoint in `a` and the other in its common neighbourhood.
pub fn covered_edges(g: &Graph, a: &VertexSet) -> Result<Vec<Edge>> {
    let common = g.common_neighborhood(a)?;
    Ok(cross_edges(a, &common))
}

fn cross_edges(a: &VertexSet, b: &VertexSet) -> Vec<Edge> {
    let mut out: Vec<Edge> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| (x.min(y), x.max(y))))
        .collect();
    out.sort_unstable();
    out
}

/// The sum of `|E(A_i, V(G, A_i))|`, which bounds `f` from above.
pub fn coverage_upper_bound(g: &Graph, fam: &CoverageFamily) -> Result<usize> {
    fam.check_graph(g)?;
    let local = Local::new(g, fam);
    Ok(local
        .sets
        .iter()
        .map(|&a| a.count_ones() as usize * local.common(&local.rows, a).count_ones() as usize)
        .sum())
}

/// The universe relabelled to `0..m` with `u16` adjacency rows.
struct Local {
    verts: Vec<usize>,
    rows: Vec<u16>,
    sets: Vec<u16>,
}

impl Local {
    fn new(g: &Graph, fam: &CoverageFamily) -> Self {
        let verts = fam.universe.to_vec();
        let mask = |s: &VertexSet| {
            verts
                .iter()
                .enumerate()
                .filter(|(_, &v)| s.contains(v))
                .fold(0u16, |m, (i, _)| m | 1 << i)
        };
        let rows = verts.iter().map(|&v| mask(g.neighbors(v))).collect();
        let sets = fam.sets.iter().map(mask).collect();
        Local { verts, rows, sets }
    }

    fn full(&self) -> u16 {
        ((1u32 << self.verts.len()) - 1) as u16
    }

    fn common(&self, rows: &[u16], a: u16) -> u16 {
        let mut c = self.full() & !a;
        let mut m = a;
        while m != 0 {
            c &= rows[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        c
    }

    fn unmask(&self, m: u16) -> Vec<usize> {
        self.verts
            .iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    }

    fn global_edges(&self, a: u16, l: u16) -> Vec<Edge> {
        let mut out = Vec::new();
        for x in self.unmask(a) {
            for y in self.unmask(l) {
                out.push((x.min(y), x.max(y)));
            }
        }
        out.sort_unstable();
        out
    }
}

fn remove_cross(rows: &mut [u16], a: u16, l: u16) {
    for (i, row) in rows.iter_mut().enumerate() {
        if a >> i & 1 == 1 {
            *row &= !l;
        }
        if l >> i & 1 == 1 {
            *row &= !a;
        }
    }
}

fn pack(rows: &[u16]) -> u128 {
    // Strict upper triangle, at most 66 bits for 12 vertices.
    let mut key = 0u128;
    let mut bit = 0;
    for (i, &r) in rows.iter().enumerate() {
        let upper = (r as u32) >> (i + 1);
        let width = rows.len() - i - 1;
        key |= (upper as u128) << bit;
        bit += width;
    }
    key
}

struct ExactCover<'a> {
    local: &'a Local,
    memo: HashMap<(u16, u128), usize>,
}

impl ExactCover<'_> {
    /// Vertices of `common` whose removal could affect a later set.
    fn relevant(&self, rows: &[u16], used: u16, i: usize, common: u16) -> u16 {
        let a = self.local.sets[i];
        let mut rel = 0u16;
        for (j, &aj) in self.local.sets.iter().enumerate() {
            if j == i || used >> j & 1 == 1 {
                continue;
            }
            let cj = self.local.common(rows, aj);
            if a & aj != 0 {
                rel |= common & cj;
            }
            if a & cj != 0 {
                rel |= common & aj;
            }
        }
        rel
    }

    /// Right-side choices for set `i`: the irrelevant part is always taken.
    fn choices(&self, rows: &[u16], used: u16, i: usize) -> Vec<u16> {
        let common = self.local.common(rows, self.local.sets[i]);
        let rel = self.relevant(rows, used, i, common);
        let forced = common & !rel;
        let mut out = Vec::with_capacity(1 << rel.count_ones());
        let mut sub = rel;
        loop {
            out.push(forced | sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rel;
        }
        out
    }

    /// Sets interchangeable with an earlier unused copy are skipped.
    fn candidates(&self, used: u16) -> Vec<usize> {
        let sets = &self.local.sets;
        (0..sets.len())
            .filter(|&i| used >> i & 1 == 0)
            .filter(|&i| !(0..i).any(|j| used >> j & 1 == 0 && sets[j] == sets[i]))
            .collect()
    }

    fn best(&mut self, rows: &mut Vec<u16>, used: u16) -> usize {
        if used.count_ones() as usize == self.local.sets.len() {
            return 0;
        }
        let key = (used, pack(rows));
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut best = 0;
        for i in self.candidates(used) {
            let a = self.local.sets[i];
            for l in self.choices(rows, used, i) {
                let saved = rows.clone();
                remove_cross(rows, a, l);
                let gain = (a.count_ones() * l.count_ones()) as usize;
                best = best.max(gain + self.best(rows, used | 1 << i));
                *rows = saved;
            }
        }
        self.memo.insert(key, best);
        best
    }
}

/// `f(G, A)` by exhaustive search over orders and right-side choices.
///
/// Right sides are enumerated only over vertices whose edges to the current
/// set could matter to a later set; every other common neighbour is always
/// taken, which never lowers the total. States are memoised on the set of
/// sets already used and the remaining edges. Refuses families larger than
/// [`F_EXACT_MAX_SETS`] or universes larger than [`F_EXACT_MAX_UNIVERSE`].
pub fn f_exact(g: &Graph, fam: &CoverageFamily) -> Result<(usize, CoverageTrace)> {
    fam.check_graph(g)?;
    if fam.len() > F_EXACT_MAX_SETS || fam.universe.len() > F_EXACT_MAX_UNIVERSE {
        return Err(Error::TooLarge(format!(
            "exact coverage needs at most {F_EXACT_MAX_SETS} sets and {F_EXACT_MAX_UNIVERSE} universe vertices, got {} and {}",
            fam.len(),
            fam.universe.len()
        )));
    }
    let local = Local::new(g, fam);
    let mut search = ExactCover {
        local: &local,
        memo: HashMap::new(),
    };
    let mut rows = local.rows.clone();
    let value = search.best(&mut rows, 0);

    let mut trace = CoverageTrace {
        order: Vec::new(),
        choices: Vec::new(),
        covered: Vec::new(),
        total: value,
    };
    let mut used = 0u16;
    let mut remaining = value;
    while (used.count_ones() as usize) < local.sets.len() {
        let mut step = None;
        'scan: for i in search.candidates(used) {
            let a = local.sets[i];
            for l in search.choices(&rows, used, i) {
                let gain = (a.count_ones() * l.count_ones()) as usize;
                if gain > remaining {
                    continue;
                }
                let mut next = rows.clone();
                remove_cross(&mut next, a, l);
                if gain + search.best(&mut next, used | 1 << i) == remaining {
                    step = Some((i, l));
                    break 'scan;
                }
            }
        }
        let (i, l) = step.expect("memoised optimum is reachable");
        let a = local.sets[i];
        remove_cross(&mut rows, a, l);
        remaining -= (a.count_ones() * l.count_ones()) as usize;
        used |= 1 << i;
        trace.order.push(i);
        trace.choices.push(local.unmask(l));
        trace.covered.push(local.global_edges(a, l));
    }
    Ok((value, trace))
}

/// Sets in a seeded random order, each taking its whole current common
/// neighbourhood (restricted to the universe). A lower bound on `f`.
pub fn f_greedy(g: &Graph, fam: &CoverageFamily, seed: u64) -> Result<(usize, CoverageTrace)> {
    fam.check_graph(g)?;
    let mut order: Vec<usize> = (0..fam.len()).collect();
    order.shuffle(&mut rng_from_seed(seed));
    let mut current = g.clone();
    let mut trace = CoverageTrace {
        order: order.clone(),
        choices: Vec::new(),
        covered: Vec::new(),
        total: 0,
    };
    for &i in &order {
        let a = &fam.sets[i];
        let mut l = current.common_neighborhood(a)?;
        l.intersect_with(&fam.universe);
        let edges = cross_edges(a, &l);
        current = remove_edges(&current, &edges);
        trace.total += edges.len();
        trace.choices.push(l.to_vec());
        trace.covered.push(edges);
    }
    Ok((trace.total, trace))
}

fn remove_edges(g: &Graph, edges: &[Edge]) -> Graph {
    if edges.is_empty() {
        return g.clone();
    }
    let drop: std::collections::HashSet<Edge> = edges.iter().copied().collect();
    let kept: Vec<Edge> = g.edges().filter(|e| !drop.contains(e)).collect();
    Graph::from_edges(g.n(), &kept).expect("subgraph of a valid graph")
}

/// Replays a trace step by step: the order is a permutation, each choice lies
/// in the universe and in the current common neighbourhood, each covered list
/// is exactly the edges between the set and its choice, and the total adds up.
pub fn validate_trace(g: &Graph, fam: &CoverageFamily, trace: &CoverageTrace) -> Result<()> {
    fam.check_graph(g)?;
    let k = fam.len();
    let mut seen = vec![false; k];
    if trace.order.len() != k || trace.choices.len() != k || trace.covered.len() != k {
        return Err(Error::param("trace length does not match the family"));
    }
    for &i in &trace.order {
        if i >= k || std::mem::replace(&mut seen[i], true) {
            return Err(Error::param("trace order is not a permutation"));
        }
    }
    let mut current = g.clone();
    let mut total = 0;
    for (step, &i) in trace.order.iter().enumerate() {
        let a = &fam.sets[i];
        let l = VertexSet::from_vertices(g.n(), trace.choices[step].iter().copied())?;
        let mut allowed = current.common_neighborhood(a)?;
        allowed.intersect_with(&fam.universe);
        if !l.is_subset(&allowed) {
            return Err(Error::param(format!(
                "step {step}: choice is not inside the current common neighbourhood"
            )));
        }
        let edges = cross_edges(a, &l);
        if edges != trace.covered[step] {
            return Err(Error::param(format!("step {step}: covered edges do not match")));
        }
        total += edges.len();
        current = remove_edges(&current, &edges);
    }
    if total != trace.total {
        return Err(Error::param(format!(
            "trace total {} but steps cover {total}",
            trace.total
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, sample_gnp, star, GnpSpec};

    fn fam(n: usize, sets: &[&[usize]]) -> CoverageFamily {
        let sets: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
        CoverageFamily::over_all(n, &sets).unwrap()
    }

    #[test]
    fn covered_edges_examples() {
        let a = VertexSet::from_vertices(4, [0, 1]).unwrap();
        assert_eq!(covered_edges(&complete(4), &a).unwrap(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        let a = VertexSet::from_vertices(5, [0, 2]).unwrap();
        assert_eq!(covered_edges(&cycle(5), &a).unwrap(), vec![(0, 1), (1, 2)]);
        let a = VertexSet::from_vertices(5, [0, 1]).unwrap();
        assert!(covered_edges(&cycle(5), &a).unwrap().is_empty());
    }

    #[test]
    fn star_with_three_pairs_covers_four() {
        let g = star(4);
        let f = fam(5, &[&[0, 1], &[1, 2], &[2, 3]]);
        let (value, trace) = f_exact(&g, &f).unwrap();
        assert_eq!(value, 4);
        validate_trace(&g, &f, &trace).unwrap();
        assert!(value <= coverage_upper_bound(&g, &f).unwrap());
    }

    #[test]
    fn trivial_families() {
        let g = complete_bipartite(2, 2);
        let (v, trace) = f_exact(&g, &fam(4, &[])).unwrap();
        assert_eq!((v, trace.total), (0, 0));
        assert_eq!(f_greedy(&g, &fam(4, &[]), 1).unwrap().0, 0);
        let single = fam(4, &[&[0, 1]]);
        assert_eq!(f_exact(&g, &single).unwrap().0, 4);
        assert_eq!(f_greedy(&g, &single, 9).unwrap().0, 4);
    }

    #[test]
    fn greedy_on_the_star_gives_two_or_four() {
        let g = star(4);
        let f = fam(5, &[&[0, 1], &[1, 2], &[2, 3]]);
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..40 {
            let (v, trace) = f_greedy(&g, &f, seed).unwrap();
            validate_trace(&g, &f, &trace).unwrap();
            seen.insert(v);
        }
        assert!(seen.is_subset(&[2, 4].into()));
        assert!(seen.contains(&4));
    }

    #[test]
    fn refuses_large_instances() {
        let sets: Vec<Vec<usize>> = (0..9).map(|i| vec![i, i + 1]).collect();
        let f = CoverageFamily::over_all(10, &sets).unwrap();
        assert!(matches!(f_exact(&Graph::empty(10), &f), Err(Error::TooLarge(_))));
        let f = CoverageFamily::over_all(13, &[vec![0, 1]]).unwrap();
        assert!(matches!(f_exact(&Graph::empty(13), &f), Err(Error::TooLarge(_))));
    }

    #[test]
    fn rejects_sets_outside_universe() {
        assert!(CoverageFamily::from_lists(5, &[0, 1], &[vec![1, 2]]).is_err());
        assert!(CoverageFamily::from_lists(5, &[0, 1], &[vec![]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = CoverageFamily::from_lists(6, &[0, 1, 2, 3], &[vec![0, 1], vec![2, 3]]).unwrap();
        let text = f.to_json();
        assert_eq!(text, r#"{"universe":[0,1,2,3],"sets":[[0,1],[2,3]]}"#);
        assert_eq!(CoverageFamily::from_json(&text, 6).unwrap(), f);
    }

    #[test]
    fn validate_trace_catches_tampering() {
        let g = star(4);
        let f = fam(5, &[&[0, 1], &[1, 2], &[2, 3]]);
        let (_, mut trace) = f_exact(&g, &f).unwrap();
        trace.total += 1;
        assert!(validate_trace(&g, &f, &trace).is_err());
        let (_, mut trace) = f_exact(&g, &f).unwrap();
        let step = trace.choices.iter().position(|c| c.is_empty()).unwrap();
        trace.choices[step] = vec![4];
        assert!(validate_trace(&g, &f, &trace).is_err());
    }

    /// Every order, every subset of the current common neighbourhood.
    fn brute_f(g: &Graph, f: &CoverageFamily) -> usize {
        fn go(g: &Graph, f: &CoverageFamily, left: &[usize]) -> usize {
            let mut best = 0;
            for (pos, &i) in left.iter().enumerate() {
                let mut rest = left.to_vec();
                rest.remove(pos);
                let mut common = g.common_neighborhood(&f.sets[i]).unwrap();
                common.intersect_with(&f.universe);
                let cand = common.to_vec();
                for bits in 0u32..1 << cand.len() {
                    let l = VertexSet::from_vertices(
                        g.n(),
                        cand.iter().enumerate().filter(|(j, _)| bits >> j & 1 == 1).map(|(_, &v)| v),
                    )
                    .unwrap();
                    let edges = cross_edges(&f.sets[i], &l);
                    let next = remove_edges(g, &edges);
                    best = best.max(edges.len() + go(&next, f, &rest));
                }
            }
            best
        }
        go(g, f, &(0..f.len()).collect::<Vec<_>>())
    }

    #[test]
    fn exact_matches_brute_force_and_dominates_greedy() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..100 {
            let n = rng.random_range(4..=8);
            let g = sample_gnp(&GnpSpec::new(n, 0.5, trial).unwrap()).unwrap();
            let k = rng.random_range(1..=4);
            let sets: Vec<Vec<usize>> = (0..k)
                .map(|_| {
                    let size = rng.random_range(1..=3);
                    let mut s: Vec<usize> = (0..n).collect();
                    s.shuffle(&mut rng);
                    s.truncate(size);
                    s
                })
                .collect();
            let f = CoverageFamily::over_all(n, &sets).unwrap();
            let (value, trace) = f_exact(&g, &f).unwrap();
            validate_trace(&g, &f, &trace).unwrap();
            assert_eq!(value, brute_f(&g, &f), "trial {trial}");
            assert!(value <= coverage_upper_bound(&g, &f).unwrap());
            let (greedy, gt) = f_greedy(&g, &f, trial).unwrap();
            validate_trace(&g, &f, &gt).unwrap();
            assert!(greedy <= value);
        }
    }

    #[test]
    fn universe_restricts_choices() {
        let g = complete(5);
        let f = CoverageFamily::from_lists(5, &[0, 1, 2], &[vec![0]]).unwrap();
        assert_eq!(f_exact(&g, &f).unwrap().0, 2);
        assert_eq!(f_greedy(&g, &f, 0).unwrap().0, 2);
    }
}

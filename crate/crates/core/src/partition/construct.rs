//! Constructive upper bounds: stars around an independent set, and stars
//! plus one induced biclique.

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::{Biclique, BicliquePartition};
use crate::error::{Error, Result};
use crate::graph::{is_independent, Effort, Graph, VertexSet};
use crate::seeding::rng_from_seed;
use crate::SearchStatus;

/// Stars centred at `centers` in ascending order; each star takes the
/// neighbours not already used as a centre. Empty stars are dropped.
fn stars_around(g: &Graph, centers: &VertexSet) -> Vec<Biclique> {
    let n = g.n();
    let mut used = VertexSet::new(n);
    let mut parts = Vec::new();
    for c in centers {
        let leaves = g.neighbors(c).difference(&used);
        used.insert(c);
        if !leaves.is_empty() {
            let mut center = VertexSet::new(n);
            center.insert(c);
            parts.push(Biclique::new(center, leaves).expect("centre is not its own neighbour"));
        }
    }
    parts
}

/// Partition of `E(g)` into at most `n - |independent|` stars centred
/// outside the independent set.
pub fn star_decomposition(g: &Graph, independent: &VertexSet) -> Result<BicliquePartition> {
    if independent.universe() != g.n() {
        return Err(Error::param("independent set is over the wrong universe"));
    }
    if !is_independent(g, independent) {
        return Err(Error::param("vertex set is not independent"));
    }
    let centers = g.vertices().difference(independent);
    Ok(BicliquePartition::new(g.n(), stars_around(g, &centers)))
}

/// Stars centred outside `ab`, followed by `ab` itself, which must be an
/// induced complete bipartite subgraph of `g`. Uses at most
/// `n - |a| - |b| + 1` parts.
pub fn star_plus_biclique_decomposition(g: &Graph, ab: &Biclique) -> Result<BicliquePartition> {
    if ab.universe() != g.n() {
        return Err(Error::param("biclique is over the wrong universe"));
    }
    if !is_independent(g, ab.a()) || !is_independent(g, ab.b()) {
        return Err(Error::param("biclique is not induced: a side contains an edge"));
    }
    if let Some((u, v)) = ab.pairs().find(|&(u, v)| !g.has_edge(u, v)) {
        return Err(Error::param(format!("biclique pair {{{u},{v}}} is not an edge")));
    }
    let centers = g.vertices().difference(&ab.a().union(ab.b()));
    let mut parts = stars_around(g, &centers);
    parts.push(ab.clone());
    Ok(BicliquePartition::new(g.n(), parts))
}

/// Largest `n` accepted by the exact induced-biclique search.
pub const EXACT_INDUCED_MAX_N: usize = 18;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InducedBiclique {
    /// `beta(G)` when exact: `|a| + |b|`, or 0 for an edgeless graph.
    pub size: usize,
    #[serde(skip)]
    pub biclique: Option<Biclique>,
    pub status: SearchStatus,
}

/// The induced complete bipartite subgraph maximising `|a| + |b|`.
///
/// Exact mode (at most [`EXACT_INDUCED_MAX_N`] vertices) enumerates
/// independent left sides containing the smallest vertex of the pair and
/// takes a maximum independent set of their common neighbourhood as the
/// right side. Heuristic mode alternates greedy independent sets between the
/// two sides from seeded random starts. `budget` counts search nodes.
pub fn largest_induced_biclique(
    g: &Graph,
    effort: Effort,
    budget: u64,
    seed: u64,
) -> Result<InducedBiclique> {
    let found = match effort {
        Effort::Exact => {
            if g.n() > EXACT_INDUCED_MAX_N {
                return Err(Error::TooLarge(format!(
                    "exact induced biclique search is limited to {EXACT_INDUCED_MAX_N} vertices, got {}",
                    g.n()
                )));
            }
            exact_induced(g, budget)
        }
        Effort::Heuristic => heuristic_induced(g, budget, seed),
    };
    let (best, status) = found;
    let biclique = best.map(|(a, b)| {
        Biclique::new(
            VertexSet::from_vertices(g.n(), a).unwrap(),
            VertexSet::from_vertices(g.n(), b).unwrap(),
        )
        .expect("search returns disjoint nonempty sides")
    });
    Ok(InducedBiclique {
        size: biclique.as_ref().map_or(0, |b| b.a().len() + b.b().len()),
        biclique,
        status,
    })
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask >> i & 1 == 1)
}

struct SmallMis<'a> {
    rows: &'a [u64],
    nodes: u64,
}

impl SmallMis<'_> {
    /// Maximum independent subset of `mask`.
    fn solve(&mut self, mask: u64) -> u64 {
        self.nodes += 1;
        if mask == 0 {
            return 0;
        }
        let mut pick = 0;
        let mut pick_deg = 0;
        for v in bits(mask) {
            let d = (self.rows[v] & mask).count_ones();
            if d == 0 {
                let rest = self.solve(mask & !(1 << v));
                return rest | 1 << v;
            }
            if d > pick_deg {
                pick_deg = d;
                pick = v;
            }
        }
        let with = self.solve(mask & !self.rows[pick] & !(1 << pick)) | 1 << pick;
        let without = self.solve(mask & !(1 << pick));
        if with.count_ones() >= without.count_ones() {
            with
        } else {
            without
        }
    }
}

type Sides = (Vec<usize>, Vec<usize>);

fn exact_induced(g: &Graph, budget: u64) -> (Option<Sides>, SearchStatus) {
    let rows = g.small_rows().expect("size checked");
    let n = g.n();
    struct Dfs<'a> {
        rows: &'a [u64],
        n: usize,
        best: Option<(u64, u64)>,
        best_size: u32,
        mis: SmallMis<'a>,
        budget: u64,
        aborted: bool,
    }
    impl Dfs<'_> {
        // a: current left side; common: V(G, a); free: vertices that may still join a
        fn go(&mut self, a: u64, common: u64, free: u64) {
            if self.mis.nodes >= self.budget {
                self.aborted = true;
                return;
            }
            let low = a.trailing_zeros();
            let above = if low >= 63 { 0 } else { !0u64 << (low + 1) };
            let right = common & above;
            if a.count_ones() + free.count_ones() + right.count_ones() <= self.best_size {
                return;
            }
            if right != 0 {
                let b = self.mis.solve(right);
                let size = a.count_ones() + b.count_ones();
                if size > self.best_size {
                    self.best_size = size;
                    self.best = Some((a, b));
                }
            }
            for x in bits(free) {
                let rest = free & !0u64 << x & !(1 << x) & !self.rows[x];
                self.go(a | 1 << x, common & self.rows[x], rest);
                if self.aborted {
                    return;
                }
            }
        }
    }
    let mut dfs = Dfs {
        rows: &rows,
        n,
        best: None,
        best_size: 0,
        mis: SmallMis { rows: &rows, nodes: 0 },
        budget,
        aborted: false,
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for first in 0..dfs.n {
        let free = all & !0u64 << first & !(1 << first) & !rows[first];
        dfs.go(1 << first, rows[first], free);
        if dfs.aborted {
            break;
        }
    }
    let status = if dfs.aborted {
        SearchStatus::Incomplete
    } else {
        SearchStatus::Exact
    };
    (
        dfs.best.map(|(a, b)| (bits(a).collect(), bits(b).collect())),
        status,
    )
}

/// Extends the independent set `start` greedily with vertices of `pool`,
/// scanned in `order`.
fn extend_independent(g: &Graph, start: VertexSet, pool: &VertexSet, order: &[usize]) -> VertexSet {
    let mut chosen = start;
    for &v in order {
        if pool.contains(v) && !chosen.contains(v) && g.neighbors(v).is_disjoint(&chosen) {
            chosen.insert(v);
        }
    }
    chosen
}

fn heuristic_induced(g: &Graph, budget: u64, seed: u64) -> (Option<Sides>, SearchStatus) {
    let n = g.n();
    if g.m() == 0 {
        return (None, SearchStatus::Incomplete);
    }
    let mut rng = rng_from_seed(seed);
    let mut order: Vec<usize> = (0..n).collect();
    let mut best: Option<(VertexSet, VertexSet)> = None;
    let mut best_size = 0;
    let mut steps = 0;
    while steps < budget {
        steps += 1;
        let start = rng.random_range(0..n);
        if g.degree(start) == 0 {
            continue;
        }
        let mut a = VertexSet::new(n);
        a.insert(start);
        order.shuffle(&mut rng);
        let mut b = extend_independent(g, VertexSet::new(n), g.neighbors(start), &order);
        let mut size = a.len() + b.len();
        // alternate: grow each side inside the common neighbourhood of the other
        loop {
            if size > best_size {
                best_size = size;
                best = Some((a.clone(), b.clone()));
            }
            if steps >= budget {
                break;
            }
            steps += 1;
            order.shuffle(&mut rng);
            a = extend_independent(g, a, &g.common_neighborhood(&b).unwrap(), &order);
            b = extend_independent(g, b, &g.common_neighborhood(&a).unwrap(), &order);
            let grown = a.len() + b.len();
            if grown <= size {
                break;
            }
            size = grown;
        }
    }
    (
        best.map(|(a, b)| (a.to_vec(), b.to_vec())),
        SearchStatus::Incomplete,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, independence_number_exact, sample_gnp, GnpSpec};
    use crate::partition::validate_partition;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn stars_of_k4() {
        let p = star_decomposition(&complete(4), &set(4, &[3])).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(validate_partition(&complete(4), &p), Ok(()));
    }

    #[test]
    fn stars_of_c5() {
        let g = cycle(5);
        let p = star_decomposition(&g, &set(5, &[1, 3])).unwrap();
        let centers: Vec<_> = p.parts.iter().map(|b| b.center().unwrap()).collect();
        assert_eq!(centers, vec![0, 2, 4]);
        assert_eq!(p.parts[0].b().to_vec(), vec![1, 4]);
        assert_eq!(p.parts[1].b().to_vec(), vec![1, 3]);
        assert_eq!(p.parts[2].b().to_vec(), vec![3]);
        assert_eq!(validate_partition(&g, &p), Ok(()));
    }

    #[test]
    fn stars_of_edgeless_graph() {
        let g = Graph::empty(5);
        assert!(star_decomposition(&g, &g.vertices()).unwrap().is_empty());
    }

    #[test]
    fn stars_reject_dependent_set() {
        assert!(star_decomposition(&cycle(5), &set(5, &[0, 1])).is_err());
    }

    #[test]
    fn star_plus_biclique_examples() {
        let g = complete_bipartite(2, 3);
        let ab = Biclique::from_vertices(5, &[0, 1], &[2, 3, 4]).unwrap();
        assert_eq!(star_plus_biclique_decomposition(&g, &ab).unwrap().len(), 1);

        // C4 with a pendant vertex 4 on 0
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        let ab = Biclique::from_vertices(5, &[0, 2], &[1, 3]).unwrap();
        let p = star_plus_biclique_decomposition(&g, &ab).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.parts[0].center(), Some(4));
        assert_eq!(validate_partition(&g, &p), Ok(()));

        let g = complete(4);
        let ab = Biclique::from_vertices(4, &[0], &[1]).unwrap();
        let p = star_plus_biclique_decomposition(&g, &ab).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.len() <= 4 - 2 + 1);
        assert_eq!(validate_partition(&g, &p), Ok(()));
    }

    #[test]
    fn star_plus_biclique_rejects_non_induced() {
        let ab = Biclique::from_vertices(4, &[0, 1], &[2, 3]).unwrap();
        assert!(star_plus_biclique_decomposition(&complete(4), &ab).is_err());
        let ab = Biclique::from_vertices(5, &[0], &[2]).unwrap();
        assert!(star_plus_biclique_decomposition(&cycle(5), &ab).is_err());
    }

    fn beta(g: &Graph) -> usize {
        largest_induced_biclique(g, Effort::Exact, u64::MAX, 0).unwrap().size
    }

    #[test]
    fn induced_biclique_examples() {
        assert_eq!(beta(&complete_bipartite(3, 3)), 6);
        assert_eq!(beta(&complete(4)), 2);
        assert_eq!(beta(&cycle(5)), 3);
        assert_eq!(beta(&Graph::empty(4)), 0);
        assert!(largest_induced_biclique(&Graph::empty(19), Effort::Exact, 1, 0).is_err());
    }

    /// Brute force over all ordered pairs of disjoint subsets.
    fn beta_brute(g: &Graph) -> usize {
        let n = g.n();
        let mut best = 0;
        for a in 1u32..1 << n {
            let av: Vec<usize> = (0..n).filter(|&i| a >> i & 1 == 1).collect();
            if av.iter().any(|&x| av.iter().any(|&y| g.has_edge(x, y))) {
                continue;
            }
            let mut b = 0u32;
            for v in 0..n {
                if a >> v & 1 == 0 && av.iter().all(|&x| g.has_edge(x, v)) {
                    b |= 1 << v;
                }
            }
            // largest independent subset of b
            let mut sub = b;
            loop {
                let sv: Vec<usize> = (0..n).filter(|&i| sub >> i & 1 == 1).collect();
                if !sv.is_empty()
                    && !sv.iter().any(|&x| sv.iter().any(|&y| g.has_edge(x, y)))
                {
                    best = best.max(av.len() + sv.len());
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & b;
            }
        }
        best
    }

    #[test]
    fn induced_biclique_matches_brute_force() {
        for seed in 0..40 {
            let n = 3 + (seed as usize % 7);
            let g = sample_gnp(&GnpSpec::new(n, 0.45, seed).unwrap()).unwrap();
            let r = largest_induced_biclique(&g, Effort::Exact, u64::MAX, 0).unwrap();
            assert_eq!(r.size, beta_brute(&g), "seed {seed}");
            if let Some(ab) = &r.biclique {
                star_plus_biclique_decomposition(&g, ab).unwrap();
            }
        }
    }

    #[test]
    fn heuristic_induced_is_valid_lower_bound() {
        for seed in 0..15 {
            let g = sample_gnp(&GnpSpec::new(12, 0.4, seed).unwrap()).unwrap();
            let exact = beta(&g);
            let h = largest_induced_biclique(&g, Effort::Heuristic, 200, seed).unwrap();
            assert!(h.size <= exact);
            if let Some(ab) = &h.biclique {
                let p = star_plus_biclique_decomposition(&g, ab).unwrap();
                assert_eq!(validate_partition(&g, &p), Ok(()));
            }
        }
    }

    #[test]
    fn star_count_bound() {
        for seed in 0..30 {
            let g = sample_gnp(&GnpSpec::new(15, 0.3, seed).unwrap()).unwrap();
            let alpha = independence_number_exact(&g, u64::MAX);
            let p = star_decomposition(&g, &alpha.witness).unwrap();
            assert!(p.len() <= g.n() - alpha.size);
            assert_eq!(validate_partition(&g, &p), Ok(()));
        }
    }
}

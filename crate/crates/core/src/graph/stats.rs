//! Empirical statistics behind the density and biclique-size checks.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::{Graph, VertexSet};
use crate::error::{Error, Result};
use crate::seeding::rng_from_seed;
use crate::SearchStatus;

/// Normalised edge-density deviation of `u` against the model density `p`:
/// `|e(U) - (p/2)|U|^2| / (|U|^{3/2} sqrt(ln n))`.
pub fn density_deviation(g: &Graph, u: &VertexSet, p: f64) -> Result<f64> {
    if g.n() < 2 {
        return Err(Error::param("density deviation needs n >= 2 so that ln n > 0"));
    }
    if u.is_empty() {
        return Err(Error::param("density deviation of an empty vertex set"));
    }
    let size = u.len() as f64;
    let e = g.edges_within(u)? as f64;
    Ok((e - p / 2.0 * size * size).abs() / (size.powf(1.5) * (g.n() as f64).ln().sqrt()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Effort {
    Exact,
    Heuristic,
}

/// Largest `n` accepted by the exact balanced-biclique search.
pub const EXACT_BICLIQUE_MAX_N: usize = 20;

/// Two disjoint `side`-element sets with every cross pair an edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BalancedBiclique {
    pub side: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub status: SearchStatus,
}

/// The largest `k` such that `g` contains `K_{k,k}` (not necessarily induced).
///
/// Exact mode enumerates left sides and is limited to
/// [`EXACT_BICLIQUE_MAX_N`] vertices. Heuristic mode runs seeded greedy
/// restarts, each step adding the vertex that keeps the largest common
/// neighbourhood, and returns a lower bound. `budget` counts search steps in
/// either mode.
pub fn max_balanced_biclique_side(
    g: &Graph,
    effort: Effort,
    budget: u64,
    seed: u64,
) -> Result<BalancedBiclique> {
    match effort {
        Effort::Exact => {
            if g.n() > EXACT_BICLIQUE_MAX_N {
                return Err(Error::TooLarge(format!(
                    "exact balanced biclique search is limited to {EXACT_BICLIQUE_MAX_N} vertices, got {}",
                    g.n()
                )));
            }
            Ok(exact_balanced(g, budget))
        }
        Effort::Heuristic => Ok(heuristic_balanced(g, budget, seed)),
    }
}

fn witness(side: usize, a: &[usize], common: u64) -> (Vec<usize>, Vec<usize>) {
    let b = (0..64).filter(|&v| common >> v & 1 == 1).take(side).collect();
    (a[..side].to_vec(), b)
}

fn exact_balanced(g: &Graph, budget: u64) -> BalancedBiclique {
    let rows = g.small_rows().expect("n checked against the exact limit");
    let n = g.n();
    struct Dfs<'a> {
        rows: &'a [u64],
        n: usize,
        best: (usize, Vec<usize>, Vec<usize>),
        nodes: u64,
        budget: u64,
        aborted: bool,
    }
    impl Dfs<'_> {
        fn go(&mut self, a: &mut Vec<usize>, common: u64, next: usize) {
            for x in next..self.n {
                if self.nodes >= self.budget {
                    self.aborted = true;
                    return;
                }
                self.nodes += 1;
                let c = common & self.rows[x];
                let reach = (a.len() + 1 + (self.n - x - 1)).min(c.count_ones() as usize);
                if reach <= self.best.0 {
                    continue;
                }
                a.push(x);
                let side = a.len().min(c.count_ones() as usize);
                if side > self.best.0 {
                    let (wa, wb) = witness(side, a, c);
                    self.best = (side, wa, wb);
                }
                self.go(a, c, x + 1);
                a.pop();
            }
        }
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut dfs = Dfs {
        rows: &rows,
        n,
        best: (0, Vec::new(), Vec::new()),
        nodes: 0,
        budget,
        aborted: false,
    };
    dfs.go(&mut Vec::new(), all, 0);
    let (side, a, b) = dfs.best;
    BalancedBiclique {
        side,
        a,
        b,
        status: if dfs.aborted {
            SearchStatus::Incomplete
        } else {
            SearchStatus::Exact
        },
    }
}

fn heuristic_balanced(g: &Graph, budget: u64, seed: u64) -> BalancedBiclique {
    let n = g.n();
    let mut best = BalancedBiclique {
        side: 0,
        a: Vec::new(),
        b: Vec::new(),
        status: SearchStatus::Incomplete,
    };
    if n == 0 || g.m() == 0 {
        return best;
    }
    let mut rng = rng_from_seed(seed);
    let mut steps = 0u64;
    while steps < budget {
        let start = rng.random_range(0..n);
        let mut a = vec![start];
        let mut common = g.neighbors(start).clone();
        loop {
            steps += 1;
            let side = a.len().min(common.len());
            if side > best.side {
                best.side = side;
                best.a = a[..side].to_vec();
                best.b = common.iter().take(side).collect();
            }
            if common.len() <= a.len() || steps >= budget {
                break;
            }
            // random rotation breaks ties between equally good extensions
            let offset = rng.random_range(0..n);
            let mut pick = None;
            let mut pick_size = 0;
            for i in 0..n {
                let v = (i + offset) % n;
                if a.contains(&v) {
                    continue;
                }
                let size = g.neighbors(v).intersection_len(&common);
                if size > pick_size {
                    pick_size = size;
                    pick = Some(v);
                }
            }
            match pick {
                Some(v) if pick_size > a.len() => {
                    a.push(v);
                    common.intersect_with(g.neighbors(v));
                }
                _ => break,
            }
        }
    }
    best
}

//! Exhaustive coverage search used as ground truth for tiny instances.

use std::collections::HashMap;

use crate::coverage::{CoverageFamily, Edge};
use crate::graph::Graph;

/// Largest graph [`brute_force_coverage`] accepts.
pub const ORACLE_MAX_N: usize = 8;

/// Result of trying every order and every right-side subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteCoverage {
    /// Most edges any trace covers.
    pub max_covered: usize,
    /// Edges covered by at least one trace.
    pub coverable: Vec<Edge>,
}

struct Oracle {
    n: usize,
    sets: Vec<u8>,
    universe: u8,
    memo: HashMap<(u8, u32), (usize, u32)>,
    index: [[usize; 8]; 8],
}

impl Oracle {
    fn has(&self, edges: u32, x: usize, y: usize) -> bool {
        edges >> self.index[x][y] & 1 == 1
    }

    fn common(&self, edges: u32, a: u8) -> u8 {
        (0..self.n)
            .filter(|&y| self.universe >> y & 1 == 1 && a >> y & 1 == 0)
            .filter(|&y| (0..self.n).filter(|&x| a >> x & 1 == 1).all(|x| self.has(edges, x, y)))
            .fold(0, |m, y| m | 1 << y)
    }

    fn cross(&self, a: u8, l: u8) -> u32 {
        let mut out = 0;
        for x in (0..self.n).filter(|&x| a >> x & 1 == 1) {
            for y in (0..self.n).filter(|&y| l >> y & 1 == 1) {
                out |= 1 << self.index[x][y];
            }
        }
        out
    }

    /// Best further coverage and the union of edges any continuation covers.
    fn go(&mut self, used: u8, edges: u32) -> (usize, u32) {
        if let Some(&hit) = self.memo.get(&(used, edges)) {
            return hit;
        }
        let mut best = (0, 0u32);
        for i in 0..self.sets.len() {
            if used >> i & 1 == 1 {
                continue;
            }
            let common = self.common(edges, self.sets[i]);
            let mut l = common;
            loop {
                let taken = self.cross(self.sets[i], l);
                let (rest, reach) = self.go(used | 1 << i, edges & !taken);
                best.0 = best.0.max(taken.count_ones() as usize + rest);
                best.1 |= taken | reach;
                if l == 0 {
                    break;
                }
                l = (l - 1) & common;
            }
        }
        self.memo.insert((used, edges), best);
        best
    }
}

/// Tries every processing order and every subset of the current common
/// neighbourhood (inside the universe) at every step. Returns `None` above
/// [`ORACLE_MAX_N`] vertices or eight sets.
pub fn brute_force_coverage(g: &Graph, fam: &CoverageFamily) -> Option<BruteCoverage> {
    let n = g.n();
    if n > ORACLE_MAX_N || fam.len() > 8 {
        return None;
    }
    let mut index = [[0usize; 8]; 8];
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            index[x][y] = pairs.len();
            index[y][x] = pairs.len();
            pairs.push((x, y));
        }
    }
    let edges = g.edges().fold(0u32, |m, (x, y)| m | 1 << index[x][y]);
    let to_mask = |s: &crate::graph::VertexSet| s.iter().fold(0u8, |m, v| m | 1 << v);
    let mut oracle = Oracle {
        n,
        sets: fam.sets.iter().map(to_mask).collect(),
        universe: to_mask(&fam.universe),
        memo: HashMap::new(),
        index,
    };
    let (max_covered, reach) = oracle.go(0, edges);
    let coverable = (0..pairs.len()).filter(|&i| reach >> i & 1 == 1).map(|i| pairs[i]).collect();
    Some(BruteCoverage { max_covered, coverable })
}

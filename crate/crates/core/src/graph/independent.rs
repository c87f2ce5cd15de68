use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{word_count, Graph, VertexSet};
use crate::seeding::rng_from_seed;
use crate::SearchStatus;

pub fn is_independent(g: &Graph, set: &VertexSet) -> bool {
    set.iter().all(|v| g.neighbors(v).is_disjoint(set))
}

/// A maximal independent set built by scanning vertices in a seeded random
/// order and keeping each vertex with no kept neighbour.
pub fn independent_set_greedy(g: &Graph, seed: u64) -> VertexSet {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(&mut rng_from_seed(seed));
    let mut chosen = VertexSet::new(g.n());
    let mut blocked = VertexSet::new(g.n());
    for v in order {
        if !blocked.contains(v) {
            chosen.insert(v);
            blocked.insert(v);
            blocked.union_with(g.neighbors(v));
        }
    }
    chosen
}

/// Iterated local search for a large independent set.
///
/// Starting from a greedy maximal set, each round forces a non-member in
/// (dropping its neighbours from the set), refills free vertices, and then
/// applies 1-for-2 swaps: a member is replaced by two non-adjacent
/// non-members whose only neighbour in the set was that member. The round's
/// result is kept unless it falls more than one below the best, in which case
/// the search restarts from the best set.
pub fn independent_set_local_search(g: &Graph, seed: u64, rounds: u64) -> VertexSet {
    let mut rng = rng_from_seed(seed);
    let mut state = SwapState::new(g);
    for v in independent_set_greedy(g, rng.random()).iter() {
        state.insert(v);
    }
    state.improve(&mut rng);
    let mut best = state.members.clone();
    for _ in 0..rounds {
        if state.members.len() + 1 < best.len() {
            state.reset_to(&best);
        }
        let Some(v) = state.pick_outsider(&mut rng) else {
            break;
        };
        state.force(v);
        state.fill(&mut rng);
        state.improve(&mut rng);
        if state.members.len() > best.len() {
            best = state.members.clone();
        }
    }
    VertexSet::from_vertices(g.n(), best).expect("vertices come from the graph")
}

struct SwapState {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    members: Vec<usize>,
    member: Vec<u64>,
    /// Number of set members adjacent to each vertex.
    tight: Vec<u32>,
    /// Non-members with exactly one neighbour in the set.
    one: Vec<u64>,
    /// Non-members with no neighbour in the set.
    free: Vec<u64>,
}

fn has(bits: &[u64], v: usize) -> bool {
    bits[v / 64] >> (v % 64) & 1 == 1
}

fn put(bits: &mut [u64], v: usize, on: bool) {
    if on {
        bits[v / 64] |= 1 << (v % 64);
    } else {
        bits[v / 64] &= !(1 << (v % 64));
    }
}

fn ones(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            (w != 0).then(|| {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                i * 64 + b
            })
        })
    })
}

impl SwapState {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let words = word_count(n);
        let mut adj = vec![0u64; n * words];
        for v in 0..n {
            adj[v * words..(v + 1) * words].copy_from_slice(g.neighbors(v).words());
        }
        let mut free = vec![0u64; words];
        for v in 0..n {
            put(&mut free, v, true);
        }
        SwapState {
            n,
            words,
            adj,
            members: Vec::new(),
            member: vec![0; words],
            tight: vec![0; n],
            one: vec![0; words],
            free,
        }
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    fn retally(&mut self, u: usize) {
        if !has(&self.member, u) {
            put(&mut self.one, u, self.tight[u] == 1);
            put(&mut self.free, u, self.tight[u] == 0);
        }
    }

    fn shift(&mut self, v: usize, up: bool) {
        for i in 0..self.words {
            let row = self.adj[v * self.words + i];
            if row == 0 {
                continue;
            }
            let mut w = row;
            let (mut one, mut free) = (0u64, 0u64);
            while w != 0 {
                let b = w.trailing_zeros();
                w &= w - 1;
                let t = &mut self.tight[i * 64 + b as usize];
                *t = if up { *t + 1 } else { *t - 1 };
                one |= u64::from(*t == 1) << b;
                free |= u64::from(*t == 0) << b;
            }
            let outside = row & !self.member[i];
            self.one[i] = (self.one[i] & !outside) | (one & outside);
            self.free[i] = (self.free[i] & !outside) | (free & outside);
        }
    }

    fn insert(&mut self, v: usize) {
        debug_assert!(!has(&self.member, v) && self.tight[v] == 0);
        put(&mut self.member, v, true);
        put(&mut self.one, v, false);
        put(&mut self.free, v, false);
        self.members.push(v);
        self.shift(v, true);
    }

    fn remove(&mut self, v: usize) {
        put(&mut self.member, v, false);
        self.members.retain(|&x| x != v);
        self.retally(v);
        self.shift(v, false);
    }

    fn reset_to(&mut self, set: &[usize]) {
        for v in self.members.clone() {
            self.remove(v);
        }
        for &v in set {
            self.insert(v);
        }
    }

    /// A random non-member, usually one with the fewest (or one more
    /// than the fewest) neighbours in the set.
    fn pick_outsider(&self, rng: &mut impl Rng) -> Option<usize> {
        if self.members.len() == self.n {
            return None;
        }
        if rng.random_bool(0.95) {
            let outside = |v: &usize| !has(&self.member, *v);
            let low = (0..self.n).filter(outside).map(|v| self.tight[v]).min().unwrap_or(0);
            let cheap: Vec<usize> = (0..self.n)
                .filter(outside)
                .filter(|&v| self.tight[v] <= low + 1)
                .collect();
            return cheap.choose(rng).copied();
        }
        loop {
            let v = rng.random_range(0..self.n);
            if !has(&self.member, v) {
                return Some(v);
            }
        }
    }

    fn force(&mut self, v: usize) {
        let clash: Vec<usize> = self.members.iter().copied().filter(|&u| has(self.row(v), u)).collect();
        for u in clash {
            self.remove(u);
        }
        self.insert(v);
    }

    fn fill(&mut self, rng: &mut impl Rng) {
        let mut free: Vec<usize> = ones(&self.free).collect();
        free.shuffle(rng);
        for v in free {
            if has(&self.free, v) {
                self.insert(v);
            }
        }
    }

    /// Applies 1-for-2 swaps until none is left.
    fn improve(&mut self, rng: &mut impl Rng) {
        'restart: loop {
            let mut members = self.members.clone();
            members.shuffle(rng);
            for x in members {
                let solo: Vec<u64> = (0..self.words).map(|i| self.row(x)[i] & self.one[i]).collect();
                for u in ones(&solo) {
                    let partner = (0..self.words).find_map(|i| {
                        let mut w = solo[i] & !self.row(u)[i];
                        if i == u / 64 {
                            w &= !((2u64 << (u % 64)).wrapping_sub(1));
                        } else if i < u / 64 {
                            w = 0;
                        }
                        (w != 0).then(|| i * 64 + w.trailing_zeros() as usize)
                    });
                    if let Some(w) = partner {
                        self.remove(x);
                        self.insert(u);
                        self.insert(w);
                        self.fill(rng);
                        continue 'restart;
                    }
                }
            }
            return;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndependenceResult {
    /// `alpha(G)` when `status` is exact, otherwise the best size found.
    pub size: usize,
    pub witness: VertexSet,
    pub status: SearchStatus,
    pub nodes: u64,
}

/// Branch-and-bound for the independence number.
///
/// Each node covers the candidate set greedily by cliques (an independent set
/// meets each clique at most once), then branches include/exclude on
/// candidates from the last clique backwards, pruning once the clique index
/// can no longer beat the incumbent. `budget` caps the number of nodes; when
/// it runs out the best set found so far is returned with an incomplete status.
pub fn independence_number_exact(g: &Graph, budget: u64) -> IndependenceResult {
    let n = g.n();
    // Low-degree vertices first: they are the likeliest members of large
    // independent sets and get the smallest clique indices.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let words = word_count(n);
    let mut adj = vec![0u64; n * words];
    for (i, &v) in order.iter().enumerate() {
        for u in g.neighbors(v) {
            let j = position[u];
            adj[i * words + j / 64] |= 1 << (j % 64);
        }
    }

    let mut search = MisSearch {
        adj,
        words,
        best: Vec::new(),
        nodes: 0,
        budget,
        aborted: false,
    };
    search.best = search.min_degree_greedy(n);
    let all = VertexSet::full(n);
    let mut current = Vec::new();
    if n > 0 {
        search.expand(&mut current, all.words().to_vec());
    }

    let witness = VertexSet::from_vertices(n, search.best.iter().map(|&i| order[i]))
        .expect("relabelled witness is in range");
    debug_assert!(is_independent(g, &witness));
    IndependenceResult {
        size: witness.len(),
        witness,
        status: if search.aborted {
            SearchStatus::Incomplete
        } else {
            SearchStatus::Exact
        },
        nodes: search.nodes,
    }
}

struct MisSearch {
    adj: Vec<u64>,
    words: usize,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

fn first_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn clear_bit(bits: &mut [u64], v: usize) {
    bits[v / 64] &= !(1 << (v % 64));
}

impl MisSearch {
    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    fn min_degree_greedy(&self, n: usize) -> Vec<usize> {
        let mut alive = VertexSet::full(n).words().to_vec();
        let mut chosen = Vec::new();
        loop {
            let mut pick = None;
            let mut pick_deg = usize::MAX;
            for (wi, &w) in alive.iter().enumerate() {
                let mut bits = w;
                while bits != 0 {
                    let v = wi * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let d: usize = self
                        .row(v)
                        .iter()
                        .zip(&alive)
                        .map(|(a, b)| (a & b).count_ones() as usize)
                        .sum();
                    if d < pick_deg {
                        pick_deg = d;
                        pick = Some(v);
                    }
                }
            }
            let Some(v) = pick else { break };
            chosen.push(v);
            clear_bit(&mut alive, v);
            for (a, r) in alive.iter_mut().zip(&self.adj[v * self.words..]) {
                *a &= !r;
            }
        }
        chosen
    }

    /// Greedy clique cover of `p`: vertices listed class by class with the
    /// 1-based index of their clique.
    fn clique_cover(&self, p: &[u64]) -> Vec<(usize, usize)> {
        let mut rest = p.to_vec();
        let mut class_members = vec![0u64; self.words];
        let mut out = Vec::new();
        let mut class = 0;
        while first_bit(&rest).is_some() {
            class += 1;
            class_members.copy_from_slice(&rest);
            while let Some(v) = first_bit(&class_members) {
                out.push((v, class));
                clear_bit(&mut rest, v);
                for (c, r) in class_members.iter_mut().zip(self.row(v)) {
                    *c &= r;
                }
            }
        }
        out
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut p: Vec<u64>) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let cover = self.clique_cover(&p);
        for &(v, bound) in cover.iter().rev() {
            if current.len() + bound <= self.best.len() {
                return;
            }
            current.push(v);
            let mut child = p.clone();
            clear_bit(&mut child, v);
            for (c, r) in child.iter_mut().zip(self.row(v)) {
                *c &= !r;
            }
            if first_bit(&child).is_none() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else {
                self.expand(current, child);
            }
            current.pop();
            clear_bit(&mut p, v);
            if self.aborted {
                return;
            }
        }
    }
}

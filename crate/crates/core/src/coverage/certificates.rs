//! Lower-bound certificates for edges a family cannot cover.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::{extract_witness, CoverageFamily, Edge, PeelSteps};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::seeding::{rng_from_seed, sub_seed};

/// Per-vertex label sets for [`h_value`]; missing vertices have empty labels.
pub type LabelMap = BTreeMap<usize, VertexSet>;

/// Number of shuffled vertex orders tried by [`uncovered_lower_bound`] on top
/// of the ascending one.
const EXTRA_PEEL_ORDERS: u64 = 4;

/// For each vertex, the indices of the sets containing it.
fn memberships(fam: &CoverageFamily) -> Vec<Vec<usize>> {
    let mut owners = vec![Vec::new(); fam.universe.universe()];
    for (i, s) in fam.sets.iter().enumerate() {
        for v in s.iter() {
            owners[v].push(i);
        }
    }
    owners
}

/// `S` and `T` over the vertices that lie in exactly one set, that set being
/// a pair. When both ends of a pair qualify the larger one is dropped.
fn split_s_t(fam: &CoverageFamily) -> (VertexSet, VertexSet) {
    let n = fam.universe.universe();
    let owners = memberships(fam);
    let single = |v: usize| owners[v].len() == 1 && fam.sets[owners[v][0]].len() == 2;
    let partner = |v: usize| {
        fam.sets[owners[v][0]]
            .iter()
            .find(|&x| x != v)
            .expect("pair has two vertices")
    };
    let mut s = VertexSet::new(n);
    let mut t = VertexSet::new(n);
    for v in (0..n).filter(|&v| single(v)) {
        let x = partner(v);
        if single(x) && x < v {
            continue;
        }
        s.insert(v);
        t.insert(x);
    }
    (s, t)
}

/// `(S, T)` for a family of pairs. `S` holds vertices in exactly one pair,
/// keeping only the smaller end of a pair whose ends both qualify; `T` holds
/// their partners.
pub fn derive_s_t(fam: &CoverageFamily) -> Result<(VertexSet, VertexSet)> {
    if let Some(i) = fam.sets.iter().position(|s| s.len() != 2) {
        return Err(Error::param(format!(
            "set {i} has {} vertices, expected 2",
            fam.sets[i].len()
        )));
    }
    let (s, t) = split_s_t(fam);
    debug_assert!(s.is_disjoint(&t) && s.len() >= t.len());
    Ok((s, t))
}

fn pair_partners(fam: &CoverageFamily, s: &VertexSet) -> Result<Vec<(usize, usize)>> {
    let owners = memberships(fam);
    s.iter()
        .map(|v| match owners[v].as_slice() {
            [i] if fam.sets[*i].len() == 2 => {
                Ok((v, fam.sets[*i].iter().find(|&x| x != v).unwrap()))
            }
            _ => Err(Error::param(format!("vertex {v} is not owned by exactly one pair"))),
        })
        .collect()
}

/// The pairs counted by [`g_value`].
pub fn g_certificate(g: &Graph, fam: &CoverageFamily, s: &VertexSet, t: &VertexSet) -> Result<Vec<Edge>> {
    fam.check_graph(g)?;
    if !s.is_disjoint(t) {
        return Err(Error::param("S and T overlap"));
    }
    let partners = pair_partners(fam, s)?;
    let mut out = Vec::new();
    for (i, &(u, pu)) in partners.iter().enumerate() {
        for &(v, pv) in &partners[i + 1..] {
            if g.has_edge(u, v) && !g.has_edge(u, pv) && !g.has_edge(v, pu) {
                out.push((u, v));
            }
        }
    }
    Ok(out)
}

/// Edges `uv` inside `S` such that `u` misses `v`'s partner and `v` misses
/// `u`'s partner. Neither pair can then cover `uv`, and no other set holds
/// `u` or `v`.
pub fn g_value(g: &Graph, fam: &CoverageFamily, s: &VertexSet, t: &VertexSet) -> Result<usize> {
    Ok(g_certificate(g, fam, s, t)?.len())
}

fn check_labels(universe: &VertexSet, w: &VertexSet, labels: &LabelMap) -> Result<()> {
    let mut seen = VertexSet::new(universe.universe());
    for (&v, l) in labels {
        if !w.contains(v) {
            return Err(Error::param(format!("label given for {v}, which is not in W")));
        }
        if !l.is_subset(universe) || !l.is_disjoint(w) {
            return Err(Error::param(format!("label of {v} must lie in U minus W")));
        }
        if !l.is_disjoint(&seen) {
            return Err(Error::param(format!("label of {v} overlaps another label")));
        }
        seen.union_with(l);
    }
    Ok(())
}

/// The edges counted by [`h_value`].
pub fn h_certificate(g: &Graph, universe: &VertexSet, w: &VertexSet, labels: &LabelMap) -> Result<Vec<Edge>> {
    if universe.universe() != g.n() || w.universe() != g.n() {
        return Err(Error::param("vertex range does not match the graph"));
    }
    if !w.is_subset(universe) {
        return Err(Error::param("W is not inside U"));
    }
    check_labels(universe, w, labels)?;
    let empty = VertexSet::new(g.n());
    let label = |v: usize| labels.get(&v).unwrap_or(&empty);
    let mut out = Vec::new();
    for x in w.iter() {
        for y in g.neighbors(x).intersection(w).iter().filter(|&y| y > x) {
            if g.neighbors(x).is_disjoint(label(y)) && g.neighbors(y).is_disjoint(label(x)) {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}

/// Edges `ww'` inside `W` where `w` has no neighbour in `L(w')` and `w'` has
/// none in `L(w)`. Labels must be disjoint and lie in `U` minus `W`.
pub fn h_value(g: &Graph, universe: &VertexSet, w: &VertexSet, labels: &LabelMap) -> Result<usize> {
    Ok(h_certificate(g, universe, w, labels)?.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    None,
    G,
    H,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UncoveredBound {
    pub value: usize,
    pub method: CertificateKind,
    /// Edges of `G[U]` that no set of the family can cover.
    pub edges: Vec<Edge>,
}

/// Every certificate [`uncovered_lower_bound`] considers: the `g` bound on
/// pairs whose vertices belong to no other set, then one `h` bound per
/// peeling order (ascending, then seeded shuffles) over the whole family.
/// Empty for an empty family.
pub fn uncovered_certificates(g: &Graph, fam: &CoverageFamily, seed: u64) -> Result<Vec<UncoveredBound>> {
    fam.check_graph(g)?;
    if fam.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let (s, t) = split_s_t(fam);
    let edges = g_certificate(g, fam, &s, &t)?;
    out.push(UncoveredBound {
        value: edges.len(),
        method: CertificateKind::G,
        edges,
    });
    let ascending = fam.universe.to_vec();
    let orders = std::iter::once(ascending.clone()).chain((0..EXTRA_PEEL_ORDERS).map(|i| {
        let mut order = ascending.clone();
        order.shuffle(&mut rng_from_seed(sub_seed(seed, i)));
        order
    }));
    for order in orders {
        let pair = extract_witness(fam, &fam.universe, &order, None, PeelSteps::UntilExhausted)?;
        let edges = h_certificate(g, &fam.universe, &pair.w_prime_set(g.n()), &pair.label_map(g.n()))?;
        out.push(UncoveredBound {
            value: edges.len(),
            method: CertificateKind::H,
            edges,
        });
    }
    Ok(out)
}

/// A certified number of edges of `G[U]` that stay uncovered however right
/// sides are chosen for `fam`: the largest of [`uncovered_certificates`], or
/// zero with no certificate for an empty family.
pub fn uncovered_lower_bound(g: &Graph, fam: &CoverageFamily, seed: u64) -> Result<UncoveredBound> {
    let mut best = UncoveredBound {
        value: 0,
        method: CertificateKind::None,
        edges: Vec::new(),
    };
    for cert in uncovered_certificates(g, fam, seed)? {
        if cert.value > best.value {
            best = cert;
        }
    }
    Ok(best)
}

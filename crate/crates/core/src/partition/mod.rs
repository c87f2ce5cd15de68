//! Biclique partitions: data model, validation, constructive upper bounds,
//! stars-first normalisation and exact solvers for `tau` and `tau'`.

mod construct;
mod normalize;
mod solver;

pub use construct::{
    largest_induced_biclique, star_decomposition, star_plus_biclique_decomposition,
    InducedBiclique, EXACT_INDUCED_MAX_N,
};
pub use normalize::{is_stars_first, normalize_stars_first};
pub use solver::{tau_exact, tau_prime_exact, Objective, SolveResult, SolveStatus, EXACT_SOLVER_MAX_N};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A complete bipartite pair `(a, b)`: disjoint, nonempty vertex sets.
///
/// Whether every `a`-`b` pair is an edge depends on the host graph and is
/// checked by [`validate_partition`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Biclique {
    a: VertexSet,
    b: VertexSet,
}

impl Biclique {
    pub fn new(a: VertexSet, b: VertexSet) -> Result<Self> {
        if a.universe() != b.universe() {
            return Err(Error::param("biclique sides over different universes"));
        }
        if a.is_empty() || b.is_empty() {
            return Err(Error::param("biclique sides must be nonempty"));
        }
        if !a.is_disjoint(&b) {
            return Err(Error::param(format!(
                "biclique sides intersect in {:?}",
                a.intersection(&b)
            )));
        }
        Ok(Biclique { a, b })
    }

    pub fn from_vertices(n: usize, a: &[usize], b: &[usize]) -> Result<Self> {
        Biclique::new(
            VertexSet::from_vertices(n, a.iter().copied())?,
            VertexSet::from_vertices(n, b.iter().copied())?,
        )
    }

    pub fn a(&self) -> &VertexSet {
        &self.a
    }

    pub fn b(&self) -> &VertexSet {
        &self.b
    }

    pub fn universe(&self) -> usize {
        self.a.universe()
    }

    pub fn edge_count(&self) -> usize {
        self.a.len() * self.b.len()
    }

    /// A star has a side of size one.
    pub fn is_star(&self) -> bool {
        self.a.len() == 1 || self.b.len() == 1
    }

    /// The centre of a star: the `a` vertex when `|a| = 1`, else the `b` vertex.
    pub fn center(&self) -> Option<usize> {
        if self.a.len() == 1 {
            self.a.first()
        } else if self.b.len() == 1 {
            self.b.first()
        } else {
            None
        }
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.a.contains(v) || self.b.contains(v)
    }

    /// Cross pairs `{x, y}` with `x < y`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.a
            .iter()
            .flat_map(move |x| self.b.iter().map(move |y| (x.min(y), x.max(y))))
    }

    /// The same biclique oriented with `|a| <= |b|`, ties broken so that `a`
    /// holds the smaller minimum vertex.
    pub fn canonical(&self) -> Biclique {
        let key = |s: &VertexSet| (s.len(), s.first());
        if key(&self.a) <= key(&self.b) {
            self.clone()
        } else {
            Biclique {
                a: self.b.clone(),
                b: self.a.clone(),
            }
        }
    }
}

impl std::fmt::Debug for Biclique {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?}, {:?})", self.a, self.b)
    }
}

/// An ordered list of bicliques over vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicliquePartition {
    pub n: usize,
    pub parts: Vec<Biclique>,
}

impl BicliquePartition {
    pub fn new(n: usize, parts: Vec<Biclique>) -> Self {
        BicliquePartition { n, parts }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn star_count(&self) -> usize {
        self.parts.iter().filter(|p| p.is_star()).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("partition serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Serialize, Deserialize)]
struct PartRepr {
    a: Vec<usize>,
    b: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PartitionRepr {
    n: usize,
    parts: Vec<PartRepr>,
}

impl Serialize for BicliquePartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PartitionRepr {
            n: self.n,
            parts: self
                .parts
                .iter()
                .map(|p| PartRepr {
                    a: p.a.to_vec(),
                    b: p.b.to_vec(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BicliquePartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PartitionRepr::deserialize(d)?;
        let parts = repr
            .parts
            .iter()
            .map(|p| Biclique::from_vertices(repr.n, &p.a, &p.b))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(BicliquePartition::new(repr.n, parts))
    }
}

/// One defect found by [`validate_partition`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// The partition is over a different vertex count than the graph.
    UniverseMismatch { graph: usize, partition: usize },
    /// Part `part` pairs `u` and `v`, which are not adjacent.
    CoveredNonEdge { part: usize, u: usize, v: usize },
    /// Edge `{u, v}` appears in two parts.
    OverlappingEdge { u: usize, v: usize, parts: [usize; 2] },
    /// Edge `{u, v}` is in no part.
    UncoveredEdge { u: usize, v: usize },
}

/// Checks that `p` is an edge partition of `g` into bicliques, listing every
/// violation found.
pub fn validate_partition(g: &Graph, p: &BicliquePartition) -> std::result::Result<(), Vec<Violation>> {
    if p.n != g.n() || p.parts.iter().any(|b| b.universe() != g.n()) {
        return Err(vec![Violation::UniverseMismatch {
            graph: g.n(),
            partition: p.n,
        }]);
    }
    let mut violations = Vec::new();
    let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, part) in p.parts.iter().enumerate() {
        for (u, v) in part.pairs() {
            if !g.has_edge(u, v) {
                violations.push(Violation::CoveredNonEdge { part: i, u, v });
                continue;
            }
            if let Some(&j) = owner.get(&(u, v)) {
                violations.push(Violation::OverlappingEdge { u, v, parts: [j, i] });
            } else {
                owner.insert((u, v), i);
            }
        }
    }
    for (u, v) in g.edges() {
        if !owner.contains_key(&(u, v)) {
            violations.push(Violation::UncoveredEdge { u, v });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

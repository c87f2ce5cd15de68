//! Size classes of a family and the peeling that extracts a witness for `h`.

use serde::{Deserialize, Serialize};

use super::{CoverageFamily, LabelMap};
use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// Sets of `fam` (by index) in the three size classes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySplit {
    /// `|A| < delta1 * log_b(u)`.
    pub l1: Vec<usize>,
    /// `|A| < delta2 * log_b(u)`.
    pub l2: Vec<usize>,
    /// `|A| == 2`.
    pub l3: Vec<usize>,
    pub delta1: f64,
    pub delta2: f64,
    pub u: usize,
    /// `log_b(u)`.
    pub log_u: f64,
}

fn log_base(x: f64, b: f64) -> f64 {
    x.ln() / b.ln()
}

fn check_base(b: f64) -> Result<()> {
    if !(b.is_finite() && b > 1.0) {
        return Err(Error::param(format!("log base must be finite and above 1, got {b}")));
    }
    Ok(())
}

/// Splits `fam` by set size with `delta1 = min(eps / (4 (3 + eps)), 1/200)`
/// and `delta2 = delta1 / 10^4`, against `log_b |U|`.
///
/// Both size thresholds are strict. The pair class is every set of size two,
/// whether or not it clears the other thresholds.
pub fn classify_family(fam: &CoverageFamily, epsilon: f64, b: f64) -> Result<FamilySplit> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::param(format!("epsilon must be positive, got {epsilon}")));
    }
    check_base(b)?;
    let u = fam.universe.len();
    if u < 3 {
        return Err(Error::param(format!("universe of size {u} is too small, need at least 3")));
    }
    let delta1 = (epsilon / (4.0 * (3.0 + epsilon))).min(1.0 / 200.0);
    let delta2 = delta1 / 1e4;
    let log_u = log_base(u as f64, b);
    let class = |keep: &dyn Fn(usize) -> bool| -> Vec<usize> {
        (0..fam.len()).filter(|&i| keep(fam.sets[i].len())).collect()
    };
    Ok(FamilySplit {
        l1: class(&|s| (s as f64) < delta1 * log_u),
        l2: class(&|s| (s as f64) < delta2 * log_u),
        l3: class(&|s| s == 2),
        delta1,
        delta2,
        u,
        log_u,
    })
}

/// The hypergraph degree below which peeling is guaranteed to run its full
/// course: `(delta1/2 - delta1/3000) * log_b(u)`.
pub fn peeling_degree_bound(delta1: f64, u: usize, b: f64) -> Result<f64> {
    check_base(b)?;
    Ok((delta1 / 2.0 - delta1 / 3000.0) * log_base(u as f64, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeelSteps {
    /// `floor(|W| / log_b(u)^2)` steps.
    Auto { b: f64 },
    Fixed(usize),
    /// Until no vertex of `W` survives.
    UntilExhausted,
}

/// Peeled vertices with their label sets, aligned by position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPair {
    pub w_prime: Vec<usize>,
    pub labels: Vec<Vec<usize>>,
}

impl WitnessPair {
    pub fn w_prime_set(&self, n: usize) -> VertexSet {
        VertexSet::from_vertices(n, self.w_prime.iter().copied()).expect("peeled vertices are in range")
    }

    pub fn label_map(&self, n: usize) -> LabelMap {
        self.w_prime
            .iter()
            .zip(&self.labels)
            .map(|(&v, l)| {
                let set = VertexSet::from_vertices(n, l.iter().copied()).expect("labels are in range");
                (v, set)
            })
            .collect()
    }
}

struct Peeler {
    alive: VertexSet,
    residues: Vec<VertexSet>,
}

impl Peeler {
    fn remove(&mut self, gone: &VertexSet) {
        self.alive.difference_with(gone);
        for r in &mut self.residues {
            r.difference_with(gone);
        }
        self.close();
    }

    /// A residue reduced to one vertex takes that vertex with it, so every
    /// surviving vertex only meets residues of size at least two.
    fn close(&mut self) {
        loop {
            let mut lone = VertexSet::new(self.alive.universe());
            for r in &self.residues {
                if r.len() == 1 {
                    lone.union_with(r);
                }
            }
            if lone.is_empty() {
                return;
            }
            self.alive.difference_with(&lone);
            for r in &mut self.residues {
                r.difference_with(&lone);
            }
        }
    }
}

/// Peels the hypergraph of `l1` along `order` (a permutation of `w`).
///
/// Each step takes the first surviving vertex `v` of `W`, the residual sets
/// `F(v)` through it, and the residual sets `Z` with exactly one vertex
/// outside the union of `F(v)`. The union of `F(v)`, `Z` and `v` itself is
/// then deleted from the hypergraph and from `W`, and `v` is labelled with
/// the smallest vertex other than `v` of each set in `F(v)`.
///
/// A residual set shrunk to a single vertex also deletes that vertex, so
/// every set through a peeled vertex leaves a label behind.
///
/// With `degree_bound`, every vertex of `W` must lie in fewer than that many
/// sets. A fixed or automatic step count that cannot be reached fails with
/// [`Error::PeelingExhausted`].
pub fn extract_witness(
    l1: &CoverageFamily,
    w: &VertexSet,
    order: &[usize],
    degree_bound: Option<f64>,
    steps: PeelSteps,
) -> Result<WitnessPair> {
    let n = l1.universe.universe();
    if w.universe() != n || !w.is_subset(&l1.universe) {
        return Err(Error::param("W must lie inside the universe"));
    }
    let mut in_order = VertexSet::new(n);
    for &v in order {
        if v >= n || !w.contains(v) || !in_order.insert(v) {
            return Err(Error::param("order must list each vertex of W exactly once"));
        }
    }
    if in_order.len() != w.len() {
        return Err(Error::param("order must list each vertex of W exactly once"));
    }
    if let Some(bound) = degree_bound {
        for v in w.iter() {
            let degree = l1.sets.iter().filter(|s| s.contains(v)).count();
            if degree as f64 >= bound {
                return Err(Error::param(format!(
                    "vertex {v} lies in {degree} sets, bound is {bound}"
                )));
            }
        }
    }
    let required = match steps {
        PeelSteps::Auto { b } => {
            check_base(b)?;
            let log_u = log_base(l1.universe.len() as f64, b);
            if !(log_u > 0.0) {
                return Err(Error::param("universe too small for an automatic step count"));
            }
            Some((w.len() as f64 / (log_u * log_u)).floor() as usize)
        }
        PeelSteps::Fixed(q) => Some(q),
        PeelSteps::UntilExhausted => None,
    };

    let mut peeler = Peeler {
        alive: l1.universe.clone(),
        residues: l1.sets.clone(),
    };
    peeler.close();
    let mut pair = WitnessPair {
        w_prime: Vec::new(),
        labels: Vec::new(),
    };
    let mut cursor = 0;
    while required.is_none_or(|q| pair.w_prime.len() < q) {
        while cursor < order.len() && !peeler.alive.contains(order[cursor]) {
            cursor += 1;
        }
        let Some(&v) = order.get(cursor) else {
            return match required {
                Some(q) => Err(Error::PeelingExhausted {
                    completed: pair.w_prime.len(),
                    required: q,
                }),
                None => Ok(pair),
            };
        };
        let through: Vec<&VertexSet> = peeler.residues.iter().filter(|r| r.contains(v)).collect();
        let mut hull = VertexSet::new(n);
        for r in &through {
            hull.union_with(r);
        }
        let mut gone = hull.clone();
        gone.insert(v);
        for r in &peeler.residues {
            if r.difference(&hull).len() == 1 {
                gone.union_with(r);
            }
        }
        let mut label = VertexSet::new(n);
        for r in &through {
            label.insert(r.iter().find(|&x| x != v).expect("residues through v have two vertices"));
        }
        pair.w_prime.push(v);
        pair.labels.push(label.to_vec());
        peeler.remove(&gone);
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, sets: &[&[usize]]) -> CoverageFamily {
        let sets: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
        CoverageFamily::over_all(n, &sets).unwrap()
    }

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, v.iter().copied()).unwrap()
    }

    #[test]
    fn deltas_for_unit_epsilon() {
        let split = classify_family(&fam(5, &[]), 1.0, 2.0).unwrap();
        assert_eq!(split.delta1, 1.0 / 200.0);
        assert_eq!(split.delta2, 1.0 / 2_000_000.0);
        let split = classify_family(&fam(5, &[]), 0.01, 2.0).unwrap();
        assert!((split.delta1 - 0.01 / (4.0 * 3.01)).abs() < 1e-15);
    }

    #[test]
    fn pairs_reach_every_class_when_the_log_is_huge() {
        // log_b(u) ~ 1.6e9 for b just above 1.
        let f = fam(5, &[&[0, 1], &[1, 2, 3]]);
        let split = classify_family(&f, 1.0, 1.0 + 1e-9).unwrap();
        assert_eq!(split.l1, vec![0, 1]);
        assert_eq!(split.l2, vec![0, 1]);
        assert_eq!(split.l3, vec![0]);
    }

    #[test]
    fn boundary_size_is_excluded() {
        let u = 200;
        let b = 2.0;
        let log_u = (u as f64).log2();
        let size = (log_u / 200.0).ceil() as usize;
        let f = CoverageFamily::over_all(u, &[(0..size).collect()]).unwrap();
        let split = classify_family(&f, 1.0, b).unwrap();
        assert!(split.l1.is_empty());
        let f = CoverageFamily::over_all(u, &[vec![0, 1]]).unwrap();
        let split = classify_family(&f, 1.0, b).unwrap();
        assert!(split.l1.is_empty());
        assert_eq!(split.l3, vec![0]);
    }

    #[test]
    fn classifier_rejects_bad_input() {
        assert!(classify_family(&fam(2, &[]), 1.0, 2.0).is_err());
        assert!(classify_family(&fam(5, &[]), 0.0, 2.0).is_err());
        assert!(classify_family(&fam(5, &[]), 1.0, 1.0).is_err());
    }

    #[test]
    fn two_step_peel() {
        let f = fam(5, &[&[1, 2], &[3, 4]]);
        let w = set(5, &[1, 3]);
        let pair = extract_witness(&f, &w, &[1, 3], None, PeelSteps::Fixed(2)).unwrap();
        assert_eq!(pair.w_prime, vec![1, 3]);
        assert_eq!(pair.labels, vec![vec![2], vec![4]]);
    }

    #[test]
    fn empty_family_keeps_order() {
        let f = fam(6, &[]);
        let w = set(6, &[0, 2, 4, 5]);
        let pair = extract_witness(&f, &w, &[5, 0, 4, 2], None, PeelSteps::Fixed(3)).unwrap();
        assert_eq!(pair.w_prime, vec![5, 0, 4]);
        assert!(pair.labels.iter().all(Vec::is_empty));
    }

    #[test]
    fn peel_failure_reports_progress() {
        let f = fam(4, &[&[1, 2, 3]]);
        let w = set(4, &[1, 2]);
        let err = extract_witness(&f, &w, &[1, 2], None, PeelSteps::Fixed(2)).unwrap_err();
        assert!(matches!(err, Error::PeelingExhausted { completed: 1, required: 2 }));
        let pair = extract_witness(&f, &w, &[1, 2], None, PeelSteps::UntilExhausted).unwrap();
        assert_eq!(pair.w_prime, vec![1]);
    }

    #[test]
    fn degree_bound_is_enforced() {
        let f = fam(4, &[&[0, 1], &[0, 2]]);
        let w = set(4, &[0]);
        assert!(extract_witness(&f, &w, &[0], Some(2.0), PeelSteps::Fixed(1)).is_err());
        assert!(extract_witness(&f, &w, &[0], Some(2.5), PeelSteps::Fixed(1)).is_ok());
    }

    #[test]
    fn automatic_step_count() {
        // 16 vertices, log2(16)^2 = 16, so one step.
        let f = fam(16, &[]);
        let w = VertexSet::full(16);
        let pair = extract_witness(&f, &w, &w.to_vec(), None, PeelSteps::Auto { b: 2.0 }).unwrap();
        assert_eq!(pair.w_prime.len(), 1);
    }

    #[test]
    fn order_must_match_w() {
        let f = fam(4, &[]);
        let w = set(4, &[0, 1]);
        assert!(extract_witness(&f, &w, &[0], None, PeelSteps::UntilExhausted).is_err());
        assert!(extract_witness(&f, &w, &[0, 0], None, PeelSteps::UntilExhausted).is_err());
    }

    #[test]
    fn labels_are_disjoint_and_meet_every_set() {
        use rand::{seq::SliceRandom, Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.random_range(3..=12);
            let sets: Vec<Vec<usize>> = (0..rng.random_range(0..=6))
                .map(|_| {
                    let mut s: Vec<usize> = (0..n).collect();
                    s.shuffle(&mut rng);
                    s.truncate(rng.random_range(2..=4).min(n));
                    s
                })
                .collect();
            let f = CoverageFamily::over_all(n, &sets).unwrap();
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let w = VertexSet::full(n);
            let pair = extract_witness(&f, &w, &order, None, PeelSteps::UntilExhausted).unwrap();
            let mut seen = pair.w_prime_set(n);
            for (i, (&v, l)) in pair.w_prime.iter().zip(&pair.labels).enumerate() {
                for &z in l {
                    assert!(seen.insert(z), "label vertex {z} reused");
                }
                for s in f.sets.iter().filter(|s| s.contains(v)) {
                    assert!(l.iter().any(|&z| s.contains(z)), "step {i}: set through {v} has no label");
                }
            }
        }
    }
}

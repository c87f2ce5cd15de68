use bipartition::graph::{independence_number_exact, is_independent, sample_gnp, Effort};
use bipartition::partition::{
    is_stars_first, largest_induced_biclique, normalize_stars_first, star_decomposition,
    star_plus_biclique_decomposition, tau_exact, tau_prime_exact, validate_partition, Biclique, BicliquePartition,
    Objective, SolveStatus,
};
use bipartition::spectral::graham_pollak_lower_bound;
use bipartition::{GnpSpec, Graph, SearchStatus, VertexSet};
use proptest::prelude::*;
use rand::Rng;

fn graph_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, 0.01f64..=1.0, any::<u64>())
        .prop_map(|(n, p, seed)| sample_gnp(&GnpSpec::new(n, p, seed).unwrap()).unwrap())
}

/// A random biclique partition: greedily peel random bicliques off the
/// remaining edges until none are left.
fn random_partition(g: &Graph, seed: u64) -> BicliquePartition {
    let n = g.n();
    let mut rng = bipartition::seeding::rng_from_seed(seed);
    let mut left: Vec<VertexSet> = (0..n).map(|v| g.neighbors(v).clone()).collect();
    let mut parts = Vec::new();
    loop {
        let Some((u, v)) = (0..n).flat_map(|u| left[u].iter().map(move |v| (u, v))).find(|&(u, v)| u < v) else {
            break;
        };
        let mut a = VertexSet::from_vertices(n, [u]).unwrap();
        let mut b = VertexSet::from_vertices(n, [v]).unwrap();
        for w in 0..n {
            if a.contains(w) || b.contains(w) || rng.random_bool(0.5) {
                continue;
            }
            if b.iter().all(|x| left[w].contains(x)) {
                a.insert(w);
            } else if a.iter().all(|x| left[w].contains(x)) {
                b.insert(w);
            }
        }
        for x in a.iter() {
            for y in b.iter() {
                left[x].remove(y);
                left[y].remove(x);
            }
        }
        parts.push(Biclique::new(a, b).unwrap());
    }
    BicliquePartition::new(n, parts)
}

#[test]
fn constructions_are_valid_partitions() {
    for i in 0..500u64 {
        let n = 1 + (i as usize * 7) % 30;
        let p = ((i % 10) + 1) as f64 / 10.0;
        let g = sample_gnp(&GnpSpec::new(n, p, i).unwrap()).unwrap();
        let alpha = independence_number_exact(&g, u64::MAX);
        assert!(is_independent(&g, &alpha.witness));
        let stars = star_decomposition(&g, &alpha.witness).unwrap();
        assert_eq!(validate_partition(&g, &stars), Ok(()), "instance {i}");
        assert!(stars.len() <= n - alpha.size);

        if n <= 18 {
            let beta = largest_induced_biclique(&g, Effort::Exact, u64::MAX, i).unwrap();
            assert_eq!(beta.status, SearchStatus::Exact);
            if let Some(ab) = &beta.biclique {
                let mixed = star_plus_biclique_decomposition(&g, ab).unwrap();
                assert_eq!(validate_partition(&g, &mixed), Ok(()), "instance {i}");
                assert!(mixed.len() + beta.size <= n + 1);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tau_is_sandwiched(g in graph_strategy(1, 10)) {
        let r = tau_exact(&g, u64::MAX).unwrap();
        prop_assert_eq!(r.status, SolveStatus::Exact);
        let tau = r.value.finite().unwrap();
        let witness = r.witness.unwrap();
        prop_assert_eq!(validate_partition(&g, &witness), Ok(()));
        prop_assert_eq!(witness.len(), tau);

        let alpha = independence_number_exact(&g, u64::MAX).size;
        let beta = largest_induced_biclique(&g, Effort::Exact, u64::MAX, 0).unwrap().size;
        let n = g.n();
        prop_assert!(graham_pollak_lower_bound(&g).unwrap() <= tau);
        prop_assert!(tau <= n - alpha);
        if g.m() > 0 {
            prop_assert!(tau <= n + 1 - beta);
            prop_assert!(tau < n);
        }
    }

    #[test]
    fn tau_prime_dominates_tau(g in graph_strategy(1, 8)) {
        let tau = tau_exact(&g, u64::MAX).unwrap().value.finite().unwrap();
        let r = tau_prime_exact(&g, u64::MAX).unwrap();
        prop_assert_eq!(r.status, SolveStatus::Exact);
        match r.value {
            Objective::Finite(t) if g.n() > 2 => {
                let w = r.witness.unwrap();
                prop_assert_eq!(validate_partition(&g, &w), Ok(()));
                prop_assert!(w.parts.iter().all(|b| b.a().len() >= 2 && b.b().len() >= 2));
                prop_assert!(t >= tau);
            }
            Objective::Finite(t) => prop_assert_eq!(t, 0),
            Objective::Infinite => prop_assert!(g.m() > 0),
        }
    }

    #[test]
    fn normalization_postconditions(g in graph_strategy(2, 14), seed in any::<u64>()) {
        let p = random_partition(&g, seed);
        prop_assert_eq!(validate_partition(&g, &p), Ok(()));
        let q = normalize_stars_first(&g, &p).unwrap();
        prop_assert_eq!(validate_partition(&g, &q), Ok(()));
        prop_assert!(is_stars_first(&q));
        prop_assert!(q.len() <= p.len());
        prop_assert!(q.star_count() >= p.star_count());
        prop_assert_eq!(normalize_stars_first(&g, &q).unwrap(), q);
    }

    #[test]
    fn partition_json_round_trip(g in graph_strategy(2, 14), seed in any::<u64>()) {
        let p = random_partition(&g, seed);
        prop_assert_eq!(BicliquePartition::from_json(&p.to_json()).unwrap(), p);
    }
}

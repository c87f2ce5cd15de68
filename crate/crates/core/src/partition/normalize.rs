use std::collections::{BTreeSet, HashMap};

use super::{validate_partition, Biclique, BicliquePartition};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

fn star_centers(p: &BicliquePartition) -> BTreeSet<usize> {
    p.parts.iter().filter_map(Biclique::center).collect()
}

/// Stars come first and no non-star part touches a star centre.
pub fn is_stars_first(p: &BicliquePartition) -> bool {
    let first_non_star = p.parts.iter().position(|b| !b.is_star()).unwrap_or(p.len());
    if p.parts[first_non_star..].iter().any(Biclique::is_star) {
        return false;
    }
    let centers = star_centers(p);
    p.parts[first_non_star..]
        .iter()
        .all(|b| !centers.iter().any(|&c| b.contains_vertex(c)))
}

/// Rewrites a valid partition so that stars come first and every non-star
/// part avoids all star centres, without adding parts or losing stars.
///
/// Whenever a non-star part contains a star centre `c` on one side, the edges
/// from `c` to the other side move into the star at `c` and `c` leaves the
/// part. A part reduced to a single vertex on one side becomes a star; if
/// its centre already has a star the two are merged. This repeats until no
/// non-star part touches a centre. A partition that is already in this form
/// is returned unchanged.
pub fn normalize_stars_first(g: &Graph, p: &BicliquePartition) -> Result<BicliquePartition> {
    if let Err(violations) = validate_partition(g, p) {
        return Err(Error::param(format!(
            "input is not a valid partition: {} violation(s), first {:?}",
            violations.len(),
            violations[0]
        )));
    }
    if is_stars_first(p) {
        return Ok(p.clone());
    }
    let n = p.n;
    let mut stars: Vec<(usize, VertexSet)> = Vec::new();
    let mut star_at: HashMap<usize, usize> = HashMap::new();
    let mut others: Vec<Option<(VertexSet, VertexSet)>> = Vec::new();
    for part in &p.parts {
        match part.center() {
            Some(c) => {
                let leaves = if part.a().len() == 1 && part.a().contains(c) {
                    part.b().clone()
                } else {
                    part.a().clone()
                };
                star_at.entry(c).or_insert(stars.len());
                stars.push((c, leaves));
            }
            None => others.push(Some((part.a().clone(), part.b().clone()))),
        }
    }

    let mut changed = true;
    while changed {
        changed = false;
        for slot in others.iter_mut() {
            let Some((a, b)) = slot.as_mut() else { continue };
            for flip in [false, true] {
                let (side, other) = if flip { (&mut *b, &mut *a) } else { (&mut *a, &mut *b) };
                let hits: Vec<usize> = side.iter().filter(|v| star_at.contains_key(v)).collect();
                for c in hits {
                    stars[star_at[&c]].1.union_with(other);
                    side.remove(c);
                    changed = true;
                }
            }
            let (sa, sb) = (a.len(), b.len());
            if sa == 0 || sb == 0 {
                *slot = None;
            } else if sa == 1 || sb == 1 {
                let (c, leaves) = if sa == 1 {
                    (a.first().unwrap(), b.clone())
                } else {
                    (b.first().unwrap(), a.clone())
                };
                match star_at.get(&c) {
                    Some(&i) => stars[i].1.union_with(&leaves),
                    None => {
                        star_at.insert(c, stars.len());
                        stars.push((c, leaves));
                    }
                }
                *slot = None;
                changed = true;
            }
        }
    }

    let mut parts = Vec::with_capacity(stars.len() + others.len());
    for (c, leaves) in stars {
        let mut center = VertexSet::new(n);
        center.insert(c);
        parts.push(Biclique::new(center, leaves)?);
    }
    for (a, b) in others.into_iter().flatten() {
        parts.push(Biclique::new(a, b)?);
    }
    Ok(BicliquePartition::new(n, parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, sample_gnp, GnpSpec};

    fn part(n: usize, a: &[usize], b: &[usize]) -> Biclique {
        Biclique::from_vertices(n, a, b).unwrap()
    }

    fn check(g: &Graph, input: &BicliquePartition) -> BicliquePartition {
        let out = normalize_stars_first(g, input).unwrap();
        assert_eq!(validate_partition(g, &out), Ok(()));
        assert!(out.len() <= input.len());
        assert!(out.star_count() >= input.star_count());
        assert!(is_stars_first(&out));
        out
    }

    #[test]
    fn normal_form_is_unchanged() {
        let g = complete(3);
        let p = BicliquePartition::new(3, vec![part(3, &[0], &[1, 2]), part(3, &[1], &[2])]);
        assert_eq!(check(&g, &p), p);
    }

    #[test]
    fn reorders_stars_first() {
        // K4 = K_{2,2} on {0,1}x{2,3} plus edges 01 and 23
        let g = complete(4);
        let p = BicliquePartition::new(
            4,
            vec![part(4, &[0, 1], &[2, 3]), part(4, &[0], &[1]), part(4, &[2], &[3])],
        );
        let out = check(&g, &p);
        assert!(out.parts.iter().all(Biclique::is_star));
    }

    #[test]
    fn moves_centre_rows_into_stars() {
        // star at 0 covering 0-1, and K_{2,3} {0,1}x{2,3,4} which touches centre 0
        let g = Graph::from_edges(
            5,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
        )
        .unwrap();
        let p = BicliquePartition::new(5, vec![part(5, &[0], &[1]), part(5, &[0, 1], &[2, 3, 4])]);
        let out = check(&g, &p);
        assert_eq!(out.len(), 2);
        assert_eq!(out.parts[0].b().to_vec(), vec![1, 2, 3, 4]);
        assert_eq!(out.parts[1].center(), Some(1));
    }

    #[test]
    fn rejects_invalid_input() {
        let p = BicliquePartition::new(3, vec![part(3, &[0], &[1, 2])]);
        assert!(normalize_stars_first(&complete(3), &p).is_err());
    }

    #[test]
    fn enumerated_three_part_partitions_of_k4() {
        // every valid 3-part partition of K4 built from bicliques on 4 vertices
        let g = complete(4);
        let mut bicliques = Vec::new();
        for a in 1u32..16 {
            for b in 1u32..16 {
                if a & b == 0 && a < b {
                    let av: Vec<usize> = (0..4).filter(|i| a >> i & 1 == 1).collect();
                    let bv: Vec<usize> = (0..4).filter(|i| b >> i & 1 == 1).collect();
                    bicliques.push(part(4, &av, &bv));
                }
            }
        }
        let mut seen = 0;
        for i in 0..bicliques.len() {
            for j in 0..bicliques.len() {
                for k in 0..bicliques.len() {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let p = BicliquePartition::new(
                        4,
                        vec![bicliques[i].clone(), bicliques[j].clone(), bicliques[k].clone()],
                    );
                    if validate_partition(&g, &p).is_ok() {
                        seen += 1;
                        check(&g, &p);
                    }
                }
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn random_partitions_from_bicliques() {
        use crate::partition::{star_plus_biclique_decomposition, largest_induced_biclique};
        use crate::graph::Effort;
        for seed in 0..30 {
            let g = sample_gnp(&GnpSpec::new(10, 0.5, seed).unwrap()).unwrap();
            let Some(ab) = largest_induced_biclique(&g, Effort::Exact, u64::MAX, 0).unwrap().biclique
            else {
                continue;
            };
            let mut p = star_plus_biclique_decomposition(&g, &ab).unwrap();
            // put the big biclique first so normalisation has work to do
            p.parts.rotate_right(1);
            check(&g, &p);
        }
        let g = complete_bipartite(3, 3);
        let p = BicliquePartition::new(6, vec![part(6, &[0, 1, 2], &[3, 4, 5])]);
        assert_eq!(check(&g, &p), p);
    }
}

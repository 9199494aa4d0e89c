//! Explicit coverings: the `n - 1` star decomposition, the `⌈3n/4⌉`
//! 2-star-forest cover, the geometric four-cluster decomposition and the
//! `n/2 + ⌈n/(2k)⌉` k-star-forest cover.

use thiserror::Error;

use crate::geom::{ClusteredPointSet, PointSet};
use crate::model::{verify_plane, Covering, Edge, Star, StarForest, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("n = {0} is too small; at least 4 vertices are required")]
    SizeTooSmall(usize),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("forest {forest} is not plane: {first} crosses {second}")]
    PlanarityFailure { forest: usize, first: Edge, second: Edge },
}

/// Forest `i` is the star at vertex `i` with leaves `i+1..=n`.
pub fn star_decomposition(n: usize) -> Covering {
    let forests = (1..n).map(|i| StarForest::new(vec![Star::new(i, i + 1..=n)])).collect();
    Covering::new(n, forests)
}

/// The four blocks `V1..V4` and the surjections used by
/// [`two_star_forest_cover`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition4 {
    pub blocks: [Vec<usize>; 4],
}

impl Partition4 {
    /// Contiguous blocks with `⌊n/4⌋ <= |V1| <= |V2| <= |V3| <= |V4| <= ⌈n/4⌉`.
    pub fn balanced(n: usize) -> Self {
        let (q, r) = (n / 4, n % 4);
        let mut start = 1;
        let blocks = std::array::from_fn(|i| {
            let len = q + usize::from(i >= 4 - r);
            let block = (start..start + len).collect();
            start += len;
            block
        });
        Partition4 { blocks }
    }

    /// Image of the j-th element of a source block under the canonical
    /// surjection onto block `to` (j-th element, wrapping). Onto whenever the
    /// source block is at least as large as `to`.
    pub fn surjection(&self, to: usize, j: usize) -> usize {
        let target = &self.blocks[to];
        target[j % target.len()]
    }
}

fn union_without(blocks: &[&Vec<usize>], center: usize) -> Vec<usize> {
    blocks.iter().flat_map(|b| b.iter().copied()).filter(|&v| v != center).collect()
}

fn two_star(c1: usize, l1: Vec<usize>, c2: usize, l2: Vec<usize>) -> StarForest {
    StarForest::new(vec![Star::new(c1, l1), Star::new(c2, l2)])
}

/// Covers `K_n` (`n >= 4`) by exactly `⌈3n/4⌉` 2-star-forests in three
/// families. Edges covered by more than one family are kept.
pub fn two_star_forest_cover(n: usize) -> Result<Covering, ConstructionError> {
    if n < 4 {
        return Err(ConstructionError::SizeTooSmall(n));
    }
    let p = Partition4::balanced(n);
    let [v1, v2, v3, v4] = &p.blocks;
    let mut forests = Vec::with_capacity(n - n / 4);
    // u in V2 with V2 ∪ V3, paired with f(u) in V1 with V1 ∪ V4
    for (j, &u) in v2.iter().enumerate() {
        let fu = p.surjection(0, j);
        forests.push(two_star(u, union_without(&[v2, v3], u), fu, union_without(&[v1, v4], fu)));
    }
    // w in V4 with V4 ∪ V2, paired with g(w) in V3 with V3 ∪ V1
    for (j, &w) in v4.iter().enumerate() {
        let gw = p.surjection(2, j);
        forests.push(two_star(w, union_without(&[v4, v2], w), gw, union_without(&[v3, v1], gw)));
    }
    // x in V3 with V4, paired with h(x) in V1 with V2
    for (j, &x) in v3.iter().enumerate() {
        let hx = p.surjection(0, j);
        forests.push(two_star(x, v4.clone(), hx, v2.clone()));
    }
    Ok(Covering::new(n, forests))
}

/// The `3k` plane star-forests on four clusters, validated against the
/// actual coordinates.
pub fn four_cluster_forests(cps: &ClusteredPointSet) -> Result<Covering, ConstructionError> {
    let k = cps.cluster_size();
    let vertex_clusters: Vec<Vec<usize>> =
        cps.clusters().iter().map(|c| c.iter().map(|&i| i + 1).collect()).collect();
    let a = |c: usize| &vertex_clusters[c];
    let star_to = |center: usize, c1: usize, c2: usize| {
        Star::new(center, a(c1).iter().chain(a(c2)).copied().filter(|&v| v != center))
    };
    // (center cluster, leaf cluster) for each of the two stars per family
    let families = [[(0, 1), (2, 3)], [(1, 2), (3, 0)], [(0, 2), (1, 3)]];
    let mut forests = Vec::with_capacity(3 * k);
    for [(c1, l1), (c2, l2)] in families {
        for i in 0..k {
            forests.push(StarForest::new(vec![
                star_to(a(c1)[i], c1, l1),
                star_to(a(c2)[i], c2, l2),
            ]));
        }
    }
    let ps: PointSet = cps.base().clone();
    for (forest, f) in forests.iter().enumerate() {
        if let Some(Violation::Crossing { first, second, .. }) = verify_plane(f, &ps).violations.first() {
            return Err(ConstructionError::PlanarityFailure { forest, first: *first, second: *second });
        }
    }
    Covering::new(4 * k, forests)
        .with_geometry(ps)
        .map_err(|e| ConstructionError::BadParameters(e.to_string()))
}

/// Covers `K_n` (`n` even, `n >= 2k >= 4`) by `n/2 + ⌈n/(2k)⌉`
/// k-star-forests: `n/2` two-center forests plus the perfect matching
/// `{v_i v_{i+n/2}}` cut into blocks of `k` consecutive edges.
pub fn k_star_forest_cover(n: usize, k: usize) -> Result<Covering, ConstructionError> {
    if !n.is_multiple_of(2) || k < 2 || n < 2 * k {
        return Err(ConstructionError::BadParameters(format!(
            "need n even and n >= 2k >= 4, got n = {n}, k = {k}"
        )));
    }
    let t = n / 2;
    let v = |i: usize| (i - 1) % n + 1;
    let mut forests: Vec<StarForest> = (1..=t)
        .map(|i| {
            two_star(v(i), (i + 1..i + t).map(v).collect(), v(i + t), (i + 1..i + t).map(|j| v(j + t)).collect())
        })
        .collect();
    let matching: Vec<usize> = (1..=t).collect();
    forests.extend(
        matching
            .chunks(k)
            .map(|block| StarForest::new(block.iter().map(|&i| Star::new(i, [i + t])).collect())),
    );
    Ok(Covering::new(n, forests))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{gen_convex, gen_four_cluster};
    use crate::model::{component_count, verify_covering, verify_decomposition};

    fn ceil_div(a: usize, b: usize) -> usize {
        a.div_ceil(b)
    }

    #[test]
    fn star_decomposition_examples() {
        let c = star_decomposition(2);
        assert_eq!(c.forest_count(), 1);
        assert_eq!(c.forests[0].edges().collect::<Vec<_>>(), vec![Edge::new(1, 2)]);

        let c = star_decomposition(4);
        let degrees: Vec<usize> = c.forests.iter().map(|f| f.edge_count()).collect();
        assert_eq!(degrees, vec![3, 2, 1]);
        assert!(verify_decomposition(&c).is_valid());

        let c = star_decomposition(8).with_geometry(gen_convex(8).unwrap()).unwrap();
        assert!(verify_decomposition(&c).is_valid());
        assert_eq!(star_decomposition(1).forest_count(), 0);
    }

    #[test]
    fn partition_sizes() {
        for n in 4..=20 {
            let p = Partition4::balanced(n);
            let sizes: Vec<usize> = p.blocks.iter().map(Vec::len).collect();
            assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "{sizes:?}");
            assert_eq!(sizes[0], n / 4);
            assert_eq!(sizes[3], ceil_div(n, 4));
            let all: Vec<usize> = p.blocks.iter().flatten().copied().collect();
            assert_eq!(all, (1..=n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn two_star_examples() {
        assert_eq!(two_star_forest_cover(4).unwrap().forest_count(), 3);
        assert_eq!(two_star_forest_cover(5).unwrap().forest_count(), 4);
        let c = two_star_forest_cover(8).unwrap();
        assert_eq!(c.forest_count(), 6);
        assert!(verify_covering(&c).is_valid());
        assert!(c.forests.iter().all(|f| component_count(f) <= 2));
        assert_eq!(two_star_forest_cover(3), Err(ConstructionError::SizeTooSmall(3)));
    }

    #[test]
    fn two_star_projection_of_twelve() {
        let d = two_star_forest_cover(12).unwrap().project_to_decomposition().unwrap();
        assert_eq!(d.forest_count(), 9);
        assert!(verify_decomposition(&d).is_valid());
        assert!(d.forests.iter().all(|f| component_count(f) <= 2));
    }

    #[test]
    fn four_cluster_examples() {
        for (k, forests) in [(1, 3), (2, 6), (4, 12)] {
            let c = four_cluster_forests(&gen_four_cluster(k).unwrap()).unwrap();
            assert_eq!(c.forest_count(), forests);
            assert!(verify_covering(&c).is_valid(), "k = {k}: {}", verify_covering(&c));
        }
    }

    #[test]
    fn k_star_examples() {
        let c = k_star_forest_cover(8, 2).unwrap();
        assert_eq!(c.forest_count(), 6);
        let c = k_star_forest_cover(12, 3).unwrap();
        assert_eq!(c.forest_count(), 8);
        let c = k_star_forest_cover(6, 3).unwrap();
        assert_eq!(c.forest_count(), 4);
        assert!(verify_covering(&c).is_valid());
        assert!(k_star_forest_cover(7, 2).is_err());
        assert!(k_star_forest_cover(6, 4).is_err());
        assert!(k_star_forest_cover(6, 1).is_err());
    }
}

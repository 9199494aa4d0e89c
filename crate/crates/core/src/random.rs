//! Seeded random coverings of convex `K_n` for stress-testing the recoloring
//! engine.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{gen_convex, segments_cross, GeomError, PointSet};
use crate::model::{Covering, Edge, Star, StarForest};
use crate::recolor::move_star;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomCoveringParams {
    /// Empty forests appended to the initial `n - 1` stars.
    pub extra_forests: usize,
    /// Number of random moves attempted; illegal ones are skipped.
    pub moves: usize,
}

impl RandomCoveringParams {
    pub fn for_size(n: usize) -> Self {
        RandomCoveringParams { extra_forests: 0, moves: 30 * n }
    }
}

/// A valid covering of `gen_convex(n)` by plane star-forests: a star
/// decomposition in a random center order, then a random walk of
/// validity-preserving moves. The seed is recorded on the result.
pub fn random_covering(n: usize, seed: u64) -> Result<Covering, GeomError> {
    random_covering_with(n, seed, RandomCoveringParams::for_size(n))
}

pub fn random_covering_with(n: usize, seed: u64, params: RandomCoveringParams) -> Result<Covering, GeomError> {
    let ps = gen_convex(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(&mut rng);
    let mut forests: Vec<StarForest> = (0..n.saturating_sub(1))
        .map(|i| StarForest::new(vec![Star::new(order[i], order[i + 1..].iter().copied())]))
        .collect();
    forests.extend(std::iter::repeat_with(StarForest::default).take(params.extra_forests));
    let mut c = Covering::new(n, forests).with_geometry(ps).expect("sizes match");
    c.seed = Some(seed);
    if c.forests.len() < 2 {
        return Ok(c);
    }
    for _ in 0..params.moves {
        match rng.gen_range(0..6) {
            0 | 1 => try_move_star(&mut c, &mut rng),
            2 => flip_single_edge(&mut c, &mut rng),
            3 => try_duplicate(&mut c, &mut rng),
            4 => try_drop(&mut c, &mut rng),
            _ => list_singleton(&mut c, &mut rng),
        }
    }
    Ok(c)
}

fn try_move_star(c: &mut Covering, rng: &mut ChaCha8Rng) {
    let t = c.forests.len();
    let from = rng.gen_range(0..t);
    let to = (from + rng.gen_range(1..t)) % t;
    let Some(star) = c.forests[from].stars.choose(rng).cloned() else { return };
    if let Ok(next) = move_star(c, from, to, &star) {
        *c = next;
    }
}

fn flip_single_edge(c: &mut Covering, rng: &mut ChaCha8Rng) {
    let f = rng.gen_range(0..c.forests.len());
    let singles: Vec<usize> = (0..c.forests[f].stars.len())
        .filter(|&i| c.forests[f].stars[i].leaves.len() == 1)
        .collect();
    if let Some(&i) = singles.choose(rng) {
        let s = &mut c.forests[f].stars[i];
        let leaf = *s.leaves.first().expect("one leaf");
        *s = Star::new(leaf, [s.center]);
    }
}

/// Whether `v` may gain an edge in `f` as a leaf (`as_center = false`) or as
/// the center of its star.
fn can_take(f: &StarForest, v: usize, as_center: bool) -> bool {
    match f.star_of(v) {
        None => true,
        Some(i) => {
            let s = &f.stars[i];
            s.is_singleton() || (as_center && s.center == v)
        }
    }
}

fn crosses(f: &StarForest, e: Edge, ps: &PointSet) -> bool {
    f.edges().any(|g| segments_cross(e, g, ps).unwrap_or(true))
}

fn try_duplicate(c: &mut Covering, rng: &mut ChaCha8Rng) {
    let n = c.n;
    let u = rng.gen_range(1..=n);
    let v = (u + rng.gen_range(1..n) - 1) % n + 1;
    let f = rng.gen_range(0..c.forests.len());
    let (center, leaf) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
    let e = Edge::new(center, leaf);
    let forest = &c.forests[f];
    let ps = c.geometry.as_ref().expect("random coverings carry geometry");
    if forest.contains_edge(e) || !can_take(forest, center, true) || !can_take(forest, leaf, false) || crosses(forest, e, ps) {
        return;
    }
    let forest = &mut c.forests[f];
    forest.remove_singleton(center);
    forest.remove_singleton(leaf);
    forest.add_leaf(center, leaf);
}

fn try_drop(c: &mut Covering, rng: &mut ChaCha8Rng) {
    let f = rng.gen_range(0..c.forests.len());
    let shared: Vec<Edge> = c.forests[f].edges().filter(|&e| c.multiplicity(e) >= 2).collect();
    if let Some(&e) = shared.choose(rng) {
        c.forests[f].remove_edge(e);
    }
}

fn list_singleton(c: &mut Covering, rng: &mut ChaCha8Rng) {
    let f = rng.gen_range(0..c.forests.len());
    let v = rng.gen_range(1..=c.n);
    if c.forests[f].star_of(v).is_none() {
        c.forests[f].stars.push(Star::singleton(v));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::verify_covering;

    #[test]
    fn seeded_and_valid() {
        for n in 2..=9 {
            for seed in 0..20 {
                let c = random_covering(n, seed).unwrap();
                assert!(verify_covering(&c).is_valid(), "n = {n}, seed = {seed}: {}", verify_covering(&c));
                assert_eq!(c.forest_count(), n - 1);
                assert_eq!(c.seed, Some(seed));
            }
        }
        assert_eq!(random_covering(7, 3).unwrap(), random_covering(7, 3).unwrap());
        assert_ne!(random_covering(7, 3).unwrap(), random_covering(7, 4).unwrap());
    }

    #[test]
    fn extra_forests_get_used() {
        let params = RandomCoveringParams { extra_forests: 2, moves: 400 };
        let c = random_covering_with(8, 11, params).unwrap();
        assert_eq!(c.forest_count(), 9);
        assert!(verify_covering(&c).is_valid());
        assert!(c.forests[7..].iter().any(|f| f.edge_count() > 0));
    }
}

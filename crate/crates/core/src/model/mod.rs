//! Centered stars, star-forests and coverings of `K_n`.
//!
//! Vertices are 1-based (`1..=n`), following the clockwise labeling
//! `P_1, ..., P_n` of a convex polygon. Forest indices are positions in
//! [`Covering::forests`] and therefore 0-based.

mod analysis;
mod verify;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::PointSet;

pub use analysis::{center_graph, component_count, CenterGraph, CenterGraphComponent};
pub use verify::{
    verify_covering, verify_decomposition, verify_plane, verify_star_forest, ValidationReport,
    Violation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("covering has no geometry attached")]
    GeometryMissing,
    #[error("covering is incomplete: edge {0} is not covered")]
    IncompleteCovering(Edge),
    #[error("forest {0} does not have exactly two centers")]
    NotTwoCenters(usize),
    #[error("vertex {vertex} is outside 1..={n}")]
    IndexOutOfRange { vertex: usize, n: usize },
    #[error("geometry has {points} points but the covering has n = {n}")]
    GeometrySizeMismatch { n: usize, points: usize },
}

/// An undirected edge `{u, v}` stored with `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Panics on a loop; use [`Edge::try_new`] for untrusted input.
    pub fn new(a: usize, b: usize) -> Self {
        Self::try_new(a, b).expect("an edge needs two distinct vertices")
    }

    pub fn try_new(a: usize, b: usize) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Some(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn has(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    /// All edges of `K_n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Edge> {
        (1..=n).flat_map(move |u| (u + 1..=n).map(move |v| Edge { u, v }))
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}P{}", self.u, self.v)
    }
}

impl TryFrom<[usize; 2]> for Edge {
    type Error = String;

    fn try_from([a, b]: [usize; 2]) -> Result<Self, Self::Error> {
        Edge::try_new(a, b).ok_or_else(|| format!("loop at vertex {a}"))
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.u, e.v]
    }
}

/// The `k`-edge `P_a P_{a+k}` of a convex `n`-gon, indices taken mod `n`.
///
/// Every edge has two representations, `(a, k)` and `(a + k, n - k)`; they are
/// distinct support obligations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRep {
    pub a: usize,
    pub k: usize,
}

impl EdgeRep {
    pub fn new(a: usize, k: usize) -> Self {
        EdgeRep { a, k }
    }

    /// Whether `1 <= a <= n` and `1 < k < n`.
    pub fn is_valid(&self, n: usize) -> bool {
        (1..=n).contains(&self.a) && 1 < self.k && self.k < n
    }

    /// `P_{a+offset}` with 1-based wraparound.
    pub fn vertex(&self, n: usize, offset: usize) -> usize {
        wrap(n, self.a + offset)
    }

    pub fn edge(&self, n: usize) -> Edge {
        Edge::new(self.a, self.vertex(n, self.k))
    }

    pub fn complement(&self, n: usize) -> EdgeRep {
        EdgeRep { a: self.vertex(n, self.k), k: n - self.k }
    }

    /// All valid representations for `K_n`, by span then base vertex.
    pub fn all(n: usize) -> impl Iterator<Item = EdgeRep> {
        (2..n).flat_map(move |k| (1..=n).map(move |a| EdgeRep { a, k }))
    }
}

/// Reduces any positive index to `1..=n`.
pub fn wrap(n: usize, i: usize) -> usize {
    (i - 1) % n + 1
}

/// A star with a fixed center. A star without leaves is a single vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Star {
    pub center: usize,
    pub leaves: BTreeSet<usize>,
}

impl Star {
    pub fn new(center: usize, leaves: impl IntoIterator<Item = usize>) -> Self {
        Star { center, leaves: leaves.into_iter().collect() }
    }

    pub fn singleton(center: usize) -> Self {
        Star { center, leaves: BTreeSet::new() }
    }

    pub fn is_singleton(&self) -> bool {
        self.leaves.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.center).chain(self.leaves.iter().copied())
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.leaves.iter().map(move |&l| Edge::new(self.center, l))
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.center == v || self.leaves.contains(&v)
    }
}

/// A list of centered stars which are meant to be vertex-disjoint.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StarForest {
    pub stars: Vec<Star>,
}

impl StarForest {
    pub fn new(stars: Vec<Star>) -> Self {
        StarForest { stars }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.stars.iter().flat_map(Star::edges)
    }

    pub fn edge_count(&self) -> usize {
        self.stars.iter().map(|s| s.leaves.len()).sum()
    }

    /// Index of the first star touching `v`.
    pub fn star_of(&self, v: usize) -> Option<usize> {
        self.stars.iter().position(|s| s.contains_vertex(v))
    }

    /// Index of the star whose center is `v`.
    pub fn star_centered_at(&self, v: usize) -> Option<usize> {
        self.stars.iter().position(|s| s.center == v)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edge_center(e).is_some()
    }

    /// The center of `e` in this forest, if `e` belongs to it.
    pub fn edge_center(&self, e: Edge) -> Option<usize> {
        self.stars.iter().find_map(|s| {
            if s.center == e.u() && s.leaves.contains(&e.v()) {
                Some(e.u())
            } else if s.center == e.v() && s.leaves.contains(&e.u()) {
                Some(e.v())
            } else {
                None
            }
        })
    }

    /// Vertices appearing in some non-singleton star.
    pub fn covered_vertices(&self) -> BTreeSet<usize> {
        self.stars
            .iter()
            .filter(|s| !s.is_singleton())
            .flat_map(|s| s.vertices())
            .collect()
    }

    /// Removes `e` if present. A star left without leaves is dropped.
    pub fn remove_edge(&mut self, e: Edge) -> bool {
        for i in 0..self.stars.len() {
            let s = &mut self.stars[i];
            let removed = (s.center == e.u() && s.leaves.remove(&e.v()))
                || (s.center == e.v() && s.leaves.remove(&e.u()));
            if removed {
                if s.leaves.is_empty() {
                    self.stars.remove(i);
                }
                return true;
            }
        }
        false
    }

    /// Attaches `leaf` to the star centered at `center`, creating that star
    /// if needed. The caller is responsible for `leaf` being free.
    pub fn add_leaf(&mut self, center: usize, leaf: usize) {
        match self.star_centered_at(center) {
            Some(i) => {
                self.stars[i].leaves.insert(leaf);
            }
            None => self.stars.push(Star::new(center, [leaf])),
        }
    }

    /// Drops a listed single-vertex star at `v`, returning whether one existed.
    pub fn remove_singleton(&mut self, v: usize) -> bool {
        match self.stars.iter().position(|s| s.center == v && s.is_singleton()) {
            Some(i) => {
                self.stars.remove(i);
                true
            }
            None => false,
        }
    }

    /// Removes vertex `v`: its star disappears if `v` is the center,
    /// otherwise `v` leaves its star. Stars emptied this way are dropped.
    pub fn delete_vertex(&mut self, v: usize) {
        self.stars.retain_mut(|s| {
            if s.center == v {
                return false;
            }
            !(s.leaves.remove(&v) && s.leaves.is_empty())
        });
    }

    /// Renames vertices through `map`; used when relabeling after a deletion.
    pub fn relabel(&mut self, map: impl Fn(usize) -> usize) {
        for s in &mut self.stars {
            s.center = map(s.center);
            s.leaves = s.leaves.iter().map(|&l| map(l)).collect();
        }
    }
}

/// An ordered list of star-forests over the vertex set `1..=n`, optionally
/// with a drawing. Edges may belong to several forests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "crate::io::CoveringJson", into = "crate::io::CoveringJson")]
pub struct Covering {
    pub n: usize,
    pub forests: Vec<StarForest>,
    pub geometry: Option<PointSet>,
    /// Seed of the random generator that produced this covering, if any.
    pub seed: Option<u64>,
}

impl Covering {
    pub fn new(n: usize, forests: Vec<StarForest>) -> Self {
        Covering { n, forests, geometry: None, seed: None }
    }

    pub fn with_geometry(mut self, ps: PointSet) -> Result<Self, ModelError> {
        if ps.len() != self.n {
            return Err(ModelError::GeometrySizeMismatch { n: self.n, points: ps.len() });
        }
        self.geometry = Some(ps);
        Ok(self)
    }

    pub fn geometry(&self) -> Result<&PointSet, ModelError> {
        self.geometry.as_ref().ok_or(ModelError::GeometryMissing)
    }

    pub fn forest_count(&self) -> usize {
        self.forests.len()
    }

    /// Number of forests containing `e`.
    pub fn multiplicity(&self, e: Edge) -> usize {
        self.forests.iter().filter(|f| f.contains_edge(e)).count()
    }

    pub fn uncovered_edges(&self) -> Vec<Edge> {
        let covered: BTreeSet<Edge> = self.forests.iter().flat_map(|f| f.edges()).collect();
        Edge::all(self.n).filter(|e| !covered.contains(e)).collect()
    }

    /// Keeps each edge only in the lowest-index forest containing it. Stars
    /// emptied by the projection are dropped; listed singletons and the
    /// forest count are kept, so a decomposition maps to itself.
    pub fn project_to_decomposition(&self) -> Result<Covering, ModelError> {
        if let Some(&e) = self.uncovered_edges().first() {
            return Err(ModelError::IncompleteCovering(e));
        }
        let mut seen = BTreeSet::new();
        let forests = self
            .forests
            .iter()
            .map(|f| {
                let stars = f
                    .stars
                    .iter()
                    .filter_map(|s| {
                        if s.is_singleton() {
                            return Some(s.clone());
                        }
                        let leaves: BTreeSet<usize> = s
                            .leaves
                            .iter()
                            .copied()
                            .filter(|&l| seen.insert(Edge::new(s.center, l)))
                            .collect();
                        (!leaves.is_empty()).then_some(Star { center: s.center, leaves })
                    })
                    .collect();
                StarForest { stars }
            })
            .collect();
        Ok(Covering { n: self.n, forests, geometry: self.geometry.clone(), seed: self.seed })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_normalizes() {
        assert_eq!(Edge::new(5, 2), Edge::new(2, 5));
        assert_eq!(Edge::new(5, 2).u(), 2);
        assert!(Edge::try_new(3, 3).is_none());
        assert_eq!(Edge::all(5).count(), 10);
    }

    #[test]
    fn edge_rep_wraps() {
        let r = EdgeRep::new(4, 3);
        assert_eq!(r.edge(5), Edge::new(4, 2));
        assert_eq!(r.complement(5), EdgeRep::new(2, 2));
        assert_eq!(r.complement(5).edge(5), r.edge(5));
        assert!(!EdgeRep::new(1, 1).is_valid(5));
        assert!(!EdgeRep::new(1, 5).is_valid(5));
        assert_eq!(EdgeRep::all(5).count(), 15);
    }

    #[test]
    fn forest_edit_helpers() {
        let mut f = StarForest::new(vec![Star::new(1, [2, 3]), Star::singleton(5)]);
        assert_eq!(f.edge_center(Edge::new(3, 1)), Some(1));
        assert!(!f.contains_edge(Edge::new(2, 3)));
        assert!(f.remove_singleton(5));
        f.add_leaf(4, 5);
        assert_eq!(f.edge_center(Edge::new(4, 5)), Some(4));
        assert!(f.remove_edge(Edge::new(4, 5)));
        assert_eq!(f.stars.len(), 1);
        f.delete_vertex(2);
        assert_eq!(f.stars, vec![Star::new(1, [3])]);
        f.delete_vertex(3);
        assert!(f.stars.is_empty());
    }

    #[test]
    fn projection_keeps_lowest_forest() {
        let c = Covering::new(
            3,
            vec![
                StarForest::new(vec![Star::new(1, [2])]),
                StarForest::new(vec![Star::new(2, [1, 3])]),
                StarForest::new(vec![Star::new(3, [1])]),
            ],
        );
        let d = c.project_to_decomposition().unwrap();
        assert!(d.forests[0].contains_edge(Edge::new(1, 2)));
        assert!(!d.forests[1].contains_edge(Edge::new(1, 2)));
        assert_eq!(d.forests[1].stars, vec![Star::new(2, [3])]);
        assert_eq!(d.forests[2].stars, vec![Star::new(3, [1])]);
        assert_eq!(d.project_to_decomposition().unwrap(), d);
    }

    #[test]
    fn projection_rejects_incomplete() {
        let c = Covering::new(3, vec![StarForest::new(vec![Star::new(1, [2, 3])])]);
        assert_eq!(c.project_to_decomposition(), Err(ModelError::IncompleteCovering(Edge::new(2, 3))));
    }
}

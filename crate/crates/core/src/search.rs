//! Exhaustive backtracking oracles for the least number of plane
//! star-forests of a convex `K_n` and of k-star-forests of abstract `K_n`.
//!
//! Edges are assigned to color classes in lexicographic order. The
//! reference oracle only rejects invalid partial assignments; the pruned
//! search also breaks color symmetry (a class is opened only after all
//! lower classes) and cuts branches whose remaining edges cannot fit.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{convex_crossing, PointSet};
use crate::model::{Covering, Edge, Star, StarForest};

/// Largest `n` accepted by the oracles.
pub const MAX_SEARCH_N: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("n = {n} is above the search limit of {MAX_SEARCH_N}")]
    TooLarge { n: usize },
    #[error("the point set is not certified convex")]
    NotConvex,
    #[error("gave up after visiting {limit} nodes")]
    NodeLimitExceeded { limit: u64 },
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Reference,
    #[default]
    Pruned,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    pub mode: SearchMode,
    /// Total node budget for one call; `None` means unlimited.
    pub node_limit: Option<u64>,
}

impl SearchOptions {
    pub fn new(mode: SearchMode) -> Self {
        SearchOptions { mode, node_limit: None }
    }
}

/// Outcome of a single budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub witness: Option<Covering>,
    pub nodes_visited: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchResult {
    pub optimum: usize,
    /// A decomposition with `optimum` forests.
    pub witness: Option<Covering>,
    /// Whether every budget below `optimum` was refuted by complete
    /// enumeration.
    pub exhausted: bool,
    /// Nodes over all budgets tried.
    pub nodes_visited: u64,
    pub mode: SearchMode,
}

#[derive(Clone, Copy)]
enum Problem {
    Plane,
    KStar(usize),
}

struct Search {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Bit `f` of `cross[e]` is set when edge `f` crosses edge `e`.
    cross: Option<Vec<u32>>,
    cap: usize,
    t: usize,
    pruned: bool,
    deg: Vec<[u8; MAX_SEARCH_N + 1]>,
    nbr: Vec<[u16; MAX_SEARCH_N + 1]>,
    class_edges: Vec<u32>,
    comps: Vec<usize>,
    assign: Vec<usize>,
    opened: usize,
    nodes: u64,
    limit: Option<u64>,
}

impl Search {
    fn new(n: usize, problem: Problem, t: usize, opts: SearchOptions, spent: u64) -> Self {
        let edges: Vec<(usize, usize)> = Edge::all(n).map(|e| (e.u(), e.v())).collect();
        let cross = matches!(problem, Problem::Plane).then(|| {
            edges
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| {
                    edges.iter().enumerate().fold(0u32, |mask, (j, &(c, d))| {
                        if i != j && convex_crossing(n, Edge::new(a, b), Edge::new(c, d)) {
                            mask | 1 << j
                        } else {
                            mask
                        }
                    })
                })
                .collect()
        });
        let cap = match problem {
            Problem::Plane => usize::MAX,
            Problem::KStar(k) => k,
        };
        Search {
            n,
            cross,
            cap,
            t,
            pruned: opts.mode == SearchMode::Pruned,
            deg: vec![[0; MAX_SEARCH_N + 1]; t],
            nbr: vec![[0; MAX_SEARCH_N + 1]; t],
            class_edges: vec![0; t],
            comps: vec![0; t],
            assign: vec![usize::MAX; edges.len()],
            edges,
            opened: 0,
            nodes: 0,
            limit: opts.node_limit.map(|l| l.saturating_sub(spent)),
        }
    }

    /// Whether edge `e` may join class `c`, and if so whether it starts a
    /// new component there.
    fn fits(&self, c: usize, e: usize) -> Option<bool> {
        if let Some(cross) = &self.cross {
            if cross[e] & self.class_edges[c] != 0 {
                return None;
            }
        }
        let (u, v) = self.edges[e];
        let deg = &self.deg[c];
        match (deg[u], deg[v]) {
            (0, 0) => (self.comps[c] < self.cap).then_some(true),
            (0, _) | (_, 0) => {
                let x = if deg[u] == 0 { v } else { u };
                if deg[x] >= 2 {
                    return Some(false);
                }
                let y = self.nbr[c][x].trailing_zeros() as usize;
                (deg[y] == 1).then_some(false)
            }
            _ => None,
        }
    }

    fn place(&mut self, c: usize, e: usize, new_comp: bool) {
        let (u, v) = self.edges[e];
        self.deg[c][u] += 1;
        self.deg[c][v] += 1;
        self.nbr[c][u] |= 1 << v;
        self.nbr[c][v] |= 1 << u;
        self.class_edges[c] |= 1 << e;
        self.comps[c] += usize::from(new_comp);
        self.assign[e] = c;
    }

    fn unplace(&mut self, c: usize, e: usize, new_comp: bool) {
        let (u, v) = self.edges[e];
        self.deg[c][u] -= 1;
        self.deg[c][v] -= 1;
        self.nbr[c][u] &= !(1 << v);
        self.nbr[c][v] &= !(1 << u);
        self.class_edges[c] &= !(1 << e);
        self.comps[c] -= usize::from(new_comp);
        self.assign[e] = usize::MAX;
    }

    /// A star-forest with `p` components on at most `n` vertices has at most
    /// `n - p` edges; the remaining edges must fit into what is left.
    fn room_left(&self, next: usize) -> bool {
        let remaining = self.edges.len() - next;
        let room: usize = (0..self.t)
            .map(|c| {
                let used = self.class_edges[c].count_ones() as usize;
                self.n - self.comps[c].max(1) - used
            })
            .sum();
        remaining <= room
    }

    fn run(&mut self, e: usize) -> Result<bool, SearchError> {
        self.nodes += 1;
        if let Some(limit) = self.limit {
            if self.nodes > limit {
                return Err(SearchError::NodeLimitExceeded { limit });
            }
        }
        if e == self.edges.len() {
            return Ok(true);
        }
        if self.pruned && !self.room_left(e) {
            return Ok(false);
        }
        let classes = if self.pruned { (self.opened + 1).min(self.t) } else { self.t };
        for c in 0..classes {
            let Some(new_comp) = self.fits(c, e) else { continue };
            let opened = self.opened;
            self.opened = self.opened.max(c + 1);
            self.place(c, e, new_comp);
            if self.run(e + 1)? {
                return Ok(true);
            }
            self.unplace(c, e, new_comp);
            self.opened = opened;
        }
        Ok(false)
    }

    /// The found assignment as forests; a class's center is its vertex of
    /// degree at least two, or the lower endpoint of a lone edge.
    fn witness(&self) -> Vec<StarForest> {
        (0..self.t)
            .map(|c| {
                let deg = &self.deg[c];
                let mut stars: Vec<Star> = Vec::new();
                for (e, &(u, v)) in self.edges.iter().enumerate() {
                    if self.assign[e] != c {
                        continue;
                    }
                    let (center, leaf) = if deg[v] >= 2 { (v, u) } else { (u, v) };
                    match stars.iter_mut().find(|s| s.center == center) {
                        Some(s) => {
                            s.leaves.insert(leaf);
                        }
                        None => stars.push(Star::new(center, [leaf])),
                    }
                }
                StarForest::new(stars)
            })
            .collect()
    }
}

fn decide(n: usize, problem: Problem, t: usize, opts: SearchOptions, spent: u64) -> Result<(Option<Vec<StarForest>>, u64), SearchError> {
    if n > MAX_SEARCH_N {
        return Err(SearchError::TooLarge { n });
    }
    let mut s = Search::new(n, problem, t, opts, spent);
    let found = s.run(0)?;
    Ok((found.then(|| s.witness()), s.nodes))
}

fn check_convex(ps: &PointSet) -> Result<(), SearchError> {
    if ps.len() > MAX_SEARCH_N {
        return Err(SearchError::TooLarge { n: ps.len() });
    }
    if !ps.is_convex() {
        return Err(SearchError::NotConvex);
    }
    Ok(())
}

fn check_cap(k: usize) -> Result<(), SearchError> {
    if k == 0 {
        return Err(SearchError::BadParameters("the component cap k must be at least 1".into()));
    }
    Ok(())
}

/// A decomposition of `K_n` on `ps` into at most `t` plane star-forests,
/// or `None` if there is none.
pub fn decide_plane_decomposition(ps: &PointSet, t: usize, opts: SearchOptions) -> Result<Decision, SearchError> {
    check_convex(ps)?;
    let n = ps.len();
    let (found, nodes_visited) = decide(n, Problem::Plane, t, opts, 0)?;
    Ok(Decision {
        witness: found.map(|f| Covering::new(n, f).with_geometry(ps.clone()).expect("sizes match")),
        nodes_visited,
    })
}

/// A decomposition of abstract `K_n` into at most `t` star-forests with at
/// most `k` components each, or `None` if there is none.
pub fn decide_k_star_forest_decomposition(n: usize, k: usize, t: usize, opts: SearchOptions) -> Result<Decision, SearchError> {
    check_cap(k)?;
    let (found, nodes_visited) = decide(n, Problem::KStar(k), t, opts, 0)?;
    Ok(Decision { witness: found.map(|f| Covering::new(n, f)), nodes_visited })
}

fn minimize(n: usize, problem: Problem, opts: SearchOptions) -> Result<(usize, Covering, u64), SearchError> {
    if n > MAX_SEARCH_N {
        return Err(SearchError::TooLarge { n });
    }
    if n <= 1 {
        return Ok((0, Covering::new(n, Vec::new()), 1));
    }
    let mut spent = 0;
    for t in 1.. {
        let (found, nodes) = decide(n, problem, t, opts, spent)?;
        spent += nodes;
        if let Some(forests) = found {
            return Ok((t, Covering::new(n, forests), spent));
        }
    }
    unreachable!("n - 1 stars always suffice")
}

/// The least number of plane star-forests decomposing `K_n` on `ps`.
pub fn min_plane_star_forests(ps: &PointSet, opts: SearchOptions) -> Result<SearchResult, SearchError> {
    check_convex(ps)?;
    let (optimum, witness, nodes_visited) = minimize(ps.len(), Problem::Plane, opts)?;
    let witness = witness.with_geometry(ps.clone()).expect("sizes match");
    Ok(SearchResult { optimum, witness: Some(witness), exhausted: true, nodes_visited, mode: opts.mode })
}

/// The least number of star-forests with at most `k` components each that
/// decompose abstract `K_n`.
pub fn min_k_star_forests(n: usize, k: usize, opts: SearchOptions) -> Result<SearchResult, SearchError> {
    check_cap(k)?;
    let (optimum, witness, nodes_visited) = minimize(n, Problem::KStar(k), opts)?;
    Ok(SearchResult { optimum, witness: Some(witness), exhausted: true, nodes_visited, mode: opts.mode })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::gen_convex;
    use crate::model::{component_count, verify_decomposition};

    const PRUNED: SearchOptions = SearchOptions { mode: SearchMode::Pruned, node_limit: None };
    const REFERENCE: SearchOptions = SearchOptions { mode: SearchMode::Reference, node_limit: None };

    #[test]
    fn plane_budgets() {
        let ps = gen_convex(4).unwrap();
        let d = decide_plane_decomposition(&ps, 3, PRUNED).unwrap();
        let w = d.witness.unwrap();
        assert!(verify_decomposition(&w).is_valid());
        assert!(decide_plane_decomposition(&ps, 2, PRUNED).unwrap().witness.is_none());
        assert!(decide_plane_decomposition(&ps, 2, REFERENCE).unwrap().witness.is_none());
    }

    #[test]
    fn plane_minimum() {
        for n in 2..=5 {
            let r = min_plane_star_forests(&gen_convex(n).unwrap(), PRUNED).unwrap();
            assert_eq!(r.optimum, n - 1);
            assert!(r.exhausted);
            assert!(verify_decomposition(r.witness.as_ref().unwrap()).is_valid());
        }
    }

    #[test]
    fn k_star_budgets() {
        let d = decide_k_star_forest_decomposition(4, 2, 3, PRUNED).unwrap();
        let w = d.witness.unwrap();
        assert!(verify_decomposition(&w).is_valid());
        assert!(w.forests.iter().all(|f| component_count(f) <= 2));
        assert!(decide_k_star_forest_decomposition(5, 2, 3, PRUNED).unwrap().witness.is_none());
        assert_eq!(min_k_star_forests(4, 2, PRUNED).unwrap().optimum, 3);
    }

    #[test]
    fn reference_witness_is_lexicographically_first() {
        // lex order puts every edge at P1 into class 0 first
        let d = decide_k_star_forest_decomposition(4, 2, 3, REFERENCE).unwrap();
        let w = d.witness.unwrap();
        assert_eq!(w.forests[0].stars[0], Star::new(1, [2, 3, 4]));
    }

    #[test]
    fn limits() {
        assert_eq!(
            min_k_star_forests(9, 2, PRUNED),
            Err(SearchError::TooLarge { n: 9 })
        );
        let opts = SearchOptions { mode: SearchMode::Reference, node_limit: Some(10) };
        assert!(matches!(min_plane_star_forests(&gen_convex(6).unwrap(), opts), Err(SearchError::NodeLimitExceeded { .. })));
        assert_eq!(min_k_star_forests(1, 2, PRUNED).unwrap().optimum, 0);
        assert!(decide_k_star_forest_decomposition(4, 0, 3, PRUNED).is_err());
    }

    #[test]
    fn result_json_keys() {
        let r = min_k_star_forests(3, 2, PRUNED).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["nodesVisited"], r.nodes_visited);
        assert_eq!(v["mode"], "pruned");
    }
}

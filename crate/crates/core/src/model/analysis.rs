use std::collections::BTreeSet;

use serde::Serialize;

use super::{Covering, Edge, ModelError, StarForest};

/// Number of stars listed, single-vertex stars included.
pub fn component_count(f: &StarForest) -> usize {
    f.stars.len()
}

/// The auxiliary graph joining the two centers of every 2-star-forest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterGraph {
    pub n: usize,
    /// One entry per forest, in forest order; parallel edges are kept.
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterGraphComponent {
    pub vertices: BTreeSet<usize>,
    /// Indices into [`CenterGraph::edges`].
    pub edges: Vec<usize>,
}

/// Builds the center graph; every forest must have exactly two stars.
pub fn center_graph(c: &Covering) -> Result<CenterGraph, ModelError> {
    let edges = c
        .forests
        .iter()
        .enumerate()
        .map(|(i, f)| match f.stars.as_slice() {
            [a, b] => Edge::try_new(a.center, b.center).ok_or(ModelError::NotTwoCenters(i)),
            _ => Err(ModelError::NotTwoCenters(i)),
        })
        .collect::<Result<_, _>>()?;
    Ok(CenterGraph { n: c.n, edges })
}

impl CenterGraph {
    /// Connected components over `1..=n`, isolated vertices included.
    pub fn components(&self) -> Vec<CenterGraphComponent> {
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.u()), find(&mut parent, e.v()));
            parent[a] = b;
        }
        let mut comps: Vec<(usize, CenterGraphComponent)> = Vec::new();
        for v in 1..=self.n {
            let root = find(&mut parent, v);
            match comps.iter_mut().find(|(r, _)| *r == root) {
                Some((_, c)) => {
                    c.vertices.insert(v);
                }
                None => comps.push((
                    root,
                    CenterGraphComponent { vertices: BTreeSet::from([v]), edges: Vec::new() },
                )),
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            let root = find(&mut parent, e.u());
            if let Some((_, c)) = comps.iter_mut().find(|(r, _)| *r == root) {
                c.edges.push(i);
            }
        }
        comps.into_iter().map(|(_, c)| c).collect()
    }

    /// Components with fewer than three edges: the ones the lower-bound
    /// argument shows must leave some edge of `K_n` uncovered.
    pub fn sparse_components(&self) -> Vec<CenterGraphComponent> {
        self.components().into_iter().filter(|c| c.edges.len() < 3).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Star;

    #[test]
    fn counts_listed_stars() {
        let f = StarForest::new(vec![Star::new(1, [2]), Star::new(3, [4, 5])]);
        assert_eq!(component_count(&f), 2);
        assert_eq!(component_count(&StarForest::default()), 0);
    }

    #[test]
    fn center_graph_examples() {
        let c = Covering::new(2, vec![StarForest::new(vec![Star::singleton(1), Star::singleton(2)])]);
        assert_eq!(center_graph(&c).unwrap().edges, vec![Edge::new(1, 2)]);

        let c = Covering::new(3, vec![StarForest::new(vec![Star::new(1, [2, 3])])]);
        assert_eq!(center_graph(&c), Err(ModelError::NotTwoCenters(0)));
    }

    #[test]
    fn components_of_center_graph() {
        let g = CenterGraph { n: 5, edges: vec![Edge::new(1, 2), Edge::new(2, 3), Edge::new(1, 2)] };
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0].vertices, BTreeSet::from([1, 2, 3]));
        assert_eq!(comps[0].edges, vec![0, 1, 2]);
        let sparse = g.sparse_components();
        assert_eq!(sparse.len(), 2);
        assert!(sparse.iter().all(|c| c.edges.is_empty()));
    }
}

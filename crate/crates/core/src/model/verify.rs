use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::{Covering, Edge, ModelError, StarForest};
use crate::geom::{segments_cross, PointSet};

/// A single structural defect. `forest` is filled in when the check ran as
/// part of a covering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    VertexOutOfRange { forest: Option<usize>, vertex: usize, n: usize },
    CenterIsLeaf { forest: Option<usize>, vertex: usize },
    SharedVertex { forest: Option<usize>, vertex: usize },
    Crossing { forest: Option<usize>, first: Edge, second: Edge },
    MissingEdge { edge: Edge },
    MultiplyCovered { edge: Edge, forests: Vec<usize> },
    GeometrySizeMismatch { n: usize, points: usize },
}

impl Violation {
    fn in_forest(self, i: usize) -> Self {
        use Violation::*;
        match self {
            VertexOutOfRange { vertex, n, .. } => VertexOutOfRange { forest: Some(i), vertex, n },
            CenterIsLeaf { vertex, .. } => CenterIsLeaf { forest: Some(i), vertex },
            SharedVertex { vertex, .. } => SharedVertex { forest: Some(i), vertex },
            Crossing { first, second, .. } => Crossing { forest: Some(i), first, second },
            other => other,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = |forest: &Option<usize>| match forest {
            Some(i) => format!("forest {i}: "),
            None => String::new(),
        };
        match self {
            Violation::VertexOutOfRange { forest, vertex, n } => {
                write!(f, "{}vertex {vertex} outside 1..={n}", at(forest))
            }
            Violation::CenterIsLeaf { forest, vertex } => {
                write!(f, "{}vertex {vertex} is both center and leaf of a star", at(forest))
            }
            Violation::SharedVertex { forest, vertex } => {
                write!(f, "{}vertex {vertex} lies in two components", at(forest))
            }
            Violation::Crossing { forest, first, second } => {
                write!(f, "{}edges {first} and {second} cross", at(forest))
            }
            Violation::MissingEdge { edge } => write!(f, "edge {edge} is not covered"),
            Violation::MultiplyCovered { edge, forests } => {
                write!(f, "edge {edge} lies in forests {forests:?}")
            }
            Violation::GeometrySizeMismatch { n, points } => {
                write!(f, "geometry has {points} points for n = {n}")
            }
        }
    }
}

/// All violations found by a verifier; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn extend(&mut self, other: ValidationReport, forest: usize) {
        self.violations.extend(other.violations.into_iter().map(|v| v.in_forest(forest)));
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks that the listed stars are well formed and pairwise vertex-disjoint
/// with all vertices in `1..=n`.
pub fn verify_star_forest(f: &StarForest, n: usize) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    let mut shared = BTreeSet::new();
    for (i, s) in f.stars.iter().enumerate() {
        if s.leaves.contains(&s.center) {
            report.violations.push(Violation::CenterIsLeaf { forest: None, vertex: s.center });
        }
        for v in s.vertices() {
            if v == 0 || v > n {
                report.violations.push(Violation::VertexOutOfRange { forest: None, vertex: v, n });
            }
            if let Some(&j) = owner.get(&v) {
                if j != i {
                    shared.insert(v);
                }
            } else {
                owner.insert(v, i);
            }
        }
    }
    report
        .violations
        .extend(shared.into_iter().map(|vertex| Violation::SharedVertex { forest: None, vertex }));
    report
}

/// Lists every crossing pair of edges of `f` drawn on `ps`.
pub fn verify_plane(f: &StarForest, ps: &PointSet) -> ValidationReport {
    let mut report = ValidationReport::default();
    let edges: Vec<Edge> = f.edges().collect();
    for (i, &a) in edges.iter().enumerate() {
        for &b in &edges[i + 1..] {
            match segments_cross(a, b, ps) {
                Ok(true) => {
                    report.violations.push(Violation::Crossing { forest: None, first: a, second: b })
                }
                Ok(false) => {}
                Err(_) => {
                    // identical or out-of-range edges are reported by the
                    // star-forest check
                }
            }
        }
    }
    report
}

/// Every edge of `K_n` must be in some forest; each forest must be a star
/// forest, and plane when geometry is attached.
pub fn verify_covering(c: &Covering) -> ValidationReport {
    let mut report = ValidationReport::default();
    if let Some(ps) = &c.geometry {
        if ps.len() != c.n {
            report
                .violations
                .push(Violation::GeometrySizeMismatch { n: c.n, points: ps.len() });
        }
    }
    for (i, f) in c.forests.iter().enumerate() {
        report.extend(verify_star_forest(f, c.n), i);
        if let Some(ps) = c.geometry.as_ref().filter(|ps| ps.len() == c.n) {
            report.extend(verify_plane(f, ps), i);
        }
    }
    report
        .violations
        .extend(c.uncovered_edges().into_iter().map(|edge| Violation::MissingEdge { edge }));
    report
}

/// [`verify_covering`] plus: no edge lies in more than one forest.
pub fn verify_decomposition(c: &Covering) -> ValidationReport {
    let mut report = verify_covering(c);
    let mut owners: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (i, f) in c.forests.iter().enumerate() {
        for e in f.edges() {
            owners.entry(e).or_default().push(i);
        }
    }
    report.violations.extend(
        owners
            .into_iter()
            .filter(|(_, fs)| fs.len() > 1)
            .map(|(edge, forests)| Violation::MultiplyCovered { edge, forests }),
    );
    report
}

impl Covering {
    /// [`verify_plane`] on one forest, using the attached geometry.
    pub fn verify_forest_plane(&self, forest: usize) -> Result<ValidationReport, ModelError> {
        Ok(verify_plane(&self.forests[forest], self.geometry()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::gen_convex;
    use crate::model::Star;

    fn forest(stars: &[(usize, &[usize])]) -> StarForest {
        StarForest::new(stars.iter().map(|&(c, l)| Star::new(c, l.iter().copied())).collect())
    }

    #[test]
    fn star_forest_examples() {
        assert!(verify_star_forest(&forest(&[(1, &[2, 3])]), 3).is_valid());
        let r = verify_star_forest(&forest(&[(1, &[2]), (2, &[3])]), 3);
        assert_eq!(r.violations, vec![Violation::SharedVertex { forest: None, vertex: 2 }]);
        assert!(verify_star_forest(&StarForest::default(), 0).is_valid());
    }

    #[test]
    fn star_forest_bad_indices() {
        let r = verify_star_forest(&forest(&[(1, &[1, 4])]), 3);
        assert!(r.violations.contains(&Violation::CenterIsLeaf { forest: None, vertex: 1 }));
        assert!(r
            .violations
            .contains(&Violation::VertexOutOfRange { forest: None, vertex: 4, n: 3 }));
    }

    #[test]
    fn plane_examples() {
        let ps5 = gen_convex(5).unwrap();
        assert!(verify_plane(&forest(&[(1, &[2, 3, 4, 5])]), &ps5).is_valid());

        let ps4 = gen_convex(4).unwrap();
        let r = verify_plane(&forest(&[(1, &[3]), (2, &[4])]), &ps4);
        assert_eq!(
            r.violations,
            vec![Violation::Crossing { forest: None, first: Edge::new(1, 3), second: Edge::new(2, 4) }]
        );
    }

    #[test]
    fn spanning_star_at_last_vertex_is_plane() {
        let ps = gen_convex(8).unwrap();
        let f = forest(&[(8, &[1, 2, 3, 4, 5, 6, 7])]);
        assert!(verify_plane(&f, &ps).is_valid());
        let c = Covering::new(8, vec![f]);
        assert_eq!(c.verify_forest_plane(0), Err(ModelError::GeometryMissing));
    }

    #[test]
    fn decomposition_of_k4() {
        let c = Covering::new(4, vec![forest(&[(1, &[2, 3, 4])]), forest(&[(2, &[3, 4])]), forest(&[(3, &[4])])]);
        assert!(verify_decomposition(&c).is_valid());

        let broken = Covering::new(4, vec![forest(&[(1, &[2, 3, 4])]), forest(&[(2, &[3, 4])]), forest(&[])]);
        assert_eq!(
            verify_covering(&broken).violations,
            vec![Violation::MissingEdge { edge: Edge::new(3, 4) }]
        );

        let doubled = Covering::new(3, vec![forest(&[(1, &[2, 3])]), forest(&[(2, &[1, 3])])]);
        assert!(verify_covering(&doubled).is_valid());
        assert_eq!(
            verify_decomposition(&doubled).violations,
            vec![Violation::MultiplyCovered { edge: Edge::new(1, 2), forests: vec![0, 1] }]
        );
    }

    #[test]
    fn covering_reports_carry_forest_index() {
        let c = Covering::new(4, vec![forest(&[(1, &[2, 3, 4])]), forest(&[(2, &[3]), (3, &[4])])]);
        let r = verify_covering(&c);
        assert!(r.violations.contains(&Violation::SharedVertex { forest: Some(1), vertex: 3 }));
        let c = c.with_geometry(gen_convex(4).unwrap()).unwrap();
        assert!(!verify_covering(&c).violations.iter().any(|v| matches!(v, Violation::Crossing { .. })));
    }
}

use serde::{Deserialize, Serialize};

use super::engine::{RecolorEngine, RecolorOptions};
use super::support::{supporting_forest, SupportKind};
use super::{RecolorError, TraceEntry};
use crate::model::{verify_covering, Covering, EdgeRep};

/// One round of the descent: a forest became a spanning star and was
/// removed together with its center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DescentLevel {
    /// Number of vertices at the start of this level.
    pub n: usize,
    /// Forests at the start of this level.
    pub forest_count: usize,
    /// The spanning-star forest, as an index into the live forests and into
    /// the input covering.
    pub forest: usize,
    pub original_forest: usize,
    /// Its center, in live labels and in the input's labels. This is the
    /// vertex deleted at the end of the level.
    pub center: usize,
    pub original_center: usize,
    /// Every mutation of this level, in live labels.
    pub trace: Vec<TraceEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DescentCertificate {
    pub n: usize,
    pub initial_forest_count: usize,
    pub levels: Vec<DescentLevel>,
}

impl DescentCertificate {
    /// Vertices of the input, in the order they were deleted.
    pub fn deleted_vertices(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.original_center).collect()
    }

    /// Re-applies every traced step to `c`, checking the covering at each
    /// checkpoint and the level bookkeeping. Returns the final covering.
    pub fn replay(&self, c: &Covering) -> Result<Covering, RecolorError> {
        if c.n != self.n || c.forests.len() != self.initial_forest_count {
            return Err(RecolorError::InvalidInput("the certificate belongs to another covering".into()));
        }
        let mut live = c.clone();
        for (m, level) in self.levels.iter().enumerate() {
            let step = |detail: String| RecolorError::violation(format!("level {m}"), detail);
            if level.n != live.n || level.forest_count != live.forests.len() {
                return Err(step(format!(
                    "expected {} vertices and {} forests, found {} and {}",
                    level.n,
                    level.forest_count,
                    live.n,
                    live.forests.len()
                )));
            }
            if live.forests.len() + m != self.initial_forest_count {
                return Err(step("forest count does not drop by one per level".into()));
            }
            match level.trace.as_slice() {
                [.., TraceEntry::Extract { forest, center, .. }, TraceEntry::DeleteVertex { vertex, .. }]
                    if *forest == level.forest && *center == level.center && *vertex == level.center => {}
                _ => return Err(step("the level does not end by extracting and deleting its star".into())),
            }
            for entry in &level.trace {
                entry.apply(&mut live).map_err(|d| RecolorError::violation(entry.op(), d))?;
                if entry.is_checkpoint() {
                    let report = verify_covering(&live);
                    if !report.is_valid() {
                        return Err(RecolorError::violation(entry.op(), report.to_string()));
                    }
                }
            }
        }
        if live.n > 1 {
            return Err(RecolorError::violation("end", format!("{} vertices remain", live.n)));
        }
        Ok(live)
    }
}

/// A forest of `c` that is a single star on all vertices, found through the
/// support of `P_1 P_n` read as `(1, n - 1)`. For `n = 2` any forest holding
/// the edge qualifies.
pub fn extract_spanning_star(c: &Covering) -> Result<(usize, usize), RecolorError> {
    match c.n {
        0 | 1 => Err(RecolorError::NoSpanningStar),
        2 => {
            let e = crate::model::Edge::new(1, 2);
            c.forests
                .iter()
                .enumerate()
                .find_map(|(i, f)| f.edge_center(e).map(|center| (i, center)))
                .ok_or(RecolorError::NoSpanningStar)
        }
        n => match supporting_forest(c, EdgeRep::new(1, n - 1))? {
            Some((i, SupportKind::FanAtBase)) => Ok((i, 1)),
            Some((i, SupportKind::FanAtEnd)) => Ok((i, n)),
            None => Err(RecolorError::NoSpanningStar),
        },
    }
}

/// Repeatedly supports every span, removes a spanning star with its center
/// and relabels, until one vertex is left.
pub fn descend(c: &Covering) -> Result<DescentCertificate, RecolorError> {
    descend_with(c, RecolorOptions::default())
}

pub fn descend_with(c: &Covering, options: RecolorOptions) -> Result<DescentCertificate, RecolorError> {
    let mut live = RecolorEngine::with_options(c.clone(), options)?.into_parts().0;
    let mut labels: Vec<usize> = (1..=c.n).collect();
    let mut ids: Vec<usize> = (0..c.forests.len()).collect();
    let mut levels = Vec::new();
    while live.n >= 2 {
        if live.forests.is_empty() {
            return Err(RecolorError::violation(
                "descent",
                format!("no forests left for {} vertices", live.n),
            ));
        }
        let (n, forest_count) = (live.n, live.forests.len());
        let mut engine = RecolorEngine::with_options(live, options)
            .map_err(|e| RecolorError::violation("descent", e.to_string()))?;
        if n >= 3 {
            engine.make_all_supported_up_to(n - 1)?;
        }
        let (mut covering, mut trace) = engine.into_parts();
        let (forest, center) = extract_spanning_star(&covering)?;
        let level = levels.len();
        for entry in [
            TraceEntry::Extract { level, forest, center },
            TraceEntry::DeleteVertex { level, vertex: center },
        ] {
            entry.apply(&mut covering).map_err(|d| RecolorError::violation(entry.op(), d))?;
            trace.push(entry);
        }
        let report = verify_covering(&covering);
        if !report.is_valid() {
            return Err(RecolorError::violation("delete-vertex", report.to_string()));
        }
        levels.push(DescentLevel {
            n,
            forest_count,
            forest,
            original_forest: ids.remove(forest),
            center,
            original_center: labels.remove(center - 1),
            trace,
        });
        live = covering;
    }
    Ok(DescentCertificate { n: c.n, initial_forest_count: c.forests.len(), levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{star_decomposition, two_star_forest_cover};
    use crate::geom::gen_convex;
    use crate::model::{Star, StarForest};

    fn convex_stars(n: usize) -> Covering {
        star_decomposition(n).with_geometry(gen_convex(n).unwrap()).unwrap()
    }

    #[test]
    fn spanning_star_of_star_decomposition() {
        assert_eq!(extract_spanning_star(&convex_stars(5)).unwrap(), (0, 1));
        let c = Covering::new(3, vec![StarForest::new(vec![Star::new(1, [2])]), StarForest::new(vec![Star::new(3, [2])])]);
        assert_eq!(extract_spanning_star(&c), Err(RecolorError::NoSpanningStar));
    }

    #[test]
    fn six_vertices() {
        let c = convex_stars(6);
        let cert = descend(&c).unwrap();
        assert_eq!(cert.levels.len(), 5);
        let mut deleted = cert.deleted_vertices();
        deleted.sort_unstable();
        assert_eq!(deleted, vec![1, 2, 3, 4, 5]);
        for (m, level) in cert.levels.iter().enumerate() {
            assert_eq!(level.n, 6 - m);
            assert_eq!(level.forest_count, 5 - m);
        }
        let end = cert.replay(&c).unwrap();
        assert_eq!((end.n, end.forests.len()), (1, 0));
    }

    #[test]
    fn two_vertices() {
        let c = convex_stars(2);
        let cert = descend(&c).unwrap();
        assert_eq!(cert.levels.len(), 1);
        assert_eq!(cert.levels[0].original_center, 1);
    }

    #[test]
    fn abstract_input_is_rejected() {
        let c = two_star_forest_cover(8).unwrap();
        assert!(matches!(descend(&c), Err(RecolorError::InvalidInput(_))));
        let mut short = convex_stars(5);
        short.forests.pop();
        assert!(matches!(descend(&short), Err(RecolorError::InvalidInput(_))));
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let c = convex_stars(5);
        let mut cert = descend(&c).unwrap();
        cert.levels[1].center += 1;
        assert!(cert.replay(&c).is_err());
        let json = serde_json::to_string(&descend(&c).unwrap()).unwrap();
        let back: DescentCertificate = serde_json::from_str(&json).unwrap();
        assert!(back.replay(&c).is_ok());
    }
}

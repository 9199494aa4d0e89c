//! JSON interchange. Every document is written with sorted keys, so equal
//! values always serialize to the same bytes.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{ClusteredPointSet, GeomError, Point, PointSet};
use crate::model::{Covering, StarForest};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid geometry: {0}")]
    Geometry(#[from] GeomError),
}

/// Wire form of [`PointSet`] and [`ClusteredPointSet`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointSetJson {
    pub n: usize,
    pub points: Vec<Point>,
    /// Set when the listing is a certified clockwise convex polygon; checked
    /// again on parse.
    pub convex: bool,
    pub clusters: Option<[Vec<usize>; 4]>,
}

impl From<PointSet> for PointSetJson {
    fn from(ps: PointSet) -> Self {
        PointSetJson { n: ps.len(), convex: ps.is_convex(), points: ps.points().to_vec(), clusters: None }
    }
}

impl TryFrom<PointSetJson> for PointSet {
    type Error = GeomError;

    fn try_from(raw: PointSetJson) -> Result<Self, GeomError> {
        if raw.n != raw.points.len() {
            return Err(GeomError::SizeOutOfRange(raw.n));
        }
        if raw.convex {
            PointSet::convex(raw.points)
        } else {
            PointSet::new(raw.points)
        }
    }
}

impl From<ClusteredPointSet> for PointSetJson {
    fn from(cps: ClusteredPointSet) -> Self {
        let clusters = cps.clusters().clone();
        PointSetJson { clusters: Some(clusters), ..cps.base().clone().into() }
    }
}

impl TryFrom<PointSetJson> for ClusteredPointSet {
    type Error = GeomError;

    fn try_from(mut raw: PointSetJson) -> Result<Self, GeomError> {
        let clusters = raw.clusters.take().ok_or_else(|| GeomError::BadClusters("no clusters given".into()))?;
        ClusteredPointSet::new(raw.try_into()?, clusters)
    }
}

/// Wire form of [`Covering`]. `seed` is omitted unless the covering was
/// generated randomly.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoveringJson {
    pub n: usize,
    pub forests: Vec<StarForest>,
    pub geometry: Option<PointSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl From<Covering> for CoveringJson {
    fn from(c: Covering) -> Self {
        CoveringJson { n: c.n, forests: c.forests, geometry: c.geometry, seed: c.seed }
    }
}

impl TryFrom<CoveringJson> for Covering {
    type Error = String;

    fn try_from(raw: CoveringJson) -> Result<Self, String> {
        let mut c = Covering::new(raw.n, raw.forests);
        if let Some(ps) = raw.geometry {
            c = c.with_geometry(ps).map_err(|e| e.to_string())?;
        }
        c.seed = raw.seed;
        Ok(c)
    }
}

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String, IoError> {
    let value = serde_json::to_value(value)?;
    let mut out = serde_json::to_string_pretty(&value)?;
    out.push('\n');
    Ok(out)
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, IoError> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{four_cluster_forests, star_decomposition};
    use crate::geom::{gen_convex, gen_four_cluster};
    use crate::model::{Star, StarForest};

    #[test]
    fn covering_round_trip() {
        let c = star_decomposition(4).with_geometry(gen_convex(4).unwrap()).unwrap();
        let text = to_canonical_json(&c).unwrap();
        assert!(!text.contains("seed"));
        let back: Covering = from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(to_canonical_json(&back).unwrap(), text);
    }

    #[test]
    fn keys_are_sorted() {
        let c = Covering::new(2, vec![StarForest::new(vec![Star::new(1, [2])])]);
        let text = serde_json::to_string(&serde_json::to_value(&c).unwrap()).unwrap();
        assert_eq!(text, r#"{"forests":[{"stars":[{"center":1,"leaves":[2]}]}],"geometry":null,"n":2}"#);
    }

    #[test]
    fn convexity_is_rechecked() {
        let text = r#"{"n":4,"points":[[0,0],[1,0],[0,1],[1,1]],"convex":true,"clusters":null}"#;
        assert!(from_json::<PointSet>(text).is_err());
        let text = r#"{"n":3,"points":[[0,0],[1,0],[0,1],[1,1]],"convex":false,"clusters":null}"#;
        assert!(from_json::<PointSet>(text).is_err());
        let text = r#"{"n":3,"points":[[0,0],[2,1],[1,3]],"convex":false,"clusters":null}"#;
        assert_eq!(from_json::<PointSet>(text).unwrap().len(), 3);
    }

    #[test]
    fn clusters_round_trip() {
        let cps = gen_four_cluster(2).unwrap();
        let text = to_canonical_json(&PointSetJson::from(cps.clone())).unwrap();
        let raw: PointSetJson = from_json(&text).unwrap();
        assert_eq!(ClusteredPointSet::try_from(raw).unwrap(), cps);
        let c = four_cluster_forests(&cps).unwrap();
        let back: Covering = from_json(&to_canonical_json(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn geometry_size_must_match() {
        let text = r#"{"n":2,"forests":[],"geometry":{"n":3,"points":[[0,0],[2,1],[1,3]],"convex":false,"clusters":null}}"#;
        assert!(from_json::<Covering>(text).is_err());
    }
}

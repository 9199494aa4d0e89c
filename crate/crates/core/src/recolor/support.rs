use std::collections::BTreeSet;

use serde::Serialize;

use super::RecolorError;
use crate::model::{Covering, Edge, EdgeRep, StarForest};

/// Which endpoint carries the fan that supports a `k`-edge `P_a P_{a+k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SupportKind {
    /// `P_a P_{a+1}, ..., P_a P_{a+k-1}` are in the forest.
    FanAtBase,
    /// `P_{a+1} P_{a+k}, ..., P_{a+k-1} P_{a+k}` are in the forest.
    FanAtEnd,
}

fn fan_at_base(f: &StarForest, n: usize, rep: EdgeRep) -> bool {
    (1..rep.k).all(|j| f.contains_edge(Edge::new(rep.a, rep.vertex(n, j))))
}

fn fan_at_end(f: &StarForest, n: usize, rep: EdgeRep) -> bool {
    let end = rep.vertex(n, rep.k);
    (1..rep.k).all(|j| f.contains_edge(Edge::new(rep.vertex(n, j), end)))
}

/// The lowest-index forest supporting `rep`, and through which fan.
pub fn supporting_forest(
    c: &Covering,
    rep: EdgeRep,
) -> Result<Option<(usize, SupportKind)>, RecolorError> {
    if !rep.is_valid(c.n) {
        return Err(RecolorError::BadSpan { rep, n: c.n });
    }
    let e = rep.edge(c.n);
    for (i, f) in c.forests.iter().enumerate() {
        if !f.contains_edge(e) {
            continue;
        }
        if fan_at_base(f, c.n, rep) {
            return Ok(Some((i, SupportKind::FanAtBase)));
        }
        if fan_at_end(f, c.n, rep) {
            return Ok(Some((i, SupportKind::FanAtEnd)));
        }
    }
    Ok(None)
}

/// Whether the representation `(a, k)` of `P_a P_{a+k}` is supported. Only
/// this representation is examined, not the complementary `(a+k, n-k)`.
pub fn is_supported(c: &Covering, rep: EdgeRep) -> Result<bool, RecolorError> {
    Ok(supporting_forest(c, rep)?.is_some())
}

/// Every supported representation of `c`.
pub fn supported_reps(c: &Covering) -> BTreeSet<EdgeRep> {
    EdgeRep::all(c.n)
        .filter(|&rep| matches!(supporting_forest(c, rep), Ok(Some(_))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::star_decomposition;
    use crate::model::Star;

    #[test]
    fn star_decomposition_fan() {
        let c = star_decomposition(4);
        assert!(is_supported(&c, EdgeRep::new(1, 2)).unwrap());
        assert_eq!(
            supporting_forest(&c, EdgeRep::new(1, 2)).unwrap(),
            Some((0, SupportKind::FanAtBase))
        );
        // P2P4 read as (2, 2) has the fan P2P3 in the star at P2
        assert_eq!(
            supporting_forest(&c, EdgeRep::new(2, 2)).unwrap(),
            Some((1, SupportKind::FanAtBase))
        );
    }

    #[test]
    fn unsupported_when_neither_fan_present() {
        let c = Covering::new(
            3,
            vec![
                StarForest::new(vec![Star::new(1, [3])]),
                StarForest::new(vec![Star::new(2, [1, 3])]),
            ],
        );
        assert!(!is_supported(&c, EdgeRep::new(1, 2)).unwrap());
        // P2P1 read as (2, 2) has the fan P2P3 in forest 1
        assert!(is_supported(&c, EdgeRep::new(2, 2)).unwrap());
    }

    #[test]
    fn bad_span() {
        let c = star_decomposition(4);
        assert!(matches!(is_supported(&c, EdgeRep::new(1, 1)), Err(RecolorError::BadSpan { .. })));
        assert!(matches!(is_supported(&c, EdgeRep::new(1, 4)), Err(RecolorError::BadSpan { .. })));
    }

    #[test]
    fn star_decomposition_support_count() {
        // (a, k) is supported exactly when it does not wrap past P_1:
        // a + k <= n + 1, which leaves n(n-1)/2 - 1 of the n(n-2) reps
        for n in 3..=8 {
            let c = star_decomposition(n);
            let reps = supported_reps(&c);
            assert_eq!(reps.len(), n * (n - 1) / 2 - 1, "n = {n}");
            assert!(reps.iter().all(|r| r.a + r.k <= n + 1));
        }
        assert!(!is_supported(&star_decomposition(4), EdgeRep::new(4, 2)).unwrap());
    }
}

use super::RecolorError;
use crate::geom::segments_cross;
use crate::model::{Covering, Star, StarForest};

/// Moves the component `star` of forest `from` into forest `to`.
///
/// The star is merged into `to` either as a new component, when its vertices
/// are unused there, or into the star of `to` with the same center, when each
/// of its leaves is already a leaf there or unused. Listed single-vertex stars
/// of `to` that the star touches are absorbed. With geometry attached, no
/// edge of the star may cross an edge of `to`.
pub fn move_star(c: &Covering, from: usize, to: usize, star: &Star) -> Result<Covering, RecolorError> {
    let forest_count = c.forests.len();
    if from >= forest_count || to >= forest_count || from == to {
        return Err(RecolorError::InvalidInput(format!(
            "cannot move from forest {from} to forest {to} of {forest_count}"
        )));
    }
    let pos = c.forests[from]
        .stars
        .iter()
        .position(|s| s == star)
        .ok_or(RecolorError::NotAComponent { forest: from })?;

    let target = &c.forests[to];
    if let Some(ps) = &c.geometry {
        for a in star.edges() {
            for b in target.edges() {
                if a != b && segments_cross(a, b, ps).unwrap_or(false) {
                    return Err(RecolorError::CrossingIntroduced { forest: to, first: a, second: b });
                }
            }
        }
    }
    let mut merged = target.clone();
    absorb(&mut merged, star).map_err(|vertex| RecolorError::WouldBreakStarForest { forest: to, vertex })?;

    let mut out = c.clone();
    out.forests[from].stars.remove(pos);
    out.forests[to] = merged;
    Ok(out)
}

/// Merges `star` into `f`, or reports a vertex that would end up in two
/// components.
pub(crate) fn absorb(f: &mut StarForest, star: &Star) -> Result<(), usize> {
    if star.is_singleton() {
        if f.star_of(star.center).is_none() {
            f.stars.push(star.clone());
        }
        return Ok(());
    }
    let host = f
        .stars
        .iter()
        .position(|s| s.center == star.center && !s.is_singleton());
    for v in star.vertices() {
        match f.star_of(v) {
            None => {}
            Some(i) if f.stars[i].is_singleton() => {}
            Some(i) if Some(i) == host => {}
            Some(_) => return Err(v),
        }
    }
    for v in star.vertices() {
        f.remove_singleton(v);
    }
    match f.stars.iter_mut().find(|s| s.center == star.center) {
        Some(s) => s.leaves.extend(star.leaves.iter().copied()),
        None => f.stars.push(star.clone()),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::gen_convex;
    use crate::model::{verify_covering, Edge};
    use crate::recolor::supported_reps;

    fn sf(stars: &[(usize, &[usize])]) -> StarForest {
        StarForest::new(stars.iter().map(|&(c, l)| Star::new(c, l.iter().copied())).collect())
    }

    #[test]
    fn moving_a_singleton() {
        let c = Covering::new(3, vec![sf(&[(1, &[2]), (3, &[])]), sf(&[(2, &[3])])]);
        // forest 1 already uses vertex 3, so the singleton is absorbed
        let moved = move_star(&c, 0, 1, &Star::singleton(3)).unwrap();
        assert_eq!(moved.forests[0], sf(&[(1, &[2])]));
        assert_eq!(moved.forests[1], c.forests[1]);
        let back = move_star(&moved, 1, 0, &Star::new(2, [3])).unwrap_err();
        assert_eq!(back, RecolorError::WouldBreakStarForest { forest: 0, vertex: 2 });
    }

    #[test]
    fn case2_style_move_keeps_edge_set() {
        // blue star at P4 with leaves P2, P3; red star at P4 with P1, P2, P3
        let ps = gen_convex(5).unwrap();
        let c = Covering::new(
            5,
            vec![
                sf(&[(1, &[5]), (4, &[2, 3])]),
                sf(&[(4, &[1, 2, 3])]),
                sf(&[(5, &[2, 3, 4]), (1, &[])]),
                sf(&[(1, &[2, 3])]),
                sf(&[(2, &[3])]),
            ],
        )
        .with_geometry(ps)
        .unwrap();
        assert!(verify_covering(&c).is_valid(), "{}", verify_covering(&c));
        let before = supported_reps(&c);
        let moved = move_star(&c, 0, 1, &Star::new(4, [2, 3])).unwrap();
        assert_eq!(moved.forests[1], sf(&[(4, &[1, 2, 3])]));
        assert_eq!(moved.uncovered_edges(), c.uncovered_edges());
        assert!(verify_covering(&moved).is_valid());
        assert!(supported_reps(&moved).is_superset(&before));
    }

    #[test]
    fn crossing_move_is_refused() {
        let ps = gen_convex(4).unwrap();
        let c = Covering::new(4, vec![sf(&[(1, &[3])]), sf(&[(2, &[4])])]).with_geometry(ps).unwrap();
        assert_eq!(
            move_star(&c, 0, 1, &Star::new(1, [3])),
            Err(RecolorError::CrossingIntroduced { forest: 1, first: Edge::new(1, 3), second: Edge::new(2, 4) })
        );
    }

    #[test]
    fn non_component_and_conflicts() {
        let c = Covering::new(4, vec![sf(&[(1, &[2, 3])]), sf(&[(2, &[4])])]);
        assert_eq!(
            move_star(&c, 0, 1, &Star::new(1, [2])),
            Err(RecolorError::NotAComponent { forest: 0 })
        );
        assert_eq!(
            move_star(&c, 0, 1, &Star::new(1, [2, 3])),
            Err(RecolorError::WouldBreakStarForest { forest: 1, vertex: 2 })
        );
    }
}

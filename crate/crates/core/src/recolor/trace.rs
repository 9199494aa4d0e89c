use serde::{Deserialize, Serialize};

use super::moves::absorb;
use crate::model::{Covering, Edge, EdgeRep, Star};

/// One audited mutation. `focus` is the representation being made supported
/// and `l` the relative index of the missing fan edge `P_1 P_l`, counted from
/// the focus edge's center. Vertex labels and forest indices are those of the
/// covering the entry applies to; after a `delete-vertex` entry the labels
/// above the deleted vertex shift down by one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum TraceEntry {
    /// The red fan from `center` to `leaves` leaves forest `from` and is
    /// attached to the star at `center` in forest `to`. The covering is only
    /// checked after the matching step 2.
    Case1Step1 { focus: EdgeRep, l: usize, from: usize, to: usize, center: usize, leaves: Vec<usize> },
    /// Blue stars spanned by `{P_2, ..., P_l}` move from `from` to `to`;
    /// listed single-vertex stars in that range are erased from `from`.
    Case1Step2 { focus: EdgeRep, l: usize, from: usize, to: usize, stars: Vec<Star>, erased: Vec<usize> },
    /// `center`-`leaf` joins `forest` (it stays in `partner`) after the other
    /// edges at `leaf`, all of them also in `partner`, leave `forest`.
    Case2Step1 {
        focus: EdgeRep,
        l: usize,
        forest: usize,
        partner: usize,
        center: usize,
        leaf: usize,
        removed: Vec<Edge>,
    },
    /// The side `P_1P_2` joins `forest`, closing the fan.
    AddSide { focus: EdgeRep, forest: usize, center: usize, leaf: usize },
    EraseSingleton { focus: EdgeRep, forest: usize, vertex: usize },
    /// `forest` is a spanning star centered at `center`; it is removed.
    Extract { level: usize, forest: usize, center: usize },
    /// `vertex` is removed and higher labels shift down by one.
    DeleteVertex { level: usize, vertex: usize },
}

impl TraceEntry {
    /// Whether the covering must satisfy every structural invariant right
    /// after this entry.
    pub fn is_checkpoint(&self) -> bool {
        !matches!(self, TraceEntry::Case1Step1 { .. } | TraceEntry::Extract { .. })
    }

    pub fn op(&self) -> &'static str {
        match self {
            TraceEntry::Case1Step1 { .. } => "case1-step1",
            TraceEntry::Case1Step2 { .. } => "case1-step2",
            TraceEntry::Case2Step1 { .. } => "case2-step1",
            TraceEntry::AddSide { .. } => "add-side",
            TraceEntry::EraseSingleton { .. } => "erase-singleton",
            TraceEntry::Extract { .. } => "extract",
            TraceEntry::DeleteVertex { .. } => "delete-vertex",
        }
    }

    /// Applies the entry to `c`. Only the preconditions needed to make the
    /// edit well defined are checked here; invariants are the caller's job.
    pub fn apply(&self, c: &mut Covering) -> Result<(), String> {
        let forest = |c: &Covering, i: usize| {
            if i < c.forests.len() {
                Ok(())
            } else {
                Err(format!("forest {i} does not exist"))
            }
        };
        match self {
            TraceEntry::Case1Step1 { from, to, center, leaves, .. } => {
                forest(c, *from)?;
                forest(c, *to)?;
                for &leaf in leaves {
                    let e = Edge::new(*center, leaf);
                    if !c.forests[*from].remove_edge(e) {
                        return Err(format!("{e} is not in forest {from}"));
                    }
                }
                for &leaf in leaves {
                    if !c.forests[*to].contains_edge(Edge::new(*center, leaf)) {
                        c.forests[*to].add_leaf(*center, leaf);
                    }
                }
            }
            TraceEntry::Case1Step2 { from, to, stars, erased, .. } => {
                forest(c, *from)?;
                forest(c, *to)?;
                for &v in erased {
                    if !c.forests[*from].remove_singleton(v) {
                        return Err(format!("no single-vertex star {v} in forest {from}"));
                    }
                }
                for s in stars {
                    let pos = c.forests[*from]
                        .stars
                        .iter()
                        .position(|x| x == s)
                        .ok_or_else(|| format!("star at {} is not a component of forest {from}", s.center))?;
                    c.forests[*from].stars.remove(pos);
                }
                for s in stars {
                    absorb(&mut c.forests[*to], s)
                        .map_err(|v| format!("vertex {v} already used in forest {to}"))?;
                }
            }
            TraceEntry::Case2Step1 { forest: i, center, leaf, removed, .. } => {
                forest(c, *i)?;
                for &e in removed {
                    if !c.forests[*i].remove_edge(e) {
                        return Err(format!("{e} is not in forest {i}"));
                    }
                }
                c.forests[*i].add_leaf(*center, *leaf);
            }
            TraceEntry::AddSide { forest: i, center, leaf, .. } => {
                forest(c, *i)?;
                c.forests[*i].add_leaf(*center, *leaf);
            }
            TraceEntry::EraseSingleton { forest: i, vertex, .. } => {
                forest(c, *i)?;
                if !c.forests[*i].remove_singleton(*vertex) {
                    return Err(format!("no single-vertex star {vertex} in forest {i}"));
                }
            }
            TraceEntry::Extract { forest: i, center, .. } => {
                forest(c, *i)?;
                let f = &c.forests[*i];
                let spanning = f.stars.len() == 1
                    && f.stars[0].center == *center
                    && f.stars[0].leaves.len() + 1 == c.n;
                if !spanning {
                    return Err(format!("forest {i} is not a spanning star at {center}"));
                }
                c.forests.remove(*i);
            }
            TraceEntry::DeleteVertex { vertex, .. } => {
                let v = *vertex;
                if v == 0 || v > c.n {
                    return Err(format!("vertex {v} is outside 1..={}", c.n));
                }
                for f in &mut c.forests {
                    f.delete_vertex(v);
                    f.relabel(|x| if x > v { x - 1 } else { x });
                }
                if let Some(ps) = &c.geometry {
                    c.geometry = Some(ps.without_vertex(v).map_err(|e| e.to_string())?);
                }
                c.n -= 1;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::StarForest;

    #[test]
    fn op_tags() {
        let e = TraceEntry::Case1Step1 {
            focus: EdgeRep::new(1, 3),
            l: 3,
            from: 1,
            to: 0,
            center: 1,
            leaves: vec![2, 3],
        };
        let json = serde_json::to_value(&e).unwrap();
        assert_eq!(json["op"], "case1-step1");
        assert_eq!(json["op"], e.op());
        let back: TraceEntry = serde_json::from_value(json).unwrap();
        assert_eq!(back, e);
        let tag = |e: TraceEntry| serde_json::to_value(e).unwrap()["op"].clone();
        assert_eq!(tag(TraceEntry::DeleteVertex { level: 0, vertex: 1 }), "delete-vertex");
        assert_eq!(
            tag(TraceEntry::EraseSingleton { focus: EdgeRep::new(1, 2), forest: 0, vertex: 2 }),
            "erase-singleton"
        );
        assert_eq!(tag(TraceEntry::Extract { level: 0, forest: 0, center: 1 }), "extract");
    }

    #[test]
    fn extract_and_delete() {
        let mut c = Covering::new(
            3,
            vec![
                StarForest::new(vec![Star::new(2, [1, 3])]),
                StarForest::new(vec![Star::new(1, [3])]),
            ],
        );
        let bad = TraceEntry::Extract { level: 0, forest: 1, center: 1 };
        assert!(bad.apply(&mut c.clone()).is_err());
        TraceEntry::Extract { level: 0, forest: 0, center: 2 }.apply(&mut c).unwrap();
        TraceEntry::DeleteVertex { level: 0, vertex: 2 }.apply(&mut c).unwrap();
        assert_eq!(c.n, 2);
        assert_eq!(c.forests, vec![StarForest::new(vec![Star::new(1, [2])])]);
    }
}

use std::collections::BTreeSet;

use super::support::{is_supported, supported_reps};
use super::{RecolorError, TraceEntry};
use crate::model::{verify_covering, wrap, Covering, Edge, EdgeRep};

/// Which runtime audits the engine performs after each checkpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecolorOptions {
    /// Re-run [`verify_covering`] after every checkpoint.
    pub verify_moves: bool,
    /// Check that no supported representation is ever lost.
    pub audit_support: bool,
}

impl Default for RecolorOptions {
    fn default() -> Self {
        RecolorOptions { verify_moves: true, audit_support: true }
    }
}

/// Relative labels `P_1, ..., P_n` for one focus edge. `P_1` is the center
/// of the focus edge's star and `P_{k+1}` its other endpoint.
#[derive(Clone, Copy, Debug)]
struct Frame {
    n: usize,
    a: usize,
    k: usize,
    reflected: bool,
}

impl Frame {
    fn at(&self, r: usize) -> usize {
        if self.reflected {
            wrap(self.n, self.a + self.k + self.n - (r - 1))
        } else {
            wrap(self.n, self.a + r - 1)
        }
    }

    fn edge(&self, r: usize, s: usize) -> Edge {
        Edge::new(self.at(r), self.at(s))
    }
}

enum Partner {
    Fan(usize),
    Cone(usize),
}

/// Applies the supporting-edge recoloring to a private copy of a covering
/// and records every mutation.
#[derive(Clone, Debug)]
pub struct RecolorEngine {
    covering: Covering,
    trace: Vec<TraceEntry>,
    options: RecolorOptions,
    supported: BTreeSet<EdgeRep>,
}

impl RecolorEngine {
    pub fn new(c: Covering) -> Result<Self, RecolorError> {
        Self::with_options(c, RecolorOptions::default())
    }

    /// Fails with [`RecolorError::InvalidInput`] unless `c` is a valid
    /// covering carrying convex geometry.
    pub fn with_options(c: Covering, options: RecolorOptions) -> Result<Self, RecolorError> {
        match &c.geometry {
            None => return Err(RecolorError::InvalidInput("the covering has no geometry".into())),
            Some(ps) if !ps.is_convex() => {
                return Err(RecolorError::InvalidInput("the points are not in convex position".into()))
            }
            Some(_) => {}
        }
        let report = verify_covering(&c);
        if !report.is_valid() {
            return Err(RecolorError::InvalidInput(report.to_string()));
        }
        let supported = if options.audit_support { supported_reps(&c) } else { BTreeSet::new() };
        Ok(RecolorEngine { covering: c, trace: Vec::new(), options, supported })
    }

    pub fn covering(&self) -> &Covering {
        &self.covering
    }

    pub fn trace(&self) -> &[TraceEntry] {
        &self.trace
    }

    pub fn into_parts(self) -> (Covering, Vec<TraceEntry>) {
        (self.covering, self.trace)
    }

    fn apply(&mut self, entry: TraceEntry) -> Result<(), RecolorError> {
        entry
            .apply(&mut self.covering)
            .map_err(|detail| RecolorError::violation(entry.op(), detail))?;
        let checkpoint = entry.is_checkpoint();
        let op = entry.op();
        self.trace.push(entry);
        if !checkpoint {
            return Ok(());
        }
        if self.options.verify_moves {
            let report = verify_covering(&self.covering);
            if !report.is_valid() {
                return Err(RecolorError::violation(op, report.to_string()));
            }
        }
        if self.options.audit_support {
            let now = supported_reps(&self.covering);
            if let Some(lost) = self.supported.difference(&now).next() {
                return Err(RecolorError::violation(
                    op,
                    format!("rep ({}, {}) is no longer supported", lost.a, lost.k),
                ));
            }
            self.supported = now;
        }
        Ok(())
    }

    /// The forest holding the focus edge and the frame it is processed in:
    /// the lowest forest where `P_a` is the edge's center, otherwise the
    /// lowest forest holding the edge at all, read from the other endpoint.
    fn focus_frame(&self, rep: EdgeRep) -> Result<(usize, Frame), RecolorError> {
        let c = &self.covering;
        let e = rep.edge(c.n);
        let frame = |reflected| Frame { n: c.n, a: rep.a, k: rep.k, reflected };
        let holders = || c.forests.iter().enumerate().filter(|(_, f)| f.contains_edge(e));
        if let Some((i, _)) = holders().find(|(_, f)| f.edge_center(e) == Some(rep.a)) {
            return Ok((i, frame(false)));
        }
        match holders().next() {
            Some((i, _)) => Ok((i, frame(true))),
            None => Err(RecolorError::violation("focus", format!("{e} is not covered"))),
        }
    }

    fn partner(&self, i: usize, fr: &Frame, l: usize) -> Option<Partner> {
        let c = &self.covering;
        c.forests.iter().enumerate().filter(|&(j, _)| j != i).find_map(|(j, f)| {
            if (2..=l).all(|r| f.contains_edge(fr.edge(1, r))) {
                Some(Partner::Fan(j))
            } else if f.contains_edge(fr.edge(1, l)) && (2..l).all(|r| f.contains_edge(fr.edge(r, l))) {
                Some(Partner::Cone(j))
            } else {
                None
            }
        })
    }

    /// Makes `rep` supported, assuming every representation of smaller span
    /// already is.
    pub fn make_supported(&mut self, rep: EdgeRep) -> Result<(), RecolorError> {
        if is_supported(&self.covering, rep)? {
            return Ok(());
        }
        let (i, fr) = self.focus_frame(rep)?;
        let mut last_l = None;
        loop {
            let forest = &self.covering.forests[i];
            let Some(l) = (2..=rep.k).rev().find(|&r| !forest.contains_edge(fr.edge(1, r))) else {
                break;
            };
            if last_l.is_some_and(|prev| l >= prev) {
                return Err(RecolorError::violation(
                    "case2-step1",
                    format!("l did not decrease: {l} after {}", last_l.unwrap_or_default()),
                ));
            }
            if l == 2 {
                if forest.stars.iter().any(|s| s.center == fr.at(2) && s.is_singleton()) {
                    self.apply(TraceEntry::EraseSingleton { focus: rep, forest: i, vertex: fr.at(2) })?;
                }
                self.apply(TraceEntry::AddSide { focus: rep, forest: i, center: fr.at(1), leaf: fr.at(2) })?;
                break;
            }
            match self.partner(i, &fr, l) {
                Some(Partner::Fan(j)) => {
                    self.case1(rep, &fr, i, j, l)?;
                    break;
                }
                Some(Partner::Cone(j)) => {
                    self.case2(rep, &fr, i, j, l)?;
                    last_l = Some(l);
                }
                None => {
                    let missing = fr.edge(1, l);
                    return Err(RecolorError::InvalidInput(format!(
                        "{missing} has span {} but is not supported; shorter spans must be supported first",
                        l - 1
                    )));
                }
            }
        }
        if !is_supported(&self.covering, rep)? {
            return Err(RecolorError::violation("focus", format!("rep ({}, {}) is still unsupported", rep.a, rep.k)));
        }
        Ok(())
    }

    fn case1(&mut self, rep: EdgeRep, fr: &Frame, i: usize, j: usize, l: usize) -> Result<(), RecolorError> {
        let leaves: Vec<usize> = (2..=l).map(|r| fr.at(r)).collect();
        self.apply(TraceEntry::Case1Step1 { focus: rep, l, from: j, to: i, center: fr.at(1), leaves: leaves.clone() })?;
        let span: BTreeSet<usize> = leaves.into_iter().collect();
        let blue = &self.covering.forests[i];
        let stars = blue
            .stars
            .iter()
            .filter(|s| !s.is_singleton() && s.vertices().all(|v| span.contains(&v)))
            .cloned()
            .collect();
        let erased = blue
            .stars
            .iter()
            .filter(|s| s.is_singleton() && span.contains(&s.center))
            .map(|s| s.center)
            .collect();
        self.apply(TraceEntry::Case1Step2 { focus: rep, l, from: i, to: j, stars, erased })
    }

    fn case2(&mut self, rep: EdgeRep, fr: &Frame, i: usize, j: usize, l: usize) -> Result<(), RecolorError> {
        let pl = fr.at(l);
        let blue = &self.covering.forests[i];
        if blue.stars.iter().any(|s| s.center == pl && s.is_singleton()) {
            self.apply(TraceEntry::EraseSingleton { focus: rep, forest: i, vertex: pl })?;
        }
        let blue = &self.covering.forests[i];
        let removed: Vec<Edge> = blue.edges().filter(|e| e.has(pl)).collect();
        if let Some(e) = removed.iter().find(|&&e| !self.covering.forests[j].contains_edge(e)) {
            return Err(RecolorError::violation("case2-step1", format!("{e} would be left uncovered")));
        }
        self.apply(TraceEntry::Case2Step1 { focus: rep, l, forest: i, partner: j, center: fr.at(1), leaf: pl, removed })
    }

    /// Makes every representation of span `2..=k` supported, span by span
    /// and base vertex by base vertex.
    pub fn make_all_supported_up_to(&mut self, k: usize) -> Result<(), RecolorError> {
        let n = self.covering.n;
        if k >= n.max(2) {
            return Err(RecolorError::BadSpan { rep: EdgeRep::new(1, k), n });
        }
        for span in 2..=k {
            for a in 1..=n {
                self.make_supported(EdgeRep::new(a, span))?;
            }
        }
        Ok(())
    }
}

/// Runs [`RecolorEngine::make_supported`] on a copy of `c`.
pub fn make_supported(c: &Covering, rep: EdgeRep) -> Result<(Covering, Vec<TraceEntry>), RecolorError> {
    let mut engine = RecolorEngine::new(c.clone())?;
    engine.make_supported(rep)?;
    Ok(engine.into_parts())
}

/// Runs [`RecolorEngine::make_all_supported_up_to`] on a copy of `c`.
pub fn make_all_supported_up_to(c: &Covering, k: usize) -> Result<(Covering, Vec<TraceEntry>), RecolorError> {
    let mut engine = RecolorEngine::new(c.clone())?;
    engine.make_all_supported_up_to(k)?;
    Ok(engine.into_parts())
}

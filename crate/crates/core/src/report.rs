//! Check reports shared by every suite.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::core::CellId;

/// Whether a failure refutes an axiom of the input or a theorem that should follow from them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Severity {
    Axiom,
    TheoremViolation,
}

/// One failing ground instance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub axiom_id: String,
    pub severity: Severity,
    /// Direction/sign/level bindings of the instance, in binding order.
    pub bindings: Vec<(String, String)>,
    /// Witness cells; for graded structures the level is part of the bindings.
    pub cells: Vec<CellId>,
    /// Left-hand side as evaluated; `None` when undefined.
    pub lhs: Option<CellId>,
    /// Right-hand side as evaluated; `None` when undefined.
    pub rhs: Option<CellId>,
}

/// Outcome of a suite: violations plus per-axiom instance counts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
    pub checked_count: u64,
    pub per_axiom: BTreeMap<String, u64>,
    pub notes: Vec<String>,
    pub skipped: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, axiom_id: &str) -> u64 {
        self.per_axiom.get(axiom_id).copied().unwrap_or(0)
    }

    pub fn violations_of<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.axiom_id.starts_with(prefix))
    }

    /// Appends another report and restores canonical order.
    pub fn merge(&mut self, other: CheckReport) {
        self.violations.extend(other.violations);
        self.checked_count += other.checked_count;
        for (k, v) in other.per_axiom {
            *self.per_axiom.entry(k).or_insert(0) += v;
        }
        self.notes.extend(other.notes);
        self.skipped.extend(other.skipped);
        self.violations.sort();
    }

    pub(crate) fn from_tally(t: Tally) -> Self {
        let mut violations = t.violations;
        violations.sort();
        let per_axiom: BTreeMap<String, u64> = t.counts.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        CheckReport { violations, checked_count: per_axiom.values().sum(), per_axiom, notes: vec![], skipped: vec![] }
    }
}

/// Witness under construction: bindings and cells.
pub(crate) struct Witness {
    pub bindings: Vec<(String, String)>,
    pub cells: Vec<CellId>,
}

pub(crate) fn wit(bindings: &[(&str, String)], cells: &[CellId]) -> Witness {
    Witness {
        bindings: bindings.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        cells: cells.to_vec(),
    }
}

/// Accumulates instance counts and violations; merged across workers.
#[derive(Default)]
pub(crate) struct Tally {
    pub counts: BTreeMap<&'static str, u64>,
    pub violations: Vec<Violation>,
    pub severity: Option<Severity>,
}

impl Tally {
    pub fn new(severity: Severity) -> Self {
        Tally { severity: Some(severity), ..Default::default() }
    }

    /// Records one instance of `id`; on failure the witness closure is evaluated.
    #[inline]
    pub fn eq(
        &mut self,
        id: &'static str,
        lhs: Option<CellId>,
        rhs: Option<CellId>,
        w: impl FnOnce() -> Witness,
    ) {
        *self.counts.entry(id).or_insert(0) += 1;
        if lhs.is_none() || lhs != rhs {
            self.fail(id, lhs, rhs, w());
        }
    }

    /// Records one instance of a boolean property.
    #[inline]
    pub fn holds(&mut self, id: &'static str, ok: bool, w: impl FnOnce() -> Witness) {
        *self.counts.entry(id).or_insert(0) += 1;
        if !ok {
            self.fail(id, None, None, w());
        }
    }

    fn fail(&mut self, id: &'static str, lhs: Option<CellId>, rhs: Option<CellId>, w: Witness) {
        self.violations.push(Violation {
            axiom_id: id.to_string(),
            severity: self.severity.unwrap_or(Severity::Axiom),
            bindings: w.bindings,
            cells: w.cells,
            lhs,
            rhs,
        });
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        for (k, v) in other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        self.violations.extend(other.violations);
        if self.severity.is_none() {
            self.severity = other.severity;
        }
        self
    }
}

/// Runs `body` for each cell in parallel and merges the tallies deterministically.
pub(crate) fn par_cells<F>(n_cells: usize, severity: Severity, body: F) -> Tally
where
    F: Fn(CellId, &mut Tally) + Sync + Send,
{
    use rayon::prelude::*;
    (0..n_cells as u32)
        .into_par_iter()
        .fold(
            || Tally::new(severity),
            |mut t, x| {
                body(CellId(x), &mut t);
                t
            },
        )
        .reduce(|| Tally::new(severity), Tally::merge)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_counts_and_fails() {
        let mut t = Tally::new(Severity::Axiom);
        t.eq("A", Some(CellId(1)), Some(CellId(1)), || wit(&[], &[]));
        t.eq("A", None, None, || wit(&[("i", "1".into())], &[CellId(3)]));
        t.holds("B", false, || wit(&[], &[CellId(2)]));
        let r = CheckReport::from_tally(t);
        assert_eq!(r.checked_count, 3);
        assert_eq!(r.count("A"), 2);
        assert_eq!(r.violations.len(), 2);
        assert_eq!(r.violations[0].axiom_id, "A");
    }
}

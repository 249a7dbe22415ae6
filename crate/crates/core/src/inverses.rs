//! r_i-invertibility: brute-force search, shells, the (n,p) condition and the
//! constructive inverse synthesis for (n,0)-categories.

use std::collections::HashMap;

use serde::Serialize;

use crate::core::{CellId, SingleSetStructure};
use crate::core::Sign::{self, Minus, Plus};
use crate::error::CubicalError;
use crate::report::{par_cells, wit, CheckReport, Severity, Tally};

/// Evidence that `inverse` is the r_i-inverse of `cell`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InverseCertificate {
    pub direction: usize,
    pub cell: CellId,
    pub inverse: CellId,
    /// `Δ_i(x,y)`, `x ∘_i y = δ_i^- x`, `Δ_i(y,x)`, `y ∘_i x = δ_i^+ x`.
    pub evidence: [bool; 4],
}

impl InverseCertificate {
    pub fn is_complete(&self) -> bool {
        self.evidence.iter().all(|&b| b)
    }
}

fn evidence(s: &SingleSetStructure, i: usize, x: CellId, y: CellId) -> [bool; 4] {
    let xy = s.c(i, x, y);
    let yx = s.c(i, y, x);
    [xy.is_some(), xy == Some(s.d(i, Minus, x)), yx.is_some(), yx == Some(s.d(i, Plus, x))]
}

fn certificate(s: &SingleSetStructure, i: usize, x: CellId, y: CellId) -> InverseCertificate {
    InverseCertificate { direction: i, cell: x, inverse: y, evidence: evidence(s, i, x, y) }
}

fn check_range(s: &SingleSetStructure, i: usize, x: CellId) -> Result<(), CubicalError> {
    if i == 0 || i > s.dim() {
        return Err(CubicalError::IndexOutOfRange { what: "direction".into(), index: i, bound: s.dim() });
    }
    if x.index() >= s.len() {
        return Err(CubicalError::UnknownCell(format!("#{}", x.0)));
    }
    Ok(())
}

/// Unchecked inverse lookup. Candidates must compose with `x` on the right, so
/// only defined composites are scanned.
pub(crate) fn find_inverse(s: &SingleSetStructure, i: usize, x: CellId) -> Result<Option<CellId>, CubicalError> {
    let (dm, dp) = (s.d(i, Minus, x), s.d(i, Plus, x));
    let mut found = None;
    for &(y, z) in s.row(i, x) {
        if z == dm && s.c(i, y, x) == Some(dp) {
            if let Some(prev) = found {
                return Err(CubicalError::Inconsistent(format!(
                    "cell {} has two r_{i}-inverses {} and {}",
                    s.name(x),
                    s.name(prev),
                    s.name(y)
                )));
            }
            found = Some(y);
        }
    }
    Ok(found)
}

/// The unique r_i-inverse of `x`, if any.
pub fn ri_inverse(s: &SingleSetStructure, i: usize, x: CellId) -> Result<Option<InverseCertificate>, CubicalError> {
    check_range(s, i, x)?;
    Ok(find_inverse(s, i, x)?.map(|y| certificate(s, i, x, y)))
}

/// All r_i-inverses, `table[i-1][x]`.
pub fn inverse_table(s: &SingleSetStructure) -> Result<Vec<Vec<Option<CellId>>>, CubicalError> {
    (1..=s.dim()).map(|i| s.cells().map(|x| find_inverse(s, i, x)).collect()).collect()
}

/// Whether every face `δ_j^α x` with `j ≤ k`, `j ≠ i` is r_i-invertible.
pub fn shell_invertible(s: &SingleSetStructure, k: usize, i: usize, x: CellId) -> Result<bool, CubicalError> {
    check_range(s, i, x)?;
    if k < i || k > s.dim() {
        return Err(CubicalError::Domain(format!("need 1 ≤ i ≤ k ≤ n, got i = {i}, k = {k}, n = {}", s.dim())));
    }
    if !s.fix_above(k, x) {
        return Err(CubicalError::Domain(format!("cell {} is not fixed in directions above {k}", s.name(x))));
    }
    for j in (1..=k).filter(|&j| j != i) {
        for a in Sign::BOTH {
            if find_inverse(s, i, s.d(j, a, x))?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The (n,p) condition: for levels `k > p`, shell-invertible cells of `S^{>k}` are invertible.
pub fn check_np(s: &SingleSetStructure, p: usize) -> CheckReport {
    let n = s.dim();
    let mut t = Tally::new(Severity::Axiom);
    let mut notes = Vec::new();
    for k in (p + 1)..=n {
        for x in s.cells().filter(|&x| s.fix_above(k, x)) {
            for i in 1..=k {
                match (shell_invertible(s, k, i, x), find_inverse(s, i, x)) {
                    (Ok(true), Ok(inv)) => t.holds("NP.shell-invertible-implies-invertible", inv.is_some(), || {
                        wit(&[("k", k.to_string()), ("i", i.to_string())], &[x])
                    }),
                    (Ok(false), _) => {}
                    (Err(e), _) | (_, Err(e)) => notes.push(e.to_string()),
                }
            }
        }
    }
    let mut r = CheckReport::from_tally(t);
    notes.dedup();
    r.notes = notes;
    r
}

/// Inverse synthesis following the induction on dimension for (n,0)-categories.
///
/// Shell inverses are built recursively from conjugated faces; the final inverse
/// is selected among cells matching the constructed shell.
pub struct InverseSynthesizer<'a> {
    s: &'a SingleSetStructure,
    memo: HashMap<(usize, CellId), CellId>,
}

impl<'a> InverseSynthesizer<'a> {
    pub fn new(s: &'a SingleSetStructure) -> Self {
        Self { s, memo: HashMap::new() }
    }

    pub fn synthesize(&mut self, i: usize, x: CellId) -> Result<InverseCertificate, CubicalError> {
        check_range(self.s, i, x)?;
        let y = self.inverse(i, x)?;
        Ok(certificate(self.s, i, x, y))
    }

    fn verified(&self, i: usize, x: CellId, y: CellId, role: &str) -> Result<CellId, CubicalError> {
        if evidence(self.s, i, x, y).iter().all(|&b| b) {
            Ok(y)
        } else {
            Err(CubicalError::NotNp(format!(
                "{role} {} fails the r_{i}-inverse equations for {}",
                self.s.name(y),
                self.s.name(x)
            )))
        }
    }

    fn inverse(&mut self, i: usize, x: CellId) -> Result<CellId, CubicalError> {
        if let Some(&y) = self.memo.get(&(i, x)) {
            return Ok(y);
        }
        let s = self.s;
        let k = s.level(x);
        let y = if k == 0 || i > k {
            // x lies in S^i, so it is its own r_i-inverse.
            self.verified(i, x, x, "cell")?
        } else {
            let mut shell: Vec<(usize, Sign, CellId)> = Vec::new();
            for j in (1..=k).filter(|&j| j != i) {
                for a in Sign::BOTH {
                    let face = s.d(j, a, x);
                    // u = s_{k-1} … s_j δ_j^α x lies in S^{>k-1}.
                    let u = (j..k).fold(face, |acc, m| s.s(m, acc));
                    if !s.fix_above(k - 1, u) {
                        return Err(CubicalError::Inconsistent(format!(
                            "conjugated face {} of {} is not in S^{{>{}}}",
                            s.name(u),
                            s.name(x),
                            k - 1
                        )));
                    }
                    let dir = if j < i { i - 1 } else { i };
                    let y = self.inverse(dir, u).map_err(|e| match e {
                        CubicalError::NotNp(msg) => CubicalError::NotNp(format!(
                            "face δ_{j}^{a} {} of {} has no r_{i}-inverse ({msg})",
                            s.name(face),
                            s.name(x)
                        )),
                        other => other,
                    })?;
                    // z = s̃_j … s̃_{k-1} y, applying s̃_{k-1} first.
                    let z = (j..k).rev().fold(y, |acc, m| s.t(m, acc));
                    self.verified(i, face, z, "constructed shell inverse")?;
                    shell.push((j, a, z));
                }
            }
            let mut found: Option<CellId> = None;
            for &(c, _) in s.row(i, x) {
                let matches = s.fix_above(k, c)
                    && Sign::BOTH.iter().all(|&a| s.d(i, a, c) == s.d(i, a.flip(), x))
                    && shell.iter().all(|&(j, a, z)| s.d(j, a, c) == z)
                    && evidence(s, i, x, c).iter().all(|&b| b);
                if matches {
                    if let Some(prev) = found {
                        return Err(CubicalError::Inconsistent(format!(
                            "two r_{i}-inverses {} and {} of {}",
                            s.name(prev),
                            s.name(c),
                            s.name(x)
                        )));
                    }
                    found = Some(c);
                }
            }
            found.ok_or_else(|| {
                CubicalError::NotNp(format!("{} has an r_{i}-invertible shell but no r_{i}-inverse", s.name(x)))
            })?
        };
        self.memo.insert((i, x), y);
        Ok(y)
    }
}

/// One-shot synthesis of the r_i-inverse of `x`.
pub fn synthesize_inverse_dim0(s: &SingleSetStructure, i: usize, x: CellId) -> Result<InverseCertificate, CubicalError> {
    InverseSynthesizer::new(s).synthesize(i, x)
}

/// Compatibility of inverses with faces, compositions, symmetries and
/// connections, plus stability of fixed-point sets.
pub fn check_inverse_lemmas(s: &SingleSetStructure) -> Result<CheckReport, CubicalError> {
    let n = s.dim();
    let inv = inverse_table(s)?;
    let r = |i: usize, x: CellId| inv[i - 1][x.index()];
    let conn = s.has_connections();
    let t = par_cells(s.len(), Severity::TheoremViolation, |x, t| {
        for i in 1..=n {
            let Some(rx) = r(i, x) else { continue };
            for a in Sign::BOTH {
                t.eq("INV.i-face-same", Some(s.d(i, a, rx)), Some(s.d(i, a.flip(), x)), || {
                    wit(&[("i", i.to_string()), ("alpha", a.to_string())], &[x])
                });
                for j in (1..=n).filter(|&j| j != i) {
                    t.eq("INV.i-face-other", Some(s.d(j, a, rx)), r(i, s.d(j, a, x)), || {
                        wit(&[("i", i.to_string()), ("j", j.to_string()), ("alpha", a.to_string())], &[x])
                    });
                }
            }
            for j in 1..=n {
                for &(y, xy) in s.row(j, x) {
                    let Some(ry) = r(i, y) else { continue };
                    let rhs = if j == i { s.c(i, ry, rx) } else { s.c(j, rx, ry) };
                    let id = if j == i { "INV.ii-comp-same" } else { "INV.ii-comp-other" };
                    t.eq(id, r(i, xy), rhs, || wit(&[("i", i.to_string()), ("j", j.to_string())], &[x, y]));
                }
            }
            if i >= 2 && s.fix(i - 1, x) {
                let sx = s.s(i - 1, x);
                t.eq("INV.iii-sym-prev", r(i, sx), Some(sx), || wit(&[("i", i.to_string())], &[x]));
            }
            for j in (1..n).filter(|&j| j + 1 != i && j != i) {
                if s.fix(j, x) {
                    t.eq("INV.iii-sym-other", r(i, s.s(j, x)), Some(s.s(j, rx)), || {
                        wit(&[("i", i.to_string()), ("j", j.to_string())], &[x])
                    });
                }
                if s.fix(j + 1, x) {
                    t.eq("INV.iv-invsym-other", r(i, s.t(j, x)), Some(s.t(j, rx)), || {
                        wit(&[("i", i.to_string()), ("j", j.to_string())], &[x])
                    });
                }
            }
            if i < n && s.fix(i + 1, x) {
                let tx = s.t(i, x);
                t.eq("INV.iv-invsym-same", r(i, tx), Some(tx), || wit(&[("i", i.to_string())], &[x]));
            }
            if conn {
                for j in (1..n).filter(|&j| j != i && j + 1 != i) {
                    if s.fix(j, x) {
                        for a in Sign::BOTH {
                            t.eq("INV.v-conn", r(i, s.g(j, a, x)), Some(s.g(j, a, rx)), || {
                                wit(&[("i", i.to_string()), ("j", j.to_string()), ("alpha", a.to_string())], &[x])
                            });
                        }
                    }
                }
            }
            for m in 0..n {
                if s.fix_above(m, x) {
                    t.holds("INV.stability", s.fix_above(m, rx), || {
                        wit(&[("i", i.to_string()), ("m", m.to_string())], &[x])
                    });
                }
            }
        }
    });
    let mut rep = CheckReport::from_tally(t);
    rep.notes.push(
        "INV.iii-sym-other and INV.iv-invsym-other are instantiated for j outside {i-1, i}; \
         the instances j = i and j = i-1 are false on pair-groupoid nerves"
            .into(),
    );
    if !conn {
        rep.skipped.push("INV.v-conn skipped: no connection tables".into());
    }
    Ok(rep)
}

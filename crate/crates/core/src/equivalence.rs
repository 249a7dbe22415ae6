//! Translation between single-set and classical presentations, and the round-trip checks.
//!
//! `fc` takes `C_k = S^{>k}`; `fs` takes the top level `C_n` as carrier, since with
//! injective degeneracies every lower cell is identified with its top-level padding.

use std::collections::BTreeSet;

use crate::classical::{self, find_r_inverse, ClassicalStructure, LevelTables};
use crate::core::Sign::{self, Minus};
use crate::core::{CellId, SingleSetStructure, StructureTables};
use crate::error::CubicalError;
use crate::inverses::{check_np, find_inverse};
use crate::laws;
use crate::report::{wit, CheckReport, Severity, Tally};

/// Cells of each level of `fc(S)` as cells of `S`: `levels[k][a]` is the cell with index `a` in `C_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelEmbedding {
    pub levels: Vec<Vec<CellId>>,
    position: Vec<Vec<Option<u32>>>,
}

impl LevelEmbedding {
    pub fn new(s: &SingleSetStructure) -> Self {
        let n = s.dim();
        let mut levels = Vec::with_capacity(n + 1);
        let mut position = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let cells: Vec<CellId> = s.cells().filter(|&x| s.fix_above(k, x)).collect();
            let mut pos = vec![None; s.len()];
            for (a, &x) in cells.iter().enumerate() {
                pos[x.index()] = Some(a as u32);
            }
            levels.push(cells);
            position.push(pos);
        }
        LevelEmbedding { levels, position }
    }

    /// Index of `x` within level `k`, if `x ∈ S^{>k}`.
    pub fn position(&self, k: usize, x: CellId) -> Option<u32> {
        self.position[k][x.index()]
    }

    pub fn cell(&self, k: usize, a: u32) -> CellId {
        self.levels[k][a as usize]
    }
}

/// Applies `s_{k-1} … s_i` to `x`, `s_i` first.
fn sym_chain(s: &SingleSetStructure, i: usize, k: usize, x: CellId) -> CellId {
    (i..k).fold(x, |y, j| s.s(j, y))
}

/// Applies `s̃_i … s̃_{k-1}` to `x`, `s̃_{k-1}` first.
fn invsym_chain(s: &SingleSetStructure, i: usize, k: usize, x: CellId) -> CellId {
    (i..k).rev().fold(x, |y, j| s.t(j, y))
}

/// Builds `fc(S)` without requiring `S` to be validated; fails if an image leaves its level.
pub fn fc_raw(s: &SingleSetStructure) -> Result<(ClassicalStructure, LevelEmbedding), CubicalError> {
    let n = s.dim();
    let emb = LevelEmbedding::new(s);
    let conn = s.has_connections();
    let to = |k: usize, what: &str, x: CellId| -> Result<u32, CubicalError> {
        emb.position(k, x).ok_or_else(|| {
            CubicalError::Structure(format!("{what} produces {} outside level {k}", s.name(x)))
        })
    };
    let mut levels = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let cells = &emb.levels[k];
        let mut face = Vec::with_capacity(k);
        let mut deg = Vec::with_capacity(k);
        let mut comp = Vec::with_capacity(k);
        let mut conn_t = Vec::new();
        for i in 1..=k {
            let mut pair = [Vec::with_capacity(cells.len()), Vec::with_capacity(cells.len())];
            for a in Sign::BOTH {
                for &x in cells {
                    let y = sym_chain(s, i, k, s.d(i, a, x));
                    pair[a.idx()].push(to(k - 1, &format!("face {k},{i},{a}"), y)?);
                }
            }
            face.push(pair);
            let mut e = Vec::with_capacity(emb.levels[k - 1].len());
            for &x in &emb.levels[k - 1] {
                e.push(to(k, &format!("degeneracy {k},{i}"), invsym_chain(s, i, k, x))?);
            }
            deg.push(e);
            let mut entries = Vec::new();
            for (a, &x) in cells.iter().enumerate() {
                for &(y, z) in s.row(i, x) {
                    if let Some(b) = emb.position(k, y) {
                        entries.push((a as u32, b, to(k, &format!("composition {k},{i}"), z)?));
                    }
                }
            }
            comp.push(entries);
            if conn && i < k {
                let mut pair = [Vec::new(), Vec::new()];
                for a in Sign::BOTH {
                    for &x in &emb.levels[k - 1] {
                        let y = s.g(i, a, invsym_chain(s, i, k, x));
                        pair[a.idx()].push(to(k, &format!("connection {k},{i},{a}"), y)?);
                    }
                }
                conn_t.push(pair);
            }
        }
        levels.push(LevelTables {
            names: cells.iter().map(|&x| s.name(x).to_string()).collect(),
            face,
            deg,
            comp,
            conn: conn_t,
        });
    }
    let c = ClassicalStructure::from_tables_raw(levels, conn)?;
    Ok((c, emb))
}

/// `fc(S)`: refuses unvalidated input and checks the image against the classical suite.
pub fn fc(s: &SingleSetStructure) -> Result<(ClassicalStructure, LevelEmbedding), CubicalError> {
    if !s.is_validated() {
        return Err(CubicalError::NotValidated);
    }
    let (c, emb) = fc_raw(s)?;
    let c = ClassicalStructure::from_tables(c.to_tables(), c.has_connections())?;
    match classical::validate(c) {
        Ok(c) => Ok((c, emb)),
        Err((_, r)) => Err(CubicalError::Inconsistent(format!(
            "fc image fails {} classical instances, first {}",
            r.violations.len(),
            r.violations[0].axiom_id
        ))),
    }
}

/// Builds `fs(C)` on the carrier `C_n` without requiring `C` to be validated.
pub fn fs_raw(c: &ClassicalStructure) -> Result<SingleSetStructure, CubicalError> {
    let n = c.dim();
    let size = c.level_size(n);
    let cells = 0..size as u32;
    let ids = |v: Vec<u32>| v.into_iter().map(CellId).collect::<Vec<_>>();
    let face = (1..=n)
        .map(|i| Sign::BOTH.map(|a| ids(cells.clone().map(|x| c.e(n, i, c.pd(n, i, a, x))).collect())))
        .collect();
    let sym = (1..n)
        .map(|i| ids(cells.clone().map(|x| c.e(n, i + 1, c.pd(n, i, Minus, x))).collect()))
        .collect();
    let inv_sym = (1..n)
        .map(|i| ids(cells.clone().map(|x| c.e(n, i, c.pd(n, i + 1, Minus, x))).collect()))
        .collect();
    let comp = (1..=n)
        .map(|i| {
            cells
                .clone()
                .flat_map(|x| c.row(n, i, x).iter().map(move |&(y, z)| (CellId(x), CellId(y), CellId(z))))
                .collect()
        })
        .collect();
    let conn = c.has_connections().then(|| {
        (1..n)
            .map(|i| Sign::BOTH.map(|a| ids(cells.clone().map(|x| c.gm(n, i, a, c.pd(n, i, a, x))).collect())))
            .collect()
    });
    SingleSetStructure::from_tables(StructureTables {
        dim: n,
        names: c.level_names(n).to_vec(),
        face,
        comp,
        sym,
        inv_sym,
        conn,
    })
}

/// `fs(C)`: refuses unvalidated input and checks the image against the single-set suite.
pub fn fs(c: &ClassicalStructure) -> Result<SingleSetStructure, CubicalError> {
    if !c.is_validated() {
        return Err(CubicalError::NotValidated);
    }
    match laws::validate(fs_raw(c)?) {
        Ok(s) => Ok(s),
        Err((_, r)) => Err(CubicalError::Inconsistent(format!(
            "fs image fails {} single-set instances, first {}",
            r.violations.len(),
            r.violations[0].axiom_id
        ))),
    }
}

fn construct_failure(id: &'static str, e: CubicalError) -> CheckReport {
    let mut t = Tally::new(Severity::Axiom);
    t.holds(id, false, || wit(&[("error", e.to_string())], &[]));
    CheckReport::from_tally(t)
}

fn kb(k: &'static str, v: usize) -> (&'static str, String) {
    (k, v.to_string())
}

/// Compares `S` with `fs(fc(S))` under the identity on carriers.
pub fn check_mu(s: &SingleSetStructure) -> CheckReport {
    let s2 = match fc_raw(s).and_then(|(c, _)| fs_raw(&c)) {
        Ok(s2) => s2,
        Err(e) => return construct_failure("MU.construct", e),
    };
    let n = s.dim();
    let mut t = Tally::new(Severity::Axiom);
    t.holds("MU.carrier", s2.len() == s.len() && s2.names() == s.names(), || wit(&[], &[]));
    if s2.len() != s.len() {
        return CheckReport::from_tally(t);
    }
    let conn = s.has_connections() && s2.has_connections();
    for x in s.cells() {
        for i in 1..=n {
            for a in Sign::BOTH {
                t.eq("MU.face", Some(s2.d(i, a, x)), Some(s.d(i, a, x)), || {
                    wit(&[kb("i", i), ("alpha", a.to_string())], &[x])
                });
            }
            t.holds("MU.comp", s2.row(i, x) == s.row(i, x), || wit(&[kb("i", i)], &[x]));
            if i < n {
                t.eq("MU.sym-global", Some(s2.s(i, x)), Some(s.s(i, s.d(i, Minus, x))), || wit(&[kb("i", i)], &[x]));
                if s.fix(i, x) {
                    t.eq("MU.sym-fixed", Some(s2.s(i, x)), Some(s.s(i, x)), || wit(&[kb("i", i)], &[x]));
                }
                t.eq("MU.invsym-global", Some(s2.t(i, x)), Some(s.t(i, s.d(i + 1, Minus, x))), || {
                    wit(&[kb("i", i)], &[x])
                });
                if s.fix(i + 1, x) {
                    t.eq("MU.invsym-fixed", Some(s2.t(i, x)), Some(s.t(i, x)), || wit(&[kb("i", i)], &[x]));
                }
                if conn {
                    for a in Sign::BOTH {
                        let w = || wit(&[kb("i", i), ("alpha", a.to_string())], &[x]);
                        t.eq("MU.conn-global", Some(s2.g(i, a, x)), Some(s.g(i, a, s.d(i, a, x))), w);
                        if s.fix(i, x) {
                            t.eq("MU.conn-fixed", Some(s2.g(i, a, x)), Some(s.g(i, a, x)), w);
                        }
                    }
                }
            }
        }
    }
    let mut r = CheckReport::from_tally(t);
    if !conn {
        r.skipped.push("MU.conn-* skipped: no connection tables".into());
    }
    r
}

/// Unit of the round trip `C → fc(fs(C))`, as level-wise maps into `C_n`.
pub struct EtaMaps<'a> {
    c: &'a ClassicalStructure,
}

impl<'a> EtaMaps<'a> {
    pub fn new(c: &'a ClassicalStructure) -> Self {
        EtaMaps { c }
    }

    /// `η_k(a) = ε_{n,n} … ε_{k+1,k+1} a`.
    pub fn eta(&self, k: usize, a: u32) -> u32 {
        ((k + 1)..=self.c.dim()).fold(a, |x, j| self.c.e(j, j, x))
    }

    /// `η̄_k(b) = ∂^-_{k+1,k+1} … ∂^-_{n,n} b`.
    pub fn eta_bar(&self, k: usize, b: u32) -> u32 {
        ((k + 1)..=self.c.dim()).rev().fold(b, |x, j| self.c.pd(j, j, Minus, x))
    }
}

/// Compares `C` with `fc(fs(C))` through `η` and `η̄`.
pub fn check_eta(c: &ClassicalStructure) -> CheckReport {
    let (d, emb) = match fs_raw(c).and_then(|s| fc_raw(&s)) {
        Ok(v) => v,
        Err(e) => return construct_failure("ETA.construct", e),
    };
    let n = c.dim();
    let maps = EtaMaps::new(c);
    let mut t = Tally::new(Severity::Axiom);
    let gc = |k: usize, a: u32| c.global(k, a);
    // eta[k][a]: index in D_k, if typed.
    let mut eta: Vec<Vec<Option<u32>>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut row = Vec::with_capacity(c.level_size(k));
        let mut seen = vec![None; d.level_size(k)];
        for a in 0..c.level_size(k) as u32 {
            let top = CellId(maps.eta(k, a));
            let pos = emb.position(k, top);
            t.holds("ETA.image-typed", pos.is_some(), || wit(&[kb("k", k)], &[gc(k, a)]));
            if let Some(p) = pos {
                let prev: &mut Option<u32> = &mut seen[p as usize];
                t.holds("ETA.well-defined", prev.is_none(), || {
                    wit(&[kb("k", k)], &[gc(k, prev.unwrap_or(a)), gc(k, a)])
                });
                prev.get_or_insert(a);
            }
            row.push(pos);
            t.eq("ETA.inverse-left", Some(gc(k, maps.eta_bar(k, top.0))), Some(gc(k, a)), || {
                wit(&[kb("k", k)], &[gc(k, a)])
            });
        }
        for b in 0..d.level_size(k) as u32 {
            let top = emb.cell(k, b).0;
            let back = maps.eta_bar(k, top);
            t.eq("ETA.inverse-right", Some(CellId(maps.eta(k, back))), Some(CellId(top)), || {
                wit(&[kb("k", k)], &[c.global(n, top)])
            });
        }
        eta.push(row);
    }
    let gd = |k: usize, b: Option<u32>| b.map(|b| c.global(n, emb.cell(k, b).0));
    for k in 1..=n {
        for a in 0..c.level_size(k) as u32 {
            for i in 1..=k {
                for al in Sign::BOTH {
                    let lhs = eta[k][a as usize].map(|b| d.pd(k, i, al, b));
                    let rhs = eta[k - 1][c.pd(k, i, al, a) as usize];
                    t.eq("ETA.face", gd(k - 1, lhs), gd(k - 1, rhs), || {
                        wit(&[kb("k", k), kb("i", i), ("alpha", al.to_string())], &[gc(k, a)])
                    });
                }
                for &(b, z) in c.row(k, i, a) {
                    let lhs = eta[k][a as usize].zip(eta[k][b as usize]).and_then(|(x, y)| d.st(k, i, x, y));
                    t.eq("ETA.comp", gd(k, lhs), gd(k, eta[k][z as usize]), || {
                        wit(&[kb("k", k), kb("i", i)], &[gc(k, a), gc(k, b)])
                    });
                }
            }
        }
        for a in 0..c.level_size(k - 1) as u32 {
            for i in 1..=k {
                let lhs = eta[k - 1][a as usize].map(|b| d.e(k, i, b));
                t.eq("ETA.deg", gd(k, lhs), gd(k, eta[k][c.e(k, i, a) as usize]), || {
                    wit(&[kb("k", k), kb("i", i)], &[gc(k - 1, a)])
                });
                if c.has_connections() && i < k {
                    for al in Sign::BOTH {
                        let lhs = eta[k - 1][a as usize].map(|b| d.gm(k, i, al, b));
                        t.eq("ETA.conn", gd(k, lhs), gd(k, eta[k][c.gm(k, i, al, a) as usize]), || {
                            wit(&[kb("k", k), kb("i", i), ("alpha", al.to_string())], &[gc(k - 1, a)])
                        });
                    }
                }
            }
        }
        // η̄ on D, compared inside C.
        for b in 0..d.level_size(k) as u32 {
            let bar = |lvl: usize, b: u32| gc(lvl, maps.eta_bar(lvl, emb.cell(lvl, b).0));
            for i in 1..=k {
                for al in Sign::BOTH {
                    let lhs = bar(k - 1, d.pd(k, i, al, b));
                    let rhs = c.pd(k, i, al, maps.eta_bar(k, emb.cell(k, b).0));
                    t.eq("ETA.bar-face", Some(lhs), Some(gc(k - 1, rhs)), || {
                        wit(&[kb("k", k), kb("i", i), ("alpha", al.to_string())], &[c.global(n, emb.cell(k, b).0)])
                    });
                }
            }
        }
    }
    CheckReport::from_tally(t)
}

/// `(k, i, cell)` triples from the failing instances of an (n,p) report, keyed by cells of `S`.
fn np_witnesses(r: &CheckReport, to_cell: impl Fn(usize, CellId) -> CellId) -> BTreeSet<(usize, usize, CellId)> {
    r.violations
        .iter()
        .filter_map(|v| {
            let get = |key: &str| v.bindings.iter().find(|(k, _)| k == key)?.1.parse::<usize>().ok();
            let (k, i) = (get("k")?, get("i")?);
            Some((k, i, to_cell(k, *v.cells.first()?)))
        })
        .collect()
}

/// Inverses agree across `fc` and `fs`, and the (n,p) conditions agree with matching witnesses.
pub fn check_inverse_transport(s: &SingleSetStructure, p: usize) -> CheckReport {
    let (c, emb) = match fc_raw(s) {
        Ok(v) => v,
        Err(e) => return construct_failure("TRANSPORT.construct", e),
    };
    let n = s.dim();
    let mut t = Tally::new(Severity::Axiom);
    let mut notes = Vec::new();
    for k in 0..=n {
        for (a, &x) in emb.levels[k].iter().enumerate() {
            for i in 1..=k {
                match (find_inverse(s, i, x), find_r_inverse(&c, k, i, a as u32)) {
                    (Ok(l), Ok(r)) => {
                        let r = r.map(|b| emb.cell(k, b));
                        t.holds("TRANSPORT.forward", l == r, || {
                            wit(&[kb("k", k), kb("i", i), ("single", fmt(s, l)), ("classical", fmt(s, r))], &[x])
                        });
                    }
                    (Err(e), _) | (_, Err(e)) => notes.push(e.to_string()),
                }
            }
        }
    }
    match fs_raw(&c) {
        Ok(s2) => {
            for x in s2.cells() {
                for i in 1..=n {
                    match (find_inverse(&s2, i, x), find_r_inverse(&c, n, i, x.0)) {
                        (Ok(l), Ok(r)) => t.holds("TRANSPORT.backward", l == r.map(CellId), || {
                            wit(&[kb("i", i)], &[x])
                        }),
                        (Err(e), _) | (_, Err(e)) => notes.push(e.to_string()),
                    }
                }
            }
        }
        Err(e) => t.holds("TRANSPORT.construct", false, || wit(&[("error", e.to_string())], &[])),
    }
    let single = check_np(s, p);
    let graded = classical::check_classical_np(&c, p);
    t.holds("TRANSPORT.np-agreement", single.passed() == graded.passed(), || {
        wit(&[kb("p", p), ("single", single.passed().to_string()), ("classical", graded.passed().to_string())], &[])
    });
    let ws = np_witnesses(&single, |_, x| x);
    let wc = np_witnesses(&graded, |_, g| {
        let cell = c.from_global(g);
        emb.cell(cell.level, cell.index)
    });
    t.holds("TRANSPORT.np-witness", ws == wc, || {
        let diff: Vec<CellId> = ws.symmetric_difference(&wc).map(|w| w.2).collect();
        wit(&[kb("p", p)], &diff)
    });
    let mut r = CheckReport::from_tally(t);
    notes.dedup();
    r.notes = notes;
    r
}

fn fmt(s: &SingleSetStructure, x: Option<CellId>) -> String {
    x.map_or_else(|| "none".to_string(), |x| s.name(x).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{base_category, cube_nerve, terminal};
    use crate::BaseKind;

    fn nerve(kind: BaseKind, n: usize) -> SingleSetStructure {
        cube_nerve(&base_category(kind, 2).unwrap(), n, true).unwrap()
    }

    #[test]
    fn terminal_round_trips() {
        let s = terminal(3, true);
        let (c, _) = fc(&s).unwrap();
        assert!((0..=3).all(|k| c.level_size(k) == 1));
        let back = fs(&c).unwrap();
        assert_eq!(back.len(), 1);
        assert!(check_mu(&s).passed());
        assert!(check_eta(&c).passed());
    }

    #[test]
    fn groupoid_level_sizes_and_face() {
        let s = nerve(BaseKind::PairGroupoid, 2);
        let (c, emb) = fc(&s).unwrap();
        assert_eq!((c.level_size(0), c.level_size(1), c.level_size(2)), (2, 4, 16));
        let x = emb.position(2, s.cell_by_name("(a,b,b,a)").unwrap()).unwrap();
        let f = c.pd(2, 1, Minus, x);
        assert_eq!(s.name(emb.cell(1, f)), "(a,a,b,b)");
        assert_eq!(fs(&c).unwrap().len(), 16);
    }

    #[test]
    fn unvalidated_input_is_refused() {
        let s = crate::models::terminal_raw(2, true);
        assert_eq!(fc(&s).unwrap_err(), CubicalError::NotValidated);
    }

    #[test]
    fn round_trips_on_nerves() {
        for kind in [BaseKind::PairGroupoid, BaseKind::ChainPoset, BaseKind::Discrete] {
            let s = nerve(kind, 2);
            let mu = check_mu(&s);
            assert!(mu.passed(), "{kind}: {:?}", mu.violations.first());
            let (c, _) = fc(&s).unwrap();
            let eta = check_eta(&c);
            assert!(eta.passed(), "{kind}: {:?}", eta.violations.first());
            assert!(eta.count("ETA.inverse-left") as usize == c.total_cells());
        }
    }

    #[test]
    fn sym_restricted_to_fixed_cells_agrees() {
        let s = nerve(BaseKind::PairGroupoid, 2);
        let (c, _) = fc(&s).unwrap();
        let s2 = fs(&c).unwrap();
        for x in s.cells().filter(|&x| s.fix(1, x)) {
            assert_eq!(s2.s(1, x), s.s(1, x));
        }
    }

    #[test]
    fn broken_degeneracy_is_not_well_defined() {
        let s = nerve(BaseKind::PairGroupoid, 2);
        let (c, _) = fc(&s).unwrap();
        let other = c.e(1, 1, 1);
        let broken = c.with_deg_entry(1, 1, 0, other).unwrap();
        let r = check_eta(&broken);
        assert!(r.count("ETA.well-defined") > 0);
        assert!(r.violations_of("ETA.well-defined").next().is_some() || r.violations_of("ETA.construct").next().is_some());
    }

    #[test]
    fn transport_groupoid_and_chain() {
        let g = nerve(BaseKind::PairGroupoid, 2);
        let r = check_inverse_transport(&g, 0);
        assert!(r.passed(), "{:?}", r.violations.first());
        let (c, emb) = fc(&g).unwrap();
        let x = emb.position(2, g.cell_by_name("(a,b,a,b)").unwrap()).unwrap();
        let inv = find_r_inverse(&c, 2, 2, x).unwrap().unwrap();
        assert_eq!(g.name(emb.cell(2, inv)), "(b,a,b,a)");

        let ch = nerve(BaseKind::ChainPoset, 2);
        assert!(!check_np(&ch, 0).passed());
        let (cc, _) = fc(&ch).unwrap();
        assert!(!classical::check_classical_np(&cc, 0).passed());
        let r = check_inverse_transport(&ch, 0);
        assert!(r.passed(), "{:?}", r.violations.first());
    }

    #[test]
    fn fc_commutes_with_truncation() {
        let s = nerve(BaseKind::PairGroupoid, 2);
        let (c, _) = fc(&s).unwrap();
        let (ct, _) = fc(&s.truncate(1).unwrap()).unwrap();
        for k in 0..=1 {
            assert_eq!(ct.level_names(k), c.level_names(k));
        }
        assert_eq!(ct.to_tables()[..], c.to_tables()[..2]);
    }
}

//! Graded (classical) cubical n-categories with connections.
//!
//! Level-k cells are addressed by [`ClassicalCell`]; reports use a global
//! numbering where level k occupies a contiguous block after levels `0..k`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::core::CellId;
use crate::core::Sign::{self, Minus, Plus};
use crate::error::CubicalError;
use crate::report::{wit, CheckReport, Severity, Tally};

/// A cell together with its level, so tables of different levels cannot be confused.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ClassicalCell {
    pub level: usize,
    pub index: u32,
}

/// Tables of one level `k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelTables {
    pub names: Vec<String>,
    /// `face[i-1][sign]`: `C_k → C_{k-1}`, for `1 ≤ i ≤ k`.
    pub face: Vec<[Vec<u32>; 2]>,
    /// `deg[i-1]`: `C_{k-1} → C_k`, for `1 ≤ i ≤ k`.
    pub deg: Vec<Vec<u32>>,
    /// `comp[i-1]` lists `(a, b, a ★_{k,i} b)`.
    pub comp: Vec<Vec<(u32, u32, u32)>>,
    /// `conn[i-1][sign]`: `C_{k-1} → C_k`, for `1 ≤ i < k`; empty without connections.
    pub conn: Vec<[Vec<u32>; 2]>,
}

type Rows = Vec<Vec<(u32, u32)>>;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Level {
    names: Vec<String>,
    face: Vec<[Vec<u32>; 2]>,
    deg: Vec<Vec<u32>>,
    comp: Vec<Rows>,
    conn: Vec<[Vec<u32>; 2]>,
}

/// Graded structure `C_0 … C_n` with faces, degeneracies, compositions and optional connections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalStructure {
    levels: Vec<Level>,
    offsets: Vec<usize>,
    has_conn: bool,
    validated: bool,
}

impl ClassicalStructure {
    /// Builds a structure, enforcing shapes, closure, functionality and injective degeneracies.
    pub fn from_tables(levels: Vec<LevelTables>, with_connections: bool) -> Result<Self, CubicalError> {
        let c = Self::from_tables_raw(levels, with_connections)?;
        c.check_degeneracies_injective()?;
        Ok(c)
    }

    /// As [`ClassicalStructure::from_tables`] without the injectivity check; used for mutation fixtures.
    pub fn from_tables_raw(levels: Vec<LevelTables>, with_connections: bool) -> Result<Self, CubicalError> {
        if levels.is_empty() {
            return Err(CubicalError::Structure("no levels".into()));
        }
        let sizes: Vec<usize> = levels.iter().map(|l| l.names.len()).collect();
        if sizes.contains(&0) {
            return Err(CubicalError::Structure("every level must be non-empty".into()));
        }
        let shape = |what: String, tab: &[u32], len: usize, target: usize| -> Result<(), CubicalError> {
            if tab.len() != len {
                return Err(CubicalError::Structure(format!("{what}: {} entries, expected {len}", tab.len())));
            }
            if tab.iter().any(|&v| v as usize >= target) {
                return Err(CubicalError::Structure(format!("{what}: entry out of range")));
            }
            Ok(())
        };
        let mut out = Vec::with_capacity(levels.len());
        for (k, l) in levels.into_iter().enumerate() {
            let size = sizes[k];
            let lower = if k > 0 { sizes[k - 1] } else { 0 };
            if l.face.len() != k || l.deg.len() != k || l.comp.len() != k {
                return Err(CubicalError::Structure(format!("level {k}: expected {k} face, degeneracy and composition families")));
            }
            let conn_expected = if with_connections { k.saturating_sub(1) } else { 0 };
            if l.conn.len() != conn_expected {
                return Err(CubicalError::Structure(format!("level {k}: expected {conn_expected} connection families")));
            }
            for i in 1..=k {
                for a in Sign::BOTH {
                    shape(format!("face {k},{i},{a}"), &l.face[i - 1][a.idx()], size, lower)?;
                }
                shape(format!("deg {k},{i}"), &l.deg[i - 1], lower, size)?;
            }
            for (i, pair) in l.conn.iter().enumerate() {
                for a in Sign::BOTH {
                    shape(format!("conn {k},{},{a}", i + 1), &pair[a.idx()], lower, size)?;
                }
            }
            let mut comp = Vec::with_capacity(k);
            for (i, entries) in l.comp.iter().enumerate() {
                let mut rows: Rows = vec![Vec::new(); size];
                for &(a, b, c) in entries {
                    if [a, b, c].iter().any(|&v| v as usize >= size) {
                        return Err(CubicalError::Structure(format!("ccomp {k},{}: entry out of range", i + 1)));
                    }
                    rows[a as usize].push((b, c));
                }
                for row in rows.iter_mut() {
                    row.sort_unstable();
                    if row.windows(2).any(|w| w[0].0 == w[1].0) {
                        return Err(CubicalError::Structure(format!("ccomp {k},{}: two results for one pair", i + 1)));
                    }
                }
                comp.push(rows);
            }
            out.push(Level { names: l.names, face: l.face, deg: l.deg, comp, conn: l.conn });
        }
        let mut offsets = Vec::with_capacity(out.len());
        let mut acc = 0;
        for l in &out {
            offsets.push(acc);
            acc += l.names.len();
        }
        Ok(Self { levels: out, offsets, has_conn: with_connections, validated: false })
    }

    pub fn to_tables(&self) -> Vec<LevelTables> {
        self.levels
            .iter()
            .map(|l| LevelTables {
                names: l.names.clone(),
                face: l.face.clone(),
                deg: l.deg.clone(),
                comp: l
                    .comp
                    .iter()
                    .map(|rows| {
                        rows.iter()
                            .enumerate()
                            .flat_map(|(a, row)| row.iter().map(move |&(b, c)| (a as u32, b, c)))
                            .collect()
                    })
                    .collect(),
                conn: l.conn.clone(),
            })
            .collect()
    }

    fn check_degeneracies_injective(&self) -> Result<(), CubicalError> {
        for (k, l) in self.levels.iter().enumerate() {
            for (i, tab) in l.deg.iter().enumerate() {
                let mut seen = vec![false; l.names.len()];
                for &v in tab {
                    if std::mem::replace(&mut seen[v as usize], true) {
                        return Err(CubicalError::Structure(format!(
                            "degeneracy ε_{{{k},{}}} is not injective (value {})",
                            i + 1,
                            l.names[v as usize]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Top level n.
    pub fn dim(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level_size(&self, k: usize) -> usize {
        self.levels[k].names.len()
    }

    pub fn level_names(&self, k: usize) -> &[String] {
        &self.levels[k].names
    }

    pub fn has_connections(&self) -> bool {
        self.has_conn
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn total_cells(&self) -> usize {
        self.levels.iter().map(|l| l.names.len()).sum()
    }

    pub fn cell_by_name(&self, k: usize, name: &str) -> Option<ClassicalCell> {
        self.levels
            .get(k)?
            .names
            .iter()
            .position(|n| n == name)
            .map(|p| ClassicalCell { level: k, index: p as u32 })
    }

    /// Global report id of a level cell.
    pub fn global(&self, k: usize, a: u32) -> CellId {
        CellId((self.offsets[k] + a as usize) as u32)
    }

    pub fn from_global(&self, g: CellId) -> ClassicalCell {
        let k = self.offsets.iter().rposition(|&o| o <= g.index()).expect("offset 0 exists");
        ClassicalCell { level: k, index: (g.index() - self.offsets[k]) as u32 }
    }

    /// Name of a global report id, prefixed with its level.
    pub fn global_name(&self, g: CellId) -> String {
        let c = self.from_global(g);
        format!("{}@{}", self.levels[c.level].names[c.index as usize], c.level)
    }

    #[inline]
    pub(crate) fn pd(&self, k: usize, i: usize, a: Sign, x: u32) -> u32 {
        self.levels[k].face[i - 1][a.idx()][x as usize]
    }

    #[inline]
    pub(crate) fn e(&self, k: usize, i: usize, x: u32) -> u32 {
        self.levels[k].deg[i - 1][x as usize]
    }

    #[inline]
    pub(crate) fn gm(&self, k: usize, i: usize, a: Sign, x: u32) -> u32 {
        self.levels[k].conn[i - 1][a.idx()][x as usize]
    }

    #[inline]
    pub(crate) fn st(&self, k: usize, i: usize, x: u32, y: u32) -> Option<u32> {
        let row = &self.levels[k].comp[i - 1][x as usize];
        row.binary_search_by_key(&y, |e| e.0).ok().map(|p| row[p].1)
    }

    #[inline]
    pub(crate) fn row(&self, k: usize, i: usize, x: u32) -> &[(u32, u32)] {
        &self.levels[k].comp[i - 1][x as usize]
    }

    fn check_cell(&self, c: ClassicalCell) -> Result<(), CubicalError> {
        if c.level >= self.levels.len() || c.index as usize >= self.level_size(c.level) {
            return Err(CubicalError::UnknownCell(format!("{}@{}", c.index, c.level)));
        }
        Ok(())
    }

    fn check_dir(&self, k: usize, i: usize) -> Result<(), CubicalError> {
        if k == 0 || k > self.dim() {
            return Err(CubicalError::IndexOutOfRange { what: "level".into(), index: k, bound: self.dim() });
        }
        if i == 0 || i > k {
            return Err(CubicalError::IndexOutOfRange { what: format!("direction at level {k}"), index: i, bound: k });
        }
        Ok(())
    }

    /// `∂_{k,i}^α a`.
    pub fn face(&self, i: usize, a: Sign, c: ClassicalCell) -> Result<ClassicalCell, CubicalError> {
        self.check_cell(c)?;
        self.check_dir(c.level, i)?;
        Ok(ClassicalCell { level: c.level - 1, index: self.pd(c.level, i, a, c.index) })
    }

    /// `ε_{k+1,i} a` for `a` at level k.
    pub fn degeneracy(&self, i: usize, c: ClassicalCell) -> Result<ClassicalCell, CubicalError> {
        self.check_cell(c)?;
        self.check_dir(c.level + 1, i)?;
        Ok(ClassicalCell { level: c.level + 1, index: self.e(c.level + 1, i, c.index) })
    }

    /// `Γ_{k+1,i}^α a` for `a` at level k.
    pub fn connection(&self, i: usize, a: Sign, c: ClassicalCell) -> Result<ClassicalCell, CubicalError> {
        self.check_cell(c)?;
        if !self.has_conn {
            return Err(CubicalError::MissingConnections);
        }
        self.check_dir(c.level + 1, i)?;
        if i > c.level {
            return Err(CubicalError::IndexOutOfRange { what: format!("connection at level {}", c.level + 1), index: i, bound: c.level });
        }
        Ok(ClassicalCell { level: c.level + 1, index: self.gm(c.level + 1, i, a, c.index) })
    }

    /// `a ★_{k,i} b` when defined.
    pub fn compose(&self, i: usize, a: ClassicalCell, b: ClassicalCell) -> Result<Option<ClassicalCell>, CubicalError> {
        self.check_cell(a)?;
        self.check_cell(b)?;
        if a.level != b.level {
            return Err(CubicalError::Level(format!("cannot compose cells of levels {} and {}", a.level, b.level)));
        }
        self.check_dir(a.level, i)?;
        Ok(self.st(a.level, i, a.index, b.index).map(|index| ClassicalCell { level: a.level, index }))
    }

    /// Copy with one degeneracy entry replaced, skipping the injectivity invariant.
    pub fn with_deg_entry(&self, k: usize, i: usize, a: u32, value: u32) -> Result<ClassicalStructure, CubicalError> {
        self.check_dir(k, i)?;
        if a as usize >= self.level_size(k - 1) || value as usize >= self.level_size(k) {
            return Err(CubicalError::UnknownCell(format!("degeneracy entry {a} -> {value}")));
        }
        let mut out = self.clone();
        out.validated = false;
        out.levels[k].deg[i - 1][a as usize] = value;
        Ok(out)
    }

    /// Copy with one composition value replaced; the entry must exist.
    pub fn with_comp_entry(&self, k: usize, i: usize, a: u32, b: u32, value: u32) -> Result<ClassicalStructure, CubicalError> {
        self.check_dir(k, i)?;
        let mut out = self.clone();
        out.validated = false;
        let row = &mut out.levels[k].comp[i - 1][a as usize];
        let p = row
            .binary_search_by_key(&b, |e| e.0)
            .map_err(|_| CubicalError::UnknownCell(format!("composition entry {a}|{b} at level {k}")))?;
        row[p].1 = value;
        Ok(out)
    }
}

fn b(k: &'static str, v: usize) -> (&'static str, String) {
    (k, v.to_string())
}

fn bs(k: &'static str, v: Sign) -> (&'static str, String) {
    (k, v.to_string())
}

/// Composites at a level and direction indexed by value.
fn products(c: &ClassicalStructure, k: usize, i: usize) -> Vec<Vec<(u32, u32)>> {
    let mut by = vec![Vec::new(); c.level_size(k)];
    for a in 0..c.level_size(k) as u32 {
        for &(bb, z) in c.row(k, i, a) {
            by[z as usize].push((a, bb));
        }
    }
    by
}

fn par_level<F>(size: usize, body: F) -> Tally
where
    F: Fn(u32, &mut Tally) + Sync + Send,
{
    crate::report::par_cells(size, Severity::Axiom, |x, t| body(x.0, t))
}

/// Axioms (i)–(viii) and, when present, connection axioms (i)–(v), at every level.
pub fn check_classical_axioms(c: &ClassicalStructure) -> CheckReport {
    let n = c.dim();
    let conn = c.has_connections();
    let mut total = Tally::new(Severity::Axiom);
    for k in 1..=n {
        let prods: Vec<_> = (1..=k).map(|i| products(c, k, i)).collect();
        let g = |lvl: usize, x: u32| c.global(lvl, x);
        // Cells of level k.
        let t = par_level(c.level_size(k), |a, t| {
            let kb = || b("k", k);
            for i in 1..=k {
                let bi = || [kb(), b("i", i)];
                let (dm, dp) = (c.pd(k, i, Minus, a), c.pd(k, i, Plus, a));
                t.eq("CUB.ii-unit-right", c.st(k, i, a, c.e(k, i, dp)).map(|v| g(k, v)), Some(g(k, a)), || wit(&bi(), &[g(k, a)]));
                t.eq("CUB.ii-unit-left", c.st(k, i, c.e(k, i, dm), a).map(|v| g(k, v)), Some(g(k, a)), || wit(&bi(), &[g(k, a)]));
                for &(bb, ab) in c.row(k, i, a) {
                    t.holds("CUB.pullback-domain", c.pd(k, i, Minus, bb) == dp, || wit(&bi(), &[g(k, a), g(k, bb)]));
                    for &(cc, abc) in c.row(k, i, ab) {
                        let l = c.st(k, i, bb, cc).and_then(|bc| c.st(k, i, a, bc));
                        t.eq("CUB.i-assoc", l.map(|v| g(k, v)), Some(g(k, abc)), || {
                            wit(&bi(), &[g(k, a), g(k, bb), g(k, cc)])
                        });
                    }
                }
                for &(v, _) in c.row(k, i, a) {
                    for &(bb, cc) in &prods[i - 1][v as usize] {
                        let ok = c.st(k, i, a, bb).and_then(|ab| c.st(k, i, ab, cc)).is_some();
                        t.holds("CUB.i-assoc", ok, || wit(&bi(), &[g(k, a), g(k, bb), g(k, cc)]));
                    }
                }
                // Every face-matching pair must be composed; scanned over all right operands.
                for bb in 0..c.level_size(k) as u32 {
                    if c.pd(k, i, Minus, bb) == dp {
                        t.holds("CUB.pullback-domain", c.st(k, i, a, bb).is_some(), || wit(&bi(), &[g(k, a), g(k, bb)]));
                    }
                }
            }
            if k >= 2 {
                for i in 1..=k {
                    for j in (i + 1)..=k {
                        for al in Sign::BOTH {
                            for be in Sign::BOTH {
                                let l = c.pd(k - 1, i, al, c.pd(k, j, be, a));
                                let r = c.pd(k - 1, j - 1, be, c.pd(k, i, al, a));
                                t.eq("CUB.iii-face-face", Some(g(k - 2, l)), Some(g(k - 2, r)), || {
                                    wit(&[kb(), b("i", i), b("j", j), bs("alpha", al), bs("beta", be)], &[g(k, a)])
                                });
                            }
                        }
                    }
                }
            }
            for j in 1..=k {
                for &(bb, ab) in c.row(k, j, a) {
                    for i in 1..=k {
                        for al in Sign::BOTH {
                            let lhs = Some(c.pd(k, i, al, ab));
                            let rhs = if i < j {
                                c.st(k - 1, j - 1, c.pd(k, i, al, a), c.pd(k, i, al, bb))
                            } else if i == j {
                                Some(if al == Minus { c.pd(k, i, Minus, a) } else { c.pd(k, i, Plus, bb) })
                            } else {
                                c.st(k - 1, j, c.pd(k, i, al, a), c.pd(k, i, al, bb))
                            };
                            t.eq("CUB.iv-face-of-composite", lhs.map(|v| g(k - 1, v)), rhs.map(|v| g(k - 1, v)), || {
                                wit(&[kb(), b("i", i), b("j", j), bs("alpha", al)], &[g(k, a), g(k, bb)])
                            });
                        }
                    }
                    if k < n {
                        for i in 1..=k + 1 {
                            let jj = if i <= j { j + 1 } else { j };
                            let lhs = c.e(k + 1, i, ab);
                            let rhs = c.st(k + 1, jj, c.e(k + 1, i, a), c.e(k + 1, i, bb));
                            t.eq("CUB.vii-deg-of-composite", Some(g(k + 1, lhs)), rhs.map(|v| g(k + 1, v)), || {
                                wit(&[kb(), b("i", i), b("j", j)], &[g(k, a), g(k, bb)])
                            });
                        }
                        if conn {
                            for i in 1..=k {
                                for al in Sign::BOTH {
                                    let lhs = c.gm(k + 1, i, al, ab);
                                    let rhs = if i < j {
                                        c.st(k + 1, j + 1, c.gm(k + 1, i, al, a), c.gm(k + 1, i, al, bb))
                                    } else if i > j {
                                        c.st(k + 1, j, c.gm(k + 1, i, al, a), c.gm(k + 1, i, al, bb))
                                    } else if al == Minus {
                                        let l = c.st(k + 1, i, c.gm(k + 1, i, Minus, a), c.e(k + 1, i + 1, bb));
                                        let r = c.st(k + 1, i, c.e(k + 1, i, bb), c.gm(k + 1, i, Minus, bb));
                                        l.zip(r).and_then(|(l, r)| c.st(k + 1, i + 1, l, r))
                                    } else {
                                        let l = c.st(k + 1, i, c.gm(k + 1, i, Plus, a), c.e(k + 1, i, a));
                                        let r = c.st(k + 1, i, c.e(k + 1, i + 1, a), c.gm(k + 1, i, Plus, bb));
                                        l.zip(r).and_then(|(l, r)| c.st(k + 1, i + 1, l, r))
                                    };
                                    t.eq("CUBC.ii-conn-of-composite", Some(g(k + 1, lhs)), rhs.map(|v| g(k + 1, v)), || {
                                        wit(&[kb(), b("i", i), b("j", j), bs("alpha", al)], &[g(k, a), g(k, bb)])
                                    });
                                }
                            }
                        }
                    }
                }
            }
            // Interchange with a as the top-left cell.
            for i in 1..=k {
                for j in (1..=k).filter(|&j| j != i) {
                    for &(bb, ab) in c.row(k, i, a) {
                        for &(cc, ac) in c.row(k, j, a) {
                            for &(d, cd) in c.row(k, i, cc) {
                                let Some(bd) = c.st(k, j, bb, d) else { continue };
                                let l = c.st(k, j, ab, cd);
                                let r = c.st(k, i, ac, bd);
                                t.holds("CUB.v-interchange", l.is_some() && l == r, || {
                                    wit(&[kb(), b("i", i), b("j", j)], &[g(k, a), g(k, bb), g(k, cc), g(k, d)])
                                });
                            }
                        }
                    }
                }
            }
        });
        total = total.merge(t);
        // Cells of level k-1 under degeneracies and connections into level k.
        let t = par_level(c.level_size(k - 1), |a, t| {
            let kb = || b("k", k);
            for i in 1..=k {
                for j in 1..=k {
                    for al in Sign::BOTH {
                        let lhs = c.pd(k, i, al, c.e(k, j, a));
                        let rhs = if i < j {
                            c.e(k - 1, j - 1, c.pd(k - 1, i, al, a))
                        } else if i == j {
                            a
                        } else {
                            c.e(k - 1, j, c.pd(k - 1, i - 1, al, a))
                        };
                        t.eq("CUB.vi-face-of-degeneracy", Some(g(k - 1, lhs)), Some(g(k - 1, rhs)), || {
                            wit(&[kb(), b("i", i), b("j", j), bs("alpha", al)], &[g(k - 1, a)])
                        });
                    }
                }
            }
            if k < n {
                for j in 1..=k {
                    for i in 1..=j {
                        let lhs = c.e(k + 1, i, c.e(k, j, a));
                        let rhs = c.e(k + 1, j + 1, c.e(k, i, a));
                        t.eq("CUB.viii-deg-deg", Some(g(k + 1, lhs)), Some(g(k + 1, rhs)), || {
                            wit(&[kb(), b("i", i), b("j", j)], &[g(k - 1, a)])
                        });
                    }
                }
            }
            if !conn {
                return;
            }
            for j in 1..k {
                for i in 1..=k {
                    for al in Sign::BOTH {
                        for be in Sign::BOTH {
                            let lhs = c.pd(k, i, al, c.gm(k, j, be, a));
                            let rhs = if i < j {
                                c.gm(k - 1, j - 1, be, c.pd(k - 1, i, al, a))
                            } else if i == j || i == j + 1 {
                                if al == be {
                                    a
                                } else {
                                    c.e(k - 1, j, c.pd(k - 1, j, al, a))
                                }
                            } else {
                                c.gm(k - 1, j, be, c.pd(k - 1, i - 1, al, a))
                            };
                            t.eq("CUBC.i-face-of-connection", Some(g(k - 1, lhs)), Some(g(k - 1, rhs)), || {
                                wit(&[kb(), b("i", i), b("j", j), bs("alpha", al), bs("beta", be)], &[g(k - 1, a)])
                            });
                        }
                    }
                }
                let (gp, gmi) = (c.gm(k, j, Plus, a), c.gm(k, j, Minus, a));
                t.eq("CUBC.iii-zigzag1", c.st(k, j, gp, gmi).map(|v| g(k, v)), Some(g(k, c.e(k, j + 1, a))), || {
                    wit(&[kb(), b("i", j)], &[g(k - 1, a)])
                });
                t.eq("CUBC.iii-zigzag2", c.st(k, j + 1, gp, gmi).map(|v| g(k, v)), Some(g(k, c.e(k, j, a))), || {
                    wit(&[kb(), b("i", j)], &[g(k - 1, a)])
                });
            }
            if k < n {
                // Γ_{k+1,i} ε_{k,j} on level k-1.
                for i in 1..=k {
                    for j in 1..=k {
                        for al in Sign::BOTH {
                            let lhs = c.gm(k + 1, i, al, c.e(k, j, a));
                            let rhs = if i < j {
                                c.e(k + 1, j + 1, c.gm(k, i, al, a))
                            } else if i == j {
                                c.e(k + 1, i, c.e(k, i, a))
                            } else {
                                c.e(k + 1, j, c.gm(k, i - 1, al, a))
                            };
                            t.eq("CUBC.iv-conn-of-degeneracy", Some(g(k + 1, lhs)), Some(g(k + 1, rhs)), || {
                                wit(&[kb(), b("i", i), b("j", j), bs("alpha", al)], &[g(k - 1, a)])
                            });
                        }
                    }
                }
                // Γ_{k+1,i} Γ_{k,j} on level k-1.
                for j in 1..k {
                    for i in 1..=j {
                        for al in Sign::BOTH {
                            for be in Sign::BOTH {
                                if i == j && al != be {
                                    continue;
                                }
                                let lhs = c.gm(k + 1, i, al, c.gm(k, j, be, a));
                                let rhs = if i < j {
                                    c.gm(k + 1, j + 1, be, c.gm(k, i, al, a))
                                } else {
                                    c.gm(k + 1, i + 1, al, c.gm(k, i, al, a))
                                };
                                t.eq("CUBC.v-conn-conn", Some(g(k + 1, lhs)), Some(g(k + 1, rhs)), || {
                                    wit(&[kb(), b("i", i), b("j", j), bs("alpha", al), bs("beta", be)], &[g(k - 1, a)])
                                });
                            }
                        }
                    }
                }
            }
        });
        total = total.merge(t);
    }
    let mut r = CheckReport::from_tally(total);
    if !conn {
        r.skipped.push("CUBC.* skipped: no connection tables".into());
    }
    r
}

/// Runs the classical suite and sets the validated flag when it passes.
#[allow(clippy::result_large_err)]
pub fn validate(mut c: ClassicalStructure) -> Result<ClassicalStructure, (ClassicalStructure, CheckReport)> {
    let r = check_classical_axioms(&c);
    if r.passed() {
        c.validated = true;
        Ok(c)
    } else {
        c.validated = false;
        Err((c, r))
    }
}

pub(crate) fn find_r_inverse(c: &ClassicalStructure, k: usize, i: usize, a: u32) -> Result<Option<u32>, CubicalError> {
    let unit_m = c.e(k, i, c.pd(k, i, Minus, a));
    let unit_p = c.e(k, i, c.pd(k, i, Plus, a));
    let mut found = None;
    for &(bb, z) in c.row(k, i, a) {
        if z == unit_m && c.st(k, i, bb, a) == Some(unit_p) {
            if found.is_some() {
                return Err(CubicalError::Inconsistent(format!(
                    "cell {} at level {k} has two R_{{{k},{i}}}-inverses",
                    c.level_names(k)[a as usize]
                )));
            }
            found = Some(bb);
        }
    }
    Ok(found)
}

/// The unique `R_{k,i}`-inverse of `a`, if any.
pub fn r_inverse(c: &ClassicalStructure, k: usize, i: usize, a: ClassicalCell) -> Result<Option<ClassicalCell>, CubicalError> {
    c.check_cell(a)?;
    if a.level != k {
        return Err(CubicalError::Level(format!("cell is at level {}, not {k}", a.level)));
    }
    c.check_dir(k, i)?;
    Ok(find_r_inverse(c, k, i, a.index)?.map(|index| ClassicalCell { level: k, index }))
}

/// Whether `a ∈ C_k` has an `R_{k-1,i}`-invertible shell.
pub fn classical_shell_invertible(c: &ClassicalStructure, k: usize, i: usize, a: u32) -> Result<bool, CubicalError> {
    for j in (1..=k).filter(|&j| j != i) {
        let dir = if j < i { i - 1 } else { i };
        for al in Sign::BOTH {
            if find_r_inverse(c, k - 1, dir, c.pd(k, j, al, a))?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The classical (n,p) condition with the shell split `j < i ↦ R_{k-1,i-1}`, `j > i ↦ R_{k-1,i}`.
pub fn check_classical_np(c: &ClassicalStructure, p: usize) -> CheckReport {
    let mut t = Tally::new(Severity::Axiom);
    let mut notes = Vec::new();
    for k in (p + 1)..=c.dim() {
        for a in 0..c.level_size(k) as u32 {
            for i in 1..=k {
                match (classical_shell_invertible(c, k, i, a), find_r_inverse(c, k, i, a)) {
                    (Ok(true), Ok(inv)) => t.holds("CNP.shell-invertible-implies-invertible", inv.is_some(), || {
                        wit(&[b("k", k), b("i", i)], &[c.global(k, a)])
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

/// Cell counts per level.
pub fn level_sizes(c: &ClassicalStructure) -> BTreeMap<usize, usize> {
    (0..=c.dim()).map(|k| (k, c.level_size(k))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Classical terminal n-category.
    fn terminal(n: usize) -> ClassicalStructure {
        let levels = (0..=n)
            .map(|k| LevelTables {
                names: vec!["*".into()],
                face: (0..k).map(|_| [vec![0], vec![0]]).collect(),
                deg: (0..k).map(|_| vec![0]).collect(),
                comp: (0..k).map(|_| vec![(0, 0, 0)]).collect(),
                conn: (1..k).map(|_| [vec![0], vec![0]]).collect(),
            })
            .collect();
        ClassicalStructure::from_tables(levels, true).unwrap()
    }

    #[test]
    fn terminal_passes() {
        let c = terminal(3);
        let r = check_classical_axioms(&c);
        assert!(r.passed());
        assert!(r.checked_count > 0);
        let a = ClassicalCell { level: 2, index: 0 };
        assert_eq!(r_inverse(&c, 2, 1, a).unwrap(), Some(a));
        assert!(check_classical_np(&c, 0).passed());
    }

    #[test]
    fn global_ids_round_trip() {
        let c = terminal(2);
        let g = c.global(2, 0);
        assert_eq!(g, CellId(2));
        assert_eq!(c.from_global(g), ClassicalCell { level: 2, index: 0 });
        assert_eq!(c.global_name(g), "*@2");
    }

    #[test]
    fn rejects_non_injective_degeneracy() {
        let mut levels = terminal(1).to_tables();
        levels[0].names.push("b".into());
        levels[1].face = vec![[vec![0], vec![0]]];
        levels[1].deg = vec![vec![0, 0]];
        let err = ClassicalStructure::from_tables(levels.clone(), true).unwrap_err();
        assert!(err.to_string().contains("not injective"));
        assert!(ClassicalStructure::from_tables_raw(levels, true).is_ok());
    }

    #[test]
    fn accessor_errors() {
        let c = terminal(2);
        let a = ClassicalCell { level: 0, index: 0 };
        assert!(c.face(1, Minus, a).is_err());
        assert!(c.degeneracy(2, a).is_err());
        assert_eq!(c.degeneracy(1, a).unwrap().level, 1);
        assert!(c.connection(1, Plus, a).is_err());
        assert_eq!(c.connection(1, Plus, ClassicalCell { level: 1, index: 0 }).unwrap().level, 2);
    }
}

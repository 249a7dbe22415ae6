//! Finite single-set cubical n-categories stored as extensional tables.
//!
//! Directions are 1-based throughout; tables are indexed by `direction - 1`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CubicalError;

/// Opaque cell token, stable within one structure. Ordering is the canonical cell order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellId(pub u32);

impl CellId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Orientation of a face or connection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Minus, Sign::Plus];

    #[inline]
    pub fn idx(self) -> usize {
        match self {
            Sign::Minus => 0,
            Sign::Plus => 1,
        }
    }

    #[inline]
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }

    pub fn parse(s: &str) -> Option<Sign> {
        match s {
            "-" | "minus" => Some(Sign::Minus),
            "+" | "plus" => Some(Sign::Plus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A unary structural map of a single-set structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Face { dir: usize, sign: Sign },
    Sym(usize),
    InvSym(usize),
    Conn { dir: usize, sign: Sign },
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Face { dir, sign } => write!(f, "delta_{dir}^{sign}"),
            Generator::Sym(i) => write!(f, "s_{i}"),
            Generator::InvSym(i) => write!(f, "s~_{i}"),
            Generator::Conn { dir, sign } => write!(f, "gamma_{dir}^{sign}"),
        }
    }
}

/// A finite set of directions, used to address fixed-point sets.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectionSet(BTreeSet<usize>);

impl DirectionSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Directions `lo..=hi`; empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        Self((lo..=hi).collect())
    }

    /// Directions strictly above `m` up to `n`, the carrier of the m-truncation.
    pub fn above(m: usize, n: usize) -> Self {
        Self::range(m + 1, n)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_superset(&self, other: &DirectionSet) -> bool {
        self.0.is_superset(&other.0)
    }

    pub fn insert(&mut self, i: usize) {
        self.0.insert(i);
    }

    /// All subsets of `1..=n`, ordered by bitmask.
    pub fn all_subsets(n: usize) -> Vec<DirectionSet> {
        (0u32..(1u32 << n))
            .map(|mask| DirectionSet((1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect()))
            .collect()
    }
}

impl FromIterator<usize> for DirectionSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl fmt::Display for DirectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Address of a single table entry, used by mutation utilities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableLocation {
    Face { dir: usize, sign: Sign, cell: CellId },
    Comp { dir: usize, left: CellId, right: CellId },
    Sym { dir: usize, cell: CellId },
    InvSym { dir: usize, cell: CellId },
    Conn { dir: usize, sign: Sign, cell: CellId },
}

/// Per-direction partial composition: `rows[x]` lists `(y, x ∘ y)` sorted by `y`.
pub(crate) type CompRows = Vec<Vec<(CellId, CellId)>>;

/// Finite single-set cubical n-category, possibly with connections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleSetStructure {
    dim: usize,
    names: Vec<String>,
    by_name: HashMap<String, CellId>,
    face: Vec<[Vec<CellId>; 2]>,
    comp: Vec<CompRows>,
    sym: Vec<Vec<CellId>>,
    inv_sym: Vec<Vec<CellId>>,
    conn: Option<Vec<[Vec<CellId>; 2]>>,
    validated: bool,
}

/// Raw table input for [`SingleSetStructure::from_tables`].
#[derive(Clone, Debug, Default)]
pub struct StructureTables {
    pub dim: usize,
    pub names: Vec<String>,
    /// `face[i-1][sign.idx()][x]`
    pub face: Vec<[Vec<CellId>; 2]>,
    /// `comp[i-1]` lists `(x, y, x ∘_i y)`.
    pub comp: Vec<Vec<(CellId, CellId, CellId)>>,
    pub sym: Vec<Vec<CellId>>,
    pub inv_sym: Vec<Vec<CellId>>,
    pub conn: Option<Vec<[Vec<CellId>; 2]>>,
}

fn check_map(what: &str, table: &[CellId], n_cells: usize) -> Result<(), CubicalError> {
    if table.len() != n_cells {
        return Err(CubicalError::Structure(format!(
            "{what}: table has {} entries for {n_cells} cells",
            table.len()
        )));
    }
    if let Some(bad) = table.iter().find(|c| c.index() >= n_cells) {
        return Err(CubicalError::Structure(format!("{what}: entry {} is not a cell", bad.0)));
    }
    Ok(())
}

impl SingleSetStructure {
    /// Builds an unvalidated structure, checking table shapes, closure and functionality.
    pub fn from_tables(t: StructureTables) -> Result<Self, CubicalError> {
        let n = t.dim;
        let cells = t.names.len();
        if cells == 0 {
            return Err(CubicalError::Structure("carrier is empty".into()));
        }
        if cells > u32::MAX as usize {
            return Err(CubicalError::Structure("too many cells".into()));
        }
        let mut by_name = HashMap::with_capacity(cells);
        for (k, name) in t.names.iter().enumerate() {
            if by_name.insert(name.clone(), CellId(k as u32)).is_some() {
                return Err(CubicalError::Structure(format!("duplicate cell name {name}")));
            }
        }
        if t.face.len() != n || t.comp.len() != n {
            return Err(CubicalError::Structure(format!(
                "expected {n} face and composition families"
            )));
        }
        let lower = n.saturating_sub(1);
        if t.sym.len() != lower || t.inv_sym.len() != lower {
            return Err(CubicalError::Structure(format!(
                "expected {lower} symmetry and reverse symmetry tables"
            )));
        }
        for (i, pair) in t.face.iter().enumerate() {
            for s in Sign::BOTH {
                check_map(&format!("face {},{}", i + 1, s), &pair[s.idx()], cells)?;
            }
        }
        for (i, tab) in t.sym.iter().enumerate() {
            check_map(&format!("sym {}", i + 1), tab, cells)?;
        }
        for (i, tab) in t.inv_sym.iter().enumerate() {
            check_map(&format!("inv_sym {}", i + 1), tab, cells)?;
        }
        if let Some(conn) = &t.conn {
            if conn.len() != lower {
                return Err(CubicalError::Structure(format!("expected {lower} connection families")));
            }
            for (i, pair) in conn.iter().enumerate() {
                for s in Sign::BOTH {
                    check_map(&format!("conn {},{}", i + 1, s), &pair[s.idx()], cells)?;
                }
            }
        }
        let mut comp = Vec::with_capacity(n);
        for (i, entries) in t.comp.iter().enumerate() {
            let mut rows: CompRows = vec![Vec::new(); cells];
            for &(x, y, z) in entries {
                if x.index() >= cells || y.index() >= cells || z.index() >= cells {
                    return Err(CubicalError::Structure(format!(
                        "comp {}: entry references a missing cell",
                        i + 1
                    )));
                }
                rows[x.index()].push((y, z));
            }
            for row in rows.iter_mut() {
                row.sort_unstable();
                if row.windows(2).any(|w| w[0].0 == w[1].0) {
                    return Err(CubicalError::Structure(format!(
                        "comp {}: two results for one pair (functionality)",
                        i + 1
                    )));
                }
            }
            comp.push(rows);
        }
        Ok(Self {
            dim: n,
            names: t.names,
            by_name,
            face: t.face,
            comp,
            sym: t.sym,
            inv_sym: t.inv_sym,
            conn: t.conn,
            validated: false,
        })
    }

    /// Exports the tables; inverse of [`SingleSetStructure::from_tables`].
    pub fn to_tables(&self) -> StructureTables {
        StructureTables {
            dim: self.dim,
            names: self.names.clone(),
            face: self.face.clone(),
            comp: self
                .comp
                .iter()
                .map(|rows| {
                    rows.iter()
                        .enumerate()
                        .flat_map(|(x, row)| row.iter().map(move |&(y, z)| (CellId(x as u32), y, z)))
                        .collect()
                })
                .collect(),
            sym: self.sym.clone(),
            inv_sym: self.inv_sym.clone(),
            conn: self.conn.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn cells(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..self.names.len() as u32).map(CellId)
    }

    pub fn name(&self, x: CellId) -> &str {
        &self.names[x.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn cell_by_name(&self, name: &str) -> Option<CellId> {
        self.by_name.get(name).copied()
    }

    pub fn has_connections(&self) -> bool {
        self.conn.is_some()
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub(crate) fn set_validated(&mut self, v: bool) {
        self.validated = v;
    }

    // Unchecked accessors used by the checkers; indices are trusted.

    #[inline]
    pub(crate) fn d(&self, i: usize, a: Sign, x: CellId) -> CellId {
        self.face[i - 1][a.idx()][x.index()]
    }

    #[inline]
    pub(crate) fn s(&self, i: usize, x: CellId) -> CellId {
        self.sym[i - 1][x.index()]
    }

    #[inline]
    pub(crate) fn t(&self, i: usize, x: CellId) -> CellId {
        self.inv_sym[i - 1][x.index()]
    }

    #[inline]
    pub(crate) fn g(&self, i: usize, a: Sign, x: CellId) -> CellId {
        self.conn.as_ref().expect("connections present")[i - 1][a.idx()][x.index()]
    }

    #[inline]
    pub(crate) fn c(&self, i: usize, x: CellId, y: CellId) -> Option<CellId> {
        let row = &self.comp[i - 1][x.index()];
        row.binary_search_by_key(&y, |e| e.0).ok().map(|k| row[k].1)
    }

    /// Defined composites `(y, x ∘_i y)` with left operand `x`.
    #[inline]
    pub(crate) fn row(&self, i: usize, x: CellId) -> &[(CellId, CellId)] {
        &self.comp[i - 1][x.index()]
    }

    #[inline]
    pub(crate) fn fix(&self, i: usize, x: CellId) -> bool {
        self.d(i, Sign::Minus, x) == x
    }

    /// Membership in `S^I` for the listed directions.
    #[inline]
    pub(crate) fn fix_all(&self, dirs: &[usize], x: CellId) -> bool {
        dirs.iter().all(|&i| self.fix(i, x))
    }

    /// Membership in `S^{>m}` i.e. fixed in every direction above `m`.
    #[inline]
    pub(crate) fn fix_above(&self, m: usize, x: CellId) -> bool {
        (m + 1..=self.dim).all(|i| self.fix(i, x))
    }

    pub(crate) fn comp_entries(&self, i: usize) -> impl Iterator<Item = (CellId, CellId, CellId)> + '_ {
        self.comp[i - 1]
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().map(move |&(y, z)| (CellId(x as u32), y, z)))
    }

    fn check_dir(&self, what: &str, i: usize, bound: usize) -> Result<(), CubicalError> {
        if i == 0 || i > bound {
            return Err(CubicalError::IndexOutOfRange { what: what.to_string(), index: i, bound });
        }
        Ok(())
    }

    fn check_cell(&self, x: CellId) -> Result<(), CubicalError> {
        if x.index() >= self.len() {
            return Err(CubicalError::UnknownCell(format!("#{}", x.0)));
        }
        Ok(())
    }

    /// Applies a face, symmetry, reverse symmetry or connection to a cell.
    pub fn apply_generator(&self, g: Generator, x: CellId) -> Result<CellId, CubicalError> {
        self.check_cell(x)?;
        let lower = self.dim.saturating_sub(1);
        match g {
            Generator::Face { dir, sign } => {
                self.check_dir(&g.to_string(), dir, self.dim)?;
                Ok(self.d(dir, sign, x))
            }
            Generator::Sym(i) => {
                self.check_dir(&g.to_string(), i, lower)?;
                Ok(self.s(i, x))
            }
            Generator::InvSym(i) => {
                self.check_dir(&g.to_string(), i, lower)?;
                Ok(self.t(i, x))
            }
            Generator::Conn { dir, sign } => {
                if self.conn.is_none() {
                    return Err(CubicalError::MissingConnections);
                }
                self.check_dir(&g.to_string(), dir, lower)?;
                Ok(self.g(dir, sign, x))
            }
        }
    }

    /// The composite `x ∘_i y` when the table defines it.
    pub fn comp(&self, i: usize, x: CellId, y: CellId) -> Result<Option<CellId>, CubicalError> {
        self.check_dir("comp", i, self.dim)?;
        self.check_cell(x)?;
        self.check_cell(y)?;
        Ok(self.c(i, x, y))
    }

    /// Whether `δ_i^+ x = δ_i^- y`.
    pub fn composable(&self, i: usize, x: CellId, y: CellId) -> Result<bool, CubicalError> {
        self.check_dir("composable", i, self.dim)?;
        self.check_cell(x)?;
        self.check_cell(y)?;
        Ok(self.d(i, Sign::Plus, x) == self.d(i, Sign::Minus, y))
    }

    /// Whether `x ∈ S^i`, i.e. `δ_i^- x = x`.
    pub fn is_fixed(&self, i: usize, x: CellId) -> Result<bool, CubicalError> {
        self.check_dir("is_fixed", i, self.dim)?;
        self.check_cell(x)?;
        Ok(self.fix(i, x))
    }

    /// The set `S^I` in canonical order.
    pub fn fixed_set(&self, dirs: &DirectionSet) -> Result<Vec<CellId>, CubicalError> {
        for i in dirs.members() {
            self.check_dir("fixed_set", i, self.dim)?;
        }
        let dirs: Vec<usize> = dirs.members().collect();
        Ok(self.cells().filter(|&x| self.fix_all(&dirs, x)).collect())
    }

    /// Number of directions in which `x` is not fixed.
    pub fn dimension(&self, x: CellId) -> Result<usize, CubicalError> {
        self.check_cell(x)?;
        Ok((1..=self.dim).filter(|&i| !self.fix(i, x)).count())
    }

    /// Smallest `k` with `x ∈ S^{>k}`.
    pub fn level(&self, x: CellId) -> usize {
        (1..=self.dim).rev().find(|&i| !self.fix(i, x)).unwrap_or(0)
    }

    /// Every `S^I` for `I ⊆ {1..n}`, ordered by bitmask of `I`.
    pub fn fixed_point_lattice(&self) -> Vec<(DirectionSet, Vec<CellId>)> {
        DirectionSet::all_subsets(self.dim)
            .into_iter()
            .map(|i| {
                let set = self.fixed_set(&i).expect("directions in range");
                (i, set)
            })
            .collect()
    }

    /// The m-truncation on `S^{m+1..n}`, keeping directions `1..=m`.
    pub fn truncate(&self, m: usize) -> Result<SingleSetStructure, CubicalError> {
        if m > self.dim {
            return Err(CubicalError::IndexOutOfRange {
                what: "truncation level".into(),
                index: m,
                bound: self.dim,
            });
        }
        let keep: Vec<CellId> = self.cells().filter(|&x| self.fix_above(m, x)).collect();
        let mut renum = vec![None; self.len()];
        for (k, &x) in keep.iter().enumerate() {
            renum[x.index()] = Some(CellId(k as u32));
        }
        let map = |what: &str, y: CellId| -> Result<CellId, CubicalError> {
            renum[y.index()].ok_or_else(|| {
                CubicalError::Structure(format!(
                    "truncation to level {m}: {what} leaves the carrier at {}",
                    self.name(y)
                ))
            })
        };
        let restrict = |what: &str, tab: &Vec<CellId>| -> Result<Vec<CellId>, CubicalError> {
            keep.iter().map(|&x| map(what, tab[x.index()])).collect()
        };
        let mut face = Vec::with_capacity(m);
        for i in 0..m {
            face.push([restrict("face", &self.face[i][0])?, restrict("face", &self.face[i][1])?]);
        }
        let lower = m.saturating_sub(1);
        let mut sym = Vec::with_capacity(lower);
        let mut inv_sym = Vec::with_capacity(lower);
        for i in 0..lower {
            sym.push(restrict("sym", &self.sym[i])?);
            inv_sym.push(restrict("inv_sym", &self.inv_sym[i])?);
        }
        let conn = match &self.conn {
            None => None,
            Some(c) => {
                let mut out = Vec::with_capacity(lower);
                for pair in c.iter().take(lower) {
                    out.push([restrict("conn", &pair[0])?, restrict("conn", &pair[1])?]);
                }
                Some(out)
            }
        };
        let mut comp = Vec::with_capacity(m);
        for i in 1..=m {
            let mut entries = Vec::new();
            for (x, y, z) in self.comp_entries(i) {
                if let (Some(nx), Some(ny)) = (renum[x.index()], renum[y.index()]) {
                    entries.push((nx, ny, map("comp", z)?));
                }
            }
            comp.push(entries);
        }
        let mut out = SingleSetStructure::from_tables(StructureTables {
            dim: m,
            names: keep.iter().map(|&x| self.names[x.index()].clone()).collect(),
            face,
            comp,
            sym,
            inv_sym,
            conn,
        })?;
        out.validated = self.validated;
        Ok(out)
    }

    /// Copy differing in exactly one table entry; the copy is unvalidated.
    pub fn with_entry(&self, loc: TableLocation, value: CellId) -> Result<SingleSetStructure, CubicalError> {
        self.check_cell(value)?;
        let lower = self.dim.saturating_sub(1);
        let mut out = self.clone();
        out.validated = false;
        match loc {
            TableLocation::Face { dir, sign, cell } => {
                self.check_dir("face", dir, self.dim)?;
                self.check_cell(cell)?;
                out.face[dir - 1][sign.idx()][cell.index()] = value;
            }
            TableLocation::Sym { dir, cell } => {
                self.check_dir("sym", dir, lower)?;
                self.check_cell(cell)?;
                out.sym[dir - 1][cell.index()] = value;
            }
            TableLocation::InvSym { dir, cell } => {
                self.check_dir("inv_sym", dir, lower)?;
                self.check_cell(cell)?;
                out.inv_sym[dir - 1][cell.index()] = value;
            }
            TableLocation::Conn { dir, sign, cell } => {
                if self.conn.is_none() {
                    return Err(CubicalError::MissingConnections);
                }
                self.check_dir("conn", dir, lower)?;
                self.check_cell(cell)?;
                out.conn.as_mut().expect("present")[dir - 1][sign.idx()][cell.index()] = value;
            }
            TableLocation::Comp { dir, left, right } => {
                self.check_dir("comp", dir, self.dim)?;
                self.check_cell(left)?;
                self.check_cell(right)?;
                let row = &mut out.comp[dir - 1][left.index()];
                match row.binary_search_by_key(&right, |e| e.0) {
                    Ok(k) => row[k].1 = value,
                    Err(_) => {
                        return Err(CubicalError::IndexOutOfRange {
                            what: format!(
                                "comp {dir} has no entry for {}|{}",
                                self.name(left),
                                self.name(right)
                            ),
                            index: dir,
                            bound: self.dim,
                        })
                    }
                }
            }
        }
        Ok(out)
    }

    /// Copy with two whole families swapped, e.g. `s_1` and `s_2`; unvalidated.
    pub fn with_swapped_sym(&self, i: usize, j: usize) -> Result<SingleSetStructure, CubicalError> {
        let lower = self.dim.saturating_sub(1);
        self.check_dir("sym", i, lower)?;
        self.check_dir("sym", j, lower)?;
        let mut out = self.clone();
        out.validated = false;
        out.sym.swap(i - 1, j - 1);
        Ok(out)
    }

    /// Copy where `γ_i^+` is replaced by `γ_i^-`; unvalidated.
    pub fn with_conn_replaced(&self, i: usize) -> Result<SingleSetStructure, CubicalError> {
        let lower = self.dim.saturating_sub(1);
        self.check_dir("conn", i, lower)?;
        let mut out = self.clone();
        out.validated = false;
        let conn = out.conn.as_mut().ok_or(CubicalError::MissingConnections)?;
        conn[i - 1][Sign::Plus.idx()] = conn[i - 1][Sign::Minus.idx()].clone();
        Ok(out)
    }

    /// Every table coordinate, in a fixed order; composition entries only where defined.
    pub fn table_locations(&self) -> Vec<TableLocation> {
        let mut out = Vec::new();
        for i in 1..=self.dim {
            for sign in Sign::BOTH {
                out.extend(self.cells().map(|cell| TableLocation::Face { dir: i, sign, cell }));
            }
            out.extend(self.comp_entries(i).map(|(l, r, _)| TableLocation::Comp { dir: i, left: l, right: r }));
        }
        for i in 1..self.dim {
            out.extend(self.cells().map(|cell| TableLocation::Sym { dir: i, cell }));
            out.extend(self.cells().map(|cell| TableLocation::InvSym { dir: i, cell }));
            if self.conn.is_some() {
                for sign in Sign::BOTH {
                    out.extend(self.cells().map(|cell| TableLocation::Conn { dir: i, sign, cell }));
                }
            }
        }
        out
    }

    /// Current value at a table coordinate.
    pub fn entry(&self, loc: TableLocation) -> Option<CellId> {
        match loc {
            TableLocation::Face { dir, sign, cell } => Some(self.d(dir, sign, cell)),
            TableLocation::Sym { dir, cell } => Some(self.s(dir, cell)),
            TableLocation::InvSym { dir, cell } => Some(self.t(dir, cell)),
            TableLocation::Conn { dir, sign, cell } => self.conn.as_ref().map(|_| self.g(dir, sign, cell)),
            TableLocation::Comp { dir, left, right } => self.c(dir, left, right),
        }
    }

    /// Equality of all tables, ignoring the validated flag.
    pub fn same_tables(&self, other: &SingleSetStructure) -> bool {
        self.dim == other.dim
            && self.names == other.names
            && self.face == other.face
            && self.comp == other.comp
            && self.sym == other.sym
            && self.inv_sym == other.inv_sym
            && self.conn == other.conn
    }
}

/// Reverse index of a face map: cells grouped by their face.
pub(crate) struct FaceIndex {
    /// `buckets[i-1][sign][f]` lists cells `x` with `δ_i^sign x = f`.
    buckets: Vec<[Vec<Vec<CellId>>; 2]>,
}

impl FaceIndex {
    pub(crate) fn new(s: &SingleSetStructure) -> Self {
        let buckets = (1..=s.dim())
            .map(|i| {
                let mut pair: [Vec<Vec<CellId>>; 2] = [vec![Vec::new(); s.len()], vec![Vec::new(); s.len()]];
                for x in s.cells() {
                    for sign in Sign::BOTH {
                        pair[sign.idx()][s.d(i, sign, x).index()].push(x);
                    }
                }
                pair
            })
            .collect();
        Self { buckets }
    }

    #[inline]
    pub(crate) fn with_face(&self, i: usize, sign: Sign, f: CellId) -> &[CellId] {
        &self.buckets[i - 1][sign.idx()][f.index()]
    }
}

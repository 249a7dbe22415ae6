//! Cubical nerves of finite thin categories, the terminal model, and mutation.
//!
//! A nerve cell is a labeling of the vertices of `{0,1}^n` by objects such that
//! every edge `t → t'` (one coordinate raised) carries an arrow. Vertex `t` has
//! index `Σ t_i 2^(n-i)`, so `t_1` is the most significant bit.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::core::{CellId, SingleSetStructure, StructureTables, TableLocation};
use crate::error::CubicalError;

/// Default cap on generated carriers; override with `CUBICAL_CELL_BUDGET`.
pub const DEFAULT_CELL_BUDGET: u128 = 100_000;

pub const BUDGET_ENV: &str = "CUBICAL_CELL_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseKind {
    PairGroupoid,
    ChainPoset,
    Discrete,
    CyclicGroupThin,
}

impl FromStr for BaseKind {
    type Err = CubicalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pair_groupoid" => Ok(BaseKind::PairGroupoid),
            "chain_poset" => Ok(BaseKind::ChainPoset),
            "discrete" => Ok(BaseKind::Discrete),
            "cyclic_group_thin" => Ok(BaseKind::CyclicGroupThin),
            other => Err(CubicalError::Parse(format!("unknown base category kind {other}"))),
        }
    }
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BaseKind::PairGroupoid => "pair_groupoid",
            BaseKind::ChainPoset => "chain_poset",
            BaseKind::Discrete => "discrete",
            BaseKind::CyclicGroupThin => "cyclic_group_thin",
        };
        f.write_str(s)
    }
}

/// A preorder on a finite object set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteThinCategory {
    pub objects: Vec<String>,
    /// `arrow[a][b]` iff there is an arrow `a → b`.
    pub arrow: Vec<Vec<bool>>,
}

impl FiniteThinCategory {
    /// Checks reflexivity and transitivity.
    pub fn new(objects: Vec<String>, arrow: Vec<Vec<bool>>) -> Result<Self, CubicalError> {
        let m = objects.len();
        if m == 0 || arrow.len() != m || arrow.iter().any(|r| r.len() != m) {
            return Err(CubicalError::Structure("arrow relation must be square over a non-empty object set".into()));
        }
        for a in 0..m {
            if !arrow[a][a] {
                return Err(CubicalError::Structure(format!("missing identity on {}", objects[a])));
            }
            for b in 0..m {
                for c in 0..m {
                    if arrow[a][b] && arrow[b][c] && !arrow[a][c] {
                        return Err(CubicalError::Structure(format!(
                            "relation not transitive at {} → {} → {}",
                            objects[a], objects[b], objects[c]
                        )));
                    }
                }
            }
        }
        Ok(Self { objects, arrow })
    }

    pub fn arrow_count(&self) -> usize {
        self.arrow.iter().flatten().filter(|&&b| b).count()
    }

    pub fn is_groupoid(&self) -> bool {
        let m = self.objects.len();
        (0..m).all(|a| (0..m).all(|b| self.arrow[a][b] == self.arrow[b][a]))
    }
}

fn letters(m: usize) -> Vec<String> {
    (0..m)
        .map(|k| {
            if k < 26 {
                ((b'a' + k as u8) as char).to_string()
            } else {
                format!("o{k}")
            }
        })
        .collect()
}

/// The standard base categories.
pub fn base_category(kind: BaseKind, m: usize) -> Result<FiniteThinCategory, CubicalError> {
    if m == 0 {
        return Err(CubicalError::IndexOutOfRange { what: "base category size".into(), index: 0, bound: usize::MAX });
    }
    let (objects, arrow): (Vec<String>, Vec<Vec<bool>>) = match kind {
        BaseKind::PairGroupoid => (letters(m), vec![vec![true; m]; m]),
        BaseKind::ChainPoset => ((0..m).map(|k| k.to_string()).collect(), (0..m).map(|a| (0..m).map(|b| a <= b).collect()).collect()),
        BaseKind::Discrete => (letters(m), (0..m).map(|a| (0..m).map(|b| a == b).collect()).collect()),
        // A thin category has at most one arrow per pair, so a cyclic group collapses to one object.
        BaseKind::CyclicGroupThin => (letters(1), vec![vec![true]]),
    };
    FiniteThinCategory::new(objects, arrow)
}

/// Budget from the environment, or the default.
pub fn cell_budget() -> u128 {
    std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CELL_BUDGET)
}

#[inline]
fn bit(t: usize, n: usize, i: usize) -> usize {
    (t >> (n - i)) & 1
}

#[inline]
fn set_bit(t: usize, n: usize, i: usize, v: usize) -> usize {
    let mask = 1 << (n - i);
    if v == 1 {
        t | mask
    } else {
        t & !mask
    }
}

/// Vertex maps realizing the structural operations by precomposition.
fn face_map(n: usize, i: usize, a: usize) -> Vec<usize> {
    (0..1 << n).map(|t| set_bit(t, n, i, a)).collect()
}

fn swap_map(n: usize, i: usize) -> Vec<usize> {
    (0..1 << n)
        .map(|t| {
            let (u, v) = (bit(t, n, i), bit(t, n, i + 1));
            set_bit(set_bit(t, n, i, v), n, i + 1, u)
        })
        .collect()
}

fn conn_map(n: usize, i: usize, plus: bool) -> Vec<usize> {
    (0..1 << n)
        .map(|t| {
            let (u, v) = (bit(t, n, i), bit(t, n, i + 1));
            let w = if plus { u.min(v) } else { u.max(v) };
            set_bit(t, n, i + 1, w)
        })
        .collect()
}

fn label_name(b: &FiniteThinCategory, lab: &[u8]) -> String {
    let parts: Vec<&str> = lab.iter().map(|&o| b.objects[o as usize].as_str()).collect();
    format!("({})", parts.join(","))
}

/// Nerve tables without running the law suites.
pub fn cube_nerve_raw(
    b: &FiniteThinCategory,
    n: usize,
    with_connections: bool,
    budget: u128,
) -> Result<SingleSetStructure, CubicalError> {
    if n == 0 {
        return Err(CubicalError::Domain("nerve dimension must be at least 1".into()));
    }
    let m = b.objects.len();
    let verts = 1usize
        .checked_shl(n as u32)
        .filter(|&v| v <= 64)
        .ok_or(CubicalError::CellBudget { count: u128::MAX, budget })?;
    let raw = (m as u128).checked_pow(verts as u32).unwrap_or(u128::MAX);
    if raw > budget {
        return Err(CubicalError::CellBudget { count: raw, budget });
    }
    // Enumerate labelings in lexicographic order of the vertex tuple.
    let mut cells: Vec<Vec<u8>> = Vec::new();
    let mut lab = vec![0u8; verts];
    loop {
        let valid = (0..verts).all(|t| {
            (1..=n).all(|i| bit(t, n, i) == 1 || b.arrow[lab[t] as usize][lab[set_bit(t, n, i, 1)] as usize])
        });
        if valid {
            cells.push(lab.clone());
        }
        let mut pos = verts;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            lab[pos] += 1;
            if (lab[pos] as usize) < m {
                break;
            }
            lab[pos] = 0;
        }
        if pos == 0 && lab[0] == 0 {
            break;
        }
    }
    let index: HashMap<&[u8], CellId> =
        cells.iter().enumerate().map(|(k, l)| (l.as_slice(), CellId(k as u32))).collect();
    let apply = |vmap: &[usize]| -> Vec<CellId> {
        cells
            .iter()
            .map(|l| {
                let img: Vec<u8> = vmap.iter().map(|&t| l[t]).collect();
                index[img.as_slice()]
            })
            .collect()
    };
    let face: Vec<[Vec<CellId>; 2]> =
        (1..=n).map(|i| [apply(&face_map(n, i, 0)), apply(&face_map(n, i, 1))]).collect();
    let sym: Vec<Vec<CellId>> = (1..n).map(|i| apply(&swap_map(n, i))).collect();
    let conn = with_connections
        .then(|| (1..n).map(|i| [apply(&conn_map(n, i, false)), apply(&conn_map(n, i, true))]).collect());
    let mut comp = Vec::with_capacity(n);
    for i in 1..=n {
        let minus = &face[i - 1][0];
        let plus = &face[i - 1][1];
        let mut by_source: Vec<Vec<CellId>> = vec![Vec::new(); cells.len()];
        for (y, f) in minus.iter().enumerate() {
            by_source[f.index()].push(CellId(y as u32));
        }
        let mut entries = Vec::new();
        for (x, lx) in cells.iter().enumerate() {
            for &y in &by_source[plus[x].index()] {
                let ly = &cells[y.index()];
                let pasted: Vec<u8> = (0..verts).map(|t| if bit(t, n, i) == 0 { lx[t] } else { ly[t] }).collect();
                let z = *index.get(pasted.as_slice()).ok_or_else(|| {
                    CubicalError::Inconsistent(format!("pasted labeling {} is not a cell", label_name(b, &pasted)))
                })?;
                entries.push((CellId(x as u32), y, z));
            }
        }
        comp.push(entries);
    }
    SingleSetStructure::from_tables(StructureTables {
        dim: n,
        names: cells.iter().map(|l| label_name(b, l)).collect(),
        face,
        comp,
        inv_sym: sym.clone(),
        sym,
        conn,
    })
}

/// Nerve fixture, certified by every law suite before it is returned.
pub fn cube_nerve(b: &FiniteThinCategory, n: usize, with_connections: bool) -> Result<SingleSetStructure, CubicalError> {
    let raw = cube_nerve_raw(b, n, with_connections, cell_budget())?;
    crate::laws::validate(raw).map_err(|(_, report)| {
        CubicalError::Inconsistent(format!(
            "generated nerve fails {} law instances (first: {})",
            report.violations.len(),
            report.violations.first().map(|v| v.axiom_id.as_str()).unwrap_or("?")
        ))
    })
}

/// One-cell model with every table the identity.
pub fn terminal_raw(n: usize, with_connections: bool) -> SingleSetStructure {
    let z = vec![CellId(0)];
    SingleSetStructure::from_tables(StructureTables {
        dim: n,
        names: vec!["*".into()],
        face: (0..n).map(|_| [z.clone(), z.clone()]).collect(),
        comp: (0..n).map(|_| vec![(CellId(0), CellId(0), CellId(0))]).collect(),
        sym: (1..n).map(|_| z.clone()).collect(),
        inv_sym: (1..n).map(|_| z.clone()).collect(),
        conn: with_connections.then(|| (1..n).map(|_| [z.clone(), z.clone()]).collect()),
    })
    .expect("terminal tables are well formed")
}

/// Validated terminal model.
pub fn terminal(n: usize, with_connections: bool) -> SingleSetStructure {
    crate::laws::validate(terminal_raw(n, with_connections)).unwrap_or_else(|_| unreachable!("terminal model satisfies all laws"))
}

/// Unvalidated copy differing from `s` in exactly one entry.
pub fn mutate(s: &SingleSetStructure, loc: TableLocation, value: CellId) -> Result<SingleSetStructure, CubicalError> {
    s.with_entry(loc, value)
}

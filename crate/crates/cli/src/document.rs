//! JSON interchange format for single-set and classical structures.
//!
//! Tables are keyed by strings: `"i,sign"` (single-set) or `"k,i,sign"`
//! (classical), each mapping a cell name to a cell name. Composition tables
//! list only defined pairs as `"x|y": "z"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use cubical_core::classical::LevelTables;
use cubical_core::{CellId, ClassicalStructure, CubicalError, Sign, SingleSetStructure, StructureTables};

pub const SCHEMA_VERSION: u32 = 1;

type Table = BTreeMap<String, String>;
type Family = BTreeMap<String, Table>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDocument {
    pub schema_version: u32,
    pub kind: Kind,
    pub dim: usize,
    pub cells: Cells,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comp: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sym: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inv_sym: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conn: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cface: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ccomp: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cconn: Option<Family>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub meta: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    SingleSet,
    Classical,
}

/// Flat names for single-set documents, one list per level for classical ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cells {
    Flat(Vec<String>),
    Levels(Vec<Vec<String>>),
}

/// A loaded structure of either kind.
#[derive(Debug)]
pub enum Loaded {
    Single(SingleSetStructure),
    Classical(ClassicalStructure),
}

fn err(msg: impl Into<String>) -> CubicalError {
    CubicalError::Structure(msg.into())
}

fn sign_key(a: Sign) -> char {
    a.symbol()
}

fn check_names(names: &[String]) -> Result<(), CubicalError> {
    if let Some(bad) = names.iter().find(|n| n.contains('|')) {
        return Err(err(format!("cell name {bad:?} contains '|'")));
    }
    Ok(())
}

fn map_table(names: &[String], targets: &[String], tab: &[u32]) -> Table {
    tab.iter().enumerate().map(|(x, &y)| (names[x].clone(), targets[y as usize].clone())).collect()
}

fn comp_table(names: &[String], entries: impl Iterator<Item = (u32, u32, u32)>) -> Table {
    entries
        .map(|(x, y, z)| {
            (format!("{}|{}", names[x as usize], names[y as usize]), names[z as usize].clone())
        })
        .collect()
}

impl StructureDocument {
    pub fn from_single(s: &SingleSetStructure, meta: Value) -> Result<Self, CubicalError> {
        let t = s.to_tables();
        let names = &t.names;
        check_names(names)?;
        let ids = |v: &[CellId]| v.iter().map(|c| c.0).collect::<Vec<_>>();
        let mut face = Family::new();
        for (i, pair) in t.face.iter().enumerate() {
            for a in Sign::BOTH {
                face.insert(format!("{},{}", i + 1, sign_key(a)), map_table(names, names, &ids(&pair[a.idx()])));
            }
        }
        let comp = t
            .comp
            .iter()
            .enumerate()
            .map(|(i, e)| (format!("{}", i + 1), comp_table(names, e.iter().map(|&(x, y, z)| (x.0, y.0, z.0)))))
            .collect();
        let unary = |tabs: &Vec<Vec<CellId>>| -> Family {
            tabs.iter().enumerate().map(|(i, tab)| (format!("{}", i + 1), map_table(names, names, &ids(tab)))).collect()
        };
        let conn = t.conn.as_ref().map(|c| {
            let mut fam = Family::new();
            for (i, pair) in c.iter().enumerate() {
                for a in Sign::BOTH {
                    fam.insert(format!("{},{}", i + 1, sign_key(a)), map_table(names, names, &ids(&pair[a.idx()])));
                }
            }
            fam
        });
        Ok(StructureDocument {
            schema_version: SCHEMA_VERSION,
            kind: Kind::SingleSet,
            dim: t.dim,
            cells: Cells::Flat(names.clone()),
            face: Some(face),
            comp: Some(comp),
            sym: Some(unary(&t.sym)),
            inv_sym: Some(unary(&t.inv_sym)),
            conn,
            cface: None,
            deg: None,
            ccomp: None,
            cconn: None,
            meta,
        })
    }

    pub fn from_classical(c: &ClassicalStructure, meta: Value) -> Result<Self, CubicalError> {
        let levels = c.to_tables();
        let mut cface = Family::new();
        let mut deg = Family::new();
        let mut ccomp = Family::new();
        let mut cconn = Family::new();
        for (k, l) in levels.iter().enumerate() {
            check_names(&l.names)?;
            for i in 1..=k {
                let lower = &levels[k - 1].names;
                for a in Sign::BOTH {
                    cface.insert(format!("{k},{i},{}", sign_key(a)), map_table(&l.names, lower, &l.face[i - 1][a.idx()]));
                }
                deg.insert(format!("{k},{i}"), map_table(lower, &l.names, &l.deg[i - 1]));
                ccomp.insert(format!("{k},{i}"), comp_table(&l.names, l.comp[i - 1].iter().copied()));
            }
            for (i, pair) in l.conn.iter().enumerate() {
                for a in Sign::BOTH {
                    cconn.insert(
                        format!("{k},{},{}", i + 1, sign_key(a)),
                        map_table(&levels[k - 1].names, &l.names, &pair[a.idx()]),
                    );
                }
            }
        }
        Ok(StructureDocument {
            schema_version: SCHEMA_VERSION,
            kind: Kind::Classical,
            dim: c.dim(),
            cells: Cells::Levels(levels.iter().map(|l| l.names.clone()).collect()),
            face: None,
            comp: None,
            sym: None,
            inv_sym: None,
            conn: None,
            cface: Some(cface),
            deg: Some(deg),
            ccomp: Some(ccomp),
            cconn: c.has_connections().then_some(cconn),
            meta,
        })
    }

    /// Parses JSON text; serde errors carry line and column.
    pub fn parse(text: &str) -> Result<Self, CubicalError> {
        let doc: StructureDocument =
            serde_json::from_str(text).map_err(|e| CubicalError::Parse(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(CubicalError::Parse(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn load(&self) -> Result<Loaded, CubicalError> {
        match self.kind {
            Kind::SingleSet => self.load_single().map(Loaded::Single),
            Kind::Classical => self.load_classical().map(Loaded::Classical),
        }
    }

    fn load_single(&self) -> Result<SingleSetStructure, CubicalError> {
        let n = self.dim;
        let Cells::Flat(names) = &self.cells else {
            return Err(err("single-set documents list cells as a flat array"));
        };
        for (field, present) in [("cface", &self.cface), ("deg", &self.deg), ("ccomp", &self.ccomp), ("cconn", &self.cconn)] {
            if present.is_some() {
                return Err(err(format!("field {field} belongs to classical documents")));
            }
        }
        let index = Index::new(names)?;
        let face_fam = required(&self.face, "face")?;
        let mut face = Vec::with_capacity(n);
        for i in 1..=n {
            let mut pair = [Vec::new(), Vec::new()];
            for a in Sign::BOTH {
                let key = format!("{i},{}", sign_key(a));
                pair[a.idx()] = index.total(&format!("face {key}"), family_entry(face_fam, "face", &key)?)?;
            }
            face.push(pair);
        }
        expect_keys("face", face_fam, (1..=n).flat_map(|i| Sign::BOTH.map(|a| format!("{i},{}", sign_key(a)))))?;
        let comp_fam = required(&self.comp, "comp")?;
        let comp = (1..=n)
            .map(|i| index.partial(&format!("comp {i}"), family_entry(comp_fam, "comp", &i.to_string())?))
            .collect::<Result<Vec<_>, _>>()?;
        expect_keys("comp", comp_fam, (1..=n).map(|i| i.to_string()))?;
        let unary = |fam: &Option<Family>, field: &str| -> Result<Vec<Vec<u32>>, CubicalError> {
            let fam = required(fam, field)?;
            expect_keys(field, fam, (1..n).map(|i| i.to_string()))?;
            (1..n)
                .map(|i| index.total(&format!("{field} {i}"), family_entry(fam, field, &i.to_string())?))
                .collect()
        };
        let sym = unary(&self.sym, "sym")?;
        let inv_sym = unary(&self.inv_sym, "inv_sym")?;
        let conn = match &self.conn {
            None => None,
            Some(fam) => {
                expect_keys("conn", fam, (1..n).flat_map(|i| Sign::BOTH.map(|a| format!("{i},{}", sign_key(a)))))?;
                let mut out = Vec::new();
                for i in 1..n {
                    let mut pair = [Vec::new(), Vec::new()];
                    for a in Sign::BOTH {
                        let key = format!("{i},{}", sign_key(a));
                        pair[a.idx()] = index.total(&format!("conn {key}"), family_entry(fam, "conn", &key)?)?;
                    }
                    out.push(pair);
                }
                Some(out)
            }
        };
        let ids = |v: Vec<u32>| v.into_iter().map(CellId).collect::<Vec<_>>();
        SingleSetStructure::from_tables(StructureTables {
            dim: n,
            names: names.clone(),
            face: face.into_iter().map(|[m, p]| [ids(m), ids(p)]).collect(),
            comp: comp
                .into_iter()
                .map(|e| e.into_iter().map(|(x, y, z)| (CellId(x), CellId(y), CellId(z))).collect())
                .collect(),
            sym: sym.into_iter().map(ids).collect(),
            inv_sym: inv_sym.into_iter().map(ids).collect(),
            conn: conn.map(|c| c.into_iter().map(|[m, p]| [ids(m), ids(p)]).collect()),
        })
    }

    fn load_classical(&self) -> Result<ClassicalStructure, CubicalError> {
        let n = self.dim;
        let Cells::Levels(levels) = &self.cells else {
            return Err(err("classical documents list cells as one array per level"));
        };
        if levels.len() != n + 1 {
            return Err(err(format!("expected {} cell levels for dim {n}, found {}", n + 1, levels.len())));
        }
        for (field, present) in [("face", &self.face), ("comp", &self.comp), ("sym", &self.sym), ("inv_sym", &self.inv_sym), ("conn", &self.conn)] {
            if present.is_some() {
                return Err(err(format!("field {field} belongs to single-set documents")));
            }
        }
        let idx: Vec<Index> = levels.iter().map(|l| Index::new(l)).collect::<Result<_, _>>()?;
        let cface = required(&self.cface, "cface")?;
        let deg = required(&self.deg, "deg")?;
        let ccomp = required(&self.ccomp, "ccomp")?;
        let conn = self.cconn.is_some();
        expect_keys("cface", cface, (1..=n).flat_map(|k| (1..=k).flat_map(move |i| Sign::BOTH.map(|a| format!("{k},{i},{}", sign_key(a))))))?;
        expect_keys("deg", deg, (1..=n).flat_map(|k| (1..=k).map(move |i| format!("{k},{i}"))))?;
        expect_keys("ccomp", ccomp, (1..=n).flat_map(|k| (1..=k).map(move |i| format!("{k},{i}"))))?;
        if let Some(fam) = &self.cconn {
            expect_keys("cconn", fam, (2..=n).flat_map(|k| (1..k).flat_map(move |i| Sign::BOTH.map(|a| format!("{k},{i},{}", sign_key(a))))))?;
        }
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut lt = LevelTables { names: levels[k].clone(), ..Default::default() };
            for i in 1..=k {
                let mut pair = [Vec::new(), Vec::new()];
                for a in Sign::BOTH {
                    let key = format!("{k},{i},{}", sign_key(a));
                    pair[a.idx()] = idx[k].total_into(&format!("cface {key}"), family_entry(cface, "cface", &key)?, &idx[k - 1])?;
                }
                lt.face.push(pair);
                let key = format!("{k},{i}");
                lt.deg.push(idx[k - 1].total_into(&format!("deg {key}"), family_entry(deg, "deg", &key)?, &idx[k])?);
                lt.comp.push(idx[k].partial(&format!("ccomp {key}"), family_entry(ccomp, "ccomp", &key)?)?);
                if conn && i < k {
                    let fam = self.cconn.as_ref().expect("checked");
                    let mut pair = [Vec::new(), Vec::new()];
                    for a in Sign::BOTH {
                        let key = format!("{k},{i},{}", sign_key(a));
                        pair[a.idx()] = idx[k - 1].total_into(&format!("cconn {key}"), family_entry(fam, "cconn", &key)?, &idx[k])?;
                    }
                    lt.conn.push(pair);
                }
            }
            out.push(lt);
        }
        ClassicalStructure::from_tables(out, conn)
    }
}

fn required<'a>(fam: &'a Option<Family>, field: &str) -> Result<&'a Family, CubicalError> {
    fam.as_ref().ok_or_else(|| err(format!("missing field {field}")))
}

fn family_entry<'a>(fam: &'a Family, field: &str, key: &str) -> Result<&'a Table, CubicalError> {
    fam.get(key).ok_or_else(|| err(format!("{field}: missing table {key:?}")))
}

fn expect_keys(field: &str, fam: &Family, keys: impl Iterator<Item = String>) -> Result<(), CubicalError> {
    let expected: std::collections::BTreeSet<String> = keys.collect();
    if let Some(extra) = fam.keys().find(|k| !expected.contains(*k)) {
        return Err(err(format!("{field}: unexpected table {extra:?}")));
    }
    Ok(())
}

/// Name lookup for one carrier.
struct Index {
    names: Vec<String>,
    by_name: BTreeMap<String, u32>,
}

impl Index {
    fn new(names: &[String]) -> Result<Self, CubicalError> {
        let mut by_name = BTreeMap::new();
        for (k, n) in names.iter().enumerate() {
            if by_name.insert(n.clone(), k as u32).is_some() {
                return Err(err(format!("duplicate cell name {n:?}")));
            }
        }
        Ok(Index { names: names.to_vec(), by_name })
    }

    fn get(&self, what: &str, name: &str) -> Result<u32, CubicalError> {
        self.by_name.get(name).copied().ok_or_else(|| err(format!("{what}: unknown cell {name:?}")))
    }

    /// A total map from this carrier into `target`.
    fn total_into(&self, what: &str, tab: &Table, target: &Index) -> Result<Vec<u32>, CubicalError> {
        if let Some(extra) = tab.keys().find(|k| !self.by_name.contains_key(*k)) {
            return Err(err(format!("{what}: unknown cell {extra:?}")));
        }
        self.names
            .iter()
            .map(|x| {
                let y = tab.get(x).ok_or_else(|| err(format!("{what}: missing entry for {x:?}")))?;
                target.get(what, y)
            })
            .collect()
    }

    fn total(&self, what: &str, tab: &Table) -> Result<Vec<u32>, CubicalError> {
        self.total_into(what, tab, self)
    }

    fn partial(&self, what: &str, tab: &Table) -> Result<Vec<(u32, u32, u32)>, CubicalError> {
        tab.iter()
            .map(|(k, z)| {
                let (x, y) = k.split_once('|').ok_or_else(|| err(format!("{what}: key {k:?} is not of the form x|y")))?;
                Ok((self.get(what, x)?, self.get(what, y)?, self.get(what, z)?))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cubical_core::equivalence::fc;
    use cubical_core::models::{base_category, cube_nerve};
    use cubical_core::BaseKind;

    fn nerve() -> SingleSetStructure {
        cube_nerve(&base_category(BaseKind::PairGroupoid, 2).unwrap(), 2, true).unwrap()
    }

    #[test]
    fn single_set_round_trip() {
        let s = nerve();
        let doc = StructureDocument::from_single(&s, Value::Null).unwrap();
        let text = doc.to_json();
        let back = StructureDocument::parse(&text).unwrap();
        assert_eq!(back, doc);
        let Loaded::Single(t) = back.load().unwrap() else { panic!("kind") };
        assert!(t.same_tables(&s));
        assert_eq!(StructureDocument::from_single(&t, Value::Null).unwrap().to_json(), text);
    }

    #[test]
    fn classical_round_trip() {
        let (c, _) = fc(&nerve()).unwrap();
        let doc = StructureDocument::from_classical(&c, serde_json::json!({"source": "test"})).unwrap();
        let back = StructureDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        let Loaded::Classical(d) = back.load().unwrap() else { panic!("kind") };
        assert_eq!(d.to_tables(), c.to_tables());
    }

    #[test]
    fn malformed_documents_are_rejected() {
        let e = StructureDocument::parse("{\"kind\": \"single-set\",").unwrap_err();
        assert!(e.to_string().contains("line 1"));
        let s = nerve();
        let mut doc = StructureDocument::from_single(&s, Value::Null).unwrap();
        doc.face.as_mut().unwrap().get_mut("1,-").unwrap().remove("(a,a,a,a)");
        assert!(doc.load().is_err());
        let mut doc = StructureDocument::from_single(&s, Value::Null).unwrap();
        doc.comp.as_mut().unwrap().get_mut("1").unwrap().insert("(a,a,a,a)|nope".into(), "(a,a,a,a)".into());
        assert!(doc.load().unwrap_err().to_string().contains("nope"));
    }
}

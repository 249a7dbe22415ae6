use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn cubical(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubical")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let o = cubical(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn groupoid(dir: &Path) -> PathBuf {
    gen(dir, "g.json", &["--model", "nerve", "--base", "pair_groupoid:2", "--dim", "2", "--connections"])
}

#[test]
fn generated_nerve_passes_all_suites() {
    let dir = tempfile::tempdir().unwrap();
    let g = groupoid(dir.path());
    let g = g.to_str().unwrap();
    for suite in ["category", "cubical", "connections", "derived", "inverse", "np:0", "all"] {
        let o = cubical(&["check", g, "--suite", suite]);
        assert_eq!(o.status.code(), Some(0), "suite {suite}: {}", stdout(&o));
        assert!(stdout(&o).ends_with("\n") && stdout(&o).contains("PASS"));
    }
}

#[test]
fn chain_poset_fails_np0() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(dir.path(), "c.json", &["--model", "nerve", "--base", "chain_poset:2", "--dim", "2", "--connections"]);
    let o = cubical(&["check", p.to_str().unwrap(), "--suite", "np:0", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["passed"], false);
    let v = &r["violations"][0];
    assert_eq!(v["axiom_id"], "NP.shell-invertible-implies-invertible");
    assert_eq!(v["cells"][0], "(0,0,1,1)");
}

#[test]
fn normalize_prints_identity() {
    let o = cubical(&["normalize", "--word", "d1- e1", "--level", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "id\n");
    let o = cubical(&["normalize", "--word", "d1- e1", "--level", "1", "--rules", "empty"]);
    assert_eq!(stdout(&o), "d1- e1\n");
    let o = cubical(&["normalize", "--word", "d1+ d2+", "--level", "0"]);
    assert_eq!(o.status.code(), Some(3));
    let o = cubical(&["normalize", "--word", "x1", "--level", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn terminal_cell_is_its_own_inverse() {
    let dir = tempfile::tempdir().unwrap();
    let t = gen(dir.path(), "t.json", &["--model", "terminal", "--dim", "2", "--connections"]);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&t).unwrap()).unwrap();
    let cell = doc["cells"][0].as_str().unwrap().to_string();
    for dir_ in ["1", "2"] {
        for extra in [None, Some("--constructive")] {
            let mut args = vec!["invert", t.to_str().unwrap(), "--direction", dir_, "--cell", &cell, "--json"];
            args.extend(extra);
            let o = cubical(&args);
            assert_eq!(o.status.code(), Some(0));
            let c: Value = serde_json::from_str(&stdout(&o)).unwrap();
            assert_eq!(c["inverse"], cell.as_str());
            assert_eq!(c["complete"], true);
        }
    }
}

#[test]
fn invert_reports_none_on_chain() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(dir.path(), "c.json", &["--model", "nerve", "--base", "chain_poset:2", "--dim", "1"]);
    let o = cubical(&["invert", p.to_str().unwrap(), "--direction", "1", "--cell", "(0,1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "none\n");
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = groupoid(dir.path());
    let g = g.to_str().unwrap();
    assert_eq!(cubical(&["invert", g, "--direction", "1", "--cell", "nope"]).status.code(), Some(4));
    assert_eq!(cubical(&["check", g, "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(cubical(&["check"]).status.code(), Some(2));
    assert_eq!(cubical(&["gen", "--model", "nerve", "--base", "pair_groupoid", "--dim", "2"]).status.code(), Some(2));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"kind\": \"single-set\",\n  \"dim\": }").unwrap();
    let o = cubical(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(g).unwrap()).unwrap();
    doc["face"]["1,+"].as_object_mut().unwrap().insert("(a,a,a,a)".into(), "ghost".into());
    std::fs::write(&bad, doc.to_string()).unwrap();
    let o = cubical(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ghost"));

    assert_eq!(cubical(&["check", dir.path().join("missing.json").to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn mutated_document_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let g = groupoid(dir.path());
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&g).unwrap()).unwrap();
    doc["face"]["1,+"]["(a,b,a,b)"] = "(a,a,a,a)".into();
    let m = dir.path().join("m.json");
    std::fs::write(&m, doc.to_string()).unwrap();
    let o = cubical(&["check", m.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!r["violations"].as_array().unwrap().is_empty());
    let o = cubical(&["translate", m.to_str().unwrap(), "--to", "classical"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn translate_and_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let g = groupoid(dir.path());
    let c = dir.path().join("c.json");
    let o = cubical(&["translate", g.to_str().unwrap(), "--to", "classical", "-o", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&c).unwrap()).unwrap();
    assert_eq!(doc["kind"], "classical");
    let sizes: Vec<usize> = doc["cells"].as_array().unwrap().iter().map(|l| l.as_array().unwrap().len()).collect();
    assert_eq!(sizes, vec![2, 4, 16]);

    for f in [&g, &c] {
        assert_eq!(cubical(&["roundtrip", f.to_str().unwrap()]).status.code(), Some(0));
    }
    assert_eq!(cubical(&["check", c.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(cubical(&["check", c.to_str().unwrap(), "--suite", "np:0"]).status.code(), Some(0));
    assert_eq!(cubical(&["check", c.to_str().unwrap(), "--suite", "cubical"]).status.code(), Some(2));

    let back = dir.path().join("s.json");
    let o = cubical(&["translate", c.to_str().unwrap(), "--to", "single-set", "-o", back.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = cubical(&["check", back.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&back).unwrap()).unwrap();
    assert_eq!(doc["cells"].as_array().unwrap().len(), 16);
}

#[test]
fn lattice_lists_fixed_sets() {
    let dir = tempfile::tempdir().unwrap();
    let g = groupoid(dir.path());
    let o = cubical(&["lattice", g.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let l: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let sizes: Vec<u64> = l["sets"].as_array().unwrap().iter().map(|s| s["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, vec![16, 4, 4, 2]);
    let edges = l["inclusions"].as_array().unwrap();
    assert_eq!(edges.len(), 4);
    assert!(edges.iter().all(|e| e["holds"] == true));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(dir.path(), "c.json", &["--model", "nerve", "--base", "chain_poset:2", "--dim", "3", "--connections"]);
    let p = p.to_str().unwrap();
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    doc["face"]["2,-"]["(0,0,0,0,0,0,0,1)"] = "(0,0,0,0,0,0,0,1)".into();
    let m = dir.path().join("m.json");
    std::fs::write(&m, doc.to_string()).unwrap();
    let m = m.to_str().unwrap();
    for file in [p, m] {
        let one = cubical(&["--threads", "1", "check", file, "--json"]);
        let many = cubical(&["--threads", "4", "check", file, "--json"]);
        assert_eq!(one.stdout, many.stdout);
        assert_eq!(one.status.code(), many.status.code());
    }
    assert_eq!(cubical(&["check", m]).status.code(), Some(1));
    let a = gen(dir.path(), "a.json", &["--model", "nerve", "--base", "chain_poset:2", "--dim", "3", "--connections"]);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(p).unwrap());
}

//! Executable axiom and lemma suites for single-set structures.
//!
//! Axiom identifiers form a stable namespace:
//!
//! | prefix | family |
//! |---|---|
//! | `CAT.*` | category axioms per direction, plus the elementary face lemmas |
//! | `SSCC.*` | cubical axioms (i)–(ix); (x) is vacuous at finite n |
//! | `CONN.*` | connection axioms (i)–(vi) |
//! | `DER.*` | derived lemmas on symmetries, reverse symmetries, connections, inverses |
//!
//! Every guarded law is instantiated by filtering on its guard. Instances are
//! enumerated per cell and merged in canonical order, so reports do not depend
//! on the thread count.

use crate::core::{CellId, FaceIndex, Sign, SingleSetStructure};
use crate::error::CubicalError;
use crate::report::{par_cells, wit, CheckReport, Severity};

use Sign::{Minus, Plus};

fn b_i(i: usize) -> (&'static str, String) {
    ("i", i.to_string())
}
fn b_j(j: usize) -> (&'static str, String) {
    ("j", j.to_string())
}
fn b_a(a: Sign) -> (&'static str, String) {
    ("alpha", a.to_string())
}
fn b_b(b: Sign) -> (&'static str, String) {
    ("beta", b.to_string())
}

/// For each direction, composites indexed by their value: `(x, y)` with `x ∘_i y = w`.
fn products_by_value(s: &SingleSetStructure) -> Vec<Vec<Vec<(CellId, CellId)>>> {
    (1..=s.dim())
        .map(|i| {
            let mut by = vec![Vec::new(); s.len()];
            for (x, y, z) in s.comp_entries(i) {
                by[z.index()].push((x, y));
            }
            by
        })
        .collect()
}

/// Associativity (both laws), units, locality and the face lemmas, in every direction.
pub fn check_category_axioms(s: &SingleSetStructure) -> CheckReport {
    let n = s.dim();
    let idx = FaceIndex::new(s);
    let prods = products_by_value(s);
    let t = par_cells(s.len(), Severity::Axiom, |x, t| {
        for i in 1..=n {
            let bi = || [b_i(i)];
            let dm = s.d(i, Minus, x);
            let dp = s.d(i, Plus, x);
            t.eq("CAT.ii-unit-right", s.c(i, x, dp), Some(x), || wit(&bi(), &[x]));
            t.eq("CAT.ii-unit-left", s.c(i, dm, x), Some(x), || wit(&bi(), &[x]));
            // Locality: every face-matching pair is composed, every composed pair matches.
            for &y in idx.with_face(i, Minus, dp) {
                t.holds("CAT.iii-locality", s.c(i, x, y).is_some(), || wit(&bi(), &[x, y]));
            }
            for &(y, z) in s.row(i, x) {
                t.holds("CAT.iii-locality", s.d(i, Minus, y) == dp, || wit(&bi(), &[x, y]));
                t.eq("CAT.L-comp-face-minus", Some(s.d(i, Minus, z)), Some(dm), || wit(&bi(), &[x, y]));
                t.eq("CAT.L-comp-face-plus", Some(s.d(i, Plus, z)), Some(s.d(i, Plus, y)), || wit(&bi(), &[x, y]));
                // Right-hand side defined: Δ(x,y) ∧ Δ(x∘y, z).
                for &(w, r) in s.row(i, z) {
                    let yw = s.c(i, y, w);
                    let lhs_defined = yw.and_then(|yw| s.c(i, x, yw));
                    t.holds("CAT.i-assoc-defined", lhs_defined.is_some(), || wit(&bi(), &[x, y, w]));
                    if let Some(l) = lhs_defined {
                        t.eq("CAT.i-assoc-value", Some(l), Some(r), || wit(&bi(), &[x, y, w]));
                    }
                }
            }
            // Left-hand side defined: Δ(y,w) ∧ Δ(x, y∘w); x plays the left operand.
            for &(v, _) in s.row(i, x) {
                for &(y, w) in &prods[i - 1][v.index()] {
                    let xy = s.c(i, x, y);
                    let ok = xy.and_then(|xy| s.c(i, xy, w)).is_some();
                    t.holds("CAT.i-assoc-defined", ok, || wit(&bi(), &[x, y, w]));
                }
            }
            for a in Sign::BOTH {
                for b in Sign::BOTH {
                    let inner = s.d(i, b, x);
                    t.eq("CAT.L-face-face", Some(s.d(i, a, inner)), Some(inner), || {
                        wit(&[b_i(i), b_a(a), b_b(b)], &[x])
                    });
                }
            }
            t.holds("CAT.L-fixed-minus-plus", (dm == x) == (dp == x), || wit(&bi(), &[x]));
        }
    });
    let mut r = CheckReport::from_tally(t);
    r.notes.push("CAT.iv-functionality holds by construction: the composition table stores one value per pair".into());
    r
}

/// Axioms (i)–(ix) of single-set cubical n-categories; (x) is recorded as vacuous.
pub fn check_cubical_axioms(s: &SingleSetStructure) -> CheckReport {
    let n = s.dim();
    let t = par_cells(s.len(), Severity::Axiom, |x, t| {
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                for a in Sign::BOTH {
                    for b in Sign::BOTH {
                        t.eq("SSCC.i-faces-commute", Some(s.d(i, a, s.d(j, b, x))), Some(s.d(j, b, s.d(i, a, x))), || {
                            wit(&[b_i(i), b_j(j), b_a(a), b_b(b)], &[x])
                        });
                    }
                }
            }
        }
        for j in 1..=n {
            for &(y, z) in s.row(j, x) {
                for i in (1..=n).filter(|&i| i != j) {
                    for a in Sign::BOTH {
                        t.eq("SSCC.ii-face-of-composite", Some(s.d(i, a, z)), s.c(j, s.d(i, a, x), s.d(i, a, y)), || {
                            wit(&[b_i(i), b_j(j), b_a(a)], &[x, y])
                        });
                    }
                }
            }
        }
        // Interchange with w = x, enumerated over composable quadruples only.
        let w = x;
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                for &(xx, wx) in s.row(i, w) {
                    for &(y, wy) in s.row(j, w) {
                        for &(z, yz) in s.row(i, y) {
                            let Some(xz) = s.c(j, xx, z) else { continue };
                            let lhs = s.c(j, wx, yz);
                            let rhs = s.c(i, wy, xz);
                            t.holds("SSCC.iii-interchange", lhs.is_some() && lhs == rhs, || {
                                wit(&[b_i(i), b_j(j)], &[w, xx, y, z])
                            });
                        }
                    }
                }
            }
        }
        for i in 1..n {
            let bi = || [b_i(i)];
            if s.fix(i, x) {
                t.holds("SSCC.iv-sym-typing", s.fix(i + 1, s.s(i, x)), || wit(&bi(), &[x]));
                t.eq("SSCC.v-invsym-after-sym", Some(s.t(i, s.s(i, x))), Some(x), || wit(&bi(), &[x]));
            }
            if s.fix(i + 1, x) {
                t.holds("SSCC.iv-invsym-typing", s.fix(i, s.t(i, x)), || wit(&bi(), &[x]));
                t.eq("SSCC.v-sym-after-invsym", Some(s.s(i, s.t(i, x))), Some(x), || wit(&bi(), &[x]));
            }
        }
        for j in 1..n {
            if !s.fix(j, x) {
                continue;
            }
            for a in Sign::BOTH {
                t.eq("SSCC.vi-face-sym-same", Some(s.d(j, a, s.s(j, x))), Some(s.s(j, s.d(j + 1, a, x))), || {
                    wit(&[b_j(j), b_a(a)], &[x])
                });
                for i in (1..=n).filter(|&i| i != j && i != j + 1) {
                    t.eq("SSCC.vi-face-sym-other", Some(s.d(i, a, s.s(j, x))), Some(s.s(j, s.d(i, a, x))), || {
                        wit(&[b_i(i), b_j(j), b_a(a)], &[x])
                    });
                }
            }
        }
        for i in 1..n {
            if !s.fix(i, x) {
                continue;
            }
            for &(y, z) in s.row(i + 1, x) {
                if s.fix(i, y) {
                    t.eq("SSCC.vii-sym-comp-next", Some(s.s(i, z)), s.c(i, s.s(i, x), s.s(i, y)), || {
                        wit(&[b_i(i)], &[x, y])
                    });
                }
            }
            for j in (1..=n).filter(|&j| j != i && j != i + 1) {
                for &(y, z) in s.row(j, x) {
                    if s.fix(i, y) {
                        t.eq("SSCC.vii-sym-comp-other", Some(s.s(i, z)), s.c(j, s.s(i, x), s.s(i, y)), || {
                            wit(&[b_i(i), b_j(j)], &[x, y])
                        });
                    }
                }
            }
            if s.fix(i + 1, x) {
                t.eq("SSCC.viii-sym-fixes", Some(s.s(i, x)), Some(x), || wit(&[b_i(i)], &[x]));
            }
            for j in 1..n {
                if i.abs_diff(j) >= 2 && s.fix(j, x) {
                    t.eq("SSCC.ix-sym-braid", Some(s.s(i, s.s(j, x))), Some(s.s(j, s.s(i, x))), || {
                        wit(&[b_i(i), b_j(j)], &[x])
                    });
                }
            }
        }
    });
    let mut r = CheckReport::from_tally(t);
    r.notes.push(format!("SSCC.x-finite-dimension is vacuous at finite n = {n}"));
    r
}

/// Connection axioms (i)–(vi); a structure without connection tables is a configuration error.
pub fn check_connection_axioms(s: &SingleSetStructure) -> Result<CheckReport, CubicalError> {
    if !s.has_connections() {
        return Err(CubicalError::MissingConnections);
    }
    let n = s.dim();
    let t = par_cells(s.len(), Severity::Axiom, |x, t| {
        for j in 1..n {
            if !s.fix(j, x) {
                continue;
            }
            for a in Sign::BOTH {
                t.eq("CONN.i-face-same", Some(s.d(j, a, s.g(j, a, x))), Some(x), || wit(&[b_j(j), b_a(a)], &[x]));
                t.eq("CONN.i-face-next", Some(s.d(j + 1, a, s.g(j, a, x))), Some(s.s(j, x)), || {
                    wit(&[b_j(j), b_a(a)], &[x])
                });
                for i in (1..=n).filter(|&i| i != j && i != j + 1) {
                    for b in Sign::BOTH {
                        t.eq("CONN.i-face-other", Some(s.d(i, a, s.g(j, b, x))), Some(s.g(j, b, s.d(i, a, x))), || {
                            wit(&[b_i(i), b_j(j), b_a(a), b_b(b)], &[x])
                        });
                    }
                }
            }
        }
        for i in 1..n {
            if !s.fix(i, x) {
                continue;
            }
            for &(y, xy) in s.row(i + 1, x) {
                if !s.fix(i, y) {
                    continue;
                }
                let plus = s
                    .c(i + 1, s.g(i, Plus, x), s.s(i, x))
                    .zip(s.c(i + 1, x, s.g(i, Plus, y)))
                    .and_then(|(l, r)| s.c(i, l, r));
                t.eq("CONN.ii-corner-plus", Some(s.g(i, Plus, xy)), plus, || wit(&[b_i(i)], &[x, y]));
                let minus = s
                    .c(i + 1, s.g(i, Minus, x), y)
                    .zip(s.c(i + 1, s.s(i, y), s.g(i, Minus, y)))
                    .and_then(|(l, r)| s.c(i, l, r));
                t.eq("CONN.ii-corner-minus", Some(s.g(i, Minus, xy)), minus, || wit(&[b_i(i)], &[x, y]));
            }
            for j in (1..=n).filter(|&j| j != i && j != i + 1) {
                for &(y, xy) in s.row(j, x) {
                    if !s.fix(i, y) {
                        continue;
                    }
                    for a in Sign::BOTH {
                        t.eq("CONN.ii-comp-other", Some(s.g(i, a, xy)), s.c(j, s.g(i, a, x), s.g(i, a, y)), || {
                            wit(&[b_i(i), b_j(j), b_a(a)], &[x, y])
                        });
                    }
                }
            }
            if s.fix(i + 1, x) {
                for a in Sign::BOTH {
                    t.eq("CONN.iii-fixes", Some(s.g(i, a, x)), Some(x), || wit(&[b_i(i), b_a(a)], &[x]));
                }
            }
            let (gp, gm) = (s.g(i, Plus, x), s.g(i, Minus, x));
            t.eq("CONN.iv-zigzag1", s.c(i + 1, gp, gm), Some(x), || wit(&[b_i(i)], &[x]));
            t.eq("CONN.iv-zigzag2", s.c(i, gp, gm), Some(s.s(i, x)), || wit(&[b_i(i)], &[x]));
            for j in 1..n {
                if i.abs_diff(j) >= 2 && s.fix(j, x) {
                    for a in Sign::BOTH {
                        for b in Sign::BOTH {
                            t.eq("CONN.v-braid", Some(s.g(i, a, s.g(j, b, x))), Some(s.g(j, b, s.g(i, a, x))), || {
                                wit(&[b_i(i), b_j(j), b_a(a), b_b(b)], &[x])
                            });
                        }
                    }
                }
            }
            if i + 1 < n && s.fix(i + 1, x) {
                for a in Sign::BOTH {
                    t.eq(
                        "CONN.vi-shift",
                        Some(s.s(i + 1, s.s(i, s.g(i + 1, a, x)))),
                        Some(s.g(i, a, s.s(i + 1, x))),
                        || wit(&[b_i(i), b_a(a)], &[x]),
                    );
                }
            }
        }
    });
    Ok(CheckReport::from_tally(t))
}

/// Lemmas that follow from the axioms; failures carry theorem-violation severity.
pub fn check_derived_lemmas(s: &SingleSetStructure) -> CheckReport {
    let n = s.dim();
    let conn = s.has_connections();
    let t = par_cells(s.len(), Severity::TheoremViolation, |x, t| {
        for j in 1..n {
            if s.fix(j, x) {
                for a in Sign::BOTH {
                    t.eq("DER.sym-i-face", Some(s.d(j + 1, a, s.s(j, x))), Some(s.s(j, s.d(j, a, x))), || {
                        wit(&[b_j(j), b_a(a)], &[x])
                    });
                }
            }
        }
        for i in 1..n {
            if s.fix(i, x) {
                for &(y, z) in s.row(i, x) {
                    if s.fix(i, y) {
                        t.eq("DER.sym-ii-comp", Some(s.s(i, z)), s.c(i + 1, s.s(i, x), s.s(i, y)), || {
                            wit(&[b_i(i)], &[x, y])
                        });
                    }
                }
            }
            if i + 1 < n && s.fix(i, x) && s.fix(i + 1, x) {
                t.eq(
                    "DER.sym-iii-yang-baxter",
                    Some(s.s(i, s.s(i + 1, s.s(i, x)))),
                    Some(s.s(i + 1, s.s(i, s.s(i + 1, x)))),
                    || wit(&[b_i(i)], &[x]),
                );
            }
        }
        // Reverse symmetries.
        for j in 1..n {
            if !s.fix(j + 1, x) {
                continue;
            }
            for i in 1..=n {
                for a in Sign::BOTH {
                    let rhs = if i == j {
                        s.t(j, s.d(j + 1, a, x))
                    } else if i == j + 1 {
                        s.t(j, s.d(j, a, x))
                    } else {
                        s.t(j, s.d(i, a, x))
                    };
                    t.eq("DER.invsym-i-face", Some(s.d(i, a, s.t(j, x))), Some(rhs), || {
                        wit(&[b_i(i), b_j(j), b_a(a)], &[x])
                    });
                }
            }
        }
        for i in 1..n {
            if !s.fix(i + 1, x) {
                continue;
            }
            for j in 1..=n {
                let k = if j == i {
                    i + 1
                } else if j == i + 1 {
                    i
                } else {
                    j
                };
                for &(y, z) in s.row(j, x) {
                    if s.fix(i + 1, y) {
                        t.eq("DER.invsym-ii-comp", Some(s.t(i, z)), s.c(k, s.t(i, x), s.t(i, y)), || {
                            wit(&[b_i(i), b_j(j)], &[x, y])
                        });
                    }
                }
            }
            if s.fix(i, x) {
                t.eq("DER.invsym-iii-fixes", Some(s.t(i, x)), Some(x), || wit(&[b_i(i)], &[x]));
            }
            if i + 1 < n && s.fix(i + 2, x) {
                t.eq(
                    "DER.invsym-v-yang-baxter",
                    Some(s.t(i, s.t(i + 1, s.t(i, x)))),
                    Some(s.t(i + 1, s.t(i, s.t(i + 1, x)))),
                    || wit(&[b_i(i)], &[x]),
                );
            }
        }
        for i in 1..n {
            for j in 1..n {
                if i.abs_diff(j) < 2 {
                    continue;
                }
                let bij = || [b_i(i), b_j(j)];
                if s.fix(i, x) && s.fix(j + 1, x) {
                    t.eq("DER.invsym-iv-sym-invsym", Some(s.s(i, s.t(j, x))), Some(s.t(j, s.s(i, x))), || wit(&bij(), &[x]));
                }
                if s.fix(i + 1, x) && s.fix(j, x) {
                    t.eq("DER.invsym-iv-invsym-sym", Some(s.t(i, s.s(j, x))), Some(s.s(j, s.t(i, x))), || wit(&bij(), &[x]));
                }
                if s.fix(i + 1, x) && s.fix(j + 1, x) {
                    t.eq("DER.invsym-iv-invsym-invsym", Some(s.t(i, s.t(j, x))), Some(s.t(j, s.t(i, x))), || {
                        wit(&bij(), &[x])
                    });
                }
            }
        }
        if conn {
            for j in 1..n {
                if !s.fix(j, x) {
                    continue;
                }
                for a in Sign::BOTH {
                    let g = s.g(j, a.flip(), x);
                    let target = s.d(j + 1, a, x);
                    t.eq("DER.conn-i-face-same", Some(s.d(j, a, g)), Some(target), || wit(&[b_j(j), b_a(a)], &[x]));
                    t.eq("DER.conn-i-face-next", Some(s.d(j + 1, a, g)), Some(target), || wit(&[b_j(j), b_a(a)], &[x]));
                }
            }
            for i in 1..n {
                if s.fix(i, x) {
                    for &(y, xy) in s.row(i + 1, x) {
                        if !s.fix(i, y) {
                            continue;
                        }
                        let plus = s
                            .c(i, s.g(i, Plus, x), x)
                            .zip(s.c(i, s.s(i, x), s.g(i, Plus, y)))
                            .and_then(|(l, r)| s.c(i + 1, l, r));
                        t.eq("DER.conn-ii-corner-plus", Some(s.g(i, Plus, xy)), plus, || wit(&[b_i(i)], &[x, y]));
                        let minus = s
                            .c(i, s.g(i, Minus, x), s.s(i, y))
                            .zip(s.c(i, y, s.g(i, Minus, y)))
                            .and_then(|(l, r)| s.c(i + 1, l, r));
                        t.eq("DER.conn-ii-corner-minus", Some(s.g(i, Minus, xy)), minus, || wit(&[b_i(i)], &[x, y]));
                    }
                }
                for j in 1..n {
                    if i.abs_diff(j) < 2 || !s.fix(i, x) {
                        continue;
                    }
                    for a in Sign::BOTH {
                        if s.fix(j, x) {
                            t.eq("DER.conn-iii-sym", Some(s.g(i, a, s.s(j, x))), Some(s.s(j, s.g(i, a, x))), || {
                                wit(&[b_i(i), b_j(j), b_a(a)], &[x])
                            });
                        }
                        if s.fix(j + 1, x) {
                            t.eq("DER.conn-iii-invsym", Some(s.g(i, a, s.t(j, x))), Some(s.t(j, s.g(i, a, x))), || {
                                wit(&[b_i(i), b_j(j), b_a(a)], &[x])
                            });
                        }
                    }
                }
                if i + 1 < n && s.fix(i, x) && s.fix(i + 2, x) {
                    for a in Sign::BOTH {
                        t.eq(
                            "DER.conn-iv-invsym-shift",
                            Some(s.t(i, s.t(i + 1, s.g(i, a, x)))),
                            Some(s.g(i + 1, a, s.t(i + 1, x))),
                            || wit(&[b_i(i), b_a(a)], &[x]),
                        );
                    }
                }
            }
        }
        // Uniqueness of r_i-inverses.
        for i in 1..=n {
            let (dm, dp) = (s.d(i, Minus, x), s.d(i, Plus, x));
            let count = s
                .row(i, x)
                .iter()
                .filter(|&&(y, z)| z == dm && s.c(i, y, x) == Some(dp))
                .count();
            t.holds("DER.inverse-unique", count <= 1, || wit(&[b_i(i)], &[x]));
        }
    });
    let mut r = CheckReport::from_tally(t);
    if !conn {
        r.skipped.push("DER.conn-* skipped: no connection tables".into());
    }
    r
}

/// Union of every single-set suite applicable to the structure.
pub fn check_all(s: &SingleSetStructure) -> CheckReport {
    let mut r = check_category_axioms(s);
    r.merge(check_cubical_axioms(s));
    match check_connection_axioms(s) {
        Ok(c) => r.merge(c),
        Err(_) => r.skipped.push("CONN.* skipped: no connection tables".into()),
    }
    r.merge(check_derived_lemmas(s));
    r
}

/// Runs every suite and sets the validated flag when all pass.
#[allow(clippy::result_large_err)]
pub fn validate(mut s: SingleSetStructure) -> Result<SingleSetStructure, (SingleSetStructure, CheckReport)> {
    let r = check_all(&s);
    if r.passed() {
        s.set_validated(true);
        Ok(s)
    } else {
        s.set_validated(false);
        Err((s, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{base_category, cube_nerve_raw, terminal_raw, BaseKind};

    fn groupoid2() -> SingleSetStructure {
        cube_nerve_raw(&base_category(BaseKind::PairGroupoid, 2).unwrap(), 2, true, 1000).unwrap()
    }

    #[test]
    fn terminal_passes_everything() {
        let s = terminal_raw(2, true);
        let r = check_all(&s);
        assert!(r.passed(), "{:?}", r.violations);
        assert!(r.checked_count > 0);
    }

    #[test]
    fn groupoid_nerve_passes_everything() {
        let r = check_all(&groupoid2());
        assert!(r.passed(), "{:?}", r.violations.first());
    }

    #[test]
    fn face_commutation_instance_count() {
        let r = check_cubical_axioms(&groupoid2());
        assert_eq!(r.count("SSCC.i-faces-commute"), 128);
    }

    #[test]
    fn missing_connections_is_configuration_error() {
        let s = terminal_raw(2, false);
        assert_eq!(check_connection_axioms(&s).unwrap_err(), CubicalError::MissingConnections);
        assert!(!check_derived_lemmas(&s).skipped.is_empty());
    }
}

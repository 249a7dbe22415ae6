//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Runtime limits are wall-clock seconds on the test profile.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use cubical_core::classical::{check_classical_axioms, check_classical_np};
use cubical_core::equivalence::{check_eta, check_inverse_transport, check_mu, fc, fs};
use cubical_core::inverses::{check_inverse_lemmas, check_np, ri_inverse, synthesize_inverse_dim0};
use cubical_core::laws::{
    check_all, check_category_axioms, check_connection_axioms, check_cubical_axioms, check_derived_lemmas,
};
use cubical_core::models::{base_category, cube_nerve, terminal};
use cubical_core::normalizer::{check_confluence, default_rules, enumerate_words, eval_word, normalize};
use cubical_core::{BaseKind, CellId, ClassicalStructure, SingleSetStructure, TableLocation};

const LIMIT_SUITES_N2: Duration = Duration::from_secs(10);
const LIMIT_SUITES_N3: Duration = Duration::from_secs(120);
const LIMIT_SYNTHESIS_N3: Duration = Duration::from_secs(60);
const MUTATION_COUNT: usize = 50;
const MUTATION_SEED: u64 = 0x5eed_cafe;
const WORD_MAX_LEN: usize = 4;
const WORD_MAX_LEVEL: usize = 3;

fn nerve(kind: BaseKind, m: usize, n: usize) -> SingleSetStructure {
    cube_nerve(&base_category(kind, m).expect("base"), n, true).expect("nerve validates")
}

fn fixtures() -> Vec<(String, SingleSetStructure)> {
    vec![
        ("pair_groupoid(2) n=2".into(), nerve(BaseKind::PairGroupoid, 2, 2)),
        ("pair_groupoid(2) n=3".into(), nerve(BaseKind::PairGroupoid, 2, 3)),
        ("discrete(2) n=2".into(), nerve(BaseKind::Discrete, 2, 2)),
        ("chain_poset(2) n=2".into(), nerve(BaseKind::ChainPoset, 2, 2)),
        ("terminal n=2".into(), terminal(2, true)),
    ]
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn core_suites(s: &SingleSetStructure) -> (usize, u64) {
    let mut r = check_category_axioms(s);
    r.merge(check_cubical_axioms(s));
    r.merge(check_connection_axioms(s).expect("connections present"));
    r.merge(check_derived_lemmas(s));
    (r.violations.len(), r.checked_count)
}

fn criterion_1() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (n, limit) in [(2, LIMIT_SUITES_N2), (3, LIMIT_SUITES_N3)] {
        let start = Instant::now();
        let s = nerve(BaseKind::PairGroupoid, 2, n);
        let (bad, checked) = core_suites(&s);
        let took = start.elapsed();
        ok &= bad == 0 && took < limit;
        parts.push(format!("n={n}: {bad} violations / {checked} instances in {:.2}s (limit {}s)", took.as_secs_f64(), limit.as_secs()));
    }
    outcome(ok, parts.join("; "))
}

fn criterion_2() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, s) in fixtures() {
        let mut r = check_derived_lemmas(&s);
        match check_inverse_lemmas(&s) {
            Ok(inv) => r.merge(inv),
            Err(e) => {
                ok = false;
                parts.push(format!("{name}: {e}"));
                continue;
            }
        }
        ok &= r.passed();
        parts.push(format!("{name}: {}", r.violations.len()));
    }
    outcome(ok, format!("violations {}", parts.join(", ")))
}

fn criterion_3() -> Outcome {
    let g2 = check_np(&nerve(BaseKind::PairGroupoid, 2, 2), 0);
    let g3 = check_np(&nerve(BaseKind::PairGroupoid, 2, 3), 0);
    let chain = nerve(BaseKind::ChainPoset, 2, 2);
    let c = check_np(&chain, 0);
    let witness = c.violations.first().map(|v| chain.name(v.cells[0]).to_string()).unwrap_or_default();
    outcome(
        g2.passed() && g3.passed() && !c.passed(),
        format!(
            "groupoid n=2: {}, n=3: {}; chain n=2: {} witnesses (first {witness})",
            g2.violations.len(),
            g3.violations.len(),
            c.violations.len()
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [2, 3] {
        let s = nerve(BaseKind::PairGroupoid, 2, n);
        let start = Instant::now();
        let mut disagreements = 0;
        let mut cases = 0;
        for x in s.cells() {
            for i in 1..=n {
                cases += 1;
                let brute = ri_inverse(&s, i, x).expect("in range").map(|c| c.inverse);
                let built = synthesize_inverse_dim0(&s, i, x).ok().map(|c| c.inverse);
                if brute != built || built.is_none() {
                    disagreements += 1;
                }
            }
        }
        let took = start.elapsed();
        ok &= disagreements == 0 && (n < 3 || took < LIMIT_SYNTHESIS_N3);
        parts.push(format!("n={n}: {disagreements}/{cases} disagreements in {:.2}s", took.as_secs_f64()));
    }
    outcome(ok, parts.join("; "))
}

fn criterion_5() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, s) in fixtures() {
        let mu = check_mu(&s);
        let (eta, classical, single) = match fc(&s) {
            Ok((c, _)) => {
                let eta = check_eta(&c);
                let cl = check_classical_axioms(&c);
                let single = match fs(&c) {
                    Ok(back) => check_all(&back).violations.len(),
                    Err(_) => usize::MAX,
                };
                (eta.violations.len(), cl.violations.len(), single)
            }
            Err(_) => (usize::MAX, usize::MAX, usize::MAX),
        };
        ok &= mu.passed() && eta == 0 && classical == 0 && single == 0;
        parts.push(format!("{name}: mu {} eta {eta} classical {classical} single-set {single}", mu.violations.len()));
    }
    outcome(ok, parts.join("; "))
}

fn criterion_6() -> Outcome {
    let g = nerve(BaseKind::PairGroupoid, 2, 2);
    let tg = check_inverse_transport(&g, 0);
    let chain = nerve(BaseKind::ChainPoset, 2, 2);
    let tc = check_inverse_transport(&chain, 0);
    let single = check_np(&chain, 0);
    let classical = fc(&chain).map(|(c, _)| check_classical_np(&c, 0));
    let both_fail = !single.passed() && classical.as_ref().map(|r| !r.passed()).unwrap_or(false);
    // The transport report includes the witness correspondence under η.
    outcome(
        tg.passed() && tc.passed() && both_fail,
        format!(
            "groupoid transport {} violations; chain transport {} violations, single-set np {} witnesses, classical np {} witnesses",
            tg.violations.len(),
            tc.violations.len(),
            single.violations.len(),
            classical.map(|r| r.violations.len()).unwrap_or(0)
        ),
    )
}

fn soundness_on(c: &ClassicalStructure) -> (usize, usize) {
    let n = c.dim();
    let mut checked = 0;
    let mut mismatches = 0;
    for level in 0..=WORD_MAX_LEVEL.min(n) {
        for w in enumerate_words(WORD_MAX_LEN, level) {
            let path = w.level_path(level).expect("generated well-leveled");
            if path.iter().any(|&m| m > n) {
                continue;
            }
            let nf = normalize(&w, level).expect("normalizes");
            for a in 0..c.level_size(level) as u32 {
                checked += 1;
                let lhs = eval_word(c, &w, level, CellId(a));
                let rhs = eval_word(c, &nf, level, CellId(a));
                if lhs.is_err() || lhs != rhs {
                    mismatches += 1;
                }
            }
        }
    }
    (checked, mismatches)
}

fn criterion_7() -> Outcome {
    let (g, _) = fc(&nerve(BaseKind::PairGroupoid, 2, 3)).expect("fc");
    let (ch, _) = fc(&nerve(BaseKind::ChainPoset, 2, 2)).expect("fc");
    let (cg, mg) = soundness_on(&g);
    let (cc, mc) = soundness_on(&ch);
    let conf = check_confluence(&default_rules(), WORD_MAX_LEN, WORD_MAX_LEVEL);
    let distinct = conf.violations_of("CONF.distinct-oracle").count();
    let unsound = conf.violations_of("CONF.unsound").count() + conf.violations_of("CONF.ill-leveled").count();
    outcome(
        mg == 0 && mc == 0 && distinct == 0 && unsound == 0,
        format!(
            "groupoid n=3: {mg}/{cg} mismatches; chain n=2: {mc}/{cc} mismatches; confluence: {distinct} oracle-distinct pairs, {unsound} bad steps, {} words, {} levels with oracle-equal words of different normal forms",
            conf.count("CONF.unique-normal-form"),
            conf.notes.iter().filter(|n| n.contains("several")).count()
        ),
    )
}

fn criterion_8() -> Outcome {
    let s = nerve(BaseKind::PairGroupoid, 2, 2);
    let locations = s.table_locations();
    let mut rng = StdRng::seed_from_u64(MUTATION_SEED);
    let mut silent = Vec::new();
    let mut typed = 0;
    let mut typed_caught = 0;
    for _ in 0..MUTATION_COUNT {
        let loc = locations[rng.gen_range(0..locations.len())];
        let current = s.entry(loc).expect("location exists");
        let mut value = CellId(rng.gen_range(0..s.len() as u32));
        while value == current {
            value = CellId(rng.gen_range(0..s.len() as u32));
        }
        let m = s.with_entry(loc, value).expect("mutation applies");
        let caught = !check_all(&m).passed();
        if on_typed_domain(&s, loc) {
            typed += 1;
            typed_caught += caught as usize;
        }
        if !caught {
            silent.push(describe(&s, loc));
        }
    }
    outcome(
        silent.is_empty(),
        format!(
            "{} of {MUTATION_COUNT} mutations accepted silently {silent:?}; typed-domain entries caught {typed_caught}/{typed}",
            silent.len()
        ),
    )
}

/// Whether a sym, reverse sym or connection entry lies on the domain its axioms quantify over.
fn on_typed_domain(s: &SingleSetStructure, loc: TableLocation) -> bool {
    let fixed = |i: usize, x: CellId| s.is_fixed(i, x).expect("in range");
    match loc {
        TableLocation::Sym { dir, cell } | TableLocation::Conn { dir, cell, .. } => fixed(dir, cell),
        TableLocation::InvSym { dir, cell } => fixed(dir + 1, cell),
        TableLocation::Face { .. } | TableLocation::Comp { .. } => true,
    }
}

fn describe(s: &SingleSetStructure, loc: TableLocation) -> String {
    let typed = if on_typed_domain(s, loc) { "typed" } else { "off-type" };
    format!("{loc:?} ({typed})")
}

fn criterion_9() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    // Closed forms: a labeling of the 2^n vertices by objects, all labelings valid for groupoids.
    for (kind, m, n, expect) in [
        (BaseKind::PairGroupoid, 2usize, 2usize, 2usize.pow(4)),
        (BaseKind::PairGroupoid, 2, 3, 2usize.pow(8)),
        (BaseKind::Discrete, 2, 2, 2),
    ] {
        let s = nerve(kind, m, n);
        ok &= s.len() == expect;
        parts.push(format!("{kind}({m}) n={n}: {} (expected {expect})", s.len()));
    }
    let g = nerve(BaseKind::PairGroupoid, 2, 2);
    for (m, expect) in [(0usize, 2usize), (1, 4)] {
        let t = g.truncate(m).expect("truncates");
        ok &= t.len() == expect;
        parts.push(format!("truncate {m}: {} (expected {expect})", t.len()));
    }
    let mut lattice_errors = 0;
    for n in [2, 3] {
        let s = nerve(BaseKind::PairGroupoid, 2, n);
        let lattice = s.fixed_point_lattice();
        for (i, si) in &lattice {
            for (j, sj) in &lattice {
                let included = si.iter().all(|x| sj.contains(x));
                if included != i.is_superset(j) {
                    lattice_errors += 1;
                }
            }
        }
    }
    ok &= lattice_errors == 0;
    parts.push(format!("lattice inclusion errors {lattice_errors}"));
    outcome(ok, parts.join("; "))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("axiom soundness of nerve fixtures", criterion_1),
        ("derived lemma suites on all fixtures", criterion_2),
        ("(n,0) condition positive and negative", criterion_3),
        ("constructive inverse equals brute force", criterion_4),
        ("equivalence round trips", criterion_5),
        ("inverse transport", criterion_6),
        ("normalizer soundness and confluence", criterion_7),
        ("checker catches random mutations", criterion_8),
        ("counting checks", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = if o.ok { "PASS" } else { "FAIL" };
        failed += (!o.ok) as usize;
        println!("criterion {}: {status} {name} [{:.2}s] {}", k + 1, start.elapsed().as_secs_f64(), o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

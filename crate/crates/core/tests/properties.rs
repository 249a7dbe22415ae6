use std::sync::OnceLock;

use proptest::prelude::*;

use cubical_core::equivalence::fc;
use cubical_core::laws::check_all;
use cubical_core::models::{base_category, cube_nerve};
use cubical_core::normalizer::{
    check_confluence, cube_map, default_rules, eval_word, is_normal, normalize, words_equal_oracle,
};
use cubical_core::{BaseKind, CellId, DirectionSet, Sign, SingleSetStructure, StructuralWord, TableLocation, Token};

fn groupoid(n: usize) -> SingleSetStructure {
    static CACHE: OnceLock<Vec<SingleSetStructure>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        (1..=3).map(|n| cube_nerve(&base_category(BaseKind::PairGroupoid, 2).unwrap(), n, true).unwrap()).collect()
    });
    all[n - 1].clone()
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Minus), Just(Sign::Plus)]
}

fn token() -> impl Strategy<Value = Token> {
    (0..3u8, 1..6usize, sign()).prop_map(|(k, i, a)| match k {
        0 => Token::face(i, a),
        1 => Token::deg(i),
        _ => Token::conn(i, a),
    })
}

/// Random words at a level, kept only if well-leveled.
fn leveled_word() -> impl Strategy<Value = (StructuralWord, usize)> {
    (proptest::collection::vec(token(), 0..7), 0..4usize)
        .prop_map(|(t, l)| (StructuralWord::new(t), l))
        .prop_filter("well-leveled", |(w, l)| w.is_well_leveled(*l))
}

fn dirs(n: usize) -> impl Strategy<Value = DirectionSet> {
    proptest::collection::btree_set(1..=n, 0..=n).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #[test]
    fn normal_forms_are_sound_normal_and_idempotent((w, level) in leveled_word()) {
        let nf = normalize(&w, level).unwrap();
        prop_assert!(words_equal_oracle(&w, &nf, level));
        prop_assert!(is_normal(&default_rules(), &nf));
        prop_assert_eq!(normalize(&nf, level).unwrap(), nf.clone());
        let faces_start = nf.tokens.iter().position(|t| matches!(t.kind, cubical_core::TokenKind::Face(_))).unwrap_or(nf.len());
        prop_assert!(nf.tokens[faces_start..].iter().all(|t| matches!(t.kind, cubical_core::TokenKind::Face(_))));
    }

    #[test]
    fn word_syntax_round_trips((w, _) in leveled_word()) {
        let back: StructuralWord = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn fixed_sets_are_antitone(i in dirs(3), j in dirs(3)) {
        let s = groupoid(3);
        let si = s.fixed_set(&i).unwrap();
        let sj = s.fixed_set(&j).unwrap();
        let included = si.iter().all(|x| sj.contains(x));
        prop_assert_eq!(included, i.is_superset(&j));
    }

    #[test]
    fn face_and_comp_mutations_are_detected(pick in 0usize..10_000, value in 0u32..16) {
        let s = groupoid(2);
        let locs: Vec<TableLocation> = s
            .table_locations()
            .into_iter()
            .filter(|l| matches!(l, TableLocation::Face { .. } | TableLocation::Comp { .. }))
            .collect();
        let loc = locs[pick % locs.len()];
        prop_assume!(s.entry(loc) != Some(CellId(value)));
        let m = s.with_entry(loc, CellId(value)).unwrap();
        prop_assert!(!check_all(&m).passed());
    }

    #[test]
    fn mutation_then_restore_is_identity(pick in 0usize..10_000, value in 0u32..16) {
        let s = groupoid(2);
        let locs = s.table_locations();
        let loc = locs[pick % locs.len()];
        let old = s.entry(loc).unwrap();
        let back = s.with_entry(loc, CellId(value)).unwrap().with_entry(loc, old).unwrap();
        prop_assert!(back.same_tables(&s));
    }
}

#[test]
fn truncation_composes() {
    let s = groupoid(3);
    for m in 0..=3 {
        let t = s.truncate(m).unwrap();
        for k in 0..=m {
            assert!(t.truncate(k).unwrap().same_tables(&s.truncate(k).unwrap()), "m={m} k={k}");
        }
    }
}

#[test]
fn connection_face_example() {
    let s = groupoid(2);
    let x = s.cell_by_name("(a,b,a,b)").unwrap();
    let gx = s.apply_generator(cubical_core::Generator::Conn { dir: 1, sign: Sign::Plus }, x).unwrap();
    let face = |i, y| s.apply_generator(cubical_core::Generator::Face { dir: i, sign: Sign::Plus }, y).unwrap();
    assert_eq!(face(1, gx), x);
    assert_eq!(face(2, gx), s.apply_generator(cubical_core::Generator::Sym(1), x).unwrap());
}

#[test]
fn eval_examples_on_groupoid_image() {
    // The word [∂_1^-, ε_2] passes through level 3, so it needs the n=3 image.
    let (c, _) = fc(&groupoid(3)).unwrap();
    let w = |s: &str| s.parse::<StructuralWord>().unwrap();
    for a in 0..c.level_size(2) as u32 {
        let a = CellId(a);
        assert_eq!(eval_word(&c, &w("d1- e2"), 2, a).unwrap(), eval_word(&c, &w("e1 d1-"), 2, a).unwrap());
    }
    for a in 0..c.level_size(1) as u32 {
        assert_eq!(eval_word(&c, &w("d2+ g1+"), 1, CellId(a)).unwrap(), CellId(a));
    }
    assert!(eval_word(&c, &w("e1 e1"), 2, CellId(0)).is_err());
    let (c2, _) = fc(&groupoid(2)).unwrap();
    assert!(eval_word(&c2, &w("d1- e2"), 2, CellId(0)).is_err());
}

#[test]
fn confluence_reports_no_incompleteness_at_length_three() {
    let r = check_confluence(&default_rules(), 3, 3);
    assert!(r.passed(), "{:?}", r.violations.first());
    assert!(r.notes.iter().all(|n| !n.contains("several")), "{:?}", r.notes);
    assert!(cube_map(&"d1+".parse().unwrap(), 0).is_none());
}

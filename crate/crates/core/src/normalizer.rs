//! Rewriting of words in faces `∂`, degeneracies `ε` and connections `Γ`.
//!
//! A word `[t_0, …, t_r]` denotes `t_0 ∘ … ∘ t_r`: the rightmost token is applied first.
//! Normal forms are a block of degeneracies and connections followed by a block of faces.
//!
//! The termination measure, compared lexicographically, is
//! (face-before-up inversions, length, number of connections,
//! connection-before-degeneracy inversions, face index sum minus up index sum).

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::classical::ClassicalStructure;
use crate::core::CellId;
use crate::core::Sign::{self, Minus, Plus};
use crate::error::CubicalError;
use crate::report::{CheckReport, Severity, Tally, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TokenKind {
    Face(Sign),
    Deg,
    Conn(Sign),
}

/// One generator with its 1-based index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Token {
    pub kind: TokenKind,
    pub index: usize,
}

impl Token {
    pub fn face(index: usize, sign: Sign) -> Token {
        Token { kind: TokenKind::Face(sign), index }
    }

    pub fn deg(index: usize) -> Token {
        Token { kind: TokenKind::Deg, index }
    }

    pub fn conn(index: usize, sign: Sign) -> Token {
        Token { kind: TokenKind::Conn(sign), index }
    }

    fn is_face(self) -> bool {
        matches!(self.kind, TokenKind::Face(_))
    }

    /// Level after applying this token at level `m`, if the index is in range.
    pub fn apply_level(self, m: usize) -> Option<usize> {
        if self.index == 0 {
            return None;
        }
        match self.kind {
            TokenKind::Face(_) => (self.index <= m).then(|| m - 1),
            TokenKind::Deg => (self.index <= m + 1).then_some(m + 1),
            TokenKind::Conn(_) => (self.index <= m).then_some(m + 1),
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TokenKind::Face(a) => write!(f, "d{}{}", self.index, a),
            TokenKind::Deg => write!(f, "e{}", self.index),
            TokenKind::Conn(a) => write!(f, "g{}{}", self.index, a),
        }
    }
}

impl FromStr for Token {
    type Err = CubicalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CubicalError::Parse(format!("bad token `{s}`; expected d<i><+|->, e<i> or g<i><+|->"));
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        let signed = |rest: &str| -> Result<(usize, Sign), CubicalError> {
            let (num, sign) = rest.split_at(rest.len().checked_sub(1).ok_or_else(bad)?);
            let sign = Sign::parse(sign).ok_or_else(bad)?;
            Ok((num.parse().map_err(|_| bad())?, sign))
        };
        let tok = match head {
            'd' => {
                let (i, a) = signed(rest)?;
                Token::face(i, a)
            }
            'g' => {
                let (i, a) = signed(rest)?;
                Token::conn(i, a)
            }
            'e' => Token::deg(rest.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        if tok.index == 0 {
            return Err(bad());
        }
        Ok(tok)
    }
}

/// A composable string of structural maps; `tokens[0]` is applied last.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StructuralWord {
    pub tokens: Vec<Token>,
}

impl StructuralWord {
    pub fn new(tokens: Vec<Token>) -> Self {
        StructuralWord { tokens }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Levels visited when applying the word at `level`, starting with `level` itself.
    pub fn level_path(&self, level: usize) -> Result<Vec<usize>, CubicalError> {
        let mut path = vec![level];
        let mut m = level;
        for (pos, t) in self.tokens.iter().enumerate().rev() {
            m = t.apply_level(m).ok_or_else(|| {
                let bound = if matches!(t.kind, TokenKind::Deg) { m + 1 } else { m };
                CubicalError::Level(format!("token {t} at position {pos} needs index ≤ {bound} at level {m}"))
            })?;
            path.push(m);
        }
        Ok(path)
    }

    pub fn is_well_leveled(&self, level: usize) -> bool {
        self.level_path(level).is_ok()
    }

    /// Level of the result when applied at `level`.
    pub fn target_level(&self, level: usize) -> Result<usize, CubicalError> {
        Ok(*self.level_path(level)?.last().expect("path is non-empty"))
    }
}

impl fmt::Display for StructuralWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.tokens.iter().map(Token::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for StructuralWord {
    type Err = CubicalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "id" {
            return Ok(StructuralWord::default());
        }
        Ok(StructuralWord::new(s.split_whitespace().map(str::parse).collect::<Result<_, _>>()?))
    }
}

/// An oriented relation on a two-token window `[left, right]`.
#[derive(Clone, Copy)]
pub struct Rule {
    pub name: &'static str,
    pub apply: fn(Token, Token) -> Option<Vec<Token>>,
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rule({})", self.name)
    }
}

#[derive(Clone, Debug, Default)]
pub struct RuleSet {
    pub rules: Vec<Rule>,
}

fn face_face(l: Token, r: Token) -> Option<Vec<Token>> {
    match (l.kind, r.kind) {
        (TokenKind::Face(a), TokenKind::Face(b)) if l.index < r.index => {
            Some(vec![Token::face(r.index - 1, b), Token::face(l.index, a)])
        }
        _ => None,
    }
}

fn face_face_misindexed(l: Token, r: Token) -> Option<Vec<Token>> {
    match (l.kind, r.kind) {
        (TokenKind::Face(a), TokenKind::Face(b)) if l.index < r.index => {
            Some(vec![Token::face(r.index, b), Token::face(l.index, a)])
        }
        _ => None,
    }
}

fn face_deg(l: Token, r: Token) -> Option<Vec<Token>> {
    let (TokenKind::Face(a), TokenKind::Deg) = (l.kind, r.kind) else { return None };
    let (i, j) = (l.index, r.index);
    Some(if i < j {
        vec![Token::deg(j - 1), Token::face(i, a)]
    } else if i == j {
        vec![]
    } else {
        vec![Token::deg(j), Token::face(i - 1, a)]
    })
}

fn face_conn(l: Token, r: Token) -> Option<Vec<Token>> {
    let (TokenKind::Face(a), TokenKind::Conn(b)) = (l.kind, r.kind) else { return None };
    let (i, j) = (l.index, r.index);
    Some(if i < j {
        vec![Token::conn(j - 1, b), Token::face(i, a)]
    } else if i == j || i == j + 1 {
        if a == b {
            vec![]
        } else {
            vec![Token::deg(j), Token::face(j, a)]
        }
    } else {
        vec![Token::conn(j, b), Token::face(i - 1, a)]
    })
}

fn deg_deg(l: Token, r: Token) -> Option<Vec<Token>> {
    match (l.kind, r.kind) {
        (TokenKind::Deg, TokenKind::Deg) if l.index <= r.index => Some(vec![Token::deg(r.index + 1), Token::deg(l.index)]),
        _ => None,
    }
}

fn conn_deg(l: Token, r: Token) -> Option<Vec<Token>> {
    let (TokenKind::Conn(a), TokenKind::Deg) = (l.kind, r.kind) else { return None };
    let (i, j) = (l.index, r.index);
    Some(if i < j {
        vec![Token::deg(j + 1), Token::conn(i, a)]
    } else if i == j {
        vec![Token::deg(i), Token::deg(i)]
    } else {
        vec![Token::deg(j), Token::conn(i - 1, a)]
    })
}

fn conn_conn(l: Token, r: Token) -> Option<Vec<Token>> {
    let (TokenKind::Conn(a), TokenKind::Conn(b)) = (l.kind, r.kind) else { return None };
    let (i, j) = (l.index, r.index);
    if i < j {
        Some(vec![Token::conn(j + 1, b), Token::conn(i, a)])
    } else if i == j && a == b {
        Some(vec![Token::conn(i + 1, a), Token::conn(i, a)])
    } else {
        None
    }
}

impl RuleSet {
    pub fn empty() -> Self {
        RuleSet::default()
    }

    /// The cubical relations oriented toward `up … up face … face`.
    pub fn default_rules() -> Self {
        RuleSet {
            rules: vec![
                Rule { name: "face-deg", apply: face_deg },
                Rule { name: "face-conn", apply: face_conn },
                Rule { name: "face-face", apply: face_face },
                Rule { name: "conn-deg", apply: conn_deg },
                Rule { name: "deg-deg", apply: deg_deg },
                Rule { name: "conn-conn", apply: conn_conn },
            ],
        }
    }

    /// The default rules with the face-face shift dropped (`j` in place of `j-1`); a known-bad fixture.
    pub fn misindexed_face_face() -> Self {
        let mut r = Self::default_rules();
        for rule in r.rules.iter_mut() {
            if rule.name == "face-face" {
                *rule = Rule { name: "face-face-misindexed", apply: face_face_misindexed };
            }
        }
        r
    }

    /// First rule applying to the window, with its replacement.
    pub fn rewrite(&self, l: Token, r: Token) -> Option<(&'static str, Vec<Token>)> {
        self.rules.iter().find_map(|rule| (rule.apply)(l, r).map(|v| (rule.name, v)))
    }

    /// All one-step rewrites of a word.
    pub fn successors(&self, w: &StructuralWord) -> Vec<(usize, &'static str, StructuralWord)> {
        let mut out = Vec::new();
        for p in 0..w.tokens.len().saturating_sub(1) {
            for rule in &self.rules {
                if let Some(rep) = (rule.apply)(w.tokens[p], w.tokens[p + 1]) {
                    let mut t = w.tokens[..p].to_vec();
                    t.extend(rep);
                    t.extend_from_slice(&w.tokens[p + 2..]);
                    out.push((p, rule.name, StructuralWord::new(t)));
                }
            }
        }
        out
    }
}

/// The cubical relations, oriented.
pub fn default_rules() -> RuleSet {
    RuleSet::default_rules()
}

/// Lexicographic termination measure of a word.
pub fn measure(w: &StructuralWord) -> (usize, usize, usize, usize, i64) {
    let t = &w.tokens;
    let mut face_up = 0;
    let mut conn_deg = 0;
    let (mut ups_right, mut degs_right) = (0, 0);
    for tok in t.iter().rev() {
        match tok.kind {
            TokenKind::Face(_) => face_up += ups_right,
            TokenKind::Deg => {
                ups_right += 1;
                degs_right += 1;
            }
            TokenKind::Conn(_) => {
                ups_right += 1;
                conn_deg += degs_right;
            }
        }
    }
    let conns = t.iter().filter(|x| matches!(x.kind, TokenKind::Conn(_))).count();
    let phi: i64 = t.iter().map(|x| if x.is_face() { x.index as i64 } else { -(x.index as i64) }).sum();
    (face_up, t.len(), conns, conn_deg, phi)
}

/// Whether no rule of `rules` applies anywhere in `w`.
pub fn is_normal(rules: &RuleSet, w: &StructuralWord) -> bool {
    w.tokens.windows(2).all(|p| rules.rewrite(p[0], p[1]).is_none())
}

/// Normal form under the default rules.
pub fn normalize(w: &StructuralWord, level: usize) -> Result<StructuralWord, CubicalError> {
    normalize_with(&RuleSet::default_rules(), w, level)
}

/// Leftmost-innermost rewriting to a normal form.
pub fn normalize_with(rules: &RuleSet, w: &StructuralWord, level: usize) -> Result<StructuralWord, CubicalError> {
    w.level_path(level)?;
    let mut cur = w.tokens.clone();
    let mut p = 0;
    while p + 1 < cur.len() {
        match rules.rewrite(cur[p], cur[p + 1]) {
            Some((_name, rep)) => {
                let before = measure(&StructuralWord::new(cur.clone()));
                cur.splice(p..p + 2, rep);
                debug_assert!(measure(&StructuralWord::new(cur.clone())) < before, "rule {_name} does not decrease the measure");
                p = p.saturating_sub(1);
            }
            None => p += 1,
        }
    }
    let out = StructuralWord::new(cur);
    out.level_path(level)?;
    Ok(out)
}

/// Applies a word to a level-`level` cell of `c`, rightmost token first.
pub fn eval_word(c: &ClassicalStructure, w: &StructuralWord, level: usize, a: CellId) -> Result<CellId, CubicalError> {
    let path = w.level_path(level)?;
    let n = c.dim();
    if let Some(&top) = path.iter().max().filter(|&&m| m > n) {
        return Err(CubicalError::Level(format!("word {w} reaches level {top} above the top level {n}")));
    }
    if a.index() >= c.level_size(level) {
        return Err(CubicalError::UnknownCell(format!("cell #{} at level {level}", a.0)));
    }
    let mut x = a.0;
    let mut m = level;
    for t in w.tokens.iter().rev() {
        x = match t.kind {
            TokenKind::Face(s) => c.pd(m, t.index, s, x),
            TokenKind::Deg => c.e(m + 1, t.index, x),
            TokenKind::Conn(s) => c.gm(m + 1, t.index, s, x),
        };
        m = t.apply_level(m).expect("path checked");
    }
    Ok(CellId(x))
}

/// Cube-map meaning of a word at a level: the output dimension and, for each output
/// vertex, the input vertex it reads. Vertices are bit vectors with direction `i` at bit `i-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeMap {
    pub out_dim: usize,
    pub vertices: Vec<u32>,
}

fn insert_bit(v: u32, i: usize, bit: bool) -> u32 {
    let low = v & ((1 << (i - 1)) - 1);
    let high = v >> (i - 1);
    low | ((bit as u32) << (i - 1)) | (high << i)
}

fn delete_bit(v: u32, i: usize) -> u32 {
    let low = v & ((1 << (i - 1)) - 1);
    let high = v >> i;
    low | (high << (i - 1))
}

/// Vertex map of one token read from its output cube to its input cube.
fn token_vertex(t: Token, v: u32) -> u32 {
    match t.kind {
        TokenKind::Face(a) => insert_bit(v, t.index, a == Plus),
        TokenKind::Deg => delete_bit(v, t.index),
        TokenKind::Conn(a) => {
            let (x, y) = ((v >> (t.index - 1)) & 1, (v >> t.index) & 1);
            let m = if a == Plus { x & y } else { x | y };
            let cleared = delete_bit(v, t.index + 1) & !(1 << (t.index - 1));
            cleared | (m << (t.index - 1))
        }
    }
}

/// The cube-map oracle; `None` for ill-leveled words.
pub fn cube_map(w: &StructuralWord, level: usize) -> Option<CubeMap> {
    let out_dim = *w.level_path(level).ok()?.last()?;
    let vertices = (0..1u32 << out_dim)
        .map(|v| w.tokens.iter().fold(v, |v, &t| token_vertex(t, v)))
        .collect();
    Some(CubeMap { out_dim, vertices })
}

/// Oracle equality of two words at a level.
pub fn words_equal_oracle(a: &StructuralWord, b: &StructuralWord, level: usize) -> bool {
    match (cube_map(a, level), cube_map(b, level)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

/// All well-leveled words at `level` with at most `max_len` tokens.
pub fn enumerate_words(max_len: usize, level: usize) -> Vec<StructuralWord> {
    let mut out = vec![StructuralWord::default()];
    // Words are grown on the left, from the current target level.
    let mut frontier = vec![(Vec::<Token>::new(), level)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, m) in &frontier {
            for t in tokens_at(*m) {
                let mut v = Vec::with_capacity(w.len() + 1);
                v.push(t);
                v.extend_from_slice(w);
                next.push((v, t.apply_level(*m).expect("generated in range")));
            }
        }
        out.extend(next.iter().map(|(w, _)| StructuralWord::new(w.clone())));
        frontier = next;
    }
    out
}

fn tokens_at(m: usize) -> Vec<Token> {
    let mut v = Vec::new();
    for i in 1..=m {
        v.push(Token::face(i, Minus));
        v.push(Token::face(i, Plus));
        v.push(Token::conn(i, Minus));
        v.push(Token::conn(i, Plus));
    }
    for i in 1..=m + 1 {
        v.push(Token::deg(i));
    }
    v
}

/// Bound on the rewrite graph explored from one start word.
const SEARCH_LIMIT: usize = 20_000;

struct WordOutcome {
    tally: Tally,
    normal_forms: BTreeSet<StructuralWord>,
    truncated: bool,
}

fn word_witness(level: usize, words: &[&StructuralWord]) -> Witness {
    let mut bindings = vec![("level".to_string(), level.to_string())];
    for (k, w) in words.iter().enumerate() {
        bindings.push((format!("w{k}"), w.to_string()));
    }
    Witness { bindings, cells: vec![] }
}

fn explore(rules: &RuleSet, start: &StructuralWord, level: usize) -> WordOutcome {
    let mut tally = Tally::new(Severity::TheoremViolation);
    let oracle = cube_map(start, level);
    let mut seen: HashSet<StructuralWord> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut normal_forms = BTreeSet::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    let mut truncated = false;
    while let Some(w) = queue.pop_front() {
        let succ = rules.successors(&w);
        if succ.is_empty() {
            normal_forms.insert(w);
            continue;
        }
        for (_, _, v) in succ {
            if seen.contains(&v) {
                continue;
            }
            let m = cube_map(&v, level);
            tally.holds("CONF.ill-leveled", m.is_some(), || word_witness(level, &[start, &w, &v]));
            if m.is_none() {
                continue;
            }
            tally.holds("CONF.unsound", m == oracle, || word_witness(level, &[start, &w, &v]));
            if seen.len() >= SEARCH_LIMIT {
                truncated = true;
                continue;
            }
            seen.insert(v.clone());
            queue.push_back(v);
        }
    }
    let nfs: Vec<&StructuralWord> = normal_forms.iter().collect();
    for k in 1..nfs.len() {
        let same = cube_map(nfs[0], level) == cube_map(nfs[k], level);
        let id = if same { "CONF.non-joinable" } else { "CONF.distinct-oracle" };
        tally.holds(id, false, || word_witness(level, &[start, nfs[0], nfs[k]]));
    }
    tally.holds("CONF.unique-normal-form", true, || word_witness(level, &[start]));
    WordOutcome { tally, normal_forms, truncated }
}

/// Explores every rewrite sequence from every word within bounds and reports
/// ill-leveled or unsound steps, words with several normal forms, and oracle-equal
/// words whose normal forms differ (recorded in the notes).
pub fn check_confluence(rules: &RuleSet, max_len: usize, max_level: usize) -> CheckReport {
    let mut total = Tally::new(Severity::TheoremViolation);
    let mut truncated = 0usize;
    let mut per_level = Vec::new();
    let mut incomplete = Vec::new();
    for level in 0..=max_level {
        let words = enumerate_words(max_len, level);
        let results: Vec<(StructuralWord, WordOutcome)> = words
            .into_par_iter()
            .map(|w| {
                let o = explore(rules, &w, level);
                (w, o)
            })
            .collect();
        let mut groups: BTreeMap<CubeMap, BTreeMap<StructuralWord, StructuralWord>> = BTreeMap::new();
        for (w, o) in results {
            truncated += o.truncated as usize;
            if o.normal_forms.len() == 1 {
                let nf = o.normal_forms.into_iter().next().expect("one normal form");
                if let Some(m) = cube_map(&w, level) {
                    groups.entry(m).or_default().entry(nf).or_insert(w);
                }
            }
            total = total.merge(o.tally);
        }
        let split: Vec<_> = groups.values().filter(|nfs| nfs.len() > 1).collect();
        if let Some(nfs) = split.first() {
            let ex: Vec<String> = nfs.iter().take(2).map(|(nf, w)| format!("{w} ~> {nf}")).collect();
            incomplete.push(format!(
                "level {level}: {} oracle classes reach several normal forms, e.g. {}",
                split.len(),
                ex.join(" vs ")
            ));
        }
        per_level.push(format!("level {level}: {} oracle classes", groups.len()));
    }
    let mut r = CheckReport::from_tally(total);
    r.notes = per_level;
    r.notes.extend(incomplete);
    if truncated > 0 {
        r.notes.push(format!("{truncated} searches stopped at {SEARCH_LIMIT} words"));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> StructuralWord {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("d1- e2 g1+").to_string(), "d1- e2 g1+");
        assert_eq!(w("").to_string(), "id");
        assert_eq!(w("id"), StructuralWord::default());
        assert!("d0+".parse::<StructuralWord>().is_err());
        assert!("e1+".parse::<StructuralWord>().is_err());
        assert!("x1".parse::<StructuralWord>().is_err());
    }

    #[test]
    fn leveling() {
        assert_eq!(w("d1- e2").level_path(2).unwrap(), vec![2, 3, 2]);
        assert!(w("d3+").level_path(2).is_err());
        assert!(w("g1+").level_path(0).is_err());
        assert!(w("e1").is_well_leveled(0));
        let e = normalize(&w("d2+ d1-"), 1).unwrap_err();
        assert!(e.to_string().contains("d2+"));
    }

    #[test]
    fn documented_rewrites() {
        assert_eq!(normalize(&w("d1+ e1"), 1).unwrap(), StructuralWord::default());
        assert_eq!(normalize(&w("d1- d2+"), 2).unwrap(), w("d1+ d1-"));
        assert_eq!(normalize(&w("e1 e1"), 0).unwrap(), w("e2 e1"));
        assert_eq!(normalize(&w("e2 e1"), 0).unwrap(), w("e2 e1"));
        assert_eq!(normalize(&w("d1- e2"), 2).unwrap(), w("e1 d1-"));
        assert_eq!(normalize(&w("d2+ g1+"), 1).unwrap(), StructuralWord::default());
        assert_eq!(normalize(&w("d1- g1+"), 1).unwrap(), w("e1 d1-"));
        assert_eq!(normalize(&StructuralWord::default(), 3).unwrap(), StructuralWord::default());
    }

    #[test]
    fn oracle_basics() {
        // ∂_1^+ ε_1 is the identity on 1-cubes.
        assert!(words_equal_oracle(&w("d1+ e1"), &w(""), 1));
        assert!(words_equal_oracle(&w("d2- g1-"), &w(""), 1));
        assert!(!words_equal_oracle(&w("d1+"), &w("d1-"), 1));
        assert!(words_equal_oracle(&w("g1+ e1"), &w("e1 e1"), 1));
    }

    #[test]
    fn rules_decrease_measure_and_are_sound() {
        let rules = default_rules();
        for level in 0..=3 {
            for word in enumerate_words(2, level) {
                for (_, name, next) in rules.successors(&word) {
                    assert!(measure(&next) < measure(&word), "{name}: {word} -> {next}");
                    assert!(words_equal_oracle(&word, &next, level), "{name}: {word} -> {next} at {level}");
                }
            }
        }
    }

    #[test]
    fn short_words_have_unique_normal_forms() {
        let r = check_confluence(&default_rules(), 2, 2);
        assert!(r.passed(), "{:?}", r.violations.first());
        assert!(r.notes.iter().all(|n| !n.contains("several")), "{:?}", r.notes);
    }

    #[test]
    fn empty_rules_are_trivially_confluent() {
        let r = check_confluence(&RuleSet::empty(), 2, 1);
        assert!(r.passed());
    }

    #[test]
    fn misindexed_face_rule_is_caught() {
        let r = check_confluence(&RuleSet::misindexed_face_face(), 2, 2);
        let v = r
            .violations
            .iter()
            .find(|v| v.axiom_id == "CONF.ill-leveled" || v.axiom_id == "CONF.unsound")
            .expect("a witness");
        assert!(v.bindings.iter().any(|(k, val)| k == "w0" && val.split_whitespace().count() == 2));
    }
}

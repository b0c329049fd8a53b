//! Independent reference implementations used by the integration tests.
//!
//! Nothing here calls into the parser's licensing, counting or scoring code.
//! The lexicon and tables are read from their text files directly, parse
//! sets are produced by brute force over bracketings, and probabilities are
//! recomputed from raw counts.

#![allow(dead_code)]

pub mod experiment;

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

pub fn read_data(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).unwrap()
}

// ---------------------------------------------------------------------------
// lexicon

#[derive(Debug, Clone, PartialEq)]
pub struct Role {
    pub label: String,
    pub external: bool,
    pub selects: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reading {
    pub cat: String,
    pub spec_plus: bool,
    pub grid_text: String,
    pub roles: Vec<Role>,
    pub count: Option<u64>,
}

impl Reading {
    pub fn internal(&self) -> Vec<&Role> {
        self.roles.iter().filter(|r| !r.external).collect()
    }

    pub fn external(&self) -> Option<&Role> {
        self.roles.iter().find(|r| r.external)
    }

    pub fn identity(&self) -> String {
        let cats: Vec<&str> = self.internal().iter().map(|r| r.selects.as_str()).collect();
        format!("<{}>", cats.join(","))
    }
}

pub type OracleLexicon = BTreeMap<String, Vec<Reading>>;

pub fn oracle_lexicon(text: &str) -> OracleLexicon {
    let mut lex = OracleLexicon::new();
    for line in text.lines() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        let roles: Vec<Role> = if f[3] == "-" {
            Vec::new()
        } else {
            f[3].split(';')
                .map(|r| {
                    let (label, rest) = r.split_once('/').unwrap();
                    let (pos, cat) = rest.split_once(':').unwrap();
                    Role {
                        label: label.to_string(),
                        external: pos == "ext",
                        selects: cat.to_string(),
                    }
                })
                .collect()
        };
        lex.entry(f[0].to_string()).or_default().push(Reading {
            cat: f[1].to_string(),
            spec_plus: f[2] == "+",
            grid_text: f[3].to_string(),
            roles,
            count: f.get(4).map(|c| c.parse().unwrap()),
        });
    }
    lex
}

// ---------------------------------------------------------------------------
// brute-force parse enumeration

#[derive(Debug, Clone)]
struct ONode {
    cat: String,
    spec_plus: bool,
    comp_plus: bool,
    /// Index of the head token and the reading chosen for it.
    head: usize,
    reading: Reading,
    /// Internal roles already consumed.
    used_internal: usize,
    ext_pending: bool,
    role: Option<String>,
    /// `(string, grid)` with grids, and without.
    canonical: String,
    plain: String,
    /// Theta events `(licenser token, role label)`.
    events: Vec<(usize, String)>,
    /// Non-head N daughters: (has role, case count).
    noun_daughters: Vec<(bool, usize)>,
    schemata: Vec<u8>,
    leaves: Vec<(String, Reading)>,
}

fn sym(plus: bool) -> char {
    if plus {
        '+'
    } else {
        '-'
    }
}

impl ONode {
    fn maximal(&self) -> bool {
        !self.spec_plus && !self.comp_plus
    }

    fn label(&self) -> String {
        format!("{}:{}:{}", self.cat, sym(self.spec_plus), sym(self.comp_plus))
    }
}

fn leaf(word: &str, pos: usize, r: &Reading) -> ONode {
    let label = format!(
        "{}:{}:{}",
        r.cat,
        sym(r.spec_plus),
        sym(!r.internal().is_empty())
    );
    ONode {
        cat: r.cat.clone(),
        spec_plus: r.spec_plus,
        comp_plus: !r.internal().is_empty(),
        head: pos,
        reading: r.clone(),
        used_internal: 0,
        ext_pending: r.external().is_some(),
        role: None,
        canonical: format!("({} ={}{{{}}})", label, word, r.grid_text),
        plain: format!("({} ={})", label, word),
        events: Vec::new(),
        noun_daughters: Vec::new(),
        schemata: Vec::new(),
        leaves: vec![(word.to_string(), r.clone())],
    }
}

/// Tries to license `l r` under schema `s`, returning the mother.
fn license(s: u8, l: &ONode, r: &ONode) -> Option<ONode> {
    if l.cat == r.cat {
        return None;
    }
    let (mut head, mut other) = if s == 1 || s == 5 {
        (r.clone(), l.clone())
    } else {
        (l.clone(), r.clone())
    };
    let (spec, comp) = match s {
        1 => {
            if !other.maximal() || !head.spec_plus || head.comp_plus {
                return None;
            }
            if head.ext_pending {
                let ext = head.reading.external().unwrap().clone();
                if other.role.is_some() || ext.selects != other.cat {
                    return None;
                }
                other.role = Some(ext.label.clone());
                head.ext_pending = false;
                head.events.push((head.head, ext.label));
            }
            (false, false)
        }
        2 | 3 => {
            let internal: Vec<Role> = head.reading.internal().into_iter().cloned().collect();
            let remaining = internal.len() - head.used_internal;
            if !head.comp_plus || !other.maximal() || other.role.is_some() {
                return None;
            }
            if (s == 2 && remaining < 2) || (s == 3 && remaining != 1) {
                return None;
            }
            let next = &internal[head.used_internal];
            if next.selects != other.cat {
                return None;
            }
            other.role = Some(next.label.clone());
            head.used_internal += 1;
            head.events.push((head.head, next.label.clone()));
            (head.spec_plus, s == 2)
        }
        4 => {
            if head.comp_plus || !other.maximal() {
                return None;
            }
            (head.spec_plus, false)
        }
        5 => {
            if head.comp_plus || !other.maximal() {
                return None;
            }
            (head.spec_plus, false)
        }
        _ => unreachable!(),
    };

    let case = if other.cat == "N" && other.maximal() {
        let by_complement = (s == 2 || s == 3) && ["V", "I", "P"].contains(&head.cat.as_str());
        let nominative = s == 1 && head.cat == "I";
        usize::from(by_complement || nominative)
    } else {
        0
    };

    let (hm, om) = ("^", if s == 2 || s == 3 { "+" } else { "" });
    let (lm, rm) = if s == 1 || s == 5 { (om, hm) } else { (hm, om) };
    let (lnode, rnode) = if s == 1 || s == 5 {
        (&other, &head)
    } else {
        (&head, &other)
    };
    let mut m = head.clone();
    m.spec_plus = spec;
    m.comp_plus = comp;
    m.role = None;
    let label = m.label();
    m.canonical = format!("({} {}{} {}{})", label, lm, lnode.canonical, rm, rnode.canonical);
    m.plain = format!("({} {}{} {}{})", label, lm, lnode.plain, rm, rnode.plain);
    m.events = [head.events.clone(), other.events.clone()].concat();
    m.noun_daughters = [head.noun_daughters.clone(), other.noun_daughters.clone()].concat();
    if other.cat == "N" {
        m.noun_daughters.push((other.role.is_some(), case));
    }
    m.schemata = [lnode.schemata.clone(), vec![s], rnode.schemata.clone()].concat();
    m.leaves = [lnode.leaves.clone(), rnode.leaves.clone()].concat();
    Some(m)
}

fn analyses(
    tokens: &[&str],
    lex: &OracleLexicon,
    start: usize,
    end: usize,
    memo: &mut BTreeMap<(usize, usize), Vec<ONode>>,
) -> Vec<ONode> {
    if let Some(v) = memo.get(&(start, end)) {
        return v.clone();
    }
    let mut out = Vec::new();
    if end - start == 1 {
        for r in &lex[tokens[start]] {
            out.push(leaf(tokens[start], start, r));
        }
    } else {
        // every bracketing: every split point, every pair of sub-analyses,
        // every schema label
        for split in start + 1..end {
            let ls = analyses(tokens, lex, start, split, memo);
            let rs = analyses(tokens, lex, split, end, memo);
            for l in &ls {
                for r in &rs {
                    for s in 1..=5 {
                        if let Some(m) = license(s, l, r) {
                            out.push(m);
                        }
                    }
                }
            }
        }
    }
    memo.insert((start, end), out.clone());
    out
}

/// A complete analysis found by brute force.
#[derive(Debug, Clone)]
pub struct OracleParse {
    pub canonical: String,
    pub bracketed: String,
    pub schemata: Vec<u8>,
    /// `(word, grid identity)` for every token.
    pub leaves: Vec<(String, String)>,
    pub leaf_readings: Vec<(String, Reading)>,
}

fn complete(node: &ONode, case_filter: bool) -> bool {
    if !node.maximal() {
        return false;
    }
    // every leaf's grid fully discharged, each role exactly once
    let mut given: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (who, role) in &node.events {
        given.entry(*who).or_default().push(role.clone());
    }
    for (i, (_, r)) in node.leaves.iter().enumerate() {
        let mut want: Vec<String> = r.roles.iter().map(|x| x.label.clone()).collect();
        let mut got = given.remove(&i).unwrap_or_default();
        want.sort();
        got.sort();
        if want != got {
            return false;
        }
    }
    if node.noun_daughters.iter().any(|(role, _)| !role) {
        return false;
    }
    if case_filter && node.noun_daughters.iter().any(|&(role, case)| role && case != 1) {
        return false;
    }
    true
}

/// Every complete analysis of `tokens`, keyed by canonical string.
pub fn oracle_parses(
    tokens: &[&str],
    lex: &OracleLexicon,
    case_filter: bool,
) -> BTreeMap<String, OracleParse> {
    let mut memo = BTreeMap::new();
    analyses(tokens, lex, 0, tokens.len(), &mut memo)
        .into_iter()
        .filter(|n| complete(n, case_filter))
        .map(|n| {
            (
                n.canonical.clone(),
                OracleParse {
                    canonical: n.canonical.clone(),
                    bracketed: n.plain.clone(),
                    schemata: n.schemata.clone(),
                    leaves: n
                        .leaves
                        .iter()
                        .map(|(w, r)| (w.clone(), r.identity()))
                        .collect(),
                    leaf_readings: n.leaves.clone(),
                },
            )
        })
        .collect()
}

// ---------------------------------------------------------------------------
// counting from the corpus

#[derive(Debug)]
enum Tree {
    Leaf {
        label: String,
        word: String,
    },
    Node {
        label: String,
        kids: Vec<(String, Tree)>,
    },
}

fn parse_tree(tokens: &[String], pos: &mut usize) -> Tree {
    assert_eq!(tokens[*pos], "(");
    *pos += 1;
    let label = tokens[*pos].clone();
    *pos += 1;
    if let Some(word) = tokens[*pos].strip_prefix('=') {
        let word = word.to_string();
        *pos += 2;
        return Tree::Leaf { label, word };
    }
    let mut kids = Vec::new();
    while tokens[*pos] != ")" {
        let mark = if tokens[*pos] == "^" || tokens[*pos] == "+" {
            *pos += 1;
            tokens[*pos - 1].clone()
        } else {
            String::new()
        };
        kids.push((mark, parse_tree(tokens, pos)));
    }
    *pos += 1;
    Tree::Node { label, kids }
}

fn corpus_trees(text: &str) -> Vec<Tree> {
    let mut toks = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap();
        let mut cur = String::new();
        for c in line.chars() {
            if c == '(' || c == ')' || c == '^' && cur.is_empty() || c == '+' && cur.is_empty() {
                if !cur.is_empty() {
                    toks.push(std::mem::take(&mut cur));
                }
                toks.push(c.to_string());
            } else if c.is_whitespace() {
                if !cur.is_empty() {
                    toks.push(std::mem::take(&mut cur));
                }
            } else {
                cur.push(c);
            }
        }
        if !cur.is_empty() {
            toks.push(cur);
        }
    }
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < toks.len() {
        out.push(parse_tree(&toks, &mut pos));
    }
    out
}

fn label_parts(l: &str) -> (String, bool, bool) {
    let p: Vec<&str> = l.split(':').collect();
    (p[0].to_string(), p[1] == "+", p[2] == "+")
}

/// Returns the head word's category, word, and complement categories of the
/// chain rooted here, counting schemata and recording verbal chains.
fn count_tree(
    t: &Tree,
    schema: &mut [u64; 6],
    chains: &mut Vec<(String, String)>,
) -> (String, String, Vec<String>) {
    match t {
        Tree::Leaf { label, word } => (label_parts(label).0, word.clone(), Vec::new()),
        Tree::Node { label, kids } => {
            let (_, m_spec, m_comp) = label_parts(label);
            let head_left = kids[0].0 == "^";
            let (h, o) = if head_left {
                (&kids[0], &kids[1])
            } else {
                (&kids[1], &kids[0])
            };
            let id = if head_left {
                if o.0 == "+" {
                    if m_comp {
                        2
                    } else {
                        3
                    }
                } else {
                    4
                }
            } else {
                let (_, h_spec, _) = match &h.1 {
                    Tree::Leaf { label, .. } | Tree::Node { label, .. } => label_parts(label),
                };
                if h_spec && !m_spec {
                    1
                } else {
                    5
                }
            };
            schema[id] += 1;
            let (hc, hw, mut comps) = count_tree(&h.1, schema, chains);
            let (oc, ow, ocomps) = count_tree(&o.1, schema, chains);
            if oc == "V" || oc == "I" {
                chains.push((ow, format!("<{}>", ocomps.join(","))));
            }
            if o.0 == "+" {
                comps.push(oc);
            }
            (hc, hw, comps)
        }
    }
}

/// Schema counts (index 1..=5) and verbal theta observations of a corpus.
pub fn count_corpus(text: &str) -> ([u64; 6], Vec<(String, String)>) {
    let mut schema = [0u64; 6];
    let mut chains = Vec::new();
    for t in corpus_trees(text) {
        let (c, w, comps) = count_tree(&t, &mut schema, &mut chains);
        if c == "V" || c == "I" {
            chains.push((w, format!("<{}>", comps.join(","))));
        }
    }
    (schema, chains)
}

// ---------------------------------------------------------------------------
// tables and scoring

#[derive(Debug, Clone, Default)]
pub struct OracleTables {
    pub mother: bool,
    pub default: f64,
    pub schema: [u64; 6],
    pub theta: BTreeMap<String, BTreeMap<String, u64>>,
}

impl OracleTables {
    pub fn from_file(text: &str) -> Self {
        let mut t = OracleTables::default();
        for line in text.lines().skip(1) {
            let f: Vec<&str> = line.split_whitespace().collect();
            match f[0] {
                "mode" => t.mother = f[1] == "mother",
                "default" => t.default = f[1].parse().unwrap(),
                "schema" => t.schema[f[1].parse::<usize>().unwrap()] = f[2].parse().unwrap(),
                "theta" => {
                    t.theta
                        .entry(f[1].to_string())
                        .or_default()
                        .insert(f[2].to_string(), f[3].parse().unwrap());
                }
                _ => panic!("unexpected table line {}", line),
            }
        }
        t
    }

    /// Counts from corpus text plus lexicon counts, in flat mode.
    pub fn from_corpus(corpus: &str, lexicon: &str, default: f64) -> Self {
        let (schema, chains) = count_corpus(corpus);
        let mut theta: BTreeMap<String, BTreeMap<String, u64>> = BTreeMap::new();
        for (w, g) in chains {
            *theta.entry(w).or_default().entry(g).or_default() += 1;
        }
        for (w, readings) in oracle_lexicon(lexicon) {
            for r in readings.into_iter().filter(|r| r.cat == "V" || r.cat == "I") {
                if let Some(c) = r.count {
                    *theta.entry(w.clone()).or_default().entry(r.identity()).or_default() += c;
                }
            }
        }
        OracleTables {
            mother: false,
            default,
            schema,
            theta,
        }
    }

    pub fn schema_probability(&self, s: u8) -> f64 {
        let class: Vec<usize> = if !self.mother {
            vec![1, 2, 3, 4, 5]
        } else {
            match s {
                1 => vec![1],
                2 => vec![2],
                _ => vec![3, 4, 5],
            }
        };
        let total: u64 = class.iter().map(|&c| self.schema[c]).sum();
        self.schema[s as usize] as f64 / total as f64
    }

    pub fn grid_probability(&self, word: &str, identity: &str) -> f64 {
        match self.theta.get(word) {
            None => self.default,
            Some(g) => {
                let total: u64 = g.values().sum();
                g.get(identity).copied().unwrap_or(0) as f64 / total as f64
            }
        }
    }

    /// `(xbar, theta)` in log space.
    pub fn log_score(&self, p: &OracleParse) -> (f64, f64) {
        let mut per: BTreeMap<u8, u64> = BTreeMap::new();
        for &s in &p.schemata {
            *per.entry(s).or_default() += 1;
        }
        let x = per
            .iter()
            .map(|(&s, &n)| n as f64 * self.schema_probability(s).ln())
            .sum();
        let t = p
            .leaf_readings
            .iter()
            .filter(|(_, r)| r.cat == "V" || r.cat == "I")
            .map(|(w, r)| self.grid_probability(w, &r.identity()).ln())
            .sum();
        (x, t)
    }
}

/// Oracle ranking: descending score, near-equal scores ordered canonically.
pub fn oracle_rank<'a>(tables: &OracleTables, parses: &'a BTreeMap<String, OracleParse>) -> Vec<&'a OracleParse> {
    let mut v: Vec<(&OracleParse, f64)> = parses
        .values()
        .map(|p| {
            let (x, t) = tables.log_score(p);
            (p, x + t)
        })
        .collect();
    v.sort_by(|a, b| {
        if (a.1 - b.1).abs() < 1e-12 {
            a.0.canonical.cmp(&b.0.canonical)
        } else {
            b.1.partial_cmp(&a.1).unwrap()
        }
    });
    v.into_iter().map(|(p, _)| p).collect()
}

/// True when the finite verb of the analysis selected a grid with a P
/// complement.
pub fn verb_takes_pp(readings: &[(String, Reading)]) -> bool {
    readings
        .iter()
        .filter(|(_, r)| r.cat == "I")
        .any(|(_, r)| r.internal().iter().any(|x| x.selects == "P"))
}

/// Sentences of at most seven tokens covering every construction in the
/// fixture lexicon, including ones the Case filter rejects.
pub const SHORT_SENTENCES: &[&str] = &[
    "john slept",
    "the dog barked",
    "mary saw the saw",
    "the dog barked quickly",
    "mary saw the big dog",
    "mary said that john slept",
    "john slept in the park",
    "john gave the letter to mary",
    "a man proud of mary slept",
    "john saw a man proud mary",
    "john saw the picture of mary",
    "john hit mary with the hammer",
    "john put the book on the shelf",
    "the old dog slept in the park",
];

pub fn distinct<T: Ord + Clone>(v: &[T]) -> BTreeSet<T> {
    v.iter().cloned().collect()
}

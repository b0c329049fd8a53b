//! Bracketed training corpus, count extraction, and the lexicon and table
//! text formats.
//!
//! Corpus grammar (one tree per top-level expression, `#` starts a comment):
//!
//! ```text
//! tree     := mark? "(" LABEL ( "=" WORD | tree tree ) ")"
//! mark     := "^"  head daughter
//!           | "+"  complement daughter
//! LABEL    := CATEGORY ":" SPEC ":" COMP        e.g. N:+:-
//! ```
//!
//! Unmarked daughters are specifiers or adjuncts.

mod lexicon;
mod tables;

use std::collections::BTreeMap;
use std::fmt;

pub use lexicon::{read_lexicon, write_lexicon};
pub use tables::{format_probability, read_tables, write_tables, TABLES_HEADER};

use crate::error::{Error, Result};
use crate::model::{Category, Feature, GridIdentity, Lexicon};
use crate::theta::ThetaTable;
use crate::xbar::{self, EstimationMode, SchemaCounts, SchemaId, SchemaTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeLabel {
    pub category: Category,
    pub spec: Feature,
    pub comp: Feature,
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.category, self.spec, self.comp)
    }
}

impl std::str::FromStr for NodeLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("malformed node label '{}'", s));
        }
        let feature = |p: &str| {
            Feature::from_symbol(p).ok_or_else(|| format!("feature mark '{}' is not + or -", p))
        };
        Ok(NodeLabel {
            category: parts[0].parse()?,
            spec: feature(parts[1])?,
            comp: feature(parts[2])?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DaughterMark {
    Head,
    Complement,
    Plain,
}

impl DaughterMark {
    pub fn prefix(self) -> &'static str {
        match self {
            DaughterMark::Head => "^",
            DaughterMark::Complement => "+",
            DaughterMark::Plain => "",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CorpusNode {
    Leaf {
        label: NodeLabel,
        word: String,
    },
    Node {
        label: NodeLabel,
        left: (DaughterMark, Box<CorpusNode>),
        right: (DaughterMark, Box<CorpusNode>),
    },
}

impl CorpusNode {
    pub fn label(&self) -> NodeLabel {
        match self {
            CorpusNode::Leaf { label, .. } | CorpusNode::Node { label, .. } => *label,
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            CorpusNode::Leaf { .. } => 1,
            CorpusNode::Node { left, right, .. } => left.1.leaf_count() + right.1.leaf_count(),
        }
    }

    pub fn words(&self) -> Vec<(&str, Category)> {
        match self {
            CorpusNode::Leaf { label, word } => vec![(word.as_str(), label.category)],
            CorpusNode::Node { left, right, .. } => {
                let mut w = left.1.words();
                w.extend(right.1.words());
                w
            }
        }
    }

    /// Parses a single bracketed tree, e.g. a gold bracketing.
    pub fn parse(text: &str) -> Result<CorpusNode> {
        let trees = read_corpus(text)?;
        match trees.len() {
            1 => Ok(trees.into_iter().next().unwrap().root),
            k => Err(Error::load(1, format!("expected one tree, found {}", k))),
        }
    }
}

impl fmt::Display for CorpusNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusNode::Leaf { label, word } => write!(f, "({} ={})", label, word),
            CorpusNode::Node { label, left, right } => write!(
                f,
                "({} {}{} {}{})",
                label,
                left.0.prefix(),
                left.1,
                right.0.prefix(),
                right.1
            ),
        }
    }
}

/// A corpus tree with the line its opening bracket appears on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusTree {
    pub line: usize,
    pub root: CorpusNode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Atom(String),
}

fn tokenize(text: &str) -> Vec<(Tok, usize)> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = line.split('#').next().unwrap_or("");
        let mut atom = String::new();
        let flush = |atom: &mut String, out: &mut Vec<(Tok, usize)>| {
            if !atom.is_empty() {
                out.push((Tok::Atom(std::mem::take(atom)), line_no));
            }
        };
        for ch in line.chars() {
            match ch {
                '(' => {
                    flush(&mut atom, &mut out);
                    out.push((Tok::Open, line_no));
                }
                ')' => {
                    flush(&mut atom, &mut out);
                    out.push((Tok::Close, line_no));
                }
                c if c.is_whitespace() => flush(&mut atom, &mut out),
                c => atom.push(c),
            }
        }
        flush(&mut atom, &mut out);
    }
    out
}

struct Reader {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    last_line: usize,
}

impl Reader {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn line(&self) -> usize {
        self.toks.get(self.pos).map_or(self.last_line, |(_, l)| *l)
    }

    fn next(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    /// `( LABEL ...)` with the opening bracket already current.
    fn node(&mut self) -> Result<CorpusNode> {
        let line = self.line();
        match self.next() {
            Some((Tok::Open, _)) => {}
            _ => return Err(Error::load(line, "expected '('")),
        }
        let label = match self.next() {
            Some((Tok::Atom(a), l)) => a.parse::<NodeLabel>().map_err(|e| Error::load(l, e))?,
            _ => return Err(Error::load(line, "expected a node label after '('")),
        };
        let mut word: Option<String> = None;
        let mut children: Vec<(DaughterMark, CorpusNode)> = Vec::new();
        loop {
            let l = self.line();
            match self.peek().cloned() {
                None => return Err(Error::load(l, "unbalanced brackets: missing ')'")),
                Some(Tok::Close) => {
                    self.pos += 1;
                    break;
                }
                Some(Tok::Open) => children.push((DaughterMark::Plain, self.node()?)),
                Some(Tok::Atom(a)) => {
                    if let Some(w) = a.strip_prefix('=') {
                        if w.is_empty() || word.is_some() {
                            return Err(Error::load(l, format!("unexpected '{}'", a)));
                        }
                        word = Some(w.to_string());
                        self.pos += 1;
                    } else if a == "^" || a == "+" {
                        self.pos += 1;
                        if self.peek() != Some(&Tok::Open) {
                            return Err(Error::load(l, format!("mark '{}' must precede '('", a)));
                        }
                        let mark = if a == "^" {
                            DaughterMark::Head
                        } else {
                            DaughterMark::Complement
                        };
                        children.push((mark, self.node()?));
                    } else {
                        return Err(Error::load(l, format!("unexpected token '{}'", a)));
                    }
                }
            }
        }
        match (word, children.len()) {
            (Some(word), 0) => Ok(CorpusNode::Leaf { label, word }),
            (Some(_), _) => Err(Error::load(line, "a leaf cannot have daughters")),
            (None, 2) => {
                let heads = children
                    .iter()
                    .filter(|(m, _)| *m == DaughterMark::Head)
                    .count();
                if heads == 0 {
                    return Err(Error::load(line, format!("({} ...) has no head daughter", label)));
                }
                if heads > 1 {
                    return Err(Error::load(
                        line,
                        format!("({} ...) has more than one head daughter", label),
                    ));
                }
                let head = children
                    .iter()
                    .find(|(m, _)| *m == DaughterMark::Head)
                    .unwrap();
                if head.1.label().category != label.category {
                    return Err(Error::load(
                        line,
                        format!(
                            "head daughter {} does not share the category of ({} ...)",
                            head.1.label(),
                            label
                        ),
                    ));
                }
                let mut it = children.into_iter();
                let (lm, l) = it.next().unwrap();
                let (rm, r) = it.next().unwrap();
                Ok(CorpusNode::Node {
                    label,
                    left: (lm, Box::new(l)),
                    right: (rm, Box::new(r)),
                })
            }
            (None, k) => Err(Error::load(
                line,
                format!("({} ...) needs exactly 2 daughters, found {}", label, k),
            )),
        }
    }
}

pub fn read_corpus(text: &str) -> Result<Vec<CorpusTree>> {
    let toks = tokenize(text);
    let last_line = text.lines().count().max(1);
    let mut r = Reader {
        toks,
        pos: 0,
        last_line,
    };
    let mut trees = Vec::new();
    while r.peek().is_some() {
        let line = r.line();
        if r.peek() != Some(&Tok::Open) {
            return Err(Error::load(line, "expected '(' at the start of a tree"));
        }
        trees.push(CorpusTree {
            line,
            root: r.node()?,
        });
    }
    if trees.is_empty() {
        return Err(Error::load(1, "empty corpus document"));
    }
    Ok(trees)
}

pub fn write_corpus(trees: &[CorpusTree]) -> String {
    trees.iter().map(|t| format!("{}\n", t.root)).collect()
}

/// Counts read off a corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountBundle {
    pub schema_counts: SchemaCounts,
    /// `(head word, grid identity)` for every verbal leaf.
    pub theta_observations: Vec<(String, GridIdentity)>,
    pub tree_count: usize,
}

/// The schema of an annotated local tree: the unique schema fitting its
/// features whose head side and complement marking agree with the marks.
pub fn classify_node(
    label: NodeLabel,
    left: (DaughterMark, NodeLabel),
    right: (DaughterMark, NodeLabel),
) -> Option<SchemaId> {
    let candidates: Vec<SchemaId> = xbar::matching_schemata(label, left.1, right.1)
        .into_iter()
        .filter(|s| {
            let (head, other) = match s.head_side() {
                crate::model::HeadSide::Left => (left.0, right.0),
                crate::model::HeadSide::Right => (right.0, left.0),
            };
            head == DaughterMark::Head
                && (other == DaughterMark::Complement) == s.is_complement()
        })
        .collect();
    match candidates.as_slice() {
        [only] => Some(*only),
        _ => None,
    }
}

/// Walks one projection chain; returns the head leaf and the categories of
/// complements attached along it, nearest first.
fn walk(
    node: &CorpusNode,
    line: usize,
    bundle: &mut CountBundle,
) -> Result<(String, Category, Vec<Category>)> {
    match node {
        CorpusNode::Leaf { label, word } => Ok((word.clone(), label.category, Vec::new())),
        CorpusNode::Node { label, left, right } => {
            let schema = classify_node(*label, (left.0, left.1.label()), (right.0, right.1.label()))
                .ok_or_else(|| Error::Unclassifiable {
                    line,
                    branch: format!(
                        "({} {}{} {}{})",
                        label,
                        left.0.prefix(),
                        left.1.label(),
                        right.0.prefix(),
                        right.1.label()
                    ),
                })?;
            bundle.schema_counts.add(schema, 1);
            let (head, other) = if left.0 == DaughterMark::Head {
                (&left.1, &right.1)
            } else {
                (&right.1, &left.1)
            };
            let mut chain = walk(head, line, bundle)?;
            let finished = walk(other, line, bundle)?;
            record(finished, bundle);
            if schema.is_complement() {
                chain.2.push(other.label().category);
            }
            Ok(chain)
        }
    }
}

fn record((word, category, comps): (String, Category, Vec<Category>), bundle: &mut CountBundle) {
    if category.is_verbal() {
        bundle
            .theta_observations
            .push((word, GridIdentity(comps)));
    }
}

pub fn extract_counts(trees: &[CorpusTree]) -> Result<CountBundle> {
    if trees.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut bundle = CountBundle {
        schema_counts: SchemaCounts::new(),
        theta_observations: Vec::new(),
        tree_count: trees.len(),
    };
    for tree in trees {
        let chain = walk(&tree.root, tree.line, &mut bundle)?;
        record(chain, &mut bundle);
    }
    Ok(bundle)
}

/// Everything `train` produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Training {
    pub counts: CountBundle,
    pub schema_table: SchemaTable,
    pub theta_table: ThetaTable,
}

/// Corpus and lexicon to probability tables. Theta counts pool the corpus
/// observations with the counts listed on verbal lexicon entries. Every corpus leaf and
/// every observed grid must be in the lexicon.
pub fn train(
    trees: &[CorpusTree],
    lexicon: &Lexicon,
    mode: EstimationMode,
    default_probability: f64,
) -> Result<Training> {
    for tree in trees {
        for (word, cat) in tree.root.words() {
            if lexicon.entry(word, cat).is_none() {
                return Err(Error::load(
                    tree.line,
                    format!("'{}' ({}) is not in the lexicon", word, cat),
                ));
            }
        }
    }
    let counts = extract_counts(trees)?;
    let mut theta_counts: BTreeMap<(String, GridIdentity), u64> = BTreeMap::new();
    for (word, grid) in &counts.theta_observations {
        let known = lexicon
            .lookup(word)
            .into_iter()
            .flatten()
            .filter(|e| e.category.is_verbal())
            .any(|e| e.grids().iter().any(|g| &g.identity() == grid));
        if !known {
            let line = trees
                .iter()
                .find(|t| t.root.words().iter().any(|(w, _)| w == word))
                .map_or(1, |t| t.line);
            return Err(Error::load(
                line,
                format!("grid {} of '{}' is not in the lexicon", grid, word),
            ));
        }
        *theta_counts.entry((word.clone(), grid.clone())).or_default() += 1;
    }
    for entry in lexicon.entries().filter(|e| e.category.is_verbal()) {
        for g in entry.grids() {
            if let Some(c) = g.count {
                *theta_counts
                    .entry((entry.word.clone(), g.identity()))
                    .or_default() += c;
            }
        }
    }
    let schema_table = SchemaTable::estimate(mode, counts.schema_counts)?;
    let theta_table = ThetaTable::from_counts(&theta_counts, default_probability)?;
    Ok(Training {
        counts,
        schema_table,
        theta_table,
    })
}

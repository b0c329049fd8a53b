//! Exhaustive structure proposer.
//!
//! A bottom-up chart over spans: every pair of adjacent items is offered to
//! the X-bar schemata, and every licensed mother is kept with a back-pointer
//! to the branch that built it. Complete phrase markers are read off the
//! full-span cell and filtered by the theta criterion and, optionally, the
//! Case filter.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use indexmap::IndexMap;

use crate::case;
use crate::error::{Error, Result};
use crate::model::{
    leaf_node_at, Category, Derivation, Lexicon, PhraseMarker, ProperBranch, Span, SyntacticNode,
};
use crate::theta;
use crate::xbar::match_schemata;

pub const DEFAULT_MAX_MARKERS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    pub case_filter: bool,
    /// Reported as an error when exceeded, never truncated.
    pub max_markers: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            case_filter: true,
            max_markers: DEFAULT_MAX_MARKERS,
        }
    }
}

#[derive(Debug, Clone)]
enum Backpointer {
    Leaf,
    Branch {
        split: usize,
        left: usize,
        right: usize,
        branch: ProperBranch,
    },
}

type Cell = IndexMap<SyntacticNode, Vec<Backpointer>>;

#[derive(Debug)]
pub struct ParseForest {
    tokens: Vec<String>,
    cells: Vec<Cell>,
    completed: Vec<PhraseMarker>,
}

impl ParseForest {
    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    /// Distinct nodes built over `span`.
    pub fn items(&self, span: Span) -> impl Iterator<Item = &SyntacticNode> + '_ {
        self.cells[cell_index(self.tokens.len(), span)].keys()
    }

    pub fn item_count(&self) -> usize {
        self.cells.iter().map(IndexMap::len).sum()
    }

    /// Completed markers in canonical order.
    pub fn completed(&self) -> &[PhraseMarker] {
        &self.completed
    }
}

fn cell_index(n: usize, span: Span) -> usize {
    span.start * (n + 1) + span.end
}

/// A daughter that will never project again must have nothing left to
/// discharge, and a noun phrase in that position must bear a role.
fn attachable(non_head: &SyntacticNode) -> bool {
    non_head.is_saturated()
        && (non_head.category != Category::N || non_head.assigned_role.is_some())
}

pub fn parse<S: AsRef<str>>(
    tokens: &[S],
    lexicon: &Lexicon,
    options: &ParseOptions,
) -> Result<ParseForest> {
    if tokens.is_empty() {
        return Err(Error::EmptyInput);
    }
    let tokens: Vec<String> = tokens.iter().map(|t| t.as_ref().to_string()).collect();
    let n = tokens.len();
    let mut cells: Vec<Cell> = vec![Cell::new(); (n + 1) * (n + 1)];

    for (i, tok) in tokens.iter().enumerate() {
        let entries = lexicon
            .lookup(tok)
            .filter(|e| !e.is_empty())
            .ok_or_else(|| Error::OutOfVocabulary(tok.clone()))?;
        let cell = &mut cells[cell_index(n, Span::new(i, i + 1))];
        for entry in entries {
            for g in 0..entry.grids().len() {
                let leaf = leaf_node_at(entry, g, i)?;
                cell.entry(leaf).or_default().push(Backpointer::Leaf);
            }
        }
    }

    for len in 2..=n {
        for start in 0..=n - len {
            let end = start + len;
            let mut cell = Cell::new();
            for split in start + 1..end {
                let lc = &cells[cell_index(n, Span::new(start, split))];
                let rc = &cells[cell_index(n, Span::new(split, end))];
                for (li, left) in lc.keys().enumerate() {
                    for (ri, right) in rc.keys().enumerate() {
                        for lic in match_schemata(left, right)? {
                            let (l, r) = (lic.left, lic.right);
                            let mut branch = ProperBranch::new(
                                lic.mother,
                                l,
                                r,
                                lic.schema,
                                lic.theta_event,
                                None,
                            )?;
                            if !attachable(branch.non_head()) {
                                continue;
                            }
                            if let Some(c) = case::assign_case(&branch) {
                                match branch.head_side() {
                                    crate::model::HeadSide::Left => {
                                        branch.right = branch.right.with_case(c.value)
                                    }
                                    crate::model::HeadSide::Right => {
                                        branch.left = branch.left.with_case(c.value)
                                    }
                                }
                                branch.case_event = Some(c);
                            }
                            cell.entry(branch.mother.clone())
                                .or_default()
                                .push(Backpointer::Branch {
                                    split,
                                    left: li,
                                    right: ri,
                                    branch,
                                });
                        }
                    }
                }
            }
            cells[cell_index(n, Span::new(start, end))] = cell;
        }
    }

    let full = Span::new(0, n);
    let roots: Vec<usize> = cells[cell_index(n, full)]
        .keys()
        .enumerate()
        .filter(|(_, node)| node.is_maximal() && node.is_saturated())
        .map(|(i, _)| i)
        .collect();

    let mut counts = HashMap::new();
    let total: u128 = roots
        .iter()
        .map(|&i| count_derivations(&cells, n, full, i, &mut counts))
        .fold(0u128, u128::saturating_add);
    if total > options.max_markers as u128 {
        return Err(Error::TooManyParses {
            limit: options.max_markers,
        });
    }

    let mut built = HashMap::new();
    let mut completed = BTreeMap::new();
    for &i in &roots {
        for d in build(&cells, n, full, i, &mut built) {
            let marker = PhraseMarker::new(d)?;
            if !theta::check_complete(&marker) {
                continue;
            }
            if options.case_filter && !case::case_filter(&marker) {
                continue;
            }
            completed.entry(marker.canonical()).or_insert(marker);
        }
    }

    Ok(ParseForest {
        tokens,
        cells,
        completed: completed.into_values().collect(),
    })
}

fn count_derivations(
    cells: &[Cell],
    n: usize,
    span: Span,
    item: usize,
    memo: &mut HashMap<(Span, usize), u128>,
) -> u128 {
    if let Some(&c) = memo.get(&(span, item)) {
        return c;
    }
    let (_, backs) = cells[cell_index(n, span)].get_index(item).unwrap();
    let mut total = 0u128;
    for bp in backs {
        let c = match bp {
            Backpointer::Leaf => 1,
            Backpointer::Branch {
                split, left, right, ..
            } => {
                let l = count_derivations(cells, n, Span::new(span.start, *split), *left, memo);
                let r = count_derivations(cells, n, Span::new(*split, span.end), *right, memo);
                l.saturating_mul(r)
            }
        };
        total = total.saturating_add(c);
    }
    memo.insert((span, item), total);
    total
}

fn build(
    cells: &[Cell],
    n: usize,
    span: Span,
    item: usize,
    memo: &mut HashMap<(Span, usize), Vec<Arc<Derivation>>>,
) -> Vec<Arc<Derivation>> {
    if let Some(d) = memo.get(&(span, item)) {
        return d.clone();
    }
    let (node, backs) = cells[cell_index(n, span)].get_index(item).unwrap();
    let mut out = Vec::new();
    for bp in backs {
        match bp {
            Backpointer::Leaf => out.push(Arc::new(Derivation::Leaf(node.clone()))),
            Backpointer::Branch {
                split,
                left,
                right,
                branch,
            } => {
                let ls = build(cells, n, Span::new(span.start, *split), *left, memo);
                let rs = build(cells, n, Span::new(*split, span.end), *right, memo);
                for l in &ls {
                    for r in &rs {
                        out.push(Arc::new(Derivation::Branch {
                            branch: branch.clone(),
                            left: Arc::clone(l),
                            right: Arc::clone(r),
                        }));
                    }
                }
            }
        }
    }
    memo.insert((span, item), out.clone());
    out
}

/// All completed markers, in canonical order.
pub fn enumerate(forest: &ParseForest) -> Vec<PhraseMarker> {
    forest.completed.to_vec()
}

//! Batch evaluation over a suite of ambiguous sentences.
//!
//! Suite file: one sentence per line, optionally followed by a tab and a gold
//! bracketing in the corpus tree format. Blank lines and `#` lines are skipped.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::corpus::{format_probability, CorpusNode};
use crate::engine::ParseOptions;
use crate::model::Lexicon;
use crate::ranking::{rank_sentence, RankedParse, Scorer};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteItem {
    pub line: usize,
    pub sentence: String,
    pub gold: Option<String>,
}

pub fn read_suite(text: &str) -> Vec<SuiteItem> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            let (sentence, gold) = match l.split_once('\t') {
                Some((s, g)) if !g.trim().is_empty() => (s, Some(g.trim().to_string())),
                Some((s, _)) => (s, None),
                None => (l, None),
            };
            SuiteItem {
                line: i + 1,
                sentence: sentence.split_whitespace().collect::<Vec<_>>().join(" "),
                gold,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Parsed {
        ranked: Vec<RankedParse>,
        /// Whether the rank-1 parse equals the gold bracketing, when given.
        top_match: Option<bool>,
    },
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SentenceReport {
    pub line: usize,
    pub sentence: String,
    pub outcome: Outcome,
}

impl SentenceReport {
    pub fn analyses(&self) -> Option<usize> {
        match &self.outcome {
            Outcome::Parsed { ranked, .. } => Some(ranked.len()),
            Outcome::Failed(_) => None,
        }
    }

    pub fn ranked(&self) -> &[RankedParse] {
        match &self.outcome {
            Outcome::Parsed { ranked, .. } => ranked,
            Outcome::Failed(_) => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EvalReport {
    pub sentences: Vec<SentenceReport>,
}

impl EvalReport {
    /// Analysis counts of the sentences that parsed, in suite order.
    pub fn analysis_counts(&self) -> Vec<usize> {
        self.sentences.iter().filter_map(|s| s.analyses()).collect()
    }

    pub fn failed(&self) -> usize {
        self.sentences.iter().filter(|s| s.analyses().is_none()).count()
    }

    pub fn mean_analyses(&self) -> Option<f64> {
        let c = self.analysis_counts();
        (!c.is_empty()).then(|| c.iter().sum::<usize>() as f64 / c.len() as f64)
    }

    pub fn median_analyses(&self) -> Option<f64> {
        let mut c = self.analysis_counts();
        if c.is_empty() {
            return None;
        }
        c.sort_unstable();
        let mid = c.len() / 2;
        Some(if c.len() % 2 == 1 {
            c[mid] as f64
        } else {
            (c[mid - 1] + c[mid]) as f64 / 2.0
        })
    }

    pub fn gold_count(&self) -> usize {
        self.sentences
            .iter()
            .filter(|s| matches!(s.outcome, Outcome::Parsed { top_match: Some(_), .. }))
            .count()
    }

    pub fn top_matches(&self) -> usize {
        self.sentences
            .iter()
            .filter(|s| matches!(s.outcome, Outcome::Parsed { top_match: Some(true), .. }))
            .count()
    }

    fn opt(v: Option<f64>) -> String {
        v.map_or_else(|| "n/a".to_string(), |v| v.to_string())
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "sentences: {}", self.sentences.len());
        let _ = writeln!(out, "failed: {}", self.failed());
        let _ = writeln!(out, "mean analyses: {}", Self::opt(self.mean_analyses()));
        let _ = writeln!(out, "median analyses: {}", Self::opt(self.median_analyses()));
        let _ = writeln!(out, "top-parse matches: {}/{}", self.top_matches(), self.gold_count());
        for (i, s) in self.sentences.iter().enumerate() {
            let _ = writeln!(out);
            let _ = writeln!(out, "#{} {}", i + 1, s.sentence);
            match &s.outcome {
                Outcome::Failed(msg) => {
                    let _ = writeln!(out, "  failed: {}", msg);
                }
                Outcome::Parsed { ranked, top_match } => {
                    let m = match top_match {
                        Some(true) => "yes",
                        Some(false) => "no",
                        None => "-",
                    };
                    let _ = writeln!(out, "  analyses: {}  top match: {}", ranked.len(), m);
                    for r in ranked {
                        let _ = writeln!(
                            out,
                            "  {:>3}  global {}  xbar {}  theta {}  {}",
                            r.rank,
                            format_probability(r.global_prob),
                            format_probability(r.xbar_prob),
                            format_probability(r.theta_prob),
                            r.marker.bracketed()
                        );
                    }
                }
            }
        }
        out
    }

    /// Line-oriented `key=value` form of the report.
    pub fn render_kv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "sentences={}", self.sentences.len());
        let _ = writeln!(out, "failed={}", self.failed());
        let _ = writeln!(out, "mean_analyses={}", Self::opt(self.mean_analyses()));
        let _ = writeln!(out, "median_analyses={}", Self::opt(self.median_analyses()));
        let _ = writeln!(out, "top_matches={}", self.top_matches());
        let _ = writeln!(out, "gold_count={}", self.gold_count());
        for (i, s) in self.sentences.iter().enumerate() {
            let k = i + 1;
            let _ = writeln!(out, "sentence.{}.text={}", k, s.sentence);
            match &s.outcome {
                Outcome::Failed(msg) => {
                    let _ = writeln!(out, "sentence.{}.status=failed", k);
                    let _ = writeln!(out, "sentence.{}.error={}", k, msg);
                }
                Outcome::Parsed { ranked, top_match } => {
                    let _ = writeln!(out, "sentence.{}.status=ok", k);
                    let _ = writeln!(out, "sentence.{}.analyses={}", k, ranked.len());
                    if let Some(m) = top_match {
                        let _ = writeln!(out, "sentence.{}.top_match={}", k, m);
                    }
                    for r in ranked {
                        let _ = writeln!(
                            out,
                            "sentence.{}.rank.{}={} {} {} {}",
                            k,
                            r.rank,
                            format_probability(r.global_prob),
                            format_probability(r.xbar_prob),
                            format_probability(r.theta_prob),
                            r.marker.bracketed()
                        );
                    }
                }
            }
        }
        out
    }
}

fn evaluate_one(
    item: &SuiteItem,
    lexicon: &Lexicon,
    scorer: &Scorer,
    options: &ParseOptions,
) -> SentenceReport {
    let outcome = (|| {
        let gold = match &item.gold {
            Some(g) => Some(CorpusNode::parse(g).map_err(|e| format!("gold bracketing: {}", e))?),
            None => None,
        };
        let ranked =
            rank_sentence(&item.sentence, lexicon, scorer, options).map_err(|e| e.to_string())?;
        let top_match = gold.map(|g| {
            ranked
                .first()
                .is_some_and(|top| top.marker.to_corpus_node() == g)
        });
        Ok(Outcome::Parsed { ranked, top_match })
    })()
    .unwrap_or_else(Outcome::Failed);
    SentenceReport {
        line: item.line,
        sentence: item.sentence.clone(),
        outcome,
    }
}

/// Parses and ranks every suite sentence concurrently; the report keeps
/// suite order.
pub fn evaluate(
    suite: &[SuiteItem],
    lexicon: &Lexicon,
    scorer: &Scorer,
    options: &ParseOptions,
) -> EvalReport {
    EvalReport {
        sentences: suite
            .par_iter()
            .map(|item| evaluate_one(item, lexicon, scorer, options))
            .collect(),
    }
}

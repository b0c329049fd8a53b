//! Per-module probabilities and their product.
//!
//! Each module's probability is computed from that module's quantities alone:
//! the X-bar probability from schema applications, the theta probability from
//! grid selections. The global probability is their product, accumulated in
//! log space.

use std::cmp::Ordering;

use crate::engine::{self, ParseOptions};
use crate::error::Result;
use crate::model::{Lexicon, PhraseMarker};
use crate::theta::{self, ThetaTable};
use crate::xbar::{self, SchemaTable};

/// An additional multiplicative factor on the global probability.
pub trait ParseFactor: Send + Sync {
    fn name(&self) -> &str;
    fn log_probability(&self, marker: &PhraseMarker) -> Result<f64>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Score {
    pub xbar_prob: f64,
    pub theta_prob: f64,
    pub global_prob: f64,
    pub log_global: f64,
}

pub struct Scorer<'a> {
    schema: &'a SchemaTable,
    theta: &'a ThetaTable,
    extra: Vec<Box<dyn ParseFactor + 'a>>,
}

impl<'a> Scorer<'a> {
    pub fn new(schema: &'a SchemaTable, theta: &'a ThetaTable) -> Self {
        Scorer {
            schema,
            theta,
            extra: Vec::new(),
        }
    }

    pub fn with_factor(mut self, factor: Box<dyn ParseFactor + 'a>) -> Self {
        self.extra.push(factor);
        self
    }

    pub fn score(&self, marker: &PhraseMarker) -> Result<Score> {
        let log_xbar = xbar::xbar_log_probability(marker, self.schema)?;
        let log_theta = theta::theta_log_probability(marker, self.theta)?;
        let mut log_global = log_xbar + log_theta;
        for f in &self.extra {
            log_global += f.log_probability(marker)?;
        }
        Ok(Score {
            xbar_prob: log_xbar.exp(),
            theta_prob: log_theta.exp(),
            global_prob: log_global.exp(),
            log_global,
        })
    }
}

pub fn score(marker: &PhraseMarker, schema: &SchemaTable, theta: &ThetaTable) -> Result<Score> {
    Scorer::new(schema, theta).score(marker)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedParse {
    pub marker: PhraseMarker,
    pub xbar_prob: f64,
    pub theta_prob: f64,
    pub global_prob: f64,
    pub log_global: f64,
    /// 1-based.
    pub rank: usize,
}

/// Scores and sorts markers of one sentence: descending global probability,
/// ties broken by canonical serialization.
pub fn rank(markers: &[PhraseMarker], scorer: &Scorer) -> Result<Vec<RankedParse>> {
    let mut scored = markers
        .iter()
        .map(|m| Ok((scorer.score(m)?, m.canonical(), m)))
        .collect::<Result<Vec<_>>>()?;
    scored.sort_by(|a, b| match b.0.log_global.total_cmp(&a.0.log_global) {
        Ordering::Equal => a.1.cmp(&b.1),
        o => o,
    });
    Ok(scored
        .into_iter()
        .enumerate()
        .map(|(i, (s, _, m))| RankedParse {
            marker: m.clone(),
            xbar_prob: s.xbar_prob,
            theta_prob: s.theta_prob,
            global_prob: s.global_prob,
            log_global: s.log_global,
            rank: i + 1,
        })
        .collect())
}

/// Parses a whitespace-tokenized sentence and ranks every analysis.
pub fn rank_sentence(
    sentence: &str,
    lexicon: &Lexicon,
    scorer: &Scorer,
    options: &ParseOptions,
) -> Result<Vec<RankedParse>> {
    let tokens: Vec<&str> = sentence.split_whitespace().collect();
    let forest = engine::parse(&tokens, lexicon, options)?;
    rank(forest.completed(), scorer)
}

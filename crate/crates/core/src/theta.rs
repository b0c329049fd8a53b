//! Theta criterion: grid discharge on proper branches, completeness of a
//! phrase marker, and per-head grid probabilities.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::model::{
    Category, Feature, GridIdentity, PhraseMarker, RolePosition, Span, SyntacticNode, ThetaEvent,
    ThetaRole,
};

/// Discharges one role of `head`'s grid onto `argument`.
///
/// Internal roles go in grid order; the external role is taken by the
/// specifier. Returns the head's updated state and the event to record on the
/// branch.
pub fn discharge(
    head: &SyntacticNode,
    argument: &SyntacticNode,
    kind: RolePosition,
) -> Result<(SyntacticNode, ThetaEvent)> {
    if argument.assigned_role.is_some() {
        return Err(Error::DoubleRole {
            span: argument.span,
        });
    }
    if !argument.is_maximal() {
        return Err(Error::CriterionViolation(format!(
            "argument {} is not a maximal projection",
            argument
        )));
    }
    let mut updated = head.clone();
    let role: ThetaRole = match kind {
        RolePosition::Internal => {
            let role = *head.next_internal_role().ok_or_else(|| {
                Error::CriterionViolation(format!("{} has no internal role left", head))
            })?;
            updated.remaining_internal -= 1;
            updated.comp = Feature::from_bool(updated.remaining_internal > 0);
            role
        }
        RolePosition::External => {
            let role = match head.selected_grid().external_role() {
                Some(r) if head.external_pending => *r,
                _ => {
                    return Err(Error::CriterionViolation(format!(
                        "{} has no external role left",
                        head
                    )))
                }
            };
            updated.external_pending = false;
            role
        }
    };
    if role.selects != argument.category {
        return Err(Error::Selection {
            role: role.to_string(),
            expected: role.selects,
            found: argument.category,
        });
    }
    let event = ThetaEvent {
        licenser_word: head.head.word.clone(),
        licenser: head.head_position,
        role,
        receiver: argument.span,
    };
    Ok((updated, event))
}

/// True iff every leaf's grid is fully discharged by the marker's events,
/// every event is consistent with the branch carrying it, and every
/// noun-headed non-head daughter bears exactly one role.
pub fn check_complete(marker: &PhraseMarker) -> bool {
    let leaves = marker.leaves();
    let mut given: HashMap<usize, Vec<ThetaRole>> = HashMap::new();
    let mut received: HashMap<Span, usize> = HashMap::new();
    let mut noun_arguments = Vec::new();

    for branch in marker.branches() {
        let head = branch.head();
        let other = branch.non_head();
        match &branch.theta_event {
            Some(ev) => {
                if ev.receiver != other.span
                    || ev.licenser != head.head_position
                    || ev.licenser_word != head.head.word
                    || other.assigned_role != Some(ev.role)
                {
                    return false;
                }
                given.entry(ev.licenser).or_default().push(ev.role);
                *received.entry(ev.receiver).or_default() += 1;
            }
            None => {
                if other.assigned_role.is_some() {
                    return false;
                }
            }
        }
        if other.category == Category::N {
            noun_arguments.push(other.span);
        }
    }

    for leaf in &leaves {
        let mut expected: Vec<ThetaRole> = leaf.selected_grid().roles().to_vec();
        let mut got = given.remove(&leaf.head_position).unwrap_or_default();
        expected.sort();
        got.sort();
        if expected != got {
            return false;
        }
    }
    if !given.is_empty() {
        return false;
    }
    if received.values().any(|&n| n > 1) {
        return false;
    }
    noun_arguments
        .iter()
        .all(|span| received.get(span) == Some(&1))
}

/// Per-head grid distributions, keyed by head word and grid identity.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaTable {
    heads: BTreeMap<String, BTreeMap<GridIdentity, GridStat>>,
    default_probability: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridStat {
    pub count: u64,
    pub probability: f64,
}

impl ThetaTable {
    /// Relative frequencies within each head from aggregated counts.
    pub fn from_counts(
        counts: &BTreeMap<(String, GridIdentity), u64>,
        default_probability: f64,
    ) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        if !(default_probability > 0.0 && default_probability <= 1.0) {
            return Err(Error::CriterionViolation(format!(
                "default grid probability {} outside (0, 1]",
                default_probability
            )));
        }
        let mut heads: BTreeMap<String, BTreeMap<GridIdentity, GridStat>> = BTreeMap::new();
        for ((word, grid), &count) in counts {
            heads.entry(word.clone()).or_default().insert(
                grid.clone(),
                GridStat {
                    count,
                    probability: 0.0,
                },
            );
        }
        for grids in heads.values_mut() {
            let total: u64 = grids.values().map(|g| g.count).sum();
            for stat in grids.values_mut() {
                stat.probability = if total > 0 {
                    stat.count as f64 / total as f64
                } else {
                    0.0
                };
            }
        }
        Ok(ThetaTable {
            heads,
            default_probability,
        })
    }

    pub fn default_probability(&self) -> f64 {
        self.default_probability
    }

    pub fn heads(&self) -> impl Iterator<Item = (&str, &BTreeMap<GridIdentity, GridStat>)> + '_ {
        self.heads.iter().map(|(w, g)| (w.as_str(), g))
    }

    pub fn contains_head(&self, word: &str) -> bool {
        self.heads.contains_key(word)
    }

    /// Probability of `grid` for `word`; heads outside the table get the
    /// default, and unobserved grids of a known head get zero.
    pub fn probability(&self, word: &str, grid: &GridIdentity) -> f64 {
        match self.heads.get(word) {
            Some(grids) => grids.get(grid).map_or(0.0, |g| g.probability),
            None => self.default_probability,
        }
    }

    pub fn count(&self, word: &str, grid: &GridIdentity) -> u64 {
        self.heads
            .get(word)
            .and_then(|g| g.get(grid))
            .map_or(0, |g| g.count)
    }

    /// Every table entry multiplied by `factor`. The result is generally not
    /// normalized; the default is left alone.
    pub fn scaled(&self, factor: f64) -> ThetaTable {
        let mut out = self.clone();
        for grids in out.heads.values_mut() {
            for stat in grids.values_mut() {
                stat.probability *= factor;
            }
        }
        out
    }

    /// Replaces one head's distribution, keeping counts. Used to perturb
    /// tables in tests and experiments.
    pub fn with_probability(&self, word: &str, grid: &GridIdentity, p: f64) -> ThetaTable {
        let mut out = self.clone();
        out.heads
            .entry(word.to_string())
            .or_default()
            .entry(grid.clone())
            .or_insert(GridStat {
                count: 0,
                probability: 0.0,
            })
            .probability = p;
        out
    }

    pub(crate) fn from_parts(
        heads: BTreeMap<String, BTreeMap<GridIdentity, GridStat>>,
        default_probability: f64,
    ) -> Self {
        ThetaTable {
            heads,
            default_probability,
        }
    }
}

/// Relative frequency of each grid among the grids observed with its head.
pub fn estimate_theta_table(
    observations: &[(String, GridIdentity)],
    default_probability: f64,
) -> Result<ThetaTable> {
    let mut counts: BTreeMap<(String, GridIdentity), u64> = BTreeMap::new();
    for obs in observations {
        *counts.entry(obs.clone()).or_default() += 1;
    }
    ThetaTable::from_counts(&counts, default_probability)
}

/// Natural log of the product of grid probabilities over the marker's verbal
/// leaves. Other heads are held constant and contribute nothing.
pub fn theta_log_probability(marker: &PhraseMarker, table: &ThetaTable) -> Result<f64> {
    if !check_complete(marker) {
        return Err(Error::CriterionViolation(format!(
            "incomplete marker {}",
            marker.bracketed()
        )));
    }
    let mut log = 0.0;
    for leaf in marker.leaves().into_iter().filter(|l| l.category.is_verbal()) {
        let grid = leaf.selected_grid().identity();
        let p = table.probability(leaf.head_word(), &grid);
        if p <= 0.0 {
            return Err(Error::UnseenGrid {
                word: leaf.head_word().to_string(),
                grid: grid.to_string(),
            });
        }
        log += p.ln();
    }
    Ok(log)
}

pub fn theta_parse_probability(marker: &PhraseMarker, table: &ThetaTable) -> Result<f64> {
    theta_log_probability(marker, table).map(f64::exp)
}

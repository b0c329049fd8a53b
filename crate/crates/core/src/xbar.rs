//! X-bar licensing and schema-probability estimation.
//!
//! The five schemata, writing a node as `Cat(spec, comp)` and marking the
//! head daughter with `H:`:
//!
//! ```text
//! 1  X(-,-) <- Y(-,-) H:X(+,-)      specifier
//! 2  X(S,+) <- H:X(S,+) Y(*,-)      non-final complement
//! 3  X(S,-) <- H:X(S,+) Y(-,-)      final complement
//! 4  X(S,-) <- H:X(S,-) Y(-,-)      right adjunct
//! 5  X(S,-) <- Y(-,-) H:X(S,-)      left adjunct
//! ```
//!
//! with `X != Y` throughout. The non-head daughter's SPEC in schema 2 is left
//! open at this level; the theta gate only discharges roles onto maximal
//! projections.

use std::fmt;

use crate::corpus::NodeLabel;
use crate::error::{Error, Result};
use crate::model::{
    project, Feature, HeadSide, PhraseMarker, RolePosition, SyntacticNode, ThetaEvent,
};
use crate::theta;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchemaId(u8);

impl SchemaId {
    pub const SPECIFIER: SchemaId = SchemaId(1);
    pub const NON_FINAL_COMPLEMENT: SchemaId = SchemaId(2);
    pub const FINAL_COMPLEMENT: SchemaId = SchemaId(3);
    pub const RIGHT_ADJUNCT: SchemaId = SchemaId(4);
    pub const LEFT_ADJUNCT: SchemaId = SchemaId(5);

    pub const ALL: [SchemaId; 5] = [
        SchemaId(1),
        SchemaId(2),
        SchemaId(3),
        SchemaId(4),
        SchemaId(5),
    ];

    pub fn new(id: u8) -> Option<SchemaId> {
        (1..=5).contains(&id).then_some(SchemaId(id))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn head_side(self) -> HeadSide {
        match self.0 {
            1 | 5 => HeadSide::Right,
            _ => HeadSide::Left,
        }
    }

    /// Schemata 2 and 3 attach complements and discharge an internal role.
    pub fn is_complement(self) -> bool {
        matches!(self.0, 2 | 3)
    }

    /// Mother-shape class used by mother-conditioned estimation:
    /// `{1}`, `{2}` and `{3, 4, 5}`.
    pub fn mother_class(self) -> usize {
        match self.0 {
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Does the `(mother, left, right)` feature triple fit `schema`?
pub fn fits(schema: SchemaId, mother: NodeLabel, left: NodeLabel, right: NodeLabel) -> bool {
    use Feature::{Minus, Plus};
    let (head, other) = match schema.head_side() {
        HeadSide::Left => (left, right),
        HeadSide::Right => (right, left),
    };
    if head.category != mother.category || other.category == mother.category {
        return false;
    }
    let maximal = |n: NodeLabel| n.spec == Minus && n.comp == Minus;
    match schema.0 {
        1 => maximal(mother) && maximal(other) && head.spec == Plus && head.comp == Minus,
        2 => {
            head.comp == Plus
                && mother.comp == Plus
                && mother.spec == head.spec
                && other.comp == Minus
        }
        3 => {
            head.comp == Plus && mother.comp == Minus && mother.spec == head.spec && maximal(other)
        }
        4 | 5 => {
            head.comp == Minus && mother.comp == Minus && mother.spec == head.spec && maximal(other)
        }
        _ => unreachable!(),
    }
}

/// Every schema the feature triple fits.
pub fn matching_schemata(mother: NodeLabel, left: NodeLabel, right: NodeLabel) -> Vec<SchemaId> {
    SchemaId::ALL
        .iter()
        .copied()
        .filter(|&s| fits(s, mother, left, right))
        .collect()
}

/// The unique schema for a feature triple, if exactly one fits.
pub fn classify(mother: NodeLabel, left: NodeLabel, right: NodeLabel) -> Option<SchemaId> {
    match matching_schemata(mother, left, right).as_slice() {
        [only] => Some(*only),
        _ => None,
    }
}

/// One way of licensing a pair of adjacent daughters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Licensed {
    pub schema: SchemaId,
    pub mother: SyntacticNode,
    /// Daughters as attached; an argument carries its new role.
    pub left: SyntacticNode,
    pub right: SyntacticNode,
    pub theta_event: Option<ThetaEvent>,
}

/// All schema instantiations licensing `left` `right` as sisters, each with
/// its constructed mother. Complement schemata are gated by theta discharge.
pub fn match_schemata(left: &SyntacticNode, right: &SyntacticNode) -> Result<Vec<Licensed>> {
    use Feature::{Minus, Plus};
    let span = left.span.join(right.span)?;
    let mut out = Vec::new();
    if left.category == right.category {
        return Ok(out);
    }

    // right-headed
    if left.is_maximal() {
        if right.spec == Plus && right.comp == Minus {
            if right.external_pending {
                if let Ok((head, event)) = theta::discharge(right, left, RolePosition::External) {
                    out.push(Licensed {
                        schema: SchemaId::SPECIFIER,
                        mother: project(&head, Minus, Minus, span)?,
                        left: left.with_role(event.role),
                        right: right.clone(),
                        theta_event: Some(event),
                    });
                }
            } else {
                out.push(Licensed {
                    schema: SchemaId::SPECIFIER,
                    mother: project(right, Minus, Minus, span)?,
                    left: left.clone(),
                    right: right.clone(),
                    theta_event: None,
                });
            }
        }
        if right.comp == Minus {
            out.push(Licensed {
                schema: SchemaId::LEFT_ADJUNCT,
                mother: project(right, right.spec, Minus, span)?,
                left: left.clone(),
                right: right.clone(),
                theta_event: None,
            });
        }
    }

    // left-headed
    if left.comp == Plus && right.comp == Minus {
        let schema = match left.remaining_internal {
            0 => None,
            1 if right.spec == Minus => Some(SchemaId::FINAL_COMPLEMENT),
            1 => None,
            _ => Some(SchemaId::NON_FINAL_COMPLEMENT),
        };
        if let Some(schema) = schema {
            if let Ok((head, event)) = theta::discharge(left, right, RolePosition::Internal) {
                out.push(Licensed {
                    schema,
                    mother: project(&head, left.spec, head.comp, span)?,
                    left: left.clone(),
                    right: right.with_role(event.role),
                    theta_event: Some(event),
                });
            }
        }
    }
    if left.comp == Minus && right.is_maximal() {
        out.push(Licensed {
            schema: SchemaId::RIGHT_ADJUNCT,
            mother: project(left, left.spec, Minus, span)?,
            left: left.clone(),
            right: right.clone(),
            theta_event: None,
        });
    }
    Ok(out)
}

/// Branch counts per schema.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SchemaCounts([u64; 5]);

impl SchemaCounts {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, schema: SchemaId) -> u64 {
        self.0[schema.index()]
    }

    pub fn add(&mut self, schema: SchemaId, n: u64) {
        self.0[schema.index()] += n;
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (SchemaId, u64)> + '_ {
        SchemaId::ALL.iter().map(move |&s| (s, self.get(s)))
    }
}

impl FromIterator<(SchemaId, u64)> for SchemaCounts {
    fn from_iter<T: IntoIterator<Item = (SchemaId, u64)>>(iter: T) -> Self {
        let mut counts = SchemaCounts::new();
        for (s, n) in iter {
            counts.add(s, n);
        }
        counts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimationMode {
    /// Relative frequency over all branches.
    Flat,
    /// Relative frequency within the branches sharing a mother shape.
    MotherConditioned,
}

impl EstimationMode {
    pub fn as_str(self) -> &'static str {
        match self {
            EstimationMode::Flat => "flat",
            EstimationMode::MotherConditioned => "mother",
        }
    }
}

impl std::str::FromStr for EstimationMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "flat" => Ok(EstimationMode::Flat),
            "mother" => Ok(EstimationMode::MotherConditioned),
            other => Err(format!("unknown estimation mode '{}'", other)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemaTable {
    mode: EstimationMode,
    counts: SchemaCounts,
    entries: [f64; 5],
}

impl SchemaTable {
    pub fn estimate(mode: EstimationMode, counts: SchemaCounts) -> Result<Self> {
        match mode {
            EstimationMode::Flat => estimate_flat(counts),
            EstimationMode::MotherConditioned => estimate_mother_conditioned(counts),
        }
    }

    pub fn mode(&self) -> EstimationMode {
        self.mode
    }

    pub fn counts(&self) -> &SchemaCounts {
        &self.counts
    }

    pub fn total_count(&self) -> u64 {
        self.counts.total()
    }

    pub fn probability(&self, schema: SchemaId) -> f64 {
        self.entries[schema.index()]
    }

    pub fn log_probability(&self, schema: SchemaId) -> Result<f64> {
        let p = self.probability(schema);
        if p > 0.0 {
            Ok(p.ln())
        } else {
            Err(Error::UnseenSchema(schema))
        }
    }

    /// Sum of entries over each normalization class that has observations:
    /// one class in flat mode, up to three in mother-conditioned mode.
    pub fn class_sums(&self) -> Vec<f64> {
        let classes: Vec<Vec<SchemaId>> = match self.mode {
            EstimationMode::Flat => vec![SchemaId::ALL.to_vec()],
            EstimationMode::MotherConditioned => (0..3)
                .map(|c| {
                    SchemaId::ALL
                        .iter()
                        .copied()
                        .filter(|s| s.mother_class() == c)
                        .collect()
                })
                .collect(),
        };
        classes
            .iter()
            .filter(|class| class.iter().any(|&s| self.counts.get(s) > 0))
            .map(|class| class.iter().map(|&s| self.probability(s)).sum())
            .collect()
    }
}

pub fn estimate_flat(counts: SchemaCounts) -> Result<SchemaTable> {
    let total = counts.total();
    if total == 0 {
        return Err(Error::EmptyCorpus);
    }
    let mut entries = [0.0; 5];
    for (s, n) in counts.iter() {
        entries[s.index()] = n as f64 / total as f64;
    }
    Ok(SchemaTable {
        mode: EstimationMode::Flat,
        counts,
        entries,
    })
}

pub fn estimate_mother_conditioned(counts: SchemaCounts) -> Result<SchemaTable> {
    if counts.total() == 0 {
        return Err(Error::EmptyCorpus);
    }
    let mut class_totals = [0u64; 3];
    for (s, n) in counts.iter() {
        class_totals[s.mother_class()] += n;
    }
    let mut entries = [0.0; 5];
    for (s, n) in counts.iter() {
        let denom = class_totals[s.mother_class()];
        if denom > 0 {
            entries[s.index()] = n as f64 / denom as f64;
        }
    }
    Ok(SchemaTable {
        mode: EstimationMode::MotherConditioned,
        counts,
        entries,
    })
}

/// Natural log of the product of schema probabilities over the marker's
/// branches. Factors are grouped by schema so markers using the same schema
/// multiset get bit-identical values.
pub fn xbar_log_probability(marker: &PhraseMarker, table: &SchemaTable) -> Result<f64> {
    let used: SchemaCounts = marker.branches().iter().map(|b| (b.schema, 1)).collect();
    let mut log = 0.0;
    for (s, n) in used.iter() {
        if n > 0 {
            log += n as f64 * table.log_probability(s)?;
        }
    }
    Ok(log)
}

pub fn xbar_parse_probability(marker: &PhraseMarker, table: &SchemaTable) -> Result<f64> {
    xbar_log_probability(marker, table).map(f64::exp)
}

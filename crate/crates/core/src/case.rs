//! Case filter. Assigns abstract case structurally and never contributes a
//! probability.
//!
//! Assigners: a verbal head (V, or finite I) gives accusative to a noun
//! complement, P gives oblique to its complement, and finite I gives
//! nominative to its specifier.

use std::collections::HashMap;

use crate::model::{CaseAssignment, CaseValue, Category, PhraseMarker, ProperBranch, Span};
use crate::xbar::SchemaId;

pub fn assign_case(branch: &ProperBranch) -> Option<CaseAssignment> {
    let head = branch.head();
    let receiver = branch.non_head();
    if receiver.category != Category::N || !receiver.is_maximal() {
        return None;
    }
    let value = if branch.schema.is_complement() {
        match head.category {
            Category::V | Category::I => CaseValue::Accusative,
            Category::P => CaseValue::Oblique,
            _ => return None,
        }
    } else if branch.schema == SchemaId::SPECIFIER && head.category == Category::I {
        CaseValue::Nominative
    } else {
        return None;
    };
    Some(CaseAssignment {
        assigner_word: head.head.word.clone(),
        assigner_category: head.category,
        assigner: head.head_position,
        value,
        receiver: receiver.span,
    })
}

/// True iff every theta-marked noun phrase has exactly one case.
pub fn case_filter(marker: &PhraseMarker) -> bool {
    let branches = marker.branches();
    let mut cased: HashMap<Span, usize> = HashMap::new();
    for b in &branches {
        if let Some(c) = &b.case_event {
            *cased.entry(c.receiver).or_default() += 1;
        }
    }
    if cased.values().any(|&n| n > 1) {
        return false;
    }
    branches
        .iter()
        .filter(|b| b.non_head().category == Category::N && b.theta_event.is_some())
        .all(|b| cased.get(&b.non_head().span) == Some(&1))
}

//! Shared syntactic vocabulary: categories, features, theta grids, nodes,
//! proper branches and complete phrase markers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::corpus::{CorpusNode, DaughterMark, NodeLabel};
use crate::error::{Error, Result};
use crate::xbar::SchemaId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    N,
    V,
    P,
    A,
    Adv,
    Det,
    I,
    C,
}

impl Category {
    pub const ALL: [Category; 8] = [
        Category::N,
        Category::V,
        Category::P,
        Category::A,
        Category::Adv,
        Category::Det,
        Category::I,
        Category::C,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::N => "N",
            Category::V => "V",
            Category::P => "P",
            Category::A => "A",
            Category::Adv => "Adv",
            Category::Det => "Det",
            Category::I => "I",
            Category::C => "C",
        }
    }

    /// Verbal heads (bare verbs and finite, I-fused verbs) are the ones whose
    /// grid frequencies are collected from the corpus.
    pub fn is_verbal(self) -> bool {
        matches!(self, Category::V | Category::I)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Category::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown category '{}'", s))
    }
}

/// Binary SPEC/COMP mark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feature {
    Minus,
    Plus,
}

impl Feature {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Feature::Plus
        } else {
            Feature::Minus
        }
    }

    pub fn is_plus(self) -> bool {
        self == Feature::Plus
    }

    pub fn symbol(self) -> char {
        match self {
            Feature::Plus => '+',
            Feature::Minus => '-',
        }
    }

    /// Accepts ASCII `+`/`-` and the typographic minus.
    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "+" => Some(Feature::Plus),
            "-" | "\u{2212}" => Some(Feature::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RoleLabel {
    Agent,
    Theme,
    Goal,
    Proposition,
    Location,
    Instrument,
}

impl RoleLabel {
    pub const ALL: [RoleLabel; 6] = [
        RoleLabel::Agent,
        RoleLabel::Theme,
        RoleLabel::Goal,
        RoleLabel::Proposition,
        RoleLabel::Location,
        RoleLabel::Instrument,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RoleLabel::Agent => "agent",
            RoleLabel::Theme => "theme",
            RoleLabel::Goal => "goal",
            RoleLabel::Proposition => "proposition",
            RoleLabel::Location => "location",
            RoleLabel::Instrument => "instrument",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RolePosition {
    External,
    Internal,
}

impl RolePosition {
    pub fn as_str(self) -> &'static str {
        match self {
            RolePosition::External => "ext",
            RolePosition::Internal => "int",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaRole {
    pub label: RoleLabel,
    pub position: RolePosition,
    pub selects: Category,
}

impl ThetaRole {
    pub fn internal(label: RoleLabel, selects: Category) -> Self {
        ThetaRole {
            label,
            position: RolePosition::Internal,
            selects,
        }
    }

    pub fn external(label: RoleLabel, selects: Category) -> Self {
        ThetaRole {
            label,
            position: RolePosition::External,
            selects,
        }
    }
}

/// `label/position:category`, e.g. `theme/int:N`.
impl fmt::Display for ThetaRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{}:{}",
            self.label.as_str(),
            self.position.as_str(),
            self.selects
        )
    }
}

impl FromStr for ThetaRole {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let bad = || format!("malformed theta role '{}'", s);
        let (label, rest) = s.split_once('/').ok_or_else(bad)?;
        let (position, selects) = rest.split_once(':').ok_or_else(bad)?;
        let label = RoleLabel::ALL
            .iter()
            .copied()
            .find(|l| l.as_str() == label)
            .ok_or_else(|| format!("unknown role label '{}'", label))?;
        let position = match position {
            "ext" => RolePosition::External,
            "int" => RolePosition::Internal,
            other => return Err(format!("unknown role position '{}'", other)),
        };
        Ok(ThetaRole {
            label,
            position,
            selects: selects.parse()?,
        })
    }
}

/// A head's argument structure. Internal roles are discharged in the order
/// they are listed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaGrid {
    roles: Vec<ThetaRole>,
    /// Occurrence count supplied with the lexicon, if any.
    pub count: Option<u64>,
}

impl ThetaGrid {
    pub fn new(roles: Vec<ThetaRole>) -> std::result::Result<Self, String> {
        let external = roles
            .iter()
            .filter(|r| r.position == RolePosition::External)
            .count();
        if external > 1 {
            return Err("a grid has at most one external role".to_string());
        }
        Ok(ThetaGrid { roles, count: None })
    }

    pub fn empty() -> Self {
        ThetaGrid {
            roles: Vec::new(),
            count: None,
        }
    }

    pub fn with_count(mut self, count: u64) -> Self {
        self.count = Some(count);
        self
    }

    pub fn roles(&self) -> &[ThetaRole] {
        &self.roles
    }

    pub fn internal_roles(&self) -> impl Iterator<Item = &ThetaRole> + '_ {
        self.roles
            .iter()
            .filter(|r| r.position == RolePosition::Internal)
    }

    pub fn internal_count(&self) -> usize {
        self.internal_roles().count()
    }

    pub fn external_role(&self) -> Option<&ThetaRole> {
        self.roles
            .iter()
            .find(|r| r.position == RolePosition::External)
    }

    /// The `n`th internal role in discharge order.
    pub fn internal_role(&self, n: usize) -> Option<&ThetaRole> {
        self.internal_roles().nth(n)
    }

    pub fn identity(&self) -> GridIdentity {
        GridIdentity(self.internal_roles().map(|r| r.selects).collect())
    }

    pub fn same_roles(&self, other: &ThetaGrid) -> bool {
        self.roles == other.roles
    }
}

/// `-` for the empty grid, otherwise roles joined by `;`.
impl fmt::Display for ThetaGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.roles.is_empty() {
            return f.write_str("-");
        }
        for (i, r) in self.roles.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{}", r)?;
        }
        Ok(())
    }
}

/// The ordered sequence of internal-role categories: the key under which grid
/// probabilities are estimated and looked up.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridIdentity(pub Vec<Category>);

impl fmt::Display for GridIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", c)?;
        }
        f.write_str(">")
    }
}

impl FromStr for GridIdentity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let inner = s
            .strip_prefix('<')
            .and_then(|s| s.strip_suffix('>'))
            .ok_or_else(|| format!("malformed grid identity '{}'", s))?;
        if inner.is_empty() {
            return Ok(GridIdentity(Vec::new()));
        }
        inner
            .split(',')
            .map(|c| c.parse())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(GridIdentity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LexicalEntry {
    pub word: String,
    pub category: Category,
    pub spec_required: Feature,
    grids: Vec<ThetaGrid>,
}

impl LexicalEntry {
    pub fn new(
        word: impl Into<String>,
        category: Category,
        spec_required: Feature,
        grids: Vec<ThetaGrid>,
    ) -> std::result::Result<Self, String> {
        let word = word.into();
        if grids.is_empty() {
            return Err(format!("entry '{}' has no theta grid", word));
        }
        for (i, g) in grids.iter().enumerate() {
            if grids[..i].iter().any(|h| h.same_roles(g)) {
                return Err(format!("entry '{}' lists grid {} twice", word, g));
            }
        }
        Ok(LexicalEntry {
            word,
            category,
            spec_required,
            grids,
        })
    }

    pub fn grids(&self) -> &[ThetaGrid] {
        &self.grids
    }

    pub fn grid_index(&self, grid: &ThetaGrid) -> Option<usize> {
        self.grids.iter().position(|g| g.same_roles(grid))
    }
}

/// Word form to the entries it can realize, in load order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Lexicon {
    entries: BTreeMap<String, Vec<Arc<LexicalEntry>>>,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an entry, merging grids into an existing `(word, category)` entry.
    pub fn insert(&mut self, entry: LexicalEntry) -> std::result::Result<(), String> {
        let slot = self.entries.entry(entry.word.clone()).or_default();
        if let Some(existing) = slot.iter_mut().find(|e| e.category == entry.category) {
            if existing.spec_required != entry.spec_required {
                return Err(format!(
                    "'{}' {} listed with conflicting SPEC values",
                    entry.word, entry.category
                ));
            }
            let mut grids = existing.grids.clone();
            grids.extend(entry.grids);
            let merged = LexicalEntry::new(
                entry.word.clone(),
                entry.category,
                entry.spec_required,
                grids,
            )?;
            *existing = Arc::new(merged);
        } else {
            slot.push(Arc::new(entry));
        }
        Ok(())
    }

    pub fn lookup(&self, word: &str) -> Option<&[Arc<LexicalEntry>]> {
        self.entries.get(word).map(|v| v.as_slice())
    }

    pub fn entry(&self, word: &str, category: Category) -> Option<&Arc<LexicalEntry>> {
        self.lookup(word)?.iter().find(|e| e.category == category)
    }

    pub fn entries(&self) -> impl Iterator<Item = &Arc<LexicalEntry>> + '_ {
        self.entries.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Half-open token interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn len(self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(self) -> bool {
        self.end <= self.start
    }

    pub fn contains(self, other: Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn join(self, right: Span) -> Result<Span> {
        if self.end != right.start || self.is_empty() || right.is_empty() {
            return Err(Error::Span(format!("{} and {} are not adjacent", self, right)));
        }
        Ok(Span::new(self.start, right.end))
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseValue {
    Nominative,
    Accusative,
    Oblique,
}

impl CaseValue {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseValue::Nominative => "nominative",
            CaseValue::Accusative => "accusative",
            CaseValue::Oblique => "oblique",
        }
    }
}

/// A role consumed from a head's grid and given to an adjacent argument.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThetaEvent {
    pub licenser_word: String,
    /// Token index of the licensing head.
    pub licenser: usize,
    pub role: ThetaRole,
    pub receiver: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CaseAssignment {
    pub assigner_word: String,
    pub assigner_category: Category,
    pub assigner: usize,
    pub value: CaseValue,
    pub receiver: Span,
}

/// A (possibly partial) projection of a lexical head.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SyntacticNode {
    pub category: Category,
    pub spec: Feature,
    pub comp: Feature,
    pub head: Arc<LexicalEntry>,
    /// Index into `head.grids()`.
    pub grid: usize,
    /// Token index of the head word.
    pub head_position: usize,
    pub remaining_internal: usize,
    pub external_pending: bool,
    pub assigned_role: Option<ThetaRole>,
    pub case: Option<CaseValue>,
    pub span: Span,
}

impl SyntacticNode {
    pub fn head_word(&self) -> &str {
        &self.head.word
    }

    pub fn selected_grid(&self) -> &ThetaGrid {
        &self.head.grids()[self.grid]
    }

    pub fn is_maximal(&self) -> bool {
        self.spec == Feature::Minus && self.comp == Feature::Minus
    }

    /// No role of the head's grid is left to discharge.
    pub fn is_saturated(&self) -> bool {
        self.remaining_internal == 0 && !self.external_pending
    }

    /// Index of the next internal role to discharge.
    pub fn next_internal_index(&self) -> usize {
        self.selected_grid().internal_count() - self.remaining_internal
    }

    pub fn next_internal_role(&self) -> Option<&ThetaRole> {
        if self.remaining_internal == 0 {
            return None;
        }
        self.selected_grid().internal_role(self.next_internal_index())
    }

    pub fn with_role(&self, role: ThetaRole) -> SyntacticNode {
        SyntacticNode {
            assigned_role: Some(role),
            ..self.clone()
        }
    }

    pub fn with_case(&self, case: CaseValue) -> SyntacticNode {
        SyntacticNode {
            case: Some(case),
            ..self.clone()
        }
    }

    pub fn label(&self) -> NodeLabel {
        NodeLabel {
            category: self.category,
            spec: self.spec,
            comp: self.comp,
        }
    }

    pub(crate) fn check_comp(&self) -> Result<()> {
        if self.comp.is_plus() != (self.remaining_internal > 0) {
            return Err(Error::InconsistentComp {
                comp: self.comp.symbol(),
                remaining: self.remaining_internal,
            });
        }
        Ok(())
    }
}

impl fmt::Display for SyntacticNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({},{}){}\"{}\"",
            self.category, self.spec, self.comp, self.span, self.head.word
        )
    }
}

/// Builds the lexical leaf for `entry` with `grid` selected at token `position`.
pub fn leaf_node(
    entry: &Arc<LexicalEntry>,
    grid: &ThetaGrid,
    position: usize,
) -> Result<SyntacticNode> {
    let index = entry.grid_index(grid).ok_or_else(|| Error::InvalidGrid {
        word: entry.word.clone(),
        grid: grid.to_string(),
    })?;
    leaf_node_at(entry, index, position)
}

pub(crate) fn leaf_node_at(
    entry: &Arc<LexicalEntry>,
    grid: usize,
    position: usize,
) -> Result<SyntacticNode> {
    let selected = entry.grids().get(grid).ok_or_else(|| Error::InvalidGrid {
        word: entry.word.clone(),
        grid: grid.to_string(),
    })?;
    let remaining = selected.internal_count();
    Ok(SyntacticNode {
        category: entry.category,
        spec: entry.spec_required,
        comp: Feature::from_bool(remaining > 0),
        head: Arc::clone(entry),
        grid,
        head_position: position,
        remaining_internal: remaining,
        external_pending: selected.external_role().is_some(),
        assigned_role: None,
        case: None,
        span: Span::new(position, position + 1),
    })
}

/// A copy of `node` as the mother of a new branch. Category, head and grid
/// state carry over unchanged.
pub fn project(
    node: &SyntacticNode,
    new_spec: Feature,
    new_comp: Feature,
    new_span: Span,
) -> Result<SyntacticNode> {
    if !new_span.contains(node.span) {
        return Err(Error::Span(format!(
            "{} does not contain {}",
            new_span, node.span
        )));
    }
    let mother = SyntacticNode {
        spec: new_spec,
        comp: new_comp,
        span: new_span,
        assigned_role: None,
        case: None,
        ..node.clone()
    };
    mother.check_comp()?;
    Ok(mother)
}

/// Which daughter of a branch is the head projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeadSide {
    Left,
    Right,
}

/// Mother plus two daughters, with the licensing record. The daughters carry
/// whatever role and case marks the branch gave them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProperBranch {
    pub mother: SyntacticNode,
    pub left: SyntacticNode,
    pub right: SyntacticNode,
    pub schema: SchemaId,
    pub theta_event: Option<ThetaEvent>,
    pub case_event: Option<CaseAssignment>,
}

impl ProperBranch {
    pub fn new(
        mother: SyntacticNode,
        left: SyntacticNode,
        right: SyntacticNode,
        schema: SchemaId,
        theta_event: Option<ThetaEvent>,
        case_event: Option<CaseAssignment>,
    ) -> Result<Self> {
        if left.span.join(right.span)? != mother.span {
            return Err(Error::Span(format!(
                "mother {} is not {} ++ {}",
                mother.span, left.span, right.span
            )));
        }
        Ok(ProperBranch {
            mother,
            left,
            right,
            schema,
            theta_event,
            case_event,
        })
    }

    pub fn head_side(&self) -> HeadSide {
        self.schema.head_side()
    }

    pub fn head(&self) -> &SyntacticNode {
        match self.head_side() {
            HeadSide::Left => &self.left,
            HeadSide::Right => &self.right,
        }
    }

    pub fn non_head(&self) -> &SyntacticNode {
        match self.head_side() {
            HeadSide::Left => &self.right,
            HeadSide::Right => &self.left,
        }
    }
}

/// A subtree of a phrase marker. Subtrees are shared between markers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Derivation {
    Leaf(SyntacticNode),
    Branch {
        branch: ProperBranch,
        left: Arc<Derivation>,
        right: Arc<Derivation>,
    },
}

impl Derivation {
    /// The node this subtree builds (the leaf, or the branch mother).
    pub fn node(&self) -> &SyntacticNode {
        match self {
            Derivation::Leaf(n) => n,
            Derivation::Branch { branch, .. } => &branch.mother,
        }
    }

    fn collect_branches<'a>(&'a self, out: &mut Vec<&'a ProperBranch>) {
        if let Derivation::Branch {
            branch,
            left,
            right,
        } = self
        {
            out.push(branch);
            left.collect_branches(out);
            right.collect_branches(out);
        }
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a SyntacticNode>) {
        match self {
            Derivation::Leaf(n) => out.push(n),
            Derivation::Branch { left, right, .. } => {
                left.collect_leaves(out);
                right.collect_leaves(out);
            }
        }
    }

    fn write_bracketed(&self, mark: &str, grids: bool, out: &mut String) {
        let node = self.node();
        out.push_str(mark);
        out.push('(');
        out.push_str(&node.label().to_string());
        match self {
            Derivation::Leaf(n) => {
                out.push_str(" =");
                out.push_str(&n.head.word);
                if grids {
                    out.push('{');
                    out.push_str(&n.selected_grid().to_string());
                    out.push('}');
                }
            }
            Derivation::Branch {
                branch,
                left,
                right,
            } => {
                let (lm, rm) = daughter_marks(branch.schema);
                out.push(' ');
                left.write_bracketed(lm.prefix(), grids, out);
                out.push(' ');
                right.write_bracketed(rm.prefix(), grids, out);
            }
        }
        out.push(')');
    }

    fn to_corpus_node(&self) -> CorpusNode {
        match self {
            Derivation::Leaf(n) => CorpusNode::Leaf {
                label: n.label(),
                word: n.head.word.clone(),
            },
            Derivation::Branch {
                branch,
                left,
                right,
            } => {
                let (lm, rm) = daughter_marks(branch.schema);
                CorpusNode::Node {
                    label: branch.mother.label(),
                    left: (lm, Box::new(left.to_corpus_node())),
                    right: (rm, Box::new(right.to_corpus_node())),
                }
            }
        }
    }
}

fn daughter_marks(schema: SchemaId) -> (DaughterMark, DaughterMark) {
    let other = if schema.is_complement() {
        DaughterMark::Complement
    } else {
        DaughterMark::Plain
    };
    match schema.head_side() {
        HeadSide::Left => (DaughterMark::Head, other),
        HeadSide::Right => (other, DaughterMark::Head),
    }
}

/// A complete binary tree of proper branches over a whole sentence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhraseMarker {
    root: Arc<Derivation>,
}

impl PhraseMarker {
    pub fn new(root: Arc<Derivation>) -> Result<Self> {
        let marker = PhraseMarker { root };
        let span = marker.root_node().span;
        if span.start != 0 || span.is_empty() {
            return Err(Error::Span(format!("root span {} is not a sentence", span)));
        }
        let leaves = marker.leaves();
        for (i, leaf) in leaves.iter().enumerate() {
            if leaf.span != Span::new(i, i + 1) {
                return Err(Error::Span(format!(
                    "leaf {} out of place at token {}",
                    leaf.span, i
                )));
            }
        }
        for b in marker.branches() {
            ProperBranch::new(
                b.mother.clone(),
                b.left.clone(),
                b.right.clone(),
                b.schema,
                None,
                None,
            )?;
        }
        Ok(marker)
    }

    pub fn derivation(&self) -> &Arc<Derivation> {
        &self.root
    }

    pub fn root_node(&self) -> &SyntacticNode {
        self.root.node()
    }

    pub fn token_count(&self) -> usize {
        self.root_node().span.end
    }

    /// Branches in pre-order.
    pub fn branches(&self) -> Vec<&ProperBranch> {
        let mut out = Vec::new();
        self.root.collect_branches(&mut out);
        out
    }

    /// Leaves left to right.
    pub fn leaves(&self) -> Vec<&SyntacticNode> {
        let mut out = Vec::new();
        self.root.collect_leaves(&mut out);
        out
    }

    /// Bracketing in the corpus tree format, e.g.
    /// `(N:-:- (Det:-:- =the) ^(N:+:- =dog))`.
    pub fn bracketed(&self) -> String {
        let mut out = String::new();
        self.root.write_bracketed("", false, &mut out);
        out
    }

    /// The bracketing with every leaf's selected grid, which identifies the
    /// marker uniquely. Used for ordering and deduplication.
    pub fn canonical(&self) -> String {
        let mut out = String::new();
        self.root.write_bracketed("", true, &mut out);
        out
    }

    pub fn to_corpus_node(&self) -> CorpusNode {
        self.root.to_corpus_node()
    }
}

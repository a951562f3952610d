//! Data-driven sentence transformation rules.
//!
//! Each rule pairs tree patterns with child templates: when a pattern
//! matches a sentence, the templates build the child sentences (by cloning,
//! deleting, or recombining captured constituents) and a cue extractor pulls
//! out the word sequence — the cue phrase — that joined the clauses. Cue
//! tables then map the cue, within the rule's syntactic environment, to a
//! rhetorical relation.
//!
//! The default rule set ships embedded in the binary; alternative sets can
//! be loaded from TOML files with the same schema.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::discourse::{EdgeLabel, NodeKind, RhetoricalRelation};
use crate::pattern::{node_at, Bindings, Lexicons, Pattern, PatternError, TreePath};
use crate::surgery::{ensure_sentence, finish_sentence, node_at_mut, remove_paths};
use crate::tree::ParseTree;

/// A compiled, validated set of transformation rules, ordered by priority.
#[derive(Debug, Clone)]
pub struct RuleSet {
    pub version: u32,
    pub rules: Vec<TransformationRule>,
    pub cue_tables: CueTables,
    pub lexicons: Lexicons,
}

/// One transformation rule: patterns to match, templates for the child
/// sentences, and how to read off the cue phrase.
#[derive(Debug, Clone)]
pub struct TransformationRule {
    pub name: String,
    pub priority: u32,
    /// The syntactic environment used to pick a cue table.
    pub environment: String,
    patterns: Vec<Pattern>,
    cue: CueExtractor,
    children: Vec<ChildTemplate>,
    /// When set and the cue is a concessive, the split is emitted as a
    /// coordination of cores instead of a subordination.
    concessive_coordination: bool,
}

/// The outcome of applying a rule to one sentence.
#[derive(Debug, Clone)]
pub struct RuleApplication {
    pub kind: NodeKind,
    /// Lowercased cue phrase; empty when the rule extracts none.
    pub cue: String,
    pub children: Vec<(EdgeLabel, ParseTree)>,
}

#[derive(Debug, Clone)]
struct ChildTemplate {
    edge: EdgeLabel,
    build: Builder,
}

/// How a child sentence is assembled from the match captures.
#[derive(Debug, Clone)]
enum Builder {
    /// The captured subtree, wrapped as a sentence.
    Subtree(String),
    /// The whole sentence minus the captured subtrees.
    Without(Vec<String>),
    /// The whole sentence with one captured subtree swapped for another.
    Replace { target: String, replacement: String },
    /// A relative clause body recombined with its head noun phrase: the
    /// head fills the subject gap if the body lacks a subject, otherwise
    /// the object position of its deepest verb phrase.
    RelClause { head: String, body: String },
    /// Every clause-level child (`S`, `SINV`, `SQ`) of the captured node,
    /// each as its own child sentence.
    Clauses(String),
}

/// How the cue phrase is read off a match.
#[derive(Debug, Clone)]
enum CueExtractor {
    /// No cue; the environment's default relation decides.
    None,
    /// The yield of a captured node.
    Yield(String),
    /// The yield of one captured node minus the token span of another —
    /// e.g. a subordinate clause minus its body leaves the conjunction.
    Diff { outer: String, inner: String },
    /// The first verb token under a captured node.
    FirstVerb(String),
}

/// Cue tables, one per syntactic environment.
#[derive(Debug, Clone, Default)]
pub struct CueTables {
    tables: HashMap<String, CueTable>,
}

#[derive(Debug, Clone, Default)]
struct CueTable {
    default: Option<RhetoricalRelation>,
    cues: HashMap<String, RhetoricalRelation>,
}

impl CueTables {
    /// Maps a cue phrase to a rhetorical relation within an environment.
    ///
    /// An empty cue is always `Unknown`. A known cue wins; an unknown cue
    /// falls back to the environment's default, and to `Unknown` when the
    /// environment has none (or no table at all).
    pub fn classify(&self, cue: &str, environment: &str) -> RhetoricalRelation {
        let cue = cue.trim().to_lowercase();
        if cue.is_empty() {
            return RhetoricalRelation::Unknown;
        }
        let Some(table) = self.tables.get(environment) else {
            return RhetoricalRelation::Unknown;
        };
        table
            .cues
            .get(&cue)
            .copied()
            .or(table.default)
            .unwrap_or(RhetoricalRelation::Unknown)
    }

    /// The environments that have a table.
    pub fn environments(&self) -> impl Iterator<Item = &str> {
        self.tables.keys().map(String::as_str)
    }
}

/// A failure while applying a matched rule to a sentence.
#[derive(Debug, Error)]
pub enum RuleError {
    #[error("capture `{name}` was not bound by the matched pattern")]
    MissingCapture { name: String },
    #[error("child template produced an empty sentence")]
    EmptyChild,
    #[error("child sentence has {child} tokens, parent only {parent}; split must shrink")]
    ChildNotSmaller { child: usize, parent: usize },
    #[error("rule produced {got} child sentence(s); at least 2 required")]
    TooFewChildren { got: usize },
    #[error("clause body has no verb phrase to recombine with")]
    NoClauseBody,
}

/// A failure while loading or validating a rule file.
#[derive(Debug, Error)]
pub enum RuleLoadError {
    #[error("cannot read rule file: {0}")]
    Io(#[from] std::io::Error),
    #[error("rule file is not valid TOML: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("rule {rule}: bad pattern: {source}")]
    BadPattern {
        rule: String,
        #[source]
        source: PatternError,
    },
    #[error("rules {first} and {second} share priority {priority}")]
    DuplicatePriority { priority: u32, first: String, second: String },
    #[error("rule {rule} uses capture `{capture}`, which pattern `{pattern}` does not bind")]
    UnknownCapture { rule: String, capture: String, pattern: String },
    #[error("rule {rule} references lexicon `{lexicon}`, which is not defined")]
    UnknownLexicon { rule: String, lexicon: String },
    #[error("rule {rule}: bad template `{expr}`: {message}")]
    BadTemplate { rule: String, expr: String, message: String },
    #[error("two cue tables for environment `{environment}`")]
    DuplicateCueTable { environment: String },
}

// ── Raw TOML schema ─────────────────────────────────────────────────

#[derive(Deserialize)]
struct RawRuleFile {
    version: u32,
    #[serde(default)]
    lexicons: HashMap<String, Vec<String>>,
    #[serde(default, rename = "rules")]
    rules: Vec<RawRule>,
    #[serde(default, rename = "cue_tables")]
    cue_tables: Vec<RawCueTable>,
}

#[derive(Deserialize)]
struct RawRule {
    name: String,
    priority: u32,
    environment: String,
    patterns: Vec<String>,
    #[serde(default)]
    cue: Option<String>,
    #[serde(default)]
    concessive_coordination: bool,
    children: Vec<RawChild>,
}

#[derive(Deserialize)]
struct RawChild {
    edge: EdgeLabel,
    build: String,
}

#[derive(Deserialize)]
struct RawCueTable {
    environment: String,
    #[serde(default)]
    default: Option<RhetoricalRelation>,
    #[serde(default)]
    cues: HashMap<String, RhetoricalRelation>,
}

const EMBEDDED_RULES: &str = include_str!("../data/rules.toml");

impl RuleSet {
    /// The rule set shipped with the crate.
    pub fn embedded_default() -> Result<RuleSet, RuleLoadError> {
        RuleSet::from_toml_str(EMBEDDED_RULES)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<RuleSet, RuleLoadError> {
        RuleSet::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn from_toml_str(text: &str) -> Result<RuleSet, RuleLoadError> {
        let raw: RawRuleFile = toml::from_str(text)?;
        compile(raw)
    }

    /// The rule with the given name, if any.
    pub fn rule(&self, name: &str) -> Option<&TransformationRule> {
        self.rules.iter().find(|r| r.name == name)
    }

    /// One lexicon as a set of lowercase entries; empty set when missing.
    pub fn lexicon(&self, name: &str) -> std::collections::HashSet<String> {
        self.lexicons.get(name).cloned().unwrap_or_default()
    }
}

fn compile(raw: RawRuleFile) -> Result<RuleSet, RuleLoadError> {
    let lexicons: Lexicons = raw
        .lexicons
        .into_iter()
        .map(|(name, words)| (name, words.into_iter().map(|w| w.to_lowercase()).collect()))
        .collect();

    let mut rules = Vec::with_capacity(raw.rules.len());
    for raw_rule in raw.rules {
        rules.push(compile_rule(raw_rule, &lexicons)?);
    }
    rules.sort_by_key(|r: &TransformationRule| r.priority);
    for pair in rules.windows(2) {
        if pair[0].priority == pair[1].priority {
            return Err(RuleLoadError::DuplicatePriority {
                priority: pair[0].priority,
                first: pair[0].name.clone(),
                second: pair[1].name.clone(),
            });
        }
    }

    let mut tables = HashMap::new();
    for raw_table in raw.cue_tables {
        let table = CueTable {
            default: raw_table.default,
            cues: raw_table
                .cues
                .into_iter()
                .map(|(cue, rel)| (cue.to_lowercase(), rel))
                .collect(),
        };
        if tables.insert(raw_table.environment.clone(), table).is_some() {
            return Err(RuleLoadError::DuplicateCueTable { environment: raw_table.environment });
        }
    }

    Ok(RuleSet { version: raw.version, rules, cue_tables: CueTables { tables }, lexicons })
}

fn compile_rule(raw: RawRule, lexicons: &Lexicons) -> Result<TransformationRule, RuleLoadError> {
    let mut patterns = Vec::with_capacity(raw.patterns.len());
    for source in &raw.patterns {
        let pattern = Pattern::parse(source).map_err(|source| RuleLoadError::BadPattern {
            rule: raw.name.clone(),
            source,
        })?;
        for lexicon in pattern.lexicon_names() {
            if !lexicons.contains_key(lexicon) {
                return Err(RuleLoadError::UnknownLexicon {
                    rule: raw.name.clone(),
                    lexicon: lexicon.to_string(),
                });
            }
        }
        patterns.push(pattern);
    }

    let cue = match raw.cue.as_deref() {
        None | Some("none") => CueExtractor::None,
        Some(expr) => parse_cue(expr).map_err(|message| RuleLoadError::BadTemplate {
            rule: raw.name.clone(),
            expr: expr.to_string(),
            message,
        })?,
    };

    let mut children = Vec::with_capacity(raw.children.len());
    for raw_child in &raw.children {
        let build =
            parse_builder(&raw_child.build).map_err(|message| RuleLoadError::BadTemplate {
                rule: raw.name.clone(),
                expr: raw_child.build.clone(),
                message,
            })?;
        children.push(ChildTemplate { edge: raw_child.edge, build });
    }
    if children.is_empty() {
        return Err(RuleLoadError::BadTemplate {
            rule: raw.name,
            expr: String::new(),
            message: "rule has no child templates".into(),
        });
    }

    // Every capture a template or the cue extractor reads must be bound by
    // every pattern, so apply() cannot fail on a missing capture at runtime.
    let mut required: Vec<&str> = Vec::new();
    for template in &children {
        template.build.captures(&mut required);
    }
    cue.captures(&mut required);
    for pattern in &patterns {
        let bound = pattern.capture_names();
        for name in &required {
            if !bound.contains(name) {
                return Err(RuleLoadError::UnknownCapture {
                    rule: raw.name,
                    capture: name.to_string(),
                    pattern: pattern.source().to_string(),
                });
            }
        }
    }

    Ok(TransformationRule {
        name: raw.name,
        priority: raw.priority,
        environment: raw.environment,
        patterns,
        cue,
        children,
        concessive_coordination: raw.concessive_coordination,
    })
}

fn parse_cue(expr: &str) -> Result<CueExtractor, String> {
    let mut parts = expr.split(':');
    let kind = parts.next().unwrap_or_default();
    let args: Vec<&str> = parts.collect();
    match (kind, args.as_slice()) {
        ("yield", [name]) if !name.is_empty() => Ok(CueExtractor::Yield(name.to_string())),
        ("diff", [outer, inner]) if !outer.is_empty() && !inner.is_empty() => {
            Ok(CueExtractor::Diff { outer: outer.to_string(), inner: inner.to_string() })
        }
        ("verb", [name]) if !name.is_empty() => Ok(CueExtractor::FirstVerb(name.to_string())),
        _ => Err("expected none, yield:CAP, diff:OUTER:INNER, or verb:CAP".into()),
    }
}

fn parse_builder(expr: &str) -> Result<Builder, String> {
    let mut parts = expr.split(':');
    let kind = parts.next().unwrap_or_default();
    let args: Vec<&str> = parts.collect();
    match (kind, args.as_slice()) {
        ("subtree", [name]) if !name.is_empty() => Ok(Builder::Subtree(name.to_string())),
        ("without", [list]) if !list.is_empty() => {
            let names: Vec<String> = list.split(',').map(str::to_string).collect();
            if names.iter().any(String::is_empty) {
                return Err("empty capture name in without list".into());
            }
            Ok(Builder::Without(names))
        }
        ("replace", [target, replacement]) if !target.is_empty() && !replacement.is_empty() => {
            Ok(Builder::Replace {
                target: target.to_string(),
                replacement: replacement.to_string(),
            })
        }
        ("relclause", [head, body]) if !head.is_empty() && !body.is_empty() => {
            Ok(Builder::RelClause { head: head.to_string(), body: body.to_string() })
        }
        ("clauses", [name]) if !name.is_empty() => Ok(Builder::Clauses(name.to_string())),
        _ => Err(
            "expected subtree:CAP, without:CAP[,CAP...], replace:TARGET:REPLACEMENT, \
             relclause:HEAD:BODY, or clauses:CAP"
                .into(),
        ),
    }
}

impl Builder {
    fn captures<'b>(&'b self, out: &mut Vec<&'b str>) {
        match self {
            Builder::Subtree(name) | Builder::Clauses(name) => out.push(name),
            Builder::Without(names) => out.extend(names.iter().map(String::as_str)),
            Builder::Replace { target, replacement } => {
                out.push(target);
                out.push(replacement);
            }
            Builder::RelClause { head, body } => {
                out.push(head);
                out.push(body);
            }
        }
    }
}

impl CueExtractor {
    fn captures<'c>(&'c self, out: &mut Vec<&'c str>) {
        match self {
            CueExtractor::None => {}
            CueExtractor::Yield(name) | CueExtractor::FirstVerb(name) => out.push(name),
            CueExtractor::Diff { outer, inner } => {
                out.push(outer);
                out.push(inner);
            }
        }
    }

    fn extract(&self, sentence: &ParseTree, binds: &Bindings) -> Result<String, RuleError> {
        match self {
            CueExtractor::None => Ok(String::new()),
            CueExtractor::Yield(name) => {
                let node = node_at(sentence, resolve(binds, name)?);
                Ok(join_lowercase(node.tokens().iter().map(|t| t.text.as_str())))
            }
            CueExtractor::Diff { outer, inner } => {
                let outer_node = node_at(sentence, resolve(binds, outer)?);
                let inner_node = node_at(sentence, resolve(binds, inner)?);
                let inner_tokens = inner_node.tokens();
                let (Some(first), Some(last)) = (inner_tokens.first(), inner_tokens.last())
                else {
                    return Ok(join_lowercase(
                        outer_node.tokens().iter().map(|t| t.text.as_str()),
                    ));
                };
                let (lo, hi) = (first.index, last.index);
                Ok(join_lowercase(
                    outer_node
                        .tokens()
                        .iter()
                        .filter(|t| t.index < lo || t.index > hi)
                        .map(|t| t.text.as_str()),
                ))
            }
            CueExtractor::FirstVerb(name) => {
                let node = node_at(sentence, resolve(binds, name)?);
                fn first_verb(node: &ParseTree) -> Option<&str> {
                    if node.label.starts_with("VB") {
                        return node.token.as_ref().map(|t| t.text.as_str());
                    }
                    node.children.iter().find_map(first_verb)
                }
                Ok(first_verb(node).map(str::to_lowercase).unwrap_or_default())
            }
        }
    }
}

fn join_lowercase<'a>(words: impl Iterator<Item = &'a str>) -> String {
    words.map(str::to_lowercase).collect::<Vec<_>>().join(" ")
}

fn resolve<'b>(binds: &'b Bindings, name: &str) -> Result<&'b TreePath, RuleError> {
    binds.get(name).ok_or_else(|| RuleError::MissingCapture { name: name.to_string() })
}

impl TransformationRule {
    /// Tries the rule's patterns in order; the first that matches anywhere
    /// (topmost-leftmost) wins.
    pub fn try_match(&self, sentence: &ParseTree, lexicons: &Lexicons) -> Option<Bindings> {
        self.patterns.iter().find_map(|p| p.find_first(sentence, lexicons))
    }

    /// Builds the child sentences and cue phrase for a successful match.
    pub fn apply(
        &self,
        sentence: &ParseTree,
        binds: &Bindings,
        lexicons: &Lexicons,
    ) -> Result<RuleApplication, RuleError> {
        let parent_tokens = sentence.token_count();
        let mut children: Vec<(EdgeLabel, ParseTree)> = Vec::new();
        for template in &self.children {
            match &template.build {
                Builder::Clauses(name) => {
                    let node = node_at(sentence, resolve(binds, name)?);
                    for child in &node.children {
                        if matches!(child.label.as_str(), "S" | "SINV" | "SQ") {
                            children
                                .push((template.edge, finish_sentence(child.clone())));
                        }
                    }
                }
                other => children.push((template.edge, build_child(sentence, binds, other)?)),
            }
        }

        if children.len() < 2 {
            return Err(RuleError::TooFewChildren { got: children.len() });
        }
        for (_, child) in &children {
            let tokens = child.token_count();
            if tokens == 0 {
                return Err(RuleError::EmptyChild);
            }
            if tokens >= parent_tokens {
                return Err(RuleError::ChildNotSmaller { child: tokens, parent: parent_tokens });
            }
        }

        let cue = self.cue.extract(sentence, binds)?;
        let concessive = self.concessive_coordination
            && lexicons.get("concessives").is_some_and(|set| set.contains(&cue));
        let kind = if concessive {
            for (edge, _) in &mut children {
                *edge = EdgeLabel::Core;
            }
            NodeKind::Coordination
        } else if children.iter().any(|(edge, _)| *edge == EdgeLabel::Context) {
            NodeKind::Subordination
        } else {
            NodeKind::Coordination
        };
        Ok(RuleApplication { kind, cue, children })
    }
}

fn build_child(
    sentence: &ParseTree,
    binds: &Bindings,
    builder: &Builder,
) -> Result<ParseTree, RuleError> {
    match builder {
        Builder::Subtree(name) => {
            let subtree = node_at(sentence, resolve(binds, name)?).clone();
            Ok(finish_sentence(ensure_sentence(subtree)))
        }
        Builder::Without(names) => {
            let paths: Vec<TreePath> = names
                .iter()
                .map(|name| resolve(binds, name).cloned())
                .collect::<Result<_, _>>()?;
            let mut tree = sentence.clone();
            remove_paths(&mut tree, &paths);
            Ok(finish_sentence(tree))
        }
        Builder::Replace { target, replacement } => {
            let replacement_tree = node_at(sentence, resolve(binds, replacement)?).clone();
            let target_path = resolve(binds, target)?.clone();
            let mut tree = sentence.clone();
            *node_at_mut(&mut tree, &target_path) = replacement_tree;
            Ok(finish_sentence(tree))
        }
        Builder::RelClause { head, body } => {
            let head_tree = node_at(sentence, resolve(binds, head)?).clone();
            let body_tree = node_at(sentence, resolve(binds, body)?).clone();
            recombine_relative(head_tree, body_tree)
        }
        Builder::Clauses(_) => unreachable!("clause templates are expanded by apply()"),
    }
}

/// Turns a relative clause body plus its head noun phrase into a standalone
/// sentence. A body without a subject noun phrase gets the head as subject;
/// otherwise the head fills the object gap of the deepest verb phrase.
fn recombine_relative(head: ParseTree, mut body: ParseTree) -> Result<ParseTree, RuleError> {
    let vp_idx = body
        .children
        .iter()
        .position(|c| c.label == "VP")
        .ok_or(RuleError::NoClauseBody)?;
    let has_subject = body.children[..vp_idx].iter().any(|c| c.label == "NP");
    if has_subject {
        let mut path = Vec::new();
        {
            let mut cursor = &body.children[vp_idx];
            while let Some(i) = cursor.children.iter().rposition(|c| c.label == "VP") {
                path.push(i);
                cursor = &cursor.children[i];
            }
        }
        let mut target = &mut body.children[vp_idx];
        for i in path {
            target = &mut target.children[i];
        }
        target.children.push(head);
    } else {
        body.children.insert(0, head);
    }
    Ok(finish_sentence(ensure_sentence(body)))
}

impl fmt::Display for TransformationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (priority {}, {})", self.name, self.priority, self.environment)
    }
}

//! A small declarative pattern language over constituency trees.
//!
//! Transformation rules are shipped as data, so their structural conditions
//! need a textual form. The language is a compact subset of the tregex
//! family:
//!
//! ```text
//! S=snt <1 (SBAR=sub < (S=inner < NP < VP) $+ ,=comma) < NP < VP
//! ```
//!
//! Node matchers:
//! * `NP` / `VB|VBD|VBZ` — label match (alternation with `|`)
//! * `__`               — any node
//! * `"that"`           — leaf whose token equals the text (case-insensitive)
//! * `!"that"`          — leaf whose token differs from the text
//! * `@speech_verbs`    — leaf whose lowercased token is in a named lexicon
//!
//! Relations, written after a node and applying to it (all must hold):
//! * `< P`  — some child matches P          * `<1 P` — the first child matches
//! * `<- P` — the last child matches        * `<< P` — some descendant matches
//! * `$+ P` — the next sibling matches      * `$++ P` — some later sibling matches
//! * `!< P` — no child matches P
//!
//! `=name` after a matcher captures the matched node's path. Matching
//! backtracks across candidate children, so a failed later constraint can
//! revisit an earlier choice.
//!
//! Preterminals are stored as single leaf nodes, so their token doubles as
//! a virtual child: `VBD < "said"` matches a `(VBD said)` leaf, and a
//! capture on the word binds the preterminal itself.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::tree::ParseTree;

/// Path of child indices from the tree root to a node.
pub type TreePath = Vec<usize>;

/// Named token lists referenced by `@name` matchers. Entries are lowercase.
pub type Lexicons = HashMap<String, HashSet<String>>;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("pattern error at token {pos}: {message}")]
pub struct PatternError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Matcher {
    Any,
    Labels(Vec<String>),
    Text(String),
    NotText(String),
    Lexicon(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Relation {
    Child,
    FirstChild,
    LastChild,
    Descendant,
    NextSibling,
    FollowingSibling,
    NoChild,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct NodePat {
    matcher: Matcher,
    capture: Option<String>,
    constraints: Vec<(Relation, NodePat)>,
}

/// A compiled tree pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    root: NodePat,
    source: String,
}

/// Capture results of a successful match: name → path from the tree root.
#[derive(Debug, Clone, Default)]
pub struct Bindings {
    entries: Vec<(String, TreePath)>,
}

impl Bindings {
    pub fn get(&self, name: &str) -> Option<&TreePath> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    fn mark(&self) -> usize {
        self.entries.len()
    }

    fn rollback(&mut self, mark: usize) {
        self.entries.truncate(mark);
    }

    fn bind(&mut self, name: &str, path: TreePath) {
        self.entries.push((name.to_string(), path));
    }
}

/// Resolves a path against a tree. Panics on out-of-range paths, which can
/// only happen if a path is used against a different tree than it came from.
pub fn node_at<'t>(root: &'t ParseTree, path: &[usize]) -> &'t ParseTree {
    let mut node = root;
    for &i in path {
        node = &node.children[i];
    }
    node
}

impl Pattern {
    pub fn parse(source: &str) -> Result<Pattern, PatternError> {
        let tokens = lex(source)?;
        let mut parser = Parser { tokens, pos: 0 };
        let root = parser.parse_node()?;
        if parser.pos != parser.tokens.len() {
            return Err(PatternError {
                pos: parser.pos,
                message: "unexpected trailing tokens".into(),
            });
        }
        Ok(Pattern { root, source: source.to_string() })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// All capture names the pattern can bind.
    pub fn capture_names(&self) -> Vec<&str> {
        fn walk<'p>(pat: &'p NodePat, out: &mut Vec<&'p str>) {
            if let Some(name) = &pat.capture {
                out.push(name);
            }
            for (_, sub) in &pat.constraints {
                walk(sub, out);
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    /// All lexicon names the pattern references with `@name` matchers.
    pub fn lexicon_names(&self) -> Vec<&str> {
        fn walk<'p>(pat: &'p NodePat, out: &mut Vec<&'p str>) {
            if let Matcher::Lexicon(name) = &pat.matcher {
                out.push(name);
            }
            for (_, sub) in &pat.constraints {
                walk(sub, out);
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    /// Finds the first match in pre-order (topmost, then leftmost) and
    /// returns its bindings.
    pub fn find_first(&self, tree: &ParseTree, lexicons: &Lexicons) -> Option<Bindings> {
        // Pre-order traversal: depth-first, left to right.
        let mut paths = Vec::new();
        let mut stack = vec![TreePath::new()];
        while let Some(path) = stack.pop() {
            paths.push(path.clone());
            let node = node_at(tree, &path);
            for i in (0..node.children.len()).rev() {
                let mut child = path.clone();
                child.push(i);
                stack.push(child);
            }
        }
        for path in paths {
            let mut binds = Bindings::default();
            if match_node(tree, &path, &self.root, lexicons, &mut binds) {
                return Some(binds);
            }
        }
        None
    }

    /// Whether the pattern matches anywhere in the tree.
    pub fn matches(&self, tree: &ParseTree, lexicons: &Lexicons) -> bool {
        self.find_first(tree, lexicons).is_some()
    }
}

/// Matches a word-level matcher against a bare token. Label matchers never
/// match words.
fn word_matches(matcher: &Matcher, text: &str, lexicons: &Lexicons) -> bool {
    match matcher {
        Matcher::Any => true,
        Matcher::Labels(_) => false,
        Matcher::Text(t) => text.eq_ignore_ascii_case(t),
        Matcher::NotText(t) => !text.eq_ignore_ascii_case(t),
        Matcher::Lexicon(name) => lexicons
            .get(name)
            .is_some_and(|set| set.contains(&text.to_lowercase())),
    }
}

fn matcher_matches(matcher: &Matcher, node: &ParseTree, lexicons: &Lexicons) -> bool {
    match matcher {
        Matcher::Any => true,
        Matcher::Labels(labels) => labels.iter().any(|l| l == &node.label),
        Matcher::Text(text) => node
            .token
            .as_ref()
            .is_some_and(|t| t.text.eq_ignore_ascii_case(text)),
        Matcher::NotText(text) => node
            .token
            .as_ref()
            .is_some_and(|t| !t.text.eq_ignore_ascii_case(text)),
        Matcher::Lexicon(name) => node.token.as_ref().is_some_and(|t| {
            lexicons
                .get(name)
                .is_some_and(|set| set.contains(&t.text.to_lowercase()))
        }),
    }
}

fn match_node(
    root: &ParseTree,
    path: &TreePath,
    pat: &NodePat,
    lexicons: &Lexicons,
    binds: &mut Bindings,
) -> bool {
    let node = node_at(root, path);
    if !matcher_matches(&pat.matcher, node, lexicons) {
        return false;
    }
    let mark = binds.mark();
    if let Some(name) = &pat.capture {
        binds.bind(name, path.clone());
    }
    if solve(root, path, &pat.constraints, 0, lexicons, binds) {
        true
    } else {
        binds.rollback(mark);
        false
    }
}

fn solve(
    root: &ParseTree,
    path: &TreePath,
    constraints: &[(Relation, NodePat)],
    idx: usize,
    lexicons: &Lexicons,
    binds: &mut Bindings,
) -> bool {
    let Some((relation, sub)) = constraints.get(idx) else {
        return true;
    };
    let node = node_at(root, path);
    if node.is_leaf() {
        match relation {
            // Sibling relations look at the parent and work as usual.
            Relation::NextSibling | Relation::FollowingSibling => {}
            Relation::NoChild => {
                let word_hit = node.token.as_ref().is_some_and(|token| {
                    sub.constraints.is_empty()
                        && word_matches(&sub.matcher, &token.text, lexicons)
                });
                if word_hit {
                    return false;
                }
                return solve(root, path, constraints, idx + 1, lexicons, binds);
            }
            _ => {
                // Downward relation on a preterminal: the token is its only
                // (virtual) child. A capture binds the preterminal's path.
                let Some(token) = node.token.as_ref() else {
                    return false;
                };
                if sub.constraints.is_empty()
                    && word_matches(&sub.matcher, &token.text, lexicons)
                {
                    let mark = binds.mark();
                    if let Some(name) = &sub.capture {
                        binds.bind(name, path.clone());
                    }
                    if solve(root, path, constraints, idx + 1, lexicons, binds) {
                        return true;
                    }
                    binds.rollback(mark);
                }
                return false;
            }
        }
    }
    let candidates: Vec<TreePath> = match relation {
        Relation::Child => (0..node.children.len())
            .map(|i| extend(path, i))
            .collect(),
        Relation::FirstChild => {
            if node.children.is_empty() {
                vec![]
            } else {
                vec![extend(path, 0)]
            }
        }
        Relation::LastChild => {
            if node.children.is_empty() {
                vec![]
            } else {
                vec![extend(path, node.children.len() - 1)]
            }
        }
        Relation::Descendant => {
            let mut out = Vec::new();
            collect_descendants(node, path, &mut out);
            out
        }
        Relation::NextSibling => sibling_paths(root, path, true),
        Relation::FollowingSibling => sibling_paths(root, path, false),
        Relation::NoChild => {
            // Negation: probe children, discard any bindings.
            let mark = binds.mark();
            for i in 0..node.children.len() {
                if match_node(root, &extend(path, i), sub, lexicons, binds) {
                    binds.rollback(mark);
                    return false;
                }
            }
            binds.rollback(mark);
            return solve(root, path, constraints, idx + 1, lexicons, binds);
        }
    };
    for cand in candidates {
        let mark = binds.mark();
        if match_node(root, &cand, sub, lexicons, binds)
            && solve(root, path, constraints, idx + 1, lexicons, binds)
        {
            return true;
        }
        binds.rollback(mark);
    }
    false
}

fn extend(path: &TreePath, idx: usize) -> TreePath {
    let mut p = path.clone();
    p.push(idx);
    p
}

fn collect_descendants(node: &ParseTree, path: &TreePath, out: &mut Vec<TreePath>) {
    for (i, child) in node.children.iter().enumerate() {
        let p = extend(path, i);
        out.push(p.clone());
        collect_descendants(child, &p, out);
    }
}

fn sibling_paths(root: &ParseTree, path: &TreePath, immediate_only: bool) -> Vec<TreePath> {
    if path.is_empty() {
        return vec![];
    }
    let parent_path = &path[..path.len() - 1];
    let my_idx = *path.last().unwrap();
    let parent = node_at(root, parent_path);
    let mut out = Vec::new();
    for i in (my_idx + 1)..parent.children.len() {
        let mut p = parent_path.to_vec();
        p.push(i);
        out.push(p);
        if immediate_only {
            break;
        }
    }
    out
}

// ── Lexing and parsing ──────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Rel(Relation),
    Atom(String),
}

fn lex(source: &str) -> Result<Vec<Tok>, PatternError> {
    let chars: Vec<char> = source.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        match c {
            '(' => {
                out.push(Tok::Open);
                i += 1;
            }
            ')' => {
                out.push(Tok::Close);
                i += 1;
            }
            '<' => {
                match chars.get(i + 1) {
                    Some('<') => {
                        out.push(Tok::Rel(Relation::Descendant));
                        i += 2;
                    }
                    Some('1') => {
                        out.push(Tok::Rel(Relation::FirstChild));
                        i += 2;
                    }
                    // "<-" only when delimited, so labels like -LRB- stay intact.
                    Some('-')
                        if matches!(chars.get(i + 2), None | Some(' ') | Some('(')) =>
                    {
                        out.push(Tok::Rel(Relation::LastChild));
                        i += 2;
                    }
                    _ => {
                        out.push(Tok::Rel(Relation::Child));
                        i += 1;
                    }
                }
            }
            '$' => match chars.get(i + 1) {
                Some('+') if chars.get(i + 2) == Some(&'+') => {
                    out.push(Tok::Rel(Relation::FollowingSibling));
                    i += 3;
                }
                Some('+') => {
                    out.push(Tok::Rel(Relation::NextSibling));
                    i += 2;
                }
                other => {
                    return Err(PatternError {
                        pos: out.len(),
                        message: format!("expected $+ or $++, found {other:?}"),
                    })
                }
            },
            '!' if chars.get(i + 1) == Some(&'<') => {
                out.push(Tok::Rel(Relation::NoChild));
                i += 2;
            }
            _ => {
                let start = i;
                while i < chars.len()
                    && !chars[i].is_whitespace()
                    && chars[i] != '('
                    && chars[i] != ')'
                {
                    i += 1;
                }
                out.push(Tok::Atom(chars[start..i].iter().collect()));
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn parse_node(&mut self) -> Result<NodePat, PatternError> {
        let (matcher, capture) = self.parse_matcher()?;
        let mut constraints = Vec::new();
        while let Some(Tok::Rel(rel)) = self.tokens.get(self.pos).cloned() {
            self.pos += 1;
            let operand = self.parse_operand()?;
            constraints.push((rel, operand));
        }
        Ok(NodePat { matcher, capture, constraints })
    }

    fn parse_operand(&mut self) -> Result<NodePat, PatternError> {
        match self.tokens.get(self.pos) {
            Some(Tok::Open) => {
                self.pos += 1;
                let node = self.parse_node()?;
                match self.tokens.get(self.pos) {
                    Some(Tok::Close) => {
                        self.pos += 1;
                        Ok(node)
                    }
                    _ => Err(self.err("expected )")),
                }
            }
            Some(Tok::Atom(_)) => {
                let (matcher, capture) = self.parse_matcher()?;
                Ok(NodePat { matcher, capture, constraints: vec![] })
            }
            _ => Err(self.err("expected a node pattern")),
        }
    }

    fn parse_matcher(&mut self) -> Result<(Matcher, Option<String>), PatternError> {
        let Some(Tok::Atom(atom)) = self.tokens.get(self.pos).cloned() else {
            return Err(self.err("expected a matcher"));
        };
        self.pos += 1;
        parse_atom(&atom).map_err(|message| PatternError { pos: self.pos - 1, message })
    }

    fn err(&self, message: &str) -> PatternError {
        PatternError { pos: self.pos, message: message.to_string() }
    }
}

fn parse_atom(atom: &str) -> Result<(Matcher, Option<String>), String> {
    // Split a trailing =name capture, except inside a quoted section.
    let (body, capture) = match atom.rfind('=') {
        Some(eq) if !atom[eq..].contains('"') => {
            let name = &atom[eq + 1..];
            if name.is_empty() {
                return Err("empty capture name".into());
            }
            (&atom[..eq], Some(name.to_string()))
        }
        _ => (atom, None),
    };
    if body.is_empty() {
        return Err("empty matcher".into());
    }
    let matcher = if body == "__" {
        Matcher::Any
    } else if let Some(q) = body.strip_prefix("!\"") {
        let text = q.strip_suffix('"').ok_or("unterminated quote")?;
        Matcher::NotText(text.to_string())
    } else if let Some(q) = body.strip_prefix('"') {
        let text = q.strip_suffix('"').ok_or("unterminated quote")?;
        Matcher::Text(text.to_string())
    } else if let Some(name) = body.strip_prefix('@') {
        Matcher::Lexicon(name.to_string())
    } else {
        Matcher::Labels(body.split('|').map(str::to_string).collect())
    };
    Ok((matcher, capture))
}

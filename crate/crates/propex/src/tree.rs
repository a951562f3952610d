//! Constituency parse trees in Penn Treebank bracketed notation.
//!
//! Trees are the canonical input to the whole pipeline: every later stage
//! (clause splitting, phrase extraction, tuple building) works on these
//! structures rather than on raw text.

use std::fmt;

use thiserror::Error;

/// A single leaf token with its position in the sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    /// 0-based position among the leaves of the containing tree.
    pub index: usize,
}

/// A node in a constituency parse tree. Leaves carry a token and have no
/// children; internal nodes have at least one child and no token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseTree {
    pub label: String,
    pub children: Vec<ParseTree>,
    pub token: Option<Token>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("unbalanced brackets at offset {0}")]
    UnbalancedBrackets(usize),
    #[error("empty node label at offset {0}")]
    EmptyLabel(usize),
    #[error("empty input")]
    EmptyInput,
    #[error("unexpected trailing input at offset {0}")]
    TrailingInput(usize),
    #[error("node at offset {0} mixes a token with bracketed children")]
    MixedContent(usize),
    #[error("node at offset {0} has neither a token nor children")]
    EmptyNode(usize),
    #[error("tree has no leaves")]
    EmptyTree,
}

/// PTB escape sequences and the characters they stand for.
const PTB_ESCAPES: &[(&str, &str)] = &[
    ("-LRB-", "("),
    ("-RRB-", ")"),
    ("-LCB-", "{"),
    ("-RCB-", "}"),
    ("-LSB-", "["),
    ("-RSB-", "]"),
];

/// Renders a raw PTB token for display: escape sequences such as `-LRB-`
/// become their bracket characters, everything else passes through.
pub fn render_token(raw: &str) -> &str {
    for (esc, ch) in PTB_ESCAPES {
        if raw == *esc {
            return ch;
        }
    }
    raw
}

impl ParseTree {
    /// Builds a leaf node. The index is provisional; [`ParseTree::reindex`]
    /// renumbers leaves after structural edits.
    pub fn leaf(label: impl Into<String>, text: impl Into<String>, index: usize) -> Self {
        ParseTree {
            label: label.into(),
            children: Vec::new(),
            token: Some(Token { text: text.into(), index }),
        }
    }

    /// Builds an internal node over the given children.
    pub fn node(label: impl Into<String>, children: Vec<ParseTree>) -> Self {
        ParseTree { label: label.into(), children, token: None }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// All leaf tokens in order.
    pub fn tokens(&self) -> Vec<&Token> {
        let mut out = Vec::new();
        self.collect_tokens(&mut out);
        out
    }

    fn collect_tokens<'a>(&'a self, out: &mut Vec<&'a Token>) {
        if let Some(tok) = &self.token {
            out.push(tok);
        }
        for child in &self.children {
            child.collect_tokens(out);
        }
    }

    pub fn token_count(&self) -> usize {
        if self.token.is_some() {
            1
        } else {
            self.children.iter().map(|c| c.token_count()).sum()
        }
    }

    /// Renumbers leaf indices left to right starting at 0. Call after any
    /// structural edit that moves, copies, or removes leaves.
    pub fn reindex(&mut self) {
        fn walk(node: &mut ParseTree, next: &mut usize) {
            if let Some(tok) = &mut node.token {
                tok.index = *next;
                *next += 1;
            }
            for child in &mut node.children {
                walk(child, next);
            }
        }
        let mut next = 0;
        walk(self, &mut next);
    }

    /// The surface string of the tree: leaf tokens joined by single spaces,
    /// with PTB bracket escapes rendered back to their characters.
    ///
    /// Errors with [`TreeError::EmptyTree`] when the tree has no leaves,
    /// which can only arise from hand-built trees.
    pub fn yield_text(&self) -> Result<String, TreeError> {
        let tokens = self.tokens();
        if tokens.is_empty() {
            return Err(TreeError::EmptyTree);
        }
        Ok(tokens
            .iter()
            .map(|t| render_token(&t.text))
            .collect::<Vec<_>>()
            .join(" "))
    }
}

/// Parses one bracketed tree from a string.
///
/// `ROOT` / `TOP` wrappers and the bare outer bracket pair some corpora use
/// (`( (S ...) )`) are stripped, so the result is the sentence-level tree.
/// The serialization of the result (via `Display`) re-parses to an equal
/// tree.
pub fn parse_ptb(input: &str) -> Result<ParseTree, TreeError> {
    let chars: Vec<char> = input.chars().collect();
    let mut pos = 0;
    skip_ws(&chars, &mut pos);
    if pos == chars.len() {
        return Err(TreeError::EmptyInput);
    }
    let tree = parse_node(&chars, &mut pos, true)?;
    skip_ws(&chars, &mut pos);
    if pos != chars.len() {
        return Err(TreeError::TrailingInput(pos));
    }
    let mut tree = strip_wrappers(tree);
    tree.reindex();
    Ok(tree)
}

fn strip_wrappers(mut tree: ParseTree) -> ParseTree {
    while tree.children.len() == 1
        && (tree.label == "ROOT" || tree.label == "TOP" || tree.label.is_empty())
    {
        tree = tree.children.into_iter().next().unwrap();
    }
    tree
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn read_atom(chars: &[char], pos: &mut usize) -> String {
    let start = *pos;
    while *pos < chars.len() && !chars[*pos].is_whitespace() && chars[*pos] != '(' && chars[*pos] != ')' {
        *pos += 1;
    }
    chars[start..*pos].iter().collect()
}

/// Parses `( LABEL child... )` or `( LABEL token )`. `top_level` relaxes the
/// empty-label rule for the outer wrapper bracket some treebanks emit.
fn parse_node(chars: &[char], pos: &mut usize, top_level: bool) -> Result<ParseTree, TreeError> {
    if chars.get(*pos) != Some(&'(') {
        return Err(TreeError::UnbalancedBrackets(*pos));
    }
    let open_at = *pos;
    *pos += 1;
    skip_ws(chars, pos);
    let label = read_atom(chars, pos);
    skip_ws(chars, pos);

    let mut children = Vec::new();
    let mut token: Option<String> = None;
    loop {
        match chars.get(*pos) {
            None => return Err(TreeError::UnbalancedBrackets(*pos)),
            Some(')') => {
                *pos += 1;
                break;
            }
            Some('(') => {
                if token.is_some() {
                    return Err(TreeError::MixedContent(*pos));
                }
                children.push(parse_node(chars, pos, false)?);
                skip_ws(chars, pos);
            }
            Some(_) => {
                if token.is_some() || !children.is_empty() {
                    return Err(TreeError::MixedContent(*pos));
                }
                token = Some(read_atom(chars, pos));
                skip_ws(chars, pos);
            }
        }
    }

    if label.is_empty() && !(top_level && children.len() == 1 && token.is_none()) {
        return Err(TreeError::EmptyLabel(open_at + 1));
    }
    match token {
        Some(text) => Ok(ParseTree::leaf(label, text, 0)),
        None => {
            if children.is_empty() {
                return Err(TreeError::EmptyNode(open_at));
            }
            Ok(ParseTree::node(label, children))
        }
    }
}

impl fmt::Display for ParseTree {
    /// Canonical bracketed form: `(LABEL child ...)` with single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(tok) = &self.token {
            write!(f, "({} {})", self.label, tok.text)
        } else {
            write!(f, "({}", self.label)?;
            for child in &self.children {
                write!(f, " {child}")?;
            }
            write!(f, ")")
        }
    }
}

impl std::str::FromStr for ParseTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ptb(s)
    }
}

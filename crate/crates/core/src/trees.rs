//! Labeled rooted trees, their text format, and canonical codes.
//!
//! Text grammar:
//!
//! ```text
//! tree  := label | label "(" tree ("," tree)* ")"
//! label := bare | quoted
//! ```
//!
//! Bare labels are non-empty runs of characters other than whitespace,
//! `(`, `)`, `,` and `"`. Anything else (including the empty label) is
//! written as a double-quoted string with `\"` and `\\` escapes. Whitespace
//! between tokens, including newlines, is ignored.

use std::fmt;

use thiserror::Error;

/// A finite ordered tree whose nodes carry string labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledTree {
    pub label: String,
    pub children: Vec<LabeledTree>,
}

/// Whether sibling order is significant when comparing trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Mode {
    Ordered,
    #[default]
    Unordered,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Ordered => "ordered",
            Mode::Unordered => "unordered",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ordered" => Ok(Mode::Ordered),
            "unordered" => Ok(Mode::Unordered),
            other => Err(format!(
                "unknown mode `{other}` (expected ordered|unordered)"
            )),
        }
    }
}

/// Byte encoding of a tree that decides equality under a [`Mode`].
///
/// Codes compare bytewise, so they can be stored in ordered sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    pub mode: Mode,
    pub code: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeParseError {
    #[error("empty input")]
    Empty,
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

impl LabeledTree {
    pub fn leaf(label: impl Into<String>) -> Self {
        LabeledTree {
            label: label.into(),
            children: Vec::new(),
        }
    }

    pub fn node(label: impl Into<String>, children: Vec<LabeledTree>) -> Self {
        LabeledTree {
            label: label.into(),
            children,
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(LabeledTree::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(LabeledTree::height)
            .max()
            .unwrap_or(0)
    }

    /// Largest number of children of any node.
    pub fn max_arity(&self) -> usize {
        self.children
            .iter()
            .map(LabeledTree::max_arity)
            .max()
            .unwrap_or(0)
            .max(self.children.len())
    }

    /// True iff every node has at most `k` children.
    ///
    /// Child sequences are contiguous by construction, so the node positions
    /// always form a prefix-closed, left-sibling-closed subset of `[k]*`; only
    /// the arity needs checking.
    pub fn is_k_tree(&self, k: usize) -> bool {
        self.children.len() <= k && self.children.iter().all(|c| c.is_k_tree(k))
    }

    pub fn canonical_code(&self, mode: Mode) -> CanonicalCode {
        let mut code = Vec::new();
        match mode {
            Mode::Ordered => encode_ordered(self, &mut code),
            Mode::Unordered => code = encode_unordered(self),
        }
        CanonicalCode { mode, code }
    }

    /// The representative of this tree's unordered class: children are
    /// recursively canonicalized and sorted by their unordered codes.
    pub fn canonicalize_unordered(&self) -> LabeledTree {
        let mut children: Vec<(Vec<u8>, LabeledTree)> = self
            .children
            .iter()
            .map(|c| (encode_unordered(c), c.canonicalize_unordered()))
            .collect();
        children.sort_by(|a, b| a.0.cmp(&b.0));
        LabeledTree {
            label: self.label.clone(),
            children: children.into_iter().map(|(_, c)| c).collect(),
        }
    }

    /// Iterates over all labels in preorder.
    pub fn labels(&self) -> impl Iterator<Item = &str> {
        let mut stack = vec![self];
        std::iter::from_fn(move || {
            let node = stack.pop()?;
            stack.extend(node.children.iter().rev());
            Some(node.label.as_str())
        })
    }
}

const OPEN: u8 = b'(';
const CLOSE: u8 = b')';

fn push_label(label: &str, out: &mut Vec<u8>) {
    out.extend_from_slice(&(label.len() as u32).to_be_bytes());
    out.extend_from_slice(label.as_bytes());
}

// `(` len label child* `)`: length-prefixed labels and explicit brackets make
// the encoding injective.
fn encode_ordered(t: &LabeledTree, out: &mut Vec<u8>) {
    out.push(OPEN);
    push_label(&t.label, out);
    for c in &t.children {
        encode_ordered(c, out);
    }
    out.push(CLOSE);
}

fn encode_unordered(t: &LabeledTree) -> Vec<u8> {
    let mut kids: Vec<Vec<u8>> = t.children.iter().map(encode_unordered).collect();
    kids.sort();
    let mut out = Vec::with_capacity(6 + t.label.len() + kids.iter().map(Vec::len).sum::<usize>());
    out.push(OPEN);
    push_label(&t.label, &mut out);
    for k in kids {
        out.extend_from_slice(&k);
    }
    out.push(CLOSE);
    out
}

fn is_bare_char(c: char) -> bool {
    !(c.is_whitespace() || matches!(c, '(' | ')' | ',' | '"'))
}

/// Writes `label` bare when possible, quoted otherwise.
pub fn write_label(out: &mut impl fmt::Write, label: &str) -> fmt::Result {
    if !label.is_empty() && label.chars().all(is_bare_char) {
        out.write_str(label)
    } else {
        out.write_char('"')?;
        for c in label.chars() {
            if c == '"' || c == '\\' {
                out.write_char('\\')?;
            }
            out.write_char(c)?;
        }
        out.write_char('"')
    }
}

pub fn quote_label(label: &str) -> String {
    let mut s = String::new();
    write_label(&mut s, label).expect("writing to a String cannot fail");
    s
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_label(f, &self.label)?;
        if !self.children.is_empty() {
            f.write_str("(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                c.fmt(f)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

pub fn serialize_tree(t: &LabeledTree) -> String {
    t.to_string()
}

pub fn parse_tree(text: &str) -> Result<LabeledTree, TreeParseError> {
    let mut lexer = Lexer::new(text);
    lexer.skip_ws();
    if lexer.peek().is_none() {
        return Err(TreeParseError::Empty);
    }
    let tree = parse_node(&mut lexer)?;
    lexer.skip_ws();
    if lexer.peek().is_some() {
        return Err(lexer.error("trailing input after tree"));
    }
    Ok(tree)
}

impl std::str::FromStr for LabeledTree {
    type Err = TreeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_tree(s)
    }
}

fn parse_node(lx: &mut Lexer<'_>) -> Result<LabeledTree, TreeParseError> {
    // Iterative so that deep chains cannot overflow the stack.
    let mut stack: Vec<LabeledTree> = Vec::new();
    loop {
        lx.skip_ws();
        let label = lx.label()?;
        lx.skip_ws();
        if lx.peek() == Some('(') {
            lx.bump();
            stack.push(LabeledTree::leaf(label));
            continue;
        }
        let mut done = LabeledTree::leaf(label);
        loop {
            let Some(parent) = stack.last_mut() else {
                return Ok(done);
            };
            parent.children.push(done);
            lx.skip_ws();
            match lx.peek() {
                Some(',') => {
                    lx.bump();
                    break;
                }
                Some(')') => {
                    lx.bump();
                    done = stack.pop().expect("non-empty stack");
                }
                Some(c) => return Err(lx.error(&format!("expected `,` or `)`, found `{c}`"))),
                None => return Err(lx.error("unbalanced parentheses: missing `)`")),
            }
        }
    }
}

pub(crate) struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Self::at(text, 1, 1)
    }

    /// A lexer over `text` that reports positions starting at `line:column`.
    pub(crate) fn at(text: &'a str, line: usize, column: usize) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line,
            column,
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    pub(crate) fn error(&self, message: &str) -> TreeParseError {
        TreeParseError::Syntax {
            line: self.line,
            column: self.column,
            message: message.to_string(),
        }
    }

    pub(crate) fn label(&mut self) -> Result<String, TreeParseError> {
        match self.peek() {
            Some('"') => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        Some('"') => return Ok(s),
                        Some('\\') => match self.bump() {
                            Some(c @ ('"' | '\\')) => s.push(c),
                            Some(c) => return Err(self.error(&format!("unknown escape `\\{c}`"))),
                            None => return Err(self.error("unterminated string")),
                        },
                        Some(c) => s.push(c),
                        None => return Err(self.error("unterminated string")),
                    }
                }
            }
            Some(c) if is_bare_char(c) => {
                let mut s = String::new();
                while let Some(c) = self.peek().filter(|&c| is_bare_char(c)) {
                    s.push(c);
                    self.bump();
                }
                Ok(s)
            }
            Some(c) => Err(self.error(&format!("expected a label, found `{c}`"))),
            None => Err(self.error("expected a label, found end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> LabeledTree {
        parse_tree(s).unwrap()
    }

    #[test]
    fn parses_grammar_examples() {
        assert_eq!(t("a"), LabeledTree::leaf("a"));
        assert_eq!(
            t("a(b,c)"),
            LabeledTree::node("a", vec![LabeledTree::leaf("b"), LabeledTree::leaf("c")])
        );
        let e = t("e(a(b),a(b))");
        assert_eq!(e.children.len(), 2);
        assert_eq!(e.children[0], e.children[1]);
    }

    #[test]
    fn quoted_and_empty_labels() {
        let tree = t("\"\"(\"a b\", \"x\\\"y\", \"(\")");
        assert_eq!(tree.label, "");
        assert_eq!(tree.children[0].label, "a b");
        assert_eq!(tree.children[1].label, "x\"y");
        assert_eq!(tree.children[2].label, "(");
        assert_eq!(tree.to_string(), "\"\"(\"a b\",\"x\\\"y\",\"(\")");
        assert_eq!(t(&tree.to_string()), tree);
    }

    #[test]
    fn newline_insensitive() {
        assert_eq!(t("a(\n  b,\n  c\n)\n"), t("a(b,c)"));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_tree(""), Err(TreeParseError::Empty));
        assert_eq!(parse_tree("  \n "), Err(TreeParseError::Empty));
        assert!(matches!(
            parse_tree("a(b"),
            Err(TreeParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_tree("a(b))"),
            Err(TreeParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_tree("a()"),
            Err(TreeParseError::Syntax { .. })
        ));
        match parse_tree("a(\n b c)") {
            Err(TreeParseError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 4)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn serialize_examples() {
        assert_eq!(serialize_tree(&LabeledTree::leaf("a")), "a");
        assert_eq!(serialize_tree(&t("a( b , c )")), "a(b,c)");
    }

    #[test]
    fn sizes() {
        assert_eq!(t("a").size(), 1);
        assert_eq!(t("a(b,c)").size(), 3);
        assert_eq!(t("a(b(c(d)))").size(), 4);
    }

    #[test]
    fn k_trees() {
        assert!(t("a(b,c)").is_k_tree(2));
        assert!(!t("a(b,c,d)").is_k_tree(2));
        assert!(t("a").is_k_tree(1));
        assert!(!t("a(b(c,d))").is_k_tree(1));
    }

    #[test]
    fn codes() {
        let ab = t("a(b,c)");
        let ba = t("a(c,b)");
        assert_eq!(
            ab.canonical_code(Mode::Unordered),
            ba.canonical_code(Mode::Unordered)
        );
        assert_ne!(
            ab.canonical_code(Mode::Ordered),
            ba.canonical_code(Mode::Ordered)
        );
        for mode in [Mode::Ordered, Mode::Unordered] {
            assert_ne!(
                t("a(b)").canonical_code(mode),
                t("a(c)").canonical_code(mode)
            );
        }
        // Label boundaries are unambiguous.
        assert_ne!(
            t("ab(c)").canonical_code(Mode::Ordered),
            t("a(bc)").canonical_code(Mode::Ordered)
        );
        assert_ne!(
            t("a(b(c))").canonical_code(Mode::Ordered),
            t("a(b,c)").canonical_code(Mode::Ordered)
        );
    }

    #[test]
    fn unordered_canonical_form() {
        let x = t("r(b(y,x),a)");
        let y = x.canonicalize_unordered();
        assert_eq!(y.to_string(), "r(a,b(x,y))");
        assert_eq!(
            x.canonical_code(Mode::Unordered),
            y.canonical_code(Mode::Unordered)
        );
    }

    #[test]
    fn deep_chain_parses() {
        let depth = 5_000;
        let text = format!("{}x{}", "a(".repeat(depth), ")".repeat(depth));
        assert_eq!(parse_tree(&text).unwrap().labels().count(), depth + 1);
    }
}

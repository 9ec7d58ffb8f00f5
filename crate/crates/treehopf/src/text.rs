//! The tree text grammar.
//!
//! Nested kinds:  tree := '(' node* ')',  node := label? '(' node* ')',
//! label := 'E' digits. Labels are printed for labeled families,
//! required on every non-root node when M > 1, optional (defaulting to
//! E1) when M = 1, and rejected for T/OT/HOT.
//!
//! Heap kinds: `h:[p2,p3,...]` lists the 1-based parent of nodes
//! 2..=n+1 in heap order; the labeled form lists `(p,Ek)` pairs.
//!
//! Forests: `{...}` (T/LT, components are labeled-root node terms),
//! `[...]` (OT/LOT), and `hf:[...]` where entry i is the 1-based parent
//! of global node i, with 0 marking component roots.
//!
//! Leading and trailing whitespace is trimmed; the grammar itself is
//! whitespace-free. Multiset input is canonicalized while parsing, so
//! any child order is accepted.

use std::fmt;

use crate::error::{Error, ParseError};
use crate::family::{
    CanonicalForest, CanonicalTree, FamilyId, ForestRepr, StructureKind, Subtree, TreeRepr,
};

pub fn parse_tree(family: FamilyId, input: &str) -> Result<CanonicalTree, Error> {
    let trimmed = input.trim();
    let mut p = Parser::new(family, trimmed);
    let tree = match family.structure() {
        StructureKind::Heap => {
            let entries = p.parse_heap_body("h:[")?;
            let mut parents = Vec::with_capacity(entries.len());
            let mut labels = Vec::with_capacity(entries.len());
            for (i, (value, label, offset)) in entries.into_iter().enumerate() {
                if value == 0 || value > i + 1 {
                    return Err(p
                        .error_at(offset, format!("parent must be in 1..={}", i + 1))
                        .into());
                }
                parents.push(value - 1);
                labels.push(label);
            }
            CanonicalTree::new(family, TreeRepr::Heap { parents, labels })?
        }
        _ => {
            p.expect(b'(')?;
            let children = p.parse_children()?;
            CanonicalTree::new(family, TreeRepr::Nested(children))?
        }
    };
    p.finish()?;
    Ok(tree)
}

pub fn parse_forest(family: FamilyId, input: &str) -> Result<CanonicalForest, Error> {
    let trimmed = input.trim();
    let mut p = Parser::new(family, trimmed);
    let forest = match family.structure() {
        StructureKind::Heap => {
            let entries = p.parse_heap_body("hf:[")?;
            let mut parents = Vec::with_capacity(entries.len());
            let mut labels = Vec::with_capacity(entries.len());
            for (i, (value, label, offset)) in entries.into_iter().enumerate() {
                if value > i {
                    return Err(p
                        .error_at(offset, format!("parent must be 0 (root) or in 1..={}", i))
                        .into());
                }
                parents.push(if value == 0 { None } else { Some(value - 1) });
                labels.push(label);
            }
            CanonicalForest::new(family, ForestRepr::Heap { parents, labels })?
        }
        StructureKind::Multiset | StructureKind::Sequence => {
            let (open, close) = if family.structure() == StructureKind::Multiset {
                (b'{', b'}')
            } else {
                (b'[', b']')
            };
            p.expect(open)?;
            let mut comps = Vec::new();
            if p.peek() != Some(close) {
                loop {
                    comps.push(p.parse_subtree()?);
                    if p.peek() == Some(b',') {
                        p.bump();
                    } else {
                        break;
                    }
                }
            }
            p.expect(close)?;
            CanonicalForest::new(family, ForestRepr::Nested(comps))?
        }
    };
    p.finish()?;
    Ok(forest)
}

/// Largest label mentioned anywhere in `input` (`E7` -> 7), for
/// inferring M when no explicit label count is given.
pub fn max_label(input: &str) -> Option<u32> {
    let bytes = input.as_bytes();
    let mut best: Option<u32> = None;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'E' {
            let mut j = i + 1;
            let mut value: u32 = 0;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                value = value
                    .saturating_mul(10)
                    .saturating_add(u32::from(bytes[j] - b'0'));
                j += 1;
            }
            if j > i + 1 {
                best = Some(best.map_or(value, |b| b.max(value)));
            }
            i = j;
        } else {
            i += 1;
        }
    }
    best
}

struct Parser<'a> {
    family: FamilyId,
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(family: FamilyId, text: &'a str) -> Self {
        Parser {
            family,
            text,
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::at(self.text, self.pos, message)
    }

    fn error_at(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError::at(self.text, offset, message)
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.peek() == Some(b) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", b as char)))
        }
    }

    fn expect_str(&mut self, s: &str) -> Result<(), ParseError> {
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            Ok(())
        } else {
            Err(self.error(format!("expected '{s}'")))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos == self.bytes.len() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn parse_number(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        self.text[start..self.pos]
            .parse::<usize>()
            .map_err(|_| self.error_at(start, "number out of range"))
    }

    /// `label?` with the family's labeling rules applied.
    fn parse_label(&mut self) -> Result<u32, ParseError> {
        if self.peek() == Some(b'E') {
            let start = self.pos;
            self.bump();
            let value = self.parse_number()?;
            if !self.family.is_labeled() {
                return Err(self.error_at(
                    start,
                    format!("labels are not allowed in family {}", self.family),
                ));
            }
            let max = self.family.label_count();
            if value < 1 || value as u64 > u64::from(max) {
                return Err(self.error_at(start, format!("label E{value} out of range 1..={max}")));
            }
            Ok(value as u32)
        } else if self.family.is_labeled() && self.family.label_count() > 1 {
            Err(self.error("label required (M > 1)"))
        } else {
            Ok(1)
        }
    }

    fn parse_subtree(&mut self) -> Result<Subtree, ParseError> {
        let label = self.parse_label()?;
        self.expect(b'(')?;
        let children = self.parse_children()?;
        Ok(Subtree { label, children })
    }

    fn parse_children(&mut self) -> Result<Vec<Subtree>, ParseError> {
        let mut children = Vec::new();
        loop {
            match self.peek() {
                Some(b')') => {
                    self.bump();
                    return Ok(children);
                }
                Some(_) => children.push(self.parse_subtree()?),
                None => return Err(self.error("unclosed '('")),
            }
        }
    }

    /// Shared body of `h:[...]` and `hf:[...]`: a comma-separated list
    /// of parent entries, `(parent,label)` pairs for labeled kinds.
    /// Returns `(value, label, offset)` triples.
    fn parse_heap_body(&mut self, head: &str) -> Result<Vec<(usize, u32, usize)>, ParseError> {
        self.expect_str(head)?;
        let mut entries = Vec::new();
        if self.peek() != Some(b']') {
            loop {
                let offset = self.pos;
                let entry = if self.peek() == Some(b'(') {
                    if !self.family.is_labeled() {
                        return Err(
                            self.error(format!("labels are not allowed in family {}", self.family))
                        );
                    }
                    self.bump();
                    let value = self.parse_number()?;
                    self.expect(b',')?;
                    let label = self.parse_label()?;
                    self.expect(b')')?;
                    (value, label, offset)
                } else {
                    let value = self.parse_number()?;
                    if self.family.is_labeled() && self.family.label_count() > 1 {
                        return Err(self.error_at(offset, "(parent,label) pair required (M > 1)"));
                    }
                    (value, 1, offset)
                };
                entries.push(entry);
                if self.peek() == Some(b',') {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(b']')?;
        Ok(entries)
    }
}

fn write_subtree(f: &mut fmt::Formatter<'_>, st: &Subtree, labeled: bool) -> fmt::Result {
    if labeled {
        write!(f, "E{}", st.label)?;
    }
    f.write_str("(")?;
    for c in &st.children {
        write_subtree(f, c, labeled)?;
    }
    f.write_str(")")
}

impl fmt::Display for CanonicalTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labeled = self.family().is_labeled();
        match self.repr() {
            TreeRepr::Nested(children) => {
                f.write_str("(")?;
                for c in children {
                    write_subtree(f, c, labeled)?;
                }
                f.write_str(")")
            }
            TreeRepr::Heap { parents, labels } => {
                f.write_str("h:[")?;
                for (i, p) in parents.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    if labeled {
                        write!(f, "({},E{})", p + 1, labels[i])?;
                    } else {
                        write!(f, "{}", p + 1)?;
                    }
                }
                f.write_str("]")
            }
        }
    }
}

impl fmt::Display for CanonicalForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labeled = self.family().is_labeled();
        match self.repr() {
            ForestRepr::Nested(comps) => {
                let (open, close) = if self.family().structure() == StructureKind::Multiset {
                    ("{", "}")
                } else {
                    ("[", "]")
                };
                f.write_str(open)?;
                for (i, c) in comps.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write_subtree(f, c, labeled)?;
                }
                f.write_str(close)
            }
            ForestRepr::Heap { parents, labels } => {
                f.write_str("hf:[")?;
                for (i, p) in parents.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    let value = p.map_or(0, |p| p + 1);
                    if labeled {
                        write!(f, "({},E{})", value, labels[i])?;
                    } else {
                        write!(f, "{value}")?;
                    }
                }
                f.write_str("]")
            }
        }
    }
}

//! Canonical text form: `P(...)`, `Q(...)` and integer leaves, children
//! separated by commas. Whitespace is ignored when parsing.

use std::fmt;
use std::str::FromStr;

use super::{Arena, Kind, NodeId, PqTree};
use crate::error::{Error, Result};

impl fmt::Display for PqTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        enum Step {
            Open(NodeId),
            Comma,
            Close,
        }
        let mut stack = vec![Step::Open(self.root)];
        while let Some(step) = stack.pop() {
            match step {
                Step::Comma => f.write_str(",")?,
                Step::Close => f.write_str(")")?,
                Step::Open(id) => {
                    let node = self.node(id);
                    match node.kind {
                        Kind::Leaf(v) => write!(f, "{}", v + 1)?,
                        Kind::P | Kind::Q => {
                            f.write_str(if node.kind == Kind::P { "P(" } else { "Q(" })?;
                            stack.push(Step::Close);
                            for (i, &c) in node.children.iter().enumerate().rev() {
                                stack.push(Step::Open(c));
                                if i > 0 {
                                    stack.push(Step::Comma);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.bump();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn pos(&mut self) -> (usize, usize) {
        self.skip_ws();
        (self.line, self.column)
    }

    fn err(&mut self, message: impl Into<String>) -> Error {
        let (line, column) = self.pos();
        located(line, column, message)
    }
}

fn located(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

struct Open {
    id_kind: Kind,
    children: Vec<NodeId>,
    line: usize,
    column: usize,
}

impl FromStr for PqTree {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut cur = Cursor {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        };
        let mut arena = Arena::default();
        let mut open: Vec<Open> = Vec::new();
        let mut leaf_pos: Vec<(usize, usize, usize)> = Vec::new();
        let mut root = None;
        loop {
            // Expect a tree.
            let (line, column) = cur.pos();
            let done = match cur.peek() {
                Some(c @ ('P' | 'Q')) => {
                    cur.bump();
                    if cur.peek() != Some('(') {
                        return Err(cur.err(format!("expected `(` after `{c}`")));
                    }
                    cur.bump();
                    open.push(Open {
                        id_kind: if c == 'P' { Kind::P } else { Kind::Q },
                        children: Vec::new(),
                        line,
                        column,
                    });
                    None
                }
                Some(c) if c.is_ascii_digit() => {
                    let mut digits = String::new();
                    while let Some(&d) = cur.chars.peek() {
                        if !d.is_ascii_digit() {
                            break;
                        }
                        digits.push(d);
                        cur.bump();
                    }
                    let v: usize = digits
                        .parse()
                        .map_err(|_| located(line, column, format!("leaf label `{digits}` is too large")))?;
                    if v == 0 {
                        return Err(located(line, column, "leaf labels start at 1"));
                    }
                    leaf_pos.push((v, line, column));
                    Some(arena.add(Kind::Leaf(v - 1), Vec::new()))
                }
                Some(c) => return Err(cur.err(format!("expected a leaf, `P(` or `Q(`, found `{c}`"))),
                None => return Err(cur.err("unexpected end of input")),
            };
            let Some(mut finished) = done else { continue };
            // Attach finished trees and close nodes as far as possible.
            loop {
                let Some(top) = open.last_mut() else {
                    root = Some(finished);
                    break;
                };
                top.children.push(finished);
                match cur.peek() {
                    Some(',') => {
                        cur.bump();
                        break;
                    }
                    Some(')') => {
                        cur.bump();
                        let node = open.pop().expect("non-empty");
                        let min = if node.id_kind == Kind::P { 2 } else { 3 };
                        if node.children.len() < min {
                            let name = if node.id_kind == Kind::P { "P" } else { "Q" };
                            return Err(located(
                                node.line,
                                node.column,
                                format!("{name}-node with fewer than {min} children"),
                            ));
                        }
                        finished = arena.add(node.id_kind, node.children);
                    }
                    Some(c) => return Err(cur.err(format!("expected `,` or `)`, found `{c}`"))),
                    None => return Err(cur.err("unexpected end of input, expected `)`")),
                }
            }
            if open.is_empty() {
                break;
            }
        }
        if let Some(c) = cur.peek() {
            return Err(cur.err(format!("trailing input starting with `{c}`")));
        }
        let n = leaf_pos.len();
        let mut seen = vec![false; n];
        for &(v, line, column) in &leaf_pos {
            if v > n {
                return Err(located(line, column, format!("leaf {v} outside [1, {n}]")));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(located(line, column, format!("leaf {v} appears twice")));
            }
        }
        Ok(arena.finish(n, root.expect("parsed a tree")))
    }
}

//! JSON encoding of terms: an index is a JSON integer, an abstraction is
//! `{"lam": body}` and an application is `[left, right]`.
//!
//! Sampled terms nest tens of thousands of levels deep, far beyond what a
//! recursive JSON library accepts, so both directions are hand-written
//! loops over explicit stacks.

use lambda_core::term::{CellId, TermArena};
use lambda_core::{Node, Term};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DecodeError {
    #[error("unexpected {found} at byte {offset}")]
    Unexpected { offset: usize, found: String },
    #[error("unexpected end of input")]
    Eof,
    #[error("index at byte {offset} does not fit in 64 bits")]
    Overflow { offset: usize },
    #[error("trailing input at byte {offset}")]
    Trailing { offset: usize },
}

/// Encodes a term as compact JSON.
pub fn encode(term: &Term) -> String {
    let nodes = term.nodes();
    let mut out = String::with_capacity(nodes.len() * 4);
    // Closing text owed after each finished subterm, innermost last.
    let mut owed: Vec<&'static str> = Vec::new();
    for node in nodes {
        match node {
            Node::Index(n) => {
                out.push_str(&n.to_string());
                close(&mut out, &mut owed);
            }
            Node::Abs => {
                out.push_str("{\"lam\":");
                owed.push("}");
            }
            Node::App => {
                out.push('[');
                owed.push(",");
            }
        }
    }
    out
}

/// Emits closers until a pending application needs its right operand.
fn close(out: &mut String, owed: &mut Vec<&'static str>) {
    while let Some(top) = owed.pop() {
        if top == "," {
            out.push(',');
            owed.push("]");
            return;
        }
        out.push_str(top);
    }
}

enum Open {
    Lam,
    AppLeft,
    AppRight,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Result<u8, DecodeError> {
        self.skip_ws();
        self.bytes.get(self.pos).copied().ok_or(DecodeError::Eof)
    }

    fn unexpected(&self) -> DecodeError {
        match self.bytes.get(self.pos) {
            None => DecodeError::Eof,
            Some(&b) => DecodeError::Unexpected {
                offset: self.pos,
                found: format!("{:?}", b as char),
            },
        }
    }

    fn expect(&mut self, text: &str) -> Result<(), DecodeError> {
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(text.as_bytes()) {
            self.pos += text.len();
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn number(&mut self) -> Result<u64, DecodeError> {
        let start = self.pos;
        let mut value: u64 = 0;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(self.bytes[self.pos] - b'0')))
                .ok_or(DecodeError::Overflow { offset: start })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.unexpected());
        }
        Ok(value)
    }
}

/// Decodes a term from the JSON encoding, ignoring surrounding whitespace.
pub fn decode(text: &str) -> Result<Term, DecodeError> {
    let mut c = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let mut arena = TermArena::new();
    let mut stack: Vec<(Open, Option<CellId>)> = Vec::new();
    let root = 'outer: loop {
        let mut done = match c.peek()? {
            b'{' => {
                c.pos += 1;
                c.expect("\"lam\"")?;
                c.expect(":")?;
                stack.push((Open::Lam, None));
                continue;
            }
            b'[' => {
                c.pos += 1;
                stack.push((Open::AppLeft, None));
                continue;
            }
            b'0'..=b'9' => {
                let n = c.number()?;
                arena.index(n)
            }
            _ => return Err(c.unexpected()),
        };
        loop {
            match stack.pop() {
                None => break 'outer done,
                Some((Open::Lam, _)) => {
                    c.expect("}")?;
                    done = arena.abs(done);
                }
                Some((Open::AppLeft, _)) => {
                    c.expect(",")?;
                    stack.push((Open::AppRight, Some(done)));
                    continue 'outer;
                }
                Some((Open::AppRight, left)) => {
                    c.expect("]")?;
                    done = arena.app(left.expect("left operand"), done);
                }
            }
        }
    };
    c.skip_ws();
    if c.pos != c.bytes.len() {
        return Err(DecodeError::Trailing { offset: c.pos });
    }
    Ok(arena.build(root))
}

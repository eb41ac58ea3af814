//! Canonical text format: `\` (or `λ`) for abstraction, juxtaposition for
//! left-associative application, decimal indices, parentheses where needed.
//!
//! Both directions run on explicit stacks, so terms of any depth are safe.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::term::{subterm_lens, CellId, Node, Term, TermArena};

/// Text that is not a well-formed term. Offsets are in bytes.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at byte {offset}")]
    UnexpectedChar { offset: usize, found: char },
    #[error("expected a term at byte {offset}")]
    ExpectedTerm { offset: usize },
    #[error("unmatched ')' at byte {offset}")]
    UnmatchedClose { offset: usize },
    #[error("unclosed '(' opened at byte {offset}")]
    UnclosedOpen { offset: usize },
    #[error("index at byte {offset} does not fit in 64 bits")]
    IndexOverflow { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match *self {
            ParseError::UnexpectedChar { offset, .. }
            | ParseError::ExpectedTerm { offset }
            | ParseError::UnmatchedClose { offset }
            | ParseError::UnclosedOpen { offset }
            | ParseError::IndexOverflow { offset } => offset,
        }
    }
}

#[derive(Clone, Copy)]
enum FrameKind {
    Root,
    Paren(usize),
    Lambda,
}

struct Frame {
    kind: FrameKind,
    acc: Option<CellId>,
}

/// Parses a term in the canonical text format.
pub fn parse(text: &str) -> Result<Term, ParseError> {
    let mut arena = TermArena::new();
    let mut stack = vec![Frame {
        kind: FrameKind::Root,
        acc: None,
    }];
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'\\' => {
                stack.push(Frame {
                    kind: FrameKind::Lambda,
                    acc: None,
                });
                i += 1;
            }
            b'(' => {
                stack.push(Frame {
                    kind: FrameKind::Paren(i),
                    acc: None,
                });
                i += 1;
            }
            b')' => {
                close_lambdas(&mut stack, &mut arena, i)?;
                let frame = stack.pop().expect("root frame");
                if !matches!(frame.kind, FrameKind::Paren(_)) {
                    return Err(ParseError::UnmatchedClose { offset: i });
                }
                let inner = frame.acc.ok_or(ParseError::ExpectedTerm { offset: i })?;
                feed(stack.last_mut().expect("root frame"), &mut arena, inner);
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                let mut value: u64 = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(u64::from(bytes[i] - b'0')))
                        .ok_or(ParseError::IndexOverflow { offset: start })?;
                    i += 1;
                }
                let cell = arena.index(value);
                feed(stack.last_mut().expect("root frame"), &mut arena, cell);
            }
            _ => {
                let ch = text[i..].chars().next().expect("in bounds");
                if ch == 'λ' {
                    stack.push(Frame {
                        kind: FrameKind::Lambda,
                        acc: None,
                    });
                    i += ch.len_utf8();
                } else {
                    return Err(ParseError::UnexpectedChar {
                        offset: i,
                        found: ch,
                    });
                }
            }
        }
    }
    close_lambdas(&mut stack, &mut arena, bytes.len())?;
    let frame = stack.pop().expect("root frame");
    match frame.kind {
        FrameKind::Root => {
            let root = frame.acc.ok_or(ParseError::ExpectedTerm {
                offset: bytes.len(),
            })?;
            Ok(arena.build(root))
        }
        FrameKind::Paren(offset) => Err(ParseError::UnclosedOpen { offset }),
        FrameKind::Lambda => unreachable!("lambdas closed above"),
    }
}

fn feed(frame: &mut Frame, arena: &mut TermArena, operand: CellId) {
    frame.acc = Some(match frame.acc {
        None => operand,
        Some(left) => arena.app(left, operand),
    });
}

/// Pops every lambda frame on top of the stack, wrapping its body and
/// handing the abstraction to the frame below.
fn close_lambdas(
    stack: &mut Vec<Frame>,
    arena: &mut TermArena,
    offset: usize,
) -> Result<(), ParseError> {
    while let Some(Frame {
        kind: FrameKind::Lambda,
        ..
    }) = stack.last()
    {
        let frame = stack.pop().expect("checked");
        let body = frame.acc.ok_or(ParseError::ExpectedTerm { offset })?;
        let abs = arena.abs(body);
        feed(stack.last_mut().expect("root frame"), arena, abs);
    }
    Ok(())
}

enum Task {
    Node { pos: usize, tail: bool },
    Text(&'static str),
}

/// Writes prefix-order nodes in the canonical text format.
pub(crate) fn write_term<W: fmt::Write>(out: &mut W, nodes: &[Node]) -> fmt::Result {
    let lens = subterm_lens(nodes);
    // `tail`: nothing follows this subterm inside its enclosing group, so a
    // trailing abstraction may extend to the right without parentheses.
    let mut tasks = vec![Task::Node { pos: 0, tail: true }];
    while let Some(task) = tasks.pop() {
        match task {
            Task::Text(s) => out.write_str(s)?,
            Task::Node { pos, tail } => match nodes[pos] {
                Node::Index(n) => write!(out, "{}", n)?,
                Node::Abs => {
                    if tail {
                        out.write_str("\\")?;
                        tasks.push(Task::Node { pos: pos + 1, tail });
                    } else {
                        out.write_str("(\\")?;
                        tasks.push(Task::Text(")"));
                        tasks.push(Task::Node {
                            pos: pos + 1,
                            tail: true,
                        });
                    }
                }
                Node::App => {
                    let left = pos + 1;
                    let right = left + lens[left];
                    match nodes[right] {
                        Node::App => {
                            tasks.push(Task::Text(")"));
                            tasks.push(Task::Node {
                                pos: right,
                                tail: true,
                            });
                            tasks.push(Task::Text(" ("));
                        }
                        _ => {
                            tasks.push(Task::Node { pos: right, tail });
                            tasks.push(Task::Text(" "));
                        }
                    }
                    // Abstractions on the left always need parentheses;
                    // `tail: false` produces them.
                    tasks.push(Task::Node {
                        pos: left,
                        tail: false,
                    });
                }
            },
        }
    }
    Ok(())
}

/// Renders a term in the canonical text format.
pub fn print(term: &Term) -> alloc::string::String {
    use alloc::string::ToString;
    term.to_string()
}

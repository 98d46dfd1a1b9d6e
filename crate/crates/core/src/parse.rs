//! Text format for ground programs.
//!
//! ```text
//! program   := statement*
//! statement := rule "."
//! rule      := head | head ":-" body | ":-" body
//! head      := atom ("|" atom)*
//! body      := lit ("," lit)*
//! lit       := ["not"] atom
//! atom      := [a-zA-Z_][a-zA-Z0-9_'#]*
//! ```
//!
//! `%` starts a comment that runs to the end of the line. `not` is a
//! reserved word and cannot be used as an atom name.

use std::fmt::Write as _;
use std::io::Read;

use crate::atoms::{Atom, AtomTable};
use crate::error::{Error, Result};
use crate::program::{Program, Rule};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Pipe,
    Comma,
    Dot,
    If,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_atom_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_atom_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '#'
}

/// Returns true if `name` is a valid atom token.
pub fn is_valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if is_atom_start(c)) && chars.all(is_atom_char) && name != "not"
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
        } else if c == '%' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
        } else if is_atom_start(c) {
            let mut name = String::new();
            while let Some(&c) = chars.peek() {
                if !is_atom_char(c) {
                    break;
                }
                name.push(bump(&mut chars));
            }
            out.push(Spanned {
                tok: Tok::Ident(name),
                line: l,
                column: col,
            });
        } else {
            bump(&mut chars);
            let tok = match c {
                '|' => Tok::Pipe,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                ':' if chars.peek() == Some(&'-') => {
                    bump(&mut chars);
                    Tok::If
                }
                _ => {
                    return Err(Error::Syntax {
                        line: l,
                        column: col,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            };
            out.push(Spanned {
                tok,
                line: l,
                column: col,
            });
        }
    }
    Ok(out)
}

/// Side information collected while parsing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseStats {
    /// Literals dropped because they repeated an atom within the same rule part.
    pub duplicate_literals: usize,
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
    table: AtomTable,
    stats: ParseStats,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|s| (s.line, s.column)).unwrap_or(self.end)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn atom(&mut self) -> Result<Atom> {
        match self.peek() {
            Some(Tok::Ident(name)) if name != "not" => {
                let name = name.clone();
                self.pos += 1;
                Ok(self.table.intern(&name))
            }
            Some(Tok::Ident(_)) => self.error("`not` is reserved and cannot name an atom"),
            Some(t) => {
                let t = format!("{t:?}");
                self.error(format!("expected atom, found {t}"))
            }
            None => self.error("expected atom, found end of input"),
        }
    }

    fn push_unique(&mut self, part: &mut Vec<Atom>, atom: Atom) {
        if part.contains(&atom) {
            self.stats.duplicate_literals += 1;
        } else {
            part.push(atom);
        }
    }

    fn rule(&mut self) -> Result<Rule> {
        let mut head = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        if self.peek() != Some(&Tok::If) {
            let a = self.atom()?;
            head.push(a);
            while self.peek() == Some(&Tok::Pipe) {
                self.pos += 1;
                let a = self.atom()?;
                self.push_unique(&mut head, a);
            }
        }
        if self.peek() == Some(&Tok::If) {
            self.pos += 1;
            loop {
                let negated = matches!(self.peek(), Some(Tok::Ident(n)) if n == "not")
                    && matches!(self.toks.get(self.pos + 1), Some(Spanned { tok: Tok::Ident(_), .. }));
                if negated {
                    self.pos += 1;
                }
                let a = self.atom()?;
                if negated {
                    self.push_unique(&mut neg, a);
                } else {
                    self.push_unique(&mut pos, a);
                }
                if self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        match self.peek() {
            Some(Tok::Dot) => self.pos += 1,
            _ => return self.error("expected `.`"),
        }
        Ok(Rule::new(head, pos, neg))
    }

    fn program(&mut self) -> Result<Vec<Rule>> {
        let mut rules = Vec::new();
        while self.peek().is_some() {
            rules.push(self.rule()?);
        }
        Ok(rules)
    }
}

fn end_position(text: &str) -> (usize, usize) {
    let line = text.matches('\n').count() + 1;
    let column = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Parses a program, reporting how many duplicate literals were dropped.
pub fn parse_program_with_stats(text: &str) -> Result<(Program, ParseStats)> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
        end: end_position(text),
        table: AtomTable::new(),
        stats: ParseStats::default(),
    };
    let rules = parser.program()?;
    Ok((Program::new(parser.table, rules), parser.stats))
}

/// Parses a program; atoms are interned in order of first occurrence.
pub fn parse_program(text: &str) -> Result<Program> {
    parse_program_with_stats(text).map(|(p, _)| p)
}

/// Reads a whole stream and parses it.
pub fn read_program(mut reader: impl Read) -> std::result::Result<Program, ReadError> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    Ok(parse_program(&text)?)
}

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Parse(#[from] Error),
}

/// Renders a single rule.
///
/// Body literals are emitted in atom-id order, positive before negative on
/// equal ids; re-parsing the output of [`render_program`] therefore interns
/// atoms in the same order as the original text did.
pub fn render_rule(p: &Program, r: &Rule) -> String {
    let mut s = String::new();
    let head: Vec<&str> = r.head().iter().map(|&a| p.name(a)).collect();
    s.push_str(&head.join(" | "));
    let mut body: Vec<(Atom, bool)> = r
        .pos()
        .iter()
        .map(|&a| (a, false))
        .chain(r.neg().iter().map(|&a| (a, true)))
        .collect();
    body.sort();
    if !body.is_empty() || head.is_empty() {
        if !head.is_empty() {
            s.push(' ');
        }
        s.push_str(":-");
        for (i, (a, negated)) in body.iter().enumerate() {
            s.push_str(if i == 0 { " " } else { ", " });
            if *negated {
                s.push_str("not ");
            }
            s.push_str(p.name(*a));
        }
    }
    s.push('.');
    s
}

/// Renders a program, one rule per line.
pub fn render_program(p: &Program) -> String {
    let mut out = String::new();
    for r in p.rules() {
        let _ = writeln!(out, "{}", render_rule(p, r));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_negative_fact_rule() {
        let p = parse_program("t :- not r.").unwrap();
        assert_eq!(p.len(), 1);
        let r = &p.rules()[0];
        assert_eq!(r.head(), &[p.atom("t").unwrap()]);
        assert_eq!(r.neg(), &[p.atom("r").unwrap()]);
        assert!(r.pos().is_empty());
    }

    #[test]
    fn parses_ex1() {
        let p = parse_program(crate::EX1).unwrap();
        assert_eq!(p.len(), 6);
        let names: Vec<&str> = p.table().atoms().map(|a| p.name(a)).collect();
        assert_eq!(names, ["s", "w", "u", "q", "r", "t"]);
    }

    #[test]
    fn empty_body_after_if_is_rejected() {
        let err = parse_program("a | b :- .").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Syntax {
                    line: 1,
                    column: 10,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn empty_constraint_is_rejected() {
        assert!(parse_program(":-.").is_err());
        assert!(parse_program(":- .").is_err());
    }

    #[test]
    fn reports_line_and_column() {
        let err = parse_program("a.\n  b :- c d.").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 2,
                column: 10,
                message: "expected `.`".into()
            }
        );
        let err = parse_program("a :- $.").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, column: 6, .. }));
        let err = parse_program("a :- b").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, column: 7, .. }), "{err:?}");
    }

    #[test]
    fn comments_and_whitespace() {
        let p = parse_program("% header\na.%x\n\n b :- a , not c . % tail").unwrap();
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn duplicates_are_collapsed_and_counted() {
        let (p, stats) = parse_program_with_stats("a | a :- b, b, not c, not c.").unwrap();
        assert_eq!(stats.duplicate_literals, 3);
        let r = &p.rules()[0];
        assert_eq!((r.head().len(), r.pos().len(), r.neg().len()), (1, 1, 1));
    }

    #[test]
    fn duplicate_rules_are_kept() {
        let p = parse_program("a. a.").unwrap();
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn not_is_reserved() {
        assert!(parse_program("not.").is_err());
        assert!(parse_program("a :- not.").is_err());
        assert!(parse_program("a :- not not.").is_err());
    }

    #[test]
    fn primes_and_hashes_in_names() {
        let p = parse_program("x' :- y#2, not _z.").unwrap();
        assert_eq!(p.num_atoms(), 3);
    }

    #[test]
    fn render_examples() {
        let p = parse_program("a :- b, not c.").unwrap();
        assert_eq!(render_program(&p), "a :- b, not c.\n");
        let p = parse_program("").unwrap();
        assert_eq!(render_program(&p), "");
        let p = parse_program("a|b. :- x, not y.").unwrap();
        assert_eq!(render_program(&p), "a | b.\n:- x, not y.\n");
    }

    #[test]
    fn render_round_trips_ex1() {
        let p = parse_program(crate::EX1).unwrap();
        let q = parse_program(&render_program(&p)).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn interleaved_body_round_trips() {
        let p = parse_program("a :- not b, c, not d, b.").unwrap();
        let q = parse_program(&render_program(&p)).unwrap();
        assert_eq!(p, q);
    }
}

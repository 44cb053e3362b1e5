//! The `biquadratic v1` presentation file format.
//!
//! ```text
//! biquadratic v1
//! q = [2, "1/2", 1]
//! A = [[0,0,0],[1,0,0],[0,3,0]]
//! B = [0, 0, 0]       # comments run to end of line
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use super::{Presentation, PresentationError};
use crate::scalars::Rational;

pub const HEADER: &str = "biquadratic v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("domain error: {0}")]
    Domain(#[from] PresentationError),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Eq,
    LBracket,
    RBracket,
    Comma,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, column, message: message.into() }
}

fn tokenize(text: &str, first_line: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut toks = Vec::new();
    for (offset, raw) in text.lines().enumerate() {
        let line = first_line + offset;
        let content = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = content.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let single = match c {
                '=' => Some(Tok::Eq),
                '[' => Some(Tok::LBracket),
                ']' => Some(Tok::RBracket),
                ',' => Some(Tok::Comma),
                _ => None,
            };
            if let Some(tok) = single {
                toks.push(Spanned { tok, line, column });
                i += 1;
            } else if c.is_whitespace() {
                i += 1;
            } else if c == '"' {
                let start = i + 1;
                let end = chars[start..]
                    .iter()
                    .position(|&ch| ch == '"')
                    .map(|p| start + p)
                    .ok_or_else(|| syntax(line, column, "unterminated string"))?;
                let lit: String = chars[start..end].iter().collect();
                toks.push(Spanned { tok: Tok::Number(lit.trim().to_string()), line, column });
                i = end + 1;
            } else if c.is_ascii_digit() || c == '-' || c == '+' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || "+-/".contains(chars[i])) {
                    i += 1;
                }
                toks.push(Spanned { tok: Tok::Number(chars[start..i].iter().collect()), line, column });
            } else if c.is_ascii_alphabetic() {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push(Spanned { tok: Tok::Ident(chars[start..i].iter().collect()), line, column });
            } else {
                return Err(syntax(line, column, format!("unexpected character `{}`", c)));
            }
        }
    }
    Ok(toks)
}

#[derive(Debug, Clone)]
enum Value {
    Scalar(Rational),
    List(Vec<Value>, usize, usize),
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    eof: (usize, usize),
}

impl Parser {
    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map(|t| (t.line, t.column)).unwrap_or(self.eof)
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Spanned, ParseError> {
        let (line, column) = self.here();
        match self.next() {
            Some(t) if t.tok == want => Ok(t),
            _ => Err(syntax(line, column, format!("expected {}", what))),
        }
    }

    fn value(&mut self) -> Result<Value, ParseError> {
        let (line, column) = self.here();
        match self.next() {
            Some(Spanned { tok: Tok::Number(lit), .. }) => lit
                .parse::<Rational>()
                .map(Value::Scalar)
                .map_err(|e| syntax(line, column, e.to_string())),
            Some(Spanned { tok: Tok::LBracket, .. }) => {
                let mut items = vec![self.value()?];
                loop {
                    let (l, c) = self.here();
                    match self.next() {
                        Some(Spanned { tok: Tok::Comma, .. }) => items.push(self.value()?),
                        Some(Spanned { tok: Tok::RBracket, .. }) => break,
                        _ => return Err(syntax(l, c, "expected `,` or `]`")),
                    }
                }
                Ok(Value::List(items, line, column))
            }
            _ => Err(syntax(line, column, "expected a rational or `[`")),
        }
    }
}

fn triple(v: Value, key: &str, at: (usize, usize)) -> Result<[Rational; 3], ParseError> {
    match v {
        Value::List(items, line, column) => {
            if items.len() != 3 {
                return Err(syntax(line, column, format!("`{}` needs 3 entries, found {}", key, items.len())));
            }
            let mut out: [Rational; 3] = Default::default();
            for (slot, item) in out.iter_mut().zip(items) {
                match item {
                    Value::Scalar(r) => *slot = r,
                    Value::List(_, l, c) => return Err(syntax(l, c, format!("`{}` entries must be rationals", key))),
                }
            }
            Ok(out)
        }
        Value::Scalar(_) => Err(syntax(at.0, at.1, format!("`{}` must be a list", key))),
    }
}

fn matrix(v: Value, at: (usize, usize)) -> Result<[[Rational; 3]; 3], ParseError> {
    match v {
        Value::List(rows, line, column) => {
            if rows.len() != 3 {
                return Err(syntax(line, column, format!("`A` needs 3 rows, found {}", rows.len())));
            }
            let mut out: [[Rational; 3]; 3] = Default::default();
            for (slot, row) in out.iter_mut().zip(rows) {
                let pos = match &row {
                    Value::List(_, l, c) => (*l, *c),
                    Value::Scalar(_) => (line, column),
                };
                *slot = triple(row, "A", pos)?;
            }
            Ok(out)
        }
        Value::Scalar(_) => Err(syntax(at.0, at.1, "`A` must be a 3x3 matrix")),
    }
}

/// Parses a presentation file.
pub fn parse(text: &str) -> Result<Presentation, ParseError> {
    let mut lines = text.lines().enumerate();
    let header_line = loop {
        match lines.next() {
            None => return Err(syntax(1, 1, format!("missing `{}` header", HEADER))),
            Some((i, raw)) => {
                let content = raw.split('#').next().unwrap_or("").trim();
                if content.is_empty() {
                    continue;
                }
                if content.split_whitespace().collect::<Vec<_>>() != ["biquadratic", "v1"] {
                    let column = raw.len() - raw.trim_start().len() + 1;
                    return Err(syntax(i + 1, column, format!("expected `{}` header", HEADER)));
                }
                break i + 1;
            }
        }
    };
    let rest: Vec<&str> = text.lines().skip(header_line).collect();
    let toks = tokenize(&rest.join("\n"), header_line + 1)?;
    let last_line = header_line + rest.len().max(1);
    let mut parser = Parser { toks, pos: 0, eof: (last_line, 1) };

    let mut q = None;
    let mut a = None;
    let mut b = None;
    while let Some(t) = parser.next() {
        let key = match t.tok {
            Tok::Ident(k) => k,
            _ => return Err(syntax(t.line, t.column, "expected `q`, `A` or `B`")),
        };
        parser.expect(Tok::Eq, "`=`")?;
        let at = parser.here();
        let value = parser.value()?;
        let dup = || syntax(t.line, t.column, format!("duplicate key `{}`", key));
        match key.as_str() {
            "q" if q.is_none() => q = Some(triple(value, "q", at)?),
            "A" if a.is_none() => a = Some(matrix(value, at)?),
            "B" if b.is_none() => b = Some(triple(value, "B", at)?),
            "q" | "A" | "B" => return Err(dup()),
            other => return Err(syntax(t.line, t.column, format!("unknown key `{}`", other))),
        }
    }
    let (line, column) = parser.eof;
    let missing = |k: &str| syntax(line, column, format!("missing key `{}`", k));
    let q = q.ok_or_else(|| missing("q"))?;
    let a = a.ok_or_else(|| missing("A"))?;
    let b = b.ok_or_else(|| missing("B"))?;
    Ok(Presentation::new(q, a, b)?)
}

/// Renders a presentation in canonical form; `parse(&render(p)) == p`.
pub fn render(p: &Presentation) -> String {
    let row = |r: &[Rational; 3]| format!("[{}, {}, {}]", r[0], r[1], r[2]);
    let mut out = String::new();
    writeln!(out, "{}", HEADER).unwrap();
    writeln!(out, "q = {}", row(p.q())).unwrap();
    let m = p.matrix();
    writeln!(out, "A = [{}, {}, {}]", row(&m[0]), row(&m[1]), row(&m[2])).unwrap();
    writeln!(out, "B = {}", row(p.constants())).unwrap();
    out
}

//! Line-oriented problem files.
//!
//! ```text
//! ring vars=x,y      # required first
//! s=2                # optional parameters, any order
//! ideal              # or: matrix rows=R cols=C
//! x^2*y^2 + y^5
//! x^4 + x^2*y^3
//! ```
//!
//! A term is a `*`-separated product of an optional coefficient (integer
//! or `p/q`) and powers `var^k` with `k >= 1` (`^1` may be omitted).
//! Matrix payloads list one row per line with comma-separated entries.
//! `#` starts a comment anywhere on a line.

use crate::matrix::PolyMatrix;
use crate::poly::{Coeff, Monomial, Polynomial};
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;

/// A parse failure with 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, col, msg: msg.into() })
}

/// The object a problem file describes.
#[derive(Clone, Debug)]
pub enum Payload {
    Ideal(Vec<Polynomial>),
    Matrix(PolyMatrix),
}

/// A parsed problem file: ring, payload, optional `s` and `n` parameters.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub names: Vec<String>,
    pub payload: Payload,
    pub s: Option<u32>,
    pub n: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Comma,
}

struct Lexed {
    tok: Tok,
    col: usize,
}

fn lex_line(line: &str, lineno: usize) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '+' => {
                out.push(Lexed { tok: Tok::Plus, col });
                i += 1;
            }
            '-' => {
                out.push(Lexed { tok: Tok::Minus, col });
                i += 1;
            }
            '*' => {
                out.push(Lexed { tok: Tok::Star, col });
                i += 1;
            }
            '^' => {
                out.push(Lexed { tok: Tok::Caret, col });
                i += 1;
            }
            '/' => {
                out.push(Lexed { tok: Tok::Slash, col });
                i += 1;
            }
            ',' => {
                out.push(Lexed { tok: Tok::Comma, col });
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n = digits.parse::<BigInt>().expect("digit runs parse as integers");
                out.push(Lexed { tok: Tok::Num(n), col });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Lexed {
                    tok: Tok::Name(chars[start..i].iter().collect()),
                    col,
                });
            }
            other => return err(lineno, col, format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

struct PolyParser<'a> {
    toks: &'a [Lexed],
    pos: usize,
    line: usize,
    names: &'a [String],
}

impl<'a> PolyParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|l| l.col)
            .or_else(|| self.toks.last().map(|l| l.col + 1))
            .unwrap_or(1)
    }

    fn bump(&mut self) -> Option<&Lexed> {
        let l = self.toks.get(self.pos);
        if l.is_some() {
            self.pos += 1;
        }
        l
    }

    fn axis(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// poly := ['-'] term (('+'|'-') term)*
    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        let nvars = self.names.len();
        let mut acc = Polynomial::zero(nvars);
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                negate = true;
            }
            Some(Tok::Plus) => {
                self.bump();
            }
            _ => {}
        }
        loop {
            let term = self.term()?;
            acc = if negate { &acc - &term } else { &acc + &term };
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    negate = false;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// term := factor ('*' factor)*
    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let nvars = self.names.len();
        let mut coeff = Coeff::from_integer(BigInt::from(1));
        let mut mono = Monomial::one(nvars);
        loop {
            let col = self.col();
            match self.bump().map(|l| l.tok.clone()) {
                Some(Tok::Num(n)) => {
                    if let Some(Tok::Slash) = self.peek() {
                        self.bump();
                        let dcol = self.col();
                        match self.bump().map(|l| l.tok.clone()) {
                            Some(Tok::Num(d)) => {
                                if d.is_zero() {
                                    return err(self.line, dcol, "zero denominator");
                                }
                                coeff *= Coeff::new(n, d);
                            }
                            _ => return err(self.line, dcol, "expected denominator after `/`"),
                        }
                    } else {
                        coeff *= Coeff::from_integer(n);
                    }
                }
                Some(Tok::Name(name)) => {
                    let axis = match self.axis(&name) {
                        Some(a) => a,
                        None => return err(self.line, col, format!("unknown variable `{name}`")),
                    };
                    let mut exp: u32 = 1;
                    if let Some(Tok::Caret) = self.peek() {
                        self.bump();
                        let ecol = self.col();
                        match self.bump().map(|l| l.tok.clone()) {
                            Some(Tok::Num(k)) => {
                                exp = match u32::try_from(&k) {
                                    Ok(v) if v >= 1 => v,
                                    _ => return err(self.line, ecol, "malformed exponent: need an integer >= 1"),
                                };
                            }
                            _ => return err(self.line, ecol, "malformed exponent: need an integer >= 1"),
                        }
                    }
                    mono = mono.mul(&Monomial::from_exps(
                        (0..nvars).map(|i| if i == axis { exp } else { 0 }).collect(),
                    ));
                }
                _ => return err(self.line, col, "expected a coefficient or variable"),
            }
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                }
                _ => break,
            }
        }
        Ok(Polynomial::from_terms(nvars, [(mono, coeff)]))
    }
}

/// Parses one polynomial from a full token line.
fn parse_poly_toks(toks: &[Lexed], line: usize, names: &[String]) -> Result<Polynomial, ParseError> {
    let mut p = PolyParser { toks, pos: 0, line, names };
    let poly = p.poly()?;
    if p.pos != toks.len() {
        return err(line, p.col(), "trailing input after polynomial");
    }
    Ok(poly)
}

/// Parses a polynomial from source text against the given variable names.
pub fn parse_poly(src: &str, names: &[String]) -> Result<Polynomial, ParseError> {
    let toks = lex_line(src, 1)?;
    if toks.is_empty() {
        return err(1, 1, "empty polynomial");
    }
    parse_poly_toks(&toks, 1, names)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_key_value(line: &str) -> Option<(&str, &str)> {
    let eq = line.find('=')?;
    Some((line[..eq].trim(), line[eq + 1..].trim()))
}

/// Parses a whole problem file.
pub fn parse_problem(src: &str) -> Result<ProblemFile, ParseError> {
    let mut s: Option<u32> = None;
    let mut n: Option<usize> = None;
    let mut lines = src.lines().enumerate().peekable();

    // Significant lines only: strip comments, skip blanks.
    let mut next_line = move || -> Option<(usize, String)> {
        for (idx, raw) in lines.by_ref() {
            let text = strip_comment(raw).trim().to_string();
            if !text.is_empty() {
                return Some((idx + 1, text));
            }
        }
        None
    };

    let (ring_lineno, ring_line) = match next_line() {
        Some(l) => l,
        None => return err(1, 1, "empty problem file"),
    };
    let rest = ring_line
        .strip_prefix("ring")
        .map(str::trim)
        .ok_or(ParseError {
            line: ring_lineno,
            col: 1,
            msg: "first line must be `ring vars=...`".into(),
        })?;
    let vars_val = match parse_key_value(rest) {
        Some(("vars", v)) => v,
        _ => return err(ring_lineno, 1, "expected `ring vars=x,y,...`"),
    };
    let parsed_names: Vec<String> = vars_val.split(',').map(|p| p.trim().to_string()).collect();
    if parsed_names.is_empty() || parsed_names.iter().any(|v| v.is_empty()) {
        return err(ring_lineno, 1, "variable list must be nonempty names separated by commas");
    }
    for (i, a) in parsed_names.iter().enumerate() {
        if !a.chars().next().map(|c| c.is_ascii_alphabetic() || c == '_').unwrap_or(false)
            || !a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            return err(ring_lineno, 1, format!("invalid variable name `{a}`"));
        }
        if parsed_names[..i].contains(a) {
            return err(ring_lineno, 1, format!("duplicate variable name `{a}`"));
        }
    }
    let names = parsed_names;

    // Optional parameter lines, then the payload header.
    let (payload_lineno, payload_line) = loop {
        let (lineno, line) = match next_line() {
            Some(l) => l,
            None => return err(ring_lineno, 1, "missing payload: expected `ideal` or `matrix rows=R cols=C`"),
        };
        match parse_key_value(&line) {
            Some(("s", v)) => {
                s = Some(v.parse().map_err(|_| ParseError {
                    line: lineno,
                    col: 1,
                    msg: format!("invalid s parameter `{v}`"),
                })?);
            }
            Some(("n", v)) => {
                n = Some(v.parse().map_err(|_| ParseError {
                    line: lineno,
                    col: 1,
                    msg: format!("invalid n parameter `{v}`"),
                })?);
            }
            _ => break (lineno, line),
        }
    };

    if payload_line == "ideal" {
        let mut gens = Vec::new();
        while let Some((lineno, line)) = next_line() {
            let toks = lex_line(&line, lineno)?;
            gens.push(parse_poly_toks(&toks, lineno, &names)?);
        }
        if gens.is_empty() {
            return err(payload_lineno, 1, "ideal payload needs at least one polynomial line");
        }
        return Ok(ProblemFile { names, payload: Payload::Ideal(gens), s, n });
    }

    if let Some(rest) = payload_line.strip_prefix("matrix") {
        let mut rows_n: Option<usize> = None;
        let mut cols_n: Option<usize> = None;
        for part in rest.split_whitespace() {
            match parse_key_value(part) {
                Some(("rows", v)) => {
                    rows_n = v.parse().ok();
                }
                Some(("cols", v)) => {
                    cols_n = v.parse().ok();
                }
                _ => return err(payload_lineno, 1, format!("unexpected matrix attribute `{part}`")),
            }
        }
        let (rows_n, cols_n) = match (rows_n, cols_n) {
            (Some(r), Some(c)) if r >= 1 && c >= 1 => (r, c),
            _ => return err(payload_lineno, 1, "expected `matrix rows=R cols=C` with R, C >= 1"),
        };
        let mut rows = Vec::with_capacity(rows_n);
        for _ in 0..rows_n {
            let (lineno, line) = match next_line() {
                Some(l) => l,
                None => {
                    return err(payload_lineno, 1, format!("matrix needs {rows_n} rows, found {}", rows.len()))
                }
            };
            let toks = lex_line(&line, lineno)?;
            let mut row = Vec::with_capacity(cols_n);
            let mut start = 0;
            for i in 0..=toks.len() {
                let at_comma = i < toks.len() && toks[i].tok == Tok::Comma;
                if i == toks.len() || at_comma {
                    if start == i {
                        let col = toks.get(i).map(|l| l.col).unwrap_or(1);
                        return err(lineno, col, "empty matrix entry");
                    }
                    row.push(parse_poly_toks(&toks[start..i], lineno, &names)?);
                    start = i + 1;
                }
            }
            if row.len() != cols_n {
                return err(lineno, 1, format!("expected {cols_n} entries, found {}", row.len()));
            }
            rows.push(row);
        }
        if let Some((lineno, _)) = next_line() {
            return err(lineno, 1, "unexpected content after matrix rows");
        }
        let mx = PolyMatrix::new(rows).map_err(|e| ParseError {
            line: payload_lineno,
            col: 1,
            msg: e.to_string(),
        })?;
        return Ok(ProblemFile { names, payload: Payload::Matrix(mx), s, n });
    }

    err(payload_lineno, 1, "expected `ideal` or `matrix rows=R cols=C`")
}

/// Canonical rendering used in reports and golden files.
pub fn poly_to_string(p: &Polynomial, names: &[String]) -> String {
    format!("{}", p.display(names))
}

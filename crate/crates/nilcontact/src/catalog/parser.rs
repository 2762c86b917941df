//! Parser for the algebra-definition format.
//!
//! An entry is either
//!
//! ```text
//! algebra "157" dim 7 { [1,2]=3; [1,3]=7; [2,4]=7; [5,6]=7; }
//! family "147E" dim 7 param lambda exclude { 0, 1 } invariant "..." {
//!     [2,6]=lambda*7; [3,4]=(1-lambda)*7; ...
//! }
//! ```
//!
//! Brackets read `[i,j] = c1*k1 +- c2*k2 ...` with targets `k` as bare basis
//! indices and coefficients that are rational literals, the declared
//! parameter, or parenthesized polynomials in it. Whitespace is free-form
//! and `#` starts a line comment.

use crate::contact::FamilyInvariant;
use crate::liealg::{Algebra, LieAlgebra};
use crate::scalars::{rat, Rational, Ring, UniPoly};
use num_bigint::BigInt;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{CatalogEntry, LambdaRule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {message} (at '{token}')")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub token: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Str(String),
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semi,
    Eq,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Int(s) => write!(f, "{s}"),
            Tok::Str(s) => write!(f, "\"{s}\""),
            Tok::LBracket => write!(f, "["),
            Tok::RBracket => write!(f, "]"),
            Tok::LBrace => write!(f, "{{"),
            Tok::RBrace => write!(f, "}}"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::Comma => write!(f, ","),
            Tok::Semi => write!(f, ";"),
            Tok::Eq => write!(f, "="),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Slash => write!(f, "/"),
            Tok::Caret => write!(f, "^"),
            Tok::Eof => write!(f, "<end of input>"),
        }
    }
}

#[derive(Debug, Clone)]
struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> char {
        let c = self.chars.next().expect("peeked");
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }
}

fn lex(source: &str, start_line: usize) -> Result<Vec<Lexed>, ParseError> {
    let mut cur = Cursor {
        chars: source.chars().peekable(),
        line: start_line,
        col: 1,
    };
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        let (line, col) = (cur.line, cur.col);
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                cur.bump();
            }
            '#' => {
                while let Some(c) = cur.peek() {
                    cur.bump();
                    if c == '\n' {
                        break;
                    }
                }
            }
            '"' => {
                cur.bump();
                let mut s = String::new();
                loop {
                    match cur.peek() {
                        None | Some('\n') => {
                            return Err(ParseError {
                                line,
                                col,
                                token: s,
                                message: "unterminated string".into(),
                            })
                        }
                        Some('"') => {
                            cur.bump();
                            break;
                        }
                        Some(_) => s.push(cur.bump()),
                    }
                }
                out.push(Lexed {
                    tok: Tok::Str(s),
                    line,
                    col,
                });
            }
            '0'..='9' => {
                let mut s = String::new();
                while matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
                    s.push(cur.bump());
                }
                out.push(Lexed {
                    tok: Tok::Int(s),
                    line,
                    col,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while matches!(cur.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    s.push(cur.bump());
                }
                out.push(Lexed {
                    tok: Tok::Ident(s),
                    line,
                    col,
                });
            }
            _ => {
                let tok = match c {
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    '=' => Tok::Eq,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    other => {
                        return Err(ParseError {
                            line,
                            col,
                            token: other.to_string(),
                            message: "unexpected character".into(),
                        })
                    }
                };
                cur.bump();
                out.push(Lexed { tok, line, col });
            }
        }
    }
    out.push(Lexed {
        tok: Tok::Eof,
        line: cur.line,
        col: cur.col,
    });
    Ok(out)
}

fn inverse(c: &Rational) -> Rational {
    rat(1) / c
}

/// Rational function in the parameter, the value domain of coefficient and
/// invariant expressions.
#[derive(Debug, Clone)]
struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    fn normalized(num: UniPoly, den: UniPoly) -> Self {
        debug_assert!(!Ring::is_zero(&den));
        let g = UniPoly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let scale = inverse(den.coeffs().last().expect("nonzero denominator"));
        RatFunc {
            num: num.scale(&scale),
            den: den.scale(&scale),
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        Self::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    fn neg(&self) -> Self {
        RatFunc {
            num: Ring::neg(&self.num),
            den: self.den.clone(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        Self::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        if Ring::is_zero(&rhs.num) {
            return None;
        }
        Some(Self::normalized(
            &self.num * &rhs.den,
            &self.den * &rhs.num,
        ))
    }

    fn pow(&self, k: i64) -> Option<Self> {
        if k >= 0 {
            Some(RatFunc {
                num: self.num.pow(k as u32),
                den: self.den.pow(k as u32),
            })
        } else {
            Self::from_poly(UniPoly::one()).div(&self.pow(-k)?)
        }
    }

    fn into_poly(self) -> Option<UniPoly> {
        let c = self.den.as_constant()?;
        Some(self.num.scale(&inverse(&c)))
    }
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    /// Parameter name in scope, when inside a family entry.
    param: Option<String>,
}

impl Parser {
    fn new(toks: Vec<Lexed>, param: Option<String>) -> Self {
        Parser {
            toks,
            pos: 0,
            param,
        }
    }

    fn peek(&self) -> &Lexed {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn next(&mut self) -> Lexed {
        let out = self.toks[self.pos.min(self.toks.len() - 1)].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        out
    }

    fn error<T>(&self, at: &Lexed, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: at.line,
            col: at.col,
            token: at.tok.to_string(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Lexed, ParseError> {
        let got = self.next();
        if got.tok == tok {
            Ok(got)
        } else {
            self.error(&got, format!("expected {what}"))
        }
    }

    fn expect_keyword(&mut self, word: &str) -> Result<(), ParseError> {
        let got = self.next();
        match &got.tok {
            Tok::Ident(w) if w == word => Ok(()),
            _ => self.error(&got, format!("expected '{word}'")),
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<(BigInt, Lexed), ParseError> {
        let got = self.next();
        match &got.tok {
            Tok::Int(s) => Ok((BigInt::from_str(s).expect("digits"), got)),
            _ => self.error(&got, format!("expected {what}")),
        }
    }

    fn expect_index(&mut self, what: &str) -> Result<(usize, Lexed), ParseError> {
        let (v, at) = self.expect_int(what)?;
        match usize::try_from(&v) {
            Ok(i) if i >= 1 => Ok((i, at)),
            _ => self.error(&at, format!("{what} must be a positive integer")),
        }
    }

    /// `['-'] INT ['/' INT]`
    fn parse_rational(&mut self) -> Result<Rational, ParseError> {
        let negative = if self.peek().tok == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let (num, _) = self.expect_int("a rational literal")?;
        let mut value = Rational::from_integer(num);
        if self.peek().tok == Tok::Slash {
            self.next();
            let (den, at) = self.expect_int("a denominator")?;
            if den == BigInt::from(0) {
                return self.error(&at, "zero denominator");
            }
            value /= Rational::from_integer(den);
        }
        Ok(if negative { -value } else { value })
    }

    /// Full rational-function expression, used inside parentheses and for
    /// invariant strings.
    fn parse_expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = if self.peek().tok == Tok::Minus {
            self.next();
            self.parse_term()?.neg()
        } else {
            self.parse_term()?
        };
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc = acc.add(&self.parse_term()?);
                }
                Tok::Minus => {
                    self.next();
                    acc = acc.add(&self.parse_term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.next();
                    acc = acc.mul(&self.parse_factor()?);
                }
                Tok::Slash => {
                    self.next();
                    let at = self.peek().clone();
                    let rhs = self.parse_factor()?;
                    match acc.div(&rhs) {
                        Some(v) => acc = v,
                        None => return self.error(&at, "division by zero"),
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<RatFunc, ParseError> {
        let base = self.parse_primary()?;
        self.parse_exponent_suffix(base)
    }

    fn parse_exponent_suffix(&mut self, base: RatFunc) -> Result<RatFunc, ParseError> {
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let negative = if self.peek().tok == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let (exp, at) = self.expect_int("an integer exponent")?;
        let exp = match i64::try_from(&exp) {
            Ok(e) if e <= 64 => e,
            _ => return self.error(&at, "exponent out of range"),
        };
        let exp = if negative { -exp } else { exp };
        match base.pow(exp) {
            Some(v) => Ok(v),
            None => self.error(&at, "negative power of zero"),
        }
    }

    fn parse_primary(&mut self) -> Result<RatFunc, ParseError> {
        let at = self.next();
        match &at.tok {
            Tok::Int(s) => Ok(RatFunc::from_poly(UniPoly::constant(
                Rational::from_integer(BigInt::from_str(s).expect("digits")),
            ))),
            Tok::Ident(name) => {
                if self.param.as_deref() == Some(name.as_str()) {
                    Ok(RatFunc::from_poly(UniPoly::lambda()))
                } else {
                    self.error(&at, "unknown identifier (not the declared parameter)")
                }
            }
            Tok::LParen => {
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Minus => Ok(self.parse_primary()?.neg()),
            _ => self.error(&at, "expected a number, the parameter, or '('"),
        }
    }

    /// One bracket coefficient: rational literal, the parameter, or a
    /// parenthesized polynomial (optionally with an exponent). Returns
    /// `None` when the integer turned out to be a bare target index.
    fn parse_term_coefficient(&mut self) -> Result<Option<UniPoly>, ParseError> {
        match &self.peek().tok {
            Tok::Int(_) => {
                let save = self.pos;
                let value = self.parse_rational()?;
                if self.peek().tok == Tok::Star {
                    self.next();
                    Ok(Some(UniPoly::constant(value)))
                } else {
                    self.pos = save;
                    Ok(None)
                }
            }
            Tok::Ident(_) | Tok::LParen => {
                let at = self.peek().clone();
                let primary = self.parse_primary()?;
                let func = self.parse_exponent_suffix(primary)?;
                let poly = match func.into_poly() {
                    Some(p) => p,
                    None => {
                        return self
                            .error(&at, "coefficient must be polynomial in the parameter")
                    }
                };
                self.expect(Tok::Star, "'*' before the target index")?;
                Ok(Some(poly))
            }
            _ => {
                let at = self.next();
                self.error(&at, "expected a coefficient or target index")
            }
        }
    }

    /// `[i,j] = term (+- term)* ;` appended into `entries`.
    fn parse_bracket(
        &mut self,
        dim: usize,
        seen: &mut BTreeSet<(usize, usize)>,
        entries: &mut Vec<(usize, usize, usize, UniPoly)>,
    ) -> Result<(), ParseError> {
        let open = self.expect(Tok::LBracket, "'['")?;
        let (i, _) = self.expect_index("a basis index")?;
        self.expect(Tok::Comma, "','")?;
        let (j, jat) = self.expect_index("a basis index")?;
        self.expect(Tok::RBracket, "']'")?;
        if i >= j {
            return self.error(&jat, "bracket indices must satisfy i < j");
        }
        if j > dim {
            return self.error(&jat, "basis index exceeds the dimension");
        }
        if !seen.insert((i, j)) {
            return self.error(&open, format!("duplicate bracket [{i},{j}]"));
        }
        self.expect(Tok::Eq, "'='")?;

        let mut negate = if self.peek().tok == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        loop {
            let coeff = self.parse_term_coefficient()?;
            let (k, kat) = self.expect_index("a target index")?;
            if k > dim {
                return self.error(&kat, "target index exceeds the dimension");
            }
            let mut poly = coeff.unwrap_or_else(UniPoly::one);
            if negate {
                poly = Ring::neg(&poly);
            }
            entries.push((i, j, k, poly));
            let sep = self.next();
            match sep.tok {
                Tok::Semi => return Ok(()),
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => return self.error(&sep, "expected '+', '-' or ';'"),
            }
        }
    }

    fn parse_entry(&mut self) -> Result<Option<CatalogEntry>, ParseError> {
        let head = self.next();
        let is_family = match &head.tok {
            Tok::Eof => return Ok(None),
            Tok::Ident(w) if w == "algebra" => false,
            Tok::Ident(w) if w == "family" => true,
            _ => return self.error(&head, "expected 'algebra' or 'family'"),
        };
        let id_tok = self.next();
        let id = match &id_tok.tok {
            Tok::Str(s) if !s.is_empty() => s.clone(),
            _ => return self.error(&id_tok, "expected a quoted entry name"),
        };
        self.expect_keyword("dim")?;
        let (dim, dim_at) = self.expect_index("the dimension")?;
        if dim > crate::exterior::MAX_DIM {
            return self.error(&dim_at, "dimension too large");
        }

        let mut excluded = BTreeSet::new();
        let mut invariant = None;
        if is_family {
            self.expect_keyword("param")?;
            let name_tok = self.next();
            let name = match &name_tok.tok {
                Tok::Ident(s) => s.clone(),
                _ => return self.error(&name_tok, "expected a parameter name"),
            };
            self.param = Some(name);

            if matches!(&self.peek().tok, Tok::Ident(w) if w == "exclude") {
                self.next();
                self.expect(Tok::LBrace, "'{'")?;
                if self.peek().tok != Tok::RBrace {
                    loop {
                        excluded.insert(self.parse_rational()?);
                        if self.peek().tok == Tok::Comma {
                            self.next();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Tok::RBrace, "'}'")?;
            }

            if matches!(&self.peek().tok, Tok::Ident(w) if w == "invariant") {
                self.next();
                let src_tok = self.next();
                let src = match &src_tok.tok {
                    Tok::Str(s) => s.clone(),
                    _ => return self.error(&src_tok, "expected a quoted invariant expression"),
                };
                let toks = lex(&src, src_tok.line)?;
                let mut sub = Parser::new(toks, self.param.clone());
                let func = sub.parse_expr()?;
                let end = sub.next();
                if end.tok != Tok::Eof {
                    return sub.error(&end, "trailing input in invariant expression");
                }
                invariant = Some(
                    FamilyInvariant::new(func.num, func.den)
                        .expect("parsed rational function has a nonzero denominator"),
                );
            }
        }

        self.expect(Tok::LBrace, "'{'")?;
        let mut seen = BTreeSet::new();
        let mut entries = Vec::new();
        while self.peek().tok != Tok::RBrace {
            self.parse_bracket(dim, &mut seen, &mut entries)?;
        }
        self.expect(Tok::RBrace, "'}'")?;

        let algebra = if is_family {
            Algebra::Parametric(LieAlgebra::from_entries(dim, &entries))
        } else {
            let rational: Vec<(usize, usize, usize, Rational)> = entries
                .into_iter()
                .map(|(i, j, k, p)| {
                    let c = p.as_constant().expect("no parameter in scope");
                    (i, j, k, c)
                })
                .collect();
            Algebra::Rational(LieAlgebra::from_entries(dim, &rational))
        };

        let param_name = self.param.take();
        Ok(Some(CatalogEntry {
            id,
            param_name,
            constraint: LambdaRule {
                excluded: excluded.clone(),
                lower_bound: None,
            },
            excluded,
            invariant,
            algebra,
            expected_upper_dims: None,
            expected_witness: None,
            expected_top_coefficient: None,
            expected_exceptional: None,
            rational_basis_known: false,
        }))
    }
}

/// Parses a full definition file into catalog entries (no expectations
/// attached).
pub fn parse(source: &str) -> Result<Vec<CatalogEntry>, ParseError> {
    let toks = lex(source, 1)?;
    let mut parser = Parser::new(toks, None);
    let mut out: Vec<CatalogEntry> = Vec::new();
    while let Some(entry) = parser.parse_entry()? {
        if out.iter().any(|e| e.id == entry.id) {
            return Err(ParseError {
                line: 1,
                col: 1,
                token: entry.id.clone(),
                message: format!("duplicate entry id \"{}\"", entry.id),
            });
        }
        out.push(entry);
    }
    Ok(out)
}

/// Canonical printer; `parse(render(entries))` reproduces the entries.
pub fn render(entries: &[CatalogEntry]) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    for entry in entries {
        let dim = entry.algebra.dim();
        match &entry.algebra {
            Algebra::Rational(g) => {
                let _ = write!(out, "algebra \"{}\" dim {} {{", entry.id, dim);
                for ((i, j), v) in g.brackets() {
                    let _ = write!(out, " [{i},{j}]=");
                    let _ = write!(out, "{};", render_bracket_rhs_rational(v));
                }
                let _ = writeln!(out, " }}");
            }
            Algebra::Parametric(g) => {
                let param = entry.param_name.as_deref().unwrap_or("lambda");
                let _ = write!(out, "family \"{}\" dim {} param {}", entry.id, dim, param);
                if !entry.excluded.is_empty() {
                    let vals: Vec<String> = entry.excluded.iter().map(|r| r.to_string()).collect();
                    let _ = write!(out, " exclude {{ {} }}", vals.join(", "));
                }
                if let Some(inv) = &entry.invariant {
                    let _ = write!(
                        out,
                        " invariant \"({}) / ({})\"",
                        render_poly(inv.numerator(), param),
                        render_poly(inv.denominator(), param)
                    );
                }
                let _ = write!(out, " {{");
                for ((i, j), v) in g.brackets() {
                    let _ = write!(out, " [{i},{j}]=");
                    let _ = write!(out, "{};", render_bracket_rhs_poly(v, param));
                }
                let _ = writeln!(out, " }}");
            }
        }
    }
    out
}

fn render_poly(p: &UniPoly, param: &str) -> String {
    p.to_string().replace("lambda", param)
}

fn render_bracket_rhs_rational(v: &[Rational]) -> String {
    let polys: Vec<UniPoly> = v.iter().map(|c| UniPoly::constant(c.clone())).collect();
    render_bracket_rhs_poly(&polys, "lambda")
}

fn render_bracket_rhs_poly(v: &[UniPoly], param: &str) -> String {
    let mut parts = Vec::new();
    for (k, c) in v.iter().enumerate() {
        if Ring::is_zero(c) {
            continue;
        }
        parts.push(render_term(c, k + 1, param));
    }
    let mut out = String::new();
    for (idx, part) in parts.iter().enumerate() {
        if idx == 0 {
            out.push_str(part);
        } else if let Some(rest) = part.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(part);
        }
    }
    out
}

fn render_term(coeff: &UniPoly, target: usize, param: &str) -> String {
    match coeff.as_constant() {
        Some(c) => {
            let one = rat(1);
            if c == one {
                format!("{target}")
            } else if c == -&one {
                format!("-{target}")
            } else {
                format!("{c}*{target}")
            }
        }
        None => {
            if coeff == &UniPoly::lambda() {
                format!("{param}*{target}")
            } else if coeff == &Ring::neg(&UniPoly::lambda()) {
                format!("-{param}*{target}")
            } else {
                format!("({})*{target}", render_poly(coeff, param))
            }
        }
    }
}

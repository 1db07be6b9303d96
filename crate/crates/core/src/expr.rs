//! A small exact expression language.
//!
//! Expressions appear as coefficients in algebra and witness files
//! (`-alpha`, `(2t+1)/4`, `2i t`), and as formulas in orbit fixtures
//! (`(a4-a2)/a3`, `sqrt(v*a4/a2)`). Juxtaposition is multiplication and has
//! the same precedence as `*` and `/`, associating to the left, so
//! `1/2 t` is `(1/2)·t`. The identifier `i` is the imaginary unit.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactmath::{Field, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Imag,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Sqrt(Box<Expr>),
}

impl Expr {
    /// Parses a complete expression; trailing input is an error.
    pub fn parse(src: &str) -> Result<Expr> {
        let tokens = lex(src, 1)?;
        let mut p = TokenStream::new(&tokens);
        let e = p.expr()?;
        p.expect_end()?;
        Ok(e)
    }

    /// Evaluates with `lookup` supplying variable values.
    pub fn eval<F: Field>(&self, lookup: &dyn Fn(&str) -> Option<F>) -> Result<F> {
        Ok(match self {
            Expr::Int(n) => F::from_rational(Rational::from_integer(n.clone())),
            Expr::Var(name) => lookup(name).ok_or_else(|| Error::UnboundParameter(name.clone()))?,
            Expr::Imag => F::imaginary_unit()
                .ok_or_else(|| Error::Invalid("the imaginary unit is not available here".into()))?,
            Expr::Neg(a) => a.eval(lookup)?.neg(),
            Expr::Add(a, b) => a.eval(lookup)?.add(&b.eval(lookup)?),
            Expr::Sub(a, b) => a.eval(lookup)?.sub(&b.eval(lookup)?),
            Expr::Mul(a, b) => a.eval(lookup)?.mul(&b.eval(lookup)?),
            Expr::Div(a, b) => a.eval(lookup)?.div(&b.eval(lookup)?)?,
            Expr::Pow(a, k) => {
                let base = a.eval(lookup)?;
                let p = base.pow(k.unsigned_abs());
                if *k < 0 {
                    p.inv()?
                } else {
                    p
                }
            }
            Expr::Sqrt(a) => {
                let v = a.eval(lookup)?;
                v.try_sqrt()
                    .ok_or_else(|| Error::Invalid(format!("{v} has no exact square root")))?
            }
        })
    }

    /// Names of all variables, in first-occurrence order.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Int(_) | Expr::Imag => {}
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Sqrt(a) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Imag => write!(f, "i"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 4)
            }
            Expr::Add(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " + ")?;
                wrap(f, b, 2)
            }
            Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " - ")?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "*")?;
                wrap(f, b, 3)
            }
            Expr::Div(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "/")?;
                wrap(f, b, 4)
            }
            Expr::Pow(a, k) => {
                wrap(f, a, 5)?;
                if *k < 0 {
                    write!(f, "^({k})")
                } else {
                    write!(f, "^{k}")
                }
            }
            Expr::Sqrt(a) => write!(f, "sqrt({a})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Int(BigInt),
    Ident(String),
    /// `e<k>`: a basis vector of the algebra (1-based).
    Basis(usize),
    /// `E<k>`: a row of a parametrized basis (1-based).
    Row(usize),
    /// `D<ij>`: an elementary bilinear form.
    Delta(usize, usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
    Neq,
    Le,
    Comma,
    Semi,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Basis(k) => write!(f, "`e{k}`"),
            Tok::Row(k) => write!(f, "`E{k}`"),
            Tok::Delta(i, j) => write!(f, "`D{i}{j}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Neq => write!(f, "`!=`"),
            Tok::Le => write!(f, "`<=`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Semi => write!(f, "`;`"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits one line of input into tokens. Columns are 1-based.
pub fn lex(src: &str, line: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let column = k + 1;
        let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, line, column });
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let text: String = chars[start..k].iter().collect();
            push(&mut out, Tok::Int(text.parse().expect("digits")));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len()
                && (chars[k].is_alphanumeric() || chars[k] == '_' || chars[k] == '\'')
            {
                k += 1;
            }
            let word: String = chars[start..k].iter().collect();
            push(&mut out, classify_word(&word, line, column)?);
            continue;
        }
        let two: String = chars[k..(k + 2).min(chars.len())].iter().collect();
        let (tok, width) = match (c, two.as_str()) {
            (_, "!=") => (Tok::Neq, 2),
            (_, "<=") => (Tok::Le, 2),
            ('+', _) => (Tok::Plus, 1),
            ('-', _) | ('−', _) => (Tok::Minus, 1),
            ('*', _) | ('·', _) => (Tok::Star, 1),
            ('/', _) => (Tok::Slash, 1),
            ('^', _) => (Tok::Caret, 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('=', _) => (Tok::Eq, 1),
            (',', _) => (Tok::Comma, 1),
            (';', _) => (Tok::Semi, 1),
            _ => {
                return Err(parse_error(
                    line,
                    column,
                    format!("unexpected character `{c}`"),
                ))
            }
        };
        push(&mut out, tok);
        k += width;
    }
    Ok(out)
}

fn classify_word(word: &str, line: usize, column: usize) -> Result<Tok> {
    let (head, rest) = word.split_at(1);
    let digits = !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit());
    let index = |s: &str| -> Result<usize> {
        s.parse::<usize>()
            .map_err(|_| parse_error(line, column, format!("bad index in `{word}`")))
    };
    Ok(match head {
        "e" if digits => Tok::Basis(index(rest)?),
        "E" if digits => Tok::Row(index(rest)?),
        "D" if digits => {
            // D13 means Δ_{1,3}; two-digit forms need a separator: D10_2.
            if let Some((a, b)) = rest.split_once('_') {
                Tok::Delta(index(a)?, index(b)?)
            } else if rest.len() == 2 {
                Tok::Delta(index(&rest[..1])?, index(&rest[1..])?)
            } else {
                return Err(parse_error(
                    line,
                    column,
                    format!("ambiguous form index `{word}`"),
                ));
            }
        }
        "D" if rest.contains('_')
            && rest
                .split('_')
                .all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_digit())) =>
        {
            let (a, b) = rest.split_once('_').expect("checked");
            Tok::Delta(index(a)?, index(b)?)
        }
        _ => Tok::Ident(word.to_string()),
    })
}

/// Cursor over a token list with the shared expression grammar.
pub struct TokenStream<'a> {
    toks: &'a [Spanned],
    pos: usize,
}

impl<'a> TokenStream<'a> {
    pub fn new(toks: &'a [Spanned]) -> Self {
        TokenStream { toks, pos: 0 }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    pub fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|s| &s.tok)
    }

    pub fn advance(&mut self) -> Option<&Spanned> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    /// Position of the current token, or just past the last one.
    pub fn location(&self) -> (usize, usize) {
        match self.toks.get(self.pos) {
            Some(s) => (s.line, s.column),
            None => self.toks.last().map_or((1, 1), |s| (s.line, s.column + 1)),
        }
    }

    pub fn error(&self, expected: &str) -> Error {
        let (line, column) = self.location();
        let found = self
            .peek()
            .map_or("end of line".to_string(), |t| t.to_string());
        parse_error(line, column, format!("expected {expected}, found {found}"))
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&tok.to_string()))
        }
    }

    pub fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("end of line"))
        }
    }

    /// Parses `[±] [coeff [*]] SYM (± [coeff [*]] SYM)*` where `SYM` is a
    /// token accepted by `is_symbol`. A lone `0` is the empty combination.
    /// Repeated symbols are kept as separate terms; callers sum them.
    pub fn linear_combination(
        &mut self,
        is_symbol: fn(&Tok) -> bool,
        what: &str,
    ) -> Result<Vec<(Expr, Tok)>> {
        if matches!(self.peek(), Some(Tok::Int(n)) if n == &BigInt::from(0))
            && self.peek_at(1).is_none()
        {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut terms = Vec::new();
        let mut negative = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        loop {
            let coeff = match self.peek() {
                Some(t) if is_symbol(t) => Expr::Int(BigInt::from(1)),
                _ => {
                    let c = self.product()?;
                    self.eat(&Tok::Star);
                    c
                }
            };
            let sym = match self.peek() {
                Some(t) if is_symbol(t) => t.clone(),
                _ => return Err(self.error(what)),
            };
            self.pos += 1;
            terms.push((
                if negative {
                    Expr::Neg(Box::new(coeff))
                } else {
                    coeff
                },
                sym,
            ));
            if self.eat(&Tok::Plus) {
                negative = false;
            } else if self.eat(&Tok::Minus) {
                negative = true;
            } else {
                return Ok(terms);
            }
        }
    }

    pub fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    /// A product of factors; stops before a basis symbol, so that
    /// `-1/2 e3` yields the coefficient `-1/2`.
    pub fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) if !self.basis_follows(1) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn basis_follows(&self, offset: usize) -> bool {
        matches!(self.peek_at(offset), Some(Tok::Basis(_) | Tok::Delta(..)))
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let paren = self.eat(&Tok::LParen);
        let negative = self.eat(&Tok::Minus);
        let exp = match self.advance().map(|s| s.tok.clone()) {
            Some(Tok::Int(n)) => n.to_i32().ok_or_else(|| self.error("a small exponent"))?,
            _ => {
                self.pos -= 1;
                return Err(self.error("an integer exponent"));
            }
        };
        if paren {
            self.expect(&Tok::RParen)?;
        }
        Ok(Expr::Pow(Box::new(base), if negative { -exp } else { exp }))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "sqrt" {
                    self.expect(&Tok::LParen)?;
                    let inner = self.expr()?;
                    self.expect(&Tok::RParen)?;
                    return Ok(Expr::Sqrt(Box::new(inner)));
                }
                Ok(if name == "i" {
                    Expr::Imag
                } else {
                    Expr::Var(name)
                })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(inner)
            }
            _ => Err(self.error("a number, name or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{q, GaussianRational as G, RatFunc};

    fn eval_g(src: &str, vars: &[(&str, G)]) -> Result<G> {
        let e = Expr::parse(src)?;
        e.eval(&|name: &str| {
            vars.iter()
                .find(|(n, _)| *n == name)
                .map(|(_, v)| v.clone())
        })
    }

    #[test]
    fn juxtaposition_and_precedence() {
        assert_eq!(
            eval_g("1/2 t", &[("t", G::from_int(4))]).unwrap(),
            G::from_int(2)
        );
        assert_eq!(eval_g("2i", &[]).unwrap(), G::i().mul(&G::from_int(2)));
        assert_eq!(eval_g("-1/2", &[]).unwrap(), q(-1, 2));
        assert_eq!(
            eval_g("(2t+1)/4", &[("t", G::from_int(1))]).unwrap(),
            q(3, 4)
        );
        assert_eq!(
            eval_g("t(t^2+1)", &[("t", G::from_int(2))]).unwrap(),
            G::from_int(10)
        );
        assert_eq!(eval_g("2^-1", &[]).unwrap(), q(1, 2));
    }

    #[test]
    fn square_roots_and_unbound() {
        assert_eq!(eval_g("sqrt(9/4)", &[]).unwrap(), q(3, 2));
        assert!(matches!(eval_g("sqrt(2)", &[]), Err(Error::Invalid(_))));
        assert_eq!(
            eval_g("x + 1", &[]),
            Err(Error::UnboundParameter("x".into()))
        );
        assert_eq!(
            eval_g("1/(x-x)", &[("x", G::one())]),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn rational_function_values() {
        let e = Expr::parse("t(t^2+1)").unwrap();
        let t = RatFunc::var();
        let v: RatFunc = e.eval(&|_: &str| Some(t.clone())).unwrap();
        assert_eq!(v.to_string(), "t^3 + t");
    }

    #[test]
    fn error_positions() {
        match Expr::parse("1 + * 2") {
            Err(Error::Parse {
                line,
                column,
                message,
            }) => {
                assert_eq!((line, column), (1, 5));
                assert!(message.contains("expected a number"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn display_reparses() {
        for src in [
            "(a4-a2)/a3",
            "-x*a1/(2*a2)",
            "sqrt(v*a4/a2)",
            "x^2*(x*a1 + z*a3)",
            "2^(-3)",
        ] {
            let e = Expr::parse(src).unwrap();
            assert_eq!(Expr::parse(&e.to_string()).unwrap(), e, "{src}");
        }
    }
}

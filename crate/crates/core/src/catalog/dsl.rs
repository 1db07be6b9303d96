//! Plain-text formats for algebras and degeneration witnesses.
//!
//! ```text
//! algebra N2
//! dim 4
//! param alpha
//! e1*e1 = e3
//! e2*e1 = -alpha e3
//! ```
//!
//! ```text
//! degeneration from=J4_17 to=J4_16
//! E1 = 1/t e1
//! E2 = t^(-2) e2
//! ```
//!
//! `#` starts a comment. Unlisted products are zero. Repeated basis
//! symbols within one right-hand side are summed.

use std::collections::BTreeMap;

use crate::algebra::Algebra;
use crate::degeneration::{DegenerationStatus, DegenerationWitness};
use crate::error::{Error, Result};
use crate::exactmath::{Field, GaussianRational as G, Matrix, RatFunc};
use crate::expr::{lex, Expr, Spanned, Tok, TokenStream};

/// A numbered, comment-stripped source line.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Line<'a> {
    pub number: usize,
    pub text: &'a str,
}

impl<'a> Line<'a> {
    pub fn keyword(&self) -> &'a str {
        self.text.split_whitespace().next().unwrap_or("")
    }

    /// Text after the keyword.
    pub fn rest(&self) -> &'a str {
        let t = self.text.trim_start();
        t[self.keyword().len()..].trim()
    }

    /// Tokens of the text after the keyword, with columns relative to
    /// the whole line.
    pub fn rest_tokens(&self) -> Result<Vec<Spanned>> {
        let offset = self.text.len() - self.text.trim_start().len() + self.keyword().len();
        let mut toks = lex(&self.text[offset..], self.number)?;
        let shift = self.text[..offset].chars().count();
        for t in &mut toks {
            t.column += shift;
        }
        Ok(toks)
    }

    pub fn tokens(&self) -> Result<Vec<Spanned>> {
        lex(self.text, self.number)
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            column: self.text.len() - self.text.trim_start().len() + 1,
            message: message.into(),
        }
    }
}

pub(crate) const HEADERS: &[&str] = &[
    "algebra",
    "degeneration",
    "labels",
    "aut",
    "orbit",
    "extension",
    "predicate",
];

/// Splits text into blocks, each starting at a header keyword.
pub(crate) fn blocks(text: &str) -> Result<Vec<Vec<Line<'_>>>> {
    let mut out: Vec<Vec<Line>> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("").trim_end();
        if text.trim().is_empty() {
            continue;
        }
        let line = Line {
            number: k + 1,
            text,
        };
        if HEADERS.contains(&line.keyword()) {
            out.push(vec![line]);
        } else if let Some(b) = out.last_mut() {
            b.push(line);
        } else {
            return Err(line.error(format!(
                "expected a header ({}), found `{}`",
                HEADERS.join(", "),
                line.keyword()
            )));
        }
    }
    Ok(out)
}

pub(crate) fn name_of(line: &Line) -> Result<String> {
    let rest = line.rest();
    if rest.is_empty() || rest.contains(char::is_whitespace) {
        return Err(line.error(format!("`{}` takes a single name", line.keyword())));
    }
    Ok(rest.to_string())
}

/// Sums repeated symbols, keeping first-occurrence order.
pub(crate) fn merge_terms(terms: Vec<(Expr, usize)>) -> Vec<(Expr, usize)> {
    let mut out: Vec<(Expr, usize)> = Vec::new();
    for (c, k) in terms {
        match out.iter_mut().find(|(_, j)| *j == k) {
            Some((prev, _)) => *prev = Expr::Add(Box::new(prev.clone()), Box::new(c)),
            None => out.push((c, k)),
        }
    }
    out
}

fn is_basis(t: &Tok) -> bool {
    matches!(t, Tok::Basis(_))
}

fn basis_combination(ts: &mut TokenStream, dim: usize, line: usize) -> Result<Vec<(Expr, usize)>> {
    let terms = ts.linear_combination(is_basis, "a basis vector like `e3`")?;
    ts.expect_end()?;
    let mut out = Vec::new();
    for (c, t) in terms {
        let Tok::Basis(k) = t else { unreachable!() };
        if k == 0 || k > dim {
            return Err(Error::IndexOutOfRange {
                index: k,
                dim,
                line,
            });
        }
        out.push((c, k));
    }
    Ok(merge_terms(out))
}

fn render_coeff(c: &Expr) -> String {
    match c {
        Expr::Int(n) if n == &1.into() => String::new(),
        Expr::Add(..) | Expr::Sub(..) | Expr::Neg(..) => format!("({c}) "),
        _ => format!("{c} "),
    }
}

/// Renders `Σ c_k sym_k` in a form [`TokenStream::linear_combination`]
/// parses back to the same coefficients.
pub(crate) fn render_combination(terms: &[(Expr, usize)], symbol: &str) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (n, (c, k)) in terms.iter().enumerate() {
        let (neg, body) = match c {
            Expr::Neg(inner) => (true, inner.as_ref()),
            _ => (false, c),
        };
        match (n, neg) {
            (0, false) => {}
            (0, true) => s.push('-'),
            (_, false) => s.push_str(" + "),
            (_, true) => s.push_str(" - "),
        }
        s.push_str(&render_coeff(body));
        s.push_str(&format!("{symbol}{k}"));
    }
    s
}

/// `e_i·e_j = Σ coeff·e_k`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub left: usize,
    pub right: usize,
    pub terms: Vec<(Expr, usize)>,
}

/// An algebra or a family of algebras given by a template whose constants
/// are expressions in the parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub dim: usize,
    pub params: Vec<String>,
    pub products: Vec<Product>,
    pub note: Option<String>,
}

impl CatalogEntry {
    pub fn is_family(&self) -> bool {
        !self.params.is_empty()
    }

    /// Instantiates over any field; `lookup` supplies parameter values.
    pub fn instantiate_with<F: Field>(
        &self,
        lookup: &dyn Fn(&str) -> Option<F>,
    ) -> Result<Algebra<F>> {
        if let Some(p) = self.params.iter().find(|p| lookup(p).is_none()) {
            return Err(Error::UnboundParameter(p.clone()));
        }
        let mut entries = Vec::new();
        for p in &self.products {
            for (c, k) in &p.terms {
                let v = c.eval(lookup).map_err(|e| match e {
                    Error::DivisionByZero => Error::EvaluationPole(format!(
                        "coefficient `{c}` of e{} in e{}*e{} ({})",
                        k, p.left, p.right, self.name
                    )),
                    other => other,
                })?;
                entries.push((p.left - 1, p.right - 1, k - 1, v));
            }
        }
        Ok(Algebra::from_entries(self.dim, entries)?.with_name(self.name.clone()))
    }

    pub fn instantiate(&self, values: &BTreeMap<String, G>) -> Result<Algebra> {
        self.instantiate_with(&|name: &str| values.get(name).cloned())
    }

    /// The algebra of a parameter-free entry.
    pub fn algebra(&self) -> Result<Algebra> {
        self.instantiate(&BTreeMap::new())
    }

    /// One-parameter families at `value`.
    pub fn at(&self, value: &G) -> Result<Algebra> {
        let mut values = BTreeMap::new();
        for p in &self.params {
            values.insert(p.clone(), value.clone());
        }
        self.instantiate(&values)
    }

    /// Entry with the given concrete constants.
    pub fn from_algebra(name: &str, a: &Algebra) -> Self {
        let n = a.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let terms: Vec<(Expr, usize)> = (0..n)
                    .filter(|&k| !a.constant(i, j, k).is_zero())
                    .map(|k| (scalar_expr(a.constant(i, j, k)), k + 1))
                    .collect();
                if !terms.is_empty() {
                    products.push(Product {
                        left: i + 1,
                        right: j + 1,
                        terms,
                    });
                }
            }
        }
        CatalogEntry {
            name: name.to_string(),
            dim: n,
            params: Vec::new(),
            products,
            note: None,
        }
    }

    pub fn render(&self) -> String {
        let mut s = format!("algebra {}\ndim {}\n", self.name, self.dim);
        for p in &self.params {
            s.push_str(&format!("param {p}\n"));
        }
        if let Some(n) = &self.note {
            s.push_str(&format!("note {n}\n"));
        }
        for p in &self.products {
            s.push_str(&format!(
                "e{}*e{} = {}\n",
                p.left,
                p.right,
                render_combination(&p.terms, "e")
            ));
        }
        s
    }
}

/// An exact expression for a Gaussian rational, suitable for rendering.
pub fn scalar_expr(v: &G) -> Expr {
    Expr::parse(&v.to_string()).expect("scalars render as parseable expressions")
}

pub(crate) fn parse_algebra_block(lines: &[Line]) -> Result<CatalogEntry> {
    let head = lines[0];
    if head.keyword() != "algebra" {
        return Err(head.error("expected `algebra NAME`"));
    }
    let mut entry = CatalogEntry {
        name: name_of(&head)?,
        dim: 0,
        params: Vec::new(),
        products: Vec::new(),
        note: None,
    };
    let mut dim = None;
    for line in &lines[1..] {
        match line.keyword() {
            "dim" => {
                let d: usize = line
                    .rest()
                    .parse()
                    .map_err(|_| line.error("`dim` takes an integer"))?;
                dim = Some(d);
            }
            "param" => {
                for p in line.rest().split_whitespace() {
                    if p == "i" || p == "t" || !p.chars().all(|c| c.is_alphanumeric() || c == '_') {
                        return Err(line.error(format!("`{p}` cannot be a parameter name")));
                    }
                    entry.params.push(p.to_string());
                }
            }
            "note" => entry.note = Some(line.rest().to_string()),
            _ => {
                let d = dim.ok_or_else(|| line.error("`dim` must come before the products"))?;
                let toks = line.tokens()?;
                let mut ts = TokenStream::new(&toks);
                let index = |ts: &mut TokenStream| -> Result<usize> {
                    match ts.peek().cloned() {
                        Some(Tok::Basis(k)) => {
                            ts.advance();
                            if k == 0 || k > d {
                                return Err(Error::IndexOutOfRange {
                                    index: k,
                                    dim: d,
                                    line: line.number,
                                });
                            }
                            Ok(k)
                        }
                        _ => Err(ts.error("a basis vector like `e1`")),
                    }
                };
                let left = index(&mut ts)?;
                ts.expect(&Tok::Star)?;
                let right = index(&mut ts)?;
                ts.expect(&Tok::Eq)?;
                let terms = basis_combination(&mut ts, d, line.number)?;
                for (c, _) in &terms {
                    if let Some(v) = c
                        .variables()
                        .into_iter()
                        .find(|v| !entry.params.contains(v))
                    {
                        return Err(line.error(format!("`{v}` is not a declared parameter")));
                    }
                }
                if entry
                    .products
                    .iter()
                    .any(|p| p.left == left && p.right == right)
                {
                    return Err(Error::DuplicateProduct(left, right, line.number));
                }
                entry.products.push(Product { left, right, terms });
            }
        }
    }
    entry.dim = dim.ok_or_else(|| head.error("missing `dim` line"))?;
    Ok(entry)
}

/// Parses a single algebra.
pub fn parse_algebra(text: &str) -> Result<CatalogEntry> {
    let bs = blocks(text)?;
    match bs.as_slice() {
        [b] => parse_algebra_block(b),
        [] => Err(Error::Parse {
            line: 1,
            column: 1,
            message: "expected `algebra NAME`, found end of input".into(),
        }),
        [_, second, ..] => Err(second[0].error("only one algebra per file")),
    }
}

/// Parses a file holding any number of algebras.
pub fn parse_algebras(text: &str) -> Result<Vec<CatalogEntry>> {
    blocks(text)?
        .iter()
        .map(|b| parse_algebra_block(b))
        .collect()
}

#[derive(Clone, Debug)]
pub struct WitnessEntry {
    pub name: String,
    pub witness: DegenerationWitness,
    /// The rows as written (after summing repeats).
    pub row_terms: Vec<Vec<(Expr, usize)>>,
    /// The outcome the stored rows are expected to produce. Anything other
    /// than `Pass` marks a basis reproduced verbatim despite a known slip.
    pub expect: DegenerationStatus,
    pub note: Option<String>,
}

fn status_keyword(s: DegenerationStatus) -> &'static str {
    match s {
        DegenerationStatus::Pass => "pass",
        DegenerationStatus::PoleAtZero => "pole",
        DegenerationStatus::TargetMismatch => "mismatch",
    }
}

impl PartialEq for WitnessEntry {
    fn eq(&self, o: &Self) -> bool {
        self.name == o.name
            && self.witness.source == o.witness.source
            && self.witness.target == o.witness.target
            && self.witness.index == o.witness.index
            && self.witness.rows == o.witness.rows
            && self.row_terms == o.row_terms
            && self.expect == o.expect
            && self.note == o.note
    }
}

impl WitnessEntry {
    pub fn render(&self) -> String {
        let w = &self.witness;
        let mut s = format!("degeneration from={} to={}", w.source, w.target);
        if self.name != default_witness_name(&w.source, &w.target) {
            s.push_str(&format!(" name={}", self.name));
        }
        if self.expect != DegenerationStatus::Pass {
            s.push_str(&format!(" expect={}", status_keyword(self.expect)));
        }
        if let Some((p, f)) = &w.index {
            s.push_str(&format!(" index {p} = {f}"));
        }
        s.push('\n');
        if let Some(n) = &self.note {
            s.push_str(&format!("note {n}\n"));
        }
        for (k, row) in self.row_terms.iter().enumerate() {
            s.push_str(&format!("E{} = {}\n", k + 1, render_combination(row, "e")));
        }
        s
    }
}

fn default_witness_name(from: &str, to: &str) -> String {
    format!("{from} -> {to}")
}

fn rat_lookup(name: &str) -> Option<RatFunc> {
    (name == "t").then(RatFunc::var)
}

pub(crate) fn parse_witness_block(lines: &[Line]) -> Result<WitnessEntry> {
    let head = lines[0];
    if head.keyword() != "degeneration" {
        return Err(head.error("expected `degeneration from=A to=B`"));
    }
    let rest = head.rest();
    let (pairs, index_src) = match rest.find(" index ") {
        Some(p) => (&rest[..p], Some(&rest[p + " index ".len()..])),
        None => (rest, None),
    };
    let (mut from, mut to, mut name) = (None, None, None);
    let mut expect = DegenerationStatus::Pass;
    for kv in pairs.split_whitespace() {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| head.error(format!("expected `key=value`, found `{kv}`")))?;
        match k {
            "from" => from = Some(v.to_string()),
            "to" => to = Some(v.to_string()),
            "name" => name = Some(v.to_string()),
            "expect" => {
                expect = [
                    DegenerationStatus::Pass,
                    DegenerationStatus::PoleAtZero,
                    DegenerationStatus::TargetMismatch,
                ]
                .into_iter()
                .find(|s| status_keyword(*s) == v)
                .ok_or_else(|| {
                    head.error(format!(
                        "`expect` takes pass, pole or mismatch, found `{v}`"
                    ))
                })?;
            }
            _ => return Err(head.error(format!("unknown key `{k}`"))),
        }
    }
    let from = from.ok_or_else(|| head.error("missing `from=`"))?;
    let to = to.ok_or_else(|| head.error("missing `to=`"))?;
    let index = match index_src {
        None => None,
        Some(src) => {
            let toks = lex(src, head.number)?;
            let mut ts = TokenStream::new(&toks);
            let param = match ts.peek().cloned() {
                Some(Tok::Ident(p)) => {
                    ts.advance();
                    p
                }
                _ => return Err(ts.error("a parameter name")),
            };
            ts.expect(&Tok::Eq)?;
            let f = ts.expr()?;
            ts.expect_end()?;
            if let Some(v) = f.variables().into_iter().find(|v| v != "t") {
                return Err(Error::UnboundParameter(v));
            }
            Some((param, f))
        }
    };
    let mut rows: BTreeMap<usize, (usize, Vec<(Expr, usize)>)> = BTreeMap::new();
    let mut parsed = Vec::new();
    let mut note = None;
    for line in &lines[1..] {
        if line.keyword() == "note" {
            if note.is_some() {
                return Err(line.error("second `note` line"));
            }
            note = Some(line.rest().to_string());
            continue;
        }
        let toks = line.tokens()?;
        let mut ts = TokenStream::new(&toks);
        let k = match ts.peek().cloned() {
            Some(Tok::Row(k)) => {
                ts.advance();
                k
            }
            _ => return Err(ts.error("a basis row like `E1`")),
        };
        ts.expect(&Tok::Eq)?;
        let terms = ts.linear_combination(is_basis, "a basis vector like `e3`")?;
        ts.expect_end()?;
        parsed.push((line.number, k, terms));
    }
    let dim = parsed.len();
    for (number, k, terms) in parsed {
        if k == 0 || k > dim {
            return Err(Error::IndexOutOfRange {
                index: k,
                dim,
                line: number,
            });
        }
        if rows.contains_key(&k) {
            return Err(Error::DuplicateRow(k, number));
        }
        let mut out = Vec::new();
        for (c, t) in terms {
            let Tok::Basis(j) = t else { unreachable!() };
            if j == 0 || j > dim {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    dim,
                    line: number,
                });
            }
            if let Some(v) = c.variables().into_iter().find(|v| v != "t") {
                return Err(Error::UnboundParameter(v));
            }
            out.push((c, j));
        }
        rows.insert(k, (number, merge_terms(out)));
    }
    let mut matrix: Matrix<RatFunc> = Matrix::zeros(dim, dim);
    let mut row_terms = Vec::new();
    for (k, (number, terms)) in rows {
        for (c, j) in &terms {
            let v = c.eval(&rat_lookup).map_err(|e| match e {
                Error::DivisionByZero => Error::EvaluationPole(format!("row E{k} (line {number})")),
                other => other,
            })?;
            let cur = matrix.get(k - 1, j - 1).add(&v);
            matrix.set(k - 1, j - 1, cur);
        }
        row_terms.push(terms);
    }
    if matrix.determinant()?.is_zero() {
        return Err(Error::SingularBasisMatrix);
    }
    let name = name.unwrap_or_else(|| default_witness_name(&from, &to));
    Ok(WitnessEntry {
        name: name.clone(),
        witness: DegenerationWitness {
            name,
            source: from,
            target: to,
            index,
            rows: matrix,
        },
        row_terms,
        expect,
        note,
    })
}

/// Parses a single degeneration witness.
pub fn parse_witness(text: &str) -> Result<WitnessEntry> {
    let bs = blocks(text)?;
    match bs.as_slice() {
        [b] => parse_witness_block(b),
        [] => Err(Error::Parse {
            line: 1,
            column: 1,
            message: "expected `degeneration from=A to=B`, found end of input".into(),
        }),
        [_, second, ..] => Err(second[0].error("only one witness per file")),
    }
}

pub fn parse_witnesses(text: &str) -> Result<Vec<WitnessEntry>> {
    blocks(text)?
        .iter()
        .map(|b| parse_witness_block(b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    #[test]
    fn parses_algebra() {
        let e = parse_algebra("algebra J4_05\ndim 4\ne1*e1 = e2\ne2*e3 = e4\ne3*e2 = e4").unwrap();
        let a = e.algebra().unwrap();
        assert_eq!(a.constant(0, 0, 1), &G::one());
        assert_eq!(a.constant(1, 2, 3), &G::one());
        assert_eq!(a.nonzero_products().count(), 3);
        let z = parse_algebra("algebra Z\ndim 2").unwrap();
        assert!(z.algebra().unwrap().is_zero_product());
    }

    #[test]
    fn parses_family() {
        let e = parse_algebra("algebra N2\ndim 4\nparam alpha\ne1*e1 = e3\ne1*e2 = e4\ne2*e1 = -alpha e3\ne2*e2 = -e4")
            .unwrap();
        assert_eq!(e.params, vec!["alpha".to_string()]);
        let a = e.at(&q(7, 3)).unwrap();
        assert_eq!(a.constant(1, 0, 2), &q(-7, 3));
        assert_eq!(a.constant(1, 1, 3), &q(-1, 1));
        assert!(matches!(e.algebra(), Err(Error::UnboundParameter(p)) if p == "alpha"));
        let pole = parse_algebra("algebra P\ndim 2\nparam a\ne1*e1 = 1/a e2").unwrap();
        assert!(matches!(pole.at(&G::zero()), Err(Error::EvaluationPole(_))));
    }

    #[test]
    fn algebra_errors() {
        assert!(matches!(
            parse_algebra("algebra X\ndim 2\ne1*e3 = e2"),
            Err(Error::IndexOutOfRange {
                index: 3,
                dim: 2,
                line: 3
            })
        ));
        assert!(matches!(
            parse_algebra("algebra X\ndim 2\ne1*e1 = e2\ne1*e1 = 2 e2"),
            Err(Error::DuplicateProduct(1, 1, 4))
        ));
        match parse_algebra("algebra X\ndim 2\ne1*e1 = = e2") {
            Err(Error::Parse {
                line,
                column,
                message,
            }) => {
                assert_eq!((line, column), (3, 9));
                assert!(message.contains("expected"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_algebra("dim 2"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_algebra("algebra X\ne1*e1 = e2"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_algebra("algebra X\ndim 2\ne1*e1 = b e2"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn repeated_terms_are_summed_and_round_trip() {
        let e =
            parse_algebra("algebra X\ndim 3\nparam a\ne1*e1 = e2 + 2 e2 - a e3\ne2*e1 = -(1+i) e3")
                .unwrap();
        let a = e.at(&G::from_int(5)).unwrap();
        assert_eq!(a.constant(0, 0, 1), &G::from_int(3));
        assert_eq!(a.constant(0, 0, 2), &G::from_int(-5));
        let back = parse_algebra(&e.render()).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn parses_witness() {
        let w = parse_witness("degeneration from=J4_17 to=J4_16\nE1 = 1/t e1\nE2 = 1/t^2 e2\nE3 = 1/t^3 e3\nE4 = 1/t^4 e4")
            .unwrap();
        assert_eq!(
            w.witness.rows.get(1, 1),
            &RatFunc::var().pow(2).inv().unwrap()
        );
        assert_eq!(parse_witness(&w.render()).unwrap(), w);
        let doubled = parse_witness("degeneration from=A to=B\nE1 = t e1 + t e1").unwrap();
        assert_eq!(
            doubled.witness.rows.get(0, 0),
            &RatFunc::var().mul(&RatFunc::from_i64(2))
        );
        let idx = parse_witness("degeneration from=N2 to=X index alpha = 1/t\nE1 = e1").unwrap();
        assert!(idx.witness.index.is_some());
        assert_eq!(parse_witness(&idx.render()).unwrap(), idx);
    }

    #[test]
    fn witness_errors() {
        assert!(matches!(
            parse_witness("degeneration from=A to=B\nE1 = e1\nE2 = e1"),
            Err(Error::SingularBasisMatrix)
        ));
        assert!(matches!(
            parse_witness("degeneration from=A to=B\nE1 = e1\nE1 = e2"),
            Err(Error::DuplicateRow(1, 3))
        ));
        assert!(matches!(
            parse_witness("degeneration from=A to=B\nE1 = s e1"),
            Err(Error::UnboundParameter(_))
        ));
        assert!(matches!(
            parse_witness("degeneration to=B\nE1 = e1"),
            Err(Error::Parse { .. })
        ));
    }
}

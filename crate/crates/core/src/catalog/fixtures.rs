//! Text format for cohomology labels, automorphism families, orbit case
//! analyses, extension fixtures and structure predicates.

use std::fmt::Write as _;

use super::dsl::{blocks, name_of, Line};
use crate::algebra::Algebra;
use crate::cohomology::{
    Assignment, AutFamily, BilinearForm, Condition, Draw, Expectation, OrbitCaseFixture,
    OrbitClaim, Origin,
};
use crate::degeneration::StructurePredicate;
use crate::error::{Error, Result};
use crate::exactmath::GaussianRational as G;
use crate::expr::{Expr, Tok, TokenStream};

/// The forms behind the labels `n1, n2, …` of one base algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelSet {
    pub base: String,
    pub forms: Vec<BilinearForm>,
}

#[derive(Clone, Debug)]
pub struct AutEntry {
    pub base: String,
    pub family: AutFamily,
}

/// A one-dimensional central extension by `Σ coeffs[k]·n_{k+1}`, expected
/// to equal `target` after the basis change `witness` (rows are new basis
/// vectors).
#[derive(Clone, Debug)]
pub struct ExtensionFixture {
    pub target: String,
    pub base: String,
    pub coeffs: Vec<Expr>,
    pub form: BilinearForm,
    pub witness: Option<Vec<Vec<Expr>>>,
}

#[derive(Clone, Debug)]
pub struct NamedPredicate {
    pub name: String,
    pub predicate: StructurePredicate,
}

#[derive(Clone, Debug, Default)]
pub struct FixtureSet {
    pub labels: Vec<LabelSet>,
    pub auts: Vec<AutEntry>,
    pub orbits: Vec<OrbitCaseFixture>,
    pub extensions: Vec<ExtensionFixture>,
    pub predicates: Vec<NamedPredicate>,
}

impl FixtureSet {
    pub fn labels_for(&self, base: &str) -> Option<&LabelSet> {
        self.labels.iter().find(|l| l.base == base)
    }

    pub fn aut(&self, name: &str) -> Option<&AutEntry> {
        self.auts.iter().find(|a| a.family.name == name)
    }

    pub fn orbit(&self, name: &str) -> Option<&OrbitCaseFixture> {
        self.orbits.iter().find(|o| o.name == name)
    }

    pub fn predicate(&self, name: &str) -> Option<&StructurePredicate> {
        self.predicates
            .iter()
            .find(|p| p.name == name)
            .map(|p| &p.predicate)
    }
}

type Resolver<'a> = &'a dyn Fn(&str) -> Option<Algebra>;

fn resolve(line: &Line, name: &str, algebras: Resolver) -> Result<Algebra> {
    algebras(name).ok_or_else(|| line.error(format!("unknown algebra `{name}`")))
}

fn expr_list(line: &Line) -> Result<Vec<Expr>> {
    let toks = line.rest_tokens()?;
    let mut ts = TokenStream::new(&toks);
    let mut out = vec![ts.expr()?];
    while ts.eat(&Tok::Comma) {
        out.push(ts.expr()?);
    }
    ts.expect_end()?;
    Ok(out)
}

/// `VAR = EXPR` after the keyword.
fn binding(line: &Line) -> Result<(String, Expr)> {
    let toks = line.rest_tokens()?;
    let mut ts = TokenStream::new(&toks);
    let var = match ts.peek().cloned() {
        Some(Tok::Ident(v)) if v != "i" => {
            ts.advance();
            v
        }
        _ => return Err(ts.error("a variable name")),
    };
    ts.expect(&Tok::Eq)?;
    let e = ts.expr()?;
    ts.expect_end()?;
    Ok((var, e))
}

fn parse_labels(lines: &[Line], algebras: Resolver) -> Result<LabelSet> {
    let base = name_of(&lines[0])?;
    let dim = resolve(&lines[0], &base, algebras)?.dim();
    let mut forms = Vec::new();
    for line in &lines[1..] {
        let (lhs, rhs) = line
            .text
            .split_once('=')
            .ok_or_else(|| line.error("expected `nK = form`"))?;
        let expected = format!("n{}", forms.len() + 1);
        if lhs.trim() != expected {
            return Err(line.error(format!("expected label `{expected}`")));
        }
        let form = BilinearForm::parse(dim, rhs).map_err(|e| relocate(e, line))?;
        forms.push(form);
    }
    Ok(LabelSet { base, forms })
}

/// Moves a line-1 parse error from a sub-parser onto `line`.
fn relocate(e: Error, line: &Line) -> Error {
    match e {
        Error::Parse {
            column, message, ..
        } => Error::Parse {
            line: line.number,
            column: column + line.text.find('=').map_or(0, |p| p + 1),
            message,
        },
        Error::IndexOutOfRange { index, dim, .. } => Error::IndexOutOfRange {
            index,
            dim,
            line: line.number,
        },
        other => other,
    }
}

fn parse_aut(lines: &[Line], algebras: Resolver) -> Result<AutEntry> {
    let name = name_of(&lines[0])?;
    let mut base = None;
    let mut params = Vec::new();
    let mut matrix = Vec::new();
    for line in &lines[1..] {
        match line.keyword() {
            "base" => base = Some((name_of(line)?, *line)),
            "params" => params = line.rest().split_whitespace().map(String::from).collect(),
            "row" => matrix.push(expr_list(line)?),
            k => return Err(line.error(format!("unexpected `{k}` in an automorphism family"))),
        }
    }
    let (base, base_line) = base.ok_or_else(|| lines[0].error("missing `base`"))?;
    let dim = resolve(&base_line, &base, algebras)?.dim();
    if matrix.len() != dim || matrix.iter().any(|r| r.len() != dim) {
        return Err(lines[0].error(format!("the matrix of `{name}` must be {dim}x{dim}")));
    }
    for e in matrix.iter().flatten() {
        if let Some(v) = e.variables().into_iter().find(|v| !params.contains(v)) {
            return Err(lines[0].error(format!("`{v}` is not a parameter of `{name}`")));
        }
    }
    Ok(AutEntry {
        base,
        family: AutFamily {
            name,
            params,
            matrix,
        },
    })
}

fn parse_orbit(lines: &[Line], algebras: Resolver, set: &FixtureSet) -> Result<OrbitCaseFixture> {
    let name = name_of(&lines[0])?;
    let mut base = None;
    let mut family = None;
    let mut draws = Vec::new();
    let mut conditions = Vec::new();
    let mut substitution = Vec::new();
    let mut claim = None;
    let mut expect = Expectation::Holds;
    let mut note = None;
    for line in &lines[1..] {
        match line.keyword() {
            "base" => {
                let b = name_of(line)?;
                let alg = resolve(line, &b, algebras)?;
                let labels = set
                    .labels_for(&b)
                    .ok_or_else(|| line.error(format!("no labels defined for `{b}`")))?;
                base = Some((alg.with_name(b.clone()), labels.forms.clone()));
            }
            "family" => {
                let a = name_of(line)?;
                family = Some(
                    set.aut(&a)
                        .ok_or_else(|| line.error(format!("unknown automorphism family `{a}`")))?
                        .family
                        .clone(),
                );
            }
            "draw" => {
                let rest = line.rest();
                let mut words = rest.split_whitespace();
                let var = words.next().unwrap_or("").to_string();
                let draw = match words.next() {
                    Some("nonzero") => Draw::Nonzero,
                    Some("zero") => Draw::Zero,
                    Some("any") => Draw::Any,
                    Some(w) if w.starts_with('=') => Draw::Formula(binding(line)?.1),
                    _ => return Err(line.error("expected `draw VAR nonzero|zero|any|= EXPR`")),
                };
                if words.next().is_some() && !matches!(draw, Draw::Formula(_)) {
                    return Err(line.error("trailing input after the draw kind"));
                }
                draws.push((var, draw));
            }
            "require" => {
                let toks = line.rest_tokens()?;
                let mut ts = TokenStream::new(&toks);
                let lhs = ts.expr()?;
                let equal = if ts.eat(&Tok::Eq) {
                    true
                } else if ts.eat(&Tok::Neq) {
                    false
                } else {
                    return Err(ts.error("`=` or `!=`"));
                };
                let rhs = ts.expr()?;
                ts.expect_end()?;
                conditions.push(Condition { lhs, rhs, equal });
            }
            "set" | "complete" => {
                let (var, value) = binding(line)?;
                let origin = if line.keyword() == "set" {
                    Origin::Printed
                } else {
                    Origin::Completion
                };
                substitution.push(Assignment { var, value, origin });
            }
            "rep" => claim = Some(OrbitClaim::Representative(expr_list(line)?)),
            "nonzero-coordinate" => {
                let k: usize = line
                    .rest()
                    .parse()
                    .map_err(|_| line.error("`nonzero-coordinate` takes a label number"))?;
                if k == 0 {
                    return Err(line.error("label numbers start at 1"));
                }
                claim = Some(OrbitClaim::NonzeroCoordinate(k - 1));
            }
            "expect" => {
                expect = match line.rest() {
                    "holds" => Expectation::Holds,
                    "counterexample" => Expectation::Counterexample,
                    _ => return Err(line.error("expected `expect holds|counterexample`")),
                }
            }
            "note" => note = Some(line.rest().to_string()),
            k => return Err(line.error(format!("unexpected `{k}` in an orbit case"))),
        }
    }
    let (base, labels) = base.ok_or_else(|| lines[0].error("missing `base`"))?;
    let family = family.ok_or_else(|| lines[0].error("missing `family`"))?;
    let claim = claim.ok_or_else(|| lines[0].error("missing `rep` or `nonzero-coordinate`"))?;
    match &claim {
        OrbitClaim::Representative(c) if c.len() != labels.len() => {
            return Err(lines[0].error(format!("`rep` needs {} coordinates", labels.len())))
        }
        OrbitClaim::NonzeroCoordinate(k) if *k >= labels.len() => {
            return Err(Error::IndexOutOfRange {
                index: k + 1,
                dim: labels.len(),
                line: lines[0].number,
            })
        }
        _ => {}
    }
    Ok(OrbitCaseFixture {
        name,
        base,
        labels,
        family,
        draws,
        conditions,
        substitution,
        claim,
        expect,
        note,
    })
}

fn parse_extension(lines: &[Line], set: &FixtureSet) -> Result<ExtensionFixture> {
    let target = name_of(&lines[0])?;
    let mut base = None;
    let mut coeffs = None;
    let mut witness: Option<Vec<Vec<Expr>>> = None;
    for line in &lines[1..] {
        match line.keyword() {
            "base" => base = Some((name_of(line)?, *line)),
            "rep" => coeffs = Some(expr_list(line)?),
            "witness" => witness.get_or_insert_with(Vec::new).push(expr_list(line)?),
            k => return Err(line.error(format!("unexpected `{k}` in an extension"))),
        }
    }
    let (base, base_line) = base.ok_or_else(|| lines[0].error("missing `base`"))?;
    let labels = set
        .labels_for(&base)
        .ok_or_else(|| base_line.error(format!("no labels defined for `{base}`")))?;
    let coeffs = coeffs.ok_or_else(|| lines[0].error("missing `rep`"))?;
    if coeffs.len() != labels.forms.len() {
        return Err(lines[0].error(format!("`rep` needs {} coordinates", labels.forms.len())));
    }
    let values = coeffs
        .iter()
        .map(|c| c.eval(&|_: &str| None::<G>))
        .collect::<Result<Vec<G>>>()?;
    let dim = labels.forms[0].dim();
    let form = BilinearForm::combination(dim, &labels.forms, &values);
    Ok(ExtensionFixture {
        target,
        base,
        coeffs,
        form,
        witness,
    })
}

fn parse_predicate(lines: &[Line]) -> Result<NamedPredicate> {
    let name = name_of(&lines[0])?;
    let body: Vec<&str> = lines[1..].iter().map(|l| l.text.trim()).collect();
    let predicate = StructurePredicate::parse(&body.join("; ")).map_err(|e| match e {
        Error::Parse {
            column, message, ..
        } => Error::Parse {
            line: lines.get(1).map_or(lines[0].number, |l| l.number),
            column,
            message,
        },
        other => other,
    })?;
    Ok(NamedPredicate { name, predicate })
}

/// Parses labels, automorphism families, orbit cases, extensions and
/// predicates. Labels and families must precede their use.
pub fn parse_fixtures(text: &str, algebras: Resolver) -> Result<FixtureSet> {
    let mut set = FixtureSet::default();
    for b in blocks(text)? {
        match b[0].keyword() {
            "labels" => {
                let l = parse_labels(&b, algebras)?;
                set.labels.push(l);
            }
            "aut" => {
                let a = parse_aut(&b, algebras)?;
                set.auts.push(a);
            }
            "orbit" => {
                let o = parse_orbit(&b, algebras, &set)?;
                set.orbits.push(o);
            }
            "extension" => {
                let e = parse_extension(&b, &set)?;
                set.extensions.push(e);
            }
            "predicate" => set.predicates.push(parse_predicate(&b)?),
            k => return Err(b[0].error(format!("`{k}` blocks belong in another file"))),
        }
    }
    Ok(set)
}

fn list(es: &[Expr]) -> String {
    es.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

impl FixtureSet {
    /// Renders every block; parsing the result gives the same fixtures.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for l in &self.labels {
            let _ = writeln!(s, "labels {}", l.base);
            for (k, f) in l.forms.iter().enumerate() {
                let _ = writeln!(s, "n{} = {f}", k + 1);
            }
            s.push('\n');
        }
        for a in &self.auts {
            let _ = writeln!(
                s,
                "aut {}\nbase {}\nparams {}",
                a.family.name,
                a.base,
                a.family.params.join(" ")
            );
            for r in &a.family.matrix {
                let _ = writeln!(s, "row {}", list(r));
            }
            s.push('\n');
        }
        for o in &self.orbits {
            s.push_str(&render_orbit(o));
            s.push('\n');
        }
        for e in &self.extensions {
            let _ = writeln!(
                s,
                "extension {}\nbase {}\nrep {}",
                e.target,
                e.base,
                list(&e.coeffs)
            );
            for r in e.witness.iter().flatten() {
                let _ = writeln!(s, "witness {}", list(r));
            }
            s.push('\n');
        }
        for p in &self.predicates {
            let _ = writeln!(s, "predicate {}\n{}\n", p.name, p.predicate);
        }
        s
    }
}

pub fn render_orbit(o: &OrbitCaseFixture) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "orbit {}", o.name);
    let _ = writeln!(s, "base {}", o.base.name().unwrap_or("?"));
    let _ = writeln!(s, "family {}", o.family.name);
    for (v, d) in &o.draws {
        let _ = match d {
            Draw::Nonzero => writeln!(s, "draw {v} nonzero"),
            Draw::Zero => writeln!(s, "draw {v} zero"),
            Draw::Any => writeln!(s, "draw {v} any"),
            Draw::Formula(e) => writeln!(s, "draw {v} = {e}"),
        };
    }
    for c in &o.conditions {
        let _ = writeln!(s, "require {c}");
    }
    for a in &o.substitution {
        let kw = match a.origin {
            Origin::Printed => "set",
            Origin::Completion => "complete",
        };
        let _ = writeln!(s, "{kw} {} = {}", a.var, a.value);
    }
    let _ = match &o.claim {
        OrbitClaim::Representative(c) => writeln!(s, "rep {}", list(c)),
        OrbitClaim::NonzeroCoordinate(k) => writeln!(s, "nonzero-coordinate {}", k + 1),
    };
    let _ = writeln!(
        s,
        "expect {}",
        match o.expect {
            Expectation::Holds => "holds",
            Expectation::Counterexample => "counterexample",
        }
    );
    if let Some(n) = &o.note {
        let _ = writeln!(s, "note {n}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Field;

    fn algebras(name: &str) -> Option<Algebra> {
        match name {
            "A" => Some(Algebra::from_entries(2, [(0, 0, 1, G::one())]).unwrap()),
            _ => None,
        }
    }

    const SRC: &str = "labels A\nn1 = D12 + D21\nn2 = D22\n\n\
        aut phi\nbase A\nparams x y\nrow x, 0\nrow y, x^2\n\n\
        orbit A/case\nbase A\nfamily phi\ndraw a1 nonzero\ndraw a2 = 2 a1\nrequire a1 != 1\n\
        set x = a1\ncomplete y = 0\nrep 1, 2\nexpect holds\nnote n\n\n\
        extension B\nbase A\nrep 1, 0\n\npredicate R\nA2^2 = 0; c11^2 = 1\n";

    #[test]
    fn parses_and_round_trips() {
        let set = parse_fixtures(SRC, &algebras).unwrap();
        assert_eq!(set.labels[0].forms.len(), 2);
        assert_eq!(set.auts[0].family.params, vec!["x", "y"]);
        let o = set.orbit("A/case").unwrap();
        assert_eq!(o.draws.len(), 2);
        assert_eq!(o.substitution[1].origin, Origin::Completion);
        assert_eq!(set.extensions[0].form.to_string(), "D12 + D21");
        assert!(set.predicate("R").is_some());
        let again = parse_fixtures(&set.render(), &algebras).unwrap();
        assert_eq!(again.render(), set.render());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_fixtures("labels B\nn1 = D11", &algebras),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_fixtures("labels A\nn2 = D11", &algebras),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_fixtures("labels A\nn1 = D13", &algebras),
            Err(Error::IndexOutOfRange {
                index: 3,
                line: 2,
                ..
            })
        ));
        let bad_rep = "labels A\nn1 = D11\naut p\nbase A\nparams x\nrow x, 0\nrow 0, x\norbit o\nbase A\nfamily p\nrep 1, 1";
        assert!(matches!(
            parse_fixtures(bad_rep, &algebras),
            Err(Error::Parse { line: 8, .. })
        ));
        let bad_var = "aut p\nbase A\nparams x\nrow x, 0\nrow 0, y";
        assert!(matches!(
            parse_fixtures(bad_var, &algebras),
            Err(Error::Parse { .. })
        ));
    }
}

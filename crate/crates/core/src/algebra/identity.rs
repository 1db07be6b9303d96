//! Linearized defining identities and a registry of them.
//!
//! An identity is a signed sum of terms `θ(P, Q)` where `P` and `Q` are
//! nonassociative monomials in distinct variables. Taking `θ` to be the
//! multiplication gives the multilinear identity the algebra must satisfy;
//! taking `θ` to be an unknown bilinear form gives the linear conditions that
//! cut out the cocycle space.

use std::fmt;
use std::sync::OnceLock;

use super::Algebra;
use crate::exactmath::Field;

/// A nonassociative monomial over variables numbered from 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Monomial {
    Var(usize),
    Prod(Box<Monomial>, Box<Monomial>),
}

impl Monomial {
    /// Parses monomials such as `x`, `xt`, `(xt)y`, `(zx)(yt)`, where every
    /// character of `vars` names one variable. Juxtaposition associates to
    /// the left.
    pub fn parse(src: &str, vars: &str) -> Option<Monomial> {
        let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let m = Self::parse_seq(&chars, &mut pos, vars)?;
        (pos == chars.len()).then_some(m)
    }

    fn parse_seq(chars: &[char], pos: &mut usize, vars: &str) -> Option<Monomial> {
        let mut acc = Self::parse_factor(chars, pos, vars)?;
        while *pos < chars.len() && chars[*pos] != ')' {
            let rhs = Self::parse_factor(chars, pos, vars)?;
            acc = Monomial::Prod(Box::new(acc), Box::new(rhs));
        }
        Some(acc)
    }

    fn parse_factor(chars: &[char], pos: &mut usize, vars: &str) -> Option<Monomial> {
        let c = *chars.get(*pos)?;
        *pos += 1;
        if c == '(' {
            let inner = Self::parse_seq(chars, pos, vars)?;
            (chars.get(*pos) == Some(&')')).then(|| *pos += 1)?;
            return Some(inner);
        }
        vars.chars().position(|v| v == c).map(Monomial::Var)
    }

    /// Value of the monomial when variable `k` takes the value `args[k]`.
    pub fn eval<F: Field>(&self, a: &Algebra<F>, args: &[Vec<F>]) -> Vec<F> {
        match self {
            Monomial::Var(k) => args[*k].clone(),
            Monomial::Prod(l, r) => a.mul(&l.eval(a, args), &r.eval(a, args)),
        }
    }

    fn render(&self, vars: &[char], top: bool, out: &mut String) {
        match self {
            Monomial::Var(k) => out.push(vars[*k]),
            Monomial::Prod(l, r) => {
                if !top {
                    out.push('(');
                }
                l.render(vars, false, out);
                r.render(vars, false, out);
                if !top {
                    out.push(')');
                }
            }
        }
    }
}

/// `sign · θ(left, right)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub sign: i8,
    pub left: Monomial,
    pub right: Monomial,
}

/// A multilinear identity written as `Σ sign·θ(P, Q) = 0`.
pub trait Identity: Send + Sync {
    fn name(&self) -> &'static str;

    /// One character per variable, in the order basis tuples are enumerated.
    fn variables(&self) -> &'static str;

    fn terms(&self) -> &[Term];

    fn arity(&self) -> usize {
        self.variables().chars().count()
    }

    /// Human-readable form, e.g. `θ(x,yz) + θ(z,yx) - θ(xy,z) - θ(zy,x)`.
    fn describe(&self) -> String {
        let vars: Vec<char> = self.variables().chars().collect();
        let mut out = String::new();
        for (n, t) in self.terms().iter().enumerate() {
            match (n, t.sign > 0) {
                (0, true) => {}
                (0, false) => out.push('-'),
                (_, true) => out.push_str(" + "),
                (_, false) => out.push_str(" - "),
            }
            out.push_str("θ(");
            t.left.render(&vars, true, &mut out);
            out.push(',');
            t.right.render(&vars, true, &mut out);
            out.push(')');
        }
        out
    }
}

impl fmt::Debug for dyn Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name(), self.describe())
    }
}

/// Builds a term list from `"+x|yz +z|yx -xy|z -zy|x"`.
fn compile(spec: &str, vars: &str) -> Vec<Term> {
    spec.split_whitespace()
        .map(|tok| {
            let (sign, body) = match tok.split_at(1) {
                ("+", rest) => (1, rest),
                ("-", rest) => (-1, rest),
                _ => panic!("term `{tok}` lacks a sign"),
            };
            let (l, r) = body.split_once('|').expect("term has two arguments");
            Term {
                sign,
                left: Monomial::parse(l, vars).expect("valid monomial"),
                right: Monomial::parse(r, vars).expect("valid monomial"),
            }
        })
        .collect()
}

/// Linearized flexibility: `x(yz) + z(yx) = (xy)z + (zy)x`.
pub struct Flexible;

impl Identity for Flexible {
    fn name(&self) -> &'static str {
        "flexible"
    }
    fn variables(&self) -> &'static str {
        "xyz"
    }
    fn terms(&self) -> &[Term] {
        static TERMS: OnceLock<Vec<Term>> = OnceLock::new();
        TERMS.get_or_init(|| compile("+x|yz +z|yx -xy|z -zy|x", "xyz"))
    }
}

/// Linearized Jordan identity `x²(yx) = (x²y)x`, six terms against six,
/// with variables ordered `(x, t, z, y)`.
pub struct Jordan;

impl Identity for Jordan {
    fn name(&self) -> &'static str {
        "jordan"
    }
    fn variables(&self) -> &'static str {
        "xtzy"
    }
    fn terms(&self) -> &[Term] {
        static TERMS: OnceLock<Vec<Term>> = OnceLock::new();
        TERMS.get_or_init(|| {
            compile(
                "+xt|yz +tx|yz +tz|yx +xz|yt +zt|yx +zx|yt \
                 -(xt)y|z -(tx)y|z -(xz)y|t -(tz)y|x -(zx)y|t -(zt)y|x",
                "xtzy",
            )
        })
    }
}

/// The identities defining the variety, in check order.
pub fn identities() -> &'static [&'static dyn Identity] {
    static ALL: [&dyn Identity; 2] = [&Flexible, &Jordan];
    &ALL
}

pub fn identity_by_name(name: &str) -> Option<&'static dyn Identity> {
    identities().iter().copied().find(|id| id.name() == name)
}

/// `Σ sign·(P·Q)` at the given arguments, with `θ` the multiplication.
pub fn evaluate_identity<F: Field>(a: &Algebra<F>, id: &dyn Identity, args: &[Vec<F>]) -> Vec<F> {
    let mut acc = vec![F::zero(); a.dim()];
    for t in id.terms() {
        let v = a.mul(&t.left.eval(a, args), &t.right.eval(a, args));
        for (o, x) in acc.iter_mut().zip(v) {
            *o = if t.sign > 0 { o.add(&x) } else { o.sub(&x) };
        }
    }
    acc
}

/// Calls `f` on every tuple of `arity` basis indices (0-based).
pub(crate) fn for_each_tuple(dim: usize, arity: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if dim == 0 {
        return;
    }
    let mut idx = vec![0; arity];
    loop {
        if !f(&idx) {
            return;
        }
        let mut p = arity;
        loop {
            if p == 0 {
                return;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < dim {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// The first basis tuple (1-based) on which the identity fails, if any.
pub fn first_violation<F: Field>(a: &Algebra<F>, id: &dyn Identity) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_tuple(a.dim(), id.arity(), |tuple| {
        let args: Vec<Vec<F>> = tuple.iter().map(|&k| a.unit_vector(k)).collect();
        if evaluate_identity(a, id, &args).iter().all(Field::is_zero) {
            true
        } else {
            found = Some(tuple.iter().map(|k| k + 1).collect());
            false
        }
    });
    found
}

pub fn check_flexible<F: Field>(a: &Algebra<F>) -> bool {
    first_violation(a, &Flexible).is_none()
}

pub fn check_jordan_linearized<F: Field>(a: &Algebra<F>) -> bool {
    first_violation(a, &Jordan).is_none()
}

/// Both registered identities hold.
pub fn check_ncj<F: Field>(a: &Algebra<F>) -> bool {
    identities()
        .iter()
        .all(|id| first_violation(a, *id).is_none())
}

/// Linear conditions on a bilinear form `θ` (unknowns `θ_{ab}` at index
/// `a·n + b`) imposed by `id` on every basis tuple. Zero rows are dropped.
pub(crate) fn cocycle_conditions<F: Field>(a: &Algebra<F>, id: &dyn Identity) -> Vec<Vec<F>> {
    let n = a.dim();
    let mut rows = Vec::new();
    for_each_tuple(n, id.arity(), |tuple| {
        let args: Vec<Vec<F>> = tuple.iter().map(|&k| a.unit_vector(k)).collect();
        let mut row = vec![F::zero(); n * n];
        for t in id.terms() {
            let p = t.left.eval(a, &args);
            let q = t.right.eval(a, &args);
            for (i, pi) in p.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (j, qj) in q.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    let c = pi.mul(qj);
                    let cell = &mut row[i * n + j];
                    *cell = if t.sign > 0 {
                        cell.add(&c)
                    } else {
                        cell.sub(&c)
                    };
                }
            }
        }
        if !row.iter().all(Field::is_zero) {
            rows.push(row);
        }
        true
    });
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::GaussianRational as G;

    fn alg(dim: usize, entries: &[(usize, usize, usize)]) -> Algebra {
        Algebra::from_entries(
            dim,
            entries
                .iter()
                .map(|&(i, j, k)| (i - 1, j - 1, k - 1, G::one())),
        )
        .unwrap()
    }

    #[test]
    fn monomial_parsing() {
        let m = Monomial::parse("(xt)y", "xtzy").unwrap();
        let xt = Monomial::Prod(Box::new(Monomial::Var(0)), Box::new(Monomial::Var(1)));
        assert_eq!(m, Monomial::Prod(Box::new(xt), Box::new(Monomial::Var(3))));
        assert_eq!(Monomial::parse("xty", "xtzy"), Some(m));
        assert!(Monomial::parse("(xt", "xtzy").is_none());
        assert!(Monomial::parse("q", "xtzy").is_none());
    }

    #[test]
    fn descriptions() {
        assert_eq!(Flexible.describe(), "θ(x,yz) + θ(z,yx) - θ(xy,z) - θ(zy,x)");
        assert_eq!(Jordan.terms().len(), 12);
        assert!(identity_by_name("jordan").is_some());
        assert!(identity_by_name("lie").is_none());
    }

    #[test]
    fn non_flexible_example() {
        // e1e1 = e2, e1e2 = e3: at (e1,e1,e1) the left side is 2e3, the right 0.
        let a = alg(3, &[(1, 1, 2), (1, 2, 3)]);
        assert_eq!(first_violation(&a, &Flexible), Some(vec![1, 1, 1]));
        assert!(!check_ncj(&a));
    }

    #[test]
    fn zero_algebra_satisfies_everything() {
        let a = Algebra::<G>::zero(3);
        assert!(check_ncj(&a));
        assert!(cocycle_conditions(&a, &Jordan).is_empty());
    }

    #[test]
    fn tuple_enumeration_covers_everything() {
        let mut count = 0;
        for_each_tuple(3, 4, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 81);
    }
}

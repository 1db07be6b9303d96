//! Closed conditions on structure constants such as
//! `A2^2 <= A4; A3^2 = 0; c12^3 = c21^3`.
//!
//! `A_k` is read through a [`ChainReading`]: either the flag span
//! `span{e_k, …, e_n}` or the `k`-th power `A^k`.

use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::{power_chain, Algebra};
use crate::error::{Error, Result};
use crate::exactmath::{GaussianRational as G, Subspace};
use crate::expr::{lex, Tok, TokenStream};

/// A way of turning the symbol `A_k` into a subspace.
pub trait ChainReading: Send + Sync {
    fn name(&self) -> &'static str;
    fn space(&self, a: &Algebra, k: usize) -> Subspace<G>;
}

/// `A_k = span{e_k, …, e_n}`.
pub struct FlagSpan;

impl ChainReading for FlagSpan {
    fn name(&self) -> &'static str {
        "flag"
    }
    fn space(&self, a: &Algebra, k: usize) -> Subspace<G> {
        let n = a.dim();
        Subspace::coordinate(n, k.saturating_sub(1).min(n)..n)
    }
}

/// `A_k = A^k`, the `k`-th term of the power chain.
pub struct PowerIdeal;

impl ChainReading for PowerIdeal {
    fn name(&self) -> &'static str {
        "power"
    }
    fn space(&self, a: &Algebra, k: usize) -> Subspace<G> {
        let chain = power_chain(a);
        chain
            .get(k.max(1) - 1)
            .or(chain.last())
            .cloned()
            .unwrap_or_else(|| Subspace::zero(a.dim()))
    }
}

pub fn chain_readings() -> &'static [&'static dyn ChainReading] {
    static ALL: [&dyn ChainReading; 2] = [&FlagSpan, &PowerIdeal];
    &ALL
}

/// `A_left · A_right ⊆ A_target`, or `= 0` when `target` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceCondition {
    pub left: usize,
    pub right: usize,
    pub target: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstTerm {
    /// `c_{ij}^k`, 1-based.
    Constant(usize, usize, usize),
    Value(G),
}

/// All listed terms are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantCondition {
    pub terms: Vec<ConstTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct StructurePredicate {
    pub subspace_conditions: Vec<SubspaceCondition>,
    pub constant_conditions: Vec<ConstantCondition>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PredicateEvaluation {
    pub reading: &'static str,
    pub holds: bool,
    /// Conditions that fail, rendered.
    pub violated: Vec<String>,
}

impl fmt::Display for SubspaceCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.left == self.right {
            write!(f, "A{}^2", self.left)?;
        } else {
            write!(f, "A{} A{}", self.left, self.right)?;
        }
        match self.target {
            Some(k) => write!(f, " <= A{k}"),
            None => write!(f, " = 0"),
        }
    }
}

impl fmt::Display for ConstTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstTerm::Constant(i, j, k) => write!(f, "c{i}{j}^{k}"),
            ConstTerm::Value(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for ConstantCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" = "))
    }
}

impl fmt::Display for StructurePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .subspace_conditions
            .iter()
            .map(ToString::to_string)
            .collect();
        parts.extend(self.constant_conditions.iter().map(ToString::to_string));
        f.write_str(&parts.join("; "))
    }
}

fn chain_index(word: &str) -> Option<usize> {
    word.strip_prefix('A').and_then(|d| d.parse().ok())
}

fn constant_indices(word: &str) -> Option<(usize, usize)> {
    let d = word.strip_prefix('c')?;
    if d.len() != 2 || !d.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let v: Vec<usize> = d
        .chars()
        .map(|c| c.to_digit(10).expect("digit") as usize)
        .collect();
    Some((v[0], v[1]))
}

impl StructurePredicate {
    /// Parses conditions separated by `;` or `,`. Recognised forms:
    /// `A2^2 <= A4`, `A2 A3 <= A4`, `A3^2 = 0`, `c11^2 = c11^3 = 0`.
    pub fn parse(src: &str) -> Result<Self> {
        let toks = lex(src, 1)?;
        let mut ts = TokenStream::new(&toks);
        let mut out = StructurePredicate::default();
        while !ts.at_end() {
            match ts.peek().cloned() {
                Some(Tok::Ident(w)) if chain_index(&w).is_some() => {
                    out.subspace_conditions.push(Self::subspace(&mut ts)?)
                }
                _ => out.constant_conditions.push(Self::constants(&mut ts)?),
            }
            if !ts.eat(&Tok::Semi) && !ts.eat(&Tok::Comma) {
                ts.expect_end()?;
            }
        }
        Ok(out)
    }

    fn chain(ts: &mut TokenStream) -> Result<usize> {
        match ts.peek().cloned() {
            Some(Tok::Ident(w)) if chain_index(&w).is_some() => {
                ts.advance();
                Ok(chain_index(&w).expect("checked"))
            }
            _ => Err(ts.error("a chain symbol like `A2`")),
        }
    }

    fn small_int(ts: &mut TokenStream) -> Result<usize> {
        match ts.peek().cloned() {
            Some(Tok::Int(n)) => {
                ts.advance();
                n.to_usize().ok_or_else(|| ts.error("a small integer"))
            }
            _ => Err(ts.error("an integer")),
        }
    }

    fn subspace(ts: &mut TokenStream) -> Result<SubspaceCondition> {
        let left = Self::chain(ts)?;
        let right = if ts.eat(&Tok::Caret) {
            if Self::small_int(ts)? != 2 {
                return Err(ts.error("exponent 2"));
            }
            left
        } else {
            ts.eat(&Tok::Star);
            Self::chain(ts)?
        };
        let target = if ts.eat(&Tok::Le) {
            Some(Self::chain(ts)?)
        } else {
            ts.expect(&Tok::Eq)?;
            if Self::small_int(ts)? != 0 {
                return Err(ts.error("`0`"));
            }
            None
        };
        Ok(SubspaceCondition {
            left,
            right,
            target,
        })
    }

    fn constants(ts: &mut TokenStream) -> Result<ConstantCondition> {
        let mut terms = vec![Self::const_term(ts)?];
        while ts.eat(&Tok::Eq) {
            terms.push(Self::const_term(ts)?);
        }
        if terms.len() < 2 {
            return Err(ts.error("`=`"));
        }
        Ok(ConstantCondition { terms })
    }

    fn const_term(ts: &mut TokenStream) -> Result<ConstTerm> {
        if let Some(Tok::Ident(w)) = ts.peek().cloned() {
            if let Some((i, j)) = constant_indices(&w) {
                ts.advance();
                ts.expect(&Tok::Caret)?;
                let k = Self::small_int(ts)?;
                return Ok(ConstTerm::Constant(i, j, k));
            }
        }
        let e = ts.product()?;
        Ok(ConstTerm::Value(e.eval(&|_: &str| None)?))
    }

    fn check_indices(&self, dim: usize) -> Result<()> {
        let bad = |k: usize| k == 0 || k > dim;
        for c in &self.subspace_conditions {
            for k in [Some(c.left), Some(c.right), c.target]
                .into_iter()
                .flatten()
            {
                if bad(k) {
                    return Err(Error::IndexOutOfRange {
                        index: k,
                        dim,
                        line: 1,
                    });
                }
            }
        }
        for c in &self.constant_conditions {
            for t in &c.terms {
                if let ConstTerm::Constant(i, j, k) = t {
                    if let Some(&x) = [*i, *j, *k].iter().find(|&&x| bad(x)) {
                        return Err(Error::IndexOutOfRange {
                            index: x,
                            dim,
                            line: 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Evaluates every condition on the given constants.
    pub fn evaluate(&self, a: &Algebra, reading: &dyn ChainReading) -> Result<PredicateEvaluation> {
        self.check_indices(a.dim())?;
        let mut violated = Vec::new();
        for c in &self.subspace_conditions {
            let l = reading.space(a, c.left);
            let r = reading.space(a, c.right);
            let mut products = Vec::new();
            for x in l.basis_vectors() {
                for y in r.basis_vectors() {
                    products.push(a.multiply(&x, &y)?);
                }
            }
            let span = Subspace::spanned_by(a.dim(), products)?;
            let ok = match c.target {
                Some(k) => reading.space(a, k).contains(&span)?,
                None => span.is_zero(),
            };
            if !ok {
                violated.push(c.to_string());
            }
        }
        for c in &self.constant_conditions {
            let values: Vec<G> = c
                .terms
                .iter()
                .map(|t| match t {
                    ConstTerm::Constant(i, j, k) => a.constant(i - 1, j - 1, k - 1).clone(),
                    ConstTerm::Value(v) => v.clone(),
                })
                .collect();
            if values.windows(2).any(|w| w[0] != w[1]) {
                violated.push(c.to_string());
            }
        }
        Ok(PredicateEvaluation {
            reading: reading.name(),
            holds: violated.is_empty(),
            violated,
        })
    }

    /// Only the constant conditions, for reports that separate them.
    pub fn constant_part(&self) -> StructurePredicate {
        StructurePredicate {
            subspace_conditions: Vec::new(),
            constant_conditions: self.constant_conditions.clone(),
        }
    }
}

/// Membership under the flag reading of `A_k`.
pub fn predicate_membership(a: &Algebra, r: &StructurePredicate) -> Result<bool> {
    Ok(r.evaluate(a, &FlagSpan)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(dim: usize, entries: &[(usize, usize, usize, i64)]) -> Algebra {
        Algebra::from_entries(
            dim,
            entries
                .iter()
                .map(|&(i, j, k, c)| (i - 1, j - 1, k - 1, G::from_int(c))),
        )
        .unwrap()
    }

    const R1: &str = "A2^2 <= A4; A3^2 = 0; c12^3 = c21^3; c13^4 = c31^4; c23^4 = c32^4";
    const R2: &str = "A3^2 = 0; c11^2 = c11^3 = c22^3 = 0";

    #[test]
    fn parse_and_render() {
        let r = StructurePredicate::parse(R1).unwrap();
        assert_eq!(r.subspace_conditions.len(), 2);
        assert_eq!(r.constant_conditions.len(), 3);
        assert_eq!(r.to_string(), R1);
        let r2 = StructurePredicate::parse(R2).unwrap();
        assert_eq!(r2.to_string(), R2);
        assert_eq!(r2.constant_conditions[0].terms.len(), 4);
        assert!(matches!(
            StructurePredicate::parse("A2^3 <= A4"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            StructurePredicate::parse("c12^3"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn j4_07_satisfies_r1() {
        let j4_07 = alg(
            4,
            &[
                (1, 2, 3, 1),
                (1, 3, 4, 1),
                (2, 1, 3, 1),
                (2, 1, 4, 1),
                (2, 3, 4, 1),
                (3, 1, 4, 1),
                (3, 2, 4, 1),
            ],
        );
        let r1 = StructurePredicate::parse(R1).unwrap();
        assert!(predicate_membership(&j4_07, &r1).unwrap());
    }

    #[test]
    fn n2_violates_r2() {
        let n2 = alg(
            4,
            &[(1, 1, 3, 1), (1, 2, 4, 1), (2, 1, 3, -3), (2, 2, 4, -1)],
        );
        let r2 = StructurePredicate::parse(R2).unwrap();
        let ev = r2.evaluate(&n2, &FlagSpan).unwrap();
        assert!(!ev.holds);
        assert_eq!(ev.violated, vec!["c11^2 = c11^3 = c22^3 = 0".to_string()]);
    }

    #[test]
    fn zero_algebra_satisfies_homogeneous_predicates() {
        let r1 = StructurePredicate::parse(R1).unwrap();
        for reading in chain_readings() {
            assert!(r1.evaluate(&Algebra::zero(4), *reading).unwrap().holds);
        }
        assert!(matches!(
            r1.evaluate(&Algebra::zero(3), &FlagSpan),
            Err(Error::IndexOutOfRange { index: 4, .. })
        ));
    }
}

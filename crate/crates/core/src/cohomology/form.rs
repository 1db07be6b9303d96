use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::{Field, GaussianRational, Matrix};
use crate::expr::{lex, Tok, TokenStream};

/// `θ = Σ c_{ij} Δ_ij`, stored row-major with `c_{ij}` at `i·n + j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearForm<F: Field = GaussianRational> {
    dim: usize,
    entries: Vec<F>,
}

impl<F: Field> BilinearForm<F> {
    pub fn zero(dim: usize) -> Self {
        BilinearForm {
            dim,
            entries: vec![F::zero(); dim * dim],
        }
    }

    /// `Δ_ij` with 0-based `i`, `j`.
    pub fn delta(dim: usize, i: usize, j: usize) -> Self {
        let mut f = Self::zero(dim);
        f.entries[i * dim + j] = F::one();
        f
    }

    pub fn from_vec(dim: usize, entries: Vec<F>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(BilinearForm { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.dim + j]
    }

    pub fn as_vec(&self) -> &[F] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<F> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Field::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        BilinearForm {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        BilinearForm {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// `Σ coeffs[k]·forms[k]`.
    pub fn combination(dim: usize, forms: &[Self], coeffs: &[F]) -> Self {
        forms
            .iter()
            .zip(coeffs)
            .fold(Self::zero(dim), |acc, (f, c)| acc.add(&f.scale(c)))
    }

    /// `θ(x, y)`.
    pub fn eval(&self, x: &[F], y: &[F]) -> F {
        let mut acc = F::zero();
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = self.get(i, j);
                if !c.is_zero() {
                    acc = acc.add(&xi.mul(yj).mul(c));
                }
            }
        }
        acc
    }

    pub fn matrix(&self) -> Matrix<F> {
        Matrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j).clone())
    }

    pub fn from_matrix(m: &Matrix<F>) -> Self {
        BilinearForm {
            dim: m.rows(),
            entries: (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect(),
        }
    }
}

impl BilinearForm<GaussianRational> {
    /// Parses `D13 + D22 - 2 D31` (`D10_2` for two-digit indices).
    /// Repeated symbols are summed.
    pub fn parse(dim: usize, src: &str) -> Result<Self> {
        let toks = lex(src, 1)?;
        let mut ts = TokenStream::new(&toks);
        let terms =
            ts.linear_combination(|t| matches!(t, Tok::Delta(..)), "a form symbol like `D12`")?;
        ts.expect_end()?;
        let mut form = Self::zero(dim);
        for (coeff, sym) in terms {
            let Tok::Delta(i, j) = sym else {
                unreachable!()
            };
            for idx in [i, j] {
                if idx == 0 || idx > dim {
                    return Err(Error::IndexOutOfRange {
                        index: idx,
                        dim,
                        line: 1,
                    });
                }
            }
            let c: GaussianRational = coeff.eval(&|_: &str| None)?;
            let k = (i - 1) * dim + (j - 1);
            form.entries[k] = form.entries[k].add(&c);
        }
        Ok(form)
    }
}

impl<F: Field> fmt::Display for BilinearForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let c = self.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let sym = if self.dim < 10 {
                    format!("D{}{}", i + 1, j + 1)
                } else {
                    format!("D{}_{}", i + 1, j + 1)
                };
                let s = c.to_string();
                let (neg, body) = match s.strip_prefix('-') {
                    Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                    _ => (false, s),
                };
                if out.is_empty() {
                    if neg {
                        out.push('-');
                    }
                } else {
                    out.push_str(if neg { " - " } else { " + " });
                }
                if body != "1" {
                    if body.contains(['+', '-']) {
                        out.push_str(&format!("({body})*"));
                    } else {
                        out.push_str(&format!("{body}*"));
                    }
                }
                out.push_str(&sym);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::GaussianRational as G;

    #[test]
    fn parse_and_render() {
        let f = BilinearForm::parse(3, "D13 + D22 + D31").unwrap();
        assert_eq!(f.to_string(), "D13 + D22 + D31");
        let g = BilinearForm::parse(3, "-D13 + 2 D31 + D31 - i D22").unwrap();
        assert_eq!(g.to_string(), "-D13 - i*D22 + 3*D31");
        assert_eq!(BilinearForm::parse(3, &g.to_string()).unwrap(), g);
        assert!(BilinearForm::parse(2, "0").unwrap().is_zero());
        assert!(matches!(
            BilinearForm::parse(2, "D13"),
            Err(Error::IndexOutOfRange { index: 3, .. })
        ));
        assert!(matches!(
            BilinearForm::parse(2, "D1"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn evaluation() {
        let f = BilinearForm::parse(2, "D12 - D21").unwrap();
        let x = vec![G::one(), G::from_int(2)];
        let y = vec![G::from_int(3), G::one()];
        // x1*y2 - x2*y1 = 1 - 6
        assert_eq!(f.eval(&x, &y), G::from_int(-5));
    }
}

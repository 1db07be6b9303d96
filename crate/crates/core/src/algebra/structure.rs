use super::Algebra;
use crate::error::{Error, Result};
use crate::exactmath::{Field, Matrix, Subspace};

/// `Ann(A) = {x : xA + Ax = 0}`.
pub fn annihilator<F: Field>(a: &Algebra<F>) -> Subspace<F> {
    let n = a.dim();
    let mut rows = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for k in 0..n {
            rows.push((0..n).map(|i| a.constant(i, j, k).clone()).collect());
            rows.push((0..n).map(|i| a.constant(j, i, k).clone()).collect());
        }
    }
    Matrix::from_rows_with_width(rows, n)
        .expect("rows have length n")
        .nullspace()
}

/// `{x : xA + Ax ⊆ W}`; with `W = 0` this is the annihilator.
pub fn annihilator_modulo<F: Field>(a: &Algebra<F>, w: &Subspace<F>) -> Result<Subspace<F>> {
    let n = a.dim();
    if w.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: w.ambient_dim(),
        });
    }
    // v ∈ W iff v pairs to zero with every vector of W's complement.
    let tests = w.orthogonal_complement().basis_vectors();
    let mut rows = Vec::with_capacity(2 * n * tests.len());
    for j in 0..n {
        for c in &tests {
            let pair = |i: usize, left: bool| {
                (0..n).fold(F::zero(), |acc, k| {
                    let v = if left {
                        a.constant(i, j, k)
                    } else {
                        a.constant(j, i, k)
                    };
                    acc.add(&c[k].mul(v))
                })
            };
            rows.push((0..n).map(|i| pair(i, true)).collect());
            rows.push((0..n).map(|i| pair(i, false)).collect());
        }
    }
    Ok(Matrix::from_rows_with_width(rows, n)
        .expect("rows have length n")
        .nullspace())
}

/// `{x : xy + yx = 0 for all y}`.
pub fn symmetric_annihilator<F: Field>(a: &Algebra<F>) -> Subspace<F> {
    let n = a.dim();
    let mut rows = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            rows.push(
                (0..n)
                    .map(|i| a.constant(i, j, k).add(a.constant(j, i, k)))
                    .collect(),
            );
        }
    }
    Matrix::from_rows_with_width(rows, n)
        .expect("rows have length n")
        .nullspace()
}

/// Span of all products `u·v` with `u ∈ U`, `v ∈ V`.
fn product_space<F: Field>(a: &Algebra<F>, u: &Subspace<F>, v: &Subspace<F>) -> Vec<Vec<F>> {
    let mut out = Vec::new();
    for x in u.basis_vectors() {
        for y in v.basis_vectors() {
            out.push(a.mul(&x, &y));
        }
    }
    out
}

/// `A¹ = A`, `A^k = Σ_{i+j=k} A^i·A^j`, listed from `A¹` until the first
/// zero term (inclusive). For a non-nilpotent algebra the list stops once
/// a term repeats its predecessor.
pub fn power_chain<F: Field>(a: &Algebra<F>) -> Vec<Subspace<F>> {
    let n = a.dim();
    let mut chain = vec![Subspace::full(n)];
    if n == 0 {
        return chain;
    }
    loop {
        let k = chain.len() + 1;
        let mut vectors = Vec::new();
        for i in 1..k {
            vectors.extend(product_space(a, &chain[i - 1], &chain[k - i - 1]));
        }
        let next = Subspace::spanned_by(n, vectors).expect("vectors have length n");
        let done = next.is_zero() || next == chain[chain.len() - 1];
        chain.push(next);
        if done {
            return chain;
        }
    }
}

/// The smallest subalgebra containing `generators`.
pub fn generated_subalgebra<F: Field>(a: &Algebra<F>, generators: &[Vec<F>]) -> Subspace<F> {
    let n = a.dim();
    let mut span = Subspace::spanned_by(n, generators.to_vec()).expect("generators have length n");
    loop {
        let basis = span.basis_vectors();
        let mut vectors = basis.clone();
        vectors.extend(product_space(a, &span, &span));
        let next = Subspace::spanned_by(n, vectors).expect("vectors have length n");
        if next.dim() == span.dim() {
            return span;
        }
        span = next;
    }
}

/// Smallest `k` with `A^k = 0`, or `None` if the algebra is not nilpotent.
pub fn nilpotency_index<F: Field>(a: &Algebra<F>) -> Option<usize> {
    let chain = power_chain(a);
    chain.last().filter(|s| s.is_zero()).map(|_| chain.len())
}

/// Derivations as vectors of length `n²`: entry `i·n + l` is the `e_l`
/// coordinate of `D(e_i)`.
pub fn derivations<F: Field>(a: &Algebra<F>) -> Subspace<F> {
    let n = a.dim();
    let var = |i: usize, l: usize| i * n + l;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // D(e_i e_j)_k − (D(e_i) e_j)_k − (e_i D(e_j))_k = 0
                let mut row = vec![F::zero(); n * n];
                for m in 0..n {
                    let c = a.constant(i, j, m);
                    if !c.is_zero() {
                        row[var(m, k)] = row[var(m, k)].add(c);
                    }
                }
                for l in 0..n {
                    let c = a.constant(l, j, k);
                    if !c.is_zero() {
                        row[var(i, l)] = row[var(i, l)].sub(c);
                    }
                    let c = a.constant(i, l, k);
                    if !c.is_zero() {
                        row[var(j, l)] = row[var(j, l)].sub(c);
                    }
                }
                if !row.iter().all(Field::is_zero) {
                    rows.push(row);
                }
            }
        }
    }
    Matrix::from_rows_with_width(rows, n * n)
        .expect("rows have length n²")
        .nullspace()
}

pub fn derivation_dim<F: Field>(a: &Algebra<F>) -> usize {
    derivations(a).dim()
}

/// Rewrites `a` in the basis whose vectors are the rows of `p` (in old
/// coordinates): `f_i = Σ_l p_{il} e_l`.
pub fn basis_change<F: Field>(a: &Algebra<F>, p: &Matrix<F>) -> Result<Algebra<F>> {
    let n = a.dim();
    if p.rows() != n || p.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.rows().max(p.cols()),
        });
    }
    let inv = p.inverse()?;
    let rows = p.row_vecs();
    let mut out = Algebra::zero(n);
    for i in 0..n {
        for j in 0..n {
            let w = a.mul(&rows[i], &rows[j]);
            for (k, c) in inv.left_apply(&w).into_iter().enumerate() {
                out.set_constant(i, j, k, c);
            }
        }
    }
    Ok(match a.name() {
        Some(name) => out.with_name(name),
        None => out,
    })
}

/// True iff `a` written in the basis given by the rows of `p` has exactly
/// the constants of `b`.
pub fn verify_isomorphism_witness<F: Field>(
    a: &Algebra<F>,
    b: &Algebra<F>,
    p: &Matrix<F>,
) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(basis_change(a, p)?.constants() == b.constants())
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

    fn ints(rows: &[&[i64]]) -> Matrix<G> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| G::from_int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn annihilators() {
        let j4_05 = alg(4, &[(1, 1, 2), (2, 3, 4), (3, 2, 4)]);
        assert_eq!(annihilator(&j4_05), Subspace::coordinate(4, [3]));
        let j4_01 = alg(4, &[(1, 1, 2), (1, 2, 3), (2, 1, 3)]);
        assert_eq!(annihilator(&j4_01), Subspace::coordinate(4, [2, 3]));
        assert_eq!(annihilator(&Algebra::<G>::zero(3)).dim(), 3);
    }

    #[test]
    fn power_chains() {
        let j4_18 = alg(
            4,
            &[
                (1, 1, 2),
                (1, 2, 3),
                (1, 3, 4),
                (2, 1, 3),
                (2, 2, 4),
                (3, 1, 4),
            ],
        );
        let chain = power_chain(&j4_18);
        let dims: Vec<usize> = chain.iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![4, 3, 2, 1, 0]);
        assert_eq!(chain[2], Subspace::coordinate(4, [2, 3]));
        assert_eq!(nilpotency_index(&j4_18), Some(5));
        assert_eq!(nilpotency_index(&Algebra::<G>::zero(4)), Some(2));
        // e1e1 = e1 is idempotent, never nilpotent
        assert_eq!(nilpotency_index(&alg(1, &[(1, 1, 1)])), None);
    }

    #[test]
    fn derivation_dims() {
        assert_eq!(derivation_dim(&Algebra::<G>::zero(3)), 9);
        // e1e1 = e2: D(e1) = a e1 + b e2 + c e3, D(e2) = 2a e2 + ..., D(e3) ∈ span{e2, e3}
        let a = alg(3, &[(1, 1, 2)]);
        assert_eq!(derivation_dim(&a), 5);
    }

    #[test]
    fn basis_changes() {
        let j3_01 = alg(3, &[(1, 1, 2), (1, 2, 3), (2, 1, 3)]);
        assert_eq!(basis_change(&j3_01, &Matrix::identity(3)).unwrap(), j3_01);
        let scaled = basis_change(&j3_01, &ints(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(scaled.constant(0, 0, 1), &G::from_int(4));
        assert_eq!(scaled.constant(0, 1, 2), &G::from_int(2));
        assert_eq!(scaled.constant(1, 0, 2), &G::from_int(2));
        let j3s_02 = alg(3, &[(1, 2, 3), (2, 1, 3)]);
        let swap = ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert!(verify_isomorphism_witness(&j3s_02, &j3s_02, &swap).unwrap());
        assert_eq!(
            basis_change(&j3s_02, &ints(&[&[1, 1], &[1, 1]])),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            basis_change(&j3s_02, &Matrix::zeros(3, 3)),
            Err(Error::SingularMatrix)
        );
    }
}

//! Second cohomology of an algebra with trivial coefficients, central
//! extensions, and the automorphism action on cocycles.

mod form;
pub mod orbit;

use crate::algebra::{annihilator, identities, Algebra};
use crate::error::{Error, Result};
use crate::exactmath::{Field, GaussianRational, Matrix, Subspace};

pub use form::BilinearForm;
pub use orbit::{
    verify_aut_family, verify_orbit_reduction, Assignment, AutFamily, AutReport, Condition, Draw,
    Expectation, OrbitCaseFixture, OrbitClaim, OrbitReport, Origin,
};

/// `Z²`, `B²` and a choice of representatives for `H² = Z²/B²`.
#[derive(Clone, Debug)]
pub struct CocycleBasis<F: Field = GaussianRational> {
    pub z2: Subspace<F>,
    pub b2: Subspace<F>,
    /// Elements of `Z²` whose classes form a basis of `H²`: the echelon
    /// basis vectors of `Z²` that extend `B²`, taken in order.
    pub h2_reps: Vec<BilinearForm<F>>,
}

impl<F: Field> CocycleBasis<F> {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.z2.dim(), self.b2.dim(), self.h2_reps.len())
    }
}

/// Cocycles: forms satisfying every registered identity with `θ` in the
/// outer position. Vectors have length `n²` (see [`BilinearForm`]).
pub fn cocycle_space<F: Field>(a: &Algebra<F>) -> Subspace<F> {
    let n = a.dim();
    let mut rows = Vec::new();
    for id in identities() {
        rows.extend(crate::algebra::cocycle_conditions(a, *id));
    }
    Matrix::from_rows_with_width(rows, n * n)
        .expect("rows have length n²")
        .nullspace()
}

/// `B² = {(x, y) ↦ f(xy)}`, spanned by the coordinate functionals.
pub fn coboundary_space<F: Field>(a: &Algebra<F>) -> Subspace<F> {
    let n = a.dim();
    let forms = (0..n)
        .map(|k| {
            (0..n * n)
                .map(|ij| a.constant(ij / n, ij % n, k).clone())
                .collect()
        })
        .collect();
    Subspace::spanned_by(n * n, forms).expect("forms have length n²")
}

pub fn h2<F: Field>(a: &Algebra<F>) -> CocycleBasis<F> {
    let n = a.dim();
    let z2 = cocycle_space(a);
    let b2 = coboundary_space(a);
    let mut span = b2.clone();
    let mut h2_reps = Vec::new();
    for v in z2.basis_vectors() {
        if !span.contains_vector(&v) {
            span = span
                .sum(&Subspace::spanned_by(n * n, vec![v.clone()]).expect("length n²"))
                .expect("same ambient");
            h2_reps.push(BilinearForm::from_vec(n, v).expect("length n²"));
        }
    }
    CocycleBasis { z2, b2, h2_reps }
}

fn check_dim<F: Field>(a: &Algebra<F>, theta: &BilinearForm<F>) -> Result<()> {
    if theta.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: theta.dim(),
        });
    }
    Ok(())
}

fn require_cocycle<F: Field>(
    a: &Algebra<F>,
    z2: &Subspace<F>,
    theta: &BilinearForm<F>,
) -> Result<()> {
    check_dim(a, theta)?;
    if z2.contains_vector(theta.as_vec()) {
        Ok(())
    } else {
        Err(Error::NotACocycle(theta.to_string()))
    }
}

/// `∩ Ann(θ_i)` with `Ann(θ) = {x : θ(x, A) + θ(A, x) = 0}`.
pub fn cocycle_annihilator<F: Field>(
    a: &Algebra<F>,
    thetas: &[BilinearForm<F>],
) -> Result<Subspace<F>> {
    let n = a.dim();
    let mut rows = Vec::new();
    for theta in thetas {
        check_dim(a, theta)?;
        for j in 0..n {
            rows.push((0..n).map(|i| theta.get(i, j).clone()).collect());
            rows.push((0..n).map(|i| theta.get(j, i).clone()).collect());
        }
    }
    Ok(Matrix::from_rows_with_width(rows, n)?.nullspace())
}

/// Membership in `T_s(A)`: the classes are independent in `H²` and
/// `∩ Ann(θ_i) ∩ Ann(A) = 0`.
pub fn ts_membership<F: Field>(a: &Algebra<F>, thetas: &[BilinearForm<F>]) -> Result<bool> {
    let z2 = cocycle_space(a);
    for theta in thetas {
        require_cocycle(a, &z2, theta)?;
    }
    let b2 = coboundary_space(a);
    let n = a.dim();
    let mut vectors = b2.basis_vectors();
    vectors.extend(thetas.iter().map(|t| t.as_vec().to_vec()));
    let independent = Subspace::spanned_by(n * n, vectors)?.dim() == b2.dim() + thetas.len();
    if !independent {
        return Ok(false);
    }
    let ann = cocycle_annihilator(a, thetas)?.intersect(&annihilator(a))?;
    Ok(ann.is_zero())
}

/// `A_θ = A ⊕ ℂ^s` with `[x, y] = xy + Σ θ_i(x, y) e_{n+i}`.
pub fn central_extension<F: Field>(
    a: &Algebra<F>,
    thetas: &[BilinearForm<F>],
) -> Result<Algebra<F>> {
    let z2 = cocycle_space(a);
    for theta in thetas {
        require_cocycle(a, &z2, theta)?;
    }
    Ok(central_extension_unchecked(a, thetas))
}

/// [`central_extension`] without the cocycle test, for probing what goes
/// wrong with non-cocycles.
pub fn central_extension_unchecked<F: Field>(
    a: &Algebra<F>,
    thetas: &[BilinearForm<F>],
) -> Algebra<F> {
    let n = a.dim();
    let mut out = a.direct_sum_zero(thetas.len());
    for (s, theta) in thetas.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                out.set_constant(i, j, n + s, theta.get(i, j).clone());
            }
        }
    }
    out
}

/// `p` is read column-wise: column `j` holds `φ(e_j)`. True iff `p` is
/// invertible and `φ(e_i e_j) = φ(e_i)φ(e_j)` for all basis pairs.
pub fn verify_automorphism<F: Field>(a: &Algebra<F>, p: &Matrix<F>) -> bool {
    let n = a.dim();
    if p.rows() != n || p.cols() != n || !p.is_invertible() {
        return false;
    }
    let images: Vec<Vec<F>> = (0..n).map(|j| p.column(j)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = p.apply(a.basis_product(i, j));
            if lhs != a.mul(&images[i], &images[j]) {
                return false;
            }
        }
    }
    true
}

/// `(φθ)(x, y) = θ(φx, φy)`, i.e. the matrix `φᵀ·Θ·φ`.
pub fn cocycle_action<F: Field>(
    a: &Algebra<F>,
    p: &Matrix<F>,
    theta: &BilinearForm<F>,
) -> Result<BilinearForm<F>> {
    if !verify_automorphism(a, p) {
        return Err(Error::NotAutomorphism(
            a.name().unwrap_or("algebra").to_string(),
        ));
    }
    require_cocycle(a, &cocycle_space(a), theta)?;
    Ok(act(p, theta))
}

pub(crate) fn act<F: Field>(p: &Matrix<F>, theta: &BilinearForm<F>) -> BilinearForm<F> {
    let m = p
        .transpose()
        .mul(&theta.matrix())
        .and_then(|m| m.mul(p))
        .expect("square matrices of equal size");
    BilinearForm::from_matrix(&m)
}

/// Whether `t1 ≡ t2` modulo `B²` (or `t1 ≡ c·t2` for some `c ≠ 0` when
/// `projective`).
pub fn classes_equal_mod_b2<F: Field>(
    a: &Algebra<F>,
    t1: &BilinearForm<F>,
    t2: &BilinearForm<F>,
    projective: bool,
) -> Result<bool> {
    let z2 = cocycle_space(a);
    require_cocycle(a, &z2, t1)?;
    require_cocycle(a, &z2, t2)?;
    Ok(same_class(&coboundary_space(a), t1, t2, projective))
}

pub(crate) fn same_class<F: Field>(
    b2: &Subspace<F>,
    t1: &BilinearForm<F>,
    t2: &BilinearForm<F>,
    projective: bool,
) -> bool {
    if !projective {
        let diff: Vec<F> = t1
            .as_vec()
            .iter()
            .zip(t2.as_vec())
            .map(|(x, y)| x.sub(y))
            .collect();
        return b2.contains_vector(&diff);
    }
    let z1 = b2.contains_vector(t1.as_vec());
    let z2 = b2.contains_vector(t2.as_vec());
    if z1 || z2 {
        return z1 && z2;
    }
    let mut vectors = b2.basis_vectors();
    vectors.push(t1.as_vec().to_vec());
    vectors.push(t2.as_vec().to_vec());
    Subspace::spanned_by(b2.ambient_dim(), vectors)
        .expect("same ambient")
        .dim()
        == b2.dim() + 1
}

/// Coordinates of the class of `theta` in the basis given by the classes
/// of `basis`, or `None` if `theta` is outside `span(basis) + B²`.
pub fn class_coordinates<F: Field>(
    b2: &Subspace<F>,
    basis: &[BilinearForm<F>],
    theta: &BilinearForm<F>,
) -> Option<Vec<F>> {
    let len = theta.as_vec().len();
    let mut columns: Vec<Vec<F>> = basis.iter().map(|f| f.as_vec().to_vec()).collect();
    columns.extend(b2.basis_vectors());
    let m = Matrix::from_fn(len, columns.len(), |r, c| columns[c][r].clone());
    let x = m.solve(theta.as_vec()).ok()??;
    Some(x[..basis.len()].to_vec())
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

    fn form(dim: usize, s: &str) -> BilinearForm {
        BilinearForm::parse(dim, s).unwrap()
    }

    #[test]
    fn zero_algebra_cohomology() {
        let a = Algebra::<G>::zero(2);
        assert_eq!(h2(&a).dims(), (4, 0, 4));
    }

    #[test]
    fn j3_01_cohomology_and_extension() {
        let j3_01 = alg(3, &[(1, 1, 2), (1, 2, 3), (2, 1, 3)]);
        assert_eq!(h2(&j3_01).dims(), (3, 2, 1));
        let theta = form(3, "D13 + D22 + D31");
        let ext = central_extension(&j3_01, &[theta]).unwrap();
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
        assert_eq!(ext, j4_18);
        assert!(matches!(
            central_extension(&j3_01, &[form(3, "D23")]),
            Err(Error::NotACocycle(_))
        ));
    }

    #[test]
    fn split_extension_by_zero_form() {
        let j3_01 = alg(3, &[(1, 1, 2), (1, 2, 3), (2, 1, 3)]);
        let ext = central_extension(&j3_01, &[BilinearForm::zero(3)]).unwrap();
        assert_eq!(ext, j3_01.direct_sum_zero(1));
        assert_eq!(annihilator(&ext).dim(), 2);
    }

    #[test]
    fn cocycle_annihilators() {
        let a = Algebra::<G>::zero(3);
        assert_eq!(
            cocycle_annihilator(&a, &[form(3, "D11")]).unwrap(),
            Subspace::coordinate(3, [1, 2])
        );
        assert_eq!(cocycle_annihilator(&a, &[]).unwrap(), Subspace::full(3));
    }

    #[test]
    fn ts_membership_examples() {
        let j3s_02 = alg(3, &[(1, 2, 3), (2, 1, 3)]);
        let theta = form(3, "D13 + D31 + D21 + D23 + D32");
        assert!(ts_membership(&j3s_02, &[theta]).unwrap());
        assert!(!ts_membership(&j3s_02, &[form(3, "D12 + D21")]).unwrap());
        let j3s_01 = alg(3, &[(1, 1, 2)]);
        assert!(!ts_membership(&j3s_01, &[form(3, "D12 + D21")]).unwrap());
    }

    #[test]
    fn projective_class_comparison() {
        let j3s_02 = alg(3, &[(1, 2, 3), (2, 1, 3)]);
        let t = form(3, "D13 + D31");
        let shifted = form(3, "D13 + D31 + 4 D12 + 4 D21");
        assert!(classes_equal_mod_b2(&j3s_02, &t, &shifted, false).unwrap());
        assert!(classes_equal_mod_b2(&j3s_02, &t, &t.scale(&G::from_int(5)), true).unwrap());
        assert!(!classes_equal_mod_b2(&j3s_02, &t, &t.scale(&G::from_int(5)), false).unwrap());
        assert!(!classes_equal_mod_b2(&j3s_02, &t, &form(3, "D21"), true).unwrap());
    }

    #[test]
    fn automorphisms() {
        let j3s_01 = alg(3, &[(1, 1, 2)]);
        assert!(verify_automorphism(&j3s_01, &Matrix::identity(3)));
        let shape = |x: i64, y: i64, z: i64, u: i64, v: i64, x2: i64| {
            Matrix::from_rows(
                [[x, 0, 0], [y, x2, u], [z, 0, v]]
                    .iter()
                    .map(|r| r.iter().map(|&c| G::from_int(c)).collect())
                    .collect(),
            )
            .unwrap()
        };
        assert!(verify_automorphism(&j3s_01, &shape(2, 1, 3, 5, 7, 4)));
        assert!(!verify_automorphism(&j3s_01, &shape(2, 1, 3, 5, 7, 5)));
        let p = shape(1, 0, 0, 0, 2, 1);
        let theta = form(3, "D13");
        assert_eq!(
            cocycle_action(&j3s_01, &p, &theta).unwrap(),
            form(3, "2 D13")
        );
        assert!(matches!(
            cocycle_action(&j3s_01, &shape(1, 0, 0, 0, 2, 2), &theta),
            Err(Error::NotAutomorphism(_))
        ));
    }
}

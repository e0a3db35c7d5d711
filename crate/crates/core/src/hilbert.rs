//! Vectors, projectors and closed subspaces of ℂᵈ.
//!
//! A [`Subspace`] is stored as a `d × k` matrix whose columns form an
//! orthonormal basis; `k = 0` is the zero subspace and `k = d` the whole
//! space. Every operation takes a [`Tolerance`] that fixes the numerical
//! thresholds; the convenience methods on the types use the default.
//!
//! Meets are taken as the eigenvalue-2 eigenspace of `P_a + P_b`, joins
//! through `(a⊥ ∧ b⊥)⊥`, and complements as the column space of `1 − P`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Numerical thresholds shared by every subspace computation.
///
/// `eps` bounds Frobenius-norm residuals and containment distances; the
/// eigenvalue window used by [`meet`] is ten times wider.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    eps: f64,
    eigen: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidTolerance(eps));
        }
        Ok(Self {
            eps,
            eigen: eps * 10.0,
        })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Half-width of the window `|λ − 2| ≤ w` used to detect intersections.
    pub fn eigen(&self) -> f64 {
        self.eigen
    }

    /// Residual norm below which a Gram-Schmidt candidate is discarded.
    fn rank_cutoff(&self, dim: usize) -> f64 {
        self.eps * (dim as f64).sqrt()
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps: Self::DEFAULT_EPS,
            eigen: 1e-8,
        }
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A unit vector of ℂᵈ describing a pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<C64>,
}

impl StateVector {
    /// Normalizes `components` to unit length.
    pub fn new(components: Vec<C64>) -> Result<Self> {
        Self::with_norm(components).map(|(v, _)| v)
    }

    /// Like [`StateVector::new`], also returning the norm of the input so
    /// callers can report inputs that were not already normalized.
    pub fn with_norm(components: Vec<C64>) -> Result<(Self, f64)> {
        if components.is_empty() {
            return Err(Error::EmptyVector);
        }
        let v = DVector::from_vec(components);
        let norm = v.norm();
        if !norm.is_finite() {
            return Err(Error::InvalidArgument {
                token: format!("{:?}", v.as_slice()),
                message: "non-finite component".into(),
            });
        }
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok((
            Self {
                amplitudes: v.unscale(norm),
            },
            norm,
        ))
    }

    pub fn from_real(components: &[f64]) -> Result<Self> {
        Self::new(components.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// The `index`-th standard basis vector of ℂ^`dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(
            index < dim,
            "basis index {index} out of range for dimension {dim}"
        );
        let mut v = DVector::zeros(dim);
        v[index] = C64::new(1.0, 0.0);
        Self { amplitudes: v }
    }

    pub(crate) fn from_unit(amplitudes: DVector<C64>) -> Self {
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    /// ⟨self|other⟩, antilinear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// The same ray multiplied by a non-zero scalar, renormalized.
    pub fn scaled(&self, factor: C64) -> Result<Self> {
        Self::new((&self.amplitudes * factor).as_slice().to_vec())
    }
}

/// An orthogonal projection: Hermitian and idempotent within tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: DMatrix<C64>,
}

impl Projector {
    pub fn new(matrix: DMatrix<C64>, tol: Tolerance) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if matrix.nrows() == 0 {
            return Err(Error::EmptyVector);
        }
        let hermitian = (&matrix - matrix.adjoint()).norm();
        if hermitian > tol.eps || !hermitian.is_finite() {
            return Err(Error::NotHermitian(hermitian));
        }
        let idempotent = (&matrix * &matrix - &matrix).norm();
        if idempotent > tol.eps {
            return Err(Error::NotIdempotent(idempotent));
        }
        Ok(Self { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: DMatrix::identity(dim, dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            matrix: DMatrix::zeros(dim, dim),
        }
    }

    /// |v⟩⟨v| for a unit vector.
    pub fn rank_one(v: &StateVector) -> Self {
        Self {
            matrix: v.amplitudes() * v.amplitudes().adjoint(),
        }
    }

    fn from_matrix_unchecked(matrix: DMatrix<C64>) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Dimension of the range, `round(trace)`.
    pub fn rank(&self) -> usize {
        self.trace().round().max(0.0) as usize
    }

    pub fn apply(&self, v: &StateVector) -> Result<DVector<C64>> {
        check_dim(self.dim(), v.dim())?;
        Ok(&self.matrix * v.amplitudes())
    }

    /// Neither the zero operator nor the identity.
    pub fn is_nontrivial(&self, tol: Tolerance) -> bool {
        let d = self.dim();
        self.matrix.norm() > tol.eps && (&self.matrix - DMatrix::identity(d, d)).norm() > tol.eps
    }

    pub fn approx_eq(&self, other: &Projector, tol: Tolerance) -> bool {
        self.dim() == other.dim() && (&self.matrix - &other.matrix).norm() <= tol.eps
    }

    pub fn range(&self, tol: Tolerance) -> Subspace {
        range_of(self, tol)
    }
}

/// A closed linear subspace, held as an orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: DMatrix<C64>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            basis: DMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            basis: DMatrix::identity(ambient_dim, ambient_dim),
        }
    }

    pub fn ray(v: &StateVector) -> Self {
        Self {
            basis: DMatrix::from_columns(&[v.amplitudes().clone()]),
        }
    }

    /// Span of `vectors` in ℂ^`ambient_dim`; see [`orthonormalize`].
    pub fn span(ambient_dim: usize, vectors: &[StateVector], tol: Tolerance) -> Result<Self> {
        orthonormalize(ambient_dim, vectors, tol)
    }

    fn from_columns(ambient_dim: usize, columns: &[DVector<C64>]) -> Self {
        if columns.is_empty() {
            Self::zero(ambient_dim)
        } else {
            Self {
                basis: DMatrix::from_columns(columns),
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    /// `{0}` or the whole space.
    pub fn is_trivial(&self) -> bool {
        self.is_zero() || self.is_full()
    }

    pub fn basis_matrix(&self) -> &DMatrix<C64> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<StateVector> {
        self.basis
            .column_iter()
            .map(|c| StateVector::from_unit(c.into_owned()))
            .collect()
    }

    pub fn projector(&self) -> Projector {
        projector_of(self)
    }

    /// Distance from `v` to this subspace, ‖P v − v‖.
    pub(crate) fn residual(&self, v: &DVector<C64>) -> f64 {
        let coeffs = self.basis.adjoint() * v;
        (&self.basis * coeffs - v).norm()
    }

    pub fn contains(&self, v: &StateVector, tol: Tolerance) -> Result<bool> {
        contains(self, v, tol)
    }

    /// Every basis vector of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &Subspace, tol: Tolerance) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && self.dim() <= other.dim()
            && self
                .basis
                .column_iter()
                .all(|c| other.residual(&c.into_owned()) <= tol.eps)
    }

    /// Equality by mutual containment of basis vectors.
    pub fn equals(&self, other: &Subspace, tol: Tolerance) -> bool {
        self.dim() == other.dim()
            && self.is_subspace_of(other, tol)
            && other.is_subspace_of(self, tol)
    }

    pub fn meet(&self, other: &Subspace, tol: Tolerance) -> Result<Subspace> {
        meet(self, other, tol)
    }

    pub fn join(&self, other: &Subspace, tol: Tolerance) -> Result<Subspace> {
        join(self, other, tol)
    }

    pub fn complement(&self, tol: Tolerance) -> Subspace {
        complement(self, tol)
    }
}

/// Modified Gram-Schmidt with one re-orthogonalization pass. Candidates
/// whose residual norm is at most `eps·√d` are dropped.
fn gram_schmidt(
    dim: usize,
    candidates: impl IntoIterator<Item = DVector<C64>>,
    tol: Tolerance,
) -> Vec<DVector<C64>> {
    let cutoff = tol.rank_cutoff(dim);
    let mut accepted: Vec<DVector<C64>> = Vec::new();
    for mut w in candidates {
        for _pass in 0..2 {
            for q in &accepted {
                let c = q.dotc(&w);
                w.axpy(-c, q, C64::new(1.0, 0.0));
            }
        }
        let norm = w.norm();
        if norm > cutoff {
            accepted.push(w.unscale(norm));
        }
        if accepted.len() == dim {
            break;
        }
    }
    accepted
}

/// Orthonormal basis of the span of `vectors`, processed in input order.
pub fn orthonormalize(
    ambient_dim: usize,
    vectors: &[StateVector],
    tol: Tolerance,
) -> Result<Subspace> {
    for v in vectors {
        check_dim(ambient_dim, v.dim())?;
    }
    let basis = gram_schmidt(
        ambient_dim,
        vectors.iter().map(|v| v.amplitudes().clone()),
        tol,
    );
    Ok(Subspace::from_columns(ambient_dim, &basis))
}

/// P = Σᵢ |eᵢ⟩⟨eᵢ| over the stored basis.
pub fn projector_of(s: &Subspace) -> Projector {
    Projector::from_matrix_unchecked(&s.basis * s.basis.adjoint())
}

/// Column space of `m` truncated to `rank` directions, by Gram-Schmidt
/// with largest-residual column pivoting. For a projector of rank `r` the
/// pivot norm never drops below `1/√d`, so exactly `r` columns are taken.
fn pivoted_column_space(m: &DMatrix<C64>, rank: usize) -> Vec<DVector<C64>> {
    let mut residual = m.clone();
    let mut basis: Vec<DVector<C64>> = Vec::with_capacity(rank);
    for _ in 0..rank {
        let mut best = (0, 0.0);
        for (j, col) in residual.column_iter().enumerate() {
            let n = col.norm();
            if n > best.1 {
                best = (j, n);
            }
        }
        if best.1 == 0.0 {
            break;
        }
        let mut v: DVector<C64> = residual.column(best.0).into_owned();
        for q in &basis {
            let c = q.dotc(&v);
            v.axpy(-c, q, C64::new(1.0, 0.0));
        }
        let n = v.norm();
        v.unscale_mut(n);
        for mut col in residual.column_iter_mut() {
            let c = v.dotc(&col);
            col.axpy(-c, &v, C64::new(1.0, 0.0));
        }
        basis.push(v);
    }
    basis
}

/// Range of a projector: vectors with `P v = v`; its dimension is
/// `round(trace(P))`.
pub fn range_of(p: &Projector, _tol: Tolerance) -> Subspace {
    let rank = p.rank().min(p.dim());
    Subspace::from_columns(p.dim(), &pivoted_column_space(p.matrix(), rank))
}

pub fn contains(s: &Subspace, v: &StateVector, tol: Tolerance) -> Result<bool> {
    check_dim(s.ambient_dim(), v.dim())?;
    Ok(s.residual(v.amplitudes()) <= tol.eps)
}

/// Orthogonal complement, the range of `1 − P`.
pub fn complement(a: &Subspace, _tol: Tolerance) -> Subspace {
    let d = a.ambient_dim();
    if a.is_zero() {
        return Subspace::full(d);
    }
    if a.is_full() {
        return Subspace::zero(d);
    }
    let q = DMatrix::<C64>::identity(d, d) - &a.basis * a.basis.adjoint();
    Subspace::from_columns(d, &pivoted_column_space(&q, d - a.dim()))
}

/// Set-theoretic intersection: the eigenspace of `P_a + P_b` with
/// eigenvalue 2.
pub fn meet(a: &Subspace, b: &Subspace, tol: Tolerance) -> Result<Subspace> {
    let d = a.ambient_dim();
    check_dim(d, b.ambient_dim())?;
    if a.is_zero() || b.is_zero() {
        return Ok(Subspace::zero(d));
    }
    if a.is_full() {
        return Ok(b.clone());
    }
    if b.is_full() {
        return Ok(a.clone());
    }
    let sum = projector_of(a).matrix + projector_of(b).matrix;
    // Symmetrize against rounding so the Hermitian solver sees exact symmetry.
    let sum = (&sum + sum.adjoint()).unscale(2.0);
    let eig = SymmetricEigen::new(sum);
    let candidates: Vec<DVector<C64>> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &lambda)| (lambda - 2.0).abs() <= tol.eigen)
        .map(|(i, _)| eig.eigenvectors.column(i).into_owned())
        .collect();
    let basis = gram_schmidt(d, candidates, tol);
    Ok(Subspace::from_columns(d, &basis))
}

/// Smallest closed subspace containing both, `(a⊥ ∧ b⊥)⊥`.
pub fn join(a: &Subspace, b: &Subspace, tol: Tolerance) -> Result<Subspace> {
    let d = a.ambient_dim();
    check_dim(d, b.ambient_dim())?;
    if a.is_zero() {
        return Ok(b.clone());
    }
    if b.is_zero() {
        return Ok(a.clone());
    }
    Ok(complement(
        &meet(&complement(a, tol), &complement(b, tol), tol)?,
        tol,
    ))
}

/// ‖PQ‖_F ≤ eps.
pub fn orthogonal(p: &Projector, q: &Projector, tol: Tolerance) -> Result<bool> {
    check_dim(p.dim(), q.dim())?;
    Ok((p.matrix() * q.matrix()).norm() <= tol.eps)
}

/// ‖PQ − QP‖_F ≤ eps.
pub fn commutes(p: &Projector, q: &Projector, tol: Tolerance) -> Result<bool> {
    check_dim(p.dim(), q.dim())?;
    Ok((p.matrix() * q.matrix() - q.matrix() * p.matrix()).norm() <= tol.eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn real(v: &[f64]) -> StateVector {
        StateVector::from_real(v).unwrap()
    }

    fn line(v: &[f64]) -> Subspace {
        Subspace::ray(&real(v))
    }

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn tolerance_bounds() {
        assert!(Tolerance::new(0.0).is_err());
        assert!(Tolerance::new(1.0).is_err());
        assert!(Tolerance::new(f64::NAN).is_err());
        let t = Tolerance::new(1e-6).unwrap();
        assert_eq!(t.eps(), 1e-6);
        assert_eq!(Tolerance::default().eigen(), 1e-8);
    }

    #[test]
    fn state_is_normalized() {
        let (v, norm) = StateVector::with_norm(vec![c(3.0), c(4.0)]).unwrap();
        assert!((norm - 5.0).abs() < 1e-15);
        assert!((v.amplitudes().norm() - 1.0).abs() < 1e-15);
        assert_eq!(
            StateVector::new(vec![c(0.0), c(0.0)]),
            Err(Error::ZeroVector)
        );
        assert_eq!(StateVector::new(vec![]), Err(Error::EmptyVector));
    }

    #[test]
    fn orthonormalize_independent_pair_spans_plane() {
        let s = orthonormalize(2, &[real(&[1.0, 0.0]), real(&[1.0, 1.0])], tol()).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.is_full());
    }

    #[test]
    fn orthonormalize_colinear_pair() {
        let s = orthonormalize(2, &[real(&[1.0, 0.0]), real(&[2.0, 0.0])], tol()).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.equals(&line(&[1.0, 0.0]), tol()));
    }

    #[test]
    fn orthonormalize_rejects_mixed_dims() {
        let err = orthonormalize(2, &[real(&[1.0, 0.0]), real(&[1.0, 0.0, 0.0])], tol());
        assert_eq!(
            err,
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn projector_examples() {
        assert_eq!(
            projector_of(&Subspace::zero(2)).matrix(),
            &DMatrix::zeros(2, 2)
        );
        let p = projector_of(&line(&[1.0, 0.0]));
        assert_eq!(
            p.matrix(),
            &DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(0.0)])
        );
        // outer product of (1,1)/√2 with itself
        let p = projector_of(&line(&[1.0, 1.0]));
        let expected = DMatrix::from_element(2, 2, c(0.5));
        assert!((p.matrix() - expected).norm() < 1e-15);
    }

    #[test]
    fn projector_validation() {
        let not_idem = DMatrix::from_row_slice(2, 2, &[c(2.0), c(0.0), c(0.0), c(0.0)]);
        assert!(matches!(
            Projector::new(not_idem, tol()),
            Err(Error::NotIdempotent(_))
        ));
        let not_herm = DMatrix::from_row_slice(2, 2, &[c(1.0), c(1.0), c(0.0), c(0.0)]);
        assert!(matches!(
            Projector::new(not_herm, tol()),
            Err(Error::NotHermitian(_))
        ));
        let rect = DMatrix::<C64>::zeros(2, 3);
        assert!(matches!(
            Projector::new(rect, tol()),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn range_examples() {
        assert!(range_of(&Projector::identity(3), tol()).is_full());
        assert!(range_of(&Projector::zero(3), tol()).is_zero());
        let half = DMatrix::from_element(2, 2, c(0.5));
        let p = Projector::new(half, tol()).unwrap();
        let r = range_of(&p, tol());
        assert_eq!(r.dim(), 1);
        assert!(r.equals(&line(&[1.0, 1.0]), tol()));
    }

    #[test]
    fn containment_examples() {
        let a = line(&[1.0, 0.0]);
        assert!(a.contains(&real(&[1.0, 0.0]), tol()).unwrap());
        assert!(!a.contains(&real(&[0.0, 1.0]), tol()).unwrap());
        assert!(!a
            .contains(&real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]), tol())
            .unwrap());
        assert!(a.contains(&real(&[1.0, 0.0, 0.0]), tol()).is_err());
    }

    #[test]
    fn meet_of_spin_rays_is_zero() {
        let xp = line(&[1.0, 1.0]);
        let zp = line(&[1.0, 0.0]);
        assert!(meet(&xp, &zp, tol()).unwrap().is_zero());
        assert!(meet(&xp, &xp, tol()).unwrap().equals(&xp, tol()));
    }

    #[test]
    fn join_examples() {
        let zp = line(&[1.0, 0.0]);
        let zm = line(&[0.0, 1.0]);
        assert!(join(&zp, &zm, tol()).unwrap().is_full());
        assert!(join(&zp, &Subspace::zero(2), tol())
            .unwrap()
            .equals(&zp, tol()));
    }

    #[test]
    fn complement_examples() {
        assert!(complement(&Subspace::full(2), tol()).is_zero());
        assert!(complement(&line(&[1.0, 0.0]), tol()).equals(&line(&[0.0, 1.0]), tol()));
    }

    #[test]
    fn orthogonality_and_commutation() {
        let zp = projector_of(&line(&[1.0, 0.0]));
        let zm = projector_of(&line(&[0.0, 1.0]));
        let xp = projector_of(&line(&[1.0, 1.0]));
        assert!(orthogonal(&zp, &zm, tol()).unwrap());
        assert!(!orthogonal(&zp, &zp, tol()).unwrap());
        assert!(commutes(&zp, &zp, tol()).unwrap());
        assert!(!orthogonal(&xp, &zp, tol()).unwrap());
        assert!(!commutes(&xp, &zp, tol()).unwrap());
    }

    #[test]
    fn complex_meet_in_c3() {
        // span{e0, i·e1 + e2} ∧ span{e1, e2} = span{i·e1 + e2}
        let i = C64::new(0.0, 1.0);
        let v = StateVector::new(vec![c(0.0), i, c(1.0)]).unwrap();
        let a = orthonormalize(3, &[StateVector::basis(3, 0), v.clone()], tol()).unwrap();
        let b = orthonormalize(
            3,
            &[StateVector::basis(3, 1), StateVector::basis(3, 2)],
            tol(),
        )
        .unwrap();
        let m = meet(&a, &b, tol()).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(m.contains(&v, tol()).unwrap());
    }
}

//! Dense realization of Pauli sums and the exact propagator used as the
//! reference for every compiled schedule.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{DaqcError, Result};
use crate::pauli::{BasisAction, PauliSum};

pub const DEFAULT_DENSE_CAP: usize = 12;

/// Tolerance on imaginary coefficient parts when a Hermitian input is required.
pub const HERMITIAN_TOL: f64 = 1e-12;

pub type CMatrix = DMatrix<Complex64>;

/// A `2^n_q x 2^n_q` complex matrix. Row/column index `k` is the basis state
/// whose bit `q - 1` holds the occupation of qubit `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    n_q: usize,
    matrix: CMatrix,
}

impl DenseOperator {
    pub fn from_matrix(n_q: usize, matrix: CMatrix) -> Result<Self> {
        let dim = 1usize << n_q;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(DaqcError::Dimension {
                expected: dim,
                found: matrix.nrows().max(matrix.ncols()),
            });
        }
        Ok(DenseOperator { n_q, matrix })
    }

    pub fn identity(n_q: usize) -> Self {
        let dim = 1usize << n_q;
        DenseOperator {
            n_q,
            matrix: CMatrix::identity(dim, dim),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_q
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn adjoint(&self) -> Self {
        DenseOperator {
            n_q: self.n_q,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn compose(&self, rhs: &DenseOperator) -> Result<DenseOperator> {
        self.check(rhs)?;
        Ok(DenseOperator {
            n_q: self.n_q,
            matrix: &self.matrix * &rhs.matrix,
        })
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim() {
            return Err(DaqcError::Dimension {
                expected: self.dim(),
                found: v.len(),
            });
        }
        let out = &self.matrix * DVector::from_column_slice(v);
        Ok(out.as_slice().to_vec())
    }

    /// `max |A_ij - B_ij|`.
    pub fn max_distance(&self, other: &DenseOperator) -> Result<f64> {
        self.check(other)?;
        Ok(max_abs(&(&self.matrix - &other.matrix)))
    }

    /// `max |A_ij - e^{i phi} B_ij|` with `phi = arg tr(B^dag A)`, the phase
    /// that minimizes the Frobenius distance.
    pub fn phase_distance(&self, other: &DenseOperator) -> Result<f64> {
        self.check(other)?;
        let overlap = (other.matrix.adjoint() * &self.matrix).trace();
        let phase = if overlap.norm() > 0.0 {
            overlap / overlap.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        Ok(max_abs(&(&self.matrix - other.matrix.map(|z| z * phase))))
    }

    /// `max |U^dag U - 1|`.
    pub fn unitarity_error(&self) -> f64 {
        let dim = self.dim();
        max_abs(&(self.matrix.adjoint() * &self.matrix - CMatrix::identity(dim, dim)))
    }

    pub fn hermiticity_error(&self) -> f64 {
        max_abs(&(&self.matrix - self.matrix.adjoint()))
    }

    fn check(&self, other: &DenseOperator) -> Result<()> {
        if self.n_q != other.n_q {
            return Err(DaqcError::Dimension {
                expected: self.n_q,
                found: other.n_q,
            });
        }
        Ok(())
    }
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn to_dense(h: &PauliSum) -> Result<DenseOperator> {
    to_dense_capped(h, DEFAULT_DENSE_CAP)
}

/// `sum_k c_k (x)_j sigma^{axes_k(j)}`, built column by column from the
/// basis action of each string. The identity shift is not included.
pub fn to_dense_capped(h: &PauliSum, cap: usize) -> Result<DenseOperator> {
    let n_q = h.n_qubits();
    if n_q > cap {
        return Err(DaqcError::Resource { n_q, cap });
    }
    let dim = 1usize << n_q;
    let mut m = CMatrix::zeros(dim, dim);
    for (s, c) in h.terms() {
        let action = BasisAction::new(s);
        for col in 0..dim {
            let (row, phase) = action.apply(col);
            m[(row, col)] += c * phase;
        }
    }
    Ok(DenseOperator { n_q, matrix: m })
}

/// Eigendecomposition of a Hermitian Pauli sum, reusable for many times.
#[derive(Clone, Debug)]
pub struct Propagator {
    n_q: usize,
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
}

impl Propagator {
    pub fn new(h: &PauliSum) -> Result<Self> {
        Self::with_cap(h, DEFAULT_DENSE_CAP)
    }

    pub fn with_cap(h: &PauliSum, cap: usize) -> Result<Self> {
        h.ensure_hermitian(HERMITIAN_TOL)?;
        let dense = to_dense_capped(h, cap)?;
        // Symmetrize so rounding in the imaginary parts cannot bias the solver.
        let m = dense.matrix();
        let herm = (m + m.adjoint()).map(|z| z * 0.5);
        let eig = SymmetricEigen::new(herm);
        Ok(Propagator {
            n_q: h.n_qubits(),
            eigenvalues: eig.eigenvalues.iter().copied().collect(),
            eigenvectors: eig.eigenvectors,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `exp(-i t H) = V diag(e^{-i t lambda}) V^dag`.
    pub fn at(&self, t: f64) -> DenseOperator {
        let phases: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .map(|&e| Complex64::from_polar(1.0, -e * t))
            .collect();
        let mut scaled = self.eigenvectors.clone();
        for (mut col, ph) in scaled.column_iter_mut().zip(&phases) {
            col *= *ph;
        }
        DenseOperator {
            n_q: self.n_q,
            matrix: scaled * self.eigenvectors.adjoint(),
        }
    }

    /// `exp(-i t H) v` without forming the full propagator.
    pub fn evolve(&self, t: f64, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let dim = self.eigenvalues.len();
        if v.len() != dim {
            return Err(DaqcError::Dimension {
                expected: dim,
                found: v.len(),
            });
        }
        let mut coeffs = self.eigenvectors.adjoint() * DVector::from_column_slice(v);
        for (c, &e) in coeffs.iter_mut().zip(&self.eigenvalues) {
            *c *= Complex64::from_polar(1.0, -e * t);
        }
        Ok((&self.eigenvectors * coeffs).iter().copied().collect())
    }
}

pub fn exact_propagator(h: &PauliSum, t: f64) -> Result<DenseOperator> {
    Ok(Propagator::new(h)?.at(t))
}

/// Dense commutator check `max |[A, B]| <= 1e-12`.
pub fn commutes_dense(a: &PauliSum, b: &PauliSum) -> Result<bool> {
    let da = to_dense(a)?;
    let db = to_dense(b)?;
    da.check(&db)?;
    let c = &da.matrix * &db.matrix - &db.matrix * &da.matrix;
    Ok(max_abs(&c) <= 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{Pauli, PauliString};
    use proptest::prelude::*;

    fn term(n_q: usize, axes: &str, c: f64) -> PauliSum {
        assert_eq!(axes.len(), n_q);
        PauliSum::from_real_terms(n_q, [(c, axes.parse().unwrap())]).unwrap()
    }

    /// Kronecker product with qubit 1 as the least significant factor.
    fn kron_oracle(s: &PauliString) -> CMatrix {
        let mut m = CMatrix::identity(1, 1);
        for &p in s.axes().iter().rev() {
            let a = p.matrix();
            let small = CMatrix::from_fn(2, 2, |r, c| a[r][c]);
            m = m.kronecker(&small);
        }
        m
    }

    #[test]
    fn single_z_is_occupation_signed() {
        let d = to_dense(&term(1, "Z", 1.0)).unwrap();
        let expect = CMatrix::from_diagonal(&DVector::from_vec(vec![
            Complex64::new(-1.0, 0.0),
            Complex64::new(1.0, 0.0),
        ]));
        assert_eq!(d.matrix(), &expect);
    }

    #[test]
    fn empty_sum_is_zero() {
        let d = to_dense(&PauliSum::zero(2)).unwrap();
        assert_eq!(max_abs(d.matrix()), 0.0);
    }

    #[test]
    fn strings_match_kronecker_products() {
        for axes in ["XYZ", "ZIY", "YYX", "IXI", "ZZZ"] {
            let s: PauliString = axes.parse().unwrap();
            let d = to_dense(&term(3, axes, 1.0)).unwrap();
            assert!(max_abs(&(d.matrix() - kron_oracle(&s))) < 1e-15, "{axes}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let h = PauliSum::identity(5);
        assert!(matches!(
            to_dense_capped(&h, 4),
            Err(DaqcError::Resource { n_q: 5, cap: 4 })
        ));
    }

    #[test]
    fn propagator_at_zero_is_identity() {
        let h = &term(2, "XY", 0.7) + &term(2, "ZI", -0.3);
        let u = exact_propagator(&h, 0.0).unwrap();
        assert!(u.max_distance(&DenseOperator::identity(2)).unwrap() < 1e-12);
    }

    #[test]
    fn diagonal_generator_gives_phases() {
        let t = 0.37;
        let u = exact_propagator(&term(1, "Z", 1.0), t).unwrap();
        // Z = diag(-1, +1)  =>  exp(-itZ) = diag(e^{it}, e^{-it})
        assert!((u.matrix()[(0, 0)] - Complex64::from_polar(1.0, t)).norm() < 1e-14);
        assert!((u.matrix()[(1, 1)] - Complex64::from_polar(1.0, -t)).norm() < 1e-14);
        assert!(u.matrix()[(0, 1)].norm() < 1e-14);
    }

    #[test]
    fn non_hermitian_rejected() {
        let h = PauliSum::from_terms(
            1,
            [(
                Complex64::new(0.0, 1.0),
                PauliString::single(1, 1, Pauli::X).unwrap(),
            )],
        )
        .unwrap();
        assert!(matches!(
            exact_propagator(&h, 1.0),
            Err(DaqcError::Validation(_))
        ));
    }

    #[test]
    fn dense_and_symbolic_commutation_agree() {
        let x1 = term(1, "X", 1.0);
        let z1 = term(1, "Z", 1.0);
        assert!(!commutes_dense(&x1, &z1).unwrap());
        let zz = term(2, "ZZ", 1.0);
        let zi = term(2, "ZI", 1.0);
        assert!(commutes_dense(&zz, &zi).unwrap());
    }

    fn arb_sum(n_q: usize) -> impl Strategy<Value = PauliSum> {
        let letters = prop::sample::select(Pauli::ALL.to_vec());
        prop::collection::vec((prop::collection::vec(letters, n_q), -2.0f64..2.0), 0..6).prop_map(
            move |terms| {
                PauliSum::from_real_terms(
                    n_q,
                    terms
                        .into_iter()
                        .map(|(axes, c)| (c, PauliString::from_axes(axes))),
                )
                .unwrap()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn to_dense_is_linear(a in arb_sum(3), b in arb_sum(3), x in -2.0f64..2.0, y in -2.0f64..2.0) {
            let combo = &a.scale(Complex64::new(x, 0.0)) + &b.scale(Complex64::new(y, 0.0));
            let lhs = to_dense(&combo).unwrap();
            let rhs = to_dense(&a).unwrap().matrix().map(|z| z * x)
                + to_dense(&b).unwrap().matrix().map(|z| z * y);
            prop_assert!(max_abs(&(lhs.matrix() - rhs)) < 1e-12);
        }

        #[test]
        fn symbolic_product_matches_dense(a in arb_sum(3), b in arb_sum(3)) {
            let lhs = to_dense(&(&a * &b)).unwrap();
            let rhs = to_dense(&a).unwrap().compose(&to_dense(&b).unwrap()).unwrap();
            prop_assert!(lhs.max_distance(&rhs).unwrap() < 1e-12);
        }

        #[test]
        fn propagator_is_a_group(h in arb_sum(3), t1 in -2.0f64..2.0, t2 in -2.0f64..2.0) {
            let p = Propagator::new(&h).unwrap();
            let joint = p.at(t1 + t2);
            let split = p.at(t1).compose(&p.at(t2)).unwrap();
            prop_assert!(joint.max_distance(&split).unwrap() < 1e-10);
            prop_assert!(joint.unitarity_error() < 1e-10);
        }
    }
}

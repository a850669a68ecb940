//! Minimal dense complex linear algebra for few-qubit systems.
//!
//! Everything the protocol needs lives on 2-, 4- and 8-dimensional Hilbert
//! spaces, so matrices are stored as plain row-major `Vec<Complex64>` with
//! no sparsity or blocking. Values are immutable after construction and
//! safe to share across worker threads.

use num_complex::Complex64;

use crate::{Error, Result};

/// Absolute tolerance for O(1) floating-point comparisons.
pub const TOL: f64 = 1e-12;

/// Density-matrix eigenvalues may dip this far below zero from roundoff.
pub const PSD_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix in row-major order.
///
/// The universal carrier for states, projectors, Kraus and correction
/// operators.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    /// Identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Build from row-major complex entries.
    ///
    /// Panics if `entries.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<Complex64>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count {} does not match {}x{}",
            entries.len(),
            rows,
            cols
        );
        ComplexMatrix {
            rows,
            cols,
            data: entries,
        }
    }

    /// Build from row-major real entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        Self::from_vec(
            rows,
            cols,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn shape(&self) -> String {
        format!("{}x{}", self.rows, self.cols)
    }

    /// Entrywise sum. Panics on shape mismatch.
    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "add: shape mismatch"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix::from_vec(self.rows, self.cols, data)
    }

    /// Entrywise difference. Panics on shape mismatch.
    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "sub: shape mismatch"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix::from_vec(self.rows, self.cols, data)
    }

    /// Multiply every entry by a complex scalar.
    pub fn scale(&self, c: Complex64) -> ComplexMatrix {
        ComplexMatrix::from_vec(self.rows, self.cols, self.data.iter().map(|a| a * c).collect())
    }

    /// Multiply every entry by a real scalar.
    pub fn scale_re(&self, x: f64) -> ComplexMatrix {
        self.scale(Complex64::new(x, 0.0))
    }

    /// Matrix product `self * other`. Panics if inner dimensions disagree.
    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, other.rows,
            "mul: inner dimensions {} and {} disagree",
            self.cols, other.rows
        );
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Trace. Panics if not square.
    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace: matrix is {}", self.shape());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise absolute difference against `other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// True when `self` equals its own adjoint entrywise within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if (self[(i, j)] - self[(j, i)].conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Checks the three density-matrix conditions: Hermitian, unit trace,
    /// positive semidefinite (eigenvalues ≥ `-PSD_TOL`).
    pub fn check_density(&self, tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotDensityMatrix(format!("shape {}", self.shape())));
        }
        if !self.is_hermitian(tol) {
            return Err(Error::NotDensityMatrix("not Hermitian".into()));
        }
        let tr = self.trace();
        if (tr - ONE).norm() > tol {
            return Err(Error::NotDensityMatrix(format!("trace {} != 1", tr)));
        }
        let eigs = self.eigenvalues_hermitian()?;
        if eigs.iter().any(|&e| e < -PSD_TOL) {
            return Err(Error::NotDensityMatrix(format!(
                "negative eigenvalue {:e}",
                eigs[0]
            )));
        }
        Ok(())
    }

    /// Eigenvalues of a Hermitian matrix, real and sorted ascending.
    ///
    /// A 2x2 closed form is used directly; larger matrices go through a
    /// cyclic Jacobi iteration on the real symmetric embedding
    /// `[[Re, -Im], [Im, Re]]`, whose spectrum is that of the complex
    /// matrix with every eigenvalue doubled.
    pub fn eigenvalues_hermitian(&self) -> Result<Vec<f64>> {
        if !self.is_square() {
            return Err(Error::dims("eigenvalues_hermitian", "square", self.shape()));
        }
        if !self.is_hermitian(1e-9) {
            return Err(Error::NotHermitian);
        }
        let n = self.rows;
        if n == 1 {
            return Ok(vec![self[(0, 0)].re]);
        }
        if n == 2 {
            // Closed form: eigenvalues of [[a, c], [c*, b]] with a, b real.
            let a = self[(0, 0)].re;
            let b = self[(1, 1)].re;
            let c = self[(0, 1)].norm_sqr();
            let mean = 0.5 * (a + b);
            let disc = (0.25 * (a - b) * (a - b) + c).sqrt();
            return Ok(vec![mean - disc, mean + disc]);
        }

        // Real symmetric embedding of dimension 2n.
        let m = 2 * n;
        let mut s = vec![0.0f64; m * m];
        for i in 0..n {
            for j in 0..n {
                let z = self[(i, j)];
                s[i * m + j] = z.re;
                s[(i + n) * m + (j + n)] = z.re;
                s[i * m + (j + n)] = -z.im;
                s[(i + n) * m + j] = z.im;
            }
        }
        jacobi_symmetric(&mut s, m);
        let mut eigs: Vec<f64> = (0..m).map(|i| s[i * m + i]).collect();
        eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // The spectrum comes out in duplicate pairs; average each pair.
        Ok((0..n).map(|i| 0.5 * (eigs[2 * i] + eigs[2 * i + 1])).collect())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

/// Cyclic Jacobi sweeps on a real symmetric matrix stored row-major.
/// Rotates until every off-diagonal entry is below 1e-14 (or 100 sweeps).
fn jacobi_symmetric(a: &mut [f64], n: usize) {
    for _ in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[p * n + q].abs());
            }
        }
        if off < 1e-14 {
            return;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = 0.5 * (aqq - app) / apq;
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
}

/// Kronecker product `a ⊗ b`; dimensions multiply.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i1 in 0..a.rows() {
        for j1 in 0..a.cols() {
            let s = a[(i1, j1)];
            if s == ZERO {
                continue;
            }
            for i2 in 0..b.rows() {
                for j2 in 0..b.cols() {
                    out[(i1 * b.rows() + i2, j1 * b.cols() + j2)] = s * b[(i2, j2)];
                }
            }
        }
    }
    out
}

/// Traces out the first two qubits of an 8x8 three-qubit operator, leaving
/// the 2x2 operator on the last qubit. Basis order is |q1 q2 q3> with q1
/// the most significant bit.
pub fn partial_trace_12(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if (m.rows(), m.cols()) != (8, 8) {
        return Err(Error::dims("partial_trace_12", "8x8", m.shape()));
    }
    let mut out = ComplexMatrix::zeros(2, 2);
    for r in 0..4 {
        for i in 0..2 {
            for j in 0..2 {
                out[(i, j)] += m[(2 * r + i, 2 * r + j)];
            }
        }
    }
    Ok(out)
}

/// Normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    amplitudes: Vec<Complex64>,
}

impl Ket {
    pub fn from_vec(amplitudes: Vec<Complex64>) -> Self {
        Ket { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, i: usize) -> Complex64 {
        self.amplitudes[i]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &Ket) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "inner: dimension mismatch");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Expectation value `<self|m|self>`. Panics on dimension mismatch.
    pub fn expectation(&self, m: &ComplexMatrix) -> Complex64 {
        assert_eq!(m.rows(), self.dim(), "expectation: dimension mismatch");
        assert!(m.is_square());
        let mut acc = ZERO;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += self.amplitudes[i].conj() * m[(i, j)] * self.amplitudes[j];
            }
        }
        acc
    }

    /// Rank-1 projector `|self><self|`; idempotent for normalized kets.
    pub fn outer(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self.amplitudes[i] * self.amplitudes[j].conj();
            }
        }
        out
    }
}

/// Pauli X.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])
}

/// Pauli Y.
pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_vec(
        2,
        2,
        vec![
            ZERO,
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            ZERO,
        ],
    )
}

/// Pauli Z.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ket(v: &[(f64, f64)]) -> Ket {
        Ket::from_vec(v.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
    }

    #[test]
    fn tensor_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(tensor(&i2, &i2), ComplexMatrix::identity(4));

        let zz = tensor(&pauli_z(), &pauli_z());
        let expect = ComplexMatrix::from_real(
            4,
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, -1.0, 0.0, 0.0, //
                0.0, 0.0, -1.0, 0.0, //
                0.0, 0.0, 0.0, 1.0,
            ],
        );
        assert!(zz.max_abs_diff(&expect) == 0.0);
    }

    #[test]
    fn tensor_input_times_channel() {
        // |0><0| ⊗ |B1^{pi/4}><B1^{pi/4}|: the whole channel projector
        // lands in the top-left 4x4 block.
        let rho_in = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let c = std::f64::consts::FRAC_PI_4.cos();
        let s = std::f64::consts::FRAC_PI_4.sin();
        let b1 = ket(&[(c, 0.0), (0.0, 0.0), (0.0, 0.0), (s, 0.0)]);
        let rho_ch = b1.outer();
        let rho = tensor(&rho_in, &rho_ch);
        assert_eq!((rho.rows(), rho.cols()), (8, 8));
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert!((rho[(i, j)].re - 0.5).abs() < TOL, "entry ({i},{j})");
        }
        let half_count = (0..8)
            .flat_map(|i| (0..8).map(move |j| (i, j)))
            .filter(|&(i, j)| rho[(i, j)].norm() > TOL)
            .count();
        assert_eq!(half_count, 4);
    }

    #[test]
    fn partial_trace_factored_state() {
        let rho_a = ComplexMatrix::from_real(
            4,
            4,
            &[
                0.3, 0.1, 0.0, 0.0, //
                0.1, 0.2, 0.0, 0.0, //
                0.0, 0.0, 0.25, 0.0, //
                0.0, 0.0, 0.0, 0.25,
            ],
        );
        let rho_b = ComplexMatrix::from_real(2, 2, &[0.7, 0.2, 0.2, 0.3]);
        let got = partial_trace_12(&tensor(&rho_a, &rho_b)).unwrap();
        assert!(got.max_abs_diff(&rho_b) < TOL);
    }

    #[test]
    fn partial_trace_maximally_mixed() {
        let m = ComplexMatrix::identity(8).scale_re(1.0 / 8.0);
        let got = partial_trace_12(&m).unwrap();
        let expect = ComplexMatrix::identity(2).scale_re(0.5);
        assert!(got.max_abs_diff(&expect) < TOL);
    }

    #[test]
    fn partial_trace_joint_state() {
        // rho_in = |0><0|, theta = pi/4: Bob's marginal is maximally mixed.
        let rho_in = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let c = std::f64::consts::FRAC_PI_4.cos();
        let s = std::f64::consts::FRAC_PI_4.sin();
        let b1 = ket(&[(c, 0.0), (0.0, 0.0), (0.0, 0.0), (s, 0.0)]);
        let rho = tensor(&rho_in, &b1.outer());
        let got = partial_trace_12(&rho).unwrap();
        let expect = ComplexMatrix::from_real(2, 2, &[0.5, 0.0, 0.0, 0.5]);
        assert!(got.max_abs_diff(&expect) < TOL);
    }

    #[test]
    fn partial_trace_rejects_wrong_shape() {
        let m = ComplexMatrix::identity(4);
        assert!(matches!(
            partial_trace_12(&m),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn outer_basis_state() {
        let k = ket(&[(1.0, 0.0), (0.0, 0.0)]);
        let p = k.outer();
        assert!(p.max_abs_diff(&ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0])) == 0.0);
    }

    #[test]
    fn outer_bell_state() {
        let c = std::f64::consts::FRAC_PI_4.cos();
        let s = std::f64::consts::FRAC_PI_4.sin();
        let b1 = ket(&[(c, 0.0), (0.0, 0.0), (0.0, 0.0), (s, 0.0)]);
        let p = b1.outer();
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert!((p[(i, j)].re - 0.5).abs() < TOL);
        }
    }

    #[test]
    fn outer_b4_at_pi_third() {
        // |B4^phi> = sin(phi)|01> - cos(phi)|10> at phi = pi/3.
        let phi = std::f64::consts::FRAC_PI_3;
        let b4 = ket(&[
            (0.0, 0.0),
            (phi.sin(), 0.0),
            (-phi.cos(), 0.0),
            (0.0, 0.0),
        ]);
        let p = b4.outer();
        assert!((p[(1, 1)].re - 0.75).abs() < TOL);
        assert!((p[(2, 2)].re - 0.25).abs() < TOL);
        let off = -3.0f64.sqrt() / 4.0;
        assert!((p[(1, 2)].re - off).abs() < TOL);
        assert!((p[(2, 1)].re - off).abs() < TOL);
    }

    #[test]
    fn trace_and_adjoint() {
        assert_eq!(ComplexMatrix::identity(4).trace(), Complex64::new(4.0, 0.0));
        let m = ComplexMatrix::from_vec(
            2,
            2,
            vec![
                Complex64::new(1.0, 2.0),
                Complex64::new(-0.5, 0.25),
                Complex64::new(0.0, -1.0),
                Complex64::new(3.0, 0.0),
            ],
        );
        assert!(m.adjoint().adjoint().max_abs_diff(&m) == 0.0);
    }

    #[test]
    fn eigenvalues_pauli_x() {
        let eigs = pauli_x().eigenvalues_hermitian().unwrap();
        assert!((eigs[0] + 1.0).abs() < TOL);
        assert!((eigs[1] - 1.0).abs() < TOL);
    }

    #[test]
    fn eigenvalues_four_dim() {
        let zz = tensor(&pauli_z(), &pauli_z());
        let eigs = zz.eigenvalues_hermitian().unwrap();
        assert!((eigs[0] + 1.0).abs() < TOL && (eigs[1] + 1.0).abs() < TOL);
        assert!((eigs[2] - 1.0).abs() < TOL && (eigs[3] - 1.0).abs() < TOL);

        // Pure-state projector: spectrum {0, 0, 0, 1}.
        let c = 0.3f64.cos();
        let s = 0.3f64.sin();
        let b = ket(&[(c, 0.0), (0.0, 0.0), (0.0, 0.0), (s, 0.0)]);
        let eigs = b.outer().eigenvalues_hermitian().unwrap();
        for e in &eigs[..3] {
            assert!(e.abs() < 1e-10);
        }
        assert!((eigs[3] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn eigenvalues_complex_entries() {
        let eigs = pauli_y().eigenvalues_hermitian().unwrap();
        assert!((eigs[0] + 1.0).abs() < TOL);
        assert!((eigs[1] - 1.0).abs() < TOL);

        // 4x4 with genuinely complex off-diagonal structure.
        let m = tensor(&pauli_y(), &pauli_x());
        let eigs = m.eigenvalues_hermitian().unwrap();
        assert!((eigs[0] + 1.0).abs() < 1e-10 && (eigs[3] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn eigenvalues_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(m.eigenvalues_hermitian(), Err(Error::NotHermitian)));
    }

    // Entries from a dyadic set make float products exact, so tensor
    // associativity holds entrywise with zero error.
    fn dyadic_matrix() -> impl Strategy<Value = ComplexMatrix> {
        let entry = (-4i32..=4, -4i32..=4).prop_map(|(a, b)| {
            Complex64::new(a as f64 * 0.25, b as f64 * 0.25)
        });
        prop::collection::vec(entry, 4).prop_map(|v| ComplexMatrix::from_vec(2, 2, v))
    }

    fn random_matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
            ComplexMatrix::from_vec(
                n,
                n,
                v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect(),
            )
        })
    }

    fn random_hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix> {
        random_matrix(n).prop_map(|m| m.add(&m.adjoint()).scale_re(0.5))
    }

    proptest! {
        #[test]
        fn tensor_associative_exact(a in dyadic_matrix(), b in dyadic_matrix(), c in dyadic_matrix()) {
            let left = tensor(&tensor(&a, &b), &c);
            let right = tensor(&a, &tensor(&b, &c));
            prop_assert_eq!(left.max_abs_diff(&right), 0.0);
        }

        #[test]
        fn trace_multiplicative(a in random_matrix(2), b in random_matrix(4)) {
            let lhs = tensor(&a, &b).trace();
            let rhs = a.trace() * b.trace();
            prop_assert!((lhs - rhs).norm() < TOL);
        }

        #[test]
        fn partial_trace_of_product(a in random_hermitian(4), b in random_hermitian(2)) {
            let got = partial_trace_12(&tensor(&a, &b)).unwrap();
            let expect = b.scale(a.trace());
            prop_assert!(got.max_abs_diff(&expect) < TOL);
        }

        #[test]
        fn projectors_idempotent(v in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 4)) {
            let raw = ket(&v);
            prop_assume!(raw.norm() > 1e-3);
            let scale = Complex64::new(1.0 / raw.norm(), 0.0);
            let k = Ket::from_vec(raw.amplitudes().iter().map(|a| a * scale).collect());
            let p = k.outer();
            prop_assert!(p.mul(&p).max_abs_diff(&p) < TOL);
        }

        #[test]
        fn hermitian_eigenvalues_sorted_and_trace_consistent(m in random_hermitian(4)) {
            let eigs = m.eigenvalues_hermitian().unwrap();
            for w in eigs.windows(2) {
                prop_assert!(w[0] <= w[1] + 1e-12);
            }
            let sum: f64 = eigs.iter().sum();
            prop_assert!((sum - m.trace().re).abs() < 1e-9);
        }
    }
}

//! Dense complex matrices of dimension 2 and 4.
//!
//! [`Matrix`] is parameterised by its dimension; only `N = 2` and `N = 4`
//! are accepted, which is checked at compile time when a matrix is built.

use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;

use crate::{Error, Result};

pub type C64 = Complex64;

/// Tolerance for Hermiticity checks in max-norm.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Off-diagonal Frobenius norm at which a Jacobi sweep counts as converged,
/// relative to the Frobenius norm of the input (floored at 1).
pub const JACOBI_TOL: f64 = 1e-13;

/// Maximum number of cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix<const N: usize> {
    entries: [[C64; N]; N],
}

pub type Mat2 = Matrix<2>;
pub type Mat4 = Matrix<4>;

impl<const N: usize> Matrix<N> {
    const SUPPORTED: () = assert!(N == 2 || N == 4, "matrix dimension must be 2 or 4");

    /// Builds a matrix from rows, rejecting NaN or infinite entries.
    pub fn from_rows(entries: [[C64; N]; N]) -> Result<Self> {
        for (row, r) in entries.iter().enumerate() {
            for (col, z) in r.iter().enumerate() {
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NonFinite { row, col });
                }
            }
        }
        Ok(Self::from_rows_unchecked(entries))
    }

    pub(crate) const fn from_rows_unchecked(entries: [[C64; N]; N]) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::SUPPORTED;
        Self { entries }
    }

    /// Builds a matrix from separate real and imaginary parts.
    pub fn from_parts(re: [[f64; N]; N], im: [[f64; N]; N]) -> Result<Self> {
        let mut entries = [[ZERO; N]; N];
        for i in 0..N {
            for j in 0..N {
                entries[i][j] = C64::new(re[i][j], im[i][j]);
            }
        }
        Self::from_rows(entries)
    }

    pub const fn zeros() -> Self {
        Self::from_rows_unchecked([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.entries[i][i] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i][i] = C64::new(d, 0.0);
        }
        m
    }

    /// Outer product |u⟩⟨v|.
    pub fn outer(u: &[C64; N], v: &[C64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[i][j] = u[i] * v[j].conj();
            }
        }
        m
    }

    pub const fn dim(&self) -> usize {
        N
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row][col]
    }

    pub fn rows(&self) -> &[[C64; N]; N] {
        &self.entries
    }

    pub fn scale(&self, factor: f64) -> Self {
        self.map(|z| z * factor)
    }

    pub fn scale_complex(&self, factor: C64) -> Self {
        self.map(|z| z * factor)
    }

    fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        let mut out = *self;
        for row in out.entries.iter_mut() {
            for z in row.iter_mut() {
                *z = f(*z);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                out.entries[j][i] = self.entries[i][j];
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().map(|z| z.conj())
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.entries[i][i]).sum()
    }

    pub fn apply(&self, v: &[C64; N]) -> [C64; N] {
        let mut out = [ZERO; N];
        for (o, row) in out.iter_mut().zip(self.entries.iter()) {
            *o = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entrywise modulus of `self - self†`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn check_hermitian(&self) -> Result<()> {
        let deviation = self.hermiticity_defect();
        if deviation <= HERMITIAN_TOL {
            Ok(())
        } else {
            Err(Error::NotHermitian { deviation })
        }
    }
}

impl<const N: usize> Default for Matrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Add for Matrix<N> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.entries[i][j] += rhs.entries[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Sub for Matrix<N> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.entries[i][j] -= rhs.entries[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Neg for Matrix<N> {
    type Output = Self;

    fn neg(self) -> Self {
        self.map(|z| -z)
    }
}

impl<const N: usize> Mul for Matrix<N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<const N: usize> Mul<&Matrix<N>> for &Matrix<N> {
    type Output = Matrix<N>;

    fn mul(self, rhs: &Matrix<N>) -> Matrix<N> {
        let mut out = Matrix::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.entries[i][k];
                for j in 0..N {
                    out.entries[i][j] += a * rhs.entries[k][j];
                }
            }
        }
        out
    }
}

/// Kronecker product `a ⊗ b`: block (i, j) of the result is `a[i][j] · b`.
pub fn tensor_product(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.entries[2 * i + k][2 * j + l] = a.entries[i][j] * b.entries[k][l];
                }
            }
        }
    }
    out
}

impl Mat4 {
    /// Partial transpose on the second qubit:
    /// ⟨i,j|M^T_B|k,l⟩ = ⟨i,l|M|k,j⟩.
    pub fn partial_transpose_second(&self) -> Mat4 {
        let mut out = Mat4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out.entries[2 * i + j][2 * k + l] = self.entries[2 * i + l][2 * k + j];
                    }
                }
            }
        }
        out
    }
}

impl Mat2 {
    pub fn pauli_x() -> Mat2 {
        Mat2::from_rows_unchecked([[ZERO, ONE], [ONE, ZERO]])
    }

    /// σy with σy|H⟩ = i|V⟩.
    pub fn pauli_y() -> Mat2 {
        let i = C64::new(0.0, 1.0);
        Mat2::from_rows_unchecked([[ZERO, -i], [i, ZERO]])
    }

    pub fn pauli_z() -> Mat2 {
        Mat2::from_diagonal([1.0, -1.0])
    }

    pub fn determinant(&self) -> C64 {
        let m = &self.entries;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Fails with [`Error::NotHermitian`] when the input deviates from its
/// adjoint by more than [`HERMITIAN_TOL`] in max-norm.
pub fn hermitian_eigenvalues<const N: usize>(h: &Matrix<N>) -> Result<[f64; N]> {
    h.check_hermitian()?;
    Ok(hermitian_eigenvalues_unchecked(h))
}

/// Cyclic Jacobi on the real symmetric embedding
/// `[[Re H, -Im H], [Im H, Re H]]`, whose spectrum is that of `H` with every
/// eigenvalue doubled. Only the Hermitian part of `h` is used.
pub(crate) fn hermitian_eigenvalues_unchecked<const N: usize>(h: &Matrix<N>) -> [f64; N] {
    const MAX: usize = 8;
    let m = 2 * N;
    debug_assert!(m <= MAX);

    let mut a = [[0.0f64; MAX]; MAX];
    for i in 0..N {
        for j in 0..N {
            // symmetrise so slightly non-Hermitian input still yields a real spectrum
            let z = (h.entries[i][j] + h.entries[j][i].conj()) * 0.5;
            a[i][j] = z.re;
            a[i + N][j + N] = z.re;
            a[i][j + N] = -z.im;
            a[i + N][j] = z.im;
        }
    }

    let scale = h.frobenius_norm().max(1.0);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..m {
            for q in (p + 1)..m {
                off += 2.0 * a[p][q] * a[p][q];
            }
        }
        if off.sqrt() <= JACOBI_TOL * scale {
            break;
        }
        for p in 0..m {
            for q in (p + 1)..m {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut().take(m) {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
    }

    let mut doubled = [0.0f64; MAX];
    for (i, d) in doubled.iter_mut().enumerate().take(m) {
        *d = a[i][i];
    }
    doubled[..m].sort_unstable_by(f64::total_cmp);
    let mut out = [0.0f64; N];
    for (i, v) in out.iter_mut().enumerate() {
        *v = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
    }
    out
}

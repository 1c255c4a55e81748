//! Test-only reference computations built on nalgebra, independent of the
//! crate's own matrix type and eigensolver.

#![allow(dead_code)]

use lurkit::linalg::{Mat2, Matrix, C64};
use lurkit::quantum::DensityMatrix;
use nalgebra::{DMatrix, Complex};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

pub type NaMat = DMatrix<Complex<f64>>;

pub fn to_na<const N: usize>(m: &Matrix<N>) -> NaMat {
    NaMat::from_fn(N, N, |i, j| m.get(i, j))
}

pub fn pauli(which: char) -> NaMat {
    let (o, l, i) = (Complex::new(0.0, 0.0), Complex::new(1.0, 0.0), Complex::new(0.0, 1.0));
    match which {
        'i' => NaMat::from_row_slice(2, 2, &[l, o, o, l]),
        'x' => NaMat::from_row_slice(2, 2, &[o, l, l, o]),
        'y' => NaMat::from_row_slice(2, 2, &[o, -i, i, o]),
        'z' => NaMat::from_row_slice(2, 2, &[l, o, o, -l]),
        _ => unreachable!(),
    }
}

/// Ascending eigenvalues of a Hermitian matrix via nalgebra.
pub fn eigenvalues(m: &NaMat) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn partial_transpose(m: &NaMat) -> NaMat {
    NaMat::from_fn(4, 4, |r, c| {
        let (i, j, k, l) = (r / 2, r % 2, c / 2, c % 2);
        m[(2 * i + l, 2 * k + j)]
    })
}

pub fn ppt_min(rho: &DensityMatrix) -> f64 {
    eigenvalues(&partial_transpose(&to_na(rho.matrix())))[0]
}

pub fn expect(rho: &NaMat, o: &NaMat) -> f64 {
    (rho * o).trace().re
}

/// (l2, ml2, l3, ml3) from Pauli moments: for ±1-valued A, B,
/// δ²A = 1 − ⟨A⟩², C = ⟨AB⟩ − ⟨A⟩⟨B⟩, δ²(A+B) = 2 + 2⟨AB⟩ − (⟨A⟩ + ⟨B⟩)².
pub fn witnesses(rho: &DensityMatrix) -> (f64, f64, f64, f64) {
    let r = to_na(rho.matrix());
    let id = pauli('i');
    let mut l = [0.0; 3];
    let mut ml = [0.0; 3];
    for (n, w) in ['z', 'x', 'y'].into_iter().enumerate() {
        let s = pauli(w);
        let a = expect(&r, &s.kronecker(&id));
        let b = expect(&r, &id.kronecker(&s));
        let ab = expect(&r, &s.kronecker(&s));
        let cov = ab - a * b;
        l[n] = 2.0 + 2.0 * ab - (a + b) * (a + b);
        ml[n] = (1.0 - a * a) + (1.0 - b * b) - 2.0 * cov.abs();
    }
    (l[0] + l[1], ml[0] + ml[1], l.iter().sum(), ml.iter().sum())
}

pub fn random_hermitian<const N: usize, R: Rng>(rng: &mut R, scale: f64) -> Matrix<N> {
    let mut rows = [[C64::new(0.0, 0.0); N]; N];
    for i in 0..N {
        for j in i..N {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = if i == j { 0.0 } else { StandardNormal.sample(rng) };
            rows[i][j] = C64::new(re, im) * scale;
            rows[j][i] = rows[i][j].conj();
        }
    }
    Matrix::from_rows(rows).unwrap()
}

pub fn random_matrix<const N: usize, R: Rng>(rng: &mut R) -> Matrix<N> {
    let mut rows = [[C64::new(0.0, 0.0); N]; N];
    for row in rows.iter_mut() {
        for z in row.iter_mut() {
            *z = C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng));
        }
    }
    Matrix::from_rows(rows).unwrap()
}

pub fn random_observable<R: Rng>(rng: &mut R) -> Mat2 {
    random_hermitian::<2, R>(rng, 1.0)
}

//! Fixture values checked against nalgebra reference computations.
//!
//! Each test first confirms the frozen value with the reference route in
//! `common`, then checks the crate against it.

mod common;

use lurkit::criteria::{covariance, local_bound, ppt_min_eigenvalue, StandardWitnesses};
use lurkit::linalg::{hermitian_eigenvalues, tensor_product, Mat2, Mat4};
use lurkit::quantum::{
    noise_mixture, special_unitary, BellState, DensityMatrix, NoiseKind, PureState, SpecialUnitary,
};
use lurkit::rng::task_rng;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn eigensolver_matches_reference_on_random_hermitian() {
    let mut rng = task_rng(100, 0);
    for _ in 0..2000 {
        let h: Mat4 = common::random_hermitian(&mut rng, 2.0);
        let ours = hermitian_eigenvalues(&h).unwrap();
        let reference = common::eigenvalues(&common::to_na(&h));
        for (a, b) in ours.iter().zip(&reference) {
            assert!(close(*a, *b, 1e-10), "{ours:?} vs {reference:?}");
        }
        let h2: Mat2 = common::random_hermitian(&mut rng, 1.0);
        let ours = hermitian_eigenvalues(&h2).unwrap();
        let reference = common::eigenvalues(&common::to_na(&h2));
        assert!(close(ours[0], reference[0], 1e-12) && close(ours[1], reference[1], 1e-12));
    }
}

#[test]
fn eigensolver_handles_degenerate_spectra() {
    // U diag(λ) U† with repeated eigenvalues
    let mut rng = task_rng(101, 0);
    for _ in 0..200 {
        let u = lurkit::quantum::haar_random_local_unitary(&mut rng).joint();
        let d = Mat4::from_diagonal([-1.0, 0.5, 0.5, 0.5]);
        let h = &(&u * &d) * &u.adjoint();
        let ev = hermitian_eigenvalues(&h).unwrap();
        for (a, b) in ev.iter().zip([-1.0, 0.5, 0.5, 0.5]) {
            assert!(close(*a, b, 1e-12), "{ev:?}");
        }
    }
}

#[test]
fn singlet_partial_transpose_spectrum() {
    let singlet = DensityMatrix::bell(BellState::PsiMinus);
    let reference = common::eigenvalues(&common::partial_transpose(&common::to_na(singlet.matrix())));
    let frozen = [-0.5, 0.5, 0.5, 0.5];
    for (r, f) in reference.iter().zip(frozen) {
        assert!(close(*r, f, 1e-12));
    }
    let ours = hermitian_eigenvalues(&singlet.matrix().partial_transpose_second()).unwrap();
    for (o, f) in ours.iter().zip(frozen) {
        assert!(close(*o, f, 1e-12));
    }
}

#[test]
fn kronecker_matches_reference() {
    let mut rng = task_rng(102, 0);
    for _ in 0..100 {
        let a: Mat2 = common::random_matrix(&mut rng);
        let b: Mat2 = common::random_matrix(&mut rng);
        let ours = common::to_na(&tensor_product(&a, &b));
        let reference = common::to_na(&a).kronecker(&common::to_na(&b));
        assert!((ours - reference).norm() < 1e-14);
    }
}

#[test]
fn bell_witness_table() {
    // (kind, l2, ml2, l3, ml3, ppt)
    let frozen = [
        (BellState::PsiMinus, 0.0, 0.0, 0.0, 0.0, -0.5),
        (BellState::PsiPlus, 4.0, 0.0, 8.0, 0.0, -0.5),
        (BellState::PhiPlus, 8.0, 0.0, 8.0, 0.0, -0.5),
        (BellState::PhiMinus, 4.0, 0.0, 8.0, 0.0, -0.5),
    ];
    for (kind, l2, ml2, l3, ml3, ppt) in frozen {
        let rho = DensityMatrix::bell(kind);
        let r = common::witnesses(&rho);
        assert!(close(r.0, l2, 1e-12) && close(r.1, ml2, 1e-12), "{kind:?} {r:?}");
        assert!(close(r.2, l3, 1e-12) && close(r.3, ml3, 1e-12), "{kind:?} {r:?}");
        assert!(close(common::ppt_min(&rho), ppt, 1e-12));

        let w = StandardWitnesses::of(&rho).unwrap();
        assert!(close(w.l2, l2, 1e-12) && close(w.ml2, ml2, 1e-12));
        assert!(close(w.l3, l3, 1e-12) && close(w.ml3, ml3, 1e-12));
        assert!(close(w.ppt_min_eig, ppt, 1e-12));
    }
}

#[test]
fn noise_families_on_grid() {
    // Werner: L3 = 6 − 6p, PPT minimum (1 − 3p)/4.
    // Polarized (|HV⟩ noise): L3 = 4 − 4p, PPT minimum −p/2.
    for i in 0..=100 {
        let p = i as f64 / 100.0;
        let werner = noise_mixture(p, NoiseKind::Werner, BellState::PsiMinus).unwrap();
        let polarized = noise_mixture(p, NoiseKind::MaxPolarized, BellState::PsiMinus).unwrap();
        for (rho, l3, ppt) in [
            (werner, 6.0 - 6.0 * p, (1.0 - 3.0 * p) / 4.0),
            (polarized, 4.0 - 4.0 * p, -p / 2.0),
        ] {
            assert!(close(common::witnesses(&rho).2, l3, 1e-12));
            assert!(close(common::ppt_min(&rho), ppt, 1e-12));
            let w = StandardWitnesses::of(&rho).unwrap();
            assert!(close(w.l3, l3, 1e-12), "p={p}");
            assert!(close(ppt_min_eigenvalue(&rho), ppt, 1e-12), "p={p}");
        }
    }
}

#[test]
fn transformed_singlet_values() {
    let singlet = PureState::bell(BellState::PsiMinus);
    let state = |u| DensityMatrix::from_pure(&singlet.apply_local(&special_unitary(u)));

    let u1 = state(SpecialUnitary::U1);
    let r = common::witnesses(&u1);
    assert!(close(r.2, 6.0, 1e-12) && close(r.3, 6.0, 1e-12));

    let u2 = state(SpecialUnitary::U2);
    let r = common::witnesses(&u2);
    assert!(close(r.0, 3.0, 1e-12) && close(r.1, 1.0, 1e-12));
    let na = common::to_na(u2.matrix());
    let zz = common::pauli('z').kronecker(&common::pauli('z'));
    let xx = common::pauli('x').kronecker(&common::pauli('x'));
    assert!(close(2.0 * common::expect(&na, &zz), -2.0, 1e-12));
    assert!(close(2.0 * common::expect(&na, &xx), 1.0, 1e-12));
    assert!(close(2.0 * covariance(&u2, &Mat2::pauli_z(), &Mat2::pauli_z()).unwrap(), -2.0, 1e-12));
    assert!(close(2.0 * covariance(&u2, &Mat2::pauli_x(), &Mat2::pauli_x()).unwrap(), 1.0, 1e-12));

    for u in SpecialUnitary::ALL {
        assert!(close(common::ppt_min(&state(u)), -0.5, 1e-12));
    }
}

#[test]
fn local_bound_against_grid_scan() {
    // δ²σ = 1 − r_σ² on a pure state with Bloch vector r
    let scan = |f: &dyn Fn(f64, f64, f64) -> f64| {
        let mut best = f64::INFINITY;
        let (nt, np) = (400, 800);
        for i in 0..=nt {
            let theta = std::f64::consts::PI * i as f64 / nt as f64;
            for j in 0..np {
                let phi = 2.0 * std::f64::consts::PI * j as f64 / np as f64;
                let (x, y, z) = (theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos());
                best = best.min(f(x, y, z));
            }
        }
        best
    };
    let xz = scan(&|x, _, z| 2.0 - x * x - z * z);
    let xyz = scan(&|x, y, z| 3.0 - x * x - y * y - z * z);
    assert!(close(xz, 1.0, 1e-4) && close(xyz, 2.0, 1e-4));

    let (x, y, z) = (Mat2::pauli_x(), Mat2::pauli_y(), Mat2::pauli_z());
    assert!(close(local_bound(&[x, z]).unwrap(), 1.0, 1e-6));
    assert!(close(local_bound(&[x, y, z]).unwrap(), 2.0, 1e-6));
}

#[test]
fn random_states_match_reference_witnesses() {
    let mut rng = task_rng(103, 0);
    for _ in 0..500 {
        let rho = DensityMatrix::from_pure(&PureState::random(&mut rng));
        let r = common::witnesses(&rho);
        let w = StandardWitnesses::of(&rho).unwrap();
        assert!(close(w.l2, r.0, 1e-10) && close(w.ml2, r.1, 1e-10));
        assert!(close(w.l3, r.2, 1e-10) && close(w.ml3, r.3, 1e-10));
        assert!(close(w.ppt_min_eig, common::ppt_min(&rho), 1e-10));
    }
}

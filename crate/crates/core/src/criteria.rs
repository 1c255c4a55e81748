//! Variances, covariances and the (modified) local uncertainty relations.
//!
//! For paired local observables (Aᵢ, Bᵢ) the LUR value is
//! `Σᵢ δ²(Aᵢ + Bᵢ)` and the MLUR value is `Σᵢ δ²Aᵢ + δ²Bᵢ − 2|C(Aᵢ, Bᵢ)|`.
//! Both are bounded below by `U_A + U_B` on separable states; a value under
//! the bound certifies entanglement. Because `δ²(A + B) = δ²A + δ²B + 2C`,
//! the MLUR value never exceeds the LUR value and both need the same data.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;

use crate::linalg::{hermitian_eigenvalues_unchecked, tensor_product, Mat2, Mat4, C64};
use crate::quantum::{Basis, DensityMatrix};
use crate::{Error, Result};

/// Largest imaginary part tolerated in an expectation value.
pub const IMAG_TOL: f64 = 1e-10;
/// Tolerance for the variance-of-sum decomposition and the two MLUR forms.
pub const IDENTITY_TOL: f64 = 1e-10;
/// A value counts as a violation only below `bound − VERDICT_MARGIN`.
pub const VERDICT_MARGIN: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum PairLabel {
    Basis(Basis),
    Custom(String),
}

impl fmt::Display for PairLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairLabel::Basis(b) => b.fmt(f),
            PairLabel::Custom(s) => f.write_str(s),
        }
    }
}

/// Local observable `a` on party A paired with `b` on party B.
#[derive(Clone, Debug, PartialEq)]
pub struct ObservablePair {
    pub a: Mat2,
    pub b: Mat2,
    pub label: PairLabel,
}

impl ObservablePair {
    /// The same Pauli measurement on both parties.
    pub fn basis(basis: Basis) -> Self {
        Self {
            a: basis.pauli(),
            b: basis.pauli(),
            label: PairLabel::Basis(basis),
        }
    }
}

/// Observable pairs defining one relation, with the local bounds U_A, U_B.
#[derive(Clone, Debug, PartialEq)]
pub struct ObservableSet {
    pairs: Vec<ObservablePair>,
    bound_a: f64,
    bound_b: f64,
}

impl ObservableSet {
    pub fn new(pairs: Vec<ObservablePair>, bound_a: f64, bound_b: f64) -> Result<Self> {
        for pair in &pairs {
            pair.a.check_hermitian()?;
            pair.b.check_hermitian()?;
        }
        for bound in [bound_a, bound_b] {
            if !(bound >= 0.0) {
                return Err(Error::NegativeBound(bound));
            }
        }
        Ok(Self {
            pairs,
            bound_a,
            bound_b,
        })
    }

    /// Identical Pauli measurements on both sides in each listed basis, with
    /// U_A = U_B = `n − 1` (the minimum of a sum of `n ≤ 3` Pauli variances).
    pub fn from_bases(bases: &[Basis]) -> Self {
        let bound = bases.len() as f64 - 1.0;
        Self {
            pairs: bases.iter().copied().map(ObservablePair::basis).collect(),
            bound_a: bound.max(0.0),
            bound_b: bound.max(0.0),
        }
    }

    /// 0/90 and 45/135; separable bound 2.
    pub fn l2() -> Self {
        Self::from_bases(&[Basis::Lin0_90, Basis::Lin45_135])
    }

    /// 0/90, 45/135 and R/L; separable bound 4.
    pub fn l3() -> Self {
        Self::from_bases(&Basis::ALL)
    }

    pub fn pairs(&self) -> &[ObservablePair] {
        &self.pairs
    }

    pub fn bound_a(&self) -> f64 {
        self.bound_a
    }

    pub fn bound_b(&self) -> f64 {
        self.bound_b
    }

    /// U_A + U_B
    pub fn separable_bound(&self) -> f64 {
        self.bound_a + self.bound_b
    }
}

/// Tr(ρ·o) for Hermitian `o`.
pub fn expectation(rho: &DensityMatrix, o: &Mat4) -> Result<f64> {
    let m = rho.matrix();
    let mut value = C64::new(0.0, 0.0);
    for i in 0..4 {
        for k in 0..4 {
            value += m.get(i, k) * o.get(k, i);
        }
    }
    if value.im.abs() >= IMAG_TOL {
        return Err(Error::ComplexExpectation(value.im));
    }
    Ok(value.re)
}

fn on_a(a: &Mat2) -> Mat4 {
    tensor_product(a, &Mat2::identity())
}

fn on_b(b: &Mat2) -> Mat4 {
    tensor_product(&Mat2::identity(), b)
}

fn variance(rho: &DensityMatrix, o: &Mat4) -> Result<f64> {
    let mean = expectation(rho, o)?;
    Ok(expectation(rho, &(o * o))? - mean * mean)
}

/// C(a, b) = ⟨a⊗b⟩ − ⟨a⊗I⟩⟨I⊗b⟩
pub fn covariance(rho: &DensityMatrix, a: &Mat2, b: &Mat2) -> Result<f64> {
    a.check_hermitian()?;
    b.check_hermitian()?;
    let joint = expectation(rho, &tensor_product(a, b))?;
    Ok(joint - expectation(rho, &on_a(a))? * expectation(rho, &on_b(b))?)
}

/// δ²(a⊗I + I⊗b), computed directly from the sum operator.
pub fn variance_of_sum(rho: &DensityMatrix, a: &Mat2, b: &Mat2) -> Result<f64> {
    a.check_hermitian()?;
    b.check_hermitian()?;
    variance(rho, &(on_a(a) + on_b(b)))
}

/// Statistics of one observable pair in one state.
#[derive(Clone, Debug, PartialEq)]
pub struct PairStats {
    pub label: PairLabel,
    pub var_a: f64,
    pub var_b: f64,
    pub var_sum: f64,
    pub covariance: f64,
}

impl PairStats {
    /// δ²A + δ²B − 2|C|
    pub fn modified_term(&self) -> f64 {
        self.var_a + self.var_b - 2.0 * self.covariance.abs()
    }

    /// δ²(A + B) − 4·max(0, C)
    pub fn modified_term_from_sum(&self) -> f64 {
        self.var_sum - 4.0 * self.covariance.max(0.0)
    }
}

pub fn pair_stats(rho: &DensityMatrix, pair: &ObservablePair) -> Result<PairStats> {
    let var_a = variance(rho, &on_a(&pair.a))?;
    let var_b = variance(rho, &on_b(&pair.b))?;
    let covariance = covariance(rho, &pair.a, &pair.b)?;
    let var_sum = variance_of_sum(rho, &pair.a, &pair.b)?;
    if (var_sum - (var_a + var_b + 2.0 * covariance)).abs() > IDENTITY_TOL {
        return Err(Error::InvariantViolation("variance of sum decomposition"));
    }
    Ok(PairStats {
        label: pair.label.clone(),
        var_a,
        var_b,
        var_sum,
        covariance,
    })
}

fn all_stats(rho: &DensityMatrix, set: &ObservableSet) -> Result<Vec<PairStats>> {
    set.pairs().iter().map(|p| pair_stats(rho, p)).collect()
}

fn lur_from(stats: &[PairStats]) -> f64 {
    stats.iter().map(|s| s.var_sum).sum()
}

fn mlur_from(stats: &[PairStats]) -> Result<f64> {
    let value: f64 = stats.iter().map(PairStats::modified_term).sum();
    let alternative: f64 = stats.iter().map(PairStats::modified_term_from_sum).sum();
    if (value - alternative).abs() > IDENTITY_TOL {
        return Err(Error::InvariantViolation("modified relation forms disagree"));
    }
    Ok(value)
}

/// Σᵢ δ²(Aᵢ + Bᵢ)
pub fn lur_value(rho: &DensityMatrix, set: &ObservableSet) -> Result<f64> {
    Ok(lur_from(&all_stats(rho, set)?))
}

/// Σᵢ δ²Aᵢ + δ²Bᵢ − 2|C(Aᵢ, Bᵢ)|, cross-checked against
/// Σᵢ δ²(Aᵢ + Bᵢ) − 4·max(0, C(Aᵢ, Bᵢ)).
pub fn mlur_value(rho: &DensityMatrix, set: &ObservableSet) -> Result<f64> {
    mlur_from(&all_stats(rho, set)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    EntanglementDetected,
    Inconclusive,
}

impl Verdict {
    pub fn from_value(value: f64, bound: f64) -> Self {
        if value < bound - VERDICT_MARGIN {
            Verdict::EntanglementDetected
        } else {
            Verdict::Inconclusive
        }
    }

    pub fn detected(self) -> bool {
        self == Verdict::EntanglementDetected
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::EntanglementDetected => "entanglement_detected",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessReport {
    pub pairs: Vec<PairStats>,
    pub l_value: f64,
    pub ml_value: f64,
    pub separable_bound: f64,
    pub verdict_l: Verdict,
    pub verdict_ml: Verdict,
}

pub fn evaluate(rho: &DensityMatrix, set: &ObservableSet) -> Result<WitnessReport> {
    let pairs = all_stats(rho, set)?;
    let l_value = lur_from(&pairs);
    let ml_value = mlur_from(&pairs)?;
    let separable_bound = set.separable_bound();
    Ok(WitnessReport {
        pairs,
        l_value,
        ml_value,
        separable_bound,
        verdict_l: Verdict::from_value(l_value, separable_bound),
        verdict_ml: Verdict::from_value(ml_value, separable_bound),
    })
}

/// Minimum eigenvalue of the partial transpose. Negative exactly when a
/// two-qubit state is entangled.
pub fn ppt_min_eigenvalue(rho: &DensityMatrix) -> f64 {
    hermitian_eigenvalues_unchecked(&rho.matrix().partial_transpose_second())[0]
}

/// L2, ML2, L3, ML3 and the PPT oracle for one state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StandardWitnesses {
    pub l2: f64,
    pub ml2: f64,
    pub l3: f64,
    pub ml3: f64,
    pub ppt_min_eig: f64,
}

impl StandardWitnesses {
    pub const L2_BOUND: f64 = 2.0;
    pub const L3_BOUND: f64 = 4.0;

    pub fn of(rho: &DensityMatrix) -> Result<Self> {
        let stats = all_stats(rho, &ObservableSet::l3())?;
        Ok(Self {
            l2: lur_from(&stats[..2]),
            ml2: mlur_from(&stats[..2])?,
            l3: lur_from(&stats),
            ml3: mlur_from(&stats)?,
            ppt_min_eig: ppt_min_eigenvalue(rho),
        })
    }

    pub fn verdict_l2(&self) -> Verdict {
        Verdict::from_value(self.l2, Self::L2_BOUND)
    }

    pub fn verdict_ml2(&self) -> Verdict {
        Verdict::from_value(self.ml2, Self::L2_BOUND)
    }

    pub fn verdict_l3(&self) -> Verdict {
        Verdict::from_value(self.l3, Self::L3_BOUND)
    }

    pub fn verdict_ml3(&self) -> Verdict {
        Verdict::from_value(self.ml3, Self::L3_BOUND)
    }
}

/// Polar × azimuth resolution of the coarse Bloch-sphere grid.
pub const BOUND_GRID: (usize, usize) = (64, 128);
const BOUND_CANDIDATES: usize = 8;
const BOUND_STEP_FLOOR: f64 = 1e-10;

fn bloch_vector(theta: f64, phi: f64) -> [C64; 2] {
    let (s, c) = (0.5 * theta).sin_cos();
    [C64::new(c, 0.0), C64::from_polar(s, phi)]
}

fn quadratic_form(o: &Mat2, v: &[C64; 2]) -> f64 {
    let ov = o.apply(v);
    (v[0].conj() * ov[0] + v[1].conj() * ov[1]).re
}

fn variance_sum_at(obs: &[(Mat2, Mat2)], theta: f64, phi: f64) -> f64 {
    let v = bloch_vector(theta, phi);
    obs.iter()
        .map(|(o, o2)| {
            let mean = quadratic_form(o, &v);
            quadratic_form(o2, &v) - mean * mean
        })
        .sum()
}

/// Greatest lower bound of `Σᵢ δ²Oᵢ` over single-qubit states.
///
/// Variance is concave under mixing, so the minimum sits on a pure state.
/// Pure states are scanned on a Bloch-sphere grid and the best few grid
/// points are polished by a shrinking compass search.
pub fn local_bound(observables: &[Mat2]) -> Result<f64> {
    if observables.is_empty() {
        return Err(Error::EmptyObservables);
    }
    for o in observables {
        o.check_hermitian()?;
    }
    let obs: Vec<(Mat2, Mat2)> = observables.iter().map(|o| (*o, o * o)).collect();
    let f = |theta: f64, phi: f64| variance_sum_at(&obs, theta, phi);

    let (n_theta, n_phi) = BOUND_GRID;
    let d_theta = PI / n_theta as f64;
    let d_phi = 2.0 * PI / n_phi as f64;
    let mut grid: Vec<(f64, f64, f64)> = Vec::with_capacity((n_theta + 1) * n_phi);
    for i in 0..=n_theta {
        for j in 0..n_phi {
            let (theta, phi) = (i as f64 * d_theta, j as f64 * d_phi);
            grid.push((f(theta, phi), theta, phi));
        }
    }
    grid.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));

    let mut best = f64::INFINITY;
    for &(start, theta0, phi0) in grid.iter().take(BOUND_CANDIDATES) {
        let (mut theta, mut phi, mut value) = (theta0, phi0, start);
        let (mut step_theta, mut step_phi) = (d_theta, d_phi);
        while step_theta > BOUND_STEP_FLOOR || step_phi > BOUND_STEP_FLOOR {
            let moves = [
                (step_theta, 0.0),
                (-step_theta, 0.0),
                (0.0, step_phi),
                (0.0, -step_phi),
            ];
            let mut improved = false;
            for (dt, dp) in moves {
                let candidate = f(theta + dt, phi + dp);
                if candidate < value {
                    value = candidate;
                    theta += dt;
                    phi += dp;
                    improved = true;
                    break;
                }
            }
            if !improved {
                step_theta *= 0.5;
                step_phi *= 0.5;
            }
        }
        best = best.min(value);
    }
    Ok(best.max(0.0))
}

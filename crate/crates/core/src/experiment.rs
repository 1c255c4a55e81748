//! Simulated coincidence counting and finite-sample estimators.
//!
//! Each basis is measured by the same Pauli on both photons, giving four
//! joint outcomes ordered (+,+), (+,−), (−,+), (−,−). From the outcome
//! frequencies of one basis the estimator forms ⟨A⟩, ⟨B⟩, ⟨AB⟩ and from
//! them both local variances and the covariance, so the modified relation
//! uses exactly the tables the ordinary one does.
//!
//! Variances are plug-in (divide by N) so that
//! `δ²(A + B) = δ²A + δ²B + 2C` holds exactly on every table; the bias is
//! O(1/N). |C| is the modulus of the plug-in covariance, which biases the
//! modified value downward by O(N^-1/2) when the true covariance is near
//! zero. Standard errors come from a first-order delta method on the
//! multinomial covariance of the frequencies and are approximate.

use alloc::vec::Vec;

#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;
use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::criteria::{expectation, Verdict};
use crate::linalg::{tensor_product, Mat2};
use crate::quantum::{Basis, DensityMatrix};
use crate::{Error, Result};

/// Minimum shots per basis for a variance estimate.
pub const MIN_SHOTS: u64 = 2;

/// Sign of the A and B outcomes for each joint-outcome index.
const SIGN_A: [f64; 4] = [1.0, 1.0, -1.0, -1.0];
const SIGN_B: [f64; 4] = [1.0, -1.0, 1.0, -1.0];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OutcomeDistribution {
    pub basis: Basis,
    pub probabilities: [f64; 4],
}

/// Tr[ρ (Π_a ⊗ Π_b)] for the ±1 eigenprojectors of the basis's Pauli.
pub fn outcome_distribution(rho: &DensityMatrix, basis: Basis) -> Result<OutcomeDistribution> {
    let sigma = basis.pauli();
    let plus = (Mat2::identity() + sigma).scale(0.5);
    let minus = (Mat2::identity() - sigma).scale(0.5);
    let projectors = [plus, minus];
    let mut probabilities = [0.0; 4];
    for (a, pa) in projectors.iter().enumerate() {
        for (b, pb) in projectors.iter().enumerate() {
            probabilities[2 * a + b] = expectation(rho, &tensor_product(pa, pb))?.clamp(0.0, 1.0);
        }
    }
    let total: f64 = probabilities.iter().sum();
    for p in probabilities.iter_mut() {
        *p /= total;
    }
    Ok(OutcomeDistribution {
        basis,
        probabilities,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub basis: Basis,
    pub counts: [u64; 4],
}

impl CountTable {
    pub fn shots(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn frequencies(&self) -> [f64; 4] {
        let n = self.shots() as f64;
        self.counts.map(|c| c as f64 / n)
    }
}

/// Multinomial draw of `shots` coincidences, as a chain of binomials.
pub fn sample_counts<R: Rng + ?Sized>(
    dist: &OutcomeDistribution,
    shots: u64,
    rng: &mut R,
) -> Result<CountTable> {
    if shots == 0 {
        return Err(Error::TooFewShots {
            required: 1,
            got: 0,
        });
    }
    let mut counts = [0u64; 4];
    let mut remaining = shots;
    let mut mass = 1.0;
    for (i, &p) in dist.probabilities.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if i == 3 {
            counts[i] = remaining;
            break;
        }
        let q = if mass > 0.0 { (p / mass).clamp(0.0, 1.0) } else { 0.0 };
        let k = Binomial::new(remaining, q)
            .map_err(|_| Error::InvariantViolation("binomial parameters"))?
            .sample(rng);
        counts[i] = k;
        remaining -= k;
        mass -= p;
    }
    Ok(CountTable {
        basis: dist.basis,
        counts,
    })
}

/// Point estimate with its delta-method standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

impl Estimate {
    /// Whether `target` lies within `k` standard errors.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.value - target).abs() <= k * self.std_error
    }
}

/// A statistic of one basis: its value and gradient with respect to the
/// four outcome frequencies.
#[derive(Clone, Copy)]
struct Linearized {
    value: f64,
    grad: [f64; 4],
}

impl Linearized {
    fn combine(a: Self, wa: f64, b: Self, wb: f64) -> Self {
        Self {
            value: wa * a.value + wb * b.value,
            grad: core::array::from_fn(|j| wa * a.grad[j] + wb * b.grad[j]),
        }
    }

    /// Var of the linearised statistic under the multinomial law with
    /// probabilities `freqs`, divided by `shots`.
    fn variance(&self, freqs: &[f64; 4], shots: f64) -> f64 {
        let mean: f64 = freqs.iter().zip(self.grad).map(|(f, g)| f * g).sum();
        let second: f64 = freqs.iter().zip(self.grad).map(|(f, g)| f * g * g).sum();
        ((second - mean * mean) / shots).max(0.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasisEstimate {
    pub basis: Basis,
    pub shots: u64,
    pub mean_a: Estimate,
    pub mean_b: Estimate,
    pub mean_ab: Estimate,
    pub var_a: Estimate,
    pub var_b: Estimate,
    pub var_sum: Estimate,
    pub covariance: Estimate,
    /// δ²A + δ²B − 2|C|
    pub modified_term: Estimate,
    terms: [[f64; 4]; 2],
    freqs: [f64; 4],
}

impl BasisEstimate {
    /// Estimates from outcome frequencies observed over `shots` trials.
    pub fn from_frequencies(basis: Basis, freqs: [f64; 4], shots: u64) -> Self {
        let n = shots as f64;
        let dot = |s: [f64; 4]| freqs.iter().zip(s).map(|(f, s)| f * s).sum::<f64>();
        let sign_ab: [f64; 4] = core::array::from_fn(|j| SIGN_A[j] * SIGN_B[j]);
        let ma = Linearized { value: dot(SIGN_A), grad: SIGN_A };
        let mb = Linearized { value: dot(SIGN_B), grad: SIGN_B };
        let mab = Linearized { value: dot(sign_ab), grad: sign_ab };

        // Outcomes are ±1, so the plug-in variance of A is 1 − ⟨A⟩².
        let var_a = Linearized {
            value: 1.0 - ma.value * ma.value,
            grad: ma.grad.map(|g| -2.0 * ma.value * g),
        };
        let var_b = Linearized {
            value: 1.0 - mb.value * mb.value,
            grad: mb.grad.map(|g| -2.0 * mb.value * g),
        };
        let cov = Linearized {
            value: mab.value - ma.value * mb.value,
            grad: core::array::from_fn(|j| mab.grad[j] - mb.value * ma.grad[j] - ma.value * mb.grad[j]),
        };
        let local = Linearized::combine(var_a, 1.0, var_b, 1.0);
        let var_sum = Linearized::combine(local, 1.0, cov, 2.0);
        let sign = if cov.value > 0.0 {
            1.0
        } else if cov.value < 0.0 {
            -1.0
        } else {
            0.0
        };
        let modified = Linearized::combine(local, 1.0, cov, -2.0 * sign);

        let est = |l: Linearized| Estimate {
            value: l.value,
            std_error: l.variance(&freqs, n).sqrt(),
        };
        Self {
            basis,
            shots,
            mean_a: est(ma),
            mean_b: est(mb),
            mean_ab: est(mab),
            var_a: est(var_a),
            var_b: est(var_b),
            var_sum: est(var_sum),
            covariance: est(cov),
            modified_term: est(modified),
            terms: [var_sum.grad, modified.grad],
            freqs,
        }
    }

    pub fn from_counts(table: &CountTable) -> Result<Self> {
        let shots = table.shots();
        if shots < MIN_SHOTS {
            return Err(Error::TooFewShots {
                required: MIN_SHOTS,
                got: shots,
            });
        }
        Ok(Self::from_frequencies(table.basis, table.frequencies(), shots))
    }

    fn term_variance(&self, which: usize) -> f64 {
        let l = Linearized { value: 0.0, grad: self.terms[which] };
        l.variance(&self.freqs, self.shots as f64)
    }
}

/// L and ML values estimated from per-basis count tables.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimatedReport {
    pub bases: Vec<BasisEstimate>,
    pub l2: Estimate,
    pub ml2: Estimate,
    /// Present when an R/L table was supplied.
    pub l3: Option<Estimate>,
    pub ml3: Option<Estimate>,
}

impl EstimatedReport {
    pub fn verdict_l2(&self) -> Verdict {
        Verdict::from_value(self.l2.value, 2.0)
    }

    pub fn verdict_ml2(&self) -> Verdict {
        Verdict::from_value(self.ml2.value, 2.0)
    }

    pub fn verdict_l3(&self) -> Option<Verdict> {
        self.l3.map(|e| Verdict::from_value(e.value, 4.0))
    }

    pub fn verdict_ml3(&self) -> Option<Verdict> {
        self.ml3.map(|e| Verdict::from_value(e.value, 4.0))
    }
}

fn sum_estimates(bases: &[&BasisEstimate], modified: bool) -> Estimate {
    let (mut value, mut var) = (0.0, 0.0);
    for b in bases {
        // bases are measured independently, so variances add
        value += if modified { b.modified_term.value } else { b.var_sum.value };
        var += b.term_variance(usize::from(modified));
    }
    Estimate {
        value,
        std_error: var.sqrt(),
    }
}

fn assemble(estimates: Vec<BasisEstimate>) -> Result<EstimatedReport> {
    let mut by_basis: [Option<&BasisEstimate>; 3] = [None; 3];
    for e in &estimates {
        let slot = &mut by_basis[e.basis as usize];
        if slot.is_some() {
            return Err(Error::DuplicateBasis(e.basis));
        }
        *slot = Some(e);
    }
    let z = by_basis[Basis::Lin0_90 as usize].ok_or(Error::MissingBasis(Basis::Lin0_90))?;
    let x = by_basis[Basis::Lin45_135 as usize].ok_or(Error::MissingBasis(Basis::Lin45_135))?;
    let pair = [z, x];
    let (l3, ml3) = match by_basis[Basis::CircRL as usize] {
        Some(y) => {
            let all = [z, x, y];
            (Some(sum_estimates(&all, false)), Some(sum_estimates(&all, true)))
        }
        None => (None, None),
    };
    Ok(EstimatedReport {
        l2: sum_estimates(&pair, false),
        ml2: sum_estimates(&pair, true),
        l3,
        ml3,
        bases: estimates,
    })
}

/// Estimates L2/ML2 (and L3/ML3 when an R/L table is present) from one
/// count table per basis. The 0/90 and 45/135 tables are required.
pub fn estimate_witnesses(tables: &[CountTable]) -> Result<EstimatedReport> {
    let estimates = tables
        .iter()
        .map(BasisEstimate::from_counts)
        .collect::<Result<Vec<_>>>()?;
    assemble(estimates)
}

/// Same estimator fed exact outcome probabilities in place of observed
/// frequencies; standard errors are those expected at `shots` per basis.
pub fn estimate_from_distributions(
    dists: &[OutcomeDistribution],
    shots: u64,
) -> Result<EstimatedReport> {
    if shots < MIN_SHOTS {
        return Err(Error::TooFewShots {
            required: MIN_SHOTS,
            got: shots,
        });
    }
    assemble(
        dists
            .iter()
            .map(|d| BasisEstimate::from_frequencies(d.basis, d.probabilities, shots))
            .collect(),
    )
}

/// Samples `shots` coincidences in every basis, one derived stream each.
pub fn simulate_tables(
    rho: &DensityMatrix,
    shots: u64,
    master_seed: u64,
) -> Result<Vec<CountTable>> {
    Basis::ALL
        .iter()
        .enumerate()
        .map(|(i, &basis)| {
            let dist = outcome_distribution(rho, basis)?;
            sample_counts(&dist, shots, &mut crate::rng::task_rng(master_seed, i as u64))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::StandardWitnesses;
    use crate::quantum::{noise_mixture, BellState, NoiseKind, PureState};
    use crate::rng::task_rng;
    use crate::linalg::C64;

    fn close(a: [f64; 4], b: [f64; 4]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn distribution_fixtures() {
        let singlet = DensityMatrix::bell(BellState::PsiMinus);
        let d = outcome_distribution(&singlet, Basis::Lin0_90).unwrap();
        assert!(close(d.probabilities, [0.0, 0.5, 0.5, 0.0]));
        for basis in Basis::ALL {
            let d = outcome_distribution(&DensityMatrix::maximally_mixed(), basis).unwrap();
            assert!(close(d.probabilities, [0.25; 4]));
        }
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let hh = DensityMatrix::from_pure(&PureState::product([one, zero], [one, zero]).unwrap());
        let d = outcome_distribution(&hh, Basis::Lin0_90).unwrap();
        assert!(close(d.probabilities, [1.0, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn degenerate_sampling() {
        let mut rng = task_rng(1, 0);
        let certain = OutcomeDistribution {
            basis: Basis::Lin0_90,
            probabilities: [1.0, 0.0, 0.0, 0.0],
        };
        assert_eq!(sample_counts(&certain, 77, &mut rng).unwrap().counts, [77, 0, 0, 0]);
        let split = OutcomeDistribution {
            basis: Basis::Lin0_90,
            probabilities: [0.0, 0.5, 0.5, 0.0],
        };
        let t = sample_counts(&split, 1_000_000, &mut rng).unwrap();
        assert_eq!(t.counts[0], 0);
        assert_eq!(t.counts[3], 0);
        assert_eq!(t.shots(), 1_000_000);
        assert!(sample_counts(&split, 0, &mut rng).is_err());
    }

    #[test]
    fn frequencies_converge() {
        let mut rng = task_rng(2, 0);
        let dist = OutcomeDistribution {
            basis: Basis::CircRL,
            probabilities: [0.1, 0.2, 0.3, 0.4],
        };
        let n = 100_000u64;
        let t = sample_counts(&dist, n, &mut rng).unwrap();
        for (c, p) in t.counts.iter().zip(dist.probabilities) {
            let se = (p * (1.0 - p) / n as f64).sqrt();
            assert!((*c as f64 / n as f64 - p).abs() < 5.0 * se);
        }
    }

    #[test]
    fn exact_distributions_reproduce_trace_values() {
        let states = [
            DensityMatrix::bell(BellState::PsiMinus),
            DensityMatrix::bell(BellState::PhiPlus),
            noise_mixture(0.5, NoiseKind::Werner, BellState::PsiMinus).unwrap(),
            noise_mixture(0.3, NoiseKind::MaxPolarized, BellState::PsiPlus).unwrap(),
            DensityMatrix::from_pure(&PureState::random(&mut task_rng(4, 0))),
        ];
        for rho in states {
            let dists: Vec<_> = Basis::ALL
                .iter()
                .map(|&b| outcome_distribution(&rho, b).unwrap())
                .collect();
            let est = estimate_from_distributions(&dists, 1000).unwrap();
            let exact = StandardWitnesses::of(&rho).unwrap();
            assert!((est.l2.value - exact.l2).abs() < 1e-10);
            assert!((est.ml2.value - exact.ml2).abs() < 1e-10);
            assert!((est.l3.unwrap().value - exact.l3).abs() < 1e-10);
            assert!((est.ml3.unwrap().value - exact.ml3).abs() < 1e-10);
        }
    }

    #[test]
    fn plug_in_identity_and_dominance_are_exact() {
        let rho = DensityMatrix::from_pure(&PureState::random(&mut task_rng(8, 0)));
        for seed in 0..50 {
            let tables = simulate_tables(&rho, 50, seed).unwrap();
            let est = estimate_witnesses(&tables).unwrap();
            for b in &est.bases {
                assert_eq!(
                    b.var_sum.value,
                    b.var_a.value + b.var_b.value + 2.0 * b.covariance.value
                );
            }
            assert!(est.ml2.value <= est.l2.value);
            assert!(est.ml3.unwrap().value <= est.l3.unwrap().value);
        }
    }

    #[test]
    fn missing_or_short_tables() {
        let table = |basis, counts| CountTable { basis, counts };
        let only_z = [table(Basis::Lin0_90, [1, 2, 3, 4])];
        assert_eq!(
            estimate_witnesses(&only_z),
            Err(Error::MissingBasis(Basis::Lin45_135))
        );
        let dup = [table(Basis::Lin0_90, [1, 2, 3, 4]), table(Basis::Lin0_90, [1, 2, 3, 4])];
        assert_eq!(estimate_witnesses(&dup), Err(Error::DuplicateBasis(Basis::Lin0_90)));
        let short = [table(Basis::Lin0_90, [1, 0, 0, 0]), table(Basis::Lin45_135, [1, 2, 3, 4])];
        assert_eq!(
            estimate_witnesses(&short),
            Err(Error::TooFewShots { required: 2, got: 1 })
        );
        let pair = [table(Basis::Lin0_90, [1, 2, 3, 4]), table(Basis::Lin45_135, [4, 3, 2, 1])];
        let est = estimate_witnesses(&pair).unwrap();
        assert!(est.l3.is_none() && est.ml3.is_none());
    }

    #[test]
    fn werner_half_estimate() {
        let rho = noise_mixture(0.5, NoiseKind::Werner, BellState::PsiMinus).unwrap();
        let est = estimate_witnesses(&simulate_tables(&rho, 100_000, 21).unwrap()).unwrap();
        let l3 = est.l3.unwrap();
        assert!(l3.std_error > 0.0);
        assert!(l3.within(3.0, 5.0), "{l3:?}");
    }
}

//! Two-qubit states and local unitaries.

use alloc::string::{String, ToString};
use core::f64::consts::{FRAC_1_SQRT_2, PI};
use core::fmt;
use core::str::FromStr;

#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::linalg::{hermitian_eigenvalues_unchecked, tensor_product, Mat2, Mat4, C64};
use crate::{Error, Result};

/// Normalization tolerance for pure states.
pub const NORM_TOL: f64 = 1e-12;
/// Trace tolerance for density matrices.
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue a density matrix may carry.
pub const EIGEN_FLOOR: f64 = -1e-9;
/// Tolerance on U†U = I.
pub const UNITARY_TOL: f64 = 1e-10;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Polarization measurement basis, each tied to one Pauli operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// Horizontal/vertical, σz.
    Lin0_90,
    /// Diagonal/antidiagonal, σx.
    Lin45_135,
    /// Right/left circular, σy.
    CircRL,
}

impl Basis {
    pub const ALL: [Basis; 3] = [Basis::Lin0_90, Basis::Lin45_135, Basis::CircRL];

    pub fn pauli(self) -> Mat2 {
        match self {
            Basis::Lin0_90 => Mat2::pauli_z(),
            Basis::Lin45_135 => Mat2::pauli_x(),
            Basis::CircRL => Mat2::pauli_y(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Basis::Lin0_90 => "0/90",
            Basis::Lin45_135 => "45/135",
            Basis::CircRL => "R/L",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BellState {
    /// (|HV⟩ + |VH⟩)/√2
    PsiPlus,
    /// (|HV⟩ − |VH⟩)/√2, the singlet.
    PsiMinus,
    /// (|HH⟩ + |VV⟩)/√2
    PhiPlus,
    /// (|HH⟩ − |VV⟩)/√2
    PhiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [
        BellState::PsiPlus,
        BellState::PsiMinus,
        BellState::PhiPlus,
        BellState::PhiMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BellState::PsiPlus => "psi+",
            BellState::PsiMinus => "singlet",
            BellState::PhiPlus => "phi+",
            BellState::PhiMinus => "phi-",
        }
    }
}

impl FromStr for BellState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "singlet" | "psi-" => Ok(BellState::PsiMinus),
            "psi+" => Ok(BellState::PsiPlus),
            "phi+" => Ok(BellState::PhiPlus),
            "phi-" => Ok(BellState::PhiMinus),
            other => Err(Error::InvalidStateSpec(other.to_string())),
        }
    }
}

/// Normalized two-qubit state vector in the |HH⟩, |HV⟩, |VH⟩, |VV⟩ basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureState {
    amplitudes: [C64; 4],
}

impl PureState {
    pub fn new(amplitudes: [C64; 4]) -> Result<Self> {
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { amplitudes })
    }

    pub fn bell(kind: BellState) -> Self {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let amplitudes = match kind {
            BellState::PsiPlus => [ZERO, h, h, ZERO],
            BellState::PsiMinus => [ZERO, h, -h, ZERO],
            BellState::PhiPlus => [h, ZERO, ZERO, h],
            BellState::PhiMinus => [h, ZERO, ZERO, -h],
        };
        Self { amplitudes }
    }

    /// |a⟩ ⊗ |b⟩ for normalized single-qubit vectors.
    pub fn product(a: [C64; 2], b: [C64; 2]) -> Result<Self> {
        Self::new([a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]])
    }

    /// Haar-random pure state: normalized vector of eight standard normals.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let mut amplitudes = [ZERO; 4];
            for z in amplitudes.iter_mut() {
                *z = C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng));
            }
            let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-8 {
                for z in amplitudes.iter_mut() {
                    *z /= norm;
                }
                return Self { amplitudes };
            }
        }
    }

    pub fn amplitudes(&self) -> &[C64; 4] {
        &self.amplitudes
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &PureState) -> C64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |⟨self|other⟩|², insensitive to global phase.
    pub fn fidelity(&self, other: &PureState) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn apply_local(&self, u: &LocalUnitaryPair) -> PureState {
        let mut amplitudes = u.joint().apply(&self.amplitudes);
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in amplitudes.iter_mut() {
            *z /= norm;
        }
        PureState { amplitudes }
    }
}

/// Hermitian, unit-trace, positive-semidefinite 4×4 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: Mat4,
}

impl DensityMatrix {
    /// Validates `matrix`: Hermitian within 1e-10, trace 1 within 1e-10 and
    /// no eigenvalue below -1e-9.
    pub fn new(matrix: Mat4) -> Result<Self> {
        matrix.check_hermitian()?;
        let trace = matrix.trace();
        if (trace - C64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::TraceNotUnit(trace.re));
        }
        let lowest = hermitian_eigenvalues_unchecked(&matrix)[0];
        if lowest < EIGEN_FLOOR {
            return Err(Error::NegativeEigenvalue(lowest));
        }
        Ok(Self { matrix })
    }

    /// Validation for matrices built internally; failure means a numerical bug.
    pub(crate) fn from_trusted(matrix: Mat4) -> Result<Self> {
        Self::new(matrix).map_err(|_| Error::InvariantViolation("density matrix construction"))
    }

    /// |ψ⟩⟨ψ|
    pub fn from_pure(psi: &PureState) -> Self {
        Self {
            matrix: Mat4::outer(psi.amplitudes(), psi.amplitudes()),
        }
    }

    pub fn bell(kind: BellState) -> Self {
        Self::from_pure(&PureState::bell(kind))
    }

    /// I/4
    pub fn maximally_mixed() -> Self {
        Self {
            matrix: Mat4::identity().scale(0.25),
        }
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.matrix
    }

    /// Convex combination `w·self + (1 − w)·other`.
    pub fn mix(&self, w: f64, other: &DensityMatrix) -> Result<Self> {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::ProbabilityOutOfRange(w));
        }
        Ok(Self {
            matrix: self.matrix.scale(w) + other.matrix.scale(1.0 - w),
        })
    }
}

/// Noise component of a Bell-state mixture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NoiseKind {
    /// White noise, I/4.
    Werner,
    /// The fully polarized product state |HV⟩⟨HV|.
    ///
    /// Inferred rather than quoted: it is the product-state noise for which
    /// the L3 relation is violated for every p > 0 (L3 = 4 − 4p), whereas
    /// the correlated alternative (|HH⟩⟨HH| + |VV⟩⟨VV|)/2 gives L3 = 8 − 8p.
    MaxPolarized,
}

impl NoiseKind {
    pub fn name(self) -> &'static str {
        match self {
            NoiseKind::Werner => "werner",
            NoiseKind::MaxPolarized => "polarized",
        }
    }

    pub fn density(self) -> DensityMatrix {
        match self {
            NoiseKind::Werner => DensityMatrix::maximally_mixed(),
            NoiseKind::MaxPolarized => {
                let mut hv = [ZERO; 4];
                hv[1] = C64::new(1.0, 0.0);
                DensityMatrix {
                    matrix: Mat4::outer(&hv, &hv),
                }
            }
        }
    }
}

impl FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "werner" => Ok(NoiseKind::Werner),
            "polarized" => Ok(NoiseKind::MaxPolarized),
            other => Err(Error::InvalidStateSpec(other.to_string())),
        }
    }
}

/// `p·|Bell⟩⟨Bell| + (1 − p)·χ` with χ set by `noise`.
pub fn noise_mixture(p: f64, noise: NoiseKind, base: BellState) -> Result<DensityMatrix> {
    DensityMatrix::bell(base).mix(p, &noise.density())
}

/// `U_A ⊗ U_B`, each factor unitary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalUnitaryPair {
    u_a: Mat2,
    u_b: Mat2,
}

fn unitarity_defect(u: &Mat2) -> f64 {
    (u.adjoint() * *u).max_abs_diff(&Mat2::identity())
}

impl LocalUnitaryPair {
    pub fn new(u_a: Mat2, u_b: Mat2) -> Result<Self> {
        let deviation = unitarity_defect(&u_a).max(unitarity_defect(&u_b));
        if deviation > UNITARY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { u_a, u_b })
    }

    pub fn identity() -> Self {
        Self {
            u_a: Mat2::identity(),
            u_b: Mat2::identity(),
        }
    }

    pub fn u_a(&self) -> &Mat2 {
        &self.u_a
    }

    pub fn u_b(&self) -> &Mat2 {
        &self.u_b
    }

    pub fn joint(&self) -> Mat4 {
        tensor_product(&self.u_a, &self.u_b)
    }
}

/// The three fixed local unitaries acting on party A (party B untouched).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpecialUnitary {
    /// ½[[1+i, −1+i], [1+i, 1−i]]: removes every covariance of the singlet.
    U1,
    /// ½ diag(1 − i√3, 1 + i√3).
    U2,
    /// diag(1, −1): maps ψ⁻ to ψ⁺.
    U3,
}

impl SpecialUnitary {
    pub const ALL: [SpecialUnitary; 3] =
        [SpecialUnitary::U1, SpecialUnitary::U2, SpecialUnitary::U3];

    pub fn name(self) -> &'static str {
        match self {
            SpecialUnitary::U1 => "u1",
            SpecialUnitary::U2 => "u2",
            SpecialUnitary::U3 => "u3",
        }
    }
}

pub fn special_unitary(which: SpecialUnitary) -> LocalUnitaryPair {
    let c = C64::new;
    let u_a = match which {
        SpecialUnitary::U1 => Mat2::from_rows_unchecked([
            [c(0.5, 0.5), c(-0.5, 0.5)],
            [c(0.5, 0.5), c(0.5, -0.5)],
        ]),
        SpecialUnitary::U2 => {
            let h = 0.5 * 3.0f64.sqrt();
            Mat2::from_rows_unchecked([[c(0.5, -h), ZERO], [ZERO, c(0.5, h)]])
        }
        SpecialUnitary::U3 => Mat2::pauli_z(),
    };
    LocalUnitaryPair {
        u_a,
        u_b: Mat2::identity(),
    }
}

/// (U_A ⊗ U_B) ρ (U_A ⊗ U_B)†
pub fn apply_local_unitary(u: &LocalUnitaryPair, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let joint = u.joint();
    DensityMatrix::from_trusted(&(&joint * rho.matrix()) * &joint.adjoint())
}

/// Haar-random element of SU(2) from a uniformly random unit quaternion
/// (a, b, c, d) ↦ [[a + ib, c + id], [−c + id, a − ib]].
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    loop {
        let q: [f64; 4] = core::array::from_fn(|_| StandardNormal.sample(rng));
        let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            let [a, b, c, d] = q.map(|x| x / norm);
            return Mat2::from_rows_unchecked([
                [C64::new(a, b), C64::new(c, d)],
                [C64::new(-c, d), C64::new(a, -b)],
            ]);
        }
    }
}

pub fn haar_random_local_unitary<R: Rng + ?Sized>(rng: &mut R) -> LocalUnitaryPair {
    let u_a = haar_su2(rng);
    let u_b = haar_su2(rng);
    LocalUnitaryPair { u_a, u_b }
}

/// Uniform point on the Bloch sphere (uniform azimuth, uniform cos of the
/// polar angle) as a qubit state vector.
pub fn random_bloch_qubit<R: Rng + ?Sized>(rng: &mut R) -> [C64; 2] {
    let cos_theta: f64 = 2.0 * rng.random::<f64>() - 1.0;
    let phi: f64 = 2.0 * PI * rng.random::<f64>();
    let up = ((1.0 + cos_theta) * 0.5).max(0.0).sqrt();
    let down = ((1.0 - cos_theta) * 0.5).max(0.0).sqrt();
    [C64::new(up, 0.0), C64::from_polar(down, phi)]
}

/// Random separable state: `k` pure product states with weights uniform on
/// the simplex (normalized exponential draws).
pub fn random_separable_state<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Result<DensityMatrix> {
    if k == 0 {
        return Err(Error::NoMixtureTerms);
    }
    let mut total = 0.0;
    let mut acc = Mat4::zeros();
    for _ in 0..k {
        let w: f64 = Exp1.sample(rng);
        let a = random_bloch_qubit(rng);
        let b = random_bloch_qubit(rng);
        let amps = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]];
        acc = acc + Mat4::outer(&amps, &amps).scale(w);
        total += w;
    }
    DensityMatrix::from_trusted(acc.scale(1.0 / total))
}

/// Textual state description accepted by the command-line tools.
///
/// `singlet`, `psi-`, `psi+`, `phi+`, `phi-`, `werner:p=<x>`,
/// `polarized:p=<x>`, `u1-singlet`, `u2-singlet`, `u3-singlet`,
/// `file:<path>`.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    Bell(BellState),
    Noisy { noise: NoiseKind, p: f64 },
    Transformed(SpecialUnitary),
    /// JSON density matrix on disk; loading it is left to the caller.
    File(String),
}

impl StateSpec {
    /// Builds the state. `File` specs cannot be resolved without IO and
    /// return [`Error::InvalidStateSpec`].
    pub fn density(&self) -> Result<DensityMatrix> {
        match self {
            StateSpec::Bell(kind) => Ok(DensityMatrix::bell(*kind)),
            StateSpec::Noisy { noise, p } => noise_mixture(*p, *noise, BellState::PsiMinus),
            StateSpec::Transformed(u) => Ok(DensityMatrix::from_pure(
                &PureState::bell(BellState::PsiMinus).apply_local(&special_unitary(*u)),
            )),
            StateSpec::File(path) => Err(Error::InvalidStateSpec(alloc::format!("file:{path}"))),
        }
    }

    /// The Bell state named by this spec, if it is one.
    pub fn bell(&self) -> Option<BellState> {
        match self {
            StateSpec::Bell(kind) => Some(*kind),
            _ => None,
        }
    }
}

impl FromStr for StateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let invalid = || Error::InvalidStateSpec(s.to_string());
        if let Some(path) = s.strip_prefix("file:") {
            if path.is_empty() {
                return Err(invalid());
            }
            return Ok(StateSpec::File(path.to_string()));
        }
        if let Some((family, param)) = s.split_once(':') {
            let noise: NoiseKind = family.parse().map_err(|_| invalid())?;
            let p: f64 = param
                .strip_prefix("p=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(invalid)?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::ProbabilityOutOfRange(p));
            }
            return Ok(StateSpec::Noisy { noise, p });
        }
        match s {
            "u1-singlet" => Ok(StateSpec::Transformed(SpecialUnitary::U1)),
            "u2-singlet" => Ok(StateSpec::Transformed(SpecialUnitary::U2)),
            "u3-singlet" => Ok(StateSpec::Transformed(SpecialUnitary::U3)),
            _ => s.parse().map(StateSpec::Bell).map_err(|_| invalid()),
        }
    }
}

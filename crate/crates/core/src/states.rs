//! The states of the protocol: Schmidt-form pairs, Bell states and the
//! four-qubit composite.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{kron_vec, C64};
use crate::measures::DensityMatrix;

const NORM_TOL: f64 = 1e-12;

/// A Schmidt weight `w ∈ [0, 1]`, the `p` or `q` of `√w|00⟩ + √(1-w)|11⟩`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct SchmidtParam(f64);

impl SchmidtParam {
    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::Domain(format!(
                "Schmidt weight {value} is outside [0, 1]"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `1 - w`
    pub fn complement(self) -> Self {
        Self(1.0 - self.0)
    }
}

impl TryFrom<f64> for SchmidtParam {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

/// Normalized state vector over a list of subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
    dims: Vec<usize>,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>, dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Dimension(format!("bad subsystem dims {dims:?}")));
        }
        if dims.iter().product::<usize>() != amplitudes.len() {
            return Err(Error::Dimension(format!(
                "dims {dims:?} do not multiply to {} amplitudes",
                amplitudes.len()
            )));
        }
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("norm {norm} is not 1")));
        }
        Ok(Self { amplitudes, dims })
    }

    /// Normalizes `amplitudes` first; fails on the zero vector.
    pub fn normalized(amplitudes: Vec<C64>, dims: Vec<usize>) -> Result<Self> {
        let n = norm(&amplitudes);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        let inv = C64::new(1.0 / n, 0.0);
        Self::new(amplitudes.into_iter().map(|z| z * inv).collect(), dims)
    }

    /// Computational basis state `|i⟩`.
    pub fn basis(index: usize, dims: Vec<usize>) -> Result<Self> {
        let n: usize = dims.iter().product();
        if index >= n {
            return Err(Error::Dimension(format!(
                "basis index {index} out of range for dimension {n}"
            )));
        }
        let mut amps = vec![C64::new(0.0, 0.0); n];
        amps[index] = C64::new(1.0, 0.0);
        Self::new(amps, dims)
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self {
            amplitudes: kron_vec(&self.amplitudes, &other.amplitudes),
            dims,
        }
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> C64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|²`, the fidelity maximized over a relative global phase.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_normalized_vector(&self.amplitudes, self.dims.clone())
    }

    /// Reduced density matrix on the subsystems in `keep`.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        self.density().partial_trace(keep)
    }
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `√w|00⟩ + √(1-w)|11⟩`
pub fn schmidt_pair(w: SchmidtParam) -> PureState {
    let zero = C64::new(0.0, 0.0);
    PureState {
        amplitudes: vec![
            C64::new(w.0.sqrt(), 0.0),
            zero,
            zero,
            C64::new((1.0 - w.0).sqrt(), 0.0),
        ],
        dims: vec![2, 2],
    }
}

/// The four Bell states, in the order used for outcome indexing and
/// categorical sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellLabel {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [Self::PhiPlus, Self::PhiMinus, Self::PsiPlus, Self::PsiMinus];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::PhiPlus => "phi+",
            Self::PhiMinus => "phi-",
            Self::PsiPlus => "psi+",
            Self::PsiMinus => "psi-",
        }
    }

    /// Whether this is `Φ±` (the `|00⟩, |11⟩` family).
    pub fn is_phi(self) -> bool {
        matches!(self, Self::PhiPlus | Self::PhiMinus)
    }

    /// Relative sign between the two terms.
    pub fn sign(self) -> f64 {
        match self {
            Self::PhiPlus | Self::PsiPlus => 1.0,
            Self::PhiMinus | Self::PsiMinus => -1.0,
        }
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BellLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "phi+" | "Φ+" => Ok(Self::PhiPlus),
            "phi-" | "Φ-" | "Φ−" => Ok(Self::PhiMinus),
            "psi+" | "Ψ+" => Ok(Self::PsiPlus),
            "psi-" | "Ψ-" | "Ψ−" => Ok(Self::PsiMinus),
            _ => Err(Error::Domain(format!("unknown Bell label {s:?}"))),
        }
    }
}

impl Serialize for BellLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

pub fn bell_state(label: BellLabel) -> PureState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let zero = C64::new(0.0, 0.0);
    let a = C64::new(h, 0.0);
    let b = C64::new(h * label.sign(), 0.0);
    let amplitudes = if label.is_phi() {
        vec![a, zero, zero, b]
    } else {
        vec![zero, a, b, zero]
    };
    PureState {
        amplitudes,
        dims: vec![2, 2],
    }
}

/// `|ξ(p)⟩_AC ⊗ |η(q)⟩_C'B` over the wire order `(A, C, C', B)`.
pub fn composite_state(p: SchmidtParam, q: SchmidtParam) -> PureState {
    schmidt_pair(p).tensor(&schmidt_pair(q))
}

/// Haar-random pure state: a complex Gaussian vector, normalized.
pub fn random_pure_state<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> PureState {
    let n: usize = dims.iter().product();
    loop {
        let amps: Vec<C64> = (0..n)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        if let Ok(s) = PureState::normalized(amps, dims.to_vec()) {
            return s;
        }
    }
}

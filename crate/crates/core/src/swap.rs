//! Bell-basis measurement on `C C'` of `|ξ(p)⟩_AC |η(q)⟩_C'B`.
//!
//! Expanding the composite in the Bell basis of `C C'` gives four branches:
//!
//! ```text
//! √2 |ξ⟩|η⟩ = |Φ±⟩ (√(pq) |00⟩ ± √((1-p)(1-q)) |11⟩)
//!           + |Ψ±⟩ (√(p(1-q)) |01⟩ ± √((1-p)q) |10⟩)
//! ```
//!
//! so outcome `Φ±` occurs with probability `N_φ²/2`, `N_φ² = pq + (1-p)(1-q)`,
//! and `Ψ±` with `N_ψ²/2`, `N_ψ² = p(1-q) + (1-p)q`. The AB post-measurement
//! state is the bracket divided by `N_φ` or `N_ψ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::measures::{self, DensityMatrix, MeasureReport};
use crate::states::{BellLabel, PureState, SchmidtParam};

/// Step of the central differences in [`stationarity_check`].
pub const FD_STEP: f64 = 1e-5;

/// The two families of outcomes: `Φ±` and `Ψ±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Phi,
    Psi,
}

impl Branch {
    pub fn of(label: BellLabel) -> Self {
        if label.is_phi() {
            Self::Phi
        } else {
            Self::Psi
        }
    }

    fn name(self) -> &'static str {
        match self {
            Self::Phi => "phi",
            Self::Psi => "psi",
        }
    }
}

/// Conditional AB state of one outcome. A zero-probability outcome has no
/// post-measurement state.
#[derive(Debug, Clone, PartialEq)]
pub enum PostState {
    Defined(PureState),
    Undefined,
}

impl PostState {
    pub fn state(&self) -> Option<&PureState> {
        match self {
            Self::Defined(s) => Some(s),
            Self::Undefined => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, Self::Defined(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BbmOutcome {
    pub label: BellLabel,
    pub probability: f64,
    pub post_state: PostState,
}

impl BbmOutcome {
    /// Reduced state of qubit A in the post-measurement state.
    pub fn reduced_a(&self) -> Option<DensityMatrix> {
        self.post_state
            .state()
            .map(|s| s.reduced(&[0]).expect("AB post-state has two subsystems"))
    }

    pub fn report_a(&self) -> Option<MeasureReport> {
        self.reduced_a().as_ref().map(measures::report)
    }
}

/// Unnormalized branch weights: `(pq, (1-p)(1-q))` for `Φ`, `(p(1-q), (1-p)q)` for `Ψ`.
///
/// The two weights are the squared amplitudes of `|00⟩, |11⟩` (`Φ`) or
/// `|01⟩, |10⟩` (`Ψ`) before normalization.
fn branch_weights(p: f64, q: f64, branch: Branch) -> (f64, f64) {
    match branch {
        Branch::Phi => (p * q, (1.0 - p) * (1.0 - q)),
        Branch::Psi => (p * (1.0 - q), (1.0 - p) * q),
    }
}

/// `N²` of a branch: `N_φ²` or `N_ψ²`.
pub fn branch_norm_sq(p: SchmidtParam, q: SchmidtParam, branch: Branch) -> f64 {
    let (x, y) = branch_weights(p.value(), q.value(), branch);
    x + y
}

/// Probability of a single outcome, `N²/2` of its branch.
pub fn outcome_probability(p: SchmidtParam, q: SchmidtParam, label: BellLabel) -> f64 {
    0.5 * branch_norm_sq(p, q, Branch::of(label))
}

/// The four outcomes in [`BellLabel::ALL`] order.
pub fn bbm_outcomes(p: SchmidtParam, q: SchmidtParam) -> [BbmOutcome; 4] {
    BellLabel::ALL.map(|label| {
        let branch = Branch::of(label);
        let (x, y) = branch_weights(p.value(), q.value(), branch);
        let n2 = x + y;
        let post_state = if n2 > 0.0 {
            let n = n2.sqrt();
            let first = C64::new(x.sqrt() / n, 0.0);
            let second = C64::new(label.sign() * y.sqrt() / n, 0.0);
            let zero = C64::new(0.0, 0.0);
            let amps = match branch {
                Branch::Phi => vec![first, zero, zero, second],
                Branch::Psi => vec![zero, first, second, zero],
            };
            PostState::Defined(
                PureState::normalized(amps, vec![2, 2]).expect("branch amplitudes are nonzero"),
            )
        } else {
            PostState::Undefined
        };
        BbmOutcome {
            label,
            probability: 0.5 * n2,
            post_state,
        }
    })
}

/// Eigenvalues of the reduced A-state in one branch.
///
/// `(a, b) = (pq, (1-p)(1-q)) / N_φ²` for `Φ` and `(c, d) = ((1-p)q, p(1-q)) / N_ψ²`
/// for `Ψ`. Each pair sums to one.
pub fn branch_spectrum(p: SchmidtParam, q: SchmidtParam, branch: Branch) -> Result<(f64, f64)> {
    let (x, y) = branch_weights(p.value(), q.value(), branch);
    let n2 = x + y;
    if n2 <= 0.0 {
        return Err(Error::UndefinedBranch(branch.name()));
    }
    Ok(match branch {
        Branch::Phi => (x / n2, y / n2),
        Branch::Psi => (y / n2, x / n2),
    })
}

/// Reduced-state eigenvalues of both branches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SwapSpectrum {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

pub fn swap_spectrum(p: SchmidtParam, q: SchmidtParam) -> Result<SwapSpectrum> {
    let (a, b) = branch_spectrum(p, q, Branch::Phi)?;
    let (c, d) = branch_spectrum(p, q, Branch::Psi)?;
    Ok(SwapSpectrum { a, b, c, d })
}

/// `S_vn` of the reduced A-state of one branch.
pub fn branch_entropy(p: SchmidtParam, q: SchmidtParam, branch: Branch) -> Result<f64> {
    let (x, _) = branch_spectrum(p, q, branch)?;
    Ok(measures::binary_entropy(x))
}

/// `(S_vn(ρ^φ_A), S_vn(ρ^ψ_A))`.
pub fn post_entropies(p: SchmidtParam, q: SchmidtParam) -> Result<(f64, f64)> {
    let s = swap_spectrum(p, q)?;
    Ok((measures::binary_entropy(s.a), measures::binary_entropy(s.c)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StationarityCheck {
    pub p_star: f64,
    /// Central first difference at `p_star`.
    pub derivative_residual: f64,
    /// Central second difference at `p_star`.
    pub second_difference: f64,
    pub second_derivative_sign: i8,
}

/// Finite-difference check that the branch entropy, as a function of `p`,
/// is stationary with negative curvature at `p = 1 - q` (`Φ`) or `p = q` (`Ψ`).
pub fn stationarity_check(q: SchmidtParam, branch: Branch) -> Result<StationarityCheck> {
    let qv = q.value();
    if qv <= 0.0 || qv >= 1.0 {
        return Err(Error::Domain(format!(
            "stationarity needs q in (0, 1), got {qv}"
        )));
    }
    let p_star = match branch {
        Branch::Phi => 1.0 - qv,
        Branch::Psi => qv,
    };
    if p_star - FD_STEP < 0.0 || p_star + FD_STEP > 1.0 {
        return Err(Error::Domain(format!(
            "q = {qv} leaves no room for the difference stencil"
        )));
    }
    let f = |p: f64| branch_entropy(SchmidtParam::new(p)?, q, branch);
    let (lo, mid, hi) = (f(p_star - FD_STEP)?, f(p_star)?, f(p_star + FD_STEP)?);
    let derivative_residual = (hi - lo) / (2.0 * FD_STEP);
    let second_difference = (hi - 2.0 * mid + lo) / (FD_STEP * FD_STEP);
    let second_derivative_sign = if second_difference < 0.0 {
        -1
    } else if second_difference > 0.0 {
        1
    } else {
        0
    };
    Ok(StationarityCheck {
        p_star,
        derivative_residual,
        second_difference,
        second_derivative_sign,
    })
}

/// Per-outcome probabilities `(Pr(Φ±), Pr(Ψ±)) = (q(1-q), ((1-q)² + q²)/2)` for `p = 1 - q`.
pub fn special_case_probs(q: SchmidtParam) -> (f64, f64) {
    let q = q.value();
    (q * (1.0 - q), 0.5 * ((1.0 - q) * (1.0 - q) + q * q))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PredictabilityProbability {
    pub pr_psi: f64,
    pub pr_phi: f64,
    /// `P_l` of the initial one-qubit state `diag(q, 1-q)`.
    pub pl: f64,
}

/// Outcome probabilities predicted from the initial linear predictability:
/// `Pr(Ψ±) = (1/2 + P_l)/2` and `Pr(Φ±) = (1/2 - P_l)/2`, for `p = 1 - q`.
pub fn predictability_probability(q: SchmidtParam) -> PredictabilityProbability {
    let rho = DensityMatrix::diagonal(&[q.value(), 1.0 - q.value()]).expect("diagonal qubit state");
    let pl = measures::pl(&rho);
    PredictabilityProbability {
        pr_psi: 0.5 * (0.5 + pl),
        pr_phi: 0.5 * (0.5 - pl),
        pl,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionCheck {
    pub exact: f64,
    pub first_order: f64,
    pub gap: f64,
}

/// Initial `P_vn = 1 + q log2 q + (1-q) log2 (1-q)` against its expansion
/// `(q² + (1-q)²)/ln 2 + 1 - 1/ln 2` obtained from `ln x ≈ x - 1`.
pub fn pvn_expansion_check(q: SchmidtParam) -> ExpansionCheck {
    let qv = q.value();
    let rho = DensityMatrix::diagonal(&[qv, 1.0 - qv]).expect("diagonal qubit state");
    let exact = measures::pvn(&rho);
    let inv_ln2 = std::f64::consts::LOG2_E;
    let first_order = inv_ln2 * (qv * qv + (1.0 - qv) * (1.0 - qv)) + (1.0 - inv_ln2);
    ExpansionCheck {
        exact,
        first_order,
        gap: exact - first_order,
    }
}

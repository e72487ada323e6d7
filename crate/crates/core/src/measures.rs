//! Coherence, predictability and entanglement quantifiers of a density
//! matrix, von Neumann and linear-entropy flavours.
//!
//! For a reduced state `ρ_A` of a pure bipartite state they satisfy
//!
//! ```text
//! C_re + P_vn + S_vn = log2 d        C_hs + P_l + S_l = (d - 1) / d
//! ```
//!
//! [`report`] computes all of them without imposing either identity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, C64, HERMITIAN_TOL};

/// Eigenvalues below this value contribute nothing to an entropy.
pub const EIGEN_CLAMP: f64 = 1e-12;
/// Most negative eigenvalue accepted in a density matrix.
pub const EIGEN_FLOOR: f64 = -1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        check_dims(&matrix, &dims)?;
        let dev = matrix.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = matrix.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let lowest = linalg::hermitian_eigenvalues(&matrix)?[0];
        if lowest < EIGEN_FLOOR {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {lowest:e}"
            )));
        }
        Ok(Self { matrix, dims })
    }

    /// Single-system state with the given diagonal (a classical mixture).
    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        let d = probs.len();
        Self::new(ComplexMatrix::from_diagonal(probs), vec![d])
    }

    /// `|v⟩⟨v|` for an already normalized vector; positivity holds by construction.
    pub(crate) fn from_normalized_vector(v: &[C64], dims: Vec<usize>) -> Self {
        Self {
            matrix: ComplexMatrix::outer(v),
            dims,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Reduced state on the subsystems in `keep`.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let reduced = linalg::partial_trace(&self.matrix, &self.dims, keep)?;
        let mut keep_sorted = keep.to_vec();
        keep_sorted.sort_unstable();
        keep_sorted.dedup();
        let dims = keep_sorted.iter().map(|&k| self.dims[k]).collect();
        Ok(Self {
            matrix: reduced,
            dims,
        })
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        // A validated density matrix is Hermitian and the Jacobi sweep
        // converges long before its cap for d ≤ 16.
        linalg::hermitian_eigenvalues(&self.matrix).expect("density matrix eigenvalues")
    }
}

fn check_dims(m: &ComplexMatrix, dims: &[usize]) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix is not square",
            m.rows(),
            m.cols()
        )));
    }
    if dims.is_empty() || dims.contains(&0) || dims.iter().product::<usize>() != m.rows() {
        return Err(Error::Dimension(format!(
            "subsystem dims {dims:?} do not multiply to {}",
            m.rows()
        )));
    }
    Ok(())
}

/// Shannon entropy in bits of a probability vector, with `0 log 0 = 0`.
pub fn shannon_bits(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&x| x >= EIGEN_CLAMP)
        .map(|&x| -x * x.log2())
        .sum::<f64>()
        // -0.0 for the all-pure case
        + 0.0
}

/// Binary entropy `h(x) = -x log2 x - (1-x) log2 (1-x)`.
pub fn binary_entropy(x: f64) -> f64 {
    shannon_bits(&[x, 1.0 - x])
}

/// `S_vn(ρ) = -Tr ρ log2 ρ`.
pub fn svn(rho: &DensityMatrix) -> f64 {
    shannon_bits(&rho.eigenvalues())
}

/// `S_l(ρ) = 1 - Tr ρ²`.
pub fn sl(rho: &DensityMatrix) -> f64 {
    // Tr ρ² = Σ |ρ_ij|² for Hermitian ρ
    1.0 - rho
        .matrix
        .as_slice()
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
}

pub fn diagonal_part(rho: &DensityMatrix) -> DensityMatrix {
    let diag: Vec<f64> = rho.matrix.diagonal().iter().map(|z| z.re).collect();
    DensityMatrix {
        matrix: ComplexMatrix::from_diagonal(&diag),
        dims: rho.dims.clone(),
    }
}

/// Relative entropy of coherence, `S_vn(ρ_diag) - S_vn(ρ)`.
pub fn cre(rho: &DensityMatrix) -> f64 {
    svn(&diagonal_part(rho)) - svn(rho)
}

/// Hilbert-Schmidt coherence, `Σ_{i≠j} |ρ_ij|²`.
pub fn chs(rho: &DensityMatrix) -> f64 {
    let n = rho.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += rho.matrix[(i, j)].norm_sqr();
            }
        }
    }
    s
}

/// `P_vn(ρ) = log2 d - S_vn(ρ_diag)`.
pub fn pvn(rho: &DensityMatrix) -> f64 {
    (rho.dim() as f64).log2() - svn(&diagonal_part(rho))
}

/// `P_l(ρ) = (d-1)/d - S_l(ρ_diag)`.
pub fn pl(rho: &DensityMatrix) -> f64 {
    let d = rho.dim() as f64;
    (d - 1.0) / d - sl(&diagonal_part(rho))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureReport {
    pub c_re: f64,
    pub p_vn: f64,
    pub s_vn: f64,
    pub vn_sum: f64,
    pub c_hs: f64,
    pub p_l: f64,
    pub s_l: f64,
    pub l_sum: f64,
    pub dim: usize,
}

impl MeasureReport {
    /// `|vn_sum - log2 d|`
    pub fn vn_residual(&self) -> f64 {
        (self.vn_sum - (self.dim as f64).log2()).abs()
    }

    /// `|l_sum - (d-1)/d|`
    pub fn linear_residual(&self) -> f64 {
        let d = self.dim as f64;
        (self.l_sum - (d - 1.0) / d).abs()
    }
}

pub fn report(rho: &DensityMatrix) -> MeasureReport {
    let diag = diagonal_part(rho);
    let d = rho.dim() as f64;
    let s_vn = svn(rho);
    let s_diag = svn(&diag);
    let c_re = s_diag - s_vn;
    let p_vn = d.log2() - s_diag;
    let s_l = sl(rho);
    let c_hs = chs(rho);
    let p_l = (d - 1.0) / d - sl(&diag);
    MeasureReport {
        c_re,
        p_vn,
        s_vn,
        vn_sum: c_re + p_vn + s_vn,
        c_hs,
        p_l,
        s_l,
        l_sum: c_hs + p_l + s_l,
        dim: rho.dim(),
    }
}

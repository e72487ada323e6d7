//! Grid sweeps behind the entropy and predictability curves, and their CSV form.
//!
//! Every figure is written in long format with the same [`SweepRow`]
//! columns; the figure only decides which `(p, q)` points are visited:
//!
//! * `1a`, `1b`: `p` over the grid for each `q` in [`FIG1_Q_VALUES`]
//! * `2a`, `2b`: `q` over the grid with `p = 1 - q`

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures;
use crate::states::{schmidt_pair, SchmidtParam};
use crate::swap::{self, Branch};

/// Values of `q` traced in the branch-entropy figures.
pub const FIG1_Q_VALUES: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];

pub const DEFAULT_GRID: usize = 1001;

pub const CSV_HEADER: &str =
    "p,q,svn_phi,svn_psi,pr_phi,pr_psi,pl_initial,pvn_initial,pvn_final_psi";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// `S_vn(ρ^φ_A)` against `p`
    Fig1a,
    /// `S_vn(ρ^ψ_A)` against `p`
    Fig1b,
    /// outcome probabilities and initial `P_l` against `q`
    Fig2a,
    /// initial and final entropies and predictabilities against `q`
    Fig2b,
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1a" => Ok(Self::Fig1a),
            "1b" => Ok(Self::Fig1b),
            "2a" => Ok(Self::Fig2a),
            "2b" => Ok(Self::Fig2b),
            other => Err(Error::Domain(format!(
                "unknown figure {other:?}; expected 1a, 1b, 2a or 2b"
            ))),
        }
    }
}

/// Everything plotted at one `(p, q)` point.
///
/// "Initial" quantities refer to `ρ_A` of `|ξ(p)⟩`. Branch entropies and the
/// final predictability are `None` when that branch has zero probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: f64,
    pub q: f64,
    pub svn_phi: Option<f64>,
    pub svn_psi: Option<f64>,
    pub pr_phi: f64,
    pub pr_psi: f64,
    pub pl_initial: f64,
    pub pvn_initial: f64,
    pub pvn_final_psi: Option<f64>,
}

impl SweepRow {
    pub fn at(p: SchmidtParam, q: SchmidtParam) -> Self {
        let svn_phi = swap::branch_entropy(p, q, Branch::Phi).ok();
        let svn_psi = swap::branch_entropy(p, q, Branch::Psi).ok();
        // post-measurement reduced states are diagonal, so P_vn comes straight from the spectrum
        let pvn_final_psi = swap::branch_spectrum(p, q, Branch::Psi).ok().map(|(c, d)| {
            let rho = measures::DensityMatrix::diagonal(&[c, d]).expect("normalized spectrum");
            measures::pvn(&rho)
        });
        let initial = schmidt_pair(p)
            .reduced(&[0])
            .expect("pair has two subsystems");
        Self {
            p: p.value(),
            q: q.value(),
            svn_phi,
            svn_psi,
            pr_phi: 0.5 * swap::branch_norm_sq(p, q, Branch::Phi),
            pr_psi: 0.5 * swap::branch_norm_sq(p, q, Branch::Psi),
            pl_initial: measures::pl(&initial),
            pvn_initial: measures::pvn(&initial),
            pvn_final_psi,
        }
    }

    /// Sum of the four outcome probabilities.
    pub fn total_probability(&self) -> f64 {
        2.0 * (self.pr_phi + self.pr_psi)
    }
}

/// `grid` equally spaced points `i / (grid - 1)` on `[0, 1]`.
pub fn unit_grid(grid: usize) -> Result<Vec<f64>> {
    if grid < 2 {
        return Err(Error::Domain(format!(
            "grid must have at least 2 points, got {grid}"
        )));
    }
    let last = (grid - 1) as f64;
    Ok((0..grid).map(|i| i as f64 / last).collect())
}

pub fn figure_rows(which: Figure, grid: usize) -> Result<Vec<SweepRow>> {
    let xs = unit_grid(grid)?;
    let param = |x: f64| SchmidtParam::new(x).expect("grid point in [0, 1]");
    let rows = match which {
        Figure::Fig1a | Figure::Fig1b => FIG1_Q_VALUES
            .iter()
            .flat_map(|&q| xs.iter().map(move |&p| (p, q)))
            .map(|(p, q)| SweepRow::at(param(p), param(q)))
            .collect(),
        Figure::Fig2a | Figure::Fig2b => xs
            .iter()
            .map(|&q| SweepRow::at(param(q).complement(), param(q)))
            .collect(),
    };
    Ok(rows)
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn format_optional(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

/// CSV with a single header row and LF line endings. Undefined branch
/// quantities are left empty.
pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 220);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            format_number(r.p),
            format_number(r.q),
            format_optional(r.svn_phi),
            format_optional(r.svn_psi),
            format_number(r.pr_phi),
            format_number(r.pr_psi),
            format_number(r.pl_initial),
            format_number(r.pvn_initial),
            format_optional(r.pvn_final_psi),
        );
    }
    out
}

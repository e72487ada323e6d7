//! wasm-bindgen bindings for the static demo page in `www/`.
//!
//! Each exported function is a thin wrapper over a plain Rust function so
//! the numerics can be tested natively.

use entswap::experiment::{self, RunConfig};
use entswap::measures;
use entswap::states::schmidt_pair;
use entswap::swap::{self, Branch};
use entswap::sweep::unit_grid;
use entswap::SchmidtParam;
use serde_json::json;
use wasm_bindgen::prelude::*;

fn weight(x: f64, name: &str) -> Result<SchmidtParam, String> {
    SchmidtParam::new(x).map_err(|e| format!("{name}: {e}"))
}

/// Outcome table for one `(p, q)` as a JSON string.
pub fn outcome_table_json(p: f64, q: f64) -> Result<String, String> {
    let (p, q) = (weight(p, "p")?, weight(q, "q")?);
    let initial_a = measures::report(&schmidt_pair(p).reduced(&[0]).map_err(|e| e.to_string())?);
    let initial_b = measures::report(&schmidt_pair(q).reduced(&[1]).map_err(|e| e.to_string())?);
    let rows: Vec<_> = swap::bbm_outcomes(p, q)
        .iter()
        .map(|o| {
            json!({
                "label": o.label,
                "probability": o.probability,
                "amplitudes": o.post_state.state().map(|s| {
                    s.amplitudes().iter().map(|z| z.re).collect::<Vec<_>>()
                }),
                "reduced_a": o.report_a(),
            })
        })
        .collect();
    Ok(json!({ "initial_a": initial_a, "initial_b": initial_b, "outcomes": rows }).to_string())
}

/// `[p_0..p_n, S_phi.., S_psi..]` for fixed `q`; NaN where a branch has zero probability.
pub fn entropy_curves_vec(q: f64, grid: usize) -> Result<Vec<f64>, String> {
    let q = weight(q, "q")?;
    let ps = unit_grid(grid).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(3 * grid);
    out.extend_from_slice(&ps);
    for branch in [Branch::Phi, Branch::Psi] {
        out.extend(ps.iter().map(|&p| {
            let p = SchmidtParam::new(p).expect("grid point");
            swap::branch_entropy(p, q, branch).unwrap_or(f64::NAN)
        }));
    }
    Ok(out)
}

/// Eight series of length `grid` along `p = 1 - q`:
/// `q, Pr(Φ±), Pr(Ψ±), P_l initial, S_vn initial, S_vn final (ψ), P_vn initial, P_vn final (ψ)`.
pub fn predictability_curves_vec(grid: usize) -> Result<Vec<f64>, String> {
    let qs = unit_grid(grid).map_err(|e| e.to_string())?;
    let mut series: Vec<Vec<f64>> = (0..8).map(|_| Vec::with_capacity(grid)).collect();
    for &qv in &qs {
        let q = SchmidtParam::new(qv).expect("grid point");
        let p = q.complement();
        let (pr_phi, pr_psi) = swap::special_case_probs(q);
        let initial = measures::report(&schmidt_pair(p).reduced(&[0]).expect("pair"));
        let fin = swap::bbm_outcomes(p, q)[2].report_a();
        let vals = [
            qv,
            pr_phi,
            pr_psi,
            initial.p_l,
            initial.s_vn,
            fin.map_or(f64::NAN, |r| r.s_vn),
            initial.p_vn,
            fin.map_or(f64::NAN, |r| r.p_vn),
        ];
        for (s, v) in series.iter_mut().zip(vals) {
            s.push(v);
        }
    }
    Ok(series.concat())
}

/// Seeded ensemble summary as JSON.
pub fn simulate_json(p: f64, q: f64, shots: u32, seed: u32) -> Result<String, String> {
    let cfg = RunConfig::new(
        weight(p, "p")?,
        weight(q, "q")?,
        u64::from(shots),
        u64::from(seed),
    )
    .map_err(|e| e.to_string())?;
    let r = experiment::run_ensemble(&cfg);
    Ok(json!({
        "counts": r.counts,
        "frequency": r.empirical_freq,
        "analytic": r.analytic_prob,
        "sigma": r.sigma,
        "within_3_sigma": r.within_sigma(3.0),
        "mean_post_svn": r.mean_post_svn,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn outcome_table(p: f64, q: f64) -> Result<String, JsError> {
    outcome_table_json(p, q).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn entropy_curves(q: f64, grid: usize) -> Result<Vec<f64>, JsError> {
    entropy_curves_vec(q, grid).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn predictability_curves(grid: usize) -> Result<Vec<f64>, JsError> {
    predictability_curves_vec(grid).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn simulate(p: f64, q: f64, shots: u32, seed: u32) -> Result<String, JsError> {
    simulate_json(p, q, shots, seed).map_err(|e| JsError::new(&e))
}

//! Seeded Monte Carlo runs of the selective Bell-basis measurement.
//!
//! The canonical generator is xoshiro256** whose 256-bit state is expanded
//! from the 64-bit seed with SplitMix64 (the `seed_from_u64` rule of
//! `rand_xoshiro`). Each draw takes one `u64`, keeps its top 53 bits and
//! maps them to `u = k · 2^-53 ∈ [0, 1)`. The outcome is the first label,
//! in `Φ+, Φ-, Ψ+, Ψ-` order, whose cumulative probability exceeds `u`.

use std::collections::BTreeMap;

use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{self, MeasureReport};
use crate::states::{schmidt_pair, BellLabel, SchmidtParam};
use crate::swap;

pub type ShotRng = Xoshiro256StarStar;

pub fn rng_from_seed(seed: u64) -> ShotRng {
    Xoshiro256StarStar::seed_from_u64(seed)
}

/// Uniform double in `[0, 1)` from the top 53 bits of one draw.
pub fn next_unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// SplitMix64 output function.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of worker `index` when a run is partitioned:
/// `splitmix64(seed + index · 0x9E3779B97F4A7C15)`.
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

/// Inverse-CDF draw from four weights. Zero-weight labels are never chosen.
pub fn sample_categorical<R: RngCore + ?Sized>(probs: &[f64; 4], rng: &mut R) -> BellLabel {
    let u = next_unit(rng);
    let mut cum = 0.0;
    for (label, &p) in BellLabel::ALL.iter().zip(probs) {
        cum += p;
        if u < cum {
            return *label;
        }
    }
    // u landed in the rounding gap above the final cumulative sum
    let last = probs.iter().rposition(|&p| p > 0.0).unwrap_or(3);
    BellLabel::ALL[last]
}

pub fn analytic_probs(p: SchmidtParam, q: SchmidtParam) -> [f64; 4] {
    BellLabel::ALL.map(|l| swap::outcome_probability(p, q, l))
}

/// One protocol run: which Bell state Charlie observes.
pub fn sample_bbm<R: RngCore + ?Sized>(p: SchmidtParam, q: SchmidtParam, rng: &mut R) -> BellLabel {
    sample_categorical(&analytic_probs(p, q), rng)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunConfig {
    pub p: SchmidtParam,
    pub q: SchmidtParam,
    pub shots: u64,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(p: SchmidtParam, q: SchmidtParam, shots: u64, seed: u64) -> Result<Self> {
        if shots == 0 {
            return Err(Error::Domain("shots must be at least 1".into()));
        }
        Ok(Self { p, q, shots, seed })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleResult {
    pub config: RunConfig,
    pub counts: BTreeMap<BellLabel, u64>,
    pub empirical_freq: BTreeMap<BellLabel, f64>,
    pub analytic_prob: BTreeMap<BellLabel, f64>,
    /// `empirical - analytic`
    pub discrepancy: BTreeMap<BellLabel, f64>,
    /// Binomial standard deviation of each frequency, `√(P(1-P)/shots)`.
    pub sigma: BTreeMap<BellLabel, f64>,
    /// Probability-weighted `S_vn` of the post-measurement A-state.
    pub mean_post_svn: f64,
    /// Report of the initial `ρ_A` of `|ξ(p)⟩`.
    pub pre_report: MeasureReport,
    /// Report of the post-measurement `ρ_A` per outcome; `None` for zero-probability outcomes.
    pub post_reports: BTreeMap<BellLabel, Option<MeasureReport>>,
}

impl EnsembleResult {
    /// Whether every empirical frequency lies within `k` standard deviations.
    pub fn within_sigma(&self, k: f64) -> bool {
        BellLabel::ALL
            .iter()
            .all(|l| self.discrepancy[l].abs() <= k * self.sigma[l])
    }

    pub fn max_abs_discrepancy(&self) -> f64 {
        self.discrepancy.values().fold(0.0, |m, d| m.max(d.abs()))
    }
}

fn count_shots(p: SchmidtParam, q: SchmidtParam, shots: u64, rng: &mut ShotRng) -> [u64; 4] {
    let probs = analytic_probs(p, q);
    let mut counts = [0u64; 4];
    for _ in 0..shots {
        counts[sample_categorical(&probs, rng).index()] += 1;
    }
    counts
}

/// Single-threaded canonical run.
pub fn run_ensemble(cfg: &RunConfig) -> EnsembleResult {
    let mut rng = rng_from_seed(cfg.seed);
    let counts = count_shots(cfg.p, cfg.q, cfg.shots, &mut rng);
    assemble(cfg, counts)
}

/// Splits the shots over `workers` threads seeded with [`sub_seed`] and adds
/// the counts. Worker `i` gets `shots / workers` shots, plus one if
/// `i < shots % workers`. The result differs from [`run_ensemble`] but is
/// deterministic for a fixed worker count.
pub fn run_ensemble_partitioned(cfg: &RunConfig, workers: usize) -> EnsembleResult {
    let workers = workers.max(1) as u64;
    let base = cfg.shots / workers;
    let extra = cfg.shots % workers;
    let parts: Vec<[u64; 4]> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|i| {
                let shots = base + u64::from(i < extra);
                scope.spawn(move || {
                    let mut rng = rng_from_seed(sub_seed(cfg.seed, i));
                    count_shots(cfg.p, cfg.q, shots, &mut rng)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut counts = [0u64; 4];
    for part in parts {
        for (c, x) in counts.iter_mut().zip(part) {
            *c += x;
        }
    }
    assemble(cfg, counts)
}

fn assemble(cfg: &RunConfig, counts: [u64; 4]) -> EnsembleResult {
    let outcomes = swap::bbm_outcomes(cfg.p, cfg.q);
    let n = cfg.shots as f64;

    let mut result = EnsembleResult {
        config: *cfg,
        counts: BTreeMap::new(),
        empirical_freq: BTreeMap::new(),
        analytic_prob: BTreeMap::new(),
        discrepancy: BTreeMap::new(),
        sigma: BTreeMap::new(),
        mean_post_svn: 0.0,
        pre_report: measures::report(
            &schmidt_pair(cfg.p)
                .reduced(&[0])
                .expect("pair has two subsystems"),
        ),
        post_reports: BTreeMap::new(),
    };

    for (o, &count) in outcomes.iter().zip(&counts) {
        let freq = count as f64 / n;
        let post = o.report_a();
        if let Some(r) = &post {
            result.mean_post_svn += o.probability * r.s_vn;
        }
        result.counts.insert(o.label, count);
        result.empirical_freq.insert(o.label, freq);
        result.analytic_prob.insert(o.label, o.probability);
        result.discrepancy.insert(o.label, freq - o.probability);
        result
            .sigma
            .insert(o.label, (o.probability * (1.0 - o.probability) / n).sqrt());
        result.post_reports.insert(o.label, post);
    }
    result
}

//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs without the libtest harness so the report is always printed:
//! `cargo test -p entswap --test acceptance`.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use entswap::cli::DEFAULT_SEED;
use entswap::experiment::{run_ensemble, RunConfig};
use entswap::measures::{report, svn};
use entswap::states::{bell_state, composite_state, random_pure_state, schmidt_pair};
use entswap::swap::{self, bbm_outcomes, Branch};
use entswap::sweep::CSV_HEADER;
use entswap::{experiment, BellLabel, SchmidtParam};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn w(x: f64) -> SchmidtParam {
    SchmidtParam::new(x).unwrap()
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_runtime(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    check(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

/// 1. Worked example p = 0.1, q = 0.75.
fn worked_example() -> Outcome {
    let (p, q) = (w(0.1), w(0.75));
    let out = bbm_outcomes(p, q);
    for (o, want) in out.iter().zip([0.15, 0.15, 0.35, 0.35]) {
        check((o.probability - want).abs() <= 1e-12, || {
            format!("Pr({}) = {} != {want}", o.label, o.probability)
        })?;
    }
    let (s_phi, s_psi) = swap::post_entropies(p, q).map_err(|e| e.to_string())?;
    let s_xi = svn(&schmidt_pair(p).reduced(&[0]).unwrap());
    let s_eta = svn(&schmidt_pair(q).reduced(&[1]).unwrap());
    for (name, got, expected) in [
        ("S(phi_A)", s_phi, 0.8112),
        ("S(psi_A)", s_psi, 0.2222),
        ("S(xi_A)", s_xi, 0.4689),
        ("S(eta_B)", s_eta, 0.8112),
    ] {
        check((got - expected).abs() <= 2e-4, || {
            format!("{name} = {got} vs {expected}")
        })?;
    }
    Ok(format!(
        "Pr = 0.15/0.35; S_phi={s_phi:.5} S_psi={s_psi:.5} S_xi={s_xi:.5} S_eta={s_eta:.5}"
    ))
}

/// 2. p = 1 - q special case at q = 0.99 and q = 0.75.
fn special_case() -> Outcome {
    for (q, psi, phi) in [(0.99, 0.4901, 0.0099), (0.75, 0.3125, 0.1875)] {
        let (got_phi, got_psi) = swap::special_case_probs(w(q));
        check(
            (got_psi - psi).abs() <= 1e-12 && (got_phi - phi).abs() <= 1e-12,
            || format!("q={q}: Pr(Psi)={got_psi} Pr(Phi)={got_phi}"),
        )?;
    }
    Ok("q=0.99 -> 0.4901/0.0099, q=0.75 -> 0.3125/0.1875 (tol 1e-12)".into())
}

/// 3. Pr(Ψ±) = (1/2 + P_l)/2 and Pr(Φ±) = (1/2 - P_l)/2 on 1001 points.
fn predictability_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 0..=1000 {
        let q = w(i as f64 / 1000.0);
        let (phi, psi) = swap::special_case_probs(q);
        let pred = swap::predictability_probability(q);
        worst = worst
            .max((pred.pr_psi - psi).abs())
            .max((pred.pr_phi - phi).abs());
    }
    check(worst <= 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.2e} over 1001 points"))
}

/// 4. Both CCRs on 10^4 Haar-random states of dims (2,2) and (3,2).
fn ccr_property() -> Outcome {
    let start = Instant::now();
    let mut rng = experiment::rng_from_seed(DEFAULT_SEED);
    let mut summary = Vec::new();
    for dims in [[2usize, 2], [3, 2]] {
        let (mut vn, mut lin): (f64, f64) = (0.0, 0.0);
        for _ in 0..10_000 {
            let r = report(&random_pure_state(&dims, &mut rng).reduced(&[0]).unwrap());
            vn = vn.max(r.vn_residual());
            lin = lin.max(r.linear_residual());
        }
        check(vn < 1e-9 && lin < 1e-9, || {
            format!("{dims:?}: vn {vn:e}, linear {lin:e}")
        })?;
        summary.push(format!("{dims:?} vn {vn:.1e} lin {lin:.1e}"));
    }
    within_runtime(start, Duration::from_secs(10))?;
    Ok(format!("{} in {:?}", summary.join(", "), start.elapsed()))
}

/// 5. Analytic outcomes against the projector oracle on a 101 x 101 grid.
fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let (mut dprob, mut dfid): (f64, f64) = (0.0, 0.0);
    for i in 0..=100 {
        for j in 0..=100 {
            let (p, q) = (w(i as f64 / 100.0), w(j as f64 / 100.0));
            let state = composite_state(p, q);
            for o in bbm_outcomes(p, q) {
                let (prob, post) = common::project_bell(state.amplitudes(), o.label);
                dprob = dprob.max((prob - o.probability).abs());
                match (post, o.post_state.state()) {
                    (Some(oracle), Some(s)) => {
                        dfid = dfid.max(1.0 - common::fidelity(&oracle, s.amplitudes()));
                    }
                    (None, None) => {}
                    _ => {
                        return Err(format!(
                            "definedness differs at p={p:?} q={q:?} {}",
                            o.label
                        ))
                    }
                }
            }
        }
    }
    check(dprob <= 1e-10, || {
        format!("probability deviation {dprob:e}")
    })?;
    check(dfid < 1e-10, || format!("infidelity {dfid:e}"))?;
    within_runtime(start, Duration::from_secs(30))?;
    Ok(format!("max |dPr| {dprob:.1e}, max infidelity {dfid:.1e}"))
}

/// 6. Stationary maxima at p = 1 - q (Φ) and p = q (Ψ).
fn stationarity() -> Outcome {
    let mut worst: f64 = 0.0;
    for j in 1..=9 {
        let q = w(j as f64 / 10.0);
        for branch in [Branch::Phi, Branch::Psi] {
            let c = swap::stationarity_check(q, branch).map_err(|e| e.to_string())?;
            check(
                c.derivative_residual.abs() < 1e-6 && c.second_derivative_sign == -1,
                || format!("q={q:?} {branch:?}: {c:?}"),
            )?;
            worst = worst.max(c.derivative_residual.abs());
        }
    }
    Ok(format!(
        "max |dS/dp| {worst:.1e}, curvature negative at all 18 points"
    ))
}

/// 7. P_vn + S_vn = 1 and C_re = 0 before and after the measurement.
fn triality_conservation() -> Outcome {
    let mut worst_sum: f64 = 0.0;
    let mut worst_cre: f64 = 0.0;
    let mut tally = |r: entswap::MeasureReport| {
        worst_sum = worst_sum.max((r.p_vn + r.s_vn - 1.0).abs());
        worst_cre = worst_cre.max(r.c_re.abs());
    };
    for label in BellLabel::ALL {
        let b = bell_state(label);
        tally(report(&b.reduced(&[0]).unwrap()));
        tally(report(&b.reduced(&[1]).unwrap()));
    }
    for i in 0..=100 {
        for j in 0..=100 {
            let (p, q) = (w(i as f64 / 100.0), w(j as f64 / 100.0));
            for pair in [schmidt_pair(p), schmidt_pair(q)] {
                tally(report(&pair.reduced(&[0]).unwrap()));
                tally(report(&pair.reduced(&[1]).unwrap()));
            }
            for o in bbm_outcomes(p, q) {
                if let Some(s) = o.post_state.state() {
                    tally(report(&s.reduced(&[0]).unwrap()));
                    tally(report(&s.reduced(&[1]).unwrap()));
                }
            }
        }
    }
    check(worst_sum <= 1e-10, || format!("max |P+S-1| {worst_sum:e}"))?;
    check(worst_cre < 1e-12, || format!("max C_re {worst_cre:e}"))?;
    Ok(format!(
        "max |P_vn+S_vn-1| {worst_sum:.1e}, max C_re {worst_cre:.1e}"
    ))
}

/// 8. 10^6 shots within 3σ of the analytic probabilities; reruns identical.
fn monte_carlo() -> Outcome {
    let start = Instant::now();
    let mut worst_z: f64 = 0.0;
    for (p, q) in [(0.5, 0.5), (0.1, 0.75), (0.01, 0.99)] {
        let cfg = RunConfig::new(w(p), w(q), 1_000_000, DEFAULT_SEED).unwrap();
        let first = run_ensemble(&cfg);
        let again = run_ensemble(&cfg);
        check(first == again, || format!("({p},{q}) rerun differs"))?;
        for l in BellLabel::ALL {
            let z = first.discrepancy[&l].abs() / first.sigma[&l];
            worst_z = worst_z.max(z);
            check(z <= 3.0, || format!("({p},{q}) {l}: {z:.2} sigma"))?;
        }
    }
    within_runtime(start, Duration::from_secs(10))?;
    Ok(format!(
        "seed {DEFAULT_SEED}, worst deviation {worst_z:.2} sigma, reruns bit-identical"
    ))
}

/// 9. `figures --which 2a`: Pr(Ψ±) ≥ Pr(Φ±), equality only at q = 0.5.
fn figure_2a_dominance() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_entswap"))
        .args(["figures", "--which", "2a"])
        .output()
        .map_err(|e| e.to_string())?;
    check(out.status.success(), || {
        format!("exit {:?}", out.status.code())
    })?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let mut lines = text.lines();
    check(lines.next() == Some(CSV_HEADER), || {
        "unexpected header".into()
    })?;
    let header: Vec<&str> = CSV_HEADER.split(',').collect();
    let idx = |name| header.iter().position(|h| *h == name).unwrap();
    let (qi, phi, psi) = (idx("q"), idx("pr_phi"), idx("pr_psi"));
    let mut rows = 0;
    let mut equal_at = Vec::new();
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let num = |i: usize| f[i].parse::<f64>().unwrap();
        let (q, a, b) = (num(qi), num(phi), num(psi));
        check(b >= a, || format!("q={q}: Pr(Psi)={b} < Pr(Phi)={a}"))?;
        if b == a {
            equal_at.push(q);
        }
        rows += 1;
    }
    check(equal_at == [0.5], || format!("equality at {equal_at:?}"))?;
    Ok(format!("{rows} rows, equality only at q=0.5"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("worked example (p=0.1, q=0.75)", worked_example),
        ("special case p=1-q probabilities", special_case),
        (
            "predictability-probability identity",
            predictability_identity,
        ),
        ("complementarity relations on random states", ccr_property),
        ("projector oracle equivalence", oracle_equivalence),
        ("stationary maxima of branch entropies", stationarity),
        (
            "triality conservation through the measurement",
            triality_conservation,
        ),
        ("Monte Carlo consistency", monte_carlo),
        ("figure 2a dominance", figure_2a_dominance),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("[PASS] AC{} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] AC{} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! The `verify-paper` scorecard: one row per printed claim, each evaluated
//! against the closed forms, the numeric optimizers, and where applicable
//! the direct oracle path. Rows report; they never gate, so the command
//! exits 0 regardless of how many rows fail to reproduce.

use std::f64::consts::{FRAC_PI_8, PI, TAU};

use cbdiscrim_core::channel::cbc_kraus;
use cbdiscrim_core::choi::build_delta;
use cbdiscrim_core::cmat::hermitian_eigenvalues;
use cbdiscrim_core::discrimination::{
    discriminate, pauli_criterion, same_type3_singulars, type3_enhancement_predicates,
};
use cbdiscrim_core::oracle::{direct_assisted_value, RngState};
use cbdiscrim_core::{CbcSpec, DensityMatrix, DiscriminationProblem, OptimizerConfig, PauliSpec};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Verdict on a printed claim. `FAIL-AS-PRINTED` means the computation is
/// healthy and the stated value is what does not reproduce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClaimStatus {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL-AS-PRINTED")]
    FailAsPrinted,
}

impl std::fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClaimStatus::Pass => write!(f, "PASS"),
            ClaimStatus::FailAsPrinted => write!(f, "FAIL-AS-PRINTED"),
        }
    }
}

/// One scorecard row. Strings stay comma-free so the CSV rendering needs
/// no quoting. `value` carries the headline computed number when the row
/// has a single one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimRow {
    pub id: String,
    pub claim: String,
    pub claimed: String,
    pub computed: String,
    pub value: Option<f64>,
    pub status: ClaimStatus,
}

fn row(
    id: &str,
    claim: &str,
    claimed: &str,
    computed: String,
    value: Option<f64>,
    pass: bool,
) -> ClaimRow {
    ClaimRow {
        id: id.into(),
        claim: claim.into(),
        claimed: claimed.into(),
        computed,
        value,
        status: if pass { ClaimStatus::Pass } else { ClaimStatus::FailAsPrinted },
    }
}

fn spectrum(spec1: &CbcSpec, spec2: &CbcSpec, p1: f64) -> Result<[f64; 4], CliError> {
    let delta = build_delta(&cbc_kraus(spec1), &cbc_kraus(spec2), p1)?;
    let mut eigs: Vec<f64> =
        hermitian_eigenvalues(delta.matrix()).into_iter().map(f64::abs).collect();
    eigs.sort_by(|a, b| b.partial_cmp(a).expect("finite spectrum"));
    Ok([eigs[0], eigs[1], eigs[2], eigs[3]])
}

fn problem(spec1: &CbcSpec, spec2: &CbcSpec, p1: f64) -> Result<DiscriminationProblem, CliError> {
    Ok(DiscriminationProblem::new(cbc_kraus(spec1), cbc_kraus(spec2), p1)?)
}

/// The fully worked mixing-family pair: equal priors, opposite tilt
/// angles with `sin(2 phi) = cos(2 phi) = sqrt(2)/2`, phases zero.
pub fn worked_example() -> (CbcSpec, CbcSpec, f64) {
    (
        CbcSpec::Type3 { phi: FRAC_PI_8, xi: 0.0 },
        CbcSpec::Type3 { phi: -FRAC_PI_8, xi: 0.0 },
        0.5,
    )
}

/// Evaluates every claim row in a fixed order. Sampling streams derive
/// from `cfg.seed`, so the scorecard is reproducible run to run.
pub fn run_verify_paper(cfg: &OptimizerConfig) -> Result<Vec<ClaimRow>, CliError> {
    cfg.validate()?;
    let mut rows = Vec::with_capacity(10);

    // Cross-family pairs: every error measure vanishes.
    let mut worst = 0.0f64;
    let pairs = [
        (CbcSpec::Type1, CbcSpec::Type2 { xi: 0.4 }),
        (CbcSpec::Type1, CbcSpec::Type3 { phi: 0.9, xi: 1.3 }),
        (CbcSpec::Type2 { xi: 0.7 }, CbcSpec::Type3 { phi: 0.3, xi: 0.0 }),
    ];
    for (a, b) in &pairs {
        for p1 in [0.5, 0.3] {
            let report = discriminate(&problem(a, b, p1)?, cfg)?;
            worst = worst.max(report.p_err_unassisted).max(report.p_err_assisted);
        }
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let bell = DensityMatrix::pure(&[s.into(), 0.0.into(), 0.0.into(), s.into()])?;
    let bell_value = direct_assisted_value(&problem(&pairs[0].0, &pairs[0].1, 0.5)?, &bell)?;
    let oracle_err = 0.5 * (1.0 - bell_value);
    rows.push(row(
        "C1",
        "channels from two different coherence-breaking families are always perfectly distinguishable",
        "error 0 on the analytic and numeric and oracle paths",
        format!(
            "max optimizer error {worst:.3e} over six cross-family runs; Bell-state oracle error {oracle_err:.3e} for the first-vs-second pair"
        ),
        Some(worst),
        worst <= 1e-7 && oracle_err.abs() <= 1e-12,
    ));

    // Cross-family spectrum sum 1 + |p1 - p2| (families 1v3 and 2v3).
    for (id, a, name) in [
        ("C2", CbcSpec::Type1, "first"),
        ("C3", CbcSpec::Type2 { xi: 1.1 }, "second"),
    ] {
        let mut dev = 0.0f64;
        for p1 in [0.3, 0.5, 0.72] {
            for (phi2, xi2) in [(0.35, 0.0), (1.2, 2.4)] {
                let sum: f64 = spectrum(&a, &CbcSpec::Type3 { phi: phi2, xi: xi2 }, p1)?
                    .iter()
                    .sum();
                dev = dev.max((sum - (1.0 + (2.0 * p1 - 1.0).abs())).abs());
            }
        }
        rows.push(row(
            id,
            &format!("{name} family vs mixing family: the four singular values sum to 1 + |p1 - p2|"),
            "sum = 1 + |p1 - p2|",
            format!("max |sum - formula| = {dev:.3e} over six parameter points"),
            Some(dev),
            dev <= 1e-9,
        ));
    }

    // Cross-family entanglement bound 1/4 - |p1 - p2|/4.
    let mut dev = 0.0f64;
    for p1 in [0.1, 0.3, 0.5, 0.72, 0.9] {
        let prob = problem(&CbcSpec::Type1, &CbcSpec::Type3 { phi: 0.8, xi: 0.5 }, p1)?;
        let bound = cbdiscrim_core::discrimination::entanglement_bound(&prob)?;
        dev = dev.max((bound - (0.25 - 0.25 * (2.0 * p1 - 1.0).abs())).abs());
    }
    rows.push(row(
        "C4",
        "cross-family assisted discrimination obeys the bound 1/4 - |p1 - p2|/4",
        "bound = 1/4 - |p1 - p2|/4",
        format!("max |bound - formula| = {dev:.3e} over five priors"),
        Some(dev),
        dev <= 1e-10,
    ));

    // Mixing-family pair spectrum closed form.
    let mut rng = RngState::new(cfg.seed).stream(501);
    let mut dev = 0.0f64;
    for _ in 0..200 {
        let p1 = rng.uniform(0.0, 1.0);
        let (phi1, phi2) = (rng.uniform(0.0, PI), rng.uniform(0.0, PI));
        let (xi1, xi2) = (rng.uniform(0.0, TAU), rng.uniform(0.0, TAU));
        let formula = same_type3_singulars(p1, phi1, xi1, phi2, xi2)?;
        let numeric = spectrum(
            &CbcSpec::Type3 { phi: phi1, xi: xi1 },
            &CbcSpec::Type3 { phi: phi2, xi: xi2 },
            p1,
        )?;
        for (f, n) in formula.iter().zip(numeric.iter()) {
            dev = dev.max((f - n).abs());
        }
    }
    rows.push(row(
        "C5",
        "mixing-family pair spectrum follows the closed form through the cross term M",
        "singular values (|t + M|/2 twice and |t - M|/2 twice)",
        format!("max deviation {dev:.3e} over 200 seeded draws"),
        Some(dev),
        dev <= 1e-9,
    ));

    // Worked example.
    let (wa, wb, wp) = worked_example();
    let report = discriminate(&problem(&wa, &wb, wp)?, cfg)?;
    let sum: f64 = report.delta_singulars.iter().sum();
    rows.push(row(
        "C6",
        "worked mixing example: the four singular values sum to 1",
        "1",
        format!("{sum:.12} (closed form sqrt(2))"),
        Some(sum),
        (sum - 1.0).abs() <= 1e-6,
    ));
    rows.push(row(
        "C7",
        "worked mixing example: the unassisted error is 1/2",
        "0.5",
        format!("{:.12}", report.p_err_unassisted),
        Some(report.p_err_unassisted),
        (report.p_err_unassisted - 0.5).abs() <= 1e-6,
    ));
    rows.push(row(
        "C8",
        "worked mixing example: the assisted error is at most 1/4",
        "p <= 0.25",
        format!("{:.12}", report.p_err_assisted),
        Some(report.p_err_assisted),
        report.p_err_assisted <= 0.25 + 1e-9,
    ));

    // Strict enhancement for mixing pairs under the printed sign condition.
    let mut rng = RngState::new(cfg.seed).stream(901);
    let mut samples = vec![(wa, wb, wp)];
    while samples.len() < 21 {
        let (phi1, phi2) = (rng.uniform(0.0, PI), rng.uniform(0.0, PI));
        let (xi1, xi2) = (rng.uniform(0.0, TAU), rng.uniform(0.0, TAU));
        if type3_enhancement_predicates(phi1, xi1, phi2, xi2).printed {
            samples.push((
                CbcSpec::Type3 { phi: phi1, xi: xi1 },
                CbcSpec::Type3 { phi: phi2, xi: xi2 },
                rng.uniform(0.05, 0.95),
            ));
        }
    }
    let mut max_gap = f64::NEG_INFINITY;
    let mut max_bound_gap = 0.0f64;
    let mut strict = 0usize;
    for (a, b, p1) in &samples {
        let report = discriminate(&problem(a, b, *p1)?, cfg)?;
        let gap = report.p_err_unassisted - report.p_err_assisted;
        max_gap = max_gap.max(gap);
        max_bound_gap = max_bound_gap.max((report.bound - report.p_err_unassisted).abs());
        if gap > 2.0 * cfg.tolerance {
            strict += 1;
        }
    }
    rows.push(row(
        "C9",
        "mixing-family pairs: assistance strictly improves discrimination when the sign condition holds",
        "assisted error strictly below unassisted under the condition",
        format!(
            "{strict} of {} condition-true samples improve strictly; best gap {max_gap:.3e}; the bound coincides with the unassisted optimum to {max_bound_gap:.3e}",
            samples.len()
        ),
        Some(max_gap),
        strict == samples.len(),
    ));

    // Coherence-breaking Pauli pairs never satisfy the sign criterion.
    let mut rng = RngState::new(cfg.seed).stream(1001);
    let mut negative = 0usize;
    for _ in 0..1000 {
        let qa = rng.uniform(0.0, 1.0);
        let qb = rng.uniform(0.0, 1.0);
        let q1 = PauliSpec::new([qa / 2.0, (1.0 - qa) / 2.0, (1.0 - qa) / 2.0, qa / 2.0])?;
        let q2 = PauliSpec::new([qb / 2.0, (1.0 - qb) / 2.0, (1.0 - qb) / 2.0, qb / 2.0])?;
        let (_, enhances) = pauli_criterion(&q1, &q2, rng.uniform(0.0, 1.0))?;
        if enhances {
            negative += 1;
        }
    }
    rows.push(row(
        "C10",
        "Pauli channels that break coherence never gain from assistance",
        "the product of the r coefficients is never negative",
        format!("{negative} of 1000 seeded coherence-breaking pairs show a negative product"),
        Some(negative as f64),
        negative == 0,
    ));

    debug_assert!(rows.iter().all(|r| {
        !r.claim.contains(',') && !r.claimed.contains(',') && !r.computed.contains(',')
    }));
    Ok(rows)
}

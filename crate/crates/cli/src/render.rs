//! Output assembly. Every subcommand renders to any of the three modes;
//! JSON is the machine interface, CSV the plotting interface, text the
//! human one. All renderers are pure string builders with LF endings.

use serde::Serialize;

use crate::check::CheckOutcome;
use crate::report::ReportDocument;
use crate::sweep::{fmt17, SweepRow, SweepSpec};
use crate::verify::ClaimRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Json,
    Csv,
    Text,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output types serialize");
    text.push('\n');
    text
}

pub fn render_report(doc: &ReportDocument, mode: OutputMode) -> String {
    match mode {
        OutputMode::Json => json(doc),
        OutputMode::Csv => {
            let r = &doc.report;
            let mut out = String::from(
                "p_err_unassisted,p_err_assisted,bound,enhancement,s1,s2,s3,s4,best_theta,best_phi\n",
            );
            let fields = [
                r.p_err_unassisted,
                r.p_err_assisted,
                r.bound,
            ];
            for v in fields {
                out.push_str(&fmt17(v));
                out.push(',');
            }
            out.push_str(if r.enhancement_flag { "true" } else { "false" });
            for v in r.delta_singulars.iter().chain([r.best_bloch.theta, r.best_bloch.phi].iter()) {
                out.push(',');
                out.push_str(&fmt17(*v));
            }
            out.push('\n');
            out
        }
        OutputMode::Text => {
            let s = &doc.scenario;
            let r = &doc.report;
            let mut out = String::new();
            out.push_str(&format!(
                "scenario: p1 = {}, channel_a = {}, channel_b = {}\n",
                s.p1,
                s.channel_a.describe(),
                s.channel_b.describe()
            ));
            out.push_str(&format!("p_err_unassisted = {}\n", r.p_err_unassisted));
            out.push_str(&format!("p_err_assisted   = {}\n", r.p_err_assisted));
            out.push_str(&format!("bound            = {}\n", r.bound));
            out.push_str(&format!(
                "delta_singulars  = [{}, {}, {}, {}]\n",
                r.delta_singulars[0], r.delta_singulars[1], r.delta_singulars[2], r.delta_singulars[3]
            ));
            out.push_str(&format!(
                "best_bloch       = (theta = {}, phi = {})\n",
                r.best_bloch.theta, r.best_bloch.phi
            ));
            out.push_str(&format!(
                "best_p           = (x = {}, y = {}, z = {} + {}i)\n",
                r.best_p.x, r.best_p.y, r.best_p.z[0], r.best_p.z[1]
            ));
            out.push_str(&format!("enhancement      = {}\n", r.enhancement_flag));
            if !r.audit_notes.is_empty() {
                out.push_str("notes:\n");
                for note in &r.audit_notes {
                    out.push_str("  - ");
                    out.push_str(note);
                    out.push('\n');
                }
            }
            out
        }
    }
}

pub fn render_sweep(spec: &SweepSpec, rows: &[SweepRow], mode: OutputMode) -> String {
    match mode {
        OutputMode::Json => json(&rows),
        // The sweep's native format is the CSV table either way.
        OutputMode::Csv | OutputMode::Text => crate::sweep::to_csv(spec, rows),
    }
}

pub fn render_claims(rows: &[ClaimRow], mode: OutputMode) -> String {
    match mode {
        OutputMode::Json => json(&rows),
        OutputMode::Csv => {
            let mut out = String::from("id,status,claim,claimed,computed\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.id, r.status, r.claim, r.claimed, r.computed
                ));
            }
            out
        }
        OutputMode::Text => {
            let mut out = String::new();
            let mut pass = 0usize;
            for r in rows {
                out.push_str(&format!(
                    "{:<4} {:<16} {}\n     claimed: {}\n     computed: {}\n",
                    r.id, r.status.to_string(), r.claim, r.claimed, r.computed
                ));
                if r.status == crate::verify::ClaimStatus::Pass {
                    pass += 1;
                }
            }
            out.push_str(&format!(
                "overall: {pass} PASS, {} FAIL-AS-PRINTED of {} claims\n",
                rows.len() - pass,
                rows.len()
            ));
            out
        }
    }
}

pub fn render_check(outcome: &CheckOutcome, mode: OutputMode) -> String {
    match mode {
        OutputMode::Json => json(outcome),
        OutputMode::Csv => format!(
            "kind,kraus_operators,cptp_residual,coherence_breaking\n{},{},{},{}\n",
            outcome.kind,
            outcome.kraus_operators,
            fmt17(outcome.cptp_residual),
            outcome.coherence_breaking
        ),
        OutputMode::Text => format!(
            "kind               = {}\nkraus_operators    = {}\ncptp_residual      = {:e}\ncoherence_breaking = {}\n",
            outcome.kind, outcome.kraus_operators, outcome.cptp_residual, outcome.coherence_breaking
        ),
    }
}

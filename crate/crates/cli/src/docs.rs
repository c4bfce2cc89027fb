//! File formats: the JSON state document, the JSON suite report, and the
//! CSV tables. Amplitudes are stored as [re, im] pairs; serde_json prints
//! f64 with shortest round-trip notation, so re-reading a document
//! reproduces every amplitude bit-exactly. CSV numbers are printed with 17
//! significant digits for the same reason.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use gcs_core::states::{Prepared, StateFamily};
use gcs_core::verify::{CheckVerdict, SuiteReport};
use gcs_core::C64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDoc {
    pub dim: usize,
    pub amplitudes: Vec<[f64; 2]>,
    pub metadata: StateMetadata,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateMetadata {
    pub kind: String,
    pub m: u32,
    pub z: [f64; 2],
    pub u: [f64; 2],
    pub lambda: f64,
    pub n: usize,
    pub phase_fix: [f64; 2],
    pub phasable: bool,
    pub truncation_loss: f64,
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

impl StateDoc {
    pub fn build(family: &StateFamily, prepared: &Prepared) -> StateDoc {
        StateDoc {
            dim: prepared.ket.space.dim,
            amplitudes: prepared.ket.amps.iter().map(|&c| pair(c)).collect(),
            metadata: StateMetadata {
                kind: family.kind.name().to_string(),
                m: family.params.m,
                z: pair(family.params.z),
                u: pair(family.params.u),
                lambda: family.params.lambda,
                n: family.n,
                phase_fix: pair(prepared.meta.phase_fix),
                phasable: prepared.meta.phasable,
                truncation_loss: prepared.meta.truncation_loss,
            },
        }
    }

    pub fn amplitudes(&self) -> Vec<C64> {
        self.amplitudes.iter().map(|&[re, im]| C64::new(re, im)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub timestamp_unix: u64,
    pub environment: EnvironmentDoc,
    pub summary: SummaryDoc,
    pub results: Vec<ResultDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentDoc {
    pub dim: usize,
    pub interior_dim: usize,
    pub tail_tol: f64,
    pub safe_radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryDoc {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub discrepancies_failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDoc {
    pub check_id: String,
    pub params: String,
    pub residual: f64,
    pub tolerance: f64,
    pub verdict: String,
    pub discrepancy: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn verdict_name(v: CheckVerdict) -> &'static str {
    match v {
        CheckVerdict::Pass => "pass",
        CheckVerdict::Fail => "fail",
        CheckVerdict::Skipped => "skipped",
    }
}

impl ReportDoc {
    pub fn build(report: &SuiteReport) -> ReportDoc {
        ReportDoc {
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            environment: EnvironmentDoc {
                dim: report.environment.dim,
                interior_dim: report.environment.interior_dim,
                tail_tol: report.environment.tail_tol,
                safe_radius: report.environment.safe_radius,
            },
            summary: SummaryDoc {
                passed: report.passed,
                failed: report.failed,
                skipped: report.skipped,
                discrepancies_failed: report.discrepancies_failed,
            },
            results: report
                .results
                .iter()
                .map(|r| ResultDoc {
                    check_id: r.check_id.clone(),
                    params: r.params.clone(),
                    residual: r.residual,
                    tolerance: r.tolerance,
                    verdict: verdict_name(r.verdict).to_string(),
                    discrepancy: r.discrepancy,
                    note: r.note.clone(),
                })
                .collect(),
        }
    }
}

/// 17 significant digits: enough for a decimal → f64 → decimal round trip.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn statistics_csv(probs: &[f64]) -> String {
    let mut out = String::from("n,probability\n");
    for (n, p) in probs.iter().enumerate() {
        out.push_str(&format!("{n},{}\n", num(*p)));
    }
    out
}

//! Subcommand implementations. Each returns the process exit code: 0 for
//! success, 1 for genuine check failures or runtime errors, 2 for usage
//! errors (bad syntax, unknown check ids, malformed ranges).

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use gcs_core::analysis::{convergence_diagnostic, number_statistics, Verdict};
use gcs_core::error::Error;
use gcs_core::operators::OperatorParams;
use gcs_core::space::make_space;
use gcs_core::states::{prepare, StateFamily, StateKind};
use gcs_core::verify::{run_suite, CheckVerdict, SuiteConfig};
use gcs_core::C64;

use crate::config::Resolved;
use crate::docs::{self, ReportDoc, StateDoc};

#[derive(Debug)]
pub enum CmdError {
    Usage(String),
    Runtime(String),
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Usage(_) => 2,
            CmdError::Runtime(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CmdError::Usage(m) | CmdError::Runtime(m) => m,
        }
    }
}

pub type CmdResult = Result<i32, CmdError>;

fn runtime(e: impl std::fmt::Display) -> CmdError {
    CmdError::Runtime(format!("{e}"))
}

pub fn parse_kind(name: &str) -> Result<StateKind, CmdError> {
    let normalized = name.replace('-', "_");
    let kind = match normalized.as_str() {
        "fock" => StateKind::Fock,
        "coherent" => StateKind::Coherent,
        "gcs" => StateKind::Gcs,
        "b_plus" => StateKind::BPlus,
        "b_minus" => StateKind::BMinus,
        "superposition" => StateKind::Superposition,
        "cat" => StateKind::Cat,
        "gdf_basis" => StateKind::GdfBasis,
        "dressed_basis" => StateKind::DressedBasis,
        _ => {
            return Err(CmdError::Usage(format!(
                "unknown state kind '{name}' (expected fock, coherent, gcs, b_plus, b_minus, \
                 superposition, cat, gdf_basis, dressed_basis)"
            )))
        }
    };
    Ok(kind)
}

fn write_or_print(path: Option<&Path>, contents: &str) -> Result<(), CmdError> {
    match path {
        Some(p) => std::fs::write(p, contents)
            .map_err(|e| CmdError::Runtime(format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{contents}");
            Ok(())
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn run_gen(
    cfg: &Resolved,
    kind_name: &str,
    m: u32,
    z: C64,
    u: C64,
    lambda: f64,
    n: usize,
    out: Option<&Path>,
    stats: Option<&Path>,
) -> CmdResult {
    let kind = parse_kind(kind_name)?;
    let space = make_space(cfg.dim, cfg.interior_dim, Some(cfg.tail_tol)).map_err(runtime)?;
    let family = StateFamily { kind, params: OperatorParams { m, z, u, lambda }, n };
    let prepared = prepare(space, &family).map_err(runtime)?;
    let doc = StateDoc::build(&family, &prepared);
    let text = serde_json::to_string_pretty(&doc).map_err(runtime)?;
    write_or_print(out, &text)?;
    if let Some(stats_path) = stats {
        let table = docs::statistics_csv(&number_statistics(&prepared.ket).probs);
        write_or_print(Some(stats_path), &table)?;
    }
    eprintln!(
        "generated {}: truncation loss {:.3e}, phase fix {}{}",
        family.kind.name(),
        prepared.meta.truncation_loss,
        crate::complex::format_complex(prepared.meta.phase_fix),
        if prepared.meta.phasable { "" } else { " (phase convention inapplicable)" },
    );
    Ok(0)
}

pub fn run_verify(
    cfg: &Resolved,
    checks: &[String],
    flip_b_sign: bool,
    report_path: Option<&Path>,
) -> CmdResult {
    let suite_cfg = SuiteConfig {
        dim: cfg.dim,
        interior_dim: cfg.interior_dim,
        tail_tol: cfg.tail_tol,
        safe_radius: cfg.safe_radius,
        tol_overrides: cfg.tolerances.clone(),
        flip_b_sign,
        ..SuiteConfig::default()
    };
    let selection = if checks.is_empty() { None } else { Some(checks) };
    let report = run_suite(&suite_cfg, selection.map(|s| &s[..])).map_err(|e| match e {
        Error::UnknownCheck { .. } => CmdError::Usage(format!("{e}")),
        other => runtime(other),
    })?;
    for r in &report.results {
        match r.verdict {
            CheckVerdict::Pass => {}
            CheckVerdict::Fail if r.discrepancy => {
                println!(
                    "DISCREPANCY {} [{}] residual {:.3e} — {}",
                    r.check_id,
                    r.params,
                    r.residual,
                    r.note.as_deref().unwrap_or("")
                );
            }
            CheckVerdict::Fail => {
                println!(
                    "FAIL {} [{}] residual {:.3e} > tolerance {:.1e}",
                    r.check_id, r.params, r.residual, r.tolerance
                );
            }
            CheckVerdict::Skipped => {
                println!(
                    "SKIP {} [{}] — {}",
                    r.check_id,
                    r.params,
                    r.note.as_deref().unwrap_or("")
                );
            }
        }
    }
    println!(
        "suite: {} passed, {} failed, {} skipped, {} documented discrepancies (dim {}, K {})",
        report.passed,
        report.failed,
        report.skipped,
        report.discrepancies_failed,
        report.environment.dim,
        report.environment.interior_dim,
    );
    if let Some(path) = report_path {
        let doc = ReportDoc::build(&report);
        let text = serde_json::to_string_pretty(&doc).map_err(runtime)?;
        std::fs::write(path, text)
            .map_err(|e| CmdError::Runtime(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(if report.genuine_failures() > 0 { 1 } else { 0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Lambda,
    Z,
}

pub fn parse_sweep_param(name: &str) -> Result<SweepParam, CmdError> {
    match name {
        "lambda" => Ok(SweepParam::Lambda),
        "z" => Ok(SweepParam::Z),
        _ => Err(CmdError::Usage(format!("unknown sweep parameter '{name}' (lambda or z)"))),
    }
}

/// "start:stop:step" with step > 0; inclusive of stop up to rounding.
pub fn parse_range(spec: &str) -> Result<Vec<f64>, CmdError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CmdError::Usage(format!("range '{spec}' is not start:stop:step")));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| CmdError::Usage(format!("bad number '{p}' in range '{spec}'")))
        })
        .collect::<Result<_, _>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(step > 0.0) || stop < start {
        return Err(CmdError::Usage(format!("empty range '{spec}'")));
    }
    let mut values = Vec::new();
    let mut k = 0u64;
    loop {
        let v = start + step * k as f64;
        if v > stop + step * 1e-9 {
            break;
        }
        values.push(v);
        k += 1;
    }
    if values.is_empty() {
        return Err(CmdError::Usage(format!("empty range '{spec}'")));
    }
    Ok(values)
}

#[allow(clippy::too_many_arguments)]
pub fn run_sweep(
    cfg: &Resolved,
    param: &str,
    range: &str,
    kind_name: &str,
    m: u32,
    z: C64,
    u: C64,
    lambda: f64,
    n: usize,
    out: Option<&Path>,
) -> CmdResult {
    let param = parse_sweep_param(param)?;
    let values = parse_range(range)?;
    let kind = parse_kind(kind_name)?;
    let space = make_space(cfg.dim, cfg.interior_dim, Some(cfg.tail_tol)).map_err(runtime)?;
    let mut table = String::from("value,overlap0_re,overlap0_im,p0,truncation_loss\n");
    for &v in &values {
        let params = match param {
            SweepParam::Lambda => OperatorParams { m, z, u, lambda: v },
            SweepParam::Z => OperatorParams { m, z: C64::new(v, 0.0), u, lambda },
        };
        let prepared = prepare(space, &StateFamily { kind, params, n }).map_err(runtime)?;
        let ov = prepared.ket.amps[0];
        let _ = writeln!(
            table,
            "{},{},{},{},{}",
            docs::num(v),
            docs::num(ov.re),
            docs::num(ov.im),
            docs::num(ov.norm_sqr()),
            docs::num(prepared.meta.truncation_loss),
        );
    }
    write_or_print(out, &table)?;
    Ok(0)
}

#[derive(Debug, Serialize)]
struct ConvergeDoc {
    m: u32,
    z: [f64; 2],
    dims: Vec<usize>,
    deltas: Vec<f64>,
    threshold: f64,
    verdict: String,
}

pub fn run_converge(
    m: u32,
    z: C64,
    dims_spec: &str,
    threshold: f64,
    out: Option<&Path>,
) -> CmdResult {
    let dims: Vec<usize> = dims_spec
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| CmdError::Usage(format!("bad dimension '{p}' in '{dims_spec}'")))
        })
        .collect::<Result<_, _>>()?;
    if dims.len() < 2 {
        return Err(CmdError::Usage(format!(
            "need at least two dimensions to compare, got '{dims_spec}'"
        )));
    }
    let report = convergence_diagnostic(m, z, &dims, threshold).map_err(runtime)?;
    let verdict = match report.verdict {
        Verdict::Converged => "converged",
        Verdict::NotConverged => "not-converged",
    };
    for (w, delta) in report.dims.windows(2).zip(&report.deltas) {
        println!("dims {} -> {}: infidelity {:.3e}", w[0], w[1], delta);
    }
    println!("verdict: {verdict} (threshold {threshold:.1e})");
    if let Some(path) = out {
        let doc = ConvergeDoc {
            m,
            z: [z.re, z.im],
            dims: report.dims.clone(),
            deltas: report.deltas.clone(),
            threshold,
            verdict: verdict.to_string(),
        };
        let text = serde_json::to_string_pretty(&doc).map_err(runtime)?;
        std::fs::write(path, text)
            .map_err(|e| CmdError::Runtime(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_grid() {
        let v = parse_range("0:1:0.25").unwrap();
        assert_eq!(v.len(), 5);
        assert!((v[4] - 1.0).abs() < 1e-12);
        assert!(parse_range("1:0:0.1").is_err());
        assert!(parse_range("0:1:-0.1").is_err());
        assert!(parse_range("0:1").is_err());
        assert!(parse_range("0:x:1").is_err());
    }

    #[test]
    fn kind_names() {
        assert_eq!(parse_kind("gcs").unwrap(), StateKind::Gcs);
        assert_eq!(parse_kind("b-plus").unwrap(), StateKind::BPlus);
        assert!(parse_kind("squeezed").is_err());
    }
}

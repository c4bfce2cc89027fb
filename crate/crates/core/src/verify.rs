//! The equation-indexed verification suite. Every identity the operator
//! construction rests on is a named, parameterized check producing a residual
//! and a verdict; printed-but-incorrect source forms run too, flagged as
//! discrepancies so the report documents them without failing the suite.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::analysis::{fidelity, off_support_mass};
use crate::error::Error;
use crate::fock::{
    edge_residual, hermiticity_residual, inner, ladder_ops, mat_exp, Ket, Op,
};
use crate::operators::{
    displacement, generalized_displacement_unchecked, parity_cos, parity_cos_value, parity_sin,
    u_evolution_unchecked, v_operator_unchecked, UMethod,
};
use crate::space::{make_space, FockSpace};
use crate::states::{b_eigenstates, coherent, gcs, BPair};
use crate::{Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckVerdict {
    Pass,
    Fail,
    Skipped,
}

/// One named check at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub check_id: String,
    pub params: String,
    pub residual: f64,
    pub tolerance: f64,
    pub verdict: CheckVerdict,
    /// Marks checks of printed-but-incorrect source forms: they are expected
    /// to fail and do not count as suite failures.
    pub discrepancy: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteEnvironment {
    pub dim: usize,
    pub interior_dim: usize,
    pub tail_tol: f64,
    pub safe_radius: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub environment: SuiteEnvironment,
    pub results: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub discrepancies_failed: usize,
}

impl SuiteReport {
    /// Failures that are not documented paper discrepancies.
    pub fn genuine_failures(&self) -> usize {
        self.failed
    }
}

/// Parameter grid and environment for a suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub dim: usize,
    pub interior_dim: Option<usize>,
    pub tail_tol: f64,
    pub ms: Vec<u32>,
    pub zs: Vec<C64>,
    pub lambdas: Vec<f64>,
    pub us: Vec<C64>,
    pub safe_radius: f64,
    /// Per-check tolerance overrides, `(check_id, tolerance)`.
    pub tol_overrides: Vec<(String, f64)>,
    /// Fault-injection canary: flip the creation-term sign in the `B_m`
    /// generator, which must break the hermiticity check.
    pub flip_b_sign: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let quarter_pi = core::f64::consts::FRAC_PI_4;
        SuiteConfig {
            dim: 128,
            interior_dim: None,
            tail_tol: crate::space::DEFAULT_TAIL_TOL,
            ms: vec![1, 2, 3],
            zs: vec![C64::new(0.2, 0.0), C64::new(0.5, 0.3)],
            lambdas: vec![0.0, 0.7, quarter_pi, 2.0 * quarter_pi],
            us: vec![C64::new(0.0, 0.4)],
            safe_radius: crate::operators::DEFAULT_SAFE_RADIUS,
            tol_overrides: Vec::new(),
            flip_b_sign: false,
        }
    }
}

/// Per-(m, z) operator bundle, built once per suite run.
struct PointOps {
    d: Op,
    b: Op,
    zm_raw: Ket,
    zm: Ket,
    pair: BPair,
}

struct Point {
    m: u32,
    z: C64,
    ops: core::result::Result<PointOps, String>,
}

struct Grid {
    space: FockSpace,
    points: Vec<Point>,
    /// Coherent state per z, or the skip reason.
    coherents: Vec<(C64, core::result::Result<Ket, String>)>,
}

struct Emitter<'a> {
    cfg: &'a SuiteConfig,
    out: Vec<CheckResult>,
}

impl Emitter<'_> {
    fn tol_for(&self, id: &str, default: f64) -> f64 {
        self.cfg
            .tol_overrides
            .iter()
            .rev()
            .find(|(k, _)| k == id)
            .map(|(_, t)| *t)
            .unwrap_or(default)
    }

    fn emit(&mut self, id: &str, params: String, residual: f64, tol: f64, discrepancy: bool) {
        self.emit_note(id, params, residual, tol, discrepancy, None);
    }

    fn emit_note(
        &mut self,
        id: &str,
        params: String,
        residual: f64,
        tol: f64,
        discrepancy: bool,
        note: Option<String>,
    ) {
        let tolerance = self.tol_for(id, tol);
        let verdict = if residual <= tolerance { CheckVerdict::Pass } else { CheckVerdict::Fail };
        self.out.push(CheckResult {
            check_id: id.to_owned(),
            params,
            residual,
            tolerance,
            verdict,
            discrepancy,
            note,
        });
    }

    fn skip(&mut self, id: &str, params: String, reason: &str) {
        self.out.push(CheckResult {
            check_id: id.to_owned(),
            params,
            residual: 0.0,
            tolerance: 0.0,
            verdict: CheckVerdict::Skipped,
            discrepancy: false,
            note: Some(format!("skipped: {reason}")),
        });
    }
}

type CheckFn = fn(&SuiteConfig, &Grid, &mut Emitter);

struct CheckDef {
    id: &'static str,
    /// Source-equation tags this check exercises, for the registry audit.
    covers: &'static [&'static str],
    run: CheckFn,
}

/// All source-equation tags the registry must cover.
pub const EQUATION_TAGS: &[&str] = &[
    "eq1", "eq2", "eq3", "eq4", "eq5", "eq6", "eq7", "eq8", "eq9", "eq10", "eq11a", "eq12a",
    "eq13a", "eq14a", "eq15a", "eq16a", "eq17a", "eq18a", "eq19a", "eq20a", "eq21a", "eq22a",
    "eq23a", "eq24a", "eq25a", "eq26a", "eq27a", "eq28a", "eq29a", "eq30a", "eq31a", "eq32a",
    "eq33a", "eq34a", "eq35a", "eq36a", "eq37a", "eq38a", "eq39a", "sec3-parity-cos-action",
    "sec3-parity-sin-action", "sec3-support", "sec5-reality",
];

static REGISTRY: &[CheckDef] = &[
    CheckDef { id: "basis-gram-orthonormality", covers: &["eq37a"], run: check_gram },
    CheckDef { id: "eq11a-rotation", covers: &["eq11a", "eq12a"], run: check_rotation },
    CheckDef { id: "eq13a-anticommutation", covers: &["eq13a"], run: check_anticommutation },
    CheckDef { id: "eq13a-printed-a2m", covers: &["eq13a"], run: check_anticommutation_printed },
    CheckDef { id: "eq15a-hermiticity", covers: &["eq5", "eq14a", "eq15a"], run: check_hermiticity },
    CheckDef { id: "eq17a-generation", covers: &["eq16a", "eq17a"], run: check_generation },
    CheckDef { id: "eq18a-annihilation-return", covers: &["eq18a"], run: check_return },
    CheckDef { id: "eq19a-eigenpair", covers: &["eq7", "eq19a"], run: check_eigenpair },
    CheckDef { id: "eq1-ladder", covers: &["eq1"], run: check_ladder },
    CheckDef { id: "eq20a-normalization", covers: &["eq20a"], run: check_normalization },
    CheckDef {
        id: "eq22a-superposition-form",
        covers: &["eq9", "eq10", "eq21a", "eq22a"],
        run: check_superposition_form,
    },
    CheckDef { id: "eq24a-square", covers: &["eq23a", "eq24a", "eq25a"], run: check_square },
    CheckDef { id: "eq26a-closed-form-agreement", covers: &["eq26a"], run: check_closed_form },
    CheckDef { id: "eq27a-u1-form", covers: &["eq27a"], run: check_u1_form },
    CheckDef { id: "eq28a-u2-form", covers: &["eq28a"], run: check_u2_form },
    CheckDef { id: "eq29a-composition", covers: &["eq29a"], run: check_composition },
    CheckDef { id: "eq2-eigenstate", covers: &["eq2", "eq3"], run: check_coherent },
    CheckDef { id: "eq31a-v1-form", covers: &["eq30a", "eq31a"], run: check_v1_form },
    CheckDef { id: "eq32a-v1-action", covers: &["eq32a"], run: check_v1_action },
    CheckDef { id: "eq33a-cat-amplitude", covers: &["eq33a"], run: check_cat },
    CheckDef { id: "eq33a-printed-prefactor", covers: &["eq33a"], run: check_cat_printed },
    CheckDef { id: "eq35a-expansion", covers: &["eq34a", "eq35a"], run: check_v_expansion },
    CheckDef { id: "eq36a-candidates", covers: &["eq36a"], run: check_v_action_candidates },
    CheckDef {
        id: "eq38a-dressed-basis",
        covers: &["eq37a", "eq38a"],
        run: check_dressed_basis,
    },
    CheckDef { id: "eq39a-statistics-identity", covers: &["eq39a"], run: check_statistics },
    CheckDef { id: "eq4-composition", covers: &["eq4"], run: check_displacement_composition },
    CheckDef { id: "eq6-return-to-vacuum", covers: &["eq6"], run: check_return_to_vacuum_entry },
    CheckDef {
        id: "eq8-vacuum-decomposition",
        covers: &["eq8"],
        run: check_vacuum_decomposition_entry,
    },
    CheckDef {
        id: "sec3-parity-action-pair",
        covers: &["sec3-parity-cos-action", "sec3-parity-sin-action"],
        run: check_parity_action,
    },
    CheckDef { id: "sec3-support-multiples", covers: &["sec3-support"], run: check_support },
    CheckDef { id: "sec5-diagonal-reality", covers: &["sec5-reality"], run: check_reality },
];

pub fn check_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.id).collect()
}

/// Equation tags with no covering check; must be empty.
pub fn registry_audit() -> Vec<&'static str> {
    EQUATION_TAGS
        .iter()
        .filter(|tag| !REGISTRY.iter().any(|c| c.covers.contains(tag)))
        .copied()
        .collect()
}

/// Execute the registry over the configured grid, optionally restricted to a
/// selection of check ids. Results are sorted by (check_id, params); two runs
/// with the same config produce identical reports.
pub fn run_suite(cfg: &SuiteConfig, selection: Option<&[String]>) -> Result<SuiteReport> {
    if let Some(sel) = selection {
        for id in sel {
            if !REGISTRY.iter().any(|c| c.id == id) {
                return Err(Error::UnknownCheck { id: id.clone() });
            }
        }
    }
    if cfg.ms.is_empty() || cfg.zs.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let space = make_space(cfg.dim, cfg.interior_dim, Some(cfg.tail_tol))?;
    let grid = build_grid(cfg, space)?;
    let mut emitter = Emitter { cfg, out: Vec::new() };
    for check in REGISTRY {
        if let Some(sel) = selection {
            if !sel.iter().any(|id| id == check.id) {
                continue;
            }
        }
        (check.run)(cfg, &grid, &mut emitter);
    }
    let mut results = emitter.out;
    results.sort_by(|a, b| (a.check_id.as_str(), a.params.as_str())
        .cmp(&(b.check_id.as_str(), b.params.as_str())));
    let mut passed = 0;
    let mut failed = 0;
    let mut skipped = 0;
    let mut discrepancies_failed = 0;
    for r in &results {
        match (r.verdict, r.discrepancy) {
            (CheckVerdict::Pass, _) => passed += 1,
            (CheckVerdict::Fail, true) => discrepancies_failed += 1,
            (CheckVerdict::Fail, false) => failed += 1,
            (CheckVerdict::Skipped, _) => skipped += 1,
        }
    }
    Ok(SuiteReport {
        environment: SuiteEnvironment {
            dim: space.dim,
            interior_dim: space.interior_dim,
            tail_tol: space.tail_tol,
            safe_radius: cfg.safe_radius,
        },
        results,
        passed,
        failed,
        skipped,
        discrepancies_failed,
    })
}

fn build_grid(cfg: &SuiteConfig, space: FockSpace) -> Result<Grid> {
    let mut points = Vec::new();
    for &m in &cfg.ms {
        for &z in &cfg.zs {
            let ops = build_point(cfg, space, m, z);
            points.push(Point { m, z, ops });
        }
    }
    let coherents = cfg
        .zs
        .iter()
        .map(|&z| {
            (z, coherent(space, z).map_err(|e| format!("{e}")))
        })
        .collect();
    Ok(Grid { space, points, coherents })
}

fn build_point(
    cfg: &SuiteConfig,
    space: FockSpace,
    m: u32,
    z: C64,
) -> core::result::Result<PointOps, String> {
    if m >= 3 && z.norm() > cfg.safe_radius {
        return Err(format!(
            "|z| = {:.3} beyond safe radius {} for m = {m}",
            z.norm(),
            cfg.safe_radius
        ));
    }
    let build = || -> Result<PointOps> {
        let d = generalized_displacement_unchecked(space, m, z)?;
        let b = build_b(space, m, z, cfg.flip_b_sign)?;
        let zm_raw = d.apply(&Ket::vacuum(space))?;
        let prepared = gcs(space, m, z)?;
        let pair = b_eigenstates(space, m, z)?;
        Ok(PointOps { d, b, zm_raw, zm: prepared.ket, pair })
    };
    build().map_err(|e| format!("{e}"))
}

/// `B_m(z)`, optionally with the creation-term sign flipped in the generator.
/// The flipped generator is hermitian instead of anti-hermitian, so the
/// resulting product cannot be hermitian: the suite's deliberate-bug canary.
fn build_b(space: FockSpace, m: u32, z: C64, flip: bool) -> Result<Op> {
    let (a, _, _) = ladder_ops(space);
    let mut am = Op::identity(space);
    for _ in 0..m {
        am = am.mul(&a)?;
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let coeff = C64::new(sign / m as f64, 0.0);
    let creation_term = am.adjoint().scale(coeff * z);
    let generator = if flip {
        am.scale(coeff * z.conj()).add(&creation_term)?
    } else {
        am.scale(coeff * z.conj()).sub(&creation_term)?
    };
    mat_exp(&generator)?.mul(&parity_cos(space, m))
}

fn fmt_z(z: C64) -> String {
    format!("{:+.4}{:+.4}i", z.re, z.im)
}

fn point_params(p: &Point) -> String {
    format!("m={} z={}", p.m, fmt_z(p.z))
}

// ---------------------------------------------------------------------------
// check implementations
// ---------------------------------------------------------------------------

fn check_ladder(_cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let s = grid.space;
    let (a, a_dag, number) = ladder_ops(s);
    let comm = a
        .mul(&a_dag)
        .and_then(|aa| aa.sub(&a_dag.mul(&a).unwrap()))
        .and_then(|c| c.sub(&Op::identity(s)))
        .unwrap();
    em.emit("eq1-ladder", format!("N={} part=commutator", s.dim), edge_residual(s, &comm), 1e-12, false);
    let num_defect = a_dag.mul(&a).unwrap().sub(&number).unwrap();
    em.emit("eq1-ladder", format!("N={} part=number", s.dim), edge_residual(s, &num_defect), 1e-12, false);
}

fn check_coherent(_cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let s = grid.space;
    let (a, _, _) = ladder_ops(s);
    for (z, coh) in &grid.coherents {
        let params = |part: &str| format!("z={} part={part}", fmt_z(*z));
        let ket = match coh {
            Ok(k) => k,
            Err(reason) => {
                for part in ["eigenstate", "vacuum-overlap", "displacement-action"] {
                    em.skip("eq2-eigenstate", params(part), reason);
                }
                continue;
            }
        };
        let defect = a.apply(ket).unwrap().sub(&ket.scale(*z)).unwrap();
        em.emit("eq2-eigenstate", params("eigenstate"), defect.interior_norm(), 1e-10, false);
        let overlap = ket.amps[0];
        let expect = libm::exp(-z.norm_sqr() / 2.0);
        em.emit(
            "eq2-eigenstate",
            params("vacuum-overlap"),
            (overlap - C64::new(expect, 0.0)).norm(),
            1e-12,
            false,
        );
        let displaced = displacement(s, *z).apply(&Ket::vacuum(s)).unwrap();
        let fid = fidelity(&displaced.normalized(), ket).unwrap();
        em.emit("eq2-eigenstate", params("displacement-action"), 1.0 - fid, 1e-10, false);
    }
}

fn check_displacement_composition(cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let s = grid.space;
    for &z in &cfg.zs {
        let d = displacement(s, z);
        let adj_defect = d.adjoint().sub(&displacement(s, -z)).unwrap();
        em.emit(
            "eq4-composition",
            format!("z={} part=adjoint", fmt_z(z)),
            edge_residual(s, &adj_defect),
            1e-10,
            false,
        );
        for &zp in &cfg.zs {
            let lhs = d.mul(&displacement(s, zp)).unwrap();
            let phase = C64::new(0.0, (z * zp.conj()).im).exp();
            let rhs = displacement(s, z + zp).scale(phase);
            em.emit(
                "eq4-composition",
                format!("z={} z'={} part=product", fmt_z(z), fmt_z(zp)),
                edge_residual(s, &lhs.sub(&rhs).unwrap()),
                1e-9,
                false,
            );
        }
    }
}

fn check_hermiticity(_cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    for p in &grid.points {
        match &p.ops {
            Ok(ops) => {
                em.emit("eq15a-hermiticity", point_params(p), hermiticity_residual(&ops.b), 1e-9, false)
            }
            Err(reason) => em.skip("eq15a-hermiticity", point_params(p), reason),
        }
    }
}

fn check_rotation(cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let s = grid.space;
    let (a, _, _) = ladder_ops(s);
    for &m in &cfg.ms {
        let e = crate::operators::number_rotation(s, m);
        let lhs = e.adjoint().mul(&a).unwrap().mul(&e).unwrap();
        let rhs = a.scale(C64::new(0.0, core::f64::consts::PI / m as f64).exp());
        em.emit(
            "eq11a-rotation",
            format!("m={m} part=conjugation"),
            edge_residual(s, &lhs.sub(&rhs).unwrap()),
            1e-10,
            false,
        );
        // cos(pi/m a†a) = (E + E†)/2
        let half_sum = e.add(&e.adjoint()).unwrap().scale(C64::new(0.5, 0.0));
        let defect = half_sum.sub(&parity_cos(s, m)).unwrap();
        em.emit(
            "eq11a-rotation",
            format!("m={m} part=cos-decomposition"),
            edge_residual(s, &defect),
            1e-12,
            false,
        );
    }
}

fn op_pow(base: &Op, m: u32) -> Op {
    let mut out = Op::identity(base.space);
    for _ in 0..m {
        out = out.mul(base).unwrap();
    }
    out
}

fn check_anticommutation(_cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let s = grid.space;
    let (a, _, _) = ladder_ops(s);
    for m in 1..=5u32 {
        let cos_op = parity_cos(s, m);
        let am = op_pow(&a, m);
        let anti = cos_op.mul(&am).unwrap().add(&am.mul(&cos_op).unwrap()).unwrap();
        em.emit(
            "eq13a-anticommutation",
            format!("m={m} part=anticommutator-am"),
            edge_residual(s, &anti),
            1e-12,
            false,
        );
        let a2m = op_pow(&a, 2 * m);
        let comm = cos_op.mul(&a2m).unwrap().sub(&a2m.mul(&cos_op).unwrap()).unwrap();
        em.emit(
            "eq13a-anticommutation",
            format!("m={m} part=commutator-a2m"),
            edge_residual(s, &comm),
            1e-12,
            false,
        );
        let sin_op = parity_sin(s, m);
        let anti_sin = sin_op.mul(&am).unwrap().add(&am.mul(&sin_op).unwrap()).unwrap();
        em.emit(
            "eq13a-anticommutation",
            format!("m={m} part=sin-anticommutator-am"),
            edge_residual(s, &anti_sin),
            1e-12,
            false,
        );
    }
}

fn check_anticommutation_printed(_cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    // As printed, the anticommutator pairs cos(pi/m a†a) with a^{2m}; the
    // operator it actually anticommutes with is a^m (a^{2m} commutes instead).
    let s = grid.space;
    let (a, _, _) = ladder_ops(s);
    for m in 1..=5u32 {
        let cos_op = parity_cos(s, m);
        let a2m = op_pow(&a, 2 * m);
        let anti = cos_op.mul(&a2m).unwrap().add(&a2m.mul(&cos_op).unwrap()).unwrap();
        em.emit_note(
            "eq13a-printed-a2m",
            format!("m={m}"),
            edge_residual(s, &anti),
            1e-8,
            true,
            Some("paper-discrepancy: printed form pairs cos with a^{2m}; the identity holds for a^m".into()),
        );
    }
}

fn check_generation(_cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    for p in &grid.points {
        match &p.ops {
            Ok(ops) => {
                let out = ops.b.apply(&Ket::vacuum(grid.space)).unwrap();
                let defect = out.sub(&ops.zm_raw).unwrap();
                em.emit("eq17a-generation", point_params(p), defect.interior_norm(), 1e-12, false);
            }
            Err(reason) => em.skip("eq17a-generation", point_params(p), reason),
        }
    }
}

fn check_return(_cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    for p in &grid.points {
        match &p.ops {
            Ok(ops) => {
                let out = ops.b.apply(&ops.zm).unwrap();
                let defect = out.sub(&Ket::vacuum(grid.space)).unwrap();
                em.emit(
                    "eq18a-annihilation-return",
                    point_params(p),
                    defect.interior_norm(),
                    1e-9,
                    false,
                );
            }
            Err(reason) => em.skip("eq18a-annihilation-return", point_params(p), reason),
        }
    }
}

fn check_return_to_vacuum_m1(grid: &Grid, em: &mut Emitter) {
    let s = grid.space;
    for (z, coh) in &grid.coherents {
        let params = format!("m=1 z={}", fmt_z(*z));
        match coh {
            Ok(ket) => {
                let b = crate::operators::parity_displacement(s, 1, *z).unwrap();
                let fid = fidelity(&b.apply(ket).unwrap().normalized(), &Ket::vacuum(s)).unwrap();
                em.emit("eq6-return-to-vacuum", params, 1.0 - fid, 1e-9, false);
            }
            Err(reason) => em.skip("eq6-return-to-vacuum", params, reason),
        }
    }
}

fn check_eigenpair(_cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    for p in &grid.points {
        let params = |part: &str| format!("{} part={part}", point_params(p));
        match &p.ops {
            Ok(ops) => {
                let plus_defect =
                    ops.b.apply(&ops.pair.plus).unwrap().sub(&ops.pair.plus).unwrap();
                em.emit("eq19a-eigenpair", params("plus"), plus_defect.interior_norm(), 1e-8, false);
                let minus_defect =
                    ops.b.apply(&ops.pair.minus).unwrap().add(&ops.pair.minus).unwrap();
                em.emit("eq19a-eigenpair", params("minus"), minus_defect.interior_norm(), 1e-8, false);
                let ortho = inner(&ops.pair.plus, &ops.pair.minus).unwrap().norm();
                em.emit("eq19a-eigenpair", params("orthogonality"), ortho, 1e-10, false);
            }
            Err(reason) => {
                for part in ["plus", "minus", "orthogonality"] {
                    em.skip("eq19a-eigenpair", params(part), reason);
                }
            }
        }
    }
}

fn check_vacuum_decomposition(grid: &Grid, em: &mut Emitter) {
    for p in &grid.points {
        match &p.ops {
            Ok(ops) => {
                let recon = ops
                    .pair
                    .plus
                    .scale(C64::new(ops.pair.n_plus / 2.0, 0.0))
                    .add(&ops.pair.minus.scale(C64::new(ops.pair.n_minus / 2.0, 0.0)))
                    .unwrap();
                let defect = recon.sub(&Ket::vacuum(grid.space)).unwrap();
                em.emit("eq8-vacuum-decomposition", point_params(p), defect.norm(), 1e-10, false);
            }
            Err(reason) => em.skip("eq8-vacuum-decomposition", point_params(p), reason),
        }
    }
}

fn check_normalization(_cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    for p in &grid.points {
        let params = |part: &str| format!("{} part={part}", point_params(p));
        match &p.ops {
            Ok(ops) => {
                let vac = Ket::vacuum(grid.space);
                let plus_norm = vac.add(&ops.zm).unwrap().norm();
                let minus_norm = vac.sub(&ops.zm).unwrap().norm();
                em.emit(
                    "eq20a-normalization",
                    params("plus"),
                    (plus_norm - ops.pair.n_plus).abs(),
                    1e-10,
                    false,
                );
                em.emit(
                    "eq20a-normalization",
                    params("minus"),
                    (minus_norm - ops.pair.n_minus).abs(),
                    1e-10,
                    false,
                );
            }
            Err(reason) => {
                for part in ["plus", "minus"] {
                    em.skip("eq20a-normalization", params(part), reason);
                }
            }
        }
    }
}

fn check_superposition_form(cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let s = grid.space;
    for p in &grid.points {
        for &lambda in &cfg.lambdas {
            let params =
                |part: &str| format!("{} lambda={lambda:.4} part={part}", point_params(p));
            match &p.ops {
                Ok(ops) => {
                    let u = crate::fock::exp_i_hermitian(&ops.b, lambda).unwrap();
                    let acted = u.apply(&Ket::vacuum(s)).unwrap();
                    let expect = Ket::vacuum(s)
                        .scale(C64::new(libm::cos(lambda), 0.0))
                        .add(&ops.zm.scale(C64::new(0.0, libm::sin(lambda))))
                        .unwrap();
                    let defect = acted.sub(&expect).unwrap();
                    em.emit("eq22a-superposition-form", params("coherent-pair"), defect.interior_norm(), 1e-9, false);
                    // the same action in the eigenpair basis
                    let b_basis = ops
                        .pair
                        .plus
                        .scale(C64::new(ops.pair.n_plus / 2.0, 0.0) * C64::new(0.0, lambda).exp())
                        .add(&ops.pair.minus.scale(
                            C64::new(ops.pair.n_minus / 2.0, 0.0) * C64::new(0.0, -lambda).exp(),
                        ))
                        .unwrap();
                    let defect_b = acted.sub(&b_basis).unwrap();
                    em.emit("eq22a-superposition-form", params("b-basis"), defect_b.interior_norm(), 1e-9, false);
                }
                Err(reason) => {
                    for part in ["coherent-pair", "b-basis"] {
                        em.skip("eq22a-superposition-form", params(part), reason);
                    }
                }
            }
        }
    }
}

fn check_square(_cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let s = grid.space;
    for p in &grid.points {
        let params = |part: &str| format!("{} part={part}", point_params(p));
        match &p.ops {
            Ok(ops) => {
                let cos2 = crate::fock::diag_fn_re(s, "cos^2", |n| {
                    let c = parity_cos_value(p.m, n);
                    c * c
                });
                let b2 = ops.b.mul(&ops.b).unwrap();
                em.emit(
                    "eq24a-square",
                    params("square"),
                    edge_residual(s, &b2.sub(&cos2).unwrap()),
                    1e-8,
                    false,
                );
                let cos4 = crate::fock::diag_fn_re(s, "cos^4", |n| {
                    let c = parity_cos_value(p.m, n);
                    c * c * c * c
                });
                let b4 = b2.mul(&b2).unwrap();
                em.emit(
                    "eq24a-square",
                    params("fourth-power"),
                    edge_residual(s, &b4.sub(&cos4).unwrap()),
                    1e-8,
                    false,
                );
            }
            Err(reason) => {
                for part in ["square", "fourth-power"] {
                    em.skip("eq24a-square", params(part), reason);
                }
            }
        }
    }
}

fn check_closed_form(cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let s = grid.space;
    for p in &grid.points {
        for &lambda in &cfg.lambdas {
            let params = format!("{} lambda={lambda:.4}", point_params(p));
            match &p.ops {
                Ok(ops) => {
                    let via_exp = crate::fock::exp_i_hermitian(&ops.b, lambda).unwrap();
                    let via_closed =
                        u_evolution_unchecked(s, p.m, p.z, lambda, UMethod::ClosedForm).unwrap();
                    let defect = via_exp.sub(&via_closed).unwrap();
                    em.emit("eq26a-closed-form-agreement", params, edge_residual(s, &defect), 1e-8, false);
                }
                Err(reason) => em.skip("eq26a-closed-form-agreement", params, reason),
            }
        }
    }
}

fn check_u1_form(cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let s = grid.space;
    if !cfg.ms.contains(&1) {
        return;
    }
    for &z in &cfg.zs {
        for &lambda in &cfg.lambdas {
            let u = u_evolution_unchecked(s, 1, z, lambda, UMethod::ClosedForm).unwrap();
            let expect = Op::identity(s)
                .scale(C64::new(libm::cos(lambda), 0.0))
                .add(
                    &displacement(s, z)
                        .mul(&parity_cos(s, 1))
                        .unwrap()
                        .scale(C64::new(0.0, libm::sin(lambda))),
                )
                .unwrap();
            em.emit(
                "eq27a-u1-form",
                format!("z={} lambda={lambda:.4}", fmt_z(z)),
                edge_residual(s, &u.sub(&expect).unwrap()),
                1e-10,
                false,
            );
        }
    }
}

fn check_u2_form(cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let s = grid.space;
    if !cfg.ms.contains(&2) {
        return;
    }
    for &z in &cfg.zs {
        for &lambda in &cfg.lambdas {
            let u = u_evolution_unchecked(s, 2, z, lambda, UMethod::ClosedForm).unwrap();
            let cos_half = parity_cos(s, 2);
            let cos_sq = cos_half.mul(&cos_half).unwrap();
            let sin_half = parity_sin(s, 2);
            let sin_sq = sin_half.mul(&sin_half).unwrap();
            let d2 = generalized_displacement_unchecked(s, 2, z).unwrap();
            let expect = sin_sq
                .add(&cos_sq.scale(C64::new(libm::cos(lambda), 0.0)))
                .unwrap()
                .add(&d2.mul(&cos_half).unwrap().scale(C64::new(0.0, libm::sin(lambda))))
                .unwrap();
            em.emit(
                "eq28a-u2-form",
                format!("z={} lambda={lambda:.4}", fmt_z(z)),
                edge_residual(s, &u.sub(&expect).unwrap()),
                1e-10,
                false,
            );
        }
    }
}

fn check_composition(cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let s = grid.space;
    for p in &grid.points {
        for (i, &l1) in cfg.lambdas.iter().enumerate() {
            for &l2 in cfg.lambdas.iter().skip(i) {
                let params = format!(
                    "{} lambda={l1:.4} lambda'={l2:.4}",
                    point_params(p)
                );
                match &p.ops {
                    Ok(_) => {
                        let u1 = u_evolution_unchecked(s, p.m, p.z, l1, UMethod::ClosedForm).unwrap();
                        let u2 = u_evolution_unchecked(s, p.m, p.z, l2, UMethod::ClosedForm).unwrap();
                        let sum =
                            u_evolution_unchecked(s, p.m, p.z, l1 + l2, UMethod::ClosedForm).unwrap();
                        let defect = u1.mul(&u2).unwrap().sub(&sum).unwrap();
                        em.emit("eq29a-composition", params, edge_residual(s, &defect), 1e-8, false);
                    }
                    Err(reason) => em.skip("eq29a-composition", params, reason),
                }
            }
        }
    }
}

fn check_v1_form(cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let s = grid.space;
    if !cfg.ms.contains(&1) {
        return;
    }
    for &z in &cfg.zs {
        for &u in &cfg.us {
            for &lambda in &cfg.lambdas {
                let v = v_operator_unchecked(s, 1, z, u, lambda).unwrap();
                let phase = C64::new(0.0, (u * z.conj()).im).exp();
                let expect = displacement(s, u)
                    .scale(C64::new(libm::cos(lambda), 0.0))
                    .add(
                        &crate::operators::parity_displacement(s, 1, z)
                            .unwrap()
                            .scale(C64::new(0.0, libm::sin(lambda)) * phase),
                    )
                    .unwrap();
                em.emit(
                    "eq31a-v1-form",
                    format!("z={} u={} lambda={lambda:.4}", fmt_z(z), fmt_z(u)),
                    edge_residual(s, &v.sub(&expect).unwrap()),
                    1e-9,
                    false,
                );
            }
        }
    }
}

fn check_v1_action(cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let s = grid.space;
    if !cfg.ms.contains(&1) {
        return;
    }
    for (z, coh) in &grid.coherents {
        for &u in &cfg.us {
            for &lambda in &cfg.lambdas {
                let params = format!("z={} u={} lambda={lambda:.4}", fmt_z(*z), fmt_z(u));
                let zket = match coh {
                    Ok(k) => k,
                    Err(reason) => {
                        em.skip("eq32a-v1-action", params, reason);
                        continue;
                    }
                };
                let uket = match coherent(s, u) {
                    Ok(k) => k,
                    Err(e) => {
                        em.skip("eq32a-v1-action", params, &format!("{e}"));
                        continue;
                    }
                };
                let v = v_operator_unchecked(s, 1, *z, u, lambda).unwrap();
                let acted = v.apply(&Ket::vacuum(s)).unwrap();
                let phase = C64::new(0.0, (u * z.conj()).im).exp();
                let expect = uket
                    .scale(C64::new(libm::cos(lambda), 0.0))
                    .add(&zket.scale(C64::new(0.0, libm::sin(lambda)) * phase))
                    .unwrap();
                let defect = acted.sub(&expect).unwrap();
                em.emit("eq32a-v1-action", params, defect.interior_norm(), 1e-9, false);
            }
        }
    }
}

fn check_cat(cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let s = grid.space;
    if !cfg.ms.contains(&1) {
        return;
    }
    let quarter_pi = core::f64::consts::FRAC_PI_4;
    for (z, coh) in &grid.coherents {
        let params = |part: &str| format!("z={} part={part}", fmt_z(*z));
        let zket = match coh {
            Ok(k) => k,
            Err(reason) => {
                for part in ["fidelity", "norm"] {
                    em.skip("eq33a-cat-amplitude", params(part), reason);
                }
                continue;
            }
        };
        let neg = coherent(s, -*z).unwrap();
        let v = v_operator_unchecked(s, 1, *z, -*z, quarter_pi).unwrap();
        let acted = v.apply(&Ket::vacuum(s)).unwrap();
        let sqrt2_inv = C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        let expect = neg.add(&zket.scale(C64::new(0.0, 1.0))).unwrap().scale(sqrt2_inv);
        let fid = fidelity(&acted.normalized(), &expect.normalized()).unwrap();
        em.emit("eq33a-cat-amplitude", params("fidelity"), 1.0 - fid, 1e-8, false);
        em.emit("eq33a-cat-amplitude", params("norm"), (acted.norm() - 1.0).abs(), 1e-10, false);
    }
}

fn check_cat_printed(cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    // As printed, the cat superposition carries prefactor 1/2; unitarity of
    // V_1 forces 1/sqrt(2) since <-z|i|z> is purely imaginary.
    let s = grid.space;
    if !cfg.ms.contains(&1) {
        return;
    }
    let quarter_pi = core::f64::consts::FRAC_PI_4;
    for (z, coh) in &grid.coherents {
        let params = format!("z={}", fmt_z(*z));
        let zket = match coh {
            Ok(k) => k,
            Err(reason) => {
                em.skip("eq33a-printed-prefactor", params, reason);
                continue;
            }
        };
        let neg = coherent(s, -*z).unwrap();
        let v = v_operator_unchecked(s, 1, *z, -*z, quarter_pi).unwrap();
        let acted = v.apply(&Ket::vacuum(s)).unwrap();
        let half = C64::new(0.5, 0.0);
        let printed = neg.add(&zket.scale(C64::new(0.0, 1.0))).unwrap().scale(half);
        let defect = acted.sub(&printed).unwrap();
        em.emit_note(
            "eq33a-printed-prefactor",
            params,
            defect.interior_norm(),
            1e-8,
            true,
            Some("paper-discrepancy: printed prefactor 1/2, normalization forces 1/sqrt(2)".into()),
        );
    }
}

fn check_v_expansion(cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    // the trigonometric collapse behind the expanded form needs
    // cos(pi n/m) in {0, +-1}, so it is an identity for m <= 2 only
    let s = grid.space;
    for &m in &cfg.ms {
        if m > 2 {
            continue;
        }
        for &z in &cfg.zs {
            for &u in &cfg.us {
                for &lambda in &cfg.lambdas {
                    let v = v_operator_unchecked(s, m, z, u, lambda).unwrap();
                    let half = generalized_displacement_unchecked(s, m, u / 2.0).unwrap();
                    let half_sq = half.mul(&half).unwrap();
                    let cos_op = parity_cos(s, m);
                    let sin_op = parity_sin(s, m);
                    let cos_sq = cos_op.mul(&cos_op).unwrap();
                    let sin_sq = sin_op.mul(&sin_op).unwrap();
                    let dz = generalized_displacement_unchecked(s, m, z).unwrap();
                    let half_neg = generalized_displacement_unchecked(s, m, -u / 2.0).unwrap();
                    let d_tilde = half.mul(&dz).unwrap().mul(&half_neg).unwrap();
                    let expect = half_sq
                        .mul(
                            &sin_sq
                                .add(&cos_sq.scale(C64::new(libm::cos(lambda), 0.0)))
                                .unwrap(),
                        )
                        .unwrap()
                        .add(
                            &d_tilde
                                .mul(&cos_op)
                                .unwrap()
                                .scale(C64::new(0.0, libm::sin(lambda))),
                        )
                        .unwrap();
                    em.emit(
                        "eq35a-expansion",
                        format!("m={m} z={} u={} lambda={lambda:.4}", fmt_z(z), fmt_z(u)),
                        edge_residual(s, &v.sub(&expect).unwrap()),
                        1e-9,
                        false,
                    );
                }
            }
        }
    }
}

fn check_v_action_candidates(cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    // Two readings of the V_m vacuum action are evaluated against the direct
    // triple-product oracle: the printed second term D_m(u/2) D_m(z) |(u/2)_m>
    // and the support-property derivation with |(-u/2)_m>. The report records
    // which matches; the derived reading is the asserted one.
    let s = grid.space;
    for p in &grid.points {
        for &u in &cfg.us {
            for &lambda in &cfg.lambdas {
                let params = format!("{} u={} lambda={lambda:.4}", point_params(p), fmt_z(u));
                if p.ops.is_err() {
                    let reason = p.ops.as_ref().err().unwrap().clone();
                    em.skip("eq36a-candidates", format!("{params} part=derived"), &reason);
                    em.skip("eq36a-candidates", format!("{params} part=printed"), &reason);
                    continue;
                }
                let v = v_operator_unchecked(s, p.m, p.z, u, lambda).unwrap();
                let oracle = v.apply(&Ket::vacuum(s)).unwrap();
                let half = generalized_displacement_unchecked(s, p.m, u / 2.0).unwrap();
                let dz = generalized_displacement_unchecked(s, p.m, p.z).unwrap();
                let plus_half = half.apply(&Ket::vacuum(s)).unwrap();
                let minus_half = generalized_displacement_unchecked(s, p.m, -u / 2.0)
                    .unwrap()
                    .apply(&Ket::vacuum(s))
                    .unwrap();
                let cos_l = C64::new(libm::cos(lambda), 0.0);
                let isin_l = C64::new(0.0, libm::sin(lambda));
                let first = half.apply(&plus_half).unwrap().scale(cos_l);
                let derived = first
                    .add(&half.apply(&dz.apply(&minus_half).unwrap()).unwrap().scale(isin_l))
                    .unwrap();
                em.emit(
                    "eq36a-candidates",
                    format!("{params} part=derived"),
                    oracle.sub(&derived).unwrap().interior_norm(),
                    1e-9,
                    false,
                );
                let printed = first
                    .add(&half.apply(&dz.apply(&plus_half).unwrap()).unwrap().scale(isin_l))
                    .unwrap();
                em.emit_note(
                    "eq36a-candidates",
                    format!("{params} part=printed"),
                    oracle.sub(&printed).unwrap().interior_norm(),
                    1e-9,
                    true,
                    Some("paper-discrepancy candidate: printed second term uses |(u/2)_m>".into()),
                );
            }
        }
    }
}

fn check_dressed_basis(cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let s = grid.space;
    for p in &grid.points {
        for &lambda in &cfg.lambdas {
            for n in 0..4usize {
                let params = format!("{} lambda={lambda:.4} n={n}", point_params(p));
                match &p.ops {
                    Ok(ops) => {
                        let u =
                            u_evolution_unchecked(s, p.m, p.z, lambda, UMethod::ClosedForm).unwrap();
                        let dressed = u.apply(&Ket::number_state(s, n)).unwrap();
                        let angle = lambda * parity_cos_value(p.m, n);
                        let dn = ops.d.apply(&Ket::number_state(s, n)).unwrap();
                        let expect = Ket::number_state(s, n)
                            .scale(C64::new(libm::cos(angle), 0.0))
                            .add(&dn.scale(C64::new(0.0, libm::sin(angle))))
                            .unwrap();
                        em.emit(
                            "eq38a-dressed-basis",
                            params,
                            dressed.sub(&expect).unwrap().interior_norm(),
                            1e-9,
                            false,
                        );
                    }
                    Err(reason) => em.skip("eq38a-dressed-basis", params, reason),
                }
            }
        }
    }
}

fn check_statistics(cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    // sum_{j != n} |c_{m,n}^j|^2 sin^2(lambda) + |<n|(lambda;z_m),n>|^2 = 1
    let s = grid.space;
    for p in &grid.points {
        for &lambda in &cfg.lambdas {
            for n in 0..4usize {
                let params = format!("{} lambda={lambda:.4} n={n}", point_params(p));
                match &p.ops {
                    Ok(ops) => {
                        let dn = ops.d.apply(&Ket::number_state(s, n)).unwrap();
                        let off_mass: f64 = dn
                            .amps
                            .iter()
                            .enumerate()
                            .filter(|(j, _)| *j != n)
                            .map(|(_, c)| c.norm_sqr())
                            .sum();
                        let u =
                            u_evolution_unchecked(s, p.m, p.z, lambda, UMethod::ClosedForm).unwrap();
                        let dressed = u.apply(&Ket::number_state(s, n)).unwrap();
                        let angle = lambda * parity_cos_value(p.m, n);
                        let diag_amp = dressed.amps[n].norm_sqr();
                        let sin_sq = libm::sin(angle) * libm::sin(angle);
                        let identity = off_mass * sin_sq + diag_amp;
                        em.emit(
                            "eq39a-statistics-identity",
                            params,
                            (identity - 1.0).abs(),
                            1e-10,
                            false,
                        );
                    }
                    Err(reason) => em.skip("eq39a-statistics-identity", params, reason),
                }
            }
        }
    }
}

fn check_support(_cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    for p in &grid.points {
        match &p.ops {
            Ok(ops) => {
                em.emit(
                    "sec3-support-multiples",
                    point_params(p),
                    off_support_mass(&ops.zm, p.m),
                    1e-10,
                    false,
                );
            }
            Err(reason) => em.skip("sec3-support-multiples", point_params(p), reason),
        }
    }
}

fn check_parity_action(_cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let s = grid.space;
    for p in &grid.points {
        let params = |part: &str| format!("{} part={part}", point_params(p));
        match &p.ops {
            Ok(ops) => {
                let neg_raw = generalized_displacement_unchecked(s, p.m, -p.z)
                    .unwrap()
                    .apply(&Ket::vacuum(s))
                    .unwrap();
                let cos_act = parity_cos(s, p.m).apply(&ops.zm_raw).unwrap();
                em.emit(
                    "sec3-parity-action-pair",
                    params("cos"),
                    cos_act.sub(&neg_raw).unwrap().interior_norm(),
                    1e-9,
                    false,
                );
                let sin_act = parity_sin(s, p.m).apply(&ops.zm_raw).unwrap();
                em.emit("sec3-parity-action-pair", params("sin"), sin_act.interior_norm(), 1e-9, false);
            }
            Err(reason) => {
                for part in ["cos", "sin"] {
                    em.skip("sec3-parity-action-pair", params(part), reason);
                }
            }
        }
    }
}

fn check_reality(_cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    for p in &grid.points {
        match &p.ops {
            Ok(ops) => {
                let n_max = 8.min(grid.space.interior_dim - 1);
                let worst = (0..=n_max).map(|n| ops.d.mat[(n, n)].im.abs()).fold(0.0, f64::max);
                em.emit("sec5-diagonal-reality", point_params(p), worst, 1e-10, false);
            }
            Err(reason) => em.skip("sec5-diagonal-reality", point_params(p), reason),
        }
    }
}

fn check_gram(_cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let s = grid.space;
    let count = 16.min(s.interior_dim / 2);
    for p in &grid.points {
        match &p.ops {
            Ok(ops) => {
                let kets: Vec<Ket> = (0..count)
                    .map(|n| ops.d.apply(&Ket::number_state(s, n)).unwrap())
                    .collect();
                let mut worst = 0.0_f64;
                for (i, ki) in kets.iter().enumerate() {
                    for (j, kj) in kets.iter().enumerate() {
                        let g = inner(ki, kj).unwrap();
                        let expect = if i == j { 1.0 } else { 0.0 };
                        worst = worst.max((g - C64::new(expect, 0.0)).norm());
                    }
                }
                em.emit("basis-gram-orthonormality", point_params(p), worst, 1e-8, false);
            }
            Err(reason) => em.skip("basis-gram-orthonormality", point_params(p), reason),
        }
    }
}

// entries for checks that span both the z grid and the (m, z) points
fn check_vacuum_decomposition_entry(cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let _ = cfg;
    check_vacuum_decomposition(grid, em);
}

fn check_return_to_vacuum_entry(cfg: &SuiteConfig, grid: &Grid, em: &mut Emitter) {
    let _ = cfg;
    check_return_to_vacuum_m1(grid, em);
}

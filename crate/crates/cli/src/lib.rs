//! Command-line driver for the thin-film solvers.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod output;

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thinfilm_core::entropy::{compatibility_residual, ConvexGenerators};
use thinfilm_core::fvm::{self, convergence_study, godunov_flux_or_upwind, RunOptions, Scheme};
use thinfilm_core::riemann::Warning;
use thinfilm_core::{eigen, flux, from_invariants, jacobian, to_invariants, State};
use thiserror::Error;

use config::{ConfigError, Scenario, ScenarioKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_ADMISSIBILITY: i32 = 3;
pub const EXIT_SOLVER: i32 = 4;
pub const EXIT_IO: i32 = 5;
pub const EXIT_CHECK: i32 = 6;

pub const EXIT_CODE_HELP: &str = "\
Exit codes:
  0  success
  2  configuration error
  3  admissibility failure (non-positive cell state)
  4  Riemann solver failure
  5  I/O error
  6  invariant check failed";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error("admissibility: {0}")]
    Admissibility(thinfilm_core::Error),
    #[error("solver: {0}")]
    Solver(thinfilm_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("check failed: {0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Admissibility(_) => EXIT_ADMISSIBILITY,
            CliError::Solver(_) => EXIT_SOLVER,
            CliError::Io { .. } => EXIT_IO,
            CliError::Check(_) => EXIT_CHECK,
        }
    }
}

impl From<thinfilm_core::Error> for CliError {
    fn from(e: thinfilm_core::Error) -> Self {
        use thinfilm_core::Error as E;
        match e {
            E::NonPositiveState { .. } | E::InadmissibleCell { .. } => CliError::Admissibility(e),
            E::InvalidArgument(msg) => CliError::Config(ConfigError {
                line: None,
                message: msg,
            }),
            other => CliError::Solver(other),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Summary printed after each command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub command: &'static str,
    pub wall_time: f64,
    pub steps: usize,
    pub final_totals: Option<[f64; 4]>,
    pub godunov_fallbacks: usize,
    pub warnings: Vec<String>,
    pub lines: Vec<String>,
}

impl RunReport {
    fn new(command: &'static str, warnings: Vec<String>) -> Self {
        Self {
            command,
            wall_time: 0.0,
            steps: 0,
            final_totals: None,
            godunov_fallbacks: 0,
            warnings,
            lines: Vec::new(),
        }
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {:.3} s", self.command, self.wall_time)?;
        if self.steps > 0 {
            writeln!(f, "  steps: {}", self.steps)?;
        }
        if let Some(t) = self.final_totals {
            writeln!(
                f,
                "  totals f={:.12e} b={:.12e} g={:.12e} q={:.12e}",
                t[0], t[1], t[2], t[3]
            )?;
        }
        if self.godunov_fallbacks > 0 {
            writeln!(f, "  upwind fallbacks: {}", self.godunov_fallbacks)?;
        }
        for l in &self.lines {
            writeln!(f, "  {l}")?;
        }
        for w in &self.warnings {
            writeln!(f, "  warning: {w}")?;
        }
        Ok(())
    }
}

fn riemann_states(sc: &Scenario, command: &str) -> Result<(State, State), CliError> {
    match sc.kind {
        ScenarioKind::Riemann { left, right } => Ok((left, right)),
        _ => Err(CliError::Config(ConfigError {
            line: None,
            message: format!(
                "'{command}' needs scenario = riemann, got {}",
                sc.kind.name()
            ),
        })),
    }
}

fn snapshot_path(out: &Path, index: usize) -> PathBuf {
    let stem = out
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("snapshot");
    out.with_file_name(format!("{stem}.{index:04}.csv"))
}

/// `run`: finite-volume solution at `t_end`.
pub fn run_command(sc: &Scenario) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut report = RunReport::new("run", sc.warnings.clone());
    let field = fvm::init_field(&sc.grid, |x| sc.kind.initial(x))?;
    let opts = RunOptions {
        snapshot_interval: sc.dump_interval,
    };
    let (field, diag) = fvm::run_from(&sc.grid, field, &sc.scheme, &opts)?;
    let xs = sc.grid.centers();
    let out = sc.out.as_deref().map(Path::new);
    output::emit(out, |w| output::write_profile(w, &xs, &field.cells))
        .map_err(io_err(out.unwrap_or(Path::new("<stdout>"))))?;
    if let Some(p) = out {
        for (i, snap) in diag.snapshots.iter().enumerate() {
            let sp = snapshot_path(p, i);
            output::emit(Some(&sp), |w| output::write_profile(w, &xs, &snap.cells))
                .map_err(io_err(&sp))?;
        }
        if !diag.snapshots.is_empty() {
            report.lines.push(format!(
                "{} snapshots next to {}",
                diag.snapshots.len(),
                p.display()
            ));
        }
    } else if !diag.snapshots.is_empty() {
        report
            .warnings
            .push("dump_interval needs an output path; snapshots not written".into());
    }
    report.steps = diag.steps;
    report.final_totals = diag.mass_history.last().map(|(_, m)| *m);
    report.godunov_fallbacks = diag.godunov_fallbacks;
    report.lines.push(format!(
        "scheme {} cells {} dx {:.6e} cfl {} t_end {}",
        sc.scheme.scheme,
        sc.grid.n_cells,
        sc.grid.dx(),
        sc.scheme.cfl,
        sc.scheme.t_end
    ));
    report.lines.push(format!(
        "min [{:.4e} {:.4e} {:.4e} {:.4e}] max [{:.4e} {:.4e} {:.4e} {:.4e}]",
        diag.min[0],
        diag.min[1],
        diag.min[2],
        diag.min[3],
        diag.max[0],
        diag.max[1],
        diag.max[2],
        diag.max[3]
    ));
    report.lines.push(format!(
        "max per-step drift (boundary corrected) f {:.2e} g {:.2e}",
        diag.max_step_drift[0], diag.max_step_drift[2]
    ));
    report.wall_time = start.elapsed().as_secs_f64();
    Ok(report)
}

fn describe_warning(w: &Warning) -> String {
    match w {
        Warning::NotStrictlyHyperbolic { side, gap } => {
            format!("{side:?} state is not strictly hyperbolic (gq - fb = {gap:.6e})")
        }
        Warning::OutsideProvenRegime { fb_right, gq_left } => {
            format!("fb_right = {fb_right} >= gq_left = {gq_left}: root found outside the proven existence regime")
        }
        Warning::SpeedOrdering {
            left_wave,
            left_speed,
            right_wave,
            right_speed,
        } => format!(
            "wave speeds out of order: {left_wave} {left_speed} > {right_wave} {right_speed}"
        ),
    }
}

/// `exact`: self-similar solution sampled at the cell midpoints at `t_end`.
pub fn exact_command(sc: &Scenario) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let (left, right) = riemann_states(sc, "exact")?;
    let mut report = RunReport::new("exact", Vec::new());
    let fan = thinfilm_core::solve(&left, &right)?;
    let t = sc.scheme.t_end;
    let xs = sc.grid.centers();
    let states: Vec<State> = xs
        .iter()
        .map(|&x| {
            if t > 0.0 {
                fan.sample(x / t)
            } else {
                sc.kind.initial(x)
            }
        })
        .collect();
    let out = sc.out.as_deref().map(Path::new);
    output::emit(out, |w| output::write_profile(w, &xs, &states))
        .map_err(io_err(out.unwrap_or(Path::new("<stdout>"))))?;
    report.warnings = fan.warnings.iter().map(describe_warning).collect();
    report
        .lines
        .push(format!("structure {} g_M {:.15e}", fan.case, fan.g_mid));
    let speeds = |s: &thinfilm_core::WaveSpeed| match s {
        thinfilm_core::WaveSpeed::Discontinuity(v) => format!("{v:.12}"),
        thinfilm_core::WaveSpeed::Fan { head, tail } => format!("[{head:.12}, {tail:.12}]"),
    };
    report.lines.push(format!(
        "speeds {:.12} {} {:.12} {}",
        fan.wave1,
        speeds(&fan.wave2),
        fan.wave3,
        speeds(&fan.wave4)
    ));
    for (name, s) in [
        ("U_L*", fan.left_star),
        ("U_M*", fan.mid_star),
        ("U_R*", fan.right_star),
    ] {
        report.lines.push(format!(
            "{name} = ({:.12}, {:.12}, {:.12}, {:.12})",
            s.f, s.b, s.g, s.q
        ));
    }
    report.wall_time = start.elapsed().as_secs_f64();
    Ok(report)
}

/// `convergence`: L1 errors against the exact solution for both schemes.
pub fn convergence_command(sc: &Scenario) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let (left, right) = riemann_states(sc, "convergence")?;
    let mut report = RunReport::new("convergence", sc.warnings.clone());
    let (x_min, x_max) = (sc.grid.x_min, sc.grid.x_max);
    let mut rows = Vec::new();
    for scheme in [Scheme::Godunov, Scheme::LaxFriedrichs] {
        rows.extend(convergence_study(
            x_min,
            x_max,
            &sc.convergence_cells,
            &left,
            &right,
            scheme,
            sc.scheme.cfl,
            sc.scheme.t_end,
        )?);
    }
    let out = sc.out.as_deref().map(Path::new);
    output::emit(out, |w| output::write_convergence(w, &rows))
        .map_err(io_err(out.unwrap_or(Path::new("<stdout>"))))?;
    for r in &rows {
        report.lines.push(format!(
            "{:8} {:5} L1 [{:.4e} {:.4e} {:.4e} {:.4e}]",
            r.scheme.to_string(),
            r.cells,
            r.errors[0],
            r.errors[1],
            r.errors[2],
            r.errors[3]
        ));
    }
    report.wall_time = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Maximum observed defects of the `check` suite.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CheckSummary {
    pub samples: usize,
    pub eigen_residual: f64,
    pub roundtrip_error: f64,
    pub compatibility: f64,
    pub upwind_mismatches: usize,
    pub upwind_fallbacks: usize,
}

pub const CHECK_EIGEN_TOL: f64 = 1e-12;
pub const CHECK_ROUNDTRIP_TOL: f64 = 1e-12;
pub const CHECK_COMPATIBILITY_TOL: f64 = 1e-5;

fn random_state(rng: &mut StdRng) -> State {
    let mut c = || rng.gen_range(0.2f64.ln()..5.0f64.ln()).exp();
    State::new(c(), c(), c(), c())
}

pub fn run_checks(samples: usize, seed: u64) -> Result<CheckSummary, CliError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut sum = CheckSummary {
        samples,
        ..Default::default()
    };
    let mut done = 0;
    while done < samples {
        let s = random_state(&mut rng);
        if !(s.upper_product() > 1.05 * s.lower_product()) {
            continue;
        }
        done += 1;
        let j = jacobian(&s)?;
        let e = eigen(&s)?;
        let jn = j
            .iter()
            .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max);
        for k in 0..4 {
            let r = e.rights[k];
            let rn = r.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            for (i, row) in j.iter().enumerate() {
                let jr: f64 = row.iter().zip(r).map(|(a, b)| a * b).sum();
                let res = (jr - e.lambdas[k] * r[i]).abs() / ((jn + e.lambdas[k].abs()) * rn);
                sum.eigen_residual = sum.eigen_residual.max(res);
            }
        }
        let back = from_invariants(&to_invariants(&s)?)?;
        for (a, b) in back.to_array().iter().zip(s.to_array()) {
            sum.roundtrip_error = sum.roundtrip_error.max((a - b).abs() / b);
        }
        sum.compatibility = sum
            .compatibility
            .max(compatibility_residual(&s, &ConvexGenerators)?);

        let other = random_state(&mut rng);
        let it = godunov_flux_or_upwind(&s, &other)?;
        if it.value != flux(&s)? {
            sum.upwind_mismatches += 1;
        }
        sum.upwind_fallbacks += usize::from(it.fallback);
    }
    Ok(sum)
}

/// `check`: invariant suite on random states.
pub fn check_command(sc: &Scenario) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut report = RunReport::new("check", Vec::new());
    let s = run_checks(sc.samples, sc.seed)?;
    report.lines.push(format!(
        "{} strictly hyperbolic states, seed {}",
        s.samples, sc.seed
    ));
    report.lines.push(format!(
        "eigen residual      {:.3e} (tol {CHECK_EIGEN_TOL:e})",
        s.eigen_residual
    ));
    report.lines.push(format!(
        "invariant roundtrip {:.3e} (tol {CHECK_ROUNDTRIP_TOL:e})",
        s.roundtrip_error
    ));
    report.lines.push(format!(
        "entropy compat.     {:.3e} (tol {CHECK_COMPATIBILITY_TOL:e})",
        s.compatibility
    ));
    report.lines.push(format!(
        "godunov = upwind    {} mismatches, {} solver fallbacks",
        s.upwind_mismatches, s.upwind_fallbacks
    ));
    report.wall_time = start.elapsed().as_secs_f64();
    let mut failed = Vec::new();
    if s.eigen_residual > CHECK_EIGEN_TOL {
        failed.push("eigen residual");
    }
    if s.roundtrip_error > CHECK_ROUNDTRIP_TOL {
        failed.push("invariant roundtrip");
    }
    if s.compatibility > CHECK_COMPATIBILITY_TOL {
        failed.push("entropy compatibility");
    }
    if s.upwind_mismatches > 0 {
        failed.push("godunov flux");
    }
    if failed.is_empty() {
        Ok(report)
    } else {
        Err(CliError::Check(format!("{}\n{report}", failed.join(", "))))
    }
}

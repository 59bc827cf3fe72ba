//! First-order conservative finite-volume schemes on a uniform 1-D grid.
//!
//! Godunov fluxes come from the exact Riemann solver sampled at `x/t = 0`,
//! Lax-Friedrichs fluxes from the classical central formula. Boundaries are
//! transmissive (ghost cell = adjacent interior cell).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::riemann::{solve_with, OrderingPolicy, SolveOptions, Warning};
use crate::scalar::Scalar;
use crate::state::{FluxVector, State};
use crate::system::flux;

pub const DEFAULT_CFL: f64 = 0.45;
pub const DEFAULT_X_MIN: f64 = -2.0;
pub const DEFAULT_X_MAX: f64 = 12.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D<T = f64> {
    pub x_min: T,
    pub x_max: T,
    pub n_cells: usize,
}

impl<T: Scalar> Grid1D<T> {
    pub fn new(x_min: T, x_max: T, n_cells: usize) -> Result<Self> {
        if n_cells < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 2 cells, got {n_cells}"
            )));
        }
        if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "invalid domain [{x_min}, {x_max}]"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n_cells,
        })
    }

    /// The default domain `[-2, 12]`.
    pub fn standard(n_cells: usize) -> Result<Self> {
        Self::new(T::lit(DEFAULT_X_MIN), T::lit(DEFAULT_X_MAX), n_cells)
    }

    pub fn dx(&self) -> T {
        (self.x_max - self.x_min) / T::from_usize(self.n_cells).unwrap()
    }

    pub fn center(&self, i: usize) -> T {
        self.x_min + (T::from_usize(i).unwrap() + T::lit(0.5)) * self.dx()
    }

    pub fn centers(&self) -> Vec<T> {
        (0..self.n_cells).map(|i| self.center(i)).collect()
    }
}

/// Cell averages at a given time.
#[derive(Debug, Clone, PartialEq)]
pub struct CellField<T = f64> {
    pub cells: Vec<State<T>>,
    pub time: T,
}

impl<T: Scalar> CellField<T> {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `sum_i U_i dx` per component, summed left to right.
    pub fn totals(&self, dx: T) -> [T; 4] {
        let mut acc = [T::zero(); 4];
        for c in &self.cells {
            for (a, x) in acc.iter_mut().zip(c.to_array()) {
                *a = *a + x * dx;
            }
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Scheme {
    #[default]
    Godunov,
    LaxFriedrichs,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Godunov => "godunov",
            Scheme::LaxFriedrichs => "lxf",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "godunov" => Ok(Scheme::Godunov),
            "lxf" | "lax-friedrichs" | "laxfriedrichs" => Ok(Scheme::LaxFriedrichs),
            other => Err(Error::InvalidArgument(format!(
                "unknown scheme '{other}' (expected godunov or lxf)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig<T = f64> {
    pub scheme: Scheme,
    pub cfl: T,
    pub t_end: T,
}

impl<T: Scalar> SchemeConfig<T> {
    pub fn new(scheme: Scheme, cfl: T, t_end: T) -> Result<Self> {
        let cfg = Self { scheme, cfl, t_end };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > T::zero() && self.cfl <= T::one()) {
            return Err(Error::InvalidArgument(format!(
                "cfl must lie in (0, 1], got {}",
                self.cfl
            )));
        }
        if !(self.t_end >= T::zero() && self.t_end.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "t_end must be finite and >= 0, got {}",
                self.t_end
            )));
        }
        Ok(())
    }
}

impl<T: Scalar> Default for SchemeConfig<T> {
    fn default() -> Self {
        Self {
            scheme: Scheme::Godunov,
            cfl: T::lit(DEFAULT_CFL),
            t_end: T::one(),
        }
    }
}

/// Cell `i` holds `u0` at its midpoint.
pub fn init_field<T: Scalar, F: Fn(T) -> State<T>>(
    grid: &Grid1D<T>,
    u0: F,
) -> Result<CellField<T>> {
    let mut cells = Vec::with_capacity(grid.n_cells);
    for i in 0..grid.n_cells {
        let s = u0(grid.center(i));
        if s.ensure_positive().is_err() {
            return Err(Error::InadmissibleCell {
                cell: i,
                time: 0.0,
                state: s.to_f64(),
            });
        }
        cells.push(s);
    }
    Ok(CellField {
        cells,
        time: T::zero(),
    })
}

/// Piecewise constant data with the jump at `x0`.
pub fn riemann_initial<T: Scalar>(
    left: State<T>,
    right: State<T>,
    x0: T,
) -> impl Fn(T) -> State<T> {
    move |x| if x < x0 { left } else { right }
}

/// `f = 1, b = 1 + exp(-(x-5)^2), g = 1, q = exp(-(x-5)^2)`.
pub fn gaussian_initial<T: Scalar>(x: T) -> State<T> {
    let d = x - T::lit(5.0);
    let e = (-(d * d)).exp();
    State::new(T::one(), T::one() + e, T::one(), e)
}

/// Godunov flux `F(U(0; left, right))`. All characteristic speeds of a
/// positive state are positive, so the sampled state is `left`; the result
/// is checked against `F(left)`.
pub fn godunov_flux<T: Scalar>(left: &State<T>, right: &State<T>) -> Result<FluxVector<T>> {
    let opts = SolveOptions {
        ordering: OrderingPolicy::Warn,
        ..SolveOptions::default()
    };
    let fan = solve_with(left, right, &opts)?;
    let at_face = fan.sample(T::zero());
    let f = flux(&at_face)?;
    assert_eq!(f, flux(left)?, "Godunov flux differs from upwind flux");
    Ok(f)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceFlux<T = f64> {
    pub value: FluxVector<T>,
    /// The Riemann solver failed and the upwind value was used directly.
    pub fallback: bool,
}

/// [`godunov_flux`], falling back to `F(left)` when the solver cannot
/// resolve the pair (no admissible root near resonance).
pub fn godunov_flux_or_upwind<T: Scalar>(
    left: &State<T>,
    right: &State<T>,
) -> Result<InterfaceFlux<T>> {
    match godunov_flux(left, right) {
        Ok(value) => Ok(InterfaceFlux {
            value,
            fallback: false,
        }),
        Err(Error::NoRoot { .. }) | Err(Error::SpeedOrdering { .. }) => Ok(InterfaceFlux {
            value: flux(left)?,
            fallback: true,
        }),
        Err(e) => Err(e),
    }
}

pub fn lxf_flux<T: Scalar>(left: &State<T>, right: &State<T>, dx: T, dt: T) -> FluxVector<T> {
    let fl = crate::system::flux_unchecked(left);
    let fr = crate::system::flux_unchecked(right);
    let half = T::lit(0.5);
    let k = dx / (T::lit(2.0) * dt);
    let (l, r) = (left.to_array(), right.to_array());
    FluxVector(std::array::from_fn(|c| {
        half * (fl.0[c] + fr.0[c]) - k * (r[c] - l[c])
    }))
}

/// `cfl * dx / max_i (fb + 3 gq / 2)`.
pub fn cfl_dt<T: Scalar>(field: &CellField<T>, dx: T, cfl: T) -> Result<T> {
    if field.is_empty() {
        return Err(Error::InvalidArgument("cfl_dt on an empty field".into()));
    }
    let mut lam = T::zero();
    for c in &field.cells {
        lam = lam.max(c.lower_product() + T::lit(1.5) * c.upper_product());
    }
    if !(lam > T::zero() && lam.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "maximum wave speed {lam} is not positive"
        )));
    }
    Ok(cfl * dx / lam)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepStats<T = f64> {
    pub fallbacks: usize,
    /// Fluxes through the left and right domain boundaries.
    pub boundary_fluxes: [FluxVector<T>; 2],
}

/// One conservative update `U_i - dt/dx (F_{i+1/2} - F_{i-1/2})`.
pub fn step<T: Scalar>(
    field: &CellField<T>,
    grid: &Grid1D<T>,
    dt: T,
    cfg: &SchemeConfig<T>,
) -> Result<CellField<T>> {
    step_with_stats(field, grid, dt, cfg).map(|(f, _)| f)
}

pub fn step_with_stats<T: Scalar>(
    field: &CellField<T>,
    grid: &Grid1D<T>,
    dt: T,
    cfg: &SchemeConfig<T>,
) -> Result<(CellField<T>, StepStats<T>)> {
    let n = field.len();
    if n != grid.n_cells {
        return Err(Error::InvalidArgument(format!(
            "field has {n} cells, grid has {}",
            grid.n_cells
        )));
    }
    if !(dt > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "dt must be positive, got {dt}"
        )));
    }
    let dx = grid.dx();
    let cells = &field.cells;
    let at = |k: isize| cells[k.clamp(0, n as isize - 1) as usize];

    let mut fallbacks = 0;
    let mut faces = Vec::with_capacity(n + 1);
    for k in 0..=n as isize {
        let (l, r) = (at(k - 1), at(k));
        let fx = match cfg.scheme {
            Scheme::Godunov => {
                let it = godunov_flux_or_upwind(&l, &r)?;
                fallbacks += usize::from(it.fallback);
                it.value
            }
            Scheme::LaxFriedrichs => lxf_flux(&l, &r, dx, dt),
        };
        faces.push(fx);
    }

    let time = field.time + dt;
    let ratio = dt / dx;
    let mut next = Vec::with_capacity(n);
    for (i, c) in cells.iter().enumerate() {
        let d = faces[i + 1] - faces[i];
        let a = c.to_array();
        let s = State::from_array(std::array::from_fn(|k| a[k] - ratio * d.0[k]));
        if !s.is_finite() || s.ensure_positive().is_err() {
            return Err(Error::InadmissibleCell {
                cell: i,
                time: time.as_f64(),
                state: s.to_f64(),
            });
        }
        next.push(s);
    }
    Ok((
        CellField { cells: next, time },
        StepStats {
            fallbacks,
            boundary_fluxes: [faces[0], faces[n]],
        },
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunOptions<T = f64> {
    /// Store a copy of the field every `snapshot_interval` time units.
    pub snapshot_interval: Option<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunDiagnostics<T = f64> {
    pub steps: usize,
    /// Componentwise extrema over all time levels, including the initial one.
    pub min: [T; 4],
    pub max: [T; 4],
    /// `(time, totals)` after every time level.
    pub mass_history: Vec<(T, [T; 4])>,
    /// Largest per-step change of each total after removing boundary
    /// fluxes, relative to the total.
    pub max_step_drift: [T; 4],
    pub godunov_fallbacks: usize,
    pub warnings: Vec<Warning>,
    pub snapshots: Vec<CellField<T>>,
}

pub fn run<T: Scalar, F: Fn(T) -> State<T>>(
    grid: &Grid1D<T>,
    ic: F,
    cfg: &SchemeConfig<T>,
) -> Result<(CellField<T>, RunDiagnostics<T>)> {
    let field = init_field(grid, ic)?;
    run_from(
        grid,
        field,
        cfg,
        &RunOptions {
            snapshot_interval: None,
        },
    )
}

pub fn run_from<T: Scalar>(
    grid: &Grid1D<T>,
    mut field: CellField<T>,
    cfg: &SchemeConfig<T>,
    opts: &RunOptions<T>,
) -> Result<(CellField<T>, RunDiagnostics<T>)> {
    cfg.validate()?;
    let dx = grid.dx();
    let mut diag = RunDiagnostics {
        steps: 0,
        min: [T::infinity(); 4],
        max: [T::neg_infinity(); 4],
        mass_history: vec![(field.time, field.totals(dx))],
        max_step_drift: [T::zero(); 4],
        godunov_fallbacks: 0,
        warnings: Vec::new(),
        snapshots: Vec::new(),
    };
    track_extrema(&field, &mut diag);
    let mut next_snapshot = opts.snapshot_interval.map(|h| field.time + h);
    if opts.snapshot_interval.is_some() {
        diag.snapshots.push(field.clone());
    }

    while field.time < cfg.t_end {
        let remaining = cfg.t_end - field.time;
        let mut dt = cfl_dt(&field, dx, cfg.cfl)?;
        let last = dt >= remaining;
        if last {
            dt = remaining;
        }
        let before = *diag.mass_history.last().map(|(_, m)| m).unwrap();
        let (mut next, stats) = step_with_stats(&field, grid, dt, cfg)?;
        if last {
            next.time = cfg.t_end;
        }
        let after = next.totals(dx);
        let [fl, fr] = stats.boundary_fluxes;
        for k in 0..4 {
            let expected = before[k] - dt * (fr.0[k] - fl.0[k]);
            let scale = before[k].abs().max(T::min_positive_value());
            let drift = (after[k] - expected).abs() / scale;
            diag.max_step_drift[k] = diag.max_step_drift[k].max(drift);
        }
        diag.godunov_fallbacks += stats.fallbacks;
        diag.steps += 1;
        diag.mass_history.push((next.time, after));
        field = next;
        track_extrema(&field, &mut diag);
        if let (Some(h), Some(ts)) = (opts.snapshot_interval, next_snapshot) {
            if field.time >= ts || field.time >= cfg.t_end {
                diag.snapshots.push(field.clone());
                next_snapshot = Some(ts + h);
            }
        }
    }
    Ok((field, diag))
}

fn track_extrema<T: Scalar>(field: &CellField<T>, diag: &mut RunDiagnostics<T>) {
    for c in &field.cells {
        for (k, x) in c.to_array().into_iter().enumerate() {
            diag.min[k] = diag.min[k].min(x);
            diag.max[k] = diag.max[k].max(x);
        }
    }
}

/// `sum_i |U_i - exact(x_i)| dx` per component, `x_i` the cell midpoints.
pub fn l1_error<T: Scalar, F: Fn(T) -> State<T>>(
    field: &CellField<T>,
    grid: &Grid1D<T>,
    exact: F,
) -> [T; 4] {
    let dx = grid.dx();
    let mut err = [T::zero(); 4];
    for (i, c) in field.cells.iter().enumerate() {
        let e = exact(grid.center(i)).to_array();
        for (k, x) in c.to_array().into_iter().enumerate() {
            err[k] = err[k] + (x - e[k]).abs() * dx;
        }
    }
    err
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow<T = f64> {
    pub scheme: Scheme,
    pub cells: usize,
    pub dx: T,
    pub errors: [T; 4],
    /// `log(e_prev / e) / log(dx_prev / dx)`; absent on the first row.
    pub orders: Option<[T; 4]>,
}

/// Riemann problem with the jump at `x = 0`, run to `t_end` on each grid
/// and compared with the exact self-similar solution.
#[allow(clippy::too_many_arguments)]
pub fn convergence_study<T: Scalar>(
    x_min: T,
    x_max: T,
    cell_counts: &[usize],
    left: &State<T>,
    right: &State<T>,
    scheme: Scheme,
    cfl: T,
    t_end: T,
) -> Result<Vec<ConvergenceRow<T>>> {
    let cfg = SchemeConfig::new(scheme, cfl, t_end)?;
    let opts = SolveOptions {
        ordering: OrderingPolicy::Warn,
        ..SolveOptions::default()
    };
    let fan = solve_with(left, right, &opts)?;
    let exact = |x: T| {
        if t_end > T::zero() {
            fan.sample(x / t_end)
        } else if x < T::zero() {
            *left
        } else {
            *right
        }
    };
    let mut rows: Vec<ConvergenceRow<T>> = Vec::with_capacity(cell_counts.len());
    for &n in cell_counts {
        let grid = Grid1D::new(x_min, x_max, n)?;
        let (field, _) = run(&grid, riemann_initial(*left, *right, T::zero()), &cfg)?;
        let errors = l1_error(&field, &grid, exact);
        let dx = grid.dx();
        let orders = rows
            .last()
            .map(|p| std::array::from_fn(|k| (p.errors[k] / errors[k]).ln() / (p.dx / dx).ln()));
        rows.push(ConvergenceRow {
            scheme,
            cells: n,
            dx,
            errors,
            orders,
        });
    }
    Ok(rows)
}

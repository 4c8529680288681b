//! Flux evaluation, semi-discrete right-hand side and SSP-RK3 time stepping
//! for periodic linear advection `q_t + a q_x = 0`.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::field::CellField;
use crate::scheme::SchemeConfig;

/// Linear flux `f(q) = a q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxSpec {
    pub speed: f64,
}

impl FluxSpec {
    pub fn linear(speed: f64) -> Self {
        Self { speed }
    }

    #[inline]
    pub fn flux(&self, q: f64) -> f64 {
        self.speed * q
    }

    /// Characteristic speed bound at an interface.
    #[inline]
    pub fn wave_speed(&self) -> f64 {
        self.speed.abs()
    }
}

/// Canonical Riemann flux: central average minus `|a|/2` times the interface jump.
#[inline]
pub fn riemann_flux(q_left: f64, q_right: f64, spec: &FluxSpec) -> f64 {
    0.5 * (spec.flux(q_left) + spec.flux(q_right)) - 0.5 * spec.wave_speed() * (q_right - q_left)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Integrator {
    #[default]
    SspRk3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeConfig {
    pub cfl: f64,
    pub t_end: f64,
    pub integrator: Integrator,
}

impl TimeConfig {
    pub const DEFAULT_CFL: f64 = 0.2;

    pub fn new(cfl: f64, t_end: f64) -> Self {
        Self {
            cfl,
            t_end,
            integrator: Integrator::SspRk3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "cfl must lie in (0, 1], got {}",
                self.cfl
            )));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "t_end must be finite and non-negative, got {}",
                self.t_end
            )));
        }
        Ok(())
    }

    /// `cfl·Δx/|a|`; the whole interval when nothing moves.
    pub fn time_step(&self, dx: f64, flux: &FluxSpec) -> f64 {
        if flux.wave_speed() == 0.0 {
            self.t_end
        } else {
            self.cfl * dx / flux.wave_speed()
        }
    }
}

/// Semi-discrete operator `L(q) = −(f̃_{i+1/2} − f̃_{i−1/2})/Δx` for one
/// scheme; selection is redone on every call.
#[derive(Debug, Clone, Copy)]
pub struct Operator {
    pub flux: FluxSpec,
    pub scheme: SchemeConfig,
}

/// Per-evaluation selection statistics.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StageStats {
    pub thinc_cells: usize,
    pub clamped: usize,
}

impl Operator {
    pub fn new(flux: FluxSpec, scheme: SchemeConfig) -> Self {
        Self { flux, scheme }
    }

    pub fn rhs(&self, field: &CellField) -> Vec<f64> {
        self.rhs_with_stats(field).0
    }

    pub fn rhs_with_stats(&self, field: &CellField) -> (Vec<f64>, StageStats) {
        let (_, selection) = self.scheme.select(field);
        let fluxes: Vec<f64> = selection
            .interfaces
            .iter()
            .map(|face| riemann_flux(face.left, face.right, &self.flux))
            .collect();
        let n = fluxes.len();
        let inv_dx = 1.0 / field.grid().dx();
        let out: Vec<f64> = (0..n)
            .map(|i| -(fluxes[i] - fluxes[(i + n - 1) % n]) * inv_dx)
            .collect();
        let stats = StageStats {
            thinc_cells: selection.thinc_cells(),
            clamped: selection.clamped,
        };
        (out, stats)
    }
}

/// `rhs` for a single scheme without building an [`Operator`].
pub fn rhs(field: &CellField, flux: &FluxSpec, scheme: &SchemeConfig) -> Vec<f64> {
    Operator::new(*flux, *scheme).rhs(field)
}

/// Wraps stage values, or reports the first non-finite cell.
fn try_combine(like: &CellField, values: Vec<f64>) -> std::result::Result<CellField, usize> {
    if let Some(cell) = values.iter().position(|v| !v.is_finite()) {
        return Err(cell);
    }
    Ok(CellField::new(*like.grid(), values).expect("finite values on a matching grid"))
}

/// One Shu–Osher SSP-RK3 step; `Err(cell)` if a stage produced a non-finite value.
fn ssp_rk3_try(
    field: &CellField,
    dt: f64,
    op: &Operator,
) -> std::result::Result<(CellField, StageStats), usize> {
    let u = field.averages();

    let (l0, stats) = op.rhs_with_stats(field);
    let u1 = try_combine(field, u.iter().zip(&l0).map(|(u, l)| u + dt * l).collect())?;

    let l1 = op.rhs(&u1);
    let u2 = try_combine(
        field,
        u.iter()
            .zip(u1.averages())
            .zip(&l1)
            .map(|((u, u1), l)| 0.75 * u + 0.25 * (u1 + dt * l))
            .collect(),
    )?;

    let l2 = op.rhs(&u2);
    let next = try_combine(
        field,
        u.iter()
            .zip(u2.averages())
            .zip(&l2)
            .map(|((u, u2), l)| u / 3.0 + 2.0 / 3.0 * (u2 + dt * l))
            .collect(),
    )?;
    Ok((next, stats))
}

/// One SSP-RK3 step of size `dt`.
///
/// # Panics
/// If a stage produces a non-finite value; [`advect`] reports that as an error instead.
pub fn ssp_rk3_step(field: &CellField, dt: f64, op: &Operator) -> CellField {
    match ssp_rk3_try(field, dt, op) {
        Ok((next, _)) => next,
        Err(cell) => panic!("non-finite value in cell {cell} during Runge-Kutta stage"),
    }
}

/// Final state and diagnostics of one integration.
#[derive(Debug, Clone)]
pub struct AdvectOutcome {
    pub final_field: CellField,
    pub steps: usize,
    pub dt: f64,
    /// THINC-using cells at the first stage of every step.
    pub thinc_counts: Vec<usize>,
    /// Total BVD(III) weight clamps over all first stages.
    pub clamp_events: usize,
    /// `|M_end − M_0| / Σ|q̄|Δx` with `M = Σ q̄ Δx`.
    pub mass_drift: f64,
    pub wall_time: Duration,
}

impl AdvectOutcome {
    /// Mean fraction of cells using THINC per step.
    pub fn thinc_fraction(&self) -> f64 {
        if self.thinc_counts.is_empty() {
            return 0.0;
        }
        let n = self.final_field.len() as f64;
        self.thinc_counts.iter().map(|&c| c as f64 / n).sum::<f64>()
            / self.thinc_counts.len() as f64
    }
}

/// Relative mass change between two fields on the same grid.
pub fn mass_drift(initial: &CellField, current: &CellField) -> f64 {
    let scale = initial.averages().iter().map(|q| q.abs()).sum::<f64>() * initial.grid().dx();
    let diff = (current.mass() - initial.mass()).abs();
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

/// Integrate from 0 to `time.t_end` with a fixed CFL step, shortening the
/// last step to land on `t_end`.
pub fn advect(
    initial: &CellField,
    flux: &FluxSpec,
    time: &TimeConfig,
    scheme: &SchemeConfig,
) -> Result<AdvectOutcome> {
    time.validate()?;
    scheme.validate()?;
    let start = Instant::now();
    let op = Operator::new(*flux, *scheme);
    let dt = time.time_step(initial.grid().dx(), flux);

    let n_steps = if time.t_end == 0.0 {
        0
    } else {
        (time.t_end / dt - 1e-9).ceil().max(1.0) as usize
    };

    let mut field = initial.clone();
    let mut thinc_counts = Vec::with_capacity(n_steps);
    let mut clamp_events = 0;
    for step in 0..n_steps {
        let t = step as f64 * dt;
        let h = if step + 1 == n_steps { time.t_end - t } else { dt };
        let (next, stats) = ssp_rk3_try(&field, h, &op).map_err(|cell| Error::NonFinite {
            step,
            time: t,
            cell,
        })?;
        thinc_counts.push(stats.thinc_cells);
        clamp_events += stats.clamped;
        field = next;
    }

    Ok(AdvectOutcome {
        mass_drift: mass_drift(initial, &field),
        final_field: field,
        steps: n_steps,
        dt,
        thinc_counts,
        clamp_events,
        wall_time: start.elapsed(),
    })
}

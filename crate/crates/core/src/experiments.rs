//! Benchmark profiles, error norms, discontinuity-width measurement and the
//! complex-wave reproduction runs.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;
use std::time::Duration;

use crate::bvd::Tag;
use crate::error::{Error, Result};
use crate::field::{project_initial, CellField, Grid1D, DEFAULT_QUADRATURE_ORDER};
use crate::scheme::{Scheme, SchemeConfig};
use crate::solver::{advect, FluxSpec, TimeConfig};

// Complex-wave constants (Gaussian, square, triangle, semi-ellipse groups).
const CW_GAUSS_CENTER: f64 = -0.7;
const CW_ELLIPSE_CENTER: f64 = 0.5;
const CW_DELTA: f64 = 0.005;
const CW_ALPHA: f64 = 10.0;

fn cw_gauss_width() -> f64 {
    std::f64::consts::LN_2 / (36.0 * CW_DELTA * CW_DELTA)
}

fn cw_g(x: f64, beta: f64, z: f64) -> f64 {
    (-beta * (x - z).powi(2)).exp()
}

fn cw_f(x: f64, alpha: f64, a: f64) -> f64 {
    (1.0 - alpha * alpha * (x - a).powi(2)).max(0.0).sqrt()
}

/// Composite wave on `[-1, 1]`: smooth Gaussian group, square pulse, triangle,
/// semi-ellipse group; zero elsewhere.
pub fn complex_wave_profile(x: f64) -> f64 {
    if (-0.8..=-0.6).contains(&x) {
        let (b, z, d) = (cw_gauss_width(), CW_GAUSS_CENTER, CW_DELTA);
        (cw_g(x, b, z - d) + cw_g(x, b, z + d) + 4.0 * cw_g(x, b, z)) / 6.0
    } else if (-0.4..=-0.2).contains(&x) {
        1.0
    } else if (0.0..=0.2).contains(&x) {
        1.0 - (10.0 * (x - 0.1)).abs()
    } else if (0.4..=0.6).contains(&x) {
        let (al, a, d) = (CW_ALPHA, CW_ELLIPSE_CENTER, CW_DELTA);
        (cw_f(x, al, a - d) + cw_f(x, al, a + d) + 4.0 * cw_f(x, al, a)) / 6.0
    } else {
        0.0
    }
}

/// A jump of the initial data, used to locate and measure smeared fronts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub location: f64,
    pub lo: f64,
    pub hi: f64,
}

/// Initial profiles on the periodic domain `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Profile {
    ComplexWaves,
    Square,
    Sine,
    Gaussian,
    Constant,
}

impl Profile {
    pub const ALL: [Profile; 5] = [
        Profile::ComplexWaves,
        Profile::Square,
        Profile::Sine,
        Profile::Gaussian,
        Profile::Constant,
    ];

    pub const DOMAIN: (f64, f64) = (-1.0, 1.0);

    pub fn name(&self) -> &'static str {
        match self {
            Profile::ComplexWaves => "complex_waves",
            Profile::Square => "square",
            Profile::Sine => "sine",
            Profile::Gaussian => "gaussian",
            Profile::Constant => "constant",
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Profile::ComplexWaves => complex_wave_profile(x),
            Profile::Square => {
                if x.abs() <= 0.5 {
                    1.0
                } else {
                    0.0
                }
            }
            Profile::Sine => (std::f64::consts::PI * x).sin(),
            Profile::Gaussian => (-50.0 * x * x).exp(),
            Profile::Constant => 1.0,
        }
    }

    /// Advection time for one period at unit speed.
    pub fn period(&self) -> f64 {
        Self::DOMAIN.1 - Self::DOMAIN.0
    }

    pub fn jumps(&self) -> Vec<Jump> {
        match self {
            Profile::ComplexWaves => vec![
                Jump {
                    location: -0.4,
                    lo: 0.0,
                    hi: 1.0,
                },
                Jump {
                    location: -0.2,
                    lo: 0.0,
                    hi: 1.0,
                },
            ],
            Profile::Square => vec![
                Jump {
                    location: -0.5,
                    lo: 0.0,
                    hi: 1.0,
                },
                Jump {
                    location: 0.5,
                    lo: 0.0,
                    hi: 1.0,
                },
            ],
            _ => Vec::new(),
        }
    }

    /// Subinterval holding the smooth Gaussian feature, where there is one.
    pub fn smooth_region(&self) -> Option<(f64, f64)> {
        match self {
            Profile::ComplexWaves => Some((-0.8, -0.6)),
            Profile::Gaussian => Some(Self::DOMAIN),
            Profile::Sine => Some(Self::DOMAIN),
            _ => None,
        }
    }

    pub fn is_smooth(&self) -> bool {
        matches!(self, Profile::Sine | Profile::Gaussian | Profile::Constant)
    }

    pub fn project(&self, n_cells: usize) -> Result<CellField> {
        let grid = Grid1D::new(n_cells, Self::DOMAIN.0, Self::DOMAIN.1)?;
        project_initial(grid, |x| self.eval(x), DEFAULT_QUADRATURE_ORDER)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Profile::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let known: Vec<_> = Profile::ALL.iter().map(Profile::name).collect();
                Error::InvalidConfig(format!(
                    "unknown profile '{s}' (expected one of: {})",
                    known.join(", ")
                ))
            })
    }
}

fn check_congruent(a: &CellField, b: &CellField) -> Result<()> {
    if a.grid() != b.grid() {
        return Err(Error::GridMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// `Σ |a_i − b_i| Δx`.
pub fn l1_error(field: &CellField, reference: &CellField) -> Result<f64> {
    check_congruent(field, reference)?;
    Ok(field
        .averages()
        .iter()
        .zip(reference.averages())
        .map(|(a, b)| (a - b).abs())
        .sum::<f64>()
        * field.grid().dx())
}

/// L1 error restricted to cells whose centres lie in `[a, b]`.
pub fn l1_error_on(field: &CellField, reference: &CellField, a: f64, b: f64) -> Result<f64> {
    check_congruent(field, reference)?;
    let grid = field.grid();
    Ok((0..field.len())
        .filter(|&i| (a..=b).contains(&grid.center(i)))
        .map(|i| (field.averages()[i] - reference.averages()[i]).abs())
        .sum::<f64>()
        * grid.dx())
}

pub fn linf_error(field: &CellField, reference: &CellField) -> Result<f64> {
    check_congruent(field, reference)?;
    Ok(field
        .averages()
        .iter()
        .zip(reference.averages())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Search radius, in cells, around the location hint.
pub const TRANSITION_WINDOW: usize = 10;

/// Number of cells a numerical front occupies: the consecutive cells strictly
/// inside the 1%–99% band of the jump, plus one. An unsmeared jump gives 1.
///
/// The front is the crossing of the mid level nearest to `location_hint`
/// within [`TRANSITION_WINDOW`] cells.
pub fn transition_width(field: &CellField, lo: f64, hi: f64, location_hint: f64) -> Result<usize> {
    if hi.is_nan() || lo.is_nan() || hi <= lo {
        return Err(Error::InvalidConfig(format!(
            "jump bounds must satisfy hi > lo, got [{lo}, {hi}]"
        )));
    }
    let grid = field.grid();
    let n = field.len();
    let amp = hi - lo;
    let (band_lo, band_hi) = (lo + 0.01 * amp, lo + 0.99 * amp);
    let mid = lo + 0.5 * amp;
    let inside = |i: usize| {
        let q = field.averages()[i];
        band_lo < q && q < band_hi
    };

    // The face nearest the hint is face `k0` (between cells k0-1 and k0).
    let k0 = ((location_hint - grid.x_left()) / grid.dx()).round() as isize;
    let w = TRANSITION_WINDOW as isize;
    let mut offsets: Vec<isize> = (-w..=w).collect();
    offsets.sort_by_key(|o| o.abs());
    let crossing = offsets.into_iter().find_map(|o| {
        let left = grid.wrap(0, k0 + o - 1);
        let right = grid.wrap(left, 1);
        let (a, b) = (field.averages()[left] - mid, field.averages()[right] - mid);
        (a * b <= 0.0 && a != b).then_some((left, right))
    });
    let Some((left, right)) = crossing else {
        return Err(Error::NoTransition {
            hint: location_hint,
            window: TRANSITION_WINDOW,
        });
    };

    let mut count = 0;
    let mut i = left;
    while inside(i) && count < n {
        count += 1;
        i = grid.wrap(i, -1);
    }
    let mut i = right;
    while inside(i) && count < n {
        count += 1;
        i = grid.wrap(i, 1);
    }
    Ok(count + 1)
}

/// One advection benchmark run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Benchmark {
    pub profile: Profile,
    pub n_cells: usize,
    pub periods: f64,
    pub cfl: f64,
    pub scheme: SchemeConfig,
}

impl Benchmark {
    pub fn new(profile: Profile, n_cells: usize, scheme: SchemeConfig) -> Self {
        Self {
            profile,
            n_cells,
            periods: 1.0,
            cfl: TimeConfig::DEFAULT_CFL,
            scheme,
        }
    }

    pub fn with_periods(mut self, periods: f64) -> Self {
        self.periods = periods;
        self
    }

    pub fn with_cfl(mut self, cfl: f64) -> Self {
        self.cfl = cfl;
        self
    }

    pub fn label(&self) -> String {
        let beta = self.scheme.thinc.beta;
        match self.scheme.scheme {
            Scheme::WenoZ => "wenoz".to_string(),
            s if beta == crate::reconstruct::ThincParams::DEFAULT_BETA => s.to_string(),
            s => format!("{s}-beta{beta}"),
        }
    }

    pub fn run(&self) -> Result<RunResult> {
        let initial = self.profile.project(self.n_cells)?;
        let t_end = self.periods * self.profile.period();
        let time = TimeConfig::new(self.cfl, t_end);
        let outcome = advect(&initial, &FluxSpec::linear(1.0), &time, &self.scheme)?;

        // After an integer number of periods the exact averages are the initial ones.
        let exact = if self.periods.fract() == 0.0 {
            initial.clone()
        } else {
            let shift = t_end.rem_euclid(self.profile.period());
            let grid = *initial.grid();
            let (lo, len) = (grid.x_left(), grid.length());
            let p = self.profile;
            project_initial(
                grid,
                |x| p.eval(lo + (x - shift - lo).rem_euclid(len)),
                DEFAULT_QUADRATURE_ORDER,
            )?
        };

        let final_field = outcome.final_field.clone();
        let transition_widths = if self.periods.fract() == 0.0 {
            self.profile
                .jumps()
                .iter()
                .map(|j| transition_width(&final_field, j.lo, j.hi, j.location))
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        let smooth_l1 = match self.profile.smooth_region() {
            Some((a, b)) => Some(l1_error_on(&final_field, &exact, a, b)?),
            None => None,
        };
        let (_, selection) = self.scheme.select(&final_field);

        Ok(RunResult {
            label: self.label(),
            benchmark: *self,
            l1_error: l1_error(&final_field, &exact)?,
            linf_error: linf_error(&final_field, &exact)?,
            smooth_l1_error: smooth_l1,
            transition_widths,
            mass_drift: outcome.mass_drift,
            t_cell_fraction: outcome.thinc_fraction(),
            thinc_counts: outcome.thinc_counts,
            clamp_events: outcome.clamp_events,
            steps: outcome.steps,
            wall_time: outcome.wall_time,
            final_tags: selection.tags,
            initial,
            exact,
            final_field,
        })
    }
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub label: String,
    pub benchmark: Benchmark,
    pub initial: CellField,
    pub final_field: CellField,
    pub exact: CellField,
    pub l1_error: f64,
    pub linf_error: f64,
    /// L1 error over the profile's smooth feature.
    pub smooth_l1_error: Option<f64>,
    /// Width in cells of each initial jump, in [`Profile::jumps`] order.
    pub transition_widths: Vec<usize>,
    pub mass_drift: f64,
    pub t_cell_fraction: f64,
    pub thinc_counts: Vec<usize>,
    pub clamp_events: usize,
    pub steps: usize,
    pub wall_time: Duration,
    /// Selection applied to the final field.
    pub final_tags: Vec<Tag>,
}

impl RunResult {
    pub fn max_width(&self) -> Option<usize> {
        self.transition_widths.iter().copied().max()
    }

    /// `x_center, q_avg, q_exact, tag` per cell.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["x_center", "q_avg", "q_exact", "tag"])?;
        let grid = self.final_field.grid();
        for i in 0..self.final_field.len() {
            w.write_record([
                grid.center(i).to_string(),
                self.final_field.averages()[i].to_string(),
                self.exact.averages()[i].to_string(),
                self.final_tags[i].to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))
    }

    /// Gnuplot script plotting the numerical averages over the exact solution.
    pub fn gnuplot_script(&self, csv_name: &str, png_name: &str) -> String {
        format!(
            "set terminal pngcairo size 900,600\n\
             set output '{png_name}'\n\
             set datafile separator ','\n\
             set key top right\n\
             set xrange [{x0}:{x1}]\n\
             set yrange [-0.2:1.2]\n\
             set title '{label}, N = {n}'\n\
             plot '{csv_name}' every ::1 using 1:3 with lines lc rgb 'black' title 'exact', \\\n     \
             '{csv_name}' every ::1 using 1:2 with points pt 6 ps 0.8 lc rgb 'red' title '{label}'\n",
            x0 = self.final_field.grid().x_left(),
            x1 = self.final_field.grid().x_right(),
            label = self.label,
            n = self.final_field.len(),
        )
    }
}

/// The six complex-wave configurations: WENO-Z alone, BVD(I)–(IV) with
/// β = 1.8, and BVD(IV) with β = 4.0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Figure {
    WenoZ = 1,
    Bvd1 = 2,
    Bvd2 = 3,
    Bvd3 = 4,
    Bvd4 = 5,
    Bvd4Beta4 = 6,
}

impl Figure {
    pub const ALL: [Figure; 6] = [
        Figure::WenoZ,
        Figure::Bvd1,
        Figure::Bvd2,
        Figure::Bvd3,
        Figure::Bvd4,
        Figure::Bvd4Beta4,
    ];

    pub fn from_number(n: u32) -> Option<Self> {
        Self::ALL.into_iter().find(|f| *f as u32 == n)
    }

    pub fn scheme(&self) -> SchemeConfig {
        match self {
            Figure::WenoZ => SchemeConfig::new(Scheme::WenoZ),
            Figure::Bvd1 => SchemeConfig::new(Scheme::Bvd1),
            Figure::Bvd2 => SchemeConfig::new(Scheme::Bvd2),
            Figure::Bvd3 => SchemeConfig::new(Scheme::Bvd3),
            Figure::Bvd4 => SchemeConfig::new(Scheme::Bvd4),
            Figure::Bvd4Beta4 => SchemeConfig::new(Scheme::Bvd4).with_beta(4.0),
        }
    }

    pub fn benchmark(&self, n_cells: usize, periods: f64) -> Benchmark {
        Benchmark::new(Profile::ComplexWaves, n_cells, self.scheme()).with_periods(periods)
    }
}

/// Complex-wave run for one figure configuration.
pub fn reproduce_figure(figure: Figure, n_cells: usize, periods: u32) -> Result<RunResult> {
    figure.benchmark(n_cells, periods as f64).run()
}

/// Grid sizes of the convergence table.
pub const CONVERGENCE_GRIDS: [usize; 5] = [25, 50, 100, 200, 400];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n_cells: usize,
    pub l1_error: f64,
    /// `log2(L1_{N/2} / L1_N)` against the previous row.
    pub order: Option<f64>,
}

/// One-period L1 errors over `grids`, with the time step scaled as
/// `cfl·Δx·(Δx/Δx₀)^{2/3} ∝ Δx^{5/3}` (Δx₀ the first grid) so that third-order
/// time error stays below fifth-order spatial error.
pub fn convergence_study(
    profile: Profile,
    scheme: SchemeConfig,
    grids: &[usize],
    cfl: f64,
) -> Result<Vec<ConvergenceRow>> {
    let Some(&coarsest) = grids.first() else {
        return Ok(Vec::new());
    };
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(grids.len());
    for &n in grids {
        let ratio = coarsest as f64 / n as f64;
        let bench = Benchmark::new(profile, n, scheme).with_cfl(cfl * ratio.powf(2.0 / 3.0));
        let result = bench.run()?;
        let order = rows
            .last()
            .map(|prev| (prev.l1_error / result.l1_error).log2())
            .filter(|o| o.is_finite());
        rows.push(ConvergenceRow {
            n_cells: n,
            l1_error: result.l1_error,
            order,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_wave_samples() {
        assert_eq!(complex_wave_profile(-0.3), 1.0);
        assert!((complex_wave_profile(0.1) - 1.0).abs() < 1e-15);
        assert_eq!(complex_wave_profile(0.9), 0.0);
        assert_eq!(complex_wave_profile(-0.5), 0.0);
        // Gaussian group peaks at its centre slightly below 1.
        let g = complex_wave_profile(-0.7);
        assert!(g > 0.99 && g <= 1.0, "{g}");
        // Semi-ellipse group at its centre.
        let e = complex_wave_profile(0.5);
        assert!(e > 0.99 && e <= 1.0, "{e}");
        assert_eq!(complex_wave_profile(0.61), 0.0);
    }

    #[test]
    fn error_norms() {
        let g = Grid1D::new(4, 0.0, 1.0).unwrap();
        let a = CellField::new(g, vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        assert_eq!(l1_error(&a, &a).unwrap(), 0.0);
        let b = CellField::new(g, a.averages().iter().map(|v| v + 0.5).collect()).unwrap();
        assert!((l1_error(&b, &a).unwrap() - 0.5).abs() < 1e-15);
        assert!((linf_error(&b, &a).unwrap() - 0.5).abs() < 1e-15);

        let g2 = Grid1D::new(2, 0.0, 1.0).unwrap();
        let c = CellField::new(g2, vec![0.0, 1.0]).unwrap();
        let d = CellField::new(g2, vec![1.0, 0.0]).unwrap();
        assert_eq!(l1_error(&c, &d).unwrap(), 1.0);
        assert!(matches!(l1_error(&a, &c), Err(Error::GridMismatch { .. })));
    }

    fn field(values: &[f64]) -> CellField {
        let g = Grid1D::new(values.len(), 0.0, values.len() as f64).unwrap();
        CellField::new(g, values.to_vec()).unwrap()
    }

    #[test]
    fn width_of_exact_and_ramped_steps() {
        let step = field(&[0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0]);
        assert_eq!(transition_width(&step, 0.0, 1.0, 4.0).unwrap(), 1);
        let ramp = field(&[0.0, 0.0, 0.0, 0.25, 0.5, 0.75, 1.0, 1.0, 1.0, 1.0]);
        assert_eq!(transition_width(&ramp, 0.0, 1.0, 4.0).unwrap(), 4);
        let down = field(&[1.0, 1.0, 0.95, 0.5, 0.05, 0.0, 0.0, 0.0]);
        assert_eq!(transition_width(&down, 0.0, 1.0, 3.4).unwrap(), 4);
        let tight = field(&[1.0, 1.0, 0.995, 0.5, 0.005, 0.0, 0.0, 0.0]);
        assert_eq!(transition_width(&tight, 0.0, 1.0, 3.4).unwrap(), 2);
    }

    #[test]
    fn width_requires_a_transition() {
        let flat = field(&[0.0; 40]);
        assert!(matches!(
            transition_width(&flat, 0.0, 1.0, 20.0),
            Err(Error::NoTransition { .. })
        ));
        let mut v = vec![0.0; 40];
        v[35..].fill(1.0);
        // The periodic jump at face 0 lies five cells from the hint.
        assert_eq!(transition_width(&field(&v), 0.0, 1.0, 5.0).unwrap(), 1);
        assert!(transition_width(&field(&v), 0.0, 1.0, 20.0).is_err());
        assert!(transition_width(&field(&v), 1.0, 1.0, 35.0).is_err());
    }

    #[test]
    fn profiles_parse() {
        assert_eq!("complex_waves".parse::<Profile>().unwrap(), Profile::ComplexWaves);
        assert!("triangle".parse::<Profile>().is_err());
    }

    #[test]
    fn figure_numbers() {
        assert_eq!(Figure::from_number(1), Some(Figure::WenoZ));
        assert_eq!(Figure::from_number(6).unwrap().scheme().thinc.beta, 4.0);
        assert_eq!(Figure::from_number(7), None);
        assert_eq!(Figure::Bvd4Beta4.benchmark(200, 1.0).label(), "bvd4-beta4");
    }

    #[test]
    fn csv_layout() {
        let r = Benchmark::new(Profile::Square, 20, SchemeConfig::new(Scheme::Bvd4))
            .run()
            .unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x_center,q_avg,q_exact,tag"));
        assert_eq!(lines.count(), 20);
    }
}

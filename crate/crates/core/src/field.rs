//! Uniform periodic grid and cell-average storage.

use crate::error::{Error, Result};

/// Uniform 1D grid of `n_cells` cells on `[x_left, x_right]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    n_cells: usize,
    x_left: f64,
    x_right: f64,
    dx: f64,
}

impl Grid1D {
    pub fn new(n_cells: usize, x_left: f64, x_right: f64) -> Result<Self> {
        if n_cells == 0 {
            return Err(Error::InvalidGrid("n_cells must be positive".into()));
        }
        if !(x_left.is_finite() && x_right.is_finite()) || x_right <= x_left {
            return Err(Error::InvalidGrid(format!(
                "domain [{x_left}, {x_right}] is empty or non-finite"
            )));
        }
        Ok(Self {
            n_cells,
            x_left,
            x_right,
            dx: (x_right - x_left) / n_cells as f64,
        })
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn x_left(&self) -> f64 {
        self.x_left
    }

    pub fn x_right(&self) -> f64 {
        self.x_right
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn length(&self) -> f64 {
        self.x_right - self.x_left
    }

    /// Position of face `k`, `k = 0..=n_cells`. Cell `i` spans `face(i)..face(i + 1)`.
    pub fn face(&self, k: usize) -> f64 {
        self.x_left + k as f64 * self.dx
    }

    pub fn center(&self, i: usize) -> f64 {
        self.x_left + (i as f64 + 0.5) * self.dx
    }

    /// Index of the cell containing `x`, wrapped periodically.
    pub fn cell_of(&self, x: f64) -> usize {
        let s = ((x - self.x_left) / self.dx).floor() as i64;
        s.rem_euclid(self.n_cells as i64) as usize
    }

    /// Periodic index `i + offset`.
    #[inline]
    pub fn wrap(&self, i: usize, offset: isize) -> usize {
        (i as isize + offset).rem_euclid(self.n_cells as isize) as usize
    }
}

/// Cell averages on a periodic [`Grid1D`].
#[derive(Debug, Clone, PartialEq)]
pub struct CellField {
    grid: Grid1D,
    averages: Vec<f64>,
}

impl CellField {
    pub fn new(grid: Grid1D, averages: Vec<f64>) -> Result<Self> {
        if averages.len() != grid.n_cells() {
            return Err(Error::InvalidGrid(format!(
                "{} averages for {} cells",
                averages.len(),
                grid.n_cells()
            )));
        }
        if let Some(cell) = averages.iter().position(|q| !q.is_finite()) {
            return Err(Error::NonFinite {
                step: 0,
                time: 0.0,
                cell,
            });
        }
        Ok(Self { grid, averages })
    }

    /// Field on unit-width cells over `[0, n]`, for small hand-written cases.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        let grid = Grid1D::new(values.len(), 0.0, values.len().max(1) as f64)?;
        Self::new(grid, values.to_vec())
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn averages(&self) -> &[f64] {
        &self.averages
    }

    pub fn len(&self) -> usize {
        self.averages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.averages.is_empty()
    }

    #[inline]
    pub fn at(&self, i: usize, offset: isize) -> f64 {
        self.averages[self.grid.wrap(i, offset)]
    }

    /// `q̄_{i-h} ..= q̄_{i+h}` with periodic wraparound.
    pub fn stencil(&self, i: usize, half_width: usize) -> Vec<f64> {
        let h = half_width as isize;
        (-h..=h).map(|k| self.at(i, k)).collect()
    }

    pub fn stencil3(&self, i: usize) -> [f64; 3] {
        [self.at(i, -1), self.averages[i], self.at(i, 1)]
    }

    pub fn stencil5(&self, i: usize) -> [f64; 5] {
        [
            self.at(i, -2),
            self.at(i, -1),
            self.averages[i],
            self.at(i, 1),
            self.at(i, 2),
        ]
    }

    /// `Σ q̄_i Δx`.
    pub fn mass(&self) -> f64 {
        self.averages.iter().sum::<f64>() * self.grid.dx()
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(order: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if order < 1 {
        return Err(Error::QuadratureOrder(order));
    }
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..n.div_ceil(2) {
        // Newton on P_n from the Chebyshev-like initial guess.
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[k] = -x;
        nodes[n - 1 - k] = x;
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok((nodes, weights))
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let (p, pm1) = if n == 0 { (1.0, 0.0) } else { (p1, p0) };
    let d = n as f64 * (x * p - pm1) / (x * x - 1.0);
    (p, d)
}

/// Default quadrature order for initial projection.
pub const DEFAULT_QUADRATURE_ORDER: usize = 5;

/// Cell averages of `profile` by per-cell Gauss–Legendre quadrature.
pub fn project_initial<F>(grid: Grid1D, profile: F, order: usize) -> Result<CellField>
where
    F: Fn(f64) -> f64,
{
    let (nodes, weights) = gauss_legendre(order)?;
    let half = 0.5 * grid.dx();
    let averages = (0..grid.n_cells())
        .map(|i| {
            let mid = grid.center(i);
            let sum: f64 = nodes
                .iter()
                .zip(&weights)
                .map(|(&x, &w)| w * profile(mid + half * x))
                .sum();
            0.5 * sum
        })
        .collect();
    CellField::new(grid, averages)
}

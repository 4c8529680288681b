//! Candidate reconstructions: fifth-order WENO-Z and the THINC sigmoid.
//!
//! Both produce a [`BoundaryPair`] per cell, the reconstruction evaluated at
//! the cell's left face `x_{i-1/2}` and right face `x_{i+1/2}`.

/// Reconstructed values at the two faces of one cell, seen from inside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPair {
    pub left: f64,
    pub right: f64,
}

impl BoundaryPair {
    pub const fn new(left: f64, right: f64) -> Self {
        Self { left, right }
    }

    /// `w·self + (1 − w)·other`, evaluated per face.
    pub fn blend(&self, other: &BoundaryPair, w: f64) -> BoundaryPair {
        BoundaryPair {
            left: w * self.left + (1.0 - w) * other.left,
            right: w * self.right + (1.0 - w) * other.right,
        }
    }
}

/// Guard inside the WENO-Z nonlinear weights.
pub const WENO_Z_EPS: f64 = 1e-40;

/// Linear weights of the three quadratic sub-stencils.
const LINEAR_WEIGHTS: [f64; 3] = [0.1, 0.6, 0.3];

/// WENO-Z value at the right face of the centre cell of `q = [q̄_{i-2}, .., q̄_{i+2}]`.
#[inline]
pub fn weno_z_right(q: &[f64; 5]) -> f64 {
    let [qm2, qm1, q0, qp1, qp2] = *q;

    let v0 = (2.0 * qm2 - 7.0 * qm1 + 11.0 * q0) / 6.0;
    let v1 = (-qm1 + 5.0 * q0 + 2.0 * qp1) / 6.0;
    let v2 = (2.0 * q0 + 5.0 * qp1 - qp2) / 6.0;

    let b0 = 13.0 / 12.0 * (qm2 - 2.0 * qm1 + q0).powi(2)
        + 0.25 * (qm2 - 4.0 * qm1 + 3.0 * q0).powi(2);
    let b1 = 13.0 / 12.0 * (qm1 - 2.0 * q0 + qp1).powi(2) + 0.25 * (qm1 - qp1).powi(2);
    let b2 = 13.0 / 12.0 * (q0 - 2.0 * qp1 + qp2).powi(2)
        + 0.25 * (3.0 * q0 - 4.0 * qp1 + qp2).powi(2);

    let tau5 = (b0 - b2).abs();
    let a0 = LINEAR_WEIGHTS[0] * (1.0 + tau5 / (b0 + WENO_Z_EPS));
    let a1 = LINEAR_WEIGHTS[1] * (1.0 + tau5 / (b1 + WENO_Z_EPS));
    let a2 = LINEAR_WEIGHTS[2] * (1.0 + tau5 / (b2 + WENO_Z_EPS));
    let sum = a0 + a1 + a2;

    (a0 * v0 + a1 * v1 + a2 * v2) / sum
}

/// WENO-Z boundary values of the centre cell; the left face uses the mirrored stencil.
pub fn weno_z_pair(q: &[f64; 5]) -> BoundaryPair {
    let mirrored = [q[4], q[3], q[2], q[1], q[0]];
    BoundaryPair {
        left: weno_z_right(&mirrored),
        right: weno_z_right(q),
    }
}

/// Steepness and division guard of the THINC sigmoid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThincParams {
    pub beta: f64,
    pub eps: f64,
}

impl ThincParams {
    pub const DEFAULT_BETA: f64 = 1.8;
    pub const DEFAULT_EPS: f64 = 1e-20;

    pub fn new(beta: f64) -> Self {
        Self {
            beta,
            eps: Self::DEFAULT_EPS,
        }
    }
}

impl Default for ThincParams {
    fn default() -> Self {
        Self::new(Self::DEFAULT_BETA)
    }
}

/// Jump-fitting quantities shared by [`thinc_pair`] and [`thinc_admissible`].
#[derive(Debug, Clone, Copy)]
struct ThincFrame {
    q_min: f64,
    /// Jump amplitude `max(q̄_{i-1}, q̄_{i+1}) − q_min`.
    q_jump: f64,
    theta: f64,
    /// Normalised position of `q̄_i` within the jump.
    c: f64,
}

impl ThincFrame {
    #[inline]
    fn new(q_im1: f64, q_i: f64, q_ip1: f64, eps: f64) -> Self {
        let q_min = q_im1.min(q_ip1);
        let q_jump = q_im1.max(q_ip1) - q_min;
        let d = q_ip1 - q_im1;
        let theta = if d > 0.0 {
            1.0
        } else if d < 0.0 {
            -1.0
        } else {
            0.0
        };
        let c = (q_i - q_min + eps) / (q_jump + eps);
        Self {
            q_min,
            q_jump,
            theta,
            c,
        }
    }
}

/// THINC boundary values of cell `i` from `(q̄_{i-1}, q̄_i, q̄_{i+1})`.
///
/// The result is finite whenever the cell passes [`thinc_admissible`]; far
/// outside the jump the exponential may overflow.
pub fn thinc_pair(q_im1: f64, q_i: f64, q_ip1: f64, params: &ThincParams) -> BoundaryPair {
    let ThincFrame {
        q_min,
        q_jump,
        theta,
        c,
    } = ThincFrame::new(q_im1, q_i, q_ip1, params.eps);
    let beta = params.beta;
    let tanh_b = beta.tanh();
    let b = (theta * beta * (2.0 * c - 1.0)).exp();
    let a = (b / beta.cosh() - 1.0) / tanh_b;
    let half = 0.5 * q_jump;
    BoundaryPair {
        left: q_min + half * (1.0 + theta * a),
        right: q_min + half * (1.0 + theta * (tanh_b + a) / (1.0 + a * tanh_b)),
    }
}

/// THINC may replace WENO in a cell only where `δ < C < 1 − δ` and the data
/// are strictly monotone across the cell.
pub fn thinc_admissible(q_im1: f64, q_i: f64, q_ip1: f64, delta: f64, eps: f64) -> bool {
    let frame = ThincFrame::new(q_im1, q_i, q_ip1, eps);
    delta < frame.c && frame.c < 1.0 - delta && (q_ip1 - q_i) * (q_i - q_im1) > 0.0
}

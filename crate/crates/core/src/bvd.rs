//! Boundary variation diminishing (BVD) selection between WENO-Z and THINC.
//!
//! Every selector reads a [`CandidateSet`] (both reconstructions per cell plus
//! THINC admissibility) and returns a per-cell [`Tag`] together with the
//! interface states handed to the Riemann solver. Ties always go to WENO.

use crate::field::CellField;
use crate::reconstruct::{thinc_admissible, thinc_pair, weno_z_pair, BoundaryPair, ThincParams};

/// Both candidate reconstructions of one cell. `thinc` is `None` where THINC
/// fails the admissibility test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub weno: BoundaryPair,
    pub thinc: Option<BoundaryPair>,
}

impl Candidate {
    pub fn admissible(&self) -> bool {
        self.thinc.is_some()
    }

    /// THINC values where admissible, WENO otherwise.
    pub fn thinc_or_weno(&self) -> BoundaryPair {
        self.thinc.unwrap_or(self.weno)
    }

    /// Candidates this cell may choose from, WENO first.
    fn options(&self) -> impl Iterator<Item = (Choice, BoundaryPair)> + '_ {
        std::iter::once((Choice::Weno, self.weno))
            .chain(self.thinc.map(|t| (Choice::Thinc, t)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    cells: Vec<Candidate>,
}

impl CandidateSet {
    /// WENO-Z everywhere plus THINC on every cell passing the `delta` test.
    pub fn build(field: &CellField, thinc: &ThincParams, delta: f64) -> Self {
        let cells = (0..field.len())
            .map(|i| {
                let [qm, q0, qp] = field.stencil3(i);
                let thinc = thinc_admissible(qm, q0, qp, delta, thinc.eps)
                    .then(|| thinc_pair(qm, q0, qp, thinc));
                Candidate {
                    weno: weno_z_pair(&field.stencil5(i)),
                    thinc,
                }
            })
            .collect();
        Self { cells }
    }

    /// WENO-Z only; no cell is THINC-admissible.
    pub fn weno_only(field: &CellField) -> Self {
        let cells = (0..field.len())
            .map(|i| Candidate {
                weno: weno_z_pair(&field.stencil5(i)),
                thinc: None,
            })
            .collect();
        Self { cells }
    }

    pub fn from_cells(cells: Vec<Candidate>) -> Self {
        Self { cells }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Candidate] {
        &self.cells
    }

    #[inline]
    pub fn at(&self, i: usize, offset: isize) -> &Candidate {
        let n = self.cells.len() as isize;
        &self.cells[(i as isize + offset).rem_euclid(n) as usize]
    }
}

/// A discrete choice between the two reconstructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Choice {
    Weno,
    Thinc,
}

/// Final reconstruction of a cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tag {
    Weno,
    Thinc,
    /// `ω·THINC + (1 − ω)·WENO`, `ω ∈ (0, 1]`.
    Blend(f64),
}

impl From<Choice> for Tag {
    fn from(c: Choice) -> Self {
        match c {
            Choice::Weno => Tag::Weno,
            Choice::Thinc => Tag::Thinc,
        }
    }
}

impl Tag {
    /// Boundary values of `cell` under this tag.
    ///
    /// # Panics
    /// If the tag asks for THINC on an inadmissible cell.
    pub fn resolve(&self, cell: &Candidate) -> BoundaryPair {
        match *self {
            Tag::Weno => cell.weno,
            Tag::Thinc => cell.thinc.expect("THINC tag on inadmissible cell"),
            Tag::Blend(w) => cell
                .thinc
                .expect("blend tag on inadmissible cell")
                .blend(&cell.weno, w),
        }
    }

    /// THINC weight of this tag.
    pub fn weight(&self) -> f64 {
        match *self {
            Tag::Weno => 0.0,
            Tag::Thinc => 1.0,
            Tag::Blend(w) => w,
        }
    }

    pub fn uses_thinc(&self) -> bool {
        self.weight() > 0.0
    }
}

impl std::fmt::Display for Tag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tag::Weno => f.write_str("W"),
            Tag::Thinc => f.write_str("T"),
            Tag::Blend(w) => write!(f, "{w}"),
        }
    }
}

/// Interface states at face `i + 1/2`: `left` from cell `i`, `right` from cell `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interface {
    pub left: f64,
    pub right: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    pub tags: Vec<Tag>,
    /// Indexed by face `i + 1/2`, `i = 0..n`.
    pub interfaces: Vec<Interface>,
    /// Cells whose BVD(III) weight left `[0, 1]` and was clamped.
    pub clamped: usize,
}

impl SelectionResult {
    fn from_tags(tags: Vec<Tag>, candidates: &CandidateSet) -> Self {
        let interfaces = assemble_interfaces(&tags, candidates);
        Self {
            tags,
            interfaces,
            clamped: 0,
        }
    }

    pub fn thinc_cells(&self) -> usize {
        self.tags.iter().filter(|t| t.uses_thinc()).count()
    }
}

/// Face states from per-cell tags, periodic at the domain ends.
pub fn assemble_interfaces(tags: &[Tag], candidates: &CandidateSet) -> Vec<Interface> {
    assert_eq!(tags.len(), candidates.len(), "selection covers every cell");
    let pairs: Vec<BoundaryPair> = tags
        .iter()
        .zip(candidates.cells())
        .map(|(t, c)| t.resolve(c))
        .collect();
    let n = pairs.len();
    (0..n)
        .map(|i| Interface {
            left: pairs[i].right,
            right: pairs[(i + 1) % n].left,
        })
        .collect()
}

/// Pure WENO-Z selection.
pub fn weno_select(candidates: &CandidateSet) -> SelectionResult {
    SelectionResult::from_tags(vec![Tag::Weno; candidates.len()], candidates)
}

/// Minimising candidate pair at face `i + 1/2`, searched in the order
/// (W,W), (W,T), (T,W), (T,T); returns the pair and the signed variation
/// `q_i(x_{i+1/2}) − q_{i+1}(x_{i+1/2})`.
fn min_face_variation(own: &Candidate, next: &Candidate) -> (Choice, Choice, f64) {
    let mut best: Option<(Choice, Choice, f64)> = None;
    for (xi, p) in own.options() {
        for (eta, q) in next.options() {
            let jump = p.right - q.left;
            if best.is_none_or(|(_, _, b)| jump.abs() < b.abs()) {
                best = Some((xi, eta, jump));
            }
        }
    }
    best.expect("WENO is always an option")
}

/// BVD(I): minimise the boundary variation face by face, then resolve cells
/// that received conflicting nominations from their two faces by the sign of
/// the two minimal variations.
pub fn bvd1_select(candidates: &CandidateSet) -> SelectionResult {
    let n = candidates.len();
    let faces: Vec<(Choice, Choice, f64)> = (0..n)
        .map(|i| min_face_variation(candidates.at(i, 0), candidates.at(i, 1)))
        .collect();

    let tags = (0..n)
        .map(|i| {
            let (from_right, _, jump_right) = faces[i];
            let (_, from_left, jump_left) = faces[(i + n - 1) % n];
            if from_right == from_left {
                from_right.into()
            } else if jump_right * jump_left < 0.0 {
                Tag::Weno
            } else {
                Tag::Thinc
            }
        })
        .collect();
    SelectionResult::from_tags(tags, candidates)
}

/// Smallest total boundary variation of `own` over all admissible
/// neighbour candidate combinations.
fn min_total_variation(prev: &Candidate, own: &BoundaryPair, next: &Candidate) -> f64 {
    let left = prev
        .options()
        .map(|(_, p)| (p.right - own.left).abs())
        .fold(f64::INFINITY, f64::min);
    let right = next
        .options()
        .map(|(_, p)| (p.left - own.right).abs())
        .fold(f64::INFINITY, f64::min);
    left + right
}

/// BVD(II): THINC where its minimum total boundary variation is strictly
/// smaller than WENO's.
pub fn bvd2_select(candidates: &CandidateSet) -> SelectionResult {
    let tags = (0..candidates.len())
        .map(|i| {
            let (prev, cell, next) = (candidates.at(i, -1), candidates.at(i, 0), candidates.at(i, 1));
            match cell.thinc {
                Some(thinc)
                    if min_total_variation(prev, &thinc, next)
                        < min_total_variation(prev, &cell.weno, next) =>
                {
                    Tag::Thinc
                }
                _ => Tag::Weno,
            }
        })
        .collect();
    SelectionResult::from_tags(tags, candidates)
}

/// Quantities BVD(III) derives per cell; exposed for diagnostics and tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlendTerms {
    /// Normalised fourth-power WENO boundary variation.
    pub tbv: f64,
    /// Smoothness indicator `(1 − tbv) / max(tbv, eps)`.
    pub smoothness: f64,
    /// Neighbour-WENO minus own-WENO at the left / right face.
    pub d_left: f64,
    pub d_right: f64,
    /// Own THINC minus own WENO at the left / right face.
    pub e_left: f64,
    pub e_right: f64,
}

impl BlendTerms {
    /// `τ(ω)`: squared face jumps against WENO neighbours for blend weight `ω`.
    pub fn tau(&self, w: f64) -> f64 {
        (self.d_left - w * self.e_left).powi(2) + (self.d_right - w * self.e_right).powi(2)
    }

    /// Stationary point of `τ`, or `None` when THINC and WENO coincide at
    /// both faces (denominator below `eps`).
    pub fn optimal_weight(&self, eps: f64) -> Option<f64> {
        let denom = self.e_left * self.e_left + self.e_right * self.e_right;
        (denom >= eps)
            .then(|| (self.d_left * self.e_left + self.d_right * self.e_right) / denom)
    }
}

pub fn blend_terms(
    candidates: &CandidateSet,
    averages: &CellField,
    i: usize,
    eps: f64,
) -> BlendTerms {
    let (prev, cell, next) = (candidates.at(i, -1), candidates.at(i, 0), candidates.at(i, 1));
    let d_left = prev.weno.right - cell.weno.left;
    let d_right = next.weno.left - cell.weno.right;
    let [qm, q0, qp] = averages.stencil3(i);
    let tbv = (d_left.powi(4) + d_right.powi(4))
        / ((q0 - qm).powi(4) + (q0 - qp).powi(4) + eps);
    let smoothness = (1.0 - tbv) / tbv.max(eps);
    let thinc = cell.thinc_or_weno();
    BlendTerms {
        tbv,
        smoothness,
        d_left,
        d_right,
        e_left: thinc.left - cell.weno.left,
        e_right: thinc.right - cell.weno.right,
    }
}

/// BVD(III) zero-division guard.
pub const BVD3_EPS: f64 = 1e-16;
/// BVD(III) smoothness cutoff; cells with a smaller indicator are blended.
pub const BVD3_S_CUTOFF: f64 = 1e6;

/// BVD(III): in cells flagged non-smooth, blend THINC into WENO with the
/// weight minimising the squared face jumps against WENO neighbours. The
/// weight is clamped to `[0, 1]`.
pub fn bvd3_select(
    candidates: &CandidateSet,
    averages: &CellField,
    s_cutoff: f64,
    eps: f64,
) -> SelectionResult {
    assert_eq!(candidates.len(), averages.len());
    let mut clamped = 0;
    let tags = (0..candidates.len())
        .map(|i| {
            if !candidates.at(i, 0).admissible() {
                return Tag::Weno;
            }
            let terms = blend_terms(candidates, averages, i, eps);
            if terms.smoothness >= s_cutoff {
                return Tag::Weno;
            }
            let Some(w) = terms.optimal_weight(eps) else {
                return Tag::Weno;
            };
            if !(0.0..=1.0).contains(&w) {
                clamped += 1;
            }
            let w = w.clamp(0.0, 1.0);
            if w > 0.0 {
                Tag::Blend(w)
            } else {
                Tag::Weno
            }
        })
        .collect();
    SelectionResult {
        clamped,
        ..SelectionResult::from_tags(tags, candidates)
    }
}

/// BVD(IV): THINC where the all-THINC total boundary variation over the cell
/// and its neighbours is strictly smaller than the all-WENO one.
/// Inadmissible neighbours contribute their WENO values to the THINC sum.
pub fn bvd4_select(candidates: &CandidateSet) -> SelectionResult {
    let tags = (0..candidates.len())
        .map(|i| {
            let (prev, cell, next) = (candidates.at(i, -1), candidates.at(i, 0), candidates.at(i, 1));
            let Some(thinc) = cell.thinc else {
                return Tag::Weno;
            };
            let tbv_w = (prev.weno.right - cell.weno.left).abs()
                + (cell.weno.right - next.weno.left).abs();
            let (tp, tn) = (prev.thinc_or_weno(), next.thinc_or_weno());
            let tbv_t = (tp.right - thinc.left).abs() + (thinc.right - tn.left).abs();
            if tbv_t < tbv_w {
                Tag::Thinc
            } else {
                Tag::Weno
            }
        })
        .collect();
    SelectionResult::from_tags(tags, candidates)
}

//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use bvd_core::bvd::{Candidate, CandidateSet, Tag};
use bvd_core::reconstruct::BoundaryPair;
use rand::Rng;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Pick {
    W,
    T,
}

pub fn value(c: &Candidate, p: Pick) -> Option<BoundaryPair> {
    match p {
        Pick::W => Some(c.weno),
        Pick::T => c.thinc,
    }
}

fn cell(cands: &CandidateSet, i: isize) -> &Candidate {
    let n = cands.len() as isize;
    &cands.cells()[i.rem_euclid(n) as usize]
}

/// Exhaustive face-by-face minimisation followed by conflict resolution.
pub fn bvd1_oracle(cands: &CandidateSet) -> Vec<Tag> {
    let n = cands.len() as isize;
    let order = [(Pick::W, Pick::W), (Pick::W, Pick::T), (Pick::T, Pick::W), (Pick::T, Pick::T)];
    // faces[k] = (own pick, neighbour pick, signed variation) at face k + 1/2
    let mut faces = Vec::new();
    for k in 0..n {
        let mut table: Vec<(Pick, Pick, f64)> = Vec::new();
        for (a, b) in order {
            if let (Some(p), Some(q)) = (value(cell(cands, k), a), value(cell(cands, k + 1), b)) {
                table.push((a, b, p.right - q.left));
            }
        }
        let min = table.iter().map(|t| t.2.abs()).fold(f64::INFINITY, f64::min);
        let first = *table.iter().find(|t| t.2.abs() == min).unwrap();
        faces.push(first);
    }
    (0..n as usize)
        .map(|i| {
            let right = faces[i];
            let left = faces[(i + n as usize - 1) % n as usize];
            let (nom_r, nom_l) = (right.0, left.1);
            let pick = if nom_r == nom_l {
                nom_r
            } else if right.2 * left.2 < 0.0 {
                Pick::W
            } else {
                Pick::T
            };
            match pick {
                Pick::W => Tag::Weno,
                Pick::T => Tag::Thinc,
            }
        })
        .collect()
}

/// Neighbour value under a pick, with inadmissible THINC replaced by WENO.
fn neighbour(c: &Candidate, p: Pick) -> BoundaryPair {
    value(c, p).unwrap_or(c.weno)
}

/// Brute-force minimum total boundary variation over all four neighbour combinations.
pub fn bvd2_oracle(cands: &CandidateSet) -> Vec<Tag> {
    let n = cands.len() as isize;
    (0..n)
        .map(|i| {
            let (prev, own, next) = (cell(cands, i - 1), cell(cands, i), cell(cands, i + 1));
            let mtbv = |mine: BoundaryPair| {
                let mut best = f64::INFINITY;
                for a in [Pick::W, Pick::T] {
                    for b in [Pick::W, Pick::T] {
                        let tbv = (neighbour(prev, a).right - mine.left).abs()
                            + (neighbour(next, b).left - mine.right).abs();
                        best = best.min(tbv);
                    }
                }
                best
            };
            match own.thinc {
                Some(t) if mtbv(t) < mtbv(own.weno) => Tag::Thinc,
                _ => Tag::Weno,
            }
        })
        .collect()
}

/// Random periodic field mixing monotone runs, plateaus and noise so that
/// a good share of cells is THINC-admissible.
pub fn random_field<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    if rng.gen_bool(0.5) {
        let start = rng.gen_range(0..n);
        let len = rng.gen_range(3..=n.min(6));
        let mut run: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
        run.sort_by(f64::total_cmp);
        if rng.gen_bool(0.5) {
            run.reverse();
        }
        for (k, x) in run.into_iter().enumerate() {
            v[(start + k) % n] = x;
        }
    }
    v
}

/// THINC sigmoid `q(ξ)` on the unit cell with jump centre `centre`.
pub fn thinc_profile(q_min: f64, q_jump: f64, theta: f64, beta: f64, centre: f64, xi: f64) -> f64 {
    q_min + 0.5 * q_jump * (1.0 + theta * (beta * (xi - centre)).tanh())
}

/// Composite 3-point Gauss integral of `f` over `[0, 1]`.
pub fn integrate_unit<F: Fn(f64) -> f64>(f: F, panels: usize) -> f64 {
    let nodes = [-(0.6f64).sqrt(), 0.0, (0.6f64).sqrt()];
    let weights = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];
    let h = 1.0 / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (x, w) in nodes.iter().zip(weights) {
            sum += w * f(mid + 0.5 * h * x);
        }
    }
    0.5 * h * sum
}

/// Jump centre whose sigmoid has unit-cell mean `target`, by bisection.
pub fn solve_centre(q_min: f64, q_jump: f64, theta: f64, beta: f64, target: f64) -> f64 {
    let mean = |c: f64| integrate_unit(|x| thinc_profile(q_min, q_jump, theta, beta, c, x), 64);
    let (mut lo, mut hi) = (-40.0, 40.0);
    // Mean is monotone in the centre: decreasing for θ = 1, increasing for θ = −1.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let too_high = (mean(mid) - target) * theta > 0.0;
        if too_high {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    0.5 * (lo + hi)
}

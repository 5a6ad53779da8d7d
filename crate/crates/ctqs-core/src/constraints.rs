//! Energy-based feasibility checker for stationary evolution between
//! orthogonal states.
//!
//! States are parametrized in the Hamiltonian eigenbasis by a population
//! imbalance `epsilon` and four phases,
//!
//! `|A> = sqrt((1-eps)/2) e^{iphi_a1} |E1> + sqrt((1+eps)/2) e^{i phi_a2} |E2>`,
//!
//! which builds in normalization and equal mean energy. Scanning `epsilon`
//! and minimizing the orthogonality residual over the phases shows the full
//! constraint system is solvable only at `epsilon = 0`, the time-optimal
//! configuration.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{StateVector, C64};

/// Residual threshold below which a constraint counts as satisfied.
pub const FEASIBILITY_TOL: f64 = 1e-10;
/// Threshold separating the `epsilon = 0` root from its grid neighbors.
pub const UNIQUENESS_TOL: f64 = 1e-8;
/// Coarse phase-grid resolution (degrees) for the orthogonality minimizer.
const PHASE_GRID: usize = 360;
/// Local simplex refinement steps after the coarse scan.
const REFINE_STEPS: usize = 30;

/// The four complex amplitudes of a candidate pair in the eigenbasis.
#[derive(Debug, Clone, Copy)]
pub struct AmplitudeSet {
    pub alpha1: C64,
    pub alpha2: C64,
    pub beta1: C64,
    pub beta2: C64,
}

impl AmplitudeSet {
    /// Reads the amplitudes off a qubit pair expressed in the eigenbasis.
    pub fn from_pair(a: &StateVector, b: &StateVector) -> Result<Self> {
        if a.dim() != 2 || b.dim() != 2 {
            return Err(Error::DimensionMismatch {
                left: a.dim(),
                right: 2,
            });
        }
        Ok(Self {
            alpha1: a.amp(0),
            alpha2: a.amp(1),
            beta1: b.amp(0),
            beta2: b.amp(1),
        })
    }
}

/// Residuals of the normalization, orthogonality, mean-energy, and
/// energy-variance constraints for a candidate amplitude set.
#[derive(Debug, Clone, Copy)]
pub struct ConstraintReport {
    pub normalization_residual: f64,
    pub orthogonality_residual: f64,
    pub mean_energy_residual: f64,
    pub variance_residual: f64,
    /// All residuals below [`FEASIBILITY_TOL`].
    pub feasible: bool,
}

/// Evaluates the constraint system for a traceless Hamiltonian with
/// eigenvalues `-E, +E`. The mean-energy condition implies the variance one,
/// so `variance_residual <= mean_energy_residual * (|u| + |v|) * E` with
/// `u, v` the two population imbalances.
pub fn check_system(amps: &AmplitudeSet, energy: f64) -> ConstraintReport {
    let a1 = amps.alpha1.norm_sqr();
    let a2 = amps.alpha2.norm_sqr();
    let b1 = amps.beta1.norm_sqr();
    let b2 = amps.beta2.norm_sqr();

    let normalization_residual = (a1 + a2 - 1.0).abs().max((b1 + b2 - 1.0).abs());
    let orthogonality_residual =
        (amps.alpha1.conj() * amps.beta1 + amps.alpha2.conj() * amps.beta2).norm();
    let u = a2 - a1;
    let v = b2 - b1;
    let mean_energy_residual = energy * (u - v).abs();
    let variance_residual = energy * energy * (u * u - v * v).abs();
    debug_assert!(variance_residual <= mean_energy_residual * energy * (u.abs() + v.abs()) + 1e-15);

    let feasible = normalization_residual < FEASIBILITY_TOL
        && orthogonality_residual < FEASIBILITY_TOL
        && mean_energy_residual < FEASIBILITY_TOL
        && variance_residual < FEASIBILITY_TOL;
    ConstraintReport {
        normalization_residual,
        orthogonality_residual,
        mean_energy_residual,
        variance_residual,
        feasible,
    }
}

/// Builds the candidate pair `(|A>, |B>)` for imbalance `epsilon` and phases
/// `[phi_a1, phi_a2, phi_b1, phi_b2]`. Both states are normalized by
/// construction and share the same mean energy.
pub fn build_pair(epsilon: f64, phases: [f64; 4]) -> Result<(StateVector, StateVector)> {
    if epsilon.abs() >= 1.0 {
        return Err(Error::EpsilonOutOfRange { epsilon });
    }
    let lo = ((1.0 - epsilon) / 2.0).sqrt();
    let hi = ((1.0 + epsilon) / 2.0).sqrt();
    let a = StateVector::qubit(
        C64::from_polar(lo, phases[0]),
        C64::from_polar(hi, phases[1]),
    );
    let b = StateVector::qubit(
        C64::from_polar(lo, phases[2]),
        C64::from_polar(hi, phases[3]),
    );
    Ok((a, b))
}

/// `|((1+eps)/(1-eps))^2 - 1|`: the residual of the final phase-closure
/// condition, zero only at `epsilon = 0`.
pub fn epsilon_residual(epsilon: f64) -> Result<f64> {
    if epsilon.abs() >= 1.0 {
        return Err(Error::EpsilonOutOfRange { epsilon });
    }
    let r = (1.0 + epsilon) / (1.0 - epsilon);
    Ok((r * r - 1.0).abs())
}

/// `|<A|B>|` minimized over the phases for fixed `epsilon`.
///
/// The overlap is `p e^{iu} + q e^{iv}` with `p = (1-eps)/2`,
/// `q = (1+eps)/2`, `u = phi_b1 - phi_a1`, `v = phi_b2 - phi_a2`; it depends
/// on the four phases only through `(u, v)`, and on the coarse grid only
/// through `u - v`, so the 360x360 grid minimum equals the minimum over the
/// realized differences. A short simplex refinement in `(u, v)` follows.
pub fn min_orthogonality_over_phases(epsilon: f64) -> Result<(f64, [f64; 2])> {
    let residual = |u: f64, v: f64| -> f64 {
        let (a, b) = build_pair(epsilon, [0.0, 0.0, u, v]).expect("epsilon validated");
        a.inner(&b).expect("qubit pair").norm()
    };
    // validate epsilon once up front
    build_pair(epsilon, [0.0; 4])?;

    let step = core::f64::consts::TAU / PHASE_GRID as f64;
    let mut best = f64::INFINITY;
    let mut best_delta = 0.0;
    for k in 0..PHASE_GRID {
        let delta = k as f64 * step;
        let f = residual(delta, 0.0);
        if f < best {
            best = f;
            best_delta = delta;
        }
    }

    let (point, value) = nelder_mead_2d(
        |p| residual(p[0], p[1]),
        [best_delta, 0.0],
        step,
        REFINE_STEPS,
    );
    if value < best {
        Ok((value, point))
    } else {
        Ok((best, [best_delta, 0.0]))
    }
}

/// Fixed-iteration Nelder-Mead on two variables; deterministic.
fn nelder_mead_2d(
    f: impl Fn([f64; 2]) -> f64,
    start: [f64; 2],
    scale: f64,
    iterations: usize,
) -> ([f64; 2], f64) {
    let mut simplex = [
        start,
        [start[0] + scale, start[1]],
        [start[0], start[1] + scale],
    ];
    let mut values = [f(simplex[0]), f(simplex[1]), f(simplex[2])];

    for _ in 0..iterations {
        // order ascending
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).expect("finite"));
        let (b, m, w) = (idx[0], idx[1], idx[2]);

        let centroid = [
            0.5 * (simplex[b][0] + simplex[m][0]),
            0.5 * (simplex[b][1] + simplex[m][1]),
        ];
        let reflect = [
            centroid[0] + (centroid[0] - simplex[w][0]),
            centroid[1] + (centroid[1] - simplex[w][1]),
        ];
        let fr = f(reflect);

        if fr < values[b] {
            let expand = [
                centroid[0] + 2.0 * (centroid[0] - simplex[w][0]),
                centroid[1] + 2.0 * (centroid[1] - simplex[w][1]),
            ];
            let fe = f(expand);
            if fe < fr {
                simplex[w] = expand;
                values[w] = fe;
            } else {
                simplex[w] = reflect;
                values[w] = fr;
            }
        } else if fr < values[m] {
            simplex[w] = reflect;
            values[w] = fr;
        } else {
            let contract = [
                centroid[0] + 0.5 * (simplex[w][0] - centroid[0]),
                centroid[1] + 0.5 * (simplex[w][1] - centroid[1]),
            ];
            let fc = f(contract);
            if fc < values[w] {
                simplex[w] = contract;
                values[w] = fc;
            } else {
                for i in 0..3 {
                    if i == b {
                        continue;
                    }
                    simplex[i] = [
                        0.5 * (simplex[i][0] + simplex[b][0]),
                        0.5 * (simplex[i][1] + simplex[b][1]),
                    ];
                    values[i] = f(simplex[i]);
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..3 {
        if values[i] < values[best] {
            best = i;
        }
    }
    (simplex[best], values[best])
}

/// One scanned imbalance value.
#[derive(Debug, Clone, Copy)]
pub struct EpsilonScanPoint {
    pub epsilon: f64,
    pub min_orthogonality: f64,
    /// `min_orthogonality < UNIQUENESS_TOL`.
    pub feasible: bool,
}

/// Result of the full imbalance scan.
#[derive(Debug, Clone)]
pub struct UniquenessReport {
    pub points: Vec<EpsilonScanPoint>,
    pub feasible_epsilons: Vec<f64>,
    /// Exactly one feasible grid point, at `epsilon = 0`.
    pub unique_at_zero: bool,
    /// `|<E1|A>|^2` at the feasible solution (1/2 in the time-optimal case).
    pub eigenstate_overlap_sq: f64,
}

/// Scans `epsilon` over `grid_size` points on `[-0.9, 0.9]`, minimizing the
/// orthogonality residual over the phases at each point. Normalization and
/// the mean-energy condition hold by construction, so orthogonality is the
/// only constraint left; it is attainable only at `epsilon = 0`.
pub fn verify_unique_feasibility(grid_size: usize) -> UniquenessReport {
    assert!(grid_size >= 101);
    let mut points = Vec::with_capacity(grid_size);
    let mut feasible_epsilons = Vec::new();
    let mut best_zero: Option<(f64, [f64; 2])> = None;

    for k in 0..grid_size {
        let epsilon = -0.9 + 1.8 * k as f64 / (grid_size - 1) as f64;
        let (min_orthogonality, phases) =
            min_orthogonality_over_phases(epsilon).expect("epsilon inside (-1, 1)");
        let feasible = min_orthogonality < UNIQUENESS_TOL;
        if feasible {
            feasible_epsilons.push(epsilon);
            let replace = best_zero
                .map(|(e, _)| epsilon.abs() < e.abs())
                .unwrap_or(true);
            if replace {
                best_zero = Some((epsilon, phases));
            }
        }
        points.push(EpsilonScanPoint {
            epsilon,
            min_orthogonality,
            feasible,
        });
    }

    let unique_at_zero = feasible_epsilons.len() == 1 && feasible_epsilons[0].abs() < 1e-12;
    let eigenstate_overlap_sq = match best_zero {
        Some((epsilon, phases)) => {
            let (a, _b) =
                build_pair(epsilon, [0.0, 0.0, phases[0], phases[1]]).expect("feasible epsilon");
            a.amp(0).norm_sqr()
        }
        None => f64::NAN,
    };

    UniquenessReport {
        points,
        feasible_epsilons,
        unique_at_zero,
        eigenstate_overlap_sq,
    }
}

//! Instantaneous eigensystem tracking along schedules, minimum-gap detection,
//! level-crossing diagnosis, eigenbasis overlap probabilities for the
//! nonstationary qubit model, and symmetry checks (commutators, involutions,
//! Bloch-eigenvector orthogonality).

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::bloch::state_to_bloch;
use crate::error::{Error, Result};
use crate::hamiltonians::{
    transport_phase, uzdin_state, uzdin_state_dot, HamiltonianSampler, TimeDependentHamiltonian,
};
use crate::linalg::{commutator, fidelity, CMatrix, HermitianMatrix, StateVector, C64};
use crate::propagator::Trajectory;

/// Gaps below this count as true level crossings.
pub const CROSSING_TOL: f64 = 1e-10;
/// Golden-section iterations used to refine the grid minimum.
const REFINE_ITERATIONS: usize = 60;

/// Per-grid-point eigenvalues and eigenvectors of a parametrized Hamiltonian.
///
/// Levels are ascending at every point; eigenvectors are continuity-matched
/// to the previous point by maximum-overlap assignment (which disambiguates
/// degenerate blocks) and carry the deterministic gauge from
/// [`crate::linalg::EigenDecomposition`].
#[derive(Debug, Clone)]
pub struct SpectralTrack {
    grid: Vec<f64>,
    levels: Vec<Vec<f64>>,
    vectors: Vec<Vec<StateVector>>,
    hamiltonian: TimeDependentHamiltonian,
}

impl SpectralTrack {
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn levels(&self) -> &[Vec<f64>] {
        &self.levels
    }

    pub fn vectors(&self) -> &[Vec<StateVector>] {
        &self.vectors
    }

    /// `E1 - E0` at grid index `k`.
    pub fn gap(&self, k: usize) -> f64 {
        self.levels[k][1] - self.levels[k][0]
    }

    pub fn hamiltonian(&self) -> &TimeDependentHamiltonian {
        &self.hamiltonian
    }
}

/// Diagonalizes `h` at every grid point.
pub fn track(h: &TimeDependentHamiltonian, grid: &[f64]) -> Result<SpectralTrack> {
    assert!(grid.len() >= 2, "need at least two grid points");
    let (t0, t1) = h.domain();
    debug_assert!(grid.iter().all(|&g| g >= t0 - 1e-12 && g <= t1 + 1e-12));
    debug_assert!(grid.windows(2).all(|w| w[1] > w[0]));

    let mut levels = Vec::with_capacity(grid.len());
    let mut vectors: Vec<Vec<StateVector>> = Vec::with_capacity(grid.len());

    for &g in grid {
        let eig = h.sample(g).eigen();
        let mut pairs: Vec<(f64, StateVector)> = eig
            .values()
            .iter()
            .copied()
            .zip(eig.vectors().iter().cloned())
            .collect();
        if let Some(prev) = vectors.last() {
            pairs = match_to_previous(pairs, prev);
        }
        levels.push(pairs.iter().map(|(v, _)| *v).collect());
        vectors.push(pairs.into_iter().map(|(_, v)| v).collect());
    }

    Ok(SpectralTrack {
        grid: grid.to_vec(),
        levels,
        vectors,
        hamiltonian: h.clone(),
    })
}

/// Greedy maximum-overlap assignment against the previous point, followed by
/// a stable sort on the eigenvalue so levels stay ascending. Ties inside
/// degenerate blocks keep the matched order.
fn match_to_previous(
    pairs: Vec<(f64, StateVector)>,
    prev: &[StateVector],
) -> Vec<(f64, StateVector)> {
    let n = pairs.len();
    let mut claimed = alloc::vec![false; n];
    let mut slots: Vec<Option<(f64, StateVector)>> = alloc::vec![None; n].into_iter().collect();
    for (j, p) in prev.iter().enumerate() {
        let mut best = None;
        let mut best_ov = -1.0;
        for (i, (_, v)) in pairs.iter().enumerate() {
            if claimed[i] {
                continue;
            }
            let ov = p.inner(v).map(|z| z.norm()).unwrap_or(0.0);
            if ov > best_ov {
                best_ov = ov;
                best = Some(i);
            }
        }
        let i = best.expect("one candidate per slot");
        claimed[i] = true;
        slots[j] = Some(pairs[i].clone());
    }
    let mut matched: Vec<(f64, StateVector)> = slots
        .into_iter()
        .map(|s| s.expect("all slots filled"))
        .collect();
    matched.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite eigenvalues"));
    matched
}

/// Location and size of the minimum gap along a track.
#[derive(Debug, Clone, Copy)]
pub struct GapReport {
    pub g_min: f64,
    pub arg_min: f64,
    /// True when `g_min` is below [`CROSSING_TOL`].
    pub crossing: bool,
}

/// Grid minimum of `E1 - E0` refined by golden-section search on the
/// bracketing grid cells.
pub fn min_gap(track: &SpectralTrack) -> GapReport {
    let n = track.grid.len();
    let mut best_idx = 0;
    let mut best = f64::INFINITY;
    for k in 0..n {
        let g = track.gap(k);
        if g < best {
            best = g;
            best_idx = k;
        }
    }

    let lo = track.grid[best_idx.saturating_sub(1)];
    let hi = track.grid[(best_idx + 1).min(n - 1)];
    let gap_at = |x: f64| {
        let eig = track.hamiltonian.sample(x).eigen();
        eig.values()[1] - eig.values()[0]
    };
    let (x_ref, g_ref) = golden_section(gap_at, lo, hi);

    let (g_min, arg_min) = if g_ref < best {
        (g_ref, x_ref)
    } else {
        (best, track.grid[best_idx])
    };
    GapReport {
        g_min: g_min.max(0.0),
        arg_min,
        crossing: g_min < CROSSING_TOL,
    }
}

fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..REFINE_ITERATIONS {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}

/// Closed-form eigensystem of the nonstationary qubit Hamiltonian:
/// `E± = ± sqrt(<dm|dm>)` and `|E±> = (|m> ± i |dm>/sqrt(<dm|dm>)) / sqrt(2)`.
#[derive(Debug, Clone)]
pub struct UzdinEigensystem {
    pub e_plus: f64,
    pub e_minus: f64,
    pub vec_plus: StateVector,
    pub vec_minus: StateVector,
}

pub fn uzdin_eigensystem(omega0: f64, nu0: f64, t: f64) -> UzdinEigensystem {
    assert!(omega0 > 0.0);
    let m = uzdin_state(omega0, nu0, t);
    let (d0, d1) = uzdin_state_dot(omega0, nu0, t);
    let e = (d0.norm_sqr() + d1.norm_sqr()).sqrt();
    let inv_sqrt2 = core::f64::consts::FRAC_1_SQRT_2;
    let i_over_e = C64::new(0.0, 1.0 / e);
    let vec_plus = StateVector::qubit(
        (m.amp(0) + i_over_e * d0) * inv_sqrt2,
        (m.amp(1) + i_over_e * d1) * inv_sqrt2,
    );
    let vec_minus = StateVector::qubit(
        (m.amp(0) - i_over_e * d0) * inv_sqrt2,
        (m.amp(1) - i_over_e * d1) * inv_sqrt2,
    );
    UzdinEigensystem {
        e_plus: e,
        e_minus: -e,
        vec_plus,
        vec_minus,
    }
}

/// Which fixed endpoint the instantaneous eigenbasis is projected on:
/// `A = |0>` or `B = |1>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceState {
    A,
    B,
}

/// Closed-form probabilities `(|<E+(t)|.>|^2, |<E-(t)|.>|^2)` for the fixed
/// states `A = |0>` and `B = |1>`, with `alpha = omega0 t`, `beta = nu0 t`,
/// and the parallel-transport phase rate `phi_dot = nu0 sin^2(alpha)`. The
/// pair sums to 1.
pub fn overlap_probabilities(omega0: f64, nu0: f64, t: f64, which: ReferenceState) -> (f64, f64) {
    assert!(omega0 > 0.0);
    let alpha = omega0 * t;
    let (sin_a, cos_a) = alpha.sin_cos();
    let phi_dot = nu0 * sin_a * sin_a;
    let sin_2a = (2.0 * alpha).sin();
    let d = (omega0 * omega0 + 0.25 * nu0 * nu0 * sin_2a * sin_2a).sqrt();
    match which {
        ReferenceState::A => {
            let imag = omega0 * sin_a / d;
            let plus = 0.5 * ((cos_a * (1.0 + phi_dot / d)).powi(2) + imag * imag);
            let minus = 0.5 * ((cos_a * (1.0 - phi_dot / d)).powi(2) + imag * imag);
            (plus, minus)
        }
        ReferenceState::B => {
            let rate = phi_dot - nu0;
            let imag = omega0 * cos_a / d;
            let plus = 0.5 * ((sin_a * (1.0 + rate / d)).powi(2) + imag * imag);
            let minus = 0.5 * ((sin_a * (1.0 - rate / d)).powi(2) + imag * imag);
            (plus, minus)
        }
    }
}

/// Frobenius norm of `[H1, H2]`.
pub fn commutator_norm(h1: &HermitianMatrix, h2: &HermitianMatrix) -> Result<f64> {
    Ok(commutator(h1.matrix(), h2.matrix())?.frobenius_norm())
}

/// Outcome of testing the swap operator `S = |A><B| + |B><A| + P_perp`
/// against a Hamiltonian.
#[derive(Debug, Clone, Copy)]
pub struct InvolutionReport {
    pub s_squared_residual: f64,
    pub swap_fidelity: f64,
    pub commutator_norm: f64,
    pub is_involution: bool,
    pub swaps: bool,
    pub commutes: bool,
}

/// Builds the inversion operator exchanging the orthogonal pair `A, B`
/// (identity on their orthogonal complement) and reports `||S^2 - I||_F`,
/// `|<B|S|A>|^2`, and `||[H, S]||_F`.
pub fn involution_check(
    h: &HermitianMatrix,
    a: &StateVector,
    b: &StateVector,
) -> Result<InvolutionReport> {
    let overlap = a.inner(b)?.norm();
    if overlap > 1e-10 {
        return Err(Error::NotOrthogonal { overlap });
    }
    if h.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            left: h.dim(),
            right: a.dim(),
        });
    }
    let dim = a.dim();
    let swap = CMatrix::outer(a, b)?.add(&CMatrix::outer(b, a)?)?;
    let p_perp = CMatrix::identity(dim)
        .sub(&CMatrix::outer(a, a)?)?
        .sub(&CMatrix::outer(b, b)?)?;
    let s = swap.add(&p_perp)?;

    let s_squared_residual = s.mul(&s)?.sub(&CMatrix::identity(dim))?.frobenius_norm();
    let swapped = s.mul_vec(a)?.normalized()?;
    let swap_fidelity = fidelity(&swapped, b)?;
    let comm = commutator(h.matrix(), &s)?.frobenius_norm();

    Ok(InvolutionReport {
        s_squared_residual,
        swap_fidelity,
        commutator_norm: comm,
        is_involution: s_squared_residual < 1e-12,
        swaps: swap_fidelity > 1.0 - 1e-12,
        commutes: comm < 1e-12,
    })
}

/// Dot products of the initial state's Bloch vector with the instantaneous
/// eigenvector Bloch vectors at one trajectory sample.
#[derive(Debug, Clone, Copy)]
pub struct BlochSymmetryPoint {
    pub time: f64,
    pub a_dot_e_plus: f64,
    pub a_dot_e_minus: f64,
}

/// Evaluates `a . e±(t)` along a qubit trajectory, where `a` is the Bloch
/// vector of the initial state. Both dots vanish at every instant for
/// stationary evolution between orthogonal states and are generically
/// nonzero for nonstationary drivers.
///
/// The dot with the *evolving* state's Bloch vector would be identically
/// zero for any Hamiltonian of this family (`<m|E±(t)> = 1/sqrt(2)` whenever
/// `<m|dm/dt> = 0`), so the fixed initial state is the discriminating probe.
pub fn bloch_symmetry_report(
    traj: &Trajectory,
    h: &impl HamiltonianSampler,
) -> Result<Vec<BlochSymmetryPoint>> {
    let a = state_to_bloch(traj.initial_state())?;
    let mut out = Vec::with_capacity(traj.len());
    for t in traj.times() {
        let eig = h.matrix_at(*t).eigen();
        let e_minus = state_to_bloch(&eig.vectors()[0])?;
        let e_plus = state_to_bloch(&eig.vectors()[1])?;
        out.push(BlochSymmetryPoint {
            time: *t,
            a_dot_e_plus: a.dot(&e_plus),
            a_dot_e_minus: a.dot(&e_minus),
        });
    }
    Ok(out)
}

/// Parallel-transport phase accumulated by the nonstationary model, exposed
/// for cross-checks of the closed forms.
pub fn uzdin_phase(omega0: f64, nu0: f64, t: f64) -> f64 {
    transport_phase(omega0, nu0, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonians::{
        build_opt_with_phase, build_two_level, build_uzdin, coupled_schedule, rc_schedule,
        SearchProblem,
    };
    use crate::linalg::unitary_exp;
    use crate::propagator::Trajectory;
    use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
            .collect()
    }

    #[test]
    fn rc_orthogonal_levels_cross() {
        let p =
            SearchProblem::new(StateVector::basis(2, 0), StateVector::basis(2, 1), 1.0).unwrap();
        let h = rc_schedule(&p, 1.0);
        let tr = track(&h, &linspace(0.0, 1.0, 101)).unwrap();
        // levels are 1 + xi and 2 - xi (with the identity shift retained)
        for (k, &xi) in tr.grid().iter().enumerate() {
            let lo = (1.0 + xi).min(2.0 - xi);
            let hi = (1.0 + xi).max(2.0 - xi);
            assert!((tr.levels()[k][0] - lo).abs() < 1e-12);
            assert!((tr.levels()[k][1] - hi).abs() < 1e-12);
        }
        let report = min_gap(&tr);
        assert!(report.g_min < 1e-12);
        assert!((report.arg_min - 0.5).abs() < 1e-6);
        assert!(report.crossing);
    }

    #[test]
    fn rc_overlapping_gap_formula() {
        let p = SearchProblem::new(StateVector::basis(2, 0), StateVector::uniform(2), 1.0).unwrap();
        let h = rc_schedule(&p, 1.0);
        let tr = track(&h, &linspace(0.0, 1.0, 1001)).unwrap();
        for (k, &xi) in tr.grid().iter().enumerate() {
            let expect = ((1.0 - xi) * (1.0 - xi) + xi * xi).sqrt();
            assert!((tr.gap(k) - expect).abs() < 1e-12);
        }
        let report = min_gap(&tr);
        assert!((report.g_min - FRAC_1_SQRT_2).abs() < 1e-9);
        assert!((report.arg_min - 0.5).abs() < 1e-6);
        assert!(!report.crossing);
    }

    #[test]
    fn uzdin_track_matches_dispersion() {
        let h = build_uzdin(1.0, 1.0);
        let tr = track(&h, &linspace(0.0, FRAC_PI_2, 201)).unwrap();
        for (k, &t) in tr.grid().iter().enumerate() {
            let expect = (1.0 + 0.25 * (2.0 * t).sin().powi(2)).sqrt();
            assert!((tr.levels()[k][1] - expect).abs() < 1e-12);
            assert!((tr.levels()[k][0] + expect).abs() < 1e-12);
        }
    }

    #[test]
    fn coupled_sweep_min_gap() {
        let h = coupled_schedule(0.1);
        let tr = track(&h, &linspace(0.0, 1.0, 1001)).unwrap();
        let report = min_gap(&tr);
        assert!((report.g_min - 0.2).abs() < 1e-10);
        assert!((report.arg_min - 0.5).abs() < 1e-6);
    }

    #[test]
    fn gap_reports_are_shift_invariant() {
        let p = SearchProblem::new(StateVector::basis(2, 0), StateVector::uniform(2), 1.0).unwrap();
        let grid = linspace(0.0, 1.0, 301);
        let base = min_gap(&track(&rc_schedule(&p, 1.0), &grid).unwrap());
        let shifted = min_gap(&track(&rc_schedule(&p, 1.0).shifted(3.7), &grid).unwrap());
        assert!((base.g_min - shifted.g_min).abs() < 1e-12);
        assert!((base.arg_min - shifted.arg_min).abs() < 1e-12);
        assert_eq!(base.crossing, shifted.crossing);
    }

    #[test]
    fn uzdin_eigensystem_closed_form() {
        let sys = uzdin_eigensystem(1.0, 1.0, 0.0);
        assert!((sys.e_plus - 1.0).abs() < 1e-14);
        assert!((sys.e_minus + 1.0).abs() < 1e-14);

        let sys = uzdin_eigensystem(1.0, 1.0, FRAC_PI_4);
        assert!((sys.e_plus - 1.25f64.sqrt()).abs() < 1e-13);

        // nu0 = 0: constant +-omega0
        for k in 0..10 {
            let sys = uzdin_eigensystem(1.7, 0.0, 0.1 * k as f64);
            assert!((sys.e_plus - 1.7).abs() < 1e-13);
        }
    }

    #[test]
    fn uzdin_eigensystem_matches_matrix_eigen() {
        let h = build_uzdin(1.3, 0.8);
        for k in 0..=20 {
            let t = FRAC_PI_2 / 1.3 * k as f64 / 20.0;
            let sys = uzdin_eigensystem(1.3, 0.8, t);
            let eig = h.sample(t).eigen();
            assert!((eig.values()[0] - sys.e_minus).abs() < 1e-10);
            assert!((eig.values()[1] - sys.e_plus).abs() < 1e-10);
            // up to phase
            assert!((fidelity(&eig.vectors()[1], &sys.vec_plus).unwrap() - 1.0).abs() < 1e-10);
            assert!((fidelity(&eig.vectors()[0], &sys.vec_minus).unwrap() - 1.0).abs() < 1e-10);
            // orthonormal pair
            assert!(sys.vec_plus.is_normalized(1e-12));
            assert!(sys.vec_plus.inner(&sys.vec_minus).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn overlap_probabilities_fixed_points() {
        let (p, m) = overlap_probabilities(1.0, 1.0, 0.0, ReferenceState::A);
        assert!((p - 0.5).abs() < 1e-15 && (m - 0.5).abs() < 1e-15);
        let (p, m) = overlap_probabilities(1.0, 1.0, 0.0, ReferenceState::B);
        assert!((p - 0.5).abs() < 1e-15 && (m - 0.5).abs() < 1e-15);

        // geodesic driver keeps both at 1/2 for every time
        for which in [ReferenceState::A, ReferenceState::B] {
            for k in 0..=50 {
                let t = FRAC_PI_2 * k as f64 / 50.0;
                let (p, m) = overlap_probabilities(1.0, 0.0, t, which);
                assert!((p - 0.5).abs() < 1e-14 && (m - 0.5).abs() < 1e-14);
            }
        }

        let (p, m) = overlap_probabilities(1.0, 1.0, FRAC_PI_4, ReferenceState::A);
        assert!((p - 0.723606797749979).abs() < 1e-12, "p = {p}");
        assert!((m - 0.276393202250021).abs() < 1e-12);
    }

    #[test]
    fn overlap_probabilities_match_eigendecomposition() {
        let zero = StateVector::basis(2, 0);
        let one = StateVector::basis(2, 1);
        for &(omega0, nu0) in &[(1.0, 1.0), (1.0, 2.0), (2.0, 0.7)] {
            let h = build_uzdin(omega0, nu0);
            for k in 0..=100 {
                let t = FRAC_PI_2 / omega0 * k as f64 / 100.0;
                let eig = h.sample(t).eigen();
                // ascending order: index 0 is E-, index 1 is E+
                let oracle_a = (
                    fidelity(&eig.vectors()[1], &zero).unwrap(),
                    fidelity(&eig.vectors()[0], &zero).unwrap(),
                );
                let got_a = overlap_probabilities(omega0, nu0, t, ReferenceState::A);
                assert!(
                    (got_a.0 - oracle_a.0).abs() < 1e-9,
                    "t={t}: {got_a:?} vs {oracle_a:?}"
                );
                assert!((got_a.1 - oracle_a.1).abs() < 1e-9);

                let oracle_b = (
                    fidelity(&eig.vectors()[1], &one).unwrap(),
                    fidelity(&eig.vectors()[0], &one).unwrap(),
                );
                let got_b = overlap_probabilities(omega0, nu0, t, ReferenceState::B);
                assert!((got_b.0 - oracle_b.0).abs() < 1e-9);
                assert!((got_b.1 - oracle_b.1).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn overlap_probabilities_complete() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..1000 {
            let omega0 = rng.gen_range(0.2..3.0);
            let nu0 = rng.gen_range(0.0..3.0);
            let t = rng.gen_range(0.0..PI);
            for which in [ReferenceState::A, ReferenceState::B] {
                let (p, m) = overlap_probabilities(omega0, nu0, t, which);
                assert!((p + m - 1.0).abs() < 1e-12, "sum {}", p + m);
                assert!(p >= -1e-15 && m >= -1e-15);
            }
        }
    }

    #[test]
    fn commutator_norm_cases() {
        let s = StateVector::basis(2, 0);
        let w = StateVector::basis(2, 1);
        let hs = HermitianMatrix::identity(2)
            .add(&HermitianMatrix::projector(&s))
            .unwrap();
        let hw = HermitianMatrix::identity(2)
            .add(&HermitianMatrix::projector(&w))
            .unwrap();
        assert!(commutator_norm(&hs, &hw).unwrap() < 1e-12);

        let p = SearchProblem::with_overlap(0.5, 1.0).unwrap();
        let hs2 = HermitianMatrix::identity(2)
            .add(&HermitianMatrix::projector(p.source()))
            .unwrap();
        let hw2 = HermitianMatrix::identity(2)
            .add(&HermitianMatrix::projector(p.target()))
            .unwrap();
        assert!(commutator_norm(&hs2, &hw2).unwrap() > 0.1);
    }

    #[test]
    fn involution_for_matched_optimal_generator() {
        // with overlap phase pi/2 the generator is sigma_x, which coincides
        // with the swap operator itself
        let a = StateVector::basis(2, 0);
        let b = StateVector::basis(2, 1);
        let h = build_opt_with_phase(&a, &b, 1.0, FRAC_PI_2).unwrap();
        let report = involution_check(h.matrix(), &a, &b).unwrap();
        assert!(
            report.is_involution && report.swaps && report.commutes,
            "{report:?}"
        );

        // phase 0 gives sigma_y, which anticommutes with the swap instead
        let h0 = build_opt_with_phase(&a, &b, 1.0, 0.0).unwrap();
        let report0 = involution_check(h0.matrix(), &a, &b).unwrap();
        assert!(report0.is_involution && report0.swaps && !report0.commutes);
    }

    #[test]
    fn involution_pauli_z_counterexample() {
        let a = StateVector::basis(2, 0);
        let b = StateVector::basis(2, 1);
        let sigma_z = build_two_level(1.0, 0.0);
        let report = involution_check(sigma_z.matrix(), &a, &b).unwrap();
        assert!(report.is_involution && report.swaps);
        assert!(!report.commutes);
        assert!((report.commutator_norm - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn involution_requires_orthogonality() {
        let a = StateVector::basis(2, 0);
        let b = StateVector::uniform(2);
        let h = build_two_level(0.0, 0.3);
        assert!(matches!(
            involution_check(h.matrix(), &a, &b),
            Err(Error::NotOrthogonal { .. })
        ));
    }

    #[test]
    fn bloch_dots_vanish_for_stationary_orthogonal_evolution() {
        let a = StateVector::basis(2, 0);
        let b = StateVector::basis(2, 1);
        let h = build_opt_with_phase(&a, &b, 1.0, 0.0).unwrap();
        let traj = Trajectory::sample_stationary(&h, &a, FRAC_PI_2, 400, 1.0).unwrap();
        let report = bloch_symmetry_report(&traj, &h).unwrap();
        for p in &report {
            assert!(p.a_dot_e_plus.abs() < 1e-10);
            assert!(p.a_dot_e_minus.abs() < 1e-10);
        }
        // antiparallel endpoints
        let a0 = state_to_bloch(traj.initial_state()).unwrap();
        let b1 = state_to_bloch(traj.final_state()).unwrap();
        assert!((a0.dot(&b1) + 1.0).abs() < 1e-9);
    }

    #[test]
    fn bloch_dots_nonzero_for_nonstationary_evolution() {
        let h = build_uzdin(1.0, 1.0);
        let traj = crate::propagator::evolve_timedep(
            &h,
            &StateVector::basis(2, 0),
            &crate::propagator::PropagationConfig::new(1e-3),
        )
        .unwrap();
        let report = bloch_symmetry_report(&traj, &h).unwrap();
        let max_plus = report
            .iter()
            .map(|p| p.a_dot_e_plus.abs())
            .fold(0.0, f64::max);
        assert!(max_plus > 0.1, "max |a.e+| = {max_plus}");
    }

    #[test]
    fn two_level_repulsion() {
        // strict positive minimum 2|delta| at lambda = 0 when delta != 0
        let delta = 0.3;
        let mut min_gap_val = f64::INFINITY;
        let mut arg = f64::NAN;
        for k in 0..=400 {
            let lambda = -1.0 + 2.0 * k as f64 / 400.0;
            let eig = build_two_level(lambda, delta).matrix().eigen();
            let gap = eig.values()[1] - eig.values()[0];
            if gap < min_gap_val {
                min_gap_val = gap;
                arg = lambda;
            }
        }
        assert!((min_gap_val - 0.6).abs() < 1e-12);
        assert!(arg.abs() < 1e-12);

        let eig = build_two_level(0.0, 0.0).matrix().eigen();
        assert!((eig.values()[1] - eig.values()[0]).abs() < 1e-15);
    }

    #[test]
    fn transport_phase_values() {
        // phi(t) = nu0/(4 omega0) [2 omega0 t - sin(2 omega0 t)]
        assert!(uzdin_phase(1.0, 1.0, 0.0).abs() < 1e-15);
        assert!((uzdin_phase(1.0, 1.0, FRAC_PI_2) - PI / 4.0).abs() < 1e-15);
        assert!((uzdin_phase(2.0, 3.0, 0.25) - 3.0 / 8.0 * (1.0 - 1f64.sin())).abs() < 1e-15);
    }

    #[test]
    fn involution_in_higher_dimension() {
        let a = StateVector::basis(4, 0);
        let b = StateVector::basis(4, 1);
        let mut m = crate::linalg::CMatrix::zeros(4);
        for (i, v) in [1.0, 1.0, 5.0, 7.0].iter().enumerate() {
            m.set(i, i, C64::new(*v, 0.0));
        }
        let h = HermitianMatrix::new(m).unwrap();
        let report = involution_check(&h, &a, &b).unwrap();
        // degenerate swapped block commutes; identity on the complement
        assert!(report.is_involution && report.swaps && report.commutes);

        let mut m2 = crate::linalg::CMatrix::zeros(4);
        for (i, v) in [1.0, 2.0, 5.0, 7.0].iter().enumerate() {
            m2.set(i, i, C64::new(*v, 0.0));
        }
        let h2 = HermitianMatrix::new(m2).unwrap();
        let report2 = involution_check(&h2, &a, &b).unwrap();
        assert!(report2.is_involution && report2.swaps && !report2.commutes);
    }

    #[test]
    fn continuity_matching_keeps_branches_smooth() {
        // near the avoided crossing the matched eigenvectors change smoothly
        let h = coupled_schedule(0.05);
        let tr = track(&h, &linspace(0.4, 0.6, 201)).unwrap();
        for k in 1..tr.grid().len() {
            let ov = tr.vectors()[k][0]
                .inner(&tr.vectors()[k - 1][0])
                .unwrap()
                .norm();
            assert!(ov > 0.9, "branch jump at k = {k}: overlap {ov}");
        }
    }

    #[test]
    fn propagated_state_stays_on_projective_line() {
        // stationary evolution keeps |<E±|psi(t)>|^2 constant at 1/2
        let a = StateVector::basis(2, 0);
        let b = StateVector::basis(2, 1);
        let h = build_opt_with_phase(&a, &b, 1.0, 0.0).unwrap();
        let eig = h.matrix().eigen();
        for k in 0..=40 {
            let t = FRAC_PI_2 * k as f64 / 40.0;
            let psi = unitary_exp(h.matrix(), t, 1.0).mul_vec(&a).unwrap();
            for v in eig.vectors() {
                assert!((fidelity(v, &psi).unwrap() - 0.5).abs() < 1e-12);
            }
        }
    }
}

//! Exact stationary evolution, exponential-midpoint integration for
//! time-dependent Hamiltonians, closed-form transition probabilities, and
//! characteristic search times.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hamiltonians::{StationaryHamiltonian, TimeDependentHamiltonian};
use crate::linalg::{unitary_exp, StateVector};

/// Overlap guard: closed-form times are an error within this margin of the
/// endpoints `x = 0` and `x = 1` rather than a silent limit.
const OVERLAP_GUARD: f64 = 1e-12;

/// Fixed-step integration parameters.
#[derive(Debug, Clone, Copy)]
pub struct PropagationConfig {
    /// Step size; the default for a domain is `(t1 - t0) / 1e5`.
    pub dt: f64,
    /// Allowed drift of the state norm over the whole run.
    pub norm_tolerance: f64,
}

impl PropagationConfig {
    pub fn new(dt: f64) -> Self {
        assert!(dt > 0.0);
        Self {
            dt,
            norm_tolerance: 1e-9,
        }
    }

    /// Default resolution for the given Hamiltonian domain.
    pub fn for_domain(domain: (f64, f64)) -> Self {
        Self::new((domain.1 - domain.0) / 1e5)
    }
}

/// Ordered `(time, state)` samples with the energy dispersion recorded at
/// each grid point.
#[derive(Debug, Clone)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<StateVector>,
    dispersions: Vec<f64>,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, states: Vec<StateVector>, dispersions: Vec<f64>) -> Self {
        assert_eq!(times.len(), states.len());
        assert_eq!(times.len(), dispersions.len());
        debug_assert!(times.windows(2).all(|w| w[1] > w[0]));
        Self {
            times,
            states,
            dispersions,
        }
    }

    /// Samples the exact stationary evolution `U(t_k) psi0` on a uniform grid
    /// of `steps + 1` points over `[0, t_final]`.
    pub fn sample_stationary(
        h: &StationaryHamiltonian,
        psi0: &StateVector,
        t_final: f64,
        steps: usize,
        hbar: f64,
    ) -> Result<Self> {
        assert!(steps >= 1 && t_final > 0.0);
        let dispersion = h.matrix().dispersion(psi0)?;
        let mut times = Vec::with_capacity(steps + 1);
        let mut states = Vec::with_capacity(steps + 1);
        for k in 0..=steps {
            let t = t_final * k as f64 / steps as f64;
            let u = unitary_exp(h.matrix(), t, hbar);
            times.push(t);
            states.push(u.mul_vec(psi0)?);
        }
        let dispersions = alloc::vec![dispersion; steps + 1];
        Ok(Self::new(times, states, dispersions))
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    pub fn dispersions(&self) -> &[f64] {
        &self.dispersions
    }

    pub fn initial_state(&self) -> &StateVector {
        &self.states[0]
    }

    pub fn final_state(&self) -> &StateVector {
        self.states.last().expect("non-empty trajectory")
    }
}

/// Evolves `psi0` for time `t` under a constant Hamiltonian (`hbar` default 1).
pub fn evolve_stationary(
    h: &StationaryHamiltonian,
    psi0: &StateVector,
    t: f64,
    hbar: f64,
) -> Result<StateVector> {
    debug_assert!(psi0.is_normalized(1e-9));
    unitary_exp(h.matrix(), t, hbar).mul_vec(psi0)
}

/// Integrates `i d/dt psi = H(t) psi` (`hbar = 1`) with the exponential
/// midpoint rule: each step applies `exp(-i H(t_k + dt/2) dt)`, so the update
/// is exactly unitary and the state norm is conserved to rounding.
///
/// Dispersions are recorded from `<H(t_k)^2> - <H(t_k)>^2` at every grid
/// point. Fails with [`Error::StepTooLarge`] if the accumulated norm drift
/// exceeds `cfg.norm_tolerance`.
pub fn evolve_timedep(
    h: &TimeDependentHamiltonian,
    psi0: &StateVector,
    cfg: &PropagationConfig,
) -> Result<Trajectory> {
    debug_assert!(psi0.is_normalized(1e-9));
    let (t0, t1) = h.domain();
    let span = t1 - t0;
    let steps = (span / cfg.dt).ceil() as usize;
    assert!(steps >= 1);

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut dispersions = Vec::with_capacity(steps + 1);

    let mut psi = psi0.clone();
    let mut t = t0;
    times.push(t);
    dispersions.push(h.sample(t).dispersion(&psi)?);
    states.push(psi.clone());

    for k in 1..=steps {
        let t_next = if k == steps {
            t1
        } else {
            t0 + span * k as f64 / steps as f64
        };
        let dt = t_next - t;
        let mid = h.sample(t + 0.5 * dt);
        psi = unitary_exp(&mid, dt, 1.0).mul_vec(&psi)?;
        t = t_next;

        let drift = (psi.norm() - 1.0).abs();
        if drift > cfg.norm_tolerance {
            return Err(Error::StepTooLarge {
                norm_drift: drift,
                tolerance: cfg.norm_tolerance,
            });
        }
        times.push(t);
        dispersions.push(h.sample(t).dispersion(&psi)?);
        states.push(psi.clone());
    }

    Ok(Trajectory::new(times, states, dispersions))
}

/// Farhi-Gutmann transition probability
/// `sin^2(E x t / hbar) + x^2 cos^2(E x t / hbar)`.
pub fn prob_fg(x: f64, e: f64, t: f64, hbar: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&x));
    let arg = e * x * t / hbar;
    let (s, c) = arg.sin_cos();
    s * s + x * x * c * c
}

/// Fenner transition probability
/// `|x cos(2x sqrt(1-x^2) E t / hbar) + sqrt(1-x^2) sin(...)|^2`.
pub fn prob_fenner(x: f64, e: f64, t: f64, hbar: f64) -> f64 {
    debug_assert!(x > 0.0 && x <= 1.0);
    let root = (1.0 - x * x).max(0.0).sqrt();
    let arg = 2.0 * x * root * e * t / hbar;
    let (s, c) = arg.sin_cos();
    let amp = x * c + root * s;
    amp * amp
}

/// First times at which each scheme's transition probability peaks, plus the
/// time-optimal bound for the same overlap.
#[derive(Debug, Clone, Copy)]
pub struct CharacteristicTimes {
    /// `(hbar/E) pi / (2x)`, first maximum of the Farhi-Gutmann probability.
    pub t_fg: f64,
    /// `(hbar/E) arccos(x) / (2x sqrt(1-x^2))`, first Fenner maximum.
    pub t_fenner: f64,
    /// `hbar arccos(x) / dE` evaluated at `dE = E`.
    pub t_opt_for_overlap: f64,
}

/// Characteristic times for overlap `x` strictly inside `(0, 1)`.
pub fn characteristic_times(x: f64, e: f64, hbar: f64) -> Result<CharacteristicTimes> {
    if x <= OVERLAP_GUARD || x >= 1.0 - OVERLAP_GUARD {
        return Err(Error::DegenerateOverlap { overlap: x });
    }
    let root = (1.0 - x * x).sqrt();
    Ok(CharacteristicTimes {
        t_fg: hbar / e * core::f64::consts::FRAC_PI_2 / x,
        t_fenner: hbar / e * x.acos() / (2.0 * x * root),
        t_opt_for_overlap: optimal_time(x, e, hbar),
    })
}

/// Minimal transfer time `hbar arccos(x) / d_e` for overlap `x` and energy
/// dispersion `d_e`.
pub fn optimal_time(overlap: f64, d_e: f64, hbar: f64) -> f64 {
    debug_assert!(d_e > 0.0);
    hbar * overlap.clamp(-1.0, 1.0).acos() / d_e
}

/// Ratio `t_FG / t_Fenner'` where the Fenner time is recomputed with its
/// energy scale halved so both schemes run at equal dispersion. Closed form:
/// `(pi/2) sqrt(1-x^2) / arccos(x)`, which tends to 1 as `x -> 0`.
pub fn equal_dispersion_ratio(x: f64) -> Result<f64> {
    let times = characteristic_times(x, 1.0, 1.0)?;
    let fair_fenner = {
        let halved = characteristic_times(x, 0.5, 1.0)?;
        halved.t_fenner
    };
    Ok(times.t_fg / fair_fenner)
}

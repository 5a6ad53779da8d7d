//! Constructors for the Hamiltonian catalog, stationary and time-dependent.
//!
//! Conventions: `hbar = 1` and `E = 1` by default, both overridable through
//! the constructor parameters. When the raw overlap `<w|s>` carries a phase
//! it is absorbed into `|s>` at [`SearchProblem`] construction so the stored
//! overlap is real non-negative.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;

#[allow(unused_imports)]
use num_traits::Float;

use crate::bloch::BlochVector;
use crate::error::{Error, Result};
use crate::linalg::{fidelity, CMatrix, HermitianMatrix, StateVector, C64};

/// Overlaps below this are treated as exactly orthogonal.
pub const OVERLAP_EPS: f64 = 1e-12;

/// An analog search instance: source `|s>`, target `|w>`, energy scale `E`,
/// and the quantum overlap `x = |<w|s>|`.
#[derive(Debug, Clone)]
pub struct SearchProblem {
    source: StateVector,
    target: StateVector,
    energy: f64,
    overlap: f64,
}

impl SearchProblem {
    /// Builds a search problem from normalized source/target states. Any
    /// phase in `<w|s>` is folded into the stored source state.
    pub fn new(source: StateVector, target: StateVector, energy: f64) -> Result<Self> {
        if source.dim() != target.dim() {
            return Err(Error::DimensionMismatch {
                left: source.dim(),
                right: target.dim(),
            });
        }
        debug_assert!(energy > 0.0);
        debug_assert!(source.is_normalized(1e-9) && target.is_normalized(1e-9));
        let raw = target.inner(&source)?;
        let overlap = raw.norm();
        let source = if overlap > OVERLAP_EPS {
            source.scaled((raw / overlap).conj())
        } else {
            source
        };
        Ok(Self {
            source,
            target,
            energy,
            overlap,
        })
    }

    /// Two-dimensional instance in the `{|w>, |r>}` basis with the requested
    /// overlap: `|w> = (1, 0)` and `|s> = (x, sqrt(1 - x^2))`.
    pub fn with_overlap(overlap: f64, energy: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&overlap) {
            return Err(Error::DegenerateOverlap { overlap });
        }
        let source = StateVector::qubit(
            C64::new(overlap, 0.0),
            C64::new((1.0 - overlap * overlap).max(0.0).sqrt(), 0.0),
        );
        let target = StateVector::basis(2, 0);
        Self::new(source, target, energy)
    }

    /// Uniform source over `dim` basis states with target `|0>`, the
    /// `x = 1/sqrt(N)` search instance.
    pub fn uniform(dim: usize, energy: f64) -> Self {
        Self::new(
            StateVector::uniform(dim),
            StateVector::basis(dim, 0),
            energy,
        )
        .expect("uniform instance is well formed")
    }

    pub fn source(&self) -> &StateVector {
        &self.source
    }

    pub fn target(&self) -> &StateVector {
        &self.target
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// `x = |<w|s>|`, real non-negative by construction.
    pub fn overlap(&self) -> f64 {
        self.overlap
    }

    pub fn dim(&self) -> usize {
        self.source.dim()
    }
}

/// Which catalog entry a stationary Hamiltonian came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StationaryLabel {
    FarhiGutmann,
    Fenner,
    Opt,
    TwoLevel,
    RcFixedXi,
    Coupled,
}

/// A constant Hamiltonian with its construction parameters attached.
#[derive(Debug, Clone)]
pub struct StationaryHamiltonian {
    label: StationaryLabel,
    matrix: HermitianMatrix,
    params: Vec<(&'static str, f64)>,
}

impl StationaryHamiltonian {
    pub fn label(&self) -> StationaryLabel {
        self.label
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn params(&self) -> &[(&'static str, f64)] {
        &self.params
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| *v)
    }
}

/// Which catalog entry a time-dependent Hamiltonian came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeDependentLabel {
    Uzdin,
    RcSchedule,
    CoupledSchedule,
}

#[derive(Debug, Clone)]
enum SamplerKind {
    Uzdin {
        omega0: f64,
        nu0: f64,
    },
    RcSchedule {
        problem: SearchProblem,
        total_time: f64,
    },
    CoupledSchedule {
        gamma: f64,
    },
    Shifted {
        base: alloc::boxed::Box<SamplerKind>,
        offset: f64,
    },
}

impl SamplerKind {
    fn sample(&self, t: f64) -> HermitianMatrix {
        match self {
            Self::Uzdin { omega0, nu0 } => {
                let h = uzdin_field(*omega0, *nu0, t);
                field_matrix(&h)
            }
            Self::RcSchedule {
                problem,
                total_time,
            } => build_rc(problem, t / total_time).matrix.clone(),
            Self::CoupledSchedule { gamma } => build_coupled(t, *gamma).matrix.clone(),
            Self::Shifted { base, offset } => base.sample(t).shifted(*offset),
        }
    }
}

/// A time-dependent Hamiltonian: a re-entrant sampler `t -> H(t)` over a
/// finite domain, plus the analytic parameters it was built from so closed
/// forms can be cross-checked against the sampled matrices.
#[derive(Debug, Clone)]
pub struct TimeDependentHamiltonian {
    label: TimeDependentLabel,
    domain: (f64, f64),
    params: Vec<(&'static str, f64)>,
    kind: SamplerKind,
}

impl TimeDependentHamiltonian {
    pub fn label(&self) -> TimeDependentLabel {
        self.label
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn params(&self) -> &[(&'static str, f64)] {
        &self.params
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| *v)
    }

    /// Hermitian matrix at time `t`.
    pub fn sample(&self, t: f64) -> HermitianMatrix {
        self.kind.sample(t)
    }

    /// Same Hamiltonian over a different domain.
    pub fn with_domain(mut self, t0: f64, t1: f64) -> Self {
        assert!(t1 > t0);
        self.domain = (t0, t1);
        self
    }

    /// `H(t) + offset * I`; gaps and other spectral differences must be
    /// invariant under this.
    pub fn shifted(self, offset: f64) -> Self {
        Self {
            label: self.label,
            domain: self.domain,
            params: self.params,
            kind: SamplerKind::Shifted {
                base: alloc::boxed::Box::new(self.kind),
                offset,
            },
        }
    }
}

/// Anything that can produce a Hermitian matrix at a given time. Stationary
/// Hamiltonians ignore the time argument.
pub trait HamiltonianSampler {
    fn matrix_at(&self, t: f64) -> HermitianMatrix;
}

impl HamiltonianSampler for StationaryHamiltonian {
    fn matrix_at(&self, _t: f64) -> HermitianMatrix {
        self.matrix.clone()
    }
}

impl HamiltonianSampler for TimeDependentHamiltonian {
    fn matrix_at(&self, t: f64) -> HermitianMatrix {
        self.sample(t)
    }
}

/// Farhi-Gutmann search Hamiltonian `E|w><w| + E|s><s|`.
pub fn build_fg(p: &SearchProblem) -> StationaryHamiltonian {
    let m = HermitianMatrix::projector(p.target())
        .add(&HermitianMatrix::projector(p.source()))
        .expect("same dimension")
        .scale(p.energy());
    StationaryHamiltonian {
        label: StationaryLabel::FarhiGutmann,
        matrix: m,
        params: vec![("energy", p.energy()), ("overlap", p.overlap())],
    }
}

/// Fenner's search Hamiltonian `2iEx (|w><s| - |s><w|)`. The construction is
/// meaningless for orthogonal source and target.
pub fn build_fenner(p: &SearchProblem) -> Result<StationaryHamiltonian> {
    if p.overlap() < OVERLAP_EPS {
        return Err(Error::OrthogonalSourceTarget);
    }
    let ws = CMatrix::outer(p.target(), p.source())?;
    let sw = CMatrix::outer(p.source(), p.target())?;
    let factor = C64::new(0.0, 2.0 * p.energy() * p.overlap());
    let m = HermitianMatrix::new(ws.sub(&sw)?.scale(factor))?;
    Ok(StationaryHamiltonian {
        label: StationaryLabel::Fenner,
        matrix: m,
        params: vec![("energy", p.energy()), ("overlap", p.overlap())],
    })
}

/// Stationary time-optimal Hamiltonian driving `|A>` to `|B>` with energy
/// dispersion `d_e`; overlap phase taken from `<A|B>` (zero for orthogonal
/// inputs).
pub fn build_opt(a: &StateVector, b: &StateVector, d_e: f64) -> Result<StationaryHamiltonian> {
    build_opt_with_phase(a, b, d_e, 0.0)
}

/// [`build_opt`] with an explicit overlap phase for orthogonal inputs, where
/// `arg <A|B>` is undefined. Writing `<A|B> = x e^{i chi}`, the generator is
///
/// `H = i dE / sqrt(1 - x^2) * (e^{-i chi} |B><A| - e^{+i chi} |A><B|)`,
///
/// which is the standard form rewritten so the orthogonal limit `x -> 0` is
/// manifestly finite.
pub fn build_opt_with_phase(
    a: &StateVector,
    b: &StateVector,
    d_e: f64,
    phase: f64,
) -> Result<StationaryHamiltonian> {
    debug_assert!(d_e > 0.0);
    debug_assert!(a.is_normalized(1e-9) && b.is_normalized(1e-9));
    let z = a.inner(b)?;
    let x = z.norm();
    if fidelity(a, b)? >= 1.0 - 1e-12 {
        return Err(Error::CoincidentStates);
    }
    let chi = if x < OVERLAP_EPS { phase } else { z.arg() };
    let scale = C64::new(0.0, d_e / (1.0 - x * x).sqrt());
    let ba = CMatrix::outer(b, a)?.scale(Complex::from_polar(1.0, -chi));
    let ab = CMatrix::outer(a, b)?.scale(Complex::from_polar(1.0, chi));
    let m = HermitianMatrix::new(ba.sub(&ab)?.scale(scale))?;
    Ok(StationaryHamiltonian {
        label: StationaryLabel::Opt,
        matrix: m,
        params: vec![("dispersion", d_e), ("overlap", x), ("phase", chi)],
    })
}

/// Roland-Cerf interpolating Hamiltonian at fixed reduced time `xi`:
/// `(1 - xi)(I + |s><s|) + xi (I + |w><w|)`.
pub fn build_rc(p: &SearchProblem, xi: f64) -> StationaryHamiltonian {
    debug_assert!((-1e-12..=1.0 + 1e-12).contains(&xi));
    let hs = HermitianMatrix::identity(p.dim())
        .add(&HermitianMatrix::projector(p.source()))
        .expect("same dimension");
    let hw = HermitianMatrix::identity(p.dim())
        .add(&HermitianMatrix::projector(p.target()))
        .expect("same dimension");
    let m = hs
        .scale(1.0 - xi)
        .add(&hw.scale(xi))
        .expect("same dimension");
    StationaryHamiltonian {
        label: StationaryLabel::RcFixedXi,
        matrix: m,
        params: vec![("xi", xi), ("overlap", p.overlap())],
    }
}

/// Level-crossing schedule with an explicit coupling term:
/// `-(1 - s)|0><0| - s|1><1| - gamma (|0><1| + |1><0|)`.
/// The eigenvalue gap is `2 sqrt((s - 1/2)^2 + gamma^2)`.
pub fn build_coupled(sched: f64, gamma: f64) -> StationaryHamiltonian {
    debug_assert!((-1e-12..=1.0 + 1e-12).contains(&sched) && gamma >= 0.0);
    let m = CMatrix::from_vec(
        2,
        vec![
            C64::new(-(1.0 - sched), 0.0),
            C64::new(-gamma, 0.0),
            C64::new(-gamma, 0.0),
            C64::new(-sched, 0.0),
        ],
    )
    .expect("2x2 data");
    StationaryHamiltonian {
        label: StationaryLabel::Coupled,
        matrix: HermitianMatrix::new(m).expect("real symmetric"),
        params: vec![("sched", sched), ("gamma", gamma)],
    }
}

/// Two-level avoided-crossing model `[[lambda, delta], [delta, -lambda]]`
/// with eigenvalues `+- sqrt(lambda^2 + delta^2)`.
pub fn build_two_level(lambda: f64, delta: f64) -> StationaryHamiltonian {
    let m = CMatrix::from_vec(
        2,
        vec![
            C64::new(lambda, 0.0),
            C64::new(delta, 0.0),
            C64::new(delta, 0.0),
            C64::new(-lambda, 0.0),
        ],
    )
    .expect("2x2 data");
    StationaryHamiltonian {
        label: StationaryLabel::TwoLevel,
        matrix: HermitianMatrix::new(m).expect("real symmetric"),
        params: vec![("lambda", lambda), ("delta", delta)],
    }
}

/// Field vector `h(t)` of the nonstationary qubit model, so that
/// `H(t) = h(t) . sigma` with zero trace part. At `t = 0` it points along
/// `omega0 y-hat`; for `nu0 = 0` it is constant (stationary geodesic driver).
pub fn uzdin_field(omega0: f64, nu0: f64, t: f64) -> BlochVector {
    let two_a = 2.0 * omega0 * t;
    let beta = nu0 * t;
    let (sin2a, cos2a) = two_a.sin_cos();
    let (sinb, cosb) = beta.sin_cos();
    let swirl = 0.5 * nu0 * cos2a * sin2a;
    BlochVector::new(
        -swirl * cosb - omega0 * sinb,
        -swirl * sinb + omega0 * cosb,
        0.5 * nu0 * sin2a * sin2a,
    )
}

fn field_matrix(h: &BlochVector) -> HermitianMatrix {
    let m = CMatrix::from_vec(
        2,
        vec![
            C64::new(h.z, 0.0),
            C64::new(h.x, -h.y),
            C64::new(h.x, h.y),
            C64::new(-h.z, 0.0),
        ],
    )
    .expect("2x2 data");
    HermitianMatrix::new(m).expect("h . sigma is Hermitian")
}

/// Parallel-transported state `|m(t)>` of the nonstationary model,
///
/// `|m(t)> = e^{-i phi(t)} [cos(omega0 t)|0> + e^{i nu0 t} sin(omega0 t)|1>]`
///
/// with `phi(t) = nu0/(4 omega0) [2 omega0 t - sin(2 omega0 t)]`, which makes
/// `<m|dm/dt> = 0`. It solves `i d/dt |m> = H(t)|m>` for the sampled `H(t)`.
pub fn uzdin_state(omega0: f64, nu0: f64, t: f64) -> StateVector {
    let alpha = omega0 * t;
    let beta = nu0 * t;
    let phi = transport_phase(omega0, nu0, t);
    let gauge = C64::from_polar(1.0, -phi);
    StateVector::qubit(
        gauge * alpha.cos(),
        gauge * C64::from_polar(1.0, beta) * alpha.sin(),
    )
}

pub(crate) fn transport_phase(omega0: f64, nu0: f64, t: f64) -> f64 {
    nu0 / (4.0 * omega0) * (2.0 * omega0 * t - (2.0 * omega0 * t).sin())
}

/// Analytic time derivative of [`uzdin_state`].
pub(crate) fn uzdin_state_dot(omega0: f64, nu0: f64, t: f64) -> (C64, C64) {
    let alpha = omega0 * t;
    let beta = nu0 * t;
    let phi_dot = nu0 * alpha.sin() * alpha.sin();
    let gauge = C64::from_polar(1.0, -transport_phase(omega0, nu0, t));
    let i = C64::new(0.0, 1.0);
    let d0 = gauge * (-i * phi_dot * alpha.cos() - omega0 * alpha.sin());
    let d1 = gauge
        * C64::from_polar(1.0, beta)
        * (i * (nu0 - phi_dot) * alpha.sin() + omega0 * alpha.cos());
    (d0, d1)
}

/// The nonstationary qubit Hamiltonian `H(t) = h(t) . sigma` over its natural
/// transfer window `[0, pi / (2 omega0)]`; extend with
/// [`TimeDependentHamiltonian::with_domain`] if needed.
pub fn build_uzdin(omega0: f64, nu0: f64) -> TimeDependentHamiltonian {
    assert!(omega0 > 0.0 && nu0 >= 0.0);
    TimeDependentHamiltonian {
        label: TimeDependentLabel::Uzdin,
        domain: (0.0, core::f64::consts::FRAC_PI_2 / omega0),
        params: vec![("omega0", omega0), ("nu0", nu0)],
        kind: SamplerKind::Uzdin { omega0, nu0 },
    }
}

/// Roland-Cerf linear interpolation `H(t) = (1 - t/T) H_s + (t/T) H_w` over
/// `[0, T]`, i.e. [`build_rc`] at `xi = t/T`.
pub fn rc_schedule(p: &SearchProblem, total_time: f64) -> TimeDependentHamiltonian {
    assert!(total_time > 0.0);
    TimeDependentHamiltonian {
        label: TimeDependentLabel::RcSchedule,
        domain: (0.0, total_time),
        params: vec![("total_time", total_time), ("overlap", p.overlap())],
        kind: SamplerKind::RcSchedule {
            problem: p.clone(),
            total_time,
        },
    }
}

/// [`build_coupled`] as a schedule over `s in [0, 1]`.
pub fn coupled_schedule(gamma: f64) -> TimeDependentHamiltonian {
    assert!(gamma >= 0.0);
    TimeDependentHamiltonian {
        label: TimeDependentLabel::CoupledSchedule,
        domain: (0.0, 1.0),
        params: vec![("gamma", gamma)],
        kind: SamplerKind::CoupledSchedule { gamma },
    }
}

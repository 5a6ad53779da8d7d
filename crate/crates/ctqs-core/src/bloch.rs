//! Bloch-vector conversions and Fubini-Study geometry: path lengths along
//! trajectories, the geodesic between two rays, and geodesic/speed
//! efficiencies.
//!
//! Path lengths are computed two independent ways and cross-asserted: the
//! dispersion integral `s = (2/hbar) int dE(t) dt` and the accumulation of
//! discrete Fubini-Study increments `ds^2 = 4[<dpsi|dpsi> - |<psi|dpsi>|^2]`
//! between adjacent samples.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hamiltonians::{uzdin_field, HamiltonianSampler};
use crate::linalg::{StateVector, C64};
use crate::propagator::Trajectory;

/// Allowed disagreement between the two path-length routes.
pub const PATH_LENGTH_CROSS_TOL: f64 = 1e-5;
/// Slack for clamping inner products into `[-1, 1]` before `acos`.
pub const ARCCOS_CLAMP_EPS: f64 = 1e-12;

/// A real 3-vector; unit norm for pure states (field vectors such as `h(t)`
/// are generally not unit).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub const fn x_axis() -> Self {
        Self::new(1.0, 0.0, 0.0)
    }

    pub const fn y_axis() -> Self {
        Self::new(0.0, 1.0, 0.0)
    }

    pub const fn z_axis() -> Self {
        Self::new(0.0, 0.0, 1.0)
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.x + other.x, self.y + other.y, self.z + other.z)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.x - other.x, self.y - other.y, self.z - other.z)
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(self.scale(1.0 / n))
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }
}

/// Bloch vector of a qubit pure state:
/// `a = (2 Re(c0* c1), 2 Im(c0* c1), |c0|^2 - |c1|^2)`.
pub fn state_to_bloch(psi: &StateVector) -> Result<BlochVector> {
    if psi.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: psi.dim(),
            right: 2,
        });
    }
    debug_assert!(psi.is_normalized(1e-9));
    let cross = psi.amp(0).conj() * psi.amp(1);
    Ok(BlochVector::new(
        2.0 * cross.re,
        2.0 * cross.im,
        psi.amp(0).norm_sqr() - psi.amp(1).norm_sqr(),
    ))
}

/// Qubit state on the ray represented by a unit Bloch vector, in the gauge
/// with real non-negative `|0>` amplitude.
pub fn bloch_to_state(a: &BlochVector) -> Result<StateVector> {
    if !a.is_unit(1e-9) {
        return Err(Error::NonUnitAxis { norm: a.norm() });
    }
    let theta = a.z.clamp(-1.0, 1.0).acos();
    let phi = a.y.atan2(a.x);
    Ok(StateVector::qubit(
        C64::new((theta / 2.0).cos(), 0.0),
        C64::from_polar((theta / 2.0).sin(), phi),
    ))
}

fn clamped_acos(v: f64) -> f64 {
    debug_assert!(v.abs() <= 1.0 + ARCCOS_CLAMP_EPS);
    v.clamp(-1.0, 1.0).acos()
}

/// Fubini-Study geodesic distance `2 arccos |<A|B>|`, in `[0, pi]`. Valid in
/// any dimension.
pub fn geodesic_length(a: &StateVector, b: &StateVector) -> Result<f64> {
    debug_assert!(a.is_normalized(1e-9) && b.is_normalized(1e-9));
    Ok(2.0 * clamped_acos(a.inner(b)?.norm()))
}

/// Point on the geodesic from `|A>` (`xi = 0`) to `|B>` (`xi = pi`, up to
/// global phase):
///
/// `|psi(xi)> = [cos(xi/2)|A> + (<B|A>/|<B|A>|) sin(xi/2)|B>]
///              / sqrt(1 + sin(xi) |<B|A>|)`.
///
/// Orthogonal endpoints leave the phase factor undefined; use
/// [`geodesic_state_with_phase`] there.
pub fn geodesic_state(a: &StateVector, b: &StateVector, xi: f64) -> Result<StateVector> {
    let z = b.inner(a)?;
    if z.norm() < 1e-12 {
        return Err(Error::DegenerateOverlap { overlap: z.norm() });
    }
    geodesic_point(a, b, xi, z / z.norm(), z.norm())
}

/// [`geodesic_state`] with the overlap phase supplied explicitly, for
/// orthogonal endpoints.
pub fn geodesic_state_with_phase(
    a: &StateVector,
    b: &StateVector,
    xi: f64,
    phase: f64,
) -> Result<StateVector> {
    let z = b.inner(a)?;
    geodesic_point(a, b, xi, C64::from_polar(1.0, phase), z.norm())
}

fn geodesic_point(
    a: &StateVector,
    b: &StateVector,
    xi: f64,
    phase: C64,
    overlap: f64,
) -> Result<StateVector> {
    debug_assert!((0.0..=core::f64::consts::PI + 1e-12).contains(&xi));
    let (s, c) = (xi / 2.0).sin_cos();
    let raw = StateVector::superpose(C64::new(c, 0.0), a, phase * s, b)?;
    let norm = (1.0 + xi.sin() * overlap).sqrt();
    Ok(raw.scaled(C64::new(1.0 / norm, 0.0)))
}

/// Reparametrization `t(xi) = tan(xi/2) / (1 + tan(xi/2))` mapping the
/// geodesic parameter to normalized time on `[0, 1]`.
pub fn geodesic_time(xi: f64) -> f64 {
    let (s, c) = (xi / 2.0).sin_cos();
    s / (c + s)
}

/// Dynamical path length `s = (2/hbar) int dE(t) dt` by the trapezoid rule,
/// cross-checked against [`fs_discrete_length`] within
/// [`PATH_LENGTH_CROSS_TOL`].
pub fn fs_path_length(traj: &Trajectory, hbar: f64) -> Result<f64> {
    let s_dispersion = dispersion_route(traj, hbar)?;
    let s_discrete = fs_discrete_length(traj)?;
    if (s_dispersion - s_discrete).abs() > PATH_LENGTH_CROSS_TOL {
        return Err(Error::PathLengthMismatch {
            dispersion_route: s_dispersion,
            fubini_route: s_discrete,
        });
    }
    Ok(s_dispersion)
}

fn dispersion_route(traj: &Trajectory, hbar: f64) -> Result<f64> {
    if traj.len() < 2 {
        return Err(Error::EmptyTrajectory);
    }
    let t = traj.times();
    let de = traj.dispersions();
    let mut acc = 0.0;
    for k in 1..traj.len() {
        acc += 0.5 * (de[k] + de[k - 1]) * (t[k] - t[k - 1]);
    }
    Ok(2.0 * acc / hbar)
}

/// Path length accumulated from the discrete Fubini-Study increment
/// `ds^2 = 4[<dpsi|dpsi> - |<psi|dpsi>|^2]` between adjacent samples.
pub fn fs_discrete_length(traj: &Trajectory) -> Result<f64> {
    if traj.len() < 2 {
        return Err(Error::EmptyTrajectory);
    }
    let states = traj.states();
    let one = C64::new(1.0, 0.0);
    let minus = C64::new(-1.0, 0.0);
    let mut acc = 0.0;
    for k in 1..states.len() {
        let dpsi = StateVector::superpose(one, &states[k], minus, &states[k - 1])?;
        let dd = dpsi.norm_sq();
        let pd = states[k - 1].inner(&dpsi)?.norm_sqr();
        acc += (4.0 * (dd - pd)).max(0.0).sqrt();
    }
    Ok(acc)
}

/// Geometry summary of a trajectory: path lengths, geodesic efficiency, and
/// the per-point speed efficiency `dE(t) / ||H(t)||`.
#[derive(Debug, Clone)]
pub struct PathLengthReport {
    pub s_dynamical: f64,
    pub s_geodesic: f64,
    pub geodesic_efficiency: f64,
    pub speed_efficiency_profile: Vec<f64>,
}

/// Computes the [`PathLengthReport`] for a trajectory generated by `h`
/// (`hbar = 1`). The spectral norm is the largest eigenvalue magnitude of
/// the sampled Hamiltonian.
pub fn efficiencies(traj: &Trajectory, h: &impl HamiltonianSampler) -> Result<PathLengthReport> {
    if traj.len() < 2 {
        return Err(Error::EmptyTrajectory);
    }
    let s_dynamical = fs_path_length(traj, 1.0)?;
    let s_geodesic = geodesic_length(traj.initial_state(), traj.final_state())?;
    let speed: Vec<f64> = traj
        .times()
        .iter()
        .zip(traj.dispersions())
        .map(|(&t, &de)| {
            let norm = h.matrix_at(t).spectral_norm();
            if norm > 0.0 {
                de / norm
            } else {
                0.0
            }
        })
        .collect();
    Ok(PathLengthReport {
        s_dynamical,
        s_geodesic,
        geodesic_efficiency: s_geodesic / s_dynamical,
        speed_efficiency_profile: speed,
    })
}

/// Largest residual of the precession equation `da/dt = 2 h(t) x a(t)` over
/// the grid, with both sides evaluated analytically for the nonstationary
/// qubit model.
pub fn larmor_residual(omega0: f64, nu0: f64, grid: &[f64]) -> f64 {
    debug_assert!(grid.len() >= 3);
    let mut worst = 0.0f64;
    for &t in grid {
        let two_a = 2.0 * omega0 * t;
        let beta = nu0 * t;
        let (sin2a, cos2a) = two_a.sin_cos();
        let (sinb, cosb) = beta.sin_cos();
        let a = BlochVector::new(sin2a * cosb, sinb * sin2a, cos2a);
        let a_dot = BlochVector::new(
            2.0 * omega0 * cos2a * cosb - nu0 * sin2a * sinb,
            2.0 * omega0 * cos2a * sinb + nu0 * sin2a * cosb,
            -2.0 * omega0 * sin2a,
        );
        let rhs = uzdin_field(omega0, nu0, t).cross(&a).scale(2.0);
        worst = worst.max(a_dot.sub(&rhs).norm());
    }
    worst
}

/// `|<A|B>|^2 = (1 + a.b)/2` for qubit pure states.
pub fn fidelity_from_bloch(a: &BlochVector, b: &BlochVector) -> f64 {
    0.5 * (1.0 + a.dot(b))
}

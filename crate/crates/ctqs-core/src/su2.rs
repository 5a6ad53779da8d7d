//! SU(2) rotation algebra: the Pauli product identity, composition of
//! axis-angle rotations, the discrete search simulation step `U(dt)`, and its
//! Grover-iterate limit at `dt = pi`.
//!
//! All search-related computations run in the two-dimensional `{|w>, |r>}`
//! invariant subspace, so the search-space dimension `N` enters only through
//! the overlap `x = 1/sqrt(N)`.

#[allow(unused_imports)]
use num_traits::Float;

use crate::bloch::BlochVector;
use crate::error::{Error, Result};
use crate::hamiltonians::SearchProblem;
use crate::linalg::{unitary_exp, CMatrix, HermitianMatrix, StateVector, C64};

/// Unit-axis tolerance for rotation inputs.
pub const AXIS_TOL: f64 = 1e-12;

/// A rotation by `angle` about a unit `axis`.
#[derive(Debug, Clone, Copy)]
pub struct AxisAngle {
    axis: BlochVector,
    angle: f64,
}

impl AxisAngle {
    pub fn new(axis: BlochVector, angle: f64) -> Result<Self> {
        if !axis.is_unit(AXIS_TOL) {
            return Err(Error::NonUnitAxis { norm: axis.norm() });
        }
        Ok(Self { axis, angle })
    }

    pub fn axis(&self) -> BlochVector {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }
}

/// `n . sigma` as a 2x2 Hermitian matrix.
pub fn pauli_matrix(n: &BlochVector) -> CMatrix {
    CMatrix::from_vec(
        2,
        alloc::vec![
            C64::new(n.z, 0.0),
            C64::new(n.x, -n.y),
            C64::new(n.x, n.y),
            C64::new(-n.z, 0.0),
        ],
    )
    .expect("2x2 data")
}

/// `exp(-i angle/2 n . sigma) = cos(angle/2) I - i sin(angle/2) n . sigma`.
pub fn rotation_matrix(r: &AxisAngle) -> CMatrix {
    let (s, c) = (0.5 * r.angle).sin_cos();
    let identity = CMatrix::identity(2).scale(C64::new(c, 0.0));
    identity
        .add(&pauli_matrix(&r.axis).scale(C64::new(0.0, -s)))
        .expect("2x2 operands")
}

/// Scalar and vector parts of `(n1 . sigma)(n2 . sigma) = (n1 . n2) I
/// + i (n1 x n2) . sigma`.
#[derive(Debug, Clone, Copy)]
pub struct PauliProduct {
    pub scalar: f64,
    pub vector: BlochVector,
}

pub fn pauli_product(n1: &BlochVector, n2: &BlochVector) -> Result<PauliProduct> {
    if !n1.is_unit(AXIS_TOL) {
        return Err(Error::NonUnitAxis { norm: n1.norm() });
    }
    if !n2.is_unit(AXIS_TOL) {
        return Err(Error::NonUnitAxis { norm: n2.norm() });
    }
    Ok(PauliProduct {
        scalar: n1.dot(n2),
        vector: n1.cross(n2),
    })
}

/// Single rotation equal to the matrix product
/// `R_{n1}(theta1) R_{n2}(theta2)`:
///
/// `cos(theta/2) = c1 c2 - s1 s2 (n1 . n2)`
/// `sin(theta/2) n = s1 c2 n1 + c1 s2 n2 - s1 s2 (n2 x n1)`
///
/// When the sine vector vanishes (identity or full-turn result) the axis is
/// undefined; by convention the z-axis is returned with the computed angle.
pub fn compose_rotations(r1: &AxisAngle, r2: &AxisAngle) -> AxisAngle {
    let (s1, c1) = (0.5 * r1.angle).sin_cos();
    let (s2, c2) = (0.5 * r2.angle).sin_cos();
    let cos_half = c1 * c2 - s1 * s2 * r1.axis.dot(&r2.axis);
    let sine_vec = r1
        .axis
        .scale(s1 * c2)
        .add(&r2.axis.scale(c1 * s2))
        .add(&r1.axis.cross(&r2.axis).scale(s1 * s2));
    let sin_half = sine_vec.norm();
    let angle = 2.0 * sin_half.atan2(cos_half);
    let axis = if sin_half < AXIS_TOL {
        BlochVector::z_axis()
    } else {
        sine_vec.scale(1.0 / sin_half)
    };
    AxisAngle { axis, angle }
}

/// Aligns each matrix to the gauge where its largest-magnitude entry is real
/// positive, then returns the Frobenius distance. Deterministic stand-in for
/// minimizing over a global phase.
pub fn phase_aligned_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    let align = |m: &CMatrix| -> CMatrix {
        let n = m.dim();
        let mut best = C64::new(1.0, 0.0);
        let mut best_mag = -1.0;
        for i in 0..n {
            for j in 0..n {
                let z = m.get(i, j);
                if z.norm() > best_mag + 1e-15 {
                    best_mag = z.norm();
                    best = z;
                }
            }
        }
        if best_mag <= 0.0 {
            return m.clone();
        }
        m.scale(best.conj() / best.norm())
    };
    align(a)
        .sub(&align(b))
        .map(|d| d.frobenius_norm())
        .unwrap_or(f64::INFINITY)
}

/// One discrete simulation step of duration `dt`: the product
/// `exp(-i |s><s| dt) exp(-i |w><w| dt)` in the `{|w>, |r>}` basis, together
/// with its rotation angle and axis,
///
/// `cos(theta/2) = 1 - (2/N) sin^2(dt/2)`
/// `r = cos(dt/2) (s + w)/2 + sin(dt/2) (s x w)/2`,
///
/// where `s = (2x sqrt(1-x^2), 0, 2x^2 - 1)` and `w = (0, 0, 1)` are the
/// Bloch vectors of the projectors and `x = 1/sqrt(N)`.
#[derive(Debug, Clone)]
pub struct SimStep {
    pub dt: f64,
    pub angle: f64,
    pub axis: BlochVector,
    unitary: CMatrix,
}

impl SimStep {
    /// The exact product `exp(-i |s><s| dt) exp(-i |w><w| dt)`, global phase
    /// included.
    pub fn unitary(&self) -> &CMatrix {
        &self.unitary
    }

    /// The SU(2) form `cos(theta/2) I - i sin(theta/2) r-hat . sigma`
    /// reconstructed from the angle and axis; equals [`Self::unitary`] up to
    /// the dropped global phase `e^{-i dt}`.
    pub fn su2_matrix(&self) -> CMatrix {
        rotation_matrix(&AxisAngle {
            axis: self.axis,
            angle: self.angle,
        })
    }
}

/// Bloch vectors of `|s><s|` and `|w><w|` in the `{|w>, |r>}` basis.
fn search_bloch_vectors(x: f64) -> (BlochVector, BlochVector) {
    let root = (1.0 - x * x).max(0.0).sqrt();
    (
        BlochVector::new(2.0 * x * root, 0.0, 2.0 * x * x - 1.0),
        BlochVector::z_axis(),
    )
}

pub fn simulation_step(n_dim: usize, dt: f64) -> SimStep {
    assert!(n_dim >= 2);
    let n = n_dim as f64;
    let x = 1.0 / n.sqrt();
    let (s, w) = search_bloch_vectors(x);

    let (sin_h, cos_h) = (0.5 * dt).sin_cos();
    let r = s
        .add(&w)
        .scale(0.5 * cos_h)
        .add(&s.cross(&w).scale(0.5 * sin_h));

    let cos_half = 1.0 - 2.0 / n * sin_h * sin_h;
    let sin_half = 2.0 / n.sqrt() * sin_h.abs() * (1.0 - sin_h * sin_h / n).max(0.0).sqrt();
    let angle = 2.0 * sin_half.atan2(cos_half);
    let axis = if r.norm() > 0.0 {
        r.scale(1.0 / r.norm())
    } else {
        BlochVector::z_axis()
    };

    let problem = SearchProblem::with_overlap(x, 1.0).expect("x in (0, 1]");
    let u_s = unitary_exp(&HermitianMatrix::projector(problem.source()), dt, 1.0);
    let u_w = unitary_exp(&HermitianMatrix::projector(problem.target()), dt, 1.0);
    let unitary = u_s.mul(&u_w).expect("2x2 product");

    let step = SimStep {
        dt,
        angle,
        axis,
        unitary,
    };
    debug_assert!(
        dt.abs() > core::f64::consts::PI * 1.999
            || phase_aligned_distance(&step.su2_matrix(), &step.unitary) < 1e-11
    );
    step
}

/// Phase-aligned Frobenius distance between the simulation step at
/// `dt = pi` and the Grover iterate `(I - 2|s><s|)(I - 2|w><w|)`.
pub fn grover_equivalence(n_dim: usize) -> f64 {
    let step = simulation_step(n_dim, core::f64::consts::PI);
    let x = 1.0 / (n_dim as f64).sqrt();
    let problem = SearchProblem::with_overlap(x, 1.0).expect("x in (0, 1]");
    let reflect = |psi: &StateVector| -> CMatrix {
        CMatrix::identity(2)
            .sub(
                &CMatrix::outer(psi, psi)
                    .expect("projector")
                    .scale(C64::new(2.0, 0.0)),
            )
            .expect("2x2 operands")
    };
    let grover = reflect(problem.source())
        .mul(&reflect(problem.target()))
        .expect("2x2");
    phase_aligned_distance(step.unitary(), &grover)
}

/// First local maximum of the target probability under repeated application
/// of the simulation step.
#[derive(Debug, Clone, Copy)]
pub struct SearchIteration {
    pub steps_to_peak: usize,
    pub peak_probability: f64,
}

const MAX_ITERATIONS: usize = 1_000_000;

/// Applies `U(dt)` repeatedly to `|s>` and tracks `|<w|psi_k>|^2`, returning
/// the first local maximum. Fails with [`Error::NoProgress`] when the peak
/// never rises above the starting probability `x^2` (e.g. `dt = 2 pi`).
pub fn iterate_search(n_dim: usize, dt: f64) -> Result<SearchIteration> {
    assert!(n_dim >= 2 && dt > 0.0);
    let step = simulation_step(n_dim, dt);
    let x_sq = 1.0 / n_dim as f64;

    let problem = SearchProblem::with_overlap(x_sq.sqrt(), 1.0).expect("x in (0, 1]");
    let mut psi = problem.source().clone();
    let mut prob_prev = x_sq;
    let mut peak = (0usize, x_sq);

    for k in 1..=MAX_ITERATIONS {
        psi = step.unitary().mul_vec(&psi)?;
        let prob = psi.amp(0).norm_sqr();
        if prob < prob_prev - 1e-15 {
            peak = (k - 1, prob_prev);
            break;
        }
        if prob > peak.1 {
            peak = (k, prob);
        }
        prob_prev = prob;
    }

    if peak.1 <= x_sq + 1e-9 {
        return Err(Error::NoProgress);
    }
    Ok(SearchIteration {
        steps_to_peak: peak.0,
        peak_probability: peak.1,
    })
}

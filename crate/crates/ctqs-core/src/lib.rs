//! Simulation kernel for continuous-time quantum search and time-optimal
//! qubit evolution.
//!
//! The crate covers the analog search Hamiltonians of Farhi-Gutmann and
//! Fenner, the stationary time-optimal generator between two given states,
//! the Roland-Cerf interpolating Hamiltonian, and a nonstationary qubit model
//! driven with unit speed efficiency along a non-geodesic Bloch-sphere path.
//! On top of the Hamiltonian catalog it provides:
//!
//! - exact stationary propagation and a norm-preserving exponential-midpoint
//!   integrator for time-dependent Hamiltonians ([`propagator`]),
//! - Fubini-Study path lengths, geodesic parametrization, and geodesic/speed
//!   efficiencies ([`bloch`]),
//! - instantaneous eigensystem tracking, minimum-gap detection, and symmetry
//!   diagnostics such as commutators and unitary involutions ([`spectral`]),
//! - the energy-based constraint system showing that suboptimal stationary
//!   evolution between orthogonal states is infeasible ([`constraints`]),
//! - SU(2) rotation composition and the discrete simulation step whose
//!   `dt = pi` limit is Grover's iterate ([`su2`]).
//!
//! Everything operates on small dense complex matrices (`N <= 64`); the crate
//! is `no_std` compatible (with `alloc`) when built without the `std`
//! feature.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bloch;
pub mod constraints;
pub mod error;
pub mod hamiltonians;
pub mod linalg;
pub mod propagator;
pub mod spectral;
pub mod su2;

pub use bloch::BlochVector;
pub use error::{Error, Result};
pub use hamiltonians::{
    HamiltonianSampler, SearchProblem, StationaryHamiltonian, TimeDependentHamiltonian,
};
pub use linalg::{CMatrix, EigenDecomposition, HermitianMatrix, StateVector, C64};
pub use propagator::{PropagationConfig, Trajectory};

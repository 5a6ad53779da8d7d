//! Dense complex vector/matrix kernel: Hermitian eigendecomposition, matrix
//! exponential of Hermitian generators, inner products, and phase-insensitive
//! state comparison.
//!
//! Matrices here are small (`N <= 64`, typically 2x2 or 4x4), so the
//! eigensolver favors determinism over asymptotic speed: an analytic closed
//! form for 2x2 and cyclic complex Jacobi sweeps for larger matrices. Every
//! eigenvector is brought to a fixed gauge (largest-magnitude component real
//! positive) so downstream comparisons are reproducible.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Double-precision complex scalar used throughout the crate.
pub type C64 = Complex<f64>;

/// Entrywise tolerance for the `M = M†` check.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Pairwise orthonormality tolerance for eigenvector sets.
pub const ORTHONORMALITY_TOL: f64 = 1e-12;
/// Eigenvalues closer than this are treated as one degenerate block.
pub const DEGENERACY_TOL: f64 = 1e-12;
/// Jacobi convergence target for the off-diagonal Frobenius norm.
pub const JACOBI_OFF_TOL: f64 = 1e-14;
/// Hard cap on cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

fn finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// A pure quantum state: `N >= 2` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    /// Wraps raw amplitudes. Rejects NaN/infinite components and dimensions
    /// below 2. Normalization is not enforced here; see [`Self::normalized`].
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if amps.len() < 2 {
            return Err(Error::DimensionMismatch {
                left: amps.len(),
                right: 2,
            });
        }
        if !amps.iter().all(|&a| finite(a)) {
            return Err(Error::NonFinite);
        }
        Ok(Self { amps })
    }

    /// Computational basis state `|k>` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(dim >= 2 && k < dim, "basis index out of range");
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[k] = C64::new(1.0, 0.0);
        Self { amps }
    }

    /// Uniform superposition over `dim` basis states.
    pub fn uniform(dim: usize) -> Self {
        assert!(dim >= 2);
        let a = 1.0 / (dim as f64).sqrt();
        Self {
            amps: vec![C64::new(a, 0.0); dim],
        }
    }

    /// Qubit state from two amplitudes.
    pub fn qubit(c0: C64, c1: C64) -> Self {
        Self::new(vec![c0, c1]).expect("finite qubit amplitudes")
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amp(&self, i: usize) -> C64 {
        self.amps[i]
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    /// Hermitian inner product `<self|other>` (conjugation on `self`).
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(C64::new(0.0, 0.0), |acc, (a, b)| acc + a.conj() * b))
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sq() - 1.0).abs() <= tol
    }

    /// Returns the state scaled to unit norm.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(self.scaled(C64::new(1.0 / n, 0.0)))
    }

    /// Multiplies every amplitude by `factor` (e.g. a global phase).
    pub fn scaled(&self, factor: C64) -> Self {
        Self {
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }

    /// `ca|a> + cb|b>`, unnormalized.
    pub fn superpose(ca: C64, a: &Self, cb: C64, b: &Self) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                left: a.dim(),
                right: b.dim(),
            });
        }
        Self::new(
            a.amps
                .iter()
                .zip(&b.amps)
                .map(|(x, y)| ca * x + cb * y)
                .collect(),
        )
    }
}

/// Transition probability `|<a|b>|²`; global-phase invariant.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    debug_assert!(a.is_normalized(1e-9) && b.is_normalized(1e-9));
    Ok(a.inner(b)?.norm_sqr().min(1.0))
}

/// A dense square complex matrix in row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a `dim x dim` matrix from row-major data.
    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: data.len(),
                right: dim * dim,
            });
        }
        if !data.iter().all(|&z| finite(z)) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, data })
    }

    /// Outer product `|a><b|`.
    pub fn outer(a: &StateVector, b: &StateVector) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                left: a.dim(),
                right: b.dim(),
            });
        }
        let dim = a.dim();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, a.amp(i) * b.amp(j).conj());
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&a| a * factor).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &StateVector) -> Result<StateVector> {
        if self.dim != v.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.dim(),
            });
        }
        let amps = (0..self.dim)
            .map(|i| {
                (0..self.dim).fold(C64::new(0.0, 0.0), |acc, j| acc + self.get(i, j) * v.amp(j))
            })
            .collect();
        StateVector::new(amps)
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).fold(C64::new(0.0, 0.0), |acc, i| acc + self.get(i, i))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from `M = M†`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        match self.adjoint().mul(self) {
            Ok(p) => {
                p.sub(&Self::identity(self.dim))
                    .map(|d| d.max_abs_entry() <= tol)
                    == Ok(true)
            }
            Err(_) => false,
        }
    }
}

/// Commutator `[A, B] = AB - BA`.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// A validated Hermitian matrix (`M = M†` within [`HERMITICITY_TOL`]).
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    mat: CMatrix,
}

impl HermitianMatrix {
    /// Validates Hermiticity and symmetrizes the tiny residual so the stored
    /// matrix is exactly `(M + M†)/2`.
    pub fn new(mat: CMatrix) -> Result<Self> {
        Self::with_tolerance(mat, HERMITICITY_TOL)
    }

    /// Same as [`Self::new`] with a caller-chosen tolerance.
    pub fn with_tolerance(mat: CMatrix, tol: f64) -> Result<Self> {
        let defect = mat.hermiticity_defect();
        if !defect.is_finite() {
            return Err(Error::NonFinite);
        }
        if defect > tol {
            return Err(Error::NotHermitian {
                max_asymmetry: defect,
            });
        }
        let sym = mat.add(&mat.adjoint())?.scale(C64::new(0.5, 0.0));
        Ok(Self { mat: sym })
    }

    /// Rank-one projector `|psi><psi|`.
    pub fn projector(psi: &StateVector) -> Self {
        let m = CMatrix::outer(psi, psi).expect("same state on both sides");
        Self { mat: m }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            mat: CMatrix::zeros(dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: CMatrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.mat.get(i, j)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            mat: self.mat.add(&other.mat)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            mat: self.mat.sub(&other.mat)?,
        })
    }

    /// Scales by a real factor (complex factors would break Hermiticity).
    pub fn scale(&self, factor: f64) -> Self {
        Self {
            mat: self.mat.scale(C64::new(factor, 0.0)),
        }
    }

    /// `H + offset * I`.
    pub fn shifted(&self, offset: f64) -> Self {
        let shift = CMatrix::identity(self.dim()).scale(C64::new(offset, 0.0));
        Self {
            mat: self.mat.add(&shift).expect("same dimension"),
        }
    }

    /// Expectation value `<psi|H|psi>` (real by Hermiticity).
    pub fn expectation(&self, psi: &StateVector) -> Result<f64> {
        let hpsi = self.mat.mul_vec(psi)?;
        let e = psi.inner(&hpsi)?;
        debug_assert!(e.im.abs() < 1e-9 * (1.0 + e.re.abs()));
        Ok(e.re)
    }

    /// Energy dispersion `sqrt(<H²> - <H>²)` in the given state.
    pub fn dispersion(&self, psi: &StateVector) -> Result<f64> {
        let hpsi = self.mat.mul_vec(psi)?;
        let mean = psi.inner(&hpsi)?.re;
        let second = hpsi.norm_sq();
        Ok((second - mean * mean).max(0.0).sqrt())
    }

    /// Largest eigenvalue magnitude.
    pub fn spectral_norm(&self) -> f64 {
        self.eigen()
            .values()
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max)
    }

    /// Full eigendecomposition; see [`EigenDecomposition`] for conventions.
    pub fn eigen(&self) -> EigenDecomposition {
        if self.dim() == 2 {
            eigen_2x2(&self.mat)
        } else {
            eigen_jacobi(&self.mat)
        }
    }
}

/// Unitary propagator `U = exp(-i H t / hbar)`, assembled from the spectral
/// decomposition so each factor `exp(-i lambda t / hbar)` is exactly unimodular.
pub fn unitary_exp(h: &HermitianMatrix, t: f64, hbar: f64) -> CMatrix {
    debug_assert!(hbar > 0.0);
    let eig = h.eigen();
    let n = h.dim();
    let mut u = CMatrix::zeros(n);
    for (lambda, vec) in eig.values().iter().zip(eig.vectors()) {
        let phase = C64::from_polar(1.0, -lambda * t / hbar);
        for i in 0..n {
            let vi = vec.amp(i) * phase;
            for j in 0..n {
                let v = u.get(i, j) + vi * vec.amp(j).conj();
                u.set(i, j, v);
            }
        }
    }
    u
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
///
/// Gauge: each vector is scaled so its largest-magnitude component is real
/// positive (ties broken by lowest index). Degenerate blocks (values within
/// [`DEGENERACY_TOL`]) are re-orthonormalized by sequential projection in
/// index order, so the output is deterministic.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    values: Vec<f64>,
    vectors: Vec<StateVector>,
}

impl EigenDecomposition {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }

    /// Rebuilds `sum_i lambda_i |v_i><v_i|`; used as the reconstruction oracle.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.vectors[0].dim();
        let mut m = CMatrix::zeros(n);
        for (lambda, v) in self.values.iter().zip(&self.vectors) {
            for i in 0..n {
                for j in 0..n {
                    let add = v.amp(i) * v.amp(j).conj() * C64::new(*lambda, 0.0);
                    let cur = m.get(i, j) + add;
                    m.set(i, j, cur);
                }
            }
        }
        m
    }
}

fn fix_phase(v: &mut [C64]) {
    let mut best = 0usize;
    let mut best_mag = -1.0f64;
    for (i, a) in v.iter().enumerate() {
        let mag = a.norm();
        if mag > best_mag + 1e-15 {
            best_mag = mag;
            best = i;
        }
    }
    let z = v[best];
    if z.norm() > 0.0 {
        let corr = z.conj() / z.norm();
        for a in v.iter_mut() {
            *a *= corr;
        }
        // force the pivot exactly real
        v[best] = C64::new(v[best].re, 0.0);
    }
}

fn finish_eigen(mut pairs: Vec<(f64, Vec<C64>)>) -> EigenDecomposition {
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite eigenvalues"));

    // Re-orthonormalize inside each degenerate block by sequential projection.
    let n = pairs.len();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (pairs[end].0 - pairs[end - 1].0).abs() <= DEGENERACY_TOL {
            end += 1;
        }
        if end - start > 1 {
            for i in start..end {
                for j in start..i {
                    let proj = pairs[j]
                        .1
                        .iter()
                        .zip(&pairs[i].1)
                        .fold(C64::new(0.0, 0.0), |acc, (a, b)| acc + a.conj() * b);
                    let prev = pairs[j].1.clone();
                    for (x, p) in pairs[i].1.iter_mut().zip(&prev) {
                        *x -= proj * p;
                    }
                }
                let nrm = pairs[i].1.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                for x in pairs[i].1.iter_mut() {
                    *x /= nrm;
                }
            }
        }
        start = end;
    }

    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    for (lambda, mut v) in pairs {
        fix_phase(&mut v);
        values.push(lambda);
        vectors.push(StateVector::new(v).expect("finite eigenvector"));
    }
    EigenDecomposition { values, vectors }
}

/// Closed-form 2x2 Hermitian eigendecomposition.
fn eigen_2x2(m: &CMatrix) -> EigenDecomposition {
    let a = m.get(0, 0).re;
    let b = m.get(1, 1).re;
    let off = m.get(0, 1);
    let r = off.norm();
    let half_sum = 0.5 * (a + b);
    let half_diff = 0.5 * (a - b);
    let root = (half_diff * half_diff + r * r).sqrt();
    let lo = half_sum - root;
    let hi = half_sum + root;

    let vector_for = |lambda: f64| -> Vec<C64> {
        // (off, lambda - a) and (lambda - b, conj(off)) both solve the
        // eigenproblem; pick the numerically larger one.
        let cand1 = [off, C64::new(lambda - a, 0.0)];
        let cand2 = [C64::new(lambda - b, 0.0), off.conj()];
        let n1 = cand1[0].norm_sqr() + cand1[1].norm_sqr();
        let n2 = cand2[0].norm_sqr() + cand2[1].norm_sqr();
        let v = if n1 >= n2 { cand1 } else { cand2 };
        let nrm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        if nrm == 0.0 {
            // diagonal with equal entries: fall back to the basis
            if lambda == lo {
                vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]
            } else {
                vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]
            }
        } else {
            vec![v[0] / nrm, v[1] / nrm]
        }
    };

    if r == 0.0 {
        // already diagonal
        let pairs = vec![
            (a, vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]),
            (b, vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]),
        ];
        return finish_eigen(pairs);
    }

    let pairs = vec![(lo, vector_for(lo)), (hi, vector_for(hi))];
    finish_eigen(pairs)
}

/// Cyclic complex Jacobi sweeps for `N > 2`.
fn eigen_jacobi(m: &CMatrix) -> EigenDecomposition {
    let n = m.dim();
    let mut a = m.clone();
    let mut v = CMatrix::identity(n);
    let scale = m.frobenius_norm().max(1.0);

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off += 2.0 * a.get(i, j).norm_sqr();
            }
        }
        if off.sqrt() <= JACOBI_OFF_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r <= f64::EPSILON * scale {
                    continue;
                }
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let phase = apq / r; // e^{i phi}
                let theta = 0.5 * (2.0 * r).atan2(app - aqq);
                let (s, c) = theta.sin_cos();

                // rows/columns p and q of A <- U† A U
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    let new_pk = apk * c + aqk * phase * s;
                    let new_qk = aqk * c - apk * phase.conj() * s;
                    a.set(p, k, new_pk);
                    a.set(q, k, new_qk);
                    a.set(k, p, new_pk.conj());
                    a.set(k, q, new_qk.conj());
                }
                let new_pp = c * c * app + s * s * aqq + 2.0 * c * s * r;
                let new_qq = s * s * app + c * c * aqq - 2.0 * c * s * r;
                a.set(p, p, C64::new(new_pp, 0.0));
                a.set(q, q, C64::new(new_qq, 0.0));
                a.set(p, q, C64::new(0.0, 0.0));
                a.set(q, p, C64::new(0.0, 0.0));

                // V <- V U with U[p][p]=c, U[p][q]=-s e^{i phi},
                // U[q][p]=s e^{-i phi}, U[q][q]=c
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * c + vkq * phase.conj() * s);
                    v.set(k, q, vkq * c - vkp * phase * s);
                }
            }
        }
    }

    let pairs = (0..n)
        .map(|i| {
            let col: Vec<C64> = (0..n).map(|k| v.get(k, i)).collect();
            (a.get(i, i).re, col)
        })
        .collect();
    finish_eigen(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn pauli_z() -> HermitianMatrix {
        HermitianMatrix::new(
            CMatrix::from_vec(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
                .unwrap(),
        )
        .unwrap()
    }

    fn random_hermitian(rng: &mut StdRng, n: usize) -> HermitianMatrix {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, c(rng.gen_range(-1.0..1.0), 0.0));
            for j in (i + 1)..n {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m.set(i, j, z);
                m.set(j, i, z.conj());
            }
        }
        HermitianMatrix::new(m).unwrap()
    }

    #[test]
    fn pauli_z_eigensystem() {
        let eig = pauli_z().eigen();
        assert_eq!(eig.values(), &[-1.0, 1.0]);
        // ascending order pairs -1 with |1> and +1 with |0>
        assert!((eig.vectors()[0].amp(1).re - 1.0).abs() < 1e-15);
        assert!((eig.vectors()[1].amp(0).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fenner_matrix_eigenvalues() {
        // 2x2 representation in the {|w>, |r>} basis at E = 1, x = 1/2:
        // off-diagonal 2iEx sqrt(1-x^2) = i sqrt(3)/2, eigenvalues +- sqrt(3)/2
        let g = 3f64.sqrt() / 2.0;
        let m =
            CMatrix::from_vec(2, vec![c(0.0, 0.0), c(0.0, g), c(0.0, -g), c(0.0, 0.0)]).unwrap();
        let eig = HermitianMatrix::new(m).unwrap().eigen();
        assert!((eig.values()[0] + g).abs() < 1e-14);
        assert!((eig.values()[1] - g).abs() < 1e-14);
    }

    #[test]
    fn random_reconstruction_4x4() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let h = random_hermitian(&mut rng, 4);
            let eig = h.eigen();
            let residual = eig.reconstruct().sub(h.matrix()).unwrap().max_abs_entry();
            assert!(residual < 1e-10, "residual {residual}");
            // orthonormality
            for i in 0..4 {
                for j in 0..4 {
                    let dot = eig.vectors()[i].inner(&eig.vectors()[j]).unwrap();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - c(expect, 0.0)).norm() < 1e-12);
                }
            }
            // ascending values
            for w in eig.values().windows(2) {
                assert!(w[0] <= w[1] + 1e-15);
            }
            // phase convention: largest component real positive
            for v in eig.vectors() {
                let (mut best, mut mag) = (0, -1.0);
                for (i, a) in v.amplitudes().iter().enumerate() {
                    if a.norm() > mag + 1e-15 {
                        mag = a.norm();
                        best = i;
                    }
                }
                assert!(v.amp(best).im.abs() < 1e-13);
                assert!(v.amp(best).re > 0.0);
            }
        }
    }

    #[test]
    fn degenerate_eigenvalues_stay_orthonormal() {
        // identity block plus one separated level
        let mut m = CMatrix::identity(4);
        m.set(3, 3, c(2.0, 0.0));
        let eig = HermitianMatrix::new(m).unwrap().eigen();
        for i in 0..4 {
            for j in (i + 1)..4 {
                let dot = eig.vectors()[i].inner(&eig.vectors()[j]).unwrap().norm();
                assert!(dot < 1e-12);
            }
        }
    }

    #[test]
    fn not_hermitian_rejected() {
        let m =
            CMatrix::from_vec(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let h = HermitianMatrix::zeros(3);
        let u = unitary_exp(&h, 2.7, 1.0);
        assert!(u.sub(&CMatrix::identity(3)).unwrap().max_abs_entry() < 1e-15);
    }

    #[test]
    fn exp_of_pauli_z_quarter_period() {
        let u = unitary_exp(&pauli_z(), core::f64::consts::FRAC_PI_2, 1.0);
        let expect_00 = C64::from_polar(1.0, -core::f64::consts::FRAC_PI_2);
        assert!((u.get(0, 0) - expect_00).norm() < 1e-15);
        assert!((u.get(1, 1) - expect_00.conj()).norm() < 1e-15);
        assert!(u.get(0, 1).norm() < 1e-15);
    }

    #[test]
    fn unitary_group_law() {
        let mut rng = StdRng::seed_from_u64(11);
        for &n in &[2usize, 4] {
            for _ in 0..10 {
                let h = random_hermitian(&mut rng, n);
                let t1 = rng.gen_range(-2.0..2.0);
                let t2 = rng.gen_range(-2.0..2.0);
                let u12 = unitary_exp(&h, t1, 1.0)
                    .mul(&unitary_exp(&h, t2, 1.0))
                    .unwrap();
                let u = unitary_exp(&h, t1 + t2, 1.0);
                assert!(u12.sub(&u).unwrap().max_abs_entry() < 1e-11);
                assert!(u.is_unitary(1e-12));
            }
        }
    }

    #[test]
    fn fidelity_basics() {
        let zero = StateVector::basis(2, 0);
        let one = StateVector::basis(2, 1);
        let plus = StateVector::uniform(2);
        assert!((fidelity(&zero, &zero).unwrap() - 1.0).abs() < 1e-15);
        assert!(fidelity(&zero, &one).unwrap() < 1e-15);
        assert!((fidelity(&zero, &plus).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn fidelity_is_phase_invariant() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..50 {
            let a = StateVector::qubit(
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            )
            .normalized()
            .unwrap();
            let b = StateVector::qubit(
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            )
            .normalized()
            .unwrap();
            let phi = rng.gen_range(0.0..core::f64::consts::TAU);
            let rotated = a.scaled(C64::from_polar(1.0, phi));
            assert!((fidelity(&rotated, &b).unwrap() - fidelity(&a, &b).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn dimension_mismatch_reported() {
        let a = StateVector::basis(2, 0);
        let b = StateVector::basis(3, 0);
        assert!(matches!(
            fidelity(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn non_finite_rejected() {
        assert!(matches!(
            StateVector::new(vec![c(f64::NAN, 0.0), c(0.0, 0.0)]),
            Err(Error::NonFinite)
        ));
    }
}

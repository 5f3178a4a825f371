//! Brute-force dense state-vector simulation.
//!
//! This is the ground truth the symbolic protocol code is checked against.
//! Qubit 0 (vertex 1) is the most significant bit of the amplitude index, so
//! on two qubits the basis order is `|00⟩, |01⟩, |10⟩, |11⟩` with the first
//! digit belonging to qubit 0.
//!
//! Global phases are never compared directly: use [`fidelity`] or
//! [`StateVector::approx_eq_up_to_phase`].

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::gf2::BitVector;
use crate::graph::PartitionedGraph;

/// Largest register the oracle will allocate (8192 amplitudes).
pub const MAX_QUBITS: usize = 13;

/// Largest register for the explicit stabilizer-sum projector check.
pub const MAX_PROJECTOR_QUBITS: usize = 8;

/// Amplitude tolerance for eigenvalue checks.
pub const EIGEN_TOL: f64 = 1e-10;

/// Below this, a projection is treated as a zero-probability outcome.
pub const ZERO_PROBABILITY: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{requested} qubits requested, the oracle is capped at {max}")]
    TooManyQubits { requested: usize, max: usize },
    #[error("site {site} out of range for a {num_qubits}-qubit state")]
    SiteOutOfRange { site: usize, num_qubits: usize },
    #[error("site {0} listed twice")]
    DuplicateSite(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("amplitude count {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("state has zero norm")]
    ZeroNorm,
}

fn check_size(num_qubits: usize, max: usize) -> Result<(), OracleError> {
    if num_qubits > max {
        return Err(OracleError::TooManyQubits {
            requested: num_qubits,
            max,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliOp {
    pub axis: Axis,
    pub site: usize,
}

impl PauliOp {
    pub fn x(site: usize) -> Self {
        Self {
            axis: Axis::X,
            site,
        }
    }

    pub fn y(site: usize) -> Self {
        Self {
            axis: Axis::Y,
            site,
        }
    }

    pub fn z(site: usize) -> Self {
        Self {
            axis: Axis::Z,
            site,
        }
    }
}

/// Dense complex amplitudes over `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state `|index⟩`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self, OracleError> {
        check_size(num_qubits, MAX_QUBITS)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(OracleError::DimensionMismatch {
                expected: dim,
                found: index,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    /// `|+⟩^{⊗num_qubits}`.
    pub fn plus(num_qubits: usize) -> Result<Self, OracleError> {
        check_size(num_qubits, MAX_QUBITS)?;
        let dim = 1usize << num_qubits;
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self {
            num_qubits,
            amps: vec![a; dim],
        })
    }

    /// Normalizes the given amplitudes into a state.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, OracleError> {
        let dim = amps.len();
        if !dim.is_power_of_two() {
            return Err(OracleError::NotPowerOfTwo(dim));
        }
        let num_qubits = dim.trailing_zeros() as usize;
        check_size(num_qubits, MAX_QUBITS)?;
        let mut s = Self { num_qubits, amps };
        let norm = s.norm();
        if norm < 1e-300 {
            return Err(OracleError::ZeroNorm);
        }
        s.scale(1.0 / norm);
        Ok(s)
    }

    /// Haar-random pure state: i.i.d. standard normal real and imaginary
    /// parts, then normalized.
    pub fn random<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Result<Self, OracleError> {
        check_size(num_qubits, MAX_QUBITS)?;
        let amps = (0..1usize << num_qubits)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        Self::from_amplitudes(amps)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    fn scale(&mut self, factor: f64) {
        for a in &mut self.amps {
            *a *= factor;
        }
    }

    #[inline]
    fn mask(&self, site: usize) -> usize {
        1 << (self.num_qubits - 1 - site)
    }

    fn check_site(&self, site: usize) -> Result<(), OracleError> {
        if site >= self.num_qubits {
            return Err(OracleError::SiteOutOfRange {
                site,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64, OracleError> {
        if self.num_qubits != other.num_qubits {
            return Err(OracleError::DimensionMismatch {
                expected: self.num_qubits,
                found: other.num_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `self ⊗ other`, with the qubits of `self` first.
    pub fn kron(&self, other: &StateVector) -> Result<StateVector, OracleError> {
        let num_qubits = self.num_qubits + other.num_qubits;
        check_size(num_qubits, MAX_QUBITS)?;
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Ok(StateVector { num_qubits, amps })
    }

    pub fn apply_pauli(&self, op: PauliOp) -> Result<StateVector, OracleError> {
        let mut out = self.clone();
        out.pauli_in_place(op)?;
        Ok(out)
    }

    pub(crate) fn pauli_in_place(&mut self, op: PauliOp) -> Result<(), OracleError> {
        self.check_site(op.site)?;
        let mask = self.mask(op.site);
        match op.axis {
            Axis::Z => {
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & mask != 0 {
                        *a = -*a;
                    }
                }
            }
            Axis::X | Axis::Y => {
                let i_unit = Complex64::new(0.0, 1.0);
                for i in (0..self.amps.len()).filter(|i| i & mask == 0) {
                    let j = i | mask;
                    let (lo, hi) = (self.amps[i], self.amps[j]);
                    if op.axis == Axis::X {
                        self.amps[i] = hi;
                        self.amps[j] = lo;
                    } else {
                        // Y|0⟩ = i|1⟩, Y|1⟩ = −i|0⟩
                        self.amps[i] = -i_unit * hi;
                        self.amps[j] = i_unit * lo;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply_cz(&self, a: usize, b: usize) -> Result<StateVector, OracleError> {
        let mut out = self.clone();
        out.cz_in_place(a, b)?;
        Ok(out)
    }

    fn cz_in_place(&mut self, a: usize, b: usize) -> Result<(), OracleError> {
        self.check_site(a)?;
        self.check_site(b)?;
        if a == b {
            return Err(OracleError::DuplicateSite(a));
        }
        let both = self.mask(a) | self.mask(b);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & both == both {
                *amp = -*amp;
            }
        }
        Ok(())
    }

    /// Equality after removing the global phase, compared amplitude-wise.
    pub fn approx_eq_up_to_phase(&self, other: &StateVector, tol: f64) -> bool {
        if self.num_qubits != other.num_qubits {
            return false;
        }
        let Ok(overlap) = self.inner(other) else {
            return false;
        };
        if overlap.norm() < tol {
            return self.norm() < tol && other.norm() < tol;
        }
        let phase = overlap / overlap.norm();
        self.amps
            .iter()
            .zip(&other.amps)
            .all(|(a, b)| (a * phase - b).norm() <= tol)
    }

    fn approx_eq(&self, other: &StateVector, tol: f64) -> bool {
        self.num_qubits == other.num_qubits
            && self
                .amps
                .iter()
                .zip(&other.amps)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Projects `sites` onto `basis_state` (given in the order of `sites`).
    ///
    /// The residual lives on the remaining qubits in increasing site order
    /// and is renormalized unless the probability is below
    /// [`ZERO_PROBABILITY`].
    pub fn project_onto(
        &self,
        sites: &[usize],
        basis_state: &StateVector,
    ) -> Result<Projection, OracleError> {
        if basis_state.num_qubits != sites.len() {
            return Err(OracleError::DimensionMismatch {
                expected: sites.len(),
                found: basis_state.num_qubits,
            });
        }
        let mut measured = vec![false; self.num_qubits];
        for &s in sites {
            self.check_site(s)?;
            if std::mem::replace(&mut measured[s], true) {
                return Err(OracleError::DuplicateSite(s));
            }
        }
        let rest: Vec<usize> = (0..self.num_qubits).filter(|&q| !measured[q]).collect();
        let mut residual = vec![Complex64::new(0.0, 0.0); 1 << rest.len()];
        for (idx, amp) in self.amps.iter().enumerate() {
            let bit = |q: usize| (idx >> (self.num_qubits - 1 - q)) & 1;
            let m_idx = sites.iter().fold(0, |acc, &q| (acc << 1) | bit(q));
            let r_idx = rest.iter().fold(0, |acc, &q| (acc << 1) | bit(q));
            residual[r_idx] += basis_state.amps[m_idx].conj() * amp;
        }
        let probability: f64 = residual.iter().map(Complex64::norm_sqr).sum();
        let residual = if probability > ZERO_PROBABILITY {
            let mut r = StateVector {
                num_qubits: rest.len(),
                amps: residual,
            };
            r.scale(1.0 / probability.sqrt());
            Some(r)
        } else {
            None
        };
        Ok(Projection {
            probability,
            residual,
        })
    }
}

/// Result of [`StateVector::project_onto`].
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub probability: f64,
    /// `None` flags a zero-probability outcome.
    pub residual: Option<StateVector>,
}

/// `|⟨a|b⟩|²`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64, OracleError> {
    Ok(a.inner(b)?.norm_sqr())
}

/// The Pauli product `±X_x ∏ Z_z` attached to a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerGenerator {
    pub x_site: usize,
    pub z_sites: Vec<usize>,
    /// Overall sign −1; only used to build corrupted generator sets.
    pub negated: bool,
}

impl StabilizerGenerator {
    /// `g_v = X_v ∏_{w∈N(v)} Z_w`.
    pub fn for_vertex(g: &PartitionedGraph, v: usize) -> Self {
        Self {
            x_site: v,
            z_sites: g.neighbors(v).collect(),
            negated: false,
        }
    }

    pub fn all(g: &PartitionedGraph) -> Vec<Self> {
        (0..g.num_vertices())
            .map(|v| Self::for_vertex(g, v))
            .collect()
    }

    pub fn apply(&self, s: &StateVector) -> Result<StateVector, OracleError> {
        let mut out = s.clone();
        self.apply_in_place(&mut out)?;
        Ok(out)
    }

    fn apply_in_place(&self, s: &mut StateVector) -> Result<(), OracleError> {
        for &z in &self.z_sites {
            s.pauli_in_place(PauliOp::z(z))?;
        }
        s.pauli_in_place(PauliOp::x(self.x_site))?;
        if self.negated {
            s.scale(-1.0);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eigenvalue {
    Plus,
    Minus,
    NotEigenstate,
}

impl Eigenvalue {
    /// `0` for `+1`, `1` for `−1`.
    pub fn as_bit(self) -> Option<bool> {
        match self {
            Eigenvalue::Plus => Some(false),
            Eigenvalue::Minus => Some(true),
            Eigenvalue::NotEigenstate => None,
        }
    }
}

pub fn stabilizer_eigenvalue(
    s: &StateVector,
    generator: &StabilizerGenerator,
) -> Result<Eigenvalue, OracleError> {
    let image = generator.apply(s)?;
    if image.approx_eq(s, EIGEN_TOL) {
        return Ok(Eigenvalue::Plus);
    }
    let mut neg = s.clone();
    neg.scale(-1.0);
    Ok(if image.approx_eq(&neg, EIGEN_TOL) {
        Eigenvalue::Minus
    } else {
        Eigenvalue::NotEigenstate
    })
}

/// `|G⟩ = ∏_{(u,v)∈E} CZ_{uv} |+⟩^{⊗2n}`.
pub fn build_graph_state(g: &PartitionedGraph) -> Result<StateVector, OracleError> {
    let mut s = StateVector::plus(g.num_vertices())?;
    for (u, v) in g.edges() {
        s.cz_in_place(u, v)?;
    }
    Ok(s)
}

/// `|k⟩ = ∏_i Z_i^{k_i} |G⟩`.
pub fn graph_basis_state(g: &PartitionedGraph, k: &BitVector) -> Result<StateVector, OracleError> {
    if k.len() != g.num_vertices() {
        return Err(OracleError::DimensionMismatch {
            expected: g.num_vertices(),
            found: k.len(),
        });
    }
    let mut s = build_graph_state(g)?;
    for q in k.ones() {
        s.pauli_in_place(PauliOp::z(q))?;
    }
    Ok(s)
}

/// Compares `2^{-2n} Σ_j ∏_i g_i^{j_i}` against `|G⟩⟨G|` on a probe state.
///
/// The sum is evaluated term by term over all `2^{2n}` subsets of the given
/// generators.
pub fn stabilizer_sum_matches_projector(
    g: &PartitionedGraph,
    generators: &[StabilizerGenerator],
    probe: &StateVector,
) -> Result<bool, OracleError> {
    let size = g.num_vertices();
    check_size(size, MAX_PROJECTOR_QUBITS)?;
    if probe.num_qubits != size || generators.len() != size {
        return Err(OracleError::DimensionMismatch {
            expected: size,
            found: probe.num_qubits.max(generators.len()),
        });
    }
    let mut sum = vec![Complex64::new(0.0, 0.0); probe.amps.len()];
    for subset in 0u32..(1 << size) {
        let mut term = probe.clone();
        for (i, generator) in generators.iter().enumerate() {
            if (subset >> i) & 1 == 1 {
                generator.apply_in_place(&mut term)?;
            }
        }
        for (acc, a) in sum.iter_mut().zip(&term.amps) {
            *acc += a;
        }
    }
    let weight = 1.0 / f64::from(1u32 << size);
    let lhs = StateVector {
        num_qubits: size,
        amps: sum.into_iter().map(|a| a * weight).collect(),
    };

    let state = build_graph_state(g)?;
    let overlap = state.inner(probe)?;
    let rhs = StateVector {
        num_qubits: size,
        amps: state.amps.iter().map(|a| a * overlap).collect(),
    };
    Ok(lhs.approx_eq(&rhs, EIGEN_TOL))
}

/// Checks the stabilizer-sum form of `|G⟩⟨G|` on a random probe state.
pub fn graph_state_projector_check<R: Rng + ?Sized>(
    g: &PartitionedGraph,
    rng: &mut R,
) -> Result<bool, OracleError> {
    check_size(g.num_vertices(), MAX_PROJECTOR_QUBITS)?;
    let probe = StateVector::random(g.num_vertices(), rng)?;
    stabilizer_sum_matches_projector(g, &StabilizerGenerator::all(g), &probe)
}

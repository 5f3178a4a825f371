//! One-to-many teleportation of an `n`-qubit state through a graph state.
//!
//! Roles are reversed with respect to dense coding: the holder of the input
//! qubits `1′..n′` also holds the receiver half `n+1..2n` of `|G⟩`, and the
//! sender vertices `1..n` are the distant parties who end up with the state.
//! The joint measurement uses the basis `Z^k |G′⟩` of the mirror graph on
//! qubits `(1′..n′, n+1..2n)`, with bit `k_i` acting on `i′` for `i ≤ n`.
//!
//! After the announcement of `k`, party `i` applies `Z^{c_x,i} X^{c_z,i}`
//! where
//!
//! ```text
//! c_x = k_< ⊕ (Γ_T⁻¹ Γ_S)ᵀ k_>
//! c_z = (Γ_T⁻¹)ᵀ k_>
//! ```
//!
//! with `Γ_T` indexed sender-row, receiver-column (the same orientation the
//! graph module produces). The oracle tests below check this form on the
//! 4-vertex path, where `Γ_T` is not symmetric.
//!
//! Oracle register layout: qubits `0..2n` carry `|G⟩` in internal vertex
//! order, qubits `2n..3n` carry the input.

use rand::Rng;
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};
use crate::graph::PartitionedGraph;
use crate::oracle::{self, OracleError, PauliOp, StateVector, MAX_QUBITS};

/// Fidelity tolerance for faithful recovery.
pub const FIDELITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TeleportError {
    #[error("graph is not viable: rank(Γ_T) = {rank} < {n}, no corrections exist")]
    NotViable { rank: usize, n: usize },
    #[error("teleporting {n} qubits needs {} oracle qubits, limit is {max}", 3 * n)]
    SizeCap { n: usize, max: usize },
    #[error("expected length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// The announced `2n`-bit measurement result.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Outcome {
    k: BitVector,
}

impl Outcome {
    pub fn new(k: BitVector) -> Result<Self, TeleportError> {
        if !k.len().is_multiple_of(2) || k.is_empty() {
            return Err(TeleportError::LengthMismatch {
                expected: k.len() + 1,
                found: k.len(),
            });
        }
        Ok(Self { k })
    }

    pub fn from_index(n: usize, index: u64) -> Self {
        Self {
            k: BitVector::from_index(2 * n, index),
        }
    }

    pub fn k(&self) -> &BitVector {
        &self.k
    }

    pub fn n(&self) -> usize {
        self.k.len() / 2
    }

    /// Bits measured on the input qubits `1′..n′`.
    pub fn k_lower(&self) -> BitVector {
        self.k.slice(0, self.n())
    }

    /// Bits measured on the receiver half `n+1..2n`.
    pub fn k_upper(&self) -> BitVector {
        self.k.slice(self.n(), 2 * self.n())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Correction {
    pub c_x: BitVector,
    pub c_z: BitVector,
}

impl Correction {
    pub fn xor(&self, other: &Correction) -> Correction {
        Correction {
            c_x: &self.c_x ^ &other.c_x,
            c_z: &self.c_z ^ &other.c_z,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.c_x.is_zero() && self.c_z.is_zero()
    }
}

/// Linear maps from `k_>` to the two correction vectors.
#[derive(Debug, Clone)]
pub struct CorrectionMap {
    n: usize,
    x_from_upper: BitMatrix,
    z_from_upper: BitMatrix,
}

impl CorrectionMap {
    pub fn new(g: &PartitionedGraph) -> Result<Self, TeleportError> {
        let sm = g.sub_matrices();
        let inverse = sm.gamma_t.invert().map_err(|_| TeleportError::NotViable {
            rank: sm.gamma_t.rank(),
            n: g.n(),
        })?;
        let x_from_upper = inverse
            .matmul(&sm.gamma_s)
            .expect("square blocks")
            .transpose();
        Ok(Self {
            n: g.n(),
            x_from_upper,
            z_from_upper: inverse.transpose(),
        })
    }

    pub fn correction(&self, o: &Outcome) -> Result<Correction, TeleportError> {
        if o.n() != self.n {
            return Err(TeleportError::LengthMismatch {
                expected: 2 * self.n,
                found: o.k().len(),
            });
        }
        let upper = o.k_upper();
        let c_x = &o.k_lower() ^ &self.x_from_upper.matvec(&upper).expect("checked length");
        let c_z = self.z_from_upper.matvec(&upper).expect("checked length");
        Ok(Correction { c_x, c_z })
    }
}

pub fn correction_vectors(g: &PartitionedGraph, o: &Outcome) -> Result<Correction, TeleportError> {
    CorrectionMap::new(g)?.correction(o)
}

/// One measurement outcome of an oracle teleportation run.
#[derive(Debug, Clone, PartialEq)]
pub struct TeleportRecord {
    pub outcome: Outcome,
    pub probability: f64,
    pub correction: Option<Correction>,
    /// State held by the parties after (optional) correction; `None` for a
    /// zero-probability outcome.
    pub post: Option<StateVector>,
    /// Fidelity of `post` with the input; `None` when `post` is.
    pub fidelity: Option<f64>,
}

/// Prepared oracle run: `|G⟩ ⊗ |input⟩` plus the correction maps.
struct Teleporter<'g> {
    graph: &'g PartitionedGraph,
    mirror: PartitionedGraph,
    joint: StateVector,
    measured_sites: Vec<usize>,
    corrections: Option<CorrectionMap>,
}

impl<'g> Teleporter<'g> {
    fn new(g: &'g PartitionedGraph, input: &StateVector) -> Result<Self, TeleportError> {
        let n = g.n();
        if 3 * n > MAX_QUBITS {
            return Err(TeleportError::SizeCap { n, max: MAX_QUBITS });
        }
        if input.num_qubits() != n {
            return Err(TeleportError::LengthMismatch {
                expected: n,
                found: input.num_qubits(),
            });
        }
        let joint = oracle::build_graph_state(g)?.kron(input)?;
        let measured_sites = (2 * n..3 * n).chain(n..2 * n).collect();
        let corrections = match CorrectionMap::new(g) {
            Ok(c) => Some(c),
            Err(TeleportError::NotViable { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(Self {
            graph: g,
            mirror: g.mirror_pair(),
            joint,
            measured_sites,
            corrections,
        })
    }

    fn run(
        &self,
        input: &StateVector,
        o: &Outcome,
        correct: bool,
    ) -> Result<TeleportRecord, TeleportError> {
        let n = self.graph.n();
        if o.n() != n {
            return Err(TeleportError::LengthMismatch {
                expected: 2 * n,
                found: o.k().len(),
            });
        }
        let basis = oracle::graph_basis_state(&self.mirror, o.k())?;
        let projection = self.joint.project_onto(&self.measured_sites, &basis)?;
        let correction = match &self.corrections {
            Some(map) => Some(map.correction(o)?),
            None => None,
        };
        let post = match (projection.residual, &correction) {
            (Some(mut state), Some(c)) if correct => {
                for i in 0..n {
                    if c.c_z.get(i) {
                        state = state.apply_pauli(PauliOp::x(i))?;
                    }
                    if c.c_x.get(i) {
                        state = state.apply_pauli(PauliOp::z(i))?;
                    }
                }
                Some(state)
            }
            (residual, _) => residual,
        };
        let fidelity = post
            .as_ref()
            .map(|p| oracle::fidelity(p, input))
            .transpose()?;
        Ok(TeleportRecord {
            outcome: o.clone(),
            probability: projection.probability,
            correction,
            post,
            fidelity,
        })
    }
}

/// Simulates one outcome end to end on the oracle and applies the
/// correction. Fails with `NotViable` before simulating when no correction
/// exists.
pub fn teleport_oracle(
    g: &PartitionedGraph,
    input: &StateVector,
    o: &Outcome,
) -> Result<TeleportRecord, TeleportError> {
    CorrectionMap::new(g)?;
    Teleporter::new(g, input)?.run(input, o, true)
}

/// As [`teleport_oracle`] but leaves the parties' state uncorrected.
pub fn teleport_oracle_uncorrected(
    g: &PartitionedGraph,
    input: &StateVector,
    o: &Outcome,
) -> Result<TeleportRecord, TeleportError> {
    Teleporter::new(g, input)?.run(input, o, false)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeSweep {
    /// Smallest fidelity over nonzero-probability outcomes; `None` when no
    /// corrections exist and the sweep ran corrected.
    pub min_fidelity: Option<f64>,
    pub prob_sum: f64,
    pub records: Vec<TeleportRecord>,
    /// Graph-state qubits consumed by one run.
    pub graph_qubits_consumed: usize,
    /// Classical bits announced per run.
    pub classical_bits: usize,
}

impl OutcomeSweep {
    pub fn is_faithful(&self) -> bool {
        self.min_fidelity.is_some_and(|f| f >= 1.0 - FIDELITY_TOL)
    }
}

fn sweep(
    g: &PartitionedGraph,
    input: &StateVector,
    correct: bool,
) -> Result<OutcomeSweep, TeleportError> {
    let n = g.n();
    let tele = Teleporter::new(g, input)?;
    let records = (0..1u64 << (2 * n))
        .map(|i| tele.run(input, &Outcome::from_index(n, i), correct))
        .collect::<Result<Vec<_>, _>>()?;
    let prob_sum = records.iter().map(|r| r.probability).sum();
    let min_fidelity = if correct && tele.corrections.is_none() {
        None
    } else {
        records
            .iter()
            .filter_map(|r| r.fidelity)
            .min_by(f64::total_cmp)
    };
    Ok(OutcomeSweep {
        min_fidelity,
        prob_sum,
        records,
        graph_qubits_consumed: 2 * n,
        classical_bits: 2 * n,
    })
}

/// Runs every one of the `4ⁿ` outcomes with correction.
///
/// Works on non-viable graphs too; there only the probabilities are
/// meaningful and `min_fidelity` is `None`.
pub fn run_all_outcomes(
    g: &PartitionedGraph,
    input: &StateVector,
) -> Result<OutcomeSweep, TeleportError> {
    sweep(g, input, true)
}

/// Every outcome without applying any correction.
pub fn run_all_outcomes_uncorrected(
    g: &PartitionedGraph,
    input: &StateVector,
) -> Result<OutcomeSweep, TeleportError> {
    sweep(g, input, false)
}

/// Draws one outcome from the Born distribution and runs it.
pub fn teleport_sampled<R: Rng + ?Sized>(
    g: &PartitionedGraph,
    input: &StateVector,
    rng: &mut R,
) -> Result<TeleportRecord, TeleportError> {
    CorrectionMap::new(g)?;
    let n = g.n();
    let tele = Teleporter::new(g, input)?;
    let records = (0..1u64 << (2 * n))
        .map(|i| tele.run(input, &Outcome::from_index(n, i), true))
        .collect::<Result<Vec<_>, _>>()?;
    let total: f64 = records.iter().map(|r| r.probability).sum();
    let mut target = rng.random::<f64>() * total;
    let mut possible = records.into_iter().filter(|r| r.post.is_some()).peekable();
    while let Some(record) = possible.next() {
        target -= record.probability;
        if target < 0.0 || possible.peek().is_none() {
            return Ok(record);
        }
    }
    unreachable!("a normalized input has at least one possible outcome")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn edge() -> PartitionedGraph {
        PartitionedGraph::new(1, &[(0, 1)]).unwrap()
    }

    fn path() -> PartitionedGraph {
        parse_graph("pairs: 2\nsenders: 1 3\nedges: 1-2 2-3 3-4\n").unwrap()
    }

    fn star() -> PartitionedGraph {
        parse_graph("pairs: 2\nsenders: 1 2\nedges: 1-2 1-3 1-4\n").unwrap()
    }

    /// Γ_T = [[1,1],[0,1]] with a sender-sender edge and a receiver-receiver edge.
    fn coupled() -> PartitionedGraph {
        PartitionedGraph::new(2, &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn zero_outcome_needs_no_correction() {
        let c = correction_vectors(&coupled(), &Outcome::from_index(2, 0)).unwrap();
        assert!(c.is_identity());
    }

    #[test]
    fn single_edge_corrections() {
        for i in 0..4 {
            let o = Outcome::from_index(1, i);
            let c = correction_vectors(&edge(), &o).unwrap();
            assert_eq!(c.c_x, o.k_lower());
            assert_eq!(c.c_z, o.k_upper());
        }
    }

    #[test]
    fn tanner_type_keeps_lower_bits() {
        let g = path();
        for i in 0..16 {
            let o = Outcome::from_index(2, i);
            assert_eq!(correction_vectors(&g, &o).unwrap().c_x, o.k_lower());
        }
    }

    #[test]
    fn single_edge_is_bell_teleportation() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let input = StateVector::random(1, &mut rng).unwrap();
        let sweep = run_all_outcomes(&edge(), &input).unwrap();
        assert_eq!(sweep.records.len(), 4);
        for r in &sweep.records {
            assert!((r.probability - 0.25).abs() < 1e-12);
            assert!(r.fidelity.unwrap() > 1.0 - FIDELITY_TOL);
        }
    }

    /// Frozen from an oracle sweep of the path graph: the outcome k = 0001
    /// requires c_z = (Γ_T⁻¹)ᵀ k_> = (1,1), not Γ_T⁻¹ k_> = (0,1).
    #[test]
    fn path_correction_orientation() {
        let g = path();
        let o = Outcome::new(bv("0001")).unwrap();
        let c = correction_vectors(&g, &o).unwrap();
        assert_eq!(c.c_z, bv("11"));
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let input = StateVector::random(2, &mut rng).unwrap();
        let r = teleport_oracle(&g, &input, &o).unwrap();
        assert!(r.fidelity.unwrap() > 1.0 - FIDELITY_TOL);
    }

    #[test]
    fn faithful_on_viable_graphs_with_sender_edges() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for g in [path(), coupled()] {
            for _ in 0..5 {
                let input = StateVector::random(2, &mut rng).unwrap();
                let sweep = run_all_outcomes(&g, &input).unwrap();
                assert!((sweep.prob_sum - 1.0).abs() < 1e-10);
                assert!(sweep.is_faithful(), "{g:?}: {:?}", sweep.min_fidelity);
                assert_eq!(sweep.graph_qubits_consumed, 4);
                assert_eq!(sweep.classical_bits, 4);
            }
        }
    }

    #[test]
    fn product_input_round_trips() {
        let input = StateVector::basis(2, 0).unwrap();
        assert!(run_all_outcomes(&coupled(), &input).unwrap().is_faithful());
    }

    #[test]
    fn skipping_correction_loses_fidelity() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let input = StateVector::random(2, &mut rng).unwrap();
        let sweep = run_all_outcomes_uncorrected(&path(), &input).unwrap();
        assert!(sweep.min_fidelity.unwrap() < 0.99);
        assert!((sweep.prob_sum - 1.0).abs() < 1e-10);
    }

    #[test]
    fn star_has_no_corrections() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let input = StateVector::random(2, &mut rng).unwrap();
        let o = Outcome::from_index(2, 3);
        assert_eq!(
            correction_vectors(&star(), &o),
            Err(TeleportError::NotViable { rank: 1, n: 2 })
        );
        assert!(matches!(
            teleport_oracle(&star(), &input, &o),
            Err(TeleportError::NotViable { .. })
        ));
        let sweep = run_all_outcomes(&star(), &input).unwrap();
        assert!(sweep.min_fidelity.is_none());
        assert!((sweep.prob_sum - 1.0).abs() < 1e-10);
    }

    #[test]
    fn mirror_gives_identical_corrections() {
        let g = coupled();
        let m = g.mirror_pair();
        for i in 0..16 {
            let o = Outcome::from_index(2, i);
            assert_eq!(
                correction_vectors(&g, &o).unwrap(),
                correction_vectors(&m, &o).unwrap()
            );
        }
    }

    #[test]
    fn sampled_run_is_faithful() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let input = StateVector::random(2, &mut rng).unwrap();
        for _ in 0..10 {
            let r = teleport_sampled(&coupled(), &input, &mut rng).unwrap();
            assert!(r.probability > 0.0);
            assert!(r.fidelity.unwrap() > 1.0 - FIDELITY_TOL);
        }
    }

    #[test]
    fn size_and_length_errors() {
        let big =
            PartitionedGraph::new(5, &(0..5).map(|i| (i, 5 + i)).collect::<Vec<_>>()).unwrap();
        let input = StateVector::basis(5, 0).unwrap();
        assert!(matches!(
            run_all_outcomes(&big, &input),
            Err(TeleportError::SizeCap { n: 5, .. })
        ));
        let wrong = StateVector::basis(1, 0).unwrap();
        assert!(matches!(
            run_all_outcomes(&path(), &wrong),
            Err(TeleportError::LengthMismatch { .. })
        ));
        assert!(Outcome::new(bv("101")).is_err());
        assert!(correction_vectors(&path(), &Outcome::from_index(1, 0)).is_err());
    }

    proptest! {
        #[test]
        fn corrections_are_linear(seed in any::<u64>(), x in 0u64..64, y in 0u64..64) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = PartitionedGraph::random(3, 0.5, &mut rng);
            prop_assume!(g.is_viable());
            let map = CorrectionMap::new(&g).unwrap();
            let (o1, o2) = (Outcome::from_index(3, x), Outcome::from_index(3, y));
            let o12 = Outcome::new(o1.k() ^ o2.k()).unwrap();
            prop_assert_eq!(
                map.correction(&o12).unwrap(),
                map.correction(&o1).unwrap().xor(&map.correction(&o2).unwrap())
            );
        }
    }
}

//! Deterministic dense coding and faithful teleportation with graph states.
//!
//! A graph on `2n` vertices split into senders and receivers is usable for
//! both protocols exactly when its sender-receiver adjacency block `Γ_T` is
//! invertible over GF(2). This crate decides that, runs both protocols
//! symbolically, and checks every symbolic answer against a brute-force
//! state-vector simulation.

pub mod dense_coding;
pub mod gf2;
pub mod graph;
pub mod oracle;
pub mod teleportation;

pub use dense_coding::{
    decode, encode_oracle, encode_symbolic, roundtrip_exhaustive, DenseCoder, DenseCodingError,
    GammaConvention, Message, RoundtripReport, Syndrome, RECEIVER_SYNDROME_CONVENTION,
};
pub use gf2::{BitMatrix, BitVector, Gf2Error};
pub use graph::{
    parse_graph, EdgePartition, GraphError, ParseError, PartitionedGraph, SubgraphMatrices,
};
pub use oracle::{fidelity, OracleError, StateVector};
pub use teleportation::{
    correction_vectors, run_all_outcomes, teleport_oracle, Correction, Outcome, OutcomeSweep,
    TeleportError, TeleportRecord,
};

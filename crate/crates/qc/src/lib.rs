//! Quantum-circuit simulation and transpilation toolkit.
//!
//! The crate builds controlled single-qubit operations out of basis gates via
//! the `e^{iθ} A·X·B·X·C` factorization, simulates the resulting circuits on
//! small registers, and verifies unitary equivalence. The flagship
//! construction is the controlled-√Z gate: `abc_decompose` on √Z yields the
//! T / T† factor pair, `synthesize_controlled` lays them out around two
//! CNOTs, and `circuit_unitary` confirms the result is `diag(1, 1, 1, i)`
//! exactly.
//!
//! Circuits can be exchanged as text in a strict OpenQASM 2.0 subset (see
//! [`qasm`]) and driven from the command line through the `qc` binary.
//!
//! Conventions used throughout: qubit 0 is the most significant basis-index
//! bit and the leftmost character of every bit string, so the paper-style
//! kets |q0 q1⟩ read off directly; global phase is preserved by the
//! simulator.

pub mod circuit;
pub mod cli;
pub mod decomposer;
pub mod error;
pub mod gates;
pub mod numerics;
pub mod qasm;
pub mod simulator;

pub use circuit::{Circuit, GateApplication, Instruction, Violation};
pub use decomposer::{
    abc_decompose, discretize, synthesize_controlled, verify_against, zyz_angles, AbcDecomposition,
    VerifyMode, ZyzAngles,
};
pub use error::{Error, Result};
pub use gates::{controlled, gate_matrix, gate_matrix_by_name, match_named_phase, GateKind};
pub use numerics::{equal_up_to_global_phase, ComplexMatrix, EquivalenceReport};
pub use qasm::{emit_qasm, parse_qasm, ParseError, ParseErrorKind};
pub use simulator::{
    apply_gate, bloch_vector, circuit_unitary, probabilities, run, sample, BlochVector,
    MeasurementCounts, StateVector,
};

//! Circuit intermediate representation: an ordered instruction list over a
//! declared register, with structural validation.

use thiserror::Error;

use crate::error::{Error as CrateError, Result};
use crate::gates::GateKind;

/// Register size ceiling for circuits and state vectors.
pub const MAX_QUBITS: usize = 20;

/// One gate instance: the gate, its real parameters (radians), and the
/// target qubit indices (control first for `cx`).
#[derive(Debug, Clone, PartialEq)]
pub struct GateApplication {
    pub kind: GateKind,
    pub params: Vec<f64>,
    pub qubits: Vec<usize>,
}

/// A circuit instruction. Measurement is kept separate from gates because it
/// has no unitary matrix; it records the classical bit receiving the outcome.
#[derive(Debug, Clone, PartialEq)]
pub enum Instruction {
    Gate(GateApplication),
    Measure { qubit: usize, clbit: usize },
}

/// Ordered gate sequence over `num_qubits` qubits and `num_clbits` classical
/// bits. Index 0 of `ops` is applied first.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    num_clbits: usize,
    ops: Vec<Instruction>,
}

/// A structural rule violated by a circuit, reported with the offending
/// instruction index.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("op {op_index}: qubit index {qubit} out of range for {num_qubits}-qubit register")]
    QubitOutOfRange {
        op_index: usize,
        qubit: usize,
        num_qubits: usize,
    },
    #[error("op {op_index}: duplicate qubit operand {qubit}")]
    DuplicateQubit { op_index: usize, qubit: usize },
    #[error("op {op_index}: gate \"{gate}\" takes {expected} qubit(s), got {actual}")]
    ArityMismatch {
        op_index: usize,
        gate: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("op {op_index}: gate \"{gate}\" takes {expected} parameter(s), got {actual}")]
    ParamCountMismatch {
        op_index: usize,
        gate: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("op {op_index}: parameter is not finite")]
    NonFiniteParam { op_index: usize },
    #[error("op {op_index}: classical bit {clbit} out of range for {num_clbits} classical bit(s)")]
    ClbitOutOfRange {
        op_index: usize,
        clbit: usize,
        num_clbits: usize,
    },
    #[error("op {op_index}: measurements are only allowed as trailing statements")]
    MeasurementNotTrailing { op_index: usize },
}

impl Circuit {
    /// Creates an empty circuit. The register must hold between 1 and
    /// [`MAX_QUBITS`] qubits.
    pub fn new(num_qubits: usize, num_clbits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(CrateError::InvalidArgument(
                "register must hold at least one qubit".into(),
            ));
        }
        if num_qubits > MAX_QUBITS {
            return Err(CrateError::Capacity {
                requested: num_qubits,
                limit: MAX_QUBITS,
            });
        }
        Ok(Self {
            num_qubits,
            num_clbits,
            ops: Vec::new(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_clbits(&self) -> usize {
        self.num_clbits
    }

    pub fn ops(&self) -> &[Instruction] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, op: Instruction) {
        self.ops.push(op);
    }

    /// Appends a gate instruction.
    pub fn push_gate(&mut self, kind: GateKind, params: &[f64], qubits: &[usize]) {
        self.ops.push(Instruction::Gate(GateApplication {
            kind,
            params: params.to_vec(),
            qubits: qubits.to_vec(),
        }));
    }

    pub fn push_measure(&mut self, qubit: usize, clbit: usize) {
        self.ops.push(Instruction::Measure { qubit, clbit });
    }

    /// The gate instructions in order, skipping measurements.
    pub fn gate_ops(&self) -> impl Iterator<Item = &GateApplication> {
        self.ops.iter().filter_map(|op| match op {
            Instruction::Gate(g) => Some(g),
            Instruction::Measure { .. } => None,
        })
    }

    pub fn has_measurements(&self) -> bool {
        self.ops
            .iter()
            .any(|op| matches!(op, Instruction::Measure { .. }))
    }

    /// Checks every instruction against the structural rules and returns the
    /// first violation, if any.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let mut seen_measure = false;
        for (op_index, op) in self.ops.iter().enumerate() {
            match op {
                Instruction::Gate(gate) => {
                    if seen_measure {
                        return Err(Violation::MeasurementNotTrailing { op_index });
                    }
                    let expected = gate.kind.arity();
                    if gate.qubits.len() != expected {
                        return Err(Violation::ArityMismatch {
                            op_index,
                            gate: gate.kind.name(),
                            expected,
                            actual: gate.qubits.len(),
                        });
                    }
                    let expected_params = gate.kind.param_count();
                    if gate.params.len() != expected_params {
                        return Err(Violation::ParamCountMismatch {
                            op_index,
                            gate: gate.kind.name(),
                            expected: expected_params,
                            actual: gate.params.len(),
                        });
                    }
                    if gate.params.iter().any(|p| !p.is_finite()) {
                        return Err(Violation::NonFiniteParam { op_index });
                    }
                    for (i, &qubit) in gate.qubits.iter().enumerate() {
                        if qubit >= self.num_qubits {
                            return Err(Violation::QubitOutOfRange {
                                op_index,
                                qubit,
                                num_qubits: self.num_qubits,
                            });
                        }
                        if gate.qubits[..i].contains(&qubit) {
                            return Err(Violation::DuplicateQubit { op_index, qubit });
                        }
                    }
                }
                Instruction::Measure { qubit, clbit } => {
                    seen_measure = true;
                    if *qubit >= self.num_qubits {
                        return Err(Violation::QubitOutOfRange {
                            op_index,
                            qubit: *qubit,
                            num_qubits: self.num_qubits,
                        });
                    }
                    if *clbit >= self.num_clbits {
                        return Err(Violation::ClbitOutOfRange {
                            op_index,
                            clbit: *clbit,
                            num_clbits: self.num_clbits,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Structural equality with a tolerance on gate parameters; everything
    /// else (gate kinds, qubit lists, measurement targets, order) must match
    /// exactly.
    pub fn structurally_eq(&self, other: &Self, param_tol: f64) -> bool {
        if self.num_qubits != other.num_qubits
            || self.num_clbits != other.num_clbits
            || self.ops.len() != other.ops.len()
        {
            return false;
        }
        self.ops.iter().zip(&other.ops).all(|(a, b)| match (a, b) {
            (Instruction::Gate(ga), Instruction::Gate(gb)) => {
                ga.kind == gb.kind
                    && ga.qubits == gb.qubits
                    && ga.params.len() == gb.params.len()
                    && ga
                        .params
                        .iter()
                        .zip(&gb.params)
                        .all(|(pa, pb)| (pa - pb).abs() <= param_tol)
            }
            (
                Instruction::Measure {
                    qubit: qa,
                    clbit: ca,
                },
                Instruction::Measure {
                    qubit: qb,
                    clbit: cb,
                },
            ) => qa == qb && ca == cb,
            _ => false,
        })
    }
}

//! Pure-state simulation engine.
//!
//! Gate application walks the amplitude array with stride/bit-mask index
//! arithmetic, O(2ⁿ) per gate, and never materializes a full operator.
//! [`circuit_unitary`] is the one place full matrices are built, via an
//! independent embedded-matrix construction, which makes it usable as an
//! oracle against the fast path.
//!
//! Conventions: qubit 0 is the most significant basis-index bit, and the
//! leftmost character of every bit string is qubit 0. Global phase is
//! preserved: applying the controlled-√Z construction to |11⟩ really does
//! yield i·|11⟩, not |11⟩.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::circuit::{Circuit, GateApplication, MAX_QUBITS};
use crate::error::{Error, Result};
use crate::gates::{gate_matrix, GateKind};
use crate::numerics::ComplexMatrix;

/// Unitary construction is capped well below the simulation limit; the
/// matrices grow as 4ⁿ.
pub const MAX_UNITARY_QUBITS: usize = 10;

/// Length-2ⁿ complex amplitude vector over `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

/// Quantum-sphere coordinates of one qubit's reduced state, plus the purity
/// of the reduced density operator (1 for pure, 0.5 for maximally mixed).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub purity: f64,
}

/// Tallied standard-basis measurement outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementCounts {
    pub shots: usize,
    pub counts: BTreeMap<String, usize>,
}

/// Bit position (from the least significant end) carrying qubit `q`.
#[inline]
fn bit_position(num_qubits: usize, qubit: usize) -> usize {
    num_qubits - 1 - qubit
}

/// Renders basis index `index` as a bit string with qubit 0 leftmost.
pub fn index_to_bits(index: usize, num_qubits: usize) -> String {
    (0..num_qubits)
        .map(|q| {
            if index >> bit_position(num_qubits, q) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// Parses a bit string (qubit 0 leftmost) into its basis index.
pub fn bits_to_index(bits: &str) -> Result<usize> {
    let mut index = 0;
    for ch in bits.chars() {
        index = index << 1
            | match ch {
                '0' => 0,
                '1' => 1,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "bit strings may only contain 0 and 1, found '{other}'"
                    )))
                }
            };
    }
    Ok(index)
}

impl StateVector {
    /// The computational basis state named by `bits` (qubit 0 leftmost).
    pub fn basis_state(bits: &str) -> Result<Self> {
        let num_qubits = bits.chars().count();
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::Capacity {
                requested: num_qubits,
                limit: MAX_QUBITS,
            });
        }
        let index = bits_to_index(bits)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    /// Builds a state from raw amplitudes, which must be finite and
    /// normalized within 1e-10.
    pub fn from_amplitudes(num_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::Capacity {
                requested: num_qubits,
                limit: MAX_QUBITS,
            });
        }
        if amps.len() != 1 << num_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1 << num_qubits,
                actual: amps.len(),
            });
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        let state = Self { num_qubits, amps };
        let norm = state.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "state vector must be normalized, got norm {norm}"
            )));
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest elementwise deviation from another state of the same size.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                actual: other.num_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

fn check_gate_operands(state: &StateVector, op: &GateApplication) -> Result<()> {
    if op.qubits.len() != op.kind.arity() {
        return Err(Error::InvalidArgument(format!(
            "gate \"{}\" takes {} qubit(s), got {}",
            op.kind.name(),
            op.kind.arity(),
            op.qubits.len()
        )));
    }
    for &qubit in &op.qubits {
        if qubit >= state.num_qubits {
            return Err(Error::InvalidArgument(format!(
                "qubit index {qubit} out of range for {}-qubit state",
                state.num_qubits
            )));
        }
    }
    if op.qubits.len() == 2 && op.qubits[0] == op.qubits[1] {
        return Err(Error::InvalidArgument(format!(
            "duplicate qubit operand {}",
            op.qubits[0]
        )));
    }
    Ok(())
}

/// Applies one gate to a state, returning the new state. The operator is
/// never materialized at register size: amplitudes are updated in stride
/// pairs (or quadruples for two-qubit gates).
pub fn apply_gate(state: &StateVector, op: &GateApplication) -> Result<StateVector> {
    check_gate_operands(state, op)?;
    if op.kind == GateKind::Id {
        if !op.params.is_empty() {
            return Err(Error::ParamCount {
                gate: "id",
                expected: 0,
                actual: op.params.len(),
            });
        }
        return Ok(state.clone());
    }
    let matrix = gate_matrix(op.kind, &op.params)?;
    let n = state.num_qubits;
    let mut amps = state.amps.clone();
    match op.kind.arity() {
        1 => {
            let mask = 1usize << bit_position(n, op.qubits[0]);
            let (m00, m01) = (matrix.get(0, 0), matrix.get(0, 1));
            let (m10, m11) = (matrix.get(1, 0), matrix.get(1, 1));
            for i in 0..amps.len() {
                if i & mask == 0 {
                    let j = i | mask;
                    let (a, b) = (amps[i], amps[j]);
                    amps[i] = m00 * a + m01 * b;
                    amps[j] = m10 * a + m11 * b;
                }
            }
        }
        2 => {
            // qubits[0] (the control for cx) is the most significant bit of
            // the 4x4 gate index.
            let hi = 1usize << bit_position(n, op.qubits[0]);
            let lo = 1usize << bit_position(n, op.qubits[1]);
            for i in 0..amps.len() {
                if i & (hi | lo) == 0 {
                    let idx = [i, i | lo, i | hi, i | hi | lo];
                    let old = idx.map(|j| amps[j]);
                    for (r, &j) in idx.iter().enumerate() {
                        amps[j] = (0..4).map(|c| matrix.get(r, c) * old[c]).sum();
                    }
                }
            }
        }
        arity => unreachable!("no registry gate has arity {arity}"),
    }
    Ok(StateVector {
        num_qubits: n,
        amps,
    })
}

/// Runs a circuit on an initial state, folding [`apply_gate`] over the gate
/// list in order. Trailing measurements are ignored.
pub fn run(circuit: &Circuit, initial: &StateVector) -> Result<StateVector> {
    circuit.validate()?;
    if circuit.num_qubits() != initial.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: circuit.num_qubits(),
            actual: initial.num_qubits(),
        });
    }
    let mut state = initial.clone();
    for op in circuit.gate_ops() {
        state = apply_gate(&state, op)?;
    }
    Ok(state)
}

/// Measurement distribution of a state: bit string → |amplitude|², with
/// entries below 1e-15 omitted.
pub fn probabilities(state: &StateVector) -> BTreeMap<String, f64> {
    state
        .amps
        .iter()
        .enumerate()
        .filter_map(|(index, amp)| {
            let p = amp.norm_sqr();
            (p >= 1e-15).then(|| (index_to_bits(index, state.num_qubits), p))
        })
        .collect()
}

/// Draws `shots` i.i.d. standard-basis outcomes from the state's
/// distribution. The sequence is fully determined by `seed`; identical
/// (state, shots, seed) triples produce identical counts within a build.
pub fn sample(state: &StateVector, shots: usize, seed: u64) -> MeasurementCounts {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    if shots == 0 {
        return MeasurementCounts { shots, counts };
    }
    // Cumulative distribution over the nonzero outcomes.
    let mut cumulative: Vec<(f64, usize)> = Vec::new();
    let mut total = 0.0;
    for (index, amp) in state.amps.iter().enumerate() {
        let p = amp.norm_sqr();
        if p > 0.0 {
            total += p;
            cumulative.push((total, index));
        }
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut tallies: BTreeMap<usize, usize> = BTreeMap::new();
    for _ in 0..shots {
        let r: f64 = rng.gen::<f64>() * total;
        let slot = cumulative.partition_point(|&(cum, _)| cum <= r);
        let (_, index) = cumulative[slot.min(cumulative.len() - 1)];
        *tallies.entry(index).or_insert(0) += 1;
    }
    for (index, count) in tallies {
        counts.insert(index_to_bits(index, state.num_qubits), count);
    }
    MeasurementCounts { shots, counts }
}

/// Embeds a gate matrix acting on `qubits` into the full 2ⁿ-dimensional
/// register space: entries are the gate's on the selected bit positions and
/// a Kronecker delta on all others.
fn embedded_matrix(gate: &ComplexMatrix, qubits: &[usize], num_qubits: usize) -> ComplexMatrix {
    let dim = 1usize << num_qubits;
    let k = qubits.len();
    let masks: Vec<usize> = qubits
        .iter()
        .map(|&q| 1usize << bit_position(num_qubits, q))
        .collect();
    let gate_mask: usize = masks.iter().fold(0, |acc, m| acc | m);
    let place = |bits: usize| -> usize {
        masks.iter().enumerate().fold(0, |acc, (i, &mask)| {
            if bits >> (k - 1 - i) & 1 == 1 {
                acc | mask
            } else {
                acc
            }
        })
    };
    let mut out = ComplexMatrix::zeros(dim);
    for rest in 0..dim {
        if rest & gate_mask != 0 {
            continue;
        }
        for gate_row in 0..1 << k {
            let row = rest | place(gate_row);
            for gate_col in 0..1 << k {
                out.set(row, rest | place(gate_col), gate.get(gate_row, gate_col));
            }
        }
    }
    out
}

/// Builds the full 2ⁿ×2ⁿ unitary of a measurement-free circuit as a product
/// of embedded gate matrices (last op leftmost).
pub fn circuit_unitary(circuit: &Circuit) -> Result<ComplexMatrix> {
    circuit.validate()?;
    if circuit.num_qubits() > MAX_UNITARY_QUBITS {
        return Err(Error::Capacity {
            requested: circuit.num_qubits(),
            limit: MAX_UNITARY_QUBITS,
        });
    }
    if circuit.has_measurements() {
        return Err(Error::InvalidArgument(
            "a circuit containing measurements has no unitary".into(),
        ));
    }
    let mut unitary = ComplexMatrix::identity(1 << circuit.num_qubits());
    for op in circuit.gate_ops() {
        let gate = gate_matrix(op.kind, &op.params)?;
        let embedded = embedded_matrix(&gate, &op.qubits, circuit.num_qubits());
        unitary = embedded.matmul(&unitary)?;
    }
    Ok(unitary)
}

/// Reduced single-qubit Bloch coordinates via partial trace over the other
/// qubits: x = 2·Re ρ₀₁, y = −2·Im ρ₀₁, z = ρ₀₀ − ρ₁₁, purity = tr ρ².
///
/// The sign convention on y sends (|0⟩ + i|1⟩)/√2 to (0, 1, 0).
pub fn bloch_vector(state: &StateVector, qubit: usize) -> Result<BlochVector> {
    if qubit >= state.num_qubits {
        return Err(Error::InvalidArgument(format!(
            "qubit index {qubit} out of range for {}-qubit state",
            state.num_qubits
        )));
    }
    let mask = 1usize << bit_position(state.num_qubits, qubit);
    let mut rho00 = 0.0;
    let mut rho11 = 0.0;
    let mut rho01 = Complex64::new(0.0, 0.0);
    for i in 0..state.amps.len() {
        if i & mask == 0 {
            let j = i | mask;
            rho00 += state.amps[i].norm_sqr();
            rho11 += state.amps[j].norm_sqr();
            rho01 += state.amps[i] * state.amps[j].conj();
        }
    }
    // The + 0.0 turns a signed −0.0 into plain 0.0 for display.
    Ok(BlochVector {
        x: 2.0 * rho01.re + 0.0,
        y: -2.0 * rho01.im + 0.0,
        z: rho00 - rho11 + 0.0,
        purity: rho00 * rho00 + rho11 * rho11 + 2.0 * rho01.norm_sqr(),
    })
}

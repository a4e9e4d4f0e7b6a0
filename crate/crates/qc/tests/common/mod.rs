//! Shared helpers for integration tests: seeded random circuits and
//! Haar-like random unitaries.

use num_complex::Complex64;
use qc::circuit::Circuit;
use qc::gates::GateKind;
use qc::numerics::ComplexMatrix;
use rand::rngs::StdRng;
use rand::Rng;

/// Random gate angle: mostly uniform, sometimes exactly on the π/4 grid.
pub fn random_angle(rng: &mut StdRng) -> f64 {
    if rng.gen_bool(0.25) {
        let k = rng.gen_range(-8i64..=8);
        (k as f64 * std::f64::consts::PI) / 4.0
    } else {
        rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)
    }
}

/// Seeded random circuit over the full gate registry.
pub fn random_circuit(
    rng: &mut StdRng,
    num_qubits: usize,
    depth: usize,
    num_clbits: usize,
) -> Circuit {
    let mut circuit = Circuit::new(num_qubits, num_clbits).unwrap();
    for _ in 0..depth {
        let kind = loop {
            let candidate = GateKind::ALL[rng.gen_range(0..GateKind::ALL.len())];
            if candidate.arity() <= num_qubits {
                break candidate;
            }
        };
        let params: Vec<f64> = (0..kind.param_count()).map(|_| random_angle(rng)).collect();
        let mut qubits = vec![rng.gen_range(0..num_qubits)];
        if kind.arity() == 2 {
            let mut other = rng.gen_range(0..num_qubits);
            while other == qubits[0] {
                other = rng.gen_range(0..num_qubits);
            }
            qubits.push(other);
        }
        circuit.push_gate(kind, &params, &qubits);
    }
    if num_clbits > 0 {
        for _ in 0..rng.gen_range(0..=num_clbits.min(2)) {
            circuit.push_measure(rng.gen_range(0..num_qubits), rng.gen_range(0..num_clbits));
        }
    }
    circuit
}

/// Haar-like random 2x2 unitary: normalized random complex columns, then
/// Gram-Schmidt orthonormalization. Covers all of U(2), global phase
/// included.
pub fn random_unitary2(rng: &mut StdRng) -> ComplexMatrix {
    let c64 = |rng: &mut StdRng| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    loop {
        let mut col0 = [c64(rng), c64(rng)];
        let col1_raw = [c64(rng), c64(rng)];
        let n0 = (col0[0].norm_sqr() + col0[1].norm_sqr()).sqrt();
        if n0 < 1e-3 {
            continue;
        }
        col0 = [col0[0] / n0, col0[1] / n0];
        let overlap = col0[0].conj() * col1_raw[0] + col0[1].conj() * col1_raw[1];
        let mut col1 = [
            col1_raw[0] - overlap * col0[0],
            col1_raw[1] - overlap * col0[1],
        ];
        let n1 = (col1[0].norm_sqr() + col1[1].norm_sqr()).sqrt();
        if n1 < 1e-3 {
            continue;
        }
        col1 = [col1[0] / n1, col1[1] / n1];
        return ComplexMatrix::from_rows(&[vec![col0[0], col1[0]], vec![col0[1], col1[1]]])
            .unwrap();
    }
}

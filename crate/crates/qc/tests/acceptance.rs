//! Acceptance suite: end-to-end checks of the controlled-√Z construction,
//! the randomized decomposition properties, and the simulator, parser and
//! sampling contracts. Each test prints its own pass line; run with
//! `cargo test --test acceptance -- --nocapture` to see them.

mod common;

use common::{random_circuit, random_unitary2};
use num_complex::Complex64;
use qc::circuit::Circuit;
use qc::decomposer::{abc_decompose, synthesize_controlled};
use qc::gates::{controlled, gate_matrix, GateKind};
use qc::numerics::ComplexMatrix;
use qc::qasm::{emit_qasm, parse_qasm};
use qc::simulator::{
    bloch_vector, circuit_unitary, index_to_bits, probabilities, run, sample, StateVector,
};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn csqrtz_reference() -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(4);
    m.set(3, 3, Complex64::new(0.0, 1.0));
    m
}

/// The toolkit's own synthesis of the controlled-√Z gate.
fn synthesized_csqrtz() -> Circuit {
    let sqrt_z = gate_matrix(GateKind::S, &[]).unwrap();
    let dec = abc_decompose(&sqrt_z).unwrap();
    synthesize_controlled(&dec, 0, 1, 2).unwrap()
}

#[test]
fn criterion_01_csqrtz_reconstruction() {
    let circuit = synthesized_csqrtz();
    let unitary = circuit_unitary(&circuit).unwrap();
    let deviation = unitary.max_abs_diff(&csqrtz_reference()).unwrap();
    assert!(
        deviation <= 1e-10,
        "synthesized controlled-√Z deviates from diag(1,1,1,i) by {deviation}"
    );
    println!("PASS criterion 1: controlled-√Z reconstruction exact within 1e-10 (deviation {deviation:.3e})");
}

#[test]
fn criterion_02_phase_shift_on_11() {
    let circuit = synthesized_csqrtz();
    let state = run(&circuit, &StateVector::basis_state("11").unwrap()).unwrap();
    let amp = state.amplitudes()[3];
    assert!(amp.re.abs() <= 1e-12, "re = {}", amp.re);
    assert!((amp.im - 1.0).abs() <= 1e-12, "im = {}", amp.im);
    let probs = probabilities(&state);
    assert_eq!(probs.len(), 1);
    assert!((probs["11"] - 1.0).abs() <= 1e-12);
    println!("PASS criterion 2: |11⟩ picks up amplitude i (π/2 phase shift), probabilities stay {{\"11\": 1}}");
}

#[test]
fn criterion_03_control_off_inputs_unchanged() {
    let circuit = synthesized_csqrtz();
    for bits in ["01", "00", "10"] {
        let init = StateVector::basis_state(bits).unwrap();
        let out = run(&circuit, &init).unwrap();
        let deviation = out.max_abs_diff(&init).unwrap();
        assert!(deviation <= 1e-12, "|{bits}⟩ changed by {deviation}");
    }
    println!("PASS criterion 3: |00⟩, |01⟩, |10⟩ pass through unchanged within 1e-12");
}

#[test]
fn criterion_04_randomized_abc_suite() {
    let mut rng = StdRng::seed_from_u64(0x5eed_abc0);
    let mut worst_product = 0.0f64;
    let mut worst_reconstruction = 0.0f64;
    let mut worst_synthesis = 0.0f64;
    for i in 0..1000 {
        let u = random_unitary2(&mut rng);
        let dec = abc_decompose(&u).unwrap();
        let product_dev = dec.factor_product_deviation();
        let reconstruction_dev = dec.reconstruction_deviation();
        assert!(
            product_dev <= 1e-9,
            "case {i}: A·B·C off identity by {product_dev}"
        );
        assert!(
            reconstruction_dev <= 1e-9,
            "case {i}: e^{{iθ}}AXBXC off source by {reconstruction_dev}"
        );

        let circuit = synthesize_controlled(&dec, 0, 1, 2).unwrap();
        let unitary = circuit_unitary(&circuit).unwrap();
        let synthesis_dev = unitary.max_abs_diff(&controlled(&u).unwrap()).unwrap();
        assert!(
            synthesis_dev <= 1e-9,
            "case {i}: synthesized circuit off controlled(u) by {synthesis_dev}"
        );
        worst_product = worst_product.max(product_dev);
        worst_reconstruction = worst_reconstruction.max(reconstruction_dev);
        worst_synthesis = worst_synthesis.max(synthesis_dev);
    }
    println!(
        "PASS criterion 4: 1000 random unitaries; worst deviations: ABC−I {worst_product:.3e}, \
         reconstruction {worst_reconstruction:.3e}, synthesis {worst_synthesis:.3e}"
    );
}

#[test]
fn criterion_05_gate_identity_suite() {
    let g = |kind: GateKind| gate_matrix(kind, &[]).unwrap();
    let i2 = ComplexMatrix::identity(2);
    let checks: Vec<(&str, ComplexMatrix, ComplexMatrix)> = vec![
        (
            "HXH = Z",
            g(GateKind::H)
                .matmul(&g(GateKind::X))
                .unwrap()
                .matmul(&g(GateKind::H))
                .unwrap(),
            g(GateKind::Z),
        ),
        (
            "SXS† = Y",
            g(GateKind::S)
                .matmul(&g(GateKind::X))
                .unwrap()
                .matmul(&g(GateKind::S).dagger())
                .unwrap(),
            g(GateKind::Y),
        ),
        (
            "HH = I",
            g(GateKind::H).matmul(&g(GateKind::H)).unwrap(),
            i2.clone(),
        ),
        (
            "SS† = I",
            g(GateKind::S).matmul(&g(GateKind::S).dagger()).unwrap(),
            i2,
        ),
        (
            "T·T = S",
            g(GateKind::T).matmul(&g(GateKind::T)).unwrap(),
            g(GateKind::S),
        ),
        (
            "S·S = Z",
            g(GateKind::S).matmul(&g(GateKind::S)).unwrap(),
            g(GateKind::Z),
        ),
    ];
    for (label, got, want) in checks {
        let deviation = got.max_abs_diff(&want).unwrap();
        assert!(deviation <= 1e-12, "{label} off by {deviation}");
    }
    println!("PASS criterion 5: HXH=Z, SXS†=Y, HH=I, SS†=I, T·T=S, S·S=Z all within 1e-12");
}

#[test]
fn criterion_06_unitarity_and_norms() {
    for kind in GateKind::ALL {
        let params: &[f64] = if kind.param_count() == 1 {
            &[0.7312]
        } else {
            &[]
        };
        let m = gate_matrix(kind, params).unwrap();
        assert!(m.is_unitary(1e-10), "registry gate {} failed", kind.name());
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    for i in 0..60 {
        let n = 1 + (i % 5);
        let circuit = random_circuit(&mut rng, n, 20, 0);
        let unitary = circuit_unitary(&circuit).unwrap();
        assert!(
            unitary.is_unitary(1e-10),
            "circuit {i} unitary check failed"
        );

        let init = StateVector::basis_state(&"0".repeat(n)).unwrap();
        let state = run(&circuit, &init).unwrap();
        assert!(
            (state.norm() - 1.0).abs() <= 1e-10,
            "circuit {i} norm drifted"
        );
    }
    println!("PASS criterion 6: registry gates and 60 random circuit unitaries pass 1e-10 unitarity; norms hold");
}

#[test]
fn criterion_07_oracle_equivalence() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let n = 1 + (i % 5);
        let circuit = random_circuit(&mut rng, n, 20, 0);
        let unitary = circuit_unitary(&circuit).unwrap();
        for col in 0..1usize << n {
            let init = StateVector::basis_state(&index_to_bits(col, n)).unwrap();
            let state = run(&circuit, &init).unwrap();
            for row in 0..1usize << n {
                let deviation = (state.amplitudes()[row] - unitary.get(row, col)).norm();
                assert!(
                    deviation <= 1e-9,
                    "circuit {i}: state entry ({row},{col}) off by {deviation}"
                );
                worst = worst.max(deviation);
            }
        }
    }
    println!("PASS criterion 7: 200 random circuits; fast path matches unitary columns (worst {worst:.3e})");
}

#[test]
fn criterion_08_parser_round_trip() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    for i in 0..500 {
        let n = 1 + (i % 6);
        let circuit = random_circuit(&mut rng, n, 15, if i % 3 == 0 { n } else { 0 });
        let text = emit_qasm(&circuit);
        let parsed = parse_qasm(&text)
            .unwrap_or_else(|err| panic!("round-trip parse failed on case {i}: {err}\n{text}"));
        assert!(
            parsed.structurally_eq(&circuit, 1e-15),
            "case {i} not structurally equal:\n{text}"
        );
    }

    let malformed: [&str; 20] = [
        "",
        "OPENQASM 2.0",
        "OPENQASM 3.0;\nqreg q[1];\n",
        "OPENQASM 2.0;\n",
        "OPENQASM 2.0;\ncreg c[2];\n",
        "OPENQASM 2.0;\nqreg q[0];\n",
        "OPENQASM 2.0;\nqreg q[21];\n",
        "OPENQASM 2.0;\nqreg q[2];\nqreg q[2];\n",
        "OPENQASM 2.0;\nqreg q[2];\ncz q[0];\n",
        "OPENQASM 2.0;\nqreg q[2];\nx q[5];\n",
        "OPENQASM 2.0;\nqreg q[2];\nx q[0]\n",
        "OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[0];\n",
        "OPENQASM 2.0;\nqreg q[2];\ncx q[0];\n",
        "OPENQASM 2.0;\nqreg q[2];\nx q[0],q[1];\n",
        "OPENQASM 2.0;\nqreg q[1];\np q[0];\n",
        "OPENQASM 2.0;\nqreg q[1];\np(pi q[0];\n",
        "OPENQASM 2.0;\nqreg q[1];\nmeasure q[0] -> c[0];\n",
        "OPENQASM 2.0;\nqreg q[1];\ncreg c[1];\nmeasure q[0] -> c[0];\nx q[0];\n",
        "OPENQASM 2.0;\nqreg q[1];\nx q[0]; @\n",
        "OPENQASM 2.0;\nqreg q[1];\nx q[0]; qreg q[2];\n",
    ];
    for (i, program) in malformed.iter().enumerate() {
        let err = parse_qasm(program)
            .map(|_| ())
            .expect_err(&format!("malformed program {i} was accepted"));
        assert!(
            err.line >= 1 && err.col >= 1,
            "program {i} lost its position"
        );
    }
    println!("PASS criterion 8: 500 circuits round-trip; 20 malformed programs all rejected with positions");
}

#[test]
fn criterion_09_bloch_poles() {
    let zero = StateVector::basis_state("0").unwrap();
    let b = bloch_vector(&zero, 0).unwrap();
    assert!(b.x.abs() <= 1e-12 && b.y.abs() <= 1e-12 && (b.z - 1.0).abs() <= 1e-12);

    let one = StateVector::basis_state("1").unwrap();
    let b = bloch_vector(&one, 0).unwrap();
    assert!(b.x.abs() <= 1e-12 && b.y.abs() <= 1e-12 && (b.z + 1.0).abs() <= 1e-12);

    let circuit = synthesized_csqrtz();
    let state = run(&circuit, &StateVector::basis_state("11").unwrap()).unwrap();
    let b = bloch_vector(&state, 1).unwrap();
    assert!(
        b.x.abs() <= 1e-12 && b.y.abs() <= 1e-12 && (b.z + 1.0).abs() <= 1e-12,
        "q1 after controlled-√Z moved off the south pole: ({}, {}, {})",
        b.x,
        b.y,
        b.z
    );
    println!("PASS criterion 9: |0⟩→(0,0,1), |1⟩→(0,0,−1); q1 stays at the south pole after controlled-√Z");
}

#[test]
fn criterion_10_sampling_sanity() {
    let circuit = synthesized_csqrtz();
    let state = run(&circuit, &StateVector::basis_state("11").unwrap()).unwrap();
    let counts = sample(&state, 10_000, 2026);
    assert_eq!(counts.counts.len(), 1);
    assert_eq!(counts.counts["11"], 10_000);

    let zero = StateVector::basis_state("0").unwrap();
    let mut h = Circuit::new(1, 0).unwrap();
    h.push_gate(GateKind::H, &[], &[0]);
    let plus = run(&h, &zero).unwrap();
    let counts = sample(&plus, 10_000, 2026);
    for outcome in ["0", "1"] {
        let count = *counts.counts.get(outcome).unwrap_or(&0) as f64;
        assert!(
            (count - 5000.0).abs() <= 200.0,
            "outcome {outcome} count {count} outside 4σ of 5000"
        );
    }
    println!("PASS criterion 10: 10000 shots give all-|11⟩ on the phase state and a 4σ-balanced H|0⟩ split");
}

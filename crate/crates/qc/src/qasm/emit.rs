//! Canonical text emission. Deterministic: structurally equal circuits
//! produce byte-identical programs.

use std::fmt::Write;

use crate::circuit::{Circuit, Instruction};

/// Renders a circuit in the canonical subset format: fixed two-line header,
/// register declarations, one statement per line. Angles that sit on a
/// multiple of π/4 (within 1e-12) are written as symbolic `pi` fractions;
/// everything else is printed with 17 significant digits.
pub fn emit_qasm(circuit: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    writeln!(out, "qreg q[{}];", circuit.num_qubits()).unwrap();
    if circuit.num_clbits() > 0 {
        writeln!(out, "creg c[{}];", circuit.num_clbits()).unwrap();
    }
    for op in circuit.ops() {
        match op {
            Instruction::Gate(gate) => {
                out.push_str(gate.kind.name());
                if let Some(&angle) = gate.params.first() {
                    write!(out, "({})", format_angle(angle)).unwrap();
                }
                out.push(' ');
                for (i, qubit) in gate.qubits.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write!(out, "q[{qubit}]").unwrap();
                }
                out.push_str(";\n");
            }
            Instruction::Measure { qubit, clbit } => {
                writeln!(out, "measure q[{qubit}] -> c[{clbit}];").unwrap();
            }
        }
    }
    out
}

fn format_angle(angle: f64) -> String {
    if let Some(text) = pi_fraction(angle) {
        text
    } else {
        format!("{angle:.16e}")
    }
}

/// Symbolic rendering for angles within 1e-12 of k·π/4. The candidate value
/// is evaluated with the same operation order the parser uses, so emitted
/// fractions parse back to the identical double.
fn pi_fraction(angle: f64) -> Option<String> {
    let steps = angle / std::f64::consts::FRAC_PI_4;
    if !steps.is_finite() || steps.abs() > 64.0 {
        return None;
    }
    let k = steps.round() as i64;
    if (angle - eval_quarter_multiple(k)).abs() > 1e-12 {
        return None;
    }
    if k == 0 {
        return Some("0".into());
    }
    let magnitude = k.unsigned_abs();
    let g = gcd(magnitude, 4);
    let (num, den) = (magnitude / g, 4 / g);
    let body = match (num, den) {
        (1, 1) => "pi".to_string(),
        (n, 1) => format!("{n}*pi"),
        (1, d) => format!("pi/{d}"),
        (n, d) => format!("{n}*pi/{d}"),
    };
    Some(if k < 0 { format!("-{body}") } else { body })
}

/// Evaluates k·π/4 exactly as the parser evaluates the rendered fraction.
fn eval_quarter_multiple(k: i64) -> f64 {
    let magnitude = k.unsigned_abs();
    let g = gcd(magnitude, 4);
    let (num, den) = (magnitude / g, 4 / g);
    let value = match (num, den) {
        (0, _) => 0.0,
        (1, 1) => std::f64::consts::PI,
        (n, 1) => n as f64 * std::f64::consts::PI,
        (1, d) => std::f64::consts::PI / d as f64,
        (n, d) => (n as f64 * std::f64::consts::PI) / d as f64,
    };
    if k < 0 {
        -value
    } else {
        value
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::GateKind;
    use crate::qasm::parse_qasm;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn phase_gate_uses_symbolic_fraction() {
        let mut c = Circuit::new(1, 0).unwrap();
        c.push_gate(GateKind::P, &[FRAC_PI_4], &[0]);
        let text = emit_qasm(&c);
        assert!(text.contains("p(pi/4) q[0];\n"), "got:\n{text}");
    }

    #[test]
    fn empty_circuit_is_header_plus_qreg() {
        let c = Circuit::new(1, 0).unwrap();
        assert_eq!(
            emit_qasm(&c),
            "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\n"
        );
    }

    #[test]
    fn pi_fraction_rendering() {
        assert_eq!(pi_fraction(0.0).as_deref(), Some("0"));
        assert_eq!(pi_fraction(FRAC_PI_4).as_deref(), Some("pi/4"));
        assert_eq!(pi_fraction(-FRAC_PI_2).as_deref(), Some("-pi/2"));
        assert_eq!(pi_fraction(PI).as_deref(), Some("pi"));
        assert_eq!(pi_fraction(2.0 * PI).as_deref(), Some("2*pi"));
        assert_eq!(pi_fraction((3.0 * PI) / 4.0).as_deref(), Some("3*pi/4"));
        assert_eq!(pi_fraction((3.0 * PI) / 2.0).as_deref(), Some("3*pi/2"));
        assert_eq!(pi_fraction(0.3), None);
        assert_eq!(pi_fraction(FRAC_PI_4 + 1e-9), None);
    }

    #[test]
    fn generic_angles_round_trip_bitwise() {
        let angle = 0.537_218_349_112_764_3;
        let mut c = Circuit::new(1, 0).unwrap();
        c.push_gate(GateKind::Rz, &[angle], &[0]);
        let parsed = parse_qasm(&emit_qasm(&c)).unwrap();
        assert_eq!(parsed.gate_ops().next().unwrap().params[0], angle);
    }

    #[test]
    fn measurements_and_cregs_are_emitted() {
        let mut c = Circuit::new(2, 2).unwrap();
        c.push_gate(GateKind::Cx, &[], &[0, 1]);
        c.push_measure(0, 0);
        c.push_measure(1, 1);
        let text = emit_qasm(&c);
        assert!(text.contains("creg c[2];\n"));
        assert!(text.contains("cx q[0],q[1];\n"));
        assert!(text.contains("measure q[0] -> c[0];\n"));
        let parsed = parse_qasm(&text).unwrap();
        assert!(parsed.structurally_eq(&c, 0.0));
    }

    #[test]
    fn emission_is_deterministic() {
        let mut a = Circuit::new(2, 0).unwrap();
        a.push_gate(GateKind::H, &[], &[0]);
        a.push_gate(GateKind::P, &[1.25], &[1]);
        let b = a.clone();
        assert_eq!(emit_qasm(&a), emit_qasm(&b));
    }
}

#[cfg(test)]
mod proptests {
    use super::eval_quarter_multiple;
    use crate::circuit::Circuit;
    use crate::gates::GateKind;
    use crate::qasm::{emit_qasm, parse_qasm};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn arb_angle() -> impl Strategy<Value = f64> {
        prop_oneof![
            4 => -PI..PI,
            1 => (-16i64..=16).prop_map(eval_quarter_multiple),
        ]
    }

    fn arb_gate(n: usize) -> impl Strategy<Value = (GateKind, Vec<f64>, Vec<usize>)> {
        let kinds: Vec<GateKind> = GateKind::ALL
            .into_iter()
            .filter(|k| k.arity() <= n)
            .collect();
        proptest::sample::select(kinds).prop_flat_map(move |kind| {
            let params = if kind.param_count() == 1 {
                arb_angle().prop_map(|a| vec![a]).boxed()
            } else {
                Just(Vec::new()).boxed()
            };
            let qubits = if kind.arity() == 2 {
                (0..n, 0..n - 1)
                    .prop_map(|(a, b)| vec![a, if b >= a { b + 1 } else { b }])
                    .boxed()
            } else {
                (0..n).prop_map(|q| vec![q]).boxed()
            };
            (Just(kind), params, qubits)
        })
    }

    fn arb_circuit() -> impl Strategy<Value = Circuit> {
        (1usize..=5, 0usize..=3).prop_flat_map(|(n, m)| {
            let gates = proptest::collection::vec(arb_gate(n), 0..20);
            let measures = if m == 0 {
                Just(Vec::new()).boxed()
            } else {
                proptest::collection::vec((0..n, 0..m), 0..4).boxed()
            };
            (gates, measures).prop_map(move |(gate_list, measure_list)| {
                let mut circuit = Circuit::new(n, m).unwrap();
                for (kind, params, qubits) in gate_list {
                    circuit.push_gate(kind, &params, &qubits);
                }
                for (qubit, clbit) in measure_list {
                    circuit.push_measure(qubit, clbit);
                }
                circuit
            })
        })
    }

    proptest! {
        #[test]
        fn parse_of_emit_is_structural_identity(circuit in arb_circuit()) {
            prop_assert_eq!(circuit.validate(), Ok(()));
            let text = emit_qasm(&circuit);
            let parsed = parse_qasm(&text).unwrap();
            prop_assert!(parsed.structurally_eq(&circuit, 1e-15), "text:\n{}", text);
        }

        #[test]
        fn emit_is_deterministic_per_structure(circuit in arb_circuit()) {
            prop_assert_eq!(emit_qasm(&circuit), emit_qasm(&circuit.clone()));
        }
    }
}

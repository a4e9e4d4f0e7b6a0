//! Controlled-gate synthesis: factor any single-qubit unitary `U` into
//! `A`, `B`, `C` and a phase `θ` with
//!
//! ```text
//! e^{iθ} · A · X · B · X · C = U        and        A · B · C = I
//! ```
//!
//! then lay the factors out around two CNOTs as a circuit over basis gates.
//! With the control qubit in |0⟩ the target line sees `A·B·C = I`; with the
//! control in |1⟩ the CNOTs conjugate `B` by `X` and the line applies `U` up
//! to `e^{iθ}`, which a phase gate on the control restores. The synthesized
//! circuit therefore reproduces the controlled operation including its
//! global phase, not merely up to one.
//!
//! Diagonal inputs take a fast path: `U = e^{iμ}·p(λ)` factors into the
//! half-angle phase pair `A = p(λ/2)`, `B = p(−λ/2)`, `C = I`. For √Z this
//! is exactly the T / T† recipe. Everything else goes through a ZYZ Euler
//! decomposition.

use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gates::{gate_matrix, match_named_phase, GateKind};
use crate::numerics::{
    equal_up_to_global_phase, normalize_angle, ComplexMatrix, EquivalenceReport,
};
use crate::simulator::circuit_unitary;

/// Euler angles of `U = e^{iα}·Rz(β)·Ry(γ)·Rz(δ)`, with `γ ∈ [0, π]` and
/// the other angles normalized into `(−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZyzAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl ZyzAngles {
    /// Rebuilds `e^{iα}·Rz(β)·Ry(γ)·Rz(δ)`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let rz_beta = gate_matrix(GateKind::Rz, &[self.beta]).unwrap();
        let ry_gamma = gate_matrix(GateKind::Ry, &[self.gamma]).unwrap();
        let rz_delta = gate_matrix(GateKind::Rz, &[self.delta]).unwrap();
        rz_beta
            .matmul(&ry_gamma)
            .unwrap()
            .matmul(&rz_delta)
            .unwrap()
            .scale(Complex64::from_polar(1.0, self.alpha))
    }
}

/// The `A·X·B·X·C` factorization of a single-qubit unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct AbcDecomposition {
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
    pub c: ComplexMatrix,
    pub theta: f64,
    pub source: ComplexMatrix,
}

impl AbcDecomposition {
    /// Deviation of `A·B·C` from the identity.
    pub fn factor_product_deviation(&self) -> f64 {
        self.a
            .matmul(&self.b)
            .unwrap()
            .matmul(&self.c)
            .unwrap()
            .max_abs_diff(&ComplexMatrix::identity(2))
            .unwrap()
    }

    /// Deviation of `e^{iθ}·A·X·B·X·C` from the source unitary.
    pub fn reconstruction_deviation(&self) -> f64 {
        let x = gate_matrix(GateKind::X, &[]).unwrap();
        self.a
            .matmul(&x)
            .unwrap()
            .matmul(&self.b)
            .unwrap()
            .matmul(&x)
            .unwrap()
            .matmul(&self.c)
            .unwrap()
            .scale(Complex64::from_polar(1.0, self.theta))
            .max_abs_diff(&self.source)
            .unwrap()
    }
}

fn ensure_single_qubit_unitary(u: &ComplexMatrix) -> Result<()> {
    if u.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: u.dim(),
        });
    }
    if !u.is_unitary(1e-10) {
        let deviation = u
            .matmul(&u.dagger())
            .unwrap()
            .max_abs_diff(&ComplexMatrix::identity(2))
            .unwrap();
        return Err(Error::NotUnitary {
            max_deviation: deviation,
        });
    }
    Ok(())
}

/// Angular window around γ ∈ {0, π} inside which only one z-angle
/// combination is determined.
const ZYZ_DEGENERACY: f64 = 1e-9;

/// Extracts ZYZ Euler angles from a 2×2 unitary.
///
/// `γ = 2·atan2(|u10|, |u00|)` keeps the extraction well-conditioned near
/// the rotation poles; the z-angles come from arguments of entry products so
/// no half-angle ambiguity arises. In the degenerate bands where only
/// `β + δ` (γ ≈ 0) or `β − δ` (γ ≈ π) is determined, δ is pinned to 0.
pub fn zyz_angles(u: &ComplexMatrix) -> Result<ZyzAngles> {
    ensure_single_qubit_unitary(u)?;
    let u00 = u.get(0, 0);
    let u01 = u.get(0, 1);
    let u10 = u.get(1, 0);
    let u11 = u.get(1, 1);

    let gamma = 2.0 * u10.norm().atan2(u00.norm());
    // β and δ are normalized before α is derived from them: arg() can land
    // on −π exactly, and flipping it to +π afterwards would silently negate
    // Rz and lose a global −1.
    let (alpha, beta, delta) = if gamma < ZYZ_DEGENERACY {
        let beta = normalize_angle((u11 * u00.conj()).arg());
        (u00.arg() + beta / 2.0, beta, 0.0)
    } else if (gamma - std::f64::consts::PI).abs() < ZYZ_DEGENERACY {
        let beta = normalize_angle((u10 * (-u01).conj()).arg());
        (u10.arg() - beta / 2.0, beta, 0.0)
    } else {
        let beta = normalize_angle((u10 * u00.conj()).arg());
        let delta = normalize_angle((u11 * u10.conj()).arg());
        (u00.arg() + (beta + delta) / 2.0, beta, delta)
    };
    Ok(ZyzAngles {
        alpha: normalize_angle(alpha),
        beta,
        gamma,
        delta,
    })
}

/// Fast path for diagonal unitaries: `U = e^{iμ}·p(λ)` gives the half-angle
/// phase pair with `C` skipped entirely.
fn abc_from_phase(u: &ComplexMatrix) -> AbcDecomposition {
    let mu = u.get(0, 0).arg();
    let lambda = normalize_angle(u.get(1, 1).arg() - mu);
    AbcDecomposition {
        a: gate_matrix(GateKind::P, &[lambda / 2.0]).unwrap(),
        b: gate_matrix(GateKind::P, &[-lambda / 2.0]).unwrap(),
        c: ComplexMatrix::identity(2),
        theta: normalize_angle(lambda / 2.0 + mu),
        source: u.clone(),
    }
}

/// General path: `A = Rz(β)·Ry(γ/2)`, `B = Ry(−γ/2)·Rz(−(δ+β)/2)`,
/// `C = Rz((δ−β)/2)`, `θ = α`. Conjugating `B` by `X` flips both rotation
/// signs, so `A·X·B·X·C` collapses to `Rz(β)·Ry(γ)·Rz(δ)`.
fn abc_from_zyz(u: &ComplexMatrix) -> Result<AbcDecomposition> {
    let angles = zyz_angles(u)?;
    let rz = |t: f64| gate_matrix(GateKind::Rz, &[t]).unwrap();
    let ry = |t: f64| gate_matrix(GateKind::Ry, &[t]).unwrap();
    let a = rz(angles.beta).matmul(&ry(angles.gamma / 2.0))?;
    let b = ry(-angles.gamma / 2.0).matmul(&rz(-(angles.delta + angles.beta) / 2.0))?;
    let c = rz((angles.delta - angles.beta) / 2.0);
    Ok(AbcDecomposition {
        a,
        b,
        c,
        theta: angles.alpha,
        source: u.clone(),
    })
}

/// Factors a single-qubit unitary into `A`, `B`, `C`, `θ` satisfying both
/// defining equations.
pub fn abc_decompose(u: &ComplexMatrix) -> Result<AbcDecomposition> {
    ensure_single_qubit_unitary(u)?;
    let dec = if u.is_diagonal(1e-12) {
        abc_from_phase(u)
    } else {
        abc_from_zyz(u)?
    };
    debug_assert!(dec.factor_product_deviation() <= 1e-10);
    debug_assert!(dec.reconstruction_deviation() <= 1e-10);
    Ok(dec)
}

/// Matrices within this tolerance of the identity are not emitted at all.
const OMIT_TOL: f64 = 1e-12;

/// Registry gates eligible for exact-match emission.
const NAMED_SINGLE_QUBIT: [GateKind; 8] = [
    GateKind::X,
    GateKind::Y,
    GateKind::Z,
    GateKind::H,
    GateKind::S,
    GateKind::Sdg,
    GateKind::T,
    GateKind::Tdg,
];

/// `p(λ)` as a named gate, but only when the substitution is matrix-exact
/// within 1e-12 (the name table itself tolerates 1e-9 in angle, which is too
/// loose to guarantee unitary-preserving rewrites).
fn named_phase_gate(lambda: f64) -> Option<GateKind> {
    let kind = match_named_phase(lambda)?;
    let table_angle = match kind {
        GateKind::Id => 0.0,
        GateKind::T => std::f64::consts::FRAC_PI_4,
        GateKind::Tdg => -std::f64::consts::FRAC_PI_4,
        GateKind::S => std::f64::consts::FRAC_PI_2,
        GateKind::Sdg => -std::f64::consts::FRAC_PI_2,
        GateKind::Z => std::f64::consts::PI,
        _ => unreachable!("phase table only names diagonal gates"),
    };
    let deviation =
        (Complex64::from_polar(1.0, lambda) - Complex64::from_polar(1.0, table_angle)).norm();
    (deviation <= OMIT_TOL).then_some(kind)
}

/// Emission for a pure phase `diag(1, e^{iλ})`: a named gate when one
/// matches exactly, otherwise `p(λ)`. Nothing at all for λ ≈ 0.
fn phase_ops(lambda: f64) -> Vec<(GateKind, Vec<f64>)> {
    let lambda = normalize_angle(lambda);
    if lambda.abs() <= OMIT_TOL {
        return Vec::new();
    }
    match named_phase_gate(lambda) {
        Some(GateKind::Id) | None => vec![(GateKind::P, vec![lambda])],
        Some(kind) => vec![(kind, Vec::new())],
    }
}

/// Emission for a diagonal unitary `diag(d0, d1)`. A leading global phase
/// `e^{iμ}` on the target line cannot be dropped (it is observable inside a
/// controlled construction), so it is realized exactly as `rz(−2μ)·p(2μ+λ)`.
fn diagonal_ops(d0: Complex64, d1: Complex64) -> Vec<(GateKind, Vec<f64>)> {
    let mu = d0.arg();
    let lambda = normalize_angle(d1.arg() - mu);
    if mu.abs() <= OMIT_TOL {
        return phase_ops(lambda);
    }
    let mut ops = vec![(GateKind::Rz, vec![-2.0 * mu])];
    ops.extend(phase_ops(2.0 * mu + lambda));
    ops
}

/// Gate sequence, in application order, whose product reproduces `m`
/// exactly, global phase included.
fn factor_ops(m: &ComplexMatrix) -> Result<Vec<(GateKind, Vec<f64>)>> {
    if m.max_abs_diff(&ComplexMatrix::identity(2))? <= OMIT_TOL {
        return Ok(Vec::new());
    }
    for kind in NAMED_SINGLE_QUBIT {
        if m.max_abs_diff(&gate_matrix(kind, &[])?)? <= OMIT_TOL {
            return Ok(vec![(kind, Vec::new())]);
        }
    }
    if m.is_diagonal(OMIT_TOL) {
        return Ok(diagonal_ops(m.get(0, 0), m.get(1, 1)));
    }
    // General case: re-extract ZYZ angles. The trailing z-rotation and the
    // extracted global phase merge into one diagonal, emitted exactly.
    let angles = zyz_angles(m)?;
    let mut ops = Vec::new();
    if angles.delta.abs() > OMIT_TOL {
        ops.push((GateKind::Rz, vec![angles.delta]));
    }
    if angles.gamma.abs() > OMIT_TOL {
        ops.push((GateKind::Ry, vec![angles.gamma]));
    }
    let d0 = Complex64::from_polar(1.0, angles.alpha - angles.beta / 2.0);
    let d1 = Complex64::from_polar(1.0, angles.alpha + angles.beta / 2.0);
    ops.extend(diagonal_ops(d0, d1));
    Ok(ops)
}

/// Lays a decomposition out as a controlled-gate circuit over `n` qubits:
/// `C` on the target, CNOT, `B` on the target, CNOT, `A` on the target, and
/// finally `p(θ)` on the control line.
///
/// Identity factors are omitted; when `B` vanishes the CNOT pair cancels and
/// is omitted with it. A θ within 1e-12 of zero suppresses the control-line
/// phase gate. Factors are emitted as named gates where an exact registry
/// match exists, otherwise as rz/ry/p parameter gates.
pub fn synthesize_controlled(
    dec: &AbcDecomposition,
    control: usize,
    target: usize,
    n: usize,
) -> Result<Circuit> {
    if control == target {
        return Err(Error::InvalidArgument(
            "control and target qubits must differ".into(),
        ));
    }
    if control >= n || target >= n {
        return Err(Error::InvalidArgument(format!(
            "control {control} / target {target} out of range for {n} qubits"
        )));
    }
    let mut circuit = Circuit::new(n, 0)?;
    for (kind, params) in factor_ops(&dec.c)? {
        circuit.push_gate(kind, &params, &[target]);
    }
    let b_ops = factor_ops(&dec.b)?;
    if !b_ops.is_empty() {
        circuit.push_gate(GateKind::Cx, &[], &[control, target]);
        for (kind, params) in b_ops {
            circuit.push_gate(kind, &params, &[target]);
        }
        circuit.push_gate(GateKind::Cx, &[], &[control, target]);
    }
    for (kind, params) in factor_ops(&dec.a)? {
        circuit.push_gate(kind, &params, &[target]);
    }
    let theta = normalize_angle(dec.theta);
    if theta.abs() > OMIT_TOL {
        for (kind, params) in phase_ops(theta) {
            circuit.push_gate(kind, &params, &[control]);
        }
    }
    Ok(circuit)
}

/// Rewrites every `p(λ)` whose angle sits on the named-phase table into the
/// named gate; all other instructions pass through unchanged. Rewrites are
/// gated on matrix exactness, so the circuit unitary moves by at most 1e-12.
pub fn discretize(circuit: &Circuit) -> Circuit {
    let mut out = Circuit::new(circuit.num_qubits(), circuit.num_clbits())
        .expect("source circuit carries valid register sizes");
    for op in circuit.ops() {
        match op {
            crate::circuit::Instruction::Gate(gate) if gate.kind == GateKind::P => {
                match named_phase_gate(gate.params[0]) {
                    Some(kind) => out.push_gate(kind, &[], &gate.qubits),
                    None => out.push(op.clone()),
                }
            }
            other => out.push(other.clone()),
        }
    }
    out
}

/// How [`verify_against`] compares the circuit unitary with the reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Elementwise comparison, global phase included.
    Exact,
    /// Comparison modulo a global phase.
    UpToGlobalPhase,
}

/// Builds the circuit's unitary and compares it against a reference matrix.
pub fn verify_against(
    circuit: &Circuit,
    reference: &ComplexMatrix,
    tol: f64,
    mode: VerifyMode,
) -> Result<EquivalenceReport> {
    if circuit.num_qubits() > crate::simulator::MAX_UNITARY_QUBITS {
        return Err(Error::Capacity {
            requested: circuit.num_qubits(),
            limit: crate::simulator::MAX_UNITARY_QUBITS,
        });
    }
    let dim = 1usize << circuit.num_qubits();
    if reference.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: reference.dim(),
        });
    }
    let unitary = circuit_unitary(circuit)?;
    match mode {
        VerifyMode::Exact => {
            let max_abs_deviation = unitary.max_abs_diff(reference)?;
            Ok(EquivalenceReport {
                equivalent: max_abs_deviation <= tol,
                phase: 0.0,
                max_abs_deviation,
            })
        }
        VerifyMode::UpToGlobalPhase => equal_up_to_global_phase(&unitary, reference, tol),
    }
}

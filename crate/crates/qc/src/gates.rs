//! The registry of named gates, their exact matrices, and the controlled-gate
//! matrix constructor.
//!
//! Conventions fixed repo-wide: the first (control) qubit is the most
//! significant basis-index bit, so the controlled-√Z matrix reads
//! `diag(1, 1, 1, i)`. The phase gate `p(λ) = diag(1, e^{iλ})` and the
//! symmetric rotation `rz(θ) = diag(e^{−iθ/2}, e^{iθ/2})` are kept as two
//! distinct primitives: inside controlled constructions their global-phase
//! difference becomes an observable relative phase.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{normalize_angle, ComplexMatrix};

/// Every gate the circuit language and simulator understand.
///
/// Measurement is a circuit instruction, not a gate kind: it has no unitary
/// matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    Id,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Cx,
    P,
    Rz,
    Ry,
    Rx,
}

impl GateKind {
    pub const ALL: [GateKind; 14] = [
        GateKind::Id,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Cx,
        GateKind::P,
        GateKind::Rz,
        GateKind::Ry,
        GateKind::Rx,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Id => "id",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Cx => "cx",
            GateKind::P => "p",
            GateKind::Rz => "rz",
            GateKind::Ry => "ry",
            GateKind::Rx => "rx",
        }
    }

    /// Number of qubits the gate acts on.
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cx => 2,
            _ => 1,
        }
    }

    /// Number of real parameters (angles in radians) the gate takes.
    pub fn param_count(self) -> usize {
        match self {
            GateKind::P | GateKind::Rz | GateKind::Ry | GateKind::Rx => 1,
            _ => 0,
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|kind| kind.name() == name)
            .ok_or_else(|| Error::UnknownGate { name: name.into() })
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_name(s)
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn mat2(entries: [Complex64; 4]) -> ComplexMatrix {
    ComplexMatrix::new(2, entries.to_vec()).expect("finite 2x2 entries")
}

/// Returns the exact matrix for a registry gate.
pub fn gate_matrix(kind: GateKind, params: &[f64]) -> Result<ComplexMatrix> {
    let expected = kind.param_count();
    if params.len() != expected {
        return Err(Error::ParamCount {
            gate: kind.name(),
            expected,
            actual: params.len(),
        });
    }
    let zero = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    Ok(match kind {
        GateKind::Id => ComplexMatrix::identity(2),
        GateKind::X => mat2([zero, one, one, zero]),
        GateKind::Y => mat2([zero, c(0.0, -1.0), c(0.0, 1.0), zero]),
        GateKind::Z => mat2([one, zero, zero, c(-1.0, 0.0)]),
        GateKind::H => {
            let r = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            mat2([r, r, r, -r])
        }
        GateKind::S => mat2([one, zero, zero, c(0.0, 1.0)]),
        GateKind::Sdg => mat2([one, zero, zero, c(0.0, -1.0)]),
        GateKind::T => mat2([
            one,
            zero,
            zero,
            Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
        ]),
        GateKind::Tdg => mat2([
            one,
            zero,
            zero,
            Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4),
        ]),
        GateKind::Cx => {
            // Control is the most significant bit: identity block over
            // |00⟩, |01⟩ and an X block over |10⟩, |11⟩.
            let mut m = ComplexMatrix::identity(4);
            m.set(2, 2, zero);
            m.set(3, 3, zero);
            m.set(2, 3, one);
            m.set(3, 2, one);
            m
        }
        GateKind::P => mat2([one, zero, zero, Complex64::from_polar(1.0, params[0])]),
        GateKind::Rz => {
            let half = params[0] / 2.0;
            mat2([
                Complex64::from_polar(1.0, -half),
                zero,
                zero,
                Complex64::from_polar(1.0, half),
            ])
        }
        GateKind::Ry => {
            let half = params[0] / 2.0;
            mat2([
                c(half.cos(), 0.0),
                c(-half.sin(), 0.0),
                c(half.sin(), 0.0),
                c(half.cos(), 0.0),
            ])
        }
        GateKind::Rx => {
            let half = params[0] / 2.0;
            mat2([
                c(half.cos(), 0.0),
                c(0.0, -half.sin()),
                c(0.0, -half.sin()),
                c(half.cos(), 0.0),
            ])
        }
    })
}

/// Convenience lookup taking the gate's registry name.
pub fn gate_matrix_by_name(name: &str, params: &[f64]) -> Result<ComplexMatrix> {
    gate_matrix(GateKind::from_name(name)?, params)
}

/// Builds the two-qubit controlled version of a single-qubit unitary.
///
/// The result is identity on the control-0 subspace and `u` on the control-1
/// subspace, with the control qubit as the most significant index bit.
pub fn controlled(u: &ComplexMatrix) -> Result<ComplexMatrix> {
    if u.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: u.dim(),
        });
    }
    if !u.is_unitary(1e-10) {
        let dev = u
            .matmul(&u.dagger())
            .unwrap()
            .max_abs_diff(&ComplexMatrix::identity(2))
            .unwrap();
        return Err(Error::NotUnitary { max_deviation: dev });
    }
    let mut m = ComplexMatrix::identity(4);
    for r in 0..2 {
        for col in 0..2 {
            m.set(2 + r, 2 + col, u.get(r, col));
        }
    }
    Ok(m)
}

/// Named phase angles: `p(λ)` matrices that coincide with a registry gate.
const PHASE_TABLE: [(f64, GateKind); 6] = [
    (0.0, GateKind::Id),
    (std::f64::consts::FRAC_PI_4, GateKind::T),
    (-std::f64::consts::FRAC_PI_4, GateKind::Tdg),
    (std::f64::consts::FRAC_PI_2, GateKind::S),
    (-std::f64::consts::FRAC_PI_2, GateKind::Sdg),
    (std::f64::consts::PI, GateKind::Z),
];

/// Looks up the registry gate whose `p(λ)` matrix matches the given angle,
/// after normalizing it into `(−π, π]`. Angle tolerance is 1e-9.
pub fn match_named_phase(lambda: f64) -> Option<GateKind> {
    let normalized = normalize_angle(lambda);
    PHASE_TABLE
        .iter()
        .find(|(angle, _)| {
            (normalized - angle).abs() <= 1e-9
                // −π and π name the same phase gate.
                || (angle - std::f64::consts::PI).abs() < 1e-15
                    && (normalized + std::f64::consts::PI).abs() <= 1e-9
        })
        .map(|&(_, kind)| kind)
}

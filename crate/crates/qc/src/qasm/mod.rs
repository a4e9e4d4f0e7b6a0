//! Textual circuit interchange: a strict OpenQASM 2.0 subset.
//!
//! The grammar:
//!
//! ```text
//! program   := "OPENQASM 2.0;" include? decl+ stmt*
//! include   := "include \"qelib1.inc\";"            (ignored)
//! decl      := "qreg q[" INT "];" | "creg c[" INT "];"
//! stmt      := GATE args ";" | "measure q[" INT "] -> c[" INT "];"
//!            | "barrier" ... ";"                    (ignored)
//! GATE      := id|x|y|z|h|s|sdg|t|tdg|cx|p(expr)|rz(expr)|ry(expr)|rx(expr)
//! args      := "q[" INT "]" ("," "q[" INT "]")?
//! ```
//!
//! Comments run from `//` to end of line; whitespace between tokens is
//! insignificant. One quantum register named `q` and one classical register
//! named `c` per program. Angle expressions take real literals, `pi`, unary
//! minus and `+ - * /` with conventional precedence, evaluated to double
//! precision at parse time. Measurements are accepted only as trailing
//! statements.

mod emit;
mod lex;
mod parse;

pub use emit::emit_qasm;
pub use parse::parse_qasm;

use thiserror::Error;

/// A parse failure with its 1-based source position.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character '{0}'")]
    Lexical(char),
    #[error("unterminated string literal")]
    UnterminatedString,
    #[error("malformed number literal \"{0}\"")]
    InvalidNumber(String),
    #[error("expected {expected}, found {found}")]
    UnexpectedToken { expected: String, found: String },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEof { expected: String },
    #[error("unsupported version \"{found}\" (only 2.0 is accepted)")]
    InvalidVersion { found: String },
    #[error("unknown gate \"{name}\"")]
    UnknownGate { name: String },
    #[error("register {register} has size {size}, index {index} is out of range")]
    IndexOutOfRange {
        register: char,
        index: usize,
        size: usize,
    },
    #[error("register \"{name}\" used before declaration")]
    UndeclaredRegister { name: String },
    #[error("register \"{name}\" declared twice")]
    DuplicateDeclaration { name: String },
    #[error("declarations must precede statements")]
    DeclarationAfterStatement,
    #[error("register \"{name}\" must hold at least one bit")]
    EmptyRegister { name: String },
    #[error("register size {size} exceeds the limit of {limit} qubits")]
    RegisterCapacity { size: usize, limit: usize },
    #[error("gate \"{gate}\" takes {expected} qubit(s), got {actual}")]
    WrongArity {
        gate: String,
        expected: usize,
        actual: usize,
    },
    #[error("duplicate qubit operand q[{qubit}]")]
    DuplicateQubit { qubit: usize },
    #[error("measurements are only allowed as trailing statements")]
    MeasurementNotTrailing,
    #[error("program never declares the quantum register q")]
    MissingQreg,
    #[error("angle expression does not evaluate to a finite number")]
    NonFiniteAngle,
}

impl ParseError {
    pub(crate) fn new(line: usize, col: usize, kind: ParseErrorKind) -> Self {
        Self { line, col, kind }
    }
}

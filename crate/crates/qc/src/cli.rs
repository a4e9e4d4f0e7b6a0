//! Command-line front end: simulate / decompose / verify / bloch workflows
//! over files and standard streams.
//!
//! Stdout carries exactly one JSON document (or canonical circuit text for
//! `decompose`); diagnostics go to stderr. Exit codes are stable contracts:
//! 0 success or equivalent, 1 verified-not-equivalent, 2 input error,
//! 3 capacity error.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::circuit::Circuit;
use crate::decomposer::{
    abc_decompose, discretize, synthesize_controlled, verify_against, VerifyMode,
};
use crate::error::Error;
use crate::gates::{controlled, gate_matrix, gate_matrix_by_name, GateKind};
use crate::numerics::ComplexMatrix;
use crate::qasm::{emit_qasm, parse_qasm, ParseErrorKind};
use crate::simulator::{bloch_vector, probabilities, run, sample, StateVector};

#[derive(Parser)]
#[command(
    name = "qc",
    version,
    about = "Quantum circuit simulation and transpilation toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a circuit on a basis state and print amplitudes, probabilities
    /// and optional sampled counts as JSON
    Simulate {
        /// Circuit file in the OpenQASM subset ("-" reads stdin)
        file: String,
        /// Initial basis state, one character per qubit, qubit 0 leftmost
        #[arg(long)]
        init: String,
        /// Number of measurement shots to sample (0 disables sampling)
        #[arg(long, default_value_t = 0)]
        shots: usize,
        /// Seed for the shot sampler
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include per-qubit quantum-sphere coordinates in the report
        #[arg(long)]
        bloch: bool,
    },
    /// Decompose a single-qubit unitary into a controlled-gate circuit over
    /// basis gates and print it as canonical circuit text
    #[command(group(ArgGroup::new("input").required(true).args(["name", "matrix"])))]
    Decompose {
        /// Built-in gate name (id, x, y, z, h, s, sdg, t, tdg)
        name: Option<String>,
        /// File holding a 2x2 matrix, entries as "re+imj" pairs
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Control qubit index
        #[arg(long, default_value_t = 0)]
        control: usize,
        /// Target qubit index
        #[arg(long, default_value_t = 1)]
        target: usize,
        /// Register size of the emitted circuit
        #[arg(long, default_value_t = 2)]
        qubits: usize,
    },
    /// Compare a circuit's unitary against a reference matrix
    #[command(group(ArgGroup::new("reference").required(true).args(["reference_name", "matrix"])))]
    Verify {
        /// Circuit file ("-" or omitted reads stdin)
        #[arg(default_value = "-")]
        file: String,
        /// Built-in reference name (id, x, y, z, h, s, sdg, t, tdg, cx,
        /// csqrtz, cz, identity2, identity4)
        #[arg(long = "ref", value_name = "NAME")]
        reference_name: Option<String>,
        /// File holding the reference matrix
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Compare elementwise, global phase included (the default)
        #[arg(long, conflicts_with = "phase")]
        exact: bool,
        /// Compare up to a global phase
        #[arg(long)]
        phase: bool,
        /// Comparison tolerance
        #[arg(long, default_value_t = crate::numerics::DEFAULT_TOL)]
        tol: f64,
    },
    /// Print per-qubit quantum-sphere coordinates after running a circuit
    Bloch {
        /// Circuit file ("-" reads stdin)
        file: String,
        /// Initial basis state, one character per qubit, qubit 0 leftmost
        #[arg(long)]
        init: String,
    },
}

#[derive(Serialize)]
struct RunReport {
    num_qubits: usize,
    amplitudes: Vec<[f64; 2]>,
    probabilities: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    counts: Option<CountsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bloch: Option<Vec<QubitBloch>>,
}

#[derive(Serialize)]
struct CountsReport {
    shots: usize,
    counts: BTreeMap<String, usize>,
}

#[derive(Serialize)]
struct QubitBloch {
    qubit: usize,
    x: f64,
    y: f64,
    z: f64,
    purity: f64,
}

#[derive(Serialize)]
struct VerifyReport {
    equivalent: bool,
    phase: f64,
    max_abs_deviation: f64,
}

#[derive(Debug)]
struct Failure {
    message: String,
    code: u8,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::Capacity { .. } => 3,
            Error::Parse(parse)
                if matches!(parse.kind, ParseErrorKind::RegisterCapacity { .. }) =>
            {
                3
            }
            _ => 2,
        };
        Failure {
            message: err.to_string(),
            code,
        }
    }
}

/// Parses arguments from the environment, executes the selected command and
/// returns the process exit code.
pub fn run_cli() -> u8 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

fn dispatch(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Simulate {
            file,
            init,
            shots,
            seed,
            bloch,
        } => cmd_simulate(&file, &init, shots, seed, bloch),
        Command::Decompose {
            name,
            matrix,
            control,
            target,
            qubits,
        } => cmd_decompose(name.as_deref(), matrix.as_deref(), control, target, qubits),
        Command::Verify {
            file,
            reference_name,
            matrix,
            exact: _,
            phase,
            tol,
        } => {
            let mode = if phase {
                VerifyMode::UpToGlobalPhase
            } else {
                VerifyMode::Exact
            };
            cmd_verify(
                &file,
                reference_name.as_deref(),
                matrix.as_deref(),
                mode,
                tol,
            )
        }
        Command::Bloch { file, init } => cmd_bloch(&file, &init),
    }
}

fn load_circuit(file: &str) -> Result<Circuit, Failure> {
    let source = if file == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|err| Failure {
                message: format!("reading stdin: {err}"),
                code: 2,
            })?;
        text
    } else {
        std::fs::read_to_string(file).map_err(|err| Failure {
            message: format!("reading {file}: {err}"),
            code: 2,
        })?
    };
    parse_qasm(&source).map_err(|err| Failure::from(Error::from(err)))
}

fn initial_state(circuit: &Circuit, bits: &str) -> Result<StateVector, Failure> {
    if bits.chars().count() != circuit.num_qubits() {
        return Err(Failure {
            message: format!(
                "initial state \"{bits}\" has {} bit(s), circuit declares {} qubit(s)",
                bits.chars().count(),
                circuit.num_qubits()
            ),
            code: 2,
        });
    }
    StateVector::basis_state(bits).map_err(Failure::from)
}

fn cmd_simulate(
    file: &str,
    init: &str,
    shots: usize,
    seed: u64,
    with_bloch: bool,
) -> Result<u8, Failure> {
    let circuit = load_circuit(file)?;
    let initial = initial_state(&circuit, init)?;
    let state = run(&circuit, &initial)?;
    let counts = (shots > 0).then(|| {
        let tallied = sample(&state, shots, seed);
        CountsReport {
            shots: tallied.shots,
            counts: tallied.counts,
        }
    });
    let bloch = if with_bloch {
        Some(bloch_report(&state)?)
    } else {
        None
    };
    let report = RunReport {
        num_qubits: state.num_qubits(),
        amplitudes: state.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
        probabilities: probabilities(&state),
        counts,
        bloch,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(0)
}

fn cmd_decompose(
    name: Option<&str>,
    matrix: Option<&Path>,
    control: usize,
    target: usize,
    qubits: usize,
) -> Result<u8, Failure> {
    let unitary = match (name, matrix) {
        (Some(name), None) => builtin_matrix(name)?,
        (None, Some(path)) => read_matrix_file(path)?,
        _ => unreachable!("clap enforces exactly one input"),
    };
    if unitary.dim() != 2 {
        return Err(Failure {
            message: format!(
                "decompose needs a single-qubit (2x2) unitary, got dimension {}",
                unitary.dim()
            ),
            code: 2,
        });
    }
    let dec = abc_decompose(&unitary)?;
    let circuit = discretize(&synthesize_controlled(&dec, control, target, qubits)?);
    print!("{}", emit_qasm(&circuit));
    Ok(0)
}

fn cmd_verify(
    file: &str,
    reference_name: Option<&str>,
    matrix: Option<&Path>,
    mode: VerifyMode,
    tol: f64,
) -> Result<u8, Failure> {
    let circuit = load_circuit(file)?;
    let reference = match (reference_name, matrix) {
        (Some(name), None) => builtin_matrix(name)?,
        (None, Some(path)) => read_matrix_file(path)?,
        _ => unreachable!("clap enforces exactly one reference"),
    };
    if tol <= 0.0 {
        return Err(Failure {
            message: "tolerance must be positive".into(),
            code: 2,
        });
    }
    let report = verify_against(&circuit, &reference, tol, mode)?;
    let rendered = VerifyReport {
        equivalent: report.equivalent,
        phase: report.phase,
        max_abs_deviation: report.max_abs_deviation,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&rendered).expect("report serializes")
    );
    Ok(if report.equivalent { 0 } else { 1 })
}

fn cmd_bloch(file: &str, init: &str) -> Result<u8, Failure> {
    let circuit = load_circuit(file)?;
    let initial = initial_state(&circuit, init)?;
    let state = run(&circuit, &initial)?;
    let report = bloch_report(&state)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(0)
}

fn bloch_report(state: &StateVector) -> Result<Vec<QubitBloch>, Failure> {
    (0..state.num_qubits())
        .map(|qubit| {
            let b = bloch_vector(state, qubit)?;
            Ok(QubitBloch {
                qubit,
                x: b.x,
                y: b.y,
                z: b.z,
                purity: b.purity,
            })
        })
        .collect()
}

/// Built-in reference matrices for `verify` and `decompose`.
fn builtin_matrix(name: &str) -> Result<ComplexMatrix, Failure> {
    let matrix = match name {
        "id" | "x" | "y" | "z" | "h" | "s" | "sdg" | "t" | "tdg" | "cx" => {
            gate_matrix_by_name(name, &[])?
        }
        "csqrtz" => controlled(&gate_matrix(GateKind::S, &[])?)?,
        "cz" => controlled(&gate_matrix(GateKind::Z, &[])?)?,
        "identity2" => ComplexMatrix::identity(2),
        "identity4" => ComplexMatrix::identity(4),
        other => {
            return Err(Failure {
                message: format!("unknown reference name \"{other}\""),
                code: 2,
            })
        }
    };
    Ok(matrix)
}

fn read_matrix_file(path: &Path) -> Result<ComplexMatrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|err| Failure {
        message: format!("reading {}: {err}", path.display()),
        code: 2,
    })?;
    parse_matrix_text(&text).map_err(|message| Failure { message, code: 2 })
}

/// Plain-text matrix format: one row per line, entries as "re+imj" pairs
/// separated by whitespace. Blank lines are skipped.
fn parse_matrix_text(text: &str) -> Result<ComplexMatrix, String> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for entry in line.split_whitespace() {
            let value = parse_complex_entry(entry)
                .ok_or_else(|| format!("line {}: malformed entry \"{entry}\"", line_no + 1))?;
            row.push(value);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err("matrix file holds no rows".into());
    }
    let dim = rows.len();
    if rows.iter().any(|row| row.len() != dim) {
        return Err(format!(
            "matrix must be square ({dim} rows, ragged columns)"
        ));
    }
    ComplexMatrix::from_rows(&rows).map_err(|err| err.to_string())
}

/// Parses "re+imj" / "re-imj" with optional exponents on either part.
fn parse_complex_entry(entry: &str) -> Option<Complex64> {
    let body = entry.strip_suffix('j')?;
    let bytes = body.as_bytes();
    // Split at the last sign that is neither leading nor part of an exponent.
    let split = (1..bytes.len()).rev().find(|&i| {
        (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E')
    })?;
    let re: f64 = body[..split].parse().ok()?;
    let im: f64 = body[split..].parse().ok()?;
    (re.is_finite() && im.is_finite()).then(|| Complex64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_entry_forms() {
        assert_eq!(parse_complex_entry("1+0j"), Some(Complex64::new(1.0, 0.0)));
        assert_eq!(parse_complex_entry("0-1j"), Some(Complex64::new(0.0, -1.0)));
        assert_eq!(
            parse_complex_entry("-0.5+0.25j"),
            Some(Complex64::new(-0.5, 0.25))
        );
        assert_eq!(
            parse_complex_entry("1e-3-2E-4j"),
            Some(Complex64::new(1e-3, -2e-4))
        );
        assert_eq!(
            parse_complex_entry("-1e-5-2e-6j"),
            Some(Complex64::new(-1e-5, -2e-6))
        );
        assert_eq!(parse_complex_entry("1"), None);
        assert_eq!(parse_complex_entry("j"), None);
        assert_eq!(parse_complex_entry("1+j"), None);
        assert_eq!(parse_complex_entry("nan+0j"), None);
    }

    #[test]
    fn matrix_text_parses_square_layout() {
        let m = parse_matrix_text("1+0j 0+0j\n0+0j 0+1j\n").unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.get(1, 1), Complex64::new(0.0, 1.0));

        assert!(parse_matrix_text("1+0j 0+0j\n0+0j\n").is_err());
        assert!(parse_matrix_text("").is_err());
        assert!(parse_matrix_text("what\n").is_err());
    }

    #[test]
    fn builtin_names_cover_the_reference_set() {
        for name in [
            "id",
            "x",
            "y",
            "z",
            "h",
            "s",
            "sdg",
            "t",
            "tdg",
            "cx",
            "csqrtz",
            "cz",
            "identity2",
            "identity4",
        ] {
            assert!(builtin_matrix(name).is_ok(), "{name}");
        }
        assert!(builtin_matrix("p").is_err());
        assert!(builtin_matrix("bogus").is_err());

        let csqrtz = builtin_matrix("csqrtz").unwrap();
        assert_eq!(csqrtz.get(3, 3), Complex64::new(0.0, 1.0));
        let cz = builtin_matrix("cz").unwrap();
        assert_eq!(cz.get(3, 3), Complex64::new(-1.0, 0.0));
    }
}

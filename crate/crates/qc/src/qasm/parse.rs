//! Recursive-descent parser producing a validated [`Circuit`].

use super::lex::{tokenize, Token, TokenKind};
use super::{ParseError, ParseErrorKind};
use crate::circuit::{Circuit, MAX_QUBITS};
use crate::gates::GateKind;

/// Parses a program in the OpenQASM subset. The returned circuit satisfies
/// every structural invariant; all failures carry a line and column.
pub fn parse_qasm(source: &str) -> Result<Circuit, ParseError> {
    let tokens = tokenize(source)?;
    Parser::new(source, tokens).run()
}

struct PendingGate {
    kind: GateKind,
    params: Vec<f64>,
    qubits: Vec<usize>,
}

enum PendingOp {
    Gate(PendingGate),
    Measure { qubit: usize, clbit: usize },
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    eof_line: usize,
    eof_col: usize,
    qreg: Option<usize>,
    creg: Option<usize>,
    seen_stmt: bool,
    seen_measure: bool,
    ops: Vec<PendingOp>,
}

impl Parser {
    fn new(source: &str, tokens: Vec<Token>) -> Self {
        let eof_line = source.lines().count().max(1);
        let eof_col = source.lines().last().map_or(1, |l| l.chars().count() + 1);
        Self {
            tokens,
            pos: 0,
            eof_line,
            eof_col,
            qreg: None,
            creg: None,
            seen_stmt: false,
            seen_measure: false,
            ops: Vec::new(),
        }
    }

    fn run(mut self) -> Result<Circuit, ParseError> {
        self.expect_identifier("OPENQASM")?;
        self.expect_version()?;
        self.expect(&TokenKind::Semicolon)?;

        if self.peek_identifier() == Some("include") {
            self.advance();
            self.expect_include_path()?;
            self.expect(&TokenKind::Semicolon)?;
        }

        while self.pos < self.tokens.len() {
            self.statement()?;
        }

        let num_qubits = self.qreg.ok_or_else(|| {
            ParseError::new(self.eof_line, self.eof_col, ParseErrorKind::MissingQreg)
        })?;
        let mut circuit = Circuit::new(num_qubits, self.creg.unwrap_or(0))
            .expect("register bounds checked at declaration");
        for op in self.ops {
            match op {
                PendingOp::Gate(g) => circuit.push_gate(g.kind, &g.params, &g.qubits),
                PendingOp::Measure { qubit, clbit } => circuit.push_measure(qubit, clbit),
            }
        }
        debug_assert_eq!(circuit.validate(), Ok(()));
        Ok(circuit)
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        let token = self.peek().cloned().expect("caller checked non-empty");
        let (line, col) = (token.line, token.col);
        let name = match &token.kind {
            TokenKind::Identifier(name) => name.clone(),
            other => {
                return Err(ParseError::new(
                    line,
                    col,
                    ParseErrorKind::UnexpectedToken {
                        expected: "a declaration or statement".into(),
                        found: other.describe(),
                    },
                ));
            }
        };
        match name.as_str() {
            "qreg" => self.declaration(line, col, 'q'),
            "creg" => self.declaration(line, col, 'c'),
            "measure" => self.measure_stmt(line, col),
            "barrier" => self.barrier_stmt(),
            _ => self.gate_stmt(&name, line, col),
        }
    }

    fn declaration(&mut self, line: usize, col: usize, register: char) -> Result<(), ParseError> {
        self.advance(); // qreg / creg
        if self.seen_stmt {
            return Err(ParseError::new(
                line,
                col,
                ParseErrorKind::DeclarationAfterStatement,
            ));
        }
        let name = register.to_string();
        let already = match register {
            'q' => self.qreg.is_some(),
            _ => self.creg.is_some(),
        };
        if already {
            return Err(ParseError::new(
                line,
                col,
                ParseErrorKind::DuplicateDeclaration { name },
            ));
        }
        self.expect_identifier(&name)?;
        self.expect(&TokenKind::LBracket)?;
        let (size, size_line, size_col) = self.expect_integer()?;
        self.expect(&TokenKind::RBracket)?;
        self.expect(&TokenKind::Semicolon)?;

        if register == 'q' {
            if size == 0 {
                return Err(ParseError::new(
                    size_line,
                    size_col,
                    ParseErrorKind::EmptyRegister { name },
                ));
            }
            if size > MAX_QUBITS {
                return Err(ParseError::new(
                    size_line,
                    size_col,
                    ParseErrorKind::RegisterCapacity {
                        size,
                        limit: MAX_QUBITS,
                    },
                ));
            }
            self.qreg = Some(size);
        } else {
            self.creg = Some(size);
        }
        Ok(())
    }

    fn barrier_stmt(&mut self) -> Result<(), ParseError> {
        self.advance(); // barrier
        self.seen_stmt = true;
        // Ignored: swallow everything up to the terminating semicolon.
        loop {
            match self.peek() {
                Some(t) if t.kind == TokenKind::Semicolon => {
                    self.advance();
                    return Ok(());
                }
                Some(_) => self.advance(),
                None => {
                    return Err(self.eof_error("\";\""));
                }
            }
        }
    }

    fn measure_stmt(&mut self, line: usize, col: usize) -> Result<(), ParseError> {
        self.advance(); // measure
        self.seen_stmt = true;
        self.seen_measure = true;
        let qubit = self.register_index('q', line, col)?;
        self.expect(&TokenKind::Arrow)?;
        let clbit = self.register_index('c', line, col)?;
        self.expect(&TokenKind::Semicolon)?;
        self.ops.push(PendingOp::Measure { qubit, clbit });
        Ok(())
    }

    fn gate_stmt(&mut self, name: &str, line: usize, col: usize) -> Result<(), ParseError> {
        let kind = GateKind::from_name(name).map_err(|_| {
            ParseError::new(line, col, ParseErrorKind::UnknownGate { name: name.into() })
        })?;
        self.advance(); // gate name
        if self.seen_measure {
            return Err(ParseError::new(
                line,
                col,
                ParseErrorKind::MeasurementNotTrailing,
            ));
        }
        self.seen_stmt = true;

        let mut params = Vec::new();
        if kind.param_count() == 1 {
            self.expect(&TokenKind::LParen)?;
            params.push(self.expression()?);
            self.expect(&TokenKind::RParen)?;
        }

        let mut qubits = vec![self.register_index('q', line, col)?];
        while self.peek().map(|t| &t.kind) == Some(&TokenKind::Comma) {
            self.advance();
            qubits.push(self.register_index('q', line, col)?);
        }
        self.expect(&TokenKind::Semicolon)?;

        if qubits.len() != kind.arity() {
            return Err(ParseError::new(
                line,
                col,
                ParseErrorKind::WrongArity {
                    gate: name.into(),
                    expected: kind.arity(),
                    actual: qubits.len(),
                },
            ));
        }
        if kind.arity() == 2 && qubits[0] == qubits[1] {
            return Err(ParseError::new(
                line,
                col,
                ParseErrorKind::DuplicateQubit { qubit: qubits[0] },
            ));
        }
        self.ops.push(PendingOp::Gate(PendingGate {
            kind,
            params,
            qubits,
        }));
        Ok(())
    }

    /// Parses `q[INT]` or `c[INT]`, checking declaration and range.
    fn register_index(
        &mut self,
        register: char,
        stmt_line: usize,
        stmt_col: usize,
    ) -> Result<usize, ParseError> {
        let name = register.to_string();
        self.expect_identifier(&name)?;
        let size = match register {
            'q' => self.qreg,
            _ => self.creg,
        }
        .ok_or_else(|| {
            ParseError::new(
                stmt_line,
                stmt_col,
                ParseErrorKind::UndeclaredRegister { name },
            )
        })?;
        self.expect(&TokenKind::LBracket)?;
        let (index, line, col) = self.expect_integer()?;
        self.expect(&TokenKind::RBracket)?;
        if index >= size {
            return Err(ParseError::new(
                line,
                col,
                ParseErrorKind::IndexOutOfRange {
                    register,
                    index,
                    size,
                },
            ));
        }
        Ok(index)
    }

    // Angle grammar: expr := term (('+'|'-') term)*
    //                term := factor (('*'|'/') factor)*
    //                factor := '-' factor | INT | REAL | 'pi'
    fn expression(&mut self) -> Result<f64, ParseError> {
        let (start_line, start_col) = self
            .peek()
            .map(|t| (t.line, t.col))
            .unwrap_or((self.eof_line, self.eof_col));
        let mut value = self.term()?;
        loop {
            match self.peek().map(|t| t.kind.clone()) {
                Some(TokenKind::Plus) => {
                    self.advance();
                    value += self.term()?;
                }
                Some(TokenKind::Minus) => {
                    self.advance();
                    value -= self.term()?;
                }
                _ => break,
            }
        }
        if !value.is_finite() {
            return Err(ParseError::new(
                start_line,
                start_col,
                ParseErrorKind::NonFiniteAngle,
            ));
        }
        Ok(value)
    }

    fn term(&mut self) -> Result<f64, ParseError> {
        let mut value = self.factor()?;
        loop {
            match self.peek().map(|t| t.kind.clone()) {
                Some(TokenKind::Star) => {
                    self.advance();
                    value *= self.factor()?;
                }
                Some(TokenKind::Slash) => {
                    self.advance();
                    value /= self.factor()?;
                }
                _ => break,
            }
        }
        Ok(value)
    }

    fn factor(&mut self) -> Result<f64, ParseError> {
        let token = self
            .peek()
            .cloned()
            .ok_or_else(|| self.eof_error("an angle expression"))?;
        match &token.kind {
            TokenKind::Minus => {
                self.advance();
                Ok(-self.factor()?)
            }
            TokenKind::Integer { value, .. } => {
                self.advance();
                Ok(*value as f64)
            }
            TokenKind::Real { value, .. } => {
                self.advance();
                Ok(*value)
            }
            TokenKind::Identifier(name) if name == "pi" => {
                self.advance();
                Ok(std::f64::consts::PI)
            }
            other => Err(ParseError::new(
                token.line,
                token.col,
                ParseErrorKind::UnexpectedToken {
                    expected: "an angle expression".into(),
                    found: other.describe(),
                },
            )),
        }
    }

    fn expect_version(&mut self) -> Result<(), ParseError> {
        let token = self.next_or_eof("version \"2.0\"")?;
        match &token.kind {
            TokenKind::Real { lexeme, .. } if lexeme == "2.0" => Ok(()),
            other => Err(ParseError::new(
                token.line,
                token.col,
                ParseErrorKind::InvalidVersion {
                    found: other.describe(),
                },
            )),
        }
    }

    fn expect_include_path(&mut self) -> Result<(), ParseError> {
        let token = self.next_or_eof("\"qelib1.inc\"")?;
        match &token.kind {
            TokenKind::Str(path) if path == "qelib1.inc" => Ok(()),
            other => Err(ParseError::new(
                token.line,
                token.col,
                ParseErrorKind::UnexpectedToken {
                    expected: "\"qelib1.inc\"".into(),
                    found: other.describe(),
                },
            )),
        }
    }

    fn expect_identifier(&mut self, name: &str) -> Result<(), ParseError> {
        let token = self.next_or_eof(&format!("\"{name}\""))?;
        match &token.kind {
            TokenKind::Identifier(found) if found == name => Ok(()),
            other => Err(ParseError::new(
                token.line,
                token.col,
                ParseErrorKind::UnexpectedToken {
                    expected: format!("\"{name}\""),
                    found: other.describe(),
                },
            )),
        }
    }

    fn expect_integer(&mut self) -> Result<(usize, usize, usize), ParseError> {
        let token = self.next_or_eof("an integer")?;
        match &token.kind {
            TokenKind::Integer { value, .. } => Ok((*value, token.line, token.col)),
            other => Err(ParseError::new(
                token.line,
                token.col,
                ParseErrorKind::UnexpectedToken {
                    expected: "an integer".into(),
                    found: other.describe(),
                },
            )),
        }
    }

    fn expect(&mut self, kind: &TokenKind) -> Result<(), ParseError> {
        let token = self.next_or_eof(&kind.describe())?;
        if &token.kind == kind {
            Ok(())
        } else {
            Err(ParseError::new(
                token.line,
                token.col,
                ParseErrorKind::UnexpectedToken {
                    expected: kind.describe(),
                    found: token.kind.describe(),
                },
            ))
        }
    }

    fn next_or_eof(&mut self, expected: &str) -> Result<Token, ParseError> {
        match self.tokens.get(self.pos).cloned() {
            Some(token) => {
                self.pos += 1;
                Ok(token)
            }
            None => Err(self.eof_error(expected)),
        }
    }

    fn eof_error(&self, expected: &str) -> ParseError {
        ParseError::new(
            self.eof_line,
            self.eof_col,
            ParseErrorKind::UnexpectedEof {
                expected: expected.into(),
            },
        )
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_identifier(&self) -> Option<&str> {
        match self.peek().map(|t| &t.kind) {
            Some(TokenKind::Identifier(name)) => Some(name.as_str()),
            _ => None,
        }
    }

    fn advance(&mut self) {
        self.pos += 1;
    }
}

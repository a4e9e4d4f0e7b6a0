//! Tokenizer for the OpenQASM subset. Tracks 1-based line/column positions
//! for every token so parse errors can point at their source.

use super::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Identifier(String),
    /// Unsigned integer literal; the raw lexeme is kept for exact grammar
    /// checks (the version number must read exactly "2.0").
    Integer {
        value: usize,
        lexeme: String,
    },
    Real {
        value: f64,
        lexeme: String,
    },
    Str(String),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Semicolon,
    Comma,
    Arrow,
    Plus,
    Minus,
    Star,
    Slash,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Identifier(name) => format!("\"{name}\""),
            TokenKind::Integer { lexeme, .. } | TokenKind::Real { lexeme, .. } => {
                format!("\"{lexeme}\"")
            }
            TokenKind::Str(s) => format!("\"{s}\""),
            TokenKind::LBracket => "\"[\"".into(),
            TokenKind::RBracket => "\"]\"".into(),
            TokenKind::LParen => "\"(\"".into(),
            TokenKind::RParen => "\")\"".into(),
            TokenKind::Semicolon => "\";\"".into(),
            TokenKind::Comma => "\",\"".into(),
            TokenKind::Arrow => "\"->\"".into(),
            TokenKind::Plus => "\"+\"".into(),
            TokenKind::Minus => "\"-\"".into(),
            TokenKind::Star => "\"*\"".into(),
            TokenKind::Slash => "\"/\"".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = source.chars().collect();
    let mut pos = 0;
    let mut line = 1;
    let mut col = 1;

    while pos < chars.len() {
        let ch = chars[pos];
        let (tok_line, tok_col) = (line, col);

        let advance = |pos: &mut usize, line: &mut usize, col: &mut usize| {
            if chars[*pos] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *pos += 1;
        };

        if ch.is_whitespace() {
            advance(&mut pos, &mut line, &mut col);
            continue;
        }

        // Line comment.
        if ch == '/' && chars.get(pos + 1) == Some(&'/') {
            while pos < chars.len() && chars[pos] != '\n' {
                advance(&mut pos, &mut line, &mut col);
            }
            continue;
        }

        let simple = match ch {
            '[' => Some(TokenKind::LBracket),
            ']' => Some(TokenKind::RBracket),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            ';' => Some(TokenKind::Semicolon),
            ',' => Some(TokenKind::Comma),
            '+' => Some(TokenKind::Plus),
            '*' => Some(TokenKind::Star),
            '/' => Some(TokenKind::Slash),
            _ => None,
        };
        if let Some(kind) = simple {
            tokens.push(Token {
                kind,
                line: tok_line,
                col: tok_col,
            });
            advance(&mut pos, &mut line, &mut col);
            continue;
        }

        if ch == '-' {
            advance(&mut pos, &mut line, &mut col);
            if chars.get(pos) == Some(&'>') {
                advance(&mut pos, &mut line, &mut col);
                tokens.push(Token {
                    kind: TokenKind::Arrow,
                    line: tok_line,
                    col: tok_col,
                });
            } else {
                tokens.push(Token {
                    kind: TokenKind::Minus,
                    line: tok_line,
                    col: tok_col,
                });
            }
            continue;
        }

        if ch == '"' {
            advance(&mut pos, &mut line, &mut col);
            let mut value = String::new();
            loop {
                match chars.get(pos) {
                    Some('"') => {
                        advance(&mut pos, &mut line, &mut col);
                        break;
                    }
                    Some('\n') | None => {
                        return Err(ParseError::new(
                            tok_line,
                            tok_col,
                            ParseErrorKind::UnterminatedString,
                        ));
                    }
                    Some(&c) => {
                        value.push(c);
                        advance(&mut pos, &mut line, &mut col);
                    }
                }
            }
            tokens.push(Token {
                kind: TokenKind::Str(value),
                line: tok_line,
                col: tok_col,
            });
            continue;
        }

        if ch.is_ascii_alphabetic() || ch == '_' {
            let mut name = String::new();
            while pos < chars.len() && (chars[pos].is_ascii_alphanumeric() || chars[pos] == '_') {
                name.push(chars[pos]);
                advance(&mut pos, &mut line, &mut col);
            }
            tokens.push(Token {
                kind: TokenKind::Identifier(name),
                line: tok_line,
                col: tok_col,
            });
            continue;
        }

        if ch.is_ascii_digit()
            || (ch == '.' && matches!(chars.get(pos + 1), Some(c) if c.is_ascii_digit()))
        {
            let mut lexeme = String::new();
            let mut is_real = false;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                lexeme.push(chars[pos]);
                advance(&mut pos, &mut line, &mut col);
            }
            if pos < chars.len() && chars[pos] == '.' {
                is_real = true;
                lexeme.push('.');
                advance(&mut pos, &mut line, &mut col);
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    lexeme.push(chars[pos]);
                    advance(&mut pos, &mut line, &mut col);
                }
            }
            if pos < chars.len() && (chars[pos] == 'e' || chars[pos] == 'E') {
                is_real = true;
                lexeme.push(chars[pos]);
                advance(&mut pos, &mut line, &mut col);
                if pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
                    lexeme.push(chars[pos]);
                    advance(&mut pos, &mut line, &mut col);
                }
                let mut saw_digit = false;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    lexeme.push(chars[pos]);
                    advance(&mut pos, &mut line, &mut col);
                    saw_digit = true;
                }
                if !saw_digit {
                    return Err(ParseError::new(
                        tok_line,
                        tok_col,
                        ParseErrorKind::InvalidNumber(lexeme),
                    ));
                }
            }
            let kind = if is_real {
                match lexeme.parse::<f64>() {
                    Ok(value) if value.is_finite() => TokenKind::Real { value, lexeme },
                    _ => {
                        return Err(ParseError::new(
                            tok_line,
                            tok_col,
                            ParseErrorKind::InvalidNumber(lexeme),
                        ))
                    }
                }
            } else {
                match lexeme.parse::<usize>() {
                    Ok(value) => TokenKind::Integer { value, lexeme },
                    Err(_) => {
                        return Err(ParseError::new(
                            tok_line,
                            tok_col,
                            ParseErrorKind::InvalidNumber(lexeme),
                        ))
                    }
                }
            };
            tokens.push(Token {
                kind,
                line: tok_line,
                col: tok_col,
            });
            continue;
        }

        return Err(ParseError::new(
            tok_line,
            tok_col,
            ParseErrorKind::Lexical(ch),
        ));
    }

    Ok(tokens)
}

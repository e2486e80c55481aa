//! Matrix file format: a header of two positive integers (rows, cols)
//! followed by `rows * cols` whitespace-separated complex literals.
//!
//! Complex literal grammar:
//! `FLOAT | FLOAT(+|-)FLOATi | (+|-)i | FLOATi | i`
//! where FLOAT is a decimal with optional sign and exponent.

use basicmat::{cx, ComplexMatrix};
use num_complex::Complex64;
use std::fmt;

/// Parse failures carry the 1-based line and column of the offender.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    BadHeader { line: usize, col: usize },
    BadToken { line: usize, col: usize },
    CountMismatch { expected: usize, got: usize },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::BadHeader { line, col } => {
                write!(f, "bad header at line {line}, column {col}: expected two positive integers")
            }
            ParseError::BadToken { line, col } => {
                write!(f, "bad token at line {line}, column {col}")
            }
            ParseError::CountMismatch { expected, got } => {
                write!(f, "entry count mismatch: header promises {expected}, file has {got}")
            }
        }
    }
}

impl std::error::Error for ParseError {}

/// A token with its 1-based source position.
#[derive(Debug, Clone, Copy)]
pub struct Token<'a> {
    pub text: &'a str,
    pub line: usize,
    pub col: usize,
}

/// Split on whitespace, tracking line/column positions.
pub fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    for (line_idx, line) in text.lines().enumerate() {
        let mut col = 0;
        let mut start = None;
        for (i, ch) in line.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    out.push(Token {
                        text: &line[s..i],
                        line: line_idx + 1,
                        col,
                    });
                }
            } else if start.is_none() {
                start = Some(i);
                col = i + 1;
            }
        }
        if let Some(s) = start {
            out.push(Token {
                text: &line[s..],
                line: line_idx + 1,
                col,
            });
        }
    }
    out
}

/// Parse one complex literal.
pub fn parse_complex(token: &str) -> Option<Complex64> {
    let value = match token {
        "i" | "+i" => cx(0.0, 1.0),
        "-i" => cx(0.0, -1.0),
        _ => {
            if let Some(body) = token.strip_suffix('i') {
                // split before the sign of the imaginary part, skipping
                // exponent signs like the one in 1e-3
                let bytes = body.as_bytes();
                let split = (1..bytes.len()).rev().find(|&k| {
                    (bytes[k] == b'+' || bytes[k] == b'-')
                        && !matches!(bytes[k - 1], b'e' | b'E')
                });
                match split {
                    Some(k) => {
                        let re: f64 = body[..k].parse().ok()?;
                        let imag = &body[k..];
                        let im: f64 = match imag {
                            "+" => 1.0,
                            "-" => -1.0,
                            _ => imag.parse().ok()?,
                        };
                        cx(re, im)
                    }
                    None => cx(0.0, body.parse().ok()?),
                }
            } else {
                cx(token.parse().ok()?, 0.0)
            }
        }
    };
    (value.re.is_finite() && value.im.is_finite()).then_some(value)
}

fn parse_dim(tok: &Token<'_>) -> Result<usize, ParseError> {
    match tok.text.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(ParseError::BadHeader {
            line: tok.line,
            col: tok.col,
        }),
    }
}

/// Parse a whole matrix file in row-major order.
pub fn parse_matrix(text: &str) -> Result<ComplexMatrix, ParseError> {
    let tokens = tokenize(text);
    if tokens.len() < 2 {
        return Err(ParseError::BadHeader { line: 1, col: 1 });
    }
    let rows = parse_dim(&tokens[0])?;
    let cols = parse_dim(&tokens[1])?;
    let expected = rows.checked_mul(cols).ok_or(ParseError::BadHeader {
        line: tokens[0].line,
        col: tokens[0].col,
    })?;
    let body = &tokens[2..];
    if body.len() != expected {
        return Err(ParseError::CountMismatch {
            expected,
            got: body.len(),
        });
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for tok in body {
        match parse_complex(tok.text) {
            Some(v) => entries.push(v),
            None => {
                return Err(ParseError::BadToken {
                    line: tok.line,
                    col: tok.col,
                })
            }
        }
    }
    ComplexMatrix::new(rows, cols, entries).map_err(|_| ParseError::CountMismatch {
        expected: rows * cols,
        got: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pauli_x() {
        let m = parse_matrix("2 2\n0 1\n1 0").unwrap();
        assert_eq!(m.get(0, 1), cx(1.0, 0.0));
        assert_eq!(m.get(0, 0), cx(0.0, 0.0));
    }

    #[test]
    fn parses_pauli_y_with_bare_i() {
        let m = parse_matrix("2 2\n0 -i\ni 0").unwrap();
        assert_eq!(m.get(0, 1), cx(0.0, -1.0));
        assert_eq!(m.get(1, 0), cx(0.0, 1.0));
    }

    #[test]
    fn count_mismatch_is_reported() {
        assert_eq!(
            parse_matrix("1 2\n1 1 1"),
            Err(ParseError::CountMismatch {
                expected: 2,
                got: 3
            })
        );
    }

    #[test]
    fn complex_literal_grammar() {
        assert_eq!(parse_complex("1.5+2i"), Some(cx(1.5, 2.0)));
        assert_eq!(parse_complex("1-0.5i"), Some(cx(1.0, -0.5)));
        assert_eq!(parse_complex("3e-2+1e-4i"), Some(cx(0.03, 0.0001)));
        assert_eq!(parse_complex("-2.5i"), Some(cx(0.0, -2.5)));
        assert_eq!(parse_complex("5+i"), Some(cx(5.0, 1.0)));
        assert_eq!(parse_complex("5-i"), Some(cx(5.0, -1.0)));
        assert_eq!(parse_complex("-1e3"), Some(cx(-1000.0, 0.0)));
        assert_eq!(parse_complex("+i"), Some(cx(0.0, 1.0)));
        assert_eq!(parse_complex("1+2"), None);
        assert_eq!(parse_complex("i2"), None);
        assert_eq!(parse_complex("inf"), None);
        assert_eq!(parse_complex("nan"), None);
    }

    #[test]
    fn zero_dimension_is_bad_header() {
        assert_eq!(
            parse_matrix("0 2\n"),
            Err(ParseError::BadHeader { line: 1, col: 1 })
        );
        assert_eq!(
            parse_matrix("x 2\n1 1"),
            Err(ParseError::BadHeader { line: 1, col: 1 })
        );
    }

    #[test]
    fn bad_token_carries_position() {
        assert_eq!(
            parse_matrix("2 2\n0 1\n1 zz"),
            Err(ParseError::BadToken { line: 3, col: 3 })
        );
    }
}

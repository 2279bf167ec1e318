//! Text format for Pauli sums.
//!
//! ```text
//! sum         := ["+" | "-"] term (("+" | "-") term)*
//! term        := coefficient ["*"] factor* | factor+
//! factor      := letter wire
//! letter      := "X" | "Y" | "Z"
//! coefficient := decimal literal (optional exponent)
//! wire        := nonnegative integer
//! ```
//!
//! Whitespace is insignificant between tokens. A bare coefficient denotes a
//! multiple of the identity.

use crate::error::{Error, Result};
use crate::pauli::word::MAX_WORD_QUBITS;
use crate::pauli::{Letter, PauliSum, PauliTerm, PauliWord};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(f64),
    Factor(Letter, usize),
    Plus,
    Minus,
    Star,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Number(x) => format!("number '{x}'"),
            Token::Factor(l, w) => format!("factor '{}{}'", l.as_char(), w),
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
        }
    }
}

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        match c {
            '+' => {
                tokens.push((start, Token::Plus));
                i += 1;
            }
            '-' => {
                tokens.push((start, Token::Minus));
                i += 1;
            }
            '*' => {
                tokens.push((start, Token::Star));
                i += 1;
            }
            'X' | 'Y' | 'Z' => {
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits_start {
                    return Err(err(start, format!("letter '{c}' must be followed by a wire index")));
                }
                let wire: usize = text[digits_start..i]
                    .parse()
                    .map_err(|_| err(digits_start, "wire index too large"))?;
                if wire >= MAX_WORD_QUBITS {
                    return Err(err(
                        digits_start,
                        format!("wire index {wire} exceeds the {MAX_WORD_QUBITS}-qubit limit"),
                    ));
                }
                tokens.push((start, Token::Factor(Letter::from_char(c).unwrap(), wire)));
            }
            '0'..='9' | '.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    let exp_digits = j;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j > exp_digits {
                        i = j;
                    }
                }
                let literal = &text[start..i];
                let value: f64 = literal
                    .parse()
                    .map_err(|_| err(start, format!("malformed number '{literal}'")))?;
                tokens.push((start, Token::Number(value)));
            }
            other => {
                let shown: String = text[start..].chars().next().unwrap_or(other).to_string();
                return Err(err(start, format!("unexpected character '{shown}'")));
            }
        }
    }
    Ok(tokens)
}

struct ParsedTerm {
    coefficient: f64,
    factors: Vec<(usize, Letter)>,
}

fn parse_terms(text: &str) -> Result<Vec<ParsedTerm>> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(err(0, "empty expression"));
    }
    let end = text.len();
    let mut pos = 0;
    let mut terms = Vec::new();
    let mut sign = 1.0;
    let mut after: Option<Token> = None;

    if let Some((_, t @ (Token::Plus | Token::Minus))) = tokens.first() {
        if *t == Token::Minus {
            sign = -1.0;
        }
        after = Some(t.clone());
        pos = 1;
    }

    loop {
        let term_start = tokens.get(pos).map_or(end, |t| t.0);
        let mut coefficient = 1.0;
        let mut has_coefficient = false;
        if let Some((_, Token::Number(x))) = tokens.get(pos) {
            coefficient = *x;
            has_coefficient = true;
            pos += 1;
            if let Some((_, Token::Star)) = tokens.get(pos) {
                pos += 1;
                if !matches!(tokens.get(pos), Some((_, Token::Factor(..)))) {
                    let (p, what) = tokens
                        .get(pos)
                        .map_or((end, "end of input".to_string()), |t| (t.0, t.1.describe()));
                    return Err(err(p, format!("expected a Pauli factor after '*', found {what}")));
                }
            }
        }
        let mut factors: Vec<(usize, Letter)> = Vec::new();
        while let Some((p, Token::Factor(letter, wire))) = tokens.get(pos) {
            if factors.iter().any(|f| f.0 == *wire) {
                return Err(err(*p, format!("wire {wire} appears twice in one term")));
            }
            factors.push((*wire, *letter));
            pos += 1;
        }
        if !has_coefficient && factors.is_empty() {
            let what = tokens
                .get(pos)
                .map_or("end of input".to_string(), |t| t.1.describe());
            let context = after
                .as_ref()
                .map_or(String::new(), |t| format!(" after {}", t.describe()));
            return Err(err(term_start, format!("expected a term{context}, found {what}")));
        }
        terms.push(ParsedTerm {
            coefficient: sign * coefficient,
            factors,
        });

        match tokens.get(pos) {
            None => break,
            Some((_, t @ (Token::Plus | Token::Minus))) => {
                sign = if *t == Token::Minus { -1.0 } else { 1.0 };
                after = Some(t.clone());
                pos += 1;
            }
            Some((p, t)) => {
                return Err(err(*p, format!("unexpected {}", t.describe())));
            }
        }
    }
    Ok(terms)
}

/// Parses a Pauli sum; the register size is one more than the largest wire.
pub fn parse_pauli_sum<T: Real>(text: &str) -> Result<PauliSum<T>> {
    parse_with(text, None)
}

/// Parses a Pauli sum into a register of exactly `n_qubits` wires.
pub fn parse_pauli_sum_with_qubits<T: Real>(text: &str, n_qubits: usize) -> Result<PauliSum<T>> {
    parse_with(text, Some(n_qubits))
}

fn parse_with<T: Real>(text: &str, n_override: Option<usize>) -> Result<PauliSum<T>> {
    let terms = parse_terms(text)?;
    let needed = terms
        .iter()
        .flat_map(|t| t.factors.iter().map(|f| f.0 + 1))
        .max()
        .unwrap_or(1);
    let n_qubits = match n_override {
        Some(n) if n < needed => {
            return Err(Error::InvalidArgument(format!(
                "expression uses {needed} wires but the register has {n}"
            )))
        }
        Some(n) => n,
        None => needed,
    };
    let terms = terms
        .into_iter()
        .map(|t| {
            Ok(PauliTerm::new(
                T::lit(t.coefficient),
                PauliWord::from_letters(n_qubits, &t.factors)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    PauliSum::new(n_qubits, terms)
}

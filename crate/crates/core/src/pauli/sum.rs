use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::pauli::PauliWord;
use crate::scalar::Real;

/// Coefficients below this magnitude are dropped during canonicalization.
pub const DROP_THRESHOLD: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliTerm<T> {
    pub coefficient: T,
    pub word: PauliWord,
}

impl<T: Real> PauliTerm<T> {
    pub fn new(coefficient: T, word: PauliWord) -> Self {
        Self { coefficient, word }
    }
}

/// Real-weighted sum of Pauli words in canonical form.
///
/// Terms are sorted by word order, duplicates are merged and vanishing
/// coefficients are dropped, so structural equality is operator equality.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum<T> {
    n_qubits: usize,
    terms: Vec<PauliTerm<T>>,
}

impl<T: Real> PauliSum<T> {
    pub fn new(n_qubits: usize, terms: impl IntoIterator<Item = PauliTerm<T>>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidArgument("a Pauli sum needs at least one qubit".into()));
        }
        let mut merged: BTreeMap<PauliWord, T> = BTreeMap::new();
        for term in terms {
            Error::check_qubits(n_qubits, term.word.n_qubits())?;
            if !term.coefficient.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "non-finite coefficient on {}",
                    term.word
                )));
            }
            *merged.entry(term.word).or_insert_with(T::zero) += term.coefficient;
        }
        let drop = T::lit(DROP_THRESHOLD);
        let terms = merged
            .into_iter()
            .filter(|(_, c)| c.abs() >= drop)
            .map(|(word, coefficient)| PauliTerm { coefficient, word })
            .collect();
        Ok(Self { n_qubits, terms })
    }

    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::new(n_qubits, [])
    }

    pub fn from_word(coefficient: T, word: PauliWord) -> Result<Self> {
        Self::new(word.n_qubits(), [PauliTerm::new(coefficient, word)])
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn terms(&self) -> &[PauliTerm<T>] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, word: &PauliWord) -> T {
        self.terms
            .iter()
            .find(|t| t.word == *word)
            .map_or_else(T::zero, |t| t.coefficient)
    }

    /// Re-embeds every term into a wider register.
    pub fn widened(&self, n_qubits: usize) -> Result<Self> {
        if n_qubits < self.n_qubits {
            return Err(Error::InvalidArgument(format!(
                "cannot shrink a {}-qubit sum to {n_qubits} qubits",
                self.n_qubits
            )));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Ok(PauliTerm::new(t.coefficient, t.word.widened(n_qubits)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n_qubits, terms)
    }

    /// `self + lambda * I`
    pub fn shifted(&self, lambda: T) -> Result<Self> {
        let id = PauliWord::identity(self.n_qubits)?;
        Self::new(
            self.n_qubits,
            self.terms.iter().copied().chain([PauliTerm::new(lambda, id)]),
        )
    }

    pub fn scaled(&self, factor: T) -> Result<Self> {
        Self::new(
            self.n_qubits,
            self.terms
                .iter()
                .map(|t| PauliTerm::new(t.coefficient * factor, t.word)),
        )
    }

    pub fn add(&self, other: &PauliSum<T>) -> Result<Self> {
        Error::check_qubits(self.n_qubits, other.n_qubits)?;
        Self::new(
            self.n_qubits,
            self.terms.iter().chain(other.terms.iter()).copied(),
        )
    }

    /// Sum of absolute coefficients; an upper bound on the spectral norm.
    pub fn one_norm(&self) -> T {
        self.terms
            .iter()
            .fold(T::zero(), |acc, t| acc + t.coefficient.abs())
    }

    /// The Hermitian operator `-i[self, k]`, expressed as a Pauli sum.
    ///
    /// Only terms anticommuting with `k` survive; each contributes
    /// `-2i · phase · (P·K)` where `P·K = phase · R` and `phase = ±i`.
    pub fn commutator_with(&self, k: &PauliWord) -> Result<Self> {
        Error::check_qubits(self.n_qubits, k.n_qubits())?;
        let mut terms = Vec::new();
        for t in &self.terms {
            if t.word.commutes_with(k)? {
                continue;
            }
            let (phase, word) = t.word.multiply(k)?;
            // -2i * (±i) = ±2
            let sign = match phase {
                crate::pauli::Phase::PlusI => T::lit(2.0),
                crate::pauli::Phase::MinusI => T::lit(-2.0),
                _ => unreachable!("anticommuting Pauli words multiply to an imaginary phase"),
            };
            terms.push(PauliTerm::new(sign * t.coefficient, word));
        }
        Self::new(self.n_qubits, terms)
    }
}

/// Prints in the grammar accepted by [`crate::pauli::parse_pauli_sum`].
impl<T: Real> fmt::Display for PauliSum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, term) in self.terms.iter().enumerate() {
            let negative = term.coefficient < T::zero();
            let magnitude = term.coefficient.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if term.word.is_identity() {
                write!(f, "{magnitude}")?;
            } else if magnitude == T::one() {
                write!(f, "{}", term.word)?;
            } else {
                write!(f, "{magnitude} {}", term.word)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Letter;

    fn word(n: usize, l: &[(usize, Letter)]) -> PauliWord {
        PauliWord::from_letters(n, l).unwrap()
    }

    #[test]
    fn duplicates_merge_and_zeros_drop() {
        let z0 = word(2, &[(0, Letter::Z)]);
        let x1 = word(2, &[(1, Letter::X)]);
        let s = PauliSum::new(
            2,
            [
                PauliTerm::new(1.0, z0),
                PauliTerm::new(1.0, z0),
                PauliTerm::new(0.5, x1),
                PauliTerm::new(-0.5, x1),
            ],
        )
        .unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.coefficient(&z0), 2.0);
    }

    #[test]
    fn rejects_nonfinite_and_mismatch() {
        let z0 = word(1, &[(0, Letter::Z)]);
        assert!(PauliSum::new(1, [PauliTerm::new(f64::NAN, z0)]).is_err());
        assert!(PauliSum::new(2, [PauliTerm::new(1.0, z0)]).is_err());
    }

    #[test]
    fn commutator_of_x_with_y() {
        // -i[X, Y] = -i (2iZ) = 2Z
        let x = PauliSum::from_word(1.0, word(1, &[(0, Letter::X)])).unwrap();
        let c = x.commutator_with(&word(1, &[(0, Letter::Y)])).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.coefficient(&word(1, &[(0, Letter::Z)])), 2.0);
    }

    #[test]
    fn display_format() {
        let s = PauliSum::new(
            2,
            [
                PauliTerm::new(-1.5, word(2, &[(0, Letter::Z), (1, Letter::Z)])),
                PauliTerm::new(1.0, word(2, &[(0, Letter::X)])),
            ],
        )
        .unwrap();
        assert_eq!(s.to_string(), "X0 - 1.5 Z0 Z1");
    }
}

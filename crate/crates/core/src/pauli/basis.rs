use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    SingleQubit,
    TwoLocalNearestNeighbor,
    TwoLocalAll,
    Full,
    Custom,
}

/// Ordered set of Pauli words spanning a subspace of the Lie algebra.
///
/// Words are distinct, never the identity, and sorted by the [`PauliWord`]
/// order (weight, then wires, then letters).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    n_qubits: usize,
    words: Vec<PauliWord>,
    label: BasisLabel,
}

impl SubspaceBasis {
    fn from_set(n_qubits: usize, words: BTreeSet<PauliWord>, label: BasisLabel) -> Self {
        Self {
            n_qubits,
            words: words.into_iter().collect(),
            label,
        }
    }

    /// All `3N` weight-one words.
    pub fn single_qubit(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidArgument("basis needs at least one qubit".into()));
        }
        let mut set = BTreeSet::new();
        push_singles(n_qubits, &mut set)?;
        Ok(Self::from_set(n_qubits, set, BasisLabel::SingleQubit))
    }

    /// Weight-two words over a pair set: nearest neighbours on a chain
    /// (or ring when `periodic`), or all unordered pairs.
    ///
    /// Each unordered pair contributes its 9 letter combinations, so a ring
    /// of `N > 2` sites gives `9N` words and all pairs give `9N(N-1)/2`.
    pub fn two_local(
        n_qubits: usize,
        nearest_neighbor: bool,
        periodic: bool,
        include_singles: bool,
    ) -> Result<Self> {
        if n_qubits < 2 {
            return Err(Error::InvalidArgument(
                "two-local basis needs at least two qubits".into(),
            ));
        }
        let pairs: BTreeSet<(usize, usize)> = if nearest_neighbor {
            let edges = if periodic { n_qubits } else { n_qubits - 1 };
            (0..edges)
                .map(|i| {
                    let j = (i + 1) % n_qubits;
                    (i.min(j), i.max(j))
                })
                .collect()
        } else {
            (0..n_qubits)
                .flat_map(|i| (i + 1..n_qubits).map(move |j| (i, j)))
                .collect()
        };
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            for la in Letter::ALL {
                for lb in Letter::ALL {
                    set.insert(PauliWord::from_letters(n_qubits, &[(a, la), (b, lb)])?);
                }
            }
        }
        if include_singles {
            push_singles(n_qubits, &mut set)?;
        }
        let label = if nearest_neighbor {
            BasisLabel::TwoLocalNearestNeighbor
        } else {
            BasisLabel::TwoLocalAll
        };
        Ok(Self::from_set(n_qubits, set, label))
    }

    /// Every non-identity word, `4^N - 1` of them.
    pub fn full(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidArgument("basis needs at least one qubit".into()));
        }
        Error::guard("full Pauli basis", n_qubits, 10)?;
        let span = 1u64 << n_qubits;
        let mut set = BTreeSet::new();
        for x in 0..span {
            for z in 0..span {
                if x != 0 || z != 0 {
                    set.insert(PauliWord::new(n_qubits, x, z)?);
                }
            }
        }
        Ok(Self::from_set(n_qubits, set, BasisLabel::Full))
    }

    /// User-supplied words; re-sorted, duplicates and identities rejected.
    pub fn custom(n_qubits: usize, words: impl IntoIterator<Item = PauliWord>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for word in words {
            Error::check_qubits(n_qubits, word.n_qubits())?;
            if word.is_identity() {
                return Err(Error::InvalidArgument(
                    "the identity is not a Lie-algebra direction".into(),
                ));
            }
            if !set.insert(word) {
                return Err(Error::InvalidArgument(format!("duplicate basis word {word}")));
            }
        }
        if set.is_empty() {
            return Err(Error::InvalidArgument("empty basis".into()));
        }
        Ok(Self::from_set(n_qubits, set, BasisLabel::Custom))
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn words(&self) -> &[PauliWord] {
        &self.words
    }

    #[inline]
    pub fn label(&self) -> BasisLabel {
        self.label
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

fn push_singles(n_qubits: usize, set: &mut BTreeSet<PauliWord>) -> Result<()> {
    for q in 0..n_qubits {
        for l in Letter::ALL {
            set.insert(PauliWord::single(n_qubits, q, l)?);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_counts() {
        let b1 = SubspaceBasis::single_qubit(1).unwrap();
        let names: Vec<String> = b1.words().iter().map(|w| w.to_string()).collect();
        assert_eq!(names, ["X0", "Y0", "Z0"]);
        assert_eq!(SubspaceBasis::single_qubit(2).unwrap().len(), 6);
        assert_eq!(SubspaceBasis::single_qubit(4).unwrap().len(), 12);
    }

    #[test]
    fn two_local_counts() {
        assert_eq!(SubspaceBasis::two_local(4, true, true, false).unwrap().len(), 36);
        assert_eq!(SubspaceBasis::two_local(4, true, false, false).unwrap().len(), 27);
        assert_eq!(SubspaceBasis::two_local(2, false, false, false).unwrap().len(), 9);
        assert_eq!(SubspaceBasis::two_local(4, false, false, true).unwrap().len(), 66);
        // a two-site ring has a single bond
        assert_eq!(SubspaceBasis::two_local(2, true, true, false).unwrap().len(), 9);
        assert!(SubspaceBasis::two_local(1, true, true, false).is_err());
    }

    #[test]
    fn full_basis_size() {
        assert_eq!(SubspaceBasis::full(1).unwrap().len(), 3);
        assert_eq!(SubspaceBasis::full(2).unwrap().len(), 15);
        assert_eq!(SubspaceBasis::full(3).unwrap().len(), 63);
    }

    #[test]
    fn custom_validation() {
        let yy = PauliWord::from_letters(2, &[(0, Letter::Y), (1, Letter::Y)]).unwrap();
        let zz = PauliWord::from_letters(2, &[(0, Letter::Z), (1, Letter::Z)]).unwrap();
        let b = SubspaceBasis::custom(2, [zz, yy]).unwrap();
        assert_eq!(b.words(), &[yy, zz]);
        assert!(SubspaceBasis::custom(2, [yy, yy]).is_err());
        assert!(SubspaceBasis::custom(2, [PauliWord::identity(2).unwrap()]).is_err());
        assert!(SubspaceBasis::custom(3, [yy]).is_err());
    }
}

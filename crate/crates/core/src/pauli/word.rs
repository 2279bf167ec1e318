use std::cmp::Ordering;
use std::fmt;

use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest register a [`PauliWord`] can address.
pub const MAX_WORD_QUBITS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
    Z,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

    fn bits(self) -> (bool, bool) {
        match self {
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

/// A power of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    PlusOne,
    PlusI,
    MinusOne,
    MinusI,
}

impl Phase {
    /// `i^k`
    pub fn from_exponent(k: u32) -> Phase {
        match k % 4 {
            0 => Phase::PlusOne,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn exponent(self) -> u32 {
        match self {
            Phase::PlusOne => 0,
            Phase::PlusI => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    pub fn to_complex<T: Real>(self) -> Complex<T> {
        let (re, im) = match self {
            Phase::PlusOne => (1.0, 0.0),
            Phase::PlusI => (0.0, 1.0),
            Phase::MinusOne => (-1.0, 0.0),
            Phase::MinusI => (0.0, -1.0),
        };
        Complex::new(T::lit(re), T::lit(im))
    }
}

/// Tensor product of single-qubit Paulis in the two-bitmask encoding.
///
/// Bit `q` of `x_mask` is set when wire `q` carries X or Y, bit `q` of
/// `z_mask` when it carries Z or Y. Wire 0 is the leftmost Kronecker factor,
/// i.e. the most significant bit of a basis-state index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliWord {
    n_qubits: usize,
    x_mask: u64,
    z_mask: u64,
}

fn width_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PauliWord {
    pub fn new(n_qubits: usize, x_mask: u64, z_mask: u64) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidArgument("a Pauli word needs at least one qubit".into()));
        }
        Error::guard("PauliWord", n_qubits, MAX_WORD_QUBITS)?;
        let outside = (x_mask | z_mask) & !width_mask(n_qubits);
        if outside != 0 {
            return Err(Error::WireOutOfRange {
                wire: outside.trailing_zeros() as usize,
                n_qubits,
            });
        }
        Ok(Self {
            n_qubits,
            x_mask,
            z_mask,
        })
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        Self::new(n_qubits, 0, 0)
    }

    pub fn single(n_qubits: usize, wire: usize, letter: Letter) -> Result<Self> {
        Self::from_letters(n_qubits, &[(wire, letter)])
    }

    /// Builds a word from `(wire, letter)` pairs. Repeating a wire is an error.
    pub fn from_letters(n_qubits: usize, letters: &[(usize, Letter)]) -> Result<Self> {
        let (mut x, mut z) = (0u64, 0u64);
        for &(wire, letter) in letters {
            if wire >= n_qubits || wire >= MAX_WORD_QUBITS {
                return Err(Error::WireOutOfRange { wire, n_qubits });
            }
            let bit = 1u64 << wire;
            if (x | z) & bit != 0 {
                return Err(Error::InvalidArgument(format!(
                    "wire {wire} appears twice in one Pauli word"
                )));
            }
            let (bx, bz) = letter.bits();
            if bx {
                x |= bit;
            }
            if bz {
                z |= bit;
            }
        }
        Self::new(n_qubits, x, z)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn x_mask(&self) -> u64 {
        self.x_mask
    }

    #[inline]
    pub fn z_mask(&self) -> u64 {
        self.z_mask
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.x_mask == 0 && self.z_mask == 0
    }

    #[inline]
    pub fn weight(&self) -> usize {
        (self.x_mask | self.z_mask).count_ones() as usize
    }

    #[inline]
    pub(crate) fn y_count(&self) -> u32 {
        (self.x_mask & self.z_mask).count_ones()
    }

    pub fn letter(&self, wire: usize) -> Option<Letter> {
        if wire >= self.n_qubits {
            return None;
        }
        let bit = 1u64 << wire;
        match (self.x_mask & bit != 0, self.z_mask & bit != 0) {
            (false, false) => None,
            (true, false) => Some(Letter::X),
            (true, true) => Some(Letter::Y),
            (false, true) => Some(Letter::Z),
        }
    }

    /// Non-identity factors in ascending wire order.
    pub fn factors(&self) -> impl Iterator<Item = (usize, Letter)> + '_ {
        (0..self.n_qubits).filter_map(move |w| self.letter(w).map(|l| (w, l)))
    }

    /// Same word re-embedded into a register of `n_qubits` wires.
    pub fn widened(&self, n_qubits: usize) -> Result<Self> {
        Self::new(n_qubits, self.x_mask, self.z_mask)
    }

    /// Masks re-expressed in basis-index bit order (wire `q` is bit `N-1-q`).
    pub(crate) fn index_masks(&self) -> (usize, usize) {
        let n = self.n_qubits;
        let (mut x, mut z) = (0usize, 0usize);
        for q in 0..n {
            let bit = 1usize << (n - 1 - q);
            if self.x_mask >> q & 1 == 1 {
                x |= bit;
            }
            if self.z_mask >> q & 1 == 1 {
                z |= bit;
            }
        }
        (x, z)
    }

    /// `P·Q = phase · R`.
    pub fn multiply(&self, other: &PauliWord) -> Result<(Phase, PauliWord)> {
        Error::check_qubits(self.n_qubits, other.n_qubits)?;
        let x = self.x_mask ^ other.x_mask;
        let z = self.z_mask ^ other.z_mask;
        let product = PauliWord {
            n_qubits: self.n_qubits,
            x_mask: x,
            z_mask: z,
        };
        // P = i^{y_P} X^{x_P} Z^{z_P}; commuting Z^{z_P} past X^{x_Q} costs (-1)^{|z_P & x_Q|}.
        let swaps = (self.z_mask & other.x_mask).count_ones();
        let exponent = self.y_count() + other.y_count() + 2 * swaps + 4 - product.y_count() % 4;
        Ok((Phase::from_exponent(exponent % 4), product))
    }

    pub fn commutes_with(&self, other: &PauliWord) -> Result<bool> {
        Error::check_qubits(self.n_qubits, other.n_qubits)?;
        let overlap =
            (self.x_mask & other.z_mask).count_ones() + (self.z_mask & other.x_mask).count_ones();
        Ok(overlap.is_multiple_of(2))
    }

    fn sort_key(&self) -> (usize, usize, Vec<(usize, Letter)>) {
        (self.n_qubits, self.weight(), self.factors().collect())
    }
}

/// Ordered by weight, then by the wires carrying a factor, then by letter.
impl Ord for PauliWord {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let (na, wa, fa) = self.sort_key();
        let (nb, wb, fb) = other.sort_key();
        na.cmp(&nb).then(wa.cmp(&wb)).then_with(|| {
            let wires_a: Vec<usize> = fa.iter().map(|f| f.0).collect();
            let wires_b: Vec<usize> = fb.iter().map(|f| f.0).collect();
            wires_a.cmp(&wires_b).then_with(|| {
                let la: Vec<Letter> = fa.iter().map(|f| f.1).collect();
                let lb: Vec<Letter> = fb.iter().map(|f| f.1).collect();
                la.cmp(&lb)
            })
        })
    }
}

impl PartialOrd for PauliWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `X0 Z3`; the identity prints as `I`.
impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("I");
        }
        let mut first = true;
        for (wire, letter) in self.factors() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", letter.as_char(), wire)?;
            first = false;
        }
        Ok(())
    }
}

use nalgebra::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, DenseUnitary};
use crate::pauli::{PauliSum, PauliWord, Phase};
use crate::scalar::{cone, cplx, czero, Real};
use crate::sim::Gate;

/// Largest register simulated as a statevector.
pub const MAX_STATE_QUBITS: usize = 12;

/// Normalized pure state on `N` qubits; wire 0 is the most significant bit.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Real> {
    n_qubits: usize,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// `|0…0⟩`
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidArgument("a state needs at least one qubit".into()));
        }
        Error::guard("statevector", n_qubits, MAX_STATE_QUBITS)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index,
            });
        }
        let mut amplitudes = vec![czero(); dim];
        amplitudes[index] = cone();
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// `|+⟩^⊗N`
    pub fn plus(n_qubits: usize) -> Result<Self> {
        let mut s = Self::zero(n_qubits)?;
        for q in 0..n_qubits {
            s.apply(&Gate::Hadamard(q))?;
        }
        Ok(s)
    }

    /// Wraps and normalizes raw amplitudes.
    pub fn from_amplitudes(n_qubits: usize, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidArgument("a state needs at least one qubit".into()));
        }
        Error::guard("statevector", n_qubits, MAX_STATE_QUBITS)?;
        let dim = 1usize << n_qubits;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: amplitudes.len(),
            });
        }
        let mut s = Self {
            n_qubits,
            amplitudes,
        };
        let norm = s.norm_sqr().sqrt();
        if !(norm.is_finite() && norm > T::zero()) {
            return Err(Error::InvalidArgument("state has zero or non-finite norm".into()));
        }
        s.amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(s)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &StateVector<T>) -> Result<Complex<T>> {
        Error::check_qubits(self.n_qubits, other.n_qubits)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(czero(), |acc, (a, b)| acc + a.conj() * b))
    }

    /// Euclidean distance between amplitude vectors (phase sensitive).
    pub fn distance(&self, other: &StateVector<T>) -> Result<T> {
        Error::check_qubits(self.n_qubits, other.n_qubits)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(T::zero(), |acc, (a, b)| acc + (a - b).norm_sqr())
            .sqrt())
    }

    pub fn to_column(&self) -> CMatrix<T> {
        CMatrix::from_column_slice(self.dim(), 1, &self.amplitudes)
    }

    /// `|ψ⟩⟨ψ|`
    pub fn density_matrix(&self) -> CMatrix<T> {
        let col = self.to_column();
        &col * col.adjoint()
    }

    pub fn apply(&mut self, gate: &Gate<T>) -> Result<()> {
        gate.validate(self.n_qubits)?;
        match gate {
            Gate::Hadamard(w) => {
                let bit = self.wire_bit(*w);
                let r = T::lit(std::f64::consts::FRAC_1_SQRT_2);
                for i in 0..self.dim() {
                    if i & bit == 0 {
                        let a = self.amplitudes[i];
                        let b = self.amplitudes[i | bit];
                        self.amplitudes[i] = (a + b) * r;
                        self.amplitudes[i | bit] = (a - b) * r;
                    }
                }
            }
            Gate::Cnot { control, target } => {
                let c = self.wire_bit(*control);
                let t = self.wire_bit(*target);
                for i in 0..self.dim() {
                    if i & c != 0 && i & t == 0 {
                        self.amplitudes.swap(i, i | t);
                    }
                }
            }
            other => {
                let (word, angle) = other
                    .as_rotation(self.n_qubits)?
                    .expect("remaining gates are rotations");
                self.rotate(&word, angle);
            }
        }
        Ok(())
    }

    /// Functional form of [`StateVector::apply`].
    pub fn applied(mut self, gate: &Gate<T>) -> Result<Self> {
        self.apply(gate)?;
        Ok(self)
    }

    /// `exp(−iθK/2) = cos(θ/2) I − i sin(θ/2) K`, using the bitmask action of `K`.
    pub fn apply_pauli_rotation(&mut self, word: &PauliWord, angle: T) -> Result<()> {
        Error::check_qubits(self.n_qubits, word.n_qubits())?;
        if !angle.is_finite() {
            return Err(Error::InvalidArgument("non-finite rotation angle".into()));
        }
        self.rotate(word, angle);
        Ok(())
    }

    fn rotate(&mut self, word: &PauliWord, angle: T) {
        let half = angle * T::lit(0.5);
        let (c, s) = (half.cos(), half.sin());
        let kpsi = self.pauli_action(word);
        let minus_i_sin = cplx(T::zero(), -s);
        for (a, k) in self.amplitudes.iter_mut().zip(kpsi) {
            *a = *a * c + k * minus_i_sin;
        }
    }

    /// `K|ψ⟩` for a Pauli word `K`.
    pub fn pauli_action(&self, word: &PauliWord) -> Vec<Complex<T>> {
        let (x, z) = word.index_masks();
        let base = Phase::from_exponent(word.y_count()).to_complex::<T>();
        let mut out = vec![czero(); self.dim()];
        for (b, a) in self.amplitudes.iter().enumerate() {
            let v = *a * base;
            out[b ^ x] = if (b & z).count_ones() % 2 == 1 { -v } else { v };
        }
        out
    }

    /// `⟨ψ|K|ψ⟩`, real for Hermitian words.
    pub fn pauli_expectation(&self, word: &PauliWord) -> Result<T> {
        Error::check_qubits(self.n_qubits, word.n_qubits())?;
        let kpsi = self.pauli_action(word);
        let value = self
            .amplitudes
            .iter()
            .zip(&kpsi)
            .fold(czero(), |acc: Complex<T>, (a, k)| acc + a.conj() * k);
        debug_assert!(value.im.abs() < T::tolerance(1e-10));
        Ok(value.re)
    }

    /// `⟨ψ|H|ψ⟩`
    pub fn expectation(&self, h: &PauliSum<T>) -> Result<T> {
        Error::check_qubits(self.n_qubits, h.n_qubits())?;
        h.terms().iter().try_fold(T::zero(), |acc, t| {
            Ok(acc + t.coefficient * self.pauli_expectation(&t.word)?)
        })
    }

    /// Shot-based estimate of `⟨H⟩`.
    ///
    /// Each term is measured `shots` times in its own eigenbasis; outcomes
    /// are ±1 with `P(+1) = (1 + ⟨P⟩)/2`. Deterministic for a fixed seed.
    pub fn expectation_sampled(&self, h: &PauliSum<T>, shots: u64, seed: u64) -> Result<T> {
        Error::check_qubits(self.n_qubits, h.n_qubits())?;
        if shots == 0 {
            return Err(Error::InvalidArgument("shots must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut total = T::zero();
        for t in h.terms() {
            if t.word.is_identity() {
                total += t.coefficient;
                continue;
            }
            let mean = self.pauli_expectation(&t.word)?.as_f64();
            let p_plus = ((1.0 + mean) / 2.0).clamp(0.0, 1.0);
            let plus = Binomial::new(shots, p_plus)
                .expect("probability clamped to [0, 1]")
                .sample(&mut rng);
            let estimate = (2.0 * plus as f64 - shots as f64) / shots as f64;
            total += t.coefficient * T::lit(estimate);
        }
        Ok(total)
    }

    /// `U|ψ⟩`; errors if the result drifts from unit norm by more than 1e−10.
    pub fn apply_dense(&mut self, u: &DenseUnitary<T>) -> Result<()> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.dim(),
            });
        }
        let out = u.matrix() * self.to_column();
        let norm_sqr = out.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr());
        let drift = (norm_sqr - T::one()).abs();
        if drift > T::tolerance(1e-10) {
            return Err(Error::UnitarityDrift {
                drift: drift.as_f64(),
            });
        }
        let norm = norm_sqr.sqrt();
        self.amplitudes = out.iter().map(|a| *a / norm).collect();
        Ok(())
    }

    fn wire_bit(&self, wire: usize) -> usize {
        1usize << (self.n_qubits - 1 - wire)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{parse_pauli_sum, Letter};

    const EPS: f64 = 1e-12;

    fn close(a: Complex<f64>, re: f64, im: f64) -> bool {
        (a.re - re).abs() < EPS && (a.im - im).abs() < EPS
    }

    #[test]
    fn zero_states() {
        let s = StateVector::<f64>::zero(1).unwrap();
        assert_eq!(s.amplitudes(), &[cone(), czero()]);
        let s = StateVector::<f64>::zero(2).unwrap();
        assert!(close(s.amplitudes()[0], 1.0, 0.0));
        assert_eq!(s.dim(), 4);
        assert!(StateVector::<f64>::zero(13).is_err());
        assert!(StateVector::<f64>::zero(0).is_err());
    }

    #[test]
    fn uniform_superposition() {
        let s = StateVector::<f64>::plus(2).unwrap();
        assert!(s.amplitudes().iter().all(|a| close(*a, 0.5, 0.0)));
    }

    #[test]
    fn hadamard_and_x_rotation() {
        let s = StateVector::<f64>::zero(1)
            .unwrap()
            .applied(&Gate::Hadamard(0))
            .unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(s.amplitudes()[0], r, 0.0) && close(s.amplitudes()[1], r, 0.0));

        let x0 = PauliWord::single(1, 0, Letter::X).unwrap();
        let s = StateVector::<f64>::zero(1)
            .unwrap()
            .applied(&Gate::PauliRotation(x0, std::f64::consts::PI))
            .unwrap();
        assert!(close(s.amplitudes()[0], 0.0, 0.0));
        assert!(close(s.amplitudes()[1], 0.0, -1.0));
    }

    #[test]
    fn zz_rotation_phase() {
        let zz = PauliWord::from_letters(2, &[(0, Letter::Z), (1, Letter::Z)]).unwrap();
        let theta = 0.7;
        let s = StateVector::<f64>::zero(2)
            .unwrap()
            .applied(&Gate::PauliRotation(zz, theta))
            .unwrap();
        assert!(close(s.amplitudes()[0], (theta / 2.0).cos(), -(theta / 2.0).sin()));
    }

    #[test]
    fn cnot_uses_wire_zero_as_msb() {
        // |10> -> |11>
        let mut s = StateVector::<f64>::basis(2, 0b10).unwrap();
        s.apply(&Gate::Cnot {
            control: 0,
            target: 1,
        })
        .unwrap();
        assert!(close(s.amplitudes()[0b11], 1.0, 0.0));
    }

    #[test]
    fn wire_validation() {
        let mut s = StateVector::<f64>::zero(2).unwrap();
        assert!(matches!(
            s.apply(&Gate::Hadamard(2)),
            Err(Error::WireOutOfRange { .. })
        ));
        assert!(s
            .apply(&Gate::Cnot {
                control: 1,
                target: 1
            })
            .is_err());
    }

    #[test]
    fn expectations() {
        let z: PauliSum<f64> = parse_pauli_sum("Z0").unwrap();
        assert!((StateVector::zero(1).unwrap().expectation(&z).unwrap() - 1.0).abs() < EPS);
        assert!(StateVector::plus(1).unwrap().expectation(&z).unwrap().abs() < EPS);
        let h: PauliSum<f64> = parse_pauli_sum("X0 + X1 + Y1").unwrap();
        let e = StateVector::plus(2).unwrap().expectation(&h).unwrap();
        assert!((e - 2.0).abs() < EPS);
        let wide: PauliSum<f64> = parse_pauli_sum("Z2").unwrap();
        assert!(StateVector::<f64>::zero(2).unwrap().expectation(&wide).is_err());
    }

    #[test]
    fn sampled_expectations() {
        let z: PauliSum<f64> = parse_pauli_sum("Z0").unwrap();
        let x: PauliSum<f64> = parse_pauli_sum("X0").unwrap();
        let zero = StateVector::<f64>::zero(1).unwrap();
        for shots in [1, 7, 1000] {
            assert_eq!(zero.expectation_sampled(&z, shots, 3).unwrap(), 1.0);
        }
        let plus = StateVector::<f64>::plus(1).unwrap();
        assert!(plus.expectation_sampled(&z, 100_000, 11).unwrap().abs() < 0.02);
        assert!(zero.expectation_sampled(&x, 10_000, 5).unwrap().abs() < 0.03);
        assert_eq!(
            plus.expectation_sampled(&z, 500, 42).unwrap(),
            plus.expectation_sampled(&z, 500, 42).unwrap()
        );
        assert!(zero.expectation_sampled(&z, 0, 1).is_err());
    }

    #[test]
    fn dense_application() {
        use crate::linalg::{expm_skew_hermitian, identity};
        let mut s = StateVector::<f64>::plus(1).unwrap();
        let before = s.clone();
        s.apply_dense(&DenseUnitary::identity(2)).unwrap();
        assert_eq!(s, before);

        let x = crate::pauli::word_to_dense::<f64>(&PauliWord::single(1, 0, Letter::X).unwrap())
            .unwrap();
        let mut s = StateVector::<f64>::zero(1).unwrap();
        s.apply_dense(&DenseUnitary::new(x, 1e-12).unwrap()).unwrap();
        assert!(close(s.amplitudes()[1], 1.0, 0.0));

        // exp(iεY)|0⟩ = cos ε |0⟩ − sin ε |1⟩ at ε = π/4
        let y = crate::pauli::word_to_dense::<f64>(&PauliWord::single(1, 0, Letter::Y).unwrap())
            .unwrap();
        let eps = std::f64::consts::FRAC_PI_4;
        let omega = y.map(|z| z * cplx(0.0, eps));
        let u = expm_skew_hermitian(&omega).unwrap();
        let mut s = StateVector::<f64>::zero(1).unwrap();
        s.apply_dense(&u).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(s.amplitudes()[0], r, 0.0) && close(s.amplitudes()[1], -r, 0.0));

        let mut wrong = StateVector::<f64>::zero(2).unwrap();
        assert!(wrong.apply_dense(&DenseUnitary::identity(2)).is_err());
        let scaled = identity::<f64>(2).map(|z| z * cplx(1.1, 0.0));
        assert!(DenseUnitary::new(scaled, 1e-10).is_err());
    }
}

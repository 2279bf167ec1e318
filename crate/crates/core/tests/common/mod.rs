#![allow(dead_code)]

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use riemflow::pauli::{Letter, PauliTerm};
use riemflow::{PauliSum64, PauliWord, StateVector64};

pub type C = Complex<f64>;
pub type M = DMatrix<C>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_state(n: usize, rng: &mut ChaCha8Rng) -> StateVector64 {
    let amps = (0..1usize << n)
        .map(|_| C::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    StateVector64::from_amplitudes(n, amps).unwrap()
}

pub fn random_word(n: usize, rng: &mut ChaCha8Rng) -> PauliWord {
    loop {
        let mask = (1u64 << n) - 1;
        let w = PauliWord::new(n, rng.random::<u64>() & mask, rng.random::<u64>() & mask).unwrap();
        if !w.is_identity() {
            return w;
        }
    }
}

/// Random Hamiltonian with `terms` Pauli terms and N(0,1) coefficients.
pub fn random_hamiltonian(n: usize, terms: usize, rng: &mut ChaCha8Rng) -> PauliSum64 {
    let t: Vec<_> = (0..terms)
        .map(|_| PauliTerm::new(StandardNormal.sample(rng), random_word(n, rng)))
        .collect();
    PauliSum64::new(n, t).unwrap()
}

fn pauli_2x2(letter: Option<Letter>) -> M {
    let (o, z, i) = (C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 1.0));
    match letter {
        None => M::from_row_slice(2, 2, &[o, z, z, o]),
        Some(Letter::X) => M::from_row_slice(2, 2, &[z, o, o, z]),
        Some(Letter::Y) => M::from_row_slice(2, 2, &[z, -i, i, z]),
        Some(Letter::Z) => M::from_row_slice(2, 2, &[o, z, z, -o]),
    }
}

/// Kronecker-product matrix with wire 0 as the leftmost factor.
pub fn kron_word(w: &PauliWord) -> M {
    let mut m = M::from_element(1, 1, C::new(1.0, 0.0));
    for q in 0..w.n_qubits() {
        m = m.kronecker(&pauli_2x2(w.letter(q)));
    }
    m
}

pub fn kron_sum(h: &PauliSum64) -> M {
    let d = 1usize << h.n_qubits();
    let mut m = M::zeros(d, d);
    for t in h.terms() {
        m += kron_word(&t.word) * C::new(t.coefficient, 0.0);
    }
    m
}

pub fn column(s: &StateVector64) -> M {
    M::from_column_slice(s.dim(), 1, s.amplitudes())
}

pub fn every_word(n: usize) -> Vec<PauliWord> {
    let d = 1u64 << n;
    let mut out = Vec::new();
    for x in 0..d {
        for z in 0..d {
            if x | z != 0 {
                out.push(PauliWord::new(n, x, z).unwrap());
            }
        }
    }
    out
}

//! Disordered physical models and their exact diagonalization: the
//! spin Hamiltonian with static disorder, the 1D Anderson chain, and the
//! quantum smallworld network, plus parity-sector and band bookkeeping.

mod anderson;
mod eigen;
mod spin;

pub use anderson::{build_anderson, build_smallworld, AndersonParams, SmallworldParams, SmallworldMatrix, Tridiagonal};
pub use eigen::{
    central_eigenstates, eigensolve_symmetric, select_indices, tridiagonal_states_near,
    EigenstateCriterion, Spectrum,
};
pub use spin::{build_spin_hamiltonian, SpinDisorder, SpinModelParams};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::Statevector;

/// Splits [0, 2^n) by popcount parity: (even list, odd list), each of
/// size N/2, both ascending.
pub fn parity_sectors(n: usize) -> (Vec<usize>, Vec<usize>) {
    let dim = 1usize << n;
    let mut even = Vec::with_capacity(dim / 2);
    let mut odd = Vec::with_capacity(dim / 2);
    for i in 0..dim {
        if i.count_ones() % 2 == 0 {
            even.push(i);
        } else {
            odd.push(i);
        }
    }
    (even, odd)
}

/// All register indices with exactly `n_b` qubits in |1>; size binomial(n, n_b).
pub fn band_basis(n: usize, n_b: usize) -> Vec<usize> {
    (0..1usize << n)
        .filter(|i| i.count_ones() as usize == n_b)
        .collect()
}

/// Scatters a sector-coordinate vector back to the full 2^n register.
pub fn embed_sector_vector(vec: &[f64], sector: &[usize], n: usize) -> Result<Statevector> {
    if vec.len() != sector.len() {
        return Err(Error::domain(format!(
            "sector vector length {} does not match sector size {}",
            vec.len(),
            sector.len()
        )));
    }
    let dim = 1usize << n;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    for (&x, &idx) in vec.iter().zip(sector) {
        if idx >= dim {
            return Err(Error::domain(format!("sector index {idx} out of range {dim}")));
        }
        amps[idx] = Complex64::new(x, 0.0);
    }
    Statevector::new(n, amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::ipr;

    #[test]
    fn parity_sectors_n2() {
        let (even, odd) = parity_sectors(2);
        assert_eq!(even, vec![0, 3]);
        assert_eq!(odd, vec![1, 2]);
    }

    #[test]
    fn sector_sizes_and_per_qubit_balance() {
        for n in 2..=12 {
            let dim = 1usize << n;
            let (even, odd) = parity_sectors(n);
            assert_eq!(even.len(), dim / 2);
            assert_eq!(odd.len(), dim / 2);
            // within each sector, each qubit has exactly N/4 indices with the bit set
            for sector in [&even, &odd] {
                for r in 0..n {
                    let set = sector.iter().filter(|&&i| i & (1 << r) != 0).count();
                    assert_eq!(set, dim / 4, "n={n} r={r}");
                }
            }
        }
    }

    #[test]
    fn band_basis_examples() {
        assert_eq!(band_basis(4, 0), vec![0]);
        assert_eq!(band_basis(3, 1), vec![1, 2, 4]);
        for n in 1..=16usize {
            for n_b in 0..=n {
                let size = band_basis(n, n_b).len();
                // binomial via multiplicative formula
                let mut binom = 1usize;
                for k in 0..n_b {
                    binom = binom * (n - k) / (k + 1);
                }
                assert_eq!(size, binom, "n={n} n_b={n_b}");
            }
        }
    }

    #[test]
    fn embed_even_sector_basis() {
        let (even, _) = parity_sectors(2);
        let psi = embed_sector_vector(&[1.0, 0.0], &even, 2).unwrap();
        assert_eq!(psi.amplitudes()[0].re, 1.0);
    }

    #[test]
    fn embed_preserves_ipr() {
        let (_, odd) = parity_sectors(3);
        let v = [0.5f64, 0.5, 0.5, 0.5];
        let psi = embed_sector_vector(&v, &odd, 3).unwrap();
        assert!((ipr(&psi).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn embed_length_mismatch() {
        let (even, _) = parity_sectors(2);
        assert!(embed_sector_vector(&[1.0], &even, 2).is_err());
    }
}

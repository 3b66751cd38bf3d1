//! The disordered spin Hamiltonian
//! `H = sum_i Gamma_i sigma_i^z + sum_{i<j} J_ij sigma_i^x sigma_j^x`
//! in the register basis.
//!
//! Sign convention: `sigma^z |0> = +|0>`, so basis state `i` carries the
//! diagonal energy `sum_r Gamma_r (-1)^{i_r}`. The interaction couples
//! states differing in exactly two bits, which conserves popcount parity.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Dense diagonalization beyond this many qubits is not worth waiting for.
pub const DESK_LIMIT_QUBITS: usize = 13;

#[derive(Debug, Clone, Copy)]
pub struct SpinModelParams {
    pub n: usize,
    /// Center of the qubit energy-splitting interval.
    pub delta0: f64,
    /// Width of the splitting interval: Gamma_i uniform in [delta0 - delta/2, delta0 + delta/2].
    pub delta: f64,
    /// Coupling bound: J_ij uniform in [-J, J].
    pub j: f64,
}

impl SpinModelParams {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::domain("spin model needs n >= 2"));
        }
        if self.n > DESK_LIMIT_QUBITS {
            return Err(Error::resource(format!(
                "n={} exceeds the dense-diagonalization limit of {DESK_LIMIT_QUBITS} qubits",
                self.n
            )));
        }
        if self.delta < 0.0 || self.j < 0.0 {
            return Err(Error::domain("delta and J must be non-negative"));
        }
        Ok(())
    }
}

/// One disorder realization: the drawn splittings and couplings.
#[derive(Debug, Clone)]
pub struct SpinDisorder {
    pub n: usize,
    pub gamma: Vec<f64>,
    /// Couplings j_ab for a < b, indexed lexicographically.
    couplings: Vec<f64>,
}

impl SpinDisorder {
    /// Draws Gamma_i then J_ij (i < j, lexicographic) from `rng`.
    pub fn draw(params: &SpinModelParams, rng: &mut ChaCha8Rng) -> Result<Self> {
        params.validate()?;
        let n = params.n;
        let gamma: Vec<f64> = (0..n)
            .map(|_| {
                if params.delta == 0.0 {
                    params.delta0
                } else {
                    rng.gen_range(params.delta0 - params.delta / 2.0..params.delta0 + params.delta / 2.0)
                }
            })
            .collect();
        let mut couplings = Vec::with_capacity(n * (n - 1) / 2);
        for _a in 0..n {
            for _b in (_a + 1)..n {
                couplings.push(if params.j == 0.0 {
                    0.0
                } else {
                    rng.gen_range(-params.j..params.j)
                });
            }
        }
        Ok(SpinDisorder { n, gamma, couplings })
    }

    fn coupling(&self, a: usize, b: usize) -> f64 {
        debug_assert!(a < b && b < self.n);
        // offset of pair (a, b) in lexicographic order over a < b
        let before: usize = (0..a).map(|x| self.n - 1 - x).sum();
        self.couplings[before + (b - a - 1)]
    }

    /// Diagonal energy of basis state `i`.
    pub fn diagonal(&self, i: usize) -> f64 {
        (0..self.n)
            .map(|r| {
                if i & (1 << r) == 0 {
                    self.gamma[r]
                } else {
                    -self.gamma[r]
                }
            })
            .sum()
    }

    /// The full N x N matrix in the register basis.
    pub fn full_matrix(&self) -> DMatrix<f64> {
        let dim = 1usize << self.n;
        let mut h = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            h[(i, i)] = self.diagonal(i);
            for a in 0..self.n {
                for b in (a + 1)..self.n {
                    let partner = i ^ ((1 << a) | (1 << b));
                    h[(i, partner)] = self.coupling(a, b);
                }
            }
        }
        h
    }

    /// The block of H restricted to the given (parity-sector) index list.
    pub fn sector_matrix(&self, sector: &[usize]) -> DMatrix<f64> {
        let dim = 1usize << self.n;
        let mut pos = vec![usize::MAX; dim];
        for (p, &idx) in sector.iter().enumerate() {
            pos[idx] = p;
        }
        let s = sector.len();
        let mut h = DMatrix::zeros(s, s);
        for (p, &i) in sector.iter().enumerate() {
            h[(p, p)] = self.diagonal(i);
            for a in 0..self.n {
                for b in (a + 1)..self.n {
                    let partner = i ^ ((1 << a) | (1 << b));
                    let q = pos[partner];
                    if q != usize::MAX {
                        h[(p, q)] = self.coupling(a, b);
                    }
                }
            }
        }
        h
    }
}

/// Draws a disorder realization and builds the full Hamiltonian matrix.
pub fn build_spin_hamiltonian(
    params: &SpinModelParams,
    rng: &mut ChaCha8Rng,
) -> Result<DMatrix<f64>> {
    Ok(SpinDisorder::draw(params, rng)?.full_matrix())
}

//! State vectors on `n` qubits and bit-indexed partitions.
//!
//! Index convention (fixed once for the whole crate): a basis index
//! `i = sum_r i_r 2^r`, so qubit `r` is bit `r` of the integer index
//! (little-endian register order).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for the unit-norm invariant of a [`Statevector`].
pub const NORM_TOL: f64 = 1e-12;

/// A pure state of `n_qubits` qubits: `2^n` complex amplitudes, unit norm.
///
/// Immutable after construction; cheap to share between threads.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl Statevector {
    /// Wraps an amplitude array that is already normalized.
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n_qubits < 1 {
            return Err(Error::domain("statevector needs at least one qubit"));
        }
        if amplitudes.len() != 1usize << n_qubits {
            return Err(Error::domain(format!(
                "expected 2^{} = {} amplitudes, got {}",
                n_qubits,
                1usize << n_qubits,
                amplitudes.len()
            )));
        }
        let norm2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > 1e-9 {
            return Err(Error::domain(format!(
                "amplitudes not normalized: |psi|^2 = {norm2}"
            )));
        }
        Ok(Statevector {
            n_qubits,
            amplitudes,
        })
    }

    /// Normalizes an arbitrary non-zero amplitude array into a state.
    pub fn normalized(n_qubits: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm2 <= 0.0 || !norm2.is_finite() {
            return Err(Error::domain("cannot normalize a zero vector"));
        }
        let inv = 1.0 / norm2.sqrt();
        for a in &mut amplitudes {
            *a *= inv;
        }
        Statevector::new(n_qubits, amplitudes)
    }

    /// The computational basis state `|i>`.
    pub fn basis(n_qubits: usize, i: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if i >= dim {
            return Err(Error::domain(format!("basis index {i} out of range {dim}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[i] = Complex64::new(1.0, 0.0);
        Statevector::new(n_qubits, amps)
    }

    /// A state from real amplitudes (e.g. an eigenvector), normalized.
    pub fn from_real(n_qubits: usize, values: &[f64]) -> Result<Self> {
        Statevector::normalized(
            n_qubits,
            values.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Hilbert space dimension `N = 2^n`.
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Indices carrying non-negligible weight.
    pub fn support(&self, eps: f64) -> Vec<usize> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > eps)
            .map(|(i, _)| i)
            .collect()
    }
}

/// The two subvectors obtained by splitting a state on the value of one
/// index bit: `u` collects amplitudes whose index has bit `qubit` clear,
/// `v` those with it set, both in ascending index order.
#[derive(Debug, Clone)]
pub struct Partition {
    pub qubit: usize,
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
}

/// Position of index `i` inside `u` (or `v`) once bit `r` is removed.
#[inline]
pub fn partition_position(i: usize, r: usize) -> usize {
    let low = i & ((1usize << r) - 1);
    low | ((i >> (r + 1)) << r)
}

/// Splits `psi` into the pair `(u, v)` for qubit `r`.
pub fn partition_by_qubit(psi: &Statevector, r: usize) -> Result<Partition> {
    let n = psi.n_qubits();
    if r >= n {
        return Err(Error::domain(format!("qubit {r} out of range for n={n}")));
    }
    let half = psi.dim() / 2;
    let mut u = vec![Complex64::new(0.0, 0.0); half];
    let mut v = vec![Complex64::new(0.0, 0.0); half];
    let bit = 1usize << r;
    for (i, &a) in psi.amplitudes().iter().enumerate() {
        let p = partition_position(i, r);
        if i & bit == 0 {
            u[p] = a;
        } else {
            v[p] = a;
        }
    }
    Ok(Partition { qubit: r, u, v })
}

/// Sesquilinear inner product `<a|b>` (conjugate on the first argument).
pub fn inner_product(a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
    if a.len() != b.len() {
        return Err(Error::domain(format!(
            "inner product length mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(a.iter().zip(b).map(|(x, y)| x.conj() * y).sum())
}

/// Gram determinant `<u|u><v|v> - |<u|v>|^2`.
///
/// For the two halves of a normalized state this lies in `[0, 1/4]`.
pub fn gram_determinant(u: &[Complex64], v: &[Complex64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::domain(format!(
            "gram determinant length mismatch: {} vs {}",
            u.len(),
            v.len()
        )));
    }
    let uu: f64 = u.iter().map(|a| a.norm_sqr()).sum();
    let vv: f64 = v.iter().map(|a| a.norm_sqr()).sum();
    let uv = inner_product(u, v)?;
    Ok(uu * vv - uv.norm_sqr())
}

/// The three scalars (plus fourth moments) of one partition, computed in a
/// single O(N) pass without materializing `u` and `v`:
/// `uu = <u|u>`, `vv = <v|v>`, `uv = <u|v>`, and the quartic sums
/// `u4 = sum |u_i|^4`, `v4 = sum |v_i|^4`.
#[derive(Debug, Clone, Copy)]
pub struct PartitionScalars {
    pub uu: f64,
    pub vv: f64,
    pub uv: Complex64,
    pub u4: f64,
    pub v4: f64,
}

pub fn partition_scalars(psi: &Statevector, r: usize) -> Result<PartitionScalars> {
    let n = psi.n_qubits();
    if r >= n {
        return Err(Error::domain(format!("qubit {r} out of range for n={n}")));
    }
    let amps = psi.amplitudes();
    let bit = 1usize << r;
    let mut s = PartitionScalars {
        uu: 0.0,
        vv: 0.0,
        uv: Complex64::new(0.0, 0.0),
        u4: 0.0,
        v4: 0.0,
    };
    // walk u-indices; the paired v-index is i | bit
    for i in 0..amps.len() {
        if i & bit == 0 {
            let a = amps[i];
            let b = amps[i | bit];
            let an = a.norm_sqr();
            let bn = b.norm_sqr();
            s.uu += an;
            s.vv += bn;
            s.u4 += an * an;
            s.v4 += bn * bn;
            s.uv += a.conj() * b;
        }
    }
    Ok(s)
}

//! Entanglement and localization measures: Meyer-Wallach Q (two routes),
//! inverse participation ratio, single-qubit purities, and the
//! internal/cross correlators of the bit partitions.

use crate::error::{Error, Result};
use crate::state::{partition_scalars, Statevector};

/// Everything measured on one state in a single pass.
#[derive(Debug, Clone)]
pub struct MeasureReport {
    /// Meyer-Wallach entanglement, in [0, 1].
    pub q: f64,
    /// Inverse participation ratio, in [1, N].
    pub ipr: f64,
    /// 1/ipr.
    pub inv_ipr: f64,
    /// Per-qubit purities R_r, each in [1/2, 1].
    pub purities: Vec<f64>,
    /// Internal correlator C_xx (averaged over partitions and pairs).
    pub cxx: f64,
    /// Cross correlator C_xy.
    pub cxy: f64,
}

/// Inverse participation ratio `(sum |psi_i|^2)^2 / sum |psi_i|^4`.
///
/// 1 for a basis vector, M for a vector uniformly spread over M states.
pub fn ipr(psi: &Statevector) -> Result<f64> {
    let mut s2 = 0.0;
    let mut s4 = 0.0;
    for a in psi.amplitudes() {
        let p = a.norm_sqr();
        s2 += p;
        s4 += p * p;
    }
    if s4 <= 0.0 {
        return Err(Error::domain("ipr of a zero vector"));
    }
    Ok(s2 * s2 / s4)
}

/// Purity of qubit `r`: `R_r = <u|u>^2 + <v|v>^2 + 2|<u|v>|^2 = 1 - 2 G(u, v)`.
pub fn qubit_purity(psi: &Statevector, r: usize) -> Result<f64> {
    let s = partition_scalars(psi, r)?;
    Ok(s.uu * s.uu + s.vv * s.vv + 2.0 * s.uv.norm_sqr())
}

/// Which of the two algebraically equivalent routes computes Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QRoute {
    /// `Q = (4/n) sum_r G(u^r, v^r)` (default).
    Gram,
    /// `Q = 2 (1 - (1/n) sum_r R_r)`.
    Purity,
}

/// Meyer-Wallach entanglement through the Gram-determinant route.
pub fn meyer_wallach_q(psi: &Statevector) -> Result<f64> {
    meyer_wallach_q_via(psi, QRoute::Gram)
}

pub fn meyer_wallach_q_via(psi: &Statevector, route: QRoute) -> Result<f64> {
    let n = psi.n_qubits();
    let mut acc = 0.0;
    for r in 0..n {
        let s = partition_scalars(psi, r)?;
        match route {
            QRoute::Gram => {
                acc += s.uu * s.vv - s.uv.norm_sqr();
            }
            QRoute::Purity => {
                acc += s.uu * s.uu + s.vv * s.vv + 2.0 * s.uv.norm_sqr();
            }
        }
    }
    Ok(match route {
        QRoute::Gram => 4.0 * acc / n as f64,
        QRoute::Purity => 2.0 * (1.0 - acc / n as f64),
    })
}

/// The correlators `(C_xx, C_xy)`.
///
/// `C_xx` averages `(|u_i|^2 |u_j|^2 + |v_i|^2 |v_j|^2)/2` over the n
/// partitions and ordered pairs `i != j`; `C_xy` averages
/// `|u_i|^2 |v_j|^2` over all `(i, j)`. Both are computed in O(N) per
/// partition from the identity `sum_{i!=j} a_i a_j = (sum a)^2 - sum a^2`.
pub fn correlators(psi: &Statevector) -> Result<(f64, f64)> {
    let n = psi.n_qubits();
    if n < 2 {
        return Err(Error::domain(
            "correlators need n >= 2 (no i != j pairs in half-vectors of length 1)",
        ));
    }
    let half = (psi.dim() / 2) as f64;
    let pair_count = half * (half - 1.0);
    let mut cxx = 0.0;
    let mut cxy = 0.0;
    for r in 0..n {
        let s = partition_scalars(psi, r)?;
        cxx += 0.5 * ((s.uu * s.uu - s.u4) + (s.vv * s.vv - s.v4)) / pair_count;
        cxy += s.uu * s.vv / (half * half);
    }
    Ok((cxx / n as f64, cxy / n as f64))
}

/// Full report: Q (Gram route), IPR, purities, correlators.
pub fn measure(psi: &Statevector) -> Result<MeasureReport> {
    let n = psi.n_qubits();
    let half = (psi.dim() / 2) as f64;
    let pair_count = half * (half - 1.0);
    let mut gram_sum = 0.0;
    let mut purities = Vec::with_capacity(n);
    let mut cxx = 0.0;
    let mut cxy = 0.0;
    for r in 0..n {
        let s = partition_scalars(psi, r)?;
        let g = s.uu * s.vv - s.uv.norm_sqr();
        gram_sum += g;
        purities.push(1.0 - 2.0 * g);
        if n >= 2 {
            cxx += 0.5 * ((s.uu * s.uu - s.u4) + (s.vv * s.vv - s.v4)) / pair_count;
            cxy += s.uu * s.vv / (half * half);
        }
    }
    let xi = ipr(psi)?;
    Ok(MeasureReport {
        q: 4.0 * gram_sum / n as f64,
        ipr: xi,
        inv_ipr: 1.0 / xi,
        purities,
        cxx: cxx / n as f64,
        cxy: cxy / n as f64,
    })
}

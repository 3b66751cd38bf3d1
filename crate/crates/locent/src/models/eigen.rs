//! Symmetric eigensolvers and eigenstate selection.
//!
//! Dense problems go through LAPACK's divide-and-conquer driver; for the
//! tridiagonal Anderson chain only a handful of eigenpairs near a target
//! energy are needed, so those use bisection plus inverse iteration.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::lapack;
use crate::models::{embed_sector_vector, Tridiagonal};
use crate::state::Statevector;

/// Full spectrum of a real symmetric matrix: ascending eigenvalues and the
/// matching orthonormal eigenvector columns. `sector_map`, when present,
/// maps sector coordinates to full-register indices for embedding.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<f64>,
    pub sector_map: Option<Vec<usize>>,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        self.eigenvectors.column(k).iter().copied().collect()
    }
}

/// Full eigendecomposition of a real symmetric matrix.
pub fn eigensolve_symmetric(matrix: &DMatrix<f64>) -> Result<Spectrum> {
    let n = matrix.nrows();
    if n != matrix.ncols() {
        return Err(Error::domain("matrix is not square"));
    }
    let mut max_abs = 0.0f64;
    let mut max_asym = 0.0f64;
    for i in 0..n {
        for j in 0..i {
            max_abs = max_abs.max(matrix[(i, j)].abs());
            max_asym = max_asym.max((matrix[(i, j)] - matrix[(j, i)]).abs());
        }
        max_abs = max_abs.max(matrix[(i, i)].abs());
    }
    if max_asym > 1e-12 * max_abs.max(1.0) {
        return Err(Error::domain(format!(
            "matrix is not symmetric (max asymmetry {max_asym})"
        )));
    }
    let mut a: Vec<f64> = matrix.as_slice().to_vec();
    let eigenvalues = lapack::dsyevd(&mut a, n)
        .map_err(|info| Error::numeric(format!("dsyevd failed with info={info}")))?;
    let eigenvectors = DMatrix::from_vec(n, n, a);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
        sector_map: None,
    })
}

/// How to pick the "central" eigenstates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EigenstateCriterion {
    /// `count` states centered on the midpoint of the sorted spectrum.
    MedianIndex,
    /// `count` states with smallest |E_k - E0|.
    NearestEnergy(f64),
}

/// Selects eigenstates from a spectrum and returns them as register
/// states (embedding through `sector_map` when present; otherwise the
/// spectrum dimension must be a power of two).
pub fn central_eigenstates(
    spectrum: &Spectrum,
    count: usize,
    criterion: EigenstateCriterion,
) -> Result<Vec<Statevector>> {
    let picked = select_indices(spectrum, count, criterion)?;
    picked
        .into_iter()
        .map(|k| spectrum_state(spectrum, k))
        .collect()
}

/// Indices of the selected eigenstates, ascending.
pub fn select_indices(
    spectrum: &Spectrum,
    count: usize,
    criterion: EigenstateCriterion,
) -> Result<Vec<usize>> {
    let dim = spectrum.dim();
    if count > dim {
        return Err(Error::domain(format!(
            "requested {count} eigenstates from a spectrum of dimension {dim}"
        )));
    }
    let mut picked: Vec<usize> = match criterion {
        EigenstateCriterion::MedianIndex => {
            let start = (dim - count) / 2;
            (start..start + count).collect()
        }
        EigenstateCriterion::NearestEnergy(e0) => {
            let mut order: Vec<usize> = (0..dim).collect();
            order.sort_by(|&a, &b| {
                let da = (spectrum.eigenvalues[a] - e0).abs();
                let db = (spectrum.eigenvalues[b] - e0).abs();
                da.partial_cmp(&db).unwrap().then(a.cmp(&b))
            });
            order.truncate(count);
            order
        }
    };
    picked.sort_unstable();
    Ok(picked)
}

fn spectrum_state(spectrum: &Spectrum, k: usize) -> Result<Statevector> {
    let v = spectrum.eigenvector(k);
    match &spectrum.sector_map {
        Some(map) => {
            let n = map.len().trailing_zeros() as usize + 1;
            embed_sector_vector(&v, map, n)
        }
        None => {
            let dim = v.len();
            if !dim.is_power_of_two() {
                return Err(Error::domain(format!(
                    "spectrum dimension {dim} is not a register size and no sector map is set"
                )));
            }
            Statevector::from_real(dim.trailing_zeros() as usize, &v)
        }
    }
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`
/// (Sturm count with the usual pivot recurrence).
fn sturm_count(tri: &Tridiagonal, x: f64) -> usize {
    let tiny = f64::MIN_POSITIVE;
    let mut count = 0usize;
    let mut d = tri.diag[0] - x;
    if d < 0.0 {
        count += 1;
    }
    for i in 1..tri.dim() {
        let mut denom = d;
        if denom.abs() < tiny {
            denom = if denom < 0.0 { -tiny } else { tiny };
        }
        d = tri.diag[i] - x - tri.sub[i - 1] * tri.sub[i - 1] / denom;
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `count` eigenpairs of a symmetric tridiagonal matrix nearest to
/// energy `e0`, as `(eigenvalue, unit eigenvector)` sorted by eigenvalue.
pub fn tridiagonal_states_near(
    tri: &Tridiagonal,
    count: usize,
    e0: f64,
) -> Result<Vec<(f64, Vec<f64>)>> {
    let dim = tri.dim();
    if count > dim {
        return Err(Error::domain(format!(
            "requested {count} eigenpairs from a {dim}-dimensional matrix"
        )));
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    // index window around the target: eigenvalues k0-count+1 ..= k0+count
    // (1-based) are guaranteed to contain the `count` nearest ones
    let k0 = sturm_count(tri, e0); // eigenvalues below e0
    let il = k0.saturating_sub(count - 1).max(1).min(dim);
    let iu = (k0 + count).min(dim);
    let (w, iblock, isplit) = lapack::dstebz(&tri.diag, &tri.sub, il, iu)
        .map_err(|info| Error::numeric(format!("dstebz failed with info={info}")))?;
    let z = lapack::dstein(&tri.diag, &tri.sub, &w, &iblock, &isplit)
        .map_err(|info| Error::numeric(format!("dstein failed with info={info}")))?;
    // rank candidates by distance to e0, keep `count`, restore energy order
    let mut order: Vec<usize> = (0..w.len()).collect();
    order.sort_by(|&a, &b| {
        (w[a] - e0)
            .abs()
            .partial_cmp(&(w[b] - e0).abs())
            .unwrap()
            .then(a.cmp(&b))
    });
    order.truncate(count);
    order.sort_unstable();
    Ok(order
        .into_iter()
        .map(|k| (w[k], z[k * dim..(k + 1) * dim].to_vec()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use rand::Rng;

    #[test]
    fn two_by_two_analytic() {
        let m = DMatrix::from_row_slice(2, 2, &[3.0, 0.5, 0.5, 3.0]);
        let s = eigensolve_symmetric(&m).unwrap();
        assert!((s.eigenvalues[0] - 2.5).abs() < 1e-12);
        assert!((s.eigenvalues[1] - 3.5).abs() < 1e-12);
    }

    #[test]
    fn identity_matrix() {
        let m = DMatrix::identity(6, 6);
        let s = eigensolve_symmetric(&m).unwrap();
        for v in &s.eigenvalues {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn non_symmetric_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(eigensolve_symmetric(&m).is_err());
    }

    #[test]
    fn random_symmetric_reconstruction_and_invariants() {
        let mut rng = crate::rng::RngHandle::new(7, 0).rng();
        let n = 64usize;
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let x: f64 = rng.gen::<f64>() - 0.5;
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
        }
        let s = eigensolve_symmetric(&m).unwrap();
        // ascending order
        for k in 1..n {
            assert!(s.eigenvalues[k] >= s.eigenvalues[k - 1]);
        }
        // orthonormality
        let vtv = s.eigenvectors.transpose() * &s.eigenvectors;
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((vtv[(i, j)] - want).abs() < 1e-10);
            }
        }
        // reconstruction H = V diag(w) V^T to relative Frobenius 1e-8
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(s.eigenvalues.clone()));
        let rebuilt = &s.eigenvectors * d * s.eigenvectors.transpose();
        let err = (&rebuilt - &m).norm() / m.norm();
        assert!(err < 1e-8, "reconstruction error {err}");
        // residual per pair
        let hf = m.norm();
        for k in 0..n {
            let v = s.eigenvectors.column(k);
            let r = (&m * v - s.eigenvalues[k] * v).norm();
            assert!(r <= 1e-8 * hf);
        }
    }

    #[test]
    fn central_selection_rules() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![-3.0, -1.0, 2.0, 5.0]));
        let s = eigensolve_symmetric(&m).unwrap();
        let near = select_indices(&s, 1, EigenstateCriterion::NearestEnergy(0.0)).unwrap();
        assert_eq!(s.eigenvalues[near[0]], -1.0);
        let all = select_indices(&s, 4, EigenstateCriterion::MedianIndex).unwrap();
        assert_eq!(all, vec![0, 1, 2, 3]);
        assert!(select_indices(&s, 5, EigenstateCriterion::MedianIndex).is_err());
    }

    #[test]
    fn tridiagonal_matches_dense_solver() {
        let mut rng = crate::rng::RngHandle::new(9, 0).rng();
        let dim = 64usize;
        let tri = Tridiagonal {
            diag: (0..dim).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect(),
            sub: vec![1.0; dim - 1],
        };
        let dense = eigensolve_symmetric(&tri.to_dense()).unwrap();
        let states = tridiagonal_states_near(&tri, 10, 0.0).unwrap();
        // the returned eigenvalues must be the 10 dense eigenvalues nearest 0
        let mut want: Vec<f64> = dense.eigenvalues.clone();
        want.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap());
        let mut want: Vec<f64> = want[..10].to_vec();
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for ((e, v), w) in states.iter().zip(&want) {
            assert!((e - w).abs() < 1e-9, "eigenvalue {e} vs {w}");
            // residual check
            let mut r2 = 0.0;
            for i in 0..dim {
                let mut hv = tri.diag[i] * v[i];
                if i > 0 {
                    hv += tri.sub[i - 1] * v[i - 1];
                }
                if i + 1 < dim {
                    hv += tri.sub[i] * v[i + 1];
                }
                r2 += (hv - e * v[i]).powi(2);
            }
            assert!(r2.sqrt() < 1e-8, "residual {}", r2.sqrt());
        }
    }
}

//! The 1D Anderson chain (symmetric tridiagonal with Gaussian on-site
//! disorder and unit nearest-neighbor coupling) and its smallworld
//! extension with `round(pN)` random long-range links.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct AndersonParams {
    /// Chain length is N = 2^n sites.
    pub n: usize,
    /// Standard deviation of the Gaussian on-site energies.
    pub w: f64,
}

impl AndersonParams {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::domain("anderson chain needs n >= 2"));
        }
        if self.w < 0.0 {
            return Err(Error::domain("disorder strength w must be non-negative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SmallworldParams {
    pub base: AndersonParams,
    /// Link density: round(pN) extra unit couplings between random vertices.
    pub p: f64,
}

/// Symmetric tridiagonal matrix: diagonal plus first off-diagonal.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub sub: Vec<f64>,
}

impl Tridiagonal {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
        }
        for i in 0..n - 1 {
            m[(i, i + 1)] = self.sub[i];
            m[(i + 1, i)] = self.sub[i];
        }
        m
    }
}

/// Anderson chain plus optional long-range links.
#[derive(Debug, Clone)]
pub struct SmallworldMatrix {
    pub chain: Tridiagonal,
    /// Extra unit couplings (a, b) with a < b and b > a + 1.
    pub links: Vec<(usize, usize)>,
}

impl SmallworldMatrix {
    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = self.chain.to_dense();
        for &(a, b) in &self.links {
            m[(a, b)] = 1.0;
            m[(b, a)] = 1.0;
        }
        m
    }
}

/// Draws the on-site energies and builds the chain.
pub fn build_anderson(params: &AndersonParams, rng: &mut ChaCha8Rng) -> Result<Tridiagonal> {
    params.validate()?;
    let dim = 1usize << params.n;
    let diag: Vec<f64> = if params.w == 0.0 {
        vec![0.0; dim]
    } else {
        let normal = Normal::new(0.0, params.w)
            .map_err(|e| Error::domain(format!("bad disorder width: {e}")))?;
        (0..dim).map(|_| normal.sample(rng)).collect()
    };
    Ok(Tridiagonal {
        diag,
        sub: vec![1.0; dim - 1],
    })
}

/// Chain plus round(pN) distinct random links, drawn after the on-site
/// energies. Self-loops, existing nearest-neighbor pairs, and duplicates
/// are excluded (re-drawn).
pub fn build_smallworld(params: &SmallworldParams, rng: &mut ChaCha8Rng) -> Result<SmallworldMatrix> {
    if params.p < 0.0 {
        return Err(Error::domain("link density p must be non-negative"));
    }
    let chain = build_anderson(&params.base, rng)?;
    let dim = chain.dim();
    let wanted = (params.p * dim as f64).round() as usize;
    let available = dim * (dim - 1) / 2 - (dim - 1);
    if wanted > available {
        return Err(Error::domain(format!(
            "round(pN)={wanted} links exceed the {available} distinct non-chain pairs"
        )));
    }
    let mut links: Vec<(usize, usize)> = Vec::with_capacity(wanted);
    let mut taken = std::collections::HashSet::new();
    while links.len() < wanted {
        let a = rng.gen_range(0..dim);
        let b = rng.gen_range(0..dim);
        let (a, b) = (a.min(b), a.max(b));
        if b <= a + 1 {
            continue; // self-loop or chain edge
        }
        if taken.insert((a, b)) {
            links.push((a, b));
        }
    }
    Ok(SmallworldMatrix { chain, links })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngHandle;

    #[test]
    fn clean_chain_spectrum_is_cosine_band() {
        let mut rng = RngHandle::new(1, 0).rng();
        let tri = build_anderson(&AndersonParams { n: 5, w: 0.0 }, &mut rng).unwrap();
        let spectrum = crate::models::eigensolve_symmetric(&tri.to_dense()).unwrap();
        let dim = 32usize;
        // open chain: E_k = 2 cos(k pi / (N+1)), k = 1..N
        let mut expected: Vec<f64> = (1..=dim)
            .map(|k| 2.0 * (std::f64::consts::PI * k as f64 / (dim as f64 + 1.0)).cos())
            .collect();
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in spectrum.eigenvalues.iter().zip(&expected) {
            assert!((got - want).abs() < 1e-10);
        }
    }

    #[test]
    fn strong_disorder_localizes_central_states() {
        let mut rng = RngHandle::new(2, 0).rng();
        let tri = build_anderson(&AndersonParams { n: 6, w: 10.0 }, &mut rng).unwrap();
        let states = crate::models::tridiagonal_states_near(&tri, 5, 0.0).unwrap();
        for (_e, v) in states {
            let xi: f64 = {
                let s4: f64 = v.iter().map(|x| x.powi(4)).sum();
                1.0 / s4
            };
            assert!(xi < 3.0, "strong disorder should localize, xi={xi}");
        }
    }

    #[test]
    fn smallworld_p0_is_plain_anderson() {
        let p = SmallworldParams {
            base: AndersonParams { n: 5, w: 1.0 },
            p: 0.0,
        };
        let mut rng = RngHandle::new(3, 0).rng();
        let sw = build_smallworld(&p, &mut rng).unwrap();
        assert!(sw.links.is_empty());
        let mut rng2 = RngHandle::new(3, 0).rng();
        let tri = build_anderson(&p.base, &mut rng2).unwrap();
        assert_eq!(sw.chain.diag, tri.diag);
    }

    #[test]
    fn smallworld_links_are_distinct_non_chain_pairs() {
        let p = SmallworldParams {
            base: AndersonParams { n: 6, w: 1.0 },
            p: 0.5,
        };
        let mut rng = RngHandle::new(4, 0).rng();
        let sw = build_smallworld(&p, &mut rng).unwrap();
        assert_eq!(sw.links.len(), 32);
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in &sw.links {
            assert!(b > a + 1);
            assert!(seen.insert((a, b)));
        }
    }

    #[test]
    fn smallworld_link_exhaustion_rejected() {
        let p = SmallworldParams {
            base: AndersonParams { n: 2, w: 1.0 },
            p: 2.0,
        };
        let mut rng = RngHandle::new(5, 0).rng();
        assert!(build_smallworld(&p, &mut rng).is_err());
    }
}

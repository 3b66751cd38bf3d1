//! Seeded samplers for the random-vector families: random-subset states
//! (equal-amplitude or Haar), adjacent windows, exponential-envelope Haar
//! vectors, cosine windows, and support-preserving component shuffles.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::rng::RngHandle;
use crate::state::Statevector;

/// Amplitude profile on the chosen support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmplitudeProfile {
    /// `e^{i theta}/sqrt(M)` with iid uniform phases.
    EqualAmp,
    /// A Haar-random unit vector of dimension M.
    Haar,
}

/// Restriction of support positions to one popcount-parity class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A random-vector family together with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum EnsembleSpec {
    /// M uniformly chosen distinct positions, equal amplitudes, random phases.
    RandomSubsetEqualAmp { m: usize, sector: Option<Parity> },
    /// M uniformly chosen distinct positions carrying a Haar unit vector.
    RandomSubsetHaar { m: usize, sector: Option<Parity> },
    /// Support {c, c+1, ..., c+M-1} mod N with c uniform in [0, N).
    AdjacentWindow { m: usize, profile: AmplitudeProfile },
    /// Full-length Haar vector damped by exp(-|x-c|_cyclic / l), renormalized.
    ExpEnvelopeHaar { loc_length: f64 },
    /// psi_j = A cos(pi j / 2) for c+1 <= j <= c+M (cyclic), zero elsewhere.
    CosineWindow { m: usize },
}

impl EnsembleSpec {
    /// Checks the parameters against register size `n`. With `strict` set,
    /// adjacent windows are additionally held to `M <= N/2`, the domain of
    /// the closed-form predictions they are compared against.
    pub fn validate(&self, n: usize, strict: bool) -> Result<()> {
        let dim = 1usize << n;
        match *self {
            EnsembleSpec::RandomSubsetEqualAmp { m, sector }
            | EnsembleSpec::RandomSubsetHaar { m, sector } => {
                if m < 1 || m > dim {
                    return Err(Error::domain(format!("subset size M={m} outside [1, {dim}]")));
                }
                if sector.is_some() && m > dim / 2 {
                    return Err(Error::domain(format!(
                        "sector-restricted subset M={m} exceeds sector size {}",
                        dim / 2
                    )));
                }
            }
            EnsembleSpec::AdjacentWindow { m, .. } => {
                if m < 1 || m > dim {
                    return Err(Error::domain(format!("window size M={m} outside [1, {dim}]")));
                }
                if strict && m > dim / 2 {
                    return Err(Error::domain(format!(
                        "window size M={m} exceeds N/2={} (closed-form domain)",
                        dim / 2
                    )));
                }
            }
            EnsembleSpec::ExpEnvelopeHaar { loc_length } => {
                if !(loc_length > 0.0) {
                    return Err(Error::domain(format!(
                        "localization length l={loc_length} must be positive"
                    )));
                }
            }
            EnsembleSpec::CosineWindow { m } => {
                if m < 2 || m > dim {
                    return Err(Error::domain(format!("cosine window M={m} outside [2, {dim}]")));
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        match self {
            EnsembleSpec::RandomSubsetEqualAmp { m, .. } => format!("equal-amp-subset(M={m})"),
            EnsembleSpec::RandomSubsetHaar { m, .. } => format!("haar-subset(M={m})"),
            EnsembleSpec::AdjacentWindow { m, profile } => match profile {
                AmplitudeProfile::EqualAmp => format!("adjacent(M={m})"),
                AmplitudeProfile::Haar => format!("adjacent-haar(M={m})"),
            },
            EnsembleSpec::ExpEnvelopeHaar { loc_length } => format!("exp-envelope(l={loc_length})"),
            EnsembleSpec::CosineWindow { m } => format!("cosine(M={m})"),
        }
    }
}

/// One draw: the state plus the support its sampler placed weight on.
#[derive(Debug, Clone)]
pub struct SampledState {
    pub state: Statevector,
    pub support: Vec<usize>,
}

/// A Haar-random unit vector of dimension `m` (a CUE matrix column):
/// iid standard complex normal entries, normalized.
pub fn haar_unit_vector(m: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Complex64>> {
    if m == 0 {
        return Err(Error::domain("haar vector of dimension 0"));
    }
    let mut v: Vec<Complex64> = (0..m)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .collect();
    let norm2: f64 = v.iter().map(|a| a.norm_sqr()).sum();
    if norm2 <= 0.0 {
        return Err(Error::numeric("degenerate haar draw"));
    }
    let inv = 1.0 / norm2.sqrt();
    for a in &mut v {
        *a *= inv;
    }
    Ok(v)
}

/// M distinct values from `pool`, by partial Fisher-Yates.
fn sample_positions(pool: &mut [usize], m: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    debug_assert!(m <= pool.len());
    for k in 0..m {
        let j = rng.gen_range(k..pool.len());
        pool.swap(k, j);
    }
    pool[..m].to_vec()
}

fn parity_pool(dim: usize, sector: Option<Parity>) -> Vec<usize> {
    match sector {
        None => (0..dim).collect(),
        Some(Parity::Even) => (0..dim).filter(|i| i.count_ones() % 2 == 0).collect(),
        Some(Parity::Odd) => (0..dim).filter(|i| i.count_ones() % 2 == 1).collect(),
    }
}

fn equal_amp(m: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let amp = 1.0 / (m as f64).sqrt();
    (0..m)
        .map(|_| Complex64::from_polar(amp, rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect()
}

/// Draws one state from the ensemble on `n` qubits.
pub fn sample(spec: &EnsembleSpec, n: usize, handle: RngHandle) -> Result<SampledState> {
    spec.validate(n, false)?;
    let dim = 1usize << n;
    let mut rng = handle.rng();
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let support: Vec<usize>;
    match *spec {
        EnsembleSpec::RandomSubsetEqualAmp { m, sector } => {
            let mut pool = parity_pool(dim, sector);
            support = sample_positions(&mut pool, m, &mut rng);
            for (pos, a) in support.iter().zip(equal_amp(m, &mut rng)) {
                amps[*pos] = a;
            }
        }
        EnsembleSpec::RandomSubsetHaar { m, sector } => {
            let mut pool = parity_pool(dim, sector);
            support = sample_positions(&mut pool, m, &mut rng);
            for (pos, a) in support.iter().zip(haar_unit_vector(m, &mut rng)?) {
                amps[*pos] = a;
            }
        }
        EnsembleSpec::AdjacentWindow { m, profile } => {
            let c = rng.gen_range(0..dim);
            support = (0..m).map(|k| (c + k) % dim).collect();
            let values = match profile {
                AmplitudeProfile::EqualAmp => equal_amp(m, &mut rng),
                AmplitudeProfile::Haar => haar_unit_vector(m, &mut rng)?,
            };
            for (pos, a) in support.iter().zip(values) {
                amps[*pos] = a;
            }
        }
        EnsembleSpec::ExpEnvelopeHaar { loc_length } => {
            let c = rng.gen_range(0..dim);
            let values = haar_unit_vector(dim, &mut rng)?;
            for (x, a) in values.into_iter().enumerate() {
                let d = x.abs_diff(c);
                let dist = d.min(dim - d) as f64;
                amps[x] = a * (-dist / loc_length).exp();
            }
            support = (0..dim).collect();
        }
        EnsembleSpec::CosineWindow { m } => {
            let c = rng.gen_range(0..dim);
            return cosine_window_state(n, m, c);
        }
    }
    let state = Statevector::normalized(n, amps)?;
    Ok(SampledState { state, support })
}

/// The deterministic cosine-window state for a given start `c`:
/// `psi_j = A cos(pi j / 2)` on the cyclic window `c+1 ..= c+M`.
pub fn cosine_window_state(n: usize, m: usize, c: usize) -> Result<SampledState> {
    let dim = 1usize << n;
    if m < 2 || m > dim {
        return Err(Error::domain(format!("cosine window M={m} outside [2, {dim}]")));
    }
    if c >= dim {
        return Err(Error::domain(format!("window start c={c} out of range {dim}")));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let mut support = Vec::with_capacity(m);
    for j in (c + 1)..=(c + m) {
        let pos = j % dim;
        // cos(pi j / 2) is exactly one of {0, 1, -1} depending on j mod 4
        let value = match j % 4 {
            0 => 1.0,
            2 => -1.0,
            _ => 0.0,
        };
        amps[pos] = Complex64::new(value, 0.0);
        support.push(pos);
    }
    let state = Statevector::normalized(n, amps)?;
    Ok(SampledState { state, support })
}

/// Uniformly permutes the amplitudes sitting on `support`; everything off
/// the support is untouched. The amplitude multiset, and therefore the
/// IPR, is preserved exactly.
pub fn shuffle_components(
    psi: &Statevector,
    rng: &mut ChaCha8Rng,
    support: &[usize],
) -> Result<Statevector> {
    let dim = psi.dim();
    let mut amps = psi.amplitudes().to_vec();
    for &i in support {
        if i >= dim {
            return Err(Error::domain(format!("support index {i} out of range {dim}")));
        }
    }
    // Fisher-Yates over the support positions
    for k in (1..support.len()).rev() {
        let j = rng.gen_range(0..=k);
        amps.swap(support[k], support[j]);
    }
    Statevector::new(psi.n_qubits(), amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::ipr;

    fn handle(seed: u64, s: u64) -> RngHandle {
        RngHandle::new(seed, s)
    }

    #[test]
    fn equal_amp_subset_ipr_is_m_exactly() {
        for m in [1usize, 3, 8, 64] {
            let spec = EnsembleSpec::RandomSubsetEqualAmp { m, sector: None };
            let s = sample(&spec, 6, handle(11, 0)).unwrap();
            assert!((ipr(&s.state).unwrap() - m as f64).abs() < 1e-9);
            assert_eq!(s.support.len(), m);
        }
    }

    #[test]
    fn equal_amp_full_support_ipr_is_n() {
        let spec = EnsembleSpec::RandomSubsetEqualAmp { m: 64, sector: None };
        let s = sample(&spec, 6, handle(5, 2)).unwrap();
        assert!((ipr(&s.state).unwrap() - 64.0).abs() < 1e-9);
    }

    #[test]
    fn haar_vector_moments() {
        // <|c_1|^2> = 1/M and <sum |c_i|^4> = 2/(M+1)
        let m = 7usize;
        let trials = 20_000;
        let mut first = 0.0;
        let mut quartic = 0.0;
        let mut rng = handle(99, 0).rng();
        for _ in 0..trials {
            let v = haar_unit_vector(m, &mut rng).unwrap();
            first += v[0].norm_sqr();
            quartic += v.iter().map(|a| a.norm_sqr().powi(2)).sum::<f64>();
        }
        first /= trials as f64;
        quartic /= trials as f64;
        // standard errors ~ 1/sqrt(trials); allow 5 sigma-ish slack
        assert!((first - 1.0 / m as f64).abs() < 5e-3, "first moment {first}");
        assert!((quartic - 2.0 / (m as f64 + 1.0)).abs() < 5e-3, "quartic {quartic}");
    }

    #[test]
    fn haar_dimension_zero_rejected() {
        let mut rng = handle(1, 0).rng();
        assert!(haar_unit_vector(0, &mut rng).is_err());
    }

    #[test]
    fn haar_single_entry_is_unit_modulus() {
        let mut rng = handle(1, 0).rng();
        let v = haar_unit_vector(1, &mut rng).unwrap();
        assert!((v[0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn adjacent_window_support_is_cyclic_run() {
        let spec = EnsembleSpec::AdjacentWindow {
            m: 12,
            profile: AmplitudeProfile::EqualAmp,
        };
        for stream in 0..20 {
            let s = sample(&spec, 5, handle(3, stream)).unwrap();
            let dim = 32usize;
            let c = s.support[0];
            for (k, &pos) in s.support.iter().enumerate() {
                assert_eq!(pos, (c + k) % dim);
            }
        }
    }

    #[test]
    fn cosine_window_m4_c0_pattern() {
        // support amplitudes proportional to (0, -1, 0, 1) at j = 1..4
        let s = cosine_window_state(4, 4, 0).unwrap();
        let a = s.state.amplitudes();
        let root = 1.0 / 2.0f64.sqrt();
        assert!(a[1].norm() < 1e-15);
        assert!((a[2].re + root).abs() < 1e-12);
        assert!(a[3].norm() < 1e-15);
        assert!((a[4].re - root).abs() < 1e-12);
    }

    #[test]
    fn sector_restricted_support_stays_in_sector() {
        for (sector, parity) in [(Parity::Even, 0), (Parity::Odd, 1)] {
            let spec = EnsembleSpec::RandomSubsetHaar {
                m: 10,
                sector: Some(sector),
            };
            let s = sample(&spec, 6, handle(17, 4)).unwrap();
            for (i, amp) in s.state.amplitudes().iter().enumerate() {
                if i.count_ones() % 2 != parity {
                    assert_eq!(amp.norm_sqr(), 0.0);
                }
            }
        }
    }

    #[test]
    fn shuffle_preserves_amplitude_multiset_and_ipr() {
        let spec = EnsembleSpec::RandomSubsetHaar { m: 20, sector: None };
        let s = sample(&spec, 7, handle(8, 1)).unwrap();
        let shuffled = shuffle_components(&s.state, &mut handle(8, 2).rng(), &s.support).unwrap();
        let key = |v: &[Complex64]| {
            let mut bits: Vec<(u64, u64)> =
                v.iter().map(|a| (a.re.to_bits(), a.im.to_bits())).collect();
            bits.sort_unstable();
            bits
        };
        assert_eq!(key(s.state.amplitudes()), key(shuffled.amplitudes()));
        // the multiset is exact; the IPR sum is re-ordered, so last-ulp only
        let (a, b) = (ipr(&s.state).unwrap(), ipr(&shuffled).unwrap());
        assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn shuffle_of_singleton_support_is_identity() {
        let s = sample(&EnsembleSpec::RandomSubsetHaar { m: 5, sector: None }, 4, handle(2, 0))
            .unwrap();
        let shuffled = shuffle_components(&s.state, &mut handle(2, 1).rng(), &s.support[..1]).unwrap();
        assert_eq!(s.state.amplitudes(), shuffled.amplitudes());
    }

    #[test]
    fn shuffle_rejects_out_of_range_support() {
        let s = Statevector::basis(3, 0).unwrap();
        assert!(shuffle_components(&s, &mut handle(0, 0).rng(), &[9]).is_err());
    }

    #[test]
    fn determinism_across_repeated_sampling() {
        let spec = EnsembleSpec::ExpEnvelopeHaar { loc_length: 3.0 };
        let a = sample(&spec, 6, handle(123, 9)).unwrap();
        let b = sample(&spec, 6, handle(123, 9)).unwrap();
        assert_eq!(a.state.amplitudes(), b.state.amplitudes());
    }

    #[test]
    fn validation_errors() {
        assert!(EnsembleSpec::RandomSubsetEqualAmp { m: 65, sector: None }
            .validate(6, false)
            .is_err());
        assert!(EnsembleSpec::AdjacentWindow {
            m: 40,
            profile: AmplitudeProfile::EqualAmp
        }
        .validate(6, true)
        .is_err());
        assert!(EnsembleSpec::ExpEnvelopeHaar { loc_length: 0.0 }
            .validate(6, false)
            .is_err());
    }
}

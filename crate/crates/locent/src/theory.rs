//! Closed-form predictions for the mean Meyer-Wallach entanglement of
//! localized random states, plus the exhaustive combinatorial oracle that
//! validates the adjacent-window formula.

use crate::error::{Error, Result};

/// Identifies which closed form produced a prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaId {
    /// Random-subset result: (N-2)/(N-1) (1 - <1/xi>).
    RandomSubset,
    /// Haar/CUE vector on an M-subset: (M-1)/(M+1) (N-2)/(N-1).
    CueSubset,
    /// Equal amplitudes on an M-subset: (M-1)/M (N-2)/(N-1).
    EqualAmpSubset,
    /// Two symmetry-protected N/2 subspaces: N replaced by N/2.
    SymHalved,
    /// Parity-sector eigenvectors: N/(N-2) (1 - <1/xi>).
    SpinSector,
    /// Band-delocalized limit 4 eta (1 - eta).
    BandLimit,
    /// Exact adjacent-window formula, M <= N/2.
    AdjacentExact,
    /// Power-of-two simplification of the adjacent-window formula.
    AdjacentPow2,
    /// Cosine-modulated window, M a power of two.
    Cosine,
    /// Full-space Haar vectors: (N-2)/(N+1).
    Lubkin,
}

impl FormulaId {
    pub fn name(&self) -> &'static str {
        match self {
            FormulaId::RandomSubset => "random-subset",
            FormulaId::CueSubset => "cue-subset",
            FormulaId::EqualAmpSubset => "equal-amp-subset",
            FormulaId::SymHalved => "sym-halved",
            FormulaId::SpinSector => "spin-sector",
            FormulaId::BandLimit => "band-limit",
            FormulaId::AdjacentExact => "adjacent-exact",
            FormulaId::AdjacentPow2 => "adjacent-pow2",
            FormulaId::Cosine => "cosine",
            FormulaId::Lubkin => "lubkin",
        }
    }
}

/// A closed-form <Q> value together with its inputs.
#[derive(Debug, Clone)]
pub struct Prediction {
    pub formula: FormulaId,
    pub inputs: Vec<(&'static str, f64)>,
    pub value: f64,
}

fn check_big_n(big_n: usize) -> Result<()> {
    if big_n < 2 || !big_n.is_power_of_two() {
        return Err(Error::domain(format!("N={big_n} must be a power of two >= 2")));
    }
    Ok(())
}

fn check_inv_ipr(mean_inv_ipr: f64) -> Result<()> {
    if !(mean_inv_ipr > 0.0 && mean_inv_ipr <= 1.0) {
        return Err(Error::domain(format!(
            "mean 1/xi = {mean_inv_ipr} outside (0, 1]"
        )));
    }
    Ok(())
}

/// <Q> for states on a random basis subset: depends only on the mean IPR.
pub fn q_random_subset(big_n: usize, mean_inv_ipr: f64) -> Result<f64> {
    check_big_n(big_n)?;
    check_inv_ipr(mean_inv_ipr)?;
    let nn = big_n as f64;
    Ok((nn - 2.0) / (nn - 1.0) * (1.0 - mean_inv_ipr))
}

/// <Q> for a Haar vector on M random positions.
pub fn q_cue_subset(big_n: usize, m: usize) -> Result<f64> {
    check_big_n(big_n)?;
    if m < 1 || m > big_n {
        return Err(Error::domain(format!("M={m} outside [1, {big_n}]")));
    }
    let nn = big_n as f64;
    let mm = m as f64;
    Ok((mm - 1.0) / (mm + 1.0) * (nn - 2.0) / (nn - 1.0))
}

/// <Q> for equal amplitudes with random phases on M random positions.
pub fn q_equal_amp_subset(big_n: usize, m: usize) -> Result<f64> {
    check_big_n(big_n)?;
    if m < 1 || m > big_n {
        return Err(Error::domain(format!("M={m} outside [1, {big_n}]")));
    }
    let nn = big_n as f64;
    let mm = m as f64;
    Ok((mm - 1.0) / mm * (nn - 2.0) / (nn - 1.0))
}

/// Lubkin's mean entanglement for full-space Haar vectors.
pub fn q_lubkin(big_n: usize) -> Result<f64> {
    check_big_n(big_n)?;
    let nn = big_n as f64;
    Ok((nn - 2.0) / (nn + 1.0))
}

/// Random-subset result with N replaced by N/2, for a symmetry splitting
/// the space into two N/2 subspaces.
pub fn q_sym_halved(big_n: usize, mean_inv_ipr: f64) -> Result<f64> {
    check_big_n(big_n)?;
    check_inv_ipr(mean_inv_ipr)?;
    if big_n / 2 <= 2 {
        return Err(Error::domain(format!("N={big_n} too small for the halved variant")));
    }
    let h = big_n as f64 / 2.0;
    Ok((h - 2.0) / (h - 1.0) * (1.0 - mean_inv_ipr))
}

/// Sector formula for parity-symmetric eigenvectors: N/(N-2) (1 - <1/xi>).
pub fn q_spin_sector(big_n: usize, mean_inv_ipr: f64) -> Result<f64> {
    check_big_n(big_n)?;
    check_inv_ipr(mean_inv_ipr)?;
    if big_n < 8 {
        return Err(Error::domain(format!("N={big_n} too small for the sector formula")));
    }
    let nn = big_n as f64;
    Ok(nn / (nn - 2.0) * (1.0 - mean_inv_ipr))
}

/// Band-delocalized asymptote 4 eta (1 - eta).
pub fn q_band_limit(eta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::domain(format!("eta={eta} outside [0, 1]")));
    }
    Ok(4.0 * eta * (1.0 - eta))
}

/// Triangle wave g(x) = |1 - |1 - x|| on [0, 3).
pub fn g_fun(x: f64) -> Result<f64> {
    if !(0.0..3.0).contains(&x) {
        return Err(Error::domain(format!("g(x): x={x} outside [0, 3)")));
    }
    Ok((1.0 - (1.0 - x).abs()).abs())
}

/// Scaled triangle wave g_r(x) = 2^r g(x / 2^r) on [0, 3 * 2^r).
pub fn g_r(r: u32, x: f64) -> Result<f64> {
    let scale = (1u64 << r) as f64;
    Ok(scale * g_fun(x / scale)?)
}

/// chi_r(x) = x^2 - (2/3) x (x^2 - 1) / 2^r on [0, 2^r], extended to
/// (2^r, 2^{r+1}] by the reflection chi_r(x) = chi_r(2^{r+1} - x).
pub fn chi_r(r: u32, x: f64) -> Result<f64> {
    let block = (1u64 << r) as f64;
    if !(0.0..=2.0 * block).contains(&x) {
        return Err(Error::domain(format!(
            "chi_r: x={x} outside [0, {}]",
            2.0 * block
        )));
    }
    let x = if x > block { 2.0 * block - x } else { x };
    Ok(x * x - 2.0 / 3.0 * x * (x * x - 1.0) / block)
}

/// Which half-vector holds the first window component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowStart {
    U,
    V,
}

/// Closed-form (k, t) for an adjacent window: `k` nonzero components in
/// the half containing the window start, overlap `t`, given the qubit `r`,
/// the in-block offset `c_r` of the first component, and `m_r = M mod
/// 2^{r+1}`. Valid for r < r0.
pub fn k_t_adjacent(
    r: u32,
    c_r: u64,
    m_r: u64,
    m: u64,
    side: WindowStart,
) -> Result<(u64, u64)> {
    let block = 1u64 << r;
    if c_r >= block {
        return Err(Error::domain(format!("c_r={c_r} outside [0, {block})")));
    }
    let g = g_r(r, (m_r + c_r) as f64)?;
    let mf = m as f64;
    let cf = c_r as f64;
    let (k2, t2) = match side {
        WindowStart::U => (mf - cf + g, mf - cf - g),
        WindowStart::V => (mf + cf - g, mf + cf - 2.0 * block as f64 + g),
    };
    let k = k2 / 2.0;
    let t = t2 / 2.0;
    if k < 0.0 || t < 0.0 || k.fract() != 0.0 || t.fract() != 0.0 {
        return Err(Error::numeric(format!(
            "non-integral or negative (k, t) = ({k}, {t}) for r={r}, c_r={c_r}, m_r={m_r}, M={m}"
        )));
    }
    Ok((k as u64, t as u64))
}

fn r0_for(m: f64) -> u32 {
    // smallest r0 with 2^{r0-1} < M <= 2^{r0}
    let mut r0 = 0u32;
    while ((1u64 << r0) as f64) < m {
        r0 += 1;
    }
    r0
}

/// Exact adjacent-window formula, valid for 2 <= M <= N/2.
///
/// `m` may be non-integral (the closed form extends continuously); the
/// equality with the exhaustive oracle holds at integer `m`.
pub fn q_adjacent_exact(n: u32, m: f64, mean_inv_ipr: f64) -> Result<f64> {
    check_inv_ipr(mean_inv_ipr)?;
    let big_n = (1u64 << n) as f64;
    if !(2.0..=big_n / 2.0).contains(&m) {
        return Err(Error::domain(format!("M={m} outside [2, N/2={}]", big_n / 2.0)));
    }
    let r0 = r0_for(m);
    let pow_r0 = (1u64 << r0) as f64;
    let mut chi_sum = 0.0;
    for r in 0..r0 {
        let period = (1u64 << (r + 1)) as f64;
        let m_r = m.rem_euclid(period);
        chi_sum += chi_r(r, m_r)?;
    }
    let bracket = (m - 2.0) / (m - 1.0) * r0 as f64
        + 2.0 * (pow_r0 - 1.0) / (m * (m - 1.0))
        + 4.0 / 3.0 * (m + 1.0) * (big_n - pow_r0) / (big_n * pow_r0)
        - chi_sum / (m * (m - 1.0));
    Ok(bracket * (1.0 - mean_inv_ipr) / n as f64)
}

/// Power-of-two simplification of the adjacent-window formula, evaluated
/// with real-valued r0 = log2(M); exact when M is a power of two, a close
/// approximation otherwise.
pub fn q_adjacent_pow2(n: u32, m: f64, mean_inv_ipr: f64) -> Result<f64> {
    check_inv_ipr(mean_inv_ipr)?;
    if m < 2.0 {
        return Err(Error::domain(format!("M={m} must be >= 2")));
    }
    let big_n = (1u64 << n) as f64;
    let r0 = m.log2();
    let bracket = ((r0 + 4.0 / 3.0) * m * m - 2.0 * (r0 - 1.0) * m - 10.0 / 3.0)
        / (m * (m - 1.0))
        - 4.0 * (m + 1.0) / (3.0 * big_n);
    Ok(bracket * (1.0 - mean_inv_ipr) / n as f64)
}

/// Exhaustive oracle for the adjacent-window mean: sums the per-partition
/// contribution `[k(M-k) - t]/(M(M-1))` over every qubit `r` and every
/// window start `c`, with `k` and `t` obtained by explicit support-set
/// construction (no closed-form shortcuts).
pub fn q_adjacent_oracle(n: u32, m: usize, mean_inv_ipr: f64) -> Result<f64> {
    check_inv_ipr(mean_inv_ipr)?;
    let dim = 1usize << n;
    if m < 2 || m > dim / 2 {
        return Err(Error::domain(format!("M={m} outside [2, N/2={}]", dim / 2)));
    }
    let half = dim / 2;
    let words = half.div_ceil(64);
    let mut u_pos = vec![0u64; words];
    let mut v_pos = vec![0u64; words];
    let mut total = 0.0f64;
    for r in 0..n as usize {
        let bit = 1usize << r;
        let low_mask = bit - 1;
        for c in 0..dim {
            for w in u_pos.iter_mut() {
                *w = 0;
            }
            for w in v_pos.iter_mut() {
                *w = 0;
            }
            let mut k = 0usize;
            for idx in 0..m {
                let i = (c + idx) % dim;
                let pos = (i & low_mask) | ((i >> (r + 1)) << r);
                if i & bit == 0 {
                    k += 1;
                    u_pos[pos / 64] |= 1u64 << (pos % 64);
                } else {
                    v_pos[pos / 64] |= 1u64 << (pos % 64);
                }
            }
            let t: u32 = u_pos
                .iter()
                .zip(&v_pos)
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            total += (k * (m - k)) as f64 - t as f64;
        }
    }
    let mf = m as f64;
    Ok(4.0 / (n as f64 * dim as f64) * total / (mf * (mf - 1.0)) * (1.0 - mean_inv_ipr))
}

/// The (k, t) pair realized by one concrete window placement, by explicit
/// set construction. Returns `k` counted in the half-vector containing the
/// window start.
pub fn k_t_by_construction(n: u32, r: u32, c: usize, m: usize) -> (u64, u64) {
    let dim = 1usize << n;
    let bit = 1usize << r;
    let low_mask = bit - 1;
    let half = dim / 2;
    let words = half.div_ceil(64);
    let mut u_pos = vec![0u64; words];
    let mut v_pos = vec![0u64; words];
    let mut k_u = 0u64;
    for idx in 0..m {
        let i = (c + idx) % dim;
        let pos = (i & low_mask) | ((i >> (r + 1)) << (r as usize));
        if i & bit == 0 {
            k_u += 1;
            u_pos[pos / 64] |= 1u64 << (pos % 64);
        } else {
            v_pos[pos / 64] |= 1u64 << (pos % 64);
        }
    }
    let t: u64 = u_pos
        .iter()
        .zip(&v_pos)
        .map(|(a, b)| (a & b).count_ones() as u64)
        .sum();
    let starts_in_u = c & bit == 0;
    let k = if starts_in_u { k_u } else { m as u64 - k_u };
    (k, t)
}

/// Mean Q of the cosine-windowed state, averaged over all window starts.
/// Stated for M a power of two with M < N.
pub fn q_cosine(n: u32, m: usize) -> Result<f64> {
    if !m.is_power_of_two() || m < 2 {
        return Err(Error::domain(format!("M={m} must be a power of two >= 2")));
    }
    let r0 = m.trailing_zeros();
    if r0 >= n {
        return Err(Error::domain(format!("M={m} requires r0 < n={n}")));
    }
    let mf = m as f64;
    let big_n = (1u64 << n) as f64;
    Ok((26.0 / 9.0
        - 4.0 / mf
        - 8.0 * (3.0 * r0 as f64 + 1.0) / (9.0 * mf * mf)
        - 4.0 * (mf * mf - 4.0) / (3.0 * mf * big_n))
        / n as f64)
}

/// Convenience constructors for CLI/CSV use.
impl Prediction {
    pub fn new(formula: FormulaId, inputs: Vec<(&'static str, f64)>, value: f64) -> Self {
        Prediction {
            formula,
            inputs,
            value,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_subset_basis_states_give_zero() {
        assert_eq!(q_random_subset(8, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn random_subset_equal_amp_full_support() {
        // mean 1/xi = 1/N gives (N-2)/N
        let q = q_random_subset(8, 1.0 / 8.0).unwrap();
        assert!((q - 0.75).abs() < 1e-12);
        let q = q_random_subset(1024, 1.0 / 16.0).unwrap();
        assert!((q - (1022.0 / 1023.0) * (15.0 / 16.0)).abs() < 1e-12);
        assert!((q - 0.936584).abs() < 1e-6);
    }

    #[test]
    fn cue_subset_examples() {
        assert!((q_cue_subset(8, 3).unwrap() - 3.0 / 7.0).abs() < 1e-12);
        // full support reduces to Lubkin
        for n in [8usize, 32, 256] {
            assert!((q_cue_subset(n, n).unwrap() - q_lubkin(n).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn equal_amp_subset_consistency() {
        assert_eq!(q_equal_amp_subset(16, 1).unwrap(), 0.0);
        for m in [2usize, 5, 16, 64] {
            let a = q_equal_amp_subset(256, m).unwrap();
            let b = q_random_subset(256, 1.0 / m as f64).unwrap();
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn band_limit_examples() {
        assert_eq!(q_band_limit(0.5).unwrap(), 1.0);
        let n = 9.0;
        assert!((q_band_limit(1.0 / n).unwrap() - 4.0 * (n - 1.0) / (n * n)).abs() < 1e-14);
        assert!(q_band_limit(1.2).is_err());
    }

    #[test]
    fn spin_sector_bound() {
        // value <= 1 requires mean 1/xi >= 2/N
        let q = q_spin_sector(1024, 2.0 / 1024.0).unwrap();
        assert!((q - 1.0).abs() < 1e-12);
    }

    #[test]
    fn g_fun_triangle() {
        assert_eq!(g_fun(0.0).unwrap(), 0.0);
        assert_eq!(g_fun(1.0).unwrap(), 1.0);
        assert_eq!(g_fun(2.0).unwrap(), 0.0);
        assert!(g_fun(3.0).is_err());
    }

    #[test]
    fn chi_r_values_and_reflection() {
        for r in 0..6 {
            assert_eq!(chi_r(r, 0.0).unwrap(), 0.0);
        }
        // chi_1(1) = 1 and chi_1(3) = chi_1(1) by reflection
        assert!((chi_r(1, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((chi_r(1, 3.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(chi_r(1, 4.5).is_err());
    }

    #[test]
    fn k_t_worked_example() {
        // r=1, c_r=1, M=9 (m_1 = 1): u-start gives k=5, t=3
        let (k, t) = k_t_adjacent(1, 1, 9 % 4, 9, WindowStart::U).unwrap();
        assert_eq!((k, t), (5, 3));
    }

    #[test]
    fn k_t_full_block_alignment() {
        // c_r=0, M=2^{r+1}: k = t = M/2
        for r in 1..5u32 {
            let m = 1u64 << (r + 1);
            let (k, t) = k_t_adjacent(r, 0, 0, m, WindowStart::U).unwrap();
            assert_eq!((k, t), (m / 2, m / 2));
        }
    }

    #[test]
    fn k_t_matches_set_construction_exhaustively() {
        // n=5, M=6 (and a few other M): formulas vs explicit sets for all r < r0, c
        let n = 5u32;
        for m in [3usize, 4, 6, 8, 12, 16] {
            let r0 = r0_for(m as f64);
            for r in 0..r0.min(n) {
                let period = 1u64 << (r + 1);
                let m_r = m as u64 % period;
                for c in 0..(1usize << n) {
                    let c_r = (c as u64) % (1u64 << r).max(1);
                    let side = if c & (1 << r) == 0 {
                        WindowStart::U
                    } else {
                        WindowStart::V
                    };
                    let (k_f, t_f) = k_t_adjacent(r, c_r, m_r, m as u64, side).unwrap();
                    let (k_s, t_s) = k_t_by_construction(n, r, c, m);
                    assert_eq!(t_f, t_s, "t mismatch at m={m} r={r} c={c}");
                    assert!(
                        k_f == k_s || k_f == m as u64 - k_s,
                        "k mismatch at m={m} r={r} c={c}: formula {k_f}, sets {k_s}"
                    );
                }
            }
        }
    }

    #[test]
    fn adjacent_exact_hand_reductions() {
        // M=2 bracket reduces to 3 - 4/N
        let q = q_adjacent_exact(4, 2.0, 0.5).unwrap();
        assert!((q - 0.34375).abs() < 1e-12);
        let q8 = q_adjacent_pow2(4, 2.0, 0.5).unwrap();
        assert!((q8 - 0.34375).abs() < 1e-12);
        // M=4, n=6, <1/xi> = 1/4
        let q = q_adjacent_exact(6, 4.0, 0.25).unwrap();
        assert!((q - 0.424479166666).abs() < 1e-10);
        let q8 = q_adjacent_pow2(6, 4.0, 0.25).unwrap();
        assert!((q - q8).abs() < 1e-12);
    }

    #[test]
    fn adjacent_exact_equals_oracle_spot_checks() {
        for (n, m) in [(6u32, 3usize), (7, 12), (8, 128), (6, 5), (5, 6)] {
            let exact = q_adjacent_exact(n, m as f64, 0.3).unwrap();
            let oracle = q_adjacent_oracle(n, m, 0.3).unwrap();
            assert!(
                (exact - oracle).abs() < 1e-12,
                "n={n} M={m}: exact {exact} vs oracle {oracle}"
            );
        }
    }

    #[test]
    fn pow2_close_to_exact_off_powers() {
        let exact = q_adjacent_exact(8, 6.0, 0.2).unwrap();
        let approx = q_adjacent_pow2(8, 6.0, 0.2).unwrap();
        assert!((exact - approx).abs() / exact < 0.05, "gap {} vs {}", exact, approx);
    }

    #[test]
    fn cosine_examples() {
        let q = q_cosine(6, 4).unwrap();
        assert!((q - (1.5 - 4.0 / 64.0) / 6.0).abs() < 1e-14);
        assert!((q - 0.239583333).abs() < 1e-9);
        assert_eq!(q_cosine(6, 2).unwrap(), 0.0);
        assert!(q_cosine(6, 6).is_err());
        assert!(q_cosine(3, 8).is_err());
    }

    #[test]
    fn predictions_stay_in_unit_interval() {
        for n in 3..=9u32 {
            let big_n = 1usize << n;
            for m in 2..=(big_n / 2) {
                let q = q_adjacent_exact(n, m as f64, 1.0 / m as f64).unwrap();
                assert!((0.0..=1.0).contains(&q), "n={n} m={m} q={q}");
            }
            for m in 1..=big_n {
                assert!((0.0..=1.0).contains(&q_cue_subset(big_n, m).unwrap()));
                assert!((0.0..=1.0).contains(&q_equal_amp_subset(big_n, m).unwrap()));
            }
        }
    }

    #[test]
    fn random_subset_monotone_in_delocalization() {
        let mut last = -1.0;
        for k in 1..=20 {
            let q = q_random_subset(256, 1.0 / k as f64).unwrap();
            assert!(q > last);
            last = q;
        }
    }
}

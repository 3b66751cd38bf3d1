//! Monte Carlo estimation, disorder sweeps, tail fitting, and CSV output.
//!
//! Reproducibility contract: realization (or sample) `i` of a run always
//! draws from RNG stream `i` of the run's seed, partial results are
//! collected per index and reduced in ascending index order, so output is
//! byte-identical regardless of how many worker threads execute the run.

pub mod drivers;

use rayon::prelude::*;

use crate::ensembles::{sample, shuffle_components, EnsembleSpec};
use crate::error::{Error, Result};
use crate::measures::{measure, MeasureReport};
use crate::models::{
    build_anderson, build_smallworld, eigensolve_symmetric, parity_sectors, select_indices,
    tridiagonal_states_near, AndersonParams, EigenstateCriterion, SmallworldParams, SpinDisorder,
    SpinModelParams, Spectrum,
};
use crate::rng::RngHandle;
use crate::state::Statevector;
use crate::theory::Prediction;

/// A sample mean with its standard error.
#[derive(Debug, Clone, Copy, Default)]
pub struct MeanErr {
    pub mean: f64,
    pub stderr: f64,
}

impl MeanErr {
    /// Mean and standard error of the mean from raw samples.
    pub fn from_samples(xs: &[f64]) -> MeanErr {
        let k = xs.len() as f64;
        if xs.is_empty() {
            return MeanErr::default();
        }
        let mean = xs.iter().sum::<f64>() / k;
        if xs.len() < 2 {
            return MeanErr { mean, stderr: 0.0 };
        }
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
        MeanErr {
            mean,
            stderr: (var / k).sqrt(),
        }
    }
}

/// Ensemble statistics of one Monte Carlo run.
#[derive(Debug, Clone)]
pub struct McStats {
    pub samples: usize,
    pub q: MeanErr,
    pub ipr: MeanErr,
    pub inv_ipr: MeanErr,
    pub cxx: MeanErr,
    pub cxy: MeanErr,
}

impl McStats {
    pub fn from_reports(reports: &[MeasureReport]) -> McStats {
        let pull = |f: fn(&MeasureReport) -> f64| -> MeanErr {
            MeanErr::from_samples(&reports.iter().map(f).collect::<Vec<_>>())
        };
        McStats {
            samples: reports.len(),
            q: pull(|r| r.q),
            ipr: pull(|r| r.ipr),
            inv_ipr: pull(|r| r.inv_ipr),
            cxx: pull(|r| r.cxx),
            cxy: pull(|r| r.cxy),
        }
    }
}

/// One experiment record, the unit of the CSV output schema.
#[derive(Debug, Clone)]
pub struct ResultRow {
    pub experiment: String,
    pub n: usize,
    pub big_n: usize,
    /// Parameter snapshot as `key=value` pairs joined by ';'.
    pub params: String,
    pub q_mean: f64,
    pub q_stderr: f64,
    pub ipr_mean: f64,
    pub inv_ipr_mean: f64,
    pub cxx_mean: f64,
    pub cxy_mean: f64,
    pub samples: usize,
    pub seed: u64,
}

pub const CSV_HEADER: &str =
    "experiment,n,N,params,q_mean,q_stderr,ipr_mean,inv_ipr_mean,cxx_mean,cxy_mean,samples,seed";

impl ResultRow {
    pub fn from_stats(
        experiment: impl Into<String>,
        n: usize,
        params: impl Into<String>,
        stats: &McStats,
        seed: u64,
    ) -> ResultRow {
        ResultRow {
            experiment: experiment.into(),
            n,
            big_n: 1usize << n,
            params: params.into(),
            q_mean: stats.q.mean,
            q_stderr: stats.q.stderr,
            ipr_mean: stats.ipr.mean,
            inv_ipr_mean: stats.inv_ipr.mean,
            cxx_mean: stats.cxx.mean,
            cxy_mean: stats.cxy.mean,
            samples: stats.samples,
            seed,
        }
    }

    pub fn to_csv_line(&self) -> String {
        debug_assert!(!self.experiment.contains(',') && !self.params.contains(','));
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.experiment,
            self.n,
            self.big_n,
            self.params,
            self.q_mean,
            self.q_stderr,
            self.ipr_mean,
            self.inv_ipr_mean,
            self.cxx_mean,
            self.cxy_mean,
            self.samples,
            self.seed
        )
    }
}

/// Renders rows to CSV text (header + one line per row).
pub fn rows_to_csv(rows: &[ResultRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}

/// Parses and checks a CSV document against the ResultRow schema:
/// exact header, field count, types, and value ranges.
pub fn validate_csv(text: &str) -> Result<usize> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => {
            return Err(Error::domain(format!("bad CSV header: {other:?}")));
        }
    }
    let mut count = 0usize;
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 12 {
            return Err(Error::domain(format!(
                "line {}: expected 12 fields, got {}",
                lineno + 2,
                fields.len()
            )));
        }
        let n: usize = fields[1]
            .parse()
            .map_err(|_| Error::domain(format!("line {}: bad n", lineno + 2)))?;
        let big_n: usize = fields[2]
            .parse()
            .map_err(|_| Error::domain(format!("line {}: bad N", lineno + 2)))?;
        if big_n != 1usize << n {
            return Err(Error::domain(format!("line {}: N != 2^n", lineno + 2)));
        }
        let floats: Vec<f64> = fields[4..10]
            .iter()
            .map(|f| f.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::domain(format!("line {}: bad float field", lineno + 2)))?;
        let (q_mean, q_stderr, ipr_mean) = (floats[0], floats[1], floats[2]);
        if !(-1e-9..=1.0 + 1e-9).contains(&q_mean) {
            return Err(Error::domain(format!("line {}: q_mean out of [0,1]", lineno + 2)));
        }
        if q_stderr < 0.0 {
            return Err(Error::domain(format!("line {}: negative q_stderr", lineno + 2)));
        }
        if ipr_mean < 0.0 {
            return Err(Error::domain(format!("line {}: negative ipr", lineno + 2)));
        }
        let _samples: usize = fields[10]
            .parse()
            .map_err(|_| Error::domain(format!("line {}: bad samples", lineno + 2)))?;
        let _seed: u64 = fields[11]
            .parse()
            .map_err(|_| Error::domain(format!("line {}: bad seed", lineno + 2)))?;
        count += 1;
    }
    Ok(count)
}

/// Monte Carlo estimate over `samples` independent draws of an ensemble.
/// Sample `i` uses RNG stream `i`, so the result is deterministic given
/// the seed, independent of thread count.
pub fn mc_stats(spec: &EnsembleSpec, n: usize, samples: usize, seed: u64) -> Result<McStats> {
    if samples < 2 {
        return Err(Error::domain("need at least 2 samples for a standard error"));
    }
    spec.validate(n, false)?;
    let reports: Vec<MeasureReport> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let drawn = sample(spec, n, RngHandle::new(seed, i))?;
            measure(&drawn.state)
        })
        .collect::<Result<_>>()?;
    Ok(McStats::from_reports(&reports))
}

/// [`mc_stats`] packaged as a result row.
pub fn mc_estimate(spec: &EnsembleSpec, n: usize, samples: usize, seed: u64) -> Result<ResultRow> {
    let stats = mc_stats(spec, n, samples, seed)?;
    Ok(ResultRow::from_stats(
        "mc",
        n,
        format!("ensemble={}", spec.label()),
        &stats,
        seed,
    ))
}

/// Which physical model a disorder sweep runs.
#[derive(Debug, Clone)]
pub enum ModelSpec {
    Spin {
        delta0: f64,
        delta: f64,
        j: f64,
        /// Additionally measure sector-shuffled copies of each eigenstate.
        shuffle: bool,
    },
    Anderson {
        w: f64,
    },
    Smallworld {
        w: f64,
        p: f64,
    },
}

impl ModelSpec {
    pub fn label(&self) -> String {
        match self {
            ModelSpec::Spin { delta0, delta, j, .. } => {
                format!("model=spin;delta0={delta0};delta={delta};j={j}")
            }
            ModelSpec::Anderson { w } => format!("model=anderson;w={w}"),
            ModelSpec::Smallworld { w, p } => format!("model=smallworld;w={w};p={p}"),
        }
    }
}

/// How many eigenstates to keep per realization.
#[derive(Debug, Clone, Copy)]
pub enum CountRule {
    Fixed(usize),
    /// `N / divisor` states (at least 1).
    FractionOfDim(usize),
}

impl CountRule {
    pub fn resolve(&self, dim: usize) -> usize {
        match *self {
            CountRule::Fixed(c) => c.min(dim),
            CountRule::FractionOfDim(d) => (dim / d).max(1),
        }
    }
}

/// Per-realization outcome of a spin-model diagonalization.
#[derive(Debug, Clone)]
pub struct SpinRealization {
    pub raw: Vec<MeasureReport>,
    pub shuffled: Vec<MeasureReport>,
}

/// Statistics of a spin-model run at fixed parameters, aggregated at the
/// realization level (each realization contributes its state-average).
#[derive(Debug, Clone)]
pub struct SpinRunStats {
    pub raw: McStats,
    pub shuffled: Option<McStats>,
    /// Realization-level mean/stderr of (cxx - cxy) on the raw states.
    pub cxx_minus_cxy: MeanErr,
}

fn realization_mean(reports: &[MeasureReport], f: fn(&MeasureReport) -> f64) -> f64 {
    reports.iter().map(f).sum::<f64>() / reports.len() as f64
}

fn stats_from_realization_means(per_real: &[Vec<MeasureReport>]) -> McStats {
    let pull = |f: fn(&MeasureReport) -> f64| -> MeanErr {
        MeanErr::from_samples(
            &per_real
                .iter()
                .map(|r| realization_mean(r, f))
                .collect::<Vec<_>>(),
        )
    };
    McStats {
        samples: per_real.len(),
        q: pull(|r| r.q),
        ipr: pull(|r| r.ipr),
        inv_ipr: pull(|r| r.inv_ipr),
        cxx: pull(|r| r.cxx),
        cxy: pull(|r| r.cxy),
    }
}

/// One disorder realization of the spin model: per-sector dense
/// diagonalization, selection on the merged spectrum, embedding, and
/// measurement (plus an in-sector component shuffle of each kept state
/// when requested).
pub fn spin_realization(
    params: &SpinModelParams,
    count: CountRule,
    criterion: EigenstateCriterion,
    shuffle: bool,
    handle: RngHandle,
) -> Result<SpinRealization> {
    let mut rng = handle.rng();
    let disorder = SpinDisorder::draw(params, &mut rng)?;
    let (even, odd) = parity_sectors(params.n);
    let spectra = [
        (eigensolve_symmetric(&disorder.sector_matrix(&even))?, &even),
        (eigensolve_symmetric(&disorder.sector_matrix(&odd))?, &odd),
    ];
    // merged spectrum: (energy, sector id, column)
    let mut merged: Vec<(f64, usize, usize)> = Vec::with_capacity(1 << params.n);
    for (sid, (spectrum, _)) in spectra.iter().enumerate() {
        for (k, &e) in spectrum.eigenvalues.iter().enumerate() {
            merged.push((e, sid, k));
        }
    }
    merged.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let dim = merged.len();
    let wanted = count.resolve(dim);
    let merged_spectrum = Spectrum {
        eigenvalues: merged.iter().map(|m| m.0).collect(),
        eigenvectors: nalgebra::DMatrix::zeros(0, 0),
        sector_map: None,
    };
    let picked = select_indices(&merged_spectrum, wanted, criterion)?;
    let mut raw = Vec::with_capacity(wanted);
    let mut shuffled = Vec::new();
    for idx in picked {
        let (_e, sid, k) = merged[idx];
        let (spectrum, sector) = &spectra[sid];
        let v = spectrum.eigenvector(k);
        let psi = crate::models::embed_sector_vector(&v, sector, params.n)?;
        raw.push(measure(&psi)?);
        if shuffle {
            let permuted = shuffle_components(&psi, &mut rng, sector)?;
            shuffled.push(measure(&permuted)?);
        }
    }
    Ok(SpinRealization { raw, shuffled })
}

/// Disorder-averaged spin-model statistics. Realization `i` uses stream
/// `stream_base + i`.
pub fn spin_run(
    params: &SpinModelParams,
    realizations: usize,
    count: CountRule,
    criterion: EigenstateCriterion,
    shuffle: bool,
    seed: u64,
    stream_base: u64,
) -> Result<SpinRunStats> {
    if realizations < 2 {
        return Err(Error::domain("need at least 2 disorder realizations"));
    }
    let per_real: Vec<SpinRealization> = (0..realizations as u64)
        .into_par_iter()
        .map(|i| {
            spin_realization(
                params,
                count,
                criterion,
                shuffle,
                RngHandle::new(seed, stream_base + i),
            )
        })
        .collect::<Result<_>>()?;
    let raw: Vec<Vec<MeasureReport>> = per_real.iter().map(|r| r.raw.clone()).collect();
    let diff: Vec<f64> = raw
        .iter()
        .map(|r| realization_mean(r, |m| m.cxx) - realization_mean(r, |m| m.cxy))
        .collect();
    let shuffled = if shuffle {
        let s: Vec<Vec<MeasureReport>> = per_real.iter().map(|r| r.shuffled.clone()).collect();
        Some(stats_from_realization_means(&s))
    } else {
        None
    };
    Ok(SpinRunStats {
        raw: stats_from_realization_means(&raw),
        shuffled,
        cxx_minus_cxy: MeanErr::from_samples(&diff),
    })
}

/// One Anderson (or linkless smallworld) realization: the `count`
/// eigenstates nearest E0 = 0 of the tridiagonal chain.
fn anderson_realization(
    params: &AndersonParams,
    count: usize,
    handle: RngHandle,
) -> Result<Vec<MeasureReport>> {
    let mut rng = handle.rng();
    let tri = build_anderson(params, &mut rng)?;
    let states = tridiagonal_states_near(&tri, count, 0.0)?;
    states
        .into_iter()
        .map(|(_e, v)| measure(&Statevector::from_real(params.n, &v)?))
        .collect()
}

/// One smallworld realization; falls back to the tridiagonal path when no
/// links were drawn, so p = 0 reproduces the Anderson rows bit-exactly.
fn smallworld_realization(
    params: &SmallworldParams,
    count: usize,
    handle: RngHandle,
) -> Result<Vec<MeasureReport>> {
    let mut rng = handle.rng();
    let sw = build_smallworld(params, &mut rng)?;
    if sw.links.is_empty() {
        let states = tridiagonal_states_near(&sw.chain, count, 0.0)?;
        return states
            .into_iter()
            .map(|(_e, v)| measure(&Statevector::from_real(params.base.n, &v)?))
            .collect();
    }
    let spectrum = eigensolve_symmetric(&sw.to_dense())?;
    let picked = select_indices(&spectrum, count, EigenstateCriterion::NearestEnergy(0.0))?;
    picked
        .into_iter()
        .map(|k| measure(&Statevector::from_real(params.base.n, &spectrum.eigenvector(k))?))
        .collect()
}

/// Disorder-averaged statistics of one model at one size. Realization `i`
/// uses stream `stream_base + i`.
pub fn model_run(
    model: &ModelSpec,
    n: usize,
    realizations: usize,
    count: CountRule,
    criterion: EigenstateCriterion,
    seed: u64,
    stream_base: u64,
) -> Result<McStats> {
    if realizations < 2 {
        return Err(Error::domain("need at least 2 disorder realizations"));
    }
    match model {
        ModelSpec::Spin {
            delta0,
            delta,
            j,
            shuffle,
        } => {
            let params = SpinModelParams {
                n,
                delta0: *delta0,
                delta: *delta,
                j: *j,
            };
            let run = spin_run(&params, realizations, count, criterion, *shuffle, seed, stream_base)?;
            Ok(if *shuffle {
                run.shuffled.unwrap()
            } else {
                run.raw
            })
        }
        ModelSpec::Anderson { w } => {
            let params = AndersonParams { n, w: *w };
            let c = count.resolve(1usize << n);
            let per_real: Vec<Vec<MeasureReport>> = (0..realizations as u64)
                .into_par_iter()
                .map(|i| anderson_realization(&params, c, RngHandle::new(seed, stream_base + i)))
                .collect::<Result<_>>()?;
            Ok(stats_from_realization_means(&per_real))
        }
        ModelSpec::Smallworld { w, p } => {
            let params = SmallworldParams {
                base: AndersonParams { n, w: *w },
                p: *p,
            };
            let c = count.resolve(1usize << n);
            let per_real: Vec<Vec<MeasureReport>> = (0..realizations as u64)
                .into_par_iter()
                .map(|i| smallworld_realization(&params, c, RngHandle::new(seed, stream_base + i)))
                .collect::<Result<_>>()?;
            Ok(stats_from_realization_means(&per_real))
        }
    }
}

/// Sweeps a model over register sizes; one row per n. The stream space is
/// partitioned per n so sweeps are reproducible regardless of ordering.
pub fn disorder_sweep(
    model: &ModelSpec,
    ns: &[usize],
    realizations: usize,
    count: CountRule,
    criterion: EigenstateCriterion,
    seed: u64,
) -> Result<Vec<ResultRow>> {
    let mut rows = Vec::with_capacity(ns.len());
    for (combo, &n) in ns.iter().enumerate() {
        let stream_base = (combo as u64) << 32;
        let stats = model_run(model, n, realizations, count, criterion, seed, stream_base)?;
        rows.push(ResultRow::from_stats(
            "model",
            n,
            model.label(),
            &stats,
            seed,
        ));
    }
    Ok(rows)
}

/// Least-squares fit of `q = C/n` over the `min(4, len)` largest sizes.
/// Returns `(C, rms residual)`.
pub fn fit_tail_constant(rows: &[(usize, f64)]) -> Result<(f64, f64)> {
    if rows.len() < 2 {
        return Err(Error::domain("tail fit needs at least 2 points"));
    }
    let mut sorted: Vec<(usize, f64)> = rows.to_vec();
    sorted.sort_by_key(|r| r.0);
    let k = sorted.len().min(4);
    let tail = &sorted[sorted.len() - k..];
    if tail.iter().all(|(n, _)| *n == tail[0].0) {
        return Err(Error::domain("degenerate tail: all n values equal"));
    }
    let num: f64 = tail.iter().map(|&(n, q)| q / n as f64).sum();
    let den: f64 = tail.iter().map(|&(n, _)| 1.0 / (n as f64 * n as f64)).sum();
    let c = num / den;
    let rss: f64 = tail
        .iter()
        .map(|&(n, q)| (q - c / n as f64).powi(2))
        .sum::<f64>();
    Ok((c, (rss / k as f64).sqrt()))
}

/// A theory value rendered on the common row schema (stderr 0, samples 0).
pub fn prediction_row(
    experiment: impl Into<String>,
    n: usize,
    prediction: &Prediction,
    extra_params: &str,
    seed: u64,
) -> ResultRow {
    let mut params = format!("formula={}", prediction.formula.name());
    for (k, v) in &prediction.inputs {
        params.push_str(&format!(";{k}={v}"));
    }
    if !extra_params.is_empty() {
        params.push_str(&format!(";{extra_params}"));
    }
    ResultRow {
        experiment: experiment.into(),
        n,
        big_n: 1usize << n,
        params,
        q_mean: prediction.value,
        q_stderr: 0.0,
        ipr_mean: 0.0,
        inv_ipr_mean: 0.0,
        cxx_mean: 0.0,
        cxy_mean: 0.0,
        samples: 0,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::AmplitudeProfile;

    #[test]
    fn mean_err_basics() {
        let m = MeanErr::from_samples(&[1.0, 2.0, 3.0]);
        assert!((m.mean - 2.0).abs() < 1e-15);
        assert!((m.stderr - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn mc_deterministic_and_seed_sensitive() {
        let spec = EnsembleSpec::RandomSubsetHaar { m: 6, sector: None };
        let a = mc_stats(&spec, 5, 50, 11).unwrap();
        let b = mc_stats(&spec, 5, 50, 11).unwrap();
        let c = mc_stats(&spec, 5, 50, 12).unwrap();
        assert_eq!(a.q.mean, b.q.mean);
        assert_ne!(a.q.mean, c.q.mean);
    }

    #[test]
    fn mc_requires_two_samples() {
        let spec = EnsembleSpec::RandomSubsetHaar { m: 6, sector: None };
        assert!(mc_stats(&spec, 5, 1, 0).is_err());
    }

    #[test]
    fn stderr_shrinks_like_inverse_sqrt() {
        let spec = EnsembleSpec::AdjacentWindow {
            m: 8,
            profile: AmplitudeProfile::Haar,
        };
        let small = mc_stats(&spec, 6, 400, 3).unwrap();
        let large = mc_stats(&spec, 6, 1600, 3).unwrap();
        let ratio = small.q.stderr / large.q.stderr;
        assert!((ratio - 2.0).abs() < 0.4, "ratio {ratio}");
    }

    #[test]
    fn csv_roundtrip_validates() {
        let spec = EnsembleSpec::RandomSubsetEqualAmp { m: 4, sector: None };
        let row = mc_estimate(&spec, 5, 20, 9).unwrap();
        let text = rows_to_csv(&[row]);
        assert_eq!(validate_csv(&text).unwrap(), 1);
    }

    #[test]
    fn csv_rejects_bad_header() {
        assert!(validate_csv("nope\n1,2,3").is_err());
    }

    #[test]
    fn tail_fit_exact_synthetic() {
        let rows: Vec<(usize, f64)> = (6..=12).map(|n| (n, 2.5 / n as f64)).collect();
        let (c, res) = fit_tail_constant(&rows).unwrap();
        assert!((c - 2.5).abs() < 1e-12);
        assert!(res < 1e-12);
    }

    #[test]
    fn tail_fit_cosine_limit() {
        let rows: Vec<(usize, f64)> = (8..=12)
            .map(|n| (n, crate::theory::q_cosine(n as u32, 4).unwrap()))
            .collect();
        let (c, _res) = fit_tail_constant(&rows).unwrap();
        let limit = 26.0 / 9.0 - 1.0 - 56.0 / 144.0;
        assert!((c - limit).abs() / limit < 0.02, "C = {c} vs {limit}");
    }

    #[test]
    fn smallworld_p0_matches_anderson_bit_exactly() {
        let a = disorder_sweep(
            &ModelSpec::Anderson { w: 1.0 },
            &[6, 7],
            5,
            CountRule::Fixed(4),
            EigenstateCriterion::NearestEnergy(0.0),
            21,
        )
        .unwrap();
        let s = disorder_sweep(
            &ModelSpec::Smallworld { w: 1.0, p: 0.0 },
            &[6, 7],
            5,
            CountRule::Fixed(4),
            EigenstateCriterion::NearestEnergy(0.0),
            21,
        )
        .unwrap();
        for (ra, rs) in a.iter().zip(&s) {
            assert_eq!(ra.q_mean.to_bits(), rs.q_mean.to_bits());
            assert_eq!(ra.ipr_mean.to_bits(), rs.ipr_mean.to_bits());
        }
    }

    #[test]
    fn spin_j0_gives_zero_q() {
        let rows = disorder_sweep(
            &ModelSpec::Spin {
                delta0: 1.0,
                delta: 1.0,
                j: 0.0,
                shuffle: false,
            },
            &[4, 5],
            3,
            CountRule::Fixed(4),
            EigenstateCriterion::MedianIndex,
            5,
        )
        .unwrap();
        for r in rows {
            assert!(r.q_mean.abs() < 1e-10, "q = {}", r.q_mean);
            assert!((r.ipr_mean - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn anderson_ipr_decreases_with_disorder() {
        let weak = model_run(
            &ModelSpec::Anderson { w: 0.5 },
            8,
            100,
            CountRule::Fixed(10),
            EigenstateCriterion::NearestEnergy(0.0),
            33,
            0,
        )
        .unwrap();
        let strong = model_run(
            &ModelSpec::Anderson { w: 2.0 },
            8,
            100,
            CountRule::Fixed(10),
            EigenstateCriterion::NearestEnergy(0.0),
            33,
            0,
        )
        .unwrap();
        assert!(weak.ipr.mean > strong.ipr.mean);
    }
}

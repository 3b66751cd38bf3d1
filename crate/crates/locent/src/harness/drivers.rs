//! Figure-reproduction drivers.
//!
//! Each driver takes a config (defaults documented per field, overridable
//! through `key=value` pairs), runs its experiment, and writes into an
//! output directory:
//!   - `figK.csv`  — result rows on the common schema
//!   - `figK.gp`   — gnuplot script referencing the CSV by relative path
//!   - `figK.meta` — key=value sidecar: resolved config, seed, version
//! plus derived-axis companions where the plotted quantities are not raw
//! row columns (`fig1_plot.csv`, `fig3_inset.csv`).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::ensembles::EnsembleSpec;
use crate::error::{Error, Result};
use crate::harness::{
    disorder_sweep, fit_tail_constant, mc_stats, prediction_row, rows_to_csv, spin_run, CountRule,
    MeanErr, ModelSpec, ResultRow,
};
use crate::measures::measure;
use crate::models::{
    band_basis, eigensolve_symmetric, embed_sector_vector, parity_sectors, EigenstateCriterion,
    SpinDisorder, SpinModelParams,
};
use crate::rng::RngHandle;
use crate::theory::{q_adjacent_exact, q_spin_sector, FormulaId, Prediction};

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    let items: std::result::Result<Vec<T>, _> =
        value.split(',').map(|s| s.trim().parse::<T>()).collect();
    items.map_err(|_| Error::domain(format!("bad value for {key}: {value:?}")))
}

fn parse_one<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse::<T>()
        .map_err(|_| Error::domain(format!("bad value for {key}: {value:?}")))
}

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Writes the three standard driver outputs; returns the paths written.
fn write_outputs(
    out_dir: &Path,
    name: &str,
    rows: &[ResultRow],
    gp: &str,
    meta: &[(String, String)],
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let csv = out_dir.join(format!("{name}.csv"));
    fs::write(&csv, rows_to_csv(rows))?;
    let gp_path = out_dir.join(format!("{name}.gp"));
    fs::write(&gp_path, gp)?;
    let meta_path = out_dir.join(format!("{name}.meta"));
    let mut text = String::new();
    for (k, v) in meta {
        writeln!(text, "{k}={v}").unwrap();
    }
    writeln!(text, "version={}", env!("CARGO_PKG_VERSION")).unwrap();
    fs::write(&meta_path, text)?;
    Ok(vec![csv, gp_path, meta_path])
}

// ---------------------------------------------------------------------------
// banded spin model (delta << delta0)
// ---------------------------------------------------------------------------

/// Per-band statistics of the weakly spread spin model, aggregated over
/// disorder realizations (each realization contributes its band mean).
#[derive(Debug, Clone)]
pub struct BandStats {
    pub band: usize,
    pub basis_size: usize,
    /// eta = band / n
    pub eta: f64,
    pub q: MeanErr,
    /// N_b / xi_band, the reciprocal of the reduced localization length.
    pub ratio: MeanErr,
    /// Reduced (band-projected) IPR.
    pub reduced_ipr: MeanErr,
    pub realizations: usize,
}

impl BandStats {
    /// Infinite-size entanglement of a fully delocalized band.
    pub fn asymptote(&self) -> f64 {
        4.0 * self.eta * (1.0 - self.eta)
    }
}

/// One realization: diagonalizes both parity sectors, assigns every
/// eigenvector to the band carrying most of its weight, and records the
/// full-register entanglement together with the band-projected IPR.
/// Returns, per band, (sum of Q, sum of N_b/xi, sum of xi, count).
fn band_realization(
    params: &SpinModelParams,
    handle: RngHandle,
) -> Result<Vec<(f64, f64, f64, usize)>> {
    let mut rng = handle.rng();
    let disorder = SpinDisorder::draw(params, &mut rng)?;
    let n = params.n;
    let bands: Vec<Vec<usize>> = (0..=n).map(|b| band_basis(n, b)).collect();
    let mut acc = vec![(0.0, 0.0, 0.0, 0usize); n + 1];
    let (even, odd) = parity_sectors(n);
    for sector in [&even, &odd] {
        let spectrum = eigensolve_symmetric(&disorder.sector_matrix(sector))?;
        for k in 0..spectrum.dim() {
            let v = spectrum.eigenvector(k);
            let psi = embed_sector_vector(&v, sector, n)?;
            let amps = psi.amplitudes();
            // band weights; dominant one classifies the state
            let mut best = 0usize;
            let mut best_w = -1.0;
            for (b, basis) in bands.iter().enumerate() {
                let w: f64 = basis.iter().map(|&i| amps[i].norm_sqr()).sum();
                if w > best_w {
                    best_w = w;
                    best = b;
                }
            }
            let projected: Vec<f64> = bands[best].iter().map(|&i| amps[i].norm()).collect();
            let norm: f64 = projected.iter().map(|x| x * x).sum();
            let xi_band = {
                let s4: f64 = projected.iter().map(|x| x.powi(4)).sum();
                norm * norm / s4
            };
            let q = measure(&psi)?.q;
            let slot = &mut acc[best];
            slot.0 += q;
            slot.1 += bands[best].len() as f64 / xi_band;
            slot.2 += xi_band;
            slot.3 += 1;
        }
    }
    Ok(acc)
}

/// Disorder-averaged per-band statistics. Realization `i` uses stream
/// `stream_base + i`; bands that received no state in a realization are
/// skipped for that realization.
pub fn band_run(
    params: &SpinModelParams,
    realizations: usize,
    seed: u64,
    stream_base: u64,
) -> Result<Vec<BandStats>> {
    if realizations < 2 {
        return Err(Error::domain("need at least 2 disorder realizations"));
    }
    let per_real: Vec<Vec<(f64, f64, f64, usize)>> = (0..realizations as u64)
        .into_par_iter()
        .map(|i| band_realization(params, RngHandle::new(seed, stream_base + i)))
        .collect::<Result<_>>()?;
    let n = params.n;
    let mut out = Vec::new();
    for b in 0..=n {
        let mut qs = Vec::new();
        let mut ratios = Vec::new();
        let mut xis = Vec::new();
        for real in &per_real {
            let (q_sum, ratio_sum, xi_sum, count) = real[b];
            if count > 0 {
                qs.push(q_sum / count as f64);
                ratios.push(ratio_sum / count as f64);
                xis.push(xi_sum / count as f64);
            }
        }
        if qs.len() < 2 {
            continue;
        }
        out.push(BandStats {
            band: b,
            basis_size: band_basis(n, b).len(),
            eta: b as f64 / n as f64,
            q: MeanErr::from_samples(&qs),
            ratio: MeanErr::from_samples(&ratios),
            reduced_ipr: MeanErr::from_samples(&xis),
            realizations: qs.len(),
        });
    }
    Ok(out)
}

/// Banded spin-model driver: scaled per-band entanglement against the
/// reduced localization length.
#[derive(Debug, Clone)]
pub struct Fig1Config {
    /// Register sizes (default 10,12; keep <= 13 for dense diagonalization).
    pub ns: Vec<usize>,
    /// Coupling bounds J swept to scan the in-band localization length.
    pub js: Vec<f64>,
    /// Energy offset of every qubit (band gap scale).
    pub delta0: f64,
    /// Offset spread; must stay well below delta0 to keep bands separate.
    pub delta: f64,
    pub realizations: usize,
    pub seed: u64,
}

impl Default for Fig1Config {
    fn default() -> Self {
        Fig1Config {
            ns: vec![10, 12],
            js: vec![0.002, 0.005, 0.01, 0.02, 0.05, 0.1],
            delta0: 1.0,
            delta: 0.01,
            realizations: 8,
            seed: 1,
        }
    }
}

impl Fig1Config {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "ns" => self.ns = parse_list(key, value)?,
            "js" => self.js = parse_list(key, value)?,
            "delta0" => self.delta0 = parse_one(key, value)?,
            "delta" => self.delta = parse_one(key, value)?,
            "realizations" => self.realizations = parse_one(key, value)?,
            "seed" => self.seed = parse_one(key, value)?,
            _ => return Err(Error::domain(format!("unknown fig1 option: {key}"))),
        }
        Ok(())
    }

    pub fn echo(&self) -> Vec<(String, String)> {
        vec![
            ("ns".into(), join(&self.ns)),
            ("js".into(), join(&self.js)),
            ("delta0".into(), self.delta0.to_string()),
            ("delta".into(), self.delta.to_string()),
            ("realizations".into(), self.realizations.to_string()),
            ("seed".into(), self.seed.to_string()),
        ]
    }
}

pub fn fig1_bands(config: &Fig1Config, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let mut rows = Vec::new();
    let mut plot = String::from("band,n,j,eta,basis_size,x,q_mean,q_scaled,asymptote\n");
    let mut combo = 0u64;
    for &n in &config.ns {
        for &j in &config.js {
            let params = SpinModelParams {
                n,
                delta0: config.delta0,
                delta: config.delta,
                j,
            };
            params.validate()?;
            let stats = band_run(&params, config.realizations, config.seed, combo << 32)?;
            combo += 1;
            for band in &stats {
                rows.push(ResultRow {
                    experiment: "fig1".into(),
                    n,
                    big_n: 1usize << n,
                    params: format!(
                        "model=spin;delta0={};delta={};j={};band={};eta={}",
                        config.delta0, config.delta, j, band.band, band.eta
                    ),
                    q_mean: band.q.mean,
                    q_stderr: band.q.stderr,
                    ipr_mean: band.reduced_ipr.mean,
                    inv_ipr_mean: 0.0,
                    cxx_mean: 0.0,
                    cxy_mean: 0.0,
                    samples: band.realizations,
                    seed: config.seed,
                });
                // skip bands whose asymptote is zero (edge bands)
                let asym = band.asymptote();
                if asym > 0.0 && band.basis_size > 1 {
                    writeln!(
                        plot,
                        "{},{},{},{},{},{},{},{},{}",
                        band.band,
                        n,
                        j,
                        band.eta,
                        band.basis_size,
                        1.0 / band.ratio.mean,
                        band.q.mean,
                        band.q.mean / asym,
                        asym
                    )
                    .unwrap();
                }
            }
        }
    }
    let gp = "set datafile separator \",\"\n\
              set xlabel \"reduced localization length xi_b / N_b\"\n\
              set ylabel \"Q / 4 eta (1 - eta)\"\n\
              set logscale x\n\
              plot \"fig1_plot.csv\" every ::1 using 6:8 with points title \"bands\", \\\n\
                   1 with lines title \"delocalized limit\"\n";
    let mut paths = write_outputs(out_dir, "fig1", &rows, gp, &config.echo())?;
    let plot_path = out_dir.join("fig1_plot.csv");
    fs::write(&plot_path, plot)?;
    paths.push(plot_path);
    Ok(paths)
}

// ---------------------------------------------------------------------------
// spin model, delta = delta0
// ---------------------------------------------------------------------------

/// Disordered spin-model driver: raw and component-shuffled entanglement
/// against the IPR, next to the sector closed form.
#[derive(Debug, Clone)]
pub struct Fig2Config {
    pub ns: Vec<usize>,
    /// Coupling bounds J swept to scan delocalization.
    pub js: Vec<f64>,
    pub delta0: f64,
    pub delta: f64,
    pub realizations: usize,
    /// Central states kept per realization, as N/divisor (default N/16).
    pub state_divisor: usize,
    pub seed: u64,
}

impl Default for Fig2Config {
    fn default() -> Self {
        Fig2Config {
            ns: vec![8, 10],
            js: vec![0.05, 0.1, 0.2, 0.4, 0.8, 1.6],
            delta0: 1.0,
            delta: 1.0,
            realizations: 100,
            state_divisor: 16,
            seed: 2,
        }
    }
}

impl Fig2Config {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "ns" => self.ns = parse_list(key, value)?,
            "js" => self.js = parse_list(key, value)?,
            "delta0" => self.delta0 = parse_one(key, value)?,
            "delta" => self.delta = parse_one(key, value)?,
            "realizations" => self.realizations = parse_one(key, value)?,
            "state_divisor" => self.state_divisor = parse_one(key, value)?,
            "seed" => self.seed = parse_one(key, value)?,
            _ => return Err(Error::domain(format!("unknown fig2 option: {key}"))),
        }
        Ok(())
    }

    pub fn echo(&self) -> Vec<(String, String)> {
        vec![
            ("ns".into(), join(&self.ns)),
            ("js".into(), join(&self.js)),
            ("delta0".into(), self.delta0.to_string()),
            ("delta".into(), self.delta.to_string()),
            ("realizations".into(), self.realizations.to_string()),
            ("state_divisor".into(), self.state_divisor.to_string()),
            ("seed".into(), self.seed.to_string()),
        ]
    }
}

pub fn fig2_spin(config: &Fig2Config, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let mut rows = Vec::new();
    let mut combo = 0u64;
    for &n in &config.ns {
        for &j in &config.js {
            let params = SpinModelParams {
                n,
                delta0: config.delta0,
                delta: config.delta,
                j,
            };
            params.validate()?;
            let run = spin_run(
                &params,
                config.realizations,
                CountRule::FractionOfDim(config.state_divisor),
                EigenstateCriterion::MedianIndex,
                true,
                config.seed,
                combo << 32,
            )?;
            combo += 1;
            let tag = format!("delta0={};delta={};j={}", config.delta0, config.delta, j);
            let mut raw = ResultRow::from_stats("fig2-raw", n, tag.clone(), &run.raw, config.seed);
            raw.samples = config.realizations;
            rows.push(raw);
            let shuffled = run.shuffled.expect("shuffle requested");
            let mut shuf =
                ResultRow::from_stats("fig2-shuffled", n, tag.clone(), &shuffled, config.seed);
            shuf.samples = config.realizations;
            rows.push(shuf);
            // closed form at the measured mean inverse IPR
            let big_n = 1usize << n;
            let inv = shuffled.inv_ipr.mean;
            let value = q_spin_sector(big_n, inv)?;
            let pred = Prediction::new(
                FormulaId::SpinSector,
                vec![("N", big_n as f64), ("mean_inv_ipr", inv)],
                value,
            );
            let mut theory = prediction_row("fig2-theory", n, &pred, &tag, config.seed);
            theory.ipr_mean = shuffled.ipr.mean;
            rows.push(theory);
        }
    }
    let gp = "set datafile separator \",\"\n\
              set xlabel \"IPR\"\n\
              set ylabel \"Q (N-2)/N\"\n\
              set logscale x\n\
              plot \"fig2.csv\" every ::1 using (strcol(1) eq \"fig2-raw\" ? $7 : 1/0):($5*($3-2)/$3) with points title \"eigenvectors\", \\\n\
                   \"fig2.csv\" every ::1 using (strcol(1) eq \"fig2-shuffled\" ? $7 : 1/0):($5*($3-2)/$3) with points pt 3 title \"shuffled components\", \\\n\
                   \"fig2.csv\" every ::1 using (strcol(1) eq \"fig2-theory\" ? $7 : 1/0):($5*($3-2)/$3) with lines title \"closed form\"\n";
    write_outputs(out_dir, "fig2", &rows, gp, &config.echo())
}

// ---------------------------------------------------------------------------
// Anderson chain
// ---------------------------------------------------------------------------

/// Anderson-chain driver: mean entanglement against register size per
/// disorder strength, with C/n tail fits and the inset comparison of the
/// fitted constants against the adjacent-window and cosine closed forms.
#[derive(Debug, Clone)]
pub struct Fig3Config {
    pub ns: Vec<usize>,
    /// Disorder standard deviations.
    pub ws: Vec<f64>,
    pub realizations: usize,
    /// Eigenstates nearest E = 0 kept per realization.
    pub states: usize,
    /// Localization lengths of the exponential-envelope comparison runs.
    pub envelope_ls: Vec<f64>,
    /// Monte Carlo samples per envelope point.
    pub envelope_samples: usize,
    pub seed: u64,
}

impl Default for Fig3Config {
    fn default() -> Self {
        Fig3Config {
            ns: (6..=12).collect(),
            ws: vec![0.5, 1.0, 1.5, 2.0, 2.5],
            realizations: 200,
            states: 10,
            envelope_ls: vec![2.0, 4.0, 8.0],
            envelope_samples: 1000,
            seed: 3,
        }
    }
}

impl Fig3Config {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "ns" => self.ns = parse_list(key, value)?,
            "ws" => self.ws = parse_list(key, value)?,
            "realizations" => self.realizations = parse_one(key, value)?,
            "states" => self.states = parse_one(key, value)?,
            "envelope_ls" => self.envelope_ls = parse_list(key, value)?,
            "envelope_samples" => self.envelope_samples = parse_one(key, value)?,
            "seed" => self.seed = parse_one(key, value)?,
            _ => return Err(Error::domain(format!("unknown fig3 option: {key}"))),
        }
        Ok(())
    }

    pub fn echo(&self) -> Vec<(String, String)> {
        vec![
            ("ns".into(), join(&self.ns)),
            ("ws".into(), join(&self.ws)),
            ("realizations".into(), self.realizations.to_string()),
            ("states".into(), self.states.to_string()),
            ("envelope_ls".into(), join(&self.envelope_ls)),
            ("envelope_samples".into(), self.envelope_samples.to_string()),
            ("seed".into(), self.seed.to_string()),
        ]
    }
}

/// Large-size limit of the adjacent-window constant C = lim n<Q> at
/// window M = 2 xi, evaluated at a register size far above the window.
pub fn c_adjacent_limit(xi: f64) -> Result<f64> {
    let m = 2.0 * xi;
    let n = 30u32.max((4.0 * m).log2().ceil() as u32 + 1);
    Ok(q_adjacent_exact(n, m, 1.0 / xi)? * n as f64)
}

/// Large-size limit of the cosine-window constant at M = 2 xi, with the
/// power-of-two form continued to real M via r0 = log2(M).
pub fn c_cosine_limit(xi: f64) -> f64 {
    let m = 2.0 * xi;
    let r0 = m.log2();
    26.0 / 9.0 - 4.0 / m - 8.0 * (3.0 * r0 + 1.0) / (9.0 * m * m)
}

pub fn fig3_anderson(config: &Fig3Config, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let mut rows = Vec::new();
    let mut inset = String::from("series,param,xi,inv_ipr,c,residual\n");
    let mut meta = config.echo();
    for (combo, &w) in config.ws.iter().enumerate() {
        let sweep = disorder_sweep(
            &ModelSpec::Anderson { w },
            &config.ns,
            config.realizations,
            CountRule::Fixed(config.states),
            EigenstateCriterion::NearestEnergy(0.0),
            config.seed.wrapping_add(combo as u64),
        )?;
        let points: Vec<(usize, f64)> = sweep.iter().map(|r| (r.n, r.q_mean)).collect();
        let (c, residual) = fit_tail_constant(&points)?;
        let last = sweep.last().unwrap();
        meta.push((format!("fit_c_w{w}"), c.to_string()));
        meta.push((format!("fit_residual_w{w}"), residual.to_string()));
        writeln!(
            inset,
            "anderson-fit,{w},{},{},{c},{residual}",
            last.ipr_mean, last.inv_ipr_mean
        )
        .unwrap();
        rows.extend(sweep.into_iter().map(|mut r| {
            r.experiment = "fig3".into();
            r
        }));
    }
    // exponential-envelope comparison runs (the inset stars)
    for (combo, &l) in config.envelope_ls.iter().enumerate() {
        let spec = EnsembleSpec::ExpEnvelopeHaar { loc_length: l };
        let mut points = Vec::new();
        let mut last_stats = None;
        for &n in &config.ns {
            let seed = config
                .seed
                .wrapping_add(1000)
                .wrapping_add((combo * config.ns.len()) as u64);
            let stats = mc_stats(&spec, n, config.envelope_samples, seed)?;
            let mut row = ResultRow::from_stats("fig3-envelope", n, format!("l={l}"), &stats, seed);
            row.params = format!("ensemble={};l={l}", spec.label());
            points.push((n, stats.q.mean));
            rows.push(row);
            last_stats = Some(stats);
        }
        let (c, residual) = fit_tail_constant(&points)?;
        let last = last_stats.unwrap();
        writeln!(
            inset,
            "envelope-fit,{l},{},{},{c},{residual}",
            last.ipr.mean, last.inv_ipr.mean
        )
        .unwrap();
    }
    // closed-form inset curves over the measured IPR range
    let mut xi = 1.5;
    while xi <= 40.0 {
        if let Ok(c) = c_adjacent_limit(xi) {
            writeln!(inset, "adjacent-theory,{xi},{xi},{},{c},0", 1.0 / xi).unwrap();
        }
        writeln!(
            inset,
            "cosine-theory,{xi},{xi},{},{},0",
            1.0 / xi,
            c_cosine_limit(xi)
        )
        .unwrap();
        xi *= 1.25;
    }
    let gp = "set datafile separator \",\"\n\
              set xlabel \"n\"\n\
              set ylabel \"mean Q\"\n\
              plot \"fig3.csv\" every ::1 using (strcol(1) eq \"fig3\" ? $2 : 1/0):5 with points title \"Anderson\"\n\
              pause -1\n\
              set xlabel \"IPR\"\n\
              set ylabel \"C\"\n\
              plot \"fig3_inset.csv\" every ::1 using (strcol(1) eq \"anderson-fit\" ? $3 : 1/0):5 with points title \"fits\", \\\n\
                   \"fig3_inset.csv\" every ::1 using (strcol(1) eq \"envelope-fit\" ? $3 : 1/0):5 with points pt 3 title \"exp envelope\", \\\n\
                   \"fig3_inset.csv\" every ::1 using (strcol(1) eq \"adjacent-theory\" ? $3 : 1/0):5 with lines title \"adjacent window\", \\\n\
                   \"fig3_inset.csv\" every ::1 using (strcol(1) eq \"cosine-theory\" ? $3 : 1/0):5 with lines title \"cosine window\"\n";
    let mut paths = write_outputs(out_dir, "fig3", &rows, gp, &meta)?;
    let inset_path = out_dir.join("fig3_inset.csv");
    fs::write(&inset_path, inset)?;
    paths.push(inset_path);
    Ok(paths)
}

// ---------------------------------------------------------------------------
// smallworld network
// ---------------------------------------------------------------------------

/// Smallworld driver: mean entanglement and IPR against register size per
/// link density.
#[derive(Debug, Clone)]
pub struct Fig4Config {
    pub ns: Vec<usize>,
    pub w: f64,
    /// Link densities (round(pN) extra links).
    pub ps: Vec<f64>,
    pub realizations: usize,
    /// Eigenstates nearest E = 0 kept per realization.
    pub states: usize,
    pub seed: u64,
}

impl Default for Fig4Config {
    fn default() -> Self {
        Fig4Config {
            ns: (6..=11).collect(),
            w: 1.0,
            ps: vec![0.001, 0.01, 0.06],
            realizations: 40,
            states: 10,
            seed: 4,
        }
    }
}

impl Fig4Config {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "ns" => self.ns = parse_list(key, value)?,
            "w" => self.w = parse_one(key, value)?,
            "ps" => self.ps = parse_list(key, value)?,
            "realizations" => self.realizations = parse_one(key, value)?,
            "states" => self.states = parse_one(key, value)?,
            "seed" => self.seed = parse_one(key, value)?,
            _ => return Err(Error::domain(format!("unknown fig4 option: {key}"))),
        }
        Ok(())
    }

    pub fn echo(&self) -> Vec<(String, String)> {
        vec![
            ("ns".into(), join(&self.ns)),
            ("w".into(), self.w.to_string()),
            ("ps".into(), join(&self.ps)),
            ("realizations".into(), self.realizations.to_string()),
            ("states".into(), self.states.to_string()),
            ("seed".into(), self.seed.to_string()),
        ]
    }
}

pub fn fig4_smallworld(config: &Fig4Config, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let mut rows = Vec::new();
    for (combo, &p) in config.ps.iter().enumerate() {
        let sweep = disorder_sweep(
            &ModelSpec::Smallworld { w: config.w, p },
            &config.ns,
            config.realizations,
            CountRule::Fixed(config.states),
            EigenstateCriterion::NearestEnergy(0.0),
            config.seed.wrapping_add(combo as u64),
        )?;
        rows.extend(sweep.into_iter().map(|mut r| {
            r.experiment = "fig4".into();
            r
        }));
    }
    let gp = "set datafile separator \",\"\n\
              set xlabel \"n\"\n\
              set ylabel \"mean Q\"\n\
              plot \"fig4.csv\" every ::1 using 2:5 with points title \"smallworld\"\n\
              pause -1\n\
              set ylabel \"log10 IPR\"\n\
              plot \"fig4.csv\" every ::1 using 2:(log10($7)) with points title \"smallworld\"\n";
    write_outputs(out_dir, "fig4", &rows, gp, &config.echo())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::validate_csv;

    fn read(path: &Path) -> String {
        fs::read_to_string(path).unwrap()
    }

    #[test]
    fn fig4_tiny_run_writes_valid_outputs() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = Fig4Config::default();
        config.ns = vec![5, 6];
        config.ps = vec![0.0, 0.06];
        config.realizations = 3;
        config.states = 2;
        let paths = fig4_smallworld(&config, dir.path()).unwrap();
        assert_eq!(paths.len(), 3);
        let csv = read(&dir.path().join("fig4.csv"));
        assert_eq!(validate_csv(&csv).unwrap(), 4);
        let meta = read(&dir.path().join("fig4.meta"));
        assert!(meta.contains("seed=4"));
        assert!(meta.contains("version="));
        let gp = read(&dir.path().join("fig4.gp"));
        assert!(gp.contains("fig4.csv"));
    }

    #[test]
    fn fig4_rerun_is_byte_identical() {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        let mut config = Fig4Config::default();
        config.ns = vec![5];
        config.ps = vec![0.05];
        config.realizations = 3;
        config.states = 2;
        fig4_smallworld(&config, a.path()).unwrap();
        fig4_smallworld(&config, b.path()).unwrap();
        assert_eq!(read(&a.path().join("fig4.csv")), read(&b.path().join("fig4.csv")));
    }

    #[test]
    fn fig2_tiny_run_emits_three_series() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = Fig2Config::default();
        config.ns = vec![6];
        config.js = vec![0.5];
        config.realizations = 4;
        fig2_spin(&config, dir.path()).unwrap();
        let csv = read(&dir.path().join("fig2.csv"));
        validate_csv(&csv).unwrap();
        for series in ["fig2-raw", "fig2-shuffled", "fig2-theory"] {
            assert!(csv.contains(series), "missing {series}");
        }
    }

    #[test]
    fn fig3_tiny_run_writes_inset() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = Fig3Config::default();
        config.ns = vec![6, 7, 8];
        config.ws = vec![2.0];
        config.realizations = 5;
        config.states = 2;
        config.envelope_ls = vec![2.0];
        config.envelope_samples = 50;
        fig3_anderson(&config, dir.path()).unwrap();
        validate_csv(&read(&dir.path().join("fig3.csv"))).unwrap();
        let inset = read(&dir.path().join("fig3_inset.csv"));
        assert!(inset.contains("anderson-fit"));
        assert!(inset.contains("envelope-fit"));
        assert!(inset.contains("adjacent-theory"));
        assert!(inset.contains("cosine-theory"));
    }

    #[test]
    fn fig1_tiny_run_scaled_axes() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = Fig1Config::default();
        config.ns = vec![7];
        config.js = vec![0.05];
        config.realizations = 3;
        fig1_bands(&config, dir.path()).unwrap();
        validate_csv(&read(&dir.path().join("fig1.csv"))).unwrap();
        let plot = read(&dir.path().join("fig1_plot.csv"));
        assert!(plot.lines().count() > 1, "no plot rows emitted");
    }

    #[test]
    fn config_rejects_unknown_keys() {
        let mut config = Fig3Config::default();
        assert!(config.set("bogus", "1").is_err());
        assert!(config.set("ws", "0.5,1.0").is_ok());
        assert_eq!(config.ws, vec![0.5, 1.0]);
    }

    #[test]
    fn cosine_limit_matches_frozen_value_at_m4() {
        // M = 4 (xi = 2): 26/9 - 1 - 56/144
        let expected = 26.0 / 9.0 - 1.0 - 56.0 / 144.0;
        assert!((c_cosine_limit(2.0) - expected).abs() < 1e-12);
    }
}

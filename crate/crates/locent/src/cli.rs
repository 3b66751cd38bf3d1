//! Command-line interface.
//!
//! Exit codes: 0 success, 1 domain/configuration error, 2 numeric or
//! resource failure. Results go to stdout; the resolved configuration and
//! diagnostics go to stderr.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::ensembles::{AmplitudeProfile, EnsembleSpec, Parity};
use crate::error::{Error, Result};
use crate::harness::drivers::{
    fig1_bands, fig2_spin, fig3_anderson, fig4_smallworld, Fig1Config, Fig2Config, Fig3Config,
    Fig4Config,
};
use crate::harness::{disorder_sweep, mc_estimate, rows_to_csv, CountRule, ModelSpec};
use crate::measures::{meyer_wallach_q_via, QRoute};
use crate::models::EigenstateCriterion;
use crate::rng::RngHandle;
use crate::theory;

#[derive(Parser, Debug)]
#[command(
    name = "locent",
    version,
    about = "Entanglement and localization of n-qubit states: measures, \
             random ensembles, closed-form predictions, and disordered-model sweeps"
)]
struct Cli {
    /// Worker threads (default: available parallelism). Results are
    /// byte-identical for any worker count.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the built-in consistency suite (closed-form frozen values,
    /// measure route equivalence, combinatorial oracle agreement).
    Selftest,
    /// Evaluate one closed-form mean-entanglement prediction.
    Theory(TheoryArgs),
    /// Monte Carlo average of Q, IPR, and correlators over an ensemble.
    Mc(McArgs),
    /// Disorder-averaged eigenstate sweep of one physical model.
    Model(ModelArgs),
    /// Banded spin model: per-band scaled entanglement vs reduced
    /// localization length.
    Fig1(DriverArgs),
    /// Disordered spin model: raw and component-shuffled entanglement vs
    /// IPR, with the sector closed form.
    Fig2(DriverArgs),
    /// Anderson chain: entanglement vs size per disorder strength, tail
    /// fits, and the closed-form comparison of fitted constants.
    Fig3(DriverArgs),
    /// Smallworld network: entanglement and IPR vs size per link density.
    Fig4(DriverArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormulaArg {
    /// Random subset at measured mean 1/IPR (alias: eq3)
    RandomSubset,
    /// Haar-weighted random subset of size M (alias: eq4)
    CueSubset,
    /// Equal-amplitude random subset of size M (alias: eq5)
    EqualAmpSubset,
    /// Full-register Haar state
    Lubkin,
    /// Random subset restricted to a half-size symmetric sector
    SymHalved,
    /// Parity-sector eigenstates at measured mean 1/IPR
    SpinSector,
    /// Delocalized band limit 4 eta (1 - eta)
    BandLimit,
    /// Adjacent window, exact (alias: eq7)
    AdjacentExact,
    /// Adjacent window, power-of-two form (alias: eq8)
    AdjacentPow2,
    /// Cosine-modulated adjacent window (alias: eq10)
    Cosine,
    Eq3,
    Eq4,
    Eq5,
    Eq7,
    Eq8,
    Eq10,
}

impl FormulaArg {
    fn label(self) -> &'static str {
        use FormulaArg::*;
        match self {
            RandomSubset => "random-subset",
            CueSubset => "cue-subset",
            EqualAmpSubset => "equal-amp-subset",
            Lubkin => "lubkin",
            SymHalved => "sym-halved",
            SpinSector => "spin-sector",
            BandLimit => "band-limit",
            AdjacentExact => "adjacent-exact",
            AdjacentPow2 => "adjacent-pow2",
            Cosine => "cosine",
            Eq3 | Eq4 | Eq5 | Eq7 | Eq8 | Eq10 => unreachable!("aliases resolved before use"),
        }
    }
}

#[derive(Args, Debug)]
struct TheoryArgs {
    /// Which closed form to evaluate.
    #[arg(long, value_enum)]
    formula: FormulaArg,
    /// Number of qubits n (register dimension N = 2^n).
    #[arg(long)]
    n: u32,
    /// Support size M (may be fractional for the adjacent-window forms).
    #[arg(long)]
    m: Option<f64>,
    /// Mean inverse IPR <1/xi> in (0, 1].
    #[arg(long)]
    inv_ipr: Option<f64>,
    /// Band filling eta = n_b / n (band-limit only).
    #[arg(long)]
    eta: Option<f64>,
    /// Output format.
    #[arg(long, default_value = "plain")]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Plain,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EnsembleArg {
    /// M random positions, equal amplitudes, random phases
    EqualAmpSubset,
    /// M random positions carrying a Haar unit vector
    HaarSubset,
    /// M adjacent positions, equal amplitudes, random phases
    Adjacent,
    /// M adjacent positions carrying a Haar unit vector
    AdjacentHaar,
    /// Full Haar vector with exponential envelope exp(-x/l)
    ExpEnvelope,
    /// Cosine-modulated window of M adjacent positions
    Cosine,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SectorArg {
    Even,
    Odd,
}

#[derive(Args, Debug)]
struct McArgs {
    #[arg(long, value_enum)]
    ensemble: EnsembleArg,
    /// Number of qubits.
    #[arg(long)]
    n: usize,
    /// Support size M (subset/window ensembles).
    #[arg(long)]
    m: Option<usize>,
    /// Localization length l (exp-envelope only).
    #[arg(long)]
    l: Option<f64>,
    /// Restrict subset positions to one parity sector.
    #[arg(long, value_enum)]
    sector: Option<SectorArg>,
    /// Independent draws (>= 2).
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Master seed; drawn from system entropy (and printed) if absent.
    #[arg(long)]
    seed: Option<u64>,
    /// Directory to also write mc.csv into.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    Spin,
    Anderson,
    Smallworld,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CriterionArg {
    /// States centered on the sorted-spectrum midpoint.
    Median,
    /// States nearest E = 0.
    Nearest0,
}

#[derive(Args, Debug)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Register sizes, comma-separated (e.g. 6,7,8).
    #[arg(long, value_delimiter = ',')]
    ns: Vec<usize>,
    /// Disorder standard deviation w (anderson/smallworld).
    #[arg(long, default_value_t = 1.0)]
    w: f64,
    /// Extra-link density p (smallworld).
    #[arg(long, default_value_t = 0.0)]
    p: f64,
    /// Energy offset Delta_0 (spin).
    #[arg(long, default_value_t = 1.0)]
    delta0: f64,
    /// Offset spread delta (spin).
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    /// Coupling bound J (spin).
    #[arg(long, default_value_t = 0.5)]
    j: f64,
    /// Measure component-shuffled copies instead of the raw eigenstates (spin).
    #[arg(long)]
    shuffle: bool,
    /// Disorder realizations (>= 2).
    #[arg(long, default_value_t = 100)]
    realizations: usize,
    /// Eigenstates kept per realization.
    #[arg(long, default_value_t = 10)]
    states: usize,
    #[arg(long, value_enum, default_value = "nearest0")]
    criterion: CriterionArg,
    #[arg(long)]
    seed: Option<u64>,
    /// Directory to also write model.csv into.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DriverArgs {
    /// Output directory for the CSV, plot script, and metadata sidecar.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// key=value config file; one pair per line, '#' comments allowed.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Inline key=value override (repeatable; wins over --config).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    /// Master seed override (wins over --config and --set).
    #[arg(long)]
    seed: Option<u64>,
}

/// Parses argv and runs; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(workers) = cli.workers {
        if workers == 0 {
            eprintln!("domain error: --workers must be positive");
            return 1;
        }
        // ignore the error if a pool already exists (tests call run() repeatedly)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Selftest => selftest(),
        Command::Theory(args) => theory_cmd(args),
        Command::Mc(args) => mc_cmd(args),
        Command::Model(args) => model_cmd(args),
        Command::Fig1(args) => {
            let mut config = Fig1Config::default();
            resolve_driver(&args, |k, v| config.set(k, v))?;
            if let Some(seed) = args.seed {
                config.seed = seed;
            }
            echo(&config.echo());
            report_paths(&fig1_bands(&config, &args.out)?)
        }
        Command::Fig2(args) => {
            let mut config = Fig2Config::default();
            resolve_driver(&args, |k, v| config.set(k, v))?;
            if let Some(seed) = args.seed {
                config.seed = seed;
            }
            echo(&config.echo());
            report_paths(&fig2_spin(&config, &args.out)?)
        }
        Command::Fig3(args) => {
            let mut config = Fig3Config::default();
            resolve_driver(&args, |k, v| config.set(k, v))?;
            if let Some(seed) = args.seed {
                config.seed = seed;
            }
            echo(&config.echo());
            report_paths(&fig3_anderson(&config, &args.out)?)
        }
        Command::Fig4(args) => {
            let mut config = Fig4Config::default();
            resolve_driver(&args, |k, v| config.set(k, v))?;
            if let Some(seed) = args.seed {
                config.seed = seed;
            }
            echo(&config.echo());
            report_paths(&fig4_smallworld(&config, &args.out)?)
        }
    }
}

fn echo(pairs: &[(String, String)]) {
    for (k, v) in pairs {
        eprintln!("{k}={v}");
    }
}

fn report_paths(paths: &[PathBuf]) -> Result<()> {
    for p in paths {
        println!("{}", p.display());
    }
    Ok(())
}

/// Applies config-file pairs, then inline --set pairs (later wins).
fn resolve_driver(
    args: &DriverArgs,
    mut set: impl FnMut(&str, &str) -> Result<()>,
) -> Result<()> {
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path)?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::domain(format!("{}:{}: expected key=value", path.display(), lineno + 1))
            })?;
            set(k.trim(), v.trim())?;
        }
    }
    for pair in &args.sets {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| Error::domain(format!("--set {pair:?}: expected key=value")))?;
        set(k.trim(), v.trim())?;
    }
    Ok(())
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    match seed {
        Some(s) => s,
        None => {
            let s = rand::random::<u64>();
            eprintln!("seed={s}");
            s
        }
    }
}

fn require<T: Copy>(value: Option<T>, flag: &str, formula: &str) -> Result<T> {
    value.ok_or_else(|| Error::domain(format!("{formula} requires {flag}")))
}

fn theory_cmd(args: TheoryArgs) -> Result<()> {
    use FormulaArg::*;
    let n = args.n;
    if n == 0 || n > 63 {
        return Err(Error::domain(format!("n={n} outside [1, 63]")));
    }
    let big_n = 1usize << n;
    let name = |f: FormulaArg| -> FormulaArg {
        // equation-style aliases map onto the named forms
        match f {
            Eq3 => RandomSubset,
            Eq4 => CueSubset,
            Eq5 => EqualAmpSubset,
            Eq7 => AdjacentExact,
            Eq8 => AdjacentPow2,
            Eq10 => Cosine,
            other => other,
        }
    };
    let formula = name(args.formula);
    let mut inputs: Vec<(&str, f64)> = vec![("n", n as f64), ("N", big_n as f64)];
    let value = match formula {
        RandomSubset => {
            let inv = require(args.inv_ipr, "--inv-ipr", "random-subset")?;
            inputs.push(("inv_ipr", inv));
            theory::q_random_subset(big_n, inv)?
        }
        CueSubset => {
            let m = require(args.m, "--m", "cue-subset")? as usize;
            inputs.push(("m", m as f64));
            theory::q_cue_subset(big_n, m)?
        }
        EqualAmpSubset => {
            let m = require(args.m, "--m", "equal-amp-subset")? as usize;
            inputs.push(("m", m as f64));
            theory::q_equal_amp_subset(big_n, m)?
        }
        Lubkin => theory::q_lubkin(big_n)?,
        SymHalved => {
            let inv = require(args.inv_ipr, "--inv-ipr", "sym-halved")?;
            inputs.push(("inv_ipr", inv));
            theory::q_sym_halved(big_n, inv)?
        }
        SpinSector => {
            let inv = require(args.inv_ipr, "--inv-ipr", "spin-sector")?;
            inputs.push(("inv_ipr", inv));
            theory::q_spin_sector(big_n, inv)?
        }
        BandLimit => {
            let eta = require(args.eta, "--eta", "band-limit")?;
            inputs.push(("eta", eta));
            theory::q_band_limit(eta)?
        }
        AdjacentExact => {
            let m = require(args.m, "--m", "adjacent-exact")?;
            let inv = require(args.inv_ipr, "--inv-ipr", "adjacent-exact")?;
            inputs.push(("m", m));
            inputs.push(("inv_ipr", inv));
            theory::q_adjacent_exact(n, m, inv)?
        }
        AdjacentPow2 => {
            let m = require(args.m, "--m", "adjacent-pow2")?;
            let inv = require(args.inv_ipr, "--inv-ipr", "adjacent-pow2")?;
            inputs.push(("m", m));
            inputs.push(("inv_ipr", inv));
            theory::q_adjacent_pow2(n, m, inv)?
        }
        Cosine => {
            let m = require(args.m, "--m", "cosine")? as usize;
            inputs.push(("m", m as f64));
            theory::q_cosine(n, m)?
        }
        Eq3 | Eq4 | Eq5 | Eq7 | Eq8 | Eq10 => unreachable!("aliases resolved above"),
    };
    match args.format {
        Format::Plain => println!("{value:.15}"),
        Format::Json => {
            let mut map = serde_json::Map::new();
            map.insert(
                "formula".into(),
                serde_json::Value::String(formula.label().into()),
            );
            for (k, v) in inputs {
                map.insert(k.into(), serde_json::json!(v));
            }
            map.insert("value".into(), serde_json::json!(value));
            println!("{}", serde_json::Value::Object(map));
        }
    }
    Ok(())
}

fn mc_cmd(args: McArgs) -> Result<()> {
    let sector = args.sector.map(|s| match s {
        SectorArg::Even => Parity::Even,
        SectorArg::Odd => Parity::Odd,
    });
    let need_m = |m: Option<usize>, which: &str| -> Result<usize> {
        m.ok_or_else(|| Error::domain(format!("{which} requires --m")))
    };
    let spec = match args.ensemble {
        EnsembleArg::EqualAmpSubset => EnsembleSpec::RandomSubsetEqualAmp {
            m: need_m(args.m, "equal-amp-subset")?,
            sector,
        },
        EnsembleArg::HaarSubset => EnsembleSpec::RandomSubsetHaar {
            m: need_m(args.m, "haar-subset")?,
            sector,
        },
        EnsembleArg::Adjacent => EnsembleSpec::AdjacentWindow {
            m: need_m(args.m, "adjacent")?,
            profile: AmplitudeProfile::EqualAmp,
        },
        EnsembleArg::AdjacentHaar => EnsembleSpec::AdjacentWindow {
            m: need_m(args.m, "adjacent-haar")?,
            profile: AmplitudeProfile::Haar,
        },
        EnsembleArg::ExpEnvelope => EnsembleSpec::ExpEnvelopeHaar {
            loc_length: args
                .l
                .ok_or_else(|| Error::domain("exp-envelope requires --l"))?,
        },
        EnsembleArg::Cosine => EnsembleSpec::CosineWindow {
            m: need_m(args.m, "cosine")?,
        },
    };
    let seed = resolve_seed(args.seed);
    eprintln!(
        "ensemble={} n={} samples={} seed={seed}",
        spec.label(),
        args.n,
        args.samples
    );
    let row = mc_estimate(&spec, args.n, args.samples, seed)?;
    let csv = rows_to_csv(std::slice::from_ref(&row));
    print!("{csv}");
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("mc.csv"), csv)?;
    }
    Ok(())
}

fn model_cmd(args: ModelArgs) -> Result<()> {
    if args.ns.is_empty() {
        return Err(Error::domain("--ns must list at least one register size"));
    }
    let model = match args.model {
        ModelArg::Spin => ModelSpec::Spin {
            delta0: args.delta0,
            delta: args.delta,
            j: args.j,
            shuffle: args.shuffle,
        },
        ModelArg::Anderson => ModelSpec::Anderson { w: args.w },
        ModelArg::Smallworld => ModelSpec::Smallworld { w: args.w, p: args.p },
    };
    let criterion = match args.criterion {
        CriterionArg::Median => EigenstateCriterion::MedianIndex,
        CriterionArg::Nearest0 => EigenstateCriterion::NearestEnergy(0.0),
    };
    let seed = resolve_seed(args.seed);
    eprintln!(
        "{} ns={:?} realizations={} states={} seed={seed}",
        model.label(),
        args.ns,
        args.realizations,
        args.states
    );
    let rows = disorder_sweep(
        &model,
        &args.ns,
        args.realizations,
        CountRule::Fixed(args.states),
        criterion,
        seed,
    )?;
    let csv = rows_to_csv(&rows);
    print!("{csv}");
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("model.csv"), csv)?;
    }
    Ok(())
}

fn check(name: &str, ok: bool, failures: &mut usize) {
    if ok {
        println!("ok   {name}");
    } else {
        println!("FAIL {name}");
        *failures += 1;
    }
}

/// Quick consistency suite: frozen closed-form values, equality of the two
/// entanglement computation routes on random states, and agreement of the
/// adjacent-window closed form with its exhaustive combinatorial oracle.
fn selftest() -> Result<()> {
    let mut failures = 0usize;

    let lubkin = theory::q_lubkin(32)?;
    check("lubkin N=32 = 30/33", (lubkin - 30.0 / 33.0).abs() < 1e-15, &mut failures);
    let adj = theory::q_adjacent_exact(6, 4.0, 0.25)?;
    check(
        "adjacent-exact n=6 M=4 frozen value",
        (adj - 0.42447916666666663).abs() < 1e-12,
        &mut failures,
    );
    let cue = theory::q_cue_subset(64, 8)?;
    check(
        "cue-subset N=64 M=8 = (7/9)(62/63)",
        (cue - 7.0 / 9.0 * 62.0 / 63.0).abs() < 1e-15,
        &mut failures,
    );

    let mut route_ok = true;
    for n in 2..=8usize {
        for s in 0..50u64 {
            let psi = crate::ensembles::sample(
                &EnsembleSpec::RandomSubsetHaar { m: (1 << n) / 2, sector: None },
                n,
                RngHandle::new(777, (n as u64) << 16 | s),
            )?
            .state;
            let a = meyer_wallach_q_via(&psi, QRoute::Gram)?;
            let b = meyer_wallach_q_via(&psi, QRoute::Purity)?;
            if (a - b).abs() > 1e-10 {
                route_ok = false;
            }
        }
    }
    check("gram route == purity route (1e-10)", route_ok, &mut failures);

    let mut oracle_ok = true;
    for n in 3..=7u32 {
        for m in 2..=(1usize << n) / 2 {
            let exact = theory::q_adjacent_exact(n, m as f64, 0.3)?;
            let oracle = theory::q_adjacent_oracle(n, m, 0.3)?;
            if (exact - oracle).abs() > 1e-12 {
                oracle_ok = false;
            }
        }
    }
    check("adjacent closed form == exhaustive oracle (1e-12)", oracle_ok, &mut failures);

    if failures > 0 {
        return Err(Error::numeric(format!("selftest: {failures} check(s) failed")));
    }
    println!("selftest passed");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theory_alias_matches_named_formula() {
        // both spellings must evaluate the same closed form
        assert_eq!(run(["locent", "theory", "--formula", "eq7", "--n", "6", "--m", "4", "--inv-ipr", "0.25"]), 0);
        assert_eq!(
            run(["locent", "theory", "--formula", "adjacent-exact", "--n", "6", "--m", "4", "--inv-ipr", "0.25"]),
            0
        );
    }

    #[test]
    fn missing_required_input_is_a_domain_error() {
        assert_eq!(run(["locent", "theory", "--formula", "eq7", "--n", "6"]), 1);
    }

    #[test]
    fn unknown_flag_rejected() {
        assert_eq!(run(["locent", "theory", "--formula", "lubkin", "--n", "5", "--bogus", "1"]), 1);
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(run(["locent", "--help"]), 0);
        assert_eq!(run(["locent", "theory", "--help"]), 0);
    }

    #[test]
    fn oversized_model_is_a_resource_error() {
        assert_eq!(
            run([
                "locent", "model", "--model", "spin", "--ns", "20", "--realizations", "2",
                "--seed", "1"
            ]),
            2
        );
    }

    #[test]
    fn selftest_passes() {
        assert_eq!(run(["locent", "selftest"]), 0);
    }
}

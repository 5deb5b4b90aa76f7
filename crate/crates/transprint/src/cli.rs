//! The `transprint` command.
//!
//! Exit codes: 0 on success (and on a match for `identify`), 1 on usage or
//! I/O errors, 2 when `identify` finds no match.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use transprint_core::simulator::GroundTruth;
use transprint_core::{
    clean, feature_triangle, generate_fleet, inter_device_matrix, intra_device_matrix,
    probe_from_cycle, variation_stats, DeviceHistory, FeatureKind, FingerprintStore, FleetConfig,
    DEFAULT_DECISION_THRESHOLD, DEFAULT_WINDOW,
};

use crate::corpus::{load_corpus, read_record_dir, save_corpus, write_record_dir};
use crate::format::parse_record;
use crate::manifest::{default_manifest_path, ManifestBuilder};
use crate::report;
use crate::store::{load_store, save_store};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_NO_MATCH: i32 = 2;

/// Environment variable that, when set, overrides `simulate --seed`.
pub const SEED_ENV: &str = "TRANSPRINT_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "transprint",
    version,
    about = "Frequency fingerprints for fixed-frequency transmon devices"
)]
pub struct Cli {
    /// Where to write the run manifest (defaults next to the primary output).
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a directory of record files into a corpus database.
    Ingest(IngestArgs),
    /// Remove duplicate, invalid and incomplete records.
    Clean(CleanArgs),
    /// Scaled Euclidean distance matrix of one qubit feature.
    Analyze(AnalyzeArgs),
    /// Enroll (or re-enroll) device fingerprints into a store.
    Enroll(EnrollArgs),
    /// Identify a single calibration record against a store.
    Identify(IdentifyArgs),
    /// Intra- and inter-device fingerprint distance matrices.
    Evaluate(EvaluateArgs),
    /// Generate a synthetic fleet corpus with ground truth.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Fail if any file cannot be parsed.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct CleanArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub report: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FeatureArg {
    Frequency,
    T1,
    T2,
    #[value(name = "readout_error")]
    ReadoutError,
}

impl From<FeatureArg> for FeatureKind {
    fn from(f: FeatureArg) -> Self {
        match f {
            FeatureArg::Frequency => FeatureKind::Frequency,
            FeatureArg::T1 => FeatureKind::T1,
            FeatureArg::T2 => FeatureKind::T2,
            FeatureArg::ReadoutError => FeatureKind::ReadoutError,
        }
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub cleaned: PathBuf,
    #[arg(long, value_enum)]
    pub feature: FeatureArg,
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    pub window: usize,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the matrix as a JSON document.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Comma-separated subset of devices, in the order to plot them.
    #[arg(long, value_delimiter = ',')]
    pub devices: Vec<String>,
    /// Write a gnuplot script `<out>.gp` next to the CSV.
    #[arg(long)]
    pub emit_gnuplot: bool,
}

#[derive(Debug, Args)]
pub struct EnrollArgs {
    #[arg(long)]
    pub cleaned: PathBuf,
    /// Comma-separated devices to enroll (default: all).
    #[arg(long, value_delimiter = ',')]
    pub devices: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    pub window: usize,
    #[arg(long)]
    pub store: PathBuf,
    /// Per-qubit threshold in GHz (default: mean frequency range of the enrolled devices).
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Provenance note stored with new fingerprints.
    #[arg(long)]
    pub source: Option<String>,
}

#[derive(Debug, Args)]
pub struct IdentifyArgs {
    /// A single calibration record document.
    #[arg(long)]
    pub probe: PathBuf,
    #[arg(long)]
    pub store: PathBuf,
    #[arg(long, default_value_t = DEFAULT_DECISION_THRESHOLD)]
    pub decision_threshold: f64,
    #[arg(long, default_value = "json-v1")]
    pub schema: String,
    /// Write the match result as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub cleaned: PathBuf,
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    pub window: usize,
    #[arg(long)]
    pub out_prefix: String,
    /// Override the per-qubit threshold (GHz); default is the fleet's mean frequency range.
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub devices: Vec<String>,
    #[arg(long)]
    pub emit_gnuplot: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Fleet configuration JSON; omitted fields take the default fleet values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_FAILURE
            } else {
                EXIT_OK
            };
        }
    };
    let recorded: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match run(cli, recorded) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_FAILURE
        }
    }
}

pub fn run(cli: Cli, args: Vec<String>) -> anyhow::Result<i32> {
    let manifest = cli.manifest;
    match cli.command {
        Command::Ingest(a) => ingest(a, args, manifest),
        Command::Clean(a) => clean_cmd(a, args, manifest),
        Command::Analyze(a) => analyze(a, args, manifest),
        Command::Enroll(a) => enroll_cmd(a, args, manifest),
        Command::Identify(a) => identify_cmd(a, args, manifest),
        Command::Evaluate(a) => evaluate(a, args, manifest),
        Command::Simulate(a) => simulate(a, args, manifest),
    }
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn finish(builder: ManifestBuilder, path: Option<PathBuf>) -> anyhow::Result<()> {
    if let Some(path) = path {
        builder.finish()?.write(&path)?;
    }
    Ok(())
}

fn select_devices(
    all: Vec<DeviceHistory>,
    wanted: &[String],
) -> anyhow::Result<Vec<DeviceHistory>> {
    if wanted.is_empty() {
        return Ok(all);
    }
    wanted
        .iter()
        .map(|id| {
            all.iter()
                .find(|d| &d.device_id == id)
                .cloned()
                .with_context(|| format!("device {id} not found in corpus"))
        })
        .collect()
}

fn ingest(a: IngestArgs, args: Vec<String>, manifest: Option<PathBuf>) -> anyhow::Result<i32> {
    let mut m = ManifestBuilder::start("ingest", args);
    m.input(&a.input);
    let scan = read_record_dir(&a.input)?;
    for failure in &scan.failures {
        eprintln!("error: {}: {}", failure.path.display(), failure.error);
    }
    if a.strict && !scan.failures.is_empty() {
        eprintln!(
            "ingest aborted: {} file(s) could not be parsed",
            scan.failures.len()
        );
        return Ok(EXIT_FAILURE);
    }
    save_corpus(&a.out, &scan.histories, false)?;
    m.output(&a.out);

    println!("{:<20} {:>8} {:>7}", "device", "records", "qubits");
    for h in &scan.histories {
        println!(
            "{:<20} {:>8} {:>7}",
            h.device_id,
            h.records.len(),
            h.num_qubits
        );
    }
    println!(
        "{} device(s), {} file(s) skipped",
        scan.histories.len(),
        scan.failures.len()
    );
    finish(
        m,
        Some(manifest.unwrap_or_else(|| default_manifest_path(&a.out))),
    )?;
    Ok(EXIT_OK)
}

fn clean_cmd(a: CleanArgs, args: Vec<String>, manifest: Option<PathBuf>) -> anyhow::Result<i32> {
    let mut m = ManifestBuilder::start("clean", args);
    m.input(&a.corpus);
    let (histories, _) = load_corpus(&a.corpus)?;
    let (cleaned, reports): (Vec<_>, Vec<_>) = clean(&histories).into_iter().unzip();
    save_corpus(&a.out, &cleaned, true)?;
    write_file(&a.report, report::cleaning_reports_to_json(&reports))?;
    m.output(&a.out);
    m.output(&a.report);
    print!("{}", report::cleaning_table(&reports));
    finish(
        m,
        Some(manifest.unwrap_or_else(|| default_manifest_path(&a.out))),
    )?;
    Ok(EXIT_OK)
}

fn analyze(a: AnalyzeArgs, args: Vec<String>, manifest: Option<PathBuf>) -> anyhow::Result<i32> {
    let mut m = ManifestBuilder::start("analyze", args);
    m.input(&a.cleaned);
    let (histories, _) = load_corpus(&a.cleaned)?;
    let devices = select_devices(histories, &a.devices)?;
    let feature = FeatureKind::from(a.feature);
    let matrix = feature_triangle(&devices, &feature, a.window)?;

    write_file(&a.out, report::matrix_to_csv(&matrix))?;
    m.output(&a.out);
    if let Some(json) = &a.json {
        write_file(json, report::matrix_to_json(&matrix))?;
        m.output(json);
    }
    if a.emit_gnuplot {
        let script = PathBuf::from(format!("{}.gp", a.out.display()));
        let csv_name = a.out.file_name().unwrap_or_default().to_string_lossy();
        write_file(
            &script,
            report::gnuplot_script(&csv_name, &format!("{feature} distances")),
        )?;
        m.output(script);
    }
    let below = matrix.off_diagonal().filter(|&d| d < 1.0).count();
    let total = matrix.off_diagonal().count();
    println!(
        "{feature}: {n}x{n} matrix, {below}/{total} off-diagonal entries < 1",
        n = matrix.size()
    );
    finish(
        m,
        Some(manifest.unwrap_or_else(|| default_manifest_path(&a.out))),
    )?;
    Ok(EXIT_OK)
}

fn enroll_cmd(a: EnrollArgs, args: Vec<String>, manifest: Option<PathBuf>) -> anyhow::Result<i32> {
    let mut m = ManifestBuilder::start("enroll", args);
    m.input(&a.cleaned);
    let (histories, _) = load_corpus(&a.cleaned)?;
    let devices = select_devices(histories, &a.devices)?;
    if devices.is_empty() {
        bail!("no devices to enroll");
    }
    let threshold = match a.threshold {
        Some(t) => t,
        None => variation_stats(&devices, a.window)?.delta_avg,
    };
    let mut store = if a.store.exists() {
        m.input(&a.store);
        load_store(&a.store)?
    } else {
        FingerprintStore::new()
    };
    println!("threshold {threshold} GHz, window {}", a.window);
    for device in &devices {
        let action = if store.get(&device.device_id).is_some() {
            store.reenroll(&device.device_id, device, a.window, threshold)?;
            "re-enrolled"
        } else {
            let mut fp = transprint_core::enroll(device, a.window, threshold)?;
            if let Some(source) = &a.source {
                fp.source = source.clone();
            }
            store.insert(fp)?;
            "enrolled"
        };
        println!("{:<20} {action}", device.device_id);
    }
    save_store(&store, &a.store)?;
    m.output(&a.store);
    finish(
        m,
        Some(manifest.unwrap_or_else(|| default_manifest_path(&a.store))),
    )?;
    Ok(EXIT_OK)
}

fn identify_cmd(
    a: IdentifyArgs,
    args: Vec<String>,
    manifest: Option<PathBuf>,
) -> anyhow::Result<i32> {
    let mut m = ManifestBuilder::start("identify", args);
    m.input(&a.store);
    m.input(&a.probe);
    let store = load_store(&a.store)?;
    if store.is_empty() {
        eprintln!("error: fingerprint store {} is empty", a.store.display());
        return Ok(EXIT_FAILURE);
    }
    let raw = fs::read(&a.probe).with_context(|| format!("reading {}", a.probe.display()))?;
    let record =
        parse_record(&raw, &a.schema).with_context(|| format!("parsing {}", a.probe.display()))?;
    let probe = probe_from_cycle(&record)?;
    let probe_id = format!(
        "{}@{}",
        record.device_id,
        crate::format::format_timestamp(&record.cycle_timestamp)
    );
    let result = store.identify(&probe, &probe_id, a.decision_threshold)?;
    print!("{}", report::match_table(&result));

    let manifest = manifest.or_else(|| a.out.as_deref().map(default_manifest_path));
    if let Some(out) = &a.out {
        write_file(out, report::match_to_json(&result))?;
        m.output(out);
    }
    finish(m, manifest)?;
    Ok(if result.matched().is_some() {
        EXIT_OK
    } else {
        EXIT_NO_MATCH
    })
}

#[derive(Debug, Serialize)]
struct EvaluationSummary {
    devices: Vec<String>,
    qubits_per_device: usize,
    window: usize,
    delta_avg: f64,
    delta_max: f64,
    threshold: f64,
    mean_intra: Option<f64>,
    mean_inter: Option<f64>,
}

fn evaluate(a: EvaluateArgs, args: Vec<String>, manifest: Option<PathBuf>) -> anyhow::Result<i32> {
    let mut m = ManifestBuilder::start("evaluate", args);
    m.input(&a.cleaned);
    let (histories, _) = load_corpus(&a.cleaned)?;
    let fleet = select_devices(histories, &a.devices)?;
    let stats = variation_stats(&fleet, a.window)?;
    let threshold = a.threshold.unwrap_or(stats.delta_avg);
    let intra = intra_device_matrix(&fleet, a.window, threshold)?;
    let inter = inter_device_matrix(&fleet, a.window, threshold)?;

    let summary = EvaluationSummary {
        devices: fleet.iter().map(|d| d.device_id.clone()).collect(),
        qubits_per_device: fleet[0].num_qubits,
        window: a.window,
        delta_avg: stats.delta_avg,
        delta_max: stats.delta_max,
        threshold,
        mean_intra: intra.off_diagonal_mean(),
        mean_inter: inter.off_diagonal_mean(),
    };
    let paths = [
        (
            format!("{}-intra.csv", a.out_prefix),
            report::matrix_to_csv(&intra),
        ),
        (
            format!("{}-inter.csv", a.out_prefix),
            report::matrix_to_csv(&inter),
        ),
        (
            format!("{}-summary.json", a.out_prefix),
            serde_json::to_string_pretty(&summary)? + "\n",
        ),
    ];
    for (path, contents) in &paths {
        write_file(Path::new(path), contents)?;
        m.output(path);
    }
    if a.emit_gnuplot {
        for kind in ["intra", "inter"] {
            let csv = format!("{}-{kind}.csv", a.out_prefix);
            let csv_name = Path::new(&csv)
                .file_name()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            let script = format!("{}-{kind}.gp", a.out_prefix);
            write_file(
                Path::new(&script),
                report::gnuplot_script(&csv_name, &format!("{kind}-device distances")),
            )?;
            m.output(script);
        }
    }
    let show = |v: Option<f64>| v.map_or_else(|| "n/a".to_string(), |v| format!("{v:.6}"));
    println!("threshold (mean frequency range): {threshold} GHz");
    println!("mean intra-device distance: {}", show(summary.mean_intra));
    println!("mean inter-device distance: {}", show(summary.mean_inter));
    let default_manifest = PathBuf::from(format!("{}-manifest.json", a.out_prefix));
    finish(m, Some(manifest.unwrap_or(default_manifest)))?;
    Ok(EXIT_OK)
}

/// Seed precedence: `TRANSPRINT_SEED`, then `--seed`, then the config file.
pub fn resolve_seed(env: Option<&str>, flag: Option<u64>, config: u64) -> anyhow::Result<u64> {
    match env {
        Some(raw) => raw
            .trim()
            .parse()
            .with_context(|| format!("{SEED_ENV}={raw} is not an unsigned integer")),
        None => Ok(flag.unwrap_or(config)),
    }
}

pub const GROUND_TRUTH_FILE: &str = "ground_truth.json";
pub const FLEET_CONFIG_FILE: &str = "fleet_config.json";
pub const RUN_MANIFEST_FILE: &str = "run-manifest.json";

fn simulate(a: SimulateArgs, args: Vec<String>, manifest: Option<PathBuf>) -> anyhow::Result<i32> {
    let mut m = ManifestBuilder::start("simulate", args);
    let mut config: FleetConfig = match &a.config {
        Some(path) => {
            m.input(path);
            let raw = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_slice(&raw).with_context(|| format!("parsing {}", path.display()))?
        }
        None => FleetConfig::default(),
    };
    let env = std::env::var(SEED_ENV).ok();
    config.seed = resolve_seed(env.as_deref(), a.seed, config.seed)?;
    m.seed(config.seed);

    if a.out.exists() && fs::read_dir(&a.out)?.next().is_some() {
        bail!("output directory {} is not empty", a.out.display());
    }
    let (fleet, truth): (Vec<DeviceHistory>, GroundTruth) = generate_fleet(&config)?;
    fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    m.outputs(write_record_dir(&a.out, &fleet)?);

    let truth_path = a.out.join(GROUND_TRUTH_FILE);
    write_file(&truth_path, serde_json::to_string_pretty(&truth)? + "\n")?;
    let config_path = a.out.join(FLEET_CONFIG_FILE);
    write_file(&config_path, serde_json::to_string_pretty(&config)? + "\n")?;
    m.output(truth_path);
    m.output(config_path);

    let records: usize = fleet.iter().map(|h| h.records.len()).sum();
    println!(
        "{} device(s) x {} qubits, {records} record(s), seed {}",
        fleet.len(),
        config.qubits_per_device,
        config.seed
    );
    finish(
        m,
        Some(manifest.unwrap_or_else(|| a.out.join(RUN_MANIFEST_FILE))),
    )?;
    Ok(EXIT_OK)
}

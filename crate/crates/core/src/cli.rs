//! `netrobust` command line.
//!
//! Every run needs an explicit seed wherever randomness is involved; there is
//! no clock-based fallback. Parameters may also come from a `--config`
//! key-value file, with command-line flags taking precedence.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use log::info;

use crate::attack::{
    simulate_attack, write_curve_csv, write_sequence_csv, AttackMode, AttackSpec, CurveKind,
    Strategy,
};
use crate::dataset::{
    build_experiment1, build_experiment2, evaluate_predictions, read_image, write_image,
    AttackParams, DatasetManifest, Exp1Params, Exp2Params,
};
use crate::error::Error;
use crate::graph::{read_edge_list, write_edge_list};
use crate::kv::parse_kv;
use crate::mask::{apply_mask, MaskKind, MaskSpec};
use crate::netgen::{generate, NetConfig, Topology};
use crate::rng::seeded;
use crate::stats::{
    cell_means, diff_table, read_error_csv, sweep_inputs, threshold_sweep, write_diff_csv,
    write_error_csv, write_sweep_csv, ConfigKey, DEFAULT_ALPHA,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;

pub const LOG_ENV: &str = "NETROBUST_LOG";

#[derive(Debug, Parser)]
#[command(
    name = "netrobust",
    version,
    about = "Directed network robustness toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate one network in RNET-EDGES format.
    Gen(GenArgs),
    /// Convert a network to its adjacency image (RIMG1).
    Image(ImageArgs),
    /// Run a node-removal attack and write the robustness curve.
    Attack(AttackArgs),
    /// Apply a null or confusion mask to an image.
    Mask(MaskArgs),
    /// Build an Experiment I or II dataset.
    Dataset {
        #[command(subcommand)]
        which: DatasetCommand,
    },
    /// Score a predictions directory against a dataset's test entries.
    Eval(EvalArgs),
    /// Find the first mask size whose errors are significantly worse.
    Sweep(SweepArgs),
    /// Compare null-mask against confusion-mask errors per cell.
    Difftable(DiffArgs),
}

#[derive(Debug, Subcommand)]
enum DatasetCommand {
    /// Unmasked training set, null-masked test replicas per mask size.
    Exp1(Exp1Args),
    /// Mixed training set of originals and masked variants.
    Exp2(Exp2Args),
}

#[derive(Debug, Args)]
struct GenArgs {
    /// er, qs, sw or sf
    #[arg(long)]
    topology: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Average degree (edges per node)
    #[arg(long, visible_alias = "k-avg")]
    k: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
    /// Key-value file with default values for the flags above
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ImageArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct AttackArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// ra, tb or td
    #[arg(long)]
    strategy: Option<String>,
    /// adaptive or static
    #[arg(long)]
    mode: Option<String>,
    /// connectivity or controllability
    #[arg(long)]
    kind: Option<String>,
    /// Required for random attacks
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    recompute_every: Option<usize>,
    #[arg(long)]
    out: PathBuf,
    /// Also write the removal order as `step,node` CSV
    #[arg(long)]
    sequence_out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MaskArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// null or confusion
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    size: Option<usize>,
    /// 1-based upper-left row; sampled from --seed when omitted
    #[arg(long)]
    row: Option<usize>,
    /// 1-based upper-left column; sampled from --seed when omitted
    #[arg(long)]
    col: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CommonDatasetArgs {
    /// Output directory
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated average degrees
    #[arg(long, visible_alias = "k-avg")]
    k: Option<String>,
    /// Comma-separated topologies (default: er,qs,sw,sf)
    #[arg(long)]
    topologies: Option<String>,
    #[arg(long)]
    strategy: Option<String>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    recompute_every: Option<usize>,
    /// Random-attack realizations averaged per curve
    #[arg(long)]
    realizations: Option<usize>,
    /// Master seed
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (0 = all cores)
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Exp1Args {
    #[command(flatten)]
    common: CommonDatasetArgs,
    /// Training instances per configuration
    #[arg(long)]
    train: Option<usize>,
    /// Test instances per configuration
    #[arg(long)]
    test: Option<usize>,
    /// Null-mask sizes: `10,20,30` or `start:stop:step`
    #[arg(long)]
    mask_sizes: Option<String>,
}

#[derive(Debug, Args)]
struct Exp2Args {
    #[command(flatten)]
    common: CommonDatasetArgs,
    /// Original networks per configuration
    #[arg(long)]
    originals: Option<usize>,
    /// Masked variants per original
    #[arg(long)]
    masked: Option<usize>,
    #[arg(long)]
    mask_size: Option<usize>,
    /// Comma-separated mask kinds (default: null,confusion)
    #[arg(long)]
    mask_kinds: Option<String>,
    /// Held-out test instances per configuration
    #[arg(long)]
    test: Option<usize>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    manifest: PathBuf,
    /// Directory of `<entry id>.csv` predicted curves
    #[arg(long)]
    predictions: PathBuf,
    /// Error report CSV
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Error report CSV(s) produced by `eval`
    #[arg(long, required = true, num_args = 1..)]
    errors: Vec<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
    /// Threshold report JSON
    #[arg(long)]
    out: PathBuf,
    /// Optional per-size CSV
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DiffArgs {
    /// Error report holding the null-mask rows
    #[arg(long)]
    null: PathBuf,
    /// Error report holding the confusion-mask rows
    #[arg(long)]
    confusion: PathBuf,
    /// Difference table CSV
    #[arg(long)]
    out: PathBuf,
    /// Optional JSON with the table and its positive/negative summary
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Defaults loaded from `--config`, restricted to the keys a subcommand knows.
struct Overrides(BTreeMap<String, String>);

impl Overrides {
    fn load(path: Option<&Path>, allowed: &[&str]) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Overrides(BTreeMap::new()));
        };
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let kv = parse_kv(&text)?;
        if let Some(k) = kv.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(usage(format!("unknown key {k:?} in {}", path.display())));
        }
        Ok(Overrides(kv))
    }

    fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.0.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| usage(format!("bad config value {key} = {v:?}"))),
        }
    }

    fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<T> {
        self.pick(flag, key)?
            .ok_or_else(|| usage(format!("missing required --{}", key.replace('_', "-"))))
    }
}

fn parse_enum<T: FromStr<Err = Error>>(s: &str) -> CliResult<T> {
    s.parse().map_err(|e: Error| usage(e.to_string()))
}

fn parse_list<T: FromStr>(s: &str, what: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|_| usage(format!("bad {what} {p:?}"))))
        .collect()
}

fn parse_enum_list<T: FromStr<Err = Error>>(s: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(parse_enum)
        .collect()
}

/// `a,b,c` or an inclusive `start:stop:step` range.
fn parse_sizes(s: &str) -> CliResult<Vec<usize>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [single] => parse_list(single, "mask size"),
        [start, stop, step] => {
            let bad = || usage(format!("bad size range {s:?}"));
            let start: usize = start.trim().parse().map_err(|_| bad())?;
            let stop: usize = stop.trim().parse().map_err(|_| bad())?;
            let step: usize = step.trim().parse().map_err(|_| bad())?;
            if step == 0 || start > stop {
                return Err(bad());
            }
            Ok((start..=stop).step_by(step).collect())
        }
        _ => Err(usage(format!("bad mask sizes {s:?}"))),
    }
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    Ok(BufWriter::new(
        File::create(path).map_err(|e| Error::io(path, e))?,
    ))
}

fn write_out<F>(path: &Path, f: F) -> CliResult<()>
where
    F: FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
{
    let mut w = create(path)?;
    f(&mut w).map_err(|e| Error::io(path, e))?;
    Ok(())
}

fn open(path: &Path) -> CliResult<BufReader<File>> {
    Ok(BufReader::new(
        File::open(path).map_err(|e| Error::io(path, e))?,
    ))
}

fn cmd_gen(a: GenArgs) -> CliResult<()> {
    let o = Overrides::load(
        a.config.as_deref(),
        &["topology", "n", "k_avg", "k", "seed"],
    )?;
    let topology: String = o.require(a.topology, "topology")?;
    let k = match o.pick(a.k, "k")? {
        Some(k) => k,
        None => o.require(None, "k_avg")?,
    };
    let cfg = NetConfig::new(
        parse_enum(&topology)?,
        o.require(a.n, "n")?,
        k,
        o.require(a.seed, "seed")?,
    );
    info!("gen: {cfg:?} -> {}", a.out.display());
    let g = generate(&cfg)?;
    write_out(&a.out, |w| write_edge_list(&g, w))
}

fn cmd_image(a: ImageArgs) -> CliResult<()> {
    info!("image: {} -> {}", a.input.display(), a.out.display());
    let g = read_edge_list(open(&a.input)?)?;
    write_image(&g.to_adjacency_image(), &a.out)?;
    Ok(())
}

fn cmd_attack(a: AttackArgs) -> CliResult<()> {
    let o = Overrides::load(
        a.config.as_deref(),
        &["strategy", "mode", "kind", "seed", "recompute_every"],
    )?;
    let strategy: Strategy = parse_enum(&o.require::<String>(a.strategy, "strategy")?)?;
    let mode: AttackMode = match o.pick::<String>(a.mode, "mode")? {
        Some(m) => parse_enum(&m)?,
        None => AttackMode::default(),
    };
    let kind: CurveKind = parse_enum(&o.require::<String>(a.kind, "kind")?)?;
    let seed = o.pick(a.seed, "seed")?;
    if strategy == Strategy::Random && seed.is_none() {
        return Err(usage("random attacks need --seed"));
    }
    let spec = AttackSpec {
        strategy,
        mode,
        seed: seed.unwrap_or(0),
        recompute_every: o.pick(a.recompute_every, "recompute_every")?.unwrap_or(1),
    };
    info!(
        "attack: {spec:?} kind={kind} {} -> {}",
        a.input.display(),
        a.out.display()
    );
    let g = read_edge_list(open(&a.input)?)?;
    let (seq, curve) = simulate_attack(&g, &spec, kind, &mut spec.rng())?;
    write_out(&a.out, |w| write_curve_csv(&curve, w))?;
    if let Some(p) = &a.sequence_out {
        write_out(p, |w| write_sequence_csv(&seq, w))?;
    }
    Ok(())
}

fn cmd_mask(a: MaskArgs) -> CliResult<()> {
    let o = Overrides::load(a.config.as_deref(), &["kind", "size", "row", "col", "seed"])?;
    let kind: MaskKind = parse_enum(&o.require::<String>(a.kind, "kind")?)?;
    let size: usize = o.require(a.size, "size")?;
    let img = read_image(&a.input)?;
    let row = o.pick(a.row, "row")?;
    let col = o.pick(a.col, "col")?;
    let spec = match (row, col) {
        (Some(row), Some(col)) => MaskSpec::new(kind, size, row, col),
        (None, None) => {
            let seed = o
                .pick(a.seed, "seed")?
                .ok_or_else(|| usage("give --row and --col, or --seed to sample them"))?;
            MaskSpec::random(kind, img.height(), size, &mut seeded(seed))?
        }
        _ => return Err(usage("--row and --col go together")),
    };
    info!(
        "mask: {spec:?} {} -> {}",
        a.input.display(),
        a.out.display()
    );
    write_image(&apply_mask(&img, &spec)?, &a.out)?;
    Ok(())
}

const COMMON_KEYS: &[&str] = &[
    "n",
    "k",
    "k_avg",
    "topologies",
    "strategy",
    "mode",
    "kind",
    "recompute_every",
    "realizations",
    "seed",
    "workers",
];

struct Common {
    n: usize,
    k_avg_list: Vec<f64>,
    topologies: Vec<Topology>,
    attack: AttackParams,
    curve_kind: CurveKind,
    master_seed: u64,
    workers: usize,
}

fn resolve_common(c: CommonDatasetArgs, o: &Overrides) -> CliResult<Common> {
    let k_text = match o.pick::<String>(c.k, "k")? {
        Some(k) => k,
        None => o.require(None, "k_avg")?,
    };
    let topologies = match o.pick::<String>(c.topologies, "topologies")? {
        Some(t) => parse_enum_list(&t)?,
        None => Topology::ALL.to_vec(),
    };
    let mode = match o.pick::<String>(c.mode, "mode")? {
        Some(m) => parse_enum(&m)?,
        None => AttackMode::default(),
    };
    Ok(Common {
        n: o.require(c.n, "n")?,
        k_avg_list: parse_list(&k_text, "average degree")?,
        topologies,
        attack: AttackParams {
            strategy: parse_enum(&o.require::<String>(c.strategy, "strategy")?)?,
            mode,
            recompute_every: o.pick(c.recompute_every, "recompute_every")?.unwrap_or(1),
            realizations: o.pick(c.realizations, "realizations")?.unwrap_or(1),
        },
        curve_kind: parse_enum(&o.require::<String>(c.kind, "kind")?)?,
        master_seed: o.require(c.seed, "seed")?,
        workers: o.pick(c.workers, "workers")?.unwrap_or(0),
    })
}

fn cmd_exp1(a: Exp1Args) -> CliResult<()> {
    let mut keys = COMMON_KEYS.to_vec();
    keys.extend(["train", "test", "mask_sizes"]);
    let o = Overrides::load(a.common.config.as_deref(), &keys)?;
    let out = a.common.out.clone();
    let c = resolve_common(a.common, &o)?;
    let params = Exp1Params {
        n: c.n,
        k_avg_list: c.k_avg_list,
        topologies: c.topologies,
        train_per_config: o.require(a.train, "train")?,
        test_per_config: o.require(a.test, "test")?,
        attack: c.attack,
        curve_kind: c.curve_kind,
        mask_sizes: match o.pick::<String>(a.mask_sizes, "mask_sizes")? {
            Some(s) => parse_sizes(&s)?,
            None => Vec::new(),
        },
        master_seed: c.master_seed,
    };
    info!(
        "dataset exp1: {params:?} workers={} -> {}",
        c.workers,
        out.display()
    );
    let m = build_experiment1(&params, &out, c.workers)?;
    info!("wrote {} entries", m.entries.len());
    Ok(())
}

fn cmd_exp2(a: Exp2Args) -> CliResult<()> {
    let mut keys = COMMON_KEYS.to_vec();
    keys.extend(["originals", "masked", "mask_size", "mask_kinds", "test"]);
    let o = Overrides::load(a.common.config.as_deref(), &keys)?;
    let out = a.common.out.clone();
    let c = resolve_common(a.common, &o)?;
    let params = Exp2Params {
        n: c.n,
        k_avg_list: c.k_avg_list,
        topologies: c.topologies,
        originals_per_config: o.require(a.originals, "originals")?,
        masked_per_original: o.require(a.masked, "masked")?,
        mask_size: o.require(a.mask_size, "mask_size")?,
        mask_kinds: match o.pick::<String>(a.mask_kinds, "mask_kinds")? {
            Some(k) => parse_enum_list(&k)?,
            None => vec![MaskKind::Null, MaskKind::Confusion],
        },
        test_per_config: o.pick(a.test, "test")?.unwrap_or(0),
        attack: c.attack,
        curve_kind: c.curve_kind,
        master_seed: c.master_seed,
    };
    info!(
        "dataset exp2: {params:?} workers={} -> {}",
        c.workers,
        out.display()
    );
    let m = build_experiment2(&params, &out, c.workers)?;
    info!("wrote {} entries", m.entries.len());
    Ok(())
}

fn cmd_eval(a: EvalArgs) -> CliResult<()> {
    info!(
        "eval: manifest={} predictions={} -> {}",
        a.manifest.display(),
        a.predictions.display(),
        a.out.display()
    );
    let manifest = DatasetManifest::load(&a.manifest)?;
    let dir = a.manifest.parent().unwrap_or(Path::new("."));
    let records = evaluate_predictions(&manifest, dir, &a.predictions)?;
    write_out(&a.out, |w| write_error_csv(&records, w))
}

fn load_reports(paths: &[PathBuf]) -> CliResult<Vec<crate::stats::ErrorRecord>> {
    let mut all = Vec::new();
    for p in paths {
        all.extend(read_error_csv(open(p)?)?);
    }
    Ok(all)
}

#[derive(serde::Serialize)]
struct SweepEntry<'a> {
    config: &'a ConfigKey,
    report: &'a crate::stats::ThresholdReport,
}

fn cmd_sweep(a: SweepArgs) -> CliResult<()> {
    info!(
        "sweep: errors={:?} alpha={} -> {}",
        a.errors,
        a.alpha,
        a.out.display()
    );
    let records = load_reports(&a.errors)?;
    let mut reports = BTreeMap::new();
    for (key, input) in sweep_inputs(&records) {
        if input.by_size.is_empty() {
            continue;
        }
        reports.insert(
            key,
            threshold_sweep(&input.by_size, &input.baseline, a.alpha)?,
        );
    }
    if reports.is_empty() {
        return Err(Error::InvalidSample("no configuration has null-masked errors".into()).into());
    }
    let entries: Vec<SweepEntry> = reports
        .iter()
        .map(|(config, report)| SweepEntry { config, report })
        .collect();
    let json = serde_json::to_string_pretty(&entries).map_err(Error::from)?;
    write_out(&a.out, |w| writeln!(w, "{json}"))?;
    if let Some(p) = &a.csv {
        write_out(p, |w| write_sweep_csv(&reports, w))?;
    }
    Ok(())
}

fn cmd_difftable(a: DiffArgs) -> CliResult<()> {
    info!(
        "difftable: null={} confusion={} -> {}",
        a.null.display(),
        a.confusion.display(),
        a.out.display()
    );
    let null = cell_means(
        &load_reports(std::slice::from_ref(&a.null))?,
        MaskKind::Null,
    );
    let conf = cell_means(
        &load_reports(std::slice::from_ref(&a.confusion))?,
        MaskKind::Confusion,
    );
    let table = diff_table(&null, &conf)?;
    write_out(&a.out, |w| write_diff_csv(&table, w))?;
    if let Some(p) = &a.json {
        let json = serde_json::to_string_pretty(&table).map_err(Error::from)?;
        write_out(p, |w| writeln!(w, "{json}"))?;
    }
    Ok(())
}

fn dispatch(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Image(a) => cmd_image(a),
        Command::Attack(a) => cmd_attack(a),
        Command::Mask(a) => cmd_mask(a),
        Command::Dataset { which } => match which {
            DatasetCommand::Exp1(a) => cmd_exp1(a),
            DatasetCommand::Exp2(a) => cmd_exp2(a),
        },
        Command::Eval(a) => cmd_eval(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Difftable(a) => cmd_difftable(a),
    }
}

fn init_logging() {
    let env = env_logger::Env::new().filter_or(LOG_ENV, "info");
    let _ = env_logger::Builder::from_env(env)
        .format_timestamp(None)
        .target(env_logger::Target::Stderr)
        .try_init();
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    init_logging();
    match dispatch(cli) {
        Ok(()) => EXIT_OK,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Core(e)) => {
            eprintln!("error: {e}");
            if e.is_io() {
                EXIT_IO
            } else {
                EXIT_VALIDATION
            }
        }
    }
}

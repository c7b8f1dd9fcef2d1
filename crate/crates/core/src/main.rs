use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hdlss::data::LabelVector;
use hdlss::distance::{cross, pairwise, AggregationOrder};
use hdlss::evaluate::misclassification_rate;
use hdlss::harness::{self, ExperimentConfig, Method, SetupChoice};
use hdlss::io::{read_condensed, read_labels, read_matrix_csv, write_atomic, write_condensed, write_matrix_csv};
use hdlss::learn::{cut_tree, knn_classify, linkage, pam, LinkageMethod};
use hdlss::simgen::{find_setup, generate, SetupSpec};
use hdlss::{DataMatrix, Error, FittedStandardisation, Result, StandardisationMethod};

#[derive(Parser)]
#[command(name = "hdlss", version, about = "Standardised Minkowski distances for clustering and classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate one dataset of a simulation setup into a directory
    Simulate(SimulateArgs),
    /// Standardise the columns of a CSV matrix
    Standardise(StandardiseArgs),
    /// Compute the condensed distance matrix of a CSV matrix
    Distmat(DistmatArgs),
    /// Cluster a condensed distance matrix; labels go to stdout
    Cluster(ClusterArgs),
    /// k-nearest-neighbour classification of test rows; predictions go to stdout
    Classify(ClassifyArgs),
    /// Run a simulation study and write per-replicate records plus a summary
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// catalogued setup name
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    setup: Option<String>,
    /// JSON file holding a custom setup specification
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    n_per_class: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// output directory (created if missing)
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct InputOptions {
    /// the CSV input starts with a header line
    #[arg(long)]
    header: bool,
    /// class labels of the input rows, needed by pooled methods
    #[arg(long)]
    labels: Option<PathBuf>,
}

#[derive(Args)]
struct StandardiseArgs {
    input: PathBuf,
    output: PathBuf,
    #[arg(long, required_unless_present = "apply_fit", conflicts_with = "apply_fit")]
    method: Option<StandardisationMethod>,
    #[command(flatten)]
    opts: InputOptions,
    /// store the fitted parameters as JSON
    #[arg(long)]
    save_fit: Option<PathBuf>,
    /// apply previously saved parameters to new data instead of fitting
    #[arg(long)]
    apply_fit: Option<PathBuf>,
}

#[derive(Args)]
struct DistmatArgs {
    input: PathBuf,
    output: PathBuf,
    #[arg(long)]
    q: AggregationOrder,
    #[arg(long, default_value = "none")]
    standardise: StandardisationMethod,
    #[command(flatten)]
    opts: InputOptions,
}

#[derive(Args)]
struct ClusterArgs {
    /// condensed distance matrix file
    input: PathBuf,
    /// pam, complete or average
    #[arg(long)]
    method: Method,
    #[arg(long)]
    k: usize,
    /// also write the labels to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    train: PathBuf,
    train_labels: PathBuf,
    test: PathBuf,
    #[arg(long, default_value = "1")]
    q: AggregationOrder,
    #[arg(long, default_value = "none")]
    standardise: StandardisationMethod,
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// both CSV inputs start with a header line
    #[arg(long)]
    header: bool,
    /// true test labels; the misclassification rate is reported on stderr
    #[arg(long)]
    truth: Option<PathBuf>,
    /// also write the predictions to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON configuration; the flags below override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// catalogued setup name
    #[arg(long, conflicts_with = "setup_file")]
    setup: Option<String>,
    /// JSON file holding a custom setup specification
    #[arg(long)]
    setup_file: Option<PathBuf>,
    #[arg(long)]
    n_per_class: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    replicates: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// comma-separated standardisation methods
    #[arg(long, value_delimiter = ',')]
    standardisations: Option<Vec<StandardisationMethod>>,
    /// comma-separated aggregation orders, e.g. 1,2,inf
    #[arg(long, value_delimiter = ',')]
    qs: Option<Vec<AggregationOrder>>,
    /// comma-separated subset of pam, complete, average, knn3
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<Method>>,
    /// allow pooled standardisation for clustering using the true labels
    #[arg(long)]
    oracle_pooling: bool,
    /// record wall time per learner run (results are then not reproducible)
    #[arg(long)]
    timing: bool,
    /// worker threads; defaults to $HDLSS_THREADS, then all cores
    #[arg(long)]
    threads: Option<usize>,
    /// results CSV; the summary goes to <stem>.summary.json beside it
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load_spec(path: &Path) -> Result<SetupSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn optional_labels(path: Option<&PathBuf>) -> Result<Option<LabelVector>> {
    path.map(read_labels).transpose()
}

fn print_labels(labels: &[u32]) -> Result<()> {
    let mut text = String::new();
    for l in labels {
        text.push_str(&format!("{l}\n"));
    }
    std::io::stdout()
        .lock()
        .write_all(text.as_bytes())
        .map_err(|e| io_error(Path::new("<stdout>"), e))
}

fn write_labels_to(path: &Path, labels: &[u32]) -> Result<()> {
    let text: String = labels.iter().map(|l| format!("{l}\n")).collect();
    write_atomic(path, text.as_bytes())
}

fn warn_constant(fit: &FittedStandardisation) {
    let constant = fit.constant_variables();
    if !constant.is_empty() {
        eprintln!(
            "warning: {} variable(s) have zero scale and map to 0 (first at column {})",
            constant.len(),
            constant[0] + 1
        );
    }
}

fn fit_on(x: &DataMatrix, method: StandardisationMethod, labels: Option<&LabelVector>) -> Result<FittedStandardisation> {
    if labels.is_some_and(|l| l.len() != x.n_rows()) {
        return Err(Error::Usage(format!(
            "{} labels for {} rows",
            labels.map_or(0, LabelVector::len),
            x.n_rows()
        )));
    }
    let fit = FittedStandardisation::fit(x, method, labels)?;
    warn_constant(&fit);
    Ok(fit)
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let spec = match (&args.setup, &args.spec) {
        (Some(name), _) => find_setup(name)?,
        (None, Some(path)) => load_spec(path)?,
        (None, None) => unreachable!("clap requires one of --setup and --spec"),
    }
    .with_size(args.n_per_class, args.p);
    generate(&spec, args.seed)?.write_to_dir(&args.out_dir)
}

fn standardise(args: StandardiseArgs) -> Result<()> {
    let x = read_matrix_csv(&args.input, args.opts.header)?;
    let (fit, out) = match &args.apply_fit {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
            let fit: FittedStandardisation = serde_json::from_str(&text)?;
            let out = fit.apply_new(&x)?;
            (fit, out)
        }
        None => {
            let method = args.method.expect("clap requires --method without --apply-fit");
            let labels = optional_labels(args.opts.labels.as_ref())?;
            let fit = fit_on(&x, method, labels.as_ref())?;
            let out = fit.apply_training(&x)?;
            (fit, out)
        }
    };
    if let Some(path) = &args.save_fit {
        write_atomic(path, serde_json::to_string_pretty(&fit)?.as_bytes())?;
    }
    write_matrix_csv(&args.output, &out)
}

fn distmat(args: DistmatArgs) -> Result<()> {
    let x = read_matrix_csv(&args.input, args.opts.header)?;
    let labels = optional_labels(args.opts.labels.as_ref())?;
    let z = fit_on(&x, args.standardise, labels.as_ref())?.apply_training(&x)?;
    write_condensed(&args.output, &pairwise(&z, args.q)?)
}

fn cluster(args: ClusterArgs) -> Result<()> {
    let d = read_condensed(&args.input)?;
    let labels = match args.method {
        Method::Pam => pam(&d, args.k)?.labels,
        Method::Complete => cut_tree(&linkage(&d, LinkageMethod::Complete)?, args.k)?,
        Method::Average => cut_tree(&linkage(&d, LinkageMethod::Average)?, args.k)?,
        Method::Knn3 => return Err(Error::Usage("knn3 is a classifier; use `classify`".into())),
    };
    if let Some(path) = &args.out {
        write_labels_to(path, labels.as_slice())?;
    }
    print_labels(labels.as_slice())
}

fn classify(args: ClassifyArgs) -> Result<()> {
    let train = read_matrix_csv(&args.train, args.header)?;
    let test = read_matrix_csv(&args.test, args.header)?;
    let y = read_labels(&args.train_labels)?;
    if y.len() != train.n_rows() {
        return Err(Error::Usage(format!("{} labels for {} training rows", y.len(), train.n_rows())));
    }
    let fit = fit_on(&train, args.standardise, args.standardise.is_pooled().then_some(&y))?;
    let dx = cross(&fit.apply_new(&test)?, &fit.apply_training(&train)?, args.q)?;
    let pred = knn_classify(&dx, &y, args.k)?;
    if let Some(path) = &args.truth {
        let truth = read_labels(path)?;
        eprintln!("misclassification rate: {}", misclassification_rate(&pred, truth.as_slice())?);
    }
    if let Some(path) = &args.out {
        write_labels_to(path, &pred)?;
    }
    print_labels(&pred)
}

fn experiment_config(args: &ExperimentArgs) -> Result<ExperimentConfig> {
    let setup = match (&args.setup, &args.setup_file) {
        (Some(name), _) => Some(SetupChoice::Named(name.clone())),
        (None, Some(path)) => Some(SetupChoice::Custom(load_spec(path)?)),
        (None, None) => None,
    };
    let mut cfg = match (&args.config, setup) {
        (Some(path), setup) => {
            let mut cfg = ExperimentConfig::from_json_file(path)?;
            if let Some(s) = setup {
                cfg.setup = s;
            }
            cfg
        }
        (None, Some(setup)) => ExperimentConfig::new(setup),
        (None, None) => {
            return Err(Error::Usage("give --config, --setup or --setup-file".into()));
        }
    };
    if args.n_per_class.is_some() {
        cfg.n_per_class = args.n_per_class;
    }
    if args.p.is_some() {
        cfg.p = args.p;
    }
    if let Some(r) = args.replicates {
        cfg.replicates = r;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(list) = &args.standardisations {
        cfg.standardisations = Some(list.clone());
    }
    if let Some(list) = &args.qs {
        cfg.qs = list.clone();
    }
    if let Some(list) = &args.methods {
        cfg.methods = list.clone();
    }
    cfg.oracle_pooling |= args.oracle_pooling;
    cfg.timing |= args.timing;
    if args.out.is_some() {
        cfg.out = args.out.clone();
    }
    Ok(cfg)
}

fn experiment(args: ExperimentArgs) -> Result<()> {
    let cfg = experiment_config(&args)?;
    let out = cfg
        .out
        .clone()
        .ok_or_else(|| Error::Usage("no output path (--out or \"out\" in the config)".into()))?;
    cfg.validate()?;
    let threads = harness::thread_count(args.threads)?;
    let records = harness::with_threads(threads, || harness::run_experiment(&cfg))??;
    harness::write_results(&out, &records)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Standardise(a) => standardise(a),
        Command::Distmat(a) => distmat(a),
        Command::Cluster(a) => cluster(a),
        Command::Classify(a) => classify(a),
        Command::Experiment(a) => experiment(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Usage(_)) { 2 } else { 1 })
        }
    }
}

//! Command-line pipeline: generate or extract motif centers, train a map on
//! them, and render reports.
//!
//! Exit codes: 0 on success, 1 for usage errors (bad flags or combinations,
//! nothing touched), 2 for data errors (unreadable, malformed, or
//! insufficient input). All outputs are written only after the computation
//! succeeded, and identical flags always reproduce byte-identical files.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use dtwsom::doc::MotifDocument;
use dtwsom::som::{default_radius, SomNetwork, TrainingConfig, DEFAULT_ALPHA};

#[derive(Parser)]
#[command(
    name = "dtwsom",
    version,
    about = "Motif exploration with warping-distance self-organizing maps"
)]
struct Cli {
    /// Worker threads for distance fan-out (default: all cores). Results do
    /// not depend on this value.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InitMode {
    /// Sample every unit from the centers without replacement.
    Random,
    /// Pin chosen centers to the cells nearest the grid diagonal first.
    Anchor,
}

#[derive(Subcommand)]
enum Command {
    /// Generate labeled synthetic motif centers.
    Synth {
        /// Number of centers, split evenly across the three clusters.
        #[arg(long)]
        count: usize,
        /// Seed behind all randomness of this run.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output motif document (JSON).
        #[arg(long)]
        out: PathBuf,
    },
    /// Extract motifs from a labeled dataset via the matrix profile.
    Extract {
        /// Input dataset: one row per sequence, class token first, tab or
        /// comma separated.
        #[arg(long)]
        input: PathBuf,
        /// Subsequence window length.
        #[arg(long)]
        window: usize,
        /// Stop after this many motifs.
        #[arg(long)]
        max_motifs: usize,
        /// Class labels to drop before concatenation (comma separated).
        #[arg(long, value_delimiter = ',')]
        exclude: Vec<f64>,
        /// Keep only this many sequences, sampled without replacement after
        /// filtering.
        #[arg(long)]
        sample: Option<usize>,
        /// Seed behind all randomness of this run.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output motif document (JSON).
        #[arg(long)]
        out: PathBuf,
    },
    /// Train a map on the centers of a motif document.
    Train {
        /// Input motif document (JSON).
        #[arg(long)]
        motifs: PathBuf,
        /// Grid rows.
        #[arg(long)]
        rows: usize,
        /// Grid columns.
        #[arg(long)]
        cols: usize,
        /// Training epochs.
        #[arg(long)]
        epochs: usize,
        /// Unit initialization mode.
        #[arg(long, value_enum, default_value_t = InitMode::Random)]
        init: InitMode,
        /// Pin the N most significant centers as anchors (with --init
        /// anchor).
        #[arg(long)]
        anchors: Option<usize>,
        /// Pin these center indices (0-based, rank order) as anchors (with
        /// --init anchor).
        #[arg(long, value_delimiter = ',')]
        anchor_indices: Option<Vec<usize>>,
        /// Initial learning rate.
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
        /// Initial neighborhood radius (default: half the larger grid side).
        #[arg(long)]
        radius: Option<f64>,
        /// Warping window for every distance of the run.
        #[arg(long)]
        window: Option<usize>,
        /// Seed behind all randomness of this run.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output model (JSON).
        #[arg(long)]
        out: PathBuf,
        /// Output training trace (default: <out stem>.trace.json).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Render U-matrix, winner counts, and unit shapes for a trained model.
    Report {
        /// Trained model (JSON).
        #[arg(long)]
        model: PathBuf,
        /// Motif document whose centers are mapped onto the grid.
        #[arg(long)]
        motifs: PathBuf,
        /// Directory receiving the SVG and CSV files.
        #[arg(long)]
        out_dir: PathBuf,
    },
}

enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

macro_rules! data_error_from {
    ($($ty:ty),+) => {$(
        impl From<$ty> for CliError {
            fn from(err: $ty) -> Self {
                CliError::Data(err.to_string())
            }
        }
    )+};
}

data_error_from!(
    dtwsom::SeriesError,
    dtwsom::DtwError,
    dtwsom::SomError,
    dtwsom::MotifError,
    dtwsom::UcrError,
    dtwsom::ReportError
);

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let ok = err.exit_code() == 0;
            let _ = err.print();
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(err) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: failed to size the thread pool: {err}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Synth { count, seed, out } => {
            if count == 0 {
                return Err(CliError::usage("--count must be at least 1"));
            }
            let centers = dtwsom::generate(count, seed);
            let doc = MotifDocument::from_labeled_centers(&centers);
            write_json(&out, &doc)
        }
        Command::Extract {
            input,
            window,
            max_motifs,
            exclude,
            sample,
            seed,
            out,
        } => {
            if window == 0 {
                return Err(CliError::usage("--window must be at least 1"));
            }
            if sample == Some(0) {
                return Err(CliError::usage("--sample must be at least 1"));
            }
            let dataset = dtwsom::load_ucr(&input)?;
            let series = dtwsom::prepare(&dataset, &exclude, sample, seed)?;
            let set = dtwsom::extract_motifs(&series, window, max_motifs)?;
            let doc = MotifDocument::from_motif_set(&set);
            write_json(&out, &doc)
        }
        Command::Train {
            motifs,
            rows,
            cols,
            epochs,
            init,
            anchors,
            anchor_indices,
            alpha,
            radius,
            window,
            seed,
            out,
            trace,
        } => {
            let anchor_list =
                validate_train_flags(rows, cols, epochs, init, &anchors, &anchor_indices, alpha, radius)?;
            let doc: MotifDocument = read_json(&motifs, "motif document")?;
            let centers = doc.centers();
            let radius = radius.unwrap_or_else(|| default_radius(rows, cols));
            let config = TrainingConfig::new(epochs, alpha, radius, window, seed)?;
            let mut network = match anchor_list {
                Some(list) => SomNetwork::init_anchor(&centers, &list, rows, cols, config)?,
                None => SomNetwork::init_random_sample(&centers, rows, cols, config)?,
            };
            let trace_data = network.train(&centers)?;
            let trace_path = trace.unwrap_or_else(|| out.with_extension("trace.json"));
            write_json(&out, &network)?;
            write_json(&trace_path, &trace_data)
        }
        Command::Report {
            model,
            motifs,
            out_dir,
        } => {
            let network: SomNetwork = read_json(&model, "model")?;
            let doc: MotifDocument = read_json(&motifs, "motif document")?;
            let centers = doc.centers();
            let u = dtwsom::u_matrix(&network)?;
            let winners = dtwsom::winner_matrix(&network, &centers)?;
            dtwsom::render(&network, &u, &winners, &out_dir)?;
            Ok(())
        }
    }
}

/// Static flag validation for `train`; returns the anchor index list when
/// anchor initialization is requested.
#[allow(clippy::too_many_arguments)]
fn validate_train_flags(
    rows: usize,
    cols: usize,
    epochs: usize,
    init: InitMode,
    anchors: &Option<usize>,
    anchor_indices: &Option<Vec<usize>>,
    alpha: f64,
    radius: Option<f64>,
) -> Result<Option<Vec<usize>>, CliError> {
    if rows == 0 || cols == 0 {
        return Err(CliError::usage("--rows and --cols must be at least 1"));
    }
    if epochs == 0 {
        return Err(CliError::usage("--epochs must be at least 1"));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(CliError::usage("--alpha must lie in (0, 1]"));
    }
    if let Some(r) = radius {
        let max = rows.max(cols) as f64;
        if !(r > 0.0 && r <= max) {
            return Err(CliError::usage(format!(
                "--radius must lie in (0, {max}] for a {rows}x{cols} grid"
            )));
        }
    }
    match init {
        InitMode::Random => {
            if anchors.is_some() || anchor_indices.is_some() {
                return Err(CliError::usage(
                    "--anchors and --anchor-indices require --init anchor",
                ));
            }
            Ok(None)
        }
        InitMode::Anchor => {
            let list = match (anchors, anchor_indices) {
                (Some(_), Some(_)) => {
                    return Err(CliError::usage(
                        "pass either --anchors or --anchor-indices, not both",
                    ));
                }
                (None, None) => {
                    return Err(CliError::usage(
                        "--init anchor needs --anchors or --anchor-indices",
                    ));
                }
                (Some(0), None) => {
                    return Err(CliError::usage("--anchors must be at least 1"));
                }
                (Some(n), None) => (0..*n).collect::<Vec<usize>>(),
                (None, Some(indices)) => indices.clone(),
            };
            if list.len() > rows * cols {
                return Err(CliError::usage(format!(
                    "{} anchors exceed the {} units of a {rows}x{cols} grid",
                    list.len(),
                    rows * cols
                )));
            }
            Ok(Some(list))
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path, what: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|err| {
        CliError::Data(format!("failed to read {what} {}: {err}", path.display()))
    })?;
    serde_json::from_str(&text).map_err(|err| {
        CliError::Data(format!("invalid {what} {}: {err}", path.display()))
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|err| CliError::Data(format!("failed to encode {}: {err}", path.display())))?;
    text.push('\n');
    std::fs::write(path, text)
        .map_err(|err| CliError::Data(format!("failed to write {}: {err}", path.display())))
}

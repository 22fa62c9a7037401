use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use netdim::FitMode;
use netdim_cli::commands::{
    cmd_analyze, cmd_cover, cmd_generate, cmd_sweep, parse_generator, AnalysisOptions,
    FormatChoice, Outcome, OutputKind, DEFAULT_Q_LIST, DEFAULT_SEED, DEFAULT_TRIALS,
};
use netdim_cli::CliError;

/// Fractal, information and Tsallis information dimensions of networks.
#[derive(Parser)]
#[command(name = "netdim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline for one q.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        q: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the full pipeline for a list of q values over one covering profile.
    Sweep {
        file: PathBuf,
        #[arg(long = "q-list", value_delimiter = ',', allow_negative_numbers = true,
              default_values_t = DEFAULT_Q_LIST)]
        q_list: Vec<f64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Cover the network once at a single box size.
    Cover {
        file: PathBuf,
        /// Box size l_B.
        l_b: u32,
        #[arg(long, value_enum, default_value_t = Format::Auto)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        strict: bool,
        /// Print one line per box with its member labels.
        #[arg(long = "dump-boxes")]
        dump_boxes: bool,
    },
    /// Write a synthetic graph as an edge list.
    ///
    /// Models: path N, cycle N, star N, complete N, grid RxC, er N P.
    Generate {
        model: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CommonArgs {
    #[arg(long, value_enum, default_value_t = Format::Auto)]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Slope)]
    mode: Mode,
    #[arg(long)]
    lmin: Option<u32>,
    #[arg(long)]
    lmax: Option<u32>,
    /// Fail on disconnected input instead of using the largest component.
    #[arg(long)]
    strict: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(short = 'o', value_enum, default_value_t = Output::Json)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Auto,
    Edgelist,
    Pajek,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Slope,
    Pointwise,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Json,
    Csv,
}

impl From<Format> for FormatChoice {
    fn from(f: Format) -> Self {
        match f {
            Format::Auto => FormatChoice::Auto,
            Format::Edgelist => FormatChoice::EdgeList,
            Format::Pajek => FormatChoice::Pajek,
        }
    }
}

impl CommonArgs {
    fn options(&self, q_list: Vec<f64>) -> AnalysisOptions {
        AnalysisOptions {
            format: self.format.into(),
            q_list,
            trials: self.trials,
            seed: self.seed,
            mode: match self.mode {
                Mode::Slope => FitMode::Slope,
                Mode::Pointwise => FitMode::Pointwise,
            },
            l_min: self.lmin,
            l_max: self.lmax,
            strict: self.strict,
            output: match self.output {
                Output::Json => OutputKind::Json,
                Output::Csv => OutputKind::Csv,
            },
        }
    }
}

fn emit(outcome: Outcome, out: Option<&Path>) -> Result<(), CliError> {
    for line in &outcome.diagnostics {
        eprintln!("{line}");
    }
    match out {
        Some(path) => std::fs::write(path, &outcome.stdout)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.stdout.as_bytes());
        }
    }
    match outcome.failure {
        Some(err) => Err(err),
        None => Ok(()),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { file, q, common } => {
            let outcome = cmd_analyze(&file, q, &common.options(vec![q]))?;
            emit(outcome, common.out.as_deref())
        }
        Command::Sweep { file, q_list, common } => {
            let outcome = cmd_sweep(&file, &common.options(q_list))?;
            emit(outcome, common.out.as_deref())
        }
        Command::Cover { file, l_b, format, trials, seed, strict, dump_boxes } => {
            let outcome = cmd_cover(&file, format.into(), l_b, trials, seed, strict, dump_boxes)?;
            emit(outcome, None)
        }
        Command::Generate { model, params, seed, out } => {
            let spec = parse_generator(&model, &params, seed)?;
            let outcome = cmd_generate(&spec, out.as_deref())?;
            emit(outcome, None)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

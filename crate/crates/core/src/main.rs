use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dilagap::certificate::CertificateParams;
use dilagap::cli::{self, RenderSource, RunReport};
use dilagap::geometry::parse_rational;
use dilagap::{ClosureBudgets, ClosureMode, Error, Result};

#[derive(Parser)]
#[command(
    name = "dilagap",
    version,
    about = "Crossing closures, dilation and cover certificates"
)]
struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Segments,
    Lines,
}

impl From<Mode> for ClosureMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Segments => ClosureMode::Segments,
            Mode::Lines => ClosureMode::Lines,
        }
    }
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    #[arg(long, default_value_t = 6)]
    max_rounds: usize,
    #[arg(long, default_value_t = 100_000)]
    max_points: usize,
    #[arg(long, default_value_t = 4096)]
    max_bits: u64,
}

impl BudgetArgs {
    fn budgets(self) -> Result<ClosureBudgets> {
        ClosureBudgets::new(self.max_points, self.max_rounds, self.max_bits)
    }
}

#[derive(Args, Clone, Copy)]
struct CertArgs {
    #[arg(long = "a", default_value_t = 1.0)]
    a: f64,
    #[arg(long = "big-a", default_value_t = 15.0)]
    big_a: f64,
    #[arg(long, default_value_t = 0.16)]
    eps: f64,
    #[arg(long, default_value_t = 1.0000047)]
    delta: f64,
}

impl CertArgs {
    fn params(self) -> Result<CertificateParams> {
        CertificateParams::new(self.a, self.big_a, self.eps, self.delta)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Iterate the crossing closure, writing one point file per round.
    Iterate {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "segments")]
        mode: Mode,
        #[command(flatten)]
        budgets: BudgetArgs,
        #[arg(long, default_value = "rounds")]
        out_dir: PathBuf,
    },
    /// Stable, stabilizes at some round, or budget exceeded.
    Classify {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "segments")]
        mode: Mode,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// Dilation of a plane graph file.
    Dilation {
        input: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Cover radius of region A under the first rounds of the closure.
    Density {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        /// Sampling pitch; defaults to the region diameter / 50.
        #[arg(long)]
        grid: Option<f64>,
        #[command(flatten)]
        budgets: BudgetArgs,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Evaluate the square-boundary certificate.
    Certify {
        #[command(flatten)]
        params: CertArgs,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Evenly spaced points on the boundary of a centred square.
    GenSquare {
        #[arg(long, default_value = "16")]
        side: String,
        #[arg(long, default_value_t = 200)]
        n: usize,
        /// Boundary samples for the exact radius check; 0 skips it.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rounded regular polygon on the unit circle.
    GenPolygon {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        denominator: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw a point set, graph, region A or certificate as SVG.
    Render {
        #[command(subcommand)]
        what: RenderWhat,
    },
}

#[derive(Subcommand)]
enum RenderWhat {
    Points {
        input: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
    Graph {
        input: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
    Region {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        round: usize,
        #[command(flatten)]
        budgets: BudgetArgs,
        #[arg(long)]
        svg: PathBuf,
    },
    Certificate {
        #[command(flatten)]
        params: CertArgs,
        #[arg(long)]
        svg: PathBuf,
    },
}

fn run(command: Command) -> Result<RunReport> {
    match command {
        Command::Iterate {
            input,
            mode,
            budgets,
            out_dir,
        } => cli::cmd_iterate(&input, mode.into(), budgets.budgets()?, &out_dir),
        Command::Classify {
            input,
            mode,
            budgets,
        } => cli::cmd_classify(&input, mode.into(), budgets.budgets()?),
        Command::Dilation { input, svg } => cli::cmd_dilation(&input, svg.as_deref()),
        Command::Density {
            input,
            k_max,
            grid,
            budgets,
            svg,
        } => cli::cmd_density(&input, k_max, grid, budgets.budgets()?, svg.as_deref()),
        Command::Certify { params, svg } => cli::cmd_certify(params.params()?, svg.as_deref()),
        Command::GenSquare {
            side,
            n,
            samples,
            out,
        } => {
            let side =
                parse_rational(&side).map_err(|message| Error::Parse { line: 0, message })?;
            cli::cmd_gen_square(&side, n, samples, &out)
        }
        Command::GenPolygon {
            n,
            denominator,
            out,
        } => cli::cmd_gen_polygon(n, denominator, &out),
        Command::Render { what } => {
            let (source, svg) = match what {
                RenderWhat::Points { input, svg } => (RenderSource::Points(input), svg),
                RenderWhat::Graph { input, svg } => (RenderSource::Graph(input), svg),
                RenderWhat::Region {
                    input,
                    round,
                    budgets,
                    svg,
                } => (
                    RenderSource::Region {
                        input,
                        round,
                        budgets: budgets.budgets()?,
                    },
                    svg,
                ),
                RenderWhat::Certificate { params, svg } => {
                    (RenderSource::Certificate(params.params()?), svg)
                }
            };
            cli::cmd_render(&source, &svg)
        }
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let report = match run(args.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    // A closed stdout (e.g. piped into `head`) is not an error.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if let Some(path) = args.report {
        if let Err(e) = std::fs::write(&path, format!("{text}\n")) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::FAILURE;
        }
    }
    ExitCode::SUCCESS
}

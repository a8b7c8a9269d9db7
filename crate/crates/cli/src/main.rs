use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use xconn::{run, Command, Format, Input, Options};

#[derive(Parser)]
#[command(name = "xconn", version, about = "Cross-connection analysis of finite regular semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Classify a semigroup (or an abstract category) and its ideal categories.
    Analyze(Common),
    /// Rebuild a locally inverse semigroup from its cross-connection.
    Rebuild(Common),
    /// Check the cone and cross-connection models of a Rees matrix semigroup.
    Rees {
        #[command(flatten)]
        common: Common,
        /// Number of random sandwich matrices added to `--fixtures`.
        #[arg(long, default_value_t = 0)]
        random: usize,
        /// Cayley file the rebuilt semigroup is compared with.
        #[arg(long)]
        compare: Option<PathBuf>,
    },
    /// Inductive groupoid and inversive category of an inverse semigroup.
    Esn {
        #[command(flatten)]
        common: Common,
        /// Write the inductive groupoid to this file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportKind {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Cay,
    Rees,
    Socat,
}

#[derive(Args)]
struct Common {
    /// Input file; omit with `--fixtures`.
    #[arg(required_unless_present = "fixtures")]
    path: Option<PathBuf>,
    /// Run over the built-in corpus instead of a file.
    #[arg(long, conflicts_with = "path")]
    fixtures: bool,
    #[arg(long, value_enum, default_value_t = ReportKind::Text)]
    report: ReportKind,
    /// Input format; inferred from the extension by default.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Cap on enumerated cones and search spaces.
    #[arg(long, default_value_t = xconn_core::cones::DEFAULT_CONE_BOUND)]
    max_enum: usize,
    /// Seed for randomized matrix corpora.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common, random, compare, export) = match cli.command {
        Sub::Analyze(c) => (Command::Analyze, c, 0, None, None),
        Sub::Rebuild(c) => (Command::Rebuild, c, 0, None, None),
        Sub::Rees { common, random, compare } => (Command::Rees, common, random, compare, None),
        Sub::Esn { common, export } => (Command::Esn, common, 0, None, export),
    };
    let opts = Options {
        max_enum: common.max_enum,
        seed: common.seed,
        random,
        format: common.format.map(|f| match f {
            FormatArg::Cay => Format::Cayley,
            FormatArg::Rees => Format::Rees,
            FormatArg::Socat => Format::Socat,
        }),
        compare,
        export,
    };
    let input = match common.path {
        Some(p) => Input::File(p),
        None => Input::Fixtures,
    };
    let report = run(command, &input, &opts);
    match common.report {
        ReportKind::Text => print!("{}", report.to_text()),
        ReportKind::Json => println!("{}", report.to_json()),
    }
    ExitCode::from(report.exit_code as u8)
}

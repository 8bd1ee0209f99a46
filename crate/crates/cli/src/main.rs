mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::RunReport;

#[derive(Parser, Debug)]
#[command(
    name = "spantl",
    version,
    about = "Run alternating machines with output, count their span, and compile them to tree automata"
)]
pub struct Cli {
    /// Override bounds, e.g. `max_nodes=200,tape_cap=16,k=2`.
    #[arg(long, global = true, value_name = "KEY=VALUE,...")]
    pub bounds: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    pub timings: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    #[value(name = "json", alias = "machine-readable")]
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Ordered,
    Unordered,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Dp,
    Enum,
}

#[derive(Args, Debug)]
pub struct MachineInput {
    /// Machine description file.
    pub machine: PathBuf,
    /// Input word (may be empty).
    #[arg(default_value = "")]
    pub input: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a machine file and report structural problems.
    Validate { machine: PathBuf },
    /// Enumerate computations and show their outputs and bound violations.
    Run {
        #[command(flatten)]
        target: MachineInput,
        /// Print every computation's output.
        #[arg(long)]
        list: bool,
    },
    /// Count distinct valid outputs.
    Span {
        #[command(flatten)]
        target: MachineInput,
        #[arg(long, value_enum, default_value_t = ModeArg::Unordered)]
        mode: ModeArg,
        /// Print the outputs in canonical form.
        #[arg(long)]
        list: bool,
    },
    /// Compile machine and input into a tree automaton.
    Reduce {
        #[command(flatten)]
        target: MachineInput,
        /// Write the automaton here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count trees accepted by a tree automaton.
    Count {
        nfta: PathBuf,
        #[arg(long)]
        size: usize,
        /// Count all trees of size at most `--size`.
        #[arg(long)]
        cumulative: bool,
        #[arg(long, value_enum, default_value_t = Method::Dp)]
        method: Method,
    },
    /// Compare the span with the size of the compiled automaton's language.
    Check {
        #[command(flatten)]
        target: MachineInput,
    },
    /// Computation DAG statistics.
    Dag {
        #[command(flatten)]
        target: MachineInput,
        /// Write the node and edge list here (`-` for standard output).
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

const STACK_SIZE: usize = 512 << 20;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let format = cli.format;
    let worker = std::thread::Builder::new()
        .name("spantl".into())
        .stack_size(STACK_SIZE)
        .spawn(move || {
            let mut report = RunReport::new(echo);
            commands::dispatch(&cli, &mut report);
            report
        })
        .expect("spawn worker thread");
    let report = worker.join().unwrap_or_else(|_| {
        let mut r = RunReport::new(Vec::new());
        r.fail(70, "internal error");
        r
    });

    match format {
        Format::Text => {
            print!("{}", report.render_text());
            if let Some(e) = &report.error {
                eprintln!("error: {e}");
            }
        }
        Format::Json => print!("{}", report.render_json()),
    }
    ExitCode::from(report.exit_status as u8)
}

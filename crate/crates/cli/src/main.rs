use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use contrasim::csgame::{hml_satisfies, HmlFormula};
use contrasim::ingest::{write_aut, DEFAULT_MAX_STATES};
use contrasim_cli::{
    load_aut, load_ccs, render_human, resolve_format, run_check, CheckRequest, Direction,
    InputFormat, Notion,
};

#[derive(Parser)]
#[command(
    name = "contrasim",
    version,
    about = "Decide contrasimilarity of finite transition systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare two states of a model.
    Check(CheckArgs),
    /// Expand CCS definitions into an .aut transition system.
    Expand(ExpandArgs),
    /// Evaluate a formula such as `<e>~(<e><op>T)` at a state.
    Sat(SatArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Ccs,
    Aut,
}

impl From<FormatArg> for InputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Ccs => InputFormat::Ccs,
            FormatArg::Aut => InputFormat::Aut,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum NotionArg {
    Contrasim,
    WeakSim,
    WeakBisim,
    StrongBisim,
    #[value(name = "naive-contrasim-1step")]
    NaiveContrasim1Step,
    BoundedWordGame,
}

impl From<NotionArg> for Notion {
    fn from(n: NotionArg) -> Self {
        match n {
            NotionArg::Contrasim => Notion::Contrasim,
            NotionArg::WeakSim => Notion::WeakSim,
            NotionArg::WeakBisim => Notion::WeakBisim,
            NotionArg::StrongBisim => Notion::StrongBisim,
            NotionArg::NaiveContrasim1Step => Notion::NaiveContrasim1Step,
            NotionArg::BoundedWordGame => Notion::BoundedWordGame,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Preorder,
    Equivalence,
}

#[derive(Args)]
struct CheckArgs {
    /// Model file (.ccs or .aut).
    file: PathBuf,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Left state: a CCS definition name or an .aut state index.
    #[arg(long)]
    lhs: String,
    /// Right state: a CCS definition name or an .aut state index.
    #[arg(long)]
    rhs: String,
    #[arg(long, value_enum, default_value = "contrasim")]
    notion: NotionArg,
    #[arg(long, value_enum, default_value = "preorder")]
    direction: DirectionArg,
    /// State budget for CCS expansion.
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,
    /// Maximal challenge word length for bounded-word-game.
    #[arg(long)]
    word_bound: Option<usize>,
    /// Print the relation or distinguishing formula backing the verdict.
    #[arg(long)]
    emit_certificate: bool,
    /// Write the lhs-vs-rhs game graph as DOT.
    #[arg(long, value_name = "PATH")]
    emit_game_dot: Option<PathBuf>,
    /// Write a JSON report.
    #[arg(long, value_name = "PATH")]
    emit_json: Option<PathBuf>,
    /// Report all durations as zero.
    #[arg(long)]
    omit_timings: bool,
}

#[derive(Args)]
struct ExpandArgs {
    file: PathBuf,
    /// Definition to expand; repeat to share one state space. The first root
    /// becomes the initial state.
    #[arg(long = "root", required = true)]
    roots: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,
    /// Output file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SatArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// A CCS definition name or an .aut state index.
    #[arg(long)]
    state: String,
    #[arg(long)]
    formula: String,
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,
}

fn check(args: CheckArgs) -> ExitCode {
    let request = CheckRequest {
        input: args.file,
        format: args.format.map(Into::into),
        lhs: args.lhs,
        rhs: args.rhs,
        notion: args.notion.into(),
        direction: match args.direction {
            DirectionArg::Preorder => Direction::Preorder,
            DirectionArg::Equivalence => Direction::Equivalence,
        },
        max_states: args.max_states,
        word_bound: args.word_bound,
        emit_certificate: args.emit_certificate,
        emit_game_dot: args.emit_game_dot,
        emit_json: args.emit_json,
        omit_timings: args.omit_timings,
    };
    let outcome = run_check(&request);
    match &outcome.report {
        Ok(report) => print!(
            "{}",
            render_human(report, request.emit_certificate, !request.omit_timings)
        ),
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(outcome.exit_code as u8)
}

fn expand(args: ExpandArgs) -> anyhow::Result<()> {
    let roots: Vec<&str> = args.roots.iter().map(String::as_str).collect();
    let (lts, initials) = load_ccs(&args.file, &roots, args.max_states)?;
    for (name, state) in roots.iter().zip(&initials) {
        eprintln!("{name} = state {state}");
    }
    let text = write_aut(&lts, initials[0]);
    match args.output {
        Some(path) => {
            std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn sat(args: SatArgs) -> anyhow::Result<bool> {
    let (lts, state) = match resolve_format(&args.file, args.format.map(Into::into))? {
        InputFormat::Ccs => {
            let (lts, roots) = load_ccs(&args.file, &[&args.state], args.max_states)?;
            (lts, roots[0])
        }
        InputFormat::Aut => {
            let (lts, _) = load_aut(&args.file)?;
            let state: usize = args
                .state
                .parse()
                .with_context(|| format!("`{}` is not a state index", args.state))?;
            lts.check_state(state)?;
            (lts, state)
        }
    };
    let formula = HmlFormula::parse(&args.formula, &lts)?;
    Ok(hml_satisfies(&lts, state, &formula))
}

fn fail(e: anyhow::Error) -> ExitCode {
    eprintln!("error: {e:#}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Check(args) => check(args),
        Command::Expand(args) => match expand(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(e),
        },
        Command::Sat(args) => match sat(args) {
            Ok(holds) => {
                println!("{holds}");
                ExitCode::from(if holds { 0 } else { 1 })
            }
            Err(e) => fail(e),
        },
    }
}

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fanodef::deformation::{hull_for_polytope, verify_invariant_presentation};
use fanodef::{classical_period, global_t1};
use fanodef_cli::{
    analysis_text, analyze, automorphism_text, automorphisms, certificate_text, hull_text,
    load_action, load_laurent, load_polytope, load_presentation, period_text, t1_text, to_json,
    AnalyzeOptions, CliError, CliResult, T1Summary, DEFAULT_ORDER_BOUND,
};

#[derive(Parser)]
#[command(
    name = "fanodef",
    version,
    about = "Deformations, invariant rings and periods of toric Fano 3-folds"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline on a polytope JSON file or `paper-P`.
    Analyze {
        input: String,
        /// Do not declare H²(T⁰) = 0; the hull is then refused.
        #[arg(long)]
        no_h2_t0: bool,
        /// Group action on the hull (`paper-G-action`, `trivial` or a file).
        /// Defaults to `paper-G-action` for `paper-P`.
        #[arg(long)]
        action: Option<String>,
        /// Claimed invariant ring (`paper-AG` or a file).
        #[arg(long)]
        claimed: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
        /// Laurent polynomial (`paper-f` or a file). Defaults to `paper-f` for
        /// `paper-P`.
        #[arg(long)]
        laurent: Option<String>,
        #[arg(long, default_value_t = 10)]
        order: u32,
    },
    /// Classical period of a Laurent polynomial JSON file or `paper-f`.
    Period {
        input: String,
        #[arg(long, default_value_t = 10)]
        order: u32,
        /// Largest accepted order.
        #[arg(long, default_value_t = DEFAULT_ORDER_BOUND)]
        order_bound: u32,
    },
    /// Compare the invariant Hilbert function of a hull with a claimed ring.
    Invariants {
        /// Hull presentation file or `paper-A`.
        input: String,
        #[arg(long, default_value = "paper-G-action")]
        action: String,
        #[arg(long, default_value = "paper-AG")]
        claimed: String,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
    },
    /// Global T¹ via the Čech complex.
    T1 { input: String },
    /// Local hulls and the assembled global hull.
    Hull {
        input: String,
        #[arg(long)]
        no_h2_t0: bool,
    },
    /// Lattice automorphism group of the polytope.
    Auts { input: String },
}

fn emit(cli: &Cli, text: String, json: String) -> CliResult<()> {
    let body = match cli.format {
        Format::Text => text,
        Format::Json => json,
    };
    match &cli.output {
        Some(path) => fs::write(path, body).map_err(|e| CliError::Input(format!("{path}: {e}"))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Analyze {
            input,
            no_h2_t0,
            action,
            claimed,
            max_degree,
            laurent,
            order,
        } => {
            let p = load_polytope(input)?;
            let bundled = input == "paper-P";
            let action = action
                .clone()
                .or_else(|| bundled.then(|| "paper-G-action".to_string()));
            let claimed = claimed.clone().unwrap_or_else(|| "paper-AG".to_string());
            let laurent = laurent
                .clone()
                .or_else(|| bundled.then(|| "paper-f".to_string()));
            let opts = AnalyzeOptions {
                h2_t0_vanishes: !no_h2_t0,
                invariants: action.map(|a| (a, claimed, *max_degree)),
                laurent: laurent.map(|f| (f, *order)),
            };
            let (report, refused) = analyze(&p, &opts)?;
            emit(cli, analysis_text(&report), to_json(&report))?;
            refused.map_or(Ok(()), Err)
        }
        Command::Period {
            input,
            order,
            order_bound,
        } => {
            if order > order_bound {
                return Err(CliError::Input(format!(
                    "order {order} exceeds the bound {order_bound}; pass --order-bound to raise it"
                )));
            }
            let f = load_laurent(input)?;
            let series = classical_period(&f, *order);
            let mut text = String::new();
            period_text(&mut text, &series);
            emit(cli, text, to_json(&series))
        }
        Command::Invariants {
            input,
            action,
            claimed,
            max_degree,
        } => {
            let hull = load_presentation(input)?;
            let action = load_action(action, &hull)?;
            let claimed = load_presentation(claimed)?;
            let cert = verify_invariant_presentation(&hull, &action, &claimed, *max_degree)?;
            let mut text = String::new();
            certificate_text(&mut text, &cert);
            emit(cli, text, to_json(&cert))
        }
        Command::T1 { input } => {
            let t1 = T1Summary::new(global_t1(&load_polytope(input)?)?);
            let mut text = String::new();
            t1_text(&mut text, &t1);
            emit(cli, text, to_json(&t1))
        }
        Command::Hull { input, no_h2_t0 } => {
            let h = hull_for_polytope(&load_polytope(input)?, !no_h2_t0)?;
            let mut text = String::new();
            hull_text(&mut text, &h);
            emit(cli, text, to_json(&h))
        }
        Command::Auts { input } => {
            let a = automorphisms(&load_polytope(input)?)?;
            emit(cli, automorphism_text(&a), to_json(&a))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fanodef: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

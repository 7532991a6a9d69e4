use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use cadiv::cli::{run, Outcome, Request, Verb};
use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, ValueEnum)]
enum Command {
    Classify,
    Enumerate,
    Member,
    Normalize,
    Blowup,
    Count,
    Witness,
}

impl From<Command> for Verb {
    fn from(c: Command) -> Verb {
        match c {
            Command::Classify => Verb::Classify,
            Command::Enumerate => Verb::Enumerate,
            Command::Member => Verb::Member,
            Command::Normalize => Verb::Normalize,
            Command::Blowup => Verb::Blowup,
            Command::Count => Verb::Count,
            Command::Witness => Verb::Witness,
        }
    }
}

/// Classification of cA_n germs and their weighted-blowup divisorial contractions.
#[derive(Parser)]
#[command(name = "cadiv", version)]
struct Args {
    command: Command,
    /// Polynomial in x, y, z, t, the keyword `smooth`, or `-` to read one per line from stdin.
    polynomial: String,
    /// Comma separated weights matched to x, y, z, t.
    #[arg(long)]
    weights: Option<String>,
    /// Emit one JSON document per request.
    #[arg(long)]
    json: bool,
    /// Truncate the input at this degree (at least mu + 1).
    #[arg(long)]
    jet_order: Option<u32>,
    /// Largest `a` tried when enumerating type1 classes.
    #[arg(long)]
    max_a: Option<u32>,
    /// Comma separated rational parameters for `witness`.
    #[arg(long, allow_hyphen_values = true)]
    params: Option<String>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let inputs: Vec<String> = if args.polynomial == "-" {
        io::stdin()
            .lock()
            .lines()
            .map_while(|l| l.ok())
            .filter(|l| !l.trim().is_empty())
            .collect()
    } else {
        vec![args.polynomial.clone()]
    };
    let mut worst = Outcome::Success;
    let mut out = io::stdout().lock();
    for (i, text) in inputs.into_iter().enumerate() {
        let req = Request {
            verb: args.command.into(),
            polynomial_text: text,
            weights_text: args.weights.clone(),
            jet_order: args.jet_order,
            max_a: args.max_a,
            params_text: args.params.clone(),
        };
        let report = run(&req);
        let _ = if args.json {
            writeln!(out, "{}", report.to_json())
        } else {
            if i > 0 {
                let _ = writeln!(out);
            }
            writeln!(out, "{}", report.text)
        };
        worst = match (worst, report.outcome) {
            (Outcome::Error, _) | (_, Outcome::Error) => Outcome::Error,
            (Outcome::Rejection, _) | (_, Outcome::Rejection) => Outcome::Rejection,
            _ => Outcome::Success,
        };
    }
    ExitCode::from(worst.exit_code() as u8)
}

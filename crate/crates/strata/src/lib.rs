//! File formats, reports and the command-line front end for `strata-core`.

pub mod commands;
pub mod format;

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::json;
use strata_core::{FieldSpec, PrimeField, Quiver, Rationals};

use commands::{Options, Report, Status};
use format::Document;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Hom,
    Ext,
    Decompose,
    ExcEnum,
    SeqEnum,
    TiltingCheck,
    Perp,
    Bongartz,
    Stratify,
    JhVerify,
    RingelCheck,
    KroneckerDemo,
}

impl Verb {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

/// Exact computations with representations of finite acyclic quivers.
#[derive(Debug, Parser)]
#[command(name = "strata", version)]
pub struct Cli {
    pub verb: Verb,
    /// Quiver file, optionally with `rep` blocks. Not needed by kronecker-demo.
    pub input: Option<PathBuf>,
    /// Bound on the total dimension of enumerated representations.
    #[arg(long, default_value_t = 4)]
    pub bound: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Work over F_p instead of the file's field (kronecker-demo: defaults to 5).
    #[arg(long)]
    pub prime: Option<u64>,
    /// Emit one JSON document instead of text.
    #[arg(long)]
    pub json: bool,
    /// Worker threads; output does not depend on this.
    #[arg(long, env = "STRATA_THREADS")]
    pub threads: Option<usize>,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parses arguments (first item is the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t);
    }
    match pool.build() {
        Ok(pool) => pool.install(|| run_in_pool(cli)),
        Err(e) => Outcome::usage(e),
    }
}

fn load(cli: &Cli) -> Result<Document, Outcome> {
    let override_field = match cli.prime {
        Some(p) => Some(FieldSpec::prime(p).map_err(Outcome::usage)?),
        None => None,
    };
    if cli.verb == Verb::KroneckerDemo && cli.input.is_none() {
        let p = cli.prime.unwrap_or(5);
        let spec = FieldSpec::prime(p).map_err(Outcome::usage)?;
        return Ok(Document::from_quiver(spec, Quiver::kronecker()));
    }
    let Some(path) = &cli.input else {
        return Err(Outcome::usage(format!("`{}` needs an input file", cli.verb.name())));
    };
    let text = std::fs::read_to_string(path).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))?;
    Document::parse(&text, override_field).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))
}

fn run_in_pool(cli: &Cli) -> Outcome {
    let doc = match load(cli) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let opts = Options {
        bound: cli.bound,
        seed: cli.seed,
    };
    let result = match (cli.verb, doc.field) {
        (Verb::KroneckerDemo, FieldSpec::PrimeField(p)) => commands::kronecker(u64::from(p), opts),
        (Verb::KroneckerDemo, FieldSpec::Rationals) => {
            return Outcome::usage("kronecker-demo runs over a prime field; pass --prime");
        }
        (verb, FieldSpec::Rationals) => commands::run_over(verb, &doc, Rationals, opts),
        (verb, FieldSpec::PrimeField(p)) => match PrimeField::new(u64::from(p)) {
            Ok(f) => commands::run_over(verb, &doc, f, opts),
            Err(e) => Err(e.into()),
        },
    };
    match result {
        Ok(report) => render(cli, &doc, &report),
        Err(e) => failure(cli, &doc, e),
    }
}

fn header(cli: &Cli, doc: &Document) -> String {
    format!(
        "strata {}\ninput sha256 {}\nfield {}, bound {}, seed {}\n",
        cli.verb.name(),
        doc.hash(),
        doc.field,
        cli.bound,
        cli.seed
    )
}

fn envelope(cli: &Cli, doc: &Document, status: &str, report: serde_json::Value) -> String {
    let v = json!({
        "verb": cli.verb.name(),
        "input_hash": doc.hash(),
        "field": doc.field.to_string(),
        "bound": cli.bound,
        "seed": cli.seed,
        "status": status,
        "report": report,
    });
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialise");
    s.push('\n');
    s
}

fn render(cli: &Cli, doc: &Document, report: &Report) -> Outcome {
    let (code, status) = match report.status {
        Status::Ok => (EXIT_OK, "PASS"),
        Status::Fail => (EXIT_FAIL, "FAIL"),
    };
    let stdout = if cli.json {
        envelope(cli, doc, status, report.data.clone())
    } else {
        format!("{}{}", header(cli, doc), report.text)
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

/// Exit code and status word for a computation that stopped with an error.
fn classify(e: &anyhow::Error) -> (i32, &'static str) {
    match e.downcast_ref::<strata_core::Error>() {
        Some(core) if core.is_undecided() => (EXIT_UNDECIDED, "UNDECIDED"),
        Some(strata_core::Error::Internal(_)) => (EXIT_FAIL, "FAIL"),
        _ => (EXIT_USAGE, "ERROR"),
    }
}

fn failure(cli: &Cli, doc: &Document, e: anyhow::Error) -> Outcome {
    let (code, status) = classify(&e);
    let message = e.to_string();
    let stdout = if cli.json {
        envelope(cli, doc, status, json!({ "error": message }))
    } else {
        format!("{}{status}: {message}\n", header(cli, doc))
    };
    Outcome {
        code,
        stdout,
        stderr: format!("error: {message}\n"),
    }
}

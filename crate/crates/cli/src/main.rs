mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "cotame", version, about = "Stable co-tameness of polynomial automorphisms")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for the randomized span search.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Ring and map inputs shared by most subcommands.
#[derive(Args, Debug, Clone)]
pub struct MapArgs {
    /// Ring: Q, Z, Zn:<n>, Fp:<p> or GF:<p>^<e>[:modulus-coeffs]. Defaults to the file's ring.
    #[arg(long)]
    pub ring: Option<String>,
    /// Number of variables; checked against the file.
    #[arg(long)]
    pub n: Option<usize>,
    /// Endomorphism JSON file.
    #[arg(long)]
    pub phi: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Size of the base field k (an integer or "inf"); defaults to the ring for fields.
    #[arg(long)]
    pub ksize: Option<String>,
    /// Span elements examined beyond the images themselves.
    #[arg(long, default_value_t = 256)]
    pub budget: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normalize a polynomial or an endomorphism file.
    Parse {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: usize,
        /// Polynomial literal; if several are given they form the images of a map.
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Compose two maps: the result sends h to phi(psi(h)).
    Compose {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        psi: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Invert an affine or triangular map.
    Invert {
        #[command(flatten)]
        map: MapArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Good monomials, I_phi, the J_phi search and ngg membership.
    Classify {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Decide stable co-tameness where the implemented criteria apply.
    Decide {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Build a word over affine maps and phi realizing x1 -> x1 + target.
    Witness {
        #[command(flatten)]
        map: MapArgs,
        /// Inverse of phi; required unless phi is affine or triangular.
        #[arg(long)]
        phi_inverse: Option<PathBuf>,
        #[arg(long)]
        target: String,
        #[command(flatten)]
        search: SearchArgs,
        /// Cap on the total degree of the target.
        #[arg(long, default_value_t = cotame::witness::DEFAULT_MAX_DEGREE)]
        max_degree: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a word against x1 -> x1 + target by exact evaluation.
    Verify {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        phi_inverse: Option<PathBuf>,
        #[arg(long)]
        target: String,
        #[arg(long)]
        word: PathBuf,
    },
    /// The maps theta_N in three variables.
    Theta {
        #[arg(long = "N")]
        n_iter: u32,
        #[arg(long)]
        ring: String,
        /// Report the degree, top-part and ngg checks.
        #[arg(long)]
        analyze: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reduce the coefficients of phi modulo an ideal.
    Reduce {
        #[command(flatten)]
        map: MapArgs,
        /// Comma-separated ideal generators.
        #[arg(long)]
        ideal: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Whether phi has no good monomial, with the offending terms otherwise.
    NggCheck {
        #[command(flatten)]
        map: MapArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Error,
    UnknownVerdict,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Error => "error",
            Status::UnknownVerdict => "unknown-verdict",
        }
    }

    fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Error => 1,
            Status::UnknownVerdict => 2,
        }
    }
}

#[derive(Debug)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl CommandResult {
    pub fn ok(payload: Value) -> CommandResult {
        CommandResult { status: Status::Ok, payload, diagnostics: Vec::new() }
    }

    pub fn error(msg: impl Into<String>) -> CommandResult {
        CommandResult { status: Status::Error, payload: Value::Null, diagnostics: vec![msg.into()] }
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn emit_report(res: &CommandResult, format: Format) -> String {
    match format {
        Format::Json => {
            let v = json!({
                "status": res.status.tag(),
                "payload": res.payload,
                "diagnostics": res.diagnostics,
            });
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
        Format::Text => {
            let mut out = format!("status: {}\n", res.status.tag());
            match &res.payload {
                Value::Object(map) => {
                    for (k, v) in map {
                        out += &format!("{k}: {}\n", text_value(v));
                    }
                }
                Value::Null => {}
                other => out += &format!("{}\n", text_value(other)),
            }
            for d in &res.diagnostics {
                out += &format!("note: {d}\n");
            }
            out
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = commands::run(&cli).unwrap_or_else(|e| CommandResult::error(e));
    print!("{}", emit_report(&res, cli.format));
    ExitCode::from(res.status.exit_code())
}

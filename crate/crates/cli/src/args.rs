//! Command-line grammar and its translation into `(command, parameters)`.

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

#[derive(Debug, Parser)]
#[command(name = "hasse-witt", version, about = "Exact invariants of rational quadratic forms")]
pub struct Cli {
    /// Print one JSON report instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert symbol (a, b) at one place, or at every relevant place.
    Hilbert {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// A prime or `inf`.
        #[arg(long)]
        place: Option<String>,
    },
    /// Quadratic forms given by Gram matrices such as "1,0;0,-3".
    Form {
        #[command(subcommand)]
        action: FormCommand,
    },
    /// Trace form of Q[x]/(f); coefficients ascending, e.g. "-1,1,0,0,1".
    Tracefield {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Pin lifting problems for a quartic with S4 closure.
    Embedding {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Local pair (w2_p, (2, d_F)_p) from the decomposition type of p.
    Jehanne {
        #[arg(long)]
        p: String,
        /// One of unramified, 1^2,1,1, 1^3,1, 1^2,2, 1^4, 2^2, 1^2,1^2.
        #[arg(long = "type")]
        kind: String,
        #[arg(long, allow_hyphen_values = true)]
        disc: String,
    },
    /// Middle-cohomology invariants of a complete intersection.
    Hypersurface {
        #[arg(long)]
        n: u64,
        #[arg(long, conflicts_with = "degrees", required_unless_present = "degrees")]
        d: Option<u64>,
        /// Comma-separated degrees for a complete intersection.
        #[arg(long)]
        degrees: Option<String>,
    },
    /// Comparison classes delta1, delta2 of two forms of equal rank.
    Delta {
        #[arg(long, allow_hyphen_values = true)]
        gram_omega: String,
        #[arg(long, allow_hyphen_values = true)]
        gram_eta: String,
    },
    /// JSON-Lines requests in, JSON-Lines reports out.
    Batch {
        #[arg(long = "in")]
        input: std::path::PathBuf,
        #[arg(long = "out")]
        output: std::path::PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum FormCommand {
    Invariants {
        #[arg(long, allow_hyphen_values = true)]
        gram: String,
    },
    Isometric {
        #[arg(long, allow_hyphen_values = true)]
        gram1: String,
        #[arg(long, allow_hyphen_values = true)]
        gram2: String,
    },
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("literal objects"),
    }
}

impl Command {
    /// The request equivalent to this invocation; `None` for `batch`.
    pub fn request(&self) -> Option<(&'static str, Map<String, Value>)> {
        let (name, params) = match self {
            Command::Hilbert { a, b, place } => {
                let mut p = json!({ "a": a, "b": b });
                if let Some(v) = place {
                    p["place"] = json!(v);
                }
                ("hilbert", p)
            }
            Command::Form { action: FormCommand::Invariants { gram } } => {
                ("form_invariants", json!({ "gram": gram }))
            }
            Command::Form { action: FormCommand::Isometric { gram1, gram2 } } => {
                ("form_isometric", json!({ "gram1": gram1, "gram2": gram2 }))
            }
            Command::Tracefield { poly } => ("tracefield", json!({ "poly": poly })),
            Command::Embedding { poly } => ("embedding", json!({ "poly": poly })),
            Command::Jehanne { p, kind, disc } => {
                ("jehanne", json!({ "p": p, "type": kind, "disc": disc }))
            }
            Command::Hypersurface { n, d, degrees } => {
                let mut p = json!({ "n": n });
                match (d, degrees) {
                    (Some(d), _) => p["d"] = json!(d),
                    (None, Some(ds)) => p["degrees"] = json!(ds),
                    (None, None) => {}
                }
                ("hypersurface", p)
            }
            Command::Delta { gram_omega, gram_eta } => {
                ("delta", json!({ "gram_omega": gram_omega, "gram_eta": gram_eta }))
            }
            Command::Batch { .. } => return None,
        };
        Some((name, object(params)))
    }
}

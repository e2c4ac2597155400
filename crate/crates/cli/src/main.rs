//! `origami`: validate, analyze, realize, render and compose multi-fans,
//! Delzant polytopes and origami templates stored as JSON documents.
//!
//! Exit codes: 0 success, 1 validation or domain failure, 2 I/O or schema
//! error. Machine output goes to stdout as JSON; diagnostics go to stderr.

mod commands;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use origami_core::io::Kind;

#[derive(Parser, Debug)]
#[command(name = "origami", version, about = "Multi-fans, Delzant polytopes and origami templates")]
struct Cli {
    /// Seed for every randomized computation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Multifan,
    Polytope,
    Template,
}

impl KindArg {
    fn kind(self) -> Kind {
        match self {
            KindArg::Multifan => Kind::MultiFan,
            KindArg::Polytope => Kind::Polytope,
            KindArg::Template => Kind::Template,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ComposeOp {
    Diamond,
    ConnectedSum,
    BlowUp,
    Product,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a document against its axioms; exit 0 iff valid.
    Validate {
        path: PathBuf,
        /// Expected document kind (detected from the file otherwise).
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// Report every applicable invariant of a document.
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// Realize a unimodular sequence in Z² by an origami template.
    Realize {
        /// A sequence document; alternatively give the vectors with `-v`.
        path: Option<PathBuf>,
        /// A vector `x,y`; repeat for each entry of the sequence.
        #[arg(short = 'v', long = "vector", allow_hyphen_values = true)]
        vectors: Vec<String>,
        /// Reload the certificate, re-verify it and search for the signs.
        #[arg(long)]
        check: bool,
        /// Largest sequence length for the exhaustive sign search.
        #[arg(long, default_value_t = 20)]
        max_sign_search: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a 2-dimensional multi-fan, polytope or template as SVG.
    Render {
        path: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Combine documents: diamond, connected sum, blow-up or product.
    Compose {
        #[arg(value_enum)]
        op: ComposeOp,
        first: PathBuf,
        second: Option<PathBuf>,
        /// Edge, chamber, facet (`p0.f3`) or vertex (`p0.v1`) of the first
        /// input; edges and facets may also be given by their vector `x,y`.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        /// The same for the second input (defaults to `--at`).
        #[arg(long, allow_hyphen_values = true)]
        at2: Option<String>,
        /// Blow-up side: +1 or -1.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i8,
        /// Keep the literal summed weight in a multi-fan connected sum.
        #[arg(long)]
        no_reduce: bool,
        /// Validate the result.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { path, kind } => commands::validate(&path, kind.map(KindArg::kind)),
        Command::Analyze { path, kind } => commands::analyze(&path, kind.map(KindArg::kind), cli.seed),
        Command::Realize { path, vectors, check, max_sign_search, out } => {
            commands::realize(path.as_deref(), &vectors, check, max_sign_search, out.as_deref())
        }
        Command::Render { path, out } => commands::render(&path, &out),
        Command::Compose { op, first, second, at, at2, sign, no_reduce, check, out } => {
            let args = commands::ComposeArgs {
                first,
                second,
                at2: at2.or_else(|| at.clone()),
                at,
                sign,
                reduce: !no_reduce,
                check,
                out,
            };
            match op {
                ComposeOp::Diamond => commands::diamond(&args),
                ComposeOp::ConnectedSum => commands::connected_sum(&args),
                ComposeOp::BlowUp => commands::blow_up(&args),
                ComposeOp::Product => commands::product(&args),
            }
        }
    };
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}: {}", e.name, e.message);
            if let Some(partial) = e.stdout {
                print!("{partial}");
            }
            ExitCode::from(e.code)
        }
    }
}

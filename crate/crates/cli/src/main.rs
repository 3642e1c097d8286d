//! `instanton3`: batch front end emitting JSON certificates.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "instanton3",
    version,
    about = "Cubo-cubic transformations, generalized nets and related curves"
)]
struct Cli {
    /// q, fp:<p> or fp2:<p>
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tensors in R ⊗ W ⊗ V and their cubo-cubic maps.
    #[command(subcommand)]
    Cubocubic(CuboCubicCmd),
    /// Triples (phi, psi, psi') and nets of quadrics.
    #[command(subcommand)]
    Net(NetCmd),
    /// Binary cubics, triplets and sections of F(1).
    #[command(subcommand)]
    Schwarz(SchwarzCmd),
    /// Residual involution of quartics through a curve.
    #[command(subcommand)]
    Involution(InvolutionCmd),
    /// Run a named experiment.
    Experiment {
        name: String,
        #[arg(long)]
        config: Option<String>,
    },
    /// Re-serialize a tensor in another slicing.
    Convert {
        #[arg(long)]
        input: String,
        /// tensor, sourceMatrix, targetMatrix or rSlice
        #[arg(long, default_value = "tensor")]
        view: String,
    },
}

#[derive(Args, Debug)]
pub struct TensorArg {
    #[arg(long)]
    pub tensor: String,
}

#[derive(Subcommand, Debug)]
pub enum CuboCubicCmd {
    /// Ideal of the curve Y (or Y' with --prime) and its Hilbert fit.
    Curve {
        #[command(flatten)]
        t: TensorArg,
        #[arg(long)]
        prime: bool,
    },
    Forward {
        #[command(flatten)]
        t: TensorArg,
        #[arg(long)]
        y: String,
    },
    Inverse {
        #[command(flatten)]
        t: TensorArg,
        #[arg(long)]
        z: String,
    },
    /// Inverse after forward on random points; random tensor if omitted.
    Roundtrip {
        #[arg(long)]
        tensor: Option<String>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    TriplePoint {
        #[command(flatten)]
        t: TensorArg,
        #[arg(long)]
        p: String,
    },
    Trisecant {
        #[command(flatten)]
        t: TensorArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    StrataDim {
        /// 1..4; all when omitted
        #[arg(long)]
        i: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
pub enum NetCmd {
    /// Membership in F, defects and composition scalars.
    Check {
        #[arg(long)]
        triple: String,
    },
    SolvePsi {
        #[command(flatten)]
        t: TensorArg,
    },
    /// Member of the degeneration family at parameter a.
    Deform {
        #[arg(long)]
        a: String,
        /// {"i","a","c","d"}; random from the seed when omitted
        #[arg(long)]
        blocks: Option<String>,
        #[arg(long, default_value_t = 1)]
        i: usize,
    },
    Stabilizer {
        #[arg(long)]
        triple: String,
    },
    Monad {
        #[arg(long)]
        triple: String,
        #[arg(long)]
        xi: String,
    },
    /// Polarity with respect to a net of quadrics.
    Involution {
        #[arg(long)]
        net: String,
        #[arg(long)]
        p: String,
    },
    /// Whether the line through a and b lies on a quadric of the net.
    LineComplex {
        #[arg(long)]
        net: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum SchwarzCmd {
    /// Triplet ideal of a binary cubic; with --x, whether the triplet lies on it.
    Triplet {
        #[arg(long)]
        f: String,
        #[arg(long = "X", alias = "x")]
        x: Option<String>,
    },
    /// Points of P(S_3) whose triplet lies on the cubic.
    Count {
        #[arg(long = "X", alias = "x")]
        x: String,
        #[arg(long)]
        no_extension: bool,
    },
    Classify {
        #[arg(long = "X", alias = "x")]
        x: String,
    },
    /// Basis of the sections of F(1).
    Sections,
    Curve7 {
        #[arg(long)]
        s1: String,
        #[arg(long)]
        s2: String,
    },
    Curve9 {
        /// four sections, or four basis indices 1..10
        #[arg(long)]
        s: String,
    },
    Pencil {
        #[arg(long)]
        x0: String,
        #[arg(long)]
        x1: String,
        /// exhaustive extension scan instead of the algebraic count
        #[arg(long)]
        scan: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum InvolutionCmd {
    Apply {
        /// ideal whose quartic piece has dimension four
        #[arg(long)]
        curve: String,
        #[arg(long)]
        p: String,
    },
    /// Sample sigma(sigma(P)) = P on a random (9,6) curve.
    Verify {
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

pub struct Globals<'a> {
    pub field: Option<&'a str>,
    pub seed: u64,
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}")?;
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let g = Globals {
        field: cli.field.as_deref(),
        seed: cli.seed,
    };
    let (text, ok) = match &cli.command {
        Command::Convert { input, view } => (commands::convert(&g, input, view)?, true),
        cmd => {
            let cert = commands::dispatch(&g, cmd)?;
            (cert.to_pretty_json(), cert.passed())
        }
    };
    emit(cli.out.as_ref(), &text)?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

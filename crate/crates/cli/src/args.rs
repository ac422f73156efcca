use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "coneoff", version, about = "Builds and certifies coned-off turnover covers")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

/// Flags shared by every subcommand. A config file may supply any of them.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Common {
    #[arg(long, global = true)]
    pub k: Option<usize>,
    #[arg(long, global = true)]
    pub q: Option<u64>,
    #[arg(long, global = true)]
    pub level: Option<u32>,
    #[arg(long, global = true)]
    #[serde(alias = "b-fraction")]
    pub b_fraction: Option<f64>,
    #[arg(long, global = true)]
    #[serde(alias = "r-margin")]
    pub r_margin: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    #[serde(default)]
    pub structural: bool,
    /// Residual the polyhedron solver must reach.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// JSON file with any of the flags above; explicit flags win.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl Common {
    /// Fills unset fields from `other`.
    pub fn or(self, other: Common) -> Common {
        Common {
            k: self.k.or(other.k),
            q: self.q.or(other.q),
            level: self.level.or(other.level),
            b_fraction: self.b_fraction.or(other.b_fraction),
            r_margin: self.r_margin.or(other.r_margin),
            seed: self.seed.or(other.seed),
            structural: self.structural || other.structural,
            tolerance: self.tolerance.or(other.tolerance),
            out: self.out.or(other.out),
            format: self.format.or(other.format),
            config: self.config,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Realize the angled prism and report the Gram data.
    Prism,
    /// Compute C, L, μ, D and the derived b, c, R, girth target.
    Constants,
    /// LPS voltages on Θ_{k} for p = k − 1 modulo q^level.
    Lps {
        /// Emit the covering graph instead of the voltages.
        #[arg(long)]
        expand: bool,
    },
    /// Girth of a graph (or of the cover described by a voltage file).
    Girth { input: PathBuf },
    /// Normalized Laplacian gap; passes when λ₁ > 1/2.
    Spectrum { input: PathBuf },
    /// Derived cover of a voltage graph, with the covering-map check.
    Cover { input: PathBuf },
    /// Build T_n, cone it off and compare cone-vertex links with Θ-covers.
    ConeLinks {
        /// Θ_k voltage file; defaults to the construction for the given parameters.
        input: Option<PathBuf>,
    },
    /// Right-angled Coxeter group tools.
    Racg {
        #[command(subcommand)]
        verb: RacgVerb,
    },
    /// Run the full construction and evaluate the inequality ledger.
    Certify {
        /// Use these constants instead of computing them.
        #[arg(long)]
        constants: Option<PathBuf>,
        /// Include stage timings in the report.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum RacgVerb {
    /// Reduce a word and put it in normal form.
    Reduce {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        word: Vec<usize>,
    },
    /// Elements of the ball of the given radius.
    Ball {
        input: PathBuf,
        #[arg(long)]
        radius: usize,
        /// List the normal forms, not just the count.
        #[arg(long)]
        list: bool,
    },
    /// Smallest modulus whose congruence quotient separates the ball.
    Modulus {
        input: PathBuf,
        #[arg(long)]
        radius: usize,
    },
}

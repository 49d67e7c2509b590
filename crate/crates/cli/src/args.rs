use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "gjs3",
    version,
    about = "Exact and Monte Carlo computations for the level-3 group planar algebra model"
)]
pub struct Cli {
    /// Worker threads for parallel kernels.
    #[arg(long, global = true, env = "GJS3_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Non-crossing partitions.
    #[command(subcommand)]
    Nc(NcCommand),
    /// Univariate moment/cumulant transforms.
    #[command(subcommand)]
    Cumulants(CumulantsCommand),
    /// Joint moments of Z and the matrix algebra.
    #[command(subcommand)]
    Model(ModelCommand),
    /// The abstract free product and freeness certification.
    #[command(subcommand)]
    Free(FreeCommand),
    /// Free product parameter bookkeeping.
    #[command(subcommand)]
    Factor(FactorCommand),
    /// Random-matrix simulations.
    #[command(subcommand)]
    Rmt(RmtCommand),
    /// Exact verification suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Debug, Subcommand)]
pub enum NcCommand {
    /// Count NC(q) by number of blocks.
    Enum {
        #[arg(long)]
        q: usize,
        /// Also list every partition.
        #[arg(long)]
        list: bool,
    },
    /// Möbius function μ(π, σ).
    Mobius {
        #[arg(long)]
        pi: String,
        #[arg(long)]
        sigma: String,
    },
    /// Complement π̃ on E = [q] \ D.
    Pitilde {
        #[arg(long)]
        q: usize,
        /// Comma-separated elements of D.
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[arg(long)]
        pi: String,
        /// Use the brute-force maximum instead of the direct construction.
        #[arg(long)]
        brute: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum CumulantsCommand {
    /// κ_1..κ_q from m_1..m_q.
    FromMoments {
        #[arg(long, allow_hyphen_values = true)]
        moments: String,
    },
    /// m_1..m_q from κ_1..κ_q.
    ToMoments {
        #[arg(long, allow_hyphen_values = true)]
        cumulants: String,
    },
}

#[derive(Debug, Args)]
pub struct GroupOrder {
    /// Group order n ≥ 2.
    #[arg(long)]
    pub n: u32,
}

#[derive(Debug, Subcommand)]
pub enum ModelCommand {
    /// τ of a word.
    Tau {
        #[command(flatten)]
        order: GroupOrder,
        #[arg(long)]
        word: String,
    },
    /// One summand of τ with its bookkeeping.
    PiTerm {
        #[command(flatten)]
        order: GroupOrder,
        #[arg(long)]
        word: String,
        /// Partition of the Z positions.
        #[arg(long)]
        pi: String,
    },
    /// τ(Z^m).
    ZMoment {
        #[command(flatten)]
        order: GroupOrder,
        #[arg(long)]
        m: usize,
    },
    /// Box-space dimension n^(k-1).
    Dims {
        #[command(flatten)]
        order: GroupOrder,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum FreeCommand {
    /// Certify that Z and the matrix units have vanishing mixed cumulants.
    Check {
        #[command(flatten)]
        order: GroupOrder,
        #[arg(long, default_value_t = 4)]
        max_q: usize,
    },
    /// Moment of a word in the abstract free product.
    ProductMoment {
        #[command(flatten)]
        order: GroupOrder,
        #[arg(long)]
        word: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum FactorCommand {
    /// (C_{1-alpha} + LF(r)_alpha) * M_d.
    Dykema {
        #[arg(long)]
        r: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        d: u32,
    },
    /// The free product describing the level-3 algebra.
    M3 {
        #[command(flatten)]
        order: GroupOrder,
    },
}

#[derive(Debug, Args)]
pub struct SimulationArgs {
    /// Matrix dimension N.
    #[arg(long, default_value_t = 1000)]
    pub size: usize,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Threshold for eigenvalues counted in the atom; defaults to 1e-6·n.
    #[arg(long)]
    pub epsilon_atom: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum RmtCommand {
    /// Wishart spectra: moments, atom, support and histogram.
    Sample {
        #[command(flatten)]
        sim: SimulationArgs,
        /// CSV file for the eigenvalues.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 40)]
        bins: usize,
    },
    /// Normalized-trace estimates of words, compared with the exact value.
    Estimate {
        #[command(flatten)]
        sim: SimulationArgs,
        /// Repeat for several words.
        #[arg(long, required = true)]
        word: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mutation {
    /// n^(|D|-|π|+1) in place of n^(|D|-|π|).
    Exponent,
    /// Scales the |D|=4, |π|=2 weight by 9/10.
    Single,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Run the exact acceptance criteria.
    All {
        /// Comma-separated subset of criteria; all by default.
        #[arg(long)]
        criteria: Option<String>,
        /// Seed for the sampled instances and random functionals.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, hide = true)]
        mutate: Option<Mutation>,
    },
}

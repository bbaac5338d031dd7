//! `loopsym`: command-line access to loop symmetric functions, the
//! birational R-matrix, its tropical shadows, and matrix-polynomial total
//! nonnegativity.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "loopsym", version, about = "Loop symmetric functions and the birational R-matrix")]
pub struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = loopsym::verify::DEFAULT_SEED)]
    pub seed: u64,
    /// Number of random points for randomized checks.
    #[arg(long, global = true, default_value_t = loopsym::verify::DEFAULT_POINTS)]
    pub points: usize,
    #[command(subcommand)]
    pub command: Command,
}

/// Variables: symbolic by default, or a point given as LoopVarArray JSON.
#[derive(Args, Debug, Clone)]
pub struct Vars {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub m: u32,
    /// Print the symbolic polynomial (the default when no point is given).
    #[arg(long)]
    pub symbolic: bool,
    /// `{"n":…,"m":…,"values":[[…],…]}` inline, `@file`, or `-` for stdin.
    #[arg(long)]
    pub point: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchurMethod {
    Tableaux,
    Jt,
    Alternant,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum RMethod {
    Trop,
    Jdt,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Render {
    Ascii,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    /// Same index when the i lies left of the i − 1, else one more.
    Index,
    /// Lascoux–Schützenberger cocharge.
    Classical,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Order {
    /// `x_i^{(j)} = a_i^{(j+1−i)}`.
    Direct,
    /// `x_i^{(j)} = a_{m+1−i}^{(j+1−i)}`.
    Reversed,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Loop elementary symmetric function e_k^(r).
    E {
        #[command(flatten)]
        vars: Vars,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        r: i64,
    },
    /// Loop (skew) Schur function s^(r)_{λ/μ}.
    Schur {
        #[command(flatten)]
        vars: Vars,
        /// Outer partition, e.g. "2,1".
        #[arg(long)]
        shape: String,
        /// Inner partition (skew shapes; not for alternants).
        #[arg(long, default_value = "")]
        inner: String,
        #[arg(long, default_value_t = 1)]
        r: i64,
        #[arg(long, value_enum, default_value_t = SchurMethod::Tableaux)]
        method: SchurMethod,
    },
    /// Loop powersum p̃_k.
    Powersum {
        #[command(flatten)]
        vars: Vars,
        #[arg(long)]
        k: u32,
    },
    /// Murnaghan–Nakayama expansion of p̃_k · s_λ.
    Mn {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "")]
        shape: String,
    },
    /// Images of all variables under a permutation word of swaps.
    Rmatrix {
        #[command(flatten)]
        vars: Vars,
        /// Word such as "s1 s2 s1".
        #[arg(long)]
        word: String,
    },
    /// Hopf axioms on generators e_i^(r), i ≤ max-i.
    HopfCheck {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        max_i: u32,
        /// Use the antipode without the (−1)^i sign.
        #[arg(long)]
        unsigned: bool,
    },
    /// Tropical swap of two integer n-tuples, with its min-plus formulas.
    Trop {
        /// Comma-separated x, e.g. "1,1,1".
        #[arg(long)]
        x: String,
        /// Comma-separated y.
        #[arg(long)]
        y: String,
        /// Also print the tropicalized formulas.
        #[arg(long)]
        formulas: bool,
    },
    /// Combinatorial R-matrix on one-row tableaux.
    CombR {
        #[arg(long)]
        n: u32,
        /// Letters of b1, e.g. "123".
        #[arg(long)]
        b1: String,
        #[arg(long)]
        b2: String,
        #[arg(long, value_enum, default_value_t = RMethod::Trop)]
        method: RMethod,
    },
    /// Cocharge of a word with partition weight, e.g. 3222311111233.
    Cocharge {
        word: String,
        #[arg(long, value_enum, default_value_t = Rule::Index)]
        rule: Rule,
        /// Print each extraction round.
        #[arg(long)]
        trace: bool,
    },
    /// Energy of a tableau via the tropical loop Schur function.
    Energy {
        /// Tableau JSON `{"rows":[[…],…]}`, `@file`, or `-`.
        #[arg(long)]
        tableau: String,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Order::Direct)]
        order: Order,
    },
    /// Evolve a box-ball state.
    Boxball {
        /// State JSON `{"boxes":[0,1,…]}`, `@file`, or `-`.
        #[arg(long, conflicts_with = "positions")]
        state: Option<String>,
        /// Ball positions (0-based), e.g. "1,2,3,8".
        #[arg(long)]
        positions: Option<String>,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Render::Ascii)]
        render: Render,
        /// Evolve by a carrier of this capacity instead of the leftmost rule.
        #[arg(long)]
        capacity: Option<u32>,
    },
    /// Factor a matrix polynomial into m whirls.
    Factor {
        /// MatrixPoly JSON `{"n":…,"coeffs":[…]}`, `@file`, or `-`.
        #[arg(long)]
        input: String,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
    },
    /// Minor test of the block-Toeplitz window.
    Tnn {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 4)]
        window: usize,
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// Loop skew Schur nonnegativity certificate for a matrix polynomial.
    CertifySchur {
        #[arg(long)]
        input: String,
        /// Shapes λ/μ with λ inside a rows×cols box, e.g. "3x3".
        #[arg(long = "box", default_value = "3x3")]
        in_box: String,
    },
    /// Run identity suites.
    Verify {
        /// Suite name or "all".
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "leavitt", version, about = "Symbolic computation in the Leavitt algebras L(m,n)")]
pub struct Cli {
    /// Print a JSON document (schema 1, sorted keys) instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Scalar field: rational, or one of the primes 32003, 1000003, 2147483647.
    #[arg(long, global = true, env = "LEAVITT_FIELD", default_value = "rational")]
    pub field: String,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Mn {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Mnz {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub z: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of a polynomial in L(m,n).
    Nf {
        #[command(flatten)]
        mn: Mn,
        #[arg(long)]
        expr: String,
    },
    /// Irreducible words up to a length, optionally of one degree.
    Basis {
        #[command(flatten)]
        mn: Mn,
        #[arg(long)]
        max_len: usize,
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },
    /// Resolve every ambiguity of a reduction system.
    Diamond {
        #[arg(long, value_enum, default_value_t = SystemName::S)]
        system: SystemName,
        #[command(flatten)]
        mnz: Mnz,
        /// Print the rules instead of checking them.
        #[arg(long)]
        rules: bool,
    },
    /// The sums showing L_k L_{-k} = L_0 = L_{-k} L_k, and XY = I, YX = I.
    StrongGrading {
        #[command(flatten)]
        mn: Mn,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Word combinatorics of the degree-zero component.
    Zero {
        #[command(subcommand)]
        cmd: ZeroCmd,
    },
    /// The ⋆ product on matrices of size n^i × n^j.
    Star {
        #[command(subcommand)]
        cmd: StarCmd,
    },
    /// The presented algebras A(m,n,z).
    Amn {
        #[command(subcommand)]
        cmd: AmnCmd,
    },
    /// The hypergraph H(m,n,z) and its Bergman algebra.
    Bergman {
        #[command(subcommand)]
        cmd: BergmanCmd,
    },
    /// Commutative monoid presentations.
    Vmon {
        #[command(subcommand)]
        cmd: VmonCmd,
    },
    /// Run the acceptance battery.
    Suite {
        /// Comma-separated criterion numbers; all by default.
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u8>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemName {
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "T", alias = "t")]
    T,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Args, Debug)]
pub struct WordArg {
    #[command(flatten)]
    pub mn: Mn,
    #[arg(long)]
    pub word: String,
}

#[derive(Subcommand, Debug)]
pub enum ZeroCmd {
    /// Prime factors of a degree-zero word with their classes and types.
    Classify(WordArg),
    /// Completion of a product of prime xy words.
    Complete(WordArg),
    /// Transformation of an ordered word.
    Transform(WordArg),
    /// Skeleton and maximal chains and cochains of an admissible word.
    Skeleton(WordArg),
    /// The sufficient membership test for the transformed basis.
    Dxy(WordArg),
    /// Check that one block of a base change is unitriangular.
    BaseChange {
        #[command(flatten)]
        mn: Mn,
        /// Block sizes, e.g. 1,2.
        #[arg(long)]
        block: String,
        #[arg(long, default_value = "completion")]
        map: String,
        /// Stop after this many seconds.
        #[arg(long)]
        deadline: Option<u64>,
        /// Materialize the matrix and print its columns.
        #[arg(long)]
        dense: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum StarCmd {
    /// A ⋆ B for matrices given as JSON {base, i, j, entries}.
    Mul {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Reduce products in L(m,n).
        #[arg(long, requires = "n")]
        m: Option<u32>,
        #[arg(long, requires = "m")]
        n: Option<u32>,
    },
    /// One entry of u^(k) ⋆ … ⋆ u^(1) ⋆ v^(1) ⋆ … ⋆ v^(k) by the index formula.
    Entry {
        /// JSON list of columns u^(1), …, u^(k).
        #[arg(long)]
        u: String,
        /// JSON list of rows v^(1), …, v^(k).
        #[arg(long)]
        v: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum AmnCmd {
    /// Diamond check of T(m,n,z) or B(m,n,z).
    Diamond {
        #[command(flatten)]
        mnz: Mnz,
        #[arg(long, value_enum, default_value_t = SystemName::T)]
        system: SystemName,
    },
    /// The image of e(p,k,l,i,j) in L(m,n).
    Phi {
        #[command(flatten)]
        mnz: Mnz,
        #[arg(long)]
        letter: String,
    },
    /// Reduce every matrix relation of A(m,n,z) in T(m,n,z).
    VerifyRelations {
        #[command(flatten)]
        mnz: Mnz,
    },
}

#[derive(Subcommand, Debug)]
pub enum BergmanCmd {
    /// Vertices and edges of H(m,n,z).
    Graph {
        #[command(flatten)]
        mnz: Mnz,
    },
    /// Send the relations of B(H(m,n,z)) into A(m,n,z).
    Map {
        #[command(flatten)]
        mnz: Mnz,
    },
    /// Check that A(m,1,z) collapses to matrices over the field.
    CollapseN1 {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        z: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum VmonCmd {
    /// The monoid presentation read off H(m,n,z).
    FromGraph {
        #[command(flatten)]
        mnz: Mnz,
        /// Eliminate all vertices except v(p,1).
        #[arg(long)]
        reduce: bool,
    },
    /// Tietze elimination of a presentation file ("-" for stdin).
    Tietze {
        input: PathBuf,
        /// Generators never eliminated (repeat the flag or list several).
        #[arg(long, num_args = 1..)]
        keep: Vec<String>,
    },
    /// Glue two presentations along relations such as "v[0]=w[0]".
    Pushout {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, required = true)]
        glue: Vec<String>,
    },
    /// Bounded breadth-first search between two elements.
    Reach {
        input: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long, default_value_t = leavitt_core::vmonoid::DEFAULT_STATE_BUDGET)]
        budget: usize,
    },
    /// Separate k·v_0 from l·v_0 with the invariant μ.
    Ibn {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        l: u64,
        #[arg(long, default_value_t = 3)]
        window: u32,
    },
}

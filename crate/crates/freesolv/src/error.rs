use alloc::vec::Vec;
use core::fmt;

/// Errors produced by parsing and by the solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A character in compact word syntax that is not `a..z` / `A..Z`.
    UnknownCharacter { ch: char, pos: usize },
    /// Explicit syntax token `x0` or `x0^-1`: generator indices start at 1.
    ZeroGeneratorIndex { pos: usize },
    /// Letter refers to a generator beyond the ambient rank.
    GeneratorOutOfRange { gen: usize, rank: usize },
    /// Compact and explicit word syntaxes mixed in one input.
    MixedSyntax,
    /// Token is neither a compact letter run nor `xK` / `xK^-1`.
    MalformedToken { pos: usize },
    /// Operands live over different ambient ranks.
    RankMismatch { left: usize, right: usize },
    /// Solvability class outside the supported range for the operation.
    UnsupportedClass { class: usize },
    /// Prefix index outside `0..=n`.
    PrefixIndexOutOfRange { index: usize, len: usize },
    /// `derivative_difference_is_zero` called on a pair that is not equal
    /// one class below.
    PartitionPrecondition { s: usize, t: usize },
    /// Flow violates the Kirchhoff law or the source/sink net-flow rule.
    NotGeometric { vertex: Vec<i64> },
    /// Euler construction found an unreachable edge.
    Disconnected,
    /// Euler construction found an unbalanced vertex (corrupted flow).
    DegreeParity { vertex: Vec<i64> },
    /// Exact Steiner search would exceed the configured budget.
    ExactLimitExceeded {
        terminals: usize,
        vertices: usize,
        max_terminals: usize,
        max_vertices: usize,
    },
    /// Bounded geodesic length query that neither the exact solver nor the
    /// certified bounds could settle within budget.
    Undecided { lower: usize, upper: usize },
    /// Point set input contains a repeated point.
    DuplicatePoint { point: (i64, i64) },
    /// Point set input is empty.
    EmptyPointSet,
    /// Malformed `x,y;x,y` point list.
    MalformedPointList { pos: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownCharacter { ch, pos } => {
                write!(f, "unknown character {ch:?} at position {pos}")
            }
            Error::ZeroGeneratorIndex { pos } => {
                write!(f, "generator index 0 at position {pos} (indices start at 1)")
            }
            Error::GeneratorOutOfRange { gen, rank } => {
                write!(f, "generator {gen} exceeds rank {rank}")
            }
            Error::MixedSyntax => write!(f, "compact and explicit word syntaxes mixed"),
            Error::MalformedToken { pos } => write!(f, "malformed token at position {pos}"),
            Error::RankMismatch { left, right } => {
                write!(f, "rank mismatch: {left} vs {right}")
            }
            Error::UnsupportedClass { class } => {
                write!(f, "unsupported solvability class {class}")
            }
            Error::PrefixIndexOutOfRange { index, len } => {
                write!(f, "prefix index {index} out of range for {len} prefixes")
            }
            Error::PartitionPrecondition { s, t } => {
                write!(f, "prefixes {s} and {t} are not equal one class below")
            }
            Error::NotGeometric { vertex } => {
                write!(f, "flow is not geometric: bad net flow at {vertex:?}")
            }
            Error::Disconnected => write!(f, "support graph is disconnected"),
            Error::DegreeParity { vertex } => {
                write!(f, "degree parity violation at {vertex:?}")
            }
            Error::ExactLimitExceeded {
                terminals,
                vertices,
                max_terminals,
                max_vertices,
            } => write!(
                f,
                "exact solver limits exceeded: {terminals} terminals (max {max_terminals}), \
                 {vertices} candidate vertices (max {max_vertices})"
            ),
            Error::Undecided { lower, upper } => write!(
                f,
                "undecided at this budget: length is in [{lower}, {upper}]"
            ),
            Error::DuplicatePoint { point } => {
                write!(f, "duplicate point ({}, {})", point.0, point.1)
            }
            Error::EmptyPointSet => write!(f, "point set is empty"),
            Error::MalformedPointList { pos } => {
                write!(f, "malformed point list near entry {pos}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

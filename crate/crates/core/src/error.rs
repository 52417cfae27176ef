use std::fmt;

use thiserror::Error;

/// Which way a branching points relative to its root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Every node has a directed path to the root.
    In,
    /// The root has a directed path to every node.
    Out,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::In => f.write_str("in"),
            Direction::Out => f.write_str("out"),
        }
    }
}

/// Coarse error classes, used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Invalid,
    Infeasible,
    Guard,
    Internal,
}

/// Node and sensor indices carried by errors are 0-based; `Display` renders
/// them 1-based to match instance documents.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: expected {expected}, found {rows}x{cols}")]
    Shape {
        expected: String,
        rows: usize,
        cols: usize,
    },

    #[error("{path}: {message}")]
    Invalid { path: String, message: String },

    #[error("malformed instance document: {0}")]
    Json(#[from] serde_json::Error),

    #[error("system pattern is not structurally full rank")]
    NotStructurallyFullRank,

    #[error("arc {} -> {} is not a link of the candidate network", .from + 1, .to + 1)]
    ArcOutsideNetwork { from: usize, to: usize },

    #[error(
        "infeasible cardinality: {parents} parent SCCs but {sensors} sensors (they must be equal)"
    )]
    CardinalityMismatch { parents: usize, sensors: usize },

    #[error(
        "no feasible assignment: sensors {} can only reach parent SCCs {}",
        one_based(.sensors), one_based(.parents)
    )]
    AssignmentInfeasible {
        sensors: Vec<usize>,
        parents: Vec<usize>,
    },

    #[error(
        "network skeleton is disconnected: no link leaves node set {}",
        one_based(.cut)
    )]
    Disconnected { cut: Vec<usize> },

    #[error("node {} cannot be spanned by an {direction}-branching rooted at {}", .node + 1, .root + 1)]
    Unreachable {
        node: usize,
        root: usize,
        direction: Direction,
    },

    #[error("candidate network is not strongly connected")]
    NotStronglyConnected,

    #[error("guard exceeded: {what} is {actual}, limit {limit}")]
    GuardExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("measurement row {} has {count} nonzeros, expected exactly 1", .row + 1)]
    MeasurementRow { row: usize, count: usize },

    #[error("design refused by structural gate: {0}")]
    StructuralGate(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::CardinalityMismatch { .. }
            | Error::AssignmentInfeasible { .. }
            | Error::Disconnected { .. }
            | Error::Unreachable { .. }
            | Error::NotStronglyConnected => ErrorClass::Infeasible,
            Error::GuardExceeded { .. } => ErrorClass::Guard,
            Error::Internal(_) | Error::Io(_) => ErrorClass::Internal,
            _ => ErrorClass::Invalid,
        }
    }

    /// Short machine-readable tag for JSON error bodies.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Shape { .. } => "shape",
            Error::Invalid { .. } => "invalid",
            Error::Json(_) => "schema",
            Error::NotStructurallyFullRank => "not_full_rank",
            Error::ArcOutsideNetwork { .. } => "arc_outside_network",
            Error::CardinalityMismatch { .. } => "infeasible_cardinality",
            Error::AssignmentInfeasible { .. } => "infeasible_assignment",
            Error::Disconnected { .. } => "disconnected",
            Error::Unreachable { .. } => "unreachable",
            Error::NotStronglyConnected => "not_strongly_connected",
            Error::GuardExceeded { .. } => "guard_exceeded",
            Error::MeasurementRow { .. } => "measurement_row",
            Error::StructuralGate(_) => "structural_gate",
            Error::Internal(_) => "internal",
            Error::Io(_) => "io",
        }
    }

    pub(crate) fn invalid(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Invalid {
            path: path.into(),
            message: message.into(),
        }
    }
}

fn one_based(indices: &[usize]) -> String {
    let items: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

pub type Result<T> = std::result::Result<T, Error>;

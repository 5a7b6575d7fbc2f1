use thiserror::Error;

use crate::forms::Signature;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("Coxeter graph is disconnected (reducible system)")]
    RejectReducible,

    #[error("invalid bond between generators {i} and {j}: {reason}")]
    RejectBadBond { i: usize, j: usize, reason: String },

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("unsupported signature {0}")]
    UnsupportedSignature(Signature),

    #[error("vector too close to the hyperplane |v|_1 = 0 (|v|_1 = {value:e})")]
    NearV0 { value: f64 },

    #[error("inventory exceeded cap of {cap} entries")]
    Overflow { cap: usize },

    #[error("no point has depth >= {depth_min}")]
    EmptyEstimate { depth_min: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("constant C = {c} outside (0, {bound})")]
    BadC { c: f64, bound: f64 },

    #[error("component {component} has only {count} samples; rerun with more samples")]
    InsufficientSampling { component: usize, count: usize },

    #[error("eigen-solver failed: {0}")]
    DegenerateEigen(String),

    #[error("element has finite order {order}")]
    FiniteOrder { order: usize },

    #[error("point cloud is empty")]
    EmptyCloud,

    #[error("positive root with negative coordinate {value:e} at depth {depth}")]
    NegativeRoot { depth: usize, value: f64 },

    #[error("missing input: {0}")]
    MissingInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

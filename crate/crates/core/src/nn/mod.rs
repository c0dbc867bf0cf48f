//! Exact-rational feedforward and message-passing networks.

mod fnn;
pub mod gadgets;
pub mod json;
mod mpnn;
mod time2vec;

pub use fnn::{Activation, Fnn, FnnLayer};
pub use mpnn::{parallel_compose, run_mpnn, serial_compose, Aggregation, Mpnn, MpnnClass, MpnnLayer, MpnnRun};
pub(crate) use mpnn::add_into;
pub use time2vec::Time2Vec;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NnError {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("a network needs at least one layer")]
    EmptyNetwork,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("invalid network JSON at {path}: {message}")]
    Schema { path: String, message: String },
}

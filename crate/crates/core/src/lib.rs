//! Compile past-time temporal/modal product-logic formulas into temporal
//! graph neural networks with exact rational weights, run them, and check
//! them against a brute-force model checker.

pub mod cli;
pub mod compile;
pub mod logic;
pub mod nn;
pub mod rational;
pub mod tgnn;
pub mod tgraph;
pub mod verify;

pub mod circuit;
pub mod linalg;

pub use circuit::{Circuit, CircuitError, Gate, GateKind, GateName};
pub use linalg::{ComplexMatrix, LinalgError, StateVector};
pub mod benchmarks;
pub mod cli;
pub mod decompose;
pub mod noise;
pub mod plot;
pub mod report;
pub mod schedule;
pub mod synthesis;

//! Resultants from traces, and the classical oracles they are checked against.

mod assemble;
mod oracles;

pub use assemble::{
    deformed_expansion, deformed_resultant, probe_using, required_gradings, resultant, resultant_using,
    resultant_with, solvability_probe, GradingMode, ResultantOptions, ResultantResult, TraceReport,
};
pub use oracles::{
    coefficient_matrix, determinant_special, leibniz_determinant, minor_expansion_determinant, power_traces,
    relative_sign, sylvester_matrix, sylvester_resultant,
};

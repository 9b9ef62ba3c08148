//! Placeholder.
pub struct ExperimentSpec;
pub struct ResultTable;
pub fn run_experiment() {}

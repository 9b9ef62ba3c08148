//! Placeholder.
#[derive(Debug)]
pub enum ConfigError {}
pub fn parse_system_config() {}
pub fn parse_experiment_spec() {}

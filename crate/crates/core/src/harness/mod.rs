//! Monotonicity and consistency checks plus a seeded counterexample search.

pub mod consistency;
pub mod monotonicity;
pub mod scan;

pub use consistency::{
    check_population_consistency, check_population_consistency_pair, check_resource_consistency,
    check_weight_consistency, check_weight_consistency_pair,
};
pub use monotonicity::{
    compare, compare_population, compare_resource, compare_weight, AgentChange, MonotonicityKind,
    MonotonicityReport, Perturbation,
};
pub use scan::{random_instance, random_perturbation, run_trial, scan, Counterexample, ScanConfig, ScanProperty};

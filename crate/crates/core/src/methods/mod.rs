//! Apportionment methods turned into picking sequences, and the rule abstraction.

pub mod divisor;
pub mod quota;
pub mod rule;

pub use divisor::{
    compare_scores, divisor_sequence, parse_custom_table, parse_divisor_function, CustomTable,
    DivisorFunction, Exactness, ScoreKey, Scorer,
};
pub use quota::{eligible_agents, quota_sequence};
pub use rule::{Rule, RuleConfig};

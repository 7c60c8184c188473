//! Enumeration, bounded classical evaluation and check suites.
//!
//! Bounded evaluation is only a falsifier: a check passes when no
//! configuration fails at two consecutive bounds, which proves nothing.

mod check;
mod enumerate;
mod eval;
mod exec;
mod generate;
mod suites;

pub use check::{
    check_class_equality, check_equiv, check_valid, iff, table_configs, uninterpreted,
    Counterexample, OracleConfig, Status, Verdict, DEFAULT_SEED,
};
pub use enumerate::{enumerate_formulas, EnumConfig, Enumerator};
pub use eval::{bounded_eval, eval_under, Assignment, Interpretation, Table};
pub use exec::{filter_map_range, map_slice, ExecMode};
pub use generate::{random_atom, random_formula, random_prenex, random_qf, GenConfig};
pub use suites::{run_suite, Failure, Part, SuiteConfig, SuiteReport, SUITES};

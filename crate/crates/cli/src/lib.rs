//! Library surface of the command-line front end: subcommand logic, the
//! score-expression language, canonical JSON rendering, and the reference
//! verdict table.

pub mod commands;
pub mod expr;
pub mod json;
pub mod reference;

pub use commands::{
    check_against_reference, compute_table, parse_entity_csv, review_constraints, run_audit,
    run_grid, run_rank, run_table1, run_tau, AuditOptions, CommandOutput, GridOptions,
    OutputFormat, RankOptions, ScoreChoice, TableCell, TableOptions, TableRow, TauOptions,
    UsageError,
};
pub use expr::{ParseError, ScoreExpression};

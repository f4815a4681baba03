//! Higher limits over orbit, centralizer and normalizer categories of a
//! fusion system, and instance checks comparing them.

mod example;
mod limits;
mod rows;
mod verify;

pub use example::{example_c3_rtimes_z, ExampleReport, ExampleRow};
pub use limits::{stable_elements, subgroup_limits, LimitsReport, StableElements};
pub use rows::{centralizer_column, centralizer_row, centralizer_row_module, normalizer_row, normalizer_row_module, RowModule};
pub use verify::{verify_norm_sharp, verify_reduction, verify_thesame, Verdict, VerifyReport};

//! Command-line front end for the `apollonia` hyperbolic geometry kernel.
//!
//! [`run_from_args`] is the whole program minus process I/O, which keeps it
//! testable and fuzzable.

// `!(a <= b)` is used on purpose so that NaN fails comparisons.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod output;
pub mod request;
mod run;
pub mod sampling;
pub mod svg;
pub mod verify;

pub use run::{run, run_from_args, Body, Outcome, EXIT_DOMAIN, EXIT_MALFORMED, EXIT_OK};

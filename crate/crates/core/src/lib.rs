//! Guessing linear recurrence relations of multidimensional sequences.
//!
//! A table `u` indexed by monomials is probed through a [`TableOracle`];
//! the algorithms return a truncated Gröbner basis of its ideal of relations:
//!
//! * [`bms()`]: the Berlekamp-Massey-Sakata algorithm up to a stop monomial;
//! * [`abms()`]: BMS skipping tests that would exceed a staircase bound;
//! * [`asfglm()`]: adaptive Scalar-FGLM, growing the staircase by rank tests.
//!
//! ```
//! use linrec::{bms, builtin, MonomialOrder};
//!
//! let ord = MonomialOrder::parse("drl:y<x").unwrap();
//! let mut table = builtin("binomial", None).unwrap();
//! let stop = ord.parse_monomial("x^3").unwrap();
//! let res = bms(&mut table, &ord, &stop).unwrap();
//! assert_eq!(res.relation_strings(), ["y^2", "x*y - y - 1", "x^2 - 2*x + 1"]);
//! ```

pub mod abms;
pub mod algebra;
pub mod asfglm;
pub mod bench;
pub mod bms;
pub mod error;
pub mod monomial;
pub mod multihankel;
pub mod poly;
pub mod result;
pub mod staircase;
pub mod table;

pub use abms::{abms, abms_reduced, abms_traced, inter_reduce};
pub use algebra::{Arith, Field, FieldElement, OpCounter};
pub use asfglm::{asfglm, asfglm_tweaked, no_bound_mode};
pub use bms::{bms, bms_with, combine, should_skip, stopping_bound, BmsConfig, SkipReason};
pub use error::Error;
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use poly::Polynomial;
pub use result::{GuessResult, Relation, SkipStats};
pub use staircase::{EdgeEntry, Staircase};
pub use table::{builtin, family, from_gb, Family, FamilyKind, TableOracle, BUILTINS};

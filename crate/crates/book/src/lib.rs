//! Guide chapters compiled as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/tables.md")]
pub mod tables {}

#[doc = include_str!("../../../book/src/orderings.md")]
pub mod orderings {}

#[doc = include_str!("../../../book/src/bms.md")]
pub mod bms {}

#[doc = include_str!("../../../book/src/abms.md")]
pub mod abms {}

#[doc = include_str!("../../../book/src/asfglm.md")]
pub mod asfglm {}

#[doc = include_str!("../../../book/src/benchmarks.md")]
pub mod benchmarks {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

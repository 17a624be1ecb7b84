//! The long-form guide, included verbatim from the `book/` sources so that
//! every example in it compiles and runs with the ordinary test suite.
//!
//! Render it standalone with `mdbook build book` from the repository root;
//! each chapter below mirrors one page of that book.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/geometry.md")]
pub mod geometry {}

#[doc = include_str!("../../../book/src/kernel-functions.md")]
pub mod kernel_functions {}

#[doc = include_str!("../../../book/src/coherent-states.md")]
pub mod coherent_states {}

#[doc = include_str!("../../../book/src/born-rule.md")]
pub mod born_rule {}

#[doc = include_str!("../../../book/src/thermal.md")]
pub mod thermal {}

#[doc = include_str!("../../../book/src/gauge.md")]
pub mod gauge {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

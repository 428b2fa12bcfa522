//! mdbook cannot run book snippets against workspace dependencies, so each
//! chapter is attached here as module documentation and `cargo test --doc`
//! exercises every code block.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}

#[doc = include_str!("../../../book/src/planners.md")]
pub mod planners {}

#[doc = include_str!("../../../book/src/clustering.md")]
pub mod clustering {}

#[doc = include_str!("../../../book/src/decisions.md")]
pub mod decisions {}

#[doc = include_str!("../../../book/src/routing.md")]
pub mod routing {}

#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}

#[doc = include_str!("../../../book/src/benchmarks.md")]
pub mod benchmarks {}

//! The guide under `book/src`, compiled here so its snippets run as
//! doc-tests. Read it with `mdbook serve book`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/statevector.md")]
pub mod statevector {}

#[doc = include_str!("../../../book/src/grover.md")]
pub mod grover {}

#[doc = include_str!("../../../book/src/suppression.md")]
pub mod suppression {}

#[doc = include_str!("../../../book/src/gate-counts.md")]
pub mod gate_counts {}

#[doc = include_str!("../../../book/src/qaoa.md")]
pub mod qaoa {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

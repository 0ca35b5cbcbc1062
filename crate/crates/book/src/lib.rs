//! Compiles the guide's code listings as doctests so `cargo test` keeps the
//! book honest. One module per chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/jacobi.md")]
pub mod jacobi {}
#[doc = include_str!("../../../book/src/nodes.md")]
pub mod nodes {}
#[doc = include_str!("../../../book/src/interpolation.md")]
pub mod interpolation {}
#[doc = include_str!("../../../book/src/lebesgue.md")]
pub mod lebesgue {}
#[doc = include_str!("../../../book/src/analysis.md")]
pub mod analysis {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

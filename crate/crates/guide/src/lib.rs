//! Book chapters compiled as doctests, so every listing in `book/` runs.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}

#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}

#[doc = include_str!("../../../book/src/linfty.md")]
pub mod linfty {}

#[doc = include_str!("../../../book/src/transfer.md")]
pub mod transfer {}

#[doc = include_str!("../../../book/src/potential.md")]
pub mod potential {}

#[doc = include_str!("../../../book/src/milnor.md")]
pub mod milnor {}

#[doc = include_str!("../../../book/src/resolution.md")]
pub mod resolution {}

#[doc = include_str!("../../../book/src/motive.md")]
pub mod motive {}

#[doc = include_str!("../../../book/src/files.md")]
pub mod files {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}

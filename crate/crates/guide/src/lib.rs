//! The vbfcodes book, compiled so that its examples run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/fields.md")]
pub mod fields {}

#[doc = include_str!("../../../book/src/walsh.md")]
pub mod walsh {}

#[doc = include_str!("../../../book/src/vectorial.md")]
pub mod vectorial {}

#[doc = include_str!("../../../book/src/codes.md")]
pub mod codes {}

#[doc = include_str!("../../../book/src/distributions.md")]
pub mod distributions {}

#[doc = include_str!("../../../book/src/kloosterman.md")]
pub mod kloosterman {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

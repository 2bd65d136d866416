//! Holomorphic motions of finite sets over the disk and the annulus:
//! monodromy words, the radial-flow extension, hyperbolic length bounds and
//! Douady–Earle barycentric extension.

// `!(x > 0.0)` is used on purpose so that NaN inputs fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod barycentric;
pub mod circle;
pub mod flow;
pub mod geometry;
pub mod monodromy;
pub mod radial;
pub mod words;

//! Polymatroids and entropy functions on small ground sets.
//!
//! The crate is organised bottom-up:
//!
//! - [`polymatroid`]: set functions on ground sets of at most eight labels,
//!   axiom checks, uniform-up-to-loops matroids, convolution, the
//!   tight/modular decomposition, contraction and principal extensions.
//! - [`entropy`]: joint distributions, their entropy functions and two
//!   closed-form families of Ingleton-violating distributions.
//! - [`frame`]: four-variable machinery around the Ingleton expression:
//!   the eleven-generator basis, the face maps, the stabilizer average and
//!   cross-section coordinates in the tetrahedron spanned by four vertices.
//! - [`inequality`]: linear information inequalities and their cross-section
//!   halfspace forms.
//! - [`search`]: derivative-free minimization over distributions, point
//!   clouds, 3-D convex hulls and halfspace-region vertex enumeration.
//!
//! Entropies are in nats throughout.

// `!(x >= y)` is used on purpose so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod entropy;
pub mod error;
pub mod frame;
pub mod inequality;
pub mod par;
pub mod polymatroid;
pub mod search;

pub use error::{Error, Result};
pub use frame::IngletonFrame;
pub use polymatroid::{GroundSet, SetFunction, Subset};

//! Exact integral cohomology computations for quotients of compact spaces by
//! cyclic groups of prime order with isolated fixed points.
//!
//! The crate is `no_std` and only needs `alloc`. Modules, bottom up:
//!
//! * [`linalg`]: arbitrary-precision integer matrices, Smith normal form,
//!   kernels, quotient groups and ranks over prime fields.
//! * [`profile`]: Jordan block profiles of order-`p` actions over `F_p` and
//!   their direct sums, tensor products and symmetric powers.
//! * [`lattice`]: integral lattices with an isometry of order `p`, their
//!   invariants, group cohomology and pushforward lattices.
//! * [`toric`]: fans, cyclic quotient singularities and their resolutions.
//! * [`engine`]: second pages of the equivariant spectral sequence,
//!   degeneration criteria and torsion of the quotient.
//! * [`hilbert`]: K3 surfaces and their Hilbert schemes of points.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod engine;
pub mod error;
pub mod hilbert;
pub mod lattice;
pub mod linalg;
pub mod profile;
pub mod toric;

pub use error::{Error, Result};
pub use linalg::IntMatrix;
pub use profile::JordanProfile;

//! Core library for analyzing finite composition instances: square matrices
//! whose entries compose multiplicatively (`S(x,z) = S(x,y)·S(y,z)` and its
//! two one-sided relaxations) or additively (the triangle law).
//!
//! Everything here works on a finite index set. An [`Instance`] is an n×n
//! matrix over `f64` or arbitrary-precision rationals, tagged with its
//! composition mode. On top of that the crate provides:
//!
//! - law validation over all ordered triples ([`validate`]),
//! - structural audits: two-sided entry estimates, the column-ratio
//!   tightening map, and extraction of exact solutions sandwiched between
//!   an instance and its reciprocal transpose (module [`analysis`]),
//! - potential representations: canonical column families, sup/inf
//!   reconstructions, equation solving, and comparability checks
//!   (module [`represent`]),
//! - the reversed inequality theory: reciprocal reduction, diagonal and
//!   zero-pattern audits (module [`reverse`]),
//! - additive/metric tooling: the exp/ln bridge, quotient by zero
//!   separation, and min-plus transitive closure with deterministic
//!   kernels (modules [`metric`] and [`tropical`]),
//! - seeded instance generators and a brute-force claim oracle for
//!   randomized cross-checking (modules [`gen`] and [`oracle`]).
//!
//! All comparisons go through a single tolerance policy ([`Tolerance`]):
//! relative slack `rel · max(1, scale)` in float mode, strict comparisons
//! on `BigRational` in exact mode.
//!
//! The crate is `no_std`-compatible (requires `alloc`). The default `std`
//! feature enables standard-library floats; builds without it need the
//! `libm` feature for float transcendentals. The optional `parallel`
//! feature (implies `std`) parallelizes the closure kernel row sweeps.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("building without `std` requires the `libm` feature for float math");

pub mod analysis;
#[cfg(feature = "std")]
pub mod bench;
pub mod entry;
pub mod gen;
pub mod instance;
pub mod metric;
pub mod oracle;
pub mod represent;
pub mod reverse;
pub mod tropical;
pub mod validate;

pub use entry::Entry;
pub use instance::{Error, Instance, Mode, Tolerance};
pub use validate::{validate, validate_capped, Law, Violation, ViolationReport};

//! Signed graph homomorphisms with bounded maximum degree.
//!
//! The crate builds complete signed target graphs by seeded
//! verify-and-retry construction, embeds connected bounded-degree signed
//! graphs into them greedily along a degeneracy ordering (with an
//! edge-deletion surgery for the regular case), and provides exact signed
//! and 2-edge-colored homomorphism search plus chromatic number
//! computation on small instances as verification oracles.
//!
//! Modules:
//! - [`graph`]: the signed graph model, switching, signed neighborhoods,
//!   degeneracy orderings, switching-equivalence testing.
//! - [`hom`]: homomorphism checking and search, exhaustive oracle, exact
//!   chromatic numbers via quotient search.
//! - [`target`]: property verification and Las Vegas target construction
//!   with reproducible certificates.
//! - [`bounds`]: extended-precision evaluation of the probability-bound
//!   chain and the degree-based chromatic bound formulas.
//! - [`embed`]: the greedy embedding and the regular-case surgery.
//! - [`io`]: text formats, digests, and seeded instance generation.

pub mod bitset;
pub mod bounds;
pub mod embed;
pub mod error;
pub mod graph;
pub mod hom;
pub mod io;
pub mod target;

pub use error::{Error, Result};
pub use graph::{Sign, SignedGraph, SwitchSet};
pub use hom::SignedHom;

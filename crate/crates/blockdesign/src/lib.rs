//! Tools for block-transitive automorphism groups of 3-designs with small
//! block size: a from-scratch permutation group engine (stabilizer chains,
//! orbits, stabilizers, block systems), design construction from block
//! orbits with exact parameter verification, the arithmetic feasibility
//! sieves that eliminate the point-primitive product, diagonal and twisted
//! wreath cases and pin the point-imprimitive case down to 3-(16,6,lambda),
//! and canonical-form isomorphism classification of the resulting designs.
//!
//! The `examples/` directory holds one runnable example per capability; the
//! `blockdesign` binary exposes the same operations as subcommands.

pub mod catalog;
pub mod chain;
pub mod classify;
pub mod commands;
pub mod design;
pub mod error;
pub mod group;
pub mod perm;
pub mod sieve;

pub use classify::{are_isomorphic, canonical_form, iso_classes, CanonicalForm};
pub use design::{block_orbit, Design, DesignParams, Pencil, Verification};
pub use error::{Error, Result};
pub use group::{BlockSystem, PermGroup, SubdegreeProfile};
pub use perm::Permutation;
pub use sieve::{IntersectionPattern, SieveReport, SimpleGroupRecord};

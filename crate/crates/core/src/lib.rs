//! Finite models of generalized groups, generalized actions, T-spaces and
//! their quotient spaces, together with an executable registry of the
//! theorems that govern them.
//!
//! Everything here is desk-scale and exact: carriers are index sets of at
//! most 128 points, topologies are bitmask set families, and every check is
//! an exhaustive enumeration with a definite verdict — no sampling, no
//! timeouts.
//!
//! Module map:
//! - [`algebra`]: Cayley tables, generalized-group validation, constructions
//!   (left/right zero, zero products, Rees matrix), e-class decomposition,
//!   isomorphism-free enumeration.
//! - [`topology`]: finite topological spaces, point maps, continuity and
//!   open/closed/proper map predicates, products and quotients.
//! - [`tgg`]: topological generalized groups (algebra + topology on one
//!   carrier) and the canonical instance corpus.
//! - [`action`]: generalized actions, T-spaces, orbits and stabilizers,
//!   property classification, proper-action profile, induced semidynamical
//!   systems.
//! - [`quotient`]: the orbit relation (with an equivalence audit), quotient
//!   spaces, and the projection-map profile.
//! - [`dynamics`]: transitivity and T-transitivity of endomaps, dense
//!   T-orbits, equivariance, topological T-conjugacy, and counterexample
//!   search.
//! - [`laws`]: the theorem registry, one executable law per claim, with
//!   statuses and replayable witnesses.
//! - [`dsl`]: the structure-description language (parser and canonical
//!   serializer).

pub mod action;
pub mod algebra;
pub mod dsl;
pub mod dynamics;
pub mod enumerate;
pub mod laws;
pub mod quotient;
pub mod sets;
pub mod tgg;
pub mod topology;

pub use action::{GenAction, TSpace};
pub use algebra::{CayleyTable, GenGroup};
pub use sets::Mask;
pub use tgg::TopGenGroup;
pub use topology::{FiniteSpace, SpaceMap};

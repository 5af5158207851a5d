//! Finite semigroups, identities and concept lattices of their incidence.

pub mod context;
pub mod file;
pub mod identity;
pub mod table;

pub use context::{concept_lattice, incidence_context, Concept, Context};
pub use file::{parse_semigroup, write_semigroup, SemigroupFileError};
pub use identity::{counterexample, parse_basis, satisfies, satisfies_basis, Identity, IdentityParseError, Word};
pub use table::{associative_completions, named_semigroup, p3, p3_partial, parse_named, Semigroup, SemigroupError, NAMED};

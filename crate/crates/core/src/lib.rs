//! First-order definability in finite lattices.
//!
//! Lattices come from covers ([`lattice`]), from text files ([`io`]) or from
//! the [`catalog`]. Formulas in the lattice language ([`formula`]) are
//! evaluated by [`eval`], and [`definability`] decides which subsets can be
//! named at all, searches for small defining formulas, and names chain members
//! by induction. [`semigroup`] checks identities on finite semigroups and builds
//! concept lattices from the incidence tables. [`cli`] wires it all to the
//! `latfo` binary.
//!
//! ```
//! use latfo::catalog::{fixture, FixtureSpec};
//! use latfo::eval::defined_set;
//! use latfo::formula::parse_formula;
//!
//! let m3 = fixture(&FixtureSpec::M3).unwrap();
//! let atoms = parse_formula("exists y ( y < x & forall z ( z < x -> z = y ) )").unwrap();
//! assert_eq!(defined_set(&m3, &atoms).unwrap().count(), 3);
//! ```

pub mod catalog;
pub mod cli;
pub mod definability;
pub mod eval;
pub mod formula;
pub mod io;
pub mod lattice;
pub mod semigroup;
pub mod stdlib;
pub mod subset;

//! Exact computation of the complex K-theory of spherical space forms S(V)/G
//! from the character table of G, via K⁰(S(V)/G) ≅ R(G)/(λ₋₁(V)).
//!
//! The modules build on each other bottom-up: [`cyclotomic`] values fill a
//! [`chartab`] character table, [`repring`] does arithmetic in the
//! representation ring, [`lattice`] turns ideals into abelian-group
//! presentations, and [`ktheory`] ties the pipeline together.

pub mod chartab;
pub mod cyclotomic;
pub mod expr;
pub mod ktheory;
pub mod lattice;
pub mod report;
pub mod repring;

pub use chartab::{builtin_cyclic, builtin_quaternion8, validate_table, CharacterTable};
pub use cyclotomic::Cyclotomic;
pub use expr::{parse_rep_expression, RepExpression};
pub use ktheory::{k_theory_of_space_form, quaternion_family, SpaceFormResult};
pub use lattice::{AbelianGroupPresentation, IntMatrix, Order};
pub use report::ReportDocument;
pub use repring::VirtualCharacter;

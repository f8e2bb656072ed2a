//! Seed mutation for skew-symmetric cluster algebras, with Laurent checks.
//!
//! Variables are kept as quotients of Laurent polynomials in the initial
//! cluster and reduced after every mutation, so membership in
//! `Z[x1^{+-1}, ..., xn^{+-1}]` can be read off directly.

mod laurent;
mod seed;

pub use laurent::{is_laurent, LaurentPolynomial, RationalFunction};
pub use seed::{exchange_binomial, mutate, mutate_path, mutation_orbit, ClusterSeed, MutationOrbit};

//! Free graded-commutative algebras `ΛV`, their quotients, derivations,
//! morphisms and degreewise cohomology.

mod cdga;
mod morphism;
mod poly;

pub use cdga::{apply_derivation, Cdga, CheckSummary, CochainView, Cohomology, DegreeSpace, Derivation};
pub use morphism::{is_left_inverse, CdgaMorphism, QuasiIsoReport};
pub use poly::{monomials_of_degree, mul_monomials, multiply, normalize_word, power, GeneratorSet, Monomial, Polynomial};

#[cfg(test)]
mod tests;

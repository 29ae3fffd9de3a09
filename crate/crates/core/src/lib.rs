//! Rational models of mapping spaces `F(X, Y)` and exact formality checks.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactlin`]: exact sparse linear algebra over Q.
//! * [`gca`]: free graded-commutative algebras, derivations, morphisms and
//!   degreewise cohomology.
//! * [`dgl`]: differential graded Lie algebras, free Lie algebras and the
//!   tensor model `A ⊗ L` of a mapping space.
//! * [`cefunctor`]: the Chevalley-Eilenberg cochain functor `C*`.
//! * [`mapmodel`]: Sullivan-level mapping-space models, odd-generator
//!   splittings and the reduction to odd spheres.
//! * [`formality`]: formality verdicts backed by replayable certificates.
//!
//! All arithmetic is exact. Every object carries a degree truncation and
//! every verdict states the range in which it was established.

pub mod cefunctor;
pub mod dgl;
pub mod exactlin;
pub mod formality;
pub mod gca;
pub mod mapmodel;
pub mod testkit;

pub use exactlin::{int, rat, Rational, RatMatrix, SparseVec};
pub use cefunctor::{ce_cochains, CeResult};
pub use dgl::{free_lie, Dgl, DglMorphism, FdCdgaModel, TensorModel};
pub use formality::{formality_pipeline, Certificate, CohomologyAlgebra, FormalityVerdict, Verdict};
pub use gca::{Cdga, CdgaMorphism, Derivation, GeneratorSet, Monomial, Polynomial};
pub use mapmodel::{MapSpaceProblem, SuspensionModel, YModel};

/// Marker for an algebra that is known in every degree.
pub const COMPLETE: u32 = u32::MAX;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("invalid degree {degree} for `{name}`")]
    InvalidDegree { name: String, degree: i64 },
    #[error("degree {needed} exceeds truncation {bound}")]
    TruncationOverflow { needed: u32, bound: u32 },
    #[error("inhomogeneous element: {0}")]
    Inhomogeneous(String),
    #[error("algebra is not minimal: d({0}) has a linear part")]
    NotMinimal(String),
    #[error("degree underflow: {0}")]
    DegreeUnderflow(String),
    #[error("connectivity violation: {0}")]
    Connectivity(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("certificate replay failed: {0}")]
    Replay(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// A failed structural check: which law broke, on what, and how.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub subject: String,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ViolationKind {
    Degree,
    DSquared,
    IdealNotStable,
    NotCochainMap,
    RelationNotRespected,
    Antisymmetry,
    Jacobi,
    Leibniz,
    NotLieMorphism,
    Hypothesis,
}

impl Violation {
    pub(crate) fn new(kind: ViolationKind, subject: impl Into<String>, detail: impl Into<String>) -> Self {
        Violation { kind, subject: subject.into(), detail: detail.into() }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} violation at {}: {}", self.kind, self.subject, self.detail)
    }
}

/// `(-1)^(a*b)` as an integer sign.
pub(crate) fn koszul_sign(a: i64, b: i64) -> i64 {
    if (a * b).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn shift_down(bound: u32, by: u32) -> u32 {
    if bound == COMPLETE {
        COMPLETE
    } else {
        bound.saturating_sub(by)
    }
}

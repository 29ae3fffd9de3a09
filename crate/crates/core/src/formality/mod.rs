//! Formality verdicts backed by replayable certificates.

mod bigraded;
mod certificate;
mod cohomology;
mod koszul;
mod pipeline;

pub use bigraded::{
    bar_obstruction, barred_bigraded_model, bigraded_model, lemma36_evidence, lemma36_scan, BarData, BarObstruction,
    BigradedModel, Lemma36Entry, Lemma36Status,
};
pub use certificate::{transfer_formality, AlgebraText, Certificate, FormalityVerdict, QuasiIsoData, Verdict};
pub use cohomology::CohomologyAlgebra;
pub use koszul::{
    free_cohomology_certificate, free_cohomology_check, koszul_formality, koszul_sequence, regular_sequence_check,
    RegularSequence,
};
pub use pipeline::formality_pipeline;

#[cfg(test)]
mod tests;

//! End-to-end formality decision for a mapping-space problem.

use super::bigraded::{bar_obstruction, barred_bigraded_model, bigraded_model, lemma36_evidence};
use super::certificate::{FormalityVerdict, Verdict};
use super::cohomology::CohomologyAlgebra;
use super::koszul::{free_cohomology_certificate, koszul_formality};
use crate::mapmodel::{check_hypotheses, map_model, MapSpaceProblem};
use crate::{Error, Result, COMPLETE};

/// Builds the model of `F(X, Y)` and runs every applicable checker through
/// degree `n`: free cohomology, Koszul, and for spheres the barred bigraded
/// model of `H*(Y)` with the bar-linearity obstruction and the power scan.
/// A structural non-formality certificate outranks a truncated formality
/// certificate; getting both is an error.
pub fn formality_pipeline(prob: &MapSpaceProblem, n: u32) -> Result<FormalityVerdict> {
    let hyp = check_hypotheses(prob);
    if !hyp.is_ok() {
        let msgs: Vec<String> = hyp.violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::Invalid(msgs.join("; ")));
    }
    let model = map_model(prob, None)?;
    let m = model.cdga();
    let mut notes: Vec<String> = hyp.warnings.clone();
    let mut formal: Vec<FormalityVerdict> = Vec::new();

    let reach = if m.truncation() == COMPLETE { n } else { n.min(m.truncation().saturating_sub(1)) };
    if reach < n {
        notes.push(format!("model is only known through degree {}; checks stop at {reach}", m.truncation()));
    }
    if reach > m.gens().max_degree() {
        let h = CohomologyAlgebra::of_cdga(m, reach)?;
        if let Some(cert) = free_cohomology_certificate(m, &h, reach) {
            formal.push(FormalityVerdict::formal(reach, cert));
        } else {
            notes.push(format!("cohomology is not free through degree {reach}"));
        }
    } else {
        notes.push(format!("bound {reach} does not reach past every generator; free-cohomology check skipped"));
    }
    let koszul = koszul_formality(m, reach)?;
    match koszul.verdict {
        Verdict::Formal => formal.push(koszul),
        _ => notes.extend(koszul.notes),
    }

    let mut non_formal = None;
    let mut evidence = Vec::new();
    if prob.x_is_sphere() {
        match barred_route(prob, n)? {
            Barred::Done { verdict, lemma, note } => {
                non_formal = verdict;
                evidence.extend(lemma);
                notes.extend(note);
            }
            Barred::Skipped(why) => notes.push(why),
        }
    }

    let mut out = match (non_formal, formal.into_iter().next()) {
        (Some(_), Some(f)) => {
            return Err(Error::Invalid(format!(
                "conflicting verdicts: {} certificate and a non-formality obstruction",
                f.certificate_kind().unwrap_or("?")
            )));
        }
        (Some(nf), None) => nf,
        (None, Some(f)) => f,
        (None, None) => FormalityVerdict::unknown(reach, ""),
    };
    out.evidence = evidence;
    out.notes = notes;
    Ok(out)
}

enum Barred {
    Done { verdict: Option<FormalityVerdict>, lemma: Option<super::certificate::Certificate>, note: Option<String> },
    Skipped(String),
}

fn barred_route(prob: &MapSpaceProblem, n: u32) -> Result<Barred> {
    let p = prob.p;
    let y = prob.y.sullivan()?;
    // The barred model through n needs the bigraded model through n + p,
    // which needs H*(Y) through n + p + 2.
    let need = n + p + 2;
    if y.truncation() != COMPLETE && y.truncation() < need + 1 {
        return Ok(Barred::Skipped(format!(
            "Y's model is only known through degree {}; the barred bigraded model needs {}",
            y.truncation(),
            need + 1
        )));
    }
    let hy = CohomologyAlgebra::of_cdga(&y, need)?;
    let b = bigraded_model(&hy, n + p)?;
    let barred = match barred_bigraded_model(&b, p) {
        Ok(m) => m,
        Err(e @ Error::DegreeUnderflow(_)) => return Ok(Barred::Skipped(e.to_string())),
        Err(e) => return Err(e),
    };
    let verdict = bar_obstruction(&barred)?;
    let note = if verdict.is_none() {
        match super::bigraded::bar_obstruction_of(&barred) {
            super::bigraded::BarObstruction::Absent(why) => Some(format!("bar-linearity obstruction: {why}")),
            _ => None,
        }
    } else {
        None
    };
    Ok(Barred::Done { verdict, lemma: lemma36_evidence(&barred, n)?, note })
}

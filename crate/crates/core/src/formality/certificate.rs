//! Verdicts and their self-contained, replayable certificates.

use serde::{Deserialize, Serialize};

use super::bigraded::{bar_obstruction_of, lemma36_scan, BarData, BarObstruction, BigradedModel, Lemma36Status};
use super::cohomology::CohomologyAlgebra;
use super::koszul::{regular_sequence_check, RegularSequence};
use crate::gca::{is_left_inverse, Cdga, CdgaMorphism, GeneratorSet, Polynomial};
use crate::{Error, Result, COMPLETE};

/// Text form of an algebra: enough to rebuild it exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraText {
    pub generators: Vec<(String, u32)>,
    pub differentials: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
    /// `None` for an algebra known in every degree.
    pub truncation: Option<u32>,
}

impl AlgebraText {
    pub fn of(a: &Cdga) -> Self {
        let g = a.gens();
        AlgebraText {
            generators: (0..g.len()).map(|i| (g.name(i).to_string(), g.degree(i))).collect(),
            differentials: a.differentials().iter().map(|p| p.fmt_with(g)).collect(),
            relations: a.relations().iter().map(|p| p.fmt_with(g)).collect(),
            truncation: (a.truncation() != COMPLETE).then_some(a.truncation()),
        }
    }

    pub fn build(&self) -> Result<Cdga> {
        let gens = GeneratorSet::new(self.generators.iter().cloned())?;
        if self.differentials.len() != gens.len() {
            return Err(Error::DimensionMismatch { expected: gens.len(), found: self.differentials.len() });
        }
        let d = parse_all(&gens, &self.differentials)?;
        let rel = parse_all(&gens, &self.relations)?;
        Cdga::new(gens, d, rel, self.truncation.unwrap_or(COMPLETE))
    }
}

fn parse_all(gens: &GeneratorSet, texts: &[String]) -> Result<Vec<Polynomial>> {
    texts.iter().map(|t| Polynomial::parse(gens, t)).collect()
}

fn images_text(f: &CdgaMorphism) -> Vec<String> {
    f.images().iter().map(|p| p.fmt_with(f.target().gens())).collect()
}

fn morphism_from(source: &Cdga, target: &Cdga, images: &[String]) -> Result<CdgaMorphism> {
    CdgaMorphism::new(source.clone(), target.clone(), parse_all(target.gens(), images)?)
}

/// `ρ: model → target` with zero differential on the target, a
/// quasi-isomorphism through `upto`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiIsoData {
    pub model: AlgebraText,
    pub target: AlgebraText,
    pub images: Vec<String>,
    pub upto: u32,
}

impl QuasiIsoData {
    pub fn of(rho: &CdgaMorphism, upto: u32) -> Self {
        QuasiIsoData {
            model: AlgebraText::of(rho.source()),
            target: AlgebraText::of(rho.target()),
            images: images_text(rho),
            upto,
        }
    }

    pub fn morphism(&self) -> Result<CdgaMorphism> {
        morphism_from(&self.model.build()?, &self.target.build()?, &self.images)
    }

    fn replay(&self) -> Result<()> {
        let rho = self.morphism()?;
        if !rho.target().has_zero_differential() {
            return Err(Error::Replay("quasi-isomorphism target has a nonzero differential".into()));
        }
        rho.check().map_err(|v| Error::Replay(v.to_string()))?;
        let rep = rho.quasi_iso_report(self.upto)?;
        if let Some(n) = rep.first_failure() {
            return Err(Error::Replay(format!("not a quasi-isomorphism in degree {n}")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    /// Cohomology is free on `generators`; when a model is recorded, the
    /// map `(Λ generators, 0) → model` sending each generator to its
    /// representative is a quasi-isomorphism through `upto`.
    FreeCohomology {
        generators: Vec<(String, u32)>,
        cohomology: AlgebraText,
        model: Option<AlgebraText>,
        representatives: Option<Vec<String>>,
        upto: u32,
    },
    /// Pure model whose odd differentials form a regular sequence in the
    /// even generators; `rho` kills the non-closed odd generators.
    KoszulRegularSequence { ring: Vec<String>, sequence: Vec<String>, rho: QuasiIsoData },
    ExplicitQuasiIso { rho: QuasiIsoData },
    /// `g ∘ f = Id` with `f: a → b`, `b` formal by `inner`.
    Transfer {
        a: AlgebraText,
        b: AlgebraText,
        f: Vec<String>,
        g: Vec<String>,
        inner: Box<Certificate>,
    },
    /// Bar-linear differential on a barred bigraded model with an even
    /// barred generator of positive lower degree.
    BarLinearityObstruction {
        model: AlgebraText,
        lower: Vec<u32>,
        p: u32,
        base: usize,
        /// The unbarred model the barred one is built from.
        unbarred: AlgebraText,
        witness: String,
    },
    /// Lemma-style scan found no `w'` with `dw' = w^n + Ω` for the listed
    /// even elements through `upto`. Evidence, not proof.
    Lemma36Missing { model: AlgebraText, lower: Vec<u32>, missing: Vec<String>, upto: u32 },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::FreeCohomology { .. } => "FreeCohomology",
            Certificate::KoszulRegularSequence { .. } => "KoszulRegularSequence",
            Certificate::ExplicitQuasiIso { .. } => "ExplicitQuasiIso",
            Certificate::Transfer { .. } => "Transfer",
            Certificate::BarLinearityObstruction { .. } => "BarLinearityObstruction",
            Certificate::Lemma36Missing { .. } => "Lemma36Missing",
        }
    }

    /// The algebra the certificate is about, when it records one.
    pub fn model(&self) -> Option<&AlgebraText> {
        match self {
            Certificate::FreeCohomology { model, .. } => model.as_ref(),
            Certificate::KoszulRegularSequence { rho, .. } | Certificate::ExplicitQuasiIso { rho } => Some(&rho.model),
            Certificate::Transfer { a, .. } => Some(a),
            Certificate::BarLinearityObstruction { model, .. } | Certificate::Lemma36Missing { model, .. } => {
                Some(model)
            }
        }
    }

    /// Re-verifies the certificate from its recorded data alone.
    pub fn replay(&self) -> Result<()> {
        match self {
            Certificate::FreeCohomology { generators, cohomology, model, representatives, upto } => {
                replay_free(generators, cohomology, model.as_ref(), representatives.as_deref(), *upto)
            }
            Certificate::KoszulRegularSequence { ring, sequence, rho } => {
                let model = rho.model.build()?;
                let mut gens = GeneratorSet::default();
                for name in ring {
                    let g = model.gens().lookup(name)?;
                    gens.push(name.clone(), model.gens().degree(g))?;
                }
                let f = parse_all(&gens, sequence)?;
                match super::koszul::koszul_sequence(&model) {
                    Some((r, seq)) if r == gens && seq == f => {}
                    _ => return Err(Error::Replay("sequence is not the differential of the model".into())),
                }
                match regular_sequence_check(&gens, &f, rho.upto)? {
                    RegularSequence::Yes { .. } => {}
                    RegularSequence::No { index, .. } => {
                        return Err(Error::Replay(format!("element {index} of the sequence is a zero divisor")));
                    }
                }
                rho.replay()
            }
            Certificate::ExplicitQuasiIso { rho } => rho.replay(),
            Certificate::Transfer { a, b, f, g, inner } => {
                let (a, b) = (a.build()?, b.build()?);
                let f = morphism_from(&a, &b, f)?;
                let g = morphism_from(&b, &a, g)?;
                if inner.model().map(|m| m.build()).transpose()?.as_ref() != Some(&b) {
                    return Err(Error::Replay("inner certificate is about a different algebra".into()));
                }
                check_transfer(&f, &g)?;
                inner.replay()
            }
            Certificate::BarLinearityObstruction { model, lower, p, base, unbarred, witness } => {
                let cdga = model.build()?;
                let unbarred = unbarred.build()?;
                let rebuilt = crate::mapmodel::suspension_model(&unbarred, *p)?;
                if rebuilt.cdga.gens() != cdga.gens() || rebuilt.cdga.differentials() != cdga.differentials() {
                    return Err(Error::Replay("model is not the barred model of the recorded algebra".into()));
                }
                let b = BigradedModel::structural(cdga, lower.clone(), Some(BarData { p: *p, base: *base }))?;
                match bar_obstruction_of(&b) {
                    BarObstruction::Obstructed { witness: w, .. } if w == *witness => Ok(()),
                    BarObstruction::Obstructed { witness: w, .. } => {
                        Err(Error::Replay(format!("witness differs: found {w}, recorded {witness}")))
                    }
                    BarObstruction::Absent(why) => Err(Error::Replay(why)),
                }
            }
            Certificate::Lemma36Missing { model, lower, missing, upto } => {
                let b = BigradedModel::structural(model.build()?, lower.clone(), None)?;
                let scan = lemma36_scan(&b, *upto)?;
                for name in missing {
                    let entry = scan
                        .iter()
                        .find(|e| &e.w == name)
                        .ok_or_else(|| Error::Replay(format!("{name} is not scanned")))?;
                    if entry.status != Lemma36Status::Missing {
                        return Err(Error::Replay(format!("{name} has a witness")));
                    }
                }
                Ok(())
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn replay_free(
    generators: &[(String, u32)],
    cohomology: &AlgebraText,
    model: Option<&AlgebraText>,
    representatives: Option<&[String]>,
    upto: u32,
) -> Result<()> {
    let h = CohomologyAlgebra::from_algebra(cohomology.build()?)?;
    let listed: Vec<(String, u32)> =
        (0..h.gens().len()).map(|i| (h.gens().name(i).to_string(), h.gens().degree(i))).collect();
    if listed != generators {
        return Err(Error::Replay("generator list differs from the cohomology presentation".into()));
    }
    if super::koszul::free_cohomology_check(&h, upto).is_none() {
        return Err(Error::Replay("cohomology is not free through the bound".into()));
    }
    match (model, representatives) {
        (Some(m), Some(reps)) => {
            let m = m.build()?;
            let w = Cdga::free(h.gens().clone(), COMPLETE);
            let psi = morphism_from(&w, &m, reps)?;
            psi.check().map_err(|v| Error::Replay(v.to_string()))?;
            if let Some(n) = psi.quasi_iso_report(upto)?.first_failure() {
                return Err(Error::Replay(format!("representatives fail in degree {n}")));
            }
            Ok(())
        }
        (None, None) => Ok(()),
        _ => Err(Error::Replay("model and representatives must be recorded together".into())),
    }
}

/// Checks the hypotheses of formality transfer along a retraction.
pub(crate) fn check_transfer(f: &CdgaMorphism, g: &CdgaMorphism) -> Result<()> {
    if f.target() != g.source() || g.target() != f.source() {
        return Err(Error::Invalid("f and g are not composable both ways".into()));
    }
    f.check().map_err(|v| Error::Invalid(v.to_string()))?;
    g.check().map_err(|v| Error::Invalid(v.to_string()))?;
    if f.source().cohomology(1)?.rank != 0 {
        return Err(Error::Invalid("H^1(A) != 0".into()));
    }
    if !is_left_inverse(g, f)? {
        return Err(Error::Invalid("g ∘ f != Id".into()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Formal,
    NonFormal,
    Unknown,
}

impl Verdict {
    /// Process exit code used by the command line front end.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Formal => 0,
            Verdict::Unknown => 2,
            Verdict::NonFormal => 3,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Formal => "Formal",
            Verdict::NonFormal => "NonFormal",
            Verdict::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalityVerdict {
    pub verdict: Verdict,
    /// Degree bound of the verdict; `None` for degree-independent ones.
    pub bound: Option<u32>,
    pub certificate: Option<Certificate>,
    /// Supporting data that does not decide the verdict on its own.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub evidence: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl FormalityVerdict {
    pub fn formal(bound: u32, certificate: Certificate) -> Self {
        FormalityVerdict {
            verdict: Verdict::Formal,
            bound: Some(bound),
            certificate: Some(certificate),
            evidence: vec![],
            notes: vec![],
        }
    }

    pub fn non_formal(certificate: Certificate) -> Self {
        FormalityVerdict {
            verdict: Verdict::NonFormal,
            bound: None,
            certificate: Some(certificate),
            evidence: vec![],
            notes: vec![],
        }
    }

    pub fn unknown(bound: u32, note: impl Into<String>) -> Self {
        FormalityVerdict {
            verdict: Verdict::Unknown,
            bound: Some(bound),
            certificate: None,
            evidence: vec![],
            notes: vec![note.into()],
        }
    }

    pub fn certificate_kind(&self) -> Option<&'static str> {
        self.certificate.as_ref().map(Certificate::kind)
    }

    /// Replays the certificate and all evidence.
    pub fn replay(&self) -> Result<()> {
        if self.verdict != Verdict::Unknown && self.certificate.is_none() {
            return Err(Error::Replay(format!("{} verdict without certificate", self.verdict)));
        }
        for c in self.certificate.iter().chain(&self.evidence) {
            c.replay()?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdicts serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Formality of `A` from a retraction `g ∘ f = Id_A` through a formal `B`.
pub fn transfer_formality(f: &CdgaMorphism, g: &CdgaMorphism, cert_b: &FormalityVerdict) -> Result<FormalityVerdict> {
    check_transfer(f, g)?;
    let inner = match (&cert_b.verdict, &cert_b.certificate) {
        (Verdict::Formal, Some(c)) => c,
        _ => return Err(Error::Invalid("B is not certified formal".into())),
    };
    if inner.model().map(|m| m.build()).transpose()?.as_ref() != Some(f.target()) {
        return Err(Error::Invalid("certificate of B is about a different algebra".into()));
    }
    inner.replay()?;
    let cert = Certificate::Transfer {
        a: AlgebraText::of(f.source()),
        b: AlgebraText::of(f.target()),
        f: images_text(f),
        g: images_text(g),
        inner: Box::new(inner.clone()),
    };
    Ok(FormalityVerdict { bound: cert_b.bound, ..FormalityVerdict::formal(0, cert) })
}

use num::Zero;

use super::cdga::{Cdga, CochainView};
use super::poly::{multiply, Polynomial};
use crate::exactlin::{RatMatrix, SparseVec};
use crate::{Error, Result, Violation, ViolationKind, COMPLETE};

/// A morphism of graded-commutative algebras, determined by the images of
/// the source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdgaMorphism {
    source: Cdga,
    target: Cdga,
    images: Vec<Polynomial>,
}

/// Result of comparing cohomology through a morphism, degree by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsoReport {
    pub upto: u32,
    pub source_ranks: Vec<usize>,
    pub target_ranks: Vec<usize>,
    pub induced_ranks: Vec<usize>,
}

impl QuasiIsoReport {
    pub fn is_quasi_iso(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<u32> {
        (0..self.source_ranks.len()).find_map(|n| {
            let ok = self.source_ranks[n] == self.target_ranks[n] && self.induced_ranks[n] == self.source_ranks[n];
            (!ok).then_some(n as u32)
        })
    }
}

impl CdgaMorphism {
    pub fn new(source: Cdga, target: Cdga, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.gens().len() {
            return Err(Error::DimensionMismatch { expected: source.gens().len(), found: images.len() });
        }
        for (i, img) in images.iter().enumerate() {
            if img.max_generator().is_some_and(|g| g >= target.gens().len()) {
                return Err(Error::Invalid(format!("image of {} uses a missing generator", source.gens().name(i))));
            }
            match img.degree(target.gens())? {
                Some(d) if d != source.gens().degree(i) => {
                    return Err(Error::InvalidDegree { name: source.gens().name(i).to_string(), degree: d.into() });
                }
                _ => {}
            }
        }
        Ok(CdgaMorphism { source, target, images })
    }

    /// Builds a morphism from `(generator, image)` strings; unlisted
    /// generators go to zero.
    pub fn from_text(source: &Cdga, target: &Cdga, images: &[(&str, &str)]) -> Result<Self> {
        let mut imgs = vec![Polynomial::zero(); source.gens().len()];
        for &(g, img) in images {
            imgs[source.gens().lookup(g)?] = Polynomial::parse(target.gens(), img)?;
        }
        CdgaMorphism::new(source.clone(), target.clone(), imgs)
    }

    pub fn identity(alg: &Cdga) -> Self {
        let images = (0..alg.gens().len()).map(Polynomial::generator).collect();
        CdgaMorphism { source: alg.clone(), target: alg.clone(), images }
    }

    pub fn source(&self) -> &Cdga {
        &self.source
    }

    pub fn target(&self) -> &Cdga {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Polynomial {
        &self.images[i]
    }

    /// Image of an arbitrary polynomial, reduced modulo the target relations.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        let gens = self.target.gens();
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            let mut acc = Polynomial::one();
            for g in m.word() {
                acc = multiply(gens, &acc, &self.images[g]);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(c, &acc);
        }
        self.target.normal_form(&out)
    }

    /// `self ∘ first`.
    pub fn compose_after(&self, first: &CdgaMorphism) -> Result<CdgaMorphism> {
        if first.target.gens() != self.source.gens() {
            return Err(Error::Invalid("composition of non-matching morphisms".into()));
        }
        let images = first.images.iter().map(|p| self.apply(p)).collect::<Result<Vec<_>>>()?;
        CdgaMorphism::new(first.source.clone(), self.target.clone(), images)
    }

    /// Checks `φ d = d φ` on generators and that relations map to zero,
    /// within both truncations.
    pub fn check(&self) -> std::result::Result<(), Violation> {
        let bound = self.source.truncation().min(self.target.truncation());
        let sg = self.source.gens();
        for r in self.source.relations() {
            let img = self
                .apply(r)
                .map_err(|e| Violation::new(ViolationKind::RelationNotRespected, r.fmt_with(sg), e.to_string()))?;
            if !img.is_zero() {
                return Err(Violation::new(
                    ViolationKind::RelationNotRespected,
                    r.fmt_with(sg),
                    format!("maps to {}", img.fmt_with(self.target.gens())),
                ));
            }
        }
        for i in 0..sg.len() {
            if bound != COMPLETE && sg.degree(i) + 1 > bound {
                continue;
            }
            let err = |e: Error| Violation::new(ViolationKind::NotCochainMap, sg.name(i), e.to_string());
            let lhs = self.apply(self.source.differential(i)).map_err(err)?;
            let rhs = self.target.apply_d(&self.images[i]).map_err(err)?;
            let rhs = self.target.normal_form(&rhs).map_err(err)?;
            let diff = lhs.sub(&rhs);
            if !diff.is_zero() {
                return Err(Violation::new(
                    ViolationKind::NotCochainMap,
                    sg.name(i),
                    format!("φ(d{0}) - d(φ{0}) = {1}", sg.name(i), diff.fmt_with(self.target.gens())),
                ));
            }
        }
        Ok(())
    }

    /// Matrix of `H^n(φ)` in the representative bases of both sides.
    pub fn induced_map(&self, n: u32) -> Result<RatMatrix> {
        let hs = self.source.cohomology(n)?;
        let ht = self.target.cohomology(n)?;
        induced_matrix(self, &hs.representatives, &ht)
    }

    /// Compares `H^k` for `k ≤ upto`.
    pub fn quasi_iso_report(&self, upto: u32) -> Result<QuasiIsoReport> {
        let sv = CochainView::new(&self.source);
        let tv = CochainView::new(&self.target);
        let mut rep = QuasiIsoReport { upto, source_ranks: vec![], target_ranks: vec![], induced_ranks: vec![] };
        for n in 0..=upto {
            let hs = sv.cohomology(n)?;
            let ht = tv.cohomology(n)?;
            let m = induced_matrix(self, &hs.representatives, &ht)?;
            rep.source_ranks.push(hs.rank);
            rep.target_ranks.push(ht.rank);
            rep.induced_ranks.push(m.rank());
        }
        Ok(rep)
    }

    pub fn is_quasi_iso(&self, upto: u32) -> Result<bool> {
        Ok(self.quasi_iso_report(upto)?.is_quasi_iso())
    }

    /// Checks `self(p) == q` for each listed pair, after normal forms.
    pub fn agrees_on(&self, pairs: &[(Polynomial, Polynomial)]) -> Result<bool> {
        for (p, q) in pairs {
            if !self.apply(p)?.sub(&self.target.normal_form(q)?).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn induced_matrix(f: &CdgaMorphism, reps: &[Polynomial], ht: &super::cdga::Cohomology) -> Result<RatMatrix> {
    let mut cols: Vec<SparseVec> = Vec::with_capacity(reps.len());
    for r in reps {
        let img = f.apply(r)?;
        let coords = ht.class_of(&img)?;
        cols.push(
            coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect::<SparseVec>(),
        );
    }
    Ok(RatMatrix::from_columns(ht.rank, &cols))
}

/// Is `g ∘ f` the identity on generators (after normal forms)?
pub fn is_left_inverse(g: &CdgaMorphism, f: &CdgaMorphism) -> Result<bool> {
    let comp = g.compose_after(f)?;
    for i in 0..comp.source.gens().len() {
        let id = comp.source.normal_form(&Polynomial::generator(i))?;
        if !comp.images[i].sub(&id).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

//! Finite presentations of cohomology algebras.

use num::{One, Zero};

use crate::exactlin::{Echelon, RatMatrix, Rational, SparseVec};
use crate::gca::{monomials_of_degree, power, Cdga, CochainView, GeneratorSet, Monomial, Polynomial};
use crate::{Error, Result, COMPLETE};

/// A graded-commutative algebra `Λ(generators) / (relations)` with zero
/// differential, exact through `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyAlgebra {
    algebra: Cdga,
    /// Cocycles representing the generators, when computed from a model.
    representatives: Option<Vec<Polynomial>>,
}

impl CohomologyAlgebra {
    /// A presentation that is exact through `bound` (use `COMPLETE` when the
    /// relations generate the whole ideal).
    pub fn from_presentation(gens: GeneratorSet, relations: Vec<Polynomial>, bound: u32) -> Result<Self> {
        let zero = vec![Polynomial::zero(); gens.len()];
        Self::from_algebra(Cdga::new(gens, zero, relations, bound)?)
    }

    pub fn from_text(gens: &[(&str, u32)], relations: &[&str], bound: u32) -> Result<Self> {
        Self::from_algebra(Cdga::from_text(gens, &[], relations, bound)?)
    }

    pub(crate) fn from_algebra(algebra: Cdga) -> Result<Self> {
        if !algebra.has_zero_differential() {
            return Err(Error::Invalid("a cohomology algebra has zero differential".into()));
        }
        for i in 0..algebra.gens().len() {
            if algebra.gens().degree(i) < 2 {
                return Err(Error::InvalidDegree {
                    name: algebra.gens().name(i).to_string(),
                    degree: algebra.gens().degree(i).into(),
                });
            }
        }
        Ok(CohomologyAlgebra { algebra, representatives: None })
    }

    /// Computes `H*(A)` through degree `upto` as an algebra: generators are
    /// classes not reached by products of earlier ones, relations are the
    /// new kernel elements of the product map in each degree. Generators
    /// represented by a multiple of a single generator of `A` keep its name.
    pub fn of_cdga(a: &Cdga, upto: u32) -> Result<Self> {
        let view = CochainView::new(a);
        let mut gens = GeneratorSet::default();
        let mut reps: Vec<Polynomial> = Vec::new();
        let mut relations: Vec<Polynomial> = Vec::new();
        if view.cohomology(0)?.rank != 1 {
            return Err(Error::Invalid("H^0 is not Q".into()));
        }
        for n in 1..=upto {
            let h = view.cohomology(n)?;
            let mons = monomials_of_degree(&gens, n);
            let mut cols = Vec::with_capacity(mons.len());
            for m in &mons {
                let value = evaluate(a, &reps, m);
                let coords = h.class_of(&value)?;
                cols.push(coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect::<SparseVec>());
            }
            if !mons.is_empty() {
                let current = Cdga::new(gens.clone(), vec![Polynomial::zero(); gens.len()], relations.clone(), COMPLETE)?;
                let space = current.space(n)?;
                let mut known = Echelon::new();
                for k in RatMatrix::from_columns(h.rank, &cols).kernel_basis() {
                    let mut rel = Polynomial::zero();
                    for (&j, c) in &k {
                        rel.add_term(mons[j].clone(), c.clone());
                    }
                    if known.insert(&space.coords(&rel)?) {
                        relations.push(rel);
                    }
                }
            }
            let mut image = Echelon::new();
            for c in &cols {
                image.insert(c);
            }
            let mut fresh = 0;
            for j in 0..h.rank {
                let unit = SparseVec::from([(j, Rational::one())]);
                if image.insert(&unit) {
                    fresh += 1;
                    let rep = h.representatives[j].clone();
                    let name = class_name(a, &rep, n, fresh, &gens);
                    gens.push(name, n)?;
                    reps.push(rep);
                }
            }
            if n == 1 && fresh > 0 {
                return Err(Error::Invalid("H^1 != 0".into()));
            }
        }
        let zero = vec![Polynomial::zero(); gens.len()];
        let algebra = Cdga::new(gens, zero, relations, upto)?;
        Ok(CohomologyAlgebra { algebra, representatives: Some(reps) })
    }

    pub fn algebra(&self) -> &Cdga {
        &self.algebra
    }

    pub fn gens(&self) -> &GeneratorSet {
        self.algebra.gens()
    }

    pub fn relations(&self) -> &[Polynomial] {
        self.algebra.relations()
    }

    pub fn representatives(&self) -> Option<&[Polynomial]> {
        self.representatives.as_deref()
    }

    /// Degree through which the presentation is exact.
    pub fn bound(&self) -> u32 {
        self.algebra.truncation()
    }

    pub fn rank(&self, n: u32) -> Result<usize> {
        self.algebra.dim(n)
    }

    pub fn ranks(&self, upto: u32) -> Result<Vec<usize>> {
        (0..=upto).map(|n| self.rank(n)).collect()
    }

    /// Relations of degree at most `n`.
    pub fn relations_through(&self, n: u32) -> Vec<&Polynomial> {
        self.relations()
            .iter()
            .filter(|r| r.degree(self.gens()).ok().flatten().is_some_and(|d| d <= n))
            .collect()
    }
}

fn evaluate(a: &Cdga, reps: &[Polynomial], m: &Monomial) -> Polynomial {
    let mut value = Polynomial::one();
    for (g, &e) in m.exponents().iter().enumerate() {
        if e > 0 {
            value = a.multiply(&value, &power(a.gens(), &reps[g], e));
        }
    }
    value
}

fn class_name(a: &Cdga, rep: &Polynomial, n: u32, k: usize, taken: &GeneratorSet) -> String {
    let single = rep.terms().map(|(m, _)| m).collect::<Vec<_>>();
    let mut name = match single.as_slice() {
        [m] if m.word_length() == 1 && rep.coefficient(m).is_one() => m.fmt_with(a.gens()),
        _ => format!("h{n}_{k}"),
    };
    while taken.lookup(&name).is_ok() {
        name.push('\'');
    }
    name
}

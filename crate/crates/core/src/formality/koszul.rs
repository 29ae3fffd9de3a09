//! Free-cohomology and Koszul (regular sequence) formality checks.

use std::collections::HashMap;

use super::certificate::{AlgebraText, Certificate, FormalityVerdict, QuasiIsoData};
use super::cohomology::CohomologyAlgebra;
use crate::exactlin::RatMatrix;
use crate::gca::{Cdga, CdgaMorphism, DegreeSpace, GeneratorSet, Polynomial};
use crate::{Error, Result, COMPLETE};

/// Certifies that `H` is free through `n`: no relations in range and
/// degreewise ranks equal to those of the free algebra on its generators.
pub fn free_cohomology_check(h: &CohomologyAlgebra, n: u32) -> Option<Certificate> {
    if h.bound() != COMPLETE && n > h.bound() {
        return None;
    }
    if !h.relations_through(n).is_empty() {
        return None;
    }
    let free = Cdga::free(h.gens().clone(), COMPLETE);
    for k in 0..=n {
        if free.dim(k).ok()? != h.rank(k).ok()? {
            return None;
        }
    }
    let gens = h.gens();
    Some(Certificate::FreeCohomology {
        generators: (0..gens.len()).map(|i| (gens.name(i).to_string(), gens.degree(i))).collect(),
        cohomology: AlgebraText::of(h.algebra()),
        model: None,
        representatives: None,
        upto: n,
    })
}

/// [`free_cohomology_check`] on `H*(A)`, recording `A` and the generator
/// representatives so the certificate proves formality of `A` itself.
pub fn free_cohomology_certificate(a: &Cdga, h: &CohomologyAlgebra, n: u32) -> Option<Certificate> {
    let Certificate::FreeCohomology { generators, cohomology, upto, .. } = free_cohomology_check(h, n)? else {
        return None;
    };
    let reps = h.representatives()?;
    Some(Certificate::FreeCohomology {
        generators,
        cohomology,
        model: Some(AlgebraText::of(a)),
        representatives: Some(reps.iter().map(|r| r.fmt_with(a.gens())).collect()),
        upto,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularSequence {
    /// Every `f_i` is a nonzerodivisor modulo its predecessors in all
    /// degrees through `upto`.
    Yes { upto: u32 },
    /// `witness · f_index = 0` in `R/(f_1..f_{index-1})` in degree `degree`.
    No { index: usize, degree: u32, witness: Polynomial },
}

/// Checks regularity of `f` in the polynomial ring on the (even) `ring`
/// generators through degree `n`, by exact rank computations on the
/// monomial bases of the successive quotients.
pub fn regular_sequence_check(ring: &GeneratorSet, f: &[Polynomial], n: u32) -> Result<RegularSequence> {
    if let Some(i) = (0..ring.len()).find(|&i| ring.is_odd(i)) {
        return Err(Error::Invalid(format!("ring generator {} has odd degree", ring.name(i))));
    }
    let mut degrees = Vec::with_capacity(f.len());
    for p in f {
        if p.max_generator().is_some_and(|g| g >= ring.len()) {
            return Err(Error::Invalid("sequence element outside the ring".into()));
        }
        degrees.push(p.degree(ring)?);
    }
    for (i, p) in f.iter().enumerate() {
        let quotient = Cdga::new(ring.clone(), vec![Polynomial::zero(); ring.len()], f[..i].to_vec(), COMPLETE)?;
        let Some(fd) = degrees[i] else {
            return Ok(RegularSequence::No { index: i, degree: 0, witness: Polynomial::one() });
        };
        if fd > n {
            continue;
        }
        let mut spaces: HashMap<u32, DegreeSpace> = HashMap::new();
        for k in 0..=n - fd {
            for deg in [k, k + fd] {
                if !spaces.contains_key(&deg) {
                    spaces.insert(deg, quotient.space(deg)?);
                }
            }
            let (src, tgt) = (&spaces[&k], &spaces[&(k + fd)]);
            let mut cols = Vec::with_capacity(src.dim());
            for b in 0..src.dim() {
                cols.push(tgt.coords(&quotient.multiply(p, &src.basis_element(b)))?);
            }
            if let Some(v) = RatMatrix::from_columns(tgt.dim(), &cols).kernel_basis().first() {
                return Ok(RegularSequence::No { index: i, degree: k, witness: src.element(v) });
            }
        }
    }
    Ok(RegularSequence::Yes { upto: n })
}

/// Shape of a pure Sullivan algebra: even generators and closed odd
/// generators span the cohomology ring, the other odd generators have
/// differentials in the even ones.
struct PureShape {
    even: Vec<usize>,
    killed: Vec<usize>,
}

fn pure_shape(a: &Cdga) -> std::result::Result<PureShape, String> {
    if !a.is_free() {
        return Err("the algebra is not free".into());
    }
    let g = a.gens();
    let mut shape = PureShape { even: vec![], killed: vec![] };
    for i in 0..g.len() {
        let d = a.differential(i);
        if !g.is_odd(i) {
            if !d.is_zero() {
                return Err(format!("even generator {} is not closed", g.name(i)));
            }
            shape.even.push(i);
        } else if !d.is_zero() {
            if d.terms().any(|(m, _)| m.support().any(|j| g.is_odd(j))) {
                return Err(format!("d({}) involves an odd generator", g.name(i)));
            }
            shape.killed.push(i);
        }
    }
    Ok(shape)
}

/// Formality of a pure algebra whose odd differentials form a regular
/// sequence: `ρ` onto `Q[even] ⊗ Λ(closed odd) / (f)` is checked to be a
/// quasi-isomorphism through `n`. Anything else is `Unknown`.
pub fn koszul_formality(a: &Cdga, n: u32) -> Result<FormalityVerdict> {
    let shape = match pure_shape(a) {
        Ok(s) => s,
        Err(why) => return Ok(FormalityVerdict::unknown(n, format!("not of Koszul shape: {why}"))),
    };
    let g = a.gens();
    if n <= g.max_degree() {
        return Ok(FormalityVerdict::unknown(n, format!("bound {n} does not reach past every generator")));
    }
    let (ring, f) = ring_and_sequence(a, &shape)?;
    match regular_sequence_check(&ring, &f, n)? {
        RegularSequence::Yes { .. } => {}
        RegularSequence::No { index, degree, witness } => {
            return Ok(FormalityVerdict::unknown(
                n,
                format!(
                    "d({}) is a zero divisor: {} times it vanishes in degree {degree}",
                    g.name(shape.killed[index]),
                    witness.fmt_with(&ring)
                ),
            ));
        }
    }
    let mut hgens = GeneratorSet::default();
    let mut to_h = vec![usize::MAX; g.len()];
    for i in 0..g.len() {
        if !shape.killed.contains(&i) {
            to_h[i] = hgens.push(g.name(i), g.degree(i))?;
        }
    }
    let relations: Vec<Polynomial> = shape.killed.iter().map(|&i| a.differential(i).reindex(&to_h)).collect();
    let zero = vec![Polynomial::zero(); hgens.len()];
    let h = Cdga::new(hgens, zero, relations, COMPLETE)?;
    let images = (0..g.len())
        .map(|i| if to_h[i] == usize::MAX { Polynomial::zero() } else { Polynomial::generator(to_h[i]) })
        .collect();
    let rho = CdgaMorphism::new(a.clone(), h, images)?;
    rho.check().map_err(|v| Error::Invalid(format!("ρ is not a cochain map: {v}")))?;
    let report = rho.quasi_iso_report(n)?;
    if let Some(k) = report.first_failure() {
        return Ok(FormalityVerdict::unknown(n, format!("ρ fails to be a quasi-isomorphism in degree {k}")));
    }
    let cert = Certificate::KoszulRegularSequence {
        ring: ring.names().to_vec(),
        sequence: shape.killed.iter().map(|&i| a.differential(i).fmt_with(g)).collect(),
        rho: QuasiIsoData::of(&rho, n),
    };
    Ok(FormalityVerdict::formal(n, cert))
}

/// The even generators and killed odd generators of a pure algebra, with
/// the sequence of their differentials; `None` when the shape does not fit.
pub fn koszul_sequence(a: &Cdga) -> Option<(GeneratorSet, Vec<Polynomial>)> {
    ring_and_sequence(a, &pure_shape(a).ok()?).ok()
}

fn ring_and_sequence(a: &Cdga, shape: &PureShape) -> Result<(GeneratorSet, Vec<Polynomial>)> {
    let g = a.gens();
    let mut ring = GeneratorSet::default();
    let mut to_ring = vec![usize::MAX; g.len()];
    for &i in &shape.even {
        to_ring[i] = ring.push(g.name(i), g.degree(i))?;
    }
    Ok((ring, shape.killed.iter().map(|&i| a.differential(i).reindex(&to_ring)).collect()))
}

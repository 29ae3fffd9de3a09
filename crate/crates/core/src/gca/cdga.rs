use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num::{One, Zero};

use super::poly::{monomials_of_degree, mul_monomials, GeneratorSet, Monomial, Polynomial};
use crate::exactlin::{Echelon, RatMatrix, Rational, SparseVec};
use crate::{Error, Result, Violation, ViolationKind, COMPLETE};

/// A derivation of a free graded-commutative algebra, determined by its
/// values on generators: `D(uv) = D(u)v + (-1)^(|D||u|) u D(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub degree: i32,
    pub images: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(degree: i32, images: Vec<Polynomial>) -> Self {
        Derivation { degree, images }
    }

    pub fn image(&self, i: usize) -> Polynomial {
        self.images.get(i).cloned().unwrap_or_default()
    }
}

fn mul_poly_mono(gens: &GeneratorSet, p: &Polynomial, m: &Monomial, out: &mut Polynomial, scale: &Rational) {
    for (a, x) in p.terms() {
        if let Some((s, prod)) = mul_monomials(gens, a, m) {
            let c = x * scale;
            out.add_term(prod, if s < 0 { -c } else { c });
        }
    }
}

fn mul_mono_poly(gens: &GeneratorSet, m: &Monomial, p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    for (b, x) in p.terms() {
        if let Some((s, prod)) = mul_monomials(gens, m, b) {
            out.add_term(prod, if s < 0 { -x.clone() } else { x.clone() });
        }
    }
    out
}

/// Applies a derivation by the graded Leibniz rule. Pure polynomial
/// algebra: no truncation checks happen here.
pub fn apply_derivation(gens: &GeneratorSet, der: &Derivation, p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    let odd_der = der.degree.rem_euclid(2) == 1;
    for (m, c) in p.terms() {
        let e = m.exponents();
        let mut prefix_deg: u64 = 0;
        for i in 0..e.len() {
            if e[i] == 0 {
                continue;
            }
            let image = der.image(i);
            if !image.is_zero() {
                let mut prefix = e[..i].to_vec();
                prefix.resize(i, 0);
                let prefix = Monomial::from_exponents(prefix);
                let mut rest = vec![0u32; e.len()];
                rest[i] = e[i] - 1;
                rest[i + 1..].copy_from_slice(&e[i + 1..]);
                let rest = Monomial::from_exponents(rest);
                let mut coeff = c * Rational::from_integer(e[i].into());
                if odd_der && prefix_deg % 2 == 1 {
                    coeff = -coeff;
                }
                let left = mul_mono_poly(gens, &prefix, &image);
                mul_poly_mono(gens, &left, &rest, &mut out, &coeff);
            }
            prefix_deg += u64::from(e[i]) * u64::from(gens.degree(i));
        }
    }
    out
}

/// A graded-commutative algebra `ΛV / I` with a differential of degree +1
/// given on generators. `I` is generated by `relations` and is empty for
/// Sullivan algebras; quotients show up as cohomology algebras `(H, 0)` and
/// finite-dimensional models.
///
/// `truncation = N` means every generator of degree at most `N` is present;
/// generators above `N` may also be carried along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cdga {
    gens: GeneratorSet,
    d: Vec<Polynomial>,
    relations: Vec<Polynomial>,
    truncation: u32,
}

/// Successful structural check; counts what could be checked inside the
/// truncation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CheckSummary {
    pub checked: usize,
    pub beyond_truncation: usize,
}

impl Cdga {
    pub fn new(gens: GeneratorSet, d: Vec<Polynomial>, relations: Vec<Polynomial>, truncation: u32) -> Result<Self> {
        if d.len() != gens.len() {
            return Err(Error::DimensionMismatch { expected: gens.len(), found: d.len() });
        }
        for p in d.iter().chain(relations.iter()) {
            if p.max_generator().is_some_and(|g| g >= gens.len()) {
                return Err(Error::Invalid("polynomial refers to a missing generator".into()));
            }
            p.degree(&gens)?;
        }
        Ok(Cdga { gens, d, relations, truncation })
    }

    /// Free algebra with zero differential.
    pub fn free(gens: GeneratorSet, truncation: u32) -> Self {
        let n = gens.len();
        Cdga { gens, d: vec![Polynomial::zero(); n], relations: Vec::new(), truncation }
    }

    /// Convenience constructor from textual data, e.g.
    /// `Cdga::from_text(&[("x1", 4), ("x2", 4), ("y", 7)], &[("y", "x1*x2")], &[], COMPLETE)`.
    pub fn from_text(gens: &[(&str, u32)], diffs: &[(&str, &str)], relations: &[&str], truncation: u32) -> Result<Self> {
        let set = GeneratorSet::new(gens.iter().map(|&(n, d)| (n.to_string(), d)))?;
        let mut d = vec![Polynomial::zero(); set.len()];
        for &(g, img) in diffs {
            d[set.lookup(g)?] = Polynomial::parse(&set, img)?;
        }
        let rel = relations.iter().map(|r| Polynomial::parse(&set, r)).collect::<Result<Vec<_>>>()?;
        Cdga::new(set, d, rel, truncation)
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn differential(&self, i: usize) -> &Polynomial {
        &self.d[i]
    }

    pub fn differentials(&self) -> &[Polynomial] {
        &self.d
    }

    pub fn derivation(&self) -> Derivation {
        Derivation::new(1, self.d.clone())
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn with_truncation(mut self, n: u32) -> Self {
        self.truncation = n;
        self
    }

    pub fn has_zero_differential(&self) -> bool {
        self.d.iter().all(|p| p.is_zero())
    }

    /// `dV ⊂ Λ^{≥2} V`.
    pub fn is_minimal(&self) -> bool {
        self.d.iter().all(|p| p.min_word_length().map_or(true, |w| w >= 2))
    }

    fn ensure_within(&self, n: u32) -> Result<()> {
        if self.truncation != COMPLETE && n > self.truncation {
            return Err(Error::TruncationOverflow { needed: n, bound: self.truncation });
        }
        Ok(())
    }

    /// Applies `d`, refusing results beyond the truncation.
    pub fn apply_d(&self, p: &Polynomial) -> Result<Polynomial> {
        if let Some(deg) = p.degree(&self.gens)? {
            self.ensure_within(deg + 1)?;
        }
        Ok(apply_derivation(&self.gens, &self.derivation(), p))
    }

    /// Applies an arbitrary derivation of this algebra, with the same
    /// truncation contract as [`Cdga::apply_d`].
    pub fn apply(&self, der: &Derivation, p: &Polynomial) -> Result<Polynomial> {
        if let Some(deg) = p.degree(&self.gens)? {
            let out = i64::from(deg) + i64::from(der.degree);
            if out >= 0 {
                self.ensure_within(out as u32)?;
            }
        }
        Ok(apply_derivation(&self.gens, der, p))
    }

    pub fn multiply(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        super::poly::multiply(&self.gens, p, q)
    }

    /// The degree-`n` piece with its quotient basis.
    pub fn space(&self, n: u32) -> Result<DegreeSpace> {
        self.ensure_within(n)?;
        Ok(DegreeSpace::build(self, n))
    }

    /// Basis monomials of degree `n` (for quotients: the standard monomials
    /// not reducible modulo the relations).
    pub fn degree_basis(&self, n: u32) -> Result<Vec<Monomial>> {
        Ok(self.space(n)?.basis_monomials())
    }

    /// Canonical representative of `p` modulo the relations, computed degree
    /// by degree.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if self.is_free() {
            return Ok(p.clone());
        }
        let mut parts: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in p.terms() {
            parts.entry(m.degree(&self.gens)).or_default().add_term(m.clone(), c.clone());
        }
        let mut out = Polynomial::zero();
        for (deg, part) in parts {
            let space = self.space(deg)?;
            out = out.add(&space.element(&space.coords(&part)?));
        }
        Ok(out)
    }

    /// Checks degrees, `d² = 0` on generators and `d(I) ⊂ I`, as far as the
    /// truncation allows.
    pub fn check(&self) -> std::result::Result<CheckSummary, Violation> {
        let mut summary = CheckSummary::default();
        for i in 0..self.gens.len() {
            let name = self.gens.name(i);
            let expect = self.gens.degree(i) + 1;
            match self.d[i].degree(&self.gens) {
                Err(_) => {
                    return Err(Violation::new(ViolationKind::Degree, name, "d-image is inhomogeneous"));
                }
                Ok(Some(deg)) if deg != expect => {
                    return Err(Violation::new(
                        ViolationKind::Degree,
                        name,
                        format!("|d {name}| = {deg}, expected {expect}"),
                    ));
                }
                _ => {}
            }
            // The differential of a generator of degree N may depend on data
            // above the truncation (e.g. C* of a truncated DGL with d != 0),
            // and reducing modulo relations needs degree d(d g) inside it.
            let dd = apply_derivation(&self.gens, &self.derivation(), &self.d[i]);
            let limit = if self.is_free() { expect } else { expect + 1 };
            if self.truncation != COMPLETE && limit > self.truncation {
                summary.beyond_truncation += 1;
                continue;
            }
            let dd = self.normal_form(&dd).map_err(|e| Violation::new(ViolationKind::DSquared, name, e.to_string()))?;
            if !dd.is_zero() {
                return Err(Violation::new(
                    ViolationKind::DSquared,
                    name,
                    format!("d(d {name}) = {}", dd.fmt_with(&self.gens)),
                ));
            }
            summary.checked += 1;
        }
        for r in &self.relations {
            let Ok(Some(deg)) = r.degree(&self.gens) else { continue };
            if self.truncation != COMPLETE && deg + 1 > self.truncation {
                continue;
            }
            let dr = apply_derivation(&self.gens, &self.derivation(), r);
            let nf = self.normal_form(&dr).map_err(|e| Violation::new(ViolationKind::IdealNotStable, "relation", e.to_string()))?;
            if !nf.is_zero() {
                return Err(Violation::new(
                    ViolationKind::IdealNotStable,
                    r.fmt_with(&self.gens),
                    format!("d of relation reduces to {}", nf.fmt_with(&self.gens)),
                ));
            }
        }
        Ok(summary)
    }

    /// `H^n`. Requires `n + 1 ≤ truncation`.
    pub fn cohomology(&self, n: u32) -> Result<Cohomology> {
        CochainView::new(self).cohomology(n)
    }

    /// Ranks of `H^0 .. H^upto`.
    pub fn cohomology_ranks(&self, upto: u32) -> Result<Vec<usize>> {
        let view = CochainView::new(self);
        (0..=upto).map(|n| view.cohomology(n).map(|h| h.rank)).collect()
    }

    /// Total dimension in degree `n`.
    pub fn dim(&self, n: u32) -> Result<usize> {
        Ok(self.space(n)?.dim())
    }

    /// Human-readable presentation, one generator per line.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for i in 0..self.gens.len() {
            out.push_str(&format!(
                "  {} (degree {}): d = {}\n",
                self.gens.name(i),
                self.gens.degree(i),
                self.d[i].fmt_with(&self.gens)
            ));
        }
        for r in &self.relations {
            out.push_str(&format!("  relation {}\n", r.fmt_with(&self.gens)));
        }
        out
    }
}

/// One homogeneous piece `A^n` of an algebra, with coordinates relative to
/// a basis of standard monomials.
#[derive(Clone, Debug)]
pub struct DegreeSpace {
    pub degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    ideal: Echelon,
    basis: Vec<usize>,
    basis_pos: HashMap<usize, usize>,
}

impl DegreeSpace {
    fn build(alg: &Cdga, n: u32) -> Self {
        let gens = &alg.gens;
        let monomials = monomials_of_degree(gens, n);
        let index: HashMap<Monomial, usize> =
            monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut ideal = Echelon::new();
        for r in &alg.relations {
            let Ok(Some(rd)) = r.degree(gens) else { continue };
            if rd > n {
                continue;
            }
            for m in monomials_of_degree(gens, n - rd) {
                let mut v = SparseVec::new();
                for (a, c) in r.terms() {
                    if let Some((s, prod)) = mul_monomials(gens, &m, a) {
                        let idx = index[&prod];
                        let val = if s < 0 { -c.clone() } else { c.clone() };
                        let e = v.entry(idx).or_insert_with(Rational::zero);
                        *e += val;
                        if e.is_zero() {
                            v.remove(&idx);
                        }
                    }
                }
                ideal.insert(&v);
            }
        }
        let basis: Vec<usize> = (0..monomials.len()).filter(|&i| !ideal.is_pivot(i)).collect();
        let basis_pos = basis.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        DegreeSpace { degree: n, monomials, index, ideal, basis, basis_pos }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|&i| self.monomials[i].clone()).collect()
    }

    pub fn basis_element(&self, k: usize) -> Polynomial {
        Polynomial::monomial(self.monomials[self.basis[k]].clone())
    }

    /// Coordinates of a homogeneous degree-`n` element after reduction
    /// modulo the relations.
    pub fn coords(&self, p: &Polynomial) -> Result<SparseVec> {
        let mut v = SparseVec::new();
        for (m, c) in p.terms() {
            let Some(&i) = self.index.get(m) else {
                return Err(Error::Inhomogeneous(format!("term outside degree {}", self.degree)));
            };
            v.insert(i, c.clone());
        }
        let (rem, _) = self.ideal.reduce(&v);
        Ok(rem.into_iter().map(|(i, c)| (self.basis_pos[&i], c)).collect())
    }

    pub fn element(&self, v: &SparseVec) -> Polynomial {
        let mut p = Polynomial::zero();
        for (&k, c) in v {
            p.add_term(self.monomials[self.basis[k]].clone(), c.clone());
        }
        p
    }
}

/// `H^n` with deterministic cocycle representatives.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: u32,
    pub rank: usize,
    pub representatives: Vec<Polynomial>,
    /// `dim A^n`.
    pub chain_dim: usize,
    /// `dim Z^n`.
    pub cocycle_dim: usize,
    /// `rank(d: A^n → A^{n+1})`.
    pub d_rank: usize,
    /// `rank(d: A^{n-1} → A^n)`.
    pub boundary_rank: usize,
    space: Rc<DegreeSpace>,
    reducer: Echelon,
}

impl Cohomology {
    /// Coordinates of the class of a cocycle in the representative basis.
    pub fn class_of(&self, cocycle: &Polynomial) -> Result<Vec<Rational>> {
        let v = self.space.coords(cocycle)?;
        let (rem, tags) = self.reducer.reduce(&v);
        if !rem.is_empty() {
            return Err(Error::Invalid(format!("not a cocycle in degree {}", self.degree)));
        }
        let mut out = vec![Rational::zero(); self.rank];
        for (k, c) in tags {
            out[k] = c;
        }
        Ok(out)
    }

    pub fn is_coboundary(&self, cocycle: &Polynomial) -> Result<bool> {
        Ok(self.class_of(cocycle)?.iter().all(|c| c.is_zero()))
    }
}

/// Memoised degree spaces and differential matrices of one algebra.
pub struct CochainView<'a> {
    alg: &'a Cdga,
    spaces: RefCell<HashMap<u32, Rc<DegreeSpace>>>,
    dmats: RefCell<HashMap<u32, Rc<RatMatrix>>>,
}

impl<'a> CochainView<'a> {
    pub fn new(alg: &'a Cdga) -> Self {
        CochainView { alg, spaces: RefCell::default(), dmats: RefCell::default() }
    }

    pub fn algebra(&self) -> &Cdga {
        self.alg
    }

    pub fn space(&self, n: u32) -> Result<Rc<DegreeSpace>> {
        if let Some(s) = self.spaces.borrow().get(&n) {
            return Ok(s.clone());
        }
        let s = Rc::new(self.alg.space(n)?);
        self.spaces.borrow_mut().insert(n, s.clone());
        Ok(s)
    }

    /// Matrix of `d: A^n → A^{n+1}`, columns indexed by the basis of `A^n`.
    pub fn d_matrix(&self, n: u32) -> Result<Rc<RatMatrix>> {
        if let Some(m) = self.dmats.borrow().get(&n) {
            return Ok(m.clone());
        }
        let src = self.space(n)?;
        let tgt = self.space(n + 1)?;
        let der = self.alg.derivation();
        let mut cols = Vec::with_capacity(src.dim());
        for k in 0..src.dim() {
            let img = apply_derivation(&self.alg.gens, &der, &src.basis_element(k));
            cols.push(tgt.coords(&img)?);
        }
        let m = Rc::new(RatMatrix::from_columns(tgt.dim(), &cols));
        self.dmats.borrow_mut().insert(n, m.clone());
        Ok(m)
    }

    pub fn cohomology(&self, n: u32) -> Result<Cohomology> {
        if self.alg.truncation != COMPLETE && n + 1 > self.alg.truncation {
            return Err(Error::TruncationOverflow { needed: n + 1, bound: self.alg.truncation });
        }
        let space = self.space(n)?;
        let d_out = self.d_matrix(n)?;
        let kernel = d_out.kernel_basis();
        let mut reducer = Echelon::new();
        let mut boundary_rank = 0;
        if n > 0 {
            let d_in = self.d_matrix(n - 1)?;
            for c in 0..d_in.cols() {
                if reducer.insert(&d_in.column(c)) {
                    boundary_rank += 1;
                }
            }
        }
        let mut reps = Vec::new();
        for z in &kernel {
            if reducer.insert_with_tag(z, reps.len()) {
                reps.push(space.element(z));
            }
        }
        Ok(Cohomology {
            degree: n,
            rank: reps.len(),
            representatives: reps,
            chain_dim: space.dim(),
            cocycle_dim: kernel.len(),
            d_rank: space.dim() - kernel.len(),
            boundary_rank,
            space,
            reducer,
        })
    }
}

impl Cdga {
    /// Unit constant polynomial; exists in every algebra.
    pub fn unit(&self) -> Polynomial {
        Polynomial::constant(Rational::one())
    }
}

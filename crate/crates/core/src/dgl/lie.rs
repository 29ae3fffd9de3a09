use std::collections::BTreeMap;

use num::One;

use crate::exactlin::{add_scaled, int, Rational, SparseVec};
use crate::gca::{GeneratorSet, Monomial, Polynomial};
use crate::{koszul_sign, Error, Result, Violation, ViolationKind, COMPLETE};

/// A DGL `(L, d)` with `L = ⊕_{n≥1} L_n`, presented by a named basis,
/// bracket structure constants and a degree −1 differential.
///
/// Brackets are stored one-sided: a missing `[j,i]` is derived from `[i,j]`
/// by graded antisymmetry. All basis elements have degree at most
/// `truncation`, and brackets are only meaningful when `|x| + |y| ≤
/// truncation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dgl {
    basis: GeneratorSet,
    brackets: BTreeMap<(usize, usize), SparseVec>,
    d: Vec<SparseVec>,
    truncation: u32,
}

fn sign(a: u32, b: u32) -> Rational {
    int(koszul_sign(a.into(), b.into()))
}

impl Dgl {
    pub fn new(basis: GeneratorSet, truncation: u32) -> Result<Self> {
        if truncation != COMPLETE && basis.max_degree() > truncation {
            return Err(Error::TruncationOverflow { needed: basis.max_degree(), bound: truncation });
        }
        let n = basis.len();
        Ok(Dgl { basis, brackets: BTreeMap::new(), d: vec![SparseVec::new(); n], truncation })
    }

    /// Abelian DGL with zero differential.
    pub fn abelian(basis: &[(&str, u32)], truncation: u32) -> Result<Self> {
        Dgl::new(GeneratorSet::new(basis.iter().map(|&(n, d)| (n, d)))?, truncation)
    }

    /// Builds a DGL from textual linear combinations, e.g.
    /// `Dgl::from_text(&[("a", 3), ("c", 6)], &[("a", "a", "c")], &[], 6)`.
    pub fn from_text(
        basis: &[(&str, u32)],
        brackets: &[(&str, &str, &str)],
        d: &[(&str, &str)],
        truncation: u32,
    ) -> Result<Self> {
        let mut l = Dgl::abelian(basis, truncation)?;
        for &(x, y, img) in brackets {
            let (i, j) = (l.lookup(x)?, l.lookup(y)?);
            let v = l.parse_combination(img)?;
            l.set_bracket(i, j, v);
        }
        for &(x, img) in d {
            let i = l.lookup(x)?;
            let v = l.parse_combination(img)?;
            l.set_d(i, v);
        }
        Ok(l)
    }

    /// The finite DGL `L/L_{>T}` for `T` the truncation: brackets leaving
    /// the known range are declared zero. This is a DGL only when nothing
    /// above `T` maps into degrees `≤ T`, which [`Dgl::validate`] then
    /// checks in full.
    pub fn nilpotent_quotient(mut self) -> Dgl {
        self.truncation = COMPLETE;
        self
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, v: SparseVec) {
        if v.is_empty() {
            self.brackets.remove(&(i, j));
        } else {
            self.brackets.insert((i, j), v);
        }
    }

    pub fn set_d(&mut self, i: usize, v: SparseVec) {
        self.d[i] = v;
    }

    pub fn basis(&self) -> &GeneratorSet {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.basis.degree(i)
    }

    pub fn name(&self, i: usize) -> &str {
        self.basis.name(i)
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.basis.lookup(name)
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn basis_of_degree(&self, n: u32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == n).collect()
    }

    /// Stored (one-sided) bracket table.
    pub fn bracket_entries(&self) -> impl Iterator<Item = (&(usize, usize), &SparseVec)> {
        self.brackets.iter()
    }

    pub fn d_of(&self, i: usize) -> &SparseVec {
        &self.d[i]
    }

    pub fn has_zero_differential(&self) -> bool {
        self.d.iter().all(|v| v.is_empty())
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// `[x_i, x_j]`, using the stored entry or graded antisymmetry.
    pub fn bracket(&self, i: usize, j: usize) -> SparseVec {
        if let Some(v) = self.brackets.get(&(i, j)) {
            return v.clone();
        }
        if let Some(v) = self.brackets.get(&(j, i)) {
            let s = -sign(self.degree(i), self.degree(j));
            return v.iter().map(|(&k, c)| (k, c * &s)).collect();
        }
        SparseVec::new()
    }

    pub fn bracket_vec(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in u {
            for (&j, b) in v {
                add_scaled(&mut out, &(a * b), &self.bracket(i, j));
            }
        }
        out
    }

    pub fn apply_d(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, c) in v {
            add_scaled(&mut out, c, &self.d[i]);
        }
        out
    }

    pub fn unit(&self, i: usize) -> SparseVec {
        SparseVec::from([(i, Rational::one())])
    }

    fn vec_degree_ok(&self, v: &SparseVec, expected: i64) -> bool {
        v.keys().all(|&k| i64::from(self.degree(k)) == expected)
    }

    fn within(&self, n: u32) -> bool {
        self.truncation == COMPLETE || n <= self.truncation
    }

    /// Checks degrees, graded antisymmetry, `d² = 0`, the Leibniz rule
    /// `d[x,y] = [dx,y] + (-1)^|x| [x,dy]` and graded Jacobi, for everything
    /// inside the truncation. Returns the first violation.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for i in 0..self.dim() {
            if !self.vec_degree_ok(&self.d[i], i64::from(self.degree(i)) - 1) {
                return Err(Violation::new(ViolationKind::Degree, self.name(i), "d does not have degree -1"));
            }
        }
        for (&(i, j), v) in &self.brackets {
            let deg = self.degree(i) + self.degree(j);
            if !self.within(deg) || !self.vec_degree_ok(v, deg.into()) {
                return Err(Violation::new(
                    ViolationKind::Degree,
                    self.pair_name(i, j),
                    format!("bracket is not homogeneous of degree {deg} inside the truncation"),
                ));
            }
        }
        for (&(i, j), v) in &self.brackets {
            let expected = if i == j {
                if self.degree(i) % 2 == 0 {
                    SparseVec::new()
                } else {
                    continue;
                }
            } else if let Some(w) = self.brackets.get(&(j, i)) {
                let s = -sign(self.degree(i), self.degree(j));
                w.iter().map(|(&k, c)| (k, c * &s)).collect()
            } else {
                continue;
            };
            if *v != expected {
                return Err(Violation::new(
                    ViolationKind::Antisymmetry,
                    self.pair_name(i, j),
                    "stored brackets violate [x,y] = -(-1)^(|x||y|) [y,x]",
                ));
            }
        }
        for i in 0..self.dim() {
            let dd = self.apply_d(&self.d[i]);
            if !dd.is_empty() {
                return Err(Violation::new(ViolationKind::DSquared, self.name(i), "d(d x) != 0"));
            }
        }
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let (di, dj) = (self.degree(i), self.degree(j));
                if !self.within(di + dj) {
                    continue;
                }
                let lhs = self.apply_d(&self.bracket(i, j));
                let mut rhs = self.bracket_vec(&self.d[i], &self.unit(j));
                let s = sign(di, 1);
                add_scaled(&mut rhs, &s, &self.bracket_vec(&self.unit(i), &self.d[j]));
                if lhs != rhs {
                    return Err(Violation::new(
                        ViolationKind::Leibniz,
                        self.pair_name(i, j),
                        "d[x,y] != [dx,y] + (-1)^|x| [x,dy]",
                    ));
                }
            }
        }
        for i in 0..self.dim() {
            for j in i..self.dim() {
                for k in j..self.dim() {
                    let deg = self.degree(i) + self.degree(j) + self.degree(k);
                    if !self.within(deg) {
                        continue;
                    }
                    let jac = self.jacobiator(i, j, k);
                    if !jac.is_empty() {
                        return Err(Violation::new(
                            ViolationKind::Jacobi,
                            format!("({}, {}, {})", self.name(i), self.name(j), self.name(k)),
                            "graded Jacobi sum is nonzero",
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// `(-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]]`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let (a, b, c) = (self.degree(i), self.degree(j), self.degree(k));
        let mut out = SparseVec::new();
        add_scaled(&mut out, &sign(a, c), &self.bracket_vec(&self.unit(i), &self.bracket(j, k)));
        add_scaled(&mut out, &sign(b, a), &self.bracket_vec(&self.unit(j), &self.bracket(k, i)));
        add_scaled(&mut out, &sign(c, b), &self.bracket_vec(&self.unit(k), &self.bracket(i, j)));
        out
    }

    fn pair_name(&self, i: usize, j: usize) -> String {
        format!("[{},{}]", self.name(i), self.name(j))
    }

    /// Parses `2*x - 1/3*y` over the basis names.
    pub fn parse_combination(&self, text: &str) -> Result<SparseVec> {
        let p = Polynomial::parse(&self.basis, text)?;
        let mut out = SparseVec::new();
        for (m, c) in p.terms() {
            if m.word_length() != 1 {
                return Err(Error::Parse(format!("`{text}` is not a linear combination")));
            }
            out.insert(m.word()[0], c.clone());
        }
        Ok(out)
    }

    pub fn fmt_combination(&self, v: &SparseVec) -> String {
        let mut p = Polynomial::zero();
        for (&k, c) in v {
            p.add_term(Monomial::generator(k), c.clone());
        }
        p.fmt_with(&self.basis)
    }

    /// The sub-DGL (quotient, really) of elements of degree ≤ `n`. Returns
    /// the new algebra and, for each old basis index, its new index.
    pub fn truncate(&self, n: u32) -> (Dgl, Vec<Option<usize>>) {
        let n = n.min(self.truncation);
        let mut map = vec![None; self.dim()];
        let mut basis = GeneratorSet::default();
        for i in 0..self.dim() {
            if self.degree(i) <= n {
                map[i] = Some(basis.push(self.name(i), self.degree(i)).expect("names already unique"));
            }
        }
        let re = |v: &SparseVec| -> SparseVec { v.iter().map(|(&k, c)| (map[k].unwrap(), c.clone())).collect() };
        let mut out = Dgl::new(basis, n).expect("degrees bounded by n");
        for i in 0..self.dim() {
            if let Some(ni) = map[i] {
                out.d[ni] = re(&self.d[i]);
            }
        }
        for (&(i, j), v) in &self.brackets {
            if let (Some(ni), Some(nj)) = (map[i], map[j]) {
                if self.degree(i) + self.degree(j) <= n {
                    out.brackets.insert((ni, nj), re(v));
                }
            }
        }
        (out, map)
    }

    pub fn describe(&self) -> String {
        let mut out = String::new();
        for i in 0..self.dim() {
            out.push_str(&format!("  {} (degree {})", self.name(i), self.degree(i)));
            if !self.d[i].is_empty() {
                out.push_str(&format!(": d = {}", self.fmt_combination(&self.d[i])));
            }
            out.push('\n');
        }
        for (&(i, j), v) in &self.brackets {
            out.push_str(&format!("  {} = {}\n", self.pair_name(i, j), self.fmt_combination(v)));
        }
        out
    }
}

/// A degree-0 linear map between DGLs given on basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DglMorphism {
    source: Dgl,
    target: Dgl,
    images: Vec<SparseVec>,
}

impl DglMorphism {
    pub fn new(source: Dgl, target: Dgl, images: Vec<SparseVec>) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::DimensionMismatch { expected: source.dim(), found: images.len() });
        }
        if images.iter().flat_map(|v| v.keys()).any(|&k| k >= target.dim()) {
            return Err(Error::Invalid("image refers to a missing basis element".into()));
        }
        Ok(DglMorphism { source, target, images })
    }

    pub fn identity(l: &Dgl) -> Self {
        let images = (0..l.dim()).map(|i| l.unit(i)).collect();
        DglMorphism { source: l.clone(), target: l.clone(), images }
    }

    pub fn source(&self) -> &Dgl {
        &self.source
    }

    pub fn target(&self) -> &Dgl {
        &self.target
    }

    pub fn image(&self, i: usize) -> &SparseVec {
        &self.images[i]
    }

    pub fn images(&self) -> &[SparseVec] {
        &self.images
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, c) in v {
            add_scaled(&mut out, c, &self.images[i]);
        }
        out
    }

    /// `self ∘ first`.
    pub fn compose_after(&self, first: &DglMorphism) -> Result<DglMorphism> {
        if first.target.basis() != self.source.basis() {
            return Err(Error::Invalid("composition of non-matching morphisms".into()));
        }
        let images = first.images.iter().map(|v| self.apply(v)).collect();
        DglMorphism::new(first.source.clone(), self.target.clone(), images)
    }

    pub fn is_identity(&self) -> bool {
        self.source.basis() == self.target.basis()
            && self.images.iter().enumerate().all(|(i, v)| *v == self.source.unit(i))
    }

    /// Checks degree 0, `dφ = φd` and `φ[x,y] = [φx,φy]` inside both
    /// truncations.
    pub fn check(&self) -> std::result::Result<(), Violation> {
        let (s, t) = (&self.source, &self.target);
        let bound = s.truncation.min(t.truncation);
        for i in 0..s.dim() {
            if self.images[i].keys().any(|&k| t.degree(k) != s.degree(i)) {
                return Err(Violation::new(ViolationKind::Degree, s.name(i), "image has the wrong degree"));
            }
            let lhs = t.apply_d(&self.images[i]);
            let rhs = self.apply(&s.d[i]);
            if lhs != rhs {
                return Err(Violation::new(ViolationKind::NotLieMorphism, s.name(i), "dφ != φd"));
            }
        }
        for i in 0..s.dim() {
            for j in i..s.dim() {
                if bound != COMPLETE && s.degree(i) + s.degree(j) > bound {
                    continue;
                }
                let lhs = self.apply(&s.bracket(i, j));
                let rhs = t.bracket_vec(&self.images[i], &self.images[j]);
                if lhs != rhs {
                    return Err(Violation::new(
                        ViolationKind::NotLieMorphism,
                        s.pair_name(i, j),
                        "φ[x,y] != [φx,φy]",
                    ));
                }
            }
        }
        Ok(())
    }
}

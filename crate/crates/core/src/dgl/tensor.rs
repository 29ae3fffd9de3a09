use std::collections::HashMap;

use num::One;

use super::lie::{Dgl, DglMorphism};
use crate::exactlin::{add_scaled, Rational, SparseVec};
use crate::gca::{power, Cdga, CdgaMorphism, GeneratorSet, Polynomial};
use crate::{koszul_sign, shift_down, Error, Result, COMPLETE};

/// A finite-dimensional CDGA `(A, d_A)` with `A^0 = Q` and `A^n = 0` for
/// `n > top`, flattened to a linear basis with multiplication and
/// differential tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdCdgaModel {
    cdga: Cdga,
    top: u32,
    degrees: Vec<u32>,
    names: Vec<String>,
    elements: Vec<Polynomial>,
    offsets: Vec<usize>,
    d: Vec<SparseVec>,
}

impl FdCdgaModel {
    /// Wraps a (typically quotient) CDGA of top degree `top`. Vanishing
    /// above `top` is verified on a window of length `max generator degree`,
    /// which suffices because every longer monomial has a factor in that
    /// window.
    pub fn new(cdga: Cdga, top: u32) -> Result<Self> {
        cdga.check().map_err(|v| Error::Invalid(v.to_string()))?;
        let window = top + cdga.gens().max_degree().max(1);
        for n in top + 1..=window {
            if cdga.dim(n)? != 0 {
                return Err(Error::Invalid(format!("algebra is nonzero in degree {n} above its top degree {top}")));
            }
        }
        if cdga.dim(top)? == 0 {
            return Err(Error::Invalid(format!("algebra vanishes in its declared top degree {top}")));
        }
        let mut degrees = Vec::new();
        let mut names = Vec::new();
        let mut elements = Vec::new();
        let mut offsets = Vec::new();
        for n in 0..=top {
            offsets.push(elements.len());
            for m in cdga.degree_basis(n)? {
                let name =
                    if m.is_one() { "1".to_string() } else { m.word().iter().map(|&g| cdga.gens().name(g)).collect::<Vec<_>>().join(".") };
                degrees.push(n);
                names.push(name);
                elements.push(Polynomial::monomial(m));
            }
        }
        offsets.push(elements.len());
        let mut model = FdCdgaModel { cdga, top, degrees, names, elements, offsets, d: Vec::new() };
        model.d = (0..model.dim())
            .map(|i| {
                if model.degrees[i] == top {
                    return Ok(SparseVec::new());
                }
                let img = model.cdga.apply_d(&model.elements[i])?;
                model.coords(&img)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(model)
    }

    /// `H*(S^p)` as `Λ(t)/(t²)`, or `Λ(t)` when `p` is odd.
    pub fn sphere(p: u32, name: &str) -> Result<Self> {
        let gens = GeneratorSet::new([(name, p)])?;
        let rel = if p % 2 == 0 { vec![power(&gens, &Polynomial::generator(0), 2)] } else { vec![] };
        FdCdgaModel::new(Cdga::new(gens, vec![Polynomial::zero()], rel, COMPLETE)?, p)
    }

    /// The ground field `(Q, 0)`.
    pub fn point() -> Self {
        let cdga = Cdga::free(GeneratorSet::default(), COMPLETE);
        FdCdgaModel {
            cdga,
            top: 0,
            degrees: vec![0],
            names: vec!["1".into()],
            elements: vec![Polynomial::one()],
            offsets: vec![0, 1],
            d: vec![SparseVec::new()],
        }
    }

    pub fn cdga(&self) -> &Cdga {
        &self.cdga
    }

    pub fn top(&self) -> u32 {
        self.top
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn dim_in(&self, n: u32) -> usize {
        if n > self.top {
            0
        } else {
            self.offsets[n as usize + 1] - self.offsets[n as usize]
        }
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn element(&self, i: usize) -> &Polynomial {
        &self.elements[i]
    }

    /// Index of the unit; `A^0` is one-dimensional.
    pub fn unit(&self) -> usize {
        0
    }

    pub fn d(&self, i: usize) -> &SparseVec {
        &self.d[i]
    }

    /// Coordinates of an arbitrary element in the flattened basis.
    pub fn coords(&self, p: &Polynomial) -> Result<SparseVec> {
        let mut parts: HashMap<u32, Polynomial> = HashMap::new();
        for (m, c) in p.terms() {
            parts.entry(m.degree(self.cdga.gens())).or_default().add_term(m.clone(), c.clone());
        }
        let mut out = SparseVec::new();
        for (deg, part) in parts {
            if deg > self.top {
                let nf = self.cdga.normal_form(&part)?;
                if !nf.is_zero() {
                    return Err(Error::Invalid("element above the top degree is nonzero".into()));
                }
                continue;
            }
            let space = self.cdga.space(deg)?;
            for (k, c) in space.coords(&part)? {
                out.insert(self.offsets[deg as usize] + k, c);
            }
        }
        Ok(out)
    }

    /// `e_i · e_j` in coordinates.
    pub fn product(&self, i: usize, j: usize) -> SparseVec {
        if self.degrees[i] + self.degrees[j] > self.top {
            return SparseVec::new();
        }
        let prod = self.cdga.multiply(&self.elements[i], &self.elements[j]);
        self.coords(&prod).expect("product stays inside the model")
    }

    /// Matrix (as images of basis elements) of a CDGA morphism between two
    /// finite models.
    pub fn linear_map(f: &CdgaMorphism, source: &FdCdgaModel, target: &FdCdgaModel) -> Result<Vec<SparseVec>> {
        (0..source.dim()).map(|i| target.coords(&f.apply(&source.elements[i])?)).collect()
    }
}

/// The DGL `A ⊗ L` with `|a⊗l| = |l| − |a|`,
/// `[a⊗l, a'⊗l'] = (−1)^{|a'||l|} aa' ⊗ [l,l']` and
/// `D(a⊗l) = d_A a ⊗ l + (−1)^{|a|} a ⊗ d_L l`.
///
/// The result is truncated at `truncation(L) − top(A)`; it remembers the
/// factorisation of each basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorModel {
    dgl: Dgl,
    a: FdCdgaModel,
    l: Dgl,
    factors: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl TensorModel {
    pub fn build(a: &FdCdgaModel, l: &Dgl) -> Result<Self> {
        let out_trunc = shift_down(l.truncation(), a.top());
        let mut basis = GeneratorSet::default();
        let mut factors = Vec::new();
        let mut index = HashMap::new();
        for ai in 0..a.dim() {
            for li in 0..l.dim() {
                let deg = i64::from(l.degree(li)) - i64::from(a.degree(ai));
                if deg <= 0 {
                    return Err(Error::Connectivity(format!(
                        "{} ⊗ {} has degree {deg}",
                        a.name(ai),
                        l.name(li)
                    )));
                }
                if out_trunc != COMPLETE && deg as u32 > out_trunc {
                    continue;
                }
                let name = if ai == a.unit() { l.name(li).to_string() } else { format!("{}.{}", a.name(ai), l.name(li)) };
                let k = basis.push(name, deg as u32)?;
                factors.push((ai, li));
                index.insert((ai, li), k);
            }
        }
        let mut dgl = Dgl::new(basis, out_trunc)?;
        let lookup = |ai: usize, li: usize| -> Result<usize> {
            index.get(&(ai, li)).copied().ok_or_else(|| Error::Invalid(format!("{} ⊗ {} missing", a.name(ai), l.name(li))))
        };
        for x in 0..factors.len() {
            let (ai, li) = factors[x];
            let mut dx = SparseVec::new();
            for (&aj, c) in a.d(ai) {
                add_scaled(&mut dx, c, &SparseVec::from([(lookup(aj, li)?, Rational::one())]));
            }
            let s = Rational::from_integer(koszul_sign(a.degree(ai).into(), 1).into());
            for (&lj, c) in l.d_of(li) {
                add_scaled(&mut dx, &(c * &s), &SparseVec::from([(lookup(ai, lj)?, Rational::one())]));
            }
            dgl.set_d(x, dx);
        }
        for x in 0..factors.len() {
            for y in x..factors.len() {
                if out_trunc != COMPLETE && dgl.degree(x) + dgl.degree(y) > out_trunc {
                    continue;
                }
                let ((ai, li), (aj, lj)) = (factors[x], factors[y]);
                let prod = a.product(ai, aj);
                let br = l.bracket(li, lj);
                if prod.is_empty() || br.is_empty() {
                    continue;
                }
                let s = Rational::from_integer(koszul_sign(a.degree(aj).into(), l.degree(li).into()).into());
                let mut v = SparseVec::new();
                for (&ak, ca) in &prod {
                    for (&lk, cl) in &br {
                        add_scaled(&mut v, &(ca * cl * &s), &SparseVec::from([(lookup(ak, lk)?, Rational::one())]));
                    }
                }
                dgl.set_bracket(x, y, v);
            }
        }
        Ok(TensorModel { dgl, a: a.clone(), l: l.clone(), factors, index })
    }

    pub fn dgl(&self) -> &Dgl {
        &self.dgl
    }

    pub fn a(&self) -> &FdCdgaModel {
        &self.a
    }

    pub fn l(&self) -> &Dgl {
        &self.l
    }

    /// `(a index, l index)` of a basis element.
    pub fn factor(&self, x: usize) -> (usize, usize) {
        self.factors[x]
    }

    pub fn index_of(&self, a: usize, l: usize) -> Option<usize> {
        self.index.get(&(a, l)).copied()
    }

    /// Restriction to degrees `≤ n`.
    pub fn truncate(&self, n: u32) -> TensorModel {
        let (dgl, map) = self.dgl.truncate(n);
        let mut factors = vec![(0, 0); dgl.dim()];
        let mut index = HashMap::new();
        for (old, new) in map.iter().enumerate() {
            if let Some(new) = *new {
                factors[new] = self.factors[old];
                index.insert(self.factors[old], new);
            }
        }
        TensorModel { dgl, a: self.a.clone(), l: self.l.clone(), factors, index }
    }

    /// Models of the evaluation fibration `F(X,Y) → Y` and its section:
    /// `proj(a⊗l) = ε(a) l`, `sect(l) = 1⊗l`, with `L` truncated to the
    /// model's range.
    pub fn fibration_model(&self) -> Result<(DglMorphism, DglMorphism)> {
        let (lt, map) = self.l.truncate(self.dgl.truncation());
        let unit = self.a.unit();
        let proj_images = self
            .factors
            .iter()
            .map(|&(ai, li)| {
                if ai == unit {
                    SparseVec::from([(map[li].expect("degree within range"), Rational::one())])
                } else {
                    SparseVec::new()
                }
            })
            .collect();
        let mut sect_images = vec![SparseVec::new(); lt.dim()];
        for (li, new) in map.iter().enumerate() {
            if let Some(new) = *new {
                let x = self.index_of(unit, li).ok_or_else(|| Error::Invalid("unit block incomplete".into()))?;
                sect_images[new] = SparseVec::from([(x, Rational::one())]);
            }
        }
        let proj = DglMorphism::new(self.dgl.clone(), lt.clone(), proj_images)?;
        let sect = DglMorphism::new(lt, self.dgl.clone(), sect_images)?;
        Ok((proj, sect))
    }

    /// `f ⊗ Id: self → target` for a CDGA morphism `f` between the `A`
    /// factors. Both models must share `L`.
    pub fn tensor_morphism(&self, target: &TensorModel, f: &CdgaMorphism) -> Result<DglMorphism> {
        if self.l.basis() != target.l.basis() {
            return Err(Error::Invalid("tensor models over different Lie algebras".into()));
        }
        let lin = FdCdgaModel::linear_map(f, &self.a, &target.a)?;
        let mut images = Vec::with_capacity(self.dgl.dim());
        for &(ai, li) in &self.factors {
            let mut v = SparseVec::new();
            for (&aj, c) in &lin[ai] {
                let y = target.index_of(aj, li).ok_or_else(|| {
                    Error::TruncationOverflow { needed: self.l.degree(li) - target.a.degree(aj), bound: target.dgl.truncation() }
                })?;
                add_scaled(&mut v, c, &SparseVec::from([(y, Rational::one())]));
            }
            images.push(v);
        }
        DglMorphism::new(self.dgl.clone(), target.dgl.clone(), images)
    }
}

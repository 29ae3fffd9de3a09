//! Sullivan-level models of mapping spaces `F(X, Y)`: hypothesis checks,
//! the suspension model of `F(S^p, Y)`, splittings of an odd closed
//! generator and the reduction to an odd sphere.

use num::One;

use crate::cefunctor::{ce_cochains, ce_of_morphism, CeResult};
use crate::dgl::{Dgl, DglMorphism, FdCdgaModel, TensorModel};
use crate::exactlin::{RatMatrix, Rational, SparseVec};
use crate::gca::{apply_derivation, is_left_inverse, Cdga, CdgaMorphism, Derivation, Polynomial};
use crate::{shift_down, Error, Result, Violation, ViolationKind, COMPLETE};

/// Model of the target space `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum YModel {
    /// Minimal Sullivan model.
    Sullivan(Cdga),
    /// DGL (Quillen) model.
    Lie(Dgl),
}

impl YModel {
    /// Connectivity `m`: `Y` is `m`-connected.
    pub fn connectivity(&self) -> u32 {
        match self {
            YModel::Sullivan(c) => c.gens().degrees().iter().min().map_or(COMPLETE, |&d| d - 1),
            YModel::Lie(l) => (0..l.dim()).map(|i| l.degree(i)).min().unwrap_or(COMPLETE),
        }
    }

    /// A Sullivan algebra for `Y`: itself, or `C*(L)`.
    pub fn sullivan(&self) -> Result<Cdga> {
        match self {
            YModel::Sullivan(c) => Ok(c.clone()),
            YModel::Lie(l) => Ok(ce_cochains(l)?.cdga),
        }
    }
}

/// `F(X, Y)` with `X` given by a finite model of top degree `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSpaceProblem {
    pub name: String,
    pub x: FdCdgaModel,
    pub y: YModel,
    pub p: u32,
}

impl MapSpaceProblem {
    pub fn new(name: impl Into<String>, x: FdCdgaModel, y: YModel) -> Self {
        let p = x.top();
        MapSpaceProblem { name: name.into(), x, y, p }
    }

    /// Is `X` a rational sphere (`A = Q ⊕ Q` in degrees 0 and `p`)?
    pub fn x_is_sphere(&self) -> bool {
        self.x.dim() == 2 && self.x.dim_in(self.p) == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub p: u32,
    pub m: u32,
    pub violations: Vec<Violation>,
    /// Closed odd generators of `X`'s model (names).
    pub closed_odd_generators: Vec<String>,
    pub warnings: Vec<String>,
}

impl HypothesisReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `m ≥ p + 1` and `H^p(X) ≠ 0`, and reports closed odd generators
/// of `X`'s model. A missing closed odd generator is only a warning.
pub fn check_hypotheses(prob: &MapSpaceProblem) -> HypothesisReport {
    let (p, m) = (prob.p, prob.y.connectivity());
    let mut violations = Vec::new();
    let mut warnings = Vec::new();
    if m != COMPLETE && m < p + 1 {
        violations.push(Violation::new(
            ViolationKind::Hypothesis,
            "connectivity",
            format!("Y is {m}-connected but m ≥ p + 1 = {} is required", p + 1),
        ));
    }
    match prob.x.cdga().cohomology(p) {
        Ok(h) if h.rank > 0 => {}
        Ok(_) => violations.push(Violation::new(ViolationKind::Hypothesis, "H^p(X)", format!("H^{p}(X) = 0"))),
        Err(e) => violations.push(Violation::new(ViolationKind::Hypothesis, "H^p(X)", e.to_string())),
    }
    let a = prob.x.cdga();
    let closed_odd_generators: Vec<String> = (0..a.gens().len())
        .filter(|&i| a.gens().is_odd(i) && a.differential(i).is_zero())
        .map(|i| a.gens().name(i).to_string())
        .collect();
    if closed_odd_generators.is_empty() {
        warnings.push("X has no closed odd generator; the odd-sphere reduction does not apply".into());
    }
    if let YModel::Sullivan(c) = &prob.y {
        if !c.is_minimal() {
            warnings.push("the Sullivan model of Y is not minimal".into());
        }
    }
    HypothesisReport { p, m, violations, closed_odd_generators, warnings }
}

/// `(Λ(V ⊕ SV), d)` with `S` the degree `−p` derivation `v ↦ v̄` and
/// `d∘S = (−1)^p S∘d` on `V`; for odd `p` this is `d(Sv) = −S(dv)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspensionModel {
    pub cdga: Cdga,
    pub s: Derivation,
    pub p: u32,
    /// Number of unbarred generators; `v̄_i` has index `base + i`.
    pub base: usize,
}

/// Name of the barred copy of a generator.
pub fn bar_name(name: &str) -> String {
    format!("{name}_bar")
}

pub fn suspension_model(y: &Cdga, p: u32) -> Result<SuspensionModel> {
    if !y.is_free() {
        return Err(Error::Invalid("suspension model needs a free (Sullivan) algebra".into()));
    }
    for i in 0..y.gens().len() {
        if y.differential(i).has_linear_part() {
            return Err(Error::NotMinimal(y.gens().name(i).to_string()));
        }
        if y.gens().degree(i) <= p {
            return Err(Error::DegreeUnderflow(format!(
                "|{}| = {} is not above p = {p}",
                y.gens().name(i),
                y.gens().degree(i)
            )));
        }
    }
    let n = y.gens().len();
    let mut gens = y.gens().clone();
    for i in 0..n {
        gens.push(bar_name(y.gens().name(i)), y.gens().degree(i) - p)?;
    }
    let mut s_images = vec![Polynomial::zero(); 2 * n];
    for (i, img) in s_images.iter_mut().enumerate().take(n) {
        *img = Polynomial::generator(n + i);
    }
    let s = Derivation::new(-(p as i32), s_images);
    let sign = if p % 2 == 1 { -Rational::one() } else { Rational::one() };
    let mut d: Vec<Polynomial> = y.differentials().to_vec();
    for i in 0..n {
        let img = apply_derivation(&gens, &s, y.differential(i));
        d.push(img.scale(&sign));
    }
    let cdga = Cdga::new(gens, d, Vec::new(), shift_down(y.truncation(), p))?;
    Ok(SuspensionModel { cdga, s, p, base: n })
}

impl SuspensionModel {
    pub fn is_barred(&self, g: usize) -> bool {
        g >= self.base
    }

    pub fn bar_of(&self, g: usize) -> usize {
        self.base + g
    }

    /// Checks `S² = 0`, `d² = 0` and `d(Sv) = (−1)^p S(dv)` on generators.
    pub fn check(&self) -> std::result::Result<(), Violation> {
        let gens = self.cdga.gens();
        for g in 0..gens.len() {
            let ss = apply_derivation(gens, &self.s, &self.s.image(g));
            if !ss.is_zero() {
                return Err(Violation::new(ViolationKind::DSquared, gens.name(g), "S(S v) != 0"));
            }
        }
        self.cdga.check()?;
        let sign = if self.p % 2 == 1 { -Rational::one() } else { Rational::one() };
        for g in 0..self.base {
            let lhs = self.cdga.differential(self.bar_of(g));
            let rhs = apply_derivation(gens, &self.s, self.cdga.differential(g)).scale(&sign);
            if *lhs != rhs {
                return Err(Violation::new(
                    ViolationKind::NotCochainMap,
                    gens.name(g),
                    "d(Sv) differs from (-1)^p S(dv)",
                ));
            }
        }
        Ok(())
    }

    /// The inclusion `(ΛV, d) → (Λ(V ⊕ SV), d)`.
    pub fn inclusion(&self, y: &Cdga) -> Result<CdgaMorphism> {
        let images = (0..self.base).map(Polynomial::generator).collect();
        CdgaMorphism::new(y.clone(), self.cdga.clone(), images)
    }
}

/// `i: (Λt, 0) → A` and `q: A → (Λt, 0)` with `q ∘ i = Id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddSplitting {
    pub exterior: FdCdgaModel,
    pub i: CdgaMorphism,
    pub q: CdgaMorphism,
}

/// Splits off the odd closed generator `t` of a finite model. `q` sends a
/// generator `g` of degree `|t|` to the `t`-coordinate of `g` with respect
/// to `A^{|t|} = Q·t ⊕ C`; every other generator goes to 0. The complement
/// `C` defaults to the span of the other basis monomials.
pub fn split_odd_generator(a: &FdCdgaModel, t: &str, complement: Option<&[Polynomial]>) -> Result<OddSplitting> {
    let alg = a.cdga();
    let ti = alg.gens().lookup(t)?;
    let deg = alg.gens().degree(ti);
    if deg % 2 == 0 {
        return Err(Error::Invalid(format!("{t} has even degree {deg}")));
    }
    if !alg.differential(ti).is_zero() {
        return Err(Error::Invalid(format!("{t} is not closed")));
    }
    let space = alg.space(deg)?;
    let tcoords = space.coords(&Polynomial::generator(ti))?;
    let complement: Vec<SparseVec> = match complement {
        Some(c) => c.iter().map(|p| space.coords(p)).collect::<Result<_>>()?,
        None => {
            let [(&pos, _)] = tcoords.iter().collect::<Vec<_>>()[..] else {
                return Err(Error::Invalid(format!("{t} is not a basis monomial of A^{deg}")));
            };
            (0..space.dim()).filter(|&k| k != pos).map(|k| SparseVec::from([(k, Rational::one())])).collect()
        }
    };
    let mut cols = vec![tcoords];
    cols.extend(complement);
    let basis = RatMatrix::from_columns(space.dim(), &cols);
    if cols.len() != space.dim() || basis.rank() != space.dim() {
        return Err(Error::Invalid(format!("t and the complement do not form a basis of A^{deg}")));
    }
    let lt = FdCdgaModel::sphere(deg, t)?;
    let mut images = vec![Polynomial::zero(); alg.gens().len()];
    for g in 0..alg.gens().len() {
        if alg.gens().degree(g) != deg {
            continue;
        }
        let x = basis.solve(&space.coords(&Polynomial::generator(g))?)?.expect("columns form a basis");
        if let Some(c) = x.get(&0) {
            images[g] = Polynomial::generator(0).scale(c);
        }
    }
    let q = CdgaMorphism::new(alg.clone(), lt.cdga().clone(), images)?;
    q.check().map_err(|v| Error::Invalid(format!("q is not a CDGA morphism: {v}")))?;
    let i = CdgaMorphism::new(lt.cdga().clone(), alg.clone(), vec![Polynomial::generator(ti)])?;
    i.check().map_err(|v| Error::Invalid(format!("i is not a CDGA morphism: {v}")))?;
    if !is_left_inverse(&q, &i)? {
        return Err(Error::Invalid("q ∘ i != Id".into()));
    }
    Ok(OddSplitting { exterior: lt, i, q })
}

/// The data of the reduction from `F(X, Y)` to `F(S^{|t|}, Y)`:
/// `I = i ⊗ Id`, `Q = q ⊗ Id`, `f = C*(Q)`, `g = C*(I)` with `g ∘ f = Id`.
#[derive(Clone, Debug)]
pub struct OddSphereReduction {
    pub splitting: OddSplitting,
    pub small: TensorModel,
    pub big: TensorModel,
    pub lie_i: DglMorphism,
    pub lie_q: DglMorphism,
    pub ce_small: CeResult,
    pub ce_big: CeResult,
    /// `C*(Λt ⊗ L) → C*(A ⊗ L)`.
    pub f: CdgaMorphism,
    /// `C*(A ⊗ L) → C*(Λt ⊗ L)`.
    pub g: CdgaMorphism,
}

pub fn reduce_to_odd_sphere(prob: &MapSpaceProblem, t: &str, complement: Option<&[Polynomial]>) -> Result<OddSphereReduction> {
    let YModel::Lie(l) = &prob.y else {
        return Err(Error::Invalid("the odd-sphere reduction needs a Lie model of Y".into()));
    };
    let splitting = split_odd_generator(&prob.x, t, complement)?;
    let big = TensorModel::build(&prob.x, l)?;
    let small = TensorModel::build(&splitting.exterior, l)?.truncate(big.dgl().truncation());
    let lie_i = small.tensor_morphism(&big, &splitting.i)?;
    let lie_q = big.tensor_morphism(&small, &splitting.q)?;
    for m in [&lie_i, &lie_q] {
        m.check().map_err(|v| Error::Invalid(v.to_string()))?;
    }
    if !lie_q.compose_after(&lie_i)?.is_identity() {
        return Err(Error::Invalid("Q ∘ I != Id".into()));
    }
    let ce_small = ce_cochains(small.dgl())?;
    let ce_big = ce_cochains(big.dgl())?;
    let f = ce_of_morphism(&lie_q, &ce_big, &ce_small)?;
    let g = ce_of_morphism(&lie_i, &ce_small, &ce_big)?;
    if !is_left_inverse(&g, &f)? {
        return Err(Error::Invalid("g ∘ f != Id".into()));
    }
    Ok(OddSphereReduction { splitting, small, big, lie_i, lie_q, ce_small, ce_big, f, g })
}

/// Model of `F(X, Y)` built along one of the two routes.
#[derive(Clone, Debug)]
pub enum MapModel {
    /// `Λ(V ⊕ SV)` for `X = S^p` and a Sullivan model of `Y`.
    Suspension(SuspensionModel),
    /// `C*(A ⊗ L)`.
    Tensor { tensor: TensorModel, ce: CeResult },
}

impl MapModel {
    pub fn cdga(&self) -> &Cdga {
        match self {
            MapModel::Suspension(s) => &s.cdga,
            MapModel::Tensor { ce, .. } => &ce.cdga,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Sullivan,
    Lie,
}

/// Builds the model of `F(X, Y)`; without an explicit route the Sullivan
/// route is used when `X` is a sphere and `Y` has a Sullivan model.
pub fn map_model(prob: &MapSpaceProblem, route: Option<Route>) -> Result<MapModel> {
    let route = route.unwrap_or(match (&prob.y, prob.x_is_sphere()) {
        (YModel::Sullivan(_), true) => Route::Sullivan,
        _ => Route::Lie,
    });
    match (route, &prob.y) {
        (Route::Sullivan, YModel::Sullivan(y)) => {
            if !prob.x_is_sphere() {
                return Err(Error::Invalid("the Sullivan route needs X to be a sphere".into()));
            }
            Ok(MapModel::Suspension(suspension_model(y, prob.p)?))
        }
        (Route::Sullivan, YModel::Lie(_)) => {
            Err(Error::Invalid("the Sullivan route needs a Sullivan model of Y".into()))
        }
        (Route::Lie, YModel::Lie(l)) => {
            let tensor = TensorModel::build(&prob.x, l)?;
            let ce = ce_cochains(tensor.dgl())?;
            Ok(MapModel::Tensor { tensor, ce })
        }
        (Route::Lie, YModel::Sullivan(_)) => Err(Error::Invalid("the Lie route needs a Lie model of Y".into())),
    }
}

/// Helper for tests and fixtures: the model `Λ(t)/(t²)` or `Λ(t)` of `S^p`.
pub fn sphere_model(p: u32) -> Result<FdCdgaModel> {
    FdCdgaModel::sphere(p, "t")
}

#[cfg(test)]
mod tests;

//! The Chevalley-Eilenberg cochain functor `C*` from DGLs to Sullivan
//! algebras.
//!
//! For a DGL `L` with basis `x_i`, `C*(L) = (ΛV, d)` has one generator
//! `v_i` of degree `|x_i| + 1` per basis element. Writing
//! `d_L x_i = Σ_k D_ki x_k` and `[x_i, x_j] = Σ_k c^k_ij x_k`,
//!
//! ```text
//! d v_k = -Σ_i D_ki v_i + Σ_{i<j} ε_ij c^k_ij v_i v_j + ½ Σ_i ε_ii c^k_ii v_i²
//! ```
//!
//! with `ε_ij = (-1)^(|x_i| + 1)`, the order `i < j` being the generator
//! order of `C*(L)`. With this choice `d² = 0` is equivalent to the DGL
//! axioms and `C*` of the free Lie algebra on one degree-3 class has
//! `d v_7 = ½ v_4²`.

use crate::dgl::{Dgl, DglMorphism};
use crate::exactlin::{rat, Rational};
use crate::gca::{Cdga, CdgaMorphism, GeneratorSet, Monomial, Polynomial};
use crate::{Error, Result, COMPLETE};

/// `C*(L)` together with the dictionary between its generators and the
/// basis of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CeResult {
    pub cdga: Cdga,
    /// `generator_of[i]`: generator index of `v_i` for basis element `i`.
    pub generator_of: Vec<usize>,
    /// `basis_of[g]`: basis element dual to generator `g`.
    pub basis_of: Vec<usize>,
}

impl CeResult {
    /// The linear part `d₀` of `d v` for generator `g`.
    pub fn linear_part(&self, g: usize) -> Polynomial {
        self.cdga.differential(g).filter(|m| m.word_length() == 1)
    }

    /// The quadratic part `d₁` of `d v` for generator `g`.
    pub fn quadratic_part(&self, g: usize) -> Polynomial {
        self.cdga.differential(g).filter(|m| m.word_length() == 2)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct SignRule {
    pub linear: i64,
    pub quadratic: fn(u32, u32) -> i64,
}

pub(crate) const SIGNS: SignRule = SignRule { linear: -1, quadratic: |di, _| if di % 2 == 0 { -1 } else { 1 } };

/// Generator name for a basis element.
pub fn cochain_name(basis_name: &str) -> String {
    format!("v_{basis_name}")
}

/// `C*(L)`; the result is complete through degree `truncation(L) + 1`.
pub fn ce_cochains(l: &Dgl) -> Result<CeResult> {
    l.validate().map_err(|v| Error::Invalid(v.to_string()))?;
    ce_with(l, SIGNS)
}

/// `C*(L)` without validating `L`, for inspecting what the cochain
/// differential does on a table that breaks the axioms.
pub fn ce_cochains_unchecked(l: &Dgl) -> Result<CeResult> {
    ce_with(l, SIGNS)
}

pub(crate) fn ce_with(l: &Dgl, rule: SignRule) -> Result<CeResult> {
    let mut order: Vec<usize> = (0..l.dim()).collect();
    order.sort_by_key(|&i| (l.degree(i), i));
    let mut generator_of = vec![0; l.dim()];
    let mut gens = GeneratorSet::default();
    for (g, &i) in order.iter().enumerate() {
        generator_of[i] = g;
        gens.push(cochain_name(l.name(i)), l.degree(i) + 1)?;
    }
    let mut d = vec![Polynomial::zero(); l.dim()];
    let lin = Rational::from_integer(rule.linear.into());
    for i in 0..l.dim() {
        for (&k, c) in l.d_of(i) {
            d[generator_of[k]].add_term(Monomial::generator(generator_of[i]), c * &lin);
        }
    }
    let half = rat(1, 2);
    for (a, &i) in order.iter().enumerate() {
        for &j in &order[a..] {
            let br = l.bracket(i, j);
            if br.is_empty() {
                continue;
            }
            let (gi, gj) = (generator_of[i], generator_of[j]);
            let mut e = vec![0u32; gi.max(gj) + 1];
            e[gi] += 1;
            e[gj] += 1;
            let mono = Monomial::from_exponents(e);
            let mut eps = Rational::from_integer((rule.quadratic)(l.degree(i), l.degree(j)).into());
            if i == j {
                if l.degree(i) % 2 == 0 {
                    continue;
                }
                eps *= &half;
            }
            for (&k, c) in &br {
                d[generator_of[k]].add_term(mono.clone(), c * &eps);
            }
        }
    }
    let trunc = if l.truncation() == COMPLETE { COMPLETE } else { l.truncation() + 1 };
    let cdga = Cdga::new(gens, d, Vec::new(), trunc)?;
    Ok(CeResult { cdga, generator_of, basis_of: order })
}

/// `C*(φ): C*(target) → C*(source)`, the dual of `φ` on generators.
pub fn ce_of_morphism(phi: &DglMorphism, source: &CeResult, target: &CeResult) -> Result<CdgaMorphism> {
    let (ls, lt) = (phi.source(), phi.target());
    if source.basis_of.len() != ls.dim() || target.basis_of.len() != lt.dim() {
        return Err(Error::DimensionMismatch { expected: ls.dim(), found: source.basis_of.len() });
    }
    let mut images = vec![Polynomial::zero(); lt.dim()];
    for i in 0..ls.dim() {
        for (&k, c) in phi.image(i) {
            images[target.generator_of[k]].add_term(Monomial::generator(source.generator_of[i]), c.clone());
        }
    }
    CdgaMorphism::new(target.cdga.clone(), source.cdga.clone(), images)
}

/// Validates the inputs, builds both cochain algebras and dualises `φ`.
pub fn ce_functor(phi: &DglMorphism) -> Result<(CeResult, CeResult, CdgaMorphism)> {
    phi.check().map_err(|v| Error::Invalid(v.to_string()))?;
    let s = ce_cochains(phi.source())?;
    let t = ce_cochains(phi.target())?;
    let f = ce_of_morphism(phi, &s, &t)?;
    Ok((s, t, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgl::{free_lie, FdCdgaModel, TensorModel};
    use crate::gca::is_left_inverse;
    use crate::ViolationKind;

    fn show(ce: &CeResult, g: usize) -> String {
        ce.cdga.differential(g).fmt_with(ce.cdga.gens())
    }

    #[test]
    fn abelian_gives_zero_differential() {
        let ce = ce_cochains(&Dgl::abelian(&[("a", 3)], COMPLETE).unwrap()).unwrap();
        assert_eq!(ce.cdga.gens().names(), ["v_a"]);
        assert_eq!(ce.cdga.gens().degree(0), 4);
        assert!(ce.cdga.has_zero_differential());
    }

    #[test]
    fn free_lie_on_degree_three_is_four_sphere() {
        let ce = ce_cochains(&free_lie(&[("a", 3)], 7).unwrap()).unwrap();
        assert_eq!(ce.cdga.gens().names(), ["v_a", "v_a_a"]);
        assert_eq!(ce.cdga.gens().degrees(), [4, 7]);
        assert_eq!(show(&ce, 1), "1/2*v_a^2");
        assert_eq!(ce.cdga.truncation(), 8);
        assert!(ce.cdga.check().is_ok());
        assert_eq!(ce.cdga.cohomology_ranks(7).unwrap(), vec![1, 0, 0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn thom_case_has_free_cochains() {
        let l = Dgl::abelian(&[("l", 3)], COMPLETE).unwrap();
        let m = TensorModel::build(&FdCdgaModel::sphere(2, "t").unwrap(), &l).unwrap();
        let ce = ce_cochains(m.dgl()).unwrap();
        assert_eq!(ce.cdga.gens().names(), ["v_t.l", "v_l"]);
        assert_eq!(ce.cdga.gens().degrees(), [2, 4]);
        assert!(ce.cdga.has_zero_differential());
    }

    #[test]
    fn decomposition_into_linear_and_quadratic_parts() {
        let a = Cdga::from_text(&[("u", 2), ("v", 3)], &[("u", "v")], &["u^2", "u*v"], COMPLETE).unwrap();
        let a = FdCdgaModel::new(a, 3).unwrap();
        let l = free_lie(&[("x", 5), ("y", 6)], 14).unwrap();
        let ce = ce_cochains(TensorModel::build(&a, &l).unwrap().dgl()).unwrap();
        assert!(ce.cdga.check().is_ok());
        let mut saw_both = (false, false);
        for g in 0..ce.cdga.gens().len() {
            let (lin, quad) = (ce.linear_part(g), ce.quadratic_part(g));
            assert_eq!(lin.add(&quad), *ce.cdga.differential(g));
            saw_both.0 |= !lin.is_zero();
            saw_both.1 |= !quad.is_zero();
        }
        assert_eq!(saw_both, (true, true));
    }

    #[test]
    fn broken_jacobi_breaks_d_squared() {
        let l = Dgl::from_text(&[("a", 1), ("u", 2), ("w", 3)], &[("a", "a", "u"), ("a", "u", "w")], &[], 3)
            .unwrap()
            .nilpotent_quotient();
        assert!(ce_cochains(&l).is_err());
        let ce = ce_cochains_unchecked(&l).unwrap();
        assert_eq!(ce.cdga.check().unwrap_err().kind, ViolationKind::DSquared);
    }

    #[test]
    fn identity_dualises_to_identity() {
        let l = free_lie(&[("a", 3), ("b", 4)], 10).unwrap();
        let (s, t, f) = ce_functor(&DglMorphism::identity(&l)).unwrap();
        assert_eq!(s, t);
        assert_eq!(f, CdgaMorphism::identity(&s.cdga));
    }

    #[test]
    fn section_dualises_to_restriction() {
        let l = Dgl::abelian(&[("l", 3)], COMPLETE).unwrap();
        let m = TensorModel::build(&FdCdgaModel::sphere(2, "t").unwrap(), &l).unwrap();
        let (proj, sect) = m.fibration_model().unwrap();
        let (cl, cm, sect_star) = ce_functor(&sect).unwrap();
        assert!(sect_star.check().is_ok());
        // v_l ↦ v_l, v_t.l ↦ 0.
        let g = cm.cdga.gens();
        assert_eq!(sect_star.image(g.lookup("v_l").unwrap()), &Polynomial::generator(0));
        assert!(sect_star.image(g.lookup("v_t.l").unwrap()).is_zero());
        // Contravariance: C*(proj ∘ sect) = C*(sect) ∘ C*(proj).
        let proj_star = ce_of_morphism(&proj, &cm, &cl).unwrap();
        let comp = sect_star.compose_after(&proj_star).unwrap();
        assert_eq!(comp, CdgaMorphism::identity(&cl.cdga));
        assert!(is_left_inverse(&sect_star, &proj_star).unwrap());
    }
}

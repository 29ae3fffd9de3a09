//! Bigraded (Halperin-Stasheff) models of cohomology algebras, their barred
//! versions, the bar-linearity obstruction and the `dw' = w^n + Ω` scan.

use num::{One, Zero};

use super::certificate::{AlgebraText, Certificate, FormalityVerdict};
use super::cohomology::CohomologyAlgebra;
use crate::exactlin::{sparse_to_dense, Echelon, RatMatrix, Rational, SparseVec};
use crate::gca::{power, Cdga, CdgaMorphism, CochainView, GeneratorSet, Monomial, Polynomial};
use crate::mapmodel::suspension_model;
use crate::{Error, Result, COMPLETE};

/// Which generators of a barred model are barred.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BarData {
    pub p: u32,
    /// Generator `base + i` is the bar of generator `i`.
    pub base: usize,
}

/// A minimal Sullivan algebra `ΛZ` with a lower grading `Z = ⊕ Z_i` such
/// that `d(Z_0) = 0` and `d(Z_i) ⊂ (ΛZ)_{i-1}`, and `ρ: ΛZ → H_0` onto
/// `Λ Z_0 / (d Z_1)` vanishing on `Z_{>0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedModel {
    pub cdga: Cdga,
    pub lower: Vec<u32>,
    pub rho: CdgaMorphism,
    pub bar: Option<BarData>,
}

fn lower_of(lower: &[u32], m: &Monomial) -> u32 {
    m.exponents().iter().enumerate().map(|(g, &e)| e * lower[g]).sum()
}

impl BigradedModel {
    /// Checks the lower-grading structure and builds `ρ` onto the
    /// recomputed `H_0 = Λ Z_0 / (d Z_1)`.
    pub fn structural(cdga: Cdga, lower: Vec<u32>, bar: Option<BarData>) -> Result<Self> {
        let g = cdga.gens();
        if lower.len() != g.len() {
            return Err(Error::DimensionMismatch { expected: g.len(), found: lower.len() });
        }
        if !cdga.is_free() || !cdga.is_minimal() {
            return Err(Error::Invalid("a bigraded model is a minimal Sullivan algebra".into()));
        }
        for i in 0..g.len() {
            let d = cdga.differential(i);
            if lower[i] == 0 {
                if !d.is_zero() {
                    return Err(Error::Invalid(format!("{} has lower degree 0 but is not closed", g.name(i))));
                }
            } else if d.is_zero() {
                return Err(Error::Invalid(format!("{} has positive lower degree but d = 0", g.name(i))));
            } else if d.terms().any(|(m, _)| lower_of(&lower, m) != lower[i] - 1) {
                return Err(Error::Invalid(format!("d({}) is not of lower degree {}", g.name(i), lower[i] - 1)));
            }
        }
        cdga.check().map_err(|v| Error::Invalid(v.to_string()))?;
        if let Some(b) = bar {
            if 2 * b.base != g.len() {
                return Err(Error::Invalid("barred model must have as many barred as unbarred generators".into()));
            }
        }
        let mut hgens = GeneratorSet::default();
        let mut to_h = vec![usize::MAX; g.len()];
        for i in (0..g.len()).filter(|&i| lower[i] == 0) {
            to_h[i] = hgens.push(g.name(i), g.degree(i))?;
        }
        let relations = (0..g.len())
            .filter(|&i| lower[i] == 1)
            .map(|i| cdga.differential(i).reindex(&to_h))
            .collect();
        let zero = vec![Polynomial::zero(); hgens.len()];
        let h0 = Cdga::new(hgens, zero, relations, cdga.truncation())?;
        let images = (0..g.len())
            .map(|i| if lower[i] == 0 { Polynomial::generator(to_h[i]) } else { Polynomial::zero() })
            .collect();
        let rho = CdgaMorphism::new(cdga.clone(), h0, images)?;
        rho.check().map_err(|v| Error::Invalid(v.to_string()))?;
        Ok(BigradedModel { cdga, lower, rho, bar })
    }

    pub fn generators_of_lower(&self, i: u32) -> Vec<usize> {
        (0..self.lower.len()).filter(|&g| self.lower[g] == i).collect()
    }

    pub fn max_lower(&self) -> u32 {
        self.lower.iter().copied().max().unwrap_or(0)
    }

    pub fn is_barred(&self, g: usize) -> bool {
        self.bar.is_some_and(|b| g >= b.base)
    }

    /// Number of barred letters in `m`.
    pub fn bar_length(&self, m: &Monomial) -> u32 {
        m.exponents().iter().enumerate().filter(|(g, _)| self.is_barred(*g)).map(|(_, &e)| e).sum()
    }

    /// Generators listed by lower degree, one line per nonempty `Z_i`.
    pub fn describe(&self) -> String {
        let g = self.cdga.gens();
        let mut out = String::new();
        for i in 0..=self.max_lower() {
            let names: Vec<String> =
                self.generators_of_lower(i).iter().map(|&k| format!("{}({})", g.name(k), g.degree(k))).collect();
            if !names.is_empty() {
                out.push_str(&format!("  Z_{i}: {}\n", names.join(", ")));
            }
        }
        out
    }
}

/// The bigraded model of `H` whose `ρ: ΛZ → H` is a quasi-isomorphism
/// through degree `n`. All generators of degree at most `n + 1` are built,
/// so `H` must be exact through `n + 2`. Killing cocycles are chosen from
/// echelon pivots over the monomial order, lower degree by lower degree.
pub fn bigraded_model(h: &CohomologyAlgebra, n: u32) -> Result<BigradedModel> {
    let top = n + 1;
    if h.bound() != COMPLETE && h.bound() < top + 1 {
        return Err(Error::TruncationOverflow { needed: top + 1, bound: h.bound() });
    }
    let hg = h.gens();
    let mut gens = GeneratorSet::default();
    let mut d: Vec<Polynomial> = Vec::new();
    let mut lower: Vec<u32> = Vec::new();
    let mut rho_images: Vec<Polynomial> = Vec::new();
    let mut counters: Vec<usize> = Vec::new();
    for k in 2..=top {
        for j in (0..hg.len()).filter(|&j| hg.degree(j) == k) {
            gens.push(hg.name(j), k)?;
            d.push(Polynomial::zero());
            lower.push(0);
            rho_images.push(Polynomial::generator(j));
        }
        let model = Cdga::new(gens.clone(), d.clone(), vec![], COMPLETE)?;
        let view = CochainView::new(&model);
        let space = view.space(k + 1)?;
        let prev = view.space(k)?;
        let dmat = view.d_matrix(k + 1)?;
        let din = view.d_matrix(k)?;
        let mons = space.basis_monomials();
        let prev_mons = prev.basis_monomials();
        let top_lower = mons.iter().map(|m| lower_of(&lower, m)).max().unwrap_or(0);
        let mut killers: Vec<(u32, Polynomial)> = Vec::new();
        for i in 0..=top_lower {
            let cols: Vec<usize> = (0..mons.len()).filter(|&c| lower_of(&lower, &mons[c]) == i).collect();
            if cols.is_empty() {
                continue;
            }
            let kernel = if i == 0 {
                let rho = CdgaMorphism::new(model.clone(), h.algebra().clone(), rho_images.clone())?;
                let hspace = h.algebra().space(k + 1)?;
                let mut images = Vec::with_capacity(cols.len());
                for &c in &cols {
                    images.push(hspace.coords(&rho.apply(&space.basis_element(c))?)?);
                }
                RatMatrix::from_columns(hspace.dim(), &images).kernel_basis()
            } else {
                let sub: Vec<SparseVec> = cols.iter().map(|&c| dmat.column(c)).collect();
                RatMatrix::from_columns(dmat.rows(), &sub).kernel_basis()
            };
            let mut reduced = Echelon::new();
            for c in (0..prev_mons.len()).filter(|&c| lower_of(&lower, &prev_mons[c]) == i + 1) {
                reduced.insert(&din.column(c));
            }
            for v in kernel {
                let full: SparseVec = v.into_iter().map(|(j, x)| (cols[j], x)).collect();
                if reduced.insert(&full) {
                    killers.push((i + 1, space.element(&full)));
                }
            }
        }
        for (li, dz) in killers {
            if counters.len() <= li as usize {
                counters.resize(li as usize + 1, 0);
            }
            counters[li as usize] += 1;
            let mut name = killer_name(li, counters[li as usize]);
            while gens.lookup(&name).is_ok() || hg.lookup(&name).is_ok() {
                name.push('\'');
            }
            gens.push(name, k)?;
            d.push(dz);
            lower.push(li);
            rho_images.push(Polynomial::zero());
        }
    }
    let cdga = Cdga::new(gens, d, vec![], top)?;
    let rho = CdgaMorphism::new(cdga.clone(), h.algebra().clone(), rho_images)?;
    rho.check().map_err(|v| Error::Invalid(v.to_string()))?;
    if let Some(k) = rho.quasi_iso_report(n)?.first_failure() {
        return Err(Error::Invalid(format!("bigraded model is not a quasi-isomorphism in degree {k}")));
    }
    let structural = BigradedModel::structural(cdga, lower, None)?;
    Ok(BigradedModel { rho, ..structural })
}

fn killer_name(lower: u32, k: usize) -> String {
    match lower {
        1 => format!("y{k}"),
        _ => format!("y{lower}_{k}"),
    }
}

/// `Λ(Z ⊕ Z̄)` with `(Z̄)_i = (Z_i)‾`, built by the suspension model; `ρ`
/// is recomputed onto the new `H_0`.
pub fn barred_bigraded_model(b: &BigradedModel, p: u32) -> Result<BigradedModel> {
    let s = suspension_model(&b.cdga, p)?;
    let lower: Vec<u32> = b.lower.iter().chain(b.lower.iter()).copied().collect();
    BigradedModel::structural(s.cdga, lower, Some(BarData { p, base: s.base }))
}

/// Outcome of the bar-linearity obstruction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BarObstruction {
    Obstructed { witness: String, degree: u32, lower: u32 },
    Absent(String),
}

pub(crate) fn bar_obstruction_of(b: &BigradedModel) -> BarObstruction {
    let Some(bar) = b.bar else {
        return BarObstruction::Absent("not a barred model".into());
    };
    let g = b.cdga.gens();
    for i in 0..g.len() {
        let want = u32::from(b.is_barred(i));
        if let Some((m, _)) = b.cdga.differential(i).terms().find(|(m, _)| b.bar_length(m) != want) {
            return BarObstruction::Absent(format!(
                "d({}) has a term {} of bar length {}",
                g.name(i),
                m.fmt_with(g),
                b.bar_length(m)
            ));
        }
    }
    if bar.p % 2 == 0 {
        return BarObstruction::Absent(format!(
            "p = {} is even: the obstruction argument needs odd p and is not applied",
            bar.p
        ));
    }
    let mut candidates: Vec<usize> =
        (bar.base..g.len()).filter(|&i| !g.is_odd(i) && b.lower[i] > 0).collect();
    candidates.sort_by_key(|&i| (g.degree(i), i));
    match candidates.first() {
        Some(&w) => BarObstruction::Obstructed { witness: g.name(w).to_string(), degree: g.degree(w), lower: b.lower[w] },
        None => BarObstruction::Absent("no even barred generator of positive lower degree".into()),
    }
}

/// Non-formality from bar-linearity: every `d z` is bar-free, every
/// `d z̄` is bar-linear, so no `dw' = z̄^n + Ω` with `n ≥ 2` can exist for
/// an even `z̄` of positive lower degree. Only applied for odd `p`.
pub fn bar_obstruction(b: &BigradedModel) -> Result<Option<FormalityVerdict>> {
    let Some(bar) = b.bar else {
        return Err(Error::Invalid("bar_obstruction needs a barred model".into()));
    };
    match bar_obstruction_of(b) {
        BarObstruction::Obstructed { witness, .. } => {
            let base_gens = GeneratorSet::new((0..bar.base).map(|i| {
                (b.cdga.gens().name(i).to_string(), b.cdga.gens().degree(i))
            }))?;
            let unbarred =
                Cdga::new(base_gens, b.cdga.differentials()[..bar.base].to_vec(), vec![], shift_up(b.cdga.truncation(), bar.p))?;
            Ok(Some(FormalityVerdict::non_formal(Certificate::BarLinearityObstruction {
                model: AlgebraText::of(&b.cdga),
                lower: b.lower.clone(),
                p: bar.p,
                base: bar.base,
                unbarred: AlgebraText::of(&unbarred),
                witness,
            })))
        }
        BarObstruction::Absent(_) => Ok(None),
    }
}

fn shift_up(bound: u32, by: u32) -> u32 {
    if bound == COMPLETE {
        COMPLETE
    } else {
        bound + by
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lemma36Status {
    /// `d(w_prime) = w^n + omega` with `omega` free of `w^n`.
    Witnessed { w_prime: String, n: u32, omega: String },
    Missing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma36Entry {
    pub w: String,
    pub degree: u32,
    /// The powers `n ≥ 2` with `n|w| ≤ N` that were searched.
    pub powers: Vec<u32>,
    pub status: Lemma36Status,
}

/// For each even generator `w` of positive lower degree with `2|w| ≤ N`,
/// searches the odd generators of positive lower degree and degree
/// `n|w| - 1` for a combination `w'` whose differential has `w^n`
/// coefficient 1. Only basis elements are scanned.
pub fn lemma36_scan(b: &BigradedModel, n: u32) -> Result<Vec<Lemma36Entry>> {
    let model = &b.cdga;
    if model.truncation() != COMPLETE && n > model.truncation() {
        return Err(Error::TruncationOverflow { needed: n, bound: model.truncation() });
    }
    let g = model.gens();
    let mut out = Vec::new();
    let mut evens: Vec<usize> = (0..g.len()).filter(|&i| b.lower[i] > 0 && !g.is_odd(i)).collect();
    evens.sort_by_key(|&i| (g.degree(i), i));
    for w in evens {
        let dw = g.degree(w);
        if 2 * dw > n {
            continue;
        }
        let mut entry = Lemma36Entry { w: g.name(w).to_string(), degree: dw, powers: vec![], status: Lemma36Status::Missing };
        let mut k = 2;
        while k * dw <= n {
            entry.powers.push(k);
            let target = power(g, &Polynomial::generator(w), k);
            let (wk, _) = target.terms().next().map(|(m, c)| (m.clone(), c.clone())).expect("even powers are nonzero");
            let cands: Vec<usize> =
                (0..g.len()).filter(|&i| b.lower[i] > 0 && g.is_odd(i) && g.degree(i) == k * dw - 1).collect();
            let row: SparseVec = cands
                .iter()
                .enumerate()
                .filter_map(|(j, &c)| {
                    let x = model.differential(c).coefficient(&wk);
                    (!x.is_zero()).then_some((j, x))
                })
                .collect();
            if row.is_empty() {
                k += 1;
                continue;
            }
            let mat = RatMatrix::from_rows(&[sparse_to_dense(&row, cands.len())]);
            if let Some(x) = mat.solve(&SparseVec::from([(0, Rational::one())]))? {
                let mut w_prime = Polynomial::zero();
                let mut dwp = Polynomial::zero();
                for (&j, c) in &x {
                    w_prime.add_term(Monomial::generator(cands[j]), c.clone());
                    dwp.add_scaled(c, model.differential(cands[j]));
                }
                let omega = dwp.sub(&Polynomial::monomial(wk.clone()));
                entry.status = Lemma36Status::Witnessed {
                    w_prime: w_prime.fmt_with(g),
                    n: k,
                    omega: omega.fmt_with(g),
                };
                break;
            }
            k += 1;
        }
        out.push(entry);
    }
    Ok(out)
}

/// Evidence certificate listing the scanned elements without a witness.
pub fn lemma36_evidence(b: &BigradedModel, n: u32) -> Result<Option<Certificate>> {
    let scan = lemma36_scan(b, n)?;
    let missing: Vec<String> =
        scan.into_iter().filter(|e| e.status == Lemma36Status::Missing).map(|e| e.w).collect();
    if missing.is_empty() {
        return Ok(None);
    }
    Ok(Some(Certificate::Lemma36Missing {
        model: AlgebraText::of(&b.cdga),
        lower: b.lower.clone(),
        missing,
        upto: n,
    }))
}

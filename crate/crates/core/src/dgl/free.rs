use std::collections::{BTreeMap, HashMap};

use num::Zero;

use super::lie::Dgl;
use crate::exactlin::{Echelon, Rational, SparseVec};
use crate::gca::GeneratorSet;
use crate::{koszul_sign, Error, Result};

/// Element of the tensor algebra `T(V)`: words in generator indices.
type Tensor = BTreeMap<Vec<usize>, Rational>;

fn commutator(u: &Tensor, du: u32, v: &Tensor, dv: u32) -> Tensor {
    let s = Rational::from_integer(koszul_sign(du.into(), dv.into()).into());
    let mut out = Tensor::new();
    let mut push = |w: Vec<usize>, c: Rational| {
        let e = out.entry(w).or_insert_with(Rational::zero);
        *e += c;
    };
    for (a, x) in u {
        for (b, y) in v {
            push([a.as_slice(), b.as_slice()].concat(), x * y);
            push([b.as_slice(), a.as_slice()].concat(), -(x * y * &s));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Coordinates of tensors of one degree against a growing word index.
#[derive(Default)]
struct WordIndex {
    index: HashMap<Vec<usize>, usize>,
}

impl WordIndex {
    fn coords(&mut self, t: &Tensor) -> SparseVec {
        let mut v = SparseVec::new();
        for (w, c) in t {
            let next = self.index.len();
            let k = *self.index.entry(w.clone()).or_insert(next);
            v.insert(k, c.clone());
        }
        v
    }
}

/// The free graded Lie algebra `L(V)` on the given generators, realised
/// inside the tensor algebra with the graded commutator, through degree
/// `truncation`. Degree-`n` basis: right-normed brackets `[g, b]` with `g` a
/// generator, kept when linearly independent of earlier ones. Names join
/// the letters with `_`, so `[a,[a,b]]` is `a_a_b`.
pub fn free_lie(gens: &[(&str, u32)], truncation: u32) -> Result<Dgl> {
    let genset = GeneratorSet::new(gens.iter().map(|&(n, d)| (n, d)))?;
    if genset.max_degree() > truncation {
        return Err(Error::TruncationOverflow { needed: genset.max_degree(), bound: truncation });
    }
    let degrees: Vec<u32> = genset.degrees().to_vec();

    // Basis elements: (name, degree, tensor).
    let mut elems: Vec<(String, u32, Tensor)> = Vec::new();
    let mut by_degree: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    let mut echelons: HashMap<u32, (WordIndex, Echelon)> = HashMap::new();

    for n in 1..=truncation {
        let mut candidates: Vec<(String, Tensor)> = Vec::new();
        for g in 0..genset.len() {
            if degrees[g] == n {
                candidates.push((genset.name(g).to_string(), Tensor::from([(vec![g], Rational::from_integer(1.into()))])));
            }
        }
        for g in 0..genset.len() {
            let dg = degrees[g];
            if dg >= n {
                continue;
            }
            let gt = Tensor::from([(vec![g], Rational::from_integer(1.into()))]);
            for &b in by_degree.get(&(n - dg)).map(Vec::as_slice).unwrap_or(&[]) {
                let (ref bname, bd, ref bt) = elems[b];
                let t = commutator(&gt, dg, bt, bd);
                candidates.push((format!("{}_{}", genset.name(g), bname), t));
            }
        }
        let (index, ech) = echelons.entry(n).or_default();
        for (name, t) in candidates {
            let v = index.coords(&t);
            let id = elems.len();
            if ech.insert_with_tag(&v, id) {
                by_degree.entry(n).or_default().push(id);
                elems.push((name, n, t));
            }
        }
    }

    let mut basis = GeneratorSet::default();
    for (name, deg, _) in &elems {
        let mut candidate = name.clone();
        let mut k = 1;
        while basis.lookup(&candidate).is_ok() {
            k += 1;
            candidate = format!("{name}'{k}");
        }
        basis.push(candidate, *deg)?;
    }
    let mut l = Dgl::new(basis, truncation)?;
    for i in 0..elems.len() {
        for j in i..elems.len() {
            let deg = elems[i].1 + elems[j].1;
            if deg > truncation {
                continue;
            }
            let t = commutator(&elems[i].2, elems[i].1, &elems[j].2, elems[j].1);
            if t.is_empty() {
                continue;
            }
            let (index, ech) = echelons.get_mut(&deg).expect("degree within truncation");
            let v = index.coords(&t);
            let (rem, tags) = ech.reduce(&v);
            debug_assert!(rem.is_empty(), "brackets of Lie elements stay in the Lie span");
            if !rem.is_empty() {
                return Err(Error::Invalid("bracket left the spanned Lie subspace".into()));
            }
            l.set_bracket(i, j, tags);
        }
    }
    Ok(l)
}

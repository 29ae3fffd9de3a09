//! Seeded random instances for property tests and benchmarks. Every
//! generator draws only from the supplied RNG, so a fixed seed reproduces
//! the same objects.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dgl::{free_lie, Dgl, FdCdgaModel, TensorModel};
use crate::exactlin::{int, rat, RatMatrix, Rational, SparseVec};
use crate::gca::{monomials_of_degree, Cdga, GeneratorSet, Monomial, Polynomial};
use crate::{Result, COMPLETE};

/// A small nonzero rational: `±k` or `±k/2` with `1 ≤ k ≤ 3`.
pub fn coefficient<R: Rng>(rng: &mut R) -> Rational {
    let k: i64 = rng.gen_range(1..=3);
    let k = if rng.gen_bool(0.5) { -k } else { k };
    if rng.gen_bool(0.25) {
        rat(k, 2)
    } else {
        int(k)
    }
}

/// Random homogeneous polynomial of degree `n` in the generators `allowed`
/// with word length at least `min_len`; zero when no such monomial exists.
pub fn polynomial<R: Rng>(rng: &mut R, gens: &GeneratorSet, allowed: &[usize], n: u32, min_len: u32) -> Polynomial {
    let monos: Vec<Monomial> = monomials_of_degree(gens, n)
        .into_iter()
        .filter(|m| m.word_length() >= min_len && m.support().all(|g| allowed.contains(&g)))
        .collect();
    let mut p = Polynomial::zero();
    if monos.is_empty() {
        return p;
    }
    let first = rng.gen_range(0..monos.len());
    p.add_term(monos[first].clone(), coefficient(rng));
    for (k, m) in monos.iter().enumerate() {
        if k != first && rng.gen_bool(0.4) {
            p.add_term(m.clone(), coefficient(rng));
        }
    }
    p
}

#[derive(Clone, Copy, Debug)]
enum Block {
    OddSphere(u32),
    EvenSphere(u32),
    /// `Λ(u, v)/(u², uv)` with `du = v`, `|u|` even.
    Contractible(u32),
}

impl Block {
    fn top(self) -> u32 {
        match self {
            Block::OddSphere(d) | Block::EvenSphere(d) => d,
            Block::Contractible(d) => d + 1,
        }
    }
}

fn random_block<R: Rng>(rng: &mut R) -> Block {
    match rng.gen_range(0..3) {
        0 => Block::OddSphere(*[1, 3].choose(rng).unwrap()),
        1 => Block::EvenSphere(2),
        _ => Block::Contractible(2),
    }
}

fn product(blocks: &[Block], prefix: &str) -> Result<FdCdgaModel> {
    let mut gens: Vec<(String, u32)> = Vec::new();
    let mut diffs: Vec<(String, String)> = Vec::new();
    let mut rels: Vec<String> = Vec::new();
    for (k, b) in blocks.iter().enumerate() {
        match *b {
            Block::OddSphere(d) => gens.push((format!("{prefix}t{k}"), d)),
            Block::EvenSphere(d) => {
                gens.push((format!("{prefix}t{k}"), d));
                rels.push(format!("{prefix}t{k}^2"));
            }
            Block::Contractible(d) => {
                gens.push((format!("{prefix}u{k}"), d));
                gens.push((format!("{prefix}v{k}"), d + 1));
                diffs.push((format!("{prefix}u{k}"), format!("{prefix}v{k}")));
                rels.push(format!("{prefix}u{k}^2"));
                rels.push(format!("{prefix}u{k}*{prefix}v{k}"));
            }
        }
    }
    let g: Vec<(&str, u32)> = gens.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    let d: Vec<(&str, &str)> = diffs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let r: Vec<&str> = rels.iter().map(String::as_str).collect();
    let cdga = Cdga::from_text(&g, &d, &r, COMPLETE)?;
    FdCdgaModel::new(cdga, blocks.iter().map(|b| b.top()).sum())
}

/// Tensor product of 1 to `max_blocks` small finite CDGAs: odd spheres,
/// `H*(S²)` and contractible pairs `Λ(u, v)/(u², uv)` with `du = v`.
/// Generators are `t{k}`, `u{k}`, `v{k}` for block `k`.
pub fn fd_model<R: Rng>(rng: &mut R, max_blocks: usize) -> FdCdgaModel {
    let n = rng.gen_range(1..=max_blocks.max(1));
    let blocks: Vec<Block> = (0..n).map(|_| random_block(rng)).collect();
    product(&blocks, "").expect("block products are valid finite models")
}

/// Like [`fd_model`], with an odd sphere block whose generator `t0` is
/// returned alongside the model.
pub fn fd_model_with_odd_class<R: Rng>(rng: &mut R, max_blocks: usize) -> (FdCdgaModel, String) {
    let mut blocks = vec![Block::OddSphere(*[1, 3].choose(rng).unwrap())];
    let extra = rng.gen_range(0..max_blocks.max(1));
    blocks.extend((0..extra).map(|_| random_block(rng)));
    (product(&blocks, "").expect("block products are valid finite models"), "t0".into())
}

/// A basis of the degree-`|t|` part complementary to `t`: every other basis
/// monomial plus a random multiple of `t`.
pub fn complement<R: Rng>(rng: &mut R, a: &FdCdgaModel, t: &str) -> Result<Vec<Polynomial>> {
    let alg = a.cdga();
    let ti = alg.gens().lookup(t)?;
    let tp = Polynomial::generator(ti);
    let basis = alg.degree_basis(alg.gens().degree(ti))?;
    Ok(basis
        .into_iter()
        .map(Polynomial::monomial)
        .filter(|m| *m != tp)
        .map(|m| if rng.gen_bool(0.5) { m.add(&tp.scale(&coefficient(rng))) } else { m })
        .collect())
}

/// Free Lie algebra on one to three generators of degree in
/// `min_degree..=min_degree + 2`, truncated somewhere in
/// `3·min_degree..=3·min_degree + 2` so that triple brackets occur.
pub fn free_lie_algebra<R: Rng>(rng: &mut R, min_degree: u32) -> Dgl {
    let n = rng.gen_range(1..=3);
    let names = ["a", "b", "c"];
    let gens: Vec<(&str, u32)> = (0..n).map(|k| (names[k], rng.gen_range(min_degree..=min_degree + 2))).collect();
    let trunc = 3 * min_degree + rng.gen_range(0..=2);
    free_lie(&gens, trunc.max(min_degree + 2)).expect("generator degrees are within the truncation")
}

/// [`free_lie_algebra`] as the finite nilpotent DGL `L/L_{>T}`.
pub fn nilpotent_lie_algebra<R: Rng>(rng: &mut R, min_degree: u32) -> Dgl {
    free_lie_algebra(rng, min_degree).nilpotent_quotient()
}

/// Rewrites `l` in a random basis `e'_i = e_i + Σ c_ji e_j` (j < i of the
/// same degree). The result is isomorphic to `l` and satisfies the same
/// axioms, but its structure constants are generic.
pub fn change_basis<R: Rng>(rng: &mut R, l: &Dgl) -> Dgl {
    let n = l.dim();
    let mut cols: Vec<SparseVec> = (0..n).map(|i| l.unit(i)).collect();
    for i in 0..n {
        for j in 0..i {
            if l.degree(j) == l.degree(i) && rng.gen_bool(0.5) {
                cols[i].insert(j, coefficient(rng));
            }
        }
    }
    let p = RatMatrix::from_columns(n, &cols);
    let to_new = |v: &SparseVec| -> SparseVec { p.solve(v).expect("square").expect("unitriangular, invertible") };
    let mut out = Dgl::new(l.basis().clone(), l.truncation()).expect("same basis and truncation");
    for i in 0..n {
        out.set_d(i, to_new(&l.apply_d(&cols[i])));
        for j in i..n {
            let deg = l.degree(i) + l.degree(j);
            if l.truncation() != COMPLETE && deg > l.truncation() {
                continue;
            }
            if i == j && l.degree(i) % 2 == 0 {
                continue;
            }
            out.set_bracket(i, j, to_new(&l.bracket_vec(&cols[i], &cols[j])));
        }
    }
    out
}

/// A random finite DGL concentrated in degrees `≥ min_degree`: abelian,
/// nilpotent free, or a tensor model `A ⊗ L` (which usually has `d ≠ 0`),
/// in a random basis. Never truncated, so `C*` of it is exact.
pub fn dgl<R: Rng>(rng: &mut R, min_degree: u32) -> Dgl {
    let l = match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(1..=3);
            let basis: Vec<(String, u32)> =
                (0..n).map(|k| (format!("l{k}"), rng.gen_range(min_degree..=min_degree + 2))).collect();
            let b: Vec<(&str, u32)> = basis.iter().map(|(s, d)| (s.as_str(), *d)).collect();
            Dgl::abelian(&b, COMPLETE).expect("distinct names")
        }
        1 => nilpotent_lie_algebra(rng, min_degree),
        _ => {
            let block = random_block(rng);
            let a = product(&[block], "s").expect("single blocks are valid finite models");
            let inner = nilpotent_lie_algebra(rng, min_degree + a.top());
            TensorModel::build(&a, &inner).expect("connectivity holds by construction").dgl().clone()
        }
    };
    change_basis(rng, &l)
}

/// Adds a random multiple of a basis element of the right degree to one
/// bracket of `l`. `None` when no pair of basis elements has room.
pub fn corrupt_bracket<R: Rng>(rng: &mut R, l: &Dgl) -> Option<Dgl> {
    let mut slots = Vec::new();
    for i in 0..l.dim() {
        for j in i..l.dim() {
            if i == j && l.degree(i) % 2 == 0 {
                continue;
            }
            let deg = l.degree(i) + l.degree(j);
            if l.truncation() != COMPLETE && deg > l.truncation() {
                continue;
            }
            for z in l.basis_of_degree(deg) {
                slots.push((i, j, z));
            }
        }
    }
    let &(i, j, z) = slots.choose(rng)?;
    // Keep the table one-sided: edit whichever orientation is stored.
    let stored_reversed = l.bracket_entries().any(|(&k, _)| k == (j, i)) && i != j;
    let (a, b) = if stored_reversed { (j, i) } else { (i, j) };
    let mut v = l.bracket(a, b);
    *v.entry(z).or_insert_with(|| int(0)) += coefficient(rng);
    v.retain(|_, c| *c != int(0));
    let mut out = l.clone();
    out.set_bracket(a, b, v);
    Some(out)
}

/// Random pure Sullivan algebra: even generators `x{k}` of degree 2 or 4
/// and odd generators `y{k}` with `dy` a decomposable polynomial in the
/// `x`'s.
pub fn pure_cdga<R: Rng>(rng: &mut R) -> Cdga {
    pure_cdga_from(rng, 2)
}

/// [`pure_cdga`] with even generators of degree `min_even` or
/// `min_even + 2` (`min_even` even).
pub fn pure_cdga_from<R: Rng>(rng: &mut R, min_even: u32) -> Cdga {
    let nx = rng.gen_range(1..=3);
    let mut gens = GeneratorSet::default();
    for k in 0..nx {
        gens.push(format!("x{k}"), *[min_even, min_even + 2].choose(rng).unwrap()).expect("fresh name");
    }
    let xs: Vec<usize> = (0..nx).collect();
    let ny = rng.gen_range(0..=nx);
    let mut d = vec![Polynomial::zero(); nx];
    for k in 0..ny {
        let target = loop {
            let n = rng.gen_range(2 * min_even..=2 * min_even + 8);
            let p = polynomial(rng, &gens, &xs, n, 2);
            if !p.is_zero() {
                break (n, p);
            }
        };
        gens.push(format!("y{k}"), target.0 - 1).expect("fresh name");
        d.push(target.1);
    }
    Cdga::new(gens, d, Vec::new(), COMPLETE).expect("valid pure algebra")
}

/// Random minimal Sullivan algebra with generators in degrees `≥ 2`:
/// either a pure algebra or `C*` of a free Lie algebra in a random basis.
pub fn minimal_sullivan<R: Rng>(rng: &mut R) -> Cdga {
    if rng.gen_bool(0.5) {
        pure_cdga(rng)
    } else {
        let min = rng.gen_range(1..=3);
        let free = free_lie_algebra(rng, min);
        let l = change_basis(rng, &free);
        crate::cefunctor::ce_cochains(&l).expect("valid DGL").cdga
    }
}

/// Free algebra with zero differential on one to three generators of
/// degree 2 to 5.
pub fn free_zero_differential<R: Rng>(rng: &mut R) -> Cdga {
    let n = rng.gen_range(1..=3);
    let mut gens = GeneratorSet::default();
    for k in 0..n {
        gens.push(format!("z{k}"), rng.gen_range(2..=5)).expect("fresh name");
    }
    Cdga::free(gens, COMPLETE)
}

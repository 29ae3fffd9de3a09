//! Exact linear algebra over Q.
//!
//! Everything downstream (cohomology, kernels, coordinates in quotient
//! spaces) bottoms out here. Matrices are sparse, stored row-major, and all
//! eliminations use a fixed pivot order: columns left to right, and within a
//! column the smallest eligible row. Bases returned from this module are
//! therefore deterministic.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Sparse vector over Q. Absent keys are zero; stored values are never zero.
pub type SparseVec = BTreeMap<usize, Rational>;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `v += c * w`, dropping entries that cancel.
pub fn add_scaled(v: &mut SparseVec, c: &Rational, w: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (&k, x) in w {
        let prod = c * x;
        match v.get_mut(&k) {
            Some(e) => {
                *e += prod;
                if e.is_zero() {
                    v.remove(&k);
                }
            }
            None => {
                v.insert(k, prod);
            }
        }
    }
}

pub fn scaled(v: &SparseVec, c: &Rational) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(&k, x)| (k, x * c)).collect()
}

pub fn dense_to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (&k, x) in v {
        out[k] = x.clone();
    }
    out
}

/// Sparse matrix over Q.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            m.data[i] = dense_to_sparse(r);
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        if dense.is_empty() {
            return Self::zeros(0, 0);
        }
        Self::from_rows(&dense)
    }

    /// Matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (&i, x) in col {
                assert!(i < rows, "column entry out of range");
                m.data[i].insert(j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r].get(&c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, x: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if x.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, x);
        }
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(i, row)| row.get(&c).map(|x| (i, x.clone())))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (&j, x) in row {
                t.data[j].insert(i, x.clone());
            }
        }
        t
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = Rational::zero();
            for (j, x) in row {
                if let Some(y) = v.get(j) {
                    acc += x * y;
                }
            }
            if !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (&k, x) in row {
                add_scaled(&mut acc, x, &other.data[k]);
            }
            out.data[i] = acc;
        }
        Ok(out)
    }

    /// Reduced row echelon form plus the pivot column of each nonzero row.
    fn rref(&self) -> (Vec<SparseVec>, Vec<usize>) {
        let mut rows: Vec<SparseVec> = self.data.clone();
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for col in 0..self.cols {
            if next == rows.len() {
                break;
            }
            let Some(found) = (next..rows.len()).find(|&r| rows[r].contains_key(&col)) else {
                continue;
            };
            rows.swap(next, found);
            let inv = rows[next][&col].recip();
            rows[next] = scaled(&rows[next], &inv);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == next {
                    continue;
                }
                if let Some(c) = row.get(&col).cloned() {
                    add_scaled(row, &-c, &pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
        }
        rows.truncate(next);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column in increasing
    /// column order, each with a 1 in its free column.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let (rows, pivots) = self.rref();
        let pivot_set: HashMap<usize, usize> =
            pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains_key(c)) {
            let mut v = SparseVec::new();
            v.insert(free, Rational::one());
            for (r, &pc) in pivots.iter().enumerate() {
                if let Some(x) = rows[r].get(&free) {
                    v.insert(pc, -x.clone());
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `self * x = b`, free variables set to zero; `None` when
    /// the system is inconsistent.
    pub fn solve(&self, b: &SparseVec) -> Result<Option<SparseVec>> {
        if let Some((&k, _)) = b.iter().next_back() {
            if k >= self.rows {
                return Err(Error::DimensionMismatch { expected: self.rows, found: k + 1 });
            }
        }
        let mut aug = self.clone();
        aug.cols += 1;
        for (&i, x) in b {
            aug.data[i].insert(self.cols, x.clone());
        }
        let (rows, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = SparseVec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            if let Some(v) = rows[r].get(&self.cols) {
                x.insert(pc, v.clone());
            }
        }
        Ok(Some(x))
    }

    /// Dense-vector convenience wrapper around [`RatMatrix::solve`].
    pub fn solve_dense(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        Ok(self.solve(&dense_to_sparse(b))?.map(|x| sparse_to_dense(&x, self.cols)))
    }
}

/// Codimension of the column span of `sub` inside `Q^amb_dim`.
pub fn cokernel_rank(sub: &RatMatrix, amb_dim: usize) -> Result<usize> {
    if sub.rows() != amb_dim {
        return Err(Error::DimensionMismatch { expected: amb_dim, found: sub.rows() });
    }
    Ok(amb_dim - sub.rank())
}

/// Incrementally built reduced echelon basis of a subspace of `Q^n`.
///
/// Each stored row remembers, in `tags`, which combination of tagged input
/// vectors produced it. Reducing a vector against the basis then yields both
/// the remainder and the tag combination that was subtracted, which is how
/// cohomology coordinates and quotient normal forms are computed.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    tags: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Reduces `v` to its normal form modulo the span. Returns the remainder
    /// and the tag combination `t` with `v = remainder + sum(t_i * tagged_i)`
    /// (untagged rows contribute to the remainder's reduction but not to `t`).
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = v.clone();
        let mut tag = SparseVec::new();
        let hits: Vec<(usize, Rational)> = rem
            .iter()
            .filter_map(|(c, x)| self.pivot_row.get(c).map(|&r| (r, x.clone())))
            .collect();
        for (r, coeff) in hits {
            add_scaled(&mut rem, &-coeff.clone(), &self.rows[r]);
            add_scaled(&mut tag, &coeff, &self.tags[r]);
        }
        (rem, tag)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Adds `v` (carrying tag vector `tag`) to the span. Returns `false` and
    /// leaves the basis unchanged if `v` was already in the span.
    pub fn insert_tagged(&mut self, v: &SparseVec, tag: SparseVec) -> bool {
        let (rem, sub) = self.reduce(v);
        let Some((&pivot, lead)) = rem.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        let mut new_tag = tag;
        add_scaled(&mut new_tag, &-Rational::one(), &sub);
        let row = scaled(&rem, &inv);
        let row_tag = scaled(&new_tag, &inv);
        for r in 0..self.rows.len() {
            if let Some(c) = self.rows[r].get(&pivot).cloned() {
                add_scaled(&mut self.rows[r], &-c.clone(), &row);
                add_scaled(&mut self.tags[r], &-c, &row_tag);
            }
        }
        self.pivot_row.insert(pivot, self.rows.len());
        self.rows.push(row);
        self.tags.push(row_tag);
        true
    }

    pub fn insert(&mut self, v: &SparseVec) -> bool {
        self.insert_tagged(v, SparseVec::new())
    }

    /// Inserts `v` tagged with the unit vector `e_tag`.
    pub fn insert_with_tag(&mut self, v: &SparseVec, tag: usize) -> bool {
        let mut t = SparseVec::new();
        t.insert(tag, Rational::one());
        self.insert_tagged(v, t)
    }
}

pub fn is_integer_one(x: &Rational) -> bool {
    x.is_one()
}

pub fn sign_of(x: &Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

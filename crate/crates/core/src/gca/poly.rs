use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num::{BigInt, One, Signed, Zero};

use crate::exactlin::{int, Rational};
use crate::{Error, Result};

/// Ordered, named, positively graded generators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GeneratorSet {
    names: Vec<String>,
    degrees: Vec<u32>,
    index: HashMap<String, usize>,
}

impl GeneratorSet {
    pub fn new<S: Into<String>>(gens: impl IntoIterator<Item = (S, u32)>) -> Result<Self> {
        let mut set = GeneratorSet::default();
        for (name, degree) in gens {
            set.push(name, degree)?;
        }
        Ok(set)
    }

    pub fn push(&mut self, name: impl Into<String>, degree: u32) -> Result<usize> {
        let name = name.into();
        if degree == 0 {
            return Err(Error::InvalidDegree { name, degree: 0 });
        }
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateName(name));
        }
        self.index.insert(name.clone(), self.names.len());
        self.names.push(name);
        self.degrees.push(degree);
        Ok(self.names.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.degrees[i] % 2 == 1
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }
}

/// A basis monomial of a free graded-commutative algebra, stored as an
/// exponent vector in generator order with trailing zeros trimmed. Odd
/// generators never have exponent above one.
///
/// Monomials compare in reverse lexicographic order of their exponent
/// vectors, so `x1^2 < x1*x2 < x2^2`; degree bases are listed in this order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(mut e: Vec<u32>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of letters counted with multiplicity.
    pub fn word_length(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn degree(&self, gens: &GeneratorSet) -> u32 {
        self.0.iter().enumerate().map(|(i, &e)| e * gens.degree(i)).sum()
    }

    /// Letters in generator order, repeated according to exponent.
    pub fn word(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat(i).take(e as usize)).collect()
    }

    /// Generator indices that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// Relabels generators by `map[old] = new`.
    pub fn reindex(&self, map: &[usize]) -> Monomial {
        let mut e = Vec::new();
        for (i, &k) in self.0.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let j = map[i];
            if e.len() <= j {
                e.resize(j + 1, 0);
            }
            e[j] = k;
        }
        Monomial::from_exponents(e)
    }

    pub fn fmt_with(&self, gens: &GeneratorSet) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(gens.name(i).to_string()),
                _ => parts.push(format!("{}^{}", gens.name(i), e)),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            let (a, b) = (self.exponent(i), other.exponent(i));
            if a != b {
                return b.cmp(&a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sorts a word of generator indices into a monomial, accumulating the
/// Koszul sign of every transposition of two odd letters. A repeated odd
/// letter gives sign 0.
pub fn normalize_word(gens: &GeneratorSet, word: &[usize]) -> Result<(i32, Monomial)> {
    for &g in word {
        if g >= gens.len() {
            return Err(Error::UnknownGenerator(format!("#{g}")));
        }
    }
    let odd: Vec<usize> = word.iter().copied().filter(|&g| gens.is_odd(g)).collect();
    let mut inversions = 0usize;
    for i in 0..odd.len() {
        for j in i + 1..odd.len() {
            match odd[i].cmp(&odd[j]) {
                Ordering::Equal => return Ok((0, Monomial::one())),
                Ordering::Greater => inversions += 1,
                Ordering::Less => {}
            }
        }
    }
    let mut e = vec![0u32; gens.len()];
    for &g in word {
        e[g] += 1;
    }
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Ok((sign, Monomial::from_exponents(e)))
}

/// Product of two monomials with its Koszul sign, or `None` if an odd
/// generator would be squared.
pub fn mul_monomials(gens: &GeneratorSet, a: &Monomial, b: &Monomial) -> Option<(i32, Monomial)> {
    if a.is_one() {
        return Some((1, b.clone()));
    }
    if b.is_one() {
        return Some((1, a.clone()));
    }
    let n = a.0.len().max(b.0.len());
    let mut e = vec![0u32; n];
    let mut swaps = 0usize;
    // Number of odd letters of `a` with index greater than the current one.
    let mut odd_a_above: usize = (0..a.0.len()).filter(|&i| a.0[i] > 0 && gens.is_odd(i)).count();
    for (i, slot) in e.iter_mut().enumerate() {
        let (x, y) = (a.exponent(i), b.exponent(i));
        if gens.is_odd(i) {
            if x > 0 {
                odd_a_above -= 1;
            }
            if x > 0 && y > 0 {
                return None;
            }
            if y > 0 {
                swaps += odd_a_above;
            }
        }
        *slot = x + y;
    }
    Some((if swaps % 2 == 0 { 1 } else { -1 }, Monomial::from_exponents(e)))
}

/// Enumerates all monomials of total degree `n` in reverse lexicographic
/// order. Exhaustive; no truncation checks.
pub fn monomials_of_degree(gens: &GeneratorSet, n: u32) -> Vec<Monomial> {
    fn go(gens: &GeneratorSet, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        if i == gens.len() {
            return;
        }
        let d = gens.degree(i);
        let mut max = left / d;
        if gens.is_odd(i) {
            max = max.min(1);
        }
        for e in (0..=max).rev() {
            cur[i] = e;
            go(gens, i + 1, left - e * d, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; gens.len()];
    go(gens, 0, n, &mut cur, &mut out);
    out
}

/// Exact linear combination of monomials. Canonical: no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Rational::one())
    }

    pub fn generator(i: usize) -> Self {
        Self::monomial(Monomial::generator(i))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &Polynomial) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), c * x);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        p.add_scaled(&Rational::one(), other);
        p
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        p.add_scaled(&-Rational::one(), other);
        p
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Rational::one())
    }

    /// Degree if homogeneous, `None` for zero.
    pub fn degree(&self, gens: &GeneratorSet) -> Result<Option<u32>> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.degree(gens);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => {
                    return Err(Error::Inhomogeneous(self.fmt_with(gens)));
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.0.len().checked_sub(1)).max()
    }

    /// Lowest word length among terms (0 for a constant term).
    pub fn min_word_length(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.word_length()).min()
    }

    pub fn has_linear_part(&self) -> bool {
        self.terms.keys().any(|m| m.word_length() == 1)
    }

    pub fn reindex(&self, map: &[usize]) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in &self.terms {
            p.add_term(m.reindex(map), c.clone());
        }
        p
    }

    /// Keeps only terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn fmt_with(&self, gens: &GeneratorSet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.fmt_with(gens);
            if m.is_one() {
                let _ = write!(out, "{a}");
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                let _ = write!(out, "{a}*{mono}");
            }
        }
        out
    }

    /// Parses `coef*mon + ...` where a monomial is `id*id^k*...`. Words are
    /// normalized with the Koszul sign rule, so `b*a` means `-a*b` for odd
    /// `a`, `b`.
    pub fn parse(gens: &GeneratorSet, text: &str) -> Result<Polynomial> {
        Parser { src: text.as_bytes(), pos: 0, gens }.polynomial()
    }
}

/// Bilinear extension of word concatenation with the Koszul sign rule.
pub fn multiply(gens: &GeneratorSet, p: &Polynomial, q: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    for (a, x) in p.terms() {
        for (b, y) in q.terms() {
            if let Some((s, m)) = mul_monomials(gens, a, b) {
                let c = x * y;
                out.add_term(m, if s < 0 { -c } else { c });
            }
        }
    }
    out
}

pub fn power(gens: &GeneratorSet, p: &Polynomial, k: u32) -> Polynomial {
    let mut acc = Polynomial::one();
    for _ in 0..k {
        acc = multiply(gens, &acc, p);
    }
    acc
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    gens: &'a GeneratorSet,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at column {} in `{}`", self.pos + 1, String::from_utf8_lossy(self.src)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        let mut sign = Rational::one();
        match self.peek() {
            Some(b'-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            None => return Err(self.err("expected polynomial")),
            _ => {}
        }
        loop {
            let t = self.term()?;
            out.add_scaled(&sign, &t);
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => sign = Rational::one(),
                Some(b'-') => sign = -Rational::one(),
                Some(_) => return Err(self.err("expected `+`, `-` or end of input")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut coeff = Rational::one();
        let mut word: Vec<usize> = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= self.number()?,
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let g = self.gens.lookup(&self.ident())?;
                    let mut k = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        k = self.integer()?;
                    }
                    for _ in 0..k {
                        word.push(g);
                    }
                }
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.polynomial_until_paren()?;
                    return Ok(Polynomial::zero().add(&inner).scale(&coeff).mul_word(self.gens, &word));
                }
                _ => return Err(self.err("expected coefficient or generator")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
                continue;
            }
            break;
        }
        let (s, m) = normalize_word(self.gens, &word)?;
        Ok(Polynomial::term(m, coeff * int(s as i64)))
    }

    fn polynomial_until_paren(&mut self) -> Result<Polynomial> {
        let start = self.pos;
        let mut depth = 1;
        while self.pos < self.src.len() {
            match self.src[self.pos] {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                _ => {}
            }
            self.pos += 1;
        }
        if depth != 0 {
            return Err(self.err("unbalanced parenthesis"));
        }
        let inner = std::str::from_utf8(&self.src[start..self.pos]).map_err(|_| self.err("bad utf-8"))?;
        self.pos += 1;
        Polynomial::parse(self.gens, inner)
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'.' || c == b'\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn integer(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("expected integer"))
    }

    fn number(&mut self) -> Result<Rational> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let num: BigInt = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("bad number"))?;
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let s = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let den: BigInt = std::str::from_utf8(&self.src[s..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("bad denominator"))?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }
}

impl Polynomial {
    /// `word * self`, for the parenthesised form `a*(b + c)`.
    fn mul_word(&self, gens: &GeneratorSet, word: &[usize]) -> Polynomial {
        if word.is_empty() {
            return self.clone();
        }
        let (s, m) = normalize_word(gens, word).expect("word letters validated by parser");
        if s == 0 {
            return Polynomial::zero();
        }
        multiply(gens, &Polynomial::term(m, int(s as i64)), self)
    }
}

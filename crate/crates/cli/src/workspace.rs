//! The plain-text workspace format.
//!
//! ```text
//! # comment
//! algebra Y
//! generator x1 degree 4
//! generator x2 degree 4
//! generator y degree 7
//! d y = x1*x2
//!
//! dgl L
//! basis l degree 3
//!
//! problem section4 X=S2 Y=Y p=2
//! ```
//!
//! Algebras may also carry `relation <polynomial>` lines (finite models of
//! `X`) and either block a `truncation <n>` line. DGL blocks take
//! `bracket [a,b] = <combination>` and `d a = <combination>`. `S<p>` names
//! the sphere model `Λ(t)/(t²)` or `Λ(t)` without a declaration.
//!
//! A morphism between two algebras declared earlier:
//!
//! ```text
//! morphism incl A -> B
//! map a = b1*b2
//! ```
//!
//! Every generator of the source needs a `map` line.

use std::collections::BTreeMap;
use std::fmt;

use rht_core::dgl::FdCdgaModel;
use rht_core::mapmodel::sphere_model;
use rht_core::{Cdga, CdgaMorphism, Dgl, GeneratorSet, MapSpaceProblem, Polynomial, YModel, COMPLETE};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Reference to a model of `X` or `Y` inside a problem line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelRef {
    Sphere(u32),
    Named(String),
}

impl fmt::Display for ModelRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelRef::Sphere(p) => write!(f, "S{p}"),
            ModelRef::Named(n) => f.write_str(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemDecl {
    pub name: String,
    pub x: ModelRef,
    pub y: ModelRef,
    pub p: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Algebra { name: String, cdga: Cdga },
    Dgl { name: String, dgl: Dgl },
    Morphism { name: String, source: String, target: String, morphism: CdgaMorphism },
    Problem(ProblemDecl),
}

impl Item {
    pub fn name(&self) -> &str {
        match self {
            Item::Algebra { name, .. } | Item::Dgl { name, .. } | Item::Morphism { name, .. } => name,
            Item::Problem(p) => &p.name,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Workspace {
    pub items: Vec<Item>,
}

/// A located word of a line.
#[derive(Debug, Clone, Copy)]
struct Tok<'a> {
    col: usize,
    text: &'a str,
}

fn tokens(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Tok { col: s + 1, text: &line[s..i] });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Tok { col: s + 1, text: &line[s..] });
    }
    out
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '\''))
}

fn sphere_ref(s: &str) -> Option<u32> {
    s.strip_prefix('S').and_then(|d| d.parse().ok()).filter(|&p| p > 0)
}

#[derive(Default)]
struct Block {
    kind: BlockKind,
    name: String,
    line: usize,
    gens: Vec<(String, i64, usize, usize)>,
    diffs: Vec<(String, usize, String, usize, usize)>,
    relations: Vec<(String, usize, usize)>,
    brackets: Vec<(String, String, usize, String, usize, usize)>,
    truncation: Option<u32>,
    /// Source and target names of a morphism block, with their columns.
    ends: Option<((String, usize), (String, usize))>,
    maps: Vec<(String, usize, String, usize, usize)>,
}

#[derive(Default, PartialEq, Eq, Clone, Copy)]
enum BlockKind {
    #[default]
    Algebra,
    Dgl,
    Morphism,
}

struct Parser {
    items: Vec<Item>,
    block: Option<Block>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// Column just past the `=` of a line, where the right-hand side begins.
fn rhs(raw: &str, line: usize) -> Result<(String, usize), ParseError> {
    let eq = raw.find('=').ok_or_else(|| err(line, raw.len() + 1, "expected `=`"))?;
    let text = raw[eq + 1..].trim();
    if text.is_empty() {
        return Err(err(line, eq + 2, "expected a polynomial after `=`"));
    }
    Ok((text.to_string(), eq + 2))
}

fn expect<'a>(toks: &[Tok<'a>], k: usize, line: usize, raw: &str, what: &str) -> Result<Tok<'a>, ParseError> {
    toks.get(k).copied().ok_or_else(|| err(line, raw.trim_end().len() + 1, format!("expected {what}")))
}

fn ident<'a>(toks: &[Tok<'a>], k: usize, line: usize, raw: &str, what: &str) -> Result<Tok<'a>, ParseError> {
    let t = expect(toks, k, line, raw, what)?;
    if !is_ident(t.text) {
        return Err(err(line, t.col, format!("expected {what}, found `{}`", t.text)));
    }
    Ok(t)
}

fn keyword(toks: &[Tok<'_>], k: usize, word: &str, line: usize, raw: &str) -> Result<(), ParseError> {
    let t = expect(toks, k, line, raw, &format!("`{word}`"))?;
    if t.text != word {
        return Err(err(line, t.col, format!("expected `{word}`, found `{}`", t.text)));
    }
    Ok(())
}

fn degree(toks: &[Tok<'_>], k: usize, line: usize, raw: &str) -> Result<i64, ParseError> {
    let t = expect(toks, k, line, raw, "a degree")?;
    let d: i64 = t.text.parse().map_err(|_| err(line, t.col, format!("expected an integer degree, found `{}`", t.text)))?;
    if d <= 0 {
        return Err(err(line, t.col, format!("degree must be positive, found {d}")));
    }
    Ok(d)
}

fn no_more(toks: &[Tok<'_>], k: usize, line: usize) -> Result<(), ParseError> {
    match toks.get(k) {
        Some(t) => Err(err(line, t.col, format!("unexpected `{}`", t.text))),
        None => Ok(()),
    }
}

impl Parser {
    fn taken(&self, name: &str) -> bool {
        self.items.iter().any(|i| i.name() == name) || self.block.as_ref().is_some_and(|b| b.name == name)
    }

    fn finish_block(&mut self) -> Result<(), ParseError> {
        let Some(b) = self.block.take() else { return Ok(()) };
        let item = match b.kind {
            BlockKind::Algebra => Item::Algebra { name: b.name.clone(), cdga: build_algebra(&b)? },
            BlockKind::Dgl => Item::Dgl { name: b.name.clone(), dgl: build_dgl(&b)? },
            BlockKind::Morphism => build_morphism(&b, &self.items)?,
        };
        self.items.push(item);
        Ok(())
    }

    fn line(&mut self, n: usize, raw: &str) -> Result<(), ParseError> {
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(head) = toks.first() else { return Ok(()) };
        match head.text {
            "algebra" | "dgl" => {
                self.finish_block()?;
                let name = ident(&toks, 1, n, content, "a name")?;
                no_more(&toks, 2, n)?;
                if self.taken(name.text) || sphere_ref(name.text).is_some() {
                    return Err(err(n, name.col, format!("duplicate or reserved name `{}`", name.text)));
                }
                let kind = if head.text == "dgl" { BlockKind::Dgl } else { BlockKind::Algebra };
                self.block = Some(Block { kind, name: name.text.into(), line: n, ..Block::default() });
            }
            "morphism" => {
                self.finish_block()?;
                let name = ident(&toks, 1, n, content, "a name")?;
                let source = ident(&toks, 2, n, content, "a source algebra")?;
                keyword(&toks, 3, "->", n, content)?;
                let target = ident(&toks, 4, n, content, "a target algebra")?;
                no_more(&toks, 5, n)?;
                if self.taken(name.text) || sphere_ref(name.text).is_some() {
                    return Err(err(n, name.col, format!("duplicate or reserved name `{}`", name.text)));
                }
                let ends = Some(((source.text.into(), source.col), (target.text.into(), target.col)));
                self.block = Some(Block { kind: BlockKind::Morphism, name: name.text.into(), line: n, ends, ..Block::default() });
            }
            "map" => {
                let b = self.open_block(n, head, BlockKind::Morphism)?;
                let id = ident(&toks, 1, n, content, "a generator name")?;
                keyword(&toks, 2, "=", n, content)?;
                let (text, col) = rhs(content, n)?;
                if b.maps.iter().any(|m| m.0 == id.text) {
                    return Err(err(n, id.col, format!("duplicate map for `{}`", id.text)));
                }
                b.maps.push((id.text.into(), id.col, text, n, col));
            }
            "generator" | "basis" => {
                let want = if head.text == "generator" { BlockKind::Algebra } else { BlockKind::Dgl };
                let b = self.open_block(n, head, want)?;
                let id = ident(&toks, 1, n, content, "a generator name")?;
                keyword(&toks, 2, "degree", n, content)?;
                let d = degree(&toks, 3, n, content)?;
                no_more(&toks, 4, n)?;
                if b.gens.iter().any(|g| g.0 == id.text) {
                    return Err(err(n, id.col, format!("duplicate generator `{}`", id.text)));
                }
                b.gens.push((id.text.into(), d, n, id.col));
            }
            "d" => {
                let b = self
                    .block
                    .as_mut()
                    .filter(|b| b.kind != BlockKind::Morphism)
                    .ok_or_else(|| err(n, head.col, "`d` outside an algebra or dgl block"))?;
                let id = ident(&toks, 1, n, content, "a generator name")?;
                keyword(&toks, 2, "=", n, content)?;
                let (text, col) = rhs(content, n)?;
                b.diffs.push((id.text.into(), id.col, text, n, col));
            }
            "relation" => {
                let b = self.open_block(n, head, BlockKind::Algebra)?;
                let text = content[head.col - 1 + head.text.len()..].trim();
                if text.is_empty() {
                    return Err(err(n, content.trim_end().len() + 1, "expected a polynomial"));
                }
                b.relations.push((text.into(), n, head.col + head.text.len() + 1));
            }
            "bracket" => {
                let b = self.open_block(n, head, BlockKind::Dgl)?;
                let rest = &content[head.col - 1 + head.text.len()..];
                let offset = head.col + head.text.len();
                let open = rest.find('[').ok_or_else(|| err(n, offset, "expected `[a,b]`"))?;
                let close = rest.find(']').ok_or_else(|| err(n, offset + open, "expected `]`"))?;
                let inner: Vec<&str> = rest[open + 1..close].split(',').map(str::trim).collect();
                let [x, y] = inner[..] else {
                    return Err(err(n, offset + open + 1, "expected two names inside `[...]`"));
                };
                if !is_ident(x) || !is_ident(y) {
                    return Err(err(n, offset + open + 1, "expected two names inside `[...]`"));
                }
                let (text, col) = rhs(content, n)?;
                b.brackets.push((x.into(), y.into(), offset + open + 1, text, n, col));
            }
            "truncation" => {
                let b = self
                    .block
                    .as_mut()
                    .filter(|b| b.kind != BlockKind::Morphism)
                    .ok_or_else(|| err(n, head.col, "`truncation` outside an algebra or dgl block"))?;
                let d = degree(&toks, 1, n, content)?;
                no_more(&toks, 2, n)?;
                b.truncation = Some(d as u32);
            }
            "problem" => {
                self.finish_block()?;
                let name = ident(&toks, 1, n, content, "a problem name")?;
                if self.taken(name.text) {
                    return Err(err(n, name.col, format!("duplicate name `{}`", name.text)));
                }
                let mut x = None;
                let mut y = None;
                let mut p = None;
                for t in &toks[2..] {
                    let (key, val) = t.text.split_once('=').ok_or_else(|| err(n, t.col, format!("expected `X=`, `Y=` or `p=`, found `{}`", t.text)))?;
                    let vcol = t.col + key.len() + 1;
                    match key {
                        "X" | "Y" => {
                            let r = if let Some(d) = sphere_ref(val) {
                                ModelRef::Sphere(d)
                            } else if is_ident(val) {
                                ModelRef::Named(val.into())
                            } else {
                                return Err(err(n, vcol, format!("expected a model name, found `{val}`")));
                            };
                            if key == "X" { x = Some(r) } else { y = Some(r) }
                        }
                        "p" => {
                            let d: u32 = val.parse().ok().filter(|&d| d > 0).ok_or_else(|| err(n, vcol, format!("expected a positive integer, found `{val}`")))?;
                            p = Some(d);
                        }
                        _ => return Err(err(n, t.col, format!("expected `X=`, `Y=` or `p=`, found `{}`", t.text))),
                    }
                }
                let end = content.trim_end().len() + 1;
                let decl = ProblemDecl {
                    name: name.text.into(),
                    x: x.ok_or_else(|| err(n, end, "expected `X=<model>`"))?,
                    y: y.ok_or_else(|| err(n, end, "expected `Y=<model>`"))?,
                    p: p.ok_or_else(|| err(n, end, "expected `p=<n>`"))?,
                };
                self.items.push(Item::Problem(decl));
            }
            other => {
                return Err(err(
                    n,
                    head.col,
                    format!("unknown keyword `{other}`; expected algebra, dgl, morphism, generator, basis, d, relation, bracket, truncation, map or problem"),
                ))
            }
        }
        Ok(())
    }

    fn open_block(&mut self, n: usize, head: &Tok<'_>, want: BlockKind) -> Result<&mut Block, ParseError> {
        match self.block.as_mut() {
            Some(b) if b.kind == want => Ok(b),
            _ => {
                let block = match want {
                    BlockKind::Algebra => "an algebra",
                    BlockKind::Dgl => "a dgl",
                    BlockKind::Morphism => "a morphism",
                };
                Err(err(n, head.col, format!("`{}` outside {block} block", head.text)))
            }
        }
    }
}

fn genset(b: &Block) -> Result<GeneratorSet, ParseError> {
    let mut g = GeneratorSet::default();
    for (name, d, line, col) in &b.gens {
        g.push(name.clone(), *d as u32).map_err(|e| err(*line, *col, e.to_string()))?;
    }
    Ok(g)
}

fn build_algebra(b: &Block) -> Result<Cdga, ParseError> {
    let gens = genset(b)?;
    let mut d = vec![Polynomial::zero(); gens.len()];
    for (name, id_col, text, line, col) in &b.diffs {
        let i = gens.lookup(name).map_err(|_| err(*line, *id_col, format!("unknown generator `{name}`")))?;
        d[i] = Polynomial::parse(&gens, text).map_err(|e| err(*line, *col, e.to_string()))?;
    }
    let mut rels = Vec::new();
    for (text, line, col) in &b.relations {
        rels.push(Polynomial::parse(&gens, text).map_err(|e| err(*line, *col, e.to_string()))?);
    }
    let cdga = Cdga::new(gens, d, rels, b.truncation.unwrap_or(COMPLETE)).map_err(|e| err(b.line, 1, e.to_string()))?;
    cdga.check().map_err(|v| err(b.line, 1, format!("algebra {} is invalid: {v}", b.name)))?;
    Ok(cdga)
}

fn build_dgl(b: &Block) -> Result<Dgl, ParseError> {
    let gens = genset(b)?;
    let mut l = Dgl::new(gens, b.truncation.unwrap_or(COMPLETE)).map_err(|e| err(b.line, 1, e.to_string()))?;
    let index = |name: &str, line: usize, col: usize| {
        l.lookup(name).map_err(|_| err(line, col, format!("unknown basis element `{name}`")))
    };
    let mut brackets = Vec::new();
    for (x, y, name_col, text, line, col) in &b.brackets {
        let (i, j) = (index(x, *line, *name_col)?, index(y, *line, *name_col)?);
        brackets.push((i, j, l.parse_combination(text).map_err(|e| err(*line, *col, e.to_string()))?));
    }
    let mut diffs = Vec::new();
    for (x, id_col, text, line, col) in &b.diffs {
        let i = index(x, *line, *id_col)?;
        diffs.push((i, l.parse_combination(text).map_err(|e| err(*line, *col, e.to_string()))?));
    }
    for (i, j, v) in brackets {
        l.set_bracket(i, j, v);
    }
    for (i, v) in diffs {
        l.set_d(i, v);
    }
    l.validate().map_err(|v| err(b.line, 1, format!("dgl {} is invalid: {v}", b.name)))?;
    Ok(l)
}

fn build_morphism(b: &Block, items: &[Item]) -> Result<Item, ParseError> {
    let ((source, scol), (target, tcol)) = b.ends.clone().expect("morphism blocks record their ends");
    let find = |name: &str, col: usize| {
        items
            .iter()
            .find_map(|i| match i {
                Item::Algebra { name: n, cdga } if n == name => Some(cdga.clone()),
                _ => None,
            })
            .ok_or_else(|| err(b.line, col, format!("`{name}` does not name an algebra declared above")))
    };
    let (a, t) = (find(&source, scol)?, find(&target, tcol)?);
    let mut images = vec![None; a.gens().len()];
    for (name, id_col, text, line, col) in &b.maps {
        let i = a.gens().lookup(name).map_err(|_| err(*line, *id_col, format!("`{name}` is not a generator of {source}")))?;
        images[i] = Some(Polynomial::parse(t.gens(), text).map_err(|e| err(*line, *col, e.to_string()))?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, im)| im.ok_or_else(|| err(b.line, 1, format!("no `map` line for generator `{}`", a.gens().name(i)))))
        .collect::<Result<Vec<_>, _>>()?;
    let morphism = CdgaMorphism::new(a, t, images).map_err(|e| err(b.line, 1, e.to_string()))?;
    morphism.check().map_err(|v| err(b.line, 1, format!("morphism {} is invalid: {v}", b.name)))?;
    Ok(Item::Morphism { name: b.name.clone(), source, target, morphism })
}

/// Top degree of a finite algebra: the last nonzero degree before a gap of
/// `max generator degree` zero degrees. `None` if none is found below 512.
pub fn top_degree(a: &Cdga) -> Option<u32> {
    let window = a.gens().max_degree().max(1);
    let mut last = 0;
    for n in 0..512 {
        if a.dim(n).ok()? > 0 {
            last = n;
        } else if n >= last + window {
            return Some(last);
        }
    }
    None
}

impl Workspace {
    pub fn parse(text: &str) -> Result<Workspace, ParseError> {
        let mut p = Parser { items: Vec::new(), block: None };
        for (k, raw) in text.lines().enumerate() {
            p.line(k + 1, raw)?;
        }
        p.finish_block()?;
        let ws = Workspace { items: p.items };
        ws.resolve_all(text)?;
        Ok(ws)
    }

    fn resolve_all(&self, text: &str) -> Result<(), ParseError> {
        for item in &self.items {
            if let Item::Problem(decl) = item {
                let line = text
                    .lines()
                    .position(|l| tokens(l).get(1).is_some_and(|t| t.text == decl.name) && l.trim_start().starts_with("problem"))
                    .map_or(0, |k| k + 1);
                self.problem(&decl.name).map_err(|m| err(line, 1, m))?;
            }
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.name() == name)
    }

    pub fn algebra(&self, name: &str) -> Option<&Cdga> {
        match self.get(name) {
            Some(Item::Algebra { cdga, .. }) => Some(cdga),
            _ => None,
        }
    }

    pub fn problems(&self) -> impl Iterator<Item = &ProblemDecl> {
        self.items.iter().filter_map(|i| match i {
            Item::Problem(p) => Some(p),
            _ => None,
        })
    }

    fn x_model(&self, r: &ModelRef) -> Result<FdCdgaModel, String> {
        match r {
            ModelRef::Sphere(p) => sphere_model(*p).map_err(|e| e.to_string()),
            ModelRef::Named(n) => {
                let a = self.algebra(n).ok_or_else(|| format!("X={n} does not name an algebra"))?;
                let top = top_degree(a).ok_or_else(|| format!("algebra {n} is not finite-dimensional"))?;
                FdCdgaModel::new(a.clone(), top).map_err(|e| e.to_string())
            }
        }
    }

    fn y_model(&self, r: &ModelRef) -> Result<YModel, String> {
        match r {
            ModelRef::Sphere(p) => Err(format!("Y=S{p}: spheres are only built in as X models")),
            ModelRef::Named(n) => match self.get(n) {
                Some(Item::Algebra { cdga, .. }) => Ok(YModel::Sullivan(cdga.clone())),
                Some(Item::Dgl { dgl, .. }) => Ok(YModel::Lie(dgl.clone())),
                _ => Err(format!("Y={n} does not name an algebra or dgl")),
            },
        }
    }

    /// Resolves a problem declaration; `p` must be the top degree of `X`.
    pub fn problem(&self, name: &str) -> Result<MapSpaceProblem, String> {
        let Some(Item::Problem(decl)) = self.get(name) else {
            return Err(format!("no problem named {name}"));
        };
        let x = self.x_model(&decl.x)?;
        if x.top() != decl.p {
            return Err(format!("p={} but X={} has top degree {}", decl.p, decl.x, x.top()));
        }
        Ok(MapSpaceProblem::new(name, x, self.y_model(&decl.y)?))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, item) in self.items.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            match item {
                Item::Algebra { name, cdga } => out.push_str(&algebra_text(name, cdga)),
                Item::Dgl { name, dgl } => out.push_str(&dgl_text(name, dgl)),
                Item::Morphism { name, source, target, morphism } => {
                    out.push_str(&morphism_text(name, source, target, morphism))
                }
                Item::Problem(p) => out.push_str(&format!("problem {} X={} Y={} p={}\n", p.name, p.x, p.y, p.p)),
            }
        }
        out
    }
}

/// An `algebra` block for `a`.
pub fn algebra_text(name: &str, a: &Cdga) -> String {
    let g = a.gens();
    let mut out = format!("algebra {name}\n");
    for i in 0..g.len() {
        out.push_str(&format!("generator {} degree {}\n", g.name(i), g.degree(i)));
    }
    for i in 0..g.len() {
        if !a.differential(i).is_zero() {
            out.push_str(&format!("d {} = {}\n", g.name(i), a.differential(i).fmt_with(g)));
        }
    }
    for r in a.relations() {
        out.push_str(&format!("relation {}\n", r.fmt_with(g)));
    }
    if a.truncation() != COMPLETE {
        out.push_str(&format!("truncation {}\n", a.truncation()));
    }
    out
}

/// A `dgl` block for `l`.
pub fn dgl_text(name: &str, l: &Dgl) -> String {
    let mut out = format!("dgl {name}\n");
    for i in 0..l.dim() {
        out.push_str(&format!("basis {} degree {}\n", l.name(i), l.degree(i)));
    }
    let entries: BTreeMap<_, _> = l.bracket_entries().collect();
    for (&(i, j), v) in entries {
        out.push_str(&format!("bracket [{},{}] = {}\n", l.name(i), l.name(j), l.fmt_combination(v)));
    }
    for i in 0..l.dim() {
        if !l.d_of(i).is_empty() {
            out.push_str(&format!("d {} = {}\n", l.name(i), l.fmt_combination(l.d_of(i))));
        }
    }
    if l.truncation() != COMPLETE {
        out.push_str(&format!("truncation {}\n", l.truncation()));
    }
    out
}

/// A `morphism` block for `f`.
pub fn morphism_text(name: &str, source: &str, target: &str, f: &CdgaMorphism) -> String {
    let mut out = format!("morphism {name} {source} -> {target}\n");
    let (g, h) = (f.source().gens(), f.target().gens());
    for i in 0..g.len() {
        out.push_str(&format!("map {} = {}\n", g.name(i), f.image(i).fmt_with(h)));
    }
    out
}

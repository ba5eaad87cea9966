//! The path model: cells `(x, y)` of a simplex `x` of `X` and a loop-model word
//! `y` from the last vertex of `x` to the basepoint, with faces, degeneracies,
//! the right action of words, and the covering graph over the 1-skeleton.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::relations::{CellCalculus, Shape};
use crate::simplicial::{GenId, SimplexTerm};
use crate::word::{LetterPolicy, LoopModel, LoopWord, RawWord};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathCell {
    base: SimplexTerm,
    tail: LoopWord,
}

/// A path cell whose tail has not been reduced. An empty tail has no beads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawPath {
    pub base: SimplexTerm,
    pub letters: Vec<SimplexTerm>,
    pub end: GenId,
}

impl RawPath {
    pub fn shape(&self) -> Shape {
        Shape {
            first: Some(self.base.dim()),
            beads: self.letters.iter().map(SimplexTerm::dim).collect(),
        }
    }
}

impl PathCell {
    /// Builds the canonical cell equivalent to `(base, tail)`.
    pub fn new(model: &LoopModel, base: SimplexTerm, tail: LoopWord) -> Result<Self> {
        let z = model.complex();
        let top = z.endpoints(&base).1;
        if top != tail.start() {
            return Err(Error::EndpointMismatch {
                expected: z.name_of(top).to_string(),
                found: z.name_of(tail.start()).to_string(),
            });
        }
        Ok(canonical(
            model,
            &RawPath {
                base,
                letters: tail.letters().to_vec(),
                end: tail.end(),
            },
        ))
    }

    pub fn base(&self) -> &SimplexTerm {
        &self.base
    }

    pub fn tail(&self) -> &LoopWord {
        &self.tail
    }

    pub fn dim(&self) -> usize {
        self.base.dim() + self.tail.degree()
    }

    /// The projection to `X`.
    pub fn pr(&self) -> &SimplexTerm {
        &self.base
    }

    pub fn raw(&self) -> RawPath {
        RawPath {
            base: self.base.clone(),
            letters: self.tail.letters().to_vec(),
            end: self.tail.end(),
        }
    }
}

/// Canonical form: repeated last vertices of the base move into the tail, and
/// the tail is reduced.
pub fn canonical(model: &LoopModel, raw: &RawPath) -> PathCell {
    let z = model.complex();
    let mut base = raw.base.clone();
    let mut letters = raw.letters.clone();
    while base.is_top_degenerate() {
        let top = z.endpoints(&base).1;
        base = z.face(&base, base.dim()).expect("top face exists");
        if letters.is_empty() {
            letters.push(z.vertex_degeneracy(top, 2));
        } else {
            letters[0] = z.degeneracy(&letters[0], 0).expect("s_0 exists");
        }
    }
    let start = z.endpoints(&base).1;
    let tail = model.reduce(&RawWord {
        letters,
        start,
        end: raw.end,
    });
    PathCell { base, tail }
}

/// Path-model operators over a loop model.
#[derive(Clone, Copy, Debug)]
pub struct PathModel<'a> {
    pub model: &'a LoopModel,
}

impl<'a> PathModel<'a> {
    pub fn new(model: &'a LoopModel) -> Self {
        PathModel { model }
    }

    /// `d^e_i` on a raw cell.
    pub fn raw_face(&self, c: &RawPath, i: usize, epsilon: u8) -> Result<RawPath> {
        let z = self.model.complex();
        let p = c.base.dim();
        let max = c.shape().dim();
        if i == 0 || i > max {
            return Err(Error::CoordinateOutOfRange { index: i, max });
        }
        if i <= p {
            let mut out = c.clone();
            if epsilon == 1 {
                out.base = z.face(&c.base, i - 1)?;
            } else {
                out.base = z.front(&c.base, i - 1)?;
                out.letters.insert(0, z.back(&c.base, i - 1)?);
            }
            return Ok(out);
        }
        let start = z.endpoints(&c.base).1;
        let tail = RawWord {
            letters: c.letters.clone(),
            start,
            end: c.end,
        };
        let face = self.model.raw_face(&tail, i - p, epsilon)?;
        Ok(RawPath {
            base: c.base.clone(),
            letters: face.letters,
            end: c.end,
        })
    }

    /// `eta_j` on a raw cell: repeats the vertex with global index `j - 1`.
    pub fn raw_degeneracy(&self, c: &RawPath, j: usize) -> Result<RawPath> {
        let z = self.model.complex();
        let (b, l) = c.shape().locate_vertex(j)?;
        let mut out = c.clone();
        if b == 0 {
            out.base = z.degeneracy(&c.base, l)?;
        } else {
            out.letters[b - 1] = z.degeneracy(&c.letters[b - 1], l)?;
        }
        Ok(out)
    }

    pub fn face(&self, c: &PathCell, i: usize, epsilon: u8) -> Result<PathCell> {
        Ok(canonical(self.model, &self.raw_face(&c.raw(), i, epsilon)?))
    }

    pub fn degeneracy(&self, c: &PathCell, j: usize) -> Result<PathCell> {
        Ok(canonical(self.model, &self.raw_degeneracy(&c.raw(), j)?))
    }

    /// Right action of a loop at the basepoint.
    pub fn action(&self, c: &PathCell, w: &LoopWord) -> Result<PathCell> {
        let tail = self.model.compose(&c.tail, w)?;
        Ok(PathCell {
            base: c.base.clone(),
            tail,
        })
    }

    /// `iota(w) = (x_0, w)`.
    pub fn iota(&self, w: &LoopWord) -> Result<PathCell> {
        let z = self.model.complex();
        PathCell::new(self.model, z.vertex_term(w.start()), w.clone())
    }

    pub fn render(&self, c: &PathCell) -> String {
        format!(
            "({}, {})",
            self.model.complex().render(&c.base),
            self.model.render(&c.tail)
        )
    }

    pub fn render_raw(&self, c: &RawPath) -> String {
        let z = self.model.complex();
        let tail = if c.letters.is_empty() {
            "e".to_string()
        } else {
            c.letters
                .iter()
                .map(|l| z.render(l))
                .collect::<Vec<_>>()
                .join(";")
        };
        format!("({}, {})", z.render(&c.base), tail)
    }
}

impl CellCalculus for PathModel<'_> {
    type Cell = RawPath;

    fn shape(&self, c: &RawPath) -> Shape {
        c.shape()
    }

    fn raw_face(&self, c: &RawPath, i: usize, epsilon: u8) -> Result<RawPath> {
        PathModel::raw_face(self, c, i, epsilon)
    }

    fn raw_degeneracy(&self, c: &RawPath, j: usize) -> Result<RawPath> {
        PathModel::raw_degeneracy(self, c, j)
    }

    fn canonical(&self, c: &RawPath) -> RawPath {
        canonical(self.model, c).raw()
    }

    fn render(&self, c: &RawPath) -> String {
        self.render_raw(c)
    }
}

/// The 1-skeleton of the path model over the 1-skeleton of `X`, truncated to
/// tails of at most `max_len` letters.
#[derive(Clone, Debug)]
pub struct CoveringGraph {
    pub max_len: usize,
    /// 0-cells `(v, y)`, ordered by vertex, then tail length, then letters.
    pub vertices: Vec<PathCell>,
    /// Vertices whose tail has the maximal length; their neighbourhood may be cut off.
    pub boundary: Vec<bool>,
    /// 1-cells as `(d^1_1 end, d^0_1 end, edge of X)`.
    pub edges: Vec<(usize, usize, GenId)>,
}

impl CoveringGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b, _)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b, _) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.vertices.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Connected with one edge fewer than vertices.
    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.vertices.len()
    }

    pub fn to_dot(&self, paths: &PathModel<'_>) -> String {
        let z = paths.model.complex();
        let mut s = String::from("graph cover {\n");
        for (k, c) in self.vertices.iter().enumerate() {
            let shape = if self.boundary[k] { ", shape=box" } else { "" };
            let _ = writeln!(s, "  n{k} [label=\"{}\"{shape}];", paths.render(c));
        }
        for &(a, b, g) in &self.edges {
            let _ = writeln!(s, "  n{a} -- n{b} [label=\"{}\"];", z.name_of(g));
        }
        s.push_str("}\n");
        s
    }

    /// One line per vertex, `index<TAB>cell<TAB>boundary flag<TAB>neighbours`,
    /// where neighbours are `index:edge` pairs.
    pub fn to_adjacency(&self, paths: &PathModel<'_>) -> String {
        let z = paths.model.complex();
        let mut adj: Vec<Vec<String>> = vec![Vec::new(); self.vertices.len()];
        for &(a, b, g) in &self.edges {
            adj[a].push(format!("{b}:{}", z.name_of(g)));
            adj[b].push(format!("{a}:{}", z.name_of(g)));
        }
        let mut s = String::new();
        for (k, c) in self.vertices.iter().enumerate() {
            let _ = writeln!(
                s,
                "{k}\t{}\t{}\t{}",
                paths.render(c),
                u8::from(self.boundary[k]),
                adj[k].join(" ")
            );
        }
        s
    }

    /// Vertices where some edge of `X` does not lift to exactly one incident edge.
    pub fn lifting_failures(&self, paths: &PathModel<'_>) -> Vec<String> {
        let z = paths.model.complex();
        let x_edges: Vec<GenId> = z
            .generators_of_dim(1)
            .into_iter()
            .filter(|&g| z.op(g).is_none_or(|o| o > g))
            .collect();
        let mut incident: BTreeMap<(usize, GenId, u8), usize> = BTreeMap::new();
        for &(a, b, g) in &self.edges {
            *incident.entry((a, g, 1)).or_default() += 1;
            *incident.entry((b, g, 0)).or_default() += 1;
        }
        let mut out = Vec::new();
        for (k, c) in self.vertices.iter().enumerate() {
            if self.boundary[k] {
                continue;
            }
            let v = c.base().generator();
            for &g in &x_edges {
                let (lo, hi) = z.endpoints(&z.term(g));
                for (end, at) in [(1u8, hi), (0u8, lo)] {
                    if at != v {
                        continue;
                    }
                    let count = incident.get(&(k, g, end)).copied().unwrap_or(0);
                    if count != 1 {
                        out.push(format!(
                            "{}: edge {} lifts {count} times",
                            paths.render(c),
                            z.name_of(g)
                        ));
                    }
                }
            }
        }
        out
    }
}

/// Builds the covering graph with tails of length at most `max_len`.
pub fn one_skeleton(model: &LoopModel, max_len: usize) -> Result<CoveringGraph> {
    let z = model.complex();
    let paths = PathModel::new(model);
    let x0 = model.basepoint();
    let mut vertices = Vec::new();
    for v in z.vertices() {
        for y in model.enumerate_words(0, Some(max_len), (v, x0), LetterPolicy::Nondegenerate)? {
            vertices.push(PathCell::new(model, z.vertex_term(v), y)?);
        }
    }
    let index: BTreeMap<&PathCell, usize> =
        vertices.iter().enumerate().map(|(k, c)| (c, k)).collect();
    let mut edges = Vec::new();
    let x_edges: Vec<GenId> = z
        .generators_of_dim(1)
        .into_iter()
        .filter(|&g| z.op(g).is_none_or(|o| o > g))
        .collect();
    for &g in &x_edges {
        let a = z.term(g);
        let hi = z.endpoints(&a).1;
        for y in model.enumerate_words(0, Some(max_len), (hi, x0), LetterPolicy::Nondegenerate)? {
            let cell = PathCell::new(model, a.clone(), y)?;
            let top = paths.face(&cell, 1, 1)?;
            let bottom = paths.face(&cell, 1, 0)?;
            if let (Some(&s), Some(&t)) = (index.get(&top), index.get(&bottom)) {
                edges.push((s, t, g));
            }
        }
    }
    let boundary = vertices.iter().map(|c| c.tail().len() == max_len).collect();
    Ok(CoveringGraph {
        max_len,
        vertices,
        boundary,
        edges,
    })
}

//! The word model of the loop space: reduced composable words of simplices of
//! `Z(X)`, their monoid structure, faces and degeneracies, and the group of
//! degree-0 loops.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::relations::{CellCalculus, Shape};
use crate::simplicial::{GenId, SimplexTerm, SimplicialPresentation};

/// A reduced word `s1 ... sk` of letters with `max s_i = min s_(i+1)`.
/// The empty word is the unit at its start vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LoopWord {
    letters: Vec<SimplexTerm>,
    start: GenId,
    end: GenId,
}

impl LoopWord {
    pub fn letters(&self) -> &[SimplexTerm] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn start(&self) -> GenId {
        self.start
    }

    pub fn end(&self) -> GenId {
        self.end
    }

    /// Total degree: the sum of `dim - 1` over the letters.
    pub fn degree(&self) -> usize {
        degree_of(&self.letters)
    }

    /// `(degree, length)`.
    pub fn bidegree(&self) -> (usize, usize) {
        (self.degree(), self.len())
    }

    pub fn has_degenerate_letter(&self) -> bool {
        self.letters.iter().any(SimplexTerm::is_degenerate)
    }
}

fn degree_of(letters: &[SimplexTerm]) -> usize {
    letters.iter().map(|l| l.dim() - 1).sum()
}

/// An unreduced word. Faces and degeneracies act on raw words; reducing the
/// result gives the operators of the loop model.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RawWord {
    pub letters: Vec<SimplexTerm>,
    pub start: GenId,
    pub end: GenId,
}

impl RawWord {
    pub fn shape(&self) -> Shape {
        Shape {
            first: None,
            beads: self.letters.iter().map(SimplexTerm::dim).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        degree_of(&self.letters)
    }
}

/// Which letters a generating set of words may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LetterPolicy {
    /// Nondegenerate letters only.
    Nondegenerate,
    /// Letters whose degeneracies avoid the first and last index: the words
    /// that survive the quotient by degeneracies of the unit.
    InnerDegenerate,
}

/// Factorization `w = c r^k c^-1` of a degree-0 loop with `r` not a proper power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerDecomposition {
    pub conjugator: LoopWord,
    pub root: LoopWord,
    pub exponent: usize,
}

/// The loop model of a simplicial set: words over `Z(X)`.
#[derive(Clone, Debug)]
pub struct LoopModel {
    z: SimplicialPresentation,
}

impl LoopModel {
    /// Builds the model over `Z(X)`; a presentation that already carries an op
    /// pairing is used as is.
    pub fn new(x: &SimplicialPresentation) -> Result<Self> {
        let z = if x.has_op_pairing() {
            x.clone()
        } else {
            x.z_extension()?
        };
        Ok(LoopModel { z })
    }

    /// The extended presentation `Z(X)`.
    pub fn complex(&self) -> &SimplicialPresentation {
        &self.z
    }

    pub fn basepoint(&self) -> GenId {
        self.z.basepoint()
    }

    pub fn unit(&self) -> LoopWord {
        self.unit_at(self.basepoint())
    }

    pub fn unit_at(&self, x: GenId) -> LoopWord {
        LoopWord {
            letters: Vec::new(),
            start: x,
            end: x,
        }
    }

    fn check_composable(&self, start: GenId, letters: &[SimplexTerm]) -> Result<GenId> {
        let mut at = start;
        for (k, l) in letters.iter().enumerate() {
            if l.dim() == 0 {
                return Err(Error::InvalidCubeCell(format!(
                    "letter {} of a word must have positive dimension",
                    k + 1
                )));
            }
            let (lo, hi) = self.z.endpoints(l);
            if lo != at {
                return Err(Error::NotComposable {
                    left: self.z.name_of(at).to_string(),
                    right: self.z.render(l),
                });
            }
            at = hi;
        }
        Ok(at)
    }

    /// Checks composability and builds a raw word starting at `start`.
    pub fn raw_word(&self, start: GenId, letters: Vec<SimplexTerm>) -> Result<RawWord> {
        let end = self.check_composable(start, &letters)?;
        Ok(RawWord {
            letters,
            start,
            end,
        })
    }

    /// Builds and reduces a word starting at `start`.
    pub fn word(&self, start: GenId, letters: Vec<SimplexTerm>) -> Result<LoopWord> {
        Ok(self.reduce(&self.raw_word(start, letters)?))
    }

    /// Builds a word starting at the first vertex of its first letter, or the unit
    /// at the basepoint when empty.
    pub fn word_from_letters(&self, letters: Vec<SimplexTerm>) -> Result<LoopWord> {
        let start = letters
            .first()
            .map_or(self.basepoint(), |l| self.z.endpoints(l).0);
        self.word(start, letters)
    }

    /// The raw word of a reduced word; the unit becomes the single letter `s_0(x)`.
    pub fn raw(&self, w: &LoopWord) -> RawWord {
        let letters = if w.letters.is_empty() {
            vec![self.z.unit_edge(w.start)]
        } else {
            w.letters.clone()
        };
        RawWord {
            letters,
            start: w.start,
            end: w.end,
        }
    }

    fn is_unit_letter(l: &SimplexTerm) -> bool {
        l.dim() == 1 && l.is_vertex_degenerate()
    }

    /// Whether `a b` is an adjacent pair of a nondegenerate edge and its op.
    pub fn cancels(&self, a: &SimplexTerm, b: &SimplexTerm) -> bool {
        a.dim() == 1
            && b.dim() == 1
            && !a.is_degenerate()
            && !b.is_degenerate()
            && self.z.op(a.generator()) == Some(b.generator())
    }

    /// For `p = s_0^d(a)` and `q = a^op` with `a` a nondegenerate edge, returns `d`.
    fn cancellation(&self, p: &SimplexTerm, q: &SimplexTerm) -> Option<usize> {
        let d = p.degeneracies().len();
        let leading = p.degeneracies().indices().iter().copied().eq(0..d);
        (p.generator_dim() == 1
            && leading
            && q.dim() == 1
            && !q.is_degenerate()
            && self.z.op(p.generator()) == Some(q.generator()))
        .then_some(d)
    }

    /// Normal form. Unit letters `s_0(x)` are absorbed; a repeated last vertex
    /// of a letter moves onto the front of the next letter (a final letter
    /// hands it to a trailing constant letter); and `s_0^d(a), a^op` cancels,
    /// passing its `d` leading degeneracies on to whatever follows.
    pub fn reduce(&self, raw: &RawWord) -> LoopWord {
        let mut letters = raw.letters.clone();
        loop {
            letters.retain(|l| !Self::is_unit_letter(l));
            if self.shift_once(&mut letters, raw.end) {
                continue;
            }
            let Some((k, d)) = (1..letters.len()).find_map(|k| {
                self.cancellation(&letters[k - 1], &letters[k])
                    .map(|d| (k, d))
            }) else {
                break;
            };
            letters.drain(k - 1..=k);
            if d > 0 {
                if k - 1 < letters.len() {
                    letters[k - 1] = self.z.bottom_degeneracy(&letters[k - 1], d);
                } else {
                    letters.push(self.z.vertex_degeneracy(raw.end, d + 1));
                }
            }
        }
        LoopWord {
            letters,
            start: raw.start,
            end: raw.end,
        }
    }

    fn shift_once(&self, letters: &mut Vec<SimplexTerm>, end: GenId) -> bool {
        let count = letters.len();
        for k in 0..count {
            let l = &letters[k];
            if !l.is_top_degenerate() || (k + 1 == count && l.is_vertex_degenerate()) {
                continue;
            }
            letters[k] = self.z.face(l, l.dim()).expect("top face exists");
            if k + 1 < count {
                letters[k + 1] = self.z.bottom_degeneracy(&letters[k + 1], 1);
            } else {
                letters.push(self.z.vertex_degeneracy(end, 2));
            }
            return true;
        }
        false
    }

    pub fn compose(&self, u: &LoopWord, v: &LoopWord) -> Result<LoopWord> {
        if u.end != v.start {
            return Err(Error::EndpointMismatch {
                expected: self.z.name_of(u.end).to_string(),
                found: self.z.name_of(v.start).to_string(),
            });
        }
        let mut letters = u.letters.clone();
        letters.extend(v.letters.iter().cloned());
        Ok(self.reduce(&RawWord {
            letters,
            start: u.start,
            end: v.end,
        }))
    }

    /// Inverse of a word of degree-0 letters: reversed, each letter replaced by its op.
    pub fn invert(&self, w: &LoopWord) -> Result<LoopWord> {
        let mut letters = Vec::with_capacity(w.len());
        for l in w.letters.iter().rev() {
            if l.dim() != 1 || l.is_degenerate() {
                return Err(Error::NotInvertible);
            }
            let op = self.z.op(l.generator()).ok_or(Error::NotInvertible)?;
            letters.push(self.z.term(op));
        }
        Ok(self.reduce(&RawWord {
            letters,
            start: w.end,
            end: w.start,
        }))
    }

    /// `d^e_i` on a raw word, without reduction.
    pub fn raw_face(&self, raw: &RawWord, i: usize, epsilon: u8) -> Result<RawWord> {
        let n = raw.degree();
        if i == 0 || i > n {
            return Err(Error::CoordinateOutOfRange { index: i, max: n });
        }
        let mut offset = 0;
        for (r, l) in raw.letters.iter().enumerate() {
            let coords = l.dim() - 1;
            if i <= offset + coords {
                let t = i - offset;
                let mut letters = raw.letters[..r].to_vec();
                if epsilon == 1 {
                    letters.push(self.z.face(l, t)?);
                } else {
                    letters.push(self.z.front(l, t)?);
                    letters.push(self.z.back(l, t)?);
                }
                letters.extend(raw.letters[r + 1..].iter().cloned());
                return Ok(RawWord {
                    letters,
                    start: raw.start,
                    end: raw.end,
                });
            }
            offset += coords;
        }
        unreachable!("coordinate within degree")
    }

    /// `eta_j` on a raw word: repeats the vertex with global index `j - 1`.
    pub fn raw_degeneracy(&self, raw: &RawWord, j: usize) -> Result<RawWord> {
        let (r, l) = raw.shape().locate_vertex(j)?;
        let mut letters = raw.letters.clone();
        letters[r] = self.z.degeneracy(&letters[r], l)?;
        Ok(RawWord {
            letters,
            start: raw.start,
            end: raw.end,
        })
    }

    pub fn word_face(&self, w: &LoopWord, i: usize, epsilon: u8) -> Result<LoopWord> {
        Ok(self.reduce(&self.raw_face(&self.raw(w), i, epsilon)?))
    }

    /// `eta_j(w)`, returned unreduced.
    pub fn word_degeneracy(&self, w: &LoopWord, j: usize) -> Result<RawWord> {
        self.raw_degeneracy(&self.raw(w), j)
    }

    /// Letters of dimension `dim` allowed by `policy`, keyed by their first vertex.
    fn letters_of_dim(&self, dim: usize, policy: LetterPolicy) -> Vec<SimplexTerm> {
        match policy {
            LetterPolicy::Nondegenerate => self
                .z
                .generators_of_dim(dim)
                .into_iter()
                .map(|g| self.z.term(g))
                .collect(),
            LetterPolicy::InnerDegenerate => self
                .z
                .simplices_of_dim(dim)
                .into_iter()
                .filter(|t| {
                    t.generator_dim() > 0 && !t.is_bottom_degenerate() && !t.is_top_degenerate()
                })
                .collect(),
        }
    }

    /// All reduced words of the given degree, at most `max_len` letters, between
    /// the given vertices, with letters allowed by `policy`. Ordered by length
    /// and then letters.
    pub fn enumerate_words(
        &self,
        degree: usize,
        max_len: Option<usize>,
        endpoints: (GenId, GenId),
        policy: LetterPolicy,
    ) -> Result<Vec<LoopWord>> {
        let edges = self.letters_of_dim(1, policy);
        if max_len.is_none() && !edges.is_empty() {
            return Err(Error::UnboundedEnumeration);
        }
        let cap = max_len.unwrap_or(degree);
        let mut by_start: BTreeMap<GenId, Vec<(SimplexTerm, GenId)>> = BTreeMap::new();
        for dim in 1..=degree + 1 {
            for l in self.letters_of_dim(dim, policy) {
                let (lo, hi) = self.z.endpoints(&l);
                by_start.entry(lo).or_default().push((l, hi));
            }
        }
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.extend_words(
            &by_start,
            endpoints.0,
            endpoints.1,
            degree,
            cap,
            &mut stack,
            &mut out,
        );
        let start = endpoints.0;
        let mut words: Vec<LoopWord> = out
            .into_iter()
            .map(|letters| LoopWord {
                letters,
                start,
                end: endpoints.1,
            })
            .collect();
        words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(words)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_words(
        &self,
        by_start: &BTreeMap<GenId, Vec<(SimplexTerm, GenId)>>,
        at: GenId,
        target: GenId,
        remaining: usize,
        cap: usize,
        stack: &mut Vec<SimplexTerm>,
        out: &mut Vec<Vec<SimplexTerm>>,
    ) {
        if remaining == 0 && at == target {
            out.push(stack.clone());
        }
        if stack.len() == cap {
            return;
        }
        let Some(options) = by_start.get(&at) else {
            return;
        };
        for (l, hi) in options {
            let d = l.dim() - 1;
            if d > remaining {
                continue;
            }
            if stack.last().is_some_and(|p| self.cancels(p, l)) {
                continue;
            }
            stack.push(l.clone());
            self.extend_words(by_start, *hi, target, remaining - d, cap, stack, out);
            stack.pop();
        }
    }

    /// Parses `e` or semicolon-separated letters such as `02;12^op;s1.012`.
    pub fn parse_word(&self, text: &str) -> Result<LoopWord> {
        let raw = self.parse_raw(text)?;
        Ok(self.reduce(&raw))
    }

    /// Parses a word literal without reducing it.
    pub fn parse_raw(&self, text: &str) -> Result<RawWord> {
        let text = text.trim();
        if text == "e" || text.is_empty() {
            let x = self.basepoint();
            return Ok(RawWord {
                letters: Vec::new(),
                start: x,
                end: x,
            });
        }
        let letters = text
            .split(';')
            .map(|t| self.z.parse_term(t))
            .collect::<Result<Vec<_>>>()?;
        let start = self.z.endpoints(&letters[0]).0;
        self.raw_word(start, letters)
    }

    pub fn render(&self, w: &LoopWord) -> String {
        self.render_letters(&w.letters)
    }

    pub fn render_raw(&self, w: &RawWord) -> String {
        self.render_letters(&w.letters)
    }

    fn render_letters(&self, letters: &[SimplexTerm]) -> String {
        if letters.is_empty() {
            return "e".to_string();
        }
        letters
            .iter()
            .map(|l| self.z.render(l))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Writes a degree-0 loop as `c r^k c^-1` with `r` cyclically reduced and primitive.
    pub fn power_decomposition(&self, w: &LoopWord) -> Result<PowerDecomposition> {
        if w.letters.iter().any(|l| l.dim() != 1) || w.start != w.end {
            return Err(Error::NotInvertible);
        }
        let letters = &w.letters;
        let mut c = 0;
        while 2 * c + 1 < letters.len()
            && self.cancels(&letters[letters.len() - 1 - c], &letters[c])
        {
            c += 1;
        }
        let core = &letters[c..letters.len() - c];
        let conj_letters = letters[..c].to_vec();
        let conj_end = match conj_letters.last() {
            Some(l) => self.z.endpoints(l).1,
            None => w.start,
        };
        let conjugator = LoopWord {
            letters: conj_letters,
            start: w.start,
            end: conj_end,
        };
        let n = core.len();
        let period = (1..=n.max(1))
            .find(|&p| n == 0 || (n.is_multiple_of(p) && (p..n).all(|k| core[k] == core[k - p])))
            .unwrap_or(1);
        let root = LoopWord {
            letters: core[..period.min(n)].to_vec(),
            start: conj_end,
            end: conj_end,
        };
        let exponent = if n == 0 { 0 } else { n / period };
        Ok(PowerDecomposition {
            conjugator,
            root,
            exponent,
        })
    }

    /// `w^k` for an integer `k`, inverting when `k` is negative.
    pub fn power(&self, w: &LoopWord, k: i64) -> Result<LoopWord> {
        let base = if k < 0 { self.invert(w)? } else { w.clone() };
        let mut acc = self.unit_at(w.start);
        for _ in 0..k.unsigned_abs() {
            acc = self.compose(&acc, &base)?;
        }
        Ok(acc)
    }
}

impl CellCalculus for LoopModel {
    type Cell = RawWord;

    fn shape(&self, c: &RawWord) -> Shape {
        c.shape()
    }

    fn raw_face(&self, c: &RawWord, i: usize, epsilon: u8) -> Result<RawWord> {
        LoopModel::raw_face(self, c, i, epsilon)
    }

    fn raw_degeneracy(&self, c: &RawWord, j: usize) -> Result<RawWord> {
        LoopModel::raw_degeneracy(self, c, j)
    }

    fn canonical(&self, c: &RawWord) -> RawWord {
        let w = self.reduce(c);
        self.raw(&w)
    }

    fn render(&self, c: &RawWord) -> String {
        self.render_raw(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::*;

    fn model(x: SimplicialPresentation) -> LoopModel {
        LoopModel::new(&x).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let m = model(wedge_of_circles(2).unwrap());
        assert!(m.parse_word("a;a^op").unwrap().is_empty());
        assert!(m.parse_word("a;b;b^op;a^op").unwrap().is_empty());
        assert_eq!(m.render(&m.parse_word("a;b").unwrap()), "a;b");
        assert!(m.parse_word("a^op;a").unwrap().is_empty());
        assert!(m.parse_word("s0.v").unwrap().is_empty());
    }

    #[test]
    fn compose_and_invert_in_the_triangle() {
        let m = model(boundary_simplex(2).unwrap());
        let alpha = m.parse_word("02;12^op;01^op").unwrap();
        let inv = m.invert(&alpha).unwrap();
        assert_eq!(m.render(&inv), "01;12;02^op");
        assert!(m.compose(&alpha, &inv).unwrap().is_empty());
        assert_eq!(
            m.render(&m.invert(&m.parse_word("01;12;02^op").unwrap()).unwrap()),
            "02;12^op;01^op"
        );
        let e = m.unit();
        assert_eq!(m.compose(&e, &alpha).unwrap(), alpha);
        let w = m.parse_word("01").unwrap();
        assert!(matches!(
            m.compose(&w, &w),
            Err(Error::EndpointMismatch { .. })
        ));
    }

    #[test]
    fn compose_loops_in_a_circle() {
        let m = model(wedge_of_circles(1).unwrap());
        let a = m.parse_word("a").unwrap();
        assert_eq!(m.render(&m.compose(&a, &a).unwrap()), "a;a");
        assert_eq!(m.render(&m.invert(&a).unwrap()), "a^op");
    }

    #[test]
    fn word_faces_of_a_triangle() {
        let m = model(standard_simplex(2).unwrap());
        let w = m.parse_word("012").unwrap();
        assert_eq!(m.render(&m.word_face(&w, 1, 0).unwrap()), "01;12");
        assert_eq!(m.render(&m.word_face(&w, 1, 1).unwrap()), "02");
        assert!(m.word_face(&w, 2, 0).is_err());

        let s = model(sphere_quotient(2).unwrap());
        let sigma = s.parse_word("sigma").unwrap();
        assert!(s.word_face(&sigma, 1, 1).unwrap().is_empty());
        assert!(s.word_face(&sigma, 1, 0).unwrap().is_empty());
    }

    #[test]
    fn degeneracies_of_words() {
        let m = model(standard_simplex(2).unwrap());
        let w = m.parse_word("012").unwrap();
        let d = m.word_degeneracy(&w, 1).unwrap();
        assert_eq!(m.render_raw(&d), "s0.012");
        // a repeated last vertex of the last letter moves into a trailing constant letter
        let top = m.reduce(&m.word_degeneracy(&w, 3).unwrap());
        assert_eq!(m.render(&top), "012;s1.s0.2");
        // the junction slot of a letter and the first slot of the next agree
        let two = m.parse_word("01;12").unwrap();
        let left = m
            .raw_word(
                two.start(),
                vec![
                    m.complex().parse_term("s1.01").unwrap(),
                    m.complex().parse_term("12").unwrap(),
                ],
            )
            .unwrap();
        let right = m.word_degeneracy(&two, 2).unwrap();
        assert_eq!(m.reduce(&left), m.reduce(&right));
    }

    #[test]
    fn enumeration_counts() {
        let s = model(sphere_quotient(2).unwrap());
        let x0 = s.basepoint();
        let words = s
            .enumerate_words(3, None, (x0, x0), LetterPolicy::Nondegenerate)
            .unwrap();
        assert_eq!(words.len(), 1);
        assert_eq!(s.render(&words[0]), "sigma;sigma;sigma");

        let w = model(wedge_of_circles(2).unwrap());
        let x0 = w.basepoint();
        let words = w
            .enumerate_words(0, Some(2), (x0, x0), LetterPolicy::Nondegenerate)
            .unwrap();
        assert_eq!(words.len(), 17);
        assert!(matches!(
            w.enumerate_words(0, None, (x0, x0), LetterPolicy::Nondegenerate),
            Err(Error::UnboundedEnumeration)
        ));

        let t = model(boundary_simplex(2).unwrap());
        let x0 = t.basepoint();
        let words: Vec<String> = t
            .enumerate_words(0, Some(3), (x0, x0), LetterPolicy::Nondegenerate)
            .unwrap()
            .iter()
            .map(|w| t.render(w))
            .collect();
        assert_eq!(words, ["e", "01;12;02^op", "02;12^op;01^op"]);
    }

    #[test]
    fn power_detection() {
        let t = model(boundary_simplex(2).unwrap());
        let w = t.parse_word("01;12;02^op").unwrap();
        let p = t.power_decomposition(&w).unwrap();
        assert_eq!(p.exponent, 1);
        assert_eq!(p.root, w);
        let cube = t.power(&w, 3).unwrap();
        let p = t.power_decomposition(&cube).unwrap();
        assert_eq!((p.exponent, p.root.clone()), (3, w.clone()));

        let m = model(wedge_of_circles(2).unwrap());
        let w = m.parse_word("b;a;a;b^op").unwrap();
        let p = m.power_decomposition(&w).unwrap();
        assert_eq!(m.render(&p.conjugator), "b");
        assert_eq!(m.render(&p.root), "a");
        assert_eq!(p.exponent, 2);
    }

    // Applies one generating move of the word relations, chosen at random.
    fn random_move(m: &LoopModel, w: &RawWord, r: &mut impl rand::Rng) -> RawWord {
        let z = m.complex();
        let mut letters = w.letters.clone();
        let junction = |letters: &[SimplexTerm], k: usize| {
            if k == 0 {
                w.start
            } else {
                z.endpoints(&letters[k - 1]).1
            }
        };
        match r.gen_range(0..4) {
            0 => {
                let k = r.gen_range(0..=letters.len());
                let x = junction(&letters, k);
                letters.insert(k, z.unit_edge(x));
            }
            1 => {
                // move a leading degeneracy of a letter onto the end of the previous one
                let candidates: Vec<usize> = (0..letters.len())
                    .filter(|&k| letters[k].dim() > 1 && letters[k].is_bottom_degenerate())
                    .collect();
                if !candidates.is_empty() {
                    let k = candidates[r.gen_range(0..candidates.len())];
                    let l = letters[k].clone();
                    letters[k] = z.face(&l, 0).unwrap();
                    if k == 0 {
                        letters.insert(0, z.vertex_degeneracy(w.start, 2));
                    } else {
                        let prev = letters[k - 1].clone();
                        letters[k - 1] = z.degeneracy(&prev, prev.dim()).unwrap();
                    }
                }
            }
            2 => {
                let k = r.gen_range(0..=letters.len());
                let x = junction(&letters, k);
                let edges: Vec<_> = z
                    .generators_of_dim(1)
                    .into_iter()
                    .filter(|&g| z.endpoints(&z.term(g)).0 == x)
                    .collect();
                if !edges.is_empty() {
                    let a = edges[r.gen_range(0..edges.len())];
                    let op = z.op(a).unwrap();
                    letters.insert(k, z.term(op));
                    letters.insert(k, z.term(a));
                }
            }
            _ => {
                // move the top degeneracy of a letter onto the front of the next one
                let candidates: Vec<usize> = (0..letters.len())
                    .filter(|&k| letters[k].dim() > 1 && letters[k].is_top_degenerate())
                    .collect();
                if !candidates.is_empty() {
                    let k = candidates[r.gen_range(0..candidates.len())];
                    let l = letters[k].clone();
                    letters[k] = z.face(&l, l.dim()).unwrap();
                    if k + 1 < letters.len() {
                        letters[k + 1] = z.bottom_degeneracy(&letters[k + 1], 1);
                    } else {
                        letters.push(z.vertex_degeneracy(w.end, 2));
                    }
                }
            }
        }
        m.raw_word(w.start, letters).unwrap()
    }

    #[test]
    fn reduce_is_invariant_under_generating_moves() {
        use crate::random::{rng, WordSampler};
        let mut r = rng(7);
        for x in [
            boundary_simplex(2).unwrap(),
            wedge_of_circles(2).unwrap(),
            boundary_simplex(3).unwrap(),
            wedge_aab().unwrap(),
        ] {
            let m = model(x);
            let mut sampler = WordSampler::new(&m, 3);
            sampler.degenerate_probability = 0.3;
            for _ in 0..300 {
                let raw = sampler.sample_raw(&mut r, 4);
                let expected = m.reduce(&raw);
                let mut moved = raw.clone();
                for _ in 0..4 {
                    moved = random_move(&m, &moved, &mut r);
                    assert_eq!(
                        m.reduce(&moved),
                        expected,
                        "{} vs {}",
                        m.render_raw(&raw),
                        m.render_raw(&moved)
                    );
                }
            }
        }
    }

    #[test]
    fn degenerate_cancellation() {
        let m = model(boundary_simplex(2).unwrap());
        let w = m.parse_word("s0.01;01^op").unwrap();
        assert_eq!(m.render(&w), "s1.s0.0");
        let w = m.parse_word("01;s0.01^op").unwrap();
        assert_eq!(m.render(&w), "01;s0.01^op");
    }
}

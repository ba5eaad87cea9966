//! The hat-cobar construction built from the coalgebra of `Z(X)`, its
//! comparison with the chains of the loop model, and the extended cobar
//! construction of a single-vertex complex.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::chains::{word_boundary, Chain, Ring, Variant};
use crate::error::{Error, Result};
use crate::simplicial::SimplexTerm;
use crate::word::{LoopModel, LoopWord};

/// A monomial `[a1|...|ak]`; the empty monomial is the unit.
pub type Monomial = Vec<SimplexTerm>;

/// An integral combination of monomials with no zero coefficients.
pub type CobarChain = BTreeMap<Monomial, BigInt>;

/// Desuspended degree `sum (|a_i| - 1)`.
pub fn monomial_degree(m: &[SimplexTerm]) -> usize {
    m.iter().map(|a| a.dim() - 1).sum()
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, BigInt>, key: K, c: BigInt) {
    let entry = map.entry(key).or_insert_with(BigInt::zero);
    *entry += c;
    if entry.is_zero() {
        map.retain(|_, v| !v.is_zero());
    }
}

fn sign(k: usize) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// The hat-cobar construction of the truncated coalgebra of `Z(X)`.
pub struct Cobar<'a> {
    model: &'a LoopModel,
    variant: Variant,
}

impl<'a> Cobar<'a> {
    /// `De` pairs with the quotient by positive-degree vertex degeneracies,
    /// `Normalized` with the quotient by all degenerate simplices.
    pub fn new(model: &'a LoopModel, variant: Variant) -> Self {
        Cobar { model, variant }
    }

    pub fn model(&self) -> &LoopModel {
        self.model
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Whether `a` is zero in the coalgebra.
    pub fn is_zero_letter(&self, a: &SimplexTerm) -> bool {
        match self.variant {
            Variant::De => a.is_vertex_degenerate(),
            Variant::Normalized => a.is_degenerate(),
        }
    }

    /// `d_A(a) = sum_{i=1}^{n-1} (-1)^i d_i a`, in the quotient.
    pub fn d_a(&self, a: &SimplexTerm) -> BTreeMap<SimplexTerm, BigInt> {
        let z = self.model.complex();
        let mut out = BTreeMap::new();
        if self.is_zero_letter(a) {
            return out;
        }
        for i in 1..a.dim() {
            let f = z.face(a, i).expect("interior face");
            if !self.is_zero_letter(&f) {
                accumulate(&mut out, f, sign(i));
            }
        }
        out
    }

    /// The reduced diagonal: all splits `(front_i a, back_i a)` for `0 < i < n`.
    pub fn aw_reduced(&self, a: &SimplexTerm) -> Vec<(SimplexTerm, SimplexTerm)> {
        let z = self.model.complex();
        (1..a.dim())
            .map(|i| {
                (
                    z.front(a, i).expect("split in range"),
                    z.back(a, i).expect("split in range"),
                )
            })
            .collect()
    }

    /// Cancels adjacent pairs `[a|a^op]` of nondegenerate edges until none
    /// remain; `None` if a letter is zero.
    pub fn hat_reduce(&self, m: Monomial) -> Option<Monomial> {
        if m.iter().any(|a| self.is_zero_letter(a)) {
            return None;
        }
        let mut out: Monomial = Vec::with_capacity(m.len());
        for a in m {
            if out.last().is_some_and(|p| self.model.cancels(p, &a)) {
                out.pop();
            } else {
                out.push(a);
            }
        }
        Some(out)
    }

    /// Composable from the basepoint back to the basepoint.
    pub fn is_admissible(&self, m: &[SimplexTerm]) -> bool {
        let z = self.model.complex();
        let x0 = self.model.basepoint();
        let mut at = x0;
        for a in m {
            let (lo, hi) = z.endpoints(a);
            if lo != at {
                return false;
            }
            at = hi;
        }
        at == x0
    }

    /// `d = d_1 + d_2` with `d_1[a] = -[d_A a]` and
    /// `d_2[a] = sum (-1)^|a'| [a'|a'']`, extended as a derivation with the
    /// Koszul sign of the desuspended letters to the left.
    pub fn boundary(&self, m: &[SimplexTerm]) -> CobarChain {
        let mut out = CobarChain::new();
        if m.iter().any(|a| self.is_zero_letter(a)) {
            return out;
        }
        let mut left_degree = 0;
        for (slot, a) in m.iter().enumerate() {
            let koszul = sign(left_degree);
            let mut replace = |middle: Vec<SimplexTerm>, c: BigInt| {
                let mut next = m[..slot].to_vec();
                next.extend(middle);
                next.extend_from_slice(&m[slot + 1..]);
                if let Some(r) = self.hat_reduce(next) {
                    accumulate(&mut out, r, &koszul * c);
                }
            };
            for (f, c) in self.d_a(a) {
                replace(vec![f], -c);
            }
            for (i, (front, back)) in self.aw_reduced(a).into_iter().enumerate() {
                replace(vec![front, back], sign(i + 1));
            }
            left_degree += a.dim() - 1;
        }
        out
    }

    pub fn boundary_chain(&self, c: &CobarChain) -> CobarChain {
        let mut out = CobarChain::new();
        for (m, k) in c {
            for (n, l) in self.boundary(m) {
                accumulate(&mut out, n, k * l);
            }
        }
        out
    }

    /// `[a1|...|ak]`, or `[]` for the unit.
    pub fn render(&self, m: &[SimplexTerm]) -> String {
        let z = self.model.complex();
        let inner: Vec<String> = m.iter().map(|a| z.render(a)).collect();
        format!("[{}]", inner.join("|"))
    }

    pub fn render_chain(&self, c: &CobarChain) -> String {
        render_combination(c.iter().map(|(m, k)| (self.render(m), k.clone())))
    }

    /// The monomial `(-1)^deg w [w]` of a word.
    pub fn translate(&self, w: &LoopWord) -> CobarChain {
        let mut out = CobarChain::new();
        if let Some(m) = self.hat_reduce(w.letters().to_vec()) {
            out.insert(m, sign(w.degree()));
        }
        out
    }

    /// Inverse translation: each monomial becomes the reduced word on its
    /// letters with sign `(-1)^deg`, taken in the matching chain quotient.
    pub fn translate_back(&self, c: &CobarChain) -> Result<Chain> {
        let degree = c.keys().next().map_or(0, |m| monomial_degree(m));
        let mut out = Chain::zero(Ring::Integers, self.variant, degree);
        for (m, k) in c {
            let w = if m.is_empty() {
                self.model.unit()
            } else {
                self.model.word_from_letters(m.clone())?
            };
            let coeff = sign(monomial_degree(m)) * k;
            out.add_term(w, BigRational::from_integer(coeff))?;
        }
        Ok(out)
    }
}

pub(crate) fn render_combination(terms: impl Iterator<Item = (String, BigInt)>) -> String {
    let mut out = String::new();
    for (k, (label, c)) in terms.enumerate() {
        match (k, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// One generator whose two boundaries disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub word: String,
    pub monomial: String,
    /// Boundary in the loop model.
    pub word_side: String,
    /// Cobar boundary, in monomial notation.
    pub cobar_side: String,
    /// Cobar boundary translated back to words.
    pub cobar_translated: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d({}) = {} but d{} = {} (as words: {})",
            self.word, self.word_side, self.monomial, self.cobar_side, self.cobar_translated
        )
    }
}

/// Result of comparing the two differentials on every generator in a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub variant: Variant,
    pub max_degree: usize,
    pub max_len: usize,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// For every surviving generator word of degree `0..=max_degree` and at most
/// `max_len` letters, compares the loop-model boundary with the translated
/// cobar boundary of its monomial.
pub fn compare_theorem2(
    model: &LoopModel,
    variant: Variant,
    max_degree: usize,
    max_len: usize,
) -> Result<ComparisonReport> {
    let cobar = Cobar::new(model, variant);
    let x0 = model.basepoint();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for n in 0..=max_degree {
        for w in model.enumerate_words(n, Some(max_len), (x0, x0), variant.policy())? {
            checked += 1;
            let word_side = word_boundary(model, Ring::Integers, variant, &w)?;
            let image = cobar.translate(&w);
            let cobar_side = cobar.boundary_chain(&image);
            // d T(w) = T(d w), with T(w) = (-1)^deg w [w] and translate_back = T^-1
            let translated = cobar.translate_back(&cobar_side)?;
            if translated.terms() != word_side.terms() {
                mismatches.push(Mismatch {
                    word: model.render(&w),
                    monomial: cobar.render(w.letters()),
                    word_side: crate::chains::render(model, &word_side),
                    cobar_side: cobar.render_chain(&cobar_side),
                    cobar_translated: crate::chains::render(model, &translated),
                });
            }
        }
    }
    Ok(ComparisonReport {
        variant,
        max_degree,
        max_len,
        checked,
        mismatches,
    })
}

/// A letter of the extended cobar construction: a nontrivial reduced element
/// of the free group on the loops, or a simplex of dimension at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtendedLetter {
    Group(Vec<SimplexTerm>),
    Cell(SimplexTerm),
}

pub type ExtendedMonomial = Vec<ExtendedLetter>;

/// The extended cobar construction of a single-vertex complex: maximal runs
/// of degree-0 letters merge into one group-ring letter, and the trivial
/// group element is the unit.
pub struct ExtendedCobar<'a> {
    cobar: Cobar<'a>,
}

impl<'a> ExtendedCobar<'a> {
    pub fn new(model: &'a LoopModel, variant: Variant) -> Result<Self> {
        let vertices = model.complex().vertices().len();
        if vertices != 1 {
            return Err(Error::NotSingleVertex(vertices));
        }
        Ok(ExtendedCobar {
            cobar: Cobar::new(model, variant),
        })
    }

    pub fn cobar(&self) -> &Cobar<'a> {
        &self.cobar
    }

    /// Merges runs of edges of a hat-reduced monomial; `None` if it is zero.
    pub fn merge(&self, m: Monomial) -> Option<ExtendedMonomial> {
        let m = self.cobar.hat_reduce(m)?;
        let mut out = Vec::new();
        let mut run: Vec<SimplexTerm> = Vec::new();
        for a in m {
            if a.dim() == 1 {
                run.push(a);
            } else {
                if !run.is_empty() {
                    out.push(ExtendedLetter::Group(std::mem::take(&mut run)));
                }
                out.push(ExtendedLetter::Cell(a));
            }
        }
        if !run.is_empty() {
            out.push(ExtendedLetter::Group(run));
        }
        Some(out)
    }

    pub fn split(&self, e: &[ExtendedLetter]) -> Monomial {
        e.iter()
            .flat_map(|l| match l {
                ExtendedLetter::Group(g) => g.clone(),
                ExtendedLetter::Cell(a) => vec![a.clone()],
            })
            .collect()
    }

    /// Group letters are cycles with trivial reduced diagonal, so the boundary
    /// is the cobar boundary of the split monomial, merged again.
    pub fn boundary(&self, e: &[ExtendedLetter]) -> BTreeMap<ExtendedMonomial, BigInt> {
        let mut out = BTreeMap::new();
        for (m, c) in self.cobar.boundary(&self.split(e)) {
            if let Some(n) = self.merge(m) {
                accumulate(&mut out, n, c);
            }
        }
        out
    }

    /// Basis monomials of a degree whose split form has at most `max_len` letters.
    pub fn basis(&self, degree: usize, max_len: usize) -> Result<Vec<ExtendedMonomial>> {
        let model = self.cobar.model;
        let x0 = model.basepoint();
        Ok(model
            .enumerate_words(degree, Some(max_len), (x0, x0), self.cobar.variant.policy())?
            .into_iter()
            .filter_map(|w| self.merge(w.letters().to_vec()))
            .collect())
    }

    /// `[a*b^op|sigma|b]`, with `[]` for the unit.
    pub fn render(&self, e: &[ExtendedLetter]) -> String {
        let z = self.cobar.model.complex();
        let inner: Vec<String> = e
            .iter()
            .map(|l| match l {
                ExtendedLetter::Group(g) => {
                    g.iter().map(|a| z.render(a)).collect::<Vec<_>>().join("*")
                }
                ExtendedLetter::Cell(a) => z.render(a),
            })
            .collect();
        format!("[{}]", inner.join("|"))
    }
}

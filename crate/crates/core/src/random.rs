//! Seeded random sampling of words, path cells and integer matrices.

use std::collections::{BTreeMap, VecDeque};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::path::PathCell;
use crate::simplicial::{GenId, SimplexTerm};
use crate::word::{LoopModel, LoopWord, RawWord};

/// Seed used by every randomized suite unless one is given explicitly.
pub const DEFAULT_SEED: u64 = 20_240_917;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Samples composable words by random walks in `Z(X)`.
pub struct WordSampler<'a> {
    model: &'a LoopModel,
    by_start: BTreeMap<GenId, Vec<SimplexTerm>>,
    // next edge on a shortest path to the basepoint
    home: BTreeMap<GenId, SimplexTerm>,
    /// Probability of applying a random degeneracy to a sampled letter.
    pub degenerate_probability: f64,
}

impl<'a> WordSampler<'a> {
    /// Letters are nondegenerate simplices of dimension `1..=max_letter_dim`.
    pub fn new(model: &'a LoopModel, max_letter_dim: usize) -> Self {
        let z = model.complex();
        let mut by_start: BTreeMap<GenId, Vec<SimplexTerm>> = BTreeMap::new();
        for g in z.generator_ids() {
            let d = z.generator(g).dim;
            if d >= 1 && d <= max_letter_dim {
                let t = z.term(g);
                by_start.entry(z.endpoints(&t).0).or_default().push(t);
            }
        }
        let mut home = BTreeMap::new();
        let x0 = model.basepoint();
        let mut queue = VecDeque::from([x0]);
        let mut seen = vec![x0];
        while let Some(v) = queue.pop_front() {
            for a in z.generators_of_dim(1) {
                let t = z.term(a);
                let (lo, hi) = z.endpoints(&t);
                if hi == v && !seen.contains(&lo) {
                    seen.push(lo);
                    home.insert(lo, t);
                    queue.push_back(lo);
                }
            }
        }
        WordSampler {
            model,
            by_start,
            home,
            degenerate_probability: 0.0,
        }
    }

    fn random_letter<R: Rng>(&self, rng: &mut R, at: GenId) -> Option<SimplexTerm> {
        let options = self.by_start.get(&at)?;
        let mut l = options[rng.gen_range(0..options.len())].clone();
        if rng.gen_bool(self.degenerate_probability) {
            let j = rng.gen_range(0..=l.dim());
            l = self
                .model
                .complex()
                .degeneracy(&l, j)
                .expect("index in range");
        }
        Some(l)
    }

    /// A raw walk of up to `steps` random letters from `start`, closed up by a
    /// shortest edge path back to the basepoint.
    pub fn sample_raw_from<R: Rng>(&self, rng: &mut R, start: GenId, steps: usize) -> RawWord {
        let z = self.model.complex();
        let mut letters = Vec::new();
        let mut at = start;
        let n = rng.gen_range(0..=steps);
        for _ in 0..n {
            let Some(l) = self.random_letter(rng, at) else {
                break;
            };
            at = z.endpoints(&l).1;
            letters.push(l);
        }
        while let Some(e) = self.home.get(&at) {
            at = z.endpoints(e).1;
            letters.push(e.clone());
        }
        self.model
            .raw_word(start, letters)
            .expect("walks are composable")
    }

    pub fn sample_raw<R: Rng>(&self, rng: &mut R, steps: usize) -> RawWord {
        self.sample_raw_from(rng, self.model.basepoint(), steps)
    }

    /// A reduced random loop at the basepoint.
    pub fn sample<R: Rng>(&self, rng: &mut R, steps: usize) -> LoopWord {
        self.model.reduce(&self.sample_raw(rng, steps))
    }

    /// A random path cell: a nondegenerate simplex of `X` of dimension at most
    /// `max_base_dim` followed by a random walk home.
    pub fn sample_path<R: Rng>(&self, rng: &mut R, max_base_dim: usize, steps: usize) -> PathCell {
        let z = self.model.complex();
        let bases: Vec<GenId> = z
            .generator_ids()
            .filter(|&g| z.generator(g).dim <= max_base_dim && z.op(g).is_none_or(|o| o > g))
            .collect();
        let base = z.term(bases[rng.gen_range(0..bases.len())]);
        let end = z.endpoints(&base).1;
        let tail = self.model.reduce(&self.sample_raw_from(rng, end, steps));
        PathCell::new(self.model, base, tail).expect("sampled cells are composable")
    }
}

/// A `rows x cols` matrix with entries uniform in `lo..=hi`.
pub fn random_matrix<R: Rng>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    lo: i64,
    hi: i64,
) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect()
}

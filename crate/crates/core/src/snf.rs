//! Sparse integer matrices, Smith normal form and ranks over fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// An integer matrix stored as `(row, col, value)` triples without zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    #[serde(serialize_with = "serialize_entries")]
    entries: Vec<(usize, usize, BigInt)>,
}

fn serialize_entries<S: serde::Serializer>(
    entries: &[(usize, usize, BigInt)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(entries.len()))?;
    for (r, c, v) in entries {
        seq.serialize_element(&(r, c, v.to_string()))?;
    }
    seq.end()
}

impl SparseIntMatrix {
    /// Builds a matrix, summing duplicate positions and dropping zeros.
    pub fn new(rows: usize, cols: usize, entries: Vec<(usize, usize, BigInt)>) -> Result<Self> {
        let mut entries = entries;
        if let Some(&(r, c, _)) = entries.iter().find(|(r, c, _)| *r >= rows || *c >= cols) {
            return Err(Error::CoordinateOutOfRange {
                index: r.max(c),
                max: rows.max(cols),
            });
        }
        entries.sort_by_key(|a| (a.0, a.1));
        let mut merged: Vec<(usize, usize, BigInt)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|e| !e.2.is_zero());
        Ok(SparseIntMatrix {
            rows,
            cols,
            entries: merged,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(j, &v)| (i, j, BigInt::from(v)))
            })
            .collect();
        SparseIntMatrix::new(rows.len(), cols, entries).expect("indices in range")
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            out[*r][*c] = v.clone();
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, BigInt)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> SparseIntMatrix {
        let mut position = vec![None; self.cols];
        for (k, &c) in keep.iter().enumerate() {
            position[c] = Some(k);
        }
        let entries = self
            .entries
            .iter()
            .filter_map(|(r, c, v)| position[*c].map(|k| (*r, k, v.clone())))
            .collect();
        SparseIntMatrix::new(self.rows, keep.len(), entries).expect("indices in range")
    }
}

/// Invariant factors `d1 | d2 | ... | dr` (all positive) of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

// position of a nonzero entry of least magnitude in the block a[t.., t..]
fn min_pivot(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
                if v.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn swap_columns(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// Smith normal form by unimodular row and column operations, choosing
/// pivots of least magnitude.
pub fn smith_normal_form(m: &SparseIntMatrix) -> SmithForm {
    let mut a = m.to_dense();
    let (rows, cols) = (m.rows, m.cols);
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_pivot(&a, t) else {
            break;
        };
        a.swap(t, pi);
        swap_columns(&mut a, t, pj);
        loop {
            // clear column t and row t by division with remainder
            let mut smaller: Option<(usize, usize)> = None;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                add_row_multiple(&mut a, i, t, &-q, t);
                if !a[i][t].is_zero() {
                    smaller = Some((i, t));
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
                if !a[t][j].is_zero() {
                    smaller = Some((t, j));
                }
            }
            if let Some((i, j)) = smaller {
                // a remainder is smaller than the pivot: move the least one in
                let mut best = (i, j);
                for k in t + 1..rows {
                    if !a[k][t].is_zero() && a[k][t].abs() < a[best.0][best.1].abs() {
                        best = (k, t);
                    }
                }
                for k in t + 1..cols {
                    if !a[t][k].is_zero() && a[t][k].abs() < a[best.0][best.1].abs() {
                        best = (t, k);
                    }
                }
                a.swap(t, best.0);
                swap_columns(&mut a, t, best.1);
                continue;
            }
            // divisibility: fold a row with an entry not divisible by the pivot
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a[i][j].is_zero() && !a[i][j].is_multiple_of(&a[t][t]))
            });
            match bad {
                Some(i) => add_row_multiple(&mut a, t, i, &BigInt::from(1), t),
                None => break,
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    SmithForm {
        invariant_factors: factors,
    }
}

// row[dst] += q * row[src], from column `from` on
fn add_row_multiple(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt, from: usize) {
    let (d, s) = if dst < src {
        let (lo, hi) = a.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d[from..].iter_mut().zip(&s[from..]) {
        *x += q * y;
    }
}

/// Rank over the prime field `F_p` by Gaussian elimination.
pub fn rank_mod_p(m: &SparseIntMatrix, p: u64) -> usize {
    let pb = BigInt::from(p);
    let modp = |v: &BigInt| -> u128 {
        let r = v.mod_floor(&pb);
        r.to_u128().expect("residue fits")
    };
    let p = p as u128;
    let mut a: Vec<Vec<u128>> = vec![vec![0; m.cols]; m.rows];
    for (r, c, v) in &m.entries {
        a[*r][*c] = modp(v);
    }
    let inverse = |x: u128| -> u128 {
        // Fermat inverse
        let (mut base, mut exp, mut acc) = (x % p, p - 2, 1u128);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..m.cols {
        let Some(pr) = (rank..m.rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = inverse(a[rank][c]);
        for v in &mut a[rank][c..] {
            *v = *v * inv % p;
        }
        let pivot = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (v, w) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *v = (*v + p * p - f * w) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    use crate::random::{random_matrix, rng};

    fn factors(rows: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&SparseIntMatrix::from_dense(rows))
            .invariant_factors
            .iter()
            .map(|d| d.to_i64().unwrap())
            .collect()
    }

    fn det(a: &[Vec<BigInt>]) -> BigInt {
        // Laplace expansion; fine for the small minors used here
        if a.is_empty() {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for (j, v) in a[0].iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let minor: Vec<Vec<BigInt>> = a[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = v * det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    // invariant factors as quotients of gcds of k x k minors
    fn determinantal_oracle(rows: &[Vec<i64>]) -> Vec<i64> {
        let a = SparseIntMatrix::from_dense(rows).to_dense();
        let (m, n) = (rows.len(), rows.first().map_or(0, Vec::len));
        let mut divisors = vec![BigInt::one()];
        for k in 1..=m.min(n) {
            let mut g = BigInt::zero();
            for rs in crate::simplicial::subsets(m, k) {
                for cs in crate::simplicial::subsets(n, k) {
                    let minor: Vec<Vec<BigInt>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| a[r][c].clone()).collect())
                        .collect();
                    g = g.gcd(&det(&minor));
                }
            }
            if g.is_zero() {
                break;
            }
            divisors.push(g);
        }
        divisors
            .windows(2)
            .map(|w| (&w[1] / &w[0]).to_i64().unwrap())
            .collect()
    }

    #[test]
    fn small_examples() {
        assert!(factors(&[vec![0]]).is_empty());
        assert_eq!(factors(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![0, 0, 5]]), vec![5]);
        assert!(factors(&[]).is_empty());
    }

    #[test]
    fn agrees_with_determinantal_divisors() {
        let mut r = rng(8);
        for _ in 0..150 {
            let m = r.gen_range(1..=5);
            let n = r.gen_range(1..=5);
            let a = random_matrix(&mut r, m, n, -9, 9);
            let f = factors(&a);
            assert_eq!(f, determinantal_oracle(&a), "{a:?}");
            assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        }
    }

    #[test]
    fn invariant_under_permutations() {
        let mut r = rng(9);
        for _ in 0..50 {
            let a = random_matrix(&mut r, 4, 5, -6, 6);
            let mut b = a.clone();
            b.reverse();
            for row in b.iter_mut() {
                row.rotate_left(2);
            }
            assert_eq!(factors(&a), factors(&b));
        }
    }

    #[test]
    fn field_ranks() {
        let m = SparseIntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(rank_mod_p(&m, 3), 1);
        assert_eq!(rank_mod_p(&m, 5), 2);
        assert_eq!(smith_normal_form(&m).rank(), 2);
    }

    #[test]
    fn sparse_construction_merges_and_selects() {
        let m = SparseIntMatrix::new(
            2,
            3,
            vec![(0, 0, 1.into()), (0, 0, (-1).into()), (1, 2, 4.into())],
        )
        .unwrap();
        assert_eq!(m.entries().len(), 1);
        assert_eq!(
            m.select_columns(&[2]).to_dense(),
            vec![vec![0.into()], vec![4.into()]]
        );
        assert!(SparseIntMatrix::new(1, 1, vec![(1, 0, 1.into())]).is_err());
    }
}

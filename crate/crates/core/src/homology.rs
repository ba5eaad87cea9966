//! Homology of the (truncated) chain complex of the loop model: basis
//! assembly, boundary matrices, Betti numbers and torsion, and stabilization
//! scans over growing truncation windows.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::chains::{word_boundary, Ring, Variant};
use crate::error::{Error, Result};
use crate::snf::{rank_mod_p, smith_normal_form, SparseIntMatrix};
use crate::word::{LoopModel, LoopWord};

/// Generator words of a degree at the basepoint, in the deterministic basis
/// order. `max_len = None` is only allowed when the basis is finite.
pub fn basis(
    model: &LoopModel,
    degree: usize,
    variant: Variant,
    max_len: Option<usize>,
) -> Result<Vec<LoopWord>> {
    let x0 = model.basepoint();
    Ok(model
        .enumerate_words(degree, max_len, (x0, x0), variant.policy())?
        .into_iter()
        .filter(|w| !variant.kills(w))
        .collect())
}

/// The boundary from degree `n` to `n - 1` in the window of words with at most
/// `max_len` letters. Rows are the window basis of degree `n - 1` followed by
/// any out-of-window words that boundaries reach; columns reaching those rows
/// are flagged.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub degree: usize,
    pub matrix: SparseIntMatrix,
    pub domain: Vec<LoopWord>,
    pub codomain: Vec<LoopWord>,
    /// Number of leading rows that belong to the window.
    pub window_rows: usize,
    pub flagged: Vec<usize>,
}

impl BoundaryMatrix {
    /// The matrix restricted to window rows (flagged columns lose their
    /// out-of-window entries).
    pub fn window_matrix(&self) -> SparseIntMatrix {
        let entries = self
            .matrix
            .entries()
            .iter()
            .filter(|(r, _, _)| *r < self.window_rows)
            .cloned()
            .collect();
        SparseIntMatrix::new(self.window_rows, self.domain.len(), entries)
            .expect("indices in range")
    }

    pub fn unflagged_columns(&self) -> Vec<usize> {
        (0..self.domain.len())
            .filter(|c| self.flagged.binary_search(c).is_err())
            .collect()
    }
}

pub fn boundary_matrix(
    model: &LoopModel,
    degree: usize,
    variant: Variant,
    max_len: Option<usize>,
) -> Result<BoundaryMatrix> {
    let domain = basis(model, degree, variant, max_len)?;
    let mut codomain = if degree == 0 {
        Vec::new()
    } else {
        basis(model, degree - 1, variant, max_len)?
    };
    let window_rows = codomain.len();
    let mut index: BTreeMap<LoopWord, usize> = codomain
        .iter()
        .enumerate()
        .map(|(k, w)| (w.clone(), k))
        .collect();
    let mut entries = Vec::new();
    let mut flagged = Vec::new();
    for (col, w) in domain.iter().enumerate() {
        let d = word_boundary(model, Ring::Integers, variant, w)?;
        let mut outside = false;
        for (u, c) in d.terms() {
            let row = match index.get(u) {
                Some(&r) => r,
                None => {
                    let r = codomain.len();
                    codomain.push(u.clone());
                    index.insert(u.clone(), r);
                    r
                }
            };
            outside |= row >= window_rows;
            let c: BigInt = c.to_integer();
            entries.push((row, col, c));
        }
        if outside {
            flagged.push(col);
        }
    }
    let matrix = SparseIntMatrix::new(codomain.len(), domain.len(), entries)?;
    Ok(BoundaryMatrix {
        degree,
        matrix,
        domain,
        codomain,
        window_rows,
        flagged,
    })
}

/// One degree of homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyRow {
    pub degree: usize,
    pub ring: String,
    pub variant: String,
    pub max_len: Option<usize>,
    /// Dimension of the chain group in the window.
    pub chain_rank: usize,
    pub free_rank: usize,
    /// Invariant factors greater than one (integer coefficients only).
    pub torsion: Vec<String>,
    /// The value may change with the window: the window cuts off words of
    /// degree `n` or `n + 1`, or some boundary of a degree `n + 1` word left
    /// the window (such words are left out of the image).
    pub provisional: bool,
    /// The basis of this degree is infinite and was cut to the window.
    pub truncated: bool,
    /// Set by a stabilization scan: agrees with the next smaller window.
    pub stabilized: Option<bool>,
}

fn rank_over(m: &SparseIntMatrix, ring: Ring) -> (usize, Vec<BigInt>) {
    match ring {
        Ring::Prime(p) => (rank_mod_p(m, p), Vec::new()),
        Ring::Rationals => (smith_normal_form(m).rank(), Vec::new()),
        Ring::Integers => {
            let s = smith_normal_form(m);
            (s.rank(), s.torsion())
        }
    }
}

/// `H_n` of the chain complex. Cycles are computed exactly on the window
/// basis; boundaries use the degree `n + 1` words whose boundary stays in the
/// window.
pub fn homology(
    model: &LoopModel,
    degree: usize,
    variant: Variant,
    ring: Ring,
    max_len: Option<usize>,
) -> Result<HomologyRow> {
    let outgoing = boundary_matrix(model, degree, variant, max_len)?;
    let incoming = boundary_matrix(model, degree + 1, variant, max_len)?;
    let (rank_out, _) = rank_over(&outgoing.matrix, ring);
    let kept = incoming.unflagged_columns();
    let (rank_in, torsion) = rank_over(&incoming.window_matrix().select_columns(&kept), ring);
    let chain_rank = outgoing.domain.len();
    let truncated = max_len.is_some() && is_infinite(model, degree, variant)?;
    let cut_above = max_len.is_some() && is_infinite(model, degree + 1, variant)?;
    Ok(HomologyRow {
        degree,
        ring: ring.to_string(),
        variant: variant.to_string(),
        max_len,
        chain_rank,
        free_rank: chain_rank - rank_out - rank_in,
        torsion: torsion.iter().map(BigInt::to_string).collect(),
        provisional: truncated || cut_above || !incoming.flagged.is_empty(),
        truncated,
        stabilized: None,
    })
}

// whether the unwindowed basis of this degree is infinite
fn is_infinite(model: &LoopModel, degree: usize, variant: Variant) -> Result<bool> {
    match basis(model, degree, variant, None) {
        Ok(_) => Ok(false),
        Err(Error::UnboundedEnumeration) => Ok(true),
        Err(e) => Err(e),
    }
}

/// Recomputes `H_n` for each window in `lens`; a row is stabilized when it
/// agrees with the row for the previous window.
pub fn stabilization_scan(
    model: &LoopModel,
    degree: usize,
    variant: Variant,
    ring: Ring,
    lens: &[usize],
) -> Result<Vec<HomologyRow>> {
    if lens.is_empty() {
        return Err(Error::UnboundedEnumeration);
    }
    let mut rows: Vec<HomologyRow> = Vec::new();
    for &k in lens {
        let mut row = homology(model, degree, variant, ring, Some(k))?;
        row.stabilized = rows
            .last()
            .map(|prev| prev.free_rank == row.free_rank && prev.torsion == row.torsion);
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{boundary_simplex, sphere_quotient, wedge_aab, wedge_of_circles};

    fn model(x: crate::SimplicialPresentation) -> LoopModel {
        LoopModel::new(&x).unwrap()
    }

    #[test]
    fn sphere_matrices_vanish() {
        let m = model(sphere_quotient(2).unwrap());
        let b = boundary_matrix(&m, 1, Variant::Normalized, None).unwrap();
        assert_eq!((b.matrix.rows(), b.matrix.cols()), (1, 1));
        assert!(b.matrix.is_zero());
        let m3 = model(sphere_quotient(3).unwrap());
        assert!(boundary_matrix(&m3, 2, Variant::Normalized, None)
            .unwrap()
            .matrix
            .is_zero());
    }

    #[test]
    fn loop_homology_of_spheres() {
        let m = model(sphere_quotient(2).unwrap());
        for n in 0..=6 {
            let h = homology(&m, n, Variant::Normalized, Ring::Integers, None).unwrap();
            assert_eq!(
                (h.free_rank, h.torsion.len(), h.provisional),
                (1, 0, false),
                "degree {n}"
            );
        }
        let m3 = model(sphere_quotient(3).unwrap());
        for n in 0..=8 {
            let h = homology(&m3, n, Variant::Normalized, Ring::Integers, None).unwrap();
            assert_eq!(h.free_rank, usize::from(n % 2 == 0), "degree {n}");
        }
    }

    #[test]
    fn de_variant_agrees_on_spheres() {
        let m = model(sphere_quotient(2).unwrap());
        for n in 0..=4 {
            let h = homology(&m, n, Variant::De, Ring::Integers, None).unwrap();
            assert_eq!((h.free_rank, h.torsion.len()), (1, 0), "degree {n}");
        }
    }

    #[test]
    fn free_group_ball() {
        let m = model(wedge_of_circles(2).unwrap());
        for k in 1..=4 {
            let h = homology(&m, 0, Variant::Normalized, Ring::Integers, Some(k)).unwrap();
            assert_eq!(h.free_rank, 2 * 3usize.pow(k as u32) - 1);
            assert!(h.truncated && h.provisional);
        }
        let w1 = model(wedge_of_circles(1).unwrap());
        let b = boundary_matrix(&w1, 1, Variant::Normalized, Some(2)).unwrap();
        assert_eq!(b.matrix.cols(), 0);
    }

    #[test]
    fn contractible_loops() {
        // the boundary of a 3-simplex is simply connected: H_0 of loops is Z
        let m = model(boundary_simplex(3).unwrap());
        let scan =
            stabilization_scan(&m, 0, Variant::Normalized, Ring::Integers, &[2, 3, 4]).unwrap();
        assert!(scan.iter().all(|h| h.free_rank == 1 && h.provisional));
        assert_eq!(scan[2].stabilized, Some(true));
        assert!(homology(&m, 0, Variant::Normalized, Ring::Integers, None).is_err());
    }

    #[test]
    fn field_coefficients_see_torsion() {
        // the 2-cell with faces (a, b, a) makes the degree-0 part a quotient
        let m = model(wedge_aab().unwrap());
        let z = homology(&m, 0, Variant::Normalized, Ring::Integers, Some(2)).unwrap();
        let q = homology(&m, 0, Variant::Normalized, Ring::Rationals, Some(2)).unwrap();
        let f2 = homology(&m, 0, Variant::Normalized, Ring::Prime(2), Some(2)).unwrap();
        assert_eq!(z.free_rank, q.free_rank);
        if z.torsion.iter().all(|t| t.parse::<u64>().unwrap() % 2 != 0) {
            assert_eq!(z.free_rank, f2.free_rank);
        }
    }
}

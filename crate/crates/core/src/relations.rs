//! Bookkeeping for the mixed face/degeneracy relations.
//!
//! A cell of the loop or path model has a bead shape: the dimensions of its
//! beads, plus the dimension of a distinguished first bead for augmented
//! cells. Given the shape of a cell `c`, [`classify`] says how
//! `d^e_i eta_j (c)` rewrites. The table is derived from vertex bookkeeping
//! (`eta_j` repeats the vertex with global index `j - 1`) and is checked
//! exhaustively against the cube model.

use crate::error::{Error, Result};

/// Bead dimensions of a cell. `first` is the first bead of an augmented cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub first: Option<usize>,
    pub beads: Vec<usize>,
}

impl Shape {
    pub fn dim(&self) -> usize {
        self.first.unwrap_or(0) + self.beads.iter().map(|&m| m - 1).sum::<usize>()
    }

    pub fn vertex_count(&self) -> usize {
        let first = self.first.map_or(0, |n0| n0 + 1);
        let rest: usize = self.beads.iter().sum();
        if self.first.is_some() {
            first + rest
        } else {
            rest + 1
        }
    }

    /// Number of degeneracy slots, `dim + beads + 1`.
    pub fn degeneracy_slots(&self) -> usize {
        self.vertex_count()
    }

    fn all_beads(&self) -> Vec<usize> {
        let mut dims: Vec<usize> = self.first.into_iter().collect();
        dims.extend(&self.beads);
        dims
    }

    /// Bead index (over first bead and beads) and local position of the
    /// vertex repeated by `eta_j`. A junction vertex belongs to the later bead.
    pub fn locate_vertex(&self, j: usize) -> Result<(usize, usize)> {
        let slots = self.degeneracy_slots();
        if j == 0 || j > slots {
            return Err(Error::CoordinateOutOfRange {
                index: j,
                max: slots,
            });
        }
        let dims = self.all_beads();
        let mut v = j - 1;
        for (b, &m) in dims.iter().enumerate() {
            // the first bead owns its local vertex 0, later beads start at 1
            let owned_from = usize::from(b > 0);
            let owned = m + 1 - owned_from;
            if v < owned {
                let l = v + owned_from;
                if l == m && b + 1 < dims.len() {
                    return Ok((b + 1, 0));
                }
                return Ok((b, l));
            }
            v -= owned;
        }
        unreachable!("slot count matches vertex count")
    }

    /// Face coordinate of local position `pos` in bead `b`, if that slot is one.
    pub fn coordinate(&self, b: usize, pos: usize) -> Option<usize> {
        let dims = self.all_beads();
        let mut offset = 0;
        for (k, &m) in dims.iter().enumerate() {
            let augmented_first = k == 0 && self.first.is_some();
            let (lo, hi) = if augmented_first { (0, m) } else { (1, m) };
            // slots are positions lo..hi (exclusive), i.e. `hi - lo` coordinates
            if k == b {
                return (pos >= lo && pos < hi).then(|| offset + pos - lo + 1);
            }
            offset += hi - lo;
        }
        None
    }

    /// Shape after repeating a vertex of bead `b`.
    pub fn grown(&self, b: usize) -> Shape {
        let mut s = self.clone();
        match (b, s.first.as_mut()) {
            (0, Some(n0)) => *n0 += 1,
            (b, Some(_)) => s.beads[b - 1] += 1,
            (b, None) => s.beads[b] += 1,
        }
        s
    }
}

/// The rewrite of `d^e_i eta_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rewrite {
    Identity,
    /// `eta_j d^e_i`
    DegeneracyOfFace {
        j: usize,
        i: usize,
    },
    /// `d^0_i eta_j`
    FaceOfDegeneracy {
        i: usize,
        j: usize,
    },
}

/// Classifies `d^e_i eta_j` on a cell of the given shape.
pub fn classify(shape: &Shape, i: usize, j: usize, epsilon: u8) -> Result<Rewrite> {
    let (b, l) = shape.locate_vertex(j)?;
    let grown = shape.grown(b);
    let max = grown.dim();
    if i == 0 || i > max {
        return Err(Error::CoordinateOutOfRange { index: i, max });
    }
    let first = grown.coordinate(b, l);
    let second = grown.coordinate(b, l + 1);
    let (lo, hi) = match (first, second) {
        (Some(x), Some(y)) => (x, y),
        (Some(x), None) | (None, Some(x)) => (x, x),
        (None, None) => unreachable!("beads have positive dimension"),
    };
    let e = usize::from(epsilon);
    Ok(if i < lo {
        Rewrite::DegeneracyOfFace { j: j - e, i }
    } else if i > hi {
        Rewrite::DegeneracyOfFace { j, i: i - 1 }
    } else if lo == hi || epsilon == 1 {
        Rewrite::Identity
    } else if i == lo {
        Rewrite::FaceOfDegeneracy { i: i + 1, j }
    } else {
        Rewrite::DegeneracyOfFace { j, i: i - 1 }
    })
}

/// Raw face and degeneracy operators on a family of cells together with the
/// normal form they are compared in.
pub trait CellCalculus {
    type Cell: Clone + PartialEq;

    fn shape(&self, c: &Self::Cell) -> Shape;
    fn raw_face(&self, c: &Self::Cell, i: usize, epsilon: u8) -> Result<Self::Cell>;
    fn raw_degeneracy(&self, c: &Self::Cell, j: usize) -> Result<Self::Cell>;
    fn canonical(&self, c: &Self::Cell) -> Self::Cell;
    fn render(&self, c: &Self::Cell) -> String;

    fn face(&self, c: &Self::Cell, i: usize, epsilon: u8) -> Result<Self::Cell> {
        Ok(self.canonical(&self.raw_face(c, i, epsilon)?))
    }
}

/// A failed relation instance, with the cell rendered so it can be replayed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationFailure {
    pub cell: String,
    pub relation: String,
    pub lhs: String,
    pub rhs: String,
}

impl std::fmt::Display for RelationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} on {}: {} != {}",
            self.relation, self.cell, self.lhs, self.rhs
        )
    }
}

/// Checks `d^e_j d^e'_i = d^e'_i d^e_(j+1)` for `i <= j` on a canonical cell,
/// normalizing after every face.
pub fn check_cubical<C: CellCalculus>(calc: &C, c: &C::Cell) -> Result<Vec<RelationFailure>> {
    let mut out = Vec::new();
    let n = calc.shape(c).dim();
    for j in 1..n {
        for i in 1..=j {
            for e in 0..2u8 {
                for e2 in 0..2u8 {
                    let lhs = calc.face(&calc.face(c, i, e2)?, j, e)?;
                    let rhs = calc.face(&calc.face(c, j + 1, e)?, i, e2)?;
                    if lhs != rhs {
                        out.push(RelationFailure {
                            cell: calc.render(c),
                            relation: format!("d{e}_{j} d{e2}_{i} = d{e2}_{i} d{e}_{}", j + 1),
                            lhs: calc.render(&lhs),
                            rhs: calc.render(&rhs),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Checks every `d^e_i eta_j` against [`classify`] and `eta_i eta_j = eta_j eta_(i-1)`
/// for `i > j`. Operators are applied raw and the results compared in normal form.
pub fn check_degeneracies<C: CellCalculus>(calc: &C, c: &C::Cell) -> Result<Vec<RelationFailure>> {
    let mut out = Vec::new();
    let shape = calc.shape(c);
    let slots = shape.degeneracy_slots();
    let n = shape.dim();
    let fail = |relation: String, lhs: &C::Cell, rhs: &C::Cell| RelationFailure {
        cell: calc.render(c),
        relation,
        lhs: calc.render(lhs),
        rhs: calc.render(rhs),
    };
    for j in 1..=slots {
        let eta = calc.raw_degeneracy(c, j)?;
        for i in 1..=n + 1 {
            for e in 0..2u8 {
                let lhs = calc.canonical(&calc.raw_face(&eta, i, e)?);
                let (rhs, name) = match classify(&shape, i, j, e)? {
                    Rewrite::Identity => (calc.canonical(c), "Id".to_string()),
                    Rewrite::DegeneracyOfFace { j: j2, i: i2 } => {
                        let f = calc.raw_face(c, i2, e)?;
                        (
                            calc.canonical(&calc.raw_degeneracy(&f, j2)?),
                            format!("eta_{j2} d{e}_{i2}"),
                        )
                    }
                    Rewrite::FaceOfDegeneracy { i: i2, j: j2 } => (
                        calc.canonical(&calc.raw_face(&calc.raw_degeneracy(c, j2)?, i2, 0)?),
                        format!("d0_{i2} eta_{j2}"),
                    ),
                };
                if lhs != rhs {
                    out.push(fail(format!("d{e}_{i} eta_{j} = {name}"), &lhs, &rhs));
                }
            }
        }
        for i in j + 1..=slots + 1 {
            let lhs = calc.canonical(&calc.raw_degeneracy(&eta, i)?);
            let rhs = calc.canonical(&calc.raw_degeneracy(&calc.raw_degeneracy(c, i - 1)?, j)?);
            if lhs != rhs {
                out.push(fail(
                    format!("eta_{i} eta_{j} = eta_{j} eta_{}", i - 1),
                    &lhs,
                    &rhs,
                ));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let s = Shape {
            first: None,
            beads: vec![2, 3],
        };
        assert_eq!(s.dim(), 3);
        assert_eq!(s.degeneracy_slots(), 3 + 2 + 1);
        let a = Shape {
            first: Some(2),
            beads: vec![2],
        };
        assert_eq!(a.dim(), 3);
        assert_eq!(a.degeneracy_slots(), 3 + 1 + 1);
    }

    #[test]
    fn junction_vertex_belongs_to_later_bead() {
        let s = Shape {
            first: None,
            beads: vec![2, 3],
        };
        assert_eq!(s.locate_vertex(1).unwrap(), (0, 0));
        assert_eq!(s.locate_vertex(3).unwrap(), (1, 0));
        assert_eq!(s.locate_vertex(6).unwrap(), (1, 3));
        assert!(s.locate_vertex(7).is_err());
    }

    #[test]
    fn top_cell_rows() {
        // a single bead behaves like the simplicial rows
        let s = Shape {
            first: None,
            beads: vec![3],
        };
        assert_eq!(classify(&s, 1, 2, 1).unwrap(), Rewrite::Identity);
        assert_eq!(classify(&s, 2, 2, 1).unwrap(), Rewrite::Identity);
        assert_eq!(
            classify(&s, 1, 2, 0).unwrap(),
            Rewrite::FaceOfDegeneracy { i: 2, j: 2 }
        );
        assert_eq!(
            classify(&s, 3, 2, 1).unwrap(),
            Rewrite::DegeneracyOfFace { j: 2, i: 2 }
        );
        assert_eq!(
            classify(&s, 1, 3, 1).unwrap(),
            Rewrite::DegeneracyOfFace { j: 2, i: 1 }
        );
        assert_eq!(
            classify(&s, 1, 3, 0).unwrap(),
            Rewrite::DegeneracyOfFace { j: 3, i: 1 }
        );
    }
}

//! Block labels for the cells of the standard cubes `Y(Delta^n) = I^(n-1)` and
//! `Y_0(Delta^n) = I^n_aug`.
//!
//! A label is a sequence of blocks of vertex values; consecutive blocks share
//! their junction value. Augmented labels have a distinguished first block,
//! rendered without an opening bracket (`0,1][1,2]`). Degenerate cells keep
//! repeated values inside a block, so the repeated vertex stays visible.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::relations::{CellCalculus, Shape};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeCell {
    augmented: bool,
    blocks: Vec<Vec<u32>>,
}

impl CubeCell {
    pub fn new(augmented: bool, blocks: Vec<Vec<u32>>) -> Result<Self> {
        let cell = CubeCell { augmented, blocks };
        cell.check()?;
        Ok(cell)
    }

    fn check(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidCubeCell(format!("{self}: {m}")));
        if self.blocks.is_empty() {
            return bad("no blocks");
        }
        for (k, b) in self.blocks.iter().enumerate() {
            let min_len = if k == 0 && self.augmented { 1 } else { 2 };
            if b.len() < min_len {
                return bad("block too short");
            }
            if b.windows(2).any(|w| w[0] > w[1]) {
                return bad("block not increasing");
            }
            if k > 0 && self.blocks[k - 1].last() != b.first() {
                return bad("blocks do not share their junction");
            }
        }
        if !self.augmented && self.blocks[0][0] != 0 {
            return bad("first value must be 0");
        }
        Ok(())
    }

    /// The top cell `[0,..,n]` or `0,..,n]`.
    pub fn top(n: u32, augmented: bool) -> Self {
        CubeCell {
            augmented,
            blocks: vec![(0..=n).collect()],
        }
    }

    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// The `n` of the ambient simplex `Delta^n`.
    pub fn ambient(&self) -> u32 {
        *self.blocks.last().and_then(|b| b.last()).unwrap_or(&0)
    }

    pub fn shape(&self) -> Shape {
        let dims = self.blocks.iter().map(|b| b.len() - 1);
        if self.augmented {
            Shape {
                first: Some(self.blocks[0].len() - 1),
                beads: dims.skip(1).collect(),
            }
        } else {
            Shape {
                first: None,
                beads: dims.collect(),
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.shape().dim()
    }

    pub fn is_degenerate(&self) -> bool {
        self.blocks
            .iter()
            .any(|b| b.windows(2).any(|w| w[0] == w[1]))
    }

    /// The first block as a face of `Delta^n`.
    pub fn psi(&self) -> Result<Vec<u32>> {
        if !self.augmented {
            return Err(Error::NotAugmented);
        }
        Ok(self.blocks[0].clone())
    }

    /// The label relabeled so vertex values are `0, 1, ..` in order, i.e. the
    /// necklace the cell is defined on rather than its image in `Delta^n`.
    pub fn domain_label(&self) -> CubeCell {
        let mut next = 0;
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let start = if k == 0 { next } else { next - 1 };
                let out: Vec<u32> = (start..start + b.len() as u32).collect();
                next = start + b.len() as u32;
                out
            })
            .collect();
        CubeCell {
            augmented: self.augmented,
            blocks,
        }
    }

    fn slot(&self, i: usize) -> Result<(usize, usize)> {
        let shape = self.shape();
        for (b, block) in self.blocks.iter().enumerate() {
            for pos in 0..block.len() {
                if shape.coordinate(b, pos) == Some(i) {
                    return Ok((b, pos));
                }
            }
        }
        Err(Error::CoordinateOutOfRange {
            index: i,
            max: shape.dim(),
        })
    }

    /// `d^e_i` without canonicalization.
    pub fn raw_face(&self, i: usize, epsilon: u8) -> Result<CubeCell> {
        let (b, pos) = self.slot(i)?;
        let mut blocks = self.blocks.clone();
        if epsilon == 1 {
            blocks[b].remove(pos);
        } else {
            let tail = blocks[b].split_off(pos);
            blocks[b].push(tail[0]);
            blocks.insert(b + 1, tail);
        }
        Ok(CubeCell {
            augmented: self.augmented,
            blocks,
        })
    }

    /// `eta_j` without canonicalization: repeats the vertex with global index `j - 1`.
    pub fn raw_degeneracy(&self, j: usize) -> Result<CubeCell> {
        let (b, l) = self.shape().locate_vertex(j)?;
        let mut blocks = self.blocks.clone();
        let v = blocks[b][l];
        blocks[b].insert(l, v);
        Ok(CubeCell {
            augmented: self.augmented,
            blocks,
        })
    }

    pub fn face(&self, i: usize, epsilon: u8) -> Result<CubeCell> {
        Ok(self.raw_face(i, epsilon)?.canonical())
    }

    pub fn degeneracy(&self, j: usize) -> Result<CubeCell> {
        Ok(self.raw_degeneracy(j)?.canonical())
    }

    /// Normal form under bead collapse and the degeneracy shift between beads:
    /// collapsed beads `[x,x]` are dropped, a repeated last vertex of a bead is
    /// moved to the front of the next bead, and a repeated last vertex of the
    /// final bead is moved into a trailing constant bead.
    pub fn canonical(&self) -> CubeCell {
        let mut blocks = self.blocks.clone();
        let aug = self.augmented;
        loop {
            let mut changed = false;
            let first_movable = usize::from(aug);
            // drop collapsed beads
            let mut k = first_movable;
            while k < blocks.len() {
                let b = &blocks[k];
                if b.len() == 2 && b[0] == b[1] && blocks.len() > 1 {
                    blocks.remove(k);
                    changed = true;
                } else {
                    k += 1;
                }
            }
            let count = blocks.len();
            for k in 0..count {
                let b = &blocks[k];
                let top_repeat = b.len() >= 2 && b[b.len() - 1] == b[b.len() - 2];
                if !top_repeat {
                    continue;
                }
                let constant = b.iter().all(|&x| x == b[0]);
                let is_first_aug = aug && k == 0;
                if k + 1 < count {
                    let v = blocks[k].pop().unwrap();
                    blocks[k + 1].insert(0, v);
                    changed = true;
                    break;
                } else if !constant || is_first_aug {
                    let v = blocks[k].pop().unwrap();
                    blocks.push(vec![v, v, v]);
                    changed = true;
                    break;
                }
            }
            if !changed {
                break;
            }
        }
        CubeCell {
            augmented: aug,
            blocks,
        }
    }

    /// All nondegenerate cells of `Y(Delta^n)` (`augmented = false`) or
    /// `Y_0(Delta^n)`, ordered by dimension and then label.
    pub fn enumerate(n: u32, augmented: bool) -> Vec<CubeCell> {
        // each free vertex is deleted, kept, or a junction
        let free: Vec<u32> = if augmented {
            (0..n).collect()
        } else {
            (1..n).collect()
        };
        let total = 3usize.pow(free.len() as u32);
        let mut out = Vec::with_capacity(total);
        for code in 0..total {
            let mut c = code;
            let mut blocks: Vec<Vec<u32>> = vec![if augmented { vec![] } else { vec![0] }];
            for &v in &free {
                let choice = c % 3;
                c /= 3;
                match choice {
                    0 => {}
                    1 => blocks.last_mut().unwrap().push(v),
                    _ => {
                        blocks.last_mut().unwrap().push(v);
                        blocks.push(vec![v]);
                    }
                }
            }
            blocks.last_mut().unwrap().push(n);
            out.push(CubeCell { augmented, blocks });
        }
        out.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        out
    }
}

impl fmt::Display for CubeCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.blocks.iter().enumerate() {
            if !(k == 0 && self.augmented) {
                write!(f, "[")?;
            }
            let parts: Vec<String> = b.iter().map(|v| v.to_string()).collect();
            write!(f, "{}]", parts.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for CubeCell {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let augmented = !s.starts_with('[');
        let body = s.strip_suffix(']').ok_or_else(|| Error::Parse {
            line: 1,
            column: s.len().max(1),
            message: "cube label must end with `]`".into(),
        })?;
        let body = body.strip_prefix('[').unwrap_or(body);
        let mut blocks = Vec::new();
        let mut column = 1 + usize::from(!augmented);
        for part in body.split("][") {
            let block = part
                .split(',')
                .map(|t| {
                    t.trim().parse::<u32>().map_err(|e| Error::Parse {
                        line: 1,
                        column,
                        message: format!("bad vertex `{t}`: {e}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            column += part.len() + 2;
            blocks.push(block);
        }
        CubeCell::new(augmented, blocks)
    }
}

/// The cube model as a [`CellCalculus`].
#[derive(Clone, Copy, Debug, Default)]
pub struct CubeCalculus;

impl CellCalculus for CubeCalculus {
    type Cell = CubeCell;

    fn shape(&self, c: &CubeCell) -> Shape {
        c.shape()
    }

    fn raw_face(&self, c: &CubeCell, i: usize, epsilon: u8) -> Result<CubeCell> {
        c.raw_face(i, epsilon)
    }

    fn raw_degeneracy(&self, c: &CubeCell, j: usize) -> Result<CubeCell> {
        c.raw_degeneracy(j)
    }

    fn canonical(&self, c: &CubeCell) -> CubeCell {
        c.canonical()
    }

    fn render(&self, c: &CubeCell) -> String {
        c.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(s: &str) -> CubeCell {
        s.parse().unwrap()
    }

    #[test]
    fn top_cells() {
        assert_eq!(CubeCell::top(3, false).to_string(), "[0,1,2,3]");
        assert_eq!(CubeCell::top(3, false).dim(), 2);
        assert_eq!(CubeCell::top(2, true).to_string(), "0,1,2]");
        assert_eq!(CubeCell::top(2, true).dim(), 2);
        assert_eq!(CubeCell::top(1, false).dim(), 0);
    }

    #[test]
    fn faces_of_top_cells() {
        let t = CubeCell::top(3, false);
        assert_eq!(t.face(2, 0).unwrap().to_string(), "[0,1,2][2,3]");
        assert_eq!(t.face(1, 1).unwrap().to_string(), "[0,2,3]");
        let a = CubeCell::top(2, true);
        assert_eq!(a.face(1, 0).unwrap().to_string(), "0][0,1,2]");
        assert_eq!(a.face(1, 1).unwrap().to_string(), "1,2]");
        assert!(t.face(3, 0).is_err());
    }

    #[test]
    fn degeneracies() {
        let t = cell("[0,1,2]");
        let d = t.degeneracy(2).unwrap();
        assert_eq!(d.to_string(), "[0,1,1,2]");
        assert_eq!(d.dim(), 2);
        assert_eq!(d.domain_label().to_string(), "[0,1,2,3]");
        assert_eq!(cell("[0,1]").degeneracy(1).unwrap().to_string(), "[0,0,1]");
        // a repeated junction vertex moves into the later block
        let j = cell("[0,1][1,2]").degeneracy(2).unwrap();
        assert_eq!(j.to_string(), "[0,1][1,1,2]");
        // a repeated last vertex becomes a trailing constant block
        let e = cell("[0,1,2]").degeneracy(3).unwrap();
        assert_eq!(e.to_string(), "[0,1,2][2,2,2]");
    }

    #[test]
    fn psi_reads_first_block() {
        assert_eq!(cell("0,1,2]").psi().unwrap(), vec![0, 1, 2]);
        assert_eq!(cell("0][0,1,2]").psi().unwrap(), vec![0]);
        assert_eq!(cell("0,2][2,3]").psi().unwrap(), vec![0, 2]);
        assert!(matches!(cell("[0,1]").psi(), Err(Error::NotAugmented)));
    }

    #[test]
    fn cell_counts() {
        for n in 1..6 {
            let cells = CubeCell::enumerate(n, false);
            assert_eq!(cells.len(), 3usize.pow(n - 1));
            let aug = CubeCell::enumerate(n, true);
            assert_eq!(aug.len(), 3usize.pow(n));
            for c in cells.iter().chain(&aug) {
                assert!(!c.is_degenerate());
                assert_eq!(c.canonical(), *c);
            }
        }
    }

    #[test]
    fn parse_round_trip_and_errors() {
        for s in ["[0,1][1,2]", "0,1][1,2]", "3]", "[0,1,1,2]"] {
            assert_eq!(cell(s).to_string(), s);
        }
        assert!("[1,2]".parse::<CubeCell>().is_err());
        assert!("[0,1][2,3]".parse::<CubeCell>().is_err());
        assert!("[0,x]".parse::<CubeCell>().is_err());
    }

    #[test]
    fn relations_hold_on_small_cubes() {
        use crate::relations::{check_cubical, check_degeneracies};
        for aug in [false, true] {
            for c in CubeCell::enumerate(4, aug) {
                let mut failures = check_cubical(&CubeCalculus, &c).unwrap();
                failures.extend(check_degeneracies(&CubeCalculus, &c).unwrap());
                assert!(failures.is_empty(), "{}", failures[0]);
            }
        }
    }
}

//! Finite simplicial sets presented by nondegenerate generators and face tables.
//!
//! Every simplex is a [`SimplexTerm`]: a nondegenerate generator together with a
//! canonical word of degeneracy operators. Faces, degeneracies and arbitrary
//! restrictions along monotone maps are computed by pulling a surjection of
//! vertex positions back through the face table.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a generator inside its presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId(pub u32);

impl GenId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub dim: usize,
}

/// Degeneracy operators in canonical form: strictly increasing indices, read
/// innermost-first, so `[i1, i2, .., ik]` denotes `s_ik ... s_i2 s_i1`.
///
/// The indices are exactly the positions `t` where the associated vertex
/// surjection repeats, `theta(t) == theta(t + 1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegeneracyWord(Vec<usize>);

impl DegeneracyWord {
    pub fn identity() -> Self {
        DegeneracyWord(Vec::new())
    }

    /// Normalizes a raw word, given innermost-first, of degeneracy operators.
    pub fn from_raw(raw: &[usize]) -> Self {
        let base = raw.iter().copied().max().unwrap_or(0) + 1;
        let mut theta: Vec<usize> = (0..=base).collect();
        for &j in raw {
            debug_assert!(j < theta.len());
            let v = theta[j];
            theta.insert(j + 1, v);
        }
        Self::from_surjection(&theta)
    }

    /// Reads the canonical word off a monotone surjection given as its value list.
    pub fn from_surjection(theta: &[usize]) -> Self {
        DegeneracyWord(
            theta
                .windows(2)
                .enumerate()
                .filter(|(_, w)| w[0] == w[1])
                .map(|(t, _)| t)
                .collect(),
        )
    }

    /// The vertex surjection `[base_dim + len] -> [base_dim]`.
    pub fn surjection(&self, base_dim: usize) -> Vec<usize> {
        let total = base_dim + self.0.len();
        let mut out = Vec::with_capacity(total + 1);
        let mut value = 0;
        out.push(0);
        let mut k = 0;
        for t in 0..total {
            if k < self.0.len() && self.0[k] == t {
                k += 1;
            } else {
                value += 1;
            }
            out.push(value);
        }
        out
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }
}

/// A simplex `s_ik ... s_i1 (g)` of a presented simplicial set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexTerm {
    generator: GenId,
    degeneracies: DegeneracyWord,
    dim: usize,
}

impl SimplexTerm {
    /// Builds a term; `gen_dim` must be the dimension of `generator`.
    pub fn new(generator: GenId, gen_dim: usize, degeneracies: DegeneracyWord) -> Result<Self> {
        for (t, &i) in degeneracies.indices().iter().enumerate() {
            if i > gen_dim + t {
                return Err(Error::DegeneracyIndex {
                    index: i,
                    dim: gen_dim + t,
                });
            }
        }
        let dim = gen_dim + degeneracies.len();
        Ok(SimplexTerm {
            generator,
            degeneracies,
            dim,
        })
    }

    pub fn nondegenerate(generator: GenId, gen_dim: usize) -> Self {
        SimplexTerm {
            generator,
            degeneracies: DegeneracyWord::identity(),
            dim: gen_dim,
        }
    }

    pub fn generator(&self) -> GenId {
        self.generator
    }

    pub fn degeneracies(&self) -> &DegeneracyWord {
        &self.degeneracies
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_dim(&self) -> usize {
        self.dim - self.degeneracies.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degeneracies.is_empty()
    }

    /// Positive-dimensional degeneracy of a vertex.
    pub fn is_vertex_degenerate(&self) -> bool {
        self.dim > 0 && self.generator_dim() == 0
    }

    /// Whether the last two vertices coincide, i.e. the term is `s_{dim-1}` of something.
    pub fn is_top_degenerate(&self) -> bool {
        self.dim > 0 && self.degeneracies.contains(self.dim - 1)
    }

    /// Whether the first two vertices coincide.
    pub fn is_bottom_degenerate(&self) -> bool {
        self.degeneracies.contains(0)
    }

    fn surjection(&self) -> Vec<usize> {
        self.degeneracies.surjection(self.generator_dim())
    }
}

/// A finite simplicial set given by nondegenerate generators and face tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialPresentation {
    name: String,
    generators: Vec<Generator>,
    faces: Vec<Vec<SimplexTerm>>,
    basepoint: GenId,
    op: Vec<Option<GenId>>,
    index: HashMap<String, GenId>,
}

impl SimplicialPresentation {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.generators[id.index()]
    }

    pub fn generator_ids(&self) -> impl Iterator<Item = GenId> + '_ {
        (0..self.generators.len()).map(|i| GenId(i as u32))
    }

    pub fn generators_of_dim(&self, dim: usize) -> Vec<GenId> {
        self.generator_ids()
            .filter(|&g| self.generator(g).dim == dim)
            .collect()
    }

    pub fn max_dim(&self) -> usize {
        self.generators.iter().map(|g| g.dim).max().unwrap_or(0)
    }

    /// Nondegenerate generator counts indexed by dimension.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut out = vec![0; self.max_dim() + 1];
        for g in &self.generators {
            out[g.dim] += 1;
        }
        out
    }

    pub fn name_of(&self, id: GenId) -> &str {
        &self.generators[id.index()].name
    }

    pub fn lookup(&self, name: &str) -> Result<GenId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn basepoint(&self) -> GenId {
        self.basepoint
    }

    pub fn vertices(&self) -> Vec<GenId> {
        self.generators_of_dim(0)
    }

    /// The op partner of a 1-generator, when the presentation carries a pairing.
    pub fn op(&self, id: GenId) -> Option<GenId> {
        self.op[id.index()]
    }

    pub fn has_op_pairing(&self) -> bool {
        self.op.iter().any(Option::is_some)
    }

    pub fn face_table(&self, id: GenId) -> &[SimplexTerm] {
        &self.faces[id.index()]
    }

    pub fn term(&self, id: GenId) -> SimplexTerm {
        SimplexTerm::nondegenerate(id, self.generator(id).dim)
    }

    pub fn vertex_term(&self, id: GenId) -> SimplexTerm {
        SimplexTerm::nondegenerate(id, 0)
    }

    /// Pulls `t` back along the monotone map `positions: [r] -> [dim t]`.
    pub fn restrict(&self, t: &SimplexTerm, positions: &[usize]) -> Result<SimplexTerm> {
        let theta = t.surjection();
        let mut values = Vec::with_capacity(positions.len());
        for &p in positions {
            let v = *theta.get(p).ok_or(Error::VertexPosition {
                position: p,
                dim: t.dim,
            })?;
            values.push(v);
        }
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        Ok(self.restrict_generator(t.generator, values))
    }

    // `values` is weakly increasing into [0, dim g].
    fn restrict_generator(&self, g: GenId, mut values: Vec<usize>) -> SimplexTerm {
        let mut g = g;
        loop {
            let gdim = self.generator(g).dim;
            let mut present = vec![false; gdim + 1];
            for &v in &values {
                present[v] = true;
            }
            match present.iter().rposition(|&p| !p) {
                None => {
                    return SimplexTerm {
                        generator: g,
                        degeneracies: DegeneracyWord::from_surjection(&values),
                        dim: values.len() - 1,
                    }
                }
                Some(missing) => {
                    let face = &self.faces[g.index()][missing];
                    let phi = face.surjection();
                    values = values
                        .iter()
                        .map(|&v| phi[if v > missing { v - 1 } else { v }])
                        .collect();
                    g = face.generator;
                }
            }
        }
    }

    pub fn face(&self, t: &SimplexTerm, i: usize) -> Result<SimplexTerm> {
        if t.dim == 0 || i > t.dim {
            return Err(Error::FaceIndex {
                index: i,
                dim: t.dim,
            });
        }
        let positions: Vec<usize> = (0..=t.dim).filter(|&p| p != i).collect();
        self.restrict(t, &positions)
    }

    pub fn degeneracy(&self, t: &SimplexTerm, j: usize) -> Result<SimplexTerm> {
        if j > t.dim {
            return Err(Error::DegeneracyIndex {
                index: j,
                dim: t.dim,
            });
        }
        let positions: Vec<usize> = (0..=t.dim + 1)
            .map(|p| if p <= j { p } else { p - 1 })
            .collect();
        self.restrict(t, &positions)
    }

    /// Applies `s_0` `times` times.
    pub fn bottom_degeneracy(&self, t: &SimplexTerm, times: usize) -> SimplexTerm {
        let mut positions = vec![0; times];
        positions.extend(0..=t.dim);
        self.restrict(t, &positions).expect("positions in range")
    }

    /// The vertex at `position` of `t`.
    pub fn vertex(&self, t: &SimplexTerm, position: usize) -> Result<GenId> {
        Ok(self.restrict(t, &[position])?.generator)
    }

    /// First and last vertex.
    pub fn endpoints(&self, t: &SimplexTerm) -> (GenId, GenId) {
        let theta = t.surjection();
        let first = self
            .restrict_generator(t.generator, vec![theta[0]])
            .generator;
        let last = self
            .restrict_generator(t.generator, vec![theta[t.dim]])
            .generator;
        (first, last)
    }

    /// Front face on vertices `0..=i`.
    pub fn front(&self, t: &SimplexTerm, i: usize) -> Result<SimplexTerm> {
        let positions: Vec<usize> = (0..=i).collect();
        self.restrict(t, &positions)
    }

    /// Back face on vertices `i..=dim`.
    pub fn back(&self, t: &SimplexTerm, i: usize) -> Result<SimplexTerm> {
        let positions: Vec<usize> = (i..=t.dim).collect();
        self.restrict(t, &positions)
    }

    /// `s_0 (v)` for a vertex `v`.
    pub fn unit_edge(&self, v: GenId) -> SimplexTerm {
        SimplexTerm {
            generator: v,
            degeneracies: DegeneracyWord(vec![0]),
            dim: 1,
        }
    }

    /// The fully degenerate term of dimension `dim` on vertex `v`.
    pub fn vertex_degeneracy(&self, v: GenId, dim: usize) -> SimplexTerm {
        SimplexTerm {
            generator: v,
            degeneracies: DegeneracyWord((0..dim).collect()),
            dim,
        }
    }

    /// All simplices (degenerate or not) of dimension `dim`.
    pub fn simplices_of_dim(&self, dim: usize) -> Vec<SimplexTerm> {
        let mut out = Vec::new();
        for g in self.generator_ids() {
            let gdim = self.generator(g).dim;
            if gdim > dim {
                continue;
            }
            for subset in subsets(dim, dim - gdim) {
                out.push(SimplexTerm {
                    generator: g,
                    degeneracies: DegeneracyWord(subset),
                    dim,
                });
            }
        }
        out
    }

    pub fn render(&self, t: &SimplexTerm) -> String {
        let mut s = String::new();
        for &i in t.degeneracies.indices().iter().rev() {
            s.push_str(&format!("s{i}."));
        }
        s.push_str(self.name_of(t.generator));
        s
    }

    /// Parses `name`, `name^op` or `s<j>.` prefixed forms such as `s1.s0.v`.
    pub fn parse_term(&self, text: &str) -> Result<SimplexTerm> {
        let mut rest = text.trim();
        let mut raw_outer_first = Vec::new();
        while let Some(stripped) = rest.strip_prefix('s') {
            let digits: String = stripped
                .chars()
                .take_while(|c| c.is_ascii_digit())
                .collect();
            if digits.is_empty() || !stripped[digits.len()..].starts_with('.') {
                break;
            }
            if self.index.contains_key(rest) {
                break;
            }
            raw_outer_first.push(digits.parse::<usize>().map_err(|e| Error::Parse {
                line: 1,
                column: 1,
                message: e.to_string(),
            })?);
            rest = &stripped[digits.len() + 1..];
        }
        let g = self.lookup(rest)?;
        let mut t = self.term(g);
        for &j in raw_outer_first.iter().rev() {
            t = self.degeneracy(&t, j)?;
        }
        Ok(t)
    }

    /// Checks the simplicial identities, the op pairing and the basepoint.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self
            .generators
            .get(self.basepoint.index())
            .is_none_or(|g| g.dim != 0)
        {
            violations.push(Violation::Basepoint);
        }
        for g in self.generator_ids() {
            let n = self.generator(g).dim;
            if n < 2 {
                continue;
            }
            let table = self.face_table(g);
            for j in 1..=n {
                for i in 0..j {
                    let lhs = self.face(&table[j], i);
                    let rhs = self.face(&table[i], j - 1);
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) if l == r => {}
                        (l, r) => violations.push(Violation::SimplicialIdentity {
                            generator: self.name_of(g).to_string(),
                            i,
                            j,
                            lhs: l.map(|t| self.render(&t)).unwrap_or_default(),
                            rhs: r.map(|t| self.render(&t)).unwrap_or_default(),
                        }),
                    }
                }
            }
        }
        for a in self.generator_ids() {
            let Some(b) = self.op(a) else { continue };
            let name = self.name_of(a).to_string();
            if self.generator(a).dim != 1 || self.generator(b).dim != 1 {
                violations.push(Violation::OpPairing {
                    generator: name,
                    detail: "op partner must pair 1-generators".into(),
                });
                continue;
            }
            if self.op(b) != Some(a) {
                violations.push(Violation::OpPairing {
                    generator: name.clone(),
                    detail: "op pairing is not an involution".into(),
                });
            }
            let (fa, fb) = (self.face_table(a), self.face_table(b));
            if fb[0] != fa[1] || fb[1] != fa[0] {
                violations.push(Violation::OpPairing {
                    generator: name,
                    detail: "faces of the op partner are not swapped".into(),
                });
            }
        }
        ValidationReport { violations }
    }

    /// Adjoins a formal inverse `a^op` for every nondegenerate 1-simplex `a`.
    pub fn z_extension(&self) -> Result<Self> {
        if self.has_op_pairing() {
            return Err(Error::AlreadyExtended);
        }
        let mut out = self.clone();
        for a in self.generators_of_dim(1) {
            let name = format!("{}^op", self.name_of(a));
            if out.index.contains_key(&name) {
                return Err(Error::DuplicateGenerator(name));
            }
            let id = GenId(out.generators.len() as u32);
            let fa = self.face_table(a);
            out.generators.push(Generator {
                name: name.clone(),
                dim: 1,
            });
            out.faces.push(vec![fa[1].clone(), fa[0].clone()]);
            out.op.push(Some(a));
            out.op[a.index()] = Some(id);
            out.index.insert(name, id);
        }
        Ok(out)
    }

    /// A copy with one face-table entry replaced; the entry must keep its dimension.
    pub fn with_face(&self, g: GenId, index: usize, face: SimplexTerm) -> Result<Self> {
        let n = self.generator(g).dim;
        if index > n || n == 0 {
            return Err(Error::FaceIndex { index, dim: n });
        }
        if face.dim + 1 != n {
            return Err(Error::FaceDimension {
                name: self.name_of(g).to_string(),
                index,
                expected: n - 1,
                got: face.dim,
            });
        }
        let mut out = self.clone();
        out.faces[g.index()][index] = face;
        Ok(out)
    }
}

/// Strictly increasing `k`-subsets of `0..n`, lexicographic.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    SimplicialIdentity {
        generator: String,
        i: usize,
        j: usize,
        lhs: String,
        rhs: String,
    },
    OpPairing {
        generator: String,
        detail: String,
    },
    Basepoint,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SimplicialIdentity {
                generator,
                i,
                j,
                lhs,
                rhs,
            } => write!(
                f,
                "{generator}: d{i} d{j} = {lhs} but d{} d{i} = {rhs}",
                j - 1
            ),
            Violation::OpPairing { generator, detail } => write!(f, "{generator}: {detail}"),
            Violation::Basepoint => write!(f, "basepoint missing or not a vertex"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Incremental construction of a [`SimplicialPresentation`].
#[derive(Debug, Default)]
pub struct PresentationBuilder {
    name: String,
    generators: Vec<Generator>,
    faces: Vec<Vec<SimplexTerm>>,
    index: HashMap<String, GenId>,
    basepoint: Option<GenId>,
    op: Vec<Option<GenId>>,
}

impl PresentationBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        PresentationBuilder {
            name: name.into(),
            ..Default::default()
        }
    }

    fn push(&mut self, name: &str, dim: usize, faces: Vec<SimplexTerm>) -> Result<GenId> {
        if self.index.contains_key(name) {
            return Err(Error::DuplicateGenerator(name.to_string()));
        }
        let id = GenId(self.generators.len() as u32);
        self.generators.push(Generator {
            name: name.to_string(),
            dim,
        });
        self.faces.push(faces);
        self.op.push(None);
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn vertex(&mut self, name: &str) -> Result<GenId> {
        self.push(name, 0, Vec::new())
    }

    /// Adds a generator of dimension `faces.len() - 1` with the given faces.
    pub fn simplex(&mut self, name: &str, faces: Vec<SimplexTerm>) -> Result<GenId> {
        if faces.len() < 2 {
            return Err(Error::FaceCount {
                name: name.to_string(),
                dim: faces.len().saturating_sub(1),
                expected: 2,
                got: faces.len(),
            });
        }
        let dim = faces.len() - 1;
        for (i, f) in faces.iter().enumerate() {
            if f.generator.index() >= self.generators.len() {
                return Err(Error::UnknownGenerator(format!("#{}", f.generator.0)));
            }
            if f.dim + 1 != dim {
                return Err(Error::FaceDimension {
                    name: name.to_string(),
                    index: i,
                    expected: dim - 1,
                    got: f.dim,
                });
            }
        }
        self.push(name, dim, faces)
    }

    pub fn lookup(&self, name: &str) -> Result<GenId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Nondegenerate term for an already added generator.
    pub fn term(&self, name: &str) -> Result<SimplexTerm> {
        let id = self.lookup(name)?;
        Ok(SimplexTerm::nondegenerate(
            id,
            self.generators[id.index()].dim,
        ))
    }

    /// Degenerate term `s_.. (name)` from a raw innermost-first degeneracy list.
    pub fn degenerate_term(&self, name: &str, raw: &[usize]) -> Result<SimplexTerm> {
        let id = self.lookup(name)?;
        SimplexTerm::new(
            id,
            self.generators[id.index()].dim,
            DegeneracyWord::from_raw(raw),
        )
    }

    pub fn basepoint(&mut self, id: GenId) {
        self.basepoint = Some(id);
    }

    /// Records `a` and `b` as mutual op partners.
    pub fn pair_op(&mut self, a: GenId, b: GenId) {
        self.op[a.index()] = Some(b);
        self.op[b.index()] = Some(a);
    }

    pub fn build(self) -> Result<SimplicialPresentation> {
        let basepoint = match self.basepoint {
            Some(b) => b,
            None => *self
                .generators
                .iter()
                .position(|g| g.dim == 0)
                .map(|i| GenId(i as u32))
                .as_ref()
                .ok_or(Error::Basepoint)?,
        };
        if self.generators[basepoint.index()].dim != 0 {
            return Err(Error::Basepoint);
        }
        Ok(SimplicialPresentation {
            name: self.name,
            generators: self.generators,
            faces: self.faces,
            basepoint,
            op: self.op,
            index: self.index,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::*;

    #[test]
    fn face_of_standard_simplex() {
        let x = standard_simplex(2).unwrap();
        let t = x.parse_term("012").unwrap();
        assert_eq!(x.render(&x.face(&t, 1).unwrap()), "02");
    }

    #[test]
    fn faces_of_degenerate_vertex() {
        let x = wedge_of_circles(1).unwrap();
        let v = x.basepoint();
        let s0v = x.unit_edge(v);
        assert_eq!(x.face(&s0v, 0).unwrap(), x.vertex_term(v));
        assert_eq!(x.face(&s0v, 1).unwrap(), x.vertex_term(v));
    }

    #[test]
    fn face_commutes_past_degeneracy() {
        let x = standard_simplex(3).unwrap();
        let t = x.parse_term("s1.013").unwrap();
        assert_eq!(t.dim(), 3);
        // d3 s1 = s1 d2 on the 2-simplex 013
        let got = x.face(&t, 3).unwrap();
        assert_eq!(x.render(&got), "s1.01");
    }

    #[test]
    fn face_index_errors() {
        let x = standard_simplex(2).unwrap();
        let t = x.parse_term("01").unwrap();
        assert!(matches!(x.face(&t, 2), Err(Error::FaceIndex { .. })));
        let v = x.parse_term("0").unwrap();
        assert!(x.face(&v, 0).is_err());
        assert!(matches!(
            x.parse_term("nope"),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn endpoints_of_terms() {
        let x = standard_simplex(2).unwrap();
        let t = x.parse_term("012").unwrap();
        let (a, b) = x.endpoints(&t);
        assert_eq!((x.name_of(a), x.name_of(b)), ("0", "2"));

        let z = wedge_of_circles(1).unwrap().z_extension().unwrap();
        let s0 = z.unit_edge(z.basepoint());
        assert_eq!(z.endpoints(&s0), (z.basepoint(), z.basepoint()));

        let z = boundary_simplex(2).unwrap().z_extension().unwrap();
        let a = z.parse_term("01").unwrap();
        let aop = z.parse_term("01^op").unwrap();
        let (amin, amax) = z.endpoints(&a);
        assert_eq!(z.endpoints(&aop), (amax, amin));
    }

    #[test]
    fn z_extension_examples() {
        let z = wedge_of_circles(1).unwrap().z_extension().unwrap();
        assert_eq!(z.generators_of_dim(1).len(), 2);
        let a = z.lookup("a").unwrap();
        let aop = z.lookup("a^op").unwrap();
        assert_eq!(z.op(a), Some(aop));
        assert_eq!(z.op(aop), Some(a));
        for f in z.face_table(aop) {
            assert_eq!(f.generator(), z.basepoint());
        }

        let s = sphere_quotient(2).unwrap();
        let zs = s.z_extension().unwrap();
        assert_eq!(zs.counts_by_dim(), s.counts_by_dim());

        let t = boundary_simplex(2).unwrap().z_extension().unwrap();
        let names: Vec<_> = t
            .generators_of_dim(1)
            .into_iter()
            .map(|g| t.name_of(g).to_string())
            .collect();
        assert_eq!(names, ["01", "02", "12", "01^op", "02^op", "12^op"]);
        assert!(matches!(t.z_extension(), Err(Error::AlreadyExtended)));
    }

    #[test]
    fn validate_reports() {
        assert!(boundary_simplex(3).unwrap().validate().is_ok());
        assert!(boundary_simplex(2)
            .unwrap()
            .z_extension()
            .unwrap()
            .validate()
            .is_ok());
        assert!(sphere_quotient(4).unwrap().validate().is_ok());
    }

    #[test]
    fn validate_lists_exactly_the_corrupted_instances() {
        // Replace d0(012) = 12 by 13 in the boundary of the 3-simplex. The affected
        // identities are d0 d1 = d0 d0 (2 vs 3) and d0 d2 = d1 d0 (1 vs 1, still fine).
        let x = boundary_simplex(3).unwrap();
        let g = x.lookup("012").unwrap();
        let bad = x.with_face(g, 0, x.parse_term("13").unwrap()).unwrap();
        let report = bad.validate();
        let hits: Vec<_> = report
            .violations
            .iter()
            .map(|v| match v {
                Violation::SimplicialIdentity {
                    generator, i, j, ..
                } => (generator.clone(), *i, *j),
                other => panic!("unexpected {other:?}"),
            })
            .collect();
        assert_eq!(hits, vec![("012".to_string(), 0, 1)]);
    }

    #[test]
    fn degeneracy_word_surjection_round_trip() {
        for n in 0..6 {
            for k in 0..4 {
                for s in subsets(n + k, k) {
                    let w = DegeneracyWord(s.clone());
                    let theta = w.surjection(n);
                    assert_eq!(theta.len(), n + k + 1);
                    assert_eq!(*theta.last().unwrap(), n);
                    assert_eq!(DegeneracyWord::from_surjection(&theta), w);
                }
            }
        }
    }

    #[test]
    fn raw_degeneracies_normalize() {
        // s0 s0 = s1 s0
        assert_eq!(DegeneracyWord::from_raw(&[0, 0]).indices(), &[0, 1]);
        // s0 s2 (s2 innermost) = s3 s0
        assert_eq!(DegeneracyWord::from_raw(&[2, 0]).indices(), &[0, 3]);
    }
}

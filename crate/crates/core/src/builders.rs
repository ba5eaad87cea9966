//! Standard presentations: simplicial complexes from facets, simplices and their
//! boundaries, one-cell spheres and wedges of circles.

use std::collections::BTreeSet;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::simplicial::{PresentationBuilder, SimplicialPresentation};

fn simplex_name(vertices: &[u32]) -> String {
    if vertices.iter().all(|&v| v < 10) {
        vertices.iter().map(|v| v.to_string()).collect()
    } else {
        vertices
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("-")
    }
}

/// The ordered simplicial set of a simplicial complex given by its facets.
///
/// Every face of every facet becomes a generator named by its vertex labels,
/// ordered by dimension and then lexicographically. The basepoint is the
/// smallest vertex.
pub fn from_facets(name: &str, facets: &[Vec<u32>]) -> Result<SimplicialPresentation> {
    if facets.is_empty() {
        return Err(Error::MalformedFacets("no facets".into()));
    }
    let mut simplices: BTreeSet<(usize, Vec<u32>)> = BTreeSet::new();
    for facet in facets {
        let mut f = facet.clone();
        f.sort_unstable();
        f.dedup();
        if f.len() != facet.len() {
            return Err(Error::MalformedFacets(format!(
                "facet {facet:?} repeats a vertex"
            )));
        }
        if f.is_empty() {
            return Err(Error::MalformedFacets("empty facet".into()));
        }
        if f.len() > 20 {
            return Err(Error::MalformedFacets(format!(
                "facet {facet:?} is too large"
            )));
        }
        for mask in 1u32..(1 << f.len()) {
            let sub: Vec<u32> = (0..f.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| f[i])
                .collect();
            simplices.insert((sub.len() - 1, sub));
        }
    }
    let mut b = PresentationBuilder::new(name);
    for (dim, verts) in &simplices {
        let name = simplex_name(verts);
        if *dim == 0 {
            b.vertex(&name)?;
        } else {
            let faces = (0..verts.len())
                .map(|i| {
                    let mut f = verts.clone();
                    f.remove(i);
                    b.term(&simplex_name(&f))
                })
                .collect::<Result<Vec<_>>>()?;
            b.simplex(&name, faces)?;
        }
    }
    b.build()
}

/// The standard `n`-simplex with vertices `0..=n`.
pub fn standard_simplex(n: usize) -> Result<SimplicialPresentation> {
    let facet: Vec<u32> = (0..=n as u32).collect();
    from_facets(&format!("simplex:{n}"), &[facet])
}

/// The boundary of the standard `n`-simplex, a model of the `(n-1)`-sphere.
pub fn boundary_simplex(n: usize) -> Result<SimplicialPresentation> {
    if n == 0 {
        return Err(Error::MalformedFacets(
            "boundary of a 0-simplex is empty".into(),
        ));
    }
    let all: Vec<u32> = (0..=n as u32).collect();
    let facets: Vec<Vec<u32>> = (0..=n)
        .map(|i| {
            let mut f = all.clone();
            f.remove(i);
            f
        })
        .collect();
    from_facets(&format!("boundary-simplex:{n}"), &facets)
}

/// The `n`-sphere with one vertex `v` and one nondegenerate `n`-simplex `sigma`
/// whose faces are all the degenerate vertex.
pub fn sphere_quotient(n: usize) -> Result<SimplicialPresentation> {
    if n == 0 {
        return Err(Error::MalformedFacets(
            "sphere dimension must be positive".into(),
        ));
    }
    let mut b = PresentationBuilder::new(format!("sphere:{n}"));
    b.vertex("v")?;
    let raw: Vec<usize> = (0..n - 1).collect();
    let face = b.degenerate_term("v", &raw)?;
    b.simplex("sigma", vec![face; n + 1])?;
    b.build()
}

fn loop_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("a{i}")
    }
}

/// A wedge of `r` circles: one vertex `v` and loops `a`, `b`, ...
pub fn wedge_of_circles(r: usize) -> Result<SimplicialPresentation> {
    let mut b = PresentationBuilder::new(format!("wedge:{r}"));
    b.vertex("v")?;
    for i in 0..r {
        let v = b.term("v")?;
        b.simplex(&loop_name(i), vec![v.clone(), v])?;
    }
    b.build()
}

/// The wedge of two circles `a`, `b` with a 2-simplex `t` whose faces are `(a, b, a)`.
pub fn wedge_aab() -> Result<SimplicialPresentation> {
    let mut b = PresentationBuilder::new("wedge-aab");
    b.vertex("v")?;
    for name in ["a", "b"] {
        let v = b.term("v")?;
        b.simplex(name, vec![v.clone(), v])?;
    }
    let faces = vec![b.term("a")?, b.term("b")?, b.term("a")?];
    b.simplex("t", faces)?;
    b.build()
}

/// Parses a facet list: one facet per line, vertices separated by whitespace or commas.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_facets(text: &str) -> Result<Vec<Vec<u32>>> {
    let mut facets = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let facet = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<u32>().map_err(|e| Error::Parse {
                    line: lineno + 1,
                    column: line.find(s).unwrap_or(0) + 1,
                    message: format!("bad vertex `{s}`: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        facets.push(facet);
    }
    Ok(facets)
}

#[derive(Deserialize)]
struct PresentationFile {
    name: Option<String>,
    basepoint: Option<String>,
    simplices: Vec<SimplexEntry>,
}

#[derive(Deserialize)]
struct SimplexEntry {
    name: String,
    #[serde(default)]
    faces: Vec<String>,
}

// `s1.s0.v` -> ("v", innermost-first [0, 1])
fn split_face_literal(text: &str) -> (&str, Vec<usize>) {
    let mut rest = text.trim();
    let mut outer_first = Vec::new();
    while let Some(stripped) = rest.strip_prefix('s') {
        let digits: String = stripped
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .collect();
        if digits.is_empty() || !stripped[digits.len()..].starts_with('.') {
            break;
        }
        outer_first.push(digits.parse().expect("ascii digits"));
        rest = &stripped[digits.len() + 1..];
    }
    outer_first.reverse();
    (rest, outer_first)
}

/// Parses a JSON presentation: generators in an order where faces come first,
/// vertices without faces, faces written as term literals such as `s0.v`.
pub fn parse_presentation(text: &str) -> Result<SimplicialPresentation> {
    let file: PresentationFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut b = PresentationBuilder::new(file.name.unwrap_or_else(|| "presentation".into()));
    for s in &file.simplices {
        if s.faces.is_empty() {
            b.vertex(&s.name)?;
            continue;
        }
        let faces = s
            .faces
            .iter()
            .map(|f| {
                let (name, raw) = split_face_literal(f);
                b.degenerate_term(name, &raw)
            })
            .collect::<Result<Vec<_>>>()?;
        b.simplex(&s.name, faces)?;
    }
    if let Some(bp) = &file.basepoint {
        let id = b.lookup(bp)?;
        b.basepoint(id);
    }
    b.build()
}

/// Loads a complex from a file: `.json` presentations, anything else a facet list.
pub fn load_file(path: &str) -> Result<SimplicialPresentation> {
    let text = std::fs::read_to_string(path)?;
    if path.ends_with(".json") {
        parse_presentation(&text)
    } else {
        let name = std::path::Path::new(path)
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or(path);
        from_facets(name, &parse_facets(&text)?)
    }
}

/// Resolves a builtin name such as `sphere:2`, `wedge:3`, `boundary-simplex:3`,
/// `simplex:2`, `wedge-aab` or `file:<path>`.
pub fn builtin(name: &str) -> Result<SimplicialPresentation> {
    let (kind, arg) = match name.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (name, None),
    };
    let number = || -> Result<usize> {
        arg.ok_or_else(|| Error::UnknownBuiltin(format!("{name} (missing argument)")))?
            .parse::<usize>()
            .map_err(|e| Error::Parse {
                line: 1,
                column: kind.len() + 2,
                message: e.to_string(),
            })
    };
    match kind {
        "sphere" => sphere_quotient(number()?),
        "wedge" => wedge_of_circles(number()?),
        "boundary-simplex" => boundary_simplex(number()?),
        "simplex" => standard_simplex(number()?),
        "wedge-aab" => wedge_aab(),
        "facets" | "file" => load_file(arg.ok_or_else(|| Error::Io("missing path".into()))?),
        _ => Err(Error::UnknownBuiltin(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GenId;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn simplex_counts_are_binomial() {
        for n in 0..6 {
            let x = standard_simplex(n).unwrap();
            let expected: Vec<usize> = (0..=n).map(|k| binomial(n + 1, k + 1)).collect();
            assert_eq!(x.counts_by_dim(), expected);
            assert!(x.validate().is_ok());
        }
    }

    #[test]
    fn boundary_counts() {
        let x = boundary_simplex(3).unwrap();
        assert_eq!(x.counts_by_dim(), vec![4, 6, 4]);
        assert_eq!(x.name_of(x.basepoint()), "0");
    }

    #[test]
    fn sphere_faces_are_degenerate_vertex() {
        let x = sphere_quotient(3).unwrap();
        let sigma = x.lookup("sigma").unwrap();
        for f in x.face_table(sigma) {
            assert!(f.is_vertex_degenerate());
            assert_eq!(x.render(f), "s1.s0.v");
        }
        assert!(x.validate().is_ok());
        assert!(sphere_quotient(1).unwrap().validate().is_ok());
    }

    #[test]
    fn wedge_and_aab_fixture() {
        let w = wedge_of_circles(3).unwrap();
        assert_eq!(w.counts_by_dim(), vec![1, 3]);
        let x = wedge_aab().unwrap();
        assert!(x.validate().is_ok());
        assert_eq!(x.counts_by_dim(), vec![1, 2, 1]);
    }

    #[test]
    fn facet_errors() {
        assert!(matches!(
            from_facets("bad", &[vec![0, 0, 1]]),
            Err(Error::MalformedFacets(_))
        ));
        assert!(from_facets("bad", &[]).is_err());
        let err = parse_facets("0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn json_presentation() {
        let text = r#"{
            "name": "aab",
            "simplices": [
                {"name": "v"},
                {"name": "a", "faces": ["v", "v"]},
                {"name": "b", "faces": ["v", "v"]},
                {"name": "t", "faces": ["a", "b", "a"]},
                {"name": "c", "faces": ["s0.v", "s0.v", "s0.v"]}
            ]
        }"#;
        let x = parse_presentation(text).unwrap();
        assert_eq!(x.counts_by_dim(), vec![1, 2, 2]);
        assert_eq!(
            x.face_table(x.lookup("t").unwrap()),
            wedge_aab().unwrap().face_table(GenId(3))
        );
        assert!(x.validate().is_ok());
        let err = parse_presentation(
            "{\n \"simplices\": [ {\"name\": \"a\", \"faces\": [\"q\", \"q\"]} ]}",
        );
        assert_eq!(err.unwrap_err(), Error::UnknownGenerator("q".into()));
        assert!(matches!(
            parse_presentation("{\n  oops"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert_eq!(split_face_literal("s1.s0.v"), ("v", vec![0, 1]));
    }

    #[test]
    fn large_labels_use_separator() {
        let x = from_facets("big", &[vec![3, 12]]).unwrap();
        assert!(x.lookup("3-12").is_ok());
    }
}

//! Diagram files and the small text specs used on the command line.
//!
//! A diagram file is the JSON form of [`DiagramData`]; see
//! `docs/diagram-format.md` for the schema.

use thiserror::Error;

use crate::chains::{ChainError, Domain, Polygon};
use crate::diagram::{DiagramData, HeegaardDiagram, ValidationReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(ValidationReport),
}

/// Reads the raw file structure without validating it.
pub fn parse_data(text: &str) -> Result<DiagramData, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

// serde_json appends " at line L column C" to its messages.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Reads and validates a diagram file.
pub fn parse(text: &str) -> Result<HeegaardDiagram, ParseError> {
    HeegaardDiagram::new(parse_data(text)?).map_err(ParseError::Invalid)
}

/// Pretty JSON with a trailing newline.
pub fn emit(data: &DiagramData) -> String {
    let mut s = serde_json::to_string_pretty(data).expect("diagram data serializes");
    s.push('\n');
    s
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("malformed {what} `{text}`")]
    Malformed { what: &'static str, text: String },
    #[error(transparent)]
    Chain(#[from] ChainError),
}

fn malformed(what: &'static str, text: &str) -> SpecError {
    SpecError::Malformed { what, text: text.to_string() }
}

/// `x1+x2,y1+y2,z1+z2`: one generator per family pair `(i, i+1)`.
pub fn parse_polygon(diagram: &HeegaardDiagram, spec: &str) -> Result<Polygon, SpecError> {
    let mut gens = Vec::new();
    for part in spec.split(',') {
        let names: Vec<&str> = part.split('+').map(str::trim).collect();
        if names.iter().any(|n| n.is_empty()) {
            return Err(malformed("generator list", spec));
        }
        gens.push(names);
    }
    Ok(Polygon::from_names(diagram, &gens)?)
}

/// `T1:1,H:-2`, or `0` for the zero chain.
pub fn parse_domain<'a>(diagram: &'a HeegaardDiagram, spec: &str) -> Result<Domain<'a>, SpecError> {
    if spec.trim() == "0" {
        return Ok(Domain::zero(diagram));
    }
    let mut terms = Vec::new();
    for part in spec.split(',') {
        let (name, coeff) = part.split_once(':').ok_or_else(|| malformed("domain", spec))?;
        let coeff: i64 = coeff.trim().parse().map_err(|_| malformed("domain", spec))?;
        terms.push((name.trim(), coeff));
    }
    Ok(Domain::from_named(diagram, &terms)?)
}

/// `i,j` with 1-based families, returned 0-based.
pub fn parse_pair(spec: &str) -> Result<(usize, usize), SpecError> {
    let bad = || malformed("family pair", spec);
    let (a, b) = spec.split_once(',').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || b == 0 {
        return Err(bad());
    }
    Ok((a - 1, b - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fixture, named};

    #[test]
    fn bundled_files_parse() {
        let d = parse(&emit(&fixture("s3_genus1").unwrap().data())).unwrap();
        assert_eq!((d.curves_per_family(), d.family_count(), d.regions().len()), (1, 2, 1));
        let d = parse(&emit(&fixture("torus_triple").unwrap().data())).unwrap();
        assert_eq!((d.regions().len(), d.vertices().len()), (3, 3));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse("{\n  \"genus\": 1,\n  oops\n}") {
            Err(ParseError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dangling_arc_end_names_the_arc() {
        let mut data = fixture("torus_triple").unwrap().data();
        let arc = data.arcs[0].id.clone();
        data.arcs[0].head = "nowhere:0".into();
        let err = parse(&emit(&data)).unwrap_err().to_string();
        assert!(err.contains(&arc) && err.contains("nowhere"), "{err}");
    }

    #[test]
    fn specs() {
        let d = named("torus_triple");
        let p = parse_polygon(&d, "x, y ,z").unwrap();
        assert_eq!(p.len(), 3);
        assert!(parse_polygon(&d, "x,,z").is_err());
        assert!(matches!(parse_polygon(&d, "y,x,z"), Err(SpecError::Chain(_))));
        assert_eq!(parse_domain(&d, "T1:1,H:-2").unwrap().to_string(), "T1:1,H:-2");
        assert!(parse_domain(&d, "0").unwrap().is_zero());
        assert!(parse_domain(&d, "T1").is_err());
        assert!(matches!(parse_domain(&d, "Z:1"), Err(SpecError::Chain(ChainError::UnknownRegion(_)))));
        assert_eq!(parse_pair("1,3").unwrap(), (0, 2));
        assert!(parse_pair("0,1").is_err());
    }
}

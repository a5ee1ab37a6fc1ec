//! Quiver and representation text files.
//!
//! ```text
//! field Q            # or: field Fp 5
//! vertices 2
//! arrow a 1 2
//! arrow b 1 2
//! rep M
//! dim 1 1
//! dim 2 1
//! map a 1
//! map b 3/2
//! ```
//!
//! One declaration per line, `#` starts a comment. Vertices are numbered
//! from 1. A `rep` line opens a representation block; vertices without a
//! `dim` line have dimension 0 and arrows without a `map` line act by zero.
//! Map entries are row-major, `dim(target) x dim(source)`.

use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};
use strata_core::quiver::{is_acyclic, Arrow};
use strata_core::{Field, FieldSpec, Mat, PrimeField, Quiver, Rationals, Rep};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// A representation block with entries already normalised for the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepBlock {
    pub name: String,
    pub dims: Vec<usize>,
    /// Row-major entries per arrow, in arrow order.
    pub maps: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub field: FieldSpec,
    pub quiver: Arc<Quiver>,
    pub reps: Vec<RepBlock>,
}

/// Element parsing and rendering for whichever field the file selects.
#[derive(Clone, Copy)]
enum AnyField {
    Q(Rationals),
    P(PrimeField),
}

impl AnyField {
    fn of(spec: FieldSpec) -> Self {
        match spec {
            FieldSpec::Rationals => AnyField::Q(Rationals),
            FieldSpec::PrimeField(p) => AnyField::P(PrimeField::new(u64::from(p)).expect("spec holds a valid prime")),
        }
    }

    fn normalise(&self, s: &str) -> Option<String> {
        match self {
            AnyField::Q(f) => f.parse(s).map(|x| f.render(&x)),
            AnyField::P(f) => f.parse(s).map(|x| f.render(&x)),
        }
    }
}

struct OpenRep {
    name: String,
    dims: Vec<usize>,
    /// Raw entries with the line they came from.
    maps: Vec<Option<(usize, Vec<String>)>>,
}

impl Document {
    /// Parses a file. `field_override` replaces the file's `field` line.
    pub fn parse(text: &str, field_override: Option<FieldSpec>) -> Result<Document, ParseError> {
        let mut field: Option<FieldSpec> = None;
        let mut n: Option<usize> = None;
        let mut arrows: Vec<Arrow> = Vec::new();
        let mut quiver: Option<Arc<Quiver>> = None;
        let mut open: Option<OpenRep> = None;
        let mut blocks: Vec<OpenRep> = Vec::new();
        let mut last_line = 0;

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("");
            let words: Vec<&str> = content.split_whitespace().collect();
            let Some((&head, args)) = words.split_first() else {
                continue;
            };
            match head {
                "field" => {
                    if n.is_some() {
                        return err(line, "`field` must precede `vertices`");
                    }
                    if field.is_some() {
                        return err(line, "duplicate `field` declaration");
                    }
                    field = Some(parse_field(line, args)?);
                }
                "vertices" => {
                    if n.is_some() {
                        return err(line, "duplicate `vertices` declaration");
                    }
                    let [count] = args else {
                        return err(line, "expected `vertices <count>`");
                    };
                    let count = parse_usize(line, count, "vertex count")?;
                    if count == 0 {
                        return err(line, "a quiver needs at least one vertex");
                    }
                    n = Some(count);
                }
                "arrow" => {
                    let Some(count) = n else {
                        return err(line, "`arrow` before `vertices`");
                    };
                    if quiver.is_some() {
                        return err(line, "arrows must be declared before the first `rep`");
                    }
                    let [id, s, t] = args else {
                        return err(line, "expected `arrow <id> <source> <target>`");
                    };
                    let source = parse_vertex(line, s, count)?;
                    let target = parse_vertex(line, t, count)?;
                    if arrows.iter().any(|a| a.id == *id) {
                        return err(line, format!("duplicate arrow id `{id}`"));
                    }
                    arrows.push(Arrow {
                        id: (*id).to_string(),
                        source,
                        target,
                    });
                    let pairs: Vec<(usize, usize)> = arrows.iter().map(|a| (a.source, a.target)).collect();
                    if !is_acyclic(count, &pairs) {
                        return err(line, format!("arrow `{id}` closes a directed cycle"));
                    }
                }
                "rep" => {
                    let Some(count) = n else {
                        return err(line, "`rep` before `vertices`");
                    };
                    if quiver.is_none() {
                        quiver = Some(Arc::new(build_quiver(line, count, &arrows)?));
                    }
                    let name = match args {
                        [] => format!("M{}", blocks.len() + open.is_some() as usize + 1),
                        [name] => (*name).to_string(),
                        _ => return err(line, "expected `rep [name]`"),
                    };
                    blocks.extend(open.take());
                    open = Some(OpenRep {
                        name,
                        dims: vec![0; count],
                        maps: vec![None; arrows.len()],
                    });
                }
                "dim" => {
                    let (Some(count), Some(rep)) = (n, open.as_mut()) else {
                        return err(line, "`dim` outside a `rep` block");
                    };
                    let [v, d] = args else {
                        return err(line, "expected `dim <vertex> <dimension>`");
                    };
                    let v = parse_vertex(line, v, count)?;
                    rep.dims[v] = parse_usize(line, d, "dimension")?;
                }
                "map" => {
                    let Some(rep) = open.as_mut() else {
                        return err(line, "`map` outside a `rep` block");
                    };
                    let Some((id, entries)) = args.split_first() else {
                        return err(line, "expected `map <arrow> <entries...>`");
                    };
                    let Some(ai) = arrows.iter().position(|a| a.id == *id) else {
                        return err(line, format!("unknown arrow `{id}`"));
                    };
                    if rep.maps[ai].is_some() {
                        return err(line, format!("duplicate map for arrow `{id}`"));
                    }
                    rep.maps[ai] = Some((line, entries.iter().map(|s| (*s).to_string()).collect()));
                }
                other => return err(line, format!("unknown declaration `{other}`")),
            }
        }
        blocks.extend(open.take());

        let Some(count) = n else {
            return err(last_line.max(1), "missing `vertices` declaration");
        };
        let quiver = match quiver {
            Some(q) => q,
            None => Arc::new(build_quiver(last_line, count, &arrows)?),
        };
        let field = field_override.or(field).unwrap_or(FieldSpec::Rationals);
        let any = AnyField::of(field);
        let reps = blocks
            .into_iter()
            .map(|b| finish_block(b, &quiver, any))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Document { field, quiver, reps })
    }

    /// A document holding just a quiver, for verbs that need no file.
    pub fn from_quiver(field: FieldSpec, quiver: Quiver) -> Document {
        Document {
            field,
            quiver: Arc::new(quiver),
            reps: Vec::new(),
        }
    }

    /// Normalised text: comments and blank lines dropped, every dimension
    /// and map written out, entries in lowest terms.
    pub fn canonical(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("field {}\n", self.field));
        out.push_str(&format!("vertices {}\n", self.quiver.vertex_count()));
        for a in self.quiver.arrows() {
            out.push_str(&format!("arrow {} {} {}\n", a.id, a.source + 1, a.target + 1));
        }
        for r in &self.reps {
            out.push_str(&format!("rep {}\n", r.name));
            for (v, d) in r.dims.iter().enumerate() {
                out.push_str(&format!("dim {} {d}\n", v + 1));
            }
            for (a, entries) in self.quiver.arrows().iter().zip(&r.maps) {
                out.push_str(&format!("map {}", a.id));
                for e in entries {
                    out.push(' ');
                    out.push_str(e);
                }
                out.push('\n');
            }
        }
        out
    }

    /// Hex SHA-256 of the canonical text.
    pub fn hash(&self) -> String {
        Sha256::digest(self.canonical().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// The representation blocks over `field`, which must match the document's field.
    pub fn reps<F: Field>(&self, field: &F) -> strata_core::Result<Vec<Rep<F>>> {
        self.reps
            .iter()
            .map(|b| {
                let maps = self
                    .quiver
                    .arrows()
                    .iter()
                    .zip(&b.maps)
                    .map(|(a, entries)| {
                        let data = entries
                            .iter()
                            .map(|e| field.parse(e).expect("entries were validated when parsing"))
                            .collect();
                        Mat::from_vec(field.clone(), b.dims[a.target], b.dims[a.source], data)
                    })
                    .collect();
                Rep::new(self.quiver.clone(), field.clone(), b.dims.clone(), maps)
            })
            .collect()
    }
}

fn parse_field(line: usize, args: &[&str]) -> Result<FieldSpec, ParseError> {
    match args {
        ["Q"] => Ok(FieldSpec::Rationals),
        ["Fp", p] => {
            let p: u64 = p.parse().or_else(|_| err(line, format!("invalid prime `{p}`")))?;
            FieldSpec::prime(p).or_else(|e| err(line, e.to_string()))
        }
        _ => err(line, "expected `field Q` or `field Fp <prime>`"),
    }
}

fn parse_usize(line: usize, s: &str, what: &str) -> Result<usize, ParseError> {
    s.parse().or_else(|_| err(line, format!("invalid {what} `{s}`")))
}

fn parse_vertex(line: usize, s: &str, n: usize) -> Result<usize, ParseError> {
    let v = parse_usize(line, s, "vertex")?;
    if v == 0 || v > n {
        return err(line, format!("vertex {v} outside 1..={n}"));
    }
    Ok(v - 1)
}

fn build_quiver(line: usize, n: usize, arrows: &[Arrow]) -> Result<Quiver, ParseError> {
    let labels = (1..=n).map(|i| i.to_string()).collect();
    Quiver::new(labels, arrows.to_vec()).or_else(|e| err(line, e.to_string()))
}

fn finish_block(b: OpenRep, q: &Quiver, field: AnyField) -> Result<RepBlock, ParseError> {
    let maps = q
        .arrows()
        .iter()
        .zip(b.maps)
        .map(|(a, m)| {
            let expected = b.dims[a.target] * b.dims[a.source];
            let Some((line, entries)) = m else {
                return Ok(vec![String::from("0"); expected]);
            };
            if entries.len() != expected {
                return err(
                    line,
                    format!(
                        "map `{}` of rep `{}` needs {expected} entries ({} x {}), found {}",
                        a.id,
                        b.name,
                        b.dims[a.target],
                        b.dims[a.source],
                        entries.len()
                    ),
                );
            }
            entries
                .iter()
                .map(|e| match field.normalise(e) {
                    Some(x) => Ok(x),
                    None => err(line, format!("invalid field element `{e}`")),
                })
                .collect()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RepBlock {
        name: b.name,
        dims: b.dims,
        maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const KRONECKER: &str = "\
# Kronecker quiver with one regular module
field Q
vertices 2
arrow a 1 2
arrow b 1 2   # parallel

rep R
dim 1 1
dim 2 1
map a 1
map b 6/4
";

    #[test]
    fn parses_quiver_and_rep() {
        let doc = Document::parse(KRONECKER, None).unwrap();
        assert_eq!(doc.field, FieldSpec::Rationals);
        assert_eq!(doc.quiver.vertex_count(), 2);
        assert_eq!(doc.quiver.arrows().len(), 2);
        assert_eq!(doc.reps.len(), 1);
        assert_eq!(doc.reps[0].maps[1], vec!["3/2"]);
        let reps = doc.reps(&Rationals).unwrap();
        assert_eq!(reps[0].dims(), &[1, 1]);
    }

    #[test]
    fn canonical_form_ignores_layout() {
        let a = Document::parse(KRONECKER, None).unwrap();
        let squeezed = "vertices 2\narrow a 1 2\narrow b 1 2\nrep R\ndim 2 1\ndim 1 1\nmap b 3/2\nmap a 1\n";
        let b = Document::parse(squeezed, None).unwrap();
        assert_eq!(a.canonical(), b.canonical());
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
        let c = Document::parse(&a.canonical(), None).unwrap();
        assert_eq!(c, a);
    }

    #[test]
    fn prime_override_reduces_entries() {
        let doc = Document::parse(KRONECKER, Some(FieldSpec::PrimeField(5))).unwrap();
        assert_eq!(doc.reps[0].maps[1], vec!["4"]);
        assert!(doc.canonical().starts_with("field Fp 5\n"));
    }

    #[test]
    fn missing_maps_are_zero() {
        let doc = Document::parse("vertices 2\narrow a 1 2\nrep\ndim 1 2\ndim 2 1\n", None).unwrap();
        assert_eq!(doc.reps[0].name, "M1");
        assert_eq!(doc.reps[0].maps[0], vec!["0", "0"]);
    }

    fn line_of(text: &str) -> (usize, String) {
        let e = Document::parse(text, None).unwrap_err();
        (e.line, e.message)
    }

    #[test]
    fn errors_cite_lines() {
        assert_eq!(line_of("").0, 1);
        assert!(line_of("").1.contains("vertices"));
        assert_eq!(line_of("# nothing\n\n").0, 2);
        assert_eq!(line_of("vertices 2\narrow a 1 3\n").0, 2);
        assert_eq!(line_of("vertices 2\narrow a 1 2\narrow b 2 1\n").0, 3);
        assert_eq!(line_of("vertices 0\n").0, 1);
        assert_eq!(line_of("field R\n").0, 1);
        assert_eq!(line_of("field Fp 4\n").0, 1);
        assert_eq!(line_of("vertices 1\nvertices 1\n").0, 2);
        assert_eq!(line_of("vertices 2\narrow a 1 2\nrep\ndim 1 1\ndim 2 1\nmap a 1 2\n").0, 6);
        assert_eq!(line_of("vertices 2\narrow a 1 2\nrep\ndim 1 1\nmap c 1\n").0, 5);
        assert_eq!(line_of("vertices 2\narrow a 1 2\nrep\ndim 1 1\ndim 2 1\nmap a x\n").0, 6);
        assert_eq!(line_of("vertices 2\nfrobnicate\n").0, 2);
        assert_eq!(line_of("vertices 2\nrep\narrow a 1 2\n").0, 3);
        assert_eq!(line_of("dim 1 1\n").0, 1);
    }
}

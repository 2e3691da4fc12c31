//! Relation files: a small header followed by one polynomial per line.
//!
//! ```text
//! # generic cubic
//! generators: 2
//! prime: 1073741789
//! seed: 7
//! xxy - 2*yxy + xyy
//! ```

use std::fmt::Write as _;
use std::path::Path;

use lcslab_core::{Field, FieldSpec, FreePolynomial, Presentation};
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum RelFileError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `generators:` header")]
    MissingGenerators,
    #[error("relation {index}: {source}")]
    Relation { index: usize, source: lcslab_core::Error },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationFile {
    pub generators: usize,
    /// `None` when the file leaves the field to the command line.
    pub field: Option<FieldSpec>,
    pub seed: Option<u64>,
    pub relations: Vec<String>,
}

impl RelationFile {
    pub fn parse(text: &str) -> Result<Self, RelFileError> {
        let mut generators = None;
        let mut field = None;
        let mut seed = None;
        let mut relations = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |msg: String| RelFileError::Syntax { line: line_no, msg };
            if let Some((key, value)) = line.split_once(':') {
                let value = value.trim();
                match key.trim() {
                    "generators" => {
                        let n: usize = value.parse().map_err(|_| syntax(format!("bad generator count `{value}`")))?;
                        if n == 0 {
                            return Err(syntax("need at least one generator".into()));
                        }
                        generators = Some(n);
                    }
                    "prime" => field = Some(parse_field(value).map_err(syntax)?),
                    "seed" => seed = Some(value.parse().map_err(|_| syntax(format!("bad seed `{value}`")))?),
                    other => return Err(syntax(format!("unknown header `{other}`"))),
                }
                continue;
            }
            if generators.is_none() {
                return Err(syntax("relation before the `generators:` header".into()));
            }
            relations.push(line.to_string());
        }
        let generators = generators.ok_or(RelFileError::MissingGenerators)?;
        Ok(RelationFile { generators, field, seed, relations })
    }

    pub fn read(path: &Path) -> Result<Self, RelFileError> {
        let text = std::fs::read_to_string(path).map_err(|source| RelFileError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn from_presentation<F: Field>(p: &Presentation<F>) -> Self {
        RelationFile {
            generators: p.ngens(),
            field: Some(p.field().spec()),
            seed: p.seed(),
            relations: p.relations().iter().map(|r| r.to_string()).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "generators: {}", self.generators).unwrap();
        if let Some(f) = self.field {
            writeln!(out, "prime: {f}").unwrap();
        }
        if let Some(s) = self.seed {
            writeln!(out, "seed: {s}").unwrap();
        }
        for r in &self.relations {
            writeln!(out, "{r}").unwrap();
        }
        out
    }

    /// Parses every relation over `field`.
    pub fn presentation<F: Field>(&self, field: F) -> Result<Presentation<F>, RelFileError> {
        let mut polys = Vec::with_capacity(self.relations.len());
        for (index, text) in self.relations.iter().enumerate() {
            let p = FreePolynomial::parse(field.clone(), self.generators, text).map_err(|source| RelFileError::Relation { index, source })?;
            polys.push(p);
        }
        let pres = Presentation::new(field, self.generators, polys).map_err(|source| RelFileError::Relation { index: 0, source })?;
        Ok(pres.with_seed(self.seed))
    }
}

pub fn parse_field(value: &str) -> Result<FieldSpec, String> {
    match value {
        "exact" | "q" | "Q" | "rational" => Ok(FieldSpec::Rational),
        _ => value.parse::<u32>().map(FieldSpec::Prime).map_err(|_| format!("bad field `{value}`")),
    }
}

/// SHA-256 of the canonical text of a presentation, so that files differing
/// only in layout hash alike.
pub fn content_hash<F: Field>(p: &Presentation<F>) -> String {
    let mut h = Sha256::new();
    h.update(RelationFile::from_presentation(p).to_text().as_bytes());
    format!("{:x}", h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use lcslab_core::Rationals;

    #[test]
    fn parses_header_and_comments() {
        let f = RelationFile::parse("# c\ngenerators: 2\nprime: exact\nseed: 3\n\nxxy - yxx # tail\n").unwrap();
        assert_eq!(f.generators, 2);
        assert_eq!(f.field, Some(FieldSpec::Rational));
        assert_eq!(f.seed, Some(3));
        assert_eq!(f.relations, vec!["xxy - yxx".to_string()]);
    }

    #[test]
    fn rejects_relation_before_header() {
        assert!(matches!(RelationFile::parse("xy\ngenerators: 2\n"), Err(RelFileError::Syntax { line: 1, .. })));
        assert!(matches!(RelationFile::parse("# nothing\n"), Err(RelFileError::MissingGenerators)));
        assert!(matches!(RelationFile::parse("generators: 2\ncolour: red\n"), Err(RelFileError::Syntax { line: 2, .. })));
    }

    #[test]
    fn hash_ignores_layout() {
        let a = RelationFile::parse("generators: 2\nxxy-yxx\n").unwrap().presentation(Rationals).unwrap();
        let b = RelationFile::parse("generators:2\n  xxy - yxx  \n").unwrap().presentation(Rationals).unwrap();
        assert_eq!(content_hash(&a), content_hash(&b));
    }
}

//! JSON persistence.
//!
//! Files are compact UTF-8 JSON followed by a newline, vertex lists sorted.
//! Loading canonicalizes, then validates; anything that does not satisfy the
//! in-memory invariants is rejected with the offending field named.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::charmap::{CharMap, Mode};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::polytope::Polytope;
use crate::resolution::ResolutionReport;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub dim: usize,
    pub facets: Vec<String>,
    pub vertices: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharMapFile {
    pub n: usize,
    pub mode: Mode,
    pub vectors: Vec<u32>,
}

impl From<Polytope> for PolytopeFile {
    fn from(p: Polytope) -> Self {
        PolytopeFile {
            dim: p.dim(),
            facets: p.labels().to_vec(),
            vertices: p.vertices().to_vec(),
        }
    }
}

impl TryFrom<PolytopeFile> for Polytope {
    type Error = Error;

    fn try_from(f: PolytopeFile) -> Result<Self> {
        let p = Polytope::from_raw(f.dim, f.facets, f.vertices);
        let diags = p.validate();
        match diags.first() {
            None => Ok(p),
            Some(first) => Err(Error::Invariant {
                field: match first.kind() {
                    "dimension" => "dim",
                    "too-few-facets" => "facets",
                    _ => "vertices",
                }
                .to_string(),
                message: diags
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; "),
            }),
        }
    }
}

impl From<CharMap> for CharMapFile {
    fn from(l: CharMap) -> Self {
        CharMapFile {
            n: l.dim(),
            mode: l.mode(),
            vectors: l.vectors().iter().map(|v| v.bits()).collect(),
        }
    }
}

impl TryFrom<CharMapFile> for CharMap {
    type Error = Error;

    fn try_from(f: CharMapFile) -> Result<Self> {
        CharMap::new(f.n, f.mode, f.vectors.into_iter().map(BitVector).collect()).map_err(|e| {
            let field = match &e {
                Error::ZeroVector { index }
                | Error::VectorTooWide { index, .. }
                | Error::EvenVectorInOrientedMap { index, .. } => format!("vectors[{index}]"),
                Error::UnsupportedDimension(_) => "n".to_string(),
                _ => "vectors".to_string(),
            };
            Error::Invariant {
                field,
                message: e.to_string(),
            }
        })
    }
}

impl Serialize for Polytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolytopeFile::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Polytope::try_from(PolytopeFile::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl Serialize for CharMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CharMapFile::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CharMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        CharMap::try_from(CharMapFile::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Canonical text: compact JSON and a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn parse_raw<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| match e.classify() {
        serde_json::error::Category::Data => Error::Schema(e.to_string()),
        _ => Error::Parse(e.to_string()),
    })
}

pub fn polytope_from_json(text: &str) -> Result<Polytope> {
    Polytope::try_from(parse_raw::<PolytopeFile>(text)?)
}

pub fn charmap_from_json(text: &str) -> Result<CharMap> {
    CharMap::try_from(parse_raw::<CharMapFile>(text)?)
}

pub fn report_from_json(text: &str) -> Result<ResolutionReport> {
    parse_raw(text)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_canonical_json(value)).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_polytope(path: &Path) -> Result<Polytope> {
    polytope_from_json(&read(path)?)
}

pub fn load_charmap(path: &Path) -> Result<CharMap> {
    charmap_from_json(&read(path)?)
}

pub fn load_report(path: &Path) -> Result<ResolutionReport> {
    report_from_json(&read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::dual_cyclic;

    #[test]
    fn polytope_text_is_canonical() {
        let p = dual_cyclic(2, 5).unwrap();
        assert_eq!(
            to_canonical_json(&p),
            "{\"dim\":2,\"facets\":[\"F0\",\"F1\",\"F2\",\"F3\",\"F4\"],\"vertices\":[[0,1],[0,4],[1,2],[2,3],[3,4]]}\n"
        );
    }

    #[test]
    fn unsorted_vertices_are_normalized() {
        let text = r#"{"dim":2,"facets":["a","b","c"],"vertices":[[2,1],[0,2],[1,0]]}"#;
        let p = polytope_from_json(text).unwrap();
        assert_eq!(p.vertices(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn errors_are_classified() {
        assert!(matches!(polytope_from_json("{\"dim\":"), Err(Error::Parse(_))));
        assert!(matches!(
            polytope_from_json(r#"{"dim":2,"facets":[]}"#),
            Err(Error::Schema(_))
        ));
        assert!(matches!(
            polytope_from_json(r#"{"dim":2,"facets":[],"vertices":[],"extra":1}"#),
            Err(Error::Schema(_))
        ));
        match charmap_from_json(r#"{"n":4,"mode":"general","vectors":[1,2,0]}"#) {
            Err(Error::Invariant { field, .. }) => assert_eq!(field, "vectors[2]"),
            other => panic!("unexpected {other:?}"),
        }
    }
}

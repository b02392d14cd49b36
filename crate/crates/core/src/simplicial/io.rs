use serde::{Deserialize, Serialize};

use super::set::{SimplexRef, SimplicialSet};
use crate::error::{Error, Result};

pub const SIMPLICIAL_FORMAT: &str = "simplicial-set/1";

/// JSON interchange form of a simplicial set.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimplicialSetFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub name: String,
    pub simplices: Vec<SimplexEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimplexEntry {
    pub id: String,
    pub dim: usize,
    #[serde(default)]
    pub faces: Vec<FaceEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FaceEntry {
    #[serde(default)]
    pub word: Vec<usize>,
    pub base: String,
}

impl SimplicialSetFile {
    pub fn from_set(s: &SimplicialSet) -> Self {
        SimplicialSetFile {
            format: Some(SIMPLICIAL_FORMAT.to_string()),
            name: s.name().to_string(),
            simplices: s
                .simplices()
                .iter()
                .map(|x| SimplexEntry {
                    id: x.name.clone(),
                    dim: x.dim,
                    faces: x
                        .faces
                        .iter()
                        .map(|f| FaceEntry { word: f.word.clone(), base: s.name_of(f.base).to_string() })
                        .collect(),
                })
                .collect(),
            basepoint: s.basepoint().map(|b| s.name_of(b).to_string()),
        }
    }

    /// Builds the set; entries may appear in any order as long as faces
    /// exist somewhere in the file.
    pub fn to_set(&self) -> Result<SimplicialSet> {
        if let Some(f) = &self.format {
            if f != SIMPLICIAL_FORMAT {
                return Err(Error::Parse(format!("unsupported format `{f}`")));
            }
        }
        let mut order: Vec<&SimplexEntry> = self.simplices.iter().collect();
        order.sort_by_key(|e| e.dim);
        let mut s = SimplicialSet::new(self.name.clone());
        for e in order {
            if e.dim == 0 {
                if !e.faces.is_empty() {
                    return Err(Error::Invalid(format!("vertex `{}` lists faces", e.id)));
                }
                s.add_vertex(e.id.clone())?;
                continue;
            }
            if e.faces.len() != e.dim + 1 {
                return Err(Error::Invalid(format!(
                    "`{}` has dimension {} but {} faces",
                    e.id,
                    e.dim,
                    e.faces.len()
                )));
            }
            let faces = e
                .faces
                .iter()
                .map(|f| Ok(SimplexRef { word: f.word.clone(), base: s.id(&f.base)? }))
                .collect::<Result<Vec<_>>>()?;
            s.add_simplex(e.id.clone(), faces)?;
        }
        if let Some(b) = &self.basepoint {
            let id = s.id(b)?;
            s.set_basepoint(id)?;
        }
        Ok(s)
    }
}

impl SimplicialSet {
    pub fn from_json(text: &str) -> Result<SimplicialSet> {
        let file: SimplicialSetFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.to_set()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SimplicialSetFile::from_set(self)).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{nerve_monoid, sphere, Monoid};

    #[test]
    fn roundtrip() {
        for s in [sphere(2), nerve_monoid(&Monoid::cyclic(3), 3)] {
            let back = SimplicialSet::from_json(&s.to_json()).unwrap();
            assert_eq!(back.counts(), s.counts());
            assert_eq!(back.simplices(), s.simplices());
            assert_eq!(back.basepoint(), s.basepoint());
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = SimplicialSet::from_json("{\"name\": \"x\",\n \"simplices\": [}").unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.contains("line 2"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let missing = r#"{"name":"x","simplices":[{"id":"e","dim":1,"faces":[{"word":[],"base":"v"},{"word":[],"base":"v"}]}]}"#;
        assert!(matches!(SimplicialSet::from_json(missing), Err(Error::UnknownId(_))));
    }
}

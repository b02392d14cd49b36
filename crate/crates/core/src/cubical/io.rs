use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::set::{epi_word, word_map, CubeRef, CubicalSetFG};
use crate::error::{Error, Result};
use crate::necklace::BoxGenerator;

pub const CUBICAL_FORMAT: &str = "cubical-set/1";

/// JSON interchange form. Face keys are `"j,ε"`; words list degeneracies
/// `e<j>` and connections `g<j>`, applied to the base in order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubicalSetFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default)]
    pub name: String,
    pub cells: Vec<CellEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellEntry {
    pub id: String,
    pub dim: usize,
    #[serde(default)]
    pub faces: BTreeMap<String, CubicalFaceEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubicalFaceEntry {
    #[serde(default)]
    pub word: Vec<String>,
    pub base: String,
}

impl CubicalSetFile {
    pub fn from_set(k: &CubicalSetFG) -> Self {
        let cells = k
            .cells()
            .iter()
            .map(|c| CellEntry {
                id: c.name.clone(),
                dim: c.dim,
                faces: c
                    .faces
                    .iter()
                    .enumerate()
                    .map(|(i, f)| {
                        let key = format!("{},{}", i / 2 + 1, i % 2);
                        let word = epi_word(&f.map).iter().map(|g| g.to_string()).collect();
                        (key, CubicalFaceEntry { word, base: k.cell(f.base).name.clone() })
                    })
                    .collect(),
            })
            .collect();
        CubicalSetFile { format: Some(CUBICAL_FORMAT.to_string()), name: k.name().to_string(), cells }
    }

    pub fn to_set(&self) -> Result<CubicalSetFG> {
        if let Some(f) = &self.format {
            if f != CUBICAL_FORMAT {
                return Err(Error::Parse(format!("unsupported format `{f}`")));
            }
        }
        let mut order: Vec<&CellEntry> = self.cells.iter().collect();
        order.sort_by_key(|c| c.dim);
        let mut k = CubicalSetFG::new(self.name.clone());
        for c in order {
            let mut faces = Vec::with_capacity(2 * c.dim);
            for j in 1..=c.dim {
                for eps in 0..2 {
                    let key = format!("{j},{eps}");
                    let f = c
                        .faces
                        .get(&key)
                        .ok_or_else(|| Error::Invalid(format!("cell `{}` is missing face {key}", c.id)))?;
                    let base = k.id(&f.base)?;
                    let word = f
                        .word
                        .iter()
                        .map(|w| w.parse::<BoxGenerator>())
                        .collect::<Result<Vec<_>>>()?;
                    let map = word_map(&word, k.dim(base))?;
                    faces.push(CubeRef { map, base });
                }
            }
            if c.faces.len() != 2 * c.dim {
                return Err(Error::Invalid(format!("cell `{}` lists unexpected face keys", c.id)));
            }
            k.add_cell(c.id.clone(), c.dim, faces)?;
        }
        Ok(k)
    }
}

impl CubicalSetFG {
    pub fn from_json(text: &str) -> Result<CubicalSetFG> {
        let file: CubicalSetFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.to_set()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CubicalSetFile::from_set(self)).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{cubical_circle, cubical_sphere2, standard_cube};

    #[test]
    fn roundtrip() {
        for k in [standard_cube(2), cubical_circle(), cubical_sphere2()] {
            let back = CubicalSetFG::from_json(&k.to_json()).unwrap();
            assert_eq!(back.cells(), k.cells());
        }
    }

    #[test]
    fn parses_words() {
        let text = r#"{"cells": [
            {"id": "v", "dim": 0},
            {"id": "c", "dim": 2, "faces": {
                "1,0": {"word": ["e1"], "base": "v"}, "1,1": {"word": ["e1"], "base": "v"},
                "2,0": {"word": ["e1"], "base": "v"}, "2,1": {"word": ["e1"], "base": "v"}}}
        ]}"#;
        let k = CubicalSetFG::from_json(text).unwrap();
        assert_eq!(k.counts(), vec![1, 0, 1]);
        let bad = text.replace("\"e1\"", "\"d0_1\"");
        assert!(CubicalSetFG::from_json(&bad).is_err());
    }
}

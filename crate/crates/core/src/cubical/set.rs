use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{ChainComplex, Matrix, Ring};
use crate::necklace::{BoxGenerator, BoxMorphism};

/// A cell `α^* base` where `α: 𝟏^d → 𝟏^{dim base}` is a composite of
/// co-degeneracies and co-connections (identity for nondegenerate cells).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubeRef {
    pub map: BoxMorphism,
    pub base: usize,
}

impl CubeRef {
    pub fn is_degenerate(&self) -> bool {
        !self.map.is_identity()
    }

    pub fn dim(&self) -> usize {
        self.map.source_dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub name: String,
    pub dim: usize,
    /// `faces[2(j−1) + ε] = ∂^ε_j`.
    pub faces: Vec<CubeRef>,
}

/// Finitely generated cubical set with connections: nondegenerate cells
/// with faces in (structural map, nondegenerate base) form.
#[derive(Clone, Debug, Default)]
pub struct CubicalSetFG {
    name: String,
    cells: Vec<Cell>,
    by_dim: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl CubicalSetFG {
    pub fn new(name: impl Into<String>) -> Self {
        CubicalSetFG { name: name.into(), ..Default::default() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Adds a cell; `faces[2(j−1) + ε]` is `∂^ε_j`. Vertices pass no faces.
    pub fn add_cell(&mut self, name: impl Into<String>, dim: usize, faces: Vec<CubeRef>) -> Result<usize> {
        let name = name.into();
        if faces.len() != 2 * dim {
            return Err(Error::Invalid(format!("cell `{name}` of dimension {dim} needs {} faces", 2 * dim)));
        }
        for f in &faces {
            if f.base >= self.cells.len() {
                return Err(Error::UnknownId(format!("{name}: face base #{}", f.base)));
            }
            if f.map.source_dim() != dim - 1 || f.map.target_dim() != self.cells[f.base].dim {
                return Err(Error::Invalid(format!("a face of `{name}` has the wrong dimension")));
            }
            if !is_epi(&f.map) {
                return Err(Error::Invalid(format!(
                    "a face of `{name}` uses a structural map that is not a degeneracy/connection composite"
                )));
            }
        }
        if self.index.contains_key(&name) {
            return Err(Error::Invalid(format!("duplicate cell id `{name}`")));
        }
        let id = self.cells.len();
        if self.by_dim.len() <= dim {
            self.by_dim.resize(dim + 1, Vec::new());
        }
        self.by_dim[dim].push(id);
        self.index.insert(name.clone(), id);
        self.cells.push(Cell { name, dim, faces });
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell(&self, id: usize) -> &Cell {
        &self.cells[id]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn id(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownId(name.to_string()))
    }

    pub fn dim(&self, id: usize) -> usize {
        self.cells[id].dim
    }

    pub fn max_dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    pub fn of_dim(&self, n: usize) -> &[usize] {
        self.by_dim.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn nondegenerate(&self, id: usize) -> CubeRef {
        CubeRef { map: BoxMorphism::identity(self.dim(id)), base: id }
    }

    /// `β^* r` for any box map `β` into the cube of `r`.
    pub fn pull(&self, r: &CubeRef, beta: &BoxMorphism) -> CubeRef {
        let mut gamma = r.map.after(beta);
        let mut base = r.base;
        loop {
            let Some((c, eps)) = constant_coordinate(&gamma) else {
                return CubeRef { map: gamma, base };
            };
            // γ = δ^ε_c ∘ γ′; pull the stored face back along γ′.
            let f = &self.cells[base].faces[2 * c + eps as usize];
            let dropped = drop_coordinate(&gamma, c);
            gamma = f.map.after(&dropped);
            base = f.base;
        }
    }

    /// `∂^ε_j r` (1-based `j`).
    pub fn face_of(&self, r: &CubeRef, j: usize, eps: u8) -> CubeRef {
        let delta = BoxMorphism::generator(BoxGenerator::Coface { j, eps }, r.dim() - 1).unwrap();
        self.pull(r, &delta)
    }

    /// Checks `∂^ε_i ∂^η_j = ∂^η_{j−1} ∂^ε_i` for `i < j` on every cell of
    /// dimension ≤ `max_dim`, computed through the stored faces.
    pub fn validate(&self, max_dim: usize) -> Result<()> {
        for (id, cell) in self.cells.iter().enumerate() {
            if cell.dim < 2 || cell.dim > max_dim {
                continue;
            }
            for j in 2..=cell.dim {
                for i in 1..j {
                    for eps in 0..2u8 {
                        for eta in 0..2u8 {
                            let lhs = self.face_of(&cell.faces[2 * (j - 1) + eta as usize], i, eps);
                            let rhs = self.face_of(&cell.faces[2 * (i - 1) + eps as usize], j - 1, eta);
                            if lhs != rhs {
                                return Err(Error::CubicalIdentity {
                                    cell: self.cells[id].name.clone(),
                                    detail: format!("d{eps}_{i} d{eta}_{j} disagrees with d{eta}_{} d{eps}_{i}", j - 1),
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Cells in degrees ≤ `max_degree` with the normalized differential
    /// `∂ = Σ_j (−1)^j (∂¹_j − ∂⁰_j)`; degenerate faces contribute 0.
    pub fn chains(&self, ring: Ring, max_degree: usize) -> Result<ChainComplex> {
        self.validate(max_degree + 1)?;
        let mut bases = Vec::new();
        let mut pos = vec![0usize; self.len()];
        for n in 0..=max_degree {
            for (k, &id) in self.of_dim(n).iter().enumerate() {
                pos[id] = k;
            }
            bases.push(self.of_dim(n).iter().map(|&id| self.cells[id].name.clone()).collect::<Vec<_>>());
        }
        let mut boundaries = vec![Matrix::zeros(0, bases[0].len())];
        for n in 1..=max_degree {
            let mut d = Matrix::zeros(bases[n - 1].len(), bases[n].len());
            for (col, &id) in self.of_dim(n).iter().enumerate() {
                for j in 1..=n {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    for (eps, s) in [(1usize, sign), (0, -sign)] {
                        let f = &self.cells[id].faces[2 * (j - 1) + eps];
                        if !f.is_degenerate() {
                            d.add_to(pos[f.base], col, s);
                        }
                    }
                }
            }
            boundaries.push(d);
        }
        ChainComplex::new(ring, bases, boundaries)
    }
}

/// Normalized cubical chains of `k` through degree `max_degree`.
pub fn chains_cubical(k: &CubicalSetFG, ring: Ring, max_degree: usize) -> Result<ChainComplex> {
    k.chains(ring, max_degree)
}

/// A coordinate (0-based) on which the map is constant, with its value;
/// the largest such coordinate.
fn constant_coordinate(m: &BoxMorphism) -> Option<(usize, u8)> {
    let all_or = m.table().iter().fold(0u32, |a, &t| a | t);
    let all_and = m.table().iter().fold(u32::MAX, |a, &t| a & t);
    (0..m.target_dim()).rev().find_map(|c| {
        let (o, a) = (all_or >> c & 1, all_and >> c & 1);
        if o == 0 {
            Some((c, 0))
        } else if a == 1 {
            Some((c, 1))
        } else {
            None
        }
    })
}

fn drop_coordinate(m: &BoxMorphism, c: usize) -> BoxMorphism {
    let g = BoxGenerator::Codegeneracy { j: c + 1 };
    let table = m.table().iter().map(|&t| g.apply(t, m.target_dim())).collect();
    BoxMorphism::from_table(m.source_dim(), m.target_dim() - 1, table).unwrap()
}

/// Composite of co-degeneracies and co-connections: monotone with no
/// constant output coordinate and each output the max of an ordered block.
pub(crate) fn is_epi(m: &BoxMorphism) -> bool {
    if constant_coordinate(m).is_some() || !m.is_monotone() {
        return false;
    }
    epi_blocks(m).is_some()
}

/// The input blocks whose maxima give each output coordinate.
pub(crate) fn epi_blocks(m: &BoxMorphism) -> Option<Vec<Vec<usize>>> {
    let n = m.source_dim();
    let mut blocks = vec![Vec::new(); m.target_dim()];
    for i in 0..n {
        let image = m.apply(1 << i);
        for (c, block) in blocks.iter_mut().enumerate() {
            if image >> c & 1 == 1 {
                block.push(i);
            }
        }
    }
    let mut last = None;
    for b in &blocks {
        if b.is_empty() || last.is_some_and(|l| b[0] <= l) {
            return None;
        }
        last = b.last().copied();
    }
    let rebuilt: Vec<u32> = (0..1u32 << n)
        .map(|s| {
            blocks
                .iter()
                .enumerate()
                .map(|(c, b)| if b.iter().any(|&i| s >> i & 1 == 1) { 1 << c } else { 0 })
                .sum()
        })
        .collect();
    (rebuilt == m.table()).then_some(blocks)
}

/// A word of degeneracies and connections, applied left to right to the
/// base cell, realizing `m`.
pub(crate) fn epi_word(m: &BoxMorphism) -> Vec<BoxGenerator> {
    let blocks = epi_blocks(m).expect("not a degeneracy/connection composite");
    let n = m.source_dim();
    let used: Vec<usize> = blocks.iter().flatten().copied().collect();
    // Box map: first forget unused inputs (highest first), then merge blocks.
    let mut maps = Vec::new();
    for i in (0..n).rev() {
        if !used.contains(&i) {
            maps.push(BoxGenerator::Codegeneracy { j: i + 1 });
        }
    }
    let mut start = 0;
    for b in &blocks {
        for _ in 1..b.len() {
            maps.push(BoxGenerator::Coconnection { j: start + 1 });
        }
        start += 1;
    }
    // As operators on cells, the box map applied first is the operator
    // applied last.
    maps.reverse();
    maps
}

/// Structural map of a word applied (left to right) to a cell of dimension `k`.
pub(crate) fn word_map(word: &[BoxGenerator], k: usize) -> Result<BoxMorphism> {
    if word.iter().any(|g| matches!(g, BoxGenerator::Coface { .. })) {
        return Err(Error::Invalid("structural words may use only degeneracies e_j and connections g_j".into()));
    }
    let mut rev = word.to_vec();
    rev.reverse();
    let m = BoxMorphism::from_word(&rev, k + word.len())?;
    if m.target_dim() != k {
        return Err(Error::Invalid("structural word must use only degeneracies e_j and connections g_j".into()));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epi_words_roundtrip() {
        let gens = [
            vec![BoxGenerator::Codegeneracy { j: 1 }],
            vec![BoxGenerator::Coconnection { j: 1 }],
            vec![BoxGenerator::Codegeneracy { j: 2 }, BoxGenerator::Coconnection { j: 1 }],
            vec![BoxGenerator::Coconnection { j: 1 }, BoxGenerator::Codegeneracy { j: 3 }],
        ];
        for w in gens {
            let m = word_map(&w, 1).unwrap();
            assert!(is_epi(&m));
            assert_eq!(word_map(&epi_word(&m), 1).unwrap(), m);
        }
        let face = BoxMorphism::generator(BoxGenerator::Coface { j: 1, eps: 0 }, 1).unwrap();
        assert!(!is_epi(&face));
    }
}

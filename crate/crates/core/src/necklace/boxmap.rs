use std::fmt;

use crate::error::{Error, Result};

/// Largest cube dimension a vertex table is built for.
pub const MAX_BOX_DIM: usize = 16;

/// A morphism `𝟏^m → 𝟏^n` of the box category with connections, stored as
/// its vertex table. Bit `i` of a vertex is the coordinate `s_{i+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoxMorphism {
    source_dim: usize,
    target_dim: usize,
    table: Vec<u32>,
}

/// Generating maps of the box category (indices are 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoxGenerator {
    /// Insert the constant `eps` as coordinate `j`.
    Coface { j: usize, eps: u8 },
    /// Forget coordinate `j`.
    Codegeneracy { j: usize },
    /// Replace coordinates `j, j+1` by their maximum.
    Coconnection { j: usize },
}

impl BoxGenerator {
    /// Dimension of the target cube given the source dimension.
    pub fn target_dim(self, source_dim: usize) -> usize {
        match self {
            BoxGenerator::Coface { .. } => source_dim + 1,
            _ => source_dim - 1,
        }
    }

    pub fn apply(self, s: u32, source_dim: usize) -> u32 {
        match self {
            BoxGenerator::Coface { j, eps } => {
                let low = s & ((1 << (j - 1)) - 1);
                let high = (s >> (j - 1)) << j;
                low | high | (u32::from(eps) << (j - 1))
            }
            BoxGenerator::Codegeneracy { j } => {
                let low = s & ((1 << (j - 1)) - 1);
                let high = (s >> j) << (j - 1);
                low | high
            }
            BoxGenerator::Coconnection { j } => {
                debug_assert!(j < source_dim);
                let m = ((s >> (j - 1)) | (s >> j)) & 1;
                let low = s & ((1 << (j - 1)) - 1);
                let high = (s >> (j + 1)) << j;
                low | (m << (j - 1)) | high
            }
        }
    }

    fn valid_for(self, source_dim: usize) -> bool {
        match self {
            BoxGenerator::Coface { j, eps } => j >= 1 && j <= source_dim + 1 && eps <= 1,
            BoxGenerator::Codegeneracy { j } => j >= 1 && j <= source_dim,
            BoxGenerator::Coconnection { j } => j >= 1 && j < source_dim,
        }
    }
}

impl fmt::Display for BoxGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoxGenerator::Coface { j, eps } => write!(f, "d{eps}_{j}"),
            BoxGenerator::Codegeneracy { j } => write!(f, "e{j}"),
            BoxGenerator::Coconnection { j } => write!(f, "g{j}"),
        }
    }
}

impl std::str::FromStr for BoxGenerator {
    type Err = Error;

    /// `e3`, `g1`, `d0_2`, `d1_1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown box generator `{s}`"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix('e') {
            return Ok(BoxGenerator::Codegeneracy { j: num(rest)? });
        }
        if let Some(rest) = s.strip_prefix('g') {
            return Ok(BoxGenerator::Coconnection { j: num(rest)? });
        }
        if let Some(rest) = s.strip_prefix('d') {
            let (eps, j) = rest.split_once('_').ok_or_else(bad)?;
            let eps = match eps {
                "0" => 0,
                "1" => 1,
                _ => return Err(bad()),
            };
            return Ok(BoxGenerator::Coface { j: num(j)?, eps });
        }
        Err(bad())
    }
}

impl BoxMorphism {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_BOX_DIM);
        BoxMorphism { source_dim: n, target_dim: n, table: (0..1u32 << n).collect() }
    }

    pub fn generator(g: BoxGenerator, source_dim: usize) -> Result<Self> {
        if !g.valid_for(source_dim) || source_dim > MAX_BOX_DIM {
            return Err(Error::Invalid(format!("{g} is not defined on a {source_dim}-cube")));
        }
        Ok(BoxMorphism {
            source_dim,
            target_dim: g.target_dim(source_dim),
            table: (0..1u32 << source_dim).map(|s| g.apply(s, source_dim)).collect(),
        })
    }

    /// The composite of `word` applied left to right: the first generator acts
    /// first.
    pub fn from_word(word: &[BoxGenerator], source_dim: usize) -> Result<Self> {
        let mut m = BoxMorphism::identity(source_dim);
        for &g in word {
            let step = BoxMorphism::generator(g, m.target_dim)?;
            m = step.after(&m);
        }
        Ok(m)
    }

    /// Arbitrary vertex table; checks it is order preserving.
    pub fn from_table(source_dim: usize, target_dim: usize, table: Vec<u32>) -> Result<Self> {
        if table.len() != 1 << source_dim || table.iter().any(|&t| t >= 1 << target_dim) {
            return Err(Error::Invalid("vertex table has the wrong shape".into()));
        }
        let m = BoxMorphism { source_dim, target_dim, table };
        if !m.is_monotone() {
            return Err(Error::Invalid("vertex table is not monotone".into()));
        }
        Ok(m)
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn apply(&self, s: u32) -> u32 {
        self.table[s as usize]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &BoxMorphism) -> BoxMorphism {
        assert_eq!(first.target_dim, self.source_dim, "box morphisms are not composable");
        BoxMorphism {
            source_dim: first.source_dim,
            target_dim: self.target_dim,
            table: first.table.iter().map(|&s| self.table[s as usize]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source_dim == self.target_dim && self.table.iter().enumerate().all(|(i, &t)| i as u32 == t)
    }

    /// Monotone in the product order; checking covering relations suffices.
    pub fn is_monotone(&self) -> bool {
        (0..self.table.len() as u32).all(|s| {
            (0..self.source_dim).all(|i| {
                let t = s | (1 << i);
                let (a, b) = (self.table[s as usize], self.table[t as usize]);
                a & b == a
            })
        })
    }

    /// The single generator equal to this map, if any.
    pub fn as_generator(&self) -> Option<BoxGenerator> {
        let n = self.source_dim;
        let candidates: Vec<BoxGenerator> = if self.target_dim == n + 1 {
            (1..=n + 1).flat_map(|j| [0, 1].map(|eps| BoxGenerator::Coface { j, eps })).collect()
        } else if self.target_dim + 1 == n {
            (1..=n)
                .map(|j| BoxGenerator::Codegeneracy { j })
                .chain((1..n).map(|j| BoxGenerator::Coconnection { j }))
                .collect()
        } else {
            return None;
        };
        candidates
            .into_iter()
            .find(|&g| (0..self.table.len() as u32).all(|s| g.apply(s, n) == self.table[s as usize]))
    }

    pub fn vertex_string(s: u32, dim: usize) -> String {
        (0..dim).map(|i| if s >> i & 1 == 1 { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for BoxMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoxMorphism({} -> {}: ", self.source_dim, self.target_dim)?;
        let cells: Vec<String> = self
            .table
            .iter()
            .enumerate()
            .map(|(s, &t)| {
                format!(
                    "({})->({})",
                    Self::vertex_string(s as u32, self.source_dim),
                    Self::vertex_string(t, self.target_dim)
                )
            })
            .collect();
        write!(f, "{})", cells.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> u32 {
        s.chars().enumerate().map(|(i, c)| if c == '1' { 1 << i } else { 0 }).sum()
    }

    #[test]
    fn generator_formulas() {
        let d = BoxMorphism::generator(BoxGenerator::Coface { j: 2, eps: 1 }, 2).unwrap();
        assert_eq!(d.apply(bits("01")), bits("011"));
        assert_eq!(d.apply(bits("10")), bits("110"));
        let e = BoxMorphism::generator(BoxGenerator::Codegeneracy { j: 1 }, 3).unwrap();
        assert_eq!(e.apply(bits("101")), bits("01"));
        let g = BoxMorphism::generator(BoxGenerator::Coconnection { j: 2 }, 3).unwrap();
        assert_eq!(g.apply(bits("001")), bits("01"));
        assert_eq!(g.apply(bits("100")), bits("10"));
        assert_eq!(g.apply(bits("000")), bits("00"));
        for m in [d, e, g] {
            assert!(m.is_monotone());
            assert!(m.as_generator().is_some());
        }
    }

    #[test]
    fn words_and_parsing() {
        let w: Vec<BoxGenerator> = ["d1_1", "g1"].iter().map(|s| s.parse().unwrap()).collect();
        let m = BoxMorphism::from_word(&w, 1).unwrap();
        // (s) ↦ (1, s) ↦ (max(1, s)) = (1)
        assert_eq!(m.table(), &[1, 1]);
        assert!("x1".parse::<BoxGenerator>().is_err());
        assert_eq!(BoxGenerator::Coface { j: 3, eps: 0 }.to_string(), "d0_3");
        assert!(BoxMorphism::generator(BoxGenerator::Coconnection { j: 1 }, 1).is_err());
    }

    #[test]
    fn cubical_identities_hold() {
        // γ_j δ^ε_j = γ_j δ^ε_{j+1}: for ε=1 both are constant 1, for ε=0 identity.
        for eps in [0u8, 1] {
            let a = BoxMorphism::from_word(&[BoxGenerator::Coface { j: 1, eps }, BoxGenerator::Coconnection { j: 1 }], 1).unwrap();
            let b = BoxMorphism::from_word(&[BoxGenerator::Coface { j: 2, eps }, BoxGenerator::Coconnection { j: 1 }], 1).unwrap();
            assert_eq!(a, b);
        }
        let t = BoxMorphism::from_table(1, 1, vec![1, 0]);
        assert!(t.is_err());
    }
}

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vector over `F_p` in a fixed hom basis.
pub type Vector = Vec<u64>;

/// One hom complex: a graded basis and the differential on it.
#[derive(Clone, Debug, Default)]
pub struct HomSpace {
    pub names: Vec<String>,
    pub degrees: Vec<usize>,
    /// `differential[j]` is `d` of basis element `j`.
    pub differential: Vec<Vector>,
    pub identity: Option<usize>,
}

impl HomSpace {
    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn of_degree(&self, n: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&j| self.degrees[j] == n).collect()
    }
}

/// A small dg category over `F_p` with finite-dimensional homs.
#[derive(Clone, Debug)]
pub struct DGCategory {
    name: String,
    prime: u64,
    objects: Vec<String>,
    homs: Vec<Vec<HomSpace>>,
    /// `(x, y, z) ↦ table[g][f]`: `g ∘ f` for `g: y → z`, `f: x → y`.
    composition: HashMap<(usize, usize, usize), Vec<Vec<Vector>>>,
    /// Basis element name ↦ (source, target, index).
    index: HashMap<String, (usize, usize, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismEntry {
    pub name: String,
    pub source: String,
    pub target: String,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub identity: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub differential: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompositionEntry {
    pub outer: String,
    pub inner: String,
    pub result: BTreeMap<String, i64>,
}

/// JSON form: basis morphisms with differentials and the nonzero
/// composites of non-identity basis morphisms (`outer ∘ inner`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DGCategoryFile {
    #[serde(default)]
    pub format: Option<String>,
    #[serde(default)]
    pub name: String,
    pub prime: u64,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    #[serde(default)]
    pub compositions: Vec<CompositionEntry>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::DgCategory(msg.into())
}

impl DGCategory {
    pub fn from_file(file: &DGCategoryFile) -> Result<Self> {
        let p = file.prime;
        if !crate::linalg::is_prime(p) {
            return Err(bad(format!("{p} is not prime")));
        }
        if let Some(f) = &file.format {
            if f != "dg-category/1" {
                return Err(bad(format!("unsupported format `{f}`")));
            }
        }
        let obj: HashMap<&str, usize> = file.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        if obj.len() != file.objects.len() {
            return Err(bad("duplicate object names"));
        }
        let n = file.objects.len();
        let mut homs = vec![vec![HomSpace::default(); n]; n];
        let mut index = HashMap::new();
        for m in &file.morphisms {
            let x = *obj.get(m.source.as_str()).ok_or_else(|| bad(format!("unknown object `{}`", m.source)))?;
            let y = *obj.get(m.target.as_str()).ok_or_else(|| bad(format!("unknown object `{}`", m.target)))?;
            let h = &mut homs[x][y];
            if index.insert(m.name.clone(), (x, y, h.rank())).is_some() {
                return Err(bad(format!("duplicate morphism name `{}`", m.name)));
            }
            if m.identity {
                if x != y || m.degree != 0 || h.identity.is_some() {
                    return Err(bad(format!("`{}` cannot be an identity", m.name)));
                }
                h.identity = Some(h.rank());
            }
            h.names.push(m.name.clone());
            h.degrees.push(m.degree);
        }
        for (x, row) in homs.iter().enumerate() {
            if row[x].identity.is_none() {
                return Err(bad(format!("object `{}` has no identity", file.objects[x])));
            }
        }
        let mut c = DGCategory {
            name: file.name.clone(),
            prime: p,
            objects: file.objects.clone(),
            homs,
            composition: HashMap::new(),
            index,
        };
        for m in &file.morphisms {
            let (x, y, _) = c.index[&m.name];
            let v = c.vector(x, y, &m.differential)?;
            c.homs[x][y].differential.push(v);
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (gy, fx) = (c.homs[y][z].rank(), c.homs[x][y].rank());
                    if gy > 0 && fx > 0 {
                        let zero = vec![0; c.homs[x][z].rank()];
                        c.composition.insert((x, y, z), vec![vec![zero; fx]; gy]);
                    }
                }
            }
        }
        for e in &file.compositions {
            let &(y, z, g) = c.index.get(&e.outer).ok_or_else(|| bad(format!("unknown morphism `{}`", e.outer)))?;
            let &(x, y2, f) = c.index.get(&e.inner).ok_or_else(|| bad(format!("unknown morphism `{}`", e.inner)))?;
            if y != y2 {
                return Err(bad(format!("`{}` ∘ `{}` is not composable", e.outer, e.inner)));
            }
            if c.homs[y][z].identity == Some(g) || c.homs[x][y].identity == Some(f) {
                return Err(bad(format!("composite `{}` ∘ `{}` involves an identity and is implied", e.outer, e.inner)));
            }
            let v = c.vector(x, z, &e.result)?;
            c.composition.get_mut(&(x, y, z)).unwrap()[g][f] = v;
        }
        for x in 0..n {
            for y in 0..n {
                let id_x = c.homs[x][x].identity.unwrap();
                let id_y = c.homs[y][y].identity.unwrap();
                for f in 0..c.homs[x][y].rank() {
                    let mut unit = vec![0; c.homs[x][y].rank()];
                    unit[f] = 1;
                    c.composition.get_mut(&(x, y, y)).unwrap()[id_y][f] = unit.clone();
                    c.composition.get_mut(&(x, x, y)).unwrap()[f][id_x] = unit;
                }
            }
        }
        c.validate()?;
        Ok(c)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DGCategoryFile = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        DGCategory::from_file(&file)
    }

    fn vector(&self, x: usize, y: usize, terms: &BTreeMap<String, i64>) -> Result<Vector> {
        let mut v = vec![0; self.homs[x][y].rank()];
        for (name, &c) in terms {
            match self.index.get(name) {
                Some(&(a, b, k)) if (a, b) == (x, y) => {
                    v[k] = (v[k] + c.rem_euclid(self.prime as i64) as u64) % self.prime;
                }
                _ => return Err(bad(format!("`{name}` is not a morphism {} → {}", self.objects[x], self.objects[y]))),
            }
        }
        Ok(v)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn hom(&self, x: usize, y: usize) -> &HomSpace {
        &self.homs[x][y]
    }

    pub fn identity(&self, x: usize) -> Vector {
        let mut v = vec![0; self.homs[x][x].rank()];
        v[self.homs[x][x].identity.unwrap()] = 1;
        v
    }

    pub fn zero(&self, x: usize, y: usize) -> Vector {
        vec![0; self.homs[x][y].rank()]
    }

    pub fn d(&self, x: usize, y: usize, v: &[u64]) -> Vector {
        let h = &self.homs[x][y];
        let mut out = vec![0; h.rank()];
        for (j, &c) in v.iter().enumerate() {
            if c != 0 {
                self.axpy(&mut out, c, &h.differential[j]);
            }
        }
        out
    }

    /// `g ∘ f` for `g: y → z`, `f: x → y`.
    pub fn compose(&self, x: usize, y: usize, z: usize, g: &[u64], f: &[u64]) -> Vector {
        let mut out = vec![0; self.homs[x][z].rank()];
        let Some(table) = self.composition.get(&(x, y, z)) else {
            return out;
        };
        for (a, &cg) in g.iter().enumerate() {
            if cg == 0 {
                continue;
            }
            for (b, &cf) in f.iter().enumerate() {
                if cf != 0 {
                    self.axpy(&mut out, cg * cf % self.prime, &table[a][b]);
                }
            }
        }
        out
    }

    /// `out += c · v`.
    pub fn axpy(&self, out: &mut [u64], c: u64, v: &[u64]) {
        for (o, &x) in out.iter_mut().zip(v) {
            *o = (*o + c * x) % self.prime;
        }
    }

    /// `c` read as an element of `F_p`.
    pub fn scalar(&self, c: i64) -> u64 {
        c.rem_euclid(self.prime as i64) as u64
    }

    /// All homogeneous vectors of degree `n` in `hom(x, y)`, in counting order.
    pub fn homogeneous(&self, x: usize, y: usize, n: usize) -> Vec<Vector> {
        let h = &self.homs[x][y];
        let slots = h.of_degree(n);
        let total = (self.prime as usize).pow(slots.len() as u32);
        (0..total)
            .map(|mut code| {
                let mut v = vec![0; h.rank()];
                for &s in &slots {
                    v[s] = (code % self.prime as usize) as u64;
                    code /= self.prime as usize;
                }
                v
            })
            .collect()
    }

    fn degree_of(&self, x: usize, y: usize, v: &[u64]) -> Option<usize> {
        let h = &self.homs[x][y];
        let mut deg = None;
        for (j, &c) in v.iter().enumerate() {
            if c != 0 {
                match deg {
                    None => deg = Some(h.degrees[j]),
                    Some(d) if d != h.degrees[j] => return Some(usize::MAX),
                    _ => {}
                }
            }
        }
        deg
    }

    fn unit_vector(&self, x: usize, y: usize, j: usize) -> Vector {
        let mut v = self.zero(x, y);
        v[j] = 1;
        v
    }

    /// d² = 0, degree bookkeeping, Leibniz, associativity and unit laws on
    /// all basis elements.
    pub fn validate(&self) -> Result<()> {
        let n = self.object_count();
        let p = self.prime;
        for x in 0..n {
            for y in 0..n {
                let h = &self.homs[x][y];
                for j in 0..h.rank() {
                    let e = self.unit_vector(x, y, j);
                    let dj = self.d(x, y, &e);
                    if let Some(dd) = self.degree_of(x, y, &dj) {
                        if h.degrees[j] == 0 || dd != h.degrees[j] - 1 {
                            return Err(bad(format!("d({}) is not homogeneous of degree one less", h.names[j])));
                        }
                    }
                    if self.d(x, y, &dj).iter().any(|&c| c != 0) {
                        return Err(bad(format!("d²({}) ≠ 0", h.names[j])));
                    }
                }
                if x == y && self.d(x, x, &self.identity(x)).iter().any(|&c| c != 0) {
                    return Err(bad(format!("identity of `{}` is not a cycle", self.objects[x])));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for g in 0..self.homs[y][z].rank() {
                        for f in 0..self.homs[x][y].rank() {
                            let (eg, ef) = (self.unit_vector(y, z, g), self.unit_vector(x, y, f));
                            let (dg, df) = (self.homs[y][z].degrees[g], self.homs[x][y].degrees[f]);
                            let gf = self.compose(x, y, z, &eg, &ef);
                            if let Some(d) = self.degree_of(x, z, &gf) {
                                if d != dg + df {
                                    return Err(bad(format!(
                                        "{} ∘ {} is not of degree {}",
                                        self.homs[y][z].names[g],
                                        self.homs[x][y].names[f],
                                        dg + df
                                    )));
                                }
                            }
                            let lhs = self.d(x, z, &gf);
                            let mut rhs = self.compose(x, y, z, &self.d(y, z, &eg), &ef);
                            let sign = if dg % 2 == 0 { 1 } else { p - 1 };
                            self.axpy(&mut rhs, sign, &self.compose(x, y, z, &eg, &self.d(x, y, &ef)));
                            if lhs != rhs {
                                return Err(bad(format!(
                                    "Leibniz rule fails on {} ∘ {}",
                                    self.homs[y][z].names[g],
                                    self.homs[x][y].names[f]
                                )));
                            }
                            for w in 0..n {
                                for k in 0..self.homs[z][w].rank() {
                                    let ek = self.unit_vector(z, w, k);
                                    let left = self.compose(x, z, w, &ek, &gf);
                                    let right = self.compose(x, y, w, &self.compose(y, z, w, &ek, &eg), &ef);
                                    if left != right {
                                        return Err(bad(format!(
                                            "composition is not associative on {} ∘ {} ∘ {}",
                                            self.homs[z][w].names[k],
                                            self.homs[y][z].names[g],
                                            self.homs[x][y].names[f]
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn render(&self, x: usize, y: usize, v: &[u64]) -> String {
        let h = &self.homs[x][y];
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| if c == 1 { h.names[j].clone() } else { format!("{c}{}", h.names[j]) })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

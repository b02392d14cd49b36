//! Formal integer combinations of words: elements of a tensor algebra.

use std::collections::BTreeMap;
use std::fmt;

pub type Word = Vec<usize>;

/// Finite sum of words with nonzero integer coefficients. Multiplication is
/// concatenation; the empty word is the unit.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Word, i64>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::word(Vec::new())
    }

    pub fn word(w: Word) -> Self {
        Element::term(w, 1)
    }

    pub fn term(w: Word, c: i64) -> Self {
        let mut e = Element::zero();
        e.add_term(w, c);
        e
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: i64) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: i64) -> Element {
        let mut e = Element::zero();
        e.add_scaled(self, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coefficient(&self, w: &[usize]) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, x * y);
            }
        }
        out
    }

    /// Drops every term whose word fails `keep`.
    pub fn filtered(&self, keep: impl Fn(&[usize]) -> bool) -> Element {
        Element { terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, &c)| (w.clone(), c)).collect() }
    }

    /// Reduce coefficients mod `p`, dropping zeros.
    pub fn reduced_mod(&self, p: i64) -> Element {
        let mut out = Element::zero();
        for (w, &c) in &self.terms {
            out.add_term(w.clone(), c.rem_euclid(p));
        }
        out
    }

    /// Renders with a letter-naming function.
    pub fn display_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, &c)) in self.terms.iter().enumerate() {
            let body = if w.is_empty() {
                "1".to_string()
            } else {
                let letters: Vec<String> = w.iter().map(|&l| name(l)).collect();
                letters.join("|")
            };
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let mag = c.abs();
            if i > 0 {
                out.push(' ');
            }
            out.push_str(sign);
            if i > 0 {
                out.push(' ');
            }
            if mag != 1 {
                out.push_str(&format!("{mag}"));
            }
            if w.is_empty() {
                if mag == 1 {
                    out.push('1');
                }
            } else {
                out.push('[');
                out.push_str(&body);
                out.push(']');
            }
        }
        out
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(|l| l.to_string()))
    }
}

impl std::ops::Add for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, 1);
        out
    }
}

impl std::ops::Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, -1);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = &Element::word(vec![1]) + &Element::one();
        let sq = a.mul(&a);
        assert_eq!(sq.coefficient(&[1, 1]), 1);
        assert_eq!(sq.coefficient(&[1]), 2);
        assert_eq!(sq.coefficient(&[]), 1);
        assert!((&sq - &sq).is_zero());
        assert_eq!(Element::term(vec![2], 3).display_with(|l| format!("x{l}")), "3[x2]");
        assert_eq!(a.display_with(|_| "g".into()), "1 + [g]");
    }
}

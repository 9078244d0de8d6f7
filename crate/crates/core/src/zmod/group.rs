//! Finite abelian groups presented by moduli vectors, and their elements.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// ⊕ Z/n_i with every n_i >= 1 (n_i = 1 is an allowed trivial factor).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinAbGroup {
    moduli: Vec<i64>,
}

/// Coordinates of a group element, always reduced into [0, n_i).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element {
    pub coords: Vec<i64>,
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{:?}", self.moduli)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl FinAbGroup {
    pub fn new(moduli: Vec<i64>) -> Result<Self> {
        if moduli.iter().any(|&n| n < 1) {
            return Err(Error::InvalidInput(format!("moduli must be >= 1: {moduli:?}")));
        }
        Ok(FinAbGroup { moduli })
    }

    pub fn trivial() -> Self {
        FinAbGroup { moduli: vec![] }
    }

    pub fn cyclic(n: i64) -> Self {
        assert!(n >= 1);
        FinAbGroup { moduli: vec![n] }
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().map(|&n| n as u64).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn zero(&self) -> Element {
        Element { coords: vec![0; self.rank()] }
    }

    pub fn generator(&self, i: usize) -> Element {
        let mut coords = vec![0; self.rank()];
        coords[i] = 1;
        self.reduce_owned(coords)
    }

    pub fn reduce(&self, coords: &[i64]) -> Element {
        self.reduce_owned(coords.to_vec())
    }

    pub fn reduce_owned(&self, mut coords: Vec<i64>) -> Element {
        assert_eq!(coords.len(), self.rank(), "coordinate length mismatch");
        for (c, &n) in coords.iter_mut().zip(&self.moduli) {
            *c = c.rem_euclid(n);
        }
        Element { coords }
    }

    pub fn contains(&self, e: &Element) -> bool {
        e.coords.len() == self.rank()
            && e.coords.iter().zip(&self.moduli).all(|(&c, &n)| 0 <= c && c < n)
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        self.reduce_owned(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        self.reduce_owned(a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &Element) -> Element {
        self.reduce_owned(a.coords.iter().map(|x| -x).collect())
    }

    pub fn scalar_mul(&self, k: i64, a: &Element) -> Element {
        self.reduce_owned(a.coords.iter().map(|x| k * x).collect())
    }

    /// Additive order of an element.
    pub fn element_order(&self, a: &Element) -> u64 {
        self.moduli
            .iter()
            .zip(&a.coords)
            .map(|(&n, &c)| if c == 0 { 1 } else { (n / gcd(n, c)) as u64 })
            .fold(1u64, |acc, k| acc / gcd(acc as i64, k as i64) as u64 * k)
    }

    /// All elements in mixed-radix order (index 0 is the zero element).
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let order = self.order();
        (0..order).map(move |i| self.element_at(i))
    }

    pub fn element_at(&self, mut index: u64) -> Element {
        let mut coords = vec![0i64; self.rank()];
        for (c, &n) in coords.iter_mut().zip(&self.moduli) {
            *c = (index % n as u64) as i64;
            index /= n as u64;
        }
        Element { coords }
    }

    pub fn index_of(&self, e: &Element) -> u64 {
        let mut index = 0u64;
        let mut base = 1u64;
        for (&c, &n) in e.coords.iter().zip(&self.moduli) {
            index += c as u64 * base;
            base *= n as u64;
        }
        index
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_enumeration() {
        let g = FinAbGroup::new(vec![2, 3]).unwrap();
        assert_eq!(g.order(), 6);
        let all: Vec<_> = g.elements().collect();
        assert_eq!(all.len(), 6);
        for (i, e) in all.iter().enumerate() {
            assert_eq!(g.index_of(e), i as u64);
        }
    }

    #[test]
    fn trivial_factors_allowed() {
        let g = FinAbGroup::new(vec![1, 4, 1]).unwrap();
        assert_eq!(g.order(), 4);
        assert!(FinAbGroup::new(vec![0]).is_err());
    }

    #[test]
    fn element_orders() {
        let g = FinAbGroup::new(vec![4]).unwrap();
        assert_eq!(g.element_order(&g.reduce(&[2])), 2);
        assert_eq!(g.element_order(&g.reduce(&[1])), 4);
        assert_eq!(g.element_order(&g.zero()), 1);
    }
}

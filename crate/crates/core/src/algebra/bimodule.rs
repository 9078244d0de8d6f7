//! Two-sided actions given by tables on generators, plus plain bilinear
//! maps (the non-unital ⟨·,·⟩ products live here, not in FinRing).

use serde::{Deserialize, Serialize};

use super::ring::FinRing;
use crate::report::Report;
use crate::zmod::{Element, FinAbGroup};

/// An R-bimodule on a finite abelian group, with left and right action
/// tables on generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bimodule {
    ring: FinRing,
    additive: FinAbGroup,
    /// left[j][l] = e_j^R · e_l^M.
    left: Vec<Vec<Element>>,
    /// right[l][j] = e_l^M · e_j^R.
    right: Vec<Vec<Element>>,
}

impl Bimodule {
    pub fn new(
        ring: FinRing,
        additive: FinAbGroup,
        left: Vec<Vec<Element>>,
        right: Vec<Vec<Element>>,
    ) -> Self {
        let kr = ring.additive().rank();
        let km = additive.rank();
        assert_eq!(left.len(), kr);
        assert!(left.iter().all(|row| row.len() == km));
        assert_eq!(right.len(), km);
        assert!(right.iter().all(|row| row.len() == kr));
        for e in left.iter().flatten().chain(right.iter().flatten()) {
            assert!(additive.contains(e), "action table entry not reduced");
        }
        Bimodule { ring, additive, left, right }
    }

    /// A ring acting on itself by multiplication.
    pub fn regular(ring: &FinRing) -> Self {
        let g = ring.additive().clone();
        let k = g.rank();
        let left = (0..k)
            .map(|j| (0..k).map(|l| ring.mul(&g.generator(j), &g.generator(l))).collect())
            .collect();
        let right = (0..k)
            .map(|l| (0..k).map(|j| ring.mul(&g.generator(l), &g.generator(j))).collect())
            .collect();
        Bimodule::new(ring.clone(), g, left, right)
    }

    /// The trivial module over a ring.
    pub fn trivial(ring: &FinRing) -> Self {
        Bimodule::new(ring.clone(), FinAbGroup::trivial(), vec![vec![]; ring.additive().rank()], vec![])
    }

    pub fn ring(&self) -> &FinRing {
        &self.ring
    }

    pub fn additive(&self) -> &FinAbGroup {
        &self.additive
    }

    pub fn left_table(&self) -> &Vec<Vec<Element>> {
        &self.left
    }

    pub fn right_table(&self) -> &Vec<Vec<Element>> {
        &self.right
    }

    pub fn act_left(&self, r: &Element, m: &Element) -> Element {
        let mut acc = self.additive.zero();
        for (j, &rj) in r.coords.iter().enumerate() {
            if rj == 0 {
                continue;
            }
            for (l, &ml) in m.coords.iter().enumerate() {
                if ml == 0 {
                    continue;
                }
                acc = self
                    .additive
                    .add(&acc, &self.additive.scalar_mul(rj * ml, &self.left[j][l]));
            }
        }
        acc
    }

    pub fn act_right(&self, m: &Element, r: &Element) -> Element {
        let mut acc = self.additive.zero();
        for (l, &ml) in m.coords.iter().enumerate() {
            if ml == 0 {
                continue;
            }
            for (j, &rj) in r.coords.iter().enumerate() {
                if rj == 0 {
                    continue;
                }
                acc = self
                    .additive
                    .add(&acc, &self.additive.scalar_mul(ml * rj, &self.right[l][j]));
            }
        }
        acc
    }

    pub fn check(&self) -> Report {
        let mut report = Report::new();
        let g = &self.additive;
        let rg = self.ring.additive();
        for (j, row) in self.left.iter().enumerate() {
            for (l, t) in row.iter().enumerate() {
                if g.scalar_mul(rg.moduli()[j], t) != g.zero()
                    || g.scalar_mul(g.moduli()[l], t) != g.zero()
                {
                    report.violate("left table well-definedness", format!("e_{j}·m_{l} = {t}"), "left");
                }
            }
        }
        for (l, row) in self.right.iter().enumerate() {
            for (j, t) in row.iter().enumerate() {
                if g.scalar_mul(rg.moduli()[j], t) != g.zero()
                    || g.scalar_mul(g.moduli()[l], t) != g.zero()
                {
                    report.violate("right table well-definedness", format!("m_{l}·e_{j} = {t}"), "right");
                }
            }
        }
        let kr = rg.rank();
        let km = g.rank();
        for a in 0..kr {
            for b in 0..kr {
                for l in 0..km {
                    let r = rg.generator(a);
                    let r2 = rg.generator(b);
                    let m = g.generator(l);
                    let lhs = self.act_left(&self.ring.mul(&r, &r2), &m);
                    let rhs = self.act_left(&r, &self.act_left(&r2, &m));
                    if lhs != rhs {
                        report.violate("left associativity", format!("(e_{a}e_{b})m_{l}"), "left");
                    }
                    let lhs = self.act_right(&m, &self.ring.mul(&r, &r2));
                    let rhs = self.act_right(&self.act_right(&m, &r), &r2);
                    if lhs != rhs {
                        report.violate("right associativity", format!("m_{l}(e_{a}e_{b})"), "right");
                    }
                    let lhs = self.act_right(&self.act_left(&r, &m), &r2);
                    let rhs = self.act_left(&r, &self.act_right(&m, &r2));
                    if lhs != rhs {
                        report.violate("middle compatibility", format!("(e_{a}m_{l})e_{b}"), "left/right");
                    }
                }
            }
        }
        for l in 0..km {
            let m = g.generator(l);
            if self.act_left(self.ring.unit(), &m) != m {
                report.violate("left unit action", format!("1·m_{l} != m_{l}"), "left");
            }
            if self.act_right(&m, self.ring.unit()) != m {
                report.violate("right unit action", format!("m_{l}·1 != m_{l}"), "right");
            }
        }
        report
    }
}

/// A plain Z-bilinear map; used for the Pfeiffer product ⟨·,·⟩ (a
/// non-unital multiplication, deliberately not a FinRing) and Hochschild
/// coboundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearMap {
    pub left: FinAbGroup,
    pub right: FinAbGroup,
    pub target: FinAbGroup,
    /// table[j][l] = value on (e_j, e_l).
    pub table: Vec<Vec<Element>>,
}

impl BilinearMap {
    pub fn from_fn(
        left: &FinAbGroup,
        right: &FinAbGroup,
        target: &FinAbGroup,
        f: impl Fn(&Element, &Element) -> Element,
    ) -> Self {
        let table = (0..left.rank())
            .map(|j| (0..right.rank()).map(|l| f(&left.generator(j), &right.generator(l))).collect())
            .collect();
        BilinearMap {
            left: left.clone(),
            right: right.clone(),
            target: target.clone(),
            table,
        }
    }

    pub fn apply(&self, a: &Element, b: &Element) -> Element {
        let mut acc = self.target.zero();
        for (j, &aj) in a.coords.iter().enumerate() {
            if aj == 0 {
                continue;
            }
            for (l, &bl) in b.coords.iter().enumerate() {
                if bl == 0 {
                    continue;
                }
                acc = self.target.add(&acc, &self.target.scalar_mul(aj * bl, &self.table[j][l]));
            }
        }
        acc
    }
}

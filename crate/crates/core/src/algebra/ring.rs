//! Finite unital rings given by structure-constant tables on generators.

use serde::{Deserialize, Serialize};

use crate::report::Report;
use crate::zmod::{direct_sum, Element, FinAbGroup};

/// A finite ring: additive group plus a multiplication table on generators,
/// extended bilinearly. The zero ring (order 1, with 1 = 0) is admitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinRing {
    additive: FinAbGroup,
    unit: Element,
    /// mult[j][l] = e_j · e_l.
    mult: Vec<Vec<Element>>,
}

impl FinRing {
    pub fn new(additive: FinAbGroup, unit: Element, mult: Vec<Vec<Element>>) -> Self {
        let k = additive.rank();
        assert!(additive.contains(&unit), "unit not reduced into the additive group");
        assert_eq!(mult.len(), k, "mult table must have one row per generator");
        for row in &mult {
            assert_eq!(row.len(), k);
            for e in row {
                assert!(additive.contains(e), "table entry not reduced");
            }
        }
        FinRing { additive, unit, mult }
    }

    /// Z/n with its standard multiplication.
    pub fn cyclic(n: i64) -> Self {
        let g = FinAbGroup::cyclic(n);
        let unit = g.reduce(&[1]);
        let mult = vec![vec![g.reduce(&[1])]];
        FinRing::new(g, unit, mult)
    }

    /// The zero ring: order 1, unit = 0. Arises as pi0 of an identity
    /// differential; all ring laws hold vacuously.
    pub fn zero_ring() -> Self {
        let g = FinAbGroup::trivial();
        let unit = g.zero();
        FinRing::new(g, unit, vec![])
    }

    pub fn additive(&self) -> &FinAbGroup {
        &self.additive
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn table(&self) -> &Vec<Vec<Element>> {
        &self.mult
    }

    pub fn order(&self) -> u64 {
        self.additive.order()
    }

    pub fn zero(&self) -> Element {
        self.additive.zero()
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        self.additive.add(a, b)
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        self.additive.sub(a, b)
    }

    pub fn neg(&self, a: &Element) -> Element {
        self.additive.neg(a)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut acc = self.additive.zero();
        for (j, &aj) in a.coords.iter().enumerate() {
            if aj == 0 {
                continue;
            }
            for (l, &bl) in b.coords.iter().enumerate() {
                if bl == 0 {
                    continue;
                }
                acc = self
                    .additive
                    .add(&acc, &self.additive.scalar_mul(aj * bl, &self.mult[j][l]));
            }
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.additive.elements()
    }

    /// Ring axiom check on generators; bilinearity makes the generator
    /// checks sufficient for all elements.
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        let g = &self.additive;
        let k = g.rank();
        for j in 0..k {
            for l in 0..k {
                let t = &self.mult[j][l];
                if g.scalar_mul(g.moduli()[j], t) != g.zero()
                    || g.scalar_mul(g.moduli()[l], t) != g.zero()
                {
                    report.violate(
                        "table well-definedness",
                        format!("e_{j}·e_{l} = {t}"),
                        "mult",
                    );
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let ei = g.generator(i);
                    let ej = g.generator(j);
                    let el = g.generator(l);
                    let lhs = self.mul(&self.mul(&ei, &ej), &el);
                    let rhs = self.mul(&ei, &self.mul(&ej, &el));
                    if lhs != rhs {
                        report.violate(
                            "associativity",
                            format!("(e_{i}e_{j})e_{l} = {lhs} != {rhs} = e_{i}(e_{j}e_{l})"),
                            "mult",
                        );
                    }
                }
            }
        }
        for j in 0..k {
            let e = g.generator(j);
            if self.mul(&self.unit, &e) != e {
                report.violate("left unit law", format!("1·e_{j} != e_{j}"), "unit");
            }
            if self.mul(&e, &self.unit) != e {
                report.violate("right unit law", format!("e_{j}·1 != e_{j}"), "unit");
            }
        }
        report
    }

    /// Cross-validation mode: re-check associativity and unit laws on all
    /// element triples instead of generators.
    pub fn check_exhaustive(&self) -> Report {
        let mut report = self.check();
        for a in self.elements() {
            if self.mul(&self.unit, &a) != a || self.mul(&a, &self.unit) != a {
                report.violate("unit law (exhaustive)", format!("{a}"), "unit");
            }
            for b in self.elements() {
                for c in self.elements() {
                    if self.mul(&self.mul(&a, &b), &c) != self.mul(&a, &self.mul(&b, &c)) {
                        report.violate(
                            "associativity (exhaustive)",
                            format!("({a}{b}){c}"),
                            "mult",
                        );
                    }
                }
            }
        }
        report
    }
}

/// The ring S ⊕ M with product (s,m)(s',m') = (ss', s·m' + m·s'), the
/// square-zero extension of S by a bimodule with the given action tables.
pub fn square_zero_extension(
    s: &FinRing,
    module: &FinAbGroup,
    left: &[Vec<Element>],
    right: &[Vec<Element>],
) -> FinRing {
    let ds = direct_sum(s.additive(), module);
    let g = ds.group.clone();
    let k = g.rank();
    let ks = s.additive().rank();
    let act_left = |j: usize, l: usize| -> &Element { &left[j][l] };
    let act_right = |l: usize, j: usize| -> &Element { &right[l][j] };
    let mut mult = vec![vec![g.zero(); k]; k];
    for a in 0..k {
        for b in 0..k {
            mult[a][b] = if a < ks && b < ks {
                ds.inj1
                    .apply(&s.mul(&s.additive().generator(a), &s.additive().generator(b)))
            } else if a < ks && b >= ks {
                ds.inj2.apply(act_left(a, b - ks))
            } else if a >= ks && b < ks {
                ds.inj2.apply(act_right(a - ks, b))
            } else {
                g.zero()
            };
        }
    }
    let unit = ds.inj1.apply(s.unit());
    FinRing::new(g, unit, mult)
}

/// Componentwise product ring A x B together with the additive direct
/// sum structure maps.
pub fn product_ring(a: &FinRing, b: &FinRing) -> (FinRing, crate::zmod::DirectSum) {
    let ds = direct_sum(a.additive(), b.additive());
    let g = ds.group.clone();
    let ka = a.additive().rank();
    let k = g.rank();
    let mut mult = vec![vec![g.zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            mult[i][j] = if i < ka && j < ka {
                ds.inj1.apply(&a.mul(&a.additive().generator(i), &a.additive().generator(j)))
            } else if i >= ka && j >= ka {
                ds.inj2
                    .apply(&b.mul(&b.additive().generator(i - ka), &b.additive().generator(j - ka)))
            } else {
                g.zero()
            };
        }
    }
    let unit = g.add(&ds.inj1.apply(a.unit()), &ds.inj2.apply(b.unit()));
    (FinRing::new(g, unit, mult), ds)
}

/// Ring structure transported onto a subgroup presented by `incl` into an
/// ambient ring; the image must be multiplicatively closed and contain
/// the unit, which is verified through the preimage lookups.
pub fn subring(ambient: &FinRing, incl: &crate::zmod::GroupHom) -> FinRing {
    assert_eq!(incl.target(), ambient.additive());
    let g = incl.source().clone();
    let k = g.rank();
    let mult = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let p = ambient.mul(&incl.apply(&g.generator(i)), &incl.apply(&g.generator(j)));
                    incl.preimage_unique(&p)
                })
                .collect()
        })
        .collect();
    let unit = incl.preimage_unique(ambient.unit());
    FinRing::new(g, unit, mult)
}

/// Ring structure on a quotient presented by `proj` out of an ambient
/// ring; the kernel must be a two-sided ideal (checked by the caller).
pub fn quotient_ring(ambient: &FinRing, proj: &crate::zmod::GroupHom) -> FinRing {
    assert_eq!(proj.source(), ambient.additive());
    let g = proj.target().clone();
    let lift = |c: &Element| -> Element {
        proj.solve(c, u64::MAX)
            .expect("unbounded")
            .into_iter()
            .next()
            .expect("projection is surjective")
    };
    let mult = (0..g.rank())
        .map(|i| {
            (0..g.rank())
                .map(|j| proj.apply(&ambient.mul(&lift(&g.generator(i)), &lift(&g.generator(j)))))
                .collect()
        })
        .collect();
    FinRing::new(g.clone(), proj.apply(ambient.unit()), mult)
}

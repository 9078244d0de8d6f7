//! Ring homomorphisms and bimodule restriction along them.

use serde::{Deserialize, Serialize};

use super::bimodule::Bimodule;
use super::ring::FinRing;
use crate::error::{Error, Result};
use crate::report::Report;
use crate::zmod::{Element, GroupHom, IntMat};

/// A unital multiplicative map between finite rings; the additive layer is
/// an ordinary GroupHom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingHom {
    source: FinRing,
    target: FinRing,
    hom: GroupHom,
}

impl RingHom {
    pub fn new(source: FinRing, target: FinRing, matrix: IntMat) -> Result<Self> {
        let hom = GroupHom::new(source.additive().clone(), target.additive().clone(), matrix)?;
        Ok(RingHom { source, target, hom })
    }

    pub fn from_group_hom(source: FinRing, target: FinRing, hom: GroupHom) -> Result<Self> {
        if hom.source() != source.additive() || hom.target() != target.additive() {
            return Err(Error::EndpointMismatch("ring hom additive layer".into()));
        }
        Ok(RingHom { source, target, hom })
    }

    pub fn identity(r: &FinRing) -> Self {
        RingHom {
            source: r.clone(),
            target: r.clone(),
            hom: GroupHom::identity(r.additive()),
        }
    }

    pub fn source(&self) -> &FinRing {
        &self.source
    }

    pub fn target(&self) -> &FinRing {
        &self.target
    }

    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn apply(&self, x: &Element) -> Element {
        self.hom.apply(x)
    }

    pub fn compose(&self, other: &RingHom) -> Result<RingHom> {
        if other.target != self.source {
            return Err(Error::EndpointMismatch("ring hom composition".into()));
        }
        Ok(RingHom {
            source: other.source.clone(),
            target: self.target.clone(),
            hom: self.hom.compose(&other.hom)?,
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.hom.is_surjective()
    }

    pub fn is_bijective(&self) -> bool {
        self.hom.is_bijective()
    }

    pub fn invert(&self) -> Result<RingHom> {
        Ok(RingHom {
            source: self.target.clone(),
            target: self.source.clone(),
            hom: self.hom.invert()?,
        })
    }

    /// Multiplicativity on generator pairs plus unit preservation.
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        let g = self.source.additive();
        if self.apply(self.source.unit()) != *self.target.unit() {
            report.violate("unit preservation", "f(1) != 1", "hom");
        }
        for j in 0..g.rank() {
            for l in 0..g.rank() {
                let a = g.generator(j);
                let b = g.generator(l);
                let lhs = self.apply(&self.source.mul(&a, &b));
                let rhs = self.target.mul(&self.apply(&a), &self.apply(&b));
                if lhs != rhs {
                    report.violate(
                        "multiplicativity",
                        format!("f(e_{j}e_{l}) = {lhs} != {rhs}"),
                        "hom",
                    );
                }
            }
        }
        report
    }
}

/// View an R-bimodule as an S-bimodule through a ring hom S -> R:
/// s·m := f(s)·m and m·s := m·f(s).
pub fn restrict_bimodule(m: &Bimodule, f: &RingHom) -> Result<Bimodule> {
    if f.target() != m.ring() {
        return Err(Error::EndpointMismatch("restriction target is not the acting ring".into()));
    }
    let check = f.check();
    if !check.ok() {
        return Err(Error::InvalidInput(format!("invalid ring hom: {check}")));
    }
    let s = f.source();
    let sg = s.additive();
    let mg = m.additive();
    let left = (0..sg.rank())
        .map(|j| {
            (0..mg.rank())
                .map(|l| m.act_left(&f.apply(&sg.generator(j)), &mg.generator(l)))
                .collect()
        })
        .collect();
    let right = (0..mg.rank())
        .map(|l| {
            (0..sg.rank())
                .map(|j| m.act_right(&mg.generator(l), &f.apply(&sg.generator(j))))
                .collect()
        })
        .collect();
    Ok(Bimodule::new(s.clone(), mg.clone(), left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::hom_enumerate;

    #[test]
    fn identity_restriction_is_identity() {
        let r = FinRing::cyclic(4);
        let m = Bimodule::regular(&r);
        let restricted = restrict_bimodule(&m, &RingHom::identity(&r)).unwrap();
        assert_eq!(restricted, m);
    }

    #[test]
    fn no_unital_hom_z2_to_z4() {
        // 1 has additive order 2 in Z/2 but 4 in Z/4: the congruence fails,
        // so not a single well-defined additive map sends 1 to 1.
        let z2 = FinRing::cyclic(2);
        let z4 = FinRing::cyclic(4);
        let unital: Vec<_> = hom_enumerate(z2.additive(), z4.additive(), 1 << 16)
            .unwrap()
            .into_iter()
            .filter(|h| {
                let f = RingHom::from_group_hom(z2.clone(), z4.clone(), h.clone()).unwrap();
                f.check().ok()
            })
            .collect();
        assert!(unital.is_empty());
    }

    #[test]
    fn reduction_is_a_ring_hom_and_restricts() {
        let z4 = FinRing::cyclic(4);
        let z2 = FinRing::cyclic(2);
        let red = RingHom::new(z4.clone(), z2.clone(), vec![vec![1]]).unwrap();
        assert!(red.check().ok());
        let m = Bimodule::regular(&z2);
        let restricted = restrict_bimodule(&m, &red).unwrap();
        assert!(restricted.check().ok());
        assert_eq!(
            restricted.act_left(&z4.additive().reduce(&[3]), &z2.additive().reduce(&[1])),
            z2.additive().reduce(&[1])
        );
    }
}

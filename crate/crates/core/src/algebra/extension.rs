//! Algebra extensions 0 -> M -> E -> S -> 0 and splitting searches. No
//! chosen set-section is stored: sections are always searched, since
//! extensions are in general non-split.

use itertools::Itertools;

use super::hom::RingHom;
use super::ring::{square_zero_extension, FinRing};
use crate::error::{check_bound, Result};
use crate::report::Report;
use crate::zmod::{is_exact, Element, FinAbGroup, GroupHom};

/// An extension of the ring S by the module M inside E: incl is additive
/// and injective, proj is a surjective ring hom, and im(incl) = ker(proj)
/// is a two-sided ideal of E.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgExtension {
    module: FinAbGroup,
    middle: FinRing,
    base: FinRing,
    incl: GroupHom,
    proj: RingHom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitMode {
    Additive,
    Ring,
}

impl AlgExtension {
    pub fn new(
        module: FinAbGroup,
        middle: FinRing,
        base: FinRing,
        incl: GroupHom,
        proj: RingHom,
    ) -> Self {
        assert_eq!(incl.source(), &module);
        assert_eq!(incl.target(), middle.additive());
        assert_eq!(proj.source(), &middle);
        assert_eq!(proj.target(), &base);
        AlgExtension { module, middle, base, incl, proj }
    }

    /// The trivial (square-zero) extension S ⊕ M.
    pub fn trivial(s: &FinRing, module: &FinAbGroup, left: &[Vec<Element>], right: &[Vec<Element>]) -> Self {
        let e = square_zero_extension(s, module, left, right);
        let ks = s.additive().rank();
        let km = module.rank();
        let incl_matrix = (0..ks + km)
            .map(|i| (0..km).map(|j| i64::from(i == j + ks)).collect())
            .collect();
        let incl = GroupHom::new(module.clone(), e.additive().clone(), incl_matrix).unwrap();
        let proj_matrix = (0..ks)
            .map(|i| (0..ks + km).map(|j| i64::from(i == j)).collect())
            .collect();
        let proj = RingHom::new(e.clone(), s.clone(), proj_matrix).unwrap();
        AlgExtension::new(module.clone(), e, s.clone(), incl, proj)
    }

    pub fn module(&self) -> &FinAbGroup {
        &self.module
    }

    pub fn middle(&self) -> &FinRing {
        &self.middle
    }

    pub fn base(&self) -> &FinRing {
        &self.base
    }

    pub fn incl(&self) -> &GroupHom {
        &self.incl
    }

    pub fn proj(&self) -> &RingHom {
        &self.proj
    }

    pub fn check(&self) -> Report {
        let mut report = Report::new();
        report.absorb("E", self.middle.check());
        report.absorb("S", self.base.check());
        report.absorb("proj", self.proj.check());
        if !self.incl.is_injective() {
            report.violate("injectivity", "incl has nontrivial kernel", "incl");
        }
        if !self.proj.is_surjective() {
            report.violate("surjectivity", "proj is not onto", "proj");
        }
        if !is_exact(&self.incl, self.proj.hom()) {
            report.violate("exactness", "im(incl) != ker(proj)", "incl/proj");
        }
        // im(incl) must be a two-sided ideal of E.
        let eg = self.middle.additive();
        for j in 0..self.module.rank() {
            let m = self.incl.apply(&self.module.generator(j));
            for i in 0..eg.rank() {
                let e = eg.generator(i);
                for x in [self.middle.mul(&e, &m), self.middle.mul(&m, &e)] {
                    if self.incl.solve(&x, u64::MAX).unwrap().is_empty() {
                        report.violate("ideal property", format!("{x} escapes im(incl)"), "incl");
                    }
                }
            }
        }
        if self.middle.order() != self.module.order() * self.base.order() {
            report.violate("order counting", "|E| != |M|·|S|", "middle");
        }
        report
    }

    /// All sections sigma of proj: additive mode returns every group-hom
    /// section, ring mode keeps the unital multiplicative ones.
    pub fn find_splittings(&self, mode: SplitMode, bound: u64) -> Result<Vec<GroupHom>> {
        let sg = self.base.additive();
        let mut per_gen: Vec<Vec<Element>> = Vec::with_capacity(sg.rank());
        let mut total: u128 = 1;
        for j in 0..sg.rank() {
            let n = sg.moduli()[j];
            let target = sg.generator(j);
            let candidates: Vec<Element> = self
                .middle
                .elements()
                .filter(|y| {
                    self.proj.apply(y) == target
                        && self.middle.additive().scalar_mul(n, y) == self.middle.zero()
                })
                .collect();
            total = total.saturating_mul(candidates.len().max(1) as u128);
            check_bound(total, bound)?;
            if candidates.is_empty() {
                return Ok(vec![]);
            }
            per_gen.push(candidates);
        }
        if sg.rank() == 0 {
            let sigma = GroupHom::zero(sg.clone(), self.middle.additive().clone());
            return Ok(self.filter_mode(vec![sigma], mode));
        }
        let sections: Vec<GroupHom> = per_gen
            .iter()
            .multi_cartesian_product()
            .map(|cols| {
                let matrix = (0..self.middle.additive().rank())
                    .map(|r| cols.iter().map(|c| c.coords[r]).collect())
                    .collect();
                GroupHom::new(sg.clone(), self.middle.additive().clone(), matrix)
                    .expect("order congruence holds by construction")
            })
            .collect();
        Ok(self.filter_mode(sections, mode))
    }

    fn filter_mode(&self, sections: Vec<GroupHom>, mode: SplitMode) -> Vec<GroupHom> {
        match mode {
            SplitMode::Additive => sections,
            SplitMode::Ring => sections
                .into_iter()
                .filter(|sigma| {
                    RingHom::from_group_hom(self.base.clone(), self.middle.clone(), sigma.clone())
                        .map(|f| f.check().ok())
                        .unwrap_or(false)
                })
                .collect(),
        }
    }
}

/// Smallest additive subgroup of E containing `gens` and closed under
/// left/right multiplication by E, computed by closure iteration.
pub fn ideal_generated(ring: &FinRing, gens: &[Element]) -> (FinAbGroup, GroupHom) {
    let eg = ring.additive();
    let mut working: Vec<Element> = gens.to_vec();
    let (mut sub, mut incl) = crate::zmod::subgroup(eg, &working);
    loop {
        let mut grew = false;
        let current: Vec<Element> = sub.elements().map(|x| incl.apply(&x)).collect();
        for x in &current {
            for i in 0..eg.rank() {
                let e = eg.generator(i);
                for y in [ring.mul(&e, x), ring.mul(x, &e)] {
                    if incl.solve(&y, u64::MAX).unwrap().is_empty() {
                        working.push(y);
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return (sub, incl);
        }
        let next = crate::zmod::subgroup(eg, &working);
        sub = next.0;
        incl = next.1;
    }
}

/// The extension Z/2 -> Z/4 -> Z/2 (incl = x2, proj = reduction): the
/// standard example of a non-split extension.
pub fn mod4_extension() -> AlgExtension {
    let z4 = FinRing::cyclic(4);
    let z2 = FinRing::cyclic(2);
    let m = FinAbGroup::cyclic(2);
    let incl = GroupHom::new(m.clone(), z4.additive().clone(), vec![vec![2]]).unwrap();
    let proj = RingHom::new(z4.clone(), z2.clone(), vec![vec![1]]).unwrap();
    AlgExtension::new(m, z4, z2, incl, proj)
}

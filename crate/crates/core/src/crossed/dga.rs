//! Chain DGAs concentrated in degrees 0, -1, -2 and the soft truncation
//! producing a crossed bimodule, plus the reverse construction.

use super::xbm::CrossedBimodule;
use crate::algebra::{restrict_bimodule, BilinearMap, Bimodule, FinRing};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::zmod::{quotient, Element, FinAbGroup, GroupHom};

/// A differential graded algebra living in degrees 0, -1, -2: a ring in
/// degree 0 acting on the two lower terms, differentials d1, d2, and the
/// one product not forced by the actions, deg-1 x deg-1 -> deg-2.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainDga {
    pub deg0: FinRing,
    pub deg1: Bimodule,
    pub deg2: Bimodule,
    /// d1: degree -1 -> degree 0.
    pub d1: GroupHom,
    /// d2: degree -2 -> degree -1.
    pub d2: GroupHom,
    /// Product of two degree -1 elements, landing in degree -2.
    pub prod11: BilinearMap,
}

impl ChainDga {
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        report.absorb("deg0", self.deg0.check());
        report.absorb("deg1", self.deg1.check());
        report.absorb("deg2", self.deg2.check());
        if self.d1.compose(&self.d2).map(|c| !c.is_zero()).unwrap_or(true) {
            report.violate("complex", "d1∘d2 != 0", "d1/d2");
        }
        let rg = self.deg0.additive();
        let g1 = self.deg1.additive();
        let g2 = self.deg2.additive();
        // Degree-0 elements are cycles, so Leibniz against them says the
        // differentials are bimodule maps.
        for j in 0..rg.rank() {
            let r = rg.generator(j);
            for l in 0..g1.rank() {
                let m = g1.generator(l);
                if self.d1.apply(&self.deg1.act_left(&r, &m))
                    != self.deg0.mul(&r, &self.d1.apply(&m))
                    || self.d1.apply(&self.deg1.act_right(&m, &r))
                        != self.deg0.mul(&self.d1.apply(&m), &r)
                {
                    report.violate("Leibniz (0,-1)", format!("(e_{j}, x_{l})"), "d1");
                }
            }
            for l in 0..g2.rank() {
                let a = g2.generator(l);
                if self.d2.apply(&self.deg2.act_left(&r, &a))
                    != self.deg1.act_left(&r, &self.d2.apply(&a))
                    || self.d2.apply(&self.deg2.act_right(&a, &r))
                        != self.deg1.act_right(&self.d2.apply(&a), &r)
                {
                    report.violate("Leibniz (0,-2)", format!("(e_{j}, a_{l})"), "d2");
                }
            }
        }
        // Leibniz on two degree -1 elements: d2(xy) = d1(x)y - x d1(y).
        for j in 0..g1.rank() {
            for l in 0..g1.rank() {
                let x = g1.generator(j);
                let y = g1.generator(l);
                let lhs = self.d2.apply(&self.prod11.apply(&x, &y));
                let rhs = g1.sub(
                    &self.deg1.act_left(&self.d1.apply(&x), &y),
                    &self.deg1.act_right(&x, &self.d1.apply(&y)),
                );
                if lhs != rhs {
                    report.violate("Leibniz (-1,-1)", format!("(x_{j}, x_{l})"), "prod11");
                }
                // Associativity of the graded product against the actions.
                for i in 0..rg.rank() {
                    let r = rg.generator(i);
                    if self.prod11.apply(&self.deg1.act_left(&r, &x), &y)
                        != self.deg2.act_left(&r, &self.prod11.apply(&x, &y))
                    {
                        report.violate("associativity (0,-1,-1)", format!("(e_{i}, x_{j}, x_{l})"), "prod11");
                    }
                    if self.prod11.apply(&x, &self.deg1.act_right(&y, &r))
                        != self.deg2.act_right(&self.prod11.apply(&x, &y), &r)
                    {
                        report.violate("associativity (-1,-1,0)", format!("(x_{j}, x_{l}, e_{i})"), "prod11");
                    }
                    if self.prod11.apply(&self.deg1.act_right(&x, &r), &y)
                        != self.prod11.apply(&x, &self.deg1.act_left(&r, &y))
                    {
                        report.violate("associativity (-1,0,-1)", format!("(x_{j}, e_{i}, x_{l})"), "prod11");
                    }
                }
            }
        }
        report
    }

    /// Homology orders in degrees (0, -1, -2): coker d1, ker d1 / im d2,
    /// ker d2.
    pub fn homology_orders(&self) -> (u64, u64, u64) {
        let h0 = self.d1.cokernel().0.order();
        let (z1, incl) = self.d1.kernel();
        let boundary_gens: Vec<Element> = (0..self.deg2.additive().rank())
            .map(|j| self.d2.apply(&self.deg2.additive().generator(j)))
            .collect();
        // Express the boundaries inside the cycle subgroup and quotient.
        let in_z1: Vec<Element> = boundary_gens
            .iter()
            .map(|b| incl.preimage_unique(b))
            .collect();
        let h1 = quotient(&z1, &in_z1).0.order();
        let h2 = self.d2.kernel().0.order();
        (h0, h1, h2)
    }
}

/// The soft truncation: quotient degree -1 by the image of d2 and keep
/// the induced differential into degree 0.
pub fn truncate_dga(d: &ChainDga) -> Result<CrossedBimodule> {
    let report = d.check();
    if !report.ok() {
        return Err(Error::InvalidDga(report.to_string()));
    }
    let g1 = d.deg1.additive();
    let boundary_gens: Vec<Element> = (0..d.deg2.additive().rank())
        .map(|j| d.d2.apply(&d.deg2.additive().generator(j)))
        .collect();
    let (q, proj) = quotient(g1, &boundary_gens);
    let lift = |c: &Element| -> Element {
        proj.solve(c, u64::MAX)
            .expect("unbounded")
            .into_iter()
            .next()
            .expect("projection is surjective")
    };
    // d1 kills im d2, so it descends to the quotient.
    let del_cols: Vec<Element> = (0..q.rank()).map(|j| d.d1.apply(&lift(&q.generator(j)))).collect();
    let rg = d.deg0.additive();
    let del_matrix: Vec<Vec<i64>> = (0..rg.rank())
        .map(|i| del_cols.iter().map(|c| c.coords[i]).collect())
        .collect();
    let del = GroupHom::new(q.clone(), rg.clone(), del_matrix)?;
    let left = (0..rg.rank())
        .map(|j| {
            (0..q.rank())
                .map(|l| proj.apply(&d.deg1.act_left(&rg.generator(j), &lift(&q.generator(l)))))
                .collect()
        })
        .collect();
    let right = (0..q.rank())
        .map(|l| {
            (0..rg.rank())
                .map(|j| proj.apply(&d.deg1.act_right(&lift(&q.generator(l)), &rg.generator(j))))
                .collect()
        })
        .collect();
    let module = Bimodule::new(d.deg0.clone(), q, left, right);
    Ok(CrossedBimodule::new(d.deg0.clone(), module, del))
}

/// The complex 0 -> pi1 -> M -> R with the actions of R and all products
/// of two negative-degree elements set to zero; Leibniz then restates the
/// Pfeiffer identity.
pub fn dga_from_crossed(x: &CrossedBimodule) -> ChainDga {
    let (pi1, incl) = x.pi1();
    let (_, proj) = x.pi0();
    let deg2 = restrict_bimodule(&pi1, &proj).expect("projection is a valid ring hom");
    let g1 = x.module().additive();
    let g2 = deg2.additive();
    let prod11 = BilinearMap::from_fn(g1, g1, g2, |_, _| g2.zero());
    ChainDga {
        deg0: x.ring().clone(),
        deg1: x.module().clone(),
        deg2,
        d1: x.del().clone(),
        d2: incl,
        prod11,
    }
}

/// A DGA with zero degree -2 term wrapping a crossed bimodule verbatim.
pub fn dga_two_term(x: &CrossedBimodule) -> ChainDga {
    let deg2 = Bimodule::trivial(x.ring());
    let g1 = x.module().additive();
    let g2 = FinAbGroup::trivial();
    let d2 = GroupHom::zero(g2.clone(), g1.clone());
    let prod11 = BilinearMap::from_fn(g1, g1, &g2, |_, _| g2.zero());
    ChainDga {
        deg0: x.ring().clone(),
        deg1: x.module().clone(),
        deg2,
        d1: x.del().clone(),
        d2,
        prod11,
    }
}

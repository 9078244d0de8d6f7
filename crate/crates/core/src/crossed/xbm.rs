//! Crossed bimodules: a ring R, an R-bimodule M, and a bimodule map
//! ∂: M -> R satisfying (∂m)m' = m(∂m'), together with the homotopy
//! invariants pi0 = coker ∂ (a ring) and pi1 = ker ∂ (a pi0-bimodule).

use serde::{Deserialize, Serialize};

use crate::algebra::{BilinearMap, Bimodule, FinRing, RingHom};
use crate::report::Report;
use crate::zmod::{is_exact, Element, FinAbGroup, GroupHom};

/// A crossed bimodule (R, M, ∂). The differential is additive with
/// source M and target R; bimodule-map and Pfeiffer laws are checked by
/// `check`, not enforced at construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossedBimodule {
    ring: FinRing,
    module: Bimodule,
    del: GroupHom,
}

impl CrossedBimodule {
    pub fn new(ring: FinRing, module: Bimodule, del: GroupHom) -> Self {
        assert_eq!(module.ring(), &ring, "module must be a bimodule over the given ring");
        assert_eq!(del.source(), module.additive());
        assert_eq!(del.target(), ring.additive());
        CrossedBimodule { ring, module, del }
    }

    pub fn ring(&self) -> &FinRing {
        &self.ring
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn del(&self) -> &GroupHom {
        &self.del
    }

    /// Full validity report: ring and bimodule laws, ∂ a bimodule map on
    /// generators, and the Pfeiffer identity on generator pairs. The
    /// generator checks extend to all elements by bilinearity.
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        report.absorb("R", self.ring.check());
        report.absorb("M", self.module.check());
        let rg = self.ring.additive();
        let mg = self.module.additive();
        for j in 0..rg.rank() {
            for l in 0..mg.rank() {
                let r = rg.generator(j);
                let m = mg.generator(l);
                let lhs = self.del.apply(&self.module.act_left(&r, &m));
                let rhs = self.ring.mul(&r, &self.del.apply(&m));
                if lhs != rhs {
                    report.violate(
                        "differential is a left module map",
                        format!("∂(e_{j}·m_{l}) = {lhs} != {rhs}"),
                        "del",
                    );
                }
                let lhs = self.del.apply(&self.module.act_right(&m, &r));
                let rhs = self.ring.mul(&self.del.apply(&m), &r);
                if lhs != rhs {
                    report.violate(
                        "differential is a right module map",
                        format!("∂(m_{l}·e_{j}) = {lhs} != {rhs}"),
                        "del",
                    );
                }
            }
        }
        for j in 0..mg.rank() {
            for l in 0..mg.rank() {
                let m = mg.generator(j);
                let m2 = mg.generator(l);
                let lhs = self.module.act_left(&self.del.apply(&m), &m2);
                let rhs = self.module.act_right(&m, &self.del.apply(&m2));
                if lhs != rhs {
                    report.violate(
                        "Pfeiffer identity",
                        format!("(∂m_{j})m_{l} = {lhs} != {rhs} = m_{j}(∂m_{l})"),
                        "del",
                    );
                }
            }
        }
        report
    }

    /// Cross-validation: the generator checks re-run over every element
    /// pair. Must agree with `check` (bilinearity theorem).
    pub fn check_exhaustive(&self) -> Report {
        let mut report = self.check();
        for m in self.module.additive().elements() {
            for m2 in self.module.additive().elements() {
                let lhs = self.module.act_left(&self.del.apply(&m), &m2);
                let rhs = self.module.act_right(&m, &self.del.apply(&m2));
                if lhs != rhs {
                    report.violate("Pfeiffer identity (exhaustive)", format!("({m}, {m2})"), "del");
                }
            }
            for r in self.ring.elements() {
                if self.del.apply(&self.module.act_left(&r, &m))
                    != self.ring.mul(&r, &self.del.apply(&m))
                {
                    report.violate("left module map (exhaustive)", format!("({r}, {m})"), "del");
                }
                if self.del.apply(&self.module.act_right(&m, &r))
                    != self.ring.mul(&self.del.apply(&m), &r)
                {
                    report.violate("right module map (exhaustive)", format!("({m}, {r})"), "del");
                }
            }
        }
        report
    }

    /// The induced non-unital product ⟨m, m'⟩ = m·∂m' on M.
    pub fn peiffer_product(&self, m: &Element, m2: &Element) -> Element {
        self.module.act_right(m, &self.del.apply(m2))
    }

    /// ⟨·,·⟩ as a bilinear map M x M -> M.
    pub fn peiffer_map(&self) -> BilinearMap {
        let g = self.module.additive();
        BilinearMap::from_fn(g, g, g, |a, b| self.peiffer_product(a, b))
    }

    /// coker ∂ with the multiplication induced from R, together with the
    /// projection (a ring hom). Well-defined because im ∂ is an ideal.
    pub fn pi0(&self) -> (FinRing, RingHom) {
        let (coker, proj) = self.del.cokernel();
        let lift = |c: &Element| -> Element {
            proj.solve(c, u64::MAX)
                .expect("unbounded")
                .into_iter()
                .next()
                .expect("projection is surjective")
        };
        let unit = proj.apply(self.ring.unit());
        let mult = (0..coker.rank())
            .map(|i| {
                (0..coker.rank())
                    .map(|j| {
                        let ri = lift(&coker.generator(i));
                        let rj = lift(&coker.generator(j));
                        proj.apply(&self.ring.mul(&ri, &rj))
                    })
                    .collect()
            })
            .collect();
        let ring = FinRing::new(coker, unit, mult);
        let proj = RingHom::from_group_hom(self.ring.clone(), ring.clone(), proj)
            .expect("endpoints match by construction");
        (ring, proj)
    }

    /// ker ∂ as a bimodule over pi0, together with its inclusion into M.
    /// Well-defined because (∂m)a = m(∂a) = 0 for a in the kernel.
    pub fn pi1(&self) -> (Bimodule, GroupHom) {
        let (ker, incl) = self.del.kernel();
        let (pi0, proj) = self.pi0();
        let lift = |c: &Element| -> Element {
            proj.hom()
                .solve(c, u64::MAX)
                .expect("unbounded")
                .into_iter()
                .next()
                .expect("projection is surjective")
        };
        let pg = pi0.additive();
        let left = (0..pg.rank())
            .map(|j| {
                let r = lift(&pg.generator(j));
                (0..ker.rank())
                    .map(|l| {
                        let a = incl.apply(&ker.generator(l));
                        incl.preimage_unique(&self.module.act_left(&r, &a))
                    })
                    .collect()
            })
            .collect();
        let right = (0..ker.rank())
            .map(|l| {
                let a = incl.apply(&ker.generator(l));
                (0..pg.rank())
                    .map(|j| {
                        let r = lift(&pg.generator(j));
                        incl.preimage_unique(&self.module.act_right(&a, &r))
                    })
                    .collect()
            })
            .collect();
        (Bimodule::new(pi0, ker, left, right), incl)
    }
}

/// The four-term exact sequence 0 -> pi1 -> M -> R -> pi0 -> 0 packaged
/// with its maps.
#[derive(Debug, Clone)]
pub struct CrossedExtension {
    pub x: CrossedBimodule,
    /// pi0 of x.
    pub base: FinRing,
    /// pi1 of x, as a bimodule over `base`.
    pub kernel: Bimodule,
    pub incl: GroupHom,
    pub proj: RingHom,
}

impl CrossedExtension {
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        report.absorb("X", self.x.check());
        report.absorb("pi0", self.base.check());
        report.absorb("pi1", self.kernel.check());
        if !self.incl.is_injective() {
            report.violate("exactness at pi1", "inclusion has a kernel", "incl");
        }
        if !is_exact(&self.incl, self.x.del()) {
            report.violate("exactness at M", "im(incl) != ker(del)", "incl/del");
        }
        if !is_exact(self.x.del(), self.proj.hom()) {
            report.violate("exactness at R", "im(del) != ker(proj)", "del/proj");
        }
        if !self.proj.is_surjective() {
            report.violate("exactness at pi0", "projection is not onto", "proj");
        }
        report
    }
}

pub fn crossed_extension(x: &CrossedBimodule) -> CrossedExtension {
    let (base, proj) = x.pi0();
    let (kernel, incl) = x.pi1();
    CrossedExtension { x: x.clone(), base, kernel, incl, proj }
}

/// The crossed bimodule 0 -> R with zero module.
pub fn from_ring(r: &FinRing) -> CrossedBimodule {
    let m = Bimodule::trivial(r);
    let del = GroupHom::zero(FinAbGroup::trivial(), r.additive().clone());
    CrossedBimodule::new(r.clone(), m, del)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn corpus_passes_check() {
        for (name, x) in fixtures::corpus() {
            let report = x.check();
            assert!(report.ok(), "{name}: {report}");
            assert!(x.check_exhaustive().ok(), "{name} exhaustive");
        }
    }

    #[test]
    fn broken_right_action_is_reported() {
        let x = fixtures::ideal_in_z4_broken_right_action();
        let report = x.check();
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "differential is a right module map"));
    }

    #[test]
    fn peiffer_products() {
        // In the ideal {0,2} of Z/4: ⟨1,1⟩ = 1·∂1 = 1·2 = 0 since 2 acts
        // as 2 mod 2 = 0.
        let x = fixtures::ideal_in_z4();
        let m = x.module().additive().reduce(&[1]);
        assert_eq!(x.peiffer_product(&m, &m), x.module().additive().zero());

        // Zero differential kills every Peiffer product.
        let a = fixtures::two_torsion_zero_del();
        let m = a.module().additive().reduce(&[1]);
        assert_eq!(a.peiffer_product(&m, &m), a.module().additive().zero());
    }

    #[test]
    fn peiffer_is_associative_on_valid_corpus() {
        for (name, x) in fixtures::corpus() {
            let g = x.module().additive();
            for a in g.elements() {
                for b in g.elements() {
                    for c in g.elements() {
                        let lhs = x.peiffer_product(&x.peiffer_product(&a, &b), &c);
                        let rhs = x.peiffer_product(&a, &x.peiffer_product(&b, &c));
                        assert_eq!(lhs, rhs, "{name}: ⟨⟨{a},{b}⟩,{c}⟩");
                    }
                }
            }
        }
    }

    #[test]
    fn pi_of_zero_differential() {
        let x = fixtures::two_torsion_zero_del();
        let (pi0, proj) = x.pi0();
        assert!(pi0.check().ok());
        assert_eq!(pi0.order(), 2);
        assert!(proj.check().ok());
        let (pi1, _) = x.pi1();
        assert_eq!(pi1.additive().order(), 2);
        assert!(pi1.check().ok());
    }

    #[test]
    fn pi_of_ideal_inclusion() {
        let x = fixtures::ideal_in_z4();
        let (pi0, _) = x.pi0();
        assert_eq!(pi0.order(), 2);
        assert!(pi0.check().ok());
        let (pi1, _) = x.pi1();
        assert!(pi1.additive().is_trivial());
    }

    #[test]
    fn pi_of_identity_differential() {
        let x = fixtures::identity_del_z2();
        let (pi0, _) = x.pi0();
        assert_eq!(pi0.order(), 1);
        assert_eq!(*pi0.unit(), pi0.zero());
        let (pi1, _) = x.pi1();
        assert!(pi1.additive().is_trivial());
    }

    #[test]
    fn pi_of_dual_numbers_ideal() {
        // (x) inside Z/2[x]/(x^2): the quotient is Z/2, the kernel is
        // trivial since the inclusion is injective.
        let x = fixtures::ideal_in_dual_numbers();
        let (pi0, _) = x.pi0();
        assert_eq!(pi0.order(), 2);
        assert!(pi0.check().ok());
        let (pi1, _) = x.pi1();
        assert!(pi1.additive().is_trivial());
    }

    #[test]
    fn extensions_are_exact() {
        for (name, x) in fixtures::corpus() {
            let ext = crossed_extension(&x);
            let report = ext.check();
            assert!(report.ok(), "{name}: {report}");
        }
    }

    #[test]
    fn pfeiffer_generator_check_matches_exhaustive_on_mutations() {
        // Flip table entries of a valid structure: the generator check and
        // the exhaustive check must always agree on Pfeiffer validity.
        let x = fixtures::ideal_in_z4();
        for del_entry in 0..4 {
            let del = GroupHom::new(
                x.module().additive().clone(),
                x.ring().additive().clone(),
                vec![vec![del_entry]],
            );
            let Ok(del) = del else { continue };
            let y = CrossedBimodule::new(x.ring().clone(), x.module().clone(), del);
            let gen_ok = y.check().ok();
            let all_ok = y.check_exhaustive().ok();
            assert_eq!(gen_ok, all_ok, "del = {del_entry}");
        }
    }
}

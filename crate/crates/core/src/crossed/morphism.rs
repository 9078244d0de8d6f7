//! Strict morphisms of crossed bimodules, homotopies between them, and
//! the resulting hom-groupoid, enumerated exhaustively at desk scale.

use serde::{Deserialize, Serialize};

use super::xbm::CrossedBimodule;
use crate::algebra::{BilinearMap, Bimodule, RingHom};
use crate::error::{check_bound, Error, Result};
use crate::report::Report;
use crate::zmod::{hom_enumerate, GroupHom};

/// A strict morphism (α, β): α on rings, β on modules, commuting with
/// the differentials and α-equivariant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XbmMorphism {
    source: CrossedBimodule,
    target: CrossedBimodule,
    alpha: RingHom,
    beta: GroupHom,
}

impl XbmMorphism {
    pub fn new(
        source: CrossedBimodule,
        target: CrossedBimodule,
        alpha: RingHom,
        beta: GroupHom,
    ) -> Self {
        assert_eq!(alpha.source(), source.ring());
        assert_eq!(alpha.target(), target.ring());
        assert_eq!(beta.source(), source.module().additive());
        assert_eq!(beta.target(), target.module().additive());
        XbmMorphism { source, target, alpha, beta }
    }

    pub fn identity(x: &CrossedBimodule) -> Self {
        XbmMorphism {
            source: x.clone(),
            target: x.clone(),
            alpha: RingHom::identity(x.ring()),
            beta: GroupHom::identity(x.module().additive()),
        }
    }

    pub fn source(&self) -> &CrossedBimodule {
        &self.source
    }

    pub fn target(&self) -> &CrossedBimodule {
        &self.target
    }

    pub fn alpha(&self) -> &RingHom {
        &self.alpha
    }

    pub fn beta(&self) -> &GroupHom {
        &self.beta
    }

    pub fn check(&self) -> Report {
        let mut report = Report::new();
        report.absorb("alpha", self.alpha.check());
        let square_a = self.target.del().compose(&self.beta).expect("endpoints asserted");
        let square_b = self.alpha.hom().compose(self.source.del()).expect("endpoints asserted");
        if square_a != square_b {
            report.violate("differential square", "∂'∘β != α∘∂", "beta");
        }
        let sg = self.source.ring().additive();
        let ng = self.source.module().additive();
        for j in 0..sg.rank() {
            for l in 0..ng.rank() {
                let s = sg.generator(j);
                let n = ng.generator(l);
                let lhs = self.beta.apply(&self.source.module().act_left(&s, &n));
                let rhs = self
                    .target
                    .module()
                    .act_left(&self.alpha.apply(&s), &self.beta.apply(&n));
                if lhs != rhs {
                    report.violate(
                        "left equivariance",
                        format!("β(e_{j}·n_{l}) = {lhs} != {rhs}"),
                        "beta",
                    );
                }
                let lhs = self.beta.apply(&self.source.module().act_right(&n, &s));
                let rhs = self
                    .target
                    .module()
                    .act_right(&self.beta.apply(&n), &self.alpha.apply(&s));
                if lhs != rhs {
                    report.violate(
                        "right equivariance",
                        format!("β(n_{l}·e_{j}) = {lhs} != {rhs}"),
                        "beta",
                    );
                }
            }
        }
        report
    }

    /// self ∘ other.
    pub fn compose(&self, other: &XbmMorphism) -> Result<XbmMorphism> {
        if other.target != self.source {
            return Err(Error::EndpointMismatch("crossed morphism composition".into()));
        }
        Ok(XbmMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            alpha: self.alpha.compose(&other.alpha)?,
            beta: self.beta.compose(&other.beta)?,
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.alpha.is_bijective() && self.beta.is_bijective() && self.check().ok()
    }
}

/// A homotopy h: `from_` ⇒ `to_` between parallel strict morphisms,
/// given by an additive map h from the source ring to the target module.
/// Writing from = (α', β') and to = (α, β), the laws are
///   α' − α = −∂∘h,   β' − β = −h∘∂,
///   h(ss') = α(s)h(s') + h(s)α(s') − ∂h(s)·h(s').
#[derive(Debug, Clone, PartialEq)]
pub struct Homotopy {
    pub from_: XbmMorphism,
    pub to_: XbmMorphism,
    pub h: GroupHom,
}

impl Homotopy {
    pub fn identity(f: &XbmMorphism) -> Self {
        let h = GroupHom::zero(
            f.source().ring().additive().clone(),
            f.target().module().additive().clone(),
        );
        Homotopy { from_: f.clone(), to_: f.clone(), h }
    }

    /// The inverse homotopy −h: to ⇒ from.
    pub fn inverse(&self) -> Homotopy {
        Homotopy { from_: self.to_.clone(), to_: self.from_.clone(), h: self.h.neg() }
    }

    /// Vertical composition: self: g ⇒ f after other: e ⇒ g gives
    /// (other.h + self.h): e ⇒ f.
    pub fn compose(&self, other: &Homotopy) -> Result<Homotopy> {
        if other.to_ != self.from_ {
            return Err(Error::NotComposable("homotopy endpoints".into()));
        }
        Ok(Homotopy {
            from_: other.from_.clone(),
            to_: self.to_.clone(),
            h: self.h.add(&other.h)?,
        })
    }

    pub fn check(&self) -> Report {
        let mut report = Report::new();
        if self.from_.source() != self.to_.source() || self.from_.target() != self.to_.target() {
            report.violate("parallel morphisms", "endpoints differ", "from_/to_");
            return report;
        }
        let target = self.from_.target();
        let module = target.module();
        // α' − α = −∂∘h.
        let lhs = self.from_.alpha().hom().sub(self.to_.alpha().hom()).expect("parallel");
        let rhs = target.del().compose(&self.h).expect("shapes").neg();
        if lhs != rhs {
            report.violate("object law", "α' − α != −∂∘h", "h");
        }
        // β' − β = −h∘∂.
        let lhs = self.from_.beta().sub(self.to_.beta()).expect("parallel");
        let rhs = self.h.compose(self.from_.source().del()).expect("shapes").neg();
        if lhs != rhs {
            report.violate("module law", "β' − β != −h∘∂", "h");
        }
        // Multiplicative law, directly on generator pairs.
        let sg = self.from_.source().ring().additive();
        let alpha = self.to_.alpha();
        let mut direct_ok = true;
        for j in 0..sg.rank() {
            for l in 0..sg.rank() {
                let s = sg.generator(j);
                let s2 = sg.generator(l);
                let lhs = self.h.apply(&self.from_.source().ring().mul(&s, &s2));
                let hs = self.h.apply(&s);
                let hs2 = self.h.apply(&s2);
                let mut rhs = module.act_left(&alpha.apply(&s), &hs2);
                rhs = module.additive().add(&rhs, &module.act_right(&hs, &alpha.apply(&s2)));
                let correction = module.act_left(&target.del().apply(&hs), &hs2);
                rhs = module.additive().sub(&rhs, &correction);
                if lhs != rhs {
                    direct_ok = false;
                    report.violate(
                        "multiplicative law",
                        format!("h(e_{j}e_{l}) = {lhs} != {rhs}"),
                        "h",
                    );
                }
            }
        }
        // The same law restated: the Hochschild coboundary of h equals the
        // Peiffer pairing of h with itself. Both verdicts must agree.
        let delta = hochschild_delta(alpha, &self.h, module);
        let pairing = BilinearMap::from_fn(sg, sg, module.additive(), |s, s2| {
            target.peiffer_product(&self.h.apply(s), &self.h.apply(s2))
        });
        let coboundary_ok = delta == pairing;
        if coboundary_ok != direct_ok {
            report.violate(
                "coboundary restatement",
                "δh = ⟨h,h⟩ disagrees with the direct multiplicative check",
                "h",
            );
        }
        report
    }
}

/// δh(s, s') = α(s)h(s') − h(ss') + h(s)α(s'), as a bilinear map into the
/// module carrying the actions through α.
pub fn hochschild_delta(alpha: &RingHom, h: &GroupHom, module: &Bimodule) -> BilinearMap {
    assert_eq!(alpha.source().additive(), h.source());
    assert_eq!(module.additive(), h.target());
    assert_eq!(module.ring(), alpha.target());
    let sg = alpha.source().additive();
    BilinearMap::from_fn(sg, sg, module.additive(), |s, s2| {
        let a = module.act_left(&alpha.apply(s), &h.apply(s2));
        let b = h.apply(&alpha.source().mul(s, s2));
        let c = module.act_right(&h.apply(s), &alpha.apply(s2));
        module.additive().add(&module.additive().sub(&a, &b), &c)
    })
}

/// The ring map pi0(source) -> pi0(target) induced by a strict morphism.
pub fn induced_pi0(f: &XbmMorphism) -> RingHom {
    let (p0s, projs) = f.source().pi0();
    let (p0t, projt) = f.target().pi0();
    let cols: Vec<_> = (0..p0s.additive().rank())
        .map(|j| {
            let r = projs
                .hom()
                .solve(&p0s.additive().generator(j), u64::MAX)
                .expect("unbounded")
                .into_iter()
                .next()
                .expect("projection is surjective");
            projt.apply(&f.alpha().apply(&r))
        })
        .collect();
    let matrix = (0..p0t.additive().rank())
        .map(|i| cols.iter().map(|c| c.coords[i]).collect())
        .collect();
    RingHom::new(p0s, p0t, matrix).expect("well-defined since α maps im ∂ into im ∂")
}

/// The additive map pi1(source) -> pi1(target) induced by a strict
/// morphism; β preserves kernels since it commutes with the differentials.
pub fn induced_pi1(f: &XbmMorphism) -> GroupHom {
    let (p1s, incls) = f.source().pi1();
    let (p1t, inclt) = f.target().pi1();
    let cols: Vec<_> = (0..p1s.additive().rank())
        .map(|j| {
            let a = incls.apply(&p1s.additive().generator(j));
            inclt.preimage_unique(&f.beta().apply(&a))
        })
        .collect();
    let matrix = (0..p1t.additive().rank())
        .map(|i| cols.iter().map(|c| c.coords[i]).collect())
        .collect();
    GroupHom::new(p1s.additive().clone(), p1t.additive().clone(), matrix)
        .expect("orders divide by construction")
}

/// All strict morphisms source -> target, found by filtering the additive
/// hom sets.
pub fn enumerate_morphisms(
    source: &CrossedBimodule,
    target: &CrossedBimodule,
    bound: u64,
) -> Result<Vec<XbmMorphism>> {
    let alphas = hom_enumerate(source.ring().additive(), target.ring().additive(), bound)?;
    let betas = hom_enumerate(source.module().additive(), target.module().additive(), bound)?;
    check_bound((alphas.len() as u128).saturating_mul(betas.len() as u128), bound)?;
    let mut out = Vec::new();
    for a in &alphas {
        let Ok(alpha) = RingHom::from_group_hom(source.ring().clone(), target.ring().clone(), a.clone())
        else {
            continue;
        };
        if !alpha.check().ok() {
            continue;
        }
        for b in &betas {
            let f = XbmMorphism::new(source.clone(), target.clone(), alpha.clone(), b.clone());
            if f.check().ok() {
                out.push(f);
            }
        }
    }
    Ok(out)
}

/// All isomorphisms source -> target.
pub fn find_crossed_isos(
    source: &CrossedBimodule,
    target: &CrossedBimodule,
    bound: u64,
) -> Result<Vec<XbmMorphism>> {
    Ok(enumerate_morphisms(source, target, bound)?
        .into_iter()
        .filter(XbmMorphism::is_isomorphism)
        .collect())
}

/// The groupoid of strict morphisms and homotopies between two crossed
/// bimodules.
#[derive(Debug, Clone)]
pub struct HomGroupoid {
    pub objects: Vec<XbmMorphism>,
    pub arrows: Vec<Homotopy>,
}

pub fn hom_groupoid(
    source: &CrossedBimodule,
    target: &CrossedBimodule,
    bound: u64,
) -> Result<HomGroupoid> {
    let objects = enumerate_morphisms(source, target, bound)?;
    let hs = hom_enumerate(source.ring().additive(), target.module().additive(), bound)?;
    let pairs = (objects.len() as u128).saturating_mul(objects.len() as u128);
    check_bound(pairs.saturating_mul(hs.len() as u128), bound)?;
    let mut arrows = Vec::new();
    for f in &objects {
        for g in &objects {
            for h in &hs {
                let cand = Homotopy { from_: f.clone(), to_: g.clone(), h: h.clone() };
                if cand.check().ok() {
                    arrows.push(cand);
                }
            }
        }
    }
    Ok(HomGroupoid { objects, arrows })
}

impl HomGroupoid {
    /// Groupoid laws: zero identities, negation inverses, and closure of
    /// composable pairs under pointwise sum.
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        for f in &self.objects {
            if !Homotopy::identity(f).check().ok() {
                report.violate("identity arrow", "h = 0 fails the homotopy laws", "objects");
            }
        }
        for h in &self.arrows {
            if !self.arrows.contains(&h.inverse()) {
                report.violate("inverse arrow", "−h is not an arrow", "arrows");
            }
            for k in &self.arrows {
                if k.to_ == h.from_ {
                    let comp = h.compose(k).expect("checked composable");
                    if !self.arrows.contains(&comp) {
                        report.violate("composition closure", "h + k is not an arrow", "arrows");
                    }
                }
            }
        }
        report
    }
}

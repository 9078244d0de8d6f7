//! The butterfly between two crossed bimodules: a central ring E with
//! four structural maps whose NE-SW diagonal is an extension, plus the
//! compatibility laws tying the actions to multiplication in E.

use serde::{Deserialize, Serialize};

use crate::algebra::{FinRing, RingHom};
use crate::crossed::{CrossedBimodule, Homotopy, XbmMorphism};
use crate::error::{check_bound, Error, Result};
use crate::report::Report;
use crate::zmod::{direct_sum, hom_enumerate, is_exact, Element, GroupHom};

/// A butterfly from source (N -> S) to target (M -> R): center E,
/// kappa: N -> E, iota: M -> E, pi: E -> S, jay: E -> R.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Butterfly {
    source: CrossedBimodule,
    target: CrossedBimodule,
    center: FinRing,
    kappa: GroupHom,
    iota: GroupHom,
    pi: RingHom,
    jay: RingHom,
}

impl Butterfly {
    pub fn new(
        source: CrossedBimodule,
        target: CrossedBimodule,
        center: FinRing,
        kappa: GroupHom,
        iota: GroupHom,
        pi: RingHom,
        jay: RingHom,
    ) -> Result<Self> {
        let ok = kappa.source() == source.module().additive()
            && kappa.target() == center.additive()
            && iota.source() == target.module().additive()
            && iota.target() == center.additive()
            && pi.source() == &center
            && pi.target() == source.ring()
            && jay.source() == &center
            && jay.target() == target.ring();
        if !ok {
            return Err(Error::ShapeMismatch("butterfly structural maps".into()));
        }
        Ok(Butterfly { source, target, center, kappa, iota, pi, jay })
    }

    pub fn source(&self) -> &CrossedBimodule {
        &self.source
    }

    pub fn target(&self) -> &CrossedBimodule {
        &self.target
    }

    pub fn center(&self) -> &FinRing {
        &self.center
    }

    pub fn kappa(&self) -> &GroupHom {
        &self.kappa
    }

    pub fn iota(&self) -> &GroupHom {
        &self.iota
    }

    pub fn pi(&self) -> &RingHom {
        &self.pi
    }

    pub fn jay(&self) -> &RingHom {
        &self.jay
    }

    pub fn check(&self) -> Report {
        let mut report = Report::new();
        report.absorb("source", self.source.check());
        report.absorb("target", self.target.check());
        report.absorb("E", self.center.check());
        report.absorb("pi", self.pi.check());
        report.absorb("jay", self.jay.check());

        if !self.iota.is_injective() {
            report.violate("diagonal extension", "iota is not injective", "iota");
        }
        if !self.pi.is_surjective() {
            report.violate("diagonal extension", "pi is not surjective", "pi");
        }
        if !is_exact(&self.iota, self.pi.hom()) {
            report.violate("diagonal extension", "im(iota) != ker(pi)", "iota/pi");
        }
        if self.pi.hom().compose(&self.kappa).ok().as_ref() != Some(self.source.del()) {
            report.violate("left wing", "pi∘kappa != ∂ of the source", "kappa");
        }
        if self.jay.hom().compose(&self.iota).ok().as_ref() != Some(self.target.del()) {
            report.violate("right wing", "jay∘iota != ∂ of the target", "iota");
        }
        if !self
            .jay
            .hom()
            .compose(&self.kappa)
            .map(|c| c.is_zero())
            .unwrap_or(false)
        {
            report.violate("NW-SE complex", "jay∘kappa != 0", "kappa");
        }

        // The four action compatibilities, on generators.
        let eg = self.center.additive();
        let mg = self.target.module().additive();
        let ng = self.source.module().additive();
        for i in 0..eg.rank() {
            let e = eg.generator(i);
            for l in 0..mg.rank() {
                let m = mg.generator(l);
                let lhs = self.iota.apply(&self.target.module().act_right(&m, &self.jay.apply(&e)));
                let rhs = self.center.mul(&self.iota.apply(&m), &e);
                if lhs != rhs {
                    report.violate("action compatibility", format!("ι(m_{l}·ȷe_{i}) != ι(m_{l})e_{i}"), "iota");
                }
                let lhs = self.iota.apply(&self.target.module().act_left(&self.jay.apply(&e), &m));
                let rhs = self.center.mul(&e, &self.iota.apply(&m));
                if lhs != rhs {
                    report.violate("action compatibility", format!("ι(ȷe_{i}·m_{l}) != e_{i}ι(m_{l})"), "iota");
                }
            }
            for l in 0..ng.rank() {
                let n = ng.generator(l);
                let lhs = self.kappa.apply(&self.source.module().act_right(&n, &self.pi.apply(&e)));
                let rhs = self.center.mul(&self.kappa.apply(&n), &e);
                if lhs != rhs {
                    report.violate("action compatibility", format!("κ(n_{l}·πe_{i}) != κ(n_{l})e_{i}"), "kappa");
                }
                let lhs = self.kappa.apply(&self.source.module().act_left(&self.pi.apply(&e), &n));
                let rhs = self.center.mul(&e, &self.kappa.apply(&n));
                if lhs != rhs {
                    report.violate("action compatibility", format!("κ(πe_{i}·n_{l}) != e_{i}κ(n_{l})"), "kappa");
                }
            }
        }

        // Consequences of the above; failures here with the primary laws
        // passing indicate an implementation bug, hence the "derived" tag.
        for i in 0..eg.rank() {
            let e = eg.generator(i);
            for l in 0..mg.rank() {
                let im = self.iota.apply(&mg.generator(l));
                for x in [self.center.mul(&e, &im), self.center.mul(&im, &e)] {
                    if self.iota.solve(&x, u64::MAX).unwrap_or_default().is_empty() {
                        report.violate("derived: im iota is an ideal", format!("{x}"), "iota");
                    }
                }
            }
        }
        for j in 0..ng.rank() {
            let kn = self.kappa.apply(&ng.generator(j));
            for l in 0..mg.rank() {
                let im = self.iota.apply(&mg.generator(l));
                if self.center.mul(&kn, &im) != self.center.zero() {
                    report.violate("derived: kappa(N)iota(M) = 0", format!("κ(n_{j})ι(m_{l})"), "kappa/iota");
                }
            }
        }
        for j in 0..mg.rank() {
            for l in 0..mg.rank() {
                let m = mg.generator(j);
                let m2 = mg.generator(l);
                let lhs = self.center.mul(&self.iota.apply(&m), &self.iota.apply(&m2));
                let rhs = self.iota.apply(&self.target.peiffer_product(&m, &m2));
                if lhs != rhs {
                    report.violate("derived: iota is Peiffer-multiplicative", format!("(m_{j}, m_{l})"), "iota");
                }
            }
        }
        report
    }
}

/// The split butterfly of a strict morphism: E = S ⊕ M with product
/// (s,m)(s',m') = (ss', α(s)m' + mα(s') + m∂m').
pub fn from_morphism(f: &XbmMorphism) -> Result<Butterfly> {
    let check = f.check();
    if !check.ok() {
        return Err(Error::InvalidInput(format!("invalid morphism: {check}")));
    }
    let s = f.source().ring();
    let module = f.target().module();
    let ds = direct_sum(s.additive(), module.additive());
    let g = ds.group.clone();
    let ks = s.additive().rank();
    let km = module.additive().rank();
    let mut mult = vec![vec![g.zero(); ks + km]; ks + km];
    for a in 0..ks + km {
        for b in 0..ks + km {
            mult[a][b] = if a < ks && b < ks {
                let x = s.additive().generator(a);
                let y = s.additive().generator(b);
                ds.inj1.apply(&s.mul(&x, &y))
            } else if a < ks {
                let x = s.additive().generator(a);
                let m = module.additive().generator(b - ks);
                ds.inj2.apply(&module.act_left(&f.alpha().apply(&x), &m))
            } else if b < ks {
                let m = module.additive().generator(a - ks);
                let y = s.additive().generator(b);
                ds.inj2.apply(&module.act_right(&m, &f.alpha().apply(&y)))
            } else {
                let m = module.additive().generator(a - ks);
                let m2 = module.additive().generator(b - ks);
                ds.inj2.apply(&f.target().peiffer_product(&m, &m2))
            };
        }
    }
    let unit = ds.inj1.apply(s.unit());
    let center = FinRing::new(g.clone(), unit, mult);

    let iota = ds.inj2.clone();
    let pi = RingHom::from_group_hom(center.clone(), s.clone(), ds.proj1.clone())?;
    // κ(n) = (∂n, −β(n)).
    let ng = f.source().module().additive();
    let kappa_cols: Vec<Element> = (0..ng.rank())
        .map(|j| {
            let n = ng.generator(j);
            g.sub(
                &ds.inj1.apply(&f.source().del().apply(&n)),
                &ds.inj2.apply(&f.beta().apply(&n)),
            )
        })
        .collect();
    let kappa_matrix = (0..g.rank())
        .map(|i| kappa_cols.iter().map(|c| c.coords[i]).collect())
        .collect();
    let kappa = GroupHom::new(ng.clone(), g.clone(), kappa_matrix)?;
    // ȷ(s, m) = α(s) + ∂m.
    let r = f.target().ring();
    let jay_matrix: Vec<Vec<i64>> = (0..r.additive().rank())
        .map(|i| {
            f.alpha().hom().matrix()[i]
                .iter()
                .copied()
                .chain(f.target().del().matrix()[i].iter().copied())
                .collect()
        })
        .collect();
    let jay = RingHom::new(center.clone(), r.clone(), jay_matrix)?;
    Butterfly::new(f.source().clone(), f.target().clone(), center, kappa, iota, pi, jay)
}

/// The canonical additive section (id, 0) of pi on a split butterfly.
pub fn canonical_section(f: &XbmMorphism) -> GroupHom {
    let s = f.source().ring().additive();
    let km = f.target().module().additive().rank();
    let matrix = (0..s.rank() + km)
        .map(|i| (0..s.rank()).map(|j| i64::from(i == j)).collect())
        .collect();
    let target = {
        let ds = direct_sum(s, f.target().module().additive());
        ds.group
    };
    GroupHom::new(s.clone(), target, matrix).expect("congruences hold")
}

/// A morphism of parallel butterflies: a ring isomorphism of the centers
/// compatible with all four structural maps.
#[derive(Debug, Clone, PartialEq)]
pub struct ButterflyMorphism {
    pub from_: Butterfly,
    pub to_: Butterfly,
    pub a: RingHom,
}

impl ButterflyMorphism {
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        if self.from_.source() != self.to_.source() || self.from_.target() != self.to_.target() {
            report.violate("parallel butterflies", "endpoints differ", "from_/to_");
            return report;
        }
        report.absorb("a", self.a.check());
        if !self.a.is_bijective() {
            report.violate("isomorphism", "a is not bijective", "a");
        }
        let ok = |x: Result<GroupHom>, y: &GroupHom| x.ok().as_ref() == Some(y);
        if !ok(self.a.hom().compose(self.from_.iota()), self.to_.iota()) {
            report.violate("structure compatibility", "a∘ι != ι'", "a");
        }
        if !ok(self.a.hom().compose(self.from_.kappa()), self.to_.kappa()) {
            report.violate("structure compatibility", "a∘κ != κ'", "a");
        }
        if !ok(
            self.to_.pi().hom().compose(self.a.hom()),
            self.from_.pi().hom(),
        ) {
            report.violate("structure compatibility", "π'∘a != π", "a");
        }
        if !ok(
            self.to_.jay().hom().compose(self.a.hom()),
            self.from_.jay().hom(),
        ) {
            report.violate("structure compatibility", "ȷ'∘a != ȷ", "a");
        }
        report
    }
}

/// The butterfly morphism (s, m) -> (s, m + h(s)) between the split
/// butterflies of the two ends of a homotopy.
pub fn morphism_from_homotopy(h: &Homotopy) -> Result<ButterflyMorphism> {
    let check = h.check();
    if !check.ok() {
        return Err(Error::InvalidInput(format!("invalid homotopy: {check}")));
    }
    let from_ = from_morphism(&h.to_)?;
    let to_ = from_morphism(&h.from_)?;
    let ks = h.from_.source().ring().additive().rank();
    let km = h.from_.target().module().additive().rank();
    let hm = h.h.matrix();
    let mut matrix = vec![vec![0i64; ks + km]; ks + km];
    for (i, row) in matrix.iter_mut().enumerate() {
        row[i] = 1;
    }
    for i in 0..km {
        for j in 0..ks {
            matrix[ks + i][j] = hm[i][j];
        }
    }
    let a = RingHom::new(from_.center().clone(), to_.center().clone(), matrix)?;
    Ok(ButterflyMorphism { from_, to_, a })
}

/// All butterfly isomorphisms b -> b2, found by per-generator constraint
/// propagation on the centers followed by the full compatibility check.
pub fn find_isomorphisms(b: &Butterfly, b2: &Butterfly, bound: u64) -> Result<Vec<ButterflyMorphism>> {
    if b.source() != b2.source() || b.target() != b2.target() {
        return Err(Error::EndpointMismatch("butterfly isomorphism search".into()));
    }
    if b.center().order() != b2.center().order() {
        return Ok(vec![]);
    }
    let eg = b.center().additive();
    let eg2 = b2.center().additive();
    let mut per_gen: Vec<Vec<Element>> = Vec::with_capacity(eg.rank());
    let mut total: u128 = 1;
    for j in 0..eg.rank() {
        let e = eg.generator(j);
        let n = eg.moduli()[j];
        let want_pi = b.pi().apply(&e);
        let want_jay = b.jay().apply(&e);
        let candidates: Vec<Element> = eg2
            .elements()
            .filter(|y| {
                eg2.scalar_mul(n, y) == eg2.zero()
                    && b2.pi().apply(y) == want_pi
                    && b2.jay().apply(y) == want_jay
            })
            .collect();
        if candidates.is_empty() {
            return Ok(vec![]);
        }
        total = total.saturating_mul(candidates.len() as u128);
        check_bound(total, bound)?;
        per_gen.push(candidates);
    }
    let mut out = Vec::new();
    let mut stack = vec![0usize; eg.rank()];
    loop {
        let cols: Vec<&Element> = stack.iter().zip(&per_gen).map(|(&i, c)| &c[i]).collect();
        let matrix: Vec<Vec<i64>> = (0..eg2.rank())
            .map(|r| cols.iter().map(|c| c.coords[r]).collect())
            .collect();
        if let Ok(a) = RingHom::new(b.center().clone(), b2.center().clone(), matrix) {
            let cand = ButterflyMorphism { from_: b.clone(), to_: b2.clone(), a };
            if cand.check().ok() {
                out.push(cand);
            }
        }
        // Next multi-index.
        let mut k = 0;
        loop {
            if k == stack.len() {
                return Ok(out);
            }
            stack[k] += 1;
            if stack[k] < per_gen[k].len() {
                break;
            }
            stack[k] = 0;
            k += 1;
        }
    }
}

/// Enumerate ring sections of pi and, if one exists, reconstruct the
/// strict morphism it encodes: α = ȷ∘σ and β = ι⁻¹∘(σ∘∂ − κ). Also
/// exhibits the isomorphism from the split butterfly of the recovered
/// morphism back onto the input.
pub fn detect_strong_splitting(
    b: &Butterfly,
    bound: u64,
) -> Result<Option<(RingHom, XbmMorphism, ButterflyMorphism)>> {
    let s = b.source().ring();
    let sections = hom_enumerate(s.additive(), b.center().additive(), bound)?;
    for sigma_hom in sections {
        let Ok(sigma) = RingHom::from_group_hom(s.clone(), b.center().clone(), sigma_hom.clone())
        else {
            continue;
        };
        if !sigma.check().ok() {
            continue;
        }
        if b.pi().compose(&sigma).ok() != Some(RingHom::identity(s)) {
            continue;
        }
        let alpha = b.jay().compose(&sigma)?;
        let ng = b.source().module().additive();
        let beta_cols: Vec<Element> = (0..ng.rank())
            .map(|j| {
                let n = ng.generator(j);
                let v = b.center().sub(
                    &sigma.apply(&b.source().del().apply(&n)),
                    &b.kappa().apply(&n),
                );
                b.iota().preimage_unique(&v)
            })
            .collect();
        let mg = b.target().module().additive();
        let beta_matrix = (0..mg.rank())
            .map(|i| beta_cols.iter().map(|c| c.coords[i]).collect())
            .collect();
        let beta = GroupHom::new(ng.clone(), mg.clone(), beta_matrix)?;
        let recovered = XbmMorphism::new(b.source().clone(), b.target().clone(), alpha, beta);
        if !recovered.check().ok() {
            continue;
        }
        let split = from_morphism(&recovered)?;
        // (s, m) -> σ(s) + ι(m).
        let ks = s.additive().rank();
        let km = mg.rank();
        let a_matrix: Vec<Vec<i64>> = (0..b.center().additive().rank())
            .map(|i| {
                (0..ks + km)
                    .map(|j| {
                        if j < ks {
                            sigma.hom().matrix()[i][j]
                        } else {
                            b.iota().matrix()[i][j - ks]
                        }
                    })
                    .collect()
            })
            .collect();
        let a = RingHom::new(split.center().clone(), b.center().clone(), a_matrix)?;
        let iso = ButterflyMorphism { from_: split, to_: b.clone(), a };
        if iso.check().ok() {
            return Ok(Some((sigma, recovered, iso)));
        }
    }
    Ok(None)
}

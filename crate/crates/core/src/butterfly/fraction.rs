//! The fraction of a butterfly: the crossed bimodule N ⊕_S E over E with
//! its two wings, and the executable quasi-isomorphism check on the left
//! wing.

use super::core::Butterfly;
use crate::algebra::{Bimodule, RingHom};
use crate::crossed::{from_ring, induced_pi0, induced_pi1, CrossedBimodule, XbmMorphism};
use crate::error::Result;
use crate::zmod::{pullback, Element, GroupHom};

#[derive(Debug, Clone)]
pub struct Fraction {
    /// N ⊕_S E -> E as a crossed bimodule over the center.
    pub efrac: CrossedBimodule,
    /// (n, e) -> n over pi.
    pub left: XbmMorphism,
    /// (n, e) -> ι⁻¹(e − κn) over jay.
    pub right: XbmMorphism,
    /// Whether the left wing induces isomorphisms on pi0 and pi1.
    pub qiso: bool,
}

/// Butterfly as a span of strict morphisms: both wings out of the
/// fraction, with the left wing a quasi-isomorphism.
pub fn fraction(b: &Butterfly) -> Result<Fraction> {
    let e = b.center();
    // P = {(n, e) : ∂n = π(e)} inside N ⊕ E.
    let pb = pullback(b.source().del(), b.pi().hom())?;
    let p = pb.group.clone();
    let pair_preimage = |n: &Element, ee: &Element| -> Element {
        let mut coords = n.coords.clone();
        coords.extend_from_slice(&ee.coords);
        let amb = pb.incl.target().reduce(&coords);
        pb.incl.preimage_unique(&amb)
    };
    let eg = e.additive();
    // e0·(n, e) = (π(e0)n, e0e) and (n, e)·e1 = (nπ(e1), ee1).
    let left = (0..eg.rank())
        .map(|j| {
            let e0 = eg.generator(j);
            (0..p.rank())
                .map(|l| {
                    let n = pb.p1.apply(&p.generator(l));
                    let ee = pb.p2.apply(&p.generator(l));
                    pair_preimage(
                        &b.source().module().act_left(&b.pi().apply(&e0), &n),
                        &e.mul(&e0, &ee),
                    )
                })
                .collect()
        })
        .collect();
    let right = (0..p.rank())
        .map(|l| {
            let n = pb.p1.apply(&p.generator(l));
            let ee = pb.p2.apply(&p.generator(l));
            (0..eg.rank())
                .map(|j| {
                    let e1 = eg.generator(j);
                    pair_preimage(
                        &b.source().module().act_right(&n, &b.pi().apply(&e1)),
                        &e.mul(&ee, &e1),
                    )
                })
                .collect()
        })
        .collect();
    let module = Bimodule::new(e.clone(), p.clone(), left, right);
    let efrac = CrossedBimodule::new(e.clone(), module, pb.p2.clone());

    let left_wing = XbmMorphism::new(efrac.clone(), b.source().clone(), b.pi().clone(), pb.p1.clone());
    // β(n, e) = ι⁻¹(e − κn).
    let mg = b.target().module().additive();
    let beta_cols: Vec<Element> = (0..p.rank())
        .map(|l| {
            let n = pb.p1.apply(&p.generator(l));
            let ee = pb.p2.apply(&p.generator(l));
            b.iota().preimage_unique(&e.sub(&ee, &b.kappa().apply(&n)))
        })
        .collect();
    let beta_matrix = (0..mg.rank())
        .map(|i| beta_cols.iter().map(|c| c.coords[i]).collect())
        .collect();
    let beta = GroupHom::new(p, mg.clone(), beta_matrix)?;
    let right_wing = XbmMorphism::new(efrac.clone(), b.target().clone(), b.jay().clone(), beta);

    let qiso = left_wing.check().ok()
        && induced_pi0(&left_wing).is_bijective()
        && induced_pi1(&left_wing).is_bijective();
    Ok(Fraction { efrac, left: left_wing, right: right_wing, qiso })
}

/// The maps ξ: pi0(source) -> pi0(target) and η: pi1(source) -> pi1(target)
/// induced by a butterfly, read off the span by inverting the left wing's
/// isomorphisms.
pub fn induced_pi_maps(b: &Butterfly) -> Result<(RingHom, GroupHom)> {
    let f = fraction(b)?;
    let xi_left = induced_pi0(&f.left);
    let eta_left = induced_pi1(&f.left);
    let xi = induced_pi0(&f.right).compose(&xi_left.invert()?)?;
    let eta = induced_pi1(&f.right).compose(&eta_left.invert()?)?;
    Ok((xi, eta))
}

/// The butterfly of an algebra extension 0 -> M -> E -> S -> 0: source
/// 0 -> S, target M -> E with the restricted actions, κ = 0, ȷ = id.
pub fn from_extension(ext: &crate::algebra::AlgExtension) -> Result<Butterfly> {
    let source = from_ring(ext.base());
    let e = ext.middle();
    let mg = ext.module();
    let left = (0..e.additive().rank())
        .map(|j| {
            (0..mg.rank())
                .map(|l| {
                    let v = e.mul(
                        &e.additive().generator(j),
                        &ext.incl().apply(&mg.generator(l)),
                    );
                    ext.incl().preimage_unique(&v)
                })
                .collect()
        })
        .collect();
    let right = (0..mg.rank())
        .map(|l| {
            (0..e.additive().rank())
                .map(|j| {
                    let v = e.mul(
                        &ext.incl().apply(&mg.generator(l)),
                        &e.additive().generator(j),
                    );
                    ext.incl().preimage_unique(&v)
                })
                .collect()
        })
        .collect();
    let module = Bimodule::new(e.clone(), mg.clone(), left, right);
    let target = CrossedBimodule::new(e.clone(), module, ext.incl().clone());
    let kappa = GroupHom::zero(source.module().additive().clone(), e.additive().clone());
    Butterfly::new(
        source,
        target,
        e.clone(),
        kappa,
        ext.incl().clone(),
        ext.proj().clone(),
        RingHom::identity(e),
    )
}

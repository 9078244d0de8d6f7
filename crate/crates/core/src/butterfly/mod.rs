//! Bimodule butterflies: weak morphisms of crossed bimodules presented
//! by a central ring with four structural maps.

pub mod compose;
pub mod core;
pub mod fraction;

pub use compose::{compose, compose_antidiagonal};
pub use core::{
    detect_strong_splitting, find_isomorphisms, from_morphism, morphism_from_homotopy, Butterfly,
    ButterflyMorphism,
};
pub use fraction::{fraction, from_extension, induced_pi_maps, Fraction};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{mod4_extension, AlgExtension, Bimodule, RingHom};
    use crate::crossed::{hom_groupoid, XbmMorphism};
    use crate::error::DEFAULT_BOUND;
    use crate::fixtures;
    use crate::zmod::GroupHom;

    fn split_id(x: &crate::crossed::CrossedBimodule) -> Butterfly {
        from_morphism(&XbmMorphism::identity(x)).unwrap()
    }

    fn reduction_morphism() -> XbmMorphism {
        let b = fixtures::ideal_in_z4();
        let a = fixtures::two_torsion_zero_del();
        let alpha = RingHom::new(b.ring().clone(), a.ring().clone(), vec![vec![1]]).unwrap();
        let beta = GroupHom::identity(b.module().additive());
        XbmMorphism::new(b, a, alpha, beta)
    }

    #[test]
    fn split_butterflies_pass_check() {
        for (name, x) in fixtures::corpus() {
            let b = split_id(&x);
            let report = b.check();
            assert!(report.ok(), "{name}: {report}");
        }
        let b = from_morphism(&reduction_morphism()).unwrap();
        assert!(b.check().ok());
    }

    #[test]
    fn split_butterfly_shape_on_the_ideal_in_z4() {
        let x = fixtures::ideal_in_z4();
        let b = split_id(&x);
        assert_eq!(b.center().order(), 8);
        assert_eq!(b.center().additive().moduli(), &[4, 2]);
        // ȷ(s, m) = s + 2m and κ(n) = (2n, -n) = (2n, n) mod 2.
        let e = b.center().additive().reduce(&[1, 1]);
        assert_eq!(b.jay().apply(&e), x.ring().additive().reduce(&[3]));
        let n = x.module().additive().reduce(&[1]);
        assert_eq!(b.kappa().apply(&n), b.center().additive().reduce(&[2, 1]));
        // The m∂m' term vanishes: (0,1)(0,1) = (0, 1·2·1) = 0.
        let m = b.center().additive().reduce(&[0, 1]);
        assert_eq!(b.center().mul(&m, &m), b.center().zero());
    }

    #[test]
    fn corrupting_jay_kappa_is_reported() {
        let x = fixtures::ideal_in_z4();
        let b = split_id(&x);
        // Replace κ by κ + ι (shifting the module leg) so ȷ∘κ picks up ∂.
        let bad_kappa = b.kappa().add(b.iota()).unwrap();
        let bad = Butterfly::new(
            b.source().clone(),
            b.target().clone(),
            b.center().clone(),
            bad_kappa,
            b.iota().clone(),
            b.pi().clone(),
            b.jay().clone(),
        )
        .unwrap();
        let report = bad.check();
        assert!(report.violations.iter().any(|v| v.law == "NW-SE complex"));
    }

    #[test]
    fn homotopies_become_butterfly_morphisms() {
        for (name, x) in fixtures::corpus() {
            let g = hom_groupoid(&x, &x, DEFAULT_BOUND).unwrap();
            for h in &g.arrows {
                let psi = morphism_from_homotopy(h).unwrap();
                let report = psi.check();
                assert!(report.ok(), "{name}: {report}");
            }
        }
    }

    #[test]
    fn zero_homotopy_gives_the_identity_morphism() {
        let x = fixtures::ideal_in_z4();
        let id = XbmMorphism::identity(&x);
        let h = crate::crossed::Homotopy::identity(&id);
        let psi = morphism_from_homotopy(&h).unwrap();
        assert_eq!(psi.a, RingHom::identity(psi.from_.center()));
    }

    #[test]
    fn invalid_homotopy_is_rejected() {
        let x = fixtures::two_torsion_zero_del();
        let id = XbmMorphism::identity(&x);
        let h = crate::crossed::Homotopy {
            from_: id.clone(),
            to_: id,
            h: GroupHom::identity(x.ring().additive()),
        };
        assert!(morphism_from_homotopy(&h).is_err());
    }

    #[test]
    fn strong_splitting_round_trips_morphisms() {
        for f in [XbmMorphism::identity(&fixtures::ideal_in_z4()), reduction_morphism()] {
            let b = from_morphism(&f).unwrap();
            let (sigma, recovered, iso) =
                detect_strong_splitting(&b, DEFAULT_BOUND).unwrap().expect("split butterfly");
            assert_eq!(recovered, f);
            assert!(iso.check().ok());
            assert!(b.pi().compose(&sigma).unwrap() == RingHom::identity(f.source().ring()));
        }
    }

    #[test]
    fn non_split_extension_has_no_strong_splitting() {
        let b = from_extension(&mod4_extension()).unwrap();
        assert!(b.check().ok());
        assert!(detect_strong_splitting(&b, DEFAULT_BOUND).unwrap().is_none());
    }

    #[test]
    fn trivial_extension_butterfly_is_strongly_split() {
        let s = crate::algebra::FinRing::cyclic(2);
        let m = Bimodule::regular(&s);
        let ext = AlgExtension::trivial(&s, m.additive(), m.left_table(), m.right_table());
        let b = from_extension(&ext).unwrap();
        assert!(b.check().ok());
        assert!(detect_strong_splitting(&b, DEFAULT_BOUND).unwrap().is_some());
    }

    #[test]
    fn fractions_are_quasi_isomorphisms() {
        let mut butterflies = vec![from_extension(&mod4_extension()).unwrap()];
        for (_, x) in fixtures::corpus() {
            butterflies.push(split_id(&x));
        }
        butterflies.push(from_morphism(&reduction_morphism()).unwrap());
        for b in &butterflies {
            let f = fraction(b).unwrap();
            assert!(f.efrac.check().ok());
            assert!(f.left.check().ok());
            assert!(f.right.check().ok());
            assert!(f.qiso);
        }
    }

    #[test]
    fn fraction_of_split_id_on_the_ideal() {
        let x = fixtures::ideal_in_z4();
        let b = split_id(&x);
        let f = fraction(&b).unwrap();
        let (p0, _) = f.efrac.pi0();
        assert_eq!(p0.order(), 2);
        assert!(f.efrac.pi1().0.additive().is_trivial());
    }

    #[test]
    fn induced_pi_maps_of_split_butterflies() {
        let x = fixtures::ideal_in_z4();
        let (xi, eta) = induced_pi_maps(&split_id(&x)).unwrap();
        assert!(xi.is_bijective());
        assert!(eta.is_bijective());

        let (xi, eta) = induced_pi_maps(&from_morphism(&reduction_morphism()).unwrap()).unwrap();
        // pi0: Z/2 -> Z/2 is the identity; pi1: 0 -> Z/2 is zero.
        assert!(xi.is_bijective());
        assert_eq!(eta.source().order(), 1);
        assert_eq!(eta.target().order(), 2);
    }

    #[test]
    fn identity_is_among_self_isomorphisms() {
        for (name, x) in fixtures::corpus() {
            let b = split_id(&x);
            let isos = find_isomorphisms(&b, &b, DEFAULT_BOUND).unwrap();
            assert!(
                isos.iter().any(|i| i.a == RingHom::identity(b.center())),
                "{name}"
            );
        }
    }

    #[test]
    fn homotopic_morphisms_have_isomorphic_butterflies() {
        for (name, x) in fixtures::corpus() {
            let g = hom_groupoid(&x, &x, DEFAULT_BOUND).unwrap();
            for h in &g.arrows {
                let b1 = from_morphism(&h.to_).unwrap();
                let b2 = from_morphism(&h.from_).unwrap();
                let isos = find_isomorphisms(&b1, &b2, DEFAULT_BOUND).unwrap();
                let psi = morphism_from_homotopy(h).unwrap();
                assert!(isos.contains(&psi), "{name}");
            }
        }
    }

    #[test]
    fn composition_with_identity_is_isomorphic() {
        for (name, x) in fixtures::corpus() {
            let id = split_id(&x);
            let b = split_id(&x);
            for composed in [compose(&id, &b).unwrap(), compose(&b, &id).unwrap()] {
                assert!(composed.check().ok(), "{name}");
                let isos = find_isomorphisms(&composed, &b, DEFAULT_BOUND).unwrap();
                assert!(!isos.is_empty(), "{name}: no isomorphism to the original");
            }
        }
    }

    #[test]
    fn composition_matches_morphism_composition() {
        // g: ideal_in_z4 -> two_torsion (reduction), f = id on the target.
        let g = reduction_morphism();
        let f = XbmMorphism::identity(g.target());
        let bg = from_morphism(&g).unwrap();
        let bf = from_morphism(&f).unwrap();
        let composed = compose(&bg, &bf).unwrap();
        assert!(composed.check().ok());
        let direct = from_morphism(&f.compose(&g).unwrap()).unwrap();
        let isos = find_isomorphisms(&composed, &direct, DEFAULT_BOUND).unwrap();
        assert!(!isos.is_empty());
    }

    #[test]
    fn antidiagonal_sign_does_not_matter() {
        let g = reduction_morphism();
        let bg = from_morphism(&g).unwrap();
        let bf = split_id(g.target());
        let plus = compose(&bg, &bf).unwrap();
        let minus = compose_antidiagonal(&bg, &bf).unwrap();
        assert!(minus.check().ok());
        let isos = find_isomorphisms(&plus, &minus, DEFAULT_BOUND).unwrap();
        assert!(!isos.is_empty());
    }

    #[test]
    fn associativity_up_to_isomorphism() {
        let g = reduction_morphism();
        let b1 = split_id(g.source());
        let b2 = from_morphism(&g).unwrap();
        let b3 = split_id(g.target());
        let left = compose(&compose(&b1, &b2).unwrap(), &b3).unwrap();
        let right = compose(&b1, &compose(&b2, &b3).unwrap()).unwrap();
        assert!(left.check().ok());
        assert!(right.check().ok());
        let isos = find_isomorphisms(&left, &right, DEFAULT_BOUND).unwrap();
        assert!(!isos.is_empty());
    }

    #[test]
    fn extension_butterflies_pass_check() {
        let exts = vec![mod4_extension()];
        for ext in exts {
            let b = from_extension(&ext).unwrap();
            assert!(b.check().ok());
            let f = fraction(&b).unwrap();
            assert!(f.qiso);
        }
    }

    #[test]
    fn centers_of_different_order_have_no_isomorphisms() {
        let x = fixtures::ideal_in_z4();
        let b = split_id(&x);
        // Composing with itself changes nothing structurally, so compare
        // against a butterfly with a different center: the fraction of b
        // composed differently is overkill; instead pad the center by a
        // trivial extension check via order comparison.
        let y = fixtures::two_torsion_zero_del();
        let c = split_id(&y);
        assert_ne!(b.center().order(), c.center().order());
        // Different endpoints: the search refuses outright.
        assert!(find_isomorphisms(&b, &c, DEFAULT_BOUND).is_err());
    }
}

//! Composition of butterflies: fibered product of the centers over the
//! middle ring, quotiented by the antidiagonal image of the middle
//! module.

use super::core::Butterfly;
use crate::algebra::{ideal_generated, quotient_ring, subring, product_ring, RingHom};
use crate::error::{Error, Result};
use crate::zmod::{pullback, quotient, Element, GroupHom};

/// compose(f: T -> S, b: S -> R) -> T -> R. The centers F, E combine to
/// (F ⊕_S E)/im(ι', κ) with the structural maps induced componentwise.
pub fn compose(f: &Butterfly, b: &Butterfly) -> Result<Butterfly> {
    if f.target() != b.source() {
        return Err(Error::MiddleMismatch(
            "the target of the first butterfly must be the source of the second".into(),
        ));
    }
    let middle = f.target();
    // P = {(x, e) : ȷ'(x) = π(e)} as a subring of F x E.
    let (prod, _) = product_ring(f.center(), b.center());
    let pb = pullback(f.jay().hom(), b.pi().hom())?;
    let p = pb.group.clone();
    let pair = |x: &Element, e: &Element| -> Element {
        let mut coords = x.coords.clone();
        coords.extend_from_slice(&e.coords);
        prod.additive().reduce(&coords)
    };
    let incl_p = pb.incl.clone();
    let p_ring = subring(&prod, &incl_p);

    // The antidiagonal copy of the middle module: n -> (ι'(n), κ(n)).
    let ng = middle.module().additive();
    let diag_gens: Vec<Element> = (0..ng.rank())
        .map(|j| {
            let n = ng.generator(j);
            incl_p.preimage_unique(&pair(&f.iota().apply(&n), &b.kappa().apply(&n)))
        })
        .collect();
    // It must already be a two-sided ideal of P.
    let (diag_sub, _) = crate::zmod::subgroup(&p, &diag_gens);
    let (ideal, _) = ideal_generated(&p_ring, &diag_gens);
    if ideal.order() != diag_sub.order() {
        return Err(Error::InvalidInput(
            "the antidiagonal image is not an ideal of the fibered product".into(),
        ));
    }
    let (q, proj) = quotient(&p, &diag_gens);
    let center = quotient_ring(&p_ring, &proj);

    // Structural maps through P and the quotient.
    let to_center = |x: &Element, e: &Element| -> Element {
        proj.apply(&incl_p.preimage_unique(&pair(x, e)))
    };
    let mg = b.target().module().additive();
    let iota_cols: Vec<Element> = (0..mg.rank())
        .map(|l| to_center(&f.center().zero(), &b.iota().apply(&mg.generator(l))))
        .collect();
    let iota = cols_to_hom(mg, &q, iota_cols)?;
    let tg = f.source().module().additive();
    let kappa_cols: Vec<Element> = (0..tg.rank())
        .map(|l| to_center(&f.kappa().apply(&tg.generator(l)), &b.center().zero()))
        .collect();
    let kappa = cols_to_hom(tg, &q, kappa_cols)?;

    // π''[x, e] = π'(x) and ȷ''[x, e] = ȷ(e); both kill the antidiagonal.
    let lift = |c: &Element| -> Element {
        proj.solve(c, u64::MAX)
            .expect("unbounded")
            .into_iter()
            .next()
            .expect("projection is surjective")
    };
    let sg = f.source().ring().additive();
    let pi_cols: Vec<Element> = (0..q.rank())
        .map(|l| {
            let in_p = lift(&q.generator(l));
            let x = project_first(&incl_p.apply(&in_p), f.center().additive().rank());
            f.pi().apply(&f.center().additive().reduce(&x))
        })
        .collect();
    let pi = RingHom::from_group_hom(
        center.clone(),
        f.source().ring().clone(),
        cols_to_hom(&q, sg, pi_cols)?,
    )?;
    let rg = b.target().ring().additive();
    let jay_cols: Vec<Element> = (0..q.rank())
        .map(|l| {
            let in_p = lift(&q.generator(l));
            let e = project_second(&incl_p.apply(&in_p), f.center().additive().rank());
            b.jay().apply(&b.center().additive().reduce(&e))
        })
        .collect();
    let jay = RingHom::from_group_hom(
        center.clone(),
        b.target().ring().clone(),
        cols_to_hom(&q, rg, jay_cols)?,
    )?;
    Butterfly::new(f.source().clone(), b.target().clone(), center, kappa, iota, pi, jay)
}

fn cols_to_hom(
    source: &crate::zmod::FinAbGroup,
    target: &crate::zmod::FinAbGroup,
    cols: Vec<Element>,
) -> Result<GroupHom> {
    let matrix = (0..target.rank())
        .map(|i| cols.iter().map(|c| c.coords[i]).collect())
        .collect();
    GroupHom::new(source.clone(), target.clone(), matrix)
}

fn project_first(v: &Element, k: usize) -> Vec<i64> {
    v.coords[..k].to_vec()
}

fn project_second(v: &Element, k: usize) -> Vec<i64> {
    v.coords[k..].to_vec()
}

/// The variant quotient along n -> (ι'(n), −κ(n)); composition must not
/// depend on the sign choice.
pub fn compose_antidiagonal(f: &Butterfly, b: &Butterfly) -> Result<Butterfly> {
    let flipped = Butterfly::new(
        b.source().clone(),
        b.target().clone(),
        b.center().clone(),
        b.kappa().neg(),
        b.iota().clone(),
        b.pi().clone(),
        b.jay().clone(),
    )?;
    // Only the embedding used for the quotient changes: the composite's
    // own structural maps do not involve κ of the second factor.
    compose(f, &flipped)
}

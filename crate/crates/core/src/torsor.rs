//! Finite torsors over a crossed bimodule at constant coefficients: a
//! free transitive M-set with an equivariant trivialization into R,
//! their sum and product, and the action of a butterfly on them.

use std::collections::BTreeMap;

use crate::butterfly::Butterfly;
use crate::crossed::CrossedBimodule;
use crate::error::{Error, Result};
use crate::report::Report;
use crate::zmod::Element;

/// A torsor: points indexed 0..|M|, the translation action table, and
/// the trivialization s into R with s(x + m) = s(x) + ∂m.
#[derive(Debug, Clone, PartialEq)]
pub struct Torsor {
    x: CrossedBimodule,
    /// action[k][p] = p translated by the k-th module element.
    action: Vec<Vec<usize>>,
    s: Vec<Element>,
}

/// A map of torsors over the same crossed bimodule: point p of the
/// source goes to point map[p] of the target.
#[derive(Debug, Clone, PartialEq)]
pub struct TorsorMorphism {
    pub map: Vec<usize>,
}

impl Torsor {
    /// Build a torsor from raw tables, validating shapes only; run
    /// check() for the torsor laws.
    pub fn from_parts(x: CrossedBimodule, action: Vec<Vec<usize>>, s: Vec<Element>) -> Result<Self> {
        let order = x.module().additive().order() as usize;
        if s.len() != order
            || action.len() != order
            || action.iter().any(|row| row.len() != order || row.iter().any(|&q| q >= order))
        {
            return Err(Error::ShapeMismatch("torsor tables do not match |M|".into()));
        }
        if s.iter().any(|v| !x.ring().additive().contains(v)) {
            return Err(Error::ShapeMismatch("trivialization values escape R".into()));
        }
        Ok(Torsor { x, action, s })
    }

    pub fn x(&self) -> &CrossedBimodule {
        &self.x
    }

    pub fn action_table(&self) -> &Vec<Vec<usize>> {
        &self.action
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn trivialization(&self) -> &[Element] {
        &self.s
    }

    pub fn translate(&self, m: &Element, p: usize) -> usize {
        let k = self.x.module().additive().index_of(m) as usize;
        self.action[k][p]
    }

    pub fn check(&self) -> Report {
        let mut report = Report::new();
        let mg = self.x.module().additive();
        let order = mg.order() as usize;
        if self.s.len() != order || self.action.len() != order {
            report.violate("carrier size", "|carrier| != |M|", "carrier");
            return report;
        }
        let zero_idx = mg.index_of(&mg.zero()) as usize;
        for p in 0..order {
            if self.action[zero_idx][p] != p {
                report.violate("action unit", format!("0 moves point {p}"), "action");
            }
        }
        for (k, row) in self.action.iter().enumerate() {
            let m = mg.element_at(k as u64);
            let mut seen = vec![false; order];
            for (p, &q) in row.iter().enumerate() {
                if q >= order || seen[q] {
                    report.violate("freeness", format!("translation by {m} is not a bijection"), "action");
                    break;
                }
                seen[q] = true;
                // Associativity of the action and equivariance of s.
                if self.s[q] != self.x.ring().add(&self.s[p], &self.x.del().apply(&m)) {
                    report.violate(
                        "equivariance",
                        format!("s({p} + {m}) != s({p}) + ∂{m}"),
                        "s",
                    );
                }
                for (k2, row2) in self.action.iter().enumerate() {
                    let m2 = mg.element_at(k2 as u64);
                    let both = mg.add(&m, &m2);
                    let kb = mg.index_of(&both) as usize;
                    if row2[q] != self.action[kb][p] {
                        report.violate(
                            "action associativity",
                            format!("({p} + {m}) + {m2}"),
                            "action",
                        );
                    }
                }
            }
        }
        // Transitivity: the orbit of point 0 is everything.
        if order > 0 {
            let mut reached = vec![false; order];
            for row in &self.action {
                reached[row[0]] = true;
            }
            if reached.iter().any(|r| !r) {
                report.violate("transitivity", "the action has several orbits", "action");
            }
        }
        report
    }
}

/// The trivial torsor on r: carrier = M, s(m) = r + ∂m.
pub fn trivial_torsor(x: &CrossedBimodule, r: &Element) -> Torsor {
    let mg = x.module().additive();
    let order = mg.order() as usize;
    let action = (0..order)
        .map(|k| {
            let m = mg.element_at(k as u64);
            (0..order)
                .map(|p| mg.index_of(&mg.add(&mg.element_at(p as u64), &m)) as usize)
                .collect()
        })
        .collect();
    let s = (0..order)
        .map(|p| x.ring().add(r, &x.del().apply(&mg.element_at(p as u64))))
        .collect();
    Torsor { x: x.clone(), action, s }
}

/// Orbit decomposition of a finite set under a list of permutations,
/// with lexicographically least representatives.
fn orbits(size: usize, gens: &[Vec<usize>]) -> (Vec<usize>, Vec<usize>) {
    let mut class_of = vec![usize::MAX; size];
    let mut reps = Vec::new();
    for start in 0..size {
        if class_of[start] != usize::MAX {
            continue;
        }
        let class = reps.len();
        reps.push(start);
        let mut stack = vec![start];
        class_of[start] = class;
        while let Some(p) = stack.pop() {
            for g in gens {
                let q = g[p];
                if class_of[q] == usize::MAX {
                    class_of[q] = class;
                    stack.push(q);
                }
            }
        }
    }
    (reps, class_of)
}

fn expect_same_parent(t: &Torsor, t2: &Torsor) -> Result<()> {
    if t.x != t2.x {
        return Err(Error::MismatchedParent("torsors live over different structures".into()));
    }
    Ok(())
}

/// Contraction (T x T')/antidiagonal with trivialization s + s'.
pub fn sum(t: &Torsor, t2: &Torsor) -> Result<Torsor> {
    expect_same_parent(t, t2)?;
    let mg = t.x.module().additive();
    let n1 = t.len();
    let n2 = t2.len();
    let size = n1 * n2;
    let idx = |p: usize, q: usize| p * n2 + q;
    // (p, q) ~ (p + m, q - m).
    let gens: Vec<Vec<usize>> = (0..mg.order())
        .map(|k| {
            let m = mg.element_at(k);
            let mneg = mg.neg(&m);
            (0..size)
                .map(|i| idx(t.translate(&m, i / n2), t2.translate(&mneg, i % n2)))
                .collect()
        })
        .collect();
    let (reps, class_of) = orbits(size, &gens);
    let action = (0..mg.order() as usize)
        .map(|k| {
            let m = mg.element_at(k as u64);
            reps.iter()
                .map(|&i| class_of[idx(i / n2, t2.translate(&m, i % n2))])
                .collect()
        })
        .collect();
    let s = reps
        .iter()
        .map(|&i| t.x.ring().add(&t.s[i / n2], &t2.s[i % n2]))
        .collect();
    Ok(Torsor { x: t.x.clone(), action, s })
}

/// Monoidal product (T x T' x M)/(M x M) under
/// (e, e', m0) -> (e+m, e'+m', m0 + s(e)m' + m s'(e') + m ∂m'),
/// with trivialization s(e)s'(e') + ∂m0.
pub fn product(t: &Torsor, t2: &Torsor) -> Result<Torsor> {
    expect_same_parent(t, t2)?;
    let x = &t.x;
    let mg = x.module().additive();
    let om = mg.order() as usize;
    let n1 = t.len();
    let n2 = t2.len();
    let size = n1 * n2 * om;
    let idx = |e: usize, e2: usize, m0: usize| (e * n2 + e2) * om + m0;
    let unpack = |i: usize| (i / (om * n2), (i / om) % n2, i % om);
    let mut gens: Vec<Vec<usize>> = Vec::new();
    for k in 0..om {
        let m = mg.element_at(k as u64);
        for k2 in 0..om {
            let m2 = mg.element_at(k2 as u64);
            let table = (0..size)
                .map(|i| {
                    let (e, e2, m0) = unpack(i);
                    let mut shift = x.module().act_left(&t.s[e], &m2);
                    shift = mg.add(&shift, &x.module().act_right(&m, &t2.s[e2]));
                    shift = mg.add(&shift, &x.peiffer_product(&m, &m2));
                    let m0_new = mg.add(&mg.add(&mg.element_at(m0 as u64), &shift), &mg.zero());
                    idx(
                        t.translate(&m, e),
                        t2.translate(&m2, e2),
                        mg.index_of(&m0_new) as usize,
                    )
                })
                .collect();
            gens.push(table);
        }
    }
    let (reps, class_of) = orbits(size, &gens);
    let action = (0..om)
        .map(|k| {
            let m = mg.element_at(k as u64);
            reps.iter()
                .map(|&i| {
                    let (e, e2, m0) = unpack(i);
                    let m0_new = mg.add(&mg.element_at(m0 as u64), &m);
                    class_of[idx(e, e2, mg.index_of(&m0_new) as usize)]
                })
                .collect()
        })
        .collect();
    let s = reps
        .iter()
        .map(|&i| {
            let (e, e2, m0) = unpack(i);
            x.ring().add(
                &x.ring().mul(&t.s[e], &t2.s[e2]),
                &x.del().apply(&mg.element_at(m0 as u64)),
            )
        })
        .collect();
    Ok(Torsor { x: x.clone(), action, s })
}

/// All equivariant trivialization-preserving bijections T -> T'. Such a
/// map is determined by the image of point 0.
pub fn find_torsor_isos(t: &Torsor, t2: &Torsor) -> Result<Vec<TorsorMorphism>> {
    expect_same_parent(t, t2)?;
    let mg = t.x.module().additive();
    if t.len() != t2.len() {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    if t.is_empty() {
        out.push(TorsorMorphism { map: vec![] });
        return Ok(out);
    }
    for q0 in 0..t2.len() {
        if t2.s[q0] != t.s[0] {
            continue;
        }
        let mut map = vec![usize::MAX; t.len()];
        for k in 0..mg.order() {
            let m = mg.element_at(k);
            map[t.translate(&m, 0)] = t2.translate(&m, q0);
        }
        let good = map.iter().all(|&q| q != usize::MAX)
            && (0..t.len()).all(|p| t2.s[map[p]] == t.s[p])
            && (0..mg.order()).all(|k| {
                let m = mg.element_at(k);
                (0..t.len()).all(|p| map[t.translate(&m, p)] == t2.translate(&m, map[p]))
            });
        if good {
            out.push(TorsorMorphism { map });
        }
    }
    Ok(out)
}

/// Every constant-coefficient torsor is trivial: the witness r = s(0).
pub fn trivialize(t: &Torsor) -> (Element, TorsorMorphism) {
    let r = t.s[0].clone();
    let reference = trivial_torsor(&t.x, &r);
    let isos = find_torsor_isos(t, &reference).expect("same parent");
    (r, isos.into_iter().next().expect("torsor is trivializable"))
}

/// Push a torsor along a butterfly: the carrier is the set of
/// N-equivariant lifts into the center over the trivialization, M acts
/// through iota, and jay reads off the new trivialization.
pub fn apply_butterfly(b: &Butterfly, t: &Torsor) -> Result<Torsor> {
    if t.x() != b.source() {
        return Err(Error::MismatchedParent("torsor is not over the butterfly source".into()));
    }
    let e = b.center();
    // A lift is fixed by its value at point 0, an element of π⁻¹(s(0)).
    let fiber: Vec<Element> = e
        .elements()
        .filter(|v| b.pi().apply(v) == t.s[0])
        .collect();
    assert!(
        !fiber.is_empty(),
        "empty lift set: pi is surjective on valid butterflies"
    );
    // Independence of the base point: ȷ is constant on each lift's values.
    let ng = b.source().module().additive();
    for v in &fiber {
        for k in 0..ng.order() {
            let n = ng.element_at(k);
            let other = e.add(v, &b.kappa().apply(&n));
            assert_eq!(
                b.jay().apply(v),
                b.jay().apply(&other),
                "trivialization must not depend on the evaluation point"
            );
        }
    }
    let index: BTreeMap<&Element, usize> =
        fiber.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mg = b.target().module().additive();
    if fiber.len() != mg.order() as usize {
        return Err(Error::InvalidInput("lift set has the wrong size".into()));
    }
    let action = (0..mg.order())
        .map(|k| {
            let m = mg.element_at(k);
            fiber
                .iter()
                .map(|v| index[&e.add(v, &b.iota().apply(&m))])
                .collect()
        })
        .collect();
    let s = fiber.iter().map(|v| b.jay().apply(v)).collect();
    Ok(Torsor { x: b.target().clone(), action, s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::butterfly::from_morphism;
    use crate::crossed::XbmMorphism;
    use crate::fixtures;

    fn r(x: &CrossedBimodule, v: &[i64]) -> Element {
        x.ring().additive().reduce(v)
    }

    #[test]
    fn trivial_torsors_are_valid() {
        for (name, x) in fixtures::corpus() {
            for rv in x.ring().elements() {
                let t = trivial_torsor(&x, &rv);
                let report = t.check();
                assert!(report.ok(), "{name} at {rv}: {report}");
            }
        }
    }

    #[test]
    fn trivialization_values_on_the_ideal() {
        let x = fixtures::ideal_in_z4();
        let t = trivial_torsor(&x, &r(&x, &[3]));
        // s(0) = 3, s(1) = 3 + ∂1 = 1.
        assert_eq!(t.trivialization()[0], r(&x, &[3]));
        assert_eq!(t.trivialization()[1], r(&x, &[1]));
    }

    #[test]
    fn sum_of_trivials_is_trivial_of_the_sum() {
        let x = fixtures::ideal_in_z4();
        for a in x.ring().elements() {
            for b in x.ring().elements() {
                let t = sum(&trivial_torsor(&x, &a), &trivial_torsor(&x, &b)).unwrap();
                assert!(t.check().ok());
                let expected = trivial_torsor(&x, &x.ring().add(&a, &b));
                assert!(!find_torsor_isos(&t, &expected).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn sum_is_commutative_up_to_iso() {
        let x = fixtures::two_torsion_zero_del();
        let t = trivial_torsor(&x, &r(&x, &[1]));
        let t2 = trivial_torsor(&x, &r(&x, &[0]));
        let a = sum(&t, &t2).unwrap();
        let b = sum(&t2, &t).unwrap();
        assert!(!find_torsor_isos(&a, &b).unwrap().is_empty());
    }

    #[test]
    fn product_of_trivials_is_trivial_of_the_product() {
        for (name, x) in fixtures::corpus() {
            for a in x.ring().elements() {
                for b in x.ring().elements() {
                    let t = product(&trivial_torsor(&x, &a), &trivial_torsor(&x, &b)).unwrap();
                    assert!(t.check().ok(), "{name}");
                    let expected = trivial_torsor(&x, &x.ring().mul(&a, &b));
                    assert!(
                        !find_torsor_isos(&t, &expected).unwrap().is_empty(),
                        "{name}: product({a}, {b})"
                    );
                }
            }
        }
    }

    #[test]
    fn unit_torsor_is_neutral_for_product() {
        let x = fixtures::ideal_in_z4();
        let unit = trivial_torsor(&x, x.ring().unit());
        let t = trivial_torsor(&x, &r(&x, &[3]));
        for p in [product(&unit, &t).unwrap(), product(&t, &unit).unwrap()] {
            assert!(!find_torsor_isos(&p, &t).unwrap().is_empty());
        }
    }

    #[test]
    fn torsor_isos_exist_exactly_up_to_im_del() {
        let x = fixtures::ideal_in_z4();
        // 3 - 1 = 2 = ∂1: isomorphic. 2 - 1 = 1 not in im ∂: not.
        let t1 = trivial_torsor(&x, &r(&x, &[1]));
        let t3 = trivial_torsor(&x, &r(&x, &[3]));
        let t2 = trivial_torsor(&x, &r(&x, &[2]));
        assert!(!find_torsor_isos(&t1, &t3).unwrap().is_empty());
        assert!(find_torsor_isos(&t1, &t2).unwrap().is_empty());
        assert!(!find_torsor_isos(&t1, &t1).unwrap().is_empty());
    }

    #[test]
    fn every_torsor_trivializes() {
        let x = fixtures::two_torsion_zero_del();
        let t = product(
            &trivial_torsor(&x, &r(&x, &[1])),
            &trivial_torsor(&x, &r(&x, &[1])),
        )
        .unwrap();
        let (witness, _) = trivialize(&t);
        assert!(x.ring().additive().contains(&witness));
    }

    #[test]
    fn identity_butterfly_preserves_torsors() {
        for (name, x) in fixtures::corpus() {
            let b = from_morphism(&XbmMorphism::identity(&x)).unwrap();
            for rv in x.ring().elements() {
                let t = trivial_torsor(&x, &rv);
                let pushed = apply_butterfly(&b, &t).unwrap();
                assert!(pushed.check().ok(), "{name}");
                assert!(!find_torsor_isos(&pushed, &t).unwrap().is_empty(), "{name}");
            }
        }
    }

    #[test]
    fn split_butterfly_sends_trivial_to_trivial_along_alpha() {
        let b = {
            let src = fixtures::ideal_in_z4();
            let dst = fixtures::two_torsion_zero_del();
            let alpha =
                crate::algebra::RingHom::new(src.ring().clone(), dst.ring().clone(), vec![vec![1]])
                    .unwrap();
            let beta = crate::zmod::GroupHom::identity(src.module().additive());
            from_morphism(&XbmMorphism::new(src, dst, alpha, beta)).unwrap()
        };
        for sv in b.source().ring().elements() {
            let t = trivial_torsor(b.source(), &sv);
            let pushed = apply_butterfly(&b, &t).unwrap();
            assert!(pushed.check().ok());
            let expected = trivial_torsor(
                b.target(),
                &b.target().ring().additive().reduce(&[sv.coords[0]]),
            );
            assert!(!find_torsor_isos(&pushed, &expected).unwrap().is_empty());
        }
    }

    #[test]
    fn butterfly_application_is_monoidal() {
        for (name, x) in fixtures::corpus() {
            let b = from_morphism(&XbmMorphism::identity(&x)).unwrap();
            for a in x.ring().elements() {
                for c in x.ring().elements() {
                    let t = trivial_torsor(&x, &a);
                    let t2 = trivial_torsor(&x, &c);
                    let lhs = product(&apply_butterfly(&b, &t).unwrap(), &apply_butterfly(&b, &t2).unwrap()).unwrap();
                    let rhs = apply_butterfly(&b, &product(&t, &t2).unwrap()).unwrap();
                    assert!(!find_torsor_isos(&lhs, &rhs).unwrap().is_empty(), "{name}");
                }
            }
        }
    }

    #[test]
    fn lift_products_shift_by_kappa_and_iota() {
        // The two §-style computations, element-wise: products of shifted
        // lifts differ by κ(y n' + n y' + n ∂n') and ι(x m' + m x' + m ∂m').
        let x = fixtures::ideal_in_z4();
        let b = from_morphism(&XbmMorphism::identity(&x)).unwrap();
        let e = b.center();
        let ng = b.source().module().additive();
        let mg = b.target().module().additive();
        for a in e.elements() {
            for c in e.elements() {
                let ya = b.pi().apply(&a);
                let yc = b.pi().apply(&c);
                for k in 0..ng.order() {
                    let n = ng.element_at(k);
                    for k2 in 0..ng.order() {
                        let n2 = ng.element_at(k2);
                        let lhs = e.mul(
                            &e.add(&a, &b.kappa().apply(&n)),
                            &e.add(&c, &b.kappa().apply(&n2)),
                        );
                        let mut shift = b.source().module().act_left(&ya, &n2);
                        shift = ng.add(&shift, &b.source().module().act_right(&n, &yc));
                        shift = ng.add(&shift, &b.source().peiffer_product(&n, &n2));
                        let rhs = e.add(&e.mul(&a, &c), &b.kappa().apply(&shift));
                        assert_eq!(lhs, rhs);
                    }
                }
                let xa = b.jay().apply(&a);
                let xc = b.jay().apply(&c);
                for k in 0..mg.order() {
                    let m = mg.element_at(k);
                    for k2 in 0..mg.order() {
                        let m2 = mg.element_at(k2);
                        let lhs = e.mul(
                            &e.add(&a, &b.iota().apply(&m)),
                            &e.add(&c, &b.iota().apply(&m2)),
                        );
                        let mut shift = b.target().module().act_left(&xa, &m2);
                        shift = mg.add(&shift, &b.target().module().act_right(&m, &xc));
                        shift = mg.add(&shift, &b.target().peiffer_product(&m, &m2));
                        let rhs = e.add(&e.mul(&a, &c), &b.iota().apply(&shift));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn mismatched_parents_are_rejected() {
        let x = fixtures::ideal_in_z4();
        let y = fixtures::two_torsion_zero_del();
        let t = trivial_torsor(&x, &r(&x, &[0]));
        let t2 = trivial_torsor(&y, &r(&y, &[0]));
        assert!(matches!(sum(&t, &t2), Err(Error::MismatchedParent(_))));
        assert!(matches!(product(&t, &t2), Err(Error::MismatchedParent(_))));
    }
}

//! Descent data with constant coefficients over a finite cover: cocycle
//! validity, pointwise sum and twisted product, the coboundary action,
//! and the ring of isomorphism classes compared against pi0.

use crate::algebra::{FinRing, RingHom};
use crate::crossed::CrossedBimodule;
use crate::error::{check_bound, Error, Result};
use crate::report::Report;
use crate::zmod::Element;

/// A cocycle on a cover with n indices: ring labels r_i and module
/// comparison data m_ij with m_ii = 0, r_j - r_i = del m_ij and
/// m_ij + m_jk = m_ik.
#[derive(Debug, Clone, PartialEq)]
pub struct Cocycle {
    x: CrossedBimodule,
    r: Vec<Element>,
    m: Vec<Vec<Element>>,
}

/// A morphism of descent data: a tuple c_i of module elements acting by
/// r_i -> r_i + del c_i and m_ij -> m_ij + c_j - c_i.
#[derive(Debug, Clone, PartialEq)]
pub struct DescentMorphism {
    pub c: Vec<Element>,
}

impl Cocycle {
    pub fn new(x: CrossedBimodule, r: Vec<Element>, m: Vec<Vec<Element>>) -> Result<Self> {
        let n = r.len();
        if n == 0 {
            return Err(Error::ShapeMismatch("the cover must be nonempty".into()));
        }
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(Error::ShapeMismatch("m must be an n x n table".into()));
        }
        let rg = x.ring().additive();
        let mg = x.module().additive();
        if r.iter().any(|v| !rg.contains(v)) || m.iter().flatten().any(|v| !mg.contains(v)) {
            return Err(Error::ShapeMismatch("entries do not lie in the expected groups".into()));
        }
        Ok(Cocycle { x, r, m })
    }

    /// The constant cocycle r_i = r, m = 0.
    pub fn constant(x: &CrossedBimodule, r: &Element, n: usize) -> Self {
        let mg = x.module().additive();
        Cocycle {
            x: x.clone(),
            r: vec![r.clone(); n],
            m: vec![vec![mg.zero(); n]; n],
        }
    }

    pub fn x(&self) -> &CrossedBimodule {
        &self.x
    }

    pub fn cover_size(&self) -> usize {
        self.r.len()
    }

    pub fn r(&self) -> &[Element] {
        &self.r
    }

    pub fn m(&self) -> &[Vec<Element>] {
        &self.m
    }

    pub fn check(&self) -> Report {
        let mut report = Report::new();
        let n = self.r.len();
        let rg = self.x.ring().additive();
        let mg = self.x.module().additive();
        for i in 0..n {
            if self.m[i][i] != mg.zero() {
                report.violate("diagonal", format!("m_{{{i}{i}}} != 0"), "m");
            }
            for j in 0..n {
                let diff = rg.sub(&self.r[j], &self.r[i]);
                if diff != self.x.del().apply(&self.m[i][j]) {
                    report.violate(
                        "comparison",
                        format!("r_{j} - r_{i} != del m_{{{i}{j}}}"),
                        "r",
                    );
                }
                for k in 0..n {
                    if mg.add(&self.m[i][j], &self.m[j][k]) != self.m[i][k] {
                        report.violate(
                            "cocycle",
                            format!("m_{{{i}{j}}} + m_{{{j}{k}}} != m_{{{i}{k}}}"),
                            "m",
                        );
                    }
                }
            }
        }
        report
    }

    fn expect_same_cover(&self, other: &Cocycle) -> Result<()> {
        if self.x != other.x || self.r.len() != other.r.len() {
            return Err(Error::MismatchedCover(
                "cocycles live on different covers or coefficients".into(),
            ));
        }
        Ok(())
    }

    /// Pointwise sum (r_i + r'_i, m_ij + m'_ij).
    pub fn sum(&self, other: &Cocycle) -> Result<Cocycle> {
        self.expect_same_cover(other)?;
        let rg = self.x.ring().additive();
        let mg = self.x.module().additive();
        let r = self.r.iter().zip(&other.r).map(|(a, b)| rg.add(a, b)).collect();
        let m = self
            .m
            .iter()
            .zip(&other.m)
            .map(|(row, row2)| row.iter().zip(row2).map(|(a, b)| mg.add(a, b)).collect())
            .collect();
        Ok(Cocycle { x: self.x.clone(), r, m })
    }

    /// Twisted product (r_i r'_i, r_i m'_ij + m_ij r'_j).
    pub fn mul(&self, other: &Cocycle) -> Result<Cocycle> {
        self.expect_same_cover(other)?;
        let ring = self.x.ring();
        let md = self.x.module();
        let mg = md.additive();
        let n = self.r.len();
        let r = self.r.iter().zip(&other.r).map(|(a, b)| ring.mul(a, b)).collect();
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        mg.add(
                            &md.act_left(&self.r[i], &other.m[i][j]),
                            &md.act_right(&self.m[i][j], &other.r[j]),
                        )
                    })
                    .collect()
            })
            .collect();
        Ok(Cocycle { x: self.x.clone(), r, m })
    }
}

/// Apply a descent morphism to a cocycle.
pub fn act(c: &DescentMorphism, z: &Cocycle) -> Result<Cocycle> {
    let n = z.cover_size();
    let mg = z.x().module().additive();
    if c.c.len() != n || c.c.iter().any(|v| !mg.contains(v)) {
        return Err(Error::ShapeMismatch("descent data does not match the cover".into()));
    }
    let rg = z.x().ring().additive();
    let r = z
        .r
        .iter()
        .zip(&c.c)
        .map(|(ri, ci)| rg.add(ri, &z.x().del().apply(ci)))
        .collect();
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| mg.add(&z.m[i][j], &mg.sub(&c.c[j], &c.c[i])))
                .collect()
        })
        .collect();
    Ok(Cocycle { x: z.x.clone(), r, m })
}

/// Search for a descent morphism carrying z to z2 by enumerating all
/// module tuples over the cover.
pub fn are_isomorphic(z: &Cocycle, z2: &Cocycle, bound: u64) -> Result<Option<DescentMorphism>> {
    z.expect_same_cover(z2)?;
    let mg = z.x().module().additive();
    let n = z.cover_size();
    check_bound((mg.order() as u128).pow(n as u32), bound)?;
    let mut indices = vec![0u64; n];
    loop {
        let c = DescentMorphism {
            c: indices.iter().map(|&k| mg.element_at(k)).collect(),
        };
        if act(&c, z)? == *z2 {
            return Ok(Some(c));
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(None);
            }
            indices[pos] += 1;
            if indices[pos] < mg.order() {
                break;
            }
            indices[pos] = 0;
            pos += 1;
        }
    }
}

/// The ring of cocycle classes on a cover of size n: representatives,
/// one per element of the returned ring, whose sum and product classify
/// compatibly. The ring is verified against pi0 elementwise.
#[derive(Debug, Clone)]
pub struct CocycleClasses {
    pub ring: FinRing,
    /// representatives[k] is the class of the k-th ring element.
    pub representatives: Vec<Cocycle>,
    /// The projection used to classify: class of z = proj(r_1 of z).
    pub to_pi0: RingHom,
}

/// Enumerate all cocycles on a cover of size n up to the coboundary
/// action. Any cocycle is determined by r_1 and the m_1j, so the
/// enumeration is exact; classes are compared against pi0.
pub fn classes(x: &CrossedBimodule, n: usize, bound: u64) -> Result<CocycleClasses> {
    if n == 0 {
        return Err(Error::ShapeMismatch("the cover must be nonempty".into()));
    }
    let rg = x.ring().additive();
    let mg = x.module().additive();
    check_bound(
        rg.order() as u128 * (mg.order() as u128).pow((n - 1) as u32),
        bound,
    )?;
    let (p0, proj) = x.pi0();

    let mut all = Vec::new();
    let mut m1 = vec![0u64; n - 1];
    for rk in 0..rg.order() {
        let r1 = rg.element_at(rk);
        loop {
            let firsts: Vec<Element> = std::iter::once(mg.zero())
                .chain(m1.iter().map(|&k| mg.element_at(k)))
                .collect();
            let r: Vec<Element> = firsts
                .iter()
                .map(|m1j| rg.add(&r1, &x.del().apply(m1j)))
                .collect();
            let m: Vec<Vec<Element>> = (0..n)
                .map(|i| (0..n).map(|j| mg.sub(&firsts[j], &firsts[i])).collect())
                .collect();
            let z = Cocycle { x: x.clone(), r, m };
            debug_assert!(z.check().ok());
            all.push(z);
            let mut pos = 0;
            loop {
                if pos == n - 1 {
                    break;
                }
                m1[pos] += 1;
                if m1[pos] < mg.order() {
                    break;
                }
                m1[pos] = 0;
                pos += 1;
            }
            if m1.iter().all(|&k| k == 0) {
                break;
            }
        }
    }

    // One representative per pi0 element: the constant cocycle on a lift.
    let representatives: Vec<Cocycle> = (0..p0.order())
        .map(|k| {
            let lift = proj
                .hom()
                .solve(&p0.additive().element_at(k), bound)
                .expect("pi0 classes are small")
                .into_iter()
                .next()
                .expect("projection is surjective");
            Cocycle::constant(x, &lift, n)
        })
        .collect();

    // Classification is exactly proj on r_1: verify it exhaustively.
    let classify = |z: &Cocycle| -> u64 { p0.additive().index_of(&proj.apply(&z.r[0])) };
    for z in &all {
        let k = classify(z) as usize;
        let witness = are_isomorphic(z, &representatives[k], bound)?;
        assert!(witness.is_some(), "cocycle does not reduce to its constant representative");
        for (k2, rep) in representatives.iter().enumerate() {
            if k2 != k {
                assert!(
                    are_isomorphic(z, rep, bound)?.is_none(),
                    "cocycle is isomorphic to two distinct representatives"
                );
            }
        }
    }
    // The class operations agree with pi0 arithmetic on representatives.
    for a in &representatives {
        for b in &representatives {
            let s = a.sum(b)?;
            assert_eq!(
                classify(&s),
                p0.additive()
                    .index_of(&p0.add(&proj.apply(&a.r[0]), &proj.apply(&b.r[0]))),
            );
            let p = a.mul(b)?;
            assert_eq!(
                classify(&p),
                p0.additive()
                    .index_of(&p0.mul(&proj.apply(&a.r[0]), &proj.apply(&b.r[0]))),
            );
        }
    }
    Ok(CocycleClasses { ring: p0, representatives, to_pi0: proj })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::DEFAULT_BOUND;
    use crate::fixtures;

    fn ideal_example() -> Cocycle {
        let x = fixtures::ideal_in_z4();
        let rg = x.ring().additive();
        let mg = x.module().additive();
        Cocycle::new(
            x.clone(),
            vec![rg.reduce(&[1]), rg.reduce(&[3])],
            vec![
                vec![mg.zero(), mg.reduce(&[1])],
                vec![mg.reduce(&[1]), mg.zero()],
            ],
        )
        .unwrap()
    }

    #[test]
    fn constant_cocycles_are_valid() {
        for (name, x) in fixtures::corpus() {
            for r in x.ring().elements() {
                let z = Cocycle::constant(&x, &r, 3);
                assert!(z.check().ok(), "{name}");
            }
        }
    }

    #[test]
    fn comparison_data_must_match_the_differential() {
        let z = ideal_example();
        assert!(z.check().ok(), "3 - 1 = 2 = del 1 holds");

        let x = z.x().clone();
        let rg = x.ring().additive();
        let bad = Cocycle::new(
            x.clone(),
            vec![rg.reduce(&[1]), rg.reduce(&[2])],
            z.m().to_vec(),
        )
        .unwrap();
        assert!(!bad.check().ok(), "1 is not in the image of del");
    }

    #[test]
    fn square_of_the_ideal_example() {
        let z = ideal_example();
        let sq = z.mul(&z).unwrap();
        assert!(sq.check().ok());
        let rg = z.x().ring().additive();
        let mg = z.x().module().additive();
        assert_eq!(sq.r(), &[rg.reduce(&[1]), rg.reduce(&[1])]);
        assert_eq!(sq.m()[0][1], mg.zero());
    }

    #[test]
    fn zero_and_unit_cocycles_are_neutral() {
        let z = ideal_example();
        let zero = Cocycle::constant(z.x(), &z.x().ring().zero(), 2);
        assert_eq!(z.sum(&zero).unwrap(), z);
        let unit = Cocycle::constant(z.x(), z.x().ring().unit(), 2);
        assert_eq!(z.mul(&unit).unwrap(), z);
        assert_eq!(unit.mul(&z).unwrap(), z);
    }

    #[test]
    fn sum_and_mul_preserve_validity() {
        let x = fixtures::ideal_in_z4();
        let cs = classes(&x, 2, DEFAULT_BOUND).unwrap();
        let z = ideal_example();
        for rep in &cs.representatives {
            assert!(z.sum(rep).unwrap().check().ok());
            assert!(z.mul(rep).unwrap().check().ok());
            assert!(rep.mul(&z).unwrap().check().ok());
        }
    }

    #[test]
    fn action_preserves_validity_and_gives_isomorphisms() {
        let z = ideal_example();
        let mg = z.x().module().additive();
        for k in 0..mg.order() {
            for l in 0..mg.order() {
                let c = DescentMorphism {
                    c: vec![mg.element_at(k), mg.element_at(l)],
                };
                let moved = act(&c, &z).unwrap();
                assert!(moved.check().ok());
                let found = are_isomorphic(&z, &moved, DEFAULT_BOUND).unwrap();
                assert_eq!(found, Some(c));
            }
        }
    }

    #[test]
    fn distributivity_up_to_coboundary() {
        let x = fixtures::ideal_in_z4();
        let cs = classes(&x, 2, DEFAULT_BOUND).unwrap();
        let mut pool = cs.representatives.clone();
        pool.push(ideal_example());
        for a in &pool {
            for b in &pool {
                for c in &pool {
                    let lhs = a.mul(&b.sum(c).unwrap()).unwrap();
                    let rhs = a.mul(b).unwrap().sum(&a.mul(c).unwrap()).unwrap();
                    assert!(are_isomorphic(&lhs, &rhs, DEFAULT_BOUND).unwrap().is_some());
                }
            }
        }
    }

    #[test]
    fn classes_recover_pi0() {
        let x = fixtures::ideal_in_z4();
        let cs = classes(&x, 2, DEFAULT_BOUND).unwrap();
        assert_eq!(cs.ring.order(), 2);
        assert_eq!(cs.representatives.len(), 2);

        let y = fixtures::two_torsion_zero_del();
        let cs = classes(&y, 3, DEFAULT_BOUND).unwrap();
        assert_eq!(cs.ring.order(), 2);
    }

    #[test]
    fn singleton_cover_is_the_ring() {
        let x = fixtures::ideal_in_z4();
        for a in x.ring().elements() {
            let za = Cocycle::constant(&x, &a, 1);
            assert!(za.check().ok());
            for b in x.ring().elements() {
                let zb = Cocycle::constant(&x, &b, 1);
                assert_eq!(za.mul(&zb).unwrap().r()[0], x.ring().mul(&a, &b));
                assert_eq!(za.sum(&zb).unwrap().r()[0], x.ring().add(&a, &b));
            }
        }
    }

    #[test]
    fn mismatched_covers_are_rejected() {
        let x = fixtures::ideal_in_z4();
        let z2 = Cocycle::constant(&x, &x.ring().zero(), 2);
        let z3 = Cocycle::constant(&x, &x.ring().zero(), 3);
        assert!(matches!(z2.sum(&z3), Err(Error::MismatchedCover(_))));
        let y = fixtures::two_torsion_zero_del();
        let w = Cocycle::constant(&y, &y.ring().zero(), 2);
        assert!(matches!(z2.mul(&w), Err(Error::MismatchedCover(_))));
    }

    #[test]
    fn empty_cover_is_rejected() {
        let x = fixtures::ideal_in_z4();
        assert!(matches!(
            Cocycle::new(x, vec![], vec![]),
            Err(Error::ShapeMismatch(_))
        ));
    }
}

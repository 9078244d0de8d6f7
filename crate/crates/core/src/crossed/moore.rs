//! Two-truncated simplicial rings and the Moore-complex truncation that
//! produces a crossed bimodule from levels 0..2.

use super::xbm::CrossedBimodule;
use crate::algebra::{Bimodule, RingHom};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::zmod::{quotient, Element};

/// Levels 0, 1, 2 of a simplicial ring with all faces and degeneracies,
/// subject to the simplicial identities through level 2.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSimplicialRing {
    /// Level-1 faces d0, d1: R1 -> R0.
    pub d0: RingHom,
    pub d1: RingHom,
    /// Degeneracy s0: R0 -> R1.
    pub s0: RingHom,
    /// Level-2 faces: R2 -> R1.
    pub dd0: RingHom,
    pub dd1: RingHom,
    pub dd2: RingHom,
    /// Level-1 degeneracies: R1 -> R2.
    pub ss0: RingHom,
    pub ss1: RingHom,
}

impl TruncatedSimplicialRing {
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        for (name, f) in [
            ("d0", &self.d0),
            ("d1", &self.d1),
            ("s0", &self.s0),
            ("dd0", &self.dd0),
            ("dd1", &self.dd1),
            ("dd2", &self.dd2),
            ("ss0", &self.ss0),
            ("ss1", &self.ss1),
        ] {
            report.absorb(name, f.check());
        }
        let eq = |report: &mut Report, law: &str, a: Result<RingHom>, b: Result<RingHom>| {
            match (a, b) {
                (Ok(a), Ok(b)) if a == b => {}
                _ => report.violate("simplicial identity", law, "faces/degeneracies"),
            }
        };
        let id1 = Ok(RingHom::identity(self.d0.target()));
        eq(&mut report, "d0 s0 = id", self.d0.compose(&self.s0), id1.clone());
        eq(&mut report, "d1 s0 = id", self.d1.compose(&self.s0), id1);
        let idr1 = Ok(RingHom::identity(self.d0.source()));
        eq(&mut report, "d0 s'0 = id", self.dd0.compose(&self.ss0), idr1.clone());
        eq(&mut report, "d1 s'0 = id", self.dd1.compose(&self.ss0), idr1.clone());
        eq(&mut report, "d1 s'1 = id", self.dd1.compose(&self.ss1), idr1.clone());
        eq(&mut report, "d2 s'1 = id", self.dd2.compose(&self.ss1), idr1);
        eq(
            &mut report,
            "d2 s'0 = s0 d1",
            self.dd2.compose(&self.ss0),
            self.s0.compose(&self.d1),
        );
        eq(
            &mut report,
            "d0 s'1 = s0 d0",
            self.dd0.compose(&self.ss1),
            self.s0.compose(&self.d0),
        );
        eq(&mut report, "d0 d1 = d0 d0", self.d0.compose(&self.dd1), self.d0.compose(&self.dd0));
        eq(&mut report, "d0 d2 = d1 d0", self.d0.compose(&self.dd2), self.d1.compose(&self.dd0));
        eq(&mut report, "d1 d2 = d1 d1", self.d1.compose(&self.dd2), self.d1.compose(&self.dd1));
        eq(&mut report, "s'0 s0 = s'1 s0", self.ss0.compose(&self.s0), self.ss1.compose(&self.s0));
        report
    }

    /// Constant simplicial ring on R: every structure map is the identity.
    pub fn constant(r: &crate::algebra::FinRing) -> Self {
        let id = RingHom::identity(r);
        TruncatedSimplicialRing {
            d0: id.clone(),
            d1: id.clone(),
            s0: id.clone(),
            dd0: id.clone(),
            dd1: id.clone(),
            dd2: id.clone(),
            ss0: id.clone(),
            ss1: id,
        }
    }
}

/// The truncated Moore complex as a crossed bimodule:
/// M = (ker d0 in level 1) / dd2(ker dd0 ∩ ker dd1), differential induced
/// by d1, actions by s0-conjugation r·m = s0(r)m. The Pfeiffer identity
/// is a theorem here, certified afterwards by check().
pub fn truncate_moore(t: &TruncatedSimplicialRing) -> Result<CrossedBimodule> {
    let report = t.check();
    if !report.ok() {
        return Err(Error::InvalidSimplicial(report.to_string()));
    }
    let r0 = t.d0.target().clone();
    let r1 = t.d0.source().clone();

    let (n1, incl1) = t.d0.hom().kernel();
    let (_, i0) = t.dd0.hom().kernel();
    let (_, i01) = t.dd1.hom().compose(&i0).expect("shapes").kernel();
    let incl2 = i0.compose(&i01).expect("shapes");
    let boundary: Vec<Element> = (0..incl2.source().rank())
        .map(|j| {
            let z = incl2.apply(&incl2.source().generator(j));
            let b = t.dd2.apply(&z);
            incl1.preimage_unique(&b)
        })
        .collect();
    let (m, proj) = quotient(&n1, &boundary);
    let lift = |c: &Element| -> Element {
        let in_n1 = proj
            .solve(c, u64::MAX)
            .expect("unbounded")
            .into_iter()
            .next()
            .expect("projection is surjective");
        incl1.apply(&in_n1)
    };
    let to_m = |x: &Element| -> Element {
        proj.apply(&incl1.preimage_unique(x))
    };

    let rg = r0.additive();
    let del_cols: Vec<Element> = (0..m.rank()).map(|j| t.d1.apply(&lift(&m.generator(j)))).collect();
    let del_matrix: Vec<Vec<i64>> = (0..rg.rank())
        .map(|i| del_cols.iter().map(|c| c.coords[i]).collect())
        .collect();
    let del = crate::zmod::GroupHom::new(m.clone(), rg.clone(), del_matrix)?;

    let left = (0..rg.rank())
        .map(|j| {
            let sr = t.s0.apply(&rg.generator(j));
            (0..m.rank())
                .map(|l| to_m(&r1.mul(&sr, &lift(&m.generator(l)))))
                .collect()
        })
        .collect();
    let right = (0..m.rank())
        .map(|l| {
            (0..rg.rank())
                .map(|j| {
                    let sr = t.s0.apply(&rg.generator(j));
                    to_m(&r1.mul(&lift(&m.generator(l)), &sr))
                })
                .collect()
        })
        .collect();
    let module = Bimodule::new(r0.clone(), m, left, right);
    Ok(CrossedBimodule::new(r0, module, del))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FinRing;

    #[test]
    fn constant_simplicial_ring_truncates_to_zero_module() {
        let t = TruncatedSimplicialRing::constant(&FinRing::cyclic(4));
        assert!(t.check().ok());
        let x = truncate_moore(&t).unwrap();
        assert!(x.check().ok());
        assert_eq!(x.ring().order(), 4);
        assert!(x.module().additive().is_trivial());
    }

    #[test]
    fn broken_identities_are_rejected() {
        let mut t = TruncatedSimplicialRing::constant(&FinRing::cyclic(4));
        // Make d1 the tripling map: still a valid additive map but no
        // longer satisfying d1 s0 = id (3 != 1 mod 4) nor unitality.
        t.d1 = RingHom::new(
            t.d1.source().clone(),
            t.d1.target().clone(),
            vec![vec![3]],
        )
        .unwrap();
        assert!(matches!(truncate_moore(&t), Err(Error::InvalidSimplicial(_))));
    }
}

//! Small named crossed bimodules used across the test suites and as CLI
//! demo inputs. Each is checked valid (or deliberately invalid) in the
//! crossed module tests.

use crate::algebra::{Bimodule, FinRing};
use crate::crossed::CrossedBimodule;
use crate::zmod::{FinAbGroup, GroupHom};

/// M = Z/2 over R = Z/2 with zero differential and multiplication
/// actions. pi0 = pi1 = Z/2.
pub fn two_torsion_zero_del() -> CrossedBimodule {
    let r = FinRing::cyclic(2);
    let m = Bimodule::regular(&r);
    let del = GroupHom::zero(m.additive().clone(), r.additive().clone());
    CrossedBimodule::new(r, m, del)
}

/// The two-sided ideal {0, 2} inside Z/4 with ∂ the inclusion 1 -> 2;
/// the actions factor through reduction mod 2. pi0 = Z/2, pi1 = 0.
pub fn ideal_in_z4() -> CrossedBimodule {
    let r = FinRing::cyclic(4);
    let g = FinAbGroup::cyclic(2);
    let one = g.reduce(&[1]);
    let m = Bimodule::new(r.clone(), g.clone(), vec![vec![one.clone()]], vec![vec![one]]);
    let del = GroupHom::new(g, r.additive().clone(), vec![vec![2]]).unwrap();
    CrossedBimodule::new(r, m, del)
}

/// Same as `ideal_in_z4` but with the right action zeroed out; the
/// differential then fails to be a right module map.
pub fn ideal_in_z4_broken_right_action() -> CrossedBimodule {
    let r = FinRing::cyclic(4);
    let g = FinAbGroup::cyclic(2);
    let one = g.reduce(&[1]);
    let m = Bimodule::new(r.clone(), g.clone(), vec![vec![one]], vec![vec![g.zero()]]);
    let del = GroupHom::new(g, r.additive().clone(), vec![vec![2]]).unwrap();
    CrossedBimodule::new(r, m, del)
}

/// The ideal (x) inside the dual numbers Z/2[x]/(x^2), with ∂ the
/// inclusion. The ring has additive group Z/2 ⊕ Z/2 on generators 1, x.
pub fn ideal_in_dual_numbers() -> CrossedBimodule {
    let g = FinAbGroup::new(vec![2, 2]).unwrap();
    let one = g.reduce(&[1, 0]);
    let x = g.reduce(&[0, 1]);
    let mult = vec![vec![one.clone(), x.clone()], vec![x.clone(), g.zero()]];
    let r = FinRing::new(g.clone(), one, mult);
    let mg = FinAbGroup::cyclic(2);
    let m1 = mg.reduce(&[1]);
    // 1 acts as the identity on the ideal, x annihilates it (x·x = 0).
    let m = Bimodule::new(
        r.clone(),
        mg.clone(),
        vec![vec![m1.clone()], vec![mg.zero()]],
        vec![vec![m1, mg.zero()]],
    );
    let del = GroupHom::new(mg, g, vec![vec![0], vec![1]]).unwrap();
    CrossedBimodule::new(r, m, del)
}

/// id: Z/2 -> Z/2 with multiplication actions. pi0 is the zero ring and
/// pi1 = 0.
pub fn identity_del_z2() -> CrossedBimodule {
    let r = FinRing::cyclic(2);
    let m = Bimodule::regular(&r);
    let del = GroupHom::identity(r.additive());
    CrossedBimodule::new(r, m, del)
}

/// All valid fixtures, with names.
pub fn corpus() -> Vec<(&'static str, CrossedBimodule)> {
    vec![
        ("two_torsion_zero_del", two_torsion_zero_del()),
        ("ideal_in_z4", ideal_in_z4()),
        ("ideal_in_dual_numbers", ideal_in_dual_numbers()),
        ("identity_del_z2", identity_del_z2()),
    ]
}

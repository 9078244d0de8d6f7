//! Exhaustive enumeration of small structures: abelian groups, unital
//! rings, bimodules, crossed bimodules, strict morphisms and algebra
//! extensions. The search covers all additive groups of rank at most
//! two, which is complete through order 4 and keeps larger orders exact
//! and fast.

use crate::algebra::{quotient_ring, AlgExtension, Bimodule, FinRing, RingHom};
use crate::crossed::{enumerate_morphisms, find_crossed_isos, CrossedBimodule, XbmMorphism};
use crate::error::Result;
use crate::zmod::{hom_enumerate, quotient, subgroup, Element, FinAbGroup};

/// All abelian groups of rank at most two and order at most max_order,
/// in invariant-factor form, smallest order first.
pub fn small_groups(max_order: u64) -> Vec<FinAbGroup> {
    let mut out = vec![FinAbGroup::trivial()];
    for n in 2..=max_order as i64 {
        out.push(FinAbGroup::cyclic(n));
    }
    for a in 2..=max_order as i64 {
        for b in (a..=max_order as i64).filter(|b| b % a == 0) {
            if (a * b) as u64 <= max_order {
                out.push(FinAbGroup::new(vec![a, b]).expect("invariant factors"));
            }
        }
    }
    out.sort_by_key(|g| (g.order(), g.moduli().to_vec()));
    out
}

/// Multiply two elements using a raw generator table, bilinearly.
fn table_mul(g: &FinAbGroup, table: &[Vec<Element>], a: &Element, b: &Element) -> Element {
    let mut acc = g.zero();
    for (j, &aj) in a.coords.iter().enumerate() {
        if aj == 0 {
            continue;
        }
        for (l, &bl) in b.coords.iter().enumerate() {
            if bl == 0 {
                continue;
            }
            acc = g.add(&acc, &g.scalar_mul(aj * bl, &table[j][l]));
        }
    }
    acc
}

/// Iterate over all assignments of `slots` values drawn from `choices`.
fn for_each_tuple<F: FnMut(&[u64])>(slots: usize, choices: u64, mut f: F) {
    let mut idx = vec![0u64; slots];
    loop {
        f(&idx);
        let mut pos = 0;
        loop {
            if pos == slots {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < choices {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// All unital rings with additive group of rank at most two and order
/// at most max_order. The enumeration is over multiplication tables on
/// generators; associativity on generators and a two-sided unit are
/// checked exactly.
pub fn small_rings(max_order: u64) -> Vec<FinRing> {
    let mut out = Vec::new();
    for g in small_groups(max_order) {
        let k = g.rank();
        if k == 0 {
            out.push(FinRing::zero_ring());
            continue;
        }
        for_each_tuple(k * k, g.order(), |idx| {
            let table: Vec<Vec<Element>> = (0..k)
                .map(|j| (0..k).map(|l| g.element_at(idx[j * k + l])).collect())
                .collect();
            // Bilinear extension is well-defined only when each entry is
            // killed by the moduli of both generators.
            let defined = (0..k).all(|j| {
                (0..k).all(|l| {
                    g.scalar_mul(g.moduli()[j], &table[j][l]) == g.zero()
                        && g.scalar_mul(g.moduli()[l], &table[j][l]) == g.zero()
                })
            });
            if !defined {
                return;
            }
            // Associativity on generators extends bilinearly.
            let assoc = (0..k).all(|i| {
                (0..k).all(|j| {
                    (0..k).all(|l| {
                        let left = table_mul(&g, &table, &table[i][j], &g.generator(l));
                        let right = table_mul(&g, &table, &g.generator(i), &table[j][l]);
                        left == right
                    })
                })
            });
            if !assoc {
                return;
            }
            let unit = g.elements().find(|u| {
                (0..k).all(|j| {
                    let e = g.generator(j);
                    table_mul(&g, &table, u, &e) == e && table_mul(&g, &table, &e, u) == e
                })
            });
            if let Some(u) = unit {
                out.push(FinRing::new(g.clone(), u, table));
            }
        });
    }
    out
}

/// All bimodule structures over r on additive groups of rank at most
/// two and order at most max_order. Left and right structures are
/// enumerated independently, then paired on the commuting condition.
pub fn small_bimodules(r: &FinRing, max_order: u64) -> Vec<Bimodule> {
    let rg = r.additive();
    let kr = rg.rank();
    let mut out = Vec::new();
    for g in small_groups(max_order) {
        let km = g.rank();
        let act = |table: &[Vec<Element>], a: &Element, m: &Element| -> Element {
            let mut acc = g.zero();
            for (j, &aj) in a.coords.iter().enumerate() {
                for (l, &ml) in m.coords.iter().enumerate() {
                    acc = g.add(&acc, &g.scalar_mul(aj * ml, &table[j][l]));
                }
            }
            acc
        };
        let mut lefts: Vec<Vec<Vec<Element>>> = Vec::new();
        for_each_tuple(kr * km, g.order(), |idx| {
            let t: Vec<Vec<Element>> = (0..kr)
                .map(|j| (0..km).map(|l| g.element_at(idx[j * km + l])).collect())
                .collect();
            let defined = (0..kr).all(|j| {
                (0..km).all(|l| {
                    g.scalar_mul(rg.moduli()[j], &t[j][l]) == g.zero()
                        && g.scalar_mul(g.moduli()[l], &t[j][l]) == g.zero()
                })
            });
            let unital = defined
                && (0..km).all(|l| act(&t, r.unit(), &g.generator(l)) == g.generator(l));
            let assoc = unital
                && (0..kr).all(|i| {
                    (0..kr).all(|j| {
                        (0..km).all(|l| {
                            act(&t, &r.mul(&rg.generator(i), &rg.generator(j)), &g.generator(l))
                                == act(&t, &rg.generator(i), &t[j][l])
                        })
                    })
                });
            if assoc {
                lefts.push(t);
            }
        });
        let mut rights: Vec<Vec<Vec<Element>>> = Vec::new();
        for_each_tuple(kr * km, g.order(), |idx| {
            // rights are stored like the bimodule's right table: row = module
            // generator, column = ring generator.
            let t: Vec<Vec<Element>> = (0..km)
                .map(|l| (0..kr).map(|j| g.element_at(idx[l * kr + j])).collect())
                .collect();
            let ract = |m: &Element, a: &Element| -> Element {
                let mut acc = g.zero();
                for (l, &ml) in m.coords.iter().enumerate() {
                    for (j, &aj) in a.coords.iter().enumerate() {
                        acc = g.add(&acc, &g.scalar_mul(ml * aj, &t[l][j]));
                    }
                }
                acc
            };
            let defined = (0..km).all(|l| {
                (0..kr).all(|j| {
                    g.scalar_mul(rg.moduli()[j], &t[l][j]) == g.zero()
                        && g.scalar_mul(g.moduli()[l], &t[l][j]) == g.zero()
                })
            });
            let unital = defined
                && (0..km).all(|l| ract(&g.generator(l), r.unit()) == g.generator(l));
            let assoc = unital
                && (0..km).all(|l| {
                    (0..kr).all(|i| {
                        (0..kr).all(|j| {
                            ract(&g.generator(l), &r.mul(&rg.generator(i), &rg.generator(j)))
                                == ract(&t[l][i], &rg.generator(j))
                        })
                    })
                });
            if assoc {
                rights.push(t);
            }
        });
        for lt in &lefts {
            for rt in &rights {
                let commuting = (0..kr).all(|i| {
                    (0..km).all(|l| {
                        (0..kr).all(|j| {
                            // (e_i f_l) e_j = e_i (f_l e_j).
                            let lhs = {
                                let m = &lt[i][l];
                                let mut acc = g.zero();
                                for (u, &mu) in m.coords.iter().enumerate() {
                                    acc = g.add(&acc, &g.scalar_mul(mu, &rt[u][j]));
                                }
                                acc
                            };
                            let rhs = act(lt, &rg.generator(i), &rt[l][j]);
                            lhs == rhs
                        })
                    })
                });
                if commuting {
                    let b = Bimodule::new(r.clone(), g.clone(), lt.clone(), rt.clone());
                    debug_assert!(b.check().ok());
                    out.push(b);
                }
            }
        }
    }
    out
}

/// All crossed bimodules with |R| and |M| at most max_order (additive
/// rank at most two): every ring, every bimodule, every differential
/// that is a bimodule map satisfying the Pfeiffer identity.
pub fn small_crossed(max_order: u64) -> Result<Vec<CrossedBimodule>> {
    let mut out = Vec::new();
    for r in small_rings(max_order) {
        for module in small_bimodules(&r, max_order) {
            let mg = module.additive();
            let rg = r.additive();
            for del in hom_enumerate(mg, rg, u64::MAX)? {
                let bimodule_map = (0..rg.rank()).all(|j| {
                    (0..mg.rank()).all(|l| {
                        let e = rg.generator(j);
                        let m = mg.generator(l);
                        del.apply(&module.act_left(&e, &m)) == r.mul(&e, &del.apply(&m))
                            && del.apply(&module.act_right(&m, &e)) == r.mul(&del.apply(&m), &e)
                    })
                });
                let pfeiffer = bimodule_map
                    && (0..mg.rank()).all(|l| {
                        (0..mg.rank()).all(|u| {
                            let m = mg.generator(l);
                            let m2 = mg.generator(u);
                            module.act_left(&del.apply(&m), &m2)
                                == module.act_right(&m, &del.apply(&m2))
                        })
                    });
                if pfeiffer {
                    out.push(CrossedBimodule::new(r.clone(), module.clone(), del));
                }
            }
        }
    }
    Ok(out)
}

/// Keep one representative per isomorphism class.
pub fn dedupe_crossed(list: &[CrossedBimodule], bound: u64) -> Result<Vec<CrossedBimodule>> {
    let mut reps: Vec<CrossedBimodule> = Vec::new();
    for x in list {
        let mut fresh = true;
        for rep in &reps {
            if rep.ring().additive().moduli() != x.ring().additive().moduli()
                || rep.module().additive().moduli() != x.module().additive().moduli()
            {
                continue;
            }
            if !find_crossed_isos(x, rep, bound)?.is_empty() {
                fresh = false;
                break;
            }
        }
        if fresh {
            reps.push(x.clone());
        }
    }
    Ok(reps)
}

/// All endomorphisms of every census object: the morphism census used
/// for splitting round-trips.
pub fn small_endomorphisms(census: &[CrossedBimodule], bound: u64) -> Result<Vec<XbmMorphism>> {
    let mut out = Vec::new();
    for x in census {
        out.extend(enumerate_morphisms(x, x, bound)?);
    }
    Ok(out)
}

/// All algebra extensions 0 -> M -> E -> S -> 0 with |E| at most
/// max_order (additive rank at most two): every two-sided ideal of
/// every census ring, with the quotient as base.
pub fn small_extensions(max_order: u64) -> Vec<AlgExtension> {
    let mut out = Vec::new();
    for e in small_rings(max_order) {
        let eg = e.additive();
        let elems: Vec<Element> = eg.elements().collect();
        let mut seen: Vec<Vec<Element>> = Vec::new();
        for a in &elems {
            for b in &elems {
                let (sub, incl) = subgroup(eg, &[a.clone(), b.clone()]);
                let mut members: Vec<Element> = sub.elements().map(|v| incl.apply(&v)).collect();
                members.sort();
                if seen.contains(&members) {
                    continue;
                }
                seen.push(members.clone());
                // Two-sided ideal: products of members with generators stay in.
                let is_ideal = members.iter().all(|m| {
                    (0..eg.rank()).all(|j| {
                        let gen = eg.generator(j);
                        members.contains(&e.mul(&gen, m)) && members.contains(&e.mul(m, &gen))
                    })
                });
                if !is_ideal {
                    continue;
                }
                let gens = [a.clone(), b.clone()];
                let (_, proj_hom) = quotient(eg, &gens);
                let base = quotient_ring(&e, &proj_hom);
                let proj = RingHom::from_group_hom(e.clone(), base.clone(), proj_hom)
                    .expect("quotient by an ideal is a ring map");
                let ext = AlgExtension::new(sub, e.clone(), base, incl, proj);
                debug_assert!(ext.check().ok());
                out.push(ext);
            }
        }
    }
    out
}

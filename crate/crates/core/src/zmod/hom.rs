//! Homomorphisms of finite abelian groups as integer matrices, with exact
//! kernels, cokernels, images, pullbacks, and congruence solving.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::group::{Element, FinAbGroup};
use super::snf::{integer_kernel, mat_mul, smith_normal_form, IntMat};
use crate::error::{check_bound, Error, Result};

/// Additive map f: source -> target given by a (target-rank x source-rank)
/// integer matrix: f(e_j) = sum_i A[i][j] e_i.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHom {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: IntMat,
}

impl GroupHom {
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: IntMat) -> Result<Self> {
        if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::ShapeMismatch(format!(
                "expected {}x{} matrix, got {}x{}",
                target.rank(),
                source.rank(),
                matrix.len(),
                matrix.first().map_or(0, Vec::len)
            )));
        }
        let matrix: IntMat = matrix
            .into_iter()
            .zip(target.moduli())
            .map(|(row, &m)| row.into_iter().map(|x| x.rem_euclid(m)).collect())
            .collect();
        // Well-definedness: the image of each generator e_j must be killed
        // by the generator's order n_j.
        for (i, row) in matrix.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                let n = source.moduli()[j];
                let m = target.moduli()[i];
                if (a * n).rem_euclid(m) != 0 {
                    return Err(Error::IllDefined(format!(
                        "A[{i}][{j}]={a} violates {a}·{n} ≡ 0 (mod {m})"
                    )));
                }
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn zero(source: FinAbGroup, target: FinAbGroup) -> Self {
        let matrix = vec![vec![0; source.rank()]; target.rank()];
        GroupHom { source, target, matrix }
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        let n = g.rank();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        GroupHom { source: g.clone(), target: g.clone(), matrix }
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    pub fn apply(&self, x: &Element) -> Element {
        assert!(self.source.contains(x), "element not in source group");
        let coords = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(&x.coords).map(|(a, c)| a * c).sum())
            .collect();
        self.target.reduce_owned(coords)
    }

    /// self ∘ other.
    pub fn compose(&self, other: &GroupHom) -> Result<GroupHom> {
        if other.target != self.source {
            return Err(Error::EndpointMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        let matrix = if self.source.rank() == 0 {
            // Factoring through the trivial group: the zero matrix, whose
            // shape cannot be recovered from an empty product.
            vec![vec![0; other.source.rank()]; self.target.rank()]
        } else {
            mat_mul(&self.matrix, &other.matrix)
        };
        GroupHom::new(other.source.clone(), self.target.clone(), matrix)
    }

    pub fn add(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::EndpointMismatch("hom addition".into()));
        }
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect())
            .collect();
        GroupHom::new(self.source.clone(), self.target.clone(), matrix)
    }

    pub fn neg(&self) -> GroupHom {
        let matrix = self.matrix.iter().map(|r| r.iter().map(|a| -a).collect()).collect();
        GroupHom::new(self.source.clone(), self.target.clone(), matrix).unwrap()
    }

    pub fn sub(&self, other: &GroupHom) -> Result<GroupHom> {
        self.add(&other.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&a| a == 0)
    }

    pub fn kernel(&self) -> (FinAbGroup, GroupHom) {
        // Integer solutions of A x ≡ 0 (mod m), i.e. the x-part of
        // ker_Z [A | -diag(m)], generate the kernel subgroup.
        let k = self.source.rank();
        let l = self.target.rank();
        let mut w = Vec::with_capacity(l);
        for i in 0..l {
            let mut row = self.matrix[i].clone();
            for j in 0..l {
                row.push(if i == j { -self.target.moduli()[i] } else { 0 });
            }
            w.push(row);
        }
        let gens: Vec<Element> = if l == 0 {
            (0..k).map(|j| self.source.generator(j)).collect()
        } else {
            integer_kernel(&w)
                .into_iter()
                .map(|col| self.source.reduce(&col[..k]))
                .collect()
        };
        subgroup(&self.source, &gens)
    }

    pub fn image(&self) -> (FinAbGroup, GroupHom) {
        let gens: Vec<Element> = (0..self.source.rank())
            .map(|j| self.apply(&self.source.generator(j)))
            .collect();
        subgroup(&self.target, &gens)
    }

    pub fn cokernel(&self) -> (FinAbGroup, GroupHom) {
        let gens: Vec<Element> = (0..self.source.rank())
            .map(|j| self.apply(&self.source.generator(j)))
            .collect();
        quotient(&self.target, &gens)
    }

    pub fn kernel_order(&self) -> u64 {
        self.kernel().0.order()
    }

    pub fn image_order(&self) -> u64 {
        self.image().0.order()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_order() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image_order() == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// All x with f(x) = y, in mixed-radix order. Exact: a particular
    /// solution from the SNF of [A | -diag(m)] shifted by the kernel.
    pub fn solve(&self, y: &Element, bound: u64) -> Result<Vec<Element>> {
        assert!(self.target.contains(y));
        let k = self.source.rank();
        let l = self.target.rank();
        let mut w = Vec::with_capacity(l);
        for i in 0..l {
            let mut row = self.matrix[i].clone();
            for j in 0..l {
                row.push(if i == j { -self.target.moduli()[i] } else { 0 });
            }
            w.push(row);
        }
        if l == 0 {
            // Trivial target: every element is a solution.
            check_bound(self.source.order() as u128, bound)?;
            return Ok(self.source.elements().collect());
        }
        let snf = smith_normal_form(&w);
        let uy: Vec<i64> = snf.u.iter().map(|row| row.iter().zip(&y.coords).map(|(a, c)| a * c).sum()).collect();
        let diag = snf.diag();
        let mut t = vec![0i64; k + l];
        for i in 0..l {
            let d = if i < diag.len() { diag[i] } else { 0 };
            if d == 0 {
                if uy[i] != 0 {
                    return Ok(vec![]);
                }
            } else {
                if uy[i] % d != 0 {
                    return Ok(vec![]);
                }
                t[i] = uy[i] / d;
            }
        }
        let w0: Vec<i64> = (0..k + l)
            .map(|i| snf.v[i].iter().zip(&t).map(|(a, b)| a * b).sum())
            .collect();
        let x0 = self.source.reduce(&w0[..k]);
        debug_assert_eq!(self.apply(&x0), *y);

        let (ker, incl) = self.kernel();
        check_bound(ker.order() as u128, bound)?;
        let mut out: Vec<Element> = ker
            .elements()
            .map(|z| self.source.add(&x0, &incl.apply(&z)))
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// The unique preimage of y under an injective map; panics if y is not
    /// in the image (internal use only).
    pub fn preimage_unique(&self, y: &Element) -> Element {
        let sols = self.solve(y, u64::MAX).expect("unbounded");
        assert_eq!(sols.len(), 1, "expected a unique preimage");
        sols.into_iter().next().unwrap()
    }

    /// Inverse of a bijective hom.
    pub fn invert(&self) -> Result<GroupHom> {
        if !self.is_bijective() {
            return Err(Error::InvalidInput("hom is not bijective".into()));
        }
        let cols: Vec<Element> = (0..self.target.rank())
            .map(|i| self.preimage_unique(&self.target.generator(i)))
            .collect();
        let matrix = (0..self.source.rank())
            .map(|r| cols.iter().map(|c| c.coords[r]).collect())
            .collect();
        GroupHom::new(self.target.clone(), self.source.clone(), matrix)
    }
}

/// Presentation of the subgroup generated by `gens`: a group H in its own
/// moduli together with an injective hom H -> g.
pub fn subgroup(g: &FinAbGroup, gens: &[Element]) -> (FinAbGroup, GroupHom) {
    let k = g.rank();
    if k == 0 {
        return (FinAbGroup::trivial(), GroupHom::zero(FinAbGroup::trivial(), g.clone()));
    }
    // Lattice L = span(gens) + diag(n)·Z^k, presented as L/diag(n).
    let t = gens.len();
    let b: IntMat = (0..k)
        .map(|i| {
            let mut row: Vec<i64> = gens.iter().map(|e| e.coords[i]).collect();
            for j in 0..k {
                row.push(if i == j { g.moduli()[i] } else { 0 });
            }
            row
        })
        .collect();
    let s1 = smith_normal_form(&b);
    debug_assert_eq!(s1.rank(), k, "lattice must have full rank");
    let _ = t;
    // Basis P = Uinv·D' of L; X = P^{-1}·diag(n) expresses diag(n) in it.
    let d1 = s1.diag();
    let x: IntMat = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let num = s1.u[i][j] * g.moduli()[j];
                    debug_assert_eq!(num % d1[i], 0);
                    num / d1[i]
                })
                .collect()
        })
        .collect();
    let s2 = smith_normal_form(&x);
    let d2 = s2.diag();
    let kept: Vec<usize> = (0..k).filter(|&i| d2[i] != 1).collect();
    let h = FinAbGroup::new(kept.iter().map(|&i| d2[i]).collect()).expect("moduli >= 1");
    // Column i of the inclusion is P·U2inv·e_i reduced mod the ambient moduli.
    let mut matrix = vec![vec![0i64; kept.len()]; k];
    for (col, &i) in kept.iter().enumerate() {
        for r in 0..k {
            let mut acc = 0i64;
            for s in 0..k {
                // P[r][s] = Uinv[r][s] * d1[s]
                acc += s1.uinv[r][s] * d1[s] * s2.uinv[s][i];
            }
            matrix[r][col] = acc;
        }
    }
    let incl = GroupHom::new(h.clone(), g.clone(), matrix).expect("inclusion is well defined");
    debug_assert!(incl.is_injective());
    (h, incl)
}

/// Presentation of g / <gens>: a group C together with the surjection g -> C.
pub fn quotient(g: &FinAbGroup, gens: &[Element]) -> (FinAbGroup, GroupHom) {
    let k = g.rank();
    if k == 0 {
        return (FinAbGroup::trivial(), GroupHom::zero(g.clone(), FinAbGroup::trivial()));
    }
    let b: IntMat = (0..k)
        .map(|i| {
            let mut row: Vec<i64> = gens.iter().map(|e| e.coords[i]).collect();
            for j in 0..k {
                row.push(if i == j { g.moduli()[i] } else { 0 });
            }
            row
        })
        .collect();
    let snf = smith_normal_form(&b);
    let diag = snf.diag();
    let kept: Vec<usize> = (0..k).filter(|&i| diag[i] != 1).collect();
    let c = FinAbGroup::new(kept.iter().map(|&i| diag[i]).collect()).expect("moduli >= 1");
    let matrix: IntMat = kept.iter().map(|&i| snf.u[i].clone()).collect();
    let proj = GroupHom::new(g.clone(), c.clone(), matrix).expect("projection is well defined");
    debug_assert!(proj.is_surjective());
    (c, proj)
}

/// G ⊕ H with the four structural maps.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub group: FinAbGroup,
    pub inj1: GroupHom,
    pub inj2: GroupHom,
    pub proj1: GroupHom,
    pub proj2: GroupHom,
}

pub fn direct_sum(a: &FinAbGroup, b: &FinAbGroup) -> DirectSum {
    let mut moduli = a.moduli().to_vec();
    moduli.extend_from_slice(b.moduli());
    let group = FinAbGroup::new(moduli).unwrap();
    let (ka, kb) = (a.rank(), b.rank());
    let block = |rows: usize, cols: usize, f: &dyn Fn(usize, usize) -> i64| -> IntMat {
        (0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect()).collect()
    };
    let inj1 = GroupHom::new(a.clone(), group.clone(), block(ka + kb, ka, &|i, j| i64::from(i == j))).unwrap();
    let inj2 = GroupHom::new(b.clone(), group.clone(), block(ka + kb, kb, &|i, j| i64::from(i == j + ka))).unwrap();
    let proj1 = GroupHom::new(group.clone(), a.clone(), block(ka, ka + kb, &|i, j| i64::from(i == j))).unwrap();
    let proj2 = GroupHom::new(group.clone(), b.clone(), block(kb, ka + kb, &|i, j| i64::from(i + ka == j))).unwrap();
    DirectSum { group, inj1, inj2, proj1, proj2 }
}

pub fn pair(ds: &DirectSum, x: &Element, y: &Element) -> Element {
    let mut coords = x.coords.clone();
    coords.extend_from_slice(&y.coords);
    ds.group.reduce_owned(coords)
}

/// The subgroup {(a,b) : f(a) = g(b)} of A ⊕ B with its two projections.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub group: FinAbGroup,
    /// Inclusion into A ⊕ B.
    pub incl: GroupHom,
    pub p1: GroupHom,
    pub p2: GroupHom,
}

pub fn pullback(f: &GroupHom, g: &GroupHom) -> Result<Pullback> {
    if f.target() != g.target() {
        return Err(Error::EndpointMismatch("pullback targets differ".into()));
    }
    let (ka, kb) = (f.source().rank(), g.source().rank());
    let l = f.target().rank();
    // x-part of ker_Z [Af | -Ag | -diag(c)] gives generators of the subgroup.
    let w: IntMat = (0..l)
        .map(|i| {
            let mut row = f.matrix()[i].clone();
            row.extend(g.matrix()[i].iter().map(|a| -a));
            for j in 0..l {
                row.push(if i == j { -f.target().moduli()[i] } else { 0 });
            }
            row
        })
        .collect();
    let ds = direct_sum(f.source(), g.source());
    // A rank-0 target constrains nothing: the pullback is all of A ⊕ B.
    let gens: Vec<Element> = if l == 0 {
        (0..ka + kb).map(|j| ds.group.generator(j)).collect()
    } else {
        integer_kernel(&w)
            .into_iter()
            .map(|col| ds.group.reduce(&col[..ka + kb]))
            .collect()
    };
    let (group, incl) = subgroup(&ds.group, &gens);
    let p1 = ds.proj1.compose(&incl)?;
    let p2 = ds.proj2.compose(&incl)?;
    Ok(Pullback { group, incl, p1, p2 })
}

/// All homomorphisms G -> H, determined by generator images subject to the
/// order congruences n_j · y_j = 0.
pub fn hom_enumerate(g: &FinAbGroup, h: &FinAbGroup, bound: u64) -> Result<Vec<GroupHom>> {
    let mut per_gen: Vec<Vec<Element>> = Vec::with_capacity(g.rank());
    let mut total: u128 = 1;
    for j in 0..g.rank() {
        let n = g.moduli()[j];
        let candidates: Vec<Element> = h
            .elements()
            .filter(|y| h.scalar_mul(n, y) == h.zero())
            .collect();
        total = total.saturating_mul(candidates.len() as u128);
        check_bound(total, bound)?;
        per_gen.push(candidates);
    }
    if g.rank() == 0 {
        return Ok(vec![GroupHom::zero(g.clone(), h.clone())]);
    }
    let homs = per_gen
        .iter()
        .multi_cartesian_product()
        .map(|cols| {
            let matrix = (0..h.rank())
                .map(|r| cols.iter().map(|c| c.coords[r]).collect())
                .collect();
            GroupHom::new(g.clone(), h.clone(), matrix).expect("order congruence holds")
        })
        .collect();
    Ok(homs)
}

/// Canonical divisor-chain form of a group with the isomorphisms both ways.
pub fn canonicalize(g: &FinAbGroup) -> (FinAbGroup, GroupHom, GroupHom) {
    let k = g.rank();
    let diag_n: IntMat = (0..k)
        .map(|i| (0..k).map(|j| if i == j { g.moduli()[i] } else { 0 }).collect())
        .collect();
    let snf = smith_normal_form(&diag_n);
    let d = snf.diag();
    let kept: Vec<usize> = (0..k).filter(|&i| d[i] != 1).collect();
    let h = FinAbGroup::new(kept.iter().map(|&i| d[i]).collect()).unwrap();
    let to_matrix: IntMat = kept.iter().map(|&i| snf.u[i].clone()).collect();
    let to = GroupHom::new(g.clone(), h.clone(), to_matrix).unwrap();
    let from_matrix: IntMat = (0..k)
        .map(|r| kept.iter().map(|&i| snf.uinv[r][i]).collect())
        .collect();
    let from = GroupHom::new(h.clone(), g.clone(), from_matrix).unwrap();
    (h, to, from)
}

pub fn groups_isomorphic(a: &FinAbGroup, b: &FinAbGroup) -> bool {
    canonicalize(a).0 == canonicalize(b).0
}

/// im f = ker g for a composable pair f: A -> B, g: B -> C.
pub fn is_exact(f: &GroupHom, g: &GroupHom) -> bool {
    f.target() == g.source()
        && g.compose(f).map(|c| c.is_zero()).unwrap_or(false)
        && f.image_order() == g.kernel_order()
}

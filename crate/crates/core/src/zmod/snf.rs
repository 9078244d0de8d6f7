//! Smith normal form over the integers, with unimodular transforms and
//! their inverses tracked exactly.

pub type IntMat = Vec<Vec<i64>>;

pub fn mat_identity(n: usize) -> IntMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_zero(rows: usize, cols: usize) -> IntMat {
    vec![vec![0; cols]; rows]
}

pub fn mat_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let rows = a.len();
    let inner = b.len();
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    debug_assert!(a.iter().all(|row| row.len() == inner));
    let mut out = mat_zero(rows, cols);
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &IntMat, x: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(c, v)| c * v).sum())
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination. Matrices here are
/// small, so i128 intermediates are plenty.
pub fn determinant(a: &IntMat) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    debug_assert!(a.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// U·A·V = D with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: IntMat,
    pub uinv: IntMat,
    pub d: IntMat,
    pub v: IntMat,
    pub vinv: IntMat,
}

impl Snf {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        let n = self.d.len().min(if self.d.is_empty() { 0 } else { self.d[0].len() });
        (0..n).filter(|&i| self.d[i][i] != 0).count()
    }

    pub fn diag(&self) -> Vec<i64> {
        let n = self.d.len().min(if self.d.is_empty() { 0 } else { self.d[0].len() });
        (0..n).map(|i| self.d[i][i]).collect()
    }
}

pub fn smith_normal_form(a: &IntMat) -> Snf {
    let rows = a.len();
    let cols = if rows > 0 { a[0].len() } else { 0 };
    let mut d = a.clone();
    let mut u = mat_identity(rows);
    let mut uinv = mat_identity(rows);
    let mut v = mat_identity(cols);
    let mut vinv = mat_identity(cols);

    // Elementary ops on D mirrored on (U, Uinv) resp. (V, Vinv) so that
    // U·A·V = D stays invariant.
    let row_sub = |d: &mut IntMat, u: &mut IntMat, uinv: &mut IntMat, i: usize, t: usize, q: i64| {
        for j in 0..cols {
            d[i][j] -= q * d[t][j];
        }
        for j in 0..rows {
            u[i][j] -= q * u[t][j];
        }
        for r in 0..rows {
            uinv[r][t] += q * uinv[r][i];
        }
    };
    let col_sub = |d: &mut IntMat, v: &mut IntMat, vinv: &mut IntMat, j: usize, t: usize, q: i64| {
        for i in 0..rows {
            d[i][j] -= q * d[i][t];
        }
        for i in 0..cols {
            v[i][j] -= q * v[i][t];
        }
        for c in 0..cols {
            vinv[t][c] += q * vinv[j][c];
        }
    };

    let n = rows.min(cols);
    for t in 0..n {
        'pivot: loop {
            // Smallest nonzero entry of the trailing submatrix becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[i][j] != 0
                        && best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            if pi != t {
                d.swap(pi, t);
                u.swap(pi, t);
                for r in 0..rows {
                    uinv[r].swap(pi, t);
                }
            }
            if pj != t {
                for row in d.iter_mut() {
                    row.swap(pj, t);
                }
                for row in v.iter_mut() {
                    row.swap(pj, t);
                }
                vinv.swap(pj, t);
            }

            let p = d[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                if d[i][t] != 0 {
                    let q = d[i][t].div_euclid(p);
                    row_sub(&mut d, &mut u, &mut uinv, i, t, q);
                    if d[i][t] != 0 {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if d[t][j] != 0 {
                    let q = d[t][j].div_euclid(p);
                    col_sub(&mut d, &mut v, &mut vinv, j, t, q);
                    if d[t][j] != 0 {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue 'pivot;
            }
            // Force the divisibility chain: if some trailing entry is not a
            // multiple of the pivot, fold its row in and reduce again.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if d[i][j] % p != 0 {
                        row_sub(&mut d, &mut u, &mut uinv, t, i, -1);
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if d[t][t] < 0 {
            for j in 0..cols {
                d[t][j] = -d[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
            for r in 0..rows {
                uinv[r][t] = -uinv[r][t];
            }
        }
    }

    Snf { u, uinv, d, v, vinv }
}

/// A spanning set (columns) for the integer kernel lattice of `a`.
pub fn integer_kernel(a: &IntMat) -> Vec<Vec<i64>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    if a.is_empty() {
        // Zero-row matrix: everything is in the kernel.
        return (0..cols)
            .map(|j| (0..cols).map(|i| i64::from(i == j)).collect())
            .collect();
    }
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    (rank..cols)
        .map(|j| (0..cols).map(|i| snf.v[i][j]).collect())
        .collect()
}

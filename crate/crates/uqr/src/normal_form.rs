//! Hermite and Smith normal forms over ℤ.

pub type IntMat = Vec<Vec<i128>>;

pub fn identity(n: usize) -> IntMat {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn transpose(a: &IntMat, rows: usize, cols: usize) -> IntMat {
    (0..cols).map(|j| (0..rows).map(|i| a[i][j]).collect()).collect()
}

pub fn mat_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![0i128; m]; n];
    for i in 0..n {
        for t in 0..k {
            let x = a[i][t];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[t][j];
            }
        }
    }
    out
}

/// Column-style Hermite normal form of the column span of `cols` (each a vector of length `n`).
///
/// The result is lower echelon with positive pivots; entries left of a pivot lie in `[0, pivot)`.
pub fn hnf_columns(cols: &[Vec<i128>], n: usize) -> Vec<Vec<i128>> {
    let mut cs: Vec<Vec<i128>> = cols
        .iter()
        .filter(|c| c.iter().any(|&x| x != 0))
        .cloned()
        .collect();
    let mut p = 0usize;
    for row in 0..n {
        if p >= cs.len() {
            break;
        }
        loop {
            let best = (p..cs.len())
                .filter(|&j| cs[j][row] != 0)
                .min_by_key(|&j| cs[j][row].abs());
            let Some(best) = best else { break };
            cs.swap(p, best);
            let mut clean = true;
            for j in p + 1..cs.len() {
                if cs[j][row] != 0 {
                    let q = cs[j][row].div_euclid(cs[p][row]);
                    let piv = cs[p].clone();
                    for (x, y) in cs[j].iter_mut().zip(&piv) {
                        *x -= q * y;
                    }
                    if cs[j][row] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if cs[p][row] == 0 {
            continue;
        }
        if cs[p][row] < 0 {
            for x in cs[p].iter_mut() {
                *x = -*x;
            }
        }
        let piv = cs[p].clone();
        for k in 0..p {
            let q = cs[k][row].div_euclid(piv[row]);
            if q != 0 {
                for (x, y) in cs[k].iter_mut().zip(&piv) {
                    *x -= q * y;
                }
            }
        }
        p += 1;
        cs.retain(|c| c.iter().any(|&x| x != 0));
    }
    cs.truncate(p);
    cs
}

/// `U·A·V = S` with `S` diagonal, diagonal entries nonnegative and dividing their successors.
pub struct Smith {
    pub u: IntMat,
    pub u_inv: IntMat,
    pub s: IntMat,
    pub v: IntMat,
    pub diag: Vec<i128>,
}

pub fn smith(a: &IntMat, rows: usize, cols: usize) -> Smith {
    let mut s = a.clone();
    let mut u = identity(rows);
    let mut u_inv = identity(rows);
    let mut v = identity(cols);
    let r = rows.min(cols);
    let mut t = 0usize;
    'outer: while t < r {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if s[i][j] != 0
                        && best.is_none_or(|(bi, bj)| s[i][j].abs() < s[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'outer };
            if bi != t {
                s.swap(bi, t);
                u.swap(bi, t);
                for row in u_inv.iter_mut() {
                    row.swap(bi, t);
                }
            }
            if bj != t {
                for row in s.iter_mut() {
                    row.swap(bj, t);
                }
                for row in v.iter_mut() {
                    row.swap(bj, t);
                }
            }
            let mut clean = true;
            for i in t + 1..rows {
                let q = s[i][t] / s[t][t];
                if q != 0 {
                    for j in 0..cols {
                        let x = s[t][j];
                        s[i][j] -= q * x;
                    }
                    for j in 0..rows {
                        let x = u[t][j];
                        u[i][j] -= q * x;
                    }
                    for row in u_inv.iter_mut() {
                        let x = row[i];
                        row[t] += q * x;
                    }
                }
                if s[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = s[t][j] / s[t][t];
                if q != 0 {
                    for row in s.iter_mut() {
                        let x = row[t];
                        row[j] -= q * x;
                    }
                    for row in v.iter_mut() {
                        let x = row[t];
                        row[j] -= q * x;
                    }
                }
                if s[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let piv = s[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| s[i][j] % piv != 0));
            if let Some(i) = bad {
                for j in 0..cols {
                    let x = s[i][j];
                    s[t][j] += x;
                }
                for j in 0..rows {
                    let x = u[i][j];
                    u[t][j] += x;
                }
                for row in u_inv.iter_mut() {
                    let x = row[t];
                    row[i] -= x;
                }
                continue;
            }
            break;
        }
        if s[t][t] < 0 {
            for x in s[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
            for row in u_inv.iter_mut() {
                row[t] = -row[t];
            }
        }
        t += 1;
    }
    let diag = (0..r).map(|i| s[i][i]).collect();
    Smith {
        u,
        u_inv,
        s,
        v,
        diag,
    }
}

/// Generators (as columns) of the integer kernel `{x : A x = 0}`.
pub fn kernel(a: &IntMat, rows: usize, cols: usize) -> Vec<Vec<i128>> {
    let sm = smith(a, rows, cols);
    let rank = sm.diag.iter().filter(|&&d| d != 0).count();
    (rank..cols)
        .map(|j| (0..cols).map(|i| sm.v[i][j]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_small_matrix() {
        let a: IntMat = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let sm = smith(&a, 3, 3);
        assert_eq!(sm.diag, vec![2, 6, 12]);
        let usv = mat_mul(&mat_mul(&sm.u, &a), &sm.v);
        assert_eq!(usv, sm.s);
        assert_eq!(mat_mul(&sm.u, &sm.u_inv), identity(3));
    }

    #[test]
    fn hnf_is_canonical() {
        let a = hnf_columns(&[vec![2, 0], vec![0, 3]], 2);
        let b = hnf_columns(&[vec![2, 3], vec![4, 3], vec![0, 6]], 2);
        assert_eq!(a, b);
    }

    #[test]
    fn kernel_of_row() {
        let k = kernel(&vec![vec![2, 3]], 1, 2);
        assert_eq!(k.len(), 1);
        assert_eq!(2 * k[0][0] + 3 * k[0][1], 0);
    }
}

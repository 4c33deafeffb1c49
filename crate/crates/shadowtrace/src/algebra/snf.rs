//! Smith normal form over the integers with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type IntMatrix = Vec<Vec<i64>>;
pub type BigMatrix = Vec<Vec<BigInt>>;

/// `U * m * V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | ...`, all non-negative. `u_inv` is `U^-1`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub rows: usize,
    pub cols: usize,
    pub u: BigMatrix,
    pub u_inv: BigMatrix,
    pub v: BigMatrix,
    pub diagonal: Vec<BigInt>,
}

fn identity(n: usize) -> BigMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn to_i64(m: &BigMatrix) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|x| x.to_i64().expect("transform entry exceeds i64")).collect()).collect()
}

impl Snf {
    pub fn u_i64(&self) -> IntMatrix {
        to_i64(&self.u)
    }
    pub fn v_i64(&self) -> IntMatrix {
        to_i64(&self.v)
    }
    pub fn u_inv_i64(&self) -> IntMatrix {
        to_i64(&self.u_inv)
    }
    pub fn diagonal_i64(&self) -> Vec<i64> {
        self.diagonal.iter().map(|x| x.to_i64().expect("invariant factor exceeds i64")).collect()
    }
    /// Full `rows x cols` matrix `D`.
    pub fn d_matrix(&self) -> IntMatrix {
        let d = self.diagonal_i64();
        (0..self.rows).map(|i| (0..self.cols).map(|j| if i == j && i < d.len() { d[i] } else { 0 }).collect()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let big: BigMatrix = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    smith_normal_form_big(big, m.len(), cols)
}

pub fn smith_normal_form_big(mut a: BigMatrix, rows: usize, cols: usize) -> Snf {
    let mut u = identity(rows);
    let mut u_inv = identity(rows);
    let mut v = identity(cols);
    let n = rows.min(cols);
    let mut diagonal = Vec::with_capacity(n);

    // row_i += q * row_j, tracked on U and U^-1
    let row_add = |a: &mut BigMatrix, u: &mut BigMatrix, u_inv: &mut BigMatrix, i: usize, j: usize, q: &BigInt| {
        if q.is_zero() {
            return;
        }
        for c in 0..a[j].len() {
            let t = &a[j][c] * q;
            a[i][c] += t;
        }
        for c in 0..u[j].len() {
            let t = &u[j][c] * q;
            u[i][c] += t;
        }
        for r in 0..u_inv.len() {
            let t = &u_inv[r][i] * q;
            u_inv[r][j] -= t;
        }
    };
    let col_add = |a: &mut BigMatrix, v: &mut BigMatrix, i: usize, j: usize, q: &BigInt| {
        if q.is_zero() {
            return;
        }
        for r in 0..a.len() {
            let t = &a[r][j] * q;
            a[r][i] += t;
        }
        for r in 0..v.len() {
            let t = &v[r][j] * q;
            v[r][i] += t;
        }
    };

    'outer: for t in 0..n {
        loop {
            // least nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() {
                        let better = match best {
                            None => true,
                            Some((bi, bj)) => a[i][j].abs() < a[bi][bj].abs(),
                        };
                        if better {
                            best = Some((i, j));
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            if pi != t {
                a.swap(pi, t);
                u.swap(pi, t);
                for r in u_inv.iter_mut() {
                    r.swap(pi, t);
                }
            }
            if pj != t {
                for r in a.iter_mut() {
                    r.swap(pj, t);
                }
                for r in v.iter_mut() {
                    r.swap(pj, t);
                }
            }
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_add(&mut a, &mut u, &mut u_inv, i, t, &(-q));
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_add(&mut a, &mut v, j, t, &(-q));
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            let mut fixed = true;
            'search: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        row_add(&mut a, &mut u, &mut u_inv, t, i, &BigInt::one());
                        fixed = false;
                        break 'search;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if a[t][t].is_negative() {
            for c in 0..cols {
                a[t][c] = -&a[t][c];
            }
            for c in 0..rows {
                u[t][c] = -&u[t][c];
            }
            for r in u_inv.iter_mut() {
                r[t] = -&r[t];
            }
        }
        diagonal.push(a[t][t].clone());
    }
    while diagonal.len() < n {
        diagonal.push(BigInt::zero());
    }
    Snf { rows, cols, u, u_inv, v, diagonal }
}

pub fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b.iter())
                        .map(|(x, brow)| x.checked_mul(brow[j]).expect("overflow"))
                        .fold(0i64, |s, x| s.checked_add(x).expect("overflow"))
                })
                .collect()
        })
        .collect()
}

pub fn int_identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

/// Determinant by Bareiss elimination over big integers.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: BigMatrix = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = x / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

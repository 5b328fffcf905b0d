//! Independent exact-rational oracles and random instance generators.
//!
//! The oracles work on dense square `Vec<Vec<Q>>` matrices with naive loops
//! straight from the definitions, sharing no code with the library.

#![allow(dead_code, clippy::needless_range_loop)]

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use summakit::{FactorSequence, LowerTriangular, NormalMatrix};

pub type Q = BigRational;
pub type Dense = Vec<Vec<Q>>;

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(n.into(), d.into())
}

pub fn qi(n: i64) -> Q {
    q(n, 1)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn dense<T: summakit::Scalar>(m: &LowerTriangular<T>) -> Vec<Vec<T>> {
    (0..m.dim())
        .map(|n| (0..m.dim()).map(|v| m.get(n, v)).collect())
        .collect()
}

pub fn dense_normal<T: summakit::Scalar>(m: &NormalMatrix<T>) -> Vec<Vec<T>> {
    dense(m.as_lower())
}

/// `abar_nv = sum_{i=v}^n a_ni`.
pub fn bar(a: &Dense) -> Dense {
    let d = a.len();
    let mut out = vec![vec![Q::zero(); d]; d];
    for n in 0..d {
        for v in 0..=n {
            let mut s = Q::zero();
            for i in v..=n {
                s += &a[n][i];
            }
            out[n][v] = s;
        }
    }
    out
}

/// `ahat_00 = a_00`, `ahat_nv = abar_nv - abar_{n-1,v}` (zero when `v > n - 1` on the right).
pub fn hat(a: &Dense) -> Dense {
    let d = a.len();
    let b = bar(a);
    let mut out = vec![vec![Q::zero(); d]; d];
    out[0][0] = a[0][0].clone();
    for n in 1..d {
        for v in 0..=n {
            out[n][v] = &b[n][v] - &b[n - 1][v];
        }
    }
    out
}

pub fn matmul(x: &Dense, y: &Dense) -> Dense {
    let d = x.len();
    let mut out = vec![vec![Q::zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let mut s = Q::zero();
            for l in 0..d {
                s += &x[i][l] * &y[l][j];
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn apply(m: &Dense, x: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(x).fold(Q::zero(), |s, (a, b)| s + a * b))
        .collect()
}

pub fn is_identity(m: &Dense) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

pub fn partial_sums(a: &[Q]) -> Vec<Q> {
    let mut acc = Q::zero();
    a.iter()
        .map(|x| {
            acc += x;
            acc.clone()
        })
        .collect()
}

pub fn cesaro_dense(order: usize) -> Dense {
    (0..=order)
        .map(|n| {
            (0..=order)
                .map(|v| {
                    if v <= n {
                        q(1, n as i64 + 1)
                    } else {
                        Q::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// `a_nv = p_v / P_n`.
pub fn riesz_dense(p: &[Q], order: usize) -> Dense {
    let cum = partial_sums(p);
    (0..=order)
        .map(|n| {
            (0..=order)
                .map(|v| if v <= n { &p[v] / &cum[n] } else { Q::zero() })
                .collect()
        })
        .collect()
}

/// Closed form `ahat_nv = P_{v-1} p_n / (P_n P_{n-1})` for `n >= 1`.
pub fn riesz_hat_closed(p: &[Q], n: usize, v: usize) -> Q {
    let cum = partial_sums(p);
    let before = if v == 0 {
        Q::zero()
    } else {
        cum[v - 1].clone()
    };
    before * &p[n] / (&cum[n] * &cum[n - 1])
}

/// Random normal rational matrix with small-integer numerators.
pub fn random_rational_normal(r: &mut ChaCha8Rng, order: usize) -> NormalMatrix<Q> {
    let rows = (0..=order)
        .map(|n| {
            (0..=n)
                .map(|v| {
                    let mut num = r.gen_range(-9i64..=9);
                    if v == n && num == 0 {
                        num = 1;
                    }
                    q(num, r.gen_range(1i64..=7))
                })
                .collect()
        })
        .collect();
    summakit::matrix::make_normal(rows, order).unwrap()
}

/// Random rational row-stochastic matrix with positive entries.
pub fn random_rational_stochastic(r: &mut ChaCha8Rng, order: usize) -> NormalMatrix<Q> {
    let rows = (0..=order)
        .map(|n| {
            let w: Vec<Q> = (0..=n).map(|_| qi(r.gen_range(1i64..=9))).collect();
            let total = w.iter().fold(Q::zero(), |s, x| s + x);
            w.into_iter().map(|x| x / &total).collect()
        })
        .collect();
    summakit::matrix::make_normal(rows, order).unwrap()
}

pub fn random_rational_vec(r: &mut ChaCha8Rng, len: usize) -> Vec<Q> {
    (0..len)
        .map(|_| q(r.gen_range(-9i64..=9), r.gen_range(1i64..=5)))
        .collect()
}

/// Nonzero rational factors.
pub fn random_rational_lambda(r: &mut ChaCha8Rng, len: usize) -> FactorSequence<Q> {
    FactorSequence::from_fn(len, |_| {
        let mut num = r.gen_range(-9i64..=9);
        if num == 0 {
            num = 1;
        }
        q(num, r.gen_range(1i64..=5))
    })
}

/// Entries uniform in `[-1, 1]`, diagonal redrawn until `|a_nn| >= 1e-3`.
pub fn random_float_normal(r: &mut ChaCha8Rng, order: usize) -> NormalMatrix<f64> {
    let rows = (0..=order)
        .map(|n| {
            (0..=n)
                .map(|v| loop {
                    let x: f64 = r.gen_range(-1.0..=1.0);
                    if v < n || x.abs() >= 1e-3 {
                        break x;
                    }
                })
                .collect()
        })
        .collect();
    summakit::matrix::make_normal(rows, order).unwrap()
}

/// Row-stochastic with weights uniform in `[1e-3, 1]` and the diagonal weight scaled by `n + 1`.
pub fn random_float_stochastic(r: &mut ChaCha8Rng, order: usize) -> NormalMatrix<f64> {
    let rows = (0..=order)
        .map(|n| {
            let w: Vec<f64> = (0..=n)
                .map(|v| {
                    let u: f64 = r.gen_range(1e-3..=1.0);
                    if v == n {
                        u * (n + 1) as f64
                    } else {
                        u
                    }
                })
                .collect();
            let total: f64 = w.iter().sum();
            w.into_iter().map(|x| x / total).collect()
        })
        .collect();
    summakit::matrix::make_normal(rows, order).unwrap()
}

pub fn random_float_vec(r: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| r.gen_range(-1.0..1.0)).collect()
}

/// Positive weights in `[0.1, 10]`.
pub fn random_weights(r: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| r.gen_range(0.1..10.0)).collect()
}

/// Brute-force condition C16 row maxima, `n = 0..N`.
pub fn c16_oracle(a: &Dense, b: &Dense, lambda: &[Q]) -> Vec<Q> {
    let d = a.len();
    let hb = hat(b);
    let hai = inverse_lower(&hat(a));
    (0..d)
        .map(|n| {
            let mut worst = Q::zero();
            if n < 2 {
                return worst;
            }
            let den = (&b[n][n] / &a[n][n]).abs() * lambda[n].abs();
            for r in 0..=n - 2 {
                let mut num = Q::zero();
                for v in r + 2..=n {
                    num += hb[n][v].abs() * (&hai[v][r] * &lambda[v]).abs();
                }
                let ratio = num / &den;
                if ratio > worst {
                    worst = ratio;
                }
            }
            worst
        })
        .collect()
}

/// Inverse of a lower-triangular matrix by Gauss-Jordan elimination on `[M | I]`.
pub fn inverse_lower(m: &Dense) -> Dense {
    let d = m.len();
    let mut a: Dense = m.clone();
    let mut inv: Dense = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect();
    for c in 0..d {
        let piv = a[c][c].clone();
        for j in 0..d {
            a[c][j] = &a[c][j] / &piv;
            inv[c][j] = &inv[c][j] / &piv;
        }
        for r in 0..d {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..d {
                    let t = &f * &a[c][j];
                    a[r][j] -= t;
                    let t = &f * &inv[c][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    inv
}

/// `sup_v sum_n |c_nv|^k` for integral `k`, with the column sums.
pub fn column_sums_oracle(c: &Dense, k: u32) -> (Q, Vec<Q>) {
    let d = c.len();
    let cols: Vec<Q> = (0..d)
        .map(|v| {
            let mut s = Q::zero();
            for row in c.iter() {
                s += num_traits::pow(row[v].abs(), k as usize);
            }
            s
        })
        .collect();
    let sup = cols
        .iter()
        .cloned()
        .fold(Q::zero(), |a, b| if b > a { b } else { a });
    (sup, cols)
}

/// Unweighted `T_n(1)` coefficients of `Delta-bar x_r`, read off the operator
/// `Bhat Lambda Ahat^{-1}` by removing the `T_n(2)` part (`r <= n - 2`, `v >= r + 2`).
pub fn t1_brackets_oracle(a: &Dense, b: &Dense, lambda: &[Q]) -> Dense {
    let d = a.len();
    let hb = hat(b);
    let hai = inverse_lower(&hat(a));
    let scaled: Dense = (0..d)
        .map(|n| (0..d).map(|v| &hb[n][v] * &lambda[v]).collect())
        .collect();
    let full = matmul(&scaled, &hai);
    let mut out = full.clone();
    for n in 0..d {
        for r in 0..n.saturating_sub(1) {
            for v in r + 2..=n {
                out[n][r] -= &scaled[n][v] * &hai[v][r];
            }
        }
    }
    out
}

/// `sum_n n^{k-1} |bracket_nv|^k` per column, integral `k`.
pub fn weighted_column_sums_oracle(brackets: &Dense, k: u32) -> Vec<Q> {
    let d = brackets.len();
    (0..d)
        .map(|v| {
            let mut s = Q::zero();
            for (n, row) in brackets.iter().enumerate() {
                let w = if n == 0 {
                    Q::one()
                } else {
                    num_traits::pow(qi(n as i64), (k - 1) as usize)
                };
                s += w * num_traits::pow(row[v].abs(), k as usize);
            }
            s
        })
        .collect()
}

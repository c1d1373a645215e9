#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qf(x: f64) -> Q {
    Q::from_float(x).expect("finite")
}

pub fn f(x: &Q) -> f64 {
    x.to_f64().expect("representable")
}

/// Solves a square rational system by Gauss-Jordan elimination.
pub fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
        }
        b[col] = &b[col] / &p;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in 0..n {
                    let delta = &factor * &a[col][j];
                    a[r][j] -= delta;
                }
                let delta = &factor * &b[col];
                b[r] -= delta;
            }
        }
    }
    Some(b)
}

pub struct ExactFit {
    pub alpha: Q,
    pub beta: Q,
    pub sse: Q,
    pub projected: Vec<Q>,
}

/// Least-squares fit of `(p1-1, p2-1, p3, p4)` by the payoff-difference
/// matrix, in exact arithmetic.
pub fn exact_zd_fit(p: &[Q; 4], payoffs: [i64; 4]) -> ExactFit {
    let [r, s, t, pp] = payoffs.map(|v| q(v, 1));
    let c = [
        [&r - &pp, &r - &pp],
        [&s - &pp, &t - &pp],
        [&t - &pp, &s - &pp],
        [Q::zero(), Q::zero()],
    ];
    let target = [&p[0] - Q::one(), &p[1] - Q::one(), p[2].clone(), p[3].clone()];
    let mut gram = vec![vec![Q::zero(); 2]; 2];
    let mut rhs = vec![Q::zero(); 2];
    for (row, y) in c.iter().zip(&target) {
        for i in 0..2 {
            rhs[i] += &row[i] * y;
            for j in 0..2 {
                gram[i][j] += &row[i] * &row[j];
            }
        }
    }
    let x = solve(gram, rhs).expect("full rank");
    let projected: Vec<Q> = c.iter().map(|row| &row[0] * &x[0] + &row[1] * &x[1]).collect();
    let sse = projected.iter().zip(&target).map(|(a, b)| (a - b) * (a - b)).fold(Q::zero(), |acc, v| acc + v);
    ExactFit { alpha: x[0].clone(), beta: x[1].clone(), sse, projected }
}

/// OLS with intercept in exact arithmetic; returns `[intercept, coefficients...]`.
pub fn exact_ols(features: &[Vec<f64>], target: &[f64]) -> Vec<Q> {
    let rows: Vec<Vec<Q>> =
        features.iter().map(|r| std::iter::once(Q::one()).chain(r.iter().map(|&v| qf(v))).collect()).collect();
    let k = rows[0].len();
    let mut gram = vec![vec![Q::zero(); k]; k];
    let mut rhs = vec![Q::zero(); k];
    for (row, &y) in rows.iter().zip(target) {
        let y = qf(y);
        for i in 0..k {
            rhs[i] += &row[i] * &y;
            for j in 0..k {
                gram[i][j] += &row[i] * &row[j];
            }
        }
    }
    solve(gram, rhs).expect("full rank")
}

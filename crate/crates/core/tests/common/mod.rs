//! Independent oracles shared by the integration tests. Nothing here calls
//! the hull, closure or ideal code of the crate.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `x >= lambda g + (1 - lambda) h` for some `lambda in [0, 1]`.
fn dominates_segment(x: &[i64], g: &[i64], h: &[i64]) -> bool {
    // bounds on lambda kept as fractions num/den with den > 0
    let (mut lo, mut hi) = ((0i128, 1i128), (1i128, 1i128));
    for c in 0..x.len() {
        let a = (g[c] - h[c]) as i128;
        let b = (x[c] - h[c]) as i128;
        // a * lambda <= b
        if a == 0 {
            if b < 0 {
                return false;
            }
        } else if a > 0 {
            if b * hi.1 < hi.0 * a {
                hi = (b, a);
            }
        } else {
            // lambda >= b / a = (-b) / (-a)
            let (n, d) = (-b, -a);
            if n * lo.1 > lo.0 * d {
                lo = (n, d);
            }
        }
    }
    lo.0 * hi.1 <= hi.0 * lo.1
}

/// Membership in `conv(pts) + R^2_+`. In the plane the lower boundary is
/// made of segments between input points, so pairs suffice.
pub fn in_newton_2d(x: &[i64], pts: &[Vec<i64>]) -> bool {
    for i in 0..pts.len() {
        for j in i..pts.len() {
            if dominates_segment(x, &pts[i], &pts[j]) {
                return true;
            }
        }
    }
    false
}

fn rat(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Feasibility of `{ lambda >= 0, sum lambda = 1, sum lambda_i pts_i <= x }`
/// by Fourier-Motzkin elimination over the rationals. Exact; only for small
/// instances.
pub fn in_newton_lp(x: &[i64], pts: &[Vec<i64>]) -> bool {
    let k = pts.len();
    if k == 1 {
        return pts[0].iter().zip(x).all(|(g, y)| g <= y);
    }
    // substitute lambda_k = 1 - sum_{i<k} lambda_i; rows are a . lambda <= b
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    for i in 0..k - 1 {
        let mut a = vec![BigRational::zero(); k - 1];
        a[i] = -BigRational::one();
        rows.push((a, BigRational::zero()));
    }
    rows.push((vec![BigRational::one(); k - 1], BigRational::one()));
    for c in 0..x.len() {
        let last = rat(pts[k - 1][c]);
        let a = (0..k - 1).map(|i| rat(pts[i][c]) - &last).collect();
        rows.push((a, rat(x[c]) - last));
    }
    for v in (0..k - 1).rev() {
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for (a, b) in rows {
            if a[v].is_positive() {
                pos.push((a, b));
            } else if a[v].is_negative() {
                neg.push((a, b));
            } else {
                zero.push((a, b));
            }
        }
        let mut next = zero;
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                let sp = an[v].abs();
                let sn = ap[v].clone();
                let a: Vec<BigRational> = ap.iter().zip(an).map(|(p, q)| p * &sp + q * &sn).collect();
                let b = bp * &sp + bn * &sn;
                if !next
                    .iter()
                    .any(|(a2, b2): &(Vec<BigRational>, BigRational)| a2 == &a && b2 == &b)
                {
                    next.push((a, b));
                }
            }
        }
        rows = next;
    }
    rows.iter().all(|(_, b)| !b.is_negative())
}

/// Every exponent vector in `{0..=bound}^n`, lexicographically.
pub fn box_points(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * (bound as usize + 1));
        for p in &out {
            for v in 0..=bound {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Divisibility-based membership in the ideal generated by `gens`.
pub fn generated_by(x: &[i64], gens: &[Vec<i64>]) -> bool {
    gens.iter().any(|g| g.iter().zip(x).all(|(a, b)| a <= b))
}

/// Random cofinite exponent set: one pure power per axis (exponent 1..=max)
/// plus up to `extra` mixed points with entries in `0..=max`.
pub fn random_cofinite(rng: &mut ChaCha8Rng, n: usize, max: u64, extra: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for axis in 0..n {
        let mut v = vec![0; n];
        v[axis] = rng.gen_range(1..=max);
        out.push(v);
    }
    let k = rng.gen_range(0..=extra);
    for _ in 0..k {
        let v: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
        if v.iter().any(|&c| c > 0) {
            out.push(v);
        }
    }
    // shuffle so pure powers are not always first
    for i in (1..out.len()).rev() {
        let j = rng.gen_range(0..=i);
        out.swap(i, j);
    }
    out
}

pub fn to_i64(v: &[u64]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

/// `p`-essential pairs of a plane sequence, from the definition: the scaled
/// points of the pair span a line with strictly positive normal that
/// supports every scaled point, and the unscaled pair has nonzero
/// determinant. 0-based.
pub fn essential_pairs_2d(rows: &[Vec<u64>], p: &[u64]) -> Vec<(usize, usize)> {
    let pts: Vec<Vec<i64>> = rows
        .iter()
        .zip(p)
        .map(|(a, &k)| a.iter().map(|&c| (c * k) as i64).collect())
        .collect();
    let mut out = Vec::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let d = rows[i][0] as i64 * rows[j][1] as i64 - rows[i][1] as i64 * rows[j][0] as i64;
            if d == 0 {
                continue;
            }
            let (a, b) = (&pts[i], &pts[j]);
            let mut nu = [b[1] - a[1], a[0] - b[0]];
            if nu[0] < 0 || (nu[0] == 0 && nu[1] < 0) {
                nu = [-nu[0], -nu[1]];
            }
            if nu[0] <= 0 || nu[1] <= 0 {
                continue;
            }
            let level = nu[0] * a[0] + nu[1] * a[1];
            if pts.iter().all(|q| nu[0] * q[0] + nu[1] * q[1] >= level) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Leibniz-formula determinant over i128.
pub fn leibniz_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i128;
    loop {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let prod: i128 = (0..n).map(|i| m[i][perm[i]] as i128).product();
        total += if inversions % 2 == 0 { prod } else { -prod };
        // next permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).expect("exists");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    total
}

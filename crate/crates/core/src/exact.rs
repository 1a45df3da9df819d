//! Exact integer lattice kernel: exponent vectors, determinants, primitive
//! reduction and unimodular completion.
//!
//! Everything here is exact. Exponent vectors use `u64` coordinates; anything
//! that can grow multiplicatively (determinants, hyperplane normals) is
//! carried as [`BigInt`].

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A lattice point of `Z^n_{>=0}`, the exponent of the monomial `z^a`.
///
/// Ordering is lexicographic on the coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpVec(Vec<u64>);

impl ExpVec {
    pub fn new(coords: Vec<u64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::domain("exponent vector must have dimension >= 1"));
        }
        Ok(ExpVec(coords))
    }

    pub fn zeros(n: usize) -> Self {
        ExpVec(vec![0; n.max(1)])
    }

    /// `k * e_axis` in dimension `n`.
    pub fn pure_power(n: usize, axis: usize, k: u64) -> Self {
        let mut v = vec![0; n];
        v[axis] = k;
        ExpVec(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Sum of the coordinates, `|a|`.
    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, _)| j)
            .collect()
    }

    /// Componentwise `self <= other`, i.e. `z^self` divides `z^other`.
    pub fn divides(&self, other: &ExpVec) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn scale(&self, k: u64) -> ExpVec {
        ExpVec(self.0.iter().map(|&c| c * k).collect())
    }

    /// Componentwise maximum (the exponent of `lcm`).
    pub fn join(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    /// Componentwise truncated difference `max(self - other, 0)`.
    pub fn monus(&self, other: &ExpVec) -> ExpVec {
        ExpVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect(),
        )
    }

    pub fn to_bigint(&self) -> Vec<BigInt> {
        self.0.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Exact dot product with an integer vector.
    pub fn dot(&self, v: &[BigInt]) -> BigInt {
        debug_assert_eq!(self.dim(), v.len());
        self.0.iter().zip(v).map(|(&a, b)| BigInt::from(a) * b).sum()
    }
}

impl Add for &ExpVec {
    type Output = ExpVec;

    fn add(self, rhs: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl From<Vec<u64>> for ExpVec {
    /// Panics on an empty vector; use [`ExpVec::new`] for fallible construction.
    fn from(v: Vec<u64>) -> Self {
        ExpVec::new(v).expect("nonempty exponent vector")
    }
}

impl<const N: usize> From<[u64; N]> for ExpVec {
    fn from(v: [u64; N]) -> Self {
        ExpVec::from(v.to_vec())
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, c) in self.0.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A rectangular integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
    cols: usize,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(IntMatrix { rows, cols })
    }

    pub fn from_exps<'a>(rows: impl IntoIterator<Item = &'a ExpVec>) -> Result<Self> {
        IntMatrix::new(rows.into_iter().map(ExpVec::to_bigint).collect())
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        IntMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        self.rows.swap(i, j);
    }
}

/// Exact determinant of a square matrix.
///
/// Cofactor expansion for `n <= 4`, fraction-free Bareiss elimination above.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.nrows() <= 4 {
        Ok(det_cofactor(m.rows()))
    } else {
        Ok(det_bareiss(m.rows()))
    }
}

pub(crate) fn det_cofactor(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let cols: Vec<usize> = (0..n).collect();
    cofactor(rows, 0, &cols)
}

fn cofactor(rows: &[Vec<BigInt>], r: usize, cols: &[usize]) -> BigInt {
    match cols.len() {
        0 => BigInt::one(),
        1 => rows[r][cols[0]].clone(),
        2 => &rows[r][cols[0]] * &rows[r + 1][cols[1]] - &rows[r][cols[1]] * &rows[r + 1][cols[0]],
        _ => {
            let mut acc = BigInt::zero();
            for (k, &c) in cols.iter().enumerate() {
                if rows[r][c].is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = &rows[r][c] * cofactor(rows, r + 1, &rest);
                if k % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

pub(crate) fn det_bareiss(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank of a list of integer row vectors (fraction-free elimination).
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let (f, g) = (a[r][c].clone(), a[i][c].clone());
            let (top, rest) = a.split_at_mut(i);
            for (x, y) in rest[0][c..ncols].iter_mut().zip(&top[r][c..ncols]) {
                *x = &*x * &f - y * &g;
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Divides `v` by the gcd of its entries. Signs are preserved.
pub fn primitive(v: &[BigInt]) -> Result<Vec<BigInt>> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::domain("primitive() of the zero vector"));
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).is_one()
}

/// For a primitive `rho` in `Z^2`, the vector `eta` with `|det(rho; eta)| = 1`
/// whose first entry is the smallest nonnegative one; ties prefer `det = +1`.
pub fn unimodular_complement(rho: &[BigInt]) -> Result<[BigInt; 2]> {
    if rho.len() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: rho.len(),
        });
    }
    if !is_primitive(rho) {
        return Err(Error::domain(format!(
            "unimodular_complement needs a primitive vector, got ({}, {})",
            rho[0], rho[1]
        )));
    }
    let (r1, r2) = (&rho[0], &rho[1]);
    // det(rho; eta) = r1*y - r2*x
    if r1.is_zero() {
        // rho = (0, +-1): det = -r2*x, so x = -+1; only x = 1 is nonnegative.
        return Ok([BigInt::one(), BigInt::zero()]);
    }
    let ext = r1.extended_gcd(r2);
    // ext.x * r1 + ext.y * r2 = gcd = +-1
    let g = ext.gcd.clone();
    let m = r1.abs();
    let solve = |target: &BigInt| -> (BigInt, BigInt) {
        // r1*y - r2*x = target, with (y, x) = target/g * (ext.x, -ext.y)
        let s = target * &g; // g = +-1 so s = target/g
        let y0 = &ext.x * &s;
        let x0 = -&ext.y * &s;
        let x = x0.mod_floor(&m);
        // shifting x by t*r1 shifts y by t*r2
        let t = (&x - &x0) / r1;
        let y = y0 + t * r2;
        (x, y)
    };
    let (xp, yp) = solve(&BigInt::one());
    let (xm, ym) = solve(&-BigInt::one());
    Ok(if xm < xp { [xm, ym] } else { [xp, yp] })
}

/// Exact determinant of the 2x2 matrix with rows `a`, `b`.
pub fn det2(a: &[BigInt], b: &[BigInt]) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Normal vector to the hyperplane spanned by `n-1` vectors in `Z^n`
/// (generalized cross product via signed cofactors).
pub(crate) fn cross(vectors: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = vectors.len() + 1;
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = vectors
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let d = if minor.len() <= 4 {
                det_cofactor(&minor)
            } else {
                det_bareiss(&minor)
            };
            if (n - 1 + j).is_multiple_of(2) {
                d
            } else {
                -d
            }
        })
        .collect()
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
pub(crate) fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&m(&[vec![5, 0], vec![0, 3]])).unwrap(), BigInt::from(15));
        assert_eq!(det(&m(&[vec![1, 0], vec![0, 1]])).unwrap(), BigInt::from(1));
        assert_eq!(det(&m(&[vec![5, 0], vec![2, 2]])).unwrap(), BigInt::from(10));
    }

    #[test]
    fn det_rejects_non_square() {
        let e = det(&m(&[vec![1, 2, 3], vec![4, 5, 6]])).unwrap_err();
        assert_eq!(e, Error::NotSquare { rows: 2, cols: 3 });
    }

    #[test]
    fn bareiss_matches_cofactor_on_5x5() {
        let rows = [
            vec![2, -1, 0, 3, 1],
            vec![1, 4, 2, 0, -2],
            vec![0, 3, 1, 1, 1],
            vec![5, 0, -1, 2, 0],
            vec![1, 1, 1, 1, 7],
        ];
        let r: Vec<Vec<BigInt>> = rows.iter().map(|x| big(x)).collect();
        assert_eq!(det_bareiss(&r), det_cofactor(&r));
        assert_eq!(det(&m(&rows)).unwrap(), det_cofactor(&r));
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&big(&[2, 8])).unwrap(), big(&[1, 4]));
        assert_eq!(primitive(&big(&[1, 1])).unwrap(), big(&[1, 1]));
        assert_eq!(primitive(&big(&[-6, -9])).unwrap(), big(&[-2, -3]));
        assert!(primitive(&big(&[0, 0])).is_err());
    }

    #[test]
    fn unimodular_complement_examples() {
        let uc = |a, b| unimodular_complement(&big(&[a, b])).unwrap();
        assert_eq!(uc(1, 1), [BigInt::from(0), BigInt::from(1)]);
        assert_eq!(uc(3, 5), [BigInt::from(1), BigInt::from(2)]);
        assert_eq!(uc(1, 0), [BigInt::from(0), BigInt::from(1)]);
        assert!(unimodular_complement(&big(&[2, 4])).is_err());
    }

    #[test]
    fn unimodular_complement_oracle() {
        // extended-Euclid oracle written independently: search small x.
        for a in -9i64..=9 {
            for b in -9i64..=9 {
                let rho = big(&[a, b]);
                if !is_primitive(&rho) {
                    continue;
                }
                let eta = unimodular_complement(&rho).unwrap();
                let d = det2(&rho, &eta);
                assert!(d.abs().is_one(), "{a},{b} -> {eta:?}");
                // no nonnegative x smaller than the returned one admits a solution
                let x_ret = i64::try_from(&eta[0]).unwrap();
                for x in 0..x_ret {
                    for t in [1i64, -1] {
                        // a*y - b*x = t
                        if a != 0 && (t + b * x) % a == 0 {
                            panic!("smaller first entry {x} exists for ({a},{b})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rank_examples() {
        let r: Vec<Vec<BigInt>> = [vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]
            .iter()
            .map(|x| big(x))
            .collect();
        assert_eq!(rank(&r), 2);
    }

    #[test]
    fn cross_is_orthogonal() {
        let v = vec![big(&[1, 2, 3]), big(&[0, 1, 4])];
        let c = cross(&v);
        assert!(dot(&c, &v[0]).is_zero());
        assert!(dot(&c, &v[1]).is_zero());
        assert!(!c.iter().all(Zero::is_zero));
    }

    #[test]
    fn expvec_basics() {
        let a = ExpVec::from([2, 1]);
        let b = ExpVec::from([1, 3]);
        assert_eq!(&a + &b, ExpVec::from([3, 4]));
        assert_eq!(a.join(&b), ExpVec::from([2, 3]));
        assert_eq!(a.monus(&b), ExpVec::from([1, 0]));
        assert!(!a.divides(&b));
        assert!(ExpVec::from([1, 1]).divides(&a));
        assert!(ExpVec::new(vec![]).is_err());
        assert_eq!(a.to_string(), "(2,1)");
    }
}

//! Brute-force exact convex hulls for the small point sets that occur at
//! desk scale: facet enumeration, vertex detection and a pulling
//! triangulation, all over `BigInt`.
//!
//! Point sets handed to these functions must be distinct and span the
//! ambient space `R^k` affinely.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exact::{cross, dot, primitive, rank};

/// Oriented supporting hyperplane `normal . x >= level`, `normal` primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Halfspace {
    pub normal: Vec<BigInt>,
    pub level: BigInt,
    /// indices of the points lying on the hyperplane
    pub members: Vec<usize>,
}

/// All `r`-subsets of `0..k` in lexicographic order.
pub(crate) fn combinations(k: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            if k - i < r - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, k, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= k {
        go(0, k, r, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

/// Hyperplane through `k` points of `R^k`; `None` if they are affinely dependent.
pub(crate) fn hyperplane_through(pts: &[&Vec<BigInt>]) -> Option<Vec<BigInt>> {
    let base = pts[0];
    let diffs: Vec<Vec<BigInt>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let normal = if diffs.is_empty() {
        // k = 1: the hyperplane is a point, normal is +-1
        vec![BigInt::from(1)]
    } else {
        cross(&diffs)
    };
    if normal.iter().all(Zero::is_zero) {
        None
    } else {
        primitive(&normal).ok()
    }
}

/// Facets of the convex hull of a full-dimensional point set in `R^k`.
pub(crate) fn hull_facets(points: &[Vec<BigInt>]) -> Vec<Halfspace> {
    let k = points.first().map_or(0, Vec::len);
    let mut out: Vec<Halfspace> = Vec::new();
    if k == 0 || points.len() < k + 1 {
        return out;
    }
    for subset in combinations(points.len(), k) {
        let chosen: Vec<&Vec<BigInt>> = subset.iter().map(|&i| &points[i]).collect();
        let Some(normal) = hyperplane_through(&chosen) else {
            continue;
        };
        let level = dot(&normal, chosen[0]);
        let (mut above, mut below) = (false, false);
        for p in points {
            let v = dot(&normal, p) - &level;
            if v.is_positive() {
                above = true;
            } else if v.is_negative() {
                below = true;
            }
            if above && below {
                break;
            }
        }
        if above && below {
            continue;
        }
        let (normal, level) = if below {
            (normal.iter().map(|x| -x).collect::<Vec<_>>(), -level)
        } else {
            (normal, level)
        };
        if out.iter().any(|h| h.normal == normal && h.level == level) {
            continue;
        }
        let members = points
            .iter()
            .enumerate()
            .filter(|(_, p)| dot(&normal, p) == level)
            .map(|(i, _)| i)
            .collect();
        out.push(Halfspace { normal, level, members });
    }
    out
}

/// Vertices of the hull of a full-dimensional point set in `R^k`, as indices.
pub(crate) fn hull_vertices(points: &[Vec<BigInt>]) -> Vec<usize> {
    let k = points.first().map_or(0, Vec::len);
    if points.len() == 1 {
        return vec![0];
    }
    if k == 1 {
        let (lo, hi) = min_max_1d(points);
        return if lo == hi { vec![lo] } else { vec![lo, hi] };
    }
    let facets = hull_facets(points);
    (0..points.len())
        .filter(|&i| {
            let normals: Vec<Vec<BigInt>> = facets
                .iter()
                .filter(|h| h.members.contains(&i))
                .map(|h| h.normal.clone())
                .collect();
            normals.len() >= k && rank(&normals) == k
        })
        .collect()
}

fn min_max_1d(points: &[Vec<BigInt>]) -> (usize, usize) {
    let mut lo = 0;
    let mut hi = 0;
    for (i, p) in points.iter().enumerate() {
        if p[0] < points[lo][0] {
            lo = i;
        }
        if p[0] > points[hi][0] {
            hi = i;
        }
    }
    (lo, hi)
}

/// Projects points lying on `normal . x = level` into `R^{k-1}` by dropping a
/// coordinate where the normal is nonzero. Affine-injective on the hyperplane.
pub(crate) fn project_off(points: &[Vec<BigInt>], normal: &[BigInt]) -> Vec<Vec<BigInt>> {
    let drop = normal.iter().rposition(|x| !x.is_zero()).expect("nonzero normal");
    points
        .iter()
        .map(|p| {
            p.iter()
                .enumerate()
                .filter(|(j, _)| *j != drop)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Pulling triangulation of a full-dimensional point set in `R^k` from its
/// lexicographically smallest point. Returns `k`-simplices as `k+1` indices.
pub(crate) fn triangulate(points: &[Vec<BigInt>]) -> Vec<Vec<usize>> {
    let k = points.first().map_or(0, Vec::len);
    if k == 1 {
        let (lo, hi) = min_max_1d(points);
        return vec![vec![lo, hi]];
    }
    let apex = (0..points.len())
        .min_by(|&a, &b| points[a].cmp(&points[b]))
        .expect("nonempty point set");
    let mut out = Vec::new();
    for facet in hull_facets(points) {
        if facet.members.contains(&apex) {
            continue;
        }
        let sub: Vec<Vec<BigInt>> = facet.members.iter().map(|&i| points[i].clone()).collect();
        let projected = project_off(&sub, &facet.normal);
        for simplex in triangulate(&projected) {
            let mut s: Vec<usize> = simplex.iter().map(|&j| facet.members[j]).collect();
            s.push(apex);
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::big;

    #[test]
    fn combinations_counts() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(5, 3).len(), 10);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
        assert_eq!(combinations(4, 2)[5], vec![2, 3]);
    }

    #[test]
    fn square_hull() {
        let pts: Vec<Vec<BigInt>> = [[0, 0], [2, 0], [0, 2], [2, 2], [1, 1]]
            .iter()
            .map(|p| big(p))
            .collect();
        assert_eq!(hull_facets(&pts).len(), 4);
        let mut v = hull_vertices(&pts);
        v.sort();
        assert_eq!(v, vec![0, 1, 2, 3]);
        let tri = triangulate(&pts);
        // pulling from (0,0): two triangles covering the square
        let area: BigInt = tri
            .iter()
            .map(|s| {
                let a: Vec<BigInt> = pts[s[0]].iter().zip(&pts[s[2]]).map(|(x, y)| x - y).collect();
                let b: Vec<BigInt> = pts[s[1]].iter().zip(&pts[s[2]]).map(|(x, y)| x - y).collect();
                crate::exact::det2(&a, &b).abs()
            })
            .sum();
        assert_eq!(area, BigInt::from(8));
    }

    #[test]
    fn cube_triangulation_volume() {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(big(&[x, y, z]));
                }
            }
        }
        let tri = triangulate(&pts);
        let vol: BigInt = tri
            .iter()
            .map(|s| {
                let rows: Vec<Vec<BigInt>> = s[..3]
                    .iter()
                    .map(|&i| pts[i].iter().zip(&pts[s[3]]).map(|(a, b)| a - b).collect())
                    .collect();
                crate::exact::det_cofactor(&rows).abs()
            })
            .sum();
        // normalized volume of the unit cube is 3! = 6
        assert_eq!(vol, BigInt::from(6));
    }
}

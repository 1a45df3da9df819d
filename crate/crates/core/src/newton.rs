//! Newton polyhedra `NP(S) = conv(S + R^n_+)` of finite lattice sets and
//! their compact facets.
//!
//! Only compact facets are kept; each carries a primitive normal with all
//! entries `>= 1`, which doubles as the monomial Rees valuation
//! `b -> normal . b`. Indices into the generating set are 0-based.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::error::{Error, Result};
use crate::exact::{det_bareiss, det_cofactor, dot, primitive, ExpVec};
use crate::hull::{combinations, hull_vertices, hyperplane_through, project_off, triangulate};

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    /// Primitive inward normal, all entries strictly positive.
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub normal: Vec<BigInt>,
    /// `min_{s in S} normal . s`.
    #[serde_as(as = "DisplayFromStr")]
    pub level: BigInt,
    /// Sorted indices of the points of `S` lying on the facet.
    pub on_facet: Vec<usize>,
    /// Indices (one per distinct point) of the facet's vertices, in
    /// lexicographic order of the points.
    pub vertices: Vec<usize>,
}

impl Facet {
    /// The monomial valuation `ord(z^b) = normal . b`.
    pub fn valuation(&self, b: &ExpVec) -> BigInt {
        b.dot(&self.normal)
    }

    pub fn contains_point(&self, b: &ExpVec) -> bool {
        self.valuation(b) == self.level
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    dim: usize,
    points: Vec<ExpVec>,
    facets: Vec<Facet>,
}

fn validate(points: &[ExpVec], n: usize) -> Result<()> {
    if points.is_empty() {
        return Err(Error::domain("Newton polyhedron of an empty set"));
    }
    if n == 0 {
        return Err(Error::domain("ambient dimension must be >= 1"));
    }
    if let Some(p) = points.iter().find(|p| p.dim() != n) {
        return Err(Error::Dimension {
            expected: n,
            found: p.dim(),
        });
    }
    for axis in 0..n {
        let has_pure = points.iter().any(|p| !p.is_zero() && p.support() == [axis]);
        if !has_pure {
            return Err(Error::NotCofinite { axis: axis + 1 });
        }
    }
    Ok(())
}

/// Distinct divisibility-minimal points, lexicographically sorted.
fn minimal_points(points: &[ExpVec]) -> Vec<ExpVec> {
    let mut uniq: Vec<ExpVec> = points.to_vec();
    uniq.sort();
    uniq.dedup();
    let keep: Vec<bool> = uniq
        .iter()
        .map(|p| !uniq.iter().any(|q| q != p && q.divides(p)))
        .collect();
    uniq.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect()
}

/// Builds `NP(S)` with its compact facets. Uses the staircase hull for
/// `n = 2` and the general hull otherwise.
pub fn newton_polyhedron(points: &[ExpVec], n: usize) -> Result<NewtonPolyhedron> {
    validate(points, n)?;
    let supports = match n {
        1 => support_1d(points),
        2 => staircase_supports(points),
        _ => general_supports(points, n),
    };
    Ok(assemble(points, n, supports))
}

/// `NP(S)` through the general-dimension hull even when `n = 2`.
pub fn newton_polyhedron_general(points: &[ExpVec], n: usize) -> Result<NewtonPolyhedron> {
    validate(points, n)?;
    let supports = if n == 1 {
        support_1d(points)
    } else {
        general_supports(points, n)
    };
    Ok(assemble(points, n, supports))
}

fn support_1d(points: &[ExpVec]) -> Vec<(Vec<BigInt>, BigInt)> {
    let min = points.iter().map(|p| p.coords()[0]).min().unwrap_or(0);
    vec![(vec![BigInt::from(1)], BigInt::from(min))]
}

/// Lower convex chain of the minimal points, from `(0, b)` down to `(a, 0)`.
fn staircase_supports(points: &[ExpVec]) -> Vec<(Vec<BigInt>, BigInt)> {
    let stairs = minimal_points(points);
    // minimal points sorted by x1 have strictly decreasing x2
    let mut chain: Vec<&ExpVec> = Vec::new();
    for p in &stairs {
        while chain.len() >= 2 {
            let (o, a) = (chain[chain.len() - 2], chain[chain.len() - 1]);
            if turn(o, a, p) <= 0 {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(p);
    }
    chain
        .windows(2)
        .map(|w| {
            let (p, q) = (w[0].coords(), w[1].coords());
            let dx = BigInt::from(q[0]) - BigInt::from(p[0]);
            let dy = BigInt::from(q[1]) - BigInt::from(p[1]);
            let normal = primitive(&[-dy, dx]).expect("distinct chain points");
            let level = w[0].dot(&normal);
            (normal, level)
        })
        .collect()
}

fn turn(o: &ExpVec, a: &ExpVec, b: &ExpVec) -> i128 {
    let (o, a, b) = (o.coords(), a.coords(), b.coords());
    let ax = a[0] as i128 - o[0] as i128;
    let ay = a[1] as i128 - o[1] as i128;
    let bx = b[0] as i128 - o[0] as i128;
    let by = b[1] as i128 - o[1] as i128;
    ax * by - ay * bx
}

/// Compact facets by enumerating hyperplanes through `n` minimal points and
/// keeping those with strictly positive normals that support every point.
///
/// Translates of the points by large multiples of the unit vectors (the
/// recession cone) never violate a strictly positive normal, so checking the
/// finite set suffices.
fn general_supports(points: &[ExpVec], n: usize) -> Vec<(Vec<BigInt>, BigInt)> {
    let cands: Vec<Vec<BigInt>> = minimal_points(points).iter().map(ExpVec::to_bigint).collect();
    let mut out: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
    for subset in combinations(cands.len(), n) {
        let chosen: Vec<&Vec<BigInt>> = subset.iter().map(|&i| &cands[i]).collect();
        let Some(mut normal) = hyperplane_through(&chosen) else {
            continue;
        };
        if normal.iter().all(Signed::is_negative) {
            normal.iter_mut().for_each(|x| *x = -x.clone());
        }
        if !normal.iter().all(Signed::is_positive) {
            continue;
        }
        let level = dot(&normal, chosen[0]);
        if cands.iter().all(|c| dot(&normal, c) >= level) && !out.iter().any(|(m, _)| *m == normal) {
            out.push((normal, level));
        }
    }
    out
}

fn assemble(points: &[ExpVec], n: usize, supports: Vec<(Vec<BigInt>, BigInt)>) -> NewtonPolyhedron {
    let mut facets: Vec<Facet> = supports
        .into_iter()
        .map(|(normal, level)| {
            let on_facet: Vec<usize> = points
                .iter()
                .enumerate()
                .filter(|(_, p)| p.dot(&normal) == level)
                .map(|(i, _)| i)
                .collect();
            let vertices = facet_vertices(points, &on_facet, &normal, n);
            Facet {
                normal,
                level,
                on_facet,
                vertices,
            }
        })
        .collect();
    facets.sort_by(|a, b| a.normal.cmp(&b.normal));
    NewtonPolyhedron {
        dim: n,
        points: points.to_vec(),
        facets,
    }
}

/// One index per distinct point on the facet.
fn distinct_on_facet(points: &[ExpVec], on_facet: &[usize]) -> Vec<usize> {
    let mut reps: Vec<usize> = Vec::new();
    for &i in on_facet {
        if !reps.iter().any(|&r| points[r] == points[i]) {
            reps.push(i);
        }
    }
    reps.sort_by(|&a, &b| points[a].cmp(&points[b]));
    reps
}

fn facet_vertices(points: &[ExpVec], on_facet: &[usize], normal: &[BigInt], n: usize) -> Vec<usize> {
    let reps = distinct_on_facet(points, on_facet);
    if n == 1 || reps.len() <= 1 {
        return reps;
    }
    let coords: Vec<Vec<BigInt>> = reps.iter().map(|&i| points[i].to_bigint()).collect();
    let projected = project_off(&coords, normal);
    let mut v: Vec<usize> = hull_vertices(&projected).into_iter().map(|j| reps[j]).collect();
    v.sort_by(|&a, &b| points[a].cmp(&points[b]));
    v
}

impl NewtonPolyhedron {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[ExpVec] {
        &self.points
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Normalized volume `n! * vol(conv(facet U {0}))`, summed over a
    /// pulling triangulation of the facet.
    pub fn facet_det(&self, facet: &Facet) -> BigInt {
        if self.dim == 1 {
            return facet.level.clone();
        }
        let reps = distinct_on_facet(&self.points, &facet.on_facet);
        let coords: Vec<Vec<BigInt>> = reps.iter().map(|&i| self.points[i].to_bigint()).collect();
        let projected = project_off(&coords, &facet.normal);
        triangulate(&projected)
            .into_iter()
            .map(|simplex| {
                let rows: Vec<Vec<BigInt>> = simplex.iter().map(|&j| coords[j].clone()).collect();
                let d = if rows.len() <= 4 {
                    det_cofactor(&rows)
                } else {
                    det_bareiss(&rows)
                };
                d.abs()
            })
            .sum()
    }

    /// Normalized volume of `R^n_+ \ NP(S)`, the sum of all facet dets.
    pub fn complement_volume(&self) -> BigInt {
        self.facets.iter().map(|f| self.facet_det(f)).sum()
    }

    pub fn contains(&self, x: &ExpVec) -> bool {
        self.facets.iter().all(|f| f.valuation(x) >= f.level)
    }

    pub fn max_vertex_coord(&self) -> u64 {
        self.facets
            .iter()
            .flat_map(|f| f.vertices.iter())
            .flat_map(|&i| self.points[i].coords().iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// All lattice points of `NP(S)` inside the box `[0, bound]^n`, in
    /// lexicographic order.
    pub fn lattice_points_in(&self, bound: u64) -> Result<Vec<ExpVec>> {
        let need = self.max_vertex_coord();
        if bound < need {
            return Err(Error::domain(format!(
                "box bound {bound} is below the largest vertex coordinate {need}"
            )));
        }
        let mut out = Vec::new();
        let mut x = vec![0u64; self.dim];
        loop {
            let e = ExpVec::from(x.clone());
            if self.contains(&e) {
                out.push(e);
            }
            // odometer, last coordinate fastest
            let mut j = self.dim;
            loop {
                if j == 0 {
                    return Ok(out);
                }
                j -= 1;
                if x[j] < bound {
                    x[j] += 1;
                    break;
                }
                x[j] = 0;
            }
        }
    }

    /// For each choice of the first `n-1` coordinates in `[0, bound]`, the
    /// lattice point of `NP(S)` with the smallest last coordinate. Every
    /// divisibility-minimal lattice point of `NP(S)` is among them when
    /// `bound >= max_vertex_coord()`.
    pub(crate) fn column_minima(&self, bound: u64) -> Vec<ExpVec> {
        let n = self.dim;
        if n == 1 {
            let lvl = self.facets[0].level.to_u64().unwrap_or(0);
            return vec![ExpVec::from(vec![lvl])];
        }
        let mut out = Vec::new();
        let mut prefix = vec![0u64; n - 1];
        loop {
            let mut need = BigInt::zero();
            for f in &self.facets {
                let partial: BigInt = prefix.iter().zip(&f.normal).map(|(&x, r)| BigInt::from(x) * r).sum();
                let rest = &f.level - partial;
                if rest.is_positive() {
                    let last = &f.normal[n - 1];
                    let q = num_integer::Integer::div_ceil(&rest, last);
                    if q > need {
                        need = q;
                    }
                }
            }
            let mut coords = prefix.clone();
            coords.push(need.to_u64().expect("column minimum fits in u64"));
            out.push(ExpVec::from(coords));
            let mut j = n - 1;
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                if prefix[j] < bound {
                    prefix[j] += 1;
                    break;
                }
                prefix[j] = 0;
            }
        }
    }
}

//! Numeric estimates of the current coefficients `C_I`.
//!
//! In a chart adapted to a compact facet the coefficient of an essential
//! index is an integral over `C^{n-1}` of a ratio of monomials in `|t_j|`.
//! For monomial sequences the integrand only depends on the moduli, so the
//! angular part integrates to `(2 pi)^{n-1}` and what is left is a real
//! integral over `(0, inf)^{n-1}`. Each half-line is split at 1 and the tail
//! is mapped back to `(0, 1]` by `r -> 1/r`.
//!
//! This is the only module that touches floating point. Results leave it as
//! `(estimate, abs_error)` pairs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::error::{Error, Result};
use crate::exact::{cross, primitive, unimodular_complement, ExpVec};
use crate::newton::Facet;
use crate::residue::{coffe_constraints, Analysis, MonomialSeq, MultiIndex, Weight};

// Gauss-Kronrod 7/15 nodes on [-1, 1]; xgk[1], xgk[3], xgk[5] and the centre
// are the Gauss nodes. Digits as published in QUADPACK.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// The power on the denominator `(sum_k |t^{c_k}|^2)` of the coefficient
/// integrand. Taken to be the ambient dimension.
pub fn denominator_exponent(n: usize) -> i32 {
    n as i32
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureOptions {
    /// absolute error target for one coefficient
    pub abs_tol: f64,
    /// maximum number of GK15 cells for one 1-D integral
    pub max_cells: usize,
    /// allow the `n = 3` path
    pub experimental: bool,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            abs_tol: 1e-9,
            max_cells: 2000,
            experimental: false,
        }
    }
}

impl QuadratureOptions {
    /// Looser defaults used by the three-variable path.
    pub fn experimental() -> Self {
        QuadratureOptions {
            abs_tol: 1e-4,
            max_cells: 400,
            experimental: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
    pub cells: usize,
    pub converged: bool,
}

fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let err = ((kronrod - gauss) * half).abs();
    (kronrod * half, err)
}

struct Cell {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

/// Globally adaptive GK15 on `[a, b]`: the cell with the largest error is
/// bisected until the summed error meets `tol` or the cell budget runs out.
/// The result is summed in left-to-right order so it does not depend on the
/// refinement history.
pub fn adaptive(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64, max_cells: usize) -> Result<Estimate> {
    let (value, err) = gk15(&mut f, a, b);
    let mut cells = vec![Cell { a, b, value, err }];
    loop {
        let total_err: f64 = cells.iter().map(|c| c.err).sum();
        if !total_err.is_finite() || cells.iter().any(|c| !c.value.is_finite()) {
            return Err(Error::Quadrature(format!("non-finite integrand on [{a}, {b}]")));
        }
        if total_err <= tol || cells.len() + 1 > max_cells.max(1) {
            break;
        }
        let worst = (0..cells.len())
            .max_by(|&i, &j| cells[i].err.total_cmp(&cells[j].err))
            .expect("nonempty");
        let (lo, hi) = (cells[worst].a, cells[worst].b);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // the worst cell cannot be split further in f64
            break;
        }
        cells.swap_remove(worst);
        for (x, y) in [(lo, mid), (mid, hi)] {
            let (v, e) = gk15(&mut f, x, y);
            cells.push(Cell {
                a: x,
                b: y,
                value: v,
                err: e,
            });
        }
    }
    cells.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value: f64 = cells.iter().map(|c| c.value).sum();
    let err: f64 = cells.iter().map(|c| c.err).sum();
    // the GK difference can vanish for polynomial-like pieces; keep a
    // roundoff floor so the bound is never zero
    let floor = 50.0 * f64::EPSILON * cells.iter().map(|c| c.value.abs()).sum::<f64>();
    let abs_error = err.max(floor).max(f64::MIN_POSITIVE);
    Ok(Estimate {
        value,
        abs_error,
        cells: cells.len(),
        converged: err <= tol,
    })
}

/// `prod_j r_j^{num_j} / (sum_k prod_j r_j^{terms[k][j]})^power` evaluated in
/// log space, with each coordinate either `r` itself or `1/u` (tail chart,
/// including the Jacobian `1/u^2`).
fn log_integrand(num: &[i64], terms: &[Vec<i64>], power: i32, x: &[f64], tail: &[bool]) -> f64 {
    let logs: Vec<f64> = x
        .iter()
        .zip(tail)
        .map(|(&v, &t)| if t { -v.ln() } else { v.ln() })
        .collect();
    let mut acc: f64 = num.iter().zip(&logs).map(|(&a, &l)| a as f64 * l).sum();
    let term_logs: Vec<f64> = terms
        .iter()
        .map(|e| e.iter().zip(&logs).map(|(&k, &l)| k as f64 * l).sum())
        .collect();
    let top = term_logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lse = top + term_logs.iter().map(|t| (t - top).exp()).sum::<f64>().ln();
    acc -= f64::from(power) * lse;
    for (&v, &t) in x.iter().zip(tail) {
        if t {
            acc -= 2.0 * v.ln();
        }
    }
    acc.exp()
}

/// `int_0^inf r^num / (sum_k r^{terms_k})^power dr`.
pub fn half_line_integral(num: i64, terms: &[i64], power: i32, opts: &QuadratureOptions) -> Result<Estimate> {
    let min = *terms.iter().min().ok_or_else(|| Error::domain("empty denominator"))?;
    let max = *terms.iter().max().expect("nonempty");
    // near 0 the integrand behaves like r^{num - power*min}, near inf like
    // r^{num - power*max}
    let p = i64::from(power);
    if num - p * min <= -1 || num - p * max >= -1 {
        return Err(Error::domain(format!(
            "integral of r^{num} / (sum r^{terms:?})^{power} diverges"
        )));
    }
    let num_v = [num];
    let term_v: Vec<Vec<i64>> = terms.iter().map(|&t| vec![t]).collect();
    let mut total = Estimate {
        value: 0.0,
        abs_error: 0.0,
        cells: 0,
        converged: true,
    };
    for tail in [false, true] {
        let est = adaptive(
            |x| log_integrand(&num_v, &term_v, power, &[x], &[tail]),
            0.0,
            1.0,
            0.5 * opts.abs_tol,
            opts.max_cells,
        )?;
        total.value += est.value;
        total.abs_error += est.abs_error;
        total.cells += est.cells;
        total.converged &= est.converged;
    }
    Ok(total)
}

/// `int_{(0,inf)^2} r1^num1 r2^num2 / (sum_k r1^{e_k1} r2^{e_k2})^power`,
/// by nested adaptive quadrature over the four chart quadrants.
pub fn quadrant_integral(num: [i64; 2], terms: &[[i64; 2]], power: i32, opts: &QuadratureOptions) -> Result<Estimate> {
    if num.iter().any(|&a| a <= -1) {
        return Err(Error::domain("integrand not integrable at the origin"));
    }
    let term_v: Vec<Vec<i64>> = terms.iter().map(|t| t.to_vec()).collect();
    let mut total = Estimate {
        value: 0.0,
        abs_error: 0.0,
        cells: 0,
        converged: true,
    };
    let inner_tol = opts.abs_tol / 16.0;
    for (t1, t2) in [(false, false), (false, true), (true, false), (true, true)] {
        let mut inner_err = 0.0f64;
        let mut inner_cells = 0usize;
        let mut inner_ok = true;
        let mut failure: Option<Error> = None;
        let outer = adaptive(
            |x| match adaptive(
                |y| log_integrand(&num, &term_v, power, &[x, y], &[t1, t2]),
                0.0,
                1.0,
                inner_tol,
                opts.max_cells,
            ) {
                Ok(e) => {
                    inner_err = inner_err.max(e.abs_error);
                    inner_cells += e.cells;
                    inner_ok &= e.converged;
                    e.value
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            },
            0.0,
            1.0,
            opts.abs_tol / 8.0,
            opts.max_cells,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        let outer = outer?;
        total.value += outer.value;
        // the outer domain has length 1, so the worst inner error bounds the
        // propagated part
        total.abs_error += outer.abs_error + inner_err;
        total.cells += outer.cells + inner_cells;
        total.converged &= outer.converged && inner_ok;
    }
    Ok(total)
}

/// `int_C |s|^{2(N-1)} / (1 + |s|^{2N})^p dA`, numerically. Equals
/// `pi / ((p - 1) N)`.
pub fn closed_form_integral(big_n: u32, p: i32, opts: &QuadratureOptions) -> Result<Estimate> {
    if big_n == 0 || p < 2 {
        return Err(Error::domain("need N >= 1 and p >= 2"));
    }
    let n = i64::from(big_n);
    let mut est = half_line_integral(2 * n - 1, &[0, 2 * n], p, opts)?;
    est.value *= 2.0 * std::f64::consts::PI;
    est.abs_error *= 2.0 * std::f64::consts::PI;
    Ok(est)
}

pub fn closed_form_exact(big_n: u32, p: i32) -> f64 {
    std::f64::consts::PI / (f64::from(p - 1) * f64::from(big_n))
}

/// Chart exponents on a facet of a two-variable Newton polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartExponents {
    pub facet: usize,
    /// positions of the sequence whose scaled points lie on the facet
    pub points: Vec<usize>,
    /// `c_k`, aligned with `points`; `min c = 0`
    pub c: Vec<u64>,
    /// position realizing `c = 0`
    pub origin_index: usize,
}

/// `c_k = eta . (b_k - b_0)` with `eta` a unimodular complement of the facet
/// normal and `b_0` the point minimizing `eta . b`.
pub fn chart_exponents(facet_id: usize, facet: &Facet, scaled: &[ExpVec]) -> Result<ChartExponents> {
    if facet.normal.len() != 2 {
        return Err(Error::Unsupported(format!(
            "chart exponents in {} variables (only n = 2 is derived)",
            facet.normal.len()
        )));
    }
    let eta = unimodular_complement(&facet.normal)?;
    let vals: Vec<BigInt> = facet.on_facet.iter().map(|&i| scaled[i].dot(&eta)).collect();
    let (k0, min) = vals
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(k, v)| (k, v.clone()))
        .ok_or_else(|| Error::domain("facet without points"))?;
    let c = vals
        .iter()
        .map(|v| {
            (v - &min)
                .to_u64()
                .ok_or_else(|| Error::domain("chart exponent overflow"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChartExponents {
        facet: facet_id,
        points: facet.on_facet.clone(),
        c,
        origin_index: facet.on_facet[k0],
    })
}

/// A facet chart in which the facet points are `1, t_1^{c_1}, ..., t_{n-1}^{c_{n-1}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalChart {
    pub origin_index: usize,
    /// `(position, lattice length of the edge to the origin)`
    pub edges: Vec<(usize, u64)>,
}

/// Detects a diagonal chart: the facet holds exactly `n` points and, for some
/// choice of origin, the primitive edge directions to the other points
/// together with the facet normal form a lattice basis.
pub fn diagonal_chart(facet: &Facet, scaled: &[ExpVec]) -> Option<DiagonalChart> {
    let n = facet.normal.len();
    if facet.on_facet.len() != n {
        return None;
    }
    if n == 1 {
        return Some(DiagonalChart {
            origin_index: facet.on_facet[0],
            edges: Vec::new(),
        });
    }
    for &o in &facet.on_facet {
        let origin = scaled[o].to_bigint();
        let mut dirs = Vec::new();
        let mut edges = Vec::new();
        for &k in facet.on_facet.iter().filter(|&&k| k != o) {
            let e: Vec<BigInt> = scaled[k].to_bigint().iter().zip(&origin).map(|(a, b)| a - b).collect();
            let g = e.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            let len = g.to_u64()?;
            dirs.push(primitive(&e).ok()?);
            edges.push((k, len));
        }
        let normal_of_edges = cross(&dirs);
        let neg: Vec<BigInt> = facet.normal.iter().map(|x| -x).collect();
        if normal_of_edges == facet.normal || normal_of_edges == neg {
            return Some(DiagonalChart { origin_index: o, edges });
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericCoefficient {
    pub index: MultiIndex,
    pub estimate: f64,
    pub abs_error: f64,
    pub cells: usize,
    pub converged: bool,
}

/// `C_I` for the pair `(k1, k2)` of a two-variable facet chart:
/// `|c_k1 - c_k2| / pi * int_C |t|^{2(c_k1 + c_k2 - 1)} / (sum_k |t|^{2 c_k})^2 dA`,
/// reduced to `2 |dc| int_0^inf r^{2s - 1} / (sum_k r^{2 c_k})^2 dr`.
pub fn coefficient_integral(
    ce: &ChartExponents,
    index: &MultiIndex,
    opts: &QuadratureOptions,
) -> Result<NumericCoefficient> {
    let pos = index.positions();
    if pos.len() != 2 {
        return Err(Error::Unsupported("coefficient integral needs n = 2".into()));
    }
    let find = |i: usize| {
        ce.points
            .iter()
            .position(|&p| p == i)
            .ok_or_else(|| Error::domain(format!("index {index} is not on facet {}", ce.facet)))
    };
    let c1 = ce.c[find(pos[0])?] as i64;
    let c2 = ce.c[find(pos[1])?] as i64;
    let dc = (c1 - c2).abs();
    if dc == 0 {
        return Err(Error::domain(format!("index {index} has det = 0 on its facet")));
    }
    let terms: Vec<i64> = ce.c.iter().map(|&c| 2 * c as i64).collect();
    let scale = 2.0 * dc as f64;
    let inner = QuadratureOptions {
        abs_tol: opts.abs_tol / scale,
        ..*opts
    };
    let est = half_line_integral(2 * (c1 + c2) - 1, &terms, denominator_exponent(2), &inner)?;
    Ok(NumericCoefficient {
        index: index.clone(),
        estimate: scale * est.value,
        abs_error: scale * est.abs_error,
        cells: est.cells,
        converged: est.converged,
    })
}

/// `C_I` for a simplicial facet with diagonal chart in three variables:
/// `8 c1 c2 int int r1^{2c1-1} r2^{2c2-1} / (1 + r1^{2c1} + r2^{2c2})^3`.
pub fn coefficient_integral_diagonal3(
    chart: &DiagonalChart,
    index: &MultiIndex,
    opts: &QuadratureOptions,
) -> Result<NumericCoefficient> {
    if chart.edges.len() != 2 {
        return Err(Error::Unsupported("diagonal chart is not three-variable".into()));
    }
    let c1 = chart.edges[0].1 as i64;
    let c2 = chart.edges[1].1 as i64;
    let terms = [[0, 0], [2 * c1, 0], [0, 2 * c2]];
    let scale = 8.0 * (c1 * c2) as f64;
    let inner = QuadratureOptions {
        abs_tol: opts.abs_tol / scale,
        ..*opts
    };
    let est = quadrant_integral([2 * c1 - 1, 2 * c2 - 1], &terms, denominator_exponent(3), &inner)?;
    Ok(NumericCoefficient {
        index: index.clone(),
        estimate: scale * est.value,
        abs_error: scale * est.abs_error,
        cells: est.cells,
        converged: est.converged,
    })
}

/// Quadrature estimates for every essential index where a chart is
/// available. Two variables: all facets. Three variables (experimental):
/// simplicial facets with a diagonal chart; others are left out.
pub fn numeric_coefficients(
    seq: &MonomialSeq,
    p: &Weight,
    opts: &QuadratureOptions,
) -> Result<Vec<NumericCoefficient>> {
    let an = Analysis::new(seq, p)?;
    numeric_from_analysis(&an, opts)
}

pub(crate) fn numeric_from_analysis(an: &Analysis, opts: &QuadratureOptions) -> Result<Vec<NumericCoefficient>> {
    let n = an.seq.dim();
    let mut out = Vec::new();
    match n {
        2 => {
            for (fi, facet) in an.np.facets().iter().enumerate() {
                let ce = chart_exponents(fi, facet, &an.scaled)?;
                for e in an.on_facet(fi) {
                    out.push(coefficient_integral(&ce, &e.index, opts)?);
                }
            }
        }
        3 if opts.experimental => {
            for (fi, facet) in an.np.facets().iter().enumerate() {
                if let Some(chart) = diagonal_chart(facet, &an.scaled) {
                    for e in an.on_facet(fi) {
                        out.push(coefficient_integral_diagonal3(&chart, &e.index, opts)?);
                    }
                }
            }
        }
        3 => {
            return Err(Error::Unsupported(
                "three-variable coefficients need the experimental flag".into(),
            ))
        }
        _ => return Err(Error::Unsupported(format!("numeric coefficients in {n} variables"))),
    }
    out.sort_by(|a, b| a.index.cmp(&b.index));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FacetCheck {
    Checked { residual: f64, abs_error: f64 },
    Skipped { reason: String },
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FacetResidual {
    pub facet: usize,
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub normal: Vec<BigInt>,
    pub check: FacetCheck,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoffeValidation {
    pub coefficients: Vec<NumericCoefficient>,
    pub facets: Vec<FacetResidual>,
}

impl CoffeValidation {
    pub fn max_residual(&self) -> Option<f64> {
        self.facets
            .iter()
            .filter_map(|f| match f.check {
                FacetCheck::Checked { residual, .. } => Some(residual.abs()),
                FacetCheck::Skipped { .. } => None,
            })
            .reduce(f64::max)
    }
}

/// Residual `sum_I C_I |det((pA)_I)| - det(tau)` of each facet relation with
/// numeric `C_I`. In three variables this only reports numbers; no claim is
/// attached to them.
pub fn validate_coffe_numeric(seq: &MonomialSeq, p: &Weight, opts: &QuadratureOptions) -> Result<CoffeValidation> {
    let an = Analysis::new(seq, p)?;
    let coefficients = numeric_from_analysis(&an, opts)?;
    let relations = coffe_constraints(seq, p)?;
    let facets = relations
        .iter()
        .map(|rel| {
            let mut residual = -rel.rhs.to_f64().unwrap_or(f64::NAN);
            let mut abs_error = 0.0;
            for term in &rel.terms {
                let Some(c) = coefficients.iter().find(|c| c.index == term.index) else {
                    return FacetResidual {
                        facet: rel.facet,
                        normal: rel.normal.clone(),
                        check: FacetCheck::Skipped {
                            reason: "no chart for this facet".into(),
                        },
                    };
                };
                let w = term.scaled_det.abs().to_f64().unwrap_or(f64::NAN);
                residual += w * c.estimate;
                abs_error += w * c.abs_error;
            }
            FacetResidual {
                facet: rel.facet,
                normal: rel.normal.clone(),
                check: FacetCheck::Checked {
                    residual,
                    abs_error: abs_error + 4.0 * f64::EPSILON * rel.rhs.to_f64().unwrap_or(0.0).abs(),
                },
            }
        })
        .collect();
    Ok(CoffeValidation { coefficients, facets })
}

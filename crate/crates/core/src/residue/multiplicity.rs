//! Multiplicities `e^p = sum C_I |det A_I|` and the per-facet relations
//! `sum_I C_I |det((pA)_I)| = det(tau)` that constrain the coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use super::{Analysis, MonomialSeq, MultiIndex, Weight};
use crate::error::Result;
use crate::exact::det;
use crate::exact::IntMatrix;
use crate::quadrature::{numeric_from_analysis, QuadratureOptions};

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTerm {
    pub index: MultiIndex,
    /// `|det((pA)_I)|`
    #[serde_as(as = "DisplayFromStr")]
    pub scaled_det: BigInt,
    /// `|det(A_I)|`
    #[serde_as(as = "DisplayFromStr")]
    pub unscaled_det: BigInt,
    /// `prod_{j in I} p_j`, so `scaled_det = weight_product * unscaled_det`
    #[serde_as(as = "DisplayFromStr")]
    pub weight_product: BigInt,
}

/// One relation per compact facet of `NP(pA)`.
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetRelation {
    pub facet: usize,
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub normal: Vec<BigInt>,
    pub terms: Vec<RelationTerm>,
    /// `det(tau)`
    #[serde_as(as = "DisplayFromStr")]
    pub rhs: BigInt,
}

impl FacetRelation {
    /// Coefficients and right-hand side divided by their common gcd.
    pub fn reduced(&self) -> (Vec<BigInt>, BigInt) {
        let g = self
            .terms
            .iter()
            .fold(self.rhs.clone(), |acc, t| acc.gcd(&t.scaled_det));
        let g = if g.is_zero() { BigInt::one() } else { g };
        (self.terms.iter().map(|t| &t.scaled_det / &g).collect(), &self.rhs / &g)
    }

    /// Whether reading the relation with unscaled determinants would give
    /// different coefficients.
    pub fn readings_differ(&self) -> bool {
        self.terms.iter().any(|t| t.scaled_det != t.unscaled_det)
    }

    /// `sum c_I |det((pA)_I)| - det(tau)` for coefficients aligned with `terms`.
    pub fn residual(&self, coeffs: &[BigRational]) -> BigRational {
        let lhs = self.terms.iter().zip(coeffs).fold(BigRational::zero(), |acc, (t, c)| {
            acc + c * BigRational::from_integer(t.scaled_det.clone())
        });
        lhs - BigRational::from_integer(self.rhs.clone())
    }

    /// `det(tau) / pi` when every term has the same weight product `pi`:
    /// then the relation fixes `sum_I C_I |det A_I|` over this facet.
    pub fn implied_unscaled_total(&self) -> Option<BigRational> {
        let first = self.terms.first()?;
        if self.terms.iter().all(|t| t.weight_product == first.weight_product) {
            Some(BigRational::new(self.rhs.clone(), first.weight_product.clone()))
        } else {
            None
        }
    }

    /// Human-readable form, e.g. `45*C{1,2} + 225*C{1,4} + 180*C{2,4} = 225`.
    pub fn display(&self) -> String {
        let lhs: Vec<String> = self
            .terms
            .iter()
            .map(|t| format!("{}*C{}", t.scaled_det, t.index))
            .collect();
        format!("{} = {}", lhs.join(" + "), self.rhs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericTotal {
    pub estimate: f64,
    pub abs_error: f64,
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Multiplicity {
    Exact {
        #[serde_as(as = "DisplayFromStr")]
        value: BigRational,
    },
    /// Some coefficient is only known through its facet relation.
    Undetermined {
        constraints: Vec<FacetRelation>,
        /// the total forced by the relations, when they force one
        #[serde_as(as = "Option<DisplayFromStr>")]
        implied: Option<BigRational>,
        numeric: Option<NumericTotal>,
    },
}

impl Multiplicity {
    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Multiplicity::Exact { value } => Some(value),
            Multiplicity::Undetermined { .. } => None,
        }
    }

    /// The exact value, or the one implied by the facet relations.
    pub fn determined(&self) -> Option<&BigRational> {
        match self {
            Multiplicity::Exact { value } => Some(value),
            Multiplicity::Undetermined { implied, .. } => implied.as_ref(),
        }
    }
}

fn abs_det_of(rows: Vec<&crate::exact::ExpVec>) -> BigInt {
    let m = IntMatrix::from_exps(rows).expect("rectangular");
    det(&m).expect("square").abs()
}

pub(crate) fn relations_from_analysis(an: &Analysis) -> Vec<FacetRelation> {
    an.np
        .facets()
        .iter()
        .enumerate()
        .map(|(fi, facet)| {
            let terms = an
                .on_facet(fi)
                .map(|e| {
                    let pos = e.index.positions();
                    RelationTerm {
                        index: e.index.clone(),
                        scaled_det: abs_det_of(pos.iter().map(|&i| &an.scaled[i]).collect()),
                        unscaled_det: e.det.abs(),
                        weight_product: pos.iter().map(|&i| BigInt::from(an.weight.entries()[i])).product(),
                    }
                })
                .collect();
            FacetRelation {
                facet: fi,
                normal: facet.normal.clone(),
                terms,
                rhs: an.np.facet_det(facet),
            }
        })
        .collect()
}

pub fn coffe_constraints(seq: &MonomialSeq, p: &Weight) -> Result<Vec<FacetRelation>> {
    Ok(relations_from_analysis(&Analysis::new(seq, p)?))
}

fn from_analysis(an: &Analysis) -> Multiplicity {
    if an.essential.iter().all(|e| an.coefficient_known(e)) {
        let value = an.essential.iter().map(|e| e.det.abs()).sum::<BigInt>();
        return Multiplicity::Exact {
            value: BigRational::from_integer(value),
        };
    }
    let constraints = relations_from_analysis(an);
    // the relations are only established in two variables
    let implied = if an.seq.dim() == 2 {
        constraints
            .iter()
            .map(FacetRelation::implied_unscaled_total)
            .sum::<Option<BigRational>>()
    } else {
        None
    };
    Multiplicity::Undetermined {
        constraints,
        implied,
        numeric: None,
    }
}

/// `e^p(z^A)`: exact when every coefficient is known, otherwise the
/// coefficient relations (and the total they imply, if any).
pub fn multiplicity_ep(seq: &MonomialSeq, p: &Weight) -> Result<Multiplicity> {
    Ok(from_analysis(&Analysis::new(seq, p)?))
}

/// As [`multiplicity_ep`], adding a quadrature estimate of the total when it
/// is undetermined.
pub fn multiplicity_with_numeric(seq: &MonomialSeq, p: &Weight, opts: &QuadratureOptions) -> Result<Multiplicity> {
    let an = Analysis::new(seq, p)?;
    let mut result = from_analysis(&an);
    if let Multiplicity::Undetermined { numeric, .. } = &mut result {
        let coeffs = numeric_from_analysis(&an, opts)?;
        let mut total = NumericTotal {
            estimate: 0.0,
            abs_error: 0.0,
        };
        for e in &an.essential {
            let w = e.det.abs().to_f64().unwrap_or(f64::NAN);
            if an.coefficient_known(e) {
                total.estimate += w;
            } else if let Some(c) = coeffs.iter().find(|c| c.index == e.index) {
                total.estimate += w * c.estimate;
                total.abs_error += w * c.abs_error;
            } else {
                return Ok(result);
            }
        }
        *numeric = Some(total);
    }
    Ok(result)
}

//! Command reports: a serde tree (JSON, `schema: 1`) and a plain-text view.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::ideal::MonomialIdeal;
use crate::quadrature::{CoffeValidation, FacetCheck};
use crate::residue::{
    CurrentEntry, FacetRelation, IndependenceReport, MultiIndex, Multiplicity, SweepResult, TheoremAReport, Weight,
};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub input: InputEcho,
    pub result: ResultBody,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub source: String,
    /// bundled fixture name, when the input is one
    pub fixture: Option<String>,
    pub dim: usize,
    pub generators: Vec<Vec<u64>>,
    pub weight_name: Option<String>,
    pub weight: Option<Weight>,
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FacetInfo {
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub normal: Vec<BigInt>,
    #[serde_as(as = "DisplayFromStr")]
    pub level: BigInt,
    /// 1-based positions of the points on the facet
    pub on_facet: Vec<usize>,
    /// 1-based positions of the facet's vertices
    pub vertices: Vec<usize>,
    #[serde_as(as = "DisplayFromStr")]
    pub det: BigInt,
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EssentialInfo {
    pub index: MultiIndex,
    #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
    pub witnesses: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublishedCheck {
    pub published: MonomialIdeal,
    pub agrees: bool,
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResultBody {
    Polytope {
        points: Vec<Vec<u64>>,
        facets: Vec<FacetInfo>,
        #[serde_as(as = "DisplayFromStr")]
        complement_volume: BigInt,
    },
    Valuations {
        #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
        valuations: Vec<Vec<BigInt>>,
    },
    Essential {
        indices: Vec<EssentialInfo>,
    },
    Current {
        entries: Vec<CurrentEntry>,
        symbolic: Vec<String>,
    },
    Annihilator {
        ideal: MonomialIdeal,
        display: String,
    },
    Multiplicity {
        multiplicity: Multiplicity,
    },
    TheoremA {
        report: TheoremAReport,
        published: Option<PublishedCheck>,
    },
    Independence {
        report: IndependenceReport,
    },
    Sweep {
        result: SweepResult,
        distinct: usize,
    },
    Coffe {
        relations: Vec<FacetRelation>,
        reduced: Vec<String>,
        readings_differ: bool,
        numeric: Option<CoffeValidation>,
    },
    Render {
        path: Option<String>,
        bytes: usize,
    },
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str(s)
    }
}

fn weight_label(input: &InputEcho) -> String {
    match (&input.weight_name, &input.weight) {
        (Some(n), Some(w)) => format!("{n} = {w}"),
        (None, Some(w)) => w.to_string(),
        _ => "-".into(),
    }
}

fn vec_str(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = self
            .input
            .fixture
            .as_ref()
            .map_or(String::new(), |x| format!(" [fixture {x}]"));
        writeln!(
            f,
            "{} on {}{}, weight {}",
            self.command,
            self.input.source,
            tag,
            weight_label(&self.input)
        )?;
        match &self.result {
            ResultBody::Polytope {
                facets,
                complement_volume,
                ..
            } => {
                writeln!(f, "{} compact facet(s)", facets.len())?;
                for fc in facets {
                    writeln!(
                        f,
                        "  normal {} level {} points {:?} vertices {:?} det {}",
                        vec_str(&fc.normal),
                        fc.level,
                        fc.on_facet,
                        fc.vertices,
                        fc.det
                    )?;
                }
                writeln!(f, "complement volume {complement_volume}")
            }
            ResultBody::Valuations { valuations } => {
                for v in valuations {
                    writeln!(f, "  {}", vec_str(v))?;
                }
                Ok(())
            }
            ResultBody::Essential { indices } => {
                for e in indices {
                    let w: Vec<String> = e.witnesses.iter().map(|v| vec_str(v)).collect();
                    writeln!(f, "  {} on facet {}", e.index, w.join(", "))?;
                }
                Ok(())
            }
            ResultBody::Current { entries, symbolic } => {
                for (e, s) in entries.iter().zip(symbolic) {
                    match e.reason {
                        Some(r) => writeln!(f, "  R{} = 0  ({})", e.index, reason_text(r))?,
                        None => writeln!(f, "  R{} = {s}", e.index)?,
                    }
                    if let Some(crate::residue::Coefficient::Numeric {
                        estimate, abs_error, ..
                    }) = &e.coeff
                    {
                        writeln!(f, "      C{} ~ {estimate:.12} +- {abs_error:.1e}", e.index)?;
                    }
                }
                Ok(())
            }
            ResultBody::Annihilator { display, .. } => writeln!(f, "ann = {display}"),
            ResultBody::Multiplicity { multiplicity } => match multiplicity {
                Multiplicity::Exact { value } => writeln!(f, "e = {value}"),
                Multiplicity::Undetermined {
                    constraints,
                    implied,
                    numeric,
                } => {
                    writeln!(f, "e undetermined; coefficient relations:")?;
                    for c in constraints {
                        writeln!(f, "  {}", c.display())?;
                    }
                    if let Some(v) = implied {
                        writeln!(f, "relations imply e = {v}")?;
                    }
                    if let Some(n) = numeric {
                        writeln!(f, "numeric e ~ {:.12} +- {:.1e}", n.estimate, n.abs_error)?;
                    }
                    Ok(())
                }
            },
            ResultBody::TheoremA { report, published } => {
                writeln!(f, "left  = {}", report.left)?;
                writeln!(f, "ann   = {}", report.ann)?;
                writeln!(f, "right = {}", report.right)?;
                writeln!(
                    f,
                    "left in ann: {}  strict: {}  ann in right: {}  equal: {}  complete intersection: {}",
                    report.left_included,
                    report.left_strict,
                    report.right_included,
                    report.right_equal,
                    report.complete_intersection
                )?;
                writeln!(f, "closure(a^n) in ann: {}", report.closure_power_in_ann)?;
                if let Some(p) = published {
                    if p.agrees {
                        writeln!(f, "left ideal agrees with the published list {}", p.published)?;
                    } else {
                        writeln!(f, "DISCREPANCY: published list is {}", p.published)?;
                    }
                }
                Ok(())
            }
            ResultBody::Independence { report } => {
                writeln!(f, "regular sequence: {}", report.regular)?;
                writeln!(f, "current independent of p: {}", report.current_independent)?;
                writeln!(f, "annihilator independent of p: {}", report.ann_independent)?;
                if let Some((a, b)) = &report.current_witness {
                    writeln!(f, "currents differ at {a} and {b}")?;
                }
                if let Some((a, b)) = &report.ann_witness {
                    writeln!(f, "annihilators differ at {a} and {b}")?;
                }
                Ok(())
            }
            ResultBody::Sweep { result, distinct } => {
                writeln!(
                    f,
                    "{distinct} distinct annihilator ideals over {} weights (p_max = {})",
                    result.evaluated, result.p_max
                )?;
                for e in &result.entries {
                    writeln!(f, "  {}  first at {}  ({} weights)", e.ideal, e.weight, e.count)?;
                }
                Ok(())
            }
            ResultBody::Coffe {
                relations,
                reduced,
                readings_differ,
                numeric,
            } => {
                for (r, red) in relations.iter().zip(reduced) {
                    writeln!(f, "  facet {}: {}   (reduced: {red})", vec_str(&r.normal), r.display())?;
                }
                if *readings_differ {
                    writeln!(f, "note: scaled and unscaled determinants differ for this weight")?;
                }
                if let Some(v) = numeric {
                    for c in &v.coefficients {
                        writeln!(f, "  C{} ~ {:.12} +- {:.1e}", c.index, c.estimate, c.abs_error)?;
                    }
                    for r in &v.facets {
                        match &r.check {
                            FacetCheck::Checked { residual, abs_error } => writeln!(
                                f,
                                "  facet {} residual {residual:.3e} (+- {abs_error:.1e})",
                                vec_str(&r.normal)
                            )?,
                            FacetCheck::Skipped { reason } => {
                                writeln!(f, "  facet {} skipped: {reason}", vec_str(&r.normal))?
                            }
                        }
                    }
                }
                Ok(())
            }
            ResultBody::Render { path, bytes } => match path {
                Some(p) => writeln!(f, "wrote {bytes} bytes to {p}"),
                None => writeln!(f, "{bytes} bytes"),
            },
        }
    }
}

fn reason_text(r: crate::residue::VanishReason) -> &'static str {
    match r {
        crate::residue::VanishReason::ZeroDeterminant => "zero determinant",
        crate::residue::VanishReason::NotOnCommonFacet => "not on a common facet",
    }
}

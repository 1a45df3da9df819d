//! The monomial residue-current engine.
//!
//! For a cofinite monomial sequence `A` and weight `p` the entry `R^p_I` is
//! nonzero exactly when `I` is p-essential: the scaled points `p_j a^j`,
//! `j in I`, lie on one compact facet of `NP(pA)` and `det(A_I) != 0`.
//! Essentiality is decided on the scaled points while the exponents
//! `alpha^I = sum_{j in I} a^j` use the unscaled ones.

mod independence;
mod multiplicity;
mod sweep;
mod theorem_a;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

pub use independence::{
    ann_independent_of_p, current_independent_of_p, independence_report, is_regular_sequence, isolating_weight,
    proof_weights, IndependenceReport,
};
pub use multiplicity::{
    coffe_constraints, multiplicity_ep, multiplicity_with_numeric, FacetRelation, Multiplicity, NumericTotal,
    RelationTerm,
};
pub use sweep::{enumerate_annihilators, SweepEntry, SweepOptions, SweepResult, SWEEP_LIMIT};
pub use theorem_a::{theorem_a_report, TheoremAReport};

use crate::error::{Error, Result};
use crate::exact::{det, ExpVec, IntMatrix};
use crate::hull::combinations;
use crate::ideal::MonomialIdeal;
use crate::newton::{newton_polyhedron, NewtonPolyhedron};
use crate::quadrature;

/// The sequence `z^A = (z^{a^1}, ..., z^{a^m})`. Order matters: current
/// entries are indexed by subsets of positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialSeq {
    dim: usize,
    exps: Vec<ExpVec>,
}

impl MonomialSeq {
    pub fn new(dim: usize, exps: Vec<ExpVec>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("ambient dimension must be >= 1"));
        }
        if exps.is_empty() {
            return Err(Error::domain("empty monomial sequence"));
        }
        if let Some(bad) = exps.iter().find(|a| a.dim() != dim) {
            return Err(Error::Dimension {
                expected: dim,
                found: bad.dim(),
            });
        }
        if let Some(j) = exps.iter().position(ExpVec::is_zero) {
            return Err(Error::domain(format!(
                "generator {} is the constant monomial 1, so V(z^A) is empty",
                j + 1
            )));
        }
        for axis in 0..dim {
            if !exps.iter().any(|a| a.support() == [axis]) {
                return Err(Error::NotCofinite { axis: axis + 1 });
            }
        }
        Ok(MonomialSeq { dim, exps })
    }

    pub fn from_rows(rows: &[&[u64]]) -> Result<Self> {
        let dim = rows.first().map_or(0, |r| r.len());
        let exps = rows
            .iter()
            .map(|r| ExpVec::new(r.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        MonomialSeq::new(dim, exps)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exps(&self) -> &[ExpVec] {
        &self.exps
    }

    /// The ideal `a(z^A)`.
    pub fn ideal(&self) -> MonomialIdeal {
        MonomialIdeal::from_gens(self.exps.clone()).expect("nonempty sequence")
    }

    /// `det(A_I)` with rows `a^{i_1}, ..., a^{i_n}`.
    pub fn det(&self, index: &MultiIndex) -> BigInt {
        let m = IntMatrix::from_exps(index.positions().iter().map(|&i| &self.exps[i])).expect("rectangular");
        det(&m).expect("square")
    }

    pub fn alpha(&self, index: &MultiIndex) -> ExpVec {
        index
            .positions()
            .iter()
            .fold(ExpVec::zeros(self.dim), |acc, &i| &acc + &self.exps[i])
    }

    /// All `n`-subsets of the positions, lexicographically.
    pub fn multi_indices(&self) -> Vec<MultiIndex> {
        combinations(self.len(), self.dim).into_iter().map(MultiIndex).collect()
    }
}

/// A weight `p in N^m`, all entries `>= 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<u64>);

impl Weight {
    pub fn new(p: Vec<u64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::domain("empty weight"));
        }
        if let Some(j) = p.iter().position(|&x| x == 0) {
            return Err(Error::domain(format!(
                "weight entry {} is 0; entries must be >= 1",
                j + 1
            )));
        }
        Ok(Weight(p))
    }

    pub fn ones(m: usize) -> Self {
        Weight(vec![1; m])
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&x| x == 1)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A strictly increasing `n`-subset of positions. Stored 0-based, displayed
/// 1-based as `{1,4}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(positions: Vec<usize>, m: usize, n: usize) -> Result<Self> {
        if positions.len() != n {
            return Err(Error::domain(format!(
                "multi-index has {} entries, expected {n}",
                positions.len()
            )));
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("multi-index entries must be strictly increasing"));
        }
        if positions.last().is_some_and(|&i| i >= m) {
            return Err(Error::domain(format!("multi-index entry out of range 1..={m}")));
        }
        Ok(MultiIndex(positions))
    }

    /// From 1-based positions, e.g. `&[1, 4]`.
    pub fn one_based(positions: &[usize]) -> Self {
        MultiIndex(positions.iter().map(|&i| i - 1).collect())
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.contains(&j)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn scaled_points(seq: &MonomialSeq, p: &Weight) -> Result<Vec<ExpVec>> {
    if p.len() != seq.len() {
        return Err(Error::Dimension {
            expected: seq.len(),
            found: p.len(),
        });
    }
    Ok(seq.exps.iter().zip(p.entries()).map(|(a, &k)| a.scale(k)).collect())
}

/// A p-essential multi-index together with the facets of `NP(pA)` that
/// witness it (positions into `NewtonPolyhedron::facets`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Essential {
    pub index: MultiIndex,
    pub facets: Vec<usize>,
    /// `det(A_I)`, unscaled
    pub det: BigInt,
}

/// Shared intermediate data for one `(A, p)` pair.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub seq: MonomialSeq,
    pub weight: Weight,
    pub scaled: Vec<ExpVec>,
    pub np: NewtonPolyhedron,
    pub essential: Vec<Essential>,
}

impl Analysis {
    pub fn new(seq: &MonomialSeq, p: &Weight) -> Result<Self> {
        let scaled = scaled_points(seq, p)?;
        let np = newton_polyhedron(&scaled, seq.dim)?;
        let mut essential: Vec<Essential> = Vec::new();
        for (fi, facet) in np.facets().iter().enumerate() {
            for sub in combinations(facet.on_facet.len(), seq.dim) {
                let index = MultiIndex(sub.iter().map(|&k| facet.on_facet[k]).collect());
                let d = seq.det(&index);
                if d.is_zero() {
                    continue;
                }
                match essential.iter_mut().find(|e| e.index == index) {
                    Some(e) => e.facets.push(fi),
                    None => essential.push(Essential {
                        index,
                        facets: vec![fi],
                        det: d,
                    }),
                }
            }
        }
        essential.sort_by(|a, b| a.index.cmp(&b.index));
        Ok(Analysis {
            seq: seq.clone(),
            weight: p.clone(),
            scaled,
            np,
            essential,
        })
    }

    pub fn is_essential(&self, index: &MultiIndex) -> bool {
        self.essential.iter().any(|e| &e.index == index)
    }

    /// Essential indices witnessed by facet `fi`.
    pub fn on_facet(&self, fi: usize) -> impl Iterator<Item = &Essential> {
        self.essential.iter().filter(move |e| e.facets.contains(&fi))
    }

    /// Whether `C_I = 1` is known exactly: `I` is the only essential index on
    /// each witnessing facet, and the facet chart is diagonal (automatic for
    /// `n <= 2`; for larger `n` the facet must hold exactly `n` scaled points
    /// whose edge directions form a lattice basis).
    fn coefficient_known(&self, e: &Essential) -> bool {
        e.facets.iter().all(|&fi| {
            if self.on_facet(fi).count() != 1 {
                return false;
            }
            let facet = &self.np.facets()[fi];
            match self.seq.dim {
                1 | 2 => true,
                _ => facet.on_facet.len() == self.seq.dim && quadrature::diagonal_chart(facet, &self.scaled).is_some(),
            }
        })
    }

    pub fn annihilator(&self) -> MonomialIdeal {
        let parts: Vec<MonomialIdeal> = self
            .essential
            .iter()
            .map(|e| MonomialIdeal::pure_powers(&self.seq.alpha(&e.index)))
            .collect();
        MonomialIdeal::intersect_all(parts.iter()).expect("a cofinite sequence has an essential index")
    }
}

/// Why an entry vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VanishReason {
    /// `det(A_I) = 0`: the form `dz^{a^{i_1}} ^ ... ^ dz^{a^{i_n}}` is zero.
    ZeroDeterminant,
    /// `det(A_I) != 0` but the scaled points share no compact facet.
    NotOnCommonFacet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Coefficient {
    /// `C_I = 1` exactly.
    Known,
    /// Determined only through the linear relation of facet `relation`.
    Constrained { relation: usize },
    /// A quadrature estimate.
    Numeric {
        relation: usize,
        estimate: f64,
        abs_error: f64,
        cells: usize,
    },
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurrentEntry {
    pub index: MultiIndex,
    pub vanishes: bool,
    pub reason: Option<VanishReason>,
    /// sign of `det(A_I)`; `None` for vanishing entries
    pub sign: Option<i8>,
    pub alpha: ExpVec,
    pub coeff: Option<Coefficient>,
    /// normals of the facets of `NP(pA)` witnessing essentiality
    #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
    pub witnesses: Vec<Vec<BigInt>>,
}

impl CurrentEntry {
    /// `+- C dbar[1/z1^a1] ^ ...` rendering of the entry.
    pub fn symbolic(&self) -> String {
        if self.vanishes {
            return "0".to_string();
        }
        let coeff = match &self.coeff {
            Some(Coefficient::Known) | None => String::new(),
            Some(Coefficient::Constrained { .. }) => format!("C{} ", self.index),
            Some(Coefficient::Numeric { estimate, .. }) => format!("{estimate:.9} "),
        };
        let sign = if self.sign == Some(-1) { "-" } else { "" };
        let factors: Vec<String> = self
            .alpha
            .coords()
            .iter()
            .enumerate()
            .map(|(j, &a)| {
                if a == 1 {
                    format!("dbar[1/z{}]", j + 1)
                } else {
                    format!("dbar[1/z{}^{}]", j + 1, a)
                }
            })
            .collect();
        format!("{sign}{coeff}{}", factors.join(" ^ "))
    }
}

#[derive(Clone, Debug)]
pub struct ResidueCurrent {
    pub seq: MonomialSeq,
    pub weight: Weight,
    pub entries: Vec<CurrentEntry>,
    pub scaled_np: NewtonPolyhedron,
}

impl ResidueCurrent {
    pub fn nonvanishing(&self) -> impl Iterator<Item = &CurrentEntry> {
        self.entries.iter().filter(|e| !e.vanishes)
    }

    pub fn entry(&self, index: &MultiIndex) -> Option<&CurrentEntry> {
        self.entries.iter().find(|e| &e.index == index)
    }
}

/// Every p-essential multi-index with the normals of its witnessing facets.
pub fn p_essential_indices(seq: &MonomialSeq, p: &Weight) -> Result<Vec<(MultiIndex, Vec<Vec<BigInt>>)>> {
    let an = Analysis::new(seq, p)?;
    Ok(an
        .essential
        .iter()
        .map(|e| {
            let normals = e.facets.iter().map(|&fi| an.np.facets()[fi].normal.clone()).collect();
            (e.index.clone(), normals)
        })
        .collect())
}

pub fn residue_current(seq: &MonomialSeq, p: &Weight) -> Result<ResidueCurrent> {
    let an = Analysis::new(seq, p)?;
    Ok(current_from_analysis(&an))
}

pub(crate) fn current_from_analysis(an: &Analysis) -> ResidueCurrent {
    let entries = an
        .seq
        .multi_indices()
        .into_iter()
        .map(|index| {
            let alpha = an.seq.alpha(&index);
            match an.essential.iter().find(|e| e.index == index) {
                Some(e) => {
                    let coeff = if an.coefficient_known(e) {
                        Coefficient::Known
                    } else {
                        Coefficient::Constrained { relation: e.facets[0] }
                    };
                    CurrentEntry {
                        sign: Some(if e.det.is_negative() { -1 } else { 1 }),
                        vanishes: false,
                        reason: None,
                        alpha,
                        coeff: Some(coeff),
                        witnesses: e.facets.iter().map(|&fi| an.np.facets()[fi].normal.clone()).collect(),
                        index,
                    }
                }
                None => {
                    let reason = if an.seq.det(&index).is_zero() {
                        VanishReason::ZeroDeterminant
                    } else {
                        VanishReason::NotOnCommonFacet
                    };
                    CurrentEntry {
                        index,
                        vanishes: true,
                        reason: Some(reason),
                        sign: None,
                        alpha,
                        coeff: None,
                        witnesses: Vec::new(),
                    }
                }
            }
        })
        .collect();
    ResidueCurrent {
        seq: an.seq.clone(),
        weight: an.weight.clone(),
        entries,
        scaled_np: an.np.clone(),
    }
}

/// Replaces `Constrained` coefficients by quadrature estimates where the
/// quadrature supports the facet.
pub fn refine_numeric(current: &mut ResidueCurrent, opts: &quadrature::QuadratureOptions) -> Result<()> {
    let numeric = quadrature::numeric_coefficients(&current.seq, &current.weight, opts)?;
    for entry in &mut current.entries {
        if let Some(Coefficient::Constrained { relation }) = entry.coeff {
            if let Some(nc) = numeric.iter().find(|c| c.index == entry.index) {
                entry.coeff = Some(Coefficient::Numeric {
                    relation,
                    estimate: nc.estimate,
                    abs_error: nc.abs_error,
                    cells: nc.cells,
                });
            }
        }
    }
    Ok(())
}

/// `ann R^p(z^A)`: the intersection over p-essential `I` of
/// `(z_1^{alpha_1}, ..., z_n^{alpha_n})`.
pub fn annihilator(seq: &MonomialSeq, p: &Weight) -> Result<MonomialIdeal> {
    Ok(Analysis::new(seq, p)?.annihilator())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn ex41() -> MonomialSeq {
        MonomialSeq::from_rows(&[&[5, 0], &[4, 1], &[2, 2], &[0, 3]]).unwrap()
    }

    fn w(p: &[u64]) -> Weight {
        Weight::new(p.to_vec()).unwrap()
    }

    fn idx(v: &[usize]) -> MultiIndex {
        MultiIndex::one_based(v)
    }

    fn essential_set(seq: &MonomialSeq, p: &[u64]) -> Vec<MultiIndex> {
        p_essential_indices(seq, &w(p))
            .unwrap()
            .into_iter()
            .map(|(i, _)| i)
            .collect()
    }

    #[test]
    fn scaled_point_examples() {
        let a = ex41();
        let q = scaled_points(&a, &w(&[2, 2, 1, 3])).unwrap();
        let want: Vec<ExpVec> = [[10, 0], [8, 2], [2, 2], [0, 9]]
            .into_iter()
            .map(ExpVec::from)
            .collect();
        assert_eq!(q, want);
        assert_eq!(scaled_points(&a, &Weight::ones(4)).unwrap(), a.exps());
        let r = scaled_points(&a, &w(&[3, 3, 4, 5])).unwrap();
        let want: Vec<ExpVec> = [[15, 0], [12, 3], [8, 8], [0, 15]]
            .into_iter()
            .map(ExpVec::from)
            .collect();
        assert_eq!(r, want);
        assert!(scaled_points(&a, &w(&[1, 1])).is_err());
    }

    #[test]
    fn essential_examples() {
        let a = ex41();
        assert_eq!(essential_set(&a, &[1, 1, 1, 1]), vec![idx(&[1, 4])]);
        assert_eq!(essential_set(&a, &[2, 2, 1, 3]), vec![idx(&[1, 3]), idx(&[3, 4])]);
        assert_eq!(
            essential_set(&a, &[3, 3, 4, 5]),
            vec![idx(&[1, 2]), idx(&[1, 4]), idx(&[2, 4])]
        );
    }

    #[test]
    fn current_q_case_entry() {
        let cur = residue_current(&ex41(), &w(&[2, 2, 1, 3])).unwrap();
        assert_eq!(cur.entries.len(), 6);
        let e = cur.entry(&idx(&[1, 3])).unwrap();
        assert!(!e.vanishes);
        assert_eq!(e.sign, Some(1));
        assert_eq!(e.alpha, ExpVec::from([7, 2]));
        assert_eq!(e.coeff, Some(Coefficient::Known));
        let z = cur.entry(&idx(&[1, 2])).unwrap();
        assert!(z.vanishes);
        assert_eq!(z.reason, Some(VanishReason::NotOnCommonFacet));
    }

    #[test]
    fn one_variable_regimes() {
        let a = MonomialSeq::from_rows(&[&[1], &[2]]).unwrap();
        let cur = residue_current(&a, &w(&[2, 1])).unwrap();
        assert!(cur.entries.iter().all(|e| !e.vanishes));
        assert_eq!(cur.entries[0].alpha, ExpVec::from([1]));
        assert_eq!(cur.entries[1].alpha, ExpVec::from([2]));
        let cur = residue_current(&a, &w(&[3, 1])).unwrap();
        assert!(cur.entries[0].vanishes);
        assert!(!cur.entries[1].vanishes);
        let cur = residue_current(&a, &w(&[1, 1])).unwrap();
        assert!(!cur.entries[0].vanishes);
        assert!(cur.entries[1].vanishes);
    }

    #[test]
    fn annihilator_examples() {
        let a = ex41();
        let ideal =
            |v: &[&[u64]]| MonomialIdeal::from_gens(v.iter().map(|x| ExpVec::from(x.to_vec())).collect()).unwrap();
        assert_eq!(annihilator(&a, &Weight::ones(4)).unwrap(), ideal(&[&[5, 0], &[0, 3]]));
        assert_eq!(
            annihilator(&a, &w(&[2, 2, 1, 3])).unwrap(),
            ideal(&[&[7, 0], &[2, 2], &[0, 5]])
        );
        let one = MonomialSeq::from_rows(&[&[1], &[2]]).unwrap();
        for j in 2..6 {
            assert_eq!(annihilator(&one, &w(&[j, 1])).unwrap(), ideal(&[&[2]]));
        }
        assert_eq!(annihilator(&one, &w(&[1, 1])).unwrap(), ideal(&[&[1]]));
    }

    #[test]
    fn zero_determinant_reason() {
        let a = MonomialSeq::from_rows(&[&[2, 0], &[0, 3], &[2, 0]]).unwrap();
        let cur = residue_current(&a, &Weight::ones(3)).unwrap();
        let e = cur.entry(&idx(&[1, 3])).unwrap();
        assert_eq!(e.reason, Some(VanishReason::ZeroDeterminant));
        // two essential indices share the facet, so neither coefficient is known
        assert!(matches!(
            cur.entry(&idx(&[1, 2])).unwrap().coeff,
            Some(Coefficient::Constrained { .. })
        ));
    }

    #[test]
    fn seq_validation() {
        assert!(matches!(
            MonomialSeq::from_rows(&[&[1, 1]]),
            Err(Error::NotCofinite { .. })
        ));
        assert!(MonomialSeq::from_rows(&[&[0, 0], &[1, 0], &[0, 1]]).is_err());
        assert!(Weight::new(vec![1, 0]).is_err());
        assert!(MultiIndex::new(vec![2, 1], 4, 2).is_err());
        assert!(MultiIndex::new(vec![1, 4], 4, 2).is_err());
        assert_eq!(MultiIndex::new(vec![0, 3], 4, 2).unwrap().to_string(), "{1,4}");
    }

    #[test]
    fn symbolic_rendering() {
        let cur = residue_current(&ex41(), &Weight::ones(4)).unwrap();
        let e = cur.entry(&idx(&[1, 4])).unwrap();
        assert_eq!(e.symbolic(), "dbar[1/z1^5] ^ dbar[1/z2^3]");
    }
}

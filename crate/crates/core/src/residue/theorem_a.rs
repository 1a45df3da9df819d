//! The inclusion chain
//! `cap_I closure(a(z^{pA})^n) : z^{sum_{j in I}(p_j - 1) a^j}  ⊆  ann R^p(z^A)  ⊆  a(z^A)`,
//! the intersection running over p-essential `I`.

use serde::{Deserialize, Serialize};

use super::{Analysis, MonomialSeq, Weight};
use crate::error::Result;
use crate::exact::ExpVec;
use crate::ideal::MonomialIdeal;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremAReport {
    pub left: MonomialIdeal,
    pub ann: MonomialIdeal,
    pub right: MonomialIdeal,
    /// `z^{sum_{j in I}(p_j - 1) a^j}` for each essential `I`, in index order
    pub shifts: Vec<ExpVec>,
    pub left_included: bool,
    pub right_included: bool,
    pub left_strict: bool,
    pub right_equal: bool,
    /// `a(z^A)` is generated by `n` elements
    pub complete_intersection: bool,
    /// `ann = a(z^A)` only happens for complete intersection ideals
    pub right_equality_implies_ci: bool,
    /// `closure(a(z^A)^n) ⊆ ann`
    pub closure_power_in_ann: bool,
}

impl TheoremAReport {
    /// Every claim of the chain that applies to this input.
    pub fn holds(&self, n: usize) -> bool {
        self.left_included && self.right_included && (n < 2 || self.left_strict) && self.right_equality_implies_ci
    }
}

pub fn theorem_a_report(seq: &MonomialSeq, p: &Weight) -> Result<TheoremAReport> {
    let an = Analysis::new(seq, p)?;
    let n = seq.dim() as u32;
    let scaled_ideal = MonomialIdeal::from_gens(an.scaled.clone())?;
    let closed = scaled_ideal.power(n)?.integral_closure()?;
    let mut shifts = Vec::with_capacity(an.essential.len());
    let mut parts = Vec::with_capacity(an.essential.len());
    for e in &an.essential {
        let shift = e.index.positions().iter().fold(ExpVec::zeros(seq.dim()), |acc, &j| {
            &acc + &seq.exps()[j].scale(p.entries()[j] - 1)
        });
        parts.push(closed.colon_monomial(&shift)?);
        shifts.push(shift);
    }
    let left = MonomialIdeal::intersect_all(parts.iter())?;
    let ann = an.annihilator();
    let right = seq.ideal();
    let left_included = left.is_subset_of(&ann);
    let right_included = ann.is_subset_of(&right);
    let right_equal = ann == right;
    let complete_intersection = right.is_complete_intersection();
    let closure_power_in_ann = right.power(n)?.integral_closure()?.is_subset_of(&ann);
    Ok(TheoremAReport {
        left_strict: left_included && left != ann,
        right_equality_implies_ci: !right_equal || complete_intersection,
        left,
        ann,
        right,
        shifts,
        left_included,
        right_included,
        right_equal,
        complete_intersection,
        closure_power_in_ann,
    })
}

//! When do the current and its annihilator not depend on the weight?
//!
//! The current is weight-independent exactly for regular sequences. The
//! annihilator is weight-independent exactly when every `n`-subset either
//! generates `a(z^A)` or has `det(A_I) = 0`. Both are decided from these
//! characterizations; the weight constructors below supply witnesses for
//! the negative answers.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{annihilator, Analysis, MonomialSeq, MultiIndex, Weight};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;

pub fn is_regular_sequence(seq: &MonomialSeq) -> bool {
    if seq.len() != seq.dim() {
        return false;
    }
    let mut axes: Vec<usize> = Vec::with_capacity(seq.len());
    for a in seq.exps() {
        match a.support().as_slice() {
            [axis] => axes.push(*axis),
            _ => return false,
        }
    }
    axes.sort_unstable();
    axes.dedup();
    axes.len() == seq.dim()
}

pub fn current_independent_of_p(seq: &MonomialSeq) -> bool {
    is_regular_sequence(seq)
}

pub fn ann_independent_of_p(seq: &MonomialSeq) -> bool {
    let whole = seq.ideal();
    seq.multi_indices().iter().all(|index| {
        let sub = MonomialIdeal::from_gens(index.positions().iter().map(|&i| seq.exps()[i].clone()).collect())
            .expect("nonempty");
        sub == whole || seq.det(index).is_zero()
    })
}

/// A weight under which generator `j` (1-based) belongs to a p-essential
/// index. First tries `q_i = sum_{k != i} |a^k|`; that choice does not
/// depend on `j` and can miss it, in which case `p_j = 1` and
/// `p_i = |a^j| + 1` otherwise makes `a^j` the unique minimizer of the
/// total degree, hence a vertex on a compact facet.
pub fn proof_weights(seq: &MonomialSeq, j: usize) -> Result<Weight> {
    if j == 0 || j > seq.len() {
        return Err(Error::domain(format!("generator index {j} outside 1..={}", seq.len())));
    }
    let degrees: Vec<u64> = seq.exps().iter().map(|a| a.degree()).collect();
    let total: u64 = degrees.iter().sum();
    let q = Weight::new(degrees.iter().map(|d| (total - d).max(1)).collect())?;
    if Analysis::new(seq, &q)?
        .essential
        .iter()
        .any(|e| e.index.contains(j - 1))
    {
        return Ok(q);
    }
    let big = degrees[j - 1] + 1;
    Weight::new((0..seq.len()).map(|i| if i == j - 1 { 1 } else { big }).collect())
}

/// Weight 1 on one minimal pure power per axis and a large weight elsewhere,
/// so that those `n` generators form the only essential index.
pub fn isolating_weight(seq: &MonomialSeq) -> (Weight, MultiIndex) {
    let n = seq.dim();
    let mut chosen = Vec::with_capacity(n);
    let mut top = 0u64;
    for axis in 0..n {
        let (pos, deg) = seq
            .exps()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.support() == [axis])
            .map(|(i, a)| (i, a.coords()[axis]))
            .min_by_key(|&(i, d)| (d, i))
            .expect("cofinite sequence");
        chosen.push(pos);
        top = top.max(deg);
    }
    chosen.sort_unstable();
    let big = top + 1;
    let p = (0..seq.len())
        .map(|i| if chosen.contains(&i) { 1 } else { big })
        .collect();
    (Weight(p), MultiIndex(chosen))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub regular: bool,
    pub current_independent: bool,
    pub ann_independent: bool,
    /// two weights whose currents have different nonvanishing entries
    pub current_witness: Option<(Weight, Weight)>,
    /// two weights with different annihilators
    pub ann_witness: Option<(Weight, Weight)>,
}

fn nonvanishing(seq: &MonomialSeq, p: &Weight) -> Result<Vec<(MultiIndex, crate::exact::ExpVec)>> {
    Ok(Analysis::new(seq, p)?
        .essential
        .iter()
        .map(|e| (e.index.clone(), seq.alpha(&e.index)))
        .collect())
}

fn first_differing<K: PartialEq>(
    candidates: &[Weight],
    key: impl Fn(&Weight) -> Result<K>,
) -> Result<Option<(Weight, Weight)>> {
    let keys = candidates.iter().map(&key).collect::<Result<Vec<_>>>()?;
    for i in 0..candidates.len() {
        for j in i + 1..candidates.len() {
            if keys[i] != keys[j] {
                return Ok(Some((candidates[i].clone(), candidates[j].clone())));
            }
        }
    }
    Ok(None)
}

/// Decides both predicates and, when one fails, searches the proof weights
/// (plus all-ones and the isolating weight) for a pair of witnesses.
pub fn independence_report(seq: &MonomialSeq) -> Result<IndependenceReport> {
    let regular = is_regular_sequence(seq);
    let current_independent = current_independent_of_p(seq);
    let ann_independent = ann_independent_of_p(seq);
    let mut candidates = vec![Weight::ones(seq.len())];
    for j in 1..=seq.len() {
        candidates.push(proof_weights(seq, j)?);
    }
    candidates.push(isolating_weight(seq).0);
    candidates.dedup();
    let current_witness = if current_independent {
        None
    } else {
        first_differing(&candidates, |p| nonvanishing(seq, p))?
    };
    let ann_witness = if ann_independent {
        None
    } else {
        first_differing(&candidates, |p| annihilator(seq, p))?
    };
    Ok(IndependenceReport {
        regular,
        current_independent,
        ann_independent,
        current_witness,
        ann_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::tests::ex41;

    #[test]
    fn predicates() {
        let reg = MonomialSeq::from_rows(&[&[5, 0], &[0, 3]]).unwrap();
        assert!(is_regular_sequence(&reg));
        assert!(ann_independent_of_p(&reg));
        assert!(!is_regular_sequence(&ex41()));
        assert!(!ann_independent_of_p(&ex41()));
        let dup = MonomialSeq::from_rows(&[&[2, 0], &[0, 3], &[2, 0]]).unwrap();
        assert!(!current_independent_of_p(&dup));
        assert!(ann_independent_of_p(&dup));
        let mixed = MonomialSeq::from_rows(&[&[2, 0], &[1, 1], &[0, 1]]).unwrap();
        assert!(!is_regular_sequence(&mixed));
    }

    #[test]
    fn proof_weights_reach_every_generator() {
        let a = ex41();
        assert_eq!(proof_weights(&a, 1).unwrap().entries(), &[12, 12, 13, 14]);
        for j in 1..=4 {
            let q = proof_weights(&a, j).unwrap();
            let an = Analysis::new(&a, &q).unwrap();
            assert!(an.essential.iter().any(|e| e.index.contains(j - 1)), "j = {j}, q = {q}");
        }
        assert!(proof_weights(&a, 0).is_err());
        assert!(proof_weights(&a, 5).is_err());
    }

    #[test]
    fn isolating_weight_isolates() {
        let a = ex41();
        let (p, index) = isolating_weight(&a);
        assert_eq!(index, MultiIndex::one_based(&[1, 4]));
        let an = Analysis::new(&a, &p).unwrap();
        assert_eq!(an.essential.len(), 1);
        assert_eq!(an.essential[0].index, index);
    }

    #[test]
    fn ex41_witnesses() {
        let rep = independence_report(&ex41()).unwrap();
        assert!(!rep.current_independent && !rep.ann_independent);
        let (p1, p2) = rep.current_witness.unwrap();
        assert_ne!(nonvanishing(&ex41(), &p1).unwrap(), nonvanishing(&ex41(), &p2).unwrap());
        let (p1, p2) = rep.ann_witness.unwrap();
        assert_ne!(annihilator(&ex41(), &p1).unwrap(), annihilator(&ex41(), &p2).unwrap());
    }
}

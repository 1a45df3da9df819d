//! Enumerating the distinct annihilators over the box `{1..p_max}^m`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{annihilator, MonomialSeq, Weight};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;

/// Largest number of weights evaluated without `force`.
pub const SWEEP_LIMIT: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOptions {
    pub force: bool,
    pub parallel: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub ideal: MonomialIdeal,
    /// lexicographically smallest weight producing `ideal`
    pub weight: Weight,
    /// number of weights in the box producing `ideal`
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepResult {
    pub p_max: u64,
    pub evaluated: u64,
    /// ordered by representative weight
    pub entries: Vec<SweepEntry>,
}

/// The `k`-th weight of the box in lexicographic order.
fn weight_at(mut k: u64, m: usize, p_max: u64) -> Weight {
    let mut p = vec![1u64; m];
    for slot in p.iter_mut().rev() {
        *slot = 1 + k % p_max;
        k /= p_max;
    }
    Weight(p)
}

type Tally = BTreeMap<MonomialIdeal, (Weight, u64)>;

fn tally_range(seq: &MonomialSeq, range: std::ops::Range<u64>, p_max: u64) -> Result<Tally> {
    let mut out = Tally::new();
    for k in range {
        let p = weight_at(k, seq.len(), p_max);
        let ideal = annihilator(seq, &p)?;
        // weights arrive in increasing order, so the first one seen is the
        // smallest
        out.entry(ideal).or_insert((p, 0)).1 += 1;
    }
    Ok(out)
}

fn merge(mut into: Tally, from: Tally) -> Tally {
    for (ideal, (p, c)) in from {
        into.entry(ideal)
            .and_modify(|(q, n)| {
                if p < *q {
                    *q = p.clone();
                }
                *n += c;
            })
            .or_insert((p, c));
    }
    into
}

/// All distinct `ann R^p(z^A)` for `p in {1..p_max}^m`. The parallel path
/// splits the box into contiguous chunks and merges them in order, so its
/// output equals the sequential one.
pub fn enumerate_annihilators(seq: &MonomialSeq, p_max: u64, opts: SweepOptions) -> Result<SweepResult> {
    if p_max == 0 {
        return Err(Error::domain("p_max must be >= 1"));
    }
    let count = (p_max as u128).checked_pow(seq.len() as u32).unwrap_or(u128::MAX);
    if count > SWEEP_LIMIT && !opts.force {
        return Err(Error::SweepTooLarge {
            count,
            limit: SWEEP_LIMIT,
        });
    }
    let total = u64::try_from(count).map_err(|_| Error::domain("weight box does not fit in 64 bits"))?;
    let tally = if opts.parallel {
        let chunk = (total / (4 * rayon::current_num_threads() as u64)).clamp(1, 4096);
        let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
        let parts = starts
            .par_iter()
            .map(|&s| tally_range(seq, s..(s + chunk).min(total), p_max))
            .collect::<Result<Vec<_>>>()?;
        parts.into_iter().fold(Tally::new(), merge)
    } else {
        tally_range(seq, 0..total, p_max)?
    };
    let mut entries: Vec<SweepEntry> = tally
        .into_iter()
        .map(|(ideal, (weight, count))| SweepEntry { ideal, weight, count })
        .collect();
    entries.sort_by(|a, b| a.weight.cmp(&b.weight));
    Ok(SweepResult {
        p_max,
        evaluated: total,
        entries,
    })
}

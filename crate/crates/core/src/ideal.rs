//! Monomial ideals represented by their minimal generators.
//!
//! Every constructor re-minimalizes, so two ideals are equal exactly when
//! their generator lists are equal.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ExpVec;
use crate::newton::newton_polyhedron;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<ExpVec>,
}

/// Removes duplicates and non-minimal elements, sorts lexicographically.
fn minimalize(mut raw: Vec<ExpVec>) -> Vec<ExpVec> {
    raw.sort();
    raw.dedup();
    // after sorting by total degree a generator can only be divided by an
    // earlier one
    let mut by_degree = raw;
    by_degree.sort_by_key(ExpVec::degree);
    let mut kept: Vec<ExpVec> = Vec::with_capacity(by_degree.len());
    for g in by_degree {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}

impl MonomialIdeal {
    pub fn from_gens(raw: Vec<ExpVec>) -> Result<Self> {
        let Some(first) = raw.first() else {
            return Err(Error::domain("the zero ideal has no monomial generators"));
        };
        let dim = first.dim();
        if let Some(bad) = raw.iter().find(|g| g.dim() != dim) {
            return Err(Error::Dimension {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(MonomialIdeal {
            dim,
            gens: minimalize(raw),
        })
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal {
            dim: n,
            gens: vec![ExpVec::zeros(n)],
        }
    }

    /// `(z_1^{e_1}, ..., z_n^{e_n})`; zero entries give the unit ideal.
    pub fn pure_powers(e: &ExpVec) -> Self {
        let n = e.dim();
        let gens = (0..n).map(|j| ExpVec::pure_power(n, j, e.coords()[j])).collect();
        MonomialIdeal {
            dim: n,
            gens: minimalize(gens),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[ExpVec] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(ExpVec::is_zero)
    }

    pub fn member(&self, x: &ExpVec) -> bool {
        self.gens.iter().any(|g| g.divides(x))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.member(g))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_dim(other.dim)?;
        let mut raw = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                raw.push(g.join(h));
            }
        }
        Ok(MonomialIdeal {
            dim: self.dim,
            gens: minimalize(raw),
        })
    }

    /// `J : (z^m)`.
    pub fn colon_monomial(&self, m: &ExpVec) -> Result<MonomialIdeal> {
        self.check_dim(m.dim())?;
        let raw = self.gens.iter().map(|g| g.monus(m)).collect();
        Ok(MonomialIdeal {
            dim: self.dim,
            gens: minimalize(raw),
        })
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_dim(other.dim)?;
        let mut raw = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                raw.push(g + h);
            }
        }
        Ok(MonomialIdeal {
            dim: self.dim,
            gens: minimalize(raw),
        })
    }

    pub fn power(&self, k: u32) -> Result<MonomialIdeal> {
        if k == 0 {
            return Err(Error::domain("ideal power must be >= 1"));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn is_cofinite(&self) -> bool {
        if self.is_unit() {
            return true;
        }
        (0..self.dim).all(|axis| self.gens.iter().any(|g| g.support() == [axis]))
    }

    /// A cofinite ideal minimally generated by `n` pure powers.
    pub fn is_complete_intersection(&self) -> bool {
        self.is_cofinite() && (self.is_unit() || self.gens.len() == self.dim)
    }

    /// Integral closure: the minimal lattice points of the Newton polyhedron
    /// of the generators.
    pub fn integral_closure(&self) -> Result<MonomialIdeal> {
        if self.is_unit() {
            return Ok(self.clone());
        }
        if !self.is_cofinite() {
            return Err(Error::Unsupported(
                "integral closure of a non-cofinite monomial ideal".into(),
            ));
        }
        let np = newton_polyhedron(&self.gens, self.dim)?;
        let bound = np.max_vertex_coord();
        Ok(MonomialIdeal {
            dim: self.dim,
            gens: minimalize(np.column_minima(bound)),
        })
    }

    /// Intersection of a nonempty family.
    pub fn intersect_all<'a>(mut ideals: impl Iterator<Item = &'a MonomialIdeal>) -> Result<MonomialIdeal> {
        let first = ideals
            .next()
            .ok_or_else(|| Error::domain("intersection of an empty family"))?;
        ideals.try_fold(first.clone(), |acc, j| acc.intersect(j))
    }

    /// Canonical serialization: sorted exponent tuples.
    pub fn to_tuples(&self) -> Vec<Vec<u64>> {
        self.gens.iter().map(|g| g.coords().to_vec()).collect()
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, e: &ExpVec) -> fmt::Result {
    if e.is_zero() {
        return write!(f, "1");
    }
    let mut first = true;
    for (j, &c) in e.coords().iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if c == 1 {
            write!(f, "z{}", j + 1)?;
        } else {
            write!(f, "z{}^{}", j + 1, c)?;
        }
    }
    Ok(())
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // highest power of z1 first reads like the usual staircase listing
        write!(f, "(")?;
        for (i, g) in self.gens.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            fmt_monomial(f, g)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

//! Exact computation of Bochner-Martinelli residue currents `R^p(z^A)` of
//! monomial sequences raised to a weight `p`.
//!
//! For a sequence of monomials `z^A = (z^{a^1}, ..., z^{a^m})` with
//! `V(z^A) = {0}` and a weight `p`, the current `R^p(z^A)` has one entry per
//! `n`-subset `I` of the generators. An entry is nonzero exactly when the
//! scaled points `p_j a^j, j in I` lie on a common compact facet of the
//! Newton polyhedron `NP(pA)` and `det(A_I) != 0`; it is then
//! `sgn(det A_I) C_I dbar[1/z_1^{alpha_1}] ^ ... ^ dbar[1/z_n^{alpha_n}]`
//! with `alpha = sum_{j in I} a^j`.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: exponent vectors, exact determinants, primitive vectors
//! * [`newton`]: Newton polyhedra and their compact facets
//! * [`ideal`]: monomial ideal arithmetic including integral closure
//! * [`residue`]: currents, annihilators, multiplicities, facet relations,
//!   inclusion chains, independence predicates and weight sweeps
//! * [`quadrature`]: numeric estimates of the undetermined coefficients
//! * [`problem`], [`report`], [`svg`], [`cli`]: the command-line front end

pub mod cli;
pub mod error;
pub mod exact;
mod hull;
pub mod ideal;
pub mod newton;
pub mod problem;
pub mod quadrature;
pub mod report;
pub mod residue;
pub mod svg;

pub use error::{Error, Result};
pub use exact::{det, primitive, unimodular_complement, ExpVec, IntMatrix};
pub use ideal::MonomialIdeal;
pub use newton::{newton_polyhedron, Facet, NewtonPolyhedron};
pub use residue::{MonomialSeq, MultiIndex, Weight};

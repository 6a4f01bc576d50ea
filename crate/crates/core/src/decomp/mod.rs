//! Block decompositions in characteristic two.
//!
//! Every verifier builds explicit bases `P_i` in the thick spaces and checks
//! the division-free identity `P R = S P`, where `P` is block diagonal and `S`
//! is the predicted direct sum written in those bases. Verification is exact
//! over whatever ring the brick entries live in: polynomial rings give
//! symbolic proofs, fields give specializations, matrix algebras cover bricks
//! with commuting matrix entries.

mod basis;
mod cubic;
mod evolution;
mod planar;
mod symmetric;

use serde::Serialize;
use serde_json::{Map, Value};

pub use basis::{
    cubic_target, nondegeneracy_element, search_line_orderings, thick_basis_matrices, verify_thick_determinants,
    ThickBasisSet, RESOLVED_LINE_ORDERING,
};
pub use cubic::{
    assemble_cube, generic_brick, verify_decomposition_3d, verify_decomposition_3d_sampled,
    verify_decomposition_3d_symbolic, verify_scalar_structure, verify_triple_product_spectrum, VerifyMode,
    SYMBOLIC_TERM_CAP,
};
pub use evolution::{
    detect_evolution_summands, evolution_census_closed_form, DetectedSummands, EvolutionCase, EvolutionCensus,
};
pub use planar::{
    expected_planar_block, planar_block_over_integers, verify_decomposition_2d, verify_decomposition_2d_sampled,
    verify_decomposition_2d_symbolic,
};
pub use symmetric::{
    double_brick, symmetric_basis, symmetric_target, symmetrize_brick, verify_symmetric_decomposition,
    verify_symmetric_symbolic, SymmetricLevel,
};

use crate::error::{Error, Result};
use crate::identity::IdentityVerdict;
use crate::matrix::RingMatrix;
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    /// `trials` and the bound are absent for exact (symbolic or single-point) checks.
    Verified { trials: Option<usize>, log2_failure_bound: Option<f64> },
    Falsified { detail: String },
    /// Hypotheses fail for this input; nothing was claimed.
    Degenerate { reason: String },
}

impl Verdict {
    pub fn exact() -> Self {
        Verdict::Verified { trials: None, log2_failure_bound: None }
    }

    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified { .. })
    }

    pub fn is_falsified(&self) -> bool {
        matches!(self, Verdict::Falsified { .. })
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Verdict::Degenerate { .. })
    }
}

impl From<IdentityVerdict> for Verdict {
    fn from(v: IdentityVerdict) -> Self {
        match v {
            IdentityVerdict::Verified { trials, log2_failure_bound } => {
                Verdict::Verified { trials: log2_failure_bound.map(|_| trials), log2_failure_bound }
            }
            IdentityVerdict::Falsified { trial, witness, detail } => {
                Verdict::Falsified { detail: format!("trial {trial}: {detail}; witness {witness:?}") }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SummandKind {
    Brick,
    TransposedBrick,
    SimpleSymmetric,
    DoubleBrick,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub kind: SummandKind,
    pub multiplicity: usize,
    /// Size of one copy, counted in entries of the brick's ring.
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub summands: Vec<Summand>,
    /// Summand entries are the brick entries raised to this power.
    pub entry_power: u64,
    pub verdict: Verdict,
    pub details: Map<String, Value>,
}

impl DecompositionReport {
    pub fn new(summands: Vec<Summand>, entry_power: u64, verdict: Verdict) -> Self {
        DecompositionReport { summands, entry_power, verdict, details: Map::new() }
    }

    fn degenerate(reason: impl Into<String>) -> Self {
        Self::new(Vec::new(), 0, Verdict::Degenerate { reason: reason.into() })
    }

    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(|s| s.multiplicity * s.dim).sum()
    }

    pub fn multiplicity(&self, kind: SummandKind) -> usize {
        self.summands.iter().filter(|s| s.kind == kind).map(|s| s.multiplicity).sum()
    }

    fn with_detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }
}

/// Outcome of a structural check that predicts no summands.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureReport {
    pub verdict: Verdict,
    pub details: Map<String, Value>,
}

impl StructureReport {
    fn new(verdict: Verdict) -> Self {
        StructureReport { verdict, details: Map::new() }
    }

    fn with_detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }
}

pub(crate) fn require_char2<R: Ring>(ring: &R) -> Result<()> {
    if ring.characteristic() != 2 {
        return Err(Error::input(format!("characteristic 2 required, ring is {}", ring.tag())));
    }
    Ok(())
}

pub(crate) fn require_square3<R: Ring>(a: &RingMatrix<R>) -> Result<()> {
    if a.rows() != 3 || a.cols() != 3 {
        return Err(Error::input(format!("a 3x3 brick is required, got {}x{}", a.rows(), a.cols())));
    }
    Ok(())
}

pub(crate) fn square<R: Ring>(ring: &R, x: &R::Elem) -> R::Elem {
    ring.mul(x, x)
}

/// Compares `P_i R_ij` with `S_ij P_j` block by block and names the first
/// basis vector whose image is wrong. `ps[i]` is square and its size fixes
/// the block partition of `r` and `s`.
pub(crate) fn conjugation_mismatch<R: Ring>(
    ps: &[RingMatrix<R>],
    r: &RingMatrix<R>,
    s: &RingMatrix<R>,
    row_names: &[&str],
) -> Result<Option<String>> {
    let offsets: Vec<usize> = ps
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.rows();
            Some(o)
        })
        .collect();
    let range = |i: usize| offsets[i]..offsets[i] + ps[i].rows();
    for i in 0..ps.len() {
        for j in 0..ps.len() {
            let lhs = ps[i].mul(&r.submatrix(range(i), range(j)))?;
            let rhs = s.submatrix(range(i), range(j)).mul(&ps[j])?;
            if lhs != rhs {
                let k = (0..lhs.rows()).find(|&k| lhs.row(k) != rhs.row(k)).unwrap_or(0);
                let name = row_names.get(k % row_names.len().max(1)).copied().unwrap_or("row");
                return Ok(Some(format!(
                    "basis vector {name} (row {k}) of space {} maps wrongly under block ({}, {})",
                    i + 1,
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(None)
}

//! Summand counts under iterated block making.

use serde::Serialize;

use super::{double_brick, require_char2, RESOLVED_LINE_ORDERING};
use crate::error::{Error, Result};
use crate::field::ExtFieldSpec;
use crate::lattice::{evolve, BrickSpec};
use crate::matrix::RingMatrix;
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvolutionCase {
    /// 2x2 brick: copies of the brick.
    Planar,
    /// 3x3 brick off the degenerate locus: (bricks, transposed bricks).
    Generic,
    /// Symmetric 3x3 brick: (simple, double) bricks.
    Symmetric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvolutionCensus {
    pub case: EvolutionCase,
    pub step: u32,
    pub counts: Vec<u128>,
    /// Counts at step n+1 are counts at step n times this matrix.
    pub transition: Vec<Vec<u128>>,
}

fn transition(case: EvolutionCase) -> Vec<Vec<u128>> {
    match case {
        EvolutionCase::Planar => vec![vec![2]],
        EvolutionCase::Generic => vec![vec![3, 1], vec![1, 3]],
        EvolutionCase::Symmetric => vec![vec![2, 1], vec![4, 2]],
    }
}

fn closed_form(case: EvolutionCase, n: u32) -> Vec<u128> {
    let (two, four) = (1u128 << n, 1u128 << (2 * n));
    match case {
        EvolutionCase::Planar => vec![two],
        EvolutionCase::Generic => vec![(four + two) / 2, (four - two) / 2],
        // the closed form starts at n = 1; step 0 is the brick itself
        EvolutionCase::Symmetric if n == 0 => vec![1, 0],
        EvolutionCase::Symmetric => vec![four / 2, four / 4],
    }
}

/// Summand counts after `n` steps, from the closed form; the transition
/// recurrence is evaluated as well and must agree.
pub fn evolution_census_closed_form(case: EvolutionCase, n: u32) -> Result<EvolutionCensus> {
    if n > 60 {
        return Err(Error::Resource { cap: "evolution steps", needed: n as u128, limit: 60 });
    }
    let q = transition(case);
    let mut v: Vec<u128> = (0..q.len()).map(|i| (i == 0) as u128).collect();
    for _ in 0..n {
        v = (0..q.len()).map(|j| (0..q.len()).map(|i| v[i] * q[i][j]).sum()).collect();
    }
    let counts = closed_form(case, n);
    if counts != v {
        return Err(Error::Invariant(format!("closed form {counts:?} differs from recurrence {v:?} at n = {n}")));
    }
    Ok(EvolutionCensus { case, step: n, counts, transition: q })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetectedSummands {
    pub counts: Vec<usize>,
    /// Characteristic polynomial of the evolved block equals that of the
    /// predicted direct sum with these counts.
    pub charpoly_matches: bool,
}

fn frobenius_power(a: &RingMatrix<ExtFieldSpec>, n: u32) -> RingMatrix<ExtFieldSpec> {
    let f = a.ring();
    a.map(f.clone(), |x| f.pow(x, 1u128 << n))
}

/// Evolves `a` for `n` steps over the 2-cube and reads off the summand
/// counts from eigenspace ranks of `R12 R23 R31` (3x3 cases); the counts
/// are confirmed by comparing characteristic polynomials with the predicted
/// direct sum. Symmetric bricks must already be symmetric.
pub fn detect_evolution_summands(
    a: &RingMatrix<ExtFieldSpec>,
    case: EvolutionCase,
    n: u32,
    dim_cap: usize,
) -> Result<DetectedSummands> {
    let f = a.ring();
    require_char2(f)?;
    let d = match case {
        EvolutionCase::Planar => 2,
        _ => 3,
    };
    if a.rows() != d || a.cols() != d {
        return Err(Error::input(format!("a {d}x{d} brick is required for this case")));
    }
    let stages = evolve(&BrickSpec::simple(a.clone())?, n as usize, &vec![2; d], &RESOLVED_LINE_ORDERING, dim_cap)?;
    let block = stages.last().expect("at least one step").block.matrix().clone();
    let ap = frobenius_power(a, n);
    let s = block.rows() / d;
    let copies = |m: &RingMatrix<ExtFieldSpec>, k: usize| vec![m.clone(); k];
    let (counts, parts) = match case {
        EvolutionCase::Planar => (vec![s], copies(&ap, s)),
        EvolutionCase::Generic | EvolutionCase::Symmetric => {
            let blk = |i: usize, j: usize| block.submatrix(s * i..s * i + s, s * j..s * j + s);
            let m = blk(0, 1).mul(&blk(1, 2))?.mul(&blk(2, 0))?;
            let x = |i: usize, j: usize| ap.get(i - 1, j - 1);
            let l1 = f.mul(&f.mul(x(1, 3), x(3, 2)), x(2, 1));
            let l2 = f.mul(&f.mul(x(1, 2), x(2, 3)), x(3, 1));
            let rank = |l: &<ExtFieldSpec as Ring>::Elem| m.sub(&RingMatrix::scalar(f.clone(), s, *l))?.rank();
            if case == EvolutionCase::Generic {
                let (nt, ni) = (rank(&l2)?, rank(&l1)?);
                let mut parts = copies(&ap, ni);
                parts.extend(copies(&ap.transpose(), nt));
                (vec![ni, nt], parts)
            } else {
                let nd = rank(&l2)?;
                let ns = s.checked_sub(2 * nd).ok_or_else(|| Error::Invariant("negative simple count".into()))?;
                let db = double_brick(&ap)?;
                let flat = db.ring().flatten(&db);
                let mut parts = copies(&ap, ns);
                parts.extend(copies(&flat, nd));
                (vec![ns, nd], parts)
            }
        }
    };
    let (sum, _) = RingMatrix::direct_sum(&parts)?;
    let charpoly_matches = sum.rows() == block.rows() && sum.charpoly()? == block.charpoly()?;
    Ok(DetectedSummands { counts, charpoly_matches })
}

//! The 2x2 block of a 2x2 brick.

use super::{conjugation_mismatch, require_char2, square, DecompositionReport, Summand, SummandKind, Verdict};
use crate::error::{Error, Result};
use crate::field::ExtFieldSpec;
use crate::identity::{log2_failure_bound, sampled_identity};
use crate::lattice::{assemble_block, enumerate_lines, BrickSpec, LatticeSpec};
use crate::matrix::RingMatrix;
use crate::poly::{CoeffRing, PolyRing};
use crate::ring::Ring;

use super::RESOLVED_LINE_ORDERING;

/// The brick `[[a, b], [c, d]]` over `ring` whose variables are `a, b, c, d`.
fn planar_brick(ring: &PolyRing) -> Result<RingMatrix<PolyRing>> {
    let v = |n: &str| ring.var_named(n);
    RingMatrix::from_rows(ring.clone(), vec![vec![v("a")?, v("b")?], vec![v("c")?, v("d")?]])
}

/// The known closed form of the 2x2 block over the integers.
pub fn expected_planar_block(ring: &PolyRing) -> Result<RingMatrix<PolyRing>> {
    let rows = [
        ["a^2", "2*a*b*c", "b*d", "a*b*d + b^2*c"],
        ["0", "a^2", "b", "a*b"],
        ["a*c", "a*c*d + b*c^2", "d^2", "2*b*c*d"],
        ["c", "c*d", "0", "d^2"],
    ];
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    RingMatrix::from_rows(ring.clone(), parsed)
}

fn assemble_square<R: Ring>(a: &RingMatrix<R>) -> Result<RingMatrix<R>> {
    let profile = enumerate_lines(&LatticeSpec::cube(2, 2, vec![1, 1])?, RESOLVED_LINE_ORDERING)?;
    assemble_block(&BrickSpec::simple(a.clone())?, &profile, None)
}

/// Assembles the block symbolically over the integers; returns it together
/// with whether it matches `expected_planar_block`.
pub fn planar_block_over_integers() -> Result<(RingMatrix<PolyRing>, bool)> {
    let ring = PolyRing::new(&["a", "b", "c", "d"], CoeffRing::Integer)?;
    let block = assemble_square(&planar_brick(&ring)?)?;
    let ok = block == expected_planar_block(&ring)?;
    Ok((block, ok))
}

/// Checks the structure of the block of a 2x2 brick over a characteristic-2
/// ring: scalar diagonal blocks, commuting off-diagonal products equal to
/// `b^2 c^2`, and the conjugation by `diag(1, R12)` onto
/// `[[a^2, 1], [b^2 c^2, d^2]]`, which is two copies of the brick with
/// squared entries after clearing the diagonal `diag(1, 1, b^2, b^2)`.
pub fn verify_decomposition_2d<R: Ring>(a: &RingMatrix<R>) -> Result<DecompositionReport> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::input("a 2x2 brick is required"));
    }
    let ring = a.ring().clone();
    require_char2(&ring)?;
    let (x, y, z, w) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
    let r = assemble_square(a)?;
    let blk = |i: usize, j: usize| r.submatrix(2 * i..2 * i + 2, 2 * j..2 * j + 2);
    let scalar = |s: R::Elem| RingMatrix::scalar(ring.clone(), 2, s);
    let bc2 = ring.mul(&square(&ring, y), &square(&ring, z));
    let falsified = |d: &str| DecompositionReport::new(Vec::new(), 2, Verdict::Falsified { detail: d.into() });

    if blk(0, 0) != scalar(square(&ring, x)) || blk(1, 1) != scalar(square(&ring, w)) {
        return Ok(falsified("diagonal blocks are not the squared diagonal entries"));
    }
    let (r12, r21) = (blk(0, 1), blk(1, 0));
    if r12.mul(&r21)? != scalar(bc2.clone()) || r21.mul(&r12)? != scalar(bc2.clone()) {
        return Ok(falsified("off-diagonal products are not b^2 c^2"));
    }
    if ring.is_zero_divisor(y) {
        return Ok(DecompositionReport::degenerate("b vanishes, so the second basis is not a basis"));
    }
    let ps = vec![RingMatrix::identity(ring.clone(), 2), r12];
    let mut target = RingMatrix::zeros(ring.clone(), 4, 4);
    for k in 0..2 {
        target.set(k, k, square(&ring, x));
        target.set(k, 2 + k, ring.one());
        target.set(2 + k, k, bc2.clone());
        target.set(2 + k, 2 + k, square(&ring, w));
    }
    let verdict = match conjugation_mismatch(&ps, &r, &target, &["e1", "e2"])? {
        Some(detail) => Verdict::Falsified { detail },
        None => Verdict::exact(),
    };
    Ok(DecompositionReport::new(vec![Summand { kind: SummandKind::Brick, multiplicity: 2, dim: 2 }], 2, verdict)
        .with_detail("clearing_diagonal", "diag(1, 1, b^2, b^2)"))
}

/// Symbolic run over F_2[a, b, c, d], preceded by the integer closed form.
pub fn verify_decomposition_2d_symbolic() -> Result<DecompositionReport> {
    let (_, closed_form) = planar_block_over_integers()?;
    let ring = PolyRing::new(&["a", "b", "c", "d"], CoeffRing::Modular(2))?;
    let report = verify_decomposition_2d(&planar_brick(&ring)?)?;
    Ok(if closed_form {
        report.with_detail("integer_closed_form", true)
    } else {
        DecompositionReport::new(
            report.summands,
            2,
            Verdict::Falsified { detail: "integer block differs from the closed form".into() },
        )
        .with_detail("integer_closed_form", false)
    })
}

/// Runs `verify_decomposition_2d` at random points of a characteristic-2 field.
pub fn verify_decomposition_2d_sampled(field: &ExtFieldSpec, trials: usize, seed: u64) -> Result<DecompositionReport> {
    require_char2(field)?;
    // entries of P R and S P have degree at most 4
    let degree = 4;
    let mut degenerate = 0usize;
    let v = sampled_identity(field, 4, degree, trials, seed, |pt| {
        let a = RingMatrix::new(field.clone(), 2, 2, pt.to_vec())?;
        let rep = verify_decomposition_2d(&a)?;
        Ok(match rep.verdict {
            Verdict::Falsified { detail } => Some(detail),
            Verdict::Degenerate { .. } => {
                degenerate += 1;
                None
            }
            Verdict::Verified { .. } => None,
        })
    })?;
    let verdict: Verdict = v.into();
    let verdict = match verdict {
        Verdict::Verified { .. } => Verdict::Verified {
            trials: Some(trials - degenerate),
            log2_failure_bound: Some(log2_failure_bound(field, degree, trials - degenerate)),
        },
        other => other,
    };
    Ok(DecompositionReport::new(vec![Summand { kind: SummandKind::Brick, multiplicity: 2, dim: 2 }], 2, verdict)
        .with_detail("degenerate_samples", degenerate))
}

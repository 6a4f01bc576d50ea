//! Symmetric bricks, where the cubic bases collapse and a non-diagonalizable
//! 6x6 summand appears.

use super::{
    conjugation_mismatch, require_char2, require_square3, square, thick_basis_matrices, DecompositionReport, Summand,
    SummandKind, Verdict,
};
use crate::algebra::MatrixAlgebra;
use crate::error::{Error, Result};
use crate::field::{ExtFieldSpec, FieldElement};
use crate::matrix::RingMatrix;
use crate::poly::{CoeffRing, PolyRing};
use crate::ring::{Field, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetricLevel {
    /// A symmetric brick with scalar entries.
    Simple,
    /// The brick doubled over 2x2 matrices with `a23` replaced by `a23 T`,
    /// `T = [[1, 1], [0, 1]]`.
    Double,
}

/// Gauge `g = (1, sqrt(a21 / a12), sqrt(a31 / a13))` making `a` symmetric,
/// and the symmetric brick `G^-1 a G`.
pub fn symmetrize_brick(a: &RingMatrix<ExtFieldSpec>) -> Result<(Vec<FieldElement>, RingMatrix<ExtFieldSpec>)> {
    require_square3(a)?;
    let f = a.ring();
    require_char2(f)?;
    let x = |i: usize, j: usize| *a.get(i - 1, j - 1);
    let lhs = f.mul(&f.mul(&x(1, 2), &x(2, 3)), &x(3, 1));
    let rhs = f.mul(&f.mul(&x(1, 3), &x(3, 2)), &x(2, 1));
    if lhs != rhs {
        return Err(Error::input("a12 a23 a31 != a13 a32 a21, the brick is not gauge-symmetric"));
    }
    if f.is_zero(&lhs) {
        return Err(Error::input("a12 a23 a31 = a13 a32 a21 = 0, the symmetric case needs them nonzero"));
    }
    let ratio = |num: FieldElement, den: FieldElement| f.div(&num, &den).expect("nonzero by the product check");
    let g = vec![f.one(), f.sqrt_char2(&ratio(x(2, 1), x(1, 2)))?, f.sqrt_char2(&ratio(x(3, 1), x(1, 3)))?];
    let sym = RingMatrix::from_fn(f.clone(), 3, 3, |i, j| f.div(&f.mul(a.get(i, j), &g[j]), &g[i]).unwrap());
    if sym != sym.transpose() {
        return Err(Error::Invariant("gauged brick is not symmetric".into()));
    }
    Ok((g, sym))
}

fn is_symmetric<R: Ring>(a: &RingMatrix<R>) -> bool {
    *a == a.transpose()
}

/// Rows `e1, e2, g, f` of each thick space for a symmetric brick.
pub fn symmetric_basis<R: Ring>(a: &RingMatrix<R>) -> Result<Vec<RingMatrix<R>>> {
    let thick = thick_basis_matrices(a)?;
    let r = a.ring();
    let x = |i: usize, j: usize| a.get(i - 1, j - 1).clone();
    let a23sq = square(r, &x(2, 3));
    let zero = r.zero();
    let g1 = vec![zero.clone(), zero.clone(), zero.clone(), r.mul(&r.mul(&x(1, 2), &x(1, 3)), &a23sq)];
    let g2 = {
        let c = r.mul(&x(1, 3), &a23sq);
        vec![zero.clone(), c.clone(), zero.clone(), r.mul(&x(1, 1), &c)]
    };
    let g3 = {
        let c = r.mul(&x(1, 2), &a23sq);
        vec![zero.clone(), c.clone(), zero, r.mul(&x(1, 1), &c)]
    };
    thick
        .spaces
        .iter()
        .zip([g1, g2, g3])
        .map(|(p, g)| RingMatrix::from_rows(r.clone(), vec![p.row(1).to_vec(), p.row(2).to_vec(), g, p.row(0).to_vec()]))
        .collect()
}

/// The predicted action in `symmetric_basis`: `e1` and `e2` each carry a
/// symmetric brick with squared entries; `g, f` carry the 6x6 double brick,
/// where `g` picks up `f` between spaces 2 and 3.
pub fn symmetric_target<R: Ring>(a: &RingMatrix<R>) -> Result<RingMatrix<R>> {
    require_square3(a)?;
    let r = a.ring();
    Ok(RingMatrix::from_fn(r.clone(), 12, 12, |row, col| {
        let (i, k) = (row / 4, row % 4);
        let (j, l) = (col / 4, col % 4);
        let s = square(r, a.get(i, j));
        if k == l || (k == 2 && l == 3 && i != j && i != 0 && j != 0) {
            s
        } else {
            r.zero()
        }
    }))
}

/// `a` over 2x2 matrices: scalar entries except `a23 T` at (2,3) and (3,2).
pub fn double_brick<R: Ring>(a: &RingMatrix<R>) -> Result<RingMatrix<MatrixAlgebra<R>>> {
    require_square3(a)?;
    let alg = MatrixAlgebra::new(a.ring().clone(), 2)?;
    let z = a.ring().zero();
    Ok(RingMatrix::from_fn(alg.clone(), 3, 3, |i, j| {
        let x = a.get(i, j).clone();
        if (i, j) == (1, 2) || (i, j) == (2, 1) {
            vec![x.clone(), x.clone(), z.clone(), x]
        } else {
            alg.scalar(&x)
        }
    }))
}

fn verify_simple<R: Ring>(a: &RingMatrix<R>) -> Result<(Verdict, RingMatrix<R>)> {
    require_square3(a)?;
    let r = a.ring();
    require_char2(r)?;
    if !is_symmetric(a) {
        return Err(Error::input("the brick is not symmetric; gauge it first"));
    }
    let sigma = symmetric_target(a)?;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if r.is_zero_divisor(a.get(i, j)) {
            let reason = format!("a{}{} is a zero divisor, the g vectors degenerate", i + 1, j + 1);
            return Ok((Verdict::Degenerate { reason }, sigma));
        }
    }
    let basis = symmetric_basis(a)?;
    for (i, p) in basis.iter().enumerate() {
        if r.is_zero_divisor(&p.det()?) {
            let reason = format!("basis of space {} is singular", i + 1);
            return Ok((Verdict::Degenerate { reason }, sigma));
        }
    }
    let block = super::assemble_cube(a, 2)?;
    let verdict = match conjugation_mismatch(&basis, &block, &sigma, &["e1", "e2", "g", "f"])? {
        Some(detail) => Verdict::Falsified { detail },
        None => Verdict::exact(),
    };
    Ok((verdict, sigma))
}

/// Verifies the decomposition of the block of a symmetric brick: two
/// symmetric bricks and one double brick (`Simple`), or four and two for the
/// doubled brick (`Double`), all with squared entries.
pub fn verify_symmetric_decomposition<R: Ring>(a: &RingMatrix<R>, level: SymmetricLevel) -> Result<DecompositionReport> {
    let simple = |m| Summand { kind: SummandKind::SimpleSymmetric, multiplicity: m, dim: 3 };
    let double = |m| Summand { kind: SummandKind::DoubleBrick, multiplicity: m, dim: 6 };
    match level {
        SymmetricLevel::Simple => {
            let (verdict, _) = verify_simple(a)?;
            let summands = if verdict.is_degenerate() { Vec::new() } else { vec![simple(2), double(1)] };
            Ok(DecompositionReport::new(summands, 2, verdict))
        }
        SymmetricLevel::Double => {
            let d = double_brick(a)?;
            let alg = d.ring().clone();
            let (verdict, sigma) = verify_simple(&d)?;
            if !verdict.is_verified() {
                return Ok(DecompositionReport::new(Vec::new(), 2, verdict));
            }
            // T^2 = 1, so every predicted entry is scalar and the target is two
            // copies of the simple target
            if sigma.entries().iter().any(|e| alg.as_scalar(e).is_none()) {
                let detail = "predicted action over the 2x2 algebra is not scalar".to_string();
                return Ok(DecompositionReport::new(Vec::new(), 2, Verdict::Falsified { detail }));
            }
            let flat = alg.flatten(&sigma);
            let simple_target = symmetric_target(a)?;
            let copies = RingMatrix::from_fn(a.ring().clone(), 24, 24, |row, col| {
                if row % 2 == col % 2 {
                    simple_target.get(row / 2, col / 2).clone()
                } else {
                    a.ring().zero()
                }
            });
            if flat != copies {
                let detail = "flattened action is not two copies of the simple target".to_string();
                return Ok(DecompositionReport::new(Vec::new(), 2, Verdict::Falsified { detail }));
            }
            Ok(DecompositionReport::new(vec![simple(4), double(2)], 2, verdict))
        }
    }
}

/// Symbolic run over F_2[a11, a12, a13, a22, a23, a33].
pub fn verify_symmetric_symbolic(level: SymmetricLevel) -> Result<DecompositionReport> {
    let r = PolyRing::new(&["a11", "a12", "a13", "a22", "a23", "a33"], CoeffRing::Modular(2))?;
    let v = |n: &str| r.var_named(n);
    let a = RingMatrix::from_rows(
        r.clone(),
        vec![
            vec![v("a11")?, v("a12")?, v("a13")?],
            vec![v("a12")?, v("a22")?, v("a23")?],
            vec![v("a13")?, v("a23")?, v("a33")?],
        ],
    )?;
    verify_symmetric_decomposition(&a, level)
}

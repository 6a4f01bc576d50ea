//! Cubic blocks of a 3x3 brick: the 2x2x2 decomposition and the scalar
//! structure of the p x p x p block.

use super::{
    conjugation_mismatch, cubic_target, nondegeneracy_element, require_char2, require_square3, thick_basis_matrices,
    DecompositionReport, StructureReport, Summand, SummandKind, Verdict, RESOLVED_LINE_ORDERING,
};
use crate::error::{Error, Result};
use crate::field::{build_extension_field, is_prime, ExtFieldSpec};
use crate::identity::sampled_identity;
use crate::lattice::{assemble_block, enumerate_lines, BrickSpec, LatticeSpec};
use crate::matrix::RingMatrix;
use crate::poly::{CoeffRing, PolyRing};
use crate::ring::Ring;

/// Symbolic work is abandoned for sampling above this many term products.
pub const SYMBOLIC_TERM_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Symbolic,
    /// Random points of GF(p^field_degree).
    Sampled { field_degree: usize, trials: usize, seed: u64 },
}

/// The block of `a` over the `edge`-sided cube with one-dimensional thin spaces.
pub fn assemble_cube<R: Ring>(a: &RingMatrix<R>, edge: usize) -> Result<RingMatrix<R>> {
    let profile = enumerate_lines(&LatticeSpec::cube(a.rows(), edge, vec![1; a.rows()])?, RESOLVED_LINE_ORDERING)?;
    assemble_block(&BrickSpec::simple(a.clone())?, &profile, None)
}

/// The brick of indeterminates `a11 .. a33` over F_p.
pub fn generic_brick(p: u64) -> Result<RingMatrix<PolyRing>> {
    let r = PolyRing::matrix_vars("a", 3, CoeffRing::Modular(p))?;
    Ok(RingMatrix::from_fn(r.clone(), 3, 3, |i, j| r.var(3 * i + j)))
}

fn cubic_summands() -> Vec<Summand> {
    vec![
        Summand { kind: SummandKind::TransposedBrick, multiplicity: 1, dim: 3 },
        Summand { kind: SummandKind::Brick, multiplicity: 3, dim: 3 },
    ]
}

/// Verifies that the 2x2x2 block of `a` is, in the thick bases, one
/// transposed brick and three bricks with squared entries. Exact over the
/// ring of `a`. Degenerate when `a12 a23 a31 - a13 a32 a21` is a zero divisor.
pub fn verify_decomposition_3d<R: Ring>(a: &RingMatrix<R>) -> Result<DecompositionReport> {
    require_square3(a)?;
    require_char2(a.ring())?;
    let ring = a.ring();
    if ring.is_zero_divisor(&nondegeneracy_element(a)) {
        return Ok(DecompositionReport::degenerate(
            "a12 a23 a31 - a13 a32 a21 is a zero divisor; see the symmetric case",
        ));
    }
    let r = assemble_cube(a, 2)?;
    let basis = thick_basis_matrices(a)?;
    let sigma = cubic_target(a)?;
    let verdict = match conjugation_mismatch(&basis.spaces, &r, &sigma, &["f", "e1", "e2", "e3"])? {
        Some(detail) => Verdict::Falsified { detail },
        None => Verdict::exact(),
    };
    Ok(DecompositionReport::new(cubic_summands(), 2, verdict).with_detail("ring", ring.tag()))
}

/// Symbolic run over F_2[a11 .. a33], including the thick determinants.
pub fn verify_decomposition_3d_symbolic() -> Result<DecompositionReport> {
    let a = generic_brick(2)?;
    let rep = verify_decomposition_3d(&a)?;
    let dets = super::verify_thick_determinants(&a)?;
    Ok(match dets {
        None => rep.with_detail("thick_determinants_are_squares", true),
        Some(i) => DecompositionReport::new(
            rep.summands,
            2,
            Verdict::Falsified { detail: format!("det of the basis of space {} is not d^2", i + 1) },
        ),
    })
}

/// `verify_decomposition_3d` at random points of a characteristic-2 field.
/// Degenerate samples are counted and do not contribute trials.
pub fn verify_decomposition_3d_sampled(field: &ExtFieldSpec, trials: usize, seed: u64) -> Result<DecompositionReport> {
    require_char2(field)?;
    // basis entries have degree <= 4, block entries <= 4
    let degree = 8;
    let mut degenerate = 0usize;
    let v = sampled_identity(field, 9, degree, trials, seed, |pt| {
        let a = RingMatrix::new(field.clone(), 3, 3, pt.to_vec())?;
        Ok(match verify_decomposition_3d(&a)?.verdict {
            Verdict::Falsified { detail } => Some(detail),
            Verdict::Degenerate { .. } => {
                degenerate += 1;
                None
            }
            Verdict::Verified { .. } => None,
        })
    })?;
    let verdict = match Verdict::from(v) {
        Verdict::Verified { .. } => Verdict::Verified {
            trials: Some(trials - degenerate),
            log2_failure_bound: Some(crate::identity::log2_failure_bound(field, degree, trials - degenerate)),
        },
        other => other,
    };
    Ok(DecompositionReport::new(cubic_summands(), 2, verdict).with_detail("degenerate_samples", degenerate))
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) || p > 13 {
        return Err(Error::input(format!("p must be a prime at most 13, got {p}")));
    }
    Ok(())
}

/// Total number of term products needed to multiply two blocks.
fn product_cost(x: &RingMatrix<PolyRing>, y: &RingMatrix<PolyRing>) -> u128 {
    let mut cost = 0u128;
    for i in 0..x.rows() {
        for k in 0..x.cols() {
            let tx = x.get(i, k).num_terms() as u128;
            if tx == 0 {
                continue;
            }
            for j in 0..y.cols() {
                cost += tx * y.get(k, j).num_terms() as u128;
            }
        }
    }
    cost
}

fn blocks<R: Ring>(r: &RingMatrix<R>, s: usize) -> impl Fn(usize, usize) -> RingMatrix<R> + '_ {
    move |i, j| r.submatrix(s * i..s * i + s, s * j..s * j + s)
}

/// Scalar-block checks on the p x p x p block `r` of `a`. Returns the
/// exponents `e` with `R_kl R_lk = (a_kl a_lk)^e` for the pairs (1,2),
/// (1,3), (2,3), or a mismatch description.
fn scalar_structure_at<R: Ring>(
    a: &RingMatrix<R>,
    r: &RingMatrix<R>,
    p: usize,
) -> Result<std::result::Result<Vec<Option<u32>>, String>> {
    let ring = a.ring();
    let blk = blocks(r, p * p);
    let scalar = |s: R::Elem| RingMatrix::scalar(ring.clone(), p * p, s);
    for i in 0..3 {
        if blk(i, i) != scalar(ring.pow(a.get(i, i), p as u128)) {
            return Ok(Err(format!("diagonal block ({}, {}) is not a_ii^p", i + 1, i + 1)));
        }
    }
    let mut exps = Vec::new();
    for (k, l) in [(0, 1), (0, 2), (1, 2)] {
        let x = blk(k, l).mul(&blk(l, k))?;
        if x != blk(l, k).mul(&blk(k, l))? {
            return Ok(Err(format!("R_{0}{1} and R_{1}{0} do not commute", k + 1, l + 1)));
        }
        let Some(s) = x.as_scalar() else {
            return Ok(Err(format!("R_{0}{1} R_{1}{0} is not scalar", k + 1, l + 1)));
        };
        let base = ring.mul(a.get(k, l), a.get(l, k));
        exps.push((1..=2 * p as u32).find(|&e| ring.pow(&base, e as u128) == s));
    }
    Ok(Ok(exps))
}

fn common_exponent(all: &[Vec<Option<u32>>]) -> Option<u32> {
    let first = (*all.first()?.first()?)?;
    all.iter().flatten().all(|e| *e == Some(first)).then_some(first)
}

/// Diagonal blocks `R_ii = a_ii^p` and scalar, commuting products
/// `R_kl R_lk`; reports the observed exponent of `a_kl a_lk`.
pub fn verify_scalar_structure(p: u64, mode: VerifyMode) -> Result<StructureReport> {
    check_prime(p)?;
    let pu = p as usize;
    if mode == VerifyMode::Symbolic {
        let a = generic_brick(p)?;
        let r = assemble_cube(&a, pu)?;
        let blk = blocks(&r, pu * pu);
        let cost: u128 = [(0, 1), (0, 2), (1, 2)].iter().map(|&(k, l)| 2 * product_cost(&blk(k, l), &blk(l, k))).sum();
        if cost > SYMBOLIC_TERM_CAP {
            let fallback = VerifyMode::Sampled { field_degree: 16, trials: crate::identity::DEFAULT_TRIALS, seed: 0 };
            return Ok(verify_scalar_structure(p, fallback)?
                .with_detail("symbolic_aborted", true)
                .with_detail("symbolic_cost", cost as f64));
        }
        return Ok(match scalar_structure_at(&a, &r, pu)? {
            Err(detail) => StructureReport::new(Verdict::Falsified { detail }),
            Ok(exps) => StructureReport::new(Verdict::exact())
                .with_detail("mode", "symbolic")
                .with_detail("scalar_exponent", common_exponent(&[exps])),
        });
    }
    let VerifyMode::Sampled { field_degree, trials, seed } = mode else { unreachable!() };
    let field = build_extension_field(p, field_degree)?;
    let degree = 6 * (3 * p - 2);
    let mut seen = Vec::new();
    let v = sampled_identity(&field, 9, degree, trials, seed, |pt| {
        let a = RingMatrix::new(field.clone(), 3, 3, pt.to_vec())?;
        let r = assemble_cube(&a, pu)?;
        Ok(match scalar_structure_at(&a, &r, pu)? {
            Err(detail) => Some(detail),
            Ok(exps) => {
                seen.push(exps);
                None
            }
        })
    })?;
    Ok(StructureReport::new(v.into())
        .with_detail("mode", "sampled")
        .with_detail("field", field.tag())
        .with_detail("scalar_exponent", common_exponent(&seen)))
}

/// `(M - l1)(M - l2) = 0` for `M = R12 R23 R31`, `l1 = (a13 a32 a21)^p`,
/// `l2 = (a12 a23 a31)^p`.
fn minimal_polynomial_holds<R: Ring>(a: &RingMatrix<R>, r: &RingMatrix<R>, p: usize) -> Result<bool> {
    let ring = a.ring();
    let blk = blocks(r, p * p);
    let m = blk(0, 1).mul(&blk(1, 2))?.mul(&blk(2, 0))?;
    let (l1, l2) = eigenvalues(a, p);
    let n = p * p;
    let x = m.sub(&RingMatrix::scalar(ring.clone(), n, l1))?;
    let y = m.sub(&RingMatrix::scalar(ring.clone(), n, l2))?;
    Ok(x.mul(&y)?.is_zero())
}

fn eigenvalues<R: Ring>(a: &RingMatrix<R>, p: usize) -> (R::Elem, R::Elem) {
    let ring = a.ring();
    let x = |i: usize, j: usize| a.get(i - 1, j - 1);
    let l1 = ring.pow(&ring.mul(&ring.mul(x(1, 3), x(3, 2)), x(2, 1)), p as u128);
    let l2 = ring.pow(&ring.mul(&ring.mul(x(1, 2), x(2, 3)), x(3, 1)), p as u128);
    (l1, l2)
}

/// Dimensions of the two eigenspaces of `R12 R23 R31` at a field point:
/// `(for l1, for l2)`, i.e. (transposed bricks, bricks).
fn multiplicities(a: &RingMatrix<ExtFieldSpec>, r: &RingMatrix<ExtFieldSpec>, p: usize) -> Result<(usize, usize)> {
    let f = a.ring();
    let blk = blocks(r, p * p);
    let m = blk(0, 1).mul(&blk(1, 2))?.mul(&blk(2, 0))?;
    let (l1, l2) = eigenvalues(a, p);
    let n = p * p;
    let rank1 = m.sub(&RingMatrix::scalar(f.clone(), n, l1))?.rank()?;
    let rank2 = m.sub(&RingMatrix::scalar(f.clone(), n, l2))?.rank()?;
    Ok((rank2, rank1))
}

/// Minimal polynomial of the triple product and the eigenspace dimensions
/// `p(p-1)/2` (transposed) and `p(p+1)/2` (bricks).
pub fn verify_triple_product_spectrum(p: u64, mode: VerifyMode) -> Result<StructureReport> {
    check_prime(p)?;
    let pu = p as usize;
    let expected = (pu * (pu - 1) / 2, pu * (pu + 1) / 2);
    let (field, trials, seed, symbolic) = match mode {
        VerifyMode::Symbolic => {
            if p != 2 {
                return Err(Error::Unsupported("symbolic spectrum checks run for p = 2 only".into()));
            }
            (build_extension_field(2, 16)?, 4, 0, true)
        }
        VerifyMode::Sampled { field_degree, trials, seed } => (build_extension_field(p, field_degree)?, trials, seed, false),
    };
    if symbolic {
        let a = generic_brick(2)?;
        if !minimal_polynomial_holds(&a, &assemble_cube(&a, 2)?, 2)? {
            return Ok(StructureReport::new(Verdict::Falsified {
                detail: "quadratic minimal polynomial fails symbolically".into(),
            }));
        }
    }
    let degree = 6 * (3 * p - 2);
    let mut found: Option<(usize, usize)> = None;
    let v = sampled_identity(&field, 9, degree, trials, seed, |pt| {
        let a = RingMatrix::new(field.clone(), 3, 3, pt.to_vec())?;
        let r = assemble_cube(&a, pu)?;
        if !symbolic && !minimal_polynomial_holds(&a, &r, pu)? {
            return Ok(Some("quadratic minimal polynomial fails".into()));
        }
        let (l1, l2) = eigenvalues(&a, pu);
        if l1 == l2 {
            return Ok(None);
        }
        let mult = multiplicities(&a, &r, pu)?;
        found = Some(mult);
        Ok((mult != expected).then(|| format!("eigenspace dimensions {mult:?}, expected {expected:?}")))
    })?;
    let verdict = if symbolic {
        match Verdict::from(v) {
            Verdict::Verified { .. } => Verdict::exact(),
            other => other,
        }
    } else {
        v.into()
    };
    Ok(StructureReport::new(verdict)
        .with_detail("mode", if symbolic { "symbolic" } else { "sampled" })
        .with_detail("multiplicities", found.map(|(t, b)| vec![t, b]))
        .with_detail("expected_multiplicities", vec![expected.0, expected.1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MatrixAlgebra;
    use crate::census::{count_configs, BoundaryConditions};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn symbolic_cubic_decomposition() {
        let rep = verify_decomposition_3d_symbolic().unwrap();
        assert_eq!(rep.verdict, Verdict::exact());
        assert_eq!(rep.multiplicity(SummandKind::Brick), 3);
        assert_eq!(rep.multiplicity(SummandKind::TransposedBrick), 1);
        assert_eq!(rep.total_dim(), 12);
    }

    #[test]
    fn sampled_cubic_decomposition() {
        let f = build_extension_field(2, 16).unwrap();
        let rep = verify_decomposition_3d_sampled(&f, 8, 5).unwrap();
        assert!(rep.verdict.is_verified(), "{:?}", rep.verdict);
    }

    #[test]
    fn equal_products_are_degenerate() {
        let f = build_extension_field(2, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut a = RingMatrix::from_fn(f.clone(), 3, 3, |_, _| f.random_nonzero(&mut rng));
        // a13 = a12 a23 a31 / (a32 a21)
        let num = f.mul(&f.mul(a.get(0, 1), a.get(1, 2)), a.get(2, 0));
        let den = f.mul(a.get(2, 1), a.get(1, 0));
        a.set(0, 2, crate::ring::Field::div(&f, &num, &den).unwrap());
        assert!(verify_decomposition_3d(&a).unwrap().verdict.is_degenerate());
    }

    #[test]
    fn toeplitz_algebra_entries_decompose() {
        let f = build_extension_field(2, 8).unwrap();
        let alg = MatrixAlgebra::new(f.clone(), 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut verified = 0;
        for _ in 0..5 {
            let a = RingMatrix::from_fn(alg.clone(), 3, 3, |_, _| {
                let (x, y) = (f.random(&mut rng), f.random(&mut rng));
                vec![x, y, f.zero(), x]
            });
            let rep = verify_decomposition_3d(&a).unwrap();
            assert!(!rep.verdict.is_falsified());
            verified += rep.verdict.is_verified() as usize;
        }
        assert!(verified >= 4);
    }

    #[test]
    fn scalar_structure_p2_symbolic() {
        let rep = verify_scalar_structure(2, VerifyMode::Symbolic).unwrap();
        assert_eq!(rep.verdict, Verdict::exact());
        assert_eq!(rep.details["scalar_exponent"], 2);
    }

    #[test]
    fn scalar_structure_p3_sampled() {
        let mode = VerifyMode::Sampled { field_degree: 16, trials: 8, seed: 1 };
        let rep = verify_scalar_structure(3, mode).unwrap();
        assert!(rep.verdict.is_verified(), "{:?}", rep.verdict);
        assert_eq!(rep.details["scalar_exponent"], 3);
    }

    #[test]
    fn spectrum_p2_and_p3() {
        let rep = verify_triple_product_spectrum(2, VerifyMode::Symbolic).unwrap();
        assert_eq!(rep.verdict, Verdict::exact());
        assert_eq!(rep.details["multiplicities"], serde_json::json!([1, 3]));
        let rep = verify_triple_product_spectrum(3, VerifyMode::Sampled { field_degree: 16, trials: 4, seed: 2 }).unwrap();
        assert!(rep.verdict.is_verified());
        assert_eq!(rep.details["multiplicities"], serde_json::json!([3, 6]));
    }

    #[test]
    fn bad_primes_are_rejected() {
        assert!(verify_scalar_structure(4, VerifyMode::Symbolic).is_err());
        assert!(verify_triple_product_spectrum(17, VerifyMode::Symbolic).is_err());
    }

    #[test]
    fn toric_census_factorizes() {
        // fixed-space dimension of the block = transposed part + 3 x brick part
        let f = build_extension_field(2, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let profile = enumerate_lines(&LatticeSpec::cube(3, 2, vec![1; 3]).unwrap(), RESOLVED_LINE_ORDERING).unwrap();
        let unit = enumerate_lines(&LatticeSpec::cube(3, 1, vec![1; 3]).unwrap(), RESOLVED_LINE_ORDERING).unwrap();
        let toric = BoundaryConditions::toric(3);
        let mut tested = 0;
        while tested < 10 {
            // small entries so that fixed vectors actually occur
            let vals = [f.zero(), f.one()];
            let a = RingMatrix::from_fn(f.clone(), 3, 3, |_, _| vals[rand::Rng::gen_range(&mut rng, 0..2)]);
            if f.is_zero(&nondegeneracy_element(&a)) {
                continue;
            }
            let r = assemble_cube(&a, 2).unwrap();
            let e_block = count_configs(&r, &profile, &toric).unwrap().exponent;
            let e_brick = count_configs(&a, &unit, &toric).unwrap().exponent;
            let e_transposed = count_configs(&a.transpose(), &unit, &toric).unwrap().exponent;
            assert_eq!(e_block, e_transposed + 3 * e_brick);
            tested += 1;
        }
    }
}

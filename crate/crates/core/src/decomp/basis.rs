//! Explicit bases of the three thick spaces of the 2x2x2 block.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{require_char2, require_square3, square};
use crate::error::{Error, Result};
use crate::field::build_extension_field;
use crate::lattice::{assemble_block, enumerate_lines, BrickSpec, LatticeSpec, LineOrdering};
use crate::matrix::RingMatrix;
use crate::ring::Ring;

/// Slot order of parallel lines under which the bases below are exact.
/// Found by `search_line_orderings`; a test regenerates it.
pub const RESOLVED_LINE_ORDERING: LineOrdering = LineOrdering::Lex;

/// Rows of `spaces[i]` are the basis vectors `f, e1, e2, e3` of thick space
/// `i`. `clearing[i]` is the diagonal that clears denominators from the
/// predicted action; it is all ones for these bases.
#[derive(Debug, Clone, PartialEq)]
pub struct ThickBasisSet<R: Ring> {
    pub spaces: Vec<RingMatrix<R>>,
    pub clearing: Vec<Vec<R::Elem>>,
}

/// `a12 a23 a31 - a13 a32 a21`; the bases are bases exactly when it is not
/// a zero divisor.
pub fn nondegeneracy_element<R: Ring>(a: &RingMatrix<R>) -> R::Elem {
    let r = a.ring();
    let x = |i: usize, j: usize| a.get(i - 1, j - 1);
    let lhs = r.mul(&r.mul(x(1, 2), x(2, 3)), x(3, 1));
    let rhs = r.mul(&r.mul(x(1, 3), x(3, 2)), x(2, 1));
    r.sub(&lhs, &rhs)
}

pub fn thick_basis_matrices<R: Ring>(a: &RingMatrix<R>) -> Result<ThickBasisSet<R>> {
    require_square3(a)?;
    let r = a.ring().clone();
    require_char2(&r)?;
    let x = |i: usize, j: usize| a.get(i - 1, j - 1).clone();
    let m = |p: R::Elem, q: R::Elem| r.mul(&p, &q);
    let s = |p: R::Elem, q: R::Elem| r.add(&p, &q);
    let (zero, one) = (r.zero(), r.one());

    let u1 = s(m(x(2, 1), x(3, 3)), m(x(2, 3), x(3, 1)));
    let v1 = s(m(x(2, 1), x(3, 2)), m(x(2, 2), x(3, 1)));
    let space1 = vec![
        vec![m(x(2, 1), x(3, 1)), m(x(3, 1), u1.clone()), m(x(2, 1), v1.clone()), m(u1, v1)],
        vec![zero.clone(), zero.clone(), x(1, 2), s(m(x(1, 2), x(3, 3)), m(x(1, 3), x(3, 2)))],
        vec![zero.clone(), x(1, 3), zero.clone(), s(m(x(1, 2), x(2, 3)), m(x(1, 3), x(2, 2)))],
        vec![one.clone(), x(3, 3), x(2, 2), s(m(x(2, 2), x(3, 3)), m(x(2, 3), x(3, 2)))],
    ];

    let u2 = s(m(x(1, 2), x(3, 3)), m(x(1, 3), x(3, 2)));
    let v2 = s(m(x(1, 1), x(3, 2)), m(x(1, 2), x(3, 1)));
    let space2 = vec![
        vec![m(x(1, 2), x(3, 2)), m(x(3, 2), u2.clone()), m(x(1, 2), v2.clone()), m(u2, v2)],
        vec![one.clone(), x(3, 3), x(1, 1), s(m(x(1, 1), x(3, 3)), m(x(1, 3), x(3, 1)))],
        vec![zero.clone(), x(2, 3), zero.clone(), s(m(x(1, 1), x(2, 3)), m(x(1, 3), x(2, 1)))],
        vec![zero.clone(), zero.clone(), x(2, 1), s(m(x(2, 1), x(3, 3)), m(x(2, 3), x(3, 1)))],
    ];

    let u3 = s(m(x(1, 2), x(2, 3)), m(x(1, 3), x(2, 2)));
    let v3 = s(m(x(1, 1), x(2, 3)), m(x(1, 3), x(2, 1)));
    let space3 = vec![
        vec![m(x(1, 3), x(2, 3)), m(x(2, 3), u3.clone()), m(x(1, 3), v3.clone()), m(u3, v3)],
        vec![zero.clone(), x(3, 2), zero.clone(), s(m(x(1, 1), x(3, 2)), m(x(1, 2), x(3, 1)))],
        vec![one.clone(), x(2, 2), x(1, 1), s(m(x(1, 1), x(2, 2)), m(x(1, 2), x(2, 1)))],
        vec![zero.clone(), zero, x(3, 1), s(m(x(2, 1), x(3, 2)), m(x(2, 2), x(3, 1)))],
    ];

    let spaces = [space1, space2, space3]
        .into_iter()
        .map(|rows| RingMatrix::from_rows(r.clone(), rows))
        .collect::<Result<Vec<_>>>()?;
    Ok(ThickBasisSet { spaces, clearing: vec![vec![one; 4]; 3] })
}

/// The predicted action in the thick bases: block `(i, j)` is
/// `diag(a_ji^2, a_ij^2, a_ij^2, a_ij^2)`, i.e. one transposed brick on the
/// `f` vectors and one brick on each of `e1, e2, e3`, entries squared.
pub fn cubic_target<R: Ring>(a: &RingMatrix<R>) -> Result<RingMatrix<R>> {
    require_square3(a)?;
    let r = a.ring();
    Ok(RingMatrix::from_fn(r.clone(), 12, 12, |row, col| {
        let (i, k) = (row / 4, row % 4);
        let (j, l) = (col / 4, col % 4);
        if k != l {
            r.zero()
        } else if k == 0 {
            square(r, a.get(j, i))
        } else {
            square(r, a.get(i, j))
        }
    }))
}

/// Checks `det P_i = (a12 a23 a31 + a13 a32 a21)^2` for the three spaces.
/// Returns the index of the first failing space.
pub fn verify_thick_determinants<R: Ring>(a: &RingMatrix<R>) -> Result<Option<usize>> {
    let basis = thick_basis_matrices(a)?;
    let r = a.ring();
    let d = nondegeneracy_element(a);
    let d2 = r.mul(&d, &d);
    for (i, p) in basis.spaces.iter().enumerate() {
        if p.det()? != d2 {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Searches all per-axis slot orders of the four parallel lines for those
/// under which the thick bases conjugate the block onto `cubic_target`.
/// Candidates are tested at one random point of GF(2^16); pairs of axes 1
/// and 2 are pruned before the third axis is tried. Each result holds one
/// `perm[lex_index] = slot` table per axis.
pub fn search_line_orderings(seed: u64) -> Result<Vec<Vec<Vec<usize>>>> {
    let f = build_extension_field(2, 16)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = loop {
        let a = RingMatrix::from_fn(f.clone(), 3, 3, |_, _| f.random_nonzero(&mut rng));
        if !f.is_zero(&nondegeneracy_element(&a)) {
            break a;
        }
    };
    let profile = enumerate_lines(&LatticeSpec::cube(3, 2, vec![1; 3])?, LineOrdering::Lex)?;
    let r = assemble_block(&BrickSpec::simple(a.clone())?, &profile, None)?;
    let basis = thick_basis_matrices(&a)?;
    let sigma = cubic_target(&a)?;
    let block = |m: &RingMatrix<_>, i: usize, j: usize| m.submatrix(4 * i..4 * i + 4, 4 * j..4 * j + 4);

    // Under slot table `perm` the basis written in lex coordinates has
    // column c equal to column perm[c] of the printed matrix.
    let relabel = |p: &RingMatrix<_>, perm: &[usize]| RingMatrix::from_fn(f.clone(), 4, 4, |k, c| *p.get(k, perm[c]));
    let holds = |qi: &RingMatrix<_>, qj: &RingMatrix<_>, i: usize, j: usize| -> Result<bool> {
        Ok(qi.mul(&block(&r, i, j))? == block(&sigma, i, j).mul(qj)?)
    };

    let perms = permutations(4);
    let q: Vec<Vec<RingMatrix<_>>> =
        basis.spaces.iter().map(|p| perms.iter().map(|perm| relabel(p, perm)).collect()).collect();
    let mut found = Vec::new();
    for (ia, qa) in q[0].iter().enumerate() {
        if !holds(qa, qa, 0, 0)? {
            continue;
        }
        for (ib, qb) in q[1].iter().enumerate() {
            if !(holds(qa, qb, 0, 1)? && holds(qb, qa, 1, 0)? && holds(qb, qb, 1, 1)?) {
                continue;
            }
            for (ic, qc) in q[2].iter().enumerate() {
                let ok = holds(qa, qc, 0, 2)?
                    && holds(qc, qa, 2, 0)?
                    && holds(qb, qc, 1, 2)?
                    && holds(qc, qb, 2, 1)?
                    && holds(qc, qc, 2, 2)?;
                if ok {
                    found.push(vec![perms[ia].clone(), perms[ib].clone(), perms[ic].clone()]);
                }
            }
        }
    }
    if found.is_empty() {
        return Err(Error::Invariant("no line ordering makes the thick bases exact".into()));
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MatrixAlgebra;
    use crate::field::ExtFieldSpec;
    use crate::poly::{CoeffRing, PolyRing};

    fn symbolic() -> RingMatrix<PolyRing> {
        let r = PolyRing::matrix_vars("a", 3, CoeffRing::Modular(2)).unwrap();
        RingMatrix::from_fn(r.clone(), 3, 3, |i, j| r.var(3 * i + j))
    }

    #[test]
    fn resolved_ordering_regenerates() {
        let found = search_line_orderings(2024).unwrap();
        let identity: Vec<usize> = (0..4).collect();
        assert_eq!(found, vec![vec![identity.clone(); 3]]);
        assert_eq!(RESOLVED_LINE_ORDERING, LineOrdering::Lex);
        // the identity slot tables and lex give the same block
        let f = build_extension_field(2, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = RingMatrix::from_fn(f.clone(), 3, 3, |_, _| f.random(&mut rng));
        let spec = LatticeSpec::cube(3, 2, vec![1; 3]).unwrap();
        let lex = enumerate_lines(&spec, LineOrdering::Lex).unwrap();
        let explicit = enumerate_lines(&spec, LineOrdering::Explicit(found[0].clone())).unwrap();
        let brick = BrickSpec::simple(a).unwrap();
        assert_eq!(assemble_block(&brick, &lex, None).unwrap(), assemble_block(&brick, &explicit, None).unwrap());
    }

    #[test]
    fn determinants_are_squares_symbolically() {
        assert_eq!(verify_thick_determinants(&symbolic()).unwrap(), None);
    }

    #[test]
    fn printed_rows_are_exact_symbolically() {
        let a = symbolic();
        let r = a.ring();
        let profile = enumerate_lines(&LatticeSpec::cube(3, 2, vec![1; 3]).unwrap(), RESOLVED_LINE_ORDERING).unwrap();
        let block = assemble_block(&BrickSpec::simple(a.clone()).unwrap(), &profile, None).unwrap();
        let basis = thick_basis_matrices(&a).unwrap();
        let sigma = cubic_target(&a).unwrap();
        let (p, _) = RingMatrix::direct_sum(&basis.spaces).unwrap();
        assert_eq!(p.mul(&block).unwrap(), sigma.mul(&p).unwrap());
        assert!(basis.clearing.iter().flatten().all(|c| r.is_one(c)));
    }

    #[test]
    fn bases_are_invertible_off_the_degenerate_locus() {
        let f = build_extension_field(2, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let a = RingMatrix::from_fn(f.clone(), 3, 3, |_, _| f.random(&mut rng));
            let d = nondegeneracy_element(&a);
            let basis = thick_basis_matrices(&a).unwrap();
            for p in &basis.spaces {
                assert_eq!(f.is_zero(&p.det().unwrap()), f.is_zero(&d));
            }
        }
    }

    #[test]
    fn algebra_determinant_is_d_squared() {
        // 2x2 circulant entries: det of the flattened 8x8 basis is det(d)^2
        let f = build_extension_field(2, 8).unwrap();
        let alg = MatrixAlgebra::new(f.clone(), 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let circ = |x: <ExtFieldSpec as Ring>::Elem, y| vec![x, y, y, x];
        for _ in 0..5 {
            let a = RingMatrix::from_fn(alg.clone(), 3, 3, |_, _| circ(f.random(&mut rng), f.random(&mut rng)));
            let d = alg.to_matrix(&nondegeneracy_element(&a)).det().unwrap();
            for p in thick_basis_matrices(&a).unwrap().spaces {
                assert_eq!(alg.flatten(&p).det().unwrap(), f.mul(&d, &d));
            }
        }
    }
}

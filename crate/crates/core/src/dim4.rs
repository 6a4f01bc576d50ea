//! Four-dimensional bricks reduced to three-dimensional bricks over a
//! commutative matrix algebra by eliminating the spins of the fourth axis.
//!
//! A chain of `l` bricks along the fourth axis turns the 4x4 brick
//! `[[K, L], [M, b44]]` into the 3x3 brick `a_ij = b_ij + b_i4 b_4j S` with
//! `S = T (1 - b44 T)^-1`, where `T` is the `l x l` shift closing the chain:
//! cyclic under periodic conditions, nilpotent under zero input.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::MatrixAlgebra;
use crate::census::{count_configs, Boundary, BoundaryConditions, ConfigCount};
use crate::decomp::{
    evolution_census_closed_form, verify_decomposition_3d, DecompositionReport, EvolutionCase, Summand, SummandKind,
    Verdict, RESOLVED_LINE_ORDERING,
};
use crate::error::{Error, Result};
use crate::field::{ExtFieldSpec, FieldElement};
use crate::lattice::{assemble_block, enumerate_lines, BrickSpec, LatticeSpec};
use crate::matrix::RingMatrix;
use crate::ring::{Field, Ring};

/// A 4x4 brick over a field.
#[derive(Debug, Clone, PartialEq)]
pub struct Brick4 {
    matrix: RingMatrix<ExtFieldSpec>,
}

/// Blocks of a 4x4 brick: `k` is 3x3, `l` the fourth column, `m` the fourth row.
#[derive(Debug, Clone, PartialEq)]
pub struct Brick4Split {
    pub k: RingMatrix<ExtFieldSpec>,
    pub l: Vec<FieldElement>,
    pub m: Vec<FieldElement>,
    pub b44: FieldElement,
}

impl Brick4 {
    pub fn new(matrix: RingMatrix<ExtFieldSpec>) -> Result<Self> {
        if matrix.rows() != 4 || matrix.cols() != 4 {
            return Err(Error::input(format!("a 4x4 brick is required, got {}x{}", matrix.rows(), matrix.cols())));
        }
        Ok(Brick4 { matrix })
    }

    pub fn matrix(&self) -> &RingMatrix<ExtFieldSpec> {
        &self.matrix
    }

    pub fn field(&self) -> &ExtFieldSpec {
        self.matrix.ring()
    }

    pub fn split(&self) -> Brick4Split {
        let m = &self.matrix;
        Brick4Split {
            k: m.submatrix(0..3, 0..3),
            l: (0..3).map(|i| *m.get(i, 3)).collect(),
            m: (0..3).map(|j| *m.get(3, j)).collect(),
            b44: *m.get(3, 3),
        }
    }

    pub fn from_split(s: &Brick4Split) -> Result<Self> {
        if s.k.rows() != 3 || s.k.cols() != 3 || s.l.len() != 3 || s.m.len() != 3 {
            return Err(Error::input("split blocks have the wrong shapes"));
        }
        let f = s.k.ring().clone();
        Self::new(RingMatrix::from_fn(f, 4, 4, |i, j| match (i, j) {
            (3, 3) => s.b44,
            (3, j) => s.m[j],
            (i, 3) => s.l[i],
            (i, j) => *s.k.get(i, j),
        }))
    }
}

/// Boundary condition along the fourth axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainCase {
    Periodic,
    ZeroInput,
}

impl ChainCase {
    pub fn boundary(self) -> Boundary {
        match self {
            ChainCase::Periodic => Boundary::Periodic,
            ChainCase::ZeroInput => Boundary::ZeroInput,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraTag {
    Circulant,
    UpperToeplitz,
    General,
}

/// Ones on the superdiagonal, plus the lower-left corner when periodic.
pub fn shift_matrix(field: &ExtFieldSpec, l: usize, case: ChainCase) -> Result<RingMatrix<ExtFieldSpec>> {
    if l == 0 {
        return Err(Error::input("chain length must be positive"));
    }
    Ok(RingMatrix::from_fn(field.clone(), l, l, |i, j| {
        let corner = case == ChainCase::Periodic && i == l - 1 && j == 0;
        if j == i + 1 || corner {
            field.one()
        } else {
            field.zero()
        }
    }))
}

/// The circulant matrix whose row `i` is `row` shifted right by `i`.
pub fn circulant(field: &ExtFieldSpec, row: &[FieldElement]) -> RingMatrix<ExtFieldSpec> {
    let n = row.len();
    RingMatrix::from_fn(field.clone(), n, n, |i, j| row[(j + n - i) % n])
}

/// Whether `m` has the pattern of `tag`.
pub fn matches_tag(m: &RingMatrix<ExtFieldSpec>, tag: AlgebraTag) -> bool {
    let f = m.ring();
    let n = m.rows();
    match tag {
        AlgebraTag::General => true,
        AlgebraTag::Circulant => (0..n).all(|i| (0..n).all(|j| m.get(i, j) == m.get(0, (j + n - i) % n))),
        AlgebraTag::UpperToeplitz => (0..n).all(|i| {
            (0..n).all(|j| if j >= i { m.get(i, j) == m.get(0, j - i) } else { f.is_zero(m.get(i, j)) })
        }),
    }
}

/// The reduced 3x3 brick over `l x l` matrices.
#[derive(Debug, Clone)]
pub struct ReducedBrick {
    pub case: ChainCase,
    pub l: usize,
    pub algebra: MatrixAlgebra<ExtFieldSpec>,
    pub brick: RingMatrix<MatrixAlgebra<ExtFieldSpec>>,
    /// Row-major tags of the nine entries.
    pub tags: Vec<AlgebraTag>,
}

impl ReducedBrick {
    pub fn entry(&self, i: usize, j: usize) -> RingMatrix<ExtFieldSpec> {
        self.algebra.to_matrix(self.brick.get(i, j))
    }

    /// The same brick over the base field with thin dimensions `(l, l, l)`.
    pub fn flattened(&self) -> Result<BrickSpec<ExtFieldSpec>> {
        BrickSpec::new(self.algebra.flatten(&self.brick), vec![self.l; 3])
    }

    pub fn to_json(&self) -> Value {
        let f = self.algebra.base();
        let entries: Vec<Vec<Value>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        let m = self.entry(i, j);
                        let rows: Vec<Vec<u128>> =
                            (0..self.l).map(|r| m.row(r).iter().map(|x| f.index_of(x)).collect()).collect();
                        serde_json::json!({ "tag": self.tags[3 * i + j], "matrix": rows })
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({
            "field": f.to_json(),
            "case": self.case,
            "l": self.l,
            "entries": entries,
        })
    }
}

/// Eliminates the fourth-axis spins of a chain of `l` bricks.
pub fn reduce_chain_4d(b: &Brick4, l: usize, case: ChainCase) -> Result<ReducedBrick> {
    let f = b.field();
    let s = b.split();
    let t = shift_matrix(f, l, case)?;
    let one_minus = RingMatrix::identity(f.clone(), l).sub(&t.scale(&s.b44))?;
    // singular exactly when b44^l = 1 in the periodic case
    let shift = t.mul(&one_minus.inverse()?)?;
    let alg = MatrixAlgebra::new(f.clone(), l)?;
    let tag = match case {
        ChainCase::Periodic => AlgebraTag::Circulant,
        ChainCase::ZeroInput => AlgebraTag::UpperToeplitz,
    };
    let mut entries = Vec::with_capacity(9);
    let mut tags = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            let coupling = f.mul(&s.l[i], &s.m[j]);
            let m = RingMatrix::scalar(f.clone(), l, *s.k.get(i, j)).add(&shift.scale(&coupling))?;
            if !matches_tag(&m, tag) {
                return Err(Error::Invariant(format!("entry ({}, {}) is not {tag:?}", i + 1, j + 1)));
            }
            entries.push(alg.from_matrix(&m)?);
            tags.push(tag);
        }
    }
    let brick = RingMatrix::new(alg.clone(), 3, 3, entries)?;
    Ok(ReducedBrick { case, l, algebra: alg, brick, tags })
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Determinant of a circulant matrix. For sizes that are powers of the
/// characteristic it is the sum of the row raised to the size; that value
/// is cross-checked against the general determinant.
pub fn circulant_det_charp(field: &ExtFieldSpec, row: &[FieldElement]) -> Result<FieldElement> {
    if row.is_empty() {
        return Err(Error::input("empty circulant row"));
    }
    let det = circulant(field, row).det()?;
    if !is_power_of(row.len() as u64, field.p()) {
        return Ok(det);
    }
    let sum = row.iter().fold(field.zero(), |acc, x| field.add(&acc, x));
    let formula = field.pow(&sum, row.len() as u128);
    if formula != det {
        return Err(Error::Invariant("circulant determinant formula disagrees with elimination".into()));
    }
    Ok(formula)
}

/// Image of a reduced entry under the algebra map to the field: `T -> 1`
/// for circulants, `T -> 0` for upper Toeplitz matrices.
fn entry_character(s: &Brick4Split, f: &ExtFieldSpec, i: usize, j: usize, case: ChainCase) -> Result<FieldElement> {
    let base = *s.k.get(i, j);
    match case {
        ChainCase::ZeroInput => Ok(base),
        ChainCase::Periodic => {
            let denom = f.sub(&f.one(), &s.b44);
            let c = f.div(&f.mul(&s.l[i], &s.m[j]), &denom).ok_or(Error::Singular { rank: 0, dim: 1 })?;
            Ok(f.add(&base, &c))
        }
    }
}

/// Whether the reduced brick for `l = 2^n` satisfies `d != 0`, where `d`
/// is the determinant of `a12 a23 a31 - a13 a32 a21`. Decided from the
/// b-entries (with `b44 = 0` this is the product inequality of the shifted
/// entries in the periodic case and `b13 b21 b32 != b12 b23 b31` for zero
/// input) and cross-checked against the determinant itself.
pub fn nondegeneracy_4d(b: &Brick4, case: ChainCase, n: u32) -> Result<bool> {
    let f = b.field();
    if f.characteristic() != 2 {
        return Err(Error::input("the chain conditions are stated in characteristic 2"));
    }
    let s = b.split();
    let chi = |i: usize, j: usize| entry_character(&s, f, i - 1, j - 1, case);
    let lhs = f.mul(&f.mul(&chi(1, 2)?, &chi(2, 3)?), &chi(3, 1)?);
    let rhs = f.mul(&f.mul(&chi(1, 3)?, &chi(3, 2)?), &chi(2, 1)?);
    let by_entries = lhs != rhs;
    let reduced = reduce_chain_4d(b, 1usize << n, case)?;
    let d_elem = crate::decomp::nondegeneracy_element(&reduced.brick);
    let direct = !f.is_zero(&reduced.algebra.to_matrix(&d_elem).det()?);
    if direct != by_entries {
        return Err(Error::Invariant("entry condition and determinant disagree".into()));
    }
    Ok(direct)
}

pub const MAX_STRATIFICATION_STEPS: u32 = 2;

/// Runs `n` block-making steps on the reduced brick for `l = 2^n`. Each step
/// is verified by the cubic decomposition over the algebra for both the
/// current brick and its transpose. After `n` steps every entry is a scalar
/// matrix, so the block splits into `l` identical layers, each the predicted
/// direct sum of the field brick `B` with `B_ij` the scalar of `a_ij^(2^n)`.
pub fn verify_stratification(b: &Brick4, n: u32, case: ChainCase) -> Result<DecompositionReport> {
    if n == 0 {
        return Err(Error::input("stratification needs at least one step"));
    }
    if n > MAX_STRATIFICATION_STEPS {
        return Err(Error::Resource { cap: "stratification steps", needed: n as u128, limit: 2 });
    }
    let f = b.field();
    let l = 1usize << n;
    if !nondegeneracy_4d(b, case, n)? {
        return degenerate("the reduced brick has d = 0");
    }
    let reduced = reduce_chain_4d(b, l, case)?;
    let alg = &reduced.algebra;
    let mut current = reduced.brick.clone();
    for step in 0..n {
        for (label, brick) in [("brick", current.clone()), ("transposed brick", current.transpose())] {
            let rep = verify_decomposition_3d(&brick)?;
            match rep.verdict {
                Verdict::Verified { .. } => {}
                other => {
                    let detail = format!("step {}, {label}: {other:?}", step + 1);
                    return falsified(detail);
                }
            }
        }
        current = current.map(alg.clone(), |x| alg.mul(x, x));
    }
    let s = b.split();
    let mut layer = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            let Some(scalar) = alg.as_scalar(current.get(i, j)) else {
                return falsified(format!("entry ({}, {}) is not scalar after {n} squarings", i + 1, j + 1));
            };
            let predicted = f.pow(&entry_character(&s, f, i, j, case)?, l as u128);
            if scalar != predicted {
                return falsified(format!("layer brick entry ({}, {}) differs from the prediction", i + 1, j + 1));
            }
            layer.push(scalar);
        }
    }
    let counts = evolution_census_closed_form(EvolutionCase::Generic, n)?.counts;
    let layers = l as u128;
    let summands = vec![
        Summand { kind: SummandKind::Brick, multiplicity: (counts[0] * layers) as usize, dim: 3 },
        Summand { kind: SummandKind::TransposedBrick, multiplicity: (counts[1] * layers) as usize, dim: 3 },
    ];
    let layer_json: Vec<Vec<u128>> = (0..3).map(|i| (0..3).map(|j| f.index_of(&layer[3 * i + j])).collect()).collect();
    let mut rep = DecompositionReport::new(summands, l as u64, Verdict::exact());
    rep.details.insert("layers".into(), l.into());
    rep.details.insert("per_layer_counts".into(), serde_json::json!(counts));
    rep.details.insert("layer_brick".into(), serde_json::json!(layer_json));
    rep.details.insert("gauge_ring".into(), alg.tag().into());
    Ok(rep)
}

fn degenerate(reason: &str) -> Result<DecompositionReport> {
    Ok(DecompositionReport::new(Vec::new(), 0, Verdict::Degenerate { reason: reason.into() }))
}

fn falsified(detail: String) -> Result<DecompositionReport> {
    Ok(DecompositionReport::new(Vec::new(), 0, Verdict::Falsified { detail }))
}

/// Configuration counts of the genuine 2x2x2xl block with the chain
/// condition on the fourth axis, and of the reduced 2x2x2 block, under the
/// same conditions on the first three axes.
pub fn census_cross_check_4d(
    b: &Brick4,
    l: usize,
    case: ChainCase,
    bcs3: &BoundaryConditions,
) -> Result<(ConfigCount, ConfigCount)> {
    if bcs3.d() != 3 {
        return Err(Error::input("three boundary conditions are required"));
    }
    let genuine_profile = enumerate_lines(&LatticeSpec::new(vec![2, 2, 2, l], vec![1; 4])?, RESOLVED_LINE_ORDERING)?;
    let genuine = assemble_block(&BrickSpec::simple(b.matrix.clone())?, &genuine_profile, None)?;
    let mut axes = bcs3.axes().to_vec();
    axes.push(case.boundary());
    let full = count_configs(&genuine, &genuine_profile, &BoundaryConditions::new(axes))?;

    let reduced = reduce_chain_4d(b, l, case)?.flattened()?;
    let profile = enumerate_lines(&LatticeSpec::cube(3, 2, vec![l; 3])?, RESOLVED_LINE_ORDERING)?;
    let block = assemble_block(&reduced, &profile, None)?;
    let small = count_configs(&block, &profile, bcs3)?;
    Ok((full, small))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_extension_field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_brick(f: &ExtFieldSpec, rng: &mut ChaCha8Rng, b44_zero: bool) -> Brick4 {
        let mut m = RingMatrix::from_fn(f.clone(), 4, 4, |_, _| f.random(rng));
        if b44_zero {
            m.set(3, 3, f.zero());
        }
        Brick4::new(m).unwrap()
    }

    /// Eliminates the fourth axis from the assembled 1x1x1xl chain.
    fn chain_oracle(b: &Brick4, l: usize, case: ChainCase) -> RingMatrix<ExtFieldSpec> {
        let f = b.field();
        let profile = enumerate_lines(&LatticeSpec::new(vec![1, 1, 1, l], vec![1; 4]).unwrap(), RESOLVED_LINE_ORDERING)
            .unwrap();
        let r = assemble_block(&BrickSpec::simple(b.matrix().clone()).unwrap(), &profile, None).unwrap();
        let n = 3 * l;
        let rxx = r.submatrix(0..n, 0..n);
        match case {
            ChainCase::ZeroInput => rxx,
            ChainCase::Periodic => {
                let rx4 = r.submatrix(0..n, n..n + 1);
                let r4x = r.submatrix(n..n + 1, 0..n);
                let c = f.sub(&f.one(), r.get(n, n));
                rxx.add(&rx4.scale(&f.inv(&c).unwrap()).mul(&r4x).unwrap()).unwrap()
            }
        }
    }

    #[test]
    fn shift_matrices() {
        let f = build_extension_field(2, 1).unwrap();
        let (o, z) = (f.one(), f.zero());
        let a = shift_matrix(&f, 2, ChainCase::Periodic).unwrap();
        assert_eq!(a, RingMatrix::new(f.clone(), 2, 2, vec![z, o, o, z]).unwrap());
        let b = shift_matrix(&f, 2, ChainCase::ZeroInput).unwrap();
        assert_eq!(b, RingMatrix::new(f.clone(), 2, 2, vec![z, o, z, z]).unwrap());
        for l in 1..6 {
            assert!(shift_matrix(&f, l, ChainCase::ZeroInput).unwrap().pow(l as u64).unwrap().is_zero());
        }
    }

    #[test]
    fn split_round_trip() {
        let f = build_extension_field(2, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b = random_brick(&f, &mut rng, false);
        assert_eq!(Brick4::from_split(&b.split()).unwrap(), b);
    }

    #[test]
    fn reduction_matches_chain_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (p, m) in [(2, 8), (3, 2)] {
            let f = build_extension_field(p, m).unwrap();
            for l in 1..=4 {
                for case in [ChainCase::Periodic, ChainCase::ZeroInput] {
                    let b = random_brick(&f, &mut rng, false);
                    let Ok(red) = reduce_chain_4d(&b, l, case) else { continue };
                    assert_eq!(red.flattened().unwrap().into_matrix(), chain_oracle(&b, l, case), "l={l} {case:?}");
                }
            }
        }
    }

    #[test]
    fn zero_b44_gives_the_banded_entries() {
        let f = build_extension_field(2, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for case in [ChainCase::Periodic, ChainCase::ZeroInput] {
            for l in 2..=4 {
                let b = random_brick(&f, &mut rng, true);
                let red = reduce_chain_4d(&b, l, case).unwrap();
                let bm = b.matrix();
                for i in 0..3 {
                    for j in 0..3 {
                        let c = f.mul(bm.get(i, 3), bm.get(3, j));
                        let expected = RingMatrix::from_fn(f.clone(), l, l, |r, s| {
                            if r == s {
                                *bm.get(i, j)
                            } else if s == r + 1 || (case == ChainCase::Periodic && r == l - 1 && s == 0) {
                                c
                            } else {
                                f.zero()
                            }
                        });
                        assert_eq!(red.entry(i, j), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn decoupled_chain_is_a_kronecker_lift() {
        let f = build_extension_field(2, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let b = random_brick(&f, &mut rng, false);
        let mut s = b.split();
        s.l = vec![f.zero(); 3];
        let b = Brick4::from_split(&s).unwrap();
        let red = reduce_chain_4d(&b, 3, ChainCase::ZeroInput).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(red.entry(i, j), RingMatrix::scalar(f.clone(), 3, *s.k.get(i, j)));
            }
        }
    }

    #[test]
    fn entries_commute_and_carry_tags() {
        let f = build_extension_field(2, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for case in [ChainCase::Periodic, ChainCase::ZeroInput] {
            for l in 2..=4 {
                let b = random_brick(&f, &mut rng, false);
                let Ok(red) = reduce_chain_4d(&b, l, case) else { continue };
                let es: Vec<_> = (0..9).map(|k| red.entry(k / 3, k % 3)).collect();
                for x in &es {
                    for y in &es {
                        assert_eq!(x.mul(y).unwrap(), y.mul(x).unwrap());
                    }
                }
                let tag = if case == ChainCase::Periodic { AlgebraTag::Circulant } else { AlgebraTag::UpperToeplitz };
                assert!(red.tags.iter().all(|t| *t == tag));
                assert!(es.iter().all(|e| matches_tag(e, tag)));
            }
        }
    }

    #[test]
    fn root_of_unity_is_singular() {
        let f = build_extension_field(2, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut m = random_brick(&f, &mut rng, false).matrix().clone();
        m.set(3, 3, f.one());
        let b = Brick4::new(m).unwrap();
        assert!(matches!(reduce_chain_4d(&b, 2, ChainCase::Periodic), Err(Error::Singular { .. })));
        assert!(reduce_chain_4d(&b, 2, ChainCase::ZeroInput).is_ok());
    }

    #[test]
    fn circulant_determinants() {
        let f = build_extension_field(2, 1).unwrap();
        assert_eq!(circulant_det_charp(&f, &[f.one(), f.one()]).unwrap(), f.zero());
        let g = build_extension_field(2, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (a, b) = (g.random(&mut rng), g.random(&mut rng));
        assert_eq!(circulant_det_charp(&g, &[a, b]).unwrap(), g.mul(&g.add(&a, &b), &g.add(&a, &b)));
        for n in [2, 4, 8] {
            let row: Vec<_> = (0..n).map(|_| g.random(&mut rng)).collect();
            assert_eq!(circulant_det_charp(&g, &row).unwrap(), circulant(&g, &row).det().unwrap());
        }
        let h = build_extension_field(3, 4).unwrap();
        for n in [3, 9, 5] {
            let row: Vec<_> = (0..n).map(|_| h.random(&mut rng)).collect();
            assert_eq!(circulant_det_charp(&h, &row).unwrap(), circulant(&h, &row).det().unwrap());
        }
    }

    #[test]
    fn nondegeneracy_routes_agree() {
        let f = build_extension_field(2, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            for case in [ChainCase::Periodic, ChainCase::ZeroInput] {
                let zero = rand::Rng::gen_bool(&mut rng, 0.5);
                let b = random_brick(&f, &mut rng, zero);
                if reduce_chain_4d(&b, 2, case).is_ok() {
                    nondegeneracy_4d(&b, case, 1).unwrap();
                    nondegeneracy_4d(&b, case, 2).unwrap();
                }
            }
        }
        // b13 b21 b32 = b12 b23 b31 fails for zero input
        let mut m = random_brick(&f, &mut rng, true).matrix().clone();
        let num = f.mul(&f.mul(m.get(0, 1), m.get(1, 2)), m.get(2, 0));
        let den = f.mul(m.get(1, 0), m.get(2, 1));
        m.set(0, 2, f.div(&num, &den).unwrap());
        assert!(!nondegeneracy_4d(&Brick4::new(m.clone()).unwrap(), ChainCase::ZeroInput, 1).unwrap());
        // no fourth row or column: the plain cubic condition on K
        for i in 0..4 {
            m.set(i, 3, f.zero());
            m.set(3, i, f.zero());
        }
        assert!(!nondegeneracy_4d(&Brick4::new(m).unwrap(), ChainCase::ZeroInput, 1).unwrap());
    }

    #[test]
    fn stratification_n1() {
        let f = build_extension_field(2, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for case in [ChainCase::Periodic, ChainCase::ZeroInput] {
            let b = random_brick(&f, &mut rng, true);
            let rep = verify_stratification(&b, 1, case).unwrap();
            assert_eq!(rep.verdict, Verdict::exact(), "{case:?}");
            assert_eq!(rep.multiplicity(SummandKind::Brick), 6);
            assert_eq!(rep.multiplicity(SummandKind::TransposedBrick), 2);
            assert_eq!(rep.total_dim(), 24);
        }
    }

    #[test]
    fn stratification_n2_general_b44() {
        let f = build_extension_field(2, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let b = random_brick(&f, &mut rng, false);
        let rep = verify_stratification(&b, 2, ChainCase::ZeroInput).unwrap();
        assert_eq!(rep.verdict, Verdict::exact());
        assert_eq!(rep.details["per_layer_counts"], serde_json::json!([10, 6]));
    }

    #[test]
    fn census_cross_check_small_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for m in [1, 2] {
            let f = build_extension_field(2, m).unwrap();
            for _ in 0..3 {
                let b = random_brick(&f, &mut rng, true);
                for case in [ChainCase::Periodic, ChainCase::ZeroInput] {
                    for bcs in BoundaryConditions::all_mixes(3) {
                        let (full, small) = census_cross_check_4d(&b, 2, case, &bcs).unwrap();
                        assert_eq!(full, small, "{case:?} {bcs}");
                    }
                }
            }
        }
    }
}

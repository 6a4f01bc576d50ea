//! Brute-force oracles: point maps of linear maps on F_q^N and exhaustive
//! configuration counting.
//!
//! A point `x` in F_q^N is indexed by the little-endian base-q number whose
//! digit k is the index of coordinate `x_k`.

use serde::Serialize;

use crate::census::{check_shapes, Boundary, BoundaryConditions, ConfigCount};
use crate::error::{Error, Result};
use crate::field::{ExtFieldSpec, FieldElement};
use crate::lattice::{apply_brick_to_row, BrickSpec, ThickProfile};
use crate::matrix::RingMatrix;
use crate::ring::{Field, Ring};

pub const MAX_MAP_POINTS: u128 = 1 << 20;
pub const MAX_CENSUS_POINTS: u128 = 1 << 22;

fn point_count(q: u128, n: usize, cap: u128, what: &'static str) -> Result<u64> {
    let mut total: u128 = 1;
    for _ in 0..n {
        total = total.saturating_mul(q);
        if total > cap {
            return Err(Error::Resource { cap: what, needed: q.saturating_pow(n as u32), limit: cap });
        }
    }
    Ok(total as u64)
}

/// The set map `x -> x A` on all points of F_q^N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointMap {
    q: u64,
    n: usize,
    table: Vec<u32>,
}

impl PointMap {
    pub fn from_table(q: u64, n: usize, table: Vec<u32>) -> Result<Self> {
        let size = point_count(q as u128, n, u32::MAX as u128, "points")?;
        if table.len() as u64 != size || table.iter().any(|&t| t as u64 >= size) {
            return Err(Error::input("table does not describe a map on q^N points"));
        }
        Ok(PointMap { q, n, table })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn image(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    pub fn image_size(&self) -> usize {
        let mut seen = vec![false; self.table.len()];
        self.table.iter().filter(|&&t| !std::mem::replace(&mut seen[t as usize], true)).count()
    }

    pub fn is_bijective(&self) -> bool {
        self.image_size() == self.table.len()
    }
}

pub fn encode_point(field: &ExtFieldSpec, x: &[FieldElement]) -> u64 {
    let q = field.size() as u64;
    x.iter().rev().fold(0, |acc, e| acc * q + field.index_of(e) as u64)
}

pub fn decode_point(field: &ExtFieldSpec, n: usize, mut index: u64) -> Vec<FieldElement> {
    let q = field.size() as u64;
    (0..n)
        .map(|_| {
            let d = index % q;
            index /= q;
            field.from_index(d as u128)
        })
        .collect()
}

/// Little-endian odometer over F_q^N keeping `y = x A` up to date with one
/// row update per changed digit.
struct Odometer<'a> {
    field: &'a ExtFieldSpec,
    a: &'a RingMatrix<ExtFieldSpec>,
    digits: Vec<u64>,
    x: Vec<FieldElement>,
    y: Vec<FieldElement>,
    q: u64,
}

impl<'a> Odometer<'a> {
    fn new(field: &'a ExtFieldSpec, a: &'a RingMatrix<ExtFieldSpec>) -> Self {
        Odometer {
            field,
            a,
            digits: vec![0; a.rows()],
            x: vec![field.zero(); a.rows()],
            y: vec![field.zero(); a.cols()],
            q: field.size() as u64,
        }
    }

    fn set_digit(&mut self, k: usize, d: u64) {
        let f = self.field;
        let new = f.from_index(d as u128);
        let delta = f.sub(&new, &self.x[k]);
        for (j, yj) in self.y.iter_mut().enumerate() {
            *yj = f.add(yj, &f.mul(&delta, self.a.get(k, j)));
        }
        self.x[k] = new;
        self.digits[k] = d;
    }

    /// Advances to the next point; false after the last one.
    fn step(&mut self) -> bool {
        for k in 0..self.digits.len() {
            if self.digits[k] + 1 < self.q {
                self.set_digit(k, self.digits[k] + 1);
                return true;
            }
            self.set_digit(k, 0);
        }
        false
    }
}

pub fn materialize_map(a: &RingMatrix<ExtFieldSpec>, cap: u128) -> Result<PointMap> {
    let field = a.ring();
    if !a.is_square() {
        return Err(Error::input("point maps need a square matrix"));
    }
    let q = field.size();
    let total = point_count(q, a.rows(), cap, "points")?;
    let mut table = Vec::with_capacity(total as usize);
    let mut od = Odometer::new(field, a);
    loop {
        table.push(encode_point(field, &od.y) as u32);
        if !od.step() {
            break;
        }
    }
    Ok(PointMap { q: q as u64, n: a.rows(), table })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum OracleVerdict {
    Verified,
    Falsified { law: String, point: u64 },
}

/// First point where `product` differs from applying `factors` in order.
pub fn check_composition(product: &PointMap, factors: &[PointMap]) -> Option<u64> {
    (0..product.table.len() as u32)
        .find(|&x| factors.iter().fold(x, |acc, f| f.image(acc)) != product.image(x))
        .map(u64::from)
}

/// First point where `sum` differs from the product map of `parts` on the
/// Cartesian product of their index sets (first part least significant).
pub fn check_tensor(sum: &PointMap, parts: &[PointMap]) -> Option<u64> {
    (0..sum.table.len() as u64)
        .find(|&x| {
            let mut rest = x;
            let mut expected = 0u64;
            let mut scale = 1u64;
            for p in parts {
                let size = p.table.len() as u64;
                expected += scale * p.image((rest % size) as u32) as u64;
                rest /= size;
                scale *= size;
            }
            expected != sum.image(x as u32) as u64
        })
}

pub fn check_identity(map: &PointMap) -> Option<u64> {
    (0..map.table.len() as u32).find(|&x| map.image(x) != x).map(u64::from)
}

/// Checks identity, product and direct-sum laws for the point maps of `mats`.
/// The product law is checked when all matrices share one size.
pub fn check_operator_laws(mats: &[RingMatrix<ExtFieldSpec>], cap: u128) -> Result<OracleVerdict> {
    let first = mats.first().ok_or_else(|| Error::input("no matrices given"))?;
    let field = first.ring();
    let maps = mats.iter().map(|m| materialize_map(m, cap)).collect::<Result<Vec<_>>>()?;
    for m in mats {
        let id = materialize_map(&RingMatrix::identity(field.clone(), m.rows()), cap)?;
        if let Some(x) = check_identity(&id) {
            return Ok(OracleVerdict::Falsified { law: "identity".into(), point: x });
        }
    }
    if mats.iter().all(|m| m.rows() == first.rows()) {
        let mut prod = RingMatrix::identity(field.clone(), first.rows());
        for m in mats {
            prod = prod.mul(m)?;
        }
        if let Some(x) = check_composition(&materialize_map(&prod, cap)?, &maps) {
            return Ok(OracleVerdict::Falsified { law: "product".into(), point: x });
        }
    }
    let (sum, _) = RingMatrix::direct_sum(mats)?;
    if let Some(x) = check_tensor(&materialize_map(&sum, cap)?, &maps) {
        return Ok(OracleVerdict::Falsified { law: "direct sum".into(), point: x });
    }
    Ok(OracleVerdict::Verified)
}

fn exponent_of(count: u64, q: u64) -> Result<usize> {
    let mut e = 0;
    let mut c = count;
    while c > 1 && c % q == 0 {
        c /= q;
        e += 1;
    }
    if c != 1 {
        return Err(Error::Invariant(format!("configuration count {count} is not a power of {q}")));
    }
    Ok(e)
}

/// Enumerates every input row and counts those meeting the boundary conditions.
pub fn brute_force_census(
    r: &RingMatrix<ExtFieldSpec>,
    profile: &ThickProfile,
    bcs: &BoundaryConditions,
    cap: u128,
) -> Result<ConfigCount> {
    check_shapes(r, profile, bcs)?;
    let field = r.ring();
    let n = r.rows();
    let q = field.size();
    point_count(q, n, cap, "points")?;
    let dims = profile.thick_dims();
    let mut periodic = Vec::new();
    let mut zero = Vec::new();
    for (axis, b) in bcs.axes().iter().enumerate() {
        let range = profile.offset(axis)..profile.offset(axis) + dims[axis];
        match b {
            Boundary::Periodic => periodic.extend(range),
            Boundary::ZeroInput => zero.extend(range),
            Boundary::Free => {}
        }
    }
    let count = if field.p() == 2 && field.degree() == 1 && n <= 63 {
        census_f2(r, &periodic, &zero)
    } else {
        let mut od = Odometer::new(field, r);
        let mut count = 0u64;
        loop {
            let ok = zero.iter().all(|&j| field.is_zero(&od.x[j])) && periodic.iter().all(|&j| od.x[j] == od.y[j]);
            count += ok as u64;
            if !od.step() {
                break;
            }
        }
        count
    };
    Ok(ConfigCount { p: field.p(), q, exponent: exponent_of(count, q as u64)? })
}

/// Gray-code enumeration over F_2: each step flips one input bit and XORs one row.
fn census_f2(r: &RingMatrix<ExtFieldSpec>, periodic: &[usize], zero: &[usize]) -> u64 {
    let f = r.ring();
    let n = r.rows();
    let rows: Vec<u64> = (0..n)
        .map(|i| (0..n).fold(0u64, |w, j| if f.is_zero(r.get(i, j)) { w } else { w | 1 << j }))
        .collect();
    let pmask = periodic.iter().fold(0u64, |m, &j| m | 1 << j);
    let zmask = zero.iter().fold(0u64, |m, &j| m | 1 << j);
    let (mut x, mut y) = (0u64, 0u64);
    let mut count = 0u64;
    let total = 1u64 << n;
    for step in 0..total {
        if (x & zmask) == 0 && ((x ^ y) & pmask) == 0 {
            count += 1;
        }
        if step + 1 < total {
            let k = (step + 1).trailing_zeros() as usize;
            x ^= 1 << k;
            y ^= rows[k];
        }
    }
    count
}

/// Values on every edge segment of a block: `edges[axis][slot][k]` is the
/// thin vector on segment `k` of that line (0 = input, edge length = output).
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeConfiguration<E> {
    pub edges: Vec<Vec<Vec<Vec<E>>>>,
}

/// Propagates the input row `x` vertex by vertex in layered order.
pub fn reconstruct_configuration<R: Ring>(
    brick: &BrickSpec<R>,
    profile: &ThickProfile,
    x: &[R::Elem],
) -> Result<EdgeConfiguration<R::Elem>> {
    if x.len() != profile.total_dim() {
        return Err(Error::input("input length does not match the lattice"));
    }
    let ring = brick.matrix().ring();
    let spec = profile.spec();
    let thin = profile.thin_dims();
    let mut edges: Vec<Vec<Vec<Vec<R::Elem>>>> = (0..spec.d())
        .map(|axis| {
            (0..spec.lines(axis))
                .map(|slot| {
                    let mut segs = vec![Vec::new(); spec.edges()[axis] + 1];
                    let start = profile.offset(axis) + slot * thin[axis];
                    segs[0] = x[start..start + thin[axis]].to_vec();
                    segs
                })
                .collect()
        })
        .collect();
    let mut buf = Vec::new();
    let local: Vec<usize> = (0..brick.matrix().rows()).collect();
    for v in spec.default_order() {
        let mut row: Vec<R::Elem> = Vec::new();
        for axis in 0..spec.d() {
            row.extend(edges[axis][profile.slot(axis, &v)][v[axis]].iter().cloned());
        }
        apply_brick_to_row(ring, brick.matrix(), &local, &mut row, &mut buf);
        let mut off = 0;
        for axis in 0..spec.d() {
            let slot = profile.slot(axis, &v);
            edges[axis][slot][v[axis] + 1] = row[off..off + thin[axis]].to_vec();
            off += thin[axis];
        }
    }
    Ok(EdgeConfiguration { edges })
}

/// Checks consistency at every vertex and that the outputs equal `x r`.
pub fn check_configuration<R: Ring>(
    brick: &BrickSpec<R>,
    profile: &ThickProfile,
    block: &RingMatrix<R>,
    x: &[R::Elem],
    config: &EdgeConfiguration<R::Elem>,
) -> Result<bool> {
    let spec = profile.spec();
    let thin = profile.thin_dims();
    for v in spec.vertices() {
        let mut input = Vec::new();
        let mut output = Vec::new();
        for axis in 0..spec.d() {
            let line = &config.edges[axis][profile.slot(axis, &v)];
            input.extend(line[v[axis]].iter().cloned());
            output.extend(line[v[axis] + 1].iter().cloned());
        }
        if brick.matrix().apply(&input)? != output {
            return Ok(false);
        }
    }
    let y = block.apply(x)?;
    for axis in 0..spec.d() {
        for slot in 0..spec.lines(axis) {
            let start = profile.offset(axis) + slot * thin[axis];
            if config.edges[axis][slot][spec.edges()[axis]] != y[start..start + thin[axis]] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

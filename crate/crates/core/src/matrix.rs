//! Dense matrices over a commutative ring.
//!
//! Vectors are rows and matrices act on the right: applying `a` and then `b`
//! to a row vector `x` gives `x * (a * b)`. There is no column-vector API.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Clone)]
pub struct RingMatrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    entries: Vec<R::Elem>,
}

impl<R: Ring> PartialEq for RingMatrix<R> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl<R: Ring> fmt::Debug for RingMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.ring.tag())?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Block sizes along the diagonal of a square matrix.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BlockProfile {
    sizes: Vec<usize>,
}

impl BlockProfile {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.iter().any(|&s| s == 0) {
            return Err(Error::input("block sizes must be positive"));
        }
        Ok(BlockProfile { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn dim(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn offset(&self, block: usize) -> usize {
        self.sizes[..block].iter().sum()
    }

    pub fn range(&self, block: usize) -> std::ops::Range<usize> {
        let o = self.offset(block);
        o..o + self.sizes[block]
    }
}

impl<R: Ring> RingMatrix<R> {
    pub fn new(ring: R, rows: usize, cols: usize, entries: Vec<R::Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::input(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RingMatrix { ring, rows, cols, entries })
    }

    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::input("ragged rows"));
        }
        Self::new(ring, n, m, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(ring: R, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RingMatrix { ring, rows, cols, entries }
    }

    pub fn zeros(ring: R, rows: usize, cols: usize) -> Self {
        let z = ring.zero();
        RingMatrix { entries: vec![z; rows * cols], ring, rows, cols }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        Self::scalar(ring.clone(), n, ring.one())
    }

    pub fn scalar(ring: R, n: usize, s: R::Elem) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = s.clone();
        }
        m
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [R::Elem] {
        &mut self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<S: Ring>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> RingMatrix<S> {
        RingMatrix {
            entries: self.entries.iter().map(f).collect(),
            ring: target,
            rows: self.rows,
            cols: self.cols,
        }
    }

    pub fn try_map<S: Ring>(
        &self,
        target: S,
        f: impl Fn(&R::Elem) -> Result<S::Elem>,
    ) -> Result<RingMatrix<S>> {
        Ok(RingMatrix {
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
            ring: target,
            rows: self.rows,
            cols: self.cols,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        Self::from_fn(self.ring.clone(), rows.len(), cols.len(), |i, j| {
            self.get(rows.start + i, cols.start + j).clone()
        })
    }

    /// Block (i, j) with respect to a profile on both sides.
    pub fn block(&self, profile: &BlockProfile, i: usize, j: usize) -> Self {
        self.submatrix(profile.range(i), profile.range(j))
    }

    fn check_same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::input(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same_shape(o)?;
        let r = &self.ring;
        Ok(RingMatrix {
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| r.add(a, b)).collect(),
            ring: r.clone(),
            rows: self.rows,
            cols: self.cols,
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_same_shape(o)?;
        let r = &self.ring;
        Ok(RingMatrix {
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| r.sub(a, b)).collect(),
            ring: r.clone(),
            rows: self.rows,
            cols: self.cols,
        })
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        self.map(self.ring.clone(), |a| self.ring.mul(s, a))
    }

    /// Matrix product `self * o`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let r = &self.ring;
        let mut out = Self::zeros(r.clone(), self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if r.is_zero(b) {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.entries[idx] = r.add(&out.entries[idx], &r.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply(&self, x: &[R::Elem]) -> Result<Vec<R::Elem>> {
        if x.len() != self.rows {
            return Err(Error::input("vector length does not match matrix rows"));
        }
        let r = &self.ring;
        let mut y = vec![r.zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if r.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter_mut().enumerate() {
                *yj = r.add(yj, &r.mul(xi, self.get(i, j)));
            }
        }
        Ok(y)
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::input("power of a non-square matrix"));
        }
        let mut acc = Self::identity(self.ring.clone(), self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Kronecker product; row (and column) index is `outer * inner_dim + inner`.
    pub fn kron(&self, o: &Self) -> Self {
        let r = &self.ring;
        Self::from_fn(r.clone(), self.rows * o.rows, self.cols * o.cols, |i, j| {
            r.mul(self.get(i / o.rows, j / o.cols), o.get(i % o.rows, j % o.cols))
        })
    }

    /// Block-diagonal stacking in list order.
    pub fn direct_sum(ms: &[Self]) -> Result<(Self, BlockProfile)> {
        let first = ms.first().ok_or_else(|| Error::input("direct sum of an empty list"))?;
        if ms.iter().any(|m| !m.is_square()) {
            return Err(Error::input("direct sum needs square summands"));
        }
        let profile = BlockProfile::new(ms.iter().map(|m| m.rows).collect())?;
        let n = profile.dim();
        let mut out = Self::zeros(first.ring.clone(), n, n);
        let mut off = 0;
        for m in ms {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(off + i, off + j, m.get(i, j).clone());
                }
            }
            off += m.rows;
        }
        Ok((out, profile))
    }

    /// `P * self * P^T` for the permutation sending new index i to old index `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.rows)?;
        if !self.is_square() {
            return Err(Error::input("simultaneous permutation needs a square matrix"));
        }
        Ok(Self::from_fn(self.ring.clone(), self.rows, self.cols, |i, j| {
            self.get(perm[i], perm[j]).clone()
        }))
    }

    /// The scalar `s` when the matrix equals `s * 1`.
    pub fn as_scalar(&self) -> Option<R::Elem> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(self.ring.zero());
        }
        let s = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                let ok = if i == j { *e == s } else { self.ring.is_zero(e) };
                if !ok {
                    return None;
                }
            }
        }
        Some(s)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    /// Characteristic polynomial det(x*1 - self), highest degree first, by
    /// Berkowitz's division-free algorithm.
    pub fn charpoly(&self) -> Result<Vec<R::Elem>> {
        if !self.is_square() {
            return Err(Error::input("characteristic polynomial of a non-square matrix"));
        }
        let r = &self.ring;
        let n = self.rows;
        if n == 0 {
            return Ok(vec![r.one()]);
        }
        // poly for the leading 1x1 submatrix, then grow one row/column at a time
        let mut poly = vec![r.one(), r.neg(self.get(0, 0))];
        for k in 1..n {
            // leading (k+1)x(k+1): A = leading k x k, column c = A[:k, k], row R = A[k, :k]
            let a_kk = self.get(k, k);
            let col: Vec<R::Elem> = (0..k).map(|i| self.get(i, k).clone()).collect();
            let mut items = Vec::with_capacity(k + 2);
            items.push(r.one());
            items.push(r.neg(a_kk));
            let mut v = col;
            for step in 0..k {
                // -R * A^step * c
                let mut dot = r.zero();
                for (j, vj) in v.iter().enumerate() {
                    dot = r.add(&dot, &r.mul(self.get(k, j), vj));
                }
                items.push(r.neg(&dot));
                if step + 1 < k {
                    let mut next = vec![r.zero(); k];
                    for (i, slot) in next.iter_mut().enumerate() {
                        let mut s = r.zero();
                        for (j, vj) in v.iter().enumerate() {
                            s = r.add(&s, &r.mul(self.get(i, j), vj));
                        }
                        *slot = s;
                    }
                    v = next;
                }
            }
            // new = T * poly, T lower-triangular Toeplitz (k+2) x (k+1)
            let mut next = vec![r.zero(); k + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                let mut s = r.zero();
                for (j, pj) in poly.iter().enumerate() {
                    if i >= j {
                        s = r.add(&s, &r.mul(&items[i - j], pj));
                    }
                }
                *slot = s;
            }
            poly = next;
        }
        Ok(poly)
    }

    /// Determinant. Fields use Gaussian elimination; other rings use the
    /// division-free characteristic polynomial.
    pub fn det(&self) -> Result<R::Elem> {
        if !self.is_square() {
            return Err(Error::input(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        if self.ring.is_field() {
            return Ok(self.det_by_elimination());
        }
        self.det_division_free()
    }

    pub fn det_division_free(&self) -> Result<R::Elem> {
        let cp = self.charpoly()?;
        let c = cp.last().expect("charpoly is nonempty").clone();
        Ok(if self.rows % 2 == 0 { c } else { self.ring.neg(&c) })
    }

    fn det_by_elimination(&self) -> R::Elem {
        let r = &self.ring;
        let n = self.rows;
        let mut m = self.entries.clone();
        let mut det = r.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !r.is_zero(&m[i * n + col])) else {
                return r.zero();
            };
            if p != col {
                for j in 0..n {
                    m.swap(p * n + j, col * n + j);
                }
                det = r.neg(&det);
            }
            let piv = m[col * n + col].clone();
            det = r.mul(&det, &piv);
            let inv = r.try_inv(&piv).expect("nonzero field element is invertible");
            for i in col + 1..n {
                let f = r.mul(&m[i * n + col], &inv);
                if r.is_zero(&f) {
                    continue;
                }
                for j in col..n {
                    let t = r.mul(&f, &m[col * n + j]);
                    m[i * n + j] = r.sub(&m[i * n + j], &t);
                }
            }
        }
        det
    }

    /// Adjugate via Cayley-Hamilton on the Berkowitz characteristic polynomial.
    pub fn adjugate(&self) -> Result<Self> {
        let cp = self.charpoly()?;
        let n = self.rows;
        let r = &self.ring;
        if n == 0 {
            return Ok(self.clone());
        }
        // Horner: A^{n-1} + c1 A^{n-2} + ... + c_{n-1} 1
        let mut acc = Self::identity(r.clone(), n);
        for c in &cp[1..n] {
            acc = acc.mul(self)?.add(&Self::scalar(r.clone(), n, c.clone()))?;
        }
        Ok(if n % 2 == 1 { acc } else { acc.scale(&r.neg(&r.one())) })
    }

    /// Exact inverse. Over fields this is Gauss-Jordan; over other rings the
    /// determinant must be a unit the ring can invert.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::input("inverse of a non-square matrix"));
        }
        if self.ring.is_field() {
            return self.inverse_gauss_jordan();
        }
        let det = self.det_division_free()?;
        let inv = self
            .ring
            .try_inv(&det)
            .ok_or_else(|| Error::input("determinant is not a unit of the ring"))?;
        Ok(self.adjugate()?.scale(&inv))
    }

    fn inverse_gauss_jordan(&self) -> Result<Self> {
        let n = self.rows;
        let mut aug = Self::from_fn(self.ring.clone(), n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.ring.one()
            } else {
                self.ring.zero()
            }
        });
        let pivots = aug.rref_in_place(n)?;
        if pivots.len() < n {
            return Err(Error::Singular { rank: pivots.len(), dim: n });
        }
        Ok(aug.submatrix(0..n, n..2 * n))
    }

    fn require_field(&self, what: &str) -> Result<()> {
        if self.ring.is_field() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("{what} needs a field, got {}", self.ring.tag())))
        }
    }

    /// Reduced row echelon form restricted to the first `limit` columns;
    /// returns pivot columns. Pivots: first nonzero entry scanning columns
    /// left to right, rows top to bottom.
    fn rref_in_place(&mut self, limit: usize) -> Result<Vec<usize>> {
        self.require_field("row reduction")?;
        let r = self.ring.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..limit {
            if prow == rows {
                break;
            }
            let Some(p) = (prow..rows).find(|&i| !r.is_zero(self.get(i, col))) else {
                continue;
            };
            if p != prow {
                for j in 0..cols {
                    self.entries.swap(p * cols + j, prow * cols + j);
                }
            }
            let inv = r.try_inv(self.get(prow, col)).expect("nonzero field element is invertible");
            for j in 0..cols {
                let v = r.mul(self.get(prow, j), &inv);
                self.set(prow, j, v);
            }
            for i in 0..rows {
                if i == prow {
                    continue;
                }
                let f = self.get(i, col).clone();
                if r.is_zero(&f) {
                    continue;
                }
                for j in 0..cols {
                    let t = r.mul(&f, self.get(prow, j));
                    let v = r.sub(self.get(i, j), &t);
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Ok(pivots)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> Result<(Self, Vec<usize>)> {
        let mut m = self.clone();
        let piv = m.rref_in_place(self.cols)?;
        Ok((m, piv))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Basis of the left kernel `{x : x * self = 0}` in reduced row echelon form.
    pub fn row_kernel(&self) -> Result<Vec<Vec<R::Elem>>> {
        self.require_field("kernel")?;
        // left kernel of M = right kernel of M^T
        let (e, pivots) = self.transpose().rref()?;
        let n = self.rows;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let r = &self.ring;
        let mut basis: Vec<Vec<R::Elem>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![r.zero(); n];
                v[f] = r.one();
                for (prow, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.neg(e.get(prow, f));
                }
                v
            })
            .collect();
        if basis.is_empty() {
            return Ok(basis);
        }
        let k = basis.len();
        let m = Self::new(r.clone(), k, n, basis.drain(..).flatten().collect())?;
        let (red, _) = m.rref()?;
        Ok((0..k).map(|i| red.row(i).to_vec()).collect())
    }

    /// `G^-1 * self * G` with `G` the direct sum of `gs`, sized by `profile`.
    pub fn gauge_conjugate(&self, profile: &BlockProfile, gs: &[Self]) -> Result<Self> {
        if gs.len() != profile.sizes().len() {
            return Err(Error::input("one gauge matrix per block required"));
        }
        for (g, &s) in gs.iter().zip(profile.sizes()) {
            if !g.is_square() || g.rows != s {
                return Err(Error::input(format!("gauge block of size {} for a block of size {s}", g.rows)));
            }
        }
        if profile.dim() != self.rows || !self.is_square() {
            return Err(Error::input("profile does not match the matrix"));
        }
        let (g, _) = Self::direct_sum(gs)?;
        let ginv = g.inverse().map_err(|e| Error::input(format!("gauge matrix not invertible: {e}")))?;
        ginv.mul(self)?.mul(&g)
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::input(format!("permutation of length {} for size {n}", perm.len())));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::input("not a permutation"));
        }
        seen[p] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{build_extension_field, ExtFieldSpec};
    use crate::poly::{CoeffRing, PolyRing};
    use crate::ring::{Field, Integers};
    use rand::{Rng as _, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(f: &ExtFieldSpec, n: usize, m: usize, rng: &mut ChaCha8Rng) -> RingMatrix<ExtFieldSpec> {
        RingMatrix::from_fn(f.clone(), n, m, |_, _| f.random(rng))
    }

    fn random_invertible(f: &ExtFieldSpec, n: usize, rng: &mut ChaCha8Rng) -> RingMatrix<ExtFieldSpec> {
        loop {
            let m = random(f, n, n, rng);
            if !f.is_zero(&m.det().unwrap()) {
                return m;
            }
        }
    }

    /// Cofactor expansion, independent of both determinant routes.
    fn det_cofactor<R: Ring>(m: &RingMatrix<R>) -> R::Elem {
        let n = m.rows();
        let r = m.ring();
        if n == 0 {
            return r.one();
        }
        let mut acc = r.zero();
        for j in 0..n {
            let minor = RingMatrix::from_fn(r.clone(), n - 1, n - 1, |a, b| {
                m.get(a + 1, if b < j { b } else { b + 1 }).clone()
            });
            let t = r.mul(m.get(0, j), &det_cofactor(&minor));
            acc = if j % 2 == 0 { r.add(&acc, &t) } else { r.sub(&acc, &t) };
        }
        acc
    }

    #[test]
    fn identity_is_neutral() {
        let f = build_extension_field(2, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random(&f, 3, 5, &mut rng);
        assert_eq!(RingMatrix::identity(f.clone(), 3).mul(&m).unwrap(), m);
        assert!(m.mul(&m).is_err());
    }

    #[test]
    fn adjugate_of_two_by_two_poly() {
        let r = PolyRing::new(&["a", "b", "c", "d"], CoeffRing::Modular(2)).unwrap();
        let a = RingMatrix::from_rows(
            r.clone(),
            vec![vec![r.var(0), r.var(1)], vec![r.var(2), r.var(3)]],
        )
        .unwrap();
        // hand adjugate [[d, b], [c, a]] in characteristic 2
        let adj = RingMatrix::from_rows(
            r.clone(),
            vec![vec![r.var(3), r.var(1)], vec![r.var(2), r.var(0)]],
        )
        .unwrap();
        assert_eq!(a.adjugate().unwrap(), adj);
        let det = r.parse("a*d + b*c").unwrap();
        assert_eq!(a.mul(&adj).unwrap(), RingMatrix::scalar(r.clone(), 2, det.clone()));
        assert_eq!(a.det().unwrap(), det);
    }

    #[test]
    fn determinant_routes_agree_with_cofactor_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = build_extension_field(3, 4).unwrap();
        for n in 0..6 {
            let m = random(&f, n, n, &mut rng);
            let c = det_cofactor(&m);
            assert_eq!(m.det().unwrap(), c);
            assert_eq!(m.det_division_free().unwrap(), c);
        }
        let z = RingMatrix::from_rows(Integers, vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]).unwrap();
        assert_eq!(z.det().unwrap(), det_cofactor(&z));
        assert_eq!(z.det().unwrap(), 18);
        assert!(RingMatrix::zeros(Integers, 2, 3).det().is_err());
    }

    #[test]
    fn kron_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f2 = build_extension_field(2, 1).unwrap();
        let m = random(&f2, 3, 3, &mut rng);
        let one1 = RingMatrix::identity(f2.clone(), 1);
        assert_eq!(m.kron(&one1), m);
        let i3 = RingMatrix::identity(f2.clone(), 3);
        let (ds, prof) = RingMatrix::direct_sum(&[m.clone(), m.clone(), m.clone()]).unwrap();
        assert_eq!(i3.kron(&m), ds);
        assert_eq!(prof.sizes(), &[3, 3, 3]);
        // M (x) 1_3 is the same direct sum after the perfect-shuffle permutation
        let shuffle: Vec<usize> = (0..9).map(|i| (i % 3) * 3 + i / 3).collect();
        assert_eq!(m.kron(&i3).permute(&shuffle).unwrap(), ds);
        for _ in 0..20 {
            let (a, b, c, d) = (
                random(&f2, 2, 2, &mut rng),
                random(&f2, 2, 2, &mut rng),
                random(&f2, 2, 2, &mut rng),
                random(&f2, 2, 2, &mut rng),
            );
            let lhs = a.kron(&b).mul(&c.kron(&d)).unwrap();
            let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn direct_sum_examples() {
        let f = build_extension_field(2, 1).unwrap();
        assert!(RingMatrix::<ExtFieldSpec>::direct_sum(&[]).is_err());
        let i2 = RingMatrix::identity(f.clone(), 2);
        let i3 = RingMatrix::identity(f.clone(), 3);
        assert_eq!(RingMatrix::direct_sum(&[i2.clone()]).unwrap().0, i2);
        assert_eq!(RingMatrix::direct_sum(&[i2, i3]).unwrap().0, RingMatrix::identity(f, 5));
    }

    #[test]
    fn kernel_examples() {
        let f = build_extension_field(2, 1).unwrap();
        assert!(RingMatrix::identity(f.clone(), 4).row_kernel().unwrap().is_empty());
        assert_eq!(RingMatrix::zeros(f.clone(), 5, 5).row_kernel().unwrap().len(), 5);
        let one = f.one();
        let ones = RingMatrix::new(f.clone(), 2, 2, vec![one; 4]).unwrap();
        assert_eq!(ones.inverse(), Err(Error::Singular { rank: 1, dim: 2 }));
        let k = ones.row_kernel().unwrap();
        assert_eq!(k, vec![vec![f.one(), f.one()]]);
        let z = RingMatrix::identity(Integers, 2);
        assert!(matches!(z.row_kernel(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn rank_nullity_and_kernel_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (p, m) in [(2, 1), (3, 1), (2, 4), (5, 2)] {
            let f = build_extension_field(p, m).unwrap();
            for _ in 0..30 {
                let rows = 1 + rng.gen_range(0..6usize);
                let cols = 1 + rng.gen_range(0..6usize);
                // low-rank products make kernels nontrivial
                let k = 1 + rng.gen_range(0..rows.min(cols));
                let a = random(&f, rows, k, &mut rng).mul(&random(&f, k, cols, &mut rng)).unwrap();
                let ker = a.row_kernel().unwrap();
                assert_eq!(a.rank().unwrap() + ker.len(), rows);
                for v in &ker {
                    assert!(a.apply(v).unwrap().iter().all(|x| f.is_zero(x)));
                }
            }
        }
    }

    #[test]
    fn right_action_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let f = build_extension_field(2, 1).unwrap();
        for _ in 0..50 {
            let a = random(&f, 4, 3, &mut rng);
            let b = random(&f, 3, 5, &mut rng);
            let x: Vec<_> = (0..4).map(|_| f.random(&mut rng)).collect();
            let lhs = b.apply(&a.apply(&x).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().apply(&x).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn det_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let f = build_extension_field(2, 4).unwrap();
        for _ in 0..50 {
            let a = random(&f, 4, 4, &mut rng);
            let b = random(&f, 4, 4, &mut rng);
            let lhs = a.mul(&b).unwrap().det().unwrap();
            assert_eq!(lhs, f.mul(&a.det().unwrap(), &b.det().unwrap()));
        }
    }

    #[test]
    fn inverse_round_trip_and_geometric_series() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let f = build_extension_field(2, 8).unwrap();
        let m = random_invertible(&f, 5, &mut rng);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RingMatrix::identity(f.clone(), 5));
        assert_eq!(RingMatrix::identity(f.clone(), 3).inverse().unwrap(), RingMatrix::identity(f.clone(), 3));
        // (1 - b T)^-1 = sum_{k<l} (b T)^k for nilpotent shift T
        let l = 4;
        let t = RingMatrix::from_fn(f.clone(), l, l, |i, j| if j == i + 1 { f.one() } else { f.zero() });
        let b = f.random_nonzero(&mut rng);
        let bt = t.scale(&b);
        let lhs = RingMatrix::identity(f.clone(), l).sub(&bt).unwrap().inverse().unwrap();
        let mut series = RingMatrix::zeros(f.clone(), l, l);
        for k in 0..l {
            series = series.add(&bt.pow(k as u64).unwrap()).unwrap();
        }
        assert_eq!(lhs, series);
    }

    #[test]
    fn inverse_over_polynomials_with_unit_determinant() {
        let r = PolyRing::new(&["x"], CoeffRing::Integer).unwrap();
        let m = RingMatrix::from_rows(
            r.clone(),
            vec![vec![r.one(), r.var(0)], vec![r.zero(), r.one()]],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RingMatrix::identity(r.clone(), 2));
        let s = RingMatrix::scalar(r.clone(), 2, r.var(0));
        assert!(s.inverse().is_err());
    }

    #[test]
    fn gauge_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let f = build_extension_field(2, 4).unwrap();
        let profile = BlockProfile::new(vec![2, 3, 1]).unwrap();
        for _ in 0..20 {
            let r = random(&f, 6, 6, &mut rng);
            let ids: Vec<_> = profile.sizes().iter().map(|&s| RingMatrix::identity(f.clone(), s)).collect();
            assert_eq!(r.gauge_conjugate(&profile, &ids).unwrap(), r);
            let g: Vec<_> = profile.sizes().iter().map(|&s| random_invertible(&f, s, &mut rng)).collect();
            let h: Vec<_> = profile.sizes().iter().map(|&s| random_invertible(&f, s, &mut rng)).collect();
            let gh: Vec<_> = g.iter().zip(&h).map(|(a, b)| a.mul(b).unwrap()).collect();
            let twice = r.gauge_conjugate(&profile, &g).unwrap().gauge_conjugate(&profile, &h).unwrap();
            assert_eq!(twice, r.gauge_conjugate(&profile, &gh).unwrap());
            let conj = r.gauge_conjugate(&profile, &g).unwrap();
            assert_eq!(conj.charpoly().unwrap(), r.charpoly().unwrap());
        }
        let bad = vec![RingMatrix::identity(f.clone(), 2)];
        assert!(random(&f, 6, 6, &mut rng).gauge_conjugate(&profile, &bad).is_err());
        let singular = vec![
            RingMatrix::zeros(f.clone(), 2, 2),
            RingMatrix::identity(f.clone(), 3),
            RingMatrix::identity(f.clone(), 1),
        ];
        assert!(matches!(
            random(&f, 6, 6, &mut rng).gauge_conjugate(&profile, &singular),
            Err(Error::Input(_))
        ));
        let _ = f.size();
    }

    #[test]
    fn charpoly_of_companion_matrix() {
        // companion of x^3 + 2x + 4 over Z, rows act on the right
        let c = RingMatrix::from_rows(Integers, vec![vec![0, 1, 0], vec![0, 0, 1], vec![-4, -2, 0]]).unwrap();
        assert_eq!(c.charpoly().unwrap(), vec![1, 0, 2, 4]);
    }
}

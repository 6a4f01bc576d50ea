//! Bit-packed matrices over F_2: 64 entries per word, XOR elimination.
//!
//! Pivoting follows the generic path exactly (first nonzero scanning columns
//! left to right, rows top to bottom), so echelon forms and kernel bases are
//! bit-identical to `RingMatrix` over F_2.

use crate::error::{Error, Result};
use crate::field::ExtFieldSpec;
use crate::matrix::RingMatrix;
use crate::ring::Ring;

#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}x{} over F_2", self.rows, self.cols)?;
        for i in 0..self.rows {
            let s: String = (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

fn is_f2(field: &ExtFieldSpec) -> bool {
    field.p() == 2 && field.degree() == 1
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_matrix(m: &RingMatrix<ExtFieldSpec>) -> Result<Self> {
        if !is_f2(m.ring()) {
            return Err(Error::Unsupported(format!("bit packing needs F_2, got {}", m.ring().tag())));
        }
        let mut out = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !m.ring().is_zero(m.get(i, j)) {
                    out.set(i, j, true);
                }
            }
        }
        Ok(out)
    }

    pub fn to_matrix(&self, field: &ExtFieldSpec) -> Result<RingMatrix<ExtFieldSpec>> {
        if !is_f2(field) {
            return Err(Error::Unsupported("bit matrices unpack only to F_2".into()));
        }
        Ok(RingMatrix::from_fn(field.clone(), self.rows, self.cols, |i, j| {
            if self.get(i, j) {
                field.one()
            } else {
                field.zero()
            }
        }))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let w = self.words;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * w);
            (&lo[src * w..(src + 1) * w], &mut hi[..w])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * w);
            (&hi[..w], &mut lo[dst * w..(dst + 1) * w])
        };
        for (d, s) in b.iter_mut().zip(a) {
            *d ^= s;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for k in 0..self.words {
            self.data.swap(a * self.words + k, b * self.words + k);
        }
    }

    /// Row vector (packed) times matrix: XOR of the rows selected by `x`.
    pub fn apply_words(&self, x: &[u64], out: &mut [u64]) {
        out.iter_mut().for_each(|w| *w = 0);
        for (wi, &xw) in x.iter().enumerate() {
            let mut bits = xw;
            while bits != 0 {
                let i = wi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                for (o, r) in out.iter_mut().zip(self.row_words(i)) {
                    *o ^= r;
                }
            }
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::input("shape mismatch in bit matrix product"));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        let mut buf = vec![0u64; o.words];
        for i in 0..self.rows {
            o.apply_words(self.row_words(i), &mut buf);
            out.data[i * out.words..(i + 1) * out.words].copy_from_slice(&buf);
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(p) = (prow..self.rows).find(|&i| self.get(i, col)) else {
                continue;
            };
            if p != prow {
                self.swap_rows(p, prow);
            }
            for i in 0..self.rows {
                if i != prow && self.get(i, col) {
                    self.xor_row_into(prow, i);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Left kernel basis in reduced row echelon form, one bit matrix row per vector.
    pub fn row_kernel(&self) -> Self {
        let (e, pivots) = self.transpose().rref();
        let n = self.rows;
        let free: Vec<usize> = (0..n).filter(|c| pivots.binary_search(c).is_err()).collect();
        let mut k = Self::zeros(free.len(), n);
        for (r, &f) in free.iter().enumerate() {
            k.set(r, f, true);
            for (prow, &pc) in pivots.iter().enumerate() {
                if e.get(prow, f) {
                    k.set(r, pc, true);
                }
            }
        }
        k.rref_in_place();
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_f2(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> RingMatrix<ExtFieldSpec> {
        let f = ExtFieldSpec::new(2, 1).unwrap();
        RingMatrix::from_fn(f.clone(), rows, cols, |_, _| if rng.gen() { f.one() } else { f.zero() })
    }

    #[test]
    fn round_trip_and_rejects_other_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = random_f2(70, 130, &mut rng);
        let b = BitMatrix::from_matrix(&m).unwrap();
        assert_eq!(b.to_matrix(m.ring()).unwrap(), m);
        let g4 = ExtFieldSpec::new(2, 2).unwrap();
        assert!(BitMatrix::from_matrix(&RingMatrix::identity(g4, 2)).is_err());
    }

    #[test]
    fn bit_identical_to_generic_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let r = rng.gen_range(1..90);
            let c = rng.gen_range(1..90);
            let k = rng.gen_range(1..=r.min(c));
            let a = random_f2(r, k, &mut rng).mul(&random_f2(k, c, &mut rng)).unwrap();
            let b = BitMatrix::from_matrix(&a).unwrap();
            let (ge, gp) = a.rref().unwrap();
            let (be, bp) = b.rref();
            assert_eq!(gp, bp);
            assert_eq!(be.to_matrix(a.ring()).unwrap(), ge);
            let gk = a.row_kernel().unwrap();
            let bk = b.row_kernel();
            assert_eq!(bk.rows(), gk.len());
            for (i, v) in gk.iter().enumerate() {
                for (j, x) in v.iter().enumerate() {
                    assert_eq!(bk.get(i, j), !a.ring().is_zero(x));
                }
            }
            let other = random_f2(c, 5, &mut rng);
            let prod = b.mul(&BitMatrix::from_matrix(&other).unwrap()).unwrap();
            assert_eq!(prod.to_matrix(a.ring()).unwrap(), a.mul(&other).unwrap());
        }
    }

    #[test]
    fn identity_kernel_is_empty() {
        assert_eq!(BitMatrix::identity(100).row_kernel().rows(), 0);
        assert_eq!(BitMatrix::zeros(7, 7).row_kernel().rows(), 7);
        assert_eq!(BitMatrix::identity(65).rank(), 65);
    }
}

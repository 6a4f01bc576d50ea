//! The ring of n x n matrices over a finite field, used as a coefficient ring
//! for algebra-valued bricks. Only commutative subalgebras (circulant,
//! upper-triangular Toeplitz, polynomials in one matrix) are meaningful
//! inputs; the ring itself does not enforce commutativity.

use crate::error::{Error, Result};
use crate::field::ExtFieldSpec;
use crate::matrix::RingMatrix;
use crate::ring::Ring;

/// n x n matrices over a base ring (a finite field unless stated otherwise).
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixAlgebra<R: Ring = ExtFieldSpec> {
    field: R,
    n: usize,
}

/// Row-major n x n matrix.
pub type AlgebraElem<E> = Vec<E>;

impl<R: Ring> MatrixAlgebra<R> {
    pub fn new(field: R, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("algebra of 0x0 matrices"));
        }
        Ok(MatrixAlgebra { field, n })
    }

    pub fn base(&self) -> &R {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scalar(&self, s: &R::Elem) -> AlgebraElem<R::Elem> {
        let mut e = vec![self.field.zero(); self.n * self.n];
        for i in 0..self.n {
            e[i * self.n + i] = s.clone();
        }
        e
    }

    pub fn from_matrix(&self, m: &RingMatrix<R>) -> Result<AlgebraElem<R::Elem>> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(Error::input("matrix size does not match the algebra"));
        }
        Ok(m.entries().to_vec())
    }

    pub fn to_matrix(&self, a: &AlgebraElem<R::Elem>) -> RingMatrix<R> {
        RingMatrix::new(self.field.clone(), self.n, self.n, a.clone()).expect("algebra element has n*n entries")
    }

    /// The scalar `s` when `a = s * 1`.
    pub fn as_scalar(&self, a: &AlgebraElem<R::Elem>) -> Option<R::Elem> {
        self.to_matrix(a).as_scalar()
    }

    /// Replace each algebra entry by its n x n matrix.
    pub fn flatten(&self, m: &RingMatrix<MatrixAlgebra<R>>) -> RingMatrix<R> {
        let n = self.n;
        RingMatrix::from_fn(self.field.clone(), m.rows() * n, m.cols() * n, |i, j| {
            m.get(i / n, j / n)[(i % n) * n + j % n].clone()
        })
    }

    /// Inverse of `flatten`; the dimensions must be multiples of n.
    pub fn unflatten(&self, m: &RingMatrix<R>) -> Result<RingMatrix<MatrixAlgebra<R>>> {
        let n = self.n;
        if m.rows() % n != 0 || m.cols() % n != 0 {
            return Err(Error::input("matrix dimensions are not multiples of the algebra size"));
        }
        Ok(RingMatrix::from_fn(self.clone(), m.rows() / n, m.cols() / n, |bi, bj| {
            let mut e = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    e.push(m.get(bi * n + i, bj * n + j).clone());
                }
            }
            e
        }))
    }
}

impl<R: Ring> Ring for MatrixAlgebra<R> {
    type Elem = AlgebraElem<R::Elem>;

    fn zero(&self) -> AlgebraElem<R::Elem> {
        vec![self.field.zero(); self.n * self.n]
    }

    fn one(&self) -> AlgebraElem<R::Elem> {
        self.scalar(&self.field.one())
    }

    fn from_i64(&self, v: i64) -> AlgebraElem<R::Elem> {
        self.scalar(&self.field.from_i64(v))
    }

    fn add(&self, a: &AlgebraElem<R::Elem>, b: &AlgebraElem<R::Elem>) -> AlgebraElem<R::Elem> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    fn neg(&self, a: &AlgebraElem<R::Elem>) -> AlgebraElem<R::Elem> {
        a.iter().map(|x| self.field.neg(x)).collect()
    }

    fn mul(&self, a: &AlgebraElem<R::Elem>, b: &AlgebraElem<R::Elem>) -> AlgebraElem<R::Elem> {
        let n = self.n;
        let f = &self.field;
        let mut out = vec![f.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let x = &a[i * n + k];
                if f.is_zero(x) {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out[idx] = f.add(&out[idx], &f.mul(x, &b[k * n + j]));
                }
            }
        }
        out
    }

    fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    fn try_inv(&self, a: &AlgebraElem<R::Elem>) -> Option<AlgebraElem<R::Elem>> {
        self.to_matrix(a).inverse().ok().map(|m| m.entries().to_vec())
    }

    fn is_zero_divisor(&self, a: &AlgebraElem<R::Elem>) -> bool {
        match self.to_matrix(a).det() {
            Ok(d) => self.field.is_zero_divisor(&d),
            Err(_) => true,
        }
    }

    fn tag(&self) -> String {
        format!("Mat_{}({})", self.n, self.field.tag())
    }
}

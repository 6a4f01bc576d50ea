//! Prime fields F_p and extension fields GF(p^m) with a polynomial basis.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Field, Ring};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 16;

/// Trial-division primality test; adequate for characteristics below 2^32.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Validated prime characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeFieldSpec {
    p: u64,
}

impl PrimeFieldSpec {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::input(format!("{p} is not prime")));
        }
        if p >= 1 << 32 {
            return Err(Error::Unsupported(format!("characteristic {p} exceeds 2^32")));
        }
        Ok(PrimeFieldSpec { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> ExtFieldSpec {
        ExtFieldSpec::from_parts(self.p, vec![0, 1]).expect("prime field modulus is valid")
    }
}

/// Element of GF(p^m) in the polynomial basis: `c[i]` is the coefficient of x^i.
///
/// Coefficients beyond the field's degree are always zero, so equality and
/// hashing are representation-exact.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    c: [u32; MAX_DEGREE],
}

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement { c: [0; MAX_DEGREE] };

    pub fn coeffs(&self, m: usize) -> &[u32] {
        &self.c[..m]
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.c.iter().rposition(|&x| x != 0).unwrap_or(0);
        f.debug_list().entries(&self.c[..=last]).finish()
    }
}

#[derive(Debug)]
struct Inner {
    p: u64,
    m: usize,
    /// Monic modulus, constant term first, length m + 1.
    modulus: Vec<u64>,
    /// (p - modulus[i]) mod p for i < m.
    neg_mod: [u64; MAX_DEGREE],
    size: u128,
}

/// A finite field GF(p^m) given by an irreducible monic modulus.
///
/// Cloning is cheap: the description is shared.
#[derive(Clone)]
pub struct ExtFieldSpec {
    inner: Arc<Inner>,
}

impl fmt::Debug for ExtFieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.p, self.inner.m)
    }
}

impl PartialEq for ExtFieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}
impl Eq for ExtFieldSpec {}

/// Serialized form: `{"p": int, "m": int, "modulus": [int]}`, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpecJson {
    pub p: u64,
    pub m: usize,
    pub modulus: Vec<u64>,
}

impl ExtFieldSpec {
    /// GF(p^m) with the lowest monic irreducible modulus of degree m, where
    /// monic polynomials are ordered by the integer `sum c_i p^i` of their
    /// non-leading coefficients.
    pub fn new(p: u64, m: usize) -> Result<Self> {
        PrimeFieldSpec::new(p)?;
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::input(format!("extension degree must be in 1..={MAX_DEGREE}, got {m}")));
        }
        if m > 1 && p >= 1 << 16 {
            return Err(Error::Unsupported(format!(
                "extension fields need p < 2^16, got {p}"
            )));
        }
        if m == 1 {
            return Self::from_parts(p, vec![0, 1]);
        }
        let mut low = vec![0u64; m];
        loop {
            let mut f = low.clone();
            f.push(1);
            if is_irreducible(&f, p) {
                return Self::from_parts(p, f);
            }
            // increment base-p counter, constant term least significant
            let mut i = 0;
            loop {
                low[i] += 1;
                if low[i] < p {
                    break;
                }
                low[i] = 0;
                i += 1;
                if i == m {
                    return Err(Error::Invariant(format!("no irreducible of degree {m} over F_{p}")));
                }
            }
        }
    }

    /// Field from an explicit monic modulus, constant term first.
    pub fn from_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        PrimeFieldSpec::new(p)?;
        let m = modulus.len().saturating_sub(1);
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::input("modulus degree out of range"));
        }
        if m > 1 && p >= 1 << 16 {
            return Err(Error::Unsupported(format!("extension fields need p < 2^16, got {p}")));
        }
        if modulus.iter().any(|&c| c >= p) || modulus[m] != 1 {
            return Err(Error::input("modulus must be monic with coefficients in [0, p)"));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::input("modulus is not irreducible"));
        }
        Self::from_parts(p, modulus)
    }

    fn from_parts(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let m = modulus.len() - 1;
        let mut neg_mod = [0u64; MAX_DEGREE];
        for i in 0..m {
            neg_mod[i] = (p - modulus[i]) % p;
        }
        let size = (p as u128).checked_pow(m as u32).ok_or_else(|| {
            Error::Unsupported(format!("field size {p}^{m} does not fit in 128 bits"))
        })?;
        Ok(ExtFieldSpec {
            inner: Arc::new(Inner { p, m, modulus, neg_mod, size }),
        })
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> usize {
        self.inner.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn to_json(&self) -> FieldSpecJson {
        FieldSpecJson { p: self.p(), m: self.degree(), modulus: self.inner.modulus.clone() }
    }

    pub fn from_json(j: &FieldSpecJson) -> Result<Self> {
        if j.modulus.len() != j.m + 1 {
            return Err(Error::input("modulus length must be m + 1"));
        }
        Self::from_modulus(j.p, j.modulus.clone())
    }

    /// Element from coefficients (constant term first), reduced mod p.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.degree() {
            return Err(Error::input(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.degree()
            )));
        }
        let mut c = [0u32; MAX_DEGREE];
        for (slot, &x) in c.iter_mut().zip(coeffs) {
            *slot = (x % self.p()) as u32;
        }
        Ok(FieldElement { c })
    }

    /// The class of the polynomial variable x (a generator of the field as an F_p-algebra).
    pub fn generator(&self) -> FieldElement {
        if self.degree() == 1 {
            // x reduces to 0 modulo the modulus x
            return self.zero();
        }
        let mut c = [0u32; MAX_DEGREE];
        c[1] = 1;
        FieldElement { c }
    }

    /// Element with base-p digit expansion `index` (digit i = coefficient of x^i).
    pub fn from_index(&self, mut index: u128) -> FieldElement {
        let p = self.p() as u128;
        let mut c = [0u32; MAX_DEGREE];
        for slot in c.iter_mut().take(self.degree()) {
            *slot = (index % p) as u32;
            index /= p;
        }
        FieldElement { c }
    }

    pub fn index_of(&self, x: &FieldElement) -> u128 {
        let p = self.p() as u128;
        x.c[..self.degree()].iter().rev().fold(0u128, |acc, &d| acc * p + d as u128)
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let mut c = [0u32; MAX_DEGREE];
        for slot in c.iter_mut().take(self.degree()) {
            *slot = rng.gen_range(0..self.p()) as u32;
        }
        FieldElement { c }
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let x = self.random(rng);
            if x != FieldElement::ZERO {
                return x;
            }
        }
    }

    /// All elements in index order; only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.inner.size).map(move |i| self.from_index(i))
    }

    /// x^p, the Frobenius map.
    pub fn frobenius(&self, x: &FieldElement) -> FieldElement {
        self.pow(x, self.p() as u128)
    }

    /// The unique square root in characteristic 2, computed as x^(2^(m-1)).
    pub fn sqrt_char2(&self, x: &FieldElement) -> Result<FieldElement> {
        if self.p() != 2 {
            return Err(Error::Unsupported(format!(
                "square roots via Frobenius need characteristic 2, field has {}",
                self.p()
            )));
        }
        let mut y = *x;
        for _ in 1..self.degree() {
            y = self.mul(&y, &y);
        }
        Ok(y)
    }
}

/// Builds GF(p^m) with the deterministic lowest-lexicographic irreducible modulus.
pub fn build_extension_field(p: u64, m: usize) -> Result<ExtFieldSpec> {
    ExtFieldSpec::new(p, m)
}

impl Ring for ExtFieldSpec {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    fn one(&self) -> FieldElement {
        let mut c = [0u32; MAX_DEGREE];
        c[0] = 1;
        FieldElement { c }
    }

    fn from_i64(&self, n: i64) -> FieldElement {
        let p = self.p() as i64;
        let mut c = [0u32; MAX_DEGREE];
        c[0] = n.rem_euclid(p) as u32;
        FieldElement { c }
    }

    #[inline]
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.inner.p;
        let mut c = [0u32; MAX_DEGREE];
        for i in 0..self.inner.m {
            let s = a.c[i] as u64 + b.c[i] as u64;
            c[i] = if s >= p { (s - p) as u32 } else { s as u32 };
        }
        FieldElement { c }
    }

    #[inline]
    fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.inner.p;
        let mut c = [0u32; MAX_DEGREE];
        for i in 0..self.inner.m {
            c[i] = if a.c[i] == 0 { 0 } else { (p - a.c[i] as u64) as u32 };
        }
        FieldElement { c }
    }

    #[inline]
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.inner.p;
        let mut c = [0u32; MAX_DEGREE];
        for i in 0..self.inner.m {
            let (x, y) = (a.c[i] as u64, b.c[i] as u64);
            c[i] = if x >= y { (x - y) as u32 } else { (x + p - y) as u32 };
        }
        FieldElement { c }
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let Inner { p, m, neg_mod, .. } = &*self.inner;
        let (p, m) = (*p, *m);
        let mut out = [0u32; MAX_DEGREE];
        if m == 1 {
            out[0] = ((a.c[0] as u64 * b.c[0] as u64) % p) as u32;
            return FieldElement { c: out };
        }
        if p == 2 {
            return FieldElement { c: mul_binary(a, b, &self.inner) };
        }
        // p < 2^16: products < 2^32, at most 2m of them per slot
        let mut t = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..m {
            let ai = a.c[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..m {
                t[i + j] += ai * b.c[j] as u64;
            }
        }
        for k in (m..2 * m - 1).rev() {
            let c = t[k] % p;
            if c != 0 {
                for i in 0..m {
                    t[k - m + i] += c * neg_mod[i];
                }
            }
        }
        for i in 0..m {
            out[i] = (t[i] % p) as u32;
        }
        FieldElement { c: out }
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        *a == FieldElement::ZERO
    }

    fn characteristic(&self) -> u64 {
        self.p()
    }

    fn try_inv(&self, a: &FieldElement) -> Option<FieldElement> {
        self.inv(a)
    }

    fn is_field(&self) -> bool {
        true
    }

    fn tag(&self) -> String {
        if self.degree() == 1 {
            format!("F_{}", self.p())
        } else {
            format!("GF({}^{})", self.p(), self.degree())
        }
    }
}

/// Carry-less multiplication in GF(2^m) on bitmasks.
fn mul_binary(a: &FieldElement, b: &FieldElement, f: &Inner) -> [u32; MAX_DEGREE] {
    let m = f.m;
    let pack = |x: &FieldElement| (0..m).fold(0u32, |acc, i| acc | (x.c[i] << i));
    let (x, y) = (pack(a) as u64, pack(b) as u64);
    let mut prod = 0u64;
    for i in 0..m {
        if (x >> i) & 1 == 1 {
            prod ^= y << i;
        }
    }
    let low_mod = (0..m).fold(0u64, |acc, i| acc | (f.modulus[i] << i));
    for k in (m..2 * m - 1).rev() {
        if (prod >> k) & 1 == 1 {
            prod ^= 1 << k;
            prod ^= low_mod << (k - m);
        }
    }
    let mut out = [0u32; MAX_DEGREE];
    for (i, slot) in out.iter_mut().enumerate().take(m) {
        *slot = ((prod >> i) & 1) as u32;
    }
    out
}

impl Field for ExtFieldSpec {
    fn size(&self) -> u128 {
        self.inner.size
    }

    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if self.is_zero(a) {
            None
        } else {
            Some(self.pow(a, self.inner.size - 2))
        }
    }
}

// ---- univariate helpers over F_p (constant term first) ----

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = inv_mod_p(f[df], p);
    while r.len() > df && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        for i in 0..=df {
            r[dr - df + i] = (r[dr - df + i] + p - c * f[i] % p) % p;
        }
        trim(&mut r);
        if r.len() - 1 < df {
            break;
        }
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut t = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            t[i + j] = (t[i + j] + x * y) % p;
        }
    }
    poly_rem(&t, f, p)
}

fn poly_powmod(base: &[u64], mut e: u128, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, f, p);
        }
        e >>= 1;
        if e > 0 {
            b = poly_mulmod(&b, &b, f, p);
        }
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// x^(p^k) mod f.
fn frobenius_power_of_x(k: usize, f: &[u64], p: u64) -> Vec<u64> {
    let mut x = vec![0, 1];
    for _ in 0..k {
        x = poly_powmod(&x, p as u128, f, p);
    }
    x
}

/// Rabin's irreducibility test for a monic polynomial over F_p.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let sub_x = |mut v: Vec<u64>| {
        v.resize(v.len().max(2), 0);
        v[1] = (v[1] + p - 1) % p;
        trim(&mut v);
        v
    };
    let full = frobenius_power_of_x(m, f, p);
    if poly_rem(&full, f, p) != poly_rem(&x, f, p) {
        return false;
    }
    for r in prime_factors(m as u64) {
        let h = sub_x(frobenius_power_of_x(m / r as usize, f, p));
        let g = poly_gcd(f, &h, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Irreducibility of a monic quadratic or cubic by brute-force root search.
    fn has_root(f: &[u64], p: u64) -> bool {
        (0..p).any(|x| f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) == 0)
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(ExtFieldSpec::new(4, 1).is_err());
        assert!(matches!(PrimeFieldSpec::new(9), Err(Error::Input(_))));
    }

    #[test]
    fn prime_field_modulus_is_x() {
        let f = build_extension_field(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.size(), 2);
    }

    #[test]
    fn gf4_modulus_matches_enumeration() {
        // monic quadratics over F_2 without roots
        let quads: Vec<Vec<u64>> = (0..4u64)
            .map(|i| vec![i & 1, i >> 1, 1])
            .filter(|f| !has_root(f, 2))
            .collect();
        assert_eq!(quads, vec![vec![1, 1, 1]]);
        assert_eq!(build_extension_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn gf9_modulus_is_lowest_irreducible() {
        let first = (0..9u64)
            .map(|i| vec![i % 3, i / 3, 1])
            .find(|f| !has_root(f, 3))
            .unwrap();
        assert_eq!(first, vec![1, 0, 1]);
        assert_eq!(build_extension_field(3, 2).unwrap().modulus(), first.as_slice());
    }

    #[test]
    fn cubic_irreducibility_agrees_with_root_search() {
        for p in [2u64, 3, 5] {
            for i in 0..p * p * p {
                let f = vec![i % p, (i / p) % p, i / (p * p), 1];
                assert_eq!(is_irreducible(&f, p), !has_root(&f, p), "{f:?} over F_{p}");
            }
        }
    }

    #[test]
    fn modulus_choice_is_deterministic() {
        for (p, m) in [(2, 8), (2, 16), (3, 16), (7, 16)] {
            let a = build_extension_field(p, m).unwrap();
            let b = build_extension_field(p, m).unwrap();
            assert_eq!(a, b);
            assert!(is_irreducible(a.modulus(), p));
        }
    }

    #[test]
    fn sqrt_in_gf4() {
        let f = build_extension_field(2, 2).unwrap();
        let w = f.generator();
        let w1 = f.add(&w, &f.one());
        // square table, inverted
        for y in f.elements() {
            if f.mul(&y, &y) == w {
                assert_eq!(y, w1);
            }
        }
        assert_eq!(f.sqrt_char2(&w).unwrap(), w1);
        assert_eq!(f.sqrt_char2(&f.one()).unwrap(), f.one());
        assert_eq!(f.sqrt_char2(&f.zero()).unwrap(), f.zero());
    }

    #[test]
    fn sqrt_exhaustive_small_binary_fields() {
        for m in 1..=4 {
            let f = build_extension_field(2, m).unwrap();
            for x in f.elements() {
                let y = f.sqrt_char2(&x).unwrap();
                assert_eq!(f.mul(&y, &y), x);
            }
        }
        let f3 = build_extension_field(3, 2).unwrap();
        assert!(matches!(f3.sqrt_char2(&f3.one()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn frobenius_is_additive_exhaustively() {
        for (p, m) in [(2, 8), (3, 5), (5, 3), (7, 2), (13, 2), (2, 4)] {
            let f = build_extension_field(p, m).unwrap();
            assert!(f.size() <= 256);
            let all: Vec<_> = f.elements().collect();
            for x in &all {
                for y in &all {
                    assert_eq!(f.frobenius(&f.add(x, y)), f.add(&f.frobenius(x), &f.frobenius(y)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, m) in [(2, 16), (3, 16), (5, 16), (7, 16), (11, 16), (2, 8), (65521, 1), (13, 4)] {
            let f = build_extension_field(p, m).unwrap();
            for _ in 0..1000 {
                let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
                assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
                assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
                assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                assert_eq!(f.sub(&f.add(&a, &b), &b), a);
                if !f.is_zero(&a) {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                }
            }
        }
    }

    #[test]
    fn binary_fast_path_matches_generic_reduction() {
        // schoolbook over integers, reduced by the same modulus
        let f = build_extension_field(2, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let (a, b) = (f.random(&mut rng), f.random(&mut rng));
            let mut t = vec![0u64; 31];
            for i in 0..16 {
                for j in 0..16 {
                    t[i + j] ^= (a.c[i] & b.c[j]) as u64;
                }
            }
            let r = poly_rem(&t, f.modulus(), 2);
            let expect = f.element(&r).unwrap();
            assert_eq!(f.mul(&a, &b), expect);
        }
    }

    #[test]
    fn index_round_trip_and_json() {
        let f = build_extension_field(3, 4).unwrap();
        for i in 0..81 {
            assert_eq!(f.index_of(&f.from_index(i)), i);
        }
        let j = f.to_json();
        assert_eq!(ExtFieldSpec::from_json(&j).unwrap(), f);
        let bad = FieldSpecJson { p: 2, m: 2, modulus: vec![0, 0, 1] };
        assert!(ExtFieldSpec::from_json(&bad).is_err());
    }
}

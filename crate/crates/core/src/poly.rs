//! Sparse multivariate polynomials over F_p or the integers.
//!
//! Terms are kept in descending graded-lexicographic order with no zero
//! coefficients, so structural equality is polynomial equality.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::ring::Ring;

/// Largest number of variables a polynomial ring may carry.
pub const MAX_VARS: usize = 16;

/// Exponent vector with cached total degree; the derived order is graded lex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u16,
    exps: [u8; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { deg: 0, exps: [0; MAX_VARS] };

    pub fn from_exps(exps: &[u8]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::input(format!("at most {MAX_VARS} variables supported")));
        }
        let mut e = [0u8; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Ok(Monomial { deg: exps.iter().map(|&x| x as u16).sum(), exps: e })
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0u8; MAX_VARS];
        e[i] = 1;
        Monomial { deg: 1, exps: e }
    }

    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn exps(&self) -> &[u8; MAX_VARS] {
        &self.exps
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        let mut e = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.exps[i].checked_add(o.exps[i]).expect("monomial exponent overflow");
        }
        Monomial { deg: self.deg + o.deg, exps: e }
    }

    fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut e = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.exps[i].checked_sub(o.exps[i])?;
        }
        Some(Monomial { deg: self.deg - o.deg, exps: e })
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// Coefficient ring of a polynomial ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffRing {
    /// Residues modulo a prime, stored in `[0, p)`.
    Modular(u64),
    /// Machine integers with overflow detection.
    Integer,
}

/// Polynomial: terms in descending graded-lex order, nonzero coefficients only.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, i64)>,
}

impl MultiPoly {
    pub fn terms(&self) -> &[(Monomial, i64)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |(m, _)| m.degree())
    }

    /// The constant term when the polynomial is constant.
    pub fn as_constant(&self) -> Option<i64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(m, c)] if *m == Monomial::ONE => Some(*c),
            _ => None,
        }
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.iter()).finish()
    }
}

/// Polynomial ring with named variables.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyRing {
    vars: Arc<[String]>,
    coeffs: CoeffRing,
}

impl fmt::Debug for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// Serialized term: coefficient and exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: i64,
    pub exps: Vec<u8>,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(vars: &[S], coeffs: CoeffRing) -> Result<Self> {
        if vars.len() > MAX_VARS {
            return Err(Error::input(format!("at most {MAX_VARS} variables supported")));
        }
        if let CoeffRing::Modular(p) = coeffs {
            if !is_prime(p) || p >= 1 << 31 {
                return Err(Error::input(format!("coefficient modulus {p} must be a prime below 2^31")));
            }
        }
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || vars[..i].contains(v) {
                return Err(Error::input(format!("bad or duplicate variable name `{v}`")));
            }
        }
        Ok(PolyRing { vars: vars.into(), coeffs })
    }

    /// Variables `prefix{i}{j}` for 1 <= i, j <= n in row-major order.
    pub fn matrix_vars(prefix: &str, n: usize, coeffs: CoeffRing) -> Result<Self> {
        let names: Vec<String> = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| format!("{prefix}{i}{j}")))
            .collect();
        Self::new(&names, coeffs)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn coeff_ring(&self) -> CoeffRing {
        self.coeffs
    }

    /// Same variables over another coefficient ring.
    pub fn with_coeffs(&self, coeffs: CoeffRing) -> PolyRing {
        PolyRing { vars: self.vars.clone(), coeffs }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        assert!(i < self.vars.len(), "variable index out of range");
        MultiPoly { terms: vec![(Monomial::var(i), 1)] }
    }

    pub fn var_named(&self, name: &str) -> Result<MultiPoly> {
        self.var_index(name)
            .map(|i| self.var(i))
            .ok_or_else(|| Error::input(format!("unknown variable `{name}`")))
    }

    pub fn monomial(&self, m: Monomial, c: i64) -> MultiPoly {
        let c = self.norm(c);
        if c == 0 {
            MultiPoly::default()
        } else {
            MultiPoly { terms: vec![(m, c)] }
        }
    }

    fn norm(&self, c: i64) -> i64 {
        match self.coeffs {
            CoeffRing::Modular(p) => c.rem_euclid(p as i64),
            CoeffRing::Integer => c,
        }
    }

    fn cadd(&self, a: i64, b: i64) -> i64 {
        match self.coeffs {
            CoeffRing::Modular(p) => (a + b) % p as i64,
            CoeffRing::Integer => a.checked_add(b).expect("integer coefficient overflow"),
        }
    }

    fn cmul(&self, a: i64, b: i64) -> i64 {
        match self.coeffs {
            CoeffRing::Modular(p) => ((a as i128 * b as i128) % p as i128) as i64,
            CoeffRing::Integer => a.checked_mul(b).expect("integer coefficient overflow"),
        }
    }

    /// Collects unsorted terms into canonical form.
    fn canonical(&self, mut terms: Vec<(Monomial, i64)>) -> MultiPoly {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, i64)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = self.cadd(*lc, c),
                _ => {
                    if let Some((_, 0)) = out.last() {
                        out.pop();
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, 0)) = out.last() {
            out.pop();
        }
        MultiPoly { terms: out }
    }

    /// Reduces integer coefficients into the ring (e.g. Z -> F_2).
    pub fn convert(&self, f: &MultiPoly) -> MultiPoly {
        self.canonical(f.terms.iter().map(|&(m, c)| (m, self.norm(c))).collect())
    }

    pub fn from_terms(&self, terms: &[TermJson]) -> Result<MultiPoly> {
        let mut ts = Vec::with_capacity(terms.len());
        for t in terms {
            if t.exps.len() != self.vars.len() {
                return Err(Error::input(format!(
                    "term has {} exponents, ring has {} variables",
                    t.exps.len(),
                    self.vars.len()
                )));
            }
            ts.push((Monomial::from_exps(&t.exps)?, self.norm(t.coeff)));
        }
        Ok(self.canonical(ts))
    }

    pub fn to_terms(&self, f: &MultiPoly) -> Vec<TermJson> {
        f.terms
            .iter()
            .map(|(m, c)| TermJson { coeff: *c, exps: m.exps[..self.vars.len()].to_vec() })
            .collect()
    }

    /// Exact quotient by `c * mono` when every term is divisible; `c` must be a unit.
    pub fn div_monomial(&self, f: &MultiPoly, mono: &Monomial, c: i64) -> Option<MultiPoly> {
        let cinv = match self.coeffs {
            CoeffRing::Modular(p) => {
                let c = c.rem_euclid(p as i64);
                if c == 0 {
                    return None;
                }
                pow_mod(c, p as i64 - 2, p as i64)
            }
            CoeffRing::Integer => match c {
                1 | -1 => c,
                _ => return None,
            },
        };
        let mut terms = Vec::with_capacity(f.terms.len());
        for (m, k) in &f.terms {
            terms.push((m.div(mono)?, self.cmul(*k, cinv)));
        }
        // division by a monomial preserves the term order
        Some(MultiPoly { terms })
    }

    /// Evaluates `f` in `target` at `values[i]` for variable i.
    ///
    /// Integer coefficients map through the canonical homomorphism; F_p
    /// coefficients require a target of characteristic p.
    pub fn eval<R: Ring>(&self, f: &MultiPoly, target: &R, values: &[R::Elem]) -> Result<R::Elem> {
        if values.len() != self.vars.len() {
            return Err(Error::input(format!(
                "{} values for {} variables",
                values.len(),
                self.vars.len()
            )));
        }
        if let CoeffRing::Modular(p) = self.coeffs {
            if target.characteristic() != p {
                return Err(Error::input(format!(
                    "F_{p} coefficients do not embed in a ring of characteristic {}",
                    target.characteristic()
                )));
            }
        }
        let n = self.vars.len();
        let mut max_e = [0u8; MAX_VARS];
        for (m, _) in &f.terms {
            for i in 0..n {
                max_e[i] = max_e[i].max(m.exps[i]);
            }
        }
        let powers: Vec<Vec<R::Elem>> = (0..n)
            .map(|i| {
                let mut v = Vec::with_capacity(max_e[i] as usize + 1);
                v.push(target.one());
                for k in 1..=max_e[i] as usize {
                    let next = target.mul(&v[k - 1], &values[i]);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = target.zero();
        for (m, c) in &f.terms {
            let mut t = target.from_i64(*c);
            for i in 0..n {
                if m.exps[i] > 0 {
                    t = target.mul(&t, &powers[i][m.exps[i] as usize]);
                }
            }
            acc = target.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Evaluation from a name-keyed assignment; every variable must be bound.
    pub fn specialize<R: Ring>(
        &self,
        f: &MultiPoly,
        target: &R,
        assignment: &HashMap<String, R::Elem>,
    ) -> Result<R::Elem> {
        let values = self
            .vars
            .iter()
            .map(|v| {
                assignment
                    .get(v)
                    .cloned()
                    .ok_or_else(|| Error::input(format!("no value for variable `{v}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.eval(f, target, &values)
    }

    /// Parses sums of products such as `a11*a22^2 + 3*b - c`.
    pub fn parse(&self, s: &str) -> Result<MultiPoly> {
        let mut terms = Vec::new();
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::input("empty polynomial"));
        }
        let mut rest = cleaned.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1i64, &rest[1..]),
                b'-' => (-1i64, &rest[1..]),
                _ => (1, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if term.is_empty() {
                return Err(Error::input(format!("malformed polynomial `{s}`")));
            }
            let mut coeff = sign;
            let mut e = [0u8; MAX_VARS];
            for factor in term.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, x)) => (
                        b,
                        x.parse::<u8>().map_err(|_| Error::input(format!("bad exponent in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                if let Ok(k) = base.parse::<i64>() {
                    let k = k.checked_pow(exp as u32).ok_or_else(|| Error::input("constant overflow"))?;
                    coeff = coeff.checked_mul(k).ok_or_else(|| Error::input("constant overflow"))?;
                } else {
                    let i = self
                        .var_index(base)
                        .ok_or_else(|| Error::input(format!("unknown variable `{base}`")))?;
                    e[i] = e[i]
                        .checked_add(exp)
                        .ok_or_else(|| Error::input("exponent overflow"))?;
                }
            }
            terms.push((Monomial::from_exps(&e[..self.vars.len()])?, self.norm(coeff)));
        }
        Ok(self.canonical(terms))
    }

    pub fn display(&self, f: &MultiPoly) -> String {
        if f.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in f.terms.iter().enumerate() {
            let (neg, mag) = if *c < 0 { (true, -*c) } else { (false, *c) };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let mut factors = Vec::new();
            if mag != 1 || *m == Monomial::ONE {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.exps[..self.vars.len()].iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

fn pow_mod(mut b: i64, mut e: i64, m: i64) -> i64 {
    let mut r = 1i64;
    b = b.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            r = (r as i128 * b as i128 % m as i128) as i64;
        }
        b = (b as i128 * b as i128 % m as i128) as i64;
        e >>= 1;
    }
    r
}

impl Ring for PolyRing {
    type Elem = MultiPoly;

    fn zero(&self) -> MultiPoly {
        MultiPoly::default()
    }

    fn one(&self) -> MultiPoly {
        self.monomial(Monomial::ONE, 1)
    }

    fn from_i64(&self, n: i64) -> MultiPoly {
        self.monomial(Monomial::ONE, n)
    }

    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let (x, y) = (&a.terms, &b.terms);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match x[i].0.cmp(&y[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(x[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(y[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = self.cadd(x[i].1, y[j].1);
                    if c != 0 {
                        out.push((x[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&x[i..]);
        out.extend_from_slice(&y[j..]);
        MultiPoly { terms: out }
    }

    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        MultiPoly { terms: a.terms.iter().map(|&(m, c)| (m, self.norm(-c))).collect() }
    }

    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        if a.terms.is_empty() || b.terms.is_empty() {
            return MultiPoly::default();
        }
        if a.terms.len() == 1 && b.terms.len() == 1 {
            let c = self.cmul(a.terms[0].1, b.terms[0].1);
            return self.monomial(a.terms[0].0.mul(&b.terms[0].0), c);
        }
        let mut acc: HashMap<Monomial, i64> = HashMap::with_capacity(a.terms.len() * b.terms.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let c = self.cmul(*ca, *cb);
                let slot = acc.entry(ma.mul(mb)).or_insert(0);
                *slot = self.cadd(*slot, c);
            }
        }
        let mut terms: Vec<(Monomial, i64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        MultiPoly { terms }
    }

    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.terms.is_empty()
    }

    fn characteristic(&self) -> u64 {
        match self.coeffs {
            CoeffRing::Modular(p) => p,
            CoeffRing::Integer => 0,
        }
    }

    fn try_inv(&self, a: &MultiPoly) -> Option<MultiPoly> {
        let c = a.as_constant()?;
        match self.coeffs {
            CoeffRing::Modular(p) if c != 0 => {
                Some(self.from_i64(pow_mod(c, p as i64 - 2, p as i64)))
            }
            CoeffRing::Integer if c == 1 || c == -1 => Some(self.from_i64(c)),
            _ => None,
        }
    }

    fn tag(&self) -> String {
        let base = match self.coeffs {
            CoeffRing::Modular(p) => format!("F_{p}"),
            CoeffRing::Integer => "Z".to_string(),
        };
        format!("{base}[{}]", self.vars.join(","))
    }
}

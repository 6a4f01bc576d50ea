//! Randomized polynomial identity testing over large extension fields.
//!
//! A nonzero polynomial of total degree at most `D` vanishes at a uniformly
//! random point of F^n with probability at most `D / |F|`, so `t` agreeing
//! trials leave a failure probability of at most `(D / |F|)^t`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{ExtFieldSpec, FieldElement};
use crate::matrix::RingMatrix;
use crate::poly::PolyRing;
use crate::ring::Ring;

pub const DEFAULT_TRIALS: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum IdentityVerdict {
    /// All trials agreed. `log2_failure_bound` is `None` when the two sides
    /// were syntactically equal and no sampling was needed.
    Verified { trials: usize, log2_failure_bound: Option<f64> },
    Falsified { trial: usize, witness: Vec<Vec<u32>>, detail: String },
}

impl IdentityVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, IdentityVerdict::Verified { .. })
    }

    pub fn log2_bound(&self) -> Option<f64> {
        match self {
            IdentityVerdict::Verified { log2_failure_bound, .. } => *log2_failure_bound,
            _ => None,
        }
    }
}

/// `log2((degree / |F|)^trials)`.
pub fn log2_failure_bound(field: &ExtFieldSpec, degree_bound: u64, trials: usize) -> f64 {
    let log_field = field.degree() as f64 * (field.p() as f64).log2();
    trials as f64 * ((degree_bound.max(1) as f64).log2() - log_field)
}

fn check_field_size(field: &ExtFieldSpec, degree_bound: u64) -> Result<()> {
    let log_field = field.degree() as f64 * (field.p() as f64).log2();
    if log_field <= 64.0 && (field.p() as u128).pow(field.degree() as u32) <= degree_bound as u128 {
        return Err(Error::input(format!(
            "field {} is too small for degree bound {degree_bound}",
            field.tag()
        )));
    }
    Ok(())
}

/// Runs `check` at `trials` random points of `field^num_vars`. `check`
/// returns `Some(description)` on a mismatch. Deterministic in `seed`.
pub fn sampled_identity<F>(
    field: &ExtFieldSpec,
    num_vars: usize,
    degree_bound: u64,
    trials: usize,
    seed: u64,
    mut check: F,
) -> Result<IdentityVerdict>
where
    F: FnMut(&[FieldElement]) -> Result<Option<String>>,
{
    check_field_size(field, degree_bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = field.degree();
    for t in 0..trials {
        let point: Vec<FieldElement> = (0..num_vars).map(|_| field.random(&mut rng)).collect();
        if let Some(detail) = check(&point)? {
            return Ok(IdentityVerdict::Falsified {
                trial: t,
                witness: point.iter().map(|x| x.coeffs(m).to_vec()).collect(),
                detail,
            });
        }
    }
    Ok(IdentityVerdict::Verified {
        trials,
        log2_failure_bound: Some(log2_failure_bound(field, degree_bound, trials)),
    })
}

/// Compares two polynomial matrices at random points of `field`.
pub fn random_identity_check(
    ring: &PolyRing,
    lhs: &RingMatrix<PolyRing>,
    rhs: &RingMatrix<PolyRing>,
    degree_bound: u64,
    trials: usize,
    field: &ExtFieldSpec,
    seed: u64,
) -> Result<IdentityVerdict> {
    if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
        return Err(Error::input("identity sides have different shapes"));
    }
    check_field_size(field, degree_bound)?;
    if lhs == rhs {
        return Ok(IdentityVerdict::Verified { trials: 1, log2_failure_bound: None });
    }
    sampled_identity(field, ring.vars().len(), degree_bound, trials, seed, |pt| {
        for i in 0..lhs.rows() {
            for j in 0..lhs.cols() {
                let l = ring.eval(lhs.get(i, j), field, pt)?;
                let r = ring.eval(rhs.get(i, j), field, pt)?;
                if l != r {
                    return Ok(Some(format!("entry ({i}, {j}) differs")));
                }
            }
        }
        Ok(None)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_extension_field;
    use crate::poly::CoeffRing;

    fn single(r: &PolyRing, s: &str) -> RingMatrix<PolyRing> {
        RingMatrix::new(r.clone(), 1, 1, vec![r.parse(s).unwrap()]).unwrap()
    }

    #[test]
    fn syntactic_equality_needs_one_trial() {
        let r = PolyRing::new(&["a11"], CoeffRing::Modular(2)).unwrap();
        let f = build_extension_field(2, 16).unwrap();
        let v = random_identity_check(&r, &single(&r, "a11"), &single(&r, "a11"), 1, 32, &f, 0).unwrap();
        assert_eq!(v, IdentityVerdict::Verified { trials: 1, log2_failure_bound: None });
    }

    #[test]
    fn constant_discrepancy_is_falsified() {
        let r = PolyRing::new(&["a11"], CoeffRing::Modular(2)).unwrap();
        let f = build_extension_field(2, 16).unwrap();
        let v = random_identity_check(&r, &single(&r, "a11"), &single(&r, "a11 + 1"), 1, 32, &f, 0).unwrap();
        assert!(matches!(v, IdentityVerdict::Falsified { trial: 0, .. }));
    }

    #[test]
    fn equal_but_differently_written_sides_verify() {
        let r = PolyRing::new(&["a", "b"], CoeffRing::Modular(2)).unwrap();
        let f = build_extension_field(2, 16).unwrap();
        let lhs = RingMatrix::new(r.clone(), 1, 1, vec![r.pow(&r.parse("a + b").unwrap(), 2)]).unwrap();
        // (a+b)^2 = a^2 + b^2 in characteristic 2
        let v = random_identity_check(&r, &lhs, &single(&r, "a^2 + b^2"), 2, 8, &f, 1).unwrap();
        assert!(v.is_verified());
        let v = random_identity_check(&r, &lhs, &single(&r, "a^2 + b"), 2, 8, &f, 1).unwrap();
        assert!(!v.is_verified());
    }

    #[test]
    fn bound_and_small_field_rejection() {
        let r = PolyRing::new(&["a"], CoeffRing::Modular(2)).unwrap();
        let f4 = build_extension_field(2, 2).unwrap();
        assert!(random_identity_check(&r, &single(&r, "a"), &single(&r, "a^4"), 4, 8, &f4, 0).is_err());
        let f = build_extension_field(5, 16).unwrap();
        let b = log2_failure_bound(&f, 64, 32);
        assert!(b < -100.0, "{b}");
    }

    #[test]
    fn sampling_is_deterministic_in_the_seed() {
        let f = build_extension_field(3, 4).unwrap();
        let mut seen_a = Vec::new();
        let mut seen_b = Vec::new();
        sampled_identity(&f, 2, 1, 3, 42, |p| {
            seen_a.push(p.to_vec());
            Ok(None)
        })
        .unwrap();
        sampled_identity(&f, 2, 1, 3, 42, |p| {
            seen_b.push(p.to_vec());
            Ok(None)
        })
        .unwrap();
        assert_eq!(seen_a, seen_b);
    }
}

//! Exact counting of permitted configurations through linear algebra.
//!
//! Inputs `x` of a block `r` are rows over F_q. Each boundary condition is a
//! set of linear functionals that must vanish on `x`; the permitted inputs
//! form the left kernel of the matrix `C` whose columns are those functionals.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::ExtFieldSpec;
use crate::gf2::BitMatrix;
use crate::lattice::ThickProfile;
use crate::matrix::RingMatrix;
use crate::ring::{Field, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    /// Outputs on this axis equal the corresponding inputs.
    Periodic,
    /// Inputs on this axis are zero; outputs are free.
    ZeroInput,
    /// No condition.
    Free,
}

impl Boundary {
    pub const ALL: [Boundary; 3] = [Boundary::Periodic, Boundary::ZeroInput, Boundary::Free];
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Periodic => "periodic",
            Boundary::ZeroInput => "zero-input",
            Boundary::Free => "free",
        })
    }
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "p" | "periodic" => Ok(Boundary::Periodic),
            "z" | "zero" | "zero-input" => Ok(Boundary::ZeroInput),
            "f" | "free" => Ok(Boundary::Free),
            other => Err(Error::input(format!("unknown boundary condition `{other}`"))),
        }
    }
}

/// One condition per axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoundaryConditions(Vec<Boundary>);

impl BoundaryConditions {
    pub fn new(axes: Vec<Boundary>) -> Self {
        BoundaryConditions(axes)
    }

    pub fn uniform(d: usize, b: Boundary) -> Self {
        BoundaryConditions(vec![b; d])
    }

    pub fn toric(d: usize) -> Self {
        Self::uniform(d, Boundary::Periodic)
    }

    /// Comma-separated list such as `periodic,free,zero`.
    pub fn parse(s: &str) -> Result<Self> {
        Ok(BoundaryConditions(s.split(',').map(str::parse).collect::<Result<_>>()?))
    }

    /// All 3^d combinations.
    pub fn all_mixes(d: usize) -> Vec<Self> {
        let mut out = vec![Vec::new()];
        for _ in 0..d {
            out = out
                .into_iter()
                .flat_map(|v| {
                    Boundary::ALL.iter().map(move |b| {
                        let mut w = v.clone();
                        w.push(*b);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(BoundaryConditions).collect()
    }

    pub fn axes(&self) -> &[Boundary] {
        &self.0
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for BoundaryConditions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// A count `q^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigCount {
    pub p: u64,
    pub q: u128,
    pub exponent: usize,
}

impl ConfigCount {
    /// The count as an integer when it is below 2^63.
    pub fn expand(&self) -> Option<u64> {
        let mut acc: u128 = 1;
        for _ in 0..self.exponent {
            acc = acc.checked_mul(self.q)?;
            if acc >= 1 << 63 {
                return None;
            }
        }
        Some(acc as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub q: u128,
    pub exponent: usize,
    pub bcs: BoundaryConditions,
    pub oracle_checked: bool,
}

pub(crate) fn check_shapes(r: &RingMatrix<ExtFieldSpec>, profile: &ThickProfile, bcs: &BoundaryConditions) -> Result<()> {
    if !r.is_square() || r.rows() != profile.total_dim() {
        return Err(Error::input(format!(
            "block is {}x{} but the lattice has total thick dimension {}",
            r.rows(),
            r.cols(),
            profile.total_dim()
        )));
    }
    if bcs.d() != profile.d() {
        return Err(Error::input(format!("{} boundary conditions for d = {}", bcs.d(), profile.d())));
    }
    Ok(())
}

/// The matrix `C` of constrained functionals: columns of `r - 1` on the
/// coordinates of periodic axes, coordinate selectors on zero-input axes.
pub fn build_constraint_system(
    r: &RingMatrix<ExtFieldSpec>,
    profile: &ThickProfile,
    bcs: &BoundaryConditions,
) -> Result<RingMatrix<ExtFieldSpec>> {
    check_shapes(r, profile, bcs)?;
    let f = r.ring();
    let n = r.rows();
    let dims = profile.thick_dims();
    let mut cols: Vec<Vec<_>> = Vec::new();
    for (axis, b) in bcs.axes().iter().enumerate() {
        let range = profile.offset(axis)..profile.offset(axis) + dims[axis];
        for j in range {
            match b {
                Boundary::Periodic => cols.push(
                    (0..n)
                        .map(|i| if i == j { f.sub(r.get(i, j), &f.one()) } else { *r.get(i, j) })
                        .collect(),
                ),
                Boundary::ZeroInput => cols.push((0..n).map(|i| if i == j { f.one() } else { f.zero() }).collect()),
                Boundary::Free => {}
            }
        }
    }
    Ok(RingMatrix::from_fn(f.clone(), n, cols.len(), |i, k| cols[k][i]))
}

fn is_f2(f: &ExtFieldSpec) -> bool {
    f.p() == 2 && f.degree() == 1
}

/// Exponent `e` with count `q^e`, from `dim {x : x C = 0}`.
pub fn count_configs(
    r: &RingMatrix<ExtFieldSpec>,
    profile: &ThickProfile,
    bcs: &BoundaryConditions,
) -> Result<ConfigCount> {
    let c = build_constraint_system(r, profile, bcs)?;
    let rank = if c.cols() == 0 {
        0
    } else if is_f2(r.ring()) {
        BitMatrix::from_matrix(&c)?.rank()
    } else {
        c.rank()?
    };
    Ok(ConfigCount { p: r.ring().p(), q: r.ring().size(), exponent: r.rows() - rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_extension_field;
    use crate::lattice::{enumerate_lines, LatticeSpec, LineOrdering};

    fn profile(d: usize, l: usize) -> ThickProfile {
        enumerate_lines(&LatticeSpec::cube(d, l, vec![1; d]).unwrap(), LineOrdering::Lex).unwrap()
    }

    #[test]
    fn constraint_system_shapes() {
        let f = build_extension_field(2, 1).unwrap();
        let p = profile(3, 2);
        let r = RingMatrix::identity(f.clone(), 12);
        let free = build_constraint_system(&r, &p, &BoundaryConditions::uniform(3, Boundary::Free)).unwrap();
        assert_eq!(free.cols(), 0);
        let toric = build_constraint_system(&r, &p, &BoundaryConditions::toric(3)).unwrap();
        assert_eq!(toric, r.sub(&RingMatrix::identity(f.clone(), 12)).unwrap());
        let zero = build_constraint_system(&r, &p, &BoundaryConditions::uniform(3, Boundary::ZeroInput)).unwrap();
        assert_eq!(zero, RingMatrix::identity(f, 12));
    }

    #[test]
    fn trivial_counts() {
        let f = build_extension_field(2, 2).unwrap();
        let p = profile(3, 2);
        let r = RingMatrix::identity(f.clone(), 12);
        assert_eq!(count_configs(&r, &p, &BoundaryConditions::toric(3)).unwrap().exponent, 12);
        assert_eq!(count_configs(&r, &p, &BoundaryConditions::uniform(3, Boundary::Free)).unwrap().exponent, 12);
        let z = count_configs(&r, &p, &BoundaryConditions::uniform(3, Boundary::ZeroInput)).unwrap();
        assert_eq!((z.q, z.exponent), (4, 0));
        assert!(count_configs(&r, &p, &BoundaryConditions::toric(2)).is_err());
    }

    #[test]
    fn parsing_and_mixes() {
        let b = BoundaryConditions::parse("p,zero,free").unwrap();
        assert_eq!(b.axes(), &[Boundary::Periodic, Boundary::ZeroInput, Boundary::Free]);
        assert_eq!(b.to_string(), "periodic,zero-input,free");
        assert!(BoundaryConditions::parse("p,q").is_err());
        assert_eq!(BoundaryConditions::all_mixes(3).len(), 27);
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"["periodic","zero-input","free"]"#);
    }

    #[test]
    fn expansion_guard() {
        let c = ConfigCount { p: 2, q: 2, exponent: 12 };
        assert_eq!(c.expand(), Some(4096));
        assert_eq!(ConfigCount { p: 2, q: 2, exponent: 63 }.expand(), None);
    }
}

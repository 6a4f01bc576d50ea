//! Verification suites.

use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use permblock_core::census::BoundaryConditions;
use permblock_core::decomp::{self, DecompositionReport, EvolutionCase, SymmetricLevel, Verdict, VerifyMode};
use permblock_core::dim4::{self, Brick4, ChainCase};
use permblock_core::json::matrix_rows_json;
use permblock_core::{build_extension_field, BrickFile, ExtFieldSpec, Field, FieldElement, MatrixAlgebra, Result, Ring, RingMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    #[value(name = "2d", alias = "planar")]
    Planar,
    #[value(name = "scalar-structure", alias = "b3")]
    ScalarStructure,
    #[value(name = "cubic", alias = "diag3")]
    Cubic,
    Symmetric,
    Algebra,
    #[value(name = "dim4", alias = "chain")]
    Dim4,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModeArg {
    /// Symbolic where feasible, sampled otherwise.
    Auto,
    Symbolic,
    Sampled,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub primes: Vec<u64>,
    pub trials: usize,
    pub mode: ModeArg,
    pub brick: Option<PathBuf>,
    pub instances: usize,
    pub seed: u64,
    pub cap_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub check: String,
    pub outcome: Verdict,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub details: Map<String, Value>,
}

impl Check {
    fn new(suite: &'static str, check: impl Into<String>, outcome: Verdict) -> Self {
        Check { suite, check: check.into(), outcome, details: Map::new() }
    }

    fn detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.into(), value.into());
        self
    }

    fn from_report(suite: &'static str, check: impl Into<String>, rep: DecompositionReport) -> Self {
        let mut c = Check::new(suite, check, rep.verdict.clone());
        c.details = rep.details.clone();
        c.details.insert("summands".into(), json!(rep.summands));
        c.details.insert("entry_power".into(), rep.entry_power.into());
        c
    }
}

/// Counts of per-instance outcomes folded into one verdict: any failure
/// falsifies, otherwise at least one verified instance verifies.
#[derive(Default)]
struct Tally {
    verified: usize,
    degenerate: usize,
    falsified: Vec<String>,
}

impl Tally {
    fn add(&mut self, label: String, v: &Verdict) {
        match v {
            Verdict::Verified { .. } => self.verified += 1,
            Verdict::Degenerate { .. } => self.degenerate += 1,
            Verdict::Falsified { detail } => self.falsified.push(format!("{label}: {detail}")),
        }
    }

    fn check(self, suite: &'static str, name: impl Into<String>) -> Check {
        let outcome = if !self.falsified.is_empty() {
            Verdict::Falsified { detail: self.falsified.join("; ") }
        } else if self.verified > 0 {
            Verdict::exact()
        } else {
            Verdict::Degenerate { reason: "every instance was degenerate".into() }
        };
        Check::new(suite, name, outcome).detail("verified", self.verified).detail("degenerate", self.degenerate)
    }
}

fn sampling_field() -> Result<ExtFieldSpec> {
    build_extension_field(2, 16)
}

fn random_matrix(f: &ExtFieldSpec, n: usize, rng: &mut ChaCha8Rng) -> RingMatrix<ExtFieldSpec> {
    RingMatrix::from_fn(f.clone(), n, n, |_, _| f.random_nonzero(rng))
}

fn brick_check<F>(cfg: &VerifyConfig, suite: &'static str, name: &str, verify: F) -> Result<Option<Check>>
where
    F: Fn(&BrickFile) -> Result<DecompositionReport>,
{
    let Some(path) = &cfg.brick else { return Ok(None) };
    let brick = crate::read_brick(path)?;
    Ok(Some(Check::from_report(suite, format!("{name}:{}", path.display()), verify(&brick)?)))
}

fn counts_check(
    suite: &'static str,
    name: &str,
    detected: &decomp::DetectedSummands,
    predicted: &[u128],
) -> Check {
    let got: Vec<u128> = detected.counts.iter().map(|&c| c as u128).collect();
    let outcome = if got == predicted && detected.charpoly_matches {
        Verdict::exact()
    } else {
        Verdict::Falsified { detail: format!("detected {got:?} (charpoly match: {}), predicted {predicted:?}", detected.charpoly_matches) }
    };
    Check::new(suite, name, outcome).detail("detected", json!(got)).detail("predicted", json!(predicted))
}

fn planar(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    const S: &str = "2d";
    let mut out = Vec::new();
    let (block, matches) = decomp::planar_block_over_integers()?;
    let outcome = if matches { Verdict::exact() } else { Verdict::Falsified { detail: "entries differ".into() } };
    out.push(Check::new(S, "planar-block", outcome).detail("block", matrix_rows_json(&block)));
    let rep = match cfg.mode {
        ModeArg::Sampled => decomp::verify_decomposition_2d_sampled(&sampling_field()?, cfg.trials, cfg.seed)?,
        _ => decomp::verify_decomposition_2d_symbolic()?,
    };
    out.push(Check::from_report(S, "planar-decomposition", rep));
    let f = sampling_field()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let a = random_matrix(&f, 2, &mut rng);
    let n = 2;
    let detected = decomp::detect_evolution_summands(&a, EvolutionCase::Planar, n, cfg.cap_dim)?;
    let predicted = decomp::evolution_census_closed_form(EvolutionCase::Planar, n)?.counts;
    out.push(counts_check(S, "planar-evolution", &detected, &predicted).detail("steps", n).detail("field", f.tag()));
    out.extend(brick_check(cfg, S, "planar-decomposition", |b| match b {
        BrickFile::Field(b) => decomp::verify_decomposition_2d(b.matrix()),
        BrickFile::Poly(b) => decomp::verify_decomposition_2d(b.matrix()),
    })?);
    Ok(out)
}

fn scalar_structure(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    const S: &str = "scalar-structure";
    let mut out = Vec::new();
    for (k, &p) in cfg.primes.iter().enumerate() {
        let sampled = VerifyMode::Sampled { field_degree: 16, trials: cfg.trials, seed: cfg.seed.wrapping_add(k as u64) };
        let mode = match cfg.mode {
            ModeArg::Symbolic => VerifyMode::Symbolic,
            ModeArg::Sampled => sampled,
            ModeArg::Auto if p == 2 => VerifyMode::Symbolic,
            ModeArg::Auto => sampled,
        };
        for (name, rep) in [
            ("scalar-structure", decomp::verify_scalar_structure(p, mode)?),
            ("triple-product-spectrum", decomp::verify_triple_product_spectrum(p, mode)?),
        ] {
            let mut c = Check::new(S, format!("{name} p={p}"), rep.verdict);
            c.details = rep.details;
            out.push(c);
        }
    }
    Ok(out)
}

fn cubic(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    const S: &str = "cubic";
    let mut out = Vec::new();
    let rep = match cfg.mode {
        ModeArg::Sampled => decomp::verify_decomposition_3d_sampled(&sampling_field()?, cfg.trials, cfg.seed)?,
        _ => decomp::verify_decomposition_3d_symbolic()?,
    };
    out.push(Check::from_report(S, "cubic-decomposition", rep));
    let f = sampling_field()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let a = random_matrix(&f, 3, &mut rng);
    let detected = decomp::detect_evolution_summands(&a, EvolutionCase::Generic, 1, cfg.cap_dim)?;
    let predicted = decomp::evolution_census_closed_form(EvolutionCase::Generic, 1)?.counts;
    out.push(counts_check(S, "cubic-evolution", &detected, &predicted).detail("steps", 1).detail("field", f.tag()));
    out.extend(brick_check(cfg, S, "cubic-decomposition", |b| match b {
        BrickFile::Field(b) => decomp::verify_decomposition_3d(b.matrix()),
        BrickFile::Poly(b) => decomp::verify_decomposition_3d(b.matrix()),
    })?);
    Ok(out)
}

/// A brick with `a12 a23 a31 = a13 a32 a21` and nonzero entries.
pub fn random_symmetrizable(f: &ExtFieldSpec, rng: &mut ChaCha8Rng) -> RingMatrix<ExtFieldSpec> {
    let mut a = random_matrix(f, 3, rng);
    let num = f.mul(&f.mul(a.get(0, 1), a.get(1, 2)), a.get(2, 0));
    let den = f.mul(a.get(2, 1), a.get(1, 0));
    a.set(0, 2, f.div(&num, &den).expect("entries are nonzero"));
    a
}

fn symmetric(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    const S: &str = "symmetric";
    let mut out = Vec::new();
    for (name, level) in [("symmetric-decomposition", SymmetricLevel::Simple), ("double-brick", SymmetricLevel::Double)] {
        let rep = decomp::verify_symmetric_symbolic(level)?;
        out.push(Check::from_report(S, name, rep));
    }
    let f = build_extension_field(2, 8)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut tally = Tally::default();
    for k in 0..cfg.instances {
        let a = random_symmetrizable(&f, &mut rng);
        let (_, sym) = decomp::symmetrize_brick(&a)?;
        if sym != sym.transpose() {
            tally.add(format!("instance {k}"), &Verdict::Falsified { detail: "not symmetric".into() });
            continue;
        }
        let rep = decomp::verify_symmetric_decomposition(&sym, SymmetricLevel::Simple)?;
        tally.add(format!("instance {k}"), &rep.verdict);
    }
    out.push(tally.check(S, "symmetrization").detail("field", f.tag()));

    let mut mismatch = None;
    for n in 0..=10 {
        if let Err(e) = decomp::evolution_census_closed_form(EvolutionCase::Symmetric, n) {
            mismatch = Some(e.to_string());
            break;
        }
    }
    let outcome = match mismatch {
        None => Verdict::exact(),
        Some(detail) => Verdict::Falsified { detail },
    };
    out.push(Check::new(S, "symmetric-census-closed-form", outcome).detail("max_steps", 10));

    let f16 = sampling_field()?;
    let (_, sym) = decomp::symmetrize_brick(&random_symmetrizable(&f16, &mut rng))?;
    let detected = decomp::detect_evolution_summands(&sym, EvolutionCase::Symmetric, 1, cfg.cap_dim)?;
    let predicted = decomp::evolution_census_closed_form(EvolutionCase::Symmetric, 1)?.counts;
    out.push(counts_check(S, "symmetric-evolution", &detected, &predicted).detail("steps", 1));

    if let Some(path) = &cfg.brick {
        let BrickFile::Field(b) = crate::read_brick(path)? else {
            return Err(permblock_core::Error::input("the symmetric suite takes a field brick"));
        };
        let sym = if b.matrix() == &b.matrix().transpose() { b.matrix().clone() } else { decomp::symmetrize_brick(b.matrix())?.1 };
        for level in [SymmetricLevel::Simple, SymmetricLevel::Double] {
            let rep = decomp::verify_symmetric_decomposition(&sym, level)?;
            out.push(Check::from_report(S, format!("{level:?}:{}", path.display()).to_lowercase(), rep));
        }
    }
    Ok(out)
}

fn algebra(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    const S: &str = "algebra";
    let f = build_extension_field(2, 8)?;
    let alg = MatrixAlgebra::new(f.clone(), 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    type Shape = fn(FieldElement, FieldElement, FieldElement) -> Vec<FieldElement>;
    let shapes: [(&str, Shape); 2] = [
        ("upper-toeplitz", |x, y, z| vec![x, y, z, x]),
        ("circulant", |x, y, _| vec![x, y, y, x]),
    ];
    for (name, shape) in shapes {
        let mut tally = Tally::default();
        for k in 0..cfg.instances {
            let a = RingMatrix::from_fn(alg.clone(), 3, 3, |_, _| shape(f.random(&mut rng), f.random(&mut rng), f.zero()));
            let rep = decomp::verify_decomposition_3d(&a)?;
            tally.add(format!("instance {k}"), &rep.verdict);
        }
        out.push(tally.check(S, format!("algebra-decomposition {name}")).detail("ring", alg.tag()));
    }
    Ok(out)
}

fn random_brick4(f: &ExtFieldSpec, case: ChainCase, rng: &mut ChaCha8Rng) -> Result<Brick4> {
    loop {
        let m = RingMatrix::from_fn(f.clone(), 4, 4, |_, _| f.random(rng));
        // b44 = 1 makes the periodic chain singular
        if case == ChainCase::Periodic && f.is_one(m.get(3, 3)) {
            continue;
        }
        return Brick4::new(m);
    }
}

fn dim4_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    const S: &str = "dim4";
    let f = build_extension_field(2, 8)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for case in [ChainCase::Periodic, ChainCase::ZeroInput] {
        let label = serde_json::to_value(case).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let (mut strat, mut census) = (Tally::default(), Tally::default());
        for k in 0..cfg.instances {
            let b = random_brick4(&f, case, &mut rng)?;
            let rep = dim4::verify_stratification(&b, 1, case)?;
            strat.add(format!("instance {k}"), &rep.verdict);
            let mut mismatch = Vec::new();
            for bcs in BoundaryConditions::all_mixes(3) {
                let (full, reduced) = dim4::census_cross_check_4d(&b, 2, case, &bcs)?;
                if full != reduced {
                    mismatch.push(format!("{bcs}: {} vs {}", full.exponent, reduced.exponent));
                }
            }
            let v = if mismatch.is_empty() { Verdict::exact() } else { Verdict::Falsified { detail: mismatch.join(", ") } };
            census.add(format!("instance {k}"), &v);
        }
        out.push(strat.check(S, format!("stratification {label}")).detail("steps", 1).detail("field", f.tag()));
        out.push(census.check(S, format!("four-dim-census {label}")).detail("mixes", 27));
    }
    Ok(out)
}

pub fn run(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    type SuiteFn = fn(&VerifyConfig) -> Result<Vec<Check>>;
    let suites: &[SuiteFn] = match cfg.suite {
        Suite::Planar => &[planar],
        Suite::ScalarStructure => &[scalar_structure],
        Suite::Cubic => &[cubic],
        Suite::Symmetric => &[symmetric],
        Suite::Algebra => &[algebra],
        Suite::Dim4 => &[dim4_suite],
        Suite::All => &[planar, scalar_structure, cubic, symmetric, algebra, dim4_suite],
    };
    let mut out = Vec::new();
    for s in suites {
        out.extend(s(cfg)?);
    }
    Ok(out)
}

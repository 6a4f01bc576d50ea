//! The assemble, census, evolve and reduce4d commands.

use std::path::{Path, PathBuf};

use clap::Args;
use serde_json::{json, Value};

use permblock_core::census::{count_configs, BoundaryConditions, CensusReport};
use permblock_core::decomp::{self, EvolutionCase, RESOLVED_LINE_ORDERING};
use permblock_core::dim4::{self, Brick4, ChainCase};
use permblock_core::json::{matrix_to_json, ElemCodec};
use permblock_core::lattice::{assemble_block, enumerate_lines, evolve as evolve_block, BrickSpec, LatticeSpec};
use permblock_core::oracle::brute_force_census;
use permblock_core::{BrickFile, Error, ExtFieldSpec, Ring, RingMatrix};

use crate::{read_brick, CliError, GlobalOpts, Outcome};

#[derive(Debug, Args)]
pub struct LatticeArgs {
    /// Edge length shared by every axis.
    #[arg(long, default_value_t = 2)]
    edge: usize,
    /// Per-axis edge lengths, overriding --edge.
    #[arg(long, value_delimiter = ',')]
    edges: Option<Vec<usize>>,
}

impl LatticeArgs {
    fn spec(&self, thin_dims: &[usize]) -> Result<LatticeSpec, Error> {
        let edges = self.edges.clone().unwrap_or_else(|| vec![self.edge; thin_dims.len()]);
        LatticeSpec::new(edges, thin_dims.to_vec())
    }
}

fn check_dim(spec: &LatticeSpec, cap: usize) -> Result<(), Error> {
    let dim: usize = spec.thick_dims().iter().sum();
    if dim > cap {
        return Err(Error::Resource { cap: "dimension", needed: dim as u128, limit: cap as u128 });
    }
    Ok(())
}

fn lattice_json(spec: &LatticeSpec) -> Value {
    json!({ "edges": spec.edges(), "thin_dims": spec.thin_dims(), "thick_dims": spec.thick_dims() })
}

fn field_brick(path: &Path, what: &str) -> Result<BrickSpec<ExtFieldSpec>, Error> {
    match read_brick(path)? {
        BrickFile::Field(b) => Ok(b),
        BrickFile::Poly(_) => Err(Error::input(format!("{what} needs a brick over a finite field"))),
    }
}

#[derive(Debug, Args)]
pub struct AssembleArgs {
    /// Brick JSON file.
    brick: PathBuf,
    #[command(flatten)]
    lattice: LatticeArgs,
}

fn assemble_any<R: ElemCodec>(b: &BrickSpec<R>, lat: &LatticeArgs, cap: usize) -> Result<Value, Error> {
    let spec = lat.spec(b.thin_dims())?;
    check_dim(&spec, cap)?;
    let profile = enumerate_lines(&spec, RESOLVED_LINE_ORDERING)?;
    let block = assemble_block(b, &profile, None)?;
    Ok(json!({ "lattice": lattice_json(&spec), "block": matrix_to_json(&block) }))
}

pub fn assemble(a: AssembleArgs, g: &GlobalOpts) -> Result<Outcome, CliError> {
    let result = match read_brick(&a.brick)? {
        BrickFile::Field(b) => assemble_any(&b, &a.lattice, g.cap_dim)?,
        BrickFile::Poly(b) => assemble_any(&b, &a.lattice, g.cap_dim)?,
    };
    Ok(Outcome { result, falsified: false })
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    /// Brick JSON file.
    brick: PathBuf,
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Per-axis boundary conditions, e.g. `periodic,zero,free`; all periodic by default.
    #[arg(long)]
    bcs: Option<String>,
    /// Also enumerate every input with the brute-force oracle.
    #[arg(long)]
    oracle: bool,
}

pub fn census(a: CensusArgs, g: &GlobalOpts) -> Result<Outcome, CliError> {
    let brick = field_brick(&a.brick, "census")?;
    let spec = a.lattice.spec(brick.thin_dims())?;
    check_dim(&spec, g.cap_dim)?;
    let bcs = match &a.bcs {
        Some(s) => BoundaryConditions::parse(s)?,
        None => BoundaryConditions::toric(spec.d()),
    };
    let profile = enumerate_lines(&spec, RESOLVED_LINE_ORDERING)?;
    let block = assemble_block(&brick, &profile, None)?;
    let count = count_configs(&block, &profile, &bcs)?;
    let mut falsified = false;
    let mut oracle = Value::Null;
    if a.oracle {
        let brute = brute_force_census(&block, &profile, &bcs, g.cap_points)?;
        falsified = brute != count;
        oracle = json!({ "q": brute.q, "exponent": brute.exponent });
    }
    let report = CensusReport { q: count.q, exponent: count.exponent, bcs, oracle_checked: a.oracle };
    let mut result = serde_json::to_value(&report).expect("census reports serialize");
    result["lattice"] = lattice_json(&spec);
    result["expanded"] = json!(count.expand());
    if a.oracle {
        result["oracle"] = oracle;
    }
    Ok(Outcome { result, falsified })
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    /// Brick JSON file.
    brick: PathBuf,
    /// Number of block-making steps.
    #[arg(long, default_value_t = 1)]
    steps: usize,
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Skip the rank-based confirmation of predicted counts.
    #[arg(long)]
    no_detect: bool,
}

/// Which summand-count law applies to a brick, if any.
fn classify(a: &RingMatrix<ExtFieldSpec>, thin: &[usize]) -> Option<EvolutionCase> {
    let f = a.ring();
    if f.characteristic() != 2 || thin.iter().any(|&t| t != 1) {
        return None;
    }
    match a.rows() {
        2 if !f.is_zero(a.get(0, 1)) && !f.is_zero(a.get(1, 0)) => Some(EvolutionCase::Planar),
        3 if a == &a.transpose() => {
            let off = [(0, 1), (0, 2), (1, 2)];
            off.iter().all(|&(i, j)| !f.is_zero(a.get(i, j))).then_some(EvolutionCase::Symmetric)
        }
        3 if !f.is_zero(&decomp::nondegeneracy_element(a)) => Some(EvolutionCase::Generic),
        _ => None,
    }
}

fn kind_names(case: EvolutionCase) -> &'static [&'static str] {
    match case {
        EvolutionCase::Planar => &["brick"],
        EvolutionCase::Generic => &["brick", "transposed-brick"],
        EvolutionCase::Symmetric => &["simple-symmetric", "double-brick"],
    }
}

pub fn evolve(a: EvolveArgs, g: &GlobalOpts) -> Result<Outcome, CliError> {
    let brick = field_brick(&a.brick, "evolve")?;
    let spec = a.lattice.spec(brick.thin_dims())?;
    let n = brick.matrix().rows();
    let identity = brick.matrix() == &RingMatrix::identity(brick.matrix().ring().clone(), n);
    let cube2 = spec.edges().iter().all(|&e| e == 2);
    let case = if cube2 { classify(brick.matrix(), brick.thin_dims()) } else { None };
    let stages = evolve_block(&brick, a.steps, spec.edges(), &RESOLVED_LINE_ORDERING, g.cap_dim)?;
    let mut falsified = false;
    let mut steps = Vec::with_capacity(stages.len());
    for (k, stage) in stages.iter().enumerate() {
        let step = k as u32 + 1;
        let mut entry = json!({
            "step": step,
            "thick_dims": stage.profile.thick_dims(),
            "dim": stage.profile.total_dim(),
        });
        if identity {
            let dim = stage.profile.total_dim();
            let is_identity = stage.block.matrix() == &RingMatrix::identity(brick.matrix().ring().clone(), dim);
            falsified |= !is_identity;
            let copies = json!({ "kind": "identity-brick", "multiplicity": dim / n, "dim": n });
            entry["prediction"] = json!({ "case": "identity", "summands": [copies] });
            entry["confirmed"] = json!(is_identity);
        } else if let Some(case) = case {
            let predicted = decomp::evolution_census_closed_form(case, step)?.counts;
            let summands: Vec<Value> = kind_names(case)
                .iter()
                .zip(&predicted)
                .map(|(kind, m)| json!({ "kind": kind, "multiplicity": m }))
                .collect();
            entry["prediction"] = json!({ "case": case, "entry_power": 1u64 << step, "summands": summands });
            if !a.no_detect {
                let detected = decomp::detect_evolution_summands(brick.matrix(), case, step, g.cap_dim)?;
                let got: Vec<u128> = detected.counts.iter().map(|&c| c as u128).collect();
                let ok = got == predicted && detected.charpoly_matches;
                falsified |= !ok;
                entry["detected"] = json!(got);
                entry["charpoly_matches"] = json!(detected.charpoly_matches);
                entry["confirmed"] = json!(ok);
            }
        } else {
            entry["prediction"] = Value::Null;
        }
        steps.push(entry);
    }
    let result = json!({
        "field": brick.matrix().ring().tag(),
        "thin_dims": brick.thin_dims(),
        "edges": spec.edges(),
        "case": if identity { json!("identity") } else { json!(case) },
        "steps": steps,
    });
    Ok(Outcome { result, falsified })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CaseArg {
    Periodic,
    ZeroInput,
}

#[derive(Debug, Args)]
pub struct Reduce4dArgs {
    /// 4x4 brick JSON file.
    brick: PathBuf,
    /// Chain length along the fourth axis.
    #[arg(long, default_value_t = 2)]
    l: usize,
    #[arg(long, value_enum, default_value_t = CaseArg::Periodic)]
    case: CaseArg,
    /// Verify the layer decomposition after n steps (l is then 2^n).
    #[arg(long)]
    stratify: Option<u32>,
    /// Compare the genuine 4D census with the reduced one for all 27 mixes.
    #[arg(long)]
    census_check: bool,
}

pub fn reduce4d(a: Reduce4dArgs, g: &GlobalOpts) -> Result<Outcome, CliError> {
    let brick = field_brick(&a.brick, "reduce4d")?;
    if brick.thin_dims() != [1, 1, 1, 1] {
        return Err(Error::input("reduce4d needs a 4x4 brick with d = 4").into());
    }
    let b = Brick4::new(brick.matrix().clone())?;
    let case = match a.case {
        CaseArg::Periodic => ChainCase::Periodic,
        CaseArg::ZeroInput => ChainCase::ZeroInput,
    };
    let l = match a.stratify {
        Some(n) if n >= usize::BITS => return Err(Error::input("too many stratification steps").into()),
        Some(n) => 1usize << n,
        None => a.l,
    };
    if 3 * l > g.cap_dim {
        return Err(Error::Resource { cap: "dimension", needed: 3 * l as u128, limit: g.cap_dim as u128 }.into());
    }
    let reduced = dim4::reduce_chain_4d(&b, l, case)?;
    let mut result = reduced.to_json();
    let f = b.field();
    if f.characteristic() == 2 && l.is_power_of_two() {
        result["nondegenerate"] = json!(dim4::nondegeneracy_4d(&b, case, l.trailing_zeros())?);
    }
    let mut falsified = false;
    if let Some(n) = a.stratify {
        let rep = dim4::verify_stratification(&b, n, case)?;
        falsified |= rep.verdict.is_falsified();
        result["stratification"] = serde_json::to_value(&rep).expect("reports serialize");
    }
    if a.census_check {
        let mut rows = Vec::new();
        for bcs in BoundaryConditions::all_mixes(3) {
            let (full, small) = dim4::census_cross_check_4d(&b, l, case, &bcs)?;
            falsified |= full != small;
            rows.push(json!({ "bcs": bcs, "genuine": full.exponent, "reduced": small.exponent }));
        }
        result["census_check"] = json!(rows);
    }
    Ok(Outcome { result, falsified })
}

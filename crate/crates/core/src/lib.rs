pub mod algebra;
pub mod census;
pub mod decomp;
pub mod dim4;
pub mod error;
pub mod field;
pub mod gf2;
pub mod identity;
pub mod json;
pub mod lattice;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod ring;

pub use error::{Error, Result};
pub use field::{build_extension_field, ExtFieldSpec, FieldElement, PrimeFieldSpec};
pub use ring::{Field, Integers, Ring};
pub use algebra::MatrixAlgebra;
pub use census::{count_configs, Boundary, BoundaryConditions, CensusReport, ConfigCount};
pub use decomp::{
    DecompositionReport, EvolutionCase, StructureReport, Summand, SummandKind, SymmetricLevel, Verdict, VerifyMode,
    RESOLVED_LINE_ORDERING,
};
pub use dim4::{reduce_chain_4d, Brick4, ChainCase, ReducedBrick};
pub use json::{parse_brick, BrickFile, ElemCodec};
pub use lattice::{assemble_block, enumerate_lines, BrickSpec, LatticeSpec, LineOrdering, ThickProfile};
pub use matrix::RingMatrix;
pub use poly::{CoeffRing, PolyRing};

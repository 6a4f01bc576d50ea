//! JSON encodings of elements, matrices, bricks and lattices.
//!
//! Field elements are written as their base-p index (coefficient of x^i is
//! digit i) when that fits in 53 bits, otherwise as a coefficient array.
//! Polynomials are strings. Matrix-algebra elements are nested row arrays.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::MatrixAlgebra;
use crate::error::{Error, Result};
use crate::field::{build_extension_field, ExtFieldSpec, FieldSpecJson};
use crate::lattice::{BrickSpec, LatticeSpec};
use crate::matrix::RingMatrix;
use crate::poly::{CoeffRing, PolyRing};
use crate::ring::{Field, Integers, Ring};

/// Element-level JSON conversion for a ring.
pub trait ElemCodec: Ring {
    fn encode(&self, e: &Self::Elem) -> Value;
    fn decode(&self, v: &Value) -> Result<Self::Elem>;
}

impl ElemCodec for ExtFieldSpec {
    fn encode(&self, e: &Self::Elem) -> Value {
        if self.size() <= 1 << 53 {
            json!(self.index_of(e) as u64)
        } else {
            json!(e.coeffs(self.degree()))
        }
    }

    fn decode(&self, v: &Value) -> Result<Self::Elem> {
        match v {
            Value::Number(n) => {
                let i = n.as_u64().ok_or_else(|| Error::input(format!("field element must be a nonnegative integer, got {n}")))?;
                if i as u128 >= self.size() {
                    return Err(Error::input(format!("element index {i} out of range for {}", self.tag())));
                }
                Ok(self.from_index(i as u128))
            }
            Value::Array(cs) => {
                let coeffs = cs
                    .iter()
                    .map(|c| c.as_u64().ok_or_else(|| Error::input("coefficients must be nonnegative integers")))
                    .collect::<Result<Vec<_>>>()?;
                self.element(&coeffs)
            }
            other => Err(Error::input(format!("cannot read a field element from {other}"))),
        }
    }
}

impl ElemCodec for PolyRing {
    fn encode(&self, e: &Self::Elem) -> Value {
        json!(self.display(e))
    }

    fn decode(&self, v: &Value) -> Result<Self::Elem> {
        match v {
            Value::String(s) => self.parse(s),
            Value::Number(n) => n.as_i64().map(|k| self.from_i64(k)).ok_or_else(|| Error::input("bad constant")),
            other => Err(Error::input(format!("cannot read a polynomial from {other}"))),
        }
    }
}

impl ElemCodec for Integers {
    fn encode(&self, e: &i64) -> Value {
        json!(e)
    }

    fn decode(&self, v: &Value) -> Result<i64> {
        v.as_i64().ok_or_else(|| Error::input(format!("expected an integer, got {v}")))
    }
}

impl<R: ElemCodec> ElemCodec for MatrixAlgebra<R> {
    fn encode(&self, e: &Self::Elem) -> Value {
        let m = self.to_matrix(e);
        Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|x| self.base().encode(x)).collect())).collect())
    }

    fn decode(&self, v: &Value) -> Result<Self::Elem> {
        let m = matrix_from_rows(self.base(), v)?;
        self.from_matrix(&m)
    }
}

/// Reads a matrix from an array of row arrays.
pub fn matrix_from_rows<R: ElemCodec>(ring: &R, v: &Value) -> Result<RingMatrix<R>> {
    let rows = v.as_array().ok_or_else(|| Error::input("matrix entries must be an array of rows"))?;
    let parsed = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::input("each matrix row must be an array"))?
                .iter()
                .map(|x| ring.decode(x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if parsed.is_empty() {
        return Err(Error::input("matrix has no rows"));
    }
    RingMatrix::from_rows(ring.clone(), parsed)
}

pub fn matrix_rows_json<R: ElemCodec>(m: &RingMatrix<R>) -> Value {
    let r = m.ring();
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|x| r.encode(x)).collect())).collect())
}

/// `{"rows", "cols", "ring", "entries"}`.
pub fn matrix_to_json<R: ElemCodec>(m: &RingMatrix<R>) -> Value {
    json!({ "rows": m.rows(), "cols": m.cols(), "ring": m.ring().tag(), "entries": matrix_rows_json(m) })
}

/// Field of a brick file; the modulus defaults to the standard one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRef {
    pub p: u64,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

impl FieldRef {
    pub fn build(&self) -> Result<ExtFieldSpec> {
        match &self.modulus {
            Some(modulus) => ExtFieldSpec::from_json(&FieldSpecJson { p: self.p, m: self.m, modulus: modulus.clone() }),
            None => build_extension_field(self.p, self.m),
        }
    }

    pub fn of(f: &ExtFieldSpec) -> Self {
        let j = f.to_json();
        FieldRef { p: j.p, m: j.m, modulus: Some(j.modulus) }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct BrickJson {
    #[serde(default)]
    field: Option<FieldRef>,
    #[serde(default)]
    ring: Option<String>,
    #[serde(default)]
    vars: Option<Vec<String>>,
    #[serde(default)]
    coeffs: Option<CoeffRing>,
    #[serde(default)]
    d: Option<usize>,
    #[serde(default)]
    thin_dims: Option<Vec<usize>>,
    entries: Value,
}

/// A brick read from JSON: over a finite field or over a polynomial ring.
#[derive(Debug, Clone)]
pub enum BrickFile {
    Field(BrickSpec<ExtFieldSpec>),
    Poly(BrickSpec<PolyRing>),
}

fn thin_dims_for(d: Option<usize>, thin: Option<Vec<usize>>, size: usize) -> Result<Vec<usize>> {
    let thin = match (thin, d) {
        (Some(t), Some(d)) if t.len() != d => {
            return Err(Error::input(format!("d = {d} but {} thin dimensions", t.len())));
        }
        (Some(t), _) => t,
        (None, Some(d)) if d * (size / d.max(1)) == size => vec![size / d; d],
        (None, Some(d)) => return Err(Error::input(format!("brick of size {size} does not split into {d} axes"))),
        (None, None) => vec![1; size],
    };
    Ok(thin)
}

/// Parses `{"field": {"p", "m", "modulus"?}, "d"?, "thin_dims"?, "entries"}`
/// or `{"ring": "poly", "vars", "coeffs"?, "d"?, "thin_dims"?, "entries"}`.
pub fn parse_brick(text: &str) -> Result<BrickFile> {
    let j: BrickJson = serde_json::from_str(text).map_err(|e| Error::input(format!("brick JSON: {e}")))?;
    match (j.field, j.ring.as_deref()) {
        (Some(fr), None | Some("field")) => {
            let f = fr.build()?;
            let m = matrix_from_rows(&f, &j.entries)?;
            let thin = thin_dims_for(j.d, j.thin_dims, m.rows())?;
            Ok(BrickFile::Field(BrickSpec::new(m, thin)?))
        }
        (None, Some("poly")) => {
            let vars = j.vars.ok_or_else(|| Error::input("polynomial bricks need \"vars\""))?;
            let ring = PolyRing::new(&vars, j.coeffs.unwrap_or(CoeffRing::Modular(2)))?;
            let m = matrix_from_rows(&ring, &j.entries)?;
            let thin = thin_dims_for(j.d, j.thin_dims, m.rows())?;
            Ok(BrickFile::Poly(BrickSpec::new(m, thin)?))
        }
        _ => Err(Error::input("a brick needs either \"field\" or \"ring\": \"poly\"")),
    }
}

pub fn field_brick_to_json(brick: &BrickSpec<ExtFieldSpec>) -> Value {
    json!({
        "field": FieldRef::of(brick.matrix().ring()),
        "d": brick.d(),
        "thin_dims": brick.thin_dims(),
        "entries": matrix_rows_json(brick.matrix()),
    })
}

pub fn poly_brick_to_json(brick: &BrickSpec<PolyRing>) -> Value {
    let r = brick.matrix().ring();
    json!({
        "ring": "poly",
        "vars": r.vars(),
        "coeffs": r.coeff_ring(),
        "d": brick.d(),
        "thin_dims": brick.thin_dims(),
        "entries": matrix_rows_json(brick.matrix()),
    })
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum LatticeJson {
    Cube { d: usize, l: usize },
    Edges { edges: Vec<usize> },
}

/// Parses `{"d", "l"}` or `{"edges"}`; thin dimensions come from the brick.
pub fn parse_lattice(text: &str, thin_dims: &[usize]) -> Result<LatticeSpec> {
    let j: LatticeJson = serde_json::from_str(text).map_err(|e| Error::input(format!("lattice JSON: {e}")))?;
    let edges = match j {
        LatticeJson::Cube { d, l } => vec![l; d],
        LatticeJson::Edges { edges } => edges,
    };
    LatticeSpec::new(edges, thin_dims.to_vec())
}

//! Lattice geometry, brick embedding and block assembly.
//!
//! Thick space `i` collects one copy of thin space `i` per line parallel to
//! axis `i`. Its coordinates are laid out line-major: the copy on the line in
//! slot `s` occupies `s * thin_dims[i] .. (s + 1) * thin_dims[i]`. Thick
//! spaces follow each other in axis order. Slots come from a `LineOrdering`
//! applied to the transverse coordinates of the line.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{check_permutation, BlockProfile, RingMatrix};
use crate::ring::Ring;

pub type Vertex = Vec<usize>;

/// Box of lattice points `0 <= x_i < edges[i]` with a thin dimension per axis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    edges: Vec<usize>,
    thin_dims: Vec<usize>,
}

impl LatticeSpec {
    pub fn new(edges: Vec<usize>, thin_dims: Vec<usize>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::input("lattice needs at least one axis"));
        }
        if edges.len() != thin_dims.len() {
            return Err(Error::input(format!(
                "{} edge lengths but {} thin dimensions",
                edges.len(),
                thin_dims.len()
            )));
        }
        if edges.iter().chain(&thin_dims).any(|&e| e == 0) {
            return Err(Error::input("edge lengths and thin dimensions must be positive"));
        }
        Ok(LatticeSpec { edges, thin_dims })
    }

    pub fn cube(d: usize, l: usize, thin_dims: Vec<usize>) -> Result<Self> {
        if thin_dims.len() != d {
            return Err(Error::input(format!("{} thin dimensions for d = {d}", thin_dims.len())));
        }
        Self::new(vec![l; d], thin_dims)
    }

    pub fn d(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn thin_dims(&self) -> &[usize] {
        &self.thin_dims
    }

    pub fn num_vertices(&self) -> usize {
        self.edges.iter().product()
    }

    pub fn contains(&self, v: &[usize]) -> bool {
        v.len() == self.d() && v.iter().zip(&self.edges).all(|(x, e)| x < e)
    }

    /// Number of lines parallel to `axis`.
    pub fn lines(&self, axis: usize) -> usize {
        self.edges.iter().enumerate().filter(|&(j, _)| j != axis).map(|(_, e)| e).product()
    }

    /// Thick dimensions per axis.
    pub fn thick_dims(&self) -> Vec<usize> {
        (0..self.d()).map(|i| self.lines(i) * self.thin_dims[i]).collect()
    }

    /// All vertices in lexicographic order (first coordinate most significant).
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.num_vertices());
        let mut v = vec![0; self.d()];
        loop {
            out.push(v.clone());
            let mut k = self.d();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                v[k] += 1;
                if v[k] < self.edges[k] {
                    break;
                }
                v[k] = 0;
            }
        }
    }

    /// Layered order: by coordinate sum, lexicographic inside each layer.
    pub fn default_order(&self) -> Vec<Vertex> {
        let mut v = self.vertices();
        v.sort_by_key(|x| (x.iter().sum::<usize>(), x.clone()));
        v
    }

    /// Uniformly random choice among the currently available vertices at each
    /// step; always a linear extension of the coordinatewise partial order.
    pub fn random_linear_extension<G: Rng + ?Sized>(&self, rng: &mut G) -> Vec<Vertex> {
        let verts = self.vertices();
        let index = |v: &[usize]| v.iter().zip(&self.edges).fold(0, |acc, (x, e)| acc * e + x);
        let mut missing: Vec<usize> = verts.iter().map(|v| v.iter().filter(|&&x| x > 0).count()).collect();
        let mut available: Vec<usize> = (0..verts.len()).filter(|&i| missing[i] == 0).collect();
        let mut out = Vec::with_capacity(verts.len());
        while !available.is_empty() {
            let k = rng.gen_range(0..available.len());
            let vi = available.swap_remove(k);
            let v = &verts[vi];
            for axis in 0..self.d() {
                if v[axis] + 1 < self.edges[axis] {
                    let mut w = v.clone();
                    w[axis] += 1;
                    let wi = index(&w);
                    missing[wi] -= 1;
                    if missing[wi] == 0 {
                        available.push(wi);
                    }
                }
            }
            out.push(v.clone());
        }
        out
    }
}

/// How lines of one axis are assigned slots inside the thick space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineOrdering {
    /// Transverse coordinates compared lexicographically, first coordinate most significant.
    Lex,
    /// First transverse coordinate least significant.
    Colex,
    /// Per axis, `perm[lex_index] = slot`.
    Explicit(Vec<Vec<usize>>),
}

/// Slot tables for every axis of a lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThickProfile {
    spec: LatticeSpec,
    ordering: LineOrdering,
    #[serde(skip)]
    slot_of: Vec<Vec<usize>>,
    #[serde(skip)]
    lex_of: Vec<Vec<usize>>,
}

/// Builds the slot tables for `spec` under `ordering`.
pub fn enumerate_lines(spec: &LatticeSpec, ordering: LineOrdering) -> Result<ThickProfile> {
    let d = spec.d();
    let mut slot_of = Vec::with_capacity(d);
    for axis in 0..d {
        let n = spec.lines(axis);
        let table = match &ordering {
            LineOrdering::Lex => (0..n).collect(),
            LineOrdering::Colex => {
                let trans: Vec<usize> = (0..d).filter(|&j| j != axis).map(|j| spec.edges[j]).collect();
                (0..n)
                    .map(|lex| {
                        // digits of lex, first most significant
                        let mut digits = vec![0; trans.len()];
                        let mut r = lex;
                        for k in (0..trans.len()).rev() {
                            digits[k] = r % trans[k];
                            r /= trans[k];
                        }
                        let mut idx = 0;
                        for k in (0..trans.len()).rev() {
                            idx = idx * trans[k] + digits[k];
                        }
                        idx
                    })
                    .collect()
            }
            LineOrdering::Explicit(perms) => {
                if perms.len() != d {
                    return Err(Error::input(format!("{} line permutations for d = {d}", perms.len())));
                }
                check_permutation(&perms[axis], n)?;
                perms[axis].clone()
            }
        };
        slot_of.push(table);
    }
    let lex_of = slot_of
        .iter()
        .map(|t| {
            let mut inv = vec![0; t.len()];
            for (lex, &s) in t.iter().enumerate() {
                inv[s] = lex;
            }
            inv
        })
        .collect();
    Ok(ThickProfile { spec: spec.clone(), ordering, slot_of, lex_of })
}

impl ThickProfile {
    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn ordering(&self) -> &LineOrdering {
        &self.ordering
    }

    pub fn d(&self) -> usize {
        self.spec.d()
    }

    pub fn thin_dims(&self) -> &[usize] {
        &self.spec.thin_dims
    }

    pub fn thick_dims(&self) -> Vec<usize> {
        self.spec.thick_dims()
    }

    pub fn total_dim(&self) -> usize {
        self.thick_dims().iter().sum()
    }

    pub fn offset(&self, axis: usize) -> usize {
        self.thick_dims()[..axis].iter().sum()
    }

    pub fn block_profile(&self) -> BlockProfile {
        BlockProfile::new(self.thick_dims()).expect("thick dimensions are positive")
    }

    fn transverse_lex(&self, axis: usize, v: &[usize]) -> usize {
        let mut idx = 0;
        for (j, (&x, &e)) in v.iter().zip(&self.spec.edges).enumerate() {
            if j != axis {
                idx = idx * e + x;
            }
        }
        idx
    }

    /// Slot of the axis-parallel line through `v`.
    pub fn slot(&self, axis: usize, v: &[usize]) -> usize {
        self.slot_of[axis][self.transverse_lex(axis, v)]
    }

    /// Transverse coordinates of the line in `slot`, in axis order with `axis` skipped.
    pub fn line_coords(&self, axis: usize, slot: usize) -> Vec<usize> {
        let trans: Vec<usize> = (0..self.d()).filter(|&j| j != axis).map(|j| self.spec.edges[j]).collect();
        let mut r = self.lex_of[axis][slot];
        let mut digits = vec![0; trans.len()];
        for k in (0..trans.len()).rev() {
            digits[k] = r % trans[k];
            r /= trans[k];
        }
        digits
    }

    /// Coordinate of thin component `t` of the axis line through `v`.
    pub fn coord(&self, axis: usize, v: &[usize], t: usize) -> usize {
        self.offset(axis) + self.slot(axis, v) * self.spec.thin_dims[axis] + t
    }

    /// Thick coordinates touched by the brick at `v`, in the brick's own order.
    pub fn brick_indices(&self, v: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        for axis in 0..self.d() {
            for t in 0..self.spec.thin_dims[axis] {
                out.push(self.coord(axis, v, t));
            }
        }
        out
    }

    /// Checks that `order` lists every vertex once with all predecessors first.
    pub fn validate_order(&self, order: &[Vertex]) -> Result<()> {
        let spec = &self.spec;
        if order.len() != spec.num_vertices() {
            return Err(Error::input(format!(
                "order has {} vertices, lattice has {}",
                order.len(),
                spec.num_vertices()
            )));
        }
        let index = |v: &[usize]| v.iter().zip(&spec.edges).fold(0, |acc, (x, e)| acc * e + x);
        let mut seen = vec![false; spec.num_vertices()];
        for v in order {
            if !spec.contains(v) {
                return Err(Error::input(format!("vertex {v:?} is outside the lattice")));
            }
            if seen[index(v)] {
                return Err(Error::input(format!("vertex {v:?} appears twice")));
            }
            for axis in 0..v.len() {
                if v[axis] > 0 {
                    let mut w = v.clone();
                    w[axis] -= 1;
                    if !seen[index(&w)] {
                        return Err(Error::input(format!(
                            "vertex {v:?} comes before its predecessor {w:?}"
                        )));
                    }
                }
            }
            seen[index(v)] = true;
        }
        Ok(())
    }
}

/// A brick: a square matrix acting on the direct sum of the thin spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct BrickSpec<R: Ring> {
    matrix: RingMatrix<R>,
    thin_dims: Vec<usize>,
}

impl<R: Ring> BrickSpec<R> {
    pub fn new(matrix: RingMatrix<R>, thin_dims: Vec<usize>) -> Result<Self> {
        let profile = BlockProfile::new(thin_dims.clone())?;
        if !matrix.is_square() || matrix.rows() != profile.dim() {
            return Err(Error::input(format!(
                "brick matrix is {}x{} but thin dimensions sum to {}",
                matrix.rows(),
                matrix.cols(),
                profile.dim()
            )));
        }
        Ok(BrickSpec { matrix, thin_dims })
    }

    /// Brick with one-dimensional thin spaces.
    pub fn simple(matrix: RingMatrix<R>) -> Result<Self> {
        let n = matrix.rows();
        Self::new(matrix, vec![1; n])
    }

    pub fn identity(ring: R, thin_dims: Vec<usize>) -> Result<Self> {
        let n = thin_dims.iter().sum();
        Self::new(RingMatrix::identity(ring, n), thin_dims)
    }

    pub fn matrix(&self) -> &RingMatrix<R> {
        &self.matrix
    }

    pub fn into_matrix(self) -> RingMatrix<R> {
        self.matrix
    }

    pub fn thin_dims(&self) -> &[usize] {
        &self.thin_dims
    }

    pub fn d(&self) -> usize {
        self.thin_dims.len()
    }

    pub fn block_profile(&self) -> BlockProfile {
        BlockProfile::new(self.thin_dims.clone()).expect("validated at construction")
    }

    fn check_profile(&self, profile: &ThickProfile) -> Result<()> {
        if self.thin_dims != profile.thin_dims() {
            return Err(Error::input(format!(
                "brick thin dimensions {:?} do not match lattice {:?}",
                self.thin_dims,
                profile.thin_dims()
            )));
        }
        Ok(())
    }
}

/// The brick acting on the lines through `v`, identity elsewhere.
pub fn embed_brick_at<R: Ring>(brick: &BrickSpec<R>, v: &[usize], profile: &ThickProfile) -> Result<RingMatrix<R>> {
    brick.check_profile(profile)?;
    if !profile.spec().contains(v) {
        return Err(Error::input(format!("vertex {v:?} is outside the lattice")));
    }
    let idx = profile.brick_indices(v);
    let mut m = RingMatrix::identity(brick.matrix.ring().clone(), profile.total_dim());
    let zero = brick.matrix.ring().zero();
    for &i in &idx {
        m.set(i, i, zero.clone());
    }
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            m.set(i, j, brick.matrix.get(a, b).clone());
        }
    }
    Ok(m)
}

/// Applies the brick in place to the coordinates `idx` of a row vector.
pub(crate) fn apply_brick_to_row<R: Ring>(ring: &R, brick: &RingMatrix<R>, idx: &[usize], row: &mut [R::Elem], buf: &mut Vec<R::Elem>) {
    buf.clear();
    buf.extend(idx.iter().map(|&k| row[k].clone()));
    if buf.iter().all(|x| ring.is_zero(x)) {
        return;
    }
    for (jj, &j) in idx.iter().enumerate() {
        let mut s = ring.zero();
        for (kk, x) in buf.iter().enumerate() {
            if !ring.is_zero(x) {
                s = ring.add(&s, &ring.mul(x, brick.get(kk, jj)));
            }
        }
        row[j] = s;
    }
}

/// Product of all embedded bricks, earlier vertices leftmost. `order`
/// defaults to the layered order and is validated when given.
pub fn assemble_block<R: Ring>(
    brick: &BrickSpec<R>,
    profile: &ThickProfile,
    order: Option<&[Vertex]>,
) -> Result<RingMatrix<R>> {
    brick.check_profile(profile)?;
    let default;
    let order = match order {
        Some(o) => {
            profile.validate_order(o)?;
            o
        }
        None => {
            default = profile.spec().default_order();
            &default
        }
    };
    let ring = brick.matrix.ring().clone();
    let n = profile.total_dim();
    let mut r = RingMatrix::identity(ring.clone(), n);
    let mut buf = Vec::new();
    for v in order {
        // right-multiplying by the embedding rewrites only the brick's columns
        let idx = profile.brick_indices(v);
        let entries = r.entries_mut();
        for row in entries.chunks_mut(n) {
            apply_brick_to_row(&ring, &brick.matrix, &idx, row, &mut buf);
        }
    }
    Ok(r)
}

pub const DEFAULT_DIM_CAP: usize = 4096;

/// One evolution step: the assembled block and the geometry it came from.
#[derive(Debug, Clone)]
pub struct EvolutionStage<R: Ring> {
    pub block: BrickSpec<R>,
    pub profile: ThickProfile,
}

/// Iterates block making: step k+1 assembles a block whose brick is the
/// block of step k, its thick spaces becoming thin spaces.
pub fn evolve<R: Ring>(
    brick: &BrickSpec<R>,
    steps: usize,
    edges: &[usize],
    ordering: &LineOrdering,
    dim_cap: usize,
) -> Result<Vec<EvolutionStage<R>>> {
    if steps == 0 {
        return Err(Error::input("evolution needs at least one step"));
    }
    let mut current = brick.clone();
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let spec = LatticeSpec::new(edges.to_vec(), current.thin_dims.clone())?;
        let dim: usize = spec.thick_dims().iter().sum();
        if dim > dim_cap {
            return Err(Error::Resource { cap: "dimension", needed: dim as u128, limit: dim_cap as u128 });
        }
        let profile = enumerate_lines(&spec, ordering.clone())?;
        let block = assemble_block(&current, &profile, None)?;
        let next = BrickSpec::new(block, profile.thick_dims())?;
        out.push(EvolutionStage { block: next.clone(), profile });
        current = next;
    }
    Ok(out)
}

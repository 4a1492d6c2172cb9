//! Finite G-CW complexes for cyclic groups.
//!
//! Each equivariant cell `G/H × D^k` is stored once, by a representative.
//! Its boundary is a list of `(target, x)` with `x ∈ ℤ[G/H_target]`; entry
//! `i` of `x` is the coefficient of `g^i · target`. Translates `g^j · c` of a
//! representative have boundary `g^j · ∂c`.

mod build;
mod format;

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{Coefficients, FpMatrix, GroupPresentation, IntMatrix, LinalgError};
use crate::reps::{CyclicGroup, RepError};

pub use build::{
    disjoint_basepoint, ecp_skeleton, join, lens_sphere, point_sphere, rep_sphere,
    rep_sphere_model, smash, sphere_model, sphere_of_rep, suspension, truncate,
};
pub use format::{load_gcw, parse_gcw, save_gcw, write_gcw};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GcwError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("cell {cell}: {reason}")]
    InvariantViolation { cell: String, reason: String },
    #[error("cell {cell} (stabilizer order {cell_stab}) has boundary on {target} (stabilizer order {target_stab})")]
    StabilizerMismatch { cell: String, cell_stab: u64, target: String, target_stab: u64 },
    #[error("complex has no basepoint")]
    MissingBasepoint,
    #[error("the unit sphere of the zero representation is not a complex")]
    EmptyRepresentation,
    #[error("expected an actual (non-virtual) representation, got {0}")]
    NotActual(String),
    #[error("cyclic groups differ: {0} vs {1}")]
    GroupMismatch(CyclicGroup, CyclicGroup),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("io: {0}")]
    Io(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub id: String,
    pub dim: usize,
    /// Order of the stabilizer subgroup; 1 is a free orbit.
    pub stabilizer: u64,
}

/// Element of `ℤ[G/H]`, indexed by `g^i H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupRingElement(pub Vec<i64>);

impl GroupRingElement {
    pub fn unit(len: usize, i: usize, c: i64) -> Self {
        let mut v = vec![0; len];
        v[i % len] = c;
        GroupRingElement(v)
    }

    /// Augmentation: sum of the coefficients.
    pub fn augmentation(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryTerm {
    pub target: usize,
    pub coefficients: GroupRingElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcwComplex {
    group: CyclicGroup,
    cells: Vec<Cell>,
    boundaries: Vec<Vec<BoundaryTerm>>,
    basepoint: Option<usize>,
    index: HashMap<String, usize>,
}

/// Incremental construction; `build` validates every invariant.
#[derive(Clone, Debug)]
pub struct GcwBuilder {
    group: CyclicGroup,
    cells: Vec<Cell>,
    boundaries: Vec<Vec<BoundaryTerm>>,
    basepoint: Option<usize>,
    index: HashMap<String, usize>,
}

impl GcwBuilder {
    pub fn new(group: CyclicGroup) -> Self {
        GcwBuilder { group, cells: vec![], boundaries: vec![], basepoint: None, index: HashMap::new() }
    }

    pub fn add_cell(&mut self, id: impl Into<String>, dim: usize, stabilizer: u64) -> Result<usize, GcwError> {
        let id = id.into();
        self.group.check_subgroup(stabilizer)?;
        if self.index.contains_key(&id) {
            return Err(GcwError::InvariantViolation { cell: id, reason: "duplicate cell id".into() });
        }
        let k = self.cells.len();
        self.index.insert(id.clone(), k);
        self.cells.push(Cell { id, dim, stabilizer });
        self.boundaries.push(Vec::new());
        Ok(k)
    }

    pub fn lookup(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn cell(&self, k: usize) -> &Cell {
        &self.cells[k]
    }

    /// Add `x` (indexed over `G/H_target`) to the boundary of `cell`.
    pub fn add_boundary(&mut self, cell: usize, target: usize, x: &[i64]) {
        let terms = &mut self.boundaries[cell];
        match terms.iter_mut().find(|t| t.target == target) {
            Some(t) => {
                if t.coefficients.0.len() == x.len() {
                    for (a, b) in t.coefficients.0.iter_mut().zip(x) {
                        *a += b;
                    }
                } else {
                    // length error surfaces in validation
                    terms.push(BoundaryTerm { target, coefficients: GroupRingElement(x.to_vec()) });
                }
            }
            None => terms.push(BoundaryTerm { target, coefficients: GroupRingElement(x.to_vec()) }),
        }
    }

    /// Add `c · g^i · target` to the boundary of `cell`.
    pub fn add_boundary_unit(&mut self, cell: usize, target: usize, i: u64, c: i64) {
        let len = (self.group.order() / self.cells[target].stabilizer) as usize;
        let x = GroupRingElement::unit(len, i as usize, c);
        self.add_boundary(cell, target, &x.0);
    }

    pub fn set_basepoint(&mut self, cell: usize) {
        self.basepoint = Some(cell);
    }

    pub fn build(mut self) -> Result<GcwComplex, GcwError> {
        for terms in &mut self.boundaries {
            terms.retain(|t| !t.coefficients.is_zero());
            terms.sort_by_key(|t| t.target);
        }
        let x = GcwComplex {
            group: self.group,
            cells: self.cells,
            boundaries: self.boundaries,
            basepoint: self.basepoint,
            index: self.index,
        };
        x.validate()?;
        Ok(x)
    }
}

/// A non-equivariant finite CW complex given by its cellular boundary matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwComplex {
    counts: Vec<usize>,
    /// `boundaries[k]` is `∂_k: C_k → C_{k-1}` for `k ≥ 1`; index 0 is `0 × n_0`.
    boundaries: Vec<IntMatrix>,
    basepoint: Option<usize>,
}

impl CwComplex {
    pub fn cell_counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn dim(&self) -> Option<usize> {
        self.counts.iter().rposition(|&c| c > 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts.iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    pub fn boundary(&self, k: usize) -> IntMatrix {
        if k == 0 {
            return IntMatrix::zeros(0, self.count(0));
        }
        if k < self.boundaries.len() {
            self.boundaries[k].clone()
        } else {
            IntMatrix::zeros(self.count(k - 1), self.count(k))
        }
    }

    fn count(&self, k: usize) -> usize {
        self.counts.get(k).copied().unwrap_or(0)
    }

    /// Drop the basepoint 0-cell (chains relative to the basepoint).
    pub fn reduced(&self) -> CwComplex {
        let Some(b) = self.basepoint else { return self.clone() };
        let mut counts = self.counts.clone();
        counts[0] -= 1;
        let mut boundaries = self.boundaries.clone();
        if boundaries.len() > 1 {
            let d1 = &boundaries[1];
            let keep: Vec<usize> = (0..d1.rows()).filter(|&r| r != b).collect();
            boundaries[1] = IntMatrix::from_fn(keep.len(), d1.cols(), |i, j| d1.get(keep[i], j).clone());
        }
        boundaries[0] = IntMatrix::zeros(0, counts[0]);
        CwComplex { counts, boundaries, basepoint: None }
    }

    pub fn homology(&self, k: usize, coefficients: Coefficients) -> Result<GroupPresentation, LinalgError> {
        let d_in = self.boundary(k + 1);
        let d_out = self.boundary(k);
        crate::linalg::homology_at(&d_in, &d_out, coefficients)
    }

    pub fn cohomology(&self, k: usize, coefficients: Coefficients) -> Result<GroupPresentation, LinalgError> {
        let d_in = if k == 0 { IntMatrix::zeros(self.count(0), 0) } else { self.boundary(k).transpose() };
        let d_out = self.boundary(k + 1).transpose();
        crate::linalg::homology_at(&d_in, &d_out, coefficients)
    }

    /// Betti numbers over 𝔽_p via ranks, cheap for large complexes.
    pub fn betti_fp(&self, p: u64) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.counts.len())
            .map(|k| if k == 0 { 0 } else { FpMatrix::from_int(&self.boundary(k), p).rank() })
            .collect();
        (0..self.counts.len()).map(|k| self.counts[k] - ranks[k] - ranks[k + 1]).collect()
    }
}

impl GcwComplex {
    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, k: usize) -> &Cell {
        &self.cells[k]
    }

    pub fn boundary(&self, k: usize) -> &[BoundaryTerm] {
        &self.boundaries[k]
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn lookup(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    pub fn orbit_size(&self, k: usize) -> u64 {
        self.group.order() / self.cells[k].stabilizer
    }

    /// Indices of cells of dimension `d`, in storage order.
    pub fn cells_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&k| self.cells[k].dim == d).collect()
    }

    /// Orbit counts per dimension.
    pub fn orbit_counts(&self) -> Vec<usize> {
        let top = self.dim().map_or(0, |d| d + 1);
        (0..top).map(|d| self.cells_of_dim(d).len()).collect()
    }

    /// Every cell other than the basepoint has trivial stabilizer.
    pub fn is_free_away_from_basepoint(&self) -> bool {
        self.cells.iter().enumerate().all(|(k, c)| Some(k) == self.basepoint || c.stabilizer == 1)
    }

    pub fn first_fixed_cell(&self) -> Option<&Cell> {
        self.cells
            .iter()
            .enumerate()
            .find(|&(k, c)| Some(k) != self.basepoint && c.stabilizer != 1)
            .map(|(_, c)| c)
    }

    /// Based `S^0`: exactly two fixed 0-cells, one of them the basepoint.
    pub fn is_point_sphere(&self) -> bool {
        self.basepoint.is_some()
            && self.cells.len() == 2
            && self.cells.iter().all(|c| c.dim == 0 && c.stabilizer == self.group.order())
    }

    /// Underlying cell indexing: `(offsets per cell, total)`.
    fn underlying_offsets(&self) -> (Vec<usize>, Vec<usize>) {
        let top = self.dim().map_or(0, |d| d + 1);
        let mut per_dim = vec![0usize; top];
        let mut offsets = vec![0usize; self.cells.len()];
        for (k, c) in self.cells.iter().enumerate() {
            offsets[k] = per_dim[c.dim];
            per_dim[c.dim] += self.orbit_size(k) as usize;
        }
        (offsets, per_dim)
    }

    /// The underlying non-equivariant CW complex; the translate `g^j c` of
    /// cell `c` sits at `offset(c) + j` within its dimension.
    pub fn underlying(&self) -> CwComplex {
        let (offsets, counts) = self.underlying_offsets();
        let mut boundaries = vec![IntMatrix::zeros(0, counts.first().copied().unwrap_or(0))];
        for d in 1..counts.len() {
            let mut m = IntMatrix::zeros(counts[d - 1], counts[d]);
            for c in self.cells_of_dim(d) {
                let q = self.orbit_size(c) as usize;
                for j in 0..q {
                    for t in &self.boundaries[c] {
                        let qt = self.orbit_size(t.target) as usize;
                        for (i, &a) in t.coefficients.0.iter().enumerate() {
                            if a != 0 {
                                m.add_at(offsets[t.target] + (i + j) % qt, offsets[c] + j, &BigInt::from(a));
                            }
                        }
                    }
                }
            }
            boundaries.push(m);
        }
        let basepoint = self.basepoint.map(|b| offsets[b]);
        CwComplex { counts, boundaries, basepoint }
    }

    /// The orbit complex `X/G`: one cell per orbit, coefficients augmented.
    pub fn quotient(&self) -> CwComplex {
        let top = self.dim().map_or(0, |d| d + 1);
        let mut pos = vec![0usize; self.cells.len()];
        let mut counts = vec![0usize; top];
        for (k, c) in self.cells.iter().enumerate() {
            pos[k] = counts[c.dim];
            counts[c.dim] += 1;
        }
        let mut boundaries = vec![IntMatrix::zeros(0, counts.first().copied().unwrap_or(0))];
        for d in 1..top {
            let mut m = IntMatrix::zeros(counts[d - 1], counts[d]);
            for c in self.cells_of_dim(d) {
                for t in &self.boundaries[c] {
                    m.add_at(pos[t.target], pos[c], &BigInt::from(t.coefficients.augmentation()));
                }
            }
            boundaries.push(m);
        }
        CwComplex { counts, boundaries, basepoint: self.basepoint.map(|b| pos[b]) }
    }

    /// Underlying boundary of the translate `g^j · c`, as `(cell, translate, coefficient)`.
    pub fn translate_boundary(&self, c: usize, j: u64) -> Vec<(usize, u64, i64)> {
        let mut out = Vec::new();
        for t in &self.boundaries[c] {
            let qt = self.orbit_size(t.target);
            for (i, &a) in t.coefficients.0.iter().enumerate() {
                if a != 0 {
                    out.push((t.target, (i as u64 + j) % qt, a));
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<(), GcwError> {
        let n = self.group.order();
        for (k, c) in self.cells.iter().enumerate() {
            let violation = |reason: String| GcwError::InvariantViolation { cell: c.id.clone(), reason };
            if n % c.stabilizer != 0 {
                return Err(violation(format!("stabilizer order {} does not divide {n}", c.stabilizer)));
            }
            if c.dim == 0 && !self.boundaries[k].is_empty() {
                return Err(violation("0-cell with nonzero boundary".into()));
            }
            for t in &self.boundaries[k] {
                let tc = &self.cells[t.target];
                if tc.dim + 1 != c.dim {
                    return Err(violation(format!(
                        "boundary on {} changes dimension {} -> {}",
                        tc.id, c.dim, tc.dim
                    )));
                }
                if tc.stabilizer % c.stabilizer != 0 {
                    return Err(GcwError::StabilizerMismatch {
                        cell: c.id.clone(),
                        cell_stab: c.stabilizer,
                        target: tc.id.clone(),
                        target_stab: tc.stabilizer,
                    });
                }
                let want = (n / tc.stabilizer) as usize;
                if t.coefficients.0.len() != want {
                    return Err(violation(format!(
                        "coefficient vector on {} has length {}, expected {want}",
                        tc.id,
                        t.coefficients.0.len()
                    )));
                }
                // the stabilizer of c must fix its boundary
                let q = (n / c.stabilizer) as usize;
                let x = &t.coefficients.0;
                if (0..want).any(|i| x[i] != x[(i + q) % want]) {
                    return Err(violation(format!("boundary on {} is not invariant under the stabilizer", tc.id)));
                }
            }
        }
        if let Some(b) = self.basepoint {
            let c = &self.cells[b];
            if c.dim != 0 || c.stabilizer != n {
                return Err(GcwError::InvariantViolation {
                    cell: c.id.clone(),
                    reason: "basepoint must be a fixed 0-cell".into(),
                });
            }
        }
        // ∂∂ = 0, checked on each representative
        for (k, c) in self.cells.iter().enumerate() {
            if c.dim < 2 {
                continue;
            }
            let mut acc: HashMap<(usize, u64), i64> = HashMap::new();
            for (t, j, a) in self.translate_boundary(k, 0) {
                for (s, i, b) in self.translate_boundary(t, j) {
                    *acc.entry((s, i)).or_insert(0) += a * b;
                }
            }
            if let Some(((s, i), _)) = acc.iter().find(|(_, &v)| v != 0) {
                return Err(GcwError::InvariantViolation {
                    cell: c.id.clone(),
                    reason: format!("boundary of boundary is nonzero (on g^{i}·{})", self.cells[*s].id),
                });
            }
        }
        Ok(())
    }

    /// Re-check every invariant; constructors and the loader already do this.
    pub fn check(&self) -> Result<(), GcwError> {
        self.validate()
    }

    pub(crate) fn builder_from(&self) -> GcwBuilder {
        GcwBuilder {
            group: self.group,
            cells: self.cells.clone(),
            boundaries: self.boundaries.clone(),
            basepoint: self.basepoint,
            index: self.index.clone(),
        }
    }

    /// Cell-for-cell equality up to storage order of boundary terms.
    pub fn same_cells(&self, other: &GcwComplex) -> bool {
        self == other
    }
}

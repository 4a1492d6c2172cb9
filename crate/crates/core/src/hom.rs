//! The equivariant hom complex `Hom_G(C̃_*(X), C̃_*(Y))` for `X` free away
//! from its basepoint. Its cohomology in degree `k` is `H̃^{k+P}(X)` when
//! `Y` is a model of `S^P`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::gcw::GcwComplex;
use crate::linalg::{reduce_big, snf, Coefficients, FpMatrix, Homology, IntMatrix};

#[derive(Clone, Debug)]
pub struct HomComplex {
    source: GcwComplex,
    target: GcwComplex,
    coefficients: Coefficients,
    /// Non-base cells of the source, by dimension (all free).
    src: Vec<Vec<usize>>,
    /// Non-base underlying cells `(cell, translate)` of the target, by dimension.
    tgt: Vec<Vec<(usize, u64)>>,
    tgt_pos: HashMap<(usize, u64), usize>,
}

impl HomComplex {
    pub fn new(source: &GcwComplex, target: &GcwComplex, coefficients: Coefficients) -> Result<Self> {
        if let Some(c) = source.first_fixed_cell() {
            return Err(Error::NotFree(c.id.clone()));
        }
        let sdim = source.dim().unwrap_or(0);
        let src = (0..=sdim)
            .map(|d| source.cells_of_dim(d).into_iter().filter(|&c| Some(c) != source.basepoint()).collect())
            .collect();
        let tdim = target.dim().unwrap_or(0);
        let mut tgt = vec![Vec::new(); tdim + 1];
        let mut tgt_pos = HashMap::new();
        for (d, cells) in tgt.iter_mut().enumerate() {
            for c in target.cells_of_dim(d) {
                if Some(c) == target.basepoint() {
                    continue;
                }
                for j in 0..target.orbit_size(c) {
                    tgt_pos.insert((c, j), cells.len());
                    cells.push((c, j));
                }
            }
        }
        Ok(HomComplex {
            source: source.clone(),
            target: target.clone(),
            coefficients,
            src,
            tgt,
            tgt_pos,
        })
    }

    pub fn target(&self) -> &GcwComplex {
        &self.target
    }

    fn src_count(&self, i: i64) -> usize {
        if i < 0 { 0 } else { self.src.get(i as usize).map_or(0, Vec::len) }
    }

    fn tgt_count(&self, j: i64) -> usize {
        if j < 0 { 0 } else { self.tgt.get(j as usize).map_or(0, Vec::len) }
    }

    /// Offsets of the `(i, j = i − k)` summands inside `T^k`.
    fn layout(&self, k: i64) -> (Vec<(i64, usize)>, usize) {
        let mut out = Vec::new();
        let mut total = 0;
        for i in 0..self.src.len() as i64 {
            let j = i - k;
            let size = self.src_count(i) * self.tgt_count(j);
            if size > 0 {
                out.push((i, total));
                total += size;
            }
        }
        (out, total)
    }

    pub fn size(&self, k: i64) -> usize {
        self.layout(k).1
    }

    fn index(&self, k: i64, i: i64, z: usize, y: usize) -> Option<usize> {
        let (layout, _) = self.layout(k);
        let &(_, off) = layout.iter().find(|(ii, _)| *ii == i)?;
        Some(off + z * self.tgt_count(i - k) + y)
    }

    /// Underlying action of `g^a` on target cells.
    fn translate(&self, y: (usize, u64), a: u64) -> (usize, u64) {
        (y.0, (y.1 + a) % self.target.orbit_size(y.0))
    }

    /// `D: T^k → T^{k+1}`, `D φ = ∂_Y ∘ φ − (−1)^k φ ∘ ∂_X`.
    pub fn differential(&self, k: i64) -> IntMatrix {
        let (rows, cols) = (self.size(k + 1), self.size(k));
        let mut d = IntMatrix::zeros(rows, cols);
        let sign: i64 = if k.rem_euclid(2) == 0 { -1 } else { 1 };
        let (layout, _) = self.layout(k);
        for &(i, off) in &layout {
            let j = i - k;
            let ycount = self.tgt_count(j);
            for (zpos, &z) in self.src[i as usize].iter().enumerate() {
                for (ypos, &y) in self.tgt[j as usize].iter().enumerate() {
                    let col = off + zpos * ycount + ypos;
                    // ∂_Y ∘ φ
                    if j >= 1 {
                        for (w, b, c) in self.target.translate_boundary(y.0, y.1) {
                            if Some(w) == self.target.basepoint() {
                                continue;
                            }
                            let yp = self.tgt_pos[&(w, b)];
                            let row = self.index(k + 1, i, zpos, yp).expect("layout");
                            d.add_at(row, col, &BigInt::from(c));
                        }
                    }
                    // φ ∘ ∂_X, evaluated on (i+1)-cells z' with z in ∂z'
                    if let Some(up) = self.src.get(i as usize + 1) {
                        for (zp_pos, &zp) in up.iter().enumerate() {
                            for t in self.source.boundary(zp) {
                                if t.target != z {
                                    continue;
                                }
                                for (a, &c) in t.coefficients.0.iter().enumerate() {
                                    if c == 0 {
                                        continue;
                                    }
                                    let ya = self.translate(y, a as u64);
                                    let yp = self.tgt_pos[&ya];
                                    let row = self.index(k + 1, i + 1, zp_pos, yp).expect("layout");
                                    d.add_at(row, col, &BigInt::from(sign * c));
                                }
                            }
                        }
                    }
                }
            }
        }
        d
    }

    pub fn homology(&self, k: i64) -> Result<Homology> {
        let d_in = self.differential(k - 1);
        let d_out = self.differential(k);
        Ok(Homology::compute(&d_in, &d_out, self.coefficients)?)
    }

    /// Generator of `H̃_top` of the underlying target sphere, as a vector
    /// over the top target cells; must be invariant under `g`.
    pub fn fundamental_cycle(&self) -> Result<Vec<BigInt>> {
        let top = self.tgt.len() as i64 - 1;
        let cells = &self.tgt[top as usize];
        let mut d = IntMatrix::zeros(self.tgt_count(top - 1), cells.len());
        if top >= 1 {
            for (col, &y) in cells.iter().enumerate() {
                for (w, b, c) in self.target.translate_boundary(y.0, y.1) {
                    if Some(w) == self.target.basepoint() {
                        continue;
                    }
                    d.add_at(self.tgt_pos[&(w, b)], col, &BigInt::from(c));
                }
            }
        }
        let s = snf(&d);
        let r = s.rank();
        if cells.len() != r + 1 {
            return Err(Error::unsupported("target sphere", "top homology does not have rank one"));
        }
        let mut v = s.right.col_slice(r, r + 1).mul_vec(&[BigInt::from(1)]);
        if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            v.iter_mut().for_each(|x| *x = -x.clone());
        }
        let moved: Vec<BigInt> = {
            let mut m = vec![BigInt::zero(); v.len()];
            for (pos, &y) in cells.iter().enumerate() {
                m[self.tgt_pos[&self.translate(y, 1)]] += &v[pos];
            }
            m
        };
        let same = match self.coefficients {
            Coefficients::Integers => moved == v,
            Coefficients::Field(p) => moved.iter().zip(&v).all(|(a, b)| reduce_big(&(a - b), p) == 0),
        };
        if !same {
            return Err(Error::unsupported(
                "fundamental class",
                "the group does not preserve the orientation of the target sphere",
            ));
        }
        Ok(v)
    }

    /// `Θ`: a cochain `f` on the source orbits of dimension `k + top`
    /// becomes `z ↦ f(z)·[S]` in `T^k`.
    pub fn theta(&self, k: i64, f: &[BigInt]) -> Result<Vec<BigInt>> {
        let top = self.tgt.len() as i64 - 1;
        let i = k + top;
        if f.len() != self.src_count(i) {
            return Err(Error::ClassMismatch(format!("expected {} orbit values, got {}", self.src_count(i), f.len())));
        }
        let fund = self.fundamental_cycle()?;
        let mut out = vec![BigInt::zero(); self.size(k)];
        for (zpos, fz) in f.iter().enumerate() {
            if fz.is_zero() {
                continue;
            }
            for (ypos, a) in fund.iter().enumerate() {
                out[self.index(k, i, zpos, ypos).expect("layout")] += fz * a;
            }
        }
        Ok(out)
    }

    /// Compose with the inclusion of this target into the target of `other`,
    /// matching cells by id.
    pub fn push(&self, other: &HomComplex, k: i64, phi: &[BigInt]) -> Result<Vec<BigInt>> {
        let mut cell_map = HashMap::new();
        for (c, cell) in self.target.cells().iter().enumerate() {
            let Some(o) = other.target.lookup(&cell.id) else {
                return Err(Error::ClassMismatch(format!("target cell {} has no image", cell.id)));
            };
            cell_map.insert(c, o);
        }
        let mut out = vec![BigInt::zero(); other.size(k)];
        let (layout, _) = self.layout(k);
        for &(i, off) in &layout {
            let j = i - k;
            let ycount = self.tgt_count(j);
            for zpos in 0..self.src_count(i) {
                for (ypos, &(c, t)) in self.tgt[j as usize].iter().enumerate() {
                    let v = &phi[off + zpos * ycount + ypos];
                    if v.is_zero() {
                        continue;
                    }
                    let yp = other.tgt_pos[&(cell_map[&c], t)];
                    out[other.index(k, i, zpos, yp).expect("layout")] += v;
                }
            }
        }
        Ok(out)
    }

    /// Express the class of `psi ∈ T^k` in terms of `Θ` of the given cocycles.
    pub fn solve_against_theta(&self, k: i64, psi: &[BigInt], cocycles: &[Vec<BigInt>]) -> Result<Vec<u64>> {
        let Coefficients::Field(p) = self.coefficients else {
            return Err(Error::unsupported(k, "class comparison needs field coefficients"));
        };
        let h = self.homology(k)?;
        let target = h.coordinates(psi).ok_or_else(|| Error::ClassMismatch("not a cocycle".into()))?;
        let mut columns = Vec::new();
        for f in cocycles {
            let c = h
                .coordinates(&self.theta(k, f)?)
                .ok_or_else(|| Error::ClassMismatch("Θ image is not a cocycle".into()))?;
            columns.push(c.iter().map(|x| reduce_big(x, p)).collect::<Vec<u64>>());
        }
        let rows = h.rank();
        if columns.len() != rows {
            return Err(Error::ClassMismatch(format!("{} generators for a group of rank {rows}", columns.len())));
        }
        let m = FpMatrix::from_columns(p, rows, &columns);
        if m.rank() != rows {
            return Err(Error::ClassMismatch("Θ is not an isomorphism on this grading".into()));
        }
        let b: Vec<u64> = target.iter().map(|x| reduce_big(x, p)).collect();
        m.solve(&b).ok_or_else(|| Error::ClassMismatch("class outside the span of Θ".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcw::{disjoint_basepoint, ecp_skeleton, rep_sphere_model};
    use crate::reps::{parse_rep, CyclicGroup};

    #[test]
    fn square_zero_and_periodicity() {
        let g = CyclicGroup::new(3).unwrap();
        let x = disjoint_basepoint(&ecp_skeleton(3, 3).unwrap());
        for n in 0..3 {
            let y = rep_sphere_model(&parse_rep(g, &format!("{n}*xi")).unwrap()).unwrap();
            let h = HomComplex::new(&x, &y, Coefficients::Field(3)).unwrap();
            for k in -6..6 {
                let prod = h.differential(k).mul(&h.differential(k - 1));
                assert!(FpMatrix::from_int(&prod, 3).is_zero(), "D² at {k}");
                // H̃^{k + nξ}(L⁵(3)_+) has dimension 1 exactly when 0 ≤ k + 2n ≤ 5
                let want = usize::from((0..=5).contains(&(k + 2 * n)));
                assert_eq!(h.homology(k).unwrap().rank(), want, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn fundamental_cycle_is_invariant() {
        let g = CyclicGroup::new(5).unwrap();
        let y = rep_sphere_model(&parse_rep(g, "xi+xi^2").unwrap()).unwrap();
        let x = disjoint_basepoint(&ecp_skeleton(5, 1).unwrap());
        let h = HomComplex::new(&x, &y, Coefficients::Integers).unwrap();
        assert!(h.fundamental_cycle().is_ok());
    }
}

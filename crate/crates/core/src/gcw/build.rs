//! Constructors: lens-type spheres, joins, suspensions, smash products.

use std::collections::{HashMap, HashSet};

use num_integer::Integer;

use super::{GcwBuilder, GcwComplex, GcwError};
use crate::reps::{CyclicGroup, Irrep, VirtualRep};

/// Based `S^0`: fixed points `N` (basepoint) and `S`.
pub fn point_sphere(group: CyclicGroup) -> GcwComplex {
    let n = group.order();
    let mut b = GcwBuilder::new(group);
    let north = b.add_cell("N", 0, n).unwrap();
    b.add_cell("S", 0, n).unwrap();
    b.set_basepoint(north);
    b.build().expect("S^0 is valid")
}

fn unbased_point_pair(group: CyclicGroup) -> GcwComplex {
    let n = group.order();
    let mut b = GcwBuilder::new(group);
    b.add_cell("N", 0, n).unwrap();
    b.add_cell("S", 0, n).unwrap();
    b.build().expect("S(1) is valid")
}

/// `X_+`: adjoin a disjoint fixed basepoint `+`.
pub fn disjoint_basepoint(x: &GcwComplex) -> GcwComplex {
    let mut b = x.builder_from();
    let mut id = "+".to_string();
    while b.lookup(&id).is_some() {
        id.push('+');
    }
    let plus = b.add_cell(id, 0, x.group().order()).unwrap();
    b.set_basepoint(plus);
    b.build().expect("adding a point keeps the complex valid")
}

/// `S(k·χ)` for a nontrivial irreducible `χ`, one orbit per dimension.
///
/// For `χ = ξ^s` of real dimension 2 with kernel `H` of order `h = gcd(n, s)`
/// and `q = n/h`: `∂e_{2j+1} = (g^t − 1)e_{2j}` with `t·(s/h) ≡ 1 (mod q)`,
/// and `∂e_{2j} = N·e_{2j−1}` where `N` is the norm of `G/H`.
/// For the sign representation: `∂e_j = (1 + (−1)^j g)e_{j−1}`.
pub fn lens_sphere(group: CyclicGroup, irrep: Irrep, copies: u64) -> Result<GcwComplex, GcwError> {
    lens_sphere_tagged(group, irrep, copies, "")
}

fn lens_sphere_tagged(group: CyclicGroup, irrep: Irrep, copies: u64, tag: &str) -> Result<GcwComplex, GcwError> {
    group.check_irrep(irrep)?;
    let Irrep::Xi(s) = irrep else {
        return Err(GcwError::InvariantViolation {
            cell: "e0".into(),
            reason: "lens model needs a nontrivial irreducible".into(),
        });
    };
    if copies == 0 {
        return Err(GcwError::EmptyRepresentation);
    }
    let n = group.order();
    let h = n.gcd(&s);
    let q = n / h;
    let mut b = GcwBuilder::new(group);
    if q == 2 {
        let mut prev = None;
        for j in 0..copies as usize {
            let e = b.add_cell(format!("{tag}e{j}"), j, h)?;
            if let Some(p) = prev {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                b.add_boundary(e, p, &[1, sign]);
            }
            prev = Some(e);
        }
    } else {
        let t = inverse_mod(s / h, q);
        let mut prev = None;
        for j in 0..(2 * copies) as usize {
            let e = b.add_cell(format!("{tag}e{j}"), j, h)?;
            if let Some(p) = prev {
                if j % 2 == 1 {
                    b.add_boundary_unit(e, p, t, 1);
                    b.add_boundary_unit(e, p, 0, -1);
                } else {
                    b.add_boundary(e, p, &vec![1; q as usize]);
                }
            }
            prev = Some(e);
        }
    }
    b.build()
}

fn inverse_mod(a: u64, q: u64) -> u64 {
    (1..q).find(|&t| (t * a) % q == 1).unwrap_or(1)
}

/// The orbit representative `(r', q)` for the pair `(g^a σ, g^b τ)`:
/// `g^a σ × g^b τ = g^q (σ × g^{r'} τ)`.
fn pair_rep(a: u64, qa: u64, b: u64, qb: u64) -> (u64, u64) {
    let l = qa.gcd(&qb);
    let r = (b as i64 - a as i64).rem_euclid(l as i64) as u64;
    let lcm = qa.lcm(&qb);
    let target = (b + qb - r % qb) % qb;
    let q = (0..lcm / qa)
        .map(|k| a % qa + k * qa)
        .find(|q| q % qb == target)
        .expect("compatible congruences");
    (r, q)
}

fn fresh_prefix(taken: &HashSet<String>, ids: &[String]) -> String {
    if ids.iter().all(|id| !taken.contains(id)) {
        return String::new();
    }
    (1..)
        .map(|k| format!("r{k}."))
        .find(|p| ids.iter().all(|id| !taken.contains(&format!("{p}{id}"))))
        .unwrap()
}

/// Copy `y` into `b`, renaming ids to avoid clashes; returns the index map.
fn append_cells(b: &mut GcwBuilder, y: &GcwComplex, taken: &HashSet<String>) -> Result<Vec<usize>, GcwError> {
    let ids: Vec<String> = y.cells().iter().map(|c| c.id.clone()).collect();
    let prefix = fresh_prefix(taken, &ids);
    let mut map = Vec::with_capacity(y.len());
    for c in y.cells() {
        map.push(b.add_cell(format!("{prefix}{}", c.id), c.dim, c.stabilizer)?);
    }
    for k in 0..y.len() {
        for t in y.boundary(k) {
            b.add_boundary(map[k], map[t.target], &t.coefficients.0);
        }
    }
    Ok(map)
}

struct PairCells {
    /// `(σ, τ) → cell index per representative r'`
    cells: HashMap<(usize, usize), Vec<usize>>,
}

impl PairCells {
    fn build(
        b: &mut GcwBuilder,
        x: &GcwComplex,
        xmap: &[usize],
        y: &GcwComplex,
        ymap: &[usize],
        xs: &[usize],
        ys: &[usize],
        sep: &str,
        extra_dim: usize,
    ) -> Result<Self, GcwError> {
        let mut cells = HashMap::new();
        for &s in xs {
            for &t in ys {
                let (qs, qt) = (x.orbit_size(s), y.orbit_size(t));
                let l = qs.gcd(&qt);
                let stab = x.cell(s).stabilizer.gcd(&y.cell(t).stabilizer);
                let dim = x.cell(s).dim + y.cell(t).dim + extra_dim;
                let mut v = Vec::new();
                for r in 0..l {
                    let id = format!("({}{sep}g{r}.{})", b.cell(xmap[s]).id, b.cell(ymap[t]).id);
                    v.push(b.add_cell(id, dim, stab)?);
                }
                cells.insert((s, t), v);
            }
        }
        Ok(PairCells { cells })
    }

    /// Cell index and translate for `g^a σ × g^b τ`.
    fn locate(&self, x: &GcwComplex, s: usize, a: u64, y: &GcwComplex, t: usize, b: u64) -> (usize, u64) {
        let (r, q) = pair_rep(a, x.orbit_size(s), b, y.orbit_size(t));
        (self.cells[&(s, t)][r as usize], q)
    }
}

/// The join `X * Y`. Cells of `X` keep their ids; ids of `Y` are prefixed
/// when they clash. Join cells `σ * g^r τ` have boundary
/// `(∂σ) * g^r τ + (−1)^{|σ|+1} σ * g^r ∂τ`, where the boundary of a
/// 0-cell is the empty cell and `σ * ∅ = σ`, `∅ * τ = τ`.
pub fn join(x: &GcwComplex, y: &GcwComplex) -> Result<GcwComplex, GcwError> {
    if x.group() != y.group() {
        return Err(GcwError::GroupMismatch(x.group(), y.group()));
    }
    let mut b = GcwBuilder::new(x.group());
    let xmap = append_cells(&mut b, x, &HashSet::new())?;
    let taken: HashSet<String> = x.cells().iter().map(|c| c.id.clone()).collect();
    let ymap = append_cells(&mut b, y, &taken)?;
    let xs: Vec<usize> = (0..x.len()).collect();
    let ys: Vec<usize> = (0..y.len()).collect();
    let pairs = PairCells::build(&mut b, x, &xmap, y, &ymap, &xs, &ys, "*", 1)?;
    for &s in &xs {
        for &t in &ys {
            let l = x.orbit_size(s).gcd(&y.orbit_size(t));
            for r in 0..l {
                let cell = pairs.cells[&(s, t)][r as usize];
                if x.cell(s).dim == 0 {
                    b.add_boundary_unit(cell, ymap[t], r, 1);
                } else {
                    for (u, i, c) in x.translate_boundary(s, 0) {
                        let (target, q) = pairs.locate(x, u, i, y, t, r);
                        b.add_boundary_unit(cell, target, q, c);
                    }
                }
                let sign = if x.cell(s).dim % 2 == 0 { -1 } else { 1 };
                if y.cell(t).dim == 0 {
                    b.add_boundary_unit(cell, xmap[s], 0, sign);
                } else {
                    for (w, j, c) in y.translate_boundary(t, r) {
                        let (target, q) = pairs.locate(x, s, 0, y, w, j);
                        b.add_boundary_unit(cell, target, q, sign * c);
                    }
                }
            }
        }
    }
    b.build()
}

/// Unreduced suspension `ΣX`, based at the pole `N`. Cells: fixed poles
/// `N`, `S` and `sus.σ = σ × (0,1)` with `∂(sus.v) = N − S` for 0-cells and
/// `∂(sus.σ) = −sus.∂σ` otherwise.
pub fn suspension(x: &GcwComplex) -> GcwComplex {
    let n = x.group().order();
    let mut b = GcwBuilder::new(x.group());
    let north = b.add_cell("N", 0, n).unwrap();
    let south = b.add_cell("S", 0, n).unwrap();
    let map: Vec<usize> = x
        .cells()
        .iter()
        .map(|c| b.add_cell(format!("sus.{}", c.id), c.dim + 1, c.stabilizer).unwrap())
        .collect();
    for k in 0..x.len() {
        if x.cell(k).dim == 0 {
            b.add_boundary(map[k], south, &[-1]);
            b.add_boundary(map[k], north, &[1]);
        } else {
            for t in x.boundary(k) {
                let neg: Vec<i64> = t.coefficients.0.iter().map(|c| -c).collect();
                b.add_boundary(map[k], map[t.target], &neg);
            }
        }
    }
    b.set_basepoint(north);
    b.build().expect("suspension of a valid complex is valid")
}

/// The smash product `X ∧ Y` of based complexes, based at the basepoint of `X`.
/// Product cells `σ ∧ g^r τ` have boundary `∂σ ∧ g^r τ + (−1)^{|σ|} σ ∧ g^r ∂τ`;
/// terms on `X ∨ Y` survive only in dimension 0, as the basepoint.
pub fn smash(x: &GcwComplex, y: &GcwComplex) -> Result<GcwComplex, GcwError> {
    if x.group() != y.group() {
        return Err(GcwError::GroupMismatch(x.group(), y.group()));
    }
    let (Some(bx), Some(by)) = (x.basepoint(), y.basepoint()) else {
        return Err(GcwError::MissingBasepoint);
    };
    let mut b = GcwBuilder::new(x.group());
    let base = b.add_cell(x.cell(bx).id.clone(), 0, x.group().order())?;
    b.set_basepoint(base);
    let xs: Vec<usize> = (0..x.len()).filter(|&k| k != bx).collect();
    let ys: Vec<usize> = (0..y.len()).filter(|&k| k != by).collect();
    let mut cells: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for &s in &xs {
        for &t in &ys {
            let l = x.orbit_size(s).gcd(&y.orbit_size(t));
            let stab = x.cell(s).stabilizer.gcd(&y.cell(t).stabilizer);
            let dim = x.cell(s).dim + y.cell(t).dim;
            let v = (0..l)
                .map(|r| b.add_cell(format!("({}^g{r}.{})", x.cell(s).id, y.cell(t).id), dim, stab))
                .collect::<Result<Vec<_>, _>>()?;
            cells.insert((s, t), v);
        }
    }
    let pairs = PairCells { cells };
    for &s in &xs {
        for &t in &ys {
            let l = x.orbit_size(s).gcd(&y.orbit_size(t));
            let dim = x.cell(s).dim + y.cell(t).dim;
            for r in 0..l {
                let cell = pairs.cells[&(s, t)][r as usize];
                for (u, i, c) in x.translate_boundary(s, 0) {
                    if u == bx {
                        if dim == 1 {
                            b.add_boundary(cell, base, &[c]);
                        }
                    } else {
                        let (target, q) = pairs.locate(x, u, i, y, t, r);
                        b.add_boundary_unit(cell, target, q, c);
                    }
                }
                let sign = if x.cell(s).dim % 2 == 0 { 1 } else { -1 };
                for (w, j, c) in y.translate_boundary(t, r) {
                    if w == by {
                        if dim == 1 {
                            b.add_boundary(cell, base, &[sign * c]);
                        }
                    } else {
                        let (target, q) = pairs.locate(x, s, 0, y, w, j);
                        b.add_boundary_unit(cell, target, q, sign * c);
                    }
                }
            }
        }
    }
    b.build()
}

/// The `d`-skeleton.
pub fn truncate(x: &GcwComplex, d: usize) -> GcwComplex {
    let mut b = GcwBuilder::new(x.group());
    let mut map = vec![usize::MAX; x.len()];
    for (k, c) in x.cells().iter().enumerate() {
        if c.dim <= d {
            map[k] = b.add_cell(c.id.clone(), c.dim, c.stabilizer).unwrap();
        }
    }
    for k in 0..x.len() {
        if map[k] == usize::MAX {
            continue;
        }
        for t in x.boundary(k) {
            b.add_boundary(map[k], map[t.target], &t.coefficients.0);
        }
    }
    if let Some(bp) = x.basepoint() {
        b.set_basepoint(map[bp]);
    }
    b.build().expect("skeleta of valid complexes are valid")
}

fn check_actual(v: &VirtualRep) -> Result<(), GcwError> {
    if !v.is_actual() {
        return Err(GcwError::NotActual(v.to_string()));
    }
    if v.is_zero() {
        return Err(GcwError::EmptyRepresentation);
    }
    Ok(())
}

fn join_all(group: CyclicGroup, blocks: Vec<GcwComplex>, trivial: i64) -> Result<GcwComplex, GcwError> {
    let mut it = blocks.into_iter();
    let mut x = match it.next() {
        Some(first) => {
            let mut acc = first;
            for blk in it {
                acc = join(&acc, &blk)?;
            }
            acc
        }
        None => {
            let mut s = unbased_point_pair(group);
            for _ in 1..trivial {
                s = suspension(&s);
            }
            return Ok(unbase(s));
        }
    };
    for _ in 0..trivial {
        x = unbase(suspension(&x));
    }
    Ok(x)
}

fn unbase(x: GcwComplex) -> GcwComplex {
    let mut x = x;
    x.basepoint = None;
    x
}

/// The unit sphere `S(V)`: a join of one circle (or sign-representation
/// point pair) per nontrivial summand, in label order, suspended once per
/// trivial summand.
pub fn sphere_of_rep(v: &VirtualRep) -> Result<GcwComplex, GcwError> {
    check_actual(v)?;
    let group = v.group();
    let blocks = v
        .without_trivial()
        .summands()
        .into_iter()
        .map(|r| lens_sphere(group, r, 1))
        .collect::<Result<Vec<_>, _>>()?;
    join_all(group, blocks, v.trivial_part())
}

/// `S^V = S(V ⊕ 1)`, based at the pole `N`.
pub fn rep_sphere(v: &VirtualRep) -> Result<GcwComplex, GcwError> {
    Ok(suspension(&sphere_of_rep(v)?))
}

/// Smaller model of `S(V)`: one lens block per isotypic part, joined in
/// label order, with cells of the `ξ^s` block tagged `x<s>.`. Whenever
/// `W ⊆ V`, the model of `S(W)` is a subcomplex of the model of `S(V)` with
/// the same cell ids.
pub fn sphere_model(v: &VirtualRep) -> Result<GcwComplex, GcwError> {
    check_actual(v)?;
    let group = v.group();
    let parts = v
        .without_trivial()
        .terms()
        .map(|(r, m)| {
            let Irrep::Xi(s) = r else { unreachable!() };
            lens_sphere_tagged(group, r, m as u64, &format!("x{s}."))
        })
        .collect::<Result<Vec<_>, _>>()?;
    join_all(group, parts, v.trivial_part())
}

/// Smaller model of `S^V`; `S^0` when `V = 0`.
pub fn rep_sphere_model(v: &VirtualRep) -> Result<GcwComplex, GcwError> {
    if v.is_zero() {
        return Ok(point_sphere(v.group()));
    }
    Ok(suspension(&sphere_model(v)?))
}

/// A finite skeleton of `EC_p`: the free sphere `S(mξ)` with one orbit per
/// dimension (for `p = 2`, `S^{m−1}` with the antipodal action).
pub fn ecp_skeleton(p: u64, m: u64) -> Result<GcwComplex, GcwError> {
    let group = CyclicGroup::new(p)?;
    if !crate::reps::is_prime(p) {
        return Err(crate::reps::RepError::NotPrime(p).into());
    }
    lens_sphere(group, Irrep::Xi(1), m)
}

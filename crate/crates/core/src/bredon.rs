//! Bredon (co)chains of G-CW complexes and RO(G)-graded groups.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gcw::{rep_sphere_model, smash, GcwComplex};
use crate::linalg::{bigint_strings, Coefficients, GroupPresentation, Homology, IntMatrix};
use crate::mackey::MackeyCoefficients;
use crate::reps::{is_prime, Irrep, VirtualRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variance {
    Cochains,
    Chains,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub cell: usize,
    pub offset: usize,
    pub rank: usize,
}

/// `C^k = ⊕ M(G/H_c)` over the k-cells (cochains, restrictions) or
/// `C_k = ⊕ M(G/H_c)` (chains, transfers).
#[derive(Clone, Debug)]
pub struct BredonComplex {
    variance: Variance,
    coefficients: Coefficients,
    blocks: Vec<Vec<Block>>,
    /// Cochains: `maps[k]: C^k → C^{k+1}`. Chains: `maps[k]: C_k → C_{k−1}`.
    maps: Vec<IntMatrix>,
}

impl BredonComplex {
    pub fn cochains(x: &GcwComplex, m: &MackeyCoefficients, reduced: bool) -> Result<Self> {
        Self::build(x, m, reduced, Variance::Cochains)
    }

    pub fn chains(x: &GcwComplex, m: &MackeyCoefficients, reduced: bool) -> Result<Self> {
        Self::build(x, m, reduced, Variance::Chains)
    }

    fn build(x: &GcwComplex, m: &MackeyCoefficients, reduced: bool, variance: Variance) -> Result<Self> {
        if x.group() != m.group() {
            return Err(crate::gcw::GcwError::GroupMismatch(x.group(), m.group()).into());
        }
        if reduced && x.basepoint().is_none() {
            return Err(Error::NoBasepoint);
        }
        let skip = if reduced { x.basepoint() } else { None };
        let top = x.dim().map_or(0, |d| d + 1);
        let mut blocks: Vec<Vec<Block>> = vec![Vec::new(); top];
        let mut place = vec![None; x.len()];
        for d in 0..top {
            let mut offset = 0;
            for c in x.cells_of_dim(d) {
                if Some(c) == skip {
                    continue;
                }
                let rank = m.rank(x.cell(c).stabilizer);
                place[c] = Some(blocks[d].len());
                blocks[d].push(Block { cell: c, offset, rank });
                offset += rank;
            }
        }
        let size = |d: usize| blocks.get(d).and_then(|b| b.last()).map_or(0, |b| b.offset + b.rank);
        let mut maps = Vec::with_capacity(top);
        for d in 0..top {
            let mut mat = match variance {
                Variance::Cochains => IntMatrix::zeros(size(d + 1), size(d)),
                Variance::Chains => IntMatrix::zeros(if d == 0 { 0 } else { size(d - 1) }, size(d)),
            };
            let sources: &[Block] = match variance {
                Variance::Cochains => blocks.get(d + 1).map_or(&[], |v| v.as_slice()),
                Variance::Chains if d > 0 => &blocks[d],
                Variance::Chains => &[],
            };
            for cb in sources {
                let c = cb.cell;
                let hc = x.cell(c).stabilizer;
                for t in x.boundary(c) {
                    let Some(tpos) = place[t.target] else { continue };
                    let tb = blocks[x.cell(t.target).dim][tpos];
                    let ht = x.cell(t.target).stabilizer;
                    for (i, &a) in t.coefficients.0.iter().enumerate() {
                        if a == 0 {
                            continue;
                        }
                        let w = m.weyl_power(ht, i as u64);
                        let (piece, row0, col0) = match variance {
                            Variance::Cochains => (m.restriction(hc, ht).mul(&w), cb.offset, tb.offset),
                            Variance::Chains => (w.mul(m.transfer(hc, ht)), tb.offset, cb.offset),
                        };
                        let a = BigInt::from(a);
                        for r in 0..piece.rows() {
                            for s in 0..piece.cols() {
                                let v = piece.get(r, s);
                                if !v.is_zero() {
                                    mat.add_at(row0 + r, col0 + s, &(v * &a));
                                }
                            }
                        }
                    }
                }
            }
            maps.push(mat);
        }
        let out = BredonComplex { variance, coefficients: m.coefficients(), blocks, maps };
        out.check_square_zero()?;
        Ok(out)
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn size(&self, k: i64) -> usize {
        if k < 0 {
            return 0;
        }
        self.blocks.get(k as usize).and_then(|b| b.last()).map_or(0, |b| b.offset + b.rank)
    }

    pub fn blocks(&self, k: usize) -> &[Block] {
        self.blocks.get(k).map_or(&[], |b| b.as_slice())
    }

    /// The block of `cell`, if the cell contributes.
    pub fn block_of(&self, cell: usize, dim: usize) -> Option<Block> {
        self.blocks(dim).iter().find(|b| b.cell == cell).copied()
    }

    fn map(&self, k: i64, rows: usize, cols: usize) -> IntMatrix {
        if k < 0 || k as usize >= self.maps.len() {
            return IntMatrix::zeros(rows, cols);
        }
        let m = &self.maps[k as usize];
        if (m.rows(), m.cols()) == (rows, cols) {
            m.clone()
        } else {
            IntMatrix::zeros(rows, cols)
        }
    }

    /// `(d_in, d_out)` at degree `k`.
    pub fn maps_at(&self, k: i64) -> (IntMatrix, IntMatrix) {
        match self.variance {
            Variance::Cochains => (
                self.map(k - 1, self.size(k), self.size(k - 1)),
                self.map(k, self.size(k + 1), self.size(k)),
            ),
            Variance::Chains => (
                self.map(k + 1, self.size(k), self.size(k + 1)),
                self.map(k, self.size(k - 1), self.size(k)),
            ),
        }
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for k in 0..self.maps.len() as i64 + 1 {
            let (d_in, d_out) = self.maps_at(k);
            if !d_out.mul(&d_in).is_zero() {
                return Err(crate::linalg::LinalgError::CompositionNotZero.into());
            }
        }
        Ok(())
    }

    pub fn homology(&self, k: i64) -> Result<Homology> {
        let (d_in, d_out) = self.maps_at(k);
        Ok(Homology::compute(&d_in, &d_out, self.coefficients)?)
    }

    pub fn group(&self, k: i64) -> Result<GroupPresentation> {
        if k < 0 || self.size(k) == 0 {
            return Ok(GroupPresentation::zero(self.coefficients));
        }
        Ok(self.homology(k)?.presentation())
    }
}

pub fn bredon_cohomology(x: &GcwComplex, m: &MackeyCoefficients, degree: i64, reduced: bool) -> Result<GroupPresentation> {
    BredonComplex::cochains(x, m, reduced)?.group(degree)
}

pub fn bredon_homology(x: &GcwComplex, m: &MackeyCoefficients, degree: i64, reduced: bool) -> Result<GroupPresentation> {
    BredonComplex::chains(x, m, reduced)?.group(degree)
}

/// How an RO(G)-graded group was reduced to an integer-graded one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Reduction {
    /// `H̃^{m−N}(X) = H̃^m(S^N ∧ X)`, Bredon cochains.
    Suspension { sphere: VirtualRep, degree: i64 },
    /// `H̃^{m+P}(S^0) = H̃_{−m}(S^P)`, Bredon chains.
    PointDuality { sphere: VirtualRep, degree: i64 },
    /// `H̃^{m+P}(X) = H̃^{m + dim P}(X/G)` for `X` free away from the basepoint.
    Periodicity { shift: VirtualRep, degree: i64 },
}

impl Reduction {
    pub fn degree(&self) -> i64 {
        match self {
            Reduction::Suspension { degree, .. }
            | Reduction::PointDuality { degree, .. }
            | Reduction::Periodicity { degree, .. } => *degree,
        }
    }
}

/// A class in an RO(G)-graded group, stored as a (co)cycle of the model
/// complex named by `reduction`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyClass {
    pub grading: VirtualRep,
    pub reduction: Reduction,
    #[serde(with = "bigint_strings")]
    pub vector: Vec<BigInt>,
    #[serde(with = "bigint_strings")]
    pub coordinates: Vec<BigInt>,
    pub group: GroupPresentation,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Zero::is_zero)
    }
}

/// An RO(G)-graded group together with the complex that computes it.
#[derive(Clone, Debug)]
pub struct RoGraded {
    pub requested: VirtualRep,
    pub grading: VirtualRep,
    pub reduction: Reduction,
    pub group: GroupPresentation,
    model: GcwComplex,
    complex: BredonComplex,
    homology: Option<Homology>,
}

impl RoGraded {
    pub fn model(&self) -> &GcwComplex {
        &self.model
    }

    pub fn complex(&self) -> &BredonComplex {
        &self.complex
    }

    pub fn degree(&self) -> i64 {
        self.reduction.degree()
    }

    fn wrap(&self, vector: Vec<BigInt>, coordinates: Vec<BigInt>) -> CohomologyClass {
        CohomologyClass {
            grading: self.grading.clone(),
            reduction: self.reduction.clone(),
            vector,
            coordinates,
            group: self.group.clone(),
        }
    }

    pub fn zero_class(&self) -> CohomologyClass {
        let n = self.complex.size(self.degree());
        self.wrap(vec![BigInt::zero(); n], vec![BigInt::zero(); self.group.generator_count()])
    }

    /// The `k`-th generator of the presentation.
    pub fn generator(&self, k: usize) -> CohomologyClass {
        let h = self.homology.as_ref().expect("nonzero group has homology data");
        let mut coords = vec![BigInt::zero(); self.group.generator_count()];
        coords[k] = BigInt::from(1);
        self.wrap(h.representative(k), coords)
    }

    pub fn generators(&self) -> Vec<CohomologyClass> {
        (0..self.group.generator_count()).map(|k| self.generator(k)).collect()
    }

    /// The class of a (co)cycle of the model complex.
    pub fn class_of(&self, vector: Vec<BigInt>) -> Result<CohomologyClass> {
        if vector.len() != self.complex.size(self.degree()) {
            return Err(Error::ClassMismatch(format!(
                "vector of length {} for a group computed on {} cells",
                vector.len(),
                self.complex.size(self.degree())
            )));
        }
        let coords = match &self.homology {
            None => Vec::new(),
            Some(h) => h
                .coordinates(&vector)
                .ok_or_else(|| Error::ClassMismatch("vector is not a (co)cycle".into()))?,
        };
        Ok(self.wrap(vector, coords))
    }
}

fn canonical_grading(alpha: &VirtualRep, m: &MackeyCoefficients) -> Result<VirtualRep> {
    let n = alpha.group().order();
    match m.coefficients() {
        Coefficients::Field(p) if p == n && is_prime(n) => {
            Ok(VirtualRep::from_restricted(alpha.group(), alpha.canonicalize(p)?))
        }
        _ => Ok(alpha.clone()),
    }
}

/// Decide which rule computes `H̃^α(X; M)` and set up the model complex.
pub fn ro_graded(x: &GcwComplex, m: &MackeyCoefficients, alpha: &VirtualRep) -> Result<RoGraded> {
    if alpha.group() != x.group() || m.group() != x.group() {
        return Err(crate::gcw::GcwError::GroupMismatch(alpha.group(), x.group()).into());
    }
    if x.basepoint().is_none() {
        return Err(Error::NoBasepoint);
    }
    let grading = canonical_grading(alpha, m)?;
    let (pos, neg) = grading.without_trivial().split();
    let mm = grading.trivial_part();
    let (reduction, model, variance) = if pos.is_zero() {
        let model = if neg.is_zero() { x.clone() } else { smash(&rep_sphere_model(&neg)?, x)? };
        (Reduction::Suspension { sphere: neg, degree: mm }, model, Variance::Cochains)
    } else if !neg.is_zero() {
        return Err(Error::unsupported(alpha, "mixed signs need a dual of the space"));
    } else if x.is_point_sphere() {
        let model = rep_sphere_model(&pos)?;
        (Reduction::PointDuality { sphere: pos, degree: -mm }, model, Variance::Chains)
    } else if let Some(c) = x.first_fixed_cell() {
        return Err(Error::unsupported(alpha, format!("cell {} is not free and the space is not S^0", c.id)));
    } else {
        let Coefficients::Field(p) = m.coefficients() else {
            return Err(Error::unsupported(alpha, "the periodicity rule needs field coefficients"));
        };
        if !m.is_fixed_point() {
            return Err(Error::unsupported(alpha, "the periodicity rule needs constant coefficients"));
        }
        let sign = Irrep::Xi(x.group().order() / 2);
        if p != 2 && x.group().order() % 2 == 0 && pos.multiplicity(sign) % 2 != 0 {
            return Err(Error::unsupported(alpha, "odd multiple of the sign representation is not orientable"));
        }
        let degree = mm + pos.dim();
        (Reduction::Periodicity { shift: pos, degree }, x.clone(), Variance::Cochains)
    };
    let complex = match variance {
        Variance::Cochains => BredonComplex::cochains(&model, m, true)?,
        Variance::Chains => BredonComplex::chains(&model, m, true)?,
    };
    let degree = reduction.degree();
    let (homology, group) = if degree < 0 || complex.size(degree) == 0 {
        (None, GroupPresentation::zero(m.coefficients()))
    } else {
        let h = complex.homology(degree)?;
        let g = h.presentation();
        (Some(h), g)
    };
    Ok(RoGraded { requested: alpha.clone(), grading, reduction, group, model, complex, homology })
}

pub fn ro_graded_cohomology(x: &GcwComplex, m: &MackeyCoefficients, alpha: &VirtualRep) -> Result<GroupPresentation> {
    Ok(ro_graded(x, m, alpha)?.group)
}

/// `1 ∈ H̃^0(X)` for constant coefficients: the cocycle that is 1 on every
/// non-base 0-cell.
pub fn unit_class(x: &GcwComplex, m: &MackeyCoefficients) -> Result<CohomologyClass> {
    if !m.is_fixed_point() {
        return Err(Error::Mackey("the unit class needs constant coefficients".into()));
    }
    let g = ro_graded(x, m, &VirtualRep::zero(x.group()))?;
    let v = vec![BigInt::from(1); g.complex.size(0)];
    g.class_of(v)
}

/// `a_V · c`, computed at chain level one irreducible summand at a time.
///
/// Supported: `V` with a trivial summand (zero class); `c` reduced by the
/// suspension rule with `χ ⊆ N` (restriction along `S^{N−χ} ∧ X ⊂ S^N ∧ X`);
/// `X = S^0` with `c` reduced by point duality (push along `S^P ⊂ S^{P+χ}`);
/// `X` free away from the basepoint with `c` in grading `m + P`
/// (push through the hom complex, compared via `Θ`).
pub fn euler_action(x: &GcwComplex, m: &MackeyCoefficients, c: &CohomologyClass, v: &VirtualRep) -> Result<CohomologyClass> {
    if !v.is_actual() {
        return Err(Error::unsupported(v, "Euler classes need an actual representation"));
    }
    if v.trivial_part() > 0 {
        let target = ro_graded(x, m, &(c.grading.clone() + v.clone()))?;
        return Ok(target.zero_class());
    }
    let mut cur = c.clone();
    for chi in v.summands() {
        cur = euler_step(x, m, &cur, chi)?;
    }
    Ok(cur)
}

fn euler_step(x: &GcwComplex, m: &MackeyCoefficients, c: &CohomologyClass, chi: Irrep) -> Result<CohomologyClass> {
    let group = x.group();
    let chi_rep = VirtualRep::irreducible(group, chi, 1)?;
    let next = c.grading.clone() + chi_rep.clone();
    let target = ro_graded(x, m, &next)?;
    let source = ro_graded(x, m, &c.grading)?;
    if source.reduction != c.reduction || source.grading != c.grading {
        return Err(Error::ClassMismatch("class was not produced by this space and coefficient system".into()));
    }
    let refuse = || Error::unsupported(&next, format!("no chain model for a_{chi} from {}", c.grading));
    match (&c.reduction, &target.reduction) {
        (Reduction::Suspension { sphere: big, .. }, Reduction::Suspension { sphere: small, .. })
            if small.clone() + chi_rep.clone() == *big =>
        {
            // restrict the cochain to the smaller smash product
            let bm = source.model();
            let rename = |id: &str| if small.is_zero() { format!("(S^g0.{id})") } else { id.to_string() };
            let mut out = Vec::new();
            let deg = target.degree();
            for blk in target.complex().blocks(deg as usize) {
                let id = rename(&target.model().cell(blk.cell).id);
                let bc = bm.lookup(&id).ok_or_else(|| Error::ClassMismatch(format!("cell {id} missing")))?;
                let bb = source.complex().block_of(bc, deg as usize).expect("cell in model");
                out.extend_from_slice(&c.vector[bb.offset..bb.offset + bb.rank]);
            }
            target.class_of(out)
        }
        (_, Reduction::PointDuality { sphere: big, .. }) if x.is_point_sphere() => {
            let small = match &c.reduction {
                Reduction::PointDuality { sphere, .. } => sphere.clone(),
                Reduction::Suspension { sphere, .. } if sphere.is_zero() => VirtualRep::zero(group),
                _ => return Err(refuse()),
            };
            if small.clone() + chi_rep != *big {
                return Err(refuse());
            }
            // S^0 chains and cochains agree; push along S^P ⊂ S^{P+χ}
            let deg = target.degree();
            let mut out = vec![BigInt::zero(); target.complex().size(deg)];
            if c.vector.is_empty() {
                return target.class_of(out);
            }
            let sm = rep_sphere_model(&small)?;
            let sc = BredonComplex::chains(&sm, m, true)?;
            for blk in sc.blocks(deg as usize) {
                let id = &sm.cell(blk.cell).id;
                let bc = target.model().lookup(id).ok_or_else(|| Error::ClassMismatch(format!("cell {id} missing")))?;
                let tb = target.complex().block_of(bc, deg as usize).expect("cell in model");
                out[tb.offset..tb.offset + tb.rank].clone_from_slice(&c.vector[blk.offset..blk.offset + blk.rank]);
            }
            target.class_of(out)
        }
        (_, Reduction::Periodicity { shift: big, degree }) => {
            let small = match &c.reduction {
                Reduction::Periodicity { shift, .. } => shift.clone(),
                Reduction::Suspension { sphere, .. } if sphere.is_zero() => VirtualRep::zero(group),
                _ => return Err(refuse()),
            };
            let k = degree - big.dim();
            let y_small = rep_sphere_model(&small)?;
            let y_big = rep_sphere_model(&(small.clone() + chi_rep))?;
            let hs = crate::hom::HomComplex::new(x, &y_small, m.coefficients())?;
            let hb = crate::hom::HomComplex::new(x, &y_big, m.coefficients())?;
            let phi = hs.theta(k, &c.vector)?;
            let psi = hs.push(&hb, k, &phi)?;
            let gens: Vec<Vec<BigInt>> = target.generators().into_iter().map(|g| g.vector).collect();
            if gens.is_empty() {
                return Ok(target.zero_class());
            }
            let lambda = hb.solve_against_theta(k, &psi, &gens)?;
            let mut out = vec![BigInt::zero(); target.complex().size(*degree)];
            for (l, g) in lambda.iter().zip(&gens) {
                for (o, a) in out.iter_mut().zip(g) {
                    *o += a * BigInt::from(*l);
                }
            }
            target.class_of(out)
        }
        _ => Err(refuse()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcw::{disjoint_basepoint, ecp_skeleton, point_sphere, rep_sphere, sphere_of_rep};
    use crate::mackey::fixed_point_mackey;
    use crate::reps::{parse_rep, CyclicGroup};

    fn c(n: u64) -> CyclicGroup {
        CyclicGroup::new(n).unwrap()
    }

    #[test]
    fn sphere_of_xi_squared_for_c6() {
        let g = c(6);
        let z = fixed_point_mackey(Coefficients::Integers, g);
        let x = rep_sphere(&parse_rep(g, "xi^2").unwrap()).unwrap();
        assert_eq!(bredon_homology(&x, &z, 0, true).unwrap(), GroupPresentation::integral(0, vec![3.into()]));
        assert_eq!(bredon_cohomology(&x, &z, 2, true).unwrap(), GroupPresentation::integral(1, vec![]));
        assert_eq!(bredon_cohomology(&x, &z, 1, true).unwrap(), GroupPresentation::zero(Coefficients::Integers));
    }

    #[test]
    fn point_sphere_cohomology() {
        for n in [2, 3, 6] {
            let g = c(n);
            let z = fixed_point_mackey(Coefficients::Integers, g);
            let s0 = point_sphere(g);
            assert_eq!(bredon_cohomology(&s0, &z, 0, true).unwrap(), GroupPresentation::integral(1, vec![]));
            assert!(bredon_cohomology(&s0, &z, 1, true).unwrap().is_zero());
        }
    }

    #[test]
    fn free_circle_plus() {
        let g = c(3);
        let f = fixed_point_mackey(Coefficients::Field(3), g);
        let x = disjoint_basepoint(&sphere_of_rep(&parse_rep(g, "xi").unwrap()).unwrap());
        assert_eq!(bredon_cohomology(&x, &f, 0, true).unwrap(), GroupPresentation::field(3, 1));
        assert_eq!(bredon_cohomology(&x, &f, 1, true).unwrap(), GroupPresentation::field(3, 1));
        let unbased = sphere_of_rep(&parse_rep(g, "xi").unwrap()).unwrap();
        assert!(matches!(bredon_cohomology(&unbased, &f, 0, true), Err(Error::NoBasepoint)));
    }

    #[test]
    fn reduction_rules() {
        let g = c(3);
        let f = fixed_point_mackey(Coefficients::Field(3), g);
        let s0 = point_sphere(g);
        let xi = parse_rep(g, "xi").unwrap();
        let r = ro_graded(&s0, &f, &xi).unwrap();
        assert!(matches!(r.reduction, Reduction::PointDuality { .. }));
        assert_eq!(r.group, GroupPresentation::field(3, 1));
        // Σ^{-1}(a u)^{-1} sits in 3 − 2ξ
        let neg = parse_rep(g, "3-2*xi").unwrap();
        assert_eq!(ro_graded_cohomology(&s0, &f, &neg).unwrap(), GroupPresentation::field(3, 1));
        assert!(ro_graded_cohomology(&s0, &f, &parse_rep(g, "1-2*xi").unwrap()).unwrap().is_zero());
        let x = disjoint_basepoint(&ecp_skeleton(3, 3).unwrap());
        let r = ro_graded(&x, &f, &parse_rep(g, "1+xi").unwrap()).unwrap();
        assert_eq!(r.reduction, Reduction::Periodicity { shift: xi.clone(), degree: 3 });
        assert_eq!(r.group, GroupPresentation::field(3, 1));
        let sxi = rep_sphere(&xi).unwrap();
        assert!(matches!(
            ro_graded_cohomology(&sxi, &f, &xi),
            Err(Error::UnsupportedGrading { .. })
        ));
    }

    #[test]
    fn euler_action_on_lens_skeleton() {
        let g = c(3);
        let f = fixed_point_mackey(Coefficients::Field(3), g);
        let x = disjoint_basepoint(&ecp_skeleton(3, 3).unwrap());
        let xi = parse_rep(g, "xi").unwrap();
        let one = unit_class(&x, &f).unwrap();
        let a1 = euler_action(&x, &f, &one, &xi).unwrap();
        assert!(!a1.is_zero());
        assert_eq!(a1.grading, xi);
        let a2 = euler_action(&x, &f, &a1, &xi).unwrap();
        assert!(!a2.is_zero());
        let a3 = euler_action(&x, &f, &a2, &xi).unwrap();
        assert!(a3.is_zero());
        // multiplicativity
        let direct = euler_action(&x, &f, &one, &parse_rep(g, "2*xi").unwrap()).unwrap();
        assert_eq!(direct, a2);
        // trivial summand kills
        let z = euler_action(&x, &f, &one, &parse_rep(g, "xi+1").unwrap()).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn euler_action_on_point() {
        let g = c(5);
        let f = fixed_point_mackey(Coefficients::Field(5), g);
        let s0 = point_sphere(g);
        let one = unit_class(&s0, &f).unwrap();
        let xi = parse_rep(g, "xi").unwrap();
        let mut cur = one.clone();
        for _ in 0..3 {
            cur = euler_action(&s0, &f, &cur, &xi).unwrap();
            assert!(!cur.is_zero());
        }
        // negative cone: a·Σ^{-1}κ/(a u²) = 0 but a·Σ^{-1}/(a² u) = Σ^{-1}/(a u)
        let r = ro_graded(&s0, &f, &parse_rep(g, "4-2*xi").unwrap()).unwrap();
        assert_eq!(r.group.dimension(), 1);
        assert!(euler_action(&s0, &f, &r.generator(0), &xi).unwrap().is_zero());
        let r = ro_graded(&s0, &f, &parse_rep(g, "3-3*xi").unwrap()).unwrap();
        assert_eq!(r.group.dimension(), 1);
        let img = euler_action(&s0, &f, &r.generator(0), &xi).unwrap();
        assert_eq!(img.grading, parse_rep(g, "3-2*xi").unwrap());
        assert!(!img.is_zero());
    }

    #[test]
    fn unit_class_is_nonzero() {
        let g = c(3);
        let f = fixed_point_mackey(Coefficients::Field(3), g);
        let x = disjoint_basepoint(&ecp_skeleton(3, 2).unwrap());
        let one = unit_class(&x, &f).unwrap();
        assert!(!one.is_zero());
        let json = serde_json::to_string(&one).unwrap();
        let back: CohomologyClass = serde_json::from_str(&json).unwrap();
        assert_eq!(back, one);
    }
}

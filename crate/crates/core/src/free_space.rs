//! Cohomology of free `C_p`-spaces as modules over the cohomology of a point.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bredon::{euler_action, ro_graded, unit_class, CohomologyClass, Reduction, RoGraded};
use crate::error::{Error, Result};
use crate::gcw::{disjoint_basepoint, ecp_skeleton, GcwComplex};
use crate::linalg::{Coefficients, GroupPresentation};
use crate::mackey::{fixed_point_mackey, MackeyCoefficients};
use crate::reps::{is_prime, Irrep, RepError, RestrictedGrading, VirtualRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleGenerator {
    U,
    UInverse,
    A,
    Kappa,
}

/// A free `C_p`-space `X`, stored as `X_+` (or as given if already based),
/// with `𝔽_p` coefficients.
#[derive(Clone, Debug)]
pub struct FreeSpace {
    space: GcwComplex,
    p: u64,
    mackey: MackeyCoefficients,
    lens: Option<u64>,
}

impl FreeSpace {
    pub fn new(x: &GcwComplex) -> Result<Self> {
        let p = x.group().order();
        if !is_prime(p) {
            return Err(RepError::NotPrime(p).into());
        }
        let space = if x.basepoint().is_some() { x.clone() } else { disjoint_basepoint(x) };
        if let Some(c) = space.first_fixed_cell() {
            return Err(Error::NotFree(c.id.clone()));
        }
        let lens = space.dim().and_then(|d| {
            let m = if p == 2 { d as u64 + 1 } else { (d as u64 + 2) / 2 };
            let candidate = disjoint_basepoint(&ecp_skeleton(p, m).ok()?);
            space.same_cells(&candidate).then_some(m)
        });
        let mackey = fixed_point_mackey(Coefficients::Field(p), x.group());
        Ok(FreeSpace { space, p, mackey, lens })
    }

    pub fn space(&self) -> &GcwComplex {
        &self.space
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn mackey(&self) -> &MackeyCoefficients {
        &self.mackey
    }

    /// `m` if this is the built-in skeleton `S(mξ)_+`.
    pub fn lens_skeleton(&self) -> Option<u64> {
        self.lens
    }

    fn xi(&self) -> VirtualRep {
        VirtualRep::irreducible(self.space.group(), Irrep::Xi(1), 1).expect("ξ exists")
    }

    pub fn group_at(&self, g: RestrictedGrading) -> Result<RoGraded> {
        ro_graded(&self.space, &self.mackey, &VirtualRep::from_restricted(self.space.group(), g))
    }

    pub fn unit(&self) -> Result<CohomologyClass> {
        unit_class(&self.space, &self.mackey)
    }

    /// Quotient degree computing `H̃^{m+nξ}(X_+)`.
    pub fn total_degree(&self, g: RestrictedGrading) -> i64 {
        g.m + g.n * self.xi().dim()
    }

    fn shift(&self, c: &CohomologyClass, delta: VirtualRep) -> Result<RoGraded> {
        ro_graded(&self.space, &self.mackey, &(c.grading.clone() + delta))
    }

    /// `u_ξ^{±1}·c`: the same cochain, read in a grading shifted by `±(ξ − dim ξ)`.
    fn periodicity(&self, c: &CohomologyClass, sign: i64) -> Result<CohomologyClass> {
        let xi = self.xi();
        let delta = (xi.clone() - VirtualRep::trivial(self.space.group(), xi.dim())).scale(sign);
        let target = self.shift(c, delta)?;
        if !on_quotient(&c.reduction) || !on_quotient(&target.reduction) {
            return Err(Error::unsupported(&target.grading, "u-periodicity needs both gradings on the orbit complex"));
        }
        target.class_of(c.vector.clone())
    }

    /// Cup with the lens class of quotient degree `deg ∈ {1, 2}`, then `u_ξ`.
    fn lens_cup(&self, c: &CohomologyClass, deg: i64) -> Result<CohomologyClass> {
        if self.p == 2 || self.lens.is_none() {
            return Err(Error::KappaUnsupported);
        }
        let xi = self.xi();
        let delta = xi.clone() - VirtualRep::trivial(self.space.group(), 2 - deg);
        let source = self.shift(c, VirtualRep::zero(self.space.group()))?;
        let target = self.shift(c, delta)?;
        if !on_quotient(&c.reduction) || !on_quotient(&target.reduction) {
            return Err(Error::unsupported(&target.grading, "cup products live on the orbit complex"));
        }
        let s = source.degree();
        let t = target.degree();
        let mut out = vec![BigInt::zero(); target.complex().size(t)];
        // x² = 0, every other product of generators is the next generator
        if !(deg == 1 && s % 2 == 1) && !out.is_empty() && s >= 0 {
            let coeff = lens_coefficient(&source, &c.vector, s);
            let cell = target.model().lookup(&format!("e{t}")).expect("lens cell");
            let blk = target.complex().block_of(cell, t as usize).expect("non-base cell");
            out[blk.offset] = coeff;
        }
        target.class_of(out)
    }

    /// `κ_ξ = x·u_ξ` acting on `c`.
    pub fn kappa(&self, c: &CohomologyClass) -> Result<CohomologyClass> {
        self.lens_cup(c, 1)
    }

    /// `π*(y)·u_ξ` acting on `c`, from the cup structure of the lens quotient.
    pub fn y_u(&self, c: &CohomologyClass) -> Result<CohomologyClass> {
        self.lens_cup(c, 2)
    }

    pub fn act(&self, generator: ModuleGenerator, c: &CohomologyClass) -> Result<CohomologyClass> {
        match generator {
            ModuleGenerator::U => self.periodicity(c, 1),
            ModuleGenerator::UInverse => self.periodicity(c, -1),
            ModuleGenerator::A => euler_action(&self.space, &self.mackey, c, &self.xi()),
            ModuleGenerator::Kappa => self.kappa(c),
        }
    }

    /// `a_ξ^k · 1` for `k = 0, 1, …, max_k`.
    pub fn euler_powers(&self, max_k: usize) -> Result<Vec<CohomologyClass>> {
        let mut out = vec![self.unit()?];
        for _ in 0..max_k {
            let next = self.act(ModuleGenerator::A, out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    }
}

fn on_quotient(r: &Reduction) -> bool {
    match r {
        Reduction::Periodicity { .. } => true,
        Reduction::Suspension { sphere, .. } => sphere.is_zero(),
        Reduction::PointDuality { .. } => false,
    }
}

fn lens_coefficient(g: &RoGraded, vector: &[BigInt], s: i64) -> BigInt {
    let cell = g.model().lookup(&format!("e{s}")).expect("lens cell");
    let blk = g.complex().block_of(cell, s as usize).expect("non-base cell");
    vector[blk.offset].clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeSpaceCohomology {
    pub p: u64,
    /// `dim H^s(X/G; 𝔽_p)` for each quotient degree `s`.
    pub quotient_dims: BTreeMap<i64, usize>,
    pub groups: BTreeMap<i64, GroupPresentation>,
}

impl FreeSpaceCohomology {
    pub fn dimension(&self, s: i64) -> usize {
        self.quotient_dims.get(&s).copied().unwrap_or(0)
    }

    /// `dim H̃^{m+nξ}(X_+)`, read through periodicity.
    pub fn dimension_at(&self, g: RestrictedGrading) -> usize {
        let xi = if self.p == 2 { 1 } else { 2 };
        self.dimension(g.m + xi * g.n)
    }
}

/// The table `H^s(X/G; 𝔽_p)` from the orbit complex.
pub fn free_cohomology(x: &GcwComplex) -> Result<FreeSpaceCohomology> {
    let fs = FreeSpace::new(x)?;
    let q = fs.space.quotient().reduced();
    let top = q.dim().map_or(0, |d| d + 1);
    let mut quotient_dims = BTreeMap::new();
    let mut groups = BTreeMap::new();
    for s in 0..top {
        let g = q.cohomology(s, Coefficients::Field(fs.p))?;
        quotient_dims.insert(s as i64, g.dimension());
        groups.insert(s as i64, g);
    }
    Ok(FreeSpaceCohomology { p: fs.p, quotient_dims, groups })
}

pub fn module_action(x: &GcwComplex, generator: ModuleGenerator, c: &CohomologyClass) -> Result<CohomologyClass> {
    FreeSpace::new(x)?.act(generator, c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletalReport {
    pub bound: i64,
    /// Largest `k` with `a_ξ^j · 1 ≠ 0` for all `j ≤ k` and `k·dim ξ ≤ bound`.
    pub largest_k: usize,
    pub classes: Vec<CohomologyClass>,
}

pub fn skeletal_range_check(x: &GcwComplex, bound: i64) -> Result<SkeletalReport> {
    let fs = FreeSpace::new(x)?;
    let step = fs.xi().dim();
    let mut classes = vec![fs.unit()?];
    let mut k = 0;
    while (k as i64 + 1) * step <= bound {
        let next = fs.act(ModuleGenerator::A, classes.last().unwrap())?;
        if next.is_zero() {
            break;
        }
        classes.push(next);
        k += 1;
    }
    Ok(SkeletalReport { bound, largest_k: k, classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcw::{rep_sphere_model, GcwBuilder};
    use crate::reps::CyclicGroup;

    fn free_orbit(p: u64) -> GcwComplex {
        let mut b = GcwBuilder::new(CyclicGroup::new(p).unwrap());
        b.add_cell("v", 0, 1).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn quotient_tables() {
        let l5 = free_cohomology(&ecp_skeleton(3, 3).unwrap()).unwrap();
        assert_eq!((0..7).map(|s| l5.dimension(s)).collect::<Vec<_>>(), vec![1, 1, 1, 1, 1, 1, 0]);
        let circle = free_cohomology(&ecp_skeleton(3, 1).unwrap()).unwrap();
        assert_eq!(circle.quotient_dims.values().copied().collect::<Vec<_>>(), vec![1, 1]);
        let mut b = GcwBuilder::new(CyclicGroup::new(3).unwrap());
        b.add_cell("v", 0, 1).unwrap();
        b.add_cell("w", 0, 1).unwrap();
        assert_eq!(free_cohomology(&b.build().unwrap()).unwrap().dimension(0), 2);
    }

    #[test]
    fn fixed_cells_rejected() {
        let g = CyclicGroup::new(3).unwrap();
        let s = rep_sphere_model(&VirtualRep::irreducible(g, Irrep::Xi(1), 1).unwrap()).unwrap();
        assert_eq!(free_cohomology(&s).unwrap_err(), Error::NotFree("S".into()));
    }

    #[test]
    fn u_is_invertible() {
        let fs = FreeSpace::new(&ecp_skeleton(3, 3).unwrap()).unwrap();
        assert_eq!(fs.lens_skeleton(), Some(3));
        let one = fs.unit().unwrap();
        let u = fs.act(ModuleGenerator::U, &one).unwrap();
        assert!(!u.is_zero());
        assert_eq!(u.grading, VirtualRep::from_restricted(fs.space().group(), RestrictedGrading::new(-2, 1)));
        let back = fs.act(ModuleGenerator::UInverse, &u).unwrap();
        assert_eq!(back, one);
    }

    #[test]
    fn euler_powers_truncate() {
        let fs = FreeSpace::new(&ecp_skeleton(3, 3).unwrap()).unwrap();
        let pw = fs.euler_powers(3).unwrap();
        assert!(!pw[2].is_zero());
        assert!(pw[3].is_zero());
    }

    #[test]
    fn kappa_squares_to_zero() {
        let fs = FreeSpace::new(&ecp_skeleton(3, 3).unwrap()).unwrap();
        let k1 = fs.kappa(&fs.unit().unwrap()).unwrap();
        assert!(!k1.is_zero());
        assert!(fs.kappa(&k1).unwrap().is_zero());
        let orbit = FreeSpace::new(&free_orbit(3)).unwrap();
        assert!(matches!(orbit.kappa(&orbit.unit().unwrap()), Err(Error::KappaUnsupported)));
    }

    #[test]
    fn a_matches_y_u() {
        for p in [3, 5] {
            let fs = FreeSpace::new(&ecp_skeleton(p, 3).unwrap()).unwrap();
            let mut a = fs.unit().unwrap();
            let mut y = a.clone();
            for _ in 0..3 {
                a = fs.act(ModuleGenerator::A, &a).unwrap();
                y = fs.y_u(&y).unwrap();
                assert_eq!(a, y);
            }
        }
    }

    #[test]
    fn a_commutes_with_u() {
        let fs = FreeSpace::new(&ecp_skeleton(5, 2).unwrap()).unwrap();
        let one = fs.unit().unwrap();
        let au = fs.act(ModuleGenerator::A, &fs.act(ModuleGenerator::U, &one).unwrap()).unwrap();
        let ua = fs.act(ModuleGenerator::U, &fs.act(ModuleGenerator::A, &one).unwrap()).unwrap();
        assert_eq!(au, ua);
    }

    #[test]
    fn skeletal_ranges() {
        assert_eq!(skeletal_range_check(&ecp_skeleton(3, 3).unwrap(), 4).unwrap().largest_k, 2);
        assert_eq!(skeletal_range_check(&ecp_skeleton(2, 4).unwrap(), 3).unwrap().largest_k, 3);
        assert_eq!(skeletal_range_check(&free_orbit(3), 1).unwrap().largest_k, 0);
        assert_eq!(skeletal_range_check(&free_orbit(2), 1).unwrap().largest_k, 0);
    }
}

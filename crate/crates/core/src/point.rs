//! The RO(C_p)-graded cohomology of a point with `𝔽_p` coefficients and
//! integral Euler classes of representation spheres.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::bredon::{ro_graded, BredonComplex, Reduction};
use crate::error::{Error, Result};
use crate::gcw::{join, point_sphere, rep_sphere_model, suspension, truncate, lens_sphere, GcwComplex};
use crate::linalg::{Coefficients, FpMatrix, GroupPresentation, Homology};
use crate::mackey::fixed_point_mackey;
use crate::reps::{is_prime, prime_divisors, CyclicGroup, Irrep, RepError, RestrictedGrading, VirtualRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    /// Sphere models and the Bredon engine.
    A,
    /// The Čech cochain `F ⊕ G → T` of Borel, geometric and Tate parts.
    B,
    /// Closed-form enumeration of the basis.
    C,
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Method::A),
            "b" => Ok(Method::B),
            "c" => Ok(Method::C),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cone {
    Positive,
    Negative,
}

/// `a^i κ^ε u^j` (positive cone) or `Σ^{-1} κ^ε a^{-j} u^{-k}` (negative cone;
/// here `i` holds `j` and `j` holds `k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub cone: Cone,
    pub i: i64,
    pub epsilon: i64,
    pub j: i64,
}

impl BasisElement {
    pub fn grading(&self, p: u64) -> RestrictedGrading {
        let e = if p == 2 { 0 } else { self.epsilon };
        match (self.cone, p) {
            (Cone::Positive, 2) => RestrictedGrading::new(-self.j, self.i + self.j),
            (Cone::Positive, _) => RestrictedGrading::new(-(2 * self.j + e), self.i + self.j + e),
            (Cone::Negative, 2) => RestrictedGrading::new(self.j + 1, -(self.i + self.j)),
            (Cone::Negative, _) => RestrictedGrading::new(2 * self.j - e + 1, e - self.i - self.j),
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.cone {
            Cone::Positive => write!(f, "a^{} k^{} u^{}", self.i, self.epsilon, self.j),
            Cone::Negative => write!(f, "S-1 k^{} a-{} u-{}", self.epsilon, self.i, self.j),
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(RepError::NotPrime(p).into());
    }
    Ok(())
}

/// Closed-form basis of `𝕄_p` at `m + nξ` (at most one element).
pub fn closed_form_basis(p: u64, g: RestrictedGrading) -> Result<Vec<BasisElement>> {
    check_prime(p)?;
    let (m, n) = (g.m, g.n);
    let mut out = Vec::new();
    if p == 2 {
        if m <= 0 && n + m >= 0 {
            out.push(BasisElement { cone: Cone::Positive, i: n + m, epsilon: 0, j: -m });
        }
        let k = m - 1;
        if k >= 1 && -n - k >= 1 {
            out.push(BasisElement { cone: Cone::Negative, i: -n - k, epsilon: 0, j: k });
        }
    } else {
        if m <= 0 {
            let e = (-m) % 2;
            let j = (-m - e) / 2;
            let i = n - j - e;
            if i >= 0 {
                out.push(BasisElement { cone: Cone::Positive, i, epsilon: e, j });
            }
        }
        if m >= 2 {
            let e = (m - 1).rem_euclid(2);
            let k = (m - 1 + e) / 2;
            let j = e - k - n;
            if j >= 1 {
                out.push(BasisElement { cone: Cone::Negative, i: j, epsilon: e, j: k });
            }
        }
    }
    Ok(out)
}

/// The unique Tate monomial `a^i κ^ε u^j` in grading `(m, n)`.
fn tate_monomial(p: u64, m: i64, n: i64) -> (i64, i64, i64) {
    if p == 2 {
        (n + m, 0, -m)
    } else {
        let e = m.rem_euclid(2);
        let j = (-m - e) / 2;
        (n - j - e, e, j)
    }
}

/// The Čech map `F ⊕ G → T` at one grading, as a matrix over `𝔽_p`,
/// with the monomials spanning its source.
fn cech_map(p: u64, m: i64, n: i64) -> (FpMatrix, Vec<(i64, i64, i64)>) {
    let mono = tate_monomial(p, m, n);
    let (i, _, j) = mono;
    let mut columns = Vec::new();
    let mut source = Vec::new();
    // Borel part: i ≥ 0
    if i >= 0 {
        columns.push(vec![1]);
        source.push(mono);
    }
    // geometric part: j ≥ 0, mapped with a sign
    if j >= 0 {
        columns.push(vec![p - 1]);
        source.push(mono);
    }
    (FpMatrix::from_columns(p, 1, &columns), source)
}

fn method_b(p: u64, g: RestrictedGrading) -> Vec<BasisElement> {
    let (m, n) = (g.m, g.n);
    let mut out = Vec::new();
    let (f, source) = cech_map(p, m, n);
    let kernel = f.kernel();
    if !kernel.is_empty() {
        // the diagonal element (x, x) of F ∩ G
        let (i, e, j) = source[0];
        debug_assert_eq!(kernel.len(), 1);
        out.push(BasisElement { cone: Cone::Positive, i, epsilon: e, j });
    }
    let (f1, _) = cech_map(p, m - 1, n);
    if f1.rank() < f1.rows() {
        let (i, e, j) = tate_monomial(p, m - 1, n);
        out.push(BasisElement { cone: Cone::Negative, i: -i, epsilon: e, j: -j });
    }
    out
}

fn method_a(p: u64, g: RestrictedGrading) -> Result<Vec<BasisElement>> {
    let group = CyclicGroup::new(p)?;
    let f = fixed_point_mackey(Coefficients::Field(p), group);
    let alpha = VirtualRep::from_restricted(group, g);
    let r = ro_graded(&point_sphere(group), &f, &alpha)?;
    let mut out = Vec::new();
    // read the exponents off the degree of the supporting cells
    let support_dim = r.degree();
    for _ in r.generators() {
        let el = match &r.reduction {
            Reduction::PointDuality { sphere, .. } => {
                let d = support_dim;
                let n = sphere.dim() / crate::reps::xi_dim(p);
                if p == 2 {
                    BasisElement { cone: Cone::Positive, i: n - d, epsilon: 0, j: d }
                } else {
                    let e = d % 2;
                    let j = (d - e) / 2;
                    BasisElement { cone: Cone::Positive, i: n - j - e, epsilon: e, j }
                }
            }
            Reduction::Suspension { sphere, .. } if sphere.is_zero() => {
                BasisElement { cone: Cone::Positive, i: 0, epsilon: 0, j: 0 }
            }
            Reduction::Suspension { sphere, .. } => {
                let n = sphere.dim() / crate::reps::xi_dim(p);
                let d = support_dim;
                if p == 2 {
                    BasisElement { cone: Cone::Negative, i: n - (d - 1), epsilon: 0, j: d - 1 }
                } else {
                    let e = (d - 1).rem_euclid(2);
                    let k = (d - 1 + e) / 2;
                    BasisElement { cone: Cone::Negative, i: n + e - k, epsilon: e, j: k }
                }
            }
            Reduction::Periodicity { .. } => unreachable!("S^0 is never reduced by periodicity"),
        };
        out.push(el);
    }
    Ok(out)
}

/// `𝕄_p` at `m + nξ`, with basis labels.
pub fn mp_group(p: u64, g: RestrictedGrading, method: Method) -> Result<GroupPresentation> {
    check_prime(p)?;
    let basis = match method {
        Method::A => method_a(p, g)?,
        Method::B => method_b(p, g),
        Method::C => closed_form_basis(p, g)?,
    };
    Ok(GroupPresentation::field(p, basis.len()).with_labels(basis.iter().map(|b| b.to_string()).collect()))
}

pub fn mp_basis(p: u64, g: RestrictedGrading, method: Method) -> Result<Vec<BasisElement>> {
    check_prime(p)?;
    match method {
        Method::A => method_a(p, g),
        Method::B => Ok(method_b(p, g)),
        Method::C => closed_form_basis(p, g),
    }
}

fn nontrivial(group: CyclicGroup, eta: Irrep) -> Result<()> {
    group.check_irrep(eta)?;
    if eta == Irrep::Trivial {
        return Err(Error::TrivialCharacter);
    }
    Ok(())
}

/// Order of `[S] ∈ H̃_0(S^V; ℤ)`, i.e. of `a_V ∈ H̃^V(S^0; ℤ)`; `None` if infinite.
fn euler_class_order(model: &GcwComplex, group: CyclicGroup) -> Result<Option<BigInt>> {
    let z = fixed_point_mackey(Coefficients::Integers, group);
    let chains = BredonComplex::chains(model, &z, true)?;
    let s = model.lookup("S").expect("representation spheres have a pole S");
    let blk = chains.block_of(s, 0).expect("S is a non-base 0-cell");
    let mut v = vec![BigInt::from(0); chains.size(0)];
    v[blk.offset] = BigInt::one();
    let Homology::Integral(h) = chains.homology(0)? else { unreachable!() };
    Ok(h.order(&v).expect("a 0-chain is a cycle"))
}

/// Order of `a_η` in `H̃^η(S^0; ℤ)`, computed on the `S^η` chain complex.
pub fn euler_order(group: CyclicGroup, eta: Irrep) -> Result<Option<u64>> {
    nontrivial(group, eta)?;
    euler_order_rep(&VirtualRep::irreducible(group, eta, 1)?)
}

/// Order of `a_V` for an actual representation `V`.
pub fn euler_order_rep(v: &VirtualRep) -> Result<Option<u64>> {
    if !v.is_actual() || v.is_zero() {
        return Err(Error::unsupported(v, "Euler classes need a nonzero actual representation"));
    }
    let model = rep_sphere_model(v)?;
    Ok(euler_class_order(&model, v.group())?.map(|o| o.try_into().expect("order divides |G|")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimeWitness {
    pub primes: (u64, u64),
    pub subrepresentations: (String, String),
    pub orders: (u64, u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingReport {
    pub n: u64,
    pub vanishes: bool,
    /// Order of `a_ρ̄` in `H̃^{ρ̄}(S^0; ℤ)`.
    pub order: String,
    pub witness: Option<CoprimeWitness>,
}

/// 1-skeleton of `S^V`: the poles and one suspended 0-cell orbit per block.
fn rep_sphere_one_skeleton(v: &VirtualRep) -> Result<GcwComplex> {
    let group = v.group();
    let mut acc: Option<GcwComplex> = None;
    for (r, _) in v.without_trivial().terms() {
        let block = truncate(&lens_sphere(group, r, 1)?, 0);
        acc = Some(match acc {
            None => block,
            Some(a) => truncate(&join(&a, &block)?, 0),
        });
    }
    let s = acc.ok_or(crate::gcw::GcwError::EmptyRepresentation)?;
    Ok(truncate(&suspension(&s), 1))
}

/// Whether `a_ρ̄ = 0` in `H̃^{ρ̄}(S^0; ℤ)`, with the coprime pair that forces it.
pub fn euler_reduced_regular_vanishes(group: CyclicGroup) -> Result<VanishingReport> {
    let n = group.order();
    let witness = {
        let ps = prime_divisors(n);
        if ps.len() >= 2 {
            let (p, q) = (ps[0], ps[1]);
            let vp = Irrep::Xi(n / p);
            let vq = Irrep::Xi(n / q);
            let op = euler_order(group, vp)?.expect("finite");
            let oq = euler_order(group, vq)?.expect("finite");
            Some(CoprimeWitness { primes: (p, q), subrepresentations: (vp.to_string(), vq.to_string()), orders: (op, oq) })
        } else {
            None
        }
    };
    if n == 1 {
        return Ok(VanishingReport { n, vanishes: false, order: "1".into(), witness });
    }
    let model = rep_sphere_one_skeleton(&group.reduced_regular())?;
    let order = euler_class_order(&model, group)?;
    let vanishes = order.as_ref().is_some_and(One::is_one);
    Ok(VanishingReport {
        n,
        vanishes,
        order: order.map_or("infinite".into(), |o| o.to_string()),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rg(m: i64, n: i64) -> RestrictedGrading {
        RestrictedGrading::new(m, n)
    }

    #[test]
    fn spot_values() {
        for p in [3, 5] {
            let labels = |m, n| mp_group(p, rg(m, n), Method::C).unwrap().labels;
            assert_eq!(labels(0, 0), vec!["a^0 k^0 u^0"]);
            assert_eq!(labels(-2, 1), vec!["a^0 k^0 u^1"]);
            assert_eq!(labels(0, 1), vec!["a^1 k^0 u^0"]);
            assert_eq!(labels(3, -2), vec!["S-1 k^0 a-1 u-1"]);
            assert!(labels(1, -2).is_empty());
            assert!(labels(-1, 0).is_empty());
        }
    }

    #[test]
    fn labels_reproduce_gradings() {
        for p in [2, 3, 5] {
            for m in -8..=8 {
                for n in -4..=4 {
                    for b in closed_form_basis(p, rg(m, n)).unwrap() {
                        assert_eq!(b.grading(p), rg(m, n));
                    }
                }
            }
        }
    }

    #[test]
    fn methods_agree_small_window() {
        for p in [2, 3] {
            for m in -4..=4 {
                for n in -2..=2 {
                    let c = mp_basis(p, rg(m, n), Method::C).unwrap();
                    assert_eq!(mp_basis(p, rg(m, n), Method::B).unwrap(), c, "B at ({m},{n}), p={p}");
                    assert_eq!(mp_basis(p, rg(m, n), Method::A).unwrap(), c, "A at ({m},{n}), p={p}");
                }
            }
        }
    }

    #[test]
    fn euler_orders() {
        let c = |n| CyclicGroup::new(n).unwrap();
        assert_eq!(euler_order(c(5), Irrep::Xi(1)).unwrap(), Some(5));
        assert_eq!(euler_order(c(6), Irrep::Xi(2)).unwrap(), Some(3));
        assert_eq!(euler_order(c(6), Irrep::Xi(3)).unwrap(), Some(2));
        assert!(matches!(euler_order(c(6), Irrep::Trivial), Err(Error::TrivialCharacter)));
        let r = |s| crate::reps::parse_rep(c(6), s).unwrap();
        assert_eq!(euler_order_rep(&r("xi^2+xi^3")).unwrap(), Some(1));
        assert_eq!(euler_order_rep(&r("1+xi")).unwrap(), Some(1));
        assert_eq!(euler_order_rep(&r("2*xi^2")).unwrap(), Some(3));
    }

    #[test]
    fn reduced_regular() {
        let c = |n| CyclicGroup::new(n).unwrap();
        let r = euler_reduced_regular_vanishes(c(6)).unwrap();
        assert!(r.vanishes);
        assert_eq!(r.witness.unwrap().orders, (2, 3));
        let r = euler_reduced_regular_vanishes(c(3)).unwrap();
        assert!(!r.vanishes);
        assert_eq!(r.order, "3");
    }
}

//! Mackey functors for cyclic groups with free modules as values.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::{Coefficients, FpMatrix, IntMatrix};
use crate::reps::CyclicGroup;

/// A Mackey functor for `C_n`, with `M(G/H) = R^{rank(h)}` over `R = ℤ` or `𝔽_p`.
/// Subgroups are named by their order. For `k | h`, `res(k, h)` maps
/// `M(G/H) → M(G/K)`, `tr(k, h)` maps back, and `weyl(h)` is the action of
/// the generator `g` on `M(G/H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MackeyCoefficients {
    group: CyclicGroup,
    coefficients: Coefficients,
    ranks: BTreeMap<u64, usize>,
    restrictions: BTreeMap<(u64, u64), IntMatrix>,
    transfers: BTreeMap<(u64, u64), IntMatrix>,
    weyl: BTreeMap<u64, IntMatrix>,
    fixed_point: bool,
}

impl MackeyCoefficients {
    /// Build and validate. Maps must be given for every pair `k | h`.
    pub fn new(
        group: CyclicGroup,
        coefficients: Coefficients,
        ranks: BTreeMap<u64, usize>,
        restrictions: BTreeMap<(u64, u64), IntMatrix>,
        transfers: BTreeMap<(u64, u64), IntMatrix>,
        weyl: BTreeMap<u64, IntMatrix>,
    ) -> Result<Self> {
        let m = MackeyCoefficients {
            group,
            coefficients,
            ranks,
            restrictions,
            transfers,
            weyl,
            fixed_point: false,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    /// Whether this is the constant functor `M(G/H) = R` with identity restrictions.
    pub fn is_fixed_point(&self) -> bool {
        self.fixed_point
    }

    pub fn rank(&self, h: u64) -> usize {
        self.ranks[&h]
    }

    pub fn restriction(&self, k: u64, h: u64) -> &IntMatrix {
        &self.restrictions[&(k, h)]
    }

    pub fn transfer(&self, k: u64, h: u64) -> &IntMatrix {
        &self.transfers[&(k, h)]
    }

    pub fn weyl(&self, h: u64) -> &IntMatrix {
        &self.weyl[&h]
    }

    /// Action of `g^i` on `M(G/H)`.
    pub fn weyl_power(&self, h: u64, i: u64) -> IntMatrix {
        let w = self.weyl(h);
        let mut out = IntMatrix::identity(self.rank(h));
        for _ in 0..i {
            out = w.mul(&out);
        }
        out
    }

    fn equal(&self, a: &IntMatrix, b: &IntMatrix) -> bool {
        match self.coefficients {
            Coefficients::Integers => a == b,
            Coefficients::Field(p) => FpMatrix::from_int(a, p) == FpMatrix::from_int(b, p),
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.group.order();
        let subgroups = self.group.subgroup_orders();
        let bad = |s: String| Err(Error::Mackey(s));
        for &h in &subgroups {
            let Some(&r) = self.ranks.get(&h) else { return bad(format!("missing M(G/H) for |H| = {h}")) };
            let Some(w) = self.weyl.get(&h) else { return bad(format!("missing Weyl action for |H| = {h}")) };
            if (w.rows(), w.cols()) != (r, r) {
                return bad(format!("Weyl action on |H| = {h} has the wrong shape"));
            }
            // H acts trivially on M(G/H)
            if !self.equal(&self.weyl_power(h, n / h), &IntMatrix::identity(r)) {
                return bad(format!("g^{} does not act trivially on M(G/H), |H| = {h}", n / h));
            }
        }
        for &h in &subgroups {
            for &k in subgroups.iter().filter(|&&k| h % k == 0) {
                let (rk, rh) = (self.rank(k), self.rank(h));
                let (Some(res), Some(tr)) = (self.restrictions.get(&(k, h)), self.transfers.get(&(k, h))) else {
                    return bad(format!("missing restriction or transfer for {k} ⊆ {h}"));
                };
                if (res.rows(), res.cols()) != (rk, rh) || (tr.rows(), tr.cols()) != (rh, rk) {
                    return bad(format!("restriction or transfer {k} ⊆ {h} has the wrong shape"));
                }
                if k == h {
                    if !self.equal(res, &IntMatrix::identity(rh)) || !self.equal(tr, &IntMatrix::identity(rh)) {
                        return bad(format!("res and tr from {h} to itself must be the identity"));
                    }
                    continue;
                }
                // equivariance: res W = W res, tr W = W tr
                if !self.equal(&res.mul(self.weyl(h)), &self.weyl(k).mul(res))
                    || !self.equal(&tr.mul(self.weyl(k)), &self.weyl(h).mul(tr))
                {
                    return bad(format!("res or tr for {k} ⊆ {h} is not Weyl-equivariant"));
                }
                // double cosets: res∘tr = Σ_{x ∈ H/K} x
                let step = n / h;
                let mut sum = IntMatrix::zeros(rk, rk);
                for i in 0..h / k {
                    sum = add(&sum, &self.weyl_power(k, i * step));
                }
                if !self.equal(&res.mul(tr), &sum) {
                    return bad(format!("double coset formula fails for {k} ⊆ {h}"));
                }
                for &l in subgroups.iter().filter(|&&l| k % l == 0 && l != k) {
                    if !self.equal(&self.restriction(l, k).mul(res), self.restriction(l, h))
                        || !self.equal(&tr.mul(self.transfer(l, k)), self.transfer(l, h))
                    {
                        return bad(format!("restriction or transfer is not transitive through {k}"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn add(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    IntMatrix::from_fn(a.rows(), a.cols(), |i, j| a.get(i, j) + b.get(i, j))
}

/// The constant Mackey functor of a trivial module: `M(G/H) = R`, restriction
/// the identity, `tr_K^H = [H:K]`, trivial Weyl actions.
pub fn fixed_point_mackey(coefficients: Coefficients, group: CyclicGroup) -> MackeyCoefficients {
    let subgroups = group.subgroup_orders();
    let one = IntMatrix::identity(1);
    let mut restrictions = BTreeMap::new();
    let mut transfers = BTreeMap::new();
    for &h in &subgroups {
        for &k in subgroups.iter().filter(|&&k| h % k == 0) {
            restrictions.insert((k, h), one.clone());
            transfers.insert((k, h), IntMatrix::from_fn(1, 1, |_, _| BigInt::from(h / k)));
        }
    }
    MackeyCoefficients {
        group,
        coefficients,
        ranks: subgroups.iter().map(|&h| (h, 1)).collect(),
        restrictions,
        transfers,
        weyl: subgroups.iter().map(|&h| (h, one.clone())).collect(),
        fixed_point: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_functor_transfers() {
        let g = CyclicGroup::new(6).unwrap();
        let z = fixed_point_mackey(Coefficients::Integers, g);
        assert_eq!(z.transfer(1, 6).get(0, 0), &BigInt::from(6));
        assert_eq!(z.restriction(2, 6), &IntMatrix::identity(1));
        assert!(z.validate().is_ok());
        let f = fixed_point_mackey(Coefficients::Field(5), CyclicGroup::new(5).unwrap());
        assert_eq!(FpMatrix::from_int(f.transfer(1, 5), 5).get(0, 0), 0);
        assert!(f.validate().is_ok());
    }

    #[test]
    fn rejects_broken_double_coset() {
        let g = CyclicGroup::new(2).unwrap();
        let one = IntMatrix::identity(1);
        let mut res = BTreeMap::new();
        let mut tr = BTreeMap::new();
        for (k, h) in [(1, 1), (2, 2), (1, 2)] {
            res.insert((k, h), one.clone());
            tr.insert((k, h), one.clone());
        }
        let ranks = [(1, 1), (2, 1)].into_iter().collect();
        let weyl: BTreeMap<u64, IntMatrix> = [(1, one.clone()), (2, one.clone())].into_iter().collect();
        let err = MackeyCoefficients::new(g, Coefficients::Integers, ranks, res.clone(), tr.clone(), weyl.clone());
        assert!(matches!(err, Err(Error::Mackey(_))));
        // over F_2 the composite is 1 while the coset sum is 0
        let ranks = [(1, 1), (2, 1)].into_iter().collect();
        let err = MackeyCoefficients::new(g, Coefficients::Field(2), ranks, res, tr, weyl);
        assert!(err.is_err());
    }

    #[test]
    fn sign_twisted_functor_validates() {
        // M(G/e) = ℤ with g = −1, M(G/G) = 0
        let g = CyclicGroup::new(2).unwrap();
        let ranks: BTreeMap<u64, usize> = [(1, 1), (2, 0)].into_iter().collect();
        let minus = IntMatrix::from_rows(&[vec![-1]]);
        let mut res = BTreeMap::new();
        let mut tr = BTreeMap::new();
        res.insert((1, 1), IntMatrix::identity(1));
        tr.insert((1, 1), IntMatrix::identity(1));
        res.insert((2, 2), IntMatrix::identity(0));
        tr.insert((2, 2), IntMatrix::identity(0));
        res.insert((1, 2), IntMatrix::zeros(1, 0));
        tr.insert((1, 2), IntMatrix::zeros(0, 1));
        let weyl = [(1, minus), (2, IntMatrix::identity(0))].into_iter().collect();
        // res∘tr = 0 but 1 + g = 0 on M(G/e): consistent
        assert!(MackeyCoefficients::new(g, Coefficients::Integers, ranks, res, tr, weyl).is_ok());
    }
}

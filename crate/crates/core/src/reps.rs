//! Real representations of cyclic groups and the RO(C_n) grading.
//!
//! The real irreducibles of `C_n` are the trivial representation and the
//! rotations `ξ^k` (`g` acts by the angle `2πk/n`) for `1 ≤ k ≤ ⌊n/2⌋`.
//! `ξ^k` is two-dimensional except for `k = n/2`, which is the sign
//! representation `σ`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("cyclic group order must be at least 2, got {0}")]
    BadOrder(u64),
    #[error("{h} is not the order of a subgroup of C_{n}")]
    NotASubgroup { n: u64, h: u64 },
    #[error("xi^{k} is not an irreducible label of C_{n}")]
    BadIrrep { n: u64, k: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("representation is not supported on the irreducibles of C_{0}")]
    WrongGroup(u64),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicGroup {
    order: u64,
}

impl CyclicGroup {
    pub fn new(order: u64) -> Result<Self, RepError> {
        if order < 2 {
            return Err(RepError::BadOrder(order));
        }
        Ok(CyclicGroup { order })
    }

    #[inline]
    pub fn order(self) -> u64 {
        self.order
    }

    pub fn check_subgroup(self, h: u64) -> Result<(), RepError> {
        if h == 0 || self.order % h != 0 {
            return Err(RepError::NotASubgroup { n: self.order, h });
        }
        Ok(())
    }

    /// Orders of all subgroups, increasing.
    pub fn subgroup_orders(self) -> Vec<u64> {
        (1..=self.order).filter(|h| self.order % h == 0).collect()
    }

    /// Trivial first, then `ξ^1 … ξ^{⌊n/2⌋}`.
    pub fn irreps(self) -> Vec<Irrep> {
        std::iter::once(Irrep::Trivial).chain((1..=self.order / 2).map(Irrep::Xi)).collect()
    }

    pub fn check_irrep(self, r: Irrep) -> Result<(), RepError> {
        match r {
            Irrep::Trivial => Ok(()),
            Irrep::Xi(k) if k >= 1 && 2 * k <= self.order => Ok(()),
            Irrep::Xi(k) => Err(RepError::BadIrrep { n: self.order, k }),
        }
    }

    pub fn real_dim(self, r: Irrep) -> u64 {
        match r {
            Irrep::Trivial => 1,
            Irrep::Xi(k) if 2 * k == self.order => 1,
            Irrep::Xi(_) => 2,
        }
    }

    /// Order of the kernel of the representation.
    pub fn kernel_order(self, r: Irrep) -> u64 {
        match r {
            Irrep::Trivial => self.order,
            Irrep::Xi(k) => self.order.gcd(&k),
        }
    }

    /// Whether the subgroup of order `h` acts trivially on `r`: the generator
    /// `g^{n/h}` rotates `ξ^k` by `2πk(n/h)/n`.
    pub fn fixes(self, r: Irrep, h: u64) -> Result<bool, RepError> {
        self.check_subgroup(h)?;
        Ok(match r {
            Irrep::Trivial => true,
            Irrep::Xi(k) => (k * (self.order / h)) % self.order == 0,
        })
    }

    pub fn reduced_regular(self) -> VirtualRep {
        let mut v = VirtualRep::zero(self);
        for k in 1..=self.order / 2 {
            v.add_irrep(Irrep::Xi(k), 1);
        }
        v
    }

    /// The regular representation as a sum of real irreducibles.
    pub fn regular(self) -> VirtualRep {
        self.reduced_regular() + VirtualRep::trivial(self, 1)
    }
}

impl fmt::Display for CyclicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{}", self.order)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Irrep {
    Trivial,
    Xi(u64),
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irrep::Trivial => write!(f, "1"),
            Irrep::Xi(1) => write!(f, "xi"),
            Irrep::Xi(k) => write!(f, "xi^{k}"),
        }
    }
}

/// An element of RO(C_n): integer multiplicities of real irreducibles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VirtualRep {
    group: CyclicGroup,
    #[serde(with = "irrep_pairs")]
    multiplicities: BTreeMap<Irrep, i64>,
}

mod irrep_pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::Irrep;

    pub fn serialize<S: Serializer>(m: &BTreeMap<Irrep, i64>, s: S) -> Result<S::Ok, S::Error> {
        m.iter().collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Irrep, i64>, D::Error> {
        Ok(Vec::<(Irrep, i64)>::deserialize(d)?.into_iter().filter(|&(_, c)| c != 0).collect())
    }
}

impl VirtualRep {
    pub fn zero(group: CyclicGroup) -> Self {
        VirtualRep { group, multiplicities: BTreeMap::new() }
    }

    pub fn trivial(group: CyclicGroup, m: i64) -> Self {
        let mut v = Self::zero(group);
        v.add_irrep(Irrep::Trivial, m);
        v
    }

    pub fn irreducible(group: CyclicGroup, r: Irrep, mult: i64) -> Result<Self, RepError> {
        group.check_irrep(r)?;
        let mut v = Self::zero(group);
        v.add_irrep(r, mult);
        Ok(v)
    }

    /// `m + n·ξ` where `ξ = ξ^1`.
    pub fn from_restricted(group: CyclicGroup, g: RestrictedGrading) -> Self {
        let mut v = Self::trivial(group, g.m);
        v.add_irrep(Irrep::Xi(1), g.n);
        v
    }

    fn add_irrep(&mut self, r: Irrep, mult: i64) {
        let e = self.multiplicities.entry(r).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.multiplicities.remove(&r);
        }
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn multiplicity(&self, r: Irrep) -> i64 {
        self.multiplicities.get(&r).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Irrep, i64)> + '_ {
        self.multiplicities.iter().map(|(&r, &m)| (r, m))
    }

    pub fn is_zero(&self) -> bool {
        self.multiplicities.is_empty()
    }

    /// All multiplicities non-negative.
    pub fn is_actual(&self) -> bool {
        self.multiplicities.values().all(|&m| m >= 0)
    }

    pub fn dim(&self) -> i64 {
        self.terms().map(|(r, m)| m * self.group.real_dim(r) as i64).sum()
    }

    /// Real dimension of the fixed subspace of the subgroup of order `h`.
    pub fn fixed_dim(&self, h: u64) -> Result<i64, RepError> {
        self.group.check_subgroup(h)?;
        let mut d = 0;
        for (r, m) in self.terms() {
            if self.group.fixes(r, h)? {
                d += m * self.group.real_dim(r) as i64;
            }
        }
        Ok(d)
    }

    pub fn trivial_part(&self) -> i64 {
        self.multiplicity(Irrep::Trivial)
    }

    pub fn without_trivial(&self) -> VirtualRep {
        let mut v = self.clone();
        v.multiplicities.remove(&Irrep::Trivial);
        v
    }

    /// Split into `(positive, negative)` actual parts with disjoint support.
    pub fn split(&self) -> (VirtualRep, VirtualRep) {
        let mut pos = Self::zero(self.group);
        let mut neg = Self::zero(self.group);
        for (r, m) in self.terms() {
            if m > 0 {
                pos.add_irrep(r, m);
            } else {
                neg.add_irrep(r, -m);
            }
        }
        (pos, neg)
    }

    /// `other` is a subrepresentation of `self` (both actual).
    pub fn contains(&self, other: &VirtualRep) -> bool {
        self.group == other.group && other.terms().all(|(r, m)| self.multiplicity(r) >= m)
    }

    /// Irreducible summands with repetition, in label order.
    pub fn summands(&self) -> Vec<Irrep> {
        let mut out = Vec::new();
        for (r, m) in self.terms() {
            for _ in 0..m.max(0) {
                out.push(r);
            }
        }
        out
    }

    /// Every nontrivial summand is the same irreducible.
    pub fn isotypic(&self) -> Option<(Irrep, i64)> {
        let mut it = self.without_trivial().multiplicities.into_iter();
        match (it.next(), it.next()) {
            (Some((r, m)), None) => Some((r, m)),
            _ => None,
        }
    }

    pub fn scale(&self, k: i64) -> VirtualRep {
        let mut v = Self::zero(self.group);
        for (r, m) in self.terms() {
            v.add_irrep(r, m * k);
        }
        v
    }

    /// Collapse to the grading `m + nξ`, valid for `𝔽_p` coefficients over
    /// `C_p`: every `ξ^k` differs from `ξ` by a class of zero dimension and
    /// zero fixed dimension.
    pub fn canonicalize(&self, p: u64) -> Result<RestrictedGrading, RepError> {
        if !is_prime(p) {
            return Err(RepError::NotPrime(p));
        }
        if self.group.order() != p {
            return Err(RepError::WrongGroup(p));
        }
        let m = self.trivial_part();
        let n = self.without_trivial().terms().map(|(_, k)| k).sum();
        Ok(RestrictedGrading { m, n })
    }
}

impl Add for VirtualRep {
    type Output = VirtualRep;
    fn add(mut self, rhs: VirtualRep) -> VirtualRep {
        assert_eq!(self.group, rhs.group, "adding representations of different groups");
        for (r, m) in rhs.terms() {
            self.add_irrep(r, m);
        }
        self
    }
}

impl Sub for VirtualRep {
    type Output = VirtualRep;
    fn sub(self, rhs: VirtualRep) -> VirtualRep {
        self + rhs.scale(-1)
    }
}

impl Neg for VirtualRep {
    type Output = VirtualRep;
    fn neg(self) -> VirtualRep {
        self.scale(-1)
    }
}

impl fmt::Display for VirtualRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // nontrivial labels first, trivial last, matching the input syntax
        let mut terms: Vec<(Irrep, i64)> = self.without_trivial().terms().collect();
        if self.trivial_part() != 0 {
            terms.push((Irrep::Trivial, self.trivial_part()));
        }
        for (i, (r, m)) in terms.into_iter().enumerate() {
            let sign = if m < 0 { "-" } else if i > 0 { "+" } else { "" };
            let a = m.abs();
            let sep = if i > 0 { " " } else { "" };
            let sp = if i > 0 { " " } else { "" };
            match (r, a) {
                (Irrep::Trivial, a) => write!(f, "{sep}{sign}{sp}{a}")?,
                (r, 1) => write!(f, "{sep}{sign}{sp}{r}")?,
                (r, a) => write!(f, "{sep}{sign}{sp}{a}*{r}")?,
            }
        }
        Ok(())
    }
}

/// The grading `m + nξ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RestrictedGrading {
    pub m: i64,
    pub n: i64,
}

impl RestrictedGrading {
    pub const fn new(m: i64, n: i64) -> Self {
        RestrictedGrading { m, n }
    }

    /// Total degree `m + n·dim ξ`, with `dim ξ = 1` for `p = 2` (the sign
    /// representation) and `2` otherwise.
    pub fn total_degree(self, p: u64) -> i64 {
        self.m + self.n * xi_dim(p)
    }
}

pub fn xi_dim(p: u64) -> i64 {
    if p == 2 {
        1
    } else {
        2
    }
}

impl Add for RestrictedGrading {
    type Output = RestrictedGrading;
    fn add(self, o: RestrictedGrading) -> RestrictedGrading {
        RestrictedGrading { m: self.m + o.m, n: self.n + o.n }
    }
}

impl Sub for RestrictedGrading {
    type Output = RestrictedGrading;
    fn sub(self, o: RestrictedGrading) -> RestrictedGrading {
        RestrictedGrading { m: self.m - o.m, n: self.n - o.n }
    }
}

impl fmt::Display for RestrictedGrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.n < 0 { '-' } else { '+' };
        write!(f, "{}{}{}*xi", self.m, sign, self.n.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Atom {
    One,
    Xi(u64),
    Sigma,
    ReducedRegular,
}

fn parse_terms(input: &str) -> Result<Vec<(i64, Atom)>, RepError> {
    let err = |reason: &str| RepError::Parse { input: input.to_string(), reason: reason.to_string() };
    let words: Vec<&str> = input.split_whitespace().collect();
    let glued = words.windows(2).any(|w| {
        let a = w[0].chars().last().unwrap();
        let b = w[1].chars().next().unwrap();
        (a.is_alphanumeric() || a == '^') && (b.is_alphanumeric() || b == '^')
    });
    if glued {
        return Err(err("missing operator between terms"));
    }
    let s: String = words.concat();
    if s.is_empty() {
        return Err(err("empty input"));
    }
    let mut terms = Vec::new();
    let mut rest = s.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = 1;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if !first {
            return Err(err("expected '+' or '-' between terms"));
        }
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        // "xi^-1" is not valid; exponents are positive integers
        rest = tail;
        if term.is_empty() {
            return Err(err("dangling sign"));
        }
        let (coef, atom) = match term.split_once('*') {
            Some((c, a)) => {
                let c: i64 = c.parse().map_err(|_| err("bad coefficient"))?;
                (c, a)
            }
            None => match term.parse::<i64>() {
                Ok(c) => {
                    terms.push((sign * c, Atom::One));
                    continue;
                }
                Err(_) => (1, term),
            },
        };
        let atom = match atom {
            "1" => Atom::One,
            "xi" => Atom::Xi(1),
            "sigma" => Atom::Sigma,
            "rhobar" => Atom::ReducedRegular,
            a => match a.strip_prefix("xi^") {
                Some(k) => Atom::Xi(k.parse().map_err(|_| err("bad exponent"))?),
                None => return Err(err(&format!("unknown atom {a:?}"))),
            },
        };
        terms.push((sign * coef, atom));
    }
    Ok(terms)
}

/// Parse representation syntax such as `"xi^2 + 2*xi^1 + 1"`, `"2*sigma"`,
/// or `"rhobar - 1"`. Whitespace is ignored.
pub fn parse_rep(group: CyclicGroup, input: &str) -> Result<VirtualRep, RepError> {
    let mut v = VirtualRep::zero(group);
    for (c, atom) in parse_terms(input)? {
        let part = match atom {
            Atom::One => VirtualRep::trivial(group, c),
            Atom::Xi(k) => VirtualRep::irreducible(group, Irrep::Xi(k), c)?,
            Atom::Sigma => {
                if group.order() % 2 != 0 {
                    return Err(RepError::Parse {
                        input: input.to_string(),
                        reason: format!("sigma needs even order, group is {group}"),
                    });
                }
                VirtualRep::irreducible(group, Irrep::Xi(group.order() / 2), c)?
            }
            Atom::ReducedRegular => group.reduced_regular().scale(c),
        };
        v = v + part;
    }
    Ok(v)
}

impl FromStr for RestrictedGrading {
    type Err = RepError;

    /// `"m+n*xi"`, e.g. `"2-3*xi"`, `"xi"`, `"-1"`.
    fn from_str(input: &str) -> Result<Self, RepError> {
        let mut g = RestrictedGrading::new(0, 0);
        for (c, atom) in parse_terms(input)? {
            match atom {
                Atom::One => g.m += c,
                Atom::Xi(1) | Atom::Sigma => g.n += c,
                _ => {
                    return Err(RepError::Parse {
                        input: input.to_string(),
                        reason: "restricted gradings only involve 1 and xi".into(),
                    })
                }
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: u64) -> CyclicGroup {
        CyclicGroup::new(n).unwrap()
    }

    #[test]
    fn reduced_regular_decomposition() {
        let r3 = c(3).reduced_regular();
        assert_eq!(r3.summands(), vec![Irrep::Xi(1)]);
        assert_eq!(r3.dim(), 2);
        let r2 = c(2).reduced_regular();
        assert_eq!(r2.summands(), vec![Irrep::Xi(1)]);
        assert_eq!(r2.dim(), 1);
        let r6 = c(6).reduced_regular();
        assert_eq!(r6.summands(), vec![Irrep::Xi(1), Irrep::Xi(2), Irrep::Xi(3)]);
        assert_eq!(r6.dim(), 5);
    }

    #[test]
    fn dimensions_and_fixed_points() {
        let r5 = c(5).reduced_regular();
        assert_eq!(r5.dim(), 4);
        assert_eq!(r5.fixed_dim(5).unwrap(), 0);
        let one = VirtualRep::trivial(c(7), 1);
        assert_eq!((one.dim(), one.fixed_dim(7).unwrap()), (1, 1));
        let xi2 = VirtualRep::irreducible(c(6), Irrep::Xi(2), 1).unwrap();
        assert_eq!(xi2.fixed_dim(2).unwrap(), 2);
        assert_eq!(xi2.fixed_dim(3).unwrap(), 0);
        assert!(matches!(xi2.fixed_dim(4), Err(RepError::NotASubgroup { .. })));
    }

    #[test]
    fn canonical_gradings() {
        let g5 = c(5);
        let xi2 = VirtualRep::irreducible(g5, Irrep::Xi(2), 1).unwrap();
        assert_eq!(xi2.canonicalize(5).unwrap(), RestrictedGrading::new(0, 1));
        assert_eq!(VirtualRep::trivial(g5, 3).canonicalize(5).unwrap(), RestrictedGrading::new(3, 0));
        assert_eq!(g5.reduced_regular().canonicalize(5).unwrap(), RestrictedGrading::new(0, 2));
        assert_eq!(
            VirtualRep::trivial(c(6), 1).canonicalize(6),
            Err(RepError::NotPrime(6))
        );
    }

    #[test]
    fn parsing() {
        let g = c(5);
        let v = parse_rep(g, "xi^2 + 2*xi^1 + 1").unwrap();
        assert_eq!(v.multiplicity(Irrep::Xi(1)), 2);
        assert_eq!(v.multiplicity(Irrep::Xi(2)), 1);
        assert_eq!(v.trivial_part(), 1);
        assert_eq!(parse_rep(g, " rhobar - 1 ").unwrap(), g.reduced_regular() - VirtualRep::trivial(g, 1));
        assert!(parse_rep(g, "xi^3").is_err());
        assert!(parse_rep(g, "sigma").is_err());
        assert_eq!(parse_rep(c(2), "2*sigma").unwrap().multiplicity(Irrep::Xi(1)), 2);
        assert_eq!("2-3*xi".parse::<RestrictedGrading>().unwrap(), RestrictedGrading::new(2, -3));
        assert_eq!(" - xi ".parse::<RestrictedGrading>().unwrap(), RestrictedGrading::new(0, -1));
        assert_eq!("0".parse::<RestrictedGrading>().unwrap(), RestrictedGrading::new(0, 0));
        assert!("xi^2".parse::<RestrictedGrading>().is_err());
        assert!("2 3".parse::<RestrictedGrading>().is_err());
    }

    #[test]
    fn display_round_trips() {
        let g = c(7);
        let v = parse_rep(g, "2*xi^3 - xi + 4").unwrap();
        assert_eq!(parse_rep(g, &v.to_string()).unwrap(), v);
        let r = RestrictedGrading::new(-2, 3);
        assert_eq!(r.to_string().parse::<RestrictedGrading>().unwrap(), r);
    }
}

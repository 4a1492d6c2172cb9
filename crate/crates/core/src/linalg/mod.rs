//! Exact matrix algebra over ℤ and 𝔽_p.

mod fp;
mod homology;
mod int;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use fp::{inv_mod, pow_mod, reduce_big, reduce_i64, Echelon, FpMatrix};
pub use homology::{homology_at, Homology, IntegralHomology, ModularHomology};
pub use int::{invariant_factors, snf, IntMatrix, SnfDecomposition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("d_out · d_in is not zero")]
    CompositionNotZero,
    #[error("shape mismatch: {left:?} cannot follow {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
}

/// Coefficient ring tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coefficients {
    Integers,
    Field(u64),
}

impl Coefficients {
    pub fn characteristic(self) -> u64 {
        match self {
            Coefficients::Integers => 0,
            Coefficients::Field(p) => p,
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Field(p) => write!(f, "F_{p}"),
        }
    }
}

pub(crate) mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| s.parse().map_err(D::Error::custom)).collect()
    }
}

/// A finitely generated abelian group `ℤ^r ⊕ ℤ/d_1 ⊕ … ⊕ ℤ/d_k`, or an
/// `𝔽_p`-vector space of dimension `r` (no torsion).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub coefficients: Coefficients,
    /// Free rank over ℤ, or dimension over 𝔽_p.
    pub free_rank: usize,
    /// Invariant factors > 1 forming a divisibility chain (ℤ only).
    #[serde(with = "bigint_strings")]
    pub torsion: Vec<BigInt>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

impl GroupPresentation {
    pub fn integral(free_rank: usize, mut torsion: Vec<BigInt>) -> Self {
        torsion.retain(|t| !t.is_one());
        debug_assert!(torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        GroupPresentation { coefficients: Coefficients::Integers, free_rank, torsion, labels: vec![] }
    }

    pub fn field(p: u64, dimension: usize) -> Self {
        GroupPresentation {
            coefficients: Coefficients::Field(p),
            free_rank: dimension,
            torsion: vec![],
            labels: vec![],
        }
    }

    pub fn zero(coefficients: Coefficients) -> Self {
        GroupPresentation { coefficients, free_rank: 0, torsion: vec![], labels: vec![] }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = labels;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of generators in the presentation (torsion first, then free).
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// 𝔽_p dimension; for ℤ the number of generators.
    pub fn dimension(&self) -> usize {
        self.generator_count()
    }

    /// Same group, ignoring labels.
    pub fn same_group(&self, other: &GroupPresentation) -> bool {
        self.coefficients == other.coefficients
            && self.free_rank == other.free_rank
            && self.torsion == other.torsion
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.coefficients {
            Coefficients::Integers => {
                match self.free_rank {
                    0 => {}
                    1 => parts.push("Z".to_string()),
                    r => parts.push(format!("Z^{r}")),
                }
                parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
            }
            Coefficients::Field(p) => match self.free_rank {
                1 => parts.push(format!("F_{p}")),
                r => parts.push(format!("F_{p}^{r}")),
            },
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(GroupPresentation::zero(Coefficients::Integers).to_string(), "0");
        assert_eq!(
            GroupPresentation::integral(2, vec![BigInt::from(3)]).to_string(),
            "Z^2 + Z/3"
        );
        assert_eq!(GroupPresentation::field(5, 1).to_string(), "F_5");
    }

    #[test]
    fn json_round_trip() {
        let g = GroupPresentation::integral(1, vec![BigInt::from(2), BigInt::from(6)])
            .with_labels(vec!["x".into()]);
        let s = serde_json::to_string(&g).unwrap();
        assert!(s.contains("\"6\""));
        let back: GroupPresentation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}

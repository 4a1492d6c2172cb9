//! Certificates that no `C_p`-map `X → S(ρ̄^{⊕(d−1)})` exists from a free source `X`.

use serde::{Deserialize, Serialize};

use crate::bredon::{ro_graded, CohomologyClass};
use crate::error::{Error, Result};
use crate::free_space::{FreeSpace, ModuleGenerator};
use crate::gcw::{disjoint_basepoint, ecp_skeleton, parse_gcw, sphere_model, write_gcw, GcwComplex};
use crate::linalg::{Coefficients, GroupPresentation};
use crate::mackey::fixed_point_mackey;
use crate::reps::{is_prime, CyclicGroup, Irrep, RepError, VirtualRep};

/// `H̃^W(S(V)_+; 𝔽_p)`, which vanishes whenever `W ⊇ V` (up to the mod-p collapse).
pub fn lemma_cohsphere_check(p: u64, v: &VirtualRep, w: &VirtualRep) -> Result<GroupPresentation> {
    if !is_prime(p) || v.group().order() != p || w.group() != v.group() {
        return Err(RepError::NotPrime(p).into());
    }
    if !v.is_actual() || v.is_zero() || v.trivial_part() > 0 {
        return Err(Error::InvalidProblem(format!("{v} is not a nonzero fixed-point-free representation")));
    }
    let (cw, cv) = (w.canonicalize(p)?, v.canonicalize(p)?);
    let contains = (w.clone() - v.clone()).is_actual() || (cw.m >= cv.m && cw.n >= cv.n);
    if !contains {
        return Err(Error::ContainmentFails { grading: w.to_string(), rep: v.to_string() });
    }
    let sv = disjoint_basepoint(&sphere_model(v)?);
    let f = fixed_point_mackey(Coefficients::Field(p), v.group());
    Ok(ro_graded(&sv, &f, w)?.group)
}

/// `a_ξ^k · 1 ∈ H̃^{kξ}(X_+; 𝔽_p)`, required to be nonzero.
pub fn source_witness(x: &GcwComplex, k: usize, p: u64) -> Result<CohomologyClass> {
    if x.group().order() != p {
        return Err(Error::InvalidProblem(format!("source is a C_{}-complex, expected C_{p}", x.group().order())));
    }
    let fs = FreeSpace::new(x)?;
    let mut c = fs.unit()?;
    for _ in 0..k {
        c = fs.act(ModuleGenerator::A, &c)?;
    }
    if c.is_zero() {
        return Err(Error::WitnessVanishes { k: k as i64 });
    }
    Ok(c)
}

/// `Conf_2(ℝ^d) ≃ S^{d−1}` with the antipodal action, as `S(dσ)`.
pub fn conf2_model(d: u64) -> Result<GcwComplex> {
    if d < 2 {
        return Err(Error::InvalidProblem(format!("d = {d}, need d ≥ 2")));
    }
    Ok(ecp_skeleton(2, d)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SourceModel {
    Conf2Model,
    SurrogateSkeleton { m: u64 },
    UserModel { assumption: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionProblem {
    pub p: u64,
    pub d: u64,
    pub source: SourceModel,
    /// The source complex in the text format.
    pub model: String,
}

impl ObstructionProblem {
    /// The default source: `S(dσ)` for `p = 2`, otherwise the smallest
    /// skeleton `S(mξ)` of dimension at least `(p−1)(d−1)+1`.
    pub fn new(p: u64, d: u64) -> Result<Self> {
        check(p, d)?;
        if p == 2 {
            return Ok(Self::with_model(p, d, SourceModel::Conf2Model, &conf2_model(d)?));
        }
        Self::surrogate(p, d, (p - 1) * (d - 1) / 2 + 1)
    }

    pub fn surrogate(p: u64, d: u64, m: u64) -> Result<Self> {
        check(p, d)?;
        Ok(Self::with_model(p, d, SourceModel::SurrogateSkeleton { m }, &ecp_skeleton(p, m)?))
    }

    pub fn user(p: u64, d: u64, x: &GcwComplex, assumption: impl Into<String>) -> Result<Self> {
        check(p, d)?;
        Ok(Self::with_model(p, d, SourceModel::UserModel { assumption: assumption.into() }, x))
    }

    fn with_model(p: u64, d: u64, source: SourceModel, x: &GcwComplex) -> Self {
        ObstructionProblem { p, d, source, model: write_gcw(x) }
    }

    pub fn group(&self) -> CyclicGroup {
        CyclicGroup::new(self.p).expect("checked prime")
    }

    /// `V = ρ̄^{⊕(d−1)}`.
    pub fn target_rep(&self) -> VirtualRep {
        self.group().reduced_regular().scale(self.d as i64 - 1)
    }

    /// `k` with `kξ` equivalent to `V`: `(p−1)(d−1)/2`, or `d−1` for `p = 2`.
    pub fn critical_k(&self) -> u64 {
        if self.p == 2 {
            self.d - 1
        } else {
            (self.p - 1) * (self.d - 1) / 2
        }
    }

    pub fn witness_grading(&self) -> VirtualRep {
        VirtualRep::irreducible(self.group(), Irrep::Xi(1), self.critical_k() as i64).expect("ξ exists")
    }

    pub fn source_complex(&self) -> Result<GcwComplex> {
        Ok(parse_gcw(&self.model)?)
    }
}

fn check(p: u64, d: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(RepError::NotPrime(p).into());
    }
    if d < 2 {
        return Err(Error::InvalidProblem(format!("d = {d}, need d ≥ 2")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetRecord {
    pub representation: String,
    pub grading: String,
    pub canonical_grading: String,
    pub group: GroupPresentation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub k: u64,
    pub class: CohomologyClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    pub problem: ObstructionProblem,
    pub target_record: TargetRecord,
    pub witness_record: WitnessRecord,
    pub assumptions: Vec<String>,
    pub conclusion: String,
    pub engine_version: String,
    pub rechecked: bool,
}

fn target_record(problem: &ObstructionProblem) -> Result<TargetRecord> {
    let v = problem.target_rep();
    let w = problem.witness_grading();
    let group = lemma_cohsphere_check(problem.p, &v, &w)?;
    Ok(TargetRecord {
        representation: v.to_string(),
        grading: w.to_string(),
        canonical_grading: w.canonicalize(problem.p)?.to_string(),
        group,
    })
}

fn witness_record(problem: &ObstructionProblem) -> Result<WitnessRecord> {
    let x = problem.source_complex()?;
    let k = problem.critical_k();
    let class = source_witness(&x, k as usize, problem.p)?;
    Ok(WitnessRecord { k, class })
}

fn assumptions(problem: &ObstructionProblem) -> Vec<String> {
    let (p, d) = (problem.p, problem.d);
    let top = (p - 1) * (d - 1);
    match &problem.source {
        SourceModel::Conf2Model => vec![format!("Conf_2(R^{d}) is C_2-homotopy equivalent to S^{} with the antipodal action", d - 1)],
        SourceModel::SurrogateSkeleton { m } => vec![
            format!("surrogate source: the free skeleton S({m}xi) of EC_{p} stands in for Conf_{p}(R^{d})"),
            format!(
                "transfer to Conf_{p}(R^{d}) assumes the classifying map Conf_{p}(R^{d})/C_{p} -> BC_{p} is nonzero on H^{top}(-; F_{p}) (not computed here)"
            ),
        ],
        SourceModel::UserModel { assumption } => vec![format!("user-supplied source model: {assumption}")],
    }
}

fn conclusion(problem: &ObstructionProblem) -> String {
    let (p, d) = (problem.p, problem.d);
    let source = match &problem.source {
        SourceModel::Conf2Model => format!("Conf_2(R^{d}) ~ S^{}", d - 1),
        SourceModel::SurrogateSkeleton { m } => format!("S({m}xi)"),
        SourceModel::UserModel { .. } => "the supplied source".into(),
    };
    let mut s = format!(
        "There is no C_{p}-equivariant map {source} -> S({}): the restriction of a_xi^{}.1 along such a map would be nonzero in a group that vanishes.",
        problem.target_rep(),
        problem.critical_k()
    );
    match problem.source {
        SourceModel::Conf2Model => s.push_str(&format!(
            " Hence there is no S_2-equivariant map Conf_2(R^{d}) -> S(W_2^{{+{}}}).",
            d - 1
        )),
        _ => s.push_str(&format!(
            " Under the stated assumptions, there is no S_{p}-equivariant map Conf_{p}(R^{d}) -> S(W_{p}^{{+{}}}).",
            d - 1
        )),
    }
    s
}

fn failed(record: &str, e: Error) -> Error {
    Error::CertificateFailed(format!("{record}: {e}"))
}

pub fn certify(problem: &ObstructionProblem) -> Result<ObstructionCertificate> {
    let target = target_record(problem).map_err(|e| failed("target_record", e))?;
    if !target.group.is_zero() {
        return Err(failed(
            "target_record",
            Error::InvalidProblem(format!("H^{} of S(V)_+ is {}, not 0", target.grading, target.group)),
        ));
    }
    let witness = witness_record(problem).map_err(|e| failed("witness_record", e))?;
    let mut cert = ObstructionCertificate {
        problem: problem.clone(),
        target_record: target,
        witness_record: witness,
        assumptions: assumptions(problem),
        conclusion: conclusion(problem),
        engine_version: crate::ENGINE_VERSION.to_string(),
        rechecked: false,
    };
    recheck(&cert)?;
    cert.rechecked = true;
    Ok(cert)
}

/// Recompute both records from the serialized problem and compare.
pub fn recheck(cert: &ObstructionCertificate) -> Result<()> {
    let target = target_record(&cert.problem).map_err(|e| failed("target_record", e))?;
    if target != cert.target_record || !target.group.is_zero() {
        return Err(failed("target_record", Error::ClassMismatch("recomputed target differs".into())));
    }
    let witness = witness_record(&cert.problem).map_err(|e| failed("witness_record", e))?;
    if witness != cert.witness_record {
        return Err(failed("witness_record", Error::ClassMismatch("recomputed witness differs".into())));
    }
    Ok(())
}

impl ObstructionCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::CertificateFailed(format!("unreadable certificate: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcw::GcwBuilder;
    use crate::reps::parse_rep;

    fn c(n: u64) -> CyclicGroup {
        CyclicGroup::new(n).unwrap()
    }

    #[test]
    fn cohsphere_examples() {
        let r = |n, s: &str| parse_rep(c(n), s).unwrap();
        assert!(lemma_cohsphere_check(3, &r(3, "xi"), &r(3, "xi")).unwrap().is_zero());
        assert!(lemma_cohsphere_check(5, &r(5, "xi+xi^2"), &r(5, "xi+xi^2")).unwrap().is_zero());
        assert!(lemma_cohsphere_check(3, &r(3, "xi"), &r(3, "1+xi")).unwrap().is_zero());
        assert!(matches!(
            lemma_cohsphere_check(3, &r(3, "2*xi"), &r(3, "xi")),
            Err(Error::ContainmentFails { .. })
        ));
    }

    #[test]
    fn witnesses() {
        let w = source_witness(&ecp_skeleton(3, 2).unwrap(), 1, 3).unwrap();
        assert_eq!(w.grading, parse_rep(c(3), "xi").unwrap());
        let w = source_witness(&conf2_model(3).unwrap(), 2, 2).unwrap();
        assert_eq!(w.grading, parse_rep(c(2), "2*xi").unwrap());
        let mut b = GcwBuilder::new(c(3));
        b.add_cell("v", 0, 1).unwrap();
        let orbit = b.build().unwrap();
        assert_eq!(source_witness(&orbit, 1, 3).unwrap_err(), Error::WitnessVanishes { k: 1 });
    }

    #[test]
    fn conf2_models() {
        assert_eq!(conf2_model(2).unwrap().orbit_counts(), vec![1, 1]);
        let rp3 = conf2_model(4).unwrap().quotient();
        let z = Coefficients::Integers;
        assert_eq!(rp3.homology(1, z).unwrap(), GroupPresentation::integral(0, vec![2.into()]));
        assert_eq!(rp3.homology(3, z).unwrap(), GroupPresentation::integral(1, vec![]));
        assert!(conf2_model(1).is_err());
    }

    #[test]
    fn certificates() {
        let cert = certify(&ObstructionProblem::new(2, 3).unwrap()).unwrap();
        assert!(cert.rechecked);
        let back = ObstructionCertificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        recheck(&back).unwrap();
        let cert = certify(&ObstructionProblem::surrogate(3, 2, 2).unwrap()).unwrap();
        assert_eq!(cert.assumptions.len(), 2);
        let mut b = GcwBuilder::new(c(3));
        b.add_cell("v", 0, 1).unwrap();
        let orbit = b.build().unwrap();
        let bad = ObstructionProblem::user(3, 2, &orbit, "a free orbit").unwrap();
        assert!(matches!(certify(&bad), Err(Error::CertificateFailed(m)) if m.contains("witness_record")));
    }

    #[test]
    fn tampered_certificate_fails() {
        let mut cert = certify(&ObstructionProblem::new(2, 2).unwrap()).unwrap();
        cert.witness_record.class.vector[0] += 1;
        assert!(matches!(recheck(&cert), Err(Error::CertificateFailed(_))));
    }
}

//! Exact verification of the two fixed-point-free counterexamples.
//!
//! The powers-of-two space defeats every relaxation `D = d(T^(k+1) x, T^k y)`
//! with `k ≥ 2`; the `z`-space defeats all remaining members of the family.
//! [`verify_theorem`] dispatches every enumerated relaxation to the right
//! verifier and also confirms that neither map has a fixed point.
//!
//! Some cases could be merged; the certificates keep them separate so each
//! one lines up with a single case of the hand proof.

mod certificate;
mod claims;
mod lemmas;
mod report;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::condition::{enumerate_family, RelaxationSpec};
use crate::error::Result;
use crate::exec::Exec;
use crate::metric::Space;

pub use certificate::{
    BoundaryCheck, CaseCertificate, CheckKind, Layout, LinearForm, ReducedInequality, Region, TailArgument,
};
pub use claims::{
    claim1_certificates, claim1_q_sq, claim1_relaxation, claim2_certificates, q1_sq, q2_sq, q3_sq, reduce_for_zeta,
    scan, verify_claim1, verify_claim2, Reduction,
};
pub use lemmas::{verify_lemma, verify_lemma1, verify_lemma2, Lemma};
pub use report::{
    DispatchRecord, Failure, FixedPointScan, GridRow, GridSummary, ParamValue, Params, Status, Subject,
    VerificationReport, Witness,
};

/// Which counterexample defeats a relaxation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Example {
    /// `{2ⁿ}` with `T(x) = 2x`.
    ExamplePow2,
    /// `{zⁿ}` with `T(x) = zx`, `z = −1 + i√3`.
    ExampleZeta,
}

pub fn classify_relaxation(d: &RelaxationSpec) -> Example {
    if d.is_pow2_shape() {
        Example::ExamplePow2
    } else {
        Example::ExampleZeta
    }
}

/// Report wrapper around [`classify_relaxation`].
pub fn classify_report(d: &RelaxationSpec) -> VerificationReport {
    let mut report = VerificationReport::new(Subject::Classify)
        .param("family", d.family().name())
        .param("a", d.a())
        .param("b", d.b())
        .param("term", d.term().to_string());
    report.classification = Some(classify_relaxation(d));
    report.finalize(true)
}

/// Exponents up to which the no-fixed-point scan always runs.
const FIXED_POINT_SCAN_MIN: u64 = 64;

/// Exponents `n ≤ max_exp` with `T(pⁿ) = pⁿ`; always empty for the power spaces.
pub fn fixed_point_scan(space: &Space, max_exp: u64) -> Result<FixedPointScan> {
    let mut fixed_points = Vec::new();
    for n in 0..=max_exp {
        let p = space.point(n);
        if space.dist_sq(&p, &space.apply_map(&p, 1)?)?.is_zero() {
            fixed_points.push(n);
        }
    }
    Ok(FixedPointScan { space: space.tag(), max_exp, fixed_points })
}

/// Sweeps every relaxation with `a ≤ a_max`, `b ≤ b_max`, verifying each with
/// the example it is classified to, plus both lemmas and the fixed-point scans.
pub fn verify_theorem(a_max: u32, b_max: u32, max_exp: u64, exec: Exec) -> Result<VerificationReport> {
    let specs = enumerate_family(a_max, b_max);

    // One claim-1 run per k; many specs share it.
    let ks: Vec<u32> = {
        let mut ks: Vec<u32> = specs.iter().filter(|d| d.is_pow2_shape()).map(|d| d.b()).collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    };
    let claim1: BTreeMap<u32, VerificationReport> = ks
        .iter()
        .copied()
        .zip(exec.map(&ks, |&k| verify_claim1(k, max_exp, Exec::Sequential)))
        .map(|(k, r)| r.map(|r| (k, r)))
        .collect::<Result<_>>()?;
    let zeta_specs: Vec<RelaxationSpec> = specs.iter().copied().filter(|d| !d.is_pow2_shape()).collect();
    let claim2: Vec<VerificationReport> =
        exec.map(&zeta_specs, |d| verify_claim2(d, max_exp, Exec::Sequential)).into_iter().collect::<Result<_>>()?;
    let mut claim2 = zeta_specs.iter().copied().zip(claim2).collect::<BTreeMap<_, _>>();

    let mut report = VerificationReport::new(Subject::Theorem)
        .param("a_max", a_max)
        .param("b_max", b_max)
        .param("max_exp", max_exp)
        .param("specs", specs.len() as u64);

    let mut pairs = 0;
    let mut sup: Option<crate::ring::Rational> = None;
    let mut any_infinite = false;
    for d in &specs {
        let example = classify_relaxation(d);
        let sub = match example {
            Example::ExamplePow2 => claim1[&d.b()].clone(),
            Example::ExampleZeta => claim2.remove(d).expect("verified above"),
        };
        if let Some(g) = &sub.grid {
            pairs += g.pairs;
            any_infinite |= g.infinite;
            if let Some(s) = &g.sup_ratio_sq {
                if sup.as_ref().is_none_or(|cur| s > cur) {
                    sup = Some(s.clone());
                }
            }
        }
        if !sub.status.is_pass() {
            report.failures.push(Failure {
                case: format!("{} {}", d, d.term()),
                m: None,
                n: None,
                lhs_sq: None,
                rhs_sq: None,
            });
            report.failures.extend(sub.failures.iter().cloned());
        }
        report.dispatch.push(DispatchRecord {
            spec: *d,
            term: d.term().to_string(),
            example,
            status: sub.status,
            sup_ratio_sq: sub.grid.as_ref().and_then(|g| g.sup_ratio_sq.clone()),
        });
    }

    let lemma_cap = max_exp.max(4);
    for lemma in [Lemma::Lemma1, Lemma::Lemma2] {
        let r = verify_lemma(lemma, lemma_cap, lemma_cap, exec)?;
        report.failures.extend(r.failures);
        report.certificates.extend(r.certificates);
    }

    let scan_cap = max_exp.max(FIXED_POINT_SCAN_MIN);
    for space in [Space::Pow2, Space::Zeta] {
        report.fixed_point_scans.push(fixed_point_scan(&space, scan_cap)?);
    }
    let no_fixed_points = report.fixed_point_scans.iter().all(|s| s.fixed_points.is_empty());

    report.grid = Some(GridSummary {
        max_exp,
        pairs,
        sup_ratio_sq: if any_infinite { None } else { sup },
        min_value_sq: None,
        infinite: any_infinite,
        witness: None,
    });
    Ok(report.finalize(no_fixed_points && !any_infinite))
}

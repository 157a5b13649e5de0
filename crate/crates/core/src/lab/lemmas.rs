//! Lower bounds on `|z^(u+c) − z^v|` for the `z`-example.
//!
//! The tail of each bound uses the reverse triangle inequality: with
//! `p = u + c` and `q = v`, `|zᵖ − z^q| ≥ |2ᵖ − 2^q| ≥ 2^(max(p,q)−1)`, and the
//! tail regions are exactly those with `max(p, q) ≥ 4`, where the chain ends in
//! `8 > √21` (`64 ≥ 21` on squares) for the first bound.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::exec::{exponent_grid, Exec};
use crate::metric::{pow2_dist_sq, zeta_dist_sq};
use crate::ring::Rational;

use super::certificate::{BoundaryCheck, CaseCertificate, CheckKind, TailArgument};
use super::report::{Failure, GridRow, GridSummary, Subject, VerificationReport, Witness};

/// Smallest `max(p, q)` in either tail region.
const TAIL_MIN_EXPONENT: u64 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma {
    /// `|z^(u+2) − z^v|² ≥ 21` for `u + 2 ≠ v`.
    Lemma1,
    /// `|z^(u+3) − z^v|² ≥ 49` for `u + 3 ≠ v`.
    Lemma2,
}

impl Lemma {
    pub fn offset(self) -> u64 {
        match self {
            Lemma::Lemma1 => 2,
            Lemma::Lemma2 => 3,
        }
    }

    pub fn bound_sq(self) -> u64 {
        match self {
            Lemma::Lemma1 => 21,
            Lemma::Lemma2 => 49,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Lemma::Lemma1 => "lemma1",
            Lemma::Lemma2 => "lemma2",
        }
    }

    fn subject(self) -> Subject {
        match self {
            Lemma::Lemma1 => Subject::Lemma1,
            Lemma::Lemma2 => Subject::Lemma2,
        }
    }

    /// Whether `(u, v)` falls in the region handled by the reverse triangle
    /// bound rather than by explicit evaluation.
    pub fn in_tail(self, u: u64, v: u64) -> bool {
        match self {
            Lemma::Lemma1 => u > 1 || v > 3,
            Lemma::Lemma2 => u > 0 || v > 3,
        }
    }

    pub fn admissible(self, u: u64, v: u64) -> bool {
        u + self.offset() != v
    }

    /// The finitely many admissible `(u, v)` outside the tail region.
    pub fn base_cases(self) -> Vec<(u64, u64)> {
        exponent_grid(TAIL_MIN_EXPONENT)
            .into_iter()
            .filter(|&(u, v)| self.admissible(u, v) && !self.in_tail(u, v))
            .collect()
    }

    /// Tail points with `max(u + c, v) = 4`, the region's minimal corners.
    pub fn tail_corners(self) -> Vec<(u64, u64)> {
        exponent_grid(TAIL_MIN_EXPONENT)
            .into_iter()
            .filter(|&(u, v)| {
                self.admissible(u, v) && self.in_tail(u, v) && (u + self.offset()).max(v) == TAIL_MIN_EXPONENT
            })
            .collect()
    }

    /// `|z^(u+c) − z^v|²`.
    pub fn value_sq(self, u: u64, v: u64) -> BigUint {
        zeta_dist_sq(u + self.offset(), v)
    }
}

pub fn verify_lemma1(u_max: u64, v_max: u64, exec: Exec) -> Result<VerificationReport> {
    verify_lemma(Lemma::Lemma1, u_max, v_max, exec)
}

pub fn verify_lemma2(u_max: u64, v_max: u64, exec: Exec) -> Result<VerificationReport> {
    verify_lemma(Lemma::Lemma2, u_max, v_max, exec)
}

pub fn verify_lemma(lemma: Lemma, u_max: u64, v_max: u64, exec: Exec) -> Result<VerificationReport> {
    if u_max < TAIL_MIN_EXPONENT || v_max < TAIL_MIN_EXPONENT {
        return Err(Error::InvalidArgument(format!("lemma grids need u_max, v_max >= {TAIL_MIN_EXPONENT}")));
    }
    let bound = BigUint::from(lemma.bound_sq());
    let cells: Vec<(u64, u64)> =
        (0..=u_max).flat_map(|u| (0..=v_max).map(move |v| (u, v))).filter(|&(u, v)| lemma.admissible(u, v)).collect();
    let values = exec.map(&cells, |&(u, v)| lemma.value_sq(u, v));

    let mut report = VerificationReport::new(lemma.subject()).param("u_max", u_max).param("v_max", v_max);
    let mut min: Option<(BigUint, Witness)> = None;
    for (&(u, v), value) in cells.iter().zip(&values) {
        let holds = *value >= bound;
        if !holds {
            report.failures.push(Failure {
                case: format!("{}/grid", lemma.name()),
                m: Some(u),
                n: Some(v),
                lhs_sq: Some(bound.clone()),
                rhs_sq: Some(value.clone()),
            });
        }
        if min.as_ref().is_none_or(|(best, _)| value < best) {
            min = Some((value.clone(), Witness { m: u, n: v }));
        }
        report.rows.push(GridRow { m: u, n: v, lhs_sq: bound.clone(), rhs_sq: value.clone(), argmax: None, holds });
    }
    let (min_value, witness) = min.expect("grid is non-empty");

    report.certificates.push(base_certificate(lemma));
    report.certificates.push(tail_certificate(lemma, u_max, v_max));
    report.grid = Some(GridSummary {
        max_exp: u_max.max(v_max),
        pairs: cells.len() as u64,
        sup_ratio_sq: None,
        min_value_sq: Some(min_value),
        infinite: false,
        witness: Some(witness),
    });
    Ok(report.finalize(true))
}

fn base_certificate(lemma: Lemma) -> CaseCertificate {
    let bound = BigUint::from(lemma.bound_sq());
    let checks: Vec<BoundaryCheck> = lemma
        .base_cases()
        .into_iter()
        .map(|(u, v)| {
            let value = lemma.value_sq(u, v);
            BoundaryCheck {
                label: format!("u={u}, v={v}"),
                kind: CheckKind::Bound,
                m: u,
                n: v,
                holds: value >= bound,
                lhs_sq: bound.clone(),
                rhs_sq: value,
            }
        })
        .collect();
    let verified = checks.iter().all(|c| c.holds);
    CaseCertificate {
        case_id: format!("{}/base", lemma.name()),
        dominating_term: None,
        q_sq: Rational::one(),
        region: match lemma {
            Lemma::Lemma1 => "u <= 1 and v <= 3".into(),
            Lemma::Lemma2 => "u = 0 and v <= 3".into(),
        },
        reduced: None,
        boundary_checks: checks,
        tail: TailArgument::None,
        verified,
    }
}

/// Records `|2ᵖ − 2^q|² ≥ 64 ≥ bound` at the minimal tail corners, and checks
/// on the whole tail grid both the reverse triangle step and the closed form
/// `|2ᵖ − 2^q| ≥ 2^(max(p,q)−1)`.
fn tail_certificate(lemma: Lemma, u_max: u64, v_max: u64) -> CaseCertificate {
    let bound = BigUint::from(lemma.bound_sq());
    let eight_sq = BigUint::from(64u32);
    let checks: Vec<BoundaryCheck> = lemma
        .tail_corners()
        .into_iter()
        .map(|(u, v)| {
            let real_gap = pow2_dist_sq(u + lemma.offset(), v);
            BoundaryCheck {
                kind: CheckKind::Bound,
                label: format!("corner u={u}, v={v}: |2^{} - 2^{v}|^2", u + lemma.offset()),
                m: u,
                n: v,
                holds: real_gap >= eight_sq && eight_sq >= bound,
                lhs_sq: bound.clone(),
                rhs_sq: real_gap,
            }
        })
        .collect();

    let tail_consistent = (0..=u_max)
        .flat_map(|u| (0..=v_max).map(move |v| (u, v)))
        .filter(|&(u, v)| lemma.admissible(u, v) && lemma.in_tail(u, v))
        .all(|(u, v)| {
            let (p, q) = (u + lemma.offset(), v);
            let real_gap = pow2_dist_sq(p, q);
            let closed_form = BigUint::from(1u32) << (2 * (p.max(q) - 1));
            p.max(q) >= TAIL_MIN_EXPONENT && zeta_dist_sq(p, q) >= real_gap && real_gap >= closed_form
        });

    let verified = tail_consistent && !checks.is_empty() && checks.iter().all(|c| c.holds);
    CaseCertificate {
        case_id: format!("{}/tail", lemma.name()),
        dominating_term: None,
        q_sq: Rational::one(),
        region: match lemma {
            Lemma::Lemma1 => "u > 1 or v > 3".into(),
            Lemma::Lemma2 => "u > 0 or v > 3".into(),
        },
        reduced: None,
        boundary_checks: checks,
        tail: TailArgument::ReverseTriangle,
        verified,
    }
}

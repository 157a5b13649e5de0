//! Verifiers for the two counterexamples.
//!
//! Each verifier runs two independent checks: an exhaustive grid scan of
//! condition (C) with the relaxation term `D`, and one certificate per proof
//! case (see [`super::certificate`]). The diagonal `m = n` needs no certificate
//! since `d(Tx, Ty) = 0` there.

use crate::condition::{make_cx, Condition, ConditionTemplate, Family, Operand, RelaxationSpec, TermSpec};
use crate::error::{Error, Result};
use crate::exec::{exponent_grid, Exec};
use crate::metric::{Point, Space};
use crate::ring::Rational;
use crate::solver::{estimate_q, RatioEstimate, SupRatio};

use super::certificate::{
    exact, BoundaryCheck, CaseCertificate, CaseSpec, CheckKind, Layout, LinearForm, ReducedInequality, Region,
    TailArgument,
};
use super::lemmas::Lemma;
use super::report::{Failure, GridRow, GridSummary, Subject, VerificationReport, Witness};

/// `q = 3/4` for the powers-of-two example.
pub fn claim1_q_sq() -> Rational {
    Rational::frac(9, 16)
}

/// `q₁ = 5/(2√7)`.
pub fn q1_sq() -> Rational {
    Rational::frac(25, 28)
}

/// `q₂ = √3/3`.
pub fn q2_sq() -> Rational {
    Rational::frac(1, 3)
}

/// `q = 2/√7`, the constant of the second reduced shape in the `m = n − 1` case.
pub fn lemma2_q_sq() -> Rational {
    Rational::frac(4, 7)
}

/// `q₃ = max(√3/3, 2/√7) = 2/√7`.
pub fn q3_sq() -> Rational {
    lemma2_q_sq()
}

/// The relaxation `D = d(T^(k+1) x, T^k y)`.
pub fn claim1_relaxation(k: u32) -> Result<RelaxationSpec> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("the powers-of-two example requires k >= 2, got {k}")));
    }
    RelaxationSpec::new(Family::XyA3, k + 1, k)
}

/// Certificates for the three cases `m > n`, `m = n − 1`, `m < n − 1`.
pub fn claim1_certificates(k: u32) -> Result<Vec<CaseCertificate>> {
    let d = claim1_relaxation(k)?;
    let space = Space::Pow2;
    let pow_k = 1i64 << k;
    let cases = [
        CaseSpec {
            case_id: "claim1/m>n".into(),
            term: TermSpec::new(Operand::x(2), Operand::y(1))?,
            q_sq: Rational::frac(1, 4),
            region: Region::new(Layout::XAbove, 1, None),
            // d(Tx,Ty) = 2t − 2, d(T²x,Ty) = 4t − 2 (scale 2ⁿ)
            reduced: ReducedInequality { lhs_upper: LinearForm::new(2, -2, 1), rhs_lower: LinearForm::new(4, -2, 1) },
            tail: TailArgument::GeometricMonotone,
            space: &space,
        },
        CaseSpec {
            case_id: "claim1/m=n-1".into(),
            term: TermSpec::new(Operand::y(1), Operand::x(0))?,
            q_sq: Rational::frac(4, 9),
            region: Region::single(Layout::YAbove, 1),
            // d(Tx,Ty) = 2t − 2, d(Ty,x) = 2t − 1 (scale 2ᵐ)
            reduced: ReducedInequality { lhs_upper: LinearForm::new(2, -2, 1), rhs_lower: LinearForm::new(2, -1, 1) },
            tail: TailArgument::None,
            space: &space,
        },
        CaseSpec {
            case_id: "claim1/m<n-1".into(),
            term: d.term(),
            q_sq: claim1_q_sq(),
            region: Region::new(Layout::YAbove, 2, None),
            // d(T^(k+1)x, T^k y) = 2ᵏ·t − 2^(k+1) (scale 2ᵐ)
            reduced: ReducedInequality {
                lhs_upper: LinearForm::new(2, -2, 1),
                rhs_lower: LinearForm::new(pow_k, -2 * pow_k, 1),
            },
            tail: TailArgument::GeometricMonotone,
            space: &space,
        },
    ];
    cases.into_iter().map(CaseSpec::build).collect()
}

/// Condition (C) with `D = d(T^(k+1) x, T^k y)` on `{2ⁿ}` with `q = 3/4`.
pub fn verify_claim1(k: u32, max_exp: u64, exec: Exec) -> Result<VerificationReport> {
    if max_exp < 4 {
        return Err(Error::InvalidArgument("claim 1 needs max_exp >= 4".into()));
    }
    let d = claim1_relaxation(k)?;
    let condition = Condition::new(claim1_q_sq(), make_cx(&d))?;
    let mut report = VerificationReport::new(Subject::Claim1)
        .param("k", k)
        .param("max_exp", max_exp)
        .param("term", d.term().to_string());
    grid_check(&mut report, &Space::Pow2, &condition, max_exp, exec)?;
    report.certificates = claim1_certificates(k)?;
    Ok(report.finalize(true))
}

/// How the relaxation term looks on the pair `x = z^(n−1)`, `y = zⁿ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub lemma: Lemma,
    pub u: u64,
    pub v: u64,
}

/// Reduces `D` at `x = z^(n−1)`, `y = zⁿ` to either
/// `|z^(n+a') − z^(n+b')|` (first lemma, `u = a' − 2`, `v = b'`) or
/// `|z^(n+a') − z^(n−1+b')|` (second lemma, `u = a' − 2`, `v = b'`).
pub fn reduce_for_zeta(d: &RelaxationSpec) -> Result<Reduction> {
    if d.is_pow2_shape() {
        return Err(Error::WrongExample(d.term().to_string()));
    }
    let (a, b) = (d.a() as u64, d.b() as u64);
    let (lemma, a_red, b_red) = match d.family() {
        Family::XyA3 => (Lemma::Lemma1, a - 1, b),
        Family::XyB2 => (Lemma::Lemma2, b, a),
        Family::Xx => (Lemma::Lemma2, a - 1, b),
        Family::Yy => (Lemma::Lemma1, a, b),
    };
    debug_assert!(a_red >= 2);
    let red = Reduction { lemma, u: a_red - 2, v: b_red };
    debug_assert!(lemma.admissible(red.u, red.v));
    Ok(red)
}

/// Certificates for `m = n + s`, `n = m + s` (`s ≥ 2`), `m = n + 1`, `m = n − 1`.
pub fn claim2_certificates(d: &RelaxationSpec) -> Result<Vec<CaseCertificate>> {
    let red = reduce_for_zeta(d)?;
    let space = Space::Zeta;
    // Triangle bound |z^(s+1) − z| ≤ 2(2ˢ + 1) against d(Tx,x) = 2ˢ√7 (scale 2ⁿ).
    let gap_case = |id: &str, layout, term| CaseSpec {
        case_id: id.into(),
        term,
        q_sq: q1_sq(),
        region: Region::new(layout, 2, None),
        reduced: ReducedInequality { lhs_upper: LinearForm::new(2, 2, 1), rhs_lower: LinearForm::new(1, 0, 7) },
        tail: TailArgument::GeometricMonotone,
        space: &space,
    };
    // At x = z^(n−1): d(Tx,Ty) = 2√7 and D ≥ 2√21 or D ≥ 7 (scale 2^(n−1)).
    let (lemma_q, lemma_form) = match red.lemma {
        Lemma::Lemma1 => (q2_sq(), LinearForm::new(0, 2, 21)),
        Lemma::Lemma2 => (lemma2_q_sq(), LinearForm::new(0, 7, 1)),
    };
    let lemma_tag = match red.lemma {
        Lemma::Lemma1 => "lemma1",
        Lemma::Lemma2 => "lemma2",
    };
    let cases = [
        gap_case("claim2/m=n+s", Layout::XAbove, TermSpec::new(Operand::x(1), Operand::x(0))?),
        gap_case("claim2/n=m+s", Layout::YAbove, TermSpec::new(Operand::y(1), Operand::y(0))?),
        CaseSpec {
            case_id: "claim2/m=n+1".into(),
            term: TermSpec::new(Operand::x(2), Operand::y(1))?,
            q_sq: q2_sq(),
            region: Region::single(Layout::XAbove, 1),
            // d(Tx,Ty) = 2√7, d(T²x,Ty) = 2√21 (scale 2ⁿ)
            reduced: ReducedInequality { lhs_upper: LinearForm::new(0, 2, 7), rhs_lower: LinearForm::new(0, 2, 21) },
            tail: TailArgument::None,
            space: &space,
        },
        CaseSpec {
            case_id: format!("claim2/m=n-1/{lemma_tag}"),
            term: d.term(),
            q_sq: lemma_q,
            region: Region::single(Layout::YAbove, 1),
            reduced: ReducedInequality { lhs_upper: LinearForm::new(0, 2, 7), rhs_lower: lemma_form },
            tail: TailArgument::ReverseTriangle,
            space: &space,
        },
    ];
    let mut certs = cases.into_iter().map(CaseSpec::build).collect::<Result<Vec<_>>>()?;

    // Tie the last case to the lemma instance that `D` reduces to.
    let last = certs.last_mut().expect("four cases");
    let bound = num_bigint::BigUint::from(red.lemma.bound_sq());
    let value = red.lemma.value_sq(red.u, red.v);
    let scaled = match red.lemma {
        Lemma::Lemma1 => &value << 2u32,
        Lemma::Lemma2 => value.clone(),
    };
    let at_base = exact(&space, &d.term(), &Point::Zeta(0), &Point::Zeta(1))?;
    let instance = BoundaryCheck {
        label: format!("{lemma_tag} instance u={}, v={}", red.u, red.v),
        kind: CheckKind::Bound,
        m: red.u,
        n: red.v,
        holds: value >= bound && scaled == at_base,
        lhs_sq: bound,
        rhs_sq: value,
    };
    last.verified &= instance.holds;
    last.boundary_checks.push(instance);
    Ok(certs)
}

/// Condition (C) with a relaxation `D` not of the powers-of-two shape on `{zⁿ}`.
///
/// The grid oracle reports the smallest working `q²` on the grid and checks
/// every pair against `q₁² = 25/28`, the largest case constant.
pub fn verify_claim2(d: &RelaxationSpec, max_exp: u64, exec: Exec) -> Result<VerificationReport> {
    if max_exp < 6 {
        return Err(Error::InvalidArgument("claim 2 needs max_exp >= 6".into()));
    }
    if d.is_pow2_shape() {
        return Err(Error::WrongExample(d.term().to_string()));
    }
    let condition = Condition::new(q1_sq(), make_cx(d))?;
    let mut report = VerificationReport::new(Subject::Claim2)
        .param("family", d.family().name())
        .param("a", d.a())
        .param("b", d.b())
        .param("max_exp", max_exp)
        .param("term", d.term().to_string());
    let est = grid_check(&mut report, &Space::Zeta, &condition, max_exp, exec)?;
    report.certificates = claim2_certificates(d)?;
    Ok(report.finalize(est.sup.below_one()))
}

/// Scans `template` on a power space without a target `q`; passes iff the
/// grid supremum is below 1. Pairs with ratio `≥ 1` are listed as failures.
pub fn scan(space: &Space, template: &ConditionTemplate, max_exp: u64, exec: Exec) -> Result<VerificationReport> {
    if matches!(space, Space::Demo(_)) {
        return Err(Error::InvalidArgument("scan works on the power spaces only".into()));
    }
    let pairs = grid_pairs(space, max_exp);
    let est = estimate_q(space, template, &pairs, exec)?;
    let mut report = VerificationReport::new(Subject::Scan)
        .param("example", if *space == Space::Pow2 { "pow2" } else { "zeta" })
        .param("condition", template.name())
        .param("max_exp", max_exp);
    let one = SupRatio::Finite(Rational::one());
    for p in &est.pairs {
        let holds = p.ratio < one;
        let (m, n) = exps(&p.x, &p.y);
        let (l, r) = (integer(&p.lhs_sq), integer(&p.rhs_sq));
        if !holds {
            report.failures.push(Failure {
                case: format!("ratio >= 1 via {}", p.argmax),
                m: Some(m),
                n: Some(n),
                lhs_sq: Some(l.clone()),
                rhs_sq: Some(r.clone()),
            });
        }
        report.rows.push(GridRow { m, n, lhs_sq: l, rhs_sq: r, argmax: Some(p.argmax.to_string()), holds });
    }
    report.grid = Some(summary(&est, max_exp));
    Ok(report.finalize(est.sup.below_one()))
}

fn grid_pairs(space: &Space, max_exp: u64) -> Vec<(Point, Point)> {
    exponent_grid(max_exp).into_iter().map(|(m, n)| (space.point(m), space.point(n))).collect()
}

fn exps(x: &Point, y: &Point) -> (u64, u64) {
    (x.exponent().expect("power space"), y.exponent().expect("power space"))
}

fn integer(d: &crate::metric::SquaredDistance) -> num_bigint::BigUint {
    d.as_integer().expect("power spaces have integer squared distances")
}

fn summary(est: &RatioEstimate, max_exp: u64) -> GridSummary {
    let (m, n) = exps(&est.witness.0, &est.witness.1);
    GridSummary {
        max_exp,
        pairs: est.pairs.len() as u64,
        sup_ratio_sq: est.sup.finite().cloned(),
        min_value_sq: None,
        infinite: est.sup == SupRatio::Infinite,
        witness: Some(Witness { m, n }),
    }
}

/// Checks every grid pair against `condition`, fills rows, failures and the
/// grid summary, and returns the underlying estimate.
fn grid_check(
    report: &mut VerificationReport,
    space: &Space,
    condition: &Condition,
    max_exp: u64,
    exec: Exec,
) -> Result<RatioEstimate> {
    let pairs = grid_pairs(space, max_exp);
    let est = estimate_q(space, condition.template(), &pairs, exec)?;
    let checks =
        exec.map(&pairs, |(x, y)| condition.check_pair(space, x, y)).into_iter().collect::<Result<Vec<_>>>()?;
    for ((x, y), c) in pairs.iter().zip(checks) {
        let (m, n) = exps(x, y);
        let (l, r) = (integer(&c.lhs_sq), integer(&c.rhs_sq));
        if !c.holds {
            report.failures.push(Failure {
                case: format!("grid via {}", c.argmax),
                m: Some(m),
                n: Some(n),
                lhs_sq: Some(l.clone()),
                rhs_sq: Some(r.clone()),
            });
        }
        report.rows.push(GridRow { m, n, lhs_sq: l, rhs_sq: r, argmax: Some(c.argmax.to_string()), holds: c.holds });
    }
    report.grid = Some(summary(&est, max_exp));
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn find<'a>(certs: &'a [CaseCertificate], id: &str) -> &'a CaseCertificate {
        certs.iter().find(|c| c.case_id == id).unwrap_or_else(|| panic!("{id}"))
    }

    fn instance(c: &CaseCertificate, m: u64, n: u64) -> (u64, u64) {
        let b = c.boundary_checks.iter().find(|b| (b.m, b.n) == (m, n)).expect("instance recorded");
        (b.lhs_sq.clone().try_into().unwrap(), b.rhs_sq.clone().try_into().unwrap())
    }

    #[test]
    fn claim1_k2_passes_with_tight_sup() {
        let r = verify_claim1(2, 12, Exec::Sequential).unwrap();
        assert!(r.status.is_pass(), "{:?}", r.failures);
        let g = r.grid.unwrap();
        assert_eq!(g.pairs, 169);
        assert_eq!(g.sup_ratio_sq, Some(Rational::frac(9, 16)));
        assert_eq!(g.witness, Some(Witness { m: 0, n: 2 }));
    }

    #[test]
    fn claim1_case_instances() {
        let certs = claim1_certificates(2).unwrap();
        assert!(certs.iter().all(|c| c.verified));
        let c = find(&certs, "claim1/m=n-1");
        assert_eq!(instance(c, 2, 3), (64, 144));
        assert_eq!(c.q_sq, Rational::frac(4, 9));
        let c = find(&certs, "claim1/m>n");
        assert_eq!(instance(c, 3, 1), (144, 784));
    }

    #[test]
    fn claim1_rejects_small_k() {
        assert!(verify_claim1(1, 12, Exec::Sequential).is_err());
        assert!(verify_claim1(2, 3, Exec::Sequential).is_err());
    }

    #[test]
    fn claim2_case_instances() {
        let d = RelaxationSpec::new(Family::Yy, 2, 0).unwrap();
        let certs = claim2_certificates(&d).unwrap();
        assert!(certs.iter().all(|c| c.verified), "{certs:#?}");
        assert_eq!(instance(find(&certs, "claim2/m=n+1"), 1, 0), (28, 84));
        assert_eq!(instance(find(&certs, "claim2/m=n+s"), 2, 0), (84, 112));
        assert_eq!(find(&certs, "claim2/m=n-1/lemma1").q_sq, Rational::frac(1, 3));
    }

    #[test]
    fn claim2_yy_passes() {
        let d = RelaxationSpec::new(Family::Yy, 2, 0).unwrap();
        let r = verify_claim2(&d, 10, Exec::Sequential).unwrap();
        assert!(r.status.is_pass(), "{:?}", r.failures);
        let sup = r.grid.unwrap().sup_ratio_sq.unwrap();
        assert!(sup <= Rational::frac(4, 7), "{sup}");
    }

    #[test]
    fn claim2_rejects_pow2_shape() {
        let d = RelaxationSpec::new(Family::XyA3, 3, 2).unwrap();
        assert!(matches!(verify_claim2(&d, 10, Exec::Sequential), Err(Error::WrongExample(_))));
    }

    #[test]
    fn reductions() {
        let red = |f, a, b| reduce_for_zeta(&RelaxationSpec::new(f, a, b).unwrap()).unwrap();
        assert_eq!(red(Family::Yy, 2, 0), Reduction { lemma: Lemma::Lemma1, u: 0, v: 0 });
        assert_eq!(red(Family::XyA3, 3, 0), Reduction { lemma: Lemma::Lemma1, u: 0, v: 0 });
        assert_eq!(red(Family::XyB2, 0, 2), Reduction { lemma: Lemma::Lemma2, u: 0, v: 0 });
        assert_eq!(red(Family::Xx, 3, 0), Reduction { lemma: Lemma::Lemma2, u: 0, v: 0 });
    }

    #[test]
    fn scan_c1_on_pow2_fails_with_ratio_four() {
        let r = scan(&Space::Pow2, &crate::condition::make_c1(), 8, Exec::Sequential).unwrap();
        assert!(!r.status.is_pass());
        assert_eq!(r.grid.unwrap().sup_ratio_sq, Some(Rational::integer(4)));
        assert_eq!(r.rows.len(), 81);
        assert!(r.rows.iter().any(|row| row.lhs_sq == BigUint::from(36u32)));
    }
}

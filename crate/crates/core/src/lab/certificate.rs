//! Machine-checked case certificates.
//!
//! Both counterexample spaces are self-similar: `T` scales every distance by
//! exactly 2, so `d(T p, T r)² = 4·d(p, r)²`. A pair `(m, n)` is therefore
//! determined, up to that scale, by the gap `s = |m − n|` and which point is
//! higher. Every proof case is a region of gaps, and after dividing by the
//! common scale both sides of `d(Tx, Ty) ≤ q·D` become (bounds by) expressions
//! `(A·2ˢ + B)·√c`. With `t = 2ˢ` the squared slack
//!
//! ```text
//! g(t) = q²·c_R·(A_R·t + B_R)² − c_L·(A_L·t + B_L)²
//! ```
//!
//! is a quadratic in `t`. If its leading coefficient is non-negative and both
//! `g` and `g'` are non-negative at the smallest gap, then `g ≥ 0` on the
//! whole region. That is the check performed by [`ReducedInequality::certify`];
//! exact instances at the region corner are recorded alongside it.

use num_bigint::BigUint;
use serde::Serialize;

use crate::condition::{eval_term, TermSpec};
use crate::error::Result;
use crate::metric::{Point, Space};
use crate::ring::{leq_q_scaled, serialize_biguint, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TailArgument {
    /// Slack is non-decreasing in the gap; the minimal gap suffices.
    GeometricMonotone,
    /// `|zᵖ − z^q| ≥ ||zᵖ| − |z^q|| = |2ᵖ − 2^q|` bounds the tail from below.
    ReverseTriangle,
    /// Single-gap region, covered entirely by self-similarity.
    None,
}

/// Which of the two points carries the larger exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Layout {
    /// `m = base + s`, `n = base`.
    XAbove,
    /// `m = base`, `n = base + s`.
    YAbove,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    pub layout: Layout,
    pub gap_min: u64,
    pub gap_max: Option<u64>,
}

impl Region {
    pub fn new(layout: Layout, gap_min: u64, gap_max: Option<u64>) -> Self {
        debug_assert!(gap_min >= 1);
        Region { layout, gap_min, gap_max }
    }

    pub fn single(layout: Layout, gap: u64) -> Self {
        Region::new(layout, gap, Some(gap))
    }

    pub fn is_single(&self) -> bool {
        self.gap_max == Some(self.gap_min)
    }

    pub fn pair(&self, base: u64, gap: u64) -> (u64, u64) {
        match self.layout {
            Layout::XAbove => (base + gap, base),
            Layout::YAbove => (base, base + gap),
        }
    }

    pub fn covers(&self, m: u64, n: u64) -> bool {
        let (hi, lo, layout) = if m > n {
            (m, n, Layout::XAbove)
        } else if n > m {
            (n, m, Layout::YAbove)
        } else {
            return false;
        };
        let gap = hi - lo;
        layout == self.layout && gap >= self.gap_min && self.gap_max.is_none_or(|g| gap <= g)
    }

    pub fn describe(&self) -> String {
        let (hi, lo) = match self.layout {
            Layout::XAbove => ("m", "n"),
            Layout::YAbove => ("n", "m"),
        };
        match self.gap_max {
            Some(g) if g == self.gap_min => format!("{hi} = {lo} + {g}"),
            Some(g) => format!("{hi} = {lo} + s, {} <= s <= {g}", self.gap_min),
            None => format!("{hi} = {lo} + s, s >= {}", self.gap_min),
        }
    }
}

/// `(gap_coef·2ˢ + constant)·√radicand`, a distance divided by the region's
/// common scale.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearForm {
    pub gap_coef: Rational,
    pub constant: Rational,
    pub radicand: u64,
}

impl LinearForm {
    pub fn new(gap_coef: i64, constant: i64, radicand: u64) -> Self {
        LinearForm { gap_coef: Rational::integer(gap_coef), constant: Rational::integer(constant), radicand }
    }

    fn inner(&self, t: &Rational) -> Rational {
        &(&self.gap_coef * t) + &self.constant
    }

    /// Squared value at gap `s`.
    pub fn value_sq(&self, s: u64) -> Rational {
        let inner = self.inner(&pow2(s));
        &(&inner * &inner) * &Rational::from(self.radicand)
    }
}

fn pow2(s: u64) -> Rational {
    Rational::from(BigUint::from(1u32) << s)
}

/// `d(Tx, Ty) ≤ lhs_upper` and `D ≥ rhs_lower` on the region (up to scale).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedInequality {
    pub lhs_upper: LinearForm,
    pub rhs_lower: LinearForm,
}

impl ReducedInequality {
    /// Proves `lhs_upper² ≤ q²·rhs_lower²` for every gap in `region`.
    pub fn certify(&self, q_sq: &Rational, region: &Region) -> bool {
        let (l, r) = (&self.lhs_upper, &self.rhs_lower);
        let c_l = Rational::from(l.radicand);
        let qc_r = q_sq * &Rational::from(r.radicand);
        let two = Rational::integer(2);

        let p = &(&qc_r * &(&r.gap_coef * &r.gap_coef)) - &(&c_l * &(&l.gap_coef * &l.gap_coef));
        let q = &two * &(&(&qc_r * &(&r.gap_coef * &r.constant)) - &(&c_l * &(&l.gap_coef * &l.constant)));
        let c = &(&qc_r * &(&r.constant * &r.constant)) - &(&c_l * &(&l.constant * &l.constant));

        let t0 = pow2(region.gap_min);
        let g0 = &(&(&p * &(&t0 * &t0)) + &(&q * &t0)) + &c;
        let rhs_nonneg = !r.inner(&t0).is_negative() && (region.is_single() || !r.gap_coef.is_negative());
        if !rhs_nonneg || g0.is_negative() {
            return false;
        }
        if region.is_single() {
            return true;
        }
        let slope0 = &(&two * &(&p * &t0)) + &q;
        !p.is_negative() && !slope0.is_negative()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `lhs_sq = d(Tx, Ty)²`, `rhs_sq` the dominating term; `lhs_sq ≤ q²·rhs_sq`.
    Pair,
    /// `lhs_sq` a lower bound, `rhs_sq` the value; `lhs_sq ≤ rhs_sq`.
    Bound,
}

/// An exact instance recorded in a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryCheck {
    pub label: String,
    pub kind: CheckKind,
    pub m: u64,
    pub n: u64,
    #[serde(serialize_with = "serialize_biguint")]
    pub lhs_sq: BigUint,
    #[serde(serialize_with = "serialize_biguint")]
    pub rhs_sq: BigUint,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseCertificate {
    pub case_id: String,
    /// `None` for lemma certificates, which bound a single distance.
    pub dominating_term: Option<TermSpec>,
    /// Squared constant of the case; `1` for lemma bounds (`bound ≤ value`).
    pub q_sq: Rational,
    pub region: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<ReducedInequality>,
    pub boundary_checks: Vec<BoundaryCheck>,
    pub tail: TailArgument,
    pub verified: bool,
}

/// Bases at which exact instances are recorded; base 0 fixes the forms, the
/// others exercise the self-similar scaling.
const BASES: [u64; 3] = [0, 1, 2];
/// Extra gaps beyond the region's minimum recorded for unbounded regions.
const EXTRA_GAPS: u64 = 2;

pub(crate) struct CaseSpec<'a> {
    pub case_id: String,
    pub term: TermSpec,
    pub q_sq: Rational,
    pub region: Region,
    pub reduced: ReducedInequality,
    pub tail: TailArgument,
    pub space: &'a Space,
}

impl CaseSpec<'_> {
    /// Evaluates the case at its corner instances and runs the symbolic check.
    pub fn build(self) -> Result<CaseCertificate> {
        let CaseSpec { case_id, term, q_sq, region, reduced, tail, space } = self;
        let gap_hi = region.gap_max.unwrap_or(region.gap_min + EXTRA_GAPS);
        let mut checks = Vec::new();
        let mut forms_ok = true;
        for base in BASES {
            let scale = Rational::from(BigUint::from(1u32) << (2 * base));
            for gap in region.gap_min..=gap_hi {
                let (m, n) = region.pair(base, gap);
                let (x, y) = (space.point(m), space.point(n));
                let lhs = exact(space, &TermSpec::lhs(), &x, &y)?;
                let rhs = exact(space, &term, &x, &y)?;
                forms_ok &= Rational::from(lhs.clone()) <= &scale * &reduced.lhs_upper.value_sq(gap);
                forms_ok &= Rational::from(rhs.clone()) >= &scale * &reduced.rhs_lower.value_sq(gap);
                checks.push(BoundaryCheck {
                    label: format!("s={gap}, base={base}"),
                    kind: CheckKind::Pair,
                    m,
                    n,
                    holds: leq_q_scaled(&lhs, &q_sq, &rhs),
                    lhs_sq: lhs,
                    rhs_sq: rhs,
                });
            }
        }
        let verified =
            q_sq.is_unit_open() && forms_ok && checks.iter().all(|c| c.holds) && reduced.certify(&q_sq, &region);
        Ok(CaseCertificate {
            case_id,
            dominating_term: Some(term),
            q_sq,
            region: region.describe(),
            reduced: Some(reduced),
            boundary_checks: checks,
            tail,
            verified,
        })
    }
}

pub(crate) fn exact(space: &Space, term: &TermSpec, x: &Point, y: &Point) -> Result<BigUint> {
    Ok(eval_term(space, term, x, y)?.as_integer().expect("power spaces have integer squared distances"))
}

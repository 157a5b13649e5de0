//! Contractive conditions as finite sets of distance terms.
//!
//! A term `d(Tᵃu, Tᵇv)` with `u, v ∈ {x, y}` is stored normalized so that the
//! smaller operand (ordered by variable, then power) sits on the left. A
//! condition pairs a term set with a squared contraction factor `q²` and reads
//! `d(Tx, Ty) ≤ q · max{ terms }`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::metric::{Point, Space, SquaredDistance};
use crate::ring::{leq_q_scaled, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
}

/// `Tᵖᵒʷᵉʳ var`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Operand {
    pub var: Var,
    pub power: u32,
}

impl Operand {
    pub fn x(power: u32) -> Self {
        Operand { var: Var::X, power }
    }

    pub fn y(power: u32) -> Self {
        Operand { var: Var::Y, power }
    }

    fn bind<'a>(&self, x: &'a Point, y: &'a Point) -> &'a Point {
        match self.var {
            Var::X => x,
            Var::Y => y,
        }
    }
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.var {
            Var::X => "x",
            Var::Y => "y",
        };
        match self.power {
            0 => write!(f, "{v}"),
            1 => write!(f, "T{v}"),
            p => write!(f, "T^{p} {v}"),
        }
    }
}

/// The distance term `d(left, right)`, normalized with `left < right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermSpec {
    left: Operand,
    right: Operand,
}

impl TermSpec {
    pub fn new(a: Operand, b: Operand) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(TermSpec { left: a, right: b }),
            std::cmp::Ordering::Greater => Ok(TermSpec { left: b, right: a }),
            std::cmp::Ordering::Equal => Err(Error::DegenerateTerm(format!("d({a}, {b})"))),
        }
    }

    /// Shorthand for static term lists; panics on a degenerate term.
    fn of(a: Operand, b: Operand) -> Self {
        TermSpec::new(a, b).expect("distinct operands")
    }

    pub fn left(&self) -> Operand {
        self.left
    }

    pub fn right(&self) -> Operand {
        self.right
    }

    /// `d(Tx, Ty)`, the left-hand side of every condition.
    pub fn lhs() -> Self {
        TermSpec::of(Operand::x(1), Operand::y(1))
    }
}

impl fmt::Display for TermSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d({}, {})", self.left, self.right)
    }
}

impl Serialize for TermSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A named set of distance terms; `q` is supplied separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionTemplate {
    name: String,
    terms: BTreeSet<TermSpec>,
}

impl ConditionTemplate {
    pub fn new(name: impl Into<String>, terms: impl IntoIterator<Item = TermSpec>) -> Result<Self> {
        let terms: BTreeSet<TermSpec> = terms.into_iter().collect();
        if terms.is_empty() {
            return Err(Error::EmptyCondition);
        }
        if terms.contains(&TermSpec::lhs()) {
            return Err(Error::SelfReferentialCondition);
        }
        Ok(ConditionTemplate { name: name.into(), terms })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn terms(&self) -> &BTreeSet<TermSpec> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, t: &TermSpec) -> bool {
        self.terms.contains(t)
    }

    pub fn is_subset(&self, other: &ConditionTemplate) -> bool {
        self.terms.is_subset(&other.terms)
    }

    /// Largest term value at `(x, y)` with the first maximal term in
    /// normalized order as witness.
    pub fn rhs_max_sq(&self, space: &Space, x: &Point, y: &Point) -> Result<(SquaredDistance, TermSpec)> {
        let mut best: Option<(SquaredDistance, TermSpec)> = None;
        for t in &self.terms {
            let v = eval_term(space, t, x, y)?;
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, *t));
            }
        }
        Ok(best.expect("templates are non-empty"))
    }
}

/// `{d(x, y)}`.
pub fn make_c1() -> ConditionTemplate {
    ConditionTemplate::new("c1", [TermSpec::of(Operand::x(0), Operand::y(0))]).expect("valid")
}

/// The five-term quasi-contraction set.
pub fn make_c2() -> ConditionTemplate {
    ConditionTemplate::new("c2", c2_terms()).expect("valid")
}

/// The nine-term generalized quasi-contraction set.
pub fn make_c3() -> ConditionTemplate {
    ConditionTemplate::new("c3", c3_terms()).expect("valid")
}

/// The nine terms of [`make_c3`] plus the relaxation term of `spec`.
pub fn make_cx(spec: &RelaxationSpec) -> ConditionTemplate {
    let mut terms = c3_terms();
    terms.push(spec.term());
    ConditionTemplate::new(format!("cx[{}]", spec.term()), terms).expect("valid")
}

fn c2_terms() -> Vec<TermSpec> {
    let (x, y) = (Operand::x, Operand::y);
    vec![
        TermSpec::of(x(0), y(0)),
        TermSpec::of(x(1), x(0)),
        TermSpec::of(x(1), y(0)),
        TermSpec::of(y(1), x(0)),
        TermSpec::of(y(1), y(0)),
    ]
}

fn c3_terms() -> Vec<TermSpec> {
    let (x, y) = (Operand::x, Operand::y);
    let mut terms = c2_terms();
    terms.extend([
        TermSpec::of(x(2), x(0)),
        TermSpec::of(x(2), y(0)),
        TermSpec::of(x(2), x(1)),
        TermSpec::of(x(2), y(1)),
    ]);
    terms
}

/// Squared value of one term at `(x, y)`.
pub fn eval_term(space: &Space, t: &TermSpec, x: &Point, y: &Point) -> Result<SquaredDistance> {
    let p = space.apply_map(t.left.bind(x, y), t.left.power as u64)?;
    let r = space.apply_map(t.right.bind(x, y), t.right.power as u64)?;
    space.dist_sq(&p, &r)
}

/// A template with a validated contraction factor `0 < q² < 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    q_sq: Rational,
    template: ConditionTemplate,
}

/// Exact outcome of testing one pair against a condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub lhs_sq: SquaredDistance,
    pub rhs_sq: SquaredDistance,
    pub argmax: TermSpec,
    pub holds: bool,
}

impl Condition {
    pub fn new(q_sq: Rational, template: ConditionTemplate) -> Result<Self> {
        if !q_sq.is_unit_open() {
            return Err(Error::ContractionFactor(q_sq));
        }
        Ok(Condition { q_sq, template })
    }

    pub fn q_sq(&self) -> &Rational {
        &self.q_sq
    }

    pub fn template(&self) -> &ConditionTemplate {
        &self.template
    }

    /// Tests `d(Tx, Ty) ≤ q · max{terms}` exactly.
    pub fn check_pair(&self, space: &Space, x: &Point, y: &Point) -> Result<PairCheck> {
        let lhs_sq = eval_term(space, &TermSpec::lhs(), x, y)?;
        let (rhs_sq, argmax) = self.template.rhs_max_sq(space, x, y)?;
        let holds = match (lhs_sq.as_integer(), rhs_sq.as_integer()) {
            (Some(l), Some(r)) => leq_q_scaled(&l, &self.q_sq, &r),
            _ => lhs_sq.value() <= &(&self.q_sq * rhs_sq.value()),
        };
        Ok(PairCheck { lhs_sq, rhs_sq, argmax, holds })
    }
}

/// One of the four parametric shapes of the extra term `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `d(Tᵃx, Tᵇy)`, `a ≥ 3`.
    XyA3,
    /// `d(Tᵃx, Tᵇy)`, `b ≥ 2`.
    XyB2,
    /// `d(Tᵃx, Tᵇx)`, `a ≥ 3`, `a ≠ b`.
    Xx,
    /// `d(Tᵃy, Tᵇy)`, `a ≥ 2`, `a ≠ b`.
    Yy,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::XyA3, Family::XyB2, Family::Xx, Family::Yy];

    pub fn name(self) -> &'static str {
        match self {
            Family::XyA3 => "xy-a3",
            Family::XyB2 => "xy-b2",
            Family::Xx => "xx",
            Family::Yy => "yy",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Case-insensitive; `_` is accepted for `-` (`XY_A3`).
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family `{s}` (expected xy-a3, xy-b2, xx or yy)")))
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// A validated member of the relaxation family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RelaxationSpec {
    family: Family,
    a: u32,
    b: u32,
}

impl RelaxationSpec {
    pub fn new(family: Family, a: u32, b: u32) -> Result<Self> {
        let invalid = |reason| Error::InvalidRelaxation { family: family.name(), a, b, reason };
        match family {
            Family::XyA3 if a < 3 => Err(invalid("requires a >= 3")),
            Family::XyB2 if b < 2 => Err(invalid("requires b >= 2")),
            Family::Xx if a < 3 => Err(invalid("requires a >= 3")),
            Family::Yy if a < 2 => Err(invalid("requires a >= 2")),
            Family::Xx | Family::Yy if a == b => Err(invalid("requires a != b")),
            _ => Ok(RelaxationSpec { family, a, b }),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn term(&self) -> TermSpec {
        let (a, b) = (self.a, self.b);
        match self.family {
            Family::XyA3 | Family::XyB2 => TermSpec::of(Operand::x(a), Operand::y(b)),
            Family::Xx => TermSpec::of(Operand::x(a), Operand::x(b)),
            Family::Yy => TermSpec::of(Operand::y(a), Operand::y(b)),
        }
    }

    /// `D = d(T^(k+1) x, T^k y)` with `k ≥ 2`: the shape defeated by the
    /// powers-of-two example rather than the `z`-example.
    pub fn is_pow2_shape(&self) -> bool {
        matches!(self.family, Family::XyA3 | Family::XyB2) && self.a == self.b + 1 && self.b >= 2
    }
}

impl fmt::Display for RelaxationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(a={}, b={})", self.family, self.a, self.b)
    }
}

/// Every valid relaxation with `a ≤ a_max`, `b ≤ b_max`, ordered by `(family, a, b)`.
pub fn enumerate_family(a_max: u32, b_max: u32) -> Vec<RelaxationSpec> {
    Family::ALL
        .into_iter()
        .flat_map(|f| (0..=a_max).flat_map(move |a| (0..=b_max).filter_map(move |b| RelaxationSpec::new(f, a, b).ok())))
        .collect()
}

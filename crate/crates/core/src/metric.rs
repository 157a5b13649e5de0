//! Points, metric spaces, self-maps and orbits.
//!
//! Two spaces are the counterexamples: `{2ⁿ}` under doubling and `{zⁿ}` under
//! multiplication by `z = −1 + i√3`. Both are indexed by `n ∈ ℕ` (0 included),
//! points are stored by exponent, and distances are produced squared as exact
//! integers. A third, demo, space is the rational line with an affine map,
//! used to exercise the solver on a genuine contraction.
//!
//! Both counterexample spaces are discrete with points escaping to infinity, so
//! every Cauchy sequence is eventually constant and the spaces are complete.
//! That fact is not re-derived here; [`Space::orbital_cauchy_probe`] only
//! inspects a finite orbit window.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{zeta_pow, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SpaceTag {
    Pow2,
    Zeta,
    Demo,
}

/// A point of one of the supported spaces.
///
/// `Pow2(n)` is `2ⁿ`, `Zeta(n)` is `zⁿ`, `Demo(v)` is the rational `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Pow2(u64),
    Zeta(u64),
    Demo(Rational),
}

impl Point {
    pub fn tag(&self) -> SpaceTag {
        match self {
            Point::Pow2(_) => SpaceTag::Pow2,
            Point::Zeta(_) => SpaceTag::Zeta,
            Point::Demo(_) => SpaceTag::Demo,
        }
    }

    /// Exponent for the two power spaces.
    pub fn exponent(&self) -> Option<u64> {
        match self {
            Point::Pow2(n) | Point::Zeta(n) => Some(*n),
            Point::Demo(_) => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Pow2(n) => write!(f, "2^{n}"),
            Point::Zeta(n) => write!(f, "z^{n}"),
            Point::Demo(v) => write!(f, "{v}"),
        }
    }
}

/// `x ↦ alpha·x + beta` on ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub alpha: Rational,
    pub beta: Rational,
}

impl AffineMap {
    pub fn new(alpha: Rational, beta: Rational) -> Self {
        AffineMap { alpha, beta }
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        &(&self.alpha * x) + &self.beta
    }

    /// The unique fixed point `beta / (1 − alpha)`, if `alpha ≠ 1`.
    pub fn fixed_point(&self) -> Option<Rational> {
        let denom = &Rational::one() - &self.alpha;
        (!denom.is_zero()).then(|| &self.beta / &denom)
    }
}

/// Squared distance between two points; an integer in the power spaces.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquaredDistance(Rational);

impl SquaredDistance {
    pub fn from_integer(value: BigUint) -> Self {
        SquaredDistance(Rational::from(value))
    }

    pub fn from_rational(value: Rational) -> Self {
        debug_assert!(!value.is_negative());
        SquaredDistance(value)
    }

    pub fn zero() -> Self {
        SquaredDistance(Rational::zero())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_value(self) -> Rational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_integer(&self) -> Option<BigUint> {
        if self.0.is_integer() {
            self.0.numer().to_biguint()
        } else {
            None
        }
    }
}

impl fmt::Display for SquaredDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A metric space together with its self-map `T`. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    /// `X = {2ⁿ}`, `d(x, y) = |x − y|`, `T(x) = 2x`.
    Pow2,
    /// `X = {zⁿ}`, `d(x, y) = |x − y|`, `T(x) = zx`.
    Zeta,
    /// `X = ℚ`, `d(x, y) = |x − y|`, `T` affine.
    Demo(AffineMap),
}

/// Outcome of [`Space::orbital_cauchy_probe`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// Step distances never shrink below `d(Tx, x) > 0`; `witness_index` is a
    /// step `i` with `d(Tⁱ⁺¹x, Tⁱx) ≥ d(Tx, x)` at the far end of the window.
    Divergent {
        witness_index: usize,
        first_step_sq: SquaredDistance,
    },
    /// Every consecutive step ratio (squared) is at most `ratio_sq < 1`.
    Contracting {
        ratio_sq: Rational,
    },
    /// `x0` is a fixed point.
    Stationary,
    Inconclusive,
}

impl Space {
    pub fn tag(&self) -> SpaceTag {
        match self {
            Space::Pow2 => SpaceTag::Pow2,
            Space::Zeta => SpaceTag::Zeta,
            Space::Demo(_) => SpaceTag::Demo,
        }
    }

    /// The point with exponent `n` (power spaces) or value `n` (demo space).
    pub fn point(&self, n: u64) -> Point {
        match self {
            Space::Pow2 => Point::Pow2(n),
            Space::Zeta => Point::Zeta(n),
            Space::Demo(_) => Point::Demo(Rational::from(n)),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.tag() == p.tag()
    }

    fn ensure(&self, p: &Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::MixedSpaces)
        }
    }

    /// `Tᵗⁱᵐᵉˢ p`.
    pub fn apply_map(&self, p: &Point, times: u64) -> Result<Point> {
        self.ensure(p)?;
        Ok(match (self, p) {
            (Space::Pow2, Point::Pow2(n)) => Point::Pow2(n + times),
            (Space::Zeta, Point::Zeta(n)) => Point::Zeta(n + times),
            (Space::Demo(map), Point::Demo(v)) => {
                let mut v = v.clone();
                for _ in 0..times {
                    v = map.apply(&v);
                }
                Point::Demo(v)
            }
            _ => unreachable!("checked by ensure"),
        })
    }

    pub fn dist_sq(&self, p: &Point, r: &Point) -> Result<SquaredDistance> {
        self.ensure(p)?;
        self.ensure(r)?;
        Ok(match (p, r) {
            (Point::Pow2(m), Point::Pow2(n)) => SquaredDistance::from_integer(pow2_dist_sq(*m, *n)),
            (Point::Zeta(m), Point::Zeta(n)) => SquaredDistance::from_integer(zeta_dist_sq(*m, *n)),
            (Point::Demo(a), Point::Demo(b)) => {
                let diff = a - b;
                SquaredDistance::from_rational(&diff * &diff)
            }
            _ => unreachable!("checked by ensure"),
        })
    }

    /// `[x0, Tx0, …, T^(length−1) x0]`.
    pub fn orbit(&self, x0: &Point, length: usize) -> Result<Vec<Point>> {
        if length == 0 {
            return Err(Error::InvalidArgument("orbit length must be positive".into()));
        }
        let mut out = Vec::with_capacity(length);
        out.push(x0.clone());
        while out.len() < length {
            let next = self.apply_map(out.last().expect("non-empty"), 1)?;
            out.push(next);
        }
        Ok(out)
    }

    /// Looks at the consecutive step distances `d(Tⁱx, Tⁱ⁺¹x)` along an orbit
    /// window and reports whether they stay bounded below (the orbit is not
    /// Cauchy) or shrink geometrically.
    pub fn orbital_cauchy_probe(&self, x0: &Point, length: usize) -> Result<ProbeOutcome> {
        if length < 2 {
            return Err(Error::InvalidArgument("probe length must be at least 2".into()));
        }
        let orbit = self.orbit(x0, length)?;
        let steps = orbit.windows(2).map(|w| self.dist_sq(&w[0], &w[1])).collect::<Result<Vec<_>>>()?;

        let first = &steps[0];
        if first.is_zero() {
            return Ok(ProbeOutcome::Stationary);
        }
        if steps.windows(2).all(|w| w[0] <= w[1]) {
            return Ok(ProbeOutcome::Divergent { witness_index: steps.len() - 1, first_step_sq: first.clone() });
        }
        if steps.iter().all(|d| !d.is_zero()) && steps.len() >= 2 {
            let ratio_sq = steps.windows(2).map(|w| w[1].value() / w[0].value()).max().expect("at least one ratio");
            if ratio_sq < Rational::one() {
                return Ok(ProbeOutcome::Contracting { ratio_sq });
            }
        }
        Ok(ProbeOutcome::Inconclusive)
    }
}

/// `(2ᵐ − 2ⁿ)²`.
pub fn pow2_dist_sq(m: u64, n: u64) -> BigUint {
    let (hi, lo) = if m >= n { (m, n) } else { (n, m) };
    let diff = (BigUint::from(1u32) << hi) - (BigUint::from(1u32) << lo);
    &diff * &diff
}

/// `|zᵐ − zⁿ|²`.
pub fn zeta_dist_sq(m: u64, n: u64) -> BigUint {
    (&zeta_pow(m) - &zeta_pow(n)).sqnorm()
}

/// Triangle inequality `√c ≤ √a + √b` decided on integers: trivially true when
/// `c ≤ a + b`, otherwise equivalent to `(c − a − b)² ≤ 4ab`.
pub fn triangle_holds_sq(a: &BigUint, b: &BigUint, c: &BigUint) -> bool {
    let ab = a + b;
    if *c <= ab {
        return true;
    }
    let excess = c - &ab;
    &excess * &excess <= BigUint::from(4u32) * a * b
}

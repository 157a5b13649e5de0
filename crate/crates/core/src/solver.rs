//! Picard iteration with exact convergence and divergence verdicts, plus
//! empirical contraction-factor estimation over finite pair sets.

use serde::Serialize;

use crate::condition::{eval_term, ConditionTemplate, TermSpec};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::metric::{Point, Space, SquaredDistance};
use crate::ring::Rational;

/// Consecutive growth events required before a run is declared divergent.
pub const DIVERGENCE_WINDOW: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationConfig {
    max_iter: u64,
    tol_sq: Rational,
    divergence_factor: Rational,
}

impl IterationConfig {
    pub fn new(max_iter: u64, tol_sq: Rational, divergence_factor: Rational) -> Result<Self> {
        if max_iter == 0 {
            return Err(Error::InvalidArgument("max_iter must be at least 1".into()));
        }
        if !tol_sq.is_positive() {
            return Err(Error::InvalidArgument(format!("tol_sq must be positive, got {tol_sq}")));
        }
        if divergence_factor <= Rational::one() {
            return Err(Error::InvalidArgument(format!("divergence_factor must exceed 1, got {divergence_factor}")));
        }
        Ok(IterationConfig { max_iter, tol_sq, divergence_factor })
    }

    /// `divergence_factor = 2`.
    pub fn with_tolerance(max_iter: u64, tol_sq: Rational) -> Result<Self> {
        IterationConfig::new(max_iter, tol_sq, Rational::integer(2))
    }

    pub fn max_iter(&self) -> u64 {
        self.max_iter
    }

    pub fn tol_sq(&self) -> &Rational {
        &self.tol_sq
    }

    pub fn divergence_factor(&self) -> &Rational {
        &self.divergence_factor
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Converged,
    Diverged,
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointResult {
    pub verdict: Verdict,
    pub final_point: Point,
    /// Number of map applications performed.
    pub steps: u64,
    /// `d(xᵢ, xᵢ₊₁)²` for each step taken.
    pub step_distances_sq: Vec<SquaredDistance>,
}

/// Runs `x ← Tx` from `x0`.
///
/// Converges once `d(x, Tx)² ≤ tol_sq`. The reported point is `Tx` when it
/// still satisfies the tolerance (it is closer to the fixed point for a
/// contraction), otherwise `x`. Diverges after [`DIVERGENCE_WINDOW`]
/// consecutive steps whose squared length grows by at least
/// `divergence_factor` while staying above `tol_sq`.
pub fn picard_iterate(space: &Space, x0: &Point, cfg: &IterationConfig) -> Result<FixedPointResult> {
    let mut x = x0.clone();
    let mut dists: Vec<SquaredDistance> = Vec::new();
    let mut growth_run = 0usize;

    for step in 0..cfg.max_iter {
        let tx = space.apply_map(&x, 1)?;
        let d = space.dist_sq(&x, &tx)?;
        if d.value() <= &cfg.tol_sq {
            dists.push(d);
            let ttx = space.apply_map(&tx, 1)?;
            let final_point = if space.dist_sq(&tx, &ttx)?.value() <= &cfg.tol_sq { tx } else { x };
            return Ok(FixedPointResult {
                verdict: Verdict::Converged,
                final_point,
                steps: step + 1,
                step_distances_sq: dists,
            });
        }
        if let Some(prev) = dists.last() {
            let grew = d.value() >= &(&cfg.divergence_factor * prev.value());
            if grew && prev.value() > &cfg.tol_sq {
                growth_run += 1;
            } else {
                growth_run = 0;
            }
        }
        dists.push(d);
        if growth_run >= DIVERGENCE_WINDOW {
            return Ok(FixedPointResult {
                verdict: Verdict::Diverged,
                final_point: tx,
                steps: step + 1,
                step_distances_sq: dists,
            });
        }
        x = tx;
    }

    Ok(FixedPointResult { verdict: Verdict::Exhausted, final_point: x, steps: cfg.max_iter, step_distances_sq: dists })
}

/// A-priori estimate `d(xₙ, xₙ₊₁)² ≤ (q²)ⁿ · d(x₀, x₁)²`, decided exactly.
pub fn apriori_bound_check(q_sq: &Rational, step0_sq: &Rational, n: u32, observed_sq: &Rational) -> bool {
    debug_assert!(q_sq.is_unit_open());
    observed_sq <= &(&q_sq.pow(n) * step0_sq)
}

/// Supremum of squared ratios `d(Tx,Ty)² / max{terms}²`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SupRatio {
    Finite(Rational),
    /// Some pair had `max{terms} = 0` but `d(Tx, Ty) > 0`.
    Infinite,
}

impl SupRatio {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            SupRatio::Finite(r) => Some(r),
            SupRatio::Infinite => None,
        }
    }

    /// Whether some `q < 1` works for every pair seen.
    pub fn below_one(&self) -> bool {
        matches!(self, SupRatio::Finite(r) if r < &Rational::one())
    }
}

/// Per-pair data produced while estimating `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRatio {
    pub x: Point,
    pub y: Point,
    pub lhs_sq: SquaredDistance,
    pub rhs_sq: SquaredDistance,
    pub argmax: TermSpec,
    pub ratio: SupRatio,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioEstimate {
    pub sup: SupRatio,
    pub witness: (Point, Point),
    pub pairs: Vec<PairRatio>,
}

pub fn pair_ratio(space: &Space, cond: &ConditionTemplate, x: &Point, y: &Point) -> Result<PairRatio> {
    let lhs_sq = eval_term(space, &TermSpec::lhs(), x, y)?;
    let (rhs_sq, argmax) = cond.rhs_max_sq(space, x, y)?;
    let ratio = if rhs_sq.is_zero() {
        if lhs_sq.is_zero() {
            SupRatio::Finite(Rational::zero())
        } else {
            SupRatio::Infinite
        }
    } else {
        SupRatio::Finite(lhs_sq.value() / rhs_sq.value())
    };
    Ok(PairRatio { x: x.clone(), y: y.clone(), lhs_sq, rhs_sq, argmax, ratio })
}

/// The smallest `q²` for which `cond` holds on every pair in `pairs`, with the
/// maximizing pair. Ties go to the lexicographically smallest pair.
pub fn estimate_q(
    space: &Space,
    cond: &ConditionTemplate,
    pairs: &[(Point, Point)],
    exec: Exec,
) -> Result<RatioEstimate> {
    if pairs.is_empty() {
        return Err(Error::InvalidArgument("estimate_q needs at least one pair".into()));
    }
    let rows = exec.map(pairs, |(x, y)| pair_ratio(space, cond, x, y)).into_iter().collect::<Result<Vec<_>>>()?;
    let best = rows
        .iter()
        .reduce(|best, r| {
            let better = r.ratio > best.ratio || (r.ratio == best.ratio && (&r.x, &r.y) < (&best.x, &best.y));
            if better {
                r
            } else {
                best
            }
        })
        .expect("non-empty");
    Ok(RatioEstimate { sup: best.ratio.clone(), witness: (best.x.clone(), best.y.clone()), pairs: rows })
}

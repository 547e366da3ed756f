//! Oracle-model minimization: projected subgradient descent on the Lovász
//! extension over `[-α, 1]^n`, rounded to labelings through chain supports.
//!
//! Each iterate `x_t` is a convex combination of the labelings in the support
//! of its chain decomposition, so the best of those labelings is never worse
//! than `f^L(x_t)`. The run keeps the best labeling seen so far; since the
//! minimum of `f^L` over the box equals the minimum of `f`, driving `f^L(x_t)`
//! down drives the discrete candidate to the optimum.

use alloc::vec::Vec;

use num_traits::{Float, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::function::ValueOracle;
use crate::lattice::{Alpha, Label, Labeling};
use crate::lovasz::{decompose, linear_piece, FractionalPoint};
use crate::oracles::random_box_point;
use crate::rational::{self, Rational};
use crate::Error;

/// Denominator used to rationalize projected iterates.
pub const DEFAULT_DENOMINATOR_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepRule {
    /// `γ_t = γ`.
    Fixed(f64),
    /// `γ_t = γ₀ / √(t + 1)` for the zero-based iteration `t`.
    Diminishing(f64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StartPoint {
    Origin,
    Point(FractionalPoint),
    /// A random grid point drawn from the configured seed.
    Random,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizeConfig {
    /// `None` means `200 · n²`.
    pub max_iters: Option<usize>,
    /// `None` means [`StepRule::Diminishing`] with a γ₀ derived from `f`
    /// (see [`default_step_scale`]).
    pub step_rule: Option<StepRule>,
    /// Stop once the best value is within this much of the certified lower
    /// bound. `None` runs every iteration.
    pub tolerance: Option<Rational>,
    pub seed: u64,
    pub start: StartPoint,
    pub denominator_limit: u64,
}

impl Default for MinimizeConfig {
    fn default() -> Self {
        MinimizeConfig {
            max_iters: None,
            step_rule: None,
            tolerance: None,
            seed: 0,
            start: StartPoint::Origin,
            denominator_limit: DEFAULT_DENOMINATOR_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimizeReport {
    pub minimizer: Labeling,
    /// `f(minimizer)`, exact.
    pub value: Rational,
    pub iterations_used: usize,
    /// Oracle calls made by this run.
    pub oracle_calls: u64,
    /// `(iteration, value)` each time the best value strictly improved.
    pub trajectory_best: Vec<(usize, Rational)>,
    /// Largest lower bound on `min f` certified by the subgradient cuts of
    /// the run (single cuts and their running average).
    pub lower_bound: Rational,
}

/// Clamps to `[-α, 1]^n` after rounding each coordinate to a multiple of
/// `1 / denominator_limit`. Non-finite coordinates are rejected.
pub fn project_box(x: &[f64], alpha: &Alpha) -> Result<FractionalPoint, Error> {
    project_box_with_denominator(x, alpha, DEFAULT_DENOMINATOR_LIMIT)
}

pub fn project_box_with_denominator(x: &[f64], alpha: &Alpha, denominator_limit: u64) -> Result<FractionalPoint, Error> {
    let lo = -alpha.value().clone();
    let hi = rational::int(1);
    let mut coords = Vec::with_capacity(x.len());
    for (j, &v) in x.iter().enumerate() {
        // Clamp in floating point first so the rounding below stays in range.
        let clamped = v.clamp(-2.0, 2.0);
        let r = rational::from_f64_rounded(clamped, denominator_limit).ok_or(Error::NonFinite(j))?;
        coords.push(if r < lo {
            lo.clone()
        } else if r > hi {
            hi.clone()
        } else {
            r
        });
    }
    FractionalPoint::new(coords, alpha.clone())
}

/// γ₀ for the default step rule: `α(1+α) / (F_max - F_min)`, the sample taken
/// over the all-Zero labeling and the `2n` unit labelings; `1` when the
/// sample is flat. Makes `2n + 1` oracle calls.
pub fn default_step_scale<F: ValueOracle + ?Sized>(f: &F) -> f64 {
    let n = f.arity();
    let mut sample = Vec::with_capacity(2 * n + 1);
    sample.push(f.evaluate(&Labeling::zeros(n)));
    for j in 0..n {
        for l in [Label::Pos, Label::Neg] {
            let mut u = Labeling::zeros(n);
            u.set(j, l);
            sample.push(f.evaluate(&u));
        }
    }
    let max = sample.iter().max().expect("nonempty sample");
    let min = sample.iter().min().expect("nonempty sample");
    let range = rational::to_f64(&(max - min));
    if range > 0.0 {
        let a = rational::to_f64(f.alpha().value());
        a * (1.0 + a) / range
    } else {
        1.0
    }
}

// min over the box of g·y, exact.
fn box_min(g: &[Rational], alpha: &Alpha) -> Rational {
    g.iter()
        .map(|gj| if gj.is_positive() { -(gj * alpha.value()) } else { gj.clone() })
        .sum()
}

// min over the box of g·(y - x), exact.
fn linear_drop(g: &[Rational], x: &FractionalPoint) -> Rational {
    let lo = -x.alpha().value().clone();
    g.iter()
        .zip(x.coords())
        .map(|(gj, xj)| if gj.is_positive() { gj * (&lo - xj) } else { gj * (rational::int(1) - xj) })
        .sum()
}

/// Projected subgradient minimization of `f` through its Lovász extension.
///
/// The returned value is exact and always `f(minimizer)`. Optimality is
/// only meaningful for α-bisubmodular `f`; for other functions the run still
/// returns the best labeling it visited.
pub fn minimize<F: ValueOracle + ?Sized>(f: &F, cfg: &MinimizeConfig) -> Result<MinimizeReport, Error> {
    let n = f.arity();
    let alpha = f.alpha().clone();
    let calls_before = f.call_count();

    let max_iters = cfg.max_iters.unwrap_or(200 * n * n);
    if max_iters == 0 {
        return Err(Error::InvalidArgument("max_iters must be at least 1".into()));
    }
    if cfg.denominator_limit == 0 {
        return Err(Error::InvalidArgument("denominator_limit must be positive".into()));
    }
    if let Some(eps) = &cfg.tolerance {
        if eps.is_negative() {
            return Err(Error::InvalidArgument("tolerance must be nonnegative".into()));
        }
    }
    let rule = match cfg.step_rule {
        Some(StepRule::Fixed(g)) | Some(StepRule::Diminishing(g)) if !(g > 0.0 && g.is_finite()) => {
            return Err(Error::InvalidArgument("step size must be positive".into()));
        }
        Some(rule) => rule,
        None => StepRule::Diminishing(default_step_scale(f)),
    };
    let mut x = match &cfg.start {
        StartPoint::Origin => FractionalPoint::origin(n, alpha.clone()),
        StartPoint::Point(p) => {
            if p.arity() != n {
                return Err(Error::ArityMismatch { expected: n, found: p.arity() });
            }
            if p.alpha() != &alpha {
                return Err(Error::InvalidArgument("start point alpha differs from the oracle alpha".into()));
            }
            p.clone()
        }
        StartPoint::Random => random_box_point(&mut ChaCha8Rng::seed_from_u64(cfg.seed), n, &alpha),
    };

    let mut best: Option<(Labeling, Rational)> = None;
    let mut trajectory_best = Vec::new();
    let mut lower_bound: Option<Rational> = None;
    // Running sums of the cuts f^L(x_t) + g_t·(y - x_t), for the averaged bound.
    let mut cut_const = Rational::zero();
    let mut cut_grad = alloc::vec![Rational::zero(); n];
    let mut iterations_used = 0;
    for t in 0..max_iters {
        iterations_used = t + 1;
        let piece = linear_piece(f, &x);
        for atom in decompose(&x).atoms() {
            let k = atom.u.support_size();
            debug_assert_eq!(piece.chain[k], atom.u);
            let value = &piece.values[k];
            if best.as_ref().is_none_or(|(_, b)| value < b) {
                best = Some((atom.u.clone(), value.clone()));
                trajectory_best.push((t, value.clone()));
            }
        }
        let gx: Rational = piece.gradient.iter().zip(x.coords()).map(|(g, c)| g * c).sum();
        cut_const += &piece.value - gx;
        for (s, g) in cut_grad.iter_mut().zip(&piece.gradient) {
            *s += g;
        }
        let single = &piece.value + linear_drop(&piece.gradient, &x);
        let averaged = (&cut_const + box_min(&cut_grad, &alpha)) / rational::int(iterations_used as i64);
        for bound in [single, averaged] {
            if lower_bound.as_ref().is_none_or(|lb| bound > *lb) {
                lower_bound = Some(bound);
            }
        }
        if let (Some(eps), Some((_, b)), Some(lb)) = (&cfg.tolerance, &best, &lower_bound) {
            if b - lb <= *eps {
                break;
            }
        }

        let gamma = match rule {
            StepRule::Fixed(g) => g,
            StepRule::Diminishing(g0) => g0 / Float::sqrt((t + 1) as f64),
        };
        let mut next = x.to_f64();
        for (xj, gj) in next.iter_mut().zip(&piece.gradient) {
            *xj -= gamma * rational::to_f64(gj);
            if !xj.is_finite() {
                return Err(Error::NonFinite(t));
            }
        }
        x = project_box_with_denominator(&next, &alpha, cfg.denominator_limit)?;
    }

    let (minimizer, value) = best.expect("at least one iteration ran");
    Ok(MinimizeReport {
        minimizer,
        value,
        iterations_used,
        oracle_calls: f.call_count() - calls_before,
        trajectory_best,
        lower_bound: lower_bound.unwrap_or_else(Rational::zero),
    })
}

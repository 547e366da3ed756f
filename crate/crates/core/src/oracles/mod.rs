//! Exact reference computations for small arity: brute-force minimization,
//! the convex closure `f⁻` by linear programming, and a midpoint-convexity
//! probe of the Lovász extension.

mod simplex;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::function::{check_cap, ValueOracle, DEFAULT_ENUMERATION_CAP};
use crate::lattice::{Alpha, Label, Labeling};
use crate::lovasz::{extension_value, Atom, FractionalPoint};
use crate::rational::{self, Rational};
use crate::Error;

/// Default bound on the number of LP columns (`3^5`).
pub const DEFAULT_LP_CAP: usize = 243;

/// Denominator of the sampling grid used by [`random_box_point`].
pub const SAMPLE_DENOMINATOR: i64 = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub value: Rational,
    /// The optimal distribution, restricted to its support.
    pub distribution: BTreeMap<Labeling, Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MidpointViolation {
    pub x: FractionalPoint,
    pub y: FractionalPoint,
    /// `f^L((x+y)/2) - (f^L(x) + f^L(y))/2`, strictly positive.
    pub gap: Rational,
}

/// Minimum of `f` over `D^n`; ties go to the first labeling in enumeration order.
pub fn brute_force_min<F: ValueOracle + ?Sized>(f: &F) -> Result<(Labeling, Rational), Error> {
    brute_force_min_with_cap(f, DEFAULT_ENUMERATION_CAP)
}

pub fn brute_force_min_with_cap<F: ValueOracle + ?Sized>(f: &F, cap: usize) -> Result<(Labeling, Rational), Error> {
    check_cap(f.arity(), cap)?;
    let mut best: Option<(Labeling, Rational)> = None;
    for a in Labeling::all(f.arity()) {
        let v = f.evaluate(&a);
        if best.as_ref().is_none_or(|(_, b)| v < *b) {
            best = Some((a, v));
        }
    }
    Ok(best.expect("D^n is nonempty"))
}

pub fn convex_closure<F: ValueOracle + ?Sized>(f: &F, x: &FractionalPoint) -> Result<ClosureResult, Error> {
    convex_closure_with_cap(f, x, DEFAULT_LP_CAP)
}

/// `f⁻(x) = min Σ λ(a) f(a)` over distributions `λ` on `D^n` with mean `x`.
pub fn convex_closure_with_cap<F: ValueOracle + ?Sized>(
    f: &F,
    x: &FractionalPoint,
    cap: usize,
) -> Result<ClosureResult, Error> {
    let n = f.arity();
    if x.arity() != n {
        return Err(Error::ArityMismatch { expected: n, found: x.arity() });
    }
    check_cap(n, cap)?;
    let alpha = f.alpha();
    let points: Vec<Labeling> = Labeling::all(n).collect();
    let mut a = alloc::vec![Vec::with_capacity(points.len()); n + 1];
    for p in &points {
        for (j, l) in p.labels().iter().enumerate() {
            a[j].push(l.value(alpha));
        }
        a[n].push(Rational::one());
    }
    let mut b = x.coords().to_vec();
    b.push(Rational::one());
    let costs: Vec<Rational> = points.iter().map(|p| f.evaluate(p)).collect();

    let sol = simplex::solve(&a, &b, &costs)?;
    let distribution = points
        .into_iter()
        .zip(sol.x)
        .filter(|(_, w)| !w.is_zero())
        .collect();
    Ok(ClosureResult { value: sol.objective, distribution })
}

/// `f^L((x+y)/2) - (f^L(x) + f^L(y))/2`.
pub fn midpoint_gap<F: ValueOracle + ?Sized>(
    f: &F,
    x: &FractionalPoint,
    y: &FractionalPoint,
) -> Result<Rational, Error> {
    let mid = x.midpoint(y)?;
    let two = rational::int(2);
    Ok(extension_value(f, &mid)? - (extension_value(f, x)? + extension_value(f, y)?) / two)
}

/// Looks for a pair of random box points at which `f^L` fails midpoint
/// convexity; returns the first one found.
pub fn midpoint_convexity_probe<F: ValueOracle + ?Sized>(
    f: &F,
    trials: usize,
    seed: u64,
) -> Result<Option<MidpointViolation>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let x = random_box_point(&mut rng, f.arity(), f.alpha());
        let y = random_box_point(&mut rng, f.arity(), f.alpha());
        let gap = midpoint_gap(f, &x, &y)?;
        if gap > Rational::zero() {
            return Ok(Some(MidpointViolation { x, y, gap }));
        }
    }
    Ok(None)
}

/// A point with coordinates on the grid `k / 1024`, clamped to `[-α, 1]`.
pub fn random_box_point<R: Rng + ?Sized>(rng: &mut R, n: usize, alpha: &Alpha) -> FractionalPoint {
    random_grid_point(rng, n, alpha, SAMPLE_DENOMINATOR)
}

/// Like [`random_box_point`] with grid denominator `denom`; coarse grids
/// produce ties and zeros often.
pub fn random_grid_point<R: Rng + ?Sized>(rng: &mut R, n: usize, alpha: &Alpha, denom: i64) -> FractionalPoint {
    let lo_val = -alpha.value().clone();
    let lo = (&lo_val * rational::int(denom)).floor().to_integer();
    let lo: i64 = num_traits::ToPrimitive::to_i64(&lo).expect("grid bound fits i64");
    let coords = (0..n)
        .map(|_| {
            let v = rational::ratio(rng.random_range(lo..=denom), denom);
            if v < lo_val {
                lo_val.clone()
            } else {
                v
            }
        })
        .collect();
    FractionalPoint::new(coords, alpha.clone()).expect("clamped into the box")
}

/// A random strictly decreasing chain `v_1 ≻ … ≻ v_ℓ` carrying random
/// positive weights that sum to one, outermost first.
pub fn random_chain<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Atom> {
    let mut current = random_labeling(rng, n);
    let mut chain = alloc::vec![current.clone()];
    while !current.is_zero() && rng.random_bool(0.7) {
        let mut next = current.clone();
        while next == current {
            for j in 0..n {
                if current.get(j) != Label::Zero && rng.random_bool(0.5) {
                    next.set(j, Label::Zero);
                }
            }
        }
        chain.push(next.clone());
        current = next;
    }
    let raw: Vec<i64> = chain.iter().map(|_| rng.random_range(1..=1000)).collect();
    let total: i64 = raw.iter().sum();
    chain
        .into_iter()
        .zip(raw)
        .map(|(u, k)| Atom { u, weight: rational::ratio(k, total) })
        .collect()
}

/// `Σ weight · numeric(u)` over the given atoms.
pub fn mean_of(atoms: &[Atom], alpha: &Alpha) -> Vec<Rational> {
    let n = atoms.first().map_or(0, |a| a.u.arity());
    let mut x = alloc::vec![Rational::zero(); n];
    for atom in atoms {
        for (xj, l) in x.iter_mut().zip(atom.u.labels()) {
            *xj += &atom.weight * l.value(alpha);
        }
    }
    x
}

/// A uniformly random labeling of `D^n`.
pub fn random_labeling<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Labeling {
    Labeling::new((0..n).map(|_| Label::ALL[rng.random_range(0..3)]).collect())
}

//! Value oracles, explicit function representations, the α-bisubmodularity
//! checker and a generator of random α-bisubmodular instances.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use num_traits::{One, Zero};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{Alpha, Label, Labeling};
use crate::rational::{self, Rational};
use crate::Error;

/// Default bound on `3^n` for anything that enumerates `D^n`.
pub const DEFAULT_ENUMERATION_CAP: usize = 6561;

/// A function `D^n → ℚ` accessible only through value queries.
///
/// Every call to [`evaluate`](ValueOracle::evaluate) increments the counter
/// reported by [`call_count`](ValueOracle::call_count) by exactly one.
pub trait ValueOracle {
    fn arity(&self) -> usize;

    fn alpha(&self) -> &Alpha;

    /// Panics if `a.arity() != self.arity()`.
    fn evaluate(&self, a: &Labeling) -> Rational;

    fn call_count(&self) -> u64;
}

impl<T: ValueOracle + ?Sized> ValueOracle for &T {
    fn arity(&self) -> usize {
        (**self).arity()
    }

    fn alpha(&self) -> &Alpha {
        (**self).alpha()
    }

    fn evaluate(&self, a: &Labeling) -> Rational {
        (**self).evaluate(a)
    }

    fn call_count(&self) -> u64 {
        (**self).call_count()
    }
}

#[derive(Debug, Default)]
struct CallCounter(AtomicU64);

impl CallCounter {
    fn bump(&self) {
        self.0.fetch_add(1, Ordering::Relaxed);
    }

    fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<usize, Error> {
    match 3usize.checked_pow(n as u32) {
        Some(size) if size <= cap => Ok(size),
        _ => Err(Error::ArityCapExceeded { arity: n, cap }),
    }
}

/// A function stored as its complete table of `3^n` values, indexed by
/// [`Labeling::index`].
#[derive(Debug)]
pub struct TableFunction {
    arity: usize,
    alpha: Alpha,
    values: Vec<Rational>,
    calls: CallCounter,
}

impl Clone for TableFunction {
    /// The clone starts with a fresh call counter.
    fn clone(&self) -> Self {
        TableFunction {
            arity: self.arity,
            alpha: self.alpha.clone(),
            values: self.values.clone(),
            calls: CallCounter::default(),
        }
    }
}

impl PartialEq for TableFunction {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.alpha == other.alpha && self.values == other.values
    }
}

impl TableFunction {
    pub fn new(arity: usize, alpha: Alpha, values: Vec<Rational>) -> Result<Self, Error> {
        if arity == 0 {
            return Err(Error::ZeroArity);
        }
        let expected = 3usize
            .checked_pow(arity as u32)
            .ok_or(Error::ArityCapExceeded { arity, cap: usize::MAX })?;
        if values.len() != expected {
            return Err(Error::InvalidTable(format!(
                "expected {expected} values for arity {arity}, found {}",
                values.len()
            )));
        }
        Ok(TableFunction { arity, alpha, values, calls: CallCounter::default() })
    }

    pub fn from_fn(arity: usize, alpha: Alpha, mut f: impl FnMut(&Labeling) -> Rational) -> Result<Self, Error> {
        if arity == 0 {
            return Err(Error::ZeroArity);
        }
        let values = Labeling::all(arity).map(|a| f(&a)).collect();
        Self::new(arity, alpha, values)
    }

    /// Builds from a map that must contain every labeling of `D^n`.
    pub fn from_map(arity: usize, alpha: Alpha, map: &BTreeMap<Labeling, Rational>) -> Result<Self, Error> {
        let mut values = Vec::new();
        for a in Labeling::all(arity) {
            match map.get(&a) {
                Some(v) => values.push(v.clone()),
                None => return Err(Error::InvalidTable(format!("missing key {a}"))),
            }
        }
        if map.len() != values.len() {
            return Err(Error::InvalidTable(format!("expected {} keys, found {}", values.len(), map.len())));
        }
        Self::new(arity, alpha, values)
    }

    pub fn constant(arity: usize, alpha: Alpha, c: Rational) -> Result<Self, Error> {
        Self::from_fn(arity, alpha, |_| c.clone())
    }

    /// `f(a) = Σ_j c_j · numeric(a)_j`.
    pub fn linear(alpha: Alpha, c: &[Rational]) -> Result<Self, Error> {
        let a_val = alpha.value().clone();
        Self::from_fn(c.len(), alpha, |lab| {
            lab.labels()
                .iter()
                .zip(c)
                .map(|(l, cj)| match l {
                    Label::Neg => -(cj * &a_val),
                    Label::Zero => Rational::zero(),
                    Label::Pos => cj.clone(),
                })
                .sum()
        })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Table lookup that does not count as an oracle call.
    pub fn value_at(&self, a: &Labeling) -> &Rational {
        &self.values[a.index()]
    }

    pub(crate) fn value_by_index(&self, i: usize) -> &Rational {
        &self.values[i]
    }
}

impl ValueOracle for TableFunction {
    fn arity(&self) -> usize {
        self.arity
    }

    fn alpha(&self) -> &Alpha {
        &self.alpha
    }

    fn evaluate(&self, a: &Labeling) -> Rational {
        assert_eq!(a.arity(), self.arity, "labeling arity does not match oracle arity");
        self.calls.bump();
        self.values[a.index()].clone()
    }

    fn call_count(&self) -> u64 {
        self.calls.get()
    }
}

/// One summand of a [`SumFunction`]: a table over the coordinates in `scope`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub scope: Vec<usize>,
    pub table: TableFunction,
}

/// `f(x) = Σ_t term_t(x restricted to scope_t)`.
#[derive(Debug, Clone)]
pub struct SumFunction {
    arity: usize,
    alpha: Alpha,
    terms: Vec<Term>,
    calls: CallCounter,
}

impl SumFunction {
    pub fn new(arity: usize, alpha: Alpha, terms: Vec<Term>) -> Result<Self, Error> {
        if arity == 0 {
            return Err(Error::ZeroArity);
        }
        for (t, term) in terms.iter().enumerate() {
            if term.scope.is_empty() {
                return Err(Error::InvalidScope(format!("term {t} has an empty scope")));
            }
            if term.table.arity() != term.scope.len() {
                return Err(Error::InvalidScope(format!(
                    "term {t}: scope length {} does not match table arity {}",
                    term.scope.len(),
                    term.table.arity()
                )));
            }
            if term.table.alpha() != &alpha {
                return Err(Error::InvalidScope(format!("term {t}: alpha differs from the instance alpha")));
            }
            for (k, &j) in term.scope.iter().enumerate() {
                if j >= arity {
                    return Err(Error::InvalidScope(format!("term {t}: index {j} out of range for arity {arity}")));
                }
                if term.scope[..k].contains(&j) {
                    return Err(Error::InvalidScope(format!("term {t}: index {j} repeated")));
                }
            }
        }
        Ok(SumFunction { arity, alpha, terms, calls: CallCounter::default() })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }
}

impl Clone for CallCounter {
    fn clone(&self) -> Self {
        CallCounter::default()
    }
}

impl ValueOracle for SumFunction {
    fn arity(&self) -> usize {
        self.arity
    }

    fn alpha(&self) -> &Alpha {
        &self.alpha
    }

    fn evaluate(&self, a: &Labeling) -> Rational {
        assert_eq!(a.arity(), self.arity, "labeling arity does not match oracle arity");
        self.calls.bump();
        let labels = a.labels();
        self.terms
            .iter()
            .map(|term| {
                let i = term.scope.iter().fold(0, |acc, &j| acc * 3 + labels[j].digit());
                term.table.value_by_index(i)
            })
            .sum()
    }

    fn call_count(&self) -> u64 {
        self.calls.get()
    }
}

/// A pair `(a, b)` at which
/// `f(a∧₀b) + α·f(a∨₀b) + (1-α)·f(a∨₁b) ≤ f(a) + f(b)` fails; `lhs > rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationWitness {
    pub a: Labeling,
    pub b: Labeling,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Materializes all `3^n` values of `f`, subject to `cap`.
pub fn expand_to_table_with_cap<F: ValueOracle + ?Sized>(f: &F, cap: usize) -> Result<TableFunction, Error> {
    check_cap(f.arity(), cap)?;
    TableFunction::from_fn(f.arity(), f.alpha().clone(), |a| f.evaluate(a))
}

pub fn expand_to_table<F: ValueOracle + ?Sized>(f: &F) -> Result<TableFunction, Error> {
    expand_to_table_with_cap(f, DEFAULT_ENUMERATION_CAP)
}

pub fn check_alpha_bisubmodular<F: ValueOracle + ?Sized>(f: &F) -> Result<Option<ViolationWitness>, Error> {
    check_alpha_bisubmodular_with_cap(f, DEFAULT_ENUMERATION_CAP)
}

/// Tests the α-bisubmodular inequality on all `9^n` ordered pairs and
/// returns the first violating pair in enumeration order of `(a, b)`.
///
/// The oracle is queried once per point of `D^n`.
pub fn check_alpha_bisubmodular_with_cap<F: ValueOracle + ?Sized>(
    f: &F,
    cap: usize,
) -> Result<Option<ViolationWitness>, Error> {
    let n = f.arity();
    let size = check_cap(n, cap)?;
    let table = expand_to_table_with_cap(f, cap)?;
    let alpha = f.alpha().value();
    let co_alpha = Rational::one() - alpha;
    let digits: Vec<Vec<u8>> = (0..size).map(|i| digits_of(n, i)).collect();

    for ia in 0..size {
        for ib in 0..size {
            let (mut im, mut i0, mut i1) = (0usize, 0usize, 0usize);
            for j in 0..n {
                let (m, j0, j1) = combine_digit(digits[ia][j], digits[ib][j]);
                im = im * 3 + m;
                i0 = i0 * 3 + j0;
                i1 = i1 * 3 + j1;
            }
            let rhs = table.value_by_index(ia) + table.value_by_index(ib);
            let lhs = table.value_by_index(im) + alpha * table.value_by_index(i0) + &co_alpha * table.value_by_index(i1);
            if lhs > rhs {
                return Ok(Some(ViolationWitness {
                    a: Labeling::from_index(n, ia),
                    b: Labeling::from_index(n, ib),
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(None)
}

fn digits_of(n: usize, mut i: usize) -> Vec<u8> {
    let mut d = alloc::vec![0u8; n];
    for slot in d.iter_mut().rev() {
        *slot = (i % 3) as u8;
        i /= 3;
    }
    d
}

// Digits are Neg = 0, Zero = 1, Pos = 2. Returns (∧₀, ∨₀, ∨₁).
fn combine_digit(x: u8, y: u8) -> (usize, usize, usize) {
    const ZERO: u8 = 1;
    let (x, y) = (x as usize, y as usize);
    if x == y {
        (x, x, x)
    } else if x == ZERO as usize {
        (x, y, y)
    } else if y == ZERO as usize {
        (y, x, x)
    } else {
        (1, 1, 2)
    }
}

/// Knobs of [`generate_instance_with`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    /// Inclusive range of the integer table entries.
    pub value_range: (i64, i64),
    /// Draws allowed per term before giving up.
    pub rejection_budget: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig { value_range: (-10, 10), rejection_budget: 10_000 }
    }
}

pub fn generate_instance(
    n: usize,
    alpha: &Alpha,
    num_terms: usize,
    max_scope: usize,
    seed: u64,
) -> Result<SumFunction, Error> {
    generate_instance_with(n, alpha, num_terms, max_scope, seed, &GeneratorConfig::default())
}

/// Random sum of unary/binary α-bisubmodular terms.
///
/// Each term table is drawn with integer entries uniform in
/// `cfg.value_range` and kept only if the checker accepts it; sums of such
/// terms stay α-bisubmodular. Deterministic in `seed`.
pub fn generate_instance_with(
    n: usize,
    alpha: &Alpha,
    num_terms: usize,
    max_scope: usize,
    seed: u64,
    cfg: &GeneratorConfig,
) -> Result<SumFunction, Error> {
    if n == 0 {
        return Err(Error::ZeroArity);
    }
    if num_terms == 0 {
        return Err(Error::InvalidArgument("num_terms must be at least 1".into()));
    }
    if !(1..=2).contains(&max_scope) {
        return Err(Error::InvalidArgument(format!("max_scope must be 1 or 2, got {max_scope}")));
    }
    let (lo, hi) = cfg.value_range;
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty value range [{lo}, {hi}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::with_capacity(num_terms);
    for _ in 0..num_terms {
        let width = rng.random_range(1..=max_scope.min(n));
        let mut scope = index::sample(&mut rng, n, width).into_vec();
        scope.sort_unstable();
        let table = draw_term(width, alpha, &mut rng, cfg)?;
        terms.push(Term { scope, table });
    }
    SumFunction::new(n, alpha.clone(), terms)
}

fn draw_term(width: usize, alpha: &Alpha, rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<TableFunction, Error> {
    let (lo, hi) = cfg.value_range;
    let size = 3usize.pow(width as u32);
    for _ in 0..cfg.rejection_budget {
        let values = (0..size).map(|_| rational::int(rng.random_range(lo..=hi))).collect();
        let table = TableFunction::new(width, alpha.clone(), values)?;
        if check_alpha_bisubmodular(&table)?.is_none() {
            return Ok(table);
        }
    }
    Err(Error::RejectionBudgetExhausted { draws: cfg.rejection_budget })
}

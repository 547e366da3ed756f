//! Chain decomposition of a point of `[-α, 1]^n`, the Lovász extension
//! built on it, and subgradients of that extension.
//!
//! Every point `x` of the box is, in exactly one way, a convex combination of
//! labelings forming a strictly decreasing chain `u_1 ≻ u_2 ≻ … ≻ u_k`. The
//! extension `f^L(x)` is the same convex combination of the values `f(u_i)`.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::function::ValueOracle;
use crate::lattice::{Alpha, Label, Labeling};
use crate::rational::{self, Rational};
use crate::Error;

/// A rational vector in `[-α, 1]^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalPoint {
    coords: Vec<Rational>,
    alpha: Alpha,
}

impl FractionalPoint {
    pub fn new(coords: Vec<Rational>, alpha: Alpha) -> Result<Self, Error> {
        let lo = -alpha.value().clone();
        let hi = Rational::one();
        for (index, c) in coords.iter().enumerate() {
            if *c < lo || *c > hi {
                return Err(Error::OutOfBox { index, value: rational::format(c) });
            }
        }
        Ok(FractionalPoint { coords, alpha })
    }

    pub(crate) fn new_unchecked(coords: Vec<Rational>, alpha: Alpha) -> Self {
        FractionalPoint { coords, alpha }
    }

    pub fn origin(n: usize, alpha: Alpha) -> Self {
        FractionalPoint { coords: alloc::vec![Rational::zero(); n], alpha }
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn alpha(&self) -> &Alpha {
        &self.alpha
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(rational::to_f64).collect()
    }

    /// `(self + other) / 2`; both points must share arity and α.
    pub fn midpoint(&self, other: &FractionalPoint) -> Result<FractionalPoint, Error> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: other.arity() });
        }
        let two = rational::int(2);
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| (a + b) / &two).collect();
        Ok(FractionalPoint { coords, alpha: self.alpha.clone() })
    }

    // m_j = x_j for x_j >= 0, -x_j / α otherwise.
    fn normalized_magnitudes(&self) -> Vec<Rational> {
        self.coords
            .iter()
            .map(|c| if c.is_negative() { -c / self.alpha.value() } else { c.clone() })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub u: Labeling,
    pub weight: Rational,
}

/// The chain-supported distribution with a given mean, outermost atom first.
///
/// Weights are positive and sum to one; the labelings strictly decrease
/// under `≺`, so the all-Zero labeling can only be last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDecomposition {
    atoms: Vec<Atom>,
}

impl ChainDecomposition {
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_weight(&self) -> Rational {
        self.atoms.iter().map(|a| &a.weight).sum()
    }

    /// `Σ weight_i · numeric(u_i)`.
    pub fn marginals(&self, alpha: &Alpha) -> Vec<Rational> {
        let n = self.atoms.first().map_or(0, |a| a.u.arity());
        let mut out = alloc::vec![Rational::zero(); n];
        for atom in &self.atoms {
            for (slot, l) in out.iter_mut().zip(atom.u.labels()) {
                if *l != Label::Zero {
                    *slot += &atom.weight * l.value(alpha);
                }
            }
        }
        out
    }

    /// Whether consecutive atoms strictly decrease under `≺`.
    pub fn is_strict_chain(&self) -> bool {
        self.atoms.windows(2).all(|w| w[1].u.less(&w[0].u).unwrap_or(false))
    }
}

/// Chain decomposition of `x` by the greedy sign-pattern recursion.
///
/// At each step `u` is the sign pattern of the current residual, its weight
/// is the smallest normalized magnitude among the nonzero coordinates, and
/// the residual is decreased by `weight · numeric(u)`. Once the residual
/// vanishes the all-Zero labeling takes the remaining mass. Coordinates tied
/// at the minimum leave together. Zero-weight atoms are not reported.
pub fn decompose(x: &FractionalPoint) -> ChainDecomposition {
    let alpha = x.alpha.value();
    let mut residual = x.coords.clone();
    let mut placed = Rational::zero();
    let mut atoms = Vec::new();
    // Each nonzero step zeroes at least one coordinate, so at most n + 1 steps.
    loop {
        let u = Labeling::new(
            residual
                .iter()
                .map(|c| {
                    if c.is_positive() {
                        Label::Pos
                    } else if c.is_negative() {
                        Label::Neg
                    } else {
                        Label::Zero
                    }
                })
                .collect(),
        );
        if u.is_zero() {
            let rest = Rational::one() - &placed;
            if rest.is_positive() {
                atoms.push(Atom { u, weight: rest });
            }
            break;
        }
        let weight = residual
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| if c.is_negative() { -c / alpha } else { c.clone() })
            .min()
            .expect("nonzero labeling has a nonzero coordinate");
        for (c, l) in residual.iter_mut().zip(u.labels()) {
            match l {
                Label::Pos => *c -= &weight,
                Label::Neg => *c += &weight * alpha,
                Label::Zero => {}
            }
        }
        placed += &weight;
        atoms.push(Atom { u, weight });
    }
    ChainDecomposition { atoms }
}

fn check_point<F: ValueOracle + ?Sized>(f: &F, x: &FractionalPoint) -> Result<(), Error> {
    if f.arity() != x.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), found: x.arity() });
    }
    Ok(())
}

/// `f^L(x)`, using one oracle call per atom of the decomposition.
pub fn extension_value<F: ValueOracle + ?Sized>(f: &F, x: &FractionalPoint) -> Result<Rational, Error> {
    check_point(f, x)?;
    Ok(decompose(x).atoms.iter().map(|a| &a.weight * f.evaluate(&a.u)).sum())
}

/// The linear piece of `f^L` on a cell whose closure contains `x`.
///
/// `chain[k]` carries the signs of `x` on the `k` coordinates of largest
/// normalized magnitude (ties: the smaller index leaves the support first;
/// `x_j = 0` counts as positive). On that cell
/// `f^L(y) = f(chain[0]) + Σ_k m_{order[k]}(y) · (f(chain[k+1]) - f(chain[k]))`.
#[derive(Debug, Clone)]
pub(crate) struct LinearPiece {
    pub chain: Vec<Labeling>,
    pub values: Vec<Rational>,
    pub gradient: Vec<Rational>,
    pub value: Rational,
}

pub(crate) fn linear_piece<F: ValueOracle + ?Sized>(f: &F, x: &FractionalPoint) -> LinearPiece {
    let n = x.arity();
    let alpha = x.alpha.value();
    let m = x.normalized_magnitudes();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j].cmp(&m[i]).then(j.cmp(&i)));

    let mut chain = Vec::with_capacity(n + 1);
    let mut current = Labeling::zeros(n);
    chain.push(current.clone());
    for &j in &order {
        current.set(j, if x.coords[j].is_negative() { Label::Neg } else { Label::Pos });
        chain.push(current.clone());
    }
    let values: Vec<Rational> = chain.iter().map(|u| f.evaluate(u)).collect();

    let mut gradient = alloc::vec![Rational::zero(); n];
    let mut value = values[0].clone();
    for (k, &j) in order.iter().enumerate() {
        let step = &values[k + 1] - &values[k];
        value += &m[j] * &step;
        gradient[j] = if x.coords[j].is_negative() { -step / alpha } else { step };
    }
    LinearPiece { chain, values, gradient, value }
}

/// A subgradient of `f^L` at `x`.
///
/// This is the gradient of a linear piece of `f^L` whose cell touches `x`,
/// hence a valid subgradient whenever `f` is α-bisubmodular (then `f^L` is
/// convex). For other `f` the vector carries no guarantee. Makes `n + 1`
/// oracle calls.
pub fn subgradient<F: ValueOracle + ?Sized>(f: &F, x: &FractionalPoint) -> Result<Vec<Rational>, Error> {
    check_point(f, x)?;
    Ok(linear_piece(f, x).gradient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::TableFunction;
    use crate::lattice::numeric;
    use crate::rational::{int, ratio};

    fn point(coords: &[(i64, i64)], alpha: &Alpha) -> FractionalPoint {
        FractionalPoint::new(coords.iter().map(|&(p, q)| ratio(p, q)).collect(), alpha.clone()).unwrap()
    }

    fn atoms(d: &ChainDecomposition) -> Vec<(alloc::string::String, Rational)> {
        d.atoms().iter().map(|a| (alloc::string::ToString::to_string(&a.u), a.weight.clone())).collect()
    }

    #[test]
    fn hand_executed_examples() {
        let half = Alpha::from_ratio(1, 2).unwrap();
        let d = decompose(&point(&[(3, 5), (-1, 5)], &half));
        assert_eq!(
            atoms(&d),
            [("+-".into(), ratio(2, 5)), ("+0".into(), ratio(1, 5)), ("00".into(), ratio(2, 5))]
        );
        assert_eq!(d.marginals(&half), [ratio(3, 5), ratio(-1, 5)]);

        let d = decompose(&point(&[(1, 2), (-1, 2)], &Alpha::one()));
        assert_eq!(atoms(&d), [("+-".into(), ratio(1, 2)), ("00".into(), ratio(1, 2))]);

        let d = decompose(&FractionalPoint::origin(3, half.clone()));
        assert_eq!(atoms(&d), [("000".into(), int(1))]);
    }

    #[test]
    fn vertices_decompose_to_themselves() {
        let alpha = Alpha::from_ratio(2, 3).unwrap();
        for a in Labeling::all(3) {
            let d = decompose(&numeric(&a, &alpha));
            assert_eq!(d.atoms(), [Atom { u: a, weight: int(1) }]);
        }
    }

    #[test]
    fn ties_leave_together() {
        let half = Alpha::from_ratio(1, 2).unwrap();
        // Normalized magnitudes (1/4, 1/4, 1/2).
        let d = decompose(&point(&[(1, 4), (-1, 8), (1, 2)], &half));
        assert_eq!(
            atoms(&d),
            [("+-+".into(), ratio(1, 4)), ("00+".into(), ratio(1, 4)), ("000".into(), ratio(1, 2))]
        );
        assert!(d.is_strict_chain());
    }

    #[test]
    fn full_mass_point_has_no_zero_atom() {
        let alpha = Alpha::from_ratio(1, 4).unwrap();
        let d = decompose(&point(&[(1, 1), (-1, 8)], &alpha));
        assert_eq!(atoms(&d), [("+-".into(), ratio(1, 2)), ("+0".into(), ratio(1, 2))]);
    }

    #[test]
    fn box_and_arity_checks() {
        let half = Alpha::from_ratio(1, 2).unwrap();
        assert!(matches!(
            FractionalPoint::new(alloc::vec![int(0), ratio(-3, 5)], half.clone()),
            Err(Error::OutOfBox { index: 1, .. })
        ));
        assert!(FractionalPoint::new(alloc::vec![ratio(11, 10)], half.clone()).is_err());
        let f = TableFunction::constant(2, half.clone(), int(1)).unwrap();
        assert!(matches!(
            extension_value(&f, &FractionalPoint::origin(3, half.clone())),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(subgradient(&f, &FractionalPoint::origin(1, half)).is_err());
    }

    #[test]
    fn extension_of_constant_and_linear() {
        let alpha = Alpha::from_ratio(3, 4).unwrap();
        let c = [int(2), ratio(-1, 3), int(5)];
        let lin = TableFunction::linear(alpha.clone(), &c).unwrap();
        let konst = TableFunction::constant(3, alpha.clone(), ratio(9, 7)).unwrap();
        let x = point(&[(1, 3), (-1, 2), (0, 1)], &alpha);
        let dot: Rational = x.coords().iter().zip(&c).map(|(a, b)| a * b).sum();
        assert_eq!(extension_value(&lin, &x).unwrap(), dot);
        assert_eq!(subgradient(&lin, &x).unwrap(), c);
        assert_eq!(extension_value(&konst, &x).unwrap(), ratio(9, 7));
        assert_eq!(subgradient(&konst, &x).unwrap(), [int(0), int(0), int(0)]);
    }

    #[test]
    fn midpoint_formula_for_incomparable_pair() {
        let alpha = Alpha::from_ratio(1, 3).unwrap();
        let f = TableFunction::from_fn(2, alpha.clone(), |a| int((a.index() * a.index()) as i64 % 11)).unwrap();
        let a: Labeling = "+0".parse().unwrap();
        let b: Labeling = "-+".parse().unwrap();
        let mid = numeric(&a, &alpha).midpoint(&numeric(&b, &alpha)).unwrap();
        let m = crate::lattice::meet0(&a, &b).unwrap();
        let j0 = crate::lattice::join(&a, &b, Label::Zero).unwrap();
        let j1 = crate::lattice::join(&a, &b, Label::Pos).unwrap();
        let a_val = alpha.value();
        let expected = f.value_at(&m) / int(2)
            + a_val * f.value_at(&j0) / int(2)
            + (int(1) - a_val) * f.value_at(&j1) / int(2);
        assert_eq!(extension_value(&f, &mid).unwrap(), expected);
    }

    #[test]
    fn linear_piece_value_matches_extension() {
        let alpha = Alpha::from_ratio(1, 2).unwrap();
        let f = TableFunction::from_fn(3, alpha.clone(), |a| int((a.index() as i64 * 7) % 13 - 6)).unwrap();
        for coords in [
            [(1, 3), (-1, 5), (0, 1)],
            [(1, 2), (-1, 4), (1, 2)],
            [(1, 1), (-1, 2), (1, 7)],
            [(0, 1), (0, 1), (0, 1)],
        ] {
            let x = point(&coords, &alpha);
            assert_eq!(linear_piece(&f, &x).value, extension_value(&f, &x).unwrap());
        }
    }

    #[test]
    fn oracle_call_budget() {
        let alpha = Alpha::from_ratio(1, 2).unwrap();
        let f = TableFunction::constant(4, alpha.clone(), int(0)).unwrap();
        let x = point(&[(1, 3), (-1, 5), (1, 7), (-1, 9)], &alpha);
        extension_value(&f, &x).unwrap();
        assert!(f.call_count() <= 5);
        let before = f.call_count();
        subgradient(&f, &x).unwrap();
        assert_eq!(f.call_count() - before, 5);
    }
}

//! The domain `D = {-α, 0, 1}`, its partial order and the operations `∧₀`,
//! `∨₀`, `∨₁`, lifted componentwise to labelings in `D^n`.
//!
//! Labels are symbolic: the same [`Labeling`] is valid for every α, and only
//! [`numeric`] turns it into rational coordinates.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::lovasz::FractionalPoint;
use crate::rational::{self, Rational};
use crate::Error;

/// The skew parameter, an exact rational in `(0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alpha(Rational);

impl Alpha {
    pub fn new(value: Rational) -> Result<Self, Error> {
        if value.is_positive() && value <= Rational::one() {
            Ok(Alpha(value))
        } else {
            Err(Error::InvalidAlpha(rational::format(&value)))
        }
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Result<Self, Error> {
        if denom == 0 {
            return Err(Error::InvalidAlpha(alloc::format!("{numer}/{denom}")));
        }
        Self::new(rational::ratio(numer, denom))
    }

    pub fn one() -> Self {
        Alpha(Rational::one())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Alpha::new(rational::parse(s)?)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// One element of `D`: `Neg` is `-α`, `Zero` is `0`, `Pos` is `1`.
///
/// The derived `Ord` (`Neg < Zero < Pos`) is the enumeration order of the
/// `'-'`, `'0'`, `'+'` text encoding, not the domain order `≺`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Neg,
    Zero,
    Pos,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::Neg, Label::Zero, Label::Pos];

    pub fn to_char(self) -> char {
        match self {
            Label::Neg => '-',
            Label::Zero => '0',
            Label::Pos => '+',
        }
    }

    pub fn from_char(c: char) -> Result<Self, Error> {
        match c {
            '-' => Ok(Label::Neg),
            '0' => Ok(Label::Zero),
            '+' => Ok(Label::Pos),
            other => Err(Error::InvalidLabel(other)),
        }
    }

    /// Position in the `-`, `0`, `+` enumeration order.
    pub fn digit(self) -> usize {
        self as usize
    }

    pub fn value(self, alpha: &Alpha) -> Rational {
        match self {
            Label::Neg => -alpha.value().clone(),
            Label::Zero => Rational::zero(),
            Label::Pos => Rational::one(),
        }
    }

    fn leq(self, other: Label) -> bool {
        self == other || self == Label::Zero
    }
}

/// Strict order on `D`: `0 ≺ 1`, `0 ≺ -α`, and `1`, `-α` incomparable.
pub fn less(a: Label, b: Label) -> bool {
    a == Label::Zero && b != Label::Zero
}

/// A point of `D^n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Labeling(Vec<Label>);

impl Labeling {
    pub fn new(labels: Vec<Label>) -> Self {
        Labeling(labels)
    }

    pub fn zeros(n: usize) -> Self {
        Labeling(alloc::vec![Label::Zero; n])
    }

    pub fn constant(n: usize, label: Label) -> Self {
        Labeling(alloc::vec![label; n])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn get(&self, j: usize) -> Label {
        self.0[j]
    }

    pub fn set(&mut self, j: usize, label: Label) {
        self.0[j] = label;
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&l| l == Label::Zero)
    }

    /// Number of coordinates that are not `Zero`.
    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&l| l != Label::Zero).count()
    }

    /// Rank in the lexicographic enumeration of `D^n` under `- < 0 < +`,
    /// first coordinate most significant.
    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, l| acc * 3 + l.digit())
    }

    pub fn from_index(n: usize, mut index: usize) -> Self {
        let mut labels = alloc::vec![Label::Neg; n];
        for slot in labels.iter_mut().rev() {
            *slot = Label::ALL[index % 3];
            index /= 3;
        }
        Labeling(labels)
    }

    /// All `3^n` labelings in enumeration order.
    pub fn all(n: usize) -> impl Iterator<Item = Labeling> {
        (0..3usize.pow(n as u32)).map(move |i| Labeling::from_index(n, i))
    }

    /// Componentwise `≼`.
    pub fn leq(&self, other: &Labeling) -> Result<bool, Error> {
        check_arity(self, other)?;
        Ok(self.0.iter().zip(&other.0).all(|(&a, &b)| a.leq(b)))
    }

    /// Componentwise `≺`: `≼` and not equal.
    pub fn less(&self, other: &Labeling) -> Result<bool, Error> {
        Ok(self.leq(other)? && self != other)
    }

    /// Restriction to the given coordinates, in scope order.
    pub fn restrict(&self, scope: &[usize]) -> Labeling {
        Labeling(scope.iter().map(|&j| self.0[j]).collect())
    }
}

impl FromStr for Labeling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars().map(Label::from_char).collect::<Result<Vec<_>, _>>().map(Labeling)
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            fmt::Write::write_char(f, l.to_char())?;
        }
        Ok(())
    }
}

impl From<Labeling> for String {
    fn from(l: Labeling) -> String {
        l.to_string()
    }
}

fn check_arity(a: &Labeling, b: &Labeling) -> Result<(), Error> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch { expected: a.arity(), found: b.arity() });
    }
    Ok(())
}

fn meet_label(a: Label, b: Label) -> Label {
    if a.leq(b) {
        a
    } else if b.leq(a) {
        b
    } else {
        Label::Zero
    }
}

fn join_label(a: Label, b: Label, tiebreak: Label) -> Label {
    if a.leq(b) {
        b
    } else if b.leq(a) {
        a
    } else {
        tiebreak
    }
}

/// `a ∧₀ b`: componentwise minimum under `≺`, with the clash `{1, -α}` sent to `0`.
pub fn meet0(a: &Labeling, b: &Labeling) -> Result<Labeling, Error> {
    check_arity(a, b)?;
    Ok(Labeling(a.0.iter().zip(&b.0).map(|(&x, &y)| meet_label(x, y)).collect()))
}

/// `a ∨_t b` for `t ∈ {Zero, Pos}`: componentwise maximum under `≺`, with
/// the clash `{1, -α}` sent to `t`.
pub fn join(a: &Labeling, b: &Labeling, tiebreak: Label) -> Result<Labeling, Error> {
    if tiebreak == Label::Neg {
        return Err(Error::InvalidTiebreak);
    }
    check_arity(a, b)?;
    Ok(Labeling(a.0.iter().zip(&b.0).map(|(&x, &y)| join_label(x, y, tiebreak)).collect()))
}

/// Coordinates of `a` in `[-α, 1]^n`.
pub fn numeric(a: &Labeling, alpha: &Alpha) -> FractionalPoint {
    FractionalPoint::new_unchecked(a.0.iter().map(|l| l.value(alpha)).collect(), alpha.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use Label::*;

    fn lab(s: &str) -> Labeling {
        s.parse().unwrap()
    }

    #[test]
    fn order_on_labels() {
        assert!(less(Zero, Pos));
        assert!(less(Zero, Neg));
        assert!(!less(Pos, Neg));
        assert!(!less(Neg, Pos));
        assert!(!less(Zero, Zero));
        assert!(!less(Pos, Zero));
    }

    #[test]
    fn meet_examples() {
        assert_eq!(meet0(&lab("+"), &lab("-")).unwrap(), lab("0"));
        assert_eq!(meet0(&lab("+0"), &lab("+-")).unwrap(), lab("+0"));
        for a in Labeling::all(3) {
            assert_eq!(meet0(&a, &a).unwrap(), a);
        }
    }

    #[test]
    fn join_examples() {
        assert_eq!(join(&lab("+"), &lab("-"), Zero).unwrap(), lab("0"));
        assert_eq!(join(&lab("+"), &lab("-"), Pos).unwrap(), lab("+"));
        assert_eq!(join(&lab("0-"), &lab("--"), Zero).unwrap(), lab("--"));
        assert_eq!(join(&lab("+"), &lab("-"), Neg), Err(Error::InvalidTiebreak));
    }

    #[test]
    fn arity_mismatch() {
        assert!(matches!(meet0(&lab("+"), &lab("+-")), Err(Error::ArityMismatch { .. })));
        assert!(matches!(join(&lab("+"), &lab("+-"), Pos), Err(Error::ArityMismatch { .. })));
        assert!(lab("0").less(&lab("00")).is_err());
    }

    #[test]
    fn numeric_examples() {
        let half = Alpha::from_ratio(1, 2).unwrap();
        assert_eq!(numeric(&lab("+0-"), &half).coords(), &[int(1), int(0), ratio(-1, 2)]);
        assert_eq!(numeric(&lab("000"), &half).coords(), &[int(0), int(0), int(0)]);
        assert_eq!(numeric(&lab("-"), &Alpha::one()).coords(), &[int(-1)]);
    }

    #[test]
    fn alpha_range() {
        assert!(Alpha::from_ratio(0, 1).is_err());
        assert!(Alpha::from_ratio(-1, 2).is_err());
        assert!(Alpha::from_ratio(3, 2).is_err());
        assert!(Alpha::from_ratio(1, 0).is_err());
        assert!("1".parse::<Alpha>().is_ok());
        assert!("1/3".parse::<Alpha>().is_ok());
    }

    #[test]
    fn label_pairs_commute_and_idempotent() {
        for &x in &Label::ALL {
            for &y in &Label::ALL {
                assert_eq!(meet_label(x, y), meet_label(y, x));
                assert_eq!(join_label(x, y, Zero), join_label(y, x, Zero));
                assert_eq!(join_label(x, y, Pos), join_label(y, x, Pos));
            }
            assert_eq!(meet_label(x, x), x);
            assert_eq!(join_label(x, x, Zero), x);
            assert_eq!(join_label(x, x, Pos), x);
        }
    }

    #[test]
    fn strict_partial_order_exhaustive() {
        let all: Vec<_> = Labeling::all(3).collect();
        for a in &all {
            assert!(!a.less(a).unwrap());
            for b in &all {
                if a.less(b).unwrap() {
                    assert!(!b.less(a).unwrap());
                    for c in &all {
                        if b.less(c).unwrap() {
                            assert!(a.less(c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lattice_identity_and_chain_exhaustive() {
        for alpha in [ratio(1, 4), ratio(1, 2), ratio(3, 4), int(1)] {
            let alpha = Alpha::new(alpha).unwrap();
            let a_val = alpha.value().clone();
            for n in 1..=3 {
                for a in Labeling::all(n) {
                    for b in Labeling::all(n) {
                        let m = meet0(&a, &b).unwrap();
                        let j0 = join(&a, &b, Zero).unwrap();
                        let j1 = join(&a, &b, Pos).unwrap();
                        assert!(m.leq(&j0).unwrap() && j0.leq(&j1).unwrap());
                        let (nm, n0, n1) = (numeric(&m, &alpha), numeric(&j0, &alpha), numeric(&j1, &alpha));
                        let (na, nb) = (numeric(&a, &alpha), numeric(&b, &alpha));
                        for j in 0..n {
                            let lhs = &nm.coords()[j]
                                + &a_val * &n0.coords()[j]
                                + (int(1) - &a_val) * &n1.coords()[j];
                            assert_eq!(lhs, &na.coords()[j] + &nb.coords()[j]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn index_round_trip_and_text() {
        for (i, a) in Labeling::all(3).enumerate() {
            assert_eq!(a.index(), i);
            assert_eq!(a.to_string().parse::<Labeling>().unwrap(), a);
        }
        assert_eq!(Labeling::all(2).next().unwrap(), lab("--"));
        assert_eq!(Labeling::all(2).last().unwrap(), lab("++"));
        assert_eq!("+x".parse::<Labeling>(), Err(Error::InvalidLabel('x')));
    }
}

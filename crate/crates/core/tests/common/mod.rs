#![allow(dead_code)]

use num_traits::Zero;
use rand::Rng;
use skewbisub::rational::{int, ratio};
use skewbisub::{Alpha, Atom, Label, Labeling, Rational};

pub fn alphas() -> Vec<Alpha> {
    [(1, 4), (1, 2), (3, 4), (1, 1)].iter().map(|&(p, q)| Alpha::from_ratio(p, q).unwrap()).collect()
}

/// A random strictly decreasing chain `v_1 ≻ … ≻ v_ℓ` with random positive
/// weights summing to one.
pub fn random_chain<R: Rng>(rng: &mut R, n: usize) -> Vec<Atom> {
    let mut current = Labeling::new((0..n).map(|_| Label::ALL[rng.random_range(0..3)]).collect());
    let mut chain = vec![current.clone()];
    while !current.is_zero() && rng.random_bool(0.7) {
        let support: Vec<usize> = (0..n).filter(|&j| current.get(j) != Label::Zero).collect();
        let mut next = current.clone();
        loop {
            for &j in &support {
                if rng.random_bool(0.5) {
                    next.set(j, Label::Zero);
                }
            }
            if next != current {
                break;
            }
        }
        current = next;
        chain.push(current.clone());
    }
    let raw: Vec<i64> = chain.iter().map(|_| rng.random_range(1..=1000)).collect();
    let total: i64 = raw.iter().sum();
    chain.into_iter().zip(raw).map(|(u, k)| Atom { u, weight: ratio(k, total) }).collect()
}

/// `Σ weight · numeric(u)`, computed directly.
pub fn compose(atoms: &[Atom], alpha: &Alpha) -> Vec<Rational> {
    let n = atoms[0].u.arity();
    let mut x = vec![Rational::zero(); n];
    for atom in atoms {
        for (j, l) in atom.u.labels().iter().enumerate() {
            let v = match l {
                Label::Neg => -alpha.value().clone(),
                Label::Zero => int(0),
                Label::Pos => int(1),
            };
            x[j] += &atom.weight * v;
        }
    }
    x
}

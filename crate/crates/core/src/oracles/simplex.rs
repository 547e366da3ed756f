//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Solves `min c·x` subject to `A x = b`, `x ≥ 0`. Only sized for the
//! convex-closure LPs (a handful of rows, a few hundred columns).

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct LpSolution {
    pub x: Vec<Rational>,
    pub objective: Rational,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    // Reduced costs, with the negated objective in the last slot.
    z: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        if !self.z[col].is_zero() {
            let factor = self.z[col].clone();
            for (v, pv) in self.z.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        self.basis[r] = col;
    }

    /// Runs Bland's rule over columns `< allowed` until optimal.
    fn optimize(&mut self, allowed: usize) -> Result<(), Error> {
        loop {
            let Some(col) = (0..allowed).find(|&j| self.z[j].is_negative()) else {
                return Ok(());
            };
            let rhs = self.rhs();
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, col),
                None => return Err(Error::InvalidArgument("linear program is unbounded".into())),
            }
        }
    }
}

pub(crate) fn solve(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> Result<LpSolution, Error> {
    let m = a.len();
    let nv = c.len();
    debug_assert!(a.iter().all(|row| row.len() == nv) && b.len() == m);
    let width = nv + m;

    // Phase 1: one artificial per row, rows sign-flipped so that b >= 0.
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut t: Vec<Rational> = row.iter().map(|v| if flip { -v } else { v.clone() }).collect();
        t.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        t.push(if flip { -bi } else { bi.clone() });
        rows.push(t);
    }
    let mut z = alloc::vec![Rational::zero(); width + 1];
    for j in nv..width {
        z[j] = Rational::one();
    }
    for row in &rows {
        for (zj, v) in z.iter_mut().zip(row) {
            *zj -= v;
        }
    }
    for j in nv..width {
        z[j] = Rational::zero();
    }
    let mut t = Tableau { rows, z, basis: (nv..width).collect(), width };
    t.optimize(width)?;
    if !t.z[width].is_zero() {
        return Err(Error::Infeasible);
    }

    // Drive zero-level artificials out of the basis; drop rows that are redundant.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= nv {
            match (0..nv).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    // Phase 2 with the true costs; artificial columns are never re-entered.
    let mut z = alloc::vec![Rational::zero(); width + 1];
    z[..nv].clone_from_slice(c);
    for (row, &bj) in t.rows.iter().zip(&t.basis) {
        let cb = &c[bj];
        if cb.is_zero() {
            continue;
        }
        for (zj, v) in z.iter_mut().zip(row) {
            *zj -= cb * v;
        }
    }
    t.z = z;
    t.optimize(nv)?;

    let mut x = alloc::vec![Rational::zero(); nv];
    for (row, &bj) in t.rows.iter().zip(&t.basis) {
        x[bj] = row[width].clone();
    }
    let objective = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    Ok(LpSolution { x, objective })
}

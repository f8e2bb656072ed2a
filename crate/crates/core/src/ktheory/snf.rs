use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;
use crate::error::{Error, Result};

/// `U * A * V = S` with `U`, `V` unimodular and `S` diagonal,
/// `s_1 | s_2 | ...`, all diagonal entries non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// The diagonal of `S`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }
}

struct Reducer {
    a: IntegerMatrix,
    u: IntegerMatrix,
    v: IntegerMatrix,
    steps: u64,
    budget: Option<u64>,
}

impl Reducer {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        match self.budget {
            Some(b) if self.steps > b => Err(Error::BudgetExceeded(b)),
            _ => Ok(()),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) -> Result<()> {
        self.tick()?;
        self.a.add_row(dst, src, k);
        self.u.add_row(dst, src, k);
        Ok(())
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) -> Result<()> {
        self.tick()?;
        self.a.add_col(dst, src, k);
        self.v.add_col(dst, src, k);
        Ok(())
    }

    // Moves the smallest non-zero entry of the trailing submatrix to (t, t).
    fn place_pivot(&mut self, t: usize) -> bool {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        match best {
            Some((i, j)) => {
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                true
            }
            None => false,
        }
    }

    // Clears row and column t; returns false if a smaller remainder appeared
    // and the pivot must be chosen again.
    fn clear_cross(&mut self, t: usize) -> Result<bool> {
        let p = self.a[(t, t)].clone();
        let mut clean = true;
        for i in t + 1..self.a.rows() {
            if self.a[(i, t)].is_zero() {
                continue;
            }
            let q = self.a[(i, t)].div_floor(&p);
            self.add_row(i, t, &-q)?;
            clean &= self.a[(i, t)].is_zero();
        }
        for j in t + 1..self.a.cols() {
            if self.a[(t, j)].is_zero() {
                continue;
            }
            let q = self.a[(t, j)].div_floor(&p);
            self.add_col(j, t, &-q)?;
            clean &= self.a[(t, j)].is_zero();
        }
        Ok(clean)
    }

    fn run(&mut self) -> Result<()> {
        let n = self.a.rows().min(self.a.cols());
        let mut t = 0;
        while t < n {
            if !self.place_pivot(t) {
                break;
            }
            if !self.clear_cross(t)? {
                continue;
            }
            // Every remaining entry must be a multiple of the pivot.
            let p = self.a[(t, t)].clone();
            let bad = (t + 1..self.a.rows())
                .find(|&i| (t + 1..self.a.cols()).any(|j| !self.a[(i, j)].is_multiple_of(&p)));
            if let Some(i) = bad {
                self.add_row(t, i, &BigInt::from(1))?;
                continue;
            }
            if p.is_negative() {
                self.a.negate_row(t);
                self.u.negate_row(t);
            }
            t += 1;
        }
        Ok(())
    }
}

/// Smith normal form by pivoting on the entry of least absolute value.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    smith_normal_form_with_budget(a, None).expect("no budget, no failure")
}

/// Like [`smith_normal_form`], giving up with [`Error::BudgetExceeded`]
/// after `budget` elementary row or column operations.
pub fn smith_normal_form_with_budget(a: &IntegerMatrix, budget: Option<u64>) -> Result<SmithForm> {
    let mut r = Reducer {
        a: a.clone(),
        u: IntegerMatrix::identity(a.rows()),
        v: IntegerMatrix::identity(a.cols()),
        steps: 0,
        budget,
    };
    r.run()?;
    Ok(SmithForm {
        u: r.u,
        s: r.a,
        v: r.v,
    })
}

//! Exact rational Gaussian elimination.
//!
//! Dense LU factorization with partial pivoting on rational magnitude.
//! Exactness makes pivot choice a robustness nicety rather than a
//! correctness need, but the largest-magnitude rule keeps intermediate
//! numerators and denominators from ballooning on the near-Hilbert systems
//! this crate solves.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// LU factors of a square rational matrix, reusable across right-hand
/// sides.
#[derive(Debug, Clone)]
pub struct LuFactors {
    dim: usize,
    /// Unit-lower and upper factors packed into one matrix.
    lu: Vec<Vec<BigRational>>,
    /// Row permutation applied before factoring.
    perm: Vec<usize>,
}

/// Factors a square matrix; returns `None` when the matrix is singular.
pub fn factor(mut matrix: Vec<Vec<BigRational>>) -> Option<LuFactors> {
    let dim = matrix.len();
    assert!(matrix.iter().all(|row| row.len() == dim), "matrix must be square");
    let mut perm: Vec<usize> = (0..dim).collect();

    for col in 0..dim {
        let pivot_row = (col..dim)
            .filter(|&r| !matrix[r][col].is_zero())
            .max_by(|&a, &b| matrix[a][col].abs().cmp(&matrix[b][col].abs()))?;
        matrix.swap(col, pivot_row);
        perm.swap(col, pivot_row);

        let (pivoted, remaining) = matrix.split_at_mut(col + 1);
        let pivot_row = &pivoted[col];
        for row in remaining.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let multiplier = &row[col] / &pivot_row[col];
            for (j, entry) in row.iter_mut().enumerate().skip(col + 1) {
                *entry -= &multiplier * &pivot_row[j];
            }
            row[col] = multiplier;
        }
    }
    Some(LuFactors {
        dim,
        lu: matrix,
        perm,
    })
}

impl LuFactors {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Solves `A x = rhs` exactly using the stored factors.
    pub fn solve(&self, rhs: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(rhs.len(), self.dim, "right-hand side length mismatch");
        // Forward substitution on the permuted right-hand side.
        let mut y: Vec<BigRational> = self.perm.iter().map(|&p| rhs[p].clone()).collect();
        for row in 1..self.dim {
            for col in 0..row {
                let delta = &self.lu[row][col] * &y[col];
                y[row] -= delta;
            }
        }
        // Back substitution.
        let mut x = y;
        for row in (0..self.dim).rev() {
            for col in row + 1..self.dim {
                let delta = &self.lu[row][col] * &x[col];
                x[row] -= delta;
            }
            x[row] = &x[row] / &self.lu[row][row];
        }
        x
    }
}

/// One-shot exact solve of `A x = rhs`; `None` when `A` is singular.
pub fn solve(matrix: Vec<Vec<BigRational>>, rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    Some(factor(matrix)?.solve(rhs))
}

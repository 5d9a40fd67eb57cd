//! Small dense solves for the kernel coefficient systems.
//!
//! The systems are tiny (at most (r + 2) square), so plain LU with partial
//! pivoting plus an explicit inverse for the 1-norm condition number is both
//! adequate and the cheapest honest conditioning check.

/// Solution of `A x = b` together with the 1-norm condition number of `A`.
pub(crate) struct Solved {
    pub solution: Vec<f64>,
    pub condition: f64,
}

/// Solve by LU with partial pivoting. Returns `None` when a pivot vanishes.
pub(crate) fn solve_with_condition(matrix: &[Vec<f64>], rhs: &[f64]) -> Option<Solved> {
    let n = matrix.len();
    assert!(n > 0 && matrix.iter().all(|row| row.len() == n) && rhs.len() == n);

    let norm_a = one_norm(matrix);
    let lu = factorize(matrix)?;
    let solution = lu.solve(rhs);

    // Explicit inverse, column by column; n is single digits.
    let mut norm_inv_cols = vec![0.0; n];
    let mut unit = vec![0.0; n];
    for (j, col_norm) in norm_inv_cols.iter_mut().enumerate() {
        unit[j] = 1.0;
        let col = lu.solve(&unit);
        unit[j] = 0.0;
        *col_norm = col.iter().map(|v| v.abs()).sum();
    }
    let norm_inv = norm_inv_cols.iter().cloned().fold(0.0, f64::max);

    let condition = norm_a * norm_inv;
    if !condition.is_finite() || solution.iter().any(|v| !v.is_finite()) {
        return None;
    }
    Some(Solved {
        solution,
        condition,
    })
}

fn one_norm(matrix: &[Vec<f64>]) -> f64 {
    let n = matrix.len();
    (0..n)
        .map(|j| matrix.iter().map(|row| row[j].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

struct Lu {
    factors: Vec<Vec<f64>>,
    pivots: Vec<usize>,
}

fn factorize(matrix: &[Vec<f64>]) -> Option<Lu> {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let (pivot_row, pivot_abs) = (k..n)
            .map(|i| (i, a[i][k].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if pivot_abs == 0.0 || !pivot_abs.is_finite() {
            return None;
        }
        a.swap(k, pivot_row);
        pivots.push(pivot_row);
        let pivot = a[k][k];
        for i in (k + 1)..n {
            let factor = a[i][k] / pivot;
            a[i][k] = factor;
            for j in (k + 1)..n {
                a[i][j] -= factor * a[k][j];
            }
        }
    }
    Some(Lu { factors: a, pivots })
}

impl Lu {
    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = rhs.len();
        let mut x = rhs.to_vec();
        // Factors are stored in fully swapped row order, so apply the whole
        // permutation before the triangular solves.
        for k in 0..n {
            x.swap(k, self.pivots[k]);
        }
        for k in 0..n {
            let xk = x[k];
            for i in (k + 1)..n {
                x[i] -= self.factors[i][k] * xk;
            }
        }
        for k in (0..n).rev() {
            let mut acc = x[k];
            for j in (k + 1)..n {
                acc -= self.factors[k][j] * x[j];
            }
            x[k] = acc / self.factors[k][k];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn solves_a_known_system() {
        let a = vec![
            vec![2.0, 1.0, -1.0],
            vec![-3.0, -1.0, 2.0],
            vec![-2.0, 1.0, 2.0],
        ];
        let b = vec![8.0, -11.0, -3.0];
        let solved = solve_with_condition(&a, &b).unwrap();
        assert_relative_eq!(solved.solution[0], 2.0, max_relative = 1e-12);
        assert_relative_eq!(solved.solution[1], 3.0, max_relative = 1e-12);
        assert_relative_eq!(solved.solution[2], -1.0, max_relative = 1e-12);
        assert!(solved.condition >= 1.0);
    }

    #[test]
    fn identity_has_unit_condition() {
        let a = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let solved = solve_with_condition(&a, &[3.0, 4.0]).unwrap();
        assert_relative_eq!(solved.condition, 1.0);
        assert_eq!(solved.solution, vec![3.0, 4.0]);
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let a = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(solve_with_condition(&a, &[1.0, 2.0]).is_none());
    }
}

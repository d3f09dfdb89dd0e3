//! Dense tableau simplex for small linear programs
//! `maximize c.x  subject to  A x <= b` with free variables and `b >= 0`.
//!
//! The origin is feasible because `b >= 0`, so the slack basis is a valid
//! start and no phase one is needed. Bland's rule prevents cycling.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpError {
    /// Some right-hand side is negative, so the origin is not feasible.
    InfeasibleStart {
        row: usize,
    },
    DimensionMismatch,
    IterationLimit,
}

pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64], eps: f64) -> Result<LpOutcome, LpError> {
    let n = c.len();
    let m = a.len();
    if b.len() != m || a.iter().any(|r| r.len() != n) {
        return Err(LpError::DimensionMismatch);
    }
    if let Some(row) = b.iter().position(|&v| v < -eps) {
        return Err(LpError::InfeasibleStart { row });
    }
    // columns: x+ (n), x- (n), slacks (m), rhs
    let cols = 2 * n + m;
    let rhs = cols;
    let mut t = vec![vec![0.0; cols + 1]; m + 1];
    for i in 0..m {
        for j in 0..n {
            t[i][j] = a[i][j];
            t[i][n + j] = -a[i][j];
        }
        t[i][2 * n + i] = 1.0;
        t[i][rhs] = b[i].max(0.0);
    }
    for j in 0..n {
        t[m][j] = -c[j];
        t[m][n + j] = c[j];
    }
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * n + i).collect();

    let max_iter = 50 * (m + cols) + 100;
    for _ in 0..max_iter {
        let Some(enter) = (0..cols).find(|&j| t[m][j] < -eps) else {
            let mut y = vec![0.0; cols];
            for (i, &bv) in basis.iter().enumerate() {
                y[bv] = t[i][rhs];
            }
            let x = (0..n).map(|j| y[j] - y[n + j]).collect();
            return Ok(LpOutcome::Optimal { x, value: t[m][rhs] });
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            if t[i][enter] > eps {
                let ratio = t[i][rhs] / t[i][enter];
                let better = match leave {
                    None => true,
                    Some(l) => ratio < best - eps || (ratio <= best + eps && basis[i] < basis[l]),
                };
                if better {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        let Some(r) = leave else {
            return Ok(LpOutcome::Unbounded);
        };
        pivot(&mut t, r, enter);
        basis[r] = enter;
    }
    Err(LpError::IterationLimit)
}

fn pivot(t: &mut [Vec<f64>], r: usize, c: usize) {
    let p = t[r][c];
    for v in t[r].iter_mut() {
        *v /= p;
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r {
            continue;
        }
        let f = row[c];
        if f != 0.0 {
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_textbook_problem() {
        // max 3x + 2y  s.t. x + y <= 4, x + 3y <= 6, x <= 3, -x <= 0, -y <= 0
        let a = vec![vec![1.0, 1.0], vec![1.0, 3.0], vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, -1.0]];
        let b = [4.0, 6.0, 3.0, 0.0, 0.0];
        match maximize(&[3.0, 2.0], &a, &b, 1e-12).unwrap() {
            LpOutcome::Optimal { x, value } => {
                assert!((value - 11.0).abs() < 1e-12);
                assert!((x[0] - 3.0).abs() < 1e-12 && (x[1] - 1.0).abs() < 1e-12);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn free_variables_go_negative() {
        // min x (max -x) s.t. -x <= 5  =>  x = -5
        match maximize(&[-1.0], &[vec![-1.0]], &[5.0], 1e-12).unwrap() {
            LpOutcome::Optimal { x, .. } => assert!((x[0] + 5.0).abs() < 1e-12),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn unbounded_and_infeasible_start() {
        assert_eq!(maximize(&[1.0], &[vec![-1.0]], &[1.0], 1e-12).unwrap(), LpOutcome::Unbounded);
        assert_eq!(maximize(&[1.0], &[vec![1.0]], &[-1.0], 1e-12), Err(LpError::InfeasibleStart { row: 0 }));
    }
}

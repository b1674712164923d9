//! Feasibility of linear equality systems.
//!
//! Systems are solved in the least-squares sense through an SVD. A residual
//! within tolerance means feasible; otherwise the residual itself is the
//! certificate: it is orthogonal to every column of the matrix yet has a
//! positive inner product with the right-hand side.

use nalgebra::{DMatrix, DVector};

/// Residual bound (infinity norm, rows scaled to unit max) for feasibility.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Condition numbers above this are flagged.
pub const CONDITION_WARN: f64 = 1e12;

#[derive(Clone, Debug, PartialEq)]
pub struct Equation {
    /// Sparse coefficients `(unknown, value)`.
    pub coeffs: Vec<(usize, f64)>,
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Feasible {
        x: Vec<f64>,
    },
    /// `certificate` combines the scaled equations into `0 = c` with `c != 0`.
    Infeasible {
        certificate: Vec<f64>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub outcome: Outcome,
    /// Infinity norm of the scaled residual.
    pub residual: f64,
    /// Ratio of the largest to the smallest nonzero singular value.
    pub condition: f64,
    pub ill_conditioned: bool,
    /// Equations after row scaling, as solved.
    pub scaled: Vec<Equation>,
}

impl Solution {
    pub fn is_feasible(&self) -> bool {
        matches!(self.outcome, Outcome::Feasible { .. })
    }
}

/// Scales every equation so its largest coefficient has magnitude 1.
/// Equations without coefficients keep their right-hand side unchanged.
pub fn scale_rows(eqs: &[Equation]) -> Vec<Equation> {
    eqs.iter()
        .map(|e| {
            let m = e.coeffs.iter().map(|c| c.1.abs()).fold(0.0, f64::max);
            if m == 0.0 {
                e.clone()
            } else {
                Equation {
                    coeffs: e.coeffs.iter().map(|&(i, v)| (i, v / m)).collect(),
                    rhs: e.rhs / m,
                }
            }
        })
        .collect()
}

fn dense(eqs: &[Equation], n: usize) -> (DMatrix<f64>, DVector<f64>) {
    let mut a = DMatrix::zeros(eqs.len(), n);
    let mut b = DVector::zeros(eqs.len());
    for (r, e) in eqs.iter().enumerate() {
        for &(i, v) in &e.coeffs {
            a[(r, i)] += v;
        }
        b[r] = e.rhs;
    }
    (a, b)
}

/// Minimum-norm least-squares solution of `eqs` over `n` unknowns.
pub fn solve_feasibility(eqs: &[Equation], n: usize) -> Solution {
    let scaled = scale_rows(eqs);
    if scaled.is_empty() || n == 0 {
        let residual = scaled.iter().map(|e| e.rhs.abs()).fold(0.0, f64::max);
        let outcome = if residual <= FEASIBILITY_TOL {
            Outcome::Feasible { x: vec![0.0; n] }
        } else {
            Outcome::Infeasible {
                certificate: scaled.iter().map(|e| e.rhs).collect(),
            }
        };
        return Solution {
            outcome,
            residual,
            condition: 1.0,
            ill_conditioned: false,
            scaled,
        };
    }
    let (a, b) = dense(&scaled, n);
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = smax * 1e-13 * scaled.len().max(n) as f64;
    let smin = svd
        .singular_values
        .iter()
        .copied()
        .filter(|&s| s > cutoff)
        .fold(f64::INFINITY, f64::min);
    let condition = if smin.is_finite() && smin > 0.0 { smax / smin } else { 1.0 };
    let mut x = svd
        .solve(&b, cutoff)
        .unwrap_or_else(|_| DVector::zeros(n));
    let mut r = &b - &a * &x;
    // The SVD can lose several digits on rank-deficient input; a few
    // refinement steps recover them.
    for _ in 0..3 {
        let Ok(dx) = svd.solve(&r, cutoff) else { break };
        let x2 = &x + dx;
        let r2 = &b - &a * &x2;
        if r2.amax() >= r.amax() {
            break;
        }
        x = x2;
        r = r2;
    }
    let residual = r.amax();
    let outcome = if residual <= FEASIBILITY_TOL {
        Outcome::Feasible {
            x: x.iter().copied().collect(),
        }
    } else {
        Outcome::Infeasible {
            certificate: r.iter().copied().collect(),
        }
    };
    Solution {
        outcome,
        residual,
        condition,
        ill_conditioned: condition > CONDITION_WARN,
        scaled,
    }
}

/// Checks that `y` proves `eqs` inconsistent: `yᵀA ≈ 0` relative to `|y|`
/// while `yᵀb` is clearly nonzero.
pub fn verify_certificate(eqs: &[Equation], n: usize, y: &[f64]) -> bool {
    if y.len() != eqs.len() {
        return false;
    }
    let mut combo = vec![0.0; n];
    let mut rhs = 0.0;
    for (e, &w) in eqs.iter().zip(y) {
        for &(i, v) in &e.coeffs {
            combo[i] += w * v;
        }
        rhs += w * e.rhs;
    }
    let ynorm: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    let lhs = combo.iter().map(|v| v.abs()).fold(0.0, f64::max);
    ynorm > 0.0 && lhs <= 1e-8 * ynorm.max(1.0) && rhs.abs() > 1e3 * lhs.max(1e-300)
}

/// Phase 1 of the simplex method: finds `x >= 0` with `A x = b`, or `None`.
/// Uses Bland's rule, so it terminates on degenerate problems.
pub fn phase_one(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    // tableau over [x | artificials | rhs], rows with b >= 0
    let w = n + m + 1;
    let mut t = vec![vec![0.0; w]; m];
    for r in 0..m {
        let s = if b[r] < 0.0 { -1.0 } else { 1.0 };
        for c in 0..n {
            t[r][c] = s * a[r][c];
        }
        t[r][n + r] = 1.0;
        t[r][w - 1] = s * b[r];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    const TOL: f64 = 1e-10;
    loop {
        // reduced costs of minimizing the sum of artificials
        let mut cost = vec![0.0; n + m];
        for c in n..n + m {
            cost[c] = 1.0;
        }
        let mut reduced = cost.clone();
        for r in 0..m {
            let cb = cost[basis[r]];
            for c in 0..n + m {
                reduced[c] -= cb * t[r][c];
            }
        }
        let Some(enter) = (0..n + m).find(|&c| reduced[c] < -TOL) else {
            break;
        };
        let leave = (0..m)
            .filter(|&r| t[r][enter] > TOL)
            .min_by(|&r1, &r2| {
                let q1 = t[r1][w - 1] / t[r1][enter];
                let q2 = t[r2][w - 1] / t[r2][enter];
                q1.total_cmp(&q2).then(basis[r1].cmp(&basis[r2]))
            })?;
        let p = t[leave][enter];
        for v in t[leave].iter_mut() {
            *v /= p;
        }
        for r in 0..m {
            if r != leave {
                let f = t[r][enter];
                if f != 0.0 {
                    for c in 0..w {
                        t[r][c] -= f * t[leave][c];
                    }
                }
            }
        }
        basis[leave] = enter;
    }
    let mut x = vec![0.0; n + m];
    for r in 0..m {
        x[basis[r]] = t[r][w - 1];
    }
    if x[n..].iter().any(|&v| v > 1e-8) {
        return None;
    }
    x.truncate(n);
    Some(x)
}

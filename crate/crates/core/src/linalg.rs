//! Dense factorizations used by the solver and the decomposition, backed by faer.

use faer::linalg::solvers::{PartialPivLu, Solve};
use faer::Mat;

use crate::stp::Matrix;

fn to_faer(m: &Matrix) -> Mat<f64> {
    Mat::from_fn(m.rows(), m.cols(), |r, c| m[(r, c)])
}

/// Default singular-value cutoff: `max(m, n) · ε · σ_max`.
fn cutoff(sv: &[f64], m: usize, n: usize) -> f64 {
    let smax = sv.iter().fold(0.0_f64, |a, &b| a.max(b));
    (m.max(n) as f64) * f64::EPSILON * smax
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[derive(Clone, Debug)]
pub struct LeastSquares {
    pub solution: Vec<f64>,
    /// `‖A x − b‖₂`
    pub residual: f64,
}

/// Minimum-norm least-squares solution of `a x = b` via the SVD pseudo-inverse.
pub fn min_norm_least_squares(a: &Matrix, b: &[f64]) -> LeastSquares {
    assert_eq!(a.rows(), b.len(), "right-hand side length must equal row count");
    if a.cols() == 0 {
        return LeastSquares {
            solution: Vec::new(),
            residual: norm(b),
        };
    }
    if a.rows() == 0 {
        return LeastSquares {
            solution: vec![0.0; a.cols()],
            residual: 0.0,
        };
    }
    let svd = to_faer(a).thin_svd().expect("SVD converges on finite input");
    let (u, v) = (svd.U(), svd.V());
    let sv: Vec<f64> = (0..u.ncols()).map(|i| svd.S()[i]).collect();
    let eps = cutoff(&sv, a.rows(), a.cols());
    let mut solution = vec![0.0; a.cols()];
    for (i, &s) in sv.iter().enumerate() {
        if s <= eps {
            continue;
        }
        let coef = (0..a.rows()).map(|r| u[(r, i)] * b[r]).sum::<f64>() / s;
        for (c, x) in solution.iter_mut().enumerate() {
            *x += coef * v[(c, i)];
        }
    }
    let fitted = a.mul_vec(&solution);
    let residual = norm(&fitted.iter().zip(b).map(|(f, b)| f - b).collect::<Vec<_>>());
    LeastSquares { solution, residual }
}

/// Singular values in decreasing order.
pub fn singular_values(a: &Matrix) -> Vec<f64> {
    if a.rows() == 0 || a.cols() == 0 {
        return Vec::new();
    }
    let mut sv = to_faer(a)
        .singular_values()
        .expect("SVD converges on finite input");
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Numerical rank with the default machine-precision cutoff.
pub fn rank(a: &Matrix) -> usize {
    let sv = singular_values(a);
    let eps = cutoff(&sv, a.rows(), a.cols());
    sv.iter().filter(|&&s| s > eps).count()
}

/// `σ_max / σ_min` for a square matrix (infinite when singular).
pub fn condition_number(a: &Matrix) -> f64 {
    let sv = singular_values(a);
    match (sv.first(), sv.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        (Some(_), Some(_)) => f64::INFINITY,
        _ => 1.0,
    }
}

/// Orthonormal basis of `ker a`, one vector per column.
pub fn null_space(a: &Matrix) -> Matrix {
    let n = a.cols();
    if n == 0 {
        return Matrix::zeros(0, 0);
    }
    if a.rows() == 0 {
        return Matrix::identity(n);
    }
    let svd = to_faer(a).svd().expect("SVD converges on finite input");
    let p = a.rows().min(n);
    let sv: Vec<f64> = (0..p).map(|i| svd.S()[i]).collect();
    let eps = cutoff(&sv, a.rows(), n);
    let kernel: Vec<usize> = (0..n).filter(|&i| i >= p || sv[i] <= eps).collect();
    let v = svd.V();
    Matrix::from_fn(n, kernel.len(), |r, c| v[(r, kernel[c])])
}

/// LU factorization with partial pivoting of a nonsingular square matrix, kept
/// for repeated solves.
#[derive(Debug)]
pub struct SquareSolver {
    lu: PartialPivLu<f64>,
    condition: f64,
}

impl SquareSolver {
    /// `None` when `a` is not square or is numerically singular.
    pub fn new(a: &Matrix) -> Option<Self> {
        if a.rows() != a.cols() {
            return None;
        }
        if rank(a) < a.rows() {
            return None;
        }
        Some(Self {
            lu: to_faer(a).partial_piv_lu(),
            condition: condition_number(a),
        })
    }

    pub fn condition_number(&self) -> f64 {
        self.condition
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let rhs = Mat::from_fn(b.len(), 1, |r, _| b[r]);
        let x = self.lu.solve(&rhs);
        (0..b.len()).map(|r| x[(r, 0)]).collect()
    }
}

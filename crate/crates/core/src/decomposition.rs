//! Orthogonal decomposition `G = P^cw ⊕ N ⊕ H^cw` for a fixed set of coset weights.
//!
//! Game space is identified with `R^{nk}` through the structure vector
//! `V_G = [V^c_1, …, V^c_n]`. The three subspaces are spanned by
//!
//! - `B^{P0}`: weighted pure potential games (`k − 1` columns),
//! - `B^N = diag(E_1, …, E_n)`: non-strategic games (`Σ k/k_j` columns),
//! - `B^H`: weighted pure harmonic games (`(n−1)k − Σ k/k_j + 1` columns),
//!
//! and `B_cw = [B^{P0} | B^N | B^H]` is square and invertible, so every game
//! has unique coordinates in it.

use crate::error::{Error, Result};
use crate::game::{CosetWeights, Game, GameShape};
use crate::linalg::{condition_number, norm, SquareSolver};
use crate::potential::{solve_potential, LambdaSet};
use crate::stp::Matrix;

/// Tolerance of the construction-time kernel check on harmonic columns.
pub const KERNEL_TOL: f64 = 1e-10;

/// Condition numbers above this are reported alongside results.
pub const CONDITION_WARN: f64 = 1e10;

/// `B^N = diag(E_1, …, E_n)`.
pub fn basis_nonstrategic(shape: &GameShape) -> Matrix {
    let blocks: Vec<Matrix> = (1..=shape.players())
        .map(|i| shape.dummy_matrix(i).expect("player in range"))
        .collect();
    Matrix::block_diag(&blocks.iter().collect::<Vec<_>>())
}

/// `B^P` (`nk × k`) and `B^{P0}` (its first `k − 1` columns).
///
/// Block `i` of `B^P` is `Λ_i − (1/k_i) Λ_i E_i E_iᵀ`, so `B^P γ` is the game
/// whose player `i` receives `w_i` times the deviation of `γ` from its own
/// average over player `i`'s strategies.
pub fn basis_pure_potential(w: &CosetWeights) -> (Matrix, Matrix) {
    let shape = w.shape();
    let (n, k) = (shape.players(), shape.profile_count());
    let lambda = LambdaSet::new(w);
    let full = Matrix::from_fn(n * k, k, |r, c| {
        let (i, row) = (r / k, r % k);
        let ki = shape.cards()[i];
        let l = lambda.diagonal(i + 1)[row];
        let diag = if row == c { l } else { 0.0 };
        let same_coset = shape.coset_of(i, row) == shape.coset_of(i, c);
        if same_coset {
            diag - l / ki as f64
        } else {
            diag
        }
    });
    let reduced = full.columns(0..k - 1);
    (full, reduced)
}

/// `Ẽ^P = [Λ-stack | diag(Λ_1 E_1, …, Λ_n E_n)]`, an `nk × (k + Σ k/k_j)`
/// matrix whose columns span the weighted potential subspace.
pub fn basis_potential_span(w: &CosetWeights) -> Matrix {
    let shape = w.shape();
    let n = shape.players();
    let lambda = LambdaSet::new(w);
    let stack: Vec<Matrix> = (1..=n).map(|i| lambda.matrix(i)).collect();
    let left = Matrix::vstack(&stack.iter().collect::<Vec<_>>()).expect("equal widths");
    let scaled: Vec<Matrix> = (1..=n)
        .map(|i| lambda.scale_rows(i, &shape.dummy_matrix(i).expect("player in range")))
        .collect();
    let right = Matrix::block_diag(&scaled.iter().collect::<Vec<_>>());
    Matrix::hstack(&[&left, &right]).expect("equal heights")
}

fn unit(len: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; len];
    v[i - 1] = 1.0;
    v
}

/// `δ^1 − δ^i`.
fn unit_difference(len: usize, i: usize) -> Vec<f64> {
    let mut v = unit(len, 1);
    v[i - 1] -= 1.0;
    v
}

/// Kronecker product of column vectors, which is also their semi-tensor product.
fn tensor(factors: &[Vec<f64>]) -> Vec<f64> {
    factors.iter().fold(vec![1.0], |acc, f| {
        acc.iter()
            .flat_map(|a| f.iter().map(move |b| a * b))
            .collect()
    })
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// All index tuples `(i_1, …, i_n)` with `1 ≤ i_j ≤ k_j`, last coordinate fastest.
fn index_tuples(cards: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = cards.iter().product();
    (0..total).map(move |mut m| {
        let mut t = vec![0; cards.len()];
        for j in (0..cards.len()).rev() {
            t[j] = m % cards[j] + 1;
            m /= cards[j];
        }
        t
    })
}

/// One `J_m` column for index tuple `idx` (1-based `m`).
fn harmonic_column(shape: &GameShape, lambda: &LambdaSet, m: usize, idx: &[usize]) -> Vec<f64> {
    let cards = shape.cards();
    let (n, k) = (cards.len(), shape.profile_count());
    let tail: Vec<Vec<f64>> = std::iter::once(unit_difference(cards[m], idx[m]))
        .chain((m + 1..n).map(|j| unit(cards[j], idx[j])))
        .collect();
    let mut out = vec![0.0; n * k];
    for j in 0..m {
        let mut factors: Vec<Vec<f64>> = (0..j).map(|l| unit(cards[l], idx[l])).collect();
        factors.push(unit_difference(cards[j], idx[j]));
        factors.extend((j + 1..m).map(|l| unit(cards[l], 1)));
        factors.extend(tail.iter().cloned());
        let v = tensor(&factors);
        let d = lambda.diagonal(j + 1);
        for (r, x) in v.iter().enumerate() {
            out[j * k + r] = x / d[r];
        }
    }
    let ones: Vec<Vec<f64>> = (0..m).map(|l| unit(cards[l], 1)).collect();
    let chosen: Vec<Vec<f64>> = (0..m).map(|l| unit(cards[l], idx[l])).collect();
    let head = sub(&tensor(&ones), &tensor(&chosen));
    let mut factors = vec![head];
    factors.extend(tail);
    let v = tensor(&factors);
    let d = lambda.diagonal(m + 1);
    for (r, x) in v.iter().enumerate() {
        out[m * k + r] = -x / d[r];
    }
    out
}

/// `(Ẽ^P)ᵀ v` without forming `Ẽ^P`: `[Σ_i Λ_i v_i ; E_iᵀ Λ_i v_i …]`.
fn potential_span_transpose_mul(shape: &GameShape, lambda: &LambdaSet, v: &[f64]) -> Vec<f64> {
    let (n, k) = (shape.players(), shape.profile_count());
    let mut head = vec![0.0; k];
    let mut rest = Vec::with_capacity(shape.total_coset_count());
    for i in 0..n {
        let d = lambda.diagonal(i + 1);
        let mut sums = vec![0.0; k / shape.cards()[i]];
        for m in 0..k {
            let x = d[m] * v[i * k + m];
            head[m] += x;
            sums[shape.coset_of(i, m)] += x;
        }
        rest.extend(sums);
    }
    head.extend(rest);
    head
}

/// `B^H = [J_1, …, J_{n−1}]`.
///
/// `J_m` ranges over tuples with `(i_1, …, i_m) ≠ (1, …, 1)` and
/// `i_{m+1} ≠ 1`, the remaining indices free; columns are ordered by `m`,
/// then lexicographically with the last index fastest. Every column is checked
/// against `(Ẽ^P)ᵀ v = 0` before it is accepted.
pub fn basis_pure_harmonic(w: &CosetWeights) -> Result<Matrix> {
    let shape = w.shape();
    let (n, k) = (shape.players(), shape.profile_count());
    let lambda = LambdaSet::new(w);
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for m in 1..n {
        for idx in index_tuples(shape.cards()) {
            if idx[..m].iter().all(|&x| x == 1) || idx[m] == 1 {
                continue;
            }
            let col = harmonic_column(shape, &lambda, m, &idx);
            let check = potential_span_transpose_mul(shape, &lambda, &col);
            let residual = check.iter().fold(0.0_f64, |a, b| a.max(b.abs()));
            if residual > KERNEL_TOL {
                return Err(Error::KernelCheck {
                    column: columns.len() + 1,
                    residual,
                });
            }
            columns.push(col);
        }
    }
    let d3 = columns.len();
    Ok(Matrix::from_fn(n * k, d3, |r, c| columns[c][r]))
}

/// `(d_1, d_2, d_3) = (k − 1, Σ k/k_j, (n−1)k − Σ k/k_j + 1)`.
pub fn subspace_dimensions(shape: &GameShape) -> (usize, usize, usize) {
    let (n, k) = (shape.players(), shape.profile_count());
    let d2 = shape.total_coset_count();
    (k - 1, d2, n * k + 1 - k - d2)
}

/// The three bases, the assembled square basis, and its factorization.
#[derive(Debug)]
pub struct DecompositionBasis {
    weights: CosetWeights,
    b_pure_potential_full: Matrix,
    b_pure_potential: Matrix,
    b_nonstrategic: Matrix,
    b_pure_harmonic: Matrix,
    assembled: Matrix,
    solver: SquareSolver,
    condition: f64,
}

/// Builds all bases for `w` and factors `B_cw`.
pub fn assemble_basis(w: &CosetWeights) -> Result<DecompositionBasis> {
    let (full, reduced) = basis_pure_potential(w);
    let nonstrategic = basis_nonstrategic(w.shape());
    let harmonic = basis_pure_harmonic(w)?;
    let assembled = Matrix::hstack(&[&reduced, &nonstrategic, &harmonic])?;
    if assembled.rows() != assembled.cols() {
        return Err(Error::DimensionMismatch(format!(
            "assembled basis is {}×{}",
            assembled.rows(),
            assembled.cols()
        )));
    }
    let solver = SquareSolver::new(&assembled).ok_or_else(|| Error::SingularBasis {
        condition: condition_number(&assembled),
    })?;
    let condition = solver.condition_number();
    Ok(DecompositionBasis {
        weights: w.clone(),
        b_pure_potential_full: full,
        b_pure_potential: reduced,
        b_nonstrategic: nonstrategic,
        b_pure_harmonic: harmonic,
        assembled,
        solver,
        condition,
    })
}

impl DecompositionBasis {
    pub fn weights(&self) -> &CosetWeights {
        &self.weights
    }

    pub fn shape(&self) -> &GameShape {
        self.weights.shape()
    }

    /// `B^P`, before the last column is dropped.
    pub fn b_pure_potential_full(&self) -> &Matrix {
        &self.b_pure_potential_full
    }

    /// `B^{P0}`.
    pub fn b_pure_potential(&self) -> &Matrix {
        &self.b_pure_potential
    }

    pub fn b_nonstrategic(&self) -> &Matrix {
        &self.b_nonstrategic
    }

    pub fn b_pure_harmonic(&self) -> &Matrix {
        &self.b_pure_harmonic
    }

    /// `B_cw = [B^{P0} | B^N | B^H]`.
    pub fn assembled(&self) -> &Matrix {
        &self.assembled
    }

    /// 2-norm condition number of `B_cw`.
    pub fn condition_number(&self) -> f64 {
        self.condition
    }

    pub fn is_ill_conditioned(&self) -> bool {
        self.condition > CONDITION_WARN
    }

    pub fn dimensions(&self) -> (usize, usize, usize) {
        (
            self.b_pure_potential.cols(),
            self.b_nonstrategic.cols(),
            self.b_pure_harmonic.cols(),
        )
    }

    /// Coordinates of `V_G` in `B_cw`.
    pub fn decompose(&self, g: &Game) -> Result<Decomposition> {
        if g.shape() != self.shape() {
            return Err(Error::ShapeMismatch);
        }
        let v = g.structure_vector();
        let x = self.solver.solve(&v);
        let (d1, d2, _) = self.dimensions();
        let x_p = x[..d1].to_vec();
        let x_n = x[d1..d1 + d2].to_vec();
        let x_h = x[d1 + d2..].to_vec();
        let pure_potential = self.b_pure_potential.mul_vec(&x_p);
        let nonstrategic = self.b_nonstrategic.mul_vec(&x_n);
        let pure_harmonic = self.b_pure_harmonic.mul_vec(&x_h);
        Ok(Decomposition {
            x_pure_potential: x_p,
            x_nonstrategic: x_n,
            x_pure_harmonic: x_h,
            pure_potential,
            nonstrategic,
            pure_harmonic,
            original: v,
        })
    }
}

/// Coordinates of a game in `B_cw` and its projections.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub x_pure_potential: Vec<f64>,
    pub x_nonstrategic: Vec<f64>,
    pub x_pure_harmonic: Vec<f64>,
    pure_potential: Vec<f64>,
    nonstrategic: Vec<f64>,
    pure_harmonic: Vec<f64>,
    original: Vec<f64>,
}

fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl Decomposition {
    /// `B^{P0} X^P`.
    pub fn pure_potential(&self) -> &[f64] {
        &self.pure_potential
    }

    /// `B^N X^N`.
    pub fn nonstrategic(&self) -> &[f64] {
        &self.nonstrategic
    }

    /// `B^H X^H`.
    pub fn pure_harmonic(&self) -> &[f64] {
        &self.pure_harmonic
    }

    /// Pure potential plus non-strategic part.
    pub fn potential(&self) -> Vec<f64> {
        add(&self.pure_potential, &self.nonstrategic)
    }

    /// Pure harmonic plus non-strategic part.
    pub fn harmonic(&self) -> Vec<f64> {
        add(&self.pure_harmonic, &self.nonstrategic)
    }

    /// `‖V_G − (pure potential + non-strategic + pure harmonic)‖_∞`.
    pub fn reconstruction_error(&self) -> f64 {
        self.original
            .iter()
            .zip(add(&self.potential(), &self.pure_harmonic))
            .fold(0.0_f64, |a, (v, r)| a.max((v - r).abs()))
    }
}

/// One-shot decomposition; build a [`DecompositionBasis`] once to decompose many games.
pub fn decompose(g: &Game, w: &CosetWeights) -> Result<Decomposition> {
    if g.shape() != w.shape() {
        return Err(Error::ShapeMismatch);
    }
    assemble_basis(w)?.decompose(g)
}

fn max_abs(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0_f64, |a, b| a.max(b.abs()))
}

/// `max_{i,s} |c_i(s) − w_i(s_{-i})·(P(s) − (1/k_i) Σ_x P(x, s_{-i}))|`: zero exactly
/// when `g` is the weighted pure potential game generated by `P`.
pub fn pure_potential_residual(g: &Game, w: &CosetWeights, potential: &[f64]) -> Result<f64> {
    if g.shape() != w.shape() {
        return Err(Error::ShapeMismatch);
    }
    let shape = g.shape();
    let k = shape.profile_count();
    if potential.len() != k {
        return Err(Error::LengthMismatch {
            what: "potential".into(),
            expected: k,
            found: potential.len(),
        });
    }
    let mut worst = 0.0_f64;
    for (i, c) in g.payoff_vectors().iter().enumerate() {
        let ki = shape.cards()[i];
        let mut avg = vec![0.0; k / ki];
        for (m, p) in potential.iter().enumerate() {
            avg[shape.coset_of(i, m)] += p / ki as f64;
        }
        let wi = &w.rows()[i];
        for m in 0..k {
            let r = shape.coset_of(i, m);
            worst = worst.max((c[m] - wi[r] * (potential[m] - avg[r])).abs());
        }
    }
    Ok(worst)
}

fn coset_sums(g: &Game, i: usize) -> Vec<f64> {
    let shape = g.shape();
    let mut sums = vec![0.0; shape.profile_count() / shape.cards()[i]];
    for (m, c) in g.payoff_vectors()[i].iter().enumerate() {
        sums[shape.coset_of(i, m)] += c;
    }
    sums
}

/// `max_{i, s_{-i}} |Σ_{x ∈ S_i} c_i(x, s_{-i})|`.
pub fn coset_sum_residual(g: &Game) -> f64 {
    max_abs((0..g.shape().players()).flat_map(|i| coset_sums(g, i)))
}

/// `max_s |Σ_i w_i(s_{-i}) c_i(s)|` and `max_{i, s_{-i}} |w_i(s_{-i}) Σ_x c_i(x, s_{-i})|`;
/// both vanish exactly on weighted pure harmonic games.
pub fn weighted_harmonic_residuals(g: &Game, w: &CosetWeights) -> Result<(f64, f64)> {
    if g.shape() != w.shape() {
        return Err(Error::ShapeMismatch);
    }
    let shape = g.shape();
    let k = shape.profile_count();
    let mut total = vec![0.0; k];
    for (i, c) in g.payoff_vectors().iter().enumerate() {
        for m in 0..k {
            total[m] += w.rows()[i][shape.coset_of(i, m)] * c[m];
        }
    }
    let sums = (0..shape.players()).flat_map(|i| {
        coset_sums(g, i)
            .into_iter()
            .zip(&w.rows()[i])
            .map(|(s, w)| s * w)
            .collect::<Vec<_>>()
    });
    Ok((max_abs(total), max_abs(sums)))
}

/// `max_s |Σ_i (c_i(s) − (1/k_i) Σ_x c_i(x, s_{-i}))|`: the unweighted harmonic condition.
pub fn plain_harmonic_residual(g: &Game) -> f64 {
    let shape = g.shape();
    let k = shape.profile_count();
    let mut total = vec![0.0; k];
    for (i, c) in g.payoff_vectors().iter().enumerate() {
        let sums = coset_sums(g, i);
        let ki = shape.cards()[i] as f64;
        for m in 0..k {
            total[m] += c[m] - sums[shape.coset_of(i, m)] / ki;
        }
    }
    max_abs(total)
}

/// `max_s |Σ_i c_i(s)|`.
pub fn payoff_sum_residual(g: &Game) -> f64 {
    let k = g.shape().profile_count();
    max_abs((0..k).map(|m| g.payoff_vectors().iter().map(|c| c[m]).sum::<f64>()))
}

/// `max_{i,s} |c_i(s) − c_i(1, s_{-i})|`: zero exactly for non-strategic games.
pub fn own_strategy_dependence(g: &Game) -> f64 {
    let shape = g.shape();
    max_abs(g.payoff_vectors().iter().enumerate().flat_map(|(i, c)| {
        (0..shape.profile_count())
            .map(|m| c[m] - c[shape.coset_member(i, shape.coset_of(i, m), 0)])
            .collect::<Vec<_>>()
    }))
}

/// Subspace membership of a game, read off its decomposition and cross-checked
/// against the direct characterizations.
#[derive(Clone, Debug, PartialEq)]
pub struct Membership {
    pub non_strategic: bool,
    /// Weighted potential: the pure harmonic part vanishes.
    pub potential: bool,
    pub pure_potential: bool,
    /// Weighted harmonic: the pure potential part vanishes.
    pub harmonic: bool,
    pub pure_harmonic: bool,
    /// Unweighted harmonic condition, regardless of `w`.
    pub plain_harmonic: bool,
    /// Unweighted pure harmonic condition, regardless of `w`.
    pub plain_pure_harmonic: bool,
    /// Names of cross-checks that disagreed with the projection verdicts.
    pub disagreements: Vec<&'static str>,
}

impl Membership {
    pub fn consistent(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Tests membership in every subspace with tolerance `tol · max(1, ‖V_G‖)`.
pub fn membership(g: &Game, w: &CosetWeights, tol: f64) -> Result<Membership> {
    let basis = assemble_basis(w)?;
    membership_with(&basis, g, tol)
}

/// [`membership`] with a prebuilt basis.
pub fn membership_with(basis: &DecompositionBasis, g: &Game, tol: f64) -> Result<Membership> {
    let w = basis.weights();
    let d = basis.decompose(g)?;
    let eps = tol * norm(&g.structure_vector()).max(1.0);
    let zero = |v: &[f64]| norm(v) <= eps;
    let (p0, n0, h0) = (zero(d.pure_potential()), zero(d.nonstrategic()), zero(d.pure_harmonic()));

    let mut disagreements = Vec::new();
    let non_strategic = p0 && h0;
    if non_strategic != (own_strategy_dependence(g) <= eps) {
        disagreements.push("non_strategic");
    }
    let potential = h0;
    if potential != solve_potential(g, w, tol)?.is_some() {
        disagreements.push("potential");
    }
    let pure_potential = h0 && n0;
    if pure_potential != (potential_direct(g, w, tol)? && coset_sum_residual(g) <= eps) {
        disagreements.push("pure_potential");
    }
    let pure_harmonic = p0 && n0;
    let (e34, e35) = weighted_harmonic_residuals(g, w)?;
    let wmax = w.rows().iter().flatten().fold(1.0_f64, |a, &b| a.max(b));
    if pure_harmonic != (e34 <= eps * wmax && e35 <= eps * wmax) {
        disagreements.push("pure_harmonic");
    }
    Ok(Membership {
        non_strategic,
        potential,
        pure_potential,
        harmonic: p0,
        pure_harmonic,
        plain_harmonic: plain_harmonic_residual(g) <= eps,
        plain_pure_harmonic: payoff_sum_residual(g) <= eps && coset_sum_residual(g) <= eps,
        disagreements,
    })
}

fn potential_direct(g: &Game, w: &CosetWeights, tol: f64) -> Result<bool> {
    Ok(solve_potential(g, w, tol)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stp::{delta, stp_all};

    fn example2() -> (Game, CosetWeights) {
        let s = GameShape::new(vec![2, 2]).unwrap();
        let g = Game::new(
            s.clone(),
            vec![vec![-1.0, 2.0, 0.0, 3.0], vec![3.0, 3.0, 5.0, 4.0]],
        )
        .unwrap();
        let w = CosetWeights::new(s, vec![vec![1.0, 2.0], vec![4.0, 2.0]]).unwrap();
        (g, w)
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn nonstrategic_examples() {
        let s = GameShape::new(vec![2, 2]).unwrap();
        let b = basis_nonstrategic(&s);
        let expected = Matrix::block_diag(&[&s.dummy_matrix(1).unwrap(), &s.dummy_matrix(2).unwrap()]);
        assert_eq!(b, expected);
        let one = GameShape::new(vec![2]).unwrap();
        assert_eq!(basis_nonstrategic(&one), Matrix::ones(2));
        let three = GameShape::new(vec![2, 2, 2]).unwrap();
        assert_eq!(basis_nonstrategic(&three).shape(), (24, 12));
    }

    #[test]
    fn pure_potential_example() {
        let (_, w) = example2();
        let (full, reduced) = basis_pure_potential(&w);
        let expected = Matrix::from_rows(&[
            [0.5, 0.0, -0.5, 0.0],
            [0.0, 1.0, 0.0, -1.0],
            [-0.5, 0.0, 0.5, 0.0],
            [0.0, -1.0, 0.0, 1.0],
            [2.0, -2.0, 0.0, 0.0],
            [-2.0, 2.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, -1.0],
            [0.0, 0.0, -1.0, 1.0],
        ])
        .unwrap();
        assert!(full.max_abs_diff(&expected) <= 1e-12);
        assert_eq!(reduced, full.columns(0..3));
        assert!(full.mul_vec(&[1.0; 4]).iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn harmonic_example() {
        let (_, w) = example2();
        let h = basis_pure_harmonic(&w).unwrap();
        assert_eq!(h.shape(), (8, 1));
        assert!(close(
            &h.column(0),
            &[1.0, -0.5, -1.0, 0.5, -0.25, 0.25, 0.5, -0.5],
            1e-12
        ));
        let u = basis_pure_harmonic(&CosetWeights::uniform(w.shape())).unwrap();
        assert!(close(&u.column(0), &[1.0, -1.0, -1.0, 1.0, -1.0, 1.0, 1.0, -1.0], 1e-12));
    }

    #[test]
    fn harmonic_column_matches_stp_of_deltas() {
        // Block 2 of a J_2 column for shape (2,3,2), written with STP of δ's.
        let s = GameShape::new(vec![2, 3, 2]).unwrap();
        let w = CosetWeights::uniform(&s);
        let lambda = LambdaSet::new(&w);
        let idx = [2, 3, 2];
        let col = harmonic_column(&s, &lambda, 2, &idx);
        let d = |n, i| delta(n, i).unwrap();
        let diff = |n, i| &d(n, 1) - &d(n, i);
        let block2 = stp_all([&d(2, 2), &diff(3, 3), &diff(2, 2)]).unwrap();
        assert!(close(&col[12..24], block2.as_slice(), 0.0));
    }

    #[test]
    fn kernel_check_rejects_outside_columns() {
        let (_, w) = example2();
        let s = w.shape();
        let lambda = LambdaSet::new(&w);
        let outside = basis_nonstrategic(s).column(0);
        let r = potential_span_transpose_mul(s, &lambda, &outside);
        assert!(r.iter().any(|x| x.abs() > KERNEL_TOL));
        // and agrees with the dense transpose
        let dense = basis_potential_span(&w).tr_mul_vec(&outside);
        assert!(close(&r, &dense, 1e-12));
    }

    #[test]
    fn dimensions() {
        for (cards, dims) in [
            (vec![2, 2], (3, 4, 1)),
            (vec![2, 3], (5, 5, 2)),
            (vec![2, 2, 2], (7, 12, 5)),
            (vec![2, 3, 4], (23, 26, 23)),
        ] {
            let s = GameShape::new(cards).unwrap();
            assert_eq!(subspace_dimensions(&s), dims);
            let b = assemble_basis(&CosetWeights::uniform(&s)).unwrap();
            assert_eq!(b.dimensions(), dims);
        }
    }

    #[test]
    fn decompose_example() {
        let (g, w) = example2();
        let d = decompose(&g, &w).unwrap();
        assert!(close(&d.x_pure_potential, &[-0.5, -0.5, 0.5], 1e-9));
        assert!(close(&d.x_nonstrategic, &[-0.5, 2.5, 3.0, 4.5], 1e-9));
        assert!(close(&d.x_pure_harmonic, &[0.0], 1e-9));
        assert!(close(
            d.pure_potential(),
            &[-0.5, -0.5, 0.5, 0.5, 0.0, 0.0, 0.5, -0.5],
            1e-9
        ));
        let n = [-0.5, 2.5, -0.5, 2.5, 3.0, 3.0, 4.5, 4.5];
        assert!(close(d.nonstrategic(), &n, 1e-9));
        assert!(close(&d.harmonic(), &n, 1e-9));
        assert!(close(&d.potential(), &g.structure_vector(), 1e-9));
        assert!(d.reconstruction_error() < 1e-12);
    }

    #[test]
    fn zero_game_decomposes_to_zero() {
        let (g, w) = example2();
        let d = decompose(&Game::zero(g.shape().clone()), &w).unwrap();
        assert!(d.x_pure_potential.iter().chain(&d.x_nonstrategic).chain(&d.x_pure_harmonic).all(|&x| x == 0.0));
    }

    #[test]
    fn membership_example() {
        let (g, w) = example2();
        let m = membership(&g, &w, 1e-8).unwrap();
        assert!(m.potential);
        assert!(!m.pure_harmonic);
        assert!(!m.non_strategic);
        assert!(m.consistent(), "{:?}", m.disagreements);
        let u = membership(&g, &CosetWeights::uniform(g.shape()), 1e-8).unwrap();
        assert!(!u.potential);
        assert!(u.consistent(), "{:?}", u.disagreements);
    }

    #[test]
    fn membership_of_basis_games() {
        let (g, w) = example2();
        let b = assemble_basis(&w).unwrap();
        let s = g.shape().clone();
        let ns = Game::from_structure_vector(s.clone(), &b.b_nonstrategic().mul_vec(&[1.0, -2.0, 0.5, 3.0])).unwrap();
        let m = membership_with(&b, &ns, 1e-8).unwrap();
        assert!(m.non_strategic && m.potential && m.harmonic && !m.pure_harmonic && !m.pure_potential);
        assert!(m.consistent(), "{:?}", m.disagreements);
        let h = Game::from_structure_vector(s.clone(), &b.b_pure_harmonic().mul_vec(&[2.0])).unwrap();
        let m = membership_with(&b, &h, 1e-8).unwrap();
        assert!(m.pure_harmonic && !m.potential);
        assert!(m.consistent(), "{:?}", m.disagreements);
        let (e34, e35) = weighted_harmonic_residuals(&h, &w).unwrap();
        assert!(e34 < 1e-12 && e35 < 1e-12);
        let p = Game::from_structure_vector(s, &b.b_pure_potential().mul_vec(&[1.0, 2.0, -1.0])).unwrap();
        let m = membership_with(&b, &p, 1e-8).unwrap();
        assert!(m.pure_potential && m.potential && !m.non_strategic);
        assert!(m.consistent(), "{:?}", m.disagreements);
        assert!(pure_potential_residual(&p, &w, &[1.0, 2.0, -1.0, 0.0]).unwrap() < 1e-12);
        assert!(coset_sum_residual(&p) < 1e-12);
    }

    #[test]
    fn plain_predicates() {
        // matching pennies is pure harmonic in the unweighted sense
        let s = GameShape::new(vec![2, 2]).unwrap();
        let g = Game::new(s, vec![vec![1.0, -1.0, -1.0, 1.0], vec![-1.0, 1.0, 1.0, -1.0]]).unwrap();
        assert_eq!(payoff_sum_residual(&g), 0.0);
        assert_eq!(coset_sum_residual(&g), 0.0);
        assert_eq!(plain_harmonic_residual(&g), 0.0);
        assert_eq!(own_strategy_dependence(&g), 2.0);
    }
}

//! Coset weighted potential equation and potential recovery.
//!
//! A game is a coset weighted potential game for weights `w` when some `P`
//! satisfies, for every player `i`, opponent profile `s_{-i}` and strategies
//! `x, y`:
//!
//! ```text
//! c_i(x, s_{-i}) − c_i(y, s_{-i}) = w_i(s_{-i}) · (P(x, s_{-i}) − P(y, s_{-i}))
//! ```
//!
//! Equivalently `V^c_i = V^P Λ_i + V^d_i E_iᵀ` for offsets `V^d_i`. Eliminating
//! `V^P` through player 1 leaves the linear system `Ψ_w ξ = b^w` in the offsets
//! alone; the game is potential exactly when that system is consistent.

use crate::decomposition::basis_pure_harmonic;
use crate::error::{Error, Result};
use crate::game::{CosetWeights, Game, GameShape};
use crate::linalg::{min_norm_least_squares, norm};
use crate::stp::Matrix;

/// Default relative tolerance for the solvability test.
pub const DEFAULT_TOL: f64 = 1e-8;

/// The diagonals of `Λ_i = V^w_i E_iᵀ ⋉ O^R_k`, one per player.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaSet {
    diagonals: Vec<Vec<f64>>,
}

impl LambdaSet {
    pub fn new(w: &CosetWeights) -> Self {
        let n = w.shape().players();
        let diagonals = (1..=n)
            .map(|i| w.expanded(i).expect("player in range"))
            .collect();
        Self { diagonals }
    }

    pub fn players(&self) -> usize {
        self.diagonals.len()
    }

    /// Diagonal of `Λ_i` for the 1-based player `i`.
    pub fn diagonal(&self, player: usize) -> &[f64] {
        &self.diagonals[player - 1]
    }

    pub fn matrix(&self, player: usize) -> Matrix {
        Matrix::diag(self.diagonal(player))
    }

    /// `Λ_i · m` without forming `Λ_i`.
    pub(crate) fn scale_rows(&self, player: usize, m: &Matrix) -> Matrix {
        let d = self.diagonal(player);
        Matrix::from_fn(m.rows(), m.cols(), |r, c| d[r] * m[(r, c)])
    }
}

/// `Λ_i` as a dense diagonal matrix.
pub fn lambda_matrix(w: &CosetWeights, player: usize) -> Result<Matrix> {
    Ok(Matrix::diag(&w.expanded(player)?))
}

fn check_shapes(g: &Game, w: &CosetWeights) -> Result<()> {
    if g.shape() != w.shape() {
        return Err(Error::ShapeMismatch);
    }
    Ok(())
}

/// `Ψ_w ξ = b^w`.
#[derive(Clone, Debug)]
pub struct PotentialEquation {
    pub psi: Matrix,
    pub rhs: Vec<f64>,
    /// Length `k/k_j` of each offset block of `ξ`.
    pub block_sizes: Vec<usize>,
}

/// Builds the coset weighted potential equation.
///
/// Block row `i−1` (for `i = 2..n`) of `Ψ_w` is `[−Λ_i E_1, 0, …, Λ_1 E_i, …, 0]`
/// and `b^w_i = Λ_1 (V^c_i)ᵀ − Λ_i (V^c_1)ᵀ`.
pub fn potential_equation(g: &Game, w: &CosetWeights) -> Result<PotentialEquation> {
    check_shapes(g, w)?;
    let shape = g.shape();
    let n = shape.players();
    let k = shape.profile_count();
    let lambda = LambdaSet::new(w);
    let block_sizes: Vec<usize> = shape.cards().iter().map(|kj| k / kj).collect();
    let total: usize = block_sizes.iter().sum();
    let col_start: Vec<usize> = block_sizes
        .iter()
        .scan(0, |acc, &s| {
            let start = *acc;
            *acc += s;
            Some(start)
        })
        .collect();

    let e1 = shape.dummy_matrix(1)?;
    let c1 = g.payoff_vector(1)?;
    let l1 = lambda.diagonal(1);
    let mut psi = Matrix::zeros((n - 1) * k, total);
    let mut blocks = Vec::with_capacity(n.saturating_sub(1));
    let mut rhs = Vec::with_capacity((n - 1) * k);
    for i in 2..=n {
        let left = -&lambda.scale_rows(i, &e1);
        let right = lambda.scale_rows(1, &shape.dummy_matrix(i)?);
        blocks.push((i, left, right));
        let ci = g.payoff_vector(i)?;
        let li = lambda.diagonal(i);
        rhs.extend((0..k).map(|m| l1[m] * ci[m] - li[m] * c1[m]));
    }
    if n > 1 {
        psi = Matrix::from_fn((n - 1) * k, total, |r, c| {
            let (i, left, right) = &blocks[r / k];
            let row = r % k;
            if c < block_sizes[0] {
                left[(row, c)]
            } else {
                let start = col_start[*i - 1];
                if c >= start && c < start + block_sizes[*i - 1] {
                    right[(row, c - start)]
                } else {
                    0.0
                }
            }
        });
    }
    Ok(PotentialEquation {
        psi,
        rhs,
        block_sizes,
    })
}

/// A recovered potential together with the offsets `V^d_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialResult {
    potential: Vec<f64>,
    offsets: Vec<Vec<f64>>,
    residual: f64,
}

impl PotentialResult {
    /// `V^P`, in profile order.
    pub fn potential(&self) -> &[f64] {
        &self.potential
    }

    /// `V^d_i` for every player, in opponent-profile order.
    pub fn offsets(&self) -> &[Vec<f64>] {
        &self.offsets
    }

    /// `‖Ψ_w ξ − b^w‖₂` of the accepted solution.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Same potential shifted so that `P(1, …, 1) = 0`; offsets are adjusted
    /// so that `c_i = w_i P + d_i` keeps holding.
    pub fn recentered(&self, w: &CosetWeights) -> Self {
        let c0 = self.potential.first().copied().unwrap_or(0.0);
        let potential = self.potential.iter().map(|p| p - c0).collect();
        let offsets = self
            .offsets
            .iter()
            .zip(w.rows())
            .map(|(d, wr)| d.iter().zip(wr).map(|(d, w)| d + c0 * w).collect())
            .collect();
        Self {
            potential,
            offsets,
            residual: self.residual,
        }
    }
}

/// `V^P = (V^c_1 − V^d_1 E_1ᵀ) Λ_1⁻¹` from player 1's offset block.
pub fn potential_from_offsets(g: &Game, w: &CosetWeights, first_offset: &[f64]) -> Result<Vec<f64>> {
    check_shapes(g, w)?;
    let shape = g.shape();
    let expected = shape.coset_count(1)?;
    if first_offset.len() != expected {
        return Err(Error::LengthMismatch {
            what: "player 1 offsets".into(),
            expected,
            found: first_offset.len(),
        });
    }
    let c1 = g.payoff_vector(1)?;
    let l1 = w.expanded(1)?;
    Ok((0..shape.profile_count())
        .map(|m| (c1[m] - first_offset[shape.coset_of(0, m)]) / l1[m])
        .collect())
}

/// Outcome of the solvability test, including the least-squares candidate
/// when the system is inconsistent.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialCheck {
    /// Whether `‖Ψ_w ξ − b^w‖ ≤ threshold`.
    pub solvable: bool,
    /// Acceptance threshold `tol · max(1, ‖b^w‖)`.
    pub threshold: f64,
    /// Potential and offsets from the minimum-norm least-squares `ξ`; a true
    /// potential only when `solvable`.
    pub candidate: PotentialResult,
}

/// [`solve_potential`], keeping the candidate and threshold.
pub fn check_potential(g: &Game, w: &CosetWeights, tol: f64) -> Result<PotentialCheck> {
    check_shapes(g, w)?;
    assert!(tol > 0.0, "tolerance must be positive");
    let shape = g.shape();
    if shape.players() == 1 {
        let w1 = w.expanded(1)?;
        let potential = g.payoff_vector(1)?.iter().zip(&w1).map(|(c, w)| c / w).collect();
        return Ok(PotentialCheck {
            solvable: true,
            threshold: tol,
            candidate: PotentialResult {
                potential,
                offsets: vec![vec![0.0; shape.coset_count(1)?]],
                residual: 0.0,
            },
        });
    }
    let eq = potential_equation(g, w)?;
    let ls = min_norm_least_squares(&eq.psi, &eq.rhs);
    let threshold = tol * norm(&eq.rhs).max(1.0);
    let mut offsets = Vec::with_capacity(eq.block_sizes.len());
    let mut start = 0;
    for &size in &eq.block_sizes {
        offsets.push(ls.solution[start..start + size].to_vec());
        start += size;
    }
    let potential = potential_from_offsets(g, w, &offsets[0])?;
    Ok(PotentialCheck {
        solvable: ls.residual <= threshold,
        threshold,
        candidate: PotentialResult {
            potential,
            offsets,
            residual: ls.residual,
        },
    })
}

/// Decides whether `g` is a coset weighted potential game for `w` and, if so,
/// recovers a potential.
///
/// Solves `Ψ_w ξ = b^w` in the minimum-norm least-squares sense and accepts
/// when `‖Ψ_w ξ − b^w‖ ≤ tol · max(1, ‖b^w‖)`. `Ok(None)` means the game is not
/// potential for these weights.
pub fn solve_potential(g: &Game, w: &CosetWeights, tol: f64) -> Result<Option<PotentialResult>> {
    let check = check_potential(g, w, tol)?;
    Ok(check.solvable.then_some(check.candidate))
}

/// Checks the defining identity directly over every unilateral deviation.
///
/// Independent of the linear-algebra route: it only reads payoffs, weights and
/// `potential` at pairs of profiles that differ in one coordinate.
pub fn verify_potential_bruteforce(
    g: &Game,
    w: &CosetWeights,
    potential: &[f64],
    tol: f64,
) -> Result<bool> {
    check_shapes(g, w)?;
    let shape = g.shape();
    if potential.len() != shape.profile_count() {
        return Err(Error::LengthMismatch {
            what: "potential".into(),
            expected: shape.profile_count(),
            found: potential.len(),
        });
    }
    for (i, (c, wr)) in g.payoff_vectors().iter().zip(w.rows()).enumerate() {
        let ki = shape.cards()[i];
        for (r, &wi) in wr.iter().enumerate() {
            for x in 0..ki {
                let mx = shape.coset_member(i, r, x);
                for y in (x + 1)..ki {
                    let my = shape.coset_member(i, r, y);
                    let lhs = c[mx] - c[my];
                    let rhs = wi * (potential[mx] - potential[my]);
                    if (lhs - rhs).abs() > tol {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Closed-form solvability residual for two players with two strategies each:
///
/// `(c−a)/α_1 + (e−f)/α_2 + (b−d)/β_1 + (h−g)/β_2`
///
/// where `(a,b,c,d)` and `(e,f,g,h)` are the two payoff vectors and
/// `V^w_i = [α_i, β_i]`. Zero exactly when the game is potential for `w`.
pub fn boolean_2x2_residual(g: &Game, w: &CosetWeights) -> Result<f64> {
    check_shapes(g, w)?;
    if g.shape().cards() != [2, 2] {
        return Err(Error::InvalidShape(format!(
            "closed form needs shape [2;2,2], got {}",
            g.shape()
        )));
    }
    let (c1, c2) = (&g.payoff_vectors()[0], &g.payoff_vectors()[1]);
    let (a, b, c, d) = (c1[0], c1[1], c1[2], c1[3]);
    let (e, f, gg, h) = (c2[0], c2[1], c2[2], c2[3]);
    let (a1, b1) = (w.rows()[0][0], w.rows()[0][1]);
    let (a2, b2) = (w.rows()[1][0], w.rows()[1][1]);
    Ok((c - a) / a1 + (e - f) / a2 + (b - d) / b1 + (h - gg) / b2)
}

/// How a player-weighted verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightSearch {
    /// Exact ratio test for two players with two strategies each.
    ClosedForm2x2,
    /// Least-squares search over constant per-player weights; a positive
    /// answer is confirmed, a negative one is not a proof.
    Heuristic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub exact: bool,
    pub exact_potential: Option<Vec<f64>>,
    pub player_weighted: bool,
    /// Constant per-player weights normalized to `w_1 = 1`, when found.
    pub player_weights: Option<Vec<f64>>,
    pub method: WeightSearch,
}

/// Classifies a game as exact and/or (constant) weighted potential.
pub fn classify(g: &Game, tol: f64) -> Result<Classification> {
    let shape = g.shape();
    let uniform = CosetWeights::uniform(shape);
    let exact_result = solve_potential(g, &uniform, tol)?;
    let exact = exact_result.is_some();
    let exact_potential = exact_result.map(|r| r.potential().to_vec());

    if shape.cards() == [2, 2] {
        let (c1, c2) = (&g.payoff_vectors()[0], &g.payoff_vectors()[1]);
        let d1 = c1[0] - c1[1] - c1[2] + c1[3];
        let d2 = c2[0] - c2[1] - c2[2] + c2[3];
        let scale = g
            .structure_vector()
            .iter()
            .fold(1.0_f64, |m, v| m.max(v.abs()));
        let zero = |d: f64| d.abs() <= tol * scale;
        let weights = if zero(d1) && zero(d2) {
            Some(vec![1.0, 1.0])
        } else if !zero(d1) && !zero(d2) && d1 * d2 > 0.0 {
            Some(vec![1.0, d2 / d1])
        } else {
            None
        };
        return Ok(Classification {
            exact,
            exact_potential,
            player_weighted: weights.is_some(),
            player_weights: weights,
            method: WeightSearch::ClosedForm2x2,
        });
    }

    let weights = if exact {
        Some(vec![1.0; shape.players()])
    } else {
        search_player_weights(g, tol)?
    };
    Ok(Classification {
        exact,
        exact_potential,
        player_weighted: weights.is_some(),
        player_weights: weights,
        method: WeightSearch::Heuristic,
    })
}

/// `c_i / w_i` is an exact potential game iff `Σ_i (1/w_i) H_iᵀ c_i = 0`, where
/// `H` spans the unweighted pure harmonic subspace. Fix `1/w_1 = 1` and solve
/// for the rest in the least-squares sense.
fn search_player_weights(g: &Game, tol: f64) -> Result<Option<Vec<f64>>> {
    let shape: &GameShape = g.shape();
    let n = shape.players();
    let k = shape.profile_count();
    let h = basis_pure_harmonic(&CosetWeights::uniform(shape))?;
    let d3 = h.cols();
    let projections: Vec<Vec<f64>> = (0..n)
        .map(|i| h.row_block(i * k..(i + 1) * k).tr_mul_vec(&g.payoff_vectors()[i]))
        .collect();
    let a = Matrix::from_fn(d3, n - 1, |r, c| projections[c + 1][r]);
    let rhs: Vec<f64> = projections[0].iter().map(|v| -v).collect();
    let ls = min_norm_least_squares(&a, &rhs);
    if ls.residual > tol * norm(&rhs).max(1.0) || ls.solution.iter().any(|&u| u <= tol) {
        return Ok(None);
    }
    let mut weights = vec![1.0];
    weights.extend(ls.solution.iter().map(|u| 1.0 / u));
    let w = CosetWeights::per_player(shape, &weights)?;
    Ok(solve_potential(g, &w, tol)?.map(|_| weights))
}

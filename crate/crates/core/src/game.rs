//! Finite normal-form games in structure-vector form.
//!
//! Profiles are ordered the way the semi-tensor product orders them:
//! `δ_{k_1}^{x_1} ⋉ … ⋉ δ_{k_n}^{x_n} = δ_k^m` with the last player varying
//! fastest. Payoff vectors, weight rows, and potentials are all stored in that
//! order, so they are literally the structure vectors of the functions they
//! represent.

use std::fmt;

use crate::error::{Error, Result};
use crate::stp::{dummy_matrix, Matrix};

/// Player count and strategy cardinalities `(k_1, …, k_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameShape {
    cards: Vec<usize>,
    /// `strides[j] = ∏_{l>j} k_l`
    strides: Vec<usize>,
    size: usize,
}

impl GameShape {
    pub fn new(cards: Vec<usize>) -> Result<Self> {
        if cards.is_empty() {
            return Err(Error::InvalidShape("a game needs at least one player".into()));
        }
        if let Some((i, &k)) = cards.iter().enumerate().find(|(_, &k)| k < 2) {
            return Err(Error::InvalidShape(format!(
                "player {} has {k} strategies; every player needs at least 2",
                i + 1
            )));
        }
        let size = cards
            .iter()
            .try_fold(1usize, |acc, &k| acc.checked_mul(k))
            .ok_or_else(|| Error::InvalidShape("profile count overflows".into()))?;
        let mut strides = vec![1; cards.len()];
        for j in (0..cards.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * cards[j + 1];
        }
        Ok(Self {
            cards,
            strides,
            size,
        })
    }

    pub fn players(&self) -> usize {
        self.cards.len()
    }

    pub fn cards(&self) -> &[usize] {
        &self.cards
    }

    /// `k_i` for the 1-based player `i`.
    pub fn cardinality(&self, player: usize) -> Result<usize> {
        self.check_player(player)?;
        Ok(self.cards[player - 1])
    }

    /// `k = ∏ k_i`.
    pub fn profile_count(&self) -> usize {
        self.size
    }

    /// `k / k_i`, the number of opponent profiles of player `i`.
    pub fn coset_count(&self, player: usize) -> Result<usize> {
        Ok(self.size / self.cardinality(player)?)
    }

    /// `Σ_j k / k_j`.
    pub fn total_coset_count(&self) -> usize {
        self.cards.iter().map(|k| self.size / k).sum()
    }

    pub fn dummy_matrix(&self, player: usize) -> Result<Matrix> {
        dummy_matrix(player, &self.cards)
    }

    pub(crate) fn check_player(&self, player: usize) -> Result<()> {
        if player == 0 || player > self.players() {
            return Err(Error::PlayerOutOfRange {
                player,
                players: self.players(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_profile(&self, p: &StrategyProfile) -> Result<()> {
        if p.0.len() != self.players() {
            return Err(Error::ProfileLength {
                expected: self.players(),
                found: p.0.len(),
            });
        }
        for (j, (&x, &k)) in p.0.iter().zip(&self.cards).enumerate() {
            if x == 0 || x > k {
                return Err(Error::StrategyOutOfRange {
                    player: j + 1,
                    strategy: x,
                    cardinality: k,
                });
            }
        }
        Ok(())
    }

    /// 0-based position of a validated profile.
    pub(crate) fn offset(&self, p: &StrategyProfile) -> usize {
        p.0.iter()
            .zip(&self.strides)
            .map(|(&x, &s)| (x - 1) * s)
            .sum()
    }

    /// 0-based position of `s_{-i}` for a validated profile; `i` is 0-based.
    pub(crate) fn reduced_offset(&self, p: &StrategyProfile, i: usize) -> usize {
        let ki = self.cards[i];
        p.0.iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(j, &x)| {
                let s = if j < i { self.strides[j] / ki } else { self.strides[j] };
                (x - 1) * s
            })
            .sum()
    }

    /// 0-based profile position of (own strategy `x`, opponents at coset `r`);
    /// all indices 0-based.
    pub(crate) fn coset_member(&self, i: usize, r: usize, x: usize) -> usize {
        let after = self.strides[i];
        let (hi, lo) = (r / after, r % after);
        hi * self.cards[i] * after + x * after + lo
    }

    /// 0-based coset of player `i` (0-based) containing profile position `m`.
    pub(crate) fn coset_of(&self, i: usize, m: usize) -> usize {
        let after = self.strides[i];
        let block = self.cards[i] * after;
        (m / block) * after + m % after
    }

    /// The profile with 1-based `index` (inverse of [`profile_index`]).
    pub fn profile_at(&self, index: usize) -> Result<StrategyProfile> {
        if index == 0 || index > self.size {
            return Err(Error::DimensionMismatch(format!(
                "profile index {index} outside 1..={}",
                self.size
            )));
        }
        Ok(self.profile_at_offset(index - 1))
    }

    pub(crate) fn profile_at_offset(&self, m: usize) -> StrategyProfile {
        StrategyProfile(
            self.strides
                .iter()
                .zip(&self.cards)
                .map(|(&s, &k)| (m / s) % k + 1)
                .collect(),
        )
    }

    /// All profiles in index order.
    pub fn profiles(&self) -> impl Iterator<Item = StrategyProfile> + '_ {
        (0..self.size).map(|m| self.profile_at_offset(m))
    }
}

impl fmt::Display for GameShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cards: Vec<String> = self.cards.iter().map(|k| k.to_string()).collect();
        write!(f, "[{};{}]", self.players(), cards.join(","))
    }
}

/// Strategy choices `(x_1, …, x_n)`, each 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrategyProfile(Vec<usize>);

impl StrategyProfile {
    pub fn new(choices: Vec<usize>) -> Self {
        Self(choices)
    }

    pub fn choices(&self) -> &[usize] {
        &self.0
    }

    /// Same profile with player `i` (1-based) switched to `strategy`.
    pub fn with_choice(&self, player: usize, strategy: usize) -> Self {
        let mut c = self.0.clone();
        c[player - 1] = strategy;
        Self(c)
    }
}

impl From<Vec<usize>> for StrategyProfile {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

impl fmt::Display for StrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// 1-based index `m` with `δ_k^m = ⋉_j δ_{k_j}^{x_j}`.
pub fn profile_index(p: &StrategyProfile, shape: &GameShape) -> Result<usize> {
    shape.check_profile(p)?;
    Ok(shape.offset(p) + 1)
}

/// 1-based index of `s_{-i}` among player `i`'s opponent profiles.
pub fn reduced_index(p: &StrategyProfile, player: usize, shape: &GameShape) -> Result<usize> {
    shape.check_player(player)?;
    shape.check_profile(p)?;
    Ok(shape.reduced_offset(p, player - 1) + 1)
}

/// A game: shape plus one payoff structure vector `V^c_i` per player.
#[derive(Clone, Debug, PartialEq)]
pub struct Game {
    shape: GameShape,
    payoffs: Vec<Vec<f64>>,
}

impl Game {
    pub fn new(shape: GameShape, payoffs: Vec<Vec<f64>>) -> Result<Self> {
        if payoffs.len() != shape.players() {
            return Err(Error::LengthMismatch {
                what: "payoffs (one row per player)".into(),
                expected: shape.players(),
                found: payoffs.len(),
            });
        }
        for (i, row) in payoffs.iter().enumerate() {
            if row.len() != shape.profile_count() {
                return Err(Error::LengthMismatch {
                    what: format!("payoffs[{i}]"),
                    expected: shape.profile_count(),
                    found: row.len(),
                });
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite(format!("payoffs[{i}][{j}]")));
            }
        }
        Ok(Self { shape, payoffs })
    }

    pub fn zero(shape: GameShape) -> Self {
        let payoffs = vec![vec![0.0; shape.profile_count()]; shape.players()];
        Self { shape, payoffs }
    }

    /// Splits `V_G = [V^c_1, …, V^c_n]` back into players.
    pub fn from_structure_vector(shape: GameShape, v: &[f64]) -> Result<Self> {
        let k = shape.profile_count();
        if v.len() != shape.players() * k {
            return Err(Error::LengthMismatch {
                what: "structure vector".into(),
                expected: shape.players() * k,
                found: v.len(),
            });
        }
        let payoffs = v.chunks(k).map(<[f64]>::to_vec).collect();
        Self::new(shape, payoffs)
    }

    pub fn shape(&self) -> &GameShape {
        &self.shape
    }

    /// `V^c_i` for the 1-based player `i`.
    pub fn payoff_vector(&self, player: usize) -> Result<&[f64]> {
        self.shape.check_player(player)?;
        Ok(&self.payoffs[player - 1])
    }

    pub fn payoff_vectors(&self) -> &[Vec<f64>] {
        &self.payoffs
    }

    /// `c_i(p) = V^c_i ⋉_j x_j`.
    pub fn payoff(&self, player: usize, p: &StrategyProfile) -> Result<f64> {
        self.shape.check_player(player)?;
        self.shape.check_profile(p)?;
        Ok(self.payoffs[player - 1][self.shape.offset(p)])
    }

    /// `V_G = [V^c_1, …, V^c_n]`.
    pub fn structure_vector(&self) -> Vec<f64> {
        self.payoffs.concat()
    }
}

/// Coset-depending weights: for each player a positive row `V^w_i` over the
/// opponents' joint strategies, in [`reduced_index`] order.
#[derive(Clone, Debug, PartialEq)]
pub struct CosetWeights {
    shape: GameShape,
    rows: Vec<Vec<f64>>,
}

impl CosetWeights {
    pub fn new(shape: GameShape, rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.len() != shape.players() {
            return Err(Error::LengthMismatch {
                what: "weights (one row per player)".into(),
                expected: shape.players(),
                found: rows.len(),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            let expected = shape.profile_count() / shape.cards()[i];
            if row.len() != expected {
                return Err(Error::LengthMismatch {
                    what: format!("weights[{i}]"),
                    expected,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFinite(format!("weights[{i}][{j}]")));
                }
                if v <= 0.0 {
                    return Err(Error::NonPositiveWeight {
                        path: format!("weights[{i}][{j}]"),
                        value: v,
                    });
                }
            }
        }
        Ok(Self { shape, rows })
    }

    /// All weights 1: the exact-potential specialization.
    pub fn uniform(shape: &GameShape) -> Self {
        let rows = shape
            .cards()
            .iter()
            .map(|k| vec![1.0; shape.profile_count() / k])
            .collect();
        Self {
            shape: shape.clone(),
            rows,
        }
    }

    /// Weights constant per player: `w_i(s_{-i}) = per_player[i]`.
    pub fn per_player(shape: &GameShape, per_player: &[f64]) -> Result<Self> {
        if per_player.len() != shape.players() {
            return Err(Error::LengthMismatch {
                what: "per-player weights".into(),
                expected: shape.players(),
                found: per_player.len(),
            });
        }
        let rows = shape
            .cards()
            .iter()
            .zip(per_player)
            .map(|(k, &w)| vec![w; shape.profile_count() / k])
            .collect();
        Self::new(shape.clone(), rows)
    }

    pub fn shape(&self) -> &GameShape {
        &self.shape
    }

    /// `V^w_i` for the 1-based player `i`.
    pub fn row(&self, player: usize) -> Result<&[f64]> {
        self.shape.check_player(player)?;
        Ok(&self.rows[player - 1])
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn is_uniform(&self) -> bool {
        self.rows.iter().flatten().all(|&w| w == 1.0)
    }

    /// `w_i(s_{-i}) = V^w_i ⋉_{j≠i} x_j`.
    pub fn weight_value(&self, player: usize, p: &StrategyProfile) -> Result<f64> {
        self.shape.check_player(player)?;
        self.shape.check_profile(p)?;
        Ok(self.rows[player - 1][self.shape.reduced_offset(p, player - 1)])
    }

    /// `V^w_i E_iᵀ`: the weight of player `i` (1-based) at every profile.
    pub fn expanded(&self, player: usize) -> Result<Vec<f64>> {
        self.shape.check_player(player)?;
        let i = player - 1;
        Ok((0..self.shape.profile_count())
            .map(|m| self.rows[i][self.shape.coset_of(i, m)])
            .collect())
    }
}

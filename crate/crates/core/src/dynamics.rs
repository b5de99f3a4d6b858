//! Pure Nash equilibria and myopic best-response paths.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::game::{Game, GameShape, StrategyProfile};

/// Payoff differences at or below this are ties, not improvements.
pub const TIE_TOL: f64 = 1e-9;

/// Best replies of the 1-based `player` against `p_{-i}`, ascending, ties included.
pub fn best_responses(g: &Game, player: usize, p: &StrategyProfile) -> Result<Vec<usize>> {
    let shape = g.shape();
    shape.check_player(player)?;
    shape.check_profile(p)?;
    let i = player - 1;
    let r = shape.reduced_offset(p, i);
    let c = &g.payoff_vectors()[i];
    let values: Vec<f64> = (0..shape.cards()[i])
        .map(|x| c[shape.coset_member(i, r, x)])
        .collect();
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(values
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v >= best - TIE_TOL)
        .map(|(x, _)| x + 1)
        .collect())
}

pub fn is_nash(g: &Game, p: &StrategyProfile) -> Result<bool> {
    for player in 1..=g.shape().players() {
        if !best_responses(g, player, p)?.contains(&p.choices()[player - 1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every pure Nash equilibrium, in profile order.
pub fn nash_equilibria(g: &Game) -> Vec<StrategyProfile> {
    g.shape()
        .profiles()
        .filter(|p| is_nash(g, p).expect("enumerated profiles are valid"))
        .collect()
}

/// An improvement path and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathRecord {
    /// Visited profiles, starting profile first.
    pub states: Vec<StrategyProfile>,
    /// 1-based deviating player of each step; one shorter than `states`.
    pub deviators: Vec<usize>,
    /// Reached a Nash equilibrium.
    pub terminated: bool,
    /// Revisited an earlier profile.
    pub cycle_detected: bool,
}

impl PathRecord {
    pub fn steps(&self) -> usize {
        self.deviators.len()
    }

    pub fn last(&self) -> &StrategyProfile {
        self.states.last().expect("a path always holds its start")
    }
}

/// Lowest-index player with a strictly improving deviation, and its lowest-index best reply.
fn improving_move(g: &Game, p: &StrategyProfile) -> Result<Option<(usize, usize)>> {
    for player in 1..=g.shape().players() {
        let current = g.payoff(player, p)?;
        let best = best_responses(g, player, p)?;
        let target = best[0];
        let gain = g.payoff(player, &p.with_choice(player, target))? - current;
        if gain > TIE_TOL {
            return Ok(Some((player, target)));
        }
    }
    Ok(None)
}

/// Myopic best-response dynamics from `start`, at most `max_steps` moves.
pub fn best_response_path(g: &Game, start: &StrategyProfile, max_steps: usize) -> Result<PathRecord> {
    if max_steps == 0 {
        return Err(Error::DimensionMismatch("max_steps must be at least 1".into()));
    }
    g.shape().check_profile(start)?;
    let mut states = vec![start.clone()];
    let mut deviators = Vec::new();
    let mut seen: HashSet<StrategyProfile> = HashSet::from([start.clone()]);
    let mut current = start.clone();
    loop {
        let Some((player, strategy)) = improving_move(g, &current)? else {
            return Ok(PathRecord {
                states,
                deviators,
                terminated: true,
                cycle_detected: false,
            });
        };
        if deviators.len() == max_steps {
            return Ok(PathRecord {
                states,
                deviators,
                terminated: false,
                cycle_detected: false,
            });
        }
        current = current.with_choice(player, strategy);
        states.push(current.clone());
        deviators.push(player);
        if !seen.insert(current.clone()) {
            return Ok(PathRecord {
                states,
                deviators,
                terminated: false,
                cycle_detected: true,
            });
        }
    }
}

/// All profiles where `potential` is within `TIE_TOL` of its maximum.
pub fn potential_argmax(potential: &[f64], shape: &GameShape) -> Result<Vec<StrategyProfile>> {
    if potential.len() != shape.profile_count() {
        return Err(Error::LengthMismatch {
            what: "potential".into(),
            expected: shape.profile_count(),
            found: potential.len(),
        });
    }
    let best = potential.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(shape
        .profiles()
        .zip(potential)
        .filter(|&(_, &v)| v >= best - TIE_TOL)
        .map(|(p, _)| p)
        .collect())
}

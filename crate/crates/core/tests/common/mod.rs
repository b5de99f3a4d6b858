#![allow(dead_code)]

use cwgame::linalg::{min_norm_least_squares, norm, null_space, rank};
use cwgame::{profile_index, reduced_index, CosetWeights, Game, GameShape, Matrix};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn shape(cards: &[usize]) -> GameShape {
    GameShape::new(cards.to_vec()).unwrap()
}

pub fn random_vec(rng: &mut StdRng, len: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..len).map(|_| rng.random_range(lo..hi)).collect()
}

pub fn random_game(rng: &mut StdRng, s: &GameShape) -> Game {
    let k = s.profile_count();
    let payoffs = (0..s.players()).map(|_| random_vec(rng, k, -5.0, 5.0)).collect();
    Game::new(s.clone(), payoffs).unwrap()
}

pub fn random_weights(rng: &mut StdRng, s: &GameShape) -> CosetWeights {
    let rows = (1..=s.players())
        .map(|i| random_vec(rng, s.coset_count(i).unwrap(), 0.25, 4.0))
        .collect();
    CosetWeights::new(s.clone(), rows).unwrap()
}

/// `c_i(s) = w_i(s_{-i}) P(s) + d_i(s_{-i})`, assembled profile by profile.
pub fn potential_game(rng: &mut StdRng, w: &CosetWeights) -> (Game, Vec<f64>) {
    let s = w.shape();
    let k = s.profile_count();
    let p = random_vec(rng, k, -5.0, 5.0);
    let mut payoffs = vec![vec![0.0; k]; s.players()];
    for i in 1..=s.players() {
        let d = random_vec(rng, s.coset_count(i).unwrap(), -5.0, 5.0);
        for prof in s.profiles() {
            let m = profile_index(&prof, s).unwrap() - 1;
            let r = reduced_index(&prof, i, s).unwrap() - 1;
            payoffs[i - 1][m] = w.weight_value(i, &prof).unwrap() * p[m] + d[r];
        }
    }
    (Game::new(s.clone(), payoffs).unwrap(), p)
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()))
}

pub fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

/// `max_s |a(s) − b(s) − (a(s_0) − b(s_0))|`.
pub fn diff_up_to_constant(a: &[f64], b: &[f64]) -> f64 {
    let c = a[0] - b[0];
    a.iter().zip(b).fold(0.0_f64, |m, (x, y)| m.max((x - y - c).abs()))
}

/// Equal column spans, decided by rank.
pub fn same_span(a: &Matrix, b: &Matrix) -> bool {
    let ab = Matrix::hstack(&[a, b]).unwrap();
    let r = rank(&ab);
    rank(a) == r && rank(b) == r
}

/// Unweighted subspaces derived from their definitions by enumerating profiles.
pub struct Unweighted {
    pub pure_potential: Matrix,
    pub nonstrategic: Matrix,
    pub pure_harmonic: Matrix,
}

pub fn unweighted_subspaces(s: &GameShape) -> Unweighted {
    let (n, k) = (s.players(), s.profile_count());
    let offsets: Vec<usize> = (1..=n)
        .scan(0, |acc, i| {
            let o = *acc;
            *acc += s.coset_count(i).unwrap();
            Some(o)
        })
        .collect();
    let mut ns = vec![vec![0.0; s.total_coset_count()]; n * k];
    let mut pp = vec![vec![0.0; k]; n * k];
    for p in s.profiles() {
        let m = profile_index(&p, s).unwrap() - 1;
        for i in 1..=n {
            let r = reduced_index(&p, i, s).unwrap() - 1;
            ns[(i - 1) * k + m][offsets[i - 1] + r] = 1.0;
            // indicator of profile m, minus its average over player i's deviations
            let ki = s.cards()[i - 1] as f64;
            for x in 1..=s.cards()[i - 1] {
                let q = profile_index(&p.with_choice(i, x), s).unwrap() - 1;
                pp[(i - 1) * k + q][m] -= 1.0 / ki;
            }
            pp[(i - 1) * k + m][m] += 1.0;
        }
    }
    let nonstrategic = Matrix::from_rows(&ns).unwrap();
    let pure_potential = Matrix::from_rows(&pp).unwrap();
    let mut gp = vec![vec![0.0; k]; n * k];
    for m in 0..k {
        for i in 0..n {
            gp[i * k + m][m] = 1.0;
        }
    }
    let lifted = Matrix::from_rows(&gp).unwrap();
    let potential = Matrix::hstack(&[&lifted, &nonstrategic]).unwrap();
    Unweighted {
        pure_potential,
        nonstrategic,
        pure_harmonic: null_space(&potential.transpose()),
    }
}

/// Solvability of `c_i(s) = w_i(s_{-i}) P(s) + d_i(s_{-i})` in the unknowns `(P, d)`,
/// written out profile by profile rather than through the potential equation.
pub fn potential_exists(g: &Game, w: &CosetWeights) -> bool {
    let s = g.shape();
    let (n, k) = (s.players(), s.profile_count());
    let offsets: Vec<usize> = (1..=n)
        .scan(k, |acc, i| {
            let o = *acc;
            *acc += s.coset_count(i).unwrap();
            Some(o)
        })
        .collect();
    let unknowns = k + s.total_coset_count();
    let mut rows = Vec::with_capacity(n * k);
    let mut rhs = Vec::with_capacity(n * k);
    for i in 1..=n {
        for p in s.profiles() {
            let m = profile_index(&p, s).unwrap() - 1;
            let r = reduced_index(&p, i, s).unwrap() - 1;
            let mut row = vec![0.0; unknowns];
            row[m] = w.weight_value(i, &p).unwrap();
            row[offsets[i - 1] + r] = 1.0;
            rows.push(row);
            rhs.push(g.payoff(i, &p).unwrap());
        }
    }
    let a = Matrix::from_rows(&rows).unwrap();
    let ls = min_norm_least_squares(&a, &rhs);
    ls.residual <= 1e-8 * norm(&rhs).max(1.0)
}

//! Coset weighted potential games.
//!
//! A finite game with `n` players and strategy counts `k_1, …, k_n` is stored
//! as one payoff vector per player over all `k = ∏ k_i` profiles. The crate
//! decides whether such a game is a coset weighted potential game for given
//! weights, recovers the potential, decomposes any game into weighted pure
//! potential, non-strategic and weighted pure harmonic parts, and runs
//! best-response dynamics.
//!
//! Indexing: players, strategies, profile indices and `δ_n^i` are 1-based in
//! every public API, as in the usual mathematical notation. Raw storage
//! (`Matrix` entries, slices returned by accessors) is 0-based.
//!
//! ```
//! use cwgame::{CosetWeights, Game, GameShape, solve_potential, DEFAULT_TOL};
//!
//! let shape = GameShape::new(vec![2, 2]).unwrap();
//! let game = Game::new(
//!     shape.clone(),
//!     vec![vec![-1.0, 2.0, 0.0, 3.0], vec![3.0, 3.0, 5.0, 4.0]],
//! )
//! .unwrap();
//! let w = CosetWeights::new(shape, vec![vec![1.0, 2.0], vec![3.0, 2.0]]).unwrap();
//! let found = solve_potential(&game, &w, DEFAULT_TOL).unwrap().unwrap();
//! let p = found.potential();
//! assert!((p[2] - p[0] - 1.0).abs() < 1e-9);
//! ```

pub mod cli;
pub mod decomposition;
pub mod dynamics;
pub mod error;
pub mod game;
pub mod io;
pub mod linalg;
pub mod potential;
pub mod stp;

pub use decomposition::{
    assemble_basis, basis_nonstrategic, basis_potential_span, basis_pure_harmonic,
    basis_pure_potential, decompose, membership, Decomposition, DecompositionBasis, Membership,
};
pub use dynamics::{best_response_path, best_responses, is_nash, nash_equilibria, potential_argmax, PathRecord};
pub use error::{Error, Result};
pub use game::{profile_index, reduced_index, CosetWeights, Game, GameShape, StrategyProfile};
pub use potential::{
    boolean_2x2_residual, check_potential, classify, solve_potential, verify_potential_bruteforce, Classification,
    PotentialCheck, PotentialResult, DEFAULT_TOL,
};
pub use stp::{delta, kron, stp, LogicalMatrix, Matrix};

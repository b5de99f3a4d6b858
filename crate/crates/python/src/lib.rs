//! Python bindings for `cwgame`.
//!
//! Strategies, players and profiles are 1-based, as in the Rust crate.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cwgame::potential::WeightSearch;
use cwgame::{CosetWeights, Game, GameShape, StrategyProfile, DEFAULT_TOL};

fn value_err(e: cwgame::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn profile(choices: Vec<usize>) -> StrategyProfile {
    StrategyProfile::new(choices)
}

fn choices(p: &[StrategyProfile]) -> Vec<Vec<usize>> {
    p.iter().map(|q| q.choices().to_vec()).collect()
}

/// A finite game given by one payoff vector per player, profiles ordered with the last player fastest.
#[pyclass(name = "Game", module = "pycwgame", frozen)]
pub struct PyGame {
    inner: Game,
}

#[pymethods]
impl PyGame {
    #[new]
    fn new(cardinalities: Vec<usize>, payoffs: Vec<Vec<f64>>) -> PyResult<Self> {
        let shape = GameShape::new(cardinalities).map_err(value_err)?;
        let inner = Game::new(shape, payoffs).map_err(value_err)?;
        Ok(Self { inner })
    }

    /// Parse a game document; returns `(game, weights or None)`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<(Self, Option<PyWeights>)> {
        let (game, weights) = cwgame::io::parse_game(text).map_err(value_err)?;
        Ok((Self { inner: game }, weights.map(|inner| PyWeights { inner })))
    }

    #[pyo3(signature = (weights = None))]
    fn to_json(&self, weights: Option<&PyWeights>) -> String {
        cwgame::io::serialize_game(&self.inner, weights.map(|w| &w.inner))
    }

    #[getter]
    fn cardinalities(&self) -> Vec<usize> {
        self.inner.shape().cards().to_vec()
    }

    #[getter]
    fn players(&self) -> usize {
        self.inner.shape().players()
    }

    #[getter]
    fn payoffs(&self) -> Vec<Vec<f64>> {
        self.inner.payoff_vectors().to_vec()
    }

    fn payoff(&self, player: usize, profile_choices: Vec<usize>) -> PyResult<f64> {
        self.inner.payoff(player, &profile(profile_choices)).map_err(value_err)
    }

    fn profiles(&self) -> Vec<Vec<usize>> {
        self.inner.shape().profiles().map(|p| p.choices().to_vec()).collect()
    }

    fn __repr__(&self) -> String {
        format!("Game(cardinalities={:?})", self.inner.shape().cards())
    }
}

/// Positive coset weights, one row per player indexed by the opponents' profile.
#[pyclass(name = "CosetWeights", module = "pycwgame", frozen)]
pub struct PyWeights {
    inner: CosetWeights,
}

#[pymethods]
impl PyWeights {
    #[new]
    fn new(cardinalities: Vec<usize>, rows: Vec<Vec<f64>>) -> PyResult<Self> {
        let shape = GameShape::new(cardinalities).map_err(value_err)?;
        let inner = CosetWeights::new(shape, rows).map_err(value_err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn uniform(cardinalities: Vec<usize>) -> PyResult<Self> {
        let shape = GameShape::new(cardinalities).map_err(value_err)?;
        Ok(Self { inner: CosetWeights::uniform(&shape) })
    }

    #[getter]
    fn rows(&self) -> Vec<Vec<f64>> {
        self.inner.rows().to_vec()
    }

    fn is_uniform(&self) -> bool {
        self.inner.is_uniform()
    }

    fn __repr__(&self) -> String {
        format!("CosetWeights(rows={:?})", self.inner.rows())
    }
}

#[pyclass(name = "PotentialCheck", module = "pycwgame", frozen, get_all)]
pub struct PyPotentialCheck {
    solvable: bool,
    residual: f64,
    threshold: f64,
    /// `None` unless solvable.
    potential: Option<Vec<f64>>,
    offsets: Option<Vec<Vec<f64>>>,
}

#[pymethods]
impl PyPotentialCheck {
    fn __repr__(&self) -> String {
        format!("PotentialCheck(solvable={}, residual={:e})", self.solvable, self.residual)
    }
}

/// Solve the potential equation; the potential is recentered to `P(1,…,1) = 0` when `recenter`.
#[pyfunction]
#[pyo3(signature = (game, weights, tol = DEFAULT_TOL, recenter = false))]
fn check_potential(game: &PyGame, weights: &PyWeights, tol: f64, recenter: bool) -> PyResult<PyPotentialCheck> {
    let check = cwgame::check_potential(&game.inner, &weights.inner, tol).map_err(value_err)?;
    let candidate = if recenter { check.candidate.recentered(&weights.inner) } else { check.candidate };
    Ok(PyPotentialCheck {
        solvable: check.solvable,
        residual: candidate.residual(),
        threshold: check.threshold,
        potential: check.solvable.then(|| candidate.potential().to_vec()),
        offsets: check.solvable.then(|| candidate.offsets().to_vec()),
    })
}

/// Check every unilateral deviation against a candidate potential.
#[pyfunction]
#[pyo3(signature = (game, weights, potential, tol = 1e-8))]
fn verify_potential(game: &PyGame, weights: &PyWeights, potential: Vec<f64>, tol: f64) -> PyResult<bool> {
    cwgame::verify_potential_bruteforce(&game.inner, &weights.inner, &potential, tol).map_err(value_err)
}

#[pyclass(name = "Decomposition", module = "pycwgame", frozen, get_all)]
pub struct PyDecomposition {
    x_pure_potential: Vec<f64>,
    x_nonstrategic: Vec<f64>,
    x_pure_harmonic: Vec<f64>,
    pure_potential: Vec<f64>,
    nonstrategic: Vec<f64>,
    pure_harmonic: Vec<f64>,
    potential: Vec<f64>,
    harmonic: Vec<f64>,
    reconstruction_error: f64,
    condition_number: f64,
}

#[pyfunction]
fn decompose(game: &PyGame, weights: &PyWeights) -> PyResult<PyDecomposition> {
    let basis = cwgame::assemble_basis(&weights.inner).map_err(value_err)?;
    let d = basis.decompose(&game.inner).map_err(value_err)?;
    Ok(PyDecomposition {
        pure_potential: d.pure_potential().to_vec(),
        nonstrategic: d.nonstrategic().to_vec(),
        pure_harmonic: d.pure_harmonic().to_vec(),
        potential: d.potential(),
        harmonic: d.harmonic(),
        reconstruction_error: d.reconstruction_error(),
        condition_number: basis.condition_number(),
        x_pure_potential: d.x_pure_potential,
        x_nonstrategic: d.x_nonstrategic,
        x_pure_harmonic: d.x_pure_harmonic,
    })
}

#[pyclass(name = "Membership", module = "pycwgame", frozen, get_all)]
pub struct PyMembership {
    non_strategic: bool,
    potential: bool,
    pure_potential: bool,
    harmonic: bool,
    pure_harmonic: bool,
    plain_harmonic: bool,
    plain_pure_harmonic: bool,
    disagreements: Vec<String>,
}

#[pyfunction]
#[pyo3(signature = (game, weights, tol = DEFAULT_TOL))]
fn membership(game: &PyGame, weights: &PyWeights, tol: f64) -> PyResult<PyMembership> {
    let m = cwgame::membership(&game.inner, &weights.inner, tol).map_err(value_err)?;
    Ok(PyMembership {
        non_strategic: m.non_strategic,
        potential: m.potential,
        pure_potential: m.pure_potential,
        harmonic: m.harmonic,
        pure_harmonic: m.pure_harmonic,
        plain_harmonic: m.plain_harmonic,
        plain_pure_harmonic: m.plain_pure_harmonic,
        disagreements: m.disagreements.iter().map(|s| s.to_string()).collect(),
    })
}

#[pyfunction]
fn nash_equilibria(game: &PyGame) -> Vec<Vec<usize>> {
    choices(&cwgame::nash_equilibria(&game.inner))
}

#[pyfunction]
fn best_responses(game: &PyGame, player: usize, profile_choices: Vec<usize>) -> PyResult<Vec<usize>> {
    cwgame::best_responses(&game.inner, player, &profile(profile_choices)).map_err(value_err)
}

#[pyfunction]
fn potential_argmax(game: &PyGame, potential: Vec<f64>) -> PyResult<Vec<Vec<usize>>> {
    let best = cwgame::potential_argmax(&potential, game.inner.shape()).map_err(value_err)?;
    Ok(choices(&best))
}

#[pyclass(name = "Path", module = "pycwgame", frozen, get_all)]
pub struct PyPath {
    states: Vec<Vec<usize>>,
    deviators: Vec<usize>,
    terminated: bool,
    cycle_detected: bool,
}

#[pyfunction]
#[pyo3(signature = (game, start, max_steps = None))]
fn best_response_path(game: &PyGame, start: Vec<usize>, max_steps: Option<usize>) -> PyResult<PyPath> {
    let s = game.inner.shape();
    let limit = max_steps.unwrap_or(10 * s.players() * s.profile_count());
    let path = cwgame::best_response_path(&game.inner, &profile(start), limit).map_err(value_err)?;
    Ok(PyPath {
        states: choices(&path.states),
        deviators: path.deviators,
        terminated: path.terminated,
        cycle_detected: path.cycle_detected,
    })
}

#[pyclass(name = "Classification", module = "pycwgame", frozen, get_all)]
pub struct PyClassification {
    exact: bool,
    exact_potential: Option<Vec<f64>>,
    player_weighted: bool,
    player_weights: Option<Vec<f64>>,
    /// `"closed-form 2x2"` or `"heuristic"`.
    method: &'static str,
}

#[pyfunction]
#[pyo3(signature = (game, tol = DEFAULT_TOL))]
fn classify(game: &PyGame, tol: f64) -> PyResult<PyClassification> {
    let c = cwgame::classify(&game.inner, tol).map_err(value_err)?;
    Ok(PyClassification {
        exact: c.exact,
        exact_potential: c.exact_potential,
        player_weighted: c.player_weighted,
        player_weights: c.player_weights,
        method: match c.method {
            WeightSearch::ClosedForm2x2 => "closed-form 2x2",
            WeightSearch::Heuristic => "heuristic",
        },
    })
}

#[pymodule]
fn pycwgame(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGame>()?;
    m.add_class::<PyWeights>()?;
    m.add_class::<PyPotentialCheck>()?;
    m.add_class::<PyDecomposition>()?;
    m.add_class::<PyMembership>()?;
    m.add_class::<PyPath>()?;
    m.add_class::<PyClassification>()?;
    m.add_function(wrap_pyfunction!(check_potential, m)?)?;
    m.add_function(wrap_pyfunction!(verify_potential, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(membership, m)?)?;
    m.add_function(wrap_pyfunction!(nash_equilibria, m)?)?;
    m.add_function(wrap_pyfunction!(best_responses, m)?)?;
    m.add_function(wrap_pyfunction!(potential_argmax, m)?)?;
    m.add_function(wrap_pyfunction!(best_response_path, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add("DEFAULT_TOL", DEFAULT_TOL)?;
    Ok(())
}

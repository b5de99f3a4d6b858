//! Command implementations behind the `cwgame` binary.
//!
//! Each command reads a game file, runs one analysis and returns a [`Report`].
//! The report is a JSON tree; [`Report::to_json`] prints it with 17
//! significant digits and [`Report::to_text`] renders the same tree for
//! people, using the shortest representation that round-trips.

use std::fmt::Write as _;
use std::io;
use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::decomposition::{assemble_basis, membership_with, KERNEL_TOL};
use crate::dynamics::{best_response_path, nash_equilibria, potential_argmax, PathRecord, TIE_TOL};
use crate::error::Error;
use crate::game::{CosetWeights, Game, StrategyProfile};
use crate::io::{parse_game, parse_weights};
use crate::potential::{check_potential, classify, verify_potential_bruteforce, WeightSearch, DEFAULT_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Decompose,
    Dynamics,
    Classify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Decompose => "decompose",
            Command::Dynamics => "dynamics",
            Command::Classify => "classify",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub weights_file: Option<PathBuf>,
    pub uniform: bool,
    pub tol: f64,
    pub brute_force: bool,
    pub recenter: bool,
    /// 1-based starting profile for dynamics; `(1, …, 1)` when absent.
    pub start: Option<Vec<usize>>,
    pub max_steps: Option<usize>,
    pub all_starts: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            weights_file: None,
            uniform: false,
            tol: DEFAULT_TOL,
            brute_force: false,
            recenter: false,
            start: None,
            max_steps: None,
            all_starts: false,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub tolerances: Value,
    pub result: Value,
    pub timing_ms: f64,
}

/// Writes every float with 17 significant digits.
struct FullPrecision;

impl serde_json::ser::Formatter for FullPrecision {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, FullPrecision);
        self.serialize(&mut ser).expect("report serializes");
        String::from_utf8(out).expect("serde_json writes UTF-8")
    }

    pub fn to_text(&self) -> String {
        let tree = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        render(&tree, 0, &mut out);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(match n.as_f64() {
            Some(f) if n.is_f64() => float(f),
            _ => n.to_string(),
        }),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => Some(format!(
            "[{}]",
            items.iter().map(|i| scalar(i).expect("flat")).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

/// Shortest round-trip form, switching to exponent notation for very small or large magnitudes.
fn float(f: f64) -> String {
    let a = f.abs();
    if a != 0.0 && !(1e-4..1e16).contains(&a) {
        format!("{f:e}")
    } else {
        f.to_string()
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (key, value) in map {
                match scalar(value) {
                    Some(s) => writeln!(out, "{pad}{key}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{key}:").unwrap();
                        render(value, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (n, item) in items.iter().enumerate() {
                match scalar(item) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}- [{}]", n + 1).unwrap();
                        render(item, depth + 1, out);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).expect("scalar")).unwrap(),
    }
}

struct Input {
    game: Game,
    file_weights: Option<CosetWeights>,
    flag_weights: Option<CosetWeights>,
    digest: String,
}

fn read(path: &PathBuf) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load(game_file: &PathBuf, opts: &Options) -> Result<Input, CliError> {
    if opts.uniform && opts.weights_file.is_some() {
        return Err(CliError::Input("--uniform conflicts with --weights-file".into()));
    }
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(CliError::Input(format!("--tol must be positive, got {}", opts.tol)));
    }
    let bytes = read(game_file)?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    let text = String::from_utf8(bytes)
        .map_err(|_| CliError::Input(format!("{}: not UTF-8", game_file.display())))?;
    let (game, file_weights) =
        parse_game(&text).map_err(|e| CliError::Input(format!("{}: {e}", game_file.display())))?;
    let flag_weights = match &opts.weights_file {
        Some(path) => {
            let bytes = read(path)?;
            hasher.update(&bytes);
            let text = String::from_utf8(bytes)
                .map_err(|_| CliError::Input(format!("{}: not UTF-8", path.display())))?;
            Some(
                parse_weights(&text, game.shape())
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
            )
        }
        None => None,
    };
    Ok(Input {
        game,
        file_weights,
        flag_weights,
        digest: format!("sha256:{}", hex::encode(hasher.finalize())),
    })
}

impl Input {
    /// Weights in priority order: `--uniform`, `--weights-file`, the game
    /// file's own weights. `None` when there are none of those.
    fn weights(&self, opts: &Options) -> Option<(CosetWeights, &'static str)> {
        if opts.uniform {
            return Some((CosetWeights::uniform(self.game.shape()), "uniform"));
        }
        if let Some(w) = &self.flag_weights {
            return Some((w.clone(), "weights-file"));
        }
        self.file_weights.clone().map(|w| (w, "game-file"))
    }

    fn weights_or_uniform(&self, opts: &Options) -> (CosetWeights, &'static str) {
        self.weights(opts)
            .unwrap_or_else(|| (CosetWeights::uniform(self.game.shape()), "uniform"))
    }
}

fn profile(p: &StrategyProfile) -> Value {
    Value::String(p.to_string())
}

fn path_value(path: &PathRecord) -> Value {
    json!({
        "states": path.states.iter().map(profile).collect::<Vec<_>>(),
        "deviators": path.deviators,
        "terminated": path.terminated,
        "cycle_detected": path.cycle_detected,
    })
}

/// Runs one command against `game_file`.
pub fn run(command: Command, game_file: &PathBuf, opts: &Options) -> Result<Report, CliError> {
    let clock = Instant::now();
    let input = load(game_file, opts)?;
    let mut tolerances = Map::new();
    tolerances.insert("solve".into(), json!(opts.tol));
    let result = match command {
        Command::Verify => verify(&input, opts)?,
        Command::Decompose => {
            tolerances.insert("kernel".into(), json!(KERNEL_TOL));
            decompose(&input, opts)?
        }
        Command::Dynamics => {
            tolerances.insert("tie".into(), json!(TIE_TOL));
            dynamics(&input, opts)?
        }
        Command::Classify => classify_cmd(&input, opts)?,
    };
    Ok(Report {
        command: command.name().into(),
        input_digest: input.digest,
        tolerances: Value::Object(tolerances),
        result,
        timing_ms: clock.elapsed().as_secs_f64() * 1e3,
    })
}

fn payoff_scale(g: &Game) -> f64 {
    g.structure_vector().iter().fold(1.0_f64, |a, b| a.max(b.abs()))
}

fn verify(input: &Input, opts: &Options) -> Result<Value, CliError> {
    let (w, source) = input.weights_or_uniform(opts);
    let g = &input.game;
    let check = check_potential(g, &w, opts.tol)?;
    let mut out = Map::new();
    out.insert("weights".into(), json!(source));
    out.insert("solvable".into(), json!(check.solvable));
    out.insert("residual".into(), json!(check.candidate.residual()));
    out.insert("threshold".into(), json!(check.threshold));
    let solved = if opts.recenter {
        check.candidate.recentered(&w)
    } else {
        check.candidate.clone()
    };
    if check.solvable {
        out.insert("potential".into(), json!(solved.potential()));
        out.insert("offsets".into(), json!(solved.offsets()));
    } else {
        out.insert("potential".into(), Value::Null);
        out.insert("offsets".into(), Value::Null);
    }
    if opts.brute_force {
        let accepted = verify_potential_bruteforce(
            g,
            &w,
            check.candidate.potential(),
            opts.tol * payoff_scale(g),
        )?;
        out.insert(
            "brute_force".into(),
            json!({ "accepted": accepted, "agrees": accepted == check.solvable }),
        );
    }
    Ok(Value::Object(out))
}

fn decompose(input: &Input, opts: &Options) -> Result<Value, CliError> {
    let (w, source) = input.weights(opts).ok_or_else(|| {
        CliError::Input("decompose needs weights: put them in the game file, pass --weights-file, or pass --uniform".into())
    })?;
    let basis = assemble_basis(&w)?;
    let d = basis.decompose(&input.game)?;
    let m = membership_with(&basis, &input.game, opts.tol)?;
    let (d1, d2, d3) = basis.dimensions();
    let reconstruction = d.reconstruction_error();
    let self_check_tol = 1e-8 * payoff_scale(&input.game);
    Ok(json!({
        "weights": source,
        "coefficients": {
            "pure_potential": d.x_pure_potential,
            "non_strategic": d.x_nonstrategic,
            "pure_harmonic": d.x_pure_harmonic,
        },
        "projections": {
            "pure_potential": d.pure_potential(),
            "non_strategic": d.nonstrategic(),
            "pure_harmonic": d.pure_harmonic(),
            "potential": d.potential(),
            "harmonic": d.harmonic(),
        },
        "dimensions": { "pure_potential": d1, "non_strategic": d2, "pure_harmonic": d3 },
        "condition_number": basis.condition_number(),
        "ill_conditioned": basis.is_ill_conditioned(),
        "membership": {
            "non_strategic": m.non_strategic,
            "potential": m.potential,
            "pure_potential": m.pure_potential,
            "harmonic": m.harmonic,
            "pure_harmonic": m.pure_harmonic,
            "plain_harmonic": m.plain_harmonic,
            "plain_pure_harmonic": m.plain_pure_harmonic,
            "disagreements": m.disagreements,
        },
        "self_check": {
            "reconstruction_error": reconstruction,
            "passed": reconstruction <= self_check_tol,
        },
    }))
}

fn dynamics(input: &Input, opts: &Options) -> Result<Value, CliError> {
    let g = &input.game;
    let shape = g.shape();
    let (w, source) = input.weights_or_uniform(opts);
    let max_steps = opts
        .max_steps
        .unwrap_or(10 * shape.players() * shape.profile_count());
    if max_steps == 0 {
        return Err(CliError::Input("--max-steps must be at least 1".into()));
    }
    let argmax = match check_potential(g, &w, opts.tol)? {
        c if c.solvable => Value::Array(
            potential_argmax(c.candidate.potential(), shape)?
                .iter()
                .map(profile)
                .collect(),
        ),
        _ => Value::Null,
    };
    let mut out = Map::new();
    out.insert("weights".into(), json!(source));
    out.insert(
        "nash_equilibria".into(),
        Value::Array(nash_equilibria(g).iter().map(profile).collect()),
    );
    out.insert("potential_argmax".into(), argmax);
    out.insert("max_steps".into(), json!(max_steps));
    if opts.all_starts {
        if opts.start.is_some() {
            return Err(CliError::Input("--start conflicts with --all-starts".into()));
        }
        let paths = shape
            .profiles()
            .map(|p| best_response_path(g, &p, max_steps).map(|r| path_value(&r)))
            .collect::<Result<Vec<_>, _>>()?;
        out.insert("paths".into(), Value::Array(paths));
    } else {
        let start = StrategyProfile::new(
            opts.start
                .clone()
                .unwrap_or_else(|| vec![1; shape.players()]),
        );
        let path = best_response_path(g, &start, max_steps)
            .map_err(|e| CliError::Input(format!("--start: {e}")))?;
        out.insert("path".into(), path_value(&path));
    }
    Ok(Value::Object(out))
}

fn classify_cmd(input: &Input, opts: &Options) -> Result<Value, CliError> {
    let c = classify(&input.game, opts.tol)?;
    Ok(json!({
        "exact": c.exact,
        "exact_potential": c.exact_potential,
        "player_weighted": c.player_weighted,
        "player_weights": c.player_weights,
        "method": match c.method {
            WeightSearch::ClosedForm2x2 => "closed-form 2x2",
            WeightSearch::Heuristic => "heuristic",
        },
    }))
}

/// Parses `--start 1,2,1`.
pub fn parse_profile(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| format!("`{t}` is not a strategy index: {e}"))
        })
        .collect()
}

//! JSON game files.
//!
//! ```json
//! {
//!   "players": 2,
//!   "cardinalities": [2, 2],
//!   "payoffs": [[-1, 2, 0, 3], [3, 3, 5, 4]],
//!   "weights": [[1, 2], [4, 2]]
//! }
//! ```
//!
//! `payoffs[i]` is player `i+1`'s structure vector in profile order (last
//! player fastest); `weights[i]` has one strictly positive entry per opponent
//! profile. `weights` is optional.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{CosetWeights, Game, GameShape};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GameDocument {
    players: usize,
    cardinalities: Vec<usize>,
    payoffs: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum WeightsDocument {
    Wrapped {
        weights: Vec<Vec<f64>>,
    },
    Bare(Vec<Vec<f64>>),
}

fn from_json<'de, T: Deserialize<'de>>(text: &'de str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| Error::Parse {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

fn at(path: &str, e: Error) -> Error {
    match e {
        Error::Parse { .. } | Error::NonPositiveWeight { .. } | Error::NonFinite(_) => e,
        Error::LengthMismatch { what, expected, found } => Error::Parse {
            path: what,
            message: format!("expected length {expected}, found {found}"),
        },
        other => Error::Parse {
            path: path.to_string(),
            message: other.to_string(),
        },
    }
}

/// Parses a game document; weights are `None` when the document has none.
pub fn parse_game(text: &str) -> Result<(Game, Option<CosetWeights>)> {
    let doc: GameDocument = from_json(text)?;
    if doc.players != doc.cardinalities.len() {
        return Err(Error::Parse {
            path: "players".into(),
            message: format!(
                "{} players declared but {} cardinalities given",
                doc.players,
                doc.cardinalities.len()
            ),
        });
    }
    let shape = GameShape::new(doc.cardinalities).map_err(|e| at("cardinalities", e))?;
    let game = Game::new(shape.clone(), doc.payoffs).map_err(|e| at("payoffs", e))?;
    let weights = doc
        .weights
        .map(|rows| CosetWeights::new(shape, rows).map_err(|e| at("weights", e)))
        .transpose()?;
    Ok((game, weights))
}

/// Parses a standalone weights file: either `{"weights": [[…], …]}` or a bare
/// array of rows.
pub fn parse_weights(text: &str, shape: &GameShape) -> Result<CosetWeights> {
    let rows = match from_json::<WeightsDocument>(text)? {
        WeightsDocument::Wrapped { weights } => weights,
        WeightsDocument::Bare(rows) => rows,
    };
    CosetWeights::new(shape.clone(), rows).map_err(|e| at("weights", e))
}

/// Serializes a game (and optional weights) to the document format.
pub fn serialize_game(game: &Game, weights: Option<&CosetWeights>) -> String {
    let doc = GameDocument {
        players: game.shape().players(),
        cardinalities: game.shape().cards().to_vec(),
        payoffs: game.payoff_vectors().to_vec(),
        weights: weights.map(|w| w.rows().to_vec()),
    };
    serde_json::to_string_pretty(&doc).expect("game documents always serialize")
}

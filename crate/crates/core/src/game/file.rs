//! JSON game files.
//!
//! ```json
//! {"players": 2,
//!  "strategies": [["c","d"],["c","d"]],
//!  "outcomes": {"c,c": {"label": "cc", "utils": [2, 2]}, ...}}
//! ```
//!
//! Utilities are JSON numbers or `"p/q"` strings. Every profile key must
//! appear exactly once; output lists outcomes in enumeration order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer};
use serde_json::{json, Value};
use thiserror::Error;

use super::{GameError, GameForm, OutcomeRecord, StrategicGame};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Error)]
pub enum GameFileError {
    #[error("malformed game file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("`players` is {declared} but {listed} strategy sets are listed")]
    PlayerCount { declared: usize, listed: usize },
    #[error("outcome key `{0}` appears more than once")]
    DuplicateKey(String),
    #[error("no outcome for profile `{0}`")]
    MissingKey(String),
    #[error("bad utility {value} in outcome `{key}`")]
    BadUtility { key: String, value: String },
    #[error(transparent)]
    Game(#[from] GameError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGame {
    players: usize,
    strategies: Vec<Vec<String>>,
    outcomes: RawOutcomes,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutcome {
    label: String,
    #[serde(default)]
    winners: Option<Vec<String>>,
    utils: Vec<Value>,
}

/// Outcome map that remembers duplicate keys instead of silently
/// overwriting them.
struct RawOutcomes {
    entries: Vec<(String, RawOutcome)>,
}

impl<'de> Deserialize<'de> for RawOutcomes {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = RawOutcomes;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object keyed by profile")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<RawOutcomes, A::Error> {
                let mut entries = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, RawOutcome>()? {
                    entries.push((k, v));
                }
                Ok(RawOutcomes { entries })
            }
        }
        d.deserialize_map(V)
    }
}

fn utility_from_json(key: &str, v: &Value) -> Result<Rational, GameFileError> {
    let bad = || GameFileError::BadUtility {
        key: key.to_string(),
        value: v.to_string(),
    };
    match v {
        Value::Number(n) => parse_rational(&n.to_string()).map_err(|_| bad()),
        Value::String(s) => parse_rational(s).map_err(|_| bad()),
        _ => Err(bad()),
    }
}

/// Reads a game from JSON text. Duplicate outcome keys are an error.
pub fn game_from_str(text: &str) -> Result<StrategicGame, GameFileError> {
    build(serde_json::from_str(text)?)
}

/// Reads a game from an already parsed value; duplicate keys have been
/// merged by then, so only missing keys are caught.
pub fn game_from_json(value: &Value) -> Result<StrategicGame, GameFileError> {
    build(RawGame::deserialize(value)?)
}

fn build(raw: RawGame) -> Result<StrategicGame, GameFileError> {
    if raw.players != raw.strategies.len() {
        return Err(GameFileError::PlayerCount {
            declared: raw.players,
            listed: raw.strategies.len(),
        });
    }
    let form = GameForm::new(raw.strategies)?;
    let mut by_index: BTreeMap<usize, OutcomeRecord> = BTreeMap::new();
    for (key, o) in raw.outcomes.entries {
        let profile = form.parse_profile_key(&key)?;
        let index = form.profile_index(&profile);
        let utils = o
            .utils
            .iter()
            .map(|u| utility_from_json(&key, u))
            .collect::<Result<Vec<_>, _>>()?;
        let record = OutcomeRecord {
            label: o.label,
            winners: o.winners.map(|w| w.into_iter().collect::<BTreeSet<_>>()),
            utils,
        };
        if by_index.insert(index, record).is_some() {
            return Err(GameFileError::DuplicateKey(key));
        }
    }
    let mut outcomes = Vec::with_capacity(form.profile_count());
    for k in 0..form.profile_count() {
        match by_index.remove(&k) {
            Some(o) => outcomes.push(o),
            None => return Err(GameFileError::MissingKey(form.profile_key(&form.profile_at(k)))),
        }
    }
    Ok(StrategicGame::new(form, outcomes)?)
}

fn utility_to_json(q: &Rational) -> Value {
    if *q.denom() == 1 {
        json!(q.numer())
    } else {
        json!(format_rational(q))
    }
}

/// Serializes a game; outcomes are listed in profile enumeration order.
pub fn game_to_json(game: &StrategicGame) -> Value {
    let form = game.form();
    let mut outcomes = serde_json::Map::new();
    for (k, o) in game.outcomes().iter().enumerate() {
        let mut entry = serde_json::Map::new();
        entry.insert("label".into(), json!(o.label));
        if let Some(w) = &o.winners {
            entry.insert("winners".into(), json!(w));
        }
        entry.insert(
            "utils".into(),
            Value::Array(o.utils.iter().map(utility_to_json).collect()),
        );
        outcomes.insert(form.profile_key(&form.profile_at(k)), Value::Object(entry));
    }
    json!({
        "players": form.players(),
        "strategies": form.strategy_sets(),
        "outcomes": outcomes,
    })
}

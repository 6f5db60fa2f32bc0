//! JSON for intensional models:
//!
//! ```json
//! {"game": {...},
//!  "forms": [{"name": "full", "strategies": [["c","d"],["c","d"]]}],
//!  "worlds": [["full", "c,d"], ...],
//!  "relations": {"1": [[0, 1], ...], "2": [...]}}
//! ```
//!
//! `game` is an ordinary game file and supplies the valuation. World
//! indices in `relations` are positions in `worlds`; players are one-based.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::game::{game_from_json, game_to_json, GameForm};

use super::model::{FormRef, IntensionalModel, Structure};
use super::relation::Relation;
use super::EvalError;

#[derive(Serialize, Deserialize)]
struct RawForm {
    name: String,
    strategies: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    game: Value,
    forms: Vec<RawForm>,
    worlds: Vec<(String, String)>,
    relations: BTreeMap<String, Vec<(usize, usize)>>,
}

pub fn model_from_str(text: &str) -> Result<IntensionalModel, EvalError> {
    let raw: RawModel = serde_json::from_str(text).map_err(|e| EvalError::Model(e.to_string()))?;
    let game = game_from_json(&raw.game).map_err(|e| EvalError::Model(format!("game: {e}")))?;
    let ambient = game.form();
    let mut forms = Vec::with_capacity(raw.forms.len());
    for f in raw.forms {
        if forms.iter().any(|g: &FormRef| g.name == f.name) {
            return Err(EvalError::Model(format!("form `{}` defined twice", f.name)));
        }
        let form = GameForm::new(f.strategies).map_err(|e| EvalError::Model(format!("form `{}`: {e}", f.name)))?;
        forms.push(FormRef::new(f.name, form, ambient)?);
    }
    let mut worlds = Vec::with_capacity(raw.worlds.len());
    for (form_name, key) in &raw.worlds {
        let f = forms
            .iter()
            .position(|g| &g.name == form_name)
            .ok_or_else(|| EvalError::Model(format!("unknown form `{form_name}`")))?;
        let p = ambient
            .parse_profile_key(key)
            .map_err(|e| EvalError::Model(format!("world {form_name}:{key}: {e}")))?;
        worlds.push((f, p));
    }
    let n = ambient.players();
    let mut agents = vec![Relation::empty(worlds.len()); n];
    for (player, pairs) in raw.relations {
        let i = match player.parse::<usize>() {
            Ok(k) if (1..=n).contains(&k) => k - 1,
            _ => return Err(EvalError::Model(format!("bad player `{player}` in relations"))),
        };
        for (s, t) in pairs {
            if s >= worlds.len() || t >= worlds.len() {
                return Err(EvalError::Model(format!("relation pair ({s},{t}) names a missing world")));
            }
            agents[i].insert(s, t);
        }
    }
    IntensionalModel::new(game, forms, worlds, agents)
}

pub fn model_to_json(model: &IntensionalModel) -> Value {
    let game = model.game();
    let raw = RawModel {
        game: game_to_json(game),
        forms: model
            .forms()
            .iter()
            .map(|f| RawForm {
                name: f.name.clone(),
                strategies: f.form.strategy_sets().to_vec(),
            })
            .collect(),
        worlds: model
            .worlds()
            .iter()
            .map(|(f, p)| (model.forms()[*f].name.clone(), game.form().profile_key(p)))
            .collect(),
        relations: model
            .agents()
            .iter()
            .enumerate()
            .map(|(i, r)| ((i + 1).to_string(), r.pairs().collect()))
            .collect(),
    };
    serde_json::to_value(raw).expect("model serializes")
}

use itertools::Itertools;

use crate::game::{GameForm, OutcomeRecord, Profile, StrategicGame};
use crate::lang::{StrategyTerm, VectorExpr};

use super::relation::Relation;
use super::EvalError;

/// What the checker needs from a model: indexed states, their outcomes,
/// and the relations that programs denote.
pub trait Structure: Sync {
    fn state_count(&self) -> usize;

    /// The unrestricted game that supplies valuations.
    fn game(&self) -> &StrategicGame;

    fn record(&self, state: usize) -> &OutcomeRecord;

    fn vector_relation(&self, vector: &VectorExpr) -> Result<Relation, EvalError>;

    fn agent_relation(&self, agent: usize) -> Result<&Relation, EvalError>;

    fn state_key(&self, state: usize) -> String;

    fn find_state(&self, key: &str) -> Result<usize, EvalError>;

    fn players(&self) -> usize {
        self.game().players()
    }
}

/// `⟦t⟧` at player `i`: the strategies from `available` that the term
/// allows when the player currently plays `current`. A name outside
/// `available` denotes nothing.
pub fn interpret_term(term: &StrategyTerm, available: &[String], current: &str) -> Vec<String> {
    let keep = |name: &str| available.iter().filter(|a| a.as_str() == name).cloned().collect();
    match term {
        StrategyTerm::Concrete(a) => keep(a),
        StrategyTerm::Adversary => available.to_vec(),
        StrategyTerm::Current => keep(current),
    }
}

/// A vector resolved against one strategy-set family: per player, a mask
/// over ambient strategy indices, or "stay put".
enum Slot {
    Allowed(Vec<bool>),
    Stay,
}

fn resolve(ambient: &GameForm, allowed: &[Vec<bool>], vector: &VectorExpr) -> Result<Vec<Slot>, EvalError> {
    let n = ambient.players();
    if vector.len() != n {
        return Err(EvalError::Arity {
            expected: n,
            found: vector.len(),
        });
    }
    Ok(vector
        .0
        .iter()
        .enumerate()
        .map(|(i, term)| match term {
            StrategyTerm::Concrete(a) => {
                let mut mask = vec![false; ambient.strategies(i).len()];
                if let Some(k) = ambient.strategy_index(i, a) {
                    mask[k] = allowed[i][k];
                }
                Slot::Allowed(mask)
            }
            StrategyTerm::Adversary => Slot::Allowed(allowed[i].clone()),
            StrategyTerm::Current => Slot::Stay,
        })
        .collect())
}

fn slots_admit(slots: &[Slot], from: &Profile, to: &Profile) -> bool {
    slots.iter().enumerate().all(|(i, slot)| match slot {
        Slot::Allowed(mask) => mask[to[i]],
        Slot::Stay => to[i] == from[i],
    })
}

/// The flat model of a strategic game: states are its profiles in
/// enumeration order.
#[derive(Debug, Clone)]
pub struct MaslModel {
    game: StrategicGame,
    profiles: Vec<Profile>,
}

impl MaslModel {
    pub fn new(game: StrategicGame) -> Self {
        let profiles = game.form().all_profiles();
        MaslModel { game, profiles }
    }

    pub fn profile(&self, state: usize) -> &Profile {
        &self.profiles[state]
    }

    pub fn profiles(&self) -> &[Profile] {
        &self.profiles
    }

    pub fn state_of(&self, profile: &Profile) -> usize {
        self.game.form().profile_index(profile)
    }
}

impl Structure for MaslModel {
    fn state_count(&self) -> usize {
        self.profiles.len()
    }

    fn game(&self) -> &StrategicGame {
        &self.game
    }

    fn record(&self, state: usize) -> &OutcomeRecord {
        self.game.outcome_at(state)
    }

    fn vector_relation(&self, vector: &VectorExpr) -> Result<Relation, EvalError> {
        let form = self.game.form();
        let allowed: Vec<Vec<bool>> = form.strategy_sets().iter().map(|s| vec![true; s.len()]).collect();
        let slots = resolve(form, &allowed, vector)?;
        let mut r = Relation::empty(self.profiles.len());
        for (s, from) in self.profiles.iter().enumerate() {
            let choices: Vec<Vec<usize>> = slots
                .iter()
                .enumerate()
                .map(|(i, slot)| match slot {
                    Slot::Allowed(mask) => (0..mask.len()).filter(|&k| mask[k]).collect(),
                    Slot::Stay => vec![from[i]],
                })
                .collect();
            for to in choices.into_iter().multi_cartesian_product() {
                r.insert(s, form.profile_index(&Profile(to)));
            }
        }
        Ok(r)
    }

    fn agent_relation(&self, agent: usize) -> Result<&Relation, EvalError> {
        Err(EvalError::AgentOnFlatModel(agent))
    }

    fn state_key(&self, state: usize) -> String {
        self.game.form().profile_key(&self.profiles[state])
    }

    fn find_state(&self, key: &str) -> Result<usize, EvalError> {
        let form = self.game.form();
        let p = form
            .parse_profile_key(key)
            .map_err(|_| EvalError::UnknownState(key.to_string()))?;
        Ok(form.profile_index(&p))
    }
}

/// A named strategy restriction of the ambient form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormRef {
    pub name: String,
    pub form: GameForm,
    allowed: Vec<Vec<bool>>,
}

impl FormRef {
    /// `form` must be a restriction of `ambient`.
    pub fn new(name: impl Into<String>, form: GameForm, ambient: &GameForm) -> Result<Self, EvalError> {
        let name = name.into();
        if form.players() != ambient.players() {
            return Err(EvalError::Model(format!("form `{name}` has the wrong player count")));
        }
        let mut allowed = Vec::with_capacity(form.players());
        for i in 0..form.players() {
            let mut mask = vec![false; ambient.strategies(i).len()];
            for s in form.strategies(i) {
                let k = ambient.strategy_index(i, s).ok_or_else(|| {
                    EvalError::Model(format!(
                        "form `{name}`: player {} has no strategy `{s}` in the full game",
                        i + 1
                    ))
                })?;
                mask[k] = true;
            }
            allowed.push(mask);
        }
        Ok(FormRef { name, form, allowed })
    }

    /// Whether a profile over ambient indices lies inside this form.
    pub fn admits(&self, profile: &Profile) -> bool {
        profile.0.iter().enumerate().all(|(i, &k)| self.allowed[i].get(k) == Some(&true))
    }
}

/// Worlds are (form, profile) pairs; profiles use the ambient game's
/// strategy indices. Agents carry explicit accessibility relations.
#[derive(Debug, Clone)]
pub struct IntensionalModel {
    game: StrategicGame,
    forms: Vec<FormRef>,
    worlds: Vec<(usize, Profile)>,
    agents: Vec<Relation>,
}

impl IntensionalModel {
    pub fn new(
        game: StrategicGame,
        forms: Vec<FormRef>,
        worlds: Vec<(usize, Profile)>,
        agents: Vec<Relation>,
    ) -> Result<Self, EvalError> {
        let n = game.players();
        if agents.len() != n {
            return Err(EvalError::Model(format!(
                "expected {n} agent relations, got {}",
                agents.len()
            )));
        }
        for (k, (f, p)) in worlds.iter().enumerate() {
            let form = forms
                .get(*f)
                .ok_or_else(|| EvalError::Model(format!("world {k} names a missing form")))?;
            if p.len() != n || !game.form().contains(p) || !form.admits(p) {
                return Err(EvalError::Model(format!(
                    "world {k} is not a profile of form `{}`",
                    form.name
                )));
            }
            if worlds[..k].contains(&(*f, p.clone())) {
                return Err(EvalError::Model(format!("world {k} is listed twice")));
            }
        }
        if agents.iter().any(|r| r.size() != worlds.len()) {
            return Err(EvalError::Model("agent relation size differs from world count".into()));
        }
        Ok(IntensionalModel {
            game,
            forms,
            worlds,
            agents,
        })
    }

    pub fn forms(&self) -> &[FormRef] {
        &self.forms
    }

    pub fn worlds(&self) -> &[(usize, Profile)] {
        &self.worlds
    }

    pub fn agents(&self) -> &[Relation] {
        &self.agents
    }

    pub fn world_index(&self, form: usize, profile: &Profile) -> Option<usize> {
        self.worlds.iter().position(|(f, p)| *f == form && p == profile)
    }
}

impl Structure for IntensionalModel {
    fn state_count(&self) -> usize {
        self.worlds.len()
    }

    fn game(&self) -> &StrategicGame {
        &self.game
    }

    fn record(&self, state: usize) -> &OutcomeRecord {
        self.game.outcome(&self.worlds[state].1)
    }

    fn vector_relation(&self, vector: &VectorExpr) -> Result<Relation, EvalError> {
        let ambient = self.game.form();
        let slots: Vec<Vec<Slot>> = self
            .forms
            .iter()
            .map(|f| resolve(ambient, &f.allowed, vector))
            .collect::<Result<_, _>>()?;
        Ok(Relation::from_fn(self.worlds.len(), |s, t| {
            let (fs, ps) = &self.worlds[s];
            let (ft, pt) = &self.worlds[t];
            fs == ft && slots_admit(&slots[*fs], ps, pt)
        }))
    }

    fn agent_relation(&self, agent: usize) -> Result<&Relation, EvalError> {
        self.agents.get(agent).ok_or(EvalError::PlayerOutOfRange(agent))
    }

    fn state_key(&self, state: usize) -> String {
        let (f, p) = &self.worlds[state];
        format!("{}:{}", self.forms[*f].name, self.game.form().profile_key(p))
    }

    fn find_state(&self, key: &str) -> Result<usize, EvalError> {
        let unknown = || EvalError::UnknownState(key.to_string());
        let (form, profile) = key.split_once(':').ok_or_else(unknown)?;
        let f = self.forms.iter().position(|f| f.name == form).ok_or_else(unknown)?;
        let p = self.game.form().parse_profile_key(profile).map_err(|_| unknown())?;
        self.world_index(f, &p).ok_or_else(unknown)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn term_interpretation() {
        let abc = names(&["a", "b", "c"]);
        assert_eq!(interpret_term(&StrategyTerm::Current, &abc, "b"), names(&["b"]));
        assert_eq!(interpret_term(&StrategyTerm::Adversary, &abc, "a"), abc);
        let only_c = names(&["c"]);
        assert!(interpret_term(&StrategyTerm::Concrete("d".into()), &only_c, "c").is_empty());
    }
}

//! Finite strategic game forms, profiles, outcomes and utilities.
//!
//! Players are indexed from zero throughout the API. Text surfaces (the
//! formula language, JSON files, CLI output) use one-based player numbers.

mod file;
mod oracle;

pub use file::{game_from_json, game_from_str, game_to_json, GameFileError};
pub use oracle::{is_best_response, nash_set, nash_set_by_deviation_scan, weakly_dominant};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("a game needs at least two players, got {0}")]
    TooFewPlayers(usize),
    #[error("player {0} has an empty strategy set")]
    EmptyStrategySet(usize),
    #[error("player {player} lists strategy `{name}` twice")]
    DuplicateStrategy { player: usize, name: String },
    #[error("invalid strategy name `{0}` (use letters, digits and `_`)")]
    InvalidStrategyName(String),
    #[error("profile space is too large to enumerate")]
    TooManyProfiles,
    #[error("player {0} is out of range")]
    PlayerOutOfRange(usize),
    #[error("player {player} has no strategy `{name}`")]
    UnknownStrategy { player: usize, name: String },
    #[error("profile {0:?} does not belong to the game form")]
    InvalidProfile(Vec<usize>),
    #[error("malformed profile key `{0}`")]
    BadProfileKey(String),
    #[error("expected {expected} outcomes, got {got}")]
    OutcomeCount { expected: usize, got: usize },
    #[error("outcome for `{key}` has {got} utilities, expected {expected}")]
    UtilityArity { key: String, expected: usize, got: usize },
    #[error("outcome for `{0}` has an empty winner set")]
    EmptyWinners(String),
    #[error("combine: {0}")]
    Combine(String),
}

/// Accepted strategy (and alternative) names: non-empty runs of ASCII
/// letters, digits and `_`.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// A strategy profile: one strategy index per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Profile(pub Vec<usize>);

impl Profile {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The profile with player `i`'s choice replaced by `choice`.
    pub fn with(&self, i: usize, choice: usize) -> Profile {
        let mut next = self.0.clone();
        next[i] = choice;
        Profile(next)
    }
}

impl std::ops::Index<usize> for Profile {
    type Output = usize;

    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

/// A finite game form `(n, {S_i})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GameForm {
    strategies: Vec<Vec<String>>,
    #[serde(skip)]
    radix: Vec<usize>,
}

impl GameForm {
    pub fn new(strategies: Vec<Vec<String>>) -> Result<Self, GameError> {
        if strategies.len() < 2 {
            return Err(GameError::TooFewPlayers(strategies.len()));
        }
        let mut total: usize = 1;
        for (player, set) in strategies.iter().enumerate() {
            if set.is_empty() {
                return Err(GameError::EmptyStrategySet(player));
            }
            let mut seen = BTreeSet::new();
            for name in set {
                if !is_valid_name(name) {
                    return Err(GameError::InvalidStrategyName(name.clone()));
                }
                if !seen.insert(name.as_str()) {
                    return Err(GameError::DuplicateStrategy {
                        player,
                        name: name.clone(),
                    });
                }
            }
            total = total
                .checked_mul(set.len())
                .ok_or(GameError::TooManyProfiles)?;
        }
        // Mixed-radix place values, player 0 slowest.
        let mut radix = vec![1; strategies.len()];
        for i in (0..strategies.len() - 1).rev() {
            radix[i] = radix[i + 1] * strategies[i + 1].len();
        }
        Ok(GameForm { strategies, radix })
    }

    /// Same strategy set for every one of `players` players.
    pub fn uniform<S: AsRef<str>>(players: usize, names: &[S]) -> Result<Self, GameError> {
        let set: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        GameForm::new(vec![set; players])
    }

    pub fn players(&self) -> usize {
        self.strategies.len()
    }

    pub fn strategies(&self, player: usize) -> &[String] {
        &self.strategies[player]
    }

    pub fn strategy_sets(&self) -> &[Vec<String>] {
        &self.strategies
    }

    pub fn strategy_index(&self, player: usize, name: &str) -> Option<usize> {
        self.strategies
            .get(player)?
            .iter()
            .position(|s| s == name)
    }

    pub fn profile_count(&self) -> usize {
        self.radix[0] * self.strategies[0].len()
    }

    pub fn contains(&self, profile: &Profile) -> bool {
        profile.len() == self.players()
            && profile
                .0
                .iter()
                .zip(&self.strategies)
                .all(|(&c, set)| c < set.len())
    }

    /// Position of `profile` in [`GameForm::all_profiles`] order.
    pub fn profile_index(&self, profile: &Profile) -> usize {
        debug_assert!(self.contains(profile));
        profile.0.iter().zip(&self.radix).map(|(c, r)| c * r).sum()
    }

    pub fn profile_at(&self, mut index: usize) -> Profile {
        let mut choices = Vec::with_capacity(self.players());
        for r in &self.radix {
            choices.push(index / r);
            index %= r;
        }
        Profile(choices)
    }

    /// Every profile once, lexicographic in the indices with player 1 slowest.
    pub fn all_profiles(&self) -> Vec<Profile> {
        (0..self.profile_count()).map(|k| self.profile_at(k)).collect()
    }

    /// Comma-joined strategy names, e.g. `"c,d"`.
    pub fn profile_key(&self, profile: &Profile) -> String {
        profile
            .0
            .iter()
            .enumerate()
            .map(|(i, &c)| self.strategies[i][c].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_profile_key(&self, key: &str) -> Result<Profile, GameError> {
        let parts: Vec<&str> = key.split(',').map(str::trim).collect();
        if parts.len() != self.players() {
            return Err(GameError::BadProfileKey(key.to_string()));
        }
        parts
            .iter()
            .enumerate()
            .map(|(i, name)| {
                self.strategy_index(i, name)
                    .ok_or_else(|| GameError::UnknownStrategy {
                        player: i,
                        name: name.to_string(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Profile)
    }

    pub fn check_player(&self, player: usize) -> Result<(), GameError> {
        if player < self.players() {
            Ok(())
        } else {
            Err(GameError::PlayerOutOfRange(player))
        }
    }
}

/// Every profile of `form`, in the fixed enumeration order.
pub fn all_profiles(form: &GameForm) -> Vec<Profile> {
    form.all_profiles()
}

/// A set of players.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct Coalition(BTreeSet<usize>);

impl Coalition {
    pub fn new(members: impl IntoIterator<Item = usize>, players: usize) -> Result<Self, GameError> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| m >= players) {
            return Err(GameError::PlayerOutOfRange(bad));
        }
        Ok(Coalition(members))
    }

    pub fn empty() -> Self {
        Coalition(BTreeSet::new())
    }

    pub fn grand(players: usize) -> Self {
        Coalition((0..players).collect())
    }

    pub fn contains(&self, player: usize) -> bool {
        self.0.contains(&player)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Coalition) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn complement(&self, players: usize) -> Coalition {
        Coalition((0..players).filter(|p| !self.0.contains(p)).collect())
    }

    /// All assignments of strategies to the members, lexicographic with the
    /// lowest-numbered member slowest.
    pub fn assignments(&self, form: &GameForm) -> Vec<BTreeMap<usize, usize>> {
        let members: Vec<usize> = self.members().collect();
        let mut out = vec![BTreeMap::new()];
        for &m in &members {
            let k = form.strategies(m).len();
            out = out
                .into_iter()
                .flat_map(|partial| {
                    (0..k).map(move |c| {
                        let mut next = partial.clone();
                        next.insert(m, c);
                        next
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.0.iter().map(|m| (m + 1).to_string()).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// Combines a coalition assignment with one for the complement into a full
/// profile.
pub fn combine(
    form: &GameForm,
    coalition: &Coalition,
    part_coalition: &BTreeMap<usize, usize>,
    part_rest: &BTreeMap<usize, usize>,
) -> Result<Profile, GameError> {
    let n = form.players();
    let mut choices = Vec::with_capacity(n);
    for i in 0..n {
        let (mine, other) = if coalition.contains(i) {
            (part_coalition, part_rest)
        } else {
            (part_rest, part_coalition)
        };
        if other.contains_key(&i) {
            return Err(GameError::Combine(format!(
                "player {} assigned on the wrong side",
                i + 1
            )));
        }
        let c = *mine
            .get(&i)
            .ok_or_else(|| GameError::Combine(format!("player {} unassigned", i + 1)))?;
        if c >= form.strategies(i).len() {
            return Err(GameError::Combine(format!(
                "strategy index {c} out of range for player {}",
                i + 1
            )));
        }
        choices.push(c);
    }
    if let Some(&extra) = part_coalition.keys().chain(part_rest.keys()).find(|&&k| k >= n) {
        return Err(GameError::Combine(format!("player {} does not exist", extra + 1)));
    }
    Ok(Profile(choices))
}

/// What a profile leads to: a label, optional winners and one utility per
/// player.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutcomeRecord {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub winners: Option<BTreeSet<String>>,
    #[serde(serialize_with = "crate::rational::serde_vec::serialize")]
    pub utils: Vec<Rational>,
}

/// A game form together with an outcome for every profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategicGame {
    form: GameForm,
    outcomes: Vec<OutcomeRecord>,
    utility_range: BTreeSet<Rational>,
}

impl StrategicGame {
    /// `outcomes` are given in [`GameForm::all_profiles`] order.
    pub fn new(form: GameForm, outcomes: Vec<OutcomeRecord>) -> Result<Self, GameError> {
        if outcomes.len() != form.profile_count() {
            return Err(GameError::OutcomeCount {
                expected: form.profile_count(),
                got: outcomes.len(),
            });
        }
        let n = form.players();
        let mut utility_range = BTreeSet::new();
        for (k, o) in outcomes.iter().enumerate() {
            let key = || form.profile_key(&form.profile_at(k));
            if o.utils.len() != n {
                return Err(GameError::UtilityArity {
                    key: key(),
                    expected: n,
                    got: o.utils.len(),
                });
            }
            if o.winners.as_ref().is_some_and(BTreeSet::is_empty) {
                return Err(GameError::EmptyWinners(key()));
            }
            utility_range.extend(o.utils.iter().copied());
        }
        Ok(StrategicGame {
            form,
            outcomes,
            utility_range,
        })
    }

    /// Builds a game from a payoff function; labels are the profile keys.
    pub fn from_payoffs(
        form: GameForm,
        mut payoff: impl FnMut(&Profile) -> Vec<Rational>,
    ) -> Result<Self, GameError> {
        let outcomes = form
            .all_profiles()
            .iter()
            .map(|p| OutcomeRecord {
                label: form.profile_key(p).replace(',', ""),
                winners: None,
                utils: payoff(p),
            })
            .collect();
        StrategicGame::new(form, outcomes)
    }

    pub fn form(&self) -> &GameForm {
        &self.form
    }

    pub fn players(&self) -> usize {
        self.form.players()
    }

    pub fn outcome(&self, profile: &Profile) -> &OutcomeRecord {
        &self.outcomes[self.form.profile_index(profile)]
    }

    pub fn outcome_at(&self, index: usize) -> &OutcomeRecord {
        &self.outcomes[index]
    }

    pub fn outcomes(&self) -> &[OutcomeRecord] {
        &self.outcomes
    }

    pub fn utility(&self, profile: &Profile, player: usize) -> Rational {
        self.outcome(profile).utils[player]
    }

    /// The finite set `U` of utilities occurring anywhere in the game.
    pub fn utility_range(&self) -> &BTreeSet<Rational> {
        &self.utility_range
    }

    /// Every alternative named in some winner set, sorted.
    pub fn alternatives(&self) -> BTreeSet<String> {
        self.outcomes
            .iter()
            .filter_map(|o| o.winners.as_ref())
            .flat_map(|w| w.iter().cloned())
            .collect()
    }
}

//! Brute-force game-theoretic oracles.
//!
//! These scan profiles directly and share no code with the model checker, so
//! they can serve as ground truth for the logical encodings.

use std::collections::BTreeSet;

use super::{GameError, Profile, StrategicGame};

/// `true` iff no unilateral switch by `player` strictly raises their utility.
pub fn is_best_response(
    game: &StrategicGame,
    profile: &Profile,
    player: usize,
) -> Result<bool, GameError> {
    let form = game.form();
    form.check_player(player)?;
    if !form.contains(profile) {
        return Err(GameError::InvalidProfile(profile.0.clone()));
    }
    let here = game.utility(profile, player);
    Ok((0..form.strategies(player).len())
        .all(|alt| here >= game.utility(&profile.with(player, alt), player)))
}

/// Profiles in which every player's choice is a best response.
pub fn nash_set(game: &StrategicGame) -> BTreeSet<Profile> {
    let n = game.players();
    game.form()
        .all_profiles()
        .into_iter()
        .filter(|p| (0..n).all(|i| is_best_response(game, p, i).unwrap_or(false)))
        .collect()
}

/// Same set as [`nash_set`], computed by marking every profile from which
/// some profitable deviation starts.
pub fn nash_set_by_deviation_scan(game: &StrategicGame) -> BTreeSet<Profile> {
    let form = game.form();
    let all = form.all_profiles();
    let mut unstable = vec![false; all.len()];
    for (k, from) in all.iter().enumerate() {
        for (k2, to) in all.iter().enumerate() {
            if k == k2 {
                continue;
            }
            let differing: Vec<usize> = (0..form.players()).filter(|&i| from[i] != to[i]).collect();
            if let [i] = differing[..] {
                if game.outcome_at(k2).utils[i] > game.outcome_at(k).utils[i] {
                    unstable[k] = true;
                    break;
                }
            }
        }
    }
    all.into_iter()
        .zip(unstable)
        .filter(|(_, bad)| !bad)
        .map(|(p, _)| p)
        .collect()
}

/// `true` iff strategy `a` of `player` does at least as well as every
/// alternative against every combination of opponent choices. There is no
/// strict-improvement requirement.
pub fn weakly_dominant(game: &StrategicGame, player: usize, a: usize) -> Result<bool, GameError> {
    let form = game.form();
    form.check_player(player)?;
    let k = form.strategies(player).len();
    if a >= k {
        return Err(GameError::UnknownStrategy {
            player,
            name: format!("#{a}"),
        });
    }
    for profile in form.all_profiles().iter().filter(|p| p[player] == a) {
        let mine = game.utility(profile, player);
        for b in (0..k).filter(|&b| b != a) {
            if game.utility(&profile.with(player, b), player) > mine {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

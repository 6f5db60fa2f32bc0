//! Randomized cross-checks between the model checker and the brute-force
//! oracles. Each sweep runs its games through [`Exec`], so the same sweep
//! can be timed sequentially and in parallel.

use itertools::Itertools;

use crate::calculus::{default_bodies, instantiate, validity_report, AxiomSchema, Instance};
use crate::coalition::{cl_check, translate};
use crate::eval::{epistemic_lift, Checker, MaslModel, Structure};
use crate::game::{nash_set, weakly_dominant, GameForm, StrategicGame};
use crate::lang::{nash_here, render_cl, weak_dominance, Signature};
use crate::par::Exec;
use crate::sample::{game_atoms, random_cl_formula, random_game, random_payoffs, rng};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepResult {
    /// Number of individual comparisons made.
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl SweepResult {
    fn merge(parts: Vec<SweepResult>) -> SweepResult {
        SweepResult {
            checked: parts.iter().map(|p| p.checked).sum(),
            mismatches: parts.into_iter().flat_map(|p| p.mismatches).collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// `count` games from one seed, reproducibly.
pub fn random_games(seed: u64, count: usize) -> Vec<StrategicGame> {
    let mut r = rng(seed);
    (0..count).map(|_| random_game(&mut r)).collect()
}

/// The Nash formula's extension against the equilibrium oracle.
pub fn nash_sweep(games: &[StrategicGame], exec: Exec) -> SweepResult {
    SweepResult::merge(exec.map(games, |game| {
        let model = MaslModel::new(game.clone());
        let sig = Signature::of_game(game);
        let by_logic: Vec<usize> = match Checker::new(&model).extension(&nash_here(&sig)) {
            Ok(ext) => ext.iter().collect(),
            Err(e) => {
                return SweepResult {
                    checked: 1,
                    mismatches: vec![format!("nashHere failed to evaluate: {e}")],
                }
            }
        };
        let by_oracle: Vec<usize> = nash_set(game).iter().map(|p| model.state_of(p)).collect();
        SweepResult {
            checked: 1,
            mismatches: if by_logic == by_oracle {
                vec![]
            } else {
                vec![format!("nash: logic {by_logic:?}, oracle {by_oracle:?}")]
            },
        }
    }))
}

/// The weak-dominance formula against the oracle for every player and
/// strategy. The formula must also be true everywhere or nowhere.
pub fn dominance_sweep(games: &[StrategicGame], exec: Exec) -> SweepResult {
    SweepResult::merge(exec.map(games, |game| {
        let model = MaslModel::new(game.clone());
        let sig = Signature::of_game(game);
        let checker = Checker::new(&model);
        let mut out = SweepResult {
            checked: 0,
            mismatches: vec![],
        };
        for i in 0..game.players() {
            for (k, a) in game.form().strategies(i).iter().enumerate() {
                out.checked += 1;
                let f = weak_dominance(&sig, i, a).expect("strategy exists");
                let ext = match checker.extension(&f) {
                    Ok(e) => e,
                    Err(e) => {
                        out.mismatches.push(format!("weakDominance({},{a}): {e}", i + 1));
                        continue;
                    }
                };
                if !(ext.is_empty() || ext.is_full()) {
                    out.mismatches.push(format!("weakDominance({},{a}) depends on the state", i + 1));
                }
                let oracle = weakly_dominant(game, i, k).expect("strategy exists");
                if ext.is_full() != oracle {
                    out.mismatches
                        .push(format!("weakDominance({},{a}): logic {}, oracle {oracle}", i + 1, ext.is_full()));
                }
            }
        }
        out
    }))
}

/// Random coalition formulas: direct semantics against the translation,
/// state by state. Game `k` draws its formulas from seed `seed + k`.
pub fn theorem2_sweep(games: &[StrategicGame], per_game: usize, seed: u64, exec: Exec) -> SweepResult {
    let indexed: Vec<(usize, &StrategicGame)> = games.iter().enumerate().collect();
    SweepResult::merge(exec.map(&indexed, |&(k, game)| {
        let mut r = rng(seed.wrapping_add(k as u64));
        let atoms = game_atoms(game);
        let model = MaslModel::new(game.clone());
        let checker = Checker::new(&model);
        let mut out = SweepResult {
            checked: 0,
            mismatches: vec![],
        };
        for _ in 0..per_game {
            let f = random_cl_formula(&mut r, game.players(), &atoms, 3);
            out.checked += 1;
            let ext = checker.extension(&translate(&f, game.form()));
            for s in 0..model.state_count() {
                let direct = cl_check(&model, model.profile(s), &f);
                let via = ext.as_ref().map(|e| e.contains(s));
                if direct.as_ref().ok() != via.as_ref().ok() || direct.is_err() {
                    out.mismatches.push(format!(
                        "{} at {}: direct {direct:?}, translated {via:?}",
                        render_cl(&f),
                        model.state_key(s)
                    ));
                    break;
                }
            }
        }
        out
    }))
}

fn vector_instances(game: &StrategicGame) -> Vec<Instance> {
    let sig = Signature::of_game(game);
    let bodies = default_bodies(game);
    AxiomSchema::VECTOR
        .iter()
        .flat_map(|&s| instantiate(s, &sig, &bodies))
        .collect()
}

/// Every instance of the vector schemas on every game.
pub fn vector_axiom_sweep(games: &[StrategicGame], exec: Exec) -> SweepResult {
    SweepResult::merge(exec.map(games, |game| {
        let instances = vector_instances(game);
        let report = validity_report(&[MaslModel::new(game.clone())], &instances, Exec::Sequential);
        SweepResult {
            checked: report.instances,
            mismatches: report
                .failures()
                .map(|f| format!("{} {}: fails at {:?}", f.schema, f.formula, f.counterexample))
                .collect(),
        }
    }))
}

/// Forms with 2 or 3 players and 2 or 3 strategies each, in a fixed order.
pub fn epistemic_forms() -> Vec<GameForm> {
    let names = ["a", "b", "c"];
    let mut forms = Vec::new();
    for n in 2..=3usize {
        for sizes in (0..n).map(|_| 2..=3usize).multi_cartesian_product() {
            let sets = sizes
                .iter()
                .map(|&k| names[..k].iter().map(|s| s.to_string()).collect())
                .collect();
            forms.push(GameForm::new(sets).expect("valid form"));
        }
    }
    forms
}

/// Every instance of the epistemic schemas on the lift of a game over each
/// of [`epistemic_forms`], with seeded random payoffs.
pub fn epistemic_axiom_sweep(seed: u64, exec: Exec) -> SweepResult {
    let mut r = rng(seed);
    let games: Vec<StrategicGame> = epistemic_forms().into_iter().map(|f| random_payoffs(f, &mut r)).collect();
    SweepResult::merge(exec.map(&games, |game| {
        let sig = Signature::of_game(game);
        let bodies = default_bodies(game);
        let instances: Vec<Instance> = AxiomSchema::EPISTEMIC
            .iter()
            .flat_map(|&s| instantiate(s, &sig, &bodies))
            .collect();
        let report = validity_report(&[epistemic_lift(game)], &instances, Exec::Sequential);
        SweepResult {
            checked: report.instances,
            mismatches: report
                .failures()
                .map(|f| format!("{} {}: fails at {:?}", f.schema, f.formula, f.counterexample))
                .collect(),
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_agree() {
        let games = random_games(3, 8);
        assert!(nash_sweep(&games, Exec::Sequential).passed());
        assert!(dominance_sweep(&games, Exec::Sequential).passed());
        let t2 = theorem2_sweep(&games, 4, 9, Exec::Sequential);
        assert!(t2.passed(), "{:?}", t2.mismatches);
        assert_eq!(t2.checked, 32);
    }

    #[test]
    fn epistemic_form_family() {
        let forms = epistemic_forms();
        assert_eq!(forms.len(), 4 + 8);
        assert!(forms.iter().all(|f| f.strategy_sets().iter().all(|s| s.len() >= 2)));
    }
}

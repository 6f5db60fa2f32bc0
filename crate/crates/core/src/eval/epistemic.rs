//! Intensional models built from games: the epistemic lift, strategy
//! restrictions, and models where some players confuse a restricted game
//! with the full one.

use std::collections::BTreeSet;

use crate::game::{GameForm, StrategicGame};

use super::model::{FormRef, IntensionalModel};
use super::relation::Relation;
use super::EvalError;

pub const FULL_FORM: &str = "full";
pub const RESTRICTED_FORM: &str = "restricted";

/// Shrinks each strategy set to `subsets[i]`, keeping the original order.
pub fn restrict<S: AsRef<str>>(form: &GameForm, subsets: &[Vec<S>]) -> Result<GameForm, EvalError> {
    if subsets.len() != form.players() {
        return Err(EvalError::Arity {
            expected: form.players(),
            found: subsets.len(),
        });
    }
    let mut sets = Vec::with_capacity(subsets.len());
    for (i, subset) in subsets.iter().enumerate() {
        if subset.is_empty() {
            return Err(EvalError::Model(format!("empty strategy set for player {}", i + 1)));
        }
        let wanted: BTreeSet<&str> = subset.iter().map(AsRef::as_ref).collect();
        if let Some(bad) = wanted.iter().find(|s| form.strategy_index(i, s).is_none()) {
            return Err(EvalError::Model(format!("player {} has no strategy `{bad}`", i + 1)));
        }
        sets.push(
            form.strategies(i)
                .iter()
                .filter(|s| wanted.contains(s.as_str()))
                .cloned()
                .collect(),
        );
    }
    GameForm::new(sets).map_err(|e| EvalError::Model(e.to_string()))
}

/// One world per profile; each player only knows their own strategy.
pub fn epistemic_lift(game: &StrategicGame) -> IntensionalModel {
    let form = game.form();
    let full = FormRef::new(FULL_FORM, form.clone(), form).expect("a form restricts itself");
    let worlds: Vec<_> = form.all_profiles().into_iter().map(|p| (0, p)).collect();
    let agents = (0..form.players())
        .map(|i| Relation::from_fn(worlds.len(), |s, t| worlds[s].1[i] == worlds[t].1[i]))
        .collect();
    IntensionalModel::new(game.clone(), vec![full], worlds, agents).expect("lift is well formed")
}

/// Worlds of `restricted` followed by the worlds of the full game. Players in
/// `confused` cannot tell the two forms apart: they relate any two worlds
/// that agree on their own strategy. Everyone else also sees which form
/// they are in.
pub fn confusion_model(
    game: &StrategicGame,
    restricted: &GameForm,
    confused: &BTreeSet<usize>,
) -> Result<IntensionalModel, EvalError> {
    let ambient = game.form();
    if let Some(&i) = confused.iter().find(|&&i| i >= ambient.players()) {
        return Err(EvalError::PlayerOutOfRange(i));
    }
    let sub = FormRef::new(RESTRICTED_FORM, restricted.clone(), ambient)?;
    let full = FormRef::new(FULL_FORM, ambient.clone(), ambient)?;
    let mut worlds: Vec<_> = ambient
        .all_profiles()
        .into_iter()
        .filter(|p| sub.admits(p))
        .map(|p| (0, p))
        .collect();
    worlds.extend(ambient.all_profiles().into_iter().map(|p| (1, p)));
    let agents = (0..ambient.players())
        .map(|i| {
            Relation::from_fn(worlds.len(), |s, t| {
                let ((fs, ps), (ft, pt)) = (&worlds[s], &worlds[t]);
                ps[i] == pt[i] && (fs == ft || confused.contains(&i))
            })
        })
        .collect();
    IntensionalModel::new(game.clone(), vec![sub, full], worlds, agents)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restriction_keeps_order_and_composes() {
        let form = GameForm::uniform(2, &["a", "b", "c"]).unwrap();
        let once = restrict(&form, &[vec!["c", "a"], vec!["b", "c"]]).unwrap();
        assert_eq!(once.strategies(0), ["a", "c"]);
        let twice = restrict(&once, &[vec!["c"], vec!["b", "c"]]).unwrap();
        let direct = restrict(&form, &[vec!["c"], vec!["b", "c"]]).unwrap();
        assert_eq!(twice, direct);
        assert_eq!(restrict(&form, &[vec!["a", "b", "c"], vec!["a", "b", "c"]]).unwrap(), form);
        assert!(restrict(&form, &[vec![], vec!["a"]]).is_err());
        assert!(restrict(&form, &[vec!["z"], vec!["a"]]).is_err());
    }
}

//! Abbreviations and the game-theoretic and voting properties, expanded into
//! plain formulas over a signature.
//!
//! Every builder enumerates finite sets fixed by the signature (players,
//! strategy sets, utility values, alternatives), so the result is an
//! ordinary formula that the checker evaluates like any other.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{Formula, Program, Signature, StrategyTerm, VectorExpr};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LangError {
    #[error("no player {0} in this game")]
    PlayerOutOfRange(usize),
    #[error("player {player} has no strategy `{name}`")]
    UnknownStrategy { player: usize, name: String },
    #[error("`{0}` needs the game's alternatives, but the game has no winners")]
    NoAlternatives(&'static str),
    #[error("`{0}` is defined for two-player games only")]
    NotTwoPlayer(&'static str),
    #[error("tit-for-tat needs a strategy both players can play")]
    NoSharedStrategy,
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
}

fn check_player(sig: &Signature, player: usize) -> Result<(), LangError> {
    if player < sig.players() {
        Ok(())
    } else {
        Err(LangError::PlayerOutOfRange(player))
    }
}

/// `(i_a, !!)`: player `i` switches to `a`, everyone else stays put.
pub fn vec_switch(sig: &Signature, player: usize, a: &str) -> VectorExpr {
    VectorExpr::single(sig.players(), player, a, StrategyTerm::Current)
}

/// `(i_a, ??)`: player `i` plays `a` against anything.
pub fn vec_any(sig: &Signature, player: usize, a: &str) -> VectorExpr {
    VectorExpr::single(sig.players(), player, a, StrategyTerm::Adversary)
}

/// Conjunction over `S_i` of `[(i_a, !!)] body`.
pub fn box_switch(sig: &Signature, player: usize, body: &Formula) -> Formula {
    Formula::conj(
        sig.form()
            .strategies(player)
            .iter()
            .map(|a| Formula::boxed(Program::Vector(vec_switch(sig, player, a)), body.clone())),
    )
}

/// Dual of [`box_switch`]: some switch of player `i` reaches `body`.
pub fn diamond_switch(sig: &Signature, player: usize, body: &Formula) -> Formula {
    Formula::disj(
        sig.form()
            .strategies(player)
            .iter()
            .map(|a| Formula::diamond(Program::Vector(vec_switch(sig, player, a)), body.clone())),
    )
}

/// Conjunction over `S_i` of `[(i_a, ??)] body`.
pub fn box_any(sig: &Signature, player: usize, body: &Formula) -> Formula {
    Formula::conj(
        sig.form()
            .strategies(player)
            .iter()
            .map(|a| Formula::boxed(Program::Vector(vec_any(sig, player, a)), body.clone())),
    )
}

/// `<(??,...,??)> body`: body holds in some state.
pub fn diamond_any_state(sig: &Signature, body: Formula) -> Formula {
    Formula::diamond(Program::Vector(VectorExpr::all_adversary(sig.players())), body)
}

fn box_all_states(sig: &Signature, body: Formula) -> Formula {
    Formula::boxed(Program::Vector(VectorExpr::all_adversary(sig.players())), body)
}

/// `u_i >= v`: disjunction of `u_i = w` over `w` in `U` with `w >= v`.
pub fn payoff_geq(sig: &Signature, player: usize, v: Rational) -> Formula {
    Formula::disj(
        sig.utilities()
            .iter()
            .filter(|&&w| w >= v)
            .map(|&w| Formula::util_eq(player, w)),
    )
}

/// `u_i > v`.
pub fn payoff_gt(sig: &Signature, player: usize, v: Rational) -> Formula {
    Formula::disj(
        sig.utilities()
            .iter()
            .filter(|&&w| w > v)
            .map(|&w| Formula::util_eq(player, w)),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Abbrev {
    BoxSwitch { player: usize, body: Formula },
    BoxAny { player: usize, body: Formula },
    DiamondAnyState(Formula),
    PayoffGeq { player: usize, value: Rational },
    PayoffGt { player: usize, value: Rational },
    VecSwitch { player: usize, strategy: String },
    VecAny { player: usize, strategy: String },
}

pub fn expand(abbrev: &Abbrev, sig: &Signature) -> Result<Formula, LangError> {
    let strategy_ok = |player: usize, name: &str| {
        check_player(sig, player)?;
        if sig.form().strategy_index(player, name).is_none() {
            return Err(LangError::UnknownStrategy {
                player,
                name: name.to_string(),
            });
        }
        Ok(())
    };
    Ok(match abbrev {
        Abbrev::BoxSwitch { player, body } => {
            check_player(sig, *player)?;
            box_switch(sig, *player, body)
        }
        Abbrev::BoxAny { player, body } => {
            check_player(sig, *player)?;
            box_any(sig, *player, body)
        }
        Abbrev::DiamondAnyState(body) => diamond_any_state(sig, body.clone()),
        Abbrev::PayoffGeq { player, value } => {
            check_player(sig, *player)?;
            payoff_geq(sig, *player, *value)
        }
        Abbrev::PayoffGt { player, value } => {
            check_player(sig, *player)?;
            payoff_gt(sig, *player, *value)
        }
        Abbrev::VecSwitch { player, strategy } => {
            strategy_ok(*player, strategy)?;
            Formula::Vector(vec_switch(sig, *player, strategy))
        }
        Abbrev::VecAny { player, strategy } => {
            strategy_ok(*player, strategy)?;
            Formula::Vector(vec_any(sig, *player, strategy))
        }
    })
}

/// The current profile is a Nash equilibrium.
pub fn nash_here(sig: &Signature) -> Formula {
    Formula::conj((0..sig.players()).map(|i| {
        Formula::disj(sig.utilities().iter().map(|&v| {
            payoff_geq(sig, i, v).and(box_switch(sig, i, &payoff_gt(sig, i, v).negate()))
        }))
    }))
}

/// Some profile is a Nash equilibrium.
pub fn game_is_nash(sig: &Signature) -> Formula {
    diamond_any_state(sig, nash_here(sig))
}

/// Strategy `a` of `player` is weakly dominant.
pub fn weak_dominance(sig: &Signature, player: usize, a: &str) -> Result<Formula, LangError> {
    check_player(sig, player)?;
    if sig.form().strategy_index(player, a).is_none() {
        return Err(LangError::UnknownStrategy {
            player,
            name: a.to_string(),
        });
    }
    let others: Vec<&String> = sig
        .form()
        .strategies(player)
        .iter()
        .filter(|b| b.as_str() != a)
        .collect();
    Ok(Formula::conj(sig.utilities().iter().flat_map(|&v| {
        let geq = payoff_geq(sig, player, v);
        others.iter().map(move |b| {
            let back = Formula::diamond(Program::Vector(vec_switch(sig, player, a)), geq.clone());
            Formula::boxed(
                Program::Vector(vec_any(sig, player, b)),
                geq.clone().implies(back),
            )
        })
    })))
}

/// The full vote vectors in which `x` gets strictly more votes than every
/// other alternative, in profile enumeration order.
pub fn plurality_vectors(sig: &Signature, x: &str) -> Vec<VectorExpr> {
    let form = sig.form();
    form.all_profiles()
        .into_iter()
        .filter_map(|p| {
            let names: Vec<&str> = (0..form.players())
                .map(|i| form.strategies(i)[p[i]].as_str())
                .collect();
            let count = |y: &str| names.iter().filter(|&&n| n == y).count();
            let cx = count(x);
            let unique_max = sig
                .alternatives()
                .iter()
                .filter(|y| y.as_str() != x)
                .all(|y| count(y) < cx);
            unique_max.then(|| {
                VectorExpr(
                    names
                        .iter()
                        .map(|n| StrategyTerm::Concrete(n.to_string()))
                        .collect(),
                )
            })
        })
        .collect()
}

/// The game's outcome function is plurality wherever there is a unique
/// plurality winner.
pub fn plurality_rule(sig: &Signature) -> Result<Formula, LangError> {
    if sig.alternatives().is_empty() {
        return Err(LangError::NoAlternatives("pluralityRule"));
    }
    Ok(Formula::conj(sig.alternatives().iter().flat_map(|x| {
        plurality_vectors(sig, x)
            .into_iter()
            .map(move |c| Formula::boxed(Program::Vector(c), Formula::winner(x.clone())))
    })))
}

/// Every state has exactly one winner.
pub fn resolute(sig: &Signature) -> Result<Formula, LangError> {
    if sig.alternatives().is_empty() {
        return Err(LangError::NoAlternatives("resolute"));
    }
    let alts = sig.alternatives();
    let exactly_one = Formula::disj(alts.iter().map(|a| {
        Formula::winner(a.clone()).and(Formula::conj(
            alts.iter()
                .filter(|b| *b != a)
                .map(|b| Formula::winner(b.clone()).negate()),
        ))
    }));
    Ok(box_all_states(sig, exactly_one))
}

/// No player can strictly improve by switching alone, from here.
pub fn strategy_proof_inner(sig: &Signature) -> Formula {
    Formula::conj((0..sig.players()).map(|i| {
        Formula::disj(sig.utilities().iter().map(|&v| {
            payoff_geq(sig, i, v).and(diamond_switch(sig, i, &payoff_gt(sig, i, v)).negate())
        }))
    }))
}

/// [`strategy_proof_inner`] in every state.
pub fn strategy_proof(sig: &Signature) -> Formula {
    box_all_states(sig, strategy_proof_inner(sig))
}

/// Three distinct alternatives each win in some state.
pub fn non_imposed(sig: &Signature) -> Result<Formula, LangError> {
    if sig.alternatives().is_empty() {
        return Err(LangError::NoAlternatives("nonImposed"));
    }
    let alts = sig.alternatives();
    let mut disjuncts = Vec::new();
    for a in alts {
        for b in alts.iter().filter(|b| *b != a) {
            for c in alts.iter().filter(|c| *c != a && *c != b) {
                disjuncts.push(Formula::conj(
                    [a, b, c]
                        .into_iter()
                        .map(|x| diamond_any_state(sig, Formula::winner(x.clone()))),
                ));
            }
        }
    }
    Ok(Formula::disj(disjuncts))
}

/// `player` can always secure a payoff at least as high as anything any
/// other player can get.
pub fn dictator(sig: &Signature, player: usize) -> Result<Formula, LangError> {
    check_player(sig, player)?;
    Ok(Formula::disj(sig.utilities().iter().map(|&v| {
        let can_reach = diamond_switch(sig, player, &payoff_geq(sig, player, v));
        Formula::conj((0..sig.players()).filter(|&j| j != player).map(|j| {
            box_all_states(sig, payoff_gt(sig, j, v).negate().and(can_reach.clone()))
        }))
    })))
}

/// `player` is a dictator and knows it, under the equivalence closure of
/// their accessibility relation.
pub fn knowing_dictator(sig: &Signature, player: usize) -> Result<Formula, LangError> {
    Ok(Formula::boxed(Program::knowledge(player), dictator(sig, player)?))
}

/// Tit-for-tat for `player` in a two-player game: test what the opponent
/// played last and play the same, repeatedly.
pub fn tit_for_tat(sig: &Signature, player: usize) -> Result<Program, LangError> {
    check_player(sig, player)?;
    if sig.players() != 2 {
        return Err(LangError::NotTwoPlayer("titForTat"));
    }
    let opponent = 1 - player;
    let form = sig.form();
    let branches: Vec<Program> = form
        .strategies(opponent)
        .iter()
        .filter(|x| form.strategy_index(player, x).is_some())
        .map(|x| {
            let played = VectorExpr::single(2, opponent, x, StrategyTerm::Current);
            let reply = VectorExpr::single(2, player, x, StrategyTerm::Adversary);
            Program::test(Formula::Vector(played)).then(Program::Vector(reply))
        })
        .collect();
    let choice = branches
        .into_iter()
        .reduce(Program::or)
        .ok_or(LangError::NoSharedStrategy)?;
    Ok(choice.star())
}

/// Named properties, as accepted on the command line:
/// `nashHere`, `gameIsNash`, `weakDominance(1,d)`, `pluralityRule`,
/// `resolute`, `strategyProof`, `nonImposed`, `dictator(2)`,
/// `knowingDictator(2)`, `titForTat(2)`. Players are one-based in text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Property {
    NashHere,
    GameIsNash,
    WeakDominance { player: usize, strategy: String },
    PluralityRule,
    Resolute,
    StrategyProof,
    NonImposed,
    Dictator(usize),
    KnowingDictator(usize),
    TitForTat(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Built {
    Formula(Formula),
    Program(Program),
}

pub fn build_property(property: &Property, sig: &Signature) -> Result<Built, LangError> {
    use Property::*;
    Ok(match property {
        NashHere => Built::Formula(nash_here(sig)),
        GameIsNash => Built::Formula(game_is_nash(sig)),
        WeakDominance { player, strategy } => Built::Formula(weak_dominance(sig, *player, strategy)?),
        PluralityRule => Built::Formula(plurality_rule(sig)?),
        Resolute => Built::Formula(resolute(sig)?),
        StrategyProof => Built::Formula(strategy_proof(sig)),
        NonImposed => Built::Formula(non_imposed(sig)?),
        Dictator(i) => Built::Formula(dictator(sig, *i)?),
        KnowingDictator(i) => Built::Formula(knowing_dictator(sig, *i)?),
        TitForTat(i) => Built::Program(tit_for_tat(sig, *i)?),
    })
}

impl FromStr for Property {
    type Err = LangError;

    fn from_str(s: &str) -> Result<Self, LangError> {
        let unknown = || LangError::UnknownProperty(s.to_string());
        let s = s.trim();
        let (name, args): (&str, Vec<&str>) = match s.split_once('(') {
            Some((name, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(unknown)?;
                (name.trim(), inner.split(',').map(str::trim).collect())
            }
            None => (s, Vec::new()),
        };
        let player = |k: usize| -> Result<usize, LangError> {
            match args.get(k).and_then(|a| a.parse::<usize>().ok()) {
                Some(p) if p >= 1 => Ok(p - 1),
                _ => Err(unknown()),
            }
        };
        let arity = |n: usize| if args.len() == n { Ok(()) } else { Err(unknown()) };
        Ok(match name {
            "nashHere" => arity(0).map(|_| Property::NashHere)?,
            "gameIsNash" => arity(0).map(|_| Property::GameIsNash)?,
            "pluralityRule" => arity(0).map(|_| Property::PluralityRule)?,
            "resolute" => arity(0).map(|_| Property::Resolute)?,
            "strategyProof" => arity(0).map(|_| Property::StrategyProof)?,
            "nonImposed" => arity(0).map(|_| Property::NonImposed)?,
            "weakDominance" => {
                arity(2)?;
                Property::WeakDominance {
                    player: player(0)?,
                    strategy: args[1].to_string(),
                }
            }
            "dictator" => arity(1).and_then(|_| player(0)).map(Property::Dictator)?,
            "knowingDictator" => arity(1).and_then(|_| player(0)).map(Property::KnowingDictator)?,
            "titForTat" => arity(1).and_then(|_| player(0)).map(Property::TitForTat)?,
            _ => return Err(unknown()),
        })
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::NashHere => f.write_str("nashHere"),
            Property::GameIsNash => f.write_str("gameIsNash"),
            Property::WeakDominance { player, strategy } => {
                write!(f, "weakDominance({},{strategy})", player + 1)
            }
            Property::PluralityRule => f.write_str("pluralityRule"),
            Property::Resolute => f.write_str("resolute"),
            Property::StrategyProof => f.write_str("strategyProof"),
            Property::NonImposed => f.write_str("nonImposed"),
            Property::Dictator(i) => write!(f, "dictator({})", i + 1),
            Property::KnowingDictator(i) => write!(f, "knowingDictator({})", i + 1),
            Property::TitForTat(i) => write!(f, "titForTat({})", i + 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameForm;
    use crate::lang::render_formula;

    fn pd_sig() -> Signature {
        Signature::new(
            GameForm::uniform(2, &["c", "d"]).unwrap(),
            (0..4).map(Rational::from_integer),
            [],
        )
    }

    fn count_boxes(f: &Formula) -> usize {
        match f {
            Formula::Box(..) => 1,
            Formula::And(a, b) => count_boxes(a) + count_boxes(b),
            _ => 0,
        }
    }

    #[test]
    fn box_switch_over_pd() {
        let sig = pd_sig();
        let phi = Formula::Top;
        let f = expand(&Abbrev::BoxSwitch { player: 0, body: phi.clone() }, &sig).unwrap();
        assert_eq!(render_formula(&f), "[(c,!!)] T & [(d,!!)] T");
        assert_eq!(count_boxes(&f), 2);
        let g = expand(&Abbrev::BoxAny { player: 1, body: phi }, &sig).unwrap();
        assert_eq!(render_formula(&g), "[(??,c)] T & [(??,d)] T");
    }

    #[test]
    fn payoff_comparisons() {
        let sig = pd_sig();
        let q = Rational::from_integer;
        let geq = expand(&Abbrev::PayoffGeq { player: 1, value: q(2) }, &sig).unwrap();
        assert_eq!(geq, Formula::util_eq(1, q(2)).or(Formula::util_eq(1, q(3))));
        let gt = expand(&Abbrev::PayoffGt { player: 0, value: q(3) }, &sig).unwrap();
        assert_eq!(gt, Formula::bottom());
        // values between grid points compare against U, not against v
        let half = expand(&Abbrev::PayoffGeq { player: 0, value: Rational::new(5, 2) }, &sig).unwrap();
        assert_eq!(half, Formula::util_eq(0, q(3)));
    }

    #[test]
    fn expand_rejects_bad_parameters() {
        let sig = pd_sig();
        assert!(expand(&Abbrev::VecSwitch { player: 0, strategy: "x".into() }, &sig).is_err());
        assert!(expand(&Abbrev::BoxSwitch { player: 2, body: Formula::Top }, &sig).is_err());
        let v = expand(&Abbrev::VecAny { player: 1, strategy: "d".into() }, &sig).unwrap();
        assert_eq!(render_formula(&v), "(??,d)");
        let d = expand(&Abbrev::DiamondAnyState(Formula::Top), &sig).unwrap();
        assert_eq!(render_formula(&d), "<(??,??)> T");
    }

    #[test]
    fn voting_properties_need_alternatives() {
        let sig = pd_sig();
        assert_eq!(resolute(&sig), Err(LangError::NoAlternatives("resolute")));
        assert!(plurality_rule(&sig).is_err());
        assert!(non_imposed(&sig).is_err());
    }

    #[test]
    fn tit_for_tat_shape() {
        let sig = pd_sig();
        let p = tit_for_tat(&sig, 1).unwrap();
        assert_eq!(
            crate::lang::render_program(&p),
            "(?(c,!!);(??,c)+?(d,!!);(??,d))*"
        );
        let three = Signature::of_form(GameForm::uniform(3, &["c", "d"]).unwrap());
        assert_eq!(tit_for_tat(&three, 0), Err(LangError::NotTwoPlayer("titForTat")));
    }

    #[test]
    fn plurality_vectors_partition_unique_winner_profiles() {
        let sig = Signature::new(GameForm::uniform(3, &["a", "b", "c"]).unwrap(), [], ["a", "b", "c"].map(String::from));
        let counts: Vec<usize> = ["a", "b", "c"].iter().map(|x| plurality_vectors(&sig, x).len()).collect();
        // 7 profiles per alternative with at least two of three votes; the 6 all-different ones have none
        assert_eq!(counts, [7, 7, 7]);
    }

    #[test]
    fn property_names_round_trip() {
        for text in [
            "nashHere",
            "gameIsNash",
            "weakDominance(1,d)",
            "pluralityRule",
            "resolute",
            "strategyProof",
            "nonImposed",
            "dictator(2)",
            "knowingDictator(2)",
            "titForTat(1)",
        ] {
            let p: Property = text.parse().unwrap();
            assert_eq!(p.to_string(), text);
        }
        assert!("dictator(0)".parse::<Property>().is_err());
        assert!("dictator".parse::<Property>().is_err());
        assert!("bogus".parse::<Property>().is_err());
    }
}

//! Coalition logic: `[C] f` holds when coalition `C` has a joint choice that
//! forces `f` whatever everyone else does. Its translation into the strategy
//! logic replaces each coalition box by a disjunction of vector boxes.

use serde::Serialize;

use crate::eval::{atom_holds, EvalError, MaslModel, Structure};
use crate::game::{Coalition, GameForm, Profile};
use crate::lang::{Atom, Formula, Program, StrategyTerm, VectorExpr};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum ClFormula {
    Top,
    Atom(Atom),
    Not(Box<ClFormula>),
    And(Box<ClFormula>, Box<ClFormula>),
    CoalBox(Coalition, Box<ClFormula>),
}

impl ClFormula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: ClFormula) -> ClFormula {
        ClFormula::Not(Box::new(f))
    }

    pub fn and(a: ClFormula, b: ClFormula) -> ClFormula {
        ClFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: ClFormula, b: ClFormula) -> ClFormula {
        Self::not(Self::and(Self::not(a), Self::not(b)))
    }

    pub fn implies(a: ClFormula, b: ClFormula) -> ClFormula {
        Self::not(Self::and(a, Self::not(b)))
    }

    pub fn iff(a: ClFormula, b: ClFormula) -> ClFormula {
        Self::and(Self::implies(a.clone(), b.clone()), Self::implies(b, a))
    }

    pub fn coal_box(c: Coalition, f: ClFormula) -> ClFormula {
        ClFormula::CoalBox(c, Box::new(f))
    }

    /// The propositional part of a strategy-logic formula, if that is all
    /// it has.
    pub fn from_propositional(f: &Formula) -> Option<ClFormula> {
        let bin = |a: &Formula, b: &Formula| Some((Self::from_propositional(a)?, Self::from_propositional(b)?));
        Some(match f {
            Formula::Top => ClFormula::Top,
            Formula::Atom(a) => ClFormula::Atom(a.clone()),
            Formula::Not(g) => Self::not(Self::from_propositional(g)?),
            Formula::And(a, b) => bin(a, b).map(|(a, b)| Self::and(a, b))?,
            Formula::Or(a, b) => bin(a, b).map(|(a, b)| Self::or(a, b))?,
            Formula::Implies(a, b) => bin(a, b).map(|(a, b)| Self::implies(a, b))?,
            Formula::Iff(a, b) => bin(a, b).map(|(a, b)| Self::iff(a, b))?,
            Formula::Vector(_) | Formula::Box(..) | Formula::Diamond(..) => return None,
        })
    }

    pub fn depth(&self) -> usize {
        match self {
            ClFormula::Top | ClFormula::Atom(_) => 0,
            ClFormula::Not(f) | ClFormula::CoalBox(_, f) => 1 + f.depth(),
            ClFormula::And(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

/// Direct semantics: some assignment to `C` such that every completion by
/// the others satisfies the body.
pub fn cl_check(model: &MaslModel, s: &Profile, f: &ClFormula) -> Result<bool, EvalError> {
    let game = model.game();
    let form = game.form();
    if !form.contains(s) {
        return Err(EvalError::UnknownState(format!("{:?}", s.0)));
    }
    Ok(match f {
        ClFormula::Top => true,
        ClFormula::Atom(a) => atom_holds(game, game.outcome(s), a)?,
        ClFormula::Not(g) => !cl_check(model, s, g)?,
        ClFormula::And(a, b) => cl_check(model, s, a)? && cl_check(model, s, b)?,
        ClFormula::CoalBox(c, g) => {
            if let Some(&bad) = c.members().collect::<Vec<_>>().iter().find(|&&i| i >= form.players()) {
                return Err(EvalError::PlayerOutOfRange(bad));
            }
            let rest = c.complement(form.players());
            let mut forced = false;
            for t in c.assignments(form) {
                let mut all = true;
                for u in rest.assignments(form) {
                    let p = crate::game::combine(form, c, &t, &u).expect("assignments cover all players");
                    if !cl_check(model, &p, g)? {
                        all = false;
                        break;
                    }
                }
                if all {
                    forced = true;
                    break;
                }
            }
            forced
        }
    })
}

/// `Ċ`: concrete strategies for members of `C`, `??` for everyone else, in
/// profile enumeration order.
pub fn coalition_vectors(c: &Coalition, form: &GameForm) -> Vec<VectorExpr> {
    c.assignments(form)
        .into_iter()
        .map(|t| {
            VectorExpr(
                (0..form.players())
                    .map(|i| match t.get(&i) {
                        Some(&k) => StrategyTerm::Concrete(form.strategies(i)[k].clone()),
                        None => StrategyTerm::Adversary,
                    })
                    .collect(),
            )
        })
        .collect()
}

/// The translation into the strategy logic: `[C] f` becomes the disjunction
/// of `[c] f` over `c` in `Ċ`.
pub fn translate(f: &ClFormula, form: &GameForm) -> Formula {
    match f {
        ClFormula::Top => Formula::Top,
        ClFormula::Atom(a) => Formula::Atom(a.clone()),
        ClFormula::Not(g) => translate(g, form).negate(),
        ClFormula::And(a, b) => translate(a, form).and(translate(b, form)),
        ClFormula::CoalBox(c, g) => {
            let body = translate(g, form);
            Formula::disj(
                coalition_vectors(c, form)
                    .into_iter()
                    .map(|v| Formula::boxed(Program::Vector(v), body.clone())),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::StrategicGame;
    use crate::lang::{payoff_geq, render_formula, Signature};
    use crate::rational::Rational;

    fn pd() -> MaslModel {
        let table = [(2, 2), (0, 3), (3, 0), (1, 1)];
        let form = GameForm::uniform(2, &["c", "d"]).unwrap();
        let f2 = form.clone();
        MaslModel::new(
            StrategicGame::from_payoffs(form, |p| {
                let (a, b) = table[f2.profile_index(p)];
                vec![Rational::from_integer(a), Rational::from_integer(b)]
            })
            .unwrap(),
        )
    }

    fn geq(model: &MaslModel, player: usize, v: i64) -> ClFormula {
        let sig = Signature::of_game(model.game());
        ClFormula::from_propositional(&payoff_geq(&sig, player, Rational::from_integer(v))).unwrap()
    }

    #[test]
    fn direct_semantics_on_pd() {
        let m = pd();
        let any = Profile(vec![0, 0]);
        let two = Coalition::new([1], 2).unwrap();
        assert!(cl_check(&m, &any, &ClFormula::coal_box(two.clone(), geq(&m, 1, 1))).unwrap());
        assert!(!cl_check(&m, &any, &ClFormula::coal_box(two, geq(&m, 1, 3))).unwrap());
        for p in m.profiles() {
            assert!(cl_check(&m, p, &ClFormula::coal_box(Coalition::empty(), geq(&m, 0, 0))).unwrap());
            assert!(!cl_check(&m, p, &ClFormula::coal_box(Coalition::empty(), geq(&m, 0, 1))).unwrap());
        }
    }

    #[test]
    fn coalition_vector_sets() {
        let form = GameForm::uniform(2, &["c", "d"]).unwrap();
        let show = |c: Coalition| {
            coalition_vectors(&c, &form)
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        };
        assert_eq!(show(Coalition::new([1], 2).unwrap()), ["(??,c)", "(??,d)"]);
        assert_eq!(show(Coalition::empty()), ["(??,??)"]);
        assert_eq!(show(Coalition::grand(2)).len(), 4);
    }

    #[test]
    fn translation_shape() {
        let form = GameForm::uniform(2, &["c", "d"]).unwrap();
        let p = ClFormula::Atom(Atom::Label("cc".into()));
        let f = ClFormula::coal_box(Coalition::new([1], 2).unwrap(), p.clone());
        assert_eq!(render_formula(&translate(&f, &form)), "[(??,c)] label(cc) | [(??,d)] label(cc)");
        assert_eq!(translate(&p, &form), Formula::label("cc"));
    }

    #[test]
    fn derived_connectives_reject_modalities() {
        let f = Formula::boxed(Program::Agent(0), Formula::Top);
        assert!(ClFormula::from_propositional(&f).is_none());
        let g = Formula::Top.implies(Formula::label("x"));
        assert_eq!(
            ClFormula::from_propositional(&g),
            Some(ClFormula::implies(ClFormula::Top, ClFormula::Atom(Atom::Label("x".into()))))
        );
    }
}

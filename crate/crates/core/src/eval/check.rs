use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::lang::{Atom, Formula, Program, VectorExpr};

use super::model::Structure;
use super::relation::{Relation, StateSet};
use super::EvalError;

/// Whether an atom holds in an outcome of `game`.
pub fn atom_holds(
    game: &crate::game::StrategicGame,
    record: &crate::game::OutcomeRecord,
    atom: &Atom,
) -> Result<bool, EvalError> {
    match atom {
        Atom::Winner(x) => match &record.winners {
            Some(w) => Ok(w.contains(x)),
            None => Err(EvalError::NoWinners(x.clone())),
        },
        Atom::UtilEq { player, value } => {
            if *player >= game.players() {
                return Err(EvalError::PlayerOutOfRange(*player));
            }
            if !game.utility_range().contains(value) {
                return Err(EvalError::UtilityOutOfRange {
                    player: *player,
                    value: *value,
                });
            }
            Ok(record.utils[*player] == *value)
        }
        Atom::Label(l) => Ok(record.label == *l),
    }
}

/// Global model checker: computes extensions bottom-up, memoizing vector
/// relations.
pub struct Checker<'m, M: Structure + ?Sized> {
    model: &'m M,
    vectors: RefCell<HashMap<VectorExpr, Rc<Relation>>>,
}

impl<'m, M: Structure + ?Sized> Checker<'m, M> {
    pub fn new(model: &'m M) -> Self {
        Checker {
            model,
            vectors: RefCell::new(HashMap::new()),
        }
    }

    pub fn model(&self) -> &'m M {
        self.model
    }

    pub fn vector_relation(&self, v: &VectorExpr) -> Result<Rc<Relation>, EvalError> {
        if let Some(r) = self.vectors.borrow().get(v) {
            return Ok(Rc::clone(r));
        }
        let r = Rc::new(self.model.vector_relation(v)?);
        self.vectors.borrow_mut().insert(v.clone(), Rc::clone(&r));
        Ok(r)
    }

    pub fn extension(&self, f: &Formula) -> Result<StateSet, EvalError> {
        let size = self.model.state_count();
        Ok(match f {
            Formula::Top => StateSet::full(size),
            Formula::Vector(v) => {
                let r = self.vector_relation(v)?;
                StateSet::from_fn(size, |s| r.relates(s, s))
            }
            Formula::Atom(a) => {
                let game = self.model.game();
                let mut out = StateSet::empty(size);
                for s in 0..size {
                    if atom_holds(game, self.model.record(s), a)? {
                        out.insert(s);
                    }
                }
                out
            }
            Formula::Not(g) => self.extension(g)?.complement(),
            Formula::And(a, b) => self.extension(a)?.intersection(&self.extension(b)?),
            Formula::Or(a, b) => self.extension(a)?.union(&self.extension(b)?),
            Formula::Implies(a, b) => self.extension(a)?.complement().union(&self.extension(b)?),
            Formula::Iff(a, b) => {
                let (x, y) = (self.extension(a)?, self.extension(b)?);
                x.intersection(&y).union(&x.complement().intersection(&y.complement()))
            }
            Formula::Box(p, g) => self.program_relation(p)?.box_of(&self.extension(g)?),
            Formula::Diamond(p, g) => self.program_relation(p)?.diamond_of(&self.extension(g)?),
        })
    }

    pub fn program_relation(&self, p: &Program) -> Result<Relation, EvalError> {
        Ok(match p {
            Program::Vector(v) => (*self.vector_relation(v)?).clone(),
            Program::Test(f) => Relation::diagonal(&self.extension(f)?),
            Program::Seq(a, b) => self.program_relation(a)?.compose(&self.program_relation(b)?),
            Program::Choice(a, b) => self.program_relation(a)?.union(&self.program_relation(b)?),
            Program::Star(a) => self.program_relation(a)?.star(),
            Program::Agent(i) => self.model.agent_relation(*i)?.clone(),
            Program::AgentConv(i) => self.model.agent_relation(*i)?.converse(),
        })
    }

    pub fn satisfies(&self, state: usize, f: &Formula) -> Result<bool, EvalError> {
        if state >= self.model.state_count() {
            return Err(EvalError::UnknownState(state.to_string()));
        }
        Ok(self.extension(f)?.contains(state))
    }
}

pub fn extension<M: Structure + ?Sized>(model: &M, f: &Formula) -> Result<StateSet, EvalError> {
    Checker::new(model).extension(f)
}

pub fn satisfies<M: Structure + ?Sized>(model: &M, state: usize, f: &Formula) -> Result<bool, EvalError> {
    Checker::new(model).satisfies(state, f)
}

pub fn program_relation<M: Structure + ?Sized>(model: &M, p: &Program) -> Result<Relation, EvalError> {
    Checker::new(model).program_relation(p)
}

/// `⟦c⟧` on a model.
pub fn vector_relation<M: Structure + ?Sized>(model: &M, v: &VectorExpr) -> Result<Relation, EvalError> {
    model.vector_relation(v)
}

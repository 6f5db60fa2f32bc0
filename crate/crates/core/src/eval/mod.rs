//! Models and the global model checker.
//!
//! A formula's extension is computed bottom-up over the whole state space;
//! programs denote [`Relation`]s. Flat models ([`MaslModel`]) have one state
//! per profile. Intensional models ([`IntensionalModel`]) have worlds made of
//! a game form and a profile, plus one accessibility relation per agent.

mod check;
mod epistemic;
mod file;
mod model;
mod relation;

pub use check::{atom_holds, extension, program_relation, satisfies, vector_relation, Checker};
pub use epistemic::{confusion_model, epistemic_lift, restrict, FULL_FORM, RESTRICTED_FORM};
pub use file::{model_from_str, model_to_json};
pub use model::{interpret_term, FormRef, IntensionalModel, MaslModel, Structure};
pub use relation::{Relation, StateSet};

use thiserror::Error;

use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("vector has {found} positions, the game has {expected} players")]
    Arity { expected: usize, found: usize },
    #[error("agent programs need an epistemic model (ag{} on a flat game)", .0 + 1)]
    AgentOnFlatModel(usize),
    #[error("no player {} in this model", .0 + 1)]
    PlayerOutOfRange(usize),
    #[error("u{}={} uses a value that occurs nowhere in the game", .player + 1, format_rational(.value))]
    UtilityOutOfRange { player: usize, value: Rational },
    #[error("win({0}) needs a game with winners")]
    NoWinners(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("invalid model: {0}")]
    Model(String),
}

//! The strategy-logic language: syntax trees, concrete syntax, and the
//! builders for abbreviations and game/voting properties.
//!
//! Concrete syntax, loosest binding first:
//!
//! ```text
//! formula  f ::= f <-> f | f -> f | f '|' f | f & f
//!              | ~f | [p]f | <p>f | T | (t1,...,tn) | (f)
//!              | win(x) | label(s) | u1=q | u1>=q | u1>q
//! program  p ::= p + p | p ; p | ?f | p* | (t1,...,tn) | ag1 | ag1^ | (p)
//! term     t ::= name | ?? | !!
//! ```
//!
//! `->` associates to the right, every other binary operator to the left.
//! `u1>=q` and `u1>q` expand at parse time into disjunctions over the
//! game's utility values, so they need a signature that knows them.

mod ast;
mod build;
mod lexer;
mod parser;
mod render;

pub use ast::{Atom, Formula, Program, StrategyTerm, VectorExpr};
pub use build::{
    box_any, box_switch, build_property, diamond_any_state, diamond_switch, dictator, expand,
    game_is_nash, knowing_dictator, nash_here, non_imposed, payoff_geq, payoff_gt, plurality_rule,
    resolute, strategy_proof, strategy_proof_inner, tit_for_tat, vec_any, vec_switch,
    weak_dominance, Abbrev, Built, LangError, Property,
};
pub use parser::{parse_cl, parse_formula, parse_program};
pub use render::{render_cl, render_formula, render_program};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::game::{GameForm, StrategicGame};
use crate::rational::Rational;

/// What the language needs to know about a game: the form (player count and
/// strategy names), the utility values `U`, and the alternatives `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    form: GameForm,
    utilities: Vec<Rational>,
    alternatives: Vec<String>,
}

impl Signature {
    pub fn new(
        form: GameForm,
        utilities: impl IntoIterator<Item = Rational>,
        alternatives: impl IntoIterator<Item = String>,
    ) -> Self {
        let utilities: BTreeSet<Rational> = utilities.into_iter().collect();
        let mut seen = BTreeSet::new();
        let alternatives = alternatives
            .into_iter()
            .filter(|a| seen.insert(a.clone()))
            .collect();
        Signature {
            form,
            utilities: utilities.into_iter().collect(),
            alternatives,
        }
    }

    /// A signature with no utilities and no alternatives.
    pub fn of_form(form: GameForm) -> Self {
        Signature::new(form, [], [])
    }

    pub fn of_game(game: &StrategicGame) -> Self {
        Signature::new(
            game.form().clone(),
            game.utility_range().iter().copied(),
            game.alternatives(),
        )
    }

    pub fn form(&self) -> &GameForm {
        &self.form
    }

    pub fn players(&self) -> usize {
        self.form.players()
    }

    /// `U`, ascending.
    pub fn utilities(&self) -> &[Rational] {
        &self.utilities
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Arity,
    UnknownName,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            kind: ParseErrorKind::Syntax,
            line,
            column,
            message: message.into(),
        }
    }
}

//! Model checking for a strategy logic over finite strategic games.
//!
//! Games ([`game`]) become Kripke-style models whose states are strategy
//! profiles ([`eval`]). Formulas and programs ([`lang`]) talk about what
//! players can force by choosing strategies; [`voting`] turns ballots into
//! games, [`coalition`] embeds coalition logic, and [`calculus`] checks the
//! axioms of the logic on model families.

pub mod calculus;
pub mod coalition;
pub mod demo;
pub mod eval;
pub mod game;
pub mod lang;
pub mod par;
pub mod rational;
pub mod sample;
pub mod sweep;
pub mod voting;

//! Seeded generators for random games and formulas, shared by the tests,
//! benches and the command line.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::coalition::ClFormula;
use crate::game::{Coalition, GameForm, StrategicGame};
use crate::lang::{Atom, Formula, Program, Signature, StrategyTerm, VectorExpr};
use crate::rational::Rational;

pub use rand::SeedableRng;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

const NAMES: [&str; 3] = ["a", "b", "c"];

/// A game with 2 or 3 players, 1 to 3 strategies each, and integer
/// utilities in `0..=3`. Labels are the concatenated profile names.
pub fn random_game(rng: &mut SampleRng) -> StrategicGame {
    let n = rng.gen_range(2..=3);
    let sets = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=3);
            NAMES[..k].iter().map(|s| s.to_string()).collect()
        })
        .collect();
    random_payoffs(GameForm::new(sets).expect("valid names"), rng)
}

/// Integer utilities in `0..=3` on a fixed form.
pub fn random_payoffs(form: GameForm, rng: &mut SampleRng) -> StrategicGame {
    let n = form.players();
    StrategicGame::from_payoffs(form, |_| {
        (0..n).map(|_| Rational::from_integer(rng.gen_range(0..=3))).collect()
    })
    .expect("payoffs have one entry per player")
}

/// Atoms that evaluate without error on `game`: its utility values and
/// labels, plus winners when it has any.
pub fn game_atoms(game: &StrategicGame) -> Vec<Atom> {
    let mut atoms: Vec<Atom> = (0..game.players())
        .flat_map(|i| game.utility_range().iter().map(move |&v| Atom::UtilEq { player: i, value: v }))
        .collect();
    atoms.extend(game.alternatives().into_iter().map(Atom::Winner));
    let mut labels: Vec<&str> = game.outcomes().iter().map(|o| o.label.as_str()).collect();
    labels.sort_unstable();
    labels.dedup();
    atoms.extend(labels.into_iter().map(|l| Atom::Label(l.to_string())));
    atoms
}

/// Random coalition-logic formula of depth at most `depth`: atoms 40%,
/// negation, conjunction and coalition boxes 20% each, with a uniformly
/// random coalition.
pub fn random_cl_formula(rng: &mut SampleRng, players: usize, atoms: &[Atom], depth: usize) -> ClFormula {
    let atom = |rng: &mut SampleRng| match atoms.choose(rng) {
        Some(a) => ClFormula::Atom(a.clone()),
        None => ClFormula::Top,
    };
    if depth == 0 {
        return atom(rng);
    }
    let roll = rng.gen_range(0..100);
    match roll {
        0..=39 => atom(rng),
        40..=59 => ClFormula::not(random_cl_formula(rng, players, atoms, depth - 1)),
        60..=79 => ClFormula::and(
            random_cl_formula(rng, players, atoms, depth - 1),
            random_cl_formula(rng, players, atoms, depth - 1),
        ),
        _ => {
            let members: Vec<usize> = (0..players).filter(|_| rng.gen_bool(0.5)).collect();
            let c = Coalition::new(members, players).expect("members in range");
            ClFormula::coal_box(c, random_cl_formula(rng, players, atoms, depth - 1))
        }
    }
}

/// Random syntax trees over a signature, covering every constructor.
/// Used for parse/render round trips, so atoms need not be meaningful in
/// any particular game.
pub struct AstSampler<'s> {
    sig: &'s Signature,
}

const LABELS: [&str; 6] = ["cc", "x_1", "two words", "a,b", "quote\"d", ""];

impl<'s> AstSampler<'s> {
    pub fn new(sig: &'s Signature) -> Self {
        AstSampler { sig }
    }

    fn term(&self, rng: &mut SampleRng, i: usize) -> StrategyTerm {
        match rng.gen_range(0..4) {
            0 => StrategyTerm::Adversary,
            1 => StrategyTerm::Current,
            _ => StrategyTerm::Concrete(self.sig.form().strategies(i).choose(rng).expect("non-empty").clone()),
        }
    }

    pub fn vector(&self, rng: &mut SampleRng) -> VectorExpr {
        VectorExpr((0..self.sig.players()).map(|i| self.term(rng, i)).collect())
    }

    fn atom(&self, rng: &mut SampleRng) -> Formula {
        match rng.gen_range(0..3) {
            0 if !self.sig.alternatives().is_empty() => {
                Formula::winner(self.sig.alternatives().choose(rng).expect("non-empty").clone())
            }
            1 => Formula::label(*LABELS.choose(rng).expect("non-empty")),
            _ => {
                let player = rng.gen_range(0..self.sig.players());
                let value = Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=4));
                Formula::util_eq(player, value)
            }
        }
    }

    fn leaf(&self, rng: &mut SampleRng) -> Formula {
        match rng.gen_range(0..4) {
            0 => Formula::Top,
            1 => Formula::Vector(self.vector(rng)),
            _ => self.atom(rng),
        }
    }

    /// A formula of depth at most `depth`.
    pub fn formula(&self, rng: &mut SampleRng, depth: usize) -> Formula {
        if depth == 0 || rng.gen_bool(0.2) {
            return self.leaf(rng);
        }
        let d = depth - 1;
        match rng.gen_range(0..7) {
            0 => self.formula(rng, d).negate(),
            1 => self.formula(rng, d).and(self.formula(rng, d)),
            2 => self.formula(rng, d).or(self.formula(rng, d)),
            3 => self.formula(rng, d).implies(self.formula(rng, d)),
            4 => self.formula(rng, d).iff(self.formula(rng, d)),
            5 => Formula::boxed(self.program(rng, d), self.formula(rng, d)),
            _ => Formula::diamond(self.program(rng, d), self.formula(rng, d)),
        }
    }

    /// A program of depth at most `depth`.
    pub fn program(&self, rng: &mut SampleRng, depth: usize) -> Program {
        if depth == 0 || rng.gen_bool(0.2) {
            return match rng.gen_range(0..4) {
                0 => Program::Agent(rng.gen_range(0..self.sig.players())),
                1 => Program::AgentConv(rng.gen_range(0..self.sig.players())),
                _ => Program::Vector(self.vector(rng)),
            };
        }
        let d = depth - 1;
        match rng.gen_range(0..4) {
            0 => Program::test(self.formula(rng, d)),
            1 => self.program(rng, d).then(self.program(rng, d)),
            2 => self.program(rng, d).or(self.program(rng, d)),
            _ => self.program(rng, d).star(),
        }
    }
}

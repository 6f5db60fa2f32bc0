use serde::Serialize;

use crate::rational::Rational;

/// One position of a strategy vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum StrategyTerm {
    /// A named strategy of the player at this position.
    Concrete(String),
    /// `??`: any strategy of the player.
    Adversary,
    /// `!!`: the player's strategy in the current profile.
    Current,
}

/// A strategy vector `(t_1, ..., t_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VectorExpr(pub Vec<StrategyTerm>);

impl VectorExpr {
    pub fn uniform(n: usize, term: StrategyTerm) -> Self {
        VectorExpr(vec![term; n])
    }

    pub fn all_adversary(n: usize) -> Self {
        Self::uniform(n, StrategyTerm::Adversary)
    }

    pub fn all_current(n: usize) -> Self {
        Self::uniform(n, StrategyTerm::Current)
    }

    /// `rest` everywhere except `name` at position `i`.
    pub fn single(n: usize, i: usize, name: &str, rest: StrategyTerm) -> Self {
        Self::uniform(n, rest).with(i, StrategyTerm::Concrete(name.to_string()))
    }

    pub fn with(&self, i: usize, term: StrategyTerm) -> Self {
        let mut terms = self.0.clone();
        terms[i] = term;
        VectorExpr(terms)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// No position is `??`.
    pub fn is_determined(&self) -> bool {
        !self.0.contains(&StrategyTerm::Adversary)
    }
}

/// Propositions read off the outcome of a profile.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Atom {
    /// The alternative is among the winners.
    Winner(String),
    /// Player's utility equals the value exactly.
    UtilEq {
        player: usize,
        #[serde(with = "crate::rational::serde_str")]
        value: Rational,
    },
    Label(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Formula {
    Top,
    Vector(VectorExpr),
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Box(Box<Program>, Box<Formula>),
    Diamond(Box<Program>, Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Program {
    Vector(VectorExpr),
    Test(Box<Formula>),
    Seq(Box<Program>, Box<Program>),
    Choice(Box<Program>, Box<Program>),
    Star(Box<Program>),
    /// Accessibility relation of an agent (epistemic models only).
    Agent(usize),
    /// Its converse.
    AgentConv(usize),
}

impl Formula {
    pub fn bottom() -> Formula {
        Formula::Not(Box::new(Formula::Top))
    }

    pub fn winner(x: impl Into<String>) -> Formula {
        Formula::Atom(Atom::Winner(x.into()))
    }

    pub fn util_eq(player: usize, value: Rational) -> Formula {
        Formula::Atom(Atom::UtilEq { player, value })
    }

    pub fn label(s: impl Into<String>) -> Formula {
        Formula::Atom(Atom::Label(s.into()))
    }

    pub fn negate(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    pub fn iff(self, other: Formula) -> Formula {
        Formula::Iff(Box::new(self), Box::new(other))
    }

    pub fn boxed(program: Program, body: Formula) -> Formula {
        Formula::Box(Box::new(program), Box::new(body))
    }

    pub fn diamond(program: Program, body: Formula) -> Formula {
        Formula::Diamond(Box::new(program), Box::new(body))
    }

    /// Left-nested conjunction; the empty conjunction is `T`.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; the empty disjunction is `~T`.
    pub fn disj(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or_else(Formula::bottom)
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Vector(_) | Formula::Atom(_) => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::Box(p, f) | Formula::Diamond(p, f) => 1 + p.depth().max(f.depth()),
        }
    }

    /// Every atom occurring anywhere, programs included.
    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Formula::Top | Formula::Vector(_) => {}
            Formula::Atom(a) => out.push(a),
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::Box(p, f) | Formula::Diamond(p, f) => {
                p.collect_atoms(out);
                f.collect_atoms(out);
            }
        }
    }
}

impl Program {
    pub fn vector(v: VectorExpr) -> Program {
        Program::Vector(v)
    }

    pub fn test(f: Formula) -> Program {
        Program::Test(Box::new(f))
    }

    pub fn then(self, other: Program) -> Program {
        Program::Seq(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Program) -> Program {
        Program::Choice(Box::new(self), Box::new(other))
    }

    pub fn star(self) -> Program {
        Program::Star(Box::new(self))
    }

    /// `(i ∪ i~)*`: the equivalence closure of agent `i`'s relation.
    pub fn knowledge(agent: usize) -> Program {
        Program::Agent(agent).or(Program::AgentConv(agent)).star()
    }

    pub fn depth(&self) -> usize {
        match self {
            Program::Vector(_) | Program::Agent(_) | Program::AgentConv(_) => 0,
            Program::Test(f) => 1 + f.depth(),
            Program::Seq(a, b) | Program::Choice(a, b) => 1 + a.depth().max(b.depth()),
            Program::Star(p) => 1 + p.depth(),
        }
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Program::Vector(_) | Program::Agent(_) | Program::AgentConv(_) => {}
            Program::Test(f) => f.collect_atoms(out),
            Program::Seq(a, b) | Program::Choice(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Program::Star(p) => p.collect_atoms(out),
        }
    }
}

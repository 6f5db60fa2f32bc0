use super::build::{payoff_geq, payoff_gt};
use super::lexer::{tokenize, Spanned, Tok};
use super::{Formula, ParseError, ParseErrorKind, Program, Signature, StrategyTerm, VectorExpr};
use crate::coalition::ClFormula;
use crate::game::Coalition;
use crate::rational::Rational;

type Result<T> = std::result::Result<T, ParseError>;

pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula> {
    let mut p = Parser::new(text, sig)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_program(text: &str, sig: &Signature) -> Result<Program> {
    let mut p = Parser::new(text, sig)?;
    let prog = p.program()?;
    p.finish()?;
    Ok(prog)
}

/// Coalition-logic formulas: atoms, `T`, `~`, `&`, `|`, `->`, `<->` and
/// `[C {1,3}] f`. Derived connectives are expanded into `~` and `&`.
pub fn parse_cl(text: &str, sig: &Signature) -> Result<ClFormula> {
    let mut p = Parser::new(text, sig)?;
    let f = p.cl_formula()?;
    p.finish()?;
    Ok(f)
}

struct Parser<'s> {
    toks: Vec<Spanned>,
    pos: usize,
    sig: &'s Signature,
}

impl<'s> Parser<'s> {
    fn new(text: &str, sig: &'s Signature) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            sig,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error_at(&self, pos: usize, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        let t = &self.toks[pos];
        ParseError {
            kind,
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error_at(
            self.pos,
            ParseErrorKind::Syntax,
            format!("expected {wanted}, found {}", self.peek().describe()),
        )
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn finish(&self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    /// At `(`: does the parenthesised group hold a top-level comma?
    fn group_is_vector(&self) -> bool {
        let mut depth = 0usize;
        for t in &self.toks[self.pos..] {
            match t.tok {
                Tok::LParen | Tok::LBracket | Tok::LBrace => depth += 1,
                Tok::RParen | Tok::RBracket | Tok::RBrace => {
                    depth = depth.saturating_sub(1);
                    if depth == 0 {
                        return false;
                    }
                }
                Tok::Comma if depth == 1 => return true,
                Tok::Eof => return false,
                _ => {}
            }
        }
        false
    }

    // ---- formulas ----

    fn formula(&mut self) -> Result<Formula> {
        let mut lhs = self.implication()?;
        while self.eat(&Tok::DoubleArrow) {
            let rhs = self.implication()?;
            lhs = lhs.iff(rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Pipe) {
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Amp) {
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Tilde => {
                self.bump();
                Ok(self.unary()?.negate())
            }
            Tok::LBracket => {
                self.bump();
                let p = self.program()?;
                self.expect(Tok::RBracket)?;
                Ok(Formula::boxed(p, self.unary()?))
            }
            Tok::Lt => {
                self.bump();
                let p = self.program()?;
                self.expect(Tok::Gt)?;
                Ok(Formula::diamond(p, self.unary()?))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Word(w) if w == "T" => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::LParen if self.group_is_vector() => Ok(Formula::Vector(self.vector()?)),
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Word(_) => self.atom_formula(),
            _ => Err(self.unexpected("a formula")),
        }
    }

    /// `win(x)`, `label(s)`, `u1=q`, `u1>=q`, `u1>q`.
    fn atom_formula(&mut self) -> Result<Formula> {
        let start = self.pos;
        let Tok::Word(w) = self.bump() else {
            unreachable!()
        };
        if (w == "win" || w == "label") && *self.peek() == Tok::LParen {
            self.bump();
            let arg_pos = self.pos;
            let arg = match self.bump() {
                Tok::Word(s) | Tok::Str(s) => s,
                _ => return Err(self.error_at(arg_pos, ParseErrorKind::Syntax, "expected a name")),
            };
            self.expect(Tok::RParen)?;
            if w == "label" {
                return Ok(Formula::label(arg));
            }
            if !self.sig.alternatives().contains(&arg) {
                return Err(self.error_at(
                    arg_pos,
                    ParseErrorKind::UnknownName,
                    format!("unknown alternative `{arg}`"),
                ));
            }
            return Ok(Formula::winner(arg));
        }
        if let Some(player) = self.player_number(&w, "u", start)? {
            let op_pos = self.pos;
            let op = self.bump();
            if !matches!(op, Tok::Eq | Tok::Ge | Tok::Gt) {
                return Err(self.error_at(op_pos, ParseErrorKind::Syntax, "expected `=`, `>=` or `>`"));
            }
            let value = self.rational()?;
            return match op {
                Tok::Eq => Ok(Formula::util_eq(player, value)),
                Tok::Ge | Tok::Gt => {
                    if self.sig.utilities().is_empty() {
                        return Err(self.error_at(
                            start,
                            ParseErrorKind::UnknownName,
                            "payoff comparison needs the game's utility values",
                        ));
                    }
                    Ok(if op == Tok::Ge {
                        payoff_geq(self.sig, player, value)
                    } else {
                        payoff_gt(self.sig, player, value)
                    })
                }
                _ => unreachable!(),
            };
        }
        Err(self.error_at(
            start,
            ParseErrorKind::Syntax,
            format!("unknown atom `{w}`"),
        ))
    }

    /// `prefix<k>` with `1 <= k <= n`; returns the zero-based player.
    fn player_number(&self, word: &str, prefix: &str, at: usize) -> Result<Option<usize>> {
        let Some(digits) = word.strip_prefix(prefix) else {
            return Ok(None);
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Ok(None);
        }
        match digits.parse::<usize>() {
            Ok(k) if k >= 1 && k <= self.sig.players() => Ok(Some(k - 1)),
            _ => Err(self.error_at(
                at,
                ParseErrorKind::UnknownName,
                format!("no player {digits} in a {}-player game", self.sig.players()),
            )),
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let start = self.pos;
        let negative = self.eat(&Tok::Minus);
        let int = |p: &mut Self| -> Result<i64> {
            match p.bump() {
                Tok::Word(d) if d.bytes().all(|b| b.is_ascii_digit()) => d
                    .parse()
                    .map_err(|_| p.error_at(start, ParseErrorKind::Syntax, "number too large")),
                _ => Err(p.error_at(start, ParseErrorKind::Syntax, "expected a number")),
            }
        };
        let num = int(self)?;
        let den = if self.eat(&Tok::Slash) { int(self)? } else { 1 };
        if den == 0 {
            return Err(self.error_at(start, ParseErrorKind::Syntax, "zero denominator"));
        }
        let q = Rational::new(num, den);
        Ok(if negative { -q } else { q })
    }

    fn vector(&mut self) -> Result<VectorExpr> {
        let open = self.pos;
        self.expect(Tok::LParen)?;
        let mut terms = Vec::new();
        loop {
            let at = self.pos;
            let position = terms.len();
            let term = match self.bump() {
                Tok::Adversary => StrategyTerm::Adversary,
                Tok::Current => StrategyTerm::Current,
                Tok::Word(name) => {
                    if position < self.sig.players()
                        && self.sig.form().strategy_index(position, &name).is_none()
                    {
                        return Err(self.error_at(
                            at,
                            ParseErrorKind::UnknownName,
                            format!("player {} has no strategy `{name}`", position + 1),
                        ));
                    }
                    StrategyTerm::Concrete(name)
                }
                _ => {
                    self.pos = at;
                    return Err(self.unexpected("a strategy, `??` or `!!`"));
                }
            };
            terms.push(term);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RParen)?;
        if terms.len() != self.sig.players() {
            return Err(self.error_at(
                open,
                ParseErrorKind::Arity,
                format!(
                    "vector has {} entries but the game has {} players",
                    terms.len(),
                    self.sig.players()
                ),
            ));
        }
        Ok(VectorExpr(terms))
    }

    // ---- programs ----

    fn program(&mut self) -> Result<Program> {
        let mut lhs = self.sequence()?;
        while self.eat(&Tok::Plus) {
            lhs = lhs.or(self.sequence()?);
        }
        Ok(lhs)
    }

    fn sequence(&mut self) -> Result<Program> {
        let mut lhs = self.program_unary()?;
        while self.eat(&Tok::Semi) {
            lhs = lhs.then(self.program_unary()?);
        }
        Ok(lhs)
    }

    fn program_unary(&mut self) -> Result<Program> {
        let mut p = if self.eat(&Tok::Question) {
            Program::test(self.unary()?)
        } else {
            self.program_primary()?
        };
        while self.eat(&Tok::Star) {
            p = p.star();
        }
        Ok(p)
    }

    fn program_primary(&mut self) -> Result<Program> {
        match self.peek().clone() {
            Tok::LParen if self.group_is_vector() => Ok(Program::Vector(self.vector()?)),
            Tok::LParen => {
                self.bump();
                let p = self.program()?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            Tok::Word(w) => {
                let at = self.pos;
                match self.player_number(&w, "ag", at)? {
                    Some(agent) => {
                        self.bump();
                        if self.eat(&Tok::Caret) {
                            Ok(Program::AgentConv(agent))
                        } else {
                            Ok(Program::Agent(agent))
                        }
                    }
                    None => Err(self.unexpected("a program")),
                }
            }
            _ => Err(self.unexpected("a program")),
        }
    }

    // ---- coalition logic ----

    fn cl_formula(&mut self) -> Result<ClFormula> {
        let mut lhs = self.cl_implication()?;
        while self.eat(&Tok::DoubleArrow) {
            let rhs = self.cl_implication()?;
            lhs = ClFormula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn cl_implication(&mut self) -> Result<ClFormula> {
        let lhs = self.cl_disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.cl_implication()?;
            return Ok(ClFormula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn cl_disjunction(&mut self) -> Result<ClFormula> {
        let mut lhs = self.cl_conjunction()?;
        while self.eat(&Tok::Pipe) {
            lhs = ClFormula::or(lhs, self.cl_conjunction()?);
        }
        Ok(lhs)
    }

    fn cl_conjunction(&mut self) -> Result<ClFormula> {
        let mut lhs = self.cl_unary()?;
        while self.eat(&Tok::Amp) {
            lhs = ClFormula::and(lhs, self.cl_unary()?);
        }
        Ok(lhs)
    }

    fn cl_unary(&mut self) -> Result<ClFormula> {
        match self.peek() {
            Tok::Tilde => {
                self.bump();
                Ok(ClFormula::not(self.cl_unary()?))
            }
            Tok::LBracket => {
                self.bump();
                let c_pos = self.pos;
                match self.bump() {
                    Tok::Word(w) if w == "C" => {}
                    _ => return Err(self.error_at(c_pos, ParseErrorKind::Syntax, "expected `C`")),
                }
                self.expect(Tok::LBrace)?;
                let mut members = Vec::new();
                if !self.eat(&Tok::RBrace) {
                    loop {
                        let at = self.pos;
                        let word = match self.bump() {
                            Tok::Word(w) => w,
                            _ => return Err(self.error_at(at, ParseErrorKind::Syntax, "expected a player number")),
                        };
                        match word.parse::<usize>() {
                            Ok(k) if k >= 1 && k <= self.sig.players() => members.push(k - 1),
                            _ => {
                                return Err(self.error_at(
                                    at,
                                    ParseErrorKind::UnknownName,
                                    format!("no player {word}"),
                                ))
                            }
                        }
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::RBrace)?;
                }
                self.expect(Tok::RBracket)?;
                let coalition = Coalition::new(members, self.sig.players())
                    .expect("members already range-checked");
                Ok(ClFormula::coal_box(coalition, self.cl_unary()?))
            }
            Tok::Word(w) if w == "T" => {
                self.bump();
                Ok(ClFormula::Top)
            }
            Tok::LParen => {
                self.bump();
                let f = self.cl_formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Word(_) => {
                let at = self.pos;
                let f = self.atom_formula()?;
                ClFormula::from_propositional(&f).ok_or_else(|| {
                    self.error_at(at, ParseErrorKind::Syntax, "not a coalition-logic formula")
                })
            }
            _ => Err(self.unexpected("a coalition-logic formula")),
        }
    }
}

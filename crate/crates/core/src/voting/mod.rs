//! Ballots, voting rules, and the strategic games voters play when each
//! casts a single vote.
//!
//! In an induced game every voter's strategies are the alternatives. A
//! voter values a winner set by the mean of the Borda scores their true
//! ballot gives its members, so a single top choice is worth `|A|-1` and a
//! three-way tie among three alternatives is worth 1.

mod audit;
mod file;

pub use audit::{
    audit_rule, find_manipulation, rule_catalog, strategy_proof_by_formula, AuditReport, Witness,
};
pub use file::{parse_rule_kind, VotingSpec, VotingSpecError};

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::game::{is_valid_name, GameForm, OutcomeRecord, StrategicGame};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VotingError {
    #[error("unknown alternative `{0}`")]
    UnknownAlternative(String),
    #[error("`{0}` is not usable as an alternative name")]
    BadAlternativeName(String),
    #[error("need at least two alternatives")]
    TooFewAlternatives,
    #[error("need at least two voters")]
    TooFewVoters,
    #[error("alternative `{0}` listed twice")]
    DuplicateAlternative(String),
    #[error("`{0}` is not an ordering of all alternatives")]
    BadBallot(String),
    #[error("empty set of alternatives")]
    EmptySet,
    #[error("voter {} does not exist", .0 + 1)]
    NoSuchVoter(usize),
}

/// A linear order of all alternatives, best first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ballot(Vec<String>);

impl Ballot {
    /// `order` must be a permutation of `alternatives`.
    pub fn new(order: Vec<String>, alternatives: &[String]) -> Result<Self, VotingError> {
        let given: BTreeSet<&String> = order.iter().collect();
        let wanted: BTreeSet<&String> = alternatives.iter().collect();
        if given.len() != order.len() || given != wanted {
            return Err(VotingError::BadBallot(order.join(",")));
        }
        Ok(Ballot(order))
    }

    /// `"abc"` when every alternative is one character, else `"a,b,c"`.
    pub fn parse(text: &str, alternatives: &[String]) -> Result<Self, VotingError> {
        let order: Vec<String> = if alternatives.iter().all(|a| a.chars().count() == 1) && !text.contains(',') {
            text.trim().chars().map(String::from).collect()
        } else {
            text.split(',').map(|s| s.trim().to_string()).collect()
        };
        Ballot::new(order, alternatives).map_err(|_| VotingError::BadBallot(text.to_string()))
    }

    pub fn order(&self) -> &[String] {
        &self.0
    }

    pub fn top(&self) -> &str {
        &self.0[0]
    }

    /// Rank from the top, starting at 0.
    pub fn position(&self, x: &str) -> Option<usize> {
        self.0.iter().position(|a| a == x)
    }

    pub fn prefers(&self, x: &str, y: &str) -> bool {
        matches!((self.position(x), self.position(y)), (Some(p), Some(q)) if p < q)
    }

    /// Every ballot over `alternatives`, in lexicographic order of
    /// positions in `alternatives`.
    pub fn all(alternatives: &[String]) -> Vec<Ballot> {
        alternatives
            .iter()
            .cloned()
            .permutations(alternatives.len())
            .map(Ballot)
            .collect()
    }
}

impl fmt::Display for Ballot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|a| a.chars().count() == 1) {
            f.write_str(&self.0.concat())
        } else {
            f.write_str(&self.0.join(","))
        }
    }
}

/// One ballot per voter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BallotProfile(Vec<Ballot>);

impl BallotProfile {
    pub fn new(ballots: Vec<Ballot>) -> Result<Self, VotingError> {
        if ballots.len() < 2 {
            return Err(VotingError::TooFewVoters);
        }
        let first: BTreeSet<&String> = ballots[0].0.iter().collect();
        if let Some(b) = ballots.iter().find(|b| b.0.iter().collect::<BTreeSet<_>>() != first) {
            return Err(VotingError::BadBallot(b.to_string()));
        }
        Ok(BallotProfile(ballots))
    }

    pub fn parse<S: AsRef<str>>(ballots: &[S], alternatives: &[String]) -> Result<Self, VotingError> {
        BallotProfile::new(
            ballots
                .iter()
                .map(|b| Ballot::parse(b.as_ref(), alternatives))
                .collect::<Result<_, _>>()?,
        )
    }

    pub fn ballots(&self) -> &[Ballot] {
        &self.0
    }

    pub fn voters(&self) -> usize {
        self.0.len()
    }

    /// Everyone's top choice: the truthful vote vector.
    pub fn tops(&self) -> Vec<String> {
        self.0.iter().map(|b| b.top().to_string()).collect()
    }

    pub fn with(&self, voter: usize, ballot: Ballot) -> BallotProfile {
        let mut b = self.0.clone();
        b[voter] = ballot;
        BallotProfile(b)
    }
}

impl fmt::Display for BallotProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleKind {
    /// Everyone with the most votes wins.
    Plurality,
    /// Whoever has more than half the votes; otherwise everyone ties.
    AbsoluteMajority,
    /// The base rule's winner ranked highest by a fixed ballot.
    ResoluteWrap { base: Box<RuleKind>, tiebreak: Ballot },
    /// Voter `i`'s vote decides.
    Dictator(usize),
    /// Always the same alternative.
    Constant(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VotingRule {
    kind: RuleKind,
    alternatives: Vec<String>,
}

impl VotingRule {
    pub fn new(kind: RuleKind, alternatives: Vec<String>) -> Result<Self, VotingError> {
        if alternatives.len() < 2 {
            return Err(VotingError::TooFewAlternatives);
        }
        let mut seen = BTreeSet::new();
        for a in &alternatives {
            if !is_valid_name(a) {
                return Err(VotingError::BadAlternativeName(a.clone()));
            }
            if !seen.insert(a) {
                return Err(VotingError::DuplicateAlternative(a.clone()));
            }
        }
        check_kind(&kind, &alternatives)?;
        Ok(VotingRule { kind, alternatives })
    }

    pub fn plurality(alternatives: &[&str]) -> Self {
        Self::new(RuleKind::Plurality, names(alternatives)).expect("valid alternatives")
    }

    pub fn kind(&self) -> &RuleKind {
        &self.kind
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    /// Winners for a vector of cast votes (one alternative per voter).
    pub fn apply<S: AsRef<str>>(&self, votes: &[S]) -> Result<BTreeSet<String>, VotingError> {
        if let Some(v) = votes.iter().find(|v| !self.alternatives.iter().any(|a| a == v.as_ref())) {
            return Err(VotingError::UnknownAlternative(v.as_ref().to_string()));
        }
        let votes: Vec<&str> = votes.iter().map(AsRef::as_ref).collect();
        apply_kind(&self.kind, &self.alternatives, &votes)
    }

    /// Winners when everyone votes for their top choice.
    pub fn apply_ballots(&self, profile: &BallotProfile) -> Result<BTreeSet<String>, VotingError> {
        self.apply(&profile.tops())
    }

    /// Short name, in the same syntax as voting spec files where possible.
    pub fn name(&self) -> String {
        kind_name(&self.kind)
    }
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn check_kind(kind: &RuleKind, alternatives: &[String]) -> Result<(), VotingError> {
    match kind {
        RuleKind::ResoluteWrap { base, tiebreak } => {
            Ballot::new(tiebreak.0.clone(), alternatives)?;
            check_kind(base, alternatives)
        }
        RuleKind::Constant(x) if !alternatives.contains(x) => Err(VotingError::UnknownAlternative(x.clone())),
        _ => Ok(()),
    }
}

fn kind_name(kind: &RuleKind) -> String {
    match kind {
        RuleKind::Plurality => "plurality".into(),
        RuleKind::AbsoluteMajority => "absolute_majority".into(),
        RuleKind::ResoluteWrap { base, tiebreak } => format!("{} tiebreak {tiebreak}", kind_name(base)),
        RuleKind::Dictator(i) => format!("dictator:{}", i + 1),
        RuleKind::Constant(x) => format!("constant:{x}"),
    }
}

fn apply_kind(kind: &RuleKind, alternatives: &[String], votes: &[&str]) -> Result<BTreeSet<String>, VotingError> {
    let count = |a: &str| votes.iter().filter(|&&v| v == a).count();
    Ok(match kind {
        RuleKind::Plurality => {
            let best = alternatives.iter().map(|a| count(a)).max().unwrap_or(0);
            alternatives.iter().filter(|a| count(a) == best).cloned().collect()
        }
        RuleKind::AbsoluteMajority => match alternatives.iter().find(|a| 2 * count(a) > votes.len()) {
            Some(a) => BTreeSet::from([a.clone()]),
            None => alternatives.iter().cloned().collect(),
        },
        RuleKind::ResoluteWrap { base, tiebreak } => {
            let winners = apply_kind(base, alternatives, votes)?;
            let first = tiebreak
                .order()
                .iter()
                .find(|a| winners.contains(*a))
                .expect("base rule returns a non-empty subset");
            BTreeSet::from([first.clone()])
        }
        RuleKind::Dictator(i) => {
            let v = votes.get(*i).ok_or(VotingError::NoSuchVoter(*i))?;
            BTreeSet::from([v.to_string()])
        }
        RuleKind::Constant(x) => BTreeSet::from([x.clone()]),
    })
}

/// Applies a rule to a vector of cast votes.
pub fn apply_rule<S: AsRef<str>>(rule: &VotingRule, votes: &[S]) -> Result<BTreeSet<String>, VotingError> {
    rule.apply(votes)
}

/// `X` weakly dominates `Y` under `ballot`: every member of `X` is equal to
/// or ranked above every member of `Y`, and some pair is strictly ordered.
pub fn set_better(x: &BTreeSet<String>, y: &BTreeSet<String>, ballot: &Ballot) -> Result<bool, VotingError> {
    if x.is_empty() || y.is_empty() {
        return Err(VotingError::EmptySet);
    }
    if let Some(bad) = x.iter().chain(y).find(|a| ballot.position(a).is_none()) {
        return Err(VotingError::UnknownAlternative(bad.clone()));
    }
    let weak = x.iter().all(|a| y.iter().all(|b| a == b || ballot.prefers(a, b)));
    let strict = x.iter().any(|a| y.iter().any(|b| ballot.prefers(a, b)));
    Ok(weak && strict)
}

/// Mean Borda score of the winner set under `ballot`.
pub fn outcome_payoff(winners: &BTreeSet<String>, ballot: &Ballot) -> Result<Rational, VotingError> {
    if winners.is_empty() {
        return Err(VotingError::EmptySet);
    }
    let m = ballot.order().len() as i64;
    let mut total = 0i64;
    for w in winners {
        let p = ballot.position(w).ok_or_else(|| VotingError::UnknownAlternative(w.clone()))?;
        total += m - 1 - p as i64;
    }
    Ok(Rational::new(total, winners.len() as i64))
}

/// The game where each voter casts one vote and is paid by their true
/// ballot.
pub fn induced_game(rule: &VotingRule, true_ballots: &BallotProfile) -> Result<StrategicGame, VotingError> {
    let alts = rule.alternatives();
    for b in true_ballots.ballots() {
        Ballot::new(b.0.clone(), alts)?;
    }
    let n = true_ballots.voters();
    let form = GameForm::new(vec![alts.to_vec(); n]).map_err(|_| VotingError::TooFewVoters)?;
    let mut outcomes = Vec::with_capacity(form.profile_count());
    for p in form.all_profiles() {
        let votes: Vec<&str> = (0..n).map(|i| alts[p[i]].as_str()).collect();
        let winners = rule.apply(&votes)?;
        let utils = true_ballots
            .ballots()
            .iter()
            .map(|b| outcome_payoff(&winners, b))
            .collect::<Result<_, _>>()?;
        outcomes.push(OutcomeRecord {
            label: winners.iter().join(","),
            winners: Some(winners),
            utils,
        });
    }
    Ok(StrategicGame::new(form, outcomes).expect("outcomes match the form"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Vec<String> {
        names(&["a", "b", "c"])
    }

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn ballot(s: &str) -> Ballot {
        Ballot::parse(s, &abc()).unwrap()
    }

    #[test]
    fn plurality_on_six_ballots() {
        let p = BallotProfile::parse(&["abc", "abc", "bca", "abc", "cab", "acb"], &abc()).unwrap();
        let rule = VotingRule::plurality(&["a", "b", "c"]);
        assert_eq!(rule.apply_ballots(&p).unwrap(), set(&["a"]));
        assert_eq!(rule.apply(&["a", "b", "c"]).unwrap(), set(&["a", "b", "c"]));
        assert!(rule.apply(&["a", "b", "z"]).is_err());
    }

    #[test]
    fn tiebreak_and_other_rules() {
        let wrap = VotingRule::new(
            RuleKind::ResoluteWrap {
                base: Box::new(RuleKind::Plurality),
                tiebreak: ballot("abc"),
            },
            abc(),
        )
        .unwrap();
        assert_eq!(wrap.apply(&["a", "b", "c"]).unwrap(), set(&["a"]));
        assert_eq!(wrap.apply(&["b", "c", "c"]).unwrap(), set(&["c"]));
        let maj = VotingRule::new(RuleKind::AbsoluteMajority, abc()).unwrap();
        assert_eq!(maj.apply(&["b", "b", "a"]).unwrap(), set(&["b"]));
        assert_eq!(maj.apply(&["a", "b", "c"]).unwrap(), set(&["a", "b", "c"]));
        let dict = VotingRule::new(RuleKind::Dictator(1), abc()).unwrap();
        assert_eq!(dict.apply(&["a", "c", "c"]).unwrap(), set(&["c"]));
        let konst = VotingRule::new(RuleKind::Constant("b".into()), abc()).unwrap();
        assert_eq!(konst.apply(&["a", "a", "a"]).unwrap(), set(&["b"]));
        assert!(VotingRule::new(RuleKind::Constant("z".into()), abc()).is_err());
    }

    #[test]
    fn set_betterness() {
        let b = ballot("abc");
        assert!(set_better(&set(&["a"]), &set(&["c"]), &b).unwrap());
        assert!(!set_better(&set(&["a", "b", "c"]), &set(&["b"]), &b).unwrap());
        assert!(!set_better(&set(&["b"]), &set(&["a", "b", "c"]), &b).unwrap());
        assert!(!set_better(&set(&["a"]), &set(&["a"]), &b).unwrap());
        assert!(set_better(&set(&[]), &set(&["a"]), &b).is_err());
    }

    #[test]
    fn mean_borda() {
        let b = ballot("abc");
        assert_eq!(outcome_payoff(&set(&["a"]), &b).unwrap(), Rational::from_integer(2));
        assert_eq!(outcome_payoff(&set(&["a", "b", "c"]), &b).unwrap(), Rational::from_integer(1));
        assert_eq!(outcome_payoff(&set(&["b", "c"]), &b).unwrap(), Rational::new(1, 2));
    }

    #[test]
    fn ballots_parse_and_print() {
        assert_eq!(ballot("bca").to_string(), "bca");
        assert!(Ballot::parse("abb", &abc()).is_err());
        assert!(Ballot::parse("ab", &abc()).is_err());
        let long = names(&["red", "green"]);
        let b = Ballot::parse("green,red", &long).unwrap();
        assert_eq!(b.top(), "green");
        assert_eq!(b.to_string(), "green,red");
        assert_eq!(Ballot::all(&abc()).iter().map(ToString::to_string).collect::<Vec<_>>(),
            ["abc", "acb", "bac", "bca", "cab", "cba"]);
    }

    #[test]
    fn induced_game_truthful_state() {
        let rule = VotingRule::plurality(&["a", "b", "c"]);
        let truth = BallotProfile::parse(&["abc", "bca", "cab"], &abc()).unwrap();
        let g = induced_game(&rule, &truth).unwrap();
        let q = Rational::from_integer;
        let at = |k: &str| g.outcome(&g.form().parse_profile_key(k).unwrap()).clone();
        assert_eq!(at("a,b,c").utils, vec![q(1), q(1), q(1)]);
        assert_eq!(at("a,b,c").label, "a,b,c");
        assert_eq!(at("a,a,a").utils, vec![q(2), q(0), q(1)]);
    }
}

//! Worked examples: the prisoner's dilemma, three voters with cyclic
//! preferences under plurality (with and without tie-breaking), and a
//! player who mistakes a committed opponent's game for the full one.

use std::collections::BTreeSet;

use crate::eval::{confusion_model, restrict, satisfies, Checker, IntensionalModel, MaslModel, Structure};
use crate::game::{nash_set, weakly_dominant, GameForm, StrategicGame};
use crate::lang::{dictator, knowing_dictator, nash_here, parse_formula, plurality_rule, weak_dominance, Signature};
use crate::rational::{format_rational, Rational};
use crate::voting::{induced_game, Ballot, BallotProfile, RuleKind, VotingRule};

/// The prisoner's dilemma with strategies `c` (cooperate) and `d`.
pub fn pd_game() -> StrategicGame {
    let table = [(2, 2), (0, 3), (3, 0), (1, 1)];
    let form = GameForm::uniform(2, &["c", "d"]).expect("valid form");
    let index = form.clone();
    StrategicGame::from_payoffs(form, |p| {
        let (a, b) = table[index.profile_index(p)];
        vec![Rational::from_integer(a), Rational::from_integer(b)]
    })
    .expect("valid game")
}

pub fn abc() -> Vec<String> {
    ["a", "b", "c"].map(String::from).to_vec()
}

/// True ballots `abc`, `bca`, `cab`.
pub fn cyclic_ballots() -> BallotProfile {
    BallotProfile::parse(&["abc", "bca", "cab"], &abc()).expect("valid ballots")
}

pub fn plurality_rule_abc(tiebreak: bool) -> VotingRule {
    let kind = if tiebreak {
        RuleKind::ResoluteWrap {
            base: Box::new(RuleKind::Plurality),
            tiebreak: Ballot::parse("abc", &abc()).expect("valid ballot"),
        }
    } else {
        RuleKind::Plurality
    };
    VotingRule::new(kind, abc()).expect("valid rule")
}

/// The three-voter plurality game over the cyclic ballots.
pub fn vote3_game(tiebreak: bool) -> StrategicGame {
    induced_game(&plurality_rule_abc(tiebreak), &cyclic_ballots()).expect("valid game")
}

/// The prisoner's dilemma where player 1 is committed to `c`, next to the
/// full game; player 2 cannot tell the two apart.
pub fn fig5_model() -> IntensionalModel {
    let game = pd_game();
    let committed = restrict(game.form(), &[vec!["c"], vec!["c", "d"]]).expect("valid restriction");
    confusion_model(&game, &committed, &BTreeSet::from([1])).expect("valid model")
}

/// The world where player 1 is committed and the profile is `(c,d)`.
pub const FIG5_ACTUAL: &str = "restricted:c,d";

pub fn format_utils(utils: &[Rational]) -> String {
    let parts: Vec<String> = utils.iter().map(format_rational).collect();
    format!("({})", parts.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemoReport {
    pub name: String,
    pub lines: Vec<String>,
    pub checks: Vec<(String, bool)>,
}

impl DemoReport {
    fn new(name: &str) -> Self {
        DemoReport {
            name: name.to_string(),
            lines: Vec::new(),
            checks: Vec::new(),
        }
    }

    fn check(&mut self, claim: impl Into<String>, ok: bool) {
        self.checks.push((claim.into(), ok));
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

pub const DEMOS: [&str; 4] = ["pd", "vote3", "vote3tb", "fig5"];

pub fn run_demo(name: &str) -> Option<DemoReport> {
    Some(match name {
        "pd" => demo_pd(),
        "vote3" => demo_vote(false),
        "vote3tb" => demo_vote(true),
        "fig5" => demo_fig5(),
        _ => return None,
    })
}

fn table(report: &mut DemoReport, model: &MaslModel) {
    let game = model.game();
    for s in 0..model.state_count() {
        let o = game.outcome_at(s);
        report
            .lines
            .push(format!("{:<8} {:<8} {}", model.state_key(s), o.label, format_utils(&o.utils)));
    }
}

fn state_keys<M: Structure>(model: &M, states: impl Iterator<Item = usize>) -> Vec<String> {
    states.map(|s| model.state_key(s)).collect()
}

fn demo_pd() -> DemoReport {
    let mut r = DemoReport::new("pd");
    let model = MaslModel::new(pd_game());
    let sig = Signature::of_game(model.game());
    table(&mut r, &model);
    let checker = Checker::new(&model);
    let nash = checker.extension(&nash_here(&sig)).expect("built from the game");
    let oracle: Vec<String> = nash_set(model.game()).iter().map(|p| model.game().form().profile_key(p)).collect();
    let by_logic = state_keys(&model, nash.iter());
    r.lines.push(format!("nash equilibria: {}", by_logic.join(" ")));
    r.check("the only Nash equilibrium is (d,d)", by_logic == ["d,d"] && oracle == by_logic);
    let dom = checker.extension(&weak_dominance(&sig, 0, "d").expect("d is a strategy")).expect("evaluates");
    r.check(
        "d is weakly dominant for player 1",
        dom.is_full() && weakly_dominant(model.game(), 0, 1).unwrap_or(false),
    );
    let f = parse_formula("[(d,d)] u1=1", &sig).expect("parses");
    let cc = model.find_state("c,c").expect("state exists");
    r.check("[(d,d)] u1=1 holds at (c,c)", satisfies(&model, cc, &f).unwrap_or(false));
    r
}

fn demo_vote(tiebreak: bool) -> DemoReport {
    let mut r = DemoReport::new(if tiebreak { "vote3tb" } else { "vote3" });
    let model = MaslModel::new(vote3_game(tiebreak));
    let sig = Signature::of_game(model.game());
    table(&mut r, &model);
    let checker = Checker::new(&model);
    let nash = checker.extension(&nash_here(&sig)).expect("built from the game");
    r.lines.push(format!("nash equilibria: {}", state_keys(&model, nash.iter()).join(" ")));
    let utils = |key: &str| format_utils(&model.game().outcome_at(model.find_state(key).expect("state")).utils);
    let at = |key: &str| model.find_state(key).expect("state exists");
    if tiebreak {
        r.check("truthful votes (a,b,c) pay (2,0,1)", utils("a,b,c") == "(2,0,1)");
        r.check("(a,b,c) is not a Nash equilibrium", !nash.contains(at("a,b,c")));
        r.check("voter 2 switching to c pays (0,1,2)", utils("a,c,c") == "(0,1,2)");
        r.check("(a,c,c) is a Nash equilibrium", nash.contains(at("a,c,c")));
    } else {
        r.check("truthful votes (a,b,c) pay (1,1,1)", utils("a,b,c") == "(1,1,1)");
        r.check("(a,b,c) is a Nash equilibrium", nash.contains(at("a,b,c")));
        let plurality = plurality_rule(&sig).expect("voting game");
        r.check(
            "the outcome function is plurality",
            checker.extension(&plurality).map(|e| e.is_full()).unwrap_or(false),
        );
    }
    r
}

fn demo_fig5() -> DemoReport {
    let mut r = DemoReport::new("fig5");
    let model = fig5_model();
    let sig = Signature::of_game(model.game());
    let actual = model.find_state(FIG5_ACTUAL).expect("actual world exists");
    for w in 0..model.state_count() {
        let seen = model.agents()[1].successors(w);
        r.lines.push(format!(
            "{:<16} player 2 considers {}",
            model.state_key(w),
            state_keys(&model, seen.iter()).join(" ")
        ));
    }
    let checker = Checker::new(&model);
    let holds = |f| checker.satisfies(actual, &f).unwrap_or(false);
    r.check("player 2 is a dictator at the actual world", holds(dictator(&sig, 1).expect("player 2")));
    r.check(
        "player 2 does not know it",
        !holds(knowing_dictator(&sig, 1).expect("player 2")),
    );
    r
}

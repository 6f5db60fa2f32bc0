//! Exhaustive rule audits over every ballot profile of a given size.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{induced_game, set_better, Ballot, BallotProfile, RuleKind, VotingError, VotingRule};
use crate::eval::{Checker, MaslModel, Structure};
use crate::lang::{dictator, strategy_proof_inner, Signature};
use crate::par::Exec;

/// A profitable unilateral deviation. Voters are one-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub profile: Vec<String>,
    pub voter: usize,
    pub deviation: String,
    pub before: Vec<String>,
    pub after: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditReport {
    pub rule: String,
    pub voters: usize,
    pub alternatives: Vec<String>,
    pub profiles_checked: usize,
    pub resolute: bool,
    pub strategy_proof: bool,
    pub witness: Option<Witness>,
    pub non_imposed: bool,
    /// Distinct winner sets over all ballot profiles.
    pub outcome_sets: usize,
    /// One-based voters who are dictators in every induced game.
    pub dictators: Vec<usize>,
    pub gs_consistent: bool,
    pub notes: Vec<String>,
}

/// Ballot profile number `k`, voter 1 varying slowest.
fn profile_at(ballots: &[Ballot], voters: usize, mut k: usize) -> BallotProfile {
    let m = ballots.len();
    let mut out = vec![ballots[0].clone(); voters];
    for slot in out.iter_mut().rev() {
        *slot = ballots[k % m].clone();
        k /= m;
    }
    BallotProfile(out)
}

fn check_voters(kind: &RuleKind, voters: usize) -> Result<(), VotingError> {
    match kind {
        RuleKind::Dictator(i) if *i >= voters => Err(VotingError::NoSuchVoter(*i)),
        RuleKind::ResoluteWrap { base, .. } => check_voters(base, voters),
        _ => Ok(()),
    }
}

/// The first voter and replacement ballot (in enumeration order) that
/// gives that voter a strictly better winner set by their own ballot.
pub fn find_manipulation(rule: &VotingRule, profile: &BallotProfile) -> Result<Option<Witness>, VotingError> {
    let before = rule.apply_ballots(profile)?;
    let ballots = Ballot::all(rule.alternatives());
    for (i, own) in profile.ballots().iter().enumerate() {
        for d in &ballots {
            if d == own {
                continue;
            }
            let after = rule.apply_ballots(&profile.with(i, d.clone()))?;
            if set_better(&after, &before, own)? {
                return Ok(Some(Witness {
                    profile: profile.ballots().iter().map(ToString::to_string).collect(),
                    voter: i + 1,
                    deviation: d.to_string(),
                    before: before.into_iter().collect(),
                    after: after.into_iter().collect(),
                }));
            }
        }
    }
    Ok(None)
}

fn dictators_in(game_rule: &VotingRule, truth: &BallotProfile) -> Vec<bool> {
    let game = induced_game(game_rule, truth).expect("ballots come from the rule's alternatives");
    let model = MaslModel::new(game);
    let sig = Signature::of_game(model.game());
    let checker = Checker::new(&model);
    (0..truth.voters())
        .map(|i| {
            let f = dictator(&sig, i).expect("voter in range");
            checker.extension(&f).expect("formula built from the game").is_full()
        })
        .collect()
}

/// Checks resoluteness, strategy-proofness, non-imposition and
/// dictatorship of `rule` over all `|A|!^voters` ballot profiles.
pub fn audit_rule(rule: &VotingRule, voters: usize, exec: Exec) -> Result<AuditReport, VotingError> {
    if voters < 2 {
        return Err(VotingError::TooFewVoters);
    }
    check_voters(rule.kind(), voters)?;
    let alts = rule.alternatives();
    let ballots = Ballot::all(alts);
    let total = ballots.len().pow(voters as u32);
    let at = |k| profile_at(&ballots, voters, k);

    let winners = exec.map_range(0..total, |k| rule.apply_ballots(&at(k)).expect("checked above"));
    let resolute = winners.iter().all(|w| w.len() == 1);
    let outcome_sets = winners.iter().collect::<BTreeSet<_>>().len();
    let mut notes = Vec::new();
    if alts.len() < 3 {
        notes.push("fewer than three alternatives, so the rule cannot be non-imposed".to_string());
    }
    let non_imposed = outcome_sets >= 3;

    let witness = exec.find_first(0..total, |k| find_manipulation(rule, &at(k)).expect("checked above"));
    let strategy_proof = witness.is_none();

    let per_profile = exec.map_range(0..total, |k| dictators_in(rule, &at(k)));
    let dictators: Vec<usize> = (0..voters)
        .filter(|&i| per_profile.iter().all(|d| d[i]))
        .map(|i| i + 1)
        .collect();

    let gs_consistent = !(resolute && strategy_proof && non_imposed) || !dictators.is_empty();
    Ok(AuditReport {
        rule: rule.name(),
        voters,
        alternatives: alts.to_vec(),
        profiles_checked: total,
        resolute,
        strategy_proof,
        witness,
        non_imposed,
        outcome_sets,
        dictators,
        gs_consistent,
        notes,
    })
}

/// Strategy-proofness read off the logic: in the game induced by every
/// ballot profile, no voter can strictly improve on the truthful vote
/// vector by switching alone.
pub fn strategy_proof_by_formula(rule: &VotingRule, voters: usize, exec: Exec) -> Result<bool, VotingError> {
    if voters < 2 {
        return Err(VotingError::TooFewVoters);
    }
    check_voters(rule.kind(), voters)?;
    let ballots = Ballot::all(rule.alternatives());
    let total = ballots.len().pow(voters as u32);
    Ok(exec.all(0..total, |k| {
        let truth = profile_at(&ballots, voters, k);
        let model = MaslModel::new(induced_game(rule, &truth).expect("valid ballots"));
        let sig = Signature::of_game(model.game());
        let key = truth.tops().join(",");
        let state = model.find_state(&key).expect("tops are strategies");
        Checker::new(&model)
            .satisfies(state, &strategy_proof_inner(&sig))
            .expect("formula built from the game")
    }))
}

/// The rules audited by default: plurality and absolute majority, both
/// plain and with ties broken by the alternatives' listed order, a
/// dictatorship per voter, and a constant rule.
pub fn rule_catalog(alternatives: &[String], voters: usize) -> Result<Vec<VotingRule>, VotingError> {
    let tiebreak = Ballot::new(alternatives.to_vec(), alternatives)?;
    let wrap = |base: RuleKind| RuleKind::ResoluteWrap {
        base: Box::new(base),
        tiebreak: tiebreak.clone(),
    };
    let mut kinds = vec![
        RuleKind::Plurality,
        RuleKind::AbsoluteMajority,
        wrap(RuleKind::Plurality),
        wrap(RuleKind::AbsoluteMajority),
    ];
    kinds.extend((0..voters).map(RuleKind::Dictator));
    kinds.push(RuleKind::Constant(alternatives[0].clone()));
    kinds
        .into_iter()
        .map(|k| VotingRule::new(k, alternatives.to_vec()))
        .collect()
}

//! Voting spec files:
//!
//! ```json
//! {"alternatives": ["a","b","c"],
//!  "ballots": ["abc","bca","cab"],
//!  "rule": "plurality",
//!  "tiebreak": "abc"}
//! ```
//!
//! `rule` is `plurality`, `absolute_majority`, `dictator:<voter>` (one-based)
//! or `constant:<alternative>`. With `tiebreak` the rule is made resolute by
//! that order.

use std::str::FromStr;

use serde::Deserialize;
use thiserror::Error;

use super::{Ballot, BallotProfile, RuleKind, VotingError, VotingRule};

#[derive(Debug, Error)]
pub enum VotingSpecError {
    #[error("malformed voting spec: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error(transparent)]
    Voting(#[from] VotingError),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    alternatives: Vec<String>,
    ballots: Vec<String>,
    rule: String,
    #[serde(default)]
    tiebreak: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VotingSpec {
    pub rule: VotingRule,
    pub ballots: BallotProfile,
}

impl FromStr for VotingSpec {
    type Err = VotingSpecError;

    fn from_str(text: &str) -> Result<Self, VotingSpecError> {
        let raw: RawSpec = serde_json::from_str(text)?;
        let base = parse_rule_kind(&raw.rule)?;
        let kind = match &raw.tiebreak {
            Some(t) => RuleKind::ResoluteWrap {
                base: Box::new(base),
                tiebreak: Ballot::parse(t, &raw.alternatives)?,
            },
            None => base,
        };
        let rule = VotingRule::new(kind, raw.alternatives.clone())?;
        let ballots = BallotProfile::parse(&raw.ballots, &raw.alternatives)?;
        if let RuleKind::Dictator(i) = base_kind(rule.kind()) {
            if *i >= ballots.voters() {
                return Err(VotingError::NoSuchVoter(*i).into());
            }
        }
        Ok(VotingSpec { rule, ballots })
    }
}

fn base_kind(kind: &RuleKind) -> &RuleKind {
    match kind {
        RuleKind::ResoluteWrap { base, .. } => base_kind(base),
        k => k,
    }
}

/// Parses the `rule` field of a spec file.
pub fn parse_rule_kind(text: &str) -> Result<RuleKind, VotingSpecError> {
    let unknown = || VotingSpecError::UnknownRule(text.to_string());
    Ok(match text.split_once(':') {
        None if text == "plurality" => RuleKind::Plurality,
        None if text == "absolute_majority" => RuleKind::AbsoluteMajority,
        Some(("dictator", i)) => match i.parse::<usize>() {
            Ok(k) if k >= 1 => RuleKind::Dictator(k - 1),
            _ => return Err(unknown()),
        },
        Some(("constant", x)) if !x.is_empty() => RuleKind::Constant(x.to_string()),
        _ => return Err(unknown()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_a_tiebreak_spec() {
        let spec = VotingSpec::from_str(
            r#"{"alternatives":["a","b","c"],"ballots":["abc","bca","cab"],
                "rule":"plurality","tiebreak":"abc"}"#,
        )
        .unwrap();
        assert_eq!(spec.ballots.voters(), 3);
        assert_eq!(spec.rule.apply(&["a", "b", "c"]).unwrap().len(), 1);
        assert_eq!(spec.rule.name(), "plurality tiebreak abc");
    }

    #[test]
    fn rejects_bad_rules() {
        let spec = |rule: &str| {
            VotingSpec::from_str(&format!(
                r#"{{"alternatives":["a","b"],"ballots":["ab","ba"],"rule":"{rule}"}}"#
            ))
        };
        assert!(spec("borda").is_err());
        assert!(spec("dictator:0").is_err());
        assert!(spec("dictator:3").is_err());
        assert!(spec("constant:z").is_err());
        assert!(spec("dictator:2").is_ok());
        assert!(spec("constant:b").is_ok());
    }
}

use masl_core::demo::abc;
use masl_core::par::Exec;
use masl_core::voting::{audit_rule, rule_catalog, strategy_proof_by_formula};

// The catalog's rules only look at top choices, so deviations in the
// induced game cover every manipulation the ballot-level audit can find.
#[test]
fn formula_and_audit_agree_on_strategy_proofness() {
    for voters in [2, 3] {
        for rule in rule_catalog(&abc(), voters).unwrap() {
            let audit = audit_rule(&rule, voters, Exec::Parallel).unwrap();
            let by_formula = strategy_proof_by_formula(&rule, voters, Exec::Parallel).unwrap();
            assert_eq!(by_formula, audit.strategy_proof, "{} with {voters} voters", rule.name());
        }
    }
}

#[test]
fn audits_do_not_depend_on_the_mode() {
    for rule in rule_catalog(&abc(), 3).unwrap() {
        assert_eq!(
            audit_rule(&rule, 3, Exec::Sequential).unwrap(),
            audit_rule(&rule, 3, Exec::Parallel).unwrap()
        );
    }
}

//! Acceptance checks, one line per criterion. Runs as a plain binary so the
//! report is always printed; exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use masl_core::calculus::{functionality_shape, validity_report, Instance, AxiomSchema};
use masl_core::demo::{cyclic_ballots, fig5_model, pd_game, plurality_rule_abc, vote3_game, FIG5_ACTUAL};
use masl_core::eval::{Checker, MaslModel, Structure};
use masl_core::lang::{
    dictator, knowing_dictator, nash_here, parse_formula, parse_program, render_formula, render_program,
    Signature, StrategyTerm, VectorExpr,
};
use masl_core::par::Exec;
use masl_core::rational::Rational;
use masl_core::sample::{rng, AstSampler};
use masl_core::sweep::{
    dominance_sweep, epistemic_axiom_sweep, nash_sweep, random_games, theorem2_sweep, vector_axiom_sweep,
};
use masl_core::voting::{audit_rule, find_manipulation, rule_catalog, RuleKind, VotingRule};
use masl_core::game::GameForm;

const GAME_SEED: u64 = 20_240_601;
const GAMES: usize = 120;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

/// Payoff tables as printed for the cyclic ballots: one block per vote of
/// voter 1, rows by voter 2's vote, columns by voter 3's.
const PLURALITY_TABLE: &str = "
    201 201 201  201 120 111  201 111 012
    201 120 111  120 120 120  111 120 012
    201 111 012  111 120 012  012 012 012";

const TIEBREAK_TABLE: &str = "
    201 201 201  201 120 201  201 201 012
    201 120 201  120 120 120  201 120 012
    201 201 012  201 120 012  012 012 012";

/// Rows of the table text are voter 2's vote; within a row the three
/// groups are voter 1's blocks and each group lists voter 3's votes.
fn table_entry(table: &str, v1: usize, v2: usize, v3: usize) -> Vec<Rational> {
    let rows: Vec<Vec<&str>> = table
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().collect())
        .collect();
    rows[v2][3 * v1 + v3]
        .chars()
        .map(|c| Rational::from_integer(c.to_digit(10).unwrap() as i64))
        .collect()
}

fn payoff_tables() -> Outcome {
    let mut compared = 0;
    for (tiebreak, table) in [(false, PLURALITY_TABLE), (true, TIEBREAK_TABLE)] {
        let game = vote3_game(tiebreak);
        for p in game.form().all_profiles() {
            let expected = table_entry(table, p[0], p[1], p[2]);
            if game.outcome(&p).utils != expected {
                return Err(format!(
                    "{} at {}: got {:?}, expected {:?}",
                    if tiebreak { "tie-break" } else { "plurality" },
                    game.form().profile_key(&p),
                    game.outcome(&p).utils,
                    expected
                ));
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} payoff vectors match"))
}

fn nash_claims() -> Outcome {
    let plain = MaslModel::new(vote3_game(false));
    let tb = MaslModel::new(vote3_game(true));
    let ext = |m: &MaslModel| {
        Checker::new(m)
            .extension(&nash_here(&Signature::of_game(m.game())))
            .map_err(|e| e.to_string())
    };
    let (e1, e2) = (ext(&plain)?, ext(&tb)?);
    let at = |m: &MaslModel, k: &str| m.find_state(k).unwrap();
    let checks = [
        ("(a,b,c) Nash under plurality", e1.contains(at(&plain, "a,b,c"))),
        ("(a,b,c) not Nash with tie-break", !e2.contains(at(&tb, "a,b,c"))),
        ("(a,c,c) Nash with tie-break", e2.contains(at(&tb, "a,c,c"))),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((claim, _)) => Err(format!("failed: {claim}")),
        None => Ok("all three claims hold".into()),
    }
}

fn oracle_agreement() -> Outcome {
    let games = random_games(GAME_SEED, GAMES);
    let nash = nash_sweep(&games, Exec::Parallel);
    let dom = dominance_sweep(&games, Exec::Parallel);
    let bad: Vec<&String> = nash.mismatches.iter().chain(&dom.mismatches).collect();
    if bad.is_empty() {
        Ok(format!("{} games, {} dominance pairs, 0 mismatches", nash.checked, dom.checked))
    } else {
        Err(format!("{} mismatches, first: {}", bad.len(), bad[0]))
    }
}

fn coalition_translation() -> Outcome {
    let games = random_games(GAME_SEED, GAMES);
    let r = theorem2_sweep(&games, 4, GAME_SEED + 1, Exec::Parallel);
    if r.checked < 200 {
        return Err(format!("only {} formulas", r.checked));
    }
    match r.mismatches.first() {
        None => Ok(format!("{} formulas over {} games, 0 mismatches", r.checked, games.len())),
        Some(m) => Err(format!("{} mismatches, first: {m}", r.mismatches.len())),
    }
}

fn axiom_soundness() -> Outcome {
    let games = random_games(GAME_SEED, GAMES);
    let flat = vector_axiom_sweep(&games, Exec::Parallel);
    if let Some(m) = flat.mismatches.first() {
        return Err(format!("vector schema failed: {m}"));
    }
    let c = VectorExpr(vec![StrategyTerm::Concrete("c".into()), StrategyTerm::Adversary]);
    let inst = Instance {
        schema: AxiomSchema::Functionality,
        formula: functionality_shape(&c, masl_core::lang::Formula::util_eq(1, Rational::from_integer(2))),
    };
    let counter = validity_report(&[MaslModel::new(pd_game())], &[inst], Exec::Sequential);
    if counter.all_valid() {
        return Err("functionality with (c,??) found no counterexample on PD".into());
    }
    let epi = epistemic_axiom_sweep(GAME_SEED + 2, Exec::Parallel);
    if let Some(m) = epi.mismatches.first() {
        return Err(format!("epistemic schema failed: {m}"));
    }
    Ok(format!(
        "{} vector instances valid, (c,??) counterexample at {}, {} epistemic instances valid",
        flat.checked,
        counter.results[0].counterexample.as_ref().unwrap().state,
        epi.checked
    ))
}

fn gs_audit() -> Outcome {
    let alts: Vec<String> = ["a", "b", "c"].map(String::from).to_vec();
    let wrap = plurality_rule_abc(true);
    let r = audit_rule(&wrap, 3, Exec::Parallel).map_err(|e| e.to_string())?;
    if !(r.resolute && r.non_imposed && !r.strategy_proof && r.dictators.is_empty()) || r.profiles_checked != 216 {
        return Err(format!("tie-break plurality: {r:?}"));
    }
    let w = r.witness.as_ref().ok_or("no witness")?;
    let tops: BTreeSet<char> = w.profile.iter().map(|b| b.chars().next().unwrap()).collect();
    if w.before != ["a"] || tops.len() != 3 {
        return Err(format!("witness is not a broken three-way tie: {w:?}"));
    }
    let story = find_manipulation(&wrap, &cyclic_ballots()).map_err(|e| e.to_string())?;
    match &story {
        Some(s) if s.voter == 2 && s.before == ["a"] && s.after == ["c"] => {}
        other => return Err(format!("truthful cyclic profile: {other:?}")),
    }
    let dict = audit_rule(&VotingRule::new(RuleKind::Dictator(0), alts.clone()).unwrap(), 3, Exec::Parallel)
        .map_err(|e| e.to_string())?;
    if !(dict.resolute && dict.strategy_proof && dict.non_imposed && dict.dictators.contains(&1)) {
        return Err(format!("dictator rule: {dict:?}"));
    }
    let konst = audit_rule(&VotingRule::new(RuleKind::Constant("a".into()), alts.clone()).unwrap(), 3, Exec::Parallel)
        .map_err(|e| e.to_string())?;
    if konst.non_imposed {
        return Err("constant rule reported non-imposed".into());
    }
    let catalog = rule_catalog(&alts, 3).map_err(|e| e.to_string())?;
    for rule in &catalog {
        let r = audit_rule(rule, 3, Exec::Parallel).map_err(|e| e.to_string())?;
        if !r.gs_consistent {
            return Err(format!("{} violates the implication", r.rule));
        }
    }
    Ok(format!(
        "witness {:?} voter {} -> {}; {} catalog rules consistent",
        w.profile,
        w.voter,
        w.deviation,
        catalog.len()
    ))
}

fn epistemic_example() -> Outcome {
    let model = fig5_model();
    let sig = Signature::of_game(model.game());
    let actual = model.find_state(FIG5_ACTUAL).map_err(|e| e.to_string())?;
    let checker = Checker::new(&model);
    let dict = checker.satisfies(actual, &dictator(&sig, 1).unwrap()).map_err(|e| e.to_string())?;
    let knows = checker
        .satisfies(actual, &knowing_dictator(&sig, 1).unwrap())
        .map_err(|e| e.to_string())?;
    if dict && !knows {
        Ok("dictator(2) holds, knowingDictator(2) fails".into())
    } else {
        Err(format!("dictator(2) = {dict}, knowingDictator(2) = {knows}"))
    }
}

fn round_trip() -> Outcome {
    let form = GameForm::uniform(3, &["a", "b", "c"]).unwrap();
    let sig = Signature::new(form, [], ["a", "b", "c"].map(String::from));
    let sampler = AstSampler::new(&sig);
    let mut r = rng(GAME_SEED + 3);
    for k in 0..1000 {
        let f = sampler.formula(&mut r, 6);
        let text = render_formula(&f);
        match parse_formula(&text, &sig) {
            Ok(g) if g == f => {}
            Ok(_) => return Err(format!("formula {k} changed: {text}")),
            Err(e) => return Err(format!("formula {k} `{text}`: {e}")),
        }
        let p = sampler.program(&mut r, 6);
        let text = render_program(&p);
        match parse_program(&text, &sig) {
            Ok(q) if q == p => {}
            Ok(_) => return Err(format!("program {k} changed: {text}")),
            Err(e) => return Err(format!("program {k} `{text}`: {e}")),
        }
    }
    Ok("1000 formulas and 1000 programs round-trip".into())
}

fn star_smoke() -> Outcome {
    let model = MaslModel::new(vote3_game(false));
    let sig = Signature::of_game(model.game());
    let text = "[((((??,!!,!!);?u1>=1)* + (!!,??,!!))* ; (!!,!!,??))*] (win(a) -> <((!!,??,!!))*> u2>=1)";
    let start = Instant::now();
    let f = parse_formula(text, &sig).map_err(|e| e.to_string())?;
    let ext = Checker::new(&model).extension(&f).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    if took >= Duration::from_millis(100) {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("{} of 27 states in {took:?}", ext.count()))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "voting payoff tables", limit: Duration::from_secs(1), run: payoff_tables },
        Criterion { id: 2, name: "Nash claims via the logic", limit: Duration::from_secs(1), run: nash_claims },
        Criterion { id: 3, name: "oracle agreement", limit: Duration::from_secs(30), run: oracle_agreement },
        Criterion { id: 4, name: "coalition logic translation", limit: Duration::from_secs(60), run: coalition_translation },
        Criterion { id: 5, name: "axiom soundness", limit: Duration::from_secs(60), run: axiom_soundness },
        Criterion { id: 6, name: "rule audits", limit: Duration::from_secs(300), run: gs_audit },
        Criterion { id: 7, name: "knowing dictatorship", limit: Duration::from_secs(1), run: epistemic_example },
        Criterion { id: 8, name: "parser round trip", limit: Duration::from_secs(10), run: round_trip },
        Criterion { id: 9, name: "nested star smoke", limit: Duration::from_millis(100), run: star_smoke },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if took < c.limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the {:?} limit", c.limit)),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("[{status}] {}. {} ({took:.2?}): {detail}", c.id, c.name);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use masl_core::calculus::{default_bodies, instantiate, validity_report, AxiomSchema, Instance};
use masl_core::coalition::{cl_check, translate};
use masl_core::demo::{run_demo, DEMOS};
use masl_core::eval::{epistemic_lift, model_from_str, model_to_json, Checker, MaslModel, Structure};
use masl_core::game::{game_from_str, game_to_json, nash_set, StrategicGame};
use masl_core::lang::{
    build_property, nash_here, parse_cl, parse_formula, parse_program, render_cl, render_formula, render_program, Built,
    Formula, Property, Signature,
};
use masl_core::par::Exec;
use masl_core::voting::{audit_rule, induced_game, VotingSpec};

/// Model checker for strategic games and voting rules.
#[derive(Parser)]
#[command(name = "masl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula on a game: its extension, or its truth at one state.
    Check {
        #[arg(long)]
        game: PathBuf,
        #[command(flatten)]
        query: Query,
        /// Profile such as `c,d`; exits 1 if the formula is false there.
        #[arg(long)]
        state: Option<String>,
    },
    /// Compare the equilibrium oracle with the Nash formula.
    Nash {
        #[arg(long)]
        game: PathBuf,
    },
    #[command(subcommand)]
    Voting(VotingCommand),
    #[command(subcommand)]
    Cl(ClCommand),
    /// Write the epistemic model of a game in which everyone knows their own choice.
    Lift {
        #[arg(long)]
        game: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate a formula on an epistemic model file.
    Echeck {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        query: Query,
        /// World such as `full:c,d`; exits 1 if the formula is false there.
        #[arg(long)]
        world: Option<String>,
    },
    /// Check every instance of the axiom schemas on each game.
    Axioms {
        #[arg(long, required = true)]
        game: Vec<PathBuf>,
        /// Check the knowledge schemas on the epistemic lifts instead.
        #[arg(long)]
        epistemic: bool,
        /// Print only the failing instances.
        #[arg(long)]
        failures_only: bool,
    },
    /// Build a worked example and re-check its claims.
    Demo {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(DEMOS))]
        name: String,
    },
    /// Print the canonical rendering and syntax tree of an expression.
    Parse {
        #[arg(long)]
        game: PathBuf,
        #[command(flatten)]
        expr: Expr,
    },
}

#[derive(Subcommand)]
enum VotingCommand {
    /// Audit a rule for resoluteness, strategy-proofness, non-imposition and dictators.
    Audit {
        #[arg(long)]
        spec: PathBuf,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Write the game induced by a rule and truthful ballots.
    Game {
        #[arg(long)]
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ClCommand {
    /// Translate a coalition formula into the vector language.
    Translate {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Evaluate a coalition formula directly and through its translation.
    Check {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        state: Option<String>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Query {
    #[arg(long)]
    formula: Option<String>,
    /// A named property such as `nashHere` or `dictator(2)`.
    #[arg(long)]
    property: Option<String>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Expr {
    #[arg(long)]
    formula: Option<String>,
    #[arg(long)]
    program: Option<String>,
    #[arg(long)]
    cl: Option<String>,
    #[arg(long)]
    property: Option<String>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_game(path: &Path) -> Result<StrategicGame> {
    game_from_str(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn write_json(value: &Value, output: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn query_formula(query: &Query, sig: &Signature) -> Result<Formula> {
    if let Some(text) = &query.formula {
        return Ok(parse_formula(text, sig)?);
    }
    let name = query.property.as_deref().expect("clap requires one of the two");
    match build_property(&name.parse::<Property>()?, sig)? {
        Built::Formula(f) => Ok(f),
        Built::Program(_) => bail!("`{name}` is a program, not a formula; try `parse --property`"),
    }
}

/// Shared by `check` and `echeck`: one state's truth value as the exit code,
/// or the whole extension.
fn evaluate<M: Structure>(model: &M, f: &Formula, at: Option<&str>) -> Result<ExitCode> {
    let checker = Checker::new(model);
    match at {
        Some(key) => {
            let s = model.find_state(key)?;
            let holds = checker.satisfies(s, f)?;
            println!("{holds}");
            Ok(if holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        None => {
            let ext = checker.extension(f)?;
            println!("{} of {} states", ext.count(), model.state_count());
            for s in ext.iter() {
                println!("{}", model.state_key(s));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check { game, query, state } => {
            let model = MaslModel::new(load_game(&game)?);
            let f = query_formula(&query, &Signature::of_game(model.game()))?;
            evaluate(&model, &f, state.as_deref())
        }
        Command::Nash { game } => {
            let model = MaslModel::new(load_game(&game)?);
            let game = model.game();
            let ext = Checker::new(&model).extension(&nash_here(&Signature::of_game(game)))?;
            let by_logic: Vec<String> = ext.iter().map(|s| model.state_key(s)).collect();
            let by_oracle: Vec<String> = nash_set(game).iter().map(|p| game.form().profile_key(p)).collect();
            println!("oracle:  {}", by_oracle.join(" "));
            println!("formula: {}", by_logic.join(" "));
            if by_logic == by_oracle {
                println!("agree ({} equilibria)", by_oracle.len());
                Ok(ExitCode::SUCCESS)
            } else {
                println!("DISAGREE");
                Ok(ExitCode::from(1))
            }
        }
        Command::Voting(VotingCommand::Audit { spec, sequential }) => {
            let spec = read(&spec)?.parse::<VotingSpec>()?;
            let exec = if sequential { Exec::Sequential } else { Exec::Parallel };
            print_json(&audit_rule(&spec.rule, spec.ballots.voters(), exec)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Voting(VotingCommand::Game { spec, output }) => {
            let spec = read(&spec)?.parse::<VotingSpec>()?;
            let game = induced_game(&spec.rule, &spec.ballots)?;
            write_json(&game_to_json(&game), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Cl(ClCommand::Translate { game, formula }) => {
            let game = load_game(&game)?;
            let f = parse_cl(&formula, &Signature::of_game(&game))?;
            println!("{}", render_formula(&translate(&f, game.form())));
            Ok(ExitCode::SUCCESS)
        }
        Command::Cl(ClCommand::Check { game, formula, state }) => {
            let model = MaslModel::new(load_game(&game)?);
            let form = model.game().form();
            let f = parse_cl(&formula, &Signature::of_game(model.game()))?;
            let translated = Checker::new(&model).extension(&translate(&f, form))?;
            let states: Vec<usize> = match &state {
                Some(key) => vec![model.find_state(key)?],
                None => (0..model.state_count()).collect(),
            };
            let mut all_true = true;
            for s in states {
                let direct = cl_check(&model, model.profile(s), &f)?;
                if direct != translated.contains(s) {
                    bail!("translation disagrees at {}", model.state_key(s));
                }
                all_true &= direct;
                println!("{:<10} {direct}", model.state_key(s));
            }
            Ok(if state.is_some() && !all_true { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Lift { game, output } => {
            let model = epistemic_lift(&load_game(&game)?);
            write_json(&model_to_json(&model), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Echeck { model, query, world } => {
            let model = model_from_str(&read(&model)?).with_context(|| format!("in {}", model.display()))?;
            let f = query_formula(&query, &Signature::of_game(model.game()))?;
            evaluate(&model, &f, world.as_deref())
        }
        Command::Axioms { game, epistemic, failures_only } => {
            let mut reports = Vec::new();
            let mut all_valid = true;
            for path in &game {
                let g = load_game(path)?;
                let sig = Signature::of_game(&g);
                let bodies = default_bodies(&g);
                let schemas: &[AxiomSchema] = if epistemic { &AxiomSchema::EPISTEMIC } else { &AxiomSchema::VECTOR };
                let instances: Vec<Instance> =
                    schemas.iter().flat_map(|&s| instantiate(s, &sig, &bodies)).collect();
                let mut report = if epistemic {
                    validity_report(&[epistemic_lift(&g)], &instances, Exec::Parallel)
                } else {
                    validity_report(&[MaslModel::new(g)], &instances, Exec::Parallel)
                };
                all_valid &= report.all_valid();
                if failures_only {
                    report.results.retain(|r| !r.valid);
                }
                reports.push(json!({ "game": path.display().to_string(), "report": report }));
            }
            print_json(&reports)?;
            Ok(if all_valid { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Demo { name } => {
            let report = run_demo(&name).expect("clap only accepts known demos");
            for line in &report.lines {
                println!("{line}");
            }
            for (claim, ok) in &report.checks {
                println!("[{}] {claim}", if *ok { "ok" } else { "FAILED" });
            }
            Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Parse { game, expr } => {
            let sig = Signature::of_game(&load_game(&game)?);
            let (rendered, tree) = if let Some(text) = &expr.formula {
                let f = parse_formula(text, &sig)?;
                (render_formula(&f), serde_json::to_value(&f)?)
            } else if let Some(text) = &expr.program {
                let p = parse_program(text, &sig)?;
                (render_program(&p), serde_json::to_value(&p)?)
            } else if let Some(text) = &expr.cl {
                let f = parse_cl(text, &sig)?;
                (render_cl(&f), serde_json::to_value(&f)?)
            } else {
                let name = expr.property.as_deref().expect("clap requires one expression");
                match build_property(&name.parse::<Property>()?, &sig)? {
                    Built::Formula(f) => (render_formula(&f), serde_json::to_value(&f)?),
                    Built::Program(p) => (render_program(&p), serde_json::to_value(&p)?),
                }
            };
            println!("{rendered}");
            print_json(&tree)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

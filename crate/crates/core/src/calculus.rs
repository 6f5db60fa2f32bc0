//! Axiom schemas of the logic, instantiated over a finite pool of vectors
//! and body formulas, and checked for validity on model families.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::eval::{Checker, Structure};
use crate::game::StrategicGame;
use crate::lang::{render_formula, Formula, Program, Signature, StrategyTerm, VectorExpr};
use crate::par::Exec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AxiomSchema {
    /// `[c] c`
    Effectivity,
    /// `<c> T`
    Seriality,
    /// `<c> f -> [c] f` for determined `c`.
    Functionality,
    /// `[c] f <-> ([c_a1] f & ... & [c_ak] f)` where `c` has `??` at `i`
    /// and `c_a` puts `a` there.
    AdversaryPower,
    /// `(i_a,!!) -> (c <-> c_a)` where `c` has `!!` at `i`.
    DeterminateCurrentChoice,
    /// `f -> [ag i] <ag i^> f`
    ConverseA,
    /// `f -> [ag i^] <ag i> f`
    ConverseB,
    /// `[(i_a,!!)] [ag i] (i_a,!!)`
    OwnActionKnowledge,
    /// `[(j_a,!!)] ~[ag i] (j_a,!!)` for `j != i`.
    OtherActionIgnorance,
}

impl AxiomSchema {
    pub const VECTOR: [AxiomSchema; 5] = [
        AxiomSchema::Effectivity,
        AxiomSchema::Seriality,
        AxiomSchema::Functionality,
        AxiomSchema::AdversaryPower,
        AxiomSchema::DeterminateCurrentChoice,
    ];

    pub const EPISTEMIC: [AxiomSchema; 4] = [
        AxiomSchema::ConverseA,
        AxiomSchema::ConverseB,
        AxiomSchema::OwnActionKnowledge,
        AxiomSchema::OtherActionIgnorance,
    ];

    pub fn is_epistemic(self) -> bool {
        Self::EPISTEMIC.contains(&self)
    }
}

impl fmt::Display for AxiomSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub schema: AxiomSchema,
    pub formula: Formula,
}

/// Vectors used to fill schemas: every all-concrete vector, each with one
/// position replaced by `??` or by `!!`, plus all-`??` and all-`!!`.
/// Duplicates are dropped; order is deterministic.
pub fn vector_pool(sig: &Signature) -> Vec<VectorExpr> {
    let form = sig.form();
    let n = form.players();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |v: VectorExpr| {
        if seen.insert(v.clone()) {
            out.push(v);
        }
    };
    let concrete: Vec<VectorExpr> = form
        .all_profiles()
        .iter()
        .map(|p| {
            VectorExpr(
                (0..n)
                    .map(|i| StrategyTerm::Concrete(form.strategies(i)[p[i]].clone()))
                    .collect(),
            )
        })
        .collect();
    for c in &concrete {
        push(c.clone());
    }
    for term in [StrategyTerm::Adversary, StrategyTerm::Current] {
        for c in &concrete {
            for i in 0..n {
                push(c.with(i, term.clone()));
            }
        }
    }
    push(VectorExpr::all_adversary(n));
    push(VectorExpr::all_current(n));
    out
}

/// Every atom the game can make true, then their negations: utilities
/// from `U`, winners, and outcome labels.
pub fn default_bodies(game: &StrategicGame) -> Vec<Formula> {
    let mut atoms = Vec::new();
    for i in 0..game.players() {
        for &v in game.utility_range() {
            atoms.push(Formula::util_eq(i, v));
        }
    }
    for x in game.alternatives() {
        atoms.push(Formula::winner(x));
    }
    let labels: BTreeSet<&str> = game.outcomes().iter().map(|o| o.label.as_str()).collect();
    atoms.extend(labels.into_iter().map(Formula::label));
    let negated: Vec<Formula> = atoms.iter().cloned().map(Formula::negate).collect();
    atoms.extend(negated);
    atoms
}

fn vec_box(v: &VectorExpr, f: Formula) -> Formula {
    Formula::boxed(Program::Vector(v.clone()), f)
}

fn vec_diamond(v: &VectorExpr, f: Formula) -> Formula {
    Formula::diamond(Program::Vector(v.clone()), f)
}

/// `<c> f -> [c] f` for any vector, determined or not. Sound only for
/// determined ones; [`instantiate`] never builds the others.
pub fn functionality_shape(c: &VectorExpr, body: Formula) -> Formula {
    vec_diamond(c, body.clone()).implies(vec_box(c, body))
}

/// All instances of `schema` over the vector pool and `bodies`.
pub fn instantiate(schema: AxiomSchema, sig: &Signature, bodies: &[Formula]) -> Vec<Instance> {
    let form = sig.form();
    let n = form.players();
    let vectors = vector_pool(sig);
    let mut out = Vec::new();
    let mut emit = |f: Formula| out.push(Instance { schema, formula: f });
    let switch = |i: usize, a: &str| VectorExpr::single(n, i, a, StrategyTerm::Current);
    match schema {
        AxiomSchema::Effectivity => {
            for c in &vectors {
                emit(vec_box(c, Formula::Vector(c.clone())));
            }
        }
        AxiomSchema::Seriality => {
            for c in &vectors {
                emit(vec_diamond(c, Formula::Top));
            }
        }
        AxiomSchema::Functionality => {
            for c in vectors.iter().filter(|c| c.is_determined()) {
                for f in bodies {
                    emit(functionality_shape(c, f.clone()));
                }
            }
        }
        AxiomSchema::AdversaryPower => {
            for c in &vectors {
                for i in (0..n).filter(|&i| c.0[i] == StrategyTerm::Adversary) {
                    for f in bodies {
                        let parts = form
                            .strategies(i)
                            .iter()
                            .map(|a| vec_box(&c.with(i, StrategyTerm::Concrete(a.clone())), f.clone()));
                        emit(vec_box(c, f.clone()).iff(Formula::conj(parts)));
                    }
                }
            }
        }
        AxiomSchema::DeterminateCurrentChoice => {
            for c in &vectors {
                for i in (0..n).filter(|&i| c.0[i] == StrategyTerm::Current) {
                    for a in form.strategies(i) {
                        let fixed = c.with(i, StrategyTerm::Concrete(a.clone()));
                        emit(Formula::Vector(switch(i, a)).implies(Formula::Vector(c.clone()).iff(Formula::Vector(fixed))));
                    }
                }
            }
        }
        AxiomSchema::ConverseA | AxiomSchema::ConverseB => {
            for i in 0..n {
                let (outer, inner) = if schema == AxiomSchema::ConverseA {
                    (Program::Agent(i), Program::AgentConv(i))
                } else {
                    (Program::AgentConv(i), Program::Agent(i))
                };
                for f in bodies {
                    emit(f.clone().implies(Formula::boxed(outer.clone(), Formula::diamond(inner.clone(), f.clone()))));
                }
            }
        }
        AxiomSchema::OwnActionKnowledge => {
            for i in 0..n {
                for a in form.strategies(i) {
                    let v = switch(i, a);
                    emit(vec_box(&v, Formula::boxed(Program::Agent(i), Formula::Vector(v.clone()))));
                }
            }
        }
        AxiomSchema::OtherActionIgnorance => {
            for i in 0..n {
                for j in (0..n).filter(|&j| j != i) {
                    for a in form.strategies(j) {
                        let v = switch(j, a);
                        emit(vec_box(&v, Formula::boxed(Program::Agent(i), Formula::Vector(v.clone())).negate()));
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Position of the model in the family.
    pub model: usize,
    pub state: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceResult {
    pub schema: AxiomSchema,
    pub formula: String,
    pub valid: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidityReport {
    pub models: usize,
    pub instances: usize,
    pub invalid: usize,
    pub results: Vec<InstanceResult>,
}

impl ValidityReport {
    pub fn all_valid(&self) -> bool {
        self.invalid == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceResult> {
        self.results.iter().filter(|r| !r.valid)
    }
}

/// Checks every instance on every model. The counterexample is the first
/// failing state of the first failing model.
pub fn validity_report<M: Structure>(models: &[M], instances: &[Instance], exec: Exec) -> ValidityReport {
    // per model and instance: the first failing state, or why it could not be checked
    let per_model: Vec<Vec<Option<String>>> = exec.map(models, |m| {
        let checker = Checker::new(m);
        instances
            .iter()
            .map(|inst| match checker.extension(&inst.formula) {
                Ok(ext) => ext.complement().iter().next().map(|s| m.state_key(s)),
                Err(e) => Some(format!("error: {e}")),
            })
            .collect()
    });
    let results: Vec<InstanceResult> = instances
        .iter()
        .enumerate()
        .map(|(k, inst)| {
            let counterexample = per_model.iter().enumerate().find_map(|(mi, fails)| {
                fails[k].clone().map(|state| Counterexample { model: mi, state })
            });
            InstanceResult {
                schema: inst.schema,
                formula: render_formula(&inst.formula),
                valid: counterexample.is_none(),
                counterexample,
            }
        })
        .collect();
    ValidityReport {
        models: models.len(),
        instances: instances.len(),
        invalid: results.iter().filter(|r| !r.valid).count(),
        results,
    }
}

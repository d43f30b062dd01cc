//! Refutation traces and their independent checker.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::marking::classify_predicates;
use crate::program::{Atom, Predicate, Program, Term};

/// One hyperresolution step: `clause` follows from rule `rule` under
/// `subst`, resolving body atom `i` against `premises[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub clause: Vec<Atom>,
    pub rule: usize,
    pub premises: Vec<usize>,
    pub subst: BTreeMap<String, Term>,
}

/// Steps in derivation order; the last one derives the empty clause.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            let clause: Vec<String> = s.clause.iter().map(|a| a.to_string()).collect();
            let clause = if clause.is_empty() { "FALSEHOOD".to_string() } else { clause.join(" | ") };
            let premises: Vec<String> = s.premises.iter().map(|p| p.to_string()).collect();
            let subst: Vec<String> = s.subst.iter().map(|(v, t)| format!("{v}={t}")).collect();
            writeln!(f, "{i}: {clause} <- rule {} [{}] {{{}}}", s.rule, premises.join(","), subst.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("trace is empty")]
    Empty,
    #[error("step {0}: no rule with that id")]
    NoSuchRule(usize),
    #[error("step {0}: premise does not precede the step")]
    LateParent(usize),
    #[error("step {0}: expected one premise per body atom")]
    PremiseCount(usize),
    #[error("step {0}: variable {1} unbound")]
    Unbound(usize, String),
    #[error("step {0}: premise {1} does not contain {2}")]
    MissingAtom(usize, usize, String),
    #[error("step {0}: clause is not the hyperresolvent")]
    WrongConclusion(usize),
    #[error("last step is not the empty clause")]
    NotRefutation,
    #[error("step {0}: disjunction with an atom over a Horn predicate")]
    Shape(usize),
}

fn instantiate(t: &Term, s: &BTreeMap<String, Term>) -> Option<Term> {
    match t {
        Term::Var(v) => s.get(v).cloned(),
        Term::Const(_) => Some(t.clone()),
        Term::App(f, inner) => Some(Term::app(f, instantiate(inner, s)?)),
    }
}

fn ground(a: &Atom, s: &BTreeMap<String, Term>, step: usize) -> Result<Atom, TraceError> {
    let args = a
        .args
        .iter()
        .map(|t| {
            instantiate(t, s).ok_or_else(|| {
                let mut vars = BTreeSet::new();
                t.collect_vars(&mut vars);
                let v = vars.into_iter().find(|v| !s.contains_key(*v)).unwrap_or_default();
                TraceError::Unbound(step, v.to_string())
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(Atom::new(a.pred.clone(), args))
}

/// Re-checks every step of `trace` against the rules of `p` (ids as in
/// [`Program::rules`]) and that the trace ends in the empty clause.
pub fn validate_trace(p: &Program, trace: &Trace) -> Result<(), TraceError> {
    let rules: Vec<_> = p.rules().collect();
    let last = trace.steps.last().ok_or(TraceError::Empty)?;
    for (i, step) in trace.steps.iter().enumerate() {
        let r = rules.get(step.rule).ok_or(TraceError::NoSuchRule(i))?;
        if step.premises.len() != r.body.len() {
            return Err(TraceError::PremiseCount(i));
        }
        let mut expected: BTreeSet<Atom> = BTreeSet::new();
        for a in &r.head {
            expected.insert(ground(a, &step.subst, i)?);
        }
        for (b, &pi) in r.body.iter().zip(&step.premises) {
            if pi >= i {
                return Err(TraceError::LateParent(i));
            }
            let g = ground(b, &step.subst, i)?;
            let premise = &trace.steps[pi].clause;
            if !premise.contains(&g) {
                return Err(TraceError::MissingAtom(i, pi, g.to_string()));
            }
            expected.extend(premise.iter().filter(|a| **a != g).cloned());
        }
        let got: BTreeSet<Atom> = step.clause.iter().cloned().collect();
        if got != expected {
            return Err(TraceError::WrongConclusion(i));
        }
    }
    if !last.clause.is_empty() {
        return Err(TraceError::NotRefutation);
    }
    Ok(())
}

/// Every derived clause is a single atom or a disjunction of atoms over
/// disjunctive predicates. `⊤` atoms, which the dependency graph leaves
/// out, are allowed alongside.
pub fn check_trace_shape(p: &Program, trace: &Trace) -> Result<(), TraceError> {
    let disjunctive = classify_predicates(p).disjunctive;
    for (i, s) in trace.steps.iter().enumerate() {
        if s.clause.len() > 1
            && !s.clause.iter().all(|a| a.pred == Predicate::Top || disjunctive.contains(&a.pred))
        {
            return Err(TraceError::Shape(i));
        }
    }
    Ok(())
}

//! Bounded satisfiability checking of programs with datasets.
//!
//! Every run first saturates with terms beyond the depth bound omitted: a
//! refutation there is a refutation of the unbounded program, and a
//! saturation that never hit the bound is a model. Otherwise a second run
//! folds deep terms back under the bound; its saturations are finite models.

mod engine;
mod trace;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::ontology::{Dataset, Ontology};
use crate::program::{pi_translate, Atom, Origin, Predicate, Program, Rule, Term};
use crate::psi::{rewrite_ontology, RewriteError};
use crate::xi::xi_translate;
use engine::{DepthMode, Engine};

pub use trace::{check_trace_shape, validate_trace, Trace, TraceError, TraceStep};

pub const DEFAULT_DEPTH: usize = 3;
pub const DEFAULT_BUDGET: usize = 1_000_000;
pub const BUDGET_VAR: &str = "HORNIFY_BUDGET";

/// The atom budget, from `HORNIFY_BUDGET` if set.
pub fn budget_from_env() -> usize {
    std::env::var(BUDGET_VAR).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Error)]
pub enum ReasonerError {
    #[error("atom budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },
    #[error("rule `{0}` has a head variable missing from its body")]
    UnsafeRule(String),
    #[error("program is not Horn")]
    NotHorn,
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SatStatus {
    Unsat,
    Sat,
    /// No refutation within the bound, and no model found either.
    SatBounded,
}

impl SatStatus {
    pub fn is_conclusive(self) -> bool {
        self != SatStatus::SatBounded
    }
}

impl fmt::Display for SatStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SatStatus::Unsat => "UNSAT",
            SatStatus::Sat => "SAT",
            SatStatus::SatBounded => "SAT_BOUNDED",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SatReport {
    pub status: SatStatus,
    /// Refutation, for `UNSAT`.
    pub trace: Option<Trace>,
    pub depth_used: usize,
    pub atom_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub depth: usize,
    pub budget: usize,
}

impl Bounds {
    /// The given depth with the budget from the environment.
    pub fn depth(depth: usize) -> Self {
        Bounds { depth, budget: budget_from_env() }
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds::depth(DEFAULT_DEPTH)
    }
}

/// Constant added when a dataset is empty, so that the domain is not.
pub const DEFAULT_CONSTANT: &str = "o";

fn fact_atom(f: &crate::ontology::Fact) -> Atom {
    let pred = match f.args.len() {
        2 => Predicate::role(&f.predicate),
        _ => Predicate::concept(&f.predicate),
    };
    Atom::new(pred, f.args.iter().map(|a| Term::Const(a.clone())).collect())
}

/// `p` with the facts of `d` as bodiless rules, with Σ-components for the
/// combined signature. Rule ids in traces refer to this program.
pub fn with_dataset(p: &Program, d: &Dataset) -> Program {
    let mut core = p.core.clone();
    for f in &d.facts {
        core.push(Rule::new(vec![], vec![fact_atom(f)], Origin::Input));
    }
    if d.is_empty() {
        let c = Term::Const(DEFAULT_CONSTANT.to_string());
        core.push(Rule::new(vec![], vec![Atom::unary(Predicate::Top, c)], Origin::Input));
    }
    Program::with_mode(core, p.congruence)
}

/// Satisfiability of `p ∪ d` by bounded hyperresolution.
pub fn check_sat_disjunctive(p: &Program, d: &Dataset, depth: usize) -> Result<SatReport, ReasonerError> {
    check_sat_with(p, d, Bounds::depth(depth))
}

pub fn check_sat_with(p: &Program, d: &Dataset, bounds: Bounds) -> Result<SatReport, ReasonerError> {
    let full = with_dataset(p, d);
    let omit = Engine::new(&full, DepthMode::Omit, bounds.depth, bounds.budget)?.run()?;
    let report = |status, trace, atom_count| SatReport { status, trace, depth_used: bounds.depth, atom_count };
    if let Some(trace) = omit.refutation {
        return Ok(report(SatStatus::Unsat, Some(trace), omit.atom_count));
    }
    if !omit.blocked {
        return Ok(report(SatStatus::Sat, None, omit.atom_count));
    }
    let folded = Engine::new(&full, DepthMode::Truncate, bounds.depth, bounds.budget)?.run()?;
    let status = if folded.refutation.is_none() { SatStatus::Sat } else { SatStatus::SatBounded };
    Ok(report(status, None, omit.atom_count.max(folded.atom_count)))
}

/// Satisfiability of a Horn program with a dataset.
pub fn saturate_horn(p: &Program, d: &Dataset, depth: usize) -> Result<SatReport, ReasonerError> {
    if !p.is_horn() {
        return Err(ReasonerError::NotHorn);
    }
    check_sat_disjunctive(p, d, depth)
}

/// Atoms derived from a Horn program and dataset with deep terms omitted,
/// continuing past any refutation.
pub fn derived_facts(p: &Program, d: &Dataset, depth: usize) -> Result<Vec<Atom>, ReasonerError> {
    if !p.is_horn() {
        return Err(ReasonerError::NotHorn);
    }
    let full = with_dataset(p, d);
    let b = Bounds::depth(depth);
    Ok(Engine::new(&full, DepthMode::Omit, depth, b.budget)?.keep_going_after_refutation().run()?.facts)
}

/// Terms up to `depth` over the constants of `d` and the function symbols
/// of `p`.
pub fn bounded_universe(p: &Program, d: &Dataset, depth: usize) -> Vec<Term> {
    let mut level: Vec<Term> = d.constants().into_iter().map(Term::Const).collect();
    let functions = p.signature().functions;
    let mut out = level.clone();
    for _ in 0..depth {
        level = level.iter().flat_map(|t| functions.iter().map(move |f| Term::app(f, t.clone()))).collect();
        out.extend(level.iter().cloned());
    }
    out
}

/// Terms of the bounded universe for which `⊥̄` is not derived.
pub fn terms_without_bot_bar(p: &Program, d: &Dataset, depth: usize) -> Result<Vec<Term>, ReasonerError> {
    let facts: BTreeSet<Atom> = derived_facts(p, d, depth)?.into_iter().collect();
    Ok(bounded_universe(p, d, depth)
        .into_iter()
        .filter(|t| !facts.contains(&Atom::unary(Predicate::bot_bar(), t.clone())))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Agree,
    Disagree,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Agree => "AGREE",
            Verdict::Disagree => "DISAGREE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone)]
pub struct EquisatReport {
    pub original: SatReport,
    pub via_xi: SatReport,
    /// Absent when the ontology is not markable.
    pub rewritten: Option<SatReport>,
    pub verdict: Verdict,
}

impl EquisatReport {
    pub fn legs(&self) -> impl Iterator<Item = &SatReport> {
        [Some(&self.original), Some(&self.via_xi), self.rewritten.as_ref()].into_iter().flatten()
    }
}

pub fn verdict_of<'a>(legs: impl IntoIterator<Item = &'a SatReport>) -> Verdict {
    let statuses: Vec<SatStatus> = legs.into_iter().map(|r| r.status).collect();
    let conclusive: BTreeSet<bool> =
        statuses.iter().filter(|s| s.is_conclusive()).map(|s| *s == SatStatus::Unsat).collect();
    if conclusive.len() > 1 {
        Verdict::Disagree
    } else if statuses.iter().all(|s| s.is_conclusive()) {
        Verdict::Agree
    } else {
        Verdict::Inconclusive
    }
}

/// Compares satisfiability of `o ∪ d` through the standard translation,
/// the successor translation and the Horn rewriting.
pub fn check_equisat(o: &Ontology, d: &Dataset, depth: usize) -> Result<EquisatReport, ReasonerError> {
    let original = check_sat_disjunctive(&pi_translate(o), d, depth)?;
    let via_xi = check_sat_disjunctive(&xi_translate(o), d, depth)?;
    let rewritten = match rewrite_ontology(o) {
        Ok(rw) => Some(saturate_horn(&pi_translate(&rw.ontology), d, depth)?),
        Err(RewriteError::NotMarkable(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let mut report = EquisatReport { original, via_xi, rewritten, verdict: Verdict::Agree };
    report.verdict = verdict_of(report.legs());
    Ok(report)
}

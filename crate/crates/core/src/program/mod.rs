//! First-order rules with unary function symbols, programs with their
//! Σ-components, and the standard translation of ontologies into rules.

mod pi;
mod sigma;
mod syntax;
mod validate;

use std::collections::BTreeSet;
use std::fmt;

use crate::ontology::{ConceptName, Role};

pub use pi::{pi_translate, pi_translate_with, role_atom};
pub(crate) use pi::pi_axiom;
pub use sigma::{signature_components, SigmaComponents};
pub use syntax::{parse_program, parse_rule, serialize_program, serialize_rule};
pub use validate::{validate_program, Violation, ViolationKind};

/// Function symbols: one per T3 axiom for the standard translation, one per
/// `(role, filler)` pair for the successor encoding.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunctionSymbol {
    Skolem(usize),
    Indexed { role: Role, filler: ConceptName },
}

impl FunctionSymbol {
    pub fn indexed(role: Role, filler: ConceptName) -> Self {
        FunctionSymbol::Indexed { role, filler }
    }
}

impl fmt::Display for FunctionSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSymbol::Skolem(i) => write!(f, "sk{i}"),
            FunctionSymbol::Indexed { role, filler } => {
                let inv = if role.inverse { "inv_" } else { "" };
                write!(f, "f_{inv}{}_{filler}", role.name)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
    App(FunctionSymbol, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(name.to_string())
    }

    pub fn app(f: &FunctionSymbol, arg: Term) -> Self {
        Term::App(f.clone(), Box::new(arg))
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 0,
            Term::App(_, t) => 1 + t.depth(),
        }
    }

    pub fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term::Var(v) => {
                out.insert(v);
            }
            Term::Const(_) => {}
            Term::App(_, t) => t.collect_vars(out),
        }
    }

    pub fn collect_functions(&self, out: &mut BTreeSet<FunctionSymbol>) {
        if let Term::App(f, t) = self {
            out.insert(f.clone());
            t.collect_functions(out);
        }
    }

    pub fn collect_constants(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Const(c) => {
                out.insert(c.clone());
            }
            Term::Var(_) => {}
            Term::App(_, t) => t.collect_constants(out),
        }
    }

    /// The innermost variable or constant.
    pub fn root(&self) -> &Term {
        match self {
            Term::App(_, t) => t.root(),
            other => other,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "?{v}"),
            Term::Const(c) => f.write_str(c),
            Term::App(g, t) => write!(f, "{g}({t})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Predicate {
    Concept(String),
    Role(String),
    Top,
    Bot,
    Eq,
    /// The fresh predicate standing for the negation of a marked predicate.
    Complement(Box<Predicate>),
}

impl Predicate {
    pub fn concept(name: &str) -> Self {
        Predicate::Concept(name.to_string())
    }

    pub fn role(name: &str) -> Self {
        Predicate::Role(name.to_string())
    }

    pub fn from_concept(c: &ConceptName) -> Self {
        match c {
            ConceptName::Top => Predicate::Top,
            ConceptName::Bot => Predicate::Bot,
            ConceptName::Named(n) => Predicate::Concept(n.clone()),
        }
    }

    /// `⊥̄`, the complement of falsehood.
    pub fn bot_bar() -> Self {
        Predicate::Complement(Box::new(Predicate::Bot))
    }

    pub fn complement(&self) -> Self {
        assert!(!self.is_complement(), "complement applied twice to {self}");
        Predicate::Complement(Box::new(self.clone()))
    }

    pub fn is_complement(&self) -> bool {
        matches!(self, Predicate::Complement(_))
    }

    /// True for `⊤`, `⊥` and `≈`.
    pub fn is_special(&self) -> bool {
        matches!(self, Predicate::Top | Predicate::Bot | Predicate::Eq)
    }

    pub fn arity(&self) -> usize {
        match self {
            Predicate::Concept(_) | Predicate::Top | Predicate::Bot => 1,
            Predicate::Role(_) | Predicate::Eq => 2,
            Predicate::Complement(p) => p.arity(),
        }
    }

    /// Name used in marking lists: like the rule syntax, but `Bot` for `⊥`.
    pub fn marking_name(&self) -> String {
        match self {
            Predicate::Bot => "Bot".to_string(),
            Predicate::Top => "Top".to_string(),
            other => other.to_string(),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Concept(n) | Predicate::Role(n) => f.write_str(n),
            Predicate::Top => f.write_str("True"),
            Predicate::Bot => f.write_str("False"),
            Predicate::Eq => f.write_str("Eq"),
            Predicate::Complement(p) => write!(f, "not_{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub pred: Predicate,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: Predicate, args: Vec<Term>) -> Self {
        Atom { pred, args }
    }

    pub fn unary(pred: Predicate, t: Term) -> Self {
        Atom { pred, args: vec![t] }
    }

    pub fn binary(pred: Predicate, s: Term, t: Term) -> Self {
        Atom { pred, args: vec![s, t] }
    }

    pub fn vars(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        for a in &self.args {
            a.collect_vars(&mut out);
        }
        out
    }

    pub fn max_depth(&self) -> usize {
        self.args.iter().map(Term::depth).max().unwrap_or(0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.pred)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Which rule scheme of the M-transposition produced a rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TranspositionCase {
    Kept,
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
    Case6,
}

impl fmt::Display for TranspositionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TranspositionCase::Kept => "kept",
            TranspositionCase::Case1 => "case1",
            TranspositionCase::Case2 => "case2",
            TranspositionCase::Case3 => "case3",
            TranspositionCase::Case4 => "case4",
            TranspositionCase::Case5 => "case5",
            TranspositionCase::Case6 => "case6",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SigmaPart {
    Top,
    Bot,
    Eq,
}

/// Where a rule came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Origin {
    Input,
    /// Standard translation of the axiom at this index.
    Pi(usize),
    /// Successor-encoding translation of the axiom at this index.
    Xi(usize),
    /// Transposition; `source` is the index of the transposed core rule.
    Transposed { case: TranspositionCase, source: Option<usize> },
    Sigma(SigmaPart),
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Input => f.write_str("input"),
            Origin::Pi(i) => write!(f, "pi:{i}"),
            Origin::Xi(i) => write!(f, "xi:{i}"),
            Origin::Transposed { case, source: Some(s) } => write!(f, "{case}:{s}"),
            Origin::Transposed { case, source: None } => write!(f, "{case}"),
            Origin::Sigma(SigmaPart::Top) => f.write_str("sigma-top"),
            Origin::Sigma(SigmaPart::Bot) => f.write_str("sigma-bot"),
            Origin::Sigma(SigmaPart::Eq) => f.write_str("sigma-eq"),
        }
    }
}

/// `body → head`, the head read as a disjunction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub body: Vec<Atom>,
    pub head: Vec<Atom>,
    pub origin: Origin,
}

impl Rule {
    /// Builds a rule; repeated body or head atoms are collapsed.
    pub fn new(body: Vec<Atom>, head: Vec<Atom>, origin: Origin) -> Self {
        Rule { body: dedup(body), head: dedup(head), origin }
    }

    pub fn is_horn(&self) -> bool {
        self.head.len() <= 1
    }

    pub fn body_vars(&self) -> BTreeSet<&str> {
        self.body.iter().flat_map(|a| a.vars()).collect()
    }

    pub fn head_vars(&self) -> BTreeSet<&str> {
        self.head.iter().flat_map(|a| a.vars()).collect()
    }

    pub fn vars(&self) -> BTreeSet<&str> {
        self.body.iter().chain(&self.head).flat_map(|a| a.vars()).collect()
    }

    /// Every head variable occurs in the body.
    pub fn is_safe(&self) -> bool {
        let body = self.body_vars();
        self.head_vars().iter().all(|v| body.contains(v))
    }

    /// Same atoms regardless of order and origin.
    pub fn same_shape(&self, other: &Rule) -> bool {
        let set = |v: &[Atom]| v.iter().cloned().collect::<BTreeSet<_>>();
        set(&self.body) == set(&other.body) && set(&self.head) == set(&other.head)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_rule(self))
    }
}

fn dedup<T: PartialEq>(items: Vec<T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::with_capacity(items.len());
    for it in items {
        if !out.contains(&it) {
            out.push(it);
        }
    }
    out
}

/// Extent of the congruence axiomatization of `≈`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum CongruenceMode {
    PredicatesOnly,
    #[default]
    PredicatesAndFunctions,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub predicates: BTreeSet<Predicate>,
    pub constants: BTreeSet<String>,
    pub functions: BTreeSet<FunctionSymbol>,
}

impl Signature {
    pub fn of_rules<'a>(rules: impl IntoIterator<Item = &'a Rule>) -> Self {
        let mut sig = Signature::default();
        for r in rules {
            for a in r.body.iter().chain(&r.head) {
                sig.predicates.insert(a.pred.clone());
                for t in &a.args {
                    t.collect_functions(&mut sig.functions);
                    t.collect_constants(&mut sig.constants);
                }
            }
        }
        sig
    }
}

/// A program `P0 ∪ P⊤ ∪ P⊥ ∪ P≈`. The Σ-components are always derived from
/// the signature of the core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub core: Vec<Rule>,
    pub top: Vec<Rule>,
    pub bot: Vec<Rule>,
    pub eq: Vec<Rule>,
    pub congruence: CongruenceMode,
}

impl Program {
    pub fn new(core: Vec<Rule>) -> Self {
        Program::with_mode(core, CongruenceMode::default())
    }

    pub fn with_mode(core: Vec<Rule>, congruence: CongruenceMode) -> Self {
        let sig = Signature::of_rules(&core);
        let SigmaComponents { top, bot, eq } = signature_components(&sig, congruence);
        Program { core, top, bot, eq, congruence }
    }

    pub fn signature(&self) -> Signature {
        Signature::of_rules(&self.core)
    }

    /// All rules: core first, then `P⊤`, `P⊥`, `P≈`. Rule ids index this order.
    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.core.iter().chain(&self.top).chain(&self.bot).chain(&self.eq)
    }

    pub fn rule_count(&self) -> usize {
        self.core.len() + self.top.len() + self.bot.len() + self.eq.len()
    }

    pub fn is_horn(&self) -> bool {
        is_horn_program(self)
    }

    /// Predicates of all rules, `⊤` included.
    pub fn predicates(&self) -> BTreeSet<Predicate> {
        self.rules().flat_map(|r| r.body.iter().chain(&r.head)).map(|a| a.pred.clone()).collect()
    }
}

pub fn is_horn_program(p: &Program) -> bool {
    p.rules().all(Rule::is_horn)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_symbol_names() {
        assert_eq!(FunctionSymbol::Skolem(3).to_string(), "sk3");
        let f = FunctionSymbol::indexed(Role::named("R"), ConceptName::new("D"));
        assert_eq!(f.to_string(), "f_R_D");
        let g = FunctionSymbol::indexed(Role::inverse_of("R"), ConceptName::new("D"));
        assert_eq!(g.to_string(), "f_inv_R_D");
    }

    #[test]
    fn rule_dedups_and_checks_safety() {
        let a = Atom::unary(Predicate::concept("A"), Term::var("x"));
        let b = Atom::unary(Predicate::concept("B"), Term::var("y"));
        let r = Rule::new(vec![a.clone(), a.clone()], vec![b.clone()], Origin::Input);
        assert_eq!(r.body.len(), 1);
        assert!(!r.is_safe());
        let r = Rule::new(vec![a.clone()], vec![a], Origin::Input);
        assert!(r.is_safe());
    }

    #[test]
    fn empty_program_is_horn() {
        let p = Program::new(vec![]);
        assert!(p.is_horn());
        assert_eq!(p.bot.len(), 1);
    }

    #[test]
    #[should_panic]
    fn no_double_complement() {
        Predicate::bot_bar().complement();
    }
}

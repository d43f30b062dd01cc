//! Dependency graphs, Horn/disjunctive predicates and markings.
//!
//! The graph is built from the core rules together with `P⊥` and `P≈`; the
//! rules of `P⊤` are left out, so `⊤` never receives an edge.

mod twosat;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::program::{Predicate, Program, Rule};

pub use twosat::{solve as solve_clauses, tarjan_scc, Lit};

/// A set of predicates, ordered canonically.
pub type Marking = BTreeSet<Predicate>;

/// Renders a marking as a comma-separated list (`B,D,Bot`).
pub fn format_marking(m: &Marking) -> String {
    m.iter().map(Predicate::marking_name).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarkingParseError {
    #[error("complement predicate '{0}' cannot be marked")]
    Complement(String),
    #[error("predicate '{0}' does not occur in the program")]
    Unknown(String),
    #[error("empty predicate name in marking list")]
    Empty,
}

/// Parses `B,D,Bot` against the predicates of `p`. `Bot` and `False` both
/// name falsehood.
pub fn parse_marking(text: &str, p: &Program) -> Result<Marking, MarkingParseError> {
    let preds = p.predicates();
    let mut out = Marking::new();
    for item in text.split(',').map(str::trim) {
        if item.is_empty() {
            if text.trim().is_empty() {
                break;
            }
            return Err(MarkingParseError::Empty);
        }
        if item.starts_with("not_") {
            return Err(MarkingParseError::Complement(item.to_string()));
        }
        let found = preds
            .iter()
            .find(|q| q.marking_name() == item || q.to_string() == item)
            .ok_or_else(|| MarkingParseError::Unknown(item.to_string()))?;
        out.insert(found.clone());
    }
    Ok(out)
}

/// The rules that take part in the dependency graph, with their ids in
/// [`Program::rules`] order.
fn graph_rules(p: &Program) -> impl Iterator<Item = (usize, &Rule)> {
    let skip = p.core.len()..p.core.len() + p.top.len();
    p.rules().enumerate().filter(move |(i, _)| !skip.contains(i))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DependencyGraph {
    pub vertices: BTreeSet<Predicate>,
    /// `(P, Q)` to the ids of rules with `P` in the body and `Q` in the head.
    pub edges: BTreeMap<(Predicate, Predicate), BTreeSet<usize>>,
}

impl DependencyGraph {
    pub fn has_edge(&self, p: &Predicate, q: &Predicate) -> bool {
        self.edges.contains_key(&(p.clone(), q.clone()))
    }

    pub fn successors<'a>(&'a self, p: &'a Predicate) -> impl Iterator<Item = &'a Predicate> + 'a {
        self.edges.keys().filter(move |(a, _)| a == p).map(|(_, b)| b)
    }

    /// Everything reachable from `start` by paths of length zero or more.
    pub fn reachable_from<'a>(&self, start: impl IntoIterator<Item = &'a Predicate>) -> BTreeSet<Predicate> {
        let mut adj: BTreeMap<&Predicate, Vec<&Predicate>> = BTreeMap::new();
        for (a, b) in self.edges.keys() {
            adj.entry(a).or_default().push(b);
        }
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<Predicate> = start.into_iter().cloned().collect();
        while let Some(q) = queue.pop_front() {
            if seen.insert(q.clone()) {
                if let Some(next) = adj.get(&q) {
                    queue.extend(next.iter().map(|p| (*p).clone()));
                }
            }
        }
        seen
    }
}

pub fn dependency_graph(p: &Program) -> DependencyGraph {
    let mut g = DependencyGraph::default();
    for (id, r) in graph_rules(p) {
        for a in r.body.iter().chain(&r.head) {
            g.vertices.insert(a.pred.clone());
        }
        for b in &r.body {
            for h in &r.head {
                g.edges.entry((b.pred.clone(), h.pred.clone())).or_default().insert(id);
            }
        }
    }
    g
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PredicateClass {
    pub horn: BTreeSet<Predicate>,
    pub disjunctive: BTreeSet<Predicate>,
}

/// A predicate is disjunctive when it is reachable over an edge labelled by
/// a non-Horn rule.
pub fn classify_predicates(p: &Program) -> PredicateClass {
    classify_with(p, &dependency_graph(p))
}

fn classify_with(p: &Program, g: &DependencyGraph) -> PredicateClass {
    let rules: Vec<&Rule> = p.rules().collect();
    let seeds: BTreeSet<Predicate> = g
        .edges
        .iter()
        .filter(|(_, ids)| ids.iter().any(|&i| !rules[i].is_horn()))
        .map(|((_, q), _)| q.clone())
        .collect();
    let disjunctive = g.reachable_from(&seeds);
    let horn = g.vertices.difference(&disjunctive).cloned().collect();
    PredicateClass { horn, disjunctive }
}

/// Why a set of predicates is not a marking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MarkingViolation {
    NotDisjunctive(Predicate),
    TwoMarkedBodyAtoms { rule: usize, text: String },
    TwoUnmarkedHeadAtoms { rule: usize, text: String },
    NotClosed { from: Predicate, to: Predicate, rule: usize },
}

impl std::error::Error for MarkingViolation {}

impl fmt::Display for MarkingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkingViolation::NotDisjunctive(q) => {
                write!(f, "{} is not a disjunctive predicate", q.marking_name())
            }
            MarkingViolation::TwoMarkedBodyAtoms { rule, text } => {
                write!(f, "rule {rule} `{text}` has more than one marked body atom")
            }
            MarkingViolation::TwoUnmarkedHeadAtoms { rule, text } => {
                write!(f, "rule {rule} `{text}` has more than one unmarked head atom")
            }
            MarkingViolation::NotClosed { from, to, rule } => write!(
                f,
                "{} is marked but {} is reachable from it (rule {rule}) and unmarked",
                from.marking_name(),
                to.marking_name()
            ),
        }
    }
}

fn check_rules_local(p: &Program, m: &Marking) -> Result<(), MarkingViolation> {
    for (id, r) in graph_rules(p) {
        if r.body.iter().filter(|a| m.contains(&a.pred)).count() > 1 {
            return Err(MarkingViolation::TwoMarkedBodyAtoms { rule: id, text: r.to_string() });
        }
        if r.head.iter().filter(|a| !m.contains(&a.pred)).count() > 1 {
            return Err(MarkingViolation::TwoUnmarkedHeadAtoms { rule: id, text: r.to_string() });
        }
    }
    Ok(())
}

/// Checks the three marking conditions and reports the first violation.
pub fn is_marking(p: &Program, m: &Marking) -> Result<(), MarkingViolation> {
    let g = dependency_graph(p);
    let class = classify_with(p, &g);
    if let Some(q) = m.iter().find(|q| !class.disjunctive.contains(q)) {
        return Err(MarkingViolation::NotDisjunctive(q.clone()));
    }
    check_rules_local(p, m)?;
    for ((a, b), ids) in &g.edges {
        if m.contains(a) && !m.contains(b) {
            let rule = *ids.iter().next().expect("edges carry rules");
            return Err(MarkingViolation::NotClosed { from: a.clone(), to: b.clone(), rule });
        }
    }
    Ok(())
}

/// One propositional variable per disjunctive predicate and the 2-clauses
/// encoding the marking conditions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwoSatInstance {
    pub variables: Vec<Predicate>,
    pub clauses: Vec<[Lit; 2]>,
    /// Rules whose clause has two constantly false literals: two Horn head
    /// atoms in a rule that must have at most one unmarked head atom.
    pub conflicts: Vec<usize>,
}

impl TwoSatInstance {
    pub fn variable(&self, q: &Predicate) -> Option<usize> {
        self.variables.iter().position(|v| v == q)
    }
}

/// Literal for "this atom is marked"; `None` for a Horn predicate.
fn marked(vars: &BTreeMap<Predicate, usize>, q: &Predicate) -> Option<Lit> {
    vars.get(q).map(|&v| Lit::pos(v))
}

pub fn encode_2sat(p: &Program) -> TwoSatInstance {
    let class = classify_predicates(p);
    let variables: Vec<Predicate> = class.disjunctive.iter().cloned().collect();
    let vars: BTreeMap<Predicate, usize> =
        variables.iter().enumerate().map(|(i, q)| (q.clone(), i)).collect();
    let mut clauses = Vec::new();
    let mut conflicts = Vec::new();
    for (id, r) in graph_rules(p) {
        let body: Vec<Lit> = r.body.iter().filter_map(|a| marked(&vars, &a.pred)).collect();
        let head: Vec<Option<Lit>> = r.head.iter().map(|a| marked(&vars, &a.pred)).collect();
        for i in 0..body.len() {
            for j in i + 1..body.len() {
                clauses.push([body[i].negate(), body[j].negate()]);
            }
        }
        for i in 0..head.len() {
            for j in i + 1..head.len() {
                match (head[i], head[j]) {
                    (Some(a), Some(b)) => clauses.push([a, b]),
                    (Some(a), None) | (None, Some(a)) => clauses.push([a, a]),
                    (None, None) => conflicts.push(id),
                }
            }
        }
        for &b in &body {
            for h in &head {
                match h {
                    Some(q) => clauses.push([b.negate(), *q]),
                    None => clauses.push([b.negate(), b.negate()]),
                }
            }
        }
    }
    conflicts.dedup();
    TwoSatInstance { variables, clauses, conflicts }
}

/// Solves an encoded instance; the marking is the set of true variables.
pub fn solve_2sat(inst: &TwoSatInstance) -> Option<Vec<bool>> {
    if !inst.conflicts.is_empty() {
        return None;
    }
    solve_clauses(inst.variables.len(), &inst.clauses)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("program is not markable")]
pub struct NotMarkable;

/// Some marking of `p`, found by 2-SAT.
pub fn find_marking(p: &Program) -> Result<Marking, NotMarkable> {
    let inst = encode_2sat(p);
    let asg = solve_2sat(&inst).ok_or(NotMarkable)?;
    Ok(inst.variables.iter().zip(asg).filter(|(_, t)| *t).map(|(q, _)| q.clone()).collect())
}

/// Some marking of `p` made of unary predicates only.
pub fn find_unary_marking(p: &Program) -> Result<Marking, NotMarkable> {
    let mut inst = encode_2sat(p);
    for (v, q) in inst.variables.iter().enumerate() {
        if q.arity() != 1 {
            inst.clauses.push([Lit::neg(v), Lit::neg(v)]);
        }
    }
    let asg = solve_2sat(&inst).ok_or(NotMarkable)?;
    Ok(inst.variables.iter().zip(asg).filter(|(_, t)| *t).map(|(q, _)| q.clone()).collect())
}

/// Shrinks a marking to a subset-minimal one by dropping backward cones in
/// canonical order until nothing can be dropped.
pub fn minimize_marking(p: &Program, m: &Marking) -> Result<Marking, MarkingViolation> {
    is_marking(p, m)?;
    let g = dependency_graph(p);
    let mut current = m.clone();
    'outer: loop {
        for q in current.clone() {
            let cone: BTreeSet<Predicate> = current
                .iter()
                .filter(|c| g.reachable_from([*c]).contains(&q))
                .cloned()
                .collect();
            let candidate: Marking = current.difference(&cone).cloned().collect();
            if check_rules_local(p, &candidate).is_ok() {
                current = candidate;
                continue 'outer;
            }
        }
        return Ok(current);
    }
}

/// [`find_marking`] followed by [`minimize_marking`].
pub fn find_minimal_marking(p: &Program) -> Result<Marking, NotMarkable> {
    let m = find_marking(p)?;
    Ok(minimize_marking(p, &m).expect("2-SAT solutions are markings"))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{found} disjunctive predicates exceed the enumeration cap of {cap}")]
pub struct CapExceeded {
    pub found: usize,
    pub cap: usize,
}

pub const DEFAULT_ENUMERATION_CAP: usize = 16;

/// Every marking of `p`, smallest first, by brute force over subsets of the
/// disjunctive predicates.
pub fn enumerate_markings(p: &Program, cap: usize) -> Result<Vec<Marking>, CapExceeded> {
    let g = dependency_graph(p);
    let class = classify_with(p, &g);
    let preds: Vec<Predicate> = class.disjunctive.iter().cloned().collect();
    if preds.len() > cap {
        return Err(CapExceeded { found: preds.len(), cap });
    }
    let bit = |q: &Predicate| preds.iter().position(|x| x == q).map_or(0u64, |i| 1u64 << i);
    let mask = |atoms: &[crate::program::Atom]| atoms.iter().map(|a| bit(&a.pred)).collect::<Vec<_>>();
    let rules: Vec<(Vec<u64>, Vec<u64>)> = graph_rules(p).map(|(_, r)| (mask(&r.body), mask(&r.head))).collect();
    let edges: Vec<(u64, u64)> = g.edges.keys().map(|(a, b)| (bit(a), bit(b))).collect();
    let mut out = Vec::new();
    for s in 0u64..(1u64 << preds.len()) {
        let ok_rules = rules.iter().all(|(body, head)| {
            body.iter().filter(|&&b| b & s != 0).count() <= 1
                && head.iter().filter(|&&h| h & s == 0).count() <= 1
        });
        let closed = edges.iter().all(|&(a, b)| a & s == 0 || b & s != 0);
        if ok_rules && closed {
            out.push(preds.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).map(|(_, q)| q.clone()).collect::<Marking>());
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::parse_ontology;
    use crate::program::{parse_program, pi_translate, CongruenceMode};
    use crate::xi::xi_translate;

    const CHOICE_PROGRAM: &str = "A(?x) -> B(?x).\nB(?x) -> C(?x) | D(?x).\nC(?x) -> False(?x).\nD(?x) -> C(f(?x)).\n";
    const CLASH_ONTOLOGY: &str = "SubClassOf(A Or(B C))\nSubClassOf(B Some(R D))\nSubClassOf(Some(R D) D)\nSubClassOf(C Some(R B))\nSubClassOf(And(D E) Bot)\n";

    fn choice_program() -> Program {
        parse_program(&CHOICE_PROGRAM.replace("f(", "sk0("), CongruenceMode::default()).unwrap()
    }

    fn set(names: &[&str]) -> Marking {
        names
            .iter()
            .map(|n| match *n {
                "Bot" => Predicate::Bot,
                n => Predicate::concept(n),
            })
            .collect()
    }

    #[test]
    fn choice_program_graph_edges() {
        let g = dependency_graph(&choice_program());
        for (a, b) in [("A", "B"), ("B", "C"), ("B", "D"), ("D", "C")] {
            assert!(g.has_edge(&Predicate::concept(a), &Predicate::concept(b)));
        }
        assert!(g.has_edge(&Predicate::concept("C"), &Predicate::Bot));
        assert!(!g.vertices.is_empty());
        assert!(!g.edges.keys().any(|(_, q)| *q == Predicate::Top));
    }

    #[test]
    fn choice_program_classification() {
        let c = classify_predicates(&choice_program());
        assert_eq!(c.disjunctive, set(&["C", "D", "Bot"]));
        assert!(c.horn.contains(&Predicate::concept("A")));
        assert!(c.horn.contains(&Predicate::concept("B")));
    }

    #[test]
    fn choice_program_markings() {
        let p = choice_program();
        assert!(is_marking(&p, &set(&["C", "Bot"])).is_ok());
        assert!(matches!(
            is_marking(&p, &set(&["D", "Bot"])),
            Err(MarkingViolation::NotClosed { .. })
        ));
        assert!(matches!(
            is_marking(&p, &set(&["A"])),
            Err(MarkingViolation::NotDisjunctive(_))
        ));
        assert_eq!(
            enumerate_markings(&p, DEFAULT_ENUMERATION_CAP).unwrap(),
            vec![set(&["C", "Bot"]), set(&["C", "D", "Bot"])]
        );
        assert_eq!(minimize_marking(&p, &set(&["C", "D", "Bot"])).unwrap(), set(&["C", "Bot"]));
        let found = find_marking(&p).unwrap();
        assert!(is_marking(&p, &found).is_ok());
    }

    #[test]
    fn choice_program_clauses() {
        let inst = encode_2sat(&choice_program());
        let c = inst.variable(&Predicate::concept("C")).unwrap();
        let d = inst.variable(&Predicate::concept("D")).unwrap();
        let bot = inst.variable(&Predicate::Bot).unwrap();
        assert!(inst.clauses.contains(&[Lit::pos(c), Lit::pos(d)]));
        assert!(inst.clauses.contains(&[Lit::neg(c), Lit::pos(bot)]));
    }

    #[test]
    fn repeated_body_predicate_forces_unmarked() {
        let p = parse_program("A(?x) -> C(?x) | D(?x).\nC(?x), C(f(?x)) -> D(?x).", CongruenceMode::PredicatesOnly);
        assert!(p.is_err(), "plain f is not a function symbol");
        let p = parse_program(
            "A(?x) -> C(?x) | D(?x).\nC(?x), C(sk0(?x)) -> D(?x).",
            CongruenceMode::PredicatesOnly,
        )
        .unwrap();
        let inst = encode_2sat(&p);
        let c = inst.variable(&Predicate::concept("C")).unwrap();
        assert!(inst.clauses.contains(&[Lit::neg(c), Lit::neg(c)]));
    }

    #[test]
    fn example_ontology_markings() {
        let o = parse_ontology(CLASH_ONTOLOGY).unwrap();
        let xi = xi_translate(&o);
        let m = find_minimal_marking(&xi).unwrap();
        assert_eq!(format_marking(&m), "B,D,Bot");
        assert_eq!(find_marking(&pi_translate(&o)), Err(NotMarkable));
        let all = enumerate_markings(&xi, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(all[0], m);
        assert!(all.iter().all(|x| m.is_subset(x)));
    }

    #[test]
    fn horn_program_has_empty_marking() {
        let p = parse_program("A(?x) -> B(?x).", CongruenceMode::default()).unwrap();
        assert!(classify_predicates(&p).disjunctive.is_empty());
        assert_eq!(find_marking(&p).unwrap(), Marking::new());
        assert_eq!(enumerate_markings(&p, 16).unwrap(), vec![Marking::new()]);
        assert!(is_marking(&p, &Marking::new()).is_ok());
    }

    #[test]
    fn marking_lists() {
        let p = choice_program();
        assert_eq!(parse_marking("C, Bot", &p).unwrap(), set(&["C", "Bot"]));
        assert_eq!(parse_marking("C,False", &p).unwrap(), set(&["C", "Bot"]));
        assert!(parse_marking("not_C", &p).is_err());
        assert!(parse_marking("Z", &p).is_err());
        assert_eq!(parse_marking("", &p).unwrap(), Marking::new());
    }
}

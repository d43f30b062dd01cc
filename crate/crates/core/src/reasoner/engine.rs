//! Ground positive hyperresolution with a given-clause loop. Clauses are
//! disjunctions of interned ground atoms; each clause resolves only on its
//! largest atom.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};
use std::rc::Rc;

use super::trace::{Trace, TraceStep};
use super::ReasonerError;
use crate::program::{Atom, FunctionSymbol, Predicate, Program, Rule, Term};

type TermId = u32;
type AtomId = u32;
type ClauseId = usize;

/// What happens to a term that would exceed the depth bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum DepthMode {
    /// The inference is dropped.
    Omit,
    /// The term is folded back to the bound by dropping its innermost
    /// function symbol, which fixes a finite interpretation of every symbol.
    Truncate,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum TermNode {
    Const(String),
    App(u32, TermId),
}

#[derive(Clone)]
enum Pat {
    Var(usize),
    Const(TermId),
    App(u32, Box<Pat>),
}

struct CAtom {
    pred: u32,
    args: Vec<Pat>,
}

struct CRule {
    body: Vec<CAtom>,
    head: Vec<CAtom>,
    vars: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct GAtom {
    pred: u32,
    args: [TermId; 2],
    arity: u8,
}

struct Derivation {
    rule: usize,
    premises: Vec<ClauseId>,
    subst: Vec<TermId>,
}

struct Clause {
    atoms: Vec<AtomId>,
    from: Derivation,
}

pub(crate) struct Outcome {
    pub refutation: Option<Trace>,
    /// Some inference was dropped by the depth bound.
    pub blocked: bool,
    pub atom_count: usize,
    /// Atoms holding in every model of the saturated clause set.
    pub facts: Vec<Atom>,
}

pub(crate) struct Engine {
    mode: DepthMode,
    depth: usize,
    budget: usize,
    stop_at_refutation: bool,

    functions: Vec<FunctionSymbol>,
    preds: Vec<Predicate>,
    pred_ids: HashMap<Predicate, u32>,
    rules: Rc<Vec<CRule>>,
    /// `(pred, rule, body position)` for every body atom.
    by_body_pred: Vec<Vec<(usize, usize)>>,

    terms: Vec<TermNode>,
    term_depth: Vec<usize>,
    term_ids: HashMap<TermNode, TermId>,
    atoms: Vec<GAtom>,
    atom_ids: HashMap<GAtom, AtomId>,
    fact: Vec<bool>,

    clauses: Vec<Clause>,
    seen: HashSet<Vec<AtomId>>,
    queue: BinaryHeap<Reverse<(usize, ClauseId)>>,
    active_by_pred: Vec<Vec<ClauseId>>,
    active_by_arg: HashMap<(u32, u8, TermId), Vec<ClauseId>>,
    blocked: bool,
    refutation: Option<ClauseId>,
}

impl Engine {
    pub fn new(program: &Program, mode: DepthMode, depth: usize, budget: usize) -> Result<Self, ReasonerError> {
        let sig = program.signature();
        let functions: Vec<FunctionSymbol> = sig.functions.into_iter().collect();
        let mut e = Engine {
            mode,
            depth,
            budget,
            stop_at_refutation: true,
            functions,
            preds: Vec::new(),
            pred_ids: HashMap::new(),
            rules: Rc::new(Vec::new()),
            by_body_pred: Vec::new(),
            terms: Vec::new(),
            term_depth: Vec::new(),
            term_ids: HashMap::new(),
            atoms: Vec::new(),
            atom_ids: HashMap::new(),
            fact: Vec::new(),
            clauses: Vec::new(),
            seen: HashSet::new(),
            queue: BinaryHeap::new(),
            active_by_pred: Vec::new(),
            active_by_arg: HashMap::new(),
            blocked: false,
            refutation: None,
        };
        let mut rules = Vec::new();
        for r in program.rules() {
            if !r.is_safe() {
                return Err(ReasonerError::UnsafeRule(r.to_string()));
            }
            rules.push(e.compile(r));
        }
        e.rules = Rc::new(rules);
        for (ri, r) in e.rules.iter().enumerate() {
            for (bi, a) in r.body.iter().enumerate() {
                e.by_body_pred[a.pred as usize].push((ri, bi));
            }
        }
        Ok(e)
    }

    pub fn keep_going_after_refutation(mut self) -> Self {
        self.stop_at_refutation = false;
        self
    }

    fn pred_id(&mut self, p: &Predicate) -> u32 {
        if let Some(&i) = self.pred_ids.get(p) {
            return i;
        }
        let i = self.preds.len() as u32;
        self.preds.push(p.clone());
        self.pred_ids.insert(p.clone(), i);
        self.by_body_pred.push(Vec::new());
        self.active_by_pred.push(Vec::new());
        i
    }

    fn fn_id(&self, f: &FunctionSymbol) -> u32 {
        self.functions.iter().position(|g| g == f).expect("function symbol from the signature") as u32
    }

    fn compile(&mut self, r: &Rule) -> CRule {
        let mut vars: Vec<String> = Vec::new();
        let atoms = |e: &mut Self, list: &[Atom], vars: &mut Vec<String>| -> Vec<CAtom> {
            list.iter()
                .map(|a| CAtom { pred: e.pred_id(&a.pred), args: a.args.iter().map(|t| e.pattern(t, vars)).collect() })
                .collect()
        };
        let body = atoms(self, &r.body, &mut vars);
        let head = atoms(self, &r.head, &mut vars);
        CRule { body, head, vars }
    }

    fn pattern(&mut self, t: &Term, vars: &mut Vec<String>) -> Pat {
        match t {
            Term::Var(v) => Pat::Var(match vars.iter().position(|w| w == v) {
                Some(i) => i,
                None => {
                    vars.push(v.clone());
                    vars.len() - 1
                }
            }),
            Term::Const(c) => Pat::Const(self.intern(TermNode::Const(c.clone()), 0)),
            Term::App(f, inner) => Pat::App(self.fn_id(f), Box::new(self.pattern(inner, vars))),
        }
    }

    fn intern(&mut self, node: TermNode, depth: usize) -> TermId {
        if let Some(&i) = self.term_ids.get(&node) {
            return i;
        }
        let i = self.terms.len() as TermId;
        self.terms.push(node.clone());
        self.term_depth.push(depth);
        self.term_ids.insert(node, i);
        i
    }

    /// `f(t)` under the depth bound; `None` if the inference must be dropped.
    fn apply(&mut self, f: u32, t: TermId) -> Option<TermId> {
        let d = self.term_depth[t as usize];
        if d < self.depth {
            return Some(self.intern(TermNode::App(f, t), d + 1));
        }
        match self.mode {
            DepthMode::Omit => None,
            DepthMode::Truncate if self.depth == 0 => Some(t),
            DepthMode::Truncate => {
                let inner = self.drop_innermost(t);
                let di = self.term_depth[inner as usize];
                Some(self.intern(TermNode::App(f, inner), di + 1))
            }
        }
    }

    fn drop_innermost(&mut self, t: TermId) -> TermId {
        match self.terms[t as usize].clone() {
            TermNode::Const(_) => t,
            TermNode::App(_, inner) if matches!(self.terms[inner as usize], TermNode::Const(_)) => inner,
            TermNode::App(g, inner) => {
                let rest = self.drop_innermost(inner);
                let d = self.term_depth[rest as usize];
                self.intern(TermNode::App(g, rest), d + 1)
            }
        }
    }

    fn eval(&mut self, p: &Pat, s: &[Option<TermId>]) -> Option<TermId> {
        match p {
            Pat::Var(v) => Some(s[*v].expect("safe rules bind head variables")),
            Pat::Const(c) => Some(*c),
            Pat::App(f, inner) => {
                let t = self.eval(inner, s)?;
                self.apply(*f, t)
            }
        }
    }

    /// The existing term `f(t)` denotes, without creating it.
    fn lookup_apply(&self, f: u32, t: TermId) -> Option<TermId> {
        if self.term_depth[t as usize] < self.depth {
            return self.term_ids.get(&TermNode::App(f, t)).copied();
        }
        match self.mode {
            DepthMode::Omit => None,
            DepthMode::Truncate if self.depth == 0 => Some(t),
            DepthMode::Truncate => {
                let inner = self.lookup_drop(t)?;
                self.term_ids.get(&TermNode::App(f, inner)).copied()
            }
        }
    }

    fn lookup_drop(&self, t: TermId) -> Option<TermId> {
        match self.terms[t as usize] {
            TermNode::Const(_) => Some(t),
            TermNode::App(_, inner) if matches!(self.terms[inner as usize], TermNode::Const(_)) => Some(inner),
            TermNode::App(g, inner) => {
                let rest = self.lookup_drop(inner)?;
                self.term_ids.get(&TermNode::App(g, rest)).copied()
            }
        }
    }

    /// The existing term a pattern denotes under `s`: `None` if it has an
    /// unbound variable, `Some(None)` if the term does not exist.
    fn lookup(&self, p: &Pat, s: &[Option<TermId>]) -> Option<Option<TermId>> {
        match p {
            Pat::Var(v) => s[*v].map(Some),
            Pat::Const(c) => Some(Some(*c)),
            Pat::App(f, inner) => {
                let t = self.lookup(inner, s)?;
                Some(t.and_then(|t| self.lookup_apply(*f, t)))
            }
        }
    }

    /// `u` with `h` inserted directly above its constant.
    fn insert_innermost(&mut self, u: TermId, h: u32) -> TermId {
        match self.terms[u as usize].clone() {
            TermNode::Const(_) => self.intern(TermNode::App(h, u), 1),
            TermNode::App(g, inner) => {
                let rest = self.insert_innermost(inner, h);
                let d = self.term_depth[rest as usize];
                self.intern(TermNode::App(g, rest), d + 1)
            }
        }
    }

    /// Every `u` with `f(u)` evaluating to `t`.
    fn preimages(&mut self, f: u32, t: TermId) -> Vec<TermId> {
        if self.mode == DepthMode::Truncate && self.depth == 0 {
            return vec![t];
        }
        let TermNode::App(g, u) = self.terms[t as usize] else { return vec![] };
        if g != f {
            return vec![];
        }
        let mut out = vec![u];
        if self.mode == DepthMode::Truncate && self.term_depth[t as usize] == self.depth {
            for h in 0..self.functions.len() as u32 {
                out.push(self.insert_innermost(u, h));
            }
        }
        out
    }

    fn match_pat(&mut self, p: &Pat, t: TermId, s: Vec<Option<TermId>>, out: &mut Vec<Vec<Option<TermId>>>) {
        match p {
            Pat::Var(v) => match s[*v] {
                Some(b) if b != t => {}
                Some(_) => out.push(s),
                None => {
                    let mut s = s;
                    s[*v] = Some(t);
                    out.push(s);
                }
            },
            Pat::Const(c) => {
                if *c == t {
                    out.push(s);
                }
            }
            Pat::App(f, inner) => {
                for u in self.preimages(*f, t) {
                    self.match_pat(inner, u, s.clone(), out);
                }
            }
        }
    }

    /// All extensions of `s` under which `a` denotes `g`.
    fn match_atom(&mut self, a: &CAtom, g: &GAtom, s: Vec<Option<TermId>>) -> Vec<Vec<Option<TermId>>> {
        if a.pred != g.pred || a.args.len() != g.arity as usize {
            return vec![];
        }
        let mut current = vec![s];
        for (i, p) in a.args.iter().enumerate() {
            let mut next = Vec::new();
            for s in current {
                self.match_pat(p, g.args[i], s, &mut next);
            }
            current = next;
        }
        current
    }

    fn atom_id(&mut self, g: GAtom) -> Result<AtomId, ReasonerError> {
        if let Some(&i) = self.atom_ids.get(&g) {
            return Ok(i);
        }
        if self.atoms.len() >= self.budget {
            return Err(ReasonerError::BudgetExceeded { budget: self.budget });
        }
        let i = self.atoms.len() as AtomId;
        self.atoms.push(g);
        self.atom_ids.insert(g, i);
        self.fact.push(false);
        Ok(i)
    }

    fn selected(&self, c: ClauseId) -> GAtom {
        self.atoms[*self.clauses[c].atoms.last().expect("non-empty clause") as usize]
    }

    fn redundant(&self, c: ClauseId) -> bool {
        let atoms = &self.clauses[c].atoms;
        atoms.len() > 1 && atoms.iter().any(|&a| self.fact[a as usize])
    }

    fn add_clause(&mut self, mut atoms: Vec<AtomId>, from: Derivation) {
        atoms.sort_unstable();
        atoms.dedup();
        if atoms.iter().any(|&a| self.fact[a as usize]) || self.seen.contains(&atoms) {
            return;
        }
        let id = self.clauses.len();
        if atoms.len() == 1 {
            self.fact[atoms[0] as usize] = true;
        }
        if atoms.is_empty() && self.refutation.is_none() {
            self.refutation = Some(id);
        }
        self.seen.insert(atoms.clone());
        self.queue.push(Reverse((atoms.len(), id)));
        self.clauses.push(Clause { atoms, from });
    }

    fn activate(&mut self, c: ClauseId) {
        let g = self.selected(c);
        self.active_by_pred[g.pred as usize].push(c);
        for i in 0..g.arity as usize {
            self.active_by_arg.entry((g.pred, i as u8, g.args[i])).or_default().push(c);
        }
    }

    /// Instantiates the head and collects the side atoms of the premises.
    fn infer(&mut self, rule: usize, s: &[Option<TermId>], premises: Vec<ClauseId>) -> Result<(), ReasonerError> {
        let mut atoms = Vec::new();
        let rules = Rc::clone(&self.rules);
        for head in &rules[rule].head {
            let (pred, args) = (head.pred, &head.args);
            let mut ids = [0; 2];
            for (i, p) in args.iter().enumerate() {
                match self.eval(p, s) {
                    Some(t) => ids[i] = t,
                    None => {
                        self.blocked = true;
                        return Ok(());
                    }
                }
            }
            atoms.push(self.atom_id(GAtom { pred, args: ids, arity: args.len() as u8 })?);
        }
        for &c in &premises {
            let cl = &self.clauses[c].atoms;
            atoms.extend_from_slice(&cl[..cl.len() - 1]);
        }
        let subst = s.iter().map(|t| t.expect("rules are safe")).collect();
        self.add_clause(atoms, Derivation { rule, premises, subst });
        Ok(())
    }

    fn candidates(&self, a: &CAtom, s: &[Option<TermId>]) -> Vec<ClauseId> {
        let mut best: Option<&Vec<ClauseId>> = None;
        for (i, p) in a.args.iter().enumerate() {
            match self.lookup(p, s) {
                Some(Some(t)) => {
                    let Some(list) = self.active_by_arg.get(&(a.pred, i as u8, t)) else { return vec![] };
                    if best.is_none_or(|b| list.len() < b.len()) {
                        best = Some(list);
                    }
                }
                Some(None) => return vec![],
                None => {}
            }
        }
        best.unwrap_or(&self.active_by_pred[a.pred as usize]).clone()
    }

    /// Matches body positions `todo` against active clauses.
    fn join(
        &mut self,
        rule: usize,
        given: ClauseId,
        given_pos: usize,
        todo: &mut Vec<usize>,
        s: &mut [Option<TermId>],
        chosen: &mut Vec<(usize, ClauseId)>,
    ) -> Result<(), ReasonerError> {
        if self.refutation.is_some() && self.stop_at_refutation {
            return Ok(());
        }
        let Some(pos) = todo.pop() else {
            let mut premises = chosen.clone();
            premises.sort_unstable();
            let premises = premises.into_iter().map(|(_, c)| c).collect();
            return self.infer(rule, s, premises);
        };
        let cands = {
            let a = &self.rules[rule].body[pos];
            self.candidates(a, s)
        };
        let rules = Rc::clone(&self.rules);
        let atom = &rules[rule].body[pos];
        for c in cands {
            if (pos < given_pos && c == given) || self.redundant(c) {
                continue;
            }
            let g = self.selected(c);
            for mut s2 in self.match_atom(atom, &g, s.to_vec()) {
                chosen.push((pos, c));
                self.join(rule, given, given_pos, todo, &mut s2, chosen)?;
                chosen.pop();
            }
        }
        todo.push(pos);
        Ok(())
    }

    pub fn run(mut self) -> Result<Outcome, ReasonerError> {
        for ri in 0..self.rules.len() {
            if self.rules[ri].body.is_empty() {
                let s = vec![None; self.rules[ri].vars.len()];
                self.infer(ri, &s, vec![])?;
            }
        }
        while let Some(Reverse((_, c))) = self.queue.pop() {
            if self.refutation.is_some() && self.stop_at_refutation {
                break;
            }
            if self.clauses[c].atoms.is_empty() || self.redundant(c) {
                continue;
            }
            self.activate(c);
            let g = self.selected(c);
            let uses = self.by_body_pred[g.pred as usize].clone();
            for (ri, bi) in uses {
                let rules = Rc::clone(&self.rules);
                let s = vec![None; rules[ri].vars.len()];
                for mut s in self.match_atom(&rules[ri].body[bi], &g, s) {
                    let mut todo: Vec<usize> = (0..rules[ri].body.len()).filter(|&j| j != bi).rev().collect();
                    let mut chosen = vec![(bi, c)];
                    self.join(ri, c, bi, &mut todo, &mut s, &mut chosen)?;
                }
            }
        }
        let refutation = self.refutation.map(|c| self.trace(c));
        let facts = (0..self.atoms.len()).filter(|&a| self.fact[a]).map(|a| self.to_atom(a as AtomId)).collect();
        Ok(Outcome { refutation, blocked: self.blocked, atom_count: self.atoms.len(), facts })
    }

    fn to_term(&self, t: TermId) -> Term {
        match &self.terms[t as usize] {
            TermNode::Const(c) => Term::Const(c.clone()),
            TermNode::App(f, u) => Term::app(&self.functions[*f as usize], self.to_term(*u)),
        }
    }

    fn to_atom(&self, a: AtomId) -> Atom {
        let g = self.atoms[a as usize];
        Atom::new(
            self.preds[g.pred as usize].clone(),
            g.args[..g.arity as usize].iter().map(|&t| self.to_term(t)).collect(),
        )
    }

    fn trace(&self, root: ClauseId) -> Trace {
        let mut needed = vec![root];
        let mut keep = std::collections::BTreeSet::new();
        while let Some(c) = needed.pop() {
            if keep.insert(c) {
                needed.extend(&self.clauses[c].from.premises);
            }
        }
        let renumber: BTreeMap<ClauseId, usize> = keep.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let steps = keep
            .iter()
            .map(|&c| {
                let cl = &self.clauses[c];
                let vars = &self.rules[cl.from.rule].vars;
                TraceStep {
                    clause: cl.atoms.iter().map(|&a| self.to_atom(a)).collect(),
                    rule: cl.from.rule,
                    premises: cl.from.premises.iter().map(|p| renumber[p]).collect(),
                    subst: vars.iter().cloned().zip(cl.from.subst.iter().map(|&t| self.to_term(t))).collect(),
                }
            })
            .collect();
        Trace { steps }
    }
}

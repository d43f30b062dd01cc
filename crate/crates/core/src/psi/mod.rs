//! Reading transposed Horn programs back as Horn DL axioms: rule shapes
//! T1-T20, fresh successor, inverse-alias and union roles, structural
//! normalization and the end-to-end rewriting pipeline.

mod normalize;
mod rewrite;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::ontology::{Concept, ConceptName, GeneralAxiom, Role};
use crate::program::{Atom, FunctionSymbol, Origin, Predicate, Program, Rule, Term};

pub use normalize::{normalize_ontology, NormalizeError};
pub use rewrite::{rewrite_ontology, rewrite_ontology_with, RewriteError, RewriteOptions, Rewriting};

/// Shape of a Horn rule as far as the back-translation is concerned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleType {
    T1,
    T2,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
    T11,
    T12,
    T13,
    T14,
    T15,
    T16,
    T17,
    T18,
    T19,
    T20,
    Unclassifiable,
}

impl fmt::Display for RuleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleType::Unclassifiable => f.write_str("unclassifiable"),
            other => write!(f, "{other:?}"),
        }
    }
}

/// Names invented by the back-translation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FreshNames {
    /// `f_{R,Y}` to the role standing for its successors.
    pub successor_roles: BTreeMap<FunctionSymbol, String>,
    /// Successor role to the role declared equivalent to its inverse.
    pub inverse_aliases: BTreeMap<String, String>,
    /// Unordered role pair to the role containing both.
    pub union_roles: BTreeMap<(Role, Role), String>,
    /// Complement predicates to concept names.
    pub complements: BTreeMap<String, String>,
}

impl FreshNames {
    fn successor(&mut self, f: &FunctionSymbol) -> Role {
        let name = self
            .successor_roles
            .entry(f.clone())
            .or_insert_with(|| match f {
                FunctionSymbol::Indexed { role, filler } => {
                    let inv = if role.inverse { "inv_" } else { "" };
                    format!("{inv}{}__{filler}", role.name)
                }
                FunctionSymbol::Skolem(i) => format!("sk{i}"),
            })
            .clone();
        Role::named(name)
    }

    fn tilde(&mut self, f: &FunctionSymbol) -> Role {
        let base = self.successor(f).name;
        let name = self.inverse_aliases.entry(base.clone()).or_insert_with(|| format!("tilde_{base}"));
        Role::named(name.clone())
    }

    fn union(&mut self, a: &Role, b: &Role) -> Role {
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        let render = |r: &Role| if r.inverse { format!("inv_{}", r.name) } else { r.name.clone() };
        let name = self
            .union_roles
            .entry(key.clone())
            .or_insert_with(|| format!("union_{}_{}", render(&key.0), render(&key.1)));
        Role::named(name.clone())
    }

    fn concept(&mut self, p: &Predicate) -> Option<Concept> {
        match p {
            Predicate::Concept(n) => Some(Concept::name(n)),
            Predicate::Top => Some(Concept::Atomic(ConceptName::Top)),
            Predicate::Bot => Some(Concept::Atomic(ConceptName::Bot)),
            Predicate::Complement(inner) if inner.arity() == 1 => {
                let name = format!("not_{}", inner.marking_name());
                self.complements.insert(p.to_string(), name.clone());
                Some(Concept::name(&name))
            }
            _ => None,
        }
    }

    /// Every invented name.
    pub fn all(&self) -> BTreeSet<String> {
        self.successor_roles
            .values()
            .chain(self.inverse_aliases.values())
            .chain(self.union_roles.values())
            .chain(self.complements.values())
            .cloned()
            .collect()
    }
}

fn conj(mut parts: Vec<Concept>) -> Concept {
    match parts.len() {
        0 => Concept::Atomic(ConceptName::Top),
        1 => parts.pop().unwrap(),
        _ => Concept::And(parts),
    }
}

fn sub(l: Concept, r: Concept) -> GeneralAxiom {
    GeneralAxiom::SubClassOf(l, r)
}

fn subrole(a: &Role, b: &Role) -> GeneralAxiom {
    GeneralAxiom::SubRoleOf(a.clone(), b.clone())
}

/// Body without the `⊥̄(z)` guard, and the head (`None` for falsehood).
struct View {
    guarded: bool,
    body: Vec<Atom>,
    head: Atom,
}

fn view(r: &Rule) -> Option<View> {
    let [head] = &r.head[..] else { return None };
    if head.pred == Predicate::Bot {
        if let Term::Var(z) = &head.args[0] {
            let guard = Atom::unary(Predicate::bot_bar(), head.args[0].clone());
            let others = r.body.iter().filter(|a| **a != guard);
            let z_elsewhere = others.clone().any(|a| a.vars().contains(z.as_str()));
            if r.body.contains(&guard) && !z_elsewhere {
                return Some(View { guarded: true, body: others.cloned().collect(), head: head.clone() });
            }
        }
    }
    Some(View { guarded: false, body: r.body.clone(), head: head.clone() })
}

/// Concepts of the unary body atoms, grouped by argument.
fn unary_groups(body: &[Atom], names: &mut FreshNames) -> Option<BTreeMap<Term, Vec<Concept>>> {
    let mut out: BTreeMap<Term, Vec<Concept>> = BTreeMap::new();
    for a in body.iter().filter(|a| a.args.len() == 1) {
        out.entry(a.args[0].clone()).or_default().push(names.concept(&a.pred)?);
    }
    Some(out)
}

fn take(groups: &mut BTreeMap<Term, Vec<Concept>>, t: &Term) -> Vec<Concept> {
    groups.remove(t).unwrap_or_default()
}

fn as_set(cs: &[Concept]) -> BTreeSet<&Concept> {
    cs.iter().collect()
}

fn fn_of(t: &Term) -> Option<(&FunctionSymbol, &Term)> {
    match t {
        Term::App(f, inner) => Some((f, inner)),
        _ => None,
    }
}

fn role_pred(a: &Atom) -> Option<&str> {
    match &a.pred {
        Predicate::Role(n) => Some(n),
        _ => None,
    }
}

/// Role `R` such that `a` reads `⟨R⟩(from, to)`.
fn oriented(a: &Atom, from: &Term, to: &Term) -> Option<Role> {
    let name = role_pred(a)?;
    if a.args[0] == *from && a.args[1] == *to {
        Some(Role::named(name))
    } else if a.args[0] == *to && a.args[1] == *from {
        Some(Role::inverse_of(name))
    } else {
        None
    }
}

/// Classifies `r` and returns its back-translation, or `None` if the rule
/// has none of the supported shapes.
fn analyze(r: &Rule, names: &mut FreshNames) -> Option<(RuleType, Vec<GeneralAxiom>)> {
    let v = view(r)?;
    let binaries: Vec<&Atom> = v.body.iter().filter(|a| a.args.len() == 2).collect();
    let mut groups = unary_groups(&v.body, names)?;
    let head = &v.head;

    if head.pred == Predicate::Eq {
        return analyze_equality(&v, &binaries, groups, names);
    }
    if head.args.len() == 2 {
        // S(x,y) -> R(x,y) or R(y,x)
        let [b] = binaries[..] else { return None };
        if !groups.is_empty() || v.guarded || b.args[0] == b.args[1] {
            return None;
        }
        let s = role_pred(b)?;
        let sup = oriented(head, &b.args[0], &b.args[1])?;
        let ax = subrole(&Role::named(s), &sup);
        return Some((RuleType::T5, vec![ax]));
    }
    let rhs = if v.guarded { Concept::Atomic(ConceptName::Bot) } else { names.concept(&head.pred)? };
    let head_term = &head.args[0];
    let is_bot_bar = head.pred == Predicate::bot_bar();

    match binaries[..] {
        [] => {
            let heads = if v.guarded { None } else { Some(head) };
            let root = v.body.iter().chain(heads).map(|a| a.args[0].root().clone()).collect::<BTreeSet<_>>();
            if root.len() != 1 {
                return None;
            }
            let x = root.into_iter().next().unwrap();
            if !matches!(x, Term::Var(_)) {
                return None;
            }
            let ux = take(&mut groups, &x);
            let fx = match groups.keys().next().cloned().or_else(|| (head_term.depth() > 0).then(|| head_term.clone())) {
                None => None,
                Some(t) => {
                    let (f, inner) = fn_of(&t)?;
                    if *inner != x {
                        return None;
                    }
                    Some((t.clone(), f.clone()))
                }
            };
            let Some((ft, f)) = fx else {
                // function-free, one variable
                if ux.is_empty() || *head_term != x && !v.guarded {
                    return None;
                }
                return Some((RuleType::T1, vec![sub(conj(ux), rhs)]));
            };
            let uf = take(&mut groups, &ft);
            if !groups.is_empty() {
                return None;
            }
            let role = names.successor(&f);
            let head_on_f = !v.guarded && *head_term == ft;
            let head_on_x = !v.guarded && *head_term == x;
            if head_on_f && is_bot_bar && uf.is_empty() && ux == [Concept::name("not_Bot")] {
                let bb = Concept::name("not_Bot");
                return Some((RuleType::T9, vec![sub(bb.clone(), Concept::some(role, bb))]));
            }
            if head_on_f && uf.is_empty() {
                return Some((RuleType::T10, vec![sub(conj(ux), Concept::all(role, rhs))]));
            }
            if head_on_f {
                let mut lhs = ux;
                lhs.push(Concept::some(role.clone(), conj(uf)));
                return Some((RuleType::T12, vec![sub(conj(lhs), Concept::all(role, rhs))]));
            }
            if head_on_x && ux.is_empty() && !uf.is_empty() {
                let t = if uf.len() == 1 { RuleType::T11 } else { RuleType::T14 };
                return Some((t, vec![sub(Concept::some(role, conj(uf)), rhs)]));
            }
            if v.guarded && !uf.is_empty() {
                let t = if uf.len() == 1 { RuleType::T8 } else { RuleType::T13 };
                let mut lhs = ux;
                lhs.push(Concept::some(role, conj(uf)));
                return Some((t, vec![sub(conj(lhs), rhs)]));
            }
            None
        }
        [b] => {
            let (a0, a1) = (&b.args[0], &b.args[1]);
            if a0 == a1 || !matches!(a0, Term::Var(_)) || !matches!(a1, Term::Var(_)) {
                return None;
            }
            let role = Role::named(role_pred(b)?);
            let u0 = take(&mut groups, a0);
            let u1 = take(&mut groups, a1);
            if !groups.is_empty() {
                return None;
            }
            if v.guarded {
                let mut lhs = u0;
                lhs.push(Concept::some(role, conj(u1)));
                return Some((RuleType::T7, vec![sub(conj(lhs), rhs)]));
            }
            if head_term == a0 && u0.is_empty() {
                let t = if is_bot_bar && u1.is_empty() { RuleType::T19 } else { RuleType::T2 };
                return Some((t, vec![sub(Concept::some(role, conj(u1)), rhs)]));
            }
            if head_term == a1 && u1.is_empty() {
                let t = if is_bot_bar && u0.is_empty() { RuleType::T20 } else { RuleType::T4 };
                return Some((t, vec![sub(conj(u0), Concept::all(role, rhs))]));
            }
            None
        }
        _ => None,
    }
}

fn analyze_equality(
    v: &View,
    binaries: &[&Atom],
    mut groups: BTreeMap<Term, Vec<Concept>>,
    names: &mut FreshNames,
) -> Option<(RuleType, Vec<GeneralAxiom>)> {
    if v.guarded {
        return None;
    }
    let (s, t) = (&v.head.args[0], &v.head.args[1]);
    let same_filler = |g: &mut BTreeMap<Term, Vec<Concept>>, a: &Term, b: &Term| {
        let ua = take(g, a);
        let ub = if a == b { ua.clone() } else { take(g, b) };
        (as_set(&ua) == as_set(&ub)).then_some(ua)
    };
    let at_most = |lhs: Vec<Concept>, role: Role, filler: Vec<Concept>| {
        sub(conj(lhs), Concept::at_most_one(role, conj(filler)))
    };
    match (s.depth(), t.depth(), binaries) {
        (0, 0, [b1, b2]) => {
            // A(z), R(z,x1), R(z,x2), B(x1), B(x2) -> x1 = x2
            if role_pred(b1)? != role_pred(b2)? || s == t {
                return None;
            }
            let (z, role) = if b1.args[1] == *s && b2.args[1] == *t || b1.args[1] == *t && b2.args[1] == *s {
                (b1.args[0].clone(), Role::named(role_pred(b1)?))
            } else if b1.args[0] == *s && b2.args[0] == *t || b1.args[0] == *t && b2.args[0] == *s {
                (b1.args[1].clone(), Role::inverse_of(role_pred(b1)?))
            } else {
                return None;
            };
            if oriented(b1, &z, s).is_none() && oriented(b1, &z, t).is_none() {
                return None;
            }
            if b1.args[0] != b2.args[0] && b1.args[1] != b2.args[1] {
                return None;
            }
            let a = take(&mut groups, &z);
            let b = same_filler(&mut groups, s, t)?;
            if !groups.is_empty() || matches!(z, Term::App(..)) {
                return None;
            }
            Some((RuleType::T6, vec![at_most(a, role, b)]))
        }
        (1, 0, [bin]) | (0, 1, [bin]) => {
            // A(z), B(f(z)), R(z,x), B(x) -> f(z) = x
            let (fz, x) = if s.depth() == 1 { (s, t) } else { (t, s) };
            let (f, z) = fn_of(fz)?;
            let role = oriented(bin, z, x)?;
            let a = take(&mut groups, z);
            let b = same_filler(&mut groups, fz, x)?;
            if !groups.is_empty() {
                return None;
            }
            let succ = names.successor(f);
            let u = names.union(&succ, &role);
            Some((RuleType::T15, vec![subrole(&succ, &u), subrole(&role, &u), at_most(a, u, b)]))
        }
        (0, 0, [bin]) => {
            // A(f(x)), B(x), R(f(x),y), B(y) -> x = y
            let fx = bin.args.iter().find(|a| a.depth() == 1)?;
            let (f, x) = fn_of(fx)?;
            let y = if x == s { t } else if x == t { s } else { return None };
            let role = oriented(bin, fx, y)?;
            let a = take(&mut groups, fx);
            let b = same_filler(&mut groups, x, y)?;
            if !groups.is_empty() {
                return None;
            }
            let succ = names.successor(f);
            let tilde = names.tilde(f);
            let u = names.union(&tilde, &role);
            Some((
                RuleType::T16,
                vec![
                    subrole(&tilde, &u),
                    subrole(&role, &u),
                    at_most(a, u, b),
                    subrole(&tilde, &succ.inv()),
                    subrole(&succ.inv(), &tilde),
                ],
            ))
        }
        (1, 1, []) => {
            // A(z), B(f1(z)), B(f2(z)) -> f1(z) = f2(z)
            let (f1, z1) = fn_of(s)?;
            let (f2, z2) = fn_of(t)?;
            if z1 != z2 || !matches!(z1, Term::Var(_)) {
                return None;
            }
            let a = take(&mut groups, z1);
            let b = same_filler(&mut groups, s, t)?;
            if !groups.is_empty() {
                return None;
            }
            let (r1, r2) = (names.successor(f1), names.successor(f2));
            let u = names.union(&r1, &r2);
            Some((RuleType::T17, vec![subrole(&r1, &u), subrole(&r2, &u), at_most(a, u, b)]))
        }
        (0, 2, []) | (2, 0, []) => {
            // A(f1(x)), B(x), B(f2(f1(x))) -> x = f2(f1(x))
            let (x, outer) = if s.depth() == 0 { (s, t) } else { (t, s) };
            let (f2, inner) = fn_of(outer)?;
            let (f1, root) = fn_of(inner)?;
            if root != x {
                return None;
            }
            let a = take(&mut groups, inner);
            let b = same_filler(&mut groups, x, outer)?;
            if !groups.is_empty() {
                return None;
            }
            let r1 = names.successor(f1);
            let tilde = names.tilde(f1);
            let r2 = names.successor(f2);
            let u = names.union(&tilde, &r2);
            Some((
                RuleType::T18,
                vec![
                    subrole(&tilde, &u),
                    subrole(&r2, &u),
                    at_most(a, u, b),
                    subrole(&tilde, &r1.inv()),
                    subrole(&r1.inv(), &tilde),
                ],
            ))
        }
        _ => None,
    }
}

/// The shape of a Horn rule.
pub fn classify_rule(r: &Rule) -> Result<RuleType, PsiError> {
    if !r.is_horn() {
        return Err(PsiError::NotHorn { rule: r.to_string() });
    }
    Ok(analyze(r, &mut FreshNames::default()).map_or(RuleType::Unclassifiable, |(t, _)| t))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PsiError {
    #[error("rule `{rule}` is not Horn")]
    NotHorn { rule: String },
    #[error("rule `{rule}` ({origin}) has no DL counterpart")]
    Unclassifiable { rule: String, origin: Origin },
    #[error("fresh name '{0}' already occurs in the input")]
    NameCollision(String),
}

/// Back-translated axioms, with the type of each core rule.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PsiOutput {
    pub axioms: Vec<GeneralAxiom>,
    pub rule_types: Vec<RuleType>,
    pub names: FreshNames,
}

/// Maps every core rule of a Horn program to DL axioms. The Σ-components
/// are not translated.
pub fn psi_backtranslate(p: &Program) -> Result<PsiOutput, PsiError> {
    let mut out = PsiOutput::default();
    let mut seen = BTreeSet::new();
    for r in &p.core {
        if !r.is_horn() {
            return Err(PsiError::NotHorn { rule: r.to_string() });
        }
        let (t, axioms) = analyze(r, &mut out.names)
            .ok_or_else(|| PsiError::Unclassifiable { rule: r.to_string(), origin: r.origin })?;
        out.rule_types.push(t);
        for ax in axioms {
            if seen.insert(ax.clone()) {
                out.axioms.push(ax);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::parse_rule;

    fn kind(text: &str) -> RuleType {
        classify_rule(&parse_rule(text).unwrap()).unwrap()
    }

    fn axioms(text: &str) -> Vec<String> {
        let mut names = FreshNames::default();
        analyze(&parse_rule(text).unwrap(), &mut names)
            .unwrap()
            .1
            .iter()
            .map(|a| a.to_string())
            .collect()
    }

    #[test]
    fn function_free_shapes() {
        assert_eq!(kind("A(?x), not_B(?x) -> C(?x)."), RuleType::T1);
        assert_eq!(axioms("A(?x), not_B(?x) -> C(?x)."), ["SubClassOf(And(A not_B) C)"]);
        assert_eq!(kind("R(?x,?y), A(?y) -> C(?x)."), RuleType::T2);
        assert_eq!(kind("A(?x), R(?x,?y) -> C(?y)."), RuleType::T4);
        assert_eq!(axioms("R(?x,?y), not_D(?x) -> not_D(?y)."), ["SubClassOf(not_D All(R not_D))"]);
        assert_eq!(kind("S(?x,?y) -> R(?y,?x)."), RuleType::T5);
        assert_eq!(axioms("S(?x,?y) -> R(?y,?x)."), ["SubRoleOf(S Inv(R))"]);
        assert_eq!(kind("A(?z), R(?z,?x1), R(?z,?x2), B(?x1), B(?x2) -> Eq(?x1,?x2)."), RuleType::T6);
        assert_eq!(
            axioms("A(?z), R(?x1,?z), R(?x2,?z), B(?x1), B(?x2) -> Eq(?x1,?x2)."),
            ["SubClassOf(A AtMost1(Inv(R) B))"]
        );
    }

    #[test]
    fn guarded_shapes() {
        assert_eq!(kind("not_False(?z), B(?x), R(?x,?y), A(?y) -> False(?z)."), RuleType::T7);
        assert_eq!(kind("not_False(?z), A(f_R_Y(?x)), B(?x) -> False(?z)."), RuleType::T8);
        assert_eq!(
            axioms("not_False(?z), C(?x), not_B(f_R_B(?x)) -> False(?z)."),
            ["SubClassOf(And(C Some(R__B not_B)) Bot)"]
        );
        assert_eq!(
            kind("not_False(?z), A(?x), B(f_R_Y(?x)), C(f_R_Y(?x)) -> False(?z)."),
            RuleType::T13
        );
        assert_eq!(kind("not_False(?z), P(?x), not_P(?x) -> False(?z)."), RuleType::T1);
        assert_eq!(axioms("not_False(?z), P(?x), not_P(?x) -> False(?z)."), ["SubClassOf(And(P not_P) Bot)"]);
    }

    #[test]
    fn successor_shapes() {
        assert_eq!(kind("not_False(?x) -> not_False(f_R_Y(?x))."), RuleType::T9);
        assert_eq!(axioms("not_False(?x) -> not_False(f_R_Y(?x))."), ["SubClassOf(not_Bot Some(R__Y not_Bot))"]);
        assert_eq!(kind("B(?x) -> A(f_R_Y(?x))."), RuleType::T10);
        assert_eq!(kind("not_False(?x) -> A(f_R_Y(?x))."), RuleType::T10);
        assert_eq!(kind("B(f_R_Y(?x)) -> A(?x)."), RuleType::T11);
        assert_eq!(axioms("not_D(f_R_D(?x)) -> not_B(?x)."), ["SubClassOf(Some(R__D not_D) not_B)"]);
        assert_eq!(kind("A(?x), B(f_R_Y(?x)) -> C(f_R_Y(?x))."), RuleType::T12);
        assert_eq!(kind("B(f_R_Y(?x)), C(f_R_Y(?x)) -> A(?x)."), RuleType::T14);
        assert_eq!(kind("R(?x,?y) -> not_False(?x)."), RuleType::T19);
        assert_eq!(kind("R(?x,?y) -> not_False(?y)."), RuleType::T20);
        assert_eq!(axioms("R(?x,?y) -> not_False(?y)."), ["SubClassOf(Top All(R not_Bot))"]);
        assert_eq!(axioms("R(?x,?y) -> not_False(?x)."), ["SubClassOf(Some(R Top) not_Bot)"]);
    }

    #[test]
    fn equality_shapes() {
        assert_eq!(kind("A(?z), B(f_R_Y(?z)), S(?z,?x), B(?x) -> Eq(f_R_Y(?z),?x)."), RuleType::T15);
        assert_eq!(
            axioms("A(?z), B(f_R_Y(?z)), S(?z,?x), B(?x) -> Eq(f_R_Y(?z),?x)."),
            [
                "SubRoleOf(R__Y union_R__Y_S)",
                "SubRoleOf(S union_R__Y_S)",
                "SubClassOf(A AtMost1(union_R__Y_S B))"
            ]
        );
        assert_eq!(
            kind("A(f_inv_S_Y(?x)), B(?x), S(f_inv_S_Y(?x),?y), B(?y) -> Eq(?x,?y)."),
            RuleType::T16
        );
        assert_eq!(
            axioms("A(f_inv_S_Y(?x)), B(?x), S(f_inv_S_Y(?x),?y), B(?y) -> Eq(?x,?y).")[3],
            "SubRoleOf(tilde_inv_S__Y Inv(inv_S__Y))"
        );
        assert_eq!(kind("A(?z), B(f_R_Y(?z)), B(f_S_Z(?z)) -> Eq(f_R_Y(?z),f_S_Z(?z))."), RuleType::T17);
        assert_eq!(kind("A(?z), B(f_R_Y(?z)) -> Eq(f_R_Y(?z),f_R_Y(?z))."), RuleType::T17);
        assert_eq!(
            kind("A(f_inv_S_Y(?x)), B(?x), B(f_R_Z(f_inv_S_Y(?x))) -> Eq(?x,f_R_Z(f_inv_S_Y(?x)))."),
            RuleType::T18
        );
    }

    #[test]
    fn unsupported_shapes() {
        assert_eq!(kind("not_False(?z), R(?x,?y), not_R(?x,?y) -> False(?z)."), RuleType::Unclassifiable);
        assert_eq!(kind("not_B(?x), A(?y) -> not_R(?x,?y)."), RuleType::Unclassifiable);
        assert_eq!(kind("A(?x), R(?x,?y) -> C(?x)."), RuleType::Unclassifiable);
        assert!(classify_rule(&parse_rule("A(?x) -> B(?x) | C(?x).").unwrap()).is_err());
    }
}

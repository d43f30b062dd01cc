//! The successor-encoding translation: existential restrictions become unary
//! atoms over function symbols `f_{R,B}`, and the axioms that read roles get
//! extra rules over those symbols.

use crate::ontology::{subrole_closure, Axiom, ConceptName, Ontology, Role, RoleHierarchy};
use crate::program::{
    role_atom, Atom, CongruenceMode, FunctionSymbol, Origin, Predicate, Program, Rule, Term,
};

/// The symbols `f_{R,B}`, one per distinct `∃R.B` on a T3 right-hand side,
/// in order of first occurrence.
pub fn phi_set(o: &Ontology) -> Vec<FunctionSymbol> {
    let mut out = Vec::new();
    for ax in &o.axioms {
        if let Axiom::ExistsRight { role, filler, .. } = ax {
            let f = FunctionSymbol::indexed(role.clone(), filler.clone());
            if !out.contains(&f) {
                out.push(f);
            }
        }
    }
    out
}

fn indexed(f: &FunctionSymbol) -> (&Role, &ConceptName) {
    match f {
        FunctionSymbol::Indexed { role, filler } => (role, filler),
        FunctionSymbol::Skolem(_) => unreachable!("phi holds only indexed symbols"),
    }
}

fn unary(c: &ConceptName, t: Term) -> Atom {
    Atom::unary(Predicate::from_concept(c), t)
}

fn eq(s: Term, t: Term) -> Atom {
    Atom::binary(Predicate::Eq, s, t)
}

/// Symbols `f_{R',Y}` with `R' ⊑* R`.
fn forward<'a>(phi: &'a [FunctionSymbol], h: &'a RoleHierarchy, r: &'a Role) -> impl Iterator<Item = &'a FunctionSymbol> {
    phi.iter().filter(move |f| h.holds(indexed(f).0, r))
}

/// Symbols `f_{inv(R'),Y}` with `R' ⊑* R`.
fn backward<'a>(phi: &'a [FunctionSymbol], h: &'a RoleHierarchy, r: &'a Role) -> impl Iterator<Item = &'a FunctionSymbol> {
    phi.iter().filter(move |f| h.holds(&indexed(f).0.inv(), r))
}

fn xi_axiom(ax: &Axiom, phi: &[FunctionSymbol], h: &RoleHierarchy, origin: Origin) -> Vec<Rule> {
    let x = Term::var("x");
    let y = Term::var("y");
    let z = Term::var("z");
    let rule = |body, head| Rule::new(body, head, origin);
    let app = |f: &FunctionSymbol, t: &Term| Term::app(f, t.clone());
    let mut out = Vec::new();
    match ax {
        Axiom::ExistsRight { lhs, role, filler } => {
            let f = FunctionSymbol::indexed(role.clone(), filler.clone());
            out.push(rule(vec![unary(lhs, x.clone())], vec![unary(filler, app(&f, &x))]));
            return out;
        }
        _ => out.extend(crate::program::pi_axiom(ax, &FunctionSymbol::Skolem(0), origin)),
    }
    match ax {
        Axiom::ExistsLeft { role, filler: a, rhs: c } => {
            for f in forward(phi, h, role) {
                out.push(rule(vec![unary(a, app(f, &x))], vec![unary(c, x.clone())]));
            }
            for f in backward(phi, h, role) {
                let y_filler = indexed(f).1;
                out.push(rule(
                    vec![unary(a, x.clone()), unary(y_filler, app(f, &x))],
                    vec![unary(c, app(f, &x))],
                ));
            }
        }
        Axiom::Forall { lhs: a, role, rhs: c } => {
            for f in backward(phi, h, role) {
                out.push(rule(vec![unary(a, app(f, &x))], vec![unary(c, x.clone())]));
            }
            for f in forward(phi, h, role) {
                let y_filler = indexed(f).1;
                out.push(rule(
                    vec![unary(a, x.clone()), unary(y_filler, app(f, &x))],
                    vec![unary(c, app(f, &x))],
                ));
            }
        }
        Axiom::AtMostOne { lhs: a, role, filler: b } => {
            for f in forward(phi, h, role) {
                let fz = app(f, &z);
                out.push(rule(
                    vec![
                        unary(a, z.clone()),
                        unary(b, fz.clone()),
                        role_atom(role, z.clone(), x.clone()),
                        unary(b, x.clone()),
                    ],
                    vec![eq(fz, x.clone())],
                ));
            }
            for f in backward(phi, h, role) {
                let fx = app(f, &x);
                out.push(rule(
                    vec![
                        unary(a, fx.clone()),
                        unary(b, x.clone()),
                        role_atom(role, fx, y.clone()),
                        unary(b, y.clone()),
                    ],
                    vec![eq(x.clone(), y.clone())],
                ));
            }
            for f1 in forward(phi, h, role) {
                for f2 in forward(phi, h, role) {
                    let (t1, t2) = (app(f1, &z), app(f2, &z));
                    out.push(rule(
                        vec![unary(a, z.clone()), unary(b, t1.clone()), unary(b, t2.clone())],
                        vec![eq(t1, t2)],
                    ));
                }
            }
            for f1 in backward(phi, h, role) {
                for f2 in forward(phi, h, role) {
                    let inner = app(f1, &x);
                    let outer = app(f2, &inner);
                    out.push(rule(
                        vec![unary(a, inner), unary(b, x.clone()), unary(b, outer.clone())],
                        vec![eq(x.clone(), outer)],
                    ));
                }
            }
        }
        _ => {}
    }
    out
}

/// `ξ(O)` with the default congruence mode.
pub fn xi_translate(o: &Ontology) -> Program {
    xi_translate_with(o, CongruenceMode::default())
}

pub fn xi_translate_with(o: &Ontology, mode: CongruenceMode) -> Program {
    let phi = phi_set(o);
    let h = subrole_closure(o);
    let mut core: Vec<Rule> = Vec::new();
    for (i, ax) in o.axioms.iter().enumerate() {
        for r in xi_axiom(ax, &phi, &h, Origin::Xi(i)) {
            if !core.iter().any(|c| c.body == r.body && c.head == r.head) {
                core.push(r);
            }
        }
    }
    Program::with_mode(core, mode)
}

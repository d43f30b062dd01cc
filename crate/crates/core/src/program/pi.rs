use crate::ontology::{Axiom, ConceptName, Ontology, Role};

use super::{Atom, CongruenceMode, FunctionSymbol, Origin, Predicate, Program, Rule, Term};

/// `⟨R⟩(s,t)`: `R(s,t)` for a named role, `S(t,s)` for `R = S⁻`.
pub fn role_atom(role: &Role, s: Term, t: Term) -> Atom {
    let p = Predicate::role(&role.name);
    if role.inverse {
        Atom::binary(p, t, s)
    } else {
        Atom::binary(p, s, t)
    }
}

pub(crate) fn concept_atom(c: &ConceptName, t: Term) -> Atom {
    Atom::unary(Predicate::from_concept(c), t)
}

/// The standard translation of one axiom; `f` is used for T3.
pub(crate) fn pi_axiom(ax: &Axiom, f: &FunctionSymbol, origin: Origin) -> Vec<Rule> {
    let x = Term::var("x");
    let y = Term::var("y");
    let rule = |body, head| Rule::new(body, head, origin);
    match ax {
        Axiom::Subsumption { lhs, rhs } => vec![rule(
            lhs.iter().map(|a| concept_atom(a, x.clone())).collect(),
            rhs.iter().map(|c| concept_atom(c, x.clone())).collect(),
        )],
        Axiom::ExistsLeft { role, filler, rhs } => vec![rule(
            vec![role_atom(role, x.clone(), y.clone()), concept_atom(filler, y.clone())],
            vec![concept_atom(rhs, x.clone())],
        )],
        Axiom::ExistsRight { lhs, role, filler } => {
            let fx = Term::app(f, x.clone());
            vec![
                rule(vec![concept_atom(lhs, x.clone())], vec![role_atom(role, x.clone(), fx.clone())]),
                rule(vec![concept_atom(lhs, x.clone())], vec![concept_atom(filler, fx)]),
            ]
        }
        Axiom::Forall { lhs, role, rhs } => vec![rule(
            vec![concept_atom(lhs, x.clone()), role_atom(role, x.clone(), y.clone())],
            vec![concept_atom(rhs, y)],
        )],
        Axiom::RoleInclusion { sub, sup } => vec![rule(
            vec![Atom::binary(Predicate::role(sub), x.clone(), y.clone())],
            vec![role_atom(sup, x, y)],
        )],
        Axiom::AtMostOne { lhs, role, filler } => {
            let z = Term::var("z");
            let x1 = Term::var("x1");
            let x2 = Term::var("x2");
            vec![rule(
                vec![
                    concept_atom(lhs, z.clone()),
                    role_atom(role, z.clone(), x1.clone()),
                    role_atom(role, z, x2.clone()),
                    concept_atom(filler, x1.clone()),
                    concept_atom(filler, x2.clone()),
                ],
                vec![Atom::binary(Predicate::Eq, x1, x2)],
            )]
        }
    }
}

/// `π(O)` with the default congruence mode.
pub fn pi_translate(o: &Ontology) -> Program {
    pi_translate_with(o, CongruenceMode::default())
}

pub fn pi_translate_with(o: &Ontology, mode: CongruenceMode) -> Program {
    let core = o
        .axioms
        .iter()
        .enumerate()
        .flat_map(|(i, ax)| pi_axiom(ax, &FunctionSymbol::Skolem(i), Origin::Pi(i)))
        .collect();
    Program::with_mode(core, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::parse_ontology;
    use crate::program::parse_rule;

    fn core(text: &str) -> Vec<Rule> {
        pi_translate(&parse_ontology(text).unwrap()).core
    }

    fn same(r: &Rule, text: &str) -> bool {
        r.same_shape(&parse_rule(text).unwrap())
    }

    #[test]
    fn disjunction() {
        let c = core("SubClassOf(A Or(B C))");
        assert_eq!(c.len(), 1);
        assert!(same(&c[0], "A(?x) -> B(?x) | C(?x)."));
        assert_eq!(c[0].origin, Origin::Pi(0));
    }

    #[test]
    fn existential_gives_two_rules() {
        let c = core("SubClassOf(A B)\nSubClassOf(A Some(R B))");
        assert_eq!(c.len(), 3);
        assert!(same(&c[1], "A(?x) -> R(?x,sk1(?x))."));
        assert!(same(&c[2], "A(?x) -> B(sk1(?x))."));
    }

    #[test]
    fn inverse_superrole_swaps_arguments() {
        let c = core("SubRoleOf(S Inv(R))");
        assert!(same(&c[0], "S(?x,?y) -> R(?y,?x)."));
    }

    #[test]
    fn remaining_shapes() {
        let c = core(
            "SubClassOf(Some(Inv(R) A) C)\nSubClassOf(A All(R C))\nSubClassOf(A AtMost1(R B))\nSubClassOf(And(A Top) Bot)",
        );
        assert!(same(&c[0], "R(?y,?x), A(?y) -> C(?x)."));
        assert!(same(&c[1], "A(?x), R(?x,?y) -> C(?y)."));
        assert!(same(
            &c[2],
            "A(?z), R(?z,?x1), R(?z,?x2), B(?x1), B(?x2) -> Eq(?x1,?x2)."
        ));
        assert!(same(&c[3], "A(?x), True(?x) -> False(?x)."));
    }
}

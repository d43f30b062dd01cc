//! M-transposition: marked atoms change sides under complement predicates,
//! which turns a markable program into a Horn program.

use std::collections::BTreeSet;

use crate::marking::{classify_predicates, is_marking, Marking, MarkingViolation};
use crate::program::{Atom, Origin, Predicate, Program, Rule, Term, TranspositionCase};

fn fresh_var(taken: &BTreeSet<&str>) -> Term {
    if !taken.contains("z") {
        return Term::var("z");
    }
    (1..)
        .map(|i| format!("z{i}"))
        .find(|v| !taken.contains(v.as_str()))
        .map(Term::Var)
        .expect("unbounded supply of names")
}

fn bot_bar(t: Term) -> Atom {
    Atom::unary(Predicate::bot_bar(), t)
}

fn complement(a: &Atom) -> Atom {
    Atom::new(a.pred.complement(), a.args.clone())
}

fn position_vars(n: usize) -> Vec<Term> {
    if n == 1 {
        vec![Term::var("x")]
    } else {
        (1..=n).map(|i| Term::Var(format!("x{i}"))).collect()
    }
}

/// `⊥̄(v)` for every head variable not bound by `body`, in name order.
fn safety_guard(body: &[Atom], head: &Atom) -> Vec<Atom> {
    let bound: BTreeSet<&str> = body.iter().flat_map(|a| a.vars()).collect();
    head.vars()
        .into_iter()
        .filter(|v| !bound.contains(v))
        .map(|v| bot_bar(Term::var(v)))
        .collect()
}

fn transpose_rule(r: &Rule, id: usize, m: &Marking, disjunctive: &BTreeSet<Predicate>) -> Rule {
    let tag = |case| Origin::Transposed { case, source: Some(id) };
    let all_horn = r.body.iter().chain(&r.head).all(|a| !disjunctive.contains(&a.pred));
    if all_horn {
        return Rule::new(r.body.clone(), r.head.clone(), tag(TranspositionCase::Kept));
    }
    let marked_body: Vec<&Atom> = r.body.iter().filter(|a| m.contains(&a.pred)).collect();
    let unmarked_head: Vec<&Atom> = r.head.iter().filter(|a| !m.contains(&a.pred)).collect();
    let complemented_head: Vec<Atom> =
        r.head.iter().filter(|a| m.contains(&a.pred)).map(complement).collect();

    if let [q] = marked_body[..] {
        let mut body: Vec<Atom> = r.body.iter().filter(|a| *a != q).cloned().collect();
        body.extend(complemented_head);
        let head = complement(q);
        let mut guarded = safety_guard(&body, &head);
        guarded.extend(body);
        return Rule::new(guarded, vec![head], tag(TranspositionCase::Case1));
    }
    match unmarked_head[..] {
        [] => {
            let z = fresh_var(&r.vars());
            let mut body = vec![bot_bar(z.clone())];
            body.extend(r.body.iter().cloned());
            body.extend(complemented_head);
            Rule::new(body, vec![Atom::unary(Predicate::Bot, z)], tag(TranspositionCase::Case2))
        }
        [p] => {
            let mut body = r.body.clone();
            body.extend(complemented_head);
            Rule::new(body, vec![p.clone()], tag(TranspositionCase::Case3))
        }
        _ => unreachable!("marking admits at most one unmarked head atom"),
    }
}

/// `Ξ_M(P)`: transposes the core rules of `p` under the marking `m` and adds
/// the clash rules and the axiomatization of `⊥̄`. The Σ-components are
/// regenerated for the extended signature.
pub fn transpose(p: &Program, m: &Marking) -> Result<Program, MarkingViolation> {
    is_marking(p, m)?;
    let disjunctive = classify_predicates(p).disjunctive;
    let mut core: Vec<Rule> =
        p.core.iter().enumerate().map(|(i, r)| transpose_rule(r, i, m, &disjunctive)).collect();
    let tag = |case| Origin::Transposed { case, source: None };

    for q in m {
        let args = position_vars(q.arity());
        let z = Term::var("z");
        core.push(Rule::new(
            vec![
                bot_bar(z.clone()),
                Atom::new(q.clone(), args.clone()),
                Atom::new(q.complement(), args),
            ],
            vec![Atom::unary(Predicate::Bot, z)],
            tag(TranspositionCase::Case4),
        ));
    }
    let sig = p.signature();
    for q in sig.predicates.iter().filter(|q| !q.is_special()) {
        let args = position_vars(q.arity());
        for v in &args {
            core.push(Rule::new(
                vec![Atom::new(q.clone(), args.clone())],
                vec![bot_bar(v.clone())],
                tag(TranspositionCase::Case5),
            ));
        }
    }
    for f in &sig.functions {
        let x = Term::var("x");
        core.push(Rule::new(
            vec![bot_bar(x.clone())],
            vec![bot_bar(Term::app(f, x))],
            tag(TranspositionCase::Case6),
        ));
    }
    let mut seen: Vec<Rule> = Vec::with_capacity(core.len());
    for r in core {
        if !seen.iter().any(|s| s.body == r.body && s.head == r.head) {
            seen.push(r);
        }
    }
    Ok(Program::with_mode(seen, p.congruence))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::parse_ontology;
    use crate::marking::find_minimal_marking;
    use crate::program::{parse_program, parse_rule, validate_program, CongruenceMode};
    use crate::xi::xi_translate;

    const CHOICE_PROGRAM: &str = "A(?x) -> B(?x).\nB(?x) -> C(?x) | D(?x).\nC(?x) -> False(?x).\nD(?x) -> C(sk0(?x)).\n";
    const CLASH_ONTOLOGY: &str = "SubClassOf(A Or(B C))\nSubClassOf(B Some(R D))\nSubClassOf(Some(R D) D)\nSubClassOf(C Some(R B))\nSubClassOf(And(D E) Bot)\n";

    fn has(p: &Program, text: &str) -> bool {
        let want = parse_rule(text).unwrap();
        p.core.iter().any(|r| r.same_shape(&want))
    }

    #[test]
    fn choice_program_under_c_bot() {
        let p = parse_program(CHOICE_PROGRAM, CongruenceMode::default()).unwrap();
        let m: Marking = [Predicate::concept("C"), Predicate::Bot].into_iter().collect();
        let t = transpose(&p, &m).unwrap();
        assert!(has(&t, "A(?x) -> B(?x)."));
        assert!(has(&t, "B(?x), not_C(?x) -> D(?x)."));
        assert!(has(&t, "not_False(?x) -> not_C(?x)."));
        assert!(has(&t, "not_False(?z), D(?x), not_C(sk0(?x)) -> False(?z)."));
        assert!(has(&t, "not_False(?z), C(?x), not_C(?x) -> False(?z)."));
        assert!(has(&t, "not_False(?x) -> not_False(sk0(?x))."));
        for x in ["A", "B", "C", "D"] {
            assert!(has(&t, &format!("{x}(?x) -> not_False(?x).")));
        }
        assert_eq!(t.core.len(), 4 + 2 + 4 + 1);
        assert!(t.is_horn());
        assert!(validate_program(&t).is_ok());
    }

    #[test]
    fn example_ontology_transposition() {
        let xi = xi_translate(&parse_ontology(CLASH_ONTOLOGY).unwrap());
        let m = find_minimal_marking(&xi).unwrap();
        let t = transpose(&xi, &m).unwrap();
        for r in [
            "A(?x), not_B(?x) -> C(?x).",
            "not_D(f_R_D(?x)) -> not_B(?x).",
            "R(?x,?y), not_D(?x) -> not_D(?y).",
            "not_D(?x) -> not_D(f_R_D(?x)).",
            "not_D(?x) -> not_D(f_R_B(?x)).",
            "not_False(?z), C(?x), not_B(f_R_B(?x)) -> False(?z).",
            "E(?x), not_False(?x) -> not_D(?x).",
            "R(?x1,?x2) -> not_False(?x1).",
            "R(?x1,?x2) -> not_False(?x2).",
            "not_False(?x) -> not_False(f_R_B(?x)).",
            "not_False(?x) -> not_False(f_R_D(?x)).",
        ] {
            assert!(has(&t, r), "missing {r}");
        }
        assert_eq!(t.core.len(), 19);
        assert!(t.is_horn());
        assert!(validate_program(&t).is_ok());
    }

    #[test]
    fn horn_program_gains_only_bot_bar_axioms() {
        let p = parse_program("A(?x) -> B(sk0(?x)).", CongruenceMode::default()).unwrap();
        let t = transpose(&p, &Marking::new()).unwrap();
        assert_eq!(t.core[0].origin, Origin::Transposed { case: TranspositionCase::Kept, source: Some(0) });
        assert_eq!(t.core.len(), 1 + 2 + 1);
    }

    #[test]
    fn guard_variable_avoids_clash() {
        let p = parse_program("A(?z) -> B(?z) | C(?z).", CongruenceMode::default()).unwrap();
        let m: Marking = [Predicate::concept("B"), Predicate::concept("C")].into_iter().collect();
        let t = transpose(&p, &m).unwrap();
        assert!(has(&t, "not_False(?z1), A(?z), not_B(?z), not_C(?z) -> False(?z1)."));
    }

    #[test]
    fn invalid_marking_is_rejected() {
        let p = parse_program(CHOICE_PROGRAM, CongruenceMode::default()).unwrap();
        let m: Marking = [Predicate::concept("D")].into_iter().collect();
        assert!(transpose(&p, &m).is_err());
    }
}

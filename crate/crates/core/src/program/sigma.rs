use super::{
    Atom, CongruenceMode, Origin, Predicate, Rule, SigmaPart, Signature, Term,
};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SigmaComponents {
    pub top: Vec<Rule>,
    pub bot: Vec<Rule>,
    pub eq: Vec<Rule>,
}

fn pos_vars(n: usize) -> Vec<Term> {
    (1..=n).map(|i| Term::Var(format!("x{i}"))).collect()
}

/// Generates the axiomatization of truth, falsehood and equality for `sig`.
///
/// `P⊤` gets `P(x1..xn) → ⊤(xi)` for every predicate other than `⊤` and
/// `→ ⊤(a)` for every constant. `P≈` holds reflexivity (guarded by `⊤`),
/// symmetry, transitivity, one replacement rule per argument position of
/// every predicate other than `⊤`/`≈`, and, in
/// [`CongruenceMode::PredicatesAndFunctions`], `x ≈ y → f(x) ≈ f(y)` for
/// every function symbol.
pub fn signature_components(sig: &Signature, mode: CongruenceMode) -> SigmaComponents {
    let top_origin = Origin::Sigma(SigmaPart::Top);
    let eq_origin = Origin::Sigma(SigmaPart::Eq);
    let x = Term::var("x");
    let y = Term::var("y");
    let z = Term::var("z");
    let eq = |s: &Term, t: &Term| Atom::binary(Predicate::Eq, s.clone(), t.clone());

    let mut top = Vec::new();
    for p in &sig.predicates {
        if *p == Predicate::Top {
            continue;
        }
        let args = pos_vars(p.arity());
        for a in &args {
            top.push(Rule::new(
                vec![Atom::new(p.clone(), args.clone())],
                vec![Atom::unary(Predicate::Top, a.clone())],
                top_origin,
            ));
        }
    }
    for c in &sig.constants {
        top.push(Rule::new(
            vec![],
            vec![Atom::unary(Predicate::Top, Term::Const(c.clone()))],
            top_origin,
        ));
    }

    let bot = vec![Rule::new(
        vec![Atom::unary(Predicate::Bot, x.clone())],
        vec![],
        Origin::Sigma(SigmaPart::Bot),
    )];

    let mut eqs = vec![
        Rule::new(vec![Atom::unary(Predicate::Top, x.clone())], vec![eq(&x, &x)], eq_origin),
        Rule::new(vec![eq(&x, &y)], vec![eq(&y, &x)], eq_origin),
        Rule::new(vec![eq(&x, &y), eq(&y, &z)], vec![eq(&x, &z)], eq_origin),
    ];
    for p in &sig.predicates {
        if matches!(p, Predicate::Top | Predicate::Eq) {
            continue;
        }
        let args = pos_vars(p.arity());
        for i in 0..args.len() {
            let mut replaced = args.clone();
            replaced[i] = y.clone();
            eqs.push(Rule::new(
                vec![Atom::new(p.clone(), args.clone()), eq(&args[i], &y)],
                vec![Atom::new(p.clone(), replaced)],
                eq_origin,
            ));
        }
    }
    if mode == CongruenceMode::PredicatesAndFunctions {
        for f in &sig.functions {
            eqs.push(Rule::new(
                vec![eq(&x, &y)],
                vec![eq(&Term::app(f, x.clone()), &Term::app(f, y.clone()))],
                eq_origin,
            ));
        }
    }
    SigmaComponents { top, bot, eq: eqs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::{parse_rule, FunctionSymbol};

    fn has(rules: &[Rule], text: &str) -> bool {
        let want = parse_rule(text).unwrap();
        rules.iter().any(|r| r.same_shape(&want))
    }

    #[test]
    fn unary_predicate() {
        let mut sig = Signature::default();
        sig.predicates.insert(Predicate::concept("A"));
        let s = signature_components(&sig, CongruenceMode::default());
        assert!(has(&s.top, "A(?x1) -> True(?x1)."));
        assert!(has(&s.eq, "A(?x1), Eq(?x1,?y) -> A(?y)."));
        assert_eq!(s.top.len(), 1);
        assert_eq!(s.eq.len(), 4);
    }

    #[test]
    fn constants_are_true() {
        let mut sig = Signature::default();
        sig.constants.insert("a".into());
        let s = signature_components(&sig, CongruenceMode::default());
        assert!(has(&s.top, "-> True(a)."));
    }

    #[test]
    fn empty_signature() {
        let s = signature_components(&Signature::default(), CongruenceMode::default());
        assert!(s.top.is_empty());
        assert_eq!(s.bot.len(), 1);
        assert!(s.bot[0].head.is_empty());
        assert_eq!(s.eq.len(), 3);
        assert!(has(&s.eq, "True(?x) -> Eq(?x,?x)."));
        assert!(has(&s.eq, "Eq(?x,?y) -> Eq(?y,?x)."));
        assert!(has(&s.eq, "Eq(?x,?y), Eq(?y,?z) -> Eq(?x,?z)."));
    }

    #[test]
    fn function_congruence_is_switchable() {
        let mut sig = Signature::default();
        sig.functions.insert(FunctionSymbol::Skolem(0));
        let full = signature_components(&sig, CongruenceMode::PredicatesAndFunctions);
        assert!(has(&full.eq, "Eq(?x,?y) -> Eq(sk0(?x),sk0(?y))."));
        let preds = signature_components(&sig, CongruenceMode::PredicatesOnly);
        assert_eq!(preds.eq.len(), 3);
    }

    #[test]
    fn binary_predicate_positions() {
        let mut sig = Signature::default();
        sig.predicates.insert(Predicate::role("R"));
        let s = signature_components(&sig, CongruenceMode::default());
        assert_eq!(s.top.len(), 2);
        assert!(has(&s.eq, "R(?x1,?x2), Eq(?x1,?y) -> R(?y,?x2)."));
        assert!(has(&s.eq, "R(?x1,?x2), Eq(?x2,?y) -> R(?x1,?y)."));
    }
}

use std::collections::BTreeMap;
use std::fmt;

use super::{Origin, Predicate, Program, Rule, TranspositionCase};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    /// A head variable does not occur in the body.
    Unsafe(String),
    BotInCoreBody,
    EqInCoreBody,
    EmptyCoreHead,
    TopInCoreHead,
    Arity { predicate: String, expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Index into [`Program::rules`].
    pub rule: usize,
    pub text: String,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match &self.kind {
            ViolationKind::Unsafe(v) => format!("head variable ?{v} not bound in body"),
            ViolationKind::BotInCoreBody => "False occurs in a core rule body".into(),
            ViolationKind::EqInCoreBody => "Eq occurs in a core rule body".into(),
            ViolationKind::EmptyCoreHead => "core rule has an empty head".into(),
            ViolationKind::TopInCoreHead => "True occurs in a core rule head".into(),
            ViolationKind::Arity { predicate, expected, found } => {
                format!("{predicate} has arity {expected} but is used with {found} arguments")
            }
        };
        write!(f, "rule {} `{}`: {what}", self.rule, self.text)
    }
}

fn check_rule(id: usize, r: &Rule, core: bool, arities: &mut BTreeMap<String, usize>) -> Vec<Violation> {
    let mut kinds = Vec::new();
    let body_vars = r.body_vars();
    for v in r.head_vars() {
        if !body_vars.contains(v) {
            kinds.push(ViolationKind::Unsafe(v.to_string()));
        }
    }
    if core {
        let clash = matches!(r.origin, Origin::Transposed { case: TranspositionCase::Case4, .. });
        if !clash && r.body.iter().any(|a| a.pred == Predicate::Bot) {
            kinds.push(ViolationKind::BotInCoreBody);
        }
        if r.body.iter().any(|a| a.pred == Predicate::Eq) {
            kinds.push(ViolationKind::EqInCoreBody);
        }
        if r.head.is_empty() {
            kinds.push(ViolationKind::EmptyCoreHead);
        }
        if r.head.iter().any(|a| a.pred == Predicate::Top) {
            kinds.push(ViolationKind::TopInCoreHead);
        }
    }
    for a in r.body.iter().chain(&r.head) {
        let name = a.pred.to_string();
        let expected = *arities.entry(name.clone()).or_insert(a.pred.arity());
        if a.args.len() != expected || a.pred.arity() != expected {
            let found = if a.args.len() != expected { a.args.len() } else { a.pred.arity() };
            kinds.push(ViolationKind::Arity { predicate: name, expected, found });
        }
    }
    let text = r.to_string();
    kinds.into_iter().map(|kind| Violation { rule: id, text: text.clone(), kind }).collect()
}

/// Checks safety, the restrictions on core rules and consistent arities.
/// Returns every violation found, in rule order.
pub fn validate_program(p: &Program) -> Result<(), Vec<Violation>> {
    let mut arities = BTreeMap::new();
    let n = p.core.len();
    let out: Vec<Violation> = p
        .rules()
        .enumerate()
        .flat_map(|(i, r)| check_rule(i, r, i < n, &mut arities))
        .collect();
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::parse_rule;

    fn kinds(rules: &[&str]) -> Vec<ViolationKind> {
        let core = rules.iter().map(|r| parse_rule(r).unwrap()).collect();
        match validate_program(&Program::new(core)) {
            Ok(()) => vec![],
            Err(v) => v.into_iter().map(|v| v.kind).collect(),
        }
    }

    #[test]
    fn unsafe_head() {
        assert_eq!(kinds(&["-> B(?x)."]), vec![ViolationKind::Unsafe("x".into())]);
    }

    #[test]
    fn core_restrictions() {
        assert_eq!(kinds(&["False(?x) -> A(?x)."]), vec![ViolationKind::BotInCoreBody]);
        assert_eq!(kinds(&["A(?x) -> FALSEHOOD."]), vec![ViolationKind::EmptyCoreHead]);
        assert_eq!(kinds(&["A(?x) -> True(?x)."]), vec![ViolationKind::TopInCoreHead]);
        assert!(kinds(&["A(?x) -> B(?x) | C(?x)."]).is_empty());
    }

    #[test]
    fn arity_clash() {
        let k = kinds(&["A(?x) -> B(?x).", "A(?x,?y) -> B(?x)."]);
        assert!(k.iter().any(|k| matches!(k, ViolationKind::Arity { .. })));
    }
}

//! Structural transformation of axioms over complex concepts into the
//! normalized shapes, naming subconcepts by fresh concept names.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::ontology::{Axiom, Concept, ConceptName, GeneralAxiom, NormalFormError, Ontology, Role};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("unsupported left-hand side in {0}")]
    Unsupported(String),
    #[error(transparent)]
    Shape(#[from] NormalFormError),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Polarity {
    /// The name must imply the concept.
    Pos,
    /// The concept must imply the name.
    Neg,
}

struct Normalizer {
    taken: BTreeSet<String>,
    names: BTreeMap<(Concept, Polarity), ConceptName>,
    out: Vec<Axiom>,
}

fn render_role(r: &Role) -> String {
    if r.inverse {
        format!("inv_{}", r.name)
    } else {
        r.name.clone()
    }
}

fn render(c: &Concept) -> String {
    let list = |tag: &str, cs: &[Concept]| {
        let parts: Vec<String> = cs.iter().map(render).collect();
        format!("{tag}_{}", parts.join("_"))
    };
    match c {
        Concept::Atomic(n) => n.as_str().to_string(),
        Concept::And(cs) => list("and", cs),
        Concept::Or(cs) => list("or", cs),
        Concept::Some(r, f) => format!("some_{}_{}", render_role(r), render(f)),
        Concept::All(r, f) => format!("all_{}_{}", render_role(r), render(f)),
        Concept::AtMostOne(r, f) => format!("atmost1_{}_{}", render_role(r), render(f)),
    }
}

fn top() -> ConceptName {
    ConceptName::Top
}

fn bot() -> ConceptName {
    ConceptName::Bot
}

impl Normalizer {
    fn fresh(&mut self, base: &str) -> ConceptName {
        let mut name = format!("X_{base}");
        let mut i = 2;
        while self.taken.contains(&name) {
            name = format!("X_{base}_{i}");
            i += 1;
        }
        self.taken.insert(name.clone());
        ConceptName::new(&name)
    }

    fn emit(&mut self, ax: Axiom) -> Result<(), NormalizeError> {
        ax.check()?;
        if !self.out.contains(&ax) {
            self.out.push(ax);
        }
        Ok(())
    }

    /// A concept name standing for `c` in the given polarity.
    fn name_of(&mut self, c: &Concept, pol: Polarity) -> Result<ConceptName, NormalizeError> {
        if let Concept::Atomic(n) = c {
            return Ok(n.clone());
        }
        if let Some(n) = self.names.get(&(c.clone(), pol)) {
            return Ok(n.clone());
        }
        let x = self.fresh(&render(c));
        self.names.insert((c.clone(), pol), x.clone());
        let atom = Concept::Atomic(x.clone());
        match pol {
            Polarity::Neg => self.axiom(c, &atom)?,
            Polarity::Pos => self.axiom(&atom, c)?,
        }
        Ok(x)
    }

    /// Conjuncts of a left-hand side as names, or `None` if one is `⊥`.
    fn lhs_names(&mut self, lhs: &Concept) -> Result<Option<Vec<ConceptName>>, NormalizeError> {
        let mut parts = Vec::new();
        flatten_and(lhs, &mut parts);
        let mut out = Vec::new();
        for p in parts {
            let n = match p {
                Concept::Atomic(n) => n.clone(),
                Concept::Some(..) => self.name_of(p, Polarity::Neg)?,
                _ => return Err(NormalizeError::Unsupported(lhs.to_string())),
            };
            if n.is_bot() {
                return Ok(None);
            }
            if !n.is_top() && !out.contains(&n) {
                out.push(n);
            }
        }
        if out.is_empty() {
            out.push(top());
        }
        Ok(Some(out))
    }

    fn axiom(&mut self, lhs: &Concept, rhs: &Concept) -> Result<(), NormalizeError> {
        if let Concept::And(parts) = rhs {
            for p in parts {
                self.axiom(lhs, p)?;
            }
            return Ok(());
        }
        if let Concept::Some(role, filler) = lhs {
            let Some(c) = self.rhs_name(rhs)? else { return Ok(()) };
            let a = self.name_of(filler, Polarity::Neg)?;
            if a.is_bot() {
                return Ok(());
            }
            return self.emit(Axiom::ExistsLeft { role: role.clone(), filler: a, rhs: c });
        }
        if !matches!(lhs, Concept::Atomic(_) | Concept::And(_)) {
            return Err(NormalizeError::Unsupported(format!("SubClassOf({lhs} {rhs})")));
        }
        let Some(l) = self.lhs_names(lhs)? else { return Ok(()) };
        match rhs {
            Concept::Some(..) | Concept::All(..) | Concept::AtMostOne(..) if l.len() > 1 => {
                let x = self.name_of(rhs, Polarity::Pos)?;
                self.emit(Axiom::subsumption(l, vec![x]))
            }
            Concept::Some(role, filler) => {
                let a = l[0].clone();
                let b = self.name_of(filler, Polarity::Pos)?;
                if b.is_bot() {
                    return self.emit(Axiom::subsumption(vec![a], vec![bot()]));
                }
                let b = if b.is_top() { self.top_name()? } else { b };
                self.emit(Axiom::ExistsRight { lhs: a, role: role.clone(), filler: b })
            }
            Concept::All(role, filler) => {
                let b = self.name_of(filler, Polarity::Pos)?;
                if b.is_top() {
                    return Ok(());
                }
                self.emit(Axiom::Forall { lhs: l[0].clone(), role: role.clone(), rhs: b })
            }
            Concept::AtMostOne(role, filler) => {
                let b = self.name_of(filler, Polarity::Neg)?;
                if b.is_bot() {
                    return Ok(());
                }
                self.emit(Axiom::AtMostOne { lhs: l[0].clone(), role: role.clone(), filler: b })
            }
            _ => {
                let Some(r) = self.rhs_names(rhs)? else { return Ok(()) };
                self.emit(Axiom::subsumption(l, r))
            }
        }
    }

    /// A fresh name `X` with `⊤ ⊑ X`.
    fn top_name(&mut self) -> Result<ConceptName, NormalizeError> {
        let key = (Concept::Atomic(top()), Polarity::Pos);
        if let Some(n) = self.names.get(&key) {
            return Ok(n.clone());
        }
        let x = self.fresh("Top");
        self.names.insert(key, x.clone());
        self.emit(Axiom::subsumption(vec![top()], vec![x.clone()]))?;
        Ok(x)
    }

    /// Disjuncts of a right-hand side as names, or `None` if one is `⊤`.
    fn rhs_names(&mut self, rhs: &Concept) -> Result<Option<Vec<ConceptName>>, NormalizeError> {
        let parts: Vec<&Concept> = match rhs {
            Concept::Or(cs) => cs.iter().collect(),
            c => vec![c],
        };
        let mut out = Vec::new();
        for p in parts {
            let n = self.name_of(p, Polarity::Pos)?;
            if n.is_top() {
                return Ok(None);
            }
            if !n.is_bot() && !out.contains(&n) {
                out.push(n);
            }
        }
        if out.is_empty() {
            out.push(bot());
        }
        Ok(Some(out))
    }

    /// The right-hand side as a single name, or `None` if it is `⊤`.
    fn rhs_name(&mut self, rhs: &Concept) -> Result<Option<ConceptName>, NormalizeError> {
        match self.rhs_names(rhs)? {
            None => Ok(None),
            Some(mut names) if names.len() == 1 => Ok(names.pop()),
            Some(_) => self.name_of(rhs, Polarity::Pos).map(Some),
        }
    }
}

fn flatten_and<'a>(c: &'a Concept, out: &mut Vec<&'a Concept>) {
    match c {
        Concept::And(cs) => cs.iter().for_each(|p| flatten_and(p, out)),
        other => out.push(other),
    }
}

fn collect_names(ax: &GeneralAxiom, out: &mut BTreeSet<String>) {
    fn walk(c: &Concept, out: &mut BTreeSet<String>) {
        for n in c.concept_names() {
            out.insert(n.as_str().to_string());
        }
    }
    if let GeneralAxiom::SubClassOf(l, r) = ax {
        walk(l, out);
        walk(r, out);
    }
}

/// Rewrites `axioms` into normalized axioms, introducing fresh concept names
/// `X_...` for complex subconcepts. The result is a conservative extension.
pub fn normalize_ontology(axioms: &[GeneralAxiom]) -> Result<Ontology, NormalizeError> {
    let mut taken = BTreeSet::new();
    for ax in axioms {
        collect_names(ax, &mut taken);
    }
    let mut n = Normalizer { taken, names: BTreeMap::new(), out: Vec::new() };
    for ax in axioms {
        match ax {
            GeneralAxiom::SubRoleOf(sub, sup) => {
                let (sub, sup) = if sub.inverse { (sub.inv(), sup.inv()) } else { (sub.clone(), sup.clone()) };
                if sub != sup {
                    n.emit(Axiom::role_inclusion(&sub, &sup))?;
                }
            }
            GeneralAxiom::SubClassOf(l, r) => n.axiom(l, r)?,
        }
    }
    Ok(Ontology::new(n.out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::{parse_general_ontology, parse_ontology, serialize_ontology};

    fn norm(text: &str) -> Vec<String> {
        let axioms: Vec<GeneralAxiom> = parse_general_ontology(text).unwrap().into_iter().map(|(a, _)| a).collect();
        normalize_ontology(&axioms).unwrap().axioms.iter().map(|a| a.to_string()).collect()
    }

    #[test]
    fn normal_input_is_unchanged() {
        let text = "SubClassOf(A Or(B C))\nSubClassOf(B Some(R D))\nSubClassOf(Some(R D) D)\nSubClassOf(C Some(R B))\nSubClassOf(And(D E) Bot)\n";
        let o = parse_ontology(text).unwrap();
        let general: Vec<GeneralAxiom> = o.axioms.iter().map(|a| a.to_general()).collect();
        let n = normalize_ontology(&general).unwrap();
        assert_eq!(serialize_ontology(&n), serialize_ontology(&o));
    }

    #[test]
    fn conjunctive_filler_on_the_left() {
        assert_eq!(
            norm("SubClassOf(Some(R And(B C)) A)"),
            ["SubClassOf(And(B C) X_and_B_C)", "SubClassOf(Some(R X_and_B_C) A)"]
        );
    }

    #[test]
    fn existential_conjunct_with_universal_head() {
        assert_eq!(
            norm("SubClassOf(And(A Some(R B)) All(R C))"),
            [
                "SubClassOf(Some(R B) X_some_R_B)",
                "SubClassOf(X_all_R_C All(R C))",
                "SubClassOf(And(A X_some_R_B) X_all_R_C)"
            ]
        );
    }

    #[test]
    fn existential_conjunct_with_bot_head() {
        assert_eq!(
            norm("SubClassOf(And(C Some(R not_B)) Bot)"),
            ["SubClassOf(Some(R not_B) X_some_R_not_B)", "SubClassOf(And(C X_some_R_not_B) Bot)"]
        );
    }

    #[test]
    fn tautologies_vanish() {
        assert!(norm("SubClassOf(And(P Bot) Bot)").is_empty());
        assert!(norm("SubClassOf(A All(R Top))").is_empty());
        assert!(norm("SubClassOf(A Or(B Top))").is_empty());
        assert_eq!(norm("SubClassOf(A Or(B Bot))"), ["SubClassOf(A B)"]);
    }

    #[test]
    fn top_fillers() {
        assert_eq!(norm("SubClassOf(Some(R Top) A)"), ["SubClassOf(Some(R Top) A)"]);
        assert_eq!(
            norm("SubClassOf(A Some(R Top))"),
            ["SubClassOf(Top X_Top)", "SubClassOf(A Some(R X_Top))"]
        );
    }

    #[test]
    fn role_inclusions() {
        assert_eq!(norm("SubRoleOf(Inv(S) R)"), ["SubRoleOf(S Inv(R))"]);
        assert_eq!(norm("SubRoleOf(S Inv(R))"), ["SubRoleOf(S Inv(R))"]);
    }

    #[test]
    fn fresh_names_avoid_input() {
        let out = norm("SubClassOf(Some(R And(B C)) A)\nSubClassOf(X_and_B_C D)");
        assert!(out.contains(&"SubClassOf(And(B C) X_and_B_C_2)".to_string()), "{out:?}");
    }

    #[test]
    fn disjunction_on_the_left_is_unsupported() {
        let (ax, _) = parse_general_ontology("SubClassOf(Or(A B) C)").unwrap().remove(0);
        assert!(normalize_ontology(&[ax]).is_err());
    }
}

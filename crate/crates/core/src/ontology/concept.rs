use std::fmt;

use thiserror::Error;

use super::{Axiom, ConceptName, Role};

/// A complex concept. Only the constructors needed to express normalized
/// axioms and back-translated Horn axioms are supported.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    Atomic(ConceptName),
    And(Vec<Concept>),
    Or(Vec<Concept>),
    Some(Role, Box<Concept>),
    All(Role, Box<Concept>),
    AtMostOne(Role, Box<Concept>),
}

impl Concept {
    pub fn name(n: &str) -> Self {
        Concept::Atomic(ConceptName::new(n))
    }

    pub fn some(role: Role, filler: Concept) -> Self {
        Concept::Some(role, Box::new(filler))
    }

    pub fn all(role: Role, filler: Concept) -> Self {
        Concept::All(role, Box::new(filler))
    }

    pub fn at_most_one(role: Role, filler: Concept) -> Self {
        Concept::AtMostOne(role, Box::new(filler))
    }

    /// Conjunction of the given parts; a single part is returned unwrapped.
    pub fn and(mut parts: Vec<Concept>) -> Self {
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Concept::And(parts)
        }
    }

    pub fn as_atomic(&self) -> Option<&ConceptName> {
        match self {
            Concept::Atomic(c) => Some(c),
            _ => None,
        }
    }

    fn atomic_list(&self) -> Option<Vec<ConceptName>> {
        match self {
            Concept::Atomic(c) => Some(vec![c.clone()]),
            Concept::And(cs) | Concept::Or(cs) => {
                cs.iter().map(|c| c.as_atomic().cloned()).collect()
            }
            _ => None,
        }
    }

    pub fn roles(&self) -> Vec<&Role> {
        match self {
            Concept::Atomic(_) => vec![],
            Concept::And(cs) | Concept::Or(cs) => cs.iter().flat_map(|c| c.roles()).collect(),
            Concept::Some(r, c) | Concept::All(r, c) | Concept::AtMostOne(r, c) => {
                let mut out = vec![r];
                out.extend(c.roles());
                out
            }
        }
    }

    pub fn concept_names(&self) -> Vec<&ConceptName> {
        match self {
            Concept::Atomic(c) => vec![c],
            Concept::And(cs) | Concept::Or(cs) => {
                cs.iter().flat_map(|c| c.concept_names()).collect()
            }
            Concept::Some(_, c) | Concept::All(_, c) | Concept::AtMostOne(_, c) => {
                c.concept_names()
            }
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, tag: &str, cs: &[Concept]| {
            write!(f, "{tag}(")?;
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")
        };
        match self {
            Concept::Atomic(c) => write!(f, "{c}"),
            Concept::And(cs) => list(f, "And", cs),
            Concept::Or(cs) => list(f, "Or", cs),
            Concept::Some(r, c) => write!(f, "Some({r} {c})"),
            Concept::All(r, c) => write!(f, "All({r} {c})"),
            Concept::AtMostOne(r, c) => write!(f, "AtMost1({r} {c})"),
        }
    }
}

/// An axiom over complex concepts; not necessarily normalized.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneralAxiom {
    SubClassOf(Concept, Concept),
    SubRoleOf(Role, Role),
}

impl fmt::Display for GeneralAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneralAxiom::SubClassOf(l, r) => write!(f, "SubClassOf({l} {r})"),
            GeneralAxiom::SubRoleOf(l, r) => write!(f, "SubRoleOf({l} {r})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct NormalFormError {
    pub message: String,
}

impl NormalFormError {
    pub fn new(message: impl Into<String>) -> Self {
        NormalFormError { message: message.into() }
    }
}

impl GeneralAxiom {
    /// Reads the axiom as one of the normalized shapes, if it is one.
    pub fn to_normal(&self) -> Result<Axiom, NormalFormError> {
        let axiom = match self {
            GeneralAxiom::SubRoleOf(sub, sup) => {
                if sub.inverse {
                    return Err(NormalFormError::new("sub-role must be a role name"));
                }
                Axiom::RoleInclusion { sub: sub.name.clone(), sup: sup.clone() }
            }
            GeneralAxiom::SubClassOf(lhs, rhs) => match (lhs, rhs) {
                (Concept::Some(role, filler), Concept::Atomic(c)) => Axiom::ExistsLeft {
                    role: role.clone(),
                    filler: single(filler)?,
                    rhs: c.clone(),
                },
                (Concept::Atomic(a), Concept::Some(role, filler)) => Axiom::ExistsRight {
                    lhs: a.clone(),
                    role: role.clone(),
                    filler: single(filler)?,
                },
                (Concept::Atomic(a), Concept::All(role, filler)) => Axiom::Forall {
                    lhs: a.clone(),
                    role: role.clone(),
                    rhs: single(filler)?,
                },
                (Concept::Atomic(a), Concept::AtMostOne(role, filler)) => Axiom::AtMostOne {
                    lhs: a.clone(),
                    role: role.clone(),
                    filler: single(filler)?,
                },
                (Concept::Atomic(_) | Concept::And(_), Concept::Atomic(_) | Concept::Or(_)) => {
                    let l = lhs
                        .atomic_list()
                        .filter(|_| !matches!(lhs, Concept::Or(_)))
                        .ok_or_else(|| NormalFormError::new("conjuncts must be concept names"))?;
                    let r = rhs
                        .atomic_list()
                        .ok_or_else(|| NormalFormError::new("disjuncts must be concept names"))?;
                    Axiom::subsumption(l, r)
                }
                _ => {
                    return Err(NormalFormError::new(format!(
                        "axiom {self} does not have a normalized shape"
                    )))
                }
            },
        };
        axiom.check()?;
        Ok(axiom)
    }
}

fn single(c: &Concept) -> Result<ConceptName, NormalFormError> {
    c.as_atomic()
        .cloned()
        .ok_or_else(|| NormalFormError::new("filler not a single concept name"))
}

impl Axiom {
    pub fn to_general(&self) -> GeneralAxiom {
        let atom = |c: &ConceptName| Concept::Atomic(c.clone());
        let join = |cs: &[ConceptName], or: bool| {
            if cs.len() == 1 {
                atom(&cs[0])
            } else if or {
                Concept::Or(cs.iter().map(atom).collect())
            } else {
                Concept::And(cs.iter().map(atom).collect())
            }
        };
        match self {
            Axiom::Subsumption { lhs, rhs } => {
                GeneralAxiom::SubClassOf(join(lhs, false), join(rhs, true))
            }
            Axiom::ExistsLeft { role, filler, rhs } => {
                GeneralAxiom::SubClassOf(Concept::some(role.clone(), atom(filler)), atom(rhs))
            }
            Axiom::ExistsRight { lhs, role, filler } => {
                GeneralAxiom::SubClassOf(atom(lhs), Concept::some(role.clone(), atom(filler)))
            }
            Axiom::Forall { lhs, role, rhs } => {
                GeneralAxiom::SubClassOf(atom(lhs), Concept::all(role.clone(), atom(rhs)))
            }
            Axiom::RoleInclusion { sub, sup } => {
                GeneralAxiom::SubRoleOf(Role::named(sub.clone()), sup.clone())
            }
            Axiom::AtMostOne { lhs, role, filler } => GeneralAxiom::SubClassOf(
                atom(lhs),
                Concept::at_most_one(role.clone(), atom(filler)),
            ),
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_general())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_filler_is_rejected() {
        let ax = GeneralAxiom::SubClassOf(
            Concept::some(
                Role::named("R"),
                Concept::And(vec![Concept::name("A"), Concept::name("B")]),
            ),
            Concept::name("C"),
        );
        let err = ax.to_normal().unwrap_err();
        assert!(err.message.contains("filler"), "{err}");
    }

    #[test]
    fn degenerate_subsumptions_are_rejected() {
        let top_rhs = GeneralAxiom::SubClassOf(Concept::name("A"), Concept::name("Top"));
        assert!(top_rhs.to_normal().is_err());
        let bot_lhs = GeneralAxiom::SubClassOf(Concept::name("Bot"), Concept::name("A"));
        assert!(bot_lhs.to_normal().is_err());
        let top_bot = GeneralAxiom::SubClassOf(Concept::name("Top"), Concept::name("Bot"));
        assert!(top_bot.to_normal().is_ok());
    }

    #[test]
    fn disjunction_on_the_left_is_not_normal() {
        let ax = GeneralAxiom::SubClassOf(
            Concept::Or(vec![Concept::name("A"), Concept::name("B")]),
            Concept::name("C"),
        );
        assert!(ax.to_normal().is_err());
    }
}

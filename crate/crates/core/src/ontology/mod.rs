//! Normalized ALCHIF ontologies: concept and role names, the six axiom
//! shapes, datasets, profiles and the role hierarchy closure.

mod concept;
mod profile;
mod syntax;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

pub use concept::{Concept, GeneralAxiom, NormalFormError};
pub use profile::{profile_of, BaseLogic, DLProfile};
pub use syntax::{
    parse_dataset, parse_general_ontology, parse_ontology, serialize_dataset, ParseError,
    serialize_general_ontology, serialize_ontology,
};

/// A concept name, or one of the two reserved concepts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConceptName {
    Top,
    Bot,
    Named(String),
}

impl ConceptName {
    /// Builds a concept from its textual name; `Top` and `Bot` are reserved.
    pub fn new(name: &str) -> Self {
        match name {
            "Top" => ConceptName::Top,
            "Bot" => ConceptName::Bot,
            _ => {
                assert!(!name.is_empty(), "concept names must be nonempty");
                ConceptName::Named(name.to_string())
            }
        }
    }

    pub fn is_top(&self) -> bool {
        matches!(self, ConceptName::Top)
    }

    pub fn is_bot(&self) -> bool {
        matches!(self, ConceptName::Bot)
    }

    pub fn as_str(&self) -> &str {
        match self {
            ConceptName::Top => "Top",
            ConceptName::Bot => "Bot",
            ConceptName::Named(n) => n,
        }
    }
}

impl fmt::Display for ConceptName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A role name or the inverse of one. There is never more than one
/// inversion flag, so `inv(inv(R)) == R` holds structurally.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Role {
    pub name: String,
    pub inverse: bool,
}

impl Role {
    pub fn named(name: impl Into<String>) -> Self {
        Role { name: name.into(), inverse: false }
    }

    pub fn inverse_of(name: impl Into<String>) -> Self {
        Role { name: name.into(), inverse: true }
    }

    pub fn inv(&self) -> Self {
        Role { name: self.name.clone(), inverse: !self.inverse }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "Inv({})", self.name)
        } else {
            f.write_str(&self.name)
        }
    }
}

/// The axiom shapes T1-T6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomType {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
}

/// A normalized axiom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// `A1 ⊓ ... ⊓ An ⊑ C1 ⊔ ... ⊔ Cm`
    Subsumption { lhs: Vec<ConceptName>, rhs: Vec<ConceptName> },
    /// `∃R.A ⊑ C`
    ExistsLeft { role: Role, filler: ConceptName, rhs: ConceptName },
    /// `A ⊑ ∃R.B`
    ExistsRight { lhs: ConceptName, role: Role, filler: ConceptName },
    /// `A ⊑ ∀R.C`
    Forall { lhs: ConceptName, role: Role, rhs: ConceptName },
    /// `S ⊑ R` with `S` a role name.
    RoleInclusion { sub: String, sup: Role },
    /// `A ⊑ ≤1 R.B`
    AtMostOne { lhs: ConceptName, role: Role, filler: ConceptName },
}

impl Axiom {
    /// Builds a T1 axiom, dropping duplicate names while keeping first-seen order.
    pub fn subsumption(lhs: Vec<ConceptName>, rhs: Vec<ConceptName>) -> Self {
        Axiom::Subsumption { lhs: dedup(lhs), rhs: dedup(rhs) }
    }

    /// Builds `sub ⊑ sup` for arbitrary roles, moving a leading inversion to
    /// the right so that the sub-role is named.
    pub fn role_inclusion(sub: &Role, sup: &Role) -> Self {
        if sub.inverse {
            Axiom::RoleInclusion { sub: sub.name.clone(), sup: sup.inv() }
        } else {
            Axiom::RoleInclusion { sub: sub.name.clone(), sup: sup.clone() }
        }
    }

    pub fn kind(&self) -> AxiomType {
        match self {
            Axiom::Subsumption { .. } => AxiomType::T1,
            Axiom::ExistsLeft { .. } => AxiomType::T2,
            Axiom::ExistsRight { .. } => AxiomType::T3,
            Axiom::Forall { .. } => AxiomType::T4,
            Axiom::RoleInclusion { .. } => AxiomType::T5,
            Axiom::AtMostOne { .. } => AxiomType::T6,
        }
    }

    pub fn roles(&self) -> Vec<&Role> {
        match self {
            Axiom::Subsumption { .. } => vec![],
            Axiom::ExistsLeft { role, .. }
            | Axiom::ExistsRight { role, .. }
            | Axiom::Forall { role, .. }
            | Axiom::AtMostOne { role, .. } => vec![role],
            Axiom::RoleInclusion { sup, .. } => vec![sup],
        }
    }

    pub fn role_names(&self) -> Vec<&str> {
        match self {
            Axiom::RoleInclusion { sub, sup } => vec![sub.as_str(), sup.name.as_str()],
            other => other.roles().into_iter().map(|r| r.name.as_str()).collect(),
        }
    }

    pub fn concepts(&self) -> Vec<&ConceptName> {
        match self {
            Axiom::Subsumption { lhs, rhs } => lhs.iter().chain(rhs.iter()).collect(),
            Axiom::ExistsLeft { filler, rhs, .. } => vec![filler, rhs],
            Axiom::ExistsRight { lhs, filler, .. } => vec![lhs, filler],
            Axiom::Forall { lhs, rhs, .. } => vec![lhs, rhs],
            Axiom::RoleInclusion { .. } => vec![],
            Axiom::AtMostOne { lhs, filler, .. } => vec![lhs, filler],
        }
    }

    pub fn uses_inverse(&self) -> bool {
        self.roles().iter().any(|r| r.inverse)
    }

    /// Checks the side conditions of the normal form: fillers and left-hand
    /// sides are named or `Top`, right-hand sides are named or `Bot`.
    pub fn check(&self) -> Result<(), NormalFormError> {
        let no_bot = |c: &ConceptName, what: &str| {
            if c.is_bot() {
                Err(NormalFormError::new(format!("{what} may not be Bot")))
            } else {
                Ok(())
            }
        };
        let no_top = |c: &ConceptName, what: &str| {
            if c.is_top() {
                Err(NormalFormError::new(format!("{what} may not be Top")))
            } else {
                Ok(())
            }
        };
        match self {
            Axiom::Subsumption { lhs, rhs } => {
                if lhs.is_empty() || rhs.is_empty() {
                    return Err(NormalFormError::new("empty conjunction or disjunction"));
                }
                for c in lhs {
                    no_bot(c, "left-hand side of a subsumption")?;
                }
                for c in rhs {
                    no_top(c, "right-hand side of a subsumption")?;
                }
            }
            Axiom::ExistsLeft { filler, rhs, .. } => {
                no_bot(filler, "existential filler")?;
                no_top(rhs, "right-hand side")?;
            }
            Axiom::ExistsRight { lhs, filler, .. } => {
                no_bot(lhs, "left-hand side")?;
                no_bot(filler, "existential filler")?;
                no_top(filler, "existential filler on the right-hand side")?;
            }
            Axiom::Forall { lhs, rhs, .. } => {
                no_bot(lhs, "left-hand side")?;
                no_top(rhs, "universal filler")?;
            }
            Axiom::RoleInclusion { .. } => {}
            Axiom::AtMostOne { lhs, filler, .. } => {
                no_bot(lhs, "left-hand side")?;
                no_bot(filler, "at-most filler")?;
            }
        }
        Ok(())
    }
}

fn dedup<T: PartialEq>(items: Vec<T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::with_capacity(items.len());
    for it in items {
        if !out.contains(&it) {
            out.push(it);
        }
    }
    out
}

/// An ordered list of normalized axioms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ontology {
    pub axioms: Vec<Axiom>,
}

impl Ontology {
    pub fn new(axioms: Vec<Axiom>) -> Self {
        Ontology { axioms }
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    /// Named concepts occurring in the axioms (`Top`/`Bot` excluded).
    pub fn concept_names(&self) -> BTreeSet<String> {
        self.axioms
            .iter()
            .flat_map(|a| a.concepts())
            .filter_map(|c| match c {
                ConceptName::Named(n) => Some(n.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn role_names(&self) -> BTreeSet<String> {
        self.axioms
            .iter()
            .flat_map(|a| a.role_names())
            .map(str::to_string)
            .collect()
    }

    /// True iff no T1 axiom has two or more disjuncts.
    pub fn is_horn(&self) -> bool {
        is_horn_ontology(self)
    }
}

pub fn is_horn_ontology(o: &Ontology) -> bool {
    o.axioms.iter().all(|a| match a {
        Axiom::Subsumption { rhs, .. } => rhs.len() <= 1,
        _ => true,
    })
}

/// The reflexive-transitive role inclusion relation `⊑*`.
#[derive(Debug, Clone, Default)]
pub struct RoleHierarchy {
    supers: BTreeMap<Role, BTreeSet<Role>>,
}

impl RoleHierarchy {
    /// `sub ⊑* sup`. Roles not occurring in the ontology are only related
    /// to themselves.
    pub fn holds(&self, sub: &Role, sup: &Role) -> bool {
        if sub == sup {
            return true;
        }
        self.supers.get(sub).is_some_and(|s| s.contains(sup))
    }

    pub fn roles(&self) -> impl Iterator<Item = &Role> {
        self.supers.keys()
    }

    /// All roles `r'` with `r' ⊑* sup`, in canonical order.
    pub fn subroles_of<'a>(&'a self, sup: &'a Role) -> impl Iterator<Item = &'a Role> + 'a {
        self.supers.iter().filter(move |(_, s)| s.contains(sup)).map(|(r, _)| r)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Role, &Role)> {
        self.supers.iter().flat_map(|(r, s)| s.iter().map(move |t| (r, t)))
    }
}

/// Computes `⊑*` over all roles (both directions) of the ontology.
pub fn subrole_closure(o: &Ontology) -> RoleHierarchy {
    let mut edges: BTreeMap<Role, BTreeSet<Role>> = BTreeMap::new();
    for name in o.role_names() {
        edges.entry(Role::named(name.clone())).or_default();
        edges.entry(Role::inverse_of(name)).or_default();
    }
    for ax in &o.axioms {
        if let Axiom::RoleInclusion { sub, sup } = ax {
            let sub = Role::named(sub.clone());
            edges.entry(sub.clone()).or_default().insert(sup.clone());
            edges.entry(sub.inv()).or_default().insert(sup.inv());
        }
    }
    let mut supers = BTreeMap::new();
    for start in edges.keys() {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(r) = queue.pop_front() {
            if seen.insert(r.clone()) {
                if let Some(next) = edges.get(&r) {
                    queue.extend(next.iter().cloned());
                }
            }
        }
        supers.insert(start.clone(), seen);
    }
    RoleHierarchy { supers }
}

/// A ground, function-free fact `A(a)` or `R(a,b)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fact {
    pub predicate: String,
    pub args: Vec<String>,
}

impl Fact {
    pub fn concept(pred: &str, a: &str) -> Self {
        Fact { predicate: pred.to_string(), args: vec![a.to_string()] }
    }

    pub fn role(pred: &str, a: &str, b: &str) -> Self {
        Fact { predicate: pred.to_string(), args: vec![a.to_string(), b.to_string()] }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.predicate, self.args.join(","))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dataset {
    pub facts: Vec<Fact>,
}

impl Dataset {
    pub fn new(facts: Vec<Fact>) -> Self {
        Dataset { facts: dedup(facts) }
    }

    pub fn constants(&self) -> BTreeSet<String> {
        self.facts.iter().flat_map(|f| f.args.iter().cloned()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }
}

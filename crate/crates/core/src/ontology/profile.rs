use std::fmt;

use super::{is_horn_ontology, Axiom, AxiomType, Ontology};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseLogic {
    EL,
    ELU,
    ALC,
}

/// The syntactic DL fragment an ontology falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DLProfile {
    pub base: BaseLogic,
    pub inverse: bool,
    pub hierarchy: bool,
    pub functionality: bool,
    pub horn: bool,
}

impl DLProfile {
    /// True iff every ontology in `self` also lies in `other`.
    pub fn is_within(&self, other: &DLProfile) -> bool {
        let base_ok = match (self.base, other.base) {
            // EL is the Horn part of ELU, so it sits below Horn-ALC as well.
            (BaseLogic::EL, _) => true,
            (BaseLogic::ELU, b) => b != BaseLogic::EL || self.horn,
            (BaseLogic::ALC, b) => b == BaseLogic::ALC,
        };
        base_ok
            && (!self.inverse || other.inverse)
            && (!self.hierarchy || other.hierarchy)
            && (!self.functionality || other.functionality)
            && (self.horn || !other.horn)
    }

    /// The target fragment a rewriting must land in, given the input fragment.
    pub fn horn_rewriting_target(&self) -> DLProfile {
        let mut target = *self;
        target.horn = true;
        target.base = BaseLogic::ALC;
        if self.functionality {
            target.hierarchy = true;
        }
        target
    }
}

impl fmt::Display for DLProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.base {
            BaseLogic::EL => "EL",
            BaseLogic::ELU => "ELU",
            BaseLogic::ALC => "ALC",
        };
        if self.horn && self.base != BaseLogic::EL {
            f.write_str("Horn-")?;
        }
        f.write_str(base)?;
        if self.hierarchy {
            f.write_str("H")?;
        }
        if self.inverse {
            f.write_str("I")?;
        }
        if self.functionality {
            f.write_str("F")?;
        }
        Ok(())
    }
}

pub fn profile_of(o: &Ontology) -> DLProfile {
    let inverse = o.axioms.iter().any(Axiom::uses_inverse);
    let has = |t: AxiomType| o.axioms.iter().any(|a| a.kind() == t);
    let hierarchy = has(AxiomType::T5);
    let functionality = has(AxiomType::T6);
    let horn = is_horn_ontology(o);
    let base = if has(AxiomType::T4) || functionality || inverse {
        BaseLogic::ALC
    } else if horn {
        BaseLogic::EL
    } else {
        BaseLogic::ELU
    };
    DLProfile { base, inverse, hierarchy, functionality, horn }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::parse_ontology;

    #[test]
    fn empty_is_el() {
        let p = profile_of(&Ontology::default());
        assert_eq!(p.base, BaseLogic::EL);
        assert!(p.horn && !p.inverse && !p.hierarchy && !p.functionality);
        assert_eq!(p.to_string(), "EL");
    }

    #[test]
    fn forall_inverse_atmost() {
        let o = parse_ontology(
            "SubClassOf(A All(R B))\nSubRoleOf(S Inv(R))\nSubClassOf(A AtMost1(R B))",
        )
        .unwrap();
        let p = profile_of(&o);
        assert_eq!(p.base, BaseLogic::ALC);
        assert!(p.inverse && p.hierarchy && p.functionality && p.horn);
        assert_eq!(p.to_string(), "Horn-ALCHIF");
    }

    #[test]
    fn inclusion_order() {
        let o = parse_ontology("SubClassOf(A Or(B C))\nSubClassOf(B Some(R D))").unwrap();
        let elu = profile_of(&o);
        assert_eq!(elu.to_string(), "ELU");
        let horn_alc = elu.horn_rewriting_target();
        assert_eq!(horn_alc.to_string(), "Horn-ALC");
        assert!(!elu.is_within(&horn_alc));
        let el = profile_of(&parse_ontology("SubClassOf(B Some(R D))").unwrap());
        assert!(el.is_within(&horn_alc));
        assert!(el.is_within(&elu));
        assert!(!horn_alc.is_within(&elu));
    }
}

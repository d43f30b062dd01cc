//! Horn rewriting of normalized ALCHIF ontologies.
//!
//! The pipeline translates an ontology into first-order rules, looks for a
//! marking of the disjunctive predicates, transposes the rules into a Horn
//! program and reads that program back as a Horn ontology. A bounded
//! hyperresolution prover checks satisfiability of the intermediate stages.

pub mod ontology;
pub mod program;
pub mod xi;
pub mod marking;
pub mod transpose;
pub mod psi;
pub mod reasoner;

use thiserror::Error;

use super::{normalize_ontology, psi_backtranslate, FreshNames, NormalizeError, PsiError, PsiOutput};
use crate::marking::{find_minimal_marking, Marking, NotMarkable};
use crate::ontology::{GeneralAxiom, Ontology};
use crate::program::{CongruenceMode, Program};
use crate::transpose::transpose;
use crate::xi::xi_translate_with;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RewriteOptions {
    pub congruence: CongruenceMode,
}

#[derive(Debug, Error)]
pub enum RewriteError {
    #[error("the successor translation of the ontology admits no marking")]
    NotMarkable(#[from] NotMarkable),
    #[error(transparent)]
    Psi(#[from] PsiError),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
}

/// Every stage of a Horn rewriting.
#[derive(Debug, Clone)]
pub struct Rewriting {
    pub marking: Marking,
    pub xi: Program,
    pub transposed: Program,
    pub psi: PsiOutput,
    /// The back-translated axioms in normalized form.
    pub ontology: Ontology,
}

impl Rewriting {
    pub fn general(&self) -> &[GeneralAxiom] {
        &self.psi.axioms
    }

    pub fn names(&self) -> &FreshNames {
        &self.psi.names
    }
}

pub fn rewrite_ontology(o: &Ontology) -> Result<Rewriting, RewriteError> {
    rewrite_ontology_with(o, RewriteOptions::default())
}

/// Successor translation, minimal marking, transposition and back-translation.
pub fn rewrite_ontology_with(o: &Ontology, opts: RewriteOptions) -> Result<Rewriting, RewriteError> {
    let xi = xi_translate_with(o, opts.congruence);
    let marking = find_minimal_marking(&xi)?;
    let transposed = transpose(&xi, &marking).expect("minimal markings are markings");
    let psi = psi_backtranslate(&transposed)?;
    let input: std::collections::BTreeSet<String> =
        o.concept_names().into_iter().chain(o.role_names()).collect();
    if let Some(clash) = psi.names.all().into_iter().find(|n| input.contains(n)) {
        return Err(PsiError::NameCollision(clash).into());
    }
    let ontology = normalize_ontology(&psi.axioms)?;
    Ok(Rewriting { marking, xi, transposed, psi, ontology })
}

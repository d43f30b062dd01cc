use proptest::prelude::*;

use hornify::marking::{enumerate_markings, find_marking, find_minimal_marking, is_marking, DEFAULT_ENUMERATION_CAP};
use hornify::ontology::{parse_dataset, parse_ontology, profile_of, serialize_dataset, serialize_ontology};
use hornify::program::{parse_program, serialize_program, CongruenceMode};
use hornify::psi::{classify_rule, rewrite_ontology, RuleType};
use hornify::reasoner::{check_equisat, Verdict};
use hornify::transpose::transpose;
use hornify::xi::xi_translate;

const CONCEPTS: [&str; 6] = ["A", "B", "C", "D", "E", "F"];
const ROLES: [&str; 2] = ["R", "S"];

fn axiom_line(kind: u8, a: usize, b: usize, c: usize, r: usize, inv: bool) -> String {
    let (a, b, c) = (CONCEPTS[a], CONCEPTS[b], CONCEPTS[c]);
    let role = if inv { format!("Inv({})", ROLES[r]) } else { ROLES[r].to_string() };
    match kind % 8 {
        0 => format!("SubClassOf({a} Or({b} {c}))"),
        1 => format!("SubClassOf({a} {b})"),
        2 => format!("SubClassOf(And({a} {b}) Bot)"),
        3 => format!("SubClassOf({a} Some({role} {b}))"),
        4 => format!("SubClassOf(Some({role} {a}) {b})"),
        5 => format!("SubClassOf({a} All({role} {b}))"),
        6 => format!("SubClassOf({a} AtMost1({role} {b}))"),
        _ => format!("SubClassOf(And({a} {b}) {c})"),
    }
}

fn ontology_text() -> impl Strategy<Value = String> {
    prop::collection::vec((any::<u8>(), 0..6usize, 0..6usize, 0..6usize, 0..2usize, any::<bool>()), 1..8)
        .prop_map(|axs| axs.into_iter().map(|(k, a, b, c, r, i)| axiom_line(k, a, b, c, r, i) + "\n").collect())
}

fn program_text() -> impl Strategy<Value = String> {
    let atom = (0..6usize, 0..3u8).prop_map(|(p, shape)| match shape {
        0 => format!("{}(?x)", CONCEPTS[p]),
        1 => format!("{}(sk0(?x))", CONCEPTS[p]),
        _ => "False(?x)".to_string(),
    });
    let body = (0..6usize, prop::option::of(0..6usize)).prop_map(|(p, q)| {
        let mut b = vec![format!("{}(?x)", CONCEPTS[p])];
        if let Some(q) = q {
            b.push(format!("{}(?x)", CONCEPTS[q]));
        }
        b.join(", ")
    });
    let rule = (body, prop::collection::vec(atom, 1..4)).prop_map(|(b, h)| format!("{b} -> {}.\n", h.join(" | ")));
    prop::collection::vec(rule, 1..10).prop_map(|rs| rs.concat())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ontology_text_round_trips(text in ontology_text()) {
        let o = parse_ontology(&text).unwrap();
        let again = parse_ontology(&serialize_ontology(&o)).unwrap();
        prop_assert_eq!(o, again);
    }

    #[test]
    fn program_text_round_trips(text in program_text()) {
        let p = parse_program(&text, CongruenceMode::default()).unwrap();
        let again = parse_program(&serialize_program(&p), CongruenceMode::default()).unwrap();
        prop_assert_eq!(p.core.len(), again.core.len());
        prop_assert_eq!(serialize_program(&p), serialize_program(&again));
    }

    #[test]
    fn solver_agrees_with_enumeration(text in program_text()) {
        let p = parse_program(&text, CongruenceMode::default()).unwrap();
        let all = enumerate_markings(&p, DEFAULT_ENUMERATION_CAP).unwrap();
        match find_marking(&p) {
            Ok(m) => {
                prop_assert!(is_marking(&p, &m).is_ok());
                prop_assert!(all.contains(&m));
            }
            Err(_) => prop_assert!(all.is_empty()),
        }
    }

    #[test]
    fn minimal_marking_has_no_smaller_marking(text in program_text()) {
        let p = parse_program(&text, CongruenceMode::default()).unwrap();
        if let Ok(m) = find_minimal_marking(&p) {
            let all = enumerate_markings(&p, DEFAULT_ENUMERATION_CAP).unwrap();
            prop_assert!(!all.iter().any(|n| n != &m && n.is_subset(&m)));
        }
    }

    #[test]
    fn transposition_is_horn(text in program_text()) {
        let p = parse_program(&text, CongruenceMode::default()).unwrap();
        for m in enumerate_markings(&p, DEFAULT_ENUMERATION_CAP).unwrap() {
            prop_assert!(transpose(&p, &m).unwrap().is_horn());
        }
    }

    #[test]
    fn rewriting_is_horn_and_classified(text in ontology_text()) {
        let o = parse_ontology(&text).unwrap();
        if let Ok(rw) = rewrite_ontology(&o) {
            prop_assert!(profile_of(&rw.ontology).horn);
            prop_assert!(profile_of(&rw.ontology).is_within(&profile_of(&o).horn_rewriting_target()));
            for r in &rw.transposed.core {
                prop_assert_ne!(classify_rule(r).unwrap(), RuleType::Unclassifiable);
            }
            let again = parse_ontology(&serialize_ontology(&rw.ontology)).unwrap();
            prop_assert_eq!(again, rw.ontology);
        } else {
            prop_assert!(find_marking(&xi_translate(&o)).is_err());
        }
    }

    #[test]
    fn translations_never_disagree(text in ontology_text(), facts in prop::collection::vec((0..6usize, 0..2usize), 1..4)) {
        let o = parse_ontology(&text).unwrap();
        let data: String = facts.iter().map(|(c, k)| format!("{}({})\n", CONCEPTS[*c], ["a", "b"][*k])).collect();
        let d = parse_dataset(&data).unwrap();
        prop_assert_eq!(parse_dataset(&serialize_dataset(&d)).unwrap(), d.clone());
        let r = check_equisat(&o, &d, 2).unwrap();
        prop_assert_ne!(r.verdict, Verdict::Disagree);
    }
}

//! Line-oriented text format for ontologies and datasets.
//!
//! ```text
//! # comment
//! SubClassOf(A Or(B C))
//! SubClassOf(Some(Inv(R) A) C)
//! SubRoleOf(S Inv(R))
//! ```

use thiserror::Error;

use super::{Concept, Dataset, Fact, GeneralAxiom, NormalFormError, Ontology, Role};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("axiom {index} (line {line}) is not normalized: {source}")]
    NotNormalized { index: usize, line: usize, source: NormalFormError },
}

const KEYWORDS: [&str; 7] = ["And", "Or", "Some", "All", "AtMost1", "Inv", "Eq"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Open,
    Close,
    Comma,
}

struct Lexed {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

fn lex(line_no: usize, line: &str) -> Result<Lexed, ParseError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            '(' => toks.push((Tok::Open, col)),
            ')' => toks.push((Tok::Close, col)),
            ',' => toks.push((Tok::Comma, col)),
            c if c.is_whitespace() => {}
            c if c.is_alphanumeric() || c == '_' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_alphanumeric() || chars[i + 1] == '_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..=i].iter().collect()), col));
            }
            other => {
                return Err(ParseError::Syntax {
                    line: line_no,
                    column: col,
                    message: format!("unexpected character '{other}'"),
                })
            }
        }
        i += 1;
    }
    Ok(Lexed { toks, pos: 0, line: line_no, end_col: chars.len() + 1 })
}

impl Lexed {
    fn is_empty(&self) -> bool {
        self.toks.is_empty()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let column = self.toks.get(self.pos).map_or(self.end_col, |t| t.1);
        Err(ParseError::Syntax { line: self.line, column, message: message.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|t| &t.0)
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            let what = match tok {
                Tok::Open => "'('",
                Tok::Close => "')'",
                Tok::Comma => "','",
                Tok::Ident(_) => "identifier",
            };
            self.err(format!("expected {what}"))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected identifier"),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            self.err("trailing input")
        } else {
            Ok(())
        }
    }

    fn name(&mut self, what: &str) -> Result<String, ParseError> {
        let id = self.ident()?;
        if KEYWORDS.contains(&id.as_str()) {
            self.pos -= 1;
            return self.err(format!("reserved word '{id}' used as {what}"));
        }
        Ok(id)
    }

    fn role(&mut self) -> Result<Role, ParseError> {
        if self.peek() == Some(&Tok::Ident("Inv".into())) && self.peek2() == Some(&Tok::Open) {
            self.pos += 2;
            let name = self.role_name()?;
            self.expect(Tok::Close)?;
            Ok(Role::inverse_of(name))
        } else {
            Ok(Role::named(self.role_name()?))
        }
    }

    fn role_name(&mut self) -> Result<String, ParseError> {
        let n = self.name("role name")?;
        if n == "Top" || n == "Bot" {
            self.pos -= 1;
            return self.err(format!("'{n}' is not a role name"));
        }
        Ok(n)
    }

    fn concept(&mut self) -> Result<Concept, ParseError> {
        let head = match self.peek() {
            Some(Tok::Ident(s)) => s.clone(),
            _ => return self.err("expected concept"),
        };
        let is_ctor = self.peek2() == Some(&Tok::Open);
        match head.as_str() {
            "And" | "Or" if is_ctor => {
                self.pos += 2;
                let mut parts = Vec::new();
                while self.peek() != Some(&Tok::Close) {
                    if self.peek().is_none() {
                        return self.err("unterminated concept list");
                    }
                    parts.push(self.concept()?);
                }
                self.pos += 1;
                if parts.len() < 2 {
                    return self.err(format!("{head} needs at least two operands"));
                }
                Ok(if head == "And" { Concept::And(parts) } else { Concept::Or(parts) })
            }
            "Some" | "All" | "AtMost1" if is_ctor => {
                self.pos += 2;
                let role = self.role()?;
                let filler = self.concept()?;
                self.expect(Tok::Close)?;
                Ok(match head.as_str() {
                    "Some" => Concept::some(role, filler),
                    "All" => Concept::all(role, filler),
                    _ => Concept::at_most_one(role, filler),
                })
            }
            _ => Ok(Concept::name(&self.name("concept name")?)),
        }
    }

    fn axiom(&mut self) -> Result<GeneralAxiom, ParseError> {
        let kw = self.ident()?;
        self.expect(Tok::Open)?;
        let ax = match kw.as_str() {
            "SubClassOf" => {
                let l = self.concept()?;
                let r = self.concept()?;
                GeneralAxiom::SubClassOf(l, r)
            }
            "SubRoleOf" => {
                let l = self.role()?;
                let r = self.role()?;
                GeneralAxiom::SubRoleOf(l, r)
            }
            _ => {
                self.pos -= 2;
                return self.err(format!("unknown axiom keyword '{kw}'"));
            }
        };
        self.expect(Tok::Close)?;
        self.finish()?;
        Ok(ax)
    }
}

/// Parses axioms over complex concepts, one per line, without requiring
/// them to be normalized. Returns each axiom with its line number.
pub fn parse_general_ontology(text: &str) -> Result<Vec<(GeneralAxiom, usize)>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let mut lx = lex(i + 1, line)?;
        if lx.is_empty() {
            continue;
        }
        out.push((lx.axiom()?, i + 1));
    }
    Ok(out)
}

/// Parses a normalized ontology, keeping file order.
pub fn parse_ontology(text: &str) -> Result<Ontology, ParseError> {
    let axioms = parse_general_ontology(text)?
        .into_iter()
        .enumerate()
        .map(|(index, (ax, line))| {
            ax.to_normal().map_err(|source| ParseError::NotNormalized { index, line, source })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Ontology::new(axioms))
}

pub fn serialize_ontology(o: &Ontology) -> String {
    o.axioms.iter().map(|a| format!("{a}\n")).collect()
}

pub fn serialize_general_ontology(axioms: &[GeneralAxiom]) -> String {
    axioms.iter().map(|a| format!("{a}\n")).collect()
}

/// Parses facts `A(a)` / `R(a,b)`, one per line.
pub fn parse_dataset(text: &str) -> Result<Dataset, ParseError> {
    let mut facts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let mut lx = lex(i + 1, line)?;
        if lx.is_empty() {
            continue;
        }
        let pred = lx.name("predicate")?;
        if matches!(pred.as_str(), "Top" | "Bot" | "True" | "False") {
            lx.pos -= 1;
            return lx.err(format!("'{pred}' may not occur in a dataset"));
        }
        lx.expect(Tok::Open)?;
        let mut args = vec![constant(&mut lx)?];
        if lx.peek() == Some(&Tok::Comma) {
            lx.pos += 1;
            args.push(constant(&mut lx)?);
        }
        lx.expect(Tok::Close)?;
        lx.finish()?;
        facts.push(Fact { predicate: pred, args });
    }
    Ok(Dataset::new(facts))
}

fn constant(lx: &mut Lexed) -> Result<String, ParseError> {
    let c = lx.ident()?;
    if !c.starts_with(|ch: char| ch.is_lowercase()) {
        lx.pos -= 1;
        return lx.err(format!("constant '{c}' must start with a lowercase letter"));
    }
    Ok(c)
}

pub fn serialize_dataset(d: &Dataset) -> String {
    d.facts.iter().map(|f| format!("{f}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::{Axiom, ConceptName};

    fn cn(s: &str) -> ConceptName {
        ConceptName::new(s)
    }

    #[test]
    fn disjunction_parses_as_t1() {
        let o = parse_ontology("SubClassOf(A Or(B C))").unwrap();
        assert_eq!(o.axioms, vec![Axiom::subsumption(vec![cn("A")], vec![cn("B"), cn("C")])]);
    }

    #[test]
    fn tautology_is_accepted() {
        let o = parse_ontology("SubClassOf(A A)").unwrap();
        assert_eq!(o.axioms, vec![Axiom::subsumption(vec![cn("A")], vec![cn("A")])]);
    }

    #[test]
    fn nested_filler_reports_axiom_index() {
        let err = parse_ontology("SubClassOf(A B)\n\nSubClassOf(Some(R And(A B)) C)").unwrap_err();
        match err {
            ParseError::NotNormalized { index, line, source } => {
                assert_eq!((index, line), (1, 3));
                assert!(source.message.contains("filler"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_ontology("SubClassOf(A B\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax { line: 1, column: 15, message: "expected ')'".into() }
        );
        let err = parse_ontology("# ok\n  SubClassOf(A $)").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, column: 16, .. }));
    }

    #[test]
    fn inverse_role_renders() {
        let ax = Axiom::RoleInclusion { sub: "S".into(), sup: Role::inverse_of("R") };
        assert_eq!(ax.to_string(), "SubRoleOf(S Inv(R))");
        let back = parse_ontology(&serialize_ontology(&Ontology::new(vec![ax.clone()]))).unwrap();
        assert_eq!(back.axioms, vec![ax]);
    }

    #[test]
    fn empty_ontology_is_empty_text() {
        assert_eq!(serialize_ontology(&Ontology::default()), "");
        assert!(parse_ontology("# nothing\n\n").unwrap().is_empty());
    }

    #[test]
    fn inverse_subrole_is_not_normalized() {
        assert!(parse_ontology("SubRoleOf(Inv(S) R)").is_err());
    }

    #[test]
    fn datasets() {
        let d = parse_dataset("A(a)\nR(a, b)\n# c\nA(a)\n").unwrap();
        assert_eq!(d.facts, vec![Fact::concept("A", "a"), Fact::role("R", "a", "b")]);
        assert_eq!(serialize_dataset(&d), "A(a)\nR(a,b)\n");
        assert!(parse_dataset("A(B)").is_err());
        assert!(parse_dataset("Bot(a)").is_err());
    }
}

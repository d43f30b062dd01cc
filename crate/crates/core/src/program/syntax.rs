//! Text format for rules: `B1, ..., Bn -> H1 | ... | Hm.` with `?x`
//! variables, `-> FALSEHOOD.` for an empty head and the origin as a
//! trailing `#` comment.

use crate::ontology::{ConceptName, ParseError, Role};

use super::{
    Atom, CongruenceMode, FunctionSymbol, Origin, Predicate, Program, Rule, SigmaPart, Term,
    TranspositionCase,
};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Var(String),
    Open,
    Close,
    Comma,
    Bar,
    Arrow,
    Dot,
}

struct Cursor {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end: usize,
}

impl Cursor {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let column = self.toks.get(self.pos).map_or(self.end, |t| t.1);
        Err(ParseError::Syntax { line: self.line, column, message: message.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(Term::Var(v))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat(&Tok::Open) {
                    let f = match function_symbol(&name) {
                        Some(f) => f,
                        None => {
                            self.pos -= 2;
                            return self.err(format!("unknown function symbol '{name}'"));
                        }
                    };
                    let arg = self.term()?;
                    self.expect(Tok::Close, "')'")?;
                    Ok(Term::App(f, Box::new(arg)))
                } else {
                    Ok(Term::Const(name))
                }
            }
            _ => self.err("expected term"),
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let name = match self.peek().cloned() {
            Some(Tok::Ident(n)) => n,
            _ => return self.err("expected atom"),
        };
        let start = self.pos;
        self.pos += 1;
        self.expect(Tok::Open, "'('")?;
        let mut args = vec![self.term()?];
        while self.eat(&Tok::Comma) {
            args.push(self.term()?);
        }
        self.expect(Tok::Close, "')'")?;
        let pred = predicate(&name, args.len());
        if pred.arity() != args.len() {
            self.pos = start;
            return self.err(format!("predicate {name} used with {} arguments", args.len()));
        }
        Ok(Atom { pred, args })
    }
}

fn lex(line_no: usize, line: &str) -> Result<(Cursor, Option<String>), ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut toks = Vec::new();
    let mut comment = None;
    let ident_char = |c: char| c.is_alphanumeric() || c == '_';
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => {
                comment = Some(chars[i + 1..].iter().collect::<String>().trim().to_string());
                break;
            }
            '(' => toks.push((Tok::Open, col)),
            ')' => toks.push((Tok::Close, col)),
            ',' => toks.push((Tok::Comma, col)),
            '|' => toks.push((Tok::Bar, col)),
            '.' => toks.push((Tok::Dot, col)),
            '-' if chars.get(i + 1) == Some(&'>') => {
                toks.push((Tok::Arrow, col));
                i += 1;
            }
            '?' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && ident_char(chars[j]) {
                    j += 1;
                }
                if j == start {
                    return Err(ParseError::Syntax {
                        line: line_no,
                        column: col,
                        message: "empty variable name".into(),
                    });
                }
                toks.push((Tok::Var(chars[start..j].iter().collect()), col));
                i = j - 1;
            }
            c if c.is_whitespace() => {}
            c if ident_char(c) => {
                let start = i;
                while i + 1 < chars.len() && ident_char(chars[i + 1]) {
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
    Ok((Cursor { toks, pos: 0, line: line_no, end: chars.len() + 1 }, comment))
}

fn predicate(name: &str, arity: usize) -> Predicate {
    match name {
        "True" => Predicate::Top,
        "False" => Predicate::Bot,
        "Eq" => Predicate::Eq,
        _ => match name.strip_prefix("not_") {
            Some(rest) if !rest.is_empty() && !rest.starts_with("not_") => {
                Predicate::Complement(Box::new(predicate(rest, arity)))
            }
            _ if arity == 2 => Predicate::Role(name.to_string()),
            _ => Predicate::Concept(name.to_string()),
        },
    }
}

fn function_symbol(name: &str) -> Option<FunctionSymbol> {
    if let Some(idx) = name.strip_prefix("sk") {
        if let Ok(i) = idx.parse() {
            return Some(FunctionSymbol::Skolem(i));
        }
    }
    let rest = name.strip_prefix("f_")?;
    let (inverse, rest) = match rest.strip_prefix("inv_") {
        Some(r) => (true, r),
        None => (false, rest),
    };
    let (role, filler) = rest.split_once('_')?;
    if role.is_empty() || filler.is_empty() {
        return None;
    }
    let role = Role { name: role.to_string(), inverse };
    Some(FunctionSymbol::Indexed { role, filler: ConceptName::new(filler) })
}

fn origin(comment: &str) -> Origin {
    let (tag, idx) = match comment.split_once(':') {
        Some((t, i)) => (t, i.trim().parse::<usize>().ok()),
        None => (comment, None),
    };
    let case = |c| Origin::Transposed { case: c, source: idx };
    match (tag.trim(), idx) {
        ("pi", Some(i)) => Origin::Pi(i),
        ("xi", Some(i)) => Origin::Xi(i),
        ("kept", _) => case(TranspositionCase::Kept),
        ("case1", _) => case(TranspositionCase::Case1),
        ("case2", _) => case(TranspositionCase::Case2),
        ("case3", _) => case(TranspositionCase::Case3),
        ("case4", _) => case(TranspositionCase::Case4),
        ("case5", _) => case(TranspositionCase::Case5),
        ("case6", _) => case(TranspositionCase::Case6),
        ("sigma-top", _) => Origin::Sigma(SigmaPart::Top),
        ("sigma-bot", _) => Origin::Sigma(SigmaPart::Bot),
        ("sigma-eq", _) => Origin::Sigma(SigmaPart::Eq),
        _ => Origin::Input,
    }
}

fn rule_from(mut c: Cursor, comment: Option<String>) -> Result<Rule, ParseError> {
    let mut body = Vec::new();
    if c.peek() != Some(&Tok::Arrow) {
        body.push(c.atom()?);
        while c.eat(&Tok::Comma) {
            body.push(c.atom()?);
        }
    }
    c.expect(Tok::Arrow, "'->'")?;
    let mut head = Vec::new();
    if c.peek() == Some(&Tok::Ident("FALSEHOOD".into())) {
        c.pos += 1;
    } else {
        head.push(c.atom()?);
        while c.eat(&Tok::Bar) {
            head.push(c.atom()?);
        }
    }
    c.expect(Tok::Dot, "'.'")?;
    if c.pos < c.toks.len() {
        return c.err("trailing input");
    }
    let origin = comment.as_deref().map_or(Origin::Input, origin);
    Ok(Rule::new(body, head, origin))
}

/// Parses a single rule.
pub fn parse_rule(text: &str) -> Result<Rule, ParseError> {
    let (c, comment) = lex(1, text.trim())?;
    rule_from(c, comment)
}

/// Parses a rule file into a program; the Σ-components are regenerated.
pub fn parse_program(text: &str, mode: CongruenceMode) -> Result<Program, ParseError> {
    let mut core = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let (c, comment) = lex(i + 1, line)?;
        if c.toks.is_empty() {
            continue;
        }
        core.push(rule_from(c, comment)?);
    }
    Ok(Program::with_mode(core, mode))
}

fn join_atoms(atoms: &[Atom], sep: &str) -> String {
    let mut rendered: Vec<String> = atoms.iter().map(Atom::to_string).collect();
    rendered.sort();
    rendered.join(sep)
}

/// Renders a rule with atoms in canonical (sorted) order.
pub fn serialize_rule(r: &Rule) -> String {
    let body = join_atoms(&r.body, ", ");
    let head = if r.head.is_empty() { "FALSEHOOD".to_string() } else { join_atoms(&r.head, " | ") };
    if body.is_empty() {
        format!("-> {head}.")
    } else {
        format!("{body} -> {head}.")
    }
}

/// Renders the core rules of a program, one per line, tagged with origins.
pub fn serialize_program(p: &Program) -> String {
    p.core.iter().map(|r| format!("{}  # {}\n", serialize_rule(r), r.origin)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_disjunctive_rule() {
        let r = parse_rule("A(?x) -> B(?x) | C(?x).").unwrap();
        assert_eq!(r.body.len(), 1);
        assert_eq!(r.head.len(), 2);
        assert_eq!(r.origin, Origin::Input);
    }

    #[test]
    fn parses_functional_terms_and_complements() {
        let r = parse_rule("not_False(?z), C(?x), not_B(f_R_B(?x)) -> False(?z).  # case2:5")
            .unwrap();
        assert_eq!(r.body[0].pred, Predicate::bot_bar());
        assert_eq!(r.body[2].pred, Predicate::concept("B").complement());
        let f = FunctionSymbol::indexed(Role::named("R"), ConceptName::new("B"));
        assert_eq!(r.body[2].args[0], Term::app(&f, Term::var("x")));
        assert_eq!(
            r.origin,
            Origin::Transposed { case: TranspositionCase::Case2, source: Some(5) }
        );
    }

    #[test]
    fn inverse_function_symbol() {
        let r = parse_rule("A(f_inv_S_Top(?x)) -> B(?x).").unwrap();
        let f = FunctionSymbol::indexed(Role::inverse_of("S"), ConceptName::Top);
        assert_eq!(r.body[0].args[0], Term::app(&f, Term::var("x")));
    }

    #[test]
    fn empty_head_and_body() {
        let r = parse_rule("False(?x) -> FALSEHOOD.").unwrap();
        assert!(r.head.is_empty());
        assert_eq!(serialize_rule(&r), "False(?x) -> FALSEHOOD.");
        let r = parse_rule("-> True(a).").unwrap();
        assert!(r.body.is_empty());
        assert_eq!(r.head[0].args[0], Term::Const("a".into()));
    }

    #[test]
    fn canonical_order() {
        let r = parse_rule("E(?x), D(?x) -> False(?x).").unwrap();
        assert_eq!(serialize_rule(&r), "D(?x), E(?x) -> False(?x).");
    }

    #[test]
    fn errors() {
        assert!(parse_rule("A(?x) -> B(?x)").is_err());
        assert!(parse_rule("A(?x) B(?x).").is_err());
        assert!(parse_rule("A(?x) -> g(?x).").is_ok());
        assert!(parse_rule("A(?x) -> B(g(?x)).").is_err());
        assert!(parse_rule("Eq(?x) -> B(?x).").is_err());
    }
}

//! Recursive-descent parser for the lattice-sentence DSL.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! formula  := implication
//! impl     := or ('->' implication)?
//! or       := and ('|' and)*
//! and      := unary ('&' unary)*
//! unary    := '~' unary | quantifier | atom
//! quant    := ('forall' | 'exists') ident+ '.' formula
//! atom     := term ('=' | '!=' | '<=') term | '(' formula ')'
//! term     := factor ('v' factor)*          -- join, left associative
//! factor   := primary ('^' primary)*        -- meet, left associative
//! primary  := '0' | '1' | ident | '(' term ')'
//! ```
//!
//! `a <= b` desugars to `a ^ b = a`. The identifier `v` denotes join in
//! operator position and is an ordinary identifier in operand position.
//! A parenthesized group may open either a formula or a term; the parser
//! backtracks over that single ambiguity.

use super::{Formula, Sentence, Term, Theory};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unbound variable {name:?} (free identifiers must be declared constants)")]
    UnboundVariable { name: String },
    #[error("unknown constant {name:?}")]
    UnknownConstant { name: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Meet,      // ^
    Eq,        // =
    Ne,        // !=
    Le,        // <=
    And,       // &
    Or,        // |
    Not,       // ~
    Implies,   // ->
    LParen,
    RParen,
    Forall,
    Exists,
    Dot,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, co) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        let tok = match c {
            c if c.is_whitespace() => {
                bump(&mut chars);
                continue;
            }
            '(' => {
                bump(&mut chars);
                Tok::LParen
            }
            ')' => {
                bump(&mut chars);
                Tok::RParen
            }
            '^' => {
                bump(&mut chars);
                Tok::Meet
            }
            '&' => {
                bump(&mut chars);
                Tok::And
            }
            '|' => {
                bump(&mut chars);
                Tok::Or
            }
            '~' => {
                bump(&mut chars);
                Tok::Not
            }
            '.' => {
                bump(&mut chars);
                Tok::Dot
            }
            '=' => {
                bump(&mut chars);
                Tok::Eq
            }
            '!' => {
                bump(&mut chars);
                if chars.peek() == Some(&'=') {
                    bump(&mut chars);
                    Tok::Ne
                } else {
                    return Err(ParseError::Syntax {
                        line: l,
                        col: co,
                        msg: "expected '=' after '!'".into(),
                    });
                }
            }
            '<' => {
                bump(&mut chars);
                if chars.peek() == Some(&'=') {
                    bump(&mut chars);
                    Tok::Le
                } else {
                    return Err(ParseError::Syntax {
                        line: l,
                        col: co,
                        msg: "expected '=' after '<'".into(),
                    });
                }
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    Tok::Implies
                } else {
                    return Err(ParseError::Syntax {
                        line: l,
                        col: co,
                        msg: "expected '>' after '-'".into(),
                    });
                }
            }
            '0' => {
                bump(&mut chars);
                Tok::Zero
            }
            '1' => {
                bump(&mut chars);
                Tok::One
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                match ident.as_str() {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    _ => Tok::Ident(ident),
                }
            }
            other => {
                return Err(ParseError::Syntax {
                    line: l,
                    col: co,
                    msg: format!("unexpected character {other:?}"),
                });
            }
        };
        out.push(Spanned { tok, line: l, col: co });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end_line: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .unwrap_or((self.end_line, self.end_col))
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let left = self.or_level()?;
        if self.peek() == Some(&Tok::Implies) {
            self.pos += 1;
            let right = self.formula()?; // right associative
            Ok(Formula::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn or_level(&mut self) -> Result<Formula, ParseError> {
        let first = self.and_level()?;
        if self.peek() != Some(&Tok::Or) {
            return Ok(first);
        }
        let mut parts = vec![first];
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            parts.push(self.and_level()?);
        }
        Ok(Formula::Or(parts))
    }

    fn and_level(&mut self) -> Result<Formula, ParseError> {
        let first = self.unary()?;
        if self.peek() != Some(&Tok::And) {
            return Ok(first);
        }
        let mut parts = vec![first];
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            parts.push(self.unary()?);
        }
        Ok(Formula::And(parts))
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Formula::Not(Box::new(self.unary()?)))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => {
                let forall = self.peek() == Some(&Tok::Forall);
                self.pos += 1;
                let mut vars = Vec::new();
                loop {
                    match self.bump() {
                        Some(Tok::Ident(v)) => vars.push(v),
                        Some(Tok::Dot) => break,
                        _ => return Err(self.err("expected variable or '.' in quantifier")),
                    }
                }
                if vars.is_empty() {
                    return Err(self.err("quantifier binds no variables"));
                }
                let body = self.formula()?;
                Ok(if forall {
                    Formula::Forall(vars, Box::new(body))
                } else {
                    Formula::Exists(vars, Box::new(body))
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        // A '(' may open a parenthesized formula or a parenthesized term.
        // Try the formula reading first; on failure, reparse as a term.
        if self.peek() == Some(&Tok::LParen) {
            let save = self.pos;
            self.pos += 1;
            match self.formula() {
                Ok(inner) => {
                    if self.peek() == Some(&Tok::RParen) {
                        self.pos += 1;
                        // `(formula)` followed by a comparison means the
                        // group was a term after all, e.g. `(x ^ y) = 0`.
                        if matches!(self.peek(), Some(Tok::Eq) | Some(Tok::Ne) | Some(Tok::Le))
                            || matches!(self.peek(), Some(Tok::Meet))
                            || matches!(self.peek(), Some(Tok::Ident(id)) if id == "v")
                        {
                            self.pos = save;
                            return self.comparison();
                        }
                        return Ok(inner);
                    }
                    // fall through to term reading
                    self.pos = save;
                    self.comparison()
                }
                Err(_) => {
                    self.pos = save;
                    self.comparison()
                }
            }
        } else {
            self.comparison()
        }
    }

    fn comparison(&mut self) -> Result<Formula, ParseError> {
        let left = self.term()?;
        let save = self.pos;
        match self.bump() {
            Some(Tok::Eq) => Ok(Formula::Eq(left, self.term()?)),
            Some(Tok::Ne) => Ok(Formula::Ne(left, self.term()?)),
            Some(Tok::Le) => {
                let right = self.term()?;
                Ok(Formula::Eq(Term::meet(left.clone(), right), left))
            }
            _ => {
                self.pos = save;
                Err(self.err("expected '=', '!=' or '<=' after term"))
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Ident(id)) if id == "v" => {
                    self.pos += 1;
                    acc = Term::join(acc, self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.primary()?;
        while self.peek() == Some(&Tok::Meet) {
            self.pos += 1;
            acc = Term::meet(acc, self.primary()?);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        let save = self.pos;
        match self.bump() {
            Some(Tok::Zero) => Ok(Term::Zero),
            Some(Tok::One) => Ok(Term::One),
            Some(Tok::Ident(v)) => Ok(Term::Var(v)),
            Some(Tok::LParen) => {
                let t = self.term()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(t)
            }
            _ => {
                self.pos = save;
                Err(self.err("expected a term"))
            }
        }
    }
}

/// Parses a sentence. Free identifiers must appear in `constants`; they are
/// turned into [`Term::Const`] nodes. Bound identifiers become variables.
pub fn parse_with_constants(text: &str, constants: &[String]) -> Result<Sentence, ParseError> {
    let toks = lex(text)?;
    let (end_line, end_col) = toks
        .last()
        .map(|s| (s.line, s.col + 1))
        .unwrap_or((1, 1));
    let mut p = Parser {
        toks,
        pos: 0,
        end_line,
        end_col,
    };
    let f = p.formula()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    let known: BTreeSet<&String> = constants.iter().collect();
    resolve(f, &mut Vec::new(), &known)
}

/// Parses a sentence with no named constants: every identifier must be
/// bound by a quantifier.
pub fn parse(text: &str) -> Result<Sentence, ParseError> {
    parse_with_constants(text, &[])
}

fn resolve(
    f: Formula,
    bound: &mut Vec<String>,
    known: &BTreeSet<&String>,
) -> Result<Formula, ParseError> {
    Ok(match f {
        Formula::Eq(a, b) => Formula::Eq(resolve_term(a, bound, known)?, resolve_term(b, bound, known)?),
        Formula::Ne(a, b) => Formula::Ne(resolve_term(a, bound, known)?, resolve_term(b, bound, known)?),
        Formula::Not(x) => Formula::Not(Box::new(resolve(*x, bound, known)?)),
        Formula::And(fs) => Formula::And(
            fs.into_iter()
                .map(|x| resolve(x, bound, known))
                .collect::<Result<_, _>>()?,
        ),
        Formula::Or(fs) => Formula::Or(
            fs.into_iter()
                .map(|x| resolve(x, bound, known))
                .collect::<Result<_, _>>()?,
        ),
        Formula::Implies(a, b) => Formula::implies(
            resolve(*a, bound, known)?,
            resolve(*b, bound, known)?,
        ),
        Formula::Forall(vs, body) => {
            let depth = bound.len();
            bound.extend(vs.iter().cloned());
            let body = resolve(*body, bound, known)?;
            bound.truncate(depth);
            Formula::Forall(vs, Box::new(body))
        }
        Formula::Exists(vs, body) => {
            let depth = bound.len();
            bound.extend(vs.iter().cloned());
            let body = resolve(*body, bound, known)?;
            bound.truncate(depth);
            Formula::Exists(vs, Box::new(body))
        }
    })
}

fn resolve_term(
    t: Term,
    bound: &mut Vec<String>,
    known: &BTreeSet<&String>,
) -> Result<Term, ParseError> {
    Ok(match t {
        Term::Var(name) => {
            if bound.iter().any(|b| *b == name) {
                Term::Var(name)
            } else if known.contains(&name) {
                Term::Const(name)
            } else {
                return Err(ParseError::UnboundVariable { name });
            }
        }
        Term::Const(c) => Term::Const(c),
        Term::Zero => Term::Zero,
        Term::One => Term::One,
        Term::Meet(a, b) => Term::meet(
            resolve_term(*a, bound, known)?,
            resolve_term(*b, bound, known)?,
        ),
        Term::Join(a, b) => Term::join(
            resolve_term(*a, bound, known)?,
            resolve_term(*b, bound, known)?,
        ),
    })
}

/// Loads a theory from text: one `name: sentence` per line, `#` comments,
/// and `const <name>` lines declaring named constants.
pub fn parse_theory_text(text: &str) -> Result<Theory, ParseError> {
    let mut theory = Theory::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("const ") {
            for name in rest.split_whitespace() {
                theory.declare(name);
            }
            continue;
        }
        let (name, body) = line.split_once(':').ok_or(ParseError::Syntax {
            line: lineno + 1,
            col: 1,
            msg: "expected 'name: sentence'".into(),
        })?;
        let consts: Vec<String> = theory.constants.iter().map(|(c, _)| c.clone()).collect();
        let sentence =
            parse_with_constants(body, &consts).map_err(|e| relocate(e, lineno + 1))?;
        theory.push(name.trim(), sentence);
    }
    Ok(theory)
}

fn relocate(e: ParseError, line: usize) -> ParseError {
    match e {
        ParseError::Syntax { col, msg, .. } => ParseError::Syntax { line, col, msg },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_absorption() {
        let s = parse("forall x. x ^ 1 = x").unwrap();
        assert_eq!(
            s,
            Formula::forall(
                &["x"],
                Formula::Eq(Term::meet(Term::var("x"), Term::One), Term::var("x"))
            )
        );
    }

    #[test]
    fn parses_eq1_body_shape() {
        let s = parse(
            "forall x y. (x ^ y = 0) -> exists u v. (x ^ u = 0 & y ^ v = 0 & u v v = 1)",
        )
        .unwrap();
        // outermost binds x y; body is an implication whose consequent is
        // the existential block
        if let Formula::Forall(vs, body) = s {
            assert_eq!(vs, vec!["x", "y"]);
            if let Formula::Implies(_, concl) = *body {
                if let Formula::Exists(es, inner) = *concl {
                    assert_eq!(es, vec!["u", "v"]);
                    if let Formula::And(cs) = *inner {
                        assert_eq!(cs.len(), 3);
                        // `u v v = 1` is join(u, v) = 1
                        assert_eq!(
                            cs[2],
                            Formula::Eq(Term::join(Term::var("u"), Term::var("v")), Term::One)
                        );
                    } else {
                        panic!("expected conjunction");
                    }
                } else {
                    panic!("expected exists");
                }
            } else {
                panic!("expected implication");
            }
        } else {
            panic!("expected forall");
        }
    }

    #[test]
    fn dangling_operator_is_a_syntax_error() {
        let err = parse("forall x. x ^").unwrap_err();
        match err {
            ParseError::Syntax { line, col, .. } => {
                assert_eq!(line, 1);
                assert!(col >= 13, "column {col}");
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unbound_variable_rejected() {
        let err = parse("forall x. x ^ w = 0").unwrap_err();
        assert_eq!(
            err,
            ParseError::UnboundVariable {
                name: "w".to_owned()
            }
        );
    }

    #[test]
    fn constants_resolve() {
        let s = parse_with_constants("forall x. x ^ a = 0", &["a".to_owned()]).unwrap();
        assert_eq!(
            s,
            Formula::forall(
                &["x"],
                Formula::Eq(Term::meet(Term::var("x"), Term::cons("a")), Term::Zero)
            )
        );
    }

    #[test]
    fn le_desugars() {
        let s = parse("forall x y. x <= y").unwrap();
        assert_eq!(
            s,
            Formula::forall(
                &["x", "y"],
                Formula::Eq(Term::meet(Term::var("x"), Term::var("y")), Term::var("x"))
            )
        );
    }

    #[test]
    fn join_variable_ambiguity() {
        // v as a bound variable and as the join operator in one sentence
        let s = parse("forall u v. u v v = u v v").unwrap();
        if let Formula::Forall(vs, body) = s {
            assert_eq!(vs, vec!["u", "v"]);
            let j = Term::join(Term::var("u"), Term::var("v"));
            assert_eq!(*body, Formula::Eq(j.clone(), j));
        } else {
            panic!();
        }
    }

    #[test]
    fn parenthesized_term_comparison() {
        let s = parse("forall x y z. (x ^ y) v z = z").unwrap();
        let printed = s.to_string();
        assert_eq!(parse(&printed).unwrap(), s);
    }

    #[test]
    fn theory_text_parses() {
        let text = "# a comment\nconst a b\nfirst: forall x. x ^ a = 0 ^ b\nsecond: a != b\n";
        let t = parse_theory_text(text).unwrap();
        assert_eq!(t.sentences.len(), 2);
        assert_eq!(t.constants.len(), 2);
        t.validate().unwrap();
    }
}

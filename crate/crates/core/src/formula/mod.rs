//! First-order language of bounded lattices.
//!
//! Terms are built from variables, named constants and the constants `0`
//! and `1` with `^` (meet) and `v` (join); atomic formulas are `=` and
//! `!=` (`<=` desugars to `x ^ y = x`); connectives are `~`, `&`, `|`,
//! `->`; quantifiers `forall`/`exists` bind a list of variables and extend
//! as far right as possible.
//!
//! `v` doubles as the join operator and an ordinary identifier: in operand
//! position it is a variable or constant, in operator position it is join.
//! This matches the usual display of the sentences this module ships as
//! [`builtin`]s.

mod diagram;
mod eval;
mod parse;
mod search;

pub use diagram::{diagram, find_embedding, verify_embedding};
pub use eval::{bindings_by_name, eval, EvalError, EvalReport};
pub use parse::{parse, parse_theory_text, parse_with_constants, ParseError};
pub use search::{
    enumerate_lattices, model_search, EnumerationOutcome, ModelSearchOutcome, SearchError,
};

use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Const(String),
    Zero,
    One,
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_owned())
    }

    pub fn cons(name: &str) -> Term {
        Term::Const(name.to_owned())
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    /// Left-associated meet of several terms.
    pub fn meet_all<I: IntoIterator<Item = Term>>(terms: I) -> Term {
        let mut it = terms.into_iter();
        let first = it.next().expect("meet_all of nothing");
        it.fold(first, Term::meet)
    }

    /// Left-associated join of several terms.
    pub fn join_all<I: IntoIterator<Item = Term>>(terms: I) -> Term {
        let mut it = terms.into_iter();
        let first = it.next().expect("join_all of nothing");
        it.fold(first, Term::join)
    }

    fn collect_free(&self, bound: &mut Vec<String>, free: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) | Term::Const(v) => {
                if !bound.iter().any(|b| b == v) {
                    free.insert(v.clone());
                }
            }
            Term::Zero | Term::One => {}
            Term::Meet(a, b) | Term::Join(a, b) => {
                a.collect_free(bound, free);
                b.collect_free(bound, free);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Ne(Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(Vec<String>, Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
}

/// A closed formula (modulo named constants).
pub type Sentence = Formula;

impl Formula {
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(vars: &[&str], body: Formula) -> Formula {
        Formula::Forall(vars.iter().map(|s| s.to_string()).collect(), Box::new(body))
    }

    pub fn exists(vars: &[&str], body: Formula) -> Formula {
        Formula::Exists(vars.iter().map(|s| s.to_string()).collect(), Box::new(body))
    }

    /// Identifiers occurring free; for a sentence these are exactly its
    /// named constants.
    pub fn free_identifiers(&self) -> BTreeSet<String> {
        let mut free = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut free);
        free
    }

    fn collect_free(&self, bound: &mut Vec<String>, free: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) | Formula::Ne(a, b) => {
                a.collect_free(bound, free);
                b.collect_free(bound, free);
            }
            Formula::Not(f) => f.collect_free(bound, free),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.collect_free(bound, free);
                }
            }
            Formula::Implies(a, b) => {
                a.collect_free(bound, free);
                b.collect_free(bound, free);
            }
            Formula::Forall(vs, f) | Formula::Exists(vs, f) => {
                let depth = bound.len();
                bound.extend(vs.iter().cloned());
                f.collect_free(bound, free);
                bound.truncate(depth);
            }
        }
    }

    /// Strips the outermost universal block, if any.
    pub fn strip_universal_prefix(&self) -> (Vec<String>, &Formula) {
        match self {
            Formula::Forall(vs, body) => {
                let (mut inner_vs, inner) = body.strip_universal_prefix();
                let mut vs = vs.clone();
                vs.append(&mut inner_vs);
                (vs, inner)
            }
            other => (Vec::new(), other),
        }
    }
}

// Precedence-aware printing that reparses to an equal AST.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f)
    }
}

impl Term {
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => write!(f, "{v}"),
            Term::Zero => write!(f, "0"),
            Term::One => write!(f, "1"),
            Term::Meet(a, b) => {
                // meet binds tighter than join; keep left association
                match **a {
                    Term::Join(..) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                write!(f, " ^ ")?;
                match **b {
                    Term::Join(..) | Term::Meet(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
            Term::Join(a, b) => {
                write!(f, "{a}")?;
                write!(f, " v ")?;
                match **b {
                    Term::Join(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Ne(a, b) => write!(f, "{a} != {b}"),
            Formula::Not(x) => write!(f, "~{}", Paren(x)),
            Formula::And(fs) => {
                let parts: Vec<String> = fs.iter().map(|x| Paren(x).to_string()).collect();
                write!(f, "{}", parts.join(" & "))
            }
            Formula::Or(fs) => {
                let parts: Vec<String> = fs.iter().map(|x| Paren(x).to_string()).collect();
                write!(f, "{}", parts.join(" | "))
            }
            Formula::Implies(a, b) => write!(f, "{} -> {}", Paren(a), Paren(b)),
            Formula::Forall(vs, body) => write!(f, "forall {}. {}", vs.join(" "), body),
            Formula::Exists(vs, body) => write!(f, "exists {}. {}", vs.join(" "), body),
        }
    }
}

/// Wraps compound subformulas in parentheses so that printing is
/// unambiguous regardless of context.
struct Paren<'a>(&'a Formula);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Formula::Eq(..) | Formula::Ne(..) | Formula::Not(..) => write!(f, "{}", self.0),
            _ => write!(f, "({})", self.0),
        }
    }
}

// ---------------------------------------------------------------------------
// Theories

/// A list of named sentences with named constants.
#[derive(Debug, Clone, Default)]
pub struct Theory {
    pub sentences: Vec<(String, Sentence)>,
    /// Declared constants; an interpretation, when present, names a lattice
    /// element (used by [`diagram`] theories).
    pub constants: Vec<(String, Option<String>)>,
}

#[derive(Debug, thiserror::Error)]
pub enum TheoryError {
    #[error("duplicate sentence name {0:?}")]
    DuplicateName(String),
    #[error("duplicate constant {0:?}")]
    DuplicateConstant(String),
    #[error("sentence {name:?} uses undeclared constant {constant:?}")]
    UndeclaredConstant { name: String, constant: String },
}

impl Theory {
    pub fn new() -> Theory {
        Theory::default()
    }

    pub fn declare(&mut self, name: &str) {
        self.constants.push((name.to_owned(), None));
    }

    pub fn declare_interpreted(&mut self, name: &str, element: &str) {
        self.constants.push((name.to_owned(), Some(element.to_owned())));
    }

    pub fn push(&mut self, name: &str, s: Sentence) {
        self.sentences.push((name.to_owned(), s));
    }

    /// Checks name uniqueness and that every free identifier of every
    /// sentence is a declared constant.
    pub fn validate(&self) -> Result<(), TheoryError> {
        let mut names = BTreeSet::new();
        for (n, _) in &self.sentences {
            if !names.insert(n.clone()) {
                return Err(TheoryError::DuplicateName(n.clone()));
            }
        }
        let mut consts = BTreeSet::new();
        for (c, _) in &self.constants {
            if !consts.insert(c.clone()) {
                return Err(TheoryError::DuplicateConstant(c.clone()));
            }
        }
        for (n, s) in &self.sentences {
            for c in s.free_identifiers() {
                if !consts.contains(&c) {
                    return Err(TheoryError::UndeclaredConstant {
                        name: n.clone(),
                        constant: c,
                    });
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Built-in sentences

/// Names of the built-in sentences.
pub const BUILTIN_NAMES: [&str; 4] = ["normal", "conn", "hi", "dim_le_1"];

#[derive(Debug, thiserror::Error)]
#[error("unknown builtin sentence {0:?} (expected one of normal, conn, hi, dim_le_1)")]
pub struct UnknownBuiltin(pub String);

/// Returns a built-in sentence by name; `conn` defaults to `conn(1)`.
pub fn builtin(name: &str) -> Result<Sentence, UnknownBuiltin> {
    match name {
        "normal" => Ok(normal()),
        "conn" => Ok(conn(Term::One)),
        "hi" => Ok(hi()),
        "dim_le_1" => Ok(dim_le_1()),
        other => Err(UnknownBuiltin(other.to_owned())),
    }
}

/// Normality of the lattice; equivalent to the Wallman space being
/// Hausdorff:
/// `forall x y. exists u v. (x ^ y = 0) -> (x ^ u = 0 & y ^ v = 0 & u v v = 1)`.
pub fn normal() -> Sentence {
    use Term as T;
    let x = || T::var("x");
    let y = || T::var("y");
    let u = || T::var("u");
    let v = || T::var("v");
    let zero = || T::Zero;
    let body = Formula::implies(
        Formula::Eq(T::meet(x(), y()), zero()),
        Formula::And(vec![
            Formula::Eq(T::meet(x(), u()), zero()),
            Formula::Eq(T::meet(y(), v()), zero()),
            Formula::Eq(T::join(u(), v()), T::One),
        ]),
    );
    Formula::forall(&["x", "y"], Formula::exists(&["u", "v"], body))
}

/// Connectedness of the set represented by `a`:
/// `forall x y. ((x ^ y = 0) & (x v y = a)) -> (x = 0 | x = a)`.
pub fn conn(a: Term) -> Sentence {
    use Term as T;
    let x = || T::var("x");
    let y = || T::var("y");
    let body = Formula::implies(
        Formula::And(vec![
            Formula::Eq(T::meet(x(), y()), T::Zero),
            Formula::Eq(T::join(x(), y()), a.clone()),
        ]),
        Formula::Or(vec![Formula::Eq(x(), T::Zero), Formula::Eq(x(), a.clone())]),
    );
    Formula::forall(&["x", "y"], body)
}

/// Hereditary indecomposability: a chicane for every pliable foursome.
/// The four universal variables are the foursome (C, D, F, G) = (x, y, u, v)
/// and the three existential ones are the chicane pieces.
pub fn hi() -> Sentence {
    use Term as T;
    let x = || T::var("x");
    let y = || T::var("y");
    let u = || T::var("u");
    let v = || T::var("v");
    let z1 = || T::var("z1");
    let z2 = || T::var("z2");
    let z3 = || T::var("z3");
    let zero = || T::Zero;
    let premise = Formula::And(vec![
        Formula::Eq(T::meet(x(), y()), zero()),
        Formula::Eq(T::meet(x(), u()), zero()),
        Formula::Eq(T::meet(y(), v()), zero()),
    ]);
    let conclusion = Formula::And(vec![
        Formula::Eq(T::meet(x(), T::join(z2(), z3())), zero()),
        Formula::Eq(T::meet(y(), T::join(z1(), z2())), zero()),
        Formula::Eq(T::meet(z1(), z3()), zero()),
        Formula::Eq(T::meet_all([z1(), z2(), v()]), zero()),
        Formula::Eq(T::meet_all([z2(), z3(), u()]), zero()),
        Formula::Eq(T::join_all([z1(), z2(), z3()]), T::One),
    ]);
    Formula::forall(
        &["x", "y", "u", "v"],
        Formula::exists(&["z1", "z2", "z3"], Formula::implies(premise, conclusion)),
    )
}

/// Covering dimension of the Wallman space at most one, in terms of closed
/// sets: two disjoint pairs admit swellings whose four complements have
/// empty common intersection.
pub fn dim_le_1() -> Sentence {
    use Term as T;
    let x0 = || T::var("x0");
    let y0 = || T::var("y0");
    let x1 = || T::var("x1");
    let y1 = || T::var("y1");
    let u0 = || T::var("u0");
    let v0 = || T::var("v0");
    let u1 = || T::var("u1");
    let v1 = || T::var("v1");
    let zero = || T::Zero;
    let premise = Formula::And(vec![
        Formula::Eq(T::meet(x0(), y0()), zero()),
        Formula::Eq(T::meet(x1(), y1()), zero()),
    ]);
    let conclusion = Formula::And(vec![
        Formula::Eq(T::meet(x0(), u0()), zero()),
        Formula::Eq(T::meet(y0(), v0()), zero()),
        Formula::Eq(T::meet(x1(), u1()), zero()),
        Formula::Eq(T::meet(y1(), v1()), zero()),
        Formula::Eq(T::join(u0(), v0()), T::One),
        Formula::Eq(T::join(u1(), v1()), T::One),
        Formula::Eq(T::meet_all([u0(), v0(), u1(), v1()]), zero()),
    ]);
    Formula::forall(
        &["x0", "y0", "x1", "y1"],
        Formula::exists(
            &["u0", "v0", "u1", "v1"],
            Formula::implies(premise, conclusion),
        ),
    )
}

/// The equational lattice axioms as a theory; satisfied by construction by
/// every [`crate::lattice::FiniteLattice`], but useful as model-search
/// input and for cross-checking.
pub fn lattice_axioms() -> Theory {
    let mut t = Theory::new();
    let axioms: [(&str, &str); 8] = [
        ("meet_comm", "forall x y. x ^ y = y ^ x"),
        ("join_comm", "forall x y. x v y = y v x"),
        ("meet_assoc", "forall x y z. (x ^ y) ^ z = x ^ (y ^ z)"),
        ("join_assoc", "forall x y z. (x v y) v z = x v (y v z)"),
        ("absorb_mj", "forall x y. x ^ (x v y) = x"),
        ("absorb_jm", "forall x y. x v (x ^ y) = x"),
        ("bottom_law", "forall x. 0 v x = x"),
        ("top_law", "forall x. 1 ^ x = x"),
    ];
    for (name, text) in axioms {
        t.push(name, parse(text).expect("axiom parses"));
    }
    t
}

/// Distributivity as a sentence.
pub fn distributive() -> Sentence {
    parse("forall x y z. x ^ (y v z) = (x ^ y) v (x ^ z)").expect("parses")
}

/// Disjunctivity as a sentence: `a` not below `b` yields a nonzero `c`
/// below `a` missing `b`.
pub fn disjunctive() -> Sentence {
    parse("forall a b. (a ^ b = a) | exists c. (c != 0 & c ^ a = c & c ^ b = 0)")
        .expect("parses")
}

//! Brute-force satisfaction of sentences in a finite lattice.
//!
//! Quantifier blocks are enumerated left-to-right in element order with
//! short-circuiting; reported witnesses and counterexamples are the
//! lexicographically first in element order. Enumeration prunes with a
//! three-valued partial evaluator: a subformula whose undecided variables
//! cannot change its value decides the whole block early.

use super::{Formula, Term};
use crate::lattice::{Elem, FiniteLattice};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("unbound constant {0:?}")]
    UnboundConstant(String),
    #[error("constant {name:?} interpreted by unknown element {element:?}")]
    UnknownElement { name: String, element: String },
}

/// Outcome of evaluating a sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalReport {
    pub value: bool,
    /// Variable assignments along the deciding path: for a false sentence
    /// the outermost failing universal assignment (completed
    /// lexicographically), for a true existential the first witnesses.
    pub deciding: Vec<(String, Elem)>,
}

/// Evaluates `sentence` over `lattice` with the given constant
/// interpretations. Every free identifier of the sentence must be bound.
pub fn eval(
    lattice: &FiniteLattice,
    sentence: &Formula,
    bindings: &HashMap<String, Elem>,
) -> Result<EvalReport, EvalError> {
    for c in sentence.free_identifiers() {
        if !bindings.contains_key(&c) {
            return Err(EvalError::UnboundConstant(c));
        }
    }
    let consts: HashMap<String, Option<Elem>> =
        bindings.iter().map(|(k, &v)| (k.clone(), Some(v))).collect();
    let ev = Evaluator { lattice, consts: &consts };
    let mut vars = Vec::new();
    let (value, deciding) = ev.eval_full(sentence, &mut vars);
    Ok(EvalReport { value, deciding })
}

/// Resolves a binding map given by element names.
pub fn bindings_by_name(
    lattice: &FiniteLattice,
    named: &[(String, String)],
) -> Result<HashMap<String, Elem>, EvalError> {
    named
        .iter()
        .map(|(c, e)| {
            lattice
                .index_of(e)
                .map(|i| (c.clone(), i))
                .ok_or_else(|| EvalError::UnknownElement {
                    name: c.clone(),
                    element: e.clone(),
                })
        })
        .collect()
}

pub(crate) struct Evaluator<'a> {
    pub lattice: &'a FiniteLattice,
    /// Constant interpretations; `None` marks a constant not yet assigned
    /// (used by bounded model search for pruning).
    pub consts: &'a HashMap<String, Option<Elem>>,
}

type VarStack = Vec<(String, Option<Elem>)>;

/// Result of enumerating one quantifier block.
enum EnumOutcome {
    /// The short-circuit value was reached; carries the deciding assignment
    /// of the block and the trail of the body under it.
    Decided(Vec<(String, Elem)>, Vec<(String, Elem)>),
    /// Every assignment produced the opposite value.
    Opposite,
    /// Some assignments stayed undecided (unknown constants remain).
    Unknown,
}

impl Evaluator<'_> {
    fn lookup(&self, vars: &VarStack, name: &str) -> Option<Elem> {
        for (v, val) in vars.iter().rev() {
            if v == name {
                return *val;
            }
        }
        self.consts.get(name).copied().flatten()
    }

    fn term(&self, t: &Term, vars: &VarStack) -> Option<Elem> {
        match t {
            Term::Var(v) | Term::Const(v) => self.lookup(vars, v),
            Term::Zero => Some(self.lattice.bottom()),
            Term::One => Some(self.lattice.top()),
            Term::Meet(a, b) => {
                let (a, b) = (self.term(a, vars), self.term(b, vars));
                match (a, b) {
                    (Some(x), Some(y)) => Some(self.lattice.meet(x, y)),
                    // meet is monotone: bottom absorbs even under unknowns
                    (Some(x), None) | (None, Some(x)) if x == self.lattice.bottom() => {
                        Some(self.lattice.bottom())
                    }
                    _ => None,
                }
            }
            Term::Join(a, b) => {
                let (a, b) = (self.term(a, vars), self.term(b, vars));
                match (a, b) {
                    (Some(x), Some(y)) => Some(self.lattice.join(x, y)),
                    (Some(x), None) | (None, Some(x)) if x == self.lattice.top() => {
                        Some(self.lattice.top())
                    }
                    _ => None,
                }
            }
        }
    }

    /// Three-valued evaluation: `None` means the undecided variables and
    /// constants still matter.
    pub(crate) fn eval_partial(&self, f: &Formula, vars: &mut VarStack) -> Option<bool> {
        match f {
            Formula::Eq(a, b) => match (self.term(a, vars), self.term(b, vars)) {
                (Some(x), Some(y)) => Some(x == y),
                _ => None,
            },
            Formula::Ne(a, b) => match (self.term(a, vars), self.term(b, vars)) {
                (Some(x), Some(y)) => Some(x != y),
                _ => None,
            },
            Formula::Not(x) => self.eval_partial(x, vars).map(|b| !b),
            Formula::And(fs) => {
                let mut all_true = true;
                for x in fs {
                    match self.eval_partial(x, vars) {
                        Some(false) => return Some(false),
                        Some(true) => {}
                        None => all_true = false,
                    }
                }
                if all_true {
                    Some(true)
                } else {
                    None
                }
            }
            Formula::Or(fs) => {
                let mut all_false = true;
                for x in fs {
                    match self.eval_partial(x, vars) {
                        Some(true) => return Some(true),
                        Some(false) => {}
                        None => all_false = false,
                    }
                }
                if all_false {
                    Some(false)
                } else {
                    None
                }
            }
            Formula::Implies(a, b) => match self.eval_partial(a, vars) {
                Some(false) => Some(true),
                Some(true) => self.eval_partial(b, vars),
                None => match self.eval_partial(b, vars) {
                    Some(true) => Some(true),
                    _ => None,
                },
            },
            Formula::Forall(vs, body) => self.quantifier(vs, body, vars, false).0,
            Formula::Exists(vs, body) => self.quantifier(vs, body, vars, true).0,
        }
    }

    /// Full evaluation with a deciding trail; every free variable and
    /// constant must be bound.
    pub(crate) fn eval_full(&self, f: &Formula, vars: &mut VarStack) -> (bool, Vec<(String, Elem)>) {
        match f {
            Formula::Eq(..) | Formula::Ne(..) => {
                let v = self.eval_partial(f, vars).expect("atoms are closed here");
                (v, Vec::new())
            }
            Formula::Not(x) => {
                let (v, trail) = self.eval_full(x, vars);
                (!v, trail)
            }
            Formula::And(fs) => {
                let mut combined = Vec::new();
                for x in fs {
                    let (v, trail) = self.eval_full(x, vars);
                    if !v {
                        return (false, trail);
                    }
                    combined.extend(trail);
                }
                (true, combined)
            }
            Formula::Or(fs) => {
                let mut combined = Vec::new();
                for x in fs {
                    let (v, trail) = self.eval_full(x, vars);
                    if v {
                        return (true, trail);
                    }
                    combined.extend(trail);
                }
                (false, combined)
            }
            Formula::Implies(a, b) => {
                let (pa, _) = self.eval_full(a, vars);
                if !pa {
                    (true, Vec::new())
                } else {
                    self.eval_full(b, vars)
                }
            }
            Formula::Forall(vs, body) => {
                let (value, trail) = self.quantifier(vs, body, vars, false);
                (value.expect("closed quantifier evaluates"), trail)
            }
            Formula::Exists(vs, body) => {
                let (value, trail) = self.quantifier(vs, body, vars, true);
                (value.expect("closed quantifier evaluates"), trail)
            }
        }
    }

    /// Enumerates a quantifier block. For `exists`, the short-circuit value
    /// is `true`; for `forall` it is `false`. Returns the deciding
    /// assignment (completed with the first element for variables whose
    /// value no longer matters) plus the trail of the body under it.
    fn quantifier(
        &self,
        vs: &[String],
        body: &Formula,
        vars: &mut VarStack,
        existential: bool,
    ) -> (Option<bool>, Vec<(String, Elem)>) {
        let base = vars.len();
        for v in vs {
            vars.push((v.clone(), None));
        }
        let result = self.enumerate(vs, 0, base, body, vars, existential);
        vars.truncate(base);
        match result {
            EnumOutcome::Decided(assignment, trail) => {
                let mut full = assignment;
                full.extend(trail);
                (Some(existential), full)
            }
            EnumOutcome::Opposite => (Some(!existential), Vec::new()),
            EnumOutcome::Unknown => (None, Vec::new()),
        }
    }

    fn enumerate(
        &self,
        vs: &[String],
        depth: usize,
        base: usize,
        body: &Formula,
        vars: &mut VarStack,
        existential: bool,
    ) -> EnumOutcome {
        // decide early when the remaining variables cannot matter
        match self.eval_partial(body, vars) {
            Some(v) if v == existential => {
                let assignment = vs
                    .iter()
                    .enumerate()
                    .map(|(i, name)| (name.clone(), vars[base + i].1.unwrap_or(0)))
                    .collect();
                return EnumOutcome::Decided(assignment, self.body_trail(body, vars, base, vs));
            }
            Some(_) => return EnumOutcome::Opposite,
            None => {}
        }
        if depth == vs.len() {
            // all assigned yet undecided: free constants remain unknown
            return EnumOutcome::Unknown;
        }
        let mut saw_unknown = false;
        for e in 0..self.lattice.size() {
            vars[base + depth].1 = Some(e);
            match self.enumerate(vs, depth + 1, base, body, vars, existential) {
                EnumOutcome::Decided(a, t) => {
                    vars[base + depth].1 = None;
                    return EnumOutcome::Decided(a, t);
                }
                EnumOutcome::Opposite => {}
                EnumOutcome::Unknown => saw_unknown = true,
            }
        }
        vars[base + depth].1 = None;
        if saw_unknown {
            EnumOutcome::Unknown
        } else {
            EnumOutcome::Opposite
        }
    }

    /// Trail of the body under the deciding assignment, with unassigned
    /// trailing variables completed by the first element.
    fn body_trail(
        &self,
        body: &Formula,
        vars: &mut VarStack,
        base: usize,
        vs: &[String],
    ) -> Vec<(String, Elem)> {
        let saved: Vec<Option<Elem>> = (0..vs.len()).map(|i| vars[base + i].1).collect();
        for i in 0..vs.len() {
            if vars[base + i].1.is_none() {
                vars[base + i].1 = Some(0);
            }
        }
        // The body may still contain unknown constants or unassigned outer
        // variables during model search; in that case skip the trail.
        let closed = body
            .free_identifiers()
            .iter()
            .all(|name| self.lookup(vars, name).is_some());
        let trail = if closed {
            self.eval_full(body, vars).1
        } else {
            Vec::new()
        };
        for (i, s) in saved.into_iter().enumerate() {
            vars[base + i].1 = s;
        }
        trail
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{conn, hi, normal, parse, Term};
    use crate::lattice::{power_set_lattice, FiniteLattice};

    fn no_bindings() -> HashMap<String, Elem> {
        HashMap::new()
    }

    #[test]
    fn conn_on_chain_is_true() {
        let l = FiniteLattice::chain(3);
        let r = eval(&l, &conn(Term::One), &no_bindings()).unwrap();
        assert!(r.value);
    }

    #[test]
    fn conn_on_power_set_fails_with_first_complemented_pair() {
        let ps = power_set_lattice(vec!["1".into(), "2".into()]);
        let l = ps.to_lattice();
        let r = eval(&l, &conn(Term::One), &no_bindings()).unwrap();
        assert!(!r.value);
        let x = r.deciding.iter().find(|(v, _)| v == "x").unwrap().1;
        let y = r.deciding.iter().find(|(v, _)| v == "y").unwrap().1;
        assert_eq!(l.name(x), "{1}");
        assert_eq!(l.name(y), "{2}");
    }

    #[test]
    fn normal_holds_on_boolean_lattices() {
        for n in 0..4 {
            let ps = power_set_lattice((0..n).map(|i| i.to_string()).collect());
            let l = ps.to_lattice();
            assert!(eval(&l, &normal(), &no_bindings()).unwrap().value, "n = {n}");
        }
    }

    #[test]
    fn hi_holds_on_small_power_sets_with_verified_witness() {
        for n in 1..=3 {
            let ps = power_set_lattice((0..n).map(|i| i.to_string()).collect());
            let l = ps.to_lattice();
            let s = hi();
            assert!(eval(&l, &s, &no_bindings()).unwrap().value, "n = {n}");

            // extract a witness chicane for one concrete pliable foursome
            // and check all six conditions
            let (uvars, inner) = s.strip_universal_prefix();
            assert_eq!(uvars, vec!["x", "y", "u", "v"]);
            let x = l.index_of("{0}").unwrap();
            let compl = (0..l.size())
                .find(|&e| l.meet(x, e) == l.bottom() && l.join(x, e) == l.top())
                .unwrap();
            let bindings: HashMap<String, Elem> = [
                ("x".to_owned(), x),
                ("y".to_owned(), compl),
                ("u".to_owned(), compl),
                ("v".to_owned(), x),
            ]
            .into();
            // rename universals to constants: inner formula's free vars are
            // exactly x, y, u, v
            let r = eval(&l, inner, &bindings).unwrap();
            assert!(r.value);
            let get = |n: &str| r.deciding.iter().find(|(v, _)| v == n).unwrap().1;
            let (z1, z2, z3) = (get("z1"), get("z2"), get("z3"));
            let (c, d, ff, g) = (x, compl, compl, x);
            let bot = l.bottom();
            assert_eq!(l.meet(c, l.join(z2, z3)), bot);
            assert_eq!(l.meet(d, l.join(z1, z2)), bot);
            assert_eq!(l.meet(z1, z3), bot);
            assert_eq!(l.meet(l.meet(z1, z2), g), bot);
            assert_eq!(l.meet(l.meet(z2, z3), ff), bot);
            assert_eq!(l.join(l.join(z1, z2), z3), l.top());
        }
    }

    #[test]
    fn unbound_constant_reported() {
        let l = FiniteLattice::chain(2);
        let s = conn(Term::cons("a"));
        assert_eq!(
            eval(&l, &s, &no_bindings()).unwrap_err(),
            EvalError::UnboundConstant("a".to_owned())
        );
    }

    #[test]
    fn contradiction_is_false() {
        let l = FiniteLattice::chain(2);
        let s = parse("0 = 1").unwrap();
        assert!(!eval(&l, &s, &no_bindings()).unwrap().value);
        let l1 = FiniteLattice::chain(1);
        assert!(eval(&l1, &s, &no_bindings()).unwrap().value);
    }
}

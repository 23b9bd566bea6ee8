//! Atomic diagrams of lattices and embedding search.
//!
//! The diagram of `L` has one constant per element and records the full
//! multiplication tables for meet and join. Unlike the purely positive
//! notion, it also includes all disequalities between distinct constants;
//! without them every diagram would collapse to the one-point model.

use super::{Formula, Term, Theory};
use crate::lattice::{Elem, FiniteLattice};

/// The atomic diagram of a lattice: `n` constants, `2n^2` table sentences
/// and `n(n-1)/2` disequalities.
pub fn diagram(l: &FiniteLattice) -> Theory {
    let mut t = Theory::new();
    for x in 0..l.size() {
        t.declare_interpreted(l.name(x), l.name(x));
    }
    let c = |x: Elem| Term::cons(l.name(x));
    for x in 0..l.size() {
        for y in 0..l.size() {
            t.push(
                &format!("meet_{x}_{y}"),
                Formula::Eq(Term::meet(c(x), c(y)), c(l.meet(x, y))),
            );
            t.push(
                &format!("join_{x}_{y}"),
                Formula::Eq(Term::join(c(x), c(y)), c(l.join(x, y))),
            );
        }
    }
    for x in 0..l.size() {
        for y in (x + 1)..l.size() {
            t.push(&format!("ne_{x}_{y}"), Formula::Ne(c(x), c(y)));
        }
    }
    t
}

/// Verifies that `map` (indexed by elements of `a`) is an injective
/// homomorphism preserving meet, join, bottom and top.
pub fn verify_embedding(a: &FiniteLattice, b: &FiniteLattice, map: &[Elem]) -> bool {
    if map.len() != a.size() {
        return false;
    }
    for (i, &m) in map.iter().enumerate() {
        if m >= b.size() {
            return false;
        }
        for &m2 in &map[..i] {
            if m2 == m {
                return false;
            }
        }
    }
    if map[a.bottom()] != b.bottom() || map[a.top()] != b.top() {
        return false;
    }
    for x in 0..a.size() {
        for y in 0..a.size() {
            if map[a.meet(x, y)] != b.meet(map[x], map[y])
                || map[a.join(x, y)] != b.join(map[x], map[y])
            {
                return false;
            }
        }
    }
    true
}

/// Backtracking search for an embedding of `a` into `b` preserving meet,
/// join and both bounds. Returns the first embedding in lexicographic
/// element order, verified before returning.
pub fn find_embedding(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<Elem>> {
    let n = a.size();
    let mut map: Vec<Option<Elem>> = vec![None; n];
    let mut used = vec![false; b.size()];

    // bounds are forced
    let forced: &[(Elem, Elem)] = &[(a.bottom(), b.bottom()), (a.top(), b.top())];
    for &(x, y) in forced {
        match map[x] {
            None => {
                if used[y] {
                    return None;
                }
                map[x] = Some(y);
                used[y] = true;
            }
            Some(old) if old == y => {}
            Some(_) => return None,
        }
    }

    fn consistent(a: &FiniteLattice, b: &FiniteLattice, map: &[Option<Elem>], x: Elem) -> bool {
        let mx = map[x].unwrap();
        for y in 0..a.size() {
            let Some(my) = map[y] else { continue };
            for (ab, bb) in [
                (a.meet(x, y), b.meet(mx, my)),
                (a.join(x, y), b.join(mx, my)),
                (a.meet(y, x), b.meet(my, mx)),
                (a.join(y, x), b.join(my, mx)),
            ] {
                if let Some(m) = map[ab] {
                    if m != bb {
                        return false;
                    }
                }
                // if the image of ab is already taken by a different
                // element the table can no longer be satisfied when ab is
                // unassigned and bb is used elsewhere; this is checked when
                // ab gets assigned
            }
        }
        true
    }

    fn rec(
        a: &FiniteLattice,
        b: &FiniteLattice,
        map: &mut Vec<Option<Elem>>,
        used: &mut Vec<bool>,
        x: Elem,
    ) -> bool {
        if x == a.size() {
            return true;
        }
        if map[x].is_some() {
            if !consistent(a, b, map, x) {
                return false;
            }
            return rec(a, b, map, used, x + 1);
        }
        for y in 0..b.size() {
            if used[y] {
                continue;
            }
            map[x] = Some(y);
            used[y] = true;
            if consistent(a, b, map, x) && rec(a, b, map, used, x + 1) {
                return true;
            }
            map[x] = None;
            used[y] = false;
        }
        false
    }

    for &(x, _) in forced {
        if !consistent(a, b, &map, x) {
            return None;
        }
    }
    if rec(a, b, &mut map, &mut used, 0) {
        let result: Vec<Elem> = map.into_iter().map(|m| m.unwrap()).collect();
        debug_assert!(verify_embedding(a, b, &result));
        if verify_embedding(a, b, &result) {
            return Some(result);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::eval::{bindings_by_name, eval};
    use crate::lattice::{power_set_lattice, FiniteLattice};

    #[test]
    fn diagram_counts() {
        let two = FiniteLattice::chain(2);
        let d = diagram(&two);
        assert_eq!(d.constants.len(), 2);
        let tables = d
            .sentences
            .iter()
            .filter(|(n, _)| n.starts_with("meet") || n.starts_with("join"))
            .count();
        let nes = d.sentences.iter().filter(|(n, _)| n.starts_with("ne")).count();
        assert_eq!(tables, 8);
        assert_eq!(nes, 1);

        let three = FiniteLattice::chain(3);
        let d3 = diagram(&three);
        assert_eq!(d3.constants.len(), 3);
        assert_eq!(d3.sentences.len(), 18 + 3);
        d3.validate().unwrap();
    }

    #[test]
    fn diagram_holds_in_own_lattice() {
        let l = FiniteLattice::chain(3);
        let d = diagram(&l);
        let named: Vec<(String, String)> = d
            .constants
            .iter()
            .map(|(c, i)| (c.clone(), i.clone().unwrap()))
            .collect();
        let bindings = bindings_by_name(&l, &named).unwrap();
        for (name, s) in &d.sentences {
            assert!(eval(&l, s, &bindings).unwrap().value, "sentence {name}");
        }
    }

    #[test]
    fn bounds_embedding_is_forced() {
        let a = FiniteLattice::chain(2);
        let b = power_set_lattice(vec!["1".into(), "2".into()]).to_lattice();
        let map = find_embedding(&a, &b).unwrap();
        assert_eq!(map[a.bottom()], b.bottom());
        assert_eq!(map[a.top()], b.top());
    }

    #[test]
    fn chain3_embeds_into_square() {
        let a = FiniteLattice::chain(3);
        let b = power_set_lattice(vec!["1".into(), "2".into()]).to_lattice();
        let map = find_embedding(&a, &b).expect("chain embeds");
        assert!(verify_embedding(&a, &b, &map));
        // the middle goes to an atom; lexicographically first is {1}
        assert_eq!(b.name(map[1]), "{1}");
    }

    #[test]
    fn m3_does_not_embed_into_boolean() {
        let a = FiniteLattice::m3();
        let b = power_set_lattice(vec!["1".into(), "2".into(), "3".into()]).to_lattice();
        assert!(find_embedding(&a, &b).is_none());
    }
}

//! Bounded model search over finite bounded lattices.
//!
//! Enumeration goes through labeled partial orders on the elements strictly
//! between bottom and top, built one element at a time by choosing its
//! strict down- and up-set among the previous ones; the lattice axioms then
//! prune aggressively (most posets admit no meet/join tables). Isomorph
//! rejection canonicalizes the middle order relation over all permutations
//! and keeps first occurrences, so models are reported in a deterministic
//! canonical enumeration order.

use super::eval::Evaluator;
use super::Theory;
use crate::budget::{Budget, NodeCounter};
use crate::lattice::{Elem, FiniteLattice, LatticeTables};
use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("size bound {bound} above the configured cap {cap}; raise --cap to allow")]
    BoundAboveCap { bound: usize, cap: usize },
}

#[derive(Debug, Clone)]
pub struct EnumerationOutcome {
    /// Number of canonical lattices visited.
    pub lattices: u64,
    /// Number of enumeration nodes (poset insertions) visited.
    pub nodes: u64,
    /// True when the enumeration covered every lattice up to the bound.
    pub complete: bool,
}

/// Enumerates all lattices with at most `max_size` elements up to
/// isomorphism, in canonical order, calling `visit` on each.
pub fn enumerate_lattices<F>(
    max_size: usize,
    counter: &mut NodeCounter,
    mut visit: F,
) -> EnumerationOutcome
where
    F: FnMut(&FiniteLattice) -> ControlFlow<()>,
{
    let mut out = EnumerationOutcome {
        lattices: 0,
        nodes: 0,
        complete: true,
    };
    'sizes: for n in 1..=max_size {
        if n == 1 {
            out.lattices += 1;
            let l = degenerate_lattice();
            if visit(&l).is_break() {
                out.complete = false;
                break 'sizes;
            }
            continue;
        }
        let k = n - 2;
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut below = vec![0u64; k];
        let mut above = vec![0u64; k];
        let finished = insert_middles(
            0,
            k,
            &mut below,
            &mut above,
            &mut seen,
            counter,
            &mut out,
            &mut visit,
        );
        match finished {
            ControlFlow::Continue(()) => {}
            ControlFlow::Break(()) => {
                out.complete = false;
                break 'sizes;
            }
        }
    }
    out.nodes = counter.visited;
    out
}

#[allow(clippy::too_many_arguments)]
fn insert_middles<F>(
    m: usize,
    k: usize,
    below: &mut Vec<u64>,
    above: &mut Vec<u64>,
    seen: &mut HashSet<Vec<u64>>,
    counter: &mut NodeCounter,
    out: &mut EnumerationOutcome,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&FiniteLattice) -> ControlFlow<()>,
{
    if !counter.tick() {
        return ControlFlow::Break(());
    }
    if m == k {
        if let Some(l) = try_lattice(k, below, above) {
            if seen.insert(canonical_key(k, below)) {
                out.lattices += 1;
                visit(&l)?;
            }
        }
        return ControlFlow::Continue(());
    }
    let prev_mask: u64 = (1 << m) - 1;
    // D: strict down-set of the new element among the previous ones
    for d in 0..=prev_mask {
        // down-closed: every element of D has its below-set inside D
        if (0..m).any(|i| d >> i & 1 == 1 && below[i] & !d != 0) {
            continue;
        }
        // U must lie above every element of D
        let mut allowed = prev_mask & !d;
        for i in 0..m {
            if d >> i & 1 == 1 {
                allowed &= above[i];
            }
        }
        let mut u = allowed;
        loop {
            // up-closed: every element of U has its above-set inside U
            let up_closed =
                !(0..m).any(|i| u >> i & 1 == 1 && above[i] & prev_mask & !u != 0);
            if up_closed {
                below[m] = d;
                above[m] = u;
                for i in 0..m {
                    if d >> i & 1 == 1 {
                        above[i] |= 1 << m;
                    }
                    if u >> i & 1 == 1 {
                        below[i] |= 1 << m;
                    }
                }
                insert_middles(m + 1, k, below, above, seen, counter, out, visit)?;
                for i in 0..m {
                    above[i] &= !(1 << m);
                    below[i] &= !(1 << m);
                }
                below[m] = 0;
                above[m] = 0;
            }
            if u == 0 {
                break;
            }
            u = (u - 1) & allowed;
        }
    }
    ControlFlow::Continue(())
}

fn degenerate_lattice() -> FiniteLattice {
    FiniteLattice::from_tables(LatticeTables {
        elements: vec!["0".into()],
        meet: vec![vec![0]],
        join: vec![vec![0]],
        bottom: 0,
        top: 0,
    })
    .expect("degenerate lattice is valid")
}

/// Attempts to complete the middle poset with bottom and top into a
/// lattice; returns the lattice when every pair has a meet and a join.
fn try_lattice(k: usize, below: &[u64], above: &[u64]) -> Option<FiniteLattice> {
    let n = k + 2;
    // dn[x] = mask over all n indices of elements <= x, with index 0 =
    // bottom, 1..=k the middles shifted by one, k+1 = top
    let mut dn = vec![0u64; n];
    let mut up = vec![0u64; n];
    let full: u64 = (1 << n) - 1;
    dn[0] = 1;
    up[0] = full;
    dn[n - 1] = full;
    up[n - 1] = 1 << (n - 1);
    for i in 0..k {
        dn[i + 1] = 1 | (below[i] << 1) | (1 << (i + 1));
        up[i + 1] = (1 << (n - 1)) | (above[i] << 1) | (1 << (i + 1));
    }
    let mut meet = vec![vec![0usize; n]; n];
    let mut join = vec![vec![0usize; n]; n];
    for x in 0..n {
        for y in 0..n {
            let lower = dn[x] & dn[y];
            let m = (0..n).find(|&z| lower >> z & 1 == 1 && lower & !dn[z] == 0)?;
            meet[x][y] = m;
            let upper = up[x] & up[y];
            let j = (0..n).find(|&z| upper >> z & 1 == 1 && upper & !up[z] == 0)?;
            join[x][y] = j;
        }
    }
    let elements = (0..n)
        .map(|i| {
            if i == 0 {
                "0".to_owned()
            } else if i == n - 1 {
                "1".to_owned()
            } else {
                format!("m{i}")
            }
        })
        .collect();
    FiniteLattice::from_tables(LatticeTables {
        elements,
        meet,
        join,
        bottom: 0,
        top: n - 1,
    })
    .ok()
}

/// Minimal relation matrix over all permutations of the middle elements.
fn canonical_key(k: usize, below: &[u64]) -> Vec<u64> {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut best: Option<Vec<u64>> = None;
    permute(&mut perm, 0, &mut |p| {
        // new element i is old p[i]; new_below[i] = {j : p[j] < p[i]}
        let key: Vec<u64> = (0..k)
            .map(|i| {
                let mut row = 0u64;
                for (j, &pj) in p.iter().enumerate() {
                    if below[p[i]] >> pj & 1 == 1 {
                        row |= 1 << j;
                    }
                }
                row
            })
            .collect();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    });
    best.unwrap_or_default()
}

fn permute(perm: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == perm.len() {
        f(perm);
        return;
    }
    for j in i..perm.len() {
        perm.swap(i, j);
        permute(perm, i + 1, f);
        perm.swap(i, j);
    }
}

// ---------------------------------------------------------------------------
// Model search

#[derive(Debug)]
pub enum ModelSearchOutcome {
    /// First model in canonical enumeration order, with the constant
    /// assignment that satisfies the theory.
    Model {
        lattice: FiniteLattice,
        assignment: Vec<(String, Elem)>,
        lattices_checked: u64,
    },
    /// Enumeration up to the bound was exhaustive and found no model.
    Exhausted { lattices_checked: u64, nodes: u64 },
    /// The node budget ran out before the enumeration finished.
    BudgetExhausted { lattices_checked: u64, nodes: u64 },
}

/// Searches for a lattice with at most `size_bound` elements satisfying
/// every sentence of `theory`. Constants are treated as additional
/// unknowns: a model includes an interpretation for each.
pub fn model_search(
    theory: &Theory,
    size_bound: usize,
    budget: &Budget,
) -> Result<ModelSearchOutcome, SearchError> {
    if size_bound > budget.model_size_cap {
        return Err(SearchError::BoundAboveCap {
            bound: size_bound,
            cap: budget.model_size_cap,
        });
    }
    let const_names: Vec<String> = theory.constants.iter().map(|(c, _)| c.clone()).collect();
    let mut counter = NodeCounter::new(budget.search_nodes);
    let mut found: Option<(FiniteLattice, Vec<(String, Elem)>)> = None;
    let mut checked = 0u64;
    let outcome = enumerate_lattices(size_bound, &mut counter, |l| {
        checked += 1;
        if let Some(assignment) = satisfy(l, theory, &const_names) {
            found = Some((l.clone(), assignment));
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    if let Some((lattice, assignment)) = found {
        return Ok(ModelSearchOutcome::Model {
            lattice,
            assignment,
            lattices_checked: checked,
        });
    }
    if outcome.complete {
        Ok(ModelSearchOutcome::Exhausted {
            lattices_checked: checked,
            nodes: outcome.nodes,
        })
    } else {
        Ok(ModelSearchOutcome::BudgetExhausted {
            lattices_checked: checked,
            nodes: outcome.nodes,
        })
    }
}

/// Finds the lexicographically first assignment of the constants making
/// every sentence true, if one exists.
fn satisfy(
    l: &FiniteLattice,
    theory: &Theory,
    const_names: &[String],
) -> Option<Vec<(String, Elem)>> {
    let mut consts: HashMap<String, Option<Elem>> =
        const_names.iter().map(|c| (c.clone(), None)).collect();
    if assign(l, theory, const_names, 0, &mut consts) {
        Some(
            const_names
                .iter()
                .map(|c| (c.clone(), consts[c].unwrap()))
                .collect(),
        )
    } else {
        None
    }
}

fn assign(
    l: &FiniteLattice,
    theory: &Theory,
    const_names: &[String],
    next: usize,
    consts: &mut HashMap<String, Option<Elem>>,
) -> bool {
    // prune: any sentence already decidedly false kills the branch
    {
        let ev = Evaluator { lattice: l, consts };
        let mut vars = Vec::new();
        for (_, s) in &theory.sentences {
            if ev.eval_partial(s, &mut vars) == Some(false) {
                return false;
            }
        }
    }
    if next == const_names.len() {
        let ev = Evaluator { lattice: l, consts };
        let mut vars = Vec::new();
        return theory
            .sentences
            .iter()
            .all(|(_, s)| ev.eval_partial(s, &mut vars) == Some(true));
    }
    for e in 0..l.size() {
        consts.insert(const_names[next].clone(), Some(e));
        if assign(l, theory, const_names, next + 1, consts) {
            return true;
        }
    }
    consts.insert(const_names[next].clone(), None);
    false
}
